use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::exactfield::{format_rational, Field};
use crate::module::TruncatedModule;

use super::zeroth::gd;

/// An exact polynomial fit of `n ↦ dim V_n` on `[onset, horizon]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFit {
    pub dims: Vec<usize>,
    pub gd: isize,
    /// Power-basis coefficients, constant term first.
    pub coeffs: Vec<BigRational>,
    pub onset: usize,
}

impl HilbertFit {
    pub fn horizon(&self) -> isize {
        self.dims.len() as isize - 1
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(-1, |d| d as isize)
    }

    pub fn degree_within_gd(&self) -> bool {
        self.degree() <= self.gd
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Whether the polynomial reproduces every dim from the onset on.
    pub fn matches(&self) -> bool {
        (self.onset..self.dims.len()).all(|n| self.eval(n) == BigRational::from_integer(BigInt::from(self.dims[n])))
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for HilbertFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match d {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{d}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", format_rational(&a)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

fn forward_difference(xs: &[BigInt]) -> Vec<BigInt> {
    xs.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// Fits `dims` by a polynomial of degree `≤ gd` from the least onset where
/// the differences of order `gd + 1` vanish up to the last degree.
pub fn fit_dims(dims: &[usize], gd: isize) -> Result<HilbertFit, Error> {
    let k = (gd + 1).max(0) as usize;
    let vals: Vec<BigInt> = dims.iter().map(|&d| BigInt::from(d)).collect();
    let mut diff = vals.clone();
    for _ in 0..k {
        diff = forward_difference(&diff);
    }
    if diff.is_empty() {
        return Err(Error::Inconclusive(format!(
            "horizon {} leaves no difference of order {k}",
            dims.len() as isize - 1
        )));
    }
    let onset = diff.iter().rposition(|d| !d.is_zero()).map_or(0, |p| p + 1);
    if onset >= diff.len() {
        return Err(Error::Inconclusive(format!(
            "differences of order {k} do not vanish through degree {}",
            dims.len() - 1
        )));
    }
    Ok(HilbertFit { dims: dims.to_vec(), gd, coeffs: newton(&vals[onset..onset + k], onset), onset })
}

/// Power-basis coefficients of the polynomial through `(n0 + j, ys[j])`.
fn newton(ys: &[BigInt], n0: usize) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::zero()];
    let mut basis = vec![BigRational::one()];
    let mut row: Vec<BigInt> = ys.to_vec();
    let mut fact = BigInt::one();
    for j in 0..ys.len() {
        if j > 0 {
            fact *= BigInt::from(j);
            let shift = BigRational::from_integer(BigInt::from(n0 + j - 1));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &shift;
            }
            basis = next;
        }
        let c = BigRational::new(row[0].clone(), fact.clone());
        if coeffs.len() < basis.len() {
            coeffs.resize(basis.len(), BigRational::zero());
        }
        for (d, b) in basis.iter().enumerate() {
            coeffs[d] += &c * b;
        }
        row = forward_difference(&row);
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

pub fn hilbert_fit<F: Field>(v: &TruncatedModule<F>) -> Result<HilbertFit, Error> {
    fit_dims(v.dims(), gd(v))
}
