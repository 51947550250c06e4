//! Ground fields: prime fields `F_p` and the rationals.
//!
//! Elements carry no reference to their field; every operation goes through a
//! field value (`&F`), which holds the modulus or the rational size guard.

use std::cell::Cell;
use std::fmt;
use std::hash::Hash;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Environment variable consulted by [`Rationals::from_env`] for the bit bound.
pub const RATIONAL_BITS_ENV: &str = "CATREP_RATIONAL_BITS";

/// Default bound on the bit length of numerators and denominators.
pub const DEFAULT_RATIONAL_BITS: u64 = 4096;

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
    static TICKS: Cell<u32> = const { Cell::new(0) };
}

/// Panic payload raised by rational arithmetic once a deadline set by
/// [`with_deadline`] has passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeadlineExceeded;

/// Runs `f` with a wall-clock deadline on rational arithmetic in this thread.
///
/// Returns `None` if the deadline passes first. Other panics propagate.
pub fn with_deadline<R>(limit: Duration, f: impl FnOnce() -> R) -> Option<R> {
    let prev = DEADLINE.with(|d| d.replace(Some(Instant::now() + limit)));
    let out = panic::catch_unwind(AssertUnwindSafe(f));
    DEADLINE.with(|d| d.set(prev));
    match out {
        Ok(r) => Some(r),
        Err(e) if e.is::<DeadlineExceeded>() => None,
        Err(e) => panic::resume_unwind(e),
    }
}

#[inline]
fn tick() {
    let n = TICKS.with(|t| {
        let n = t.get().wrapping_add(1);
        t.set(n);
        n
    });
    if n.is_multiple_of(1024) {
        if let Some(d) = DEADLINE.with(Cell::get) {
            if Instant::now() >= d {
                panic::panic_any(DeadlineExceeded);
            }
        }
    }
}

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// The image of `num / den`; fails when `den` is not invertible in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, Error>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Short spec string, `q` or `fp:<p>`.
    fn spec(&self) -> String;
    /// Size of the field, `None` for infinite fields.
    fn order(&self) -> Option<u64>;

    /// `a -= f * b`
    fn sub_mul_assign(&self, a: &mut Self::Elem, f: &Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, &self.mul(f, b));
    }

    /// Element number `i` in a fixed enumeration of (a finite window of) the field.
    /// Used only for random sampling.
    fn element(&self, i: u64) -> Self::Elem {
        self.from_i64(i as i64)
    }
}

/// The prime field `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Fails unless `p` is a prime below `2^31`.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Fp { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Fp {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let p = self.p as u64;
        ((*a as u64 + p - *b as u64) % p) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32, Error> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| -> u32 {
            let r = ((x % &p) + &p) % &p;
            r.to_u32().expect("residue fits in u32")
        };
        let d = reduce(den);
        let inv = self.inv(&d).ok_or_else(|| {
            Error::InvalidField(format!("denominator {den} is not invertible modulo {}", self.p))
        })?;
        Ok(self.mul(&reduce(num), &inv))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn spec(&self) -> String {
        format!("fp:{}", self.p)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    #[inline]
    fn sub_mul_assign(&self, a: &mut u32, f: &u32, b: &u32) {
        let p = self.p as u64;
        let prod = (*f as u64 * *b as u64) % p;
        *a = ((*a as u64 + p - prod) % p) as u32;
    }
    fn element(&self, i: u64) -> u32 {
        (i % self.p as u64) as u32
    }
}

/// The rationals, with a guard on the bit length of numerators and denominators.
///
/// Exceeding the guard panics with a diagnostic naming the offending size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rationals {
    max_bits: u64,
}

impl Default for Rationals {
    fn default() -> Self {
        Rationals { max_bits: DEFAULT_RATIONAL_BITS }
    }
}

impl Rationals {
    pub fn with_bit_bound(max_bits: u64) -> Self {
        Rationals { max_bits }
    }

    /// Reads the bound from `CATREP_RATIONAL_BITS`, falling back to the default.
    pub fn from_env() -> Result<Self, Error> {
        match std::env::var(RATIONAL_BITS_ENV) {
            Ok(s) => s
                .trim()
                .parse::<u64>()
                .map(Rationals::with_bit_bound)
                .map_err(|_| Error::InvalidField(format!("{RATIONAL_BITS_ENV}={s} is not an integer"))),
            Err(_) => Ok(Rationals::default()),
        }
    }

    pub fn bit_bound(&self) -> u64 {
        self.max_bits
    }

    #[inline]
    fn guard(&self, x: BigRational) -> BigRational {
        tick();
        let bits = x.numer().bits().max(x.denom().bits());
        if bits > self.max_bits {
            panic!(
                "rational growth guard: a value with {bits} bits exceeds the bound of {} bits \
                 (raise {RATIONAL_BITS_ENV} or use a prime field)",
                self.max_bits
            );
        }
        x
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.guard(a + b)
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.guard(a - b)
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.guard(a * b)
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, Error> {
        if den.is_zero() {
            return Err(Error::InvalidField("zero denominator".into()));
        }
        Ok(self.guard(BigRational::new(num.clone(), den.clone())))
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn spec(&self) -> String {
        "q".into()
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn sub_mul_assign(&self, a: &mut BigRational, f: &BigRational, b: &BigRational) {
        if f.is_zero() || b.is_zero() {
            return;
        }
        let prod = f * b;
        *a = self.guard(&*a - prod);
    }
    fn element(&self, i: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let k = i.div_ceil(2) as i64;
        let v = if i % 2 == 1 { k } else { -k };
        self.from_i64(v)
    }
}

/// Which field a job runs over, as written in files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// `q` or `fp:<p>` with `p` prime.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(format!("expected `q` or `fp:<prime>`, got `{s}`")))?;
        Fp::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// `3`, `-1/2`: integers without a denominator, otherwise `n/d` in lowest terms.
pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parses `7`, `-3`, `3/2` into a numerator/denominator pair.
pub fn parse_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    if d.is_negative() {
        Some((-n, -d))
    } else {
        Some((n, d))
    }
}
