use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::category::Category;
use crate::exactfield::Field;
use crate::module::TruncatedModule;
use crate::shift::{derive, mu_map, shift_module};

use super::tor::{tor_groups, HomologyReport};
use super::zeroth::gd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One instantiated inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// The numbers plugged in, or the reason for a skip.
    pub detail: String,
    /// Degrees up to which the numbers were computed.
    pub valid_to: isize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Inconclusive)
    }
}

/// `reg(SM(s))` for `s ≤ bound`, the standing hypothesis of the regularity bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub offset: usize,
    pub depth: usize,
    pub horizon: isize,
    pub regs: Vec<isize>,
}

impl Hypothesis {
    pub fn holds(&self) -> bool {
        self.regs.iter().enumerate().all(|(s, &r)| r <= (s + self.offset) as isize)
    }

    fn check(&self) -> Check {
        let bound = self.regs.len().saturating_sub(1);
        let detail = self.regs.iter().enumerate().map(|(s, r)| format!("reg(SM({s}))={r}")).collect::<Vec<_>>().join(", ");
        Check {
            name: format!("reg(SM(s)) <= s + {} for s <= {bound}", self.offset),
            status: if self.holds() { Status::Pass } else { Status::Fail },
            detail,
            valid_to: self.horizon,
        }
    }
}

/// Computes `reg(SM(s))` for `s ≤ bound` at depth `depth`, with `SM(s)` known
/// through degree `horizon`.
pub fn shift_projective_hypothesis<F: Field>(
    cat: &Arc<Category>,
    f: &F,
    bound: usize,
    offset: usize,
    depth: usize,
    horizon: usize,
) -> Hypothesis {
    let regs = (0..=bound)
        .map(|s| {
            let m = TruncatedModule::free(cat.clone(), f.clone(), s, horizon + 1);
            tor_groups(&Arc::new(shift_module(&m)), depth).reg
        })
        .collect();
    Hypothesis { offset, depth, horizon: horizon as isize, regs }
}

fn bound_check(name: String, lhs: isize, rhs: isize, detail: String, valid_to: isize) -> Check {
    let status = if lhs <= rhs { Status::Pass } else { Status::Fail };
    Check { name, status, detail: format!("{detail}: {lhs} <= {rhs}"), valid_to }
}

fn max_shifted(r: &HomologyReport, i: usize, upto: usize) -> isize {
    (0..upto).map(|j| r.hd(j) + (i - j) as isize).max().unwrap_or(-1)
}

/// Instantiates the homological-degree and regularity inequalities on `v`
/// for indices `≤ depth`, with regularity offset `n`.
pub fn verify_theorems<F: Field>(v: &Arc<TruncatedModule<F>>, depth: usize, n: usize, hyp: &Hypothesis) -> VerifyReport {
    let mut checks = vec![hyp.check()];
    let w = v.horizon() - 1;
    let names = inequality_names(depth);
    if !hyp.holds() {
        checks.extend(names.into_iter().map(|name| Check {
            name,
            status: Status::Skipped,
            detail: "the reg(SM(s)) hypothesis failed".into(),
            valid_to: -1,
        }));
        return VerifyReport { checks };
    }
    if w < 0 {
        checks.extend(names.into_iter().map(|name| Check {
            name,
            status: Status::Inconclusive,
            detail: format!("horizon {} leaves no shifted degree", v.horizon()),
            valid_to: -1,
        }));
        return VerifyReport { checks };
    }
    let ks = derive(v);
    let rv = tor_groups(&Arc::new(v.truncate(w)), depth);
    let rs = tor_groups(&ks.sv, depth);
    let rd = tor_groups(&ks.dv, depth);
    for i in 0..=depth {
        checks.push(bound_check(
            format!("hd_{i}(SV) <= max_j hd_j(V) + {i} - j"),
            rs.hd(i),
            max_shifted(&rv, i, i + 1),
            format!("hd_{i}(SV)={}, hd(V)={:?}", rs.hd(i), rv.hd),
            w,
        ));
        checks.push(bound_check(
            format!("hd_{i}(V) <= max(hd_j(V) + {i} - j, hd_{i}(SV) + 1)"),
            rv.hd(i),
            max_shifted(&rv, i, i).max(rs.hd(i) + 1),
            format!("hd(V)={:?}, hd_{i}(SV)={}", rv.hd, rs.hd(i)),
            w,
        ));
    }
    checks.push(bound_check(
        "reg(SV) <= reg(V)".into(),
        rs.reg,
        rv.reg,
        format!("reg(SV)={}, reg(V)={}", rs.reg, rv.reg),
        w,
    ));
    checks.push(bound_check(
        "reg(V) <= reg(SV) + 1".into(),
        rv.reg,
        rs.reg + 1,
        format!("reg(V)={}, reg(SV)={}", rv.reg, rs.reg),
        w,
    ));
    let mu = mu_map(v);
    let injective = mu.injectivity_failure();
    for i in 0..=depth {
        let name = format!("hd_{i}(V) <= reg(DV) + {} + 1", (n + 1) * i);
        checks.push(match injective {
            None => bound_check(
                name,
                rv.hd(i),
                rd.reg + ((n + 1) * i) as isize + 1,
                format!("hd_{i}(V)={}, reg(DV)={}", rv.hd(i), rd.reg),
                w,
            ),
            Some(t) => Check {
                name,
                status: Status::Skipped,
                detail: format!("mu_V : V -> SV is not injective (degree {t})"),
                valid_to: w,
            },
        });
    }
    let name = "reg(V) <= reg(DV) + 1".to_string();
    checks.push(match injective {
        None => bound_check(name, rv.reg, rd.reg + 1, format!("reg(V)={}, reg(DV)={}", rv.reg, rd.reg), w),
        Some(t) => Check {
            name,
            status: Status::Skipped,
            detail: format!("mu_V : V -> SV is not injective (degree {t})"),
            valid_to: w,
        },
    });
    checks.push(support_check(v, depth));
    VerifyReport { checks }
}

fn inequality_names(depth: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..=depth {
        out.push(format!("hd_{i}(SV) <= max_j hd_j(V) + {i} - j"));
        out.push(format!("hd_{i}(V) <= max(hd_j(V) + {i} - j, hd_{i}(SV) + 1)"));
    }
    out.push("reg(SV) <= reg(V)".into());
    out.push("reg(V) <= reg(SV) + 1".into());
    out.push("reg(V) <= reg(DV) + 1".into());
    out.push("reg(V) <= N for V supported in degrees <= N".into());
    out
}

/// `V_t = 0` at some `t ≥ gd(V)` forces `V` to vanish above `t`; the
/// support bound is then the last nonzero degree.
fn support_check<F: Field>(v: &Arc<TruncatedModule<F>>, depth: usize) -> Check {
    let name = "reg(V) <= N for V supported in degrees <= N".to_string();
    let g = gd(v);
    let dims = v.dims();
    let vanishes = (0..dims.len()).any(|t| t as isize >= g && dims[t] == 0);
    if !vanishes {
        return Check {
            name,
            status: Status::Skipped,
            detail: "V is not seen to vanish above its generating degree".into(),
            valid_to: v.horizon(),
        };
    }
    let top = dims.iter().rposition(|&d| d > 0).map_or(-1, |t| t as isize);
    let r = tor_groups(v, depth);
    bound_check(name, r.reg, top, format!("N={top}, reg(V)={}", r.reg), v.horizon())
}
