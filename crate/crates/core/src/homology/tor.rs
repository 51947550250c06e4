use std::sync::Arc;

use crate::exactfield::{rank, Field};
use crate::module::TruncatedModule;

use super::resolution::{resolve, Resolution, Style};

/// `H_i(V)` dims for `i ≤ depth`, valid in degrees `≤ horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub horizon: isize,
    pub depth: usize,
    /// `h[i][t] = dim H_i(V)_t`.
    pub h: Vec<Vec<usize>>,
    /// `hd_i`, `-1` when `H_i` vanishes within the horizon.
    pub hd: Vec<isize>,
    pub gd: isize,
    /// `max_i (hd_i - i)` over the computed indices, with `hd_i = -1` for a
    /// vanishing `H_i`; `-1` for the zero module.
    pub reg: isize,
    /// The resolution terminated within the depth, so no higher `H_i` exists
    /// below the horizon.
    pub reg_exact: bool,
}

impl HomologyReport {
    /// The report restricted to degrees `≤ horizon`.
    pub fn truncate(&self, horizon: isize) -> HomologyReport {
        let n = (horizon + 1).max(0) as usize;
        let h: Vec<Vec<usize>> = self.h.iter().map(|row| row.iter().take(n).copied().collect()).collect();
        assemble(h, self.horizon.min(horizon), self.depth, self.reg_exact)
    }

    pub fn hd(&self, i: usize) -> isize {
        self.hd.get(i).copied().unwrap_or(-1)
    }
}

fn assemble(h: Vec<Vec<usize>>, horizon: isize, depth: usize, reg_exact: bool) -> HomologyReport {
    let hd: Vec<isize> = h.iter().map(|row| row.iter().rposition(|&d| d > 0).map_or(-1, |t| t as isize)).collect();
    let reg = hd.iter().enumerate().map(|(i, &d)| d - i as isize).max().unwrap_or(-1);
    HomologyReport { horizon, depth, gd: hd[0], h, hd, reg, reg_exact }
}

/// Tor dims from any resolution: the complex `P^•/mP^•` has terms the top
/// blocks of each `P^i` and differentials the reduced blocks.
pub fn tor_from_resolution<F: Field>(res: &Resolution<F>) -> HomologyReport {
    let f = res.target.field();
    let n = res.target.dims().len();
    let rank_at = |i: usize, t: usize| -> usize {
        if i == 0 {
            return 0;
        }
        res.steps.get(i).map_or(0, |s| rank(f, &s.reduced[t]))
    };
    let h = (0..=res.depth)
        .map(|i| {
            (0..n)
                .map(|t| {
                    let top = res.steps.get(i).map_or(0, |s| s.reduced[t].cols());
                    top - rank_at(i, t) - rank_at(i + 1, t)
                })
                .collect()
        })
        .collect();
    let exact = res.length().is_some_and(|k| k <= res.depth + 1);
    assemble(h, res.horizon(), res.depth, exact)
}

pub fn tor_groups<F: Field>(v: &Arc<TruncatedModule<F>>, depth: usize) -> HomologyReport {
    tor_from_resolution(&resolve(v, depth, Style::Minimal))
}
