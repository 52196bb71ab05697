//! Membership in Kazhdan–Lusztig varieties by southwest rank bounds.
//!
//! All minors of size `k + 1` of a window vanish iff the window has rank at
//! most `k`, so the defining equations reduce to rank comparisons.

use serde::{Deserialize, Serialize};

use super::{OppositeCellPoint, Permutation, RankExcess, Window};
use crate::error::{Error, Result};
use crate::linalg::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KlMode {
    /// Windows `i × [y]` for every row count `i`.
    Rowwise,
    /// Windows `[x] × [y]` only; valid for Z-type `w`.
    Blockwise,
}

/// The first window where the point's rank exceeds that of `w`.
pub fn kl_violation<F: Field>(a: &OppositeCellPoint<F>, w: &Permutation, mode: KlMode) -> Result<Option<RankExcess>> {
    let m = a.matrix();
    if m.rows() != w.len() {
        return Err(Error::DimensionMismatch(format!("{}x{} point against S_{}", m.rows(), m.cols(), w.len())));
    }
    if mode == KlMode::Blockwise {
        if w.blocking().is_none() {
            return Err(Error::Unblocked);
        }
        if !w.is_z_type()? {
            return Err(Error::NotZType);
        }
    }
    let (rows, cols) = (a.frame().row_axis(), a.frame().col_axis());
    let n = m.rows();
    let row_cuts: Vec<usize> = match mode {
        KlMode::Rowwise => (1..=n).collect(),
        KlMode::Blockwise => (0..rows.len()).map(|k| n - rows.offset_at(k)).collect(),
    };
    for l in 0..cols.len() {
        let j = cols.offset_at(l) + cols.size_at(l);
        let profile = m.southwest_rank_profile(j);
        for &i in &row_cuts {
            let (lhs, rhs) = (profile[i], w.sw_rank(i, j));
            if lhs > rhs {
                return Ok(Some(RankExcess { window: Window { rows: i, cols: j }, lhs, rhs }));
            }
        }
    }
    Ok(None)
}

pub fn kl_membership<F: Field>(a: &OppositeCellPoint<F>, w: &Permutation, mode: KlMode) -> Result<bool> {
    Ok(kl_violation(a, w, mode)?.is_none())
}
