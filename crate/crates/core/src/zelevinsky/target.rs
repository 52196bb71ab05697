//! Target southwest ranks and the Zelevinsky permutation w_Q(r).

use std::fmt;

use super::{Frame, Permutation};
use crate::error::{Error, Result};
use crate::quiver::GridPosition;
use crate::representation::{Multiplicities, RankParameters};

/// Desired block ranks `R(x, y)` of w_Q(r) together with the ranks of v_Q.
/// Tables are indexed by label positions (S₁ row, S₂ column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetRankTable {
    frame: Frame,
    interval_part: Vec<Vec<usize>>,
    v_part: Vec<Vec<usize>>,
}

impl TargetRankTable {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `R(x, y)`.
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.v_rank(x, y) + self.interval_rank(x, y)
    }

    /// Rank of v_Q on the `([x],[y])` window.
    pub fn v_rank(&self, x: usize, y: usize) -> usize {
        self.frame.lookup(&self.v_part)(x, y)
    }

    /// `r_[a,b]` when `([x],[y])` is the image of `[a,b]`, else 0.
    pub fn interval_rank(&self, x: usize, y: usize) -> usize {
        self.frame.lookup(&self.interval_part)(x, y)
    }

    /// Full table indexed by label positions.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.v_part
            .iter()
            .zip(&self.interval_part)
            .map(|(v, r)| v.iter().zip(r).map(|(a, b)| a + b).collect())
            .collect()
    }

    /// Renders the table with S₂ labels across and S₁ labels down. With
    /// `split`, image positions show `r + v` instead of the sum.
    pub fn render(&self, split: bool) -> String {
        let s1 = self.frame.s1().as_slice();
        let s2 = self.frame.s2().as_slice();
        let mut out = String::from("x\\y");
        for y in s2 {
            out.push_str(&format!("\t{y}"));
        }
        out.push('\n');
        let image: std::collections::BTreeSet<GridPosition> = self
            .frame
            .quiver()
            .interval_grid_map()
            .map(|m| m.into_values().collect())
            .unwrap_or_default();
        for &x in s1 {
            out.push_str(&x.to_string());
            for &y in s2 {
                let cell = if split && image.contains(&GridPosition { x, y }) {
                    format!("{}+{}", self.interval_rank(x, y), self.v_rank(x, y))
                } else {
                    self.get(x, y).to_string()
                };
                out.push('\t');
                out.push_str(&cell);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for TargetRankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// `R(μ(b), λ(a)) = r_[a,b] + rank v_Q` on image positions, `rank v_Q`
/// elsewhere.
pub fn target_rank_table(r: &RankParameters) -> Result<TargetRankTable> {
    let frame = Frame::new(r.quiver(), r.dims())?;
    let v_part = frame.v_perm().sw_block_table()?;
    let n = frame.quiver().n();
    let mut interval_part = vec![vec![0; n]; n];
    for (iv, pos) in frame.quiver().interval_grid_map()? {
        let k = frame.s1().position(pos.x)?;
        let l = frame.s2().position(pos.y)?;
        interval_part[k][l] = r.get(iv);
    }
    Ok(TargetRankTable { frame, interval_part, v_part })
}

/// The Z-type blocked permutation whose block ranks are the target table.
///
/// Block one-counts are inclusion–exclusion differences of the target.
/// Inside block row `[x]` the identities are stacked bottom-up from west to
/// east; inside block column `[y]` they are laid out left to right from
/// north to south; within a block the k-th row meets the k-th column.
pub fn zelevinsky_perm(r: &RankParameters) -> Result<Permutation> {
    Multiplicities::from_rank_params(r)?;
    let target = target_rank_table(r)?;
    let frame = target.frame().clone();
    let t = target.table();
    let n = frame.quiver().n();
    let at = |k: usize, l: Option<usize>| -> i64 {
        match l {
            Some(l) if k < n => t[k][l] as i64,
            _ => 0,
        }
    };
    let mut counts = vec![vec![0usize; n]; n];
    for k in 0..n {
        for l in 0..n {
            let west = l.checked_sub(1);
            let c = at(k, Some(l)) - at(k + 1, Some(l)) - at(k, west) + at(k + 1, west);
            if c < 0 {
                return Err(Error::NotRealizable(format!(
                    "negative one-count at ([{}],[{}])",
                    frame.s1().as_slice()[k],
                    frame.s2().as_slice()[l]
                )));
            }
            counts[k][l] = c as usize;
        }
    }
    let (rows, cols) = (frame.row_axis(), frame.col_axis());
    for k in 0..n {
        if counts[k].iter().sum::<usize>() != rows.size_at(k) {
            return Err(Error::NotRealizable(format!("row block [{}] has the wrong number of ones", rows.labels()[k])));
        }
    }
    for l in 0..n {
        if counts.iter().map(|c| c[l]).sum::<usize>() != cols.size_at(l) {
            return Err(Error::NotRealizable(format!("column block [{}] has the wrong number of ones", cols.labels()[l])));
        }
    }

    // Rows: within block row k, west to east, taking rows from the bottom.
    let mut block_rows = vec![vec![Vec::new(); n]; n];
    for k in 0..n {
        let mut next = rows.offset_at(k) + rows.size_at(k);
        for l in 0..n {
            let c = counts[k][l];
            block_rows[k][l] = (next - c..next).collect::<Vec<usize>>();
            next -= c;
        }
    }
    // Columns: within block column l, north to south, from the left.
    let mut one_line = vec![0; frame.size()];
    for l in 0..n {
        let mut next = cols.offset_at(l);
        for k in 0..n {
            for (i, &row) in block_rows[k][l].iter().enumerate() {
                one_line[next + i] = row + 1;
            }
            next += counts[k][l];
        }
    }
    let w = Permutation::new(one_line)?.with_blocking(rows.clone(), cols.clone())?;
    if w.sw_block_table()? != t {
        return Err(Error::Inconsistent("placed permutation misses the target ranks".into()));
    }
    Ok(w)
}
