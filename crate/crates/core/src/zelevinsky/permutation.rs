//! Permutations in one-line notation, optionally viewed as blocked matrices.
//!
//! The permutation matrix of `w` has a 1 at `(i, j)` iff `i = w_j`, rows
//! numbered top-down from 1.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{BlockAxis, Field, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    one_line: Vec<usize>,
    blocking: Option<Blocking>,
}

/// Row and column block structure of a permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocking {
    pub rows: BlockAxis,
    pub cols: BlockAxis,
}

/// A southwest window: the bottom `rows` rows and the leftmost `cols` columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub rows: usize,
    pub cols: usize,
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bottom {} rows x left {} columns", self.rows, self.cols)
    }
}

/// A window where the left-hand rank exceeds the right-hand one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankExcess {
    pub window: Window,
    pub lhs: usize,
    pub rhs: usize,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{one_line:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line, blocking: None })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { one_line: (1..=n).collect(), blocking: None }
    }

    pub fn with_blocking(mut self, rows: BlockAxis, cols: BlockAxis) -> Result<Self> {
        if rows.total() != self.len() || cols.total() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "blocking {}x{} for a permutation of {}",
                rows.total(),
                cols.total(),
                self.len()
            )));
        }
        self.blocking = Some(Blocking { rows, cols });
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }
    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }
    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }
    pub fn blocking(&self) -> Option<&Blocking> {
        self.blocking.as_ref()
    }

    fn require_blocking(&self) -> Result<&Blocking> {
        self.blocking.as_ref().ok_or(Error::Unblocked)
    }

    pub fn matrix<F: Field>(&self, field: &F) -> Matrix<F> {
        let mut m = Matrix::zeros(field, self.len(), self.len());
        for (j, &w) in self.one_line.iter().enumerate() {
            m.set(w - 1, j, field.one());
        }
        m
    }

    /// Rank of the southwest window with `i` rows and `j` columns: the number
    /// of `c <= j` with `w_c > N - i`.
    pub fn sw_rank(&self, i: usize, j: usize) -> usize {
        assert!(i <= self.len() && j <= self.len(), "window {i}x{j} outside {}", self.len());
        let cut = self.len() - i;
        self.one_line[..j].iter().filter(|&&w| w > cut).count()
    }

    /// Rank of the `([x],[y])` southwest block window.
    pub fn sw_rank_block(&self, x: usize, y: usize) -> Result<usize> {
        let b = self.require_blocking()?;
        let (r0, _) = b.rows.span(x)?;
        let (c0, nc) = b.cols.span(y)?;
        Ok(self.sw_rank(self.len() - r0, c0 + nc))
    }

    /// Ranks of all block windows, indexed by label positions.
    pub fn sw_block_table(&self) -> Result<Vec<Vec<usize>>> {
        let b = self.require_blocking()?;
        let n = self.len();
        Ok((0..b.rows.len())
            .map(|k| {
                (0..b.cols.len())
                    .map(|l| self.sw_rank(n - b.rows.offset_at(k), b.cols.offset_at(l) + b.cols.size_at(l)))
                    .collect()
            })
            .collect())
    }

    /// Number of ones in every block, indexed by label positions.
    pub fn block_counts(&self) -> Result<Vec<Vec<usize>>> {
        let b = self.require_blocking()?;
        let mut c = vec![vec![0; b.cols.len()]; b.rows.len()];
        for (j, &w) in self.one_line.iter().enumerate() {
            c[b.rows.block_of(w - 1)][b.cols.block_of(j)] += 1;
        }
        Ok(c)
    }

    /// Column counts at which Bruhat comparisons are made: block column
    /// ends when blocked, every column otherwise.
    fn column_cuts(&self) -> Vec<usize> {
        match &self.blocking {
            Some(b) => (0..b.cols.len())
                .map(|l| b.cols.offset_at(l) + b.cols.size_at(l))
                .collect(),
            None => (1..=self.len()).collect(),
        }
    }

    /// Condition (3): every block holds an identity submatrix, the identities
    /// of a block row run southwest to northeast and those of a block column
    /// run northwest to southeast.
    pub fn is_z_type(&self) -> Result<bool> {
        let b = self.require_blocking()?;
        // ones[k][l]: (row, col) pairs of the block, sorted by column.
        let mut ones = vec![vec![Vec::new(); b.cols.len()]; b.rows.len()];
        for (j, &w) in self.one_line.iter().enumerate() {
            ones[b.rows.block_of(w - 1)][b.cols.block_of(j)].push((w - 1, j));
        }
        for row in &ones {
            for cell in row {
                if cell.windows(2).any(|p| p[0].0 > p[1].0) {
                    return Ok(false);
                }
            }
            let filled: Vec<&Vec<(usize, usize)>> = row.iter().filter(|c| !c.is_empty()).collect();
            for pair in filled.windows(2) {
                let west_top = pair[0].iter().map(|p| p.0).min().expect("nonempty");
                let east_bottom = pair[1].iter().map(|p| p.0).max().expect("nonempty");
                if east_bottom >= west_top {
                    return Ok(false);
                }
            }
        }
        for l in 0..b.cols.len() {
            let filled: Vec<&Vec<(usize, usize)>> = ones.iter().map(|r| &r[l]).filter(|c| !c.is_empty()).collect();
            for pair in filled.windows(2) {
                let north_right = pair[0].iter().map(|p| p.1).max().expect("nonempty");
                let south_left = pair[1].iter().map(|p| p.1).min().expect("nonempty");
                if north_right >= south_left {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the one-line word increases within every column block, i.e.
    /// `w` is the shortest element of its right coset.
    pub fn is_minimal_in_column_blocks(&self) -> Result<bool> {
        let b = self.require_blocking()?;
        Ok((0..b.cols.len()).all(|l| {
            let s = b.cols.offset_at(l);
            self.one_line[s..s + b.cols.size_at(l)].windows(2).all(|p| p[0] < p[1])
        }))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.one_line.iter().join(","))
    }
}

/// A window where `u` has larger rank than `w`, if any. Windows are all
/// row counts `1..=N` against the column cuts of the blocking (`w`'s, else
/// `u`'s, else every column).
pub fn bruhat_witness(u: &Permutation, w: &Permutation) -> Result<Option<RankExcess>> {
    if u.len() != w.len() {
        return Err(Error::DimensionMismatch(format!("S_{} vs S_{}", u.len(), w.len())));
    }
    let cuts = if w.blocking.is_some() { w.column_cuts() } else { u.column_cuts() };
    for &j in &cuts {
        for i in 1..=u.len() {
            let (lhs, rhs) = (u.sw_rank(i, j), w.sw_rank(i, j));
            if lhs > rhs {
                return Ok(Some(RankExcess { window: Window { rows: i, cols: j }, lhs, rhs }));
            }
        }
    }
    Ok(None)
}

pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    Ok(bruhat_witness(u, w)?.is_none())
}

/// Outcome of the exhaustive comparison of Z-type conditions on one blocking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTypeCensus {
    /// Number of cosets `W_{P'} w ∩ W^P` examined.
    pub cosets: usize,
    /// Cosets where condition (3) and "unique Bruhat-maximal element"
    /// disagree, given by one of their members.
    pub disagreements: Vec<Permutation>,
}

/// Enumerates `S_N`, keeps the elements increasing inside column blocks,
/// groups them by row-block cosets (equivalently by block one-counts) and
/// checks that each coset has exactly one condition-(3) element and that it
/// is the unique Bruhat-maximal element.
pub fn z_type_census(rows: &BlockAxis, cols: &BlockAxis) -> Result<ZTypeCensus> {
    let n = rows.total();
    if cols.total() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} blocking", n, cols.total())));
    }
    if n > 8 {
        return Err(Error::OutOfRange(format!("exhaustive census limited to N <= 8, got {n}")));
    }
    let mut cosets: BTreeMap<Vec<Vec<usize>>, Vec<Permutation>> = BTreeMap::new();
    for perm in (1..=n).permutations(n) {
        let p = Permutation::new(perm)?.with_blocking(rows.clone(), cols.clone())?;
        if p.is_minimal_in_column_blocks()? {
            cosets.entry(p.block_counts()?).or_default().push(p);
        }
    }
    let mut disagreements = Vec::new();
    for members in cosets.values() {
        let maxima: Vec<&Permutation> = members
            .iter()
            .filter(|u| !members.iter().any(|v| v != *u && bruhat_leq(u, v).unwrap_or(false)))
            .collect();
        let z: Vec<&Permutation> = members.iter().filter(|u| u.is_z_type().unwrap_or(false)).collect();
        if maxima.len() != 1 || z.len() != 1 || maxima[0] != z[0] {
            disagreements.push(members[0].clone());
        }
    }
    Ok(ZTypeCensus { cosets: cosets.len(), disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    #[test]
    fn sw_rank_matches_matrix_rank() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let m = p.matrix(&PrimeField::default());
        for i in 0..=4 {
            for j in 0..=4 {
                assert_eq!(p.sw_rank(i, j), m.southwest(i, j).unwrap().rank());
            }
        }
        assert_eq!(p.sw_rank(4, 4), 4);
        assert_eq!(p.sw_rank(0, 4), 0);
    }

    #[test]
    fn bruhat_small_cases() {
        let id = Permutation::identity(3);
        let w0 = Permutation::new(vec![3, 2, 1]).unwrap();
        // Larger southwest ranks mean larger in this convention.
        assert!(bruhat_leq(&id, &w0).unwrap());
        assert!(!bruhat_leq(&w0, &id).unwrap());
        assert!(bruhat_leq(&w0, &w0).unwrap());
        // 132 and 213 both cover the identity and are incomparable.
        let a = Permutation::new(vec![1, 3, 2]).unwrap();
        let b = Permutation::new(vec![2, 1, 3]).unwrap();
        assert!(!bruhat_leq(&a, &b).unwrap());
        assert!(!bruhat_leq(&b, &a).unwrap());
        assert!(bruhat_leq(&Permutation::identity(2), &Permutation::identity(3)).is_err());
    }

    #[test]
    fn invalid_one_line_rejected() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn census_on_small_blockings() {
        let rows = BlockAxis::new(vec![1, 2], vec![2, 1]).unwrap();
        let cols = BlockAxis::new(vec![2, 1], vec![1, 2]).unwrap();
        let c = z_type_census(&rows, &cols).unwrap();
        assert!(c.disagreements.is_empty());
        assert!(c.cosets > 1);
    }
}
