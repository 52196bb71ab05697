//! The generalized Zelevinsky map and its combinatorial shadows.
//!
//! Every matrix here is blocked with block rows labelled by S₁ and block
//! columns labelled by S₂, block `[x]` having size `d_x`.

mod image;
mod kl;
mod permutation;
mod target;

use std::fmt;

use serde::Serialize;

pub use image::{zeta_preimage, Rejection};
pub use kl::{kl_membership, kl_violation, KlMode};
pub use permutation::{bruhat_leq, bruhat_witness, z_type_census, Blocking, Permutation, RankExcess, Window, ZTypeCensus};
pub use target::{target_rank_table, zelevinsky_perm, TargetRankTable};

use crate::error::{Error, Result};
use crate::linalg::{BlockAxis, BlockedMatrix, Field, Matrix};
use crate::quiver::{GridPosition, Interval, Orientation, QuiverA, VertexSequence};
use crate::representation::{DimVector, Representation};

/// The quiver, dimension vector and the two block orders derived from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    quiver: QuiverA,
    dims: DimVector,
    s1: VertexSequence,
    s2: VertexSequence,
    rows: BlockAxis,
    cols: BlockAxis,
}

/// What the opposite cell prescribes for a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockPattern {
    Identity,
    Zero,
    Free,
}

impl Frame {
    pub fn new(quiver: &QuiverA, dims: &DimVector) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::DimensionMismatch(format!("{} dimensions for {} vertices", dims.len(), quiver.n())));
        }
        let s1 = quiver.seq_s1();
        let s2 = quiver.seq_s2();
        let rows = BlockAxis::from_vertices(s1.as_slice(), dims.as_slice())?;
        let cols = BlockAxis::from_vertices(s2.as_slice(), dims.as_slice())?;
        Ok(Frame { quiver: quiver.clone(), dims: dims.clone(), s1, s2, rows, cols })
    }

    pub fn quiver(&self) -> &QuiverA {
        &self.quiver
    }
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }
    pub fn s1(&self) -> &VertexSequence {
        &self.s1
    }
    pub fn s2(&self) -> &VertexSequence {
        &self.s2
    }
    pub fn row_axis(&self) -> &BlockAxis {
        &self.rows
    }
    pub fn col_axis(&self) -> &BlockAxis {
        &self.cols
    }
    /// Matrix size `N = Σ d_x`.
    pub fn size(&self) -> usize {
        self.dims.total()
    }

    /// Identity on the diagonal, zero when `x ≺ y` in S₁ or in S₂, free
    /// otherwise.
    pub fn pattern(&self, x: usize, y: usize) -> BlockPattern {
        if x == y {
            BlockPattern::Identity
        } else if self.s1.precedes(x, y).expect("vertex in S1") || self.s2.precedes(x, y).expect("vertex in S2") {
            BlockPattern::Zero
        } else {
            BlockPattern::Free
        }
    }

    /// `v_Q`: identity diagonal blocks, zero elsewhere.
    pub fn v_perm(&self) -> Permutation {
        let n = self.size();
        let mut one_line = vec![0; n];
        for x in 1..=self.quiver.n() {
            let (r0, d) = self.rows.span(x).expect("vertex in S1");
            let (c0, _) = self.cols.span(x).expect("vertex in S2");
            for k in 0..d {
                one_line[c0 + k] = r0 + k + 1;
            }
        }
        Permutation::new(one_line)
            .and_then(|p| p.with_blocking(self.rows.clone(), self.cols.clone()))
            .expect("diagonal blocks form a permutation")
    }

    /// Converts a label-position table into a label-keyed lookup.
    pub fn lookup<'a, T: Copy>(&'a self, table: &'a [Vec<T>]) -> impl Fn(usize, usize) -> T + 'a {
        move |x, y| table[self.s1.position(x).expect("row label")][self.s2.position(y).expect("column label")]
    }
}

/// `v_Q` for a quiver and dimension vector.
pub fn v_perm(quiver: &QuiverA, dims: &DimVector) -> Result<Permutation> {
    Ok(Frame::new(quiver, dims)?.v_perm())
}

/// A point of the opposite cell: an (S₁,S₂)-blocked matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OppositeCellPoint<F: Field> {
    frame: Frame,
    blocked: BlockedMatrix<F>,
}

/// An entry that breaks the identity/zero pattern of the opposite cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternViolation {
    /// 1-based global coordinates.
    pub row: usize,
    pub col: usize,
    pub block: GridPosition,
    pub expected: u8,
}

impl<F: Field> OppositeCellPoint<F> {
    /// Wraps an `N × N` matrix; the pattern is not enforced here, see
    /// [`OppositeCellPoint::pattern_violation`].
    pub fn from_matrix(frame: Frame, matrix: Matrix<F>) -> Result<Self> {
        let blocked = BlockedMatrix::new(matrix, frame.rows.clone(), frame.cols.clone())?;
        Ok(OppositeCellPoint { frame, blocked })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }
    pub fn blocked(&self) -> &BlockedMatrix<F> {
        &self.blocked
    }
    pub fn matrix(&self) -> &Matrix<F> {
        self.blocked.matrix()
    }
    pub fn into_matrix(self) -> Matrix<F> {
        self.blocked.into_matrix()
    }

    /// The first entry, in row-major order, that disagrees with the pattern.
    pub fn pattern_violation(&self) -> Option<PatternViolation> {
        let m = self.blocked.matrix();
        let f = m.field();
        let (rows, cols) = (&self.frame.rows, &self.frame.cols);
        for i in 0..m.rows() {
            let x = rows.labels()[rows.block_of(i)];
            for j in 0..m.cols() {
                let y = cols.labels()[cols.block_of(j)];
                let expected = match self.frame.pattern(x, y) {
                    BlockPattern::Free => continue,
                    BlockPattern::Zero => 0,
                    BlockPattern::Identity => {
                        let di = i - rows.span(x).expect("row label").0;
                        let dj = j - cols.span(y).expect("column label").0;
                        u8::from(di == dj)
                    }
                };
                let ok = if expected == 1 { *m.get(i, j) == f.one() } else { f.is_zero(m.get(i, j)) };
                if !ok {
                    return Some(PatternViolation { row: i + 1, col: j + 1, block: GridPosition { x, y }, expected });
                }
            }
        }
        None
    }

    /// Ranks of all `([x],[y])` southwest windows, indexed by label positions.
    pub fn sw_block_ranks(&self) -> Vec<Vec<usize>> {
        self.blocked.southwest_block_ranks()
    }

    pub fn sw_rank_block(&self, x: usize, y: usize) -> Result<usize> {
        Ok(self.blocked.southwest_block(x, y)?.rank())
    }
}

/// ζ(V): identity on the diagonal, `A_i` at `([x],[x+1])` for the left arrow
/// at edge `x`, the composite `B_{x-1}⋯B_y` at `([x],[y])` for every
/// rightward path `y → x`, zero elsewhere.
pub fn zeta<F: Field>(v: &Representation<F>) -> Result<OppositeCellPoint<F>> {
    let frame = Frame::new(v.quiver(), v.dims())?;
    let q = v.quiver();
    let blocked = BlockedMatrix::from_blocks(v.field(), frame.rows.clone(), frame.cols.clone(), |x, y| {
        Ok(zeta_block(v, q, x, y))
    })?;
    Ok(OppositeCellPoint { frame, blocked })
}

fn zeta_block<F: Field>(v: &Representation<F>, q: &QuiverA, x: usize, y: usize) -> Option<Matrix<F>> {
    if x == y {
        return Some(Matrix::identity(v.field(), v.dims().get(x)));
    }
    if y == x + 1 && q.arrow(x) == Orientation::Left {
        return Some(v.map(x).clone());
    }
    if q.has_right_path(y, x) {
        return v.path_map(y, x);
    }
    None
}

/// One line of the main-theorem check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremRow {
    pub interval: Interval,
    pub position: GridPosition,
    pub zeta_rank: usize,
    pub interval_rank: usize,
    pub v_rank: usize,
}

impl MainTheoremRow {
    pub fn holds(&self) -> bool {
        self.zeta_rank == self.interval_rank + self.v_rank
    }
}

impl fmt::Display for MainTheoremRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {}: rank zeta = {}, rank M + rank v = {} + {}",
            self.interval, self.position, self.zeta_rank, self.interval_rank, self.v_rank
        )
    }
}

/// For every interval compares `rank ζ(V)` on the window `([μ(b)],[λ(a)])`
/// with `rank M_[a,b](V) + rank v_Q` on the same window.
pub fn check_main_theorem<F: Field>(v: &Representation<F>) -> Result<Vec<MainTheoremRow>> {
    let point = zeta(v)?;
    let frame = point.frame().clone();
    let z = point.sw_block_ranks();
    let vt = frame.v_perm().sw_block_table()?;
    let (zr, vr) = (frame.lookup(&z), frame.lookup(&vt));
    let r = v.rank_params();
    v.quiver()
        .intervals()
        .into_iter()
        .map(|iv| {
            let pos = v.quiver().grid_position(iv)?;
            Ok(MainTheoremRow {
                interval: iv,
                position: pos,
                zeta_rank: zr(pos.x, pos.y),
                interval_rank: r.get(iv),
                v_rank: vr(pos.x, pos.y),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn v_perm_of_example() {
        let q: QuiverA = "RRLLRL".parse().unwrap();
        let d = DimVector::positive(vec![2, 2, 2, 2, 1, 1, 1]).unwrap();
        let v = v_perm(&q, &d).unwrap();
        assert_eq!(v.one_line(), &[6, 5, 8, 9, 1, 2, 3, 4, 10, 11, 7]);
        assert!(v.is_z_type().unwrap());
    }

    #[test]
    fn v_perm_degenerate_cases() {
        let e = QuiverA::equioriented(4).unwrap();
        let d = DimVector::positive(vec![1, 2, 1, 3]).unwrap();
        assert_eq!(v_perm(&e, &d).unwrap().one_line(), Permutation::identity(7).one_line());
        let l: QuiverA = "L".parse().unwrap();
        let d = DimVector::positive(vec![1, 1]).unwrap();
        assert_eq!(v_perm(&l, &d).unwrap().one_line(), &[1, 2]);
    }

    #[test]
    fn zero_rep_maps_to_v() {
        let q: QuiverA = "RLLR".parse().unwrap();
        let d = DimVector::positive(vec![1, 2, 1, 2, 1]).unwrap();
        let z = Representation::zero(&q, &d, &PrimeField::default()).unwrap();
        let point = zeta(&z).unwrap();
        let frame = Frame::new(&q, &d).unwrap();
        assert_eq!(point.matrix(), &frame.v_perm().matrix(&PrimeField::default()));
    }

    #[test]
    fn zeta_respects_pattern() {
        let q: QuiverA = "RRLLRL".parse().unwrap();
        let d = DimVector::positive(vec![2, 1, 3, 2, 1, 2, 1]).unwrap();
        let v = Representation::random(&q, &d, &Rationals, 4).unwrap();
        assert_eq!(zeta(&v).unwrap().pattern_violation(), None);
    }
}
