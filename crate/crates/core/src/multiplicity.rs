//! Multiplicity matrices and the passage between rank parameters and
//! interval-module multiplicities.
//!
//! # Closed forms for `m_pq`
//!
//! Let `s_1 < s_2 < …` be the critical points, `s_0 := 0` and
//! `s_{k+1} := n + 1` past the last one, and let `a`, `b` index the greatest
//! critical points `s_a <= p` and `s_b <= q`. Write `ρ(x, y)` for the rank
//! term after clamping both endpoints into `[1, n]`: `r_[x,y]` when `x < y`,
//! `0` when `x > y`.
//!
//! 1. `p`, `q` not critical:
//!    `(-1)^{b-a} (ρ(p,q) - ρ(p-1,q) - ρ(p,q+1) + ρ(p-1,q+1))`, where here
//!    `ρ(x,x) = d_x`.
//! 2. `p = s_a`, `q` not critical:
//!    `(-1)^{b-a+1} (ρ(s_{a+1},q) - ρ(s_a-1,q) - ρ(s_{a+1},q+1) + ρ(s_a-1,q+1))`.
//! 3. `p` not critical, `q = s_b`:
//!    `(-1)^{b-a} (ρ(p,s_{b-1}) - ρ(p-1,s_{b-1}) - ρ(p,s_b+1) + ρ(p-1,s_b+1))`.
//! 4. `p = s_a < q = s_b`:
//!    `(-1)^{b-a+1} (ρ(s_{a+1},s_{b-1}) - ρ(s_a-1,s_{b-1}) - ρ(s_{a+1},s_b+1) + ρ(s_a-1,s_b+1))`.
//! 5. `p = q = s`: `d_s - ρ(s-1, s+1)`.
//!
//! In cases 2 to 5 a degenerate term `ρ(x,x)` is `0`. [`Reading`] enumerates
//! nearby variants: `ρ(p,p+1)` as the third term of case 1, `s_{a-1}` in
//! place of `s_a - 1` in case 2, the case-2 sign as a product instead of a
//! power, and `ρ(x,x) = d_x` in every case. Only the choice above agrees
//! with direct decomposition on every small quiver.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{Interval, QuiverA};
use crate::representation::{DimVector, Multiplicities, RankParameters};
use crate::zelevinsky::{Frame, Permutation};

/// An `n × n` table with rows labelled by S₁ and columns by S₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Vec<usize>>,
}

impl MultiplicityMatrix {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>, entries: Vec<Vec<usize>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::DimensionMismatch("multiplicity matrix shape".into()));
        }
        Ok(MultiplicityMatrix { rows, cols, entries })
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.rows
    }
    pub fn col_labels(&self) -> &[usize] {
        &self.cols
    }
    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// Entry at block position `([x],[y])`.
    pub fn get(&self, x: usize, y: usize) -> usize {
        let k = self.rows.iter().position(|&v| v == x).expect("row label");
        let l = self.cols.iter().position(|&v| v == y).expect("column label");
        self.entries[k][l]
    }

    fn set(&mut self, x: usize, y: usize, v: usize) {
        let k = self.rows.iter().position(|&r| r == x).expect("row label");
        let l = self.cols.iter().position(|&c| c == y).expect("column label");
        self.entries[k][l] = v;
    }
}

impl fmt::Display for MultiplicityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x\\y")?;
        for y in &self.cols {
            write!(f, "\t{y}")?;
        }
        writeln!(f)?;
        for (x, row) in self.rows.iter().zip(&self.entries) {
            write!(f, "{x}")?;
            for v in row {
                write!(f, "\t{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `M(w)`: inclusion–exclusion of block southwest ranks, which counts the
/// ones in each block.
pub fn mult_matrix(w: &Permutation) -> Result<MultiplicityMatrix> {
    let b = w.blocking().ok_or(Error::Unblocked)?;
    let t = w.sw_block_table()?;
    let (nr, nc) = (b.rows.len(), b.cols.len());
    let at = |k: usize, l: Option<usize>| -> i64 {
        match l {
            Some(l) if k < nr => t[k][l] as i64,
            _ => 0,
        }
    };
    let entries = (0..nr)
        .map(|k| {
            (0..nc)
                .map(|l| {
                    let west = l.checked_sub(1);
                    (at(k, Some(l)) - at(k + 1, Some(l)) - at(k, west) + at(k + 1, west)) as usize
                })
                .collect()
        })
        .collect();
    MultiplicityMatrix::new(b.rows.labels().to_vec(), b.cols.labels().to_vec(), entries)
}

/// Predicted `M(w_Q(r))`: `m_{yx}` at `([x],[y])` for `y <= x`, the edge
/// rank `n_{x,x+1}` at `([x],[x+1])`, zero further right.
pub fn expected_theorem53(m: &Multiplicities, quiver: &QuiverA, dims: &DimVector) -> Result<MultiplicityMatrix> {
    if m.dims() != *dims {
        return Err(Error::Mismatch(format!("multiplicities give dimensions {} not {dims}", m.dims())));
    }
    let frame = Frame::new(quiver, dims)?;
    let n = quiver.n();
    let mut out = MultiplicityMatrix::new(
        frame.s1().as_slice().to_vec(),
        frame.s2().as_slice().to_vec(),
        vec![vec![0; n]; n],
    )?;
    for x in 1..=n {
        for y in 1..=x {
            out.set(x, y, m.get(y, x));
        }
        if x < n {
            out.set(x, x + 1, m.edge_rank(x));
        }
    }
    Ok(out)
}

/// Row sums `d_x`, column sums `d_y`, and zeros strictly right of the
/// superdiagonal in vertex order.
pub fn realizable_matrix(mm: &MultiplicityMatrix, quiver: &QuiverA, dims: &DimVector) -> bool {
    let n = quiver.n();
    if dims.len() != n || mm.rows.len() != n || mm.cols.len() != n {
        return false;
    }
    let rows_ok = (1..=n).all(|x| (1..=n).map(|y| mm.get(x, y)).sum::<usize>() == dims.get(x));
    let cols_ok = (1..=n).all(|y| (1..=n).map(|x| mm.get(x, y)).sum::<usize>() == dims.get(y));
    let shape_ok = (1..=n).all(|x| (x + 2..=n).all(|y| mm.get(x, y) == 0));
    rows_ok && cols_ok && shape_ok
}

/// Multiplicities read back from a realizable multiplicity matrix.
pub fn multiplicities_from_matrix(mm: &MultiplicityMatrix, n: usize) -> Result<Multiplicities> {
    let mut m = Multiplicities::new(n);
    for x in 1..=n {
        for y in 1..=x {
            m.set(y, x, mm.get(x, y))?;
        }
    }
    Ok(m)
}

/// `r_[a,b] + Σ d_x` over diagonal blocks in the window `[μ(b)] × [λ(a)]`
/// against the predicted multiplicity-matrix entries summed over the window.
pub fn ranksum_identity(r: &RankParameters, m: &Multiplicities, iv: Interval) -> Result<bool> {
    let (lhs, rhs) = ranksum_sides(r, m, iv)?;
    Ok(lhs == rhs)
}

/// Both sides of [`ranksum_identity`].
pub fn ranksum_sides(r: &RankParameters, m: &Multiplicities, iv: Interval) -> Result<(usize, usize)> {
    let q = r.quiver();
    let frame = Frame::new(q, r.dims())?;
    let pos = q.grid_position(iv)?;
    let (s1, s2) = (frame.s1(), frame.s2());
    let top = s1.position(pos.x)?;
    let right = s2.position(pos.y)?;
    let in_window = |x: usize, y: usize| s1.position(x).unwrap() >= top && s2.position(y).unwrap() <= right;
    let n = q.n();
    let mut lhs = r.get(iv);
    let mut rhs = 0;
    for x in 1..=n {
        if in_window(x, x) {
            lhs += r.dims().get(x);
        }
        for y in 1..=x {
            if in_window(x, y) {
                rhs += m.get(y, x);
            }
        }
        if x < n && in_window(x, x + 1) {
            rhs += m.edge_rank(x);
        }
    }
    Ok((lhs, rhs))
}

/// Third term of case 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case1RightEnd {
    /// `r_[p,p+1]`, a variant.
    PPlusOne,
    /// `r_[p,q+1]`.
    QPlusOne,
}

/// Left endpoint of the second term of case 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case2InnerLeft {
    /// `s_{a-1}`, a variant.
    PreviousCritical,
    /// `s_a - 1`.
    CriticalMinusOne,
}

/// How to read the caret-less sign `(-1){b-a+1}` of case 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignReading {
    Power,
    Product,
}

/// Value of a degenerate term `ρ(x, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagonalRule {
    /// `d_x` in every case, a variant.
    Dimension,
    /// `0` in every case.
    Zero,
    /// `d_x` in case 1, `0` in cases 2 to 5.
    DimensionInCaseOne,
}

/// Treatment of endpoints outside `[1, n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryRule {
    Clamp,
    Zero,
}

/// One reading of the case formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reading {
    pub case1_right_end: Case1RightEnd,
    pub case2_inner_left: Case2InnerLeft,
    pub case2_sign: SignReading,
    pub diagonal: DiagonalRule,
    pub boundary: BoundaryRule,
}

impl Reading {
    /// The reading used by [`mults_from_ranks`].
    pub const RESOLVED: Reading = Reading {
        case1_right_end: Case1RightEnd::QPlusOne,
        case2_inner_left: Case2InnerLeft::CriticalMinusOne,
        case2_sign: SignReading::Power,
        diagonal: DiagonalRule::DimensionInCaseOne,
        boundary: BoundaryRule::Clamp,
    };

    /// Every combination of the alternatives.
    pub fn all() -> Vec<Reading> {
        let mut out = Vec::new();
        for case1_right_end in [Case1RightEnd::PPlusOne, Case1RightEnd::QPlusOne] {
            for case2_inner_left in [Case2InnerLeft::PreviousCritical, Case2InnerLeft::CriticalMinusOne] {
                for case2_sign in [SignReading::Power, SignReading::Product] {
                    for diagonal in [DiagonalRule::Dimension, DiagonalRule::Zero, DiagonalRule::DimensionInCaseOne] {
                        for boundary in [BoundaryRule::Clamp, BoundaryRule::Zero] {
                            out.push(Reading { case1_right_end, case2_inner_left, case2_sign, diagonal, boundary });
                        }
                    }
                }
            }
        }
        out
    }
}

struct Evaluator<'a> {
    r: &'a RankParameters,
    n: i64,
    reading: Reading,
}

impl Evaluator<'_> {
    fn rho(&self, x: i64, y: i64, diagonal_is_dim: bool) -> i64 {
        let (x, y) = match self.reading.boundary {
            BoundaryRule::Clamp => (x.clamp(1, self.n), y.clamp(1, self.n)),
            BoundaryRule::Zero => {
                if x < 1 || y > self.n || x > self.n || y < 1 {
                    return 0;
                }
                (x, y)
            }
        };
        match x.cmp(&y) {
            std::cmp::Ordering::Greater => 0,
            std::cmp::Ordering::Equal => {
                if diagonal_is_dim {
                    self.r.dims().get(x as usize) as i64
                } else {
                    0
                }
            }
            std::cmp::Ordering::Less => self.r.get(Interval { a: x as usize, b: y as usize }) as i64,
        }
    }
}

fn parity(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Evaluates the case formulas under `reading`, returning raw (possibly
/// negative) values for every `p <= q`.
pub fn case_formula_values(r: &RankParameters, reading: Reading) -> BTreeMap<(usize, usize), i64> {
    let q = r.quiver();
    let n = q.n() as i64;
    let crit: Vec<i64> = q.critical_points().into_iter().map(|c| c as i64).collect();
    // s(k) with the boundary values s_0 = 0 and s_{last+1} = n + 1.
    let s = |k: i64| -> i64 {
        if k < 0 {
            0
        } else if k as usize >= crit.len() {
            n + 1
        } else {
            crit[k as usize]
        }
    };
    let index = |x: i64| -> i64 { crit.iter().rposition(|&c| c <= x).expect("1 is critical") as i64 };
    let ev = Evaluator { r, n, reading };
    let case1_dim = reading.diagonal != DiagonalRule::Zero;
    let other_dim = reading.diagonal == DiagonalRule::Dimension;
    let mut out = BTreeMap::new();
    for p in 1..=n {
        for qq in p..=n {
            let (a, b) = (index(p), index(qq));
            let (pc, qc) = (crit.contains(&p), crit.contains(&qq));
            let rho = |x, y, dim| ev.rho(x, y, dim);
            let v = match (pc, qc) {
                (true, true) if p == qq => r.dims().get(p as usize) as i64 - rho(p - 1, p + 1, other_dim),
                (false, false) => {
                    let right = match reading.case1_right_end {
                        Case1RightEnd::PPlusOne => p + 1,
                        Case1RightEnd::QPlusOne => qq + 1,
                    };
                    parity(b - a)
                        * (rho(p, qq, case1_dim) - rho(p - 1, qq, case1_dim) - rho(p, right, case1_dim)
                            + rho(p - 1, qq + 1, case1_dim))
                }
                (true, false) => {
                    let inner = match reading.case2_inner_left {
                        Case2InnerLeft::PreviousCritical => s(a - 1),
                        Case2InnerLeft::CriticalMinusOne => s(a) - 1,
                    };
                    let sign = match reading.case2_sign {
                        SignReading::Power => parity(b - a + 1),
                        SignReading::Product => -(b - a + 1),
                    };
                    let d = other_dim;
                    sign * (rho(s(a + 1), qq, d) - rho(inner, qq, d) - rho(s(a + 1), qq + 1, d)
                        + rho(s(a) - 1, qq + 1, d))
                }
                (false, true) => {
                    let d = other_dim;
                    parity(b - a)
                        * (rho(p, s(b - 1), d) - rho(p - 1, s(b - 1), d) - rho(p, s(b) + 1, d)
                            + rho(p - 1, s(b) + 1, d))
                }
                (true, true) => {
                    let d = other_dim;
                    parity(b - a + 1)
                        * (rho(s(a + 1), s(b - 1), d) - rho(s(a) - 1, s(b - 1), d) - rho(s(a + 1), s(b) + 1, d)
                            + rho(s(a) - 1, s(b) + 1, d))
                }
            };
            out.insert((p as usize, qq as usize), v);
        }
    }
    out
}

/// Multiplicities from the closed-form case formulas. Negative values or a
/// dimension mismatch mean `r` is not realizable.
pub fn mults_from_ranks(r: &RankParameters) -> Result<Multiplicities> {
    let n = r.quiver().n();
    let mut m = Multiplicities::new(n);
    for ((p, q), v) in case_formula_values(r, Reading::RESOLVED) {
        if v < 0 {
            return Err(Error::NotRealizable(format!("m_{p},{q} would be {v}")));
        }
        m.set(p, q, v as usize)?;
    }
    if m.dims() != *r.dims() {
        return Err(Error::NotRealizable(format!("multiplicities give dimensions {} not {}", m.dims(), r.dims())));
    }
    Ok(m)
}
