//! Representations of a type-A quiver and their orbit invariants.
//!
//! The matrix on an arrow `s → t` has shape `d_t × d_s` and acts by left
//! multiplication, so composites along a path are written right to left.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{BlockAxis, BlockedMatrix, Field, Matrix, Rationals};
use crate::quiver::{Interval, QuiverA};

/// Dimension per vertex. Zero entries are allowed internally (for interval
/// modules with partial support); inputs are checked with [`DimVector::positive`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(d: Vec<usize>) -> Self {
        DimVector(d)
    }

    pub fn positive(d: Vec<usize>) -> Result<Self> {
        if let Some(x) = d.iter().position(|&v| v == 0) {
            return Err(Error::DimensionMismatch(format!("dimension at vertex {} is zero", x + 1)));
        }
        Ok(DimVector(d))
    }

    /// `d_x` for a 1-based vertex.
    pub fn get(&self, x: usize) -> usize {
        self.0[x - 1]
    }
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F: Field> {
    quiver: QuiverA,
    dims: DimVector,
    field: F,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    /// `maps[e - 1]` is the matrix on edge `e`.
    pub fn new(quiver: QuiverA, dims: DimVector, field: &F, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.n()
            )));
        }
        if maps.len() != quiver.n() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.n() - 1
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let (s, t) = quiver.ends(i + 1);
            if m.shape() != (dims.get(t), dims.get(s)) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} ({s}->{t}) carries a {}x{} matrix, expected {}x{}",
                    i + 1,
                    m.rows(),
                    m.cols(),
                    dims.get(t),
                    dims.get(s)
                )));
            }
            if m.field() != field {
                return Err(Error::Mismatch(format!("arrow {} uses a different field", i + 1)));
            }
        }
        Ok(Representation { quiver, dims, field: field.clone(), maps })
    }

    pub fn zero(quiver: &QuiverA, dims: &DimVector, field: &F) -> Result<Self> {
        let maps = (1..quiver.n())
            .map(|e| {
                let (s, t) = quiver.ends(e);
                Matrix::zeros(field, dims.get(t), dims.get(s))
            })
            .collect();
        Self::new(quiver.clone(), dims.clone(), field, maps)
    }

    /// Random matrices on every arrow, reproducible from `seed`.
    pub fn random(quiver: &QuiverA, dims: &DimVector, field: &F, seed: u64) -> Result<Self> {
        Self::random_with(quiver, dims, field, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn random_with<R: Rng + ?Sized>(quiver: &QuiverA, dims: &DimVector, field: &F, rng: &mut R) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.n()
            )));
        }
        let maps = (1..quiver.n())
            .map(|e| {
                let (s, t) = quiver.ends(e);
                Matrix::random(field, dims.get(t), dims.get(s), rng)
            })
            .collect();
        Self::new(quiver.clone(), dims.clone(), field, maps)
    }

    /// The interval module `I_pq`: one-dimensional on `p..=q`, zero-dimensional
    /// elsewhere, identity maps inside the support.
    pub fn indecomposable(quiver: &QuiverA, field: &F, p: usize, q: usize) -> Result<Self> {
        if p == 0 || p > q || q > quiver.n() {
            return Err(Error::InvalidInterval(p, q));
        }
        let dims = DimVector::new((1..=quiver.n()).map(|x| usize::from(p <= x && x <= q)).collect());
        let maps = (1..quiver.n())
            .map(|e| {
                let (s, t) = quiver.ends(e);
                if p <= e && e < q {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, dims.get(t), dims.get(s))
                }
            })
            .collect();
        Self::new(quiver.clone(), dims, field, maps)
    }

    pub fn quiver(&self) -> &QuiverA {
        &self.quiver
    }
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    /// Matrix on edge `e`.
    pub fn map(&self, e: usize) -> &Matrix<F> {
        &self.maps[e - 1]
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::Mismatch(format!("quivers {} and {}", self.quiver, other.quiver)));
        }
        if self.field != other.field {
            return Err(Error::Mismatch("different fields".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Self::new(self.quiver.clone(), self.dims.add(&other.dims), &self.field, maps)
    }

    /// `g.V = (g_t V_α g_s⁻¹)`, with `g[x - 1]` acting at vertex `x`.
    pub fn gl_action(&self, g: &[Matrix<F>]) -> Result<Self> {
        if g.len() != self.quiver.n() {
            return Err(Error::DimensionMismatch(format!("{} group elements for {} vertices", g.len(), self.quiver.n())));
        }
        let mut inverses = Vec::with_capacity(g.len());
        for (i, gx) in g.iter().enumerate() {
            let d = self.dims.get(i + 1);
            if gx.shape() != (d, d) {
                return Err(Error::DimensionMismatch(format!(
                    "g at vertex {} is {}x{}, expected {d}x{d}",
                    i + 1,
                    gx.rows(),
                    gx.cols()
                )));
            }
            inverses.push(gx.inverse().ok_or_else(|| Error::Singular(format!("g at vertex {}", i + 1)))?);
        }
        let maps = (1..self.quiver.n())
            .map(|e| {
                let (s, t) = self.quiver.ends(e);
                g[t - 1].mul(self.map(e))?.mul(&inverses[s - 1])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.quiver.clone(), self.dims.clone(), &self.field, maps)
    }

    /// Composite along the directed path `y → x`; identity when `y = x` and
    /// `None` when no such path exists.
    pub fn path_map(&self, y: usize, x: usize) -> Option<Matrix<F>> {
        let q = &self.quiver;
        if y == x {
            return Some(Matrix::identity(&self.field, self.dims.get(x)));
        }
        let edges: Vec<usize> = if q.has_right_path(y, x) {
            (y..x).collect()
        } else if q.has_left_path(y, x) {
            (x..y).rev().collect()
        } else {
            return None;
        };
        let mut acc = self.map(edges[0]).clone();
        for &e in &edges[1..] {
            acc = self.map(e).mul(&acc).expect("path composites are conformable");
        }
        Some(acc)
    }

    /// The matrix of φ_[a,b]: block rows are the sinks of `Q_[a,b]`, block
    /// columns the sources, both in descending order.
    pub fn m_interval(&self, iv: Interval) -> Result<BlockedMatrix<F>> {
        self.quiver.check_interval(iv)?;
        let (sou, sin) = self.quiver.interval_sources_sinks(iv);
        let dims = self.dims.as_slice();
        BlockedMatrix::from_blocks(
            &self.field,
            BlockAxis::from_vertices(&sin, dims)?,
            BlockAxis::from_vertices(&sou, dims)?,
            |x, y| Ok(self.path_map(y, x)),
        )
    }

    pub fn rank_params(&self) -> RankParameters {
        let table = self
            .quiver
            .intervals()
            .into_iter()
            .map(|iv| (iv, self.m_interval(iv).expect("valid interval").matrix().rank()))
            .collect();
        RankParameters { quiver: self.quiver.clone(), dims: self.dims.clone(), table }
    }

    /// Krull–Schmidt multiplicities, re-verified by rebuilding `⊕ m I`.
    pub fn decompose(&self) -> Result<Multiplicities> {
        let r = self.rank_params();
        let m = Multiplicities::from_rank_params(&r)
            .map_err(|e| Error::Inconsistent(format!("decomposition system failed: {e}")))?;
        let rebuilt = m.realize(&self.quiver, &self.field)?.rank_params();
        if rebuilt != r {
            return Err(Error::Inconsistent("rebuilt direct sum has a different rank table".into()));
        }
        Ok(m)
    }

    fn check_comparable(&self, other: &Self) -> Result<()> {
        if self.quiver != other.quiver || self.dims != other.dims {
            return Err(Error::Mismatch(format!(
                "{} {} vs {} {}",
                self.quiver, self.dims, other.quiver, other.dims
            )));
        }
        Ok(())
    }

    pub fn same_orbit(&self, other: &Self) -> Result<bool> {
        self.check_comparable(other)?;
        Ok(self.rank_params() == other.rank_params())
    }

    /// Whether `self` lies in the orbit closure of `other`.
    pub fn degenerates_to(&self, other: &Self) -> Result<bool> {
        Ok(self.degeneration_witness(other)?.is_none())
    }

    /// An interval where `r(self) > r(other)`, if any.
    pub fn degeneration_witness(&self, other: &Self) -> Result<Option<Interval>> {
        self.check_comparable(other)?;
        Ok(self.rank_params().first_excess(&other.rank_params()))
    }
}

/// Random invertible matrices, one per vertex.
pub fn random_gl<F: Field, R: Rng + ?Sized>(dims: &DimVector, field: &F, rng: &mut R) -> Vec<Matrix<F>> {
    dims.as_slice()
        .iter()
        .map(|&d| loop {
            let g = Matrix::random(field, d, d, rng);
            if g.rank() == d {
                break g;
            }
        })
        .collect()
}

/// Interval ranks `r_[a,b]` for all `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankParameters {
    quiver: QuiverA,
    dims: DimVector,
    table: BTreeMap<Interval, usize>,
}

impl RankParameters {
    /// Builds a table from explicit values; every interval must be present.
    pub fn from_table(quiver: &QuiverA, dims: &DimVector, table: BTreeMap<Interval, usize>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::DimensionMismatch(format!("{} dimensions for {} vertices", dims.len(), quiver.n())));
        }
        for iv in quiver.intervals() {
            if !table.contains_key(&iv) {
                return Err(Error::Mismatch(format!("missing rank for {iv}")));
            }
        }
        if table.len() != quiver.intervals().len() {
            return Err(Error::Mismatch("rank table has intervals outside the quiver".into()));
        }
        Ok(RankParameters { quiver: quiver.clone(), dims: dims.clone(), table })
    }

    pub fn quiver(&self) -> &QuiverA {
        &self.quiver
    }
    pub fn dims(&self) -> &DimVector {
        &self.dims
    }
    pub fn iter(&self) -> impl Iterator<Item = (Interval, usize)> + '_ {
        self.table.iter().map(|(k, v)| (*k, *v))
    }

    /// `r_[a,b]` for a valid interval.
    pub fn get(&self, iv: Interval) -> usize {
        self.table[&iv]
    }

    /// `r_[a,b]` extended by `r_[x,x] = d_x` and `r_[y,x] = 0` for `y > x`.
    pub fn ext(&self, a: usize, b: usize) -> usize {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => 0,
            std::cmp::Ordering::Equal => self.dims.get(a),
            std::cmp::Ordering::Less => self.table[&Interval { a, b }],
        }
    }

    /// The first interval (in `(a, b)` order) where `self` exceeds `other`.
    pub fn first_excess(&self, other: &RankParameters) -> Option<Interval> {
        self.table
            .iter()
            .find(|(iv, &v)| v > other.table.get(iv).copied().unwrap_or(0))
            .map(|(iv, _)| *iv)
    }

    pub fn leq(&self, other: &RankParameters) -> bool {
        self.first_excess(other).is_none()
    }
}

/// Multiplicities `m_pq` of interval modules `I_pq`, `p <= q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Multiplicities {
    n: usize,
    m: BTreeMap<(usize, usize), usize>,
}

impl Multiplicities {
    pub fn new(n: usize) -> Self {
        Multiplicities { n, m: BTreeMap::new() }
    }

    pub fn from_map(n: usize, map: BTreeMap<(usize, usize), usize>) -> Result<Self> {
        let mut out = Multiplicities::new(n);
        for ((p, q), v) in map {
            out.set(p, q, v)?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.m.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: usize, q: usize, v: usize) -> Result<()> {
        if p == 0 || p > q || q > self.n {
            return Err(Error::InvalidInterval(p, q));
        }
        if v == 0 {
            self.m.remove(&(p, q));
        } else {
            self.m.insert((p, q), v);
        }
        Ok(())
    }

    /// Nonzero entries in `(p, q)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.m.iter().map(|(k, v)| (*k, *v))
    }

    /// `d_x = Σ_{p ≤ x ≤ q} m_pq`.
    pub fn dims(&self) -> DimVector {
        DimVector::new(
            (1..=self.n)
                .map(|x| self.iter().filter(|((p, q), _)| *p <= x && x <= *q).map(|(_, v)| v).sum())
                .collect(),
        )
    }

    /// `n_{x,x+1} = Σ_{p ≤ x < x+1 ≤ q} m_pq`, the rank of the arrow at edge `x`.
    pub fn edge_rank(&self, x: usize) -> usize {
        self.iter().filter(|((p, q), _)| *p <= x && x < *q).map(|(_, v)| v).sum()
    }

    /// `⊕ m_pq I_pq`.
    pub fn realize<F: Field>(&self, quiver: &QuiverA, field: &F) -> Result<Representation<F>> {
        if quiver.n() != self.n {
            return Err(Error::Mismatch(format!("{} vertices vs multiplicities on {}", quiver.n(), self.n)));
        }
        let mut acc = Representation::zero(quiver, &DimVector::new(vec![0; self.n]), field)?;
        for ((p, q), v) in self.iter() {
            let ind = Representation::indecomposable(quiver, field, p, q)?;
            for _ in 0..v {
                acc = acc.direct_sum(&ind)?;
            }
        }
        Ok(acc)
    }

    /// Solves `Σ m_pq r(I_pq) = r` together with the dimension equations.
    /// The system is square and nonsingular; a non-integral or negative
    /// solution means `r` is not realizable.
    pub fn from_rank_params(r: &RankParameters) -> Result<Self> {
        let system = DecompositionSystem::new(r.quiver());
        system.solve(r)
    }
}

impl fmt::Display for Multiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|((p, q), v)| {
                if p < 10 && q < 10 {
                    format!("I_{p}{q} ×{v}")
                } else {
                    format!("I_{{{p},{q}}} ×{v}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// The square linear system behind [`Multiplicities::from_rank_params`],
/// reusable across rank tables on the same quiver.
#[derive(Clone, Debug)]
pub struct DecompositionSystem {
    quiver: QuiverA,
    unknowns: Vec<(usize, usize)>,
    inverse: Matrix<Rationals>,
}

impl DecompositionSystem {
    pub fn new(quiver: &QuiverA) -> Self {
        let n = quiver.n();
        let unknowns: Vec<(usize, usize)> = (1..=n).flat_map(|p| (p..=n).map(move |q| (p, q))).collect();
        let q = Rationals;
        let columns: Vec<Vec<usize>> = unknowns
            .iter()
            .map(|&(p, e)| {
                let ind = Representation::indecomposable(quiver, &q, p, e).expect("valid support");
                let r = ind.rank_params();
                let mut col: Vec<usize> = quiver.intervals().into_iter().map(|iv| r.get(iv)).collect();
                col.extend((1..=n).map(|x| usize::from(p <= x && x <= e)));
                col
            })
            .collect();
        let k = unknowns.len();
        let a = Matrix::from_fn(&q, k, k, |i, j| q.from_i64(columns[j][i] as i64));
        let inverse = a.inverse().expect("indecomposable rank vectors with dimensions are independent");
        DecompositionSystem { quiver: quiver.clone(), unknowns, inverse }
    }

    pub fn solve(&self, r: &RankParameters) -> Result<Multiplicities> {
        if r.quiver() != &self.quiver {
            return Err(Error::Mismatch(format!("system for {} applied to {}", self.quiver, r.quiver())));
        }
        let q = Rationals;
        let mut rhs: Vec<i64> = self.quiver.intervals().into_iter().map(|iv| r.get(iv) as i64).collect();
        rhs.extend(r.dims().as_slice().iter().map(|&d| d as i64));
        let b = Matrix::from_fn(&q, rhs.len(), 1, |i, _| q.from_i64(rhs[i]));
        let sol = self.inverse.mul(&b)?;
        let mut out = Multiplicities::new(self.quiver.n());
        for (k, &(p, e)) in self.unknowns.iter().enumerate() {
            let v = sol.get(k, 0);
            if !v.denom().is_one() || v.is_negative() {
                return Err(Error::NotRealizable(format!("m_{p},{e} would be {v}")));
            }
            let v = v.to_integer().to_usize().ok_or_else(|| Error::NotRealizable(format!("m_{p},{e} overflows")))?;
            out.set(p, e, v)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn example_quiver() -> QuiverA {
        "RRLLRL".parse().unwrap()
    }

    #[test]
    fn indecomposable_supports() {
        let q = example_quiver();
        let f = PrimeField::default();
        let i47 = Representation::indecomposable(&q, &f, 4, 7).unwrap();
        assert_eq!(i47.dims().as_slice(), &[0, 0, 0, 1, 1, 1, 1]);
        let r = i47.rank_params();
        // Q_[4,7] has the four critical points 4, 5, 6, 7.
        assert_eq!(r.get(Interval { a: 4, b: 7 }), 2);
        assert_eq!(r.get(Interval { a: 1, b: 2 }), 0);
        let i11 = Representation::indecomposable(&q, &f, 1, 1).unwrap();
        assert!(i11.maps().iter().all(Matrix::is_zero));
    }

    #[test]
    fn zero_rep_is_semisimple() {
        let q = example_quiver();
        let d = DimVector::positive(vec![2, 1, 3, 1, 1, 2, 1]).unwrap();
        let z = Representation::zero(&q, &d, &PrimeField::default()).unwrap();
        let m = z.decompose().unwrap();
        for p in 1..=7 {
            assert_eq!(m.get(p, p), d.get(p));
        }
        assert_eq!(m.iter().count(), 7);
    }

    #[test]
    fn generic_equioriented_ranks() {
        let q = QuiverA::equioriented(3).unwrap();
        let d = DimVector::positive(vec![2, 2, 2]).unwrap();
        let v = Representation::random(&q, &d, &PrimeField::default(), 1).unwrap();
        let r = v.rank_params();
        assert!(r.iter().all(|(_, x)| x == 2));
    }

    #[test]
    fn shape_checks() {
        let q: QuiverA = "L".parse().unwrap();
        let d = DimVector::positive(vec![2, 1]).unwrap();
        let f = PrimeField::default();
        // Left arrow 2 -> 1 needs a d_1 x d_2 = 2x1 matrix.
        assert!(Representation::new(q.clone(), d.clone(), &f, vec![Matrix::zeros(&f, 1, 2)]).is_err());
        assert!(Representation::new(q, d, &f, vec![Matrix::zeros(&f, 2, 1)]).is_ok());
        assert!(DimVector::positive(vec![1, 0]).is_err());
    }

    #[test]
    fn singular_group_element_rejected() {
        let q: QuiverA = "R".parse().unwrap();
        let f = PrimeField::default();
        let d = DimVector::positive(vec![1, 1]).unwrap();
        let v = Representation::random(&q, &d, &f, 3).unwrap();
        let g = vec![Matrix::identity(&f, 1), Matrix::zeros(&f, 1, 1)];
        assert!(matches!(v.gl_action(&g), Err(Error::Singular(_))));
    }

    #[test]
    fn display_of_multiplicities() {
        let mut m = Multiplicities::new(12);
        m.set(1, 3, 1).unwrap();
        m.set(4, 11, 2).unwrap();
        assert_eq!(m.to_string(), "I_13 ×1, I_{4,11} ×2");
    }
}
