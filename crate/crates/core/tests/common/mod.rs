#![allow(dead_code)]

use std::collections::BTreeMap;

use zelevinsky::linalg::{Field, Matrix, PrimeField, Rationals};
use zelevinsky::quiver::{Interval, QuiverA};
use zelevinsky::representation::{DimVector, Multiplicities, Representation};

pub fn example_quiver() -> QuiverA {
    "RRLLRL".parse().unwrap()
}

pub fn example_dims() -> DimVector {
    DimVector::positive(vec![2, 2, 2, 2, 1, 1, 1]).unwrap()
}

/// The worked representation: B1 = B2 = I, A1 = diag(1,0), A2 = (0,1)^T,
/// B3 = A3 = [1].
pub fn example_rep<F: Field>(f: &F) -> Representation<F> {
    let m = |rows: &[&[i64]]| Matrix::from_i64_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
    let maps = vec![
        m(&[&[1, 0], &[0, 1]]),
        m(&[&[1, 0], &[0, 1]]),
        m(&[&[1, 0], &[0, 0]]),
        m(&[&[0], &[1]]),
        m(&[&[1]]),
        m(&[&[1]]),
    ];
    Representation::new(example_quiver(), example_dims(), f, maps).unwrap()
}

pub fn example_rep_q() -> Representation<Rationals> {
    example_rep(&Rationals)
}

pub fn example_rep_fp() -> Representation<PrimeField> {
    example_rep(&PrimeField::default())
}

/// Reference rank table of the worked example, keyed by (a, b).
pub fn example_rank_table() -> BTreeMap<(usize, usize), usize> {
    let rows: [(usize, &[usize]); 6] = [
        (2, &[2]),
        (3, &[2, 2]),
        (4, &[2, 2, 1]),
        (5, &[2, 2, 0, 1]),
        (6, &[3, 3, 1, 1, 1]),
        (7, &[3, 3, 1, 2, 1, 1]),
    ];
    let mut t = BTreeMap::new();
    for (b, vals) in rows {
        for (i, &v) in vals.iter().enumerate() {
            t.insert((i + 1, b), v);
        }
    }
    t
}

/// Rank of φ_[a,b] on I_pq computed without matrices: half the number of
/// critical points of Q_[a,b] inside the overlap of [p,q] and [a,b].
pub fn interval_rank_oracle(q: &QuiverA, p: usize, e: usize, iv: Interval) -> usize {
    let lo = p.max(iv.a);
    let hi = e.min(iv.b);
    if lo > hi {
        return 0;
    }
    q.critical_points_in(iv.a, iv.b).iter().filter(|&&c| lo <= c && c <= hi).count() / 2
}

/// Rank table of ⊕ m I predicted by the oracle.
pub fn oracle_rank_table(q: &QuiverA, m: &Multiplicities) -> BTreeMap<Interval, usize> {
    q.intervals()
        .into_iter()
        .map(|iv| (iv, m.iter().map(|((p, e), v)| v * interval_rank_oracle(q, p, e, iv)).sum()))
        .collect()
}

pub fn quiver_from_bits(bits: &[bool]) -> QuiverA {
    use zelevinsky::quiver::Orientation;
    QuiverA::new(bits.iter().map(|&r| if r { Orientation::Right } else { Orientation::Left }).collect())
}

/// Every orientation word on `n` vertices.
pub fn all_quivers(n: usize) -> Vec<QuiverA> {
    (0..1u32 << (n - 1))
        .map(|mask| quiver_from_bits(&(0..n - 1).map(|e| mask >> e & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Every dimension vector in `[1, max]^n`.
pub fn all_dims(n: usize, max: usize) -> Vec<DimVector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<usize>| (1..=max).map(move |d| [v.clone(), vec![d]].concat())).collect();
    }
    out.into_iter().map(|d| DimVector::positive(d).unwrap()).collect()
}

/// Random multiplicities with total dimension vector exactly `dims`: at each
/// vertex a random subset of the open intervals continues to the next one.
pub fn random_mults_with_dims<R: rand::Rng>(dims: &DimVector, rng: &mut R) -> Multiplicities {
    use rand::seq::SliceRandom;
    let n = dims.len();
    let mut m = Multiplicities::new(n);
    let mut open: Vec<usize> = Vec::new();
    for x in 1..=n {
        while open.len() < dims.get(x) {
            open.push(x);
        }
        open.shuffle(rng);
        let keep = if x < n { rng.gen_range(0..=dims.get(x).min(dims.get(x + 1))) } else { 0 };
        for p in open.split_off(keep) {
            m.set(p, x, m.get(p, x) + 1).unwrap();
        }
    }
    m
}

/// `⊕ m I` moved by a random element of GL(d).
pub fn scrambled<F: Field, R: rand::Rng>(m: &Multiplicities, q: &QuiverA, field: &F, rng: &mut R) -> Representation<F> {
    let v = m.realize(q, field).unwrap();
    let g = zelevinsky::representation::random_gl(v.dims(), field, rng);
    v.gl_action(&g).unwrap()
}
