//! Independent oracles: interval ranks from critical-point counts, and the
//! closed multiplicity formulas against direct decomposition.

mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zelevinsky::linalg::PrimeField;
use zelevinsky::multiplicity::{case_formula_values, mults_from_ranks, Reading};
use zelevinsky::representation::{DecompositionSystem, Multiplicities, RankParameters, Representation};

#[test]
fn indecomposable_ranks_match_critical_point_count() {
    let f = PrimeField::default();
    for n in 2..=7 {
        for q in all_quivers(n) {
            for p in 1..=n {
                for e in p..=n {
                    let r = Representation::indecomposable(&q, &f, p, e).unwrap().rank_params();
                    for iv in q.intervals() {
                        assert_eq!(r.get(iv), interval_rank_oracle(&q, p, e, iv), "{q} I_{p},{e} at {iv}");
                    }
                }
            }
        }
    }
}

#[test]
fn direct_sum_ranks_match_oracle() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=6 {
        for q in all_quivers(n) {
            let dims = zelevinsky::representation::DimVector::positive(vec![3; n]).unwrap();
            let m = random_mults_with_dims(&dims, &mut rng);
            let v = scrambled(&m, &q, &f, &mut rng);
            let oracle = oracle_rank_table(&q, &m);
            for (iv, r) in v.rank_params().iter() {
                assert_eq!(r, oracle[&iv], "{q} {m} at {iv}");
            }
        }
    }
}

fn samples() -> Vec<(RankParameters, Multiplicities)> {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for n in 2..=6 {
        for q in all_quivers(n) {
            let sys = DecompositionSystem::new(&q);
            for d in all_dims(n, 2) {
                for _ in 0..2 {
                    let v = scrambled(&random_mults_with_dims(&d, &mut rng), &q, &f, &mut rng);
                    let r = v.rank_params();
                    let m = sys.solve(&r).unwrap();
                    out.push((r, m));
                }
            }
        }
    }
    out
}

fn agrees(r: &RankParameters, m: &Multiplicities, reading: Reading) -> bool {
    case_formula_values(r, reading).into_iter().all(|((p, e), v)| v == m.get(p, e) as i64)
}

/// Of the candidate readings of the closed formulas exactly one matches
/// direct decomposition everywhere.
#[test]
fn resolved_reading_is_the_unique_match() {
    let samples = samples();
    let readings = Reading::all();
    assert_eq!(readings.len(), 48);
    for reading in readings {
        let ok = samples.iter().all(|(r, m)| agrees(r, m, reading));
        assert_eq!(ok, reading == Reading::RESOLVED, "{reading:?}");
    }
    for (r, m) in &samples {
        assert_eq!(&mults_from_ranks(r).unwrap(), m);
    }
}
