//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Tolerances are pinned: every comparison is exact integer or string
//! equality; wall-clock limits are 1 s for the golden example and 60 s for
//! the main-theorem suite. Known deviations are listed in `KNOWN` with the
//! reason; they must keep failing in the analysed way, and any other
//! failure fails the test.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zelevinsky::check::{run_suite, CheckConfig, Suite};
use zelevinsky::cli::{self, InstanceFile};
use zelevinsky::linalg::{BlockAxis, PrimeField};
use zelevinsky::multiplicity::mults_from_ranks;
use zelevinsky::quiver::QuiverA;
use zelevinsky::representation::{DecompositionSystem, DimVector, Representation};
use zelevinsky::zelevinsky::{z_type_census, zeta, zeta_preimage, Frame, OppositeCellPoint, Permutation, Rejection};

const SEED: u64 = 20_240_601;
const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const MAIN_LIMIT: Duration = Duration::from_secs(60);

/// Sub-checks expected to fail, with the analysis.
const KNOWN: &[(&str, &str)] = &[(
    "1/w_Q string",
    "(7,8,6,10,9,11,1,2,3,4,5) swaps rows 8,9 and rows 10,11 of the reference w_Q(r) matrix, whose column reading is \
     (7,9,6,11,8,10,1,2,3,4,5); both have the same block one-counts, but only the reference matrix is of Z-type",
)];

struct Ledger {
    results: Vec<(String, bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        let known = KNOWN.iter().find(|(k, _)| *k == id);
        let status = match (ok, known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!("[criterion {id}] {status}: {detail}");
        if let (false, Some((_, why))) = (ok, known) {
            println!("    analysis: {why}");
        }
        self.results.push((id.to_string(), ok, detail));
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("zelevinsky").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn suite(s: Suite, trials: usize) -> (usize, Duration) {
    let cfg = CheckConfig { trials, seed: SEED, max_n: 8, max_dim: 4, ..CheckConfig::default() };
    let start = Instant::now();
    let report = run_suite(&cfg, s).unwrap();
    for f in report.failures.iter().take(5) {
        println!("    {f}");
    }
    (report.failures.len(), start.elapsed())
}

fn criterion_1(l: &mut Ledger) {
    let start = Instant::now();
    let file = data("rrllrl.json");
    let path = file.to_str().unwrap();
    let (c1, table) = run_cli(&["rank-table", path]);
    let (c2, perm) = run_cli(&["perm", path]);
    let (c3, dec) = run_cli(&["decompose", path]);
    let (c4, mm) = run_cli(&["mult-matrix", path]);
    let elapsed = start.elapsed();

    let mut want_table = String::from("b\\a\t1\t2\t3\t4\t5\t6\n");
    for b in 2..=7 {
        want_table.push_str(&b.to_string());
        for a in 1..b {
            want_table.push_str(&format!("\t{}", example_rank_table()[&(a, b)]));
        }
        want_table.push('\n');
    }
    l.record("1/rank table", c1 == 0 && table == want_table, "21 entries of the reference rank table");

    let lines: Vec<&str> = perm.lines().collect();
    l.record("1/v_Q string", c2 == 0 && lines[0] == "v_Q = (6,5,8,9,1,2,3,4,10,11,7)", lines[0]);
    let expected = "(7,8,6,10,9,11,1,2,3,4,5)";
    let ours = lines[1].trim_start_matches("w_Q(r) = ");
    l.record("1/w_Q string", ours == expected, format!("perm prints {ours}, expected {expected}"));
    // The deviation must be exactly the analysed one: same block one-counts,
    // the two rows of block rows [4] and [3] interchanged, not of Z-type.
    let frame = Frame::new(&example_quiver(), &example_dims()).unwrap();
    let blocked = |s: &str| {
        let w: Vec<usize> = s.trim_matches(|c| c == '(' || c == ')').split(',').map(|t| t.parse().unwrap()).collect();
        Permutation::new(w).unwrap().with_blocking(frame.row_axis().clone(), frame.col_axis().clone()).unwrap()
    };
    let (p, o) = (blocked(expected), blocked(ours));
    let swap = |i: usize| match i {
        8 => 9,
        9 => 8,
        10 => 11,
        11 => 10,
        _ => i,
    };
    let swapped: Vec<usize> = o.one_line().iter().map(|&i| swap(i)).collect();
    l.record(
        "1/w_Q matrix",
        ours == "(7,9,6,11,8,10,1,2,3,4,5)"
            && swapped == p.one_line()
            && p.block_counts().unwrap() == o.block_counts().unwrap()
            && o.is_z_type().unwrap()
            && !p.is_z_type().unwrap(),
        "perm matches the reference w_Q(r) matrix; the expected string differs inside two blocks and is not of Z-type",
    );
    l.record("1/decompose", c3 == 0 && dec.lines().next() == Some("I_13 ×1, I_14 ×1, I_47 ×1"), dec.lines().next().unwrap_or(""));
    let want_counts = "x\\y\t7\t5\t4\t1\t2\t3\t6\n\
        1\t0\t0\t0\t0\t2\t0\t0\n\
        2\t0\t0\t0\t0\t0\t2\t0\n\
        5\t0\t0\t0\t0\t0\t0\t1\n\
        7\t0\t0\t1\t0\t0\t0\t0\n\
        6\t1\t0\t0\t0\t0\t0\t0\n\
        4\t0\t1\t0\t1\t0\t0\t0\n\
        3\t0\t0\t1\t1\t0\t0\t0\n";
    l.record("1/mult-matrix", c4 == 0 && mm == want_counts, "one-count table of w_Q(r)");
    l.record("1/runtime", elapsed < GOLDEN_LIMIT, format!("{elapsed:?} < {GOLDEN_LIMIT:?}"));
}

fn criterion_2(l: &mut Ledger) {
    let (failures, t) = suite(Suite::MainTheorem, 1000);
    l.record("2", failures == 0 && t < MAIN_LIMIT, format!("1000 trials over F_32003, {failures} failures, {t:?} < {MAIN_LIMIT:?}"));
}

fn criterion_3(l: &mut Ledger) {
    let (failures, _) = suite(Suite::ConstantCount, 200);
    l.record("3", failures == 0, format!("200 trials, 5 representations each, {failures} failures"));
}

fn criterion_4(l: &mut Ledger) {
    let (failures, _) = suite(Suite::DegenerationKl, 500);
    l.record("4", failures == 0, format!("500 trials of W, W' and a generic point in both modes, {failures} failures"));
}

/// All orientations with `n <= 6` and all dims in `[1, 3]^n`; per pair one
/// generic representation and two random points of random orbits.
fn multiplicity_sweep() -> (usize, usize) {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut cases, mut bad) = (0, 0);
    for n in 2..=6 {
        for q in all_quivers(n) {
            let sys = DecompositionSystem::new(&q);
            for d in all_dims(n, 3) {
                let reps = [
                    Representation::random_with(&q, &d, &f, &mut rng).unwrap(),
                    scrambled(&random_mults_with_dims(&d, &mut rng), &q, &f, &mut rng),
                    scrambled(&random_mults_with_dims(&d, &mut rng), &q, &f, &mut rng),
                ];
                for v in reps {
                    let r = v.rank_params();
                    cases += 1;
                    if mults_from_ranks(&r).ok() != sys.solve(&r).ok() {
                        bad += 1;
                    }
                }
            }
        }
    }
    (cases, bad)
}

fn criterion_5(l: &mut Ledger) {
    let (failures, _) = suite(Suite::Theorem53, 1000);
    l.record("5/suite", failures == 0, format!("1000 trials: oracle, rebuild, formulas, multiplicity matrix, rank sums; {failures} failures"));
    let (cases, bad) = multiplicity_sweep();
    l.record("5/sweep", bad == 0, format!("{cases} representations, {bad} disagreements with the oracle"));
}

/// Block-size sequences of every frame with `N <= 7`, and every pair of
/// compositions with `N <= 5`.
fn census_blockings() -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    for n in 2..=7 {
        for q in all_quivers(n) {
            for d in all_dims(n, 7 - n + 1) {
                if d.total() > 7 {
                    continue;
                }
                let frame = Frame::new(&q, &d).unwrap();
                let sizes = |s: &[usize]| s.iter().map(|&x| d.get(x)).collect::<Vec<_>>();
                out.insert((sizes(frame.s1().as_slice()), sizes(frame.s2().as_slice())));
            }
        }
    }
    let compositions = |n: usize| -> Vec<Vec<usize>> {
        (0..1u32 << (n - 1))
            .map(|mask| {
                let mut parts = vec![1];
                for k in 0..n - 1 {
                    if mask >> k & 1 == 1 { parts.push(1) } else { *parts.last_mut().unwrap() += 1 }
                }
                parts
            })
            .collect()
    };
    for n in 1..=5 {
        for r in compositions(n) {
            for c in compositions(n) {
                out.insert((r.clone(), c));
            }
        }
    }
    out
}

fn criterion_6(l: &mut Ledger) {
    let (failures, _) = suite(Suite::ZtypeBruhat, 1000);
    l.record("6/suite", failures == 0, format!("1000 trials of is_z_type and v_Q <= w_Q(r), {failures} failures"));
    let blockings = census_blockings();
    let (mut cosets, mut bad) = (0, 0);
    for (r, c) in &blockings {
        let rows = BlockAxis::new((1..=r.len()).collect(), r.clone()).unwrap();
        let cols = BlockAxis::new((1..=c.len()).collect(), c.clone()).unwrap();
        let census = z_type_census(&rows, &cols).unwrap();
        cosets += census.cosets;
        bad += census.disagreements.len();
    }
    l.record(
        "6/census",
        bad == 0,
        format!("{} blockings with N <= 7, {cosets} cosets, {bad} where condition (3) and Bruhat-maximality differ", blockings.len()),
    );
}

fn criterion_7(l: &mut Ledger) {
    let (failures, _) = suite(Suite::Image, 1000);
    l.record("7/round trip", failures == 0, format!("1000 representations through zeta and back, {failures} failures"));

    let file = InstanceFile::read(&data("rrll.json")).unwrap();
    let f = PrimeField::default();
    let v = file.representation(&f).unwrap();
    let point = zeta(&v).unwrap();
    let perturb = |i: usize, j: usize| {
        let mut m = point.matrix().clone();
        m.set(i - 1, j - 1, zelevinsky::linalg::Field::add(&f, m.get(i - 1, j - 1), &1));
        zeta_preimage(&OppositeCellPoint::from_matrix(point.frame().clone(), m).unwrap())
    };
    let forced = perturb(9, 1);
    let forced_ok = matches!(&forced, Err(Rejection::ForcedZero { row: 9, col: 1, .. }));
    l.record("7/x_{9,1}", forced_ok && zeta_preimage(&point).as_ref() == Ok(&v), format!("{:?}", forced.err()));
    let product = perturb(9, 5);
    let product_ok = matches!(&product, Err(Rejection::Product { row: 9, col: 5, relation, .. })
        if relation == "x_{9,5} - x_{9,7}x_{3,5} - x_{9,8}x_{4,5}");
    l.record("7/x_{9,5}", product_ok, product.err().map_or("accepted".into(), |r| r.to_string()));
}

fn criterion_8(l: &mut Ledger) {
    let (failures, _) = suite(Suite::Equivariance, 200);
    l.record("8", failures == 0, format!("200 trials of g.V against V, {failures} failures"));
}

#[test]
fn acceptance() {
    // Sanity: the example quiver really is the one the criteria refer to.
    assert_eq!(example_quiver(), "RRLLRL".parse::<QuiverA>().unwrap());
    assert_eq!(example_dims(), DimVector::positive(vec![2, 2, 2, 2, 1, 1, 1]).unwrap());

    let mut l = Ledger { results: Vec::new() };
    criterion_1(&mut l);
    criterion_2(&mut l);
    criterion_3(&mut l);
    criterion_4(&mut l);
    criterion_5(&mut l);
    criterion_6(&mut l);
    criterion_7(&mut l);
    criterion_8(&mut l);

    let unexpected: Vec<&String> = l
        .results
        .iter()
        .filter(|(id, ok, _)| !ok && !KNOWN.iter().any(|(k, _)| k == id))
        .map(|(id, _, _)| id)
        .collect();
    let stale: Vec<&str> =
        KNOWN.iter().filter(|(k, _)| l.results.iter().any(|(id, ok, _)| id == k && *ok)).map(|(k, _)| *k).collect();
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    assert!(stale.is_empty(), "known deviations that now pass: {stale:?}");
}
