//! Seeded randomized verification harness.
//!
//! Every trial draws from its own ChaCha stream keyed by (seed, suite,
//! trial), so results do not depend on the number of worker threads.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{stacked_rank_property, Field, Matrix, PrimeField, Rationals};
use crate::multiplicity::{expected_theorem53, mult_matrix, mults_from_ranks, ranksum_sides};
use crate::quiver::{GridPosition, Orientation, QuiverA};
use crate::representation::{random_gl, DimVector, Multiplicities, Representation};
use crate::zelevinsky::{
    bruhat_leq, kl_violation, v_perm, zeta, zeta_preimage, zelevinsky_perm, BlockPattern, Frame, KlMode, OppositeCellPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MainTheorem,
    ConstantCount,
    Theorem53,
    DegenerationKl,
    Equivariance,
    ZtypeBruhat,
    LemmaXy,
    Image,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::MainTheorem,
        Suite::ConstantCount,
        Suite::Theorem53,
        Suite::DegenerationKl,
        Suite::Equivariance,
        Suite::ZtypeBruhat,
        Suite::LemmaXy,
        Suite::Image,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::ConstantCount => "constant-count",
            Suite::Theorem53 => "theorem53",
            Suite::DegenerationKl => "degeneration-kl",
            Suite::Equivariance => "equivariance",
            Suite::ZtypeBruhat => "ztype-bruhat",
            Suite::LemmaXy => "lemma-xy",
            Suite::Image => "image",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    Fp,
    Rational,
}

impl FromStr for FieldChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fp" => Ok(FieldChoice::Fp),
            "rational" => Ok(FieldChoice::Rational),
            _ => Err(Error::Input(format!("unknown field {s:?}, expected fp or rational"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub suites: Vec<Suite>,
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_dim: usize,
    pub field: FieldChoice,
    pub prime: u32,
    pub orientation: Option<QuiverA>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            suites: Suite::ALL.to_vec(),
            trials: 1000,
            seed: 0,
            max_n: 8,
            max_dim: 4,
            field: FieldChoice::Fp,
            prime: crate::linalg::DEFAULT_PRIME,
            orientation: None,
        }
    }
}

impl CheckConfig {
    fn validate(&self) -> Result<()> {
        if self.max_n < 2 {
            return Err(Error::OutOfRange(format!("--max-n must be at least 2, got {}", self.max_n)));
        }
        if self.max_dim < 1 {
            return Err(Error::OutOfRange("--max-dim must be at least 1".into()));
        }
        PrimeField::new(self.prime).map(|_| ())
    }
}

/// One failed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub quiver: String,
    pub dims: Vec<usize>,
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial {} seed {:#018x} quiver {} dims {:?}: {}: {} vs {}",
            self.trial, self.seed, self.quiver, self.dims, self.location, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub failures: Vec<Failure>,
    /// Seconds; reported on stderr only, so stdout stays reproducible.
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub field: String,
    pub max_n: usize,
    pub max_dim: usize,
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    /// Deterministic text summary.
    pub fn render(&self) -> String {
        let mut out = format!("check seed={} field={} max-n={} max-dim={}\n", self.seed, self.field, self.max_n, self.max_dim);
        for s in &self.suites {
            let status = if s.failures.is_empty() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}: {} trials, {} failures\n", s.suite, s.trials, s.failures.len()));
            for f in &s.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out
    }
}

/// Per-trial seed from the run seed, suite and trial index.
pub fn trial_seed(seed: u64, suite: Suite, trial: usize) -> u64 {
    let mut z = seed ^ suite.tag().wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (trial as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_check(cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let field_name = match cfg.field {
        FieldChoice::Fp => PrimeField::new(cfg.prime)?.name(),
        FieldChoice::Rational => Rationals.name(),
    };
    let suites = cfg.suites.iter().map(|&s| run_suite(cfg, s)).collect::<Result<Vec<_>>>()?;
    Ok(CheckReport { seed: cfg.seed, field: field_name, max_n: cfg.max_n, max_dim: cfg.max_dim, suites })
}

pub fn run_suite(cfg: &CheckConfig, suite: Suite) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut failures: Vec<Failure> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(cfg.seed, suite, t);
            match cfg.field {
                FieldChoice::Fp => run_trial(&PrimeField::new(cfg.prime).expect("validated"), cfg, suite, t, seed),
                FieldChoice::Rational => run_trial(&Rationals, cfg, suite, t, seed),
            }
        })
        .flatten()
        .collect();
    failures.sort_by(|a, b| (a.trial, &a.location).cmp(&(b.trial, &b.location)));
    Ok(SuiteReport { suite, trials: cfg.trials, failures, wall_time: start.elapsed().as_secs_f64() })
}

struct Ctx<'a> {
    trial: usize,
    seed: u64,
    quiver: &'a QuiverA,
    dims: &'a DimVector,
}

impl Ctx<'_> {
    fn fail(&self, location: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Failure {
        Failure {
            trial: self.trial,
            seed: self.seed,
            quiver: self.quiver.word(),
            dims: self.dims.as_slice().to_vec(),
            location: location.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    fn error(&self, e: Error) -> Vec<Failure> {
        vec![self.fail("error", e, "ok")]
    }
}

fn run_trial<F: Field>(field: &F, cfg: &CheckConfig, suite: Suite, trial: usize, seed: u64) -> Vec<Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if suite == Suite::LemmaXy {
        return lemma_xy_trial(field, trial, seed, &mut rng);
    }
    let quiver = random_quiver(cfg, &mut rng);
    let dims = random_dims(quiver.n(), cfg.max_dim, &mut rng);
    let ctx = Ctx { trial, seed, quiver: &quiver, dims: &dims };
    let out = match suite {
        Suite::MainTheorem => main_theorem_trial(field, &ctx, &mut rng),
        Suite::ConstantCount => constant_count_trial(field, &ctx, &mut rng),
        Suite::Theorem53 => theorem53_trial(field, &ctx, &mut rng),
        Suite::DegenerationKl => degeneration_trial(field, cfg, &ctx, &mut rng),
        Suite::Equivariance => equivariance_trial(field, &ctx, &mut rng),
        Suite::ZtypeBruhat => ztype_trial(field, &ctx, &mut rng),
        Suite::Image => image_trial(field, &ctx, &mut rng),
        Suite::LemmaXy => unreachable!(),
    };
    out.unwrap_or_else(|e| ctx.error(e))
}

/// Uniform word of uniform length, or the pinned orientation.
pub fn random_quiver<R: Rng + ?Sized>(cfg: &CheckConfig, rng: &mut R) -> QuiverA {
    if let Some(q) = &cfg.orientation {
        return q.clone();
    }
    let n = rng.gen_range(2..=cfg.max_n);
    let arrows = (1..n).map(|_| if rng.gen_bool(0.5) { Orientation::Right } else { Orientation::Left }).collect();
    QuiverA::new(arrows)
}

pub fn random_dims<R: Rng + ?Sized>(n: usize, max_dim: usize, rng: &mut R) -> DimVector {
    DimVector::positive((0..n).map(|_| rng.gen_range(1..=max_dim)).collect()).expect("positive dims")
}

/// A random direct sum of indecomposables whose total dimension vector is
/// at most `max_dim` at every vertex (and nonzero).
pub fn random_multiplicities<R: Rng + ?Sized>(n: usize, max_dim: usize, rng: &mut R) -> Multiplicities {
    let mut m = Multiplicities::new(n);
    let mut room = vec![max_dim; n + 1];
    let summands = rng.gen_range(1..=n * max_dim);
    for _ in 0..summands {
        let p = rng.gen_range(1..=n);
        let q = rng.gen_range(p..=n);
        if (p..=q).all(|x| room[x] > 0) {
            (p..=q).for_each(|x| room[x] -= 1);
            m.set(p, q, m.get(p, q) + 1).expect("valid interval");
        }
    }
    m
}

/// `⊕ m I` moved to a random point of its orbit.
fn scrambled<F: Field, R: Rng + ?Sized>(m: &Multiplicities, q: &QuiverA, field: &F, rng: &mut R) -> Result<Representation<F>> {
    let v = m.realize(q, field)?;
    let g = random_gl(v.dims(), field, rng);
    v.gl_action(&g)
}

fn main_theorem_trial<F: Field, R: Rng>(field: &F, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let v = Representation::random_with(ctx.quiver, ctx.dims, field, rng)?;
    check_theorem_rows(ctx, &v)
}

fn check_theorem_rows<F: Field>(ctx: &Ctx, v: &Representation<F>) -> Result<Vec<Failure>> {
    Ok(crate::zelevinsky::check_main_theorem(v)?
        .into_iter()
        .filter(|row| !row.holds())
        .map(|row| {
            ctx.fail(
                format!("{} at {}", row.interval, row.position),
                row.zeta_rank,
                format!("{} + {}", row.interval_rank, row.v_rank),
            )
        })
        .collect())
}

fn constant_count_trial<F: Field, R: Rng>(field: &F, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let frame = Frame::new(ctx.quiver, ctx.dims)?;
    let vt = frame.v_perm().sw_block_table()?;
    let n = ctx.quiver.n();
    let mut constant: BTreeSet<GridPosition> =
        frame.s1().iter().flat_map(|x| frame.s2().iter().map(move |y| GridPosition { x, y })).collect();
    for _ in 0..5 {
        let v = Representation::random_with(ctx.quiver, ctx.dims, field, rng)?;
        let z = zeta(&v)?.sw_block_ranks();
        let (zr, vr) = (frame.lookup(&z), frame.lookup(&vt));
        constant.retain(|p| zr(p.x, p.y) == vr(p.x, p.y));
    }
    let expected = ctx.quiver.constant_positions()?;
    let mut out = Vec::new();
    if constant.len() != n * (n + 1) / 2 {
        out.push(ctx.fail("constant position count", constant.len(), n * (n + 1) / 2));
    }
    if constant != expected {
        let show = |s: &BTreeSet<GridPosition>| s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        out.push(ctx.fail("constant positions", show(&constant), show(&expected)));
    }
    Ok(out)
}

fn theorem53_trial<F: Field, R: Rng>(field: &F, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let v = if rng.gen_bool(0.5) {
        Representation::random_with(ctx.quiver, ctx.dims, field, rng)?
    } else {
        let m = random_multiplicities(ctx.quiver.n(), ctx.dims.as_slice().iter().copied().max().unwrap_or(1), rng);
        scrambled(&m, ctx.quiver, field, rng)?
    };
    let ctx = Ctx { dims: v.dims(), ..*ctx };
    let mut out = Vec::new();
    let r = v.rank_params();
    let m = v.decompose()?;
    let rebuilt = m.realize(ctx.quiver, field)?.rank_params();
    if rebuilt != r {
        let iv = rebuilt.first_excess(&r).or_else(|| r.first_excess(&rebuilt));
        out.push(ctx.fail(format!("rank params of decomposition at {iv:?}"), "rebuilt", "original"));
    }
    match mults_from_ranks(&r) {
        Ok(f) if f == m => {}
        Ok(f) => out.push(ctx.fail("multiplicity formulas", f, &m)),
        Err(e) => out.push(ctx.fail("multiplicity formulas", e, &m)),
    }
    let w = zelevinsky_perm(&r)?;
    let got = mult_matrix(&w)?;
    let want = expected_theorem53(&m, ctx.quiver, v.dims())?;
    if got != want {
        out.push(ctx.fail("multiplicity matrix", format!("{got:?}"), format!("{want:?}")));
    }
    for iv in ctx.quiver.intervals() {
        let (lhs, rhs) = ranksum_sides(&r, &m, iv)?;
        if lhs != rhs {
            out.push(ctx.fail(format!("rank-sum identity {iv}"), lhs, rhs));
        }
    }
    Ok(out)
}

/// Splits a random subset of summands `I_pq` into `I_pk ⊕ I_{k+1,q}`.
fn split_random<R: Rng + ?Sized>(m: &Multiplicities, rng: &mut R) -> Multiplicities {
    let mut w = Multiplicities::new(m.n());
    for ((p, q), c) in m.iter() {
        for _ in 0..c {
            if p < q && rng.gen_bool(0.5) {
                let k = rng.gen_range(p..q);
                w.set(p, k, w.get(p, k) + 1).expect("valid");
                w.set(k + 1, q, w.get(k + 1, q) + 1).expect("valid");
            } else {
                w.set(p, q, w.get(p, q) + 1).expect("valid");
            }
        }
    }
    w
}

fn kl_both<F: Field>(a: &OppositeCellPoint<F>, w: &crate::zelevinsky::Permutation) -> Result<(bool, bool)> {
    Ok((kl_violation(a, w, KlMode::Rowwise)?.is_none(), kl_violation(a, w, KlMode::Blockwise)?.is_none()))
}

/// `V` contains `S_k ⊕ S_{k+1}`; `W` splits summands of `V`, so `r(W) ≤ r(V)`;
/// `W'` merges the two simples into `I_{k,k+1}`, raising `r_[k,k+1]`.
fn degeneration_trial<F: Field, R: Rng>(field: &F, cfg: &CheckConfig, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let n = ctx.quiver.n();
    let mut mv = random_multiplicities(n, cfg.max_dim.saturating_sub(1).max(1), rng);
    let k = rng.gen_range(1..n);
    mv.set(k, k, mv.get(k, k) + 1)?;
    mv.set(k + 1, k + 1, mv.get(k + 1, k + 1) + 1)?;
    let mw = split_random(&mv, rng);
    let mut mspoil = mv.clone();
    mspoil.set(k, k, mv.get(k, k) - 1)?;
    mspoil.set(k + 1, k + 1, mv.get(k + 1, k + 1) - 1)?;
    mspoil.set(k, k + 1, mv.get(k, k + 1) + 1)?;

    let v = scrambled(&mv, ctx.quiver, field, rng)?;
    let w = scrambled(&mw, ctx.quiver, field, rng)?;
    let spoiled = scrambled(&mspoil, ctx.quiver, field, rng)?;
    let ctx = Ctx { dims: v.dims(), ..*ctx };
    let wq = zelevinsky_perm(&v.rank_params())?;
    let mut out = Vec::new();

    let (row, block) = kl_both(&zeta(&w)?, &wq)?;
    if !(row && block && w.degenerates_to(&v)?) {
        out.push(ctx.fail(format!("degeneration {mw} of {mv}"), format!("rowwise {row} blockwise {block}"), "true"));
    }
    let (row, block) = kl_both(&zeta(&spoiled)?, &wq)?;
    if row || block || spoiled.degenerates_to(&v)? {
        out.push(ctx.fail(format!("non-degeneration {mspoil} of {mv}"), format!("rowwise {row} blockwise {block}"), "false"));
    }
    // Both modes agree on generic points too.
    let g = Representation::random_with(ctx.quiver, v.dims(), field, rng)?;
    let (row, block) = kl_both(&zeta(&g)?, &wq)?;
    if row != block || row != g.degenerates_to(&v)? {
        out.push(ctx.fail("generic point", format!("rowwise {row}"), format!("blockwise {block}")));
    }
    Ok(out)
}

fn equivariance_trial<F: Field, R: Rng>(field: &F, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let v = if rng.gen_bool(0.5) {
        Representation::random_with(ctx.quiver, ctx.dims, field, rng)?
    } else {
        let m = random_multiplicities(ctx.quiver.n(), ctx.dims.as_slice().iter().copied().max().unwrap_or(1), rng);
        m.realize(ctx.quiver, field)?
    };
    let ctx = Ctx { dims: v.dims(), ..*ctx };
    let g = random_gl(v.dims(), field, rng);
    let gv = v.gl_action(&g)?;
    let (a, b) = (zeta(&v)?.sw_block_ranks(), zeta(&gv)?.sw_block_ranks());
    if a != b {
        return Ok(vec![ctx.fail("southwest block ranks", format!("{b:?}"), format!("{a:?}"))]);
    }
    Ok(Vec::new())
}

fn ztype_trial<F: Field, R: Rng>(field: &F, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let m = random_multiplicities(ctx.quiver.n(), ctx.dims.as_slice().iter().copied().max().unwrap_or(1), rng);
    let v = scrambled(&m, ctx.quiver, field, rng)?;
    let ctx = Ctx { dims: v.dims(), ..*ctx };
    let w = zelevinsky_perm(&v.rank_params())?;
    let vq = v_perm(ctx.quiver, v.dims())?;
    let mut out = Vec::new();
    if !w.is_z_type()? {
        out.push(ctx.fail(format!("Z-type of {w}"), false, true));
    }
    if !bruhat_leq(&vq, &w)? {
        out.push(ctx.fail(format!("v_Q <= {w}"), false, true));
    }
    Ok(out)
}

fn lemma_xy_trial<F: Field, R: Rng>(field: &F, trial: usize, seed: u64, rng: &mut R) -> Vec<Failure> {
    let r = rng.gen_range(1..=4);
    let (r1, r2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let x = match rng.gen_range(0..3) {
        0 => Matrix::zeros(field, r1, r),
        _ => Matrix::random(field, r1, r, rng),
    };
    let y = Matrix::random(field, r, r2, rng);
    match stacked_rank_property(&x, &y) {
        Ok(k) if k == r => Vec::new(),
        got => vec![Failure {
            trial,
            seed,
            quiver: String::new(),
            dims: vec![r1, r, r2],
            location: "rank [[Y, I], [XY, X]]".into(),
            lhs: format!("{got:?}"),
            rhs: r.to_string(),
        }],
    }
}

/// Round trip through ζ, and a one-entry perturbation of a free block that
/// is not an arrow block must be rejected.
fn image_trial<F: Field, R: Rng>(field: &F, ctx: &Ctx, rng: &mut R) -> Result<Vec<Failure>> {
    let v = Representation::random_with(ctx.quiver, ctx.dims, field, rng)?;
    let point = zeta(&v)?;
    let mut out = Vec::new();
    match zeta_preimage(&point) {
        Ok(back) if back == v => {}
        Ok(_) => out.push(ctx.fail("round trip", "different representation", "original")),
        Err(e) => out.push(ctx.fail("round trip", e, "accepted")),
    }
    let frame = point.frame().clone();
    let q = ctx.quiver;
    let candidates: Vec<(usize, usize)> = frame
        .s1()
        .iter()
        .flat_map(|x| frame.s2().iter().map(move |y| (x, y)))
        .filter(|&(x, y)| {
            frame.pattern(x, y) == BlockPattern::Free
                && !(y == x + 1 && q.arrow(x) == Orientation::Left)
                && !(x == y + 1 && q.arrow(y) == Orientation::Right)
        })
        .collect();
    if candidates.is_empty() {
        return Ok(out);
    }
    let (x, y) = candidates[rng.gen_range(0..candidates.len())];
    let (r0, nr) = frame.row_axis().span(x)?;
    let (c0, nc) = frame.col_axis().span(y)?;
    let (i, j) = (r0 + rng.gen_range(0..nr), c0 + rng.gen_range(0..nc));
    let mut m = point.matrix().clone();
    m.set(i, j, field.add(m.get(i, j), &field.one()));
    let bad = OppositeCellPoint::from_matrix(frame, m)?;
    if zeta_preimage(&bad).is_ok() {
        out.push(ctx.fail(format!("perturbed x_{{{},{}}} in block ({x},{y})", i + 1, j + 1), "accepted", "rejected"));
    }
    Ok(out)
}
