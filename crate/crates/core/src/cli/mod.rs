//! Command-line interface. Exit codes: 0 success, 1 mathematical failure,
//! 2 usage or input error.

mod instance;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use instance::{FieldName, Instance, InstanceFile, MatrixData, PointInstance};

use crate::check::{run_check, CheckConfig, FieldChoice, Suite};
use crate::error::Error;
use crate::linalg::{Field, DEFAULT_PRIME};
use crate::multiplicity::mult_matrix;
use crate::quiver::QuiverA;
use crate::representation::Representation;
use crate::zelevinsky::{
    bruhat_witness, target_rank_table, v_perm, zeta, zeta_preimage, zelevinsky_perm, BlockPattern, OppositeCellPoint, Permutation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zelevinsky", version, about = "Zelevinsky maps for type A quivers of any orientation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank parameters r_[a,b] as a TSV table (rows b, columns a).
    RankTable(InstanceArg),
    /// The matrix ζ(V) with block labels, followed by the opposite-cell pattern.
    Zelevinsky(InstanceArg),
    /// v_Q, w_Q(r), the block one-counts and the southwest rank table.
    Perm {
        #[command(flatten)]
        instance: InstanceArg,
        /// Show image positions of the rank table as "r + v".
        #[arg(long)]
        show_vq_split: bool,
    },
    /// Multiplicities of the indecomposables I_pq.
    Decompose(InstanceArg),
    /// The multiplicity matrix of w_Q(r).
    MultMatrix(InstanceArg),
    /// Whether U ≤ W in Bruhat order; one-line notations such as 2,1,3.
    Bruhat { u: String, w: String },
    /// Whether the first instance lies in the orbit closure of the second.
    Degenerates { instance: PathBuf, other: PathBuf },
    /// Whether a point (or ζ of a representation) lies in the image of ζ.
    ImageCheck {
        #[command(flatten)]
        instance: InstanceArg,
        /// Set entry ROW,COL (1-based) to VALUE, or add 1 when VALUE is omitted.
        #[arg(long, value_name = "ROW,COL[,VALUE]")]
        perturb: Vec<String>,
    },
    /// Run the randomized verification suites.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct InstanceArg {
    /// Instance file (JSON).
    pub instance: PathBuf,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Suites to run; all when omitted.
    #[arg(long = "suite", value_name = "NAME")]
    pub suites: Vec<Suite>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_dim: usize,
    /// fp or rational.
    #[arg(long, default_value = "fp")]
    pub field: FieldChoice,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    pub prime: u32,
    /// Pin the orientation word, e.g. RRLLRL.
    #[arg(long)]
    pub orientation: Option<QuiverA>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the machine-readable report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inconsistent(_) | Error::NotRealizable(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            }
        }
    }
}

macro_rules! with_rep {
    ($inst:expr, |$v:ident| $body:expr) => {
        match $inst {
            Instance::Fp($v) => $body,
            Instance::Rational($v) => $body,
        }
    };
}

fn load(path: &Path) -> crate::Result<Instance> {
    InstanceFile::read(path)?.instance()
}

fn emit(out: &mut dyn Write, text: &str) -> crate::Result<i32> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Input(format!("writing output: {e}")))?;
    Ok(EXIT_OK)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    match cmd {
        Command::RankTable(a) => emit(out, &with_rep!(load(&a.instance)?, |v| rank_table(&v))),
        Command::Zelevinsky(a) => emit(out, &with_rep!(load(&a.instance)?, |v| zeta_text(&v)?)),
        Command::Perm { instance, show_vq_split } => {
            emit(out, &with_rep!(load(&instance.instance)?, |v| perm_text(&v, show_vq_split)?))
        }
        Command::Decompose(a) => emit(out, &with_rep!(load(&a.instance)?, |v| decompose_text(&v)?)),
        Command::MultMatrix(a) => emit(
            out,
            &with_rep!(load(&a.instance)?, |v| mult_matrix(&zelevinsky_perm(&v.rank_params())?)?.to_string()),
        ),
        Command::Bruhat { u, w } => {
            let (u, w) = (parse_perm(&u)?, parse_perm(&w)?);
            let text = match bruhat_witness(&u, &w)? {
                None => "true\n".to_string(),
                Some(x) => format!("false\twindow {}: rank {} > {}\n", x.window, x.lhs, x.rhs),
            };
            emit(out, &text)
        }
        Command::Degenerates { instance, other } => {
            let text = match (load(&instance)?, load(&other)?) {
                (Instance::Fp(a), Instance::Fp(b)) => degenerates_text(&a, &b)?,
                (Instance::Rational(a), Instance::Rational(b)) => degenerates_text(&a, &b)?,
                _ => return Err(Error::Input("instances are over different fields".into())),
            };
            emit(out, &text)
        }
        Command::ImageCheck { instance, perturb } => {
            let file = InstanceFile::read(&instance.instance)?;
            let perturb = perturb.iter().map(|p| parse_perturbation(p)).collect::<crate::Result<Vec<_>>>()?;
            let text = match file.point_instance()? {
                PointInstance::Fp(p) => image_text(p, &perturb)?,
                PointInstance::Rational(p) => image_text(p, &perturb)?,
            };
            emit(out, &text)
        }
        Command::Check(args) => check(args, out, err),
    }
}

fn parse_perm(s: &str) -> crate::Result<Permutation> {
    let digits = s.trim().trim_start_matches('(').trim_end_matches(')');
    let one_line = digits
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?} in {s:?}"))))
        .collect::<crate::Result<Vec<_>>>()?;
    Permutation::new(one_line)
}

fn parse_perturbation(s: &str) -> crate::Result<(usize, usize, Option<i64>)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Input(format!("--perturb expects ROW,COL[,VALUE], got {s:?}"));
    let idx = |t: &str| t.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(bad);
    match parts.as_slice() {
        [r, c] => Ok((idx(r)?, idx(c)?, None)),
        [r, c, v] => Ok((idx(r)?, idx(c)?, Some(v.parse().map_err(|_| bad())?))),
        _ => Err(bad()),
    }
}

pub fn rank_table<F: Field>(v: &Representation<F>) -> String {
    let r = v.rank_params();
    let n = v.quiver().n();
    let mut s = String::from("b\\a");
    for a in 1..n {
        s.push_str(&format!("\t{a}"));
    }
    s.push('\n');
    for b in 2..=n {
        s.push_str(&b.to_string());
        for a in 1..b {
            s.push_str(&format!("\t{}", r.ext(a, b)));
        }
        s.push('\n');
    }
    s
}

fn zeta_text<F: Field>(v: &Representation<F>) -> crate::Result<String> {
    let point = zeta(v)?;
    let frame = point.frame();
    let (rows, cols) = (frame.row_axis(), frame.col_axis());
    let m = point.matrix();
    let col_labels: Vec<String> = (0..m.cols()).map(|j| cols.labels()[cols.block_of(j)].to_string()).collect();
    let header = format!("\t{}\n", col_labels.join("\t"));
    let mut s = format!("# zeta(V): block rows S1 = {}, block columns S2 = {}\n", frame.s1(), frame.s2());
    s.push_str(&header);
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        s.push_str(&format!("{}\t{}\n", rows.labels()[rows.block_of(i)], row.join("\t")));
    }
    s.push_str("# pattern: 1 identity, 0 forced zero, * free\n");
    s.push_str(&header);
    for i in 0..m.rows() {
        let x = rows.labels()[rows.block_of(i)];
        let row: Vec<&str> = (0..m.cols())
            .map(|j| {
                let y = cols.labels()[cols.block_of(j)];
                match frame.pattern(x, y) {
                    BlockPattern::Free => "*",
                    BlockPattern::Zero => "0",
                    BlockPattern::Identity => {
                        let di = i - rows.span(x).expect("row label").0;
                        let dj = j - cols.span(y).expect("column label").0;
                        if di == dj { "1" } else { "0" }
                    }
                }
            })
            .collect();
        s.push_str(&format!("{x}\t{}\n", row.join("\t")));
    }
    Ok(s)
}

fn perm_text<F: Field>(v: &Representation<F>, split: bool) -> crate::Result<String> {
    let r = v.rank_params();
    let vq = v_perm(v.quiver(), v.dims())?;
    let w = zelevinsky_perm(&r)?;
    let mut s = format!("v_Q = {vq}\nw_Q(r) = {w}\n# block one-counts of w_Q(r)\n");
    s.push_str(&mult_matrix(&w)?.to_string());
    s.push_str("# southwest block ranks of w_Q(r)\n");
    s.push_str(&target_rank_table(&r)?.render(split));
    Ok(s)
}

fn decompose_text<F: Field>(v: &Representation<F>) -> crate::Result<String> {
    let m = v.decompose()?;
    let mut s = format!("{m}\np\tq\tm\n");
    for ((p, q), c) in m.iter() {
        s.push_str(&format!("{p}\t{q}\t{c}\n"));
    }
    Ok(s)
}

fn degenerates_text<F: Field>(a: &Representation<F>, b: &Representation<F>) -> crate::Result<String> {
    Ok(match a.degeneration_witness(b)? {
        None => "true\n".into(),
        Some(iv) => format!("false\tr_{iv}: {} > {}\n", a.rank_params().get(iv), b.rank_params().get(iv)),
    })
}

fn image_text<F: Field>(point: OppositeCellPoint<F>, perturb: &[(usize, usize, Option<i64>)]) -> crate::Result<String> {
    let frame = point.frame().clone();
    let mut m = point.into_matrix();
    let f = m.field().clone();
    for &(i, j, val) in perturb {
        if i > m.rows() || j > m.cols() {
            return Err(Error::OutOfRange(format!("entry ({i},{j}) outside a {}x{} point", m.rows(), m.cols())));
        }
        let new = match val {
            Some(x) => f.from_i64(x),
            None => f.add(m.get(i - 1, j - 1), &f.one()),
        };
        m.set(i - 1, j - 1, new);
    }
    let point = OppositeCellPoint::from_matrix(frame, m)?;
    Ok(match zeta_preimage(&point) {
        Ok(v) => {
            let mut s = String::from("accept\n");
            for (e, map) in v.maps().iter().enumerate() {
                s.push_str(&format!("{}\n{map}", v.quiver().arrow_label(e + 1)));
            }
            s
        }
        Err(r) => format!("reject\t{r}\n"),
    })
}

fn check(args: CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let cfg = CheckConfig {
        suites: if args.suites.is_empty() { Suite::ALL.to_vec() } else { args.suites },
        trials: args.trials,
        seed: args.seed,
        max_n: args.max_n,
        max_dim: args.max_dim,
        field: args.field,
        prime: args.prime,
        orientation: args.orientation,
    };
    let report = match args.jobs {
        Some(0) => return Err(Error::OutOfRange("--jobs must be positive".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?
            .install(|| run_check(&cfg))?,
        None => run_check(&cfg)?,
    };
    for s in &report.suites {
        let _ = writeln!(err, "{}: {:.2}s", s.suite, s.wall_time);
    }
    if let Some(path) = args.report {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(&path, json + "\n").map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    emit(out, &report.render())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}
