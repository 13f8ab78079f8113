//! `phase-toda`: compute, verify, enumerate and run suites.
//!
//! Exit status is 0 when every check passes, 1 when an identity fails and
//! 2 on bad input or I/O errors.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phase_toda::algebra::RingMatrix;
use phase_toda::combinatorics::{
    enumerate_path_configs, enumerate_plane_partitions, enumerate_tableaux, partitions_in_box, Order, Partition,
    PathConstraint, SkewShape,
};
use phase_toda::phase::{
    boundary_correlator, build_conj_state, build_state, limit_correspondence, restricted_scalar_product_check,
    scalar_product, single_det_form, spectral, verify_recursion, verify_rtt, Correlator, Evaluation, LimitKind,
    Recursion, ScalarMethod, SingleDet,
};
use phase_toda::suite::{insertion_lists, run_suite, CheckResult, Report, SuiteName};
use phase_toda::symfunc::TimeVector;
use phase_toda::toda::{
    bilinear_check, generic_matrix, matrix_from_csv, random_rationals, verify_linear_problem, verify_prop1,
    wave_entries, Flow, TauContext, WaveKind, WaveSide,
};
use phase_toda::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use table::Table;

#[derive(Parser, Debug)]
#[command(name = "phase-toda", version, about = "Exact checks for the phase model and the finite 2-Toda hierarchy")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute tau-functions, wave entries, states, scalar products, correlators.
    #[command(subcommand)]
    Compute(Compute),
    /// Check one identity family and report pass/fail per instance.
    #[command(subcommand)]
    Verify(Verify),
    /// List partitions, plane partitions, tableaux or lattice paths.
    #[command(subcommand)]
    Enumerate(Enumerate),
    /// Run a battery of checks at the default bounds.
    Suite {
        #[arg(value_parser = parse_suite)]
        name: SuiteName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixSource {
    Identity,
    Delta,
    Random,
    File,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// `n - m`, the size of the matrices.
    #[arg(long)]
    nm: usize,
    /// Lower end `m` of the index range.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    m_start: i64,
    #[arg(long, value_enum, default_value_t = MatrixSource::Random)]
    matrix: MatrixSource,
    /// CSV of integers, row-major, for `--matrix file`.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct Box2 {
    /// Number of particles.
    #[arg(long = "N", short = 'N')]
    n: usize,
    /// Highest site; the chain has sites `0..=M`.
    #[arg(long = "M", short = 'M')]
    m: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    WInf,
    WZero,
    WStarInf,
    WStarZero,
}

impl From<Kind> for WaveKind {
    fn from(k: Kind) -> WaveKind {
        match k {
            Kind::WInf => WaveKind::WInf,
            Kind::WZero => WaveKind::WZero,
            Kind::WStarInf => WaveKind::WStarInf,
            Kind::WStarZero => WaveKind::WStarZero,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Fock,
    Schur,
    Determinant,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CorrelatorKind {
    /// `φ_k` inserted next to the conjugate vector.
    I,
    /// `(φ†_1)^k` inserted next to the vector.
    Ii,
    /// `φ†_{r_1}…φ†_{r_n}` inserted next to the vector.
    NPoint,
}

#[derive(Subcommand, Debug)]
enum Compute {
    /// `τ(s)` of the dressed matrix with symbolic times.
    Tau {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "s_all")]
        s: Option<i64>,
        #[arg(long)]
        s_all: bool,
    },
    /// One wave-matrix entry as a numerator and a `τ` denominator.
    Wave {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: i64,
    },
    /// `⟨Ψ|Ψ⟩` for symbolic `u_j, v_j`.
    Scalar {
        #[command(flatten)]
        size: Box2,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Coefficients of `B(u_1)…B(u_N)|0⟩`, or of the conjugate vector.
    State {
        #[command(flatten)]
        size: Box2,
        #[arg(long)]
        conj: bool,
    },
    /// A boundary correlator and its single determinant form.
    Correlator {
        #[command(flatten)]
        size: Box2,
        #[arg(long, value_enum)]
        kind: CorrelatorKind,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Comma-separated insertion sites for `n-point`.
        #[arg(long, value_delimiter = ',')]
        r: Vec<u32>,
    },
    /// `τ(N)` with `A = δ` under the Miwa substitution.
    RestrictedTau {
        #[command(flatten)]
        size: Box2,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Fock pairing, Schur sum and determinant agree.
    ScalarEquivalence {
        #[command(flatten)]
        size: Box2,
    },
    /// The four derivative identities for the wave entries.
    Prop1 {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Residue form of the bilinear relation at seeded time points.
    Bilinear {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 4)]
        tuples: usize,
    },
    /// Linear problem, Lax factorization, inverses and zero curvature.
    Linear {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 2)]
        j: usize,
    },
    /// The intertwining relation on truncated blocks.
    Rtt {
        #[arg(long = "M", short = 'M')]
        m: usize,
        #[arg(long, default_value_t = 3)]
        cap: u32,
        #[arg(long, default_value_t = 5)]
        pairs: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Restricted `τ` equals the scalar product; both wave-function limits.
    Limits {
        #[command(flatten)]
        size: Box2,
    },
    /// Every single determinant form against its correlator.
    SingleDet {
        #[command(flatten)]
        size: Box2,
    },
    /// The expansions of the insertion correlators in `u_{N-n}`.
    Recursions {
        #[command(flatten)]
        size: Box2,
    },
}

#[derive(Subcommand, Debug)]
enum Enumerate {
    /// Partitions in the `N`×`M` box.
    Partitions {
        #[command(flatten)]
        size: Box2,
    },
    /// Plane partitions in the `N`×`N`×`M` box.
    Pp {
        #[command(flatten)]
        size: Box2,
        /// Keep only arrays whose diagonal is this partition.
        #[arg(long, value_parser = parse_partition)]
        contains: Option<Partition>,
    },
    /// Semistandard tableaux of `shape/inner` with entries `1..=N`.
    Tableaux {
        #[arg(long, value_parser = parse_partition)]
        shape: Partition,
        #[arg(long, value_parser = parse_partition)]
        inner: Option<Partition>,
        #[arg(long = "N", short = 'N')]
        n: u32,
        #[arg(long)]
        descending: bool,
    },
    /// Non-crossing lattice path configurations.
    Paths {
        #[command(flatten)]
        size: Box2,
    },
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Output {
    Table(Table),
    Report(Report),
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64, Error> {
    seed.ok_or_else(|| Error::Config(format!("{what} draws random values; pass --seed")))
}

impl MatrixArgs {
    fn context(&self) -> Result<TauContext, Error> {
        if self.nm == 0 {
            return Err(Error::Config("--nm must be at least 1".into()));
        }
        let a = match self.matrix {
            MatrixSource::Identity | MatrixSource::Delta => RingMatrix::identity(self.nm),
            MatrixSource::Random => generic_matrix(self.nm, need_seed(self.seed, "--matrix random")?),
            MatrixSource::File => {
                let path = self.matrix_file.as_ref().ok_or_else(|| Error::Config("--matrix file needs --matrix-file".into()))?;
                let a = matrix_from_csv(&std::fs::read_to_string(path)?)?;
                if a.rows() != self.nm {
                    return Err(Error::Config(format!("matrix is {}x{}, --nm is {}", a.rows(), a.rows(), self.nm)));
                }
                a
            }
        };
        TauContext::symbolic(self.m_start, self.m_start + self.nm as i64, a)
    }

    fn echo(&self) -> String {
        let mut s = format!("--nm {} --m-start {} --matrix {:?}", self.nm, self.m_start, self.matrix).to_lowercase();
        if let Some(seed) = self.seed {
            s += &format!(" --seed {seed}");
        }
        s
    }
}

fn spectral_pair(n: usize) -> (Vec<phase_toda::algebra::MultiPoly>, Vec<phase_toda::algebra::MultiPoly>) {
    (spectral("u", 1..=n), spectral("v", 1..=n))
}

fn compute(c: &Compute) -> Result<Table, Error> {
    match c {
        Compute::Tau { matrix, s, s_all } => {
            let ctx = matrix.context()?;
            let sites: Vec<i64> = match (s, s_all) {
                (Some(s), _) => vec![*s],
                (None, _) => (ctx.m()..=ctx.n()).collect(),
            };
            let mut t = Table::new(format!("compute tau {}", matrix.echo()), &["s", "tau"]);
            for s in sites {
                t.push(vec![s.to_string(), ctx.tau(s)?.to_string()]);
            }
            Ok(t)
        }
        Compute::Wave { matrix, s, kind, k } => {
            let ctx = matrix.context()?;
            let e = wave_entries(&ctx, *s, (*kind).into(), *k)?;
            let mut t = Table::new(format!("compute wave {} --s {s} --k {k}", matrix.echo()), &["kind", "s", "k", "numerator", "denominator"]);
            t.push(vec![format!("{kind:?}"), s.to_string(), k.to_string(), e.numerator.to_string(), e.denominator.to_string()]);
            Ok(t)
        }
        Compute::Scalar { size, method } => {
            let (u, v) = spectral_pair(size.n);
            let methods: Vec<ScalarMethod> = match method {
                Method::Fock => vec![ScalarMethod::FockPairing],
                Method::Schur => vec![ScalarMethod::SchurSum],
                Method::Determinant => vec![ScalarMethod::Determinant],
                Method::All => ScalarMethod::ALL.to_vec(),
            };
            let mut t = Table::new(format!("compute scalar --N {} --M {}", size.n, size.m), &["method", "value"]);
            for meth in methods {
                t.push(vec![format!("{meth:?}"), scalar_product(size.m, &u, &v, meth)?.to_string()]);
            }
            Ok(t)
        }
        Compute::State { size, conj } => {
            let (u, v) = spectral_pair(size.n);
            let state = if *conj { build_conj_state(&v, size.m as usize)? } else { build_state(&u, size.m as usize)? };
            let mut t = Table::new(format!("compute state --N {} --M {}{}", size.n, size.m, if *conj { " --conj" } else { "" }), &["occupation", "partition", "coefficient"]);
            for (st, c) in state.terms() {
                t.push(vec![st.to_string(), st.partition().to_string(), c.to_string()]);
            }
            Ok(t)
        }
        Compute::Correlator { size, kind, k, r } => {
            let (u, v) = spectral_pair(size.n);
            let (corr, det) = match kind {
                CorrelatorKind::I => (Correlator::KindI(*k), Some(SingleDet::Wave0(*k))),
                CorrelatorKind::Ii => (Correlator::KindII(*k as usize), (*k > 0).then(|| SingleDet::NPoint(vec![1; *k as usize]))),
                CorrelatorKind::NPoint => (Correlator::NPoint(r.clone()), Some(SingleDet::NPoint(r.clone()))),
            };
            let value = boundary_correlator(&corr, size.m, &u, &v)?;
            let det = match det {
                Some(d) => single_det_form(&d, size.m, &u, &v)?.to_string(),
                None => scalar_product(size.m, &u, &v, ScalarMethod::Determinant)?.to_string(),
            };
            let mut t = Table::new(format!("compute correlator --N {} --M {} {corr:?}", size.n, size.m), &["correlator", "value", "single_det"]);
            t.push(vec![format!("{corr:?}"), value.to_string(), det]);
            Ok(t)
        }
        Compute::RestrictedTau { size } => {
            use phase_toda::symfunc::{AlphabetSpec, Convention};
            let ua = AlphabetSpec::indexed("u", 1..=size.n, Convention::Squared);
            let va = AlphabetSpec::indexed("v", 1..=size.n, Convention::InverseSquared);
            let tau = phase_toda::toda::restrict_tau(&ua, &va, size.m)?;
            let mut t = Table::new(format!("compute restricted-tau --N {} --M {}", size.n, size.m), &["N", "M", "tau"]);
            t.push(vec![size.n.to_string(), size.m.to_string(), tau.to_string()]);
            Ok(t)
        }
    }
}

fn rational_point(rng: &mut ChaCha8Rng) -> phase_toda::algebra::MultiPoly {
    let num: i64 = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    phase_toda::algebra::Rational::new(num, rng.random_range(1..=4)).expect("nonzero denominator").into()
}

fn verify(v: &Verify) -> Result<(String, u64, Vec<CheckResult>), Error> {
    let mut items = Vec::new();
    let mut push = |suite, name: &str, params: String, outcome| items.push(CheckResult::new(suite, name, params, outcome));
    let (echo, seed) = match v {
        Verify::ScalarEquivalence { size } => {
            let (u, v) = spectral_pair(size.n);
            let vals = ScalarMethod::ALL.iter().map(|&m| scalar_product(size.m, &u, &v, m)).collect::<Result<Vec<_>, _>>();
            let ok = vals.map(|vs| vs.windows(2).all(|w| w[0] == w[1]));
            push(SuiteName::Phase, "scalar_three_way", format!("N={} M={}", size.n, size.m), ok);
            (format!("verify scalar-equivalence --N {} --M {}", size.n, size.m), 0)
        }
        Verify::Prop1 { matrix } => {
            let ctx = matrix.context()?;
            for s in ctx.m()..ctx.n() {
                for kind in WaveKind::ALL {
                    for k in 0..=kind.max_k(&ctx, s) {
                        push(SuiteName::Toda, "prop1", format!("s={s} {kind:?} k={k}"), verify_prop1(&ctx, s, k, kind));
                    }
                }
            }
            (format!("verify prop1 {}", matrix.echo()), matrix.seed.unwrap_or(0))
        }
        Verify::Bilinear { matrix, tuples } => {
            let seed = need_seed(matrix.seed, "verify bilinear")?;
            let ctx = matrix.context()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let len = matrix.nm.saturating_sub(1);
            for t in 0..*tuples {
                let mut times = || TimeVector::from_rationals(&random_rationals(&mut rng, len));
                let (x, x2, y, y2) = (times(), times(), times(), times());
                for s in ctx.m()..ctx.n() {
                    for s2 in ctx.m() + 1..=ctx.n() {
                        push(SuiteName::Toda, "bilinear", format!("tuple={t} s={s} s'={s2}"), bilinear_check(&ctx, s, s2, &x, &x2, &y, &y2));
                    }
                }
            }
            (format!("verify bilinear {} --tuples {tuples}", matrix.echo()), seed)
        }
        Verify::Linear { matrix, j } => {
            let ctx = matrix.context()?;
            for jj in 1..=*j {
                for flow in [Flow::X, Flow::Y] {
                    for side in [WaveSide::Inf, WaveSide::Zero] {
                        push(SuiteName::Toda, "linear_problem", format!("j={jj} {flow:?} {side:?}"), verify_linear_problem(&ctx, jj, flow, side));
                    }
                }
            }
            (format!("verify linear {} --j {j}", matrix.echo()), matrix.seed.unwrap_or(0))
        }
        Verify::Rtt { m, cap, pairs, seed } => {
            let seed = need_seed(*seed, "verify rtt")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut done = 0;
            while done < *pairs {
                let (u, v) = (rational_point(&mut rng), rational_point(&mut rng));
                if &u * &u == &v * &v {
                    continue;
                }
                push(SuiteName::Phase, "rtt", format!("pair={done} u={u} v={v}"), verify_rtt(&u, &v, *m, *cap));
                done += 1;
            }
            (format!("verify rtt --M {m} --cap {cap} --pairs {pairs} --seed {seed}"), seed)
        }
        Verify::Limits { size } => {
            let (n, m) = (size.n, size.m);
            push(SuiteName::Correspondence, "restricted_tau", format!("N={n} M={m}"), restricted_scalar_product_check(n, m));
            for k in 0..=m {
                push(SuiteName::Correspondence, "limit_v1", format!("k={k}"), limit_correspondence(LimitKind::V1ToInfinity(k), n, m));
            }
            for k in 0..=n {
                push(SuiteName::Correspondence, "limit_u_tail", format!("k={k}"), limit_correspondence(LimitKind::UTailToZero(k), n, m));
            }
            (format!("verify limits --N {n} --M {m}"), 0)
        }
        Verify::SingleDet { size } => {
            let (u, v) = spectral_pair(size.n);
            let eq = |a: Result<_, Error>, b: Result<_, Error>| -> Result<bool, Error> { Ok(a? == b?) };
            for q in 0..=size.m {
                push(
                    SuiteName::Correspondence,
                    "single_det_row",
                    format!("q={q}"),
                    eq(single_det_form(&SingleDet::Wave0(q), size.m, &u, &v), boundary_correlator(&Correlator::KindI(q), size.m, &u, &v)),
                );
            }
            for r in insertion_lists(size.n, size.m) {
                push(
                    SuiteName::Correspondence,
                    "single_det_insertions",
                    format!("r={r:?}"),
                    eq(single_det_form(&SingleDet::NPoint(r.clone()), size.m, &u, &v), boundary_correlator(&Correlator::NPoint(r.clone()), size.m, &u, &v)),
                );
            }
            (format!("verify single-det --N {} --M {}", size.n, size.m), 0)
        }
        Verify::Recursions { size } => {
            let (u, v) = spectral_pair(size.n);
            for how in [Evaluation::Fock, Evaluation::Determinant] {
                for n in 1..size.n {
                    for q in 0..n {
                        let rec = Recursion::Mixed { n, q };
                        push(SuiteName::Correspondence, "recursion", format!("{rec:?} {how:?}"), verify_recursion(rec, size.m, &u, &v, how));
                    }
                }
                for n in 0..size.n {
                    let rec = Recursion::Zeros { n };
                    push(SuiteName::Correspondence, "recursion", format!("{rec:?} {how:?}"), verify_recursion(rec, size.m, &u, &v, how));
                }
            }
            (format!("verify recursions --N {} --M {}", size.n, size.m), 0)
        }
    };
    Ok((echo, seed, items))
}

fn enumerate(e: &Enumerate) -> Result<Table, Error> {
    match e {
        Enumerate::Partitions { size } => {
            let mut t = Table::new(format!("enumerate partitions --N {} --M {}", size.n, size.m), &["partition"]);
            for p in partitions_in_box(size.n, size.m) {
                t.push(vec![p.to_string()]);
            }
            Ok(t)
        }
        Enumerate::Pp { size, contains } => {
            let echo = match contains {
                Some(l) => format!("enumerate pp --N {} --M {} --contains {l}", size.n, size.m),
                None => format!("enumerate pp --N {} --M {}", size.n, size.m),
            };
            let mut t = Table::new(echo, &["array", "diagonal"]);
            for pp in enumerate_plane_partitions(size.n, size.m) {
                if contains.as_ref().is_some_and(|l| &pp.diagonal() != l) {
                    continue;
                }
                let rows: Vec<String> = pp.rows().iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect();
                t.push(vec![rows.join(" / "), pp.diagonal().to_string()]);
            }
            Ok(t)
        }
        Enumerate::Tableaux { shape, inner, n, descending } => {
            let skew = SkewShape::new(shape.clone(), inner.clone().unwrap_or_default())?;
            let order = if *descending { Order::Descending } else { Order::Ascending };
            let mut t = Table::new(format!("enumerate tableaux --shape {skew} --N {n} --order {order:?}"), &["tableau", "weight"]);
            for tab in enumerate_tableaux(&skew, *n, order) {
                let weight: Vec<String> = tab.weight(*n).iter().map(u32::to_string).collect();
                t.push(vec![tab.to_string().trim_end().replace('\n', " / "), weight.join(" ")]);
            }
            Ok(t)
        }
        Enumerate::Paths { size } => {
            let mut t = Table::new(format!("enumerate paths --N {} --M {}", size.n, size.m), &["turning_rows", "middle", "exponents"]);
            for c in enumerate_path_configs(size.n, size.m, &PathConstraint::None) {
                let rows: Vec<String> = c.turning_rows().iter().map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect();
                let exps: Vec<String> = c.column_exponents().iter().map(i32::to_string).collect();
                t.push(vec![rows.join(" / "), c.middle().to_string(), exps.join(" ")]);
            }
            Ok(t)
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Output, Error> {
    Ok(match cmd {
        Command::Compute(c) => Output::Table(compute(c)?),
        Command::Enumerate(e) => Output::Table(enumerate(e)?),
        Command::Verify(v) => {
            let start = Instant::now();
            let (echo, seed, items) = verify(v)?;
            Output::Report(Report::from_items(echo, seed, items, start.elapsed()))
        }
        Command::Suite { name, seed } => Output::Report(run_suite(*name, *seed)),
    })
}

fn run(cli: &Cli) -> Result<bool, Error> {
    let out = dispatch(&cli.command)?;
    let (text, ok) = match &out {
        Output::Table(t) => (
            match cli.format {
                Format::Json => t.to_json(),
                Format::Csv => t.to_csv(),
            },
            true,
        ),
        Output::Report(r) => {
            eprintln!("wall time: {:.3}s", r.wall_time.as_secs_f64());
            eprintln!("passed {} failed {} skipped {}", r.passed, r.failed, r.skipped);
            (
                match cli.format {
                    Format::Json => r.to_json(),
                    Format::Csv => r.to_csv(),
                },
                r.all_passed(),
            )
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, with_newline(text))?,
        None => print!("{}", with_newline(text)),
    }
    Ok(ok)
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
