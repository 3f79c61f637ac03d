//! `voak` — command-line surface over the exact VOA / K-theory library.
//!
//! Subcommands: `dim`, `mode`, `lop`, `axioms`, `zhu`, `bundle`, `kgroup`.
//! Input payloads are JSON files (positional argument); all output is JSON
//! on stdout (or aligned text with `--format table`). Rationals are printed
//! as exact `p/q` strings, never decimals.
//!
//! Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or
//! input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use voak_core::axioms;
use voak_core::bundle::{self, BundleCocycle, FiberForm, GrassmannianShape, KClass};
use voak_core::element::GradedElement;
use voak_core::linalg::Matrix;
use voak_core::module::VModule;
use voak_core::monomial::Monomial;
use voak_core::rational::{format_rational, parse_rational, rat_int};
use voak_core::voa::{CommAssocData, Corruption, Voa};
use voak_core::zhu::{self, ZhuQuotient};
use voak_core::VoakError;

#[derive(Parser)]
#[command(
    name = "voak",
    version,
    about = "Exact vertex-operator-algebra and K-theory computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    session: Session,
}

#[derive(Args, Clone)]
struct Session {
    /// Heisenberg rank of the working instance.
    #[arg(long, global = true, default_value_t = 1)]
    rank: u32,
    /// Weight cutoff for quotient and lowest-weight computations.
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// Symmetric box radius for mode indices (and the Jacobi cube).
    #[arg(long = "box", global = true)]
    box_radius: Option<u32>,
    /// Seed for sampled spot checks; fixed seed gives byte-identical output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Swap in a commutative-associative instance of this dimension
    /// (unit is index 1, off-unit products vanish).
    #[arg(long, global = true)]
    comm_dim: Option<u32>,
    /// Commutative-associative instance from a structure-constant tensor
    /// file {"dimension", "unit", "constants"}.
    #[arg(long, global = true, conflicts_with = "comm_dim")]
    comm_data: Option<PathBuf>,
    /// Corrupt the mode rule (negative-control fixture).
    #[arg(long, global = true, value_enum)]
    corrupt: Option<CorruptFlag>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorruptFlag {
    ShiftModes,
    QuadraticBracket,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimension table of the working instance.
    Dim {
        /// Largest weight to report.
        #[arg(long, default_value_t = 10)]
        max_weight: u32,
    },
    /// Mode coefficient u_n v; input {"u": ..., "n": ..., "v": ...}.
    Mode { input: PathBuf },
    /// Virasoro operator L(n) v; input {"n": ..., "v": ...}.
    Lop { input: PathBuf },
    /// Run axiom checks; exit 0 iff all pass.
    Axioms {
        /// Comma-separated subset of
        /// vacuum,creation,translation,locality,jacobi,virasoro,grading.
        #[arg(long, default_value = "all")]
        which: String,
    },
    /// Zhu-quotient computations.
    Zhu {
        #[command(subcommand)]
        sub: ZhuCmd,
    },
    /// Bundle-cocycle computations.
    Bundle {
        #[command(subcommand)]
        sub: BundleCmd,
    },
    /// Grothendieck-group arithmetic at a point.
    Kgroup {
        #[command(subcommand)]
        sub: KgroupCmd,
    },
}

#[derive(Subcommand)]
enum ZhuCmd {
    /// Ambient, relation and coset-basis data at the cutoff.
    Basis,
    /// Product of two representatives; input {"a": ..., "b": ...}.
    Product { input: PathBuf },
    /// Full product table over the coset basis (null = outside the window).
    Table,
    /// The anti-involution representative; input {"a": ...}.
    Phi { input: PathBuf },
    /// Lowest-weight space dimensions of the adjoint module.
    OmegaSpace,
    /// Top-level action matrices; input {"a": ...}.
    OMatrix { input: PathBuf },
}

#[derive(Subcommand)]
enum BundleCmd {
    /// Verify the cocycle laws; exit 0 iff they hold.
    Check { input: PathBuf },
    /// Direct sum; input {"e": ..., "f": ...}.
    Sum { input: PathBuf },
    /// Dual cocycle (inverse-transpose blocks).
    Dual { input: PathBuf },
    /// Top-level functor.
    Omega { input: PathBuf },
    /// Split into multiplicity cocycles.
    Split { input: PathBuf },
    /// Trivial complement over a discrete base;
    /// input {"bundle": ..., "form": {...}?}.
    Complement { input: PathBuf },
    /// Inverse-clutching homotopy frame;
    /// input {"blocks": [...], "s": "p/q"}.
    Homotopy { input: PathBuf },
}

#[derive(Subcommand)]
enum KgroupCmd {
    /// Sum of two classes; input {"labels": [...], "a": [...], "b": [...]}.
    Add { input: PathBuf },
    /// Class equality; same input as add.
    Eq { input: PathBuf },
    /// Grassmannian shape; input {"ambient": [...], "sub": [...]}.
    Grassmannian { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Input(String),
    Lib(VoakError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<VoakError> for CliError {
    fn from(e: VoakError) -> CliError {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> CliResult<T> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::Input(e.to_string()))
}

fn make_instance(s: &Session) -> CliResult<Voa> {
    let mut voa = match (&s.comm_data, s.comm_dim) {
        (Some(path), _) => {
            let data: CommAssocData = read_json(path)?;
            Voa::comm_assoc(data)?
        }
        (None, Some(d)) => {
            if d == 0 {
                return Err(CliError::Input("comm-dim must be positive".into()));
            }
            // unit = e_1; all off-unit products vanish
            let dd = d as usize;
            let mut constants = vec![vec![vec![rat_int(0); dd]; dd]; dd];
            for (i, plane) in constants.iter_mut().enumerate() {
                plane[0][i] = rat_int(1);
            }
            for i in 0..dd {
                let unit_row = &mut constants[0][i];
                unit_row[i] = rat_int(1);
            }
            Voa::comm_assoc(CommAssocData {
                dimension: d,
                unit: 1,
                constants,
            })?
        }
        (None, None) => Voa::heisenberg(s.rank),
    };
    if let Some(c) = s.corrupt {
        voa = voa.corrupted(match c {
            CorruptFlag::ShiftModes => Corruption::ShiftModes,
            CorruptFlag::QuadraticBracket => Corruption::QuadraticBracket,
        });
    }
    Ok(voa)
}

/// splitmix64; drives the sampled spot checks deterministically.
struct Sampler(u64);

impl Sampler {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn pick(&mut self, n: usize) -> usize {
        (self.next() % n.max(1) as u64) as usize
    }
}

fn emit(session: &Session, value: &serde_json::Value) {
    let text = match session.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).unwrap();
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            render_table(&mut s, value, 0);
            s
        }
    };
    // tolerate closed pipes (e.g. `voak ... | head`)
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn render_table(out: &mut String, v: &serde_json::Value, indent: usize) {
    use std::fmt::Write;
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_table(out, val, indent + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {val}");
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        let _ = writeln!(out, "{pad}-");
                        render_table(out, item, indent + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}- {item}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{other}");
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let session = cli.session.clone();
    match cli.command {
        Command::Dim { max_weight } => cmd_dim(&session, max_weight),
        Command::Mode { input } => cmd_mode(&session, &input),
        Command::Lop { input } => cmd_lop(&session, &input),
        Command::Axioms { which } => cmd_axioms(&session, &which),
        Command::Zhu { sub } => cmd_zhu(&session, sub),
        Command::Bundle { sub } => cmd_bundle(&session, sub),
        Command::Kgroup { sub } => cmd_kgroup(&session, sub),
    }
}

fn cmd_dim(session: &Session, max_weight: u32) -> CliResult<bool> {
    let voa = make_instance(session)?;
    let dims: Vec<usize> = (0..=max_weight).map(|w| voa.dim(w)).collect();
    emit(
        session,
        &json!({
            "instance": voa.descriptor(),
            "header": voa.header(),
            "weights": (0..=max_weight).collect::<Vec<_>>(),
            "dims": dims,
        }),
    );
    Ok(true)
}

#[derive(Deserialize)]
struct ModeInput {
    u: GradedElement,
    n: i64,
    v: GradedElement,
}

fn cmd_mode(session: &Session, input: &PathBuf) -> CliResult<bool> {
    let voa = make_instance(session)?;
    let payload: ModeInput = read_json(input)?;
    let out = voa.vertex_mode(&payload.u, payload.n, &payload.v)?;
    emit(session, &serde_json::to_value(&out).unwrap());
    Ok(true)
}

#[derive(Deserialize)]
struct LopInput {
    n: i64,
    v: GradedElement,
}

fn cmd_lop(session: &Session, input: &PathBuf) -> CliResult<bool> {
    let voa = make_instance(session)?;
    let payload: LopInput = read_json(input)?;
    let out = voa.l_op(payload.n, &payload.v)?;
    emit(session, &serde_json::to_value(&out).unwrap());
    Ok(true)
}

fn cmd_axioms(session: &Session, which: &str) -> CliResult<bool> {
    let voa = make_instance(session)?;
    let wmax = session.cutoff.unwrap_or(4);
    let radius = session.box_radius.unwrap_or(4) as i64;
    let jacobi_radius = session.box_radius.unwrap_or(3).min(3) as i64;
    let selected: Vec<&str> = if which == "all" {
        vec![
            "vacuum",
            "creation",
            "translation",
            "locality",
            "jacobi",
            "virasoro",
            "grading",
        ]
    } else {
        which.split(',').map(str::trim).collect()
    };
    let alpha_like = || -> GradedElement {
        match voa.kind_name() {
            "heisenberg" => GradedElement::from_monomial(Monomial::single(1, 1)),
            _ => GradedElement::one(),
        }
    };
    let mut reports = Vec::new();
    for name in selected {
        match name {
            "vacuum" => reports.push(axioms::check_vacuum(&voa, wmax)?),
            "creation" => reports.push(axioms::check_creation(&voa, wmax)?),
            "translation" => {
                reports.push(axioms::check_translation(&voa, wmax, (-radius, radius))?)
            }
            "grading" => reports.push(axioms::check_grading(&voa, wmax, (-radius, radius))?),
            "virasoro" => reports.push(axioms::check_virasoro(
                &voa,
                (-radius.min(3), radius.min(3)),
                wmax,
            )?),
            "locality" => {
                let u = alpha_like();
                let (_, rep) = axioms::check_locality(&voa, &u, &u, wmax.min(3), 4)?;
                reports.push(rep);
                if !voa.omega().is_zero() {
                    let om = voa.omega().clone();
                    let (_, rep) = axioms::check_locality(&voa, &om, &om, wmax.min(3), 5)?;
                    reports.push(rep);
                }
                let one = GradedElement::one();
                let (_, rep) = axioms::check_locality(&voa, &one, &alpha_like(), wmax.min(3), 3)?;
                reports.push(rep);
            }
            "jacobi" => {
                let u = alpha_like();
                let box3 = axioms::cube_box(jacobi_radius);
                reports.push(axioms::check_jacobi(
                    &voa,
                    &u,
                    &u,
                    &GradedElement::one(),
                    &box3,
                )?);
                if !voa.omega().is_zero() {
                    let om = voa.omega().clone();
                    reports.push(axioms::check_jacobi(&voa, &om, &u, &u, &box3)?);
                }
            }
            other => {
                return Err(CliError::Input(format!("unknown axiom {other}")));
            }
        }
    }
    let all_pass = reports.iter().all(|r| r.pass);
    emit(
        session,
        &json!({
            "instance": voa.descriptor(),
            "all_pass": all_pass,
            "reports": reports,
        }),
    );
    Ok(all_pass)
}

#[derive(Deserialize)]
struct PairInput {
    a: GradedElement,
    b: GradedElement,
}

#[derive(Deserialize)]
struct SingleInput {
    a: GradedElement,
}

fn cmd_zhu(session: &Session, sub: ZhuCmd) -> CliResult<bool> {
    let voa = make_instance(session)?;
    let cutoff = session.cutoff.unwrap_or(6);
    match sub {
        ZhuCmd::Basis => {
            let z = ZhuQuotient::build(&voa, cutoff)?;
            let sweep_cutoffs: Vec<u32> = (cutoff.saturating_sub(2)..=cutoff).collect();
            let (sweep, stabilized) =
                zhu::stabilization_sweep(&voa, 3.min(cutoff), &sweep_cutoffs)?;
            emit(
                session,
                &json!({
                    "instance": voa.descriptor(),
                    "cutoff": cutoff,
                    "ambient_dim": z.ambient().len(),
                    "relations_dim": z.o_space().dim(),
                    "dim": z.dim(),
                    "coset_basis": z.coset_basis(),
                    "filtration_weight": 3.min(cutoff),
                    "filtration_sweep": sweep,
                    "stabilized": stabilized,
                }),
            );
            Ok(true)
        }
        ZhuCmd::Product { input } => {
            let payload: PairInput = read_json(&input)?;
            let z = ZhuQuotient::build(&voa, cutoff)?;
            let prod = zhu::star(&voa, &payload.a, &payload.b)?;
            let class = z.reduce(&prod)?;
            // seeded spot check of well-definedness against an admissible
            // relation generator
            let gens = z.relation_generators()?;
            let admissible: Vec<&GradedElement> = gens
                .iter()
                .filter(|g| {
                    g.max_weight().unwrap_or(0) + payload.b.max_weight().unwrap_or(0) <= cutoff
                })
                .collect();
            let mut sampler = Sampler(session.seed);
            let spot = if admissible.is_empty() {
                serde_json::Value::Null
            } else {
                let g = admissible[sampler.pick(admissible.len())];
                serde_json::Value::Bool(z.check_well_defined(&payload.a, &payload.b, g)?)
            };
            emit(
                session,
                &json!({
                    "star": prod,
                    "class": class,
                    "coset_basis": z.coset_basis(),
                    "well_defined_spot_check": spot,
                }),
            );
            Ok(true)
        }
        ZhuCmd::Table => {
            let z = ZhuQuotient::build(&voa, cutoff)?;
            let basis = z.coset_basis().to_vec();
            let mut table = Vec::new();
            for a in &basis {
                let mut row = Vec::new();
                for b in &basis {
                    if a.weight() + b.weight() > cutoff {
                        row.push(serde_json::Value::Null);
                        continue;
                    }
                    let class = z.multiply(
                        &GradedElement::from_monomial(a.clone()),
                        &GradedElement::from_monomial(b.clone()),
                    )?;
                    row.push(serde_json::to_value(&class).unwrap());
                }
                table.push(row);
            }
            emit(
                session,
                &json!({
                    "cutoff": cutoff,
                    "basis": basis,
                    "table": table,
                }),
            );
            Ok(true)
        }
        ZhuCmd::Phi { input } => {
            let payload: SingleInput = read_json(&input)?;
            let out = zhu::phi(&voa, &payload.a)?;
            emit(session, &serde_json::to_value(&out).unwrap());
            Ok(true)
        }
        ZhuCmd::OmegaSpace => {
            let m = VModule::adjoint(&voa);
            let om = zhu::omega_space(&m, cutoff)?;
            emit(
                session,
                &json!({
                    "module": m.descriptor(),
                    "tested_weight": om.tested_weight,
                    "dims": om.dims(),
                    "total_dim": om.total_dim(),
                    "truncated_test": true,
                }),
            );
            Ok(true)
        }
        ZhuCmd::OMatrix { input } => {
            let payload: SingleInput = read_json(&input)?;
            let m = VModule::adjoint(&voa);
            let om = zhu::omega_space(&m, cutoff)?;
            let act = zhu::o_action(&m, &payload.a, &om)?;
            let rows: Vec<serde_json::Value> = act
                .iter()
                .map(|(w, mat)| {
                    json!({
                        "weight": w,
                        "matrix": mat,
                        "row_major": flatten_matrix(mat),
                    })
                })
                .collect();
            emit(session, &json!({ "action": rows }));
            Ok(true)
        }
    }
}

fn flatten_matrix(m: &Matrix) -> Vec<String> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for x in m.row(i) {
            out.push(format_rational(x));
        }
    }
    out
}

#[derive(Deserialize)]
struct BundlePair {
    e: BundleCocycle,
    f: BundleCocycle,
}

#[derive(Deserialize)]
struct ComplementInput {
    bundle: BundleCocycle,
    #[serde(default)]
    form: Option<FiberForm>,
}

#[derive(Deserialize)]
struct HomotopyInput {
    blocks: Vec<Matrix>,
    s: String,
}

fn cmd_bundle(session: &Session, sub: BundleCmd) -> CliResult<bool> {
    match sub {
        BundleCmd::Check { input } => {
            let e: BundleCocycle = read_json(&input)?;
            let report = bundle::check_cocycle(&e);
            let pass = report.pass;
            emit(session, &serde_json::to_value(&report).unwrap());
            Ok(pass)
        }
        BundleCmd::Sum { input } => {
            let pair: BundlePair = read_json(&input)?;
            let out = bundle::bundle_sum(&pair.e, &pair.f)?;
            emit(session, &serde_json::to_value(&out).unwrap());
            Ok(true)
        }
        BundleCmd::Dual { input } => {
            let e: BundleCocycle = read_json(&input)?;
            let out = bundle::bundle_dual(&e)?;
            emit(session, &serde_json::to_value(&out).unwrap());
            Ok(true)
        }
        BundleCmd::Omega { input } => {
            let e: BundleCocycle = read_json(&input)?;
            let out = bundle::omega_bundle(&e)?;
            emit(session, &serde_json::to_value(&out).unwrap());
            Ok(true)
        }
        BundleCmd::Split { input } => {
            let e: BundleCocycle = read_json(&input)?;
            let parts = bundle::multiplicity_bundles(&e);
            emit(session, &serde_json::to_value(&parts).unwrap());
            Ok(true)
        }
        BundleCmd::Complement { input } => {
            let payload: ComplementInput = read_json(&input)?;
            let form = payload
                .form
                .unwrap_or_else(|| FiberForm::identity(&payload.bundle.mults));
            let out = bundle::trivial_complement(&payload.bundle, &form)?;
            emit(session, &serde_json::to_value(&out).unwrap());
            Ok(true)
        }
        BundleCmd::Homotopy { input } => {
            let payload: HomotopyInput = read_json(&input)?;
            let s = parse_rational(&payload.s).map_err(CliError::Input)?;
            let frame = bundle::clutch_homotopy(&payload.blocks, &s)?;
            emit(session, &serde_json::to_value(&frame).unwrap());
            Ok(true)
        }
    }
}

#[derive(Deserialize)]
struct KPairInput {
    labels: Vec<String>,
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
struct GrassmannianInput {
    ambient: Vec<usize>,
    sub: Vec<usize>,
}

fn cmd_kgroup(session: &Session, sub: KgroupCmd) -> CliResult<bool> {
    match sub {
        KgroupCmd::Add { input } => {
            let payload: KPairInput = read_json(&input)?;
            let (a, b) = kclass_pair(&payload)?;
            let sum = bundle::k_add(&a, &b)?;
            emit(session, &serde_json::to_value(&sum).unwrap());
            Ok(true)
        }
        KgroupCmd::Eq { input } => {
            let payload: KPairInput = read_json(&input)?;
            let (a, b) = kclass_pair(&payload)?;
            let equal = bundle::k_eq(&a, &b)?;
            emit(session, &json!({ "equal": equal }));
            Ok(true)
        }
        KgroupCmd::Grassmannian { input } => {
            let payload: GrassmannianInput = read_json(&input)?;
            let shape = bundle::grassmannian_shape(&payload.ambient, &payload.sub)?;
            match &shape {
                GrassmannianShape::Empty => emit(session, &json!({ "kind": "empty" })),
                _ => emit(session, &serde_json::to_value(&shape).unwrap()),
            }
            Ok(true)
        }
    }
}

fn kclass_pair(payload: &KPairInput) -> CliResult<(KClass, KClass)> {
    if payload.a.len() != payload.labels.len() || payload.b.len() != payload.labels.len() {
        return Err(CliError::Input(
            "multiplicity lists must match the label list".into(),
        ));
    }
    let a = KClass {
        labels: payload.labels.clone(),
        mults: payload.a.clone(),
    };
    let b = KClass {
        labels: payload.labels.clone(),
        mults: payload.b.clone(),
    };
    Ok((a, b))
}
