//! The `tangnet` command line: reads `.tgn` documents and prints entropy,
//! mutual-information, structure and symmetry reports as text or JSON.
//!
//! Exit codes: 0 on success, 1 on a domain error (bad document, failed
//! check), 2 on a usage error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tangnet::info::{self, multiworld_mi, rabi_entanglement, slit_reduced, slit_visibility};
use tangnet::linalg::haar_unitary;
use tangnet::notation::{self, emit_partition_diagram, emit_structure_diagram, DiagramFormat, ParseOptions, SpecDocument};
use tangnet::rng::SeededRng;
use tangnet::states::{is_approx_pure, reduce, schmidt, wave_function};
use tangnet::structure::{classify, enumerate_qubit_classes, structure_from_state};
use tangnet::symmetry::{self, out_in_suite, LocalUnitaryPair, SuiteConfig, SymmetryOp};
use tangnet::{Complex64, PartitionModel, PureState, Role};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tangnet", version, about = "Entropy, mutual-information and quantum-structure reports for .tgn documents")]
struct Cli {
    /// Print JSON (sorted keys) instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for asserted invariants.
    #[arg(long, global = true, default_value_t = symmetry::DEFAULT_TOL, value_parser = positive_float)]
    tol: f64,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Rescale off-norm states instead of rejecting the document.
    #[arg(long, global = true)]
    normalize: bool,
    /// Which state of the document to use (default: the first).
    #[arg(long, global = true)]
    state: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct Input {
    /// Document path, or `-` for standard input.
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check a document and print its canonical form.
    Parse(Input),
    /// Von Neumann entropy (bits) of the reduced state on some parties.
    Entropy {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
    },
    /// I(A:B), or I(A:B|C) when --c is given.
    Mi {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        c: Vec<String>,
    },
    /// Two-world mutual-information report.
    Mi7 {
        #[command(flatten)]
        input: Input,
        /// ROLE=PARTY pairs; defaults to the document's roles block.
        #[arg(long, value_delimiter = ',', value_parser = role_pair)]
        roles: Vec<(Role, String)>,
    },
    /// Schmidt coefficients across a cut.
    Schmidt {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<String>,
    },
    /// Reduced state on some roles, with its wave function when pure.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<Role>,
        #[arg(long, value_delimiter = ',', value_parser = role_pair)]
        roles: Vec<(Role, String)>,
        /// Purity threshold: pure when purity >= 1 - eps.
        #[arg(long, default_value_t = tangnet::states::DEFAULT_PURITY_EPS, value_parser = positive_float)]
        eps: f64,
    },
    /// Quantum structure of a state, or a diagram of it.
    Structure {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Draw the roles block instead of the state.
        #[arg(long)]
        partition: bool,
        #[arg(long, value_delimiter = ',', value_parser = role_pair)]
        roles: Vec<(Role, String)>,
    },
    /// Structure class of a two-qubit state, or the class table.
    Classify {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        enumerate: bool,
    },
    /// Apply a symmetry operation and run the invariance suite.
    Symmetry {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        op: Option<OpArg>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Worked examples.
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Atom-field entanglement after a Rabi rotation.
    Rabi {
        #[arg(long, allow_negative_numbers = true)]
        gt: f64,
    },
    /// Interference visibility for a given apparatus-state overlap.
    Slit {
        #[arg(long, allow_negative_numbers = true)]
        overlap: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Svg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    Envariance,
    Rotation,
    LocalPair,
    Swap,
}

impl From<OpArg> for SymmetryOp {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::Envariance => SymmetryOp::Envariance,
            OpArg::Rotation => SymmetryOp::Rotation,
            OpArg::LocalPair => SymmetryOp::LocalPair,
            OpArg::Swap => SymmetryOp::Swap,
        }
    }
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn role_pair(s: &str) -> Result<(Role, String), String> {
    let (role, label) = s.split_once('=').ok_or_else(|| format!("`{s}` is not ROLE=PARTY"))?;
    let role = role.trim().parse::<Role>().map_err(|e| e.to_string())?;
    let label = label.trim();
    if label.is_empty() {
        return Err(format!("`{s}` names no party"));
    }
    Ok((role, label.to_string()))
}

/// Failure of a command after argument parsing.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
}

impl From<tangnet::Error> for CliError {
    fn from(e: tangnet::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

/// What a command prints, and whether it counts as success.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), ok: true }
    }
}

struct Ctx {
    json: bool,
    tol: f64,
    seed: u64,
    normalize: bool,
    state: Option<String>,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<SpecDocument, CliError> {
        let source = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Domain(format!("reading standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?
        };
        notation::parse_with(&source, ParseOptions { normalize: self.normalize })
            .map_err(|d| CliError::Domain(format!("{}: {d}", path.display())))
    }

    fn psi(&self, doc: &SpecDocument) -> Result<PureState, CliError> {
        Ok(doc.state(self.state.as_deref())?)
    }

    fn model(&self, doc: &SpecDocument, roles: &[(Role, String)]) -> Result<PartitionModel, CliError> {
        if roles.is_empty() {
            return doc
                .partition()?
                .ok_or_else(|| CliError::Domain("document has no roles block and --roles was not given".into()));
        }
        Ok(PartitionModel::infer(roles.iter().map(|(r, l)| (l.clone(), *r)))?)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Output goes to `out`, diagnostics and usage text to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let ctx = Ctx { json: cli.json, tol: cli.tol, seed: cli.seed, normalize: cli.normalize, state: cli.state };
    match execute(&ctx, cli.cmd) {
        Ok(report) => {
            let written = if ctx.json {
                let body = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
                writeln!(out, "{body}")
            } else if report.text.ends_with('\n') {
                write!(out, "{}", report.text)
            } else {
                writeln!(out, "{}", report.text)
            };
            if written.is_err() {
                return EXIT_DOMAIN;
            }
            if report.ok {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            }
        }
        Err(e) => {
            let msg = match &e {
                CliError::Domain(m) | CliError::Usage(m) => m,
            };
            let _ = writeln!(err, "error: {msg}");
            e.exit_code()
        }
    }
}

fn labels_json(v: &[String]) -> Value {
    json!(v)
}

/// Text-mode number: rounding dust below 1e−12 prints as 0.
fn num(x: f64) -> String {
    if x.abs() < 1e-12 {
        "0".into()
    } else {
        format!("{x}")
    }
}

fn execute(ctx: &Ctx, cmd: Cmd) -> Result<Report, CliError> {
    match cmd {
        Cmd::Parse(input) => {
            let doc = ctx.load(&input.file)?;
            let canonical = notation::format(&doc);
            let model = doc.partition()?.map(|m| m.kind().as_str());
            let parties: Vec<Value> =
                doc.system.parties.iter().map(|p| json!({"label": p.label, "dim": p.dim})).collect();
            Ok(Report::new(
                json!({
                    "canonical": canonical,
                    "system": doc.system.name,
                    "parties": parties,
                    "states": doc.state_names(),
                    "model": model,
                }),
                canonical,
            ))
        }
        Cmd::Entropy { input, keep } => {
            let psi = ctx.psi(&ctx.load(&input.file)?)?;
            let s = info::entropy(&psi.density().reduced(&keep)?)?;
            Ok(Report::new(json!({"keep": labels_json(&keep), "entropy_bits": s}), num(s)))
        }
        Cmd::Mi { input, a, b, c } => {
            let rho = ctx.psi(&ctx.load(&input.file)?)?.density();
            if c.is_empty() {
                let v = info::mutual_info(&rho, &a, &b)?;
                Ok(Report::new(json!({"a": a, "b": b, "mutual_info_bits": v}), num(v)))
            } else {
                let v = info::conditional_mutual_info(&rho, &a, &b, &c)?;
                Ok(Report::new(json!({"a": a, "b": b, "c": c, "conditional_mutual_info_bits": v}), num(v)))
            }
        }
        Cmd::Mi7 { input, roles } => {
            let doc = ctx.load(&input.file)?;
            let model = ctx.model(&doc, &roles)?;
            let report = multiworld_mi(&ctx.psi(&doc)?.density(), &model)?;
            let mut text = format!("model {}\nI_total = {}\n", report.model, num(report.i_total));
            for (k, v) in &report.terms {
                text += &format!("{k} = {}\n", num(*v));
            }
            for (k, v) in &report.entropies {
                text += &format!("{k} = {}\n", num(*v));
            }
            let r = &report.reductions;
            text += &format!("case_1 = {}\ncase_2 = {}\ncase_3 = {}\ncase_4 = {}\n", r.case_1, r.case_2, r.case_3, r.case_4);
            if let Some(v) = r.i_case_2 {
                text += &format!("I_case_2 = {}\n", num(v));
            }
            if let Some(v) = r.i_case_4 {
                text += &format!("I_case_4 = {}\n", num(v));
            }
            Ok(Report::new(report.to_json(), text))
        }
        Cmd::Schmidt { input, left } => {
            let psi = ctx.psi(&ctx.load(&input.file)?)?;
            let d = schmidt(&psi, &left)?;
            let text = d.coefficients.iter().map(|&c| num(c)).collect::<Vec<_>>().join("\n");
            Ok(Report::new(
                json!({
                    "left": d.left_labels(),
                    "right": d.right_labels(),
                    "coefficients": d.coefficients,
                    "rank": d.rank(),
                    "entropy_bits": d.entropy(),
                }),
                text,
            ))
        }
        Cmd::Reduce { input, target, roles, eps } => {
            let doc = ctx.load(&input.file)?;
            let model = ctx.model(&doc, &roles)?;
            let rho = reduce(&ctx.psi(&doc)?.density(), &model, &target)?;
            let purity = rho.purity();
            let pure = is_approx_pure(&rho, eps);
            let wf = wave_function(&rho, eps)?;
            let targets: Vec<&str> = target.iter().map(|r| r.as_str()).collect();
            let mut text = format!("parties {}\npurity = {purity}\npure = {pure}\n", rho.space());
            let wf_doc = wf.as_ref().map(|w| notation::format(&SpecDocument::from_state("R", "wave", w, None)));
            if let Some(d) = &wf_doc {
                text += d;
            }
            Ok(Report::new(
                json!({
                    "targets": targets,
                    "parties": rho.space().labels(),
                    "purity": purity,
                    "pure": pure,
                    "eps": eps,
                    "wave_function": wf_doc,
                }),
                text,
            ))
        }
        Cmd::Structure { input, format, partition, roles } => {
            let doc = ctx.load(&input.file)?;
            if partition {
                let model = ctx.model(&doc, &roles)?;
                let fmt = match format {
                    Some(FormatArg::Svg) => DiagramFormat::Svg,
                    _ => DiagramFormat::Dot,
                };
                let d = emit_partition_diagram(&model, fmt);
                d.validate()?;
                return Ok(Report::new(json!(d), d.body.clone()));
            }
            let qs = structure_from_state(&ctx.psi(&doc)?)?;
            match format {
                Some(f) => {
                    let fmt = match f {
                        FormatArg::Dot => DiagramFormat::Dot,
                        FormatArg::Svg => DiagramFormat::Svg,
                    };
                    let d = emit_structure_diagram(&qs, fmt);
                    d.validate()?;
                    Ok(Report::new(json!(d), d.body.clone()))
                }
                None => {
                    let mut text = String::new();
                    for b in qs.branches() {
                        let nodes: Vec<String> = b.nodes.iter().map(|k| k.to_string()).collect();
                        text += &format!("|{}> length {} orientation {}°\n", nodes.join(","), b.length, b.orientation);
                    }
                    Ok(Report::new(qs.to_json(), text))
                }
            }
        }
        Cmd::Classify { file, enumerate } => {
            if enumerate || file.is_none() {
                if !enumerate {
                    return Err(CliError::Usage("classify needs a document or --enumerate".into()));
                }
                let table = enumerate_qubit_classes();
                let mut text = format!("{} classes\n", table.count);
                for e in &table.classes {
                    let members: Vec<String> = e
                        .members
                        .iter()
                        .map(|m| format!("{:?} θ={}°", m.pairing, m.theta).to_lowercase())
                        .collect();
                    text += &format!("{}: {}\n", e.class, members.join(", "));
                }
                return Ok(Report::new(json!(table), text));
            }
            let doc = ctx.load(file.as_deref().expect("checked above"))?;
            let class = classify(&structure_from_state(&ctx.psi(&doc)?)?)?;
            Ok(Report::new(class.to_json(), class.to_string()))
        }
        Cmd::Symmetry { input, op, trials } => {
            let psi = ctx.psi(&ctx.load(&input.file)?)?;
            let ops: Vec<SymmetryOp> = op.map(|o| vec![o.into()]).unwrap_or_default();
            let verdict = match op.map(SymmetryOp::from) {
                None => None,
                Some(o) => Some(single_op(&psi, o, ctx.seed)?),
            };
            let summary =
                out_in_suite(&psi, &SuiteConfig { trials, seed: ctx.seed, tol: ctx.tol, ops })?;
            let mut text = String::new();
            if let Some(v) = &verdict {
                text += &format!(
                    "{}: state distance {:.3e}, schmidt distance {:.3e}, class changed {}, branch lengths preserved {}\n",
                    v.operation,
                    v.state_distance,
                    v.schmidt_distance,
                    v.class_changed.map_or("n/a".to_string(), |c| c.to_string()),
                    v.branch_lengths_preserved
                );
            }
            text += &format!(
                "{} trials, worst schmidt distance {:.3e}, worst envariance residual {:.3e}, {}\n",
                summary.trials,
                summary.worst_schmidt_distance,
                summary.worst_envariance_residual,
                if summary.passed { "passed" } else { "FAILED" }
            );
            for v in &summary.violations {
                text += &format!("  {v}\n");
            }
            let ok = summary.passed;
            let mut r = Report::new(json!({"verdict": verdict, "suite": summary}), text);
            r.ok = ok;
            Ok(r)
        }
        Cmd::Demo(Demo::Rabi { gt }) => {
            let e = rabi_entanglement(gt);
            Ok(Report::new(json!({"gt": gt, "entanglement_bits": e}), num(e)))
        }
        Cmd::Demo(Demo::Slit { overlap }) => {
            let o = Complex64::new(overlap, 0.0);
            let v = slit_visibility(o)?;
            let rho = slit_reduced(o)?;
            let coherence = rho.matrix()[(0, 1)];
            Ok(Report::new(
                json!({"overlap": overlap, "visibility": v, "coherence": [coherence.re, coherence.im]}),
                num(v),
            ))
        }
    }
}

fn single_op(psi: &PureState, op: SymmetryOp, seed: u64) -> Result<symmetry::SymmetryVerdict, CliError> {
    let mut rng = SeededRng::new(seed);
    let dims = psi.space().dims();
    let v = match op {
        SymmetryOp::Envariance => {
            let rank = schmidt(psi, &[psi.space().labels()[0]])?.rank();
            let phases: Vec<f64> = (0..rank).map(|_| rng.uniform() * std::f64::consts::TAU).collect();
            symmetry::apply_envariance(psi, &phases)?.1
        }
        SymmetryOp::Rotation => {
            let u = if dims.first() == Some(&2) { symmetry::flip_rotation() } else { haar_unitary(dims[0], &mut rng)? };
            symmetry::apply_local_rotation(psi, &u)?.1
        }
        SymmetryOp::LocalPair => {
            if dims.len() != 2 {
                return Err(CliError::Domain("local-pair needs a bipartite state".into()));
            }
            let pair = LocalUnitaryPair::new(haar_unitary(dims[0], &mut rng)?, haar_unitary(dims[1], &mut rng)?)?;
            symmetry::apply_local_pair(psi, &pair)?.1
        }
        SymmetryOp::Swap => symmetry::apply_permutation(psi)?.1,
    };
    Ok(v)
}
