use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fasla_core::catalog::{self, dim2_family};
use fasla_core::cohomology::{cohomology_dims, Bimodule};
use fasla_core::cotangent::{detect_lagrangian_ideal, hess_product, twisted_cotangent};
use fasla_core::dynamics::{self, central_translations, chu_connection, completeness, etale_representation};
use fasla_core::extension::{decompose_to_zero, double_extend, reduce_by_ideal, reduction_candidates};
use fasla_core::io::{self, AlgebraFile};
use fasla_core::linalg::unit;
use fasla_core::scalar::{format_scalar, parse_decimal, parse_scalar, Scalar};
use fasla_core::verifier::{check_fasla, VerificationReport};
use fasla_core::{Error, FaslaTriple};

#[derive(Parser)]
#[command(name = "fasla", version, about = "Exact tools for flat affine symplectic Lie algebras")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Algebra file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom and report witnesses for failures.
    Verify(Input),
    /// Build the double extension of a base by extension data.
    DoubleExtend {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce along a one-dimensional bilateral ideal.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        /// Basis index spanning the ideal.
        #[arg(long)]
        e: Option<usize>,
        /// Basis index pairing with it.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce repeatedly down to dimension 0.
    Decompose(Input),
    /// Build a twisted cotangent algebra, or the Hess product of a base.
    Cotangent {
        #[arg(long, conflicts_with = "hess")]
        data: Option<PathBuf>,
        #[arg(long, requires = "base")]
        hess: bool,
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a Lagrangian bilateral ideal and recover cotangent data.
    DetectLagrangian(Input),
    /// Cocycle, coboundary and cohomology dimensions in one degree.
    Cohomology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        degree: usize,
        /// trivial, canonical-dual, regular, or a bimodule file.
        #[arg(long, default_value = "trivial")]
        module: String,
    },
    /// Completeness analysis: traces and sampled nilpotency.
    Complete(Input),
    /// The affine symplectic element attached to a vector.
    Etale {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long)]
        x: String,
        /// Truncated floating series instead of the exact element.
        #[arg(long)]
        approx: bool,
        /// Series order for --approx, or the nilpotency cap otherwise.
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
    /// Central translation directions.
    Central(Input),
    /// Built-in examples.
    Catalog {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        emit: Option<String>,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long, default_value = "0")]
        lambda: String,
        #[arg(long, default_value = "0")]
        mu: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The left-symmetric product determined by a bracket and a symplectic cocycle.
    Chu {
        #[arg(long)]
        input: PathBuf,
        /// Read the file's product as the bracket itself instead of taking its commutator.
        #[arg(long)]
        bracket: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Dim2,
}

/// What a subcommand produced.
struct Output {
    text: String,
    json: Value,
    /// A check ran and failed.
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            failed: false,
        }
    }
}

enum Failure {
    /// A check on the input failed; the report goes to stdout.
    Check(String, Value),
    /// Malformed or inadmissible input.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFasla(r) => Failure::Check(format!("not a flat affine symplectic Lie algebra\n{r}"), r.to_json()),
            Error::ValidationFailed { what, report } => {
                Failure::Check(format!("{what} rejected\n{report}"), report.to_json())
            }
            Error::NotLeftSymmetric
            | Error::NotAssociative
            | Error::NotLieBracket
            | Error::NotCocycle
            | Error::DegenerateForm
            | Error::Invariant(_) => Failure::Check(e.to_string(), json!({ "error": e.to_string() })),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let emit = |out: &mut dyn Write, text: &str, value: &Value| {
        let s = if cli.json { io::to_text(value) } else { text.to_string() };
        let _ = out.write_all(s.as_bytes());
        if !s.ends_with('\n') {
            let _ = out.write_all(b"\n");
        }
    };
    match run(&cli.command) {
        Ok(o) => {
            emit(&mut stdout, &o.text, &o.json);
            if o.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Check(text, value)) => {
            emit(&mut stdout, &text, &value);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn seed() -> Result<u64, Failure> {
    match std::env::var("FASLA_SEED") {
        Ok(s) => s
            .parse()
            .map_err(|_| Failure::Input(format!("FASLA_SEED must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}

fn load_triple(path: &Path) -> Result<(FaslaTriple, Option<Vec<String>>), Failure> {
    let f = io::read_algebra(path)?;
    Ok((f.triple()?, f.labels))
}

/// Loads a triple and refuses to continue unless it passes every axiom.
fn load_fasla(path: &Path) -> Result<(FaslaTriple, Option<Vec<String>>), Failure> {
    let (t, labels) = load_triple(path)?;
    let report = check_fasla(&t);
    if !report.passed() {
        return Err(Error::NotFasla(report).into());
    }
    Ok((t, labels))
}

fn write_or_print(out: &Option<PathBuf>, value: &Value, summary: String) -> Run {
    match out {
        Some(p) => {
            io::write_json(p, value)?;
            Ok(Output::ok(format!("{summary}\nwrote {}", p.display()), json!({ "written": p.display().to_string() })))
        }
        None => Ok(Output::ok(io::to_text(value), value.clone())),
    }
}

fn vector_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("({})", parts.join(", "))
}

fn parse_vector(text: &str, parse: fn(&str) -> fasla_core::Result<Scalar>) -> Result<Vec<Scalar>, Failure> {
    text.split(',')
        .map(|s| parse(s.trim()).map_err(Failure::from))
        .collect()
}

fn report_output(report: &VerificationReport) -> Output {
    Output {
        text: report.to_string(),
        json: report.to_json(),
        failed: !report.passed(),
    }
}

fn run(cmd: &Command) -> Run {
    match cmd {
        Command::Verify(i) => {
            let (t, _) = load_triple(&i.input)?;
            Ok(report_output(&check_fasla(&t)))
        }
        Command::DoubleExtend { base, params, out } => {
            let (b, _) = load_fasla(base)?;
            let p = io::params_from_json(&io::read_json(params)?)?;
            let t = double_extend(&b, &p)?;
            let n = b.dim();
            let mut labels = vec!["e".to_string()];
            labels.extend((1..=n).map(|i| format!("b{i}")));
            labels.push("d".into());
            let file = AlgebraFile::from_triple(&t).with_labels(labels);
            write_or_print(out, &file.to_json(), format!("extension of dimension {}", t.dim()))
        }
        Command::Reduce { input, e, d, out } => {
            let (t, _) = load_fasla(input)?;
            let n = t.dim();
            let r = match (e, d) {
                (Some(e), Some(d)) if *e < n && *d < n => reduce_by_ideal(&t, &unit(n, *e), &unit(n, *d))?,
                (Some(_), Some(_)) => return Err(Failure::Input(format!("basis indices must be below {n}"))),
                (None, None) => reduction_candidates(&t)
                    .into_iter()
                    .find_map(|(ev, dv)| reduce_by_ideal(&t, &ev, &dv).ok())
                    .ok_or_else(|| Failure::Check("no admissible one-dimensional bilateral ideal".into(), json!(null)))?,
                _ => return Err(Failure::Input("--e and --d go together".into())),
            };
            let mut m = Map::new();
            m.insert("base".into(), AlgebraFile::from_triple(&r.base).to_json());
            m.insert("params".into(), io::params_to_json(&r.params));
            m.insert("basis_change".into(), io::matrix_json(&r.basis_change));
            write_or_print(out, &Value::Object(m), format!("reduced to dimension {}", r.base.dim()))
        }
        Command::Decompose(i) => {
            let (t, _) = load_fasla(&i.input)?;
            match decompose_to_zero(&t) {
                Ok(steps) => {
                    let dims: Vec<usize> = std::iter::once(t.dim()).chain(steps.iter().map(|s| s.base.dim())).collect();
                    let text = format!(
                        "decomposes to {{0}}, reduction steps: {}\ndimensions {}",
                        steps.len(),
                        dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" -> ")
                    );
                    let params: Vec<Value> = steps.iter().map(|s| io::params_to_json(&s.params)).collect();
                    Ok(Output::ok(text, json!({ "decomposes": true, "dimensions": dims, "params": params })))
                }
                Err(f) => Err(Failure::Check(
                    f.to_string(),
                    json!({ "decomposes": false, "steps": f.steps.len(), "stuck_dimension": f.stuck.dim() }),
                )),
            }
        }
        Command::Cotangent { data, hess, base, out } => {
            let t = if *hess {
                let b = io::read_algebra(base.as_ref().expect("clap requires --base"))?;
                hess_product(&b.algebra)?
            } else {
                let path = data
                    .as_ref()
                    .ok_or_else(|| Failure::Input("give --data FILE or --hess --base FILE".into()))?;
                twisted_cotangent(&io::cotangent_from_json(&io::read_json(path)?)?)?
            };
            let file = AlgebraFile::from_triple(&t);
            write_or_print(out, &file.to_json(), format!("cotangent algebra of dimension {}", t.dim()))
        }
        Command::DetectLagrangian(i) => {
            let (t, _) = load_fasla(&i.input)?;
            let split = match detect_lagrangian_ideal(&t) {
                Ok(s) => s,
                Err(Error::NotFound(m)) => return Err(Failure::Check(m, json!({ "found": false }))),
                Err(e) => return Err(e.into()),
            };
            let ideal: Vec<String> = split.ideal.iter().map(|v| vector_text(v)).collect();
            let data = io::cotangent_to_json(&split.data);
            let text = format!("Lagrangian ideal spanned by {}\n{}", ideal.join(", "), io::to_text(&data));
            Ok(Output::ok(
                text,
                json!({
                    "found": true,
                    "ideal": split.ideal.iter().map(|v| io::vector_json(v)).collect::<Vec<_>>(),
                    "data": data,
                    "basis_change": io::matrix_json(&split.basis_change),
                }),
            ))
        }
        Command::Cohomology { input, degree, module } => {
            let f = io::read_algebra(input)?;
            let a = &f.algebra;
            let b = match module.as_str() {
                "trivial" => Bimodule::trivial(a, 1),
                "canonical-dual" => Bimodule::canonical_dual(a),
                "regular" => Bimodule::regular(a),
                path => io::bimodule_from_json(&io::read_json(Path::new(path))?, Some(a))?,
            };
            let report = b.verify();
            if !report.passed() {
                return Err(Failure::Check(format!("not a bimodule\n{report}"), report.to_json()));
            }
            let d = cohomology_dims(&b, *degree)?;
            Ok(Output::ok(
                format!(
                    "degree {degree}: cocycles {}, coboundaries {}, cohomology {}",
                    d.cocycles, d.coboundaries, d.cohomology
                ),
                json!({ "degree": degree, "cocycles": d.cocycles, "coboundaries": d.coboundaries, "cohomology": d.cohomology }),
            ))
        }
        Command::Complete(i) => {
            let (t, _) = load_fasla(&i.input)?;
            let c = completeness(&t, seed()?)?;
            let traces = |v: &[Scalar]| v.iter().map(format_scalar).collect::<Vec<_>>();
            let text = format!(
                "verdict {}\nunimodular {}\ntr ad {}\ntr L {}\ntr R {}\nright multiplications nilpotent on basis and samples {}{}",
                c.verdict.as_str(),
                c.unimodular,
                vector_text(&c.traces_ad),
                vector_text(&c.traces_l),
                vector_text(&c.traces_r),
                c.right_mults_nilpotent,
                c.non_nilpotent_witness
                    .as_ref()
                    .map(|w| format!("\nnon-nilpotent R at {}", vector_text(w)))
                    .unwrap_or_default()
            );
            Ok(Output::ok(
                text,
                json!({
                    "verdict": c.verdict.as_str(),
                    "unimodular": c.unimodular,
                    "traces_ad": traces(&c.traces_ad),
                    "traces_l": traces(&c.traces_l),
                    "traces_r": traces(&c.traces_r),
                    "right_mults_nilpotent": c.right_mults_nilpotent,
                    "non_nilpotent_witness": c.non_nilpotent_witness.as_ref().map(|w| io::vector_json(w)),
                }),
            ))
        }
        Command::Etale { input, x, approx, order } => {
            let (t, _) = load_fasla(input)?;
            if *approx {
                let xv = parse_vector(x, parse_decimal)?;
                let el = dynamics::etale_approx(&t, &xv, *order)?;
                let rows: Vec<String> = el
                    .linear
                    .iter()
                    .map(|r| r.iter().map(|v| format!("{v:.12e}")).collect::<Vec<_>>().join(" "))
                    .collect();
                let q: Vec<String> = el.translation.iter().map(|v| format!("{v:.12e}")).collect();
                let text = format!(
                    "approximate, order {}, tail bound {:.3e}\nQ = {}\nF =\n{}",
                    el.order,
                    el.error_bound,
                    q.join(" "),
                    rows.join("\n")
                );
                return Ok(Output::ok(
                    text,
                    json!({ "exact": false, "order": el.order, "error_bound": el.error_bound, "translation": el.translation, "linear": el.linear }),
                ));
            }
            let xv = parse_vector(x, parse_scalar)?;
            let el = match etale_representation(&t, &xv, *order) {
                Err(e @ (Error::NonNilpotent { .. } | Error::OrderCapExceeded { .. })) => {
                    return Err(Failure::Input(format!("{e}; use --approx for a truncated series")))
                }
                other => other?,
            };
            let rows: Vec<String> = el.linear.row_vectors().iter().map(|r| vector_text(r)).collect();
            let symplectic = dynamics::symplectic_check(&el, &t.omega);
            let text = format!(
                "Q = {}\nF =\n{}\nsymplectic {}",
                vector_text(&el.translation),
                rows.join("\n"),
                symplectic
            );
            Ok(Output {
                text,
                json: json!({
                    "exact": true,
                    "translation": io::vector_json(&el.translation),
                    "linear": io::matrix_json(&el.linear),
                    "symplectic": symplectic,
                }),
                failed: !symplectic,
            })
        }
        Command::Central(i) => {
            let (t, _) = load_fasla(&i.input)?;
            let c = central_translations(&t);
            let dirs = dynamics::translation_directions(&t);
            let mut text = format!("central translations: dimension {}", c.len());
            for v in &c {
                text.push_str(&format!("\n  {}", vector_text(v)));
            }
            text.push_str(&format!("\ntranslation directions (L_b = 0): dimension {}", dirs.len()));
            for v in &dirs {
                text.push_str(&format!("\n  {}", vector_text(v)));
            }
            Ok(Output::ok(
                text,
                json!({
                    "central": c.iter().map(|v| io::vector_json(v)).collect::<Vec<_>>(),
                    "translation_directions": dirs.iter().map(|v| io::vector_json(v)).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Catalog { list, emit, family, beta, lambda, mu, out } => {
            if let Some(Family::Dim2) = family {
                let t = dim2_family(parse_scalar(beta)?, parse_scalar(lambda)?, parse_scalar(mu)?)?;
                let file = AlgebraFile::from_triple(&t).with_labels(vec!["e".into(), "d".into()]);
                return write_or_print(out, &file.to_json(), "dim2 family member".into());
            }
            if let Some(name) = emit {
                let e = catalog::entry(name)?;
                let file = AlgebraFile::from_triple(&e.triple).with_labels(e.labels.clone());
                return write_or_print(out, &file.to_json(), format!("catalog entry {name}"));
            }
            if !*list {
                return Err(Failure::Input("give --list, --emit NAME or --family dim2".into()));
            }
            let suite = catalog::reference_suite()?;
            let mut text = String::new();
            let mut items = Vec::new();
            for e in &suite {
                let fields: Vec<String> = e.expected.fields().iter().map(|(k, v)| format!("{k}={v}")).collect();
                text.push_str(&format!("{}  dim {}  {}  [{}]\n", e.name, e.triple.dim(), e.builder, fields.join(" ")));
                for n in &e.notes {
                    text.push_str(&format!("    note: {n}\n"));
                }
                let mut m = Map::new();
                m.insert("name".into(), json!(e.name));
                m.insert("dim".into(), json!(e.triple.dim()));
                m.insert("builder".into(), json!(e.builder));
                for (k, v) in e.expected.fields() {
                    m.insert(k.into(), json!(v));
                }
                m.insert("notes".into(), json!(e.notes));
                items.push(Value::Object(m));
            }
            Ok(Output::ok(text, Value::Array(items)))
        }
        Command::Chu { input, bracket, out } => {
            let (t, _) = load_triple(input)?;
            let br = if *bracket { t.algebra.clone() } else { t.algebra.commutator_algebra() };
            let product = chu_connection(&br, &t.omega)?;
            let file = AlgebraFile::from_triple(&FaslaTriple::new(product, t.omega.clone())?);
            write_or_print(out, &file.to_json(), "left-symmetric product".into())
        }
    }
}
