mod expr;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use floer_core::ainfty::{self, AInftyDatum, Augmentation, CoefficientMode, MapDatum, TensorEntry};
use floer_core::conductors::ExactnessQuery;
use floer_core::maslov::{self, RawPath};
use floer_core::morse::{self, MorseDatum, SftIndexQuery};
use floer_core::polytopes::{self, Polytope};
use floer_core::Valuation;

#[derive(Parser)]
#[command(name = "floer", version, about = "Open-string Floer toolkit")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Faces, f-vectors, facet signs and boundary checks of K_l and J_l.
    Polytope {
        kind: Kind,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        view: PolytopeView,
    },
    /// Novikov-ring arithmetic.
    Novikov {
        #[command(subcommand)]
        op: NovikovOp,
    },
    /// Robbin–Salamon and string indices of a path.
    Maslov {
        #[command(subcommand)]
        op: MaslovOp,
    },
    /// A∞ checks on JSON bundles.
    Ainfty {
        op: AinftyOp,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Floer cohomology.
    Floer {
        #[command(subcommand)]
        op: FloerOp,
    },
    /// SFT index bound.
    Sft {
        #[command(subcommand)]
        op: SftOp,
    },
    /// Exactness of composable continuations.
    Conductor {
        #[command(subcommand)]
        op: ConductorOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Assoc,
    Multi,
}

#[derive(Args)]
#[group(multiple = false)]
struct PolytopeView {
    #[arg(long)]
    faces: bool,
    #[arg(long)]
    f_vector: bool,
    #[arg(long)]
    facet_signs: bool,
    #[arg(long)]
    boundary_check: bool,
}

#[derive(Subcommand)]
enum NovikovOp {
    /// Evaluate `[series]` literals joined by `+ - *`, parentheses and `inv(EXPR, CUTOFF)`.
    Eval { expr: String },
}

#[derive(Subcommand)]
enum MaslovOp {
    Index { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum AinftyOp {
    Check,
    Map,
    Homotopy,
    Compose,
    Augment,
}

#[derive(Subcommand)]
enum FloerOp {
    Hf {
        file: PathBuf,
        /// Eliminate over ℚ instead of ℤ.
        #[arg(long)]
        rational: bool,
    },
    Sphere {
        #[arg(long)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum SftOp {
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        v: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum ConductorOp {
    Exact { file: PathBuf },
}

struct Report {
    passed: bool,
    json: Value,
    text: String,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<Report, InputError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let src = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&src).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or_default();
        InputError(format!("{}: parse error at line {}, column {}: {msg}", path.display(), e.line(), e.column()))
    })
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Polytope { kind, l, view } => polytope(kind, l, &view),
        Command::Novikov { op: NovikovOp::Eval { expr } } => novikov_eval(&expr),
        Command::Maslov { op: MaslovOp::Index { file } } => maslov_index(&file),
        Command::Ainfty { op, files } => ainfty_cmd(op, &files),
        Command::Floer { op: FloerOp::Hf { file, rational } } => floer_hf(&file, rational),
        Command::Floer { op: FloerOp::Sphere { n } } => floer_sphere(n),
        Command::Sft { op: SftOp::Bound { n, g, v, m } } => sft_bound(SftIndexQuery { n, g, v, m }),
        Command::Conductor { op: ConductorOp::Exact { file } } => conductor_exact(&file),
    };
    match outcome {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            let written = if cli.text {
                write!(out, "{}", r.text)
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(&r.json).expect("json"))
            };
            if written.is_err() {
                return ExitCode::from(2);
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn polytope(kind: Kind, l: usize, view: &PolytopeView) -> Outcome {
    let p = match kind {
        Kind::Assoc => Polytope::K,
        Kind::Multi => Polytope::J,
    };
    let name = match kind {
        Kind::Assoc => "K",
        Kind::Multi => "J",
    };
    if view.faces {
        let faces = polytopes::enumerate_faces(p, l, None)?;
        let mut text = String::new();
        for f in &faces {
            writeln!(text, "{}\t{f}", f.dim()).unwrap();
        }
        let json = Value::Array(faces.iter().map(|f| json!({"dim": f.dim(), "face": f.to_string()})).collect());
        Ok(Report { passed: true, json, text })
    } else if view.facet_signs {
        let facets = polytopes::facets_with_signs(p, l)?;
        let mut text = String::new();
        for f in &facets {
            writeln!(text, "{:+}\t{}", f.orientation_sign, f.face).unwrap();
        }
        Ok(Report { passed: true, json: to_json(&facets), text })
    } else if view.boundary_check {
        let r = polytopes::boundary_map_consistency(p, l)?;
        let text = format!(
            "{name}_{l}: {} faces, {} nonzero entries of ∂∂: {}\n",
            r.faces_checked,
            r.nonzero_entries,
            if r.passed { "ok" } else { "FAIL" }
        );
        Ok(Report { passed: r.passed, json: to_json(&r), text })
    } else {
        let f = polytopes::f_vector(p, l)?;
        let text = format!("{name}_{l}: {}\n", f.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
        Ok(Report { passed: true, json: to_json(&f), text })
    }
}

fn novikov_eval(src: &str) -> Outcome {
    let v = expr::eval(src).map_err(|e| InputError(format!("parse error at line 1, column {}: {}", e.column, e.message)))?;
    let valuation = match v.valuation() {
        Valuation::Finite(e) => e.to_string(),
        Valuation::Infinite => "inf".into(),
    };
    let json = json!({
        "value": v.to_string(),
        "valuation": valuation,
        "cutoff": v.cutoff().map(|c| c.to_string()),
    });
    Ok(Report { passed: true, text: format!("{v}\n"), json })
}

#[derive(Deserialize)]
struct MaslovInput {
    #[serde(flatten)]
    path: RawPath,
    /// Constant reference; defaults to the start of the path.
    #[serde(default)]
    reference: Option<Vec<Vec<maslov::RawNumber>>>,
}

fn maslov_index(file: &Path) -> Outcome {
    let input: MaslovInput = read_json(file)?;
    let path = input.path.build()?;
    let reference = match &input.reference {
        Some(r) => r
            .iter()
            .map(|row| row.iter().map(|x| x.rational().ok_or_else(|| InputError(format!("bad number {x:?}")))).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?,
        None => path.start(),
    };
    let report = maslov::crossings(&reference, &path)?;
    let string_index = if input.reference.is_none() { maslov::string_index(&path).ok() } else { None };
    let mut text = format!("rs_index = {}\n", report.rs_index);
    if let Some(mu) = string_index {
        writeln!(text, "string_index = {mu}").unwrap();
    }
    for c in &report.crossings {
        writeln!(text, "  crossing t ≈ {:.6} ({}), kernel {}, contribution {}/2", c.approx_time, c.time, c.kernel_dim, c.contribution_twice)
            .unwrap();
    }
    let json = json!({
        "rs_index": report.rs_index,
        "string_index": string_index,
        "crossings": report.crossings,
    });
    Ok(Report { passed: true, json, text })
}

fn h_map(entries: &[TensorEntry]) -> MapDatum {
    MapDatum { h: entries.to_vec(), k: Vec::new() }
}

#[derive(Deserialize)]
struct MapBundle {
    source: AInftyDatum,
    target: AInftyDatum,
    #[serde(rename = "H")]
    h: Vec<TensorEntry>,
}

#[derive(Deserialize)]
struct HomotopyBundle {
    source: AInftyDatum,
    target: AInftyDatum,
    #[serde(rename = "H0")]
    h0: Vec<TensorEntry>,
    #[serde(rename = "H1")]
    h1: Vec<TensorEntry>,
    #[serde(rename = "K")]
    k: Vec<TensorEntry>,
}

#[derive(Deserialize)]
struct ComposeBundle {
    d0: AInftyDatum,
    d1: AInftyDatum,
    d2: AInftyDatum,
    #[serde(rename = "H0")]
    h0: Vec<TensorEntry>,
    #[serde(rename = "H1")]
    h1: Vec<TensorEntry>,
}

#[derive(Deserialize)]
struct PushTarget {
    target: AInftyDatum,
    #[serde(rename = "H")]
    h: Vec<TensorEntry>,
}

#[derive(Deserialize)]
struct AugmentBundle {
    datum: AInftyDatum,
    augmentation: Augmentation,
    #[serde(default)]
    push: Option<PushTarget>,
}

fn ainfty_one(op: AinftyOp, file: &Path) -> Outcome {
    let (passed, json) = match op {
        AinftyOp::Check => {
            let d: AInftyDatum = read_json(file)?;
            let a = ainfty::check_a_infinity(&d)?;
            let axioms = ainfty::validate_axioms_a(&ainfty::assemble_differential(&d)?);
            (a.passed && axioms.passed, json!({"a_infinity": a, "axioms": axioms}))
        }
        AinftyOp::Map => {
            let b: MapBundle = read_json(file)?;
            let c = ainfty::assemble_differential(&b.target)?;
            let cp = ainfty::assemble_differential(&b.source)?;
            let r = ainfty::check_chain_map(&c, &cp, &h_map(&b.h))?;
            (r.passed, to_json(&r))
        }
        AinftyOp::Homotopy => {
            let b: HomotopyBundle = read_json(file)?;
            let c = ainfty::assemble_differential(&b.target)?;
            let cp = ainfty::assemble_differential(&b.source)?;
            let k = MapDatum { h: Vec::new(), k: b.k };
            let r = ainfty::check_homotopy(&c, &cp, &h_map(&b.h0), &h_map(&b.h1), &k)?;
            (r.passed, to_json(&r))
        }
        AinftyOp::Compose => {
            let b: ComposeBundle = read_json(file)?;
            let r = ainfty::check_composition(&b.d0, &b.d1, &b.d2, &h_map(&b.h0), &h_map(&b.h1))?;
            (r.passed, to_json(&r))
        }
        AinftyOp::Augment => {
            let b: AugmentBundle = read_json(file)?;
            let c = ainfty::assemble_differential(&b.datum)?;
            let r = ainfty::check_augmentation(&c, &b.augmentation)?;
            match &b.push {
                Some(p) => {
                    let ct = ainfty::assemble_differential(&p.target)?;
                    let pushed = ainfty::pushforward(&ct, &c, &h_map(&p.h), &b.augmentation)?;
                    (r.passed && pushed.passed, json!({"augmentation": r, "pushforward": pushed}))
                }
                None => (r.passed, json!({"augmentation": r})),
            }
        }
    };
    let text = format!("{}: {}\n", file.display(), if passed { "pass" } else { "FAIL" });
    Ok(Report { passed, json: json!({"file": file.display().to_string(), "report": json}), text })
}

fn ainfty_cmd(op: AinftyOp, files: &[PathBuf]) -> Outcome {
    let mut reports = Vec::new();
    for f in files {
        reports.push(ainfty_one(op, f)?);
    }
    if reports.len() == 1 {
        return Ok(reports.pop().unwrap());
    }
    Ok(Report {
        passed: reports.iter().all(|r| r.passed),
        text: reports.iter().map(|r| r.text.as_str()).collect(),
        json: Value::Array(reports.into_iter().map(|r| r.json).collect()),
    })
}

fn cohomology_text(r: &ainfty::CohomologyReport) -> String {
    let mut text = format!("HF rank {} ({:?}, precision {})\n", r.total_rank, r.mode, r.precision);
    text.push_str("degree\tclass\tgens\trank\n");
    for row in &r.degrees {
        writeln!(text, "{}\t{}\t{}\t{}", row.degree, row.class, row.generators, row.hf_rank).unwrap();
    }
    text
}

fn floer_hf(file: &Path, rational: bool) -> Outcome {
    let raw: Value = read_json(file)?;
    let datum = if raw.get("points").is_some() {
        let m: MorseDatum = serde_json::from_value(raw)?;
        morse::build_floer_complex(&m)?
    } else {
        serde_json::from_value::<AInftyDatum>(raw)?
    };
    let c = ainfty::assemble_differential(&datum)?;
    let mode = if rational { CoefficientMode::Rational } else { CoefficientMode::Integer };
    let r = ainfty::cohomology(&c, mode)?;
    let euler = ainfty::euler_characteristic(&c).ok();
    let mut text = cohomology_text(&r);
    if let Some(chi) = euler {
        writeln!(text, "euler characteristic {chi}").unwrap();
    }
    Ok(Report { passed: true, json: json!({"cohomology": r, "euler_characteristic": euler}), text })
}

fn floer_sphere(n: i64) -> Outcome {
    if n < 2 {
        return Err(InputError(format!("need n ≥ 2, got {n}")));
    }
    let m3 = morse::sphere_morse(n, 3);
    let d3 = morse::build_floer_complex(&m3)?;
    let a = ainfty::check_a_infinity(&d3)?;
    let unit = morse::unit_law(&m3, "max")?;
    let products = morse::product_table(&m3)?;
    let d2 = morse::build_floer_complex(&morse::sphere_morse(n, 2))?;
    let r = ainfty::cohomology(&ainfty::assemble_differential(&d2)?, CoefficientMode::Integer)?;
    let mut text = cohomology_text(&r);
    for p in &products {
        let out = if p.product.is_empty() {
            "0".to_string()
        } else {
            p.product.iter().map(|(g, c)| format!("{c}·{g}")).collect::<Vec<_>>().join(" + ")
        };
        writeln!(text, "m2({}, {}) = {out}", p.a, p.b).unwrap();
    }
    writeln!(text, "unit max: {unit}\nA∞ relations: {}", a.passed).unwrap();
    let passed = a.passed && unit && r.total_rank == 2;
    let json = json!({
        "n": n,
        "rank": r.total_rank,
        "degrees": r.nonzero_degrees(),
        "products": products,
        "unit": unit,
        "a_infinity": a.passed,
    });
    Ok(Report { passed, json, text })
}

fn sft_bound(q: SftIndexQuery) -> Outcome {
    let b = morse::sft_index_bound(&q)?;
    let text = format!("bound={} satisfies={}\n", b.bound, b.satisfies);
    Ok(Report { passed: b.satisfies, json: to_json(&b), text })
}

fn conductor_exact(file: &Path) -> Outcome {
    let query: ExactnessQuery = read_json(file)?;
    let h = query.h.build()?;
    let k = query.k.build()?;
    let exact = h.is_exact(&k)?;
    let overlap: Vec<usize> = h.image_positions().into_iter().filter(|i| k.map.contains_key(i)).collect();
    let text = format!("exact={exact} overlap={overlap:?}\n");
    Ok(Report { passed: exact, json: json!({"exact": exact, "overlap": overlap}), text })
}
