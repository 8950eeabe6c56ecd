use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use su3_core::engine::DEFAULT_GROUP_CAP;
use su3_core::verify::{run_suite, VerifyError};
use su3_core::{fusion, Catalog, CatalogError, EngineError, Mat3, MatrixGroup, Subgroup};

#[derive(Parser)]
#[command(name = "su3", version, about = "Exact checks on finite SU(3) subgroups of order 648")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Limits {
    /// Maximum number of elements a closure may reach.
    #[arg(long, env = "SU3_CAP", default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
    /// Cyclotomic conductor for catalog matrices; a multiple of 72.
    #[arg(long, default_value_t = 72)]
    conductor: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Structure report for a catalog group or a generator file.
    Group {
        #[arg(long, conflicts_with = "gens", required_unless_present = "gens")]
        name: Option<String>,
        /// JSON file holding generator matrices.
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run verification items: `all`, an item id, an id prefix or a family.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "SU3_CAP", default_value_t = DEFAULT_GROUP_CAP)]
        cap: usize,
    },
    /// Write a catalog group with all elements and words as JSON.
    Export {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Read an exported group and revalidate it.
    Import {
        path: PathBuf,
        #[arg(long, env = "SU3_CAP", default_value_t = DEFAULT_GROUP_CAP)]
        cap: usize,
    },
    /// Catalog queries.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Level-4 recoupling derivation of the FUM generator.
    Fusion {
        /// Print the derived matrix and its SU(3) normalization.
        #[arg(long, required_unless_present = "symbols")]
        derive_fum: bool,
        /// Print the recoupling factors behind each matrix entry.
        #[arg(long)]
        symbols: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the named generator sets.
    List {
        #[arg(long, default_value_t = 72)]
        conductor: u32,
    },
}

#[derive(Debug, Error)]
enum CliError {
    /// Bad input: unknown names, unreadable or malformed files.
    #[error("{0}")]
    Input(String),
    /// A check failed or a resource cap was hit.
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> CliError {
        match e {
            EngineError::Malformed(_) | EngineError::NoGenerators | EngineError::Catalog(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> Result<u8, CliError> {
    let text = match cmd {
        Command::Group { name, gens, json, limits } => {
            let (label, g) = match (name, gens) {
                (Some(n), _) => {
                    let cat = Catalog::new(limits.conductor)?;
                    let set = cat.by_name(&n)?;
                    (n, MatrixGroup::generate(&set.generators, limits.cap)?)
                }
                (None, Some(path)) => {
                    let mats = read_generators(&path)?;
                    (path.display().to_string(), MatrixGroup::generate(&mats, limits.cap)?)
                }
                (None, None) => return Err(CliError::Input("one of --name or --gens is required".into())),
            };
            let report = group_report(&label, &g)?;
            if json {
                pretty(&report)
            } else {
                group_lines(&report)
            }
        }
        Command::Verify { suite, json, out: file, cap } => {
            let report = run_suite(&suite, cap)?;
            let text = if json { pretty(&report.to_json()) } else { report.to_lines() };
            if let Some(path) = file {
                fs::write(&path, &text).map_err(|e| io_err(&path, e))?;
            }
            write_out(out, &text)?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
        Command::Export { name, out: path, limits } => {
            let cat = Catalog::new(limits.conductor)?;
            let set = cat.by_name(&name)?;
            let g = MatrixGroup::generate(&set.generators, limits.cap)?;
            fs::write(&path, pretty(&g.to_json(&name))).map_err(|e| io_err(&path, e))?;
            format!("exported\t{name}\t{}\t{}\n", g.order(), path.display())
        }
        Command::Import { path, cap } => {
            let raw = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            let v: Value =
                serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let (name, g) = MatrixGroup::from_json(&v, cap)?;
            format!("imported\t{name}\t{}\n", g.order())
        }
        Command::Catalog { command: CatalogCommand::List { conductor } } => {
            let cat = Catalog::new(conductor)?;
            let mut s = String::new();
            for set in cat.list() {
                s.push_str(&format!("{}\t{}\t{}\n", set.name, set.gen_names.join(","), set.provenance));
            }
            s.push_str("c{n}-{a}-{b}\te,f\tseries C pattern\n");
            s.push_str("d{n}-{a}-{b}-{d}-{r}-{s}\te,f,gt\tseries D pattern\n");
            s
        }
        Command::Fusion { derive_fum, symbols } => fusion_text(derive_fum, symbols)?,
    };
    write_out(out, &text)?;
    Ok(0)
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Failure(e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Accepts an exported group object or a bare array of matrices.
fn read_generators(path: &Path) -> Result<Vec<Mat3>, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let v: Value = serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let conductor = v.get("conductor").cloned().unwrap_or(json!(72));
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Input("generator file has no \"generators\" array".into()))?,
        _ => return Err(CliError::Input("generator file must be an array or an object".into())),
    };
    list.iter()
        .map(|m| {
            let mut m = m.clone();
            if m.is_object() && m.get("conductor").is_none() {
                m["conductor"] = conductor.clone();
            }
            Mat3::from_json(&m).map_err(|e| CliError::Input(e.to_string()))
        })
        .collect()
}

fn prime_factors(mut n: usize) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n as u64);
    }
    ps
}

/// Order, spectrum, centre, Sylow counts, tracked normal subgroups with
/// their inclusions, and the 2-Sylow type when the 2-part is 8.
fn group_report(name: &str, g: &MatrixGroup) -> Result<Value, CliError> {
    let mut tracked: Vec<(String, Subgroup<'_>)> = vec![("Z".into(), g.center())];
    let mut sylow_counts = serde_json::Map::new();
    for p in prime_factors(g.order()) {
        let syl = g.sylow(p)?;
        sylow_counts.insert(p.to_string(), json!(syl.len()));
        let core = syl.iter().skip(1).fold(syl[0].clone(), |acc, s| acc.intersection(s));
        tracked.push((format!("O{p}"), core));
        tracked.push((format!("S{p}"), g.generated_by_sylows(p)?));
    }
    tracked.push(("G".into(), g.whole()));
    let subgroups: Vec<Value> = tracked
        .iter()
        .map(|(label, s)| {
            let within: Vec<&str> =
                tracked.iter().filter(|(l, t)| l != label && s.is_subgroup_of(t)).map(|(l, _)| l.as_str()).collect();
            json!({ "label": label, "order": s.order(), "normal": s.is_normal(), "within": within })
        })
        .collect();
    let two_sylow = match g.two_sylow_type() {
        Ok(t) => json!(t.to_string()),
        Err(EngineError::TwoPart(_) | EngineError::PrimeNotDividing { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let spectrum: serde_json::Map<String, Value> =
        g.spectrum().iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Ok(json!({
        "name": name,
        "conductor": g.conductor(),
        "order": g.order(),
        "spectrum": spectrum,
        "center": g.center().order(),
        "sylow_counts": sylow_counts,
        "subgroups": subgroups,
        "two_sylow_type": two_sylow,
    }))
}

fn group_lines(r: &Value) -> String {
    let pairs = |v: &Value| -> String {
        let mut items: Vec<(u64, String)> = v
            .as_object()
            .map(|o| o.iter().map(|(k, n)| (k.parse().unwrap_or(0), format!("{k}:{n}"))).collect())
            .unwrap_or_default();
        items.sort();
        items.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" ")
    };
    let mut s = format!(
        "name\t{}\nconductor\t{}\norder\t{}\nspectrum\t{}\ncenter\t{}\nsylow\t{}\n",
        r["name"].as_str().unwrap_or(""),
        r["conductor"],
        r["order"],
        pairs(&r["spectrum"]),
        r["center"],
        pairs(&r["sylow_counts"]),
    );
    for sg in r["subgroups"].as_array().into_iter().flatten() {
        let within: Vec<&str> = sg["within"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        s.push_str(&format!(
            "subgroup\t{}\t{}\t{}\twithin {}\n",
            sg["label"].as_str().unwrap_or(""),
            sg["order"],
            if sg["normal"] == json!(true) { "normal" } else { "not normal" },
            if within.is_empty() { "-".to_string() } else { within.join(",") },
        ));
    }
    s.push_str(&format!("two_sylow\t{}\n", r["two_sylow_type"].as_str().unwrap_or("n/a")));
    s
}

fn fusion_text(derive_fum: bool, symbols: bool) -> Result<String, CliError> {
    let fail = |e: su3_core::FusionError| CliError::Failure(e.to_string());
    let approx = |x: &fusion::SurdNum| format!("{:.12}", x.approx().0);
    let mut s = String::new();
    if symbols {
        let labels = 0..=fusion::LEVEL;
        for a in labels.clone() {
            s.push_str(&format!("delta\t{a}\t{}\n", fusion::delta(a).map_err(fail)?));
        }
        for a in labels.clone() {
            for b in a..=fusion::LEVEL {
                for c in b..=fusion::LEVEL {
                    if fusion::is_admissible(a, b, c) {
                        let t = fusion::theta(a, b, c).map_err(fail)?;
                        s.push_str(&format!("theta\t{a} {b} {c}\t{t}\t{}\n", approx(&t)));
                    }
                }
            }
        }
        let base = u32::from(fusion::LEVEL) + 1;
        let all: Vec<[u8; 6]> = (0..base.pow(6))
            .map(|n| std::array::from_fn(|k| (n / base.pow(5 - k as u32) % base) as u8))
            .filter(|l: &[u8; 6]| fusion::TET_FACES.iter().all(|f| fusion::is_admissible(l[f[0]], l[f[1]], l[f[2]])))
            .collect();
        for l in all {
            let t = fusion::tet(l).map_err(fail)?;
            let six = fusion::six_j_unitary(l[0], l[1], l[2], l[3], l[4], l[5]).map_err(fail)?;
            let key = l.map(|x| x.to_string()).join(" ");
            s.push_str(&format!("tet\t{key}\t{t}\t{}\tsixj\t{six}\t{}\n", approx(&t), approx(&six)));
        }
        for t in fusion::fusion_terms().map_err(fail)? {
            let moves: Vec<String> = t.moves.iter().map(|m| m.to_string()).collect();
            s.push_str(&format!(
                "term\tk={} i={}\tmoves {}\tloop {}\tcoefficient {}\n",
                t.k,
                t.i,
                moves.join(" * "),
                t.loop_factor,
                t.coefficient
            ));
        }
    }
    if derive_fum {
        let m = fusion::derive_fusion_matrix().map_err(fail)?;
        let n = fusion::su3_normalize(&m).map_err(fail)?;
        let matches = n == Catalog::default().fum();
        s.push_str(&format!("derived\n{m}\nnormalized\n{n}\nmatches_fum\t{matches}\n"));
        if !matches {
            return Err(CliError::Failure(format!("{s}normalized matrix differs from FUM")));
        }
    }
    Ok(s)
}
