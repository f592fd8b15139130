//! Command-line front end. Reports go to stdout as JSON, diagnostics to
//! stderr. Exit status: 0 on success, 1 on domain errors, 2 on parse or flag
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::lattice::{LatticePolytope, RaySet};
use crate::minkowski::{cayley_cone, enumerate_decompositions, MinkowskiDecomposition, DEFAULT_SEARCH_BUDGET};
use crate::mirror::{self, ChamberIndex, DiscClass, Sector};
use crate::transition::{default_basis_for, match_transition, BasisSimplex};
use crate::{svg, tropical};

/// Environment variable overriding the default search budget.
pub const BUDGET_ENV: &str = "SYZKIT_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "syzkit", version, about = "Exact SYZ mirrors of smoothings from Minkowski decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All decompositions of a polytope into unimodular simplices.
    Decompose {
        polytope: PathBuf,
        /// Search node cap (default from SYZKIT_BUDGET, else 10^7).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Wall factors, expanded mirror polynomial and coefficient table.
    Mirror {
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Disc potential `z0 * g(z)`.
    Potential {
        #[arg(long)]
        decomposition: PathBuf,
    },
    /// Open Gromov-Witten invariants for a fiber in a chamber.
    Gw {
        #[arg(long)]
        decomposition: PathBuf,
        /// Chamber index in -1..=p (default p, above every wall).
        #[arg(long, allow_negative_numbers = true)]
        chamber: Option<i64>,
        #[arg(long, value_enum)]
        sector: Option<SectorArg>,
        /// Evaluate a single disc class instead of listing all of them.
        #[arg(long)]
        class: Option<PathBuf>,
    },
    /// Match against the toric-resolution family.
    Transition {
        #[arg(long)]
        decomposition: PathBuf,
        /// Basis simplex, e.g. "(0,0),(1,0),(0,1)".
        #[arg(long)]
        basis: Option<String>,
    },
    /// Tropical rays of the wall factors and the dual-fan check.
    Tropical {
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Pixels per lattice unit in the SVG.
        #[arg(long, default_value_t = svg::DEFAULT_SCALE)]
        scale: u32,
    },
    /// Generators of the Cayley cone.
    Cayley {
        #[arg(long)]
        decomposition: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Factored,
    Expanded,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SectorArg {
    #[value(name = "D0")]
    D0,
    #[value(name = "Dinf")]
    Dinf,
}

impl From<SectorArg> for Sector {
    fn from(s: SectorArg) -> Self {
        match s {
            SectorArg::D0 => Sector::D0,
            SectorArg::Dinf => Sector::Dinf,
        }
    }
}

enum Failure {
    Domain(Error),
    Input { code: &'static str, detail: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(detail) => Failure::Input { code: "ParseError", detail },
            e => Failure::Domain(e),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input { code: "IoError", detail: format!("{}: {e}", path.display()) })?;
    serde_json::from_str(&text).map_err(|e| Failure::Input { code: "ParseError", detail: format!("{}: {e}", path.display()) })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn budget_from_env() -> std::result::Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input { code: "ParseError", detail: format!("{BUDGET_ENV}={s:?} is not a node count") }),
        Err(_) => Ok(DEFAULT_SEARCH_BUDGET),
    }
}

fn z_vars(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("z{i}")).collect()
}

fn with_z0(d: usize) -> Vec<String> {
    (0..=d).map(|i| format!("z{i}")).collect()
}

fn display(f: &crate::algebra::LaurentPolynomial, vars: &[String]) -> String {
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    f.display_with_vars(&refs)
}

fn dispatch(cmd: Command, diag: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Decompose { polytope, budget } => {
            let p: LatticePolytope = read_json(&polytope)?;
            let budget = match budget {
                Some(b) => b,
                None => budget_from_env()?,
            };
            let ds = enumerate_decompositions(&p, budget)?;
            Ok(to_value(&ds))
        }
        Command::Mirror { decomposition, format } => {
            let d: MinkowskiDecomposition = read_json(&decomposition)?;
            let m = mirror::syz_mirror(&d);
            let vars = z_vars(d.dim());
            let factors: Vec<String> = m.factored.iter().map(|f| display(f, &vars)).collect();
            Ok(match format {
                Format::Json => json!({
                    "factored": m.factored,
                    "expanded": m.expanded,
                    "table": m.table,
                }),
                Format::Factored => {
                    let text = factors.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*");
                    json!({ "factors": factors, "text": text })
                }
                Format::Expanded => json!({ "text": display(&m.expanded, &vars), "polynomial": m.expanded }),
            })
        }
        Command::Potential { decomposition } => {
            let d: MinkowskiDecomposition = read_json(&decomposition)?;
            let w = mirror::disc_potential(&d);
            Ok(json!({ "text": display(&w, &with_z0(d.dim())), "polynomial": w }))
        }
        Command::Gw { decomposition, chamber, sector, class } => {
            let d: MinkowskiDecomposition = read_json(&decomposition)?;
            let l = match chamber {
                Some(l) => ChamberIndex::new(l, &d)?,
                None => ChamberIndex::top(&d),
            };
            if let Some(path) = class {
                let mut beta: DiscClass = read_json(&path)?;
                if let Some(s) = sector {
                    beta.sector = s.into();
                }
                let n = mirror::gw_invariant(&d, l, &beta)?;
                if beta.maslov_index() == 0 {
                    let _ = writeln!(diag, "note: class has Maslov index 0; only Maslov-2 classes carry invariants");
                }
                return Ok(json!({
                    "chamber": l.value(),
                    "class": beta,
                    "maslov_index": beta.maslov_index(),
                    "boundary": beta.boundary(&d)?,
                    "invariant": n,
                }));
            }
            let sectors: Vec<Sector> = match sector {
                Some(s) => vec![s.into()],
                None => vec![Sector::D0, Sector::Dinf],
            };
            let mut listing = Vec::new();
            for s in sectors {
                let classes = mirror::enumerate_gw_classes(&d, l, s)?;
                let counts = mirror::count_by_boundary(&d, &classes)?;
                let entries: Vec<Value> = counts.iter().map(|(p, n)| json!({ "point": p, "n": crate::json::JsonInt(n.clone()) })).collect();
                listing.push(json!({ "sector": s, "classes": classes, "table": { "entries": entries } }));
            }
            let (u, v) = mirror::chamber_uv(&d, l)?;
            let vars = with_z0(d.dim());
            Ok(json!({ "chamber": l.value(), "sectors": listing, "u": display(&u, &vars), "v": display(&v, &vars) }))
        }
        Command::Transition { decomposition, basis } => {
            let d: MinkowskiDecomposition = read_json(&decomposition)?;
            let b = match basis {
                Some(text) => text.parse::<BasisSimplex>()?,
                None => default_basis_for(&d)?,
            };
            Ok(to_value(&match_transition(&d, &b)?))
        }
        Command::Tropical { decomposition, svg: svg_out, scale } => {
            let d: MinkowskiDecomposition = read_json(&decomposition)?;
            let mut union = RaySet::new();
            let mut walls = Vec::new();
            for r in d.summands() {
                let rays = tropical::tropical_rays(r)?;
                union = union.union(&rays);
                walls.push(json!({ "summand": r, "rays": rays, "chambers": tropical::wall_chambers(r)? }));
            }
            let fan = tropical::inner_normal_fan_rays(&d)?;
            if let Some(path) = svg_out {
                let text = svg::render(d.polytope(), &union, scale)?;
                fs::write(&path, text).map_err(|e| Failure::Input { code: "IoError", detail: format!("{}: {e}", path.display()) })?;
            }
            Ok(json!({
                "walls": walls,
                "union": union,
                "normal_fan": fan,
                "dual_fan_check": union == fan,
            }))
        }
        Command::Cayley { decomposition } => {
            let d: MinkowskiDecomposition = read_json(&decomposition)?;
            Ok(to_value(&cayley_cone(&d)))
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) {
    let text = serde_json::to_string(v).expect("json values serialize");
    let _ = writeln!(out, "{text}");
}

/// Runs the CLI on `args` (including the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, err) {
        Ok(v) => {
            emit(out, &v);
            0
        }
        Err(Failure::Domain(e)) => {
            emit(out, &json!({ "error": e.code(), "detail": e.to_string() }));
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Input { code, detail }) => {
            emit(out, &json!({ "error": code, "detail": detail }));
            let _ = writeln!(err, "error: {detail}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(args, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}
