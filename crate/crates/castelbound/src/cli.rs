//! `castelbound` command line.
//!
//! Exit codes: 0 on success, 2 for argument or config errors, 3 for domain errors.
//! Errors go to stderr as `{"error": {"kind": ..., "message": ...}}`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds;
use crate::certifier::{explain, Certifier};
use crate::constants::{self, Solver};
use crate::error::{Error, Result};
use crate::gvseries::{self, GVTable, PTTable, QWindow};
use crate::numerics::Rat;
use crate::svg;
use crate::targets::{ScriptChoice, TargetThreefold};
use crate::tiltwalls::{self, ChernH, Polarization, WallGeometry};

#[derive(Parser, Debug)]
#[command(name = "castelbound", version, about = "Genus bounds, tilt walls and GV/PT checks for threefolds")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Numerical walls for an ideal sheaf or raw class.
    Walls(WallsArgs),
    /// Closed-form genus bounds.
    Bound(BoundArgs),
    /// Smallest-integer constants with minimality witnesses.
    Constants(ConstantsArgs),
    /// Certified low-degree genus bounds for a named target.
    Certify(CertifyArgs),
    /// GV / PT conversion and checks.
    Gvpt(GvptArgs),
    /// Vanishing predicates.
    Vanish(VanishArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    LineBundles,
    Curves,
    All,
}

#[derive(Args, Debug)]
pub struct WallsArgs {
    #[arg(long)]
    pub d: Option<i64>,
    #[arg(long)]
    pub g: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub n: i64,
    /// Raw class "c0,c1,c2[,c3|*]".
    #[arg(long, conflicts_with_all = ["d", "g"])]
    pub ch: Option<String>,
    #[arg(long, value_enum, default_value_t = Family::All)]
    pub family: Family,
    #[arg(long)]
    pub k_max: Option<i64>,
    #[arg(long)]
    pub d1_max: Option<i64>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Epsilon,
    Planar,
    Surface,
    Bmt,
    Asymptotic,
    Conjecture,
    Optimal,
    Cy4,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub kind: BoundKind,
    #[arg(long, conflicts_with = "d_max")]
    pub d: Option<i64>,
    #[arg(long)]
    pub d_max: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b0: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub m: i64,
    #[arg(long, default_value_t = 1)]
    pub s: i64,
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Only {
    N0,
    N1,
    NoWall,
    NNl,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long, value_enum)]
    pub only: Option<Only>,
    /// Solve the full chain for a target's polarization.
    #[arg(long)]
    pub target: Option<String>,
    /// Solve the full chain for `--n` with these m_H and s.
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub s: Option<i64>,
    /// JSON or TOML file mapping k to the divisor invariant.
    #[arg(long = "nH-map")]
    pub nh_map: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub target: String,
    #[arg(long, conflicts_with = "d")]
    pub max_d: Option<i64>,
    #[arg(long)]
    pub d: Option<i64>,
    #[arg(long)]
    pub explain: bool,
    #[arg(long, default_value = "paper")]
    pub script: String,
}

#[derive(Args, Debug)]
pub struct GvptArgs {
    #[command(subcommand)]
    pub cmd: GvptCommand,
}

#[derive(Subcommand, Debug)]
pub enum GvptCommand {
    /// GV table (g,d,value) to PT table (s,d,value).
    ToPt {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// PT table (s,d,value) back to GV.
    ToGv {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Round trip and vanishing consistency of a GV table.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long = "NH")]
        nh: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct VanishArgs {
    #[command(subcommand)]
    pub cmd: VanishCommand,
}

#[derive(Subcommand, Debug)]
pub enum VanishCommand {
    Gv {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long = "NH")]
        nh: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        d: String,
    },
    Pt {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long = "NH")]
        nh: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        d: String,
    },
    Cy4 {
        #[arg(long)]
        n: i64,
        #[arg(long = "NH")]
        nh: String,
        #[arg(long)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
}

/// Result of one command: a JSON document and, for tables, CSV rows.
struct Output {
    json: Value,
    csv: Option<String>,
}

impl Output {
    fn json(v: impl Serialize) -> Result<Output> {
        Ok(Output { json: to_value(v)?, csv: None })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn big(s: &str, what: &'static str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::Parse { what, input: s.to_string() })
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Config(format!("missing --{flag}")))
}

/// Runs the CLI and returns `(exit code, stdout, stderr)`.
pub fn run_capture<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 2,
            };
            if code == 0 {
                return (0, e.to_string(), String::new());
            }
            let err = json!({"error": {"kind": "Parse", "message": e.to_string().trim_end()}});
            return (2, String::new(), format!("{err}\n"));
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(out) => {
            let text = match (format, out.csv) {
                (Format::Csv, Some(csv)) => csv,
                _ => serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n",
            };
            (0, text, String::new())
        }
        Err(e) => {
            let code = if e.is_parse() { 2 } else { 3 };
            let err = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            (code, String::new(), format!("{err}\n"))
        }
    }
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_capture(args);
    print!("{out}");
    eprint!("{err}");
    code
}

fn execute(cli: Cli) -> Result<Output> {
    match cli.cmd {
        Command::Walls(a) => cmd_walls(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Constants(a) => cmd_constants(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Gvpt(a) => cmd_gvpt(a.cmd),
        Command::Vanish(a) => cmd_vanish(a.cmd),
    }
}

#[derive(Serialize)]
struct WallRow {
    family: &'static str,
    k: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    d1: Option<i64>,
    wall: Option<WallGeometry>,
    rightmost: Option<String>,
}

fn cmd_walls(a: WallsArgs) -> Result<Output> {
    if a.n < 1 {
        return Err(Error::Config("--n must be positive".into()));
    }
    let class = match (&a.ch, a.d) {
        (Some(s), _) => ChernH::parse(s)?,
        (None, Some(d)) => {
            if d < 1 {
                return Err(Error::Config("--d must be positive".into()));
            }
            match a.g {
                Some(g) if a.n == 1 => tiltwalls::ideal_class_p3(d, g),
                _ => ChernH::truncated(Rat::one(), Rat::zero(), Rat::new(-d, a.n)),
            }
        }
        (None, None) => return Err(Error::Config("give --d or --ch".into())),
    };
    // degree in H-normalized units: ch_2 = -d/n
    let deg = -(&class.c2 * Rat::int(a.n));
    let deg_i = if deg.is_integer() { bounds::floor_i64(&deg) } else { 0 };
    let k_max = a.k_max.unwrap_or_else(|| tiltwalls::k_max(deg_i.max(0), a.n).max(1) + 1);
    let d1_max = a.d1_max.unwrap_or((deg_i - 1).max(0));
    let mut rows = Vec::new();
    let mut labeled = Vec::new();
    let mut push = |family, k, d1: Option<i64>, w: &ChernH| -> Result<()> {
        let wall = tiltwalls::numerical_wall(&class, w)?;
        let rightmost = match &wall {
            Some(g @ WallGeometry::Semicircle { .. }) => Some(tiltwalls::wall_rightmost(g)?.to_string()),
            _ => None,
        };
        if let Some(g) = &wall {
            let label = match d1 {
                Some(d1) => format!("I_C1(-{k}), d1={d1}"),
                None => format!("O(-{k})"),
            };
            labeled.push(svg::LabeledWall { label, wall: g.clone() });
        }
        rows.push(WallRow { family, k, d1, wall, rightmost });
        Ok(())
    };
    for k in 1..=k_max {
        let kr = Rat::int(k);
        if a.family != Family::Curves {
            push("line_bundle", k, None, &ChernH::line_bundle(&kr))?;
        }
        if a.family != Family::LineBundles {
            for d1 in 1..=d1_max {
                let sub = ChernH::truncated(Rat::one(), Rat::zero(), Rat::new(-d1, a.n));
                push("curve", k, Some(d1), &tiltwalls::twist(&sub, &kr))?;
            }
        }
    }
    let b_d = (deg_i >= 1).then(|| tiltwalls::b_d(deg_i, a.n));
    if let Some(path) = &a.svg {
        let doc = svg::render(&svg::Diagram { class: &class, walls: &labeled, b_d: b_d.clone() });
        fs::write(path, doc).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    }
    let mut csv = String::from("family,k,d1,kind,center,radius_sq,rightmost\n");
    for r in &rows {
        let d1 = r.d1.map(|v| v.to_string()).unwrap_or_default();
        let (kind, c, rs) = match &r.wall {
            Some(WallGeometry::Semicircle { center, radius_sq }) => ("semicircle", center.to_string(), radius_sq.to_string()),
            Some(WallGeometry::Vertical { b }) => ("vertical", b.to_string(), String::new()),
            None => ("none", String::new(), String::new()),
        };
        csv.push_str(&format!("{},{},{},{},{},{},{}\n", r.family, r.k, d1, kind, c, rs, r.rightmost.clone().unwrap_or_default()));
    }
    let json = json!({
        "class": to_value(&class)?,
        "b_d": b_d.map(|s| s.to_string()),
        "walls": to_value(&rows)?,
    });
    Ok(Output { json, csv: Some(csv) })
}

fn cmd_bound(a: BoundArgs) -> Result<Output> {
    let degrees: Vec<i64> = match (a.d, a.d_max) {
        (Some(d), _) => vec![d],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => return Err(Error::Config("give --d or --d-max".into())),
    };
    if degrees.iter().any(|&d| d < 1) || a.m < 1 || a.s < 1 {
        return Err(Error::Config("degrees, --m and --s must be positive".into()));
    }
    let target = a.target.as_deref().map(TargetThreefold::resolve).transpose()?;
    let n = match (a.n, &target) {
        (Some(n), _) => n,
        (None, Some(t)) => t.n,
        (None, None) if a.kind == BoundKind::Planar || a.kind == BoundKind::Bmt => 1,
        _ => return Err(Error::Config("missing --n".into())),
    };
    if n < 1 {
        return Err(Error::Config("--n must be positive".into()));
    }
    let b0: Option<Rat> = a.b0.as_deref().map(str::parse).transpose()?;
    let mut rows = Vec::new();
    for d in degrees {
        let v = match a.kind {
            BoundKind::Epsilon => bounds::epsilon(d, n),
            BoundKind::Planar => Rat::int(bounds::planar_bound(d)),
            BoundKind::Surface => bounds::surface_bound(d, n),
            BoundKind::Bmt => bounds::bmt_bound(d, b0.as_ref().ok_or_else(|| Error::Config("missing --b0".into()))?)?,
            BoundKind::Asymptotic => bounds::asymptotic_main_bound(d, n, a.m, a.s),
            BoundKind::Conjecture => bounds::castelnuovo_conjecture_bound(d, n),
            BoundKind::Optimal => bounds::optimal_bound(target.as_ref().ok_or_else(|| Error::Config("missing --target".into()))?, d)?,
            BoundKind::Cy4 => bounds::cy4_ch3_bound(d, n),
        };
        rows.push(json!({"d": d, "value": v.to_string(), "floor": v.floor().to_string()}));
    }
    let mut csv = String::from("d,value,floor\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{}\n", r["d"], r["value"].as_str().unwrap_or(""), r["floor"].as_str().unwrap_or("")));
    }
    let json = json!({"kind": format!("{:?}", a.kind).to_lowercase(), "n": n, "rows": rows});
    Ok(Output { json, csv: Some(csv) })
}

fn load_map(path: &Path) -> Result<BTreeMap<i64, i64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let raw: BTreeMap<String, i64> = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?
    } else {
        serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?
    };
    raw.into_iter()
        .map(|(k, v)| k.trim().parse().map(|k| (k, v)).map_err(|_| Error::Config(format!("bad map key {k:?}"))))
        .collect()
}

fn cmd_constants(a: ConstantsArgs) -> Result<Output> {
    let chain_pol = if let Some(t) = &a.target {
        let t = TargetThreefold::resolve(t)?;
        Some(Polarization::new(t.n, t.s, t.m_h, t.name)?)
    } else if a.m.is_some() || a.s.is_some() || a.nh_map.is_some() {
        Some(Polarization::new(need(a.n, "n")?, a.s.unwrap_or(1), a.m.unwrap_or(1), "cli")?)
    } else {
        None
    };
    if let Some(pol) = chain_pol {
        let map = a.nh_map.as_deref().map(load_map).transpose()?;
        let chain = constants::solve_theorem_chain(&pol, map.as_ref())?;
        let gv = constants::gv_degree_threshold(pol.n, pol.m_h, &chain.n_h_report.value);
        let json = json!({
            "polarization": {"n": pol.n, "s": pol.s, "m_h": pol.m_h, "label": pol.label},
            "chain": to_value(&chain)?,
            "gv_degree_threshold": to_value(&gv)?,
            "gv_inequality": constants::gv_vanish_inequality(pol.n, pol.m_h),
        });
        return Ok(Output { json, csv: None });
    }
    let n = need(a.n, "n")?;
    if n < 1 {
        return Err(Error::Config("--n must be positive".into()));
    }
    let mut solver = Solver::new();
    let reports = match a.only {
        Some(Only::N0) => vec![solver.n0(n)?],
        Some(Only::N1) => vec![solver.n1(n, need(a.l, "l")?)?],
        Some(Only::NoWall) => vec![constants::solve_no_wall(n, need(a.l, "l")?)?],
        Some(Only::NNl) => vec![solver.n_nl(n, need(a.l, "l")?)?],
        None => {
            let l = need(a.l, "l")?;
            vec![solver.n0(n)?, solver.n1(n, l)?, solver.n_nl(n, l)?]
        }
    };
    let mut csv = String::from("name,value\n");
    for r in &reports {
        csv.push_str(&format!("{},{}\n", r.name, r.value));
    }
    let json = if reports.len() == 1 { to_value(&reports[0])? } else { json!({"reports": to_value(&reports)?}) };
    Ok(Output { json, csv: Some(csv) })
}

fn cmd_certify(a: CertifyArgs) -> Result<Output> {
    let target = TargetThreefold::resolve(&a.target)?;
    let choice: ScriptChoice = a.script.parse()?;
    let degrees: Vec<i64> = match (a.d, a.max_d) {
        (Some(d), _) => vec![d],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => (1..=target.d1).collect(),
    };
    let mut cert = Certifier::new(&target, choice);
    let mut rows = Vec::new();
    let mut csv = String::from("d,bound,optimal\n");
    for d in degrees {
        let c = cert.certify(d)?;
        let optimal = bounds::optimal_bound(&target, d).ok().map(|v| v.floor().to_string());
        csv.push_str(&format!("{},{},{}\n", d, c.bound, optimal.clone().unwrap_or_default()));
        let mut row = json!({"d": d, "bound": c.bound.to_string(), "optimal": optimal});
        if a.explain {
            row["trace"] = Value::String(explain(&c));
            row["tree"] = to_value(&c.tree)?;
        }
        rows.push(row);
    }
    let json = json!({"target": target.name, "script": a.script, "D1": target.d1, "rows": rows});
    Ok(Output { json, csv: Some(csv) })
}

fn read_file(p: &Path) -> Result<fs::File> {
    fs::File::open(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
}

fn cmd_gvpt(c: GvptCommand) -> Result<Output> {
    match c {
        GvptCommand::ToPt { input, window } => {
            let gv = GVTable::from_csv(read_file(&input)?)?;
            let w: QWindow = window.parse()?;
            let pt = gvseries::pt_from_gv(&gv, w);
            Ok(Output { json: to_value(&pt)?, csv: Some(pt.to_csv()) })
        }
        GvptCommand::ToGv { input, window } => {
            let w = window.as_deref().map(str::parse).transpose()?;
            let pt = PTTable::from_csv(read_file(&input)?, w)?;
            let gv = gvseries::gv_from_pt(&pt)?;
            Ok(Output { json: to_value(&gv)?, csv: Some(gv.to_csv()) })
        }
        GvptCommand::Check { input, window, n, m, nh } => {
            let gv = GVTable::from_csv(read_file(&input)?)?;
            let w: QWindow = window.parse()?;
            let pt = gvseries::pt_from_gv(&gv, w);
            let round_trip = gvseries::gv_from_pt(&pt).map(|back| back.same_entries(&gv));
            let mut json = json!({
                "round_trip": match &round_trip { Ok(ok) => json!(ok), Err(e) => json!(e.to_string()) },
                "entries": gv.entries.len(),
            });
            if let (Some(n), Some(nh)) = (n, nh) {
                let rep = gvseries::vanishing_consistency(&gv, n, m, &big(&nh, "N_H")?);
                json["vanishing"] = to_value(&rep)?;
                json["inequality"] = json!(constants::gv_vanish_inequality(n, m));
            }
            Output::json(json)
        }
    }
}

fn cmd_vanish(c: VanishCommand) -> Result<Output> {
    let json = match c {
        VanishCommand::Gv { n, m, nh, g, d } => {
            let (nh, g, d) = (big(&nh, "N_H")?, big(&g, "g")?, big(&d, "d")?);
            let t = constants::gv_degree_threshold(n, m, &nh);
            json!({
                "vanishes": constants::gv_vanish(&g, &d, n, m, &nh),
                "inequality": constants::gv_vanish_inequality(n, m),
                "rhs": bounds::asymptotic_main_bound(d.clone(), n, m, 1).to_string(),
                "degree_threshold": to_value(&t)?,
            })
        }
        VanishCommand::Pt { n, m, nh, s, d } => {
            let (nh, s, d) = (big(&nh, "N_H")?, big(&s, "s")?, big(&d, "d")?);
            let rhs = -(bounds::asymptotic_main_bound(d.clone(), n, m, 1) - Rat::one());
            json!({"vanishes": constants::pt_dt_vanish(&s, &d, n, m, &nh), "rhs": rhs.to_string(), "condition": "d >= N_H and s < rhs"})
        }
        VanishCommand::Cy4 { n, nh, d, beta } => {
            let (nh, d) = (big(&nh, "N_H")?, big(&d, "d")?);
            let beta: Rat = beta.parse()?;
            let rhs = -bounds::cy4_ch3_bound(d.clone(), n);
            json!({"empty": constants::cy4_empty(&d, &beta, n, &nh), "rhs": rhs.to_string(), "condition": "d >= N_H and beta.H < rhs"})
        }
    };
    Output::json(json)
}
