//! Command-line front end: classification, equilibrium solves, cascades,
//! sweeps, the bounded-quality UC model, and figure-ready CSV exports.
//!
//! Output is deterministic: CSV uses `.` decimals, Unix line endings, and a
//! fixed number of significant digits (12 unless `QOSM_PRECISION` overrides
//! it); JSON uses a stable key order. Exit codes: 0 success, 2 parameter
//! error, 3 regime mismatch, 4 I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use qosm::{
    classify_regime, first_threshold, price_ratio_limit, rhs, solve_price, sweep_c,
    traffic_ratio_limit, uc_equilibrium, uc_threshold, BoundedUcConfig, CascadeSnapshot,
    FirstThreshold, Multiplicity, PriceResponse, QualityDistribution, SolveOutcome, UcOutcome,
    DEFAULT_MAX_CLASSES,
};

const DEFAULT_SIG_DIGITS: usize = 12;

#[derive(Parser)]
#[command(
    name = "qosm",
    version,
    about = "Quality-differentiated service markets under economies of scale"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the market regime (UC / BDC / UDC) and report q0, the scaling
    /// exponent, and the asymptotic ratios.
    Classify(MarketArgs),
    /// Solve one equilibrium at the given c, at the competitive quality q0 or
    /// at an explicit --b.
    Solve(MarketArgs),
    /// Enumerate the classes offered at one c or across a c grid.
    Cascade(MarketArgs),
    /// Sweep a decreasing c grid and emit one row per (c, class).
    Sweep(MarketArgs),
    /// Bounded-quality UC model: sweep c across the no-service threshold.
    Uc(MarketArgs),
    /// Write the standard set of figure CSV files into a directory.
    Figures(MarketArgs),
    /// Report q0, delta, and the price/traffic ratio limits as JSON.
    RatioLimits(MarketArgs),
}

/// Flags shared by every subcommand. A JSON config file may supply any of
/// them; explicit flags win.
#[derive(Args, Debug, Clone, Default)]
struct MarketArgs {
    /// Power-law exponent of the quality distribution f(q) = q^alpha.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Quality cap q_m (> 1) for the bounded-quality UC model.
    #[arg(long)]
    qm: Option<f64>,
    /// Economies-of-scale exponent, 0 < s < 1.
    #[arg(long)]
    s: Option<f64>,
    /// Price-response family.
    #[arg(long, value_parser = ["rational", "exp", "gauss"])]
    h: Option<String>,
    /// Decay exponent of the rational family (> 0).
    #[arg(long)]
    beta: Option<f64>,
    /// Price scale of the rational family (> 0).
    #[arg(long)]
    a: Option<f64>,
    /// Technology constant (> 0).
    #[arg(long)]
    c: Option<f64>,
    /// First (largest) value of a decreasing c grid.
    #[arg(long = "c-start")]
    c_start: Option<f64>,
    /// Last (smallest) value of the c grid.
    #[arg(long = "c-stop")]
    c_stop: Option<f64>,
    /// Number of grid points.
    #[arg(long = "c-count")]
    c_count: Option<usize>,
    /// Space the c grid logarithmically instead of linearly.
    #[arg(long = "c-log")]
    c_log: bool,
    /// Enumeration cap for the (infinite) UDC class list.
    #[arg(long = "max-classes")]
    max_classes: Option<usize>,
    /// Explicit quality to solve at (solve only; defaults to q0).
    #[arg(long)]
    b: Option<f64>,
    /// Output format for row-oriented commands.
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Output path (directory for `figures`); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file supplying any of the parameters above.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// The same parameters as [`MarketArgs`], as accepted in a config file.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    alpha: Option<f64>,
    qm: Option<f64>,
    s: Option<f64>,
    h: Option<String>,
    beta: Option<f64>,
    a: Option<f64>,
    c: Option<f64>,
    c_start: Option<f64>,
    c_stop: Option<f64>,
    c_count: Option<usize>,
    c_log: Option<bool>,
    max_classes: Option<usize>,
    b: Option<f64>,
    format: Option<String>,
}

enum CliError {
    Param(String),
    Regime(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Param(_) => 2,
            CliError::Regime(_) => 3,
            CliError::Io(_) => 4,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Param(m) | CliError::Regime(m) | CliError::Io(m) => m,
        }
    }
}

impl From<qosm::Error> for CliError {
    fn from(err: qosm::Error) -> Self {
        match err {
            qosm::Error::RequiresDcRegime { .. } => CliError::Regime(err.to_string()),
            other => CliError::Param(other.to_string()),
        }
    }
}

/// Resolved parameters after merging flags over the config file.
struct Params {
    args: MarketArgs,
    digits: usize,
}

impl Params {
    fn resolve(mut args: MarketArgs) -> Result<Self, CliError> {
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
            let file: ConfigFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Param(format!("invalid config {}: {e}", path.display())))?;
            args.alpha = args.alpha.or(file.alpha);
            args.qm = args.qm.or(file.qm);
            args.s = args.s.or(file.s);
            args.h = args.h.or(file.h);
            args.beta = args.beta.or(file.beta);
            args.a = args.a.or(file.a);
            args.c = args.c.or(file.c);
            args.c_start = args.c_start.or(file.c_start);
            args.c_stop = args.c_stop.or(file.c_stop);
            args.c_count = args.c_count.or(file.c_count);
            args.c_log = args.c_log || file.c_log.unwrap_or(false);
            args.max_classes = args.max_classes.or(file.max_classes);
            args.b = args.b.or(file.b);
            args.format = args.format.or(file.format);
        }
        let digits = match std::env::var("QOSM_PRECISION") {
            Ok(text) => match text.parse::<usize>() {
                Ok(d) if (1..=17).contains(&d) => d,
                _ => {
                    return Err(CliError::Param(format!(
                        "QOSM_PRECISION must be an integer in 1..=17, got `{text}`"
                    )))
                }
            },
            Err(_) => DEFAULT_SIG_DIGITS,
        };
        Ok(Self { args, digits })
    }

    fn require<T: Copy>(&self, value: Option<T>, flag: &str) -> Result<T, CliError> {
        value.ok_or_else(|| CliError::Param(format!("missing required parameter --{flag}")))
    }

    fn power_law(&self) -> Result<QualityDistribution, CliError> {
        let alpha = self.require(self.args.alpha, "alpha")?;
        Ok(QualityDistribution::power_law(alpha)?)
    }

    fn price_response(&self) -> Result<PriceResponse, CliError> {
        let family = self
            .args
            .h
            .as_deref()
            .ok_or_else(|| CliError::Param("missing required parameter --h".into()))?;
        match family {
            "rational" => {
                let beta = self.require(self.args.beta, "beta")?;
                let a = self.require(self.args.a, "a")?;
                Ok(PriceResponse::rational(beta, a)?)
            }
            "exp" | "gauss" => {
                if self.args.beta.is_some() || self.args.a.is_some() {
                    return Err(CliError::Param(format!(
                        "--beta/--a only apply to --h rational, not --h {family}"
                    )));
                }
                Ok(if family == "exp" {
                    PriceResponse::Exponential
                } else {
                    PriceResponse::Gaussian
                })
            }
            other => Err(CliError::Param(format!("unknown price response `{other}`"))),
        }
    }

    fn scale(&self) -> Result<f64, CliError> {
        let s = self.require(self.args.s, "s")?;
        if !(s > 0.0 && s < 1.0) {
            return Err(CliError::Param(format!("--s must lie in (0, 1), got {s}")));
        }
        Ok(s)
    }

    fn max_classes(&self) -> usize {
        self.args.max_classes.unwrap_or(DEFAULT_MAX_CLASSES)
    }

    /// The c grid: a single --c, or the expansion of start/stop/count.
    /// Strictly decreasing by construction.
    fn c_grid(&self, allow_single: bool) -> Result<Vec<f64>, CliError> {
        let has_grid = self.args.c_start.is_some()
            || self.args.c_stop.is_some()
            || self.args.c_count.is_some();
        if let Some(c) = self.args.c {
            if has_grid {
                return Err(CliError::Param(
                    "pass either --c or --c-start/--c-stop/--c-count, not both".into(),
                ));
            }
            if !allow_single {
                return Err(CliError::Param(
                    "this command sweeps a grid; pass --c-start/--c-stop/--c-count".into(),
                ));
            }
            if !(c > 0.0) {
                return Err(CliError::Param(format!("--c must be positive, got {c}")));
            }
            return Ok(vec![c]);
        }
        if !has_grid {
            return Err(CliError::Param(
                "missing technology constant: pass --c or --c-start/--c-stop/--c-count".into(),
            ));
        }
        let start = self.require(self.args.c_start, "c-start")?;
        let stop = self.require(self.args.c_stop, "c-stop")?;
        let count = self.require(self.args.c_count, "c-count")?;
        if !(stop > 0.0 && start > stop) {
            return Err(CliError::Param(format!(
                "c grid must satisfy start > stop > 0, got start = {start}, stop = {stop}"
            )));
        }
        if count < 1 {
            return Err(CliError::Param("--c-count must be at least 1".into()));
        }
        if count == 1 {
            return Ok(vec![start]);
        }
        let grid = (0..count)
            .map(|i| {
                let t = i as f64 / (count - 1) as f64;
                if self.args.c_log {
                    start * (stop / start).powf(t)
                } else {
                    start + (stop - start) * t
                }
            })
            .collect();
        Ok(grid)
    }

    fn format_is_json(&self) -> Result<bool, CliError> {
        match self.args.format.as_deref() {
            None | Some("csv") => Ok(false),
            Some("json") => Ok(true),
            Some(other) => Err(CliError::Param(format!("unknown format `{other}`"))),
        }
    }

    fn num(&self, x: f64) -> String {
        if x.is_nan() {
            "nan".to_string()
        } else if x.is_infinite() {
            if x > 0.0 { "inf" } else { "-inf" }.to_string()
        } else {
            format!("{:.*e}", self.digits - 1, x)
        }
    }

    /// JSON value carrying the same precision as the CSV cells; infinities
    /// become the string "inf" since JSON has no number for them.
    fn json_num(&self, x: f64) -> Value {
        if x.is_finite() {
            Value::from(self.num(x).parse::<f64>().expect("formatter emits valid floats"))
        } else {
            Value::String(self.num(x))
        }
    }

    fn write_text(&self, content: &str) -> Result<(), CliError> {
        match &self.args.out {
            Some(path) => std::fs::write(path, content)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, run): (MarketArgs, fn(&Params) -> Result<(), CliError>) = match cli.command {
        Command::Classify(a) => (a, cmd_classify),
        Command::Solve(a) => (a, cmd_solve),
        Command::Cascade(a) => (a, cmd_cascade),
        Command::Sweep(a) => (a, cmd_sweep),
        Command::Uc(a) => (a, cmd_uc),
        Command::Figures(a) => (a, cmd_figures),
        Command::RatioLimits(a) => (a, cmd_ratio_limits),
    };
    let result = Params::resolve(args).and_then(|params| run(&params));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn cmd_classify(params: &Params) -> Result<(), CliError> {
    let f = params.power_law()?;
    let h = params.price_response()?;
    let s = params.scale()?;
    let verdict = classify_regime(&f, &h, s)?;
    let mut body = json!({
        "regime": verdict.regime.to_string(),
        "sensitivity": verdict.sensitivity.to_string(),
        "boundary_margin": params.json_num(verdict.boundary_margin),
    });
    if let Some(q0) = verdict.q0 {
        let map = body.as_object_mut().expect("object literal");
        map.insert("q0".into(), params.json_num(q0));
        map.insert("delta".into(), params.json_num(f.scaling_exponent(s)?));
        map.insert(
            "price_ratio_limit".into(),
            params.json_num(price_ratio_limit(&f, s)?),
        );
        map.insert(
            "traffic_ratio_limit".into(),
            params.json_num(traffic_ratio_limit(&f, s)?),
        );
        let threshold = match first_threshold(&f, &h, s)? {
            FirstThreshold::Bounded(c0) => params.json_num(c0),
            FirstThreshold::Unbounded => Value::String("unbounded".into()),
        };
        map.insert("first_threshold".into(), threshold);
    }
    params.write_text(&format!("{}\n", serde_json::to_string_pretty(&body).unwrap()))
}

fn cmd_ratio_limits(params: &Params) -> Result<(), CliError> {
    let f = params.power_law()?;
    let s = params.scale()?;
    let q0 = qosm::optimal_quality(&f, s)?;
    let body = json!({
        "q0": params.json_num(q0),
        "delta": params.json_num(f.scaling_exponent(s)?),
        "price_ratio_limit": params.json_num(price_ratio_limit(&f, s)?),
        "traffic_ratio_limit": params.json_num(traffic_ratio_limit(&f, s)?),
    });
    params.write_text(&format!("{}\n", serde_json::to_string_pretty(&body).unwrap()))
}

fn cmd_solve(params: &Params) -> Result<(), CliError> {
    let f = params.power_law()?;
    let h = params.price_response()?;
    let s = params.scale()?;
    let c = params.require(params.args.c, "c")?;
    let quality = match params.args.b {
        Some(b) => {
            if !(b > 1.0) {
                return Err(CliError::Param(format!("--b must exceed 1, got {b}")));
            }
            b
        }
        None => qosm::optimal_quality(&f, s).map_err(|e| match e {
            qosm::Error::RequiresDcRegime { .. } => CliError::Regime(
                "UC regime has no finite competitive quality; pass an explicit --b".into(),
            ),
            other => other.into(),
        })?,
    };
    let target = rhs(&f, s, c, 1.0, quality)?;
    let body = match solve_price(&h, s, target)? {
        SolveOutcome::Solved(sol) => {
            let demand = h.eval(sol.price)? * f.cumulative(1.0, quality)?;
            json!({
                "outcome": "offered",
                "quality": params.json_num(quality),
                "c": params.json_num(c),
                "price": params.json_num(sol.price),
                "residual": params.json_num(sol.residual),
                "multiplicity": match sol.multiplicity {
                    Multiplicity::UniqueRoot => "unique_root",
                    Multiplicity::SmallestOfSeveral => "smallest_of_several",
                },
                "demand": params.json_num(demand),
                "weighted_traffic": params.json_num(quality * demand),
                "revenue": params.json_num(sol.price * demand),
            })
        }
        SolveOutcome::NoProfit => json!({
            "outcome": "no_profit",
            "quality": params.json_num(quality),
            "c": params.json_num(c),
        }),
    };
    params.write_text(&format!("{}\n", serde_json::to_string_pretty(&body).unwrap()))
}

const CASCADE_HEADER: &str =
    "c,class_index,lower_q,upper_q,price,demand,weighted_traffic,revenue,appearance_threshold";

fn cascade_rows(params: &Params, snapshots: &[CascadeSnapshot]) -> String {
    let mut out = String::new();
    out.push_str(CASCADE_HEADER);
    out.push('\n');
    for snap in snapshots {
        for class in &snap.classes {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                params.num(snap.c),
                class.index,
                params.num(class.lower_boundary),
                params.num(class.quality),
                params.num(class.price),
                params.num(class.demand),
                params.num(class.weighted_traffic),
                params.num(class.revenue),
                params.num(class.appearance_threshold),
            );
        }
    }
    out
}

fn cascade_json(params: &Params, snapshots: &[CascadeSnapshot]) -> Value {
    let rows: Vec<Value> = snapshots
        .iter()
        .flat_map(|snap| {
            snap.classes.iter().map(|class| {
                json!({
                    "c": params.json_num(snap.c),
                    "class_index": class.index,
                    "lower_q": params.json_num(class.lower_boundary),
                    "upper_q": params.json_num(class.quality),
                    "price": params.json_num(class.price),
                    "demand": params.json_num(class.demand),
                    "weighted_traffic": params.json_num(class.weighted_traffic),
                    "revenue": params.json_num(class.revenue),
                    "appearance_threshold": params.json_num(class.appearance_threshold),
                })
            })
        })
        .collect();
    Value::Array(rows)
}

fn run_cascade(params: &Params, allow_single_c: bool) -> Result<(), CliError> {
    let f = params.power_law()?;
    let h = params.price_response()?;
    let s = params.scale()?;
    let grid = params.c_grid(allow_single_c)?;
    let snapshots = sweep_c(&f, &h, s, &grid, params.max_classes())?;
    let content = if params.format_is_json()? {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&cascade_json(params, &snapshots)).unwrap()
        )
    } else {
        cascade_rows(params, &snapshots)
    };
    params.write_text(&content)
}

fn cmd_cascade(params: &Params) -> Result<(), CliError> {
    run_cascade(params, true)
}

fn cmd_sweep(params: &Params) -> Result<(), CliError> {
    run_cascade(params, false)
}

fn cmd_uc(params: &Params) -> Result<(), CliError> {
    let q_max = params.require(params.args.qm, "qm")?;
    let threshold = uc_threshold(q_max)?;
    let grid = params.c_grid(true)?;

    let mut rows_csv = String::from("c,price,traffic,revenue\n");
    let mut rows_json = Vec::new();
    for &c in &grid {
        match uc_equilibrium(&BoundedUcConfig::new(q_max, c)?)? {
            UcOutcome::Offered(eq) => {
                let _ = writeln!(
                    rows_csv,
                    "{},{},{},{}",
                    params.num(c),
                    params.num(eq.price),
                    params.num(eq.weighted_traffic),
                    params.num(eq.revenue),
                );
                rows_json.push(json!({
                    "c": params.json_num(c),
                    "price": params.json_num(eq.price),
                    "traffic": params.json_num(eq.weighted_traffic),
                    "revenue": params.json_num(eq.revenue),
                }));
            }
            UcOutcome::NoProfit => {
                let _ = writeln!(rows_csv, "{},,,", params.num(c));
                rows_json.push(json!({
                    "c": params.json_num(c),
                    "price": Value::Null,
                    "traffic": Value::Null,
                    "revenue": Value::Null,
                }));
            }
        }
    }

    if params.format_is_json()? {
        let body = json!({
            "q_max": params.json_num(q_max),
            "threshold": params.json_num(threshold),
            "rows": Value::Array(rows_json),
        });
        return params.write_text(&format!("{}\n", serde_json::to_string_pretty(&body).unwrap()));
    }

    let sidecar = json!({
        "q_max": params.json_num(q_max),
        "threshold": params.json_num(threshold),
    });
    let sidecar_text = format!("{}\n", serde_json::to_string_pretty(&sidecar).unwrap());
    match &params.args.out {
        Some(path) => {
            std::fs::write(path, &rows_csv)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            let mut sidecar_path = path.as_os_str().to_owned();
            sidecar_path.push(".meta.json");
            let sidecar_path = PathBuf::from(sidecar_path);
            std::fs::write(&sidecar_path, &sidecar_text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", sidecar_path.display())))
        }
        None => {
            print!("{rows_csv}");
            eprint!("{sidecar_text}");
            Ok(())
        }
    }
}

/// Writes the standard figure files: the sensitive and insensitive left-hand
/// sides, both right-hand-side shapes, the UC/DC boundary curve, the DC and
/// UC quality scans, the bounded-UC sweep, and the first two classes of the
/// BDC and UDC cascades.
fn cmd_figures(params: &Params) -> Result<(), CliError> {
    let dir = params
        .args
        .out
        .as_ref()
        .ok_or_else(|| CliError::Param("figures requires --out DIRECTORY".into()))?
        .clone();
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;

    let write = |name: &str, content: String| -> Result<(), CliError> {
        let path: &Path = &dir.join(name);
        std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    };

    let s23 = 2.0 / 3.0;
    let lin = |lo: f64, hi: f64, n: usize, i: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    let geo = |lo: f64, hi: f64, n: usize, i: usize| lo * (hi / lo).powf(i as f64 / (n - 1) as f64);

    // Left-hand side curves: sensitive (beta = 6) and insensitive (beta = 2),
    // both at s = 2/3, a = 1.
    for (name, beta) in [("fig_lhs_sensitive.csv", 6.0), ("fig_lhs_insensitive.csv", 2.0)] {
        let h = PriceResponse::rational(beta, 1.0)?;
        let mut out = String::from("p,lhs\n");
        for i in 0..501 {
            let p = lin(0.0, 5.0, 501, i);
            let _ = writeln!(out, "{},{}", params.num(p), params.num(qosm::lhs(&h, s23, p)?));
        }
        write(name, out)?;
    }

    // Right-hand side shapes at c = 1 for a demand-rich (alpha = 1) and a
    // demand-poor (alpha = -1) distribution, each at two scale exponents.
    for (name, alpha) in [("fig_rhs_alpha_pos.csv", 1.0), ("fig_rhs_alpha_neg.csv", -1.0)] {
        let f = QualityDistribution::power_law(alpha)?;
        let mut out = String::from("b,rhs_s05,rhs_s075\n");
        for i in 0..400 {
            let b = geo(1.01, 100.0, 400, i);
            let _ = writeln!(
                out,
                "{},{},{}",
                params.num(b),
                params.num(rhs(&f, 0.5, 1.0, 1.0, b)?),
                params.num(rhs(&f, 0.75, 1.0, 1.0, b)?),
            );
        }
        write(name, out)?;
    }

    // The UC/DC boundary curve s = (alpha+1)/(alpha+2) over alpha in (-1, 3].
    {
        let mut out = String::from("alpha,s_boundary\n");
        for i in 0..400 {
            let alpha = -1.0 + 4.0 * (i + 1) as f64 / 400.0;
            let s = (alpha + 1.0) / (alpha + 2.0);
            let _ = writeln!(out, "{},{}", params.num(alpha), params.num(s));
        }
        write("fig_ucdc_boundary.csv", out)?;
    }

    // Price/traffic/revenue against quality: a DC market below its first
    // threshold, and a UC market.
    let bdc_f = QualityDistribution::power_law(-2.5)?;
    let bdc_h = PriceResponse::rational(6.0, 0.7)?;
    let bdc_c0 = match first_threshold(&bdc_f, &bdc_h, s23)? {
        FirstThreshold::Bounded(c0) => c0,
        FirstThreshold::Unbounded => unreachable!("this config is BDC"),
    };
    let scans: [(&str, QualityDistribution, PriceResponse, f64, f64, f64); 2] = [
        ("fig_ptraffrev_dc.csv", bdc_f, bdc_h, s23, 0.5 * bdc_c0, 10.0),
        (
            "fig_ptraffrev_uc.csv",
            QualityDistribution::power_law(1.0)?,
            PriceResponse::rational(6.0, 1.0)?,
            0.5,
            1.0,
            100.0,
        ),
    ];
    for (name, f, h, s, c, b_hi) in scans {
        let mut out = String::from("quality,price,demand,weighted_traffic,revenue\n");
        for i in 0..400 {
            let b = geo(1.01, b_hi, 400, i);
            let target = rhs(&f, s, c, 1.0, b)?;
            match solve_price(&h, s, target)? {
                SolveOutcome::Solved(sol) => {
                    let demand = h.eval(sol.price)? * f.cumulative(1.0, b)?;
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        params.num(b),
                        params.num(sol.price),
                        params.num(demand),
                        params.num(b * demand),
                        params.num(sol.price * demand),
                    );
                }
                SolveOutcome::NoProfit => {
                    let _ = writeln!(out, "{},,,,", params.num(b));
                }
            }
        }
        write(name, out)?;
    }

    // Bounded-quality UC evolution across the no-service threshold.
    {
        let q_max = 3.0;
        let c_star = uc_threshold(q_max)?;
        let mut out = String::from("c,price,traffic,revenue\n");
        for i in 0..400 {
            let c = geo(1.2 * c_star, c_star / 200.0, 400, i);
            match uc_equilibrium(&BoundedUcConfig::new(q_max, c)?)? {
                UcOutcome::Offered(eq) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        params.num(c),
                        params.num(eq.price),
                        params.num(eq.weighted_traffic),
                        params.num(eq.revenue),
                    );
                }
                UcOutcome::NoProfit => {
                    let _ = writeln!(out, "{},,,", params.num(c));
                }
            }
        }
        write("fig_ucreal.csv", out)?;
    }

    // Per-class evolution under falling c: the first two classes of the BDC
    // cascade and of a UDC cascade.
    let udc_f = QualityDistribution::power_law(-2.5)?;
    let udc_h = PriceResponse::rational(2.0, 1.0)?;
    let cascades: [(&str, QualityDistribution, PriceResponse, f64, f64, usize); 4] = [
        ("fig_ptrbdc1.csv", bdc_f, bdc_h, 1.1 * bdc_c0, bdc_c0 * 1e-3, 0),
        ("fig_ptrbdc2.csv", bdc_f, bdc_h, 1.1 * bdc_c0, bdc_c0 * 1e-3, 1),
        ("fig_ptrudc1.csv", udc_f, udc_h, 10.0, 0.01, 0),
        ("fig_ptrudc2.csv", udc_f, udc_h, 10.0, 0.01, 1),
    ];
    for (name, f, h, c_hi, c_lo, class_index) in cascades {
        let grid: Vec<f64> = (0..400).map(|i| geo(c_hi, c_lo, 400, i)).collect();
        let snapshots = sweep_c(&f, &h, s23, &grid, class_index + 1)?;
        let mut out = String::from("c,price,traffic,revenue\n");
        for snap in &snapshots {
            match snap.classes.get(class_index) {
                Some(class) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        params.num(snap.c),
                        params.num(class.price),
                        params.num(class.weighted_traffic),
                        params.num(class.revenue),
                    );
                }
                None => {
                    let _ = writeln!(out, "{},,,", params.num(snap.c));
                }
            }
        }
        write(name, out)?;
    }

    Ok(())
}
