//! Command-line front end: one subcommand per laboratory operation, with
//! reproducible seeds, precision flags, and CSV/JSON emission. Every run
//! echoes its fully resolved configuration into the output header, and the
//! `from-config` subcommand replays a run from such a JSON document.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::csvout::{f64_cell, int_cell, OutFormat, TableSink};
use crate::error::{Error, Result};
use crate::fixed::UnitReal;
use crate::numerics::{alpha_unit, BigNat};
use crate::{diophantine, fourier, orbits, rajchman, selectors, semigroup, thinsets};

/// Worker pool size honours FURSTENBERG_LAB_THREADS when set.
pub fn init_threads() {
    static INIT: OnceLock<()> = OnceLock::new();
    INIT.get_or_init(|| {
        if let Ok(v) = std::env::var("FURSTENBERG_LAB_THREADS") {
            if let Ok(n) = v.parse::<usize>() {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build_global();
            }
        }
    });
}

#[derive(Parser, Debug)]
#[command(
    name = "furstenberg-lab",
    version,
    about = "Desk-scale laboratory for the {2^j 3^k} semigroup and its random analogue"
)]
struct Cli {
    /// Seed for all randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Fixed-point fractional bits for high-precision arithmetic.
    #[arg(long, global = true, default_value_t = 256)]
    bits: u32,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<String>,
    /// Output format: csv or json.
    #[arg(long, global = true, default_value = "csv")]
    format: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Enumerate the semigroup up to a limit.
    Enumerate(EnumerateArgs),
    /// Exact count against the two-term counting law.
    Count(CountArgs),
    /// Relative gaps with both scaled columns.
    Gaps(GapsArgs),
    /// Continued-fraction expansion of log2/log3.
    Convergents(ConvergentsArgs),
    /// Distance-to-integer table q -> ||q alpha||.
    Qnorm(QnormArgs),
    /// Star/interval discrepancy and the Erdos-Turan bound.
    Discrepancy(DiscrepancyArgs),
    /// Normalized Weyl sums over an integer set.
    Weyl(WeylArgs),
    /// Moran-point witness table of non-equidistribution.
    Moran(MoranArgs),
    /// Fourier-coefficient decay profile of the block-random measure.
    Rajchman(RajchmanArgs),
    /// Partial sums of the a.e.-convergence criterion.
    Del(DelArgs),
    /// Moran dimension bounds and the witness quadratic.
    Dim(DimArgs),
    /// Quasi-independence / dissociation test with relation search.
    Quasi(QuasiArgs),
    /// Arithmetic-progression mesh statistic.
    Mesh(MeshArgs),
    /// Extraction-density and counting statistics.
    Rider(RiderArgs),
    /// Norms of a sparse trigonometric polynomial.
    Norms(NormsArgs),
    /// Burkholder square-function ratio over random polynomials.
    Burkholder(BurkholderArgs),
    /// L^4/L^2 ratio trend for random signs on the semigroup spectrum.
    Lambda(LambdaArgs),
    /// Fejer-kernel Paley statistics.
    Paley(PaleyArgs),
    /// Salem-Zygmund sup-norm Monte Carlo.
    Salemzygmund(SalemzygmundArgs),
    /// Selector-sample ensemble statistics.
    Selector(SelectorArgs),
    /// Empirical Khinchin average for a catalogue function.
    Khinchin(KhinchinArgs),
    /// Replay a run from a JSON config document.
    FromConfig { path: String },
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct EnumerateArgs {
    /// Upper limit (decimal).
    #[arg(long)]
    limit: String,
    /// Comma-separated pairwise-coprime generators.
    #[arg(long, default_value = "2,3")]
    generators: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct CountArgs {
    #[arg(long)]
    limit: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct GapsArgs {
    #[arg(long = "n-max")]
    n_max: u64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConvergentsArgs {
    #[arg(long, default_value_t = 12)]
    depth: usize,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct QnormArgs {
    /// Largest denominator scanned.
    #[arg(long = "q", default_value_t = 100)]
    q_max: u64,
    #[arg(long, default_value_t = 4.117)]
    rho: f64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct DiscrepancyArgs {
    /// Comma-separated sample sizes.
    #[arg(long = "n", default_value = "100,1000")]
    sizes: String,
    /// Sample family: jalpha, equispaced, or seeded.
    #[arg(long, default_value = "jalpha")]
    sample: String,
    /// Erdos-Turan cutoff m.
    #[arg(long, default_value_t = 50)]
    m: usize,
    /// Erdos-Turan constant C.
    #[arg(long = "c", default_value_t = 3.0)]
    et_c: f64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct WeylArgs {
    /// furstenberg, naturals, or selector.
    #[arg(long, default_value = "furstenberg")]
    set: String,
    /// Point: `a/q`, a decimal in [0,1), or `alpha`.
    #[arg(long = "x", default_value = "1/2")]
    x: String,
    /// Comma-separated limits N.
    #[arg(long)]
    limit: String,
    #[arg(long = "h", default_value_t = 1)]
    h: u64,
    /// Horizon for the selector set (members <= limit are used).
    #[arg(long = "selector-n", default_value_t = 100_000)]
    selector_n: u64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct MoranArgs {
    /// JSON file holding a full Moran spec (overrides the flags below).
    #[arg(long, default_value = "")]
    #[serde(default)]
    spec: String,
    /// Comma-separated level schedule, e.g. 12,96.
    #[arg(long, default_value = "12,96")]
    ell: String,
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Free-digit rule: `const:D` or `seeded`.
    #[arg(long, default_value = "const:5")]
    digits: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RajchmanArgs {
    /// JSON file holding a full block spec (overrides --schedule/--k-max).
    #[arg(long, default_value = "")]
    #[serde(default)]
    spec: String,
    /// Block schedule: pow2, factorial, or loglog.
    #[arg(long, default_value = "pow2")]
    schedule: String,
    #[arg(long = "k-max", default_value_t = 8)]
    k_max: usize,
    /// Blocks to profile, `lo..hi` inclusive.
    #[arg(long, default_value = "3..5")]
    blocks: String,
    /// Log-grid density per block.
    #[arg(long, default_value_t = 24)]
    grid: usize,
    /// Emit one row per sampled h instead of per-block maxima.
    #[arg(long, default_value_t = false)]
    #[serde(default)]
    per_h: bool,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct DelArgs {
    #[arg(long = "n-max", default_value_t = 200)]
    n_max: usize,
    #[arg(long, default_value = "pow2")]
    schedule: String,
    #[arg(long = "k-max", default_value_t = 10)]
    k_max: usize,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct DimArgs {
    /// Emit the witness-dimension quadratic root.
    #[arg(long, default_value_t = false)]
    quadratic: bool,
    /// Cantor-type schedule length (n_k = 2, c_k = 1/3).
    #[arg(long = "cantor-k", default_value_t = 0)]
    cantor_k: usize,
    /// Explicit branch counts.
    #[arg(long = "n-seq", default_value = "")]
    n_seq: String,
    /// Explicit contraction ratios.
    #[arg(long = "c-seq", default_value = "")]
    c_seq: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct QuasiArgs {
    /// Comma-separated nonzero integers.
    #[arg(long)]
    elements: String,
    #[arg(long = "max-length", default_value_t = 6)]
    max_length: u32,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct MeshArgs {
    #[arg(long)]
    elements: String,
    /// Progression length N.
    #[arg(long = "n-len", default_value_t = 3)]
    n_len: u64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RiderArgs {
    /// s (the deterministic semigroup) or selector.
    #[arg(long, default_value = "s")]
    set: String,
    #[arg(long = "p", default_value_t = 1.5)]
    p: f64,
    #[arg(long, default_value = "8,16,32")]
    sizes: String,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long, default_value_t = 10_000)]
    limit: u64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct NormsArgs {
    /// Inline coefficients `freq:re[:im],...`, e.g. `1:1,6:0.5`.
    #[arg(long, default_value = "")]
    coeffs: String,
    /// Or a JSON file {"freq": [re, im], ...}.
    #[arg(long, default_value = "")]
    poly: String,
    /// Comma-separated exponents.
    #[arg(long = "p", default_value = "1,2,4")]
    p_list: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct BurkholderArgs {
    #[arg(long, default_value_t = 50)]
    trials: u64,
    #[arg(long = "p", default_value = "1.5,2,3,4")]
    p_list: String,
    #[arg(long, default_value_t = 3)]
    base: u64,
    /// Spectrum bound (frequencies drawn from [1, bound]).
    #[arg(long, default_value_t = 2187)]
    bound: u64,
    /// Nonzero coefficients per polynomial.
    #[arg(long, default_value_t = 40)]
    terms: usize,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct LambdaArgs {
    /// Comma-separated horizons.
    #[arg(long = "n", default_value = "100,1000,10000")]
    n_grid: String,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long = "p", default_value_t = 4.0)]
    p: f64,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct PaleyArgs {
    /// Comma-separated Fejer orders.
    #[arg(long = "n", default_value = "1000,10000")]
    n_grid: String,
    /// Primes generating the restriction semigroup.
    #[arg(long, default_value = "2")]
    primes: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct SalemzygmundArgs {
    #[arg(long = "n", default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// rademacher or selector.
    #[arg(long, default_value = "rademacher")]
    mode: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct SelectorArgs {
    /// JSON file holding a full selector model (overrides --n/--schedule;
    /// per-seed runs offset the model's own seed).
    #[arg(long, default_value = "")]
    #[serde(default)]
    model: String,
    #[arg(long = "n", default_value_t = 100_000)]
    n: u64,
    /// Number of independent seeds.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// Grid multiplier for the Hartman sup (grid = mult * N).
    #[arg(long = "grid-mult", default_value_t = 4)]
    grid_mult: usize,
    /// Schedule: furstenberg or sidon:C.
    #[arg(long, default_value = "furstenberg")]
    schedule: String,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct KhinchinArgs {
    #[arg(long, default_value = "furstenberg")]
    set: String,
    /// one, e:h, ind:c, or saw.
    #[arg(long = "f", default_value = "ind:0.5")]
    f: String,
    #[arg(long = "x", default_value = "alpha")]
    x: String,
    #[arg(long, default_value = "1000000")]
    limit: String,
    #[arg(long = "selector-n", default_value_t = 100_000)]
    selector_n: u64,
}

/// Fully resolved run configuration; echoed into every output header.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_bits")]
    pub bits: u32,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default = "default_format")]
    pub format: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

fn default_bits() -> u32 {
    256
}

fn default_format() -> String {
    "csv".into()
}

/// Parse and validate a JSON config document.
pub fn parse_config(path: &str) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = serde_json::from_str(text)
        .map_err(|e| Error::Config(format!("config schema violation: {e}")))?;
    OutFormat::parse(&cfg.format)?;
    Ok(cfg)
}

fn to_params<T: Serialize>(args: &T) -> BTreeMap<String, serde_json::Value> {
    match serde_json::to_value(args) {
        Ok(serde_json::Value::Object(map)) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

fn from_params<T: for<'de> Deserialize<'de>>(cfg: &RunConfig) -> Result<T> {
    let v = serde_json::Value::Object(cfg.params.clone().into_iter().collect());
    serde_json::from_value(v).map_err(|e| Error::Config(format!("config schema violation: {e}")))
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match execute(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let (subcommand, params) = match &cli.cmd {
        Cmd::Enumerate(a) => ("enumerate", to_params(a)),
        Cmd::Count(a) => ("count", to_params(a)),
        Cmd::Gaps(a) => ("gaps", to_params(a)),
        Cmd::Convergents(a) => ("convergents", to_params(a)),
        Cmd::Qnorm(a) => ("qnorm", to_params(a)),
        Cmd::Discrepancy(a) => ("discrepancy", to_params(a)),
        Cmd::Weyl(a) => ("weyl", to_params(a)),
        Cmd::Moran(a) => ("moran", to_params(a)),
        Cmd::Rajchman(a) => ("rajchman", to_params(a)),
        Cmd::Del(a) => ("del", to_params(a)),
        Cmd::Dim(a) => ("dim", to_params(a)),
        Cmd::Quasi(a) => ("quasi", to_params(a)),
        Cmd::Mesh(a) => ("mesh", to_params(a)),
        Cmd::Rider(a) => ("rider", to_params(a)),
        Cmd::Norms(a) => ("norms", to_params(a)),
        Cmd::Burkholder(a) => ("burkholder", to_params(a)),
        Cmd::Lambda(a) => ("lambda", to_params(a)),
        Cmd::Paley(a) => ("paley", to_params(a)),
        Cmd::Salemzygmund(a) => ("salemzygmund", to_params(a)),
        Cmd::Selector(a) => ("selector", to_params(a)),
        Cmd::Khinchin(a) => ("khinchin", to_params(a)),
        Cmd::FromConfig { path } => return parse_config(path),
    };
    Ok(RunConfig {
        subcommand: subcommand.into(),
        seed: cli.seed,
        bits: cli.bits,
        out: cli.out.clone(),
        format: cli.format.clone(),
        params,
    })
}

/// Execute a resolved configuration, writing the table to `out` or stdout.
pub fn execute(cfg: &RunConfig) -> Result<()> {
    let mut buffer: Vec<u8> = Vec::new();
    {
        let format = OutFormat::parse(&cfg.format)?;
        let config_json = serde_json::to_string(cfg).expect("config serializes");
        let mut sink = TableSink::new(&mut buffer, format, &config_json)?;
        dispatch(cfg, &mut sink)?;
        sink.finish()?;
    }
    match &cfg.out {
        Some(path) => std::fs::write(path, &buffer)?,
        None => std::io::stdout().write_all(&buffer)?,
    }
    Ok(())
}

fn dispatch(cfg: &RunConfig, sink: &mut TableSink) -> Result<()> {
    match cfg.subcommand.as_str() {
        "enumerate" => run_enumerate(&from_params(cfg)?, sink),
        "count" => run_count(&from_params(cfg)?, sink),
        "gaps" => run_gaps(&from_params(cfg)?, sink),
        "convergents" => run_convergents(&from_params(cfg)?, cfg.bits, sink),
        "qnorm" => run_qnorm(&from_params(cfg)?, cfg.bits, sink),
        "discrepancy" => run_discrepancy(&from_params(cfg)?, cfg.bits, cfg.seed, sink),
        "weyl" => run_weyl(&from_params(cfg)?, cfg.bits, cfg.seed, sink),
        "moran" => run_moran(&from_params(cfg)?, cfg.bits, cfg.seed, sink),
        "rajchman" => run_rajchman(&from_params(cfg)?, sink),
        "del" => run_del(&from_params(cfg)?, sink),
        "dim" => run_dim(&from_params(cfg)?, sink),
        "quasi" => run_quasi(&from_params(cfg)?, sink),
        "mesh" => run_mesh(&from_params(cfg)?, sink),
        "rider" => run_rider(&from_params(cfg)?, cfg.seed, sink),
        "norms" => run_norms(&from_params(cfg)?, sink),
        "burkholder" => run_burkholder(&from_params(cfg)?, cfg.seed, sink),
        "lambda" => run_lambda(&from_params(cfg)?, cfg.seed, sink),
        "paley" => run_paley(&from_params(cfg)?, sink),
        "salemzygmund" => run_salemzygmund(&from_params(cfg)?, cfg.seed, sink),
        "selector" => run_selector(&from_params(cfg)?, cfg.seed, sink),
        "khinchin" => run_khinchin(&from_params(cfg)?, cfg.bits, cfg.seed, sink),
        other => Err(Error::Parse(format!("unknown subcommand {other:?}"))),
    }
}

// ---- parsing helpers ----

fn parse_bignat(s: &str) -> Result<BigNat> {
    BigNat::parse_bytes(s.trim().as_bytes(), 10)
        .ok_or_else(|| Error::Parse(format!("bad natural number {s:?}")))
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number {t:?}")))
        })
        .collect()
}

/// `a/q`, a decimal in [0,1), or the keyword `alpha`.
fn parse_point(s: &str, bits: u32) -> Result<UnitReal> {
    let s = s.trim();
    if s == "alpha" {
        return alpha_unit(bits);
    }
    if let Some((a, q)) = s.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let q: u64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        return UnitReal::from_ratio(&BigNat::from(a % q.max(1)), &BigNat::from(q), bits);
    }
    if let Some(frac) = s.strip_prefix("0.") {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let num = parse_bignat(frac)?;
        let den = BigNat::from(10u32).pow(frac.len() as u32);
        return UnitReal::from_ratio(&num, &den, bits);
    }
    if s == "0" {
        return Ok(UnitReal::zero(bits));
    }
    Err(Error::Parse(format!("bad point {s:?} (use a/q, 0.ddd, or alpha)")))
}

fn parse_set(name: &str, selector_n: u64, seed: u64) -> Result<orbits::IntegerSet> {
    Ok(match name {
        "furstenberg" | "s" => orbits::IntegerSet::Furstenberg,
        "naturals" | "n" => orbits::IntegerSet::Naturals,
        "selector" | "t" => {
            let model = selectors::SelectorModel::furstenberg(selector_n, seed);
            selectors::sample(&model)?.as_integer_set()
        }
        other => return Err(Error::Parse(format!("unknown set {other:?}"))),
    })
}

// ---- runners ----

fn run_enumerate(a: &EnumerateArgs, sink: &mut TableSink) -> Result<()> {
    let limit = parse_bignat(&a.limit)?;
    let generators = parse_u64_list(&a.generators)?;
    let terms = semigroup::enumerate_upto(&limit, &generators)?;
    sink.header(&["n", "exps", "value"])?;
    for t in terms {
        let exps = t
            .exps
            .exps
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(";");
        sink.row(&[int_cell(t.rank), exps, t.value.to_string()])?;
    }
    Ok(())
}

fn run_count(a: &CountArgs, sink: &mut TableSink) -> Result<()> {
    let limit = parse_bignat(&a.limit)?;
    let r = semigroup::count(&limit)?;
    sink.header(&["limit", "exact", "predicted", "error"])?;
    sink.row(&[
        limit.to_string(),
        int_cell(r.exact),
        f64_cell(r.predicted),
        f64_cell(r.error),
    ])?;
    Ok(())
}

fn run_gaps(a: &GapsArgs, sink: &mut TableSink) -> Result<()> {
    let series = semigroup::gap_series(a.n_max)?;
    let terms = semigroup::enumerate_upto_rank(a.n_max)?;
    sink.header(&["n", "j", "k", "value", "gap_ratio", "scaled_lower", "scaled_upper"])?;
    for (row, term) in series.rows.iter().zip(terms.iter()) {
        sink.row(&[
            int_cell(row.n),
            int_cell(term.j()),
            int_cell(term.k()),
            term.value.to_string(),
            f64_cell(row.gap_ratio),
            f64_cell(row.scaled_lower),
            f64_cell(row.scaled_upper),
        ])?;
    }
    sink.comment(&format!(
        "min_scaled_lower={} max_scaled_upper={} doubling_ok={}",
        f64_cell(series.min_scaled_lower),
        f64_cell(series.max_scaled_upper),
        series.doubling_bound_ok
    ))?;
    Ok(())
}

fn run_convergents(a: &ConvergentsArgs, bits: u32, sink: &mut TableSink) -> Result<()> {
    let cf = diophantine::cf_expand(a.depth, bits)?;
    sink.header(&["i", "quotient", "p", "q"])?;
    for (i, (q, (pc, qc))) in cf.quotients.iter().zip(cf.convergents.iter()).enumerate() {
        sink.row(&[int_cell(i), int_cell(q), pc.to_string(), qc.to_string()])?;
    }
    Ok(())
}

fn run_qnorm(a: &QnormArgs, bits: u32, sink: &mut TableSink) -> Result<()> {
    sink.header(&["q", "qnorm", "scaled"])?;
    for q in 1..=a.q_max {
        let v = diophantine::qnorm(q, bits)?;
        sink.row(&[int_cell(q), f64_cell(v), f64_cell((q as f64).powf(a.rho) * v)])?;
    }
    Ok(())
}

fn run_discrepancy(a: &DiscrepancyArgs, bits: u32, seed: u64, sink: &mut TableSink) -> Result<()> {
    sink.header(&["n", "d_star", "d", "et_bound", "koksma_saw_lhs", "koksma_saw_rhs"])?;
    for &n in &parse_u64_list(&a.sizes)? {
        let sample = match a.sample.as_str() {
            "jalpha" => diophantine::PointSample::jalpha(n as usize, bits)?,
            "equispaced" => diophantine::PointSample::equispaced(n as usize)?,
            "seeded" => diophantine::PointSample::seeded(n as usize, seed)?,
            other => return Err(Error::Parse(format!("unknown sample family {other:?}"))),
        };
        let ds = diophantine::star_discrepancy(&sample);
        let d = diophantine::discrepancy(&sample);
        let et = diophantine::erdos_turan_bound(&sample, a.m, a.et_c)?;
        let ko = diophantine::koksma_check(diophantine::Shape::Sawtooth, &sample);
        sink.row(&[
            int_cell(n),
            f64_cell(ds),
            f64_cell(d),
            f64_cell(et.bound),
            f64_cell(ko.lhs),
            f64_cell(ko.rhs),
        ])?;
    }
    Ok(())
}

fn run_weyl(a: &WeylArgs, bits: u32, seed: u64, sink: &mut TableSink) -> Result<()> {
    let set = parse_set(&a.set, a.selector_n, seed)?;
    sink.header(&["limit", "re", "im", "modulus", "terms", "error_budget"])?;
    for limit in a.limit.split(',').filter(|t| !t.trim().is_empty()) {
        let limit = parse_bignat(limit)?;
        let w = if let Some((num, den)) = a.x.split_once('/') {
            let (num, den): (u64, u64) = (
                num.trim().parse().map_err(|_| Error::Parse("bad rational".into()))?,
                den.trim().parse().map_err(|_| Error::Parse("bad rational".into()))?,
            );
            orbits::weyl_sum_rational(num % den.max(1), den, &set, &limit, a.h)?
        } else {
            let x = parse_point(&a.x, bits)?;
            orbits::weyl_sum(&set, &x, &limit, a.h)?
        };
        sink.row(&[
            limit.to_string(),
            f64_cell(w.value.re),
            f64_cell(w.value.im),
            f64_cell(w.value.norm()),
            int_cell(w.terms),
            f64_cell(w.error_bound),
        ])?;
    }
    Ok(())
}

fn parse_digit_rule(s: &str, seed: u64) -> Result<orbits::DigitRule> {
    if let Some(d) = s.strip_prefix("const:") {
        let d: u8 = d.parse().map_err(|_| Error::Parse("bad digit".into()))?;
        return Ok(orbits::DigitRule::Constant(d));
    }
    if s == "seeded" {
        return Ok(orbits::DigitRule::Seeded(seed));
    }
    Err(Error::Parse(format!("bad digit rule {s:?}")))
}

fn run_moran(a: &MoranArgs, bits: u32, seed: u64, sink: &mut TableSink) -> Result<()> {
    let spec = if a.spec.is_empty() {
        orbits::MoranSpec::new(parse_u64_list(&a.ell)?, a.delta, parse_digit_rule(&a.digits, seed)?)?
    } else {
        let text = std::fs::read_to_string(&a.spec)?;
        let spec: orbits::MoranSpec = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad Moran spec: {e}")))?;
        spec.validate()?;
        spec
    };
    let k_max = spec.ell.len();
    // witness scales need generous precision
    let need = (spec.ell[k_max - 1] as f64 * 6f64.log2()).ceil() as u32 + 96;
    let rows = orbits::nonnormal_witness(&spec, k_max, a.eps, bits.max(need))?;
    sink.comment(&format!(
        "threshold={}",
        f64_cell(orbits::witness_threshold(a.delta, a.eps))
    ))?;
    sink.header(&["k", "p_k", "terms", "modulus", "ratio"])?;
    for r in rows {
        sink.row(&[
            int_cell(r.k),
            int_cell(r.p_k),
            int_cell(r.terms),
            f64_cell(r.modulus),
            f64_cell(r.ratio),
        ])?;
    }
    Ok(())
}

fn run_rajchman(a: &RajchmanArgs, sink: &mut TableSink) -> Result<()> {
    let spec = if a.spec.is_empty() {
        rajchman::RajchmanSpec::from_schedule(rajchman::Schedule::parse(&a.schedule)?, a.k_max)?
    } else {
        let text = std::fs::read_to_string(&a.spec)?;
        let spec: rajchman::RajchmanSpec = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad block spec: {e}")))?;
        spec.validate()?;
        spec
    };
    let (lo, hi) = a
        .blocks
        .split_once("..")
        .ok_or_else(|| Error::Parse("blocks must be lo..hi".into()))?;
    let lo: usize = lo.parse().map_err(|_| Error::Parse("bad block".into()))?;
    let hi: usize = hi.parse().map_err(|_| Error::Parse("bad block".into()))?;
    if a.per_h {
        let rows = rajchman::coeff_rows(&spec, lo..=hi, a.grid)?;
        sink.header(&["h", "re", "im", "modulus", "block", "bound", "bound_safe"])?;
        for r in rows {
            sink.row(&[
                r.h.to_string(),
                f64_cell(r.value.re),
                f64_cell(r.value.im),
                f64_cell(r.value.norm()),
                int_cell(r.k),
                f64_cell(r.bound),
                f64_cell(r.bound_safe),
            ])?;
        }
        return Ok(());
    }
    let rows = rajchman::decay_profile(&spec, lo..=hi, a.grid)?;
    sink.header(&["k", "observed_max", "bound", "bound_safe", "samples"])?;
    for r in rows {
        sink.row(&[
            int_cell(r.k),
            f64_cell(r.observed_max),
            f64_cell(r.bound),
            f64_cell(r.bound_safe),
            int_cell(r.samples),
        ])?;
    }
    Ok(())
}

fn run_del(a: &DelArgs, sink: &mut TableSink) -> Result<()> {
    let spec = rajchman::RajchmanSpec::from_schedule(
        rajchman::Schedule::parse(&a.schedule)?,
        a.k_max,
    )?;
    let values: Vec<BigNat> = semigroup::Enumerator::new(&[2, 3])?
        .take(a.n_max)
        .map(|t| t.value)
        .collect();
    let rows = rajchman::del_sums(&values, |h| rajchman::coeff(&spec, h), a.n_max)?;
    sink.header(&["n", "v_n", "partial_sum"])?;
    for r in rows {
        sink.row(&[int_cell(r.n), f64_cell(r.v_n), f64_cell(r.partial)])?;
    }
    Ok(())
}

fn run_dim(a: &DimArgs, sink: &mut TableSink) -> Result<()> {
    sink.header(&["kind", "value"])?;
    if a.quadratic {
        sink.row(&["quadratic".into(), f64_cell(rajchman::wdim_quadratic())])?;
    }
    if a.cantor_k > 0 {
        let b = rajchman::moran_dim_bound((0..a.cantor_k).map(|_| (2u64, 1.0 / 3.0)))?;
        sink.row(&["cantor".into(), f64_cell(b)])?;
    }
    if !a.n_seq.is_empty() {
        let ns = parse_u64_list(&a.n_seq)?;
        let cs = parse_f64_list(&a.c_seq)?;
        if ns.len() != cs.len() {
            return Err(Error::Domain("n-seq and c-seq lengths differ".into()));
        }
        let b = rajchman::moran_dim_bound(ns.into_iter().zip(cs))?;
        sink.row(&["moran".into(), f64_cell(b)])?;
    }
    Ok(())
}

fn run_quasi(a: &QuasiArgs, sink: &mut TableSink) -> Result<()> {
    let set = thinsets::FiniteSet::new(parse_i64_list(&a.elements)?)?;
    let qi = thinsets::is_quasi_independent(&set)?;
    let di = thinsets::is_dissociate(&set)?;
    let rel = thinsets::find_relation(&set, a.max_length)?;
    sink.header(&["quasi_independent", "dissociate", "relation", "relation_length"])?;
    let (rel_str, rel_len) = match rel {
        Some(r) => {
            let parts: Vec<String> = r
                .coeffs
                .iter()
                .map(|&(x, e)| match e {
                    1 => format!("+{x}"),
                    -1 => format!("-{x}"),
                    e => format!("{e:+}*{x}"),
                })
                .collect();
            (parts.join(""), r.length().to_string())
        }
        None => ("none".into(), "0".into()),
    };
    sink.row(&[qi.to_string(), di.to_string(), rel_str, rel_len])?;
    Ok(())
}

fn run_mesh(a: &MeshArgs, sink: &mut TableSink) -> Result<()> {
    let set = thinsets::FiniteSet::new(parse_i64_list(&a.elements)?)?;
    let alpha = thinsets::mesh_alpha(&set, a.n_len)?;
    sink.header(&["n_len", "mesh_alpha"])?;
    sink.row(&[int_cell(a.n_len), int_cell(alpha)])?;
    Ok(())
}

fn run_rider(a: &RiderArgs, seed: u64, sink: &mut TableSink) -> Result<()> {
    let sizes: Vec<usize> = parse_u64_list(&a.sizes)?.into_iter().map(|v| v as usize).collect();
    let values: Vec<u64> = match a.set.as_str() {
        "s" | "furstenberg" => semigroup::Enumerator::new(&[2, 3])?
            .map(|t| t.value)
            .take_while(|v| *v <= BigNat::from(a.limit))
            .map(|v| u64::try_from(&v).unwrap())
            .collect(),
        "selector" | "t" => {
            let model = selectors::SelectorModel::furstenberg(a.limit, seed);
            selectors::sample(&model)?.members
        }
        other => return Err(Error::Parse(format!("unknown set {other:?}"))),
    };
    let n_grid: Vec<u64> = sizes.iter().map(|&s| values.get(s - 1).copied().unwrap_or(a.limit)).collect();
    let report = thinsets::rider_density(&values, a.p, &sizes, a.trials, &n_grid, seed)?;
    sink.header(&["kind", "size_or_n", "statistic"])?;
    for r in &report.extraction {
        sink.row(&["extraction".into(), int_cell(r.size), f64_cell(r.min_density)])?;
    }
    for r in &report.counting {
        sink.row(&["counting".into(), int_cell(r.n), f64_cell(r.statistic)])?;
    }
    Ok(())
}

fn parse_poly(a: &NormsArgs) -> Result<fourier::TrigPoly> {
    if !a.poly.is_empty() {
        let text = std::fs::read_to_string(&a.poly)?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad polynomial JSON: {e}")))?;
        return fourier::TrigPoly::from_json(&v);
    }
    if a.coeffs.is_empty() {
        return Err(Error::Parse("need --coeffs or --poly".into()));
    }
    let mut p = fourier::TrigPoly::new();
    for part in a.coeffs.split(',') {
        let fields: Vec<&str> = part.trim().split(':').collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse(format!("bad coefficient {part:?}")));
        }
        let n: i64 = fields[0].parse().map_err(|_| Error::Parse("bad frequency".into()))?;
        let re: f64 = fields[1].parse().map_err(|_| Error::Parse("bad coefficient".into()))?;
        let im: f64 = if fields.len() == 3 {
            fields[2].parse().map_err(|_| Error::Parse("bad coefficient".into()))?
        } else {
            0.0
        };
        p.add_coeff(n, fourier::Complex64::new(re, im));
    }
    Ok(p)
}

fn run_norms(a: &NormsArgs, sink: &mut TableSink) -> Result<()> {
    let poly = parse_poly(a)?;
    let sup = fourier::sup_norm(&poly);
    sink.header(&["p", "norm", "sup_lower", "sup_estimate", "sup_upper"])?;
    for &p in &parse_f64_list(&a.p_list)? {
        sink.row(&[
            f64_cell(p),
            f64_cell(fourier::norm(&poly, p, 8)),
            f64_cell(sup.lower),
            f64_cell(sup.estimate),
            f64_cell(sup.upper),
        ])?;
    }
    Ok(())
}

fn run_burkholder(a: &BurkholderArgs, seed: u64, sink: &mut TableSink) -> Result<()> {
    let ps = parse_f64_list(&a.p_list)?;
    sink.header(&["trial", "p", "ratio", "b_p", "holds"])?;
    for t in 0..a.trials {
        let mut rng = crate::rng::SplitMix64::for_trial(seed, t);
        let mut poly = fourier::TrigPoly::new();
        for _ in 0..a.terms {
            let n = rng.next_below(a.bound) as i64 + 1;
            poly.add_coeff(
                n,
                fourier::Complex64::new(rng.next_gaussian(), rng.next_gaussian()),
            );
        }
        for &p in &ps {
            let r = fourier::burkholder_check(&poly, p, a.base, 8)?;
            sink.row(&[
                int_cell(t),
                f64_cell(p),
                f64_cell(r.ratio),
                f64_cell(r.b_p),
                r.holds.to_string(),
            ])?;
        }
    }
    Ok(())
}

fn run_lambda(a: &LambdaArgs, seed: u64, sink: &mut TableSink) -> Result<()> {
    sink.header(&["n", "terms", "mean_ratio"])?;
    for &n in &parse_u64_list(&a.n_grid)? {
        let spectrum: Vec<i64> = semigroup::Enumerator::new(&[2, 3])?
            .map(|t| t.value)
            .take_while(|v| *v <= BigNat::from(n))
            .map(|v| i64::try_from(&v).unwrap())
            .collect();
        let mut total = 0.0;
        for t in 0..a.trials {
            let mut rng = crate::rng::SplitMix64::for_trial(seed, t);
            let poly = fourier::TrigPoly::from_pairs(
                spectrum
                    .iter()
                    .map(|&f| (f, fourier::Complex64::new(rng.next_sign(), 0.0))),
            );
            total += fourier::lambda_ratio(&poly, a.p)?;
        }
        sink.row(&[
            int_cell(n),
            int_cell(spectrum.len()),
            f64_cell(total / a.trials as f64),
        ])?;
    }
    Ok(())
}

fn run_paley(a: &PaleyArgs, sink: &mut TableSink) -> Result<()> {
    let primes = parse_u64_list(&a.primes)?;
    sink.header(&["n", "fejer_l1", "fejer_min", "paley_sum", "log2_n"])?;
    for &n in &parse_u64_list(&a.n_grid)? {
        let (l1, min_v) = fourier::fejer_l1(n);
        let mass = if primes == [2] {
            fourier::fejer_paley_sum(n)
        } else {
            // restriction mass over the general semigroup, via coefficients
            let k = fourier::fejer_kernel(n.min(4096));
            let q = fourier::paley_quotient(&k, 1.5, &primes)?;
            q * q * fourier::norm(&k, 1.5, 8).powi(2)
        };
        sink.row(&[
            int_cell(n),
            f64_cell(l1),
            f64_cell(min_v),
            f64_cell(mass),
            f64_cell((n as f64).log2()),
        ])?;
    }
    Ok(())
}

fn run_salemzygmund(a: &SalemzygmundArgs, seed: u64, sink: &mut TableSink) -> Result<()> {
    let mode = match a.mode.as_str() {
        "rademacher" => fourier::SzMode::Rademacher { magnitudes: vec![1.0; a.n] },
        "selector" => fourier::SzMode::Selector {
            deltas: (1..=a.n as u64)
                .map(|k| selectors::SelectorModel::furstenberg(a.n as u64, 0).delta(k))
                .collect(),
        },
        other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
    };
    let r = fourier::salem_zygmund_mc(&mode, a.trials, seed)?;
    sink.header(&["n", "trials", "mean_sup", "normalizer", "ratio"])?;
    sink.row(&[
        int_cell(a.n),
        int_cell(a.trials),
        f64_cell(r.mean_sup),
        f64_cell(r.normalizer),
        f64_cell(r.ratio),
    ])?;
    Ok(())
}

fn run_selector(a: &SelectorArgs, seed: u64, sink: &mut TableSink) -> Result<()> {
    let (rule, horizon, base_seed) = if !a.model.is_empty() {
        let text = std::fs::read_to_string(&a.model)?;
        let model: selectors::SelectorModel = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad selector model: {e}")))?;
        (model.rule, model.horizon, model.seed)
    } else if let Some(c) = a.schedule.strip_prefix("sidon:") {
        (
            selectors::DensityRule::Sidon {
                c: c.parse().map_err(|_| Error::Parse("bad sidon constant".into()))?,
            },
            a.n,
            seed,
        )
    } else if a.schedule == "furstenberg" {
        (selectors::DensityRule::Furstenberg, a.n, seed)
    } else {
        return Err(Error::Parse(format!("unknown schedule {:?}", a.schedule)));
    };
    sink.header(&[
        "seed",
        "n",
        "members",
        "m_n",
        "deviation",
        "conc_radius",
        "centered_sup_norm",
        "weyl_sup_norm",
        "gap_sup",
        "gap_inf",
        "max_ratio",
    ])?;
    for s in 0..a.seeds {
        let model = selectors::SelectorModel {
            rule: rule.clone(),
            horizon,
            seed: base_seed.wrapping_add(s),
        };
        let sample = selectors::sample(&model)?;
        let h = selectors::hartman_stat(&sample, a.grid_mult * horizon as usize)?;
        let g = selectors::gap_stats(&sample.members, 0.5)?;
        let radius = 6.0 * (h.m_n * (horizon as f64).ln()).sqrt();
        sink.row(&[
            int_cell(model.seed),
            int_cell(horizon),
            int_cell(sample.len()),
            f64_cell(h.m_n),
            f64_cell(h.centered_at_zero),
            f64_cell(radius),
            f64_cell(h.centered_sup_normalized),
            f64_cell(h.weyl_sup_normalized),
            f64_cell(g.sup_stat),
            f64_cell(g.inf_stat),
            f64_cell(g.max_ratio),
        ])?;
    }
    Ok(())
}

fn run_khinchin(a: &KhinchinArgs, bits: u32, seed: u64, sink: &mut TableSink) -> Result<()> {
    let set = parse_set(&a.set, a.selector_n, seed)?;
    let f = if a.f == "one" {
        orbits::AverageFn::One
    } else if let Some(h) = a.f.strip_prefix("e:") {
        orbits::AverageFn::Character(h.parse().map_err(|_| Error::Parse("bad harmonic".into()))?)
    } else if let Some(c) = a.f.strip_prefix("ind:") {
        orbits::AverageFn::Indicator(c.parse().map_err(|_| Error::Parse("bad cutoff".into()))?)
    } else if a.f == "saw" {
        orbits::AverageFn::Sawtooth
    } else {
        return Err(Error::Parse(format!("unknown catalogue function {:?}", a.f)));
    };
    let x = parse_point(&a.x, bits)?;
    let limit = parse_bignat(&a.limit)?;
    let r = orbits::khinchin_average(&set, f, &x, &limit)?;
    sink.header(&["terms", "avg_re", "avg_im", "integral_re", "deviation"])?;
    sink.row(&[
        int_cell(r.terms),
        f64_cell(r.average.re),
        f64_cell(r.average.im),
        f64_cell(r.integral.re),
        f64_cell(r.deviation),
    ])?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(cfg: &RunConfig) -> String {
        let mut buf: Vec<u8> = Vec::new();
        {
            let format = OutFormat::parse(&cfg.format).unwrap();
            let json = serde_json::to_string(cfg).unwrap();
            let mut sink = TableSink::new(&mut buf, format, &json).unwrap();
            dispatch(cfg, &mut sink).unwrap();
            sink.finish().unwrap();
        }
        String::from_utf8(buf).unwrap()
    }

    fn config(sub: &str, params: serde_json::Value) -> RunConfig {
        RunConfig {
            subcommand: sub.into(),
            seed: 0,
            bits: 256,
            out: None,
            format: "csv".into(),
            params: params.as_object().unwrap().clone().into_iter().collect(),
        }
    }

    #[test]
    fn count_cli_example() {
        let out = run_to_string(&config("count", serde_json::json!({"limit": "100"})));
        assert!(out.contains("100,20,"), "{out}");
    }

    #[test]
    fn weyl_cli_example() {
        let out = run_to_string(&config(
            "weyl",
            serde_json::json!({"set": "furstenberg", "x": "1/2", "limit": "100",
                               "h": 1, "selector-n": 1000}),
        ));
        assert!(out.contains("100,5.0000000000000000e-1"), "{out}");
    }

    #[test]
    fn quasi_cli_example() {
        let out = run_to_string(&config(
            "quasi",
            serde_json::json!({"elements": "1,2,3", "max-length": 6}),
        ));
        assert!(out.contains("false,false,+1+2-3,3"), "{out}");
    }

    #[test]
    fn config_round_trip_and_unknown_keys() {
        let cfg = config("count", serde_json::json!({"limit": "1000"}));
        let json = serde_json::to_string(&cfg).unwrap();
        let back = parse_config_str(&json).unwrap();
        assert_eq!(cfg, back);

        assert!(parse_config_str("{}").is_err()); // missing subcommand
        assert!(parse_config_str(
            "{\"subcommand\":\"count\",\"mystery\":1,\"params\":{\"limit\":\"10\"}}"
        )
        .is_err());
    }

    #[test]
    fn default_seed_echoed() {
        let cfg = parse_config_str("{\"subcommand\":\"count\",\"params\":{\"limit\":\"10\"}}")
            .unwrap();
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.bits, 256);
        assert_eq!(cfg.format, "csv");
    }

    #[test]
    fn byte_identical_reruns() {
        let cfg = config(
            "selector",
            serde_json::json!({"n": 2000, "seeds": 3, "grid-mult": 4,
                               "schedule": "furstenberg"}),
        );
        let a = run_to_string(&cfg);
        let b = run_to_string(&cfg);
        assert_eq!(a, b);
        assert!(a.contains("seed,n,members"));
    }

    #[test]
    fn unknown_subcommand_is_rejected() {
        let cfg = config("frobnicate", serde_json::json!({}));
        let mut buf: Vec<u8> = Vec::new();
        let json = serde_json::to_string(&cfg).unwrap();
        let mut sink = TableSink::new(&mut buf, OutFormat::Csv, &json).unwrap();
        assert!(dispatch(&cfg, &mut sink).is_err());
    }
}
