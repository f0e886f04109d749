//! `sidon-lattice`: construct, search, verify and decode with lattice codes
//! built from difference sets and B_h sets.
//!
//! Exit codes: 0 ok or found, 2 usage or parse error, 3 exhaustive search
//! found nothing, 4 budget exhausted, 5 verification failed.

mod render;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sidon_lattice::algebra::prime_power;
use sidon_lattice::channel::{run_simulation, ChannelConfig, ErrorMode};
use sidon_lattice::codes::{
    decode_radius_r, lattice_from_set, perfect_code_a1, perfect_code_a2, tiling_lattice_s2, Code,
    Decoded, FiniteCode, LatticeCode, SyndromeTable,
};
use sidon_lattice::error::Error;
use sidon_lattice::geometry::Shape;
use sidon_lattice::limits::Limits;
use sidon_lattice::schema::{
    bh_set_artifact, code_artifact, difference_set_artifact, parse_code, parse_factor_list,
    parse_set, parse_word, set_artifact, CommandResult, ErrorInfo, JsonInt, SCHEMA,
};
use sidon_lattice::sets::{
    bose_chowla, search_bh_in_group, search_min_group, search_planar, singer, verify_bh,
    verify_difference_set, Budget, SearchReport,
};
use sidon_lattice::verify::{
    bound_f_h, bound_h_k, bound_phi_h, bound_phi_k, check_cover, check_packing, check_perfect,
    check_tiling, check_witness_bounds, experiment_cyclicity, experiment_ppc, BoundReport,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_ABSENT: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_FAIL: u8 = 5;

#[derive(Parser)]
#[command(name = "sidon-lattice", version, about = "Difference sets, B_h sets and lattice codes in A_n")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice (required by `simulate`)
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Node budget for searches
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Wall-clock budget for searches, in seconds
    #[arg(long, global = true)]
    timeout_s: Option<u64>,
    /// Cap on the number of emitted points
    #[arg(long, global = true)]
    limit: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a known family and verify it
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Exhaustive searches
    #[command(subcommand)]
    Search(SearchCmd),
    /// Check a set or a code from a JSON file
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Build lattice codes and decode received words
    #[command(subcommand)]
    Code(CodeCmd),
    #[command(hide = true)]
    Decode(DecodeArgs),
    /// Send random codewords through the asymmetric channel
    Simulate(SimulateArgs),
    /// Evaluate the packing bounds on B_h parameters
    Bounds(BoundsArgs),
    /// Reproducible experiments over small parameters
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Size or points of S_n(r+, r-)
    #[command(subcommand)]
    Shape(ShapeCmd),
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Planar difference set of order q
    Singer {
        #[arg(long)]
        q: u64,
    },
    /// B_h set of size q in Z_{q^h - 1}
    BoseChowla {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: u32,
    },
    /// r-perfect code in A_1
    PerfectA1 {
        #[arg(long)]
        r: u32,
    },
    /// r-perfect code in A_2
    PerfectA2 {
        #[arg(long)]
        r: u32,
    },
    /// Lattice tiling of A_2 by S_2(r+1, r)
    TilingS2 {
        #[arg(long)]
        r: u32,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Planar difference set of order n in Z_{n^2+n+1}
    Planar {
        #[arg(long)]
        n: u64,
    },
    /// Smallest abelian group holding a B_h set of size k
    MinGroup {
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        max_v: u64,
    },
    /// B_h set of size k in a given group
    Bh {
        /// Invariant factors, e.g. `55` or `2,6`
        #[arg(long)]
        group: String,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Difference set parameters, or failure
    Dset {
        #[arg(long)]
        set: PathBuf,
    },
    /// B_h property of a set
    Bh {
        #[arg(long)]
        set: PathBuf,
        /// Defaults to the `h` recorded in the file
        #[arg(long)]
        h: Option<u32>,
    },
    /// Cover multiplicities of the radius-r ball
    Cover {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        r: u32,
    },
    /// Whether translates of S(r+, r-) are disjoint
    Packing {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        radii: Radii,
    },
    /// Whether the radius-r ball tiles
    Perfect {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        r: u32,
    },
    /// Whether S(r+, r-) tiles
    Tiling {
        #[arg(long)]
        code: PathBuf,
        #[command(flatten)]
        radii: Radii,
    },
}

#[derive(Args, Clone, Copy)]
struct Radii {
    #[arg(long, default_value_t = 1)]
    rplus: u32,
    #[arg(long, default_value_t = 1)]
    rminus: u32,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Lattice code of a set, read from a file or given inline
    Build {
        #[arg(long, conflicts_with_all = ["group", "elements"])]
        set: Option<PathBuf>,
        #[arg(long, requires = "elements")]
        group: Option<String>,
        /// Cyclic group elements, e.g. `0,1,3,9`
        #[arg(long, requires = "group")]
        elements: Option<String>,
    },
    /// Correct an error pattern inside S(r+, r-)
    Decode(DecodeArgs),
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    code: PathBuf,
    /// Received word, e.g. `4,4,12`
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[command(flatten)]
    radii: Radii,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: PathBuf,
    #[command(flatten)]
    radii: Radii,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Draw errors from S(r+ + e, r- + e) minus S(r+, r-)
    #[arg(long)]
    overload: Option<u32>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    h: Option<u32>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    v: Option<u64>,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Planar difference sets exist exactly for prime power orders
    Ppc {
        #[arg(long, default_value_t = 9)]
        n_max: u64,
    },
    /// Quotient cyclicity against full-period directions
    Cyclicity {
        /// Include Singer codes for prime powers up to this order
        #[arg(long, default_value_t = 9)]
        q_max: u64,
        /// Extra code files
        #[arg(long)]
        code: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ShapeCmd {
    /// Exact number of points
    Size {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        radii: Radii,
    },
    /// Stream the points, one per line
    Points {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        radii: Radii,
    },
}

struct Outcome {
    status: &'static str,
    payload: Value,
    exit: u8,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome {
            status: "ok",
            payload,
            exit: EXIT_OK,
        }
    }

    /// `ok` when the check passed, otherwise exit 5 with the same payload.
    fn checked(passed: bool, payload: Value) -> Self {
        Outcome {
            status: if passed { "ok" } else { "error" },
            payload,
            exit: if passed { EXIT_OK } else { EXIT_FAIL },
        }
    }
}

struct Failure {
    code: String,
    message: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::ConjectureDisagreement(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Failure {
            code: e.code().into(),
            message: e.to_string(),
            exit,
        }
    }
}

fn usage(code: &str, message: impl Into<String>) -> Failure {
    Failure {
        code: code.into(),
        message: message.into(),
        exit: EXIT_USAGE,
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

struct Ctx {
    global: Global,
    limits: Limits,
    command: Command,
}

impl Ctx {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.global.max_nodes,
            timeout: self.global.timeout_s.map(Duration::from_secs),
            threads: self.global.threads.max(1),
        }
    }
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| usage("Io", format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load_code(path: &Path) -> std::result::Result<LatticeCode, Failure> {
    Ok(parse_code(&read_text(path)?)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn code_json(code: &LatticeCode) -> Value {
    to_value(&code_artifact(code))
}

fn construct(ctx: &Ctx, cmd: &ConstructCmd) -> CmdResult {
    let l = &ctx.limits;
    match *cmd {
        ConstructCmd::Singer { q } => {
            let ds = singer(q, l)?;
            let params = verify_difference_set(ds.group(), ds.elements())?;
            let code = lattice_from_set(ds.group(), ds.elements())?;
            let perfect = check_perfect(&code, 1, l)?;
            let ok = params.is_some_and(|p| p.lambda == 1) && perfect;
            Ok(Outcome::checked(
                ok,
                json!({
                    "set": difference_set_artifact(&ds),
                    "verification": {"params": params, "planar": ds.is_planar(), "perfect_r1": perfect},
                    "code": code_json(&code),
                }),
            ))
        }
        ConstructCmd::BoseChowla { q, h } => {
            let b = bose_chowla(q, h, l)?;
            let is_bh = verify_bh(b.group(), b.elements(), h)?;
            let mut payload = json!({
                "set": bh_set_artifact(&b),
                "verification": {"bh": is_bh},
            });
            // a generating set gives a lattice; {0, 3} in Z_15 for instance does not
            match lattice_from_set(b.group(), b.elements()) {
                Ok(code) => payload["code"] = code_json(&code),
                Err(e @ Error::NotGenerating { .. }) => {
                    payload["code"] = Value::Null;
                    payload["code_error"] = json!({"code": e.code(), "message": e.to_string()});
                }
                Err(e) => return Err(e.into()),
            }
            Ok(Outcome::checked(is_bh, payload))
        }
        ConstructCmd::PerfectA1 { r } => perfect_family(perfect_code_a1(r)?, r, l),
        ConstructCmd::PerfectA2 { r } => perfect_family(perfect_code_a2(r)?, r, l),
        ConstructCmd::TilingS2 { r } => {
            let code = tiling_lattice_s2(r)?;
            let tiles = check_tiling(&code, Shape::new(2, r + 1, r), l)?;
            Ok(Outcome::checked(
                tiles,
                json!({
                    "code": code_json(&code),
                    "verification": {
                        "det": code.det_abs(),
                        "tiling_shape": [2, r + 1, r],
                        "tiling": tiles,
                        "quotient_cyclic": code.quotient().is_cyclic(),
                    },
                }),
            ))
        }
    }
}

fn perfect_family(code: LatticeCode, r: u32, l: &Limits) -> CmdResult {
    let perfect = check_perfect(&code, r, l)?;
    Ok(Outcome::checked(
        perfect,
        json!({
            "code": code_json(&code),
            "verification": {"det": code.det_abs(), "r": r, "perfect": perfect},
        }),
    ))
}

fn search_outcome(report: SearchReport, set: Option<Value>) -> Outcome {
    let (status, exit) = match (&report.found, report.exhaustive) {
        (Some(_), _) => ("ok", EXIT_OK),
        (None, true) => ("not-found", EXIT_ABSENT),
        (None, false) => ("not-found", EXIT_BUDGET),
    };
    let mut payload = json!({ "report": report });
    if let Some(s) = set {
        payload["set"] = s;
    }
    payload["result"] = json!(match exit {
        EXIT_OK => "found",
        EXIT_ABSENT => "exhaustive-absent",
        _ => "budget-exhausted",
    });
    Outcome {
        status,
        payload,
        exit,
    }
}

fn search(ctx: &Ctx, cmd: &SearchCmd) -> CmdResult {
    let budget = ctx.budget();
    let (report, kind, h) = match cmd {
        SearchCmd::Planar { n } => (search_planar(*n, &budget)?, "difference-set", None),
        SearchCmd::MinGroup { h, k, max_v } => {
            (search_min_group(*h, *k, *max_v, &budget)?, "bh-set", Some(*h))
        }
        SearchCmd::Bh { group, h, k } => {
            let g = parse_factor_list(group)?;
            (search_bh_in_group(&g, *h, *k, &budget)?, "bh-set", Some(*h))
        }
    };
    let set = report.found.as_ref().map(|f| {
        let params = if kind == "difference-set" {
            verify_difference_set(&f.group, &f.elements).ok().flatten()
        } else {
            None
        };
        to_value(&set_artifact(kind, &f.group, &f.elements, params, h))
    });
    Ok(search_outcome(report, set))
}

fn verify(ctx: &Ctx, cmd: &VerifyCmd) -> CmdResult {
    let l = &ctx.limits;
    match cmd {
        VerifyCmd::Dset { set } => {
            let s = parse_set(&read_text(set)?)?;
            let params = verify_difference_set(&s.group, &s.elements)?;
            Ok(Outcome::checked(
                params.is_some(),
                json!({"difference_set": params.is_some(), "params": params}),
            ))
        }
        VerifyCmd::Bh { set, h } => {
            let s = parse_set(&read_text(set)?)?;
            let h = h
                .or(s.h)
                .ok_or_else(|| usage("MissingParameter", "pass --h or use a file that records h"))?;
            let ok = verify_bh(&s.group, &s.elements, h)?;
            Ok(Outcome::checked(ok, json!({"h": h, "k": s.elements.len(), "bh": ok})))
        }
        VerifyCmd::Cover { code, r } => {
            let report = check_cover(&load_code(code)?, *r, l)?;
            Ok(Outcome::checked(report.is_cover, to_value(&report)))
        }
        VerifyCmd::Packing { code, radii } => {
            let c = load_code(code)?;
            let ok = check_packing(&c, Shape::new(c.n(), radii.rplus, radii.rminus), l)?;
            Ok(Outcome::checked(
                ok,
                json!({"shape": [c.n(), radii.rplus, radii.rminus], "packing": ok}),
            ))
        }
        VerifyCmd::Perfect { code, r } => {
            let c = load_code(code)?;
            let ok = check_perfect(&c, *r, l)?;
            Ok(Outcome::checked(ok, json!({"r": r, "det": c.det_abs(), "perfect": ok})))
        }
        VerifyCmd::Tiling { code, radii } => {
            let c = load_code(code)?;
            let shape = Shape::new(c.n(), radii.rplus, radii.rminus);
            let ok = check_tiling(&c, shape, l)?;
            Ok(Outcome::checked(
                ok,
                json!({
                    "shape": [c.n(), radii.rplus, radii.rminus],
                    "shape_size": JsonInt(shape.size().into()),
                    "det": c.det_abs(),
                    "tiling": ok,
                }),
            ))
        }
    }
}

fn code_build(set: &Option<PathBuf>, group: &Option<String>, elements: &Option<String>) -> CmdResult {
    let (g, elems) = match (set, group, elements) {
        (Some(path), _, _) => {
            let s = parse_set(&read_text(path)?)?;
            (s.group, s.elements)
        }
        (None, Some(group), Some(elements)) => {
            let g = parse_factor_list(group)?;
            if !g.is_cyclic() {
                return Err(usage("NotCyclic", "inline --elements needs a cyclic group; use --set"));
            }
            let elems = parse_word(elements)?
                .into_iter()
                .map(|x| g.element(&[x]))
                .collect::<sidon_lattice::error::Result<Vec<_>>>()?;
            (g, elems)
        }
        _ => return Err(usage("MissingParameter", "pass --set, or --group with --elements")),
    };
    let code = lattice_from_set(&g, &elems)?;
    Ok(Outcome::ok(json!({ "code": code_json(&code) })))
}

/// A code with cyclic quotient decodes through its parity row, so words and
/// codewords are reduced mod `v`; other codes decode over `Z^n`.
enum Decoder {
    Finite(FiniteCode),
    Lattice(LatticeCode),
}

impl Decoder {
    fn new(code: LatticeCode) -> std::result::Result<Self, Failure> {
        Ok(match code.parity_row() {
            Some(row) => Decoder::Finite(FiniteCode::new(code.det_abs(), &row)?),
            None => Decoder::Lattice(code),
        })
    }

    fn as_code(&self) -> &dyn CodeSync {
        match self {
            Decoder::Finite(c) => c,
            Decoder::Lattice(c) => c,
        }
    }
}

trait CodeSync: Code + Sync {}
impl<T: Code + Sync> CodeSync for T {}

fn table_for(code: &dyn CodeSync, radii: Radii, l: &Limits) -> std::result::Result<SyndromeTable, Failure> {
    let shape = Shape::new(code.length(), radii.rplus, radii.rminus);
    SyndromeTable::build(code.syndrome_map(), shape, l).map_err(|e| match e {
        Error::SyndromeCollision { .. } => Failure {
            code: e.code().into(),
            message: format!("the code does not correct S({}, {}): {e}", radii.rplus, radii.rminus),
            exit: EXIT_FAIL,
        },
        other => other.into(),
    })
}

fn decode(ctx: &Ctx, args: &DecodeArgs) -> CmdResult {
    let dec = Decoder::new(load_code(&args.code)?)?;
    let code = dec.as_code();
    let word = parse_word(&args.word)?;
    if word.len() != code.length() {
        return Err(Error::DimensionMismatch {
            expected: code.length(),
            got: word.len(),
        }
        .into());
    }
    let table = table_for(code, args.radii, &ctx.limits)?;
    let syndrome = code.syndrome(&word)?;
    let outcome = decode_radius_r(&table, code, &word)?;
    let mut payload = json!({
        "word": word,
        "syndrome": match &dec {
            Decoder::Finite(_) => json!(syndrome.0[0]),
            Decoder::Lattice(_) => json!(syndrome.0),
        },
        "radii": [args.radii.rplus, args.radii.rminus],
    });
    match outcome {
        Decoded::Corrected { codeword, error } => {
            payload["outcome"] = json!("corrected");
            payload["codeword"] = json!(codeword);
            payload["error"] = json!(error);
        }
        Decoded::Detected => payload["outcome"] = json!("detected"),
    }
    Ok(Outcome::ok(payload))
}

fn simulate(ctx: &Ctx, args: &SimulateArgs) -> CmdResult {
    let seed = ctx
        .global
        .seed
        .ok_or_else(|| usage("MissingSeed", "simulate needs an explicit --seed"))?;
    let dec = Decoder::new(load_code(&args.code)?)?;
    let code = dec.as_code();
    let table = table_for(code, args.radii, &ctx.limits)?;
    let cfg = ChannelConfig {
        r_plus: args.radii.rplus,
        r_minus: args.radii.rminus,
        mode: match args.overload {
            Some(extra) => ErrorMode::Overload { extra },
            None => ErrorMode::UniformInShape,
        },
        seed,
        trials: args.trials,
    };
    let stats = run_simulation(code, &table, &cfg, &ctx.limits, ctx.global.threads.max(1))?;
    let mut payload = to_value(&stats);
    payload["config"] = to_value(&cfg);
    Ok(Outcome::ok(payload))
}

fn bounds(args: &BoundsArgs) -> CmdResult {
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut skipped = Vec::new();
    let mut attempt = |name: &str, r: Option<sidon_lattice::error::Result<BoundReport>>| match r {
        Some(Ok(b)) => reports.push(b),
        Some(Err(e)) => skipped.push(json!({"formula_id": name, "reason": e.to_string()})),
        None => {}
    };
    let (h, k, v) = (args.h, args.k, args.v);
    attempt("phi_k", h.zip(k).map(|(h, k)| bound_phi_k(h, k)));
    attempt("f_h", h.zip(v).map(|(h, v)| bound_f_h(h, v)));
    attempt("phi_h", h.zip(k).map(|(h, k)| bound_phi_h(h, k)));
    attempt("h_k", k.zip(v).map(|(k, v)| bound_h_k(k, v)));
    if reports.is_empty() {
        return Err(usage(
            "NoApplicableBound",
            "no bound applies; give at least two of --h, --k, --v",
        ));
    }
    let rows: Vec<Value> = reports
        .iter()
        .map(|b| {
            json!({
                "formula_id": b.formula_id.as_str(),
                "inputs": b.inputs,
                "relation": b.relation,
                "lower": b.lower_string(),
                "upper": b.upper_string(),
                "exact": b.exact,
                "approx": b.approx,
            })
        })
        .collect();
    let mut payload = json!({ "bounds": rows, "skipped": skipped });
    if let (Some(h), Some(k), Some(v)) = (h, k, v) {
        let checks = check_witness_bounds(h, k, v)?;
        let all = checks.iter().all(|c| c.satisfied);
        payload["witness"] = json!({
            "h": h, "k": k, "v": v,
            "checks": checks.iter().map(|c| json!({
                "formula_id": c.formula_id.as_str(),
                "witnessed": c.witnessed,
                "satisfied": c.satisfied,
            })).collect::<Vec<_>>(),
            "all_satisfied": all,
        });
        return Ok(Outcome::checked(all, payload));
    }
    Ok(Outcome::ok(payload))
}

fn experiment(ctx: &Ctx, cmd: &ExperimentCmd) -> CmdResult {
    match cmd {
        ExperimentCmd::Ppc { n_max } => {
            let rows = experiment_ppc(*n_max, &ctx.budget())?;
            let exit = if rows.iter().any(|r| r.agrees == Some(false)) {
                EXIT_FAIL
            } else if rows.iter().any(|r| r.agrees.is_none()) {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "prime_power": r.prime_power,
                        "found": r.found,
                        "exhaustive": r.exhaustive,
                        "nodes": r.nodes_explored,
                        "agrees": r.agrees,
                    })
                })
                .collect();
            Ok(Outcome {
                status: if exit == EXIT_OK { "ok" } else { "error" },
                payload: json!({ "rows": rows }),
                exit,
            })
        }
        ExperimentCmd::Cyclicity { q_max, code } => {
            let l = &ctx.limits;
            let mut codes: Vec<(String, LatticeCode)> = Vec::new();
            for q in 2..=*q_max {
                if prime_power(q).is_some() {
                    let ds = singer(q, l)?;
                    codes.push((format!("singer-{q}"), lattice_from_set(ds.group(), ds.elements())?));
                }
            }
            codes.push(("perfect-a1-1".into(), perfect_code_a1(1)?));
            codes.push(("perfect-a2-1".into(), perfect_code_a2(1)?));
            for r in 1..=3 {
                codes.push((format!("tiling-s2-{r}"), tiling_lattice_s2(r)?));
            }
            for path in code {
                codes.push((path.display().to_string(), load_code(path)?));
            }
            let rows = experiment_cyclicity(&codes, l)?;
            Ok(Outcome::ok(json!({ "rows": rows })))
        }
    }
}

fn shape_size(n: usize, radii: Radii) -> CmdResult {
    let shape = Shape::new(n, radii.rplus, radii.rminus);
    Ok(Outcome::ok(json!({
        "n": n,
        "r_plus": radii.rplus,
        "r_minus": radii.rminus,
        "size": JsonInt(shape.size().into()),
    })))
}

/// Points are written as they are enumerated, never collected.
fn shape_points(ctx: &Ctx, n: usize, radii: Radii, start: Instant) -> io::Result<u8> {
    let shape = Shape::new(n, radii.rplus, radii.rminus);
    let limit = ctx.global.limit.unwrap_or(u64::MAX);
    let mut out = io::BufWriter::new(io::stdout().lock());
    if ctx.global.json {
        write!(
            out,
            r#"{{"schema":"{SCHEMA}","command":"shape points","status":"ok","payload":{{"n":{n},"r_plus":{},"r_minus":{},"points":["#,
            radii.rplus, radii.rminus
        )?;
    }
    let mut emitted = 0u64;
    let mut truncated = false;
    for p in shape.iter() {
        if emitted == limit {
            truncated = true;
            break;
        }
        if ctx.global.json {
            if emitted > 0 {
                out.write_all(b",")?;
            }
            write!(out, "{}", json!(p))?;
        } else {
            let cells: Vec<String> = p.iter().map(i64::to_string).collect();
            writeln!(out, "{}", cells.join(" "))?;
        }
        emitted += 1;
    }
    if ctx.global.json {
        writeln!(
            out,
            r#"],"emitted":{emitted},"truncated":{truncated}}},"timing_ms":{}}}"#,
            start.elapsed().as_millis()
        )?;
    } else if truncated {
        writeln!(out, "# truncated after {emitted} points")?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn command_name(c: &Command) -> String {
    let (a, b) = match c {
        Command::Construct(k) => ("construct", match k {
            ConstructCmd::Singer { .. } => "singer",
            ConstructCmd::BoseChowla { .. } => "bose-chowla",
            ConstructCmd::PerfectA1 { .. } => "perfect-a1",
            ConstructCmd::PerfectA2 { .. } => "perfect-a2",
            ConstructCmd::TilingS2 { .. } => "tiling-s2",
        }),
        Command::Search(k) => ("search", match k {
            SearchCmd::Planar { .. } => "planar",
            SearchCmd::MinGroup { .. } => "min-group",
            SearchCmd::Bh { .. } => "bh",
        }),
        Command::Verify(k) => ("verify", match k {
            VerifyCmd::Dset { .. } => "dset",
            VerifyCmd::Bh { .. } => "bh",
            VerifyCmd::Cover { .. } => "cover",
            VerifyCmd::Packing { .. } => "packing",
            VerifyCmd::Perfect { .. } => "perfect",
            VerifyCmd::Tiling { .. } => "tiling",
        }),
        Command::Code(CodeCmd::Build { .. }) => ("code", "build"),
        Command::Code(CodeCmd::Decode(_)) | Command::Decode(_) => ("code", "decode"),
        Command::Simulate(_) => ("simulate", ""),
        Command::Bounds(_) => ("bounds", ""),
        Command::Experiment(k) => ("experiment", match k {
            ExperimentCmd::Ppc { .. } => "ppc",
            ExperimentCmd::Cyclicity { .. } => "cyclicity",
        }),
        Command::Shape(k) => ("shape", match k {
            ShapeCmd::Size { .. } => "size",
            ShapeCmd::Points { .. } => "points",
        }),
    };
    if b.is_empty() {
        a.into()
    } else {
        format!("{a} {b}")
    }
}

fn run(ctx: &Ctx) -> CmdResult {
    match &ctx.command {
        Command::Construct(c) => construct(ctx, c),
        Command::Search(c) => search(ctx, c),
        Command::Verify(c) => verify(ctx, c),
        Command::Code(CodeCmd::Build { set, group, elements }) => code_build(set, group, elements),
        Command::Code(CodeCmd::Decode(a)) | Command::Decode(a) => decode(ctx, a),
        Command::Simulate(a) => simulate(ctx, a),
        Command::Bounds(a) => bounds(a),
        Command::Experiment(c) => experiment(ctx, c),
        Command::Shape(ShapeCmd::Size { n, radii }) => shape_size(*n, *radii),
        Command::Shape(ShapeCmd::Points { .. }) => unreachable!("streamed separately"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let json = cli.global.json;
    let name = command_name(&cli.command);
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let ctx = Ctx {
        global: cli.global,
        limits,
        command: cli.command,
    };
    if let Command::Shape(ShapeCmd::Points { n, radii }) = &ctx.command {
        return match shape_points(&ctx, *n, *radii, start) {
            Ok(code) => ExitCode::from(code),
            // a closed pipe is not an error worth reporting
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error [Io]: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        };
    }
    let result = run(&ctx);
    let timing_ms = start.elapsed().as_millis() as u64;
    let (exit, envelope) = match result {
        Ok(o) => (
            o.exit,
            CommandResult {
                schema: SCHEMA.into(),
                command: name,
                status: o.status.into(),
                payload: o.payload,
                timing_ms,
                error: None,
            },
        ),
        Err(f) => (
            f.exit,
            CommandResult {
                schema: SCHEMA.into(),
                command: name,
                status: "error".into(),
                payload: Value::Null,
                timing_ms,
                error: Some(ErrorInfo {
                    code: f.code,
                    message: f.message,
                }),
            },
        ),
    };
    let mut stdout = io::stdout().lock();
    let written = if json {
        serde_json::to_writer(&mut stdout, &envelope)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(stdout))
    } else {
        if let Some(err) = &envelope.error {
            eprintln!("error [{}]: {}", err.code, err.message);
        }
        let mut text = String::new();
        if !envelope.payload.is_null() {
            text = render::human(&envelope.payload);
        }
        if envelope.status != "ok" && envelope.error.is_none() {
            text.push_str(&format!("status  {}\n", envelope.status));
        }
        stdout.write_all(text.as_bytes())
    };
    if let Err(e) = written {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error [Io]: {e}");
        }
    }
    ExitCode::from(exit)
}
