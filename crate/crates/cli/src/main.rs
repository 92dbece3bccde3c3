//! Command-line driver: identity verification, Satake table/oracle,
//! convolution, chain-pattern counts, surface point counts, symbolic
//! matrices and level-raising reports.
//!
//! Exit codes: 0 success, 1 mathematical failure (an identity or golden
//! check mismatched), 2 usage error (bad flags, missing files, malformed
//! input, out-of-window requests).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use gsp4_hecke::error::{EigenError, LatticeError};
use gsp4_hecke::{
    check_generic, check_level_raising, convolve_oracle, count_chain_pattern, det_lr_eval,
    det_ss_eval, dl_point_count, hecke_polynomial, load_eigen_records, lr_matrix, pair_quadratic,
    satake_oracle, satake_table, ss_matrix, verify_hecke_identity, CharacterElement,
    ConvolutionCache, DominantCoweight, EigenData, HeckeElement, Scalar, CACHE_DIR_ENV,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "gsp4", about = "Exact Hecke-algebra and level-raising computations", version)]
struct Cli {
    /// Emit a machine-readable JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum coweight spread accepted by lattice enumeration.
    #[arg(long, global = true, default_value_t = 4)]
    window_bound: i64,
    /// Directory for the convolution result cache (also settable via
    /// the GSP4_CACHE_DIR environment variable).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the spherical Hecke identity symbolically and against the
    /// counting oracle at each prime.
    Identity {
        /// Primes for the oracle cross-check.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3])]
        primes: Vec<u64>,
    },
    /// Print the Satake transform of a double coset: the symbolic table
    /// entry and, when a prime is given, the enumeration oracle.
    Satake {
        /// Dominant coweight, e.g. "2,1,1,0".
        #[arg(long)]
        coweight: String,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Convolve two double cosets by lattice counting.
    Convolve {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        prime: u64,
    },
    /// Count a finite incidence configuration.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        prime: u64,
    },
    /// Count points of the supersingular Deligne-Lusztig surface.
    DlPoints {
        #[arg(long)]
        prime: u64,
        /// Field degree k; counts over F_{p^k}.
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Print the level-raising or supersingular matrix, optionally
    /// evaluating its determinant on eigenvalue records.
    Matrix {
        /// "lr" or "ss".
        #[arg(long)]
        kind: String,
        #[arg(long)]
        prime: Option<u64>,
        /// Eigenvalue file for determinant evaluation.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Residue prime for the determinant evaluation.
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Level-raising reports for every record in an eigenvalue file.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ell: u64,
        /// Restrict to one sign u in {+1, -1}.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<i32>,
    },
}

enum Failure {
    Math(String),
    Usage(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Failure {
        match e {
            LatticeError::UnknownPattern(_)
            | LatticeError::WindowOverflow { .. }
            | LatticeError::FieldTooLarge(_)
            | LatticeError::CacheIo(_) => Failure::Usage(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<EigenError> for Failure {
    fn from(e: EigenError) -> Failure {
        match e {
            EigenError::NonTempered(_) => Failure::Math(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn parse_coweight(s: &str) -> Result<DominantCoweight, Failure> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Result<Vec<i64>, _> = body.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let parts = parts.map_err(|_| usage(format!("cannot parse coweight '{}'", s)))?;
    if parts.len() != 4 {
        return Err(usage(format!("coweight '{}' must have 4 entries", s)));
    }
    DominantCoweight::new([parts[0], parts[1], parts[2], parts[3]])
        .map_err(|e| usage(e.to_string()))
}

fn character_json(c: &CharacterElement) -> Value {
    let mut map = Map::new();
    for (w, s) in c.iter() {
        map.insert(w.to_string(), Value::String(s.to_string()));
    }
    Value::Object(map)
}

fn hecke_json(h: &HeckeElement) -> Value {
    let mut map = Map::new();
    for (nu, c) in h.iter() {
        map.insert(nu.to_string(), Value::String(c.to_string()));
    }
    Value::Object(map)
}

fn emit(report: Value, human: String, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    } else {
        print!("{}", human);
    }
}

fn cache_from_flags(cache_dir: &Option<PathBuf>) -> Option<ConvolutionCache> {
    if let Some(dir) = cache_dir {
        return Some(ConvolutionCache::new(dir.clone()));
    }
    match std::env::var(CACHE_DIR_ENV) {
        Ok(dir) if !dir.is_empty() => Some(ConvolutionCache::new(dir)),
        _ => None,
    }
}

fn run_identity(primes: &[u64], window: i64, as_json: bool) -> Result<(), Failure> {
    let cert = verify_hecke_identity().map_err(|e| Failure::Math(e.to_string()))?;
    let mut human = String::new();
    human.push_str("symbolic identity: pass\n");
    human.push_str(&format!("  common value has {} weights\n", cert.expected.support_size()));
    let mut primes_json = Map::new();
    for &p in primes {
        let got = convolve_oracle(&DominantCoweight::nu2(), &DominantCoweight::nu2(), p, window)?;
        let expect = [
            (DominantCoweight::two_nu2(), 1u64),
            (DominantCoweight::nu1(), p + 1),
            (DominantCoweight::nu0(), (p + 1) * (p * p + 1)),
        ];
        let mut pass = got.support_size() == 3;
        for (nu, n) in &expect {
            pass = pass && got.coeff(nu) == Scalar::from_int(*n as i64);
        }
        human.push_str(&format!(
            "  p={}: oracle coefficients {} -> {}\n",
            p,
            got,
            if pass { "pass" } else { "MISMATCH" }
        ));
        primes_json.insert(
            p.to_string(),
            json!({ "coefficients": hecke_json(&got), "pass": pass }),
        );
        if !pass {
            return Err(Failure::Math(format!(
                "oracle coefficients at p={} disagree with the Hecke identity: {}",
                p, got
            )));
        }
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "identity",
        "inputs": { "primes": primes },
        "symbolic": "pass",
        "primes": Value::Object(primes_json),
    });
    emit(report, human, as_json);
    Ok(())
}

fn run_satake(coweight: &str, prime: Option<u64>, window: i64, as_json: bool) -> Result<(), Failure> {
    let nu = parse_coweight(coweight)?;
    let table = satake_table(&nu).ok();
    let oracle = match prime {
        Some(p) => Some(satake_oracle(&nu, p, window)?),
        None => None,
    };
    if table.is_none() && oracle.is_none() {
        return Err(usage(format!(
            "coweight {} is outside the symbolic table; pass --prime for the oracle",
            nu
        )));
    }
    let mut consistent = None;
    if let (Some(t), Some(o), Some(p)) = (&table, &oracle, prime) {
        let ok = o.equals_at_prime(t, p);
        consistent = Some(ok);
        if !ok {
            return Err(Failure::Math(format!(
                "satake oracle at p={} disagrees with the table for {}",
                p, nu
            )));
        }
    }
    let mut human = format!("coweight {}\n", nu);
    if let Some(t) = &table {
        human.push_str("  table:\n");
        for (w, c) in t.iter() {
            human.push_str(&format!("    {}  {}\n", w, c));
        }
    }
    if let Some(o) = &oracle {
        human.push_str(&format!("  oracle (p={}):\n", prime.unwrap()));
        for (w, c) in o.iter() {
            human.push_str(&format!("    {}  {}\n", w, c));
        }
    }
    if let Some(ok) = consistent {
        human.push_str(&format!("  oracle vs table: {}\n", if ok { "pass" } else { "MISMATCH" }));
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "satake",
        "inputs": { "coweight": nu.to_string(), "prime": prime },
        "table": table.as_ref().map(character_json),
        "oracle": oracle.as_ref().map(character_json),
        "consistent": consistent,
    });
    emit(report, human, as_json);
    Ok(())
}

fn run_convolve(
    mu: &str,
    nu: &str,
    p: u64,
    window: i64,
    cache_dir: &Option<PathBuf>,
    as_json: bool,
) -> Result<(), Failure> {
    let mu = parse_coweight(mu)?;
    let nu = parse_coweight(nu)?;
    let result = match cache_from_flags(cache_dir) {
        Some(cache) => cache.convolve(&mu, &nu, p, window)?,
        None => convolve_oracle(&mu, &nu, p, window)?,
    };
    let human = format!("c_{} * c_{} at p={}:\n  {}\n", mu, nu, p, result);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "convolve",
        "inputs": { "mu": mu.to_string(), "nu": nu.to_string(), "prime": p },
        "coefficients": hecke_json(&result),
    });
    emit(report, human, as_json);
    Ok(())
}

fn run_count(pattern: &str, p: u64, as_json: bool) -> Result<(), Failure> {
    let n = count_chain_pattern(pattern, p)?;
    let human = format!("{} at p={}: {}\n", pattern, p, n);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "count",
        "inputs": { "pattern": pattern, "prime": p },
        "count": n.to_string(),
    });
    emit(report, human, as_json);
    Ok(())
}

fn run_dl_points(p: u64, k: u32, as_json: bool) -> Result<(), Failure> {
    let n = dl_point_count(p, k)?;
    let human = format!("surface points over F_{{{}^{}}}: {}\n", p, k, n);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "dl-points",
        "inputs": { "prime": p, "degree": k },
        "count": n.to_string(),
    });
    emit(report, human, as_json);
    Ok(())
}

fn load_records(path: &PathBuf) -> Result<Vec<EigenData>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?;
    Ok(load_eigen_records(&text)?)
}

fn run_matrix(
    kind: &str,
    prime: Option<u64>,
    input: &Option<PathBuf>,
    ell: Option<u64>,
    as_json: bool,
) -> Result<(), Failure> {
    let matrix = match kind {
        "lr" => lr_matrix(prime),
        "ss" => ss_matrix(prime),
        other => return Err(usage(format!("matrix kind must be 'lr' or 'ss', got '{}'", other))),
    };
    let mut human = format!("{} matrix: {}\n", kind, matrix.display());
    let mut evals = Vec::new();
    if let Some(path) = input {
        for (i, e) in load_records(path)?.iter().enumerate() {
            let (det, residue) = match kind {
                "lr" => det_lr_eval(e, ell),
                _ => det_ss_eval(e, ell),
            };
            let name = e.label.clone().unwrap_or_else(|| format!("record {}", i));
            human.push_str(&format!("  {}: det = {}", name, det));
            if let Some(r) = residue {
                human.push_str(&format!(" = {} mod {}", r, ell.unwrap()));
            }
            human.push('\n');
            evals.push(json!({
                "label": e.label,
                "p": e.p,
                "det": det.to_string(),
                "det_mod": residue,
            }));
        }
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "matrix",
        "inputs": { "kind": kind, "prime": prime, "ell": ell },
        "matrix": matrix.display(),
        "determinants": evals,
    });
    emit(report, human, as_json);
    Ok(())
}

fn run_check(path: &PathBuf, ell: u64, u: Option<i32>, as_json: bool) -> Result<(), Failure> {
    let records = load_records(path)?;
    let mut human = String::new();
    let mut reports = Vec::new();
    let mut rejected = Vec::new();
    for (i, e) in records.iter().enumerate() {
        let name = e.label.clone().unwrap_or_else(|| format!("record {}", i));
        let q = hecke_polynomial(e);
        let r = pair_quadratic(e);
        let (det_lr, lr_mod) = det_lr_eval(e, Some(ell));
        let (det_ss, ss_mod) = det_ss_eval(e, Some(ell));
        match check_level_raising(e, ell, u) {
            Ok(rep) => {
                let gen = check_generic(e, ell)?;
                human.push_str(&format!(
                    "{} (p={}): special={} u={:?} depth={:?} det_lr mod {} = {} det_ss mod {} = {}\n",
                    name,
                    e.p,
                    rep.special,
                    rep.u,
                    rep.depth,
                    ell,
                    lr_mod.unwrap(),
                    ell,
                    ss_mod.unwrap()
                ));
                reports.push(json!({
                    "label": e.label,
                    "p": e.p,
                    "a1": e.a1.to_string(),
                    "a2": e.a2.to_string(),
                    "hecke_polynomial": q.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "pair_quadratic": r.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "report": serde_json::to_value(&rep).expect("serializable"),
                    "generic": serde_json::to_value(&gen).expect("serializable"),
                    "det_lr": det_lr.to_string(),
                    "det_lr_mod": lr_mod,
                    "det_ss": det_ss.to_string(),
                    "det_ss_mod": ss_mod,
                }));
            }
            Err(err) => {
                // A bad residue prime is a flag problem, not a defect of
                // any one record.
                if matches!(err, gsp4_hecke::error::EigenError::BadEll(_)) {
                    return Err(usage(err.to_string()));
                }
                human.push_str(&format!("{} (p={}): rejected: {}\n", name, e.p, err));
                reports.push(json!({
                    "label": e.label,
                    "p": e.p,
                    "error": err.to_string(),
                }));
                rejected.push((name, err));
            }
        }
    }
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "check",
        "inputs": { "ell": ell, "u": u, "records": records.len() },
        "reports": reports,
    });
    emit(report, human, as_json);
    match rejected.into_iter().next() {
        Some((name, err)) => Err(Failure::Math(format!("{}: {}", name, err))),
        None => Ok(()),
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Identity { primes } => run_identity(primes, cli.window_bound, cli.json),
        Cmd::Satake { coweight, prime } => run_satake(coweight, *prime, cli.window_bound, cli.json),
        Cmd::Convolve { mu, nu, prime } => {
            run_convolve(mu, nu, *prime, cli.window_bound, &cli.cache_dir, cli.json)
        }
        Cmd::Count { pattern, prime } => run_count(pattern, *prime, cli.json),
        Cmd::DlPoints { prime, degree } => run_dl_points(*prime, *degree, cli.json),
        Cmd::Matrix { kind, prime, input, ell } => {
            run_matrix(kind, *prime, input, *ell, cli.json)
        }
        Cmd::Check { input, ell, u } => run_check(input, *ell, *u, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error (mathematical): {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error (usage): {}", msg);
            ExitCode::from(2)
        }
    }
}
