//! Command-line front end for the `pmaximal` library.
//!
//! [`run`] is the whole program minus process I/O, so tests can drive it
//! directly. Exit codes: 0 computed with a positive verdict, 1 computed
//! with a negative verdict, 2 input or usage error, 3 resource cap hit.

pub mod json;
pub mod parse;

use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand};
use pmaximal::criteria::{self, CriteriaConfig, CriteriaError, PrimeSelection, WitnessInput};
use pmaximal::exec::Exec;
use pmaximal::fppoly::{self, FactorConfig, FpError};
use pmaximal::intpoly::IntPoly;
use pmaximal::oracle::{self, OracleConfig, OracleError};
use pmaximal::tower::{Tower, TowerConfig, TowerError};
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pmaximal", version, about = "p-maximality of monogenic orders and nested square root towers")]
pub struct Cli {
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized factorization over F_p.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Deepest tower level whose polynomial is built.
    #[arg(long, global = true)]
    depth_cap: Option<u32>,
    /// K in valuations computed modulo p^K.
    #[arg(long, global = true)]
    val_cap: Option<u32>,
    /// Largest p^deg the index oracle enumerates.
    #[arg(long, global = true)]
    enum_cap: Option<u64>,
    /// Trial division bound for discriminant factoring.
    #[arg(long, global = true)]
    trial_bound: Option<u64>,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PolyPrime {
    /// Polynomial in t, e.g. "t^2 - 5" or "coeffs:-5,0,1".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long)]
    prime: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor f modulo p.
    FactorModp(PolyPrime),
    /// Dedekind's criterion at p.
    Dedekind(PolyPrime),
    /// Local DVR test at the ideal (p, mu(θ)).
    Local {
        #[command(flatten)]
        pp: PolyPrime,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Whether Z[θ] is the maximal order.
    Maximal {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Check only these primes (comma separated) instead of the
        /// discriminant's.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Failure certificates.
    Witness {
        #[command(subcommand)]
        action: WitnessCommand,
    },
    /// Towers x_{n+1} = sqrt(nu + x_n).
    Tower {
        #[command(subcommand)]
        action: TowerCommand,
    },
    /// Brute-force decision of p | [O_K : Z[θ]].
    Oracle(PolyPrime),
}

#[derive(Subcommand, Debug)]
enum WitnessCommand {
    /// Complete a certificate given in one formalism to all three.
    #[command(group(ArgGroup::new("form").required(true).args(["index", "uchida", "lueneburg"])))]
    Convert {
        #[command(flatten)]
        pp: PolyPrime,
        /// Index into the factorization of f mod p.
        #[arg(long)]
        index: Option<usize>,
        /// F with f in (p, F(t))^2.
        #[arg(long, allow_hyphen_values = true)]
        uchida: Option<String>,
        /// phi naming the ideal (p, phi(θ)).
        #[arg(long, allow_hyphen_values = true)]
        lueneburg: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum TowerCommand {
    /// C_n, D_n and P_n for the first levels.
    Show {
        #[arg(long, allow_negative_numbers = true)]
        nu: i64,
        #[arg(long, default_value_t = 4)]
        max_level: u32,
    },
    /// Local verdicts at every level against the pivot-level theorem.
    Check {
        #[arg(long, allow_negative_numbers = true)]
        nu: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        prime: Vec<u64>,
        #[arg(long, default_value_t = 6)]
        max_level: u32,
    },
    /// Supports, periodicity, divisibility, coprimality and separability.
    Lemmas {
        #[arg(long, allow_negative_numbers = true)]
        nu: i64,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// v_p(C_{k n(p)}) for k = 1..=steps+1.
    Rigidity {
        #[arg(long, allow_negative_numbers = true)]
        nu: i64,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 3)]
        steps: u32,
    },
    /// Factored discriminant of P_n.
    Disc {
        #[arg(long, allow_negative_numbers = true)]
        nu: i64,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        prime: Option<u64>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("invalid {what}: {source}")]
    Parse {
        what: &'static str,
        source: parse::ParseError,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Cap(_) => EXIT_CAP,
            _ => EXIT_INPUT,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Input(_) => "input",
            CliError::Cap(_) => "cap_exceeded",
        }
    }

    fn detail(&self) -> Value {
        match self {
            CliError::Parse { what, source } => json!({
                "argument": what,
                "column": source.column,
                "expected": source.expected,
                "found": source.found,
            }),
            _ => Value::Null,
        }
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FpError> for CliError {
    fn from(e: FpError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::DepthCapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a command produced, before rendering.
struct Report {
    code: i32,
    result: Value,
    text: String,
}

struct Ctx {
    criteria: CriteriaConfig,
    tower: TowerConfig,
    oracle: OracleConfig,
    warnings: Vec<String>,
}

/// Everything the process prints, plus its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn poly_arg(what: &'static str, src: &str) -> Result<IntPoly, CliError> {
    parse::parse_poly(src).map_err(|source| CliError::Parse { what, source })
}

fn verdict(positive: bool) -> i32 {
    if positive {
        EXIT_POSITIVE
    } else {
        EXIT_NEGATIVE
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::FactorModp(_) => "factor-modp",
        Command::Dedekind(_) => "dedekind",
        Command::Local { .. } => "local",
        Command::Maximal { .. } => "maximal",
        Command::Witness { .. } => "witness convert",
        Command::Tower { action } => match action {
            TowerCommand::Show { .. } => "tower show",
            TowerCommand::Check { .. } => "tower check",
            TowerCommand::Lemmas { .. } => "tower lemmas",
            TowerCommand::Rigidity { .. } => "tower rigidity",
            TowerCommand::Disc { .. } => "tower disc",
        },
        Command::Oracle(_) => "oracle",
    }
}

fn inputs(cli: &Cli, ctx: &Ctx) -> Value {
    let mut m = match &cli.command {
        Command::FactorModp(pp) | Command::Dedekind(pp) | Command::Oracle(pp) => {
            json!({"poly": pp.poly, "prime": pp.prime})
        }
        Command::Local { pp, mu } => json!({"poly": pp.poly, "prime": pp.prime, "mu": mu}),
        Command::Maximal { poly, primes } => json!({"poly": poly, "primes": primes}),
        Command::Witness {
            action: WitnessCommand::Convert { pp, index, uchida, lueneburg },
        } => json!({
            "poly": pp.poly, "prime": pp.prime,
            "index": index, "uchida": uchida, "lueneburg": lueneburg,
        }),
        Command::Tower { action } => match action {
            TowerCommand::Show { nu, max_level } => json!({"nu": nu, "max_level": max_level}),
            TowerCommand::Check { nu, prime, max_level } => {
                json!({"nu": nu, "prime": prime, "max_level": max_level})
            }
            TowerCommand::Lemmas { nu, prime, depth } => json!({"nu": nu, "prime": prime, "depth": depth}),
            TowerCommand::Rigidity { nu, prime, steps } => json!({"nu": nu, "prime": prime, "steps": steps}),
            TowerCommand::Disc { nu, level, prime } => json!({"nu": nu, "level": level, "prime": prime}),
        },
    };
    let obj = m.as_object_mut().expect("object");
    obj.insert(
        "config".into(),
        json!({
            "seed": ctx.criteria.factor.seed,
            "depth_cap": ctx.tower.poly_depth_cap,
            "val_cap": ctx.tower.val_cap,
            "enum_cap": ctx.oracle.enum_cap,
            "trial_bound": ctx.criteria.trial_bound,
            "parallel": ctx.criteria.exec.is_parallel(),
        }),
    );
    m
}

fn factor_modp(ctx: &Ctx, pp: &PolyPrime) -> Result<Report, CliError> {
    let f = poly_arg("--poly", &pp.poly)?;
    let fa = fppoly::reduce(&f, pp.prime)?.factor_with(&ctx.criteria.factor)?;
    let mut text = format!("{f} mod {} =", pp.prime);
    if fa.unit != 1 || fa.is_empty() {
        write!(text, " {}", fa.unit).unwrap();
    }
    for (phi, e) in &fa.factors {
        if *e == 1 {
            write!(text, " ({phi})").unwrap();
        } else {
            write!(text, " ({phi})^{e}").unwrap();
        }
    }
    Ok(Report {
        code: EXIT_POSITIVE,
        result: json!({"input": json::poly(&f), "factorization": json::factorization(&fa)}),
        text,
    })
}

fn dedekind(ctx: &Ctx, pp: &PolyPrime) -> Result<Report, CliError> {
    let f = poly_arg("--poly", &pp.poly)?;
    let r = criteria::dedekind_p_maximal_with(&f, pp.prime, &ctx.criteria)?;
    let witnesses = r
        .offending
        .iter()
        .map(|&index| {
            criteria::convert_witness_with(&f, &WitnessInput::Dedekind { p: pp.prime, index }, &ctx.criteria)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = format!(
        "{f} is {}{}-maximal",
        if r.p_maximal { "" } else { "not " },
        pp.prime
    );
    for w in &witnesses {
        write!(
            text,
            "\nwitness: factor {} ({}) ; f in {}^2 ; localization at {} is not a DVR",
            w.dedekind_index,
            w.phi,
            w.uchida_ideal(),
            w.lueneburg_ideal()
        )
        .unwrap();
    }
    Ok(Report {
        code: verdict(r.p_maximal),
        result: json::dedekind(&r, &witnesses),
        text,
    })
}

fn local(pp: &PolyPrime, mu: &str) -> Result<Report, CliError> {
    let f = poly_arg("--poly", &pp.poly)?;
    let mu = poly_arg("--mu", mu)?;
    let r = criteria::dvr_local_test(&f, pp.prime, &mu)?;
    let text = format!(
        "f = ({mu})*({}) + {}*({})\ngcd(mu, g, h) mod {} = {}\nf {} in ({}, {mu})^2: localization {} a DVR",
        r.h,
        pp.prime,
        r.g,
        pp.prime,
        r.gcd_triple,
        if r.in_m_squared { "is" } else { "is not" },
        pp.prime,
        if r.dvr { "is" } else { "is not" },
    );
    Ok(Report {
        code: verdict(r.dvr),
        result: json::local(&r),
        text,
    })
}

fn maximal(ctx: &mut Ctx, poly: &str, primes: &[u64]) -> Result<Report, CliError> {
    let f = poly_arg("--poly", poly)?;
    let mode = if primes.is_empty() {
        PrimeSelection::Auto
    } else {
        PrimeSelection::Primes(primes.to_vec())
    };
    let r = criteria::maximal_order_check_with(&f, &mode, &ctx.criteria)?;
    let v = r.verdict();
    let code = match v {
        Some(true) => EXIT_POSITIVE,
        Some(false) => EXIT_NEGATIVE,
        None => EXIT_CAP,
    };
    if v.is_none() {
        ctx.warnings.push(format!(
            "discriminant cofactor {} not factored within trial bound {}",
            r.unresolved, ctx.criteria.trial_bound
        ));
    }
    let mut text = format!("disc({f}) = {}", r.disc);
    for c in &r.checked_primes {
        write!(
            text,
            "\n  p = {}: {}",
            c.p,
            if c.p_maximal { "p-maximal" } else { "not p-maximal" }
        )
        .unwrap();
        for w in &c.witnesses {
            write!(text, " witness {}", w.uchida_ideal()).unwrap();
        }
    }
    text.push_str(match v {
        Some(true) => "\nZ[θ] is the maximal order",
        Some(false) => "\nZ[θ] is not the maximal order",
        None => "\nundecided: unfactored discriminant cofactor",
    });
    let result = json!({
        "disc": json::int(&r.disc),
        "checked_primes": r.checked_primes.iter().map(|c| json!({
            "p": c.p,
            "disc_valuation": c.disc_valuation,
            "p_maximal": c.p_maximal,
            "witnesses": c.witnesses.iter().map(json::witness).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "skipped_primes": r.skipped_primes,
        "unresolved": json::int(&r.unresolved),
        "maximal": v,
    });
    Ok(Report { code, result, text })
}

fn witness_convert(
    ctx: &Ctx,
    pp: &PolyPrime,
    index: Option<usize>,
    uchida: Option<&str>,
    lueneburg: Option<&str>,
) -> Result<Report, CliError> {
    let f = poly_arg("--poly", &pp.poly)?;
    let p = pp.prime;
    let input = match (index, uchida, lueneburg) {
        (Some(index), _, _) => WitnessInput::Dedekind { p, index },
        (_, Some(src), _) => WitnessInput::Uchida {
            p,
            big_f: poly_arg("--uchida", src)?,
        },
        (_, _, Some(src)) => WitnessInput::Lueneburg {
            p,
            phi: fppoly::reduce(&poly_arg("--lueneburg", src)?, p)?,
        },
        _ => unreachable!("clap requires one form"),
    };
    match criteria::convert_witness_with(&f, &input, &ctx.criteria) {
        Ok(w) => Ok(Report {
            code: EXIT_NEGATIVE,
            text: format!(
                "Dedekind: factor {} ({}) of f mod {p}\nUchida: f in {}^2\nLueneburg: localization at {} is not a DVR",
                w.dedekind_index,
                w.phi,
                w.uchida_ideal(),
                w.lueneburg_ideal()
            ),
            result: json!({"witness": true, "triple": json::witness(&w)}),
        }),
        Err(CriteriaError::NotAWitness {
            reason,
            verdict: Some(local),
        }) => Ok(Report {
            code: EXIT_POSITIVE,
            text: format!("not a witness: {reason}"),
            result: json!({"witness": false, "reason": reason, "local": json::local(&local)}),
        }),
        Err(e) => Err(e.into()),
    }
}

fn tower(ctx: &mut Ctx, nu: i64) -> Result<Tower, CliError> {
    let tw = Tower::with_config(nu, ctx.tower.clone())?;
    if tw.below_stated_range() {
        ctx.warnings.push(
            "nu = 2 satisfies the standing assumptions but lies below nu >= 3, where the tower results are stated"
                .into(),
        );
    }
    Ok(tw)
}

fn tower_show(ctx: &mut Ctx, nu: i64, max_level: u32) -> Result<Report, CliError> {
    let tw = tower(ctx, nu)?;
    let mut levels = Vec::new();
    let mut text = format!("nu = {nu}, Eisenstein shift a = {}", tw.eisenstein_shift());
    for n in 0..=max_level {
        let c = tw.c_term(n)?;
        let d = tw.d_coeff(n)?;
        let mut entry = json!({"n": n, "c": json::int(&c), "d": json::int(&d), "degree": 1u64 << n});
        write!(text, "\nn = {n}: C = {c}, D = {d}").unwrap();
        if n <= 4 {
            let pn = tw.minpoly(n)?;
            write!(text, ", P = {pn}").unwrap();
            entry["minpoly"] = json::poly(&pn);
        }
        levels.push(entry);
    }
    Ok(Report {
        code: EXIT_POSITIVE,
        result: json!({"nu": nu, "eisenstein_shift": tw.eisenstein_shift(), "levels": levels}),
        text,
    })
}

fn tower_check(ctx: &mut Ctx, nu: i64, primes: &[u64], max_level: u32) -> Result<Report, CliError> {
    let tw = tower(ctx, nu)?;
    let reports = ctx
        .tower
        .exec
        .map_slice(primes, |&p| tw.theorem5_check(p, 1..=max_level))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let holds = reports.iter().all(|r| r.violations.is_empty());
    let mut text = format!("nu = {nu}, levels 1..={max_level}");
    for r in &reports {
        let n_p = r.n_p.map_or("undefined".to_string(), |n| n.to_string());
        let v = r.v_p_c.map_or("-".to_string(), |v| v.to_string());
        write!(
            text,
            "\n  p = {}: n(p) = {n_p}, v_p(C_n(p)) = {v}, {}",
            r.p,
            if r.all_dvr() { "all DVR" } else { "some ideal not a DVR" }
        )
        .unwrap();
        for l in r.levels.iter().filter(|l| !l.all_dvr) {
            write!(text, "\n    level {}: not all localizations are DVRs", l.n).unwrap();
        }
        for v in &r.violations {
            write!(text, "\n    VIOLATION: {v}").unwrap();
        }
    }
    Ok(Report {
        code: verdict(holds),
        result: json!({
            "nu": nu,
            "holds": holds,
            "primes": reports.iter().map(json::tower_prime).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn tower_lemmas(ctx: &mut Ctx, nu: i64, p: u64, depth: u32) -> Result<Report, CliError> {
    let tw = tower(ctx, nu)?;
    let r = tw.lemma_suite(p, depth)?;
    if r.separability.is_none() {
        ctx.warnings
            .push("separability is stated for odd p only and was not checked at p = 2".into());
    }
    let mut text = format!("nu = {nu}, p = {p}, n(p) = {}, depth {depth}: ", r.n_p);
    let fails = r.failures();
    if fails.is_empty() {
        text.push_str("all checks hold");
    } else {
        text.push_str("FAILURES");
        for f in &fails {
            write!(text, "\n  {f}").unwrap();
        }
    }
    Ok(Report {
        code: verdict(fails.is_empty()),
        result: json::lemmas(&r),
        text,
    })
}

fn tower_rigidity(ctx: &mut Ctx, nu: i64, p: u64, steps: u32) -> Result<Report, CliError> {
    let tw = tower(ctx, nu)?;
    let data = tw.rigidity_probe(p, steps)?;
    ctx.warnings
        .push("data only: constancy of the valuation along multiples of n(p) is not asserted".into());
    let mut text = format!("nu = {nu}, p = {p}");
    for (level, v) in &data {
        write!(text, "\n  v_p(C_{level}) = {v}").unwrap();
    }
    Ok(Report {
        code: EXIT_POSITIVE,
        result: json!({
            "nu": nu,
            "p": p,
            "valuations": data.iter().map(|(n, v)| json!({"level": n, "valuation": json::valuation(v)})).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn tower_disc(ctx: &mut Ctx, nu: i64, level: u32, prime: Option<u64>) -> Result<Report, CliError> {
    let tw = tower(ctx, nu)?;
    let fd = tw.disc_factored(level)?;
    let mut text = format!("disc(P_{level}) = 2^{} * {nu}^{}", fd.exp2, fd.nu_exponent);
    for (k, e) in fd.c_exponents.iter().enumerate() {
        if *e > 0 {
            write!(text, " * C_{}^{e}", k + 1).unwrap();
        }
    }
    let value = (level <= 4).then(|| fd.value(&tw)).transpose()?;
    if let Some(v) = &value {
        write!(text, "\n  = {v}").unwrap();
    }
    let val = prime.map(|p| tw.disc_valuation(level, p)).transpose()?;
    if let (Some(p), Some(v)) = (prime, &val) {
        write!(text, "\nv_{p}(disc) = {v}").unwrap();
    }
    Ok(Report {
        code: EXIT_POSITIVE,
        result: json!({
            "nu": nu,
            "level": level,
            "exp2": fd.exp2,
            "nu_exponent": fd.nu_exponent,
            "c_exponents": fd.c_exponents,
            "sign": fd.sign(&tw)?,
            "value": value.as_ref().map(json::int),
            "prime": prime,
            "valuation": val.as_ref().map(json::valuation),
        }),
        text,
    })
}

fn oracle_cmd(ctx: &mut Ctx, pp: &PolyPrime) -> Result<Report, CliError> {
    let f = poly_arg("--poly", &pp.poly)?;
    ctx.warnings
        .push("f is assumed irreducible over Q; this is not checked".into());
    let v = oracle::index_divisible_by_p_with(&f, pp.prime, &ctx.oracle)?;
    let text = match (&v.certificate, &v.certificate_charpoly) {
        (Some(a), Some(cp)) => {
            let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            format!(
                "{} divides the index of Z[θ]: a = ({}), (a_0 + a_1 θ + ...)/{} has characteristic polynomial {cp}",
                pp.prime,
                a.join(", "),
                pp.prime
            )
        }
        _ => format!(
            "{} does not divide the index of Z[θ] ({} classes searched)",
            pp.prime, v.classes
        ),
    };
    Ok(Report {
        code: verdict(!v.divisible),
        result: json!({
            "p": v.p,
            "divisible": v.divisible,
            "certificate": v.certificate,
            "certificate_charpoly": v.certificate_charpoly.as_ref().map(json::poly),
            "classes": v.classes,
        }),
        text,
    })
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<Report, CliError> {
    match &cli.command {
        Command::FactorModp(pp) => factor_modp(ctx, pp),
        Command::Dedekind(pp) => dedekind(ctx, pp),
        Command::Local { pp, mu } => local(pp, mu),
        Command::Maximal { poly, primes } => maximal(ctx, poly, primes),
        Command::Witness {
            action: WitnessCommand::Convert { pp, index, uchida, lueneburg },
        } => witness_convert(ctx, pp, *index, uchida.as_deref(), lueneburg.as_deref()),
        Command::Tower { action } => match action {
            TowerCommand::Show { nu, max_level } => tower_show(ctx, *nu, *max_level),
            TowerCommand::Check { nu, prime, max_level } => tower_check(ctx, *nu, prime, *max_level),
            TowerCommand::Lemmas { nu, prime, depth } => tower_lemmas(ctx, *nu, *prime, *depth),
            TowerCommand::Rigidity { nu, prime, steps } => tower_rigidity(ctx, *nu, *prime, *steps),
            TowerCommand::Disc { nu, level, prime } => tower_disc(ctx, *nu, *level, *prime),
        },
        Command::Oracle(pp) => oracle_cmd(ctx, pp),
    }
}

const COMMAND_NAMES: [&str; 11] = [
    "factor-modp",
    "dedekind",
    "local",
    "maximal",
    "witness convert",
    "tower show",
    "tower check",
    "tower lemmas",
    "tower rigidity",
    "tower disc",
    "oracle",
];

/// Best-effort command name for argument lists clap rejected; empty when
/// no known command is recognizable.
fn usage_command_name(args: &[std::ffi::OsString]) -> String {
    let words: Vec<&str> = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .filter(|a| !a.starts_with('-'))
        .take(2)
        .collect();
    let two = words.join(" ");
    let one = words.first().copied().unwrap_or("");
    let found = [two.as_str(), one].into_iter().find(|c| COMMAND_NAMES.contains(c));
    found.unwrap_or("").to_string()
}

fn envelope(command: &str, inputs: Value, result: Value, warnings: &[String], error: Option<Value>) -> String {
    let mut env = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
        "warnings": warnings,
    });
    if let Some(e) = error {
        env["error"] = e;
    }
    let mut s = serde_json::to_string_pretty(&env).expect("serializable");
    s.push('\n');
    s
}

fn context(cli: &Cli) -> Ctx {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let factor = FactorConfig {
        seed: cli.seed.unwrap_or(FactorConfig::default().seed),
        ..FactorConfig::default()
    };
    let criteria = CriteriaConfig {
        factor: factor.clone(),
        trial_bound: cli.trial_bound.unwrap_or(CriteriaConfig::default().trial_bound),
        exec,
    };
    let td = TowerConfig::default();
    let tower = TowerConfig {
        poly_depth_cap: cli.depth_cap.unwrap_or(td.poly_depth_cap),
        val_cap: cli.val_cap.unwrap_or(td.val_cap),
        trial_bound: criteria.trial_bound,
        factor,
        exec,
        ..td
    };
    let oracle = OracleConfig {
        enum_cap: cli.enum_cap.unwrap_or(OracleConfig::default().enum_cap),
        exec,
    };
    Ctx {
        criteria,
        tower,
        oracle,
        warnings: Vec::new(),
    }
}

/// Runs the program on `args` (including the binary name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_POSITIVE };
            let rendered = e.render().to_string();
            if code == EXIT_POSITIVE {
                return Output { code, stdout: rendered, stderr: String::new() };
            }
            let stdout = if wants_json {
                let command = usage_command_name(&args);
                envelope(
                    &command,
                    json!({"argv": args.iter().skip(1).map(|a| a.to_string_lossy()).collect::<Vec<_>>()}),
                    Value::Null,
                    &[],
                    Some(json!({"kind": "usage", "message": rendered.trim_end(), "detail": null})),
                )
            } else {
                String::new()
            };
            return Output { code, stdout, stderr: rendered };
        }
    };
    let mut ctx = context(&cli);
    let name = command_name(&cli.command);
    let inputs = inputs(&cli, &ctx);
    match dispatch(&cli, &mut ctx) {
        Ok(report) => {
            let stdout = if cli.json {
                envelope(name, inputs, report.result, &ctx.warnings, None)
            } else {
                let mut s = report.text;
                s.push('\n');
                s
            };
            let stderr: String = ctx.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            Output { code: report.code, stdout, stderr }
        }
        Err(e) => {
            let stderr = format!("error: {e}\n");
            let stdout = if cli.json {
                envelope(
                    name,
                    inputs,
                    Value::Null,
                    &ctx.warnings,
                    Some(json!({"kind": e.kind(), "message": e.to_string(), "detail": e.detail()})),
                )
            } else {
                String::new()
            };
            Output { code: e.code(), stdout, stderr }
        }
    }
}

/// Renders `f` in the grammar accepted by [`parse::parse_poly`].
pub fn render(f: &IntPoly) -> String {
    f.to_string()
}
