//! Argument handling and command dispatch for `pmzv`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use padic_mzv::cache::set_caching;
use padic_mzv::kz::{local_function_latex, solve_kz_recursion, KzSolutionJson};
use padic_mzv::numeric::{lp_value, mpl_value_rational, multiple_bernoulli, zeta_p_numeric, LpSpec};
use padic_mzv::scalar::parse_rational;
use padic_mzv::symbolic::{
    abelianization_check, grouplike_check, lie_check, parse_expression, phi_coefficient, phi_expansion, phi_latex,
    shuffle_relations, verify_functional_equation, CheckReport, Style,
};
use padic_mzv::{MzvIndex, PadicNumber, Word};

pub const CACHE_DIR_VAR: &str = "PMZV_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "pmzv", version, about = "p-adic multiple zeta values, KZ solutions and the associator")]
pub struct Cli {
    /// Disable all in-memory and on-disk caches.
    #[arg(long, global = true)]
    pub seedless: bool,

    /// Largest accepted weight bound.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_weight: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    FunctionalEquations,
    #[value(alias = "groupliike")]
    Grouplike,
    Abelianization,
    Lie,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ζ_p(n) = p^n/(p^n − 1)·L_p(n, ω^{1−n}) for n ≥ 2.
    ZetaP {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        prec: i64,
    },
    /// Li_{k₁,…,k_m}(z) for a rational z with |z|_p < 1.
    Mpl {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        index: String,
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 10)]
        prec: i64,
    },
    /// The Kubota–Leopoldt L_p(s, ω^twist) at a rational s.
    Lp {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        #[arg(long, default_value_t = 10)]
        prec: i64,
    },
    /// Multiple Bernoulli numbers B_n for n ≤ nmax.
    Mbn {
        #[arg(long)]
        index: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Coefficients I_p(W) of the associator up to the given weight.
    Phi {
        #[arg(long)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Coefficients J(W) of the KZ solution at z = 0.
    KzExpand {
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 20)]
        zdeg: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The echelon basis of shuffle relations of one weight.
    Relations {
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        with_parity_vanishing: bool,
    },
    /// Normal form of an expression modulo the relations of its weight.
    Reduce {
        #[arg(long)]
        weight: usize,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        with_parity_vanishing: bool,
    },
    /// Runs a verification suite; exits 1 with the witnesses on failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        weight: usize,
    },
}

/// Process result: exit code and the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn usage(flag: &str, msg: impl std::fmt::Display) -> Self {
        Self { code: 2, stdout: String::new(), stderr: format!("error: {flag}: {msg}\n") }
    }
}

type CmdResult = Result<Outcome, Outcome>;

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn check_weight(w: usize, cap: usize) -> Result<(), Outcome> {
    if w == 0 {
        Err(Outcome::usage("--weight", "must be at least 1"))
    } else if w > cap {
        Err(Outcome::usage("--weight", format!("{w} exceeds the cap {cap} (raise it with --max-weight)")))
    } else {
        Ok(())
    }
}

fn parse_index(s: &str) -> Result<MzvIndex, Outcome> {
    s.parse().map_err(|e| Outcome::usage("--index", e))
}

fn parse_q(flag: &str, s: &str) -> Result<padic_mzv::Rational, Outcome> {
    parse_rational(s).ok_or_else(|| Outcome::usage(flag, format!("expected an integer or num/den, got {s:?}")))
}

fn padic_json(p: u64, v: &PadicNumber) -> serde_json::Value {
    json!({
        "value": v,
        "text": v.to_string(),
        "valuation": v.valuation(),
        "nonzero": !v.is_zero(),
        "prime": p,
    })
}

fn zeta_p(p: u64, n: u32, prec: i64) -> CmdResult {
    if n < 2 {
        return Err(Outcome::usage("--n", "must be at least 2"));
    }
    if prec < 1 {
        return Err(Outcome::usage("--prec", "must be at least 1"));
    }
    let v = zeta_p_numeric(n, p, prec).map_err(|e| Outcome::usage("--p", e))?;
    let mut out = padic_json(p, &v);
    out["n"] = json!(n);
    Ok(Outcome::ok(to_json(&out)))
}

fn mpl(p: u64, index: &str, z: &str, prec: i64) -> CmdResult {
    let ix = parse_index(index)?;
    let zq = parse_q("--z", z)?;
    if prec < 1 {
        return Err(Outcome::usage("--prec", "must be at least 1"));
    }
    let v = mpl_value_rational(&ix, &zq, p, prec).map_err(|e| match e {
        padic_mzv::Error::InvalidPrime(_) => Outcome::usage("--p", e),
        _ => Outcome::usage("--z", e),
    })?;
    let mut out = padic_json(p, &v);
    out["index"] = json!(ix);
    out["z"] = json!(z);
    Ok(Outcome::ok(to_json(&out)))
}

fn lp(p: u64, s: &str, twist: i64, prec: i64) -> CmdResult {
    let sq = parse_q("--s", s)?;
    if prec < 1 {
        return Err(Outcome::usage("--prec", "must be at least 1"));
    }
    let spec = LpSpec::at_rational(p, &sq, twist).map_err(|e| Outcome::usage("--p", e))?;
    let v = lp_value(&spec, prec).map_err(|e| Outcome::usage("--s", e))?;
    let mut out = padic_json(p, &v);
    out["s"] = json!(s);
    out["twist"] = json!(spec.twist());
    Ok(Outcome::ok(to_json(&out)))
}

fn mbn(index: &str, nmax: usize) -> CmdResult {
    let ix = parse_index(index)?;
    Ok(Outcome::ok(to_json(&multiple_bernoulli(&ix, nmax))))
}

fn phi(weight: usize, format: Format) -> CmdResult {
    let expansion = phi_expansion(weight);
    let text = match format {
        Format::Latex => format!("{}\n", phi_latex(&expansion)),
        Format::Json => {
            // every word up to the bound, zeros included, in canonical word order
            let coefficients: Vec<serde_json::Value> = std::iter::once(Word::EMPTY)
                .chain(Word::all_up_to(weight))
                .map(|w| json!({ "word": w, "coefficient": phi_coefficient(&w).render(Style::Plain) }))
                .collect();
            to_json(&json!({ "weight_bound": weight, "coefficients": coefficients }))
        }
    };
    Ok(Outcome::ok(text))
}

fn kz_expand(weight: usize, zdeg: usize, format: Format) -> CmdResult {
    let sol = solve_kz_recursion(weight, zdeg);
    let text = match format {
        Format::Json => to_json(&json!({
            "weight_bound": weight,
            "zdeg": zdeg,
            "coefficients": KzSolutionJson(&sol),
        })),
        Format::Latex => {
            let mut s = String::new();
            for (w, f) in &sol.coeffs {
                s.push_str(&format!("J({w}) = {}\n", local_function_latex(f)));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn relations(weight: usize, parity: bool) -> CmdResult {
    let set = shuffle_relations(weight, parity);
    let basis: Vec<String> = set.basis().iter().map(|b| b.to_string()).collect();
    Ok(Outcome::ok(to_json(&json!({
        "weight": weight,
        "parity_vanishing": parity,
        "generators": set.relations().len(),
        "rank": set.rank(),
        "basis": basis,
    }))))
}

fn reduce(weight: usize, expr: &str, parity: bool) -> CmdResult {
    let x = parse_expression(expr).map_err(|e| Outcome::usage("--expr", e))?;
    let set = shuffle_relations(weight, parity);
    let r = set.reduce(&x).map_err(|e| Outcome::usage("--expr", e))?;
    Ok(Outcome::ok(to_json(&json!({
        "weight": weight,
        "parity_vanishing": parity,
        "input": x.to_string(),
        "normal_form": r.to_string(),
        "in_ideal": r.is_zero(),
    }))))
}

fn report_outcome(report: &CheckReport) -> Outcome {
    let text = to_json(&json!({
        "suite": report.check,
        "weight_bound": report.weight_bound,
        "checked": report.checked,
        "passed": report.passed(),
        "witnesses": report.witnesses,
    }));
    Outcome { code: if report.passed() { 0 } else { 1 }, stdout: text, stderr: String::new() }
}

fn verify(suite: Suite, weight: usize) -> CmdResult {
    let report = match suite {
        Suite::Grouplike => grouplike_check(weight),
        Suite::Abelianization => abelianization_check(weight),
        Suite::Lie => lie_check(weight),
        Suite::FunctionalEquations => {
            let reports: Vec<_> = Word::all_up_to(weight).map(|w| verify_functional_equation(&w)).collect();
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
            let text = to_json(&json!({
                "suite": "functional-equations",
                "weight_bound": weight,
                "checked": reports.len(),
                "passed": failed.is_empty(),
                "witnesses": failed,
            }));
            let code = if failed.is_empty() { 0 } else { 1 };
            return Ok(Outcome { code, stdout: text, stderr: String::new() });
        }
    };
    Ok(report_outcome(&report))
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::ZetaP { p, n, prec } => zeta_p(*p, *n, *prec),
        Command::Mpl { p, index, z, prec } => mpl(*p, index, z, *prec),
        Command::Lp { p, s, twist, prec } => lp(*p, s, *twist, *prec),
        Command::Mbn { index, nmax } => mbn(index, *nmax),
        Command::Phi { weight, format } => {
            check_weight(*weight, cli.max_weight)?;
            phi(*weight, *format)
        }
        Command::KzExpand { weight, zdeg, format } => {
            check_weight(*weight, cli.max_weight)?;
            kz_expand(*weight, *zdeg, *format)
        }
        Command::Relations { weight, with_parity_vanishing } => {
            check_weight(*weight, cli.max_weight)?;
            relations(*weight, *with_parity_vanishing)
        }
        Command::Reduce { weight, expr, with_parity_vanishing } => {
            check_weight(*weight, cli.max_weight)?;
            reduce(*weight, expr, *with_parity_vanishing)
        }
        Command::Verify { suite, weight } => {
            check_weight(*weight, cli.max_weight)?;
            verify(*suite, *weight)
        }
    }
}

/// On-disk location for the output of a command line, if caching applies.
fn cache_path(args: &[String]) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_VAR)?;
    let key: String = std::iter::once(env!("CARGO_PKG_VERSION").to_string())
        .chain(args.iter().skip(1).cloned())
        .collect::<Vec<_>>()
        .join(" ")
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect();
    Some(PathBuf::from(dir).join(format!("{key}.out")))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    set_caching(!cli.seedless);
    let strings: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let path = if cli.seedless { None } else { cache_path(&strings) };
    if let Some(text) = path.as_ref().and_then(|p| fs::read_to_string(p).ok()) {
        return Outcome::ok(text);
    }
    let outcome = dispatch(&cli).unwrap_or_else(|e| e);
    if let (Some(p), 0) = (&path, outcome.code) {
        // best effort: an unwritable cache directory only costs recomputation
        if fs::create_dir_all(p.parent().expect("joined path has a parent")).is_ok() {
            let _ = fs::write(p, &outcome.stdout);
        }
    }
    outcome
}
