use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kronecker::bounds::{alpha_pair, bound_report, lemma4_check};
use kronecker::covering::{certified_alpha, exact_alpha, AlphaInterval, CoveringInstance, Method};
use kronecker::harness::{
    emit_report, format_sig, route, scan, verify_claim, write_report, Claim, ReportFormat, Route, ScanConfig,
    VerifyOutcome,
};
use kronecker::numbers::{canonicalize, kappa_from_alpha, Rational, Triple};
use kronecker::oracle::{oracle_alpha, OracleConfig};
use kronecker::{KroneckerError, Result};

#[derive(Parser)]
#[command(name = "kronecker", version, about = "Angular Kronecker constants of 2- and 3-element integer sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute α(S) for a set of two or three nonzero integers.
    #[command(allow_negative_numbers = true)]
    Alpha {
        #[arg(required = true, num_args = 2..=3)]
        set: Vec<i64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Covering)]
        method: MethodArg,
        /// Width of the certified enclosure (covering method).
        #[arg(long, default_value = "1e-6")]
        tol: Rational,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form bounds and lattice data for a 3-element set.
    #[command(allow_negative_numbers = true)]
    Bounds {
        n1: i64,
        n2: i64,
        n3: i64,
        #[arg(long)]
        json: bool,
    },
    /// Bounds and certified α for every class with n3 <= max.
    Scan {
        #[arg(long)]
        max_n3: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Also compute the exact maximum for every class.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value = "1e-6")]
        tol: Rational,
        /// Record per-class runtimes (makes reports non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Check an upper-bound claim on every class with n3 <= max.
    #[command(group(ArgGroup::new("claim").required(true).args(["five_sixteenths", "conjecture"])))]
    Verify {
        #[arg(long)]
        max_n3: i64,
        /// α <= 5/16.
        #[arg(long)]
        five_sixteenths: bool,
        /// α <= 1/4 with equality only on the {1, 2, 3} class.
        #[arg(long)]
        conjecture: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// κ = 2 sin(π α).
    Kappa {
        #[arg(long)]
        alpha: Rational,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Covering,
    Exact,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool> {
    let mut out = io::stdout().lock();
    match cmd {
        Command::Alpha { set, method, tol, json } => {
            let (interval, canonical) = compute_alpha(&set, method, tol)?;
            print_alpha(&mut out, &set, canonical, &interval, json)?;
            Ok(true)
        }
        Command::Bounds { n1, n2, n3, json } => {
            print_bounds(&mut out, &Triple::new(n1, n2, n3)?, json)?;
            Ok(true)
        }
        Command::Scan { max_n3, jobs, out: path, format, exact, tol, timing } => {
            let mut cfg = ScanConfig::new(max_n3, tol);
            cfg.jobs = jobs;
            cfg.exact = exact;
            cfg.timing = timing;
            let records = scan(&cfg)?;
            let format = match format {
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Json => ReportFormat::Json,
            };
            match path {
                Some(p) => emit_report(&records, format, &p)?,
                None => write_report(&records, format, &mut out)?,
            }
            Ok(true)
        }
        Command::Verify { max_n3, five_sixteenths, conjecture: _, jobs, json } => {
            let claim = if five_sixteenths { Claim::FiveSixteenths } else { Claim::QuarterConjecture };
            let outcome = verify_claim(claim, max_n3, jobs)?;
            print_verify(&mut out, &outcome, json)?;
            Ok(outcome.pass)
        }
        Command::Kappa { alpha } => {
            let k = kappa_from_alpha(alpha.to_f64())?;
            writeln!(out, "{}", format_sig(k, 12))?;
            Ok(true)
        }
    }
}

/// Returns the interval and, for 3-element sets, the canonical triple used.
fn compute_alpha(set: &[i64], method: MethodArg, tol: Rational) -> Result<(AlphaInterval, Option<[i64; 3]>)> {
    if set.len() == 2 {
        return match method {
            MethodArg::Oracle => Ok((oracle_alpha(set, &OracleConfig::default())?, None)),
            _ => Ok((AlphaInterval::exact(alpha_pair(set[0], set[1])?, Method::ClosedForm), None)),
        };
    }
    let t = Triple::new(set[0], set[1], set[2])?;
    let ct = match route(&t) {
        Route::Oracle(ct) => {
            if !matches!(method, MethodArg::Oracle) {
                eprintln!("note: absolute values are not distinct, using the oracle");
            }
            return Ok((oracle_alpha(set, &OracleConfig::default())?, Some(ct.values())));
        }
        Route::Covering(ct) => ct,
    };
    let interval = match method {
        MethodArg::Oracle => oracle_alpha(set, &OracleConfig::default())?,
        MethodArg::Covering => certified_alpha(&CoveringInstance::new(&ct)?, tol)?,
        MethodArg::Exact => AlphaInterval::exact(exact_alpha(&CoveringInstance::new(&ct)?)?, Method::Exact),
    };
    Ok((interval, Some(ct.values())))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Covering => "covering",
        Method::Exact => "exact",
        Method::Oracle => "oracle",
        Method::ClosedForm => "closed-form",
    }
}

fn print_alpha(
    out: &mut impl Write,
    set: &[i64],
    canonical: Option<[i64; 3]>,
    iv: &AlphaInterval,
    json: bool,
) -> Result<()> {
    let kappa_lo = kappa_from_alpha(iv.lo.to_f64().min(0.5))?;
    let kappa_hi = kappa_from_alpha(iv.hi.to_f64().min(0.5))?;
    if json {
        let v = json!({
            "set": set,
            "canonical": canonical,
            "method": method_name(iv.method),
            "alpha_lo": iv.lo,
            "alpha_hi": iv.hi,
            "alpha_exact": iv.exact,
            "kappa_lo": kappa_lo,
            "kappa_hi": kappa_hi,
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    if let Some(c) = canonical {
        writeln!(out, "canonical: ({}, {}, {})", c[0], c[1], c[2])?;
    }
    writeln!(out, "method: {}", method_name(iv.method))?;
    match iv.exact {
        Some(v) => {
            writeln!(out, "alpha = {v} ({})", format_sig(v.to_f64(), 12))?;
            writeln!(out, "kappa = {}", format_sig(kappa_lo, 12))?;
        }
        None => {
            writeln!(
                out,
                "alpha in [{}, {}] ({}, {})",
                iv.lo,
                iv.hi,
                format_sig(iv.lo.to_f64(), 12),
                format_sig(iv.hi.to_f64(), 12)
            )?;
            writeln!(out, "width = {}", format_sig(iv.width().to_f64(), 6))?;
            writeln!(out, "kappa in [{}, {}]", format_sig(kappa_lo, 12), format_sig(kappa_hi, 12))?;
        }
    }
    Ok(())
}

fn print_bounds(out: &mut impl Write, t: &Triple, json: bool) -> Result<()> {
    let ct = canonicalize(t);
    let rep = bound_report(&ct);
    let lemma4 = rep.lattice.as_ref().map(|lp| lemma4_check(&ct, lp));
    let opt = |r: Option<Rational>| r.map(|v| v.to_string());
    if json {
        let v = json!({
            "canonical": ct.values(),
            "scale": ct.scale(),
            "m": rep.lattice.map(|lp| lp.m),
            "r": rep.lattice.map(|lp| lp.r),
            "rectangular": rep.rectangular,
            "trivial": rep.trivial,
            "lower": opt(rep.theorem1.map(|b| b.lower)),
            "e1": opt(rep.theorem1.map(|b| b.e1)),
            "upper": opt(rep.theorem1.map(|b| b.upper)),
            "sumset": ct.is_sum_set(),
            "lemma4": lemma4,
        });
        writeln!(out, "{v}")?;
        return Ok(());
    }
    writeln!(out, "canonical: {ct} (scale {})", ct.scale())?;
    match rep.lattice {
        Some(lp) => writeln!(out, "m = {}, r = {}, rectangular = {}", lp.m, lp.r, rep.rectangular)?,
        None => writeln!(out, "absolute values are not distinct; no lattice data")?,
    }
    writeln!(out, "trivial upper = {}", rep.trivial)?;
    match rep.theorem1 {
        Some(b) => {
            writeln!(out, "lower = {} ({})", b.lower, format_sig(b.lower.to_f64(), 12))?;
            writeln!(out, "e1 = {} ({})", b.e1, format_sig(b.e1.to_f64(), 12))?;
            writeln!(out, "upper = {} ({})", b.upper, format_sig(b.upper.to_f64(), 12))?;
        }
        None => writeln!(out, "closed-form bounds do not apply")?,
    }
    writeln!(out, "sumset = {}", ct.is_sum_set())?;
    if let Some(ok) = lemma4 {
        writeln!(out, "lemma4 = {ok}")?;
    }
    Ok(())
}

fn print_verify(out: &mut impl Write, o: &VerifyOutcome, json: bool) -> Result<()> {
    if json {
        let s = serde_json::to_string(o).map_err(|e| KroneckerError::Io(e.to_string()))?;
        writeln!(out, "{s}")?;
        return Ok(());
    }
    writeln!(out, "claim: {} (alpha <= {} + {})", o.claim.id(), o.bound, o.tolerance)?;
    writeln!(out, "classes: {}", o.classes)?;
    if let (Some(s), Some(w)) = (o.worst_set, o.worst) {
        match w.exact {
            Some(v) => writeln!(out, "worst: ({}, {}, {}) alpha = {v}", s[0], s[1], s[2])?,
            None => writeln!(out, "worst: ({}, {}, {}) alpha in [{}, {}]", s[0], s[1], s[2], w.lo, w.hi)?,
        }
    }
    let fmt = |v: &[[i64; 3]]| v.iter().map(|s| format!("({}, {}, {})", s[0], s[1], s[2])).collect::<Vec<_>>().join(" ");
    writeln!(out, "maximizers: {}", fmt(&o.maximizers))?;
    if !o.near_misses.is_empty() {
        writeln!(out, "near misses: {}", fmt(&o.near_misses))?;
    }
    writeln!(out, "{}", if o.pass { "PASS" } else { "FAIL" })?;
    Ok(())
}
