use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use pzeta_core::curve::format_sig;
use pzeta_core::prime_zeta::covariance_curve;
use pzeta_core::primes::first_n_primes;
use pzeta_core::verify::{self, Level, VerifyOptions};
use pzeta_core::zeros::TroughScore;
use pzeta_core::zeta::POLE_EXCLUSION;
use pzeta_core::{
    diff_histogram, extreme_prob_curve, grid, load_zeros, log_abs_zeta_1line, sieve_primes,
    trough_score, Error, EvalAccuracy, SigmaConvention, ZeroTable,
};
use serde::Serialize;

use crate::{
    manifest, CondProbArgs, CovCurveArgs, GridArgs, LevelArg, SigmaArg, VerifyArgs, ZeroHistArgs,
};

pub type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn open_out(path: &str) -> io::Result<Box<dyn Write>> {
    Ok(if path == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(path)?))
    })
}

fn read_zeros(path: &str) -> Result<ZeroTable, Box<dyn std::error::Error>> {
    let file = File::open(path).map_err(|e| format!("{path}: {e}"))?;
    load_zeros(BufReader::new(file)).map_err(|e| format!("{path}: {e}").into())
}

fn deltas(g: &GridArgs, defaults: (f64, f64, f64)) -> pzeta_core::Result<Vec<f64>> {
    grid(
        g.delta_min.unwrap_or(defaults.0),
        g.delta_max.unwrap_or(defaults.1),
        g.step.unwrap_or(defaults.2),
    )
}

pub fn cov_curve(args: &CovCurveArgs, start: Instant) -> CmdResult {
    let primes = match (args.limit, args.nth_prime_limit) {
        (Some(t), _) => sieve_primes(t)?,
        (None, n) => first_n_primes(n.unwrap_or(1_000_000))?,
    };
    let deltas = deltas(&args.grid, (2.0, 100.0, 0.05))?;
    let curve = covariance_curve(&primes, &deltas)?;
    let acc = EvalAccuracy::default();
    let mut out = open_out(&args.out)?;
    writeln!(out, "delta,value,log_abs_zeta")?;
    for (d, v) in curve.iter() {
        let reference = if d.abs() <= POLE_EXCLUSION {
            f64::INFINITY
        } else {
            log_abs_zeta_1line(d, acc)?
        };
        writeln!(
            out,
            "{},{},{}",
            format_sig(d),
            format_sig(v),
            format_sig(reference)
        )?;
    }
    out.flush()?;
    manifest::write(&args.out, "cov-curve", args, None, start)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TroughReport {
    zeros_used: usize,
    lo: f64,
    hi: f64,
    bin_width: f64,
    total_pairs: u64,
    troughs: Vec<TroughScore>,
}

pub fn zero_hist(args: &ZeroHistArgs, start: Instant) -> CmdResult {
    let mut zeros = read_zeros(&args.zeros)?;
    if let Some(n) = args.count {
        if n > zeros.len() {
            return Err(Error::Domain(format!(
                "--count {n} exceeds the {} zeros in {}",
                zeros.len(),
                args.zeros
            ))
            .into());
        }
        zeros = zeros.first(n);
    }
    let hist = diff_histogram(&zeros, args.lo, args.hi, args.bin_width)?;
    let mut out = open_out(&args.out)?;
    hist.write_csv(&mut out)?;
    out.flush()?;
    manifest::write(&args.out, "zero-hist", args, None, start)?;

    if !args.troughs.is_empty() || args.report.is_some() {
        let troughs = args
            .troughs
            .iter()
            .map(|&c| {
                trough_score(&hist, c, args.half_width, args.window).map(|score| TroughScore {
                    center: c,
                    half_width: args.half_width,
                    window: args.window,
                    score,
                })
            })
            .collect::<pzeta_core::Result<Vec<_>>>()?;
        let report = TroughReport {
            zeros_used: zeros.len(),
            lo: args.lo,
            hi: args.hi,
            bin_width: args.bin_width,
            total_pairs: hist.total(),
            troughs,
        };
        let json = serde_json::to_string_pretty(&report)? + "\n";
        match &args.report {
            Some(path) if path != "-" => {
                std::fs::write(path, json)?;
                manifest::write(path, "zero-hist", args, None, start)?;
            }
            Some(_) => io::stdout().write_all(json.as_bytes())?,
            None => io::stderr().write_all(json.as_bytes())?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn cond_prob(args: &CondProbArgs, start: Instant) -> CmdResult {
    let tau = match (args.tau, &args.zeros) {
        (Some(t), _) => t,
        (None, Some(path)) => {
            let zeros = read_zeros(path)?;
            zeros.nth(args.zero_index).ok_or_else(|| {
                Error::Domain(format!(
                    "--zero-index {} is outside the table ({} zeros)",
                    args.zero_index,
                    zeros.len()
                ))
            })?
        }
        (None, None) => return Err("either --tau or --zeros (or PZETA_ZEROS) is required".into()),
    };
    let convention = match args.sigma_convention {
        SigmaArg::Std => SigmaConvention::Std,
        SigmaArg::Variance => SigmaConvention::Variance,
    };
    let deltas = deltas(&args.grid, (0.05, 100.0, 0.05))?;
    let curve = extreme_prob_curve(
        &deltas,
        tau,
        args.sigmas,
        convention,
        EvalAccuracy::default(),
    )?;
    let mut out = open_out(&args.out)?;
    curve.write_csv(&mut out, ("delta", "probability"))?;
    out.flush()?;
    manifest::write(&args.out, "cond-prob", args, None, start)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs, start: Instant) -> CmdResult {
    let zeros = args.zeros.as_deref().map(read_zeros).transpose()?;
    let options = VerifyOptions {
        level: match args.level {
            LevelArg::Fast => Level::Fast,
            LevelArg::Full => Level::Full,
        },
        seed: args.seed,
        tolerance_scale: args.tolerance_scale,
    };
    let report = verify::run(&options, zeros.as_ref())?;
    let mut out = open_out(&args.out)?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    manifest::write(&args.out, "verify", args, Some(args.seed), start)?;
    for g in report.gates.iter().filter(|g| !g.pass) {
        eprintln!(
            "FAIL {}: estimate {} (threshold {})",
            g.name, g.estimate, g.threshold
        );
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
