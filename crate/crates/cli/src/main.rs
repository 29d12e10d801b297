use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use transum_core::arith::{factorize, units};
use transum_core::numeric::{sum_value, truncated_total};
use transum_core::okada::{coefficient_a, epsilon, support_sets};
use transum_core::reduce::to_periodic;
use transum_core::{
    classify_sum, exhaustive_exception_search, okada_verdict, total_value, PeriodicFunction,
    RationalPolynomial, VerdictKind,
};

mod input;
mod report;

use input::InputError;
use report::{format_bound, format_value, kind_name, Report};

const EXIT_RATIONAL: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_CROSS_CHECK: u8 = 2;
const EXIT_TRANSCENDENTAL: u8 = 3;

/// Decide whether Σ_{n≥0} P(n)/Q(n) is rational or transcendental.
#[derive(Parser)]
#[command(name = "transum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SeriesArgs {
    /// Numerator P(n), e.g. "16*n^2+12*n-1"
    #[arg(long, allow_hyphen_values = true)]
    numerator: String,
    /// Denominator Q(n) as a polynomial or a factor list "(a,b)(c,d)" meaning (an+b)(cn+d)
    #[arg(long, allow_hyphen_values = true)]
    denominator: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the series exactly
    Classify {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        json: bool,
        /// Confirm the verdict against the floating-point channel
        #[arg(long)]
        precision_check: bool,
    },
    /// Evaluate the series numerically with an error bound
    Evaluate {
        #[command(flatten)]
        series: SeriesArgs,
        /// Sum this many terms of the periodic part directly instead of using digamma values
        #[arg(long)]
        truncate: Option<u64>,
    },
    /// List residue sets mod q ≤ QMAX carrying a vanishing four-term periodic sum
    Search {
        #[arg(long)]
        qmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the full criterion tables for a periodic function
    Report {
        #[arg(long)]
        q: u64,
        /// f(1),…,f(q) as comma-separated rationals summing to 0
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
}

fn series(args: &SeriesArgs) -> Result<(RationalPolynomial, RationalPolynomial), InputError> {
    Ok((input::polynomial(&args.numerator)?, input::denominator(&args.denominator)?))
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn cmd_classify(args: &SeriesArgs, json: bool, precision_check: bool) -> ExitCode {
    let (num, den) = match series(args) {
        Ok(x) => x,
        Err(e) => return input_error(e),
    };
    let verdict = match classify_sum(&num, &den) {
        Ok(v) => v,
        Err(e) => return input_error(e),
    };
    let report = Report::new(args.numerator.clone(), args.denominator.clone(), &verdict);
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    if precision_check && !verdict.reduced.is_degenerate() {
        let s = sum_value(&to_periodic(&verdict.reduced));
        let zero = s.value.abs() <= s.error_bound;
        if zero != verdict.is_rational() {
            eprintln!(
                "precision check failed: periodic part {} +/- {} but verdict {}",
                format_value(s.value),
                format_bound(s.error_bound),
                kind_name(verdict.kind)
            );
            return ExitCode::from(EXIT_CROSS_CHECK);
        }
    }
    match verdict.kind {
        VerdictKind::RationalValue => ExitCode::from(EXIT_RATIONAL),
        VerdictKind::Transcendental => ExitCode::from(EXIT_TRANSCENDENTAL),
    }
}

fn cmd_evaluate(args: &SeriesArgs, truncate: Option<u64>) -> ExitCode {
    let (num, den) = match series(args) {
        Ok(x) => x,
        Err(e) => return input_error(e),
    };
    let result = match truncate {
        Some(0) => return input_error("--truncate must be positive"),
        Some(n) => truncated_total(&num, &den, n),
        None => total_value(&num, &den),
    };
    match result {
        Ok(r) => {
            println!("{} +/- {}", format_value(r.value), format_bound(r.error_bound));
            ExitCode::SUCCESS
        }
        Err(e) => input_error(e),
    }
}

#[derive(Serialize)]
struct SearchHit {
    q: u64,
    residues: Vec<u64>,
    certificate: Vec<String>,
}

fn cmd_search(qmax: u64, json: bool) -> ExitCode {
    let hits: Vec<SearchHit> = exhaustive_exception_search(qmax)
        .into_iter()
        .map(|h| SearchHit {
            q: h.q,
            residues: h.residues,
            certificate: h.certificate.iter().map(ToString::to_string).collect(),
        })
        .collect();
    if json {
        println!("{}", serde_json::to_string_pretty(&hits).expect("hits serialize"));
    } else {
        for h in &hits {
            let residues: Vec<String> = h.residues.iter().map(ToString::to_string).collect();
            println!("q={} {{{}}} ({})", h.q, residues.join(","), h.certificate.join(","));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_report(q: u64, values: &str) -> ExitCode {
    let f = match input::rational_list(values).and_then(|v| {
        PeriodicFunction::new(q, v).map_err(|e| InputError(e.to_string()))
    }) {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let sets = support_sets(q);
    let primes: Vec<u64> = factorize(q).primes().collect();
    let join = |v: &[u64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");

    println!("q={q}  J={{{}}}  L={{{}}}  L'={{{}}}", join(&sets.j), join(&sets.l), join(&sets.l_prime));
    println!("f: {}", f.values().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    println!();
    println!("epsilon(r,p)");
    for &r in &sets.l_prime {
        let row: Vec<String> = primes.iter().map(|&p| format!("p={p}: {}", epsilon(r, p, q))).collect();
        println!("  r={r:<4} {}", row.join("  "));
    }
    println!();
    println!("A(r,a)");
    let j = units(q);
    for &r in &sets.l {
        let row: Vec<String> = j.iter().map(|&a| format!("a={a}: {}", coefficient_a(r, a, q))).collect();
        println!("  r={r:<4} {}", row.join("  "));
    }
    let okada = okada_verdict(&f);
    println!();
    println!("residuals");
    for (a, v) in &okada.condition_j {
        println!("  a={a:<4} {v}");
    }
    for (p, v) in &okada.condition_p {
        println!("  p={p:<4} {v}");
    }
    let s = sum_value(&f);
    println!();
    println!("vanishes: {}", okada.vanishes);
    println!("numeric:  {} +/- {}", format_value(s.value), format_bound(s.error_bound));
    if okada.vanishes {
        ExitCode::from(EXIT_RATIONAL)
    } else {
        ExitCode::from(EXIT_TRANSCENDENTAL)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match &cli.command {
        Command::Classify {
            series,
            json,
            precision_check,
        } => cmd_classify(series, *json, *precision_check),
        Command::Evaluate { series, truncate } => cmd_evaluate(series, *truncate),
        Command::Search { qmax, json } => cmd_search(*qmax, *json),
        Command::Report { q, values } => cmd_report(*q, values),
    }
}
