//! `k3corr`: classify discriminants by solvability of a² − d·b² = ±8 in
//! the order of discriminant d and print the attached certificates.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;

use k3corr_cli::{
    certificate_csv, certificate_json, certificate_text, scan_csv, scan_json, scan_text,
    status_str,
};
use k3corr_core::k3class::{classify, family_membership_check, line_demo, scan_certificates};

#[derive(Parser)]
#[command(
    name = "k3corr",
    version,
    about = "Exact classification of discriminants d = 1 mod 8 by the norm equations a^2 - d b^2 = +-8, \
             with fundamental units, class numbers and polarization certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one discriminant and print its certificate
    Classify {
        /// The discriminant, a positive integer of any size
        d: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Classify every d = 1 mod 8 up to a bound and list the members
    Scan {
        /// Upper bound for the scan
        dmax: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run the determinant −17 line construction and check its values
    DemoLine,
    /// Verify the two infinite membership families for k = 1..kmax
    Families {
        /// Number of family members to check
        kmax: String,
    },
}

fn parse_positive(text: &str, what: &str) -> Result<BigInt, String> {
    let n: BigInt = text
        .trim()
        .parse()
        .map_err(|_| format!("{what} must be an integer, got {text:?}"))?;
    if !n.is_positive() {
        return Err(format!("{what} must be >= 1, got {n}"));
    }
    Ok(n)
}

fn main() {
    let cli = Cli::parse();
    configure_threads();
    std::process::exit(run(cli));
}

fn configure_threads() {
    if let Ok(value) = std::env::var("K3CORR_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring K3CORR_THREADS={value:?}"),
        }
    }
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Classify { d, json, csv } => {
            let d = match parse_positive(&d, "discriminant") {
                Ok(d) => d,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return 2;
                }
            };
            let cert = classify(&d);
            if json {
                println!("{}", certificate_json(&cert));
            } else if csv {
                print!("{}", certificate_csv(&cert));
            } else {
                print!("{}", certificate_text(&cert));
                for note in &cert.notes {
                    eprintln!("note: {note}");
                }
            }
            0
        }
        Command::Scan { dmax, json, csv } => {
            let dmax = match parse_positive(&dmax, "scan bound") {
                Ok(d) => d,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return 2;
                }
            };
            let entries = scan_certificates(&dmax);
            if json {
                println!("{}", scan_json(&entries));
            } else {
                let thin: Vec<_> = entries.iter().map(|(d, t, _)| (d.clone(), *t)).collect();
                if csv {
                    print!("{}", scan_csv(&thin));
                } else {
                    print!("{}", scan_text(&thin));
                }
            }
            0
        }
        Command::DemoLine => match line_demo() {
            Ok(report) => {
                println!("det={}", report.det);
                println!("h1.H={}", report.h1_dot_h);
                println!("ht1.H={}", report.ht1_dot_h);
                0
            }
            Err(msg) => {
                eprintln!("line demo failed: {msg}");
                1
            }
        },
        Command::Families { kmax } => {
            let kmax = match parse_positive(&kmax, "kmax").and_then(|k| {
                u64::try_from(&k).map_err(|_| format!("kmax too large: {k}"))
            }) {
                Ok(k) => k,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return 2;
                }
            };
            let report = family_membership_check(kmax);
            for check in report.checks.iter().filter(|c| !c.ok) {
                eprintln!(
                    "FAIL d={} expected {} got {}",
                    check.d,
                    check.requirement,
                    status_str(check.status)
                );
            }
            if report.all_ok() {
                println!(
                    "families k=1..{}: all {} membership checks passed",
                    report.k_max,
                    report.checks.len()
                );
                0
            } else {
                println!(
                    "families k=1..{}: {} of {} checks FAILED",
                    report.k_max,
                    report.checks.iter().filter(|c| !c.ok).count(),
                    report.checks.len()
                );
                1
            }
        }
    }
}
