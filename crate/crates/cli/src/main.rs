//! `mzv`: exact finite multiple-harmonic-sum toolbox.
//!
//! Subcommands: `verify` checks one named identity, `fuzz` runs a seeded
//! random trial stream, `bench` compares the two chain evaluators, and
//! `table` prints single exact values. Exit code 0 means every check
//! passed; 1 means a check failed; 2 means the request itself was invalid.

use clap::{Parser, Subcommand, ValueEnum};
use mzv_core::{
    bench_ladder, fuzz, hoffman_h, hoffman_h_flat, kawashima_exact, mhs, mhs_flat, mhs_star,
    mhs_star_flat, schur_mhs, verify_identity, DiagIndex, ExponentSpec, FuzzConfig, Identity,
    IdentityReport, Index, KawashimaQuery, SkewDiagram, VerifyParams, DEFAULT_ENUM_LIMIT,
};
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mzv", version, about = "Exact finite multiple harmonic sum identity lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one named identity and print its report as a JSON line.
    Verify {
        /// One of: msw, msw_star, antipode, antipode_flat, schur, z_chain,
        /// hoffman, h_flat, kawashima, kawashima_flat, lemma_cn, lemma_dn,
        /// trans1, trans2
        #[arg(long)]
        identity: String,
        /// Index as "k1,k2,...,kr"; empty string or "empty" for the empty index
        #[arg(long)]
        index: Option<String>,
        /// Skew diagram as "lambda=a1,a2,...;mu=b1,b2,..."
        #[arg(long)]
        diagram: Option<String>,
        /// Exponents: a single integer or "p0:k,p1:k,..."
        #[arg(long)]
        exponents: Option<String>,
        /// Truncation level N
        #[arg(long = "N")]
        level: u32,
        /// Connected-sum position (z_chain only); omit to check the whole chain
        #[arg(long)]
        q: Option<i64>,
    },
    /// Run seeded random identity trials; one JSON report per line plus a
    /// summary line. Exits nonzero if any trial fails.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: u32,
        #[arg(long = "max-weight", default_value_t = 6)]
        max_weight: u32,
        #[arg(long = "max-depth", default_value_t = 4)]
        max_depth: u32,
        #[arg(long = "max-N", default_value_t = 10)]
        max_level: u32,
        #[arg(long = "max-cells", default_value_t = 6)]
        max_cells: u32,
        #[arg(long = "max-diag-len", default_value_t = 2)]
        max_diag_len: u32,
        #[arg(long = "max-exponent", default_value_t = 3)]
        max_exponent: u32,
    },
    /// Time the sweep evaluator against brute-force enumeration on a
    /// ladder of flat chains; one JSON row per measurement. The env var
    /// MZV_ENUM_LIMIT overrides the brute-force variable-count bound.
    Bench {
        #[arg(long = "max-weight", default_value_t = 8)]
        max_weight: u32,
        #[arg(long = "max-N", default_value_t = 100)]
        max_level: u32,
    },
    /// Print one exact sum value.
    Table {
        #[arg(long, value_enum)]
        sum: SumKind,
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        exponents: Option<String>,
        #[arg(long = "N")]
        level: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SumKind {
    Zeta,
    ZetaStar,
    Flat,
    StarFlat,
    #[value(name = "H")]
    H,
    #[value(name = "H-flat")]
    HFlat,
    Schur,
    Kawashima,
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<bool, String> {
    match Cli::parse().command {
        Command::Verify {
            identity,
            index,
            diagram,
            exponents,
            level,
            q,
        } => {
            let identity: Identity = identity.parse().map_err(|e| format!("{e}"))?;
            let params = VerifyParams {
                index: parse_opt::<Index>(index)?,
                diagram: parse_opt::<SkewDiagram>(diagram)?,
                exponents: parse_opt::<ExponentSpec>(exponents)?,
                level,
                q,
            };
            let report = verify_identity(identity, &params).map_err(|e| format!("{e}"))?;
            println!("{}", report.to_json_line());
            Ok(report.pass)
        }
        Command::Fuzz {
            seed,
            trials,
            max_weight,
            max_depth,
            max_level,
            max_cells,
            max_diag_len,
            max_exponent,
        } => {
            let cfg = FuzzConfig {
                seed,
                trials,
                max_weight,
                max_depth,
                max_level,
                max_cells,
                max_diag_len,
                max_exponent,
            };
            let reports = fuzz(&cfg);
            for report in &reports {
                println!("{}", report.to_json_line());
            }
            println!("{}", summary_line(&reports));
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Bench {
            max_weight,
            max_level,
        } => {
            let enum_limit = enum_limit_from_env()?;
            for row in bench_ladder(max_weight, max_level, enum_limit) {
                println!("{}", row.to_json_line());
            }
            Ok(true)
        }
        Command::Table {
            sum,
            index,
            diagram,
            exponents,
            level,
        } => {
            let value = table_value(sum, index, diagram, exponents, level)?;
            println!("{value}");
            Ok(true)
        }
    }
}

fn parse_opt<T: std::str::FromStr>(text: Option<String>) -> Result<Option<T>, String>
where
    T::Err: std::fmt::Display,
{
    text.map(|t| t.parse::<T>().map_err(|e| format!("{e}")))
        .transpose()
}

fn enum_limit_from_env() -> Result<usize, String> {
    match std::env::var("MZV_ENUM_LIMIT") {
        Ok(text) => text
            .parse::<usize>()
            .map_err(|_| format!("MZV_ENUM_LIMIT must be an integer, got `{text}`")),
        Err(_) => Ok(DEFAULT_ENUM_LIMIT),
    }
}

fn summary_line(reports: &[IdentityReport]) -> String {
    let mut per_identity: BTreeMap<&str, (u32, u32)> = BTreeMap::new();
    for report in reports {
        let entry = per_identity.entry(report.identity.as_str()).or_default();
        entry.0 += 1;
        entry.1 += report.pass as u32;
    }
    let detail = per_identity
        .iter()
        .map(|(name, (trials, passed))| {
            format!(r#""{name}":{{"trials":{trials},"passed":{passed}}}"#)
        })
        .collect::<Vec<_>>()
        .join(",");
    let total = reports.len();
    let passed = reports.iter().filter(|r| r.pass).count();
    format!(r#"{{"summary":{{"total":{total},"passed":{passed},"per_identity":{{{detail}}}}}}}"#)
}

fn table_value(
    sum: SumKind,
    index: Option<String>,
    diagram: Option<String>,
    exponents: Option<String>,
    level: u32,
) -> Result<String, String> {
    let index: Index = index
        .unwrap_or_default()
        .parse()
        .map_err(|e| format!("{e}"))?;
    let value = match sum {
        SumKind::Zeta => mhs(&index, level),
        SumKind::ZetaStar => mhs_star(&index, level),
        SumKind::Flat => mhs_flat(&index, level),
        SumKind::StarFlat => mhs_star_flat(&index, level),
        SumKind::H => hoffman_h(&index, level).map_err(|e| format!("{e}"))?,
        SumKind::HFlat => hoffman_h_flat(&index, level).map_err(|e| format!("{e}"))?,
        SumKind::Schur => {
            let diagram: SkewDiagram = diagram
                .ok_or("schur needs --diagram")?
                .parse()
                .map_err(|e| format!("{e}"))?;
            let exponents: ExponentSpec = exponents
                .unwrap_or_else(|| "1".to_string())
                .parse()
                .map_err(|e| format!("{e}"))?;
            let ki = DiagIndex::new(diagram, &exponents).map_err(|e| format!("{e}"))?;
            schur_mhs(&ki, level)
        }
        SumKind::Kawashima => {
            let query = KawashimaQuery::new(index, level).map_err(|e| format!("{e}"))?;
            kawashima_exact(&query)
        }
    };
    Ok(value.to_string())
}
