use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use quatcover::census::{
    census_record, enumerate_census, metacyclic_group, quaternion_hypermap, to_jsonl, to_tsv, validate_octuple,
    CensusConfig, CensusRow, Condition, CoveringOctuple, MetacyclicParams, SymmetryProfile,
};
use quatcover::fpgroup::DEFAULT_MAX_COSETS;
use quatcover::verify::{hasse_items, smoke, verify_table, Status, VerificationItem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "quatcover", version, about = "Census and verification of abelian bicyclic coverings of the quaternion hypermap")]
struct Cli {
    /// Coset table limit for every enumeration
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Output format for records and reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and cross-check every valid covering with mnd <= N
    Enumerate {
        #[arg(long, default_value_t = 48)]
        max_mnd: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Skip the operation-based symmetry flags (faster)
        #[arg(long)]
        no_group_profiles: bool,
    },
    /// Reproduce the type and genus tables row by row
    VerifyTables {
        /// 1 to 4; all tables when omitted
        #[arg(long)]
        table: Option<u8>,
        #[arg(long, default_value_t = 8)]
        bound: i64,
    },
    /// Run the battery of worked examples
    Smoke,
    /// Full report for one octuple
    #[command(allow_negative_numbers = true)]
    Inspect {
        m: i64,
        n: i64,
        d: i64,
        alpha: i64,
        beta: i64,
        gamma: i64,
        delta: i64,
        epsilon: i64,
    },
    /// Build a metacyclic p-group from (p, a, b, c, d) and check its invariants
    Metacyclic { p: i64, a: u32, b: u32, c: u32, d: u32 },
    /// Check the lattice of operation subgroups
    OpsHasse,
}

/// Exit codes: 0 all pass, 1 a verification failed, 2 bad input or resources.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render_items(items: &[VerificationItem], format: Format) -> Result<String> {
    let mut out = String::new();
    for item in items {
        match format {
            Format::Jsonl => out.push_str(&serde_json::to_string(item)?),
            Format::Tsv => out.push_str(&item.to_string()),
        }
        out.push('\n');
    }
    Ok(out)
}

fn report_items(cli: &Cli, items: &[VerificationItem]) -> Result<Outcome> {
    emit(cli, &render_items(items, cli.format)?)?;
    let flagged = items.iter().filter(|i| i.status == Status::FlaggedDiscrepancy).count();
    let failed = items.iter().filter(|i| i.status == Status::Fail).count();
    eprintln!("{} items: {} pass, {failed} fail, {flagged} flagged", items.len(), items.len() - failed - flagged);
    Ok(if failed == 0 { Outcome::Pass } else { Outcome::Fail })
}

fn run(cli: &Cli) -> Result<Outcome> {
    if cli.max_cosets == 0 {
        bail!("--max-cosets must be positive");
    }
    match &cli.command {
        Command::Enumerate {
            max_mnd,
            jobs,
            no_group_profiles,
        } => {
            if *jobs == 0 {
                bail!("--jobs must be positive");
            }
            let cfg = CensusConfig {
                max_cosets: cli.max_cosets,
                jobs: *jobs,
                group_profiles: !no_group_profiles,
            };
            let records = enumerate_census(*max_mnd, &cfg)?;
            let text = match cli.format {
                Format::Jsonl => to_jsonl(&records),
                Format::Tsv => to_tsv(&records),
            };
            emit(cli, &text)?;
            let bad: Vec<_> = records.iter().filter(|r| !r.consistent).collect();
            for r in &bad {
                eprintln!("inconsistent: {} {}", r.octuple, r.error.as_deref().unwrap_or(""));
            }
            eprintln!("{} records, {} inconsistent", records.len(), bad.len());
            Ok(if bad.is_empty() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::VerifyTables { table, bound } => {
            let tables = match table {
                Some(t) => vec![*t],
                None => vec![1, 2, 3, 4],
            };
            let mut items = Vec::new();
            for t in tables {
                items.extend(verify_table(t, *bound, cli.max_cosets)?);
            }
            report_items(cli, &items)
        }
        Command::Smoke => report_items(cli, &smoke(cli.max_cosets)),
        Command::OpsHasse => report_items(cli, &hasse_items()),
        Command::Inspect {
            m,
            n,
            d,
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
        } => {
            if *m < 1 || *n < 1 || *d < 1 {
                bail!("m, n and d must be positive");
            }
            let o = CoveringOctuple::new(*m, *n, *d, *alpha, *beta, *gamma, *delta, *epsilon);
            inspect(cli, &o)
        }
        Command::Metacyclic { p, a, b, c, d } => {
            if *p < 2 {
                bail!("p must be a prime");
            }
            let report = metacyclic_group(&MetacyclicParams::new(*p, *a, *b, *c, *d), cli.max_cosets)?;
            let ok = report.matches_claims();
            let value = serde_json::json!({
                "p": p, "a": a, "b": b, "c": c, "d": d,
                "order": report.order,
                "expected_order": report.params.expected_order(),
                "derived_order": report.derived_order,
                "derived_is_cyclic": report.derived_is_cyclic,
                "derived_generated_by_u_power": report.derived_generated_by_u_power,
                "abelianization": report.abelianization,
                "matches_claims": ok,
            });
            emit(cli, &format!("{value}\n"))?;
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn profile_line(p: &SymmetryProfile) -> String {
    format!(
        "reflexible={} symmetric={} self_petrie={} triply_self_dual={} omega1={} completely_self_dual={} mho={}",
        p.reflexible,
        p.symmetric,
        p.self_petrie,
        p.triply_self_dual,
        p.omega1_invariant,
        p.completely_self_dual,
        p.mho_invariant
    )
}

fn inspect(cli: &Cli, o: &CoveringOctuple) -> Result<Outcome> {
    let mut out = format!("octuple\t{o}\n");
    let validity = validate_octuple(o);
    for c in [
        Condition::Units,
        Condition::Cond1,
        Condition::Cond2,
        Condition::Cond3,
        Condition::Cond4,
        Condition::Cond5,
    ] {
        let reasons: Vec<&str> = validity
            .failures
            .iter()
            .filter(|f| f.condition == c)
            .map(|f| f.detail.as_str())
            .collect();
        if reasons.is_empty() {
            out.push_str(&format!("{c}\tok\n"));
        } else {
            out.push_str(&format!("{c}\tfail\t{}\n", reasons.join("; ")));
        }
    }
    if !validity.is_valid() {
        out.push_str("valid\tfalse\n");
        emit(cli, &out)?;
        return Ok(Outcome::Fail);
    }
    out.push_str("valid\ttrue\n");
    let cfg = CensusConfig {
        max_cosets: cli.max_cosets,
        jobs: 1,
        group_profiles: true,
    };
    let rec = census_record(o, &cfg, &quaternion_hypermap());
    if let Some(e) = &rec.error {
        out.push_str(&format!("error\t{e}\n"));
        emit(cli, &out)?;
        return Ok(Outcome::Fail);
    }
    let row = CensusRow::from(&rec);
    out.push_str(&format!("group_order\t{}\n", rec.group_order));
    out.push_str(&format!("type\t{:?}\tgenus\t{}\n", row.ty, row.genus));
    out.push_str(&format!("predicted_type\t{:?}\tpredicted_genus\t{}\n", row.predicted_type, row.predicted_genus));
    out.push_str(&format!("k_invariant_factors\t{:?}\tcyclic\t{}\n", rec.k_invariant_factors, rec.k_cyclic == Some(true)));
    out.push_str(&format!("congruence_profile\t{}\n", profile_line(&rec.congruence_profile)));
    if let Some(g) = &rec.group_profile {
        out.push_str(&format!("group_profile\t{}\n", profile_line(g)));
    }
    if let Some(b) = &rec.branch {
        out.push_str(&format!(
            "branch\tp={} q={} r={} smooth_v={} smooth_e={} smooth_f={}\n",
            b.p, b.q, b.r, b.smooth_v, b.smooth_e, b.smooth_f
        ));
    }
    out.push_str(&format!("fingerprint\t{:?}\n", row.fingerprint));
    out.push_str(&format!("consistent\t{}\n", rec.consistent));
    emit(cli, &out)?;
    Ok(if rec.consistent { Outcome::Pass } else { Outcome::Fail })
}
