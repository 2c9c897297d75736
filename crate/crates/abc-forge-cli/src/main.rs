//! Command-line interface: scan a family, verify a single specialization,
//! run the exceptional census, regenerate reports, or run the self-checks.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use abc_forge::abc_family::{search_base_params, AbcParams, SearchBudget, TauCandidate};
use abc_forge::class_order::{
    check_suitable, class_order_certificate, OracleBudget, SuitabilityOptions,
};
use abc_forge::exact_poly::FactorBudget;
use abc_forge::survey::{
    self, certificate::CertificateRecord, emit_certificates, load_certificates, ScanConfig,
};
use abc_forge::units_kummer::FieldContext;

#[derive(Parser)]
#[command(name = "abc-forge", version, about = "ABC number fields with class-group elements of prescribed order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Field degree n >= 3.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Target class element order.
    #[arg(long, default_value_t = 2)]
    ell: u32,
    /// Base points a_1..a_{n-1} as a comma-separated list, or "auto" to
    /// search for a generic tuple.
    #[arg(long, default_value = "auto")]
    a: String,
}

impl FamilyArgs {
    fn params(&self) -> Result<AbcParams> {
        if self.a == "auto" {
            return Ok(search_base_params(self.n, self.ell, SearchBudget::default())
                .map_err(|e| anyhow::anyhow!("base-tuple search failed: {e}"))?);
        }
        let a: Vec<i64> = self
            .a
            .split(',')
            .map(|s| s.trim().parse().context("base points must be integers"))
            .collect::<Result<_>>()?;
        if a.len() != self.n - 1 {
            bail!("expected {} base points, got {}", self.n - 1, a.len());
        }
        Ok(AbcParams::new(self.n, self.ell, a))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Scan the guaranteed window up to the discriminant budget X, emitting
    /// one certificate per candidate and a census report.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        /// Discriminant budget X.
        #[arg(long = "X", short = 'X', visible_alias = "x-budget")]
        x: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 100)]
        min_abs_a: i64,
        #[arg(long, default_value_t = 10_000)]
        prime_budget: u64,
        /// Trial-division bound for discriminant factoring.
        #[arg(long, default_value_t = 1_000_000)]
        factor_budget: u64,
        /// Oracle scope: fields with |disc| up to this are cross-checked
        /// (0 disables the oracle).
        #[arg(long, default_value_t = 10_000_000)]
        oracle_disc_bound: u64,
        /// Also scan 2 <= |tau| below the guaranteed window.
        #[arg(long, default_value_t = false)]
        include_small_tau: bool,
        /// Certificate output path (line-delimited records).
        #[arg(long, default_value = "abc-scan.jsonl")]
        out: PathBuf,
    },
    /// Run the full pipeline on a single tau and print its certificate.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        tau: i64,
        /// Floor on |a(tau)| (lower it to verify tiny specializations).
        #[arg(long, default_value_t = 3)]
        min_abs_a: i64,
        #[arg(long, default_value_t = 10_000_000)]
        oracle_disc_bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exceptional census: count Galois/Kummer degeneracies up to T.
    Census {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "T", short = 'T')]
        t: u64,
    },
    /// Regenerate a census report from a stored certificate stream.
    Report {
        /// Certificate file written by `scan`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Budget X of the original run (for the density columns).
        #[arg(long = "X", short = 'X', default_value_t = 0.0)]
        x: f64,
    },
    /// Run the property self-checks.
    Selftest,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Scan {
            family,
            x,
            seed,
            jobs,
            min_abs_a,
            prime_budget,
            factor_budget,
            oracle_disc_bound,
            include_small_tau,
            out,
        } => {
            let params = family.params()?;
            let mut config = ScanConfig::new(params, x);
            config.seed = seed;
            config.jobs = jobs;
            config.min_abs_a = min_abs_a;
            config.prime_budget = prime_budget;
            config.factor_budget = FactorBudget {
                trial_bound: factor_budget,
                rho_budget: 24,
            };
            config.oracle_disc_bound = oracle_disc_bound;
            config.include_small_tau = include_small_tau;
            let output = survey::scan(&config)?;
            let file = File::create(&out)
                .with_context(|| format!("cannot create {}", out.display()))?;
            emit_certificates(BufWriter::new(file), &output.records)?;
            eprintln!(
                "scanned {} candidates up to T = {} ({} suitable, {} field classes) -> {}",
                output.report.candidates,
                output.t_max,
                output.report.suitable,
                output.report.suitable_fields_dedup,
                out.display()
            );
            print!("{}", output.report.to_csv());
        }
        Command::Verify {
            family,
            tau,
            min_abs_a,
            oracle_disc_bound,
            seed,
        } => {
            let params = family.params()?;
            let opts = SuitabilityOptions {
                min_abs_a,
                ..SuitabilityOptions::default()
            };
            let record = check_suitable(&params, tau, &opts);
            let cand = TauCandidate::new(&params, tau).ok();
            let mut cert = None;
            let mut roots = None;
            let mut unit_system = None;
            if let Some(c) = &cand {
                let bits = std::env::var(abc_forge::survey::PRECISION_ENV)
                    .ok()
                    .and_then(|v| v.parse().ok())
                    .unwrap_or(64);
                if let Ok(mut ctx) = FieldContext::new(&params, c, bits) {
                    roots = Some(ctx.emb.boxes.clone());
                    unit_system =
                        abc_forge::units_kummer::abc_unit_system(&mut ctx, Default::default())
                            .ok();
                    if record.is_suitable() {
                        let budget = (oracle_disc_bound > 0).then_some(OracleBudget {
                            disc_bound: oracle_disc_bound,
                            seed,
                            ..OracleBudget::default()
                        });
                        cert = Some(
                            class_order_certificate(&ctx, &record, budget)
                                .map_err(|e| anyhow::anyhow!("certification failed: {e}"))?,
                        );
                    }
                }
            }
            let rec = CertificateRecord::build(
                &params,
                &record,
                cand.as_ref().map(|c| &c.f_tau),
                roots.as_deref(),
                unit_system.as_ref(),
                cert.as_ref(),
            );
            println!("{}", serde_json::to_string_pretty(&rec)?);
            eprintln!("verdict: {}", rec.verdict);
        }
        Command::Census { family, t } => {
            let params = family.params()?;
            let rows = survey::exceptional_census(&params, t, &SuitabilityOptions::default());
            println!(
                "t,candidates,cond2_fail,cond2_undecided,cond3_fail,cond4_fail,cond4_skipped,fitted_c"
            );
            for r in rows {
                println!(
                    "{},{},{},{},{},{},{},{:.6}",
                    r.t,
                    r.candidates,
                    r.cond2_fail,
                    r.cond2_undecided,
                    r.cond3_fail,
                    r.cond4_fail,
                    r.cond4_skipped,
                    r.fitted_c
                );
            }
        }
        Command::Report { input, x } => {
            let file = File::open(&input)
                .with_context(|| format!("cannot open {}", input.display()))?;
            let records = load_certificates(BufReader::new(file))?;
            if records.is_empty() {
                bail!("no records in {}", input.display());
            }
            let first = &records[0];
            let params = AbcParams::new(first.n, first.ell, first.a.clone());
            let t_max = records.iter().map(|r| r.tau.unsigned_abs()).max().unwrap();
            let mut config = ScanConfig::new(params, if x > 0.0 { x } else { 1.0 });
            config.x_budget = if x > 0.0 { x } else { 0.0 };
            let mu = config.mu();
            let c1 = if x > 0.0 { t_max as f64 / x.powf(mu) } else { 0.0 };
            let report = survey::report::report_from_records(&config, t_max, c1, &records);
            print!("{}", report.to_csv());
        }
        Command::Selftest => {
            let ok = abc_forge::selftest::run();
            if !ok {
                std::process::exit(1);
            }
        }
    }
    std::io::stdout().flush().ok();
    Ok(())
}
