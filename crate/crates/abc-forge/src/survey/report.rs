//! The census report: per-verdict counts, dedup summary, density estimate.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{CandidateOutcome, FieldClass, ScanConfig};
use crate::class_order::{FailedCondition, SkipCause, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub ell: u32,
    pub a: Vec<i64>,
    pub x_budget: f64,
    pub mu: f64,
    pub c1: f64,
    pub t_max: u64,
    pub candidates: usize,
    pub suitable: usize,
    pub unsuitable_cond1: usize,
    pub unsuitable_cond2: usize,
    pub unsuitable_cond3: usize,
    pub unsuitable_cond4: usize,
    pub skipped_degenerate: usize,
    pub skipped_factor_budget: usize,
    pub skipped_not_maximal: usize,
    pub skipped_galois_undecided: usize,
    pub skipped_below_floor: usize,
    pub skipped_not_totally_real: usize,
    pub skipped_saturation: usize,
    pub skipped_precision: usize,
    pub over_budget: usize,
    /// Deduplicated isomorphism classes among suitable fields.
    pub suitable_fields_dedup: usize,
    /// Largest multiplicity seen in any dyadic window.
    pub window_multiplicity_max: usize,
    /// (multiplicity, number of classes with it).
    pub multiplicity_histogram: Vec<(usize, usize)>,
    /// Galois or Kummer failures inside this scan window.
    pub exceptional_count: usize,
    /// exceptional_count / (sqrt(T) log T).
    pub exceptional_fitted_c: f64,
    /// log(dedup count)/log X when both are meaningful.
    pub log_density: f64,
    /// 2/((n-1)(n+2) ell).
    pub log_density_target: f64,
}

impl CensusReport {
    pub fn unsuitable_total(&self) -> usize {
        self.unsuitable_cond1 + self.unsuitable_cond2 + self.unsuitable_cond3 + self.unsuitable_cond4
    }

    pub fn skipped_total(&self) -> usize {
        self.skipped_degenerate
            + self.skipped_factor_budget
            + self.skipped_not_maximal
            + self.skipped_galois_undecided
            + self.skipped_below_floor
            + self.skipped_not_totally_real
            + self.skipped_saturation
            + self.skipped_precision
    }

    /// Fixed-column CSV, header plus one row.
    pub fn to_csv(&self) -> String {
        let header = "n,ell,a,x_budget,mu,c1,t_max,candidates,suitable,\
unsuitable_cond1,unsuitable_cond2,unsuitable_cond3,unsuitable_cond4,\
skipped_degenerate,skipped_factor_budget,skipped_not_maximal,\
skipped_galois_undecided,skipped_below_floor,skipped_not_totally_real,\
skipped_saturation,skipped_precision,over_budget,suitable_fields_dedup,\
window_multiplicity_max,multiplicity_histogram,exceptional_count,\
exceptional_fitted_c,log_density,log_density_target";
        let hist = self
            .multiplicity_histogram
            .iter()
            .map(|(m, c)| format!("{}:{}", m, c))
            .collect::<Vec<_>>()
            .join(";");
        let a = self
            .a
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{}\n{},{},{},{:.6e},{:.8},{:.8},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.8},{:.8},{:.8}\n",
            header,
            self.n,
            self.ell,
            a,
            self.x_budget,
            self.mu,
            self.c1,
            self.t_max,
            self.candidates,
            self.suitable,
            self.unsuitable_cond1,
            self.unsuitable_cond2,
            self.unsuitable_cond3,
            self.unsuitable_cond4,
            self.skipped_degenerate,
            self.skipped_factor_budget,
            self.skipped_not_maximal,
            self.skipped_galois_undecided,
            self.skipped_below_floor,
            self.skipped_not_totally_real,
            self.skipped_saturation,
            self.skipped_precision,
            self.over_budget,
            self.suitable_fields_dedup,
            self.window_multiplicity_max,
            hist,
            self.exceptional_count,
            self.exceptional_fitted_c,
            self.log_density,
            self.log_density_target,
        )
    }
}

pub(super) fn build_report(
    config: &ScanConfig,
    t_max: u64,
    c1: f64,
    outcomes: &[CandidateOutcome],
    classes: &[FieldClass],
) -> CensusReport {
    let n = config.params.n();
    let ell = config.params.ell();
    let mut r = CensusReport {
        n,
        ell,
        a: config.params.base_points().to_vec(),
        x_budget: config.x_budget,
        mu: config.mu(),
        c1,
        t_max,
        candidates: outcomes.len(),
        suitable: 0,
        unsuitable_cond1: 0,
        unsuitable_cond2: 0,
        unsuitable_cond3: 0,
        unsuitable_cond4: 0,
        skipped_degenerate: 0,
        skipped_factor_budget: 0,
        skipped_not_maximal: 0,
        skipped_galois_undecided: 0,
        skipped_below_floor: 0,
        skipped_not_totally_real: 0,
        skipped_saturation: 0,
        skipped_precision: 0,
        over_budget: 0,
        suitable_fields_dedup: classes.len(),
        window_multiplicity_max: classes.iter().map(|c| c.multiplicity).max().unwrap_or(0),
        multiplicity_histogram: Vec::new(),
        exceptional_count: 0,
        exceptional_fitted_c: 0.0,
        log_density: 0.0,
        log_density_target: 2.0 / ((n as f64 - 1.0) * (n as f64 + 2.0) * ell as f64),
    };
    for o in outcomes {
        if o.over_budget {
            r.over_budget += 1;
            continue;
        }
        match &o.record.verdict {
            Verdict::Suitable => r.suitable += 1,
            Verdict::Unsuitable(FailedCondition::Cond1) => r.unsuitable_cond1 += 1,
            Verdict::Unsuitable(FailedCondition::Cond2) => {
                r.unsuitable_cond2 += 1;
                r.exceptional_count += 1;
            }
            Verdict::Unsuitable(FailedCondition::Cond3) => r.unsuitable_cond3 += 1,
            Verdict::Unsuitable(FailedCondition::Cond4) => {
                r.unsuitable_cond4 += 1;
                r.exceptional_count += 1;
            }
            Verdict::Skipped(SkipCause::Degenerate) => r.skipped_degenerate += 1,
            Verdict::Skipped(SkipCause::FactorBudget) => r.skipped_factor_budget += 1,
            Verdict::Skipped(SkipCause::NotMaximal) => r.skipped_not_maximal += 1,
            Verdict::Skipped(SkipCause::GaloisUndecided) => r.skipped_galois_undecided += 1,
            Verdict::Skipped(SkipCause::BelowFloor) => r.skipped_below_floor += 1,
            Verdict::Skipped(SkipCause::NotTotallyReal) => r.skipped_not_totally_real += 1,
            Verdict::Skipped(SkipCause::SaturationUncertified) => r.skipped_saturation += 1,
            Verdict::Skipped(SkipCause::Precision) => r.skipped_precision += 1,
        }
    }
    let mut hist: Vec<(usize, usize)> = Vec::new();
    for c in classes {
        match hist.iter_mut().find(|(m, _)| *m == c.multiplicity) {
            Some((_, count)) => *count += 1,
            None => hist.push((c.multiplicity, 1)),
        }
    }
    hist.sort_unstable();
    r.multiplicity_histogram = hist;
    let t = t_max as f64;
    if t > 1.0 {
        r.exceptional_fitted_c = r.exceptional_count as f64 / (t.sqrt() * t.ln());
    }
    if r.suitable_fields_dedup > 0 && config.x_budget > 1.0 {
        r.log_density = (r.suitable_fields_dedup as f64).ln() / config.x_budget.ln();
    }
    r
}

/// Rebuild a report from stored certificate records (replay path). Dedup is
/// recomputed at the a(tau) and discriminant level; discriminant collisions
/// between distinct fields are resolved with the exact isomorphism test.
pub fn report_from_records(
    config: &ScanConfig,
    t_max: u64,
    c1: f64,
    records: &[super::CertificateRecord],
) -> CensusReport {
    // project records back onto outcome-shaped data for counting
    let mut outcomes: Vec<CandidateOutcome> = Vec::new();
    for rec in records {
        let verdict = parse_verdict(&rec.verdict);
        let over_budget = false;
        let record = crate::class_order::SuitabilityRecord {
            tau: rec.tau,
            a_tau: rec.a_tau_int(),
            cond1: crate::class_order::Cond1Report {
                congruent: rec.cond1_congruent,
                gcd_ok: rec.cond1_gcd_ok,
            },
            cond2: None,
            cond3: rec.disc_k_int().map(|d| crate::class_order::Cond3Report {
                pass: rec.cond3 == "pass",
                field_disc: crate::exact_poly::FieldDisc::Value(d),
            }),
            cond4: None,
            layout: None,
            verdict,
        };
        let cand = rec.f_poly().and_then(|f| {
            rec.a_tau_int().map(|a_tau| crate::abc_family::TauCandidate {
                tau: rec.tau,
                a_tau,
                f_tau: f,
                duplicate_field: false,
            })
        });
        outcomes.push(CandidateOutcome {
            record,
            cand,
            roots: None,
            unit_system: None,
            certificate: None,
            over_budget,
            duplicate_field: false,
        });
    }
    let classes = super::dedup_isomorphic(&config.params, &outcomes);
    build_report(config, t_max, c1, &outcomes, &classes)
}

fn parse_verdict(s: &str) -> Verdict {
    match s {
        "suitable" => Verdict::Suitable,
        "unsuitable:cond1" => Verdict::Unsuitable(FailedCondition::Cond1),
        "unsuitable:cond2" => Verdict::Unsuitable(FailedCondition::Cond2),
        "unsuitable:cond3" => Verdict::Unsuitable(FailedCondition::Cond3),
        "unsuitable:cond4" => Verdict::Unsuitable(FailedCondition::Cond4),
        "skipped:degenerate" => Verdict::Skipped(SkipCause::Degenerate),
        "skipped:factorbudget" => Verdict::Skipped(SkipCause::FactorBudget),
        "skipped:notmaximal" => Verdict::Skipped(SkipCause::NotMaximal),
        "skipped:galoisundecided" => Verdict::Skipped(SkipCause::GaloisUndecided),
        "skipped:belowfloor" => Verdict::Skipped(SkipCause::BelowFloor),
        "skipped:nottotallyreal" => Verdict::Skipped(SkipCause::NotTotallyReal),
        "skipped:saturationuncertified" => Verdict::Skipped(SkipCause::SaturationUncertified),
        "skipped:precision" => Verdict::Skipped(SkipCause::Precision),
        other => panic!("unknown verdict string: {other}"),
    }
}

/// The quantity |disc| used in budget comparisons during replay.
#[allow(dead_code)]
fn abs_disc(d: &num_bigint::BigInt) -> num_bigint::BigInt {
    d.abs()
}
