//! Line-delimited certificate records: one JSON object per scanned tau.
//! Integers are decimal strings (arbitrary precision); interval endpoints
//! are exact rationals "num/den". Loading round-trips byte-identically.

use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::class_order::{ClassCertificate, OracleReport, SuitabilityRecord, Verdict};
use crate::error::SurveyError;
use crate::exact_poly::FieldDisc;
use crate::galois_cert::SnOutcome;
use crate::real_embeddings::{RootBox, RootLabel};
use crate::units_kummer::{Cond4Outcome, UnitSystem};

pub const SCHEMA_VERSION: &str = "abc-forge/1";

fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    Some(BigRational::new(n.parse().ok()?, d.parse().ok()?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaloisRecord {
    /// Witness primes in the order: transposition, (n-1)-cycle (composite n
    /// only), n-cycle when observed.
    pub transposition: u64,
    pub n_minus_1_cycle: Option<u64>,
    pub n_cycle: Option<u64>,
    pub disc_nonsquare: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub lo: String,
    pub hi: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cond4Record {
    pub verdict: String,
    /// For failures: the prime, exponent vector, sign and root coordinates.
    pub witness: Option<WitnessRecord>,
    /// For passes: per-prime counts (p, saturation combos, xi combos).
    pub evidence: Vec<(u32, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub p: u32,
    pub exponents: Vec<u32>,
    pub sign: i8,
    pub root_coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub status: String,
    pub invariants: Vec<String>,
    pub h: Option<String>,
    pub class_order: Option<String>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub schema_version: String,
    pub n: usize,
    pub ell: u32,
    pub a: Vec<i64>,
    pub tau: i64,
    pub a_tau: String,
    pub f_coeffs: Vec<String>,
    pub disc_f: String,
    /// decimal value, or "skipped:<reason>"
    pub disc_k: String,
    pub galois: Option<GaloisRecord>,
    pub roots: Vec<RootRecord>,
    pub regulator_abc: Option<[String; 2]>,
    pub cond1_congruent: bool,
    pub cond1_gcd_ok: bool,
    pub cond2: String,
    pub cond3: String,
    pub cond4: Option<Cond4Record>,
    pub verdict: String,
    pub lambda: Option<u32>,
    pub oracle: OracleRecord,
}

fn verdict_string(v: &Verdict) -> String {
    match v {
        Verdict::Suitable => "suitable".into(),
        Verdict::Unsuitable(c) => format!("unsuitable:{:?}", c).to_lowercase(),
        Verdict::Skipped(c) => format!("skipped:{:?}", c).to_lowercase(),
    }
}

fn cond2_string(outcome: &Option<SnOutcome>) -> String {
    match outcome {
        None => "not-run".into(),
        Some(SnOutcome::Certified(_)) => "certified".into(),
        Some(SnOutcome::NotSn(r)) => format!("not-sn:{:?}", r).to_lowercase(),
        Some(SnOutcome::Undecided) => "undecided".into(),
    }
}

fn label_string(l: Option<RootLabel>) -> String {
    match l {
        None => "unlabeled".into(),
        Some(RootLabel::Base(j)) => format!("a{}", j + 1),
        Some(RootLabel::Specialized) => "a_tau".into(),
    }
}

impl CertificateRecord {
    pub fn build(
        params: &crate::abc_family::AbcParams,
        record: &SuitabilityRecord,
        f_tau: Option<&crate::exact_poly::IntPoly>,
        roots: Option<&[RootBox]>,
        unit_system: Option<&UnitSystem>,
        cert: Option<&ClassCertificate>,
    ) -> Self {
        let disc_f = f_tau
            .map(|f| f.discriminant().map(|d| d.to_string()).unwrap_or_default())
            .unwrap_or_default();
        let disc_k = match record.cond3.as_ref().map(|c| &c.field_disc) {
            Some(FieldDisc::Value(d)) => d.to_string(),
            Some(FieldDisc::Skipped(r)) => format!("skipped:{:?}", r).to_lowercase(),
            None => "not-run".into(),
        };
        let galois = record.cond2.as_ref().and_then(|o| o.certificate()).map(|c| GaloisRecord {
            transposition: c.transposition_prime,
            n_minus_1_cycle: c.n_minus_1_cycle_prime,
            n_cycle: c.n_cycle_prime,
            disc_nonsquare: c.disc_nonsquare,
        });
        let roots = roots
            .map(|boxes| {
                boxes
                    .iter()
                    .map(|b| RootRecord {
                        lo: rat_str(&b.lo),
                        hi: rat_str(&b.hi),
                        label: label_string(b.label),
                    })
                    .collect()
            })
            .unwrap_or_default();
        let regulator_abc =
            unit_system.map(|s| [rat_str(&s.regulator.lo), rat_str(&s.regulator.hi)]);
        let cond4 = record.cond4.as_ref().map(|o| match o {
            Cond4Outcome::Pass(cert) => Cond4Record {
                verdict: "pass".into(),
                witness: None,
                evidence: cert
                    .per_prime
                    .iter()
                    .map(|e| (e.p, e.saturation_combinations, e.xi_combinations))
                    .collect(),
            },
            Cond4Outcome::FailWitness {
                p,
                exponents,
                sign,
                root,
            } => Cond4Record {
                verdict: "fail-witness".into(),
                witness: Some(WitnessRecord {
                    p: *p,
                    exponents: exponents.clone(),
                    sign: *sign,
                    root_coords: root.coords().iter().map(rat_str).collect(),
                }),
                evidence: vec![],
            },
            Cond4Outcome::FailSaturation {
                p,
                exponents,
                sign,
                root,
            } => Cond4Record {
                verdict: "fail-saturation".into(),
                witness: Some(WitnessRecord {
                    p: *p,
                    exponents: exponents.clone(),
                    sign: *sign,
                    root_coords: root.coords().iter().map(rat_str).collect(),
                }),
                evidence: vec![],
            },
        });
        let oracle = match cert.map(|c| &c.oracle) {
            Some(OracleReport::Verified {
                invariants,
                h,
                class_order,
            }) => OracleRecord {
                status: "verified".into(),
                invariants: invariants.iter().map(|i| i.to_string()).collect(),
                h: Some(h.to_string()),
                class_order: Some(class_order.to_string()),
                reason: None,
            },
            Some(OracleReport::Unverified { reason }) => OracleRecord {
                status: "unverified".into(),
                invariants: vec![],
                h: None,
                class_order: None,
                reason: Some(reason.clone()),
            },
            Some(OracleReport::Absent) | None => OracleRecord {
                status: "absent".into(),
                invariants: vec![],
                h: None,
                class_order: None,
                reason: None,
            },
        };
        Self {
            schema_version: SCHEMA_VERSION.into(),
            n: params.n(),
            ell: params.ell(),
            a: params.base_points().to_vec(),
            tau: record.tau,
            a_tau: record
                .a_tau
                .as_ref()
                .map(|a| a.to_string())
                .unwrap_or_default(),
            f_coeffs: f_tau
                .map(|f| f.coeffs().iter().map(|c| c.to_string()).collect())
                .unwrap_or_default(),
            disc_f,
            disc_k,
            galois,
            roots,
            regulator_abc,
            cond1_congruent: record.cond1.congruent,
            cond1_gcd_ok: record.cond1.gcd_ok,
            cond2: cond2_string(&record.cond2),
            cond3: record
                .cond3
                .as_ref()
                .map(|c| if c.pass { "pass".into() } else { "fail".into() })
                .unwrap_or_else(|| "not-run".to_string()),
            cond4,
            verdict: verdict_string(&record.verdict),
            lambda: cert.map(|c| c.lambda),
            oracle,
        }
    }

    pub fn is_suitable(&self) -> bool {
        self.verdict == "suitable"
    }

    pub fn a_tau_int(&self) -> Option<BigInt> {
        self.a_tau.parse().ok()
    }

    pub fn disc_k_int(&self) -> Option<BigInt> {
        self.disc_k.parse().ok()
    }

    pub fn f_poly(&self) -> Option<crate::exact_poly::IntPoly> {
        let coeffs: Option<Vec<BigInt>> = self.f_coeffs.iter().map(|c| c.parse().ok()).collect();
        Some(crate::exact_poly::IntPoly::new(coeffs?))
    }

    pub fn regulator_interval(&self) -> Option<(BigRational, BigRational)> {
        let [lo, hi] = self.regulator_abc.as_ref()?;
        Some((parse_rat(lo)?, parse_rat(hi)?))
    }
}

/// Write records line-delimited.
pub fn emit_certificates<W: Write>(mut w: W, records: &[CertificateRecord]) -> Result<(), SurveyError> {
    for r in records {
        let line = serde_json::to_string(r).expect("schema types serialize");
        writeln!(w, "{}", line)?;
    }
    Ok(())
}

/// Load records; schema-version mismatches and corrupted lines are rejected
/// with their line numbers.
pub fn load_certificates<R: BufRead>(r: R) -> Result<Vec<CertificateRecord>, SurveyError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CertificateRecord =
            serde_json::from_str(&line).map_err(|e| SurveyError::CorruptRecord {
                line: i + 1,
                reason: e.to_string(),
            })?;
        if rec.schema_version != SCHEMA_VERSION {
            return Err(SurveyError::SchemaMismatch {
                line: i + 1,
                found: rec.schema_version,
            });
        }
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abc_family::AbcParams;
    use crate::class_order::{check_suitable, SuitabilityOptions};

    fn sample_record() -> CertificateRecord {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let opts = SuitabilityOptions {
            min_abs_a: 3,
            ..SuitabilityOptions::default()
        };
        let rec = check_suitable(&params, 5, &opts);
        let cand = crate::abc_family::TauCandidate::new(&params, 5).unwrap();
        CertificateRecord::build(&params, &rec, Some(&cand.f_tau), None, None, None)
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let rec = sample_record();
        let mut buf = Vec::new();
        emit_certificates(&mut buf, std::slice::from_ref(&rec)).unwrap();
        let loaded = load_certificates(&buf[..]).unwrap();
        assert_eq!(loaded.len(), 1);
        let mut buf2 = Vec::new();
        emit_certificates(&mut buf2, &loaded).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn corrupted_line_reports_position() {
        let rec = sample_record();
        let mut buf = Vec::new();
        emit_certificates(&mut buf, std::slice::from_ref(&rec)).unwrap();
        buf.extend_from_slice(b"{ not json\n");
        match load_certificates(&buf[..]) {
            Err(SurveyError::CorruptRecord { line: 2, .. }) => {}
            other => panic!("{:?}", other.map(|v| v.len())),
        }
    }

    #[test]
    fn schema_mismatch_rejected() {
        let mut rec = sample_record();
        rec.schema_version = "abc-forge/0".into();
        let mut buf = Vec::new();
        emit_certificates(&mut buf, std::slice::from_ref(&rec)).unwrap();
        match load_certificates(&buf[..]) {
            Err(SurveyError::SchemaMismatch { line: 1, found }) => {
                assert_eq!(found, "abc-forge/0");
            }
            other => panic!("{:?}", other.map(|v| v.len())),
        }
    }
}
