//! Suitability assembly and the order certificate for the distinguished
//! ideal class: the ideal identity (xi) (g(xi)) = (tau)^ell, the four
//! suitability conditions, materialization of the class representative
//! a = (tau, xi), and cross-checks against the class-group oracle.

pub mod ideal;
pub mod linalg;
pub mod oracle;

pub use ideal::Ideal;
pub use oracle::{ClassGroupOracle, ClassGroupResult, OracleBudget};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abc_family::{AbcParams, TauCandidate};
use crate::error::{AbcError, CertError, KummerError, RootError};
use crate::exact_poly::{field_discriminant, FactorBudget, FieldDisc, SkipReason};
use crate::galois_cert::{certify_sn, SnOutcome};
use crate::real_embeddings::{verify_root_layout, LayoutReport};
use crate::units_kummer::{
    condition4_check, AlgebraicInt, Cond4Outcome, FieldContext, KummerOptions,
};

/// Knobs of the per-candidate pipeline.
#[derive(Clone, Copy, Debug)]
pub struct SuitabilityOptions {
    /// Candidates with |a(tau)| below this are rejected (asymptotic-regime
    /// guard; the root-layout check still validates whatever passes).
    pub min_abs_a: i64,
    /// Layout constant C for the scaled deviation bounds.
    pub layout_c: i64,
    /// Witness-prime budget for the Galois certificate.
    pub prime_budget: u64,
    pub factor_budget: FactorBudget,
    pub kummer: KummerOptions,
}

impl Default for SuitabilityOptions {
    fn default() -> Self {
        Self {
            min_abs_a: 100,
            layout_c: 10,
            prime_budget: 10_000,
            factor_budget: FactorBudget::default(),
            kummer: KummerOptions::default(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FailedCondition {
    Cond1,
    Cond2,
    Cond3,
    Cond4,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SkipCause {
    /// a(tau) collides with a base point (or tau gives a(tau) = 0).
    Degenerate,
    /// disc(f) could not be factored within budget.
    FactorBudget,
    /// The equation order is not maximal at some prime (no Round-2 here).
    NotMaximal,
    /// The Galois certificate ran out of witness primes.
    GaloisUndecided,
    /// |a(tau)| below the configured floor.
    BelowFloor,
    /// The specialization is not totally real.
    NotTotallyReal,
    /// The ABC units are not p-saturated; unit-representative exhaustion is
    /// not justified, so no certificate either way.
    SaturationUncertified,
    /// Certified interval precision exhausted.
    Precision,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Suitable,
    Unsuitable(FailedCondition),
    Skipped(SkipCause),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cond1Report {
    pub congruent: bool,
    pub gcd_ok: bool,
}

impl Cond1Report {
    pub fn pass(&self) -> bool {
        self.congruent && self.gcd_ok
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cond3Report {
    pub field_disc: FieldDisc,
    pub pass: bool,
}

/// Condition 3 threshold: the field discriminant exceeds |tau|^(2/(n+2)),
/// compared exactly as disc^(n+2) > tau^2 (positive disc required).
pub fn cond3_exceeds(disc: &BigInt, tau: i64, n: usize) -> bool {
    if !disc.is_positive() {
        return false;
    }
    let lhs = disc.pow((n + 2) as u32);
    let rhs = BigInt::from(tau) * BigInt::from(tau);
    lhs > rhs
}

/// Pass/fail evidence for the four suitability conditions of one tau.
#[derive(Clone, Debug)]
pub struct SuitabilityRecord {
    pub tau: i64,
    pub a_tau: Option<BigInt>,
    pub cond1: Cond1Report,
    pub cond2: Option<SnOutcome>,
    pub cond3: Option<Cond3Report>,
    pub cond4: Option<Cond4Outcome>,
    pub layout: Option<LayoutReport>,
    pub verdict: Verdict,
}

impl SuitabilityRecord {
    pub fn is_suitable(&self) -> bool {
        self.verdict == Verdict::Suitable
    }
}

/// Run the four conditions in cost order (1: arithmetic, 3: discriminant,
/// 2: Galois, 4: Kummer) with early exit; policy skips never masquerade as
/// failures.
pub fn check_suitable(params: &AbcParams, tau: i64, opts: &SuitabilityOptions) -> SuitabilityRecord {
    let n = params.n();
    let p_abs = params.prod_a().abs();
    let t = BigInt::from(tau);
    let congruent = ((&t - BigInt::one()) % &p_abs).is_zero();
    let gcd_ok = t.gcd(&params.g_at_zero()).is_one();
    let cond1 = Cond1Report { congruent, gcd_ok };
    let mut record = SuitabilityRecord {
        tau,
        a_tau: params.a_of_tau(tau),
        cond1: cond1.clone(),
        cond2: None,
        cond3: None,
        cond4: None,
        layout: None,
        verdict: Verdict::Unsuitable(FailedCondition::Cond1),
    };
    if !cond1.pass() {
        return record;
    }

    let cand = match TauCandidate::new(params, tau) {
        Ok(c) => c,
        Err(AbcError::Degenerate { .. }) | Err(AbcError::NotIntegral { .. }) => {
            record.verdict = Verdict::Skipped(SkipCause::Degenerate);
            return record;
        }
        Err(AbcError::BudgetExhausted) => unreachable!(),
    };

    // degenerate specializations with vanishing discriminant fail the
    // Galois condition outright
    let disc_f = cand.f_tau.discriminant().expect("degree >= 3");
    if disc_f.is_zero() {
        record.cond2 = Some(SnOutcome::NotSn(
            crate::galois_cert::NotSnReason::NotSquarefree,
        ));
        record.verdict = Verdict::Unsuitable(FailedCondition::Cond2);
        return record;
    }

    // condition 3: field discriminant against the threshold
    let fd = match field_discriminant(&cand.f_tau, opts.factor_budget) {
        Ok(fd) => fd,
        Err(_) => {
            record.verdict = Verdict::Skipped(SkipCause::FactorBudget);
            return record;
        }
    };
    match &fd {
        FieldDisc::Skipped(SkipReason::FactorBudget) => {
            record.cond3 = Some(Cond3Report {
                field_disc: fd.clone(),
                pass: false,
            });
            record.verdict = Verdict::Skipped(SkipCause::FactorBudget);
            return record;
        }
        FieldDisc::Skipped(SkipReason::NotMaximal { .. }) => {
            record.cond3 = Some(Cond3Report {
                field_disc: fd.clone(),
                pass: false,
            });
            record.verdict = Verdict::Skipped(SkipCause::NotMaximal);
            return record;
        }
        FieldDisc::Value(d) => {
            let pass = cond3_exceeds(d, tau, n);
            record.cond3 = Some(Cond3Report {
                field_disc: fd.clone(),
                pass,
            });
            if !pass {
                record.verdict = Verdict::Unsuitable(FailedCondition::Cond3);
                return record;
            }
        }
    }

    // condition 2: symmetric Galois group
    let sn = certify_sn(&cand.f_tau, opts.prime_budget);
    record.cond2 = Some(sn.clone());
    match sn {
        SnOutcome::Certified(_) => {}
        SnOutcome::NotSn(_) => {
            record.verdict = Verdict::Unsuitable(FailedCondition::Cond2);
            return record;
        }
        SnOutcome::Undecided => {
            record.verdict = Verdict::Skipped(SkipCause::GaloisUndecided);
            return record;
        }
    }

    // asymptotic-regime floor
    if cand.a_tau.abs() < BigInt::from(opts.min_abs_a) {
        record.verdict = Verdict::Skipped(SkipCause::BelowFloor);
        return record;
    }

    // embeddings, layout report (recorded, not a gate), condition 4
    let mut ctx = match FieldContext::new(params, &cand, opts.kummer.start_bits) {
        Ok(c) => c,
        Err(RootError::NotTotallyReal { .. }) => {
            record.verdict = Verdict::Skipped(SkipCause::NotTotallyReal);
            return record;
        }
        Err(_) => {
            record.verdict = Verdict::Skipped(SkipCause::Precision);
            return record;
        }
    };
    let c_bound = num_rational::BigRational::from_integer(BigInt::from(opts.layout_c));
    record.layout = verify_root_layout(params, &cand, &ctx.emb, &c_bound, opts.min_abs_a).ok();

    match condition4_check(&mut ctx, params.ell(), opts.kummer) {
        Ok(out) => {
            record.cond4 = Some(out.clone());
            record.verdict = match out {
                Cond4Outcome::Pass(_) => Verdict::Suitable,
                Cond4Outcome::FailWitness { .. } => Verdict::Unsuitable(FailedCondition::Cond4),
                Cond4Outcome::FailSaturation { .. } => {
                    Verdict::Skipped(SkipCause::SaturationUncertified)
                }
            };
        }
        Err(KummerError::PrecisionExhausted { .. }) | Err(KummerError::SingularUnitSystem) => {
            record.verdict = Verdict::Skipped(SkipCause::Precision);
        }
        Err(_) => {
            record.verdict = Verdict::Skipped(SkipCause::Precision);
        }
    }
    record
}

/// Exact norms realized by the construction identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityReport {
    pub norm_xi_abs: BigInt,
    pub norm_g_abs: BigInt,
}

/// Check the element identity xi g(xi) = (-1)^(n-1) (xi-a_1)...(xi-a_{n-1})
/// tau^ell exactly, the norm consequences |N(xi)| = |tau|^ell and
/// |N(g(xi))| = |tau|^((n-1) ell), and the coprimality gcd(g(0), tau) = 1.
/// Any failure is a construction bug, never a skip. Pure algebra in the
/// quotient ring: the specialization need not be totally real.
pub fn verify_ideal_identity(
    params: &AbcParams,
    cand: &TauCandidate,
) -> Result<IdentityReport, CertError> {
    let field = crate::units_kummer::NumberField::new(cand.f_tau.clone());
    let field = &field;
    let tau = cand.tau;
    let n = params.n();
    let ell = params.ell();

    let xi = AlgebraicInt::xi(field);
    let g_xi = eval_poly_at(field, &params.g_poly());
    let mut unit_prod = AlgebraicInt::one(field);
    for &aj in params.base_points() {
        unit_prod = unit_prod.mul(field, &AlgebraicInt::xi_minus(field, &BigInt::from(aj)));
    }
    let tau_pow = BigInt::from(tau).pow(ell);
    let mut rhs = unit_prod.scale(&num_rational::BigRational::from_integer(tau_pow));
    if (n - 1) % 2 == 1 {
        rhs = rhs.neg();
    }
    let lhs = xi.mul(field, &g_xi);
    if lhs != rhs {
        return Err(CertError::IdentityViolated(format!(
            "xi g(xi) != (-1)^(n-1) prod(xi - a_j) tau^ell at tau = {tau}"
        )));
    }

    let norm_xi_abs = xi.norm(field).numer().abs();
    let expect_xi = BigInt::from(tau).abs().pow(ell);
    if norm_xi_abs != expect_xi {
        return Err(CertError::IdentityViolated(format!(
            "|N(xi)| = {norm_xi_abs}, expected |tau|^ell = {expect_xi}"
        )));
    }
    let norm_g_abs = g_xi.norm(field).numer().abs();
    let expect_g = BigInt::from(tau).abs().pow(ell * (n as u32 - 1));
    if norm_g_abs != expect_g {
        return Err(CertError::IdentityViolated(format!(
            "|N(g(xi))| = {norm_g_abs}, expected |tau|^((n-1) ell) = {expect_g}"
        )));
    }
    if !params.g_at_zero().gcd(&BigInt::from(tau)).is_one() {
        return Err(CertError::IdentityViolated(format!(
            "gcd(g(0), tau) != 1 at tau = {tau}"
        )));
    }
    Ok(IdentityReport {
        norm_xi_abs,
        norm_g_abs,
    })
}

fn eval_poly_at(field: &crate::units_kummer::NumberField, g: &crate::exact_poly::IntPoly) -> AlgebraicInt {
    let xi = AlgebraicInt::xi(field);
    let mut acc = AlgebraicInt::zero(field);
    for c in g.coeffs().iter().rev() {
        acc = acc
            .mul(field, &xi)
            .add(&AlgebraicInt::from_integer(field, c.clone()));
    }
    acc
}

/// Oracle evidence attached to a certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleReport {
    Verified {
        invariants: Vec<BigInt>,
        h: BigInt,
        class_order: BigInt,
    },
    Unverified {
        reason: String,
    },
    Absent,
}

/// The order certificate: tau, the distinguished ideal a = (tau, xi) with
/// its norm, the certified order lambda = ell, and the full evidence chain.
#[derive(Clone, Debug)]
pub struct ClassCertificate {
    pub tau: i64,
    pub ideal_norm: BigInt,
    pub lambda: u32,
    pub identity: IdentityReport,
    pub cond4: Cond4Outcome,
    pub oracle: OracleReport,
}

/// Largest proper divisor bound on lambda that a condition-4 witness proves:
/// lambda divides ell/p.
pub fn lambda_divisor_bound(ell: u32, outcome: &Cond4Outcome) -> Option<u32> {
    match outcome {
        Cond4Outcome::FailWitness { p, .. } => Some(ell / p),
        _ => None,
    }
}

/// Assemble the order certificate for a SUITABLE record: materialize
/// a = (tau, xi), verify N(a) = |tau| and a^ell = (xi) concretely, conclude
/// lambda = ell through condition 4, and cross-check against the oracle
/// when it is in range. Oracle disagreement is a hard error.
pub fn class_order_certificate(
    ctx: &FieldContext,
    record: &SuitabilityRecord,
    oracle_budget: Option<OracleBudget>,
) -> Result<ClassCertificate, CertError> {
    if !record.is_suitable() {
        let mut msg = format!("verdict is {:?}", record.verdict);
        if let Some(out) = &record.cond4 {
            if let Some(d) = lambda_divisor_bound(ctx.params.ell(), out) {
                msg = format!("{msg}; condition-4 witness proves lambda | {d}");
            }
        }
        return Err(CertError::NotSuitable(msg));
    }
    let identity = verify_ideal_identity(&ctx.params, &ctx.cand)?;
    let field = &ctx.field;
    let ell = ctx.params.ell();
    let tau_elem = AlgebraicInt::from_integer(field, BigInt::from(ctx.cand.tau));
    let xi = AlgebraicInt::xi(field);
    let a_ideal = Ideal::two_generated(field, &tau_elem, &xi);
    let ideal_norm = a_ideal.norm();
    if ideal_norm != BigInt::from(ctx.cand.tau).abs() {
        return Err(CertError::IdentityViolated(format!(
            "N((tau, xi)) = {ideal_norm}, expected |tau|"
        )));
    }
    let a_pow = a_ideal.pow(field, ell);
    let xi_ideal = Ideal::principal(field, &xi);
    if a_pow != xi_ideal {
        return Err(CertError::IdentityViolated(
            "(tau, xi)^ell != (xi) as lattices".into(),
        ));
    }

    let cond4 = record.cond4.clone().expect("suitable record carries cond4");
    let oracle = match oracle_budget {
        None => OracleReport::Absent,
        Some(budget) => {
            let mut orc = ClassGroupOracle::compute(field, budget);
            match orc.result().clone() {
                ClassGroupResult::Unverified { reason } => OracleReport::Unverified { reason },
                ClassGroupResult::Verified { invariants, h } => {
                    if !(&h % BigInt::from(ell)).is_zero() {
                        return Err(CertError::OracleMismatch(format!(
                            "certificate says ell = {ell} divides h, oracle h = {h}"
                        )));
                    }
                    let order = orc
                        .class_order_of(&a_ideal, budget)
                        .ok_or_else(|| CertError::OracleMismatch(
                            "oracle could not resolve the class of (tau, xi)".into(),
                        ))?;
                    if order != BigInt::from(ell) {
                        return Err(CertError::OracleMismatch(format!(
                            "certificate lambda = {ell}, oracle order = {order}"
                        )));
                    }
                    OracleReport::Verified {
                        invariants,
                        h,
                        class_order: order,
                    }
                }
            }
        }
    };
    Ok(ClassCertificate {
        tau: ctx.cand.tau,
        ideal_norm,
        lambda: ell,
        identity,
        cond4,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relaxed_opts() -> SuitabilityOptions {
        SuitabilityOptions {
            min_abs_a: 3,
            ..SuitabilityOptions::default()
        }
    }

    #[test]
    fn identity_and_norms_tau5() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 5).unwrap();
        let report = verify_ideal_identity(&params, &cand).unwrap();
        assert_eq!(report.norm_xi_abs, BigInt::from(25));
        assert_eq!(report.norm_g_abs, BigInt::from(625));
        // |N(xi) N(g(xi))| = |tau|^(n ell)
        assert_eq!(
            report.norm_xi_abs * report.norm_g_abs,
            BigInt::from(5).pow(6)
        );
    }

    #[test]
    fn cond1_failure_short_circuits() {
        // P = 6: tau = 5 fails the congruence
        let params = AbcParams::new(3, 2, vec![2, 3]);
        let rec = check_suitable(&params, 5, &relaxed_opts());
        assert_eq!(rec.verdict, Verdict::Unsuitable(FailedCondition::Cond1));
        assert!(!rec.cond1.congruent);
        assert!(rec.cond2.is_none());
    }

    #[test]
    fn cond3_threshold_comparisons() {
        // synthetic: disc = 40 does not exceed tau^(2/5) once tau^2 >= 40^5
        let n = 3;
        assert!(cond3_exceeds(&BigInt::from(49), 16_000, n));
        let tau_big = 320_000; // tau^2 = 1.024e11 > 40^5 = 1.024e8...
        assert!(!cond3_exceeds(&BigInt::from(40), tau_big, n));
        assert!(!cond3_exceeds(&BigInt::from(-23), 5, n));
        // boundary: disc^5 must strictly exceed tau^2
        assert!(cond3_exceeds(&BigInt::from(2), 5, n)); // 32 > 25
        assert!(!cond3_exceeds(&BigInt::from(2), 6, n)); // 32 < 36
    }

    #[test]
    fn tau5_full_record_is_suitable() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let rec = check_suitable(&params, 5, &relaxed_opts());
        assert!(rec.is_suitable(), "{:?}", rec.verdict);
        assert!(rec.cond1.pass());
        assert!(matches!(rec.cond2, Some(SnOutcome::Certified(_))));
        assert!(rec.cond3.as_ref().unwrap().pass);
        assert!(matches!(rec.cond4, Some(Cond4Outcome::Pass(_))));
        assert!(rec.layout.as_ref().unwrap().pass);
    }

    #[test]
    fn tau2_fails_kummer_with_witness() {
        // the disc-229 field has class number 1: condition 4 must find a
        // genuine square and prove lambda | 1
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let rec = check_suitable(&params, 2, &relaxed_opts());
        assert_eq!(rec.verdict, Verdict::Unsuitable(FailedCondition::Cond4));
        let out = rec.cond4.as_ref().unwrap();
        assert_eq!(lambda_divisor_bound(2, out), Some(1));
        match out {
            Cond4Outcome::FailWitness { p, root, .. } => {
                assert_eq!(*p, 2);
                assert!(!root.is_zero());
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn below_floor_is_skipped() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let rec = check_suitable(&params, 5, &SuitabilityOptions::default());
        // |a(5)| = 24 < 100
        assert_eq!(rec.verdict, Verdict::Skipped(SkipCause::BelowFloor));
    }

    #[test]
    fn certificate_tau5_with_oracle() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 5).unwrap();
        let ctx = FieldContext::new(&params, &cand, 64).unwrap();
        let rec = check_suitable(&params, 5, &relaxed_opts());
        assert!(rec.is_suitable());
        let cert =
            class_order_certificate(&ctx, &rec, Some(OracleBudget::default())).unwrap();
        assert_eq!(cert.lambda, 2);
        assert_eq!(cert.ideal_norm, BigInt::from(5));
        match &cert.oracle {
            OracleReport::Verified { h, class_order, .. } => {
                assert!((h % BigInt::from(2)).is_zero());
                assert_eq!(class_order, &BigInt::from(2));
            }
            other => panic!("oracle should verify this field: {:?}", other),
        }
    }

    #[test]
    fn certificate_refuses_unsuitable() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 2).unwrap();
        let ctx = FieldContext::new(&params, &cand, 64).unwrap();
        let rec = check_suitable(&params, 2, &relaxed_opts());
        match class_order_certificate(&ctx, &rec, None) {
            Err(CertError::NotSuitable(msg)) => {
                assert!(msg.contains("lambda | 1"), "{}", msg);
            }
            other => panic!("{:?}", other.map(|c| c.lambda)),
        }
    }

    #[test]
    fn ell_one_certificate_is_vacuous() {
        // ell = 1: condition 4 has no primes, a = (tau, xi) = the ideal
        // whose first power is already (xi), and lambda = 1
        let params = AbcParams::new(3, 1, vec![1, -1]);
        let rec = check_suitable(&params, 30, &relaxed_opts());
        assert!(rec.is_suitable(), "{:?}", rec.verdict);
        let cand = TauCandidate::new(&params, 30).unwrap();
        let ctx = FieldContext::new(&params, &cand, 64).unwrap();
        let cert = class_order_certificate(&ctx, &rec, None).unwrap();
        assert_eq!(cert.lambda, 1);
        assert_eq!(cert.ideal_norm, BigInt::from(30));
    }

    #[test]
    fn unsuitable_tau2_class_is_principal_per_oracle() {
        // cross-check the refusal: the oracle says (tau, xi) is principal
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 2).unwrap();
        let ctx = FieldContext::new(&params, &cand, 64).unwrap();
        let mut orc = ClassGroupOracle::compute(&ctx.field, OracleBudget::default());
        assert!(orc.result().is_verified());
        let tau_elem = AlgebraicInt::from_integer(&ctx.field, BigInt::from(2));
        let xi = AlgebraicInt::xi(&ctx.field);
        let a = Ideal::two_generated(&ctx.field, &tau_elem, &xi);
        assert_eq!(
            orc.class_order_of(&a, OracleBudget::default()),
            Some(BigInt::one())
        );
    }
}
