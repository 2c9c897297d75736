//! The specialized polynomial family
//! `f(t,x) = (x-a_1)...(x-a_{n-1})(x-a(t)) - 1` with
//! `a(t) = (-1)^(n-1) (t^ell - 1)/(a_1...a_{n-1})`,
//! candidate generation over integer specializations, and the closed-form
//! discriminant of the all-ones specialization used as a cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AbcError;
use crate::exact_poly::IntPoly;

/// Fixed data of a family: degree n >= 3, target order ell >= 1, and
/// pairwise distinct nonzero integers a_1..a_{n-1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbcParams {
    n: usize,
    ell: u32,
    a: Vec<i64>,
}

impl AbcParams {
    pub fn new(n: usize, ell: u32, a: Vec<i64>) -> Self {
        assert!(n >= 3, "degree must be at least 3");
        assert!(ell >= 1, "target order must be at least 1");
        assert_eq!(a.len(), n - 1, "need n-1 base points");
        assert!(a.iter().all(|&x| x != 0), "base points must be nonzero");
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                assert_ne!(a[i], a[j], "base points must be pairwise distinct");
            }
        }
        Self { n, ell, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn base_points(&self) -> &[i64] {
        &self.a
    }

    /// a_1 * ... * a_{n-1}
    pub fn prod_a(&self) -> BigInt {
        self.a.iter().map(|&x| BigInt::from(x)).product()
    }

    /// prod (x - a_j), monic of degree n-1.
    pub fn base_poly(&self) -> IntPoly {
        IntPoly::from_roots(&self.a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// a(tau), exact integer when tau^ell = 1 mod a_1...a_{n-1}; None when
    /// the division is not integral.
    pub fn a_of_tau(&self, tau: i64) -> Option<BigInt> {
        let p = self.prod_a();
        let num = BigInt::from(tau).pow(self.ell) - BigInt::one();
        let (q, r) = num.div_rem(&p);
        if !r.is_zero() {
            return None;
        }
        Some(if self.n % 2 == 0 { -q } else { q })
    }

    /// The specialized polynomial `(x-a_1)...(x-a_{n-1})(x-a(tau)) - 1`.
    ///
    /// Requires a(tau) integral. Degenerate members with a(tau) equal to a
    /// base point are still well-defined polynomials and are returned (the
    /// tau = 0 member with f(0,0) = 0 is one); candidate construction
    /// rejects them.
    pub fn build_f(&self, tau: i64) -> Result<IntPoly, AbcError> {
        let a_tau = self.a_of_tau(tau).ok_or(AbcError::NotIntegral { tau })?;
        Ok(self.build_f_at(&a_tau))
    }

    /// The family polynomial at an explicit last root.
    pub fn build_f_at(&self, a_tau: &BigInt) -> IntPoly {
        self.base_poly()
            .mul(&IntPoly::linear_root(a_tau))
            .sub(&IntPoly::one())
    }

    /// a_1...a_{n-1} * f(0,x), an integer polynomial divisible by x.
    pub fn f0_scaled(&self) -> IntPoly {
        // P*(x - a(0)) = P*x - (-1)^n
        let p = self.prod_a();
        let sign = if self.n % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let lin = IntPoly::new(vec![-sign, p.clone()]);
        self.base_poly().mul(&lin).sub(&IntPoly::constant(p))
    }

    /// g(x) = a_1...a_{n-1} f(0,x)/x, degree n-1,
    /// g(0) = a_1...a_{n-1} df/dx(0,0) != 0.
    pub fn g_poly(&self) -> IntPoly {
        let h = self.f0_scaled();
        debug_assert!(h.constant_term().is_zero());
        h.div_x_exact()
    }

    /// g(0), the quantity entering condition 1 and coprimality (15).
    pub fn g_at_zero(&self) -> BigInt {
        self.g_poly().constant_term()
    }

    /// Condition-1 congruence and gcd filter for a single tau.
    pub fn cond1_holds(&self, tau: i64) -> bool {
        let p_abs = self.prod_a().abs();
        let t = BigInt::from(tau);
        let congruent = ((&t - BigInt::one()) % &p_abs).is_zero();
        if !congruent {
            return false;
        }
        let g0 = self.g_at_zero();
        t.gcd(&g0).is_one()
    }
}

/// One specialization: tau, a(tau), and the specialized polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauCandidate {
    pub tau: i64,
    pub a_tau: BigInt,
    pub f_tau: IntPoly,
    /// Set when ell is even and the mirrored candidate -tau appears earlier
    /// in the stream: both define the same a(tau), hence the same field.
    pub duplicate_field: bool,
}

impl TauCandidate {
    pub fn new(params: &AbcParams, tau: i64) -> Result<Self, AbcError> {
        let a_tau = params.a_of_tau(tau).ok_or(AbcError::NotIntegral { tau })?;
        if params.a.iter().any(|&x| BigInt::from(x) == a_tau) {
            return Err(AbcError::Degenerate { tau });
        }
        let f_tau = params.build_f_at(&a_tau);
        let c = Self {
            tau,
            a_tau,
            f_tau,
            duplicate_field: false,
        };
        debug_assert_eq!(
            c.f_tau.constant_term(),
            -BigInt::from(tau).pow(params.ell()),
            "constant term must be -tau^ell"
        );
        Ok(c)
    }
}

/// Smallest admissible |tau| in the scan range: the least m >= 2 with
/// 2 m^ell >= T^ell + 2.
pub fn range_floor(ell: u32, t_max: u64) -> u64 {
    let t_pow = BigInt::from(t_max).pow(ell) + BigInt::from(2);
    let mut lo = 2u64;
    let mut hi = t_max.max(2);
    if BigInt::from(2) * BigInt::from(hi).pow(ell) < t_pow {
        return t_max + 1; // empty range
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if BigInt::from(2) * BigInt::from(mid).pow(ell) >= t_pow {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo.max(2)
}

/// Candidate specializations with `lo_abs <= |tau| <= hi_abs` passing
/// condition 1, ordered by |tau| then sign (negative first), degenerate
/// members dropped.
pub fn candidate_taus_in(
    params: &AbcParams,
    lo_abs: u64,
    hi_abs: u64,
) -> impl Iterator<Item = TauCandidate> + '_ {
    let ell_even = params.ell() % 2 == 0;
    (lo_abs.max(2)..=hi_abs).flat_map(move |m| {
        let mut out = Vec::with_capacity(2);
        let mut seen_negative = false;
        for tau in [-(m as i64), m as i64] {
            if !params.cond1_holds(tau) {
                continue;
            }
            if let Ok(mut c) = TauCandidate::new(params, tau) {
                if tau > 0 && ell_even && seen_negative {
                    c.duplicate_field = true;
                }
                if tau < 0 {
                    seen_negative = true;
                }
                out.push(c);
            }
        }
        out
    })
}

/// The scan stream of the counting theorem: both signs with
/// `((T^ell + 2)/2)^(1/ell) <= |tau| <= T` and condition 1.
pub fn candidate_taus(params: &AbcParams, t_max: u64) -> impl Iterator<Item = TauCandidate> + '_ {
    assert!(t_max >= 2);
    candidate_taus_in(params, range_floor(params.ell(), t_max), t_max)
}

/// Exploratory stream over the full range 2 <= |tau| <= T (outside the
/// guaranteed window; off by default in scans).
pub fn candidate_taus_full(
    params: &AbcParams,
    t_max: u64,
) -> impl Iterator<Item = TauCandidate> + '_ {
    candidate_taus_in(params, 2, t_max)
}

/// Closed-form x-discriminant of the all-ones specialization
/// `(x-1)^(n-1) (x - alpha t^ell - beta) - gamma` at t = tau:
/// `(-1)^(n-1) gamma^(n-2) ((n-1)^(n-1) a^n + n^n gamma)` with
/// `a = alpha tau^ell + beta - 1`. Matches the resultant-based discriminant
/// of the specialized polynomial up to the factor `(-1)^(n(n-1)/2)`.
pub fn disc_closed_form(
    n: usize,
    ell: u32,
    alpha: &BigInt,
    beta: &BigInt,
    gamma: &BigInt,
    tau: &BigInt,
) -> BigInt {
    assert!(n >= 2);
    assert!(!gamma.is_zero());
    let a = alpha * tau.pow(ell) + beta - BigInt::one();
    let n_big = BigInt::from(n as u64);
    let n1_big = BigInt::from((n - 1) as u64);
    let core = n1_big.pow((n - 1) as u32) * a.pow(n as u32) + n_big.pow(n as u32) * gamma;
    let signed = gamma.pow((n - 2) as u32) * core;
    if (n - 1) % 2 == 1 {
        -signed
    } else {
        signed
    }
}

/// The all-ones specialization itself, for cross-checking the closed form.
pub fn disc_closed_form_poly(
    n: usize,
    ell: u32,
    alpha: &BigInt,
    beta: &BigInt,
    gamma: &BigInt,
    tau: &BigInt,
) -> IntPoly {
    let one = BigInt::one();
    let mut f = IntPoly::one();
    for _ in 0..n - 1 {
        f = f.mul(&IntPoly::linear_root(&one));
    }
    let last = alpha * tau.pow(ell) + beta;
    f.mul(&IntPoly::linear_root(&last))
        .sub(&IntPoly::constant(gamma.clone()))
}

/// Search budget for base-tuple selection.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Random specializations that must all certify S_n.
    pub samples: usize,
    /// Largest |a_i| tried.
    pub max_abs: i64,
    /// Witness-prime budget per certification.
    pub prime_bound: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            samples: 8,
            max_abs: 6,
            prime_bound: 2_000,
        }
    }
}

/// Find a base tuple a_1..a_{n-1} whose specializations behave generically:
/// f(0,x) separable and S_n certified on sampled specializations.
/// For n = 3 the family (1, -1) is returned immediately.
pub fn search_base_params(n: usize, ell: u32, budget: SearchBudget) -> Result<AbcParams, AbcError> {
    assert!(n >= 3);
    if n == 3 {
        return Ok(AbcParams::new(3, ell, vec![1, -1]));
    }
    for radius in 2..=budget.max_abs {
        let mut tuple = Vec::new();
        if try_tuples(n, ell, radius, &mut tuple, &budget) {
            return Ok(AbcParams::new(n, ell, tuple));
        }
    }
    Err(AbcError::BudgetExhausted)
}

fn try_tuples(
    n: usize,
    ell: u32,
    radius: i64,
    tuple: &mut Vec<i64>,
    budget: &SearchBudget,
) -> bool {
    if tuple.len() == n - 1 {
        if tuple.iter().map(|v| v.abs()).max() != Some(radius) {
            return false; // already covered at a smaller radius
        }
        let params = AbcParams::new(n, ell, tuple.clone());
        return tuple_generic(&params, budget);
    }
    let mut values: Vec<i64> = (1..=radius).flat_map(|v| [v, -v]).collect();
    values.retain(|v| !tuple.contains(v));
    for v in values {
        tuple.push(v);
        if try_tuples(n, ell, radius, tuple, budget) {
            return true;
        }
        tuple.pop();
    }
    false
}

fn tuple_generic(params: &AbcParams, budget: &SearchBudget) -> bool {
    if !params.f0_scaled().is_squarefree() {
        return false;
    }
    let mut certified = 0usize;
    for cand in candidate_taus_full(params, 4 * budget.samples as u64 + 16) {
        if cand.duplicate_field {
            continue;
        }
        match crate::galois_cert::certify_sn(&cand.f_tau, budget.prime_bound) {
            crate::galois_cert::SnOutcome::Certified(_) => {
                certified += 1;
                if certified >= budget.samples {
                    return true;
                }
            }
            _ => return false,
        }
    }
    false
}
