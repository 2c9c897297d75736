//! Certificates that a specialized polynomial has the full symmetric Galois
//! group, from factorization shapes at witness primes, plus a brute-force
//! resolvent oracle for degrees up to 4.
//!
//! Shape evidence is used through two classical sufficient criteria:
//! a transitive group of prime degree is primitive, and a primitive group
//! containing a transposition is symmetric; for composite degree an
//! (n-1)-cycle witness upgrades transitivity to 2-transitivity (hence
//! primitivity) first.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_poly::integers::{factor_bounded, is_perfect_square, Factorization, Primes};
use crate::exact_poly::modp::factor_mod_p;
use crate::exact_poly::{factor_shape_mod_p, IntPoly};

pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

/// Evidence that a polynomial is irreducible over Q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IrredEvidence {
    /// Degree 1.
    Linear,
    /// Irreducible modulo the witness prime.
    PrimeIrreducible(u64),
    /// Shapes at these primes jointly rule out every proper factor degree.
    ShapeCombination(Vec<u64>),
    /// No subset of the mod-P factors lifts to a divisor (P beyond twice
    /// the factor coefficient bound, so the check is exhaustive).
    BigPrimeExhaustion(u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IrredOutcome {
    Irreducible(IrredEvidence),
    Reducible { factor: IntPoly },
    Undecided,
}

impl IrredOutcome {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrredOutcome::Irreducible(_))
    }
}

/// Divisors of |n| up to the factoring budget; None if n cannot be factored.
fn all_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return None;
    }
    let fs = match factor_bounded(n, 100_000, 12) {
        Factorization::Complete(fs) => fs,
        Factorization::Incomplete { .. } => return None,
    };
    let mut divs = vec![BigInt::one()];
    for (p, e) in fs {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = BigInt::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= &p;
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

/// Integer roots of a monic polynomial (divisor test on the constant term).
fn integer_roots(f: &IntPoly) -> Vec<BigInt> {
    let mut g = f.clone();
    let mut roots = Vec::new();
    while g.deg() > 0 && g.constant_term().is_zero() {
        roots.push(BigInt::zero());
        g = g.div_x_exact();
    }
    if g.deg() > 0 {
        if let Some(divs) = all_divisors(&g.constant_term()) {
            for d in divs {
                for cand in [d.clone(), -d] {
                    if g.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn subset_sums(ctype: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for d in ctype {
        for i in (0..=n - d).rev() {
            if reach[i] {
                reach[i + d] = true;
            }
        }
    }
    reach
}

/// Irreducibility over Q for monic f, with a machine-checkable witness.
///
/// `Undecided` only when the prime budget runs out and the polynomial is too
/// large for the exhaustive single-prime reconstruction.
pub fn is_irreducible(f: &IntPoly, prime_budget: u64) -> IrredOutcome {
    assert!(f.is_monic(), "irreducibility certificates assume monic input");
    let n = f.deg();
    if n == 1 {
        return IrredOutcome::Irreducible(IrredEvidence::Linear);
    }
    // repeated factors are factors
    let g = f.gcd(&f.derivative());
    if g.deg() > 0 {
        return IrredOutcome::Reducible { factor: g };
    }

    let mut possible: Option<Vec<bool>> = None; // attainable factor degrees
    let mut used_primes = Vec::new();
    let mut primes = Primes::new();
    let mut scanned = 0u64;
    let scan_shapes = |budget: u64,
                           scanned: &mut u64,
                           primes: &mut Primes,
                           possible: &mut Option<Vec<bool>>,
                           used: &mut Vec<u64>|
     -> Option<IrredOutcome> {
        while *scanned < budget {
            let p = primes.next().unwrap();
            *scanned += 1;
            let Ok(shape) = factor_shape_mod_p(f, p) else {
                continue;
            };
            if !shape.is_squarefree() {
                continue; // ramified primes carry no subset-sum information
            }
            let ctype = shape.cycle_type();
            if ctype.len() == 1 {
                return Some(IrredOutcome::Irreducible(IrredEvidence::PrimeIrreducible(p)));
            }
            let reach = subset_sums(&ctype, n);
            used.push(p);
            *possible = Some(match possible.take() {
                None => reach,
                Some(prev) => prev
                    .iter()
                    .zip(reach.iter())
                    .map(|(a, b)| *a && *b)
                    .collect(),
            });
            if let Some(poss) = possible {
                if !poss[1..n].iter().any(|&b| b) {
                    return Some(IrredOutcome::Irreducible(IrredEvidence::ShapeCombination(
                        used.clone(),
                    )));
                }
            }
        }
        None
    };

    // phase 1: shapes at small primes
    let shape_phase = 30u64.min(prime_budget);
    if let Some(out) = scan_shapes(
        shape_phase,
        &mut scanned,
        &mut primes,
        &mut possible,
        &mut used_primes,
    ) {
        return out;
    }

    // phase 2: rational roots give immediate factors
    for r in integer_roots(f) {
        let factor = IntPoly::linear_root(&r);
        let (_, rem) = f.div_rem_monic(&factor);
        debug_assert!(rem.is_zero());
        return IrredOutcome::Reducible { factor };
    }

    // phase 3: exhaustive reconstruction at one prime beyond the Mignotte
    // bound (Hensel-free: the prime is large enough on its own)
    if let Some(outcome) = big_prime_reconstruction(f) {
        return outcome;
    }

    // phase 4: keep scanning shapes up to the full budget
    if let Some(out) = scan_shapes(
        prime_budget,
        &mut scanned,
        &mut primes,
        &mut possible,
        &mut used_primes,
    ) {
        return out;
    }
    IrredOutcome::Undecided
}

/// Factor f at a single prime beyond twice the factor-coefficient bound and
/// try every subset product. Complete for moderate coefficients; None when
/// the bound exceeds the mod-p arithmetic range.
fn big_prime_reconstruction(f: &IntPoly) -> Option<IrredOutcome> {
    let n = f.deg();
    if n > 10 {
        return None;
    }
    let height = f
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    // any monic factor has coefficients bounded by 2^n (height + 1) (n + 1)
    let bound: BigInt = (BigInt::one() << n) * (height + BigInt::one()) * BigInt::from(n + 1);
    let two_bound = &bound * BigInt::from(2);
    let start = u64::try_from(&two_bound + BigInt::one()).ok()?;
    if start > (1u64 << 61) {
        return None;
    }
    let mut p = start.max(3);
    let big_p = loop {
        if crate::exact_poly::integers::is_prime_u64(p) {
            if let Ok(shape) = factor_shape_mod_p(f, p) {
                if shape.is_squarefree() {
                    break p;
                }
            }
        }
        p += 1;
    };
    let factors = factor_mod_p(f, big_p).ok()?;
    let polys: Vec<_> = factors.iter().map(|(q, _)| q.clone()).collect();
    let k = polys.len();
    if k == 1 {
        return Some(IrredOutcome::Irreducible(IrredEvidence::BigPrimeExhaustion(
            big_p,
        )));
    }
    for mask in 1u32..(1u32 << k) - 1 {
        let deg: usize = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| polys[i].deg())
            .sum();
        if deg == 0 || 2 * deg > n {
            continue; // the complement covers subsets past half degree
        }
        let mut prod = crate::exact_poly::modp::PolyZp::one(big_p);
        for (i, q) in polys.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = prod.mul(q);
            }
        }
        let cand = prod.lift_symmetric();
        let (_, rem) = f.div_rem_monic(&cand);
        if rem.is_zero() {
            return Some(IrredOutcome::Reducible { factor: cand });
        }
    }
    Some(IrredOutcome::Irreducible(IrredEvidence::BigPrimeExhaustion(
        big_p,
    )))
}

/// A symmetric-group certificate: Dedekind's theorem at each witness prime
/// provides the stated cycle type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SnCertificate {
    pub n: usize,
    pub transitivity: IrredEvidence,
    pub transposition_prime: u64,
    /// Required (and present) exactly when n is composite.
    pub n_minus_1_cycle_prime: Option<u64>,
    /// Recorded when observed; implies transitivity on its own.
    pub n_cycle_prime: Option<u64>,
    pub disc: BigInt,
    pub disc_nonsquare: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NotSnReason {
    Reducible,
    NotSquarefree,
    /// disc(f) is a perfect square: the group lies in the alternating group.
    DiscSquare,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SnOutcome {
    Certified(SnCertificate),
    NotSn(NotSnReason),
    Undecided,
}

impl SnOutcome {
    pub fn certificate(&self) -> Option<&SnCertificate> {
        match self {
            SnOutcome::Certified(c) => Some(c),
            _ => None,
        }
    }
}

/// Certify that the Galois group of monic squarefree f is the full symmetric
/// group. Certificates are sound; `Undecided` candidates are dropped by the
/// scanner, never accepted.
pub fn certify_sn(f: &IntPoly, prime_budget: u64) -> SnOutcome {
    assert!(f.is_monic(), "S_n certification assumes monic input");
    let n = f.deg();
    assert!(n >= 2);
    let disc = f.discriminant().expect("degree >= 2");
    if disc.is_zero() {
        return SnOutcome::NotSn(NotSnReason::NotSquarefree);
    }
    if is_perfect_square(&disc) {
        return SnOutcome::NotSn(NotSnReason::DiscSquare);
    }

    let transitivity = match is_irreducible(f, prime_budget) {
        IrredOutcome::Irreducible(e) => e,
        IrredOutcome::Reducible { .. } => return SnOutcome::NotSn(NotSnReason::Reducible),
        IrredOutcome::Undecided => return SnOutcome::Undecided,
    };

    let n_is_prime = crate::exact_poly::integers::is_prime_u64(n as u64);
    let mut transposition = None;
    let mut n_minus_1 = None;
    let mut n_cycle = None;
    let mut primes = Primes::new();
    let mut scanned = 0u64;
    while scanned < prime_budget {
        let p = primes.next().unwrap();
        scanned += 1;
        if (&disc % BigInt::from(p)).is_zero() {
            continue; // only unramified primes witness cycle types
        }
        let Ok(shape) = factor_shape_mod_p(f, p) else {
            continue;
        };
        debug_assert!(shape.is_squarefree());
        let ctype = shape.cycle_type();
        if transposition.is_none() && is_transposition_type(&ctype, n) {
            transposition = Some(p);
        }
        if !n_is_prime && n_minus_1.is_none() && ctype == vec![1, n - 1] {
            n_minus_1 = Some(p);
        }
        if n_cycle.is_none() && ctype == vec![n] {
            n_cycle = Some(p);
        }
        if transposition.is_some() && (n_is_prime || n_minus_1.is_some()) {
            return SnOutcome::Certified(SnCertificate {
                n,
                transitivity,
                transposition_prime: transposition.unwrap(),
                n_minus_1_cycle_prime: n_minus_1,
                n_cycle_prime: n_cycle,
                disc,
                disc_nonsquare: true,
            });
        }
    }
    SnOutcome::Undecided
}

fn is_transposition_type(ctype: &[usize], n: usize) -> bool {
    ctype.len() == n - 1 && ctype.iter().filter(|&&d| d == 2).count() == 1
}

/// Exact Galois group labels for squarefree polynomials of degree <= 4.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupLabel {
    C1,
    C2,
    C3,
    S3,
    C4,
    V4,
    D4,
    A4,
    S4,
    /// Reducible: the group does not act transitively on the roots.
    Intransitive,
}

impl GroupLabel {
    /// Is this the full symmetric group for the given degree?
    pub fn is_symmetric(self, n: usize) -> bool {
        matches!(
            (n, self),
            (1, GroupLabel::C1) | (2, GroupLabel::C2) | (3, GroupLabel::S3) | (4, GroupLabel::S4)
        )
    }
}

/// Brute-force Galois oracle for monic squarefree f of degree <= 4, by
/// rational-root tests, quadratic-factor search, the cubic resolvent and the
/// discriminant-square test.
pub fn brute_galois_small(f: &IntPoly) -> GroupLabel {
    assert!(f.is_monic(), "oracle assumes monic input");
    assert!(f.is_squarefree(), "oracle assumes squarefree input");
    let n = f.deg();
    assert!(n <= 4, "oracle supports degree <= 4");
    match n {
        0 | 1 => GroupLabel::C1,
        2 => {
            if is_perfect_square(&f.discriminant().unwrap()) {
                GroupLabel::Intransitive
            } else {
                GroupLabel::C2
            }
        }
        3 => {
            if !integer_roots(f).is_empty() {
                return GroupLabel::Intransitive;
            }
            if is_perfect_square(&f.discriminant().unwrap()) {
                GroupLabel::C3
            } else {
                GroupLabel::S3
            }
        }
        _ => brute_quartic(f),
    }
}

fn brute_quartic(f: &IntPoly) -> GroupLabel {
    if !integer_roots(f).is_empty() || has_quadratic_factor(f) {
        return GroupLabel::Intransitive;
    }
    // f = x^4 + b x^3 + c x^2 + d x + e
    let b = f.coeff(3);
    let c = f.coeff(2);
    let d = f.coeff(1);
    let e = f.coeff(0);
    // resolvent cubic y^3 - c y^2 + (bd - 4e) y - (b^2 e + d^2 - 4ce);
    // it shares its discriminant with f, so it is squarefree here
    let resolvent = IntPoly::new(vec![
        -(&b * &b * &e + &d * &d - BigInt::from(4) * &c * &e),
        &b * &d - BigInt::from(4) * &e,
        -c.clone(),
        BigInt::one(),
    ]);
    let res_roots = integer_roots(&resolvent);
    let disc = f.discriminant().unwrap();
    match res_roots.len() {
        0 => {
            if is_perfect_square(&disc) {
                GroupLabel::A4
            } else {
                GroupLabel::S4
            }
        }
        3 => GroupLabel::V4,
        1 => {
            // Kappe-Warren: with the unique rational resolvent root r, the
            // group is C4 iff x^2 - r x + e and x^2 + b x + (c - r) both
            // split over Q(sqrt(disc)).
            let r = &res_roots[0];
            let d1 = r * r - BigInt::from(4) * &e;
            let d2 = &b * &b - BigInt::from(4) * (&c - r);
            let splits = |q: &BigInt| -> bool {
                q.is_zero() || is_perfect_square(q) || is_perfect_square(&(q * &disc))
            };
            if splits(&d1) && splits(&d2) {
                GroupLabel::C4
            } else {
                GroupLabel::D4
            }
        }
        _ => unreachable!("squarefree cubic resolvent has 0, 1 or 3 rational roots"),
    }
}

/// Any monic quartic factorization into two monic integer quadratics.
fn has_quadratic_factor(f: &IntPoly) -> bool {
    let b3 = f.coeff(3);
    let b2 = f.coeff(2);
    let b1 = f.coeff(1);
    let b0 = f.coeff(0);
    let Some(divs) = all_divisors(&b0) else {
        return false;
    };
    let mut candidates = Vec::new();
    for d in &divs {
        candidates.push(d.clone());
        candidates.push(-d.clone());
    }
    // f = (x^2 + a x + p)(x^2 + c x + q): pq = b0, a + c = b3,
    // p + q + ac = b2, aq + cp = b1
    for p in &candidates {
        if p.is_zero() {
            continue;
        }
        let (q, rem) = num_integer::Integer::div_rem(&b0, p);
        if !rem.is_zero() {
            continue;
        }
        let diff = &q - p;
        if diff.is_zero() {
            // p = q: need b1 = b3 p, then a, c are integer roots of
            // z^2 - b3 z + (b2 - 2p)
            if &b3 * p != b1 {
                continue;
            }
            let z = IntPoly::new(vec![&b2 - BigInt::from(2) * p, -b3.clone(), BigInt::one()]);
            if !integer_roots(&z).is_empty() {
                return true;
            }
        } else {
            // a (q - p) = b1 - b3 p
            let num = &b1 - &b3 * p;
            let (a, rem) = num_integer::Integer::div_rem(&num, &diff);
            if !rem.is_zero() {
                continue;
            }
            let c = &b3 - &a;
            if (p + &q) + &a * &c == b2 {
                return true;
            }
        }
    }
    false
}
