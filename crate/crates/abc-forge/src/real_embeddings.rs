//! Certified real-root isolation and refinement via Sturm sequences, and the
//! root-layout verification that realizes the real embeddings of a
//! specialized field.
//!
//! All interval endpoints are dyadic rationals, so refinement is
//! deterministic and restartable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abc_family::{AbcParams, TauCandidate};
use crate::error::{PolyError, RootError};
use crate::exact_poly::IntPoly;
use crate::interval::RatInterval;

/// Which target the isolated root tracks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootLabel {
    /// Tracks the base point a_{j+1} (0-indexed j).
    Base(usize),
    /// Tracks the specialized point a(tau).
    Specialized,
}

/// Isolating interval for one simple real root: the polynomial changes sign
/// exactly once on [lo, hi], and distinct boxes are disjoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootBox {
    pub lo: BigRational,
    pub hi: BigRational,
    pub label: Option<RootLabel>,
}

impl RootBox {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

/// Sturm chain with content-normalized, sign-coherent remainders.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Self {
        let p0 = f.primitive_part();
        let p1 = f.derivative().primitive_part();
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].deg() == 0 {
                break;
            }
            let r = sturm_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.primitive_part());
        }
        Self { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        let num = x.numer().clone();
        let den = x.denom().clone();
        Self::variations(self.chain.iter().map(|p| p.sign_at_rational(&num, &den)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            if p.is_zero() {
                0
            } else {
                let s = if p.leading().is_negative() { -1 } else { 1 };
                if p.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            if p.is_zero() {
                0
            } else if p.leading().is_negative() {
                -1
            } else {
                1
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Pseudo-remainder scaled to a positive multiple of the rational remainder,
/// so interleaved sign sequences stay Sturm-coherent.
fn sturm_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.deg();
    let lb = b.leading();
    let mut r = a.clone();
    let mut negative_steps = 0usize;
    while !r.is_zero() && r.deg() >= db {
        let dr = r.deg();
        let lr = r.leading();
        r = r.mul_scalar(&lb).sub(&b.shift_up(dr - db).mul_scalar(&lr));
        if lb.is_negative() {
            negative_steps += 1;
        }
    }
    let flipped = if negative_steps % 2 == 1 { r.neg() } else { r };
    flipped.neg()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Cauchy-style root bound: every real root lies strictly inside (-B, B).
fn root_bound(f: &IntPoly) -> BigInt {
    let lead = f.leading().abs();
    let max_c = f
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // B = 1 + ceil(max|c_i| / |lead|)
    let q = num_integer::Integer::div_ceil(&max_c, &lead);
    q + BigInt::from(2)
}

/// Disjoint isolating intervals for all real roots of a squarefree
/// polynomial, in increasing order.
pub fn isolate_real_roots(f: &IntPoly) -> Result<Vec<RootBox>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    if !f.is_squarefree() {
        return Err(PolyError::NotSquarefree);
    }
    let chain = SturmChain::new(f);
    let b = root_bound(f);
    let lo = BigRational::from_integer(-b.clone());
    let hi = BigRational::from_integer(b);
    debug_assert!(!f.eval_rational(&lo).is_zero());
    debug_assert!(!f.eval_rational(&hi).is_zero());
    let mut out = Vec::new();
    isolate_rec(f, &chain, &lo, &hi, &mut out);
    Ok(out)
}

fn isolate_rec(
    f: &IntPoly,
    chain: &SturmChain,
    lo: &BigRational,
    hi: &BigRational,
    out: &mut Vec<RootBox>,
) {
    // invariant: f(lo) != 0 and f(hi) != 0, so (lo, hi] counts open-interval
    // roots exactly
    let count = chain.count_in(lo, hi);
    if count == 0 {
        return;
    }
    if count == 1 {
        debug_assert!(
            f.eval_rational(lo).is_negative() != f.eval_rational(hi).is_negative(),
            "single simple root must show a sign change"
        );
        out.push(RootBox {
            lo: lo.clone(),
            hi: hi.clone(),
            label: None,
        });
        return;
    }
    let split = split_point(f, lo, hi);
    isolate_rec(f, chain, lo, &split, out);
    isolate_rec(f, chain, &split, hi, out);
}

/// A dyadic point strictly inside (lo, hi) where f does not vanish.
fn split_point(f: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = rat(2);
    let mid = (lo + hi) / &two;
    if !f.eval_rational(&mid).is_zero() {
        return mid;
    }
    // nudge by width/2^k until off the root (at most deg f roots exist)
    let width = hi - lo;
    let mut k = 2u32;
    loop {
        let off = &width / BigRational::from_integer(BigInt::one() << k);
        let cand = &mid + &off;
        if &cand < hi && !f.eval_rational(&cand).is_zero() {
            return cand;
        }
        let cand = &mid - &off;
        if &cand > lo && !f.eval_rational(&cand).is_zero() {
            return cand;
        }
        k += 1;
        assert!(k < 4096, "could not find a non-root split point");
    }
}

/// Shrink an isolating box to width <= eps. Bisection with an opportunistic
/// guarded Newton cut; the sign-change invariant is maintained throughout.
pub fn refine_root(f: &IntPoly, bx: &RootBox, eps: &BigRational) -> RootBox {
    assert!(eps.is_positive());
    let mut lo = bx.lo.clone();
    let mut hi = bx.hi.clone();
    let two = rat(2);
    let s_lo = f.eval_rational(&lo);
    assert!(
        !s_lo.is_zero() && s_lo.is_negative() != f.eval_rational(&hi).is_negative(),
        "box must isolate a simple root with a sign change"
    );
    let lo_negative = s_lo.is_negative();
    let fp = f.derivative();
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / &two;
        let fm = f.eval_rational(&mid);
        if fm.is_zero() {
            // exact dyadic root: clamp a symmetric box inside the old one
            let gap = (&mid - &lo).min(&hi - &mid).min(eps / &two);
            let half = &gap / &two;
            return RootBox {
                lo: &mid - &half,
                hi: &mid + &half,
                label: bx.label,
            };
        }
        if fm.is_negative() == lo_negative {
            lo = mid.clone();
        } else {
            hi = mid.clone();
        }
        // guarded Newton cut from the midpoint, rounded to a dyadic point
        let d = fp.eval_rational(&mid);
        if !d.is_zero() {
            let newton = &mid - &(&fm / &d);
            let width = &hi - &lo;
            if newton > lo && newton < hi {
                let bits = dyadic_bits_for(&width) + 8;
                let cut = round_dyadic(&newton, bits);
                if cut > lo && cut < hi {
                    let fc = f.eval_rational(&cut);
                    if fc.is_zero() {
                        let gap = (&cut - &lo).min(&hi - &cut).min(eps / &two);
                        let half = &gap / &two;
                        return RootBox {
                            lo: &cut - &half,
                            hi: &cut + &half,
                            label: bx.label,
                        };
                    }
                    if fc.is_negative() == lo_negative {
                        lo = cut;
                    } else {
                        hi = cut;
                    }
                }
            }
        }
    }
    RootBox {
        lo,
        hi,
        label: bx.label,
    }
}

fn dyadic_bits_for(width: &BigRational) -> u32 {
    // smallest k with 2^-k <= width gives the current resolution scale
    let inv = width.recip();
    let approx = inv.to_integer();
    (approx.bits() as u32).max(1)
}

fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

/// The n real roots of a specialization, labeled against the targets
/// a_1..a_{n-1}, a(tau), refined to the working precision.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    /// Boxes in increasing order of the root.
    pub boxes: Vec<RootBox>,
    /// boxes[base_index[j]] tracks base point a_{j+1}.
    pub base_index: Vec<usize>,
    /// boxes[xi_index] tracks a(tau); its root is the distinguished root.
    pub xi_index: usize,
    pub precision_bits: u32,
}

impl EmbeddingData {
    /// Isolate, label by sorted order against the sorted targets, and refine
    /// to 2^-bits width.
    pub fn build(params: &AbcParams, cand: &TauCandidate, bits: u32) -> Result<Self, RootError> {
        let n = params.n();
        let boxes = isolate_real_roots(&cand.f_tau)?;
        if boxes.len() != n {
            return Err(RootError::NotTotallyReal {
                found: boxes.len(),
                degree: n,
            });
        }
        // sorted targets, remembering which is which
        let mut targets: Vec<(BigRational, RootLabel)> = params
            .base_points()
            .iter()
            .enumerate()
            .map(|(j, &a)| (rat(a), RootLabel::Base(j)))
            .collect();
        targets.push((
            BigRational::from_integer(cand.a_tau.clone()),
            RootLabel::Specialized,
        ));
        targets.sort_by(|a, b| a.0.cmp(&b.0));

        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let mut refined: Vec<RootBox> = boxes
            .iter()
            .map(|b| refine_root(&cand.f_tau, b, &eps))
            .collect();
        for (bx, (_, label)) in refined.iter_mut().zip(targets.iter()) {
            bx.label = Some(*label);
        }
        let mut base_index = vec![usize::MAX; n - 1];
        let mut xi_index = usize::MAX;
        for (i, bx) in refined.iter().enumerate() {
            match bx.label.unwrap() {
                RootLabel::Base(j) => base_index[j] = i,
                RootLabel::Specialized => xi_index = i,
            }
        }
        debug_assert!(xi_index != usize::MAX);
        debug_assert!(base_index.iter().all(|&i| i != usize::MAX));
        Ok(Self {
            boxes: refined,
            base_index,
            xi_index,
            precision_bits: bits,
        })
    }

    /// Re-refine every box to a higher precision.
    pub fn refine_to(&self, f: &IntPoly, bits: u32) -> Self {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        Self {
            boxes: self
                .boxes
                .iter()
                .map(|b| refine_root(f, b, &eps))
                .collect(),
            base_index: self.base_index.clone(),
            xi_index: self.xi_index.clone(),
            precision_bits: bits,
        }
    }

    /// Box tracking base point a_{j+1}.
    pub fn base_box(&self, j: usize) -> &RootBox {
        &self.boxes[self.base_index[j]]
    }

    /// Box of the distinguished root near a(tau).
    pub fn xi_box(&self) -> &RootBox {
        &self.boxes[self.xi_index]
    }

    /// Interval product of all root boxes.
    pub fn product_of_roots(&self) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::one());
        for b in &self.boxes {
            acc = acc.mul(&b.interval());
        }
        acc
    }
}

/// Scaled root deviations against the layout bounds.
#[derive(Clone, Debug)]
pub struct LayoutReport {
    /// Upper bounds on |xi_j - a_j| * |a| for each base point.
    pub base_scaled: Vec<BigRational>,
    /// Upper bound on |xi - a(tau)| * |a|^(n-1).
    pub xi_scaled: BigRational,
    /// The constant the deviations were checked against.
    pub c_bound: BigRational,
    pub pass: bool,
}

/// Check the root-localization bounds: |xi_k - a_k| |a| <= C and
/// |xi - a| |a|^(n-1) <= C, with certified interval arithmetic.
pub fn verify_root_layout(
    params: &AbcParams,
    cand: &TauCandidate,
    emb: &EmbeddingData,
    c_bound: &BigRational,
    min_abs_a: i64,
) -> Result<LayoutReport, RootError> {
    let a_abs = cand.a_tau.abs();
    if a_abs < BigInt::from(min_abs_a) {
        return Err(RootError::BelowFloor {
            a_abs: a_abs.to_string(),
            floor: min_abs_a,
        });
    }
    let n = params.n();
    let a_rat = BigRational::from_integer(a_abs);
    let mut pass = true;
    let mut base_scaled = Vec::with_capacity(n - 1);
    for (j, &aj) in params.base_points().iter().enumerate() {
        let bx = emb.base_box(j);
        let dev = bx
            .interval()
            .sub(&RatInterval::point(rat(aj)))
            .abs();
        let scaled = &dev.hi * &a_rat;
        if &scaled > c_bound {
            pass = false;
        }
        base_scaled.push(scaled);
    }
    let xi_dev = emb
        .xi_box()
        .interval()
        .sub(&RatInterval::point(BigRational::from_integer(
            cand.a_tau.clone(),
        )))
        .abs();
    let mut scale = BigRational::one();
    for _ in 0..n - 1 {
        scale *= &a_rat;
    }
    let xi_scaled = &xi_dev.hi * &scale;
    if &xi_scaled > c_bound {
        pass = false;
    }
    Ok(LayoutReport {
        base_scaled,
        xi_scaled,
        c_bound: c_bound.clone(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn rr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn isolate_quadratic() {
        let boxes = isolate_real_roots(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].contains(&rat(-1)));
        assert!(boxes[1].contains(&rat(1)));
    }

    #[test]
    fn isolate_no_real_roots() {
        assert!(isolate_real_roots(&poly(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolate_rejects_square_factors() {
        let sq = poly(&[1, 1]).mul(&poly(&[1, 1]));
        assert_eq!(isolate_real_roots(&sq), Err(PolyError::NotSquarefree));
    }

    #[test]
    fn isolate_tau5_field() {
        // x^3 + 24x^2 - x - 25: roots near 1.02, -1.02, -24.0
        let f = poly(&[-25, -1, 24, 1]);
        let eps = rr(1, 1 << 20);
        let boxes: Vec<RootBox> = isolate_real_roots(&f)
            .unwrap()
            .iter()
            .map(|b| refine_root(&f, b, &eps))
            .collect();
        assert_eq!(boxes.len(), 3);
        // sorted ascending: near -24, near -1, near 1
        assert!(boxes[0].contains(&rr(-24_001, 1000)) || boxes[0].mid() < rat(-23));
        assert!(boxes[1].lo > rat(-2) && boxes[1].hi < rat(-1));
        assert!(boxes[2].lo > rat(1) && boxes[2].hi < rr(105, 100));
    }

    #[test]
    fn sturm_counts_constructed_roots() {
        let mut rng = crate::rng::SplitMix64::new(0x5742);
        for _ in 0..50 {
            let k = 1 + rng.below(5) as usize;
            let mut roots: Vec<i64> = Vec::new();
            while roots.len() < k {
                let r = rng.range_i64(-40, 40);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            let f = IntPoly::from_roots(&roots.iter().map(|&r| BigInt::from(r)).collect::<Vec<_>>());
            let boxes = isolate_real_roots(&f).unwrap();
            assert_eq!(boxes.len(), k);
            roots.sort();
            for (bx, r) in boxes.iter().zip(roots.iter()) {
                assert!(bx.contains(&rat(*r)), "box {:?} root {}", bx, r);
            }
        }
    }

    #[test]
    fn refine_reaches_eps_and_keeps_sign_change() {
        let f = poly(&[-2, 0, 1]); // sqrt 2
        let bx = isolate_real_roots(&f).unwrap()[1].clone();
        let eps = rr(1, 1i64 << 40);
        let tight = refine_root(&f, &bx, &eps);
        assert!(tight.width() <= eps);
        assert!(
            f.eval_rational(&tight.lo).is_negative() != f.eval_rational(&tight.hi).is_negative()
        );
        // sqrt(2) inside
        assert!(tight.lo < rr(141_421_357, 100_000_000));
        assert!(tight.hi > rr(141_421_356, 100_000_000));
    }

    #[test]
    fn refine_is_idempotent_when_small() {
        let f = poly(&[-2, 0, 1]);
        let bx = isolate_real_roots(&f).unwrap()[1].clone();
        let eps = rr(1, 1 << 10);
        let tight = refine_root(&f, &bx, &eps);
        let again = refine_root(&f, &tight, &rr(1, 2));
        assert_eq!(again.lo, tight.lo);
        assert_eq!(again.hi, tight.hi);
    }

    #[test]
    fn refine_handles_exact_dyadic_roots() {
        // root exactly at 1/2 (non-monic is fine here)
        let f = poly(&[-1, 2]).mul(&poly(&[-3, 1]));
        let boxes = isolate_real_roots(&f).unwrap();
        let eps = rr(1, 1 << 24);
        for b in &boxes {
            let t = refine_root(&f, b, &eps);
            assert!(t.width() <= eps);
            assert!(
                f.eval_rational(&t.lo).is_negative() != f.eval_rational(&t.hi).is_negative()
            );
        }
    }

    #[test]
    fn embeddings_and_layout_tau5() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 5).unwrap();
        let emb = EmbeddingData::build(&params, &cand, 64).unwrap();
        assert_eq!(emb.boxes.len(), 3);
        // labels: a_1 = 1 tracked by the largest root, a_2 = -1 by the
        // middle, a(tau) = -24 by the smallest
        assert_eq!(emb.base_box(0).label, Some(RootLabel::Base(0)));
        assert!(emb.base_box(0).contains(&rr(102, 100)) || emb.base_box(0).lo > rat(1));
        assert!(emb.xi_box().hi < rat(-23));
        let report =
            verify_root_layout(&params, &cand, &emb, &rat(10), 3).unwrap();
        assert!(report.pass, "{:?}", report);
        // the pinned bounds: |xi_1 - 1| * 24 <= 10 and |xi + 24| * 576 <= 10
        assert!(report.base_scaled[0] <= rat(10));
        assert!(report.xi_scaled <= rat(10));
    }

    #[test]
    fn product_of_roots_contains_constant_term_identity() {
        // prod roots = (-1)^n * f(0); for the tau=5 field that is 25
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 5).unwrap();
        let emb = EmbeddingData::build(&params, &cand, 80).unwrap();
        let prod = emb.product_of_roots();
        assert!(prod.contains(&rat(25)), "{:?}", prod);
    }

    #[test]
    fn complex_roots_fail_totally_real() {
        // tau = 2 with params (1,2): a(tau) = ... may not exist; build a
        // synthetic candidate with a complex pair instead
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let fake = TauCandidate {
            tau: 1,
            a_tau: BigInt::zero(),
            f_tau: poly(&[-1, -1, 0, 1]), // x^3 - x - 1: one real root
            duplicate_field: false,
        };
        match EmbeddingData::build(&params, &fake, 32) {
            Err(RootError::NotTotallyReal { found: 1, degree: 3 }) => {}
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn below_floor_is_a_precondition_error() {
        let params = AbcParams::new(3, 2, vec![1, -1]);
        let cand = TauCandidate::new(&params, 2).unwrap(); // a = -3
        let emb = EmbeddingData::build(&params, &cand, 64).unwrap();
        match verify_root_layout(&params, &cand, &emb, &rat(10), 100) {
            Err(RootError::BelowFloor { floor: 100, .. }) => {}
            other => panic!("{:?}", other),
        }
    }
}
