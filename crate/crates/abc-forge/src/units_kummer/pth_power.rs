//! Exact p-th power testing in the ring of integers: interval screens
//! (norm, conjugate signs), numeric root reconstruction through the real
//! embeddings, and exact verification of every candidate.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::{AlgebraicInt, NumberField};
use crate::exact_poly::integers::exact_nth_root;
use crate::interval::RatInterval;
use crate::real_embeddings::EmbeddingData;

/// Why an element is certified not to be a p-th power.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NoReason {
    /// |N(beta)| is not a perfect p-th power.
    NormScreen,
    /// p is even and some real conjugate of beta is negative.
    NegativeConjugate,
    /// Every candidate root was reconstructed and failed exact verification.
    ReconstructionFailed,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PthPowerOutcome {
    Power { root: AlgebraicInt },
    No { reason: NoReason },
}

impl PthPowerOutcome {
    pub fn is_power(&self) -> bool {
        matches!(self, PthPowerOutcome::Power { .. })
    }
}

/// Internal: the current precision cannot separate a decision.
pub(super) struct NeedPrecision;

/// One attempt at fixed precision. The caller owns the refinement ladder.
pub(super) fn is_pth_power_at(
    field: &NumberField,
    emb: &EmbeddingData,
    beta: &AlgebraicInt,
    p: u32,
    bits: u32,
) -> Result<PthPowerOutcome, NeedPrecision> {
    assert!(p >= 2);
    assert!(!beta.is_zero(), "p-th power test requires nonzero input");
    assert!(
        beta.has_integer_coords(),
        "pipeline elements live in the certified order Z[xi]"
    );
    let n = field.n();

    // screen (i): |N(beta)| must be a perfect p-th power
    let norm = beta.norm(field);
    debug_assert!(norm.denom().is_one());
    let norm_abs = norm.numer().abs();
    if exact_nth_root(&norm_abs, p).is_none() {
        return Ok(PthPowerOutcome::No {
            reason: NoReason::NormScreen,
        });
    }

    // conjugate enclosures, aligned with the sorted boxes
    let conj: Vec<RatInterval> = emb
        .boxes
        .iter()
        .map(|bx| beta.conjugate_interval(bx))
        .collect();
    let mut signs = Vec::with_capacity(n);
    for iv in &conj {
        match iv.sign() {
            Some(0) | None => return Err(NeedPrecision), // beta != 0 has nonzero conjugates
            Some(s) => signs.push(s),
        }
    }

    // screen (ii): even p forces totally positive
    if p % 2 == 0 && signs.iter().any(|&s| s < 0) {
        return Ok(PthPowerOutcome::No {
            reason: NoReason::NegativeConjugate,
        });
    }

    // certified |conjugate|^(1/p)
    let root_abs: Vec<RatInterval> = conj
        .iter()
        .map(|iv| iv.abs().nth_root_pos(p, bits))
        .collect();

    let nodes: Vec<RatInterval> = emb.boxes.iter().map(|b| b.interval()).collect();
    let patterns: Vec<Vec<i32>> = if p % 2 == 1 {
        // odd real roots carry the sign of the argument
        vec![signs.clone()]
    } else {
        // free sign choices; fixing the first kills the global -1
        let mut pats = Vec::with_capacity(1 << (n - 1));
        for mask in 0..(1u32 << (n - 1)) {
            let mut pat = vec![1i32; n];
            for (i, s) in pat.iter_mut().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    *s = -1;
                }
            }
            pats.push(pat);
        }
        pats
    };

    for pat in &patterns {
        let values: Vec<RatInterval> = root_abs
            .iter()
            .zip(pat.iter())
            .map(|(r, &s)| if s < 0 { r.neg() } else { r.clone() })
            .collect();
        let Some(coeffs) = lagrange_coeffs(&nodes, &values) else {
            return Err(NeedPrecision);
        };
        // each coordinate of a root in Z[xi] is an integer; certify either
        // a unique candidate or the absence of any integer in the enclosure
        let mut candidate = Vec::with_capacity(n);
        let mut rejected = false;
        for c in &coeffs {
            if c.width() >= BigRational::one() {
                return Err(NeedPrecision);
            }
            let lo_int = c.lo.ceil().to_integer();
            if !c.contains(&BigRational::from_integer(lo_int.clone())) {
                rejected = true;
                break;
            }
            candidate.push(lo_int);
        }
        if rejected {
            continue;
        }
        let delta = AlgebraicInt::from_int_coords(field, &candidate);
        if delta.pow(field, p) == *beta {
            return Ok(PthPowerOutcome::Power { root: delta });
        }
    }
    Ok(PthPowerOutcome::No {
        reason: NoReason::ReconstructionFailed,
    })
}

/// Interval coefficients of the degree < n interpolant through
/// (nodes[i], values[i]); None when a node-difference interval straddles 0.
fn lagrange_coeffs(nodes: &[RatInterval], values: &[RatInterval]) -> Option<Vec<RatInterval>> {
    let n = nodes.len();
    let mut total = vec![RatInterval::zero(); n];
    for i in 0..n {
        // numerator polynomial prod_{j != i} (x - nodes[j])
        let mut num = vec![RatInterval::point(BigRational::one())];
        for (j, node) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            num = poly_mul_linear(&num, node);
        }
        // denominator prod_{j != i} (nodes[i] - nodes[j])
        let mut den = RatInterval::point(BigRational::one());
        for (j, node) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            let d = nodes[i].sub(node);
            if d.contains_zero() {
                return None;
            }
            den = den.mul(&d);
        }
        let scale = values[i].div(&den);
        for (k, c) in num.iter().enumerate() {
            total[k] = total[k].add(&c.mul(&scale));
        }
    }
    Some(total)
}

/// Multiply an interval-coefficient polynomial by (x - node).
fn poly_mul_linear(poly: &[RatInterval], node: &RatInterval) -> Vec<RatInterval> {
    let mut out = vec![RatInterval::zero(); poly.len() + 1];
    for (k, c) in poly.iter().enumerate() {
        out[k + 1] = out[k + 1].add(c);
        out[k] = out[k].sub(&c.mul(node));
    }
    out
}
