//! From polynomial discriminant to field discriminant.
//!
//! The scan only ever needs the case where the equation order is already
//! maximal (index 1), so maximality failure is a conservative skip for
//! degree >= 3; quadratic fields get the classical closed form since no
//! order construction is needed there.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dedekind::dedekind_p_maximal;
use super::integers::{factor_bounded, Factorization};
use super::IntPoly;
use crate::error::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial-division bound for disc(f).
    pub trial_bound: u64,
    /// Bounded-effort split attempts for the large cofactor.
    pub rho_budget: u32,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_bound: 1_000_000,
            rho_budget: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// disc(f) factorization exceeded the configured budget.
    FactorBudget,
    /// The order is not p-maximal at the given prime (degree >= 3 policy).
    NotMaximal { p: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDisc {
    Value(BigInt),
    Skipped(SkipReason),
}

impl FieldDisc {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            FieldDisc::Value(v) => Some(v),
            FieldDisc::Skipped(_) => None,
        }
    }
}

/// Discriminant of the number field defined by monic irreducible `f`.
///
/// Returns `Value(disc f)` when the equation order is p-maximal at every
/// prime whose square divides disc(f) (then the index is 1). For quadratic
/// f the exact classical value is returned even when the order is not
/// maximal; for degree >= 3 a maximality failure is a conservative skip.
pub fn field_discriminant(f: &IntPoly, budget: FactorBudget) -> Result<FieldDisc, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(PolyError::NotSquarefree);
    }
    let factors = match factor_bounded(&disc, budget.trial_bound, budget.rho_budget) {
        Factorization::Complete(fs) => fs,
        Factorization::Incomplete { .. } => return Ok(FieldDisc::Skipped(SkipReason::FactorBudget)),
    };

    if f.deg() == 2 {
        return Ok(FieldDisc::Value(quadratic_field_disc(&disc, &factors)));
    }

    for (p, e) in &factors {
        if *e < 2 {
            continue;
        }
        let p_u64 = match u64::try_from(p.clone()) {
            Ok(v) => v,
            Err(_) => return Ok(FieldDisc::Skipped(SkipReason::FactorBudget)),
        };
        if !dedekind_p_maximal(f, p_u64)? {
            return Ok(FieldDisc::Skipped(SkipReason::NotMaximal { p: p.clone() }));
        }
    }
    Ok(FieldDisc::Value(disc))
}

/// disc(f) = m^2 d0 with d0 squarefree; the field discriminant is d0 when
/// d0 = 1 mod 4 and 4 d0 otherwise.
fn quadratic_field_disc(disc: &BigInt, factors: &[(BigInt, u32)]) -> BigInt {
    let mut d0 = BigInt::one();
    for (p, e) in factors {
        if e % 2 == 1 {
            d0 *= p;
        }
    }
    if disc.is_negative() {
        d0 = -d0;
    }
    let four = BigInt::from(4);
    let rem = ((&d0 % &four) + &four) % &four;
    if rem == BigInt::one() {
        d0
    } else {
        d0 * four
    }
}
