//! Dedekind's criterion for p-maximality of the equation order Z[x]/(f).

use num_bigint::BigInt;
use num_traits::Zero;

use super::modp::{factor_mod_p, PolyZp};
use super::IntPoly;
use crate::error::PolyError;

/// True iff Z[x]/(f) is maximal at p (f monic irreducible).
///
/// When p^2 does not divide disc(f) the order is maximal at p without
/// running the criterion.
pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<bool, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let disc = f.discriminant()?;
    let p_big = BigInt::from(p);
    let p_sq = &p_big * &p_big;
    if !(&disc % &p_sq).is_zero() {
        return Ok(true);
    }

    // Dedekind: factor f mod p as prod g_i^{e_i}; with monic lifts
    //   G = prod g_i,  H = prod g_i^(e_i - 1),  T = (G*H - f)/p,
    // the order is p-maximal iff gcd(T, G, H) = 1 in F_p[x].
    let factors = factor_mod_p(f, p)?;
    let mut g_bar = PolyZp::one(p);
    let mut h_bar = PolyZp::one(p);
    for (q, e) in &factors {
        g_bar = g_bar.mul(q);
        for _ in 1..*e {
            h_bar = h_bar.mul(q);
        }
    }
    let g_lift = g_bar.lift();
    let h_lift = h_bar.lift();
    let prod = g_lift.mul(&h_lift);
    let diff = prod.sub(f);
    let t = diff.div_scalar_exact(&p_big);
    let t_bar = PolyZp::from_int_poly(&t, p);
    let mut d = g_bar.gcd(&h_bar);
    d = d.gcd(&t_bar);
    Ok(d.is_zero() || d.deg() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_shortcut() {
        // disc(x^3 - x - 1) = -23: squarefree at every p
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        assert!(dedekind_p_maximal(&f, 2).unwrap());
        assert!(dedekind_p_maximal(&f, 23).unwrap());
    }

    #[test]
    fn golden_ratio_index_two() {
        // x^2 - 5: maximal order is generated by (1+sqrt 5)/2, index 2
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        assert!(!dedekind_p_maximal(&f, 2).unwrap());
    }

    #[test]
    fn sqrt_two_maximal() {
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        assert!(dedekind_p_maximal(&f, 2).unwrap());
    }

    #[test]
    fn known_non_maximal_cubic() {
        // Dedekind's example x^3 - x^2 - 2x - 8: disc = -2012 = -4*503,
        // index 2 at the inessential divisor p = 2.
        let f = IntPoly::from_i64(&[-8, -2, -1, 1]);
        assert!(!dedekind_p_maximal(&f, 2).unwrap());
    }

    #[test]
    fn requires_monic() {
        let f = IntPoly::from_i64(&[1, 0, 2]);
        assert_eq!(dedekind_p_maximal(&f, 3), Err(PolyError::NotMonic));
    }

    #[test]
    fn eisenstein_is_maximal() {
        // x^3 - 2 at p = 2: Eisenstein, totally ramified, maximal
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        assert!(dedekind_p_maximal(&f, 2).unwrap());
        // and at p = 3 (disc = -108 = -2^2 3^3): Eisenstein shifted: x = y+...
        // direct criterion call
        assert!(dedekind_p_maximal(&f, 3).unwrap());
    }
}
