//! Integral ideals of the (certified maximal) equation order Z[xi],
//! represented by Hermite normal form bases in the power basis.

use num_bigint::BigInt;
use num_traits::Signed;

use super::linalg::IMat;
use crate::units_kummer::{AlgebraicInt, NumberField};

/// Nonzero integral ideal as the HNF basis of its lattice in Z[xi].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    hnf: IMat,
}

impl Ideal {
    /// Ideal generated by the given elements (must be nonzero and have
    /// integer coordinates).
    pub fn from_generators(field: &NumberField, gens: &[AlgebraicInt]) -> Self {
        let n = field.n();
        let xi = AlgebraicInt::xi(field);
        let mut rows = Vec::with_capacity(gens.len() * n);
        for g in gens {
            let mut cur = g.clone();
            for _ in 0..n {
                rows.push(cur.int_coords().expect("ideal generators live in Z[xi]"));
                cur = cur.mul(field, &xi);
            }
        }
        let h = IMat::from_rows(rows).hnf();
        assert_eq!(h.rows, n, "nonzero ideal must have full rank");
        Self { hnf: h }
    }

    pub fn principal(field: &NumberField, g: &AlgebraicInt) -> Self {
        assert!(!g.is_zero());
        Self::from_generators(field, std::slice::from_ref(g))
    }

    pub fn two_generated(field: &NumberField, a: &AlgebraicInt, b: &AlgebraicInt) -> Self {
        Self::from_generators(field, &[a.clone(), b.clone()])
    }

    pub fn whole_ring(field: &NumberField) -> Self {
        Self {
            hnf: IMat::identity(field.n()),
        }
    }

    pub fn basis(&self) -> &IMat {
        &self.hnf
    }

    /// Basis rows as field elements.
    pub fn basis_elements(&self, field: &NumberField) -> Vec<AlgebraicInt> {
        (0..self.hnf.rows)
            .map(|i| AlgebraicInt::from_int_coords(field, self.hnf.row(i)))
            .collect()
    }

    /// Absolute norm: index of the lattice in Z[xi].
    pub fn norm(&self) -> BigInt {
        self.hnf.det_triangular().abs()
    }

    pub fn contains_coords(&self, coords: &[BigInt]) -> bool {
        self.hnf.solve_left_triangular(coords).is_some()
    }

    pub fn contains(&self, elem: &AlgebraicInt) -> bool {
        match elem.int_coords() {
            Some(c) => self.contains_coords(&c),
            None => false,
        }
    }

    pub fn mul(&self, field: &NumberField, other: &Ideal) -> Ideal {
        let a = self.basis_elements(field);
        let b = other.basis_elements(field);
        let mut products = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                products.push(x.mul(field, y));
            }
        }
        Ideal::from_generators(field, &products)
    }

    pub fn pow(&self, field: &NumberField, e: u32) -> Ideal {
        let mut acc = Ideal::whole_ring(field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            e >>= 1;
        }
        acc
    }

    /// Exact valuation of the element at this (prime) ideal: the largest m
    /// with elem in self^m.
    pub fn valuation_of(&self, field: &NumberField, elem: &AlgebraicInt) -> u32 {
        assert!(!elem.is_zero());
        let mut m = 0u32;
        let mut power = Ideal::whole_ring(field);
        loop {
            power = power.mul(field, self);
            if power.contains(elem) {
                m += 1;
            } else {
                return m;
            }
            assert!(m < 10_000, "runaway valuation");
        }
    }

    /// Valuation of an ideal at this (prime) ideal: the largest m with
    /// other contained in self^m.
    pub fn valuation_of_ideal(&self, field: &NumberField, other: &Ideal) -> u32 {
        let mut m = 0u32;
        let mut power = Ideal::whole_ring(field);
        loop {
            power = power.mul(field, self);
            let contains_all = other
                .basis_elements(field)
                .iter()
                .all(|e| power.contains(e));
            if contains_all {
                m += 1;
            } else {
                return m;
            }
            assert!(m < 10_000, "runaway ideal valuation");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::IntPoly;
    use num_traits::One;

    fn tau5_field() -> NumberField {
        NumberField::new(IntPoly::from_i64(&[-25, -1, 24, 1]))
    }

    #[test]
    fn principal_ideal_norm_is_abs_norm() {
        let k = tau5_field();
        let xi = AlgebraicInt::xi(&k);
        let i = Ideal::principal(&k, &xi);
        assert_eq!(i.norm(), BigInt::from(25));
        let one = Ideal::whole_ring(&k);
        assert_eq!(one.norm(), BigInt::one());
    }

    #[test]
    fn two_generator_ideal_tau_xi() {
        // a = (tau, xi) has norm |tau| in the scan construction
        let k = tau5_field();
        let tau = AlgebraicInt::from_integer(&k, BigInt::from(5));
        let xi = AlgebraicInt::xi(&k);
        let a = Ideal::two_generated(&k, &tau, &xi);
        assert_eq!(a.norm(), BigInt::from(5));
        // a^2 = (xi): the distinguished class squared is principal
        let a2 = a.pow(&k, 2);
        let xi_ideal = Ideal::principal(&k, &xi);
        assert_eq!(a2, xi_ideal);
    }

    #[test]
    fn ideal_product_norms_multiply() {
        let k = tau5_field();
        let a = Ideal::principal(&k, &AlgebraicInt::xi_minus(&k, &BigInt::from(-2)));
        let b = Ideal::principal(&k, &AlgebraicInt::xi(&k));
        let ab = a.mul(&k, &b);
        assert_eq!(ab.norm(), a.norm() * b.norm());
    }

    #[test]
    fn membership_and_valuation() {
        let k = tau5_field();
        let xi = AlgebraicInt::xi(&k);
        let five = AlgebraicInt::from_integer(&k, BigInt::from(5));
        let p = Ideal::two_generated(&k, &five, &xi);
        assert!(p.contains(&xi));
        assert!(p.contains(&five));
        assert!(!p.contains(&AlgebraicInt::one(&k)));
        // v_p(xi) = 2 since (xi) = p^2
        assert_eq!(p.valuation_of(&k, &xi), 2);
        assert_eq!(p.valuation_of(&k, &five), 1);
    }
}
