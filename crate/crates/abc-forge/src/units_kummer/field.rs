//! Arithmetic in K = Q[x]/(f) with exact rational coordinates in the power
//! basis 1, xi, ..., xi^(n-1).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
#[cfg(test)]
use num_traits::Signed;

use crate::exact_poly::IntPoly;
use crate::interval::RatInterval;
use crate::real_embeddings::RootBox;

/// A number field presented by a monic irreducible integer polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumberField {
    poly: IntPoly,
}

impl NumberField {
    pub fn new(poly: IntPoly) -> Self {
        assert!(poly.is_monic(), "defining polynomial must be monic");
        assert!(poly.deg() >= 1);
        Self { poly }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.poly.deg()
    }
}

/// Element of K in the power basis; denominators are bounded by the index
/// certified upstream (1 in the scanning pipeline, where the equation order
/// is proven maximal).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicInt {
    coords: Vec<BigRational>,
}

impl AlgebraicInt {
    pub fn from_coords(field: &NumberField, mut coords: Vec<BigRational>) -> Self {
        assert!(coords.len() <= field.n());
        coords.resize(field.n(), BigRational::zero());
        Self { coords }
    }

    pub fn from_int_coords(field: &NumberField, coords: &[BigInt]) -> Self {
        Self::from_coords(
            field,
            coords
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_integer(field: &NumberField, v: BigInt) -> Self {
        let mut coords = vec![BigRational::zero(); field.n()];
        coords[0] = BigRational::from_integer(v);
        Self { coords }
    }

    pub fn zero(field: &NumberField) -> Self {
        Self {
            coords: vec![BigRational::zero(); field.n()],
        }
    }

    pub fn one(field: &NumberField) -> Self {
        Self::from_integer(field, BigInt::one())
    }

    /// The generator xi.
    pub fn xi(field: &NumberField) -> Self {
        let mut coords = vec![BigRational::zero(); field.n()];
        if field.n() == 1 {
            // xi is rational: reduce x mod the linear polynomial
            coords[0] = BigRational::from_integer(-field.poly().coeff(0));
        } else {
            coords[1] = BigRational::one();
        }
        Self { coords }
    }

    /// xi - a for an integer a.
    pub fn xi_minus(field: &NumberField, a: &BigInt) -> Self {
        let mut e = Self::xi(field);
        e.coords[0] -= BigRational::from_integer(a.clone());
        e
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(o.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(o.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, field: &NumberField, o: &Self) -> Self {
        let n = field.n();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                prod[i + j] += t;
            }
        }
        reduce_mod_f(field, &mut prod);
        Self {
            coords: prod.into_iter().take(n).collect(),
        }
    }

    pub fn pow(&self, field: &NumberField, e: u32) -> Self {
        let mut acc = Self::one(field);
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

    /// Common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        let mut d = BigInt::one();
        for c in &self.coords {
            d = num_integer::Integer::lcm(&d, c.denom());
        }
        d
    }

    pub fn has_integer_coords(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    /// Integer coordinates, if the element lies in Z[xi].
    pub fn int_coords(&self) -> Option<Vec<BigInt>> {
        if !self.has_integer_coords() {
            return None;
        }
        Some(self.coords.iter().map(|c| c.numer().clone()).collect())
    }

    /// The representing polynomial with denominators cleared:
    /// (poly, denom) with self = poly(xi)/denom.
    pub fn scaled_int_poly(&self) -> (IntPoly, BigInt) {
        let d = self.denominator();
        let coeffs = self
            .coords
            .iter()
            .map(|c| {
                let scaled = c * BigRational::from_integer(d.clone());
                debug_assert!(scaled.denom().is_one());
                scaled.numer().clone()
            })
            .collect();
        (IntPoly::new(coeffs), d)
    }

    /// Field norm via the resultant of the representing polynomial with the
    /// defining polynomial.
    pub fn norm(&self, field: &NumberField) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let (rep, d) = self.scaled_int_poly();
        let n = field.n();
        // resultant(rep, f) = prod rep(root_i) for monic f
        let r = rep.resultant(field.poly()).expect("nonzero inputs");
        let denom = d.pow(n as u32);
        BigRational::new(r, denom)
    }

    /// Characteristic polynomial of multiplication by self, monic, by
    /// Faddeev-LeVerrier: an independent route to the norm and the exact
    /// integrality test.
    pub fn char_poly(&self, field: &NumberField) -> Vec<BigRational> {
        let n = field.n();
        let m = self.mul_matrix(field);
        let mut mk = m.clone();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut cs: Vec<BigRational> = Vec::with_capacity(n);
        for k in 1..=n {
            let tr = trace(&mk);
            let mut ck = -tr;
            if k > 1 {
                ck = ck / BigRational::from_integer(BigInt::from(k as u64));
                // FL recurrence: c_k = -tr(M_k)/k
            }
            cs.push(ck.clone());
            coeffs[n - k] = ck.clone();
            if k < n {
                // M_{k+1} = M (M_k + c_k I)
                let mut shifted = mk.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = &row[i] + &ck;
                }
                mk = mat_mul(&m, &shifted);
            }
        }
        coeffs
    }

    /// True iff the element is an algebraic integer (integral char poly).
    pub fn is_integral(&self, field: &NumberField) -> bool {
        self.char_poly(field)
            .iter()
            .all(|c| c.denom().is_one())
    }

    /// Multiplication-by-self matrix in the power basis (column j holds the
    /// coordinates of self * xi^j).
    fn mul_matrix(&self, field: &NumberField) -> Vec<Vec<BigRational>> {
        let n = field.n();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        cols.push(cur.coords.clone());
        for _ in 1..n {
            cur = cur.mul(field, &AlgebraicInt::xi(field));
            cols.push(cur.coords.clone());
        }
        // transpose into row-major
        let mut rows = vec![vec![BigRational::zero(); n]; n];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                rows[i][j] = v.clone();
            }
        }
        rows
    }

    /// Certified interval enclosing the image of self under the embedding
    /// sending xi into the given root box.
    pub fn conjugate_interval(&self, bx: &RootBox) -> RatInterval {
        let x = bx.interval();
        let mut acc = RatInterval::zero();
        for c in self.coords.iter().rev() {
            acc = acc.mul(&x).add(&RatInterval::point(c.clone()));
        }
        acc
    }
}

fn reduce_mod_f(field: &NumberField, coords: &mut Vec<BigRational>) {
    let n = field.n();
    let f = field.poly();
    while coords.len() > n {
        let top = coords.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = coords.len() - n; // degree excess after popping
        for j in 0..n {
            let c = BigRational::from_integer(f.coeff(j));
            coords[k + j] -= &top * c;
        }
    }
    coords.resize(n, BigRational::zero());
}

fn trace(m: &[Vec<BigRational>]) -> BigRational {
    let mut t = BigRational::zero();
    for (i, row) in m.iter().enumerate() {
        t += &row[i];
    }
    t
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau5_field() -> NumberField {
        NumberField::new(IntPoly::from_i64(&[-25, -1, 24, 1]))
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn xi_satisfies_f() {
        let k = tau5_field();
        let xi = AlgebraicInt::xi(&k);
        // xi^3 + 24 xi^2 - xi - 25 = 0
        let val = xi
            .pow(&k, 3)
            .add(&xi.pow(&k, 2).scale(&rat(24)))
            .sub(&xi)
            .sub(&AlgebraicInt::from_integer(&k, BigInt::from(25)));
        assert!(val.is_zero());
    }

    #[test]
    fn norms_of_units_and_xi() {
        let k = tau5_field();
        let xi = AlgebraicInt::xi(&k);
        assert_eq!(xi.norm(&k), rat(25));
        let u1 = AlgebraicInt::xi_minus(&k, &BigInt::from(1));
        let u2 = AlgebraicInt::xi_minus(&k, &BigInt::from(-1));
        assert_eq!(u1.norm(&k).abs(), rat(1));
        assert_eq!(u2.norm(&k).abs(), rat(1));
    }

    #[test]
    fn norm_is_multiplicative_and_matches_char_poly() {
        let k = tau5_field();
        let mut rng = crate::rng::SplitMix64::new(0xf1e1d);
        for _ in 0..40 {
            let a = AlgebraicInt::from_int_coords(
                &k,
                &[
                    BigInt::from(rng.range_i64(-9, 9)),
                    BigInt::from(rng.range_i64(-9, 9)),
                    BigInt::from(rng.range_i64(-9, 9)),
                ],
            );
            let b = AlgebraicInt::from_int_coords(
                &k,
                &[
                    BigInt::from(rng.range_i64(-9, 9)),
                    BigInt::from(rng.range_i64(-9, 9)),
                    BigInt::from(rng.range_i64(-9, 9)),
                ],
            );
            let nab = a.mul(&k, &b).norm(&k);
            assert_eq!(nab, a.norm(&k) * b.norm(&k));
            // char-poly route: N = (-1)^n * c_0
            let cp = a.char_poly(&k);
            let c0 = cp[0].clone();
            let via_cp = if k.n() % 2 == 1 { -c0 } else { c0 };
            assert_eq!(a.norm(&k), via_cp, "a={:?}", a);
        }
    }

    #[test]
    fn integrality_detects_denominators() {
        // golden ratio field: (1 + sqrt5)/2 is integral though its coords
        // have denominator 2
        let k = NumberField::new(IntPoly::from_i64(&[-5, 0, 1]));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let phi = AlgebraicInt::from_coords(&k, vec![half.clone(), half]);
        assert!(phi.is_integral(&k));
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let bad = AlgebraicInt::from_coords(&k, vec![third.clone(), third]);
        assert!(!bad.is_integral(&k));
        let xi = AlgebraicInt::xi(&k);
        assert!(xi.is_integral(&k));
    }

    #[test]
    fn conjugate_intervals_said_to_contain_truth() {
        let k = tau5_field();
        let params = crate::abc_family::AbcParams::new(3, 2, vec![1, -1]);
        let cand = crate::abc_family::TauCandidate::new(&params, 5).unwrap();
        let emb = crate::real_embeddings::EmbeddingData::build(&params, &cand, 64).unwrap();
        // the product of conjugates of xi-1 must enclose its norm +-1
        let u = AlgebraicInt::xi_minus(&k, &BigInt::from(1));
        let mut prod = RatInterval::point(BigRational::one());
        for bx in &emb.boxes {
            prod = prod.mul(&u.conjugate_interval(bx));
        }
        let norm = u.norm(&k);
        assert!(prod.contains(&norm), "{:?} vs {}", prod, norm);
    }
}
