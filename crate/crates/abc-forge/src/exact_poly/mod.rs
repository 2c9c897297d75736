//! Exact univariate integer-polynomial algebra.
//!
//! Coefficients are arbitrary-precision integers stored lowest degree first.
//! The resultant is computed by the subresultant pseudo-remainder sequence;
//! the sign convention is pinned in [`IntPoly::resultant`].

mod dedekind;
mod field_disc;
pub mod integers;
pub mod modp;

pub use dedekind::dedekind_p_maximal;
pub use field_disc::{field_discriminant, FactorBudget, FieldDisc, SkipReason};
pub use modp::{factor_mod_p, factor_shape_mod_p, FactorShape};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Univariate polynomial over Z, coefficients lowest degree first.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// x - r
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("zero polynomial has no degree")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Self { coeffs: out }
    }

    /// Exact division by x; the constant term must vanish.
    pub fn div_x_exact(&self) -> Self {
        assert!(self.coeff(0).is_zero(), "constant term must vanish");
        Self::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// Exact division by an integer scalar; every coefficient must divide.
    pub fn div_scalar_exact(&self, s: &BigInt) -> Self {
        assert!(!s.is_zero());
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = num_integer::Integer::div_rem(c, s);
                    assert!(r.is_zero(), "non-exact scalar division");
                    q
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of f(p/q) with q > 0, computed without rationals:
    /// sign of sum c_i p^i q^(d-i).
    pub fn sign_at_rational(&self, num: &BigInt, den: &BigInt) -> i32 {
        assert!(den.is_positive());
        if self.is_zero() {
            return 0;
        }
        let d = self.deg();
        let mut acc = BigInt::zero();
        let mut pw_num = BigInt::one();
        // den^(d-i) built from the top down
        let mut dens = Vec::with_capacity(d + 1);
        let mut pw_den = BigInt::one();
        for _ in 0..=d {
            dens.push(pw_den.clone());
            pw_den *= den;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &pw_num * &dens[d - i];
            pw_num *= num;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Polynomial division over Q when it is exact over Z (monic divisor).
    /// Panics if the divisor is not monic or division leaves a remainder.
    pub fn div_exact_monic(&self, divisor: &Self) -> Self {
        assert!(divisor.is_monic());
        let (q, r) = self.div_rem_monic(divisor);
        assert!(r.is_zero(), "non-exact division");
        q
    }

    /// Quotient and remainder by a monic divisor (stays over Z).
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic());
        let dd = divisor.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &c * b;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Content (gcd of coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Primitive part; keeps the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.div_scalar_exact(&c)
    }

    /// GCD over Z via primitive PRS, result with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return Self::positive_lc(other.clone());
        }
        if other.is_zero() {
            return Self::positive_lc(self.clone());
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                let g = Self::positive_lc(a.primitive_part());
                let c = num_integer::Integer::gcd(&self.content(), &other.content());
                return g.mul_scalar(&c);
            }
            if b.deg() == 0 {
                let c = num_integer::Integer::gcd(&self.content(), &other.content());
                return Self::constant(c);
            }
            let r = a.pseudo_rem_tracked(&b).0;
            a = b;
            b = r.primitive_part();
        }
    }

    fn positive_lc(p: Self) -> Self {
        if p.leading().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Pseudo-remainder together with the number of lb-multiplications used.
    fn pseudo_rem_tracked(&self, b: &Self) -> (Self, usize) {
        let db = b.deg();
        let lb = b.leading();
        let mut r = self.clone();
        let mut count = 0usize;
        while !r.is_zero() && r.deg() >= db {
            let dr = r.deg();
            let lr = r.leading();
            r = r.mul_scalar(&lb).sub(&b.shift_up(dr - db).mul_scalar(&lr));
            count += 1;
        }
        (r, count)
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant of `self` and `other`.
    ///
    /// Convention (pinned by the sign of res(x-1, x+1) = -2): the determinant
    /// of the Sylvester matrix whose first `deg self` rows carry the
    /// coefficients of `other`; equivalently
    /// `lc(other)^(deg self) * prod f(beta)` over the roots beta of `other`.
    /// For the discriminant this coincides with the usual convention, since
    /// swapping the arguments contributes `(-1)^(deg f * deg f')` which is
    /// always +1 there.
    pub fn resultant(&self, other: &Self) -> Result<BigInt, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(res_std(other, self))
    }

    /// disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f).
    pub fn discriminant(&self) -> Result<BigInt, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let d = self.deg();
        if d == 0 {
            return Err(PolyError::ConstantPolynomial);
        }
        if d == 1 {
            return Ok(BigInt::one());
        }
        let r = res_std(self, &self.derivative());
        let (q, rem) = num_integer::Integer::div_rem(&r, &self.leading());
        debug_assert!(rem.is_zero());
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }

    /// Product (x - r) over the given roots.
    pub fn from_roots(roots: &[BigInt]) -> Self {
        let mut f = Self::one();
        for r in roots {
            f = f.mul(&Self::linear_root(r));
        }
        f
    }
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 => {
                    if a.is_one() {
                        write!(f, "x")?
                    } else {
                        write!(f, "{}x", a)?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "x^{}", i)?
                    } else {
                        write!(f, "{}x^{}", a, i)?
                    }
                }
            }
        }
        Ok(())
    }
}

/// Standard-convention resultant lc(a)^(deg b) * prod b(alpha) over roots of
/// `a`, by the subresultant pseudo-remainder sequence.
fn res_std(a: &IntPoly, b: &IntPoly) -> BigInt {
    let mut a = a.clone();
    let mut b = b.clone();
    let mut sign = 1i32;
    if a.deg() == 0 && b.deg() == 0 {
        return BigInt::one();
    }
    if a.deg() < b.deg() {
        if (a.deg() * b.deg()) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        let r = num_traits::pow::pow(b.leading(), a.deg());
        return if sign < 0 { -r } else { r };
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let d = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = -sign;
        }
        let (mut r, steps) = a.pseudo_rem_tracked(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        // pad the pseudo-remainder so the multiplier is exactly lc(b)^(d+1)
        if steps < d + 1 {
            let pad = num_traits::pow::pow(b.leading(), d + 1 - steps);
            r = r.mul_scalar(&pad);
        }
        debug_assert!(steps <= d + 1);
        a = b;
        let divisor = &g * num_traits::pow::pow(h.clone(), d);
        b = r.div_scalar_exact(&divisor);
        g = a.leading();
        if d > 0 {
            // h <- g^d / h^(d-1), exact
            let num = num_traits::pow::pow(g.clone(), d);
            let den = num_traits::pow::pow(h.clone(), d - 1);
            let (q, rem) = num_integer::Integer::div_rem(&num, &den);
            debug_assert!(rem.is_zero());
            h = q;
        }
        if b.deg() == 0 {
            break;
        }
    }
    // final step: res = sign * lc(b)^(deg a) / h^(deg a - 1)
    let num = num_traits::pow::pow(b.leading(), a.deg());
    let den = num_traits::pow::pow(h, a.deg() - 1);
    let (q, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero());
    if sign < 0 {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    /// Sylvester-matrix determinant in the crate's convention (rows of g
    /// first), by fraction-free Bareiss elimination. Independent oracle for
    /// the PRS implementation.
    pub fn resultant_sylvester(f: &IntPoly, g: &IntPoly) -> BigInt {
        let m = f.deg();
        let n = g.deg();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        // first m rows: shifts of g (highest degree first)
        for r in 0..m {
            for j in 0..=n {
                mat[r][r + j] = g.coeff(n - j);
            }
        }
        // next n rows: shifts of f
        for r in 0..n {
            for j in 0..=m {
                mat[m + r][r + j] = f.coeff(m - j);
            }
        }
        bareiss_det(mat)
    }

    fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    fn random_poly(rng: &mut SplitMix64, max_deg: usize, bound: i64) -> IntPoly {
        loop {
            let d = rng.below(max_deg as u64 + 1) as usize;
            let coeffs: Vec<i64> = (0..=d).map(|_| rng.range_i64(-bound, bound)).collect();
            let p = IntPoly::from_i64(&coeffs);
            if !p.is_zero() {
                return p;
            }
        }
    }

    #[test]
    fn linear_resultant_convention() {
        // res(x-1, x+1) = -2 under the pinned convention
        let f = IntPoly::from_i64(&[-1, 1]);
        let g = IntPoly::from_i64(&[1, 1]);
        assert_eq!(f.resultant(&g).unwrap(), BigInt::from(-2));
        assert_eq!(g.resultant(&f).unwrap(), BigInt::from(2));
    }

    #[test]
    fn constant_resultant() {
        let f = IntPoly::from_i64(&[3, 0, 1, 7]);
        let one = IntPoly::one();
        assert_eq!(f.resultant(&one).unwrap(), BigInt::one());
    }

    #[test]
    fn resultant_cubic_vs_derivative() {
        // res(x^3-x-1, 3x^2-1) = 23
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        let fp = f.derivative();
        assert_eq!(f.resultant(&fp).unwrap(), BigInt::from(23));
        // the Sylvester-determinant oracle agrees
        assert_eq!(resultant_sylvester(&f, &fp), BigInt::from(23));
    }

    #[test]
    fn discriminants_pinned() {
        let f = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        assert_eq!(f.discriminant().unwrap(), BigInt::from(4));
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]); // x^3 - x - 1
        assert_eq!(f.discriminant().unwrap(), BigInt::from(-23));
        // the tau = 5 example field
        let f = IntPoly::from_i64(&[-25, -1, 24, 1]);
        let d = f.discriminant().unwrap();
        assert_eq!(d, BigInt::from(1_376_905i64));
        assert!(!d.is_zero());
    }

    #[test]
    fn prs_matches_sylvester_oracle() {
        let mut rng = SplitMix64::new(0xabc0);
        for _ in 0..300 {
            let f = random_poly(&mut rng, 6, 30);
            let g = random_poly(&mut rng, 6, 30);
            if f.deg() == 0 && g.deg() == 0 {
                continue;
            }
            assert_eq!(
                f.resultant(&g).unwrap(),
                resultant_sylvester(&f, &g),
                "f={:?} g={:?}",
                f,
                g
            );
        }
    }

    #[test]
    fn resultant_multiplicative() {
        let mut rng = SplitMix64::new(0xabc1);
        for _ in 0..120 {
            let f = random_poly(&mut rng, 4, 12);
            let g = random_poly(&mut rng, 3, 12);
            let h = random_poly(&mut rng, 3, 12);
            let gh = g.mul(&h);
            if f.is_zero() || gh.is_zero() {
                continue;
            }
            let lhs = f.resultant(&gh).unwrap();
            let rhs = f.resultant(&g).unwrap() * f.resultant(&h).unwrap();
            assert_eq!(lhs, rhs, "f={:?} g={:?} h={:?}", f, g, h);
        }
    }

    #[test]
    fn discriminant_zero_iff_gcd_nonconstant() {
        let mut rng = SplitMix64::new(0xabc2);
        let mut seen_zero = false;
        for _ in 0..400 {
            let mut coeffs: Vec<i64> = (0..6).map(|_| rng.range_i64(-50, 50)).collect();
            coeffs.push(1); // monic degree 6
            let f = IntPoly::from_i64(&coeffs);
            let disc_zero = f.discriminant().unwrap().is_zero();
            let gcd_nonconst = f.gcd(&f.derivative()).deg() > 0;
            assert_eq!(disc_zero, gcd_nonconst, "f={:?}", f);
            seen_zero |= disc_zero;
        }
        // force at least one non-squarefree case through the same check
        let sq = IntPoly::from_i64(&[1, 1]).mul(&IntPoly::from_i64(&[1, 1]));
        assert!(sq.discriminant().unwrap().is_zero());
        assert!(sq.gcd(&sq.derivative()).deg() > 0);
        let _ = seen_zero;
    }

    #[test]
    fn division_and_gcd() {
        let f = IntPoly::from_i64(&[-1, 0, 1]); // (x-1)(x+1)
        let g = IntPoly::from_i64(&[-1, 1]);
        let q = f.div_exact_monic(&g);
        assert_eq!(q, IntPoly::from_i64(&[1, 1]));
        let h = f.gcd(&g);
        assert_eq!(h, IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn zero_inputs_are_errors() {
        let z = IntPoly::zero();
        let f = IntPoly::from_i64(&[1, 1]);
        assert_eq!(f.resultant(&z), Err(PolyError::ZeroPolynomial));
        assert_eq!(z.discriminant(), Err(PolyError::ZeroPolynomial));
        assert_eq!(
            IntPoly::one().discriminant(),
            Err(PolyError::ConstantPolynomial)
        );
    }
}
