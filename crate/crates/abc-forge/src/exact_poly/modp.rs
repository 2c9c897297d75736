//! Polynomial factorization over F_p: squarefree decomposition,
//! distinct-degree splitting and Cantor-Zassenhaus equal-degree splitting.
//!
//! Primes up to 2^62 are supported (products go through u128).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::PolyError;
use crate::rng::SplitMix64;

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invm(a: u64, p: u64) -> u64 {
    // p prime
    powm(a, p - 2, p)
}

/// Dense polynomial over F_p, lowest degree first, normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyZp {
    pub p: u64,
    pub c: Vec<u64>,
}

impl PolyZp {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| {
                let mut r = x % &pb;
                if r.is_negative() {
                    r += &pb;
                }
                u64::try_from(r).unwrap()
            })
            .collect();
        Self::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        Self { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.c.len() - 1
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, v) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *v = addm(a, b, self.p);
        }
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, v) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *v = subm(a, b, self.p);
        }
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = addm(c[i + j], mulm(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, c)
    }

    pub fn mul_scalar(&self, s: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| mulm(a, s, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invm(self.lead(), self.p);
        self.mul_scalar(inv)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.is_zero() || self.deg() < d.deg() {
            return (Self::zero(p), self.clone());
        }
        let dl = invm(d.lead(), p);
        let dd = d.deg();
        let mut rem = self.c.clone();
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mulm(rem[i], dl, p);
            if c == 0 {
                continue;
            }
            quo[i - dd] = c;
            for (j, &b) in d.c.iter().enumerate() {
                rem[i - dd + j] = subm(rem[i - dd + j], mulm(c, b, p), p);
            }
        }
        (Self::new(p, quo), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero(self.p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulm(a, (i as u64) % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// self^e mod m, e a u64.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// self^e mod m with a big exponent given as bits (little endian).
    fn pow_mod_bits(&self, bits: &[bool], m: &Self) -> Self {
        let mut acc = Self::one(self.p);
        let base = self.rem(m);
        for &bit in bits.iter().rev() {
            acc = acc.mul(&acc).rem(m);
            if bit {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = addm(mulm(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// Symmetric lift to Z[x], coefficients in (-p/2, p/2].
    pub fn lift_symmetric(&self) -> IntPoly {
        let p = BigInt::from(self.p);
        let half = &p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&c| {
                    let v = BigInt::from(c);
                    if v > half {
                        v - &p
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Monic lift to Z[x] with coefficients in [0, p).
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Multiset of (degree, multiplicity) pairs of the irreducible factors of a
/// polynomial mod `prime`; `ramified` flags primes dividing disc(f).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorShape {
    pub prime: u64,
    pub shape: Vec<(usize, usize)>,
    pub ramified: bool,
}

impl FactorShape {
    /// Total degree accounted for by the shape.
    pub fn total_degree(&self) -> usize {
        self.shape.iter().map(|(d, m)| d * m).sum()
    }

    /// True when every factor is simple (the reduction is squarefree).
    pub fn is_squarefree(&self) -> bool {
        self.shape.iter().all(|&(_, m)| m == 1)
    }

    /// Cycle type of Frobenius for unramified primes: the factor degrees.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut c = Vec::new();
        for &(d, m) in &self.shape {
            for _ in 0..m {
                c.push(d);
            }
        }
        c.sort_unstable();
        c
    }
}

/// Coefficient-wise p-th root of a polynomial with zero derivative:
/// in F_p[x], f(x) = g(x^p) implies f = (h(x))^p with h_i = f_{p*i}.
fn pth_root(f: &PolyZp) -> PolyZp {
    let p = f.p as usize;
    let mut c = Vec::new();
    let mut i = 0;
    while i < f.c.len() {
        c.push(f.c[i]);
        i += p;
    }
    PolyZp::new(f.p, c)
}

/// Squarefree decomposition in characteristic p: monic pairwise-coprime
/// squarefree parts with their exact multiplicities.
pub fn squarefree_decomposition(f: &PolyZp) -> Vec<(PolyZp, usize)> {
    let mut out: Vec<(PolyZp, usize)> = Vec::new();
    let f = f.monic();
    if f.is_zero() || f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        let g = pth_root(&f);
        for (q, m) in squarefree_decomposition(&g) {
            out.push((q, m * f.p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    while !(w.deg() == 0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.deg() > 0 {
        for (q, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((q, m * f.p as usize));
        }
    }
    out.sort_by_key(|(q, m)| (*m, q.deg(), q.c.clone()));
    out
}

/// Distinct-degree split of a squarefree monic polynomial:
/// pairs (d, product of all irreducible factors of degree d).
pub fn distinct_degree(f: &PolyZp) -> Vec<(usize, PolyZp)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut g = f.monic();
    let mut h = PolyZp::x(p).rem(&g);
    let mut d = 0usize;
    while g.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(p, &g); // one Frobenius step: h = x^(p^d) mod g
        let split = h.sub(&PolyZp::x(p)).gcd(&g);
        if !split.is_zero() && split.deg() > 0 {
            out.push((d, split.clone()));
            g = g.div_exact(&split);
            if g.deg() == 0 {
                return out;
            }
            h = h.rem(&g);
        }
    }
    if g.deg() > 0 {
        out.push((g.deg(), g));
    }
    out
}

/// Little-endian bits of (p^d - 1) / 2 for odd p.
fn cz_exponent_bits(p: u64, d: usize) -> Vec<bool> {
    use num_bigint::BigUint;
    use num_traits::One;
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let bytes = e.to_bytes_le();
    let mut bits = Vec::with_capacity(bytes.len() * 8);
    for b in bytes {
        for k in 0..8 {
            bits.push((b >> k) & 1 == 1);
        }
    }
    while bits.last() == Some(&false) {
        bits.pop();
    }
    bits
}

/// Equal-degree splitting (Cantor-Zassenhaus): `f` monic squarefree, all
/// irreducible factors of degree `d`. Deterministically seeded.
pub fn equal_degree_split(f: &PolyZp, d: usize, rng: &mut SplitMix64) -> Vec<PolyZp> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    let k = f.deg();
    loop {
        // random nonconstant h of degree < k
        let mut c: Vec<u64> = (0..k).map(|_| rng.below(p)).collect();
        if c.iter().all(|&x| x == 0) {
            c[0] = 1;
        }
        let h = PolyZp::new(p, c);
        if h.is_zero() || h.deg() == 0 {
            continue;
        }
        let g1 = h.gcd(f);
        if g1.deg() > 0 && g1.deg() < f.deg() {
            let mut out = equal_degree_split(&g1, d, rng);
            out.extend(equal_degree_split(&f.div_exact(&g1), d, rng));
            return out;
        }
        let w = if p == 2 {
            // trace map T(h) = h + h^2 + ... + h^(2^(d-1)) mod f
            let mut t = h.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let bits = cz_exponent_bits(p, d);
            h.pow_mod_bits(&bits, f).sub(&PolyZp::one(p))
        };
        let g = w.gcd(f);
        if !g.is_zero() && g.deg() > 0 && g.deg() < f.deg() {
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&f.div_exact(&g), d, rng));
            return out;
        }
    }
}

/// Full monic factorization of f mod p: (irreducible monic factor,
/// multiplicity), deterministic order.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(PolyZp, usize)>, PolyError> {
    let lead_mod = {
        let fp = PolyZp::from_int_poly(f, p);
        if f.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if fp.is_zero() || fp.deg() != f.deg() {
            return Err(PolyError::PrimeDividesLeading(p));
        }
        fp
    };
    let mut rng = SplitMix64::derive(0x5eed_facade, p ^ (f.deg() as u64).rotate_left(17));
    let mut out: Vec<(PolyZp, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&lead_mod) {
        for (d, slice) in distinct_degree(&part) {
            let factors = equal_degree_split(&slice, d, &mut rng);
            for fac in factors {
                out.push((fac.monic(), mult));
            }
        }
    }
    out.sort_by(|a, b| (a.1, a.0.deg(), &a.0.c).cmp(&(b.1, b.0.deg(), &b.0.c)));
    Ok(out)
}

/// Factorization shape of f mod p. Reported for ramified primes too, with
/// the flag set.
pub fn factor_shape_mod_p(f: &IntPoly, p: u64) -> Result<FactorShape, PolyError> {
    let fp = PolyZp::from_int_poly(f, p);
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if fp.is_zero() || fp.deg() != f.deg() {
        return Err(PolyError::PrimeDividesLeading(p));
    }
    let mut shape = Vec::new();
    for (part, mult) in squarefree_decomposition(&fp) {
        for (d, slice) in distinct_degree(&part) {
            let count = slice.deg() / d;
            for _ in 0..count {
                shape.push((d, mult));
            }
        }
    }
    shape.sort_unstable();
    let disc = f.discriminant().unwrap_or_else(|_| BigInt::zero());
    let ramified = (&disc % BigInt::from(p)).is_zero();
    Ok(FactorShape {
        prime: p,
        shape,
        ramified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape_of(coeffs: &[i64], p: u64) -> Vec<(usize, usize)> {
        factor_shape_mod_p(&IntPoly::from_i64(coeffs), p)
            .unwrap()
            .shape
    }

    #[test]
    fn cubic_shapes() {
        // x^3 - x - 1 mod 2: irreducible
        assert_eq!(shape_of(&[-1, -1, 0, 1], 2), vec![(3, 1)]);
        // mod 5: root at 2, irreducible quadratic cofactor
        assert_eq!(shape_of(&[-1, -1, 0, 1], 5), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn ramified_square() {
        let s = factor_shape_mod_p(&IntPoly::from_i64(&[-1, 0, 1]), 2).unwrap();
        assert_eq!(s.shape, vec![(1, 2)]);
        assert!(s.ramified);
    }

    #[test]
    fn leading_coeff_error() {
        let f = IntPoly::from_i64(&[1, 0, 2]);
        assert_eq!(
            factor_shape_mod_p(&f, 2),
            Err(PolyError::PrimeDividesLeading(2))
        );
    }

    #[test]
    fn degrees_sum_to_total() {
        let mut rng = crate::rng::SplitMix64::new(0xfeed);
        for p in [2u64, 3, 5, 7, 11, 101] {
            for _ in 0..40 {
                let d = 1 + rng.below(6) as usize;
                let mut c: Vec<i64> = (0..d).map(|_| rng.range_i64(-30, 30)).collect();
                c.push(1 + rng.below(3) as i64); // lc in {1,2,3}
                let f = IntPoly::from_i64(&c);
                if (&f.leading() % BigInt::from(p)).is_zero() {
                    continue;
                }
                let s = factor_shape_mod_p(&f, p).unwrap();
                assert_eq!(s.total_degree(), f.deg(), "f={:?} p={}", f, p);
            }
        }
    }

    #[test]
    fn factors_multiply_back() {
        let mut rng = crate::rng::SplitMix64::new(0xbeef);
        for p in [2u64, 3, 13] {
            for _ in 0..40 {
                let d = 1 + rng.below(6) as usize;
                let mut c: Vec<i64> = (0..d).map(|_| rng.range_i64(-30, 30)).collect();
                c.push(1);
                let f = IntPoly::from_i64(&c);
                let fp = PolyZp::from_int_poly(&f, p);
                let factors = factor_mod_p(&f, p).unwrap();
                let mut prod = PolyZp::one(p);
                for (g, m) in &factors {
                    assert!(g.deg() >= 1);
                    for _ in 0..*m {
                        prod = prod.mul(g);
                    }
                }
                assert_eq!(prod.monic(), fp.monic(), "f={:?} p={}", f, p);
            }
        }
    }

    #[test]
    fn big_prime_arithmetic() {
        // prime near 2^40 exercises the u128 multiply path
        let p: u64 = 1_099_511_627_791;
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        let s = factor_shape_mod_p(&f, p).unwrap();
        assert_eq!(s.total_degree(), 3);
    }
}
