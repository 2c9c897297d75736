//! Certified interval arithmetic over exact rational endpoints.
//!
//! Endpoints are arbitrary rationals; precision-sensitive operations
//! (logarithm, p-th root) take a working bit count and round outward onto
//! dyadic rationals, so enclosures are always true enclosures and runs are
//! deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact_poly::IntPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_int(v: &BigInt) -> Self {
        Self::point(BigRational::from_integer(v.clone()))
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_int(&self, v: &BigInt) -> bool {
        self.contains(&BigRational::from_integer(v.clone()))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign if definite: -1, 0 (the point zero), or 1; None if straddling.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn add_rat(&self, v: &BigRational) -> Self {
        Self {
            lo: &self.lo + v,
            hi: &self.hi + v,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let candidates = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    pub fn mul_rat(&self, v: &BigRational) -> Self {
        if v.is_negative() {
            Self {
                lo: &self.hi * v,
                hi: &self.lo * v,
            }
        } else {
            Self {
                lo: &self.lo * v,
                hi: &self.hi * v,
            }
        }
    }

    /// Reciprocal; the interval must exclude zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "division by interval containing zero");
        Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::point(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// |self| as an interval.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Self {
                lo: BigRational::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            }
        }
    }

    /// Round endpoints outward onto dyadics with 2^bits denominators.
    pub fn round_out(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let lo = BigRational::new(floor_scaled(&self.lo, bits), scale.clone());
        let hi = BigRational::new(ceil_scaled(&self.hi, bits), scale);
        Self { lo, hi }
    }

    /// Certified enclosure of ln|self|; the interval must exclude zero.
    pub fn log_abs(&self, bits: u32) -> Self {
        let a = self.abs();
        assert!(
            a.lo.is_positive(),
            "log_abs requires an interval excluding zero"
        );
        let lo = ln_rational(&a.lo, bits, false);
        let hi = ln_rational(&a.hi, bits, true);
        Self { lo, hi }
    }

    /// Certified p-th root of a positive interval.
    pub fn nth_root_pos(&self, p: u32, bits: u32) -> Self {
        assert!(self.lo.is_positive(), "nth_root_pos requires positivity");
        let scale = BigInt::one() << bits;
        let v_lo = floor_scaled_pow(&self.lo, bits, p);
        let v_hi = ceil_scaled_pow(&self.hi, bits, p);
        let r_lo = v_lo.nth_root(p);
        let r_hi = v_hi.nth_root(p) + BigInt::one();
        Self {
            lo: BigRational::new(r_lo, scale.clone()),
            hi: BigRational::new(r_hi, scale),
        }
    }

    /// Hull of two intervals.
    pub fn hull(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }
}

fn floor_scaled(q: &BigRational, bits: u32) -> BigInt {
    let scaled = q * BigRational::from_integer(BigInt::one() << bits);
    scaled.floor().to_integer()
}

fn ceil_scaled(q: &BigRational, bits: u32) -> BigInt {
    let scaled = q * BigRational::from_integer(BigInt::one() << bits);
    scaled.ceil().to_integer()
}

/// floor(q * 2^(bits*p)) for the root computation.
fn floor_scaled_pow(q: &BigRational, bits: u32, p: u32) -> BigInt {
    let scaled = q * BigRational::from_integer(BigInt::one() << (bits as u64 * p as u64));
    scaled.floor().to_integer()
}

fn ceil_scaled_pow(q: &BigRational, bits: u32, p: u32) -> BigInt {
    let scaled = q * BigRational::from_integer(BigInt::one() << (bits as u64 * p as u64));
    scaled.ceil().to_integer()
}

/// Directed-rounding ln of a positive rational, correct to within a few ulps
/// at 2^-bits, rounded down (round_up = false) or up (round_up = true).
fn ln_rational(q: &BigRational, bits: u32, round_up: bool) -> BigRational {
    assert!(q.is_positive());
    // reduce q = m * 2^e with m in [1, 2)
    let e = ilog2_floor(q);
    let m = if e >= 0 {
        q / BigRational::from_integer(BigInt::one() << (e as u64))
    } else {
        q * BigRational::from_integer(BigInt::one() << ((-e) as u64))
    };
    debug_assert!(m >= BigRational::one());
    debug_assert!(m < BigRational::from_integer(BigInt::from(2)));

    let w = bits + 8; // guard bits
    let (lnm_lo, lnm_hi) = atanh_ln_fixed(&m, w);
    let (ln2_lo, ln2_hi) = ln2_fixed(w);

    // ln q = e*ln2 + ln m, in fixed point at scale 2^-w
    let e_big = BigInt::from(e);
    let (t_lo, t_hi) = if e >= 0 {
        (&e_big * &ln2_lo, &e_big * &ln2_hi)
    } else {
        (&e_big * &ln2_hi, &e_big * &ln2_lo)
    };
    let lo = t_lo + lnm_lo;
    let hi = t_hi + lnm_hi;
    let scale = BigInt::one() << w;
    if round_up {
        BigRational::new(hi, scale)
    } else {
        BigRational::new(lo, scale)
    }
}

/// floor(log2(q)) for positive rational q.
fn ilog2_floor(q: &BigRational) -> i64 {
    let a = q.numer();
    let b = q.denom();
    let mut e = a.bits() as i64 - b.bits() as i64;
    // adjust so that 2^e <= q < 2^(e+1)
    loop {
        let cmp_lo = if e >= 0 {
            a >= &(b << (e as u64))
        } else {
            &(a << ((-e) as u64)) >= b
        };
        if !cmp_lo {
            e -= 1;
            continue;
        }
        let e1 = e + 1;
        let cmp_hi = if e1 >= 0 {
            a < &(b << (e1 as u64))
        } else {
            &(a << ((-e1) as u64)) < b
        };
        if !cmp_hi {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Enclosure of ln m for m in [1, 2), as fixed-point mantissas at 2^-w:
/// ln m = 2 atanh(u), u = (m-1)/(m+1) in [0, 1/3).
fn atanh_ln_fixed(m: &BigRational, w: u32) -> (BigInt, BigInt) {
    let one = BigRational::one();
    let u = (m - &one) / (m + &one);
    series_2_atanh_fixed(&u, w)
}

/// ln 2 = 2 atanh(1/3).
fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    let u = BigRational::new(BigInt::one(), BigInt::from(3));
    series_2_atanh_fixed(&u, w)
}

/// Enclosure of 2*atanh(u) for rational u in [0, 1/2], as fixed-point
/// mantissas at scale 2^-w.
fn series_2_atanh_fixed(u: &BigRational, w: u32) -> (BigInt, BigInt) {
    assert!(!u.is_negative());
    assert!(*u <= BigRational::new(BigInt::one(), BigInt::from(2)));
    let scale = BigInt::one() << w;
    // dyadic enclosure of u
    let u_lo = floor_scaled(u, w);
    let u_hi = ceil_scaled(u, w);
    // u^2 enclosure (nonnegative)
    let mul_lo = |a: &BigInt, b: &BigInt| -> BigInt { (a * b) >> w };
    let mul_hi = |a: &BigInt, b: &BigInt| -> BigInt { ((a * b) + (&scale - 1u8)) >> w };
    let u2_lo = mul_lo(&u_lo, &u_lo);
    let u2_hi = mul_hi(&u_hi, &u_hi);

    let mut pw_lo = u_lo.clone();
    let mut pw_hi = u_hi.clone();
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k = 0u32;
    loop {
        let d = BigInt::from(2 * k + 1);
        sum_lo += &pw_lo / &d;
        sum_hi += (&pw_hi + (&d - 1u8)) / &d; // ceil
        // next odd power
        pw_lo = mul_lo(&pw_lo, &u2_lo);
        pw_hi = mul_hi(&pw_hi, &u2_hi);
        k += 1;
        if pw_hi <= BigInt::from(2 * k + 1) {
            // every remaining term is below one ulp; the geometric tail is
            // bounded by 1/(1 - u^2) <= 4/3 ulps of the first skipped term
            sum_hi += 2u8;
            break;
        }
        assert!(k < 10_000, "atanh series failed to converge");
    }
    (sum_lo << 1, sum_hi << 1)
}

/// Interval Horner evaluation of an integer polynomial.
pub fn eval_poly_interval(f: &IntPoly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::from_int(c));
    }
    acc
}

/// Determinant of a small interval matrix by Laplace expansion.
pub fn det_interval(m: &[Vec<RatInterval>]) -> RatInterval {
    let n = m.len();
    if n == 0 {
        return RatInterval::point(BigRational::one());
    }
    for row in m {
        assert_eq!(row.len(), n);
    }
    det_rec(m, &mut (0..n).collect::<Vec<_>>())
}

fn det_rec(m: &[Vec<RatInterval>], cols: &mut Vec<usize>) -> RatInterval {
    let row = m.len() - cols.len();
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = RatInterval::zero();
    for i in 0..cols.len() {
        let c = cols.remove(i);
        let minor = det_rec(m, cols);
        let term = m[row][c].mul(&minor);
        if i % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
        cols.insert(i, c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn approx_ln(x: f64) -> f64 {
        x.ln()
    }

    #[test]
    fn interval_mul_signs() {
        let a = RatInterval::new(rat(-2, 1), rat(3, 1));
        let b = RatInterval::new(rat(-1, 1), rat(4, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat(-8, 1));
        assert_eq!(p.hi, rat(12, 1));
    }

    #[test]
    fn log_encloses_truth() {
        for (n, d) in [(24i64, 1i64), (1, 24), (355, 113), (2, 1), (1, 3), (17, 5)] {
            let x = RatInterval::point(rat(n, d));
            let l = x.log_abs(64);
            let truth = approx_ln(n as f64 / d as f64);
            assert!(
                l.lo < BigRational::from_float(truth + 1e-12).unwrap(),
                "lo too high for {}/{}",
                n,
                d
            );
            assert!(
                l.hi > BigRational::from_float(truth - 1e-12).unwrap(),
                "hi too low for {}/{}",
                n,
                d
            );
            // tight: within 2^-50
            let w = l.width();
            assert!(w < rat(1, 1i64 << 50), "width {} for {}/{}", w, n, d);
        }
    }

    #[test]
    fn log_of_negative_abs() {
        let x = RatInterval::new(rat(-25, 1), rat(-24, 1));
        let l = x.log_abs(64);
        let t24 = approx_ln(24.0);
        let t25 = approx_ln(25.0);
        assert!(l.lo.to_f64_lossy() <= t24 + 1e-12);
        assert!(l.hi.to_f64_lossy() >= t25 - 1e-12);
    }

    #[test]
    fn nth_root_certified() {
        let x = RatInterval::new(rat(2, 1), rat(2, 1));
        let r = x.nth_root_pos(2, 80);
        // sqrt(2) = 1.41421356...
        assert!(r.lo.to_f64_lossy() <= 1.414_213_562_373_096);
        assert!(r.hi.to_f64_lossy() >= 1.414_213_562_373_094);
        assert!(r.width() < rat(1, 1i64 << 60));
        // cube root of 27 is exactly 3
        let x = RatInterval::point(rat(27, 1));
        let r = x.nth_root_pos(3, 64);
        assert!(r.contains(&rat(3, 1)));
    }

    #[test]
    fn det_small() {
        // [[1,2],[3,4]] -> -2
        let m = vec![
            vec![
                RatInterval::point(rat(1, 1)),
                RatInterval::point(rat(2, 1)),
            ],
            vec![
                RatInterval::point(rat(3, 1)),
                RatInterval::point(rat(4, 1)),
            ],
        ];
        let d = det_interval(&m);
        assert!(d.contains(&rat(-2, 1)));
        assert_eq!(d.lo, d.hi);
    }

    #[test]
    fn round_out_widens() {
        let x = RatInterval::point(rat(1, 3));
        let r = x.round_out(16);
        assert!(r.lo <= rat(1, 3) && rat(1, 3) <= r.hi);
        assert!(r.width() <= rat(2, 65536));
    }
}

/// Lossy f64 view for diagnostics and tests only.
pub trait ToF64Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64Lossy for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().unwrap_or(f64::NAN)
    }
}
