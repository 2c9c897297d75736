//! Integer utilities: primality, bounded factorization, perfect powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::mulm;
use crate::rng::SplitMix64;

/// Miller-Rabin, deterministic for n < 3.3 * 10^24 via the first 13 prime
/// bases; larger inputs additionally use a fixed set of pseudo-random bases
/// (probable prime, which is adequate for the certificate pipeline where a
/// false prime can only cause a conservative skip).
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    const SMALL: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &p in &SMALL {
        let pb = BigInt::from(p);
        if n == &pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    if let Some(nu) = n.to_u128() {
        return miller_rabin_u128(nu);
    }
    let n_minus_1: BigInt = n - BigInt::one();
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    let mut bases: Vec<BigInt> = SMALL.iter().map(|&b| BigInt::from(b)).collect();
    let mut rng = SplitMix64::new(0x9d15_cafe);
    for _ in 0..12 {
        bases.push(BigInt::from(rng.next_u64() | 1));
    }
    'outer: for a in bases {
        let a = &a % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'outer: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if let (Some(a64), Some(b64), Some(m64)) = (
        u64::try_from(a).ok(),
        u64::try_from(b).ok(),
        u64::try_from(m).ok(),
    ) {
        return mulm(a64, b64, m64) as u128;
    }
    // schoolbook double-and-add for the rare > 64-bit case
    let mut acc: u128 = 0;
    let mut a = a % m;
    let mut b = b % m;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn pow_mod_u128(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u128(acc, b, m);
        }
        b = mul_mod_u128(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    miller_rabin_u128(n as u128)
}

/// Primes in increasing order (simple incremental generator).
pub struct Primes {
    next: u64,
}

impl Primes {
    pub fn new() -> Self {
        Self { next: 2 }
    }
}

impl Default for Primes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let mut n = self.next;
        loop {
            if is_prime_u64(n) {
                self.next = n + 1;
                return Some(n);
            }
            n += 1;
        }
    }
}

/// Outcome of bounded factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// Complete list of (prime, exponent), primes increasing.
    Complete(Vec<(BigInt, u32)>),
    /// Budget exhausted; the unfactored cofactor is returned.
    Incomplete { cofactor: BigInt },
}

/// Factor |n| by trial division up to `trial_bound`, then bounded-effort
/// Pollard rho + perfect-power peeling on the cofactor.
pub fn factor_bounded(n: &BigInt, trial_bound: u64, rho_budget: u32) -> Factorization {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            out.push((p, e));
        }
    };

    // trial division
    let mut d = 2u64;
    while d <= trial_bound {
        let db = BigInt::from(d);
        if &db * &db > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &db).is_zero() {
            n /= &db;
            e += 1;
        }
        if e > 0 {
            push(&mut out, db, e);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if n.is_one() {
        out.sort();
        return Factorization::Complete(out);
    }
    if is_probable_prime(&n) {
        push(&mut out, n, 1);
        out.sort();
        return Factorization::Complete(out);
    }

    // perfect power peeling + Pollard rho on composite cofactors
    let mut stack = vec![n];
    let mut effort = 0u32;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(&mut out, m, 1);
            continue;
        }
        if let Some((base, k)) = perfect_power(&m) {
            if is_probable_prime(&base) {
                push(&mut out, base, k);
                continue;
            }
            for _ in 0..k {
                stack.push(base.clone());
            }
            continue;
        }
        if effort >= rho_budget {
            // report the remaining composite mass as one cofactor
            let mut cof = m;
            for rest in stack {
                cof *= rest;
            }
            return Factorization::Incomplete { cofactor: cof };
        }
        effort += 1;
        match pollard_rho(&m, effort) {
            Some(f) => {
                stack.push(&m / &f);
                stack.push(f);
            }
            None => {
                let mut cof = m;
                for rest in stack {
                    cof *= rest;
                }
                return Factorization::Incomplete { cofactor: cof };
            }
        }
    }
    out.sort();
    Factorization::Complete(out)
}

/// Largest k >= 2 with n = b^k, if any.
pub fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if n <= &BigInt::one() {
        return None;
    }
    let bits = n.bits();
    for k in (2..=bits as u32).rev() {
        let r = n.nth_root(k);
        if num_traits::pow::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Brent-cycle Pollard rho with deterministic seeding; bounded iterations.
fn pollard_rho(n: &BigInt, salt: u32) -> Option<BigInt> {
    let mut rng = SplitMix64::derive(0x7a01_d5a0_c0ff_ee00, salt as u64);
    let iterations = 1u64 << 18;
    for _ in 0..8 {
        let c = BigInt::from(rng.next_u64() % 1024 + 1);
        let mut x = BigInt::from(rng.next_u64() % 1024 + 2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut count = 0u64;
        while d.is_one() && count < iterations {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            count += 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Exact integer k-th root if |n| is a perfect k-th power (sign-aware).
pub fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if n.is_negative() && k % 2 == 0 {
        return None;
    }
    let a = n.abs();
    let r = a.nth_root(k);
    if num_traits::pow::pow(r.clone(), k as usize) == a {
        Some(if n.is_negative() { -r } else { r })
    } else {
        None
    }
}

/// True iff n is a perfect square (false for negatives).
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

pub fn v_p(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}
