//! Property self-checks runnable from the command line: the dual-route
//! identities the acceptance suite relies on, at a scale that finishes in
//! seconds. Each check prints one pass/fail line.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abc_family::{self, AbcParams};
use crate::exact_poly::IntPoly;
use crate::rng::SplitMix64;
use crate::units_kummer::{is_pth_power, AlgebraicInt, FieldContext, KummerOptions, PthPowerOutcome};

/// Sylvester-matrix determinant in the crate's convention (rows of g first),
/// by fraction-free Bareiss elimination: the independent resultant route.
pub fn resultant_sylvester(f: &IntPoly, g: &IntPoly) -> BigInt {
    let m = f.deg();
    let n = g.deg();
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for r in 0..m {
        for j in 0..=n {
            mat[r][r + j] = g.coeff(n - j);
        }
    }
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

struct Check<'a> {
    name: &'a str,
    ok: bool,
}

fn run_checks() -> Vec<Check<'static>> {
    let mut rng = SplitMix64::new(0x5e1f_7e57);
    let mut checks = Vec::new();

    // resultant: PRS against the Sylvester determinant
    let mut ok = true;
    for _ in 0..50 {
        let f = random_poly(&mut rng, 5, 20);
        let g = random_poly(&mut rng, 5, 20);
        if f.deg() == 0 && g.deg() == 0 {
            continue;
        }
        if f.resultant(&g).unwrap() != resultant_sylvester(&f, &g) {
            ok = false;
        }
    }
    checks.push(Check {
        name: "resultant PRS = Sylvester determinant",
        ok,
    });

    // resultant multiplicativity
    let mut ok = true;
    for _ in 0..30 {
        let f = random_poly(&mut rng, 4, 10);
        let g = random_poly(&mut rng, 3, 10);
        let h = random_poly(&mut rng, 3, 10);
        let gh = g.mul(&h);
        if f.is_zero() || gh.is_zero() {
            continue;
        }
        if f.resultant(&gh).unwrap() != f.resultant(&g).unwrap() * f.resultant(&h).unwrap() {
            ok = false;
        }
    }
    checks.push(Check {
        name: "resultant multiplicativity",
        ok,
    });

    // discriminant vanishing iff repeated factor
    let mut ok = true;
    for _ in 0..40 {
        let mut c: Vec<i64> = (0..5).map(|_| rng.range_i64(-50, 50)).collect();
        c.push(1);
        let f = IntPoly::from_i64(&c);
        let dz = f.discriminant().unwrap().is_zero();
        let gcd = f.gcd(&f.derivative()).deg() > 0;
        if dz != gcd {
            ok = false;
        }
    }
    checks.push(Check {
        name: "disc(f) = 0 iff gcd(f, f') nonconstant",
        ok,
    });

    // factor shape degrees account for the full degree
    let mut ok = true;
    for p in [2u64, 3, 5, 13] {
        for _ in 0..10 {
            let mut c: Vec<i64> = (0..4).map(|_| rng.range_i64(-20, 20)).collect();
            c.push(1);
            let f = IntPoly::from_i64(&c);
            let shape = crate::exact_poly::factor_shape_mod_p(&f, p).unwrap();
            if shape.total_degree() != f.deg() {
                ok = false;
            }
        }
    }
    checks.push(Check {
        name: "factor shapes sum to deg f",
        ok,
    });

    // closed-form specialized discriminant against the resultant route
    let mut ok = true;
    let mut tried = 0;
    while tried < 30 {
        let n = 3 + rng.below(3) as usize;
        let ell = 1 + rng.below(2) as u32;
        let alpha = BigInt::from(rng.range_i64(-3, 3));
        let beta = BigInt::from(rng.range_i64(-3, 3));
        let gamma = BigInt::from(rng.range_i64(-3, 3));
        let tau = BigInt::from(rng.range_i64(-4, 4));
        if alpha.is_zero() || gamma.is_zero() {
            continue;
        }
        tried += 1;
        let closed = abc_family::disc_closed_form(n, ell, &alpha, &beta, &gamma, &tau);
        let poly = abc_family::disc_closed_form_poly(n, ell, &alpha, &beta, &gamma, &tau);
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -1 } else { 1 };
        if closed != BigInt::from(sign) * poly.discriminant().unwrap() {
            ok = false;
        }
    }
    checks.push(Check {
        name: "closed-form specialized discriminant",
        ok,
    });

    // candidate stream respects the window bounds
    let params = AbcParams::new(3, 2, vec![1, -1]);
    let got: Vec<i64> = abc_family::candidate_taus(&params, 10).map(|c| c.tau).collect();
    checks.push(Check {
        name: "candidate window bounds",
        ok: got == vec![-8, 8, -9, 9, -10, 10],
    });

    // unit norms and the ideal-identity norms over a candidate range
    let mut ok = true;
    for cand in abc_family::candidate_taus_full(&params, 12) {
        let field = crate::units_kummer::NumberField::new(cand.f_tau.clone());
        for &aj in params.base_points() {
            let u = AlgebraicInt::xi_minus(&field, &BigInt::from(aj));
            if u.norm(&field).numer().abs() != BigInt::one() {
                ok = false;
            }
        }
        let xi = AlgebraicInt::xi(&field);
        if xi.norm(&field).numer().abs() != BigInt::from(cand.tau).abs().pow(2) {
            ok = false;
        }
    }
    checks.push(Check {
        name: "unit and norm identities",
        ok,
    });

    // root isolation recovers constructed integer roots
    let mut ok = true;
    for _ in 0..20 {
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < 3 {
            let r = rng.range_i64(-30, 30);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let f = IntPoly::from_roots(&roots.iter().map(|&r| BigInt::from(r)).collect::<Vec<_>>());
        match crate::real_embeddings::isolate_real_roots(&f) {
            Ok(boxes) if boxes.len() == 3 => {}
            _ => ok = false,
        }
    }
    checks.push(Check {
        name: "certified root isolation",
        ok,
    });

    // planted p-th powers recovered
    let mut ok = true;
    let cand = crate::abc_family::TauCandidate::new(&params, 5).unwrap();
    let mut ctx = FieldContext::new(&params, &cand, 64).unwrap();
    for p in [2u32, 3] {
        for _ in 0..10 {
            let delta = AlgebraicInt::from_int_coords(
                &ctx.field,
                &[
                    BigInt::from(rng.range_i64(-5, 5)),
                    BigInt::from(rng.range_i64(-5, 5)),
                    BigInt::from(rng.range_i64(-5, 5)),
                ],
            );
            if delta.is_zero() {
                continue;
            }
            let beta = delta.pow(&ctx.field, p);
            match is_pth_power(&mut ctx, &beta, p, KummerOptions::default()) {
                Ok(PthPowerOutcome::Power { root }) if root.pow(&ctx.field, p) == beta => {}
                _ => ok = false,
            }
        }
    }
    checks.push(Check {
        name: "planted p-th powers recovered",
        ok,
    });

    checks
}

/// Run all property checks, printing one line per check; true iff all pass.
pub fn run() -> bool {
    let checks = run_checks();
    let mut all = true;
    for c in &checks {
        println!("{}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name);
        all &= c.ok;
    }
    all
}

#[cfg(test)]
mod tests {
    #[test]
    fn selftest_passes() {
        assert!(super::run());
    }
}
