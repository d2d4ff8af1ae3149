//! Corpora and independent reference computations shared by the
//! integration tests. Nothing here calls into the criteria module.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use pmaximal::fppoly::{self, ModPoly};
use pmaximal::intpoly::IntPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_monic(rng: &mut impl Rng, deg: usize, bound: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    IntPoly::from_i64s(&c)
}

pub fn max_abs_coeff(f: &IntPoly) -> BigInt {
    f.coeffs()
        .iter()
        .map(|c| if c < &BigInt::zero() { -c } else { c.clone() })
        .max()
        .unwrap_or_default()
}

/// Squarefree over Q, checked through the discriminant.
pub fn squarefree(f: &IntPoly) -> bool {
    f.degree().is_some_and(|d| d >= 1) && !f.discriminant().unwrap().is_zero()
}

/// Sufficient test for irreducibility over Q of a monic polynomial: it is
/// irreducible modulo some prime.
pub fn irreducible_mod_some_prime(f: &IntPoly) -> bool {
    (7u64..100)
        .filter(|&q| fppoly::is_prime(q))
        .any(|q| fppoly::reduce(f, q).unwrap().is_irreducible().unwrap())
}

/// Monic `f` whose reduction mod `p` has a repeated factor, perturbed by `p`
/// or `p²` times a small polynomial; these exercise the interesting branches
/// far more often than uniform sampling.
pub fn near_square(rng: &mut impl Rng, deg: usize, p: u64, p_power: u32, bound: i64) -> IntPoly {
    let phi_deg = rng.gen_range(1..=(deg / 2).max(1));
    let phi = random_monic(rng, phi_deg, 3);
    let rest = deg - 2 * phi_deg;
    let psi = random_monic(rng, rest, 3);
    let base = &(&phi * &phi) * &psi;
    let r: Vec<i64> = (0..deg).map(|_| rng.gen_range(-2..=2)).collect();
    let scale = BigInt::from(p).pow(p_power);
    let pert = IntPoly::from_i64s(&r).scale(&scale);
    let f = &base + &pert;
    if max_abs_coeff(&f) > BigInt::from(bound) {
        random_monic(rng, deg, bound)
    } else {
        f
    }
}

/// Monic squarefree polynomials of degree 2..=8 with coefficients in
/// [-50, 50].
pub fn squarefree_corpus(seed: u64, count: usize) -> Vec<IntPoly> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let deg = rng.gen_range(2..=8);
        let f = if out.len() % 2 == 0 {
            random_monic(&mut rng, deg, 50)
        } else {
            let p = SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())];
            let k = rng.gen_range(1..=2);
            near_square(&mut rng, deg, p, k, 50)
        };
        if squarefree(&f) {
            out.push(f);
        }
    }
    out
}

/// Monic irreducible polynomials of degree 2..=6 with coefficients in
/// [-20, 20].
pub fn irreducible_corpus(seed: u64, count: usize) -> Vec<IntPoly> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let deg = rng.gen_range(2..=6);
        let f = if out.len() % 2 == 0 {
            random_monic(&mut rng, deg, 20)
        } else {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let k = rng.gen_range(1..=2);
            near_square(&mut rng, deg, p, k, 20)
        };
        if irreducible_mod_some_prime(&f) {
            out.push(f);
        }
    }
    out
}

/// `f ∈ (p, mu)²` decided from the `mu`-adic digits: with
/// `f = r0 + r1·mu + mu²·q` (`deg r0, deg r1 < deg mu`), membership holds iff
/// `p² | r0` and `p | r1`.
pub fn in_ideal_square(f: &IntPoly, p: u64, mu: &IntPoly) -> bool {
    let (q, r0) = f.monic_divmod(mu).unwrap();
    let (_, r1) = q.monic_divmod(mu).unwrap();
    let p = BigInt::from(p);
    let p2 = &p * &p;
    r0.coeffs().iter().all(|c| c.is_multiple_of(&p2)) && r1.coeffs().iter().all(|c| c.is_multiple_of(&p))
}

/// `Φ_n` by dividing `t^n − 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic(n: u64) -> IntPoly {
    let mut f = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = f.monic_divmod(&cyclotomic(d)).unwrap();
            assert!(r.is_zero());
            f = q;
        }
    }
    f
}

/// Minimal polynomial of `ζ_n + ζ_n⁻¹`: writes the palindromic `Φ_n` as
/// `t^m Q(t + 1/t)` and returns `Q`.
pub fn real_cyclotomic(n: u64) -> IntPoly {
    match n {
        1 => return IntPoly::from_i64s(&[-2, 1]),
        2 => return IntPoly::from_i64s(&[2, 1]),
        _ => {}
    }
    let phi = cyclotomic(n);
    let m = phi.degree().unwrap() / 2;
    let t2_plus_1 = IntPoly::from_i64s(&[1, 0, 1]);
    let mut rest = phi;
    let mut q = vec![BigInt::zero(); m + 1];
    for k in (0..=m).rev() {
        let b = rest.coeff(m + k);
        // t^{m-k} (t² + 1)^k = t^m (t + 1/t)^k
        let term = t2_plus_1.pow(k as u32).shl(m - k).scale(&b);
        rest = &rest - &term;
        q[k] = b;
    }
    assert!(rest.is_zero());
    IntPoly::from_coeffs(q)
}

/// Random monic irreducible factor of `f̄`, lifted canonically.
pub fn random_factor_lift(rng: &mut impl Rng, f: &IntPoly, p: u64) -> Option<IntPoly> {
    let fa = fppoly::reduce(f, p).unwrap().factor().unwrap();
    if fa.is_empty() {
        return None;
    }
    let (phi, _) = &fa.factors[rng.gen_range(0..fa.len())];
    Some(phi.lift())
}

pub fn random_poly(rng: &mut impl Rng, max_deg: usize, bound: i64) -> IntPoly {
    let deg = rng.gen_range(0..=max_deg);
    let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntPoly::from_i64s(&c)
}

/// `gcd(mu, g, h)` over F_p computed with plain Euclid on residues.
pub fn gcd3_mod_p(p: u64, mu: &IntPoly, g: &IntPoly, h: &IntPoly) -> ModPoly {
    let r = |x: &IntPoly| fppoly::reduce(x, p).unwrap();
    let a = r(mu).gcd(&r(g)).unwrap();
    a.gcd(&r(h)).unwrap()
}
