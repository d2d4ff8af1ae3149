//! Polynomials over a prime field F_p and their complete factorization.
//!
//! Factorization runs the classical pipeline: squarefree decomposition
//! (with p-th root extraction when the derivative vanishes), distinct-degree
//! splitting, then equal-degree splitting. Equal-degree splitting is
//! Cantor-Zassenhaus for odd p and the trace map for p = 2; linear factors
//! over small fields are found by scanning for roots instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::intpoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

/// Deterministic primality by trial division. Inputs here are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<(), FpError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(FpError::NotPrime(p))
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_scalar(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_scalar(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod_scalar(a, p - 2, p)
}

/// Reduces a big integer into `[0, p)`.
pub fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Polynomial over F_p, residues in `[0, p)`, lowest degree first.
///
/// Arithmetic operators panic when moduli differ; [`ModPoly::gcd`] reports
/// the mismatch as an error instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Builds from arbitrary residues, reducing each mod p. `p` is assumed
    /// prime; use [`reduce`] for validated construction from `IntPoly`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Self::normalized(p, coeffs)
    }

    pub fn from_i64s(p: u64, coeffs: &[i64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        Self::normalized(p, coeffs)
    }

    fn normalized(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_scalar(lc, self.p)),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::normalized(
            self.p,
            self.coeffs.iter().map(|&x| mulmod(x, c, self.p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::normalized(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulmod(c, k as u64 % p, p))
                .collect(),
        )
    }

    fn check_same(&self, other: &Self) -> Result<(), FpError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(FpError::ModulusMismatch(self.p, other.p))
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "modulus mismatch");
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), FpError> {
        self.check_same(d)?;
        let lc = d.leading_coeff().ok_or(FpError::ZeroPolynomial)?;
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv = inv_scalar(lc, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mulmod(rem[k + dd], inv, p);
            rem[k + dd] = 0;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs[..dd].iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - mulmod(c, dc, p)) % p;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::normalized(p, quot), Self::normalized(p, rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self, FpError> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, FpError> {
        self.check_same(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self, FpError> {
        self.check_same(m)?;
        if m.is_zero() {
            return Err(FpError::ZeroPolynomial);
        }
        let mut acc = Self::one(self.p).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Result<Self, FpError> {
        self.powmod(&BigUint::from(e), m)
    }

    /// `self(g(t))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        self.assert_same(g);
        self.coeffs.iter().rev().fold(Self::zero(self.p), |acc, &c| {
            &(&acc * g) + &Self::constant(self.p, c)
        })
    }

    /// Polynomial whose p-th power is `self`; requires every exponent with
    /// a nonzero coefficient to be a multiple of p.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || k % p == 0));
        // a^p = a in F_p, so coefficients carry over unchanged
        Self::normalized(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition: monic pairwise coprime squarefree `g_i`
    /// with `monic(self) = prod g_i^(e_i)`, sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(ModPoly, u32)>, FpError> {
        if self.is_zero() {
            return Err(FpError::ZeroPolynomial);
        }
        let mut out = Vec::new();
        sff_into(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, e)| *e);
        Ok(out)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Result<Self, FpError> {
        Ok(self
            .squarefree_decomposition()?
            .into_iter()
            .fold(Self::one(self.p), |acc, (g, _)| &acc * &g))
    }

    /// Rabin's irreducibility test. Constants are not irreducible.
    pub fn is_irreducible(&self) -> Result<bool, FpError> {
        let n = self.degree().ok_or(FpError::ZeroPolynomial)?;
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let t = Self::t(self.p);
        let frob = |k: usize| -> Result<ModPoly, FpError> {
            let mut h = t.clone();
            for _ in 0..k {
                h = h.powmod_u64(self.p, &f)?;
            }
            Ok(h)
        };
        if frob(n)? != t.rem(&f)? {
            return Ok(false);
        }
        for q in prime_divisors(n as u64) {
            let h = frob(n / q as usize)?;
            if !f.gcd(&(&h - &t))?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical lift to Z with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Complete factorization with the default configuration.
    pub fn factor(&self) -> Result<ModFactorization, FpError> {
        self.factor_with(&FactorConfig::default())
    }

    pub fn factor_with(&self, cfg: &FactorConfig) -> Result<ModFactorization, FpError> {
        let unit = self.leading_coeff().ok_or(FpError::ZeroPolynomial)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut factors = Vec::new();
        for (g, e) in self.squarefree_decomposition()? {
            for (part, d) in distinct_degree(&g) {
                for phi in equal_degree(&part, d, cfg, &mut rng) {
                    factors.push((phi, e));
                }
            }
        }
        factors.sort_by(|a, b| canonical_order(&a.0, &b.0));
        Ok(ModFactorization {
            p: self.p,
            unit,
            factors,
        })
    }
}

/// Degree first, then coefficient vectors compared from the constant term up.
pub fn canonical_order(a: &ModPoly, b: &ModPoly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn sff_into(f: &ModPoly, mult: u32, out: &mut Vec<(ModPoly, u32)>) {
    let p = f.p;
    if f.is_constant() {
        return;
    }
    let c = f.gcd(&f.derivative()).unwrap();
    let mut w = f.div_exact(&c).unwrap();
    let mut c = c;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).unwrap();
        let fac = w.div_exact(&y).unwrap();
        if !fac.is_constant() {
            out.push((fac, i * mult));
        }
        c = c.div_exact(&y).unwrap();
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        sff_into(&c.pth_root(), mult * p as u32, out);
    }
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree, tagged with that degree.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let t = ModPoly::t(p);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = t.clone();
    let mut d = 0usize;
    while let Some(deg) = g.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((g.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.powmod_u64(p, &g).unwrap();
        let fd = g.gcd(&(&h - &t)).unwrap();
        if !fd.is_one() {
            g = g.div_exact(&fd).unwrap();
            h = h.rem(&g).unwrap();
            out.push((fd, d));
        }
    }
    out
}

/// Largest p for which linear factors are found by exhaustive root scan.
const ROOT_SCAN_LIMIT: u64 = 1 << 12;

fn equal_degree(
    f: &ModPoly,
    d: usize,
    cfg: &FactorConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<ModPoly> {
    let p = f.p;
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    if d == 1 && p <= cfg.root_scan_limit {
        return (0..p)
            .filter(|&r| f.eval(r) == 0)
            .map(|r| ModPoly::new(p, vec![(p - r) % p, 1]))
            .collect();
    }
    let exponent = if p == 2 {
        BigUint::zero()
    } else {
        (BigUint::from(p).pow(d as u32) - 1u32) / 2u32
    };
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1)) mod f
            let mut term = a.rem(f).unwrap();
            let mut acc = term.clone();
            for _ in 1..d {
                term = (&term * &term).rem(f).unwrap();
                acc = &acc + &term;
            }
            acc
        } else {
            &a.powmod(&exponent, f).unwrap() - &ModPoly::one(p)
        };
        let g = f.gcd(&b).unwrap();
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let rest = f.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, d, cfg, rng);
            out.extend(equal_degree(&rest, d, cfg, rng));
            return out;
        }
    }
}

/// Reduces an integer polynomial mod a validated prime.
pub fn reduce(f: &IntPoly, p: u64) -> Result<ModPoly, FpError> {
    check_prime(p)?;
    Ok(reduce_unchecked(f, p))
}

pub(crate) fn reduce_unchecked(f: &IntPoly, p: u64) -> ModPoly {
    ModPoly::normalized(p, f.coeffs().iter().map(|c| reduce_int(c, p)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Seed of the per-call PRNG driving equal-degree splitting.
    pub seed: u64,
    /// Linear factors over F_p with p at most this are found by root scan.
    pub root_scan_limit: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            seed: 0x5eed_f00d,
            root_scan_limit: ROOT_SCAN_LIMIT,
        }
    }
}

/// `unit * prod phi_i^(e_i)` with monic irreducible, pairwise distinct
/// `phi_i` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    pub fn reconstruct(&self) -> ModPoly {
        self.factors
            .iter()
            .fold(ModPoly::constant(self.p, self.unit), |acc, (phi, e)| {
                &acc * &phi.pow(*e as u64)
            })
    }

    /// Position of `phi` (after making it monic) in the factor list.
    pub fn index_of(&self, phi: &ModPoly) -> Option<usize> {
        let phi = phi.monic();
        self.factors.iter().position(|(f, _)| *f == phi)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        self.assert_same(rhs);
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ModPoly::normalized(
            p,
            (0..n).map(|k| (self.coeff(k) + rhs.coeff(k)) % p).collect(),
        )
    }
}

impl Sub for &ModPoly {
    type Output = ModPoly;
    fn sub(self, rhs: &ModPoly) -> ModPoly {
        self + &(-rhs)
    }
}

impl Neg for &ModPoly {
    type Output = ModPoly;
    fn neg(self) -> ModPoly {
        let p = self.p;
        ModPoly::normalized(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        self.assert_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        let pp = p as u128;
        let wide = p > u32::MAX as u64;
        // (p-1)^2 summed: reduce periodically to stay inside u128
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut acc[i + j];
                if wide {
                    *slot = (*slot + a as u128 * b as u128) % pp;
                } else {
                    *slot += a as u128 * b as u128;
                    if *slot >= 1u128 << 120 {
                        *slot %= pp;
                    }
                }
            }
        }
        ModPoly::normalized(p, acc.into_iter().map(|c| (c % pp) as u64).collect())
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly[F_{}]({self})", self.p)
    }
}
