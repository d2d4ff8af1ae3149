//! Brute-force ground truth for `p | [O_K : Z[θ]]`.
//!
//! `p` divides the index iff some `α = (a₀ + a₁θ + … + a_{n−1}θ^{n−1})/p`
//! with `a ≢ 0 (mod p)` is an algebraic integer. Integrality is read off
//! the characteristic polynomial of the matrix of multiplication by `α`,
//! computed exactly over Q. Scaling `a` by a unit mod p or changing it by
//! multiples of p preserves integrality, so one vector per projective class
//! of `F_p^n` is enough. Nothing here uses factorization mod p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::fppoly;
use crate::intpoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("p^deg = {p}^{degree} exceeds the enumeration cap {cap}")]
    CapExceeded { p: u64, degree: usize, cap: u64 },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Square matrix of exact rationals (always kept in lowest terms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix { n, rows }
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigRational::one();
        }
        RationalMatrix { n, rows }
    }

    /// Matrix of multiplication by `θ` on the basis `1, θ, …, θ^{n−1}`.
    pub fn companion(f: &IntPoly) -> Self {
        Self::from_int_rows(&companion_int(f))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    /// Characteristic polynomial `det(tI − M)`, lowest degree first, via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<BigRational> {
        let n = self.n;
        let mut h = self.rows.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if piv != m {
                h.swap(piv, m);
                for row in h.iter_mut() {
                    row.swap(piv, m);
                }
            }
            for i in m + 1..n {
                if h[i][m - 1].is_zero() {
                    continue;
                }
                let u = &h[i][m - 1] / &h[m][m - 1];
                for j in 0..n {
                    let t = &u * &h[m][j];
                    h[i][j] -= t;
                }
                for row in h.iter_mut() {
                    let t = &u * &row[i];
                    row[m] += t;
                }
            }
        }
        // p_k = (t − h_kk) p_{k−1} − Σ_{i<k} h_ik (∏_{j=i+1..k} h_{j,j−1}) p_{i−1}
        let mut polys: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![BigRational::zero(); k + 2];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &h[k][k];
            }
            let mut prod = BigRational::one();
            for i in (0..k).rev() {
                prod *= &h[i + 1][i];
                if prod.is_zero() {
                    break;
                }
                let coef = &h[i][k] * &prod;
                for (d, c) in polys[i].iter().enumerate() {
                    next[d] -= &coef * c;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

fn companion_int(f: &IntPoly) -> Vec<Vec<BigInt>> {
    let n = f.degree().unwrap_or(0);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        m[i][n - 1] = -f.coeff(i);
    }
    m
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Characteristic polynomial of `a` modulo `m`, lowest degree first, by
/// Berkowitz's division-free recurrence: growing the leading block
/// `[[A, C], [R, d]]` gives `χ' = (t − d)·χ − R·adj(tI − A)·C`, with
/// `adj(tI − A) = Σ_k t^{r−1−k} Σ_{i≤k} q_i A^{k−i}` (`q` = `χ` from the top).
pub fn berkowitz_mod(a: &[Vec<u64>], m: u64) -> Vec<u64> {
    let n = a.len();
    let mm = m as u128;
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % mm) as u64;
    let add = |x: u64, y: u64| ((x as u128 + y as u128) % mm) as u64;
    let sub = |x: u64, y: u64| ((x as u128 + mm - y as u128 % mm) % mm) as u64;
    // highest degree first
    let mut q: Vec<u64> = vec![1 % m];
    for r in 0..n {
        let d = a[r][r] % m;
        // s_j = R A^j C for j < r
        let mut s = Vec::with_capacity(r);
        let mut v: Vec<u64> = (0..r).map(|i| a[i][r] % m).collect();
        for _ in 0..r {
            s.push((0..r).fold(0, |acc, i| add(acc, mul(a[r][i], v[i]))));
            v = (0..r)
                .map(|i| (0..r).fold(0, |acc, j| add(acc, mul(a[i][j], v[j]))))
                .collect();
        }
        let mut next = vec![0u64; r + 2];
        for i in 0..=r + 1 {
            let hi = if i <= r { q[i] } else { 0 };
            let lo = if i >= 1 { mul(d, q[i - 1]) } else { 0 };
            next[i] = sub(hi, lo);
        }
        for k in 0..r {
            let t = (0..=k).fold(0, |acc, i| add(acc, mul(q[i], s[k - i])));
            next[k + 2] = sub(next[k + 2], t);
        }
        q = next;
    }
    q.reverse();
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `p^deg f` the enumeration accepts.
    pub enum_cap: u64,
    pub exec: Exec,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            enum_cap: 1_000_000,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub p: u64,
    /// Whether p divides the index.
    pub divisible: bool,
    /// Lexicographically smallest normalized `a` with `a(θ)/p` integral.
    pub certificate: Option<Vec<u64>>,
    /// Characteristic polynomial of the certificate element.
    pub certificate_charpoly: Option<IntPoly>,
    /// Number of projective classes of `F_p^n`.
    pub classes: u64,
}

/// Decides `p | [O_K : Z[θ]]` by exhaustive search over `F_p^n`.
///
/// `f` must be monic and irreducible over Q (the latter is not checked).
pub fn index_divisible_by_p(f: &IntPoly, p: u64) -> Result<OracleVerdict, OracleError> {
    index_divisible_by_p_with(f, p, &OracleConfig::default())
}

pub fn index_divisible_by_p_with(
    f: &IntPoly,
    p: u64,
    cfg: &OracleConfig,
) -> Result<OracleVerdict, OracleError> {
    if !fppoly::is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    if !f.is_monic() {
        return Err(OracleError::NotMonic);
    }
    let n = f.degree().unwrap();
    let total = p
        .checked_pow(n as u32)
        .filter(|&t| t <= cfg.enum_cap)
        .ok_or(OracleError::CapExceeded {
            p,
            degree: n,
            cap: cfg.enum_cap,
        })?;
    let classes = (total - 1) / (p - 1);

    let comp = companion_int(f);
    let mut powers = Vec::with_capacity(n);
    let mut cur: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    for _ in 0..n {
        let next = mat_mul(&cur, &comp);
        powers.push(cur);
        cur = next;
    }
    let inv_p = BigRational::new(BigInt::one(), BigInt::from(p));
    // χ_{A/p}(t) = p^{-n} χ_A(p t), so the t^k coefficient of χ_α is
    // c_k / p^{n−k}: integrality only needs χ_A modulo p^n = `total`.
    let powers_mod: Vec<Vec<Vec<u64>>> = powers
        .iter()
        .map(|m| {
            m.iter()
                .map(|r| r.iter().map(|x| fppoly::reduce_int(x, total)).collect())
                .collect()
        })
        .collect();

    // Index k encodes a with a_0 as the most significant base-p digit, so
    // increasing k is lexicographic order on (a_0, …, a_{n−1}).
    let decode = |k: u64| -> Vec<u64> {
        let mut a = vec![0u64; n];
        let mut x = k;
        for slot in a.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        a
    };
    let probe = |k: u64| -> Option<(Vec<u64>, IntPoly)> {
        let a = decode(k);
        // projective representative: first nonzero coordinate is 1
        if a.iter().find(|&&c| c != 0) != Some(&1) {
            return None;
        }
        let mut acc = vec![vec![0u64; n]; n];
        for (ai, pw) in a.iter().zip(&powers_mod) {
            for (r, pr) in acc.iter_mut().zip(pw) {
                for (x, y) in r.iter_mut().zip(pr) {
                    *x = ((*x as u128 + *ai as u128 * *y as u128) % total as u128) as u64;
                }
            }
        }
        let c = berkowitz_mod(&acc, total);
        let integral = c
            .iter()
            .enumerate()
            .take(n)
            .all(|(deg, ck)| ck % p.pow((n - deg) as u32) == 0);
        if !integral {
            return None;
        }
        // exact confirmation over Q, which also yields the certificate
        let int_acc: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        a.iter()
                            .zip(&powers)
                            .map(|(ai, pw)| BigInt::from(*ai) * &pw[i][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let cp = RationalMatrix::from_int_rows(&int_acc).scale(&inv_p).charpoly();
        assert!(
            cp.iter().all(|c| c.is_integer()),
            "modular and exact characteristic polynomials disagree"
        );
        let cp = IntPoly::from_coeffs(cp.into_iter().map(|c| c.to_integer()).collect());
        Some((a, cp))
    };
    let hit = cfg.exec.find_first(total, probe);
    Ok(OracleVerdict {
        p,
        divisible: hit.is_some(),
        certificate: hit.as_ref().map(|(a, _)| a.clone()),
        certificate_charpoly: hit.map(|(_, cp)| cp),
        classes,
    })
}
