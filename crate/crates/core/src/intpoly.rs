//! Dense univariate polynomials over Z with arbitrary-precision coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exec::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntPolyError {
    #[error("divisor is not monic (leading coefficient {0})")]
    NonMonicDivisor(BigInt),
    #[error("coefficient at index {index} is not divisible by {divisor}")]
    InexactDivision { index: usize, divisor: BigInt },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

/// Polynomial in `t` with integer coefficients.
///
/// `coeffs[k]` is the coefficient of `t^k`. The highest stored coefficient is
/// always nonzero; the zero polynomial stores nothing.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Products whose schoolbook cost (len_a * len_b) exceeds this are spread
/// over output coefficients.
const PAR_MUL_THRESHOLD: usize = 1 << 14;

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// Builds from coefficients listed lowest degree first.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let out_len = a.len() + b.len() - 1;
        let cell = |k: usize| {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let mut acc = BigInt::zero();
            for i in lo..=hi {
                acc += &a[i] * &b[k - i];
            }
            acc
        };
        let exec = if a.len() * b.len() >= PAR_MUL_THRESHOLD {
            exec
        } else {
            Exec::Sequential
        };
        Self::from_coeffs(exec.map_range(out_len, cell))
    }

    pub fn square_with(&self, exec: Exec) -> Self {
        self.mul_with(self, exec)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Division by a monic polynomial, exact over Z: `self = d*q + r`
    /// with `deg r < deg d`.
    pub fn monic_divmod(&self, d: &Self) -> Result<(Self, Self), IntPolyError> {
        let lc = d.leading_coeff().ok_or(IntPolyError::ZeroPolynomial)?;
        if !lc.is_one() {
            return Err(IntPolyError::NonMonicDivisor(lc.clone()));
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self, IntPolyError> {
        let lc = d.leading_coeff().ok_or(IntPolyError::ZeroPolynomial)?;
        let dd = d.coeffs.len() - 1;
        let Some(df) = self.degree() else {
            return Ok(Self::zero());
        };
        if df < dd {
            return Ok(self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut steps = 0u32;
        let total = (df - dd + 1) as u32;
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            for x in rem.iter_mut() {
                *x *= lc;
            }
            let shift = top - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &c * dc;
            }
            steps += 1;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        let fix = num_traits::pow(lc.clone(), (total - steps) as usize);
        Ok(Self::from_coeffs(rem).scale(&fix))
    }

    /// `self(g(t))`, by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * g) + &Self::constant(c.clone())
        })
    }

    /// `self(t + a)`.
    pub fn shift(&self, a: &BigInt) -> Self {
        if a.is_zero() || self.is_zero() {
            return self.clone();
        }
        // Horner in place: repeated synthetic division by (t - a).
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let tmp = &c[j + 1] * a;
                c[j] += tmp;
            }
        }
        Self::from_coeffs(c)
    }

    /// Coefficientwise exact division by a nonzero integer.
    pub fn exact_div_scalar(&self, m: &BigInt) -> Result<Self, IntPolyError> {
        if m.is_zero() {
            return Err(IntPolyError::InexactDivision {
                index: 0,
                divisor: m.clone(),
            });
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (index, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(m);
            if !r.is_zero() {
                return Err(IntPolyError::InexactDivision {
                    index,
                    divisor: m.clone(),
                });
            }
            out.push(q);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Resultant by the subresultant pseudo-remainder sequence.
    pub fn resultant(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let ca = self.content();
        let cb = other.content();
        let mut a = self.exact_div_scalar(&ca).expect("content divides");
        let mut b = other.exact_div_scalar(&cb).expect("content divides");
        let deg = |p: &Self| p.degree().unwrap();
        let scale = num_traits::pow(ca, deg(&b)) * num_traits::pow(cb, deg(&a));
        let mut sign = BigInt::one();
        if deg(&a) < deg(&b) {
            std::mem::swap(&mut a, &mut b);
            if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
                sign = -sign;
            }
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        while deg(&b) > 0 {
            let delta = deg(&a) - deg(&b);
            if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
                sign = -sign;
            }
            let r = a.pseudo_rem(&b).expect("b nonzero");
            if r.is_zero() {
                return BigInt::zero();
            }
            a = b;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            b = r.exact_div_scalar(&divisor).expect("subresultant division is exact");
            g = a.leading_coeff().unwrap().clone();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
            };
        }
        let da = deg(&a);
        let lb = b.leading_coeff().unwrap();
        let h = if da == 0 {
            // both constants only when the inputs were constant
            BigInt::one()
        } else {
            num_traits::pow(lb.clone(), da) / num_traits::pow(h, da - 1)
        };
        sign * scale * h
    }

    /// `(-1)^(n(n-1)/2) * res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt, IntPolyError> {
        let n = self.degree().ok_or(IntPolyError::ZeroPolynomial)?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let r = self.resultant(&self.derivative());
        let r = r / self.leading_coeff().unwrap();
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.mul_with(rhs, Exec::default())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Renders highest degree first, e.g. `t^4 - 6*t^2 + 6`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}
