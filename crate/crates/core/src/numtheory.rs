//! Small integer helpers: trial factorization, valuations, prime supports.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Result of trial division. Every prime factor `<= bound` is listed; a
/// cofactor other than 1 has no prime factor `<= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFactorization {
    pub primes: Vec<(u64, u32)>,
    pub cofactor: BigUint,
}

impl TrialFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }
}

/// Factors `|n|` by trial division up to `bound`. If the remaining cofactor
/// is below `bound^2` it is necessarily prime and is reported as such.
pub fn trial_factor(n: &BigInt, bound: u64) -> TrialFactorization {
    let mut rest = n.magnitude().clone();
    let mut primes = Vec::new();
    if rest.is_zero() {
        return TrialFactorization {
            primes,
            cofactor: rest,
        };
    }
    let mut d = 2u64;
    while d <= bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            primes.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            if let Some(q) = rest.to_u64() {
                primes.push((q, 1));
                rest = BigUint::one();
            }
        }
    }
    TrialFactorization {
        primes,
        cofactor: rest,
    }
}

/// `v_p(n)`; `None` for `n = 0`.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let pp = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pp);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Whether every prime dividing `a` also divides `b` (`a`, `b` nonzero).
/// Decided exactly by stripping common factors, without factoring.
pub fn support_subset(a: &BigInt, b: &BigInt) -> bool {
    let b = b.magnitude();
    let mut a = a.magnitude().clone();
    loop {
        if a.is_one() {
            return true;
        }
        let g = a.gcd(b);
        if g.is_one() {
            return false;
        }
        while (&a % &g).is_zero() {
            a /= &g;
        }
    }
}

/// Whether `a` and `b` have the same set of prime divisors.
pub fn same_support(a: &BigInt, b: &BigInt) -> bool {
    support_subset(a, b) && support_subset(b, a)
}

/// All primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return vec![];
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_factor_cases() {
        let f = trial_factor(&BigInt::from(-13824), 100);
        assert_eq!(f.primes, vec![(2, 9), (3, 3)]);
        assert!(f.is_complete());
        // 1000003 is prime and below 1000^2 after nothing divides
        let f = trial_factor(&BigInt::from(4 * 1_000_003u64), 1000);
        assert_eq!(f.primes, vec![(2, 2), (1_000_003, 1)]);
        // 1000003^2 is not certifiable with bound 1000
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64);
        let f = trial_factor(&big, 1000);
        assert!(f.primes.is_empty());
        assert_eq!(f.cofactor, big.magnitude().clone());
    }

    #[test]
    fn supports() {
        let d3 = BigInt::from(-72);
        assert!(same_support(&d3, &BigInt::from(6)));
        assert!(!same_support(&d3, &BigInt::from(3)));
        assert!(support_subset(&BigInt::from(9), &BigInt::from(-6)));
        assert_eq!(valuation(&BigInt::from(1086), 2), Some(1));
        assert_eq!(valuation(&BigInt::zero(), 2), None);
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
