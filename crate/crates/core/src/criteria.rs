//! p-maximality of `Z[θ]` for `θ` a root of a monic `f`.
//!
//! Three routes are implemented and cross-checked:
//!
//! * the global test on the factorization `f̄ = ∏ φᵢ^eᵢ` and the cofactor
//!   `g = (f − ∏ μᵢ^eᵢ)/p` ([`dedekind_p_maximal`]);
//! * a local test per maximal ideal `(p, μ(θ))` with `μ` a lift of one
//!   `φᵢ`: `f ∉ (p, μ(t))²`, equivalently `gcd(μ̄, ḡ, h̄) = 1` for
//!   `f = μh + pg`, equivalently the localization is a DVR
//!   ([`dvr_local_test`], [`p_maximal_local`]);
//! * witness translation between the three ways of certifying failure
//!   ([`convert_witness`]).
//!
//! Maximal ideals above p are represented by the irreducible factors of f̄;
//! no ideal arithmetic in `Z[θ]` is needed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::fppoly::{self, FactorConfig, FpError, ModFactorization, ModPoly};
use crate::intpoly::{IntPoly, IntPolyError};
use crate::numtheory::{primes_up_to, trial_factor, valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error(transparent)]
    Field(#[from] FpError),
    #[error(transparent)]
    Poly(#[from] IntPolyError),
    #[error("{0} must be monic")]
    NotMonic(&'static str),
    #[error("mu = {mu} is not irreducible mod {p}")]
    MuNotIrreducible { mu: IntPoly, p: u64 },
    #[error("mu = {mu} does not divide f mod {p}")]
    MuDoesNotDivide { mu: IntPoly, p: u64 },
    #[error("f = {0} is not squarefree over Z")]
    NotSquarefreeOverZ(IntPoly),
    #[error("input does not certify failure of p-maximality: {reason}")]
    NotAWitness {
        reason: String,
        verdict: Option<Box<LocalReport>>,
    },
    #[error("local criteria disagree for f = {f}, p = {p}, mu = {mu}: {detail}")]
    EquivalenceViolation {
        f: IntPoly,
        p: u64,
        mu: IntPoly,
        detail: String,
    },
}

pub type Result<T, E = CriteriaError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaConfig {
    pub factor: FactorConfig,
    /// Trial-division bound for factoring discriminants.
    pub trial_bound: u64,
    pub exec: Exec,
}

impl Default for CriteriaConfig {
    fn default() -> Self {
        CriteriaConfig {
            factor: FactorConfig::default(),
            trial_bound: 1_000_000,
            exec: Exec::default(),
        }
    }
}

/// Local verdict at the maximal ideal `(p, mu(θ))`.
///
/// Constructed only through [`dvr_local_test`], which refuses to return a
/// report whose four local conditions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub f: IntPoly,
    pub p: u64,
    pub mu: IntPoly,
    /// `f = mu*h + p*g`, `h` the quotient of monic division.
    pub h: IntPoly,
    pub g: IntPoly,
    /// Multiplicity of `mu` mod p in f̄.
    pub multiplicity: u32,
    pub in_m_squared: bool,
    /// `gcd(mū, ḡ, h̄)`, monic.
    pub gcd_triple: ModPoly,
    /// `gcd(mū, h̄) = 1 or gcd(mū, ḡ) = 1`.
    pub pairwise_coprime: bool,
    pub dvr: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindReport {
    pub f: IntPoly,
    pub p: u64,
    pub factorization: ModFactorization,
    /// Canonical lifts of the factors, same order.
    pub lifts: Vec<IntPoly>,
    /// `f = ∏ lifts[i]^(e_i) + p*g`.
    pub g: IntPoly,
    /// Indices `i` with `e_i >= 2` and `φ_i | ḡ`.
    pub offending: BTreeSet<usize>,
    pub p_maximal: bool,
}

/// Outcome of running the local test at every maximal ideal above p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVerdict {
    pub p: u64,
    pub p_maximal: bool,
    pub reports: Vec<LocalReport>,
}

/// Failure certificate expressed in all three formalisms at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTriple {
    pub p: u64,
    /// The shared irreducible factor of f̄.
    pub phi: ModPoly,
    /// Position of `phi` in the canonical factorization of f̄.
    pub dedekind_index: usize,
    /// `F` of the maximal ideal `(p, F(t))` of `Z[t]` with `f ∈ (p, F(t))²`.
    pub uchida: IntPoly,
    /// `F` of the maximal ideal `(p, F(θ))` of `Z[θ]` whose localization is
    /// not a DVR.
    pub lueneburg: IntPoly,
}

impl WitnessTriple {
    pub fn uchida_ideal(&self) -> String {
        format!("({}, {})", self.p, self.uchida)
    }

    pub fn lueneburg_ideal(&self) -> String {
        let rendered = self.lueneburg.to_string().replace('t', "θ");
        format!("({}, {})", self.p, rendered)
    }
}

/// A failure certificate in one of the three formalisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessInput {
    /// Prime and index into the canonical factorization of f̄.
    Dedekind { p: u64, index: usize },
    /// Prime and `F` with `(p, F(t))` maximal in `Z[t]`.
    Uchida { p: u64, big_f: IntPoly },
    /// Prime and the irreducible `φ` naming the ideal `(p, lift(φ)(θ))`.
    Lueneburg { p: u64, phi: ModPoly },
}

fn require_monic(f: &IntPoly, what: &'static str) -> Result<()> {
    if f.is_monic() {
        Ok(())
    } else {
        Err(CriteriaError::NotMonic(what))
    }
}

/// `(h, g)` with `f = mu*h + p*g`, `h` the monic quotient.
pub fn canonical_decomposition(f: &IntPoly, p: u64, mu: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    fppoly::check_prime(p)?;
    require_monic(f, "f")?;
    require_monic(mu, "mu")?;
    let mu_bar = fppoly::reduce_unchecked(mu, p);
    if !mu_bar.is_irreducible()? {
        return Err(CriteriaError::MuNotIrreducible { mu: mu.clone(), p });
    }
    let (h, r) = f.monic_divmod(mu)?;
    let g = r
        .exact_div_scalar(&BigInt::from(p))
        .map_err(|_| CriteriaError::MuDoesNotDivide { mu: mu.clone(), p })?;
    Ok((h, g))
}

/// `gcd(mū, ḡ, h̄)` over F_p.
pub fn gcd_triple(p: u64, mu: &IntPoly, h: &IntPoly, g: &IntPoly) -> ModPoly {
    let mu_bar = fppoly::reduce_unchecked(mu, p);
    let h_bar = fppoly::reduce_unchecked(h, p);
    let g_bar = fppoly::reduce_unchecked(g, p);
    mu_bar
        .gcd(&g_bar)
        .and_then(|x| x.gcd(&h_bar))
        .expect("same modulus")
}

/// Whether `f ∈ (p, mu(t))²`: both h̄ and ḡ of the canonical
/// decomposition are divisible by mū.
pub fn ideal_square_membership(f: &IntPoly, p: u64, mu: &IntPoly) -> Result<bool> {
    let (h, g) = canonical_decomposition(f, p, mu)?;
    let mu_bar = fppoly::reduce_unchecked(mu, p);
    Ok(mu_bar.divides(&fppoly::reduce_unchecked(&h, p))
        && mu_bar.divides(&fppoly::reduce_unchecked(&g, p)))
}

/// Membership in `(p, mu)²` read off the mu-adic expansion
/// `f = r0 + r1*mu + mu²*q` (`deg r0, r1 < deg mu`): `f ∈ (p, mu)²` iff
/// `p² | r0` and `p | r1`. Shares nothing with the decomposition route.
fn mu_adic_membership(f: &IntPoly, p: u64, mu: &IntPoly) -> bool {
    let (q1, r0) = f.monic_divmod(mu).expect("mu monic");
    let (_, r1) = q1.monic_divmod(mu).expect("mu monic");
    let p = BigInt::from(p);
    let p2 = &p * &p;
    r0.coeffs().iter().all(|c| c.is_multiple_of(&p2)) && r1.coeffs().iter().all(|c| c.is_multiple_of(&p))
}

fn multiplicity(f_bar: &ModPoly, phi: &ModPoly) -> u32 {
    let mut e = 0;
    let mut rest = f_bar.clone();
    while let Some(q) = rest.div_exact(phi) {
        rest = q;
        e += 1;
    }
    e
}

/// Local DVR test at `(p, mu(θ))`, with all four equivalent local
/// conditions computed independently and required to agree.
pub fn dvr_local_test(f: &IntPoly, p: u64, mu: &IntPoly) -> Result<LocalReport> {
    let (h, g) = canonical_decomposition(f, p, mu)?;
    let mu_bar = fppoly::reduce_unchecked(mu, p);
    let h_bar = fppoly::reduce_unchecked(&h, p);
    let g_bar = fppoly::reduce_unchecked(&g, p);

    let in_m_squared = mu_bar.divides(&h_bar) && mu_bar.divides(&g_bar);
    let triple = gcd_triple(p, mu, &h, &g);
    let pairwise = mu_bar.gcd(&h_bar)?.is_one() || mu_bar.gcd(&g_bar)?.is_one();
    let adic = mu_adic_membership(f, p, mu);

    let violation = |detail: String| CriteriaError::EquivalenceViolation {
        f: f.clone(),
        p,
        mu: mu.clone(),
        detail,
    };
    if adic != in_m_squared {
        return Err(violation(format!(
            "decomposition membership {in_m_squared} vs mu-adic membership {adic}"
        )));
    }
    if triple.is_one() != !in_m_squared {
        return Err(violation(format!(
            "gcd triple {triple} vs membership {in_m_squared}"
        )));
    }
    if pairwise != triple.is_one() {
        return Err(violation(format!(
            "pairwise coprimality {pairwise} vs gcd triple {triple}"
        )));
    }
    let f_bar = fppoly::reduce_unchecked(f, p);
    Ok(LocalReport {
        f: f.clone(),
        p,
        mu: mu.clone(),
        h,
        g,
        multiplicity: multiplicity(&f_bar, &mu_bar),
        in_m_squared,
        gcd_triple: triple,
        pairwise_coprime: pairwise,
        dvr: !in_m_squared,
    })
}

/// Exact squarefreeness over Q for monic `f`: try a few primes for a
/// coprime `gcd(f̄, f̄')`, fall back to the discriminant.
pub fn is_squarefree_over_z(f: &IntPoly) -> bool {
    if f.degree().unwrap_or(0) <= 1 {
        return !f.is_zero();
    }
    for q in primes_up_to(600).into_iter().skip(1).take(40) {
        let fb = fppoly::reduce_unchecked(f, q);
        if fb.degree() != f.degree() {
            continue;
        }
        if fb.gcd(&fb.derivative()).is_ok_and(|g| g.is_one()) {
            return true;
        }
    }
    f.discriminant().is_ok_and(|d| !d.is_zero())
}

fn check_input(f: &IntPoly, p: u64) -> Result<()> {
    fppoly::check_prime(p)?;
    require_monic(f, "f")?;
    if !is_squarefree_over_z(f) {
        return Err(CriteriaError::NotSquarefreeOverZ(f.clone()));
    }
    Ok(())
}

pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<DedekindReport> {
    dedekind_p_maximal_with(f, p, &CriteriaConfig::default())
}

pub fn dedekind_p_maximal_with(f: &IntPoly, p: u64, cfg: &CriteriaConfig) -> Result<DedekindReport> {
    check_input(f, p)?;
    let f_bar = fppoly::reduce_unchecked(f, p);
    let factorization = f_bar.factor_with(&cfg.factor)?;
    let lifts: Vec<IntPoly> = factorization.factors.iter().map(|(phi, _)| phi.lift()).collect();
    let product = lifts
        .iter()
        .zip(&factorization.factors)
        .fold(IntPoly::one(), |acc, (mu, (_, e))| &acc * &mu.pow(*e));
    let g = (f - &product).exact_div_scalar(&BigInt::from(p))?;
    let g_bar = fppoly::reduce_unchecked(&g, p);
    let offending = factorization
        .factors
        .iter()
        .enumerate()
        .filter(|(_, (phi, e))| *e >= 2 && phi.divides(&g_bar))
        .map(|(i, _)| i)
        .collect::<BTreeSet<_>>();
    Ok(DedekindReport {
        f: f.clone(),
        p,
        p_maximal: offending.is_empty(),
        factorization,
        lifts,
        g,
        offending,
    })
}

/// Offending set computed with caller-supplied lifts. Lifts must reduce
/// to the factors of the canonical factorization, in order.
pub fn dedekind_offending_with_lifts(
    f: &IntPoly,
    p: u64,
    factorization: &ModFactorization,
    lifts: &[IntPoly],
) -> Result<BTreeSet<usize>> {
    let product = lifts
        .iter()
        .zip(&factorization.factors)
        .fold(IntPoly::one(), |acc, (mu, (_, e))| &acc * &mu.pow(*e));
    let g = (f - &product).exact_div_scalar(&BigInt::from(p))?;
    let g_bar = fppoly::reduce_unchecked(&g, p);
    Ok(factorization
        .factors
        .iter()
        .enumerate()
        .filter(|(_, (phi, e))| *e >= 2 && phi.divides(&g_bar))
        .map(|(i, _)| i)
        .collect())
}

/// The distinct irreducible factors of f̄, one per maximal ideal above p.
pub fn maximal_ideals_above(f: &IntPoly, p: u64) -> Result<Vec<ModPoly>> {
    maximal_ideals_above_with(f, p, &CriteriaConfig::default())
}

pub fn maximal_ideals_above_with(f: &IntPoly, p: u64, cfg: &CriteriaConfig) -> Result<Vec<ModPoly>> {
    check_input(f, p)?;
    let fa = fppoly::reduce_unchecked(f, p).factor_with(&cfg.factor)?;
    Ok(fa.factors.into_iter().map(|(phi, _)| phi).collect())
}

pub fn p_maximal_local(f: &IntPoly, p: u64) -> Result<LocalVerdict> {
    p_maximal_local_with(f, p, &CriteriaConfig::default())
}

pub fn p_maximal_local_with(f: &IntPoly, p: u64, cfg: &CriteriaConfig) -> Result<LocalVerdict> {
    let ideals = maximal_ideals_above_with(f, p, cfg)?;
    local_verdict_for(f, p, &ideals)
}

/// Local tests over a known list of maximal ideals; skips the input checks.
pub(crate) fn local_verdict_for(f: &IntPoly, p: u64, ideals: &[ModPoly]) -> Result<LocalVerdict> {
    let reports = ideals
        .iter()
        .map(|phi| dvr_local_test(f, p, &phi.lift()))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalVerdict {
        p,
        p_maximal: reports.iter().all(|r| r.dvr),
        reports,
    })
}

/// Completes a failure certificate given in one formalism to all three.
pub fn convert_witness(f: &IntPoly, input: &WitnessInput) -> Result<WitnessTriple> {
    convert_witness_with(f, input, &CriteriaConfig::default())
}

pub fn convert_witness_with(
    f: &IntPoly,
    input: &WitnessInput,
    cfg: &CriteriaConfig,
) -> Result<WitnessTriple> {
    let not_a_witness = |reason: String, verdict: Option<LocalReport>| CriteriaError::NotAWitness {
        reason,
        verdict: verdict.map(Box::new),
    };
    let (p, phi) = match input {
        WitnessInput::Dedekind { p, index } => {
            let report = dedekind_p_maximal_with(f, *p, cfg)?;
            let Some((phi, _)) = report.factorization.factors.get(*index) else {
                return Err(not_a_witness(
                    format!(
                        "index {index} out of range: f mod {p} has {} irreducible factors",
                        report.factorization.len()
                    ),
                    None,
                ));
            };
            if !report.offending.contains(index) {
                let local = dvr_local_test(f, *p, &phi.lift())?;
                return Err(not_a_witness(
                    format!("factor {index} ({phi}) passes the test at {p}"),
                    Some(local),
                ));
            }
            (*p, phi.clone())
        }
        WitnessInput::Uchida { p, big_f } => {
            check_input(f, *p)?;
            let f_bar_ideal = fppoly::reduce_unchecked(big_f, *p);
            if !f_bar_ideal.is_irreducible()? {
                return Err(not_a_witness(
                    format!("({p}, {big_f}) is not a maximal ideal: {big_f} is not irreducible mod {p}"),
                    None,
                ));
            }
            let phi = f_bar_ideal.monic();
            let f_bar = fppoly::reduce_unchecked(f, *p);
            if !phi.divides(&f_bar) {
                return Err(not_a_witness(
                    format!("{phi} does not divide f mod {p}, so f is not in ({p}, {big_f})^2"),
                    None,
                ));
            }
            // (p, F) = (p, lift(F̄)) as ideals of Z[t]
            let local = dvr_local_test(f, *p, &phi.lift())?;
            if !local.in_m_squared {
                return Err(not_a_witness(
                    format!("f is not in ({p}, {big_f})^2"),
                    Some(local),
                ));
            }
            (*p, phi)
        }
        WitnessInput::Lueneburg { p, phi } => {
            check_input(f, *p)?;
            if phi.modulus() != *p {
                return Err(FpError::ModulusMismatch(phi.modulus(), *p).into());
            }
            let phi = phi.monic();
            if !phi.is_irreducible()? {
                return Err(not_a_witness(format!("{phi} is not irreducible mod {p}"), None));
            }
            let f_bar = fppoly::reduce_unchecked(f, *p);
            if !phi.divides(&f_bar) {
                return Err(not_a_witness(
                    format!("{phi} does not divide f mod {p}; no maximal ideal above {p} corresponds to it"),
                    None,
                ));
            }
            let local = dvr_local_test(f, *p, &phi.lift())?;
            if local.dvr {
                return Err(not_a_witness(
                    format!("the localization at ({p}, {}) is a DVR", phi.lift()),
                    Some(local),
                ));
            }
            (*p, phi)
        }
    };
    let fa = fppoly::reduce_unchecked(f, p).factor_with(&cfg.factor)?;
    let dedekind_index = fa
        .index_of(&phi)
        .expect("an irreducible divisor of f̄ appears in its factorization");
    let big_f = phi.lift();
    Ok(WitnessTriple {
        p,
        phi,
        dedekind_index,
        uchida: big_f.clone(),
        lueneburg: big_f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    /// Primes p with `p² | disc(f)`, found by trial division.
    Auto,
    Primes(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub p: u64,
    /// `v_p(disc f)` when known.
    pub disc_valuation: Option<u32>,
    pub p_maximal: bool,
    pub witnesses: Vec<WitnessTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub f: IntPoly,
    pub disc: BigInt,
    pub checked_primes: Vec<PrimeCheck>,
    /// Primes dividing the discriminant exactly once; p-maximal for free.
    pub skipped_primes: Vec<u64>,
    /// Part of `|disc|` left unfactored by trial division (1 if none).
    pub unresolved: BigInt,
}

impl MaximalityReport {
    /// `Some(false)` on any failure, `Some(true)` when every candidate
    /// prime passed and nothing is unresolved, `None` otherwise.
    pub fn verdict(&self) -> Option<bool> {
        if self.checked_primes.iter().any(|c| !c.p_maximal) {
            Some(false)
        } else if self.unresolved.is_one() {
            Some(true)
        } else {
            None
        }
    }
}

pub fn maximal_order_check(f: &IntPoly, mode: &PrimeSelection) -> Result<MaximalityReport> {
    maximal_order_check_with(f, mode, &CriteriaConfig::default())
}

pub fn maximal_order_check_with(
    f: &IntPoly,
    mode: &PrimeSelection,
    cfg: &CriteriaConfig,
) -> Result<MaximalityReport> {
    require_monic(f, "f")?;
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(CriteriaError::NotSquarefreeOverZ(f.clone()));
    }
    let (candidates, skipped, unresolved): (Vec<(u64, Option<u32>)>, Vec<u64>, BigInt) = match mode {
        PrimeSelection::Auto => {
            let tf = trial_factor(&disc, cfg.trial_bound);
            let (many, once): (Vec<_>, Vec<_>) = tf.primes.iter().partition(|(_, e)| *e >= 2);
            (
                many.into_iter().map(|(p, e)| (p, Some(e))).collect(),
                once.into_iter().map(|(p, _)| p).collect(),
                BigInt::from(tf.cofactor),
            )
        }
        PrimeSelection::Primes(ps) => {
            for &p in ps {
                fppoly::check_prime(p)?;
            }
            (
                ps.iter().map(|&p| (p, valuation(&disc, p))).collect(),
                vec![],
                BigInt::one(),
            )
        }
    };
    let checks = cfg.exec.map_slice(&candidates, |&(p, v)| -> Result<PrimeCheck> {
        let verdict = p_maximal_local_with(f, p, cfg)?;
        let witnesses = verdict
            .reports
            .iter()
            .filter(|r| !r.dvr)
            .map(|r| {
                let phi = fppoly::reduce_unchecked(&r.mu, p);
                convert_witness_with(f, &WitnessInput::Lueneburg { p, phi }, cfg)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PrimeCheck {
            p,
            disc_valuation: v,
            p_maximal: verdict.p_maximal,
            witnesses,
        })
    });
    Ok(MaximalityReport {
        f: f.clone(),
        disc,
        checked_primes: checks.into_iter().collect::<Result<Vec<_>>>()?,
        skipped_primes: skipped,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn canonical_decomposition_examples() {
        let (h, g) = canonical_decomposition(&p(&[1, 0, 1]), 2, &p(&[1, 1])).unwrap();
        assert_eq!((h, g), (p(&[-1, 1]), p(&[1])));
        let (h, g) = canonical_decomposition(&p(&[-5, 0, 1]), 2, &p(&[1, 1])).unwrap();
        assert_eq!((h, g), (p(&[-1, 1]), p(&[-2])));
        for nu in [3i64, 6, 15] {
            for q in [3u64, 5] {
                if nu % q as i64 == 0 {
                    let (h, g) = canonical_decomposition(&p(&[-nu, 0, 1]), q, &IntPoly::t()).unwrap();
                    assert_eq!((h, g), (IntPoly::t(), p(&[-nu / q as i64])));
                }
            }
        }
    }

    #[test]
    fn canonical_decomposition_errors() {
        let f = p(&[1, 0, 1]);
        assert_eq!(
            canonical_decomposition(&f, 3, &p(&[1, 1])),
            Err(CriteriaError::MuDoesNotDivide { mu: p(&[1, 1]), p: 3 })
        );
        assert_eq!(
            canonical_decomposition(&f, 5, &p(&[1, 0, 1])),
            Err(CriteriaError::MuNotIrreducible { mu: p(&[1, 0, 1]), p: 5 })
        );
        assert_eq!(
            canonical_decomposition(&f, 4, &p(&[1, 1])),
            Err(CriteriaError::Field(FpError::NotPrime(4)))
        );
        assert_eq!(
            canonical_decomposition(&f, 2, &p(&[1, 2])),
            Err(CriteriaError::NotMonic("mu"))
        );
    }

    #[test]
    fn membership_examples() {
        assert!(!ideal_square_membership(&p(&[1, 0, 1]), 2, &p(&[1, 1])).unwrap());
        assert!(ideal_square_membership(&p(&[-5, 0, 1]), 2, &p(&[1, 1])).unwrap());
        assert!(!ideal_square_membership(&p(&[-15, 0, 1]), 5, &IntPoly::t()).unwrap());
        assert!(!ideal_square_membership(&p(&[-15, 0, 1]), 3, &IntPoly::t()).unwrap());
        // p^2 | nu puts t^2 - nu in (p, t)^2
        assert!(ideal_square_membership(&p(&[-9, 0, 1]), 3, &IntPoly::t()).unwrap());
    }

    #[test]
    fn dvr_examples() {
        assert!(dvr_local_test(&p(&[1, 0, 1]), 2, &p(&[1, 1])).unwrap().dvr);
        let r = dvr_local_test(&p(&[-5, 0, 1]), 2, &p(&[1, 1])).unwrap();
        assert!(!r.dvr);
        assert_eq!(r.gcd_triple, ModPoly::from_i64s(2, &[1, 1]));
        assert_eq!(r.multiplicity, 2);
        for nu in [3i64, 7, 15, 21] {
            let q = if nu % 3 == 0 { 3 } else { 7 };
            let r = dvr_local_test(&p(&[-nu, 0, 1]), q, &IntPoly::t()).unwrap();
            assert!(r.dvr);
            assert!(fppoly::reduce_unchecked(&r.g, q).degree() == Some(0));
        }
    }

    #[test]
    fn dedekind_examples() {
        let r = dedekind_p_maximal(&p(&[1, 0, 1]), 2).unwrap();
        assert!(r.p_maximal);
        assert_eq!(r.factorization.factors, vec![(ModPoly::from_i64s(2, &[1, 1]), 2)]);
        assert_eq!(r.g, p(&[0, -1]));

        let r = dedekind_p_maximal(&p(&[-5, 0, 1]), 2).unwrap();
        assert!(!r.p_maximal);
        assert_eq!(r.g, p(&[-3, -1]));
        assert_eq!(r.offending, BTreeSet::from([0]));

        let r = dedekind_p_maximal(&p(&[-8, -2, -1, 1]), 2).unwrap();
        assert!(!r.p_maximal);

        assert_eq!(
            dedekind_p_maximal(&p(&[1, 2, 1]), 2),
            Err(CriteriaError::NotSquarefreeOverZ(p(&[1, 2, 1])))
        );
        assert_eq!(
            dedekind_p_maximal(&p(&[1, 0, 1]), 6),
            Err(CriteriaError::Field(FpError::NotPrime(6)))
        );
    }

    #[test]
    fn local_examples() {
        let v = p_maximal_local(&p(&[1, 0, 1]), 2).unwrap();
        assert!(v.p_maximal);
        assert_eq!(v.reports.len(), 1);
        let v = p_maximal_local(&p(&[-5, 0, 1]), 5).unwrap();
        assert!(v.p_maximal);
        assert_eq!(v.reports.len(), 1);
        assert_eq!(v.reports[0].g, p(&[-1]));
        assert!(!p_maximal_local(&p(&[-5, 0, 1]), 2).unwrap().p_maximal);
    }

    #[test]
    fn maximal_ideal_examples() {
        let f = p(&[1, 0, 1]);
        assert_eq!(maximal_ideals_above(&f, 2).unwrap(), vec![ModPoly::from_i64s(2, &[1, 1])]);
        assert_eq!(
            maximal_ideals_above(&f, 5).unwrap(),
            vec![ModPoly::from_i64s(5, &[2, 1]), ModPoly::from_i64s(5, &[3, 1])]
        );
        assert_eq!(maximal_ideals_above(&f, 3).unwrap(), vec![ModPoly::from_i64s(3, &[1, 0, 1])]);
    }

    #[test]
    fn witness_examples() {
        let f = p(&[-5, 0, 1]);
        let w = convert_witness(&f, &WitnessInput::Dedekind { p: 2, index: 0 }).unwrap();
        assert_eq!(w.phi, ModPoly::from_i64s(2, &[1, 1]));
        assert_eq!(w.uchida, p(&[1, 1]));
        assert_eq!(w.uchida_ideal(), "(2, t + 1)");
        assert_eq!(w.lueneburg_ideal(), "(2, θ + 1)");
        let back = convert_witness(&f, &WitnessInput::Uchida { p: 2, big_f: p(&[1, 1]) }).unwrap();
        assert_eq!(back, w);
        // any lift of the same factor names the same ideal
        let back = convert_witness(&f, &WitnessInput::Uchida { p: 2, big_f: p(&[-1, 1]) }).unwrap();
        assert_eq!(back, w);
        let back = convert_witness(&f, &WitnessInput::Lueneburg { p: 2, phi: w.phi.clone() }).unwrap();
        assert_eq!(back, w);

        let err = convert_witness(&p(&[1, 0, 1]), &WitnessInput::Uchida { p: 2, big_f: p(&[1, 1]) });
        match err {
            Err(CriteriaError::NotAWitness { verdict: Some(v), .. }) => assert!(v.dvr),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            convert_witness(&f, &WitnessInput::Dedekind { p: 2, index: 3 }),
            Err(CriteriaError::NotAWitness { verdict: None, .. })
        ));
    }

    #[test]
    fn maximal_order_examples() {
        let r = maximal_order_check(&p(&[1, 0, 1]), &PrimeSelection::Auto).unwrap();
        assert_eq!(r.verdict(), Some(true));
        assert_eq!(r.checked_primes.iter().map(|c| c.p).collect::<Vec<_>>(), vec![2]);
        let r = maximal_order_check(&p(&[-5, 0, 1]), &PrimeSelection::Auto).unwrap();
        assert_eq!(r.verdict(), Some(false));
        assert_eq!(r.checked_primes[0].witnesses[0].uchida, p(&[1, 1]));
        assert_eq!(r.skipped_primes, vec![5]);
        // Φ12
        let r = maximal_order_check(&p(&[1, 0, -1, 0, 1]), &PrimeSelection::Auto).unwrap();
        assert_eq!(r.verdict(), Some(true));
        assert_eq!(r.checked_primes.iter().map(|c| c.p).collect::<Vec<_>>(), vec![2, 3]);
        let r = maximal_order_check(&p(&[-5, 0, 1]), &PrimeSelection::Primes(vec![3, 5])).unwrap();
        assert_eq!(r.verdict(), Some(true));
        assert_eq!(r.checked_primes[1].disc_valuation, Some(1));
    }

    #[test]
    fn unresolved_cofactor_blocks_certification() {
        // disc(t^2 - q*r) = 4*q*r with two primes beyond a bound of 50
        let f = p(&[-(101 * 103), 0, 1]);
        let cfg = CriteriaConfig { trial_bound: 50, ..CriteriaConfig::default() };
        let r = maximal_order_check_with(&f, &PrimeSelection::Auto, &cfg).unwrap();
        assert_eq!(r.unresolved, BigInt::from(101 * 103));
        assert_eq!(r.verdict(), None);
    }
}
