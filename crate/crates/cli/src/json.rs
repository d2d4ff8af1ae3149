//! JSON renderings of library values. Arbitrary-precision integers are
//! always decimal strings; small counts and primes are plain numbers.

use num_bigint::BigInt;
use pmaximal::criteria::{DedekindReport, LocalReport, WitnessTriple};
use pmaximal::fppoly::{ModFactorization, ModPoly};
use pmaximal::intpoly::IntPoly;
use pmaximal::tower::{LemmaReport, TowerPrimeReport, Valuation};
use serde_json::{json, Value};

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn poly(f: &IntPoly) -> Value {
    json!({
        "text": f.to_string(),
        "coeffs": f.coeffs().iter().map(int).collect::<Vec<_>>(),
    })
}

pub fn modpoly(f: &ModPoly) -> Value {
    json!({
        "text": f.to_string(),
        "modulus": f.modulus(),
        "coeffs": f.coeffs(),
    })
}

pub fn valuation(v: &Valuation) -> Value {
    match v {
        Valuation::Exact(k) => json!({"kind": "exact", "value": k}),
        Valuation::AtLeast(k) => json!({"kind": "at_least", "value": k}),
    }
}

pub fn factorization(fa: &ModFactorization) -> Value {
    json!({
        "p": fa.p,
        "unit": fa.unit,
        "factors": fa.factors.iter().enumerate().map(|(i, (phi, e))| json!({
            "index": i,
            "phi": modpoly(phi),
            "multiplicity": e,
            "degree": phi.degree().unwrap_or(0),
        })).collect::<Vec<_>>(),
    })
}

pub fn witness(w: &WitnessTriple) -> Value {
    json!({
        "p": w.p,
        "phi": modpoly(&w.phi),
        "dedekind_index": w.dedekind_index,
        "uchida": poly(&w.uchida),
        "uchida_ideal": w.uchida_ideal(),
        "lueneburg": poly(&w.lueneburg),
        "lueneburg_ideal": w.lueneburg_ideal(),
    })
}

pub fn local(r: &LocalReport) -> Value {
    json!({
        "p": r.p,
        "mu": poly(&r.mu),
        "h": poly(&r.h),
        "g": poly(&r.g),
        "multiplicity": r.multiplicity,
        "in_m_squared": r.in_m_squared,
        "gcd_triple": modpoly(&r.gcd_triple),
        "pairwise_coprime": r.pairwise_coprime,
        "dvr": r.dvr,
    })
}

pub fn dedekind(r: &DedekindReport, witnesses: &[WitnessTriple]) -> Value {
    json!({
        "p": r.p,
        "p_maximal": r.p_maximal,
        "factorization": factorization(&r.factorization),
        "lifts": r.lifts.iter().map(poly).collect::<Vec<_>>(),
        "g": poly(&r.g),
        "offending": r.offending.iter().collect::<Vec<_>>(),
        "witnesses": witnesses.iter().map(witness).collect::<Vec<_>>(),
    })
}

pub fn tower_prime(r: &TowerPrimeReport) -> Value {
    json!({
        "p": r.p,
        "n_p": r.n_p,
        "v_p_c": r.v_p_c.as_ref().map(valuation),
        "item1_applies": r.item1_applies,
        "all_dvr": r.all_dvr(),
        "levels": r.levels.iter().map(|l| json!({
            "n": l.n,
            "all_dvr": l.all_dvr,
            "ideals": l.ideals.iter().map(|i| json!({
                "phi": modpoly(&i.phi),
                "multiplicity": i.multiplicity,
                "dvr": i.dvr,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "proper_ideal": r.proper_ideal.as_ref().map(|pi| json!({
            "level": pi.level,
            "t_divides_h": pi.t_divides_h,
            "p_g0_equals_c": pi.p_g0_equals_c,
            "dvr": pi.dvr,
        })),
        "violations": r.violations,
    })
}

pub fn lemmas(r: &LemmaReport) -> Value {
    let set = |s: &Option<std::collections::BTreeSet<u64>>| s.as_ref().map(|s| s.iter().copied().collect::<Vec<u64>>());
    json!({
        "p": r.p,
        "n_p": r.n_p,
        "depth": r.depth,
        "support": r.support.iter().map(|s| json!({
            "n": s.n,
            "holds": s.holds,
            "d_support": set(&s.d_support),
            "c_support_union": set(&s.c_support_union),
        })).collect::<Vec<_>>(),
        "residue_consistent": r.residue_consistent,
        "periodicity": r.periodicity.iter().map(|(n, ok)| json!({"n": n, "holds": ok})).collect::<Vec<_>>(),
        "divisibility": r.divisibility.iter().map(|(k, ok)| json!({"r": k, "holds": ok})).collect::<Vec<_>>(),
        "coprimality": r.coprimality.iter().map(|(k, l, ok)| json!({"k": k, "l": l, "holds": ok})).collect::<Vec<_>>(),
        "d_nonzero_below_pivot": r.d_nonzero_below_pivot,
        "separability": r.separability.as_ref().map(|v| v.iter().map(|s| json!({
            "n": s.n,
            "degree": s.degree,
            "factorizes": s.factorizes,
            "separable": s.separable,
        })).collect::<Vec<_>>()),
        "failures": r.failures(),
        "all_hold": r.all_hold(),
    })
}
