use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::embeddings::inj;
use crate::error::{Error, Result};
use crate::families::{make_t, two_level_tree, FamilyParams};
use crate::rational::Rational;
use crate::rooted::balance_closed_form;

use super::obstruction_family_t;

/// `5^exponent`, kept exact as base and exponent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FivePower {
    pub base: u32,
    pub exponent: Rational,
    pub log10: f64,
    pub approx: Option<f64>,
}

/// `coefficient * 5^five_exponent`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaledFivePower {
    pub coefficient: Rational,
    pub five_exponent: Rational,
    pub log10: f64,
    pub approx: Option<f64>,
}

/// `radicand^(1/index)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Radical {
    #[serde(serialize_with = "decimal")]
    pub radicand: BigUint,
    pub index: u64,
    pub log10: f64,
    pub approx: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MemberInj {
    pub name: String,
    pub inj: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantsLedger {
    pub params: FamilyParams,
    pub p: u64,
    pub rho: Rational,
    pub alpha: Rational,
    #[serde(rename = "K")]
    pub k: FivePower,
    pub epsilon: ScaledFivePower,
    pub inj_counts: Vec<MemberInj>,
    #[serde(rename = "C_star", serialize_with = "decimal")]
    pub c_star: BigUint,
    #[serde(rename = "C_i", serialize_with = "decimal_list")]
    pub c_i: Vec<BigUint>,
    #[serde(rename = "C0", serialize_with = "decimal")]
    pub c0: BigUint,
    pub c_threshold: Radical,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn decimal_list<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn log10_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn from_log10(l: f64) -> Option<f64> {
    let v = 10f64.powf(l);
    (v.is_finite() && v > 0.0).then_some(v)
}

/// Constants for `T(s,t,s')` with `p` copies: `α`, `K`, `ε`, `C_*`, the
/// `C_i`, `C_0` and the threshold on `c`.
pub fn master_constants(params: FamilyParams, p: u64) -> Result<ConstantsLedger> {
    params.validate()?;
    if p == 0 {
        return Err(Error::InvalidParams("p must be positive".into()));
    }
    if !balance_closed_form(params) {
        return Err(Error::Unbalanced {
            s: params.s,
            t: params.t,
            s_prime: params.s_prime,
        });
    }
    let FamilyParams { s, t, s_prime } = params;
    let tree = make_t(params)?;
    let rho = params.density();
    let alpha = Rational::one() - rho.recip();

    let four_over_alpha = Rational::from_integer(4) / alpha;
    let log5 = 5f64.log10();
    let k_log = four_over_alpha.to_f64() * log5;
    let k = FivePower {
        base: 5,
        exponent: four_over_alpha,
        log10: k_log,
        approx: from_log10(k_log),
    };

    let family = obstruction_family_t(params)?;
    let mut inj_counts = Vec::with_capacity(family.len());
    for m in &family.members {
        inj_counts.push(MemberInj {
            name: m.name.clone(),
            inj: inj(&m.tree, tree.graph(), None)?,
        });
    }
    let inj_sum: u64 = inj_counts.iter().map(|m| m.inj).sum();
    let e = tree.edge_count() as i128;
    let coefficient = Rational::new(1, 3 * inj_sum as i128);
    let five_exponent = -(four_over_alpha * Rational::from_integer(e));
    let eps_log = coefficient.to_f64().log10() + five_exponent.to_f64() * log5;
    let epsilon = ScaledFivePower {
        coefficient,
        five_exponent,
        log10: eps_log,
        approx: from_log10(eps_log),
    };

    let wide = two_level_tree(s, t, s + 1);
    let wide_roots = BigUint::from(wide.root_count());
    let c_star = BigUint::from(p) * BigUint::from(wide.non_root_count()) + wide_roots;
    let v = BigUint::from(tree.vertex_count());
    let c_i: Vec<BigUint> = (1..=s.saturating_sub(s_prime))
        .map(|i| BigUint::from(p) * v.pow(i as u32))
        .collect();
    let c0 = c_i
        .iter()
        .chain([&c_star, &BigUint::from(p)])
        .max()
        .cloned()
        .unwrap();

    let free = tree.non_root_count() as u32;
    let radicand = BigUint::from(2u32) * (&c0 * &v * &v).pow(free);
    let index = tree.edge_count() as u64;
    let c_log = log10_big(&radicand) / index as f64;
    let c_threshold = Radical {
        radicand,
        index,
        log10: c_log,
        approx: from_log10(c_log),
    };

    debug_assert!(c0 >= BigUint::one());
    Ok(ConstantsLedger {
        params,
        p,
        rho,
        alpha,
        k,
        epsilon,
        inj_counts,
        c_star,
        c_i,
        c0,
        c_threshold,
    })
}
