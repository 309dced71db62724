//! Classical symmetric polynomial bases, deformed power sums and basis
//! expansions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, HookShape, IntVector, Partition};
use crate::poly::{Monomial, MultiPoly, VarSpace};
use crate::scalar::{generalized_binomial, Rf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Basis {
    Monomial,
    PowerSum,
    Elementary,
    Complete,
    ModifiedComplete,
    SuperJack,
    FBasis,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Partition(Partition),
    Vector(IntVector),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Partition(p) => write!(f, "{p}"),
            Label::Vector(v) => write!(f, "{v}"),
        }
    }
}

/// A finite linear combination over a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    pub basis: Basis,
    pub space: VarSpace,
    /// The shape m̄ for the f-basis.
    pub mbar: Option<HookShape>,
    pub terms: BTreeMap<Label, Rf>,
}

impl BasisExpansion {
    pub fn new(basis: Basis, space: VarSpace) -> Self {
        BasisExpansion { basis, space, mbar: None, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, label: Label, c: Rf) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(label.clone()).or_insert_with(Rf::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn coeff(&self, label: &Label) -> Rf {
        self.terms.get(label).cloned().unwrap_or_else(Rf::zero)
    }

    pub fn partition_coeff(&self, p: &Partition) -> Rf {
        self.coeff(&Label::Partition(p.clone()))
    }
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    basis: Basis,
    space: VarSpace,
    #[serde(skip_serializing_if = "Option::is_none")]
    mbar: Option<HookShape>,
    terms: Vec<LabelTerm<'a>>,
}

#[derive(Serialize)]
struct LabelTerm<'a> {
    label: String,
    coeff: &'a Rf,
}

impl Serialize for BasisExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            basis: self.basis,
            space: self.space,
            mbar: self.mbar,
            terms: self.terms.iter().map(|(l, c)| LabelTerm { label: l.to_string(), coeff: c }).collect(),
        }
        .serialize(s)
    }
}

/// Degree-`r` part of ∏_{i ∈ vars} Σ_t coeff(t) x_i^t.
pub fn product_series_coefficient(nvars: usize, vars: Range<usize>, r: u32, coeff: impl Fn(u32) -> Rf) -> MultiPoly {
    let factors: Vec<Rf> = (0..=r).map(&coeff).collect();
    let mut acc = MultiPoly::one(nvars);
    for i in vars {
        let mut series = MultiPoly::zero(nvars);
        for (t, c) in factors.iter().enumerate() {
            series.add_term(Monomial::var(nvars, i, t as u32), c.clone());
        }
        acc = acc.mul_truncated(&series, |m| m.degree(), r);
    }
    acc.homogeneous_component(r)
}

/// m_λ(x₁..x_n).
pub fn monomial_sym(lambda: &Partition, n: usize) -> Result<MultiPoly> {
    let padded = lambda.padded(n).ok_or_else(|| Error::TooManyParts(lambda.to_string(), n))?;
    let mut out = MultiPoly::zero(n);
    for perm in distinct_permutations(&padded) {
        out.add_term(Monomial(perm.iter().map(|&e| e as u32).collect()), Rf::one());
    }
    Ok(out)
}

fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    fn rec(counts: &mut BTreeMap<usize, usize>, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<usize> = counts.iter().filter(|(_, c)| **c > 0).map(|(k, _)| *k).collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            rec(counts, left - 1, cur, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &x in v {
        *counts.entry(x).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    rec(&mut counts, v.len(), &mut Vec::new(), &mut out);
    out
}

/// p_r = Σ_{i ∈ vars} x_i^r.
pub fn power_sum_in(r: u32, nvars: usize, vars: Range<usize>) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    for i in vars {
        out.add_term(Monomial::var(nvars, i, r), Rf::one());
    }
    out
}

pub fn power_sum(r: u32, n: usize) -> MultiPoly {
    power_sum_in(r, n, 0..n)
}

pub fn elementary_in(r: u32, nvars: usize, vars: Range<usize>) -> MultiPoly {
    product_series_coefficient(nvars, vars, r, |t| if t <= 1 { Rf::one() } else { Rf::zero() })
}

pub fn elementary(r: u32, n: usize) -> MultiPoly {
    elementary_in(r, n, 0..n)
}

pub fn complete_in(r: u32, nvars: usize, vars: Range<usize>) -> MultiPoly {
    product_series_coefficient(nvars, vars, r, |_| Rf::one())
}

pub fn complete_h(r: u32, n: usize) -> MultiPoly {
    complete_in(r, n, 0..n)
}

/// Coefficient of t^r in ∏_{i ∈ vars} (1 − x_i t)^{−c}.
pub fn modified_g_in(r: u32, c: &Rf, nvars: usize, vars: Range<usize>) -> MultiPoly {
    let neg_c = -c;
    product_series_coefficient(nvars, vars, r, |t| {
        let b = generalized_binomial(&neg_c, t);
        if t % 2 == 1 {
            -b
        } else {
            b
        }
    })
}

/// g_r(x; c) with ∏(1 − x_i t)^{−c} = Σ g_r t^r.
pub fn modified_g(r: u32, c: &Rf, n: usize) -> MultiPoly {
    modified_g_in(r, c, n, 0..n)
}

/// p_{r,θ} = Σ x_i^r − θ⁻¹ Σ x̃_I^r on the block of variables at `offset`.
pub fn deformed_power_sum_at(r: u32, space: VarSpace, nvars: usize, offset: usize) -> MultiPoly {
    let x = power_sum_in(r, nvars, offset..offset + space.n);
    let xt = power_sum_in(r, nvars, offset + space.n..offset + space.total());
    &x - &xt.scale(&Rf::theta().inv().expect("θ ≠ 0"))
}

pub fn deformed_power_sum(r: u32, space: VarSpace) -> MultiPoly {
    deformed_power_sum_at(r, space, space.total(), 0)
}

/// ∏_i p_{ρ_i} in n variables.
pub fn power_sum_product(rho: &Partition, n: usize) -> MultiPoly {
    let mut out = MultiPoly::one(n);
    for &r in rho.parts() {
        out = &out * &power_sum(r as u32, n);
    }
    out
}

/// Coordinates of a symmetric polynomial in the monomial basis.
pub fn to_monomial_basis(p: &MultiPoly) -> Result<BasisExpansion> {
    let n = p.nvars();
    if !p.is_symmetric_in(0..n) {
        return Err(Error::NotSymmetric);
    }
    let mut out = BasisExpansion::new(Basis::Monomial, VarSpace::new(n, 0));
    for (m, c) in p.terms() {
        if m.0.windows(2).all(|w| w[0] >= w[1]) {
            out.add(Label::Partition(Partition::new(m.0.iter().map(|&e| e as usize).collect())), c.clone());
        }
    }
    Ok(out)
}

pub fn from_monomial_basis(e: &BasisExpansion, n: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(n);
    for (l, c) in &e.terms {
        match l {
            Label::Partition(p) => out.add_assign_scaled(&monomial_sym(p, n)?, c),
            Label::Vector(_) => return Err(Error::InvalidArgument("monomial labels are partitions".into())),
        }
    }
    Ok(out)
}

pub fn from_power_sums(e: &BasisExpansion, n: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(n);
    for (l, c) in &e.terms {
        match l {
            Label::Partition(p) => out.add_assign_scaled(&power_sum_product(p, n), c),
            Label::Vector(_) => return Err(Error::InvalidArgument("power-sum labels are partitions".into())),
        }
    }
    Ok(out)
}

/// Coordinates in the power-sum basis of a symmetric polynomial,
/// homogeneous of degree at most the variable count.
pub fn to_power_sums(p: &MultiPoly) -> Result<BasisExpansion> {
    let n = p.nvars();
    let mono = to_monomial_basis(p)?;
    let mut out = BasisExpansion::new(Basis::PowerSum, VarSpace::new(n, 0));
    let mut degrees: Vec<usize> = mono
        .terms
        .keys()
        .map(|l| match l {
            Label::Partition(p) => p.weight(),
            Label::Vector(_) => unreachable!(),
        })
        .collect();
    degrees.dedup();
    for d in degrees {
        if d > n {
            return Err(Error::InvalidArgument(format!("degree {d} exceeds {n} variables")));
        }
        // p_ρ = Σ_μ L_{ρμ} m_μ is triangular: L_{ρμ} ≠ 0 only if μ ≥ ρ.
        let parts = partitions_of(d);
        let mut target: BTreeMap<Partition, Rf> =
            parts.iter().map(|mu| (mu.clone(), mono.partition_coeff(mu))).collect();
        // smallest in dominance first: p_μ only touches m_ν with ν ≥ μ
        for mu in parts.iter().rev() {
            let c = target[mu].clone();
            if c.is_zero() {
                continue;
            }
            let prod = to_monomial_basis(&power_sum_product(mu, n))?;
            let lead = prod.partition_coeff(mu);
            let k = &c / &lead;
            for (l, v) in &prod.terms {
                if let Label::Partition(nu) = l {
                    let e = target.get_mut(nu).expect("same weight");
                    *e = &*e - &(&k * v);
                }
            }
            out.add(Label::Partition(mu.clone()), k);
        }
        if target.values().any(|v| !v.is_zero()) {
            return Err(Error::NotInSpan);
        }
    }
    Ok(out)
}

/// Σ_t (−1)^{a₂−t} (Σ_r e_r(x̃) h_{a₁+t−r}(x)) (Σ_s e_s(x) h_{a₂−t−s}(x̃)),
/// the hook expansion with the sign exactly as printed. It equals
/// (−1)^{a₂} S_{(a₁,1^{a₂})}(x, x̃).
pub fn hook_expansion_printed(a1: u32, a2: u32, space: VarSpace) -> MultiPoly {
    let nv = space.total();
    let (xs, ts) = (0..space.n, space.n..nv);
    let mixed = |k: u32, h_vars: Range<usize>, e_vars: Range<usize>| {
        let mut out = MultiPoly::zero(nv);
        for r in 0..=k {
            out = &out + &(&elementary_in(r, nv, e_vars.clone()) * &complete_in(k - r, nv, h_vars.clone()));
        }
        out
    };
    let mut out = MultiPoly::zero(nv);
    for t in 0..=a2 {
        let term = &mixed(a1 + t, xs.clone(), ts.clone()) * &mixed(a2 - t, ts.clone(), xs.clone());
        out = if (a2 - t).is_multiple_of(2) { &out + &term } else { &out - &term };
    }
    out
}

/// Σ_t (−1)^{a₂−t} e_{a₂−t}(x) h_{a₁+t}(x) in n variables, as printed.
pub fn hook_reduction_printed(a1: u32, a2: u32, n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(n);
    for t in 0..=a2 {
        let term = &elementary(a2 - t, n) * &complete_h(a1 + t, n);
        out = if (a2 - t).is_multiple_of(2) { &out + &term } else { &out - &term };
    }
    out
}

/// Outcome of checking the h-quotient identity for one k.
#[derive(Clone, Debug, Serialize)]
pub struct HQuotientReport {
    pub k: u32,
    pub holds: bool,
}

/// Checks x^k(z−y) + y^k(x−z) + z^k(y−x) = −h_{k−2}(x,y,z)(y−x)(x−z)(z−y)
/// by expanding both sides.
pub fn h_quotient(k: u32) -> HQuotientReport {
    let v = |i| MultiPoly::var(3, i);
    let (x, y, z) = (v(0), v(1), v(2));
    let lhs = &(&(&x.pow(k) * &(&z - &y)) + &(&y.pow(k) * &(&x - &z))) + &(&z.pow(k) * &(&y - &x));
    let h = if k >= 2 { complete_h(k - 2, 3) } else { MultiPoly::zero(3) };
    let vandermonde = &(&(&y - &x) * &(&x - &z)) * &(&z - &y);
    let rhs = -&(&h * &vandermonde);
    HQuotientReport { k, holds: lhs == rhs }
}
