//! Deformed CMS operators, their duals on the kernel, the kernel itself as a
//! truncated series, and the super Jack scalar product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jack::{expand_in_super_jack, jack_polynomial, super_jack};
use crate::partition::{b_lambda, partitions_in_hook, HookShape, Partition};
use crate::poly::{MultiPoly, VarSpace};
use crate::scalar::{generalized_binomial, parse_rational, Rational, Rf};
use crate::symbases::{deformed_power_sum_at, Label};

/// ℒ = Σ_k α_k D^k + Σ_ℓ β_ℓ E^ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSpec {
    pub alpha: [Rf; 3],
    pub beta: [Rf; 2],
}

pub const PRESETS: [&str; 5] = ["trig", "hermite", "laguerre", "jacobi", "bessel"];

impl OperatorSpec {
    pub fn zero() -> Self {
        OperatorSpec { alpha: [Rf::zero(), Rf::zero(), Rf::zero()], beta: [Rf::zero(), Rf::zero()] }
    }

    pub fn from_rationals(alpha: [Rational; 3], beta: [Rational; 2]) -> Self {
        OperatorSpec { alpha: alpha.map(Rf::from_rational), beta: beta.map(Rf::from_rational) }
    }

    fn ints(alpha: [i64; 3], beta: [i64; 2]) -> Self {
        OperatorSpec { alpha: alpha.map(Rf::from_int), beta: beta.map(Rf::from_int) }
    }

    /// α = x².
    pub fn trig() -> Self {
        Self::ints([0, 0, 1], [0, 0])
    }

    /// α = 1, β = −2x.
    pub fn hermite() -> Self {
        Self::ints([1, 0, 0], [0, -2])
    }

    /// α = x, β = (a + 1) − x.
    pub fn laguerre(a: &Rational) -> Self {
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        Self::from_rationals([zero.clone(), one.clone(), zero], [a + &one, -one])
    }

    /// α = 1 − x², β = (b − a) − (a + b + 2)x.
    pub fn jacobi(a: &Rational, b: &Rational) -> Self {
        let one = Rational::from_integer(1.into());
        let two = Rational::from_integer(2.into());
        Self::from_rationals([one.clone(), Rational::from_integer(0.into()), -one], [b - a, -(a + b + two)])
    }

    /// α = x², β = b + ax.
    pub fn bessel(a: &Rational, b: &Rational) -> Self {
        let zero = Rational::from_integer(0.into());
        Self::from_rationals([zero.clone(), zero, Rational::from_integer(1.into())], [b.clone(), a.clone()])
    }

    /// Named operator with the extra parameters a, b.
    pub fn preset(name: &str, a: &Rational, b: &Rational) -> Result<Self> {
        match name {
            "trig" => Ok(Self::trig()),
            "hermite" => Ok(Self::hermite()),
            "laguerre" => Ok(Self::laguerre(a)),
            "jacobi" => Ok(Self::jacobi(a, b)),
            "bessel" => Ok(Self::bessel(a, b)),
            _ => Err(Error::InvalidArgument(format!("unknown preset {name:?}"))),
        }
    }

    /// A preset name, with a and b defaulting to [`Self::default_params`],
    /// or raw coefficients such as "a2=1,b1=-1/2".
    pub fn resolve(s: &str, a: Option<&Rational>, b: Option<&Rational>) -> Result<Self> {
        if s.contains('=') {
            return s.parse();
        }
        let (da, db) = Self::default_params();
        Self::preset(s.trim(), a.unwrap_or(&da), b.unwrap_or(&db))
    }

    /// Default extra parameters a = 1/2, b = 1/3.
    pub fn default_params() -> (Rational, Rational) {
        (Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into()))
    }

    /// Which α_k and β_ℓ are nonzero.
    pub fn index_sets(&self) -> ([bool; 3], [bool; 2]) {
        (self.alpha.clone().map(|c| !c.is_zero()), self.beta.clone().map(|c| !c.is_zero()))
    }

    /// Only α₂ and β₁ nonzero.
    pub fn is_self_adjoint_type(&self) -> bool {
        self.alpha[0].is_zero() && self.alpha[1].is_zero() && self.beta[0].is_zero()
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a0", "a1", "a2", "b0", "b1"];
        let vals: Vec<&Rf> = self.alpha.iter().chain(self.beta.iter()).collect();
        let parts: Vec<String> =
            names.iter().zip(vals).filter(|(_, v)| !v.is_zero()).map(|(n, v)| format!("{n}={v}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Parses "a2=1,b1=-1/2" style coefficient lists.
impl FromStr for OperatorSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = OperatorSpec::zero();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("bad coefficient {item:?}")))?;
            let v = Rf::from_rational(parse_rational(v)?);
            match k.trim() {
                "a0" => spec.alpha[0] = v,
                "a1" => spec.alpha[1] = v,
                "a2" => spec.alpha[2] = v,
                "b0" => spec.beta[0] = v,
                "b1" => spec.beta[1] = v,
                other => return Err(Error::Parse(format!("unknown coefficient {other:?}"))),
            }
        }
        Ok(spec)
    }
}

/// (−θ)^{p(i)}.
fn parity_sign(space: VarSpace, i: usize) -> Rf {
    Rf::neg_theta_pow(i64::from(space.parity(i)))
}

/// (−θ)^{1−p(i)}.
fn parity_power(space: VarSpace, i: usize) -> Rf {
    Rf::neg_theta_pow(1 - i64::from(space.parity(i)))
}

/// E^ℓ = Σ x_i^ℓ ∂_i over the block at `offset`.
pub fn apply_e_at(l: u32, p: &MultiPoly, space: VarSpace, offset: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(p.nvars());
    for i in 0..space.total() {
        out = &out + &p.x_pow_derivative(offset + i, l);
    }
    out
}

pub fn apply_e(l: u32, p: &MultiPoly, space: VarSpace) -> MultiPoly {
    apply_e_at(l, p, space, 0)
}

/// Σ (−θ)^{p(i)} x_i^k ∂_i² − 2 Σ_{i≠j} (−θ)^{1−p(j)} x_i^k/(x_i − x_j) ∂_i,
/// the part shared by D^k and its dual.
fn second_order_core(p: &MultiPoly, space: VarSpace, offset: usize, k: u32) -> Result<MultiPoly> {
    let nv = p.nvars();
    let total = space.total();
    let mut out = MultiPoly::zero(nv);
    for i in 0..total {
        out.add_assign_scaled(&p.x_pow_second_derivative(offset + i, k), &parity_sign(space, i));
    }
    let derivs: Vec<MultiPoly> = (0..total).map(|i| p.x_pow_derivative(offset + i, k)).collect();
    let minus_two = Rf::from_int(-2);
    for i in 0..total {
        for j in i + 1..total {
            // x_j^k/(x_j − x_i) = −x_j^k/(x_i − x_j) folds the (j, i) term in
            let mut num = derivs[i].scale(&parity_power(space, j));
            num.add_assign_scaled(&derivs[j], &-parity_power(space, i));
            if num.is_zero() {
                continue;
            }
            let q = num.exact_divide_linear(offset + i, offset + j)?;
            out.add_assign_scaled(&q, &minus_two);
        }
    }
    Ok(out)
}

/// D^k on the block at `offset`.
pub fn apply_d_at(k: u32, p: &MultiPoly, space: VarSpace, offset: usize) -> Result<MultiPoly> {
    let mut out = second_order_core(p, space, offset, k)?;
    if k > 0 {
        for i in 0..space.total() {
            let c = &(&Rf::one() - &parity_power(space, i)) * &Rf::from_int(k as i64);
            if !c.is_zero() {
                out.add_assign_scaled(&p.x_pow_derivative(offset + i, k - 1), &c);
            }
        }
    }
    Ok(out)
}

pub fn apply_d(k: u32, p: &MultiPoly, space: VarSpace) -> Result<MultiPoly> {
    apply_d_at(k, p, space, 0)
}

pub fn apply_l_at(spec: &OperatorSpec, p: &MultiPoly, space: VarSpace, offset: usize) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(p.nvars());
    for k in 0..3 {
        if !spec.alpha[k].is_zero() {
            out.add_assign_scaled(&apply_d_at(k as u32, p, space, offset)?, &spec.alpha[k]);
        }
    }
    for l in 0..2 {
        if !spec.beta[l].is_zero() {
            out.add_assign_scaled(&apply_e_at(l as u32, p, space, offset), &spec.beta[l]);
        }
    }
    Ok(out)
}

pub fn apply_l(spec: &OperatorSpec, p: &MultiPoly, space: VarSpace) -> Result<MultiPoly> {
    apply_l_at(spec, p, space, 0)
}

fn n_theta(shape: HookShape) -> Rf {
    &(&Rf::theta() * &Rf::from_int(shape.n as i64)) - &Rf::from_int(shape.nt as i64)
}

/// Ē^ℓ = Σ y_j^{2−ℓ} ∂_j + (1 − ℓ) n_θ p_{1,θ}(y), y the block at `offset`
/// laid out as m̄.
pub fn apply_dual_e_at(l: u32, q: &MultiPoly, nbar: HookShape, mbar: HookShape, offset: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(q.nvars());
    for j in 0..mbar.total() {
        out = &out + &q.x_pow_derivative(offset + j, 2 - l);
    }
    if l == 0 {
        let p1 = deformed_power_sum_at(1, mbar, q.nvars(), offset);
        out.add_assign_scaled(&(&p1 * q), &n_theta(nbar));
    }
    out
}

pub fn apply_dual_e(l: u32, q: &MultiPoly, nbar: HookShape, mbar: HookShape) -> MultiPoly {
    apply_dual_e_at(l, q, nbar, mbar, 0)
}

/// C_{j,k} = 2(n_θ − m_θ) + (2−k)((−θ)^{q(j)} − (−θ)^{1−q(j)}) + k(1 − (−θ)^{1−q(j)}).
pub fn dual_constant(j: usize, k: u32, nbar: HookShape, mbar: HookShape) -> Rf {
    let a = parity_sign(mbar, j);
    let b = parity_power(mbar, j);
    let base = (&n_theta(nbar) - &n_theta(mbar)).scale(&Rational::from_integer(2.into()));
    let mid = (&a - &b).scale(&Rational::from_integer((2 - k as i64).into()));
    let last = (&Rf::one() - &b).scale(&Rational::from_integer((k as i64).into()));
    &(&base + &mid) + &last
}

/// P_k(y) = (1 − δ_{k2}) n_θ(n_θ+1) p_{2−k,θ} + δ_{k0} θ n_θ (p_{1,θ}² − p_{2,θ}).
pub fn dual_potential(k: u32, nbar: HookShape, mbar: HookShape, nvars: usize, offset: usize) -> MultiPoly {
    let nt = n_theta(nbar);
    let mut out = MultiPoly::zero(nvars);
    if k == 2 {
        return out;
    }
    let c = &nt * &(&nt + &Rf::one());
    out.add_assign_scaled(&deformed_power_sum_at(2 - k, mbar, nvars, offset), &c);
    if k == 0 {
        let p1 = deformed_power_sum_at(1, mbar, nvars, offset);
        let p2 = deformed_power_sum_at(2, mbar, nvars, offset);
        out.add_assign_scaled(&(&(&p1 * &p1) - &p2), &(&Rf::theta() * &nt));
    }
    out
}

/// D̄^k on the y block at `offset`.
pub fn apply_dual_d_at(k: u32, q: &MultiPoly, nbar: HookShape, mbar: HookShape, offset: usize) -> Result<MultiPoly> {
    let mut out = second_order_core(q, mbar, offset, 4 - k)?;
    for j in 0..mbar.total() {
        let c = dual_constant(j, k, nbar, mbar);
        if !c.is_zero() {
            out.add_assign_scaled(&q.x_pow_derivative(offset + j, 3 - k), &c);
        }
    }
    let pot = dual_potential(k, nbar, mbar, q.nvars(), offset);
    Ok(&out + &(&pot * q))
}

pub fn apply_dual_d(k: u32, q: &MultiPoly, nbar: HookShape, mbar: HookShape) -> Result<MultiPoly> {
    apply_dual_d_at(k, q, nbar, mbar, 0)
}

/// ℒ̄ = Σ α_k D̄^k + Σ β_ℓ Ē^ℓ.
pub fn apply_dual_l_at(
    spec: &OperatorSpec,
    q: &MultiPoly,
    nbar: HookShape,
    mbar: HookShape,
    offset: usize,
) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(q.nvars());
    for k in 0..3 {
        if !spec.alpha[k].is_zero() {
            out.add_assign_scaled(&apply_dual_d_at(k as u32, q, nbar, mbar, offset)?, &spec.alpha[k]);
        }
    }
    for l in 0..2 {
        if !spec.beta[l].is_zero() {
            out.add_assign_scaled(&apply_dual_e_at(l as u32, q, nbar, mbar, offset), &spec.beta[l]);
        }
    }
    Ok(out)
}

pub fn apply_dual_l(spec: &OperatorSpec, q: &MultiPoly, nbar: HookShape, mbar: HookShape) -> Result<MultiPoly> {
    apply_dual_l_at(spec, q, nbar, mbar, 0)
}

/// ∏_{i,j}(1 − x_i y_j)^{(−θ)^{1−p(i)−q(j)}} through y-degree `degree`; the x
/// variables come first, then the y variables.
#[derive(Clone, Debug)]
pub struct TruncatedKernel {
    pub nbar: HookShape,
    pub mbar: HookShape,
    pub degree: u32,
    pub value: MultiPoly,
}

impl TruncatedKernel {
    pub fn y_range(&self) -> std::ops::Range<usize> {
        self.nbar.total()..self.nbar.total() + self.mbar.total()
    }

    pub fn y_degree(&self, exp: &[u32]) -> u32 {
        exp[self.y_range()].iter().sum()
    }
}

pub fn truncated_kernel(nbar: HookShape, mbar: HookShape, degree: u32) -> TruncatedKernel {
    let nx = nbar.total();
    let nv = nx + mbar.total();
    let ydeg = |m: &crate::poly::Monomial| m.0[nx..].iter().sum::<u32>();
    let mut value = MultiPoly::one(nv);
    for i in 0..nx {
        for j in 0..mbar.total() {
            let c = Rf::neg_theta_pow(1 - i64::from(nbar.parity(i)) - i64::from(mbar.parity(j)));
            let mut series = MultiPoly::zero(nv);
            for t in 0..=degree {
                let b = generalized_binomial(&c, t);
                let b = if t % 2 == 1 { -b } else { b };
                let mut e = vec![0; nv];
                e[i] = t;
                e[nx + j] = t;
                series.add_term(crate::poly::Monomial(e), b);
            }
            value = value.mul_truncated(&series, ydeg, degree);
        }
    }
    TruncatedKernel { nbar, mbar, degree, value }
}

/// Which identity to check on the kernel.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum IdentityKind {
    E(u32),
    D(u32),
    L(OperatorSpec),
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityKind::E(l) => write!(f, "EId l={l}"),
            IdentityKind::D(k) => write!(f, "DId k={k}"),
            IdentityKind::L(s) => write!(f, "LId {s}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub pass: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn from_failures(checked: usize, failures: Vec<String>) -> Self {
        Report { pass: failures.is_empty(), checked, failures }
    }
}

/// Applies an operator in x and its dual in y to the kernel truncated at
/// y-degree `degree` and compares every coefficient of y-degree ≤ `degree`.
///
/// Each side only involves kernel components of y-degree ≤ `degree` there:
/// the x-side keeps the y-degree and the dual side raises it by 2−k (D) or
/// 1−ℓ (E).
pub fn verify_identity(kind: &IdentityKind, nbar: HookShape, mbar: HookShape, degree: u32) -> Result<Report> {
    let kernel = truncated_kernel(nbar, mbar, degree);
    let off = nbar.total();
    let pi = &kernel.value;
    let (lhs, rhs) = match kind {
        IdentityKind::E(l) => (apply_e_at(*l, pi, nbar, 0), apply_dual_e_at(*l, pi, nbar, mbar, off)),
        IdentityKind::D(k) => (apply_d_at(*k, pi, nbar, 0)?, apply_dual_d_at(*k, pi, nbar, mbar, off)?),
        IdentityKind::L(spec) => (apply_l_at(spec, pi, nbar, 0)?, apply_dual_l_at(spec, pi, nbar, mbar, off)?),
    };
    let keep = |m: &crate::poly::Monomial| kernel.y_degree(&m.0) <= degree;
    let lhs = lhs.filter(keep);
    let rhs = rhs.filter(keep);
    let support: BTreeSet<Vec<u32>> = lhs.terms().chain(rhs.terms()).map(|(m, _)| m.0.clone()).collect();
    let diff = &lhs - &rhs;
    let failures = diff.terms().map(|(m, c)| format!("{:?}: {}", m.0, c)).collect();
    Ok(Report::from_failures(support.len(), failures))
}

/// Σ_λ b_λ SP_λ(x) SP_λ(y) over λ ∈ H_n̄ ∩ H_m̄, |λ| ≤ `degree`, in the
/// kernel's variable layout.
pub fn super_kernel_sum(nbar: HookShape, mbar: HookShape, degree: u32) -> Result<MultiPoly> {
    let nx = nbar.total();
    let nv = nx + mbar.total();
    let xmap: Vec<usize> = (0..nx).collect();
    let ymap: Vec<usize> = (nx..nv).collect();
    let mut out = MultiPoly::zero(nv);
    for d in 0..=degree as usize {
        for lambda in partitions_in_hook(d, nbar) {
            if !crate::partition::in_hook(&lambda, mbar) {
                continue;
            }
            let sx = super_jack(&lambda, nbar)?.embed(nv, &xmap);
            let sy = super_jack(&lambda, mbar)?.embed(nv, &ymap);
            out.add_assign_scaled(&(&sx * &sy), &b_lambda(&lambda));
        }
    }
    Ok(out)
}

/// Kernel expansion in super Jack polynomials through y-degree `degree`.
pub fn verify_super_kernel(nbar: HookShape, mbar: HookShape, degree: u32) -> Result<Report> {
    let kernel = truncated_kernel(nbar, mbar, degree);
    let sum = super_kernel_sum(nbar, mbar, degree)?;
    let diff = &kernel.value - &sum;
    let failures = diff.terms().map(|(m, c)| format!("{:?}: {}", m.0, c)).collect();
    Ok(Report::from_failures(kernel.value.len(), failures))
}

/// Ordinary kernel ∏(1 − x_i y_j)^{−θ} against Σ b_λ P_λ(x) P_λ(y) with the
/// Jack polynomials from the triangular solve.
pub fn verify_stanley(n: usize, m: usize, degree: u32) -> Result<Report> {
    let (nbar, mbar) = (HookShape::new(n, 0), HookShape::new(m, 0));
    let kernel = truncated_kernel(nbar, mbar, degree);
    let nv = n + m;
    let xmap: Vec<usize> = (0..n).collect();
    let ymap: Vec<usize> = (n..nv).collect();
    let mut sum = MultiPoly::zero(nv);
    for d in 0..=degree as usize {
        for lambda in crate::partition::partitions_of(d) {
            if lambda.len() > n.min(m) {
                continue;
            }
            let px = jack_polynomial(&lambda, n)?.value.embed(nv, &xmap);
            let py = jack_polynomial(&lambda, m)?.value.embed(nv, &ymap);
            sum.add_assign_scaled(&(&px * &py), &b_lambda(&lambda));
        }
    }
    let diff = &kernel.value - &sum;
    let failures = diff.terms().map(|(m, c)| format!("{:?}: {}", m.0, c)).collect();
    Ok(Report::from_failures(kernel.value.len(), failures))
}

/// ⟨f, g⟩ = Σ_λ c_λ(f) c_λ(g) / b_λ in super Jack coordinates.
pub fn scalar_product(f: &MultiPoly, g: &MultiPoly, nbar: HookShape) -> Result<Rf> {
    let ef = expand_in_super_jack(f, nbar)?;
    let eg = expand_in_super_jack(g, nbar)?;
    Ok(pair_expansions(&ef.terms, &eg.terms))
}

fn pair_expansions(a: &BTreeMap<Label, Rf>, b: &BTreeMap<Label, Rf>) -> Rf {
    let mut acc = Rf::zero();
    for (l, c) in a {
        if let (Some(d), Label::Partition(lambda)) = (b.get(l), l) {
            acc = &acc + &(&(c * d) / &b_lambda(lambda));
        }
    }
    acc
}

/// ⟨ℒf, g⟩ = ⟨f, ℒ̄g⟩ for all super Jack pairs up to `degree`; for operators
/// built from D² and E¹ alone also ⟨ℒf, g⟩ = ⟨f, ℒg⟩.
pub fn verify_adjointness(spec: &OperatorSpec, nbar: HookShape, degree: usize) -> Result<Report> {
    let basis: Vec<Partition> = (0..=degree).flat_map(|d| partitions_in_hook(d, nbar)).collect();
    let mut forward = Vec::new();
    let mut dual = Vec::new();
    let mut plain = Vec::new();
    for lambda in &basis {
        let sp = super_jack(lambda, nbar)?;
        let lf = apply_l(spec, &sp, nbar)?;
        forward.push(expand_in_super_jack(&lf, nbar)?.terms);
        let lg = apply_dual_l(spec, &sp, nbar, nbar)?;
        dual.push(expand_in_super_jack(&lg, nbar)?.terms);
        plain.push(forward.last().unwrap().clone());
    }
    let self_adjoint = spec.is_self_adjoint_type();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, lambda) in basis.iter().enumerate() {
        for (j, mu) in basis.iter().enumerate() {
            let unit = |k: usize| -> BTreeMap<Label, Rf> {
                [(Label::Partition(basis[k].clone()), Rf::one())].into_iter().collect()
            };
            let lhs = pair_expansions(&forward[i], &unit(j));
            let rhs = pair_expansions(&unit(i), &dual[j]);
            checked += 1;
            if lhs != rhs {
                failures.push(format!("<L SP_{lambda}, SP_{mu}> = {lhs} but <SP_{lambda}, Lbar SP_{mu}> = {rhs}"));
            }
            if self_adjoint {
                let rhs2 = pair_expansions(&unit(i), &plain[j]);
                checked += 1;
                if lhs != rhs2 {
                    failures.push(format!("<L SP_{lambda}, SP_{mu}> = {lhs} but <SP_{lambda}, L SP_{mu}> = {rhs2}"));
                }
            }
        }
    }
    Ok(Report::from_failures(checked, failures))
}
