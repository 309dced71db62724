//! Eigenfunctions of ℒ as finite series Σ_a u(a) f_{φ(λ)−a}: the action of
//! the operators on the f-basis, eigenvalues, admissibility and the explicit
//! super Jack series.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fbasis::{common_hook_partitions, f_polynomial, LabelMatrix};
use crate::operators::{apply_d, apply_e, OperatorSpec, Report};
use crate::partition::{
    b_lambda_inv_theta, enumerate_cone_window, in_hook, phi_map, shift_vector, HookShape, IntVector, Partition,
};
use crate::poly::MultiPoly;
use crate::scalar::{Rational, Rf};
use crate::symbases::{Basis, BasisExpansion, Label};

/// ℰ(a) = α₂ Σ_j (−θ)^{q(j)} a_j(a_j − 1 + 2s_j) + (2α₂ + β₁)|a|.
pub fn eigenvalue_of_vector(a: &IntVector, spec: &OperatorSpec, nbar: HookShape, mbar: HookShape) -> Rf {
    let s = shift_vector(nbar, mbar);
    let mut quad = Rf::zero();
    for (j, &aj) in a.entries.iter().enumerate() {
        if aj == 0 {
            continue;
        }
        let inner = &Rf::from_int(aj - 1) + &s[j].scale(&Rational::from_integer(2.into()));
        let term = &inner * &Rf::neg_theta_pow(i64::from(mbar.parity(j)));
        quad += &term * &Rf::from_int(aj);
    }
    let lin = &spec.alpha[2].scale(&Rational::from_integer(2.into())) + &spec.beta[1];
    &(&spec.alpha[2] * &quad) + &(&lin * &Rf::from_int(a.total()))
}

/// α₂ Σ_j λ_j(λ_j + 1 + 2θ(n − j + 1) − 2ñ) + β₁|λ|.
pub fn eigenvalue_of_partition(lambda: &Partition, spec: &OperatorSpec, nbar: HookShape) -> Rf {
    let mut quad = Rf::zero();
    for (j, &l) in lambda.parts().iter().enumerate() {
        let l = l as i64;
        let t = &Rf::theta() * &Rf::from_int(2 * (nbar.n as i64 - j as i64));
        let inner = &Rf::from_int(l + 1 - 2 * nbar.nt as i64) + &t;
        quad += &inner * &Rf::from_int(l);
    }
    &(&spec.alpha[2] * &quad) + &(&spec.beta[1] * &Rf::from_int(lambda.weight() as i64))
}

/// The basic operators whose action on f_a is known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    E0,
    E1,
    D0,
    D1,
    D2,
}

impl FromStr for Action {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E0" => Ok(Action::E0),
            "E1" => Ok(Action::E1),
            "D0" => Ok(Action::D0),
            "D1" => Ok(Action::D1),
            "D2" => Ok(Action::D2),
            _ => Err(Error::Parse(format!("unknown operator {s:?}"))),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Action::E0 => "E0",
            Action::E1 => "E1",
            Action::D0 => "D0",
            Action::D1 => "D1",
            Action::D2 => "D2",
        };
        write!(f, "{s}")
    }
}

pub const ACTIONS: [Action; 5] = [Action::E0, Action::E1, Action::D0, Action::D1, Action::D2];

/// Terms c_b f_b of the image of f_a; labels b with b ⪰̸ 0 are dropped.
type Terms = Vec<(IntVector, Rf)>;

fn push(out: &mut Terms, b: IntVector, c: Rf) {
    if !c.is_zero() && b.is_nonneg_prec() {
        out.push((b, c));
    }
}

/// Σ_{j<l} (θ − 1)(−θ)^{1−q(j)−q(l)} Σ_ν (2ν + 2 − k) f_{a + νe_j − (2−k+ν)e_l}.
fn pair_terms(k: u32, a: &IntVector, mbar: HookShape, out: &mut Terms) {
    let n = a.len();
    let base = &Rf::theta() - &Rf::one();
    let sums = a.suffix_sums();
    for j in 0..n {
        for l in j + 1..n {
            let c = &base * &Rf::neg_theta_pow(1 - i64::from(mbar.parity(j)) - i64::from(mbar.parity(l)));
            for nu in 0.. {
                let step = 2 - k as i64 + nu;
                // suffix sums at j < i ≤ l drop by `step`
                if (j + 1..=l).any(|i| sums[i] < step) {
                    break;
                }
                let mut b = a.clone();
                b.entries[j] += nu;
                b.entries[l] -= step;
                push(out, b, c.scale(&Rational::from_integer((2 * nu + 2 - k as i64).into())));
            }
        }
    }
}

/// Image of f_a under one basic operator, from the closed-form action.
pub fn action_terms(which: Action, a: &IntVector, nbar: HookShape, mbar: HookShape) -> Terms {
    let s = shift_vector(nbar, mbar);
    let plus = |j: usize| &Rf::from_int(a.entries[j]) + &s[j];
    let mut out = Vec::new();
    match which {
        Action::E1 => push(&mut out, a.clone(), Rf::from_int(a.total())),
        Action::E0 => {
            for j in 0..a.len() {
                push(&mut out, a.bumped(j, -1), &plus(j) - &Rf::one());
            }
        }
        Action::D2 => {
            let diag = eigenvalue_of_vector(a, &d2_spec(), nbar, mbar);
            push(&mut out, a.clone(), diag);
            pair_terms(2, a, mbar, &mut out);
        }
        Action::D0 | Action::D1 => {
            let k = if which == Action::D0 { 0 } else { 1 };
            for j in 0..a.len() {
                let q = i64::from(mbar.parity(j));
                let mut first = plus(j);
                if k == 0 {
                    first -= &Rf::from_int(2);
                } else {
                    first += &(&Rf::neg_theta_pow(-q) - &Rf::one());
                }
                let c = &(&Rf::neg_theta_pow(q) * &first) * &(&plus(j) - &Rf::one());
                push(&mut out, a.bumped(j, -(2 - k)), c);
            }
            pair_terms(k as u32, a, mbar, &mut out);
        }
    }
    out
}

fn d2_spec() -> OperatorSpec {
    OperatorSpec::trig()
}

/// The action as an f-basis expansion.
pub fn action_on_f(which: Action, a: &IntVector, nbar: HookShape, mbar: HookShape) -> BasisExpansion {
    let mut e = BasisExpansion::new(Basis::FBasis, nbar);
    e.mbar = Some(mbar);
    for (b, c) in action_terms(which, a, nbar, mbar) {
        e.add(Label::Vector(b), c);
    }
    e
}

/// Σ c_b f_b for the closed-form image of f_a.
pub fn action_image(which: Action, a: &IntVector, nbar: HookShape, mbar: HookShape) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(nbar.total());
    for (b, c) in action_terms(which, a, nbar, mbar) {
        out.add_assign_scaled(&f_polynomial(&b, nbar, mbar)?.value, &c);
    }
    Ok(out)
}

/// The operator applied directly to a polynomial.
pub fn apply_action(which: Action, p: &MultiPoly, nbar: HookShape) -> Result<MultiPoly> {
    match which {
        Action::E0 => Ok(apply_e(0, p, nbar)),
        Action::E1 => Ok(apply_e(1, p, nbar)),
        Action::D0 => apply_d(0, p, nbar),
        Action::D1 => apply_d(1, p, nbar),
        Action::D2 => apply_d(2, p, nbar),
    }
}

/// All a ⪰ 0 with |a| ≤ `max_weight` and every |a_i| ≤ `max_entry`.
pub fn nonneg_labels(mbar: HookShape, max_weight: i64, max_entry: i64) -> Vec<IntVector> {
    let k = mbar.total();
    let mut out = Vec::new();
    let mut entries = vec![-max_entry; k];
    if k == 0 {
        return vec![IntVector::zero(mbar)];
    }
    loop {
        let a = IntVector { entries: entries.clone(), m: mbar.n };
        if a.total() <= max_weight && a.is_nonneg_prec() {
            out.push(a);
        }
        let mut i = 0;
        loop {
            if i == k {
                out.sort_by_key(|a| a.order_key());
                return out;
            }
            if entries[i] < max_entry {
                entries[i] += 1;
                break;
            }
            entries[i] = -max_entry;
            i += 1;
        }
    }
}

/// Compares the closed-form images with direct operator application on
/// every label from [`nonneg_labels`].
pub fn verify_action(
    which: &[Action],
    nbar: HookShape,
    mbar: HookShape,
    max_weight: i64,
    max_entry: i64,
) -> Result<Report> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for a in nonneg_labels(mbar, max_weight, max_entry) {
        let f = f_polynomial(&a, nbar, mbar)?;
        for &w in which {
            checked += 1;
            if apply_action(w, &f.value, nbar)? != action_image(w, &a, nbar, mbar)? {
                failures.push(format!("{w} on f_{a}"));
            }
        }
    }
    Ok(Report { pass: failures.is_empty(), checked, failures })
}

/// Off-diagonal part of ℒ f_a; the diagonal is ℰ(a).
fn l_off_diagonal(spec: &OperatorSpec, a: &IntVector, nbar: HookShape, mbar: HookShape) -> Terms {
    let mut out: BTreeMap<IntVector, Rf> = BTreeMap::new();
    let mut add = |which: Action, coeff: &Rf| {
        if coeff.is_zero() {
            return;
        }
        for (b, c) in action_terms(which, a, nbar, mbar) {
            if &b == a {
                continue;
            }
            *out.entry(b).or_insert_with(Rf::zero) += &(&c * coeff);
        }
    };
    add(Action::D0, &spec.alpha[0]);
    add(Action::D1, &spec.alpha[1]);
    add(Action::D2, &spec.alpha[2]);
    add(Action::E0, &spec.beta[0]);
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// u(0) = (−1)^{|ₘλ|} / b_{ₘλ′}(θ⁻¹).
pub fn leading_coefficient(lambda: &Partition, mbar: HookShape) -> Rf {
    let tail = lambda.tail(mbar.n);
    let u = b_lambda_inv_theta(&tail.conjugate()).inv().expect("b_λ is nonzero");
    if tail.weight() % 2 == 1 {
        -u
    } else {
        u
    }
}

/// ℰ(φ(λ)) ≠ ℰ(φ(λ) − a) for every nonzero a in the cone window.
pub fn is_admissible(lambda: &Partition, spec: &OperatorSpec, nbar: HookShape, mbar: HookShape) -> Result<bool> {
    Ok(degenerate_offset(lambda, spec, nbar, mbar)?.is_none())
}

/// Window vectors that can carry a nonzero coefficient. Without α₂ every
/// off-diagonal step lowers the degree, so nonzero a with |a| = 0 are skipped.
fn reachable_window(lambda: &Partition, spec: &OperatorSpec, mbar: HookShape) -> Result<Vec<IntVector>> {
    let window = enumerate_cone_window(lambda, mbar, spec)?;
    if !spec.alpha[2].is_zero() {
        return Ok(window);
    }
    Ok(window.into_iter().filter(|a| a.is_zero() || a.total() != 0).collect())
}

/// The first window vector whose eigenvalue clashes with the top one.
pub fn degenerate_offset(
    lambda: &Partition,
    spec: &OperatorSpec,
    nbar: HookShape,
    mbar: HookShape,
) -> Result<Option<IntVector>> {
    let top = phi_map(lambda, mbar)?;
    let e = eigenvalue_of_vector(&top, spec, nbar, mbar);
    for a in reachable_window(lambda, spec, mbar)? {
        if !a.is_zero() && eigenvalue_of_vector(&top.sub(&a), spec, nbar, mbar) == e {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Admissibility at a specific rational θ.
pub fn is_admissible_at(
    lambda: &Partition,
    spec: &OperatorSpec,
    nbar: HookShape,
    mbar: HookShape,
    theta: &Rational,
) -> Result<bool> {
    let top = phi_map(lambda, mbar)?;
    let e = eigenvalue_of_vector(&top, spec, nbar, mbar);
    for a in reachable_window(lambda, spec, mbar)? {
        if a.is_zero() {
            continue;
        }
        let gap = &e - &eigenvalue_of_vector(&top.sub(&a), spec, nbar, mbar);
        match gap.eval(theta) {
            Ok(v) if v != Rational::from_integer(0.into()) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// P_λ^{(m̄)} = Σ_a u(a) f_{φ(λ)−a}.
#[derive(Clone, Debug)]
pub struct Eigenfunction {
    pub lambda: Partition,
    pub nbar: HookShape,
    pub mbar: HookShape,
    pub spec: OperatorSpec,
    /// u(a), keyed by a.
    pub coefficients: BTreeMap<IntVector, Rf>,
    pub eigenvalue: Rf,
    pub value: MultiPoly,
}

impl Eigenfunction {
    /// Σ_a u(a) times the super Jack coordinates of f_{φ(λ)−a}.
    pub fn super_jack_expansion(&self) -> Result<BasisExpansion> {
        let top = phi_map(&self.lambda, self.mbar)?;
        let mut out = BasisExpansion::new(Basis::SuperJack, self.nbar);
        for (a, u) in &self.coefficients {
            let f = f_polynomial(&top.sub(a), self.nbar, self.mbar)?;
            for (l, c) in &f.super_jack_expansion.terms {
                out.add(l.clone(), c * u);
            }
        }
        Ok(out)
    }

    /// ℒP − ℰP, zero for a correct eigenfunction.
    pub fn residual(&self) -> Result<MultiPoly> {
        let lp = crate::operators::apply_l(&self.spec, &self.value, self.nbar)?;
        Ok(&lp - &self.value.scale(&self.eigenvalue))
    }
}

impl Serialize for Eigenfunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Coefficient<'a> {
            a: &'a IntVector,
            u: &'a Rf,
        }
        #[derive(Serialize)]
        struct View<'a> {
            lambda: &'a Partition,
            nbar: [usize; 2],
            mbar: [usize; 2],
            spec: &'a OperatorSpec,
            eigenvalue: &'a Rf,
            coefficients: Vec<Coefficient<'a>>,
            polynomial: &'a MultiPoly,
        }
        View {
            lambda: &self.lambda,
            nbar: [self.nbar.n, self.nbar.nt],
            mbar: [self.mbar.n, self.mbar.nt],
            spec: &self.spec,
            eigenvalue: &self.eigenvalue,
            coefficients: self.coefficients.iter().map(|(a, u)| Coefficient { a, u }).collect(),
            polynomial: &self.value,
        }
        .serialize(s)
    }
}

fn check_labels(lambda: &Partition, nbar: HookShape, mbar: HookShape) -> Result<()> {
    if !in_hook(lambda, nbar) {
        return Err(Error::NotInHook(lambda.to_string(), nbar.n, nbar.nt));
    }
    if !in_hook(lambda, mbar) {
        return Err(Error::NotInHook(lambda.to_string(), mbar.n, mbar.nt));
    }
    Ok(())
}

fn assemble(
    lambda: &Partition,
    spec: &OperatorSpec,
    nbar: HookShape,
    mbar: HookShape,
    coefficients: BTreeMap<IntVector, Rf>,
) -> Result<Eigenfunction> {
    let top = phi_map(lambda, mbar)?;
    let mut value = MultiPoly::zero(nbar.total());
    for (a, u) in &coefficients {
        value.add_assign_scaled(&f_polynomial(&top.sub(a), nbar, mbar)?.value, u);
    }
    Ok(Eigenfunction {
        lambda: lambda.clone(),
        nbar,
        mbar,
        spec: spec.clone(),
        eigenvalue: eigenvalue_of_vector(&top, spec, nbar, mbar),
        coefficients,
        value,
    })
}

/// Solves for u(a) over the cone window, starting from u(0) and pushing
/// the action of ℒ down through the f-labels φ(λ) − a.
pub fn solve_eigenfunction(
    lambda: &Partition,
    spec: &OperatorSpec,
    nbar: HookShape,
    mbar: HookShape,
) -> Result<Eigenfunction> {
    check_labels(lambda, nbar, mbar)?;
    if !is_admissible(lambda, spec, nbar, mbar)? {
        return Err(Error::Degenerate(lambda.to_string()));
    }
    let top = phi_map(lambda, mbar)?;
    let target = eigenvalue_of_vector(&top, spec, nbar, mbar);
    let window = reachable_window(lambda, spec, mbar)?;
    let mut acc: BTreeMap<IntVector, Rf> = window.iter().map(|a| (a.clone(), Rf::zero())).collect();
    let mut coefficients = BTreeMap::new();
    for a in &window {
        let label = top.sub(a);
        let u = if a.is_zero() {
            leading_coefficient(lambda, mbar)
        } else {
            let gap = &target - &eigenvalue_of_vector(&label, spec, nbar, mbar);
            acc[a].checked_div(&gap)?
        };
        if u.is_zero() {
            continue;
        }
        for (b, c) in l_off_diagonal(spec, &label, nbar, mbar) {
            let slot = acc
                .get_mut(&top.sub(&b))
                .ok_or_else(|| Error::InvalidArgument(format!("label {b} left the cone window of {lambda}")))?;
            *slot += &(&c * &u);
        }
        coefficients.insert(a.clone(), u);
    }
    assemble(lambda, spec, nbar, mbar, coefficients)
}

/// The explicit path sum for b_λ SP_λ: every chain of steps
/// c → c + ν(e_j − e_l), j < l, ν ≥ 1, weighted by
/// 2(θ − 1)(−θ)^{1−q(j)−q(l)} ν / (ℰ(φ(λ)) − ℰ(c')), scaled by u(0).
pub fn super_jack_series(lambda: &Partition, nbar: HookShape, mbar: HookShape) -> Result<Eigenfunction> {
    let spec = OperatorSpec::trig();
    check_labels(lambda, nbar, mbar)?;
    if !is_admissible(lambda, &spec, nbar, mbar)? {
        return Err(Error::Degenerate(lambda.to_string()));
    }
    let top = phi_map(lambda, mbar)?;
    let target = eigenvalue_of_vector(&top, &spec, nbar, mbar);
    let u0 = leading_coefficient(lambda, mbar);
    let mut sums: BTreeMap<IntVector, Rf> = BTreeMap::new();
    let ctx = SeriesContext { spec: &spec, nbar, mbar, target: &target };
    series_paths(&ctx, &top, u0, &mut sums)?;
    let coefficients = sums.into_iter().filter(|(_, c)| !c.is_zero()).map(|(c, u)| (top.sub(&c), u)).collect();
    assemble(lambda, &spec, nbar, mbar, coefficients)
}

struct SeriesContext<'a> {
    spec: &'a OperatorSpec,
    nbar: HookShape,
    mbar: HookShape,
    target: &'a Rf,
}

fn series_paths(ctx: &SeriesContext, label: &IntVector, weight: Rf, sums: &mut BTreeMap<IntVector, Rf>) -> Result<()> {
    *sums.entry(label.clone()).or_insert_with(Rf::zero) += &weight;
    let n = label.len();
    let two_t = (&Rf::theta() - &Rf::one()).scale(&Rational::from_integer(2.into()));
    let s = label.suffix_sums();
    for j in 0..n {
        for l in j + 1..n {
            let c = &two_t * &Rf::neg_theta_pow(1 - i64::from(ctx.mbar.parity(j)) - i64::from(ctx.mbar.parity(l)));
            for nu in 1.. {
                if (j + 1..=l).any(|i| s[i] < nu) {
                    break;
                }
                let mut next = label.clone();
                next.entries[j] += nu;
                next.entries[l] -= nu;
                let gap = ctx.target - &eigenvalue_of_vector(&next, ctx.spec, ctx.nbar, ctx.mbar);
                let w = (&(&weight * &c) * &Rf::from_int(nu)).checked_div(&gap)?;
                series_paths(ctx, &next, w, sums)?;
            }
        }
    }
    Ok(())
}

/// Compares P_λ^{(m̄₁)} and P_λ^{(m̄₂)}.
pub fn check_m_independence(
    lambda: &Partition,
    spec: &OperatorSpec,
    nbar: HookShape,
    m1: HookShape,
    m2: HookShape,
) -> Result<Report> {
    let p1 = solve_eigenfunction(lambda, spec, nbar, m1)?;
    let p2 = solve_eigenfunction(lambda, spec, nbar, m2)?;
    let diff = &p1.value - &p2.value;
    let failures = diff.terms().map(|(m, c)| format!("{:?}: {}", m.0, c)).collect::<Vec<_>>();
    Ok(Report { pass: failures.is_empty(), checked: p1.value.len().max(p2.value.len()), failures })
}

/// The shape (m, λ_{m+1}) minimising m + λ_{m+1}, smallest m on ties.
pub fn minimal_mbar(lambda: &Partition) -> HookShape {
    (0..=lambda.len())
        .map(|m| HookShape::new(m, lambda.part(m + 1)))
        .min_by_key(|h| (h.total(), h.n))
        .expect("nonempty range")
}

/// All P_λ with λ ∈ H_n̄ ∩ H_m̄, |λ| ≤ d.
pub fn eigenbasis(spec: &OperatorSpec, nbar: HookShape, mbar: HookShape, d: usize) -> Result<Vec<Eigenfunction>> {
    let mut out = Vec::new();
    for k in 0..=d {
        for lambda in common_hook_partitions(k, nbar, mbar) {
            out.push(solve_eigenfunction(&lambda, spec, nbar, mbar)?);
        }
    }
    Ok(out)
}

/// N_{λμ}: coefficient of SP_μ in P_λ.
pub fn n_matrix(basis: &[Eigenfunction]) -> Result<LabelMatrix> {
    let labels: Vec<Partition> = basis.iter().map(|p| p.lambda.clone()).collect();
    let mut entries = Vec::with_capacity(basis.len());
    for p in basis {
        let e = p.super_jack_expansion()?;
        if e.terms.keys().any(|l| !matches!(l, Label::Partition(mu) if labels.contains(mu))) {
            return Err(Error::NotInSpan);
        }
        entries.push(labels.iter().map(|mu| e.partition_coeff(mu)).collect());
    }
    Ok(LabelMatrix { labels, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::{expand_in_super_jack, super_jack};
    use crate::partition::{b_lambda, partitions_in_hook};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn h(n: usize, nt: usize) -> HookShape {
        HookShape::new(n, nt)
    }

    fn v(e: &[i64], m: usize) -> IntVector {
        IntVector::new(e.to_vec(), m).unwrap()
    }

    #[test]
    fn eigenvalues() {
        let spec = OperatorSpec::trig();
        let nbar = h(2, 1);
        assert!(eigenvalue_of_vector(&v(&[0, 0, 0], 2), &spec, nbar, h(2, 1)).is_zero());
        let e1 = eigenvalue_of_partition(&p("1"), &spec, nbar);
        let expect = &(&Rf::from_int(2) + &(&Rf::theta() * &Rf::from_int(4))) - &Rf::from_int(2);
        assert_eq!(e1, expect);
        assert_eq!(eigenvalue_of_vector(&phi_map(&p("1"), h(1, 1)).unwrap(), &spec, nbar, h(1, 1)), expect);
        let b1: OperatorSpec = "b1=3".parse().unwrap();
        assert_eq!(eigenvalue_of_vector(&v(&[2, 1], 1), &b1, nbar, h(1, 1)), Rf::from_int(9));
        assert!(eigenvalue_of_partition(&Partition::empty(), &spec, nbar).is_zero());
    }

    #[test]
    fn eigenvalue_forms_agree() {
        let nbar = h(2, 1);
        let spec: OperatorSpec = "a2=1,b1=-1/2".parse().unwrap();
        for mbar in [h(2, 1), h(1, 1), h(0, 2)] {
            for k in 0..=5 {
                for lambda in partitions_in_hook(k, mbar) {
                    let a = eigenvalue_of_vector(&phi_map(&lambda, mbar).unwrap(), &spec, nbar, mbar);
                    assert_eq!(a, eigenvalue_of_partition(&lambda, &spec, nbar), "{lambda} at {mbar}");
                }
            }
        }
    }

    #[test]
    fn simple_actions() {
        let (nbar, mbar) = (h(2, 1), h(1, 1));
        let a = v(&[2, 1], 1);
        let e1 = action_on_f(Action::E1, &a, nbar, mbar);
        assert_eq!(e1.coeff(&Label::Vector(a.clone())), Rf::from_int(3));
        let f = f_polynomial(&a, nbar, mbar).unwrap();
        assert_eq!(apply_e(1, &f.value, nbar), f.value.scale(&Rf::from_int(3)));
    }

    fn image(which: Action, a: &IntVector, nbar: HookShape, mbar: HookShape) -> MultiPoly {
        action_image(which, a, nbar, mbar).unwrap()
    }

    #[test]
    fn exhaustive_action_small() {
        let labels = nonneg_labels(h(1, 1), 1, 2);
        assert!(labels.contains(&v(&[-1, 2], 1)));
        assert!(!labels.contains(&v(&[1, -1], 1)));
        let r = verify_action(&ACTIONS, h(1, 1), h(1, 1), 1, 2).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.checked, 5 * labels.len());
    }

    #[test]
    fn actions_match_operators_small() {
        let nbar = h(2, 1);
        for mbar in [h(1, 0), h(0, 1), h(1, 1)] {
            for a in [v(&[1, 1], mbar.n), v(&[2, 0], mbar.n), v(&[0, 2], mbar.n), v(&[-1, 3], mbar.n)] {
                if a.len() != mbar.total() {
                    continue;
                }
                let f = f_polynomial(&a, nbar, mbar).unwrap().value.clone();
                assert_eq!(image(Action::E0, &a, nbar, mbar), apply_e(0, &f, nbar), "E0 {a}");
                for (k, which) in [(0, Action::D0), (1, Action::D1), (2, Action::D2)] {
                    assert_eq!(image(which, &a, nbar, mbar), apply_d(k, &f, nbar).unwrap(), "{which} {a} {mbar}");
                }
            }
        }
    }

    #[test]
    fn worked_example() {
        let spec = OperatorSpec::trig();
        let nbar = h(2, 1);
        let lambda = p("1,1,1");
        let small = solve_eigenfunction(&lambda, &spec, nbar, h(0, 1)).unwrap();
        assert_eq!(small.coefficients.len(), 1);
        let big = solve_eigenfunction(&lambda, &spec, nbar, h(2, 1)).unwrap();
        let top = phi_map(&lambda, h(2, 1)).unwrap();
        let labels: Vec<IntVector> = big.coefficients.keys().map(|a| top.sub(a)).collect();
        let expected = [
            v(&[1, 1, 1], 2),
            v(&[1, 2, 0], 2),
            v(&[2, 1, 0], 2),
            v(&[2, 0, 1], 2),
            v(&[3, -1, 1], 2),
            v(&[3, 0, 0], 2),
        ];
        assert_eq!(labels.len(), 6, "{labels:?}");
        for e in &expected {
            assert!(labels.contains(e), "{e} missing");
        }
        assert_eq!(small.value, big.value);
        assert!(big.residual().unwrap().is_zero());
    }

    #[test]
    fn normalisation() {
        let spec = OperatorSpec::trig();
        let nbar = h(2, 1);
        for k in 0..=3 {
            for lambda in partitions_in_hook(k, nbar) {
                let mbar = minimal_mbar(&lambda);
                let e = solve_eigenfunction(&lambda, &spec, nbar, mbar).unwrap();
                let sj = expand_in_super_jack(&e.value, nbar).unwrap();
                assert_eq!(sj.partition_coeff(&lambda), b_lambda(&lambda), "{lambda}");
                assert_eq!(e.value, super_jack(&lambda, nbar).unwrap().scale(&b_lambda(&lambda)));
            }
        }
    }

    #[test]
    fn series_matches() {
        let nbar = h(2, 1);
        for k in 0..=3 {
            for lambda in partitions_in_hook(k, nbar) {
                for mbar in [minimal_mbar(&lambda), h(2, 1)] {
                    if !in_hook(&lambda, mbar) {
                        continue;
                    }
                    let s = super_jack_series(&lambda, nbar, mbar).unwrap();
                    let expect = super_jack(&lambda, nbar).unwrap().scale(&b_lambda(&lambda));
                    assert_eq!(s.value, expect, "{lambda} at {mbar}");
                }
            }
        }
    }

    #[test]
    fn admissibility_conditions() {
        let b1: OperatorSpec = "b1=1,b0=2,a1=1".parse().unwrap();
        let trig = OperatorSpec::trig();
        let nbar = h(2, 1);
        for k in 0..=5 {
            for mbar in [h(2, 1), h(1, 1), h(3, 0), h(0, 1)] {
                for lambda in partitions_in_hook(k, mbar) {
                    assert!(is_admissible(&lambda, &b1, nbar, mbar).unwrap());
                    if mbar.nt <= 1 {
                        assert!(is_admissible(&lambda, &trig, nbar, mbar).unwrap(), "{lambda} at {mbar}");
                    }
                }
            }
        }
        assert!(is_admissible_at(&p("2,1"), &trig, nbar, h(2, 1), &Rational::from_integer(2.into())).unwrap());
    }

    #[test]
    fn m_independence_and_basis() {
        let spec: OperatorSpec = "b1=1".parse().unwrap();
        let r = check_m_independence(&p("2"), &spec, h(2, 1), h(1, 0), h(2, 0)).unwrap();
        assert!(r.pass);
        let r = check_m_independence(&Partition::empty(), &OperatorSpec::trig(), h(2, 1), h(1, 0), h(0, 1)).unwrap();
        assert!(r.pass);
        let basis = eigenbasis(&OperatorSpec::trig(), h(1, 1), h(1, 1), 2).unwrap();
        assert_eq!(basis.len(), 4);
        assert!(basis[0].value == MultiPoly::one(2));
        let n = n_matrix(&basis).unwrap();
        assert!(n.is_triangular(h(1, 1)).unwrap());
        for (i, l) in n.labels.iter().enumerate() {
            assert_eq!(n.entries[i][i], b_lambda(l));
        }
    }

    #[test]
    fn minimal_shapes() {
        assert_eq!(minimal_mbar(&p("1,1,1")), h(0, 1));
        assert_eq!(minimal_mbar(&p("3")), h(1, 0));
        assert_eq!(minimal_mbar(&Partition::empty()), h(0, 0));
    }
}
