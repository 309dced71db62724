//! Jack polynomials by triangular solve, super Jack polynomials through the
//! power-sum homomorphism, and super Schur polynomials.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::{dominance_leq, in_hook, partitions_in_hook, partitions_of, phi_map, Partition};
use crate::poly::{MultiPoly, VarSpace};
use crate::scalar::{Rational, Rf};
use crate::symbases::{
    complete_in, deformed_power_sum, elementary_in, monomial_sym, to_monomial_basis, to_power_sums, Basis,
    BasisExpansion, Label,
};

#[derive(Clone, Debug)]
pub struct JackPolynomial {
    pub lambda: Partition,
    pub n: usize,
    pub value: MultiPoly,
    pub monomial_expansion: BasisExpansion,
    /// The coefficient ε_λ of m_λ in □m_λ.
    pub eigenvalue: Rf,
}

/// □ = (1/2θ) Σ x_i² ∂_i² + Σ_{i≠j} x_i x_j/(x_i − x_j) ∂_i.
pub fn laplace_beltrami_apply(p: &MultiPoly) -> Result<MultiPoly> {
    let n = p.nvars();
    let half_inv_theta = (&Rf::theta() + &Rf::theta()).inv()?;
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        out.add_assign_scaled(&p.x_pow_second_derivative(i, 2), &half_inv_theta);
    }
    let derivs: Vec<MultiPoly> = (0..n).map(|i| p.partial_derivative(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let num = &derivs[i] - &derivs[j];
            let q = num.exact_divide_linear(i, j)?.mul_var_pow(i, 1).mul_var_pow(j, 1);
            out = &out + &q;
        }
    }
    Ok(out)
}

/// P_λ(x₁..x_n) with unit coefficient on m_λ.
pub fn jack_polynomial(lambda: &Partition, n: usize) -> Result<JackPolynomial> {
    if lambda.len() > n {
        return Err(Error::TooManyParts(lambda.to_string(), n));
    }
    // μ ≤ λ with at most n parts, largest first
    let below: Vec<Partition> = partitions_of(lambda.weight())
        .into_iter()
        .filter(|mu| mu.len() <= n && dominance_leq(mu, lambda).unwrap_or(false))
        .collect();
    let mut actions: BTreeMap<Partition, BasisExpansion> = BTreeMap::new();
    for mu in &below {
        let image = laplace_beltrami_apply(&monomial_sym(mu, n)?)?;
        actions.insert(mu.clone(), to_monomial_basis(&image)?);
    }
    let eps = |mu: &Partition| actions[mu].partition_coeff(mu);
    let eps_lambda = eps(lambda);
    let mut u: BTreeMap<Partition, Rf> = BTreeMap::new();
    u.insert(lambda.clone(), Rf::one());
    for nu in below.iter().skip(1) {
        // (ε_λ − ε_ν) u_ν = Σ_{ν < μ ≤ λ} u_μ [m_ν] □m_μ
        let mut rhs = Rf::zero();
        for (mu, coeff) in &u {
            let c = actions[mu].partition_coeff(nu);
            if !c.is_zero() {
                rhs = &rhs + &(coeff * &c);
            }
        }
        let gap = &eps_lambda - &eps(nu);
        if gap.is_zero() {
            return Err(Error::Degenerate(lambda.to_string()));
        }
        let val = &rhs / &gap;
        if !val.is_zero() {
            u.insert(nu.clone(), val);
        }
    }
    let mut expansion = BasisExpansion::new(Basis::Monomial, VarSpace::new(n, 0));
    let mut value = MultiPoly::zero(n);
    for (mu, c) in &u {
        expansion.add(Label::Partition(mu.clone()), c.clone());
        value.add_assign_scaled(&monomial_sym(mu, n)?, c);
    }
    Ok(JackPolynomial { lambda: lambda.clone(), n, value, monomial_expansion: expansion, eigenvalue: eps_lambda })
}

type PowerCache = RwLock<HashMap<Partition, Arc<BasisExpansion>>>;
type SuperCache = RwLock<HashMap<(Partition, VarSpace), Arc<MultiPoly>>>;

fn power_cache() -> &'static PowerCache {
    static C: OnceLock<PowerCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn super_cache() -> &'static SuperCache {
    static C: OnceLock<SuperCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn disk_path(lambda: &Partition) -> Option<PathBuf> {
    let dir = std::env::var_os("CMS_CACHE_DIR")?;
    let name = lambda.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("_");
    Some(PathBuf::from(dir).join(format!("jack-p-{name}.json")))
}

fn disk_load(lambda: &Partition) -> Option<BasisExpansion> {
    let text = std::fs::read_to_string(disk_path(lambda)?).ok()?;
    let rows: Vec<(Partition, Rf)> = serde_json::from_str(&text).ok()?;
    let mut e = BasisExpansion::new(Basis::PowerSum, VarSpace::new(lambda.weight().max(1), 0));
    for (rho, c) in rows {
        e.add(Label::Partition(rho), c);
    }
    Some(e)
}

fn disk_store(lambda: &Partition, e: &BasisExpansion) {
    let Some(path) = disk_path(lambda) else { return };
    let rows: Vec<(Partition, &Rf)> = e
        .terms
        .iter()
        .filter_map(|(l, c)| match l {
            Label::Partition(p) => Some((p.clone(), c)),
            Label::Vector(_) => None,
        })
        .collect();
    if let Ok(text) = serde_json::to_string(&rows) {
        // best effort: a failed write only costs recomputation
        let tmp = path.with_extension("tmp");
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

/// P_λ in the power-sum basis, computed in |λ| variables.
pub fn jack_in_power_sums(lambda: &Partition) -> Result<Arc<BasisExpansion>> {
    if let Some(e) = power_cache().read().expect("cache lock").get(lambda) {
        return Ok(e.clone());
    }
    let e = match disk_load(lambda) {
        Some(e) => e,
        None => {
            let n = lambda.weight().max(1);
            let e = to_power_sums(&jack_polynomial(lambda, n)?.value)?;
            disk_store(lambda, &e);
            e
        }
    };
    let e = Arc::new(e);
    power_cache().write().expect("cache lock").insert(lambda.clone(), e.clone());
    Ok(e)
}

/// SP_λ(x, x̃) = φ_{n,ñ}(P_λ).
pub fn super_jack(lambda: &Partition, space: VarSpace) -> Result<Arc<MultiPoly>> {
    let key = (lambda.clone(), space);
    if let Some(p) = super_cache().read().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let expansion = jack_in_power_sums(lambda)?;
    let nv = space.total();
    let sums: Vec<MultiPoly> = (0..=lambda.weight()).map(|r| deformed_power_sum(r as u32, space)).collect();
    let mut value = MultiPoly::zero(nv);
    for (label, c) in &expansion.terms {
        let Label::Partition(rho) = label else { unreachable!() };
        let mut prod = MultiPoly::one(nv);
        for &r in rho.parts() {
            prod = &prod * &sums[r];
        }
        value.add_assign_scaled(&prod, c);
    }
    let value = Arc::new(value);
    super_cache().write().expect("cache lock").insert(key, value.clone());
    Ok(value)
}

/// Exponent of the leading monomial x^{ⁿλ} x̃^{ₙλ′} and its coefficient
/// (−1)^{|ₙλ|} b_{ₙλ′}(θ⁻¹).
pub fn super_jack_leading_term(lambda: &Partition, space: VarSpace) -> Result<(Vec<u32>, Rf)> {
    let phi = phi_map(lambda, space)?;
    let tail = lambda.tail(space.n);
    let b = crate::partition::b_lambda_inv_theta(&tail.conjugate());
    let c = if tail.weight() % 2 == 1 { -b } else { b };
    Ok((phi.entries.iter().map(|&e| e as u32).collect(), c))
}

/// S_λ(x, x̃) = det(s_{λ_i − i + j}).
pub fn super_schur(lambda: &Partition, space: VarSpace) -> MultiPoly {
    let nv = space.total();
    let l = lambda.len();
    let s = |k: i64| -> MultiPoly {
        if k < 0 {
            return MultiPoly::zero(nv);
        }
        let k = k as u32;
        let mut out = MultiPoly::zero(nv);
        for r in 0..=k {
            let h = complete_in(k - r, nv, 0..space.n);
            let e = elementary_in(r, nv, space.n..nv);
            out = &out + &(&h * &e);
        }
        out
    };
    let entries: Vec<Vec<MultiPoly>> =
        (0..l).map(|i| (0..l).map(|j| s(lambda.parts()[i] as i64 - i as i64 + j as i64)).collect()).collect();
    determinant(&entries, nv)
}

/// Determinant by permutation expansion; fine for the small sizes used here.
fn determinant(a: &[Vec<MultiPoly>], nv: usize) -> MultiPoly {
    let l = a.len();
    let mut total = MultiPoly::zero(nv);
    let mut perm: Vec<usize> = (0..l).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut sign = 1;
        for i in 0..l {
            for j in i + 1..l {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        let mut prod = MultiPoly::one(nv);
        for (i, &j) in p.iter().enumerate() {
            if a[i][j].is_zero() {
                return;
            }
            prod = &prod * &a[i][j];
        }
        total = if sign > 0 { &total + &prod } else { &total - &prod };
    });
    total
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Coordinates of a deformed-symmetric polynomial in the super Jack basis
/// {SP_λ : λ ∈ H_{n,ñ}}, found by peeling off lexicographically leading
/// monomials.
pub fn expand_in_super_jack(p: &MultiPoly, space: VarSpace) -> Result<BasisExpansion> {
    if p.nvars() != space.total() {
        return Err(Error::SpaceMismatch);
    }
    let mut out = BasisExpansion::new(Basis::SuperJack, space);
    let Some(maxdeg) = p.total_degree() else { return Ok(out) };
    for d in 0..=maxdeg {
        let mut rest = p.homogeneous_component(d);
        if rest.is_zero() {
            continue;
        }
        let mut leads: HashMap<Vec<u32>, (Partition, Rf)> = HashMap::new();
        for lambda in partitions_in_hook(d as usize, space) {
            let (e, c) = super_jack_leading_term(&lambda, space)?;
            leads.insert(e, (lambda, c));
        }
        while let Some((m, c)) = rest.lex_leading() {
            let Some((lambda, lead)) = leads.get(&m.0) else { return Err(Error::NotInSpan) };
            let k = c / lead;
            let sp = super_jack(lambda, space)?;
            rest = &rest - &sp.scale(&k);
            out.add(Label::Partition(lambda.clone()), k);
        }
    }
    Ok(out)
}

/// Rebuilds Σ c_λ SP_λ.
pub fn from_super_jack(e: &BasisExpansion) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(e.space.total());
    for (l, c) in &e.terms {
        let Label::Partition(lambda) = l else {
            return Err(Error::InvalidArgument("super Jack labels are partitions".into()));
        };
        out.add_assign_scaled(&*super_jack(lambda, e.space)?, c);
    }
    Ok(out)
}

/// True when every monomial x^a x̃^b of `p` satisfies (a,b) ≤ `top` in the
/// prefix-sum order.
pub fn supported_below(p: &MultiPoly, top: &[u32]) -> bool {
    let top: Vec<i64> = top.iter().map(|&e| e as i64).collect();
    p.terms().all(|(m, _)| {
        let e: Vec<i64> = m.0.iter().map(|&x| x as i64).collect();
        crate::partition::prefix_leq(&e, &top)
    })
}

pub fn is_in_hook(lambda: &Partition, space: VarSpace) -> bool {
    in_hook(lambda, space)
}

/// Evaluates a polynomial at a rational point, θ = `theta`.
pub fn eval_point(p: &MultiPoly, point: &[Rational], theta: &Rational) -> Result<Rational> {
    let mut acc = Rational::from_integer(0.into());
    for (m, c) in p.terms() {
        let mut v = c.eval(theta)?;
        for (x, &e) in point.iter().zip(&m.0) {
            for _ in 0..e {
                v *= x;
            }
        }
        acc += v;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::b_lambda;
    use crate::scalar::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_jacks() {
        assert_eq!(jack_polynomial(&p("1"), 3).unwrap().value, monomial_sym(&p("1"), 3).unwrap());
        assert_eq!(jack_polynomial(&p("1,1"), 3).unwrap().value, monomial_sym(&p("1,1"), 3).unwrap());
        let j = jack_polynomial(&p("2"), 2).unwrap();
        let t = Rf::theta();
        let c = &(&t + &t) / &(&t + &Rf::one());
        assert_eq!(j.monomial_expansion.partition_coeff(&p("1,1")), c);
        assert!(jack_polynomial(&p("1,1,1"), 2).is_err());
    }

    #[test]
    fn laplace_beltrami_eigen() {
        assert!(laplace_beltrami_apply(&MultiPoly::constant(2, Rf::from_int(4))).unwrap().is_zero());
        assert!(laplace_beltrami_apply(&monomial_sym(&p("1"), 1).unwrap()).unwrap().is_zero());
        let j = jack_polynomial(&p("2,1"), 3).unwrap();
        let image = laplace_beltrami_apply(&j.value).unwrap();
        assert_eq!(image, j.value.scale(&j.eigenvalue));
    }

    #[test]
    fn jack_at_theta_one_is_schur() {
        // θ = 1 gives Schur polynomials; compare with Jacobi–Trudi at ñ = 0
        for lambda in partitions_of(3) {
            let j = jack_polynomial(&lambda, 3).unwrap().value.eval_theta(&rat(1, 1)).unwrap();
            let s = super_schur(&lambda, VarSpace::new(3, 0));
            assert_eq!(j, s, "{lambda}");
        }
    }

    #[test]
    fn power_sum_forms() {
        let e = jack_in_power_sums(&p("1")).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert!(e.partition_coeff(&p("1")).is_one());
        let e = jack_in_power_sums(&p("1,1")).unwrap();
        assert_eq!(e.partition_coeff(&p("1,1")), Rf::from_rational(rat(1, 2)));
        assert_eq!(e.partition_coeff(&p("2")), Rf::from_rational(rat(-1, 2)));
    }

    #[test]
    fn super_jack_examples() {
        let s = VarSpace::new(1, 1);
        let sp1 = super_jack(&p("1"), s).unwrap();
        assert_eq!(*sp1, deformed_power_sum(1, s));
        assert!(super_jack(&p("2,2"), s).unwrap().is_zero());
        let sp = super_jack(&p("2,1"), VarSpace::new(1, 1)).unwrap();
        let (e, c) = super_jack_leading_term(&p("2,1"), VarSpace::new(1, 1)).unwrap();
        assert_eq!(sp.coeff(&e), c);
        assert!(supported_below(&sp, &e));
    }

    #[test]
    fn super_schur_examples() {
        let s = VarSpace::new(2, 1);
        let expected = &(&MultiPoly::var(3, 0) + &MultiPoly::var(3, 1)) + &MultiPoly::var(3, 2);
        assert_eq!(super_schur(&p("1"), s), expected);
    }

    #[test]
    fn hook_expansion_sign() {
        use crate::symbases::{hook_expansion_printed, hook_reduction_printed};
        let s = VarSpace::new(2, 1);
        for (a1, a2) in [(1, 0), (1, 1), (2, 1), (1, 2)] {
            let hook =
                Partition::new(std::iter::once(a1 as usize).chain(std::iter::repeat_n(1, a2 as usize)).collect());
            let schur = super_schur(&hook, s);
            let signed = if a2 % 2 == 0 { schur.clone() } else { -&schur };
            assert_eq!(hook_expansion_printed(a1, a2, s), signed);
            let plain = super_schur(&hook, VarSpace::new(3, 0));
            let signed = if a2 % 2 == 0 { plain.clone() } else { -&plain };
            assert_eq!(hook_reduction_printed(a1, a2, 3), signed);
        }
    }

    #[test]
    fn expansions() {
        let s = VarSpace::new(1, 1);
        let sp = super_jack(&p("2"), s).unwrap();
        let e = expand_in_super_jack(&sp, s).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert!(e.partition_coeff(&p("2")).is_one());
        let p1 = deformed_power_sum(1, s);
        let sq = &p1 * &p1;
        let e = expand_in_super_jack(&sq, s).unwrap();
        assert_eq!(from_super_jack(&e).unwrap(), sq);
        assert_eq!(expand_in_super_jack(&MultiPoly::var(2, 0), s), Err(Error::NotInSpan));
        assert!(b_lambda(&p("2")).eval(&rat(1, 1)).unwrap() == rat(1, 1));
    }
}
