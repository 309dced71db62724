//! The polynomials f_a^{(m̄)} built from the transition matrix to super Jack
//! polynomials, closed forms for |m̄| ≤ 2 and a direct series oracle.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jack::super_jack;
use crate::partition::{b_lambda, in_hook, partitions_in_hook, phi_map, prec_leq, HookShape, IntVector, Partition};
use crate::poly::{MultiPoly, VarSpace};
use crate::scalar::{generalized_binomial, Rf};
use crate::symbases::{product_series_coefficient, Basis, BasisExpansion, Label};

/// f_a^{(m̄)} on the space n̄ with its super Jack coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct FPolynomial {
    pub a: IntVector,
    pub mbar: HookShape,
    pub space: VarSpace,
    pub value: MultiPoly,
    pub super_jack_expansion: BasisExpansion,
}

type FKey = (IntVector, HookShape, HookShape);
type WKey = (HookShape, Vec<i64>);

fn f_cache() -> &'static RwLock<HashMap<FKey, Arc<FPolynomial>>> {
    static C: OnceLock<RwLock<HashMap<FKey, Arc<FPolynomial>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn w_cache() -> &'static RwLock<HashMap<WKey, Rf>> {
    static C: OnceLock<RwLock<HashMap<WKey, Rf>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// −(−θ)^{1−q(j)−q(l)}, the exponent of (1 − y_l/y_j).
pub fn cross_exponent(mbar: HookShape, j: usize, l: usize) -> Rf {
    -Rf::neg_theta_pow(1 - i64::from(mbar.parity(j)) - i64::from(mbar.parity(l)))
}

/// (−1)^ν binom(c, ν).
fn signed_binomial(c: &Rf, nu: u32) -> Rf {
    let b = generalized_binomial(c, nu);
    if nu % 2 == 1 {
        -b
    } else {
        b
    }
}

fn check_shape(a: &IntVector, mbar: HookShape) -> Result<()> {
    if a.m != mbar.n || a.len() != mbar.total() {
        return Err(Error::InvalidArgument(format!("label {a} does not match m̄ = {mbar}")));
    }
    Ok(())
}

/// Σ over flows ν ≥ 0 on pairs j < l with Σ_l ν_{jl} − Σ_i ν_{ij} = d_j of
/// ∏ (−1)^ν binom(−(−θ)^{1−q(j)−q(l)}, ν).
pub fn flow_weight(mbar: HookShape, d: &[i64]) -> Rf {
    let key = (mbar, d.to_vec());
    if let Some(w) = w_cache().read().expect("cache lock").get(&key) {
        return w.clone();
    }
    let k = d.len();
    let mut inflow = vec![0i64; k];
    let w = flow_rows(mbar, d, 0, &mut inflow);
    w_cache().write().expect("cache lock").insert(key, w.clone());
    w
}

fn flow_rows(mbar: HookShape, d: &[i64], j: usize, inflow: &mut [i64]) -> Rf {
    let k = d.len();
    if j == k {
        return Rf::one();
    }
    let out = d[j] + inflow[j];
    if out < 0 {
        return Rf::zero();
    }
    if j + 1 == k {
        return if out == 0 { Rf::one() } else { Rf::zero() };
    }
    let mut acc = Rf::zero();
    distribute(mbar, d, j, j + 1, out, Rf::one(), inflow, &mut acc);
    acc
}

/// Splits the out-flow `left` of row j over the columns l ≥ `l`.
#[allow(clippy::too_many_arguments)]
fn distribute(mbar: HookShape, d: &[i64], j: usize, l: usize, left: i64, weight: Rf, inflow: &mut [i64], acc: &mut Rf) {
    let k = d.len();
    let last = l + 1 == k;
    let range = if last { left..=left } else { 0..=left };
    let c = cross_exponent(mbar, j, l);
    for nu in range {
        let w = &weight * &signed_binomial(&c, nu as u32);
        if w.is_zero() {
            continue;
        }
        inflow[l] += nu;
        if last {
            let rest = flow_rows(mbar, d, j + 1, inflow);
            *acc += &w * &rest;
        } else {
            distribute(mbar, d, j, l + 1, left - nu, w, inflow, acc);
        }
        inflow[l] -= nu;
    }
}

/// M_{aμ} = b_μ Σ_b [SP_μ(y)]_b W(b − a) with y laid out as m̄.
pub fn transition_entry(a: &IntVector, mu: &Partition, mbar: HookShape) -> Result<Rf> {
    check_shape(a, mbar)?;
    if a.total() != mu.weight() as i64 {
        return Err(Error::WeightMismatch(a.total().max(0) as usize, mu.weight()));
    }
    if !in_hook(mu, mbar) {
        return Ok(Rf::zero());
    }
    let sp = super_jack(mu, mbar)?;
    let mut acc = Rf::zero();
    for (m, c) in sp.terms() {
        let d: Vec<i64> = m.0.iter().zip(&a.entries).map(|(&b, &x)| b as i64 - x).collect();
        let w = flow_weight(mbar, &d);
        if !w.is_zero() {
            acc += &w * c;
        }
    }
    Ok(&acc * &b_lambda(mu))
}

/// f_a^{(m̄)} = Σ_μ M_{aμ} SP_μ over μ ∈ H_n̄ ∩ H_m̄, |μ| = |a|; zero unless
/// a ⪰ 0.
pub fn f_polynomial(a: &IntVector, nbar: HookShape, mbar: HookShape) -> Result<Arc<FPolynomial>> {
    check_shape(a, mbar)?;
    let key = (a.clone(), nbar, mbar);
    if let Some(f) = f_cache().read().expect("cache lock").get(&key) {
        return Ok(f.clone());
    }
    let mut expansion = BasisExpansion::new(Basis::SuperJack, nbar);
    let mut value = MultiPoly::zero(nbar.total());
    if a.is_nonneg_prec() {
        for mu in partitions_in_hook(a.total() as usize, nbar) {
            if !in_hook(&mu, mbar) {
                continue;
            }
            let c = transition_entry(a, &mu, mbar)?;
            if c.is_zero() {
                continue;
            }
            value.add_assign_scaled(&*super_jack(&mu, nbar)?, &c);
            expansion.add(Label::Partition(mu), c);
        }
    }
    let f = Arc::new(FPolynomial { a: a.clone(), mbar, space: nbar, value, super_jack_expansion: expansion });
    f_cache().write().expect("cache lock").insert(key, f.clone());
    Ok(f)
}

/// [t^r] ∏_i (1 − x_i t)^{(−θ)^{1−p(i)−q}} on the space n̄.
pub fn block_factor(q: u8, r: u32, nbar: HookShape) -> MultiPoly {
    let nv = nbar.total();
    let series = |parity: i64, s: u32, range: std::ops::Range<usize>| {
        let c = Rf::neg_theta_pow(1 - parity - i64::from(q));
        product_series_coefficient(nv, range, s, |t| signed_binomial(&c, t))
    };
    let mut out = MultiPoly::zero(nv);
    for s in 0..=r {
        let x = series(0, s, 0..nbar.n);
        if x.is_zero() {
            continue;
        }
        out = &out + &(&x * &series(1, r - s, nbar.n..nv));
    }
    out
}

/// f^{(1,0)}_{(a)} = Σ_r (−1)^r e_r(x̃) g_{a−r}(x; θ) and
/// f^{(0,1)}_{(a)} = Σ_r (−1)^r e_r(x) g_{a−r}(x̃; 1/θ).
pub fn f_closed_form_m1(a: i64, mbar: HookShape, nbar: HookShape) -> Result<MultiPoly> {
    if mbar.total() != 1 {
        return Err(Error::InvalidArgument(format!("closed form needs |m̄| = 1, got {mbar}")));
    }
    if a < 0 {
        return Ok(MultiPoly::zero(nbar.total()));
    }
    Ok(block_factor(mbar.parity(0), a as u32, nbar))
}

/// f_a = Σ_t (−1)^t binom(−(−θ)^{(m−m̃)/2}, t) p_{(a₁+t, a₂−t)} for |m̄| = 2.
pub fn f_closed_form_m2(a: &IntVector, mbar: HookShape, nbar: HookShape) -> Result<MultiPoly> {
    check_shape(a, mbar)?;
    if mbar.total() != 2 {
        return Err(Error::InvalidArgument(format!("closed form needs |m̄| = 2, got {mbar}")));
    }
    let (a1, a2) = (a.entries[0], a.entries[1]);
    let c = cross_exponent(mbar, 0, 1);
    let mut out = MultiPoly::zero(nbar.total());
    for t in 0..=a2 {
        if a1 + t < 0 {
            continue;
        }
        let p =
            &block_factor(mbar.parity(0), (a1 + t) as u32, nbar) * &block_factor(mbar.parity(1), (a2 - t) as u32, nbar);
        out.add_assign_scaled(&p, &signed_binomial(&c, t as u32));
    }
    Ok(out)
}

/// Coefficient of y^a in the generating function with every cross order
/// ν_{jl} ≤ `bound`.
pub fn direct_series_oracle(a: &IntVector, nbar: HookShape, mbar: HookShape, bound: u32) -> Result<MultiPoly> {
    check_shape(a, mbar)?;
    let k = mbar.total();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (j + 1..k).map(move |l| (j, l))).collect();
    let mut factors: HashMap<(u8, u32), MultiPoly> = HashMap::new();
    let mut out = MultiPoly::zero(nbar.total());
    let mut nu = vec![0u32; pairs.len()];
    loop {
        let mut b = a.entries.clone();
        let mut w = Rf::one();
        for (&(j, l), &v) in pairs.iter().zip(&nu) {
            b[j] += v as i64;
            b[l] -= v as i64;
            w = &w * &signed_binomial(&cross_exponent(mbar, j, l), v);
        }
        if b.iter().all(|&x| x >= 0) && !w.is_zero() {
            let mut term = MultiPoly::one(nbar.total());
            for (j, &bj) in b.iter().enumerate() {
                let key = (mbar.parity(j), bj as u32);
                let f = factors.entry(key).or_insert_with(|| block_factor(key.0, key.1, nbar));
                term = &term * f;
            }
            out.add_assign_scaled(&term, &w);
        }
        let mut i = 0;
        loop {
            if i == nu.len() {
                return Ok(out);
            }
            if nu[i] < bound {
                nu[i] += 1;
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

/// A square matrix indexed by partitions.
#[derive(Clone, Debug, Serialize)]
pub struct LabelMatrix {
    pub labels: Vec<Partition>,
    pub entries: Vec<Vec<Rf>>,
}

impl LabelMatrix {
    /// Entry (λ, μ) nonzero only if μ = λ or φ(μ) ≺ φ(λ).
    pub fn is_triangular(&self, mbar: HookShape) -> Result<bool> {
        let phis: Vec<IntVector> = self.labels.iter().map(|l| phi_map(l, mbar)).collect::<Result<_>>()?;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i != j && !c.is_zero() && !prec_leq(&phis[j], &phis[i])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn diagonal_nonzero(&self) -> bool {
        (0..self.labels.len()).all(|i| !self.entries[i][i].is_zero())
    }

    pub fn inverse(&self) -> Result<Vec<Vec<Rf>>> {
        invert(&self.entries)
    }
}

/// Gauss-Jordan inverse over ℚ(θ).
pub fn invert(m: &[Vec<Rf>]) -> Result<Vec<Vec<Rf>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rf>> = m.to_vec();
    let mut inv: Vec<Vec<Rf>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rf::one() } else { Rf::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= &x;
                inv[r][j] -= &y;
            }
        }
    }
    Ok(inv)
}

/// Partitions λ ∈ H_n̄ ∩ H_m̄ of weight k.
pub fn common_hook_partitions(k: usize, nbar: HookShape, mbar: HookShape) -> Vec<Partition> {
    partitions_in_hook(k, nbar).into_iter().filter(|l| in_hook(l, mbar)).collect()
}

/// K_{λμ} = M_{φ(λ), μ} over λ, μ ∈ H_n̄ ∩ H_m̄ of weight k.
pub fn k_matrix(k: usize, nbar: HookShape, mbar: HookShape) -> Result<LabelMatrix> {
    let labels = common_hook_partitions(k, nbar, mbar);
    let mut entries = Vec::with_capacity(labels.len());
    for lambda in &labels {
        let phi = phi_map(lambda, mbar)?;
        entries.push(labels.iter().map(|mu| transition_entry(&phi, mu, mbar)).collect::<Result<Vec<_>>>()?);
    }
    Ok(LabelMatrix { labels, entries })
}

/// {f_{φ(λ)} : λ ∈ H_n̄ ∩ H_m̄, |λ| = k}, certified independent by the
/// triangular K matrix.
pub fn f_basis_for_degree(k: usize, nbar: HookShape, mbar: HookShape) -> Result<Vec<Arc<FPolynomial>>> {
    let km = k_matrix(k, nbar, mbar)?;
    if !km.diagonal_nonzero() || !km.is_triangular(mbar)? {
        return Err(Error::Singular);
    }
    km.labels.iter().map(|l| f_polynomial(&phi_map(l, mbar)?, nbar, mbar)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{b_lambda_inv_theta, partitions_of};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn v(e: &[i64], m: usize) -> IntVector {
        IntVector::new(e.to_vec(), m).unwrap()
    }

    fn h(n: usize, nt: usize) -> HookShape {
        HookShape::new(n, nt)
    }

    /// All integer vectors of the given shape and total with entries in
    /// [−r, total + r].
    fn vectors(total: i64, mbar: HookShape, r: i64) -> Vec<IntVector> {
        let k = mbar.total();
        let mut out = Vec::new();
        let mut cur = vec![-r; k];
        if k == 0 {
            return if total == 0 { vec![IntVector::zero(mbar)] } else { out };
        }
        loop {
            if cur.iter().sum::<i64>() == total {
                out.push(v(&cur, mbar.n));
            }
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                if cur[i] < total + r {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -r;
                i += 1;
            }
        }
    }

    const SHAPES: [(usize, usize); 6] = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1)];

    #[test]
    fn diagonal_entries() {
        for (m, mt) in SHAPES {
            let mbar = h(m, mt);
            for k in 0..=4 {
                for lambda in partitions_in_hook(k, mbar) {
                    let phi = phi_map(&lambda, mbar).unwrap();
                    let tail = lambda.tail(m);
                    let mut expect = &b_lambda(&lambda) * &b_lambda_inv_theta(&tail.conjugate());
                    if tail.weight() % 2 == 1 {
                        expect = -expect;
                    }
                    assert_eq!(transition_entry(&phi, &lambda, mbar).unwrap(), expect, "{lambda} at {mbar}");
                }
            }
        }
    }

    #[test]
    fn transition_support() {
        for (m, mt) in SHAPES {
            let mbar = h(m, mt);
            for k in 0..=3i64 {
                for a in vectors(k, mbar, 2) {
                    for mu in partitions_in_hook(k as usize, mbar) {
                        let c = transition_entry(&a, &mu, mbar).unwrap();
                        if !c.is_zero() {
                            assert!(prec_leq(&phi_map(&mu, mbar).unwrap(), &a).unwrap(), "M_{a},{mu}");
                        }
                    }
                }
            }
        }
        let err = transition_entry(&v(&[2], 1), &p("1"), h(1, 0));
        assert!(matches!(err, Err(Error::WeightMismatch(..))));
    }

    #[test]
    fn single_variable_entries() {
        let mbar = h(1, 0);
        for mu in partitions_of(3) {
            let sp = super_jack(&mu, mbar).unwrap();
            let expect = &b_lambda(&mu) * &sp.coeff(&[3]);
            assert_eq!(transition_entry(&v(&[3], 1), &mu, mbar).unwrap(), expect);
        }
    }

    #[test]
    fn worked_example_single_term() {
        let nbar = h(2, 1);
        let f = f_polynomial(&v(&[3], 0), nbar, h(0, 1)).unwrap();
        let c = -Rf::theta().inv().unwrap();
        let x1 = MultiPoly::var(3, 0);
        let x2 = MultiPoly::var(3, 1);
        let xt = MultiPoly::var(3, 2);
        let t1 = (&(&x1 * &x2) * &xt).scale(&-generalized_binomial(&c, 1));
        let t2 = (&(&x1 + &x2) * &xt.pow(2)).scale(&-generalized_binomial(&c, 2));
        let cubed = xt.pow(3).scale(&-generalized_binomial(&c, 3));
        let squared = xt.pow(2).scale(&-generalized_binomial(&c, 3));
        assert_eq!(f.value, &(&t1 + &t2) + &cubed);
        assert_ne!(f.value, &(&t1 + &t2) + &squared);
    }

    #[test]
    fn support_and_homogeneity() {
        let nbar = h(2, 1);
        for (m, mt) in SHAPES {
            let mbar = h(m, mt);
            for k in 0..=3i64 {
                for a in vectors(k, mbar, 2) {
                    let f = f_polynomial(&a, nbar, mbar).unwrap();
                    if !a.is_nonneg_prec() {
                        assert!(f.value.is_zero());
                        continue;
                    }
                    assert!(f.value.is_zero() || f.value.homogeneous_component(k as u32) == f.value);
                    assert!(f.value.is_deformed_symmetric(nbar));
                }
            }
        }
    }

    #[test]
    fn oracle_agrees() {
        let nbar = h(2, 1);
        for (m, mt) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1), (1, 2)] {
            let mbar = h(m, mt);
            for k in 0..=3i64 {
                for a in vectors(k, mbar, 1) {
                    if !a.is_nonneg_prec() {
                        continue;
                    }
                    let f = f_polynomial(&a, nbar, mbar).unwrap();
                    let o = direct_series_oracle(&a, nbar, mbar, k as u32 + 2).unwrap();
                    assert_eq!(f.value, o, "a = {a} at {mbar}");
                }
            }
        }
        assert_eq!(direct_series_oracle(&v(&[0, 0], 1), nbar, h(1, 1), 2).unwrap(), MultiPoly::one(3));
    }

    #[test]
    fn closed_forms() {
        let nbar = h(2, 1);
        for mbar in [h(1, 0), h(0, 1)] {
            for a in 0..=5 {
                let f = f_polynomial(&v(&[a], mbar.n), nbar, mbar).unwrap();
                assert_eq!(f_closed_form_m1(a, mbar, nbar).unwrap(), f.value);
            }
        }
        let f1 = f_closed_form_m1(1, h(1, 0), nbar).unwrap();
        let expect = &(&MultiPoly::var(3, 0) + &MultiPoly::var(3, 1)).scale(&Rf::theta()) - &MultiPoly::var(3, 2);
        assert_eq!(f1, expect);
        for mbar in [h(2, 0), h(1, 1), h(0, 2)] {
            for k in 0..=4 {
                for a in vectors(k, mbar, 0) {
                    let f = f_polynomial(&a, nbar, mbar).unwrap();
                    assert_eq!(f_closed_form_m2(&a, mbar, nbar).unwrap(), f.value, "a = {a} at {mbar}");
                }
            }
        }
    }

    #[test]
    fn padding_invariance() {
        let nbar = h(2, 1);
        for (m, mt) in [(1, 0), (0, 1), (1, 1)] {
            for k in 0..=3i64 {
                for a in vectors(k, h(m, mt), 0) {
                    let f = f_polynomial(&a, nbar, h(m, mt)).unwrap();
                    for extra in 1..=2 {
                        let mut e = a.entries.clone();
                        e.extend(std::iter::repeat_n(0, extra));
                        let g = f_polynomial(&v(&e, m), nbar, h(m, mt + extra)).unwrap();
                        assert_eq!(f.value, g.value, "a = {a}, N = {extra}");
                    }
                }
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn basis_counts_and_k_matrix() {
        assert_eq!(f_basis_for_degree(0, h(1, 1), h(1, 1)).unwrap()[0].value, MultiPoly::one(2));
        assert_eq!(f_basis_for_degree(1, h(1, 1), h(1, 1)).unwrap().len(), 1);
        assert_eq!(f_basis_for_degree(3, h(2, 1), h(2, 1)).unwrap().len(), 3);
        let km = k_matrix(3, h(2, 1), h(2, 1)).unwrap();
        let inv = km.inverse().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Rf::zero();
                for k in 0..3 {
                    s += &km.entries[i][k] * &inv[k][j];
                }
                assert_eq!(s.is_one(), i == j);
                assert_eq!(s.is_zero(), i != j);
            }
        }
    }
}
