//! Sparse multivariate polynomials over ℚ(θ).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::HookShape;
use crate::scalar::{Rational, Rf};

/// Variable layout (x₁..x_n, x̃₁..x̃_ñ); parity 0 for x, 1 for x̃.
pub type VarSpace = HookShape;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rf>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rf) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rf::one())
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i, 1), Rf::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rf) -> Self {
        assert_eq!(m.0.len(), nvars, "exponent length");
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rf)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rf)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rf {
        self.terms.get(&Monomial(exp.to_vec())).cloned().unwrap_or_else(Rf::zero)
    }

    /// Adds c·x^m in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rf) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &MultiPoly, c: &Rf) {
        self.check(other);
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    fn check(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.nvars != other.nvars {
            return Err(Error::SpaceMismatch);
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.nvars != other.nvars {
            return Err(Error::SpaceMismatch);
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rf) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Product dropping every monomial whose `weight` exceeds `max`.
    pub fn mul_truncated(&self, other: &MultiPoly, weight: impl Fn(&Monomial) -> u32, max: u32) -> MultiPoly {
        self.check(other);
        let mut out = MultiPoly::zero(self.nvars);
        for (a, c) in &self.terms {
            let wa = weight(a);
            if wa > max {
                continue;
            }
            for (b, d) in &other.terms {
                let m = a.mul(b);
                if weight(&m) <= max {
                    out.add_term(m, c * d);
                }
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> MultiPoly {
        self.filter(|m| m.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[i] -= 1;
            out.add_term(mm, c.scale(&Rational::from_integer(e.into())));
        }
        out
    }

    /// x_i^k ∂_i p, for k ≥ 0 (k = 0 gives ∂_i p).
    pub fn x_pow_derivative(&self, i: usize, k: u32) -> MultiPoly {
        self.partial_derivative(i).mul_var_pow(i, k)
    }

    /// x_i^k ∂_i² p.
    pub fn x_pow_second_derivative(&self, i: usize, k: u32) -> MultiPoly {
        self.partial_derivative(i).partial_derivative(i).mul_var_pow(i, k)
    }

    pub fn mul_var_pow(&self, i: usize, k: u32) -> MultiPoly {
        if k == 0 {
            return self.clone();
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut mm = m.clone();
                    mm.0[i] += k;
                    (mm, c.clone())
                })
                .collect(),
        }
    }

    /// Replaces variable `i` by variable `j`.
    pub fn substitute_equal(&self, i: usize, j: usize) -> MultiPoly {
        if i == j {
            return self.clone();
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.0[j] += mm.0[i];
            mm.0[i] = 0;
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.0.swap(i, j);
            out.add_term(mm, c.clone());
        }
        out
    }

    /// The quotient q with q·(x_i − x_j) = p.
    pub fn exact_divide_linear(&self, i: usize, j: usize) -> Result<MultiPoly> {
        if i == j || !self.substitute_equal(i, j).is_zero() {
            return Err(Error::HyperplaneDivision);
        }
        // x_i^a x_j^b = x_j^{a+b} + (x_i − x_j)·x_j^b Σ_{t<a} x_i^{a−1−t} x_j^t;
        // the x_j^{a+b} parts cancel because p vanishes on x_i = x_j.
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let a = m.0[i];
            for t in 0..a {
                let mut mm = m.clone();
                mm.0[i] = a - 1 - t;
                mm.0[j] += t;
                out.add_term(mm, c.clone());
            }
        }
        Ok(out)
    }

    /// Symmetric under every transposition of the variables `vars`.
    pub fn is_symmetric_in(&self, vars: std::ops::Range<usize>) -> bool {
        let v: Vec<usize> = vars.collect();
        v.windows(2).all(|w| self.swap_vars(w[0], w[1]) == *self)
    }

    /// Membership in the deformed-symmetric algebra for the block of
    /// variables starting at `offset` laid out as `space`.
    pub fn is_deformed_symmetric_at(&self, space: VarSpace, offset: usize) -> bool {
        let (n, nt) = (space.n, space.nt);
        if !self.is_symmetric_in(offset..offset + n) || !self.is_symmetric_in(offset + n..offset + n + nt) {
            return false;
        }
        let theta = Rf::theta();
        for i in offset..offset + n {
            for big_i in offset + n..offset + n + nt {
                let d = &self.partial_derivative(i) + &self.partial_derivative(big_i).scale(&theta);
                if !d.substitute_equal(big_i, i).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_deformed_symmetric(&self, space: VarSpace) -> bool {
        self.is_deformed_symmetric_at(space, 0)
    }

    /// Coefficientwise map.
    pub fn map_coeffs(&self, f: impl Fn(&Rf) -> Rf) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Rf) -> Result<Rf>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Evaluates every coefficient at θ = t.
    pub fn eval_theta(&self, t: &Rational) -> Result<MultiPoly> {
        self.try_map_coeffs(|c| Ok(Rf::from_rational(c.eval(t)?)))
    }

    /// Negates the variables in `vars`.
    pub fn negate_vars(&self, vars: std::ops::Range<usize>) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let odd: u32 = vars.clone().map(|i| m.0[i]).sum::<u32>() % 2;
            out.add_term(m.clone(), if odd == 1 { -c } else { c.clone() });
        }
        out
    }

    /// Re-embeds into `nvars` variables, old variable k going to `map[k]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (k, &x) in m.0.iter().enumerate() {
                e[map[k]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Splits off the variables `vars`: the result maps each exponent
    /// pattern of those variables to the polynomial in the remaining ones
    /// (kept in the original variable count, with those exponents zeroed).
    pub fn coefficients_in(&self, vars: std::ops::Range<usize>) -> BTreeMap<Vec<u32>, MultiPoly> {
        let mut out: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = m.0[vars.clone()].to_vec();
            let mut rest = m.clone();
            for i in vars.clone() {
                rest.0[i] = 0;
            }
            out.entry(key).or_insert_with(|| MultiPoly::zero(self.nvars)).add_term(rest, c.clone());
        }
        out
    }

    /// The greatest monomial in lexicographic order on exponents.
    pub fn lex_leading(&self) -> Option<(&Monomial, &Rf)> {
        self.terms.iter().max_by(|a, b| a.0 .0.cmp(&b.0 .0))
    }

    /// Renders with `names[i]` for variable i.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest degree first reads naturally
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| if *e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                    .collect();
            let mono = mono.join("·");
            let (neg, mag) = match c.as_constant() {
                Some(r) if r < Rational::from_integer(0.into()) => (true, Rf::from_rational(-r)),
                Some(_) => (false, c.clone()),
                None => {
                    let lead_neg = c.numer().last().is_some_and(|l| *l < Rational::from_integer(0.into()));
                    if lead_neg {
                        (true, -c)
                    } else {
                        (false, c.clone())
                    }
                }
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else if mag.as_constant().is_some_and(|r| r.is_integer()) {
                format!("{mag}·{mono}")
            } else {
                format!("({mag})·{mono}")
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        out
    }
}

/// Default variable names for a space: x1.., then xt1...
pub fn variable_names(space: VarSpace) -> Vec<String> {
    (1..=space.n).map(|i| format!("x{i}")).chain((1..=space.nt).map(|i| format!("xt{i}"))).collect()
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "MultiPoly[{}]({})", self.nvars, self.render(&names))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let (mut out, other) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.mul(b), c * d);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coeff: Rf,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| TermJson { exp: m.0.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let mut p = MultiPoly::zero(raw.nvars);
        for t in raw.terms {
            if t.exp.len() != raw.nvars {
                return Err(D::Error::custom("exponent length does not match nvars"));
            }
            p.add_term(Monomial(t.exp), t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, k: i64) -> MultiPoly {
        MultiPoly::constant(n, Rf::from_int(k))
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&x(2, 0) * &x(2, 1), MultiPoly::from_terms(2, [(vec![1, 1], Rf::one())]));
        let s = &x(2, 0) + &x(2, 1);
        let sq = &s * &s;
        let expected =
            MultiPoly::from_terms(2, [(vec![2, 0], Rf::one()), (vec![1, 1], Rf::from_int(2)), (vec![0, 2], Rf::one())]);
        assert_eq!(sq, expected);
        let a = &c(1, 1) - &x(1, 0);
        let b = &(&c(1, 1) + &x(1, 0)) + &x(1, 0).pow(2);
        assert_eq!(&a * &b, &c(1, 1) - &x(1, 0).pow(3));
        assert_eq!(x(1, 0).checked_add(&x(2, 0)), Err(Error::SpaceMismatch));
    }

    #[test]
    fn derivatives() {
        assert_eq!(x(2, 0).pow(3).partial_derivative(0), x(2, 0).pow(2).scale(&Rf::from_int(3)));
        assert!(x(2, 1).partial_derivative(0).is_zero());
        assert_eq!((&x(2, 0) * &x(2, 1)).partial_derivative(0), x(2, 1));
    }

    #[test]
    fn substitution() {
        assert!((&x(2, 0) - &x(2, 1)).substitute_equal(1, 0).is_zero());
        assert_eq!((&x(2, 0) * &x(2, 1)).substitute_equal(1, 0), x(2, 0).pow(2));
        assert_eq!(c(2, 5).substitute_equal(1, 0), c(2, 5));
    }

    #[test]
    fn division() {
        let p = &x(2, 0).pow(2) - &x(2, 1).pow(2);
        assert_eq!(p.exact_divide_linear(0, 1).unwrap(), &x(2, 0) + &x(2, 1));
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!(d.exact_divide_linear(0, 1).unwrap(), c(2, 1));
        assert_eq!(x(2, 0).exact_divide_linear(0, 1), Err(Error::HyperplaneDivision));
    }

    #[test]
    fn deformed_symmetry() {
        let space = VarSpace::new(1, 1);
        let p1 = &x(2, 0) - &x(2, 1).scale(&Rf::theta().inv().unwrap());
        assert!(p1.is_deformed_symmetric(space));
        assert!(!(&x(2, 0) + &x(2, 1)).is_deformed_symmetric(space));
        assert!(c(2, 3).is_deformed_symmetric(space));
        assert!((&p1 * &p1).is_deformed_symmetric(space));
    }

    #[test]
    fn components() {
        let p = &(&c(1, 1) + &x(1, 0)) + &x(1, 0).pow(2);
        assert_eq!(p.homogeneous_component(1), x(1, 0));
        assert!(p.homogeneous_component(3).is_zero());
        let h = x(1, 0).pow(2);
        assert_eq!(h.homogeneous_component(2), h);
    }

    #[test]
    fn rendering_and_json() {
        let p = &x(2, 0) - &x(2, 1).scale(&Rf::theta().inv().unwrap());
        assert_eq!(p.render(&variable_names(VarSpace::new(1, 1))), "x1 - (1/θ)·xt1");
        let s = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..4, 0i64..2), 0..5).prop_map(move |ts| {
            let mut p = MultiPoly::zero(nvars);
            for (e, k, th) in ts {
                let coeff = &Rf::from_int(k) + &Rf::theta().scale(&Rational::from_integer(th.into()));
                p.add_term(Monomial(e), coeff);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in arb_poly(3), b in arb_poly(3), d in arb_poly(3)) {
            prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(3)) {
            let lin = &MultiPoly::var(3, 0) - &MultiPoly::var(3, 2);
            let p = &a * &lin;
            prop_assert_eq!(p.exact_divide_linear(0, 2).unwrap(), a);
        }
    }
}
