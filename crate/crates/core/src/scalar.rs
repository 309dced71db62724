//! The coefficient field: exact rationals and rational functions in one
//! indeterminate θ.
//!
//! Every value is kept in canonical form (numerator and denominator coprime,
//! denominator monic), so equality of values is structural equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

// Dense univariate polynomials over ℚ, lowest degree first, no trailing zeros.
mod upoly {
    use super::Rational;
    use num_traits::{One, Zero};

    pub fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, c) in out.iter_mut().zip(short) {
            *o += c;
        }
        trim(&mut out);
        out
    }

    pub fn neg(a: &[Rational]) -> Vec<Rational> {
        a.iter().map(|c| -c).collect()
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
        if c.is_zero() {
            return Vec::new();
        }
        a.iter().map(|x| x * c).collect()
    }

    pub fn is_one(a: &[Rational]) -> bool {
        a.len() == 1 && a[0].is_one()
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let db = b.len() - 1;
        let lead_inv = b[db].recip();
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
        }
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    pub fn monic(a: &[Rational]) -> Vec<Rational> {
        match a.last() {
            None => Vec::new(),
            Some(l) if l.is_one() => a.to_vec(),
            Some(l) => {
                let inv = l.recip();
                a.iter().map(|c| c * &inv).collect()
            }
        }
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(&x)
    }

    pub fn eval(a: &[Rational], t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in a.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

/// An element of ℚ(θ) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

pub type Rf = RationalFunction;

impl RationalFunction {
    pub fn zero() -> Self {
        Self { num: Vec::new(), den: vec![Rational::one()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        let num = if r.is_zero() { Vec::new() } else { vec![r] };
        Self { num, den: vec![Rational::one()] }
    }

    /// The indeterminate θ.
    pub fn theta() -> Self {
        Self::from_poly(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_poly(mut num: Vec<Rational>) -> Self {
        upoly::trim(&mut num);
        Self { num, den: vec![Rational::one()] }
    }

    /// Builds `num/den` from coefficient lists (lowest degree first).
    pub fn from_parts(mut num: Vec<Rational>, mut den: Vec<Rational>) -> Result<Self> {
        upoly::trim(&mut num);
        upoly::trim(&mut den);
        if den.is_empty() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Vec<Rational>, mut den: Vec<Rational>) -> Self {
        upoly::trim(&mut num);
        upoly::trim(&mut den);
        if num.is_empty() {
            return Self::zero();
        }
        if den.len() == 1 {
            let inv = den[0].recip();
            let num = if inv.is_one() { num } else { upoly::scale(&num, &inv) };
            return Self { num, den: vec![Rational::one()] };
        }
        let g = upoly::gcd(&num, &den);
        let (mut num, mut den) =
            if g.len() > 1 { (upoly::divrem(&num, &g).0, upoly::divrem(&den, &g).0) } else { (num, den) };
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = upoly::scale(&num, &inv);
            den = upoly::scale(&den, &inv);
        }
        Self { num, den }
    }

    /// (−θ)^k for any integer k.
    pub fn neg_theta_pow(k: i64) -> Self {
        let base = -Self::theta();
        base.powi(k)
    }

    pub fn powi(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().expect("negative power of zero").powi(-k);
        }
        let mut out = Self::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        upoly::is_one(&self.num) && upoly::is_one(&self.den)
    }

    /// Numerator coefficients, lowest degree first.
    pub fn numer(&self) -> &[Rational] {
        &self.num
    }

    /// Monic denominator coefficients, lowest degree first.
    pub fn denom(&self) -> &[Rational] {
        &self.den
    }

    /// `Some(c)` when the value does not depend on θ.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.len() != 1 {
            return None;
        }
        match self.num.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.num[0].clone()),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: upoly::scale(&self.num, c), den: self.den.clone() }
    }

    /// Exact evaluation at θ = t.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let d = upoly::eval(&self.den, t);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        Ok(upoly::eval(&self.num, t) / d)
    }

    /// Substitutes θ ↦ 1/θ.
    pub fn invert_theta(&self) -> Self {
        // p(1/θ) = rev(p)(θ)/θ^deg p
        let dn = self.num.len() as i64 - 1;
        let dd = self.den.len() as i64 - 1;
        if self.is_zero() {
            return Self::zero();
        }
        let mut num: Vec<Rational> = self.num.iter().rev().cloned().collect();
        let mut den: Vec<Rational> = self.den.iter().rev().cloned().collect();
        let shift = dn - dd;
        if shift > 0 {
            den.splice(0..0, std::iter::repeat_n(Rational::zero(), shift as usize));
        } else if shift < 0 {
            num.splice(0..0, std::iter::repeat_n(Rational::zero(), (-shift) as usize));
        }
        Self::normalized(num, den)
    }

    /// Numerator and denominator scaled to coprime integer coefficients.
    fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut l = BigInt::one();
        for c in self.num.iter().chain(&self.den) {
            l = l.lcm(c.denom());
        }
        let scaled = |v: &[Rational]| -> Vec<BigInt> {
            v.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
        };
        let mut n = scaled(&self.num);
        let mut d = scaled(&self.den);
        let mut g = BigInt::zero();
        for c in n.iter().chain(&d) {
            g = g.gcd(c);
        }
        if !g.is_zero() && !g.is_one() {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c /= &g;
            }
        }
        (n, d)
    }
}

fn fmt_int_poly(p: &[BigInt]) -> (String, usize) {
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let var = match k {
            0 => String::new(),
            1 => "θ".to_string(),
            _ => format!("θ^{k}"),
        };
        let body = if var.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            var
        } else {
            format!("{mag}{var}")
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(if c.is_negative() { format!("- {body}") } else { format!("+ {body}") });
        }
    }
    let n = parts.len();
    (parts.join(" "), n)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (n, d) = self.integer_parts();
        let (ns, nterms) = fmt_int_poly(&n);
        if d.len() == 1 && d[0].is_one() {
            return write!(f, "{ns}");
        }
        let (ds, dterms) = fmt_int_poly(&d);
        let ns = if nterms > 1 { format!("({ns})") } else { ns };
        let ds = if dterms > 1 || (d.len() == 1 && false) { format!("({ds})") } else { ds };
        write!(f, "{ns}/{ds}")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rf({self})")
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for RationalFunction {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn add(self, rhs: &Rf) -> Rf {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = upoly::add(&self.num, &rhs.num);
            if upoly::is_one(&self.den) {
                return Rf { num, den: self.den.clone() };
            }
            return Rf::normalized(num, self.den.clone());
        }
        let num = upoly::add(&upoly::mul(&self.num, &rhs.den), &upoly::mul(&rhs.num, &self.den));
        Rf::normalized(num, upoly::mul(&self.den, &rhs.den))
    }
}

impl<'a> Mul<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn mul(self, rhs: &Rf) -> Rf {
        if self.is_zero() || rhs.is_zero() {
            return Rf::zero();
        }
        let one_a = upoly::is_one(&self.den);
        let one_b = upoly::is_one(&rhs.den);
        if one_a && one_b {
            return Rf { num: upoly::mul(&self.num, &rhs.num), den: self.den.clone() };
        }
        // cross-cancel so the product is already reduced
        let (an, bd) = cancel(&self.num, &rhs.den);
        let (bn, ad) = cancel(&rhs.num, &self.den);
        let num = upoly::mul(&an, &bn);
        let den = upoly::mul(&ad, &bd);
        let lead = den.last().unwrap().clone();
        if lead.is_one() {
            Rf { num, den }
        } else {
            let inv = lead.recip();
            Rf { num: upoly::scale(&num, &inv), den: upoly::scale(&den, &inv) }
        }
    }
}

fn cancel(n: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    if d.len() == 1 || n.len() == 1 {
        return (n.to_vec(), d.to_vec());
    }
    let g = upoly::gcd(n, d);
    if g.len() == 1 {
        (n.to_vec(), d.to_vec())
    } else {
        (upoly::divrem(n, &g).0, upoly::divrem(d, &g).0)
    }
}

impl Neg for &Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        Rf { num: upoly::neg(&self.num), den: self.den.clone() }
    }
}

impl Neg for Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        -&self
    }
}

impl<'a> Sub<&'a Rf> for &'a Rf {
    type Output = Rf;
    fn sub(self, rhs: &Rf) -> Rf {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Rf> for &'a Rf {
    type Output = Rf;
    /// Panics on a zero divisor; use [`Rf::checked_div`] when that can happen.
    fn div(self, rhs: &Rf) -> Rf {
        self.checked_div(rhs).expect("zero denominator")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rf> for Rf {
            type Output = Rf;
            fn $m(self, rhs: Rf) -> Rf { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Rf> for Rf {
            type Output = Rf;
            fn $m(self, rhs: &Rf) -> Rf { (&self).$m(rhs) }
        }
        impl<'a> $tr<Rf> for &'a Rf {
            type Output = Rf;
            fn $m(self, rhs: Rf) -> Rf { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Rf> for Rf {
    fn add_assign(&mut self, rhs: &Rf) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Rf {
    fn add_assign(&mut self, rhs: Rf) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Rf> for Rf {
    fn sub_assign(&mut self, rhs: &Rf) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rf> for Rf {
    fn mul_assign(&mut self, rhs: &Rf) {
        *self = &*self * rhs;
    }
}

impl Zero for Rf {
    fn zero() -> Self {
        Rf::zero()
    }
    fn is_zero(&self) -> bool {
        Rf::is_zero(self)
    }
}

impl One for Rf {
    fn one() -> Self {
        Rf::one()
    }
}

impl std::iter::Sum for Rf {
    fn sum<I: Iterator<Item = Rf>>(iter: I) -> Rf {
        iter.fold(Rf::zero(), |a, b| a + b)
    }
}

/// `c(c−1)···(c−k+1)/k!`.
pub fn generalized_binomial(c: &Rf, k: u32) -> Rf {
    let mut out = Rf::one();
    for i in 0..k {
        out = &out * &(c - &Rf::from_int(i as i64));
        out = out.scale(&rat(1, i as i64 + 1));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct RfJson {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RfJson {
            num: self.num.iter().map(format_rational).collect(),
            den: self.den.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RfJson::deserialize(d)?;
        let parse = |v: &[String]| -> std::result::Result<Vec<Rational>, D::Error> {
            v.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
        };
        Rf::from_parts(parse(&raw.num)?, parse(&raw.den)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th() -> Rf {
        Rf::theta()
    }

    #[test]
    fn theta_squared() {
        let t2 = &th() * &th();
        assert_eq!(t2, Rf::from_poly(vec![int(0), int(0), int(1)]));
    }

    #[test]
    fn factor_cancellation() {
        let a = &(&th() * &th()) - &Rf::one();
        let b = &th() - &Rf::one();
        assert_eq!(&a / &b, &th() + &Rf::one());
    }

    #[test]
    fn neg_theta_plus_inverse() {
        let s = &Rf::neg_theta_pow(1) + &Rf::neg_theta_pow(-1);
        let expected = Rf::from_parts(vec![int(-1), int(0), int(-1)], vec![int(0), int(1)]).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Rf::one().checked_div(&Rf::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn evaluation() {
        assert_eq!((&th() + &Rf::one()).eval(&int(1)).unwrap(), int(2));
        assert_eq!(th().inv().unwrap().eval(&rat(1, 2)).unwrap(), int(2));
        let pole = (&th() - &Rf::one()).inv().unwrap();
        assert_eq!(pole.eval(&int(1)), Err(Error::EvaluationAtPole));
    }

    #[test]
    fn binomials() {
        let c = -th().inv().unwrap();
        assert_eq!(generalized_binomial(&c, 1), c);
        assert!(generalized_binomial(&c, 0).is_one());
        // (−θ)(−θ−1)/2 = θ(θ+1)/2
        let expected = (&th() * &(&th() + &Rf::one())).scale(&rat(1, 2));
        assert_eq!(generalized_binomial(&-th(), 2), expected);
        for n in 0..7i64 {
            for k in 0..9u32 {
                let got = generalized_binomial(&Rf::from_int(n), k);
                let want = if (k as i64) > n { 0 } else { (0..k as i64).fold(1i64, |acc, i| acc * (n - i) / (i + 1)) };
                assert_eq!(got, Rf::from_int(want), "binom({n},{k})");
            }
        }
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let v = Rf::from_parts(vec![int(2)], vec![int(0), int(4)]).unwrap();
        assert_eq!(v.denom(), &[int(0), int(1)]);
        assert_eq!(v.numer(), &[rat(1, 2)]);
    }

    #[test]
    fn invert_theta_roundtrip() {
        let v = Rf::from_parts(vec![int(1), int(3)], vec![int(2), int(0), int(1)]).unwrap();
        assert_eq!(v.invert_theta().invert_theta(), v);
        assert_eq!(th().invert_theta(), th().inv().unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(th().inv().unwrap().to_string(), "1/θ");
        let v = (&th() + &th()) / (&th() + &Rf::one());
        assert_eq!(v.to_string(), "2θ/(θ + 1)");
        assert_eq!(Rf::from_int(-3).to_string(), "-3");
        assert_eq!(Rf::from_rational(rat(1, 2)).to_string(), "1/2");
    }

    #[test]
    fn json_roundtrip() {
        let v = (&th() * &th() - Rf::one()) / (&th() + &Rf::from_int(3));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"num":["-1/1","0/1","1/1"],"den":["3/1","1/1"]}"#);
        let back: Rf = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
