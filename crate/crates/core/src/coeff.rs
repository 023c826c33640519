//! Exact coefficients: Laurent polynomials in `v` over the integers,
//! rationals, and the `(λ, μ)` conventions for the braiding elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial `Σ c_e v^e` with integer coefficients.
///
/// Stored densely from the lowest exponent; the first and last stored
/// coefficients are always nonzero and the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        Self::from_dense(exp, vec![c.into()])
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `a = v + v^{-1}`, the loop value.
    pub fn loop_value() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::monomial(c, e);
        }
        out
    }

    fn from_dense(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coefficient(&self, exp: i32) -> BigInt {
        let k = exp - self.low;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Inverse in the Laurent ring; only `±v^k` are units.
    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 || self.coeffs[0].abs() != BigInt::one() {
            return None;
        }
        Some(Self::monomial(self.coeffs[0].clone(), -self.low))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Evaluates at `v = x` exactly.
    pub fn specialize(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() {
            return Err(Error::NotAUnit);
        }
        let x = &x.0;
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        let shift = if self.low >= 0 {
            num_traits::pow(x.clone(), self.low as usize)
        } else {
            num_traits::pow(x.recip(), (-self.low) as usize)
        };
        Ok(Rational(acc * shift))
    }

    /// Evaluates modulo a prime `p < 2^32` given the residues of `v` and `v^{-1}`.
    pub fn eval_mod(&self, v: u64, v_inv: u64, p: u64) -> u64 {
        let modulus = BigInt::from(p);
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            let c = c.mod_floor(&modulus).to_u64().unwrap_or(0);
            acc = (acc * v + c) % p;
        }
        let (base, e) = if self.low >= 0 {
            (v, self.low as u64)
        } else {
            (v_inv, (-self.low) as u64)
        };
        acc * crate::linalg::pow_mod(base, e, p) % p
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Terms in decreasing exponent order, e.g. `v^1 + v^-1`, `2*v^3 - 1`, `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "v^{e}")?;
            } else {
                write!(f, "{mag}*v^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(&s);
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // Split into signed terms; a sign right after `^` belongs to the
        // exponent, and runs like `+-` stay together.
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !b"^+-".contains(&bytes[i - 1]) {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);

        let mut out = LaurentPoly::zero();
        for piece in pieces {
            out += &parse_term(piece)?;
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Result<LaurentPoly> {
    let bad = || Error::Parse(format!("bad term `{t}`"));
    let body = t.trim_start_matches(['+', '-']);
    let negatives = t[..t.len() - body.len()].matches('-').count();
    let sign = if negatives % 2 == 1 { -1 } else { 1 };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff, var) = match body.find('v') {
        None => (body, None),
        Some(pos) => {
            let c = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            (c, Some(&body[pos + 1..]))
        }
    };
    let coeff: BigInt = if coeff.is_empty() {
        BigInt::one()
    } else {
        coeff.parse().map_err(|_| bad())?
    };
    let exp: i32 = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?,
    };
    Ok(LaurentPoly::monomial(coeff * sign, exp))
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exponent().unwrap().max(rhs.high_exponent().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        *self = Self::from_dense(low, coeffs);
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Reduction modulo a prime not dividing the denominator.
    pub fn residue(&self, p: u64) -> Option<u64> {
        let m = BigInt::from(p);
        let n = self.numer().mod_floor(&m).to_u64()?;
        let d = self.denom().mod_floor(&m).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(n * crate::linalg::inv_mod(d, p) % p)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Self::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((n, d)) => Self::new(
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;

            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $tr for Rational {
            type Output = Rational;

            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConventionTag {
    A,
    B,
}

impl ConventionTag {
    pub const ALL: [ConventionTag; 2] = [ConventionTag::A, ConventionTag::B];
}

impl fmt::Display for ConventionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConventionTag::A => f.write_str("A"),
            ConventionTag::B => f.write_str("B"),
        }
    }
}

impl FromStr for ConventionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(ConventionTag::A),
            "B" | "b" => Ok(ConventionTag::B),
            _ => Err(Error::Parse(format!("unknown convention `{s}`"))),
        }
    }
}

/// The constants in `s_i = λ + μ U_i`.
///
/// Convention A is `(λ, μ) = (-1, v)`, convention B is `(v^2, -v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convention {
    pub tag: ConventionTag,
    pub lambda: LaurentPoly,
    pub mu: LaurentPoly,
}

impl Convention {
    pub fn new(tag: ConventionTag) -> Self {
        let (lambda, mu) = match tag {
            ConventionTag::A => (LaurentPoly::constant(-1), LaurentPoly::v()),
            ConventionTag::B => (LaurentPoly::monomial(1, 2), LaurentPoly::monomial(-1, 1)),
        };
        Self { tag, lambda, mu }
    }

    pub fn a() -> Self {
        Self::new(ConventionTag::A)
    }

    pub fn b() -> Self {
        Self::new(ConventionTag::B)
    }

    pub fn lambda_inv(&self) -> LaurentPoly {
        self.lambda.inverse().expect("λ is a unit")
    }

    pub fn mu_inv(&self) -> LaurentPoly {
        self.mu.inverse().expect("μ is a unit")
    }

    /// `μ/λ`: `-v` for A, `-v^{-1}` for B.
    pub fn mu_over_lambda(&self) -> LaurentPoly {
        &self.mu * &self.lambda_inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        let v = LaurentPoly::v();
        let vi = LaurentPoly::monomial(1, -1);
        assert_eq!(&v + &vi, LaurentPoly::loop_value());
        assert_eq!(&v + &LaurentPoly::zero(), v);
        assert_eq!(&LaurentPoly::loop_value() + &(-&v), vi);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&LaurentPoly::loop_value() * &LaurentPoly::v(), p("v^2 + 1"));
        let m1 = LaurentPoly::constant(-1);
        assert_eq!(&m1 * &m1, LaurentPoly::one());
        let r = Convention::a().mu_over_lambda();
        assert_eq!(&r * &r, LaurentPoly::monomial(1, 2));
    }

    #[test]
    fn mu_over_lambda_by_convention() {
        assert_eq!(Convention::a().mu_over_lambda(), LaurentPoly::monomial(-1, 1));
        assert_eq!(Convention::b().mu_over_lambda(), LaurentPoly::monomial(-1, -1));
        for c in [Convention::a(), Convention::b()] {
            assert_eq!(&c.lambda * &c.mu_over_lambda(), c.mu);
        }
    }

    #[test]
    fn specialize_examples() {
        let two = Rational::integer(2);
        assert_eq!(
            LaurentPoly::loop_value().specialize(&two).unwrap(),
            Rational::new(5, 2).unwrap()
        );
        for x in [2, 3, -7] {
            let lam = Convention::a().lambda.specialize(&Rational::integer(x)).unwrap();
            assert_eq!(lam, Rational::integer(-1));
        }
        let q = LaurentPoly::monomial(1, 2).specialize(&two).unwrap();
        assert_eq!(q, Rational::integer(4));
        assert_ne!(q.abs(), Rational::one());
    }

    #[test]
    fn specialize_at_zero_is_an_error() {
        assert_eq!(
            LaurentPoly::v().specialize(&Rational::zero()),
            Err(Error::NotAUnit)
        );
    }

    #[test]
    fn text_form() {
        assert_eq!(LaurentPoly::loop_value().to_string(), "v^1 + v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("2*v^3 - 1 + -v^-2").to_string(), "2*v^3 - 1 - v^-2");
        assert_eq!(p("(v^1+v^-1)"), LaurentPoly::loop_value());
        assert_eq!(p("v"), LaurentPoly::v());
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("3*x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn rational_text() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &BigInt::zero());
        assert_eq!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator));
    }

    #[test]
    fn eval_mod_matches_specialize() {
        let poly = p("3*v^2 - v^-3 + 7");
        let prime = 1_000_000_007u64;
        let x = Rational::integer(2);
        let exact = poly.specialize(&x).unwrap().residue(prime).unwrap();
        let vinv = crate::linalg::inv_mod(2, prime);
        assert_eq!(poly.eval_mod(2, vinv, prime), exact);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn specialize_is_a_ring_map(a in small_poly(), b in small_poly(),
                                    n in -6i64..7, d in 1i64..5) {
            prop_assume!(n != 0);
            let x = Rational::new(n, d).unwrap();
            let lhs = (&a * &b).specialize(&x).unwrap();
            let rhs = &a.specialize(&x).unwrap() * &b.specialize(&x).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = (&a + &b).specialize(&x).unwrap();
            let rhs = &a.specialize(&x).unwrap() + &b.specialize(&x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
