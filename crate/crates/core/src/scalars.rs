//! Exact coefficient arithmetic.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. [`LaurentPoly`] is a finitely supported polynomial in
//! `x` and `x^-1` over the rationals, and [`BiPoly`] is the two-variable
//! analogue used by the product that counts closed cycles and loop-ended lines
//! separately.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number. Always normalized: `gcd(num, den) = 1`,
/// `den >= 1`, and zero is `0/1`.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `p` or `p/q`; inverse of [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Minimal commutative-ring interface shared by the coefficient types, so the
/// matrix and algebra code can be written once.
pub trait Ring: Zero + One + Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: Rational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn accumulate(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

impl Ring for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

/// Laurent polynomial in the loop parameter `x` with rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality and the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(rat(1), 0)
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `x^exp` with coefficient one.
    pub fn x_pow(exp: i32) -> Self {
        Self::monomial(rat(1), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, exp: i32, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(<Rational as Zero>::zero);
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(<Rational as Zero>::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// If `self` is `c * x^e` for a single term, returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Exact value at `x = x0`. Fails only when `x0 = 0` and a negative power
    /// is present.
    pub fn eval(&self, x0: &Rational) -> Result<Rational> {
        if Zero::is_zero(x0) && self.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::EvalAtZero);
        }
        let mut acc = <Rational as Zero>::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                num_traits::pow(x0.clone(), e as usize)
            } else {
                num_traits::pow(x0.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Sorted `[exponent, numerator, denominator]` triples; integers are strings
    /// because they are arbitrary precision.
    pub fn to_triples(&self) -> Vec<(i32, String, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, c.numer().to_string(), c.denom().to_string()))
            .collect()
    }

    pub fn from_triples(triples: &[(i32, String, String)]) -> Result<Self> {
        let mut p = Self::zero();
        for (e, n, d) in triples {
            p.add_term(*e, &parse_rational(&format!("{n}/{d}"))?);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
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

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Ring for LaurentPoly {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn accumulate(&mut self, other: &Self) {
        for (&e, c) in &other.terms {
            self.add_term(e, c);
        }
    }
    fn from_rational(r: Rational) -> Self {
        LaurentPoly::constant(r)
    }
}

fn write_monomials<'a, K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (K, &'a Rational)>,
    var: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (k, c) in terms.rev() {
        any = true;
        let v = var(&k);
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (v.is_empty(), mag.is_one()) {
            (true, _) => write!(f, "{}", format_rational(&mag))?,
            (false, true) => write!(f, "{v}")?,
            (false, false) => write!(f, "{}*{v}", format_rational(&mag))?,
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// Human-readable form, highest power first, e.g. `x^2 - 1/2*x^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomials(f, self.terms.iter().map(|(e, c)| (*e, c)), |e| match *e {
            0 => String::new(),
            1 => "x".to_string(),
            e => format!("x^{e}"),
        })
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(i32, String, String)>::deserialize(d)?;
        LaurentPoly::from_triples(&triples).map_err(serde::de::Error::custom)
    }
}

/// Polynomial in two loop parameters, `x1` (closed cycles) and `x2`
/// (loop-ended lines), with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn monomial(c: Rational, cycles: u32, lines: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert((cycles, lines), c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, key: (u32, u32), c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(<Rational as Zero>::zero);
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&key);
        }
    }

    /// Substitutes `x1 = x2 = x`.
    pub fn collapse(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&(a, b), c)| ((a + b) as i32, c.clone())))
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        self.plus(&rhs)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        self.times(&rhs)
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::monomial(rat(1), 0, 0)
    }
}

impl Ring for BiPoly {
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_rational(r: Rational) -> Self {
        Self::monomial(r, 0, 0)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |v: &str, e: u32| match e {
            0 => String::new(),
            1 => v.to_string(),
            e => format!("{v}^{e}"),
        };
        write_monomials(f, self.terms.iter().map(|(k, c)| (*k, c)), |&(a, b)| {
            let parts: Vec<String> = [pow("x1", a), pow("x2", b)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            parts.join("*")
        })
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, Rational)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().cloned())
    }

    #[test]
    fn add_examples() {
        let x = LaurentPoly::x();
        assert!((&x + &(-&x)).is_zero());
        let a = lp(&[(2, rat(1)), (0, rat(1))]);
        assert_eq!(&a + &x, lp(&[(2, rat(1)), (1, rat(1)), (0, rat(1))]));
        let half_inv = LaurentPoly::monomial(ratio(1, 2), -1);
        assert_eq!(&half_inv + &half_inv, LaurentPoly::x_pow(-1));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(LaurentPoly::x() * LaurentPoly::x_pow(-1), LaurentPoly::one());
        let xp1 = lp(&[(1, rat(1)), (0, rat(1))]);
        let xm1 = lp(&[(1, rat(1)), (0, rat(-1))]);
        assert_eq!(&xp1 * &xm1, lp(&[(2, rat(1)), (0, rat(-1))]));
        let a = LaurentPoly::monomial(rat(2), 2);
        let b = LaurentPoly::monomial(rat(3), 3);
        assert_eq!(&a * &b, LaurentPoly::monomial(rat(6), 5));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(LaurentPoly::x_pow(2).eval(&rat(3)).unwrap(), rat(9));
        assert_eq!(LaurentPoly::x_pow(-1).eval(&ratio(1, 2)).unwrap(), rat(2));
        let p = lp(&[(2, rat(1)), (1, rat(-1))]);
        assert_eq!(p.eval(&ratio(1, 2)).unwrap(), ratio(-1, 4));
    }

    #[test]
    fn eval_at_zero() {
        assert!(matches!(LaurentPoly::x_pow(-2).eval(&rat(0)), Err(Error::EvalAtZero)));
        assert_eq!((LaurentPoly::x() + LaurentPoly::one()).eval(&rat(0)).unwrap(), rat(1));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-5/2").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("4").unwrap(), rat(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        // canonical zero
        let z = ratio(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn display() {
        let p = lp(&[(2, rat(1)), (-1, ratio(-1, 2))]);
        assert_eq!(p.to_string(), "x^2 - 1/2*x^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!((-LaurentPoly::x()).to_string(), "-x");
        assert_eq!(BiPoly::monomial(rat(1), 0, 1).to_string(), "x2");
        assert_eq!(BiPoly::monomial(rat(3), 2, 1).to_string(), "3*x1^2*x2");
    }

    #[test]
    fn serde_triples() {
        let p = lp(&[(3, ratio(-7, 3)), (-2, rat(5))]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[-2,"5","1"],[3,"-7","3"]]"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn bipoly_collapse() {
        let a = BiPoly::monomial(rat(2), 1, 0);
        let b = BiPoly::monomial(rat(1), 0, 1);
        let prod = a.times(&b).plus(&BiPoly::one());
        assert_eq!(prod.collapse(), lp(&[(2, rat(2)), (0, rat(1))]));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-3i32..4, arb_rational()), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.terms().all(|(_, c)| !Zero::is_zero(c)));
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), x0 in arb_rational()) {
            prop_assume!(!Zero::is_zero(&x0));
            let (ea, eb) = (a.eval(&x0).unwrap(), b.eval(&x0).unwrap());
            prop_assert_eq!((&a * &b).eval(&x0).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&x0).unwrap(), &ea + &eb);
        }
    }
}
