use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::rational::{rational_to_string, Rational};
use super::AlgebraError;

/// Exponent vector of a monomial. Compared lexicographically, leftmost
/// coordinate most significant; this is the only monomial order in the crate.
pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap`, so iteration is in increasing lex order
/// and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exponent: Exponent, c: Rational) -> Self {
        assert_eq!(exponent.len(), nvars, "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lex order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lex-largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Lex-smallest term; backs every "min" valuation in the crate.
    pub fn lex_min_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, exponent: Exponent, c: Rational) {
        debug_assert_eq!(exponent.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Scales so that the lex-largest term has coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn mul_term(&self, exponent: &[u32], c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            let prod: Exponent = e.iter().zip(exponent).map(|(a, b)| a + b).collect();
            out.add_term(prod, x * c);
        }
        out
    }

    /// Division with remainder by a single divisor, leading terms taken in lex
    /// order. With one divisor the result is unique, so `q | self` exactly
    /// when the remainder is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert_eq!(self.nvars, divisor.nvars);
        let (lead_e, lead_c) = divisor.leading_term().expect("nonzero divisor");
        let mut rest = self.clone();
        let mut quotient = Self::zero(self.nvars);
        let mut remainder = Self::zero(self.nvars);
        while let Some((e, c)) = rest.leading_term() {
            let (e, c) = (e.clone(), c.clone());
            if e.iter().zip(lead_e).all(|(a, b)| a >= b) {
                let shift: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
                let factor = &c / lead_c;
                quotient.add_term(shift.clone(), factor.clone());
                rest = &rest - &divisor.mul_term(&shift, &factor);
            } else {
                rest.terms.remove(&e);
                remainder.add_term(e, c);
            }
        }
        (quotient, remainder)
    }

    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Largest `t` with `divisor^t | self`, together with `self / divisor^t`.
    pub fn divide_power(&self, divisor: &Polynomial) -> Result<(u32, Polynomial), AlgebraError> {
        if self.nvars != divisor.nvars {
            return Err(AlgebraError::VariableMismatch(self.nvars, divisor.nvars));
        }
        if self.is_zero() {
            return Err(AlgebraError::ZeroSection);
        }
        if divisor.is_constant() {
            return Err(AlgebraError::InvalidDivisor(
                "divisor must be a non-constant polynomial".into(),
            ));
        }
        let mut t = 0;
        let mut current = self.clone();
        while let Some(q) = current.div_exact(divisor) {
            current = q;
            t += 1;
        }
        Ok((t, current))
    }

    /// Replaces variable `i` by `images[i]`. All images must share one
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(AlgebraError::VariableMismatch(target, bad.nvars));
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Coefficient vector against an ordered list of monomials; `None` if a
    /// term falls outside the list.
    pub fn coordinates(&self, basis: &[Exponent]) -> Option<Vec<Rational>> {
        let index: BTreeMap<&Exponent, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut v = vec![Rational::zero(); basis.len()];
        for (e, c) in &self.terms {
            v[*index.get(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coordinates(nvars: usize, basis: &[Exponent], coords: &[Rational]) -> Self {
        Self::from_terms(
            nvars,
            basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, names }
    }

    /// Parses expressions such as `a*d - b*c`, `1/2*x0^2 + 3`, `(u+v)^2`.
    pub fn parse(input: &str, names: &[String]) -> Result<Polynomial, ParsePolyError> {
        let mut parser = Parser {
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            names,
        };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(ParsePolyError::Unexpected(parser.pos));
        }
        Ok(p)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &rhs.terms {
            out = &out + &self.mul_term(e, c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

pub struct DisplayPoly<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let name = self.names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", rational_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_to_string(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("unexpected input at position {0}")]
    Unexpected(usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParsePolyError> {
        let n = self.names.len();
        let mut acc = Polynomial::zero(n);
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(&sign);
            match self.peek() {
                Some('+') => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParsePolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| ParsePolyError::Unexpected(self.pos))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParsePolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParsePolyError::Unexpected(start));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Polynomial, ParsePolyError> {
        let n = self.names.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(ParsePolyError::Unexpected(self.pos));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Rational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(ParsePolyError::DivisionByZero);
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(Polynomial::constant(n, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let index = self
                    .names
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(ParsePolyError::UnknownVariable(name))?;
                Ok(Polynomial::var(n, index))
            }
            _ => Err(ParsePolyError::Unexpected(self.pos)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn abcd() -> Vec<String> {
        names(&["a", "b", "c", "d"])
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &abcd()).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let det = p("a*d - b*c");
        assert_eq!(det.display_with(&abcd()).to_string(), "a*d - b*c");
        let q = p("1/2*a^2 - 3 + (b+c)^2");
        let shown = q.display_with(&abcd()).to_string();
        assert_eq!(Polynomial::parse(&shown, &abcd()).unwrap(), q);
        assert!(matches!(
            Polynomial::parse("a*z", &abcd()),
            Err(ParsePolyError::UnknownVariable(_))
        ));
        assert!(Polynomial::parse("a+", &abcd()).is_err());
    }

    #[test]
    fn divide_power_examples() {
        let det = p("a*d - b*c");
        // oracle: repeated long division by hand gives (ad-bc)^2 a / (ad-bc) / (ad-bc) = a
        let s = &det.pow(2) * &p("a");
        let (t, q) = s.divide_power(&det).unwrap();
        assert_eq!(t, 2);
        assert_eq!(q, p("a"));

        let (t, q) = p("a").divide_power(&det).unwrap();
        assert_eq!((t, q), (0, p("a")));

        assert_eq!(
            Polynomial::zero(4).divide_power(&det),
            Err(AlgebraError::ZeroSection)
        );
        assert!(matches!(
            p("a").divide_power(&p("3")),
            Err(AlgebraError::InvalidDivisor(_))
        ));
    }

    #[test]
    fn substitute_examples() {
        let uv = names(&["u", "v"]);
        let images: Vec<Polynomial> = ["1", "v", "u", "u*v"]
            .iter()
            .map(|s| Polynomial::parse(s, &uv).unwrap())
            .collect();
        assert!(p("a*d - b*c").substitute(&images).unwrap().is_zero());
        assert_eq!(
            p("d").substitute(&images).unwrap(),
            Polynomial::parse("u*v", &uv).unwrap()
        );
        assert_eq!(
            p("a+d").substitute(&images).unwrap(),
            Polynomial::parse("1+u*v", &uv).unwrap()
        );
        assert!(matches!(
            p("a").substitute(&images[..3]),
            Err(AlgebraError::ArityMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn lex_extremes() {
        let q = Polynomial::parse("u^2*v + u*v^3 + 7*v", &names(&["u", "v"])).unwrap();
        assert_eq!(q.lex_min_term().unwrap().0, &vec![0, 1]);
        assert_eq!(q.leading_term().unwrap().0, &vec![2, 1]);
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), -4i64..5),
            0..5,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(
                nvars,
                terms
                    .into_iter()
                    .map(|(e, c)| (e, Rational::from_integer(c.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn divide_power_multiplicity_adds(p in arb_poly(3), k in 0u32..3) {
            prop_assume!(!p.is_zero());
            let x = names(&["x", "y", "z"]);
            let q = Polynomial::parse("x*y - z^2", &x).unwrap();
            let (base, _) = p.divide_power(&q).unwrap();
            let (t, _) = (&p * &q.pow(k)).divide_power(&q).unwrap();
            prop_assert_eq!(t, base + k);
        }

        #[test]
        fn division_identity(p in arb_poly(3), q in arb_poly(3)) {
            prop_assume!(!q.is_zero());
            let (quot, rem) = p.div_rem(&q);
            prop_assert_eq!(&(&quot * &q) + &rem, p);
        }

        #[test]
        fn substitute_is_ring_homomorphism(
            p in arb_poly(3),
            r in arb_poly(3),
            images in prop::collection::vec(arb_poly(2), 3),
        ) {
            let sp = p.substitute(&images).unwrap();
            let sr = r.substitute(&images).unwrap();
            prop_assert_eq!((&p * &r).substitute(&images).unwrap(), &sp * &sr);
            prop_assert_eq!((&p + &r).substitute(&images).unwrap(), &sp + &sr);
        }
    }
}
