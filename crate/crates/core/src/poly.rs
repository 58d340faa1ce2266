//! Sparse multivariate polynomials over exact rationals.
//!
//! The variable set is fixed: the sixteen operator entries `a11..a44` in
//! row-major order, then the weight symbol `l` (λ), then `t`, an auxiliary
//! variable that only appears when the weight is saturated (`t·l − 1`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::algebra::RingElement;
use crate::scalar::Scalar;

/// Number of operator-entry variables.
pub const ENTRY_VARS: usize = 16;
/// Index of the weight symbol.
pub const LAMBDA: usize = 16;
/// Index of the saturation variable.
pub const SAT_VAR: usize = 17;
/// Variables in an exponent vector.
pub const NVARS: usize = 18;
/// Variables of the Rota–Baxter systems proper (entries and weight).
pub const SYSTEM_VARS: usize = 17;

/// Name of variable `v`: `a11..a44`, `l`, or `t`.
pub fn var_name(v: usize) -> String {
    match v {
        LAMBDA => "l".to_string(),
        SAT_VAR => "t".to_string(),
        v if v < ENTRY_VARS => format!("a{}{}", v / 4 + 1, v % 4 + 1),
        _ => panic!("variable index {v} out of range"),
    }
}

pub fn var_index(name: &str) -> Option<usize> {
    match name {
        "l" | "λ" => Some(LAMBDA),
        "t" => Some(SAT_VAR),
        _ => {
            let b = name.as_bytes();
            if b.len() == 3 && b[0] == b'a' && (b'1'..=b'4').contains(&b[1]) && (b'1'..=b'4').contains(&b[2]) {
                Some(((b[1] - b'1') * 4 + (b[2] - b'1')) as usize)
            } else {
                None
            }
        }
    }
}

/// Variable index of operator entry `(row, col)`, 0-based.
pub fn entry_var(row: usize, col: usize) -> usize {
    assert!(row < 4 && col < 4);
    row * 4 + col
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: [u16; NVARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: usize) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u16) -> Self {
        let mut m = Monomial::one();
        m.exps[v] = e;
        m
    }

    pub fn from_exps(exps: [u16; NVARS]) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.exps
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.exps[v]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i] + other.exps[i]) }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial { exps: std::array::from_fn(|i| self.exps[i] - other.exps[i]) })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i].max(other.exps[i])) }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::one();
        for (v, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                acc *= &point[v].pow(u32::from(e));
            }
        }
        acc
    }

    /// Display order: higher total degree first, then lexicographic with
    /// `a11` largest.
    fn display_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical sparse polynomial: no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn var(v: usize) -> Self {
        Polynomial::term(Scalar::one(), Monomial::var(v))
    }

    /// The operator-entry variable `a{row+1}{col+1}`.
    pub fn entry(row: usize, col: usize) -> Self {
        Polynomial::var(entry_var(row, col))
    }

    pub fn lambda() -> Self {
        Polynomial::var(LAMBDA)
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
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

    /// Terms in canonical storage order (lexicographic on exponents).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.degree_in(v) > 0
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        self.terms.iter().map(|(m, c)| c * &m.evaluate(point)).sum()
    }

    /// Replaces variable `v` by the constant `value`.
    pub fn substitute(&self, v: usize, value: &Scalar) -> Self {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut exps = *m.exps();
            exps[v] = 0;
            out.add_term(Monomial::from_exps(exps), &(c * &value.pow(u32::from(e))));
        }
        out
    }

    /// Terms sorted for display: higher degree first, then `a11` first.
    pub fn display_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn parse(text: &str) -> Result<Polynomial, ParseError> {
        Parser::new(text).parse_polynomial()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl RingElement for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn from_scalar(c: &Scalar) -> Self {
        Polynomial::constant(c.clone())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let column = match self.chars.get(self.pos) {
            Some(_) => self.pos + 1,
            None => self.chars.len() + 1,
        };
        ParseError { line: 1, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '\u{2212}'
    }

    fn parse_polynomial(&mut self) -> Result<Polynomial, ParseError> {
        let mut out = Polynomial::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.error("empty polynomial")),
                None => break,
                Some('+') => {
                    self.pos += 1;
                    Scalar::one()
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    -Scalar::one()
                }
                Some(_) if first => Scalar::one(),
                Some(c) => return Err(self.error(format!("expected '+' or '-', found {c:?}"))),
            };
            first = false;
            let (c, m) = self.parse_term()?;
            out.add_term(m, &(&sign * &c));
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Scalar, Monomial), ParseError> {
        let mut coeff = Scalar::one();
        let mut mono = Monomial::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= &self.parse_number()?,
                Some(c) if c.is_alphabetic() => {
                    let (v, e) = self.parse_power()?;
                    mono = mono.mul(&Monomial::var_pow(v, e));
                }
                Some(c) => return Err(self.error(format!("expected a coefficient or variable, found {c:?}"))),
                None => return Err(self.error("expected a coefficient or variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, mono))
    }

    fn parse_uint(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let lo = self.chars[start].0;
        let hi = self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i);
        Ok(&self.src[lo..hi])
    }

    fn parse_number(&mut self) -> Result<Scalar, ParseError> {
        let start = self.pos;
        let num = self.parse_uint()?;
        let mut text = num.to_string();
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.parse_uint()?;
            text = format!("{num}/{den}");
        }
        text.parse::<Scalar>().map_err(|e| {
            self.pos = start;
            self.error(e.to_string())
        })
    }

    fn parse_power(&mut self) -> Result<(usize, u16), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_alphanumeric()) {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let Some(v) = var_index(&name) else {
            self.pos = start;
            return Err(self.error(format!("unknown variable {name:?}")));
        };
        let mut e = 1u16;
        if self.peek() == Some('^') {
            self.pos += 1;
            let digits = self.parse_uint()?;
            e = digits.parse().map_err(|_| self.error("exponent too large"))?;
        }
        Ok((v, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(r: usize, c: usize) -> Polynomial {
        Polynomial::entry(r - 1, c - 1)
    }

    #[test]
    fn variable_names() {
        assert_eq!(var_name(0), "a11");
        assert_eq!(var_name(15), "a44");
        assert_eq!(var_name(LAMBDA), "l");
        assert_eq!(var_index("a34"), Some(11));
        assert_eq!(var_index("a50"), None);
        for v in 0..NVARS {
            assert_eq!(var_index(&var_name(v)), Some(v));
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Polynomial::parse("a11*a22").unwrap(), &a(1, 1) * &a(2, 2));
        assert_eq!(Polynomial::parse("a33 + a44").unwrap(), &a(3, 3) + &a(4, 4));
        let p = Polynomial::parse("a34*a43 + a44^2").unwrap();
        assert_eq!(p, &(&a(3, 4) * &a(4, 3)) + &a(4, 4).pow(2));
        let q = Polynomial::parse("−3/2*a11 - l*a21 + 2").unwrap();
        assert_eq!(q.to_string(), "-a21*l - 3/2*a11 + 2");
        assert_eq!(Polynomial::parse("0").unwrap(), Polynomial::zero());
        assert_eq!(Polynomial::parse("a11 - a11").unwrap(), Polynomial::zero());
        assert_eq!(Polynomial::parse(" - a12 ").unwrap(), -&a(1, 2));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = Polynomial::parse("a11 + b7").unwrap_err();
        assert_eq!(e.column, 7);
        assert!(Polynomial::parse("").is_err());
        assert!(Polynomial::parse("a11 a12").is_err());
        assert!(Polynomial::parse("a11 +").is_err());
        assert!(Polynomial::parse("1/0*a11").is_err());
    }

    #[test]
    fn display_order_is_graded() {
        let p = Polynomial::parse("l*a11 + a11^2 + 2*a12*a21 + 2*a14*a41 + 2*a13*a31").unwrap();
        assert_eq!(p.to_string(), "a11^2 + a11*l + 2*a12*a21 + 2*a13*a31 + 2*a14*a41");
    }

    #[test]
    fn evaluate_and_substitute() {
        let p = Polynomial::parse("a11^2 + a11*l").unwrap();
        let mut point = vec![Scalar::zero(); NVARS];
        point[LAMBDA] = Scalar::from_int(2);
        point[0] = Scalar::from_int(-2);
        assert!(p.evaluate(&point).is_zero());
        let c = Polynomial::constant(Scalar::ratio(5, 3));
        assert_eq!(c.evaluate(&point), Scalar::ratio(5, 3));
        assert_eq!(p.substitute(LAMBDA, &Scalar::zero()), a(1, 1).pow(2));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::array::uniform4(0u16..3), 0usize..4, -5i64..6, 1i64..4), 0..6).prop_map(|ts| {
            Polynomial::from_terms(ts.into_iter().map(|(e, off, n, d)| {
                let mut exps = [0u16; NVARS];
                for (k, x) in e.iter().enumerate() {
                    exps[(off * 4 + k * 3) % SYSTEM_VARS] += x;
                }
                (Monomial::from_exps(exps), Scalar::ratio(n, d))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn text_round_trip(p in arb_poly()) {
            let text = p.to_string();
            let back = Polynomial::parse(&text).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, p);
        }
    }
}
