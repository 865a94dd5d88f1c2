//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] keeps its terms sorted in descending order with respect to
//! its [`MonomialOrder`], so the leading term is always at index zero.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// An exponent vector together with its cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(arity: usize) -> Self {
        Monomial {
            exps: vec![0; arity],
            degree: 0,
        }
    }

    /// The monomial `x_var^power`.
    pub fn var_power(arity: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; arity];
        exps[var] = power;
        Monomial {
            exps,
            degree: power,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// True if `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If the monomial is a pure power `x_i^k` with `k > 0`, returns `(i, k)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Prepends `extra` zero exponents.
    pub(crate) fn widen_front(&self, extra: usize) -> Monomial {
        let mut exps = vec![0; extra];
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `count` exponents.
    pub(crate) fn narrow_front(&self, count: usize) -> Monomial {
        Monomial::new(self.exps[count..].to_vec())
    }
}

/// A monomial order on exponent vectors of a fixed arity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Block order: the first `block` variables compared by degrevlex, ties broken
    /// by degrevlex on the remaining variables.
    Elimination(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            // smaller exponent in the last differing variable wins
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn check_arity(&self, arity: usize) -> Result<(), PolyError> {
        match *self {
            MonomialOrder::Elimination(block) if block == 0 || block >= arity => {
                Err(PolyError::BadEliminationBlock { block, arity })
            }
            _ => Ok(()),
        }
    }

    /// Compares two monomials of equal arity.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => degrevlex(&a.exps, &b.exps),
                ord => ord,
            },
            MonomialOrder::Elimination(block) => {
                match degrevlex(&a.exps[..block], &b.exps[..block]) {
                    Ordering::Equal => degrevlex(&a.exps[block..], &b.exps[block..]),
                    ord => ord,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::DegRevLex => "degrevlex".to_string(),
            MonomialOrder::Elimination(k) => format!("elimination({k})"),
        }
    }
}

/// Checked comparison used by the public API.
pub fn compare_monomials(
    order: MonomialOrder,
    a: &Monomial,
    b: &Monomial,
) -> Result<Ordering, PolyError> {
    if a.arity() != b.arity() {
        return Err(PolyError::ArityMismatch(a.arity(), b.arity()));
    }
    Ok(order.cmp(a, b))
}

pub type Term = (Monomial, BigRational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(arity: usize, order: MonomialOrder) -> Self {
        Polynomial {
            arity,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(arity: usize, order: MonomialOrder, c: BigRational) -> Self {
        Self::monomial(Monomial::one(arity), c, order)
    }

    pub fn one(arity: usize, order: MonomialOrder) -> Self {
        Self::constant(arity, order, BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational, order: MonomialOrder) -> Self {
        let arity = m.arity();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            arity,
            order,
            terms,
        }
    }

    pub fn var(arity: usize, order: MonomialOrder, var: usize) -> Self {
        Self::monomial(Monomial::var_power(arity, var, 1), BigRational::one(), order)
    }

    /// Builds a polynomial from arbitrary terms, collecting like monomials and
    /// dropping zero coefficients.
    pub fn from_terms(
        arity: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = Term>,
    ) -> Result<Self, PolyError> {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        if let Some((m, _)) = terms.iter().find(|(m, _)| m.arity() != arity) {
            return Err(PolyError::ArityMismatch(arity, m.arity()));
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial {
            arity,
            order,
            terms: out,
        })
    }

    pub(crate) fn from_sorted_terms(arity: usize, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            arity,
            order,
            terms,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Re-sorts the terms for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            arity: self.arity,
            order,
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity, self.order);
        }
        Polynomial {
            arity: self.arity,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// `c * m * self`. Monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity, self.order);
        }
        Polynomial {
            arity: self.arity,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k * c))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    /// Merge `self + factor * other`, both sorted in `self.order`.
    pub(crate) fn axpy(&self, factor: &BigRational, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.order, other.order);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match order.cmp(ma, mb) {
                    Ordering::Greater => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((mb.clone(), cb * factor));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = ca + cb * factor;
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((mb.clone(), cb * factor));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Polynomial {
            arity: self.arity,
            order,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        Ok(self.axpy(&BigRational::one(), &other.with_order(self.order)))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        Ok(self.axpy(&-BigRational::one(), &other.with_order(self.order)))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let other = other.with_order(self.order);
        let (small, large) = if self.len() <= other.len() {
            (self, &other)
        } else {
            (&other, self)
        };
        let mut acc = Polynomial::zero(self.arity, self.order);
        for (m, c) in &small.terms {
            acc = acc.axpy(&BigRational::one(), &large.mul_term(m, c));
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity, self.order);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Exact division `self / divisor`; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.check_compatible(divisor)?;
        let divisor = divisor.with_order(self.order);
        let Some((lm, lc)) = divisor.leading_term().cloned() else {
            return Ok(None);
        };
        let mut rest = self.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&m);
            let qc = &c / &lc;
            rest = rest.axpy(&-qc.clone(), &divisor.mul_term(&qm, &BigRational::one()));
            quot.push((qm, qc));
        }
        Ok(Some(Polynomial::from_sorted_terms(self.arity, self.order, quot)))
    }

    /// Clears denominators and content so that all coefficients are coprime integers
    /// with a positive leading coefficient.
    pub fn primitive_integer(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        if ints[0].is_negative() {
            g = -g;
        }
        Polynomial {
            arity: self.arity,
            order: self.order,
            terms: self
                .terms
                .iter()
                .zip(ints)
                .map(|((m, _), n)| (m.clone(), BigRational::from_integer(n / &g)))
                .collect(),
        }
    }

    pub(crate) fn widen_front(&self, extra: usize, order: MonomialOrder) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.widen_front(extra), c.clone()));
        Polynomial::from_terms(self.arity + extra, order, terms).expect("arity")
    }

    pub(crate) fn narrow_front(&self, count: usize, order: MonomialOrder) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.narrow_front(count), c.clone()));
        Polynomial::from_terms(self.arity - count, order, terms).expect("arity")
    }

    /// Formats with the given variable names using the input grammar.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

/// Printer for [`Polynomial`] bound to variable names.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let abs = c.abs();
            if c.is_negative() {
                write!(f, "{}", if i == 0 { "-" } else { " - " })?;
            } else if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [String],
    src_len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src_len, |&(o, _)| o)
    }

    fn syntax(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            position: self.offset(),
            message: msg.into(),
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Some(digits.parse().expect("ascii digits"))
    }

    /// Longest declared variable name starting at the cursor.
    fn variable(&mut self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (idx, name) in self.vars.iter().enumerate() {
            let n = name.chars().count();
            if self.pos + n > self.chars.len() {
                continue;
            }
            let matches = self.chars[self.pos..self.pos + n]
                .iter()
                .map(|&(_, c)| c)
                .eq(name.chars());
            if matches && best.is_none_or(|(_, len)| n > len) {
                best = Some((idx, n));
            }
        }
        best.map(|(idx, n)| {
            self.pos += n;
            idx
        })
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<bool, PolyError> {
        let Some(var) = self.variable() else {
            return Ok(false);
        };
        let mut power = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self
                .number()
                .ok_or_else(|| self.syntax("expected exponent after '^'"))?;
            power = u32::try_from(n).map_err(|_| self.syntax("exponent too large"))?;
        }
        exps[var] += power;
        Ok(true)
    }

    fn term(&mut self, negate: bool) -> Result<Term, PolyError> {
        let mut coeff = BigRational::one();
        let mut seen = false;
        if let Some(n) = self.number() {
            seen = true;
            let mut c = BigRational::from_integer(n);
            if self.peek() == Some('/') {
                self.pos += 1;
                let d = self
                    .number()
                    .ok_or_else(|| self.syntax("expected denominator after '/'"))?;
                if d.is_zero() {
                    return Err(self.syntax("zero denominator"));
                }
                c /= BigRational::from_integer(d);
            }
            coeff = c;
        }
        let mut exps = vec![0u32; self.vars.len()];
        loop {
            let save = self.pos;
            let star = self.peek() == Some('*');
            if star {
                self.pos += 1;
            }
            if self.factor(&mut exps)? {
                seen = true;
                continue;
            }
            if star {
                return Err(self.unknown_or_syntax("expected variable after '*'"));
            }
            self.pos = save;
            break;
        }
        if !seen {
            return Err(self.unknown_or_syntax("expected a term"));
        }
        if negate {
            coeff = -coeff;
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn unknown_or_syntax(&self, msg: &str) -> PolyError {
        let ident: String = self.chars[self.pos..]
            .iter()
            .map(|&(_, c)| c)
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .collect();
        if ident.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
            PolyError::UnknownVariable {
                position: self.offset(),
                name: ident,
            }
        } else {
            self.syntax(msg)
        }
    }
}

/// Parses a polynomial expression over the named variables.
pub fn parse_polynomial(
    src: &str,
    vars: &[String],
    order: MonomialOrder,
) -> Result<Polynomial, PolyError> {
    let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser {
        chars,
        pos: 0,
        vars,
        src_len: src.len(),
    };
    let mut terms = Vec::new();
    let mut negate = false;
    if p.peek() == Some('-') {
        p.pos += 1;
        negate = true;
    }
    terms.push(p.term(negate)?);
    while let Some(c) = p.peek() {
        match c {
            '+' | '-' => {
                p.pos += 1;
                terms.push(p.term(c == '-')?);
            }
            _ => return Err(p.unknown_or_syntax(&format!("unexpected '{c}'"))),
        }
    }
    Polynomial::from_terms(vars.len(), order, terms)
}

/// Shorthand for an integer coefficient.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
