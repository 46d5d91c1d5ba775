//! Sparse multivariate polynomials over a [`Field`] with weighted grading.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic: weighted degree first, then the exponent vector
//! lexicographically (`x1 > x2 > ...`). Printing lists terms from the largest
//! monomial down, so the first printed term is the leading term.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Variable names together with a positive integer weight (degree) per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialRing {
    names: Vec<String>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

impl PolynomialRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::Dimension(format!(
                "{} variable names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().position(|&w| w == 0) {
            return Err(Error::Invalid(format!("variable `{}` has weight 0", names[w])));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Invalid(format!("`{n}` is not a valid variable name")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(Arc::new(PolynomialRing { names, weights, index }))
    }

    /// All variables of weight 1.
    pub fn standard<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let weights = vec![1; names.len()];
        Self::new(names, weights)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length");
        let degree = exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
        Monomial { degree, exps }
    }

    pub fn one_monomial(&self) -> Monomial {
        self.monomial(vec![0; self.nvars()])
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.nvars()];
        exps[i] = 1;
        self.monomial(exps)
    }

    /// All monomials of weighted degree `d`, ascending in the canonical order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, var: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == self.nvars() {
            if remaining == 0 {
                out.push(self.monomial(exps.clone()));
            }
            return;
        }
        let w = self.weights[var];
        let mut e = 0;
        while e * w <= remaining {
            exps[var] = e;
            self.enumerate(var + 1, remaining - e * w, exps, out);
            e += 1;
        }
        exps[var] = 0;
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

fn is_identifier(s: &str) -> bool {
    let mut p = Parser { chars: s.chars().collect(), pos: 0 };
    p.identifier().map(|id| id == s).unwrap_or(false)
}

/// Exponent vector with its cached weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolynomialRing>,
    terms: BTreeMap<Monomial, F>,
}

/// Binary operation selector for [`poly_arith`].
#[derive(Debug, Clone)]
pub enum ArithOp<F> {
    Add,
    Sub,
    Mul,
    /// `a` scaled by the given scalar; `b` only has to live in the same ring.
    Scale(F),
}

pub fn poly_arith<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, op: ArithOp<F>) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Scale(c) => {
            a.check_ring(b)?;
            Ok(a.scale(&c))
        }
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolynomialRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolynomialRing>, c: F) -> Self {
        Self::term(ring, c, ring.one_monomial())
    }

    pub fn one(ring: &Arc<PolynomialRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn var(ring: &Arc<PolynomialRing>, i: usize) -> Self {
        Self::term(ring, F::one(), ring.var_monomial(i))
    }

    pub fn var_named(ring: &Arc<PolynomialRing>, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &Arc<PolynomialRing>, c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (coefficient, monomial) pairs, merging duplicates.
    pub fn from_terms(ring: &Arc<PolynomialRing>, terms: impl IntoIterator<Item = (F, Monomial)>) -> Self {
        let mut p = Self::zero(ring);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolynomialRing> {
        &self.ring
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

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Highest weighted degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        Ok(self.degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.ring.names().join(", "),
                other.ring.names().join(", ")
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(&self.ring))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(self.ring.monomial(exps), c.clone() * F::from_i64(e as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point length");
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t *= x.pow(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Algebra homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, target: &Arc<PolynomialRing>, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        for im in images {
            if !im.ring.same_as(target) {
                return Err(Error::RingMismatch("substitution image outside target ring".into()));
            }
        }
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|im| vec![Polynomial::one(target), im.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Same polynomial viewed in another ring with identical variable count.
    pub fn with_ring(&self, ring: &Arc<PolynomialRing>) -> Result<Self> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch("variable count differs".into()));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (ring.monomial(m.exps.clone()), c.clone())).collect(),
        })
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn parse(ring: &Arc<PolynomialRing>, s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().collect(), pos: 0 };
        let out = p.polynomial(ring)?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected `{}` at offset {} in `{s}`", p.chars[p.pos], p.pos)));
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let constant = m.exps.iter().all(|&e| e == 0);
            if constant || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] to handle it.
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        let s: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at offset {} in `{s}`", self.pos))
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn polynomial<F: Field>(&mut self, ring: &Arc<PolynomialRing>) -> Result<Polynomial<F>> {
        let mut out = Polynomial::zero(ring);
        let mut first = true;
        loop {
            let neg = match self.sign() {
                Some(n) => n,
                None if first => false,
                None => break,
            };
            first = false;
            let (c, m) = self.term::<F>(ring)?;
            out.add_term(m, if neg { -c } else { c });
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn term<F: Field>(&mut self, ring: &Arc<PolynomialRing>) -> Result<(F, Monomial)> {
        let mut coeff = F::one();
        let mut exps = vec![0u32; ring.nvars()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.number();
                    coeff *= F::parse(&num)?;
                }
                Some(_) => {
                    let start = self.pos;
                    let name = self.identifier().ok_or_else(|| self.err("expected a factor"))?;
                    let var = ring.var_index(&name).ok_or_else(|| {
                        self.pos = start;
                        self.err(&format!("unknown variable `{name}`"))
                    })?;
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let digits = self.digits();
                        e = digits.parse::<u32>().map_err(|_| self.err("expected an exponent"))?;
                    }
                    exps[var] += e;
                }
                None => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, ring.monomial(exps)))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> String {
        let mut s = self.digits();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            s.push('/');
            s.push_str(&self.digits());
        }
        s
    }

    /// `[A-Za-z_][A-Za-z0-9_]*` optionally followed by a bracketed index list `[1,2]`.
    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        let first = *self.chars.get(self.pos)?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        self.pos += 1;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        if self.chars.get(self.pos) == Some(&'[') {
            let save = self.pos;
            self.pos += 1;
            while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == ',') {
                self.pos += 1;
            }
            if self.chars.get(self.pos) == Some(&']') {
                self.pos += 1;
            } else {
                self.pos = save;
            }
        }
        Some(self.chars[start..self.pos].iter().collect())
    }
}
