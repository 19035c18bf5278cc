//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Variables are attached to ground-set elements: the signed pair
//! `x[e]+`, `x[e]-` and the unsigned `x[e]`. Terms are kept sorted in a
//! graded order (total degree first, then larger exponents on earlier
//! variables first), which makes the canonical text form byte-stable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::signvec::{ElementSet, GroundSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSign {
    Plus,
    Minus,
    Unsigned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub element: usize,
    pub sign: VarSign,
}

impl Variable {
    pub fn plus(element: usize) -> Self {
        Variable { element, sign: VarSign::Plus }
    }

    pub fn minus(element: usize) -> Self {
        Variable { element, sign: VarSign::Minus }
    }

    pub fn unsigned(element: usize) -> Self {
        Variable { element, sign: VarSign::Unsigned }
    }

    pub fn name(&self, ground: &GroundSet) -> String {
        let suffix = match self.sign {
            VarSign::Plus => "+",
            VarSign::Minus => "-",
            VarSign::Unsigned => "",
        };
        format!("x[{}]{}", ground.name(self.element), suffix)
    }
}

/// A power product; exponents are positive and variables sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, k) in powers {
            if k > 0 {
                *map.entry(v).or_default() += k;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn powers(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, k)| k as u64).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, k)| k)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, k) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match k.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, k - d)),
                }
            } else {
                out.push((v, k));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    fn involves(&self, element: usize) -> bool {
        self.0.iter().any(|(v, _)| v.element == element)
    }

    fn map_vars(&self, f: impl Fn(Variable) -> Variable) -> Monomial {
        Monomial::from_powers(self.0.iter().map(|&(v, k)| (f(v), k)))
    }

    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, ground }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    // the side with a smaller variable present has the larger
                    // exponent there and sorts first
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(va, ka)), Some(&(vb, kb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal if ka != kb => return kb.cmp(&ka),
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    ground: &'a GroundSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        for (i, (v, k)) in self.m.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", v.name(self.ground))?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    /// Sorted ascending in monomial order.
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::term(Monomial::one(), c.into())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(m, BigInt::one())
    }

    pub fn var(v: Variable) -> Self {
        Poly::monomial(Monomial::var(v))
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut map: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *map.entry(m).or_default() += c;
        }
        Poly::from_map(map)
    }

    fn from_map(map: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The single monomial of a poly with exactly one term of coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.last().map_or(0, |(m, _)| m.degree())
    }

    fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    /// `self^k`.
    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn checked_pow(&self, k: i64) -> Result<Poly> {
        let k = u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("exponent {k} must be a nonnegative 32-bit integer")))?;
        Ok(self.pow(k))
    }

    fn scale_monomial(&self, m: &Monomial, c: &BigInt) -> Poly {
        // the monomial order is multiplicative, so the order is preserved
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    /// The quotient `self / divisor`, which must be exact over the integers.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (lm, lc) = divisor.leading().ok_or(Error::DivisionByZero)?;
        if divisor.terms.len() == 1 {
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| {
                    let q = m.div(lm).ok_or(Error::InexactDivision)?;
                    let (qc, r) = c.div_rem(lc);
                    if !r.is_zero() {
                        return Err(Error::InexactDivision);
                    }
                    Ok((q, qc))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly { terms });
        }
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm).ok_or(Error::InexactDivision)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            // subtract qc*qm*divisor, skipping its leading term which cancels
            for (dm, dc) in &divisor.terms[..divisor.terms.len() - 1] {
                let key = dm.mul(&qm);
                let entry = rem.entry(key).or_default();
                *entry -= &qc * dc;
                if entry.is_zero() {
                    let key = dm.mul(&qm);
                    rem.remove(&key);
                }
            }
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Ok(Poly { terms: quotient })
    }

    /// Evaluates both variables of `element` (and the unsigned one) at 0.
    pub fn set_zero(&self, element: usize) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| !m.involves(element)).cloned().collect() }
    }

    /// Substitutes `x[e]+ = x[e]- = x[e]` for every element.
    pub fn unsigned_specialize(&self) -> Poly {
        self.map_variables(|v| Variable::unsigned(v.element))
    }

    /// Exchanges `x[e]+` and `x[e]-` for every `e` in `set`.
    pub fn swap_signs(&self, set: ElementSet) -> Poly {
        self.map_variables(|v| {
            if !set.contains(v.element) {
                return v;
            }
            match v.sign {
                VarSign::Plus => Variable::minus(v.element),
                VarSign::Minus => Variable::plus(v.element),
                VarSign::Unsigned => v,
            }
        })
    }

    pub fn map_variables(&self, f: impl Fn(Variable) -> Variable) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Variables occurring in the polynomial, sorted.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.iter().flat_map(|(m, _)| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Exact integer value under `assignment`.
    pub fn eval_int(&self, assignment: &HashMap<Variable, BigInt>) -> Result<BigInt> {
        self.eval_with(|v| assignment.get(&v).cloned())
    }

    pub fn eval_with(&self, value: impl Fn(Variable) -> Option<BigInt>) -> Result<BigInt> {
        let mut cache: HashMap<Variable, BigInt> = HashMap::new();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, k) in &m.0 {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or_else(|| Error::MissingVariable(format!("{v:?}")))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t *= num_traits::pow(x, k as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> PolyDisplay<'a> {
        PolyDisplay { p: self, ground }
    }

    pub fn to_string_with(&self, ground: &GroundSet) -> String {
        self.display(ground).to_string()
    }

    /// Parses the canonical text form, e.g. `1 - x[a]+*x[a]-` or
    /// `1 - 2*x[a]^2 + x[b]`.
    pub fn parse(text: &str, ground: &GroundSet) -> Result<Poly> {
        Parser { s: text.as_bytes(), pos: 0, ground }.parse()
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, other: &Poly) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Poly { terms: out }
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.scale_monomial(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.scale_monomial(m, c);
        }
        let mut map: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *map.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly::from_map(map)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, other: Poly) -> Poly {
                (&self).$f(&other)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, other: &Poly) -> Poly {
                (&self).$f(other)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, other: Poly) -> Poly {
                self.$f(&other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A product of powers of polynomials, kept unexpanded. Equal factors are
/// merged and the list is sorted by leading monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Poly, u32)>,
}

fn factor_cmp(a: &Poly, b: &Poly) -> Ordering {
    let ka = a.terms.iter().rev().map(|(m, c)| (m, c));
    let kb = b.terms.iter().rev().map(|(m, c)| (m, c));
    ka.cmp(kb)
}

impl Factorization {
    pub fn new() -> Self {
        Factorization::default()
    }

    /// Multiplies by `factor^exponent`.
    pub fn push(&mut self, factor: Poly, exponent: u32) {
        if exponent == 0 || factor.is_one() {
            return;
        }
        match self.factors.binary_search_by(|(f, _)| factor_cmp(f, &factor)) {
            Ok(i) => self.factors[i].1 += exponent,
            Err(i) => self.factors.insert(i, (factor, exponent)),
        }
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    /// Exponent of `factor`, zero when absent.
    pub fn exponent_of(&self, factor: &Poly) -> u32 {
        self.factors.iter().find(|(f, _)| f == factor).map_or(0, |&(_, k)| k)
    }

    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    /// Value under `assignment` without expanding.
    pub fn eval_int(&self, assignment: &HashMap<Variable, BigInt>) -> Result<BigInt> {
        let mut acc = BigInt::one();
        for (f, k) in &self.factors {
            acc *= num_traits::pow(f.eval_int(assignment)?, *k as usize);
        }
        Ok(acc)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Factorization {
        let mut out = Factorization::new();
        for (p, k) in &self.factors {
            out.push(f(p), *k);
        }
        out
    }

    /// Text form such as `(1-x[a]^2)^3 (1-x[b]^2)`; `1` for the empty product.
    pub fn to_string_with(&self, ground: &GroundSet) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(f, k)| {
                let body: String = f.to_string_with(ground).chars().filter(|c| !c.is_whitespace()).collect();
                if *k == 1 {
                    format!("({body})")
                } else {
                    format!("({body})^{k}")
                }
            })
            .collect();
        parts.join(" ")
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Poly,
    ground: &'a GroundSet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.p.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(self.ground))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.ground))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ground: &'a GroundSet,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of polynomial", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected + or -")),
            }
            self.pos += 1;
        }
        Ok(Poly::from_terms(terms))
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok())?
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut powers = Vec::new();
        if let Some(n) = self.number() {
            coeff = n;
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Ok((Monomial::one(), coeff));
            }
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            powers.push(self.factor()?);
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            } else {
                break;
            }
        }
        Ok((Monomial::from_powers(powers), coeff))
    }

    fn factor(&mut self) -> Result<(Variable, u32)> {
        if !self.s[self.pos..].starts_with(b"x[") {
            return Err(self.err("expected a variable x[..]"));
        }
        self.pos += 2;
        let start = self.pos;
        while self.peek().is_some_and(|b| b != b']') {
            self.pos += 1;
        }
        if self.peek().is_none() {
            return Err(self.err("unterminated variable"));
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.err("invalid utf-8"))?;
        let element = self.ground.index_of(name)?;
        self.pos += 1;
        // a sign marker is attached directly to the closing bracket
        let var = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Variable::plus(element)
            }
            Some(b'-') => {
                self.pos += 1;
                Variable::minus(element)
            }
            _ => Variable::unsigned(element),
        };
        let mut k = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.number().ok_or_else(|| self.err("expected exponent"))?;
            k = u32::try_from(n).map_err(|_| self.err("exponent out of range"))?;
        }
        Ok((var, k))
    }
}
