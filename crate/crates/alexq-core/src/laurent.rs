//! Exact arithmetic in the ring of integer Laurent polynomials
//! `Z[t1^{±1}, …, tμ^{±1}]`.
//!
//! Polynomials are sparse maps from exponent vectors to nonzero
//! arbitrary-precision coefficients. The term order everywhere (storage,
//! display, canonical forms) is graded lexicographic with `t1 > t2 > …`.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::collections::BTreeMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Maximum number of ring variables (one per link component).
pub const MAX_VARS: usize = 64;

/// Exponent vector of a monomial, ordered graded-lexicographically
/// (total degree first, then `t1 > t2 > …`).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn new(exps: Vec<i64>) -> Self {
        ExpVec(exps)
    }

    pub fn zeros(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A unit of the Laurent ring: `±t1^{e1}···tμ^{eμ}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialUnit {
    pub negative: bool,
    pub exponents: Vec<i64>,
}

impl MonomialUnit {
    pub fn one(num_vars: usize) -> Self {
        MonomialUnit {
            negative: false,
            exponents: vec![0; num_vars],
        }
    }

    /// `t_idx` (0-based variable index).
    pub fn var(num_vars: usize, idx: usize) -> Self {
        assert!(idx < num_vars);
        let mut exponents = vec![0; num_vars];
        exponents[idx] = 1;
        MonomialUnit {
            negative: false,
            exponents,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn inverse(&self) -> MonomialUnit {
        MonomialUnit {
            negative: self.negative,
            exponents: self.exponents.iter().map(|e| -e).collect(),
        }
    }

    pub fn mul(&self, other: &MonomialUnit) -> MonomialUnit {
        assert_eq!(self.exponents.len(), other.exponents.len());
        MonomialUnit {
            negative: self.negative != other.negative,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        let c = if self.negative {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        LaurentPoly::monomial(self.exponents.len(), self.exponents.clone(), c)
    }
}

/// Errors from Laurent-ring operations reachable through user input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LaurentError {
    ArityMismatch { expected: usize, found: usize },
    ZeroAssignment { index: usize },
    NotPrime(u64),
    ZeroPolynomial,
    Parse { pos: usize, msg: String },
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} variables, found {found}")
            }
            LaurentError::ZeroAssignment { index } => {
                write!(f, "assignment for t{} is zero in the field", index + 1)
            }
            LaurentError::NotPrime(p) => write!(f, "{p} is not prime"),
            LaurentError::ZeroPolynomial => write!(f, "zero polynomial has no canonical form"),
            LaurentError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

/// Sparse Laurent polynomial with exact integer coefficients.
///
/// Invariants: no stored coefficient is zero, and every exponent vector
/// has length `num_vars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&num_vars));
        LaurentPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(num_vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(ExpVec::zeros(num_vars), c);
        }
        p
    }

    /// The variable `t_{idx+1}` (0-based index).
    pub fn var(num_vars: usize, idx: usize) -> Self {
        assert!(idx < num_vars);
        let mut exps = vec![0i64; num_vars];
        exps[idx] = 1;
        Self::monomial(num_vars, exps, BigInt::one())
    }

    pub fn monomial(num_vars: usize, exps: Vec<i64>, coeff: impl Into<BigInt>) -> Self {
        assert!((1..=MAX_VARS).contains(&num_vars));
        assert_eq!(exps.len(), num_vars);
        let mut p = Self::zero(num_vars);
        let c = coeff.into();
        if !c.is_zero() {
            p.terms.insert(ExpVec::new(exps), c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.term_count() == 1 && {
            let (e, c) = self.terms.iter().next().unwrap();
            e.as_slice().iter().all(|&x| x == 0) && c.is_one()
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms
            .get(&ExpVec::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn insert_add(&mut self, e: ExpVec, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_arity(&self, other: &LaurentPoly) {
        assert_eq!(
            self.num_vars, other.num_vars,
            "laurent arity mismatch: {} vs {}",
            self.num_vars, other.num_vars
        );
    }

    pub fn add_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_arity(other);
        let mut out = LaurentPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn neg_ref(&self) -> LaurentPoly {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_unit(&self, u: &MonomialUnit) -> LaurentPoly {
        assert_eq!(u.exponents.len(), self.num_vars);
        let shift = ExpVec::new(u.exponents.clone());
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = if u.negative { -c.clone() } else { c.clone() };
                    (e.add(&shift), c)
                })
                .collect(),
        }
    }

    /// Leading (graded-lex greatest) term, if any.
    pub fn leading_term(&self) -> Option<(&ExpVec, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Trailing (graded-lex least) term, if any.
    pub fn trailing_term(&self) -> Option<(&ExpVec, &BigInt)> {
        self.terms.iter().next()
    }

    /// Recognizes units of the Laurent ring: exactly the signed monomials.
    pub fn is_unit(&self) -> Option<MonomialUnit> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some(MonomialUnit {
                negative: false,
                exponents: e.as_slice().to_vec(),
            })
        } else if (-c).is_one() {
            Some(MonomialUnit {
                negative: true,
                exponents: e.as_slice().to_vec(),
            })
        } else {
            None
        }
    }

    /// Ring homomorphism sending `t_i` to the signed monomial `images[i]`
    /// (all images over a common target arity).
    pub fn substitute_monomials(
        &self,
        images: &[MonomialUnit],
    ) -> Result<LaurentPoly, LaurentError> {
        if images.len() != self.num_vars {
            return Err(LaurentError::ArityMismatch {
                expected: self.num_vars,
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(u) => u.num_vars(),
            None => self.num_vars,
        };
        for u in images {
            if u.num_vars() != target {
                return Err(LaurentError::ArityMismatch {
                    expected: target,
                    found: u.num_vars(),
                });
            }
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; target];
            let mut negative = false;
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                for (j, &img_e) in images[i].exponents.iter().enumerate() {
                    exps[j] += k * img_e;
                }
                if images[i].negative && k % 2 != 0 {
                    negative = !negative;
                }
            }
            let c = if negative { -c.clone() } else { c.clone() };
            out.insert_add(ExpVec::new(exps), c);
        }
        Ok(out)
    }

    /// Collapse to the single-variable ring by `t_i ↦ t`.
    pub fn reduce_to_single_variable(&self) -> LaurentPoly {
        let images: Vec<MonomialUnit> = (0..self.num_vars)
            .map(|_| MonomialUnit::var(1, 0))
            .collect();
        self.substitute_monomials(&images)
            .expect("arities are consistent by construction")
    }

    /// Evaluate in `F_p` at nonzero assignments `t_i = u_i`.
    pub fn evaluate_in_prime_field(
        &self,
        prime: u64,
        assignments: &[u64],
    ) -> Result<u64, LaurentError> {
        if !crate::specialize::is_prime(prime) {
            return Err(LaurentError::NotPrime(prime));
        }
        if assignments.len() != self.num_vars {
            return Err(LaurentError::ArityMismatch {
                expected: self.num_vars,
                found: assignments.len(),
            });
        }
        for (i, &u) in assignments.iter().enumerate() {
            if u % prime == 0 {
                return Err(LaurentError::ZeroAssignment { index: i });
            }
        }
        let p = prime;
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut v = bigint_mod(c, p);
            for (i, &k) in e.as_slice().iter().enumerate() {
                let base = assignments[i] % p;
                let pw = if k >= 0 {
                    crate::specialize::pow_mod(base, k as u64, p)
                } else {
                    let inv = crate::specialize::inv_mod(base, p);
                    crate::specialize::pow_mod(inv, (-k) as u64, p)
                };
                v = crate::specialize::mul_mod(v, pw, p);
            }
            acc = (acc + v) % p;
        }
        Ok(acc)
    }

    /// The unit multiple of `self` whose support has graded-lex minimum at
    /// the zero exponent vector and whose leading coefficient is positive.
    ///
    /// Two polynomials agree up to a unit iff their canonical forms are
    /// equal.
    pub fn canonical_up_to_unit(&self) -> Result<LaurentPoly, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let (min_e, _) = self.trailing_term().unwrap();
        let shift = MonomialUnit {
            negative: false,
            exponents: min_e.as_slice().iter().map(|e| -e).collect(),
        };
        let mut out = self.mul_unit(&shift);
        let (_, lead) = out.leading_term().unwrap();
        if lead.is_negative() {
            out = out.neg_ref();
        }
        Ok(out)
    }

    /// Whether `self` and `other` differ by a unit factor.
    pub fn eq_up_to_unit(&self, other: &LaurentPoly) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            _ => {
                self.canonical_up_to_unit().unwrap() == other.canonical_up_to_unit().unwrap()
            }
        }
    }

    /// Componentwise minimum exponent per variable over the support.
    fn min_exponents(&self) -> Vec<i64> {
        let mut mins = vec![i64::MAX; self.num_vars];
        for e in self.terms.keys() {
            for (m, &x) in mins.iter_mut().zip(e.as_slice()) {
                *m = (*m).min(x);
            }
        }
        mins
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, or `None` when
    /// `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        self.check_arity(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.num_vars));
        }
        // Shift both operands into the ordinary polynomial ring, where
        // graded-lex is a well order, then divide by leading terms.
        let sp = self.min_exponents();
        let sq = divisor.min_exponents();
        let unshift_p = MonomialUnit {
            negative: false,
            exponents: sp.iter().map(|e| -e).collect(),
        };
        let unshift_q = MonomialUnit {
            negative: false,
            exponents: sq.iter().map(|e| -e).collect(),
        };
        let mut rem = self.mul_unit(&unshift_p);
        let div = divisor.mul_unit(&unshift_q);
        let (de, dc) = div.leading_term().unwrap();
        let (de, dc) = (de.clone(), dc.clone());
        let mut quot = LaurentPoly::zero(self.num_vars);
        while !rem.is_zero() {
            let (re, rc) = rem.leading_term().unwrap();
            let me: Vec<i64> = re
                .as_slice()
                .iter()
                .zip(de.as_slice())
                .map(|(a, b)| a - b)
                .collect();
            if me.iter().any(|&x| x < 0) {
                return None;
            }
            let (mc, r) = num_integer_div_rem(rc, &dc);
            if !r.is_zero() {
                return None;
            }
            let m = LaurentPoly::monomial(self.num_vars, me, mc);
            rem = rem.sub_ref(&m.mul_ref(&div));
            quot = quot.add_ref(&m);
        }
        // Undo the shifts: self = q * divisor with q = quot * t^{sp - sq}.
        let back = MonomialUnit {
            negative: false,
            exponents: sp.iter().zip(&sq).map(|(a, b)| a - b).collect(),
        };
        Some(quot.mul_unit(&back))
    }

    /// Parse the textual syntax, e.g. `1 - 2*t1 + t1^2*t2^-1`.
    pub fn parse(text: &str, num_vars: usize) -> Result<LaurentPoly, LaurentError> {
        Parser::new(text, num_vars).parse()
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    use core::ops::Rem;
    let q = a / b;
    let r = a.rem(b);
    (q, r)
}

fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    use core::ops::Rem;
    let m = BigInt::from(p);
    let r = c.rem(&m);
    let r = if r.is_negative() { r + &m } else { r };
    r.to_u64().expect("residue fits in u64")
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first: descending graded-lex.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        alloc::format!("t{}", j + 1)
                    } else {
                        alloc::format!("t{}^{}", j + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, num_vars: usize) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            num_vars,
        }
    }

    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse {
            pos: self.pos,
            msg: msg.to_owned(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = LaurentPoly::zero(self.num_vars);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some(_) if first => 1,
                Some(c) => {
                    return Err(self.err(&alloc::format!(
                        "expected '+' or '-', found {:?}",
                        c as char
                    )))
                }
            };
            first = false;
            let term = self.parse_term()?;
            if sign > 0 {
                acc = acc.add_ref(&term);
            } else {
                acc = acc.sub_ref(&term);
            }
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                let f = self.parse_factor()?;
                acc = acc.mul_ref(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        self.skip_ws();
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                let idx = self.parse_uint()? as usize;
                if idx == 0 || idx > self.num_vars {
                    return Err(self.err(&alloc::format!(
                        "variable t{idx} out of range 1..={}",
                        self.num_vars
                    )));
                }
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.parse_int()?
                } else {
                    1
                };
                let mut exps = vec![0i64; self.num_vars];
                exps[idx - 1] = exp;
                Ok(LaurentPoly::monomial(self.num_vars, exps, BigInt::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_bigint()?;
                Ok(LaurentPoly::constant(self.num_vars, n))
            }
            Some(c) => Err(self.err(&alloc::format!(
                "expected coefficient or variable, found {:?}",
                c as char
            ))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_uint(&mut self) -> Result<u64, LaurentError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("integer overflow"))
    }

    fn parse_int(&mut self) -> Result<i64, LaurentError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.parse_uint()? as i64;
        Ok(if negative { -n } else { n })
    }

    fn parse_bigint(&mut self) -> Result<BigInt, LaurentError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| self.err("invalid utf8"))?;
        s.parse().map_err(|_| self.err("invalid integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, nv: usize) -> LaurentPoly {
        LaurentPoly::parse(s, nv).unwrap()
    }

    #[test]
    fn crossing_row_annihilated_by_phi() {
        // (1 - t2)(t1 - 1) + t1*(t2 - 1) - (t2 - 1) = 0
        let a = p("1 - t2", 2).mul_ref(&p("t1 - 1", 2));
        let b = p("t1", 2).mul_ref(&p("t2 - 1", 2));
        let c = p("t2 - 1", 2);
        assert!(a.add_ref(&b).sub_ref(&c).is_zero());
    }

    #[test]
    fn identities() {
        let q = p("3*t1^2*t2^-1 - 5 + t2", 2);
        assert_eq!(q.mul_ref(&LaurentPoly::one(2)), q);
        assert_eq!(q.add_ref(&LaurentPoly::zero(2)), q);
        let lhs = p("2*t1 - t1^2", 1);
        let rhs = p("t1", 1).mul_ref(&p("2 - t1", 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_recognition() {
        let u = p("t1^2*t2^-1", 2).neg_ref();
        let unit = u.is_unit().unwrap();
        assert!(unit.negative);
        assert_eq!(unit.exponents, vec![2, -1]);
        assert!(p("t1 - 1", 2).is_unit().is_none());
        assert!(p("2*t1", 2).is_unit().is_none());
        assert!(u.mul_ref(&unit.inverse().to_poly()).is_one());
    }

    #[test]
    fn substitution() {
        let t = || MonomialUnit::var(1, 0);
        let q = p("1 + t1^3*t2", 2);
        assert_eq!(q.substitute_monomials(&[t(), t()]).unwrap(), p("1 + t1^4", 1));
        assert_eq!(
            p("2*t1 - t1^2", 2).substitute_monomials(&[t(), t()]).unwrap(),
            p("2*t1 - t1^2", 1)
        );
        assert_eq!(
            p("t1 + t2 - t1*t2", 2)
                .substitute_monomials(&[t(), t()])
                .unwrap(),
            p("2*t1 - t1^2", 1)
        );
        // g(t1) = t1, g(t2) = t1^2*t2
        let g = [
            MonomialUnit::var(2, 0),
            MonomialUnit {
                negative: false,
                exponents: vec![2, 1],
            },
        ];
        assert_eq!(
            p("t2", 2).substitute_monomials(&g).unwrap(),
            p("t1^2*t2", 2)
        );
    }

    #[test]
    fn prime_field_evaluation() {
        assert_eq!(
            p("2*t1 - t1^2", 1).evaluate_in_prime_field(5, &[2]).unwrap(),
            0
        );
        assert_eq!(
            p("2*t1 - 1", 1).evaluate_in_prime_field(5, &[2]).unwrap(),
            3
        );
        assert_eq!(
            p("t1 - 1", 1).evaluate_in_prime_field(7, &[1]).unwrap(),
            0
        );
        assert_eq!(
            p("t1^-1", 1).evaluate_in_prime_field(5, &[2]).unwrap(),
            3
        );
        assert!(matches!(
            p("t1", 1).evaluate_in_prime_field(5, &[5]),
            Err(LaurentError::ZeroAssignment { index: 0 })
        ));
        assert!(matches!(
            p("t1", 1).evaluate_in_prime_field(6, &[1]),
            Err(LaurentError::NotPrime(6))
        ));
    }

    #[test]
    fn canonical_form() {
        let q = p("t1^3", 1).neg_ref().mul_ref(&p("2*t1 - 1", 1));
        assert_eq!(q.canonical_up_to_unit().unwrap(), p("2*t1 - 1", 1));
        let c = p("3*t1^2*t2^-4 - t1*t2^-3", 2).canonical_up_to_unit().unwrap();
        assert_eq!(c.canonical_up_to_unit().unwrap(), c);
        assert!(!p("1 + t1*t2", 2).eq_up_to_unit(&p("1 + t1^3*t2", 2)));
        assert!(p("2*t1 - t1^2", 2).eq_up_to_unit(&p("2 - t1", 2)));
    }

    #[test]
    fn exact_division() {
        let a = p("t1 + t2 - t1*t2", 2);
        let b = p("t1^2*t2^-1 - 2*t1", 2);
        let prod = a.mul_ref(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(a.exact_div(&b).is_none());
        assert!(p("2*t1^2 - 3*t1 + 1", 1)
            .exact_div(&p("t1^2 - 2*t1", 1))
            .is_none());
        assert_eq!(
            p("2*t1^2 - 3*t1 + 1", 1)
                .exact_div(&p("2*t1 - 1", 1))
                .unwrap(),
            p("t1 - 1", 1)
        );
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "2*t1 - 1",
            "-t1^2 + 2*t1",
            "t1^2*t2^-1 - 2*t1 + 1",
            "0",
            "-7",
            "t2 - 1",
        ] {
            let q = p(s, 2);
            assert_eq!(LaurentPoly::parse(&q.to_string(), 2).unwrap(), q);
            assert_eq!(q.to_string(), s);
        }
    }
}
