//! Sparse exact Laurent polynomials in `n` cluster variables `x1..xn` and `n`
//! coefficient variables `y1..yn`, plus the tropical semifield on the `y`s.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under a graded
//! lexicographic order, so every polynomial is canonical by construction:
//! equal values have equal term maps, and serialization order is fixed.
//! Coefficients are arbitrary-precision integers; exponents are `i32` with
//! checked arithmetic, since expansions in finite type stay tiny and an
//! overflow would mean something is badly wrong.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Paired x/y exponent vectors of one Laurent term. Both halves always have
/// the same length, the rank of the ambient seed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    pub xexp: Vec<i32>,
    pub yexp: Vec<i32>,
}

fn add_exp(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("exponent overflow")
}

impl ExponentVector {
    pub fn new(xexp: Vec<i32>, yexp: Vec<i32>) -> Self {
        assert_eq!(xexp.len(), yexp.len(), "exponent halves must share the rank");
        ExponentVector { xexp, yexp }
    }

    pub fn zeros(rank: usize) -> Self {
        ExponentVector {
            xexp: vec![0; rank],
            yexp: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.xexp.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector {
            xexp: self
                .xexp
                .iter()
                .zip(&other.xexp)
                .map(|(&a, &b)| add_exp(a, b))
                .collect(),
            yexp: self
                .yexp
                .iter()
                .zip(&other.yexp)
                .map(|(&a, &b)| add_exp(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExponentVector {
            xexp: self
                .xexp
                .iter()
                .zip(&other.xexp)
                .map(|(&a, &b)| add_exp(a, b.checked_neg().expect("exponent overflow")))
                .collect(),
            yexp: self
                .yexp
                .iter()
                .zip(&other.yexp)
                .map(|(&a, &b)| add_exp(a, b.checked_neg().expect("exponent overflow")))
                .collect(),
        }
    }

    fn total_degree(&self) -> i64 {
        self.xexp.iter().map(|&e| e as i64).sum::<i64>()
            + self.yexp.iter().map(|&e| e as i64).sum::<i64>()
    }

    fn is_componentwise_nonneg(&self) -> bool {
        self.xexp.iter().all(|&e| e >= 0) && self.yexp.iter().all(|&e| e >= 0)
    }
}

/// Graded lexicographic: total degree first, then lexicographic on the
/// concatenated (x, y) vector. A monomial order, so leading terms multiply.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.xexp.cmp(&other.xexp))
            .then_with(|| self.yexp.cmp(&other.yexp))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Laurent polynomial with integer coefficients. The zero polynomial is the
/// empty term map; no stored coefficient is ever zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zeros(rank), c);
        }
        p
    }

    /// The cluster variable `x_{i+1}` as a polynomial (0-based slot).
    pub fn variable(rank: usize, i: usize) -> Self {
        assert!(i < rank);
        let mut e = ExponentVector::zeros(rank);
        e.xexp[i] = 1;
        Self::monomial(rank, e, BigInt::one())
    }

    /// The coefficient variable `y_{i+1}` as a polynomial (0-based slot).
    pub fn coefficient_variable(rank: usize, i: usize) -> Self {
        assert!(i < rank);
        let mut e = ExponentVector::zeros(rank);
        e.yexp[i] = 1;
        Self::monomial(rank, e, BigInt::one())
    }

    pub fn monomial(rank: usize, exp: ExponentVector, coeff: BigInt) -> Self {
        assert_eq!(exp.rank(), rank);
        let mut p = Self::zero(rank);
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExponentVector::zeros(self.rank))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    /// The canonically largest term. None for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// True when the polynomial is a single monomial with coefficient one,
    /// no coefficient variables, and only nonnegative cluster exponents:
    /// the shape of a cluster monomial written in its own seed.
    pub fn is_monic_nonneg_monomial(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        c.is_one() && e.xexp.iter().all(|&a| a >= 0) && e.yexp.iter().all(|&a| a == 0)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    fn insert(&mut self, exp: ExponentVector, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..k {
            out = out.mul(self).expect("equal ranks");
        }
        out
    }

    /// Multiply by a single Laurent monomial (shift every exponent vector).
    pub fn mul_monomial(&self, exp: &ExponentVector, coeff: &BigInt) -> Self {
        let mut out = Self::zero(self.rank);
        if coeff.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.add(exp), c * coeff);
        }
        out
    }

    /// Componentwise minimum of all exponent vectors, over both halves.
    fn min_exponents(&self) -> Result<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let mut min = first.clone();
        for e in it {
            for (m, &v) in min.xexp.iter_mut().zip(&e.xexp) {
                *m = (*m).min(v);
            }
            for (m, &v) in min.yexp.iter_mut().zip(&e.yexp) {
                *m = (*m).min(v);
            }
        }
        Ok(min)
    }

    /// Componentwise minimal x-exponents over all terms. The negated vector
    /// is the denominator vector of a cluster-variable expansion.
    pub fn min_x_exponents(&self) -> Result<Vec<i32>> {
        Ok(self.min_exponents()?.xexp)
    }

    /// Exact division. The divisor must divide without remainder in the
    /// Laurent ring; anything else is reported, not approximated.
    ///
    /// Both operands are first shifted by their componentwise minimal
    /// exponents so they become genuine polynomials. In an integral domain
    /// the minimal-slice argument shows the true quotient is then also a
    /// genuine polynomial, so ordinary term-by-term division with the graded
    /// lexicographic leading term terminates: each step either produces the
    /// next quotient term or proves inexactness.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }

        let pmin = self.min_exponents()?;
        let qmin = divisor.min_exponents()?;
        let zero = ExponentVector::zeros(self.rank);
        let mut rem = self.mul_monomial(&zero.sub(&pmin), &BigInt::one());
        let qbar = divisor.mul_monomial(&zero.sub(&qmin), &BigInt::one());
        let (qlead_e, qlead_c) = {
            let (e, c) = qbar.leading_term().expect("nonzero divisor");
            (e.clone(), c.clone())
        };

        let mut quotient = Self::zero(self.rank);
        while let Some((lead_e, lead_c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            let te = lead_e.sub(&qlead_e);
            if !te.is_componentwise_nonneg() {
                return Err(Error::InexactDivision(format!(
                    "leading monomial not divisible (term {})",
                    render_term(&lead_e, &lead_c, true)
                )));
            }
            if (&lead_c % &qlead_c) != BigInt::zero() {
                return Err(Error::InexactDivision(format!(
                    "leading coefficient {} not divisible by {}",
                    lead_c, qlead_c
                )));
            }
            let tc = &lead_c / &qlead_c;
            rem = rem.sub(&qbar.mul_monomial(&te, &tc))?;
            quotient.insert(te, tc);
        }

        Ok(quotient.mul_monomial(&pmin.sub(&qmin), &BigInt::one()))
    }

    /// Total order extending equality, used wherever polynomials must be
    /// sorted reproducibly. Compares term lists from the leading end.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ea, ca)), Some((eb, cb))) => {
                    let o = ea.cmp(eb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }

    /// Parse the text form produced by `Display`. Accepts sums of terms like
    /// `2*x1^2*y2 - x2^-1 + 3`, with 1-based variable indices up to `rank`.
    pub fn parse(rank: usize, input: &str) -> Result<Self> {
        Parser {
            rank,
            chars: input.chars().peekable(),
        }
        .parse()
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn render_term(e: &ExponentVector, c: &BigInt, with_sign: bool) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (i, &a) in e.xexp.iter().enumerate() {
        if a == 1 {
            factors.push(format!("x{}", i + 1));
        } else if a != 0 {
            factors.push(format!("x{}^{}", i + 1, a));
        }
    }
    for (i, &a) in e.yexp.iter().enumerate() {
        if a == 1 {
            factors.push(format!("y{}", i + 1));
        } else if a != 0 {
            factors.push(format!("y{}^{}", i + 1, a));
        }
    }
    let mag = c.abs();
    let mut body = if factors.is_empty() {
        mag.to_string()
    } else if mag.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", mag, factors.join("*"))
    };
    if with_sign && c.is_negative() {
        body = format!("-{}", body);
    }
    body
}

/// Canonical text form: terms in descending canonical order, joined with
/// explicit plus or minus, coefficient 1 omitted, `^1` omitted.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                write!(f, "{}", render_term(e, c, true))?;
            } else if c.is_negative() {
                write!(f, " - {}", render_term(e, c, false))?;
            } else {
                write!(f, " + {}", render_term(e, c, false))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    rank: usize,
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut s = String::new();
        if matches!(self.chars.peek(), Some('-')) {
            s.push('-');
            self.chars.next();
        }
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        if s.is_empty() || s == "-" {
            return Err(Error::Parse("expected an integer".into()));
        }
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {:?}: {}", s, e)))
    }

    fn parse_index(&mut self) -> Result<usize> {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        let i: usize = s
            .parse()
            .map_err(|_| Error::Parse("expected a variable index".into()))?;
        if i == 0 || i > self.rank {
            return Err(Error::Parse(format!(
                "variable index {} out of range 1..={}",
                i, self.rank
            )));
        }
        Ok(i - 1)
    }

    /// One factor: an integer, or `x<i>`/`y<i>` with optional `^<exp>`.
    fn parse_factor(&mut self, exp: &mut ExponentVector, coeff: &mut BigInt) -> Result<()> {
        self.skip_ws();
        match self.chars.peek() {
            Some('x') | Some('y') => {
                let which = self.chars.next().unwrap();
                let idx = self.parse_index()?;
                let mut power: i32 = 1;
                if matches!(self.chars.peek(), Some('^')) {
                    self.chars.next();
                    let p = self.parse_integer()?;
                    power = i32::try_from(&p)
                        .map_err(|_| Error::Parse(format!("exponent {} too large", p)))?;
                }
                let slot = if which == 'x' {
                    &mut exp.xexp[idx]
                } else {
                    &mut exp.yexp[idx]
                };
                *slot = add_exp(*slot, power);
                Ok(())
            }
            Some(c) if c.is_ascii_digit() || *c == '-' => {
                *coeff *= self.parse_integer()?;
                Ok(())
            }
            other => Err(Error::Parse(format!("unexpected {:?} in term", other))),
        }
    }

    fn parse_term(&mut self) -> Result<(ExponentVector, BigInt)> {
        let mut exp = ExponentVector::zeros(self.rank);
        let mut coeff = BigInt::one();
        self.parse_factor(&mut exp, &mut coeff)?;
        loop {
            self.skip_ws();
            if matches!(self.chars.peek(), Some('*')) {
                self.chars.next();
                self.parse_factor(&mut exp, &mut coeff)?;
            } else {
                return Ok((exp, coeff));
            }
        }
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.rank);
        self.skip_ws();
        let mut negate = false;
        if matches!(self.chars.peek(), Some('-')) {
            // Leading minus binds to the whole first term only when followed
            // by a variable; a numeric literal consumes it itself.
            let mut look = self.chars.clone();
            look.next();
            while matches!(look.peek(), Some(c) if c.is_whitespace()) {
                look.next();
            }
            if matches!(look.peek(), Some('x') | Some('y')) {
                self.chars.next();
                negate = true;
            }
        }
        let (e, c) = self.parse_term()?;
        out.insert(e, if negate { -c } else { c });
        loop {
            self.skip_ws();
            match self.chars.next() {
                None => return Ok(out),
                Some('+') => {
                    let (e, c) = self.parse_term()?;
                    out.insert(e, c);
                }
                Some('-') => {
                    let (e, c) = self.parse_term()?;
                    out.insert(e, -c);
                }
                Some(c) => return Err(Error::Parse(format!("unexpected {:?}", c))),
            }
        }
    }
}

/// Element of the tropical semifield on `y1..yn`: a single Laurent monomial
/// in the `y`s. Multiplication adds exponents; the auxiliary addition takes
/// componentwise minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalMonomial {
    yexp: Vec<i32>,
}

impl TropicalMonomial {
    pub fn one(rank: usize) -> Self {
        TropicalMonomial { yexp: vec![0; rank] }
    }

    /// The generator `y_{i+1}` (0-based slot).
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i < rank);
        let mut yexp = vec![0; rank];
        yexp[i] = 1;
        TropicalMonomial { yexp }
    }

    pub fn from_exponents(yexp: Vec<i32>) -> Self {
        TropicalMonomial { yexp }
    }

    pub fn rank(&self) -> usize {
        self.yexp.len()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.yexp
    }

    pub fn is_one(&self) -> bool {
        self.yexp.iter().all(|&e| e == 0)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.yexp.len() != other.yexp.len() {
            return Err(Error::RankMismatch(self.yexp.len(), other.yexp.len()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(TropicalMonomial {
            yexp: self
                .yexp
                .iter()
                .zip(&other.yexp)
                .map(|(&a, &b)| add_exp(a, b))
                .collect(),
        })
    }

    pub fn inv(&self) -> Self {
        TropicalMonomial {
            yexp: self
                .yexp
                .iter()
                .map(|&a| a.checked_neg().expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Self {
        TropicalMonomial {
            yexp: self
                .yexp
                .iter()
                .map(|&a| a.checked_mul(k).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Tropical addition: componentwise minimum of exponents.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(TropicalMonomial {
            yexp: self
                .yexp
                .iter()
                .zip(&other.yexp)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        })
    }

    /// Embed as a Laurent monomial with trivial x-part.
    pub fn to_laurent(&self) -> LaurentPoly {
        let rank = self.yexp.len();
        LaurentPoly::monomial(
            rank,
            ExponentVector::new(vec![0; rank], self.yexp.clone()),
            BigInt::one(),
        )
    }
}

impl fmt::Display for TropicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        for (i, &a) in self.yexp.iter().enumerate() {
            if a == 1 {
                factors.push(format!("y{}", i + 1));
            } else if a != 0 {
                factors.push(format!("y{}^{}", i + 1, a));
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rank: usize, s: &str) -> LaurentPoly {
        LaurentPoly::parse(rank, s).unwrap()
    }

    #[test]
    fn graded_lex_orders_by_degree_then_position() {
        let lo = ExponentVector::new(vec![-1, 0], vec![0; 2]);
        let hi = ExponentVector::new(vec![-1, 1], vec![0; 2]);
        assert!(lo < hi);
        // Equal total degree: the earlier slot decides.
        let a = ExponentVector::new(vec![0, 1], vec![0; 2]);
        let b = ExponentVector::new(vec![1, 0], vec![0; 2]);
        assert!(a < b);
    }

    #[test]
    fn addition_cancels_to_zero() {
        let a = p(2, "x1 + x2");
        let b = p(2, "-x1 - x2");
        assert!(a.add(&b).unwrap().is_zero());
    }

    #[test]
    fn product_of_binomials() {
        let a = p(1, "x1 + 1");
        let b = p(1, "x1 - 1");
        assert_eq!(a.mul(&b).unwrap(), p(1, "x1^2 - 1"));
    }

    #[test]
    fn rank_mismatch_rejected() {
        let a = LaurentPoly::one(2);
        let b = LaurentPoly::one(3);
        assert_eq!(a.add(&b), Err(Error::RankMismatch(2, 3)));
        assert_eq!(a.mul(&b), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn exact_division_of_difference_of_squares() {
        let num = p(1, "x1^2 - 1");
        let den = p(1, "x1 + 1");
        assert_eq!(num.div_exact(&den).unwrap(), p(1, "x1 - 1"));
    }

    #[test]
    fn inexact_division_detected() {
        let num = p(2, "x1 + x2");
        let den = p(2, "x1 + 1");
        assert!(matches!(
            num.div_exact(&den),
            Err(Error::InexactDivision(_))
        ));
    }

    #[test]
    fn division_handles_laurent_shifts() {
        // (x2 + 1) / x1 times x1 comes back unchanged.
        let q = p(2, "x1^-1*x2 + x1^-1");
        let x1 = LaurentPoly::variable(2, 0);
        assert_eq!(q.mul(&x1).unwrap().div_exact(&x1).unwrap(), q);
        assert_eq!(p(2, "x2 + 1").div_exact(&x1).unwrap(), q);
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = p(1, "x1");
        assert_eq!(a.div_exact(&LaurentPoly::zero(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn inexact_coefficient_detected() {
        let num = p(1, "3*x1");
        let den = p(1, "2");
        assert!(matches!(num.div_exact(&den), Err(Error::InexactDivision(_))));
    }

    #[test]
    fn min_x_exponents_of_expansion() {
        // (x2 + 1)/x1 has minimal x-exponents (-1, 0).
        let q = p(2, "x1^-1*x2 + x1^-1");
        assert_eq!(q.min_x_exponents().unwrap(), vec![-1, 0]);
        assert_eq!(
            LaurentPoly::zero(2).min_x_exponents(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn display_and_parse_round_trip() {
        let q = p(2, "2*x1^2*y1 - x2^-1 + 3");
        let text = q.to_string();
        assert_eq!(LaurentPoly::parse(2, &text).unwrap(), q);
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!(LaurentPoly::parse(2, "0").unwrap(), LaurentPoly::zero(2));
    }

    #[test]
    fn display_uses_descending_canonical_order() {
        let q = p(2, "x1^-1 + x1^-1*x2");
        assert_eq!(q.to_string(), "x1^-1*x2 + x1^-1");
    }

    #[test]
    fn tropical_oplus_is_componentwise_min() {
        // y1 (+) 1 = 1.
        let y1 = TropicalMonomial::generator(2, 0);
        assert!(y1.oplus(&TropicalMonomial::one(2)).unwrap().is_one());
        let a = TropicalMonomial::from_exponents(vec![1, -1]);
        let b = TropicalMonomial::from_exponents(vec![0, 1]);
        assert_eq!(
            a.oplus(&b).unwrap(),
            TropicalMonomial::from_exponents(vec![0, -1])
        );
    }

    #[test]
    fn tropical_group_laws() {
        let a = TropicalMonomial::from_exponents(vec![2, -3]);
        assert!(a.mul(&a.inv()).unwrap().is_one());
        assert_eq!(a.pow(-2), a.inv().mul(&a.inv()).unwrap());
    }

    #[test]
    fn canonical_comparison_separates_distinct_polys() {
        let a = p(2, "x1");
        let b = p(2, "x2");
        assert_eq!(a.cmp_canonical(&b), Ordering::Greater);
        assert_eq!(a.cmp_canonical(&a), Ordering::Equal);
    }
}
