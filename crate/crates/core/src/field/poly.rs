use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gf::{FieldElement, FiniteField};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// True when `self <= d` for an integer bound (which may be negative).
    pub fn at_most(self, d: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(x) => (x as i64) <= d,
        }
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense polynomial, constant term first, with no trailing zeros.
///
/// The owning field is not stored; every arithmetic operation takes it
/// explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(Vec<FieldElement>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![FieldElement::ONE])
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![FieldElement::ZERO; k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn x() -> Self {
        Self::monomial(FieldElement::ONE, 1)
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Integer coefficients (constant first) mapped into the prime subfield.
    pub fn from_ints(field: &FiniteField, coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.0
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.0.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.0.len() {
            0 => Degree::NegInfinity,
            l => Degree::Finite(l - 1),
        }
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> FieldElement {
        self.0.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &FiniteField) -> Poly {
        let n = self.len().max(other.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FiniteField) -> Poly {
        let n = self.len().max(other.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FiniteField) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, f: &FiniteField) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FiniteField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// `self * x^k`
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![FieldElement::ZERO; k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    /// `self mod x^k`
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::new(self.0.iter().take(k).copied().collect())
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    /// If `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly, f: &FiniteField) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.len() - 1;
        if self.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = f.inv(divisor.leading()).unwrap();
        let mut rem = self.0.clone();
        let mut quot = vec![FieldElement::ZERO; self.len() - dd];
        for i in (dd..self.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            for (j, &d) in divisor.0.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(q, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &FiniteField) -> Poly {
        self.div_rem(divisor, f).1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement, f: &FiniteField) -> FieldElement {
        self.0.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Formal derivative; the coefficient `i * c_i` is taken in characteristic p.
    pub fn derivative(&self, f: &FiniteField) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
                .collect(),
        )
    }

    /// `p(c x)`
    pub fn scale_argument(&self, c: FieldElement, f: &FiniteField) -> Poly {
        let mut pw = FieldElement::ONE;
        let mut out = Vec::with_capacity(self.len());
        for &a in &self.0 {
            out.push(f.mul(a, pw));
            pw = f.mul(pw, c);
        }
        Poly::new(out)
    }

    pub fn monic(&self, f: &FiniteField) -> Poly {
        match f.inv(self.leading()) {
            Some(inv) => self.scale(inv, f),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly, f: &FiniteField) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Maps every coefficient through `map` (e.g. a field embedding).
    pub fn map(&self, map: impl Fn(FieldElement) -> FieldElement) -> Poly {
        Poly::new(self.0.iter().map(|&c| map(c)).collect())
    }

    /// Coefficients as integer indices, for display and serialization.
    pub fn indices(&self) -> Vec<u64> {
        self.0.iter().map(|c| c.index()).collect()
    }

    /// Human-readable form over a prime field, e.g. `x^2 + 2x + 1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            let c = c.index();
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        terms.join(" + ")
    }
}

/// One Euclidean step: `rem = u * a + w * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EeaStep {
    pub rem: Poly,
    pub u: Poly,
    pub w: Poly,
}

/// Every remainder of the Euclidean algorithm on `(a, b)` with its Bezout
/// cofactors, starting with the remainder of the first division and ending
/// with the zero remainder.
pub fn eea_steps(a: &Poly, b: &Poly, f: &FiniteField) -> Vec<EeaStep> {
    let mut prev = EeaStep { rem: a.clone(), u: Poly::one(), w: Poly::zero() };
    let mut cur = EeaStep { rem: b.clone(), u: Poly::zero(), w: Poly::one() };
    let mut out = Vec::new();
    while !cur.rem.is_zero() {
        let (q, r) = prev.rem.div_rem(&cur.rem, f);
        let next = EeaStep {
            rem: r,
            u: prev.u.sub(&q.mul(&cur.u, f), f),
            w: prev.w.sub(&q.mul(&cur.w, f), f),
        };
        out.push(next.clone());
        prev = cur;
        cur = next;
    }
    out
}

/// Runs the Euclidean algorithm on `(a, b)` and returns the first step whose
/// remainder has degree at most `stop_degree`. If none does before the
/// remainder vanishes, the zero-remainder step is returned. When `b` is zero
/// the trivial step `(a, 1, 0)` is returned.
pub fn poly_eea(a: &Poly, b: &Poly, stop_degree: i64, f: &FiniteField) -> EeaStep {
    let mut prev = EeaStep { rem: a.clone(), u: Poly::one(), w: Poly::zero() };
    let mut cur = EeaStep { rem: b.clone(), u: Poly::zero(), w: Poly::one() };
    if b.is_zero() {
        return prev;
    }
    loop {
        let (q, r) = prev.rem.div_rem(&cur.rem, f);
        let next = EeaStep {
            rem: r,
            u: prev.u.sub(&q.mul(&cur.u, f), f),
            w: prev.w.sub(&q.mul(&cur.w, f), f),
        };
        if next.rem.degree().at_most(stop_degree) || next.rem.is_zero() {
            return next;
        }
        prev = cur;
        cur = next;
    }
}

/// All distinct roots of `p` in `field`, by exhaustive evaluation, in
/// increasing index order.
pub fn poly_roots(p: &Poly, field: &FiniteField) -> Vec<FieldElement> {
    assert!(!p.is_zero(), "the zero polynomial has every element as a root");
    if p.degree() == Degree::Finite(0) {
        return Vec::new();
    }
    field.elements().filter(|&x| p.eval(x, field).is_zero()).collect()
}

/// Compares degrees of two polynomials.
pub fn cmp_degree(a: &Poly, b: &Poly) -> Ordering {
    a.degree().cmp(&b.degree())
}
