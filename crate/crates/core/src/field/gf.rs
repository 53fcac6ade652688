use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth;

/// Fields up to this order get log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// An element of some [`FiniteField`], stored as the base-`p` integer
/// `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of its polynomial-basis
/// coordinates. Ordering by index is lexicographic in the coordinate vector
/// read from the highest coordinate down.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
struct Tables {
    // exp has length 2(order - 1) so log sums never need a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^m) in a polynomial basis over GF(p).
///
/// Immutable once built. Arithmetic goes through log/antilog tables when
/// the order is at most [`TABLE_LIMIT`], schoolbook polynomial products
/// otherwise.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    modulus_bits: u128,
    primitive: FieldElement,
    group_primes: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// GF(p^degree) with the smallest monic irreducible modulus.
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        check_size(p, degree)?;
        let modulus = smallest_irreducible(p, degree);
        Self::build(p, modulus)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = numth::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    /// GF(p^m) for an explicit monic modulus (constant term first).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let mut modulus: Vec<u64> = modulus.iter().map(|c| c % p.max(1)).collect();
        fp::trim(&mut modulus);
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Invalid("modulus must be monic of degree >= 1".into()));
        }
        check_size(p, (modulus.len() - 1) as u32)?;
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::Reducible(p));
        }
        Self::build(p, modulus)
    }

    fn build(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let degree = (modulus.len() - 1) as u32;
        let order = p.pow(degree);
        let modulus_bits = if p == 2 {
            modulus.iter().enumerate().map(|(i, &c)| (c as u128) << i).fold(0, |a, b| a | b)
        } else {
            0
        };
        let group_primes = numth::factorize(order - 1).into_iter().map(|(q, _)| q).collect();
        let mut field = FiniteField {
            p,
            degree,
            order,
            modulus,
            modulus_bits,
            primitive: FieldElement::ONE,
            group_primes,
            tables: None,
        };
        field.primitive = (1..order)
            .map(FieldElement)
            .find(|&a| field.multiplicative_order(a) == order - 1)
            .expect("the multiplicative group of a finite field is cyclic");
        if order <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.order as usize];
        let mut x = FieldElement::ONE;
        for i in 0..n {
            exp[i] = x.0 as u32;
            exp[i + n] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = self.mul_schoolbook(x, self.primitive);
        }
        Tables { exp, log }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus over GF(p), constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The designated primitive element: the smallest element of full
    /// multiplicative order.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order {
            return Err(Error::ElementOutOfRange { index, order: self.order });
        }
        Ok(FieldElement(index))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut x = a.0;
        for _ in 0..self.degree {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u64]) -> FieldElement {
        let mut idx = 0u64;
        for &c in coords.iter().take(self.degree as usize).rev() {
            idx = idx * self.p + c % self.p;
        }
        FieldElement(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(1..self.order))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let p = self.p;
        let (mut x, mut y, mut place, mut acc) = (a.0, b.0, 1u64, 0u64);
        while x > 0 || y > 0 {
            acc += (x % p + y % p) % p * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(acc)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let p = self.p;
        let (mut x, mut place, mut acc) = (a.0, 1u64, 0u64);
        while x > 0 {
            acc += (p - x % p) % p * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(acc)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(t.exp[s] as u64)
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let m = self.degree as usize;
        if m == 1 {
            return FieldElement(numth::mul_mod(a.0, b.0, self.p));
        }
        if self.p == 2 {
            let mut prod = 0u128;
            let mut y = b.0;
            let mut shift = 0;
            while y != 0 {
                if y & 1 == 1 {
                    prod ^= (a.0 as u128) << shift;
                }
                y >>= 1;
                shift += 1;
            }
            for i in (m..=2 * m - 2).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= self.modulus_bits << (i - m);
                }
            }
            return FieldElement(prod as u64);
        }
        let p = self.p;
        let da = self.coords(a);
        let db = self.coords(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            // x^m = -(m_0 + ... + m_{m-1} x^{m-1})
            for j in 0..m {
                prod[i - m + j] = (prod[i - m + j] + (p - c) * self.modulus[j] % p) % p;
            }
            prod[i] = 0;
        }
        self.from_coords(&prod[..m])
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            let l = numth::mul_mod(t.log[a.0 as usize] as u64, e % n, n);
            return FieldElement(t.exp[l as usize] as u64);
        }
        let mut acc = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Power with a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> FieldElement {
        let n = (self.order - 1) as i64;
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        self.pow(a, e.rem_euclid(n) as u64)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as usize;
                FieldElement(t.exp[(n - t.log[a.0 as usize] as usize) % n] as u64)
            }
            None => self.pow(a, self.order - 2),
        })
    }

    /// # Panics
    /// On division by zero.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    /// Discrete log to the primitive element base (table fields only).
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        match (&self.tables, a.0) {
            (_, 0) => None,
            (Some(t), _) => Some(t.log[a.0 as usize] as u64),
            (None, _) => None,
        }
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero(), "zero has no multiplicative order");
        let mut ord = self.order - 1;
        for &q in &self.group_primes {
            while ord.is_multiple_of(q) && self.pow_raw(a, ord / q) == FieldElement::ONE {
                ord /= q;
            }
        }
        ord
    }

    // square-and-multiply without tables; usable before tables exist
    fn pow_raw(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }

    /// `gamma^((order-1)/n)` for the designated primitive element `gamma`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 || !(self.order - 1).is_multiple_of(n) {
            return Err(Error::NoRootOfUnity { n, order: self.order });
        }
        Ok(self.pow(self.primitive, (self.order - 1) / n))
    }

    /// Elements of the unique subfield of order `p^d` (requires `d | degree`).
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<FieldElement>> {
        if d == 0 || !self.degree.is_multiple_of(d) {
            return Err(Error::IncompatibleFields(format!(
                "no subfield of degree {d} in GF({}^{})",
                self.p, self.degree
            )));
        }
        let sub_order = self.p.pow(d);
        let step = self.pow(self.primitive, (self.order - 1) / (sub_order - 1));
        let mut out = Vec::with_capacity(sub_order as usize);
        out.push(FieldElement::ZERO);
        let mut x = FieldElement::ONE;
        for _ in 0..sub_order - 1 {
            out.push(x);
            x = self.mul(x, step);
        }
        Ok(out)
    }
}

fn check_size(p: u64, degree: u32) -> Result<()> {
    if !numth::is_prime(p) {
        return Err(Error::NotPrimePower(p));
    }
    if degree == 0 {
        return Err(Error::Invalid("extension degree must be positive".into()));
    }
    match p.checked_pow(degree) {
        Some(q) if q < (1 << 63) && degree < 64 => Ok(()),
        _ => Err(Error::FieldTooLarge { p, degree }),
    }
}

fn smallest_irreducible(p: u64, degree: u32) -> Vec<u64> {
    if degree == 1 {
        return vec![0, 1];
    }
    let m = degree as usize;
    (1..p.pow(degree))
        .map(|idx| {
            let mut f: Vec<u64> = (0..m).map(|i| idx / p.pow(i as u32) % p).collect();
            f.push(1);
            f
        })
        .find(|f| f[0] != 0 && fp::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Dense polynomials over a prime field, used only for modulus selection.
pub(crate) mod fp {
    use crate::numth;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = numth::inv_mod(f[df], p).unwrap();
        while r.len() > df {
            let top = r.len() - 1;
            let c = numth::mul_mod(r[top], lead_inv, p);
            for (j, &fj) in f.iter().enumerate() {
                let idx = top - df + j;
                r[idx] = (r[idx] + p - numth::mul_mod(c, fj, p)) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + numth::mul_mod(x, y, p)) % p;
            }
        }
        rem(&prod, f, p)
    }

    pub fn pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's test.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut frob = Vec::with_capacity(m);
        let mut y = x.clone();
        for _ in 0..m {
            y = pow_mod(&y, p, f, p);
            frob.push(y.clone());
        }
        if frob[m - 1] != x {
            return false;
        }
        numth::factorize(m as u64).iter().all(|&(r, _)| {
            let d = sub(&frob[m / r as usize - 1], &x, p);
            gcd(f, &d, p).len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_field() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.primitive(), FieldElement(3));
        assert_eq!(f.mul(FieldElement(3), FieldElement(5)), FieldElement(1));
        assert_eq!(f.add(FieldElement(3), FieldElement(5)), FieldElement(1));
        assert_eq!(f.inv(FieldElement(3)), Some(FieldElement(5)));
        assert_eq!(f.from_int(-1), FieldElement(6));
    }

    #[test]
    fn gf256_uses_aes_modulus() {
        let f = FiniteField::new(2, 8).unwrap();
        // x^8 + x^4 + x^3 + x + 1 is the smallest irreducible octic over GF(2)
        assert_eq!(f.modulus(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
        // x is not primitive for this modulus; x + 1 is
        assert_eq!(f.primitive(), FieldElement(3));
        assert_eq!(f.mul(FieldElement(0x57), FieldElement(0x83)), FieldElement(0xc1));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(FiniteField::with_modulus(2, &[1, 0, 1]), Err(Error::Reducible(2)));
        // x^2 + 1 is irreducible over GF(3)
        assert!(FiniteField::with_modulus(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn table_and_schoolbook_agree() {
        for (p, m) in [(2u64, 6u32), (3, 4), (5, 2), (2, 1), (3, 1)] {
            let f = FiniteField::new(p, m).unwrap();
            assert!(f.has_tables());
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
                }
            }
        }
    }

    #[test]
    fn large_fields_are_fields() {
        let mut rng = rand::rng();
        for (p, m) in [(2u64, 24u32), (3, 15), (2, 40), (3, 30)] {
            let f = FiniteField::new(p, m).unwrap();
            assert!(!f.has_tables());
            assert_eq!(f.multiplicative_order(f.primitive()), f.order() - 1);
            for _ in 0..50 {
                let a = f.random_nonzero(&mut rng);
                let b = f.random(&mut rng);
                let c = f.random(&mut rng);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(b, f.neg(b)), FieldElement::ZERO);
                assert_eq!(f.pow(a, f.order() - 1), FieldElement::ONE);
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let f = FiniteField::new(3, 5).unwrap();
        for a in f.elements().step_by(7) {
            assert_eq!(f.from_coords(&f.coords(a)), a);
        }
    }

    #[test]
    fn roots_of_unity() {
        let f = FiniteField::new(2, 8).unwrap();
        let a = f.nth_root_of_unity(17).unwrap();
        assert_eq!(f.pow(a, 17), FieldElement::ONE);
        assert!((1..17).all(|i| f.pow(a, i) != FieldElement::ONE));
        assert_eq!(f.nth_root_of_unity(255).unwrap(), f.primitive());
        assert!(matches!(f.nth_root_of_unity(7), Err(Error::NoRootOfUnity { .. })));

        let g = FiniteField::new(3, 2).unwrap();
        let b = g.nth_root_of_unity(4).unwrap();
        assert_eq!(g.multiplicative_order(b), 4);
    }

    #[test]
    fn every_nonzero_element_is_a_root_of_x_q_minus_1() {
        for (p, m) in [(2u64, 5u32), (3, 3), (2, 21)] {
            let f = FiniteField::new(p, m).unwrap();
            let step = (f.order() / 5000).max(1) as usize;
            for a in f.elements().skip(1).step_by(step) {
                assert_eq!(f.pow(a, f.order() - 1), FieldElement::ONE);
            }
        }
    }
}
