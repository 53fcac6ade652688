//! Power series of rational functions `h(x)/f(x)`, their periods, and the
//! registry of candidate fractions used by the rational bound.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::CodeFamily;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, Poly};
use crate::numth;

/// Above this length the pairwise root-disjointness cross-check is skipped.
pub const CROSS_CHECK_MAX_N: u64 = 64;

/// First `len` coefficients of the power series `h/f`.
pub fn expand_series(h: &Poly, f: &Poly, len: usize, field: &FiniteField) -> Result<Vec<FieldElement>> {
    let f0_inv = field.inv(f.coeff(0)).ok_or(Error::NoPowerSeries)?;
    let mut a: Vec<FieldElement> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = h.coeff(j);
        for i in 1..f.len().min(j + 1) {
            acc = field.sub(acc, field.mul(f.coeff(i), a[j - i]));
        }
        a.push(field.mul(acc, f0_inv));
    }
    Ok(a)
}

/// Smallest `p >= 1` with `f | h (1 - x^p)`; the series of `h/f` is then
/// purely periodic with period `p`.
pub fn series_period(h: &Poly, f: &Poly, field: &FiniteField) -> Result<u64> {
    if f.coeff(0).is_zero() {
        return Err(Error::NoPowerSeries);
    }
    let g = h.gcd(f, field);
    let reduced = if g.is_zero() { f.clone() } else { f.div_rem(&g, field).0 };
    if reduced.len() <= 1 {
        return Ok(1);
    }
    // order of x modulo the reduced denominator, bounded by q^u - 1
    let u = (reduced.len() - 1) as u32;
    let bound = field.order().checked_pow(u).unwrap_or(u64::MAX);
    let x = Poly::x();
    let mut pw = x.rem(&reduced, field);
    for p in 1..=bound {
        if pw == Poly::one() {
            return Ok(p);
        }
        pw = pw.mul(&x, field).rem(&reduced, field);
    }
    Err(Error::Consistency("no period found below q^u".into()))
}

/// Numerator whose series is that of `1/f` advanced by `t` places, i.e.
/// with coefficients `b_j = a_{j+t}`. Equals `(1 - f * P_t) / x^t`, where
/// `P_t` is the first `t` terms of `1/f`.
pub fn shift_numerator(f: &Poly, t: usize, field: &FiniteField) -> Result<Poly> {
    let prefix = Poly::new(expand_series(&Poly::one(), f, t, field)?);
    let rest = Poly::one().sub(&f.mul(&prefix, field), field);
    debug_assert!(rest.coeffs().iter().take(t).all(|c| c.is_zero()));
    Ok(Poly::new(rest.coeffs().iter().skip(t).copied().collect()))
}

/// A fraction `h/f` instantiated over GF(q) together with one period of
/// its power series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCandidate {
    pub label: String,
    pub q: u64,
    pub h: Poly,
    pub f: Poly,
    pub period: u64,
    /// `a_0 .. a_{period-1}`.
    pub a: Vec<FieldElement>,
    /// `deg f`
    pub u: usize,
    /// `deg h`, zero for `h = 0` (never admitted)
    pub v: usize,
}

impl RationalCandidate {
    /// Checks the degree, coprimality and `f(0) != 0` conditions and
    /// computes the period.
    pub fn new(label: impl Into<String>, h: Poly, f: Poly, field: &FiniteField) -> Result<Self> {
        let label = label.into();
        let reject = |reason: &str| Error::Invalid(format!("candidate {label}: {reason}"));
        if h.is_zero() {
            return Err(reject("numerator is zero"));
        }
        if f.len() < 2 {
            return Err(reject("denominator must have positive degree"));
        }
        if f.coeff(0).is_zero() {
            return Err(reject("denominator vanishes at zero"));
        }
        if h.len() >= f.len() {
            return Err(reject("numerator degree must be below denominator degree"));
        }
        if h.gcd(&f, field).len() != 1 {
            return Err(reject("numerator and denominator share a factor"));
        }
        let period = series_period(&h, &f, field)?;
        let a = expand_series(&h, &f, period as usize, field)?;
        let (u, v) = (f.len() - 1, h.len() - 1);
        Ok(RationalCandidate { label, q: field.order(), h, f, period, a, u, v })
    }

    /// `h = 1, f = 1 - x`: all-ones series, period 1. Reproduces the BCH bound.
    pub fn bch(field: &FiniteField) -> Self {
        Self::new("bch", Poly::one(), Poly::from_ints(field, &[1, -1]), field).expect("1/(1-x) is admissible")
    }

    pub fn coeff(&self, j: u64) -> FieldElement {
        self.a[(j % self.period) as usize]
    }

    pub fn is_bch(&self) -> bool {
        self.u == 1 && self.period == 1
    }

    /// Coefficients as integer indices (`a` with `-1` shown as `q - 1`).
    pub fn a_indices(&self) -> Vec<u64> {
        self.a.iter().map(|c| c.index()).collect()
    }
}

impl fmt::Display for RationalCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [({})/({}), period {}]", self.label, self.h.pretty(), self.f.pretty(), self.period)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Rejected(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Checks that `cand` may be used at length `n`: the period must be coprime
/// to `n`. For `n <= 64` the consequence that no two `f(alpha^i x)` share a
/// root is verified directly as well.
pub fn validate_candidate(n: u64, cand: &RationalCandidate) -> Validity {
    match CodeFamily::new(n, cand.q) {
        Ok(fam) => validate_in_family(&fam, cand),
        Err(e) => Validity::Rejected(e.to_string()),
    }
}

pub fn validate_in_family(family: &CodeFamily, cand: &RationalCandidate) -> Validity {
    let n = family.n();
    if cand.q != family.q() {
        return Validity::Rejected(format!("candidate is over GF({}), code over GF({})", cand.q, family.q()));
    }
    if numth::gcd(n, cand.period) != 1 {
        return Validity::Rejected(format!("period {} is not coprime to n = {n}", cand.period));
    }
    if n <= CROSS_CHECK_MAX_N && !cand.is_bch() {
        let ext = family.ext();
        let f = family.embedding().apply_poly(&cand.f);
        let scaled: Vec<Poly> = (0..n as i64).map(|i| f.scale_argument(family.alpha_pow(i), ext)).collect();
        for i in 0..scaled.len() {
            for j in i + 1..scaled.len() {
                if scaled[i].gcd(&scaled[j], ext).len() != 1 {
                    return Validity::Rejected(format!("f(alpha^{i} x) and f(alpha^{j} x) share a root"));
                }
            }
        }
    }
    Validity::Valid
}

/// One registry line before instantiation: integer coefficient lists,
/// constant term first. `q = None` applies to every alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub label: String,
    pub q: Option<u64>,
    pub h: Vec<i64>,
    pub f: Vec<i64>,
}

/// Registry line that could not be used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejected {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for Rejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

/// Ordered list of candidate fractions. The BCH fraction is always first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

fn bch_entry() -> RegistryEntry {
    RegistryEntry { label: "bch".into(), q: None, h: vec![1], f: vec![1, -1] }
}

/// `1/(1+x+x^2)` and its shifts: series `(1 -1 0)` rotated.
fn period3_family() -> Vec<RegistryEntry> {
    let f = vec![1, 1, 1];
    [("p3.0", vec![1]), ("p3.1", vec![-1, -1]), ("p3.2", vec![0, 1])]
        .into_iter()
        .map(|(l, h)| RegistryEntry { label: l.into(), q: None, h, f: f.clone() })
        .collect()
}

/// `1/(1+x+x^2+x^3)` and its shifts: series `(1 -1 0 0)` rotated.
fn period4_family() -> Vec<RegistryEntry> {
    let f = vec![1, 1, 1, 1];
    [("p4.0", vec![1]), ("p4.3", vec![0, 1]), ("p4.2", vec![0, 0, 1]), ("p4.1", vec![-1, -1, -1])]
        .into_iter()
        .map(|(l, h)| RegistryEntry { label: l.into(), q: None, h, f: f.clone() })
        .collect()
}

/// Every cyclic advance of `1/f` over GF(2).
fn binary_shift_family(prefix: &str, f: &[i64]) -> Vec<RegistryEntry> {
    let gf2 = FiniteField::new(2, 1).unwrap();
    let fp = Poly::from_ints(&gf2, f);
    let period = series_period(&Poly::one(), &fp, &gf2).unwrap();
    (0..period as usize)
        .map(|t| {
            let h = shift_numerator(&fp, t, &gf2).unwrap();
            RegistryEntry {
                label: format!("{prefix}.{t}"),
                q: Some(2),
                h: h.indices().into_iter().map(|c| c as i64).collect(),
                f: f.to_vec(),
            }
        })
        .collect()
}

impl Registry {
    /// BCH plus the period-3 and period-4 families for every alphabet and,
    /// over GF(2), all shifts of `1/(1+x+x^3)` and `1/(1+x+x^4)`.
    pub fn builtin() -> Self {
        let mut entries = vec![bch_entry()];
        entries.extend(period3_family());
        entries.extend(period4_family());
        entries.extend(binary_shift_family("p7", &[1, 1, 0, 1]));
        entries.extend(binary_shift_family("p15", &[1, 1, 0, 0, 1]));
        Registry { entries }
    }

    /// BCH plus the period-3 and period-4 families only; the fractions the
    /// length statistics in `harness::tabulate` use.
    pub fn tabulation() -> Self {
        let mut entries = vec![bch_entry()];
        entries.extend(period3_family());
        entries.extend(period4_family());
        Registry { entries }
    }

    /// Just the BCH fraction.
    pub fn bch_only() -> Self {
        Registry { entries: vec![bch_entry()] }
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    /// Parses the line format `q=<int> f=<c0,c1,...> h=<c0,c1,...>` with an
    /// optional `label=<name>`. Blank lines and `#` comments are skipped.
    /// Lines that fail to parse or describe an inadmissible fraction are
    /// returned with their 1-based line numbers. The BCH fraction is
    /// prepended.
    pub fn parse(text: &str) -> (Self, Vec<Rejected>) {
        let mut entries = vec![bch_entry()];
        let mut rejected = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            match parse_line(line, i + 1) {
                Ok(e) => entries.push(e),
                Err(reason) => rejected.push(Rejected { line: i + 1, reason }),
            }
        }
        (Registry { entries }, rejected)
    }

    /// Instantiates every entry applicable to GF(q).
    pub fn instantiate(&self, field: &FiniteField) -> Result<Vec<RationalCandidate>> {
        self.entries
            .iter()
            .filter(|e| e.q.is_none_or(|q| q == field.order()))
            .map(|e| {
                RationalCandidate::new(e.label.clone(), Poly::from_ints(field, &e.h), Poly::from_ints(field, &e.f), field)
            })
            .collect()
    }

    /// Instantiates for the family's alphabet and keeps the candidates that
    /// are valid at its length.
    pub fn prepare(&self, family: &Arc<CodeFamily>) -> Result<PreparedRegistry> {
        let mut valid = Vec::new();
        let mut rejected = Vec::new();
        for cand in self.instantiate(family.base())? {
            match validate_in_family(family, &cand) {
                Validity::Valid => valid.push(cand),
                Validity::Rejected(r) => rejected.push((cand.label.clone(), r)),
            }
        }
        Ok(PreparedRegistry { family: family.clone(), candidates: valid, rejected })
    }
}

fn parse_line(line: &str, lineno: usize) -> std::result::Result<RegistryEntry, String> {
    let (mut q, mut f, mut h, mut label) = (None, None, None, None);
    let ints = |v: &str| -> std::result::Result<Vec<i64>, String> {
        v.split(',').map(|c| c.trim().parse::<i64>().map_err(|_| format!("bad coefficient `{c}`"))).collect()
    };
    for tok in line.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("expected key=value, got `{tok}`"))?;
        match k {
            "q" => q = Some(v.parse::<u64>().map_err(|_| format!("bad alphabet size `{v}`"))?),
            "f" => f = Some(ints(v)?),
            "h" => h = Some(ints(v)?),
            "label" => label = Some(v.to_string()),
            _ => return Err(format!("unknown key `{k}`")),
        }
    }
    let q = q.ok_or("missing q=")?;
    let f = f.ok_or("missing f=")?;
    let h = h.ok_or("missing h=")?;
    let field = FiniteField::of_order(q).map_err(|e| e.to_string())?;
    RationalCandidate::new("", Poly::from_ints(&field, &h), Poly::from_ints(&field, &f), &field)
        .map_err(|e| e.to_string().replace("candidate : ", ""))?;
    Ok(RegistryEntry { label: label.unwrap_or_else(|| format!("line{lineno}")), q: Some(q), h, f })
}

/// Registry instantiated and validated for one length and alphabet.
#[derive(Clone, Debug)]
pub struct PreparedRegistry {
    family: Arc<CodeFamily>,
    candidates: Vec<RationalCandidate>,
    rejected: Vec<(String, String)>,
}

impl PreparedRegistry {
    pub fn family(&self) -> &Arc<CodeFamily> {
        &self.family
    }

    /// Valid candidates in registry order.
    pub fn candidates(&self) -> &[RationalCandidate] {
        &self.candidates
    }

    /// `(label, reason)` for each candidate invalid at this length.
    pub fn rejected(&self) -> &[(String, String)] {
        &self.rejected
    }

    /// The BCH candidate plus the first non-BCH family, in registry order,
    /// with at least one valid candidate. Families are label prefixes up to
    /// the first `.`.
    pub fn first_family(&self) -> PreparedRegistry {
        let first = self.candidates.iter().find(|c| !c.is_bch()).map(|c| family_of(&c.label).to_string());
        let candidates = self
            .candidates
            .iter()
            .filter(|c| c.is_bch() || first.as_deref() == Some(family_of(&c.label)))
            .cloned()
            .collect();
        PreparedRegistry { family: self.family.clone(), candidates, rejected: self.rejected.clone() }
    }
}

/// Family part of a candidate label: `p3.1` belongs to `p3`.
pub fn family_of(label: &str) -> &str {
    label.split('.').next().unwrap_or(label)
}
