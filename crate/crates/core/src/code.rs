//! Cyclotomic cosets, defining sets, generator polynomials and the
//! enumeration of all cyclic codes of a given length.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{minimal_splitting_degree, Embedding, FieldElement, FiniteField, Poly};
use crate::numth;

/// Orbit of `rep` under multiplication by `q` modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub n: u64,
    pub q: u64,
    pub rep: u64,
    /// Members in orbit order `rep, rep*q, rep*q^2, ...`.
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.contains(&(i % self.n))
    }

    pub fn smallest(&self) -> u64 {
        *self.members.iter().min().unwrap()
    }
}

pub fn cyclotomic_coset(n: u64, q: u64, r: u64) -> CyclotomicCoset {
    assert!(n > 0, "length must be positive");
    let rep = r % n;
    let mut members = vec![rep];
    let mut x = numth::mul_mod(rep, q, n);
    while x != rep {
        members.push(x);
        x = numth::mul_mod(x, q, n);
    }
    CyclotomicCoset { n, q, rep, members }
}

/// All cyclotomic cosets modulo `n`, ordered by their smallest member,
/// each represented by that smallest member.
pub fn all_cosets(n: u64, q: u64) -> Vec<CyclotomicCoset> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for r in 0..n {
        if !seen[r as usize] {
            let c = cyclotomic_coset(n, q, r);
            for &m in &c.members {
                seen[m as usize] = true;
            }
            out.push(c);
        }
    }
    out
}

/// Smallest `m >= 1` with `n | q^m + 1`, if any.
pub fn symmetric_reversible_exponent(n: u64, q: u64) -> Option<u64> {
    let ord = numth::multiplicative_order(q, n)?;
    (1..=ord).find(|&m| (numth::pow_mod(q, m, n) + 1).is_multiple_of(n))
}

pub fn is_symmetric_reversible_length(n: u64, q: u64) -> bool {
    symmetric_reversible_exponent(n, q).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reversibility {
    NotReversible,
    Reversible,
    /// Every coset union of this length is reversible.
    SymmetricReversibleLength,
}

impl fmt::Display for Reversibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reversibility::NotReversible => "not reversible",
            Reversibility::Reversible => "reversible",
            Reversibility::SymmetricReversibleLength => "symmetric reversible",
        })
    }
}

/// Residue set of a code plus its coset representatives. Enough for every
/// bound; no generator polynomial needed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefiningSet {
    n: u64,
    q: u64,
    members: Vec<bool>,
    reps: Vec<u64>,
}

impl DefiningSet {
    /// Union of the cosets of the given representatives (any integers,
    /// reduced modulo `n`).
    pub fn from_reps(n: u64, q: u64, reps: &[i64]) -> Result<Self> {
        check_length(n, q)?;
        let mut members = vec![false; n as usize];
        for &r in reps {
            for m in cyclotomic_coset(n, q, r.rem_euclid(n as i64) as u64).members {
                members[m as usize] = true;
            }
        }
        Ok(Self::from_members(n, q, members))
    }

    /// Checks that the residues form a union of cosets.
    pub fn from_residues(n: u64, q: u64, residues: &[i64]) -> Result<Self> {
        check_length(n, q)?;
        let mut members = vec![false; n as usize];
        for &r in residues {
            members[r.rem_euclid(n as i64) as usize] = true;
        }
        for i in 0..n {
            if members[i as usize] && !members[numth::mul_mod(i, q, n) as usize] {
                return Err(Error::Invalid(format!(
                    "residue set is not a union of cyclotomic cosets: {i} present, {} missing",
                    numth::mul_mod(i, q, n)
                )));
            }
        }
        Ok(Self::from_members(n, q, members))
    }

    fn from_members(n: u64, q: u64, members: Vec<bool>) -> Self {
        let reps = all_cosets(n, q)
            .into_iter()
            .filter(|c| members[c.rep as usize])
            .map(|c| c.rep)
            .collect();
        DefiningSet { n, q, members, reps }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn contains(&self, i: i64) -> bool {
        self.members[i.rem_euclid(self.n as i64) as usize]
    }

    pub fn membership(&self) -> &[bool] {
        &self.members
    }

    /// Sorted residues.
    pub fn residues(&self) -> Vec<u64> {
        (0..self.n).filter(|&i| self.members[i as usize]).collect()
    }

    /// Smallest member of each coset, ascending.
    pub fn reps(&self) -> &[u64] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Dimension of the code with this defining set.
    pub fn dimension(&self) -> u64 {
        self.n - self.len() as u64
    }

    pub fn is_reversible(&self) -> bool {
        (0..self.n as i64).all(|i| !self.contains(i) || self.contains(-i))
    }

    pub fn classify_reversible(&self) -> Reversibility {
        if is_symmetric_reversible_length(self.n, self.q) {
            Reversibility::SymmetricReversibleLength
        } else if self.is_reversible() {
            Reversibility::Reversible
        } else {
            Reversibility::NotReversible
        }
    }
}

fn check_length(n: u64, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("length must be positive".into()));
    }
    if numth::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if numth::gcd(n, q) != 1 {
        return Err(Error::LengthSharesFactor { n, q });
    }
    Ok(())
}

/// Shared setup for all cyclic codes of length `n` over GF(q): the base
/// field, the extension GF(q^s) holding the `n`-th roots of unity, the
/// chosen root `alpha`, the cosets and their minimal polynomials.
#[derive(Debug)]
pub struct CodeFamily {
    n: u64,
    q: u64,
    s: u32,
    base: Arc<FiniteField>,
    ext: Arc<FiniteField>,
    embed: Embedding,
    alpha: FieldElement,
    cosets: Vec<CyclotomicCoset>,
    minimal_polys: Vec<Poly>,
}

impl CodeFamily {
    pub fn new(n: u64, q: u64) -> Result<Arc<Self>> {
        check_length(n, q)?;
        let (p, e) = numth::prime_power(q).unwrap();
        let s = minimal_splitting_degree(n, q)?;
        let base = Arc::new(FiniteField::new(p, e)?);
        let ext = Arc::new(FiniteField::new(p, e * s)?);
        let embed = Embedding::new(base.clone(), ext.clone())?;
        let alpha = ext.nth_root_of_unity(n)?;
        let cosets = all_cosets(n, q);
        let minimal_polys = cosets
            .iter()
            .map(|c| minimal_polynomial_with(c, alpha, &embed))
            .collect::<Result<_>>()?;
        Ok(Arc::new(CodeFamily { n, q, s, base, ext, embed, alpha, cosets, minimal_polys }))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree of GF(q^s) over GF(q).
    pub fn s(&self) -> u32 {
        self.s
    }

    /// GF(q).
    pub fn base(&self) -> &Arc<FiniteField> {
        &self.base
    }

    /// GF(q^s).
    pub fn ext(&self) -> &Arc<FiniteField> {
        &self.ext
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embed
    }

    /// The primitive `n`-th root of unity used for all codes of the family.
    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// `alpha^i` for any integer `i`.
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        self.ext.pow(self.alpha, i.rem_euclid(self.n as i64) as u64)
    }

    pub fn cosets(&self) -> &[CyclotomicCoset] {
        &self.cosets
    }

    pub fn minimal_polynomials(&self) -> &[Poly] {
        &self.minimal_polys
    }

    pub fn code_count(&self) -> u128 {
        1u128 << self.cosets.len()
    }

    /// Code whose defining set is the union of the cosets at the given
    /// positions of [`Self::cosets`].
    pub fn code_from_indices(self: &Arc<Self>, indices: &[usize]) -> CyclicCode {
        let mut sel = vec![false; self.cosets.len()];
        for &i in indices {
            sel[i] = true;
        }
        let mut members = vec![false; self.n as usize];
        let mut g = Poly::one();
        let mut reps = Vec::new();
        for (i, c) in self.cosets.iter().enumerate() {
            if sel[i] {
                for &m in &c.members {
                    members[m as usize] = true;
                }
                g = g.mul(&self.minimal_polys[i], &self.base);
                reps.push(c.rep);
            }
        }
        let defining = DefiningSet { n: self.n, q: self.q, members, reps };
        let k = self.n - (g.len() as u64 - 1);
        CyclicCode { family: self.clone(), selection: sel, defining, generator: g, k }
    }

    /// Code number `mask`: bit `i` selects the `i`-th coset.
    pub fn code_at(self: &Arc<Self>, mask: u128) -> CyclicCode {
        let idx: Vec<usize> = (0..self.cosets.len()).filter(|&i| (mask >> i) & 1 == 1).collect();
        self.code_from_indices(&idx)
    }

    pub fn build(self: &Arc<Self>, reps: &[i64]) -> CyclicCode {
        let mut idx: Vec<usize> = reps
            .iter()
            .map(|&r| {
                let r = r.rem_euclid(self.n as i64) as u64;
                self.cosets.iter().position(|c| c.contains(r)).unwrap()
            })
            .collect();
        idx.sort_unstable();
        idx.dedup();
        self.code_from_indices(&idx)
    }

    /// All `2^(number of cosets)` codes in increasing mask order.
    ///
    /// # Panics
    /// If there are 128 cosets or more.
    pub fn enumerate(self: &Arc<Self>) -> impl Iterator<Item = CyclicCode> + '_ {
        assert!(self.cosets.len() < 128, "too many cosets to enumerate");
        (0..self.code_count()).map(move |m| self.code_at(m))
    }

    /// `word(alpha^i)` for a word over GF(q).
    pub fn eval_at_power(&self, word: &[FieldElement], i: i64) -> FieldElement {
        let x = self.alpha_pow(i);
        word.iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.ext.add(self.ext.mul(acc, x), self.embed.apply(c)))
    }
}

/// `prod_{i in coset} (x - alpha^i)`, checked to lie over GF(q).
pub fn minimal_polynomial(coset: &CyclotomicCoset, family: &CodeFamily) -> Result<Poly> {
    minimal_polynomial_with(coset, family.alpha, &family.embed)
}

fn minimal_polynomial_with(coset: &CyclotomicCoset, alpha: FieldElement, embed: &Embedding) -> Result<Poly> {
    let ext = embed.big();
    let mut m = Poly::one();
    for &i in &coset.members {
        let root = ext.pow(alpha, i);
        m = m.mul(&Poly::new(vec![ext.neg(root), FieldElement::ONE]), ext);
    }
    let coeffs = m
        .coeffs()
        .iter()
        .map(|&c| {
            embed.preimage(c).ok_or_else(|| {
                Error::Consistency(format!("minimal polynomial of coset {} not over GF({})", coset.rep, coset.q))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// A q-ary cyclic code of length `n` given by a union of cyclotomic cosets.
#[derive(Clone, Debug)]
pub struct CyclicCode {
    family: Arc<CodeFamily>,
    selection: Vec<bool>,
    defining: DefiningSet,
    generator: Poly,
    k: u64,
}

impl CyclicCode {
    pub fn new(n: u64, q: u64, reps: &[i64]) -> Result<Self> {
        Ok(CodeFamily::new(n, q)?.build(reps))
    }

    pub fn from_spec(spec: &CodeSpec) -> Result<Self> {
        Self::new(spec.n, spec.q, &spec.cosets)
    }

    pub fn family(&self) -> &Arc<CodeFamily> {
        &self.family
    }

    pub fn n(&self) -> u64 {
        self.family.n
    }

    pub fn q(&self) -> u64 {
        self.family.q
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.family.base
    }

    /// Generator polynomial over GF(q).
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining
    }

    /// Bit `i` set when the `i`-th coset of the family is selected.
    pub fn mask(&self) -> u128 {
        self.selection.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| 1u128 << i).sum()
    }

    pub fn classify_reversible(&self) -> Reversibility {
        self.defining.classify_reversible()
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec { q: self.q(), n: self.n(), cosets: self.defining.reps.iter().map(|&r| r as i64).collect() }
    }

    /// Codeword `m(x) g(x)` for a message of length `k`.
    pub fn encode(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len() as u64, self.k, "message length must equal the dimension");
        let c = Poly::new(message.to_vec()).mul(&self.generator, &self.family.base);
        let mut word = c.into_coeffs();
        word.resize(self.n() as usize, FieldElement::ZERO);
        word
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> bool {
        word.len() as u64 == self.n()
            && word.iter().all(|c| c.index() < self.q())
            && Poly::new(word.to_vec()).rem(&self.generator, &self.family.base).is_zero()
    }

    /// Rows `x^i g(x)`, `i < k`, each of length `n`.
    pub fn generator_matrix(&self) -> Vec<Vec<FieldElement>> {
        (0..self.k as usize)
            .map(|i| {
                let mut row = vec![FieldElement::ZERO; self.n() as usize];
                for (j, &c) in self.generator.coeffs().iter().enumerate() {
                    row[i + j] = c;
                }
                row
            })
            .collect()
    }
}

/// Textual code description `q=<int> n=<int> cosets=<r1,r2,...>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q: u64,
    pub n: u64,
    pub cosets: Vec<i64>,
}

impl CodeSpec {
    /// Parses `key=value` tokens; unknown keys are an error naming the token.
    pub fn from_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let (mut q, mut n, mut cosets) = (None, None, None);
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
            let bad = || Error::Parse(format!("malformed value in `{tok}`"));
            match key {
                "q" => q = Some(value.parse::<u64>().map_err(|_| bad())?),
                "n" => n = Some(value.parse::<u64>().map_err(|_| bad())?),
                "cosets" => {
                    cosets = Some(if value.trim().is_empty() {
                        Vec::new()
                    } else {
                        value
                            .split(',')
                            .map(|v| v.trim().parse::<i64>().map_err(|_| bad()))
                            .collect::<Result<Vec<_>>>()?
                    })
                }
                _ => return Err(Error::Parse(format!("unknown key in `{tok}`"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing `{k}=`"));
        let spec = CodeSpec { q: q.ok_or_else(|| missing("q"))?, n: n.ok_or_else(|| missing("n"))?, cosets: cosets.unwrap_or_default() };
        if spec.n == 0 {
            return Err(Error::Parse("malformed value in `n=0`: length must be positive".into()));
        }
        Ok(spec)
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_tokens(s.split_whitespace())
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.cosets.iter().map(|c| c.to_string()).collect();
        write!(f, "q={} n={} cosets={}", self.q, self.n, cs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_coset(17, 2, 1).members, vec![1, 2, 4, 8, 16, 15, 13, 9]);
        assert_eq!(cyclotomic_coset(9, 2, 0).members, vec![0]);
        assert_eq!(cyclotomic_coset(15, 2, 3).members, vec![3, 6, 12, 9]);
    }

    #[test]
    fn minimal_polynomials_of_length_15() {
        let fam = CodeFamily::new(15, 2).unwrap();
        let f2 = fam.base().clone();
        assert_eq!(fam.minimal_polynomials()[0], Poly::from_ints(&f2, &[1, 1]));
        let m1 = &fam.minimal_polynomials()[1];
        let a = Poly::from_ints(&f2, &[1, 1, 0, 0, 1]);
        let b = Poly::from_ints(&f2, &[1, 0, 0, 1, 1]);
        assert!(*m1 == a || *m1 == b);
        // exhaustive oracle: the irreducible quartic factors of x^15 - 1
        let mut x15 = vec![0i64; 16];
        x15[0] = 1;
        x15[15] = 1;
        let x15 = Poly::from_ints(&f2, &x15);
        assert!(x15.rem(m1, &f2).is_zero());
    }

    #[test]
    fn minimal_polynomial_degrees_equal_coset_sizes() {
        let fam = CodeFamily::new(17, 2).unwrap();
        for (c, m) in fam.cosets().iter().zip(fam.minimal_polynomials()) {
            assert_eq!(m.len() - 1, c.len());
        }
    }

    #[test]
    fn build_examples() {
        let c = CyclicCode::new(17, 2, &[1]).unwrap();
        assert_eq!((c.k(), c.generator().len() - 1), (9, 8));
        let c = CyclicCode::new(17, 2, &[]).unwrap();
        assert_eq!((c.k(), c.generator().clone()), (17, Poly::one()));
        let c = CyclicCode::new(45, 2, &[-5, -3, 3, 5]).unwrap();
        assert_eq!(c.defining_set().residues(), vec![3, 5, 6, 10, 12, 20, 21, 24, 25, 33, 35, 39, 40, 42]);
        assert_eq!(c.k(), 31);
        // -5 = 40 already lies in the coset of 5
        let same = CyclicCode::new(45, 2, &[42, 5, 3, 3]).unwrap();
        assert_eq!(same.defining_set(), c.defining_set());
        assert_eq!(CyclicCode::new(45, 2, &[3, 5]).unwrap().k(), 35);
        assert!(matches!(CyclicCode::new(12, 2, &[1]), Err(Error::LengthSharesFactor { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(CodeFamily::new(15, 2).unwrap().enumerate().count(), 32);
        assert_eq!(CodeFamily::new(17, 2).unwrap().enumerate().count(), 8);
        assert_eq!(CodeFamily::new(8, 3).unwrap().enumerate().count(), 32);
    }

    #[test]
    fn reversibility() {
        let c = CyclicCode::new(17, 2, &[1]).unwrap();
        assert_eq!(c.classify_reversible(), Reversibility::SymmetricReversibleLength);
        assert_eq!(symmetric_reversible_exponent(17, 2), Some(4));
        let c = CyclicCode::new(7, 2, &[1]).unwrap();
        assert_eq!(c.classify_reversible(), Reversibility::NotReversible);
        let c = CyclicCode::new(7, 2, &[0]).unwrap();
        assert_eq!(c.classify_reversible(), Reversibility::Reversible);
        let c = CyclicCode::new(7, 2, &[1, 3]).unwrap();
        assert_eq!(c.classify_reversible(), Reversibility::Reversible);
    }

    #[test]
    fn starred_lengths_in_binary_table() {
        for n in [17, 25, 33, 41, 43, 57] {
            assert!(is_symmetric_reversible_length(n, 2), "n = {n}");
        }
        for n in [15, 21, 23, 31, 35, 45, 47, 51, 63] {
            assert!(!is_symmetric_reversible_length(n, 2), "n = {n}");
        }
    }

    #[test]
    fn spec_parsing() {
        let s: CodeSpec = "q=2 n=45 cosets=3,-5".parse().unwrap();
        assert_eq!(s, CodeSpec { q: 2, n: 45, cosets: vec![3, -5] });
        assert_eq!(s.to_string(), "q=2 n=45 cosets=3,-5");
        assert!("q=2 n=45 cosets=3,x".parse::<CodeSpec>().unwrap_err().to_string().contains("cosets=3,x"));
        assert!("q=2 m=4".parse::<CodeSpec>().unwrap_err().to_string().contains("m=4"));
        assert_eq!("q=3 n=8 cosets=".parse::<CodeSpec>().unwrap().cosets, Vec::<i64>::new());
    }

    #[test]
    fn quaternary_codes() {
        let fam = CodeFamily::new(5, 4).unwrap();
        assert_eq!(fam.s(), 2);
        for code in fam.enumerate() {
            let g = code.generator();
            let mut x5 = vec![FieldElement::ZERO; 6];
            x5[0] = fam.base().from_int(-1);
            x5[5] = FieldElement::ONE;
            assert!(Poly::new(x5).rem(g, fam.base()).is_zero());
            for i in 0..5 {
                let vanishes = fam.eval_at_power(g.coeffs(), i).is_zero();
                assert_eq!(vanishes, code.defining_set().contains(i));
            }
        }
    }
}
