//! Decoding up to half the rational bound: generalized syndromes, the
//! generalized key equation, Chien search over one root per position and
//! generalized Forney error evaluation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::{rational_run, rational_value, BoundCertificate, Witness};
use crate::code::CyclicCode;
use crate::error::{Error, Result};
use crate::field::{poly_eea, splitting_degree, Embedding, FieldElement, FiniteField, Poly};
use crate::numth;
use crate::series::{PreparedRegistry, RationalCandidate};

/// How the key equation was solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyEquationMethod {
    /// Syndrome was zero.
    Trivial,
    Euclid,
    LinearSystem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeySolution {
    pub lambda: Poly,
    pub omega: Poly,
    /// Number of errors, `deg lambda / u`.
    pub t: usize,
    pub method: KeyEquationMethod,
}

/// A decoding step that did not produce a codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure(pub String);

type Step<T> = std::result::Result<T, Failure>;

fn failure<T>(msg: impl Into<String>) -> Step<T> {
    Err(Failure(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeStatus {
    Ok,
    DecodingFailure,
}

/// Outcome of [`DecoderContext::decode`]. Polynomials live in the decoder's
/// ambient field and are serialized as element indices; words, positions
/// and error values are over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingResult {
    pub status: DecodeStatus,
    pub reason: Option<String>,
    pub syndrome: Poly,
    pub lambda: Poly,
    pub omega: Poly,
    pub method: Option<KeyEquationMethod>,
    pub positions: Vec<u64>,
    pub values: Vec<u64>,
    pub corrected: Option<Vec<u64>>,
}

impl DecodingResult {
    pub fn is_ok(&self) -> bool {
        self.status == DecodeStatus::Ok
    }
}

/// Everything the decoder precomputes for one code and one rational
/// candidate matched at start `b` with spacing `z1`.
///
/// Spacing `z1 > 1` is handled by working with `alpha' = alpha^z1`, which
/// is again a primitive `n`-th root of unity; the start becomes
/// `b' = b z1^{-1} mod n` so that `alpha'^{b'+j} = alpha^{b + j z1}`.
#[derive(Clone, Debug)]
pub struct DecoderContext {
    code: CyclicCode,
    candidate: RationalCandidate,
    b: u64,
    z1: u64,
    run: u64,
    d_f: u64,
    t_max: usize,
    ambient: Arc<FiniteField>,
    to_ambient: Embedding,
    shift: u64,
    /// `alpha'^k` for `k < n`.
    alpha_pows: Vec<FieldElement>,
    a: Vec<FieldElement>,
    f: Poly,
    h: Poly,
    f_prime: Poly,
    betas: Vec<FieldElement>,
}

impl DecoderContext {
    pub fn new(code: &CyclicCode, candidate: &RationalCandidate, b: u64, z1: u64) -> Result<Self> {
        let n = code.n();
        if candidate.q != code.q() {
            return Err(Error::IncompatibleFields("candidate and code alphabets differ".into()));
        }
        if numth::gcd(z1, n) != 1 {
            return Err(Error::Invalid(format!("spacing {z1} is not coprime to {n}")));
        }
        if numth::gcd(candidate.period, n) != 1 {
            return Err(Error::CandidateInvalid { n, reason: format!("period {} shares a factor with n", candidate.period) });
        }
        let (run, _) = rational_run(code.defining_set(), candidate, b, z1);
        let d_f = rational_value(run, candidate.u, candidate.v, n);
        let t_max = (((d_f - 1) / 2) as usize).min(run as usize / (2 * candidate.u));

        let family = code.family();
        let base = family.base().clone();
        let (p, e) = (base.characteristic(), base.degree());
        let s = family.s();
        let split = splitting_degree(&candidate.f, &base)?;
        let big_deg = numth::lcm(s as u64, split as u64) as u32;
        let (ambient, ext_to_amb) = if big_deg == s {
            (family.ext().clone(), Embedding::identity(family.ext().clone()))
        } else {
            let amb = Arc::new(FiniteField::new(p, e * big_deg)?);
            (amb.clone(), Embedding::new(family.ext().clone(), amb)?)
        };
        let to_ambient = family.embedding().then(&ext_to_amb)?;

        let alpha = ambient.pow(ext_to_amb.apply(family.alpha()), z1);
        let mut alpha_pows = Vec::with_capacity(n as usize);
        let mut x = FieldElement::ONE;
        for _ in 0..n {
            alpha_pows.push(x);
            x = ambient.mul(x, alpha);
        }
        let shift = numth::mul_mod(b % n, numth::inv_mod(z1 % n, n).unwrap_or(0), n);
        let f = to_ambient.apply_poly(&candidate.f);
        let h = to_ambient.apply_poly(&candidate.h);
        let f_prime = f.derivative(&ambient);
        let a = candidate.a.iter().map(|&c| to_ambient.apply(c)).collect();

        // roots of f, all lying in the subfield of degree `split` over GF(q)
        let roots: Vec<FieldElement> = ambient
            .subfield_elements(e * split)?
            .into_iter()
            .filter(|&r| f.eval(r, &ambient).is_zero())
            .collect();
        if roots.is_empty() {
            return Err(Error::Consistency("denominator has no root in the ambient field".into()));
        }
        let mut ctx = DecoderContext {
            code: code.clone(),
            candidate: candidate.clone(),
            b: b % n,
            z1,
            run,
            d_f,
            t_max,
            ambient,
            to_ambient,
            shift,
            alpha_pows,
            a,
            f,
            h,
            f_prime,
            betas: Vec::new(),
        };
        ctx.betas = ctx.precompute_betas(&roots)?;
        Ok(ctx)
    }

    /// Context for a rational certificate of `code`.
    pub fn from_certificate(code: &CyclicCode, cert: &BoundCertificate) -> Result<Self> {
        let Witness::Rational { label, h, f, b, z1, .. } = &cert.witness else {
            return Err(Error::Invalid(format!("{} certificate cannot drive the decoder", cert.kind())));
        };
        let base = code.base();
        let poly = |v: &[u64]| -> Result<Poly> { Ok(Poly::new(v.iter().map(|&c| base.element(c)).collect::<Result<_>>()?)) };
        let cand = RationalCandidate::new(label.clone(), poly(h)?, poly(f)?, base)?;
        Self::new(code, &cand, *b, *z1)
    }

    /// Picks the match with the largest decoding radius
    /// `min(floor((d_f-1)/2), floor(run/(2u)))`; ties prefer larger `d_f`,
    /// smaller `u`, longer run, registry order, smaller `z1`, smaller `b`.
    pub fn best(code: &CyclicCode, reg: &PreparedRegistry) -> Result<Self> {
        let n = code.n();
        let d = code.defining_set();
        type Key = (usize, u64, std::cmp::Reverse<usize>, u64);
        let mut best: Option<(Key, usize, u64, u64)> = None;
        for (ci, cand) in reg.candidates().iter().enumerate() {
            for z1 in (1..n.max(2)).filter(|&z| numth::gcd(z, n) == 1) {
                for b in 0..n {
                    let (run, _) = rational_run(d, cand, b, z1);
                    let d_f = rational_value(run, cand.u, cand.v, n);
                    let radius = (((d_f - 1) / 2) as usize).min(run as usize / (2 * cand.u));
                    let key = (radius, d_f, std::cmp::Reverse(cand.u), run);
                    if best.as_ref().is_none_or(|(k, ..)| key > *k) {
                        best = Some((key, ci, z1, b));
                    }
                }
            }
        }
        let (_, ci, z1, b) = best.ok_or_else(|| Error::Invalid("registry has no valid candidate".into()))?;
        Self::new(code, &reg.candidates()[ci], b, z1)
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn candidate(&self) -> &RationalCandidate {
        &self.candidate
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn z1(&self) -> u64 {
        self.z1
    }

    /// Length `mu - 1` of the matched zero run (number of syndromes).
    pub fn run(&self) -> u64 {
        self.run
    }

    pub fn d_f(&self) -> u64 {
        self.d_f
    }

    /// Number of errors the decoder is guaranteed to correct.
    pub fn t_max(&self) -> usize {
        self.t_max
    }

    /// Field holding the roots of every `f(alpha^i x)`.
    pub fn ambient(&self) -> &Arc<FiniteField> {
        &self.ambient
    }

    pub fn betas(&self) -> &[FieldElement] {
        &self.betas
    }

    /// `alpha' = alpha^z1` in the ambient field.
    pub fn alpha(&self) -> FieldElement {
        self.alpha_pows[1 % self.code.n() as usize]
    }

    /// Start `b' = b z1^{-1} mod n` with respect to `alpha'`.
    pub fn shift(&self) -> u64 {
        self.shift
    }

    /// Map from GF(q) into the ambient field.
    pub fn to_ambient(&self) -> &Embedding {
        &self.to_ambient
    }

    /// `f(alpha'^i x)` over the ambient field.
    pub fn locator_factor(&self, i: u64) -> Poly {
        self.f.scale_argument(self.alpha_pows[(i % self.code.n()) as usize], &self.ambient)
    }

    /// `prod_{i in positions} f(alpha'^i x)`.
    pub fn locator(&self, positions: &[u64]) -> Poly {
        positions.iter().fold(Poly::one(), |acc, &i| acc.mul(&self.locator_factor(i), &self.ambient))
    }

    fn apow(&self, k: i64) -> FieldElement {
        self.alpha_pows[k.rem_euclid(self.code.n() as i64) as usize]
    }

    /// One root `beta_i` of each `f(alpha'^i x)`: the smallest-index element
    /// among `alpha'^{-i} rho` for the roots `rho` of `f`. Checks that the
    /// roots single out their position.
    fn precompute_betas(&self, roots: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let amb = &self.ambient;
        let n = self.code.n();
        let betas: Vec<FieldElement> = (0..n as i64)
            .map(|i| roots.iter().map(|&r| amb.mul(r, self.apow(-i))).min().unwrap())
            .collect();
        for (i, &beta) in betas.iter().enumerate() {
            for j in 0..n {
                let at = self.f.eval(amb.mul(self.apow(j as i64), beta), amb).is_zero();
                if at != (j as usize == i) {
                    return Err(Error::CandidateInvalid {
                        n,
                        reason: format!("root of f(alpha^{i} x) is also a root of f(alpha^{j} x)"),
                    });
                }
            }
        }
        Ok(betas)
    }

    fn embed_word(&self, r: &[u64]) -> Result<Vec<FieldElement>> {
        let base = self.code.base();
        if r.len() as u64 != self.code.n() {
            return Err(Error::Invalid(format!("received word has {} symbols, expected {}", r.len(), self.code.n())));
        }
        r.iter().map(|&c| base.element(c).map(|e| self.to_ambient.apply(e))).collect()
    }

    /// `r(alpha'^k)`
    fn eval_word(&self, r: &[FieldElement], k: u64) -> FieldElement {
        let n = self.code.n();
        let amb = &self.ambient;
        let mut acc = FieldElement::ZERO;
        for (i, &c) in r.iter().enumerate() {
            if !c.is_zero() {
                acc = amb.add(acc, amb.mul(c, self.alpha_pows[((i as u64 * k) % n) as usize]));
            }
        }
        acc
    }

    /// `S(x) = sum_{j < mu-1} a_j r(alpha'^{j+b'}) x^j`.
    pub fn syndrome(&self, r: &[u64]) -> Result<Poly> {
        let word = self.embed_word(r)?;
        Ok(self.syndrome_embedded(&word))
    }

    fn syndrome_embedded(&self, word: &[FieldElement]) -> Poly {
        let n = self.code.n();
        let p = self.a.len() as u64;
        Poly::new(
            (0..self.run)
                .map(|j| {
                    let a = self.a[(j % p) as usize];
                    if a.is_zero() {
                        FieldElement::ZERO
                    } else {
                        self.ambient.mul(a, self.eval_word(word, (j + self.shift) % n))
                    }
                })
                .collect(),
        )
    }

    fn degree_contract(&self, lambda: &Poly, omega: &Poly, s: &Poly) -> Step<usize> {
        let u = self.candidate.u;
        let Some(dl) = lambda.degree().finite() else { return failure("locator is zero") };
        if dl % u != 0 || dl == 0 {
            return failure(format!("locator degree {dl} is not a positive multiple of {u}"));
        }
        let t = dl / u;
        if t > self.t_max {
            return failure(format!("{t} errors exceed the decoding radius {}", self.t_max));
        }
        if !omega.degree().at_most(((t - 1) * u + self.candidate.v) as i64) {
            return failure("evaluator degree too large");
        }
        if lambda.coeff(0).is_zero() {
            return failure("locator vanishes at zero");
        }
        if !lambda.mul(s, &self.ambient).truncate(self.run as usize).sub(omega, &self.ambient).is_zero() {
            return failure("key equation residue is nonzero");
        }
        Ok(t)
    }

    /// Scales `(lambda, omega)` so that `lambda(0) = f(0)^t`, the constant
    /// term of `prod f(alpha'^i x)`.
    fn normalize(&self, lambda: &Poly, omega: &Poly, t: usize) -> (Poly, Poly) {
        let amb = &self.ambient;
        let target = amb.pow(self.f.coeff(0), t as u64);
        let c = amb.div(target, lambda.coeff(0));
        (lambda.scale(c, amb), omega.scale(c, amb))
    }

    /// Solves `Lambda S = Omega mod x^{mu-1}` with the degree constraints.
    /// Runs the Euclidean algorithm first and falls back to the linear
    /// system when its output violates the degree contract.
    pub fn solve_key_equation(&self, s: &Poly) -> Step<KeySolution> {
        if s.is_zero() {
            return Ok(KeySolution { lambda: Poly::one(), omega: Poly::zero(), t: 0, method: KeyEquationMethod::Trivial });
        }
        if self.t_max == 0 {
            return failure("nonzero syndrome with decoding radius zero");
        }
        let amb = &self.ambient;
        let xl = Poly::monomial(FieldElement::ONE, self.run as usize);
        let stop = (self.run as i64 - 1).div_euclid(2);
        let step = poly_eea(&xl, s, stop, amb);
        if let Ok(t) = self.degree_contract(&step.w, &step.rem, s) {
            let (lambda, omega) = self.normalize(&step.w, &step.rem, t);
            return Ok(KeySolution { lambda, omega, t, method: KeyEquationMethod::Euclid });
        }
        for t in (1..=self.t_max).rev() {
            if let Some(lambda) = self.linear_system(s, t) {
                let omega = lambda.mul(s, amb).truncate(self.run as usize);
                if let Ok(t) = self.degree_contract(&lambda, &omega, s) {
                    let (lambda, omega) = self.normalize(&lambda, &omega, t);
                    return Ok(KeySolution { lambda, omega, t, method: KeyEquationMethod::LinearSystem });
                }
            }
        }
        failure("key equation has no solution within the decoding radius")
    }

    /// The homogeneous system `sum_m Lambda_m S_{k-m} = 0`, `k = tu .. mu-2`,
    /// with `Lambda_0 = 1`. Returns the locator when the system has full
    /// rank `tu` and is consistent.
    pub fn linear_system(&self, s: &Poly, t: usize) -> Option<Poly> {
        let amb = &self.ambient;
        let m = t * self.candidate.u;
        let run = self.run as usize;
        if m == 0 || m > run {
            return None;
        }
        // rows: [S_{k-1} .. S_{k-m} | -S_k]
        let mut rows: Vec<Vec<FieldElement>> = (m..run)
            .map(|k| {
                let mut row: Vec<FieldElement> = (1..=m).map(|i| s.coeff(k - i)).collect();
                row.push(amb.neg(s.coeff(k)));
                row
            })
            .collect();
        let sol = solve_unique(&mut rows, m, amb)?;
        let mut coeffs = vec![FieldElement::ONE];
        coeffs.extend(sol);
        Some(Poly::new(coeffs))
    }

    /// Positions `i` with `Lambda(beta_i) = 0`; their number times `u` must
    /// equal `deg Lambda`.
    pub fn chien_search(&self, lambda: &Poly) -> Step<Vec<u64>> {
        let amb = &self.ambient;
        let pos: Vec<u64> =
            (0..self.code.n()).filter(|&i| lambda.eval(self.betas[i as usize], amb).is_zero()).collect();
        let deg = lambda.degree().finite().unwrap_or(0);
        if pos.len() * self.candidate.u != deg {
            return failure(format!("{} locator roots found for degree {deg}", pos.len()));
        }
        Ok(pos)
    }

    /// Error values by the generalized Forney formula, cross-checked against
    /// the derivative form wherever `f` has a simple root at the position.
    pub fn evaluate_errors(&self, omega: &Poly, lambda: &Poly, positions: &[u64]) -> Result<Step<Vec<FieldElement>>> {
        let amb = &self.ambient;
        let lambda_prime = lambda.derivative(amb);
        let mut values = Vec::with_capacity(positions.len());
        for &l in positions {
            let beta = self.betas[l as usize];
            let al = self.apow(l as i64);
            let shifted = amb.mul(al, beta);
            let scale = amb.mul(self.apow((l * self.shift) as i64), self.h.eval(shifted, amb));
            let mut den = scale;
            for &j in positions {
                if j != l {
                    den = amb.mul(den, self.f.eval(amb.mul(self.apow(j as i64), beta), amb));
                }
            }
            if den.is_zero() {
                return Ok(failure(format!("error evaluation denominator vanishes at position {l}")));
            }
            let om = omega.eval(beta, amb);
            let e = amb.div(om, den);
            // d/dx f(alpha^l x) = alpha^l f'(alpha^l x)
            let fd = amb.mul(al, self.f_prime.eval(shifted, amb));
            if !fd.is_zero() {
                let lp = lambda_prime.eval(beta, amb);
                let den2 = amb.mul(lp, scale);
                if den2.is_zero() || amb.div(amb.mul(om, fd), den2) != e {
                    return Err(Error::Consistency(format!("Forney forms disagree at position {l}")));
                }
            }
            if e.is_zero() {
                return Ok(failure(format!("zero error value at position {l}")));
            }
            match self.to_ambient.preimage(e) {
                Some(v) => values.push(v),
                None => return Ok(failure(format!("error value at position {l} is not in GF({})", self.code.q()))),
            }
        }
        Ok(Ok(values))
    }

    /// Runs the whole pipeline on a received word of GF(q) symbols.
    pub fn decode(&self, r: &[u64]) -> Result<DecodingResult> {
        let word = self.embed_word(r)?;
        let syndrome = self.syndrome_embedded(&word);
        let mut out = DecodingResult {
            status: DecodeStatus::DecodingFailure,
            reason: None,
            syndrome: syndrome.clone(),
            lambda: Poly::zero(),
            omega: Poly::zero(),
            method: None,
            positions: Vec::new(),
            values: Vec::new(),
            corrected: None,
        };
        let fail = |mut out: DecodingResult, f: Failure| {
            out.reason = Some(f.0);
            Ok(out)
        };
        let key = match self.solve_key_equation(&syndrome) {
            Ok(k) => k,
            Err(f) => return fail(out, f),
        };
        out.lambda = key.lambda.clone();
        out.omega = key.omega.clone();
        out.method = Some(key.method);
        let positions = match self.chien_search(&key.lambda) {
            Ok(p) => p,
            Err(f) => return fail(out, f),
        };
        out.positions = positions.clone();
        if self.locator(&positions) != key.lambda {
            return fail(out, Failure("locator is not a product of position factors".into()));
        }
        let values = match self.evaluate_errors(&key.omega, &key.lambda, &positions)? {
            Ok(v) => v,
            Err(f) => return fail(out, f),
        };
        out.values = values.iter().map(|v| v.index()).collect();
        let base = self.code.base();
        let mut corrected: Vec<FieldElement> = r.iter().map(|&c| base.element(c)).collect::<Result<_>>()?;
        for (&pos, &v) in positions.iter().zip(&values) {
            corrected[pos as usize] = base.sub(corrected[pos as usize], v);
        }
        if !self.code.is_codeword(&corrected) {
            return fail(out, Failure("corrected word is not a codeword".into()));
        }
        out.corrected = Some(corrected.iter().map(|c| c.index()).collect());
        out.status = DecodeStatus::Ok;
        Ok(out)
    }
}

/// Gaussian elimination on an augmented matrix with `m` unknowns. Returns
/// the solution when the coefficient rank is `m` and the system is
/// consistent.
fn solve_unique(rows: &mut [Vec<FieldElement>], m: usize, f: &FiniteField) -> Option<Vec<FieldElement>> {
    let mut r = 0;
    for col in 0..m {
        let piv = (r..rows.len()).find(|&i| !rows[i][col].is_zero())?;
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]).unwrap();
        for x in &mut rows[r][col..=m] {
            *x = f.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col];
                for (x, &y) in row[col..=m].iter_mut().zip(&pivot[col..=m]) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    Some((0..m).map(|i| rows[i][m]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::rational_bound;
    use crate::series::Registry;

    fn c17() -> (CyclicCode, DecoderContext) {
        let code = CyclicCode::new(17, 2, &[1]).unwrap();
        let reg = Registry::builtin().prepare(code.family()).unwrap();
        let cert = rational_bound(code.defining_set(), &reg);
        let ctx = DecoderContext::from_certificate(&code, &cert).unwrap();
        (code, ctx)
    }

    #[test]
    fn context_for_example_code() {
        let (_, ctx) = c17();
        assert_eq!((ctx.d_f(), ctx.run(), ctx.t_max()), (5, 9, 2));
        assert_eq!(ctx.ambient().order(), 256);
        let amb = ctx.ambient().clone();
        let omega = poly_roots_of_order3(&amb);
        let alpha = ctx.alpha_pows[1];
        for i in 0..17i64 {
            let beta = ctx.betas()[i as usize];
            let inv = amb.pow_signed(alpha, -i);
            assert!(omega.iter().any(|&w| amb.mul(w, inv) == beta));
            assert!(ctx.locator_factor(i as u64).eval(beta, &amb).is_zero());
        }
    }

    fn poly_roots_of_order3(f: &FiniteField) -> Vec<FieldElement> {
        f.elements().skip(1).filter(|&x| f.multiplicative_order(x) == 3).collect()
    }

    #[test]
    fn syndrome_support_and_series() {
        let (code, ctx) = c17();
        let mut r = vec![0u64; 17];
        r[3] = 1;
        r[10] = 1;
        let s = ctx.syndrome(&r).unwrap();
        let support: Vec<usize> = (0..9).filter(|&j| !s.coeff(j).is_zero()).collect();
        assert_eq!(support, vec![0, 2, 3, 5, 6, 8]);
        // a single error at i reproduces alpha^{13i} + alpha^{15i} x^2 + ...
        let amb = ctx.ambient().clone();
        for i in 0..17u64 {
            let mut e = vec![0u64; 17];
            e[i as usize] = 1;
            let s = ctx.syndrome(&e).unwrap();
            let expect = [(0, 13), (2, 15), (3, 16), (5, 1), (6, 2), (8, 4)];
            for (j, k) in expect {
                assert_eq!(s.coeff(j), amb.pow(ctx.alpha_pows[1], k * i), "i={i} j={j}");
            }
        }
        let zero = code.encode(&[FieldElement::ZERO; 9]);
        assert!(ctx.syndrome(&zero.iter().map(|c| c.index()).collect::<Vec<_>>()).unwrap().is_zero());
    }

    #[test]
    fn one_and_two_errors() {
        let (_, ctx) = c17();
        let mut r = vec![0u64; 17];
        r[3] = 1;
        let s = ctx.syndrome(&r).unwrap();
        let k = ctx.solve_key_equation(&s).unwrap();
        assert_eq!(k.lambda, ctx.locator_factor(3));
        r[10] = 1;
        let s = ctx.syndrome(&r).unwrap();
        let k = ctx.solve_key_equation(&s).unwrap();
        assert_eq!(k.lambda.degree().finite(), Some(4));
        assert_eq!(ctx.chien_search(&k.lambda).unwrap(), vec![3, 10]);
        let res = ctx.decode(&r).unwrap();
        assert!(res.is_ok());
        assert_eq!(res.corrected.unwrap(), vec![0; 17]);
        assert_eq!(ctx.solve_key_equation(&Poly::zero()).unwrap().lambda, Poly::one());
        assert_eq!(ctx.chien_search(&Poly::one()).unwrap(), Vec::<u64>::new());
        assert_eq!(ctx.chien_search(&ctx.locator_factor(0)).unwrap(), vec![0]);
    }

    #[test]
    fn bch_candidate_betas_are_inverse_powers() {
        let code = CyclicCode::new(15, 2, &[1, 3]).unwrap();
        let f2 = code.base().clone();
        let ctx = DecoderContext::new(&code, &RationalCandidate::bch(&f2), 1, 1).unwrap();
        let amb = ctx.ambient().clone();
        for i in 0..15 {
            assert_eq!(ctx.betas()[i], amb.inv(ctx.alpha_pows[i]).unwrap());
        }
        let single = CyclicCode::new(1, 2, &[]).unwrap();
        let ctx = DecoderContext::new(&single, &RationalCandidate::bch(&f2), 0, 1).unwrap();
        assert_eq!(ctx.betas().len(), 1);
    }

    #[test]
    fn ternary_single_error_value() {
        // n = 13 over GF(3): cosets {1,3,9} and {2,6,5} give BCH run 1,2,3
        let code = CyclicCode::new(13, 3, &[1, 2]).unwrap();
        let reg = Registry::builtin().prepare(code.family()).unwrap();
        let ctx = DecoderContext::best(&code, &reg).unwrap();
        assert!(ctx.t_max() >= 1);
        let mut r = vec![0u64; 13];
        r[3] = 2;
        let res = ctx.decode(&r).unwrap();
        assert!(res.is_ok(), "{res:?}");
        assert_eq!((res.positions, res.values), (vec![3], vec![2]));
    }

    #[test]
    fn linear_system_matches_euclid() {
        let (_, ctx) = c17();
        let mut r = vec![0u64; 17];
        r[1] = 1;
        r[7] = 1;
        let s = ctx.syndrome(&r).unwrap();
        let k = ctx.solve_key_equation(&s).unwrap();
        let lin = ctx.linear_system(&s, 2).unwrap();
        let amb = ctx.ambient();
        assert_eq!(lin.scale(k.lambda.coeff(0), amb), k.lambda);
    }
}
