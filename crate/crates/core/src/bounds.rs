//! Lower bounds on the minimum distance of cyclic codes from the structure
//! of the defining set: BCH, Hartmann-Tzeng, the rational-function bound
//! and six of Boston's bounds. Every bound comes with a certificate that
//! can be replayed against the defining set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{all_cosets, DefiningSet};
use crate::error::{Error, Result};
use crate::numth;
use crate::series::{PreparedRegistry, RationalCandidate};

/// The rational bound value for a zero run of length `run = mu - 1`:
/// `ceil((run - v)/u + 1)`, clamped to `[1, n]`.
pub fn rational_value(run: u64, u: usize, v: usize, n: u64) -> u64 {
    let val = numth::ceil_div(run as i64 - v as i64, u as i64) + 1;
    (val.max(1) as u64).min(n)
}

/// Multipliers to try for a step: the smallest unit of each orbit under
/// multiplication by `q`. Scaling by `q` maps the defining set onto itself,
/// so the other units of an orbit give the same runs.
fn unit_steps(n: u64, q: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    all_cosets(n, q)
        .into_iter()
        .filter(|c| numth::gcd(c.rep, n) == 1)
        .map(|c| c.rep)
        .collect()
}

fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..n.max(2)).filter(move |&m| numth::gcd(m, n) == 1)
}

/// `runs[b]` = number of consecutive members `b, b+m, b+2m, ...` of the set,
/// capped at `n` when the whole orbit is contained.
fn step_runs(d: &DefiningSet, m: u64) -> Vec<u64> {
    let n = d.n();
    let mem = d.membership();
    let mut runs = vec![0u64; n as usize];
    // walk each orbit of +m backwards so every run is extended in O(1)
    let mut done = vec![false; n as usize];
    for start in 0..n {
        if done[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        let mut x = (start + m) % n;
        while x != start {
            orbit.push(x);
            x = (x + m) % n;
        }
        for &o in &orbit {
            done[o as usize] = true;
        }
        if orbit.iter().all(|&o| mem[o as usize]) {
            for &o in &orbit {
                runs[o as usize] = n;
            }
            continue;
        }
        // find a non-member and sweep the orbit backwards from it
        let len = orbit.len();
        let gap = orbit.iter().position(|&o| !mem[o as usize]).unwrap();
        let mut next = 0u64;
        for k in 1..=len {
            let o = orbit[(gap + len - k) % len];
            next = if mem[o as usize] { next + 1 } else { 0 };
            runs[o as usize] = next;
        }
    }
    runs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// `b, b+m1, ..., b+(d0-2)m1` in the defining set.
    #[serde(rename = "BCH")]
    Bch { b: u64, m1: u64, d0: u64 },
    /// The grid `b + i1 m1 + i2 m2`, `i1 <= d0-2`, `i2 <= nu`.
    #[serde(rename = "HT")]
    Ht { b: u64, m1: u64, m2: u64, d0: u64, nu: u64 },
    /// `a_{j mod p} = 0` or `b + j z1` in the defining set for `j < mu - 1`.
    #[serde(rename = "RATIONAL")]
    Rational {
        label: String,
        /// Numerator and denominator coefficients as GF(q) indices.
        h: Vec<u64>,
        f: Vec<u64>,
        /// One period of the series, as GF(q) indices.
        a: Vec<u64>,
        b: u64,
        z1: u64,
        mu: u64,
        u: usize,
        v: usize,
        /// The run wrapped all the way round and was capped at `n p`.
        degenerate: bool,
    },
    /// Boston's bound number `id`; `rational` is the rational-function value
    /// on the matching interval when it applies.
    #[serde(rename = "BOSTON")]
    Boston { id: u32, rational: Option<u64> },
}

/// A bound value with a witness that [`BoundCertificate::replay`] can check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub n: u64,
    pub value: u64,
    #[serde(flatten)]
    pub witness: Witness,
}

impl BoundCertificate {
    pub fn kind(&self) -> &'static str {
        match self.witness {
            Witness::Bch { .. } => "BCH",
            Witness::Ht { .. } => "HT",
            Witness::Rational { .. } => "RATIONAL",
            Witness::Boston { .. } => "BOSTON",
        }
    }

    /// Re-checks the witness against `d` from scratch.
    pub fn replay(&self, d: &DefiningSet) -> Result<()> {
        let n = self.n;
        let fail = |msg: String| Err(Error::Consistency(format!("{} certificate: {msg}", self.kind())));
        if d.n() != n {
            return fail(format!("length {n} does not match defining set length {}", d.n()));
        }
        match &self.witness {
            Witness::Bch { b, m1, d0 } => {
                if d0.saturating_sub(1) > 0 && numth::gcd(*m1, n) != 1 {
                    return fail(format!("step {m1} not coprime to {n}"));
                }
                for i in 0..d0.saturating_sub(1) {
                    if !d.contains((b + i * m1) as i64) {
                        return fail(format!("{} missing", (b + i * m1) % n));
                    }
                }
                if self.value != (*d0).max(1) {
                    return fail("value differs from d0".into());
                }
            }
            Witness::Ht { b, m1, m2, d0, nu } => {
                if numth::gcd(*m1, n) != 1 || (*nu > 0 && numth::gcd(*m2, n) != 1) {
                    return fail("steps not coprime to n".into());
                }
                for i1 in 0..d0.saturating_sub(1) {
                    for i2 in 0..=*nu {
                        let x = (b + i1 * m1 + i2 * m2) % n;
                        if !d.contains(x as i64) {
                            return fail(format!("{x} missing"));
                        }
                    }
                }
                if self.value != (d0 + nu).max(1) {
                    return fail("value differs from d0 + nu".into());
                }
            }
            Witness::Rational { a, b, z1, mu, u, v, degenerate, .. } => {
                if numth::gcd(*z1, n) != 1 {
                    return fail(format!("spacing {z1} not coprime to {n}"));
                }
                let p = a.len() as u64;
                let run = mu - 1;
                for j in 0..run {
                    if a[(j % p) as usize] != 0 && !d.contains(((b + j * z1) % n) as i64) {
                        return fail(format!("zero sequence broken at j = {j}"));
                    }
                }
                let extendable = a[(run % p) as usize] == 0 || d.contains(((b + run * z1) % n) as i64);
                if *degenerate != (run >= n * p) || (!degenerate && extendable) {
                    return fail("run is not maximal".into());
                }
                if self.value != rational_value(run, *u, *v, n) {
                    return fail("value differs from ceil((mu-1-v)/u + 1)".into());
                }
            }
            Witness::Boston { id, rational } => {
                let pat = BOSTON_PATTERNS
                    .iter()
                    .find(|p| p.id == *id)
                    .ok_or_else(|| Error::Consistency(format!("unknown Boston bound {id}")))?;
                if !pat.applies(d) || self.value != pat.d_b || *rational != pat.rational_value(d) {
                    return fail(format!("pattern {id} does not reproduce"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for BoundCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Witness::Bch { b, m1, d0 } => write!(f, "BCH {} (b={b}, m1={m1}, d0={d0})", self.value),
            Witness::Ht { b, m1, m2, d0, nu } => {
                write!(f, "HT {} (b={b}, m1={m1}, m2={m2}, d0={d0}, nu={nu})", self.value)
            }
            Witness::Rational { label, a, b, z1, mu, u, v, degenerate, .. } => {
                write!(f, "RATIONAL {} ({label}, a={a:?}, b={b}, z1={z1}, mu={mu}, u={u}, v={v}", self.value)?;
                if *degenerate {
                    write!(f, ", degenerate")?;
                }
                write!(f, ")")
            }
            Witness::Boston { id, rational } => {
                write!(f, "BOSTON {} (bound {id}, rational ", self.value)?;
                match rational {
                    Some(r) => write!(f, "{r})"),
                    None => write!(f, "n/a)"),
                }
            }
        }
    }
}

/// BCH bound: longest arithmetic progression with unit step in the
/// defining set, plus one. Ties go to the smallest step, then the smallest
/// start.
pub fn bch_bound(d: &DefiningSet) -> BoundCertificate {
    let n = d.n();
    let (mut best_run, mut best_b, mut best_m) = (0u64, 0u64, 1u64);
    for m1 in unit_steps(n, d.q()) {
        let runs = step_runs(d, m1);
        for (b, &r) in runs.iter().enumerate() {
            if r > best_run || (r == best_run && r > 0 && m1 == best_m && (b as u64) < best_b) {
                (best_run, best_b, best_m) = (r, b as u64, m1);
            }
        }
    }
    let d0 = best_run + 1;
    BoundCertificate { n, value: d0, witness: Witness::Bch { b: best_b, m1: best_m, d0 } }
}

/// Hartmann-Tzeng bound. Maximises `d0 + nu`, preferring larger `d0`, then
/// smaller `m1`, `b`, `m2`. `nu = 0` is reported with `m2 = 0`.
pub fn ht_bound(d: &DefiningSet) -> BoundCertificate {
    let n = d.n();
    let bch = bch_bound(d);
    let Witness::Bch { b, m1, d0 } = bch.witness else { unreachable!() };
    // (value, d0, b, m1, m2, nu); candidates compared on (value, d0)
    let mut best = (d0, d0, b, m1, 0u64, 0u64);
    for m1 in unit_steps(n, d.q()) {
        let runs = step_runs(d, m1);
        for b in 0..n {
            if runs[b as usize] == 0 {
                continue;
            }
            for m2 in units(n) {
                let mut cur = runs[b as usize].min(n);
                let mut i2 = 1u64;
                while i2 < n {
                    cur = cur.min(runs[((b + i2 * m2) % n) as usize]);
                    if cur == 0 {
                        break;
                    }
                    let (val, d0) = (cur + 1 + i2, cur + 1);
                    if (val, d0) > (best.0, best.1) {
                        best = (val, d0, b, m1, m2, i2);
                    }
                    i2 += 1;
                }
            }
        }
    }
    let (value, d0, b, m1, m2, nu) = best;
    BoundCertificate { n, value, witness: Witness::Ht { b, m1, m2, d0, nu } }
}

/// Length of the zero run for `cand` started at `b` with spacing `z1`:
/// the largest `L` with `a_{j mod p} = 0` or `b + j z1` in `d` for all
/// `j < L`. Capped at `n p`; the flag reports the cap.
pub fn rational_run(d: &DefiningSet, cand: &RationalCandidate, b: u64, z1: u64) -> (u64, bool) {
    let n = d.n();
    let nz: Vec<bool> = cand.a.iter().map(|c| !c.is_zero()).collect();
    run_with(d.membership(), &nz, n, b % n, z1 % n)
}

fn run_with(mem: &[bool], nonzero: &[bool], n: u64, b: u64, z1: u64) -> (u64, bool) {
    let p = nonzero.len() as u64;
    let cap = n * p;
    let (mut pos, mut ai) = (b, 0usize);
    for j in 0..cap {
        if nonzero[ai] && !mem[pos as usize] {
            return (j, false);
        }
        pos += z1;
        if pos >= n {
            pos -= n;
        }
        ai += 1;
        if ai == nonzero.len() {
            ai = 0;
        }
    }
    (cap, true)
}

fn rational_certificate(d: &DefiningSet, cand: &RationalCandidate, b: u64, z1: u64, run: u64, deg: bool) -> BoundCertificate {
    let n = d.n();
    BoundCertificate {
        n,
        value: rational_value(run, cand.u, cand.v, n),
        witness: Witness::Rational {
            label: cand.label.clone(),
            h: cand.h.indices(),
            f: cand.f.indices(),
            a: cand.a_indices(),
            b,
            z1,
            mu: run + 1,
            u: cand.u,
            v: cand.v,
            degenerate: deg,
        },
    }
}

fn check_registry(d: &DefiningSet, reg: &PreparedRegistry) {
    assert!(
        reg.family().n() == d.n() && reg.family().q() == d.q(),
        "registry prepared for a different length or alphabet"
    );
}

/// Rational-function bound: the best value over all valid registry
/// candidates, starts `b` and unit spacings `z1`. Ties prefer the smaller
/// denominator degree, then the longer run, then registry order, then
/// smaller `z1`, then smaller `b`.
pub fn rational_bound(d: &DefiningSet, reg: &PreparedRegistry) -> BoundCertificate {
    check_registry(d, reg);
    let n = d.n();
    let mem = d.membership();
    let steps = unit_steps(n, d.q());
    // (value, u, run, candidate, z1, b, degenerate)
    let mut best: Option<(u64, usize, u64, usize, u64, u64, bool)> = None;
    for (ci, cand) in reg.candidates().iter().enumerate() {
        let nz: Vec<bool> = cand.a.iter().map(|c| !c.is_zero()).collect();
        for &z1 in &steps {
            for b in 0..n {
                let (run, deg) = run_with(mem, &nz, n, b, z1);
                let val = rational_value(run, cand.u, cand.v, n);
                let better = best.is_none_or(|(bv, bu, br, ..)| {
                    (val, std::cmp::Reverse(cand.u), run) > (bv, std::cmp::Reverse(bu), br)
                });
                if better {
                    best = Some((val, cand.u, run, ci, z1, b, deg));
                }
            }
        }
    }
    let (_, _, run, ci, z1, b, deg) = best.expect("the BCH candidate is always valid");
    rational_certificate(d, &reg.candidates()[ci], b, z1, run, deg)
}

/// Just the rational bound value, skipping certificate assembly.
pub fn rational_bound_value(d: &DefiningSet, reg: &PreparedRegistry) -> u64 {
    check_registry(d, reg);
    let n = d.n();
    let mem = d.membership();
    let steps = unit_steps(n, d.q());
    let mut best = 1;
    for cand in reg.candidates() {
        let nz: Vec<bool> = cand.a.iter().map(|c| !c.is_zero()).collect();
        for &z1 in &steps {
            for b in 0..n {
                let (run, _) = run_with(mem, &nz, n, b, z1);
                best = best.max(rational_value(run, cand.u, cand.v, n));
                if best == n {
                    return best;
                }
            }
        }
    }
    best
}

/// Every `(candidate, b, z1)` reaching the optimal rational value, over all
/// unit spacings (not only orbit representatives).
pub fn optimal_rational_witnesses(d: &DefiningSet, reg: &PreparedRegistry) -> Vec<BoundCertificate> {
    let top = rational_bound(d, reg).value;
    let n = d.n();
    let mut out = Vec::new();
    for cand in reg.candidates() {
        for z1 in units(n) {
            for b in 0..n {
                let (run, deg) = rational_run(d, cand, b, z1);
                if rational_value(run, cand.u, cand.v, n) == top {
                    out.push(rational_certificate(d, cand, b, z1, run, deg));
                }
            }
        }
    }
    out
}

/// One of Boston's subset conditions, together with the interval and the
/// period-3 or period-4 series that reproduces it as a rational bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BostonPattern {
    pub id: u32,
    pub subset: &'static [i64],
    /// `n` must not be divisible by this.
    pub excluded_divisor: Option<u64>,
    pub d_b: u64,
    /// First position of the interval; the series starts there.
    pub start: i64,
    /// Number of positions in the interval.
    pub len: u64,
    /// One period of the series, `-1` written as such.
    pub a: &'static [i64],
}

pub const BOSTON_PATTERNS: [BostonPattern; 6] = [
    BostonPattern { id: 1, subset: &[0, 1, 3, 4], excluded_divisor: Some(3), d_b: 4, start: -1, len: 7, a: &[0, 1, -1] },
    BostonPattern { id: 2, subset: &[0, 1, 3, 5], excluded_divisor: None, d_b: 4, start: 0, len: 7, a: &[0, 1, 0, -1] },
    BostonPattern { id: 5, subset: &[0, 1, 3, 4, 6], excluded_divisor: Some(3), d_b: 5, start: -1, len: 8, a: &[0, 1, -1] },
    BostonPattern { id: 6, subset: &[0, 1, 2, 4, 5, 6, 8], excluded_divisor: Some(4), d_b: 6, start: -1, len: 10, a: &[0, 1, 0, -1] },
    BostonPattern { id: 7, subset: &[0, 1, 3, 4, 6, 7], excluded_divisor: Some(3), d_b: 6, start: -1, len: 10, a: &[0, 1, -1] },
    BostonPattern { id: 10, subset: &[0, 1, 3, 4, 6, 7, 9], excluded_divisor: Some(3), d_b: 7, start: -1, len: 11, a: &[0, 1, -1] },
];

impl BostonPattern {
    pub fn applies(&self, d: &DefiningSet) -> bool {
        self.excluded_divisor.is_none_or(|m| !d.n().is_multiple_of(m)) && self.subset.iter().all(|&i| d.contains(i))
    }

    /// The rational value on the interval: the series `a` (numerator of
    /// degree 1 over a quadratic denominator) has zeros matched at every
    /// nonzero coefficient. `None` when the period shares a factor with `n`
    /// or the interval is not matched.
    pub fn rational_value(&self, d: &DefiningSet) -> Option<u64> {
        let p = self.a.len() as u64;
        if numth::gcd(d.n(), p) != 1 {
            return None;
        }
        let matched = (0..self.len).all(|j| self.a[(j % p) as usize] == 0 || d.contains(self.start + j as i64));
        matched.then(|| rational_value(self.len, 2, 1, d.n()))
    }
}

/// Boston bounds whose conditions hold for `d`, in numbering order.
pub fn boston_bounds(d: &DefiningSet) -> Vec<BoundCertificate> {
    BOSTON_PATTERNS
        .iter()
        .filter(|p| p.applies(d))
        .map(|p| BoundCertificate {
            n: d.n(),
            value: p.d_b,
            witness: Witness::Boston { id: p.id, rational: p.rational_value(d) },
        })
        .collect()
}

/// For the largest `r` with `{0,1,3,4,6,7,...,r}` (all `j <= r` with
/// `j mod 3 != 2`) contained in `d` and `3 ∤ n`, returns
/// `ceil((r+1)/2 + 1)`.
pub fn boston_question_bound(d: &DefiningSet) -> Option<u64> {
    let n = d.n();
    if n.is_multiple_of(3) || !d.contains(0) || !d.contains(1) {
        return None;
    }
    let mut r = 1;
    let mut j = 2;
    while j < n as i64 {
        if j % 3 != 2 {
            if !d.contains(j) {
                break;
            }
            r = j;
        }
        j += 1;
    }
    Some((numth::ceil_div(r + 1, 2) + 1) as u64)
}

/// All bounds for one defining set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub bch: BoundCertificate,
    pub ht: BoundCertificate,
    pub rational: BoundCertificate,
    pub boston: Vec<BoundCertificate>,
    pub boston_question: Option<u64>,
}

impl BoundsReport {
    pub fn compute(d: &DefiningSet, reg: &PreparedRegistry) -> Self {
        BoundsReport {
            bch: bch_bound(d),
            ht: ht_bound(d),
            rational: rational_bound(d, reg),
            boston: boston_bounds(d),
            boston_question: boston_question_bound(d),
        }
    }

    pub fn certificates(&self) -> impl Iterator<Item = &BoundCertificate> {
        [&self.bch, &self.ht, &self.rational].into_iter().chain(self.boston.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{CodeFamily, CyclicCode};
    use crate::series::Registry;

    fn set(n: u64, q: u64, residues: &[i64]) -> DefiningSet {
        DefiningSet::from_residues(n, q, residues).unwrap()
    }

    #[test]
    fn value_formula() {
        assert_eq!(rational_value(9, 2, 1, 17), 5);
        assert_eq!(rational_value(0, 2, 1, 17), 1);
        assert_eq!(rational_value(100, 1, 0, 17), 17);
        assert_eq!(rational_value(10, 3, 2, 45), 4);
    }

    #[test]
    fn runs_along_steps() {
        let d = set(17, 2, &[1, 2, 4, 8, 16, 15, 13, 9]);
        let runs = step_runs(&d, 3);
        assert_eq!(runs[13], 3);
        assert_eq!(runs[0], 0);
        let full = set(5, 2, &[0, 1, 2, 3, 4]);
        assert_eq!(step_runs(&full, 1), vec![5; 5]);
    }

    #[test]
    fn bch_examples() {
        let d = CyclicCode::new(17, 2, &[1]).unwrap();
        let c = bch_bound(d.defining_set());
        assert_eq!(c.witness, Witness::Bch { b: 13, m1: 3, d0: 4 });
        let empty = CyclicCode::new(17, 2, &[]).unwrap();
        assert_eq!(bch_bound(empty.defining_set()).value, 1);
        let ex5 = set(20, 3, &[0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 16, 18]);
        assert_eq!(bch_bound(&ex5).value, 6);
    }

    #[test]
    fn ht_examples() {
        let d = CyclicCode::new(17, 2, &[1]).unwrap();
        let c = ht_bound(d.defining_set());
        assert_eq!(c.value, 5);
        assert_eq!(c.witness, Witness::Ht { b: 13, m1: 3, m2: 2, d0: 4, nu: 1 });
        c.replay(d.defining_set()).unwrap();
        let empty = CyclicCode::new(17, 2, &[]).unwrap();
        assert_eq!(ht_bound(empty.defining_set()).value, 1);
    }

    #[test]
    fn rational_example_one() {
        let code = CyclicCode::new(17, 2, &[1]).unwrap();
        let reg = Registry::builtin().prepare(code.family()).unwrap();
        let c = rational_bound(code.defining_set(), &reg);
        assert_eq!(c.value, 5);
        let Witness::Rational { h, b, z1, mu, .. } = &c.witness else { panic!() };
        assert_eq!((h.as_slice(), *b, *z1, *mu), (&[1u64, 1][..], 13, 1, 10));
        c.replay(code.defining_set()).unwrap();
    }

    #[test]
    fn boston_patterns() {
        let expected = [(1, 4), (2, 4), (5, 5), (6, 6), (7, 6), (10, 6)];
        for (pat, (id, df)) in BOSTON_PATTERNS.iter().zip(expected) {
            assert_eq!(pat.id, id);
            // smallest binary defining set at n = 31 containing the pattern
            let d = DefiningSet::from_reps(31, 2, pat.subset).unwrap();
            assert!(pat.applies(&d));
            assert_eq!(pat.rational_value(&d), Some(df));
        }
        let d = DefiningSet::from_reps(33, 2, &[0, 1, 3, 4]).unwrap();
        assert!(!BOSTON_PATTERNS[0].applies(&d));
    }

    #[test]
    fn boston_question() {
        let ex5 = set(20, 3, &[0, 1, 2, 3, 4, 6, 7, 8, 9, 10, 12, 14, 16, 18]);
        assert_eq!(boston_question_bound(&ex5), Some(8));
        let d = DefiningSet::from_reps(7, 2, &[0, 1]).unwrap();
        assert_eq!(d.residues(), vec![0, 1, 2, 4]);
        assert_eq!(boston_question_bound(&d), Some(2));
        let d = DefiningSet::from_reps(13, 3, &[0, 1, 4]).unwrap();
        assert_eq!(boston_question_bound(&d), Some(4));
    }

    #[test]
    fn certificates_round_trip_json() {
        let code = CyclicCode::new(17, 2, &[1]).unwrap();
        let reg = Registry::builtin().prepare(code.family()).unwrap();
        let rep = BoundsReport::compute(code.defining_set(), &reg);
        for c in rep.certificates() {
            let s = serde_json::to_string(c).unwrap();
            assert_eq!(&serde_json::from_str::<BoundCertificate>(&s).unwrap(), c);
        }
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let fam = CodeFamily::new(17, 2).unwrap();
        let code = fam.build(&[1]);
        let reg = Registry::builtin().prepare(&fam).unwrap();
        let mut c = rational_bound(code.defining_set(), &reg);
        c.value += 1;
        assert!(c.replay(code.defining_set()).is_err());
        let mut c = ht_bound(code.defining_set());
        if let Witness::Ht { m2, .. } = &mut c.witness {
            *m2 = 1;
        }
        assert!(c.replay(code.defining_set()).is_err());
    }
}
