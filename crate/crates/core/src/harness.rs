//! Ground-truth oracles: brute-force minimum distance, exhaustive decoder
//! verification and the per-length statistics tabulator.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bch_bound, rational_bound_value};
use crate::code::{is_symmetric_reversible_length, CodeFamily, CyclicCode};
use crate::decoder::DecoderContext;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::series::Registry;

/// Default number of codewords `true_distance` is willing to enumerate.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Message-space chunks handed to worker threads.
const MIN_CHUNKS: u128 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Distance {
    Exact { d: u64 },
    /// `q^k` codewords exceed the budget.
    OverBudget { codewords: Option<u128> },
}

impl Distance {
    pub fn exact(self) -> Option<u64> {
        match self {
            Distance::Exact { d } => Some(d),
            Distance::OverBudget { .. } => None,
        }
    }
}

/// `q^k`, or `None` on overflow.
pub fn codeword_count(code: &CyclicCode) -> Option<u128> {
    (code.q() as u128).checked_pow(code.k() as u32)
}

/// Minimum Hamming weight over all nonzero codewords, enumerated in a
/// p-ary Gray order so each step adds one generator to the running word.
pub fn true_distance(code: &CyclicCode, budget: u128) -> Result<Distance> {
    if code.k() == 0 {
        return Err(Error::Invalid("the zero code has no minimum distance".into()));
    }
    let count = codeword_count(code);
    if count.is_none_or(|c| c > budget) {
        return Ok(Distance::OverBudget { codewords: count });
    }
    let n = code.n() as usize;
    let base = code.base();
    let rows = code.generator_matrix();
    let d = if base.order() == 2 && n <= 128 {
        let gens: Vec<u128> = rows.iter().map(|r| pack_bits(r.iter().map(|c| !c.is_zero()))).collect();
        gray_min(&gens, 2, 0u128, |w, g| *w ^= g, |w| w.count_ones())
    } else if base.order() == 3 && n <= 64 {
        let gens: Vec<Trits> = rows.iter().map(|r| Trits::from_row(r)).collect();
        gray_min(&gens, 3, Trits::default(), |w, g| w.add_assign(g), |w| w.weight())
    } else {
        // GF(p^e) as a GF(p)-space: generators are coordinate multiples of rows
        let p = base.characteristic();
        let scalars: Vec<FieldElement> = (0..base.degree() as usize)
            .map(|j| {
                let mut c = vec![0u64; j + 1];
                c[j] = 1;
                base.from_coords(&c)
            })
            .collect();
        let gens: Vec<Vec<FieldElement>> = rows
            .iter()
            .flat_map(|r| scalars.iter().map(move |&s| r.iter().map(|&c| base.mul(s, c)).collect()))
            .collect();
        gray_min(
            &gens,
            p,
            vec![FieldElement::ZERO; n],
            |w, g| {
                for (a, &b) in w.iter_mut().zip(g) {
                    *a = base.add(*a, b);
                }
            },
            |w| w.iter().filter(|c| !c.is_zero()).count() as u32,
        )
    };
    Ok(Distance::Exact { d: d as u64 })
}

fn pack_bits(bits: impl Iterator<Item = bool>) -> u128 {
    bits.enumerate().fold(0, |acc, (i, b)| acc | ((b as u128) << i))
}

/// GF(3) vector as masks of the positions holding 1 and 2.
#[derive(Clone, Copy, Debug, Default)]
struct Trits {
    one: u64,
    two: u64,
}

impl Trits {
    fn from_row(row: &[FieldElement]) -> Self {
        let mut t = Trits::default();
        for (i, c) in row.iter().enumerate() {
            match c.index() {
                1 => t.one |= 1 << i,
                2 => t.two |= 1 << i,
                _ => {}
            }
        }
        t
    }

    fn add_assign(&mut self, g: &Trits) {
        let zero_a = !(self.one | self.two);
        let zero_b = !(g.one | g.two);
        let one = (zero_a & g.one) | (self.one & zero_b) | (self.two & g.two);
        let two = (zero_a & g.two) | (self.two & zero_b) | (self.one & g.one);
        self.one = one;
        self.two = two;
    }

    fn weight(&self) -> u32 {
        (self.one | self.two).count_ones()
    }
}

/// Minimum nonzero weight of all GF(p)-combinations of `gens`. The top
/// digits select a parallel chunk; the low digits follow the modular Gray
/// code, where step `i` adds the generator at position `v_p(i)`.
fn gray_min<W, A, F>(gens: &[W], p: u64, zero: W, add: A, weight: F) -> u32
where
    W: Clone + Send + Sync,
    A: Fn(&mut W, &W) + Sync,
    F: Fn(&W) -> u32 + Sync,
{
    let digits = gens.len();
    let p128 = p as u128;
    let mut top = 0;
    while top < digits && p128.pow(top as u32) < MIN_CHUNKS {
        top += 1;
    }
    let low = digits - top;
    let (low_gens, high_gens) = gens.split_at(low);
    let chunks = p128.pow(top as u32);
    let steps = p128.pow(low as u32);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut w = zero.clone();
            let mut rest = c;
            for g in high_gens {
                for _ in 0..rest % p128 {
                    add(&mut w, g);
                }
                rest /= p128;
            }
            let mut best = match weight(&w) {
                0 => u32::MAX,
                x => x,
            };
            // base-p counter of the step number; the carry stops at v_p(i)
            let mut counter = vec![0u64; low + 1];
            for _ in 1..steps {
                let mut j = 0;
                counter[0] += 1;
                while counter[j] == p {
                    counter[j] = 0;
                    j += 1;
                    counter[j] += 1;
                }
                add(&mut w, &low_gens[j]);
                let x = weight(&w);
                if x != 0 && x < best {
                    best = x;
                }
            }
            best
        })
        .min()
        .unwrap_or(u32::MAX)
}

/// Which codewords the decoder test transmits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codewords {
    /// Every codeword; refused when `q^k` exceeds the budget.
    All { budget: u128 },
    /// Uniformly random messages.
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeFailureCase {
    pub codeword: Vec<u64>,
    pub error: Vec<u64>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeTestReport {
    pub codewords: u64,
    /// Nonzero error patterns of weight at most `max_weight`.
    pub patterns: u64,
    pub max_weight: usize,
    /// Decoder invocations, including each uncorrupted codeword.
    pub trials: u64,
    pub failures: u64,
    /// Up to ten failing cases.
    pub examples: Vec<DecodeFailureCase>,
    pub elapsed: Duration,
}

/// Every error pattern of weight `1..=max_weight` with all nonzero values,
/// as `(positions, values)`.
pub fn error_patterns(n: usize, q: u64, max_weight: usize) -> Vec<(Vec<usize>, Vec<u64>)> {
    let mut out = Vec::new();
    for w in 1..=max_weight.min(n) {
        let mut pos: Vec<usize> = (0..w).collect();
        loop {
            let mut vals = vec![1u64; w];
            loop {
                out.push((pos.clone(), vals.clone()));
                let Some(i) = vals.iter().position(|&v| v + 1 < q) else { break };
                vals[i] += 1;
                vals[..i].fill(1);
            }
            // next combination
            let Some(i) = (0..w).rev().find(|&i| pos[i] < n - w + i) else { break };
            pos[i] += 1;
            for j in i + 1..w {
                pos[j] = pos[j - 1] + 1;
            }
        }
    }
    out
}

/// Message number `idx` in base-`q` digits, least significant first.
pub fn message_from_index(mut idx: u128, k: usize, field: &FiniteField) -> Vec<FieldElement> {
    let q = field.order() as u128;
    (0..k)
        .map(|_| {
            let d = (idx % q) as u64;
            idx /= q;
            field.element(d).expect("digit below the field order")
        })
        .collect()
}

/// Corrupts codewords with every error pattern of weight up to
/// `max_weight` (the decoding radius by default) and counts the cases that
/// do not decode back to the transmitted codeword.
pub fn exhaustive_decode_test(
    ctx: &DecoderContext,
    codewords: Codewords,
    max_weight: Option<usize>,
) -> Result<DecodeTestReport> {
    let start = Instant::now();
    let code = ctx.code();
    let (n, k, q) = (code.n() as usize, code.k() as usize, code.q());
    let base = code.base();
    let messages: Vec<Vec<FieldElement>> = match codewords {
        Codewords::All { budget } => {
            let count = codeword_count(code).filter(|&c| c <= budget).ok_or_else(|| {
                Error::Invalid(format!("{q}^{k} codewords exceed the budget {budget}; use sampling"))
            })?;
            (0..count).map(|i| message_from_index(i, k, base)).collect()
        }
        Codewords::Sample { count, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..count).map(|_| (0..k).map(|_| base.random(&mut rng)).collect()).collect()
        }
    };
    let max_weight = max_weight.unwrap_or(ctx.t_max());
    let patterns = error_patterns(n, q, max_weight);
    let outcomes: Vec<(u64, Vec<DecodeFailureCase>)> = messages
        .par_iter()
        .map(|m| {
            let c: Vec<u64> = code.encode(m).iter().map(|x| x.index()).collect();
            let mut fails = 0u64;
            let mut examples = Vec::new();
            let mut check = |r: Vec<u64>, e: Vec<u64>| {
                let reason = match ctx.decode(&r) {
                    Ok(res) if res.corrected.as_deref() == Some(&c[..]) => return,
                    Ok(res) => res.reason.unwrap_or_else(|| "decoded to a different codeword".into()),
                    Err(err) => err.to_string(),
                };
                fails += 1;
                if examples.len() < 10 {
                    examples.push(DecodeFailureCase { codeword: c.clone(), error: e, reason });
                }
            };
            check(c.clone(), vec![0; n]);
            for (pos, vals) in &patterns {
                let mut e = vec![0u64; n];
                let mut r = c.clone();
                for (&i, &v) in pos.iter().zip(vals) {
                    e[i] = v;
                    r[i] = base.add(base.element(r[i]).unwrap(), base.element(v).unwrap()).index();
                }
                check(r, e);
            }
            (fails, examples)
        })
        .collect();
    let mut failures = 0;
    let mut examples = Vec::new();
    for (f, ex) in outcomes {
        failures += f;
        examples.extend(ex);
    }
    examples.truncate(10);
    Ok(DecodeTestReport {
        codewords: messages.len() as u64,
        patterns: patterns.len() as u64,
        max_weight,
        trials: messages.len() as u64 * (patterns.len() as u64 + 1),
        failures,
        examples,
        elapsed: start.elapsed(),
    })
}

/// Counts of the distance-dependent columns over the codes whose true
/// distance was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCounts {
    pub bch_lt_d: u64,
    pub df_lt_d: u64,
}

/// Statistics for all cyclic codes of one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub q: u64,
    /// All coset unions, including the zero and full codes.
    pub codes: u128,
    pub df_gt_bch: u64,
    /// Over codes with `1 <= k <= n-1` whose distance fit the budget; `None`
    /// when no such code did.
    pub distance: Option<DistanceCounts>,
    /// Codes with `1 <= k <= n-1`.
    pub nontrivial: u64,
    /// Nontrivial codes whose distance was computed.
    pub feasible: u64,
    pub symmetric_reversible: bool,
}

impl TableRow {
    /// Some nontrivial code exceeded the distance budget.
    pub fn skipped(&self) -> bool {
        self.feasible < self.nontrivial
    }

    pub fn flags(&self) -> String {
        let mut f = Vec::new();
        if self.symmetric_reversible {
            f.push("star".to_string());
        }
        if self.skipped() {
            f.push(format!("skipped:{}/{}", self.nontrivial - self.feasible, self.nontrivial));
        }
        f.join(";")
    }

    /// One CSV record; distance columns are `-` when the row is skipped.
    pub fn csv_record(&self) -> String {
        let cell = |v: Option<u64>| match v {
            Some(x) if !self.skipped() => x.to_string(),
            _ => "-".to_string(),
        };
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.codes,
            cell(self.distance.map(|d| d.bch_lt_d)),
            self.df_gt_bch,
            cell(self.distance.map(|d| d.df_lt_d)),
            self.flags()
        )
    }
}

pub const CSV_HEADER: &str = "n,codes,bch_lt_d,df_gt_bch,df_lt_d,flags";

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_record());
        s.push('\n');
    }
    s
}

struct CodeStats {
    bch: u64,
    df: u64,
    d: Option<u64>,
}

/// Which registry candidates the tabulated rational bound may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyRule {
    /// BCH plus the first family with a candidate valid at the length, so
    /// the period-4 fractions only stand in where period 3 is excluded.
    #[default]
    FirstValid,
    /// Every valid candidate.
    All,
}

/// One row per length: code count, how often the BCH bound is below the
/// true distance, how often the rational bound beats BCH and how often it
/// is below the true distance.
pub fn tabulate(lengths: &[u64], q: u64, registry: &Registry, rule: FamilyRule, budget: u128) -> Result<Vec<TableRow>> {
    lengths.iter().map(|&n| tabulate_length(n, q, registry, rule, budget)).collect()
}

pub fn tabulate_length(n: u64, q: u64, registry: &Registry, rule: FamilyRule, budget: u128) -> Result<TableRow> {
    let family = CodeFamily::new(n, q)?;
    let prepared = registry.prepare(&family)?;
    let prepared = match rule {
        FamilyRule::FirstValid => prepared.first_family(),
        FamilyRule::All => prepared,
    };
    if family.cosets().len() >= 128 {
        return Err(Error::Invalid(format!("length {n} has too many cyclotomic cosets to enumerate")));
    }
    let stats: Vec<Option<CodeStats>> = (0..family.code_count())
        .into_par_iter()
        .map(|mask| -> Result<Option<CodeStats>> {
            let code = family.code_at(mask);
            if code.k() == 0 || code.k() == n {
                return Ok(None);
            }
            let d = code.defining_set();
            let bch = bch_bound(d).value;
            let df = rational_bound_value(d, &prepared);
            let d = true_distance(&code, budget)?.exact();
            Ok(Some(CodeStats { bch, df, d }))
        })
        .collect::<Result<_>>()?;
    let mut row = TableRow {
        n,
        q,
        codes: family.code_count(),
        df_gt_bch: 0,
        distance: None,
        nontrivial: 0,
        feasible: 0,
        symmetric_reversible: is_symmetric_reversible_length(n, q),
    };
    let mut counts = DistanceCounts { bch_lt_d: 0, df_lt_d: 0 };
    for s in stats.into_iter().flatten() {
        row.nontrivial += 1;
        row.df_gt_bch += (s.df > s.bch) as u64;
        if let Some(d) = s.d {
            row.feasible += 1;
            counts.bch_lt_d += (s.bch < d) as u64;
            counts.df_lt_d += (s.df < d) as u64;
        }
    }
    if row.feasible > 0 {
        row.distance = Some(counts);
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_of_small_codes() {
        let c17 = CyclicCode::new(17, 2, &[1]).unwrap();
        assert_eq!(true_distance(&c17, DEFAULT_BUDGET).unwrap(), Distance::Exact { d: 5 });
        // repetition code of length 3
        let rep = CyclicCode::new(3, 2, &[1]).unwrap();
        assert_eq!(rep.k(), 1);
        assert_eq!(true_distance(&rep, DEFAULT_BUDGET).unwrap().exact(), Some(3));
        let hamming = CyclicCode::new(7, 2, &[1]).unwrap();
        assert_eq!(true_distance(&hamming, DEFAULT_BUDGET).unwrap().exact(), Some(3));
        let c45 = CyclicCode::new(45, 2, &[-5, -3, 3, 5]).unwrap();
        assert_eq!(c45.k(), 31);
        assert!(matches!(true_distance(&c45, DEFAULT_BUDGET).unwrap(), Distance::OverBudget { .. }));
    }

    #[test]
    fn kernels_agree_with_plain_enumeration() {
        for (n, q, reps) in [(13u64, 3u64, vec![1i64]), (11, 3, vec![1]), (15, 2, vec![1, 5]), (5, 4, vec![1]), (8, 3, vec![1])] {
            let code = CyclicCode::new(n, q, &reps).unwrap();
            let base = code.base();
            let mut best = u64::MAX;
            for i in 1..codeword_count(&code).unwrap() {
                let w = code.encode(&message_from_index(i, code.k() as usize, base));
                let wt = w.iter().filter(|c| !c.is_zero()).count() as u64;
                best = best.min(wt);
                assert!(w.iter().all(|c| c.index() < base.order()));
            }
            assert_eq!(true_distance(&code, DEFAULT_BUDGET).unwrap().exact(), Some(best), "n={n} q={q}");
        }
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(error_patterns(17, 2, 2).len(), 153);
        assert_eq!(error_patterns(13, 3, 2).len(), 13 * 2 + 78 * 4);
        assert!(error_patterns(5, 2, 0).is_empty());
    }

    #[test]
    fn decoder_radius_on_small_binary_code() {
        let code = CyclicCode::new(17, 2, &[1]).unwrap();
        let reg = Registry::builtin().prepare(code.family()).unwrap();
        let ctx = DecoderContext::best(&code, &reg).unwrap();
        let rep = exhaustive_decode_test(&ctx, Codewords::Sample { count: 20, seed: 1 }, None).unwrap();
        assert_eq!((rep.patterns, rep.failures), (153, 0));
    }

    #[test]
    fn radius_zero_passes_codewords_through() {
        let code = CyclicCode::new(7, 2, &[3]).unwrap();
        let reg = Registry::bch_only().prepare(code.family()).unwrap();
        let ctx = DecoderContext::best(&code, &reg).unwrap();
        assert_eq!(ctx.t_max(), 1);
        let code = CyclicCode::new(7, 2, &[0]).unwrap();
        let reg = Registry::bch_only().prepare(code.family()).unwrap();
        let ctx = DecoderContext::best(&code, &reg).unwrap();
        assert_eq!(ctx.t_max(), 0);
        let rep = exhaustive_decode_test(&ctx, Codewords::All { budget: DEFAULT_BUDGET }, None).unwrap();
        assert_eq!((rep.codewords, rep.patterns, rep.failures), (64, 0, 0));
    }

    #[test]
    fn small_rows() {
        let reg = Registry::tabulation();
        let row = tabulate_length(15, 2, &reg, FamilyRule::FirstValid, DEFAULT_BUDGET).unwrap();
        assert_eq!(row.csv_record(), "15,32,2,2,0,");
        let row = tabulate_length(17, 2, &reg, FamilyRule::FirstValid, DEFAULT_BUDGET).unwrap();
        assert_eq!(row.csv_record(), "17,8,2,2,0,star");
        let row = tabulate_length(15, 2, &reg, FamilyRule::FirstValid, 1 << 8).unwrap();
        assert!(row.skipped());
        assert!(row.csv_record().starts_with("15,32,-,2,-,skipped:"));
    }
}
