//! Finite fields, polynomials over them, and subfield embeddings.

mod embed;
mod gf;
mod poly;

pub use embed::Embedding;
pub use gf::{FieldElement, FiniteField, TABLE_LIMIT};
pub use poly::{cmp_degree, eea_steps, poly_eea, poly_roots, Degree, EeaStep, Poly};

use crate::error::{Error, Result};
use crate::numth;

/// Smallest `s` with `n | q^s - 1`.
pub fn minimal_splitting_degree(n: u64, q: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Invalid("length must be positive".into()));
    }
    numth::multiplicative_order(q, n)
        .map(|s| s as u32)
        .ok_or(Error::LengthSharesFactor { n, q })
}

/// Degree over GF(q) of the smallest extension in which `f` (over GF(q))
/// splits into linear factors. Extensions are searched by exhaustive root
/// scanning, so their order is limited to `2^24`.
pub fn splitting_degree(f: &Poly, base: &std::sync::Arc<FiniteField>) -> Result<u32> {
    let target = f.degree().finite().ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    if target == 0 {
        return Ok(1);
    }
    let (p, e) = (base.characteristic(), base.degree());
    for d in 1.. {
        let big = std::sync::Arc::new(FiniteField::new(p, e * d)?);
        if big.order() > 1 << 24 {
            return Err(Error::FieldTooLarge { p, degree: e * d });
        }
        let emb = Embedding::new(base.clone(), big.clone())?;
        let mut rest = emb.apply_poly(f);
        let mut count = 0;
        for root in poly_roots(&rest.clone(), &big) {
            let lin = Poly::new(vec![big.neg(root), FieldElement::ONE]);
            loop {
                let (quot, rem) = rest.div_rem(&lin, &big);
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                count += 1;
            }
        }
        if count == target {
            return Ok(d);
        }
    }
    unreachable!()
}
