use std::collections::HashMap;
use std::sync::Arc;

use super::gf::{FieldElement, FiniteField};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Preimage tables are built when the small field has at most this order.
const PREIMAGE_LIMIT: u64 = 1 << 16;

/// Field homomorphism GF(p^a) -> GF(p^b) for `a | b`.
///
/// The image of the small field's generator `x` is the smallest-index root
/// of the small modulus in the big field, so the map is deterministic.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Arc<FiniteField>,
    big: Arc<FiniteField>,
    basis: Vec<FieldElement>,
    preimage: Option<HashMap<FieldElement, FieldElement>>,
}

impl Embedding {
    pub fn new(small: Arc<FiniteField>, big: Arc<FiniteField>) -> Result<Self> {
        if small.characteristic() != big.characteristic() || !big.degree().is_multiple_of(small.degree()) {
            return Err(Error::IncompatibleFields(format!(
                "GF({}^{}) does not embed in GF({}^{})",
                small.characteristic(),
                small.degree(),
                big.characteristic(),
                big.degree()
            )));
        }
        let basis = if small.degree() == 1 {
            vec![FieldElement::ONE]
        } else if *small == *big {
            // identity: the generator maps to itself
            let x = big.from_coords(&[0, 1]);
            let mut basis = vec![FieldElement::ONE];
            for _ in 1..small.degree() {
                basis.push(big.mul(*basis.last().unwrap(), x));
            }
            basis
        } else {
            let modulus = Poly::from_ints(
                &big,
                &small.modulus().iter().map(|&c| c as i64).collect::<Vec<_>>(),
            );
            let theta = big
                .subfield_elements(small.degree())?
                .into_iter()
                .filter(|&x| modulus.eval(x, &big).is_zero())
                .min()
                .ok_or_else(|| Error::Consistency("small modulus has no root in big field".into()))?;
            let mut basis = Vec::with_capacity(small.degree() as usize);
            let mut pw = FieldElement::ONE;
            for _ in 0..small.degree() {
                basis.push(pw);
                pw = big.mul(pw, theta);
            }
            basis
        };
        Ok(Self::from_basis(small, big, basis))
    }

    fn from_basis(small: Arc<FiniteField>, big: Arc<FiniteField>, basis: Vec<FieldElement>) -> Self {
        let mut e = Embedding { small, big, basis, preimage: None };
        if e.small.order() <= PREIMAGE_LIMIT {
            e.preimage = Some(e.small.elements().map(|a| (e.apply(a), a)).collect());
        }
        e
    }

    pub fn identity(field: Arc<FiniteField>) -> Self {
        Self::new(field.clone(), field).expect("a field embeds in itself")
    }

    pub fn small(&self) -> &Arc<FiniteField> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FiniteField> {
        &self.big
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        if self.small.degree() == 1 {
            return a;
        }
        let mut acc = FieldElement::ZERO;
        for (c, &b) in self.small.coords(a).into_iter().zip(&self.basis) {
            if c != 0 {
                acc = self.big.add(acc, self.big.mul(self.big.from_int(c as i64), b));
            }
        }
        acc
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        p.map(|c| self.apply(c))
    }

    /// Inverse image, if `b` lies in the image of the small field.
    pub fn preimage(&self, b: FieldElement) -> Option<FieldElement> {
        if self.small.degree() == 1 {
            return (b.index() < self.small.order()).then_some(b);
        }
        match &self.preimage {
            Some(map) => map.get(&b).copied(),
            None => self.small.elements().find(|&a| self.apply(a) == b),
        }
    }

    /// Composition `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if *self.big != *next.small {
            return Err(Error::IncompatibleFields("embeddings do not compose".into()));
        }
        let basis = self.basis.iter().map(|&b| next.apply(b)).collect();
        Ok(Self::from_basis(self.small.clone(), next.big.clone(), basis))
    }
}
