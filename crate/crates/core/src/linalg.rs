//! Row echelon forms over `F_p`, with polynomials as sparse vectors indexed
//! by monomials.

use std::collections::HashMap;

use crate::polyring::{Monomial, PolyOp, Polynomial};

/// Echelon basis: monic rows with pairwise distinct leading monomials.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<Polynomial>,
    pivots: HashMap<Monomial, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    /// Reduces `v` against the pivots; returns the residue (zero iff `v` is
    /// in the span).
    pub fn residue(&self, v: &Polynomial) -> Polynomial {
        let mut v = v.clone();
        while let Some(t) = v.lt() {
            match self.pivots.get(&t.mono) {
                Some(&i) => {
                    let c = t.coeff;
                    v = v
                        .arith(&self.rows[i].scale(c), PolyOp::Sub)
                        .expect("same ring");
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Polynomial) -> bool {
        let v = self.residue(v);
        if v.is_zero() {
            return false;
        }
        self.pivots.insert(v.lm().clone(), self.rows.len());
        self.rows.push(v.monic());
        true
    }
}
