use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial order. Variables are prioritized by index: variable 0 is the
/// largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Lex on the first `elim` variables, then `inner` on the remaining ones.
    Block {
        elim: usize,
        inner: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order for the first `elim` variables.
    pub fn elimination(elim: usize, inner: MonomialOrder) -> Self {
        MonomialOrder::Block {
            elim,
            inner: Box::new(inner),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_exponents(self, a.exponents(), b.exponents())
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

fn cmp_exponents(order: &MonomialOrder, a: &[u32], b: &[u32]) -> Ordering {
    match order {
        MonomialOrder::Lex => a.cmp(b),
        MonomialOrder::DegRevLex => {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
        }
        MonomialOrder::Block { elim, inner } => {
            let k = (*elim).min(a.len());
            a[..k]
                .cmp(&b[..k])
                .then_with(|| cmp_exponents(inner, &a[k..], &b[k..]))
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Block { elim, inner } => write!(f, "block({elim},{inner})"),
        }
    }
}

/// Compares two monomials under `ord`, checking their lengths agree.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::DimensionMismatch {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn lex_s_beats_any_power_of_x() {
        // variables s > x > y
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 200, 0])), Ordering::Greater);
        assert_eq!(lex.cmp(&m(&[0, 3, 1]), &m(&[0, 2, 5])), Ordering::Greater);
        assert_eq!(lex.cmp(&m(&[0, 3, 1]), &m(&[0, 3, 1])), Ordering::Equal);
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 2, 0])), Ordering::Less);
        // x*z < y^2 in degrevlex (x > y > z)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(
            compare_monomials(&m(&[1, 2]), &m(&[1, 2, 3]), &MonomialOrder::Lex),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::DegRevLex,
            MonomialOrder::elimination(1, MonomialOrder::DegRevLex),
            MonomialOrder::elimination(2, MonomialOrder::Lex),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(a in prop::collection::vec(0u32..6, 4),
                        b in prop::collection::vec(0u32..6, 4),
                        c in prop::collection::vec(0u32..6, 4)) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            let one = Monomial::one(4);
            for ord in orders() {
                let ab = ord.cmp(&a, &b);
                prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(ord.cmp(&a, &one), Ordering::Less);
                if ab != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
