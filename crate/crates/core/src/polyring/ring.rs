use std::fmt;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use crate::config::Config;
use crate::error::{Error, Result};

struct RingData {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    config: Config,
}

/// `F_p[x_1, ..., x_n]` together with its active monomial order and engine
/// limits. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Precondition(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingData {
            field,
            vars,
            order,
            config: Config::default(),
        })))
    }

    pub fn with_config(&self, config: Config) -> Ring {
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            order: self.0.order.clone(),
            config,
        }))
    }

    /// Same variables and field under another monomial order.
    pub fn with_order(&self, order: &MonomialOrder) -> Ring {
        if &self.0.order == order {
            return self.clone();
        }
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            order: order.clone(),
            config: self.0.config.clone(),
        }))
    }

    /// A ring with one extra variable in front, ordered by `order`.
    pub(crate) fn with_prepended_variable(&self, name: &str, order: MonomialOrder) -> Ring {
        let mut vars = Vec::with_capacity(self.0.vars.len() + 1);
        let mut name = name.to_string();
        while self.0.vars.contains(&name) {
            name.push('_');
        }
        vars.push(name);
        vars.extend(self.0.vars.iter().cloned());
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars,
            order,
            config: self.0.config.clone(),
        }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.0.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn config(&self) -> &Config {
        &self.0.config
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    pub fn monomial(&self, c: i64, m: Monomial) -> Polynomial {
        Polynomial::from_terms(self, [(self.0.field.from_i64(c), m)])
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(1, Monomial::variable(self.nvars(), i))
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn poly(&self, terms: &[(i64, &[u32])]) -> Result<Polynomial> {
        let mut out = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            if e.len() != self.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: self.nvars(),
                    found: e.len(),
                });
            }
            out.push((self.0.field.from_i64(*c), Monomial::new(e.iter().copied())));
        }
        Ok(Polynomial::from_terms(self, out))
    }

    /// Parses polynomial text such as `3*s^2*x*y^4 - (x+y)^2`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text, &|_| None)
    }

    /// Like [`Ring::parse`], resolving unknown identifiers through `lookup`.
    pub fn parse_with(
        &self,
        text: &str,
        lookup: &dyn Fn(&str) -> Option<Polynomial>,
    ) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text, lookup)
    }

    /// Same field and variables, ignoring the order.
    pub fn same_variables(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.vars == other.0.vars
                && self.0.order == other.0.order)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}] ({})",
            self.characteristic(),
            self.0.vars.join(","),
            self.0.order
        )
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
