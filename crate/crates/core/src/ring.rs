//! Ambient ring declarations.

use crate::error::{PolyError, SemigroupError};
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial};
use crate::semigroup::AffineSemigroup;

/// `k[vars] / (quotient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
    quotient: Vec<Polynomial>,
}

impl PolyRing {
    pub fn new(
        vars: Vec<String>,
        order: MonomialOrder,
        quotient: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        order.check_arity(vars.len())?;
        let mut rels = Vec::with_capacity(quotient.len());
        for q in quotient {
            if q.arity() != vars.len() {
                return Err(PolyError::ArityMismatch(vars.len(), q.arity()));
            }
            if !q.is_zero() {
                rels.push(q.with_order(order));
            }
        }
        Ok(PolyRing {
            vars,
            order,
            quotient: rels,
        })
    }

    /// Convenience constructor from variable names and relation strings.
    pub fn parse(vars: &[&str], order: MonomialOrder, quotient: &[&str]) -> Result<Self, PolyError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = quotient
            .iter()
            .map(|s| parse_polynomial(s, &vars, order))
            .collect::<Result<Vec<_>, _>>()?;
        PolyRing::new(vars, order, rels)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn quotient(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn parse_poly(&self, src: &str) -> Result<Polynomial, PolyError> {
        parse_polynomial(src, &self.vars, self.order)
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        Polynomial::var(self.arity(), self.order, i)
    }

    /// Generators of the homogeneous maximal ideal at the origin.
    pub fn maximal_ideal_gens(&self) -> Vec<Polynomial> {
        (0..self.arity()).map(|i| self.variable(i)).collect()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing, PolyError> {
        PolyRing::new(self.vars.clone(), order, self.quotient.clone())
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.display(&self.vars).to_string()
    }
}

/// The declared ambient ring of a job.
#[derive(Clone, Debug)]
pub enum RingSpec {
    Polynomial(PolyRing),
    Semigroup(AffineSemigroup),
}

impl RingSpec {
    pub fn semigroup(dim: usize, gens: Vec<Vec<u32>>) -> Result<Self, SemigroupError> {
        Ok(RingSpec::Semigroup(AffineSemigroup::new(dim, gens)?))
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            RingSpec::Polynomial(_) => "polynomial",
            RingSpec::Semigroup(_) => "semigroup",
        }
    }
}
