//! Ideal algebra in `k[vars]/(quotient)`: sums, products, powers,
//! intersections and colons.
//!
//! Everything is computed in the ambient polynomial ring with the quotient
//! relations added, then generators are reduced modulo the relations.

use std::sync::Arc;

use crate::error::IdealError;
use crate::groebner::{buchberger, combined_basis, length_of_basis, reduce, GroebnerBasis, Length};
use crate::poly::{MonomialOrder, Polynomial};
use crate::ring::PolyRing;

/// Generator count above which products and powers drop redundant generators.
pub const DEFAULT_INTERREDUCE_THRESHOLD: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineKind {
    Sum,
    Product,
}

#[derive(Clone, Debug)]
pub struct Ideal {
    gens: Vec<Polynomial>,
    ring: Arc<PolyRing>,
    unit: bool,
}

/// Equality of generator sets, ignoring their order.
impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.gens.len() == other.gens.len()
            && self.gens.iter().all(|g| other.gens.contains(g))
            && self.unit == other.unit
            && same_ring(&self.ring, &other.ring)
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Normalizes to primitive integer form and removes duplicates, keeping the
/// first occurrence.
fn normalize_gens(ring: &PolyRing, gens: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.with_order(ring.order());
        if g.is_zero() {
            continue;
        }
        let g = g.primitive_integer();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

impl Ideal {
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self, IdealError> {
        if let Some(g) = gens.iter().find(|g| g.arity() != ring.arity()) {
            return Err(crate::error::PolyError::ArityMismatch(ring.arity(), g.arity()).into());
        }
        let gens = normalize_gens(&ring, gens);
        if gens.is_empty() {
            return Err(IdealError::Empty);
        }
        let unit = gens.iter().any(Polynomial::is_unit);
        Ok(Ideal { gens, ring, unit })
    }

    pub fn parse(ring: Arc<PolyRing>, srcs: &[&str]) -> Result<Self, IdealError> {
        let gens = srcs
            .iter()
            .map(|s| ring.parse_poly(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: Arc<PolyRing>) -> Self {
        let gens = ring.maximal_ideal_gens();
        Ideal {
            gens,
            ring,
            unit: false,
        }
    }

    fn unit_ideal(ring: Arc<PolyRing>) -> Self {
        let one = Polynomial::one(ring.arity(), ring.order());
        Ideal {
            gens: vec![one],
            ring,
            unit: true,
        }
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Set when the ideal was detected to contain a unit of the quotient ring.
    pub fn is_unit(&self) -> bool {
        self.unit
    }

    /// Gröbner basis of `quotient + self`.
    pub fn basis(&self) -> Result<GroebnerBasis, IdealError> {
        Ok(combined_basis(&self.ring, &self.gens)?)
    }

    pub fn length(&self) -> Result<Length, IdealError> {
        Ok(length_of_basis(&self.basis()?, self.ring.arity()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.basis()?.contains(&f.with_order(self.ring.order())))
    }

    /// `self ⊆ other` in the quotient ring.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool, IdealError> {
        let basis = other.basis()?;
        Ok(self.gens.iter().all(|g| basis.contains(g)))
    }

    pub fn format(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }

    fn check_ring(&self, other: &Ideal) -> Result<(), IdealError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(IdealError::RingMismatch)
        }
    }
}

fn quotient_basis(ring: &PolyRing) -> Result<Option<GroebnerBasis>, IdealError> {
    if ring.quotient().is_empty() {
        return Ok(None);
    }
    Ok(Some(buchberger(ring.quotient(), ring.order())?))
}

/// Reduces generators modulo the ring relations and normalizes them.
fn into_ring(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Vec<Polynomial>, IdealError> {
    let gens = match quotient_basis(ring)? {
        Some(qb) => gens.iter().map(|g| reduce(g, qb.gens())).collect(),
        None => gens,
    };
    Ok(normalize_gens(ring, gens))
}

/// Drops generators lying in the ideal of the relations and the remaining
/// generators, once there are more than `threshold` of them.
fn interreduce(ring: &PolyRing, mut gens: Vec<Polynomial>, threshold: usize) -> Vec<Polynomial> {
    if gens.len() <= threshold {
        return gens;
    }
    let mut k = gens.len();
    while k > 0 {
        k -= 1;
        let lm = gens[k].leading_monomial().unwrap().clone();
        let divisible = gens
            .iter()
            .enumerate()
            .any(|(i, g)| i != k && g.leading_monomial().unwrap().divides(&lm))
            || ring
                .quotient()
                .iter()
                .any(|g| g.leading_monomial().is_some_and(|l| l.divides(&lm)));
        if !divisible {
            continue;
        }
        let others: Vec<Polynomial> = ring
            .quotient()
            .iter()
            .cloned()
            .chain(gens.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()))
            .collect();
        if reduce(&gens[k], &others).is_zero() {
            gens.remove(k);
        }
    }
    gens
}

pub fn ideal_combine(kind: CombineKind, a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    combine_with_threshold(kind, a, b, DEFAULT_INTERREDUCE_THRESHOLD)
}

pub fn combine_with_threshold(
    kind: CombineKind,
    a: &Ideal,
    b: &Ideal,
    threshold: usize,
) -> Result<Ideal, IdealError> {
    a.check_ring(b)?;
    let ring = a.ring.clone();
    if kind == CombineKind::Product && a.unit {
        return Ok(b.clone());
    }
    if kind == CombineKind::Product && b.unit {
        return Ok(a.clone());
    }
    let raw: Vec<Polynomial> = match kind {
        CombineKind::Sum => a.gens.iter().chain(&b.gens).cloned().collect(),
        CombineKind::Product => {
            let mut out = Vec::with_capacity(a.gens.len() * b.gens.len());
            for f in &a.gens {
                for g in &b.gens {
                    out.push(f.mul(g)?);
                }
            }
            out
        }
    };
    let gens = into_ring(&ring, raw)?;
    let gens = interreduce(&ring, gens, threshold);
    if gens.is_empty() {
        return Err(IdealError::Empty);
    }
    let unit = a.unit && kind == CombineKind::Sum
        || b.unit && kind == CombineKind::Sum
        || gens.iter().any(Polynomial::is_unit);
    Ok(Ideal { gens, ring, unit })
}

/// `a^k`, generated by all products of `k` generators taken with repetition.
pub fn ideal_power(a: &Ideal, k: u32) -> Result<Ideal, IdealError> {
    power_with_threshold(a, k, DEFAULT_INTERREDUCE_THRESHOLD)
}

pub fn power_with_threshold(a: &Ideal, k: u32, threshold: usize) -> Result<Ideal, IdealError> {
    if k == 0 {
        return Err(IdealError::ZeroPower);
    }
    if a.unit {
        return Ok(a.clone());
    }
    // multisets of generator indices, built as non-decreasing sequences
    let n = a.gens.len();
    let mut level: Vec<(usize, Polynomial)> = a
        .gens
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g.clone()))
        .collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for (last, p) in &level {
            for i in *last..n {
                next.push((i, p.mul(&a.gens[i])?));
            }
        }
        level = next;
    }
    let gens = into_ring(&a.ring, level.into_iter().map(|(_, p)| p).collect())?;
    let gens = interreduce(&a.ring, gens, threshold);
    if gens.is_empty() {
        return Err(IdealError::Empty);
    }
    Ok(Ideal {
        gens,
        ring: a.ring.clone(),
        unit: false,
    })
}

/// Intersection of `quotient + f_gens` and `g_gens` (plus `quotient` when
/// `g_with_quotient`) in the ambient polynomial ring, by eliminating an
/// auxiliary variable from `t·F + (1 - t)·G`.
fn intersect_gens(
    ring: &PolyRing,
    f_gens: &[Polynomial],
    g_gens: &[Polynomial],
    g_with_quotient: bool,
) -> Result<Vec<Polynomial>, IdealError> {
    let n = ring.arity();
    let elim = MonomialOrder::Elimination(1);
    let t = Polynomial::var(n + 1, elim, 0);
    let one_minus_t = Polynomial::one(n + 1, elim).sub(&t)?;
    let mut gens = Vec::new();
    for f in ring.quotient().iter().chain(f_gens) {
        gens.push(f.widen_front(1, elim).mul(&t)?);
    }
    let g_rels = if g_with_quotient { ring.quotient() } else { &[] };
    for g in g_rels.iter().chain(g_gens) {
        gens.push(g.widen_front(1, elim).mul(&one_minus_t)?);
    }
    let basis = buchberger(&gens, elim)?;
    Ok(basis
        .gens()
        .iter()
        .filter(|g| g.leading_monomial().unwrap().exponents()[0] == 0)
        .map(|g| g.narrow_front(1, ring.order()))
        .collect())
}

fn finish(ring: Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal, IdealError> {
    let basis = combined_basis(&ring, &gens)?;
    if basis.contains_unit() {
        return Ok(Ideal::unit_ideal(ring));
    }
    let gens = into_ring(&ring, gens)?;
    if gens.is_empty() {
        return Err(IdealError::Empty);
    }
    Ok(Ideal {
        gens,
        ring,
        unit: false,
    })
}

pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    a.check_ring(b)?;
    if a.unit {
        return Ok(b.clone());
    }
    if b.unit {
        return Ok(a.clone());
    }
    let gens = intersect_gens(&a.ring, &a.gens, &b.gens, true)?;
    finish(a.ring.clone(), gens)
}

/// Generators of `(quotient + a) : f` in the ambient ring; `None` means the
/// unit ideal.
fn colon_by_element(
    ring: &PolyRing,
    a: &[Polynomial],
    f: &Polynomial,
) -> Result<Option<Vec<Polynomial>>, IdealError> {
    let basis = combined_basis(ring, a)?;
    if basis.contains(f) {
        return Ok(None);
    }
    let inter = intersect_gens(ring, a, std::slice::from_ref(f), false)?;
    let mut out = Vec::with_capacity(inter.len());
    for g in inter {
        let q = g
            .exact_div(f)?
            .expect("generator of an intersection with (f) must be divisible by f");
        out.push(q);
    }
    Ok(Some(out))
}

/// `a : b = ∩_{f ∈ gens(b)} (a : f)`.
pub fn ideal_colon(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    a.check_ring(b)?;
    let ring = a.ring.clone();
    if a.unit {
        return Ok(Ideal::unit_ideal(ring));
    }
    let mut acc: Option<Vec<Polynomial>> = None;
    for f in &b.gens {
        let Some(part) = colon_by_element(&ring, &a.gens, f)? else {
            continue;
        };
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect_gens(&ring, &prev, &part, true)?,
        });
    }
    match acc {
        None => Ok(Ideal::unit_ideal(ring)),
        Some(gens) => finish(ring, gens),
    }
}
