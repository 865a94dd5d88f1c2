//! Reduced Gröbner bases, normal forms and standard monomials.
//!
//! Lengths of quotients by ideals supported only at the origin equal the
//! number of standard monomials of the combined ideal; [`is_origin_supported`]
//! checks that the quotient has no other points in its support.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{IdealError, PolyError};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Term};
use crate::ring::PolyRing;

/// A reduced, monic Gröbner basis sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading(&self) -> &[Monomial] {
        &self.leading
    }

    /// Basis of the zero ideal.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        reduce(f, &self.gens).is_zero()
    }
}

/// `rest - factor * m * g` where the leading terms are known to cancel; `rest`
/// and `g` are passed without their leading terms.
fn sub_shifted(
    rest: &[Term],
    factor: &BigRational,
    m: &Monomial,
    g: &[Term],
    order: MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(rest.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut shifted: Option<Monomial> = g.first().map(|(t, _)| t.mul(m));
    while i < rest.len() || shifted.is_some() {
        let ord = match (&shifted, rest.get(i)) {
            (Some(s), Some((r, _))) => order.cmp(r, s),
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(rest[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((shifted.take().unwrap(), -(&g[j].1 * factor)));
                j += 1;
                shifted = g.get(j).map(|(t, _)| t.mul(m));
            }
            Ordering::Equal => {
                let c = &rest[i].1 - &g[j].1 * factor;
                if !c.is_zero() {
                    out.push((shifted.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|(t, _)| t.mul(m));
            }
        }
    }
    out
}

/// Full reduction of `f` by a list of divisors (multivariate division).
///
/// The remainder has no monomial divisible by a leading monomial of any
/// divisor. When `divisors` is a Gröbner basis this is the normal form.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let order = divisors.first().map_or(f.order(), Polynomial::order);
    let f = f.with_order(order);
    let mut rest: Vec<Term> = f.terms().to_vec();
    let mut rem: Vec<Term> = Vec::new();
    let mut start = 0;
    while start < rest.len() {
        let (m, c) = &rest[start];
        let hit = divisors.iter().find(|g| {
            g.leading_monomial()
                .is_some_and(|lm| lm.divides(m))
        });
        match hit {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let q = lm.quotient_of(m);
                let factor = c / lc;
                rest = sub_shifted(&rest[start + 1..], &factor, &q, &g.terms()[1..], order);
                start = 0;
            }
            None => {
                rem.push(rest[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(f.arity(), order, rem)
}

/// Normal form of `f` modulo the ideal with Gröbner basis `basis`.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, PolyError> {
    if let Some(g) = basis.gens.first() {
        if g.arity() != f.arity() {
            return Err(PolyError::ArityMismatch(f.arity(), g.arity()));
        }
    }
    Ok(reduce(&f.with_order(basis.order), &basis.gens))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let a = f.mul_term(&fm.quotient_of(lcm), &gc.clone());
    let b = g.mul_term(&gm.quotient_of(lcm), &fc.clone());
    a.axpy(&-BigRational::one(), &b)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (smallest lcm first, ties by
/// generator indices), with Buchberger's coprime and chain criteria.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, PolyError> {
    let Some(first) = gens.first() else {
        return Ok(GroebnerBasis {
            gens: Vec::new(),
            order,
            leading: Vec::new(),
        });
    };
    let arity = first.arity();
    order.check_arity(arity)?;
    if let Some(g) = gens.iter().find(|g| g.arity() != arity) {
        return Err(PolyError::ArityMismatch(arity, g.arity()));
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.with_order(order);
        if g.is_zero() {
            continue;
        }
        if g.is_unit() {
            return Ok(unit_basis(arity, order));
        }
        basis.push(g.monic());
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            let lcm = basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap());
            pairs.push(Pair { i, j, lcm });
            pending.insert((i, j));
        }
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = order.cmp(&pairs[k].lcm, &pairs[best].lcm).then_with(|| {
                (pairs[k].i, pairs[k].j).cmp(&(pairs[best].i, pairs[best].j))
            });
            if ord == Ordering::Less {
                best = k;
            }
        }
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let (li, lj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if li.is_coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let h = reduce(&s_polynomial(&basis[i], &basis[j], &lcm), &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(unit_basis(arity, order));
        }
        let h = h.monic();
        let new = basis.len();
        let lh = h.leading_monomial().unwrap().clone();
        basis.push(h);
        #[allow(clippy::needless_range_loop)]
        for k in 0..new {
            let lcm = basis[k].leading_monomial().unwrap().lcm(&lh);
            pairs.push(Pair { i: k, j: new, lcm });
            pending.insert((k, new));
        }
    }

    Ok(reduce_basis(basis, order))
}

fn unit_basis(arity: usize, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        gens: vec![Polynomial::one(arity, order)],
        order,
        leading: vec![Monomial::one(arity)],
    }
}

/// Minimalizes and interreduces a Gröbner basis.
fn reduce_basis(mut basis: Vec<Polynomial>, order: MonomialOrder) -> GroebnerBasis {
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != k)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[k];
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = Polynomial::from_sorted_terms(g.arity(), order, g.terms()[1..].to_vec());
        let tail = if others.is_empty() {
            tail
        } else {
            reduce(&tail, &others)
        };
        let mut terms = vec![(lm, lc)];
        terms.extend(tail.terms().iter().cloned());
        reduced.push(Polynomial::from_sorted_terms(g.arity(), order, terms).monic());
    }
    let leading = reduced
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    GroebnerBasis {
        gens: reduced,
        order,
        leading,
    }
}

/// Monomials outside the leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMonomialSet {
    finite: bool,
    members: Vec<Monomial>,
}

impl StandardMonomialSet {
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Empty when infinite.
    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn len(&self) -> Option<usize> {
        self.finite.then_some(self.members.len())
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerates the standard monomials of `basis` when they are finitely many.
pub fn standard_monomials(basis: &GroebnerBasis, arity: usize) -> StandardMonomialSet {
    let mut bounds = vec![None; arity];
    for lm in &basis.leading {
        if lm.is_one() {
            return StandardMonomialSet {
                finite: true,
                members: Vec::new(),
            };
        }
        if let Some((v, k)) = lm.pure_power() {
            bounds[v] = Some(bounds[v].map_or(k, |b: u32| b.min(k)));
        }
    }
    if bounds.iter().any(Option::is_none) {
        return StandardMonomialSet {
            finite: false,
            members: Vec::new(),
        };
    }
    let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
    let mut members = Vec::new();
    let mut exps = vec![0u32; arity];
    walk_staircase(&basis.leading, &bounds, 0, &mut exps, &mut members);
    members.sort_by(|a, b| basis.order.cmp(a, b));
    StandardMonomialSet {
        finite: true,
        members,
    }
}

fn walk_staircase(
    leading: &[Monomial],
    bounds: &[u32],
    var: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if var == bounds.len() {
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        // trailing variables are zero, so divisibility here is monotone in e
        let m = Monomial::new(exps.clone());
        if leading.iter().any(|l| l.divides(&m)) {
            break;
        }
        walk_staircase(leading, bounds, var + 1, exps, out);
    }
    exps[var] = 0;
}

/// Colength of an ideal, which may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

/// Gröbner basis of the ring relations together with `ideal_gens`.
pub fn combined_basis(ring: &PolyRing, ideal_gens: &[Polynomial]) -> Result<GroebnerBasis, PolyError> {
    let gens: Vec<Polynomial> = ring
        .quotient()
        .iter()
        .chain(ideal_gens)
        .cloned()
        .collect();
    if gens.is_empty() {
        return Ok(GroebnerBasis {
            gens: Vec::new(),
            order: ring.order(),
            leading: Vec::new(),
        });
    }
    buchberger(&gens, ring.order())
}

/// k-dimension of `k[vars] / (quotient + ideal)`.
pub fn quotient_length(ring: &PolyRing, ideal_gens: &[Polynomial]) -> Result<Length, PolyError> {
    let basis = combined_basis(ring, ideal_gens)?;
    Ok(length_of_basis(&basis, ring.arity()))
}

pub fn length_of_basis(basis: &GroebnerBasis, arity: usize) -> Length {
    match standard_monomials(basis, arity).len() {
        Some(n) => Length::Finite(n as u64),
        None => Length::Infinite,
    }
}

/// True when every variable is nilpotent modulo `quotient + ideal`, i.e. the
/// quotient is supported only at the origin.
pub fn is_origin_supported(ring: &PolyRing, ideal_gens: &[Polynomial]) -> Result<bool, IdealError> {
    let basis = combined_basis(ring, ideal_gens)?;
    let Length::Finite(len) = length_of_basis(&basis, ring.arity()) else {
        return Err(IdealError::InfiniteLength);
    };
    Ok(origin_supported_basis(&basis, ring, len))
}

pub(crate) fn origin_supported_basis(basis: &GroebnerBasis, ring: &PolyRing, len: u64) -> bool {
    (0..ring.arity()).all(|v| {
        let x = ring.variable(v);
        let mut p = Polynomial::one(ring.arity(), ring.order());
        for _ in 0..len {
            p = reduce(&p.mul(&x).expect("arity"), &basis.gens);
            if p.is_zero() {
                return true;
            }
        }
        // len == 0 means the ideal is the unit ideal
        p.is_zero() || len == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn polys(v: &[String], srcs: &[&str]) -> Vec<Polynomial> {
        srcs.iter()
            .map(|s| parse_polynomial(s, v, MonomialOrder::DegRevLex).unwrap())
            .collect()
    }

    #[test]
    fn normal_form_examples() {
        // z first so that z^2 leads z^2 - x*y under degrevlex
        let v = vars(&["z", "x", "y"]);
        let gb = buchberger(&polys(&v, &["z^2 - x*y"]), MonomialOrder::DegRevLex).unwrap();
        let nf = normal_form(&polys(&v, &["z^2"])[0], &gb).unwrap();
        assert_eq!(nf, polys(&v, &["x*y"])[0]);
        for g in gb.gens() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        let v2 = vars(&["x", "y"]);
        let gb = buchberger(&polys(&v2, &["x^2", "y^3"]), MonomialOrder::DegRevLex).unwrap();
        assert!(normal_form(&polys(&v2, &["x^2*y^2"])[0], &gb).unwrap().is_zero());
        assert!(matches!(
            normal_form(&polys(&v, &["x"])[0], &gb),
            Err(PolyError::ArityMismatch(3, 2))
        ));
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&polys(&v, &["y^3", "x^2"]), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.gens(), polys(&v, &["x^2", "y^3"]).as_slice());
        assert_eq!(standard_monomials(&gb, 2).len(), Some(6));
    }

    #[test]
    fn quadric_cone_staircase() {
        let v = vars(&["x", "y", "z"]);
        let gb = buchberger(&polys(&v, &["z^2 - x*y", "x^2", "x*y", "y^2"]), MonomialOrder::DegRevLex)
            .unwrap();
        let sm = standard_monomials(&gb, 3);
        let expect: HashSet<Monomial> = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|e| Monomial::new(e.to_vec()))
            .collect();
        assert_eq!(sm.members().iter().cloned().collect::<HashSet<_>>(), expect);
    }

    #[test]
    fn maximal_ideal_has_one_standard_monomial() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&polys(&v, &["x", "y"]), MonomialOrder::DegRevLex).unwrap();
        let sm = standard_monomials(&gb, 2);
        assert_eq!(sm.members(), &[Monomial::one(2)]);
    }

    #[test]
    fn quotient_lengths() {
        let r = PolyRing::parse(&["X", "Y", "Z", "W"], MonomialOrder::DegRevLex, &["X*W", "Y*W", "Z*W"])
            .unwrap();
        let q: Vec<_> = ["X+W", "Y+W", "Z+W"].iter().map(|s| r.parse_poly(s).unwrap()).collect();
        assert_eq!(quotient_length(&r, &q).unwrap(), Length::Finite(2));
        assert!(is_origin_supported(&r, &q).unwrap());

        let cone = PolyRing::parse(&["x", "y", "z"], MonomialOrder::DegRevLex, &["z^2 - x*y"]).unwrap();
        let q: Vec<_> = ["x", "y"].iter().map(|s| cone.parse_poly(s).unwrap()).collect();
        assert_eq!(quotient_length(&cone, &q).unwrap(), Length::Finite(2));

        let plane = PolyRing::parse(&["x", "y"], MonomialOrder::DegRevLex, &[]).unwrap();
        let q = vec![plane.parse_poly("x").unwrap()];
        assert_eq!(quotient_length(&plane, &q).unwrap(), Length::Infinite);
        assert_eq!(is_origin_supported(&plane, &q), Err(IdealError::InfiniteLength));
    }

    #[test]
    fn origin_support() {
        let plane = PolyRing::parse(&["x", "y"], MonomialOrder::DegRevLex, &[]).unwrap();
        let p = |s: &str| plane.parse_poly(s).unwrap();
        assert!(is_origin_supported(&plane, &[p("x^2"), p("y^3")]).unwrap());
        assert!(!is_origin_supported(&plane, &[p("x^2 - x"), p("y")]).unwrap());
    }

    #[test]
    fn unit_ideal() {
        let v = vars(&["x", "y"]);
        let gb = buchberger(&polys(&v, &["x + 1", "x"]), MonomialOrder::DegRevLex).unwrap();
        assert!(gb.contains_unit());
        assert_eq!(standard_monomials(&gb, 2).len(), Some(0));
    }
}
