//! Affine semigroup rings `k[S]` with `S ⊆ N^d` finitely generated.
//!
//! Monomial ideals are sets `∪ (g_i + S)`. The complement `S ∖ I` of an ideal
//! is closed under removing generators: if `v = w + s` with `s ∈ S` and
//! `w ∈ I` then `v ∈ I`. So the complement is found by a breadth-first walk
//! from `0` that only adds semigroup generators and stops at the ideal.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;

use crate::error::SemigroupError;

/// Per-axis coordinate cap for membership tables and enumerations.
pub const DEFAULT_AXIS_CAP: u32 = 1 << 14;
/// Upper bound on the number of cells in a membership table.
const MAX_TABLE_CELLS: u64 = 1 << 28;
/// Upper bound on the size of an enumerated complement.
const MAX_COMPLEMENT: usize = 20_000_000;

pub type Vector = Vec<u32>;

/// Bitset of semigroup membership over the box `[0, bounds]`.
#[derive(Debug, Default)]
struct MembershipTable {
    bounds: Vec<u32>,
    strides: Vec<u64>,
    bits: Vec<u64>,
}

impl MembershipTable {
    fn covers(&self, v: &[u32]) -> bool {
        !self.bounds.is_empty() && v.iter().zip(&self.bounds).all(|(a, b)| a <= b)
    }

    fn index(&self, v: &[u32]) -> u64 {
        v.iter().zip(&self.strides).map(|(&a, &s)| a as u64 * s).sum()
    }

    fn get(&self, v: &[u32]) -> bool {
        let i = self.index(v);
        self.bits[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    fn build(bounds: Vec<u32>, gens: &[Vector]) -> Result<Self, SemigroupError> {
        let dim = bounds.len();
        let mut strides = vec![1u64; dim];
        let mut cells = 1u64;
        for i in (0..dim).rev() {
            strides[i] = cells;
            cells = cells
                .checked_mul(bounds[i] as u64 + 1)
                .filter(|&c| c <= MAX_TABLE_CELLS)
                .ok_or(SemigroupError::NotCofinite)?;
        }
        let offsets: Vec<u64> = gens
            .iter()
            .map(|g| g.iter().zip(&strides).map(|(&a, &s)| a as u64 * s).sum())
            .collect();
        let mut bits = vec![0u64; cells.div_ceil(64) as usize];
        let mut v = vec![0u32; dim];
        for idx in 0..cells {
            let member = idx == 0
                || gens.iter().zip(&offsets).any(|(g, &off)| {
                    v.iter().zip(g).all(|(a, b)| a >= b) && {
                        let j = idx - off;
                        bits[(j / 64) as usize] >> (j % 64) & 1 == 1
                    }
                });
            if member {
                bits[(idx / 64) as usize] |= 1 << (idx % 64);
            }
            // odometer increment, last axis fastest
            for axis in (0..dim).rev() {
                if v[axis] < bounds[axis] {
                    v[axis] += 1;
                    break;
                }
                v[axis] = 0;
            }
        }
        Ok(MembershipTable {
            bounds,
            strides,
            bits,
        })
    }
}

/// A finitely generated submonoid of `N^dim`.
pub struct AffineSemigroup {
    dim: usize,
    gens: Vec<Vector>,
    axis_cap: u32,
    table: RwLock<MembershipTable>,
}

impl Clone for AffineSemigroup {
    fn clone(&self) -> Self {
        AffineSemigroup {
            dim: self.dim,
            gens: self.gens.clone(),
            axis_cap: self.axis_cap,
            table: RwLock::new(MembershipTable::default()),
        }
    }
}

impl fmt::Debug for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineSemigroup")
            .field("dim", &self.dim)
            .field("gens", &self.gens)
            .finish()
    }
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gens == other.gens
    }
}

impl AffineSemigroup {
    pub fn new(dim: usize, gens: Vec<Vector>) -> Result<Self, SemigroupError> {
        for g in &gens {
            if g.len() != dim {
                return Err(SemigroupError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
            if g.iter().all(|&a| a == 0) {
                return Err(SemigroupError::BadGenerators);
            }
        }
        let distinct: HashSet<&Vector> = gens.iter().collect();
        if distinct.len() != gens.len() || gens.is_empty() {
            return Err(SemigroupError::BadGenerators);
        }
        Ok(AffineSemigroup {
            dim,
            gens,
            axis_cap: DEFAULT_AXIS_CAP,
            table: RwLock::new(MembershipTable::default()),
        })
    }

    pub fn with_axis_cap(mut self, cap: u32) -> Self {
        self.axis_cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn axis_cap(&self) -> u32 {
        self.axis_cap
    }

    fn check_dim(&self, v: &[u32]) -> Result<(), SemigroupError> {
        if v.len() != self.dim {
            return Err(SemigroupError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// True iff `v` is a nonnegative integer combination of the generators.
    pub fn contains(&self, v: &[u32]) -> Result<bool, SemigroupError> {
        self.check_dim(v)?;
        {
            let table = self.table.read().expect("membership table poisoned");
            if table.covers(v) {
                return Ok(table.get(v));
            }
        }
        if v.iter().any(|&a| a > self.axis_cap) {
            return Err(SemigroupError::NotCofinite);
        }
        let mut table = self.table.write().expect("membership table poisoned");
        if !table.covers(v) {
            let bounds: Vec<u32> = (0..self.dim)
                .map(|i| {
                    let old = table.bounds.get(i).copied().unwrap_or(0);
                    let seed = self.gens.iter().map(|g| g[i]).max().unwrap_or(0);
                    (old.saturating_mul(2)).max(v[i]).max(seed).max(8).min(self.axis_cap)
                })
                .collect();
            *table = MembershipTable::build(bounds, &self.gens)?;
        }
        Ok(table.get(v))
    }
}

/// Checked membership query.
pub fn sg_membership(s: &AffineSemigroup, v: &[u32]) -> Result<bool, SemigroupError> {
    s.contains(v)
}

fn add(a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn geq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn sub(a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A monomial ideal of `k[S]`.
#[derive(Clone, Debug)]
pub struct SemigroupIdeal {
    gens: Vec<Vector>,
    semigroup: Arc<AffineSemigroup>,
}

impl PartialEq for SemigroupIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && *self.semigroup == *other.semigroup
    }
}

impl SemigroupIdeal {
    /// Validates the generators and keeps a sorted minimal generating set.
    pub fn new(semigroup: Arc<AffineSemigroup>, gens: Vec<Vector>) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyIdeal);
        }
        for g in &gens {
            if !semigroup.contains(g)? {
                return Err(SemigroupError::NotInSemigroup(g.clone()));
            }
        }
        let gens = minimalize(&semigroup, gens)?;
        Ok(SemigroupIdeal { gens, semigroup })
    }

    pub fn gens(&self) -> &[Vector] {
        &self.gens
    }

    pub fn semigroup(&self) -> &Arc<AffineSemigroup> {
        &self.semigroup
    }

    /// Membership of `v ∈ S` in the ideal.
    pub fn contains(&self, v: &[u32]) -> Result<bool, SemigroupError> {
        for g in &self.gens {
            if geq(v, g) && self.semigroup.contains(&sub(v, g))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn product(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal, SemigroupError> {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| add(a, b)))
            .collect();
        Ok(SemigroupIdeal {
            gens: minimalize(&self.semigroup, gens)?,
            semigroup: self.semigroup.clone(),
        })
    }

    /// `I^k` for `k ≥ 1`; generators are all `k`-fold sums of generators.
    pub fn power(&self, k: u32) -> Result<SemigroupIdeal, SemigroupError> {
        assert!(k >= 1, "semigroup ideal power must be positive");
        let n = self.gens.len();
        let mut level: Vec<(usize, Vector)> = self.gens.iter().cloned().enumerate().collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for (last, v) in &level {
                for i in *last..n {
                    next.push((i, add(v, &self.gens[i])));
                }
            }
            level = next;
        }
        Ok(SemigroupIdeal {
            gens: minimalize(&self.semigroup, level.into_iter().map(|(_, v)| v).collect())?,
            semigroup: self.semigroup.clone(),
        })
    }

    /// All points of `S` outside the ideal, sorted.
    pub fn complement(&self) -> Result<Vec<Vector>, SemigroupError> {
        let s = &self.semigroup;
        let zero = vec![0u32; s.dim];
        if self.contains(&zero)? {
            return Ok(Vec::new());
        }
        let mut seen: HashSet<Vector> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(zero.clone());
        queue.push_back(zero);
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for g in s.gens() {
                let w = add(&v, g);
                if seen.contains(&w) {
                    continue;
                }
                if w.iter().any(|&a| a > s.axis_cap) {
                    return Err(SemigroupError::NotCofinite);
                }
                if !self.contains(&w)? {
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
            out.push(v);
            if out.len() > MAX_COMPLEMENT {
                return Err(SemigroupError::NotCofinite);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Drops generators lying in `other + S` and sorts.
fn minimalize(s: &AffineSemigroup, gens: Vec<Vector>) -> Result<Vec<Vector>, SemigroupError> {
    let unique: BTreeSet<Vector> = gens.into_iter().collect();
    let unique: Vec<Vector> = unique.into_iter().collect();
    let mut out = Vec::new();
    for (i, v) in unique.iter().enumerate() {
        let mut redundant = false;
        for (j, w) in unique.iter().enumerate() {
            if i != j && geq(v, w) && s.contains(&sub(v, w))? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// `ℓ(k[S]/I)`, the number of semigroup points outside the ideal.
pub fn sg_length(ideal: &SemigroupIdeal) -> Result<u64, SemigroupError> {
    Ok(ideal.complement()?.len() as u64)
}

/// `I : m` where `m` is generated by the semigroup generators, together with
/// the points of `(I : m) ∖ I`.
pub fn sg_colon_max(ideal: &SemigroupIdeal) -> Result<(SemigroupIdeal, Vec<Vector>), SemigroupError> {
    let s = ideal.semigroup.clone();
    let mut socle = Vec::new();
    for v in ideal.complement()? {
        let mut all = true;
        for g in s.gens() {
            if !ideal.contains(&add(&v, g))? {
                all = false;
                break;
            }
        }
        if all {
            socle.push(v);
        }
    }
    let mut gens = ideal.gens.clone();
    gens.extend(socle.iter().cloned());
    let colon = SemigroupIdeal {
        gens: minimalize(&s, gens)?,
        semigroup: s,
    };
    Ok((colon, socle))
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Hermite basis `(a, b), (0, c)` of the lattice spanned by plane vectors.
fn plane_lattice(gens: &[Vector]) -> Option<(i64, i64, i64)> {
    let mut pivot = (0i64, 0i64);
    let mut ys: Vec<i64> = Vec::new();
    for g in gens {
        let r = (g[0] as i64, g[1] as i64);
        if pivot.0 == 0 && r.0 == 0 {
            ys.push(r.1);
            continue;
        }
        let e = pivot.0.extended_gcd(&r.0);
        let gcd = e.gcd;
        let new_pivot = (e.x * pivot.0 + e.y * r.0, e.x * pivot.1 + e.y * r.1);
        let rest = (r.0 / gcd) * pivot.1 - (pivot.0 / gcd) * r.1;
        ys.push(rest);
        pivot = new_pivot;
    }
    let c = ys.iter().fold(0i64, |acc, y| acc.gcd(y));
    if pivot.0 == 0 || c == 0 {
        return None;
    }
    let (a, mut b) = if pivot.0 < 0 {
        (-pivot.0, -pivot.1)
    } else {
        pivot
    };
    b = b.rem_euclid(c);
    Some((a, b, c))
}

fn in_lattice(lat: (i64, i64, i64), p: (i64, i64)) -> bool {
    let (a, b, c) = lat;
    p.0 % a == 0 && (p.1 - (p.0 / a) * b) % c == 0
}

/// Lattice points of `group(S) ∩ cone(S)` missing from `S`, for `dim = 2`.
///
/// Every such point is uniquely `p0 + i·r1 + j·r2` with `r1, r2` the extreme
/// ray generators and `p0` in the half-open fundamental parallelogram. For a
/// fixed `p0` the pairs `(i, j)` landing in `S` form an up-set of `N^2`, so
/// the gap is finite iff each up-set meets both axes, and then lies in the
/// box below those axis points.
pub fn sg_closure_gap(s: &AffineSemigroup) -> Result<Vec<Vector>, SemigroupError> {
    if s.dim != 2 {
        return Err(SemigroupError::UnsupportedGap);
    }
    let pts: Vec<(i64, i64)> = s.gens.iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
    let mut lo = pts[0];
    let mut hi = pts[0];
    for &p in &pts[1..] {
        let c = cross(lo, p);
        if c < 0 || (c == 0 && p.0 + p.1 < lo.0 + lo.1) {
            lo = p;
        }
        let c = cross(hi, p);
        if c > 0 || (c == 0 && p.0 + p.1 < hi.0 + hi.1) {
            hi = p;
        }
    }
    let det = cross(lo, hi);
    if det <= 0 {
        return Err(SemigroupError::UnsupportedGap);
    }
    let lattice = plane_lattice(&s.gens).ok_or(SemigroupError::UnsupportedGap)?;
    let cap = s.axis_cap as i64;

    let mut reps = Vec::new();
    for x in 0..=(lo.0 + hi.0) {
        for y in 0..=(lo.1 + hi.1) {
            let p = (x, y);
            let alpha = cross(p, hi);
            let beta = cross(lo, p);
            if (0..det).contains(&alpha) && (0..det).contains(&beta) && in_lattice(lattice, p) {
                reps.push(p);
            }
        }
    }

    let to_vec = |p: (i64, i64)| -> Result<Vector, SemigroupError> {
        if p.0 > cap || p.1 > cap {
            return Err(SemigroupError::NotFinite);
        }
        Ok(vec![p.0 as u32, p.1 as u32])
    };
    let first_hit = |p0: (i64, i64), ray: (i64, i64)| -> Result<i64, SemigroupError> {
        let mut k = 0;
        loop {
            let p = (p0.0 + k * ray.0, p0.1 + k * ray.1);
            if s.contains(&to_vec(p)?)? {
                return Ok(k);
            }
            k += 1;
        }
    };

    let mut gap = Vec::new();
    for p0 in reps {
        let i0 = first_hit(p0, lo)?;
        let j0 = first_hit(p0, hi)?;
        for i in 0..i0 {
            for j in 0..j0 {
                let p = (p0.0 + i * lo.0 + j * hi.0, p0.1 + i * lo.1 + j * hi.1);
                let v = to_vec(p)?;
                if !s.contains(&v)? {
                    gap.push(v);
                }
            }
        }
    }
    gap.sort();
    Ok(gap)
}
