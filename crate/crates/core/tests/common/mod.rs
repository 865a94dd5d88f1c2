//! Independent oracles. None of these use Gröbner bases or the semigroup
//! membership table.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use sectional::poly::Polynomial;

pub type Sparse = BTreeMap<Vec<u32>, BigRational>;

pub fn sparse(p: &Polynomial) -> Sparse {
    p.terms()
        .iter()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

pub fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(BigRational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

pub fn homogeneous_degree(p: &Sparse) -> Option<u32> {
    let mut degs = p.keys().map(|e| degree(e));
    let d = degs.next()?;
    degs.all(|x| x == d).then_some(d)
}

/// All products of `k` generators (with repetition).
pub fn power_gens(gens: &[Sparse], k: usize) -> Vec<Sparse> {
    fn rec(gens: &[Sparse], start: usize, k: usize, acc: &Sparse, out: &mut Vec<Sparse>) {
        if k == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..gens.len() {
            rec(gens, i, k - 1, &sparse_mul(acc, &gens[i]), out);
        }
    }
    let n = gens[0].keys().next().map_or(0, Vec::len);
    let one: Sparse = [(vec![0; n], BigRational::one())].into_iter().collect();
    let mut out = Vec::new();
    rec(gens, 0, k, &one, &mut out);
    out
}

pub fn monomials_of_degree(n: usize, t: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if t == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=t).rev() {
        for mut rest in monomials_of_degree(n - 1, t - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rank over the rationals by incremental row echelon form.
pub struct Echelon {
    pivots: BTreeMap<usize, Vec<BigRational>>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut row: Vec<BigRational>) -> bool {
        loop {
            let Some(lead) = row.iter().position(|c| !c.is_zero()) else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = row[lead].clone();
                    for (x, y) in row.iter_mut().zip(p) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
                None => {
                    let inv = row[lead].recip();
                    for x in row.iter_mut() {
                        *x *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `dim_k k[x]/(gens)` for homogeneous generators, summing the Hilbert
/// function degree by degree until it vanishes.
pub fn graded_colength(nvars: usize, gens: &[Sparse]) -> u64 {
    let gens: Vec<&Sparse> = gens.iter().filter(|g| !g.is_empty()).collect();
    let degs: Vec<u32> = gens
        .iter()
        .map(|g| homogeneous_degree(g).expect("oracle needs homogeneous generators"))
        .collect();
    let top = degs.iter().copied().max().unwrap_or(0);
    let mut total = 0u64;
    for t in 0.. {
        assert!(t < 80, "graded oracle did not terminate");
        let cols = monomials_of_degree(nvars, t);
        let index: HashMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new();
        'gens: for (&g, &d) in gens.iter().zip(&degs) {
            if d > t {
                continue;
            }
            for u in monomials_of_degree(nvars, t - d) {
                let mut row = vec![BigRational::zero(); cols.len()];
                for (e, c) in g {
                    let m: Vec<u32> = e.iter().zip(&u).map(|(a, b)| a + b).collect();
                    row[index[&m]] = c.clone();
                }
                ech.insert(row);
                if ech.rank() == cols.len() {
                    break 'gens;
                }
            }
        }
        let dim = (cols.len() - ech.rank()) as u64;
        total += dim;
        if dim == 0 && t >= top {
            return total;
        }
    }
    unreachable!()
}

/// Monomial ideal helpers on exponent vectors.
pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_in(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| mono_divides(g, m))
}

/// Exponent bound per variable from the pure powers among `gens`.
pub fn mono_box(gens: &[Vec<u32>], n: usize) -> Vec<u32> {
    (0..n)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0) && g[i] > 0)
                .map(|g| g[i])
                .min()
                .expect("monomial ideal must contain a pure power of every variable")
        })
        .collect()
}

pub fn box_points(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Standard monomials of a zero-dimensional monomial ideal.
pub fn mono_standard(gens: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    box_points(&mono_box(gens, n))
        .into_iter()
        .filter(|m| !mono_in(gens, m))
        .collect()
}

pub fn mono_power(gens: &[Vec<u32>], k: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<Vec<u32>> = vec![vec![0; gens[0].len()]];
    for _ in 0..k {
        let mut next = HashSet::new();
        for a in &cur {
            for g in gens {
                next.insert(a.iter().zip(g).map(|(x, y)| x + y).collect::<Vec<u32>>());
            }
        }
        cur = next.into_iter().collect();
    }
    cur
}

/// Standard monomials `u` of `I` with `u x_i ∈ I` for every `i`.
pub fn mono_socle(gens: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    mono_standard(gens, n)
        .into_iter()
        .filter(|u| {
            (0..n).all(|i| {
                let mut v = u.clone();
                v[i] += 1;
                mono_in(gens, &v)
            })
        })
        .collect()
}

/// Semigroup membership by memoized subtraction of generators.
pub struct BruteSemigroup {
    pub gens: Vec<Vec<u32>>,
    memo: HashMap<Vec<u32>, bool>,
}

impl BruteSemigroup {
    pub fn new(gens: Vec<Vec<u32>>) -> Self {
        BruteSemigroup {
            gens,
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, v: &[u32]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&b) = self.memo.get(v) {
            return b;
        }
        let gens = self.gens.clone();
        let found = gens.iter().any(|g| {
            mono_divides(g, v) && {
                let w: Vec<u32> = v.iter().zip(g).map(|(a, b)| a - b).collect();
                self.contains(&w)
            }
        });
        self.memo.insert(v.to_vec(), found);
        found
    }

    /// `v ∈ (ideal_gens)S`.
    pub fn in_ideal(&mut self, ideal_gens: &[Vec<u32>], v: &[u32]) -> bool {
        ideal_gens.iter().any(|g| {
            mono_divides(g, v) && {
                let w: Vec<u32> = v.iter().zip(g).map(|(a, b)| a - b).collect();
                self.contains(&w)
            }
        })
    }

    /// Points of `S ∖ I` inside `[0, bound)^d`.
    pub fn complement_in_box(&mut self, ideal_gens: &[Vec<u32>], bound: u32) -> Vec<Vec<u32>> {
        let d = self.gens[0].len();
        box_points(&vec![bound; d])
            .into_iter()
            .filter(|v| self.contains(v) && !self.in_ideal(ideal_gens, v))
            .collect()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Regression corpus: `(name, spec source)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("plane, q = (x^2, y^3)", "mode polynomial\nvars x y\nideal q: x^2, y^3\n"),
    ("plane, q = (x^2+y^2, xy)", "mode polynomial\nvars x y\nideal q: x^2+y^2, x*y\n"),
    ("quadric cone", "mode polynomial\nvars x y z\nquotient: z^2 - x*y\nideal q: x, y\ndim 2\n"),
    ("cusp hypersurface", "mode polynomial\nvars x y z\nquotient: z^3 - x^2*y\nideal q: x, y\ndim 2\n"),
    (
        "complete intersection of two quadrics",
        "mode polynomial\nvars x y z w\nquotient: z^2 - x*y, w^2 - x*y\nideal q: x, y\ndim 2\n",
    ),
    (
        "plane with embedded point",
        "mode polynomial\nvars x y z\nquotient: z^2, z*x, z*y\nideal q: x^2, y^2\ndim 2\n",
    ),
    (
        "3-plane and line, linear q",
        "mode polynomial\nvars X Y Z W\nquotient: X*W, Y*W, Z*W\nideal q: X+W, Y+W, Z+W\nnmax 6\n",
    ),
    (
        "3-plane and line, deep q",
        "mode polynomial\nvars X Y Z W\nquotient: X*W, Y*W, Z*W\nideal q: X^2+W^2, Y^2+W^2, Z^2+W^2\nnmax 6\n",
    ),
    ("semigroup <(1,0),(1,2),(2,3),(3,1)>, a = 6", "mode semigroup\ndim 2\ngens: 1 0; 1 2; 2 3; 3 1\nideal q: 6 0; 6 12\n"),
    ("semigroup <(1,0),(1,2),(2,3),(3,1)>, a = 7", "mode semigroup\ndim 2\ngens: 1 0; 1 2; 2 3; 3 1\nideal q: 7 0; 7 14\n"),
    ("semigroup <(1,0),(1,2),(2,3),(3,1)>, a = 8", "mode semigroup\ndim 2\ngens: 1 0; 1 2; 2 3; 3 1\nideal q: 8 0; 8 16\n"),
    ("Veronese semigroup <(1,0),(1,1),(1,2)>", "mode semigroup\ndim 2\ngens: 1 0; 1 1; 1 2\nideal q: 2 0; 2 4\n"),
    ("semigroup <(1,0),(1,2),(1,3)>", "mode semigroup\ndim 2\ngens: 1 0; 1 2; 1 3\nideal q: 3 0; 3 9\n"),
    ("numerical semigroup <3,5>", "mode semigroup\ndim 1\ngens: 3; 5\nideal q: 6\n"),
];
