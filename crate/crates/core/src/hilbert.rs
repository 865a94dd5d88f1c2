//! Hilbert–Samuel length sequences, the exact fit of the Hilbert coefficients
//! and the invariant report built from a parameter ideal and its colon by the
//! maximal ideal.
//!
//! Coefficients follow the alternating convention
//! `ℓ(R/I^{n+1}) = Σ_{i=0}^{d} (-1)^i e_i C(n+d-i, d-i)` for `n ≫ 0`.

use std::thread;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{HilbertError, SemigroupError};
use crate::groebner::{is_origin_supported, Length};
use crate::ideal::{ideal_colon, ideal_combine, CombineKind, Ideal};
use crate::semigroup::{sg_colon_max, sg_length, SemigroupIdeal, Vector};

/// Matches required beyond the interpolation points.
pub const DEFAULT_WINDOW: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Polynomial,
    Semigroup,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Polynomial => "polynomial",
            Backend::Semigroup => "semigroup",
        }
    }
}

/// `values[n] = ℓ(R/I^{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSequence {
    pub dim: usize,
    pub values: Vec<u64>,
    pub backend: Backend,
}

/// An ideal primary to the maximal ideal, in either backend.
#[derive(Clone, Debug)]
pub enum PrimaryIdeal {
    Polynomial(Ideal),
    Semigroup(SemigroupIdeal),
}

impl PrimaryIdeal {
    pub fn backend(&self) -> Backend {
        match self {
            PrimaryIdeal::Polynomial(_) => Backend::Polynomial,
            PrimaryIdeal::Semigroup(_) => Backend::Semigroup,
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            PrimaryIdeal::Polynomial(i) => i.gens().len(),
            PrimaryIdeal::Semigroup(i) => i.gens().len(),
        }
    }

    /// Generators as display strings.
    pub fn describe(&self) -> Vec<String> {
        match self {
            PrimaryIdeal::Polynomial(i) => i.format(),
            PrimaryIdeal::Semigroup(i) => i.gens().iter().map(|v| format_vector(v)).collect(),
        }
    }
}

pub fn format_vector(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn not_primary(e: SemigroupError) -> HilbertError {
    match e {
        SemigroupError::NotCofinite => HilbertError::NotPrimary(
            "complement in the semigroup is not finite within the search bound".into(),
        ),
        other => other.into(),
    }
}

/// Lengths of `R/I^{n+1}` for `n = 0..=nmax`.
pub fn hs_sequence(ideal: &PrimaryIdeal, dim: usize, nmax: usize) -> Result<LengthSequence, HilbertError> {
    let values = match ideal {
        PrimaryIdeal::Polynomial(i) => {
            match is_origin_supported(i.ring(), i.gens()) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(HilbertError::NotPrimary(
                        "quotient is supported away from the origin".into(),
                    ))
                }
                Err(crate::error::IdealError::InfiniteLength) => {
                    return Err(HilbertError::NotPrimary("quotient has infinite length".into()))
                }
                Err(e) => return Err(e.into()),
            }
            let mut powers = vec![i.clone()];
            for _ in 0..nmax {
                let next = ideal_combine(CombineKind::Product, powers.last().unwrap(), i)?;
                powers.push(next);
            }
            parallel_map(&powers, |p| match p.length()? {
                Length::Finite(n) => Ok(n),
                Length::Infinite => Err(HilbertError::NotPrimary("power has infinite colength".into())),
            })?
        }
        PrimaryIdeal::Semigroup(i) => {
            sg_length(i).map_err(not_primary)?;
            let mut powers = vec![i.clone()];
            for _ in 0..nmax {
                let next = powers.last().unwrap().product(i)?;
                powers.push(next);
            }
            parallel_map(&powers, |p| sg_length(p).map_err(not_primary))?
        }
    };
    Ok(LengthSequence {
        dim,
        values,
        backend: ideal.backend(),
    })
}

/// Maps in parallel over scoped threads, preserving order and returning the
/// first error.
fn parallel_map<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<U, HilbertError> + Sync,
) -> Result<Vec<U>, HilbertError> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len()).max(1);
    let f = &f;
    let mut slots: Vec<Option<Result<U, HilbertError>>> = (0..items.len()).map(|_| None).collect();
    thread::scope(|scope| {
        let chunks: Vec<_> = slots
            .chunks_mut(items.len().div_ceil(workers))
            .zip(items.chunks(items.len().div_ceil(workers)))
            .collect();
        for (out, input) in chunks {
            scope.spawn(move || {
                for (slot, item) in out.iter_mut().zip(input) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("worker filled slot")).collect()
}

/// Exact Hilbert coefficients and the postulation index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub e: Vec<i64>,
    pub n0: usize,
}

impl HilbertData {
    pub fn e(&self, i: usize) -> i64 {
        self.e.get(i).copied().unwrap_or(0)
    }

    /// Value of the fitted polynomial at `n`.
    pub fn eval(&self, n: usize) -> i128 {
        let d = self.e.len() - 1;
        self.e
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * e as i128 * binomial((n + d - i) as u64, (d - i) as u64)
            })
            .sum()
    }
}

pub fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

pub fn fit_hilbert(seq: &LengthSequence) -> Result<HilbertData, HilbertError> {
    fit_hilbert_with_window(seq, DEFAULT_WINDOW)
}

/// Fits `e_0..e_d` through the last `d + 1` values by exact elimination and
/// requires at least `window` earlier values to agree.
pub fn fit_hilbert_with_window(seq: &LengthSequence, window: usize) -> Result<HilbertData, HilbertError> {
    let d = seq.dim;
    let need = d + 1 + window;
    let have = seq.values.len();
    if have < need {
        return Err(HilbertError::NotStabilized { have, need });
    }
    let last = have - 1;
    let rows: Vec<usize> = (last - d..=last).collect();
    // unknowns x_i = (-1)^i e_i
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&n| {
            let mut row: Vec<BigRational> = (0..=d)
                .map(|i| {
                    BigRational::from_integer(BigInt::from(binomial((n + d - i) as u64, (d - i) as u64)))
                })
                .collect();
            row.push(BigRational::from_integer(BigInt::from(seq.values[n])));
            row
        })
        .collect();
    let x = solve(&mut m).ok_or(HilbertError::DegreeMismatch(d))?;

    let mismatch = || {
        if higher_difference_vanishes(&seq.values[last - d - 1..], d + 1) {
            HilbertError::NotStabilized { have, need }
        } else {
            HilbertError::DegreeMismatch(d)
        }
    };
    let mut e = Vec::with_capacity(d + 1);
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_integer() {
            return Err(mismatch());
        }
        let v = xi.to_integer();
        let v = if i % 2 == 0 { v } else { -v };
        e.push(v.to_i64().ok_or(HilbertError::DegreeMismatch(d))?);
    }
    let data = HilbertData { e, n0: 0 };
    let mut n0 = have;
    while n0 > 0 && data.eval(n0 - 1) == seq.values[n0 - 1] as i128 {
        n0 -= 1;
    }
    if have - n0 < need {
        return Err(mismatch());
    }
    if data.e[0] < 1 {
        return Err(HilbertError::DegreeMismatch(d));
    }
    Ok(HilbertData { n0, ..data })
}

fn higher_difference_vanishes(values: &[u64], order: usize) -> bool {
    let mut diffs: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    for _ in 0..order {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    diffs.iter().all(|&v| v == 0)
}

/// Gauss–Jordan elimination on an augmented square system.
fn solve(m: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                #[allow(clippy::needless_range_loop)]
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

/// Invariants of a parameter ideal `q` and `q : m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub dim: usize,
    pub len_q: u64,
    pub len_colon: u64,
    pub e_q: HilbertData,
    pub e_colon: HilbertData,
    pub sg_q: i64,
    pub sg_colon: i64,
    pub i_q: i64,
    pub ir: u64,
    pub r: Option<u64>,
    pub origin_supported: bool,
    pub e0_agreement: bool,
}

/// `ℓ(R/I) - e_0(I) + e_1(I)`.
pub fn sectional_genus(len: u64, e: &HilbertData) -> i64 {
    len as i64 - e.e(0) + e.e(1)
}

/// The colon ideal `q : m` in either backend.
#[derive(Clone, Debug)]
pub struct ColonData {
    pub ideal: PrimaryIdeal,
    /// Points of `(q:m) ∖ q` (semigroup backend only).
    pub socle: Option<Vec<Vector>>,
}

/// Everything computed for one parameter ideal.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub lengths_q: LengthSequence,
    pub lengths_colon: LengthSequence,
    pub colon: ColonData,
    pub report: InvariantReport,
}

pub fn colon_by_maximal(q: &PrimaryIdeal) -> Result<ColonData, HilbertError> {
    match q {
        PrimaryIdeal::Polynomial(i) => {
            let m = Ideal::maximal(i.ring().clone());
            let c = ideal_colon(i, &m)?;
            if c.is_unit() {
                return Err(HilbertError::DegenerateColon);
            }
            Ok(ColonData {
                ideal: PrimaryIdeal::Polynomial(c),
                socle: None,
            })
        }
        PrimaryIdeal::Semigroup(i) => {
            let (c, socle) = sg_colon_max(i).map_err(not_primary)?;
            if c.gens().iter().any(|v| v.iter().all(|&a| a == 0)) {
                return Err(HilbertError::DegenerateColon);
            }
            Ok(ColonData {
                ideal: PrimaryIdeal::Semigroup(c),
                socle: Some(socle),
            })
        }
    }
}

/// Computes both length sequences, both fits and the derived invariants.
pub fn analyze(q: &PrimaryIdeal, dim: usize, nmax: usize, r: Option<u64>) -> Result<Analysis, HilbertError> {
    if q.generator_count() != dim {
        return Err(HilbertError::DimensionMismatch {
            gens: q.generator_count(),
            dim,
        });
    }
    let lengths_q = hs_sequence(q, dim, nmax)?;
    let colon = colon_by_maximal(q)?;
    let lengths_colon = hs_sequence(&colon.ideal, dim, nmax)?;
    let e_q = fit_hilbert(&lengths_q)?;
    let e_colon = fit_hilbert(&lengths_colon)?;
    let len_q = lengths_q.values[0];
    let len_colon = lengths_colon.values[0];
    let report = InvariantReport {
        dim,
        len_q,
        len_colon,
        sg_q: sectional_genus(len_q, &e_q),
        sg_colon: sectional_genus(len_colon, &e_colon),
        i_q: len_q as i64 - e_q.e(0),
        ir: len_q - len_colon,
        r,
        origin_supported: true,
        e0_agreement: e_q.e(0) == e_colon.e(0),
        e_q,
        e_colon,
    };
    Ok(Analysis {
        lengths_q,
        lengths_colon,
        colon,
        report,
    })
}

pub fn build_report(q: &PrimaryIdeal, dim: usize, nmax: usize, r: Option<u64>) -> Result<InvariantReport, HilbertError> {
    Ok(analyze(q, dim, nmax, r)?.report)
}

/// Local cohomology lengths and socle dimensions inferred from a dimension 2
/// report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CohomologyEstimate {
    pub h0: i64,
    pub h1: i64,
    pub r0: i64,
    pub r1: i64,
    pub r2: i64,
    /// False when the values cannot come from a generalized Cohen-Macaulay
    /// ring of dimension 2.
    pub valid: bool,
}

pub fn infer_cohomology_dim2(rep: &InvariantReport) -> Result<CohomologyEstimate, HilbertError> {
    if rep.dim != 2 {
        return Err(HilbertError::NotDim2(rep.dim));
    }
    let h1 = -rep.e_q.e(1);
    let h0 = rep.e_q.e(2);
    let r1 = h0 - rep.e_colon.e(2);
    let r2 = rep.e_colon.e(1) + h1 - r1;
    let r0 = rep.ir as i64 - 2 * r1 - r2;
    let valid = h0 >= 0 && h1 >= 0 && r0 >= 0 && r1 >= 0 && r2 >= 1 && r0 <= h0 && r1 <= h1;
    Ok(CohomologyEstimate {
        h0,
        h1,
        r0,
        r1,
        r2,
        valid,
    })
}
