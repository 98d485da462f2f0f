//! Flat-torus spectra and theta series by exact short-vector enumeration.
//!
//! A lattice enters as the Gram matrix of a basis: a symmetric positive
//! definite rational matrix. The Laplace spectrum of the torus `R^n/L` is
//! `{4 pi^2 q}` over the dual-lattice norms `q`; this module stores the
//! exact rational `q` values and leaves the transcendental factor to the
//! caller, so every comparison below is a decision, not an approximation.
//!
//! Spectral commensurability at a finite cutoff is evidence, never proof;
//! every verdict carries that caveat explicitly.

use crate::arith::rat_to_string;
use crate::fincke::{enumerate_vectors, ldl};
use crate::matrix::Matrix;
use crate::{Error, Int, IntMatrix, Rat, RatMatrix, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Default enumeration budget: the largest number of vectors one call may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// A symmetric positive definite rational Gram matrix.
///
/// Positivity is certified exactly at construction via the LDL pivots, which
/// are the ratios of leading principal minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    inner: RatMatrix,
}

impl GramMatrix {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::ShapeMismatch(
                "Gram matrix must be square and nonempty".into(),
            ));
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotPositiveDefinite("matrix is not symmetric".into()));
        }
        ldl(&matrix)?;
        Ok(GramMatrix { inner: matrix })
    }

    /// Build from integer entries.
    pub fn from_int_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| Rat::from_integer(Int::from(v))).collect())
                .collect(),
        )?;
        GramMatrix::new(m)
    }

    pub fn dimension(&self) -> usize {
        self.inner.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.inner
    }

    pub fn det(&self) -> Rat {
        self.inner.det()
    }

    /// The norm `x^T G x` of an integer vector.
    pub fn norm_of(&self, x: &[i64]) -> Rat {
        let n = self.dimension();
        assert_eq!(x.len(), n);
        let mut acc = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                acc += self.inner[(i, j)].clone()
                    * Rat::from_integer(Int::from(x[i] * x[j]));
            }
        }
        acc
    }

    /// Rescale the form by a positive rational: the lattice with metric `c g`.
    pub fn scaled(&self, c: &Rat) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::NotPositiveDefinite(
                "scaling factor must be positive".into(),
            ));
        }
        GramMatrix::new(self.inner.map(|v| v * c.clone()))
    }

    /// Congruence transform `U^T G U` by an integer matrix with nonzero
    /// determinant (unimodular `U` gives a change of basis of the same lattice).
    pub fn transformed(&self, u: &IntMatrix) -> Result<Self> {
        let ur = u.map(|v| Rat::from_integer(v.clone()));
        GramMatrix::new(ur.transpose().mul(&self.inner)?.mul(&ur)?)
    }
}

/// The dual Gram matrix `G^{-1}`, exactly. The dual of the dual is the original.
pub fn dual_gram(g: &GramMatrix) -> GramMatrix {
    let inv = g
        .matrix()
        .inverse()
        .expect("positive definite matrices are invertible");
    GramMatrix::new(inv).expect("inverse of positive definite is positive definite")
}

/// One enumerated lattice vector with its exact norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: Rat,
}

/// All integer vectors with `x^T G x <= bound`, the zero vector included,
/// sorted by (norm, lexicographic coordinates).
pub fn short_vectors(g: &GramMatrix, bound: &Rat, budget: u64) -> Result<Vec<ShortVector>> {
    if bound.is_negative() {
        return Ok(Vec::new());
    }
    let mut raw: Vec<(Int, Vec<i64>)> = Vec::new();
    let outcome = enumerate_vectors(g.matrix(), bound, budget, &mut |x, q| {
        raw.push((q.clone(), x.to_vec()));
    })?;
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|(q, coords)| ShortVector {
            norm: Rat::new(q, outcome.scale.clone()),
            coords,
        })
        .collect())
}

/// Vector counts by norm up to a cutoff: the coefficient table of the theta
/// series. The count at norm 0 is 1 and nonzero-norm counts are even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSeries {
    cutoff: Rat,
    counts: BTreeMap<Rat, u64>,
}

impl ThetaSeries {
    pub fn cutoff(&self) -> &Rat {
        &self.cutoff
    }

    /// Represented norms with their counts, ascending; absent norms count 0.
    pub fn counts(&self) -> &BTreeMap<Rat, u64> {
        &self.counts
    }

    pub fn count_at(&self, norm: &Rat) -> u64 {
        self.counts.get(norm).copied().unwrap_or(0)
    }

    pub fn total_vectors(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Count lattice vectors by exact norm for every represented norm `<= cutoff`.
pub fn theta_coefficients(g: &GramMatrix, cutoff: &Rat, budget: u64) -> Result<ThetaSeries> {
    if cutoff.is_negative() {
        return Ok(ThetaSeries {
            cutoff: cutoff.clone(),
            counts: BTreeMap::new(),
        });
    }
    let mut scaled_counts: BTreeMap<Int, u64> = BTreeMap::new();
    let outcome = enumerate_vectors(g.matrix(), cutoff, budget, &mut |_, q| {
        *scaled_counts.entry(q.clone()).or_insert(0) += 1;
    })?;
    let counts: BTreeMap<Rat, u64> = scaled_counts
        .into_iter()
        .map(|(q, c)| (Rat::new(q, outcome.scale.clone()), c))
        .collect();
    debug_assert_eq!(counts.get(&Rat::zero()), Some(&1));
    debug_assert!(counts.iter().all(|(n, c)| n.is_zero() || c % 2 == 0));
    Ok(ThetaSeries {
        cutoff: cutoff.clone(),
        counts,
    })
}

/// The Laplace spectrum of the flat torus `R^n/L` up to a cutoff, stored as
/// the exact dual-lattice norms `q` (the true eigenvalue is `4 pi^2 q`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumMultiset {
    cutoff: Rat,
    /// (value, multiplicity), ascending in value; the first entry is (0, 1)
    entries: Vec<(Rat, u64)>,
}

impl SpectrumMultiset {
    pub fn cutoff(&self) -> &Rat {
        &self.cutoff
    }

    pub fn entries(&self) -> &[(Rat, u64)] {
        &self.entries
    }

    pub fn multiplicity(&self, value: &Rat) -> u64 {
        self.entries
            .binary_search_by(|(v, _)| v.cmp(value))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Distinct spectral values, ascending.
    pub fn values(&self) -> impl Iterator<Item = &Rat> {
        self.entries.iter().map(|(v, _)| v)
    }

    /// Smallest `k` distinct nonzero values.
    pub fn smallest_nonzero(&self, k: usize) -> Vec<Rat> {
        self.entries
            .iter()
            .filter(|(v, _)| !v.is_zero())
            .take(k)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

/// Dual-lattice norm multiset up to `cutoff`: two tori are isospectral up to
/// the cutoff exactly when these multisets coincide.
pub fn torus_spectrum(g: &GramMatrix, cutoff: &Rat, budget: u64) -> Result<SpectrumMultiset> {
    let theta = theta_coefficients(&dual_gram(g), cutoff, budget)?;
    let entries: Vec<(Rat, u64)> = theta.counts.into_iter().collect();
    Ok(SpectrumMultiset {
        cutoff: cutoff.clone(),
        entries,
    })
}

/// Containment convention for spectral comparison at a finite cutoff.
///
/// The mutual-containment definition does not fix a multiplicity convention;
/// both readings are implemented and the value-set one is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainmentMode {
    /// Compare the sets of represented spectral values.
    ValueSets,
    /// Compare values together with their multiplicities.
    WithMultiplicity,
}

/// Verdict of a finite-cutoff spectral commensurability test.
#[derive(Debug, Clone)]
pub struct CommensurabilityVerdict {
    pub commensurable: bool,
    /// Witnessing scaling `c` with `Spec_1 = c Spec_2` up to the cutoff.
    pub scaling: Option<Rat>,
    /// Every scaling candidate that was tried, ascending.
    pub candidates: Vec<Rat>,
    pub mode: ContainmentMode,
    pub cutoff: Rat,
    /// Finite-cutoff marker carried by every verdict.
    pub caveat: String,
}

fn scaling_candidates(s1: &SpectrumMultiset, s2: &SpectrumMultiset, max_scalings: usize) -> Vec<Rat> {
    let k = 4;
    let v1 = s1.smallest_nonzero(k);
    let v2 = s2.smallest_nonzero(k);
    let mut cands: Vec<Rat> = Vec::new();
    for a in &v1 {
        for b in &v2 {
            cands.push(a / b);
        }
    }
    cands.sort();
    cands.dedup();
    cands.retain(|c| !c.is_one());
    cands.truncate(max_scalings.max(1).saturating_sub(1));
    // the identity scaling is always tried, and tried first
    cands.insert(0, Rat::one());
    cands
}

/// Decide, up to `cutoff`, whether the two torus spectra coincide after some
/// rescaling drawn from ratios of small spectral values.
///
/// The verdict is evidence at a finite cutoff, never proof, and says so.
pub fn spectrally_commensurable_with(
    mode: ContainmentMode,
    g1: &GramMatrix,
    g2: &GramMatrix,
    cutoff: &Rat,
    max_scalings: usize,
    budget: u64,
) -> Result<CommensurabilityVerdict> {
    if !cutoff.is_positive() {
        return Err(Error::ShapeMismatch("cutoff must be positive".into()));
    }
    let caveat = format!(
        "finite cutoff {}: containment checked only below the cutoff; evidence, not proof",
        rat_to_string(cutoff)
    );
    let s1 = torus_spectrum(g1, cutoff, budget)?;
    let s2_probe = torus_spectrum(g2, cutoff, budget)?;
    let candidates = scaling_candidates(&s1, &s2_probe, max_scalings);
    for c in &candidates {
        // values v2 of torus 2 with c*v2 <= cutoff
        let s2 = torus_spectrum(g2, &(cutoff / c), budget)?;
        let scaled: Vec<(Rat, u64)> = s2
            .entries()
            .iter()
            .map(|(v, m)| (v * c, *m))
            .collect();
        let matches = match mode {
            ContainmentMode::ValueSets => {
                let a: Vec<&Rat> = s1.values().collect();
                let b: Vec<&Rat> = scaled.iter().map(|(v, _)| v).collect();
                a == b
            }
            ContainmentMode::WithMultiplicity => s1.entries() == scaled.as_slice(),
        };
        if matches {
            return Ok(CommensurabilityVerdict {
                commensurable: true,
                scaling: Some(c.clone()),
                candidates,
                mode,
                cutoff: cutoff.clone(),
                caveat,
            });
        }
    }
    Ok(CommensurabilityVerdict {
        commensurable: false,
        scaling: None,
        candidates,
        mode,
        cutoff: cutoff.clone(),
        caveat,
    })
}

/// [`spectrally_commensurable_with`] under the default value-set convention.
pub fn spectrally_commensurable(
    g1: &GramMatrix,
    g2: &GramMatrix,
    cutoff: &Rat,
    max_scalings: usize,
    budget: u64,
) -> Result<CommensurabilityVerdict> {
    spectrally_commensurable_with(ContainmentMode::ValueSets, g1, g2, cutoff, max_scalings, budget)
}

/// The smallest `k` distinct nonzero norms represented by the form, found by
/// enumeration with a doubling bound.
pub fn smallest_represented_norms(g: &GramMatrix, k: usize, budget: u64) -> Result<Vec<Rat>> {
    // the minimum nonzero norm is at most the smallest diagonal entry
    let mut bound = (0..g.dimension())
        .map(|i| g.matrix()[(i, i)].clone())
        .min()
        .expect("dimension is positive");
    loop {
        let theta = theta_coefficients(g, &bound, budget)?;
        let norms: Vec<Rat> = theta
            .counts()
            .keys()
            .filter(|n| !n.is_zero())
            .take(k)
            .cloned()
            .collect();
        if norms.len() >= k {
            return Ok(norms);
        }
        bound = bound * Rat::from_integer(Int::from(2));
    }
}

/// Standard integral Gram matrices by name: `Zn:k` (or `Zn(k)`), `A2`, `E8`,
/// `E8E8`, `D16plus`.
pub fn builtin_lattice(name: &str) -> Result<GramMatrix> {
    let make = |rows: Vec<Vec<i64>>| GramMatrix::from_int_rows(rows);
    match name {
        "A2" => make(vec![vec![2, 1], vec![1, 2]]),
        "E8" => {
            let g = make(e8_rows())?;
            debug_assert!(g.det().is_one());
            Ok(g)
        }
        "E8E8" => {
            let e8 = e8_rows();
            let mut rows = vec![vec![0i64; 16]; 16];
            for i in 0..8 {
                for j in 0..8 {
                    rows[i][j] = e8[i][j];
                    rows[8 + i][8 + j] = e8[i][j];
                }
            }
            make(rows)
        }
        "D16plus" => {
            let g = make(d16plus_rows())?;
            debug_assert!(g.det().is_one());
            Ok(g)
        }
        _ => {
            if let Some(arg) = name.strip_prefix("Zn:").or_else(|| {
                name.strip_prefix("Zn(")
                    .and_then(|rest| rest.strip_suffix(')'))
            }) {
                let n: usize = arg
                    .parse()
                    .map_err(|_| Error::UnknownName(name.to_string()))?;
                if n == 0 || n > 64 {
                    return Err(Error::UnknownName(format!(
                        "{name}: dimension must be between 1 and 64"
                    )));
                }
                let mut rows = vec![vec![0i64; n]; n];
                for (i, row) in rows.iter_mut().enumerate() {
                    row[i] = 1;
                }
                make(rows)
            } else {
                Err(Error::UnknownName(name.to_string()))
            }
        }
    }
}

/// E8 as the Gram matrix of a simple-root basis: even, determinant 1.
fn e8_rows() -> Vec<Vec<i64>> {
    // chain 1-3-4-5-6-7-8 with node 2 attached to node 4
    let edges = [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut rows = vec![vec![0i64; 8]; 8];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        rows[a][b] = -1;
        rows[b][a] = -1;
    }
    rows
}

/// D16 glued with the half-sum vector `(1/2, ..., 1/2)`, written in a
/// reduced basis of fourteen norm-2 roots and two norm-4 glue vectors:
/// even unimodular of rank 16 with 480 minimal vectors.
fn d16plus_rows() -> Vec<Vec<i64>> {
    const ROWS: [[i64; 16]; 16] = [
        [2, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1],
        [0, 2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0],
        [1, -1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 0, 0],
        [1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 0, 0],
        [0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 3],
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 4],
    ];
    ROWS.iter().map(|r| r.to_vec()).collect()
}
