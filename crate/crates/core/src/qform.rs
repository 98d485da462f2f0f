//! Rational similarity of quadratic forms: the commensurability oracle.
//!
//! Two positive definite rational forms are similar over Q when one is
//! rationally congruent to a positive multiple of the other. Over Q the
//! congruence class of a nondegenerate form is completely determined by
//! dimension, signature, discriminant square-class, and the Hasse
//! invariants at every place, so similarity reduces to comparing finitely
//! many exact local symbols once a candidate scaling is fixed.
//!
//! The candidate scalings are finite: ratios of small represented norms and
//! rational n-th roots of the determinant ratio. A true similarity scaling
//! must rescale represented values onto represented values, so a miss over
//! the whole candidate list is reported as "not similar" together with the
//! list itself.

use crate::arith::{
    factor_int, is_prime_u64, is_rational_square, rat_to_string, rational_nth_root,
};
use crate::lattices::{
    smallest_represented_norms, spectrally_commensurable, GramMatrix,
};
use crate::matrix::Matrix;
use crate::{Error, Int, Rat, RatMatrix, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A place of Q: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Diagonalize a symmetric nondegenerate rational matrix by congruence:
/// returns `d_1..d_n` with the form rationally congruent to `diag(d)`.
///
/// Symmetric Gaussian elimination with exact pivoting; when a diagonal pivot
/// vanishes a row/column addition manufactures one, which is where the
/// hyperbolic plane `[[0,1],[1,0]] ~ diag(2, -1/2)` comes from.
pub fn diagonalize_form(m: &RatMatrix) -> Result<Vec<Rat>> {
    Ok(diagonalize_with_transform(m)?.0)
}

/// As [`diagonalize_form`], also returning the congruence `U` with
/// `U^T M U = diag(d)` for verification.
pub fn diagonalize_with_transform(m: &RatMatrix) -> Result<(Vec<Rat>, RatMatrix)> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::ShapeMismatch("need a square nonempty matrix".into()));
    }
    if !m.is_symmetric() {
        return Err(Error::ShapeMismatch("matrix is not symmetric".into()));
    }
    if m.det().is_zero() {
        return Err(Error::Degenerate);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut u: RatMatrix = Matrix::identity(n);
    // congruence helpers: apply E on the right of U and E^T .. E to A
    let swap = |a: &mut RatMatrix, u: &mut RatMatrix, i: usize, k: usize| {
        for j in 0..n {
            let (x, y) = (a[(i, j)].clone(), a[(k, j)].clone());
            a[(i, j)] = y;
            a[(k, j)] = x;
        }
        for j in 0..n {
            let (x, y) = (a[(j, i)].clone(), a[(j, k)].clone());
            a[(j, i)] = y;
            a[(j, k)] = x;
        }
        for j in 0..n {
            let (x, y) = (u[(j, i)].clone(), u[(j, k)].clone());
            u[(j, i)] = y;
            u[(j, k)] = x;
        }
    };
    // col_i += f * col_k (and the symmetric row operation)
    let add_into = |a: &mut RatMatrix, u: &mut RatMatrix, i: usize, k: usize, f: &Rat| {
        for j in 0..n {
            let t = a[(k, j)].clone() * f.clone();
            a[(i, j)] += t;
        }
        for j in 0..n {
            let t = a[(j, k)].clone() * f.clone();
            a[(j, i)] += t;
        }
        for j in 0..n {
            let t = u[(j, k)].clone() * f.clone();
            u[(j, i)] += t;
        }
    };
    for i in 0..n {
        if a[(i, i)].is_zero() {
            if let Some(k) = (i + 1..n).find(|&k| !a[(k, k)].is_zero()) {
                swap(&mut a, &mut u, i, k);
            } else {
                // all remaining diagonal entries vanish; some off-diagonal
                // entry is nonzero because the form is nondegenerate
                let k = (i + 1..n)
                    .find(|&k| !a[(i, k)].is_zero())
                    .ok_or(Error::Degenerate)?;
                let one = Rat::one();
                add_into(&mut a, &mut u, i, k, &one);
            }
        }
        let pivot = a[(i, i)].clone();
        for k in i + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = -(a[(i, k)].clone() / pivot.clone());
            add_into(&mut a, &mut u, k, i, &f);
        }
    }
    let diag: Vec<Rat> = (0..n).map(|i| a[(i, i)].clone()).collect();
    debug_assert!(diag.iter().all(|d| !d.is_zero()));
    Ok((diag, u))
}

/// Reduce a nonzero rational to its integer square-class representative
/// `numer * denom` (same class since `a = (num/den) ~ num*den * (1/den)^2`).
fn square_class_rep(a: &Rat) -> Int {
    a.numer() * a.denom()
}

fn legendre(u: &Int, p: u64) -> i8 {
    let pb = Int::from(p);
    let e = (&pb - Int::one()) / Int::from(2);
    let r = u.mod_floor(&pb).modpow(&e, &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// The Hilbert symbol `(a, b)_v`: +1 iff `z^2 = a x^2 + b y^2` has a
/// nontrivial solution over the completion at `v`.
///
/// Computed by the classical valuation/unit formulas; bimultiplicative in
/// each argument and +1 whenever `v` is an odd prime dividing neither
/// argument.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Internal("Hilbert symbol of zero".into()));
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(p) => {
            if !is_prime_u64(p) {
                return Err(Error::NotPrime(p));
            }
            let pb = Int::from(p);
            let strip = |mut v: Int| -> (u64, Int) {
                let mut val = 0u64;
                while (&v % &pb).is_zero() {
                    v /= &pb;
                    val += 1;
                }
                (val, v)
            };
            let (alpha, u) = strip(square_class_rep(a));
            let (beta, v) = strip(square_class_rep(b));
            if p == 2 {
                // eps(u) = (u-1)/2, omega(u) = (u^2-1)/8 modulo 2
                let eps = |w: &Int| -> u64 {
                    let r = w.mod_floor(&Int::from(4));
                    u64::from(r == Int::from(3))
                };
                let omega = |w: &Int| -> u64 {
                    let r = w.mod_floor(&Int::from(8));
                    u64::from(r == Int::from(3) || r == Int::from(5))
                };
                let exp = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
                Ok(if exp % 2 == 0 { 1 } else { -1 })
            } else {
                let mut sign = 1i8;
                if alpha % 2 == 1 && beta % 2 == 1 && (p - 1) / 2 % 2 == 1 {
                    sign = -sign;
                }
                if beta % 2 == 1 {
                    sign *= legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    sign *= legendre(&v, p);
                }
                Ok(sign)
            }
        }
    }
}

/// Hasse invariant of a diagonalized form: `prod_{i<j} (d_i, d_j)_v`.
/// Independent of the diagonalization chosen.
pub fn hasse_invariant(diag: &[Rat], place: Place) -> Result<i8> {
    let mut prod = 1i8;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            prod *= hilbert_symbol(&diag[i], &diag[j], place)?;
        }
    }
    Ok(prod)
}

/// The finite set of places where the Hasse invariants of the given
/// diagonalized forms can differ from +1: always 2, plus every prime
/// dividing a numerator or denominator of a diagonal entry.
pub fn relevant_places(diags: &[&[Rat]]) -> Result<Vec<Place>> {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    primes.insert(2);
    for diag in diags {
        for d in *diag {
            for part in [d.numer(), d.denom()] {
                if part.is_one() || (-part).is_one() {
                    continue;
                }
                for (p, _) in factor_int(part)? {
                    primes.insert(p);
                }
            }
        }
    }
    let mut places: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// Local data recorded for the witnessing scaling of a similarity verdict.
#[derive(Debug, Clone, Serialize)]
pub struct LocalInvariant {
    pub place: String,
    pub hasse_f1: i8,
    pub hasse_scaled_f2: i8,
}

/// Per-candidate outcome, reported so a negative verdict shows its work.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateReport {
    pub scaling: String,
    pub disc_square_class_matches: bool,
    pub hasse_mismatch_at: Option<String>,
}

/// Verdict of the rational similarity test.
#[derive(Debug, Clone, Serialize)]
pub struct SimilarityVerdict {
    pub similar: bool,
    /// Scaling `c` with `f1 ~ c f2` over Q, when similar.
    pub scaling: Option<String>,
    pub dimension_match: bool,
    /// Discriminant square-class representatives of the two forms.
    pub disc_class_f1: String,
    pub disc_class_f2: String,
    pub candidates: Vec<CandidateReport>,
    /// Hasse invariants at every examined place for the witnessing scaling.
    pub local_data: Vec<LocalInvariant>,
}

/// Number of small represented norms fed into the scaling-candidate set.
const SIMILARITY_NORM_CANDIDATES: usize = 4;

/// Decide whether `f1` is rationally similar to `f2`: congruent over Q to
/// `c f2` for some positive rational `c` drawn from the finite candidate
/// set (ratios of small represented norms, determinant-ratio roots).
pub fn rationally_similar(
    g1: &GramMatrix,
    g2: &GramMatrix,
    budget: u64,
) -> Result<SimilarityVerdict> {
    let d1 = diagonalize_form(g1.matrix())?;
    let d2 = diagonalize_form(g2.matrix())?;
    let det1 = g1.det();
    let det2 = g2.det();
    let disc_class_f1 = square_class_string(&det1)?;
    let disc_class_f2 = square_class_string(&det2)?;
    if g1.dimension() != g2.dimension() {
        return Ok(SimilarityVerdict {
            similar: false,
            scaling: None,
            dimension_match: false,
            disc_class_f1,
            disc_class_f2,
            candidates: Vec::new(),
            local_data: Vec::new(),
        });
    }
    let n = g1.dimension();

    let mut rest: BTreeSet<Rat> = BTreeSet::new();
    let n1 = smallest_represented_norms(g1, SIMILARITY_NORM_CANDIDATES, budget)?;
    let n2 = smallest_represented_norms(g2, SIMILARITY_NORM_CANDIDATES, budget)?;
    for a in &n1 {
        for b in &n2 {
            rest.insert(a / b);
        }
    }
    if let Some(root) = rational_nth_root(&(det1.clone() / det2.clone()), n as u32) {
        rest.insert(root);
    }
    rest.remove(&Rat::one());
    // the identity scaling is always tried, and tried first
    let mut candidates = vec![Rat::one()];
    candidates.extend(rest);

    let mut reports = Vec::new();
    for c in &candidates {
        // invariants of c * f2
        let disc_scaled = det2.clone() * pow_rat(c, n as u32);
        let class_ratio = det1.clone() / disc_scaled;
        if !is_rational_square(&class_ratio) {
            reports.push(CandidateReport {
                scaling: rat_to_string(c),
                disc_square_class_matches: false,
                hasse_mismatch_at: None,
            });
            continue;
        }
        let d2_scaled: Vec<Rat> = d2.iter().map(|d| d * c).collect();
        let places = relevant_places(&[&d1, &d2_scaled])?;
        let mut mismatch = None;
        let mut local = Vec::new();
        for &place in &places {
            let h1 = hasse_invariant(&d1, place)?;
            let h2 = hasse_invariant(&d2_scaled, place)?;
            local.push(LocalInvariant {
                place: place.to_string(),
                hasse_f1: h1,
                hasse_scaled_f2: h2,
            });
            if h1 != h2 {
                mismatch = Some(place.to_string());
                break;
            }
        }
        if let Some(at) = mismatch {
            reports.push(CandidateReport {
                scaling: rat_to_string(c),
                disc_square_class_matches: true,
                hasse_mismatch_at: Some(at),
            });
            continue;
        }
        // dimension, signature (both positive definite, c > 0), disc class
        // and all Hasse invariants agree: rationally congruent
        reports.push(CandidateReport {
            scaling: rat_to_string(c),
            disc_square_class_matches: true,
            hasse_mismatch_at: None,
        });
        return Ok(SimilarityVerdict {
            similar: true,
            scaling: Some(rat_to_string(c)),
            dimension_match: true,
            disc_class_f1,
            disc_class_f2,
            candidates: reports,
            local_data: local,
        });
    }
    Ok(SimilarityVerdict {
        similar: false,
        scaling: None,
        dimension_match: true,
        disc_class_f1,
        disc_class_f2,
        candidates: reports,
        local_data: Vec::new(),
    })
}

fn pow_rat(c: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= c.clone();
    }
    acc
}

fn square_class_string(r: &Rat) -> Result<String> {
    let rep = square_class_rep(r);
    Ok(crate::arith::squarefree_part(&rep)?.to_string())
}

/// One flagged pair from a Kitaoka scan: spectrally commensurable at the
/// cutoff yet not rationally similar. Under the conjecture this set is
/// empty; any member is surfaced loudly, never swallowed.
#[derive(Debug, Clone, Serialize)]
pub struct FlaggedPair {
    pub trial: u64,
    pub gram1: Vec<Vec<String>>,
    pub gram2: Vec<Vec<String>>,
    pub commensurable_scaling: Option<String>,
}

/// Contingency table and flags from a randomized Kitaoka scan.
#[derive(Debug, Clone, Serialize)]
pub struct KitaokaScanReport {
    pub dimension: usize,
    pub entry_bound: i64,
    pub trials: u64,
    pub cutoff: String,
    pub seed: u64,
    pub commensurable_and_similar: u64,
    pub commensurable_only: u64,
    pub similar_only: u64,
    pub neither: u64,
    pub budget_errors: u64,
    pub flagged: Vec<FlaggedPair>,
}

/// Cap on the scan dimension; the scan is a desk-scale experiment.
pub const KITAOKA_DIM_CAP: usize = 4;

fn random_pos_def(rng: &mut ChaCha8Rng, dim: usize, entry_bound: i64) -> GramMatrix {
    loop {
        let mut rows = vec![vec![0i64; dim]; dim];
        for i in 0..dim {
            rows[i][i] = rng.gen_range(1..=entry_bound);
            for j in 0..i {
                let v = rng.gen_range(-entry_bound..=entry_bound);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        if let Ok(g) = GramMatrix::from_int_rows(rows) {
            return g;
        }
    }
}

/// Randomized desk-scale test of the commensurability conjecture's forward
/// direction: seeded positive definite integral pairs are classified by
/// (spectrally commensurable at the cutoff) x (rationally similar), and any
/// commensurable-but-not-similar pair is flagged.
///
/// Trials run in parallel but each draws from its own seeded stream, so the
/// report is deterministic.
pub fn kitaoka_scan(
    dimension: usize,
    entry_bound: i64,
    trials: u64,
    cutoff: &Rat,
    max_scalings: usize,
    seed: u64,
    budget: u64,
) -> Result<KitaokaScanReport> {
    if dimension == 0 || dimension > KITAOKA_DIM_CAP {
        return Err(Error::CapExceeded(format!(
            "scan dimension must be between 1 and {KITAOKA_DIM_CAP}"
        )));
    }
    if entry_bound < 1 {
        return Err(Error::CapExceeded("entry bound must be at least 1".into()));
    }
    if !cutoff.is_positive() {
        return Err(Error::ShapeMismatch("cutoff must be positive".into()));
    }
    enum TrialOutcome {
        Classified {
            commensurable: bool,
            similar: bool,
            flagged: Option<Box<FlaggedPair>>,
        },
        BudgetError,
    }
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let g1 = random_pos_def(&mut rng, dimension, entry_bound);
            let g2 = random_pos_def(&mut rng, dimension, entry_bound);
            let sc = spectrally_commensurable(&g1, &g2, cutoff, max_scalings, budget);
            let rs = rationally_similar(&g1, &g2, budget);
            match (sc, rs) {
                (Ok(sc), Ok(rs)) => {
                    let flagged = (sc.commensurable && !rs.similar).then(|| {
                        let dump = |g: &GramMatrix| {
                            (0..g.dimension())
                                .map(|i| {
                                    (0..g.dimension())
                                        .map(|j| rat_to_string(&g.matrix()[(i, j)]))
                                        .collect()
                                })
                                .collect()
                        };
                        Box::new(FlaggedPair {
                            trial,
                            gram1: dump(&g1),
                            gram2: dump(&g2),
                            commensurable_scaling: sc.scaling.as_ref().map(rat_to_string),
                        })
                    });
                    TrialOutcome::Classified {
                        commensurable: sc.commensurable,
                        similar: rs.similar,
                        flagged,
                    }
                }
                (Err(Error::BudgetExceeded(_)), _) | (_, Err(Error::BudgetExceeded(_))) => {
                    TrialOutcome::BudgetError
                }
                // other errors cannot arise from validated inputs
                (Err(_), _) | (_, Err(_)) => TrialOutcome::BudgetError,
            }
        })
        .collect();

    let mut report = KitaokaScanReport {
        dimension,
        entry_bound,
        trials,
        cutoff: rat_to_string(cutoff),
        seed,
        commensurable_and_similar: 0,
        commensurable_only: 0,
        similar_only: 0,
        neither: 0,
        budget_errors: 0,
        flagged: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            TrialOutcome::Classified {
                commensurable,
                similar,
                flagged,
            } => {
                match (commensurable, similar) {
                    (true, true) => report.commensurable_and_similar += 1,
                    (true, false) => report.commensurable_only += 1,
                    (false, true) => report.similar_only += 1,
                    (false, false) => report.neither += 1,
                }
                if let Some(f) = flagged {
                    report.flagged.push(*f);
                }
            }
            TrialOutcome::BudgetError => report.budget_errors += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rat;
    use crate::lattices::builtin_lattice;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonalization_examples() {
        assert_eq!(
            diagonalize_form(&rm(&[&[1, 0], &[0, 1]])).unwrap(),
            vec![rat(1), rat(1)]
        );
        assert_eq!(
            diagonalize_form(&rm(&[&[2, 1], &[1, 2]])).unwrap(),
            vec![rat(2), parse_rat("3/2").unwrap()]
        );
        // hyperbolic plane: nondegenerate but indefinite
        let h = diagonalize_form(&rm(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h[0].is_positive() != h[1].is_positive());
        assert!(matches!(
            diagonalize_form(&rm(&[&[1, 1], &[1, 1]])),
            Err(Error::Degenerate)
        ));
    }

    #[test]
    fn diagonalization_congruence_reconstructs() {
        for m in [
            rm(&[&[2, 1], &[1, 2]]),
            rm(&[&[0, 1], &[1, 0]]),
            rm(&[&[1, 2, 0], &[2, 1, 3], &[0, 3, -1]]),
        ] {
            let (diag, u) = diagonalize_with_transform(&m).unwrap();
            let recon = u.transpose().mul(&m).unwrap().mul(&u).unwrap();
            for i in 0..m.rows() {
                for j in 0..m.rows() {
                    let expect = if i == j { diag[i].clone() } else { Rat::zero() };
                    assert_eq!(recon[(i, j)], expect);
                }
            }
        }
    }

    #[test]
    fn hilbert_symbol_basics() {
        let one = rat(1);
        let minus_one = rat(-1);
        for p in [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Infinity] {
            assert_eq!(hilbert_symbol(&one, &rat(7), p).unwrap(), 1);
        }
        assert_eq!(
            hilbert_symbol(&minus_one, &minus_one, Place::Infinity).unwrap(),
            -1
        );
        assert_eq!(
            hilbert_symbol(&minus_one, &minus_one, Place::Finite(2)).unwrap(),
            -1
        );
        // (-1,-1) is soluble over Q_p for odd p
        assert_eq!(
            hilbert_symbol(&minus_one, &minus_one, Place::Finite(3)).unwrap(),
            1
        );
        assert!(matches!(
            hilbert_symbol(&one, &one, Place::Finite(6)),
            Err(Error::NotPrime(6))
        ));
    }

    #[test]
    fn hilbert_symbol_known_table() {
        // (2, p)_p = legendre(2 | p)
        assert_eq!(hilbert_symbol(&rat(2), &rat(7), Place::Finite(7)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&rat(2), &rat(5), Place::Finite(5)).unwrap(), -1);
        // (p, p)_p = (-1, p)_p
        assert_eq!(hilbert_symbol(&rat(3), &rat(3), Place::Finite(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(5), &rat(5), Place::Finite(5)).unwrap(), 1);
        // rational arguments reduce by square classes: 3/2 ~ 6
        assert_eq!(
            hilbert_symbol(&parse_rat("3/2").unwrap(), &rat(5), Place::Finite(5)).unwrap(),
            hilbert_symbol(&rat(6), &rat(5), Place::Finite(5)).unwrap()
        );
    }

    #[test]
    fn hasse_invariant_examples() {
        let ones = vec![rat(1); 4];
        for p in [Place::Finite(2), Place::Finite(3), Place::Infinity] {
            assert_eq!(hasse_invariant(&ones, p).unwrap(), 1);
        }
        let d = vec![rat(2), parse_rat("3/2").unwrap()];
        assert_eq!(
            hasse_invariant(&d, Place::Finite(3)).unwrap(),
            hilbert_symbol(&rat(2), &parse_rat("3/2").unwrap(), Place::Finite(3)).unwrap()
        );
        // reordering leaves the product unchanged
        let mut rev = d.clone();
        rev.reverse();
        for p in [Place::Finite(2), Place::Finite(3), Place::Infinity] {
            assert_eq!(hasse_invariant(&d, p).unwrap(), hasse_invariant(&rev, p).unwrap());
        }
    }

    #[test]
    fn self_similarity_and_rescaling() {
        let a2 = builtin_lattice("A2").unwrap();
        let v = rationally_similar(&a2, &a2, 100_000).unwrap();
        assert!(v.similar);
        assert_eq!(v.scaling.as_deref(), Some("1"));
        let tripled = a2.scaled(&rat(3)).unwrap();
        let v = rationally_similar(&a2, &tripled, 100_000).unwrap();
        assert!(v.similar);
        // A2 happens to be similar to 3*A2 already at c = 1 (the Hasse data
        // of (2,6) and (6,2) agree everywhere), which the preferred identity
        // candidate finds first
        assert!(v.scaling.is_some());
        // 3 is not a sum of two rational squares, so Z2 vs 3*Z2 cannot be
        // bridged at c = 1; some genuine rescaling must be found instead
        // (valid scalings form a whole coset: 1/3 times any sum of two
        // squares, so only validity is asserted, not the representative)
        let z2 = builtin_lattice("Zn:2").unwrap();
        let three = z2.scaled(&rat(3)).unwrap();
        let v = rationally_similar(&z2, &three, 100_000).unwrap();
        assert!(v.similar);
        assert_ne!(v.scaling.as_deref(), Some("1"));
        assert!(v.local_data.iter().all(|l| l.hasse_f1 == l.hasse_scaled_f2));
    }

    #[test]
    fn z2_vs_a2_not_similar() {
        let z2 = builtin_lattice("Zn:2").unwrap();
        let a2 = builtin_lattice("A2").unwrap();
        let v = rationally_similar(&z2, &a2, 100_000).unwrap();
        assert!(!v.similar);
        // rank 2: disc classes 1 vs 3 cannot be bridged by c^2
        assert_eq!(v.disc_class_f1, "1");
        assert_eq!(v.disc_class_f2, "3");
        assert!(!v.candidates.is_empty());
        assert!(v.candidates.iter().all(|c| !c.disc_square_class_matches));
    }

    #[test]
    fn milnor_pair_is_similar_with_scaling_one() {
        let a = builtin_lattice("E8E8").unwrap();
        let b = builtin_lattice("D16plus").unwrap();
        let v = rationally_similar(&a, &b, DEFAULT_TEST_BUDGET).unwrap();
        assert!(v.similar);
        assert_eq!(v.scaling.as_deref(), Some("1"));
        assert_eq!(v.disc_class_f1, "1");
        assert_eq!(v.disc_class_f2, "1");
        assert!(v.local_data.iter().all(|l| l.hasse_f1 == l.hasse_scaled_f2));
    }

    const DEFAULT_TEST_BUDGET: u64 = 10_000_000;

    #[test]
    fn dimension_mismatch_is_dissimilar() {
        let z1 = builtin_lattice("Zn:1").unwrap();
        let z2 = builtin_lattice("Zn:2").unwrap();
        let v = rationally_similar(&z1, &z2, 1000).unwrap();
        assert!(!v.similar);
        assert!(!v.dimension_match);
    }

    #[test]
    fn small_scan_runs_clean() {
        let report = kitaoka_scan(2, 3, 25, &rat(30), 8, 7, 200_000).unwrap();
        assert_eq!(report.trials, 25);
        assert!(report.flagged.is_empty());
        assert_eq!(
            report.commensurable_and_similar
                + report.commensurable_only
                + report.similar_only
                + report.neither
                + report.budget_errors,
            25
        );
        // injected exact rescaling counts as commensurable and similar
        let g = builtin_lattice("A2").unwrap();
        let g3 = g.scaled(&rat(3)).unwrap();
        let sc = spectrally_commensurable(&g, &g3, &rat(30), 8, 200_000).unwrap();
        let rs = rationally_similar(&g, &g3, 200_000).unwrap();
        assert!(sc.commensurable && rs.similar);
        assert_eq!(sc.scaling, Some(rat(3)));
    }

    #[test]
    fn scan_rejects_oversized_dimension() {
        assert!(matches!(
            kitaoka_scan(5, 3, 1, &rat(10), 4, 0, 1000),
            Err(Error::CapExceeded(_))
        ));
    }
}
