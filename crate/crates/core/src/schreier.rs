//! Schreier coset graphs and transplantation.
//!
//! A Gassmann triple `(G, H1, H2)` together with an inverse-closed
//! generating multiset `S` produces two coset graphs on `H1\G` and `H2\G`.
//! Because the coset representations are isomorphic, the graphs share their
//! adjacency spectrum; this module certifies that two independent ways:
//!
//! * exact characteristic polynomials (division-free Berkowitz), and
//! * an explicit invertible intertwiner `Q` with `Q A1 = A2 Q`, the discrete
//!   transplantation map carrying eigenfunctions across.
//!
//! The commutant of the two coset representations has a combinatorial basis:
//! indicator matrices of the orbits of `G` acting diagonally on coset pairs.
//! An invertible element exists precisely when the permutation characters
//! agree, and is found by seeded random combinations with a deterministic
//! exhaustive fallback.

use crate::groups::{coset_action, permutation_character, CosetAction, PermGroup, Subgroup};
use crate::matrix::Matrix;
use crate::perm::Permutation;
use crate::{Error, Int, IntMatrix, IntPoly, Rat, RatMatrix, Result};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};

/// Fixed seed for the random intertwiner search, so outputs are stable.
const INTERTWINER_SEED: u64 = 0;
/// Random attempts before falling back to the exhaustive coefficient box.
const INTERTWINER_RETRIES: usize = 32;

/// A Schreier coset graph: vertices are cosets, edge multiplicities count
/// generators carrying one coset to another. Loops sit on the diagonal with
/// multiplicity one per fixed generator occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetGraph {
    adjacency: Vec<Vec<u64>>,
    generator_labels: Vec<String>,
}

impl CosetGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<u64>] {
        &self.adjacency
    }

    /// The generating multiset used, in cycle notation.
    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    /// Regularity degree `|S|`, the common row sum.
    pub fn regularity(&self) -> u64 {
        self.generator_labels.len() as u64
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        Matrix::from_rows(
            self.adjacency
                .iter()
                .map(|row| row.iter().map(|&m| Int::from(m)).collect())
                .collect(),
        )
        .expect("adjacency is square")
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        self.to_int_matrix().map(|v| Rat::from_integer(v.clone()))
    }

    /// Exact characteristic polynomial of the adjacency matrix.
    pub fn char_poly(&self) -> IntPoly {
        char_poly(&self.to_int_matrix()).expect("adjacency is square")
    }
}

/// Check that a multiset of group elements is closed under inverses.
fn check_inverse_closed(group: &PermGroup, multiset: &[usize]) -> Result<()> {
    let mut counts: HashMap<usize, i64> = HashMap::new();
    for &s in multiset {
        *counts.entry(s).or_insert(0) += 1;
    }
    for (&s, &c) in &counts {
        let inv = group.inv(s);
        if counts.get(&inv).copied().unwrap_or(0) != c {
            return Err(Error::NotSymmetric(format!(
                "element {} occurs {} times but its inverse {} does not",
                group.element(s),
                c,
                group.element(inv)
            )));
        }
    }
    Ok(())
}

/// Build the Schreier graph of `H\G` with respect to the inverse-closed
/// multiset `S`, given by element indices into `G`.
pub fn schreier_graph_by_indices(
    group: &PermGroup,
    subgroup: &Subgroup<'_>,
    multiset: &[usize],
) -> Result<CosetGraph> {
    if multiset.iter().any(|&s| s >= group.order()) {
        return Err(Error::NotSymmetric("multiset index out of range".into()));
    }
    check_inverse_closed(group, multiset)?;
    let action = coset_action(group, subgroup)?;
    let n = action.coset_count();
    let mut adjacency = vec![vec![0u64; n]; n];
    for c in 0..n {
        for &s in multiset {
            adjacency[c][action.act(c, s)] += 1;
        }
    }
    // inverse-closure makes the multiplicity matrix symmetric
    debug_assert!((0..n).all(|i| (0..n).all(|j| adjacency[i][j] == adjacency[j][i])));
    Ok(CosetGraph {
        adjacency,
        generator_labels: multiset
            .iter()
            .map(|&s| group.element(s).to_string())
            .collect(),
    })
}

/// As [`schreier_graph_by_indices`], with the multiset given as permutations
/// that must lie in `G`.
pub fn schreier_graph(
    group: &PermGroup,
    subgroup: &Subgroup<'_>,
    multiset: &[Permutation],
) -> Result<CosetGraph> {
    let indices: Vec<usize> = multiset
        .iter()
        .map(|p| {
            group
                .index_of(p)
                .ok_or_else(|| Error::NotSymmetric(format!("{p} is not in the group")))
        })
        .collect::<Result<_>>()?;
    schreier_graph_by_indices(group, subgroup, &indices)
}

/// Exact characteristic polynomial `det(x I - A)` of an integer matrix.
pub fn char_poly(adjacency: &IntMatrix) -> Result<IntPoly> {
    adjacency.char_poly()
}

/// Two graphs are declared isospectral when their vertex counts and exact
/// characteristic polynomials coincide.
pub fn isospectral_graphs(g1: &CosetGraph, g2: &CosetGraph) -> bool {
    g1.vertex_count() == g2.vertex_count() && g1.char_poly() == g2.char_poly()
}

/// Basis of the commutant: indicator matrices of the orbits of `G` acting
/// diagonally on (coset of H2, coset of H1) pairs.
fn commutant_orbits(
    group: &PermGroup,
    act1: &CosetAction<'_>,
    act2: &CosetAction<'_>,
) -> Vec<Vec<(usize, usize)>> {
    let (n2, n1) = (act2.coset_count(), act1.coset_count());
    let mut orbit_of = vec![usize::MAX; n2 * n1];
    let mut orbits = Vec::new();
    let gens = group.generator_indices();
    for start in 0..n2 * n1 {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = Vec::new();
        let mut queue = VecDeque::from([start]);
        orbit_of[start] = id;
        while let Some(p) = queue.pop_front() {
            members.push((p / n1, p % n1));
            for &g in &gens {
                let (c2, c1) = (p / n1, p % n1);
                let q = act2.act(c2, g) * n1 + act1.act(c1, g);
                if orbit_of[q] == usize::MAX {
                    orbit_of[q] = id;
                    queue.push_back(q);
                }
            }
        }
        orbits.push(members);
    }
    orbits
}

fn assemble(orbits: &[Vec<(usize, usize)>], coeffs: &[Int], n2: usize, n1: usize) -> RatMatrix {
    let mut q: RatMatrix = Matrix::zero(n2, n1);
    for (orbit, c) in orbits.iter().zip(coeffs) {
        let value = Rat::from_integer(c.clone());
        for &(i, j) in orbit {
            q[(i, j)] = value.clone();
        }
    }
    q
}

/// Find an invertible rational `Q` with `Q p1(g) = p2(g) Q` for every
/// generator `g` (hence all of `G`), where `p_i` are the coset permutation
/// representations.
///
/// Equality of the permutation characters is exactly the existence
/// criterion, so a character mismatch reports `NoIntertwiner` immediately.
/// Otherwise an invertible commutant element is located by seeded random
/// integer combinations of the orbit basis, with an exhaustive coefficient
/// box as a deterministic fallback (the determinant polynomial has degree at
/// most the coset count in each coefficient, so the box cannot miss).
pub fn equivariant_intertwiner(
    group: &PermGroup,
    h1: &Subgroup<'_>,
    h2: &Subgroup<'_>,
) -> Result<RatMatrix> {
    if h1.index_in_parent() != h2.index_in_parent() {
        return Err(Error::NoIntertwiner(format!(
            "coset counts differ: {} vs {}",
            h1.index_in_parent(),
            h2.index_in_parent()
        )));
    }
    if permutation_character(group, h1)? != permutation_character(group, h2)? {
        return Err(Error::NoIntertwiner(
            "permutation characters differ, so the coset representations are inequivalent".into(),
        ));
    }
    let act1 = coset_action(group, h1)?;
    let act2 = coset_action(group, h2)?;
    let (n2, n1) = (act2.coset_count(), act1.coset_count());
    let orbits = commutant_orbits(group, &act1, &act2);
    let k = orbits.len();

    let mut found: Option<RatMatrix> = None;
    let mut rng = ChaCha8Rng::seed_from_u64(INTERTWINER_SEED);
    for _ in 0..INTERTWINER_RETRIES {
        let coeffs: Vec<Int> = (0..k)
            .map(|_| Int::from(rng.gen_range(1..=n1 as i64)))
            .collect();
        let q = assemble(&orbits, &coeffs, n2, n1);
        if !q.det().is_zero() {
            found = Some(q);
            break;
        }
    }
    if found.is_none() {
        // odometer over {0..n1}^k; guaranteed to contain a nonvanishing
        // point of the degree-<=n1 determinant polynomial
        let mut coeffs = vec![Int::zero(); k];
        'odometer: loop {
            let q = assemble(&orbits, &coeffs, n2, n1);
            if !q.det().is_zero() {
                found = Some(q);
                break;
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    break 'odometer;
                }
                if coeffs[pos] < Int::from(n1) {
                    coeffs[pos] += Int::one();
                    break;
                }
                coeffs[pos] = Int::zero();
                pos += 1;
            }
        }
    }
    let q = found
        .ok_or_else(|| Error::NoIntertwiner("commutant contains no invertible element".into()))?;
    // soundness check: equivariance on every generator
    for &g in &group.generator_indices() {
        let p1 = perm_matrix(&act1, g);
        let p2 = perm_matrix(&act2, g);
        if q.mul(&p1)? != p2.mul(&q)? {
            return Err(Error::Internal(
                "constructed intertwiner fails equivariance".into(),
            ));
        }
    }
    Ok(q)
}

/// The permutation matrix of `g` on cosets: `M[c][d] = 1` iff `c * g = d`,
/// so that `M_g M_h = M_{gh}` and the adjacency operator is `sum_s M_s`.
fn perm_matrix(action: &CosetAction<'_>, g: usize) -> RatMatrix {
    let n = action.coset_count();
    let mut m: RatMatrix = Matrix::zero(n, n);
    for c in 0..n {
        m[(c, action.act(c, g))] = Rat::one();
    }
    m
}

/// Verify the transplantation identity `Q A1 = A2 Q` exactly. Together with
/// `det Q != 0` this re-proves isospectrality independently of any
/// characteristic polynomial.
pub fn transplant_check(q: &RatMatrix, g1: &CosetGraph, g2: &CosetGraph) -> Result<bool> {
    if q.rows() != g2.vertex_count() || q.cols() != g1.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "intertwiner is {}x{} but graphs have {} and {} vertices",
            q.rows(),
            q.cols(),
            g1.vertex_count(),
            g2.vertex_count()
        )));
    }
    let a1 = g1.to_rat_matrix();
    let a2 = g2.to_rat_matrix();
    Ok(q.mul(&a1)? == a2.mul(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::DEFAULT_ELEMENT_CAP;

    fn z3() -> PermGroup {
        let g = Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap();
        PermGroup::close_generators(&[g], 10).unwrap()
    }

    #[test]
    fn cayley_graph_of_z3_is_the_triangle() {
        let g = z3();
        let h = Subgroup::trivial(&g);
        let rot = g
            .index_of(&Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap())
            .unwrap();
        let graph = schreier_graph_by_indices(&g, &h, &[rot, g.inv(rot)]).unwrap();
        assert_eq!(graph.vertex_count(), 3);
        assert_eq!(
            graph.char_poly().coeffs(),
            &[Int::from(-2), Int::from(-3), Int::from(0), Int::from(1)]
        );
    }

    #[test]
    fn full_subgroup_gives_loops() {
        let g = z3();
        let h = Subgroup::full(&g);
        let rot = g
            .index_of(&Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap())
            .unwrap();
        let graph = schreier_graph_by_indices(&g, &h, &[rot, g.inv(rot)]).unwrap();
        assert_eq!(graph.vertex_count(), 1);
        assert_eq!(graph.adjacency()[0][0], 2);
    }

    #[test]
    fn non_symmetric_multiset_is_rejected() {
        let g = z3();
        let h = Subgroup::trivial(&g);
        let rot = g
            .index_of(&Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap())
            .unwrap();
        assert!(matches!(
            schreier_graph_by_indices(&g, &h, &[rot]),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn triangle_vs_loops_are_not_isospectral() {
        let g = z3();
        let rot = g
            .index_of(&Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap())
            .unwrap();
        let triangle =
            schreier_graph_by_indices(&g, &Subgroup::trivial(&g), &[rot, g.inv(rot)]).unwrap();
        // 3 isolated vertices with two loops each: the identity taken twice
        let loops = schreier_graph_by_indices(&g, &Subgroup::trivial(&g), &[0, 0]).unwrap();
        assert!(isospectral_graphs(&triangle, &triangle));
        assert!(!isospectral_graphs(&triangle, &loops));
        // (x - 2)^3 for the loops graph
        assert_eq!(
            loops.char_poly().coeffs(),
            &[Int::from(-8), Int::from(12), Int::from(-6), Int::from(1)]
        );
    }

    #[test]
    fn regularity_row_sums() {
        let g = fixtures::gl32();
        let h = fixtures::gl32_point_stabilizer(&g);
        let gens = g.generator_indices();
        let s = vec![gens[0], g.inv(gens[0]), gens[1], g.inv(gens[1])];
        let graph = schreier_graph_by_indices(&g, &h, &s).unwrap();
        assert_eq!(graph.vertex_count(), 7);
        for row in graph.adjacency() {
            assert_eq!(row.iter().sum::<u64>(), 4);
        }
        // |S| is always an adjacency eigenvalue: char poly vanishes there
        let p = graph.char_poly();
        assert!(p.eval(&Int::from(4)).is_zero());
    }

    #[test]
    fn gl32_pair_is_isospectral_with_transplantation() {
        let g = fixtures::gl32();
        let h1 = fixtures::gl32_point_stabilizer(&g);
        let h2 = fixtures::gl32_plane_stabilizer(&g);
        let gens = g.generator_indices();
        let s = vec![gens[0], g.inv(gens[0]), gens[1], g.inv(gens[1])];
        let g1 = schreier_graph_by_indices(&g, &h1, &s).unwrap();
        let g2 = schreier_graph_by_indices(&g, &h2, &s).unwrap();
        assert!(isospectral_graphs(&g1, &g2));
        let q = equivariant_intertwiner(&g, &h1, &h2).unwrap();
        assert!(!q.det().is_zero());
        assert!(transplant_check(&q, &g1, &g2).unwrap());
    }

    #[test]
    fn identity_intertwiner_for_equal_subgroups() {
        let g = z3();
        let h = Subgroup::trivial(&g);
        let q = equivariant_intertwiner(&g, &h, &h).unwrap();
        assert!(!q.det().is_zero());
        let rot = g
            .index_of(&Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap())
            .unwrap();
        let graph = schreier_graph_by_indices(&g, &h, &[rot, g.inv(rot)]).unwrap();
        assert!(transplant_check(&q, &graph, &graph).unwrap());
        // the identity matrix is itself a valid intertwiner here
        let id: RatMatrix = Matrix::identity(3);
        assert!(transplant_check(&id, &graph, &graph).unwrap());
    }

    #[test]
    fn conjugate_subgroups_admit_an_intertwiner() {
        let a = Permutation::parse_cycles("(0 1)", 3, 1).unwrap();
        let b = Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap();
        let g = PermGroup::close_generators(&[a, b], DEFAULT_ELEMENT_CAP).unwrap();
        let h1 =
            Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 1)", 3, 1).unwrap()])
                .unwrap();
        let h2 =
            Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 2)", 3, 1).unwrap()])
                .unwrap();
        let q = equivariant_intertwiner(&g, &h1, &h2).unwrap();
        assert!(!q.det().is_zero());
    }

    #[test]
    fn character_mismatch_reports_no_intertwiner() {
        // S4 with <(0 1)> and <(0 1)(2 3)>: both order 2, characters differ
        let a = Permutation::parse_cycles("(0 1)", 4, 1).unwrap();
        let b = Permutation::parse_cycles("(0 1 2 3)", 4, 1).unwrap();
        let g = PermGroup::close_generators(&[a, b], DEFAULT_ELEMENT_CAP).unwrap();
        let h1 =
            Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 1)", 4, 1).unwrap()])
                .unwrap();
        let h2 = Subgroup::from_generators(
            &g,
            &[Permutation::parse_cycles("(0 1)(2 3)", 4, 1).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            equivariant_intertwiner(&g, &h1, &h2),
            Err(Error::NoIntertwiner(_))
        ));
    }

    #[test]
    fn transplant_shape_mismatch() {
        let g = z3();
        let rot = g
            .index_of(&Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap())
            .unwrap();
        let triangle =
            schreier_graph_by_indices(&g, &Subgroup::trivial(&g), &[rot, g.inv(rot)]).unwrap();
        let point = schreier_graph_by_indices(&g, &Subgroup::full(&g), &[rot, g.inv(rot)]).unwrap();
        let id: RatMatrix = Matrix::identity(3);
        assert!(matches!(
            transplant_check(&id, &triangle, &point),
            Err(Error::ShapeMismatch(_))
        ));
        // identity fails to intertwine the triangle with the loops graph
        let loops = schreier_graph_by_indices(&g, &Subgroup::trivial(&g), &[0, 0]).unwrap();
        assert!(!transplant_check(&id, &triangle, &loops).unwrap());
    }
}
