//! Gassmann triples: a finite group with two subgroups meeting every
//! conjugacy class in the same number of elements.
//!
//! Three equivalent conditions are in play for a triple `(G, H1, H2)` with
//! `|H1| = |H2|`:
//!
//! 1. the coset representations `C[H1\G]` and `C[H2\G]` are isomorphic;
//! 2. `|C ∩ H1| = |C ∩ H2|` for every conjugacy class `C`;
//! 3. every representation of `G` has invariant spaces of equal dimension
//!    under `H1` and `H2`.
//!
//! [`is_gassmann`] decides condition (2) from the intersection table and
//! independently recomputes condition (1) through permutation characters;
//! the two verdicts must agree, and a mismatch is reported as an internal
//! error rather than swallowed. Non-conjugacy is established by exhaustive
//! search, which is what makes the verdict a certificate at desk scale.

use crate::groups::{permutation_character, PermGroup, Subgroup};
use crate::perm::Permutation;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Per-class intersection counts backing condition (2).
#[derive(Debug, Clone, Serialize)]
pub struct ClassIntersection {
    pub class: usize,
    pub representative: String,
    pub class_size: usize,
    pub in_h1: usize,
    pub in_h2: usize,
}

/// The outcome of testing a triple `(G, H1, H2)`.
#[derive(Debug, Clone, Serialize)]
pub struct GassmannVerdict {
    pub order_g: usize,
    pub order_h1: usize,
    pub order_h2: usize,
    pub condition2_holds: bool,
    pub intersection_table: Vec<ClassIntersection>,
    pub characters_equal: bool,
    pub subgroups_conjugate: bool,
    pub is_gassmann_system: bool,
}

fn class_intersections(group: &PermGroup, subgroup: &Subgroup<'_>) -> Vec<usize> {
    let mut counts = vec![0usize; group.classes().len()];
    for &h in subgroup.element_indices() {
        counts[group.class_of(h)] += 1;
    }
    counts
}

/// Test whether `(G, H1, H2)` is a Gassmann system.
///
/// Condition (2) is read off the intersection table; character equality is
/// computed independently from fixed-coset counts and cross-checked against
/// it. Conjugacy of the subgroups is decided by brute force over all of `G`,
/// so `is_gassmann_system` is exhaustively certified.
pub fn is_gassmann(
    group: &PermGroup,
    h1: &Subgroup<'_>,
    h2: &Subgroup<'_>,
) -> Result<GassmannVerdict> {
    for h in [h1, h2] {
        if !std::ptr::eq(group, h.parent()) {
            return Err(Error::NotASubgroup(
                "subgroup belongs to a different group".into(),
            ));
        }
    }
    let c1 = class_intersections(group, h1);
    let c2 = class_intersections(group, h2);
    let intersection_table: Vec<ClassIntersection> = group
        .classes()
        .iter()
        .enumerate()
        .map(|(k, class)| ClassIntersection {
            class: k,
            representative: group.element(class.representative).to_string(),
            class_size: class.size(),
            in_h1: c1[k],
            in_h2: c2[k],
        })
        .collect();
    let condition2_holds = h1.order() == h2.order() && c1 == c2;

    let chi1 = permutation_character(group, h1)?;
    let chi2 = permutation_character(group, h2)?;
    let characters_equal = chi1 == chi2;
    if condition2_holds != characters_equal {
        return Err(Error::Internal(format!(
            "condition (2) = {condition2_holds} but character equality = {characters_equal}; \
             these are equivalent and must agree"
        )));
    }

    let subgroups_conjugate = if h1.order() == h2.order() {
        h1.find_conjugator(h2).is_some()
    } else {
        false
    };
    Ok(GassmannVerdict {
        order_g: group.order(),
        order_h1: h1.order(),
        order_h2: h2.order(),
        condition2_holds,
        intersection_table,
        characters_equal,
        subgroups_conjugate,
        is_gassmann_system: condition2_holds && !subgroups_conjugate,
    })
}

/// An abstract finite group given by its multiplication table.
///
/// `table[a][b]` is the index of the product `a * b`. Classical small
/// examples (the order-16 pair) enter this way, without presentations.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    element_orders: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validate a multiplication table as a group. Associativity is checked
    /// on all triples for order <= 64 and on 4096 deterministically sampled
    /// triples above that.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let d = table.len();
        if d == 0 {
            return Err(Error::InvalidGroupTable("empty table".into()));
        }
        for row in &table {
            if row.len() != d || row.iter().any(|&x| x >= d) {
                return Err(Error::InvalidGroupTable(
                    "table is not square with entries in range".into(),
                ));
            }
        }
        let identity = (0..d)
            .find(|&e| (0..d).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        // Latin square: rows and columns are permutations, which together
        // with the identity gives two-sided inverses
        for a in 0..d {
            let mut row_seen = vec![false; d];
            let mut col_seen = vec![false; d];
            for b in 0..d {
                if row_seen[table[a][b]] || col_seen[table[b][a]] {
                    return Err(Error::InvalidGroupTable(format!(
                        "row or column {a} is not a permutation"
                    )));
                }
                row_seen[table[a][b]] = true;
                col_seen[table[b][a]] = true;
            }
        }
        if d <= 64 {
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidGroupTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state as usize
            };
            for _ in 0..4096 {
                let (a, b, c) = (next() % d, next() % d, next() % d);
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidGroupTable(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        let mut element_orders = Vec::with_capacity(d);
        for x in 0..d {
            let mut k = 1usize;
            let mut cur = x;
            while cur != identity {
                cur = table[cur][x];
                k += 1;
                if k > d {
                    return Err(Error::InvalidGroupTable(format!(
                        "element {x} has no finite order"
                    )));
                }
            }
            element_orders.push(k);
        }
        Ok(FiniteGroupTable {
            table,
            identity,
            element_orders,
        })
    }

    /// Read the table off a fully enumerated permutation group.
    pub fn from_group(group: &PermGroup) -> Result<Self> {
        let d = group.order();
        let table = (0..d)
            .map(|a| (0..d).map(|b| group.mul(a, b)).collect())
            .collect();
        Self::new(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders[x]
    }

    /// How many elements of each multiplicative order the group has.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut stats = BTreeMap::new();
        for &o in &self.element_orders {
            *stats.entry(o).or_insert(0) += 1;
        }
        stats
    }

    pub fn is_abelian(&self) -> bool {
        let d = self.order();
        (0..d).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// The right-regular embedding into `Sym(d)`: element `g` becomes the
    /// permutation `x -> x * g`. An element of order `k` gets cycle type
    /// `k^(d/k)`, which is why order statistics decide condition (2) for the
    /// regular embeddings without ever enumerating `S_d`.
    pub fn regular_permutations(&self) -> Vec<Permutation> {
        let d = self.order();
        (0..d)
            .map(|g| {
                Permutation::from_images((0..d).map(|x| self.table[x][g]).collect())
                    .expect("rows of a group table are permutations")
            })
            .collect()
    }
}

/// Verdict of the order-statistics test for the regular embeddings.
#[derive(Debug, Clone, Serialize)]
pub struct OrderStatisticsVerdict {
    pub order: usize,
    pub same_statistics: bool,
    pub statistics_h1: BTreeMap<usize, usize>,
    pub statistics_h2: BTreeMap<usize, usize>,
    /// Brute-force isomorphism verdict, reported for order <= 16 only.
    pub isomorphic: Option<bool>,
}

/// Largest order for which the brute-force isomorphism search is attempted.
pub const ISOMORPHISM_SEARCH_CAP: usize = 16;

/// Compare element-order statistics of two groups of equal order.
///
/// Equal statistics are exactly condition (2) for the regular embeddings
/// into `S_d`: an element of order `k` embeds with cycle type `k^(d/k)`, and
/// the `S_d`-class of a permutation is its cycle type, so the class
/// intersection counts are the order counts. For `d <= 16` the verdict also
/// reports whether the tables are isomorphic, so a caller can confirm the
/// pair is genuinely non-conjugate material and not one group twice.
pub fn gassmann_via_order_statistics(
    h1: &FiniteGroupTable,
    h2: &FiniteGroupTable,
) -> Result<OrderStatisticsVerdict> {
    if h1.order() != h2.order() {
        return Err(Error::OrderMismatch(h1.order(), h2.order()));
    }
    let s1 = h1.order_statistics();
    let s2 = h2.order_statistics();
    let isomorphic = (h1.order() <= ISOMORPHISM_SEARCH_CAP).then(|| tables_isomorphic(h1, h2));
    Ok(OrderStatisticsVerdict {
        order: h1.order(),
        same_statistics: s1 == s2,
        statistics_h1: s1,
        statistics_h2: s2,
        isomorphic,
    })
}

/// Exhaustive isomorphism test between two small multiplication tables.
pub fn tables_isomorphic(t1: &FiniteGroupTable, t2: &FiniteGroupTable) -> bool {
    if t1.order() != t2.order() {
        return false;
    }
    if t1.order_statistics() != t2.order_statistics() {
        return false;
    }
    let d = t1.order();
    // greedy generating sequence for t1
    let mut gens: Vec<usize> = Vec::new();
    let mut generated = close_table_subset(t1, &gens);
    while generated.len() < d {
        let next = (0..d).find(|x| !generated.contains(x)).expect("not yet full");
        gens.push(next);
        generated = close_table_subset(t1, &gens);
    }
    let mut map = vec![usize::MAX; d];
    map[t1.identity()] = t2.identity();
    assign(t1, t2, &gens, 0, &mut map)
}

fn close_table_subset(t: &FiniteGroupTable, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; t.order()];
    seen[t.identity()] = true;
    let mut stack = vec![t.identity()];
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = t.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..t.order()).filter(|&x| seen[x]).collect()
}

fn assign(
    t1: &FiniteGroupTable,
    t2: &FiniteGroupTable,
    gens: &[usize],
    k: usize,
    map: &mut Vec<usize>,
) -> bool {
    if k == gens.len() {
        return extend_hom(t1, t2, gens, map.clone()).is_some();
    }
    let g = gens[k];
    for candidate in 0..t2.order() {
        if t2.element_order(candidate) != t1.element_order(g) {
            continue;
        }
        map[g] = candidate;
        // partial consistency: the map must already extend on what's known
        if extend_hom(t1, t2, &gens[..=k], map.clone()).is_some()
            && assign(t1, t2, gens, k + 1, map)
        {
            return true;
        }
    }
    map[g] = usize::MAX;
    false
}

/// Propagate generator images to the subgroup they generate; `None` on conflict.
fn extend_hom(
    t1: &FiniteGroupTable,
    t2: &FiniteGroupTable,
    gens: &[usize],
    mut map: Vec<usize>,
) -> Option<Vec<usize>> {
    let mut known: Vec<usize> = vec![t1.identity()];
    let mut queue: Vec<usize> = vec![t1.identity()];
    for &g in gens {
        if map[g] == usize::MAX {
            continue;
        }
        if !known.contains(&g) {
            known.push(g);
            queue.push(g);
        }
    }
    while let Some(x) = queue.pop() {
        for &g in gens {
            if map[g] == usize::MAX {
                continue;
            }
            let y = t1.mul(x, g);
            let fy = t2.mul(map[x], map[g]);
            if map[y] == usize::MAX {
                map[y] = fy;
                known.push(y);
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    // injectivity on the generated subgroup
    let mut image: Vec<usize> = known.iter().map(|&x| map[x]).collect();
    image.sort_unstable();
    image.dedup();
    if image.len() != known.len() {
        return None;
    }
    // homomorphism property on all known pairs
    for &a in &known {
        for &b in &known {
            let ab = t1.mul(a, b);
            if map[ab] != usize::MAX && map[ab] != t2.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::{enumerate_subgroups, PermGroup, Subgroup, DEFAULT_ELEMENT_CAP};
    use crate::perm::Permutation;

    fn s3() -> PermGroup {
        let a = Permutation::parse_cycles("(0 1)", 3, 1).unwrap();
        let b = Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap();
        PermGroup::close_generators(&[a, b], DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn s3_subgroups_are_never_gassmann() {
        let g = s3();
        let h1 = Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 1)", 3, 1).unwrap()]).unwrap();
        let h2 = Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 1 2)", 3, 1).unwrap()]).unwrap();
        let v = is_gassmann(&g, &h1, &h2).unwrap();
        assert!(!v.condition2_holds); // orders 2 vs 3
        assert!(!v.is_gassmann_system);

        // identical subgroups: condition (2) holds but they are conjugate
        let v = is_gassmann(&g, &h1, &h1).unwrap();
        assert!(v.condition2_holds);
        assert!(v.subgroups_conjugate);
        assert!(!v.is_gassmann_system);
    }

    #[test]
    fn conjugate_subgroups_satisfy_condition2() {
        let g = s3();
        let h1 = Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 1)", 3, 1).unwrap()]).unwrap();
        let h2 = Subgroup::from_generators(&g, &[Permutation::parse_cycles("(0 2)", 3, 1).unwrap()]).unwrap();
        let v = is_gassmann(&g, &h1, &h2).unwrap();
        assert!(v.condition2_holds);
        assert!(v.subgroups_conjugate);
        assert!(!v.is_gassmann_system);
    }

    #[test]
    fn gl32_point_and_plane_stabilizers_are_gassmann() {
        let g = fixtures::gl32();
        let h1 = fixtures::gl32_point_stabilizer(&g);
        let h2 = fixtures::gl32_plane_stabilizer(&g);
        let v = is_gassmann(&g, &h1, &h2).unwrap();
        assert!(v.condition2_holds);
        assert!(v.characters_equal);
        assert!(!v.subgroups_conjugate);
        assert!(v.is_gassmann_system);
        assert_eq!(v.intersection_table.len(), 6);
        let total: usize = v.intersection_table.iter().map(|r| r.in_h1).sum();
        assert_eq!(total, 24);
    }

    #[test]
    fn gl32_has_two_classes_of_index_7_subgroups() {
        let g = fixtures::gl32();
        let subs = enumerate_subgroups(&g, 8).unwrap();
        let index7: Vec<_> = subs.iter().filter(|s| s.index_in_parent() == 7).collect();
        assert_eq!(index7.len(), 2);
        assert!(index7[0].find_conjugator(index7[1]).is_none());
    }

    #[test]
    fn table_validation_rejects_non_groups() {
        // constant table: not a Latin square
        assert!(FiniteGroupTable::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        // C2 is fine
        assert!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // Latin square that is not associative (order 5 quasigroup)
        let q = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroupTable::new(q).is_err());
    }

    #[test]
    fn order16_pair_same_statistics_not_isomorphic() {
        let h1 = fixtures::c2_x_c8_table();
        let h2 = fixtures::m16_table();
        let v = gassmann_via_order_statistics(&h1, &h2).unwrap();
        assert!(v.same_statistics);
        assert_eq!(v.isomorphic, Some(false));
        let expect: BTreeMap<usize, usize> = [(1, 1), (2, 3), (4, 4), (8, 8)].into();
        assert_eq!(v.statistics_h1, expect);
        assert_eq!(v.statistics_h2, expect);
        assert!(h1.is_abelian());
        assert!(!h2.is_abelian());
    }

    #[test]
    fn order_statistics_simple_cases() {
        let c4 = fixtures::cyclic_table(4);
        let c2c2 =
            fixtures::direct_product_table(&fixtures::cyclic_table(2), &fixtures::cyclic_table(2));
        let v = gassmann_via_order_statistics(&c4, &c2c2).unwrap();
        assert!(!v.same_statistics); // order-4 counts 2 vs 0
        assert_eq!(v.isomorphic, Some(false));

        let c6 = fixtures::cyclic_table(6);
        let v = gassmann_via_order_statistics(&c6, &c6).unwrap();
        assert!(v.same_statistics);
        assert_eq!(v.isomorphic, Some(true));

        let c2 = fixtures::cyclic_table(2);
        assert!(matches!(
            gassmann_via_order_statistics(&c4, &c2),
            Err(Error::OrderMismatch(4, 2))
        ));
    }

    #[test]
    fn isomorphism_search_detects_relabelings() {
        // C6 vs C6 with elements relabeled
        let c6 = fixtures::cyclic_table(6);
        let perm = [3usize, 0, 4, 1, 5, 2];
        let mut relabeled = vec![vec![0usize; 6]; 6];
        for a in 0..6 {
            for b in 0..6 {
                relabeled[perm[a]][perm[b]] = perm[c6.mul(a, b)];
            }
        }
        let t = FiniteGroupTable::new(relabeled).unwrap();
        assert!(tables_isomorphic(&c6, &t));
        // C6 vs S3: same order, different statistics
        let s3t = FiniteGroupTable::from_group(&s3()).unwrap();
        assert!(!tables_isomorphic(&c6, &s3t));
    }

    #[test]
    fn regular_embedding_cycle_types() {
        let c4 = fixtures::cyclic_table(4);
        for (g, perm) in c4.regular_permutations().iter().enumerate() {
            let k = c4.element_order(g);
            let expected: Vec<usize> = vec![k; 4 / k];
            assert_eq!(perm.cycle_type(), expected);
        }
    }
}
