//! Shipped example objects: the GL(3,2) triple, classical small group
//! tables, and the degree-7 arithmetically equivalent polynomial pair.
//!
//! Everything here is reconstructed from first principles at call time
//! (linear algebra over F_2, explicit multiplication rules) and asserted
//! against its expected invariants, so a corrupted fixture cannot survive
//! construction. The same objects are shipped as text files under `data/`
//! for command-line use.

use crate::gassmann::FiniteGroupTable;
use crate::groups::{PermGroup, Subgroup, DEFAULT_ELEMENT_CAP};
use crate::perm::Permutation;
use crate::{Int, IntPoly};

/// GL(3,2) acting on the 7 nonzero vectors of F_2^3.
///
/// Point `i` is the vector with binary digits of `i + 1` (bit 0 first). The
/// generators are the transvection `x0 += x1` and the cyclic coordinate
/// shift, which close to all 168 invertible matrices.
pub fn gl32() -> PermGroup {
    let a = Permutation::parse_cycles("(1 2)(5 6)", 7, 0).expect("valid fixture");
    let b = Permutation::parse_cycles("(0 1 3)(2 5 4)", 7, 0).expect("valid fixture");
    let g = PermGroup::close_generators(&[a, b], DEFAULT_ELEMENT_CAP).expect("closure fits cap");
    assert_eq!(g.order(), 168, "GL(3,2) has 168 elements");
    assert_eq!(g.classes().len(), 6, "GL(3,2) has 6 conjugacy classes");
    g
}

/// The stabilizer of point 0 (the vector e0) in [`gl32`]: order 24, index 7.
pub fn gl32_point_stabilizer(group: &PermGroup) -> Subgroup<'_> {
    let gens = [
        Permutation::parse_cycles("(1 3)(2 4)", 7, 0).expect("valid fixture"),
        Permutation::parse_cycles("(1 5 2 6)(3 4)", 7, 0).expect("valid fixture"),
    ];
    let h = Subgroup::from_generators(group, &gens).expect("stabilizer generators lie in GL(3,2)");
    assert_eq!(h.order(), 24);
    h
}

/// The stabilizer of the plane spanned by e0, e1 in [`gl32`]: order 24,
/// index 7, not conjugate to the point stabilizer.
pub fn gl32_plane_stabilizer(group: &PermGroup) -> Subgroup<'_> {
    let gens = [
        Permutation::parse_cycles("(0 1)(4 5)", 7, 0).expect("valid fixture"),
        Permutation::parse_cycles("(0 1 2)(3 4 6)", 7, 0).expect("valid fixture"),
    ];
    let h = Subgroup::from_generators(group, &gens).expect("stabilizer generators lie in GL(3,2)");
    assert_eq!(h.order(), 24);
    h
}

/// The cyclic group of order `n` as a multiplication table.
pub fn cyclic_table(n: usize) -> FiniteGroupTable {
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGroupTable::new(table).expect("cyclic tables are groups")
}

/// Direct product of two multiplication tables.
pub fn direct_product_table(t1: &FiniteGroupTable, t2: &FiniteGroupTable) -> FiniteGroupTable {
    let (d1, d2) = (t1.order(), t2.order());
    let id = |a: usize, b: usize| a * d2 + b;
    let table = (0..d1 * d2)
        .map(|x| {
            let (xa, xb) = (x / d2, x % d2);
            (0..d1 * d2)
                .map(|y| {
                    let (ya, yb) = (y / d2, y % d2);
                    id(t1.mul(xa, ya), t2.mul(xb, yb))
                })
                .collect()
        })
        .collect();
    FiniteGroupTable::new(table).expect("direct products of groups are groups")
}

/// C2 x C8, one half of the classical order-16 pair.
pub fn c2_x_c8_table() -> FiniteGroupTable {
    direct_product_table(&cyclic_table(2), &cyclic_table(8))
}

/// The modular group of order 16: `<a, b | a^8 = b^2 = 1, b a b^-1 = a^5>`.
///
/// Element `a^i b^j` has index `2i + j`; the product rule
/// `(a^i b^j)(a^k b^l) = a^(i + k 5^j) b^(j + l)` encodes the relation.
/// Its element-order statistics {1:1, 2:3, 4:4, 8:8} coincide with those of
/// C2 x C8 even though the groups are not isomorphic.
pub fn m16_table() -> FiniteGroupTable {
    let id = |i: usize, j: usize| 2 * i + j;
    let mut table = vec![vec![0usize; 16]; 16];
    for i in 0..8 {
        for j in 0..2 {
            for k in 0..8 {
                for l in 0..2 {
                    let shift = if j == 1 { 5 * k } else { k };
                    table[id(i, j)][id(k, l)] = id((i + shift) % 8, (j + l) % 2);
                }
            }
        }
    }
    FiniteGroupTable::new(table).expect("M16 presentation yields a group")
}

/// The dihedral group of order 8 acting on the square's corners.
pub fn d4_table() -> FiniteGroupTable {
    let r = Permutation::parse_cycles("(0 1 2 3)", 4, 0).expect("valid fixture");
    let s = Permutation::parse_cycles("(0 2)", 4, 0).expect("valid fixture");
    let g = PermGroup::close_generators(&[r, s], 16).expect("D4 fits");
    assert_eq!(g.order(), 8);
    FiniteGroupTable::from_group(&g).expect("table of a group")
}

/// The quaternion group of order 8 via its regular permutation action.
pub fn q8_table() -> FiniteGroupTable {
    // points: 1, i, -1, -i, j, k, -j, -k; right multiplication by i and j
    let i = Permutation::parse_cycles("(0 1 2 3)(4 7 6 5)", 8, 0).expect("valid fixture");
    let j = Permutation::parse_cycles("(0 4 2 6)(1 5 3 7)", 8, 0).expect("valid fixture");
    let g = PermGroup::close_generators(&[i, j], 16).expect("Q8 fits");
    assert_eq!(g.order(), 8);
    FiniteGroupTable::from_group(&g).expect("table of a group")
}

/// The classical degree-7 pair of non-isomorphic fields with the same
/// Dedekind zeta function, both with Galois group GL(3,2) and discriminant
/// 3^8 7^8: `x^7 - 7x + 3` and `x^7 + 14x^4 - 42x^2 - 21x + 9`.
pub fn degree7_pair() -> (IntPoly, IntPoly) {
    let f1 = IntPoly::from_coeffs(
        [3, -7, 0, 0, 0, 0, 0, 1].iter().map(|&c| Int::from(c)).collect(),
    );
    let f2 = IntPoly::from_coeffs(
        [9, -21, -42, 0, 14, 0, 0, 1].iter().map(|&c| Int::from(c)).collect(),
    );
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::discriminant;

    #[test]
    fn gl32_stabilizers_have_index_7() {
        let g = gl32();
        let h1 = gl32_point_stabilizer(&g);
        let h2 = gl32_plane_stabilizer(&g);
        assert_eq!(h1.index_in_parent(), 7);
        assert_eq!(h2.index_in_parent(), 7);
        assert_ne!(h1.element_indices(), h2.element_indices());
    }

    #[test]
    fn gl32_point_stabilizer_matches_natural_action() {
        // the coset action on the 7 cosets of a point stabilizer is the
        // natural action on points: cycle types agree element by element
        let g = gl32();
        let h = gl32_point_stabilizer(&g);
        let action = crate::groups::coset_action(&g, &h).unwrap();
        for e in 0..g.order() {
            assert_eq!(
                action.coset_perm(e).cycle_type(),
                g.element(e).cycle_type(),
                "element {e}"
            );
        }
    }

    #[test]
    fn small_tables_have_expected_statistics() {
        assert_eq!(
            d4_table().order_statistics(),
            [(1, 1), (2, 5), (4, 2)].into()
        );
        assert_eq!(
            q8_table().order_statistics(),
            [(1, 1), (2, 1), (4, 6)].into()
        );
        assert_eq!(
            c2_x_c8_table().order_statistics(),
            [(1, 1), (2, 3), (4, 4), (8, 8)].into()
        );
        assert_eq!(
            m16_table().order_statistics(),
            [(1, 1), (2, 3), (4, 4), (8, 8)].into()
        );
    }

    #[test]
    fn degree7_pair_shares_discriminant() {
        let (f1, f2) = degree7_pair();
        let d = Int::from(3u64.pow(8) * 7u64.pow(8));
        assert_eq!(discriminant(&f1).unwrap(), d);
        assert_eq!(discriminant(&f2).unwrap(), d);
        assert!(f1.is_monic() && f2.is_monic());
    }
}
