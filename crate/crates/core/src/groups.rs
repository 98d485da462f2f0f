//! Finite permutation groups: closure from generators, conjugacy classes,
//! subgroups, coset actions, and permutation characters.
//!
//! A [`PermGroup`] is fully enumerated — every element is materialized in a
//! deterministic breadth-first order from the identity, so element indices
//! are stable across runs and every later verdict is byte-reproducible.
//! Desk scale is enforced by explicit caps rather than cleverness.

use crate::perm::Permutation;
use crate::{Error, Rat, Result};
use num_traits::Zero;
use std::collections::{HashMap, HashSet, VecDeque};

/// Default cap on full element enumeration.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;
/// Order cap for subgroup enumeration.
pub const SUBGROUP_ENUM_ORDER_CAP: usize = 2_000;
/// Safety cap on the number of distinct subgroups visited during enumeration.
const MAX_SUBGROUPS: usize = 100_000;

/// A conjugacy class, stored as indices into the parent group's element list.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    /// Index of the representative: the member with the smallest element index.
    pub representative: usize,
    /// All members, ascending.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A fully enumerated finite permutation group.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<ConjugacyClass>,
}

impl PermGroup {
    /// Enumerate the group generated by `gens`, breadth-first from the
    /// identity with the generator order fixed, so element indices are
    /// deterministic. Fails with `CapExceeded` once the closure passes `cap`.
    pub fn close_generators(gens: &[Permutation], cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::CapExceeded("cap must be at least 1".into()));
        }
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => {
                return Err(Error::Parse {
                    line: 0,
                    msg: "no generators given".into(),
                })
            }
        };
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::ShapeMismatch(
                "generators act on different point counts".into(),
            ));
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = elements[i].then(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(format!(
                            "group closure passed {cap} elements"
                        )));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let inverses = elements
            .iter()
            .map(|e| index[&e.inverse()])
            .collect::<Vec<_>>();
        let (class_of, classes) = conjugacy_classes(&elements, &index, gens, &inverses);
        Ok(PermGroup {
            degree,
            generators: gens.to_vec(),
            elements,
            index,
            inverses,
            class_of,
            classes,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Conjugacy class index of element `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Generator indices within the element list.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Product of elements by index (left factor acts first).
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// `g^-1 h g` by indices.
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverses[g], h), g)
    }
}

fn conjugacy_classes(
    elements: &[Permutation],
    index: &HashMap<Permutation, usize>,
    gens: &[Permutation],
    inverses: &[usize],
) -> (Vec<usize>, Vec<ConjugacyClass>) {
    let n = elements.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    let gen_pairs: Vec<(usize, &Permutation)> = gens
        .iter()
        .map(|g| (inverses[index[g]], g))
        .collect();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = vec![start];
        class_of[start] = cid;
        let mut queue = VecDeque::from([start]);
        // the orbit under conjugation by generators is the full class
        while let Some(x) = queue.pop_front() {
            for (gi_inv, g) in &gen_pairs {
                let conj = elements[*gi_inv].then(&elements[x]).then(g);
                let y = index[&conj];
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: members[0],
            members,
        });
    }
    (class_of, classes)
}

/// A subgroup, stored as sorted element indices into its parent group.
#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    parent: &'g PermGroup,
    element_indices: Vec<usize>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.element_indices == other.element_indices
    }
}

impl Eq for Subgroup<'_> {}

impl<'g> Subgroup<'g> {
    /// Validate a set of element indices as a subgroup (closure, inverses,
    /// identity, and the Lagrange divisibility check).
    pub fn from_elements(parent: &'g PermGroup, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.first() != Some(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        if indices.iter().any(|&i| i >= parent.order()) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        let set: HashSet<usize> = indices.iter().copied().collect();
        for &a in &indices {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::NotASubgroup(format!(
                    "inverse of element {a} missing"
                )));
            }
            for &b in &indices {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "product of elements {a} and {b} escapes the subset"
                    )));
                }
            }
        }
        if parent.order() % indices.len() != 0 {
            return Err(Error::NotASubgroup(format!(
                "order {} does not divide |G| = {}",
                indices.len(),
                parent.order()
            )));
        }
        Ok(Subgroup {
            parent,
            element_indices: indices,
        })
    }

    /// The subgroup generated by the given element indices.
    pub fn from_generator_indices(parent: &'g PermGroup, gens: &[usize]) -> Result<Self> {
        for &g in gens {
            if g >= parent.order() {
                return Err(Error::NotASubgroup("generator index out of range".into()));
            }
        }
        let indices = close_indices(parent, &[0], gens);
        Ok(Subgroup {
            parent,
            element_indices: indices,
        })
    }

    /// The subgroup generated by permutations, which must all lie in `parent`.
    pub fn from_generators(parent: &'g PermGroup, gens: &[Permutation]) -> Result<Self> {
        let idx: Vec<usize> = gens
            .iter()
            .map(|p| {
                parent
                    .index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not in the group")))
            })
            .collect::<Result<_>>()?;
        Self::from_generator_indices(parent, &idx)
    }

    /// The whole group as a subgroup of itself.
    pub fn full(parent: &'g PermGroup) -> Self {
        Subgroup {
            parent,
            element_indices: (0..parent.order()).collect(),
        }
    }

    /// The trivial subgroup.
    pub fn trivial(parent: &'g PermGroup) -> Self {
        Subgroup {
            parent,
            element_indices: vec![0],
        }
    }

    pub fn parent(&self) -> &'g PermGroup {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.element_indices.len()
    }

    /// Index `[G : H]`.
    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn element_indices(&self) -> &[usize] {
        &self.element_indices
    }

    pub fn contains(&self, element: usize) -> bool {
        self.element_indices.binary_search(&element).is_ok()
    }

    /// `g^-1 H g` as sorted indices.
    pub fn conjugated_by(&self, g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .element_indices
            .iter()
            .map(|&h| self.parent.conjugate(h, g))
            .collect();
        out.sort_unstable();
        out
    }

    /// Search all of `G` for an element conjugating `self` onto `other`.
    pub fn find_conjugator(&self, other: &Subgroup<'_>) -> Option<usize> {
        if self.order() != other.order() {
            return None;
        }
        (0..self.parent.order()).find(|&g| self.conjugated_by(g) == other.element_indices)
    }
}

/// BFS closure of `seed` under right multiplication by `gens` (all indices).
fn close_indices(parent: &PermGroup, seed: &[usize], gens: &[usize]) -> Vec<usize> {
    let mut seen: HashSet<usize> = seed.iter().copied().collect();
    seen.insert(0);
    let mut queue: VecDeque<usize> = seen.iter().copied().collect();
    let mut all_gens: Vec<usize> = gens.to_vec();
    all_gens.extend(seed.iter().copied());
    while let Some(x) = queue.pop_front() {
        for &g in &all_gens {
            let y = parent.mul(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// The action of `G` on the right cosets `H\G`.
///
/// Cosets are numbered by their minimal element index, so the labeling is
/// canonical. The permutation induced by any single group element is
/// materialized on demand instead of storing the full `|G| x [G:H]` table.
#[derive(Debug, Clone)]
pub struct CosetAction<'g> {
    group: &'g PermGroup,
    /// coset id of each group element
    coset_of: Vec<usize>,
    /// minimal element index in each coset
    coset_reps: Vec<usize>,
}

impl<'g> CosetAction<'g> {
    pub fn coset_count(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    pub fn coset_rep(&self, coset: usize) -> usize {
        self.coset_reps[coset]
    }

    /// The coset reached from `coset` by right-multiplying with element `g`.
    pub fn act(&self, coset: usize, g: usize) -> usize {
        self.coset_of[self.group.mul(self.coset_reps[coset], g)]
    }

    /// The permutation of cosets induced by element `g`.
    pub fn coset_perm(&self, g: usize) -> Permutation {
        let images = (0..self.coset_count()).map(|c| self.act(c, g)).collect();
        Permutation::from_images(images).expect("a group action permutes cosets")
    }

    /// Number of orbits of the subgroup with the given element indices on the cosets.
    pub fn orbit_count_under(&self, subgroup_elements: &[usize]) -> usize {
        let n = self.coset_count();
        let mut seen = vec![false; n];
        let mut orbits = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(c) = queue.pop_front() {
                for &h in subgroup_elements {
                    let d = self.act(c, h);
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        orbits
    }
}

/// Build the coset action of `G` on `H\G`. The coset count is `[G:H]`.
pub fn coset_action<'g>(group: &'g PermGroup, subgroup: &Subgroup<'g>) -> Result<CosetAction<'g>> {
    if !std::ptr::eq(group, subgroup.parent()) {
        return Err(Error::NotASubgroup(
            "subgroup belongs to a different group".into(),
        ));
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut coset_reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        coset_reps.push(x);
        for &h in subgroup.element_indices() {
            coset_of[group.mul(h, x)] = id;
        }
        debug_assert_eq!(coset_of[x], id);
    }
    Ok(CosetAction {
        group,
        coset_of,
        coset_reps,
    })
}

/// A rational-valued class function on a fixed group, one value per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<Rat>,
}

impl ClassFunction {
    pub fn new(values: Vec<Rat>) -> Self {
        ClassFunction { values }
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value_on_class(&self, class: usize) -> &Rat {
        &self.values[class]
    }
}

/// The permutation character of the action on `H\G`: each class value is the
/// number of cosets fixed by a representative. Its value at the identity is
/// the index `[G:H]`.
pub fn permutation_character(group: &PermGroup, subgroup: &Subgroup<'_>) -> Result<ClassFunction> {
    let action = coset_action(group, subgroup)?;
    let values = group
        .classes()
        .iter()
        .map(|class| {
            let g = class.representative;
            let fixed = (0..action.coset_count())
                .filter(|&c| action.act(c, g) == c)
                .count();
            Rat::from_integer(fixed.into())
        })
        .collect();
    Ok(ClassFunction::new(values))
}

/// `dim V^H = (1/|H|) sum_{h in H} chi(h)`, the average of `chi` over the
/// subgroup. For a genuine character this is the dimension of the space of
/// `H`-invariants and in particular a nonnegative integer.
pub fn invariant_dimension(
    group: &PermGroup,
    chi: &ClassFunction,
    subgroup: &Subgroup<'_>,
) -> Result<Rat> {
    if chi.values().len() != group.classes().len() {
        return Err(Error::ShapeMismatch(format!(
            "class function has {} values but the group has {} classes",
            chi.values().len(),
            group.classes().len()
        )));
    }
    let mut sum = Rat::zero();
    for &h in subgroup.element_indices() {
        sum += chi.value_on_class(group.class_of(h)).clone();
    }
    Ok(sum / Rat::from_integer(subgroup.order().into()))
}

/// One representative per conjugacy class of subgroups of index at most
/// `max_index`, by closing upward from the trivial subgroup with cyclic
/// joins. Ordering is deterministic: representatives are the
/// lexicographically least conjugates, sorted by (order, element list).
pub fn enumerate_subgroups<'g>(
    group: &'g PermGroup,
    max_index: usize,
) -> Result<Vec<Subgroup<'g>>> {
    if group.order() > SUBGROUP_ENUM_ORDER_CAP {
        return Err(Error::CapExceeded(format!(
            "subgroup enumeration is capped at |G| <= {SUBGROUP_ENUM_ORDER_CAP}, got {}",
            group.order()
        )));
    }
    // one generator per distinct cyclic subgroup, in element order
    let mut cyclic_gens: Vec<usize> = Vec::new();
    let mut cyclic_seen: HashSet<Vec<usize>> = HashSet::new();
    for e in 1..group.order() {
        let cyc = close_indices(group, &[0], &[e]);
        if cyclic_seen.insert(cyc) {
            cyclic_gens.push(e);
        }
    }
    // breadth-first join closure; every subgroup is reached because each one
    // is built from the trivial subgroup by adjoining cyclic generators
    let mut found: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let trivial = vec![0usize];
    found.insert(trivial.clone(), Vec::new());
    let mut queue = VecDeque::from([trivial]);
    while let Some(sub) = queue.pop_front() {
        let gens = found[&sub].clone();
        for &c in &cyclic_gens {
            if sub.binary_search(&c).is_ok() {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(c);
            let join = close_indices(group, &[0], &joined_gens);
            if !found.contains_key(&join) {
                if found.len() >= MAX_SUBGROUPS {
                    return Err(Error::CapExceeded(format!(
                        "more than {MAX_SUBGROUPS} subgroups"
                    )));
                }
                found.insert(join.clone(), joined_gens);
                queue.push_back(join);
            }
        }
    }
    // conjugacy dedup: canonical representative = least conjugate
    let mut reps: HashSet<Vec<usize>> = HashSet::new();
    for sub in found.into_keys() {
        if group.order() / sub.len() > max_index {
            continue;
        }
        let subgroup = Subgroup {
            parent: group,
            element_indices: sub,
        };
        let canonical = (0..group.order())
            .map(|g| subgroup.conjugated_by(g))
            .min()
            .expect("group is nonempty");
        reps.insert(canonical);
    }
    let mut out: Vec<Vec<usize>> = reps.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out
        .into_iter()
        .map(|element_indices| Subgroup {
            parent: group,
            element_indices,
        })
        .collect())
}
