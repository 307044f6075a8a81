use std::collections::{HashSet, VecDeque};

use super::{Elem, FiniteGroup, Structure};
use crate::error::{Error, Result};

/// Largest group order for which the full subgroup lattice is enumerated.
pub const SUBGROUP_ENUMERATION_LIMIT: usize = 128;

/// A subgroup of a [`FiniteGroup`], stored as a sorted element list plus a
/// membership mask.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::closure(g, &[])
    }

    pub fn full(g: &FiniteGroup) -> Self {
        let mask = vec![true; g.order()];
        Subgroup {
            parent_order: g.order(),
            elements: g.elements().collect(),
            mask,
            generators: Vec::new(),
        }
        .with_generators(g)
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(g: &FiniteGroup, gens: &[Elem]) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        let mut gens: Vec<Elem> = gens.iter().copied().filter(|&x| x != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &c in &gens {
                let y = g.mul(x, c);
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                }
            }
        }
        let elements = (0..g.order()).filter(|&x| mask[x]).collect();
        Subgroup {
            parent_order: g.order(),
            elements,
            mask,
            generators: gens,
        }
    }

    /// Wraps an element set, checking that it is a subgroup.
    pub fn from_elements(g: &FiniteGroup, elems: &[Elem]) -> Result<Self> {
        let mut mask = vec![false; g.order()];
        for &e in elems {
            if e >= g.order() {
                return Err(Error::invalid(format!("element {e} out of range")));
            }
            mask[e] = true;
        }
        if !mask[0] {
            return Err(Error::invalid("subgroup must contain the identity"));
        }
        let elements: Vec<Elem> = (0..g.order()).filter(|&x| mask[x]).collect();
        for &a in &elements {
            if !mask[g.inv(a)] {
                return Err(Error::invalid(format!("not closed under inverse at {a}")));
            }
            for &b in &elements {
                if !mask[g.mul(a, b)] {
                    return Err(Error::invalid(format!("not closed: {a} * {b}")));
                }
            }
        }
        Ok(Subgroup {
            parent_order: g.order(),
            elements,
            mask,
            generators: Vec::new(),
        }
        .with_generators(g))
    }

    // greedy generating set, used to speed up joins
    fn with_generators(mut self, g: &FiniteGroup) -> Self {
        let mut gens = Vec::new();
        let mut current = Subgroup::closure(g, &[]);
        for &e in &self.elements {
            if !current.contains(e) {
                gens.push(e);
                current = Subgroup::closure(g, &gens);
            }
        }
        self.generators = gens;
        self
    }

    /// Subgroup generated by `self` and `extra`.
    pub fn join(&self, g: &FiniteGroup, extra: &[Elem]) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Subgroup::closure(g, &gens)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let common: Vec<Elem> = self
            .elements
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect();
        Subgroup::from_elements(g, &common).expect("intersection of subgroups is a subgroup")
    }

    fn key(&self) -> Vec<u64> {
        let mut words = vec![0u64; self.parent_order.div_ceil(64)];
        for &e in &self.elements {
            words[e / 64] |= 1 << (e % 64);
        }
        words
    }

    fn check_parent(&self, g: &FiniteGroup) -> Result<()> {
        if self.parent_order != g.order() {
            return Err(Error::invalid(format!(
                "subgroup belongs to a group of order {}, not {}",
                self.parent_order,
                g.order()
            )));
        }
        Ok(())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

/// Left cosets `xH`, numbered by their smallest element (the coset of the
/// identity is block `0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cosets {
    pub coset_of: Vec<usize>,
    pub blocks: Vec<Vec<Elem>>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn representative(&self, block: usize) -> Elem {
        self.blocks[block][0]
    }
}

pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> Result<Cosets> {
    h.check_parent(g)?;
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut blocks = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block: Vec<Elem> = h.elements().iter().map(|&e| g.mul(x, e)).collect();
        block.sort_unstable();
        for &y in &block {
            if coset_of[y] != usize::MAX {
                return Err(Error::invalid("element set is not closed; cosets overlap"));
            }
            coset_of[y] = id;
        }
        blocks.push(block);
    }
    Ok(Cosets { coset_of, blocks })
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.elements().all(|x| {
        let xi = g.inv(x);
        h.elements().iter().all(|&e| h.contains(g.mul(g.mul(x, e), xi)))
    })
}

/// A quotient group together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<Elem>,
    pub cosets: Cosets,
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    n.check_parent(g)?;
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let cosets = left_cosets(g, n)?;
    let reps: Vec<Elem> = cosets.blocks.iter().map(|b| b[0]).collect();
    let group = FiniteGroup::from_fn(reps.len(), Structure::Opaque, |a, b| {
        cosets.coset_of[g.mul(reps[a], reps[b])]
    })?;
    let names = reps
        .iter()
        .map(|&r| {
            if n.is_trivial() {
                g.name(r)
            } else {
                format!("[{}]", g.name(r))
            }
        })
        .collect();
    let group = group.with_names(names)?;
    Ok(Quotient {
        group,
        projection: cosets.coset_of.clone(),
        cosets,
    })
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut comms = Vec::new();
    for a in g.elements() {
        for b in g.elements() {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    Subgroup::closure(g, &comms)
}

/// `γ_1 = G`, `γ_{i+1} = [G, γ_i]`, until the series stabilizes.
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::full(g)];
    loop {
        let last = series.last().expect("nonempty");
        let comms: Vec<Elem> = g
            .elements()
            .flat_map(|a| last.elements().iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.commutator(a, b))
            .collect();
        let next = Subgroup::closure(g, &comms);
        if next.len() == last.len() {
            return series;
        }
        series.push(next);
    }
}

fn check_enumeration_guard(g: &FiniteGroup) -> Result<()> {
    if g.order() > SUBGROUP_ENUMERATION_LIMIT {
        return Err(Error::Guard {
            what: "group order for subgroup enumeration",
            limit: SUBGROUP_ENUMERATION_LIMIT,
            got: g.order(),
        });
    }
    Ok(())
}

/// Every subgroup, sorted by size and then by elements.
///
/// Seeded with the cyclic subgroups; each found subgroup is joined with each
/// cyclic subgroup until no new subgroup appears. Since every subgroup is
/// generated by cyclic ones, this reaches the whole lattice.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    check_enumeration_guard(g)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut found = Vec::new();
    let mut cyclic_gens = Vec::new();
    let mut queue = VecDeque::new();
    for x in g.elements() {
        let h = Subgroup::closure(g, &[x]);
        if seen.insert(h.key()) {
            cyclic_gens.push(x);
            queue.push_back(h.clone());
            found.push(h);
        }
    }
    while let Some(h) = queue.pop_front() {
        for &x in &cyclic_gens {
            if h.contains(x) {
                continue;
            }
            let j = h.join(g, &[x]);
            if seen.insert(j.key()) {
                queue.push_back(j.clone());
                found.push(j);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(found)
}

fn maximal_subgroups(subgroups: &[Subgroup]) -> Vec<&Subgroup> {
    let proper: Vec<&Subgroup> = subgroups.iter().filter(|h| !h.is_full()).collect();
    proper
        .iter()
        .copied()
        .filter(|m| {
            !proper
                .iter()
                .any(|k| k.len() > m.len() && m.is_subset_of(k))
        })
        .collect()
}

/// Intersection of all maximal proper subgroups (`{e}` for the trivial group).
pub fn frattini_subgroup(g: &FiniteGroup) -> Result<Subgroup> {
    let subgroups = all_subgroups(g)?;
    Ok(frattini_from(g, &subgroups))
}

fn frattini_from(g: &FiniteGroup, subgroups: &[Subgroup]) -> Subgroup {
    let maximal = maximal_subgroups(subgroups);
    let mut acc = Subgroup::full(g);
    if maximal.is_empty() {
        return Subgroup::trivial(g);
    }
    for m in maximal {
        acc = acc.intersection(g, m);
    }
    acc
}

/// True iff the subgroup generated by all squares and commutators is proper,
/// i.e. the group maps onto `Z_2`.
pub fn has_index_two_subgroup(g: &FiniteGroup) -> bool {
    let mut gens: Vec<Elem> = g.elements().map(|x| g.mul(x, x)).collect();
    gens.extend(commutator_subgroup(g).generators());
    !Subgroup::closure(g, &gens).is_full()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupClass {
    pub abelian: bool,
    pub dedekind: bool,
    pub nilpotent: bool,
    pub has_index_two_subgroup: bool,
}

/// Structural flags. Nilpotency uses the finite-group criterion
/// `G' ⊆ Φ(G)`.
pub fn classify_group(g: &FiniteGroup) -> Result<GroupClass> {
    let subgroups = all_subgroups(g)?;
    let abelian = g.is_abelian();
    let dedekind = abelian || subgroups.iter().all(|h| is_normal(g, h));
    let frattini = frattini_from(g, &subgroups);
    let nilpotent = commutator_subgroup(g).is_subset_of(&frattini);
    Ok(GroupClass {
        abelian,
        dedekind,
        nilpotent,
        has_index_two_subgroup: has_index_two_subgroup(g),
    })
}
