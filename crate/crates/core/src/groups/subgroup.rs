use std::cmp::Ordering;
use std::collections::HashSet;

use super::{ElementSet, FiniteGroup, GroupError, GroupId};

/// A subgroup of a [`FiniteGroup`], stored as a membership bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: GroupId,
    members: ElementSet,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> GroupId {
        self.parent
    }

    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.is_subset(other.members)
    }

    /// A generating set of minimum size; the lexicographically first one
    /// among those.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.members.cmp_members(other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FiniteGroup {
    /// Wraps a member set that is already known to be a subgroup.
    fn subgroup_unchecked(&self, members: ElementSet) -> Subgroup {
        Subgroup { parent: self.id(), members, generators: self.minimal_generators(members) }
    }

    pub fn subgroup_generated_by(&self, gens: &[usize]) -> Subgroup {
        self.subgroup_unchecked(self.closure(gens))
    }

    pub fn subgroup_from_members(&self, members: ElementSet) -> Result<Subgroup, GroupError> {
        if !members.is_subset(self.all()) || !self.is_closed(members) {
            return Err(GroupError::NotASubgroup(members));
        }
        Ok(self.subgroup_unchecked(members))
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_unchecked(self.all())
    }

    pub fn trivial(&self) -> Subgroup {
        self.subgroup_unchecked(ElementSet::singleton(0))
    }

    pub fn center(&self) -> Subgroup {
        let members = self.elements().filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z))).collect();
        self.subgroup_unchecked(members)
    }

    pub fn intersect(&self, h: &Subgroup, n: &Subgroup) -> Result<Subgroup, GroupError> {
        if h.parent != self.id() || n.parent != self.id() {
            return Err(GroupError::ParentMismatch);
        }
        Ok(self.subgroup_unchecked(h.members.intersection(n.members)))
    }

    /// `g H g^-1` as a member set.
    pub fn conjugate_set(&self, g: usize, set: ElementSet) -> ElementSet {
        set.iter().map(|x| self.conjugate(g, x)).collect()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| self.conjugate_set(g, h.members) == h.members)
    }

    /// Every subgroup exactly once, sorted by order and then by the
    /// ascending member list.
    ///
    /// Breadth-first closure: start from the cyclic subgroups and keep
    /// extending each new subgroup by one outside element until nothing new
    /// turns up. Every subgroup `<k1, .., km>` is reached along the chain
    /// `<k1> < <k1, k2> < ..`.
    pub fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashSet<ElementSet> = HashSet::new();
        let mut frontier: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        for x in self.elements() {
            let set = self.closure(&[x]);
            if found.insert(set) {
                frontier.push((set, vec![x]));
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (set, gens) in &frontier {
                for x in self.elements().filter(|&x| !set.contains(x)) {
                    let mut extended = gens.clone();
                    extended.push(x);
                    let bigger = self.closure(&extended);
                    if found.insert(bigger) {
                        next.push((bigger, extended));
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Subgroup> = found.into_iter().map(|set| self.subgroup_unchecked(set)).collect();
        subgroups.sort();
        subgroups
    }

    /// Lexicographically first generating set of minimum size.
    pub(crate) fn minimal_generators(&self, members: ElementSet) -> Vec<usize> {
        if members.len() <= 1 {
            return Vec::new();
        }
        let pool: Vec<usize> = members.iter().filter(|&x| x != 0).collect();
        for k in 1..=pool.len() {
            let mut chosen = Vec::with_capacity(k);
            if self.search_generators(&pool, 0, k, members, &mut chosen) {
                return chosen;
            }
        }
        unreachable!("a subgroup is generated by its own elements")
    }

    fn search_generators(
        &self,
        pool: &[usize],
        start: usize,
        k: usize,
        target: ElementSet,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == k {
            return self.closure(chosen) == target;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - chosen.len() {
                break;
            }
            chosen.push(pool[i]);
            if self.search_generators(pool, i + 1, k, target, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::Generator;
    use super::*;
    use std::collections::BTreeMap;

    fn group(gens: &[&str]) -> FiniteGroup {
        let gens: Vec<_> = gens.iter().map(|g| Generator::perm(g).unwrap()).collect();
        FiniteGroup::build_from_generators(&gens, "test").unwrap()
    }

    fn d6() -> FiniteGroup {
        group(&["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"])
    }

    #[test]
    fn cyclic_group_has_one_subgroup_per_divisor() {
        let c10 = group(&["(1 2 3 4 5 6 7 8 9 10)"]);
        let orders: Vec<usize> = c10.enumerate_subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 5, 10]);
        assert_eq!(c10.center().order(), 10);
    }

    #[test]
    fn dihedral_twelve_census() {
        let g = d6();
        let subs = g.enumerate_subgroups();
        assert_eq!(subs.len(), 16);
        let mut census = BTreeMap::new();
        for s in &subs {
            *census.entry(s.order()).or_insert(0) += 1;
        }
        assert_eq!(census, BTreeMap::from([(1, 1), (2, 7), (3, 1), (4, 3), (6, 3), (12, 1)]));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subs[0].order(), 1);
        assert_eq!(subs.last().unwrap().members(), g.all());
    }

    #[test]
    fn center_by_commutation_scan() {
        let g = d6();
        let z = g.center();
        assert_eq!(z.order(), 2);
        let rotation_by_half = z.members().iter().find(|&x| x != 0).unwrap();
        assert_eq!(g.label(rotation_by_half), "(1 4)(2 5)(3 6)");
    }

    #[test]
    fn intersection_and_parent_mismatch() {
        let g = d6();
        let subs = g.enumerate_subgroups();
        let c6 = subs
            .iter()
            .find(|s| s.order() == 6 && g.closure(s.generators()).len() == 6 && s.generators().len() == 1)
            .unwrap();
        assert_eq!(g.intersect(c6, c6).unwrap(), *c6);
        let s3 = subs.iter().find(|s| s.order() == 6 && s.generators().len() == 2).unwrap();
        assert_eq!(g.intersect(s3, c6).unwrap().order(), 3);

        let other = d6();
        let foreign = other.whole();
        assert_eq!(g.intersect(c6, &foreign), Err(GroupError::ParentMismatch));
    }

    #[test]
    fn minimal_generators_are_minimal() {
        let g = d6();
        for s in g.enumerate_subgroups() {
            assert_eq!(g.closure(s.generators()), s.members());
            let rank = s.generators().len();
            if rank == 2 {
                assert!(s.members().iter().all(|x| g.closure(&[x]) != s.members()));
            }
        }
        assert_eq!(g.whole().generators().len(), 2);
        assert!(g.trivial().generators().is_empty());
    }

    #[test]
    fn subgroup_from_members_checks_closure() {
        let g = d6();
        let not_closed: ElementSet = [0, 1].into_iter().collect();
        assert!(g.element_order(1) > 2);
        assert!(matches!(g.subgroup_from_members(not_closed), Err(GroupError::NotASubgroup(_))));
        assert_eq!(g.subgroup_from_members(g.all()).unwrap().order(), 12);
    }
}
