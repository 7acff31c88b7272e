use std::collections::HashMap;

use super::{ElementSet, FiniteGroup, Subgroup};

/// Hasse diagram of a subgroup list together with its conjugacy classing.
/// Subgroups are referred to by their position in the list passed to
/// [`subgroup_lattice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupLattice {
    /// Covering pairs `(lower, upper)`, sorted.
    pub covers: Vec<(usize, usize)>,
    /// Conjugacy orbit of each subgroup, named by the smallest index in the orbit.
    pub orbit: Vec<usize>,
    pub normal: Vec<bool>,
}

impl SubgroupLattice {
    pub fn orbit_members(&self, orbit: usize) -> impl Iterator<Item = usize> + '_ {
        self.orbit.iter().enumerate().filter(move |&(_, &o)| o == orbit).map(|(i, _)| i)
    }

    /// Orbit ids in ascending order.
    pub fn orbits(&self) -> Vec<usize> {
        let mut ids = self.orbit.clone();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// `subgroups` must be the complete subgroup list of `group`, as returned by
/// [`FiniteGroup::enumerate_subgroups`].
pub fn subgroup_lattice(group: &FiniteGroup, subgroups: &[Subgroup]) -> SubgroupLattice {
    let index: HashMap<ElementSet, usize> = subgroups.iter().enumerate().map(|(i, s)| (s.members(), i)).collect();

    let mut covers = Vec::new();
    for (lo, a) in subgroups.iter().enumerate() {
        for (hi, b) in subgroups.iter().enumerate() {
            if lo == hi || a.order() >= b.order() || !a.is_subgroup_of(b) {
                continue;
            }
            let between = subgroups
                .iter()
                .any(|c| c.order() > a.order() && c.order() < b.order() && a.is_subgroup_of(c) && c.is_subgroup_of(b));
            if !between {
                covers.push((lo, hi));
            }
        }
    }
    covers.sort_unstable();

    let mut orbit = vec![usize::MAX; subgroups.len()];
    let mut normal = vec![false; subgroups.len()];
    for i in 0..subgroups.len() {
        if orbit[i] != usize::MAX {
            continue;
        }
        let mut class: Vec<usize> =
            group.elements().map(|g| index[&group.conjugate_set(g, subgroups[i].members())]).collect();
        class.sort_unstable();
        class.dedup();
        for &j in &class {
            orbit[j] = i;
            normal[j] = class.len() == 1;
        }
    }

    SubgroupLattice { covers, orbit, normal }
}

#[cfg(test)]
mod tests {
    use super::super::Generator;
    use super::*;

    fn group(gens: &[&str]) -> FiniteGroup {
        let gens: Vec<_> = gens.iter().map(|g| Generator::perm(g).unwrap()).collect();
        FiniteGroup::build_from_generators(&gens, "test").unwrap()
    }

    #[test]
    fn cyclic_ten_is_a_diamond() {
        let g = group(&["(1 2 3 4 5 6 7 8 9 10)"]);
        let subs = g.enumerate_subgroups();
        let lattice = subgroup_lattice(&g, &subs);
        // Indices: 0 = 1, 1 = C2, 2 = C5, 3 = C10.
        assert_eq!(lattice.covers, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(lattice.normal.iter().all(|&n| n));
    }

    #[test]
    fn klein_subgroups_of_d6_form_one_orbit() {
        let g = group(&["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"]);
        let subs = g.enumerate_subgroups();
        let lattice = subgroup_lattice(&g, &subs);
        let kleins: Vec<usize> = (0..subs.len()).filter(|&i| subs[i].order() == 4).collect();
        assert_eq!(kleins.len(), 3);
        assert!(kleins.iter().all(|&i| lattice.orbit[i] == lattice.orbit[kleins[0]]));
        assert!(kleins.iter().all(|&i| !lattice.normal[i]));
        assert_eq!(lattice.orbits().len(), 10);
    }

    #[test]
    fn covers_are_transitively_reduced() {
        let g = group(&["(1 2 3 4)", "(1 3)"]);
        let subs = g.enumerate_subgroups();
        let lattice = subgroup_lattice(&g, &subs);
        for &(a, b) in &lattice.covers {
            for &(c, d) in &lattice.covers {
                if b == c {
                    assert!(!lattice.covers.contains(&(a, d)));
                }
            }
        }
    }
}
