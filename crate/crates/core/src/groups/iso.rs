//! Isomorphism-type labels for small groups.
//!
//! A subgroup is labelled by comparing its invariant fingerprint against a
//! zoo of reference groups built from explicit generators, and the match is
//! confirmed by an explicit isomorphism search.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::{ElementSet, FiniteGroup, Generator, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IsoFingerprint {
    pub order: usize,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    pub exponent: usize,
    pub involution_count: usize,
    pub center_order: usize,
    pub conjugacy_class_count: usize,
    pub derived_subgroup_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoLabel {
    Known(&'static str),
    UnknownType { order: usize },
}

impl IsoLabel {
    pub fn is_known(&self) -> bool {
        matches!(self, IsoLabel::Known(_))
    }
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoLabel::Known(name) => f.write_str(name),
            IsoLabel::UnknownType { order } => write!(f, "UnknownType({order})"),
        }
    }
}

enum Seed {
    Perms(&'static [&'static str]),
    Matrices(&'static [[i64; 4]]),
}

/// Reference presentations. Labels follow the usual small-group names, with
/// `Dn` the dihedral group of order `2n`.
const ZOO: &[(&str, Seed)] = &[
    ("C2", Seed::Perms(&["(1 2)"])),
    ("C3", Seed::Perms(&["(1 2 3)"])),
    ("C4", Seed::Perms(&["(1 2 3 4)"])),
    ("C2²", Seed::Perms(&["(1 2)", "(3 4)"])),
    ("C5", Seed::Perms(&["(1 2 3 4 5)"])),
    ("C6", Seed::Perms(&["(1 2 3 4 5 6)"])),
    ("S3", Seed::Perms(&["(1 2 3)", "(1 2)"])),
    ("C7", Seed::Perms(&["(1 2 3 4 5 6 7)"])),
    ("C8", Seed::Perms(&["(1 2 3 4 5 6 7 8)"])),
    ("C4×C2", Seed::Perms(&["(1 2 3 4)", "(5 6)"])),
    ("C2³", Seed::Perms(&["(1 2)", "(3 4)", "(5 6)"])),
    ("D4", Seed::Perms(&["(1 2 3 4)", "(1 3)"])),
    ("Q8", Seed::Matrices(&[[0, 1, -1, 0], [1, 1, 1, -1]])),
    ("C9", Seed::Perms(&["(1 2 3 4 5 6 7 8 9)"])),
    ("C3²", Seed::Perms(&["(1 2 3)", "(4 5 6)"])),
    ("C10", Seed::Perms(&["(1 2 3 4 5 6 7 8 9 10)"])),
    ("D5", Seed::Perms(&["(1 2 3 4 5)", "(2 5)(3 4)"])),
    ("C12", Seed::Perms(&["(1 2 3 4)", "(5 6 7)"])),
    ("C2×C6", Seed::Perms(&["(1 2 3 4 5 6)", "(7 8)"])),
    ("D6", Seed::Perms(&["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"])),
    ("A4", Seed::Perms(&["(1 2 3)", "(2 3 4)"])),
    ("Dic3", Seed::Perms(&["(1 2 3)", "(2 3)(4 5 6 7)"])),
    ("C16", Seed::Perms(&["(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)"])),
    ("D8", Seed::Perms(&["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"])),
    ("SD16", Seed::Perms(&["(1 2 3 4 5 6 7 8)", "(2 4)(3 7)(6 8)"])),
    ("M16", Seed::Perms(&["(1 2 3 4 5 6 7 8)", "(2 6)(4 8)"])),
    ("C2×D4", Seed::Perms(&["(1 2 3 4)", "(1 3)", "(5 6)"])),
    ("SL2(F3)", Seed::Matrices(&[[1, 1, 0, 1], [1, 0, 1, 1]])),
    ("C3⋊D4", Seed::Perms(&["(1 2 3)", "(2 3)(4 5 6 7)", "(5 7)"])),
    ("D12", Seed::Perms(&["(1 2 3 4 5 6 7 8 9 10 11 12)", "(2 12)(3 11)(4 10)(5 9)(6 8)"])),
    ("S4", Seed::Perms(&["(1 2 3 4)", "(1 2)"])),
    ("C2×A4", Seed::Perms(&["(1 2 3)", "(2 3 4)", "(5 6)"])),
    ("C4×S3", Seed::Perms(&["(1 2 3)", "(1 2)", "(4 5 6 7)"])),
    ("C2×C12", Seed::Perms(&["(1 2 3 4)", "(5 6 7)", "(8 9)"])),
    ("C3×D4", Seed::Perms(&["(1 2 3 4)", "(1 3)", "(5 6 7)"])),
    ("GL2(F3)", Seed::Matrices(&[[1, 1, 0, 1], [0, 1, 1, 0]])),
];

pub struct ZooEntry {
    pub label: &'static str,
    pub group: FiniteGroup,
    pub fingerprint: IsoFingerprint,
}

/// The reference groups, built once.
pub fn reference_zoo() -> &'static [ZooEntry] {
    static ZOO_GROUPS: OnceLock<Vec<ZooEntry>> = OnceLock::new();
    ZOO_GROUPS.get_or_init(|| {
        ZOO.iter()
            .map(|(label, seed)| {
                let gens: Vec<Generator> = match seed {
                    Seed::Perms(cycles) => cycles.iter().map(|c| Generator::perm(c).unwrap()).collect(),
                    Seed::Matrices(ms) => ms.iter().map(|m| Generator::matrix(*m).unwrap()).collect(),
                };
                let group = FiniteGroup::build_from_generators(&gens, label)
                    .unwrap_or_else(|e| panic!("reference group {label}: {e}"));
                let fingerprint = group.fingerprint_of(group.all());
                ZooEntry { label, group, fingerprint }
            })
            .collect()
    })
}

impl FiniteGroup {
    pub fn fingerprint(&self, h: &Subgroup) -> IsoFingerprint {
        self.fingerprint_of(h.members())
    }

    /// Fingerprint of the subgroup with the given members, treated as an
    /// abstract group.
    pub fn fingerprint_of(&self, members: ElementSet) -> IsoFingerprint {
        let elems: Vec<usize> = members.iter().collect();
        let commutes = |a: usize, b: usize| self.mul(a, b) == self.mul(b, a);
        let center_order = elems.iter().filter(|&&z| elems.iter().all(|&x| commutes(z, x))).count();
        let is_abelian = center_order == elems.len();
        let exponent = elems.iter().fold(1, |acc, &x| lcm(acc, self.element_order(x)));
        let is_cyclic = elems.iter().any(|&x| self.element_order(x) == elems.len());
        let involution_count = elems.iter().filter(|&&x| self.element_order(x) == 2).count();

        let mut unclassed = members;
        let mut conjugacy_class_count = 0;
        for &x in &elems {
            if !unclassed.contains(x) {
                continue;
            }
            conjugacy_class_count += 1;
            for &g in &elems {
                let y = self.conjugate(g, x);
                unclassed = ElementSet::from_bits(unclassed.bits() & !(1u64 << y));
            }
        }

        let mut commutators = Vec::new();
        for &a in &elems {
            for &b in &elems {
                let c = self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b));
                if c != 0 && !commutators.contains(&c) {
                    commutators.push(c);
                }
            }
        }
        let derived_subgroup_order = self.closure(&commutators).len();

        IsoFingerprint {
            order: elems.len(),
            is_abelian,
            is_cyclic,
            exponent,
            involution_count,
            center_order,
            conjugacy_class_count,
            derived_subgroup_order,
        }
    }

    pub fn iso_label(&self, h: &Subgroup) -> IsoLabel {
        self.iso_label_of(h.members())
    }

    pub fn iso_label_of(&self, members: ElementSet) -> IsoLabel {
        if members.len() == 1 {
            return IsoLabel::Known("C1");
        }
        let fingerprint = self.fingerprint_of(members);
        // The fingerprint narrows the zoo down; an explicit isomorphism
        // confirms the match.
        let matched = reference_zoo()
            .iter()
            .filter(|entry| entry.fingerprint == fingerprint)
            .find(|entry| find_isomorphism(self, members, &entry.group, entry.group.all()).is_some())
            .map(|entry| entry.label);
        match matched {
            Some(label) => IsoLabel::Known(label),
            None => IsoLabel::UnknownType { order: members.len() },
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Searches for an isomorphism from the subgroup `src_members` of `src` onto
/// the subgroup `dst_members` of `dst` by trying every assignment of a
/// minimal generating set of the source to elements of matching orders.
/// Returns the image of each source element, indexed like `src`.
pub fn find_isomorphism(
    src: &FiniteGroup,
    src_members: ElementSet,
    dst: &FiniteGroup,
    dst_members: ElementSet,
) -> Option<Vec<Option<usize>>> {
    if src_members.len() != dst_members.len() {
        return None;
    }
    let gens = src.minimal_generators(src_members);
    let options: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| dst_members.iter().filter(|&y| dst.element_order(y) == src.element_order(g)).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    try_assignments(src, src_members, dst, &gens, &options, &mut images)
}

fn try_assignments(
    src: &FiniteGroup,
    src_members: ElementSet,
    dst: &FiniteGroup,
    gens: &[usize],
    options: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<Option<usize>>> {
    if images.len() == gens.len() {
        return extend_to_isomorphism(src, src_members, dst, gens, images);
    }
    for &y in &options[images.len()] {
        images.push(y);
        if let Some(map) = try_assignments(src, src_members, dst, gens, options, images) {
            return Some(map);
        }
        images.pop();
    }
    None
}

fn extend_to_isomorphism(
    src: &FiniteGroup,
    src_members: ElementSet,
    dst: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map: Vec<Option<usize>> = vec![None; src.order()];
    let mut hit = ElementSet::singleton(0);
    map[0] = Some(0);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        let fx = map[x]?;
        for (&g, &t) in gens.iter().zip(images) {
            let (z, w) = (src.mul(x, g), dst.mul(fx, t));
            match map[z] {
                Some(existing) if existing != w => return None,
                Some(_) => {}
                None => {
                    if !hit.insert(w) {
                        return None;
                    }
                    map[z] = Some(w);
                    queue.push(z);
                }
            }
        }
    }
    if hit.len() != src_members.len() {
        return None;
    }
    for a in src_members.iter() {
        for b in src_members.iter() {
            if map[src.mul(a, b)] != Some(dst.mul(map[a]?, map[b]?)) {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zoo(label: &str) -> &'static ZooEntry {
        reference_zoo().iter().find(|e| e.label == label).unwrap()
    }

    #[test]
    fn zoo_orders() {
        for (label, order) in [("Q8", 8), ("SD16", 16), ("SL2(F3)", 24), ("C3⋊D4", 24), ("GL2(F3)", 48), ("Dic3", 12)]
        {
            assert_eq!(zoo(label).group.order(), order, "{label}");
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = &zoo("Q8").fingerprint;
        assert_eq!(q8.involution_count, 1);
        assert_eq!(zoo("D4").fingerprint.involution_count, 5);
    }

    #[test]
    fn zoo_fingerprints_are_pairwise_distinct() {
        let zoo = reference_zoo();
        for (i, a) in zoo.iter().enumerate() {
            for b in &zoo[i + 1..] {
                assert_ne!(a.fingerprint, b.fingerprint, "{} vs {}", a.label, b.label);
            }
        }
    }

    #[test]
    fn every_zoo_group_labels_itself() {
        for entry in reference_zoo() {
            assert_eq!(entry.group.iso_label(&entry.group.whole()), IsoLabel::Known(entry.label));
        }
    }

    #[test]
    fn abelian_order_six_is_cyclic() {
        let c2c3 = FiniteGroup::build_from_generators(
            &[Generator::perm("(1 2)").unwrap(), Generator::perm("(3 4 5)").unwrap()],
            "C2xC3",
        )
        .unwrap();
        assert_eq!(c2c3.iso_label(&c2c3.whole()).to_string(), "C6");
    }

    #[test]
    fn unmatched_type_is_unknown() {
        // C4 x C4 is not in the zoo.
        let g = FiniteGroup::build_from_generators(
            &[Generator::perm("(1 2 3 4)").unwrap(), Generator::perm("(5 6 7 8)").unwrap()],
            "C4xC4",
        )
        .unwrap();
        assert_eq!(g.iso_label(&g.whole()), IsoLabel::UnknownType { order: 16 });
    }

    #[test]
    fn isomorphism_search_between_presentations() {
        let a = &zoo("D6").group;
        // D6 as S3 x C2.
        let b = FiniteGroup::build_from_generators(
            &[
                Generator::perm("(1 2 3)").unwrap(),
                Generator::perm("(1 2)").unwrap(),
                Generator::perm("(4 5)").unwrap(),
            ],
            "S3xC2",
        )
        .unwrap();
        let map = find_isomorphism(a, a.all(), &b, b.all()).expect("D6 is S3 x C2");
        let image: ElementSet = map.iter().map(|x| x.unwrap()).collect();
        assert_eq!(image, b.all());
        assert!(find_isomorphism(a, a.all(), &zoo("A4").group, zoo("A4").group.all()).is_none());
        assert!(find_isomorphism(&zoo("Q8").group, zoo("Q8").group.all(), &zoo("D4").group, zoo("D4").group.all())
            .is_none());
    }
}
