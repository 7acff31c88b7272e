//! Genus-2 curve contexts: the seven possible automorphism groups, the
//! hyperelliptic involution, and which subgroups have a rational quotient.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{subgroup_lattice, ElementSet, FiniteGroup, IsoLabel, Subgroup, SubgroupLattice};
use crate::report::catalog_file::parse_catalog;

const CATALOG: &str = include_str!("../data/catalog.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("CatalogCorrupt: {0}")]
    CatalogCorrupt(String),
    #[error("AmbiguousSigma: center of {group} contains {involutions} involutions")]
    AmbiguousSigma { group: String, involutions: usize },
    #[error("NotCentralInvolution: element {0} cannot serve as the hyperelliptic involution")]
    NotCentralInvolution(usize),
    #[error("UnknownGroup: {0:?} is not one of C2, C2xC2, D4_8, C10, D6_12, C3sdD4_24, GL2F3_48")]
    UnknownGroup(String),
}

/// The automorphism group of a genus-2 curve, up to isomorphism. The suffix
/// is the group order.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AutGroupId {
    C2,
    C2xC2,
    D4_8,
    C10,
    D6_12,
    C3sdD4_24,
    GL2F3_48,
}

impl AutGroupId {
    pub const ALL: [AutGroupId; 7] = [
        AutGroupId::C2,
        AutGroupId::C2xC2,
        AutGroupId::D4_8,
        AutGroupId::C10,
        AutGroupId::D6_12,
        AutGroupId::C3sdD4_24,
        AutGroupId::GL2F3_48,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AutGroupId::C2 => "C2",
            AutGroupId::C2xC2 => "C2xC2",
            AutGroupId::D4_8 => "D4_8",
            AutGroupId::C10 => "C10",
            AutGroupId::D6_12 => "D6_12",
            AutGroupId::C3sdD4_24 => "C3sdD4_24",
            AutGroupId::GL2F3_48 => "GL2F3_48",
        }
    }

    /// Conventional mathematical name.
    pub fn display_name(self) -> &'static str {
        match self {
            AutGroupId::C2 => "C2",
            AutGroupId::C2xC2 => "C2×C2",
            AutGroupId::D4_8 => "D4",
            AutGroupId::C10 => "C10",
            AutGroupId::D6_12 => "D6",
            AutGroupId::C3sdD4_24 => "C3⋊D4",
            AutGroupId::GL2F3_48 => "GL2(F3)",
        }
    }

    pub fn order(self) -> usize {
        match self {
            AutGroupId::C2 => 2,
            AutGroupId::C2xC2 => 4,
            AutGroupId::D4_8 => 8,
            AutGroupId::C10 => 10,
            AutGroupId::D6_12 => 12,
            AutGroupId::C3sdD4_24 => 24,
            AutGroupId::GL2F3_48 => 48,
        }
    }
}

impl fmt::Display for AutGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AutGroupId {
    type Err = CurveError;

    /// Accepts the canonical spelling and the name without the order suffix
    /// (`D4`, `D6`, `C3sdD4`, `GL2F3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AutGroupId::ALL
            .into_iter()
            .find(|id| {
                let name = id.name();
                s == name || name.split_once('_').is_some_and(|(short, _)| s == short)
            })
            .ok_or_else(|| CurveError::UnknownGroup(s.to_string()))
    }
}

/// Orders of the subgroups with rational quotient, `order -> count`, that
/// pin down the intended group of order 24 among those of that order.
fn required_p1_census(id: AutGroupId) -> Option<BTreeMap<usize, usize>> {
    match id {
        AutGroupId::C3sdD4_24 => Some(BTreeMap::from([(24, 1), (12, 3), (8, 3), (6, 5), (4, 7), (3, 1), (2, 1)])),
        _ => None,
    }
}

/// Loads and validates the seven groups from the bundled catalog file.
pub fn catalog() -> Result<Vec<(AutGroupId, FiniteGroup)>, CurveError> {
    let records = parse_catalog(CATALOG).map_err(|e| CurveError::CatalogCorrupt(e.to_string()))?;
    let mut groups = Vec::with_capacity(records.len());
    for record in records {
        let id: AutGroupId =
            record.name.parse().map_err(|_| CurveError::CatalogCorrupt(format!("unknown entry {}", record.name)))?;
        let group = FiniteGroup::build_from_generators(&record.generators, id.name())
            .map_err(|e| CurveError::CatalogCorrupt(format!("{id}: {e}")))?;
        if group.order() != id.order() {
            return Err(CurveError::CatalogCorrupt(format!(
                "{id}: generators give order {}, expected {}",
                group.order(),
                id.order()
            )));
        }
        let label = group.iso_label(&group.whole());
        if label.to_string() != record.expected_type {
            return Err(CurveError::CatalogCorrupt(format!(
                "{id}: generators give {label}, expected {}",
                record.expected_type
            )));
        }
        if let Some(census) = required_p1_census(id) {
            let ctx =
                CurveContext::new(id, group.clone()).map_err(|e| CurveError::CatalogCorrupt(format!("{id}: {e}")))?;
            if ctx.p1_census() != census {
                return Err(CurveError::CatalogCorrupt(format!(
                    "{id}: rational-quotient census {:?} differs from {census:?}",
                    ctx.p1_census()
                )));
            }
        }
        groups.push((id, group));
    }
    let ids: Vec<AutGroupId> = groups.iter().map(|(id, _)| *id).collect();
    if ids != AutGroupId::ALL {
        return Err(CurveError::CatalogCorrupt(format!("catalog lists {ids:?}")));
    }
    Ok(groups)
}

pub fn catalog_group(id: AutGroupId) -> Result<FiniteGroup, CurveError> {
    catalog()?
        .into_iter()
        .find(|(entry, _)| *entry == id)
        .map(|(_, group)| group)
        .ok_or_else(|| CurveError::CatalogCorrupt(format!("{id} missing")))
}

/// The unique involution in the center of `group`.
pub fn hyperelliptic_involution(group: &FiniteGroup) -> Result<usize, CurveError> {
    let involutions: Vec<usize> = group.center().members().iter().filter(|&z| group.element_order(z) == 2).collect();
    match involutions[..] {
        [sigma] => Ok(sigma),
        _ => Err(CurveError::AmbiguousSigma { group: group.name().to_string(), involutions: involutions.len() }),
    }
}

/// Index of a subgroup in the deterministic enumeration of its group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubgroupId(pub usize);

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A curve's automorphism group together with its hyperelliptic involution
/// and the full subgroup lattice.
#[derive(Clone, Debug)]
pub struct CurveContext {
    id: AutGroupId,
    group: FiniteGroup,
    sigma: usize,
    sigma_subgroup: SubgroupId,
    subgroups: Vec<Subgroup>,
    labels: Vec<IsoLabel>,
    lattice: SubgroupLattice,
    p1: Vec<SubgroupId>,
}

impl CurveContext {
    pub fn new(id: AutGroupId, group: FiniteGroup) -> Result<Self, CurveError> {
        let sigma = hyperelliptic_involution(&group)?;
        Self::with_sigma(id, group, sigma)
    }

    /// Uses the given central involution as the hyperelliptic involution.
    pub fn with_sigma(id: AutGroupId, group: FiniteGroup, sigma: usize) -> Result<Self, CurveError> {
        if sigma >= group.order() || group.element_order(sigma) != 2 || !group.center().contains(sigma) {
            return Err(CurveError::NotCentralInvolution(sigma));
        }
        let subgroups = group.enumerate_subgroups();
        let labels = subgroups.iter().map(|s| group.iso_label(s)).collect();
        let lattice = subgroup_lattice(&group, &subgroups);
        let sigma_members: ElementSet = [0, sigma].into_iter().collect();
        let sigma_subgroup =
            SubgroupId(subgroups.iter().position(|s| s.members() == sigma_members).expect("<sigma> is enumerated"));
        let mut ctx = CurveContext { id, group, sigma, sigma_subgroup, subgroups, labels, lattice, p1: Vec::new() };
        ctx.p1 = (0..ctx.subgroups.len()).map(SubgroupId).filter(|&h| ctx.quotient_is_p1(h)).collect();
        Ok(ctx)
    }

    /// Context for a catalog group. For `C2xC2`, whose center has three
    /// involutions, the one with the smallest element index is designated
    /// as the hyperelliptic involution.
    pub fn from_catalog(id: AutGroupId) -> Result<Self, CurveError> {
        let group = catalog_group(id)?;
        match hyperelliptic_involution(&group) {
            Ok(sigma) => Self::with_sigma(id, group, sigma),
            Err(CurveError::AmbiguousSigma { .. }) if id == AutGroupId::C2xC2 => {
                let sigma = group.center().members().iter().find(|&z| z != 0).expect("nontrivial center");
                Self::with_sigma(id, group, sigma)
            }
            Err(e) => Err(e),
        }
    }

    pub fn id(&self) -> AutGroupId {
        self.id
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn sigma_subgroup(&self) -> SubgroupId {
        self.sigma_subgroup
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, h: SubgroupId) -> &Subgroup {
        &self.subgroups[h.0]
    }

    pub fn label(&self, h: SubgroupId) -> &IsoLabel {
        &self.labels[h.0]
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn order_of(&self, h: SubgroupId) -> usize {
        self.subgroups[h.0].order()
    }

    pub fn find(&self, members: ElementSet) -> Option<SubgroupId> {
        self.subgroups.iter().position(|s| s.members() == members).map(SubgroupId)
    }

    /// Position of `h` among the subgroups of the same order.
    pub fn index_in_order(&self, h: SubgroupId) -> usize {
        let order = self.order_of(h);
        self.subgroups[..h.0].iter().filter(|s| s.order() == order).count()
    }

    /// Subgroups `H` with `X/H` rational, in enumeration order.
    pub fn p1_subgroups(&self) -> &[SubgroupId] {
        &self.p1
    }

    pub fn p1_of_order(&self, order: usize) -> impl Iterator<Item = SubgroupId> + '_ {
        self.p1.iter().copied().filter(move |&h| self.order_of(h) == order)
    }

    /// `order -> count` over the rational-quotient subgroups.
    pub fn p1_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for &h in &self.p1 {
            *census.entry(self.order_of(h)).or_insert(0) += 1;
        }
        census
    }

    /// `X/H` is rational exactly when `|H| >= 3` or `H = <sigma>`. The
    /// trivial group has quotient `X` itself, and an involution other than
    /// `sigma` has a quotient of positive genus.
    pub fn quotient_is_p1(&self, h: SubgroupId) -> bool {
        self.order_of(h) >= 3 || h == self.sigma_subgroup
    }

    /// `D_H` is very ample iff its degree `|H|` is at least 5.
    pub fn very_ample(&self, h: SubgroupId) -> bool {
        self.degree(h) >= 5
    }

    /// Degree of `D_H`, one point per element of `H`.
    pub fn degree(&self, h: SubgroupId) -> i64 {
        self.order_of(h) as i64
    }

    /// Orders `>= 5` of rational-quotient subgroups, ascending.
    pub fn very_ample_orders(&self) -> Vec<usize> {
        self.p1_census().into_keys().filter(|&order| order >= 5).collect()
    }
}
