//! Linear-equivalence ledger for the divisor classes `D_H`.
//!
//! Every rational-quotient subgroup `H` contributes a node for the class of
//! `D_H`, and one extra node stands for the canonical class `K`. A weighted
//! union-find stores, per connected component, each node's class as the
//! component root's class plus an integer multiple of `K`. Three relation
//! kinds feed it:
//!
//! * `EqualVia { H, N, L }`: `|H| = |N|` and a rational-quotient `L` lies in
//!   `H ∩ N`, hence `D_H ~ D_N`.
//! * `DiffIsClass { H, N, L }`: `|H| - |N| = |L|` with `L` as above, hence
//!   `D_H - D_N ~ D_L`. Ternary; it only becomes a constraint once `D_L` is
//!   known to be a multiple `m K`, and then reads `D_H - D_N ~ m K`.
//! * `Anchor`: `D_<sigma> ~ K`.
//!
//! The build repeats passes over the pending relations until none fires.
//! Degrees are tracked alongside: `deg K = 2`, so two nodes at potential
//! distance `m` must differ in degree by `2m`.

mod union_find;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::genus2::{CurveContext, SubgroupId};

pub use union_find::{Conflict, WeightedUnionFind};

/// Genus of the curves handled here.
pub const GENUS: i64 = 2;
/// `deg K = 2g - 2`.
pub const CANONICAL_DEGREE: i64 = 2 * GENUS - 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("InconsistentLedger: {0}")]
    InconsistentLedger(String),
    #[error("NoPath: no derived equivalence relates {h} and {n}")]
    NoPath { h: SubgroupId, n: SubgroupId },
    #[error("NotInLedger: {0} has no rational quotient")]
    NotInLedger(SubgroupId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum Relation {
    EqualVia { h: SubgroupId, n: SubgroupId, l: SubgroupId },
    DiffIsClass { h: SubgroupId, n: SubgroupId, l: SubgroupId },
    Anchor { sigma: SubgroupId },
}

impl Relation {
    pub fn kind(&self) -> &'static str {
        match self {
            Relation::EqualVia { .. } => "EqualVia",
            Relation::DiffIsClass { .. } => "DiffIsClass",
            Relation::Anchor { .. } => "Anchor",
        }
    }

    /// The mediating subgroup, `sigma` for the anchor.
    pub fn via(&self) -> SubgroupId {
        match *self {
            Relation::EqualVia { l, .. } | Relation::DiffIsClass { l, .. } => l,
            Relation::Anchor { sigma } => sigma,
        }
    }

    /// Whether the hypotheses that justify the relation hold in `ctx`.
    pub fn holds_in(&self, ctx: &CurveContext) -> bool {
        let within = |l: SubgroupId, h: SubgroupId, n: SubgroupId| {
            ctx.quotient_is_p1(l)
                && ctx.quotient_is_p1(h)
                && ctx.quotient_is_p1(n)
                && ctx.subgroup(l).is_subgroup_of(ctx.subgroup(h))
                && ctx.subgroup(l).is_subgroup_of(ctx.subgroup(n))
        };
        match *self {
            Relation::EqualVia { h, n, l } => ctx.order_of(h) == ctx.order_of(n) && within(l, h, n),
            Relation::DiffIsClass { h, n, l } => {
                ctx.order_of(h) == ctx.order_of(n) + ctx.order_of(l) && within(l, h, n)
            }
            Relation::Anchor { sigma } => sigma == ctx.sigma_subgroup(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::EqualVia { h, n, l } => write!(f, "EqualVia(H={h}, N={n}, L={l})"),
            Relation::DiffIsClass { h, n, l } => write!(f, "DiffIsClass(H={h}, N={n}, L={l})"),
            Relation::Anchor { sigma } => write!(f, "Anchor({sigma} ~ K)"),
        }
    }
}

/// Every relation instance over ordered pairs of rational-quotient
/// subgroups, the anchor first. `EqualVia` is symmetric and listed once per
/// unordered pair.
pub fn collect_relations(ctx: &CurveContext) -> Vec<Relation> {
    let mut relations = vec![Relation::Anchor { sigma: ctx.sigma_subgroup() }];
    let p1 = ctx.p1_subgroups();
    for &h in p1 {
        for &n in p1 {
            if h == n {
                continue;
            }
            let meet = ctx.subgroup(h).members().intersection(ctx.subgroup(n).members());
            let (oh, on) = (ctx.order_of(h), ctx.order_of(n));
            for &l in p1 {
                if !ctx.subgroup(l).members().is_subset(meet) {
                    continue;
                }
                if oh == on && h < n {
                    relations.push(Relation::EqualVia { h, n, l });
                }
                if oh == on + ctx.order_of(l) {
                    relations.push(Relation::DiffIsClass { h, n, l });
                }
            }
        }
    }
    relations
}

/// A ledger node: the class of `D_H` for a subgroup, or `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Node {
    Class(SubgroupId),
    Canonical,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Class(h) => write!(f, "D{h}"),
            Node::Canonical => f.write_str("K"),
        }
    }
}

/// `D_H - D_N` as a multiple of `K`, when derivable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Difference {
    KnownMultiple(i64),
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Certainty {
    Proved,
    AssumedDistinct,
    Undecided,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::Proved => "Proved",
            Certainty::AssumedDistinct => "AssumedDistinct",
            Certainty::Undecided => "Undecided",
        })
    }
}

/// One link of a derivation: `class(from) - class(to) = shift * K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub relation: Relation,
    pub from: Node,
    pub to: Node,
    pub shift: i64,
    /// For `DiffIsClass`, the derivation of `D_L` relative to `K`.
    pub premise: Option<Certificate>,
}

/// A chain of relations from one class to another.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sum of the step shifts: `class(start) - class(end)` in units of `K`.
    pub fn total_shift(&self) -> i64 {
        self.steps.iter().map(|s| s.shift).sum()
    }

    /// The mediating subgroups of the top-level steps, in order.
    pub fn mediators(&self) -> Vec<SubgroupId> {
        self.steps.iter().map(|s| s.relation.via()).collect()
    }

    /// The subgroup nodes visited, endpoints included.
    pub fn visited(&self) -> Vec<Node> {
        let mut nodes: Vec<Node> = self.steps.first().map(|s| s.from).into_iter().collect();
        nodes.extend(self.steps.iter().map(|s| s.to));
        nodes
    }
}

/// `ℓ(D_H - D_N)` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LSpace {
    pub value: u32,
    pub certainty: Certainty,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    relation: Relation,
    a: usize,
    b: usize,
    /// `class(a) - class(b)` in units of `K`.
    shift: i64,
}

/// How many relations of each kind fired during the build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationCensus {
    pub anchor: usize,
    pub equal_via: usize,
    /// `DiffIsClass` with `L = <sigma>`.
    pub diff_via_sigma: usize,
    /// `DiffIsClass` with `|L| > 2`.
    pub diff_via_larger: usize,
    /// `DiffIsClass` whose `D_L` never became a multiple of `K`.
    pub pending: usize,
}

/// The frozen result of running the relations to a fixpoint.
#[derive(Clone, Debug)]
pub struct PicardLedger {
    nodes: Vec<Node>,
    index: HashMap<SubgroupId, usize>,
    degree: Vec<i64>,
    uf: WeightedUnionFind,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    pending: Vec<Relation>,
    census: RelationCensus,
    merges: usize,
}

pub fn build_ledger(ctx: &CurveContext) -> Result<PicardLedger, LedgerError> {
    build_ledger_from(ctx, collect_relations(ctx))
}

/// Runs the given relations to a fixpoint. Relations are taken as given;
/// [`collect_relations`] only produces ones whose hypotheses hold.
pub fn build_ledger_from(ctx: &CurveContext, relations: Vec<Relation>) -> Result<PicardLedger, LedgerError> {
    let mut nodes: Vec<Node> = ctx.p1_subgroups().iter().map(|&h| Node::Class(h)).collect();
    nodes.push(Node::Canonical);
    let index = ctx.p1_subgroups().iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut degree: Vec<i64> = ctx.p1_subgroups().iter().map(|&h| ctx.degree(h)).collect();
    degree.push(CANONICAL_DEGREE);
    let n = nodes.len();
    let mut ledger = PicardLedger {
        nodes,
        index,
        degree,
        uf: WeightedUnionFind::new(n),
        edges: Vec::new(),
        adjacency: vec![Vec::new(); n],
        pending: Vec::new(),
        census: RelationCensus::default(),
        merges: 0,
    };

    let mut pending = relations;
    loop {
        let mut waiting = Vec::new();
        let mut fired = false;
        for relation in pending {
            let constraint = match relation {
                Relation::Anchor { sigma } => Some((ledger.node(sigma)?, ledger.anchor(), 0)),
                Relation::EqualVia { h, n, .. } => Some((ledger.node(h)?, ledger.node(n)?, 0)),
                Relation::DiffIsClass { h, n, l } => match ledger.absolute(ledger.node(l)?) {
                    Some(m) => Some((ledger.node(h)?, ledger.node(n)?, m)),
                    None => None,
                },
            };
            match constraint {
                Some((a, b, shift)) => {
                    ledger.fire(relation, a, b, shift)?;
                    fired = true;
                }
                None => waiting.push(relation),
            }
        }
        pending = waiting;
        if !fired {
            break;
        }
    }
    ledger.census.pending = pending.len();
    ledger.pending = pending;
    Ok(ledger)
}

impl PicardLedger {
    fn node(&self, h: SubgroupId) -> Result<usize, LedgerError> {
        self.index.get(&h).copied().ok_or(LedgerError::NotInLedger(h))
    }

    fn anchor(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `m` with `class(x) ~ m K`, if `x` is connected to the anchor.
    fn absolute(&self, x: usize) -> Option<i64> {
        self.uf.diff(x, self.anchor()).map(|d| d + 1)
    }

    fn fire(&mut self, relation: Relation, a: usize, b: usize, shift: i64) -> Result<(), LedgerError> {
        if self.degree[a] - self.degree[b] != CANONICAL_DEGREE * shift {
            return Err(LedgerError::InconsistentLedger(format!(
                "{relation}: degrees {} and {} cannot differ by {shift} K",
                self.degree[a], self.degree[b]
            )));
        }
        let merged = self.uf.union(a, b, shift).map_err(|c| {
            LedgerError::InconsistentLedger(format!(
                "{relation}: asserts a shift of {} K where {} K is already derived",
                c.expected, c.found
            ))
        })?;
        match relation {
            Relation::Anchor { .. } => self.census.anchor += 1,
            Relation::EqualVia { .. } => self.census.equal_via += 1,
            Relation::DiffIsClass { l, .. } => {
                if self.degree[self.index[&l]] == CANONICAL_DEGREE {
                    self.census.diff_via_sigma += 1;
                } else {
                    self.census.diff_via_larger += 1;
                }
            }
        }
        let id = self.edges.len();
        self.edges.push(Edge { relation, a, b, shift });
        self.adjacency[a].push(id);
        self.adjacency[b].push(id);
        if merged {
            self.merges += 1;
            self.check_degree_consistency()?;
        }
        Ok(())
    }

    /// Every node satisfies `deg(x) - deg(root) = 2 * potential(x)`.
    pub fn check_degree_consistency(&self) -> Result<(), LedgerError> {
        for x in 0..self.nodes.len() {
            let (root, potential) = self.uf.root(x);
            if self.degree[x] - self.degree[root] != CANONICAL_DEGREE * potential {
                return Err(LedgerError::InconsistentLedger(format!(
                    "{} has degree {} but sits {potential} K from {} of degree {}",
                    self.nodes[x], self.degree[x], self.nodes[root], self.degree[root]
                )));
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn census(&self) -> RelationCensus {
        self.census
    }

    /// Number of unions that joined two components.
    pub fn merges(&self) -> usize {
        self.merges
    }

    /// Relations that never fired.
    pub fn pending(&self) -> &[Relation] {
        &self.pending
    }

    /// Whether `D_H` is known to be a multiple of `K`, and which.
    pub fn canonical_multiple(&self, h: SubgroupId) -> Option<i64> {
        self.index.get(&h).and_then(|&x| self.absolute(x))
    }

    pub fn in_anchor_component(&self, h: SubgroupId) -> bool {
        self.canonical_multiple(h).is_some()
    }

    /// Components as sorted member lists, each node with its potential
    /// relative to the component's first member. Independent of which node
    /// the union-find picked as root.
    pub fn components(&self) -> Vec<Vec<(Node, i64)>> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.nodes.len() {
            groups.entry(self.uf.root(x).0).or_default().push(x);
        }
        let mut components: Vec<Vec<(Node, i64)>> = groups
            .into_values()
            .map(|members| {
                let base = members[0];
                let mut component: Vec<(Node, i64)> =
                    members.iter().map(|&x| (self.nodes[x], self.uf.diff(x, base).expect("same component"))).collect();
                component.sort();
                let shift = component[0].1;
                component.iter_mut().for_each(|(_, p)| *p -= shift);
                component
            })
            .collect();
        components.sort();
        components
    }

    pub fn difference(&self, h: SubgroupId, n: SubgroupId) -> Difference {
        let (Some(&a), Some(&b)) = (self.index.get(&h), self.index.get(&n)) else {
            return Difference::Unknown;
        };
        match self.uf.diff(a, b) {
            Some(m) => Difference::KnownMultiple(m),
            None => Difference::Unknown,
        }
    }

    /// `ℓ(D_H - D_N)` on a genus-2 curve, with `d = |H| - |N|`:
    ///
    /// * `d < 0`: no sections.
    /// * `d = 0`: 1 if the classes are proved equal, otherwise 0 assuming
    ///   they differ.
    /// * `d = 1`: Riemann–Roch leaves 0 or 1 open; reported as 0, undecided.
    /// * `d = 2`: 2 if the difference is proved to be `K`, otherwise 1.
    /// * `d > 2`: `d - 1`, since the degree exceeds `deg K`.
    pub fn ell(&self, h: SubgroupId, n: SubgroupId) -> LSpace {
        let d = self.index.get(&h).map(|&x| self.degree[x]).unwrap_or(0)
            - self.index.get(&n).map(|&x| self.degree[x]).unwrap_or(0);
        let by_degree =
            |value: u32| LSpace { value, certainty: Certainty::Proved, certificate: Certificate::default() };
        let by_class = |target: i64, equal: u32| match self.difference(h, n) {
            Difference::KnownMultiple(m) if m == target => LSpace {
                value: equal,
                certainty: Certainty::Proved,
                certificate: self.zigzag_certificate(h, n).expect("connected nodes have a path"),
            },
            _ => {
                LSpace { value: equal - 1, certainty: Certainty::AssumedDistinct, certificate: Certificate::default() }
            }
        };
        match d {
            d if d < 0 => by_degree(0),
            0 => by_class(0, 1),
            1 => LSpace { value: 0, certainty: Certainty::Undecided, certificate: Certificate::default() },
            2 => by_class(1, 2),
            d => by_degree((d + 1 - GENUS) as u32),
        }
    }

    /// The shortest chain of fired relations linking `D_H` to `D_N`.
    pub fn zigzag_certificate(&self, h: SubgroupId, n: SubgroupId) -> Result<Certificate, LedgerError> {
        let no_path = || LedgerError::NoPath { h, n };
        let a = self.node(h).map_err(|_| no_path())?;
        let b = self.node(n).map_err(|_| no_path())?;
        self.path(a, b, self.edges.len()).ok_or_else(no_path)
    }

    /// Breadth-first search using only edges recorded before `limit`, so that
    /// premises of a step never depend on the step itself.
    fn path(&self, from: usize, to: usize, limit: usize) -> Option<Certificate> {
        let mut came_by: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &e in &self.adjacency[x] {
                if e >= limit {
                    continue;
                }
                let edge = &self.edges[e];
                let y = if edge.a == x { edge.b } else { edge.a };
                if !seen[y] {
                    seen[y] = true;
                    came_by[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut trail = Vec::new();
        let mut x = to;
        while x != from {
            let e = came_by[x].expect("visited nodes have a parent edge");
            let edge = &self.edges[e];
            let prev = if edge.a == x { edge.b } else { edge.a };
            trail.push((e, prev, x));
            x = prev;
        }
        trail.reverse();
        let steps = trail
            .into_iter()
            .map(|(e, x, y)| {
                let edge = self.edges[e];
                let shift = if edge.a == x { edge.shift } else { -edge.shift };
                let premise = match edge.relation {
                    Relation::DiffIsClass { l, .. } => {
                        Some(self.path(self.index[&l], self.anchor(), e).expect("premise preceded the step"))
                    }
                    _ => None,
                };
                Step { relation: edge.relation, from: self.nodes[x], to: self.nodes[y], shift, premise }
            })
            .collect();
        Some(Certificate { steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus2::AutGroupId;

    fn setup(id: AutGroupId) -> (CurveContext, PicardLedger) {
        let ctx = CurveContext::from_catalog(id).unwrap();
        let ledger = build_ledger(&ctx).unwrap();
        (ctx, ledger)
    }

    fn of_label(ctx: &CurveContext, label: &str) -> Vec<SubgroupId> {
        ctx.p1_subgroups().iter().copied().filter(|&h| ctx.label(h).to_string() == label).collect()
    }

    #[test]
    fn collected_relations_satisfy_their_hypotheses() {
        for id in AutGroupId::ALL {
            let ctx = CurveContext::from_catalog(id).unwrap();
            let relations = collect_relations(&ctx);
            assert_eq!(relations.iter().filter(|r| matches!(r, Relation::Anchor { .. })).count(), 1);
            assert!(relations.iter().all(|r| r.holds_in(&ctx)), "{id}");
            let mut sorted = relations.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), relations.len(), "{id}: duplicates");
            assert!(relations.iter().all(|r| !matches!(r, Relation::DiffIsClass { h, n, .. } if h == n)));
        }
    }

    #[test]
    fn d6_relations_from_the_worked_example() {
        let ctx = CurveContext::from_catalog(AutGroupId::D6_12).unwrap();
        let relations = collect_relations(&ctx);
        let c3 = of_label(&ctx, "C3")[0];
        let c6 = of_label(&ctx, "C6")[0];
        let sigma = ctx.sigma_subgroup();
        for s3 in of_label(&ctx, "S3") {
            let (h, n) = if s3 < c6 { (s3, c6) } else { (c6, s3) };
            assert!(relations.contains(&Relation::EqualVia { h, n, l: c3 }));
        }
        for klein in of_label(&ctx, "C2²") {
            assert!(relations.contains(&Relation::DiffIsClass { h: c6, n: klein, l: sigma }));
        }
    }

    #[test]
    fn degree_consistency_holds_for_every_group() {
        for id in AutGroupId::ALL {
            let (_, ledger) = setup(id);
            ledger.check_degree_consistency().unwrap();
            assert!(ledger.merges() >= 1, "{id}");
        }
    }

    #[test]
    fn inconsistent_relation_is_reported() {
        let ctx = CurveContext::from_catalog(AutGroupId::D4_8).unwrap();
        let order4 = ctx.p1_of_order(4).next().unwrap();
        let bogus = Relation::EqualVia { h: order4, n: ctx.sigma_subgroup(), l: ctx.sigma_subgroup() };
        let err = build_ledger_from(&ctx, vec![bogus]).unwrap_err();
        assert!(matches!(err, LedgerError::InconsistentLedger(_)));
        assert!(err.to_string().starts_with("InconsistentLedger"));
    }

    #[test]
    fn c10_leaves_order_five_unanchored() {
        let (ctx, ledger) = setup(AutGroupId::C10);
        let c5 = ctx.p1_of_order(5).next().unwrap();
        let c10 = ctx.p1_of_order(10).next().unwrap();
        assert!(!ledger.in_anchor_component(c5));
        assert_eq!(ledger.difference(c10, c5), Difference::Unknown);
        assert_eq!(ledger.census().pending, 1);
        assert_eq!(ledger.pending(), &[Relation::DiffIsClass { h: c10, n: c5, l: c5 }]);
        assert_eq!(ledger.canonical_multiple(ctx.sigma_subgroup()), Some(1));
        assert_eq!(ledger.canonical_multiple(c10), None);
    }

    #[test]
    fn order_six_classes_of_d6_coincide() {
        let (ctx, ledger) = setup(AutGroupId::D6_12);
        let sixes: Vec<SubgroupId> = ctx.p1_of_order(6).collect();
        assert_eq!(sixes.len(), 3);
        for &a in &sixes {
            for &b in &sixes {
                assert_eq!(ledger.difference(a, b), Difference::KnownMultiple(0));
            }
        }
        assert_eq!(ledger.canonical_multiple(sixes[0]), Some(3));
    }

    #[test]
    fn ell_case_analysis() {
        let (ctx, ledger) = setup(AutGroupId::D6_12);
        let c6 = of_label(&ctx, "C6")[0];
        let sigma = ctx.sigma_subgroup();
        let whole = ctx.p1_of_order(12).next().unwrap();
        assert_eq!(ledger.ell(c6, sigma).value, 4 - 1);
        assert_eq!(ledger.ell(c6, sigma).certainty, Certainty::Proved);
        assert_eq!(ledger.ell(c6, whole).value, 0);
        let same = ledger.ell(c6, c6);
        assert_eq!((same.value, same.certainty), (1, Certainty::Proved));
        assert!(same.certificate.is_empty());
        for klein in of_label(&ctx, "C2²") {
            for s3 in of_label(&ctx, "S3") {
                let l = ledger.ell(s3, klein);
                assert_eq!((l.value, l.certainty), (2, Certainty::Proved));
                assert_eq!(l.certificate.total_shift(), 1);
            }
        }
    }

    #[test]
    fn unproved_cases_are_flagged() {
        // With only the anchor, nothing relates two distinct order-4 classes.
        let ctx = CurveContext::from_catalog(AutGroupId::D4_8).unwrap();
        let ledger = build_ledger_from(&ctx, vec![Relation::Anchor { sigma: ctx.sigma_subgroup() }]).unwrap();
        let fours: Vec<SubgroupId> = ctx.p1_of_order(4).collect();
        let l = ledger.ell(fours[0], fours[1]);
        assert_eq!((l.value, l.certainty), (0, Certainty::AssumedDistinct));
        let l = ledger.ell(fours[0], ctx.sigma_subgroup());
        assert_eq!((l.value, l.certainty), (1, Certainty::AssumedDistinct));
        assert!(matches!(ledger.zigzag_certificate(fours[0], fours[1]), Err(LedgerError::NoPath { .. })));
    }

    #[test]
    fn odd_gap_is_undecided() {
        // |C2²| - |C3| = 1; neither is very ample, so this never reaches a table.
        let (ctx, ledger) = setup(AutGroupId::D6_12);
        let c3 = of_label(&ctx, "C3")[0];
        let klein = of_label(&ctx, "C2²")[0];
        let l = ledger.ell(klein, c3);
        assert_eq!((l.value, l.certainty), (0, Certainty::Undecided));
    }

    #[test]
    fn gl2_c8_against_s3_goes_through_the_centre() {
        let (ctx, ledger) = setup(AutGroupId::GL2F3_48);
        let c8 = of_label(&ctx, "C8")[0];
        let c6 = of_label(&ctx, "C6");
        for s3 in of_label(&ctx, "S3") {
            let l = ledger.ell(c8, s3);
            assert_eq!((l.value, l.certainty), (2, Certainty::Proved));
            let mediators = l.certificate.mediators();
            assert!(mediators.contains(&ctx.sigma_subgroup()), "{mediators:?}");
            assert!(mediators.iter().any(|&m| ctx.label(m).to_string() == "C3"));
            assert!(l.certificate.visited().iter().any(|v| matches!(v, Node::Class(x) if c6.contains(x))));
        }
    }

    #[test]
    fn same_order_classes_coincide_except_gl2_order_three() {
        for id in AutGroupId::ALL {
            let (ctx, ledger) = setup(id);
            for &h in ctx.p1_subgroups() {
                for &n in ctx.p1_subgroups() {
                    if ctx.order_of(h) != ctx.order_of(n) || ctx.order_of(h) < 3 {
                        continue;
                    }
                    let known = ledger.difference(h, n) == Difference::KnownMultiple(0);
                    // Distinct C3s of GL2(F3) meet trivially and have odd
                    // degree, so no relation reaches them.
                    let exempt = id == AutGroupId::GL2F3_48 && ctx.order_of(h) == 3 && h != n;
                    assert_eq!(known, !exempt, "{id} {h} {n}");
                }
            }
        }
    }

    #[test]
    fn very_ample_classes_are_anchored_outside_c10() {
        for id in AutGroupId::ALL {
            let (ctx, ledger) = setup(id);
            for &h in ctx.p1_subgroups() {
                if ctx.very_ample(h) {
                    let expected = (id != AutGroupId::C10).then(|| ctx.degree(h) / 2);
                    assert_eq!(ledger.canonical_multiple(h), expected, "{id} {h}");
                }
            }
        }
    }

    #[test]
    fn certificates_compose_to_the_difference() {
        for id in AutGroupId::ALL {
            let (ctx, ledger) = setup(id);
            for &h in ctx.p1_subgroups() {
                for &n in ctx.p1_subgroups() {
                    match ledger.difference(h, n) {
                        Difference::KnownMultiple(m) => {
                            let cert = ledger.zigzag_certificate(h, n).unwrap();
                            assert_eq!(cert.total_shift(), m, "{id} {h} {n}");
                            for step in &cert.steps {
                                assert!(step.relation.holds_in(&ctx));
                                if let Some(premise) = &step.premise {
                                    let l = step.relation.via();
                                    assert_eq!(premise.total_shift() + 1, ledger.canonical_multiple(l).unwrap());
                                }
                            }
                        }
                        Difference::Unknown => assert!(ledger.zigzag_certificate(h, n).is_err()),
                    }
                }
            }
        }
    }
}
