//! Finite groups as Cayley tables over abstract element indices.
//!
//! A group is seeded from permutations or 2x2 matrices over the field with
//! three elements, closed breadth-first from the identity, and then forgets
//! its seed representation. Element `0` is always the identity.

mod element_set;
mod iso;
mod lattice;
mod seed;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub use element_set::{ElementSet, Members, MAX_ORDER};
pub use iso::{find_isomorphism, reference_zoo, IsoFingerprint, IsoLabel};
pub use lattice::{subgroup_lattice, SubgroupLattice};
pub use seed::{Generator, Mat3, Permutation};
pub use subgroup::Subgroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("ClosureTooLarge: closure of {name} exceeds {cap} elements")]
    ClosureTooLarge { name: String, cap: usize },
    #[error("NotInvertible: matrix {0} is singular over F3")]
    NotInvertible(String),
    #[error("ParentMismatch: subgroups belong to different groups")]
    ParentMismatch,
    #[error("EmptyGenerators: at least one generator is required")]
    EmptyGenerators,
    #[error("BadGenerator: cannot use generator {0:?}")]
    BadGenerator(String),
    #[error("InvalidTable: {0}")]
    InvalidTable(String),
    #[error("NotASubgroup: {0:?} is not closed under the group law")]
    NotASubgroup(ElementSet),
}

/// Identity of a constructed group, used to reject mixing subgroups of
/// different parents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(0);
        GroupId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// Closure cap applied by [`FiniteGroup::build_from_generators`].
pub const CLOSURE_CAP: usize = MAX_ORDER;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    id: GroupId,
    name: String,
    order: usize,
    /// Row-major `order x order` product table.
    cayley: Vec<u8>,
    inverse: Vec<usize>,
    element_orders: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Closes `gens` breadth-first from the identity. Generators are sorted
    /// and deduplicated first, so the element numbering only depends on the
    /// generator set.
    pub fn build_from_generators(gens: &[Generator], name: &str) -> Result<Self, GroupError> {
        let (mut gens, identity) = seed::normalize(gens)?;
        gens.sort();
        gens.dedup();

        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Generator, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = elements[x].mul(g);
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() == CLOSURE_CAP {
                    return Err(GroupError::ClosureTooLarge { name: name.to_string(), cap: CLOSURE_CAP });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }

        let order = elements.len();
        let mut cayley = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                cayley.push(index[&a.mul(b)] as u8);
            }
        }
        let labels = elements.iter().map(ToString::to_string).collect();
        Self::assemble(name, order, cayley, labels)
    }

    /// Wraps an explicit Cayley table. Element `0` must be the identity and
    /// the table must satisfy the group axioms.
    pub fn from_table(name: &str, table: &[Vec<usize>], labels: Vec<String>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::InvalidTable(format!("order {order} out of range")));
        }
        if labels.len() != order || table.iter().any(|row| row.len() != order) {
            return Err(GroupError::InvalidTable("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= order) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let cayley = table.iter().flatten().map(|&x| x as u8).collect();
        let group = Self::assemble(name, order, cayley, labels)?;
        group.verify_axioms()?;
        Ok(group)
    }

    fn assemble(name: &str, order: usize, cayley: Vec<u8>, labels: Vec<String>) -> Result<Self, GroupError> {
        let mut group = FiniteGroup {
            id: GroupId::fresh(),
            name: name.to_string(),
            order,
            cayley,
            inverse: Vec::new(),
            element_orders: Vec::new(),
            labels,
        };
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| group.mul(x, y) == 0)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {x} has no inverse")))?;
            inverse.push(inv);
        }
        group.inverse = inverse;
        group.element_orders = (0..order).map(|x| group.compute_element_order(x)).collect();
        Ok(group)
    }

    fn compute_element_order(&self, x: usize) -> usize {
        let mut power = x;
        let mut k = 1;
        while power != 0 && k <= self.order {
            power = self.mul(power, x);
            k += 1;
        }
        k
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    /// Identity, inverse, Latin-square and associativity checks, run
    /// exhaustively.
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        let fail = |msg: String| Err(GroupError::InvalidTable(format!("{}: {msg}", self.name)));
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return fail(format!("element 0 is not an identity for {x}"));
            }
            if self.mul(x, self.inverse(x)) != 0 || self.mul(self.inverse(x), x) != 0 {
                return fail(format!("bad inverse for {x}"));
            }
        }
        for x in 0..n {
            let row: ElementSet = (0..n).map(|y| self.mul(x, y)).collect();
            let col: ElementSet = (0..n).map(|y| self.mul(y, x)).collect();
            if row.len() != n || col.len() != n {
                return fail(format!("row or column {x} is not a permutation"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return fail(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest set containing the identity and closed under right
    /// multiplication by `gens`; in a finite group this is `<gens>`.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::singleton(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn is_closed(&self, set: ElementSet) -> bool {
        set.contains(0) && set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }
}
