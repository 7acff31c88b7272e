//! Brute-force cross-checks for the test suite. Nothing here reuses the
//! subgroup enumeration or the dimension arithmetic of the main pipeline.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decomp::{decompose_all_orders, DecompError, DecompositionReport, Histogram};
use crate::genus2::{CurveContext, SubgroupId};
use crate::groups::{ElementSet, FiniteGroup};
use crate::picard::{build_ledger_from, collect_relations, Certainty, Difference, PicardLedger, Relation};

/// Orders up to which every subset is tested for closure.
pub const SUBSET_LIMIT: usize = 16;

fn closed(g: &FiniteGroup, set: ElementSet) -> bool {
    set.contains(g.identity())
        && set.iter().all(|a| set.contains(g.inverse(a)) && set.iter().all(|b| set.contains(g.mul(a, b))))
}

/// Smallest closed set containing `seed`, by repeated products until stable.
fn generated(g: &FiniteGroup, seed: ElementSet) -> ElementSet {
    let mut set = seed;
    set.insert(g.identity());
    loop {
        let mut next = set;
        for a in set.iter() {
            for b in set.iter() {
                next.insert(g.mul(a, b));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn sorted(sets: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = sets.into_iter().collect::<HashSet<_>>().into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp_members(*b)));
    v
}

/// All subgroups of `g` as member sets, sorted by order then members.
pub fn exhaustive_subgroups(g: &FiniteGroup) -> Vec<ElementSet> {
    let n = g.order();
    if n <= SUBSET_LIMIT {
        // Every subset containing the identity (element 0).
        let others = n - 1;
        return sorted(
            (0u64..1 << others).map(|mask| ElementSet::from_bits((mask << 1) | 1)).filter(|&s| closed(g, s)),
        );
    }
    let mut found: HashSet<ElementSet> = HashSet::new();
    for a in 0..n {
        for b in a..n {
            found.insert(generated(g, [a, b].into_iter().collect()));
        }
    }
    loop {
        let current: Vec<ElementSet> = found.iter().copied().collect();
        let before = found.len();
        for (i, &x) in current.iter().enumerate() {
            for &y in &current[i + 1..] {
                found.insert(generated(g, x.union(y)));
            }
        }
        if found.len() == before {
            return sorted(found);
        }
    }
}

/// Everything a ledger answers for pairs of subgroups, up to certificate
/// choice.
fn fingerprint(ctx: &CurveContext, ledger: &PicardLedger) -> Vec<(SubgroupId, SubgroupId, u32, Certainty, Difference)> {
    let mut out = Vec::new();
    for &h in ctx.p1_subgroups() {
        for &n in ctx.p1_subgroups() {
            let l = ledger.ell(h, n);
            out.push((h, n, l.value, l.certainty, ledger.difference(h, n)));
        }
    }
    out
}

/// Whether `trials` random orderings of `relations` all reach the same
/// fixpoint as the given order.
pub fn shuffled_ledger_equivalence_for(ctx: &CurveContext, relations: &[Relation], trials: usize, seed: u64) -> bool {
    let Ok(reference) = build_ledger_from(ctx, relations.to_vec()) else { return false };
    let expected = (fingerprint(ctx, &reference), reference.components());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1)).all(|_| {
        let mut shuffled = relations.to_vec();
        shuffled.shuffle(&mut rng);
        match build_ledger_from(ctx, shuffled) {
            Ok(ledger) => (fingerprint(ctx, &ledger), ledger.components()) == expected,
            Err(_) => false,
        }
    })
}

pub fn shuffled_ledger_equivalence(ctx: &CurveContext, trials: usize) -> bool {
    shuffled_ledger_equivalence_for(ctx, &collect_relations(ctx), trials, 0x5eed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub order_of_h: usize,
    pub n: i64,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HistogramAudit {
    pub rows_checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl HistogramAudit {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Dimension `ℓ(D_H - D_N) - 1` from the degree gap, consulting the ledger
/// only in the two gaps where the class matters.
fn dimension(ledger: &PicardLedger, h: SubgroupId, n: SubgroupId, gap: i64) -> i64 {
    let canonical_gap = |m: i64| ledger.difference(h, n) == Difference::KnownMultiple(m);
    if gap < 0 || gap == 1 {
        -1
    } else if gap == 0 {
        if canonical_gap(0) {
            0
        } else {
            -1
        }
    } else if gap == 2 {
        if canonical_gap(1) {
            1
        } else {
            0
        }
    } else {
        // Riemann–Roch on genus 2 with the degree above 2g - 2.
        gap - 2
    }
}

/// Recomputes each row from scratch and compares with `reports`.
pub fn histogram_consistency_against(
    ctx: &CurveContext,
    ledger: &PicardLedger,
    reports: &[DecompositionReport],
) -> HistogramAudit {
    let mut audit = HistogramAudit::default();
    let p1: Vec<SubgroupId> = ctx.p1_subgroups().to_vec();
    for report in reports {
        audit.rows_checked += 1;
        let h = report.h.subgroup;
        let mut expected = Histogram::new();
        for &n in &p1 {
            let gap = ctx.subgroup(h).order() as i64 - ctx.subgroup(n).order() as i64;
            *expected.entry(dimension(ledger, h, n, gap)).or_insert(0) += 1;
        }
        let keys: BTreeSet<i64> = expected.keys().chain(report.histogram.keys()).copied().collect();
        for n in keys {
            let (e, f) = (expected.get(&n).copied().unwrap_or(0), report.histogram.get(&n).copied().unwrap_or(0));
            if e != f {
                audit.disagreements.push(Disagreement { order_of_h: report.h.order, n, expected: e, found: f });
            }
        }
    }
    audit
}

pub fn histogram_consistency(ctx: &CurveContext, ledger: &PicardLedger) -> Result<HistogramAudit, DecompError> {
    Ok(histogram_consistency_against(ctx, ledger, &decompose_all_orders(ctx, ledger)?))
}

/// `order -> count` over a list of member sets.
pub fn order_census(sets: &[ElementSet]) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for s in sets {
        *census.entry(s.len()).or_insert(0) += 1;
    }
    census
}
