//! Decomposition of the Galois-subspace locus `G_{X,D_H}` into projective
//! components, one per rational-quotient subgroup `N`, of dimension
//! `ℓ(D_H - D_N) - 1` (with `-1` meaning the component is empty).

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::genus2::{AutGroupId, CurveContext, SubgroupId};
use crate::picard::{Certainty, Certificate, Difference, LedgerError, PicardLedger};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("NotVeryAmple: D_H has degree {order} < 5 for H = {h}")]
    NotVeryAmple { h: SubgroupId, order: usize },
    #[error("NoSuchSubgroup: {0}")]
    NoSuchSubgroup(String),
    #[error("NonUniform: subgroups of order {order} give different histograms")]
    NonUniform { order: usize },
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HDescriptor {
    pub subgroup: SubgroupId,
    pub order: usize,
    pub label: String,
    /// Position among the subgroups of the same order.
    pub index_in_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub n: SubgroupId,
    pub n_label: String,
    pub n_order: usize,
    pub dimension: i64,
    pub certainty: Certainty,
    pub certificate: Certificate,
}

pub type Histogram = BTreeMap<i64, usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub group: AutGroupId,
    pub h: HDescriptor,
    pub components: Vec<ComponentRecord>,
    /// `n -> 𝒟ₙ`, the number of `n`-dimensional components.
    pub histogram: Histogram,
}

impl DecompositionReport {
    pub fn component(&self, n: SubgroupId) -> Option<&ComponentRecord> {
        self.components.iter().find(|c| c.n == n)
    }

    pub fn count(&self, n: i64) -> usize {
        self.histogram.get(&n).copied().unwrap_or(0)
    }
}

pub fn histogram_of(components: &[ComponentRecord]) -> Histogram {
    let mut histogram = Histogram::new();
    for c in components {
        *histogram.entry(c.dimension).or_insert(0) += 1;
    }
    histogram
}

pub fn decompose(ctx: &CurveContext, ledger: &PicardLedger, h: SubgroupId) -> Result<DecompositionReport, DecompError> {
    if h.0 >= ctx.subgroups().len() || !ctx.quotient_is_p1(h) {
        return Err(DecompError::NoSuchSubgroup(format!("{h} is not a rational-quotient subgroup of {}", ctx.id())));
    }
    if !ctx.very_ample(h) {
        return Err(DecompError::NotVeryAmple { h, order: ctx.order_of(h) });
    }
    let components: Vec<ComponentRecord> = ctx
        .p1_subgroups()
        .iter()
        .map(|&n| {
            let l = ledger.ell(h, n);
            ComponentRecord {
                n,
                n_label: ctx.label(n).to_string(),
                n_order: ctx.order_of(n),
                dimension: i64::from(l.value) - 1,
                certainty: l.certainty,
                certificate: l.certificate,
            }
        })
        .collect();
    Ok(DecompositionReport {
        group: ctx.id(),
        h: HDescriptor {
            subgroup: h,
            order: ctx.order_of(h),
            label: ctx.label(h).to_string(),
            index_in_order: ctx.index_in_order(h),
        },
        histogram: histogram_of(&components),
        components,
    })
}

/// Every subgroup of one order, and whether they share a histogram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformityAudit {
    pub order: usize,
    pub members: Vec<SubgroupId>,
    pub histograms: Vec<Histogram>,
}

impl UniformityAudit {
    pub fn uniform(&self) -> bool {
        self.histograms.windows(2).all(|w| w[0] == w[1])
    }
}

/// Decomposes every `H` of the given order. Returns the report for the first
/// one; the audit shows the others agree.
pub fn decompose_by_order(
    ctx: &CurveContext,
    ledger: &PicardLedger,
    order: usize,
) -> Result<(DecompositionReport, UniformityAudit), DecompError> {
    let members: Vec<SubgroupId> = ctx.p1_of_order(order).collect();
    let Some(&first) = members.first() else {
        return Err(DecompError::NoSuchSubgroup(format!(
            "{} has no rational-quotient subgroup of order {order}",
            ctx.id()
        )));
    };
    let mut reports = members.iter().map(|&h| decompose(ctx, ledger, h)).collect::<Result<Vec<_>, _>>()?;
    let audit = UniformityAudit { order, histograms: reports.iter().map(|r| r.histogram.clone()).collect(), members };
    if !audit.uniform() {
        return Err(DecompError::NonUniform { order });
    }
    debug_assert_eq!(reports[0].h.subgroup, first);
    Ok((reports.swap_remove(0), audit))
}

/// One report per very ample order, ascending. Empty when no rational
/// quotient has degree at least 5.
pub fn decompose_all_orders(
    ctx: &CurveContext,
    ledger: &PicardLedger,
) -> Result<Vec<DecompositionReport>, DecompError> {
    ctx.very_ample_orders().into_iter().map(|order| decompose_by_order(ctx, ledger, order).map(|(r, _)| r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Failure {
    pub h: SubgroupId,
    pub n: SubgroupId,
    pub expected: i64,
    pub found: Difference,
}

/// Any two very ample `D_H`, `D_N` differ by `(|H| - |N|) / 2` times `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Audit {
    pub group: AutGroupId,
    /// Reason the check does not apply, if it does not.
    pub skipped: Option<String>,
    pub pairs_checked: usize,
    pub failures: Vec<Theorem1Failure>,
}

impl Theorem1Audit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_theorem1(ctx: &CurveContext, ledger: &PicardLedger) -> Theorem1Audit {
    let mut audit = Theorem1Audit { group: ctx.id(), skipped: None, pairs_checked: 0, failures: Vec::new() };
    if ctx.id() == AutGroupId::C10 {
        audit.skipped =
            Some("C10 is excluded: D_C10 and D_C5 are not linearly equivalent to multiples of K".to_string());
        return audit;
    }
    let ample: Vec<SubgroupId> = ctx.p1_subgroups().iter().copied().filter(|&h| ctx.very_ample(h)).collect();
    for &h in &ample {
        for &n in &ample {
            audit.pairs_checked += 1;
            let gap = ctx.degree(h) - ctx.degree(n);
            let found = ledger.difference(h, n);
            if gap % 2 != 0 || found != Difference::KnownMultiple(gap / 2) {
                audit.failures.push(Theorem1Failure { h, n, expected: gap / 2, found });
            }
        }
    }
    audit
}

/// The zero-dimensional components of `G_{X,D_H}` are exactly the `N` with
/// `|N| = |H|`, each proved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Audit {
    pub group: AutGroupId,
    pub h: SubgroupId,
    pub same_order: usize,
    pub zero_dimensional: usize,
    /// Same order as `H` but not a proved point component.
    pub missing: Vec<SubgroupId>,
    /// A point component of a different order.
    pub extra: Vec<SubgroupId>,
}

impl Theorem2Audit {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.same_order == self.zero_dimensional
    }
}

pub fn verify_theorem2(ctx: &CurveContext, ledger: &PicardLedger, h: SubgroupId) -> Result<Theorem2Audit, DecompError> {
    let report = decompose(ctx, ledger, h)?;
    let order = ctx.order_of(h);
    let mut audit = Theorem2Audit {
        group: ctx.id(),
        h,
        same_order: ctx.p1_of_order(order).count(),
        zero_dimensional: report.count(0),
        missing: Vec::new(),
        extra: Vec::new(),
    };
    for c in &report.components {
        let point = c.dimension == 0 && c.certainty == Certainty::Proved;
        if c.n_order == order && !point {
            audit.missing.push(c.n);
        } else if c.n_order != order && c.dimension == 0 {
            audit.extra.push(c.n);
        }
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::build_ledger;

    fn setup(id: AutGroupId) -> (CurveContext, PicardLedger) {
        let ctx = CurveContext::from_catalog(id).unwrap();
        let ledger = build_ledger(&ctx).unwrap();
        (ctx, ledger)
    }

    fn hist(pairs: &[(i64, usize)]) -> Histogram {
        pairs.iter().copied().collect()
    }

    fn row(id: AutGroupId, order: usize) -> Histogram {
        let (ctx, ledger) = setup(id);
        let (report, audit) = decompose_by_order(&ctx, &ledger, order).unwrap();
        assert!(audit.uniform());
        report.histogram
    }

    #[test]
    fn d4_whole_group() {
        assert_eq!(row(AutGroupId::D4_8, 8), hist(&[(0, 1), (2, 3), (4, 1)]));
    }

    #[test]
    fn d6_rows() {
        assert_eq!(row(AutGroupId::D6_12, 6), hist(&[(-1, 1), (0, 3), (1, 4), (2, 1)]));
        assert_eq!(row(AutGroupId::D6_12, 12), hist(&[(0, 1), (4, 3), (6, 3), (7, 1), (8, 1)]));
    }

    #[test]
    fn c10_rows_including_the_degree_forced_cell() {
        assert_eq!(row(AutGroupId::C10, 5), hist(&[(-1, 1), (0, 1), (1, 1)]));
        // (C10, C5) has degree gap 5, so ℓ = 4 and the component is 3-dimensional.
        assert_eq!(row(AutGroupId::C10, 10), hist(&[(0, 1), (3, 1), (6, 1)]));
    }

    #[test]
    fn gl2_order_six_and_eight() {
        let (ctx, ledger) = setup(AutGroupId::GL2F3_48);
        let (report, audit) = decompose_by_order(&ctx, &ledger, 6).unwrap();
        assert_eq!(audit.members.len(), 12);
        assert_eq!(report.histogram, hist(&[(-1, 16), (0, 12), (1, 13), (2, 1)]));
        assert_eq!(row(AutGroupId::GL2F3_48, 8), hist(&[(-1, 9), (0, 7), (1, 12), (2, 9), (3, 4), (4, 1)]));
    }

    #[test]
    fn c3_semidirect_d4_rows() {
        assert_eq!(row(AutGroupId::C3sdD4_24, 6), hist(&[(-1, 7), (0, 5), (1, 8), (2, 1)]));
        assert_eq!(row(AutGroupId::C3sdD4_24, 8), hist(&[(-1, 4), (0, 3), (1, 5), (2, 7), (3, 1), (4, 1)]));
        // The five order-6 classes sit at degree gap 6, hence dimension 4.
        assert_eq!(row(AutGroupId::C3sdD4_24, 12), hist(&[(-1, 1), (0, 3), (2, 3), (4, 5), (6, 7), (7, 1), (8, 1)]));
        assert_eq!(
            row(AutGroupId::C3sdD4_24, 24),
            hist(&[(0, 1), (10, 3), (14, 3), (16, 5), (18, 7), (19, 1), (20, 1)])
        );
    }

    #[test]
    fn small_subgroups_are_rejected() {
        let (ctx, ledger) = setup(AutGroupId::D4_8);
        let four = ctx.p1_of_order(4).next().unwrap();
        assert_eq!(decompose(&ctx, &ledger, four), Err(DecompError::NotVeryAmple { h: four, order: 4 }));
        let trivial = SubgroupId(0);
        assert!(matches!(decompose(&ctx, &ledger, trivial), Err(DecompError::NoSuchSubgroup(_))));
    }

    #[test]
    fn empty_decompositions() {
        for id in [AutGroupId::C2, AutGroupId::C2xC2] {
            let (ctx, ledger) = setup(id);
            assert!(decompose_all_orders(&ctx, &ledger).unwrap().is_empty());
        }
    }

    #[test]
    fn row_sums_and_degree_rule() {
        let expected = [
            (AutGroupId::D4_8, 5),
            (AutGroupId::C10, 3),
            (AutGroupId::D6_12, 9),
            (AutGroupId::C3sdD4_24, 21),
            (AutGroupId::GL2F3_48, 42),
        ];
        for (id, total) in expected {
            let (ctx, ledger) = setup(id);
            for report in decompose_all_orders(&ctx, &ledger).unwrap() {
                assert_eq!(report.histogram.values().sum::<usize>(), total, "{id}");
                assert!(report.count(0) >= 1);
                for c in &report.components {
                    let d = report.h.order as i64 - c.n_order as i64;
                    if d > 2 {
                        assert_eq!(c.dimension, d - 2);
                    }
                    assert_eq!(c.certainty, Certainty::Proved, "{id} {:?} {}", report.h, c.n);
                }
            }
        }
    }

    #[test]
    fn theorem_one() {
        for id in AutGroupId::ALL {
            let (ctx, ledger) = setup(id);
            let audit = verify_theorem1(&ctx, &ledger);
            assert!(audit.passed(), "{id}: {:?}", audit.failures);
            assert_eq!(audit.skipped.is_some(), id == AutGroupId::C10);
        }
    }

    #[test]
    fn theorem_two() {
        let (ctx, ledger) = setup(AutGroupId::GL2F3_48);
        let h = ctx.p1_of_order(6).next().unwrap();
        let audit = verify_theorem2(&ctx, &ledger, h).unwrap();
        assert!(audit.passed());
        assert_eq!(audit.zero_dimensional, 12);
    }
}
