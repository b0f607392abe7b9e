use serde::Serialize;

use crate::coloring::Coloring;
use crate::domain::SearchBox;
use crate::error::Result;
use crate::oracle::avoid::{exists_avoiding_coloring_with, Avoidance, SearchOptions};
use crate::oracle::spec::StructureSpec;
use crate::tuple::SpaceTag;

/// Smallest `N` for which the box in `space` has at least one cell.
pub fn smallest_nonempty(space: SpaceTag) -> u64 {
    match space {
        SpaceTag::FullN0k => 0,
        SpaceTag::Xk | SpaceTag::FullNk => 1,
        SpaceTag::Yk => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointVerdict {
    Avoidable,
    Unavoidable,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThresholdOutcome {
    /// Least box size at which every coloring contains the target.
    Threshold(u64),
    /// The threshold is at least `lower`, and at most `upper` when known.
    Unresolved { lower: u64, upper: Option<u64> },
}

#[derive(Clone, Debug)]
pub struct ThresholdReport {
    pub outcome: ThresholdOutcome,
    /// Verdict for every box size examined, ascending.
    pub scanned: Vec<(u64, PointVerdict)>,
    /// Avoiding coloring at the largest avoidable size seen.
    pub last_avoiding: Option<Coloring>,
    pub nodes: u64,
}

/// Scans `N` upward from the smallest nonempty box to `n_max` and returns the
/// first `N` with no avoiding coloring. Larger boxes are not examined once an
/// unavoidable size is found. A budget failure at one size does not stop the
/// scan.
pub fn minimal_box_threshold(
    dim: usize,
    r: u32,
    spec: &StructureSpec,
    space: SpaceTag,
    n_max: u64,
    options: &SearchOptions,
) -> Result<ThresholdReport> {
    let start = smallest_nonempty(space);
    let mut scanned = Vec::new();
    let mut last_avoiding = None;
    let mut nodes = 0;
    // all sizes below `lower` are known avoidable
    let mut lower = start;
    let mut stuck = false;
    for n in start..=n_max {
        let rep = exists_avoiding_coloring_with(&SearchBox::new(dim, n, space), r, spec, options)?;
        nodes += rep.nodes;
        match rep.outcome {
            Avoidance::Avoiding(c) => {
                scanned.push((n, PointVerdict::Avoidable));
                last_avoiding = Some(c);
                lower = n + 1;
            }
            Avoidance::Unavoidable => {
                scanned.push((n, PointVerdict::Unavoidable));
                let outcome = if stuck {
                    ThresholdOutcome::Unresolved {
                        lower,
                        upper: Some(n),
                    }
                } else {
                    ThresholdOutcome::Threshold(n)
                };
                return Ok(ThresholdReport {
                    outcome,
                    scanned,
                    last_avoiding,
                    nodes,
                });
            }
            Avoidance::BudgetExceeded { .. } => {
                scanned.push((n, PointVerdict::BudgetExceeded));
                stuck = true;
            }
        }
    }
    let outcome = ThresholdOutcome::Unresolved { lower, upper: None };
    Ok(ThresholdReport {
        outcome,
        scanned,
        last_avoiding,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::avoid::Budget;
    use crate::oracle::spec::StructureKind;

    fn sum2() -> StructureSpec {
        StructureSpec::simple(StructureKind::GowersSum, 2)
    }

    fn threshold(r: u32, spec: StructureSpec, n_max: u64) -> ThresholdOutcome {
        minimal_box_threshold(1, r, &spec, SpaceTag::Xk, n_max, &SearchOptions::default())
            .unwrap()
            .outcome
    }

    #[test]
    fn two_color_sum_thresholds() {
        assert_eq!(threshold(2, sum2(), 12), ThresholdOutcome::Threshold(5));
        assert_eq!(
            threshold(2, sum2().with_distinct(true), 12),
            ThresholdOutcome::Threshold(9)
        );
    }

    #[test]
    fn single_color_thresholds() {
        assert_eq!(threshold(1, sum2(), 5), ThresholdOutcome::Threshold(2));
        assert_eq!(
            threshold(1, sum2().with_distinct(true), 5),
            ThresholdOutcome::Threshold(3)
        );
    }

    #[test]
    fn unresolved_when_scan_ends_early() {
        assert_eq!(
            threshold(2, sum2(), 3),
            ThresholdOutcome::Unresolved {
                lower: 4,
                upper: None
            }
        );
    }

    #[test]
    fn budget_gives_bounds() {
        let opts = SearchOptions::with_budget(Budget::nodes(1));
        let rep = minimal_box_threshold(1, 3, &sum2(), SpaceTag::Xk, 6, &opts).unwrap();
        match rep.outcome {
            ThresholdOutcome::Unresolved { lower, .. } => assert!(lower >= 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn product_world_starts_at_two() {
        let rep = minimal_box_threshold(
            1,
            1,
            &StructureSpec::simple(StructureKind::GowersProduct, 2),
            SpaceTag::Yk,
            10,
            &SearchOptions::default(),
        )
        .unwrap();
        // {2,2} generates {2,4}
        assert_eq!(rep.outcome, ThresholdOutcome::Threshold(4));
        assert_eq!(rep.scanned[0].0, 2);
    }
}
