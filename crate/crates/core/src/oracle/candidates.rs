//! The candidate-structure table shared by the oracle and the SAT encoder.

use std::collections::HashSet;
use std::sync::Arc;

use crate::domain::CellIndex;
use crate::error::{Error, Result};
use crate::oracle::spec::{SideKind, StructureSpec};
use crate::subspace::{
    finite_products, finite_sums, gowers_product_values, gowers_sum_values, GeneratorSet,
};
use crate::tuple::KTuple;

/// Default limit on the number of generator multisets a table may examine.
pub const DEFAULT_CANDIDATE_CAP: usize = 20_000_000;

/// One generator choice and the box cells it generates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Cell indices of the generators, nondecreasing.
    pub generators: Vec<usize>,
    /// Cell indices of the generated values, sorted and deduplicated.
    pub cells: Vec<usize>,
}

impl Candidate {
    /// Largest cell index; the structure is fully colored once this cell is.
    pub fn trigger(&self) -> usize {
        *self
            .cells
            .last()
            .expect("candidates generate at least one cell")
    }
}

#[derive(Clone, Debug)]
pub struct CandidateSide {
    pub kind: SideKind,
    pub m: usize,
    /// In lexicographic order of generator tuples; later candidates with an
    /// already seen cell set are dropped.
    pub candidates: Vec<Candidate>,
}

#[derive(Clone, Debug)]
pub struct CandidateTable {
    index: Arc<CellIndex>,
    spec: StructureSpec,
    sides: Vec<CandidateSide>,
}

/// Values generated by `gens` on one side.
pub fn side_values(kind: SideKind, gens: &[KTuple]) -> Result<Vec<KTuple>> {
    match kind {
        SideKind::GowersSum => gowers_sum_values(&GeneratorSet::new(gens.to_vec(), false)?),
        SideKind::GowersProduct => gowers_product_values(&GeneratorSet::new(gens.to_vec(), false)?),
        SideKind::FiniteSums => finite_sums(gens),
        SideKind::FiniteProducts => finite_products(gens),
    }
}

/// `C(n + m - 1, m)` or `C(n, m)`, saturating.
fn multiset_count(n: usize, m: usize, distinct: bool) -> usize {
    let top = if distinct { n } else { n + m - 1 };
    if m > top {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..m as u128 {
        acc = acc * (top as u128 - i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

impl CandidateTable {
    pub fn build(index: Arc<CellIndex>, spec: &StructureSpec, cap: usize) -> Result<Self> {
        spec.validate()?;
        let mut sides = Vec::new();
        for (kind, m) in spec.sides() {
            let eligible: Vec<usize> = (0..index.len())
                .filter(|&i| kind.admits(index.cell_of(i), spec.sum_generators_positive))
                .collect();
            let count = multiset_count(eligible.len(), m, spec.distinct_values);
            if count > cap {
                return Err(Error::CandidateExplosion { count, cap });
            }
            let candidates = side_candidates(&index, spec, kind, m, &eligible)?;
            sides.push(CandidateSide {
                kind,
                m,
                candidates,
            });
        }
        Ok(CandidateTable {
            index,
            spec: *spec,
            sides,
        })
    }

    pub fn index(&self) -> &Arc<CellIndex> {
        &self.index
    }

    pub fn spec(&self) -> &StructureSpec {
        &self.spec
    }

    pub fn sides(&self) -> &[CandidateSide] {
        &self.sides
    }

    /// Number of monochromatic-target combinations (product of side sizes).
    pub fn combination_count(&self) -> u128 {
        self.sides
            .iter()
            .map(|s| s.candidates.len() as u128)
            .product()
    }

    /// True when some side has no candidate at all, so no coloring can
    /// contain the structure.
    pub fn is_vacuous(&self) -> bool {
        self.sides.iter().any(|s| s.candidates.is_empty())
    }
}

fn side_candidates(
    index: &CellIndex,
    spec: &StructureSpec,
    kind: SideKind,
    m: usize,
    eligible: &[usize],
) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    if eligible.is_empty() || (spec.distinct_values && eligible.len() < m) {
        return Ok(out);
    }
    // positions into `eligible`, nondecreasing (strictly increasing if distinct)
    let step = usize::from(spec.distinct_values);
    let mut pos: Vec<usize> = (0..m).map(|i| i * step).collect();
    loop {
        let gens: Vec<KTuple> = pos
            .iter()
            .map(|&p| index.cell_of(eligible[p]).clone())
            .collect();
        if let Some(cells) = generated_cells(index, kind, &gens, spec.closure)? {
            if seen.insert(cells.clone()) {
                out.push(Candidate {
                    generators: pos.iter().map(|&p| eligible[p]).collect(),
                    cells,
                });
            }
        }
        // advance to the next multiset in lexicographic order
        let n = eligible.len();
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            let limit = if spec.distinct_values {
                n - (m - i)
            } else {
                n - 1
            };
            if pos[i] < limit {
                pos[i] += 1;
                for j in i + 1..m {
                    pos[j] = pos[j - 1] + step;
                }
                break;
            }
        }
    }
}

/// Cell indices of the values generated by `gens`, or `None` when closure is
/// required and some value falls outside the box.
fn generated_cells(
    index: &CellIndex,
    kind: SideKind,
    gens: &[KTuple],
    closure: bool,
) -> Result<Option<Vec<usize>>> {
    let values = match side_values(kind, gens) {
        Ok(v) => v,
        // a value beyond u64 counts as outside the box
        Err(Error::Overflow) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut cells = Vec::with_capacity(values.len());
    for v in &values {
        match index.index_of(v) {
            Some(i) => cells.push(i),
            None if closure => return Ok(None),
            None => {}
        }
    }
    cells.sort_unstable();
    cells.dedup();
    Ok(Some(cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::SearchBox;
    use crate::oracle::spec::StructureKind;
    use crate::tuple::SpaceTag;

    fn table(n: u64, spec: StructureSpec) -> CandidateTable {
        let idx = Arc::new(CellIndex::new(SearchBox::new(1, n, SpaceTag::Xk)).unwrap());
        CandidateTable::build(idx, &spec, DEFAULT_CANDIDATE_CAP).unwrap()
    }

    fn cell_sets(t: &CandidateTable, side: usize) -> Vec<Vec<u64>> {
        t.sides()[side]
            .candidates
            .iter()
            .map(|c| {
                c.cells
                    .iter()
                    .map(|&i| t.index().cell_of(i).first())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn sum_candidates_with_repeats() {
        let t = table(4, StructureSpec::simple(StructureKind::GowersSum, 2));
        assert_eq!(
            cell_sets(&t, 0),
            vec![vec![1, 2], vec![1, 2, 3], vec![1, 3, 4], vec![2, 4]]
        );
    }

    #[test]
    fn sum_candidates_distinct() {
        let t = table(
            5,
            StructureSpec::simple(StructureKind::GowersSum, 2).with_distinct(true),
        );
        assert_eq!(
            cell_sets(&t, 0),
            vec![vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![2, 3, 5]]
        );
    }

    #[test]
    fn open_policy_keeps_truncated_structures() {
        let t = table(
            3,
            StructureSpec::simple(StructureKind::GowersSum, 2).with_closure(false),
        );
        assert_eq!(
            cell_sets(&t, 0),
            vec![
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 3],
                vec![2],
                vec![2, 3],
                vec![3]
            ]
        );
    }

    #[test]
    fn sum_fp_sides() {
        let t = table(6, StructureSpec::pair(StructureKind::SumFpPair, 2, 2));
        assert_eq!(cell_sets(&t, 1), vec![vec![2, 4], vec![2, 3, 6]]);
        let t = table(
            6,
            StructureSpec::pair(StructureKind::SumFpPair, 2, 2).with_distinct(true),
        );
        assert_eq!(cell_sets(&t, 1), vec![vec![2, 3, 6]]);
    }

    #[test]
    fn explosion_is_refused() {
        let idx = Arc::new(CellIndex::new(SearchBox::new(1, 50, SpaceTag::Xk)).unwrap());
        let err = CandidateTable::build(
            idx,
            &StructureSpec::simple(StructureKind::GowersSum, 3),
            1000,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::CandidateExplosion {
                count: 22100,
                cap: 1000
            }
        ));
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(4, 2, false), 10);
        assert_eq!(multiset_count(4, 2, true), 6);
        assert_eq!(multiset_count(1, 2, true), 0);
    }
}
