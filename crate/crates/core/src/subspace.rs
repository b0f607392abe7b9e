//! Generated structures: Gowers sum/product subspaces and FS/FP sets.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuple::{
    componentwise_add, componentwise_mul, mult_shift_pow, tetris_shift_pow, KTuple, SpaceTag,
};

/// An indexed family of generators `{n_i : i ∈ I}` of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    dim: usize,
    members: Vec<KTuple>,
    distinct_values: bool,
}

impl GeneratorSet {
    pub fn new(members: Vec<KTuple>, distinct_values: bool) -> Result<GeneratorSet> {
        let dim = members.first().ok_or(Error::NoGenerators)?.dim();
        for g in &members {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
        }
        if distinct_values {
            let mut seen = members.clone();
            seen.sort();
            if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedGenerator(w[0].clone()));
            }
        }
        Ok(GeneratorSet {
            dim,
            members,
            distinct_values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[KTuple] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn distinct_values(&self) -> bool {
        self.distinct_values
    }

    fn require_all(&self, space: SpaceTag) -> Result<()> {
        self.members.iter().try_for_each(|g| space.require(g))
    }
}

/// Which block `B_j` each generator index belongs to; `0` means no block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartAssignment(Vec<usize>);

impl PartAssignment {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Generator indices in block `B_j` (1-based `j`).
    pub fn block(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(move |(_, &p)| p == j)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for PartAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PartAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match p {
                0 => f.write_str("-")?,
                j => write!(f, "B{j}")?,
            }
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitMode {
    /// One entry per assignment, collisions kept.
    Expression,
    /// One entry per distinct value, sorted by value, carrying the first
    /// assignment that produced it.
    Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceElement {
    pub assignment: PartAssignment,
    pub value: KTuple,
}

/// Number of legal assignments for `m` generators in dimension `k`:
/// `(k+1)^m − k^m`.
pub fn expression_count(k: usize, m: usize) -> u128 {
    let m = m as u32;
    (k as u128 + 1).pow(m) - (k as u128).pow(m)
}

/// All elements `Σ_j Σ_{i∈B_j} T^{j−1} n_i` over disjoint blocks with `B_1`
/// nonempty. Generators must lie in X_k.
pub fn gowers_sum_subspace(g: &GeneratorSet, emit: EmitMode) -> Result<Vec<SubspaceElement>> {
    g.require_all(SpaceTag::Xk)?;
    let shifted = shift_table(g, |t, s| Ok(tetris_shift_pow(t, s)))?;
    enumerate(g, &shifted, KTuple::zeros(g.dim()), componentwise_add, emit)
}

/// All elements `Π_j Π_{i∈B_j} S^{j−1} m_i` over disjoint blocks with `B_1`
/// nonempty. Generators must lie in Y_k.
pub fn gowers_product_subspace(g: &GeneratorSet, emit: EmitMode) -> Result<Vec<SubspaceElement>> {
    g.require_all(SpaceTag::Yk)?;
    let shifted = shift_table(g, mult_shift_pow)?;
    enumerate(g, &shifted, KTuple::ones(g.dim()), componentwise_mul, emit)
}

/// `shifted[i][j] = shift^j(n_i)` for `j < k`.
fn shift_table(
    g: &GeneratorSet,
    shift: impl Fn(&KTuple, usize) -> Result<KTuple>,
) -> Result<Vec<Vec<KTuple>>> {
    g.members
        .iter()
        .map(|n| (0..g.dim).map(|j| shift(n, j)).collect())
        .collect()
}

fn enumerate(
    g: &GeneratorSet,
    shifted: &[Vec<KTuple>],
    identity: KTuple,
    op: fn(&KTuple, &KTuple) -> Result<KTuple>,
    emit: EmitMode,
) -> Result<Vec<SubspaceElement>> {
    let k = g.dim;
    let m = g.len();
    let mut out = Vec::new();
    let mut by_value: BTreeMap<KTuple, PartAssignment> = BTreeMap::new();
    // Odometer over {0..=k}^m, index 0 most significant.
    let mut parts = vec![0usize; m];
    loop {
        if parts.contains(&1) {
            let mut acc = identity.clone();
            for (i, &p) in parts.iter().enumerate() {
                if p > 0 {
                    acc = op(&acc, &shifted[i][p - 1])?;
                }
            }
            let assignment = PartAssignment(parts.clone());
            match emit {
                EmitMode::Expression => out.push(SubspaceElement {
                    assignment,
                    value: acc,
                }),
                EmitMode::Value => {
                    by_value.entry(acc).or_insert(assignment);
                }
            }
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                if emit == EmitMode::Value {
                    out = by_value
                        .into_iter()
                        .map(|(value, assignment)| SubspaceElement { assignment, value })
                        .collect();
                }
                return Ok(out);
            }
            pos -= 1;
            if parts[pos] < k {
                parts[pos] += 1;
                break;
            }
            parts[pos] = 0;
        }
    }
}

/// Values of the Gowers sum subspace, sorted and deduplicated.
pub fn gowers_sum_values(g: &GeneratorSet) -> Result<Vec<KTuple>> {
    Ok(gowers_sum_subspace(g, EmitMode::Value)?
        .into_iter()
        .map(|e| e.value)
        .collect())
}

/// Values of the Gowers product subspace, sorted and deduplicated.
pub fn gowers_product_values(g: &GeneratorSet) -> Result<Vec<KTuple>> {
    Ok(gowers_product_subspace(g, EmitMode::Value)?
        .into_iter()
        .map(|e| e.value)
        .collect())
}

/// `FS(xs)`: coordinatewise sums over every nonempty index subset.
pub fn finite_sums(xs: &[KTuple]) -> Result<Vec<KTuple>> {
    subset_fold(xs, KTuple::zeros, componentwise_add)
}

/// `FP(ys)`: coordinatewise products over every nonempty index subset.
/// Every input must lie in N^k.
pub fn finite_products(ys: &[KTuple]) -> Result<Vec<KTuple>> {
    ys.iter().try_for_each(|y| SpaceTag::FullNk.require(y))?;
    subset_fold(ys, KTuple::ones, componentwise_mul)
}

fn subset_fold(
    xs: &[KTuple],
    identity: fn(usize) -> KTuple,
    op: fn(&KTuple, &KTuple) -> Result<KTuple>,
) -> Result<Vec<KTuple>> {
    let dim = xs.first().ok_or(Error::NoGenerators)?.dim();
    // results for every subset of the processed prefix, the empty one included
    let mut partial: Vec<KTuple> = vec![identity(dim)];
    for x in xs {
        if x.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: x.dim(),
            });
        }
        let grown = partial
            .iter()
            .map(|p| op(p, x))
            .collect::<Result<Vec<_>>>()?;
        partial.extend(grown);
    }
    let mut values: Vec<KTuple> = partial.into_iter().skip(1).collect();
    values.sort();
    values.dedup();
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[u64]) -> KTuple {
        KTuple::new(c.to_vec()).unwrap()
    }

    fn gens(list: &[&[u64]]) -> GeneratorSet {
        GeneratorSet::new(list.iter().map(|c| t(c)).collect(), false).unwrap()
    }

    #[test]
    fn sum_subspace_k1_is_fs() {
        assert_eq!(
            gowers_sum_values(&gens(&[&[3], &[5]])).unwrap(),
            vec![t(&[3]), t(&[5]), t(&[8])]
        );
    }

    #[test]
    fn sum_subspace_k2_example() {
        let g = gens(&[&[1, 0], &[2, 5]]);
        let exprs = gowers_sum_subspace(&g, EmitMode::Expression).unwrap();
        assert_eq!(exprs.len(), 5);
        assert_eq!(
            gowers_sum_values(&g).unwrap(),
            vec![t(&[1, 0]), t(&[1, 2]), t(&[2, 5]), t(&[2, 6]), t(&[3, 5])]
        );
        // (1,0) + T(2,5) = (1,2)
        let e = exprs
            .iter()
            .find(|e| e.assignment.parts() == [1, 2])
            .unwrap();
        assert_eq!(e.value, t(&[1, 2]));
    }

    #[test]
    fn expression_count_k2_m3() {
        let g = gens(&[&[1, 0], &[2, 5], &[1, 1]]);
        assert_eq!(
            gowers_sum_subspace(&g, EmitMode::Expression).unwrap().len(),
            19
        );
        assert_eq!(expression_count(2, 3), 19);
    }

    #[test]
    fn product_subspace_examples() {
        assert_eq!(
            gowers_product_values(&gens(&[&[2], &[3]])).unwrap(),
            vec![t(&[2]), t(&[3]), t(&[6])]
        );
        assert_eq!(
            gowers_product_values(&gens(&[&[2, 1], &[3, 2]])).unwrap(),
            vec![t(&[2, 1]), t(&[2, 3]), t(&[3, 2]), t(&[3, 4]), t(&[6, 2])]
        );
        assert_eq!(
            gowers_product_values(&gens(&[&[4, 7, 1]])).unwrap(),
            vec![t(&[4, 7, 1])]
        );
    }

    #[test]
    fn generators_must_be_in_their_space() {
        let err = gowers_sum_subspace(&gens(&[&[0, 1]]), EmitMode::Value).unwrap_err();
        assert!(matches!(
            err,
            Error::Membership {
                space: SpaceTag::Xk,
                ..
            }
        ));
        let err = gowers_product_subspace(&gens(&[&[1, 3]]), EmitMode::Value).unwrap_err();
        assert!(matches!(
            err,
            Error::Membership {
                space: SpaceTag::Yk,
                ..
            }
        ));
    }

    #[test]
    fn distinct_policy() {
        let err = GeneratorSet::new(vec![t(&[2]), t(&[2])], true).unwrap_err();
        assert!(matches!(err, Error::RepeatedGenerator(_)));
        let g = GeneratorSet::new(vec![t(&[2]), t(&[2])], false).unwrap();
        assert_eq!(gowers_sum_values(&g).unwrap(), vec![t(&[2]), t(&[4])]);
        assert_eq!(
            gowers_sum_subspace(&g, EmitMode::Expression).unwrap().len(),
            3
        );
    }

    #[test]
    fn finite_sums_and_products() {
        assert_eq!(
            finite_sums(&[t(&[3]), t(&[5]), t(&[7])]).unwrap(),
            [3, 5, 7, 8, 10, 12, 15].map(|v| t(&[v])).to_vec()
        );
        assert_eq!(finite_sums(&[t(&[4, 1])]).unwrap(), vec![t(&[4, 1])]);
        assert_eq!(
            finite_products(&[t(&[2]), t(&[3])]).unwrap(),
            vec![t(&[2]), t(&[3]), t(&[6])]
        );
        assert!(matches!(finite_sums(&[]), Err(Error::NoGenerators)));
        assert!(matches!(
            finite_products(&[t(&[0])]),
            Err(Error::Membership { .. })
        ));
    }

    #[test]
    fn value_mode_keeps_first_assignment() {
        let g = gens(&[&[1], &[1]]);
        let vals = gowers_sum_subspace(&g, EmitMode::Value).unwrap();
        assert_eq!(vals[0].value, t(&[1]));
        assert_eq!(vals[0].assignment.parts(), &[0, 1]);
    }
}
