use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::oracle::candidates::{side_values, Candidate, CandidateTable, DEFAULT_CANDIDATE_CAP};
use crate::oracle::spec::StructureSpec;
use crate::subspace::GeneratorSet;
use crate::tuple::KTuple;

/// A monochromatic target structure inside a coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub color: u32,
    pub sum_generators: Option<GeneratorSet>,
    pub prod_generators: Option<GeneratorSet>,
    /// Union of all generated values, sorted.
    pub generated_cells: Vec<KTuple>,
}

/// The first monochromatic structure in lexicographic order of generator
/// tuples (sum side first for pair kinds), or `None`.
pub fn find_witness(c: &Coloring, spec: &StructureSpec) -> Result<Option<Witness>> {
    let table = CandidateTable::build(c.cell_index().clone(), spec, DEFAULT_CANDIDATE_CAP)?;
    Ok(find_witness_in(c, &table))
}

fn mono_color(c: &Coloring, cand: &Candidate) -> Option<u32> {
    let first = c.color_at(cand.cells[0]);
    cand.cells
        .iter()
        .all(|&i| c.color_at(i) == first)
        .then_some(first)
}

/// [`find_witness`] against a prebuilt table for the coloring's box.
pub fn find_witness_in(c: &Coloring, table: &CandidateTable) -> Option<Witness> {
    let sides = table.sides();
    let mut chosen: Vec<&Candidate> = Vec::with_capacity(sides.len());
    // First side drives the order; every later side must agree on the color.
    'lead: for lead in &sides[0].candidates {
        let Some(color) = mono_color(c, lead) else {
            continue;
        };
        chosen.clear();
        chosen.push(lead);
        for side in &sides[1..] {
            match side
                .candidates
                .iter()
                .find(|cand| mono_color(c, cand) == Some(color))
            {
                Some(cand) => chosen.push(cand),
                None => continue 'lead,
            }
        }
        return Some(build_witness(c, table, color, &chosen));
    }
    None
}

fn build_witness(
    c: &Coloring,
    table: &CandidateTable,
    color: u32,
    chosen: &[&Candidate],
) -> Witness {
    let index = c.cell_index();
    let spec = table.spec();
    let mut sum_generators = None;
    let mut prod_generators = None;
    let mut cells: Vec<usize> = Vec::new();
    for (side, cand) in table.sides().iter().zip(chosen) {
        let gens = GeneratorSet::new(
            cand.generators
                .iter()
                .map(|&i| index.cell_of(i).clone())
                .collect(),
            spec.distinct_values,
        )
        .expect("table generators respect the policy");
        if side.kind.is_product() {
            prod_generators = Some(gens);
        } else {
            sum_generators = Some(gens);
        }
        cells.extend(&cand.cells);
    }
    cells.sort_unstable();
    cells.dedup();
    Witness {
        color,
        sum_generators,
        prod_generators,
        generated_cells: cells.iter().map(|&i| index.cell_of(i).clone()).collect(),
    }
}

/// Re-checks a witness from scratch: generators against the spec's policies,
/// generated values recomputed from the generators, colors re-read.
pub fn validate_witness(c: &Coloring, spec: &StructureSpec, w: &Witness) -> Result<()> {
    let fail = |detail: String| Error::Validation {
        instance: format!("{} r={} {}", c.bounds(), c.num_colors(), spec.fingerprint()),
        detail,
    };
    spec.validate()?;
    let mut all: Vec<KTuple> = Vec::new();
    for (kind, m) in spec.sides() {
        let gens = if kind.is_product() {
            &w.prod_generators
        } else {
            &w.sum_generators
        };
        let gens = gens
            .as_ref()
            .ok_or_else(|| fail(format!("missing generators for the {kind:?} side")))?;
        if gens.len() != m {
            return Err(fail(format!(
                "expected {m} generators, found {}",
                gens.len()
            )));
        }
        if spec.distinct_values {
            GeneratorSet::new(gens.members().to_vec(), true).map_err(|e| fail(e.to_string()))?;
        }
        for g in gens.members() {
            if !kind.admits(g, spec.sum_generators_positive) {
                return Err(fail(format!("generator {g} is not admissible")));
            }
        }
        let values = side_values(kind, gens.members()).map_err(|e| fail(e.to_string()))?;
        for v in values {
            if c.bounds().contains(&v) {
                all.push(v);
            } else if spec.closure {
                return Err(fail(format!("generated value {v} lies outside the box")));
            }
        }
    }
    all.sort();
    all.dedup();
    if all != w.generated_cells {
        return Err(fail("generated cells do not match the generators".into()));
    }
    for v in &all {
        match c.color_of(v) {
            Some(col) if col == w.color => {}
            Some(col) => return Err(fail(format!("{v} has color {col}, not {}", w.color))),
            None => return Err(fail(format!("{v} is not a cell of the coloring"))),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::parse_coloring;
    use crate::oracle::spec::StructureKind;

    fn t(c: &[u64]) -> KTuple {
        KTuple::new(c.to_vec()).unwrap()
    }

    fn sum2() -> StructureSpec {
        StructureSpec::simple(StructureKind::GowersSum, 2)
    }

    #[test]
    fn constant_coloring_distinct() {
        let c = parse_coloring("k=1 N=3 r=1 space=Xk\n1 0\n2 0\n3 0\n").unwrap();
        let spec = sum2().with_distinct(true);
        let w = find_witness(&c, &spec).unwrap().unwrap();
        assert_eq!(
            w.sum_generators.as_ref().unwrap().members(),
            &[t(&[1]), t(&[2])]
        );
        assert_eq!(w.generated_cells, vec![t(&[1]), t(&[2]), t(&[3])]);
        validate_witness(&c, &spec, &w).unwrap();
    }

    #[test]
    fn constant_coloring_repeats() {
        let c = parse_coloring("k=1 N=3 r=1 space=Xk\n1 0\n2 0\n3 0\n").unwrap();
        let w = find_witness(&c, &sum2()).unwrap().unwrap();
        assert_eq!(
            w.sum_generators.as_ref().unwrap().members(),
            &[t(&[1]), t(&[1])]
        );
        assert_eq!(w.generated_cells, vec![t(&[1]), t(&[2])]);
    }

    #[test]
    fn sum_free_two_coloring_has_no_witness() {
        let c = parse_coloring("k=1 N=4 r=2 space=Xk\n1 0\n2 1\n3 1\n4 0\n").unwrap();
        assert_eq!(find_witness(&c, &sum2()).unwrap(), None);
    }

    #[test]
    fn first_witness_uses_repeat() {
        let c = parse_coloring("k=1 N=3 r=2 space=Xk\n1 0\n2 0\n3 1\n").unwrap();
        let w = find_witness(&c, &sum2()).unwrap().unwrap();
        assert_eq!(w.color, 0);
        assert_eq!(
            w.sum_generators.as_ref().unwrap().members(),
            &[t(&[1]), t(&[1])]
        );
        assert_eq!(w.generated_cells, vec![t(&[1]), t(&[2])]);
    }

    #[test]
    fn pair_witness_needs_one_color() {
        // FS{1,1} = {1,2} and FP{2,2} = {2,4} both need color 0.
        let c = parse_coloring("k=1 N=4 r=2 space=Xk\n1 0\n2 0\n3 1\n4 0\n").unwrap();
        let spec = StructureSpec::pair(StructureKind::SumFpPair, 2, 2);
        let w = find_witness(&c, &spec).unwrap().unwrap();
        assert_eq!(w.generated_cells, vec![t(&[1]), t(&[2]), t(&[4])]);
        validate_witness(&c, &spec, &w).unwrap();

        let c = parse_coloring("k=1 N=4 r=2 space=Xk\n1 0\n2 0\n3 1\n4 1\n").unwrap();
        assert_eq!(find_witness(&c, &spec).unwrap(), None);
    }

    #[test]
    fn tampered_witness_fails_validation() {
        let c = parse_coloring("k=1 N=3 r=2 space=Xk\n1 0\n2 0\n3 1\n").unwrap();
        let mut w = find_witness(&c, &sum2()).unwrap().unwrap();
        w.generated_cells.push(t(&[3]));
        assert!(validate_witness(&c, &sum2(), &w).is_err());
        let mut w = find_witness(&c, &sum2()).unwrap().unwrap();
        w.color = 1;
        assert!(validate_witness(&c, &sum2(), &w).is_err());
    }
}
