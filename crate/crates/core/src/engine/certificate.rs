//! Certificates and their independent re-validation.
//!
//! Validation re-enumerates generator sets straight from the box cells and
//! evaluates them with the structure enumerators. It does not use the
//! oracle's candidate table.

use serde::{Deserialize, Serialize};

use crate::coloring::{parse_coloring, Coloring};
use crate::error::{Error, Result};
use crate::oracle::{smallest_nonempty, StructureKind, StructureSpec};
use crate::subspace::{
    finite_products, finite_sums, gowers_product_values, gowers_sum_values, GeneratorSet,
};
use crate::tuple::{KTuple, SpaceTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub k: usize,
    pub r: u32,
    pub space: SpaceTag,
    pub spec: StructureSpec,
    /// Box size for single-instance certificates.
    pub n: Option<u64>,
    /// Largest box size a threshold scan examined.
    pub n_max: Option<u64>,
}

impl Fingerprint {
    pub fn describe(&self) -> String {
        let mut s = format!(
            "k={} r={} space={} {}",
            self.k,
            self.r,
            self.space,
            self.spec.fingerprint()
        );
        if let Some(n) = self.n {
            s.push_str(&format!(" N={n}"));
        }
        if let Some(n) = self.n_max {
            s.push_str(&format!(" N_max={n}"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Verdict {
    Threshold { value: u64 },
    Unresolved { lower: u64, upper: Option<u64> },
    Avoiding,
    Unavoidable,
}

/// An avoiding coloring in the text file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub n: u64,
    pub coloring: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub fingerprint: Fingerprint,
    pub verdict: Verdict,
    pub evidence: Option<Evidence>,
    pub engines: Vec<String>,
    /// Whether both engines reached the same verdict; absent for one engine.
    pub agreement: Option<bool>,
}

impl Certificate {
    /// Checks the certificate's evidence from scratch.
    pub fn validate(&self) -> Result<()> {
        let fp = &self.fingerprint;
        let fail = |detail: String| Error::Validation {
            instance: fp.describe(),
            detail,
        };
        let start = smallest_nonempty(fp.space);
        // box size whose avoiding coloring the verdict relies on, if any
        let needs = match self.verdict {
            Verdict::Threshold { value } => (value > start).then(|| value - 1),
            Verdict::Unresolved { lower, upper } => {
                if upper.is_some_and(|u| u < lower) {
                    return Err(fail(format!("bounds {lower}..{upper:?} are empty")));
                }
                (lower > start).then(|| lower - 1)
            }
            Verdict::Avoiding => {
                Some(fp.n.ok_or_else(|| fail("avoiding verdict without a box size".into()))?)
            }
            Verdict::Unavoidable => None,
        };
        if self.agreement == Some(false) {
            return Err(fail("engines disagree".into()));
        }
        let Some(n) = needs else {
            return Ok(());
        };
        let ev = self
            .evidence
            .as_ref()
            .ok_or_else(|| fail(format!("missing avoiding coloring for N={n}")))?;
        if ev.n != n {
            return Err(fail(format!("evidence is for N={}, expected N={n}", ev.n)));
        }
        let c = parse_coloring(&ev.coloring).map_err(|e| fail(e.to_string()))?;
        let b = c.bounds();
        if b.dim != fp.k || b.max_coord != n || b.space != fp.space || c.num_colors() != fp.r {
            return Err(fail(format!(
                "evidence coloring has header {b} r={}",
                c.num_colors()
            )));
        }
        if let Some(gens) = monochromatic_structure(&c, &fp.spec)? {
            return Err(fail(format!(
                "evidence coloring contains a monochromatic target generated by {gens:?}"
            )));
        }
        Ok(())
    }
}

fn admits(kind: StructureKind, product_side: bool, positive: bool, g: &KTuple) -> bool {
    match (kind, product_side) {
        (StructureKind::GowersProduct, _) | (StructureKind::SumProductPair, true) => {
            SpaceTag::Yk.contains(g)
        }
        (StructureKind::FiniteProducts, _) | (StructureKind::SumFpPair, true) => {
            g.is_positive() && g != &KTuple::ones(g.dim())
        }
        (StructureKind::FiniteSums, _) => SpaceTag::Xk.contains(g),
        _ => SpaceTag::Xk.contains(g) && (!positive || g.is_positive()),
    }
}

fn values(kind: StructureKind, product_side: bool, gens: &[KTuple]) -> Result<Vec<KTuple>> {
    match (kind, product_side) {
        (StructureKind::GowersProduct, _) | (StructureKind::SumProductPair, true) => {
            gowers_product_values(&GeneratorSet::new(gens.to_vec(), false)?)
        }
        (StructureKind::FiniteProducts, _) | (StructureKind::SumFpPair, true) => {
            finite_products(gens)
        }
        (StructureKind::FiniteSums, _) => finite_sums(gens),
        _ => gowers_sum_values(&GeneratorSet::new(gens.to_vec(), false)?),
    }
}

/// Colors in which some generator choice for the given side is fully inside
/// the box and monochromatic, with one example generator list per color.
fn mono_colors(
    c: &Coloring,
    spec: &StructureSpec,
    product_side: bool,
    m: usize,
) -> Result<Vec<Option<Vec<KTuple>>>> {
    let cells: Vec<&KTuple> = c
        .cell_index()
        .cells()
        .iter()
        .filter(|g| admits(spec.kind, product_side, spec.sum_generators_positive, g))
        .collect();
    let mut found: Vec<Option<Vec<KTuple>>> = vec![None; c.num_colors() as usize];
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    walk(c, spec, product_side, m, &cells, 0, &mut chosen, &mut found)?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    c: &Coloring,
    spec: &StructureSpec,
    product_side: bool,
    m: usize,
    cells: &[&KTuple],
    from: usize,
    chosen: &mut Vec<usize>,
    found: &mut [Option<Vec<KTuple>>],
) -> Result<()> {
    if chosen.len() == m {
        let gens: Vec<KTuple> = chosen.iter().map(|&i| cells[i].clone()).collect();
        let vals = match values(spec.kind, product_side, &gens) {
            Ok(v) => v,
            Err(Error::Overflow) => return Ok(()),
            Err(e) => return Err(e),
        };
        let mut color = None;
        for v in &vals {
            match c.color_of(v) {
                Some(col) if color.is_none() || color == Some(col) => color = Some(col),
                Some(_) => return Ok(()),
                None if spec.closure => return Ok(()),
                None => {}
            }
        }
        if let Some(col) = color {
            found[col as usize].get_or_insert(gens);
        }
        return Ok(());
    }
    for i in from..cells.len() {
        chosen.push(i);
        let next = if spec.distinct_values { i + 1 } else { i };
        walk(c, spec, product_side, m, cells, next, chosen, found)?;
        chosen.pop();
    }
    Ok(())
}

/// Generators of some monochromatic target in `c`, if one exists.
pub fn monochromatic_structure(
    c: &Coloring,
    spec: &StructureSpec,
) -> Result<Option<Vec<Vec<KTuple>>>> {
    spec.validate()?;
    let lead = mono_colors(c, spec, false, spec.m_sum)?;
    if !spec.kind.is_pair() {
        return Ok(lead.into_iter().flatten().next().map(|g| vec![g]));
    }
    let other = mono_colors(c, spec, true, spec.m_prod)?;
    Ok(lead
        .into_iter()
        .zip(other)
        .find_map(|(a, b)| Some(vec![a?, b?])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::serialize_coloring;

    fn cert(verdict: Verdict, evidence: Option<(u64, &str)>) -> Certificate {
        Certificate {
            fingerprint: Fingerprint {
                k: 1,
                r: 2,
                space: SpaceTag::Xk,
                spec: StructureSpec::simple(StructureKind::GowersSum, 2),
                n: None,
                n_max: Some(8),
            },
            verdict,
            evidence: evidence.map(|(n, text)| Evidence {
                n,
                coloring: text.to_string(),
            }),
            engines: vec!["oracle".into()],
            agreement: None,
        }
    }

    const AVOID4: &str = "k=1 N=4 r=2 space=Xk\n1 0\n2 1\n3 1\n4 0\n";

    #[test]
    fn valid_threshold_certificate() {
        cert(Verdict::Threshold { value: 5 }, Some((4, AVOID4)))
            .validate()
            .unwrap();
    }

    #[test]
    fn bad_evidence_is_rejected() {
        assert!(cert(Verdict::Threshold { value: 5 }, None)
            .validate()
            .is_err());
        assert!(cert(Verdict::Threshold { value: 6 }, Some((4, AVOID4)))
            .validate()
            .is_err());
        let mono = "k=1 N=4 r=2 space=Xk\n1 0\n2 0\n3 1\n4 1\n";
        let err = cert(Verdict::Threshold { value: 5 }, Some((4, mono)))
            .validate()
            .unwrap_err();
        assert!(err.to_string().contains("monochromatic"), "{err}");
    }

    #[test]
    fn threshold_at_smallest_box_needs_no_evidence() {
        let mut c = cert(Verdict::Threshold { value: 1 }, None);
        c.fingerprint.spec = StructureSpec::simple(StructureKind::GowersSum, 1);
        c.validate().unwrap();
    }

    #[test]
    fn json_shape() {
        let c = cert(Verdict::Threshold { value: 5 }, Some((4, AVOID4)));
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"]["type"], "threshold");
        assert_eq!(v["verdict"]["value"], 5);
        assert_eq!(v["fingerprint"]["spec"]["kind"], "GowersSum");
        let back: Certificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn independent_check_agrees_on_pairs() {
        let c = parse_coloring("k=1 N=4 r=2 space=Xk\n1 0\n2 0\n3 1\n4 0\n").unwrap();
        let spec = StructureSpec::pair(StructureKind::SumFpPair, 2, 2);
        let gens = monochromatic_structure(&c, &spec).unwrap().unwrap();
        assert_eq!(gens.len(), 2);
        let c = parse_coloring("k=1 N=4 r=2 space=Xk\n1 0\n2 0\n3 1\n4 1\n").unwrap();
        assert_eq!(monochromatic_structure(&c, &spec).unwrap(), None);
        assert_eq!(serialize_coloring(&c).lines().count(), 5);
    }
}
