use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuple::{KTuple, SpaceTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StructureKind {
    GowersSum,
    GowersProduct,
    #[serde(rename = "FS")]
    FiniteSums,
    #[serde(rename = "FP")]
    FiniteProducts,
    /// A Gowers sum subspace and an FP set in one color class.
    SumFpPair,
    /// A Gowers sum subspace and a Gowers product subspace in one color class.
    SumProductPair,
}

impl StructureKind {
    pub fn name(self) -> &'static str {
        match self {
            StructureKind::GowersSum => "GowersSum",
            StructureKind::GowersProduct => "GowersProduct",
            StructureKind::FiniteSums => "FS",
            StructureKind::FiniteProducts => "FP",
            StructureKind::SumFpPair => "SumFpPair",
            StructureKind::SumProductPair => "SumProductPair",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(
            self,
            StructureKind::SumFpPair | StructureKind::SumProductPair
        )
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One half of a target structure: how generators are chosen and what they
/// generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SideKind {
    GowersSum,
    GowersProduct,
    FiniteSums,
    FiniteProducts,
}

impl SideKind {
    /// Whether `g` may serve as a generator for this side.
    pub fn admits(self, g: &KTuple, sum_generators_positive: bool) -> bool {
        match self {
            SideKind::GowersSum => {
                SpaceTag::Xk.contains(g) && (!sum_generators_positive || g.is_positive())
            }
            SideKind::FiniteSums => SpaceTag::Xk.contains(g),
            SideKind::GowersProduct => SpaceTag::Yk.contains(g),
            SideKind::FiniteProducts => g.is_positive() && g.coords().iter().any(|&c| c > 1),
        }
    }

    /// Generators of this side are reported as product generators.
    pub fn is_product(self) -> bool {
        matches!(self, SideKind::GowersProduct | SideKind::FiniteProducts)
    }
}

/// The target structure a coloring must (or must not) contain
/// monochromatically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureSpec {
    pub kind: StructureKind,
    /// Generator count of the sum side (of the only side for simple kinds).
    pub m_sum: usize,
    /// Generator count of the product side of a pair kind.
    pub m_prod: usize,
    /// Generators within one side must be pairwise distinct.
    pub distinct_values: bool,
    /// Only generator sets whose whole generated set lies in the box count.
    pub closure: bool,
    /// Sum-side generators of pair kinds must lie in N^k, not just X_k.
    pub sum_generators_positive: bool,
}

impl StructureSpec {
    /// A single-structure spec with the default policies (repeats allowed,
    /// closure required).
    pub fn simple(kind: StructureKind, m: usize) -> StructureSpec {
        StructureSpec {
            kind,
            m_sum: m,
            m_prod: 0,
            distinct_values: false,
            closure: true,
            sum_generators_positive: false,
        }
    }

    pub fn pair(kind: StructureKind, m_sum: usize, m_prod: usize) -> StructureSpec {
        StructureSpec {
            kind,
            m_sum,
            m_prod,
            distinct_values: false,
            closure: true,
            sum_generators_positive: false,
        }
    }

    pub fn with_distinct(mut self, distinct: bool) -> StructureSpec {
        self.distinct_values = distinct;
        self
    }

    pub fn with_closure(mut self, closure: bool) -> StructureSpec {
        self.closure = closure;
        self
    }

    pub fn with_positive_sum_generators(mut self, positive: bool) -> StructureSpec {
        self.sum_generators_positive = positive;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_sum == 0 {
            return Err(Error::InvalidSpec(format!(
                "{} needs at least one generator",
                self.kind
            )));
        }
        if self.kind.is_pair() && self.m_prod == 0 {
            return Err(Error::InvalidSpec(format!(
                "{} needs at least one product-side generator",
                self.kind
            )));
        }
        if !self.kind.is_pair() && self.m_prod != 0 {
            return Err(Error::InvalidSpec(format!(
                "{} takes no product-side generators",
                self.kind
            )));
        }
        Ok(())
    }

    /// The sides making up the structure, with their generator counts.
    pub fn sides(&self) -> Vec<(SideKind, usize)> {
        match self.kind {
            StructureKind::GowersSum => vec![(SideKind::GowersSum, self.m_sum)],
            StructureKind::GowersProduct => vec![(SideKind::GowersProduct, self.m_sum)],
            StructureKind::FiniteSums => vec![(SideKind::FiniteSums, self.m_sum)],
            StructureKind::FiniteProducts => vec![(SideKind::FiniteProducts, self.m_sum)],
            StructureKind::SumFpPair => vec![
                (SideKind::GowersSum, self.m_sum),
                (SideKind::FiniteProducts, self.m_prod),
            ],
            StructureKind::SumProductPair => vec![
                (SideKind::GowersSum, self.m_sum),
                (SideKind::GowersProduct, self.m_prod),
            ],
        }
    }

    /// The box space searched for this kind when none is given.
    pub fn default_space(&self) -> SpaceTag {
        match self.kind {
            StructureKind::GowersProduct => SpaceTag::Yk,
            StructureKind::FiniteProducts => SpaceTag::FullNk,
            _ => SpaceTag::Xk,
        }
    }

    /// Stable one-line description used in fingerprints and DIMACS comments.
    pub fn fingerprint(&self) -> String {
        format!(
            "kind={} m_sum={} m_prod={} distinct={} closure={} positive_sum_gens={}",
            self.kind,
            self.m_sum,
            self.m_prod,
            self.distinct_values,
            self.closure,
            self.sum_generators_positive
        )
    }
}
