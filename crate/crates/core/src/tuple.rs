//! k-tuples over N_0 and N, the two shift maps and the ambient operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of N_0^k.
///
/// Coordinates are `u64`; every arithmetic operation is checked and reports
/// [`Error::Overflow`] instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KTuple(Vec<u64>);

/// Which subset of N_0^k a tuple is required to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceTag {
    /// First coordinate nonzero.
    Xk,
    /// All coordinates positive, first coordinate different from 1.
    Yk,
    /// All of N_0^k.
    FullN0k,
    /// All of N^k.
    FullNk,
}

impl SpaceTag {
    pub fn contains(self, t: &KTuple) -> bool {
        match self {
            SpaceTag::Xk => t.first() != 0,
            SpaceTag::Yk => t.is_positive() && t.first() != 1,
            SpaceTag::FullN0k => true,
            SpaceTag::FullNk => t.is_positive(),
        }
    }

    /// Smallest coordinate value a cell of this space may take.
    pub fn lowest_coord(self) -> u64 {
        match self {
            SpaceTag::Xk | SpaceTag::FullN0k => 0,
            SpaceTag::Yk | SpaceTag::FullNk => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::Xk => "Xk",
            SpaceTag::Yk => "Yk",
            SpaceTag::FullN0k => "N0k",
            SpaceTag::FullNk => "Nk",
        }
    }

    pub fn from_name(s: &str) -> Option<SpaceTag> {
        match s {
            "Xk" => Some(SpaceTag::Xk),
            "Yk" => Some(SpaceTag::Yk),
            "N0k" => Some(SpaceTag::FullN0k),
            "Nk" => Some(SpaceTag::FullNk),
            _ => None,
        }
    }

    pub(crate) fn require(self, t: &KTuple) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::Membership {
                tuple: t.clone(),
                space: self,
                reason: self.violation(t),
            })
        }
    }

    fn violation(self, t: &KTuple) -> String {
        let zero = t.coords().iter().position(|&c| c == 0);
        match self {
            SpaceTag::Xk => "coordinate 1 is 0".to_string(),
            SpaceTag::Yk | SpaceTag::FullNk => match zero {
                Some(i) => format!("coordinate {} is 0", i + 1),
                None => "coordinate 1 is 1".to_string(),
            },
            SpaceTag::FullN0k => String::new(),
        }
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl KTuple {
    /// Builds a tuple; `coords` must be nonempty.
    pub fn new(coords: Vec<u64>) -> Result<KTuple> {
        if coords.is_empty() {
            return Err(Error::EmptyTuple);
        }
        Ok(KTuple(coords))
    }

    pub fn zeros(dim: usize) -> KTuple {
        assert!(dim > 0, "tuples have positive dimension");
        KTuple(vec![0; dim])
    }

    pub fn ones(dim: usize) -> KTuple {
        assert!(dim > 0, "tuples have positive dimension");
        KTuple(vec![1; dim])
    }

    pub fn constant(dim: usize, value: u64) -> KTuple {
        assert!(dim > 0, "tuples have positive dimension");
        KTuple(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn first(&self) -> u64 {
        self.0[0]
    }

    /// All coordinates at least 1, i.e. the tuple lies in N^k.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn max_coord(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Debug for KTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for KTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn same_dim(x: &KTuple, y: &KTuple) -> Result<()> {
    if x.dim() == y.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        })
    }
}

/// The tetris shift `T(n_1,…,n_k) = (0,n_1,…,n_{k-1})`.
pub fn tetris_shift(t: &KTuple) -> KTuple {
    shift_in(t, 0)
}

/// `T` applied `times` times.
pub fn tetris_shift_pow(t: &KTuple, times: usize) -> KTuple {
    shift_in_pow(t, 0, times)
}

/// The multiplicative shift `S(n_1,…,n_k) = (1,n_1,…,n_{k-1})`, defined on N^k.
pub fn mult_shift(t: &KTuple) -> Result<KTuple> {
    SpaceTag::FullNk.require(t)?;
    Ok(shift_in(t, 1))
}

/// `S` applied `times` times.
pub fn mult_shift_pow(t: &KTuple, times: usize) -> Result<KTuple> {
    SpaceTag::FullNk.require(t)?;
    Ok(shift_in_pow(t, 1, times))
}

fn shift_in(t: &KTuple, fill: u64) -> KTuple {
    shift_in_pow(t, fill, 1)
}

fn shift_in_pow(t: &KTuple, fill: u64, times: usize) -> KTuple {
    let k = t.dim();
    let s = times.min(k);
    let mut out = Vec::with_capacity(k);
    out.extend(std::iter::repeat_n(fill, s));
    out.extend_from_slice(&t.0[..k - s]);
    KTuple(out)
}

pub fn componentwise_add(x: &KTuple, y: &KTuple) -> Result<KTuple> {
    same_dim(x, y)?;
    x.0.iter()
        .zip(&y.0)
        .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()
        .map(KTuple)
}

pub fn componentwise_mul(x: &KTuple, y: &KTuple) -> Result<KTuple> {
    same_dim(x, y)?;
    x.0.iter()
        .zip(&y.0)
        .map(|(a, b)| a.checked_mul(*b).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()
        .map(KTuple)
}

/// `+ : X_j × X_k → X_k` for `j < k`: `m` is added onto the last `j`
/// coordinates of `n`, the leading `k - j` coordinates of `n` are kept.
pub fn mixed_sum(m: &KTuple, n: &KTuple) -> Result<KTuple> {
    let (j, k) = (m.dim(), n.dim());
    if j >= k {
        return Err(Error::MixedDimensions { short: j, long: k });
    }
    SpaceTag::Xk.require(m)?;
    SpaceTag::Xk.require(n)?;
    overlay_tail(n, m)
}

/// `+ : X_k × X_j → X_k` for `j < k`, with the short argument on the right.
///
/// Uses the same overlay rule as [`mixed_sum`]: the short tuple is added onto
/// the last `j` coordinates of the long one.
pub fn mixed_sum_rev(n: &KTuple, m: &KTuple) -> Result<KTuple> {
    mixed_sum(m, n)
}

fn overlay_tail(long: &KTuple, short: &KTuple) -> Result<KTuple> {
    let offset = long.dim() - short.dim();
    let mut out = long.0.clone();
    for (slot, add) in out[offset..].iter_mut().zip(&short.0) {
        *slot = slot.checked_add(*add).ok_or(Error::Overflow)?;
    }
    Ok(KTuple(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[u64]) -> KTuple {
        KTuple::new(c.to_vec()).unwrap()
    }

    #[test]
    fn tetris_shift_examples() {
        assert_eq!(tetris_shift(&t(&[2, 3, 1])), t(&[0, 2, 3]));
        assert_eq!(tetris_shift(&t(&[0, 0, 0])), t(&[0, 0, 0]));
        assert_eq!(tetris_shift_pow(&t(&[4, 5, 6]), 3), t(&[0, 0, 0]));
        assert_eq!(tetris_shift_pow(&t(&[4, 5, 6]), 0), t(&[4, 5, 6]));
    }

    #[test]
    fn mult_shift_examples() {
        assert_eq!(mult_shift(&t(&[2, 3])).unwrap(), t(&[1, 2]));
        assert_eq!(mult_shift(&t(&[1, 1, 1])).unwrap(), t(&[1, 1, 1]));
        assert_eq!(mult_shift_pow(&t(&[7, 2, 9]), 3).unwrap(), t(&[1, 1, 1]));
        assert!(matches!(
            mult_shift(&t(&[2, 0])),
            Err(Error::Membership { .. })
        ));
    }

    #[test]
    fn ambient_operations() {
        assert_eq!(
            componentwise_add(&t(&[1, 0]), &t(&[0, 2])).unwrap(),
            t(&[1, 2])
        );
        assert_eq!(
            componentwise_add(&t(&[2, 5]), &t(&[1, 0])).unwrap(),
            t(&[3, 5])
        );
        assert_eq!(
            componentwise_add(&t(&[2, 5]), &KTuple::zeros(2)).unwrap(),
            t(&[2, 5])
        );
        assert_eq!(
            componentwise_mul(&t(&[2, 1]), &t(&[1, 3])).unwrap(),
            t(&[2, 3])
        );
        assert_eq!(
            componentwise_mul(&t(&[3, 2]), &t(&[1, 2])).unwrap(),
            t(&[3, 4])
        );
        assert_eq!(
            componentwise_mul(&t(&[3, 2]), &KTuple::ones(2)).unwrap(),
            t(&[3, 2])
        );
        assert!(matches!(
            componentwise_add(&t(&[1]), &t(&[1, 2])),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(matches!(
            componentwise_add(&t(&[u64::MAX]), &t(&[1])),
            Err(Error::Overflow)
        ));
        assert!(matches!(
            componentwise_mul(&t(&[u64::MAX, 1]), &t(&[2, 1])),
            Err(Error::Overflow)
        ));
    }

    #[test]
    fn mixed_sum_examples() {
        assert_eq!(mixed_sum(&t(&[5]), &t(&[2, 3])).unwrap(), t(&[2, 8]));
        assert_eq!(mixed_sum(&t(&[4]), &t(&[1, 0, 2])).unwrap(), t(&[1, 0, 6]));
        assert_eq!(
            mixed_sum(&t(&[1, 1]), &t(&[3, 0, 2])).unwrap(),
            t(&[3, 1, 3])
        );
        assert_eq!(mixed_sum_rev(&t(&[2, 3]), &t(&[5])).unwrap(), t(&[2, 8]));
    }

    #[test]
    fn mixed_sum_errors() {
        assert!(matches!(
            mixed_sum(&t(&[1, 2]), &t(&[1, 2])),
            Err(Error::MixedDimensions { short: 2, long: 2 })
        ));
        assert!(matches!(
            mixed_sum(&t(&[0]), &t(&[1, 2])),
            Err(Error::Membership { .. })
        ));
        assert!(matches!(
            mixed_sum(&t(&[1]), &t(&[0, 2])),
            Err(Error::Membership { .. })
        ));
    }

    #[test]
    fn membership_predicates() {
        assert!(SpaceTag::Xk.contains(&t(&[1, 0])));
        assert!(!SpaceTag::Xk.contains(&t(&[0, 1])));
        assert!(SpaceTag::Yk.contains(&t(&[2, 1])));
        assert!(!SpaceTag::Yk.contains(&t(&[1, 2])));
        assert!(!SpaceTag::Yk.contains(&t(&[2, 0])));
        assert!(SpaceTag::FullNk.contains(&t(&[1, 1])));
        assert!(!SpaceTag::FullNk.contains(&t(&[1, 0])));
    }

    #[test]
    fn empty_tuple_rejected() {
        assert!(matches!(KTuple::new(vec![]), Err(Error::EmptyTuple)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn tuple(k: usize, lo: u64) -> impl Strategy<Value = KTuple> {
            proptest::collection::vec(lo..20u64, k).prop_map(KTuple)
        }

        proptest! {
            #[test]
            fn shifts_are_nilpotent(k in 1usize..6, seed in proptest::collection::vec(1u64..50, 6)) {
                let x = KTuple(seed[..k].to_vec());
                prop_assert_eq!(tetris_shift_pow(&x, k), KTuple::zeros(k));
                prop_assert_eq!(mult_shift_pow(&x, k).unwrap(), KTuple::ones(k));
                let mut y = x.clone();
                for _ in 0..k {
                    y = tetris_shift(&y);
                }
                prop_assert_eq!(y, KTuple::zeros(k));
            }

            #[test]
            fn mixed_sum_tail_law(
                (m, n) in (1usize..4, 1usize..4).prop_flat_map(|(j, extra)| {
                    (tuple(j, 0), tuple(j + extra, 0))
                }).prop_filter("membership", |(m, n)| m.first() != 0 && n.first() != 0)
            ) {
                let out = mixed_sum(&m, &n).unwrap();
                let offset = n.dim() - m.dim();
                prop_assert_eq!(out.first(), n.first());
                prop_assert_eq!(&out.coords()[..offset], &n.coords()[..offset]);
                let tail = KTuple(n.coords()[offset..].to_vec());
                let expected = componentwise_add(&m, &tail).unwrap();
                prop_assert_eq!(&out.coords()[offset..], expected.coords());
            }
        }
    }
}
