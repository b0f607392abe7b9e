//! Finite search domains and the canonical cell order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuple::{KTuple, SpaceTag};

/// Largest dense grid a [`CellIndex`] will allocate a lookup table for.
const MAX_GRID: u128 = 1 << 26;

/// The cells of `[lo..=max_coord]^dim` that satisfy `space`, where `lo` is 0
/// for the sum world and 1 for the product world.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SearchBox {
    pub dim: usize,
    pub max_coord: u64,
    pub space: SpaceTag,
}

impl SearchBox {
    pub fn new(dim: usize, max_coord: u64, space: SpaceTag) -> SearchBox {
        SearchBox {
            dim,
            max_coord,
            space,
        }
    }

    pub fn lo(&self) -> u64 {
        self.space.lowest_coord()
    }

    /// Coordinate range check plus the space predicate.
    pub fn contains(&self, t: &KTuple) -> bool {
        t.dim() == self.dim
            && t.coords()
                .iter()
                .all(|&c| c >= self.lo() && c <= self.max_coord)
            && self.space.contains(t)
    }
}

impl fmt::Display for SearchBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} N={} space={}",
            self.dim, self.max_coord, self.space
        )
    }
}

/// Every cell of `b`, in lexicographic order.
pub fn enumerate_box(b: &SearchBox) -> Result<Vec<KTuple>> {
    if b.dim == 0 {
        return Err(Error::EmptyTuple);
    }
    let lo = b.lo();
    if b.max_coord < lo {
        return Err(Error::EmptyBox(b.to_string()));
    }
    let side = b.max_coord - lo + 1;
    if (side as u128)
        .checked_pow(b.dim as u32)
        .is_none_or(|n| n > MAX_GRID)
    {
        return Err(Error::EmptyBox(format!("{b} is too large to enumerate")));
    }
    let mut cells = Vec::new();
    let mut cur = vec![lo; b.dim];
    'outer: loop {
        let t = KTuple::new(cur.clone())?;
        if b.space.contains(&t) {
            cells.push(t);
        }
        let mut pos = b.dim;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            if cur[pos] < b.max_coord {
                cur[pos] += 1;
                break;
            }
            cur[pos] = lo;
        }
    }
    if cells.is_empty() {
        return Err(Error::EmptyBox(b.to_string()));
    }
    Ok(cells)
}

/// Bijection between the cells of a box and `0..len`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct CellIndex {
    bounds: SearchBox,
    cells: Vec<KTuple>,
    // dense grid position -> cell index, u32::MAX for filtered-out positions
    lookup: Vec<u32>,
}

impl CellIndex {
    pub fn new(bounds: SearchBox) -> Result<CellIndex> {
        let cells = enumerate_box(&bounds)?;
        let side = (bounds.max_coord - bounds.lo() + 1) as usize;
        let mut lookup = vec![u32::MAX; side.pow(bounds.dim as u32)];
        for (i, c) in cells.iter().enumerate() {
            let pos = grid_position(&bounds, side, c);
            lookup[pos] = i as u32;
        }
        Ok(CellIndex {
            bounds,
            cells,
            lookup,
        })
    }

    pub fn bounds(&self) -> &SearchBox {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[KTuple] {
        &self.cells
    }

    pub fn cell_of(&self, index: usize) -> &KTuple {
        &self.cells[index]
    }

    pub fn index_of(&self, t: &KTuple) -> Option<usize> {
        if t.dim() != self.bounds.dim {
            return None;
        }
        let lo = self.bounds.lo();
        if t.coords()
            .iter()
            .any(|&c| c < lo || c > self.bounds.max_coord)
        {
            return None;
        }
        let side = (self.bounds.max_coord - lo + 1) as usize;
        match self.lookup[grid_position(&self.bounds, side, t)] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }
}

fn grid_position(b: &SearchBox, side: usize, t: &KTuple) -> usize {
    t.coords()
        .iter()
        .fold(0usize, |acc, &c| acc * side + (c - b.lo()) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[u64]) -> KTuple {
        KTuple::new(c.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_box(&SearchBox::new(1, 3, SpaceTag::Xk)).unwrap(),
            vec![t(&[1]), t(&[2]), t(&[3])]
        );
        assert_eq!(
            enumerate_box(&SearchBox::new(2, 1, SpaceTag::Xk)).unwrap(),
            vec![t(&[1, 0]), t(&[1, 1])]
        );
        assert_eq!(
            enumerate_box(&SearchBox::new(1, 3, SpaceTag::Yk)).unwrap(),
            vec![t(&[2]), t(&[3])]
        );
        assert_eq!(
            enumerate_box(&SearchBox::new(2, 2, SpaceTag::FullNk)).unwrap(),
            vec![t(&[1, 1]), t(&[1, 2]), t(&[2, 1]), t(&[2, 2])]
        );
    }

    #[test]
    fn empty_domains() {
        assert!(matches!(
            enumerate_box(&SearchBox::new(1, 1, SpaceTag::Yk)),
            Err(Error::EmptyBox(_))
        ));
        assert!(matches!(
            enumerate_box(&SearchBox::new(2, 0, SpaceTag::Xk)),
            Err(Error::EmptyBox(_))
        ));
        assert!(matches!(
            enumerate_box(&SearchBox::new(1, 0, SpaceTag::Yk)),
            Err(Error::EmptyBox(_))
        ));
    }

    #[test]
    fn index_rejects_outsiders() {
        let idx = CellIndex::new(SearchBox::new(2, 2, SpaceTag::Xk)).unwrap();
        assert_eq!(idx.len(), 6);
        assert_eq!(idx.index_of(&t(&[0, 1])), None);
        assert_eq!(idx.index_of(&t(&[3, 1])), None);
        assert_eq!(idx.index_of(&t(&[1])), None);
        assert_eq!(idx.index_of(&t(&[2, 2])), Some(5));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_space() -> impl Strategy<Value = SpaceTag> {
            prop_oneof![
                Just(SpaceTag::Xk),
                Just(SpaceTag::Yk),
                Just(SpaceTag::FullN0k),
                Just(SpaceTag::FullNk)
            ]
        }

        proptest! {
            #[test]
            fn cell_index_is_a_bijection(k in 1usize..4, n in 2u64..6, space in any_space()) {
                let b = SearchBox::new(k, n, space);
                let idx = CellIndex::new(b).unwrap();
                for i in 0..idx.len() {
                    prop_assert_eq!(idx.index_of(idx.cell_of(i)), Some(i));
                    prop_assert!(b.contains(idx.cell_of(i)));
                }
                prop_assert!(idx.cells().windows(2).all(|w| w[0] < w[1]));
                let lo = space.lowest_coord();
                let side = (n - lo + 1) as usize;
                let in_space = super::super::enumerate_box(&SearchBox::new(k, n, SpaceTag::FullN0k))
                    .unwrap()
                    .into_iter()
                    .filter(|c| b.contains(c))
                    .count();
                prop_assert_eq!(in_space, idx.len());
                prop_assert!(idx.len() <= side.pow(k as u32));
            }
        }
    }
}
