//! Total colorings of a box and their text/JSON file formats.
//!
//! Text format:
//!
//! ```text
//! k=1 N=3 r=2 space=Xk
//! 1 0
//! 2 1
//! 3 0
//! ```
//!
//! One line per cell, coordinates then color, in lexicographic cell order.
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::domain::{CellIndex, SearchBox};
use crate::error::{Error, Result};
use crate::tuple::{KTuple, SpaceTag};

#[derive(Clone, Debug)]
pub struct Coloring {
    index: Arc<CellIndex>,
    r: u32,
    colors: Vec<u32>,
}

impl PartialEq for Coloring {
    fn eq(&self, other: &Self) -> bool {
        self.bounds() == other.bounds() && self.r == other.r && self.colors == other.colors
    }
}

impl Eq for Coloring {}

impl Coloring {
    /// `colors[i]` is the color of cell `i` in canonical order.
    pub fn new(index: Arc<CellIndex>, r: u32, colors: Vec<u32>) -> Result<Coloring> {
        if colors.len() != index.len() {
            return Err(Error::ColoringSize {
                cells: index.len(),
                colors: colors.len(),
            });
        }
        if let Some(&color) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::ColorOutOfRange { color, r });
        }
        Ok(Coloring { index, r, colors })
    }

    pub fn constant(index: Arc<CellIndex>, r: u32, color: u32) -> Result<Coloring> {
        let n = index.len();
        Coloring::new(index, r, vec![color; n])
    }

    pub fn bounds(&self) -> &SearchBox {
        self.index.bounds()
    }

    pub fn cell_index(&self) -> &Arc<CellIndex> {
        &self.index
    }

    pub fn num_colors(&self) -> u32 {
        self.r
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_at(&self, cell: usize) -> u32 {
        self.colors[cell]
    }

    pub fn color_of(&self, t: &KTuple) -> Option<u32> {
        self.index.index_of(t).map(|i| self.colors[i])
    }

    /// Cell indices grouped by color, classes ordered by first member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut order: Vec<u32> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, &c) in self.colors.iter().enumerate() {
            match order.iter().position(|&o| o == c) {
                Some(p) => classes[p].push(i),
                None => {
                    order.push(c);
                    classes.push(vec![i]);
                }
            }
        }
        classes
    }
}

/// Renames colors so that first occurrences along the cell order read
/// `0, 1, 2, …`.
pub fn canonicalize_colors(c: &Coloring) -> Coloring {
    let mut rename: Vec<Option<u32>> = vec![None; c.r as usize];
    let mut next = 0u32;
    let colors = c
        .colors
        .iter()
        .map(|&col| {
            *rename[col as usize].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    Coloring {
        index: Arc::clone(&c.index),
        r: c.r,
        colors,
    }
}

pub fn serialize_coloring(c: &Coloring) -> String {
    let b = c.bounds();
    let mut out = format!(
        "k={} N={} r={} space={}\n",
        b.dim, b.max_coord, c.r, b.space
    );
    for (cell, color) in c.index.cells().iter().zip(&c.colors) {
        for x in cell.coords() {
            write!(out, "{x} ").expect("writing to a String");
        }
        writeln!(out, "{color}").expect("writing to a String");
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, text: &str) -> Result<(SearchBox, u32)> {
    let (mut k, mut n, mut r, mut space) = (None, None, None, None);
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("malformed header field `{field}`")))?;
        let num = || {
            value
                .parse::<u64>()
                .map_err(|_| parse_err(line_no, format!("header field `{key}` is not a number")))
        };
        match key {
            "k" => k = Some(num()?),
            "N" => n = Some(num()?),
            "r" => r = Some(num()?),
            "space" => {
                space = Some(
                    SpaceTag::from_name(value)
                        .ok_or_else(|| parse_err(line_no, format!("unknown space `{value}`")))?,
                )
            }
            _ => return Err(parse_err(line_no, format!("unknown header field `{key}`"))),
        }
    }
    let missing = |name: &str| parse_err(line_no, format!("header is missing `{name}`"));
    let k = k.ok_or_else(|| missing("k"))?;
    let n = n.ok_or_else(|| missing("N"))?;
    let r = r.ok_or_else(|| missing("r"))?;
    let space = space.ok_or_else(|| missing("space"))?;
    if k == 0 {
        return Err(parse_err(line_no, "k must be positive"));
    }
    if r == 0 || r > u32::MAX as u64 {
        return Err(parse_err(line_no, "r must be positive"));
    }
    Ok((SearchBox::new(k as usize, n, space), r as u32))
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (bounds, r) = parse_header(header_line, header)?;
    let index =
        Arc::new(CellIndex::new(bounds).map_err(|e| parse_err(header_line, e.to_string()))?);
    let mut colors: Vec<Option<u32>> = vec![None; index.len()];
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        let fields = line
            .split_whitespace()
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("`{f}` is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        if fields.len() != bounds.dim + 1 {
            return Err(parse_err(
                line_no,
                format!(
                    "dimension mismatch: expected {} coordinates and a color, found {} fields",
                    bounds.dim,
                    fields.len()
                ),
            ));
        }
        let (coords, color) = fields.split_at(bounds.dim);
        let cell = KTuple::new(coords.to_vec())?;
        let color = color[0];
        let i = index
            .index_of(&cell)
            .ok_or_else(|| parse_err(line_no, format!("cell {cell} is not in the box")))?;
        if color >= r as u64 {
            return Err(parse_err(
                line_no,
                format!("color {color} out of range for r={r}"),
            ));
        }
        if colors[i].is_some() {
            return Err(parse_err(line_no, format!("duplicate cell {cell}")));
        }
        colors[i] = Some(color as u32);
    }
    let colors = colors
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| parse_err(last_line, format!("uncolored cell {}", index.cell_of(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Coloring::new(index, r, colors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredCell {
    pub cell: KTuple,
    pub color: u32,
}

/// JSON mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: usize,
    #[serde(rename = "N")]
    pub n: u64,
    pub r: u32,
    pub space: String,
    pub cells: Vec<ColoredCell>,
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        let b = c.bounds();
        ColoringJson {
            k: b.dim,
            n: b.max_coord,
            r: c.r,
            space: b.space.name().to_string(),
            cells: c
                .index
                .cells()
                .iter()
                .zip(&c.colors)
                .map(|(cell, &color)| ColoredCell {
                    cell: cell.clone(),
                    color,
                })
                .collect(),
        }
    }
}

impl ColoringJson {
    pub fn into_coloring(self) -> Result<Coloring> {
        let space = SpaceTag::from_name(&self.space)
            .ok_or_else(|| parse_err(0, format!("unknown space `{}`", self.space)))?;
        let index = Arc::new(CellIndex::new(SearchBox::new(self.k, self.n, space))?);
        let mut colors = vec![None; index.len()];
        for ColoredCell { cell, color } in self.cells {
            let i = index.index_of(&cell).ok_or(Error::NotACell(cell.clone()))?;
            if colors[i].replace(color).is_some() {
                return Err(parse_err(0, format!("duplicate cell {cell}")));
            }
        }
        let colors = colors
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| parse_err(0, format!("uncolored cell {}", index.cell_of(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Coloring::new(index, self.r, colors)
    }
}
