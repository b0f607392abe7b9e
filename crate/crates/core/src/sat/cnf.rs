use std::fmt::Write as _;
use std::sync::Arc;

use crate::coloring::Coloring;
use crate::domain::{CellIndex, SearchBox};
use crate::error::{Error, Result};
use crate::oracle::{CandidateTable, StructureSpec, DEFAULT_CANDIDATE_CAP};

/// Default limit on the number of avoidance clauses an encoding may hold.
pub const DEFAULT_CLAUSE_CAP: usize = 20_000_000;

/// `(cell, color) ↔ variable`, cell-major: `var(c, i) = c·r + i + 1`.
#[derive(Clone, Debug)]
pub struct VarMap {
    index: Arc<CellIndex>,
    r: u32,
}

impl VarMap {
    pub fn new(index: Arc<CellIndex>, r: u32) -> VarMap {
        VarMap { index, r }
    }

    pub fn index(&self) -> &Arc<CellIndex> {
        &self.index
    }

    pub fn num_colors(&self) -> u32 {
        self.r
    }

    pub fn num_vars(&self) -> usize {
        self.index.len() * self.r as usize
    }

    pub fn var(&self, cell: usize, color: u32) -> i32 {
        (cell * self.r as usize + color as usize + 1) as i32
    }

    /// Inverse of [`VarMap::var`] for `1..=num_vars`.
    pub fn cell_color(&self, var: i32) -> Option<(usize, u32)> {
        if var < 1 || var as usize > self.num_vars() {
            return None;
        }
        let v = var as usize - 1;
        Some((v / self.r as usize, (v % self.r as usize) as u32))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseTag {
    AtLeastOne,
    AtMostOne,
    Avoidance,
}

impl ClauseTag {
    pub fn name(self) -> &'static str {
        match self {
            ClauseTag::AtLeastOne => "at-least-one",
            ClauseTag::AtMostOne => "at-most-one",
            ClauseTag::Avoidance => "avoidance",
        }
    }

    fn from_name(s: &str) -> Option<ClauseTag> {
        match s {
            "at-least-one" => Some(ClauseTag::AtLeastOne),
            "at-most-one" => Some(ClauseTag::AtMostOne),
            "avoidance" => Some(ClauseTag::Avoidance),
            _ => None,
        }
    }
}

/// A contiguous run of clauses with one provenance tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClauseGroup {
    pub tag: ClauseTag,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub groups: Vec<ClauseGroup>,
    /// Free-form comment lines (without the leading `c `).
    pub comments: Vec<String>,
}

impl CnfFormula {
    fn push_group(&mut self, tag: ClauseTag, clauses: impl IntoIterator<Item = Vec<i32>>) {
        let start = self.clauses.len();
        self.clauses.extend(clauses);
        self.groups.push(ClauseGroup {
            tag,
            start,
            len: self.clauses.len() - start,
        });
    }

    pub fn group_len(&self, tag: ClauseTag) -> usize {
        self.groups
            .iter()
            .filter(|g| g.tag == tag)
            .map(|g| g.len)
            .sum()
    }

    /// Whether `model` (indexed by variable, entry 0 unused) satisfies
    /// every clause.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize;
                model.get(v).copied().unwrap_or(false) == (lit > 0)
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct Encoding {
    pub formula: CnfFormula,
    pub vars: VarMap,
}

#[derive(Clone, Copy, Debug)]
pub struct EncodeOptions {
    pub candidate_cap: usize,
    pub clause_cap: usize,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            candidate_cap: DEFAULT_CANDIDATE_CAP,
            clause_cap: DEFAULT_CLAUSE_CAP,
        }
    }
}

/// The CNF that is satisfiable iff an `r`-coloring of `bounds` avoiding every
/// monochromatic target exists.
pub fn encode_avoidance(
    bounds: &SearchBox,
    r: u32,
    spec: &StructureSpec,
    options: &EncodeOptions,
) -> Result<Encoding> {
    if r == 0 {
        return Err(Error::InvalidSpec("at least one color is required".into()));
    }
    let index = Arc::new(CellIndex::new(*bounds)?);
    let table = CandidateTable::build(index, spec, options.candidate_cap)?;
    encode_table(&table, r, options)
}

pub fn encode_table(table: &CandidateTable, r: u32, options: &EncodeOptions) -> Result<Encoding> {
    let vars = VarMap::new(table.index().clone(), r);
    let cells = table.index().len();
    let combos = table.combination_count();
    let clause_count = combos.saturating_mul(r as u128);
    if clause_count > options.clause_cap as u128 {
        return Err(Error::CandidateExplosion {
            count: clause_count.min(usize::MAX as u128) as usize,
            cap: options.clause_cap,
        });
    }
    let b = table.index().bounds();
    let mut f = CnfFormula {
        num_vars: vars.num_vars(),
        clauses: Vec::new(),
        groups: Vec::new(),
        comments: vec![
            "gowers avoidance instance".to_string(),
            format!("k={} N={} r={} space={}", b.dim, b.max_coord, r, b.space),
            table.spec().fingerprint(),
            "var(cell,color) = cell*r + color + 1, cells in lexicographic order".to_string(),
        ],
    };
    f.push_group(
        ClauseTag::AtLeastOne,
        (0..cells).map(|c| (0..r).map(|i| vars.var(c, i)).collect()),
    );
    f.push_group(
        ClauseTag::AtMostOne,
        (0..cells).flat_map(|c| {
            let vars = &vars;
            (0..r)
                .flat_map(move |i| (i + 1..r).map(move |j| vec![-vars.var(c, i), -vars.var(c, j)]))
        }),
    );
    let mut avoid = Vec::with_capacity(clause_count as usize);
    if !table.is_vacuous() {
        let sides = table.sides();
        let mut pick = vec![0usize; sides.len()];
        let mut union: Vec<usize> = Vec::new();
        'combos: loop {
            union.clear();
            for (side, &p) in sides.iter().zip(&pick) {
                union.extend(&side.candidates[p].cells);
            }
            union.sort_unstable();
            union.dedup();
            for color in 0..r {
                avoid.push(union.iter().map(|&c| -vars.var(c, color)).collect());
            }
            let mut s = sides.len();
            loop {
                if s == 0 {
                    break 'combos;
                }
                s -= 1;
                if pick[s] + 1 < sides[s].candidates.len() {
                    pick[s] += 1;
                    break;
                }
                pick[s] = 0;
            }
        }
    }
    f.push_group(ClauseTag::Avoidance, avoid);
    Ok(Encoding { formula: f, vars })
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    for c in &f.comments {
        writeln!(out, "c {c}").expect("writing to a String");
    }
    for g in &f.groups {
        writeln!(out, "c group {} {} {}", g.tag.name(), g.start, g.len)
            .expect("writing to a String");
    }
    writeln!(out, "p cnf {} {}", f.num_vars, f.clauses.len()).expect("writing to a String");
    for cl in &f.clauses {
        for lit in cl {
            write!(out, "{lit} ").expect("writing to a String");
        }
        out.push_str("0\n");
    }
    out
}

fn dimacs_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS CNF, keeping comments and `c group` provenance lines.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut f = CnfFormula {
        num_vars: 0,
        clauses: Vec::new(),
        groups: Vec::new(),
        comments: Vec::new(),
    };
    let mut declared: Option<usize> = None;
    let mut current: Vec<i32> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('c') {
            let rest = rest.strip_prefix(' ').unwrap_or(rest);
            let group = rest.strip_prefix("group ").and_then(|g| {
                let parts: Vec<&str> = g.split_whitespace().collect();
                match parts.as_slice() {
                    [tag, start, len] => Some(ClauseGroup {
                        tag: ClauseTag::from_name(tag)?,
                        start: start.parse().ok()?,
                        len: len.parse().ok()?,
                    }),
                    _ => None,
                }
            });
            match group {
                Some(g) => f.groups.push(g),
                None => f.comments.push(rest.to_string()),
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("p ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] => {
                    f.num_vars = v
                        .parse()
                        .map_err(|_| dimacs_err(line_no, "bad variable count"))?;
                    declared = Some(
                        c.parse()
                            .map_err(|_| dimacs_err(line_no, "bad clause count"))?,
                    );
                }
                _ => return Err(dimacs_err(line_no, "malformed problem line")),
            }
            continue;
        }
        if declared.is_none() {
            return Err(dimacs_err(line_no, "clause before problem line"));
        }
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| dimacs_err(line_no, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                f.clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > f.num_vars {
                    return Err(dimacs_err(line_no, format!("literal {lit} out of range")));
                }
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err(dimacs_err(text.lines().count(), "unterminated clause"));
    }
    match declared {
        None => Err(dimacs_err(1, "missing problem line")),
        Some(n) if n != f.clauses.len() => Err(dimacs_err(
            text.lines().count(),
            format!("header declares {n} clauses, found {}", f.clauses.len()),
        )),
        Some(_) => Ok(f),
    }
}

/// Turns a solver model (DIMACS literals, any order) into a coloring.
/// Every variable must be assigned and every cell must get exactly one color.
pub fn decode_model(model: &[i32], vars: &VarMap) -> Result<Coloring> {
    let n = vars.num_vars();
    let mut value: Vec<Option<bool>> = vec![None; n + 1];
    for &lit in model {
        let v = lit.unsigned_abs() as usize;
        if v == 0 || v > n {
            return Err(Error::Decode(format!("literal {lit} out of range")));
        }
        value[v] = Some(lit > 0);
    }
    let cells = vars.index().len();
    let mut colors = Vec::with_capacity(cells);
    for c in 0..cells {
        let mut chosen = None;
        for i in 0..vars.num_colors() {
            let var = vars.var(c, i);
            match value[var as usize] {
                None => return Err(Error::Decode(format!("variable {var} is unassigned"))),
                Some(true) => {
                    if let Some(prev) = chosen.replace(i) {
                        return Err(Error::Decode(format!(
                            "cell {} has colors {prev} and {i} (at-most-one violated)",
                            vars.index().cell_of(c)
                        )));
                    }
                }
                Some(false) => {}
            }
        }
        let color = chosen.ok_or_else(|| {
            Error::Decode(format!("cell {} has no color", vars.index().cell_of(c)))
        })?;
        colors.push(color);
    }
    Coloring::new(vars.index().clone(), vars.num_colors(), colors)
}

/// The model that encodes `c`, as DIMACS literals in variable order.
pub fn model_of_coloring(c: &Coloring, vars: &VarMap) -> Vec<i32> {
    (0..vars.index().len())
        .flat_map(|cell| {
            (0..vars.num_colors()).map(move |i| {
                let v = vars.var(cell, i);
                if c.color_at(cell) == i {
                    v
                } else {
                    -v
                }
            })
        })
        .collect()
}
