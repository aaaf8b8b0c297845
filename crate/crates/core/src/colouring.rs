//! Rectangular partial colourings of [d]×[e], colour-closed subgrids and
//! rectangular admissibility. Cells are 0-based (row, column) pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Up to 64 rows and columns, so that subgrids fit in bitmasks.
pub const MAX_SIDE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialColouring {
    d: usize,
    e: usize,
    /// Row-major colour ids; `None` is blank.
    cells: Vec<Option<usize>>,
    names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitAssignment {
    pub d: usize,
    pub e: usize,
    /// Row-major non-zero integers.
    pub u: Vec<i64>,
}

impl UnitAssignment {
    pub fn ones(d: usize, e: usize) -> Self {
        UnitAssignment { d, e, u: vec![1; d * e] }
    }

    pub fn new(d: usize, e: usize, u: Vec<i64>) -> Result<Self> {
        if u.len() != d * e {
            return Err(Error::ShapeMismatch(format!("{} units for a {d}x{e} grid", u.len())));
        }
        if u.contains(&0) {
            return Err(Error::NonUnitCoefficient { value: 0, context: None });
        }
        Ok(UnitAssignment { d, e, u })
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.u[i * self.e + j]
    }

    pub fn transpose(&self) -> Self {
        let mut u = Vec::with_capacity(self.u.len());
        for j in 0..self.e {
            for i in 0..self.d {
                u.push(self.get(i, j));
            }
        }
        UnitAssignment { d: self.e, e: self.d, u }
    }
}

/// A product subgrid I′×J′, as sorted 0-based index lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgrid {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Subgrid {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Subgrid { rows, cols }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() || self.cols.is_empty()
    }

    fn from_masks(r: u64, c: u64) -> Self {
        Subgrid { rows: mask_to_vec(r), cols: mask_to_vec(c) }
    }

    fn masks(&self) -> (u64, u64) {
        (vec_to_mask(&self.rows), vec_to_mask(&self.cols))
    }
}

fn mask_to_vec(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

fn vec_to_mask(v: &[usize]) -> u64 {
    v.iter().fold(0, |m, &i| m | 1 << i)
}

impl PartialColouring {
    /// Builds a colouring from row-major colour names (`None` = blank).
    /// Colour ids follow first appearance in row-major order.
    pub fn from_names(d: usize, e: usize, cells: &[Option<&str>]) -> Result<Self> {
        if cells.len() != d * e {
            return Err(Error::ShapeMismatch(format!("{} cells for a {d}x{e} grid", cells.len())));
        }
        if d > MAX_SIDE || e > MAX_SIDE {
            return Err(Error::InvalidParameter(format!("grids are limited to {MAX_SIDE}x{MAX_SIDE}")));
        }
        let mut names: Vec<String> = Vec::new();
        let mut ids = Vec::with_capacity(cells.len());
        for c in cells {
            ids.push(c.map(|name| match names.iter().position(|n| n == name) {
                Some(k) => k,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            }));
        }
        Ok(PartialColouring { d, e, cells: ids, names })
    }

    /// Builds a colouring from row-major colour ids; ids are renumbered by
    /// first appearance and named `c1, c2, ...` in that order.
    pub fn from_ids(d: usize, e: usize, cells: &[Option<usize>]) -> Result<Self> {
        let labels: Vec<Option<String>> = cells.iter().map(|c| c.map(|k| format!("#{k}"))).collect();
        let refs: Vec<Option<&str>> = labels.iter().map(|c| c.as_deref()).collect();
        let mut col = Self::from_names(d, e, &refs)?;
        col.names = (1..=col.names.len()).map(|k| format!("c{k}")).collect();
        Ok(col)
    }

    pub fn all_blank(d: usize, e: usize) -> Self {
        PartialColouring { d, e, cells: vec![None; d * e], names: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.d
    }
    pub fn cols(&self) -> usize {
        self.e
    }

    pub fn colour(&self, i: usize, j: usize) -> Option<usize> {
        self.cells[i * self.e + j]
    }

    pub fn colour_names(&self) -> &[String] {
        &self.names
    }

    /// Number of non-empty colours.
    pub fn num_colours(&self) -> usize {
        self.names.len()
    }

    /// Cells of one colour in row-major order.
    pub fn fibre(&self, c: usize) -> Vec<(usize, usize)> {
        (0..self.d * self.e)
            .filter(|&k| self.cells[k] == Some(c))
            .map(|k| (k / self.e, k % self.e))
            .collect()
    }

    pub fn blank_cells(&self) -> Vec<(usize, usize)> {
        (0..self.d * self.e).filter(|&k| self.cells[k].is_none()).map(|k| (k / self.e, k % self.e)).collect()
    }

    fn colour_masks(&self) -> Vec<(u64, u64)> {
        let mut masks = vec![(0u64, 0u64); self.names.len()];
        for i in 0..self.d {
            for j in 0..self.e {
                if let Some(c) = self.colour(i, j) {
                    masks[c].0 |= 1 << i;
                    masks[c].1 |= 1 << j;
                }
            }
        }
        masks
    }

    fn closure_masks(&self, masks: &[(u64, u64)], mut r: u64, mut c: u64) -> (u64, u64) {
        loop {
            let (mut nr, mut nc) = (r, c);
            for i in 0..self.d {
                if r >> i & 1 == 0 {
                    continue;
                }
                for j in 0..self.e {
                    if c >> j & 1 == 1 {
                        if let Some(k) = self.colour(i, j) {
                            nr |= masks[k].0;
                            nc |= masks[k].1;
                        }
                    }
                }
            }
            if (nr, nc) == (r, c) {
                return (r, c);
            }
            r = nr;
            c = nc;
        }
    }

    fn has_blank(&self, r: u64, c: u64) -> bool {
        (0..self.d).any(|i| r >> i & 1 == 1 && (0..self.e).any(|j| c >> j & 1 == 1 && self.colour(i, j).is_none()))
    }

    fn is_closed(&self, masks: &[(u64, u64)], r: u64, c: u64) -> bool {
        for i in 0..self.d {
            for j in 0..self.e {
                if r >> i & 1 == 1 && c >> j & 1 == 1 {
                    if let Some(k) = self.colour(i, j) {
                        if masks[k].0 & !r != 0 || masks[k].1 & !c != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Restriction to a subgrid; a cell keeps its colour iff the whole fibre
    /// of that colour lies in the subgrid.
    pub fn restrict(&self, sub: &Subgrid) -> PartialColouring {
        let (r, c) = sub.masks();
        let masks = self.colour_masks();
        let survives: Vec<bool> = masks.iter().map(|&(mr, mc)| mr & !r == 0 && mc & !c == 0).collect();
        let mut cells = Vec::new();
        for &i in &sub.rows {
            for &j in &sub.cols {
                cells.push(self.colour(i, j).filter(|&k| survives[k]).map(|k| self.names[k].as_str()));
            }
        }
        PartialColouring::from_names(sub.rows.len(), sub.cols.len(), &cells).expect("restriction of a valid grid")
    }
}

/// Parsed grid file: optional family header, the colouring and its units.
#[derive(Clone, Debug)]
pub struct GridFile {
    pub family: Option<String>,
    pub colouring: PartialColouring,
    pub units: UnitAssignment,
}

pub fn parse_colouring(text: &str) -> Result<(PartialColouring, UnitAssignment)> {
    let g = parse_grid_file(text)?;
    Ok((g.colouring, g.units))
}

/// Parses the grid file format. The `grid:` header is optional when the
/// file holds only grid rows.
pub fn parse_grid_file(text: &str) -> Result<GridFile> {
    #[derive(PartialEq)]
    enum Section {
        Head,
        Grid,
        Units,
    }
    let mut section = Section::Head;
    let mut family = None;
    let mut grid_rows: Vec<(usize, Vec<(usize, String)>)> = Vec::new();
    let mut unit_rows: Vec<(usize, Vec<(usize, String)>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("family:") {
            if section != Section::Head {
                return Err(perr(line, 1, "family header must precede the grid"));
            }
            family = Some(rest.trim().to_lowercase());
            continue;
        }
        if trimmed == "grid:" {
            if !grid_rows.is_empty() || section == Section::Units {
                return Err(perr(line, 1, "duplicate grid section"));
            }
            section = Section::Grid;
            continue;
        }
        if trimmed == "units:" {
            if grid_rows.is_empty() {
                return Err(perr(line, 1, "units section before grid"));
            }
            section = Section::Units;
            continue;
        }
        let toks = tokens(raw);
        match section {
            Section::Head | Section::Grid => {
                section = Section::Grid;
                grid_rows.push((line, toks));
            }
            Section::Units => unit_rows.push((line, toks)),
        }
    }
    if grid_rows.is_empty() {
        return Err(perr(text.lines().count().max(1), 1, "no grid rows"));
    }
    let d = grid_rows.len();
    let e = grid_rows[0].1.len();
    let mut cells = Vec::with_capacity(d * e);
    for (line, toks) in &grid_rows {
        if toks.len() != e {
            let col = toks.get(e).map(|t| t.0).unwrap_or_else(|| toks.last().map_or(1, |t| t.0));
            return Err(perr(*line, col, &format!("expected {e} entries, found {}", toks.len())));
        }
        for (_, t) in toks {
            cells.push(if t == "." { None } else { Some(t.as_str()) });
        }
    }
    let colouring = PartialColouring::from_names(d, e, &cells).map_err(|err| perr(grid_rows[0].0, 1, &err.to_string()))?;
    let units = if unit_rows.is_empty() {
        UnitAssignment::ones(d, e)
    } else {
        if unit_rows.len() != d {
            let line = unit_rows.last().map_or(1, |r| r.0);
            return Err(perr(line, 1, &format!("expected {d} unit rows, found {}", unit_rows.len())));
        }
        let mut u = Vec::with_capacity(d * e);
        for (line, toks) in &unit_rows {
            if toks.len() != e {
                return Err(perr(*line, 1, &format!("expected {e} units, found {}", toks.len())));
            }
            for (col, t) in toks {
                let v: i64 = t.parse().map_err(|_| perr(*line, *col, &format!("{t:?} is not an integer")))?;
                if v == 0 {
                    return Err(Error::NonUnitCoefficient { value: 0, context: Some(format!("line {line}, column {col}")) });
                }
                u.push(v);
            }
        }
        UnitAssignment { d, e, u }
    };
    Ok(GridFile { family, colouring, units })
}

fn tokens(raw: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in raw.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, raw[s..k].to_string()));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, raw[s..].to_string()));
    }
    out
}

fn perr(line: usize, col: usize, msg: &str) -> Error {
    Error::ParseError { line, col, msg: msg.to_string() }
}

/// Renders a colouring in the grid file format.
pub fn format_colouring(beta: &PartialColouring, units: Option<&UnitAssignment>) -> String {
    let mut s = String::from("grid:\n");
    for i in 0..beta.d {
        let row: Vec<&str> = (0..beta.e).map(|j| beta.colour(i, j).map_or(".", |c| beta.names[c].as_str())).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    if let Some(u) = units {
        s.push_str("units:\n");
        for i in 0..u.d {
            let row: Vec<String> = (0..u.e).map(|j| u.get(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}

pub fn colour_closure(beta: &PartialColouring, seed: &Subgrid) -> Result<Subgrid> {
    if seed.is_empty() {
        return Err(Error::EmptySeed);
    }
    if seed.rows.iter().any(|&i| i >= beta.d) || seed.cols.iter().any(|&j| j >= beta.e) {
        return Err(Error::IndexNotSubset);
    }
    let (r, c) = seed.masks();
    let (r, c) = beta.closure_masks(&beta.colour_masks(), r, c);
    Ok(Subgrid::from_masks(r, c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectVerdict {
    pub admissible: bool,
    /// A non-empty colour-closed subgrid without blank cells.
    pub witness: Option<Subgrid>,
}

/// Admissible iff the closure of every coloured cell contains a blank cell.
pub fn is_admissible_rect(beta: &PartialColouring) -> RectVerdict {
    let masks = beta.colour_masks();
    for i in 0..beta.d {
        for j in 0..beta.e {
            if beta.colour(i, j).is_some() {
                let (r, c) = beta.closure_masks(&masks, 1 << i, 1 << j);
                if !beta.has_blank(r, c) {
                    return RectVerdict { admissible: false, witness: Some(Subgrid::from_masks(r, c)) };
                }
            }
        }
    }
    RectVerdict { admissible: true, witness: None }
}

/// Admissibility straight from the definition, over all 2^d × 2^e subgrids.
pub fn is_admissible_exhaustive(beta: &PartialColouring) -> RectVerdict {
    let masks = beta.colour_masks();
    for r in 1u64..(1 << beta.d) {
        for c in 1u64..(1 << beta.e) {
            if beta.is_closed(&masks, r, c) && !beta.has_blank(r, c) {
                return RectVerdict { admissible: false, witness: Some(Subgrid::from_masks(r, c)) };
            }
        }
    }
    RectVerdict { admissible: true, witness: None }
}

pub fn is_colour_closed(beta: &PartialColouring, sub: &Subgrid) -> bool {
    let (r, c) = sub.masks();
    beta.is_closed(&beta.colour_masks(), r, c)
}

pub fn transpose_colouring(beta: &PartialColouring) -> PartialColouring {
    let mut cells = Vec::with_capacity(beta.cells.len());
    for j in 0..beta.e {
        for i in 0..beta.d {
            cells.push(beta.colour(i, j).map(|c| beta.names[c].as_str()));
        }
    }
    PartialColouring::from_names(beta.e, beta.d, &cells).expect("transpose of a valid grid")
}

/// Canonical form up to colour renaming: ids by first appearance.
pub fn canonical_ids(beta: &PartialColouring) -> Vec<Option<usize>> {
    let mut map = BTreeMap::new();
    beta.cells
        .iter()
        .map(|c| {
            c.map(|k| {
                let next = map.len();
                *map.entry(k).or_insert(next)
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(text: &str) -> PartialColouring {
        parse_colouring(text).unwrap().0
    }

    #[test]
    fn parse_small() {
        let (b, u) = parse_colouring("a b .\nb a .\n. . a").unwrap();
        assert_eq!((b.rows(), b.cols(), b.num_colours()), (3, 3, 2));
        assert_eq!(u, UnitAssignment::ones(3, 3));
        let (b, _) = parse_colouring(".").unwrap();
        assert_eq!(b.blank_cells(), vec![(0, 0)]);
        assert!(matches!(parse_colouring("a b\nc"), Err(Error::ParseError { line: 2, .. })));
        assert!(matches!(
            parse_colouring("grid:\na .\nunits:\n1 0"),
            Err(Error::NonUnitCoefficient { value: 0, .. })
        ));
    }

    #[test]
    fn parse_headers_and_units() {
        let text = "# comment\nfamily: Sigma\ngrid:\na b\nb .  \nunits:\n2 -1\n3 1\n";
        let g = parse_grid_file(text).unwrap();
        assert_eq!(g.family.as_deref(), Some("sigma"));
        assert_eq!(g.units.u, vec![2, -1, 3, 1]);
        let round = parse_grid_file(&format_colouring(&g.colouring, Some(&g.units))).unwrap();
        assert_eq!(round.colouring, g.colouring);
        assert_eq!(round.units, g.units);
    }

    #[test]
    fn closure_examples() {
        let blank = PartialColouring::all_blank(2, 2);
        let s = Subgrid::new(vec![0], vec![0]);
        assert_eq!(colour_closure(&blank, &s).unwrap(), s);
        let d = grid("a b c\nc a b\nb c a");
        assert_eq!(colour_closure(&d, &s).unwrap(), Subgrid::new(vec![0, 1, 2], vec![0, 1, 2]));
        let diag = grid("a .\n. a");
        assert_eq!(colour_closure(&diag, &s).unwrap(), Subgrid::new(vec![0, 1], vec![0, 1]));
        assert_eq!(colour_closure(&diag, &Subgrid::new(vec![], vec![0])), Err(Error::EmptySeed));
    }

    #[test]
    fn transpose_single_cell() {
        let mut cells = vec![None; 6];
        cells[1] = Some("x");
        let b = PartialColouring::from_names(2, 3, &cells).unwrap();
        let t = transpose_colouring(&b);
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.fibre(0), vec![(1, 0)]);
    }

    #[test]
    fn restriction_blanks_escaping_colours() {
        let a = grid("a b .\nb a .\n. . a");
        let r = a.restrict(&Subgrid::new(vec![0, 1], vec![0, 1]));
        // colour a escapes through (2,2); colour b survives
        assert_eq!(r.num_colours(), 1);
        assert_eq!(r.blank_cells(), vec![(0, 0), (1, 1)]);
    }
}
