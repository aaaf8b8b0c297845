//! Module representations as lists of integer generator matrices, and the
//! constructions that produce them: relation modules of partial colourings,
//! classical modules, the families ρ/γ/σ, Knuth duals, adjacency
//! representations of graphs and the algebras' α/α̂.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde_json::{json, Map, Value};

use crate::boardgame::FamilyKind;
use crate::colouring::{PartialColouring, UnitAssignment};
use crate::error::{Error, Result};
use crate::finring::{RingMatrix, RingSpec};

/// θ: Z^B → Hom(Z^I, Z^J), stored as one |I|×|J| integer matrix per basis
/// element. `units` lists integers that must be units in any ring the
/// representation is specialised to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRepresentation {
    pub basis: Vec<String>,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// Row-major generator matrices, one per basis label.
    pub gens: Vec<Vec<i64>>,
    pub units: Vec<i64>,
}

fn check_unique(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::InvalidParameter(format!("duplicate {what} label {l:?}")));
        }
    }
    Ok(())
}

fn labels<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

impl ModuleRepresentation {
    pub fn new(basis: Vec<String>, rows: Vec<String>, cols: Vec<String>, gens: Vec<Vec<i64>>) -> Result<Self> {
        check_unique(&basis, "basis")?;
        check_unique(&rows, "row")?;
        check_unique(&cols, "column")?;
        if basis.len() != gens.len() {
            return Err(Error::ShapeMismatch(format!("{} labels for {} generators", basis.len(), gens.len())));
        }
        let size = rows.len() * cols.len();
        if let Some((k, _)) = gens.iter().enumerate().find(|(_, g)| g.len() != size) {
            return Err(Error::ShapeMismatch(format!(
                "generator {:?} is not {}x{}",
                basis[k],
                rows.len(),
                cols.len()
            )));
        }
        Ok(ModuleRepresentation { basis, rows, cols, gens, units: Vec::new() })
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }
    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, b: usize, i: usize, j: usize) -> i64 {
        self.gens[b][i * self.cols.len() + j]
    }

    fn with_units(mut self, units: impl IntoIterator<Item = i64>) -> Self {
        let mut set: BTreeSet<i64> = self.units.iter().copied().collect();
        set.extend(units.into_iter().filter(|&u| u != 1 && u != -1));
        self.units = set.into_iter().collect();
        self
    }

    /// Checks the unit requirements for `ring`.
    pub fn check_units(&self, ring: &RingSpec) -> Result<()> {
        for &u in &self.units {
            if !ring.is_unit(ring.from_int(u)) {
                return Err(Error::NonUnitCoefficient { value: u, context: Some(ring.label()) });
            }
        }
        Ok(())
    }

    /// The generator matrices over `ring`.
    pub fn specialize(&self, ring: &RingSpec) -> Result<Vec<RingMatrix>> {
        self.check_units(ring)?;
        self.gens
            .iter()
            .map(|g| RingMatrix::from_ints(ring, self.rows.len(), self.cols.len(), g))
            .collect()
    }

    /// Rank of the span of the generators over a field (or the log of the
    /// span size over Z/p^n, measured in copies of p^(n f)... precisely,
    /// log_p of the span size).
    pub fn span_log_p(&self, ring: &RingSpec) -> Result<u32> {
        self.check_units(ring)?;
        let width = self.rows.len() * self.cols.len();
        let stacked: Vec<i64> = self.gens.iter().flatten().copied().collect();
        let m = RingMatrix::from_ints(ring, self.gens.len(), width, &stacked)?;
        Ok(crate::finring::image_log_p(&m))
    }

    /// F_q-dimension of the span over a field.
    pub fn rank_over(&self, ring: &RingSpec) -> Result<usize> {
        if !ring.is_field() {
            return Err(Error::NotAField);
        }
        Ok((self.span_log_p(ring)? / ring.f()) as usize)
    }

    pub fn is_alternating(&self, b: usize) -> bool {
        let d = self.rows.len();
        self.rows == self.cols
            && (0..d).all(|i| self.entry(b, i, i) == 0 && (0..d).all(|j| self.entry(b, i, j) == -self.entry(b, j, i)))
    }

    fn row_index(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r == label)
    }
    fn col_index(&self, label: &str) -> Option<usize> {
        self.cols.iter().position(|c| c == label)
    }

    pub fn to_json(&self) -> Value {
        let mut gens = Map::new();
        for (label, g) in self.basis.iter().zip(&self.gens) {
            let rows: Vec<Value> = g.chunks(self.cols.len().max(1)).map(|r| json!(r)).collect();
            let rows = if self.cols.is_empty() { vec![json!([]); self.rows.len()] } else { rows };
            gens.insert(label.clone(), Value::Array(rows));
        }
        let mut obj = Map::new();
        obj.insert("B".into(), json!(self.basis));
        obj.insert("I".into(), json!(self.rows));
        obj.insert("J".into(), json!(self.cols));
        obj.insert("gens".into(), Value::Object(gens));
        if !self.units.is_empty() {
            obj.insert("units".into(), json!(self.units));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("representation JSON: {msg}"));
        let label_list = |key: &str| -> Result<Vec<String>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing array {key:?}")))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(bad(&format!("labels in {key:?} must be strings or integers"))),
                })
                .collect()
        };
        let basis = label_list("B")?;
        let rows = label_list("I")?;
        let cols = label_list("J")?;
        let gens_obj = v.get("gens").and_then(Value::as_object).ok_or_else(|| bad("missing object \"gens\""))?;
        let mut gens = Vec::with_capacity(basis.len());
        for label in &basis {
            let m = gens_obj.get(label).and_then(Value::as_array).ok_or_else(|| bad(&format!("no matrix for {label:?}")))?;
            if m.len() != rows.len() {
                return Err(Error::ShapeMismatch(format!("generator {label:?} has {} rows", m.len())));
            }
            let mut flat = Vec::with_capacity(rows.len() * cols.len());
            for r in m {
                let r = r.as_array().ok_or_else(|| bad("matrix rows must be arrays"))?;
                if r.len() != cols.len() {
                    return Err(Error::ShapeMismatch(format!("generator {label:?} has a row of length {}", r.len())));
                }
                for x in r {
                    flat.push(x.as_i64().ok_or_else(|| bad("entries must be integers"))?);
                }
            }
            gens.push(flat);
        }
        if gens_obj.len() != basis.len() {
            return Err(bad("\"gens\" has labels outside \"B\""));
        }
        let units: Vec<i64> = match v.get("units") {
            None => Vec::new(),
            Some(u) => u
                .as_array()
                .ok_or_else(|| bad("\"units\" must be an array"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("units must be integers")))
                .collect::<Result<_>>()?,
        };
        Ok(ModuleRepresentation::new(basis, rows, cols, gens)?.with_units(units))
    }
}

fn unit_matrix(rows: usize, cols: usize, i: usize, j: usize) -> Vec<i64> {
    let mut g = vec![0; rows * cols];
    g[i * cols + j] = 1;
    g
}

/// Board(β, u): the matrices with Σ_{(i,j) ∈ fibre(c)} u_ij x_ij = 0 for
/// every colour c. Generators: e_ij for blank cells, and for every coloured
/// cell other than its colour's least cell σ, u_σ e_ij − u_ij e_σ.
pub fn board_rep(beta: &PartialColouring, u: &UnitAssignment) -> Result<ModuleRepresentation> {
    let (d, e) = (beta.rows(), beta.cols());
    if (u.d, u.e) != (d, e) {
        return Err(Error::ShapeMismatch("unit matrix does not match the grid".into()));
    }
    if let Some(&bad) = u.u.iter().find(|&&x| x == 0) {
        return Err(Error::NonUnitCoefficient { value: bad, context: None });
    }
    let pivots: Vec<(usize, usize)> = (0..beta.num_colours()).map(|c| beta.fibre(c)[0]).collect();
    let mut basis = Vec::new();
    let mut gens = Vec::new();
    let mut used_units = Vec::new();
    for i in 0..d {
        for j in 0..e {
            match beta.colour(i, j) {
                None => {
                    basis.push(format!("e({},{})", i + 1, j + 1));
                    gens.push(unit_matrix(d, e, i, j));
                }
                Some(c) => {
                    let (si, sj) = pivots[c];
                    if (si, sj) == (i, j) {
                        continue;
                    }
                    let mut g = vec![0; d * e];
                    g[i * e + j] = u.get(si, sj);
                    g[si * e + sj] = -u.get(i, j);
                    basis.push(format!("r({},{})", i + 1, j + 1));
                    gens.push(g);
                    used_units.push(u.get(si, sj));
                    used_units.push(u.get(i, j));
                }
            }
        }
    }
    Ok(ModuleRepresentation::new(basis, labels(1..=d), labels(1..=e), gens)?.with_units(used_units))
}

/// Board generators with the colour pivots chosen as the greatest cell of
/// each fibre instead of the least.
pub fn board_rep_last_pivot(beta: &PartialColouring, u: &UnitAssignment) -> Result<ModuleRepresentation> {
    let (d, e) = (beta.rows(), beta.cols());
    let mut rev_cells = Vec::with_capacity(d * e);
    let mut rev_units = Vec::with_capacity(d * e);
    for k in (0..d * e).rev() {
        let (i, j) = (k / e, k % e);
        rev_cells.push(beta.colour(i, j));
        rev_units.push(u.get(i, j));
    }
    let rb = PartialColouring::from_ids(d, e, &rev_cells)?;
    let ru = UnitAssignment::new(d, e, rev_units)?;
    let rep = board_rep(&rb, &ru)?;
    // undo the point reflection of the grid
    let gens = rep.gens.iter().map(|g| g.iter().rev().copied().collect()).collect();
    let basis = (0..rep.basis.len()).map(|k| format!("g{}", k + 1)).collect();
    Ok(ModuleRepresentation::new(basis, labels(1..=d), labels(1..=e), gens)?.with_units(rep.units))
}

fn block_embed(x: &[i64], d: usize, e: usize, lower_sign: i64) -> Vec<i64> {
    let n = d + e;
    let mut g = vec![0; n * n];
    for i in 0..d {
        for j in 0..e {
            let v = x[i * e + j];
            g[i * n + d + j] = v;
            g[(d + j) * n + i] = lower_sign * v;
        }
    }
    g
}

fn diagonal_blocks(d: usize, e: usize, symmetric: bool) -> (Vec<String>, Vec<Vec<i64>>) {
    let n = d + e;
    let mut basis = Vec::new();
    let mut gens = Vec::new();
    for (lo, hi) in [(0, d), (d, n)] {
        for i in lo..hi {
            let start = if symmetric { i } else { i + 1 };
            for j in start..hi {
                let mut g = vec![0; n * n];
                g[i * n + j] = 1;
                if i != j {
                    g[j * n + i] = if symmetric { 1 } else { -1 };
                }
                basis.push(format!("{}({},{})", if symmetric { "s" } else { "a" }, i + 1, j + 1));
                gens.push(g);
            }
        }
    }
    (basis, gens)
}

fn bordered(beta: &PartialColouring, u: &UnitAssignment, symmetric: bool) -> Result<ModuleRepresentation> {
    let (d, e) = (beta.rows(), beta.cols());
    let board = board_rep(beta, u)?;
    let sign = if symmetric { 1 } else { -1 };
    let mut basis: Vec<String> = board.basis.clone();
    let mut gens: Vec<Vec<i64>> = board.gens.iter().map(|x| block_embed(x, d, e, sign)).collect();
    let (db, dg) = diagonal_blocks(d, e, symmetric);
    basis.extend(db);
    gens.extend(dg);
    Ok(ModuleRepresentation::new(basis, labels(1..=d + e), labels(1..=d + e), gens)?.with_units(board.units))
}

/// AltBoard(β, u) ⊂ Alt_{d+e}: [[a, x], [−xᵀ, b]] with x ∈ Board(β, u).
pub fn altboard_rep(beta: &PartialColouring, u: &UnitAssignment) -> Result<ModuleRepresentation> {
    bordered(beta, u, false)
}

/// SymBoard(β, u) ⊂ Sym_{d+e}: [[a, x], [xᵀ, b]] with x ∈ Board(β, u).
pub fn symboard_rep(beta: &PartialColouring, u: &UnitAssignment) -> Result<ModuleRepresentation> {
    bordered(beta, u, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classic {
    Mat,
    Alt,
    Sym,
    Sl,
    Tr,
}

impl Classic {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mat" => Ok(Classic::Mat),
            "alt" => Ok(Classic::Alt),
            "sym" => Ok(Classic::Sym),
            "sl" => Ok(Classic::Sl),
            "tr" => Ok(Classic::Tr),
            other => Err(Error::InvalidParameter(format!("unknown classical module {other:?}"))),
        }
    }
}

/// Standard integer bases of Mat_{d×e}, Alt_d, Sym_d, sl_d and the upper
/// triangular tr_d; `e` is only read for `Mat`.
pub fn classic_rep(kind: Classic, d: usize, e: usize) -> ModuleRepresentation {
    let cols = if kind == Classic::Mat { e } else { d };
    let mut basis = Vec::new();
    let mut gens = Vec::new();
    let mut push = |label: String, entries: &[(usize, usize, i64)]| {
        let mut g = vec![0; d * cols];
        for &(i, j, v) in entries {
            g[i * cols + j] += v;
        }
        basis.push(label);
        gens.push(g);
    };
    match kind {
        Classic::Mat => {
            for i in 0..d {
                for j in 0..e {
                    push(format!("e({},{})", i + 1, j + 1), &[(i, j, 1)]);
                }
            }
        }
        Classic::Alt => {
            for i in 0..d {
                for j in i + 1..d {
                    push(format!("a({},{})", i + 1, j + 1), &[(i, j, 1), (j, i, -1)]);
                }
            }
        }
        Classic::Sym => {
            for i in 0..d {
                for j in i..d {
                    if i == j {
                        push(format!("s({0},{0})", i + 1), &[(i, i, 1)]);
                    } else {
                        push(format!("s({},{})", i + 1, j + 1), &[(i, j, 1), (j, i, 1)]);
                    }
                }
            }
        }
        Classic::Sl => {
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        push(format!("e({},{})", i + 1, j + 1), &[(i, j, 1)]);
                    }
                }
            }
            for i in 0..d.saturating_sub(1) {
                push(format!("h({})", i + 1), &[(i, i, 1), (i + 1, i + 1, -1)]);
            }
        }
        Classic::Tr => {
            for i in 0..d {
                for j in i..d {
                    push(format!("e({},{})", i + 1, j + 1), &[(i, j, 1)]);
                }
            }
        }
    }
    ModuleRepresentation::new(basis, labels(1..=d), labels(1..=cols), gens).expect("classical bases are well formed")
}

/// ρ(I,J), γ(I,J) and σ(I,J) with B = I×J, E(I,J), S(I,J).
pub fn family_rep(family: FamilyKind, rows: &[usize], cols: &[usize]) -> ModuleRepresentation {
    let rows: Vec<usize> = rows.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let cols: Vec<usize> = cols.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let ri = |x: usize| rows.iter().position(|&r| r == x);
    let ci = |x: usize| cols.iter().position(|&c| c == x);
    let (nr, nc) = (rows.len(), cols.len());
    let mut basis = Vec::new();
    let mut gens = Vec::new();
    let put = |g: &mut Vec<i64>, i: usize, j: usize, v: i64| g[ri(i).unwrap() * nc + ci(j).unwrap()] += v;
    match family {
        FamilyKind::Rho => {
            for &i in &rows {
                for &j in &cols {
                    let mut g = vec![0; nr * nc];
                    put(&mut g, i, j, 1);
                    basis.push(format!("({i},{j})"));
                    gens.push(g);
                }
            }
        }
        FamilyKind::Gamma | FamilyKind::Sigma => {
            let mut pairs = BTreeSet::new();
            for &i in &rows {
                for &j in &cols {
                    if family == FamilyKind::Sigma || i != j {
                        pairs.insert((i.min(j), i.max(j)));
                    }
                }
            }
            let in_i = |x: usize| ri(x).is_some();
            let in_j = |x: usize| ci(x).is_some();
            for (u, v) in pairs {
                let mut g = vec![0; nr * nc];
                if u == v {
                    put(&mut g, u, u, 1);
                } else {
                    let both = in_i(u) && in_j(u) && in_i(v) && in_j(v);
                    let sign = if family == FamilyKind::Gamma { -1 } else { 1 };
                    if both {
                        put(&mut g, u, v, 1);
                        put(&mut g, v, u, sign);
                    } else if in_i(u) && in_j(v) {
                        put(&mut g, u, v, 1);
                    } else {
                        put(&mut g, v, u, sign);
                    }
                }
                basis.push(format!("{{{u},{v}}}"));
                gens.push(g);
            }
        }
    }
    ModuleRepresentation::new(basis, labels(rows), labels(cols), gens).expect("family bases are well formed")
}

/// The ∘-dual view: C(x) is the B×J matrix [Σ_i x_i a_{bij}].
#[derive(Clone, Debug)]
pub struct OrbitMatrix {
    pub rep: ModuleRepresentation,
}

impl OrbitMatrix {
    /// Linear form of entry (b, j) as coefficients over I.
    pub fn form(&self, b: usize, j: usize) -> Vec<i64> {
        (0..self.rep.num_rows()).map(|i| self.rep.entry(b, i, j)).collect()
    }

    /// |B|·|J| linear forms, row-major.
    pub fn forms(&self) -> Vec<Vec<i64>> {
        let r = &self.rep;
        (0..r.num_gens()).flat_map(|b| (0..r.num_cols()).map(move |j| self.form(b, j))).collect()
    }

    pub fn specialize_at(&self, ring: &RingSpec, x: &[u64]) -> Result<RingMatrix> {
        let r = &self.rep;
        if x.len() != r.num_rows() {
            return Err(Error::ShapeMismatch(format!("point has {} coordinates, I has {}", x.len(), r.num_rows())));
        }
        r.check_units(ring)?;
        let (nb, nj) = (r.num_gens(), r.num_cols());
        let mut m = RingMatrix::zero(ring, nb, nj);
        for b in 0..nb {
            for j in 0..nj {
                let mut acc = 0;
                for (i, &xi) in x.iter().enumerate() {
                    let a = r.entry(b, i, j);
                    if a != 0 && xi != 0 {
                        acc = ring.add(acc, ring.mul(xi, ring.from_int(a)));
                    }
                }
                m.set(b, j, acc);
            }
        }
        Ok(m)
    }
}

pub fn knuth_circ(rep: &ModuleRepresentation) -> OrbitMatrix {
    OrbitMatrix { rep: rep.clone() }
}

/// The •-dual: basis J, shape I×B, b(j)_{ib} = a_{bij}.
pub fn knuth_bullet(rep: &ModuleRepresentation) -> ModuleRepresentation {
    let (ni, nj, nb) = (rep.num_rows(), rep.num_cols(), rep.num_gens());
    let gens = (0..nj)
        .map(|j| {
            let mut g = vec![0; ni * nb];
            for i in 0..ni {
                for b in 0..nb {
                    g[i * nb + b] = rep.entry(b, i, j);
                }
            }
            g
        })
        .collect();
    ModuleRepresentation::new(rep.cols.clone(), rep.rows.clone(), rep.basis.clone(), gens)
        .expect("dual of a well-formed representation")
        .with_units(rep.units.clone())
}

/// (I′,J′)-restriction: keeps the rows in `rows` and the columns in `cols`.
pub fn restrict_rep(rep: &ModuleRepresentation, rows: &[String], cols: &[String]) -> Result<ModuleRepresentation> {
    let ri: Vec<usize> = rows.iter().map(|l| rep.row_index(l).ok_or(Error::IndexNotSubset)).collect::<Result<_>>()?;
    let ci: Vec<usize> = cols.iter().map(|l| rep.col_index(l).ok_or(Error::IndexNotSubset)).collect::<Result<_>>()?;
    let gens = (0..rep.num_gens())
        .map(|b| ri.iter().flat_map(|&i| ci.iter().map(move |&j| rep.entry(b, i, j))).collect())
        .collect();
    Ok(ModuleRepresentation::new(rep.basis.clone(), rows.to_vec(), cols.to_vec(), gens)?.with_units(rep.units.clone()))
}

/// (Ĩ,J̃)-inflation: zero padding around the original rows and columns.
pub fn inflate_rep(rep: &ModuleRepresentation, rows: &[String], cols: &[String]) -> Result<ModuleRepresentation> {
    if rep.rows.iter().any(|l| !rows.contains(l)) || rep.cols.iter().any(|l| !cols.contains(l)) {
        return Err(Error::IndexNotSubset);
    }
    let nc = cols.len();
    let gens = (0..rep.num_gens())
        .map(|b| {
            let mut g = vec![0; rows.len() * nc];
            for (i, ri) in rep.rows.iter().enumerate() {
                let ti = rows.iter().position(|l| l == ri).unwrap();
                for (j, cj) in rep.cols.iter().enumerate() {
                    let tj = cols.iter().position(|l| l == cj).unwrap();
                    g[ti * nc + tj] = rep.entry(b, i, j);
                }
            }
            g
        })
        .collect();
    Ok(ModuleRepresentation::new(rep.basis.clone(), rows.to_vec(), cols.to_vec(), gens)?.with_units(rep.units.clone()))
}

/// Replaces row and column labels (same lengths).
pub fn relabel(rep: &ModuleRepresentation, rows: Vec<String>, cols: Vec<String>) -> Result<ModuleRepresentation> {
    if rows.len() != rep.num_rows() || cols.len() != rep.num_cols() {
        return Err(Error::ShapeMismatch("relabelling must keep the shape".into()));
    }
    Ok(ModuleRepresentation::new(rep.basis.clone(), rows, cols, rep.gens.clone())?.with_units(rep.units.clone()))
}

/// Sum of two submodules with the same I and J: the union of generators.
/// Basis labels of the second operand are prefixed when they clash.
pub fn sum_rep(a: &ModuleRepresentation, b: &ModuleRepresentation) -> Result<ModuleRepresentation> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::ShapeMismatch("summands must share I and J".into()));
    }
    let mut basis = a.basis.clone();
    for l in &b.basis {
        let mut label = l.clone();
        while basis.contains(&label) {
            label = format!("'{label}");
        }
        basis.push(label);
    }
    let gens = a.gens.iter().chain(&b.gens).cloned().collect();
    Ok(ModuleRepresentation::new(basis, a.rows.clone(), a.cols.clone(), gens)?
        .with_units(a.units.iter().chain(&b.units).copied()))
}

/// L_d = [[tr_d, sl_d], [0, tr_d]] inside tr_{2d}.
pub fn ltr_rep(d: usize) -> ModuleRepresentation {
    let all = labels(1..=2 * d);
    let sl = relabel(&classic_rep(Classic::Sl, d, d), labels(1..=d), labels(d + 1..=2 * d)).unwrap();
    let top = relabel(&classic_rep(Classic::Tr, d, d), labels(1..=d), labels(1..=d)).unwrap();
    let bottom = relabel(&classic_rep(Classic::Tr, d, d), labels(d + 1..=2 * d), labels(d + 1..=2 * d)).unwrap();
    let mut rep = inflate_rep(&sl, &all, &all).unwrap();
    for part in [&top, &bottom] {
        rep = sum_rep(&rep, &inflate_rep(part, &all, &all).unwrap()).unwrap();
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub vertices: Vec<usize>,
    /// Edges (v, w) with v ≤ w; v = w is a loop.
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertices: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let vs: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut es = BTreeSet::new();
        for (v, w) in edges {
            if !vs.contains(&v) || !vs.contains(&w) {
                return Err(Error::IndexNotSubset);
            }
            es.insert((v.min(w), v.max(w)));
        }
        Ok(SimpleGraph { vertices: vs.into_iter().collect(), edges: es.into_iter().collect() })
    }

    pub fn discrete(vertices: Vec<usize>) -> Self {
        SimpleGraph::new(vertices, Vec::new()).unwrap()
    }

    pub fn complete(vertices: Vec<usize>) -> Self {
        let edges = vertices.iter().flat_map(|&v| vertices.iter().filter(move |&&w| v < w).map(move |&w| (v, w))).collect();
        SimpleGraph::new(vertices, edges).unwrap()
    }

    /// The complete graph with a loop at every vertex.
    pub fn looped_complete(vertices: Vec<usize>) -> Self {
        let edges = vertices.iter().flat_map(|&v| vertices.iter().filter(move |&&w| v <= w).map(move |&w| (v, w))).collect();
        SimpleGraph::new(vertices, edges).unwrap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjacencySign {
    Negative,
    Positive,
}

/// B = edges, I = J = vertices; the edge v<w maps to e_vw ∓ e_wv and a loop
/// at v to e_vv.
pub fn adjacency_rep(g: &SimpleGraph, sign: AdjacencySign) -> ModuleRepresentation {
    let n = g.vertices.len();
    let idx = |v: usize| g.vertices.iter().position(|&x| x == v).unwrap();
    let s = if sign == AdjacencySign::Negative { -1 } else { 1 };
    let gens = g
        .edges
        .iter()
        .map(|&(v, w)| {
            let mut m = vec![0; n * n];
            let (a, b) = (idx(v), idx(w));
            m[a * n + b] = 1;
            if a != b {
                m[b * n + a] = s;
            }
            m
        })
        .collect();
    let basis = g.edges.iter().map(|(v, w)| format!("{{{v},{w}}}")).collect();
    ModuleRepresentation::new(basis, labels(g.vertices.iter()), labels(g.vertices.iter()), gens).unwrap()
}

/// Join of graphs on disjoint vertex sets.
pub fn graph_join(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    if g1.vertices.iter().any(|v| g2.vertices.contains(v)) {
        return Err(Error::OverlappingIndexSets);
    }
    let mut edges: Vec<(usize, usize)> = g1.edges.iter().chain(&g2.edges).copied().collect();
    for &v in &g1.vertices {
        for &w in &g2.vertices {
            edges.push((v, w));
        }
    }
    SimpleGraph::new(g1.vertices.iter().chain(&g2.vertices).copied().collect(), edges)
}

/// Δ_m ∨ K_n on vertices 1..m (discrete) and m+1..m+n (complete).
pub fn threshold_graph(m: usize, n: usize) -> SimpleGraph {
    graph_join(&SimpleGraph::discrete((1..=m).collect()), &SimpleGraph::complete((m + 1..=m + n).collect())).unwrap()
}

/// B(I) = I ∪ C(I,2) in order 1..d, {1,2}, {1,3}, ... and D(I) =
/// C(I,2) ∪ I×C(I,2) in order {1,2}, ..., (1,{1,2}), (1,{1,3}), ...
fn alpha_bases(d: usize) -> (Vec<String>, Vec<(usize, usize)>, Vec<(Option<usize>, (usize, usize))>) {
    let pairs: Vec<(usize, usize)> = (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
    let mut b_labels: Vec<String> = labels(1..=d);
    b_labels.extend(pairs.iter().map(|(i, j)| format!("{{{i},{j}}}")));
    let mut d_elems: Vec<(Option<usize>, (usize, usize))> = pairs.iter().map(|&p| (None, p)).collect();
    for h in 1..=d {
        d_elems.extend(pairs.iter().map(|&p| (Some(h), p)));
    }
    (b_labels, pairs, d_elems)
}

fn d_label(x: &(Option<usize>, (usize, usize))) -> String {
    match x {
        (None, (i, j)) => format!("{{{i},{j}}}"),
        (Some(h), (i, j)) => format!("({h},{{{i},{j}}})"),
    }
}

/// α([d]): e_{i<j} ↦ e_ij − e_ji and e_(h,i<j) ↦ e_{h,{i<j}} − e_{{i<j},h}.
pub fn alpha_rep(d: usize) -> ModuleRepresentation {
    let (b_labels, pairs, d_elems) = alpha_bases(d);
    let n = b_labels.len();
    let pair_index = |p: (usize, usize)| d + pairs.iter().position(|&q| q == p).unwrap();
    let gens = d_elems
        .iter()
        .map(|&(h, (i, j))| {
            let mut g = vec![0; n * n];
            let (a, b) = match h {
                None => (i - 1, j - 1),
                Some(h) => (h - 1, pair_index((i, j))),
            };
            g[a * n + b] = 1;
            g[b * n + a] = -1;
            g
        })
        .collect();
    let basis = d_elems.iter().map(d_label).collect();
    ModuleRepresentation::new(basis, b_labels.clone(), b_labels, gens).unwrap()
}

/// α̂([d]) as the restriction of α([d]) to the orthogonal complement of the
/// Jacobi relations, with basis e_{i<j}, e_(i,i<j), e_(j,i<j) and, for
/// i<j<k, e_(i,j<k) − e_(k,i<j) and e_(j,i<k) + e_(k,i<j); ordered by the
/// position of each element's first D-coordinate.
pub fn alphahat_rep(d: usize) -> ModuleRepresentation {
    let alpha = alpha_rep(d);
    let (_, _, d_elems) = alpha_bases(d);
    let pos = |x: (Option<usize>, (usize, usize))| d_elems.iter().position(|&y| y == x).unwrap();
    let mut combos: Vec<Vec<(usize, i64)>> = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            combos.push(vec![(pos((None, (i, j))), 1)]);
            combos.push(vec![(pos((Some(i), (i, j))), 1)]);
            combos.push(vec![(pos((Some(j), (i, j))), 1)]);
        }
    }
    for i in 1..=d {
        for j in i + 1..=d {
            for k in j + 1..=d {
                combos.push(vec![(pos((Some(i), (j, k))), 1), (pos((Some(k), (i, j))), -1)]);
                combos.push(vec![(pos((Some(j), (i, k))), 1), (pos((Some(k), (i, j))), 1)]);
            }
        }
    }
    combos.sort_by_key(|c| c[0].0);
    let size = alpha.num_rows() * alpha.num_cols();
    let mut basis = Vec::new();
    let mut gens = Vec::new();
    for c in &combos {
        let mut g = vec![0; size];
        for &(k, coeff) in c {
            for (x, &a) in g.iter_mut().zip(&alpha.gens[k]) {
                *x += coeff * a;
            }
        }
        let label = c
            .iter()
            .enumerate()
            .map(|(t, &(k, coeff))| {
                let sign = if coeff < 0 { "-" } else if t > 0 { "+" } else { "" };
                format!("{sign}{}", d_label(&d_elems[k]))
            })
            .collect::<String>();
        basis.push(label);
        gens.push(g);
    }
    ModuleRepresentation::new(basis, alpha.rows.clone(), alpha.cols.clone(), gens).unwrap()
}

/// Map from entry positions to linear forms, keyed by (row, column), used to
/// compare a representation's generic matrix with a fixture.
pub fn generic_matrix(rep: &ModuleRepresentation) -> BTreeMap<(usize, usize), Vec<i64>> {
    let mut out = BTreeMap::new();
    for i in 0..rep.num_rows() {
        for j in 0..rep.num_cols() {
            out.insert((i, j), (0..rep.num_gens()).map(|b| rep.entry(b, i, j)).collect());
        }
    }
    out
}
