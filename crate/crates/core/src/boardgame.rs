//! Grids and cell classes of the families ρ, Γ, Σ, induced colourings,
//! column-deleting moves and level-ℓ admissibility with certificates.
//!
//! Index sets are finite sets of natural-number labels below 64; the game
//! itself runs on bitmasks over those labels.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colouring::PartialColouring;
use crate::error::{Error, Result};

pub const MAX_LABEL: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Rho,
    Gamma,
    Sigma,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rho" => Ok(FamilyKind::Rho),
            "gamma" => Ok(FamilyKind::Gamma),
            "sigma" => Ok(FamilyKind::Sigma),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Rho => "rho",
            FamilyKind::Gamma => "gamma",
            FamilyKind::Sigma => "sigma",
        }
    }

    fn has_cell(self, i: usize, j: usize) -> bool {
        self != FamilyKind::Gamma || i != j
    }

    /// Whether cell (i,j) of the family grid pairs with (j,i) when both exist.
    fn pairs(self, i: usize, j: usize) -> bool {
        match self {
            FamilyKind::Rho => false,
            FamilyKind::Gamma | FamilyKind::Sigma => i != j,
        }
    }
}

pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGrid {
    pub family: FamilyKind,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Cells in row-major label order.
    pub cells: Vec<Cell>,
    /// Partition of `cells` into cell classes, each sorted.
    pub classes: Vec<Vec<Cell>>,
}

impl GameGrid {
    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    fn class_of(&self, (i, j): Cell) -> Vec<Cell> {
        let fam = self.family;
        let mut class = vec![(i, j)];
        if fam.pairs(i, j) && self.contains((j, i)) {
            class.push((j, i));
            class.sort_unstable();
        }
        class
    }
}

fn sorted_set(v: &[usize]) -> Result<Vec<usize>> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.last().is_some_and(|&m| m > MAX_LABEL) {
        return Err(Error::InvalidParameter(format!("index labels must be at most {MAX_LABEL}")));
    }
    Ok(v)
}

pub fn build_grid(family: FamilyKind, rows: &[usize], cols: &[usize]) -> Result<GameGrid> {
    let rows = sorted_set(rows)?;
    let cols = sorted_set(cols)?;
    let mut cells = Vec::new();
    for &i in &rows {
        for &j in &cols {
            if family.has_cell(i, j) {
                cells.push((i, j));
            }
        }
    }
    let mut grid = GameGrid { family, rows, cols, cells, classes: Vec::new() };
    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    for &c in &grid.cells {
        if seen.insert(c) {
            let class = grid.class_of(c);
            for &x in &class {
                seen.insert(x);
            }
            classes.push(class);
        }
    }
    grid.classes = classes;
    Ok(grid)
}

/// A partial colouring of a grid, constant on cell classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameColouring {
    pub grid: GameGrid,
    /// Colour per cell of `grid.cells`, `None` = blank.
    pub colour_of: Vec<Option<usize>>,
    pub colour_names: Vec<String>,
}

impl GameColouring {
    pub fn all_blank(grid: GameGrid) -> Self {
        let n = grid.cells.len();
        GameColouring { grid, colour_of: vec![None; n], colour_names: Vec::new() }
    }

    /// Colours given per cell; must be constant on cell classes.
    pub fn new(grid: GameGrid, colour_of: Vec<Option<usize>>, colour_names: Vec<String>) -> Result<Self> {
        if colour_of.len() != grid.cells.len() {
            return Err(Error::ShapeMismatch("one colour per grid cell expected".into()));
        }
        let gc = GameColouring { grid, colour_of, colour_names };
        for class in &gc.grid.classes {
            let c0 = gc.colour(class[0]);
            if class.iter().any(|&x| gc.colour(x) != c0) {
                return Err(Error::InvalidParameter(format!("colouring is not constant on the class {class:?}")));
            }
        }
        if let Some(max) = gc.colour_of.iter().flatten().max() {
            if *max >= gc.colour_names.len() {
                return Err(Error::InvalidParameter("colour id without a name".into()));
            }
        }
        Ok(gc)
    }

    pub fn colour(&self, c: Cell) -> Option<usize> {
        self.grid.cells.binary_search(&c).ok().and_then(|k| self.colour_of[k])
    }

    /// Master colouring from a rectangular colouring: for ρ, rows and
    /// columns are labelled 1..d and 1..e; for Γ and Σ the colouring must be
    /// square and symmetric and uses labels 1..d on both sides (for Γ the
    /// diagonal must be blank).
    pub fn from_rect(family: FamilyKind, beta: &PartialColouring) -> Result<Self> {
        let (d, e) = (beta.rows(), beta.cols());
        if family != FamilyKind::Rho {
            if d != e {
                return Err(Error::ShapeMismatch(format!("{} colouring must be square", family.name())));
            }
            for i in 0..d {
                for j in 0..d {
                    if beta.colour(i, j) != beta.colour(j, i) {
                        return Err(Error::InvalidParameter(format!(
                            "{} colouring must be symmetric: ({},{}) differs from ({},{})",
                            family.name(),
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        )));
                    }
                }
                if family == FamilyKind::Gamma && beta.colour(i, i).is_some() {
                    return Err(Error::InvalidParameter(format!("gamma colouring colours diagonal cell ({0},{0})", i + 1)));
                }
            }
        }
        let rows: Vec<usize> = (1..=d).collect();
        let cols: Vec<usize> = (1..=e).collect();
        let grid = build_grid(family, &rows, &cols)?;
        let colour_of = grid.cells.iter().map(|&(i, j)| beta.colour(i - 1, j - 1)).collect();
        GameColouring::new(grid, colour_of, beta.colour_names().to_vec())
    }

    pub fn num_colours(&self) -> usize {
        let mut seen: Vec<usize> = self.colour_of.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Induced colouring on a subgrid: a cell keeps colour c iff every cell
/// class of colour c meets the subgrid.
pub fn induce_colouring(master: &GameColouring, grid: &GameGrid) -> GameColouring {
    let fast = FastGame::new(master);
    let (hm, jm) = (mask(&grid.rows), mask(&grid.cols));
    let colour_of = grid
        .cells
        .iter()
        .map(|&c| if in_grid(master, c) { fast.induced(c, hm, jm) } else { None })
        .collect();
    GameColouring { grid: grid.clone(), colour_of, colour_names: master.colour_names.clone() }
}

fn in_grid(master: &GameColouring, c: Cell) -> bool {
    master.grid.contains(c)
}

fn mask(v: &[usize]) -> u64 {
    v.iter().fold(0, |m, &i| m | 1 << i)
}

fn unmask(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

/// Cells that are blank and the sole member of their class.
pub fn isolated_blank_cells(gc: &GameColouring) -> Vec<Cell> {
    gc.grid
        .classes
        .iter()
        .filter(|class| class.len() == 1 && gc.colour(class[0]).is_none())
        .map(|class| class[0])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub cell: Cell,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub remaining: Vec<usize>,
    pub moves: Vec<Move>,
}

/// Bitmask view of a colouring: the colour of every cell of the grid it was
/// built from, and for each colour the cell classes carrying it.
struct FastGame {
    family: FamilyKind,
    colour_at: BTreeMap<Cell, usize>,
    classes_of: Vec<Vec<Vec<Cell>>>,
    ambient: (u64, u64),
}

impl FastGame {
    fn new(gc: &GameColouring) -> Self {
        let mut colour_at = BTreeMap::new();
        let ncol = gc.colour_of.iter().flatten().max().map_or(0, |m| m + 1);
        let mut classes_of = vec![Vec::new(); ncol];
        for class in &gc.grid.classes {
            if let Some(c) = gc.colour(class[0]) {
                classes_of[c].push(class.clone());
                for &x in class {
                    colour_at.insert(x, c);
                }
            }
        }
        FastGame { family: gc.grid.family, colour_at, classes_of, ambient: (mask(&gc.grid.rows), mask(&gc.grid.cols)) }
    }

    fn survives(&self, c: usize, hm: u64, jm: u64) -> bool {
        self.classes_of[c].iter().all(|class| class.iter().any(|&(i, j)| hm >> i & 1 == 1 && jm >> j & 1 == 1))
    }

    fn induced(&self, cell: Cell, hm: u64, jm: u64) -> Option<usize> {
        self.colour_at.get(&cell).copied().filter(|&c| self.survives(c, hm, jm))
    }

    fn isolated(&self, (i, j): Cell, hm: u64, jm: u64) -> bool {
        !self.family.pairs(i, j) || !(hm >> j & 1 == 1 && jm >> i & 1 == 1)
    }

    /// Least row-major isolated blank cell of grid (hm, jm).
    fn first_move(&self, hm: u64, jm: u64) -> Option<Cell> {
        self.moves(hm, jm).next()
    }

    fn moves(&self, hm: u64, jm: u64) -> impl Iterator<Item = Cell> + '_ {
        let hm = hm & self.ambient.0;
        let jm = jm & self.ambient.1;
        unmask(hm).into_iter().flat_map(move |i| {
            unmask(jm).into_iter().filter_map(move |j| {
                let c = (i, j);
                (self.family.has_cell(i, j) && self.isolated(c, hm, jm) && self.induced(c, hm, jm).is_none()).then_some(c)
            })
        })
    }

    fn greedy(&self, hm: u64, mut jm: u64) -> (u64, Vec<Move>) {
        let mut log = Vec::new();
        while let Some(c) = self.first_move(hm, jm) {
            jm &= !(1 << c.1);
            log.push(Move { cell: c, column: c.1 });
        }
        (jm, log)
    }
}

/// Deletes the column of the least isolated blank cell until no move is
/// left.
pub fn greedy_reduce(gc: &GameColouring) -> Reduction {
    let fast = FastGame::new(gc);
    let (jm, moves) = fast.greedy(mask(&gc.grid.rows), mask(&gc.grid.cols));
    Reduction { remaining: unmask(jm), moves }
}

/// Greedy reduction of the subgrid (rows, cols) of a colouring.
pub fn greedy_reduce_sub(gc: &GameColouring, rows: &[usize], cols: &[usize]) -> Reduction {
    let fast = FastGame::new(gc);
    let (jm, moves) = fast.greedy(mask(rows), mask(cols));
    Reduction { remaining: unmask(jm), moves }
}

/// Greedy reduction choosing among the available moves with a seeded RNG
/// instead of the least cell.
pub fn random_order_reduce(gc: &GameColouring, seed: u64) -> Reduction {
    let fast = FastGame::new(gc);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hm = mask(&gc.grid.rows);
    let mut jm = mask(&gc.grid.cols);
    let mut log = Vec::new();
    loop {
        let avail: Vec<Cell> = fast.moves(hm, jm).collect();
        let Some(&c) = avail.choose(&mut rng) else { break };
        jm &= !(1 << c.1);
        log.push(Move { cell: c, column: c.1 });
    }
    Reduction { remaining: unmask(jm), moves: log }
}

/// Whether some sequence of moves deletes every column, by exhaustive
/// search of the move tree.
pub fn reaches_empty_exhaustive(gc: &GameColouring) -> bool {
    let fast = FastGame::new(gc);
    let hm = mask(&gc.grid.rows);
    let mut seen = HashSet::new();
    let mut stack = vec![mask(&gc.grid.cols)];
    while let Some(jm) = stack.pop() {
        if jm == 0 {
            return true;
        }
        if !seen.insert(jm) {
            continue;
        }
        for c in fast.moves(hm, jm) {
            stack.push(jm & !(1 << c.1));
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveCertificate {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(serialize_with = "ser_moves")]
    pub moves: Vec<Move>,
}

fn ser_moves<S: serde::Serializer>(moves: &[Move], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(moves.len()))?;
    for m in moves {
        seq.serialize_element(&[m.cell.0, m.cell.1])?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StuckWitness {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    /// The attempted D with the fewest surviving columns.
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    pub surviving: Vec<usize>,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameVerdict {
    pub family: FamilyKind,
    pub level: usize,
    pub admissible: bool,
    /// True when the row subsets H were sampled rather than enumerated.
    pub sampled: bool,
    pub certificates: Vec<MoveCertificate>,
    pub witness: Option<StuckWitness>,
}

#[derive(Clone, Copy, Debug)]
pub struct GameOptions {
    /// Bound on the number of column subsets D tried per H.
    pub subset_budget: u128,
    /// Sample this many row subsets instead of enumerating all of them.
    pub sample_rows: Option<(usize, u64)>,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions { subset_budget: 1_000_000, sample_rows: None }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Subsets of `items` of size `k` in lexicographic order.
fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else { return out };
        idx[pos] += 1;
        for t in pos + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Level-ℓ admissibility of `master` on (rows, cols): for each non-empty H
/// some D of at most `level` columns lets moves clear J∖D.
pub fn is_admissible_game(
    master: &GameColouring,
    rows: &[usize],
    cols: &[usize],
    level: usize,
    opts: &GameOptions,
) -> Result<GameVerdict> {
    let rows = sorted_set(rows)?;
    let cols = sorted_set(cols)?;
    let needed: u128 = (0..=level.min(cols.len())).map(|k| binom(cols.len(), k)).sum();
    if needed > opts.subset_budget {
        return Err(Error::LevelTooLarge { level, needed, budget: opts.subset_budget });
    }
    let d_candidates: Vec<Vec<usize>> = (0..=level.min(cols.len())).flat_map(|k| subsets_of_size(&cols, k)).collect();
    let fast = FastGame::new(master);
    let jm_full = mask(&cols);
    let hs: Vec<u64> = match opts.sample_rows {
        Some((count, seed)) if rows.len() > 12 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| loop {
                    let h = rows.iter().filter(|_| rng.gen_bool(0.5)).fold(0u64, |m, &i| m | 1 << i);
                    if h != 0 {
                        break h;
                    }
                })
                .collect()
        }
        _ => {
            if rows.len() > 20 {
                return Err(Error::BudgetExceeded { needed: 1u128 << rows.len(), budget: 1 << 20 });
            }
            (1u64..1 << rows.len())
                .map(|bits| rows.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).fold(0u64, |m, (_, &i)| m | 1 << i))
                .collect()
        }
    };
    let sampled = opts.sample_rows.is_some() && rows.len() > 12;
    let mut certificates = Vec::new();
    for hm in hs {
        let mut best: Option<(Vec<usize>, u64)> = None;
        let mut found = None;
        for d in &d_candidates {
            let (rest, log) = fast.greedy(hm, jm_full & !mask(d));
            if rest == 0 {
                found = Some((d.clone(), log));
                break;
            }
            if best.as_ref().is_none_or(|(_, b)| rest.count_ones() < b.count_ones()) {
                best = Some((d.clone(), rest));
            }
        }
        match found {
            Some((d, moves)) => certificates.push(MoveCertificate { h: unmask(hm), d, moves }),
            None => {
                let (d, rest) = best.expect("at least the empty D is tried");
                return Ok(GameVerdict {
                    family: master.grid.family,
                    level,
                    admissible: false,
                    sampled,
                    certificates,
                    witness: Some(StuckWitness { h: unmask(hm), d, surviving: unmask(rest), attempts: d_candidates.len() }),
                });
            }
        }
    }
    Ok(GameVerdict { family: master.grid.family, level, admissible: true, sampled, certificates, witness: None })
}

/// Replays a certificate against `master` on the column set `cols`.
pub fn replay_certificate(master: &GameColouring, cols: &[usize], cert: &MoveCertificate) -> bool {
    let fast = FastGame::new(master);
    let hm = mask(&cert.h);
    if cert.d.iter().any(|j| !cols.contains(j)) {
        return false;
    }
    let mut jm = mask(cols) & !mask(&cert.d);
    for m in &cert.moves {
        if m.column != m.cell.1 || !fast.moves(hm, jm).any(|c| c == m.cell) {
            return false;
        }
        jm &= !(1 << m.column);
    }
    jm == 0
}

/// β̂ on (I∪J, I∪J): the class {i,j} with i ∈ I, j ∈ J gets colour β(i,j);
/// all other classes (and the diagonal) are blank. `beta` is indexed by the
/// positions of `rows` and `cols`.
pub fn hat_colouring(beta: &PartialColouring, rows: &[usize], cols: &[usize], family: FamilyKind) -> Result<GameColouring> {
    if family == FamilyKind::Rho {
        return Err(Error::InvalidParameter("the hat construction is defined for gamma and sigma".into()));
    }
    if beta.rows() != rows.len() || beta.cols() != cols.len() {
        return Err(Error::ShapeMismatch("colouring does not match the index sets".into()));
    }
    if rows.iter().any(|i| cols.contains(i)) {
        return Err(Error::OverlappingIndexSets);
    }
    let mut all: Vec<usize> = rows.iter().chain(cols).copied().collect();
    all.sort_unstable();
    let grid = build_grid(family, &all, &all)?;
    let mut lookup = BTreeMap::new();
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            if let Some(c) = beta.colour(a, b) {
                lookup.insert((i, j), c);
                lookup.insert((j, i), c);
            }
        }
    }
    let colour_of = grid.cells.iter().map(|c| lookup.get(c).copied()).collect();
    GameColouring::new(grid, colour_of, beta.colour_names().to_vec())
}

/// The rainbow colouring χ_{b,d} of Γ([d],[d]): {i, i+a} gets colour c_a
/// for 1 ≤ a ≤ b.
pub fn rainbow(b: usize, d: usize) -> Result<GameColouring> {
    let labels: Vec<usize> = (1..=d).collect();
    let grid = build_grid(FamilyKind::Gamma, &labels, &labels)?;
    let colour_of = grid
        .cells
        .iter()
        .map(|&(i, j)| {
            let a = i.abs_diff(j);
            (a <= b).then(|| a - 1)
        })
        .collect();
    GameColouring::new(grid, colour_of, (1..=b).map(|a| format!("c{a}")).collect())
}
