//! Acceptance suite: one line per criterion, non-zero exit if any criterion
//! fails outright. Soft failures (small-prime caveats) are reported but do
//! not fail the run.

use std::time::Instant;

use askzeta::ask::{
    ask, ask_direct, constant_rank_check, orbital_equivalence_check, random_units, rank_distribution, CheckMode, Method,
    DEFAULT_BUDGET,
};
use askzeta::boardgame::{
    build_grid, greedy_reduce, induce_colouring, is_admissible_game, rainbow, reaches_empty_exhaustive, replay_certificate,
    FamilyKind, GameColouring, GameOptions,
};
use askzeta::colouring::{is_admissible_exhaustive, is_admissible_rect, PartialColouring, UnitAssignment};
use askzeta::finring::{count_roots, RingSpec};
use askzeta::gallery::{self, ones, sl_colouring};
use askzeta::modrep::{
    alpha_rep, alphahat_rep, altboard_rep, board_rep, classic_rep, family_rep, knuth_circ, ltr_rep, symboard_rep, Classic,
    ModuleRepresentation,
};
use askzeta::nilpotent::{adjoint_rep, baer_group_cc, conjugacy_count_bch, free_nilpotent_lie};
use askzeta::predict::{f3d_class_number, predict_with, ZetaPrediction};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Pass,
    Soft,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
}

/// Collects individual checks of one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    soft: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
    /// A mismatch that only counts as soft when `small_prime` holds.
    fn check_caveat(&mut self, ok: bool, small_prime: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            if small_prime {
                self.soft.push(what());
            } else {
                self.failures.push(what());
            }
        }
    }
    fn outcome(self, summary: &str) -> Outcome {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.soft.is_empty() {
            Status::Soft
        } else {
            Status::Pass
        };
        let mut detail = format!("{summary}; {} checks", self.checks);
        if !self.failures.is_empty() {
            detail += &format!("; failures: {}", self.failures.iter().take(5).cloned().collect::<Vec<_>>().join(" | "));
        }
        if !self.soft.is_empty() {
            detail += &format!("; soft: {}", self.soft.join(" | "));
        }
        Outcome { status, detail }
    }
}

type Res = Result<Outcome, String>;

fn e(err: askzeta::Error) -> String {
    err.to_string()
}

fn t1(pred: &ZetaPrediction, q: u64) -> BigRational {
    pred.coefficient(q, 1).expect("prediction expands")
}

fn field(q: u64) -> RingSpec {
    RingSpec::field_of_order(q).unwrap()
}

fn show(r: &BigRational) -> String {
    askzeta::ask::format_rational(r)
}

fn c1_classical() -> Res {
    let mut t = Tally::default();
    for q in [2u64, 3, 5] {
        let ring = field(q);
        for d in 1..=3 {
            for e_ in 1..=3 {
                let rep = classic_rep(Classic::Mat, d, e_);
                let got = ask_direct(&rep, &ring, DEFAULT_BUDGET).map_err(e)?.value;
                let want = t1(&predict_with("classical_mat", &[("d", d as i64), ("e", e_ as i64)]).unwrap(), q);
                t.check(got == want, || format!("Mat {d}x{e_} F_{q}: {} vs {}", show(&got), show(&want)));
            }
            for (kind, name) in [(Classic::Alt, "classical_alt"), (Classic::Sym, "classical_sym"), (Classic::Sl, "classical_sl")] {
                if kind == Classic::Sl && d < 2 {
                    continue;
                }
                let got = ask_direct(&classic_rep(kind, d, d), &ring, DEFAULT_BUDGET).map_err(e)?.value;
                let want = t1(&predict_with(name, &[("d", d as i64)]).unwrap(), q);
                t.check(got == want, || format!("{name} d={d} F_{q}: {} vs {}", show(&got), show(&want)));
            }
        }
    }
    for p in [3u64, 5] {
        let ring = RingSpec::padic(p, 2).unwrap();
        for d in 1..=2 {
            for e_ in 1..=2 {
                let got = ask_direct(&classic_rep(Classic::Mat, d, e_), &ring, DEFAULT_BUDGET).map_err(e)?.value;
                let want = predict_with("classical_mat", &[("d", d as i64), ("e", e_ as i64)]).unwrap().coefficient(p, 2).unwrap();
                t.check(got == want, || format!("Mat {d}x{e_} Z/{p}^2"));
            }
            for (kind, name) in [(Classic::Alt, "classical_alt"), (Classic::Sym, "classical_sym"), (Classic::Sl, "classical_sl")] {
                if kind == Classic::Sl && d < 2 {
                    continue;
                }
                let got = ask_direct(&classic_rep(kind, d, d), &ring, DEFAULT_BUDGET).map_err(e)?.value;
                let want = predict_with(name, &[("d", d as i64)]).unwrap().coefficient(p, 2).unwrap();
                t.check(got == want, || format!("{name} d={d} Z/{p}^2"));
            }
        }
    }
    Ok(t.outcome("Mat/Alt/Sym/sl by direct enumeration vs catalog"))
}

fn game_admissible(gc: &GameColouring, n: usize, level: usize) -> Result<bool, String> {
    let labels: Vec<usize> = (1..=n).collect();
    let v = is_admissible_game(gc, &labels, &labels, level, &GameOptions::default()).map_err(e)?;
    if v.admissible && !v.certificates.iter().all(|c| replay_certificate(gc, &labels, c)) {
        return Err("certificate failed to replay".into());
    }
    Ok(v.admissible)
}

fn c2_verdicts() -> Res {
    let mut t = Tally::default();
    for (name, want) in [("a", true), ("b", true), ("c", false), ("d", false), ("quartic", true), ("quintic", false)] {
        let beta = gallery::named(name).unwrap();
        let got = is_admissible_rect(&beta).admissible;
        t.check(got == want, || format!("grid {name}: {got}"));
    }
    for d in 1..=5 {
        let got = is_admissible_rect(&sl_colouring(d)).admissible;
        t.check(got == (d > 1), || format!("sl colouring d={d}: {got}"));
    }
    let r47 = game_admissible(&rainbow(4, 7).map_err(e)?, 7, 1)?;
    t.check(r47, || "rainbow (4,7) not admissible at level 1".into());
    let r67 = game_admissible(&rainbow(6, 7).map_err(e)?, 7, 1)?;
    t.check(!r67, || "rainbow (6,7) admissible at level 1".into());
    Ok(t.outcome("rectangular verdicts and rainbow level-1 verdicts"))
}

/// Colourings of a d×e grid with at most `max_colours` colours, one per
/// class of colour relabellings (colours numbered by first appearance).
fn all_colourings(d: usize, e: usize, max_colours: usize) -> Vec<PartialColouring> {
    let n = d * e;
    let mut out = Vec::new();
    let mut cells = vec![None; n];
    fn rec(k: usize, used: usize, max: usize, cells: &mut Vec<Option<usize>>, d: usize, e: usize, out: &mut Vec<PartialColouring>) {
        if k == cells.len() {
            out.push(PartialColouring::from_ids(d, e, cells).unwrap());
            return;
        }
        cells[k] = None;
        rec(k + 1, used, max, cells, d, e, out);
        for c in 0..(used + 1).min(max) {
            cells[k] = Some(c);
            rec(k + 1, used.max(c + 1), max, cells, d, e, out);
        }
    }
    rec(0, 0, max_colours, &mut cells, d, e, &mut out);
    let _ = n;
    out
}

fn random_colouring(rng: &mut ChaCha8Rng, d: usize, e: usize, max_colours: usize) -> PartialColouring {
    let cells: Vec<Option<usize>> =
        (0..d * e).map(|_| if rng.gen_bool(0.35) { None } else { Some(rng.gen_range(0..max_colours)) }).collect();
    PartialColouring::from_ids(d, e, &cells).unwrap()
}

fn rho_game(beta: &PartialColouring) -> Result<bool, String> {
    let gc = GameColouring::from_rect(FamilyKind::Rho, beta).map_err(e)?;
    let rows: Vec<usize> = (1..=beta.rows()).collect();
    let cols: Vec<usize> = (1..=beta.cols()).collect();
    Ok(is_admissible_game(&gc, &rows, &cols, 0, &GameOptions::default()).map_err(e)?.admissible)
}

fn c3_oracles() -> Res {
    let mut t = Tally::default();
    let mut count = 0;
    for d in 1..=3 {
        for e_ in 1..=3 {
            for beta in all_colourings(d, e_, 3) {
                count += 1;
                let a = is_admissible_rect(&beta).admissible;
                let b = is_admissible_exhaustive(&beta).admissible;
                let c = rho_game(&beta)?;
                t.check(a == b && b == c, || format!("{d}x{e_} {:?}: {a} {b} {c}", askzeta::colouring::canonical_ids(&beta)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let beta = random_colouring(&mut rng, 4, 4, 4);
        let a = is_admissible_rect(&beta).admissible;
        let b = is_admissible_exhaustive(&beta).admissible;
        let c = rho_game(&beta)?;
        t.check(a == b && b == c, || format!("4x4 {:?}", askzeta::colouring::canonical_ids(&beta)));
    }
    Ok(t.outcome(&format!("closure = exhaustive = rho game on {count} small and 1000 random 4x4 colourings")))
}

/// Master colourings of a symmetric family on [n] with classes coloured
/// from `colours` (None = blank).
fn master_from_classes(family: FamilyKind, n: usize, class_colours: &[Option<usize>]) -> GameColouring {
    let labels: Vec<usize> = (1..=n).collect();
    let grid = build_grid(family, &labels, &labels).unwrap();
    let class_of = |cell: (usize, usize)| grid.classes.iter().position(|cl| cl.contains(&cell)).unwrap();
    let colour_of = grid.cells.iter().map(|&c| class_colours[class_of(c)]).collect();
    let ncol = class_colours.iter().flatten().max().map_or(0, |m| m + 1);
    GameColouring::new(grid, colour_of, (0..ncol).map(|c| format!("c{}", c + 1)).collect()).unwrap()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n).map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect()).collect()
}

fn compare_greedy(t: &mut Tally, gc: &GameColouring, what: &dyn Fn() -> String) {
    let g = greedy_reduce(gc).remaining.is_empty();
    let x = reaches_empty_exhaustive(gc);
    t.check(g == x, || format!("{}: greedy {g} exhaustive {x}", what()));
}

fn c4_greedy() -> Res {
    let mut t = Tally::default();
    let mut count = 0;
    for d in 1..=3 {
        for e_ in 1..=3 {
            for beta in all_colourings(d, e_, 3) {
                let gc = GameColouring::from_rect(FamilyKind::Rho, &beta).map_err(e)?;
                count += 1;
                compare_greedy(&mut t, &gc, &|| format!("rho {:?}", askzeta::colouring::canonical_ids(&beta)));
            }
        }
    }
    for family in [FamilyKind::Gamma, FamilyKind::Sigma] {
        let nclasses = build_grid(family, &[1, 2, 3], &[1, 2, 3]).unwrap().classes.len();
        let mut assignments = vec![vec![]];
        for _ in 0..nclasses {
            assignments = assignments
                .into_iter()
                .flat_map(|a: Vec<Option<usize>>| {
                    let used = a.iter().flatten().max().map_or(0, |m| m + 1);
                    let mut next = vec![];
                    let mut blank = a.clone();
                    blank.push(None);
                    next.push(blank);
                    for c in 0..(used + 1).min(3) {
                        let mut v = a.clone();
                        v.push(Some(c));
                        next.push(v);
                    }
                    next
                })
                .collect();
        }
        for a in &assignments {
            let master = master_from_classes(family, 3, a);
            for h in subsets(3) {
                for j in subsets(3) {
                    let g = build_grid(family, &h, &j).unwrap();
                    let gc = induce_colouring(&master, &g);
                    count += 1;
                    compare_greedy(&mut t, &gc, &|| format!("{} {a:?} H={h:?} J={j:?}", family.name()));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..500 {
        let family = [FamilyKind::Rho, FamilyKind::Gamma, FamilyKind::Sigma][k % 3];
        let gc = if family == FamilyKind::Rho {
            GameColouring::from_rect(family, &random_colouring(&mut rng, 4, 4, 4)).unwrap()
        } else {
            let nclasses = build_grid(family, &[1, 2, 3, 4], &[1, 2, 3, 4]).unwrap().classes.len();
            let a: Vec<Option<usize>> =
                (0..nclasses).map(|_| if rng.gen_bool(0.4) { None } else { Some(rng.gen_range(0..4)) }).collect();
            let master = master_from_classes(family, 4, &a);
            let pick = |rng: &mut ChaCha8Rng| loop {
                let s: Vec<usize> = (1..=4).filter(|_| rng.gen_bool(0.7)).collect();
                if !s.is_empty() {
                    break s;
                }
            };
            let (h, j) = (pick(&mut rng), pick(&mut rng));
            induce_colouring(&master, &build_grid(family, &h, &j).unwrap())
        };
        count += 1;
        compare_greedy(&mut t, &gc, &|| format!("random #{k}"));
    }
    Ok(t.outcome(&format!("greedy = move-tree search on {count} instances")))
}

fn unit_family(beta: &PartialColouring, p: u64, seed: u64) -> Vec<UnitAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![ones(beta)];
    for _ in 0..5 {
        out.push(random_units(beta.rows(), beta.cols(), p, &mut rng));
    }
    out
}

fn c5_board() -> Res {
    let mut t = Tally::default();
    let cases: Vec<(&str, PartialColouring)> = vec![
        ("a", gallery::named("a").unwrap()),
        ("b", gallery::named("b").unwrap()),
        ("quartic", gallery::named("quartic").unwrap()),
        ("sl2", sl_colouring(2)),
        ("sl3", sl_colouring(3)),
        ("sl4", sl_colouring(4)),
        ("sl5", sl_colouring(5)),
    ];
    for (name, beta) in &cases {
        let (d, e_) = (beta.rows() as i64, beta.cols() as i64);
        let pred = predict_with("board", &[("d", d), ("e", e_)]).unwrap();
        for q in [3u64, 5, 7] {
            for (k, u) in unit_family(beta, q, 50 + q).iter().enumerate() {
                let rep = board_rep(beta, u).map_err(e)?;
                let got = ask(&rep, &field(q), Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
                t.check(got == t1(&pred, q), || format!("{name} u#{k} F_{q}: {}", show(&got)));
            }
        }
        if d == 3 {
            let z25 = RingSpec::padic(5, 2).unwrap();
            for (k, u) in unit_family(beta, 5, 99).iter().enumerate() {
                let rep = board_rep(beta, u).map_err(e)?;
                let got = ask(&rep, &z25, Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
                let want = pred.coefficient(5, 2).unwrap();
                t.check(got == want, || format!("{name} u#{k} Z/25: {}", show(&got)));
            }
        }
    }
    Ok(t.outcome("Board of admissible colourings matches Mat, 6 unit matrices each"))
}

fn c6_alt_sym() -> Res {
    let mut t = Tally::default();
    let mut count = 0;
    for (d, e_) in [(2usize, 2usize), (2, 3)] {
        let alt_pred = predict_with("altboard", &[("d", d as i64), ("e", e_ as i64)]).unwrap();
        let sym_pred = predict_with("symboard", &[("d", d as i64), ("e", e_ as i64)]).unwrap();
        for beta in all_colourings(d, e_, d * e_).into_iter().filter(|b| is_admissible_rect(b).admissible) {
            count += 1;
            let ids = askzeta::colouring::canonical_ids(&beta);
            for q in [3u64, 5] {
                let mut units = vec![ones(&beta)];
                let mut rng = ChaCha8Rng::seed_from_u64(60 + q + count as u64);
                units.push(random_units(d, e_, q, &mut rng));
                for (k, u) in units.iter().enumerate() {
                    let alt = altboard_rep(&beta, u).map_err(e)?;
                    let got = ask(&alt, &field(q), Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
                    t.check(got == t1(&alt_pred, q), || format!("alt {ids:?} u#{k} F_{q}: {}", show(&got)));
                    let sym = symboard_rep(&beta, u).map_err(e)?;
                    let got = ask(&sym, &field(q), Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
                    t.check(got == t1(&sym_pred, q), || format!("sym {ids:?} u#{k} F_{q}: {}", show(&got)));
                }
            }
        }
    }
    Ok(t.outcome(&format!("AltBoard/SymBoard of all {count} admissible 2x2 and 2x3 colourings")))
}

fn c7_failures() -> Res {
    let mut t = Tally::default();
    for q in [5u64, 7] {
        let small = q <= 3;
        for name in ["c", "d"] {
            let beta = gallery::named(name).unwrap();
            let n = if name == "c" { 2 } else { count_roots(&[1, 1, 1], &field(q)).map_err(e)? as i64 };
            let rep = board_rep(&beta, &ones(&beta)).map_err(e)?;
            let got = ask(&rep, &field(q), Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
            let want = t1(&predict_with("n_family", &[("N", n)]).unwrap(), q);
            let mat = t1(&predict_with("board", &[("d", 3), ("e", 3)]).unwrap(), q);
            t.check_caveat(got == want, small, || format!("M({name}) F_{q}: {} vs {}", show(&got), show(&want)));
            t.check(got != mat, || format!("M({name}) F_{q} unexpectedly equals ask(Mat_3)"));
        }
    }
    Ok(t.outcome("non-admissible boards follow the N-family, not Mat"))
}

fn c8_rank() -> Res {
    let mut t = Tally::default();
    let quartic = gallery::named("quartic").unwrap();
    let qrep = board_rep(&quartic, &ones(&quartic)).map_err(e)?;
    for q in [3u64, 5, 7, 17] {
        let f = field(q);
        let rd = rank_distribution(&qrep, &f, DEFAULT_BUDGET).map_err(e)?;
        let n = count_roots(&[1, 0, 0, 0, 1], &f).map_err(e)?;
        let want = BigUint::from((n + 1) * (q - 1));
        t.check(rd.count(0) == BigUint::from(1u32), || "count(0) != 1".into());
        t.check_caveat(rd.count(1) == want, q <= 3, || format!("quartic F_{q}: rank-1 {} vs {want}", rd.count(1)));
    }
    let quintic = gallery::named("quintic").unwrap();
    let nrep = board_rep(&quintic, &ones(&quintic)).map_err(e)?;
    let stair = predict_with("staircase", &[]).unwrap();
    for q in [5u64, 7, 11] {
        let f = field(q);
        let rd = rank_distribution(&nrep, &f, DEFAULT_BUDGET).map_err(e)?;
        let n = count_roots(&[-1, 1, 0, 0, 0, 1], &f).map_err(e)?;
        let want = BigUint::from((n + 1) * (q - 1));
        t.check_caveat(rd.count(1) == want, q <= 3, || format!("quintic F_{q}: rank-1 {} vs {want}", rd.count(1)));
        let got = ask(&nrep, &f, Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
        t.check(rd.ask(3) == got, || format!("rank distribution ask differs at F_{q}"));
        t.check_caveat(got == t1(&stair, q), q <= 3, || format!("quintic ask F_{q}: {}", show(&got)));
        let s = ask(&gallery::staircase_rep(), &f, Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
        t.check(s == t1(&stair, q), || format!("staircase ask F_{q}: {}", show(&s)));
    }
    Ok(t.outcome("rank-1 counts via root counts; quintic ask equals staircase"))
}

fn c9_constant_rank() -> Res {
    let mut t = Tally::default();
    let sets = subsets(3);
    for q in [3u64, 5] {
        let f = field(q);
        for i in &sets {
            for j in &sets {
                for fam in [FamilyKind::Rho, FamilyKind::Sigma] {
                    let rep = family_rep(fam, i, j);
                    let r = constant_rank_check(&rep, &f, 0, CheckMode::Exhaustive, DEFAULT_BUDGET).map_err(e)?;
                    t.check(r.passed(), || format!("{} {i:?} {j:?} F_{q}: {:?}", fam.name(), r.violations.first()));
                }
            }
            let rep = family_rep(FamilyKind::Gamma, i, i);
            let r = constant_rank_check(&rep, &f, 1, CheckMode::Exhaustive, DEFAULT_BUDGET).map_err(e)?;
            t.check(r.passed(), || format!("gamma {i:?} F_{q}: {:?}", r.violations.first()));
        }
    }
    let z25 = RingSpec::padic(5, 2).unwrap();
    let full = vec![1, 2, 3];
    let sampled: Vec<(FamilyKind, Vec<usize>, Vec<usize>, usize)> = vec![
        (FamilyKind::Rho, vec![1, 2], full.clone(), 0),
        (FamilyKind::Rho, full.clone(), full.clone(), 0),
        (FamilyKind::Sigma, full.clone(), full.clone(), 0),
        (FamilyKind::Sigma, vec![1, 2], vec![2, 3], 0),
        (FamilyKind::Gamma, full.clone(), full.clone(), 1),
    ];
    for (k, (fam, i, j, l)) in sampled.into_iter().enumerate() {
        let rep = family_rep(fam, &i, &j);
        let r = constant_rank_check(&rep, &z25, l, CheckMode::Sample { count: 10_000, seed: 90 + k as u64 }, DEFAULT_BUDGET)
            .map_err(e)?;
        t.check(r.passed(), || format!("{} {i:?} {j:?} Z/25: {:?}", fam.name(), r.violations.first()));
    }
    Ok(t.outcome("constant rank of rho, sigma (level 0) and gamma (level 1)"))
}

/// Printed circ matrices: entry k > 0 is X_k, k < 0 is −X_{|k|}, 0 is zero.
const C_FIXTURE: [[i8; 6]; 12] = [
    [-2, 1, 0, 0, 0, 0],
    [-3, 0, 1, 0, 0, 0],
    [0, -3, 2, 0, 0, 0],
    [-4, 0, 0, 1, 0, 0],
    [-5, 0, 0, 0, 1, 0],
    [-6, 0, 0, 0, 0, 1],
    [0, -4, 0, 2, 0, 0],
    [0, -5, 0, 0, 2, 0],
    [0, -6, 0, 0, 0, 2],
    [0, 0, -4, 3, 0, 0],
    [0, 0, -5, 0, 3, 0],
    [0, 0, -6, 0, 0, 3],
];
const CHAT_FIXTURE: [[i8; 6]; 11] = [
    [-2, 1, 0, 0, 0, 0],
    [-3, 0, 1, 0, 0, 0],
    [0, -3, 2, 0, 0, 0],
    [-4, 0, 0, 1, 0, 0],
    [-5, 0, 0, 0, 1, 0],
    [-6, 0, 4, -3, 0, 1],
    [0, -4, 0, 2, 0, 0],
    [0, -5, -4, 3, 2, 0],
    [0, -6, 0, 0, 0, 2],
    [0, 0, -5, 0, 3, 0],
    [0, 0, -6, 0, 0, 3],
];

fn matches_fixture(rep: &ModuleRepresentation, fixture: &[[i8; 6]]) -> bool {
    let circ = knuth_circ(rep);
    rep.num_gens() == fixture.len()
        && fixture.iter().enumerate().all(|(b, row)| {
            row.iter().enumerate().all(|(j, &code)| {
                let mut want = vec![0i64; 6];
                if code != 0 {
                    want[code.unsigned_abs() as usize - 1] = code.signum() as i64;
                }
                circ.form(b, j) == want
            })
        })
}

fn c10_jacobi() -> Res {
    let mut t = Tally::default();
    let (a, ah) = (alpha_rep(3), alphahat_rep(3));
    t.check(matches_fixture(&a, &C_FIXTURE), || "alpha(3) circ differs from the 12x6 fixture".into());
    t.check(matches_fixture(&ah, &CHAT_FIXTURE), || "alphahat(3) circ differs from the 11x6 fixture".into());
    let r = orbital_equivalence_check(&a, &ah, &field(5), CheckMode::Exhaustive, DEFAULT_BUDGET).map_err(e)?;
    t.check(r.tested == 4096 && r.passed(), || format!("F_5: tested {} violations {}", r.tested, r.violation_count));
    let z25 = RingSpec::padic(5, 2).unwrap();
    let r = orbital_equivalence_check(&a, &ah, &z25, CheckMode::Sample { count: 10_000, seed: 10 }, DEFAULT_BUDGET).map_err(e)?;
    t.check(r.tested == 10_000 && r.passed(), || format!("Z/25: violations {}", r.violation_count));
    Ok(t.outcome("fixtures reproduced; profiles agree on 4096 + 10^4 points"))
}

fn c11_kite() -> Res {
    let mut t = Tally::default();
    for d in [2i64, 3] {
        let pred = predict_with("kite", &[("m", d * (d - 1) / 2), ("n", d)]).unwrap();
        for q in [3u64, 5] {
            let got = ask(&alpha_rep(d as usize), &field(q), Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
            t.check(got == t1(&pred, q), || format!("alpha({d}) F_{q}: {} vs {}", show(&got), show(&t1(&pred, q))));
        }
    }
    Ok(t.outcome("ask of alpha([d]) equals the threshold-graph formula"))
}

fn c12_theorem_e() -> Res {
    let mut t = Tally::default();
    let g = free_nilpotent_lie(2, 3).map_err(e)?;
    let pred = predict_with("F3d_cc", &[("d", 2)]).unwrap();
    for p in [5u64, 7] {
        let f = field(p);
        let cc = conjugacy_count_bch(&g, &f, 10_000_000).map_err(e)?;
        let poly = p * p * p + p * p - 1;
        t.check(cc == poly, || format!("F_(3,2)(F_{p}): {cc} vs {poly}"));
        t.check(BigInt::from(cc) == f3d_class_number(2, p), || "class number formula".into());
        t.check(BigRational::from_integer(cc.into()) == t1(&pred, p), || "series coefficient".into());
        let ad = ask(&adjoint_rep(&g), &f, Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
        t.check(ad == BigRational::from_integer(cc.into()), || format!("ask(ad) F_{p}: {}", show(&ad)));
    }
    // the class-3, 3-generator case through alpha and alphahat
    let f5 = field(5);
    let a = ask(&alpha_rep(3), &f5, Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
    let ah = ask(&alphahat_rep(3), &f5, Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
    t.check(a == ah, || format!("alpha vs alphahat: {} vs {}", show(&a), show(&ah)));
    let shifted = &ah * BigRational::from_integer(BigInt::from(5u32).pow(8));
    let want = f3d_class_number(3, 5);
    t.check(shifted == BigRational::from_integer(want.clone()), || format!("5^8 ask(alphahat) = {} vs {want}", show(&shifted)));
    let p3 = predict_with("F3d_cc", &[("d", 3)]).unwrap();
    t.check(t1(&p3, 5) == BigRational::from_integer(want), || "F3d_cc d=3 coefficient".into());
    Ok(t.outcome("cc(F_(3,2)(F_p)) = p^3+p^2-1 by brute force; (3,3) only through alphahat (direct group count out of reach)"))
}

fn c13_baer() -> Res {
    let mut t = Tally::default();
    let sl2 = sl_colouring(2);
    let modules = vec![("Alt_3", classic_rep(Classic::Alt, 3, 3)), ("AltBoard(sl_2)", altboard_rep(&sl2, &ones(&sl2)).map_err(e)?)];
    for (name, m) in &modules {
        for p in [3u64, 5] {
            let f = field(p);
            let cc = baer_group_cc(m, &f, 10_000_000).map_err(e)?;
            let a = ask(m, &f, Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
            let want = a * BigRational::from_integer(BigInt::from(p).pow(m.num_gens() as u32));
            t.check(BigRational::from_integer(cc.into()) == want, || format!("{name} F_{p}: cc {cc} vs {}", show(&want)));
        }
    }
    let pred = predict_with("baer_altboard_cc", &[("d", 2), ("e", 2), ("b", 1)]).unwrap();
    let cc = baer_group_cc(&modules[1].1, &field(5), 10_000_000).map_err(e)?;
    t.check(BigRational::from_integer(cc.into()) == t1(&pred, 5), || format!("shifted altboard formula at q=5: {cc}"));
    Ok(t.outcome("Baer class numbers equal p^l ask(M)"))
}

fn random_rep(rng: &mut ChaCha8Rng) -> ModuleRepresentation {
    let (r, c, g) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(0..=4));
    let gens = (0..g).map(|_| (0..r * c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    ModuleRepresentation::new(
        (0..g).map(|k| format!("g{k}")).collect(),
        (1..=r).map(|i| i.to_string()).collect(),
        (1..=c).map(|j| j.to_string()).collect(),
        gens,
    )
    .unwrap()
}

fn c14_methods() -> Res {
    let mut t = Tally::default();
    let rings = [field(2), field(3), RingSpec::padic(2, 2).unwrap(), RingSpec::padic(3, 2).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for k in 0..200 {
        let rep = random_rep(&mut rng);
        for ring in &rings {
            let a = ask(&rep, ring, Method::Direct, DEFAULT_BUDGET).map_err(e)?.value;
            let b = ask(&rep, ring, Method::Orbit, DEFAULT_BUDGET).map_err(e)?.value;
            t.check(a == b, || format!("rep #{k} over {}: {} vs {}", ring.label(), show(&a), show(&b)));
        }
    }
    Ok(t.outcome("direct = orbit on 200 random representations x 4 rings"))
}

fn c15_ltr() -> Res {
    let mut t = Tally::default();
    let pred = predict_with("triangular", &[("d", 4)]).unwrap();
    for q in [3u64, 5] {
        let f = field(q);
        let l = ask(&ltr_rep(2), &f, Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
        let tr = ask(&classic_rep(Classic::Tr, 4, 4), &f, Method::Auto, DEFAULT_BUDGET).map_err(e)?.value;
        t.check(l == tr, || format!("F_{q}: L_2 {} vs tr_4 {}", show(&l), show(&tr)));
        t.check(tr == t1(&pred, q), || format!("F_{q}: tr_4 {} vs formula", show(&tr)));
    }
    Ok(t.outcome("L_2 and tr_4 share the triangular formula"))
}

fn main() {
    let criteria: Vec<(u32, &str, f64, fn() -> Res)> = vec![
        (1, "classical formulas", 10.0, c1_classical),
        (2, "admissibility verdicts", 5.0, c2_verdicts),
        (3, "admissibility oracles agree", 60.0, c3_oracles),
        (4, "greedy completeness", 60.0, c4_greedy),
        (5, "admissible boards match Mat", 120.0, c5_board),
        (6, "AltBoard / SymBoard formulas", 300.0, c6_alt_sym),
        (7, "non-admissible N-family", 30.0, c7_failures),
        (8, "rank distributions", 120.0, c8_rank),
        (9, "constant rank", 60.0, c9_constant_rank),
        (10, "Jacobi fixtures and orbital profiles", 60.0, c10_jacobi),
        (11, "threshold-graph formula", 120.0, c11_kite),
        (12, "free class-3 class numbers", 300.0, c12_theorem_e),
        (13, "Baer consistency", 120.0, c13_baer),
        (14, "direct vs orbit", 120.0, c14_methods),
        (15, "L_2 vs tr_4", 30.0, c15_ltr),
    ];
    let mut worst = Status::Pass;
    for (id, title, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|msg| Outcome { status: Status::Fail, detail: format!("error: {msg}") });
        let secs = start.elapsed().as_secs_f64();
        let mut status = outcome.status;
        let mut detail = outcome.detail;
        if secs > limit {
            status = Status::Fail;
            detail += &format!("; exceeded {limit} s");
        }
        let label = match status {
            Status::Pass => "PASS",
            Status::Soft => "SOFT-FAIL",
            Status::Fail => "FAIL",
        };
        println!("criterion {id:>2} {label:<9} {title} ({secs:.2} s): {detail}");
        worst = worst.max(status);
    }
    if worst == Status::Fail {
        std::process::exit(1);
    }
}
