//! Average kernel sizes by exhaustive enumeration, ask zeta coefficients,
//! rank distributions, and the numerical constant-rank and orbital checks.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finring::{big_pow, divisor_profile, DivisorProfile, RingMatrix, RingSpec};
use crate::modrep::{knuth_circ, ModuleRepresentation};
use crate::predict::ZetaPrediction;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Orbit,
    Auto,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "orbit" => Ok(Method::Orbit),
            "auto" => Ok(Method::Auto),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Orbit => "orbit",
            Method::Auto => "auto",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AskResult {
    pub value: BigRational,
    pub module_size: BigUint,
    pub method: Method,
}

pub fn rational_json(r: &BigRational) -> Value {
    json!({"num": r.numer().to_string(), "den": r.denom().to_string()})
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pow_rational(p: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(big_pow(p, e.unsigned_abs() as u32)));
    if e >= 0 {
        base
    } else {
        base.recip()
    }
}

/// Enumerates every sum Σ_t k_t·delta_t (0 ≤ k_t < order_t) of a family of
/// rows×cols matrices and histograms the row-space exponents returned by
/// elimination. Work is split on the most significant digits so the result
/// does not depend on the thread count.
struct SumEnumeration<'a> {
    ring: &'a RingSpec,
    rows: usize,
    cols: usize,
    deltas: Vec<Vec<u64>>,
    orders: Vec<u64>,
}

impl<'a> SumEnumeration<'a> {
    fn size(&self) -> Option<u128> {
        self.orders.iter().try_fold(1u128, |acc, &o| acc.checked_mul(o as u128))
    }

    fn check_budget(&self, budget: u128) -> Result<u128> {
        match self.size() {
            Some(n) if n <= budget => Ok(n),
            Some(n) => Err(Error::BudgetExceeded { needed: n, budget }),
            None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
        }
    }

    fn add_scaled(&self, acc: &mut [u64], t: usize, k: u64) {
        if k == 0 {
            return;
        }
        let r = self.ring;
        let s = r.from_u64(k);
        for (a, &d) in acc.iter_mut().zip(&self.deltas[t]) {
            if d != 0 {
                *a = r.add(*a, r.mul(s, d));
            }
        }
    }

    fn histogram(&self, budget: u128) -> Result<Vec<u64>> {
        self.check_budget(budget)?;
        let width = self.rows * self.cols;
        let bins = self.rows.min(self.cols) * self.ring.n() as usize + 1;
        let ndig = self.orders.len();
        // Digits [split, ndig) form the parallel prefix.
        let mut split = ndig;
        let mut prefix: u64 = 1;
        while split > 0 && prefix < 512 {
            split -= 1;
            prefix *= self.orders[split];
        }
        if split == 0 && ndig > 0 && prefix > 1 && self.orders.iter().product::<u64>() < 4096 {
            // tiny enumeration: one task
            split = ndig;
            prefix = 1;
        }
        let inner = &self.orders[..split];
        let outer = &self.orders[split..];
        let run = |mut index: u64| -> Vec<u64> {
            let mut hist = vec![0u64; bins];
            let mut acc = vec![0u64; width];
            for (t, &o) in outer.iter().enumerate() {
                self.add_scaled(&mut acc, split + t, index % o);
                index /= o;
            }
            let mut digits = vec![0u64; inner.len()];
            let mut scratch = vec![0u64; width];
            loop {
                scratch.copy_from_slice(&acc);
                let k = self.ring.eliminate_in_place(&mut scratch, self.rows, self.cols, None);
                hist[k as usize] += 1;
                let mut t = 0;
                loop {
                    if t == inner.len() {
                        return hist;
                    }
                    for (a, &d) in acc.iter_mut().zip(&self.deltas[t]) {
                        if d != 0 {
                            *a = self.ring.add(*a, d);
                        }
                    }
                    digits[t] += 1;
                    if digits[t] < inner[t] {
                        break;
                    }
                    digits[t] = 0;
                    t += 1;
                }
            }
        };
        let hist = (0..prefix)
            .into_par_iter()
            .map(run)
            .reduce(|| vec![0u64; bins], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
        Ok(hist)
    }
}

fn direct_enumeration<'a>(rep: &ModuleRepresentation, ring: &'a RingSpec) -> SumEnumeration<'a> {
    let mut deltas = Vec::new();
    let mut orders = Vec::new();
    for g in &rep.gens {
        for (gen, order) in ring.additive_generators() {
            deltas.push(g.iter().map(|&a| ring.mul(gen, ring.from_int(a))).collect());
            orders.push(order);
        }
    }
    SumEnumeration { ring, rows: rep.num_rows(), cols: rep.num_cols(), deltas, orders }
}

fn orbit_enumeration<'a>(rep: &ModuleRepresentation, ring: &'a RingSpec) -> SumEnumeration<'a> {
    let (nb, nj) = (rep.num_gens(), rep.num_cols());
    let mut deltas = Vec::new();
    let mut orders = Vec::new();
    for i in 0..rep.num_rows() {
        for (gen, order) in ring.additive_generators() {
            let mut d = vec![0u64; nb * nj];
            for b in 0..nb {
                for j in 0..nj {
                    d[b * nj + j] = ring.mul(gen, ring.from_int(rep.entry(b, i, j)));
                }
            }
            deltas.push(d);
            orders.push(order);
        }
    }
    SumEnumeration { ring, rows: nb, cols: nj, deltas, orders }
}

fn module_size(rep: &ModuleRepresentation, ring: &RingSpec) -> Result<BigUint> {
    Ok(big_pow(ring.p(), rep.span_log_p(ring)?))
}

/// ask = |R|^{-|B|} Σ_{c ∈ R^B} |Ker(Σ c_b a_b)|; every element of the module
/// is hit equally often, so this is the average over the module.
pub fn ask_direct(rep: &ModuleRepresentation, ring: &RingSpec, budget: u128) -> Result<AskResult> {
    rep.check_units(ring)?;
    let hist = direct_enumeration(rep, ring).histogram(budget)?;
    let l = ring.log_p_cardinality() as i64;
    let f = ring.f() as i64;
    let top = l * rep.num_rows() as i64 - l * rep.num_gens() as i64;
    let mut value = BigRational::zero();
    for (k, &c) in hist.iter().enumerate() {
        if c > 0 {
            value += BigRational::from_integer(BigInt::from(c)) * pow_rational(ring.p(), top - f * k as i64);
        }
    }
    Ok(AskResult { value, module_size: module_size(rep, ring)?, method: Method::Direct })
}

/// ask = Σ_{x ∈ R^I} |image of C(x)|^{-1}.
pub fn ask_orbit(rep: &ModuleRepresentation, ring: &RingSpec, budget: u128) -> Result<AskResult> {
    rep.check_units(ring)?;
    let hist = orbit_enumeration(rep, ring).histogram(budget)?;
    let f = ring.f() as i64;
    let mut value = BigRational::zero();
    for (k, &c) in hist.iter().enumerate() {
        if c > 0 {
            value += BigRational::from_integer(BigInt::from(c)) * pow_rational(ring.p(), -f * k as i64);
        }
    }
    Ok(AskResult { value, module_size: module_size(rep, ring)?, method: Method::Orbit })
}

/// Picks the enumeration with the smaller point count.
pub fn choose_method(rep: &ModuleRepresentation) -> Method {
    let direct = rep.num_gens() * (rep.num_rows() * rep.num_cols()).max(1);
    let orbit = rep.num_rows() * (rep.num_gens() * rep.num_cols()).max(1);
    if rep.num_gens() < rep.num_rows() || (rep.num_gens() == rep.num_rows() && direct < orbit) {
        Method::Direct
    } else {
        Method::Orbit
    }
}

pub fn ask(rep: &ModuleRepresentation, ring: &RingSpec, method: Method, budget: u128) -> Result<AskResult> {
    match method {
        Method::Direct => ask_direct(rep, ring, budget),
        Method::Orbit => ask_orbit(rep, ring, budget),
        Method::Auto => ask(rep, ring, choose_method(rep), budget),
    }
}

/// ask over Z/p^k for k = 0..=n_max (k = 0 gives 1).
pub fn zeta_coefficients(
    rep: &ModuleRepresentation,
    p: u64,
    n_max: u32,
    method: Method,
    budget: u128,
) -> Result<Vec<BigRational>> {
    let mut out = vec![BigRational::one()];
    for k in 1..=n_max {
        let ring = RingSpec::padic(p, k)?;
        out.push(ask(rep, &ring, method, budget)?.value);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    SoftFail,
    Fail,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::SoftFail => "soft-fail",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub n: u32,
    pub ring: String,
    pub brute: BigRational,
    pub predicted: BigRational,
}

impl CoefficientCheck {
    pub fn matches(&self) -> bool {
        self.brute == self.predicted
    }
}

/// Brute-force ask coefficients against a prediction.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub prediction: String,
    pub coefficients: Vec<CoefficientCheck>,
    pub verdict: Verdict,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coefficients
            .iter()
            .map(|c| {
                json!({
                    "n": c.n,
                    "ring": c.ring,
                    "brute": rational_json(&c.brute),
                    "predicted": rational_json(&c.predicted),
                    "match": c.matches(),
                })
            })
            .collect();
        json!({"prediction": self.prediction, "coefficients": coeffs, "verdict": self.verdict.name()})
    }
}

fn verdict_for(pred: &ZetaPrediction, p: u64, all_match: bool) -> Verdict {
    if all_match {
        Verdict::Pass
    } else if pred.large_characteristic && (p == 2 || p == 3) {
        Verdict::SoftFail
    } else {
        Verdict::Fail
    }
}

/// Compares ask over Z/p^k, k = 1..=n_max, with the series of `pred` at q = p.
pub fn verify_prediction(
    rep: &ModuleRepresentation,
    pred: &ZetaPrediction,
    p: u64,
    n_max: u32,
    method: Method,
    budget: u128,
) -> Result<VerifyReport> {
    let rings = (1..=n_max).map(|k| RingSpec::padic(p, k)).collect::<Result<Vec<_>>>()?;
    verify_on_rings(rep, pred, &rings, method, budget)
}

/// Compares ask over each ring with the coefficient of T^n, n = ring.n(), at
/// q = residue cardinality.
pub fn verify_on_rings(
    rep: &ModuleRepresentation,
    pred: &ZetaPrediction,
    rings: &[RingSpec],
    method: Method,
    budget: u128,
) -> Result<VerifyReport> {
    let mut coefficients = Vec::new();
    for ring in rings {
        let n = ring.n();
        let series = pred.series(ring.residue_cardinality(), n as usize)?;
        let brute = ask(rep, ring, method, budget)?.value;
        coefficients.push(CoefficientCheck { n, ring: ring.label(), brute, predicted: series[n as usize].clone() });
    }
    let all = coefficients.iter().all(CoefficientCheck::matches);
    let p = rings.first().map_or(0, |r| r.p());
    Ok(VerifyReport { prediction: pred.to_string(), coefficients, verdict: verdict_for(pred, p, all) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDistribution {
    pub q: u64,
    /// F_q-dimension of the module.
    pub dim: usize,
    pub counts: BTreeMap<usize, BigUint>,
}

impl RankDistribution {
    pub fn count(&self, r: usize) -> BigUint {
        self.counts.get(&r).cloned().unwrap_or_default()
    }

    /// ask = Σ_r count(r)·q^{|I|−r} / q^{dim}.
    pub fn ask(&self, rows: usize) -> BigRational {
        let mut total = BigRational::zero();
        for (&r, c) in &self.counts {
            total += BigRational::from_integer(BigInt::from(c.clone())) * pow_rational(self.q, rows as i64 - r as i64);
        }
        total / pow_rational(self.q, self.dim as i64)
    }

    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> =
            self.counts.iter().map(|(r, c)| (r.to_string(), Value::String(c.to_string()))).collect();
        json!({"q": self.q, "dim": self.dim, "counts": counts})
    }
}

/// Number of module elements of each rank over a finite field.
pub fn rank_distribution(rep: &ModuleRepresentation, field: &RingSpec, budget: u128) -> Result<RankDistribution> {
    if !field.is_field() {
        return Err(Error::NotAField);
    }
    rep.check_units(field)?;
    let hist = direct_enumeration(rep, field).histogram(budget)?;
    let dim = rep.rank_over(field)?;
    let q = field.cardinality();
    // each element is hit q^{|B| - dim} times
    let mult = BigUint::from(q).pow((rep.num_gens() - dim) as u32);
    let counts = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(r, &c)| (r, BigUint::from(c) / &mult))
        .collect();
    Ok(RankDistribution { q, dim, counts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheckReport {
    pub ring: String,
    pub tested: u64,
    /// First violations (at most 10), as points of R^I.
    pub violations: Vec<Vec<u64>>,
    pub violation_count: u64,
}

impl PointCheckReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.ring,
            "tested": self.tested,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "pass": self.passed(),
        })
    }
}

const MAX_REPORTED: usize = 10;

fn points_exhaustive(ring: &RingSpec, dim: usize, budget: u128) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
    let card = ring.cardinality();
    let total = (card as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok((0..total).map(move |mut idx| {
        (0..dim)
            .map(|_| {
                let d = (idx % card as u128) as u64;
                idx /= card as u128;
                d
            })
            .collect()
    }))
}

fn random_unit(ring: &RingSpec, rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let x = rng.gen_range(0..ring.cardinality());
        if ring.is_unit(x) {
            return x;
        }
    }
}

fn scan(
    ring: &RingSpec,
    dim: usize,
    mode: CheckMode,
    budget: u128,
    admissible: impl Fn(&[u64]) -> bool + Sync,
    sample: impl Fn(&mut ChaCha8Rng) -> Vec<u64>,
    bad: impl Fn(&[u64]) -> Result<bool> + Sync,
) -> Result<PointCheckReport> {
    let points: Vec<Vec<u64>> = match mode {
        CheckMode::Exhaustive => points_exhaustive(ring, dim, budget)?.filter(|x| admissible(x)).collect(),
        CheckMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| sample(&mut rng)).collect()
        }
    };
    let flags: Vec<bool> = points.par_iter().map(|x| bad(x)).collect::<Result<_>>()?;
    let violation_count = flags.iter().filter(|&&b| b).count() as u64;
    let violations = points.iter().zip(&flags).filter(|(_, &b)| b).take(MAX_REPORTED).map(|(x, _)| x.clone()).collect();
    Ok(PointCheckReport { ring: ring.label(), tested: points.len() as u64, violations, violation_count })
}

/// Coker of a B×J matrix as a sorted list of |J| valuations, cap meaning a
/// free summand.
fn coker_type(profile: &DivisorProfile, ncols: usize) -> Vec<u32> {
    let mut v = profile.valuations.clone();
    v.resize(ncols, profile.cap);
    v.sort_unstable();
    v
}

/// Checks that Coker C(x) ≅ R^ℓ for every x with a unit coordinate
/// (exhaustive) or for sampled points with a unit coordinate.
pub fn constant_rank_check(
    rep: &ModuleRepresentation,
    ring: &RingSpec,
    level: usize,
    mode: CheckMode,
    budget: u128,
) -> Result<PointCheckReport> {
    rep.check_units(ring)?;
    let circ = knuth_circ(rep);
    let dim = rep.num_rows();
    let nj = rep.num_cols();
    if level > nj {
        return Err(Error::InvalidParameter(format!("level {level} exceeds |J| = {nj}")));
    }
    let mut expected = vec![0u32; nj - level];
    expected.extend(std::iter::repeat_n(ring.n(), level));
    scan(
        ring,
        dim,
        mode,
        budget,
        |x| x.iter().any(|&c| ring.is_unit(c)),
        |rng| {
            let mut x: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..ring.cardinality())).collect();
            if dim > 0 {
                let k = rng.gen_range(0..dim);
                x[k] = random_unit(ring, rng);
            }
            x
        },
        |x| Ok(coker_type(&divisor_profile(&circ.specialize_at(ring, x)?), nj) != expected),
    )
}

/// Compares the cokernels of C_big(x) and C_sub(x) at every x with all
/// coordinates units (exhaustive, or sampled).
pub fn orbital_equivalence_check(
    big: &ModuleRepresentation,
    sub: &ModuleRepresentation,
    ring: &RingSpec,
    mode: CheckMode,
    budget: u128,
) -> Result<PointCheckReport> {
    if big.num_rows() != sub.num_rows() || big.num_cols() != sub.num_cols() {
        return Err(Error::ShapeMismatch("orbital comparison needs equal I and J".into()));
    }
    big.check_units(ring)?;
    sub.check_units(ring)?;
    let (cb, cs) = (knuth_circ(big), knuth_circ(sub));
    let dim = big.num_rows();
    let nj = big.num_cols();
    scan(
        ring,
        dim,
        mode,
        budget,
        |x| x.iter().all(|&c| ring.is_unit(c)),
        |rng| (0..dim).map(|_| random_unit(ring, rng)).collect(),
        |x| {
            let a = coker_type(&divisor_profile(&cb.specialize_at(ring, x)?), nj);
            let b = coker_type(&divisor_profile(&cs.specialize_at(ring, x)?), nj);
            Ok(a != b)
        },
    )
}

/// Uniformly random unit matrix with entries among the ring's units
/// represented by small integers coprime to p.
pub fn random_units(d: usize, e: usize, p: u64, rng: &mut ChaCha8Rng) -> crate::colouring::UnitAssignment {
    let bound = (p as i64 * p as i64).max(4);
    let u = (0..d * e)
        .map(|_| loop {
            let x = rng.gen_range(1..bound);
            if !(x as u64).is_multiple_of(p) {
                break if rng.gen_bool(0.5) { x } else { -x };
            }
        })
        .collect();
    crate::colouring::UnitAssignment::new(d, e, u).expect("non-zero units")
}

pub fn ring_matrix_of(rep: &ModuleRepresentation, ring: &RingSpec, coeffs: &[u64]) -> Result<RingMatrix> {
    let gens = rep.specialize(ring)?;
    let mut m = RingMatrix::zero(ring, rep.num_rows(), rep.num_cols());
    for (g, &c) in gens.iter().zip(coeffs) {
        for (a, &x) in m.entries.iter_mut().zip(&g.entries) {
            *a = ring.add(*a, ring.mul(c, x));
        }
    }
    Ok(m)
}
