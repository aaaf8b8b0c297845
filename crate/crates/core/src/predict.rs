//! Closed-form ask and class-counting zeta functions as rational functions in
//! (q, T), with exact power series expansion at a concrete q.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in T with Laurent-polynomial coefficients in q; keys are
/// (T-exponent, q-exponent).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QTPoly {
    pub terms: BTreeMap<(u32, i64), BigInt>,
}

impl QTPoly {
    pub fn one() -> Self {
        QTPoly::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, qexp: i64, texp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((texp, qexp), BigInt::from(c));
        }
        QTPoly { terms }
    }

    /// 1 + c·q^a·T.
    pub fn linear(c: i64, a: i64) -> Self {
        QTPoly::one().add(&QTPoly::monomial(c, a, 1))
    }

    pub fn from_terms(terms: &[(i64, i64, u32)]) -> Self {
        terms.iter().fold(QTPoly::default(), |acc, &(c, a, t)| acc.add(&QTPoly::monomial(c, a, t)))
    }

    pub fn add(&self, other: &QTPoly) -> QTPoly {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        QTPoly { terms }
    }

    pub fn mul(&self, other: &QTPoly) -> QTPoly {
        let mut out = QTPoly::default();
        for ((t1, a1), c1) in &self.terms {
            for ((t2, a2), c2) in &other.terms {
                let mut m = BTreeMap::new();
                m.insert((t1 + t2, a1 + a2), c1 * c2);
                out = out.add(&QTPoly { terms: m });
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> QTPoly {
        (0..k).fold(QTPoly::one(), |acc, _| acc.mul(self))
    }

    fn shift_q(&self, s: i64) -> QTPoly {
        QTPoly { terms: self.terms.iter().map(|(&(t, a), c)| ((t, a + s), c.clone())).collect() }
    }

    fn min_qexp(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, a)| a).min()
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|&(t, _)| t).max().unwrap_or(0)
    }

    /// Coefficients of T^0..=T^deg at a concrete q.
    pub fn eval_q(&self, q: u64) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.degree_t() as usize + 1];
        let qr = BigRational::from_integer(BigInt::from(q));
        for (&(t, a), c) in &self.terms {
            let qa = qr.pow(a as i32);
            out[t as usize] += BigRational::from_integer(c.clone()) * qa;
        }
        out
    }
}

fn fmt_qpow(a: i64) -> String {
    match a {
        0 => String::new(),
        1 => "q".into(),
        _ => format!("q^{a}"),
    }
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // increasing powers of T, and within one power decreasing powers of q
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(t, a), _)| (t, std::cmp::Reverse(a)));
        for (k, (&(t, a), c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (a == 0 && t == 0) {
                parts.push(mag.to_string());
            }
            if a != 0 {
                parts.push(fmt_qpow(a));
            }
            match t {
                0 => {}
                1 => parts.push("T".into()),
                _ => parts.push(format!("T^{t}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// A rational function numerator/denominator in (q, T) kept as a product of
/// factors for display, with the expanded forms used for computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaPrediction {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub numerator: QTPoly,
    pub denominator: QTPoly,
    num_factors: Vec<QTPoly>,
    den_factors: Vec<QTPoly>,
    /// The formula is only asserted for sufficiently large residue
    /// characteristic; mismatches at p ∈ {2, 3} are soft failures.
    pub large_characteristic: bool,
}

impl ZetaPrediction {
    pub fn new(name: &str, params: BTreeMap<String, i64>, num: Vec<QTPoly>, den: Vec<QTPoly>) -> Self {
        let numerator = num.iter().fold(QTPoly::one(), |a, b| a.mul(b));
        let denominator = den.iter().fold(QTPoly::one(), |a, b| a.mul(b));
        // clear negative q-powers from both sides at once
        let m = numerator.min_qexp().into_iter().chain(denominator.min_qexp()).min().unwrap_or(0).min(0);
        ZetaPrediction {
            name: name.into(),
            params,
            numerator: numerator.shift_q(-m),
            denominator: denominator.shift_q(-m),
            num_factors: num,
            den_factors: den,
            large_characteristic: false,
        }
    }

    fn caveat(mut self) -> Self {
        self.large_characteristic = true;
        self
    }

    /// Coefficients of T^0..=T^terms at residue cardinality q.
    pub fn series(&self, q: u64, terms: usize) -> Result<Vec<BigRational>> {
        let num = self.numerator.eval_q(q);
        let den = self.denominator.eval_q(q);
        if den[0].is_zero() {
            return Err(Error::InvalidParameter(format!("{} has no power series at q = {q}", self.name)));
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(terms + 1);
        for n in 0..=terms {
            let mut c = num.get(n).cloned().unwrap_or_else(BigRational::zero);
            for k in 1..=n.min(den.len() - 1) {
                c -= &den[k] * &out[n - k];
            }
            out.push(c / &den[0]);
        }
        Ok(out)
    }

    pub fn coefficient(&self, q: u64, n: usize) -> Result<BigRational> {
        Ok(self.series(q, n)?.swap_remove(n))
    }
}

/// Factored display and the number of distinct factor groups.
fn product_string(fs: &[QTPoly]) -> (String, usize) {
    if fs.is_empty() {
        return ("1".into(), 0);
    }
    let mut out = String::new();
    let mut groups = 0;
    let mut k = 0;
    while k < fs.len() {
        let mut mult = 1;
        while k + mult < fs.len() && fs[k + mult] == fs[k] {
            mult += 1;
        }
        out.push_str(&format!("({})", fs[k]));
        if mult > 1 {
            out.push_str(&format!("^{mult}"));
        }
        k += mult;
        groups += 1;
    }
    (out, groups)
}

impl fmt::Display for ZetaPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, _) = product_string(&self.num_factors);
        let (den, groups) = product_string(&self.den_factors);
        if groups > 1 {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// 1 − q^a·T
fn om(a: i64) -> QTPoly {
    QTPoly::linear(-1, a)
}

pub const CATALOG: &[(&str, &[&str])] = &[
    ("classical_mat", &["d", "e"]),
    ("classical_alt", &["d"]),
    ("classical_sym", &["d"]),
    ("classical_sl", &["d"]),
    ("board", &["d", "e"]),
    ("altboard", &["d", "e"]),
    ("symboard", &["d", "e"]),
    ("triangular", &["d"]),
    ("zero", &["d"]),
    ("n_family", &["N"]),
    ("staircase", &[]),
    ("kite", &["m", "n"]),
    ("constant_rank", &["l", "d", "e"]),
    ("F2d_cc", &["d"]),
    ("F3d_cc", &["d"]),
    ("F42_cc", &[]),
    ("baer_altboard_cc", &["d", "e", "b"]),
];

/// Builds a catalog entry. Parameters are read from `params` by name.
pub fn predict(name: &str, params: &BTreeMap<String, i64>) -> Result<ZetaPrediction> {
    let required = CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownPrediction(name.to_string()))?
        .1;
    let get = |k: &str| -> Result<i64> {
        params.get(k).copied().ok_or_else(|| Error::InvalidParameter(format!("{name} needs parameter {k}")))
    };
    let mut used = BTreeMap::new();
    for k in required {
        used.insert(k.to_string(), get(k)?);
    }
    let positive = |k: &str| -> Result<i64> {
        let v = get(k)?;
        if v < 1 {
            return Err(Error::InvalidParameter(format!("{name}: {k} must be at least 1")));
        }
        Ok(v)
    };
    let nonneg = |k: &str| -> Result<i64> {
        let v = get(k)?;
        if v < 0 {
            return Err(Error::InvalidParameter(format!("{name}: {k} must be non-negative")));
        }
        Ok(v)
    };
    let mk = |num: Vec<QTPoly>, den: Vec<QTPoly>| ZetaPrediction::new(name, used.clone(), num, den);
    let one_minus_t = om(0);
    let pred = match name {
        "classical_mat" | "board" => {
            let (d, e) = (positive("d")?, positive("e")?);
            mk(vec![om(-e)], vec![one_minus_t, om(d - e)])
        }
        "classical_alt" => {
            let d = positive("d")?;
            mk(vec![om(1 - d)], vec![one_minus_t, om(1)])
        }
        "classical_sym" => {
            let d = positive("d")?;
            mk(vec![om(-d)], vec![one_minus_t.clone(), one_minus_t])
        }
        "classical_sl" => {
            let d = positive("d")?;
            if d < 2 {
                return Err(Error::InvalidParameter("classical_sl needs d >= 2".into()));
            }
            mk(vec![om(-d)], vec![one_minus_t.clone(), one_minus_t])
        }
        "altboard" => {
            let (d, e) = (positive("d")?, positive("e")?);
            mk(vec![om(1 - d - e)], vec![one_minus_t, om(1)])
        }
        "symboard" => {
            let (d, e) = (positive("d")?, positive("e")?);
            mk(vec![om(-d - e)], vec![one_minus_t.clone(), one_minus_t])
        }
        "triangular" => {
            let d = nonneg("d")? as usize;
            mk(vec![om(-1); d], vec![one_minus_t; d + 1])
        }
        "zero" => {
            let d = nonneg("d")?;
            mk(vec![], vec![om(d)])
        }
        "n_family" => {
            let n = get("N")?;
            let num = QTPoly::from_terms(&[(1, 0, 0), (n, -1, 1), (-2 * (n + 1), -2, 1), (n, -3, 1), (1, -4, 2)]);
            mk(vec![num], vec![om(-1), one_minus_t.clone(), one_minus_t]).caveat()
        }
        "staircase" => mk(vec![om(-2), om(-2)], vec![om(-1), one_minus_t.clone(), one_minus_t]).caveat(),
        "kite" => {
            let (m, n) = (nonneg("m")?, nonneg("n")?);
            mk(vec![om(1 - n), om(-n)], vec![one_minus_t, om(1), om(m - n)])
        }
        "constant_rank" => {
            let (l, d, e) = (nonneg("l")?, positive("d")?, positive("e")?);
            mk(vec![om(l - e)], vec![one_minus_t, om(l + d - e)])
        }
        "F2d_cc" => {
            let d = positive("d")?;
            mk(vec![om(binom(d - 1, 2))], vec![om(binom(d, 2)), om(binom(d, 2) + 1)])
        }
        "F3d_cc" => {
            let d = positive("d")?;
            let s = (d - 2) * d * (d + 2) / 3;
            mk(
                vec![om((d - 1) * (d * d + d - 3) / 3), om(s)],
                vec![om((d - 1) * d * (d + 1) / 3), om((d * d * d - d + 3) / 3), om((2 * d * d + 3 * d - 11) * d / 6)],
            )
        }
        "F42_cc" => {
            let num = QTPoly::from_terms(&[(1, 7, 3), (-1, 6, 2), (-1, 5, 2), (1, 4, 2), (1, 3, 1), (-1, 2, 1), (-1, 1, 1), (1, 0, 0)]);
            let d1 = QTPoly::from_terms(&[(1, 0, 0), (-1, 7, 2)]);
            mk(vec![num], vec![d1, om(4), om(4)]).caveat()
        }
        "baer_altboard_cc" => {
            let (d, e, b) = (positive("d")?, positive("e")?, nonneg("b")?);
            let l = binom(d + e, 2) - b;
            mk(vec![om(l + 1 - d - e)], vec![om(l), om(l + 1)])
        }
        _ => unreachable!("catalog names are exhaustive"),
    };
    Ok(pred)
}

/// Convenience wrapper taking (name, value) pairs.
pub fn predict_with(name: &str, params: &[(&str, i64)]) -> Result<ZetaPrediction> {
    predict(name, &params.iter().map(|&(k, v)| (k.to_string(), v)).collect())
}

/// q^{(d−2)d(d+2)/3}·(q^{C(d,2)} + q^{d+1} + q^d − q − 1), the class number
/// of the free class-3 group on d generators over F_q.
pub fn f3d_class_number(d: i64, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    let s = ((d - 2) * d * (d + 2) / 3) as u32;
    let inner = qb.pow(binom(d, 2) as u32) + qb.pow((d + 1) as u32) + qb.pow(d as u32) - &qb - 1;
    qb.pow(s) * inner
}
