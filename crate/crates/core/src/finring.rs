//! Finite coefficient rings F_p, F_{p^f} and Z/p^n with exact arithmetic,
//! plus the elimination used for ranks, image sizes and divisor profiles.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    PrimeField,
    ExtField,
    PadicQuotient,
}

/// Multiplication and inversion tables for small extension fields.
#[derive(Debug)]
struct ExtTables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

const EXT_TABLE_LIMIT: u64 = 256;
const CARD_LIMIT: u64 = 1 << 62;

/// A finite ring. Elements are `u64` codes in `0..cardinality()`: residues
/// for F_p and Z/p^n, base-p digit strings of polynomial coefficients for
/// F_{p^f}.
#[derive(Clone)]
pub struct RingSpec {
    kind: RingKind,
    p: u64,
    f: u32,
    n: u32,
    modulus: Vec<u64>,
    card: u64,
    /// Modulus for integer arithmetic: p^n, or p for extension fields.
    m: u64,
    tables: Option<Arc<ExtTables>>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({})", self.label())
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.p == other.p
            && self.f == other.f
            && self.n == other.n
            && self.modulus == other.modulus
    }
}
impl Eq for RingSpec {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds a validated ring. `f_or_n` is the extension degree for
/// `ExtField`, the exponent for `PadicQuotient` and must be 1 for
/// `PrimeField`. Without a modulus, extension fields use the monic
/// irreducible polynomial with the smallest code `sum c_k p^k`.
pub fn make_ring(kind: RingKind, p: u64, f_or_n: u32, modulus: Option<&[u64]>) -> Result<RingSpec> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus { p });
    }
    if f_or_n == 0 {
        return Err(Error::InvalidParameter("degree/exponent must be at least 1".into()));
    }
    let card = checked_pow(p, f_or_n)
        .filter(|&c| c <= CARD_LIMIT)
        .ok_or_else(|| Error::InvalidParameter(format!("{p}^{f_or_n} is too large")))?;
    match kind {
        RingKind::PrimeField => {
            if f_or_n != 1 {
                return Err(Error::InvalidParameter("a prime field has degree 1".into()));
            }
            Ok(RingSpec { kind, p, f: 1, n: 1, modulus: Vec::new(), card: p, m: p, tables: None })
        }
        RingKind::PadicQuotient => {
            Ok(RingSpec { kind, p, f: 1, n: f_or_n, modulus: Vec::new(), card, m: card, tables: None })
        }
        RingKind::ExtField => {
            let f = f_or_n as usize;
            let modulus = match modulus {
                Some(g) => {
                    let g: Vec<u64> = g.iter().map(|c| c % p).collect();
                    if g.len() != f + 1 || g[f] != 1 {
                        return Err(Error::InvalidParameter(format!(
                            "modulus must be monic of degree {f}, coefficients listed from the constant term"
                        )));
                    }
                    if !poly::is_irreducible(&g, p) {
                        return Err(Error::ReducibleModulus { p, coeffs: g });
                    }
                    g
                }
                None => poly::least_irreducible(f, p),
            };
            let mut ring = RingSpec { kind, p, f: f_or_n, n: 1, modulus, card, m: p, tables: None };
            if card <= EXT_TABLE_LIMIT && f > 1 {
                ring.tables = Some(Arc::new(ring.build_tables()));
            }
            Ok(ring)
        }
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        make_ring(RingKind::PrimeField, p, 1, None)
    }

    pub fn padic(p: u64, n: u32) -> Result<Self> {
        make_ring(RingKind::PadicQuotient, p, n, None)
    }

    pub fn ext_field(p: u64, f: u32) -> Result<Self> {
        make_ring(RingKind::ExtField, p, f, None)
    }

    /// F_q for a prime power q.
    pub fn field_of_order(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::CompositeModulus { p: q })?;
        if f == 1 {
            Self::prime_field(p)
        } else {
            Self::ext_field(p, f)
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    /// Extension degree (1 unless `ExtField`).
    pub fn f(&self) -> u32 {
        self.f
    }
    /// Exponent n of Z/p^n (1 for fields).
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Modulus polynomial, constant term first (empty unless `ExtField`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn cardinality(&self) -> u64 {
        self.card
    }
    /// Residue field cardinality q = p^f.
    pub fn residue_cardinality(&self) -> u64 {
        self.p.pow(self.f)
    }
    /// e with cardinality = p^e.
    pub fn log_p_cardinality(&self) -> u32 {
        self.f * self.n
    }
    pub fn is_field(&self) -> bool {
        self.n == 1
    }

    pub fn label(&self) -> String {
        match self.kind {
            RingKind::PrimeField => format!("F_{}", self.p),
            RingKind::ExtField => format!("F_{}", self.card),
            RingKind::PadicQuotient => format!("Z/{}", self.card),
        }
    }

    pub fn zero(&self) -> u64 {
        0
    }
    pub fn one(&self) -> u64 {
        1
    }

    /// Image of an integer under Z -> R.
    pub fn from_int(&self, a: i64) -> u64 {
        let m = self.m as i128;
        (a as i128).rem_euclid(m) as u64
    }

    /// Image of an element of Z/p^k (any k) under reduction, used to
    /// specialise integer data given as residues.
    pub fn from_u64(&self, a: u64) -> u64 {
        a % self.m
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.kind == RingKind::ExtField && self.f > 1 {
            self.digitwise(a, b, |x, y| (x + y) % self.p)
        } else {
            let s = a + b;
            if s >= self.m {
                s - self.m
            } else {
                s
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.kind == RingKind::ExtField && self.f > 1 {
            self.digitwise(a, 0, |x, _| (self.p - x) % self.p)
        } else if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.kind == RingKind::ExtField && self.f > 1 {
            if let Some(t) = &self.tables {
                return t.mul[(a * self.card + b) as usize] as u64;
            }
            self.poly_mul(a, b)
        } else {
            mul_mod(a, b, self.m)
        }
    }

    /// Inverse of a unit, `None` for non-units.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if self.kind == RingKind::ExtField && self.f > 1 {
            if a == 0 {
                return None;
            }
            if let Some(t) = &self.tables {
                return Some(t.inv[a as usize] as u64);
            }
            Some(self.pow(a, self.card - 2))
        } else {
            inv_mod(a, self.m)
        }
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        if self.kind == RingKind::ExtField {
            a != 0
        } else {
            !a.is_multiple_of(self.p)
        }
    }

    /// p-adic valuation capped at n; over a field 0 for non-zero and 1 for 0.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.n;
        }
        if self.kind == RingKind::ExtField {
            return 0;
        }
        let mut v = 0;
        let mut x = a;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Elements generating (R, +) together with their additive orders; the
    /// map from digit tuples to sums is a bijection onto R.
    pub fn additive_generators(&self) -> Vec<(u64, u64)> {
        match self.kind {
            RingKind::ExtField if self.f > 1 => (0..self.f).map(|k| (self.p.pow(k), self.p)).collect(),
            _ => vec![(1, self.m)],
        }
    }

    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u64, u64) -> u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += op(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        (0..self.f)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn poly_mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let mut r = poly::rem(&prod, &self.modulus, self.p);
        r.resize(self.f as usize, 0);
        self.undigits(&r)
    }

    fn build_tables(&self) -> ExtTables {
        let q = self.card;
        let mut mul = vec![0u32; (q * q) as usize];
        let mut inv = vec![0u32; q as usize];
        for a in 0..q {
            for b in 0..q {
                let c = self.poly_mul(a, b);
                mul[(a * q + b) as usize] = c as u32;
                if c == 1 {
                    inv[a as usize] = b as u32;
                }
            }
        }
        ExtTables { mul, inv }
    }

    /// Row-reduces the `rows`×`cols` row-major block `a` in place and returns
    /// `sum (n - v)` over the pivot valuations v, i.e. log_{p^f} of the size
    /// of the row space.
    pub fn eliminate_in_place(&self, a: &mut [u64], rows: usize, cols: usize, vals: Option<&mut Vec<u32>>) -> u32 {
        let mut pivots: Option<&mut Vec<u32>> = vals;
        if let Some(v) = pivots.as_deref_mut() {
            v.clear();
        }
        let n = self.n;
        let mut total = 0u32;
        let steps = rows.min(cols);
        let field_like = self.kind == RingKind::ExtField || n == 1;
        for s in 0..steps {
            // Pivot of least valuation in the trailing block.
            let mut best: Option<(usize, usize, u32)> = None;
            'search: for i in s..rows {
                let row = &a[i * cols..(i + 1) * cols];
                for (j, &x) in row.iter().enumerate().skip(s) {
                    if x != 0 {
                        let v = if field_like { 0 } else { self.valuation(x) };
                        if best.is_none_or(|(_, _, bv)| v < bv) {
                            best = Some((i, j, v));
                            if v == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((pi, pj, v)) = best else { break };
            if pi != s {
                for j in 0..cols {
                    a.swap(pi * cols + j, s * cols + j);
                }
            }
            if pj != s {
                for i in s..rows {
                    a.swap(i * cols + pj, i * cols + s);
                }
            }
            total += n - v;
            if let Some(vs) = pivots.as_deref_mut() {
                vs.push(v);
            }
            let pivot = a[s * cols + s];
            if field_like {
                let inv = self.inv(pivot).expect("non-zero field element");
                for k in s + 1..rows {
                    let b = a[k * cols + s];
                    if b == 0 {
                        continue;
                    }
                    let factor = self.mul(b, inv);
                    for j in s..cols {
                        let t = self.mul(factor, a[s * cols + j]);
                        a[k * cols + j] = self.sub(a[k * cols + j], t);
                    }
                }
            } else {
                let pv = self.p.pow(v);
                let uinv = inv_mod(pivot / pv, self.m).expect("unit part");
                for k in s + 1..rows {
                    let b = a[k * cols + s];
                    if b == 0 {
                        continue;
                    }
                    let factor = mul_mod(b / pv, uinv, self.m);
                    for j in s..cols {
                        let t = mul_mod(factor, a[s * cols + j], self.m);
                        a[k * cols + j] = self.sub(a[k * cols + j], t);
                    }
                }
            }
        }
        total
    }
}

/// Decomposes q = p^f.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut f = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        f += 1;
    }
    (x == 1).then_some((p, f))
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// A dense matrix over a finite ring, entries canonical and row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u64>,
}

impl RingMatrix {
    pub fn new(ring: &RingSpec, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= ring.cardinality()) {
            return Err(Error::InvalidParameter(format!("{bad} is not a canonical element of {}", ring.label())));
        }
        Ok(RingMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_ints(ring: &RingSpec, rows: usize, cols: usize, ints: &[i64]) -> Result<Self> {
        Self::new(ring, rows, cols, ints.iter().map(|&x| ring.from_int(x)).collect())
    }

    pub fn zero(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        RingMatrix { ring: ring.clone(), rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(ring: &RingSpec, d: usize) -> Self {
        let mut m = Self::zero(ring, d, d);
        for i in 0..d {
            m.entries[i * d + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = RingMatrix::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = r.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.entries[idx] = r.add(out.entries[idx], t);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut out = RingMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, x: &[u64]) -> Vec<u64> {
        let r = &self.ring;
        let mut out = vec![0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = r.add(*o, r.mul(xi, self.get(i, j)));
            }
        }
        out
    }
}

/// Elementary divisor valuations of a matrix, sorted ascending, capped at
/// `cap` (= n over Z/p^n, 1 over a field).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorProfile {
    pub valuations: Vec<u32>,
    pub cap: u32,
}

impl DivisorProfile {
    /// Number of unit elementary divisors (the rank over the residue field).
    pub fn rank(&self) -> usize {
        self.valuations.iter().filter(|&&v| v == 0).count()
    }
}

pub fn divisor_profile(m: &RingMatrix) -> DivisorProfile {
    let mut a = m.entries.clone();
    let mut vals = Vec::new();
    m.ring.eliminate_in_place(&mut a, m.rows, m.cols, Some(&mut vals));
    let n = m.ring.n();
    vals.resize(m.rows.min(m.cols), n);
    vals.sort_unstable();
    DivisorProfile { valuations: vals, cap: n }
}

/// e with |image| = p^e, for the map x -> xm.
pub fn image_log_p(m: &RingMatrix) -> u32 {
    let mut a = m.entries.clone();
    m.ring.f() * m.ring.eliminate_in_place(&mut a, m.rows, m.cols, None)
}

pub fn image_size(m: &RingMatrix) -> BigUint {
    BigUint::from(m.ring.p()).pow(image_log_p(m))
}

/// Size of {x in R^rows : xm = 0}.
pub fn kernel_size(m: &RingMatrix) -> BigUint {
    let total = m.ring.log_p_cardinality() * m.rows as u32;
    BigUint::from(m.ring.p()).pow(total - image_log_p(m))
}

pub fn rank_over_field(m: &RingMatrix) -> Result<usize> {
    if !m.ring.is_field() {
        return Err(Error::NotAField);
    }
    Ok(divisor_profile(m).rank())
}

/// Number of roots in a field of the integer polynomial with the given
/// coefficients (constant term first).
pub fn count_roots(poly: &[i64], ring: &RingSpec) -> Result<u64> {
    if !ring.is_field() {
        return Err(Error::NotAField);
    }
    let coeffs: Vec<u64> = poly.iter().map(|&c| ring.from_int(c)).collect();
    let mut count = 0;
    for a in 0..ring.cardinality() {
        let value = coeffs.iter().rev().fold(0, |acc, &c| ring.add(ring.mul(acc, a), c));
        if value == 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// p^e as a big integer.
pub fn big_pow(p: u64, e: u32) -> BigUint {
    let mut acc = BigUint::one();
    let b = BigUint::from(p);
    for _ in 0..e {
        acc *= &b;
    }
    acc
}

/// Dense univariate polynomials over F_p, constant term first.
mod poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    fn inv(a: u64, p: u64) -> u64 {
        let mut acc = 1;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let g = trim(g.to_vec());
        let mut r = trim(a.to_vec());
        let dg = g.len() - 1;
        let lead_inv = inv(g[dg], p);
        while r.len() > dg {
            let shift = r.len() - 1 - dg;
            let c = r[r.len() - 1] * lead_inv % p;
            for (k, &gk) in g.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + p - c * gk % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), g, p)
    }

    /// h^p mod g.
    fn frobenius(h: &[u64], g: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1];
        let mut base = h.to_vec();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, g, p);
            }
            base = mulmod(&base, &base, g, p);
            e >>= 1;
        }
        acc
    }

    /// g monic of degree f is irreducible iff gcd(X^(p^k) - X, g) = 1 for
    /// all k <= f/2.
    pub fn is_irreducible(g: &[u64], p: u64) -> bool {
        let f = g.len() - 1;
        if f <= 1 {
            return f == 1;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, g, p);
        for _ in 1..=f / 2 {
            h = frobenius(&h, g, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let d = gcd(&diff, g, p);
            if d.len() != 1 {
                return false;
            }
        }
        true
    }

    pub fn least_irreducible(f: usize, p: u64) -> Vec<u64> {
        let total = p.pow(f as u32);
        for code in 0..total {
            let mut g = Vec::with_capacity(f + 1);
            let mut c = code;
            for _ in 0..f {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if is_irreducible(&g, p) {
                return g;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_examples() {
        let f17 = RingSpec::prime_field(17).unwrap();
        assert_eq!(f17.cardinality(), 17);
        let z25 = RingSpec::padic(5, 2).unwrap();
        assert_eq!(z25.valuation(5), 1);
        let f4 = RingSpec::ext_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(make_ring(RingKind::PrimeField, 15, 1, None), Err(Error::CompositeModulus { p: 15 }));
        assert!(matches!(
            make_ring(RingKind::ExtField, 2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
    }

    #[test]
    fn ext_field_axioms() {
        for (p, f) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)] {
            let r = RingSpec::ext_field(p, f).unwrap();
            for a in 0..r.cardinality() {
                if a != 0 {
                    assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
                }
                assert_eq!(r.add(a, r.neg(a)), 0);
            }
        }
        // quartic moduli are checked beyond root-freeness: (X^2+X+1)^2 over F_2
        assert!(!poly::is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(poly::is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn profile_examples() {
        let z25 = RingSpec::padic(5, 2).unwrap();
        let d = RingMatrix::from_ints(&z25, 2, 2, &[1, 0, 0, 5]).unwrap();
        assert_eq!(divisor_profile(&d).valuations, vec![0, 1]);
        let z = RingMatrix::zero(&z25, 2, 3);
        assert_eq!(divisor_profile(&z).valuations, vec![2, 2]);
        let f3 = RingSpec::prime_field(3).unwrap();
        let ones = RingMatrix::from_ints(&f3, 3, 3, &[1; 9]).unwrap();
        assert_eq!(divisor_profile(&ones).valuations, vec![0, 1, 1]);
    }

    #[test]
    fn kernel_examples() {
        let f5 = RingSpec::prime_field(5).unwrap();
        assert_eq!(kernel_size(&RingMatrix::identity(&f5, 3)), BigUint::from(1u32));
        let f3 = RingSpec::prime_field(3).unwrap();
        assert_eq!(kernel_size(&RingMatrix::zero(&f3, 2, 2)), BigUint::from(9u32));
        let z25 = RingSpec::padic(5, 2).unwrap();
        let m = RingMatrix::from_ints(&z25, 2, 2, &[5, 0, 0, 1]).unwrap();
        assert_eq!(kernel_size(&m), BigUint::from(5u32));
    }

    #[test]
    fn root_examples() {
        let x4 = [1, 0, 0, 0, 1];
        assert_eq!(count_roots(&x4, &RingSpec::prime_field(17).unwrap()).unwrap(), 4);
        assert_eq!(count_roots(&x4, &RingSpec::prime_field(3).unwrap()).unwrap(), 0);
        assert_eq!(count_roots(&[1, 1, 1], &RingSpec::prime_field(7).unwrap()).unwrap(), 2);
        // X^2+X+1 splits in F_4
        assert_eq!(count_roots(&[1, 1, 1], &RingSpec::ext_field(2, 2).unwrap()).unwrap(), 2);
        assert_eq!(count_roots(&[1], &RingSpec::padic(3, 2).unwrap()), Err(Error::NotAField));
    }
}
