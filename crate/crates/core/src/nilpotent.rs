//! Graded nilpotent algebras of class at most 3 with integer structure
//! constants, their BCH groups over Z/p^n, Baer groups attached to modules of
//! alternating matrices, and conjugacy class counts by orbit sweeping.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::finring::RingSpec;
use crate::modrep::ModuleRepresentation;

pub const DEFAULT_GROUP_BUDGET: u128 = 1_000_000;

/// A graded algebra N = N_1 ⊕ ... ⊕ N_c with integer structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentLieAlgebra {
    pub labels: Vec<String>,
    /// Degree (1-based) of each basis element.
    pub degrees: Vec<u32>,
    /// Sparse products: entry a·dim + b lists (c, coefficient) of e_a e_b.
    products: Vec<Vec<(usize, i64)>>,
    /// Whether the algebra is claimed to be a Lie algebra.
    pub lie: bool,
    /// Number of generators when built as a_d(A) or its Jacobi quotient.
    generators: usize,
}

impl NilpotentLieAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Dimensions of the homogeneous components of degree 1, 2, ...
    pub fn grading(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0) as usize;
        let mut g = vec![0; top];
        for &d in &self.degrees {
            g[d as usize - 1] += 1;
        }
        g
    }

    pub fn class(&self) -> u32 {
        let mut c = 0;
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for &(k, _) in &self.products[a * self.dim() + b] {
                    c = c.max(self.degrees[k]);
                }
            }
        }
        c.max(if self.dim() > 0 { 1 } else { 0 })
    }

    pub fn product_of_basis(&self, a: usize, b: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        for &(c, x) in &self.products[a * self.dim() + b] {
            v[c] += x;
        }
        v
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product of integer vectors.
    pub fn mul_int(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0; n];
        for (a, &xa) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                for &(c, k) in &self.products[a * n + b] {
                    out[c] += xa * yb * k;
                }
            }
        }
        out
    }

    /// Product of vectors over a ring.
    pub fn mul_ring(&self, ring: &RingSpec, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.dim();
        let mut out = vec![0; n];
        for (a, &xa) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                let s = ring.mul(xa, yb);
                for &(c, k) in &self.products[a * n + b] {
                    out[c] = ring.add(out[c], ring.mul(s, ring.from_int(k)));
                }
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[a] = 1;
        v
    }

    /// e_a e_a = 0 and e_a e_b = −e_b e_a for all basis pairs.
    pub fn is_anticommutative(&self) -> bool {
        (0..self.dim()).all(|a| {
            self.product_of_basis(a, a).iter().all(|&x| x == 0)
                && (0..self.dim()).all(|b| {
                    let ab = self.product_of_basis(a, b);
                    let ba = self.product_of_basis(b, a);
                    ab.iter().zip(&ba).all(|(x, y)| x + y == 0)
                })
        })
    }

    /// Products raise degree additively and anything above `class` vanishes.
    pub fn respects_grading(&self, class: u32) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.products[a * n + b]
                    .iter()
                    .all(|&(c, _)| self.degrees[c] == self.degrees[a] + self.degrees[b] && self.degrees[c] <= class)
            })
        })
    }

    /// Jacobi identity on all basis triples.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.mul_int(&ea, &self.mul_int(&eb, &ec));
                    let t2 = self.mul_int(&eb, &self.mul_int(&ec, &ea));
                    let t3 = self.mul_int(&ec, &self.mul_int(&ea, &eb));
                    if (0..n).any(|k| t1[k] + t2[k] + t3[k] != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All products of four basis elements, bracketed to the right, vanish.
    pub fn is_class_at_most_3(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.product_of_basis(a, b);
                (0..n).all(|c| {
                    let abc = self.mul_int(&self.unit(c), &ab);
                    (0..n).all(|d| self.mul_int(&self.unit(d), &abc).iter().all(|&x| x == 0))
                })
            })
        })
    }
}

struct Builder {
    labels: Vec<String>,
    degrees: Vec<u32>,
    index: HashMap<String, usize>,
    products: HashMap<(usize, usize), Vec<(usize, i64)>>,
}

impl Builder {
    fn new() -> Self {
        Builder { labels: Vec::new(), degrees: Vec::new(), index: HashMap::new(), products: HashMap::new() }
    }
    fn basis(&mut self, label: String, degree: u32) -> usize {
        let k = self.labels.len();
        self.index.insert(label.clone(), k);
        self.labels.push(label);
        self.degrees.push(degree);
        k
    }
    fn id(&self, label: &str) -> usize {
        self.index[label]
    }
    fn set(&mut self, a: usize, b: usize, v: Vec<(usize, i64)>) {
        self.products.insert((a, b), v);
    }
    fn set_anti(&mut self, a: usize, b: usize, v: Vec<(usize, i64)>) {
        let neg = v.iter().map(|&(c, x)| (c, -x)).collect();
        self.set(a, b, v);
        self.set(b, a, neg);
    }
    fn finish(self, lie: bool, generators: usize) -> NilpotentLieAlgebra {
        let n = self.labels.len();
        let mut products = vec![Vec::new(); n * n];
        for ((a, b), v) in self.products {
            products[a * n + b] = v.into_iter().filter(|&(_, x)| x != 0).collect();
        }
        NilpotentLieAlgebra { labels: self.labels, degrees: self.degrees, products, lie, generators }
    }
}

fn x_label(i: usize) -> String {
    format!("x{i}")
}
fn pair_label(i: usize, j: usize) -> String {
    format!("[x{i},x{j}]")
}
fn triple_label(h: usize, i: usize, j: usize) -> String {
    format!("[x{h},[x{i},x{j}]]")
}

fn pairs(d: usize) -> Vec<(usize, usize)> {
    (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect()
}

/// The free nilpotent Lie algebra f_{c,d} (c ∈ {2,3}) in the Hall basis
/// x_i; [x_i,x_j] (i<j); [x_h,[x_i,x_j]] (i<j, h ≥ i), the last ordered by h
/// and then (i,j).
pub fn free_nilpotent_lie(d: usize, class: u32) -> Result<NilpotentLieAlgebra> {
    if d == 0 {
        return Err(Error::InvalidParameter("need at least one generator".into()));
    }
    if !(2..=3).contains(&class) {
        return Err(Error::UnsupportedClass(class));
    }
    let mut b = Builder::new();
    for i in 1..=d {
        b.basis(x_label(i), 1);
    }
    for &(i, j) in &pairs(d) {
        b.basis(pair_label(i, j), 2);
    }
    if class == 3 {
        for h in 1..=d {
            for &(i, j) in &pairs(d) {
                if h >= i {
                    b.basis(triple_label(h, i, j), 3);
                }
            }
        }
    }
    for &(i, j) in &pairs(d) {
        let u = b.id(&pair_label(i, j));
        b.set_anti(b.id(&x_label(i)), b.id(&x_label(j)), vec![(u, 1)]);
    }
    if class == 3 {
        for h in 1..=d {
            for &(i, j) in &pairs(d) {
                let v = if h >= i {
                    vec![(b.id(&triple_label(h, i, j)), 1)]
                } else {
                    // h < i < j: [x_h,[x_i,x_j]] = [x_i,[x_h,x_j]] − [x_j,[x_h,x_i]]
                    vec![(b.id(&triple_label(i, h, j)), 1), (b.id(&triple_label(j, h, i)), -1)]
                };
                b.set_anti(b.id(&x_label(h)), b.id(&pair_label(i, j)), v);
            }
        }
    }
    Ok(b.finish(true, d))
}

/// A(d): basis e_i, e_{i<j}, e_(h,i<j) with e_i e_j = ±e_{i<j},
/// e_h e_{i<j} = e_(h,i<j) = −e_{i<j} e_h and all other products zero.
/// Labels follow the Hall labels of the quotient.
pub fn a_d_algebra(d: usize) -> NilpotentLieAlgebra {
    let mut b = Builder::new();
    for i in 1..=d {
        b.basis(x_label(i), 1);
    }
    for &(i, j) in &pairs(d) {
        b.basis(pair_label(i, j), 2);
    }
    for h in 1..=d {
        for &(i, j) in &pairs(d) {
            b.basis(triple_label(h, i, j), 3);
        }
    }
    for &(i, j) in &pairs(d) {
        let u = b.id(&pair_label(i, j));
        b.set_anti(b.id(&x_label(i)), b.id(&x_label(j)), vec![(u, 1)]);
        for h in 1..=d {
            let w = b.id(&triple_label(h, i, j));
            b.set_anti(b.id(&x_label(h)), u, vec![(w, 1)]);
        }
    }
    b.finish(false, d)
}

/// Spanning set of the Jacobi ideal of A(d): for i<j<k,
/// e_(i,j<k) − e_(j,i<k) + e_(k,i<j), as integer vectors.
pub fn jacobi_relations(a: &NilpotentLieAlgebra) -> Vec<Vec<i64>> {
    let d = a.generators;
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            for k in j + 1..=d {
                let mut v = vec![0; a.dim()];
                v[a.index_of(&triple_label(i, j, k)).unwrap()] += 1;
                v[a.index_of(&triple_label(j, i, k)).unwrap()] -= 1;
                v[a.index_of(&triple_label(k, i, j)).unwrap()] += 1;
                out.push(v);
            }
        }
    }
    out
}

/// A(d)/J(d), with basis the elements of A(d) other than the pivots
/// e_(i,j<k) (i<j<k) of the Jacobi relations. Products of the ideal with
/// anything vanish (it sits in the top degree), so reducing products by the
/// relations defines the quotient.
pub fn jacobi_quotient(a: &NilpotentLieAlgebra) -> NilpotentLieAlgebra {
    let rels = jacobi_relations(a);
    let pivots: Vec<usize> = rels.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    let keep: Vec<usize> = (0..a.dim()).filter(|k| !pivots.contains(k)).collect();
    let new_index: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let reduce = |mut v: Vec<i64>| -> Vec<(usize, i64)> {
        for (r, &p) in rels.iter().zip(&pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x -= c * y;
                }
            }
        }
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (new_index[&k], x)).collect()
    };
    let mut b = Builder::new();
    for &k in &keep {
        b.basis(a.labels[k].clone(), a.degrees[k]);
    }
    for (na, &oa) in keep.iter().enumerate() {
        for (nb, &ob) in keep.iter().enumerate() {
            let v = reduce(a.product_of_basis(oa, ob));
            if !v.is_empty() {
                b.set(na, nb, v);
            }
        }
    }
    b.finish(true, a.generators)
}

/// ad: generator b is the matrix of x ↦ x·e_b.
pub fn adjoint_rep(g: &NilpotentLieAlgebra) -> ModuleRepresentation {
    let n = g.dim();
    let gens = (0..n)
        .map(|b| {
            let mut m = vec![0; n * n];
            for a in 0..n {
                for (c, x) in g.product_of_basis(a, b).into_iter().enumerate() {
                    m[a * n + c] = x;
                }
            }
            m
        })
        .collect();
    ModuleRepresentation::new(g.labels.clone(), g.labels.clone(), g.labels.clone(), gens).expect("square structure")
}

/// Representation A/Z → Hom(A/Z, D) induced by multiplication, where D is
/// the derived part spanned by the products and Z the annihilator of A.
pub fn commutator_rep(g: &NilpotentLieAlgebra) -> ModuleRepresentation {
    let n = g.dim();
    let central: Vec<usize> = (0..n).filter(|&b| (0..n).all(|a| g.product_of_basis(a, b).iter().all(|&x| x == 0))).collect();
    let quotient: Vec<usize> = (0..n).filter(|k| !central.contains(k)).collect();
    let derived: Vec<usize> = (0..n).filter(|&c| g.degrees[c] > 1).collect();
    let labels = |ks: &[usize]| ks.iter().map(|&k| g.labels[k].clone()).collect::<Vec<_>>();
    let gens = quotient
        .iter()
        .map(|&b| {
            let mut m = vec![0; quotient.len() * derived.len()];
            for (ia, &a) in quotient.iter().enumerate() {
                let prod = g.product_of_basis(a, b);
                for (ic, &c) in derived.iter().enumerate() {
                    m[ia * derived.len() + ic] = prod[c];
                }
            }
            m
        })
        .collect();
    ModuleRepresentation::new(labels(&quotient), labels(&quotient), labels(&derived), gens).expect("well formed")
}

/// exp(g ⊗ R) with the class-≤3 truncated BCH product.
#[derive(Clone, Debug)]
pub struct BchGroup<'a> {
    pub algebra: &'a NilpotentLieAlgebra,
    pub ring: RingSpec,
    half: u64,
    twelfth: u64,
}

pub type BCHGroupElement = Vec<u64>;

impl<'a> BchGroup<'a> {
    pub fn new(algebra: &'a NilpotentLieAlgebra, ring: &RingSpec) -> Result<Self> {
        let class = algebra.class();
        if class > 3 {
            return Err(Error::UnsupportedClass(class));
        }
        let p = ring.p();
        if (class >= 2 && p == 2) || (class == 3 && p == 3) {
            return Err(Error::BadCharacteristic(p));
        }
        let half = ring.inv(ring.from_int(2)).unwrap_or(0);
        let twelfth = ring.inv(ring.from_int(12)).unwrap_or(0);
        Ok(BchGroup { algebra, ring: ring.clone(), half, twelfth })
    }

    fn axpy(&self, acc: &mut [u64], s: u64, v: &[u64]) {
        for (a, &x) in acc.iter_mut().zip(v) {
            if x != 0 {
                *a = self.ring.add(*a, self.ring.mul(s, x));
            }
        }
    }

    /// x + y + ½[x,y] + 1/12[x,[x,y]] + 1/12[y,[y,x]].
    pub fn multiply(&self, x: &[u64], y: &[u64]) -> BCHGroupElement {
        let r = &self.ring;
        let g = self.algebra;
        let mut out: Vec<u64> = x.iter().zip(y).map(|(&a, &b)| r.add(a, b)).collect();
        let xy = g.mul_ring(r, x, y);
        if xy.iter().all(|&c| c == 0) {
            return out;
        }
        self.axpy(&mut out, self.half, &xy);
        let x_xy = g.mul_ring(r, x, &xy);
        // [y,[y,x]] = −[y,[x,y]]
        let y_xy = g.mul_ring(r, y, &xy);
        self.axpy(&mut out, self.twelfth, &x_xy);
        self.axpy(&mut out, r.neg(self.twelfth), &y_xy);
        out
    }

    pub fn inverse(&self, x: &[u64]) -> BCHGroupElement {
        x.iter().map(|&a| self.ring.neg(a)).collect()
    }
}

pub fn bch_multiply(g: &NilpotentLieAlgebra, ring: &RingSpec, x: &[u64], y: &[u64]) -> Result<BCHGroupElement> {
    Ok(BchGroup::new(g, ring)?.multiply(x, y))
}

fn encode(v: &[u64], card: u64) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| acc * card as usize + c as usize)
}

fn decode(mut idx: usize, len: usize, card: u64, out: &mut [u64]) {
    for slot in out.iter_mut().take(len) {
        *slot = (idx % card as usize) as u64;
        idx /= card as usize;
    }
}

/// Number of orbits of a group acting on R^len by the given maps, found by
/// flood-filling a visited bitmap.
fn count_orbits(card: u64, len: usize, budget: u128, act: impl Fn(&[u64], usize) -> Vec<u64>, nacts: usize) -> Result<u64> {
    let total = (card as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let total = total as usize;
    let mut visited = vec![0u64; total.div_ceil(64)];
    let mut stack = Vec::new();
    let mut x = vec![0u64; len];
    let mut orbits = 0;
    for start in 0..total {
        if visited[start / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        orbits += 1;
        visited[start / 64] |= 1 << (start % 64);
        stack.push(start);
        while let Some(cur) = stack.pop() {
            decode(cur, len, card, &mut x);
            for k in 0..nacts {
                let y = encode(&act(&x, k), card);
                if visited[y / 64] >> (y % 64) & 1 == 0 {
                    visited[y / 64] |= 1 << (y % 64);
                    stack.push(y);
                }
            }
        }
    }
    Ok(orbits)
}

/// k(exp(g ⊗ R)) by sweeping conjugation orbits under t·e_b for t in the
/// additive generators of R and b in the degree-1 basis.
pub fn conjugacy_count_bch(g: &NilpotentLieAlgebra, ring: &RingSpec, budget: u128) -> Result<u64> {
    let group = BchGroup::new(g, ring)?;
    let mut conjugators = Vec::new();
    for b in (0..g.dim()).filter(|&b| g.degrees[b] == 1) {
        for (t, _) in ring.additive_generators() {
            let mut v = vec![0u64; g.dim()];
            v[b] = t;
            conjugators.push((group.inverse(&v), v));
        }
    }
    count_orbits(
        ring.cardinality(),
        g.dim(),
        budget,
        |x, k| {
            let (inv, c) = &conjugators[k];
            group.multiply(&group.multiply(c, x), inv)
        },
        conjugators.len(),
    )
}

/// Baer group G_M for M spanned by alternating d×d matrices a_1..a_ℓ:
/// (x,y)(x′,y′) = (x+x′, y+y′+½β(x,x′)) with β_k(x,x′) = x a_k x′ᵀ.
#[derive(Clone, Debug)]
pub struct BaerGroup {
    pub ring: RingSpec,
    pub d: usize,
    pub l: usize,
    forms: Vec<Vec<u64>>,
    half: u64,
}

pub type BaerGroupElement = (Vec<u64>, Vec<u64>);

impl BaerGroup {
    pub fn new(m: &ModuleRepresentation, ring: &RingSpec) -> Result<Self> {
        if ring.p() == 2 {
            return Err(Error::BadCharacteristic(2));
        }
        if let Some(b) = (0..m.num_gens()).find(|&b| !m.is_alternating(b)) {
            return Err(Error::NotAlternating(m.basis[b].clone()));
        }
        m.check_units(ring)?;
        let forms = m.gens.iter().map(|g| g.iter().map(|&a| ring.from_int(a)).collect()).collect();
        let half = ring.inv(ring.from_int(2)).expect("p odd");
        Ok(BaerGroup { ring: ring.clone(), d: m.num_rows(), l: m.num_gens(), forms, half })
    }

    fn beta(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let r = &self.ring;
        self.forms
            .iter()
            .map(|a| {
                let mut acc = 0;
                for (i, &xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
                    for (j, &yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                        let c = a[i * self.d + j];
                        if c != 0 {
                            acc = r.add(acc, r.mul(r.mul(xi, yj), c));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn multiply(&self, g: &BaerGroupElement, h: &BaerGroupElement) -> BaerGroupElement {
        let r = &self.ring;
        let x = g.0.iter().zip(&h.0).map(|(&a, &b)| r.add(a, b)).collect();
        let b = self.beta(&g.0, &h.0);
        let y = g.1.iter().zip(&h.1).zip(&b).map(|((&a, &c), &e)| r.add(r.add(a, c), r.mul(self.half, e))).collect();
        (x, y)
    }

    pub fn inverse(&self, g: &BaerGroupElement) -> BaerGroupElement {
        let r = &self.ring;
        (g.0.iter().map(|&a| r.neg(a)).collect(), g.1.iter().map(|&a| r.neg(a)).collect())
    }
}

/// k(G_M(R)) by orbit sweeping; conjugating by (t·e_i, 0) suffices since
/// these together with the centre {0}×R^ℓ generate the group.
pub fn baer_group_cc(m: &ModuleRepresentation, ring: &RingSpec, budget: u128) -> Result<u64> {
    let group = BaerGroup::new(m, ring)?;
    let (d, l) = (group.d, group.l);
    let mut conjugators = Vec::new();
    for i in 0..d {
        for (t, _) in ring.additive_generators() {
            let mut x = vec![0u64; d];
            x[i] = t;
            let c = (x, vec![0u64; l]);
            conjugators.push((group.inverse(&c), c));
        }
    }
    count_orbits(
        ring.cardinality(),
        d + l,
        budget,
        |v, k| {
            let (inv, c) = &conjugators[k];
            let g = (v[..d].to_vec(), v[d..].to_vec());
            let h = group.multiply(&group.multiply(c, &g), inv);
            h.0.into_iter().chain(h.1).collect()
        },
        conjugators.len(),
    )
}
