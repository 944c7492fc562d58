//! The 0-Hecke-Clifford superalgebra `HCl_n(0)` on its normal-form basis
//! `c_D T_w`, with trace form and structural (anti-)involutions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde_json::{json, Value};

use crate::combinatorics::{all_permutations, format_set, mask_elements, mask_of, Permutation};
use crate::error::{Error, Result};
use crate::field::{Field, GaussianJson, GaussianRational};
use crate::limits;
use crate::linalg::{SparseMatrix, SparseVec};

/// Basis key `c_D T_w`; `d` is the bitmask of `D`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisKey {
    pub d: u32,
    pub w: Permutation,
}

impl BasisKey {
    pub fn new(d: u32, w: Permutation) -> Self {
        BasisKey { d, w }
    }

    pub fn parity(&self) -> u8 {
        (self.d.count_ones() % 2) as u8
    }
}

impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.d.count_ones(), self.d, &self.w).cmp(&(other.d.count_ones(), other.d, &other.w))
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The canonical basis of `HCl_n(0)`, ordered by `(|D|, D, w)`.
pub fn basis_keys(n: usize) -> Result<Vec<BasisKey>> {
    let perms = all_permutations(n)?;
    let mut keys = Vec::with_capacity(perms.len() << n);
    for d in 0u32..1 << n {
        for w in &perms {
            keys.push(BasisKey::new(d, w.clone()));
        }
    }
    keys.sort();
    Ok(keys)
}

/// `(−1)^k` with `c_D c_F = (−1)^k c_{D△F}`.
pub fn clifford_sign(d: u32, f: u32) -> i64 {
    let mut inv = 0u32;
    for j in mask_elements(f) {
        // elements of D greater than j
        inv += (d >> j).count_ones();
    }
    inv += (d & f).count_ones();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `T_i T_x = sign · T_y`.
fn hecke_left(i: usize, x: &Permutation) -> (i64, Permutation) {
    if x.left_ascent(i) {
        (1, x.left_mul_s(i))
    } else {
        (-1, x.clone())
    }
}

type IntTerms = Vec<(u32, Permutation, i64)>;

struct Tables {
    tc: RwLock<HashMap<(Permutation, u32), Arc<IntTerms>>>,
    dem: RwLock<HashMap<(Permutation, Permutation), (i64, Permutation)>>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| Tables { tc: RwLock::new(HashMap::new()), dem: RwLock::new(HashMap::new()) })
}

/// `T_x T_v = sign · T_y`.
pub fn hecke_product(x: &Permutation, v: &Permutation) -> (i64, Permutation) {
    if let Some(r) = tables().dem.read().expect("lock").get(&(x.clone(), v.clone())) {
        return r.clone();
    }
    let mut sign = 1;
    let mut y = v.clone();
    for i in x.reduced_word().into_iter().rev() {
        let (s, z) = hecke_left(i, &y);
        sign *= s;
        y = z;
    }
    tables().dem.write().expect("lock").insert((x.clone(), v.clone()), (sign, y.clone()));
    (sign, y)
}

/// Left multiplication of `Σ k c_F T_x` by `T_i`.
fn left_t(i: usize, terms: &HashMap<(u32, Permutation), i64>) -> HashMap<(u32, Permutation), i64> {
    let mut out: HashMap<(u32, Permutation), i64> = HashMap::new();
    let mut push = |f: u32, x: Permutation, k: i64| {
        let e = out.entry((f, x)).or_insert(0);
        *e += k;
    };
    let bi = 1u32 << (i - 1);
    let bj = 1u32 << i;
    for ((f, x), &k) in terms {
        let (s, tx) = hecke_left(i, x);
        match (f & bi != 0, f & bj != 0) {
            (false, false) => push(*f, tx, s * k),
            (true, false) => push(f ^ bi ^ bj, tx, s * k),
            (false, true) => {
                let g = f ^ bi ^ bj;
                push(g, tx, s * k);
                push(g, x.clone(), k);
                push(*f, x.clone(), -k);
            }
            (true, true) => {
                push(*f, tx, -s * k);
                push(*f, x.clone(), -k);
                push(f ^ bi ^ bj, x.clone(), k);
            }
        }
    }
    out.retain(|_, k| *k != 0);
    out
}

/// Normal form of `T_u c_E`.
pub fn t_times_c(u: &Permutation, e: u32) -> Arc<IntTerms> {
    if let Some(r) = tables().tc.read().expect("lock").get(&(u.clone(), e)) {
        return r.clone();
    }
    let mut cur: HashMap<(u32, Permutation), i64> = HashMap::new();
    cur.insert((e, Permutation::identity(u.size())), 1);
    for i in u.reduced_word().into_iter().rev() {
        cur = left_t(i, &cur);
    }
    let mut v: IntTerms = cur.into_iter().map(|((f, x), k)| (f, x, k)).collect();
    v.sort_by(|a, b| BasisKey::new(a.0, a.1.clone()).cmp(&BasisKey::new(b.0, b.1.clone())));
    let r = Arc::new(v);
    tables().tc.write().expect("lock").insert((u.clone(), e), r.clone());
    r
}

/// Integer normal form of a product of two basis elements.
pub fn basis_product(a: &BasisKey, b: &BasisKey) -> Vec<(BasisKey, i64)> {
    let mut out: HashMap<BasisKey, i64> = HashMap::new();
    for (f, x, k) in t_times_c(&a.w, b.d).iter() {
        let (s1, y) = hecke_product(x, &b.w);
        let s2 = clifford_sign(a.d, *f);
        *out.entry(BasisKey::new(a.d ^ f, y)).or_insert(0) += k * s1 * s2;
    }
    let mut v: Vec<(BasisKey, i64)> = out.into_iter().filter(|(_, k)| *k != 0).collect();
    v.sort();
    v
}

/// An element of `HCl_n(0)` with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<BasisKey, GaussianRational>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, 0, Permutation::identity(n))
    }

    pub fn basis(n: usize, d: u32, w: Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(BasisKey::new(d, w), GaussianRational::one());
        AlgebraElement { n, terms }
    }

    pub fn from_key(n: usize, k: &BasisKey) -> Self {
        Self::basis(n, k.d, k.w.clone())
    }

    /// `c_j`.
    pub fn c(n: usize, j: usize) -> Self {
        Self::basis(n, 1 << (j - 1), Permutation::identity(n))
    }

    /// `c_D` for a set `D`.
    pub fn c_set(n: usize, d: &[usize]) -> Self {
        Self::basis(n, mask_of(d), Permutation::identity(n))
    }

    /// `T_i`.
    pub fn t(n: usize, i: usize) -> Self {
        Self::basis(n, 0, Permutation::identity(n).right_mul_s(i))
    }

    /// `T_w`.
    pub fn t_w(w: &Permutation) -> Self {
        Self::basis(w.size(), 0, w.clone())
    }

    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        Self::one(n).scale(&c)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (BasisKey, GaussianRational)>) -> Self {
        let mut x = Self::zero(n);
        for (k, c) in terms {
            x.add_term(k, &c);
        }
        x
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: u32, w: &Permutation) -> GaussianRational {
        self.terms.get(&BasisKey::new(d, w.clone())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: BasisKey, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let zero = {
            let e = self.terms.entry(k.clone()).or_default();
            *e = e.add_ref(c);
            e.is_zero()
        };
        if zero {
            self.terms.remove(&k);
        }
    }

    fn check_rank(&self, other: &AlgebraElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("rank {} vs rank {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement { n: self.n, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> AlgebraElement {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        AlgebraElement { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul_ref(c))).collect() }
    }

    pub fn scale_i64(&self, c: i64) -> AlgebraElement {
        self.scale(&GaussianRational::from_i64(c))
    }

    /// `0` or `1` when homogeneous and nonzero.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|k| k.parity());
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_rank(other)?;
        let mut acc: HashMap<BasisKey, GaussianRational> = HashMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let c = ca.mul_ref(cb);
                for (k, s) in basis_product(ka, kb) {
                    let e = acc.entry(k).or_default();
                    *e = e.add_ref(&c.mul_ref(&GaussianRational::from_i64(s)));
                }
            }
        }
        Ok(AlgebraElement { n: self.n, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// Product of a list of elements.
    pub fn product(n: usize, factors: &[AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = Self::one(n);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// The pure Hecke part is the whole element.
    pub fn is_hecke(&self) -> bool {
        self.terms.keys().all(|k| k.d == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": "HCl",
            "n": self.n,
            "terms": self.terms.iter().map(|(k, c)| json!({
                "index": {"D": mask_elements(k.d), "w": k.w.word()},
                "coeff": serde_json::to_value(GaussianJson::from(c)).expect("serializable"),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<AlgebraElement> {
        let bad = |what: &str| Error::Parse { position: 0, expected: what.to_string() };
        let n = v.get("n").and_then(|n| n.as_u64()).ok_or_else(|| bad("rank n"))? as usize;
        let mut x = Self::zero(n);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("terms array"))? {
            let idx = t.get("index").ok_or_else(|| bad("index"))?;
            let d: Vec<usize> = serde_json::from_value(idx.get("D").cloned().ok_or_else(|| bad("D"))?)
                .map_err(|_| bad("D as list"))?;
            let w: Vec<usize> = serde_json::from_value(idx.get("w").cloned().ok_or_else(|| bad("w"))?)
                .map_err(|_| bad("w as list"))?;
            if d.iter().any(|&j| j == 0 || j > n) {
                return Err(Error::InvalidSubset(format!("{d:?} in [{n}]")));
            }
            let w = Permutation::new(&w)?;
            if w.size() != n {
                return Err(Error::Mismatch(format!("permutation {w} in rank {n}")));
            }
            let c: GaussianJson =
                serde_json::from_value(t.get("coeff").cloned().ok_or_else(|| bad("coeff"))?).map_err(|_| bad("coeff"))?;
            x.add_term(BasisKey::new(mask_of(&d), w), &GaussianRational::try_from(&c)?);
        }
        Ok(x)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            let neg = c.is_real() && c.re < num_traits::Zero::zero() || c.re == num_traits::Zero::zero() && c.im < num_traits::Zero::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            if key.d != 0 {
                write!(f, "c{}*", format_set(key.d))?;
            }
            let w: Vec<String> = key.w.word().iter().map(|x| x.to_string()).collect();
            write!(f, "T[{}]", w.join(","))?;
        }
        Ok(())
    }
}

/// Lemma-(ord) leading datum of `T_w c_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub sign: i64,
    pub image: u32,
    /// The coefficient of `c_{w(D)} T_w` in the full product equals `sign`.
    pub coefficient_matches: bool,
    /// All other terms `c_F T_v` have `v < w` in Bruhat order.
    pub lower_terms_below: bool,
}

/// Bruhat order by the tableau criterion.
pub fn bruhat_le(v: &Permutation, w: &Permutation) -> bool {
    let (a, b) = (v.word(), w.word());
    for i in 1..a.len() {
        let mut x: Vec<usize> = a[..i].to_vec();
        let mut y: Vec<usize> = b[..i].to_vec();
        x.sort_unstable();
        y.sort_unstable();
        if x.iter().zip(&y).any(|(p, q)| p > q) {
            return false;
        }
    }
    true
}

pub fn leading_term_check(w: &Permutation, d: u32) -> LeadingTerm {
    let elems = mask_elements(d);
    let mut inv = 0;
    for (a, &i) in elems.iter().enumerate() {
        for &j in &elems[a + 1..] {
            if w.apply(i) > w.apply(j) {
                inv += 1;
            }
        }
    }
    let sign = if inv % 2 == 0 { 1 } else { -1 };
    let image = w.image_mask(d);
    let terms = t_times_c(w, d);
    let mut coefficient = 0;
    let mut below = true;
    for (f, x, k) in terms.iter() {
        if x == w {
            if *f == image {
                coefficient = *k;
            } else {
                below = false;
            }
        } else if !(x.length() < w.length() && bruhat_le(x, w)) {
            below = false;
        }
    }
    LeadingTerm { sign, image, coefficient_matches: coefficient == sign, lower_terms_below: below }
}

/// `tr_n(c_D T_w) = δ_{D,∅} δ_{w,w_0}`.
pub fn trace(a: &AlgebraElement) -> GaussianRational {
    a.coeff(0, &Permutation::longest(a.n))
}

/// `(a, b) = tr(ab)`.
pub fn frobenius_form(a: &AlgebraElement, b: &AlgebraElement) -> Result<GaussianRational> {
    Ok(trace(&a.mul(b)?))
}

/// Gram matrix of the trace form on the canonical basis.
pub fn gram_matrix(n: usize) -> Result<SparseMatrix<GaussianRational>> {
    limits::check("Gram matrix", n, limits::REGULAR_RANK_LIMIT)?;
    let keys = basis_keys(n)?;
    let w0 = Permutation::longest(n);
    let cols: Vec<SparseVec<GaussianRational>> = keys
        .iter()
        .map(|b| {
            SparseVec::from_pairs(keys.iter().enumerate().filter_map(|(r, a)| {
                let v: i64 = basis_product(a, b).iter().filter(|(k, _)| k.d == 0 && k.w == w0).map(|(_, s)| *s).sum();
                (v != 0).then(|| (r, GaussianRational::from_i64(v)))
            }))
        })
        .collect();
    Ok(SparseMatrix::from_columns(keys.len(), cols))
}

/// The five structural maps.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Morphism {
    /// Nakayama involution `φ`.
    Phi,
    /// `φ′`.
    PhiPrime,
    /// Anti-involution `ψ`.
    Psi,
    /// Anti-involution `ψ′`.
    PsiPrime,
    /// `φ̄(T_i) = T_{n−i}` on the Hecke subalgebra.
    PhiBar,
}

impl Morphism {
    pub const ALL: [Morphism; 5] = [Morphism::Phi, Morphism::PhiPrime, Morphism::Psi, Morphism::PsiPrime, Morphism::PhiBar];

    pub fn is_anti(&self) -> bool {
        matches!(self, Morphism::Psi | Morphism::PsiPrime)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Morphism::Phi => "phi",
            Morphism::PhiPrime => "phi'",
            Morphism::Psi => "psi",
            Morphism::PsiPrime => "psi'",
            Morphism::PhiBar => "phibar",
        }
    }

    pub fn from_name(s: &str) -> Option<Morphism> {
        match s {
            "phi" | "φ" => Some(Morphism::Phi),
            "phi'" | "phiprime" | "φ′" | "φ'" => Some(Morphism::PhiPrime),
            "psi" | "ψ" => Some(Morphism::Psi),
            "psi'" | "psiprime" | "ψ′" | "ψ'" => Some(Morphism::PsiPrime),
            "phibar" | "φ̄" => Some(Morphism::PhiBar),
            _ => None,
        }
    }

    /// Image of `T_i`.
    pub fn image_t(&self, n: usize, i: usize) -> AlgebraElement {
        let one = AlgebraElement::one(n);
        match self {
            Morphism::Phi => {
                let cc = AlgebraElement::c_set(n, &[n - i, n + 1 - i]);
                AlgebraElement::t(n, n - i).add(&cc).expect("same rank")
            }
            Morphism::PhiPrime => AlgebraElement::t(n, n - i).add(&one).expect("same rank").neg(),
            Morphism::Psi => AlgebraElement::t(n, i).add(&AlgebraElement::c_set(n, &[i, i + 1])).expect("same rank"),
            Morphism::PsiPrime => AlgebraElement::t(n, i).add(&one).expect("same rank").neg(),
            Morphism::PhiBar => AlgebraElement::t(n, n - i),
        }
    }

    /// Image of `c_j`; `None` for `φ̄`.
    pub fn image_c(&self, n: usize, j: usize) -> Option<AlgebraElement> {
        match self {
            Morphism::Phi | Morphism::PhiPrime => Some(AlgebraElement::c(n, n + 1 - j).neg()),
            Morphism::Psi | Morphism::PsiPrime => Some(AlgebraElement::c(n, j).neg()),
            Morphism::PhiBar => None,
        }
    }
}

/// Applies one of the structural maps, extended (anti-)multiplicatively.
pub fn apply_morphism(m: Morphism, a: &AlgebraElement) -> Result<AlgebraElement> {
    let n = a.n;
    if m == Morphism::PhiBar && !a.is_hecke() {
        return Err(Error::Mismatch("φ̄ is defined on the Hecke subalgebra only".into()));
    }
    let mut out = AlgebraElement::zero(n);
    for (k, c) in &a.terms {
        let mut factors: Vec<AlgebraElement> = Vec::new();
        for j in mask_elements(k.d) {
            factors.push(m.image_c(n, j).expect("Clifford part is empty for φ̄"));
        }
        for i in k.w.reduced_word() {
            factors.push(m.image_t(n, i));
        }
        if m.is_anti() {
            factors.reverse();
        }
        out = out.add(&AlgebraElement::product(n, &factors)?.scale(c))?;
    }
    Ok(out)
}

/// Algebra generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Generator {
    T(usize),
    C(usize),
}

impl Generator {
    pub fn element(&self, n: usize) -> AlgebraElement {
        match *self {
            Generator::T(i) => AlgebraElement::t(n, i),
            Generator::C(j) => AlgebraElement::c(n, j),
        }
    }

    pub fn all(n: usize) -> Vec<Generator> {
        (1..n).map(Generator::T).chain((1..=n).map(Generator::C)).collect()
    }
}

/// Matrix of left multiplication by a generator on the canonical basis.
pub fn regular_action_matrix(g: Generator, n: usize) -> Result<SparseMatrix<GaussianRational>> {
    limits::check("regular representation", n, limits::REGULAR_RANK_LIMIT)?;
    let keys = basis_keys(n)?;
    let pos: HashMap<&BasisKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let gk = g.element(n).terms.keys().next().expect("generator is a basis element").clone();
    let cols = keys
        .iter()
        .map(|b| SparseVec::from_pairs(basis_product(&gk, b).into_iter().map(|(k, s)| (pos[&k], GaussianRational::from_i64(s)))))
        .collect();
    Ok(SparseMatrix::from_columns(keys.len(), cols))
}

/// Checks every defining relation under `multiply`; returns the failed relation names.
pub fn defining_relation_failures(n: usize) -> Vec<String> {
    let t = |i| AlgebraElement::t(n, i);
    let c = |j| AlgebraElement::c(n, j);
    let one = AlgebraElement::one(n);
    let mul = |a: &AlgebraElement, b: &AlgebraElement| a.mul(b).expect("same rank");
    let mut bad = Vec::new();
    let mut check = |name: String, lhs: AlgebraElement, rhs: AlgebraElement| {
        if lhs != rhs {
            bad.push(name);
        }
    };
    for i in 1..n {
        check(format!("T{i}^2 = -T{i}"), mul(&t(i), &t(i)), t(i).neg());
        for j in 1..n {
            if i + 1 < j {
                check(format!("T{i}T{j} = T{j}T{i}"), mul(&t(i), &t(j)), mul(&t(j), &t(i)));
            }
            if j == i + 1 {
                check(
                    format!("braid {i},{j}"),
                    mul(&mul(&t(i), &t(j)), &t(i)),
                    mul(&mul(&t(j), &t(i)), &t(j)),
                );
            }
        }
        for j in 1..=n {
            if j != i && j != i + 1 {
                check(format!("T{i}c{j} = c{j}T{i}"), mul(&t(i), &c(j)), mul(&c(j), &t(i)));
            }
        }
        check(format!("T{i}c{i} = c{}T{i}", i + 1), mul(&t(i), &c(i)), mul(&c(i + 1), &t(i)));
        let tp = t(i).add(&one).expect("same rank");
        check(format!("(T{i}+1)c{} = c{i}(T{i}+1)", i + 1), mul(&tp, &c(i + 1)), mul(&c(i), &tp));
    }
    for i in 1..=n {
        check(format!("c{i}^2 = -1"), mul(&c(i), &c(i)), one.neg());
        for j in i + 1..=n {
            check(format!("c{i}c{j} = -c{j}c{i}"), mul(&c(i), &c(j)), mul(&c(j), &c(i)).neg());
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let n = 2;
        let t1 = AlgebraElement::t(n, 1);
        assert_eq!(t1.mul(&AlgebraElement::c(n, 1)).unwrap(), AlgebraElement::c(n, 2).mul(&t1).unwrap());
        assert_eq!(AlgebraElement::c(n, 2).mul(&t1).unwrap(), AlgebraElement::basis(n, 2, p("21")));
        assert_eq!(t1.mul(&t1).unwrap(), t1.neg());
        let c12 = AlgebraElement::c_set(n, &[1, 2]);
        let expected = AlgebraElement::basis(n, 3, p("21"))
            .neg()
            .sub(&c12)
            .unwrap()
            .add(&AlgebraElement::one(n))
            .unwrap();
        assert_eq!(t1.mul(&c12).unwrap(), expected);
    }

    #[test]
    fn relations_hold() {
        for n in 1..=4 {
            assert!(defining_relation_failures(n).is_empty(), "n = {n}: {:?}", defining_relation_failures(n));
        }
    }

    #[test]
    fn leading_term_examples() {
        let lt = leading_term_check(&p("21"), 0b11);
        assert_eq!((lt.sign, lt.image), (-1, 0b11));
        assert!(lt.coefficient_matches && lt.lower_terms_below);
        let lt = leading_term_check(&p("123"), 0b101);
        assert_eq!((lt.sign, lt.image), (1, 0b101));
        let lt = leading_term_check(&p("231"), 0b1);
        assert_eq!((lt.sign, lt.image), (1, 0b10));
        assert!(lt.coefficient_matches && lt.lower_terms_below);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(&AlgebraElement::t_w(&p("21"))), GaussianRational::one());
        assert!(trace(&AlgebraElement::basis(2, 1, p("21"))).is_zero());
        let t1 = AlgebraElement::t(2, 1);
        assert_eq!(frobenius_form(&t1, &t1).unwrap(), GaussianRational::from_i64(-1));
    }

    #[test]
    fn morphism_examples() {
        assert_eq!(apply_morphism(Morphism::Phi, &AlgebraElement::c(3, 1)).unwrap(), AlgebraElement::c(3, 3).neg());
        let t1 = AlgebraElement::t(3, 1);
        let psi = apply_morphism(Morphism::Psi, &t1).unwrap();
        assert_eq!(psi, t1.add(&AlgebraElement::c_set(3, &[1, 2])).unwrap());
        let phi = apply_morphism(Morphism::Phi, &t1).unwrap();
        assert_eq!(apply_morphism(Morphism::Phi, &phi).unwrap(), t1);
        assert!(apply_morphism(Morphism::PhiBar, &AlgebraElement::c(3, 1)).is_err());
    }

    #[test]
    fn regular_matrices() {
        let c1 = regular_action_matrix(Generator::C(1), 1).unwrap();
        assert_eq!(c1.nrows, 2);
        assert_eq!(c1.mul(&c1), SparseMatrix::identity(2).scale(&GaussianRational::from_i64(-1)));
        let t = regular_action_matrix(Generator::T(1), 2).unwrap();
        assert_eq!(t.mul(&t), t.scale(&GaussianRational::from_i64(-1)));
        let t1 = regular_action_matrix(Generator::T(1), 3).unwrap();
        let t2 = regular_action_matrix(Generator::T(2), 3).unwrap();
        assert_eq!(t1.mul(&t2).mul(&t1), t2.mul(&t1).mul(&t2));
        assert!(regular_action_matrix(Generator::T(1), 6).is_err());
    }

    #[test]
    fn dimension_matches() {
        assert_eq!(basis_keys(3).unwrap().len(), 8 * 6);
        assert_eq!(basis_keys(4).unwrap().len(), 16 * 24);
    }

    #[test]
    fn json_round_trip() {
        let x = AlgebraElement::basis(3, 0b101, p("213")).add(&AlgebraElement::t(3, 2).scale(&GaussianRational::i())).unwrap();
        assert_eq!(AlgebraElement::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(x.to_string(), "i*T[1,3,2] + c{1,3}*T[2,1,3]");
    }
}
