//! Graded Hopf algebras NSym, QSym, Peak, Peak*, Λ and Ω with exact
//! rational coefficients.
//!
//! Every element is a [`FreeElement`]: one basis tag plus a finitely supported
//! map from indices to rationals. Bases that are only spanning sets
//! (`Q`, `N`, `r`, `q`) can be expanded but never targeted by a conversion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{
    compositions_of, compositions_with_unit, format_set, mask_elements, partitions_of, peak_sets_in,
    submasks, z_lambda, Composition, PeakSet,
};
use crate::error::{Error, Result};
use crate::field::{parse_rational, rat, Rational};
use crate::linalg::{Echelon, SparseMatrix, SparseVec};

/// The six algebras.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Algebra {
    NSym,
    QSym,
    Peak,
    PeakDual,
    Sym,
    Omega,
}

impl Algebra {
    pub fn name(&self) -> &'static str {
        match self {
            Algebra::NSym => "NSym",
            Algebra::QSym => "QSym",
            Algebra::Peak => "Peak",
            Algebra::PeakDual => "PeakDual",
            Algebra::Sym => "Sym",
            Algebra::Omega => "Omega",
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Basis tags.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    /// Complete `H_α`.
    H,
    /// Elementary `E_α`.
    E,
    /// Ribbon `R_α`.
    R,
    /// Products `Q_α = Q_{α_1} ⋯ Q_{α_r}`.
    Q,
    /// Monomial quasisymmetric `M_α`.
    M,
    /// Fundamental quasisymmetric `F_α`.
    F,
    /// Peak basis `Ξ_P` of Peak.
    Xi,
    /// Peak functions `K_P`.
    K,
    /// `N_α = ϑ(M_α)`.
    N,
    /// Complete symmetric `h_λ`.
    SymH,
    /// Monomial symmetric `m_λ`.
    SymM,
    /// Power sums `p_λ`.
    SymP,
    /// Ribbon Schur `r_α`.
    SymR,
    /// Products `q_λ` in Ω.
    OmegaQ,
    /// Odd power sums `p_λ` in Ω.
    OmegaP,
}

pub const ALL_BASES: [Basis; 15] = [
    Basis::H,
    Basis::E,
    Basis::R,
    Basis::Q,
    Basis::M,
    Basis::F,
    Basis::Xi,
    Basis::K,
    Basis::N,
    Basis::SymH,
    Basis::SymM,
    Basis::SymP,
    Basis::SymR,
    Basis::OmegaQ,
    Basis::OmegaP,
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Family {
    Nc,
    Qs,
    Sy,
}

impl Basis {
    pub fn algebra(&self) -> Algebra {
        use Basis::*;
        match self {
            H | E | R | Q => Algebra::NSym,
            M | F => Algebra::QSym,
            Xi => Algebra::Peak,
            K | N => Algebra::PeakDual,
            SymH | SymM | SymP | SymR => Algebra::Sym,
            OmegaQ | OmegaP => Algebra::Omega,
        }
    }

    fn family(&self) -> Family {
        match self.algebra() {
            Algebra::NSym | Algebra::Peak => Family::Nc,
            Algebra::QSym | Algebra::PeakDual => Family::Qs,
            Algebra::Sym | Algebra::Omega => Family::Sy,
        }
    }

    /// Indexed by peak sets rather than compositions.
    pub fn peak_indexed(&self) -> bool {
        matches!(self, Basis::Xi | Basis::K)
    }

    /// Indexed by partitions.
    pub fn partition_indexed(&self) -> bool {
        matches!(self, Basis::SymH | Basis::SymM | Basis::SymP | Basis::OmegaQ | Basis::OmegaP)
    }

    pub fn name(&self) -> &'static str {
        use Basis::*;
        match self {
            H => "H",
            E => "E",
            R => "R",
            Q => "Q",
            M => "M",
            F => "F",
            Xi => "Xi",
            K => "K",
            N => "N",
            SymH => "h",
            SymM => "m",
            SymP => "p",
            SymR => "r",
            OmegaQ => "q",
            OmegaP => "podd",
        }
    }

    pub fn from_name(s: &str) -> Option<Basis> {
        ALL_BASES.iter().copied().find(|b| b.name() == s).or(match s {
            "Ξ" | "X" => Some(Basis::Xi),
            _ => None,
        })
    }

    /// The unit index in degree 0.
    pub fn unit_index(&self) -> Index {
        if self.peak_indexed() {
            Index::Peak(PeakSet::empty(0))
        } else {
            Index::Comp(Composition::empty())
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Basis index: a composition (or partition) or a peak set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Index {
    Comp(Composition),
    Peak(PeakSet),
}

impl Index {
    pub fn degree(&self) -> usize {
        match self {
            Index::Comp(c) => c.size(),
            Index::Peak(p) => p.size(),
        }
    }

    pub fn comp(&self) -> Composition {
        match self {
            Index::Comp(c) => *c,
            Index::Peak(_) => panic!("peak-set index where a composition was expected"),
        }
    }

    pub fn peak(&self) -> PeakSet {
        match self {
            Index::Peak(p) => *p,
            Index::Comp(_) => panic!("composition index where a peak set was expected"),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Index::Comp(c) => json!(c.parts()),
            Index::Peak(p) => json!({ "set": p.elements(), "n": p.size() }),
        }
    }

    fn from_json(v: &Value, basis: Basis) -> Result<Index> {
        let bad = || Error::Parse { position: 0, expected: format!("index for basis {basis}") };
        if basis.peak_indexed() {
            let set: Vec<usize> = v
                .get("set")
                .and_then(|s| s.as_array())
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
                .collect::<Result<_>>()?;
            let n = v.get("n").and_then(|x| x.as_u64()).ok_or_else(bad)? as usize;
            Ok(Index::Peak(PeakSet::new(n, &set)?))
        } else {
            let parts: Vec<usize> = v
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
                .collect::<Result<_>>()?;
            let c = Composition::new(&parts)?;
            if basis.partition_indexed() && !c.is_partition() {
                return Err(Error::InvalidComposition(format!("{c} is not a partition")));
            }
            Ok(Index::Comp(c))
        }
    }
}

type Terms = Vec<(Index, Rational)>;

/// A finitely supported linear combination of basis elements of one basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeElement {
    basis: Basis,
    terms: BTreeMap<Index, Rational>,
}

impl FreeElement {
    pub fn zero(basis: Basis) -> Self {
        FreeElement { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, basis.unit_index())
    }

    pub fn basis_element(basis: Basis, index: Index) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(index, Rational::one());
        FreeElement { basis, terms }
    }

    /// Composition-indexed basis element; partitions are sorted for partition bases.
    pub fn comp(basis: Basis, parts: &[usize]) -> Self {
        let c = Composition::of(parts);
        let c = if basis.partition_indexed() { c.sorted_partition() } else { c };
        Self::basis_element(basis, Index::Comp(c))
    }

    /// Peak-set indexed basis element.
    pub fn peak(basis: Basis, n: usize, set: &[usize]) -> Self {
        Self::basis_element(basis, Index::Peak(PeakSet::new(n, set).expect("valid peak set")))
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Index, Rational)>) -> Self {
        let mut x = Self::zero(basis);
        for (i, c) in terms {
            x.add_term(i, &c);
        }
        x
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn algebra(&self) -> Algebra {
        self.basis.algebra()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &Rational)> {
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

    pub fn coeff(&self, index: &Index) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_comp(&self, parts: &[usize]) -> Rational {
        self.coeff(&Index::Comp(Composition::of(parts)))
    }

    pub fn add_term(&mut self, index: Index, c: &Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(matches!(index, Index::Peak(_)), self.basis.peak_indexed());
        let e = self.terms.entry(index).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&index);
        }
    }

    fn add_terms_scaled(&mut self, terms: &[(Index, Rational)], c: &Rational) {
        for (i, v) in terms {
            self.add_term(*i, &(v * c));
        }
    }

    pub fn add(&self, other: &FreeElement) -> Result<FreeElement> {
        let other = self.align(other)?;
        let mut out = self.clone();
        for (i, c) in other.terms {
            out.add_term(i, &c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreeElement) -> Result<FreeElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreeElement {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> FreeElement {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        FreeElement { basis: self.basis, terms: self.terms.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// Converts `other` into this element's basis when they differ.
    fn align(&self, other: &FreeElement) -> Result<FreeElement> {
        if other.basis == self.basis {
            Ok(other.clone())
        } else {
            convert(other, self.basis)
        }
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: usize) -> FreeElement {
        FreeElement {
            basis: self.basis,
            terms: self.terms.iter().filter(|(i, _)| i.degree() == degree).map(|(i, c)| (*i, c.clone())).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|i| i.degree()).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            Some(d[0])
        } else {
            None
        }
    }

    /// Coefficient of the unit.
    pub fn counit(&self) -> Rational {
        self.coeff(&self.basis.unit_index())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra().name(),
            "basis": self.basis.name(),
            "terms": self.terms.iter().map(|(i, c)| json!({"index": i.to_json(), "coeff": c.to_string()})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<FreeElement> {
        let bad = |what: &str| Error::Parse { position: 0, expected: what.to_string() };
        let basis = v
            .get("basis")
            .and_then(|b| b.as_str())
            .and_then(Basis::from_name)
            .ok_or_else(|| bad("basis name"))?;
        let mut x = FreeElement::zero(basis);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("terms array"))? {
            let idx = Index::from_json(t.get("index").ok_or_else(|| bad("index"))?, basis)?;
            let c = parse_rational(t.get("coeff").and_then(|c| c.as_str()).ok_or_else(|| bad("coeff string"))?)?;
            x.add_term(idx, &c);
        }
        Ok(x)
    }

    /// Formats one basis symbol, e.g. `H[2,1]` or `K{2}@4`.
    pub fn symbol(basis: Basis, index: &Index) -> String {
        match index {
            Index::Comp(c) => format!("{}[{}]", basis.name(), c),
            Index::Peak(p) => format!("{}{}@{}", basis.name(), format_set(p.mask()), p.size()),
        }
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if a.is_one() {
                write!(f, "{}", FreeElement::symbol(self.basis, i))?;
            } else if a.is_integer() {
                write!(f, "{}*{}", a, FreeElement::symbol(self.basis, i))?;
            } else {
                write!(f, "({})*{}", a, FreeElement::symbol(self.basis, i))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Cached single-element expansions

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Edge {
    RtoH,
    HtoR,
    EtoH,
    HtoE,
    QtoH,
    XitoR,
    FtoM,
    MtoF,
    KtoF,
    NtoK,
    HtoP,
    PtoH,
    RtoSymH,
    SymHtoR,
    MtoP,
    PtoM,
    QtoP,
}

type EdgeCache = RwLock<HashMap<(Edge, Index), Arc<Terms>>>;

fn edge_cache() -> &'static EdgeCache {
    static CACHE: OnceLock<EdgeCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn expand_edge(edge: Edge, index: &Index) -> Arc<Terms> {
    if let Some(t) = edge_cache().read().expect("cache lock").get(&(edge, *index)) {
        return t.clone();
    }
    let t = Arc::new(compute_edge(edge, index));
    edge_cache().write().expect("cache lock").insert((edge, *index), t.clone());
    t
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn comp_terms(pairs: impl IntoIterator<Item = (Composition, Rational)>) -> Terms {
    let mut m: BTreeMap<Index, Rational> = BTreeMap::new();
    for (c, v) in pairs {
        *m.entry(Index::Comp(c)).or_insert_with(Rational::zero) += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn part_terms(pairs: impl IntoIterator<Item = (Composition, Rational)>) -> Terms {
    comp_terms(pairs.into_iter().map(|(c, v)| (c.sorted_partition(), v)))
}

/// Multiplies two composition-indexed term lists by concatenation.
fn concat_terms(a: &Terms, b: &Terms, sorted: bool) -> Terms {
    let mut m: BTreeMap<Index, Rational> = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            let mut c = i.comp().concat(&j.comp());
            if sorted {
                c = c.sorted_partition();
            }
            *m.entry(Index::Comp(c)).or_insert_with(Rational::zero) += x * y;
        }
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Expansion of a product basis element `X_α = X_{α_1} ⋯ X_{α_r}` given the single-part expansions.
fn multiplicative(alpha: &Composition, sorted: bool, part: impl Fn(usize) -> Terms) -> Terms {
    let mut acc: Terms = vec![(Index::Comp(Composition::empty()), Rational::one())];
    for p in alpha.parts() {
        acc = concat_terms(&acc, &part(p), sorted);
    }
    acc
}

fn compute_edge(edge: Edge, index: &Index) -> Terms {
    use Edge::*;
    match edge {
        RtoH => {
            let a = index.comp();
            let la = a.len();
            comp_terms(a.coarsenings().map(|b| (b, sign(la - b.len()))))
        }
        HtoR => {
            let a = index.comp();
            comp_terms(a.coarsenings().map(|b| (b, Rational::one())))
        }
        EtoH => {
            let a = index.comp();
            if a.len() > 1 {
                return multiplicative(&a, false, |p| expand_edge(EtoH, &Index::Comp(Composition::row(p))).to_vec());
            }
            let n = a.size();
            if n == 0 {
                return vec![(*index, Rational::one())];
            }
            // E_n = Σ_{i<n} (−1)^{n−i+1} E_i H_{n−i}
            let mut out = FreeElement::zero(Basis::H);
            for i in 0..n {
                let ei = expand_edge(EtoH, &Index::Comp(Composition::row(i)));
                let hi: Terms = vec![(Index::Comp(Composition::row(n - i)), Rational::one())];
                let prod = concat_terms(&ei, &hi, false);
                out.add_terms_scaled(&prod, &sign(n - i + 1));
            }
            out.terms.into_iter().collect()
        }
        HtoE => {
            let a = index.comp();
            if a.len() > 1 {
                return multiplicative(&a, false, |p| expand_edge(HtoE, &Index::Comp(Composition::row(p))).to_vec());
            }
            let n = a.size();
            if n == 0 {
                return vec![(*index, Rational::one())];
            }
            comp_terms(compositions_of(n).expect("n ≥ 1").into_iter().map(|b| (b, sign(n - b.len()))))
        }
        QtoH => {
            let a = index.comp();
            if a.len() > 1 {
                return multiplicative(&a, false, |p| expand_edge(QtoH, &Index::Comp(Composition::row(p))).to_vec());
            }
            let n = a.size();
            if n == 0 {
                return vec![(*index, Rational::one())];
            }
            // Q_n = Σ_k E_k H_{n−k}
            let mut out = FreeElement::zero(Basis::H);
            for k in 0..=n {
                let ek = expand_edge(EtoH, &Index::Comp(Composition::row(k)));
                let hk: Terms = vec![(Index::Comp(Composition::row(n - k)), Rational::one())];
                out.add_terms_scaled(&concat_terms(&ek, &hk, false), &Rational::one());
            }
            out.terms.into_iter().collect()
        }
        XitoR => {
            let p = index.peak();
            if p.size() == 0 {
                return vec![(Index::Comp(Composition::empty()), Rational::one())];
            }
            comp_terms(
                compositions_of(p.size())
                    .expect("n ≥ 1")
                    .into_iter()
                    .filter(|a| a.peak_set() == p)
                    .map(|a| (a, Rational::one())),
            )
        }
        FtoM => {
            let a = index.comp();
            comp_terms(a.refinements().map(|b| (b, Rational::one())))
        }
        MtoF => {
            let a = index.comp();
            let la = a.len();
            comp_terms(a.refinements().map(|b| (b, sign(b.len() - la))))
        }
        KtoF => {
            let p = index.peak();
            let n = p.size();
            if n == 0 {
                return vec![(Index::Comp(Composition::empty()), Rational::one())];
            }
            let c = Rational::from_integer(BigInt::from(1u64 << (p.len() + 1)));
            comp_terms(
                compositions_of(n)
                    .expect("n ≥ 1")
                    .into_iter()
                    .filter(|a| p.mask() & !a.delta_shift_mask() == 0)
                    .map(|a| (a, c.clone())),
            )
        }
        NtoK => {
            let f = expand_edge(MtoF, index);
            let mut out = BTreeMap::new();
            for (b, c) in f.iter() {
                let k = if b.degree() == 0 { PeakSet::empty(0) } else { b.comp().peak_set() };
                *out.entry(Index::Peak(k)).or_insert_with(Rational::zero) += c;
            }
            out.into_iter().filter(|(_, v): &(Index, Rational)| !v.is_zero()).collect()
        }
        HtoP => {
            let a = index.comp();
            if a.len() > 1 {
                return multiplicative(&a, true, |p| expand_edge(HtoP, &Index::Comp(Composition::row(p))).to_vec());
            }
            let n = a.size();
            if n == 0 {
                return vec![(*index, Rational::one())];
            }
            // h_n = Σ_λ p_λ / z_λ
            part_terms(
                partitions_of(n)
                    .into_iter()
                    .map(|l| (l, Rational::new(BigInt::one(), z_lambda(&l.parts())))),
            )
        }
        PtoH => {
            let a = index.comp();
            if a.len() > 1 {
                return multiplicative(&a, true, |p| expand_edge(PtoH, &Index::Comp(Composition::row(p))).to_vec());
            }
            let n = a.size();
            if n == 0 {
                return vec![(*index, Rational::one())];
            }
            // p_n = n h_n − Σ_{i=1}^{n−1} p_i h_{n−i}
            let mut out = FreeElement::zero(Basis::SymH);
            out.add_term(Index::Comp(Composition::row(n)), &rat(n as i64));
            for i in 1..n {
                let pi = expand_edge(PtoH, &Index::Comp(Composition::row(i)));
                let hi: Terms = vec![(Index::Comp(Composition::row(n - i)), Rational::one())];
                out.add_terms_scaled(&concat_terms(&pi, &hi, true), &-Rational::one());
            }
            out.terms.into_iter().collect()
        }
        RtoSymH => {
            let h = expand_edge(RtoH, index);
            part_terms(h.iter().map(|(i, c)| (i.comp(), c.clone())))
        }
        SymHtoR => {
            let a = index.comp();
            comp_terms(a.coarsenings().map(|b| (b, Rational::one())))
        }
        PtoM => {
            // p_λ = Π M_(λ_i) in QSym; read off partition coefficients
            let mut acc = FreeElement::one(Basis::M);
            for p in index.comp().parts() {
                acc = qsym_m_product(&acc, &FreeElement::comp(Basis::M, &[p]));
            }
            acc.terms
                .into_iter()
                .filter(|(i, _)| {
                    let c = i.comp();
                    c.is_partition()
                })
                .collect()
        }
        MtoP => {
            let n = index.degree();
            let inv = sym_m_inverse(n);
            let parts = partitions_of(n);
            let col = parts.iter().position(|l| Index::Comp(*l) == *index).expect("partition index");
            inv.cols[col].iter().map(|(r, v)| (Index::Comp(parts[*r]), v.clone())).collect()
        }
        QtoP => {
            let a = index.comp();
            if a.len() > 1 {
                return multiplicative(&a, true, |p| expand_edge(QtoP, &Index::Comp(Composition::row(p))).to_vec());
            }
            let n = a.size();
            if n == 0 {
                return vec![(*index, Rational::one())];
            }
            // q_n = Σ_{λ ⊢ n odd} 2^{ℓ(λ)} p_λ / z_λ
            part_terms(partitions_of(n).into_iter().filter(|l| l.parts().iter().all(|p| p % 2 == 1)).map(|l| {
                let num = BigInt::from(1u64 << l.len());
                (l, Rational::new(num, z_lambda(&l.parts())))
            }))
        }
    }
}

/// Inverse of the matrix `p_λ ↦ m`-coordinates in degree `n` (columns indexed by partitions).
fn sym_m_inverse(n: usize) -> Arc<SparseMatrix<Rational>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<SparseMatrix<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(m) = cache.read().expect("lock").get(&n) {
        return m.clone();
    }
    let parts = partitions_of(n);
    let pos: HashMap<Index, usize> = parts.iter().enumerate().map(|(k, l)| (Index::Comp(*l), k)).collect();
    let cols: Vec<SparseVec<Rational>> = parts
        .iter()
        .map(|l| SparseVec::from_pairs(expand_edge(Edge::PtoM, &Index::Comp(*l)).iter().map(|(i, c)| (pos[i], c.clone()))))
        .collect();
    let m = SparseMatrix::from_columns(parts.len(), cols);
    let inv = Arc::new(m.inverse().expect("p to m is invertible over Q"));
    cache.write().expect("lock").insert(n, inv.clone());
    inv
}

fn apply_edge(x: &FreeElement, edge: Edge, target: Basis) -> FreeElement {
    let mut out = FreeElement::zero(target);
    for (i, c) in &x.terms {
        out.add_terms_scaled(&expand_edge(edge, i), c);
    }
    out
}

// ---------------------------------------------------------------------------
// Conversions

fn no_path(from: Basis, to: Basis) -> Error {
    Error::NoConversionPath { from: from.name().into(), to: to.name().into() }
}

fn to_nc_h(x: &FreeElement) -> FreeElement {
    match x.basis {
        Basis::H => x.clone(),
        Basis::R => apply_edge(x, Edge::RtoH, Basis::H),
        Basis::E => apply_edge(x, Edge::EtoH, Basis::H),
        Basis::Q => apply_edge(x, Edge::QtoH, Basis::H),
        Basis::Xi => apply_edge(&apply_edge(x, Edge::XitoR, Basis::R), Edge::RtoH, Basis::H),
        _ => unreachable!("not a noncommutative basis"),
    }
}

fn to_qs_m(x: &FreeElement) -> FreeElement {
    match x.basis {
        Basis::M => x.clone(),
        Basis::F => apply_edge(x, Edge::FtoM, Basis::M),
        Basis::K => apply_edge(&apply_edge(x, Edge::KtoF, Basis::F), Edge::FtoM, Basis::M),
        Basis::N => apply_edge(&apply_edge(&apply_edge(x, Edge::NtoK, Basis::K), Edge::KtoF, Basis::F), Edge::FtoM, Basis::M),
        _ => unreachable!("not a quasisymmetric basis"),
    }
}

fn to_sy_p(x: &FreeElement) -> FreeElement {
    match x.basis {
        Basis::SymP => x.clone(),
        Basis::OmegaP => FreeElement { basis: Basis::SymP, terms: x.terms.clone() },
        Basis::SymH => apply_edge(x, Edge::HtoP, Basis::SymP),
        Basis::SymR => apply_edge(&apply_edge(x, Edge::RtoSymH, Basis::SymH), Edge::HtoP, Basis::SymP),
        Basis::SymM => apply_edge(x, Edge::MtoP, Basis::SymP),
        Basis::OmegaQ => apply_edge(x, Edge::QtoP, Basis::SymP),
        _ => unreachable!("not a symmetric basis"),
    }
}

/// Ribbon expansion to Ξ, or a non-membership error.
fn r_to_xi(x: &FreeElement) -> Result<FreeElement> {
    let mut y = FreeElement::zero(Basis::Xi);
    let mut seen = std::collections::HashSet::new();
    for (i, _) in &x.terms {
        let p = if i.degree() == 0 { PeakSet::empty(0) } else { i.comp().peak_set() };
        if seen.insert(p) {
            let w = if p.size() == 0 { Composition::empty() } else { p.witness() };
            y.add_term(Index::Peak(p), &x.coeff(&Index::Comp(w)));
        }
    }
    if apply_edge(&y, Edge::XitoR, Basis::R) != *x {
        return Err(Error::NotInSubalgebra("Peak".into()));
    }
    Ok(y)
}

/// Row selection and inverse used to read `K`-coordinates from `F`-coordinates in degree `n`.
struct KReader {
    rows: Vec<Composition>,
    peaks: Vec<PeakSet>,
    inverse: SparseMatrix<Rational>,
}

fn k_reader(n: usize) -> Arc<KReader> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<KReader>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().expect("lock").get(&n) {
        return r.clone();
    }
    let peaks = peak_sets_in(n);
    let comps = compositions_of(n).expect("n ≥ 1");
    let cols: Vec<BTreeMap<Index, Rational>> = peaks
        .iter()
        .map(|p| expand_edge(Edge::KtoF, &Index::Peak(*p)).iter().cloned().collect())
        .collect();
    let mut ech = Echelon::new(peaks.len());
    let mut rows = Vec::new();
    for a in &comps {
        let row = SparseVec::from_pairs(cols.iter().enumerate().map(|(j, c)| (j, c.get(&Index::Comp(*a)).cloned().unwrap_or_else(Rational::zero))));
        if ech.insert(row) {
            rows.push(*a);
        }
        if rows.len() == peaks.len() {
            break;
        }
    }
    let square = SparseMatrix::from_dense_rows(
        &rows
            .iter()
            .map(|a| cols.iter().map(|c| c.get(&Index::Comp(*a)).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect::<Vec<Vec<Rational>>>(),
    );
    let inverse = square.inverse().expect("K-expansions are independent");
    let r = Arc::new(KReader { rows, peaks, inverse });
    cache.write().expect("lock").insert(n, r.clone());
    r
}

/// `F`-expansion to `K`; `check` re-expands and rejects non-members.
fn f_to_k(x: &FreeElement, check: bool) -> Result<FreeElement> {
    let mut y = FreeElement::zero(Basis::K);
    for d in x.degrees() {
        if d == 0 {
            y.add_term(Index::Peak(PeakSet::empty(0)), &x.counit());
            continue;
        }
        let r = k_reader(d);
        let v = SparseVec::from_pairs(r.rows.iter().enumerate().map(|(k, a)| (k, x.coeff(&Index::Comp(*a)))));
        for (j, c) in r.inverse.apply(&v).iter() {
            y.add_term(Index::Peak(r.peaks[*j]), c);
        }
    }
    if check && apply_edge(&y, Edge::KtoF, Basis::F) != *x {
        return Err(Error::NotInSubalgebra("PeakDual".into()));
    }
    Ok(y)
}

fn p_to_podd(x: &FreeElement) -> Result<FreeElement> {
    if x.terms.keys().any(|i| i.comp().parts().iter().any(|p| p % 2 == 0)) {
        return Err(Error::NotInSubalgebra("Omega".into()));
    }
    Ok(FreeElement { basis: Basis::OmegaP, terms: x.terms.clone() })
}

/// Converts `x` to another basis of the same algebra or of its ambient algebra.
pub fn convert(x: &FreeElement, target: Basis) -> Result<FreeElement> {
    let from = x.basis;
    if from == target {
        return Ok(x.clone());
    }
    if from.family() != target.family() {
        return Err(no_path(from, target));
    }
    match from.family() {
        Family::Nc => {
            // fast paths between R and Ξ
            if from == Basis::Xi && target == Basis::R {
                return Ok(apply_edge(x, Edge::XitoR, Basis::R));
            }
            let h = if from == Basis::R && target == Basis::Xi { None } else { Some(to_nc_h(x)) };
            match target {
                Basis::H => Ok(h.expect("hub")),
                Basis::R => Ok(apply_edge(&h.expect("hub"), Edge::HtoR, Basis::R)),
                Basis::E => Ok(apply_edge(&h.expect("hub"), Edge::HtoE, Basis::E)),
                Basis::Xi => match h {
                    None => r_to_xi(x),
                    Some(h) => r_to_xi(&apply_edge(&h, Edge::HtoR, Basis::R)),
                },
                _ => Err(no_path(from, target)),
            }
        }
        Family::Qs => {
            if from == Basis::K && target == Basis::F {
                return Ok(apply_edge(x, Edge::KtoF, Basis::F));
            }
            if from == Basis::N && target == Basis::K {
                return Ok(apply_edge(x, Edge::NtoK, Basis::K));
            }
            if from == Basis::F && target == Basis::K {
                return f_to_k(x, true);
            }
            let m = to_qs_m(x);
            match target {
                Basis::M => Ok(m),
                Basis::F => Ok(apply_edge(&m, Edge::MtoF, Basis::F)),
                Basis::K => f_to_k(&apply_edge(&m, Edge::MtoF, Basis::F), true),
                _ => Err(no_path(from, target)),
            }
        }
        Family::Sy => {
            let p = to_sy_p(x);
            match target {
                Basis::SymP => Ok(p),
                Basis::SymH => Ok(apply_edge(&p, Edge::PtoH, Basis::SymH)),
                Basis::SymM => Ok(apply_edge(&p, Edge::PtoM, Basis::SymM)),
                Basis::SymR => Ok(apply_edge(&apply_edge(&p, Edge::PtoH, Basis::SymH), Edge::SymHtoR, Basis::SymR)),
                Basis::OmegaP => p_to_podd(&p),
                _ => Err(no_path(from, target)),
            }
        }
    }
}

/// Whether `x` lies in the sub-Hopf algebra named by `algebra`.
pub fn is_member(x: &FreeElement, algebra: Algebra) -> bool {
    let target = match algebra {
        Algebra::Peak => Basis::Xi,
        Algebra::PeakDual => Basis::K,
        Algebra::Omega => Basis::OmegaP,
        Algebra::NSym => Basis::H,
        Algebra::QSym => Basis::M,
        Algebra::Sym => Basis::SymP,
    };
    convert(x, target).is_ok()
}

// ---------------------------------------------------------------------------
// Products

/// Quasi-shuffle of two compositions, with multiplicities.
pub fn quasi_shuffle(a: &Composition, b: &Composition) -> Arc<Vec<(Composition, u64)>> {
    type QshCache = RwLock<HashMap<(Composition, Composition), Arc<Vec<(Composition, u64)>>>>;
    static CACHE: OnceLock<QshCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().expect("lock").get(&(*a, *b)) {
        return r.clone();
    }
    fn rec(a: &[usize], b: &[usize], out: &mut BTreeMap<Vec<usize>, u64>, prefix: &mut Vec<usize>) {
        if a.is_empty() || b.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            *out.entry(w).or_insert(0) += 1;
            return;
        }
        prefix.push(a[0]);
        rec(&a[1..], b, out, prefix);
        prefix.pop();
        prefix.push(b[0]);
        rec(a, &b[1..], out, prefix);
        prefix.pop();
        prefix.push(a[0] + b[0]);
        rec(&a[1..], &b[1..], out, prefix);
        prefix.pop();
    }
    let mut out = BTreeMap::new();
    rec(&a.parts(), &b.parts(), &mut out, &mut Vec::new());
    let r: Arc<Vec<(Composition, u64)>> = Arc::new(out.into_iter().map(|(w, m)| (Composition::of(&w), m)).collect());
    cache.write().expect("lock").insert((*a, *b), r.clone());
    r
}

fn quasi_shuffle_terms(x: &FreeElement, y: &FreeElement, basis: Basis) -> FreeElement {
    let mut out = FreeElement::zero(basis);
    for (i, a) in &x.terms {
        for (j, b) in &y.terms {
            let ab = a * b;
            for (c, m) in quasi_shuffle(&i.comp(), &j.comp()).iter() {
                out.add_term(Index::Comp(*c), &(&ab * Rational::from_integer(BigInt::from(*m))));
            }
        }
    }
    out
}

fn qsym_m_product(x: &FreeElement, y: &FreeElement) -> FreeElement {
    quasi_shuffle_terms(x, y, Basis::M)
}

fn concat_product(x: &FreeElement, y: &FreeElement, sorted: bool) -> FreeElement {
    let a: Terms = x.terms.iter().map(|(i, c)| (*i, c.clone())).collect();
    let b: Terms = y.terms.iter().map(|(i, c)| (*i, c.clone())).collect();
    FreeElement::from_terms(x.basis, concat_terms(&a, &b, sorted))
}

/// Product in the common algebra; the result is expressed in the basis of `x`.
pub fn product(x: &FreeElement, y: &FreeElement) -> Result<FreeElement> {
    if x.basis.family() != y.basis.family() {
        return Err(Error::Mismatch(format!("cannot multiply {} by {}", x.algebra(), y.algebra())));
    }
    let y = if y.basis == x.basis { y.clone() } else { convert(y, x.basis).or_else(|_| Ok::<_, Error>(y.clone()))? };
    use Basis::*;
    match (x.basis, y.basis) {
        (H, H) | (E, E) | (Q, Q) => Ok(concat_product(x, &y, false)),
        (SymH, SymH) | (SymP, SymP) | (OmegaQ, OmegaQ) | (OmegaP, OmegaP) => Ok(concat_product(x, &y, true)),
        (M, M) | (N, N) => Ok(quasi_shuffle_terms(x, &y, x.basis)),
        (K, K) => f_to_k(&convert(&qsym_m_product(&to_qs_m(x), &to_qs_m(&y)), F)?, false),
        _ => match x.basis.family() {
            Family::Nc => {
                let h = concat_product(&to_nc_h(x), &to_nc_h(&y), false);
                convert(&h, x.basis).or(Ok(h))
            }
            Family::Qs => {
                let m = qsym_m_product(&to_qs_m(x), &to_qs_m(&y));
                convert(&m, x.basis).or(Ok(m))
            }
            Family::Sy => {
                let p = concat_product(&to_sy_p(x), &to_sy_p(&y), true);
                convert(&p, x.basis).or(Ok(p))
            }
        },
    }
}

/// `x^k`.
pub fn power(x: &FreeElement, k: usize) -> Result<FreeElement> {
    let mut acc = FreeElement::one(x.basis);
    for _ in 0..k {
        acc = product(&acc, x)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Tensor squares and coproducts

/// An element of `A ⊗ B`, each leg in a fixed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    left: Basis,
    right: Basis,
    terms: BTreeMap<(Index, Index), Rational>,
}

impl TensorElement {
    pub fn zero(left: Basis, right: Basis) -> Self {
        TensorElement { left, right, terms: BTreeMap::new() }
    }

    pub fn pure(x: &FreeElement, y: &FreeElement) -> Self {
        let mut t = Self::zero(x.basis, y.basis);
        for (i, a) in &x.terms {
            for (j, b) in &y.terms {
                t.add_term(*i, *j, &(a * b));
            }
        }
        t
    }

    pub fn bases(&self) -> (Basis, Basis) {
        (self.left, self.right)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Index, Index), &Rational)> {
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

    pub fn coeff(&self, i: &Index, j: &Index) -> Rational {
        self.terms.get(&(*i, *j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, i: Index, j: Index, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        let other = other.convert_legs(self.left, self.right)?;
        let mut out = self.clone();
        for ((i, j), c) in other.terms {
            out.add_term(i, j, &c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        let mut out = Self::zero(self.left, self.right);
        for ((i, j), v) in &self.terms {
            out.add_term(*i, *j, &(v * c));
        }
        out
    }

    /// Applies linear maps to each leg.
    pub fn map_legs(
        &self,
        left: Basis,
        right: Basis,
        f: impl Fn(&FreeElement) -> Result<FreeElement>,
        g: impl Fn(&FreeElement) -> Result<FreeElement>,
    ) -> Result<TensorElement> {
        let mut out = Self::zero(left, right);
        let mut lcache: HashMap<Index, FreeElement> = HashMap::new();
        let mut rcache: HashMap<Index, FreeElement> = HashMap::new();
        for ((i, j), c) in &self.terms {
            if !lcache.contains_key(i) {
                lcache.insert(*i, f(&FreeElement::basis_element(self.left, *i))?);
            }
            if !rcache.contains_key(j) {
                rcache.insert(*j, g(&FreeElement::basis_element(self.right, *j))?);
            }
            let (a, b) = (&lcache[i], &rcache[j]);
            for (k, x) in &a.terms {
                for (l, y) in &b.terms {
                    out.add_term(*k, *l, &(c * x * y));
                }
            }
        }
        Ok(out)
    }

    /// Converts both legs; membership conversions (to Ξ, K) use a linear
    /// left inverse on each leg followed by an exact re-expansion check.
    pub fn convert_legs(&self, left: Basis, right: Basis) -> Result<TensorElement> {
        if (left, right) == (self.left, self.right) {
            return Ok(self.clone());
        }
        let via = |b: Basis, target: Basis| -> Option<Basis> {
            match (b, target) {
                (x, y) if x == y => None,
                (_, Basis::Xi) => Some(Basis::R),
                (_, Basis::K) => Some(Basis::F),
                (_, Basis::OmegaP) => Some(Basis::SymP),
                _ => None,
            }
        };
        let lv = via(self.left, left);
        let rv = via(self.right, right);
        if lv.is_none() && rv.is_none() {
            return self.map_legs(left, right, |x| convert(x, left), |y| convert(y, right));
        }
        let mid_l = lv.unwrap_or(left);
        let mid_r = rv.unwrap_or(right);
        let mid = self.map_legs(mid_l, mid_r, |x| convert(x, mid_l), |y| convert(y, mid_r))?;
        let candidate = mid.map_legs(left, right, |x| leg_projection(x, left), |y| leg_projection(y, right))?;
        let back = candidate.map_legs(mid_l, mid_r, |x| convert(x, mid_l), |y| convert(y, mid_r))?;
        if back != mid {
            return Err(Error::NotInSubalgebra(format!("{} ⊗ {}", left.algebra(), right.algebra())));
        }
        Ok(candidate)
    }

    /// `Σ c ⟨x_i, y⟩ z_j`-style contraction helper: applies a functional to the right leg.
    pub fn contract_right(&self, f: impl Fn(&Index) -> Result<Rational>) -> Result<FreeElement> {
        let mut out = FreeElement::zero(self.left);
        for ((i, j), c) in &self.terms {
            let v = f(j)?;
            out.add_term(*i, &(c * v));
        }
        Ok(out)
    }

    /// Multiplication in the tensor square, componentwise without signs.
    pub fn multiply(&self, other: &TensorElement) -> Result<TensorElement> {
        let mut out = Self::zero(self.left, self.right);
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                let x = product(&FreeElement::basis_element(self.left, *i), &FreeElement::basis_element(other.left, *k))?;
                let y = product(&FreeElement::basis_element(self.right, *j), &FreeElement::basis_element(other.right, *l))?;
                let x = convert(&x, self.left)?;
                let y = convert(&y, self.right)?;
                let ab = a * b;
                for (p, u) in &x.terms {
                    for (q, v) in &y.terms {
                        out.add_term(*p, *q, &(&ab * u * v));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn swap(&self) -> TensorElement {
        let mut out = Self::zero(self.right, self.left);
        for ((i, j), c) in &self.terms {
            out.add_term(*j, *i, c);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, j), c)| {
                format!("{}*{}⊗{}", c, FreeElement::symbol(self.left, i), FreeElement::symbol(self.right, j))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Linear left inverse of the inclusion of a sub-basis, exact on members.
fn leg_projection(x: &FreeElement, target: Basis) -> Result<FreeElement> {
    match target {
        Basis::Xi => {
            let mut y = FreeElement::zero(Basis::Xi);
            for (i, c) in &x.terms {
                let a = i.comp();
                let p = if a.size() == 0 { PeakSet::empty(0) } else { a.peak_set() };
                let w = if a.size() == 0 { a } else { p.witness() };
                if a == w {
                    y.add_term(Index::Peak(p), c);
                }
            }
            Ok(y)
        }
        Basis::K => f_to_k(x, false),
        _ => convert(x, target),
    }
}

fn split_parts(alpha: &Composition, sorted: bool) -> Vec<(Composition, Composition)> {
    let mut acc: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
    for p in alpha.parts() {
        let mut next = Vec::with_capacity(acc.len() * (p + 1));
        for (l, r) in &acc {
            for k in 0..=p {
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                if k > 0 {
                    l2.push(k);
                }
                if p - k > 0 {
                    r2.push(p - k);
                }
                next.push((l2, r2));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(l, r)| {
            let (mut a, mut b) = (Composition::of(&l), Composition::of(&r));
            if sorted {
                a = a.sorted_partition();
                b = b.sorted_partition();
            }
            (a, b)
        })
        .collect()
}

fn primitive_splits(alpha: &Composition) -> Vec<(Composition, Composition)> {
    let parts = alpha.parts();
    let r = parts.len();
    (0u32..1 << r)
        .map(|m| {
            let l: Vec<usize> = (0..r).filter(|k| m >> k & 1 == 1).map(|k| parts[k]).collect();
            let rr: Vec<usize> = (0..r).filter(|k| m >> k & 1 == 0).map(|k| parts[k]).collect();
            (Composition::of(&l).sorted_partition(), Composition::of(&rr).sorted_partition())
        })
        .collect()
}

/// Coproduct; legs are expressed in the basis of `x` whenever possible.
pub fn coproduct(x: &FreeElement) -> Result<TensorElement> {
    use Basis::*;
    let b = x.basis;
    let native = |x: &FreeElement| -> TensorElement {
        let mut t = TensorElement::zero(x.basis, x.basis);
        for (i, c) in &x.terms {
            let a = i.comp();
            let splits = match x.basis {
                H | E | Q => split_parts(&a, false),
                SymH | OmegaQ => split_parts(&a, true),
                SymP | OmegaP => primitive_splits(&a),
                M | N => a.deconcatenations(),
                _ => unreachable!("not a native coproduct basis"),
            };
            for (l, r) in splits {
                t.add_term(Index::Comp(l), Index::Comp(r), c);
            }
        }
        t
    };
    match b {
        H | E | Q | SymH | OmegaQ | SymP | OmegaP | M | N => Ok(native(x)),
        R | Xi => native(&to_nc_h(x)).convert_legs(b, b),
        F => native(&to_qs_m(x)).convert_legs(F, F),
        K => {
            // Δ(K_P) = (ϑ ⊗ ϑ) Δ(F_α) for any α with P(α) = P
            let mut t = TensorElement::zero(K, K);
            for (i, c) in &x.terms {
                let p = i.peak();
                let w = if p.size() == 0 { Composition::empty() } else { p.witness() };
                let df = native(&to_qs_m(&FreeElement::basis_element(F, Index::Comp(w)))).convert_legs(F, F)?;
                let dk = df.map_legs(K, K, vartheta, vartheta)?;
                t = t.add(&dk.scale(c))?;
            }
            Ok(t)
        }
        SymM | SymR => native(&to_sy_p(x)).convert_legs(b, b),
    }
}

// ---------------------------------------------------------------------------
// Morphisms

/// Descent-to-peak transform `Θ: NSym → Peak`, `H_n ↦ Q_n`; result in `Ξ`.
pub fn theta_transform(x: &FreeElement) -> Result<FreeElement> {
    if x.basis.family() != Family::Nc {
        return Err(Error::Mismatch(format!("Θ expects an NSym element, got {}", x.algebra())));
    }
    let h = to_nc_h(x);
    let q = FreeElement { basis: Basis::Q, terms: h.terms };
    convert(&to_nc_h(&q), Basis::Xi)
}

/// `Θ` without the final conversion to `Ξ`: the `H`-expansion of `Θ(x)`.
pub fn theta_transform_h(x: &FreeElement) -> FreeElement {
    let h = to_nc_h(x);
    to_nc_h(&FreeElement { basis: Basis::Q, terms: h.terms })
}

/// Descent-to-peak map `ϑ: QSym → Peak*`, `F_α ↦ K_{P(α)}`; result in `K`.
pub fn vartheta(f: &FreeElement) -> Result<FreeElement> {
    if f.basis.family() != Family::Qs {
        return Err(Error::Mismatch(format!("ϑ expects a QSym element, got {}", f.algebra())));
    }
    let fx = convert(f, Basis::F)?;
    let mut out = FreeElement::zero(Basis::K);
    for (i, c) in &fx.terms {
        let a = i.comp();
        let p = if a.size() == 0 { PeakSet::empty(0) } else { a.peak_set() };
        out.add_term(Index::Peak(p), c);
    }
    Ok(out)
}

/// Forgetful map `π: NSym → Λ`; `R_α ↦ r_α`, everything else through `H ↦ h`.
pub fn forgetful_pi(x: &FreeElement) -> Result<FreeElement> {
    match x.basis {
        Basis::R => Ok(FreeElement { basis: Basis::SymR, terms: x.terms.clone() }),
        b if b.family() == Family::Nc => {
            let h = to_nc_h(x);
            let mut out = FreeElement::zero(Basis::SymH);
            for (i, c) in &h.terms {
                out.add_term(Index::Comp(i.comp().sorted_partition()), c);
            }
            Ok(out)
        }
        _ => Err(Error::Mismatch(format!("π expects an NSym element, got {}", x.algebra()))),
    }
}

/// `θ: Λ → Ω`, `h_n ↦ q_n`, computed as `p_n ↦ (1 − (−1)^n) p_n`; result in odd power sums.
pub fn theta_sym(g: &FreeElement) -> Result<FreeElement> {
    if g.basis.family() != Family::Sy {
        return Err(Error::Mismatch(format!("θ expects a symmetric function, got {}", g.algebra())));
    }
    let p = to_sy_p(g);
    let mut out = FreeElement::zero(Basis::OmegaP);
    for (i, c) in &p.terms {
        let l = i.comp();
        if l.parts().iter().all(|x| x % 2 == 1) {
            out.add_term(*i, &(c * Rational::from_integer(BigInt::from(1u64 << l.len()))));
        }
    }
    Ok(out)
}

/// Inclusion `Λ ⊂ QSym` (`p_n ↦ M_(n)`); result in `M`.
pub fn sym_to_qsym(g: &FreeElement) -> Result<FreeElement> {
    if g.basis.family() != Family::Sy {
        return Err(Error::Mismatch(format!("expected a symmetric function, got {}", g.algebra())));
    }
    let p = to_sy_p(g);
    let mut out = FreeElement::zero(Basis::M);
    for (i, c) in &p.terms {
        let mut acc = FreeElement::one(Basis::M);
        for part in i.comp().parts() {
            acc = qsym_m_product(&acc, &FreeElement::comp(Basis::M, &[part]));
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

/// `K_P` as (`F`-expansion from the defining sum, `M`-expansion `Σ 2^{ℓ(α)} M_α`).
pub fn k_expansions(p: &PeakSet) -> (FreeElement, FreeElement) {
    let f = FreeElement::from_terms(Basis::F, expand_edge(Edge::KtoF, &Index::Peak(*p)).iter().cloned());
    let mut m = FreeElement::zero(Basis::M);
    let n = p.size();
    // K_P = Σ_{α : P ⊆ D(α) ∪ (D(α)+1)} 2^{ℓ(α)} M_α
    for a in compositions_with_unit(n) {
        let d = a.descent_mask();
        if n == 0 || p.mask() & !(d | d << 1) == 0 {
            m.add_term(Index::Comp(a), &Rational::from_integer(BigInt::from(1u64 << a.len())));
        }
    }
    (f, m)
}

/// Pairing `⟨NSym, QSym⟩` with `⟨H_α, M_β⟩ = δ_{α,β}`.
pub fn pairing(x: &FreeElement, f: &FreeElement) -> Result<Rational> {
    if x.basis.family() != Family::Nc || f.basis.family() != Family::Qs {
        return Err(Error::Mismatch("pairing expects (NSym, QSym)".into()));
    }
    if x.basis == Basis::R && f.basis == Basis::F {
        return Ok(x.terms.iter().map(|(i, c)| c * f.coeff(i)).sum());
    }
    let h = to_nc_h(x);
    let m = to_qs_m(f);
    Ok(h.terms.iter().map(|(i, c)| c * m.coeff(i)).sum())
}

/// Pairing `[Peak, Peak*]` with `[Ξ_P, K_Q] = δ_{P,Q}`.
pub fn peak_pairing(x: &FreeElement, y: &FreeElement) -> Result<Rational> {
    let xi = convert(x, Basis::Xi)?;
    let k = convert(y, Basis::K)?;
    Ok(xi.terms.iter().map(|(i, c)| c * k.coeff(i)).sum())
}

/// Inner product on Ω with `[p_λ, p_μ] = z_λ 2^{−ℓ(λ)} δ_{λ,μ}`.
pub fn omega_inner_product(u: &FreeElement, v: &FreeElement) -> Result<Rational> {
    let a = convert(u, Basis::OmegaP)?;
    let b = convert(v, Basis::OmegaP)?;
    Ok(a.terms
        .iter()
        .map(|(i, c)| {
            let l = i.comp();
            let w = Rational::new(z_lambda(&l.parts()), BigInt::from(1u64 << l.len()));
            c * b.coeff(i) * w
        })
        .sum())
}

/// Rank of the degree-`d` components of `elements` (all in one basis family).
pub fn graded_rank(elements: &[FreeElement], degree: usize) -> Result<usize> {
    let Some(first) = elements.first() else { return Ok(0) };
    let basis = first.basis;
    let mut cols: HashMap<Index, usize> = HashMap::new();
    let mut vecs = Vec::new();
    for e in elements {
        let e = convert(e, basis)?.component(degree);
        let mut pairs = Vec::new();
        for (i, c) in &e.terms {
            let k = cols.len();
            let col = *cols.entry(*i).or_insert(k);
            pairs.push((col, c.clone()));
        }
        vecs.push(SparseVec::from_pairs(pairs));
    }
    Ok(crate::linalg::rank(&vecs))
}

/// `Q_n` in the `Q` basis.
pub fn q_gen(n: usize) -> FreeElement {
    if n == 0 {
        FreeElement::one(Basis::Q)
    } else {
        FreeElement::comp(Basis::Q, &[n])
    }
}

/// Valid `Ξ` indices of a given degree.
pub fn peak_basis(n: usize) -> Vec<Index> {
    if n == 0 {
        vec![Index::Peak(PeakSet::empty(0))]
    } else {
        peak_sets_in(n).into_iter().map(Index::Peak).collect()
    }
}

/// `Θ(R_α)` by the closed formula `Σ_{P ⊆ D△(D+1)} 2^{|P|+1} Ξ_P`.
pub fn theta_ribbon_formula(alpha: &Composition) -> FreeElement {
    let n = alpha.size();
    let mut out = FreeElement::zero(Basis::Xi);
    if n == 0 {
        return FreeElement::one(Basis::Xi);
    }
    let allowed = alpha.delta_shift_mask();
    for p in peak_sets_in(n) {
        if p.mask() & !allowed == 0 {
            out.add_term(Index::Peak(p), &Rational::from_integer(BigInt::from(1u64 << (p.len() + 1))));
        }
    }
    out
}

/// Peak sets in `[n]` contained in a mask, ascending.
pub fn peak_sets_within(n: usize, mask: u32) -> Vec<PeakSet> {
    let mut v: Vec<PeakSet> = submasks(mask).filter_map(|m| PeakSet::from_mask(n, m).ok()).collect();
    v.sort();
    v
}

/// Elements of a peak set mask, for display.
pub fn peak_elements(p: &PeakSet) -> Vec<usize> {
    mask_elements(p.mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_frac;

    fn e(b: Basis, p: &[usize]) -> FreeElement {
        FreeElement::comp(b, p)
    }

    fn terms(x: &FreeElement) -> Vec<(String, String)> {
        x.terms().map(|(i, c)| (FreeElement::symbol(x.basis(), i), c.to_string())).collect()
    }

    #[test]
    fn convert_examples() {
        let q2 = convert(&e(Basis::Q, &[2]), Basis::H).unwrap();
        assert_eq!(q2, e(Basis::H, &[1, 1]).scale(&rat(2)));
        let r11 = convert(&e(Basis::R, &[1, 1]), Basis::H).unwrap();
        assert_eq!(r11, e(Basis::H, &[1, 1]).sub(&e(Basis::H, &[2])).unwrap());
        let f2 = convert(&e(Basis::F, &[2]), Basis::M).unwrap();
        assert_eq!(f2, e(Basis::M, &[2]).add(&e(Basis::M, &[1, 1])).unwrap());
        assert!(matches!(convert(&e(Basis::H, &[2]), Basis::Q), Err(Error::NoConversionPath { .. })));
        assert!(matches!(convert(&e(Basis::H, &[2, 1]), Basis::Xi), Err(Error::NotInSubalgebra(_))));
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(&e(Basis::H, &[2]), &e(Basis::H, &[1])).unwrap(), e(Basis::H, &[2, 1]));
        let mm = product(&e(Basis::M, &[1]), &e(Basis::M, &[1])).unwrap();
        assert_eq!(mm, e(Basis::M, &[1, 1]).scale(&rat(2)).add(&e(Basis::M, &[2])).unwrap());
        let qq = convert(&product(&q_gen(1), &q_gen(1)).unwrap(), Basis::H).unwrap();
        assert_eq!(qq, e(Basis::H, &[1, 1]).scale(&rat(4)));
        assert_eq!(qq, convert(&q_gen(2), Basis::H).unwrap().scale(&rat(2)));
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&e(Basis::H, &[2])).unwrap();
        assert_eq!(d.len(), 3);
        let u = Basis::H.unit_index();
        let h = |n| Index::Comp(Composition::row(n));
        assert_eq!(d.coeff(&u, &h(2)), rat(1));
        assert_eq!(d.coeff(&h(1), &h(1)), rat(1));
        assert_eq!(d.coeff(&h(2), &u), rat(1));
        let d = coproduct(&e(Basis::M, &[2, 1])).unwrap();
        let c = |p: &[usize]| Index::Comp(Composition::of(p));
        assert_eq!(d.len(), 3);
        assert_eq!(d.coeff(&c(&[2]), &c(&[1])), rat(1));
        let one = FreeElement::one(Basis::F).scale(&rat(3));
        let d = coproduct(&one).unwrap();
        assert_eq!(d, TensorElement::pure(&FreeElement::one(Basis::F), &one));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&e(Basis::H, &[2, 1]), &e(Basis::M, &[2, 1])).unwrap(), rat(1));
        assert_eq!(pairing(&e(Basis::R, &[2]), &e(Basis::F, &[1, 1])).unwrap(), rat(0));
        assert_eq!(pairing(&e(Basis::H, &[1, 1]), &e(Basis::F, &[2])).unwrap(), rat(1));
    }

    #[test]
    fn peak_pairing_examples() {
        let xi = FreeElement::peak(Basis::Xi, 3, &[]);
        let k = FreeElement::peak(Basis::K, 3, &[2]);
        assert_eq!(peak_pairing(&xi, &k).unwrap(), rat(0));
        assert_eq!(peak_pairing(&q_gen(1), &FreeElement::peak(Basis::K, 1, &[])).unwrap(), rat(2));
        assert!(peak_pairing(&e(Basis::H, &[2, 1]), &k).is_err());
    }

    #[test]
    fn theta_examples() {
        let two_xi = FreeElement::peak(Basis::Xi, 2, &[]).scale(&rat(2));
        assert_eq!(theta_transform(&e(Basis::R, &[2])).unwrap(), two_xi);
        assert_eq!(theta_transform(&e(Basis::R, &[1, 1])).unwrap(), two_xi);
        assert_eq!(convert(&q_gen(2), Basis::Xi).unwrap(), two_xi);
        let t = theta_transform(&e(Basis::H, &[1, 1, 1])).unwrap();
        assert_eq!(convert(&t, Basis::H).unwrap(), e(Basis::H, &[1, 1, 1]).scale(&rat(8)));
    }

    #[test]
    fn vartheta_examples() {
        assert_eq!(vartheta(&e(Basis::F, &[2, 1])).unwrap(), FreeElement::peak(Basis::K, 3, &[2]));
        assert_eq!(vartheta(&e(Basis::F, &[1, 2])).unwrap(), FreeElement::peak(Basis::K, 3, &[]));
        assert_eq!(vartheta(&e(Basis::F, &[3])).unwrap(), FreeElement::peak(Basis::K, 3, &[]));
        assert_eq!(vartheta(&e(Basis::M, &[1])).unwrap(), FreeElement::peak(Basis::K, 1, &[]));
        assert_eq!(convert(&e(Basis::N, &[1]), Basis::K).unwrap(), FreeElement::peak(Basis::K, 1, &[]));
    }

    #[test]
    fn pi_and_theta_sym_examples() {
        assert_eq!(forgetful_pi(&e(Basis::H, &[2, 1])).unwrap(), e(Basis::SymH, &[2, 1]));
        assert!(theta_sym(&e(Basis::SymP, &[2])).unwrap().is_zero());
        assert_eq!(theta_sym(&e(Basis::SymP, &[3])).unwrap(), e(Basis::OmegaP, &[3]).scale(&rat(2)));
        let q1 = convert(&e(Basis::OmegaQ, &[1]), Basis::OmegaP).unwrap();
        assert_eq!(theta_sym(&e(Basis::SymH, &[1])).unwrap(), q1);
    }

    #[test]
    fn k_expansion_examples() {
        let (f, m) = k_expansions(&PeakSet::empty(2));
        assert_eq!(f, e(Basis::F, &[2]).add(&e(Basis::F, &[1, 1])).unwrap().scale(&rat(2)));
        assert_eq!(convert(&m, Basis::F).unwrap(), f);
        let (f, m) = k_expansions(&PeakSet::new(3, &[2]).unwrap());
        assert_eq!(f, e(Basis::F, &[1, 2]).add(&e(Basis::F, &[2, 1])).unwrap().scale(&rat(4)));
        assert_eq!(convert(&m, Basis::F).unwrap(), f);
        let (f, m) = k_expansions(&PeakSet::empty(1));
        assert_eq!(f, e(Basis::F, &[1]).scale(&rat(2)));
        assert_eq!(m, e(Basis::M, &[1]).scale(&rat(2)));
    }

    #[test]
    fn omega_inner_product_examples() {
        let p = |x: &[usize]| e(Basis::OmegaP, x);
        assert_eq!(omega_inner_product(&p(&[1]), &p(&[1])).unwrap(), rat_frac(1, 2));
        assert_eq!(omega_inner_product(&p(&[3]), &p(&[1])).unwrap(), rat(0));
        assert_eq!(omega_inner_product(&p(&[1, 1]), &p(&[1, 1])).unwrap(), rat_frac(1, 2));
        assert!(omega_inner_product(&e(Basis::SymP, &[2]), &p(&[1])).is_err());
    }

    #[test]
    fn graded_rank_examples() {
        assert_eq!(graded_rank(&[e(Basis::H, &[2]), e(Basis::H, &[1, 1])], 2).unwrap(), 2);
        assert_eq!(graded_rank(&[convert(&q_gen(2), Basis::H).unwrap(), e(Basis::H, &[1, 1])], 2).unwrap(), 1);
        assert_eq!(graded_rank(&[], 2).unwrap(), 0);
    }

    #[test]
    fn sym_conversions_round_trip() {
        for n in 1..=5 {
            for l in partitions_of(n) {
                for b in [Basis::SymH, Basis::SymM, Basis::SymP] {
                    let x = FreeElement::basis_element(b, Index::Comp(l));
                    for t in [Basis::SymH, Basis::SymM, Basis::SymP] {
                        assert_eq!(convert(&convert(&x, t).unwrap(), b).unwrap(), x);
                    }
                }
            }
        }
        // h_2 = (p_1^2 + p_2)/2
        let h2 = convert(&e(Basis::SymH, &[2]), Basis::SymP).unwrap();
        assert_eq!(terms(&h2), vec![("p[2]".into(), "1/2".into()), ("p[1,1]".into(), "1/2".into())]);
    }

    #[test]
    fn json_round_trip() {
        let x = e(Basis::H, &[1, 1]).scale(&rat(2)).add(&e(Basis::H, &[3]).scale(&rat_frac(-1, 3))).unwrap();
        let j = x.to_json();
        assert_eq!(j["algebra"], "NSym");
        assert_eq!(FreeElement::from_json(&j).unwrap(), x);
        let k = FreeElement::peak(Basis::K, 4, &[2]);
        assert_eq!(FreeElement::from_json(&k.to_json()).unwrap(), k);
    }
}
