//! Compositions, descent/peak/valley sets and permutations of `[n]`.
//!
//! Subsets of `[n]` are stored as `u32` bitmasks where bit `i - 1` marks the
//! element `i`. A composition of `n` is identified with its descent set, so
//! the canonical order on compositions of `n` is the integer order of their
//! descent bitmasks: for `n = 3` this is `(3), (1,2), (2,1), (1,1,1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;

/// Largest rank representable by the bitmask encodings.
pub const MAX_RANK: usize = 31;

/// Elements of a bitmask subset, ascending.
pub fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Bitmask of a set of positive integers.
pub fn mask_of(elements: &[usize]) -> u32 {
    elements.iter().fold(0, |m, &e| m | 1 << (e - 1))
}

fn full_mask(k: usize) -> u32 {
    if k == 0 {
        0
    } else {
        u32::MAX >> (32 - k)
    }
}

/// Formats a subset as `{1,3}`.
pub fn format_set(mask: u32) -> String {
    let inner: Vec<String> = mask_elements(mask).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Iterates over all submasks of `mask`, including `0` and `mask`.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// An ordered tuple of positive integers, stored through its descent set.
///
/// The empty composition of `0` is the unit of every graded algebra in this
/// crate; it is never produced by [`compositions_of`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Composition {
    n: usize,
    mask: u32,
}

impl Composition {
    pub fn new(parts: &[usize]) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!("{parts:?} has a zero part")));
        }
        let n: usize = parts.iter().sum();
        if n > MAX_RANK {
            return Err(Error::InvalidComposition(format!("size {n} exceeds {MAX_RANK}")));
        }
        let mut mask = 0;
        let mut acc = 0;
        for &p in &parts[..parts.len().saturating_sub(1)] {
            acc += p;
            mask |= 1 << (acc - 1);
        }
        Ok(Composition { n, mask })
    }

    /// Panicking constructor for literals.
    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts).expect("valid composition")
    }

    pub fn empty() -> Self {
        Composition { n: 0, mask: 0 }
    }

    /// The one-part composition `(n)`.
    pub fn row(n: usize) -> Self {
        Composition { n, mask: 0 }
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Composition { n, mask: full_mask(n.saturating_sub(1)) }
    }

    pub fn from_descents(n: usize, descents: &DescentSet) -> Self {
        debug_assert_eq!(n, descents.n);
        Composition { n, mask: descents.mask }
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        if n == 0 && mask != 0 || n > 0 && mask & !full_mask(n - 1) != 0 || n > MAX_RANK {
            return Err(Error::InvalidSubset(format!("{} is not a subset of [{}]", format_set(mask), n.saturating_sub(1))));
        }
        Ok(Composition { n, mask })
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u32) -> Self {
        Composition { n, mask }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn descent_mask(&self) -> u32 {
        self.mask
    }

    pub fn descents(&self) -> DescentSet {
        DescentSet { n: self.n, mask: self.mask }
    }

    /// Number of parts `ℓ(α)`.
    pub fn len(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.mask.count_ones() as usize + 1
        }
    }

    pub fn parts(&self) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.len());
        let mut prev = 0;
        for d in mask_elements(self.mask) {
            out.push(d - prev);
            prev = d;
        }
        out.push(self.n - prev);
        out
    }

    /// `ᾱ`: the parts in reverse order.
    pub fn reverse(&self) -> Self {
        let mut rev = 0;
        for d in mask_elements(self.mask) {
            rev |= 1 << (self.n - d - 1);
        }
        Composition { n: self.n, mask: rev }
    }

    /// `α^c`: descent set complemented in `[n−1]`.
    pub fn complement(&self) -> Self {
        Composition { n: self.n, mask: !self.mask & full_mask(self.n.saturating_sub(1)) }
    }

    /// `α* = (ᾱ)^c`.
    pub fn conjugate(&self) -> Self {
        self.reverse().complement()
    }

    pub fn peak_set(&self) -> PeakSet {
        let d = self.mask;
        // x ∈ P iff x ∈ D, x − 1 ∉ D, x ≥ 2
        let mask = d & !(d << 1) & !1;
        PeakSet { n: self.n, mask }
    }

    /// `V(α) ⊆ [n]` as a bitmask.
    pub fn valley_mask(&self) -> u32 {
        if self.n == 0 {
            return 0;
        }
        let d = self.mask;
        // x ∈ [2, n] with x − 1 ∈ D and x ∉ D
        let upper = (d << 1) & !d & full_mask(self.n) & !1;
        let first = if d & 1 == 0 { 1 } else { 0 };
        upper | first
    }

    pub fn valley_set(&self) -> Vec<usize> {
        mask_elements(self.valley_mask())
    }

    /// `self ≤ other` in refinement order: `D(other) ⊆ D(self)`.
    pub fn refines(&self, other: &Composition) -> bool {
        self.n == other.n && other.mask & !self.mask == 0
    }

    pub fn concat(&self, other: &Composition) -> Self {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        Composition { n: self.n + other.n, mask: self.mask | 1 << (self.n - 1) | other.mask << self.n }
    }

    /// Splits at every descent boundary: all `(β, γ)` with `β·γ = α`.
    pub fn deconcatenations(&self) -> Vec<(Composition, Composition)> {
        let mut out = vec![(Composition::empty(), *self)];
        for d in mask_elements(self.mask) {
            let left = Composition { n: d, mask: self.mask & full_mask(d - 1) };
            let right = Composition { n: self.n - d, mask: self.mask >> d };
            out.push((left, right));
        }
        if self.n > 0 {
            out.push((*self, Composition::empty()));
        }
        out
    }

    /// Coarser compositions `β ≥ α`.
    pub fn coarsenings(&self) -> impl Iterator<Item = Composition> + '_ {
        submasks(self.mask).map(move |m| Composition { n: self.n, mask: m })
    }

    /// Finer compositions `β ≤ α`.
    pub fn refinements(&self) -> impl Iterator<Item = Composition> + '_ {
        let free = !self.mask & full_mask(self.n.saturating_sub(1));
        submasks(free).map(move |m| Composition { n: self.n, mask: m | self.mask })
    }

    /// `D △ (D + 1)` as a bitmask over `[n]`.
    pub fn delta_shift_mask(&self) -> u32 {
        symmetric_difference_shift(self.mask)
    }

    pub fn is_partition(&self) -> bool {
        self.parts().windows(2).all(|w| w[0] >= w[1])
    }

    /// Parts sorted weakly decreasing.
    pub fn sorted_partition(&self) -> Composition {
        let mut p = self.parts();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Composition::of(&p)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// `D △ (D + 1)` for a bitmask `D`.
pub fn symmetric_difference_shift(mask: u32) -> u32 {
    mask ^ (mask << 1)
}

/// All compositions of `n ≥ 1` in canonical (descent bitmask) order.
pub fn compositions_of(n: usize) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::InvalidComposition("compositions of 0 are not enumerated".into()));
    }
    if n > MAX_RANK {
        return Err(Error::ResourceLimit { what: "compositions", n, limit: MAX_RANK });
    }
    Ok((0..1u32 << (n - 1)).map(|mask| Composition { n, mask }).collect())
}

/// Compositions of `n` including the empty composition when `n = 0`.
pub fn compositions_with_unit(n: usize) -> Vec<Composition> {
    if n == 0 {
        vec![Composition::empty()]
    } else {
        compositions_of(n).expect("n within range")
    }
}

/// Partitions of `n` as weakly decreasing compositions, reverse lexicographic.
pub fn partitions_of(n: usize) -> Vec<Composition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition::of(cur));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n` into distinct parts.
pub fn strict_partition_count(n: usize) -> usize {
    partitions_of(n)
        .iter()
        .filter(|p| p.parts().windows(2).all(|w| w[0] > w[1]))
        .count()
}

/// `z_λ = Π_i m_i! i^{m_i}`.
pub fn z_lambda(parts: &[usize]) -> num_bigint::BigInt {
    let mut counts = std::collections::BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_insert(0usize) += 1;
    }
    let mut z = num_bigint::BigInt::from(1);
    for (i, m) in counts {
        for k in 1..=m {
            z *= k * i;
        }
    }
    z
}

/// A subset of `[n − 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DescentSet {
    pub n: usize,
    pub mask: u32,
}

impl DescentSet {
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        if elements.iter().any(|&e| e == 0 || e >= n.max(1)) {
            return Err(Error::InvalidSubset(format!("{elements:?} is not a subset of [{}]", n.saturating_sub(1))));
        }
        Ok(DescentSet { n, mask: mask_of(elements) })
    }

    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask)
    }
}

/// A sparse subset of `[2, n − 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PeakSet {
    n: usize,
    mask: u32,
}

impl PeakSet {
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        if elements.iter().any(|&e| e < 2 || e + 1 > n) {
            return Err(Error::InvalidSubset(format!("{elements:?} is not inside [2,{}]", n.saturating_sub(1))));
        }
        let mask = mask_of(elements);
        Self::from_mask(n, mask)
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        if !is_peak_mask(n, mask) {
            return Err(Error::InvalidSubset(format!("{} is not a peak set in [{n}]", format_set(mask))));
        }
        Ok(PeakSet { n, mask })
    }

    pub fn empty(n: usize) -> Self {
        PeakSet { n, mask: 0 }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask)
    }

    /// `l = ⌊(|P| + 1) / 2⌋`.
    pub fn half_rank(&self) -> usize {
        (self.len() + 1) / 2
    }

    /// A composition with this peak set: descents exactly at the peaks.
    pub fn witness(&self) -> Composition {
        Composition { n: self.n, mask: self.mask }
    }
}

impl fmt::Display for PeakSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", format_set(self.mask), self.n)
    }
}

/// Whether `mask` is a sparse subset of `[2, n − 1]`.
pub fn is_peak_mask(n: usize, mask: u32) -> bool {
    let allowed = full_mask(n.saturating_sub(1)) & !1;
    mask & !allowed == 0 && mask & (mask << 1) == 0
}

/// All peak sets in `[n]`, in bitmask order.
pub fn peak_sets_in(n: usize) -> Vec<PeakSet> {
    if n < 3 {
        return vec![PeakSet::empty(n)];
    }
    submasks(full_mask(n - 1) & !1)
        .filter(|&m| m & (m << 1) == 0)
        .collect::<std::collections::BTreeSet<u32>>()
        .into_iter()
        .map(|mask| PeakSet { n, mask })
        .collect()
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(word: &[usize]) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[x] = true;
        }
        if n > MAX_RANK {
            return Err(Error::InvalidPermutation(format!("rank {n} exceeds {MAX_RANK}")));
        }
        Ok(Permutation(word.iter().map(|&x| x as u8).collect()))
    }

    /// Parses a word such as `231` or `2,3,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidPermutation(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidPermutation(s.to_string()))?
        };
        Self::new(&word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The longest element `w_0 = n ⋯ 2 1`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    /// Longest element of the parabolic subgroup generated by `{s_j : j ∈ J}`.
    pub fn longest_parabolic(n: usize, j_mask: u32) -> Self {
        let c = Composition::from_mask_unchecked(n, !j_mask & full_mask(n.saturating_sub(1)));
        let mut word = Vec::with_capacity(n);
        let mut start = 0;
        for p in c.parts() {
            word.extend((start + 1..=start + p).rev().map(|x| x as u8));
            start += p;
        }
        Permutation(word)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn word(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x as usize - 1]).collect())
    }

    /// `s_i w`: swaps the values `i` and `i + 1`.
    pub fn left_mul_s(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        for x in w.iter_mut() {
            if *x as usize == i {
                *x += 1;
            } else if *x as usize == i + 1 {
                *x -= 1;
            }
        }
        Permutation(w)
    }

    /// `w s_i`: swaps the positions `i` and `i + 1`.
    pub fn right_mul_s(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(i - 1, i);
        Permutation(w)
    }

    /// `D(w) = {i : w(i) > w(i + 1)}` as a bitmask.
    pub fn descent_mask(&self) -> u32 {
        let mut m = 0;
        for i in 1..self.0.len() {
            if self.0[i - 1] > self.0[i] {
                m |= 1 << (i - 1);
            }
        }
        m
    }

    /// `ℓ(s_i w) > ℓ(w)`, i.e. `i ∉ D(w⁻¹)`: value `i` appears before `i + 1`.
    pub fn left_ascent(&self, i: usize) -> bool {
        let pos = |v: u8| self.0.iter().position(|&x| x == v).expect("value present");
        pos(i as u8) < pos(i as u8 + 1)
    }

    pub fn descent_composition(&self) -> Composition {
        Composition::from_mask_unchecked(self.size(), self.descent_mask())
    }

    pub fn peak_set(&self) -> PeakSet {
        self.descent_composition().peak_set()
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Reduced word `[i_1, …, i_k]` with `w = s_{i_1} ⋯ s_{i_k}`, built by
    /// stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        loop {
            let d = w.descent_mask();
            if d == 0 {
                break;
            }
            let i = d.trailing_zeros() as usize + 1;
            w = w.right_mul_s(i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// `w(D) = {w(i) : i ∈ D}`.
    pub fn image_mask(&self, mask: u32) -> u32 {
        mask_elements(mask).iter().fold(0, |m, &i| m | 1 << (self.apply(i) - 1))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Embeds into `𝔖_{n+k}` fixing the last `k` points.
    pub fn extend(&self, k: usize) -> Self {
        let n = self.size();
        Permutation(self.0.iter().copied().chain((n + 1..=n + k).map(|x| x as u8)).collect())
    }

    /// Embeds into `𝔖_{k+n}` acting on the last `n` points.
    pub fn shift(&self, k: usize) -> Self {
        Permutation((1..=k as u8).chain(self.0.iter().map(|&x| x + k as u8)).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() < 10 {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

/// Statistics of a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermStats {
    pub descents: DescentSet,
    pub composition: Composition,
    pub peaks: PeakSet,
    pub length: usize,
    pub inverse: Permutation,
    pub reduced_word: Vec<usize>,
}

pub fn perm_stats(w: &Permutation) -> PermStats {
    PermStats {
        descents: DescentSet { n: w.size(), mask: w.descent_mask() },
        composition: w.descent_composition(),
        peaks: w.peak_set(),
        length: w.length(),
        inverse: w.inverse(),
        reduced_word: w.reduced_word(),
    }
}

/// All of `𝔖_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    limits::check_perm_rank("permutations", n)?;
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    Ok(out)
}

/// The descent class `𝔇_α = {w : D(w) = D(α)}`, lexicographic.
pub fn descent_class(alpha: &Composition) -> Result<Vec<Permutation>> {
    let n = alpha.size();
    limits::check_perm_rank("descent class", n)?;
    let mut out = Vec::new();
    let target = alpha.descent_mask();
    build_descent_class(n, target, &mut Vec::with_capacity(n), &mut vec![false; n + 1], &mut out);
    Ok(out)
}

fn build_descent_class(n: usize, target: u32, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
    let k = cur.len();
    if k == n {
        out.push(Permutation(cur.clone()));
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        if k > 0 {
            let desc = cur[k - 1] as usize > v;
            if desc != (target >> (k - 1) & 1 == 1) {
                continue;
            }
        }
        used[v] = true;
        cur.push(v as u8);
        build_descent_class(n, target, cur, used, out);
        cur.pop();
        used[v] = false;
    }
}

/// Minimal length representatives of the left cosets `w 𝔖_(m,n)` in `𝔖_{m+n}`.
pub fn min_coset_reps(m: usize, n: usize) -> Result<Vec<Permutation>> {
    limits::check_perm_rank("coset representatives", m + n)?;
    let mut out = Vec::new();
    let total = m + n;
    // choose which values occupy the first m positions, each block increasing
    for mask in 0u32..1 << total {
        if mask.count_ones() as usize != m {
            continue;
        }
        let first: Vec<u8> = (1..=total as u8).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        let second: Vec<u8> = (1..=total as u8).filter(|v| mask >> (v - 1) & 1 == 0).collect();
        out.push(Permutation(first.into_iter().chain(second).collect()));
    }
    out.sort();
    Ok(out)
}

/// Factors `v = x·y` with `x` a minimal coset representative and `y ∈ 𝔖_m × 𝔖_n`.
pub fn coset_factor(v: &Permutation, m: usize) -> (Permutation, Permutation) {
    let w = v.word();
    let mut first: Vec<usize> = w[..m].to_vec();
    let mut second: Vec<usize> = w[m..].to_vec();
    first.sort_unstable();
    second.sort_unstable();
    let x_word: Vec<usize> = first.iter().chain(second.iter()).copied().collect();
    let x = Permutation::new(&x_word).expect("permutation");
    let y = x.inverse().compose(v);
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[usize]) -> Composition {
        Composition::of(p)
    }

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(compositions_of(1).unwrap(), vec![c(&[1])]);
        assert_eq!(compositions_of(3).unwrap(), vec![c(&[3]), c(&[1, 2]), c(&[2, 1]), c(&[1, 1, 1])]);
        assert_eq!(compositions_of(6).unwrap().len(), 32);
        assert!(compositions_of(0).is_err());
    }

    #[test]
    fn descent_round_trip() {
        assert_eq!(c(&[1, 2, 1]).descents().elements(), vec![1, 3]);
        assert!(c(&[4]).descents().elements().is_empty());
        let d = DescentSet::new(4, &[2]).unwrap();
        assert_eq!(Composition::from_descents(4, &d).parts(), vec![2, 2]);
        assert!(DescentSet::new(4, &[4]).is_err());
    }

    #[test]
    fn counterpart_examples() {
        let a = c(&[3]);
        assert_eq!((a.reverse(), a.complement(), a.conjugate()), (c(&[3]), c(&[1, 1, 1]), c(&[1, 1, 1])));
        assert_eq!(c(&[1, 2]).conjugate(), c(&[1, 2]));
        assert_eq!(c(&[2, 1]).reverse(), c(&[1, 2]));
    }

    #[test]
    fn peak_and_valley_examples() {
        let a = c(&[2, 2]);
        assert_eq!(a.peak_set().elements(), vec![2]);
        assert_eq!(a.valley_set(), vec![1, 3]);
        assert_eq!(c(&[5]).peak_set().elements(), Vec::<usize>::new());
        assert_eq!(c(&[5]).valley_set(), vec![1]);
        assert!(c(&[1, 1, 1]).peak_set().is_empty());
        assert_eq!(c(&[1, 1, 1]).valley_set(), vec![3]);
        assert_eq!(c(&[1, 2, 1]).valley_set(), vec![2, 4]);
    }

    #[test]
    fn peak_set_enumeration() {
        assert_eq!(peak_sets_in(2), vec![PeakSet::empty(2)]);
        let five: Vec<Vec<usize>> = peak_sets_in(5).iter().map(|p| p.elements()).collect();
        assert_eq!(five, vec![vec![], vec![2], vec![3], vec![4], vec![2, 4]]);
        assert_eq!(peak_sets_in(8).len(), 21);
        assert!(PeakSet::new(5, &[2, 3]).is_err());
        assert!(PeakSet::new(5, &[1]).is_err());
    }

    #[test]
    fn descent_class_examples() {
        assert_eq!(descent_class(&c(&[2, 1])).unwrap(), vec![perm("132"), perm("231")]);
        assert_eq!(descent_class(&c(&[4])).unwrap(), vec![Permutation::identity(4)]);
        assert_eq!(descent_class(&c(&[1, 1, 1])).unwrap(), vec![perm("321")]);
    }

    #[test]
    fn perm_stats_examples() {
        let s = perm_stats(&perm("231"));
        assert_eq!((s.descents.elements(), s.composition, s.length), (vec![2], c(&[2, 1]), 2));
        assert_eq!(s.peaks.elements(), vec![2]);
        assert_eq!(s.peaks, s.composition.peak_set());
        let s = perm_stats(&Permutation::identity(4));
        assert_eq!((s.composition, s.length), (c(&[4]), 0));
        let s = perm_stats(&perm("321"));
        assert_eq!((s.descents.elements(), s.length), (vec![1, 2], 3));
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in all_permutations(5).unwrap() {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut v = Permutation::identity(5);
            for &i in &word {
                v = v.right_mul_s(i);
            }
            assert_eq!(v, w);
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(symmetric_difference_shift(mask_of(&[1])), mask_of(&[1, 2]));
        assert_eq!(symmetric_difference_shift(0), 0);
        assert_eq!(symmetric_difference_shift(mask_of(&[1, 2])), mask_of(&[1, 3]));
    }

    #[test]
    fn coset_representatives() {
        assert_eq!(min_coset_reps(1, 1).unwrap(), vec![perm("12"), perm("21")]);
        assert_eq!(min_coset_reps(2, 1).unwrap().len(), 3);
        let reps = min_coset_reps(2, 2).unwrap();
        assert_eq!(reps.len(), 6);
        for x in &reps {
            assert_eq!(x.descent_mask() & !mask_of(&[2]), 0);
        }
        for v in all_permutations(4).unwrap() {
            let (x, y) = coset_factor(&v, 2);
            assert!(reps.contains(&x));
            assert_eq!(x.compose(&y), v);
            assert_eq!(x.length() + y.length(), v.length());
            assert_eq!(y.descent_mask() & mask_of(&[2]), 0);
        }
    }

    #[test]
    fn parabolic_longest() {
        assert_eq!(Permutation::longest_parabolic(4, mask_of(&[1, 3])), perm("2143"));
        assert_eq!(Permutation::longest_parabolic(3, mask_of(&[1, 2])), perm("321"));
        assert_eq!(Permutation::longest_parabolic(3, 0), perm("123"));
    }

    #[test]
    fn partitions_and_z() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(z_lambda(&[2, 1, 1]), num_bigint::BigInt::from(4));
        assert_eq!((1..=6).map(strict_partition_count).collect::<Vec<_>>(), vec![1, 1, 2, 2, 3, 4]);
    }
}
