//! Sparse exact linear algebra: vectors, column-major matrices, incremental
//! row echelon forms, kernels and linear solves over any [`Field`].

use std::collections::BTreeMap;

use crate::field::Field;

/// Sparse vector stored as `(index, value)` pairs sorted by index, no zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut map: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(x) => *x = x.add_ref(&v),
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul_ref(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v.clone())).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &F, other: &SparseVec<F>) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (xs, ys) = (&self.entries, &other.entries);
        while a < xs.len() || b < ys.len() {
            if b >= ys.len() || (a < xs.len() && xs[a].0 < ys[b].0) {
                out.push(xs[a].clone());
                a += 1;
            } else if a >= xs.len() || ys[b].0 < xs[a].0 {
                out.push((ys[b].0, ys[b].1.mul_ref(c)));
                b += 1;
            } else {
                let v = xs[a].1.add_ref(&ys[b].1.mul_ref(c));
                if !v.is_zero() {
                    out.push((xs[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec<F>) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &SparseVec<F>) -> Self {
        self.axpy(&-F::one(), other)
    }

    pub fn dot(&self, other: &SparseVec<F>) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            match self.entries[a].0.cmp(&other.entries[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add_ref(&self.entries[a].1.mul_ref(&other.entries[b].1));
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

/// Column-major sparse matrix: `cols[j]` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    pub nrows: usize,
    pub cols: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |m| m < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense_rows(rows: &[Vec<F>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| SparseVec::from_pairs((0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::new();
        for (j, x) in v.iter() {
            acc = acc.axpy(x, &self.cols[*j]);
        }
        acc
    }

    pub fn mul(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.ncols(), other.nrows, "matrix shape mismatch");
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        self.axpy(&-F::one(), other)
    }

    pub fn axpy(&self, c: &F, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> SparseMatrix<F> {
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> SparseMatrix<F> {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols(),
            cols: rows.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    /// Rows as sparse vectors.
    pub fn rows(&self) -> Vec<SparseVec<F>> {
        self.transpose().cols
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows == self.ncols() && self.rank() == self.nrows
    }

    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        let mut ech = Echelon::new(self.ncols());
        for r in self.rows() {
            ech.insert(r);
        }
        ech.nullspace()
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<SparseMatrix<F>> {
        if self.nrows != self.ncols() {
            return None;
        }
        let n = self.nrows;
        let mut cols = Vec::with_capacity(n);
        let solver = ColumnSolver::new(&self.cols, n);
        if solver.rank() != n {
            return None;
        }
        for i in 0..n {
            cols.push(SparseVec::from_dense(&solver.solve(&SparseVec::unit(i))?));
        }
        Some(SparseMatrix { nrows: n, cols })
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for (j, c) in self.cols.iter().enumerate() {
            acc = acc.add_ref(&c.get(j));
        }
        acc
    }
}

/// Incremental row echelon form over a fixed number of columns.
///
/// Rows are kept in semi-echelon form keyed by their leading column, with the
/// leading coefficient normalized to one.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces until the leading column is not a pivot.
    fn reduce_leading(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((lead, c)) = v.leading().cloned() {
            match self.rows.get(&lead) {
                Some(row) => v = v.axpy(&-c, row),
                None => break,
            }
        }
        v
    }

    /// Fully reduces `v` against all pivot rows; zero iff `v` is in the row span.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0usize;
        loop {
            let hit = v
                .iter()
                .find(|(i, _)| *i >= cursor && self.rows.contains_key(i))
                .cloned();
            match hit {
                Some((col, c)) => {
                    v = v.axpy(&-c, &self.rows[&col]);
                    cursor = col + 1;
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds a row; returns `true` iff it increased the rank.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        debug_assert!(v.max_index().map_or(true, |m| m < self.ncols));
        let v = self.reduce_leading(v);
        match v.leading().cloned() {
            None => false,
            Some((lead, c)) => {
                let v = v.scale(&c.inv());
                self.rows.insert(lead, v);
                true
            }
        }
    }

    /// Rows in reduced row echelon form (each row has zeros in all other pivot columns).
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseVec<F>> {
        let mut done: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let hit = r.iter().find(|(i, _)| *i != p && done.contains_key(i)).cloned();
                match hit {
                    Some((col, c)) => r = r.axpy(&-c, &done[&col]),
                    None => break,
                }
            }
            done.insert(p, r);
        }
        done
    }

    /// Basis of `{x : row·x = 0 for every row}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseVec<F>> {
        let reduced = self.reduced_rows();
        let mut by_free: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for (&p, row) in &reduced {
            for (j, v) in row.iter() {
                if *j != p {
                    by_free.entry(*j).or_default().push((p, -v.clone()));
                }
            }
        }
        (0..self.ncols)
            .filter(|j| !reduced.contains_key(j))
            .map(|j| {
                let mut pairs = by_free.remove(&j).unwrap_or_default();
                pairs.push((j, F::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// Echelon form that remembers how each pivot row was built from the inserted vectors.
#[derive(Clone, Debug)]
pub struct TrackedEchelon<F> {
    ncols: usize,
    count: usize,
    rows: BTreeMap<usize, (SparseVec<F>, SparseVec<F>)>,
}

impl<F: Field> TrackedEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        TrackedEchelon { ncols, count: 0, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of accepted vectors; the tag of the next accepted vector.
    pub fn accepted(&self) -> usize {
        self.count
    }

    /// Inserts `v`; returns its tag if it was independent of the previous ones.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Option<usize> {
        debug_assert!(v.max_index().map_or(true, |m| m < self.ncols));
        let tag = self.count;
        let mut r = v.clone();
        let mut combo = SparseVec::unit(tag);
        while let Some((lead, c)) = r.leading().cloned() {
            match self.rows.get(&lead) {
                Some((row, rc)) => {
                    r = r.axpy(&-c.clone(), row);
                    combo = combo.axpy(&-c, rc);
                }
                None => break,
            }
        }
        let (lead, c) = r.leading().cloned()?;
        let inv = c.inv();
        self.rows.insert(lead, (r.scale(&inv), combo.scale(&inv)));
        self.count += 1;
        Some(tag)
    }

    /// Coordinates of `w` in the accepted vectors, or `None` if `w` is outside their span.
    pub fn coordinates(&self, w: &SparseVec<F>) -> Option<SparseVec<F>> {
        let mut v = w.clone();
        let mut coords = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let hit = v.iter().find(|(i, _)| *i >= cursor && self.rows.contains_key(i)).cloned();
            match hit {
                Some((col, c)) => {
                    let (row, rc) = &self.rows[&col];
                    v = v.axpy(&-c.clone(), row);
                    coords = coords.axpy(&c, rc);
                    cursor = col + 1;
                }
                None => break,
            }
        }
        v.is_zero().then_some(coords)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<F: Field>(vectors: &[SparseVec<F>]) -> usize {
    let ncols = vectors.iter().filter_map(|v| v.max_index()).max().map_or(0, |m| m + 1);
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Solves `Σ x_j·cols[j] = b` for families of column vectors living in `nrows` coordinates.
pub struct ColumnSolver<F> {
    ncols: usize,
    // Augmented rows [coordinate equations | rhs marker].
    reduced: BTreeMap<usize, SparseVec<F>>,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> ColumnSolver<F> {
    pub fn new(cols: &[SparseVec<F>], nrows: usize) -> Self {
        let m = SparseMatrix::from_columns(nrows, cols.to_vec());
        let rows = m.rows();
        let mut e = Echelon::new(cols.len());
        for r in &rows {
            e.insert(r.clone());
        }
        ColumnSolver { ncols: cols.len(), reduced: e.reduced_rows(), rows }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// One solution (free variables set to zero), or `None` if `b` is not in the column span.
    pub fn solve(&self, b: &SparseVec<F>) -> Option<Vec<F>> {
        // Solve with the augmented system [A | b]; recompute elimination including b.
        let n = self.ncols;
        let mut e = Echelon::new(n + 1);
        for (i, r) in self.rows.iter().enumerate() {
            let mut pairs: Vec<(usize, F)> = r.iter().cloned().collect();
            let bi = b.get(i);
            if !bi.is_zero() {
                pairs.push((n, -bi));
            }
            e.insert(SparseVec::from_pairs(pairs));
        }
        for (i, bi) in b.iter() {
            if *i >= self.rows.len() && !bi.is_zero() {
                return None;
            }
        }
        let red = e.reduced_rows();
        if red.contains_key(&n) {
            return None;
        }
        // x_n = 1 is free: x_p = -row_p[n] for pivot p, other free vars zero.
        let mut x = vec![F::zero(); n];
        for (&p, row) in &red {
            x[p] = -row.get(n);
        }
        Some(x)
    }
}

/// Solves `Σ x_j·cols[j] = b`; convenience wrapper around [`ColumnSolver`].
pub fn solve_columns<F: Field>(cols: &[SparseVec<F>], nrows: usize, b: &SparseVec<F>) -> Option<Vec<F>> {
    ColumnSolver::new(cols, nrows).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    fn v(xs: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&xs.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_of_dependent_family() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]), 2);
        assert_eq!(rank::<Rational>(&[]), 0);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let rows = [v(&[1, 1, 0, 2]), v(&[0, 1, -1, 1])];
        let mut e = Echelon::new(4);
        for r in &rows {
            e.insert(r.clone());
        }
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for n in &ns {
            for r in &rows {
                assert!(r.dot(n).is_zero());
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let x = solve_columns(&cols, 3, &v(&[2, 3, 5])).unwrap();
        assert_eq!(x, vec![rat(2), rat(3)]);
        assert!(solve_columns(&cols, 3, &v(&[1, 0, 0])).is_none());

        let m = SparseMatrix::from_dense_rows(&[vec![rat(2), rat(1)], vec![rat(1), rat(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SparseMatrix::identity(2));
        let sing = SparseMatrix::from_dense_rows(&[vec![rat(2), rat(4)], vec![rat(1), rat(2)]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn reduce_detects_membership() {
        let mut e = Echelon::new(3);
        e.insert(v(&[1, 1, 0]));
        e.insert(v(&[0, 1, 1]));
        assert!(e.contains(&v(&[1, 2, 1])));
        assert!(!e.contains(&v(&[0, 0, 1])));
    }
}
