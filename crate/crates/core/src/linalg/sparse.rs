use std::collections::BTreeMap;

use super::field::Field;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F> Default for SparseVec<F> {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
        }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from unsorted entries; duplicates are summed, zeros dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in entries {
            match acc.get_mut(&i) {
                Some(x) => *x += &v,
                None => {
                    acc.insert(i, v);
                }
            }
        }
        Self {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[F]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(index: usize, one: F) -> Self {
        Self {
            entries: vec![(index, one)],
        }
    }

    pub fn to_dense(&self, len: usize, zero: &F) -> Vec<F> {
        let mut out = vec![zero.clone(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn first(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn scale(&mut self, factor: &F) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in self.entries.iter_mut() {
            *v *= factor;
        }
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: &F, other: &SparseVec<F>) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) if ia < ib => out.push(a.next().unwrap()),
                (Some((ia, _)), Some((ib, _))) if ia > ib => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, factor.mul_ref(v)));
                }
                (Some(_), Some(_)) => {
                    let (i, mut x) = a.next().unwrap();
                    let (_, v) = b.next().unwrap();
                    x += &factor.mul_ref(v);
                    if !x.is_zero() {
                        out.push((i, x));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, factor.mul_ref(v)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot(&self, other: &SparseVec<F>) -> Option<F> {
        let mut acc: Option<F> = None;
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (&self.entries[i], &other.entries[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let t = a.1.mul_ref(&b.1);
                    match acc.as_mut() {
                        Some(x) => *x += &t,
                        None => acc = Some(t),
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, f(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Keeps entries with index in `range`, shifted down to start at zero.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SparseVec<F> {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, v)| (i - range.start, v.clone()))
                .collect(),
        }
    }
}

/// Row-major sparse matrix. Absent entries are zero; no zero is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize, one: &F) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| SparseVec::unit(i, one.clone())).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    ///
    /// Panics if an index is out of bounds.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            per_row[r].push((c, v));
        }
        Self {
            rows,
            cols,
            data: per_row.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec<F>>) -> Self {
        for r in &rows {
            if let Some((c, _)) = r.entries().last() {
                assert!(*c < cols, "row entry {c} outside {cols} columns");
            }
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        Self::from_triplets(
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(c, v)| v.entries().iter().map(move |(r, x)| (*r, c, x.clone()))),
        )
    }

    pub fn from_dense(values: &[Vec<F>]) -> Self {
        let rows = values.len();
        let cols = values.first().map_or(0, Vec::len);
        Self {
            rows,
            cols,
            data: values.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<F> {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        self.data[r].get(c)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn mul(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row.entries() {
                    acc.axpy(a, &rhs.data[*k]);
                }
                acc
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .filter_map(|(r, row)| row.dot(v).map(|x| (r, x))),
        )
    }

    pub fn add(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let one = self
            .triplets()
            .chain(rhs.triplets())
            .next()
            .map(|(_, _, v)| v.one_like());
        let mut out = self.clone();
        if let Some(one) = one {
            for (a, b) in out.data.iter_mut().zip(&rhs.data) {
                a.axpy(&one, b);
            }
        }
        out
    }

    pub fn scale(&self, factor: &F) -> SparseMatrix<F> {
        let mut out = self.clone();
        for row in out.data.iter_mut() {
            row.scale(factor);
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.map(&f)).collect(),
        }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }

    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrix<F> {
        SparseMatrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    pub fn to_dense(&self, zero: &F) -> Vec<Vec<F>> {
        self.data
            .iter()
            .map(|r| r.to_dense(self.cols, zero))
            .collect()
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.rows, rhs.rows);
        let shift = self.cols;
        SparseMatrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| {
                    let mut e = a.entries().to_vec();
                    e.extend(b.entries().iter().map(|(c, v)| (c + shift, v.clone())));
                    SparseVec { entries: e }
                })
                .collect(),
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        SparseMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{rat, Rational};

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m: SparseMatrix<Rational> = SparseMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 0, rat(1)),
                (0, 0, rat(-1)),
                (1, 1, rat(3)),
                (1, 1, rat(2)),
            ],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), Some(&rat(5)));
        assert_eq!(m.get(0, 0), None);
    }

    #[test]
    #[should_panic]
    fn out_of_bounds_entry_panics() {
        let _ = SparseMatrix::from_triplets(1, 1, vec![(0, 1, rat(1))]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![rat(1), rat(2)], vec![rat(0), rat(1)]]);
        let b = a.transpose();
        let ab = a.mul(&b);
        assert_eq!(
            ab.to_dense(&rat(0)),
            vec![vec![rat(5), rat(2)], vec![rat(2), rat(1)]]
        );
    }

    #[test]
    fn axpy_cancels() {
        let mut v = SparseVec::from_entries(vec![(0, rat(1)), (3, rat(2))]);
        let w = SparseVec::from_entries(vec![(3, rat(1)), (5, rat(1))]);
        v.axpy(&rat(-2), &w);
        assert_eq!(v.entries(), &[(0, rat(1)), (5, rat(-2))]);
    }
}
