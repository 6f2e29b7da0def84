//! Exact elimination: rank, kernels, subspace membership and eigenspaces.
//!
//! The sparse engine keeps a reduced row echelon form that grows one row at a
//! time. Rows are fed shortest first and each new pivot is taken in the
//! column currently least occupied by existing rows, which keeps
//! back-substitution fill low. Matrices under 64x64 go through a dense
//! Gauss–Jordan pass instead.

use std::collections::HashMap;

use super::cyclotomic::Cyclotomic;
use super::field::Field;
use super::modular::{ModQ, ModularContext};
use super::sparse::{SparseMatrix, SparseVec};
use crate::error::{Error, Result};

const DENSE_LIMIT: usize = 64;

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a pivot entry equal to one and is zero in the pivot
/// columns of all other rows.
#[derive(Clone, Debug)]
pub struct RowEchelon<F> {
    cols: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
    col_count: Vec<u32>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: HashMap::new(),
            col_count: vec![0; cols],
        }
    }

    /// Echelon form of the row space of `m`.
    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self
    where
        F: 'a,
    {
        let mut sorted: Vec<&SparseVec<F>> = rows.into_iter().filter(|r| !r.is_zero()).collect();
        sorted.sort_by_key(|r| r.nnz());
        let mut ech = Self::new(cols);
        for r in sorted {
            ech.insert(r);
        }
        ech
    }

    pub fn of_matrix(m: &SparseMatrix<F>) -> Self {
        Self::from_rows(m.cols(), m.row_vectors())
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `v` modulo the row space: the result vanishes in every pivot column.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let hits: Vec<(usize, F)> = v
            .entries()
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|&r| (r, x.clone())))
            .collect();
        let mut w = v.clone();
        for (r, x) in hits {
            w.axpy(&-x, &self.rows[r]);
        }
        w
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set. Returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let mut w = self.reduce(v);
        if w.is_zero() {
            return false;
        }
        let (pc, pv) = w
            .entries()
            .iter()
            .min_by_key(|(c, _)| (self.col_count[*c], *c))
            .map(|(c, x)| (*c, x.clone()))
            .expect("nonzero vector has an entry");
        w.scale(&pv.inv());
        for r in 0..self.rows.len() {
            let coef = match self.rows[r].get(pc) {
                Some(x) => x.clone(),
                None => continue,
            };
            for (c, _) in self.rows[r].entries() {
                self.col_count[*c] -= 1;
            }
            self.rows[r].axpy(&-coef, &w);
            for (c, _) in self.rows[r].entries() {
                self.col_count[*c] += 1;
            }
        }
        for (c, _) in w.entries() {
            self.col_count[*c] += 1;
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.pivots.push(pc);
        self.rows.push(w);
        true
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`, one vector per free column.
    pub fn null_space(&self, one: &F) -> Vec<SparseVec<F>> {
        let mut by_free: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.entries() {
                if *c != pc {
                    by_free.entry(*c).or_default().push((pc, -x.clone()));
                }
            }
        }
        (0..self.cols)
            .filter(|c| !self.is_pivot(*c))
            .map(|f| {
                let mut entries = by_free.remove(&f).unwrap_or_default();
                entries.push((f, one.clone()));
                SparseVec::from_entries(entries)
            })
            .collect()
    }

    /// Coordinates of a vector of the row space with respect to the stored rows.
    ///
    /// Returns `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<Option<F>>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|pc| v.get(*pc).cloned()).collect())
    }
}

fn dense_rref<F: Field>(mut a: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].inv();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f.mul_ref(y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn is_small<F: Field>(m: &SparseMatrix<F>) -> bool {
    m.rows() < DENSE_LIMIT && m.cols() < DENSE_LIMIT
}

fn any_entry<F: Field>(m: &SparseMatrix<F>) -> Option<F> {
    m.triplets().next().map(|(_, _, v)| v.clone())
}

/// Rank by exact elimination.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let Some(x) = any_entry(m) else {
        return 0;
    };
    if is_small(m) {
        dense_rref(m.to_dense(&x.zero_like()), m.cols()).1.len()
    } else {
        RowEchelon::of_matrix(m).rank()
    }
}

/// Rank computed with the sparse engine regardless of size.
pub fn rank_sparse<F: Field>(m: &SparseMatrix<F>) -> usize {
    RowEchelon::of_matrix(m).rank()
}

/// Rank computed densely regardless of size.
pub fn rank_dense<F: Field>(m: &SparseMatrix<F>) -> usize {
    match any_entry(m) {
        Some(x) => dense_rref(m.to_dense(&x.zero_like()), m.cols()).1.len(),
        None => 0,
    }
}

/// Exact basis of the right kernel `{x : M x = 0}`; its length is `cols − rank`.
///
/// `one` fixes the field of the returned vectors when `m` has no entries.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>, one: &F) -> Vec<SparseVec<F>> {
    if m.is_zero() {
        return (0..m.cols())
            .map(|i| SparseVec::unit(i, one.clone()))
            .collect();
    }
    if is_small(m) {
        let (rows, pivots) = dense_rref(m.to_dense(&one.zero_like()), m.cols());
        let rows: Vec<SparseVec<F>> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        let mut ech = RowEchelon::new(m.cols());
        for (r, pc) in rows.into_iter().zip(pivots) {
            ech.pivot_row.insert(pc, ech.rows.len());
            ech.pivots.push(pc);
            ech.rows.push(r);
        }
        ech.null_space(one)
    } else {
        RowEchelon::of_matrix(m).null_space(one)
    }
}

/// Rank over F_q after reduction, `None` if an entry is not q-integral.
pub fn rank_mod(m: &SparseMatrix<Cyclotomic>, ctx: &ModularContext) -> Option<usize> {
    let mut rows = Vec::with_capacity(m.rows());
    for row in m.row_vectors() {
        let mut entries = Vec::with_capacity(row.nnz());
        for (c, x) in row.entries() {
            entries.push((*c, ctx.reduce_cyclotomic(x)?));
        }
        rows.push(SparseVec::<ModQ>::from_entries(entries));
    }
    Some(RowEchelon::from_rows(m.cols(), rows.iter()).rank())
}

/// Exact rank, using a modular pass first: when the reduction already has
/// full rank the exact rank is known without rational elimination.
pub fn rank_prescreened(m: &SparseMatrix<Cyclotomic>) -> usize {
    let Some(x) = any_entry(m) else {
        return 0;
    };
    let full = m.rows().min(m.cols());
    let ctx = ModularContext::for_order(x.order());
    match rank_mod(m, &ctx) {
        Some(r) if r == full => r,
        _ => rank(m),
    }
}

/// Checks `m^p = I` for a square matrix.
pub fn is_periodic(m: &SparseMatrix<Cyclotomic>, p: u32) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let one = Cyclotomic::one(p);
    let id = SparseMatrix::identity(m.rows(), &one);
    let mut power = id.clone();
    for _ in 0..p {
        power = power.mul(m);
    }
    power == id
}

fn shifted(m: &SparseMatrix<Cyclotomic>, p: u32, j: i64) -> SparseMatrix<Cyclotomic> {
    let eig = -Cyclotomic::zeta_pow(p, j);
    m.add(&SparseMatrix::identity(m.rows(), &eig))
}

fn check_operator(m: &SparseMatrix<Cyclotomic>, p: u32) -> Result<()> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if let Some((_, _, x)) = m.triplets().next() {
        if x.order() != p {
            return Err(Error::FieldMismatch {
                expected: p,
                found: x.order(),
            });
        }
    }
    if !is_periodic(m, p) {
        return Err(Error::NotPeriodic { p });
    }
    Ok(())
}

/// `dim ker(M − ζ^j I)` for an operator with `M^p = I`.
pub fn eigenspace_dim(m: &SparseMatrix<Cyclotomic>, p: u32, j: i64) -> Result<usize> {
    check_operator(m, p)?;
    Ok(m.rows() - rank(&shifted(m, p, j)))
}

/// Basis of the `ζ^j`-eigenspace of an operator with `M^p = I`.
pub fn eigenspace_basis(
    m: &SparseMatrix<Cyclotomic>,
    p: u32,
    j: i64,
) -> Result<Vec<SparseVec<Cyclotomic>>> {
    check_operator(m, p)?;
    Ok(kernel_basis(&shifted(m, p, j), &Cyclotomic::one(p)))
}

/// Embeds a rational matrix into Q(ζ_p).
pub fn to_cyclotomic(m: &SparseMatrix<super::field::Rational>, p: u32) -> SparseMatrix<Cyclotomic> {
    m.map(|x| Cyclotomic::from_rational(p, x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{rat, Rational};

    fn hollow_triangle_boundary() -> SparseMatrix<Rational> {
        // rows: vertices 1,2,3; cols: edges 12, 13, 23
        SparseMatrix::from_dense(&[
            vec![rat(-1), rat(-1), rat(0)],
            vec![rat(1), rat(0), rat(-1)],
            vec![rat(0), rat(1), rat(1)],
        ])
    }

    #[test]
    fn identity_rank() {
        let id = SparseMatrix::identity(2, &rat(1));
        assert_eq!(rank(&id), 2);
        assert!(kernel_basis(&id, &rat(1)).is_empty());
    }

    #[test]
    fn zero_matrix_rank() {
        let z: SparseMatrix<Rational> = SparseMatrix::zeros(3, 5);
        assert_eq!(rank(&z), 0);
        assert_eq!(kernel_basis(&z, &rat(1)).len(), 5);
    }

    #[test]
    fn hollow_triangle() {
        let m = hollow_triangle_boundary();
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_sparse(&m), 2);
        let k = kernel_basis(&m, &rat(1));
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).is_zero());
        // the fundamental cycle 12 - 13 + 23
        let v = k[0].to_dense(3, &rat(0));
        assert_eq!(v[0].clone() * rat(-1), v[1]);
        assert_eq!(v[0], v[2]);
    }

    #[test]
    fn row_one_one() {
        let m = SparseMatrix::from_dense(&[vec![rat(1), rat(1)]]);
        let k = kernel_basis(&m, &rat(1));
        assert_eq!(k.len(), 1);
        let v = k[0].to_dense(2, &rat(0));
        assert_eq!(v[0], -v[1].clone());
        assert!(!Field::is_zero(&v[0]));
    }

    #[test]
    fn eigenspaces() {
        for p in [2u32, 3, 5] {
            let id = SparseMatrix::identity(3, &Cyclotomic::one(p));
            assert_eq!(eigenspace_dim(&id, p, 0).unwrap(), 3);
            for j in 1..p as i64 {
                assert_eq!(eigenspace_dim(&id, p, j).unwrap(), 0);
            }
        }
        let swap = to_cyclotomic(
            &SparseMatrix::from_dense(&[vec![rat(0), rat(1)], vec![rat(1), rat(0)]]),
            2,
        );
        assert_eq!(eigenspace_dim(&swap, 2, 0).unwrap(), 1);
        assert_eq!(eigenspace_dim(&swap, 2, 1).unwrap(), 1);
        let shift = to_cyclotomic(
            &SparseMatrix::from_triplets(
                3,
                3,
                vec![(1, 0, rat(1)), (2, 1, rat(1)), (0, 2, rat(1))],
            ),
            3,
        );
        for j in 0..3 {
            assert_eq!(eigenspace_dim(&shift, 3, j).unwrap(), 1);
        }
    }

    #[test]
    fn non_periodic_rejected() {
        let m = to_cyclotomic(&SparseMatrix::from_dense(&[vec![rat(2)]]), 3);
        assert!(matches!(
            eigenspace_dim(&m, 3, 0),
            Err(Error::NotPeriodic { p: 3 })
        ));
    }

    #[test]
    fn prescreen_agrees() {
        let m = to_cyclotomic(&hollow_triangle_boundary(), 3);
        assert_eq!(rank_prescreened(&m), 2);
        let id = SparseMatrix::identity(4, &Cyclotomic::one(5));
        assert_eq!(rank_prescreened(&id), 4);
    }

    #[test]
    fn row_space_membership() {
        // the row space is the orthogonal complement of the cycle (1, -1, 1)
        let ech = RowEchelon::of_matrix(&hollow_triangle_boundary());
        let inside = SparseVec::from_entries(vec![(0, rat(1)), (1, rat(1))]);
        let outside = SparseVec::from_entries(vec![(0, rat(1)), (1, rat(1)), (2, rat(1))]);
        assert!(ech.contains(&inside));
        assert!(!ech.contains(&outside));
        let coords = ech.coordinates(&inside).unwrap();
        let mut rebuilt = SparseVec::new();
        for (c, row) in coords.iter().zip(ech.rows()) {
            if let Some(c) = c {
                rebuilt.axpy(c, row);
            }
        }
        assert_eq!(rebuilt, inside);
    }
}
