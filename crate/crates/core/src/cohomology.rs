//! Simplicial cohomology over Q, absolute and relative, with the isotypic
//! splitting induced by a cyclic action.
//!
//! Cochains of a pair `(K, Γ)` live on the faces of `K` outside `Γ`, with
//! `∅` in degree `-1` whenever it is not in `Γ`. So `H(K, void)` is reduced
//! cohomology and `H(K, {∅})` is the unreduced one. The coboundary is
//! `(δc)(τ) = Σ_r (-1)^r c(τ ∖ τ_r)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::action::CyclicAction;
use crate::complex::{binomial, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::echelon::{rank, to_cyclotomic};
use crate::linalg::{eigenspace_dim, kernel_basis, rat, Rational, RowEchelon, SparseMatrix};
use crate::monomial::t_slice;

/// Graded dimensions indexed from degree `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Betti(pub Vec<usize>);

impl Betti {
    /// Value in degree `i`, zero outside the stored range.
    pub fn get(&self, i: i64) -> usize {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// `β_i^j`: rows are degrees from `-1`, columns are characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicBetti {
    pub p: u32,
    pub table: Vec<Vec<usize>>,
}

impl IsotypicBetti {
    /// `β_i^j`, with `j` read mod `p`.
    pub fn get(&self, i: i64, j: i64) -> usize {
        if i < -1 {
            return 0;
        }
        let j = j.rem_euclid(self.p as i64) as usize;
        self.table
            .get((i + 1) as usize)
            .map(|row| row[j])
            .unwrap_or(0)
    }

    pub fn totals(&self) -> Betti {
        Betti(self.table.iter().map(|r| r.iter().sum()).collect())
    }
}

/// Cochain groups and coboundaries on an upward-closed family of faces.
pub struct Cochains {
    /// Bases by face size; size `s` is cohomological degree `s - 1`.
    bases: Vec<Vec<Face>>,
    index: HashMap<Face, usize>,
    /// `delta[s]: C_s → C_{s+1}`.
    delta: Vec<SparseMatrix<Rational>>,
}

impl Cochains {
    /// Cochains on the given faces. The family must be closed upward inside
    /// the ambient complex (true for `K ∖ Γ` with `Γ` a subcomplex).
    pub fn on_faces(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut bases: Vec<Vec<Face>> = Vec::new();
        for f in faces {
            if bases.len() <= f.len() {
                bases.resize(f.len() + 1, Vec::new());
            }
            bases[f.len()].push(f);
        }
        let mut index = HashMap::new();
        for level in bases.iter_mut() {
            level.sort();
            for (i, f) in level.iter().enumerate() {
                index.insert(*f, i);
            }
        }
        let mut delta = Vec::with_capacity(bases.len());
        for s in 0..bases.len() {
            let rows = bases.get(s + 1).map(Vec::len).unwrap_or(0);
            let mut trip = Vec::new();
            if let Some(upper) = bases.get(s + 1) {
                for (r, tau) in upper.iter().enumerate() {
                    for (pos, v) in tau.vertices().enumerate() {
                        if let Some(&c) = index.get(&tau.without(v)) {
                            let sign = if pos % 2 == 0 { 1 } else { -1 };
                            trip.push((r, c, rat(sign)));
                        }
                    }
                }
            }
            delta.push(SparseMatrix::from_triplets(rows, bases[s].len(), trip));
        }
        Self {
            bases,
            index,
            delta,
        }
    }

    /// Augmented cochains of `K`.
    pub fn absolute(k: &SimplicialComplex) -> Self {
        Self::on_faces(k.faces())
    }

    /// Cochains of the pair `(K, Γ)`.
    pub fn relative(k: &SimplicialComplex, gamma: &SimplicialComplex) -> Result<Self> {
        check_subcomplex(k, gamma)?;
        Ok(Self::on_faces(k.faces().filter(|f| !gamma.contains(*f))))
    }

    /// Number of face sizes represented (`max size + 1`).
    pub fn levels(&self) -> usize {
        self.bases.len()
    }

    pub fn basis(&self, size: usize) -> &[Face] {
        self.bases.get(size).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `δ: C_size → C_{size+1}`.
    pub fn coboundary(&self, size: usize) -> SparseMatrix<Rational> {
        self.delta.get(size).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(self.basis(size + 1).len(), self.basis(size).len())
        })
    }

    fn incoming(&self, size: usize) -> SparseMatrix<Rational> {
        if size == 0 {
            SparseMatrix::zeros(self.basis(0).len(), 0)
        } else {
            self.coboundary(size - 1)
        }
    }

    /// Signed permutation matrix of `g` on `C_size`.
    pub fn action_matrix(&self, a: &CyclicAction, size: usize) -> Result<SparseMatrix<Rational>> {
        let basis = self.basis(size);
        let mut trip = Vec::with_capacity(basis.len());
        for (c, &f) in basis.iter().enumerate() {
            let img = a.apply_face(f);
            let r = *self.index.get(&img).ok_or_else(|| {
                Error::Invalid(format!("face family is not stable under the action at {f}"))
            })?;
            trip.push((r, c, rat(a.face_sign(f))));
        }
        Ok(SparseMatrix::from_triplets(basis.len(), basis.len(), trip))
    }

    /// Cohomology dimensions from degree `-1` up to the top level.
    pub fn dims(&self) -> Betti {
        let ranks: Vec<usize> = (0..self.levels()).map(|s| rank(&self.delta[s])).collect();
        Betti(
            (0..self.levels())
                .map(|s| {
                    let before = if s == 0 { 0 } else { ranks[s - 1] };
                    self.bases[s].len() - ranks[s] - before
                })
                .collect(),
        )
    }

    /// Character decomposition of cohomology in degree `size - 1`.
    pub fn isotypic_dims(&self, a: &CyclicAction, size: usize) -> Result<Vec<usize>> {
        isotypic_cohomology(
            &self.incoming(size),
            &self.coboundary(size),
            &self.action_matrix(a, size)?,
            a.p(),
        )
    }
}

fn check_subcomplex(k: &SimplicialComplex, gamma: &SimplicialComplex) -> Result<()> {
    for &f in gamma.facets() {
        if !k.contains(f) {
            return Err(Error::NotSubcomplex {
                face: f.to_string(),
            });
        }
    }
    Ok(())
}

/// Character dimensions of `ker d_next / im d_prev` under an operator `g`
/// of order dividing `p` that commutes with both maps.
///
/// Works in a basis of a complement of the coboundaries inside the cocycles,
/// computes the induced operator there, and reads off eigenspace dimensions.
pub fn isotypic_cohomology(
    d_prev: &SparseMatrix<Rational>,
    d_next: &SparseMatrix<Rational>,
    g: &SparseMatrix<Rational>,
    p: u32,
) -> Result<Vec<usize>> {
    let dim = g.rows();
    let one = rat(1);
    let image = RowEchelon::from_rows(dim, d_prev.columns().iter());
    let mut complement = RowEchelon::new(dim);
    for z in kernel_basis(d_next, &one) {
        complement.insert(&image.reduce(&z));
    }
    let h = complement.rank();
    if h == 0 {
        return Ok(vec![0; p as usize]);
    }
    let mut trip = Vec::new();
    for (a, r) in complement.rows().iter().enumerate() {
        let w = image.reduce(&g.mul_vec(r));
        for (b, &piv) in complement.pivots().iter().enumerate() {
            if let Some(x) = w.get(piv) {
                trip.push((b, a, x.clone()));
            }
        }
    }
    let induced = to_cyclotomic(&SparseMatrix::from_triplets(h, h, trip), p);
    (0..p as i64)
        .map(|j| eigenspace_dim(&induced, p, j))
        .collect()
}

/// Reduced Betti numbers `β_{-1}, …, β_{d-1}` over Q.
pub fn reduced_betti(k: &SimplicialComplex) -> Betti {
    Cochains::absolute(k).dims()
}

/// `dim H^i(K, Γ)` from `i = -1`.
pub fn relative_cohomology_dims(k: &SimplicialComplex, gamma: &SimplicialComplex) -> Result<Betti> {
    let c = Cochains::relative(k, gamma)?;
    let mut b = c.dims();
    b.0.resize(k.d() + 1, 0);
    Ok(b)
}

/// `β_i^j = dim H̃^i(K)_j` for `i = -1..d-1` and every character `j`.
pub fn isotypic_betti(k: &SimplicialComplex, a: &CyclicAction) -> Result<IsotypicBetti> {
    let c = Cochains::absolute(k);
    let table = (0..c.levels())
        .map(|s| c.isotypic_dims(a, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(IsotypicBetti { p: a.p(), table })
}

/// Relative cohomology of `(K, cost σ)` for every nonempty face, reused across
/// the Hochster grid.
pub struct CostarTable {
    dims: Vec<(Face, Betti)>,
}

impl CostarTable {
    pub fn new(k: &SimplicialComplex) -> Self {
        let faces: Vec<Face> = k.faces().filter(|f| !f.is_empty()).collect();
        let dims = faces
            .into_iter()
            .map(|s| {
                let c = Cochains::on_faces(k.faces().filter(|t| s.is_subset(*t)));
                (s, c.dims())
            })
            .collect();
        Self { dims }
    }

    /// `Σ_{σ ∈ K, 1 ≤ |σ| ≤ j} C(j-1, |σ|-1) · dim H^{deg}(K, cost σ)`.
    pub fn weighted_total(&self, deg: i64, j: u32) -> usize {
        self.dims
            .iter()
            .filter(|(s, _)| s.len() <= j as usize)
            .map(|(s, b)| binomial(j as i64 - 1, s.len() as i64 - 1) as usize * b.get(deg))
            .sum()
    }
}

/// Fine right-hand side of Hochster's formula: the character decomposition
/// of `⊕_{U ∈ T_j} H^{i-1}(K, cost s(U))`.
///
/// For `j = 0` this is `β_{i-1}^*`. For `j ≥ 1` and a free action the
/// summands are permuted freely, so every character gets `total / p`.
pub fn hochster_rhs_fine(
    k: &SimplicialComplex,
    a: &CyclicAction,
    i: i64,
    j: u32,
    table: Option<&CostarTable>,
) -> Result<Vec<usize>> {
    let p = a.p() as usize;
    if j == 0 {
        let b = isotypic_betti(k, a)?;
        return Ok((0..p).map(|c| b.get(i - 1, c as i64)).collect());
    }
    let owned;
    let table = match table {
        Some(t) => t,
        None => {
            owned = CostarTable::new(k);
            &owned
        }
    };
    let total = table.weighted_total(i - 1, j);
    if total % p != 0 {
        return Err(Error::NotFree);
    }
    Ok(vec![total / p; p])
}

/// Same quantity as [`hochster_rhs_fine`], computed by building the direct
/// sum over `T_j` with its action and splitting the induced operator.
pub fn hochster_rhs_fine_direct(
    k: &SimplicialComplex,
    a: &CyclicAction,
    i: i64,
    j: u32,
) -> Result<Vec<usize>> {
    let p = a.p();
    let size = i; // degree i-1 lives on faces of size i
    if size < 0 {
        return Ok(vec![0; p as usize]);
    }
    let size = size as usize;
    let slice = t_slice(k, j);
    let pos: HashMap<_, _> = slice
        .iter()
        .enumerate()
        .map(|(i, u)| (u.clone(), i))
        .collect();
    let blocks: Vec<Cochains> = slice
        .iter()
        .map(|u| {
            let s = u.support();
            Cochains::on_faces(k.faces().filter(|t| s.is_subset(*t)))
        })
        .collect();
    // Global indexing of the three relevant levels.
    let offsets = |lvl: Option<usize>| -> Vec<usize> {
        let mut acc = 0;
        blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += lvl.map(|l| b.basis(l).len()).unwrap_or(0);
                o
            })
            .collect()
    };
    let total_of = |lvl: Option<usize>| -> usize {
        blocks
            .iter()
            .map(|b| lvl.map(|l| b.basis(l).len()).unwrap_or(0))
            .sum()
    };
    let below = size.checked_sub(1);
    let (o_prev, o_mid, o_next) = (offsets(below), offsets(Some(size)), offsets(Some(size + 1)));
    let (n_prev, n_mid, n_next) = (
        total_of(below),
        total_of(Some(size)),
        total_of(Some(size + 1)),
    );

    let mut prev_trip = Vec::new();
    let mut next_trip = Vec::new();
    let mut g_trip = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        if let Some(l) = below {
            for (r, c, x) in block.coboundary(l).triplets() {
                prev_trip.push((o_mid[b] + r, o_prev[b] + c, x.clone()));
            }
        }
        for (r, c, x) in block.coboundary(size).triplets() {
            next_trip.push((o_next[b] + r, o_mid[b] + c, x.clone()));
        }
        let target = pos[&a.apply_exponent(&slice[b])];
        for (c, &f) in block.basis(size).iter().enumerate() {
            let img = a.apply_face(f);
            let r = blocks[target].index[&img];
            g_trip.push((o_mid[target] + r, o_mid[b] + c, rat(a.face_sign(f))));
        }
    }
    isotypic_cohomology(
        &SparseMatrix::from_triplets(n_mid, n_prev, prev_trip),
        &SparseMatrix::from_triplets(n_next, n_mid, next_trip),
        &SparseMatrix::from_triplets(n_mid, n_mid, g_trip),
        p,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    fn octahedron() -> (SimplicialComplex, CyclicAction) {
        let mut facets = Vec::new();
        for a in [1, 4] {
            for b in [2, 5] {
                for c in [3, 6] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        (
            SimplicialComplex::from_one_based(6, &facets).unwrap(),
            CyclicAction::from_one_based(2, &[4, 5, 6, 1, 2, 3], false).unwrap(),
        )
    }

    #[test]
    fn reduced_betti_of_small_complexes() {
        assert_eq!(reduced_betti(&hollow_triangle()).0, vec![0, 0, 1]);
        assert_eq!(reduced_betti(&SimplicialComplex::empty_face(2)).0, vec![1]);
        assert_eq!(
            reduced_betti(&SimplicialComplex::simplex(3).unwrap()).0,
            vec![0, 0, 0, 0]
        );
        let two_points = SimplicialComplex::from_one_based(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(reduced_betti(&two_points).0, vec![0, 1]);
    }

    #[test]
    fn relative_conventions() {
        let k = hollow_triangle();
        let reduced = relative_cohomology_dims(&k, &SimplicialComplex::void(3)).unwrap();
        assert_eq!(reduced.0, vec![0, 0, 1]);
        let unreduced = relative_cohomology_dims(&k, &SimplicialComplex::empty_face(3)).unwrap();
        assert_eq!(unreduced.0, vec![0, 1, 1]);
        let not_sub = SimplicialComplex::from_one_based(3, &[vec![1, 2, 3]]).unwrap();
        assert!(matches!(
            relative_cohomology_dims(&k, &not_sub),
            Err(Error::NotSubcomplex { .. })
        ));
    }

    #[test]
    fn octahedron_top_class_is_odd() {
        // The antipodal map reverses orientation of S^2.
        let (k, g) = octahedron();
        let b = isotypic_betti(&k, &g).unwrap();
        assert_eq!(b.table[3], vec![0, 1]);
        assert_eq!(b.totals().0, vec![0, 0, 0, 1]);
    }

    #[test]
    fn rotation_of_triangle_fixes_the_cycle() {
        let k = hollow_triangle();
        let g = CyclicAction::from_one_based(3, &[2, 3, 1], false).unwrap();
        let b = isotypic_betti(&k, &g).unwrap();
        assert_eq!(b.table[2], vec![1, 0, 0]);
    }

    #[test]
    fn hochster_routes_agree_on_octahedron() {
        let (k, g) = octahedron();
        let table = CostarTable::new(&k);
        for i in 0..=3 {
            for j in 0..=2 {
                let fast = hochster_rhs_fine(&k, &g, i, j, Some(&table)).unwrap();
                let direct = hochster_rhs_fine_direct(&k, &g, i, j).unwrap();
                assert_eq!(fast, direct, "i={i} j={j}");
            }
        }
    }
}
