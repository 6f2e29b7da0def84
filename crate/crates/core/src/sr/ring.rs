//! Graded pieces of `k[K]` in isotypic orbit-sum bases.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::action::{orbits_by, CyclicAction};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{Cyclotomic, Field, SparseVec};
use crate::monomial::{t_slice, ExponentVector};

/// A linear form `Σ c_v x_v` declared to lie in character `character`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<Cyclotomic>,
    pub character: u32,
}

impl LinearForm {
    pub fn field_order(&self) -> u32 {
        self.coeffs.first().map(Cyclotomic::order).unwrap_or(1)
    }

    /// Checks `g·θ = ζ^δ θ`, i.e. `c_{g⁻¹(w)} = ζ^δ c_w` for every `w`.
    pub fn is_homogeneous(&self, a: &CyclicAction) -> bool {
        let p = a.p();
        if self.coeffs.len() != a.n() || self.coeffs.iter().any(|c| c.order() != p) {
            return false;
        }
        let z = Cyclotomic::zeta_pow(p, self.character as i64);
        (0..a.n()).all(|w| self.coeffs[a.apply_inverse(w)] == z.mul_ref(&self.coeffs[w]))
    }
}

/// The monomials of one degree, grouped into orbits.
#[derive(Debug)]
pub struct Piece {
    pub degree: u32,
    pub monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    /// Each orbit as monomial indices `[r, g·r, g²·r, …]`.
    orbits: Vec<Vec<usize>>,
    /// Orbits contributing a basis vector to each character.
    by_char: Vec<Vec<usize>>,
}

impl Piece {
    pub fn dim(&self, c: u32) -> usize {
        self.by_char[c as usize].len()
    }

    pub fn total_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, u: &ExponentVector) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// Monomial expansion of `Σ_r x_r b_r`, where
    /// `b_r = Σ_k ζ^{-ck} g^k·rep_r` is the `r`-th basis vector of character `c`.
    pub fn expand(
        &self,
        c: u32,
        field_p: u32,
        coords: &SparseVec<Cyclotomic>,
    ) -> SparseVec<Cyclotomic> {
        let mut entries = Vec::new();
        for (r, x) in coords.entries() {
            let orbit = &self.orbits[self.by_char[c as usize][*r]];
            for (k, &mono) in orbit.iter().enumerate() {
                let z = Cyclotomic::zeta_pow(field_p, -(c as i64) * k as i64);
                entries.push((mono, z.mul_ref(x)));
            }
        }
        SparseVec::from_entries(entries)
    }

    /// Coordinates of a vector known to lie in character `c`: the
    /// coefficients at the orbit representatives.
    pub fn read(&self, c: u32, v: &SparseVec<Cyclotomic>) -> SparseVec<Cyclotomic> {
        SparseVec::from_entries(
            self.by_char[c as usize]
                .iter()
                .enumerate()
                .filter_map(|(r, &o)| v.get(self.orbits[o][0]).map(|x| (r, x.clone()))),
        )
    }

    /// Applies `g` to a monomial-indexed vector.
    pub fn act(&self, a: &CyclicAction, v: &SparseVec<Cyclotomic>) -> SparseVec<Cyclotomic> {
        SparseVec::from_entries(v.entries().iter().map(|(i, x)| {
            (
                self.index[&a.apply_exponent(&self.monomials[*i])],
                x.clone(),
            )
        }))
    }
}

/// `k[K]` over `Q(ζ_field_p)`, graded by degree and, when an action is
/// given, by character.
pub struct GradedRing<'a> {
    k: &'a SimplicialComplex,
    action: Option<&'a CyclicAction>,
    field_p: u32,
    pieces: Mutex<HashMap<u32, Arc<Piece>>>,
}

impl<'a> GradedRing<'a> {
    pub fn new(
        k: &'a SimplicialComplex,
        action: Option<&'a CyclicAction>,
        field_p: u32,
    ) -> Result<Self> {
        if let Some(a) = action {
            if a.p() != field_p {
                return Err(Error::FieldMismatch {
                    expected: a.p(),
                    found: field_p,
                });
            }
            if a.n() != k.n() {
                return Err(Error::Invalid("action and complex disagree on n".into()));
            }
        }
        Ok(Self {
            k,
            action,
            field_p,
            pieces: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.k
    }

    pub fn action(&self) -> Option<&CyclicAction> {
        self.action
    }

    pub fn field_p(&self) -> u32 {
        self.field_p
    }

    /// Number of characters: `p` with an action, `1` without.
    pub fn characters(&self) -> u32 {
        self.action.map(CyclicAction::p).unwrap_or(1)
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.field_p)
    }

    pub fn piece(&self, degree: u32) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().expect("piece cache").get(&degree) {
            return p.clone();
        }
        let built = Arc::new(self.build_piece(degree));
        self.pieces
            .lock()
            .expect("piece cache")
            .entry(degree)
            .or_insert(built)
            .clone()
    }

    fn build_piece(&self, degree: u32) -> Piece {
        let monomials = t_slice(self.k, degree);
        let index: HashMap<ExponentVector, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, u)| (u, i))
            .collect();
        let q = self.characters();
        let orbit_lists = match self.action {
            Some(a) => orbits_by(0..monomials.len(), q, |&i| {
                index[&a.apply_exponent(&monomials[i])]
            }),
            None => orbits_by(0..monomials.len(), 1, |&i| i),
        };
        let mut by_char = vec![Vec::new(); q as usize];
        for (o, orbit) in orbit_lists.orbits.iter().enumerate() {
            if orbit.len() == 1 {
                by_char[0].push(o);
            } else {
                for list in by_char.iter_mut() {
                    list.push(o);
                }
            }
        }
        Piece {
            degree,
            monomials,
            index,
            orbits: orbit_lists.orbits,
            by_char,
        }
    }

    pub fn dim(&self, degree: u32, c: u32) -> usize {
        self.piece(degree).dim(c % self.characters())
    }

    /// `θ · v` for `v` indexed by monomials of `degree`.
    pub fn times_form(
        &self,
        degree: u32,
        v: &SparseVec<Cyclotomic>,
        form: &LinearForm,
    ) -> SparseVec<Cyclotomic> {
        let src = self.piece(degree);
        let dst = self.piece(degree + 1);
        let mut entries = Vec::new();
        for (i, x) in v.entries() {
            let mu = &src.monomials[*i];
            for (vtx, c) in form.coeffs.iter().enumerate() {
                if Field::is_zero(c) {
                    continue;
                }
                if let Some(j) = dst.index_of(&mu.times_vertex(vtx)) {
                    entries.push((j, c.mul_ref(x)));
                }
            }
        }
        SparseVec::from_entries(entries)
    }

    /// Product of monomial-indexed vectors of degrees `da` and `db`.
    pub fn product(
        &self,
        da: u32,
        u: &SparseVec<Cyclotomic>,
        db: u32,
        w: &SparseVec<Cyclotomic>,
    ) -> SparseVec<Cyclotomic> {
        let (pa, pb, pc) = (self.piece(da), self.piece(db), self.piece(da + db));
        let mut entries = Vec::new();
        for (i, x) in u.entries() {
            for (j, y) in w.entries() {
                let mono = pa.monomials[*i].product(&pb.monomials[*j]);
                if let Some(k) = pc.index_of(&mono) {
                    entries.push((k, x.mul_ref(y)));
                }
            }
        }
        SparseVec::from_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn circle() -> (SimplicialComplex, CyclicAction) {
        (
            SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
            CyclicAction::from_one_based(3, &[2, 3, 1], false).unwrap(),
        )
    }

    #[test]
    fn isotypic_dims_split_evenly() {
        let (k, g) = circle();
        let ring = GradedRing::new(&k, Some(&g), 3).unwrap();
        assert_eq!(
            (0..3).map(|c| ring.dim(0, c)).collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
        for d in 1..5 {
            let total = ring.piece(d).total_dim();
            for c in 0..3 {
                assert_eq!(ring.dim(d, c) * 3, total);
            }
        }
    }

    #[test]
    fn expanded_basis_vectors_are_eigenvectors() {
        let (k, g) = circle();
        let ring = GradedRing::new(&k, Some(&g), 3).unwrap();
        let piece = ring.piece(2);
        for c in 0..3u32 {
            for r in 0..piece.dim(c) {
                let v = piece.expand(c, 3, &SparseVec::unit(r, ring.one()));
                let mut expected = v.clone();
                expected.scale(&Cyclotomic::zeta_pow(3, c as i64));
                assert_eq!(piece.act(&g, &v), expected);
                assert_eq!(piece.read(c, &v), SparseVec::unit(r, ring.one()));
            }
        }
    }

    #[test]
    fn homogeneity_of_forms() {
        let (_, g) = circle();
        // t(g^k v) = ζ^{-k} t(v) gives character 1
        let coeffs = (0..3).map(|k| Cyclotomic::zeta_pow(3, -k)).collect();
        let form = LinearForm {
            coeffs,
            character: 1,
        };
        assert!(form.is_homogeneous(&g));
        let wrong = LinearForm {
            character: 2,
            ..form.clone()
        };
        assert!(!wrong.is_homogeneous(&g));
        let rational = LinearForm {
            coeffs: vec![Cyclotomic::from_rational(3, rat(1)); 3],
            character: 0,
        };
        assert!(rational.is_homogeneous(&g));
    }
}
