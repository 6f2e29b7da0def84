use serde::Serialize;

use super::{Face, SimplicialComplex};
use crate::cohomology::{reduced_betti, Betti};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub pure: bool,
    pub connected: bool,
    pub components: usize,
    pub cohen_macaulay: bool,
    pub buchsbaum: bool,
    pub homology_manifold: bool,
    pub orientable: bool,
    pub reduced_euler_characteristic: i64,
    pub reduced_betti: Vec<usize>,
}

/// `β̃_i(lk σ) = 0` for all `i < dim lk σ`.
fn link_is_cm(betti: &Betti, link_dim: i64) -> bool {
    (-1..link_dim).all(|i| betti.get(i) == 0)
}

/// Whether a link has the rational homology of a sphere of dimension `dim`.
fn link_is_sphere(betti: &Betti, dim: i64) -> bool {
    betti
        .0
        .iter()
        .enumerate()
        .all(|(k, &b)| b == usize::from(k as i64 - 1 == dim))
        && betti.get(dim) == 1
}

/// Combinatorial and homological type of a complex over Q, decided with
/// Reisner's criterion on links.
pub fn classify(k: &SimplicialComplex) -> ClassificationReport {
    let d = k.d() as i64;
    let pure = k.is_pure();
    let betti = reduced_betti(k);
    let mut cm_nonempty = true;
    let mut manifold = true;
    for sigma in k.faces().filter(|f| !f.is_empty()).collect::<Vec<Face>>() {
        let lk = k.link(sigma).expect("face of the complex");
        let b = reduced_betti(&lk);
        let lk_dim = d - sigma.len() as i64 - 1;
        if cm_nonempty && !(lk.dim() == lk_dim && link_is_cm(&b, lk_dim)) {
            cm_nonempty = false;
        }
        if manifold && !link_is_sphere(&b, lk_dim) {
            manifold = false;
        }
        if !cm_nonempty && !manifold {
            break;
        }
    }
    let buchsbaum = pure && cm_nonempty;
    let cohen_macaulay = buchsbaum && link_is_cm(&betti, d - 1);
    let homology_manifold = pure && manifold && !k.is_void();
    let components = k.components().len();
    let orientable =
        homology_manifold && d >= 1 && betti.get(d - 1) + usize::from(d == 1) == components;
    ClassificationReport {
        pure,
        connected: components == 1,
        components,
        cohen_macaulay,
        buchsbaum,
        homology_manifold,
        orientable,
        reduced_euler_characteristic: k.reduced_euler_characteristic(),
        reduced_betti: betti.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_cm_orientable_manifold() {
        let k = SimplicialComplex::simplex_boundary(4).unwrap();
        let r = classify(&k);
        assert!(r.pure && r.connected && r.cohen_macaulay && r.buchsbaum);
        assert!(r.homology_manifold && r.orientable);
    }

    #[test]
    fn two_disjoint_triangles_are_buchsbaum_not_cm() {
        let k = SimplicialComplex::from_one_based(6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let r = classify(&k);
        assert!(r.buchsbaum && !r.cohen_macaulay);
        assert!(!r.connected);
        assert!(!r.homology_manifold);
    }

    #[test]
    fn pinched_complex_is_not_buchsbaum() {
        // two triangles sharing a single vertex
        let k = SimplicialComplex::from_one_based(5, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        let r = classify(&k);
        assert!(r.pure && !r.buchsbaum);
    }

    #[test]
    fn hollow_triangle_is_orientable_circle() {
        let k =
            SimplicialComplex::from_one_based(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let r = classify(&k);
        assert!(r.homology_manifold && r.orientable && r.cohen_macaulay);
    }
}
