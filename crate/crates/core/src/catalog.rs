//! Built-in complexes with cyclic actions and their documented invariants.

use serde::Serialize;

use crate::action::CyclicAction;
use crate::complex::SimplicialComplex;

/// Invariants recorded by hand for each entry; tests compare them with the
/// computed values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Documented {
    pub free: bool,
    pub very_free: bool,
    pub cohen_macaulay: bool,
    pub buchsbaum: bool,
    pub homology_manifold: bool,
    pub orientable: bool,
    pub h_vector: Vec<i64>,
    /// Reduced Betti numbers from degree -1.
    pub reduced_betti: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub complex: SimplicialComplex,
    pub action: CyclicAction,
    pub documented: Documented,
    /// Character of the equivariant system used by the default checks.
    pub lsop_character: u32,
    /// Default `(i_max, j_max)` for local cohomology comparisons.
    pub hochster_grid: (usize, usize),
}

fn build(
    n: usize,
    facets: &[Vec<usize>],
    p: u32,
    images: &[usize],
    trivial: bool,
) -> (SimplicialComplex, CyclicAction) {
    let k = SimplicialComplex::from_one_based(n, facets).expect("catalog complex");
    let a = CyclicAction::from_one_based(p, images, trivial).expect("catalog action");
    (k, a)
}

fn oct3() -> CatalogEntry {
    let mut facets = Vec::new();
    for a in [1, 4] {
        for b in [2, 5] {
            for c in [3, 6] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    let (complex, action) = build(6, &facets, 2, &[4, 5, 6, 1, 2, 3], false);
    CatalogEntry {
        name: "oct3",
        description: "boundary of the octahedron, antipodal map (1 4)(2 5)(3 6)",
        complex,
        action,
        documented: Documented {
            free: true,
            very_free: true,
            cohen_macaulay: true,
            buchsbaum: true,
            homology_manifold: true,
            orientable: true,
            h_vector: vec![1, 3, 3, 1],
            reduced_betti: vec![0, 0, 0, 1],
        },
        lsop_character: 1,
        hochster_grid: (3, 2),
    }
}

fn icosa() -> CatalogEntry {
    // top 1, upper ring 2..6, lower ring 7..11, bottom 12
    let up = |k: usize| 2 + k % 5;
    let low = |k: usize| 7 + k % 5;
    let mut facets = Vec::new();
    for k in 0..5 {
        facets.push(vec![1, up(k), up(k + 1)]);
        facets.push(vec![up(k), up(k + 1), low(k)]);
        facets.push(vec![low(k), low(k + 1), up(k + 1)]);
        facets.push(vec![12, low(k), low(k + 1)]);
    }
    let mut images = vec![0; 12];
    images[0] = 12;
    images[11] = 1;
    for k in 0..5 {
        images[up(k) - 1] = low(k + 2);
        images[low(k) - 1] = up(k + 3);
    }
    let (complex, action) = build(12, &facets, 2, &images, false);
    CatalogEntry {
        name: "icosa",
        description: "boundary of the icosahedron, antipodal map",
        complex,
        action,
        documented: Documented {
            free: true,
            very_free: true,
            cohen_macaulay: true,
            buchsbaum: true,
            homology_manifold: true,
            orientable: true,
            h_vector: vec![1, 9, 9, 1],
            reduced_betti: vec![0, 0, 0, 1],
        },
        lsop_character: 1,
        hochster_grid: (3, 2),
    }
}

fn cycle(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i + 1, (i + 1) % n + 1]).collect()
}

fn c9() -> CatalogEntry {
    let images: Vec<usize> = (0..9).map(|i| (i + 3) % 9 + 1).collect();
    let (complex, action) = build(9, &cycle(9), 3, &images, false);
    CatalogEntry {
        name: "c9",
        description: "9-gon, rotation by three steps",
        complex,
        action,
        documented: Documented {
            free: true,
            very_free: true,
            cohen_macaulay: true,
            buchsbaum: true,
            homology_manifold: true,
            orientable: true,
            h_vector: vec![1, 7, 1],
            reduced_betti: vec![0, 0, 1],
        },
        lsop_character: 0,
        hochster_grid: (2, 2),
    }
}

fn torus7() -> CatalogEntry {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(vec![i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1]);
        facets.push(vec![i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1]);
    }
    let images: Vec<usize> = (0..7).map(|i| (i + 1) % 7 + 1).collect();
    let (complex, action) = build(7, &facets, 7, &images, false);
    CatalogEntry {
        name: "torus7",
        description: "7-vertex torus, cyclic shift",
        complex,
        action,
        documented: Documented {
            free: true,
            very_free: false,
            cohen_macaulay: false,
            buchsbaum: true,
            homology_manifold: true,
            orientable: true,
            h_vector: vec![1, 4, 10, -1],
            reduced_betti: vec![0, 0, 2, 1],
        },
        lsop_character: 0,
        hochster_grid: (3, 1),
    }
}

fn torus9() -> CatalogEntry {
    let v = |a: usize, b: usize| 3 * (a % 3) + b % 3 + 1;
    let mut facets = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            facets.push(vec![v(a, b), v(a + 1, b), v(a + 1, b + 1)]);
            facets.push(vec![v(a, b), v(a, b + 1), v(a + 1, b + 1)]);
        }
    }
    let mut images = vec![0; 9];
    for a in 0..3 {
        for b in 0..3 {
            images[v(a, b) - 1] = v(a + 1, b + 2);
        }
    }
    let (complex, action) = build(9, &facets, 3, &images, false);
    CatalogEntry {
        name: "torus9",
        description: "3x3 grid torus, diagonal shift (a,b) -> (a+1,b+2)",
        complex,
        action,
        documented: Documented {
            free: true,
            very_free: true,
            cohen_macaulay: false,
            buchsbaum: true,
            homology_manifold: true,
            orientable: true,
            h_vector: vec![1, 6, 12, -1],
            reduced_betti: vec![0, 0, 2, 1],
        },
        lsop_character: 0,
        hochster_grid: (3, 1),
    }
}

fn c3() -> CatalogEntry {
    let (complex, action) = build(3, &cycle(3), 3, &[2, 3, 1], false);
    CatalogEntry {
        name: "c3",
        description: "hollow triangle, rotation",
        complex,
        action,
        documented: Documented {
            free: true,
            very_free: false,
            cohen_macaulay: true,
            buchsbaum: true,
            homology_manifold: true,
            orientable: true,
            h_vector: vec![1, 1, 1],
            reduced_betti: vec![0, 0, 1],
        },
        lsop_character: 0,
        hochster_grid: (2, 2),
    }
}

fn simplex2() -> CatalogEntry {
    let (complex, action) = build(3, &[vec![1, 2, 3]], 2, &[1, 2, 3], true);
    CatalogEntry {
        name: "simplex2",
        description: "full 2-simplex, identity action (not free)",
        complex,
        action,
        documented: Documented {
            free: false,
            very_free: false,
            cohen_macaulay: true,
            buchsbaum: true,
            homology_manifold: false,
            orientable: false,
            h_vector: vec![1, 0, 0, 0],
            reduced_betti: vec![0, 0, 0, 0],
        },
        lsop_character: 0,
        hochster_grid: (3, 1),
    }
}

/// Every entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![oct3(), icosa(), c9(), torus7(), torus9(), c3(), simplex2()]
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate_action;
    use crate::complex::classify;

    #[test]
    fn documented_metadata_matches() {
        for e in catalog() {
            let doc = &e.documented;
            let report = validate_action(&e.complex, &e.action).unwrap();
            assert!(report.automorphism, "{}", e.name);
            assert_eq!(report.free, doc.free, "{}", e.name);
            assert_eq!(report.very_free, doc.very_free, "{}", e.name);
            let cls = classify(&e.complex);
            assert_eq!(cls.cohen_macaulay, doc.cohen_macaulay, "{}", e.name);
            assert_eq!(cls.buchsbaum, doc.buchsbaum, "{}", e.name);
            assert_eq!(cls.homology_manifold, doc.homology_manifold, "{}", e.name);
            assert_eq!(cls.orientable, doc.orientable, "{}", e.name);
            assert_eq!(e.complex.h_vector().0, doc.h_vector, "{}", e.name);
            assert_eq!(cls.reduced_betti, doc.reduced_betti, "{}", e.name);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(
            entry("torus7").unwrap().documented.h_vector,
            vec![1, 4, 10, -1]
        );
        assert!(entry("nope").is_none());
    }
}
