use std::cmp::Ordering;
use std::fmt;

/// A finite set of vertices in `0..64`, stored as a bitmask.
///
/// Faces order first by size, then lexicographically by their sorted vertex
/// lists, which is the order used for every basis in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a face from 0-based vertices.
    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0u64;
        for v in vs {
            assert!(v < 64, "vertex {v} does not fit in a face");
            bits |= 1 << v;
        }
        Face(bits)
    }

    pub fn singleton(v: usize) -> Self {
        Face::from_vertices([v])
    }

    /// The full simplex on `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn minus(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        Face(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << v))
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// 1-based vertex list, as used in files and reports.
    pub fn to_one_based(self) -> Vec<usize> {
        self.vertices().map(|v| v + 1).collect()
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Number of vertices of `self` smaller than `v`.
    pub fn position(self, v: usize) -> usize {
        (self.0 & ((1u64 << v) - 1)).count_ones() as usize
    }

    /// All subsets of `self` of the given size, in face order.
    pub fn subsets_of_size(self, k: usize) -> Vec<Face> {
        let vs = self.to_vec();
        let mut out = Vec::new();
        if k > vs.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face::from_vertices(idx.iter().map(|&i| vs[i])));
            let mut i = k;
            while i > 0 && idx[i - 1] == i - 1 + vs.len() - k {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for t in i..k {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }

    /// Every subset of `self`, including `∅` and `self`.
    pub fn all_subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = Some(0u64);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Face(cur))
        })
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_operations() {
        let a = Face::from_vertices([0, 2, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(2) && !a.contains(1));
        assert_eq!(a.to_one_based(), vec![1, 3, 6]);
        assert_eq!(a.position(5), 2);
        assert_eq!(a.without(2), Face::from_vertices([0, 5]));
        assert_eq!(a.to_string(), "{1,3,6}");
        assert_eq!(Face::EMPTY.to_string(), "{}");
    }

    #[test]
    fn ordering_is_size_then_lex() {
        let mut fs = vec![
            Face::from_vertices([1, 2]),
            Face::from_vertices([0, 3]),
            Face::from_vertices([4]),
            Face::EMPTY,
        ];
        fs.sort();
        assert_eq!(
            fs,
            vec![
                Face::EMPTY,
                Face::from_vertices([4]),
                Face::from_vertices([0, 3]),
                Face::from_vertices([1, 2]),
            ]
        );
    }

    #[test]
    fn subset_enumeration() {
        let a = Face::from_vertices([0, 1, 3, 4]);
        assert_eq!(a.subsets_of_size(2).len(), 6);
        assert_eq!(a.subsets_of_size(0), vec![Face::EMPTY]);
        assert_eq!(a.subsets_of_size(4), vec![a]);
        assert!(a.subsets_of_size(5).is_empty());
        assert_eq!(a.all_subsets().count(), 16);
        assert_eq!(Face::EMPTY.all_subsets().count(), 1);
    }
}
