//! Fine Hilbert tables: dimensions indexed by degree and character.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Rational;

/// `dims[i][c]` is the dimension of the degree-`i`, character-`c` piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FineHilbert {
    pub p: u32,
    pub dims: Vec<Vec<i64>>,
}

impl FineHilbert {
    pub fn zeros(p: u32, degrees: usize) -> Self {
        Self {
            p,
            dims: vec![vec![0; p as usize]; degrees],
        }
    }

    pub fn degrees(&self) -> usize {
        self.dims.len()
    }

    /// Zero outside the stored window; the character is read mod `p`.
    pub fn get(&self, i: i64, c: i64) -> i64 {
        if i < 0 || i as usize >= self.dims.len() {
            return 0;
        }
        self.dims[i as usize][c.rem_euclid(self.p as i64) as usize]
    }

    pub fn totals(&self) -> Vec<i64> {
        self.dims.iter().map(|row| row.iter().sum()).collect()
    }

    /// Series multiplied by `λ^a t^b`.
    pub fn shift(&self, a: usize, b: u32) -> Self {
        let p = self.p as usize;
        let mut out = Self::zeros(self.p, self.dims.len() + a);
        for (i, row) in self.dims.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                out.dims[i + a][(c + b as usize) % p] = *x;
            }
        }
        out
    }

    /// Coefficientwise `self ≥ other` over the union of both windows.
    pub fn dominates(&self, other: &Self) -> bool {
        let len = self.dims.len().max(other.dims.len()) as i64;
        (0..len).all(|i| (0..self.p as i64).all(|c| self.get(i, c) >= other.get(i, c)))
    }

    pub fn to_rational(&self) -> RationalTable {
        RationalTable {
            p: self.p,
            coeffs: self
                .dims
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        }
    }
}

impl fmt::Display for FineHilbert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.dims.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "  degree {i}: ({})", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A fine table with exact rational entries, as produced by closed formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTable {
    pub p: u32,
    pub coeffs: Vec<Vec<Rational>>,
}

impl RationalTable {
    /// The integer table, if every entry is integral.
    pub fn to_integers(&self) -> Option<FineHilbert> {
        let mut dims = Vec::with_capacity(self.coeffs.len());
        for row in &self.coeffs {
            let mut out = Vec::with_capacity(row.len());
            for x in row {
                if !x.is_integer() {
                    return None;
                }
                out.push(i64::try_from(x.to_integer()).ok()?);
            }
            dims.push(out);
        }
        Some(FineHilbert { p: self.p, dims })
    }

    /// Entries as "a/b" strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.coeffs
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}
