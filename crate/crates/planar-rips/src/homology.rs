//! Simplicial homology of flag complexes over GF(2) and over the rationals,
//! via dense boundary-matrix elimination. Both fields are exact; the
//! rational path exists to detect torsion (where the two disagree).

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::complex::{FlagComplex, Simplex};
use crate::geom::Rational;

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Field {
    /// The two-element field (the default: no orientation bookkeeping).
    #[default]
    Gf2,
    /// The rationals, with exact arithmetic.
    Q,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Gf2 => write!(f, "gf2"),
            Field::Q => write!(f, "q"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gf2" => Ok(Field::Gf2),
            "q" => Ok(Field::Q),
            other => Err(format!("unknown field '{other}' (expected gf2 or q)")),
        }
    }
}

/// Betti numbers indexed by dimension, with the field they were computed
/// over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub field: Field,
    pub b: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("complex has {facets} facets, exceeding the minimal-cycle capacity of {bound}")]
    CapacityExceeded { facets: usize, bound: usize },
}

/// Facet-count bound for the minimal-cycle search.
pub const MINIMAL_CYCLE_FACET_BOUND: usize = 24;

/// All d-dimensional faces (cliques on d+1 vertices) in lexicographic order.
pub fn faces(k: &FlagComplex, d: usize) -> Vec<Simplex> {
    k.faces_up_to_card(d + 1)
        .into_iter()
        .filter(|s| s.vertices().len() == d + 1)
        .collect()
}

/// Dimension of the complex (largest facet dimension), or `None` when there
/// are no vertices.
fn complex_dim(k: &FlagComplex) -> Option<usize> {
    if k.n() == 0 {
        return None;
    }
    k.facets().iter().map(|f| f.dim()).max()
}

/// Betti numbers b_d = dim C_d − rank ∂_d − rank ∂_{d+1} for d up to the
/// complex dimension. The empty complex has an empty vector.
pub fn betti_numbers(k: &FlagComplex, field: Field) -> BettiVector {
    let Some(dim) = complex_dim(k) else {
        return BettiVector { field, b: vec![] };
    };
    let per_dim: Vec<Vec<Simplex>> = (0..=dim).map(|d| faces(k, d)).collect();
    // rank[d] = rank of ∂_d; ∂_0 is the zero map.
    let mut rank = vec![0usize; dim + 2];
    for d in 1..=dim {
        rank[d] = match field {
            Field::Gf2 => gf2_rank(gf2_boundary(&per_dim[d - 1], &per_dim[d])),
            Field::Q => q_rank(q_boundary(&per_dim[d - 1], &per_dim[d])),
        };
    }
    let b: Vec<usize> = (0..=dim)
        .map(|d| per_dim[d].len() - rank[d] - rank[d + 1])
        .collect();
    debug_assert_eq!(
        b.iter()
            .enumerate()
            .map(|(d, &bd)| if d % 2 == 0 { bd as i64 } else { -(bd as i64) })
            .sum::<i64>(),
        euler_characteristic(k),
        "Betti alternating sum disagrees with the Euler characteristic"
    );
    BettiVector { field, b }
}

/// Alternating sum of face counts.
pub fn euler_characteristic(k: &FlagComplex) -> i64 {
    let Some(dim) = complex_dim(k) else { return 0 };
    (0..=dim)
        .map(|d| {
            let count = faces(k, d).len() as i64;
            if d % 2 == 0 {
                count
            } else {
                -count
            }
        })
        .sum()
}

/// Whether the complex is a minimal n-cycle: pure of dimension n, with
/// b_n >= 1 over GF(2), and no proper facet-generated subcomplex carrying
/// n-dimensional homology.
///
/// A facet subset S carries a cycle iff some nonzero vector of ker ∂_n is
/// supported inside S, so minimality is equivalent to every nonzero kernel
/// vector having full support. Over GF(2) the all-ones vector is the only
/// full-support vector, hence the kernel must be exactly its span.
pub fn is_minimal_n_cycle(k: &FlagComplex, n: usize) -> Result<bool, HomologyError> {
    if k.n() == 0 {
        return Ok(false);
    }
    if k.pure_dimension().ok().flatten() != Some(n) {
        return Ok(false);
    }
    let facets = k.facets();
    if facets.len() > MINIMAL_CYCLE_FACET_BOUND {
        return Err(HomologyError::CapacityExceeded {
            facets: facets.len(),
            bound: MINIMAL_CYCLE_FACET_BOUND,
        });
    }
    if n == 0 {
        // ∂_0 = 0: the kernel is spanned by the vertices themselves.
        return Ok(facets.len() == 1);
    }
    let ridges = faces(k, n - 1);
    let ridge_index: HashMap<&Simplex, usize> =
        ridges.iter().enumerate().map(|(i, r)| (r, i)).collect();
    // Rows of ∂_n as masks over facet columns (at most 24 of them).
    let mut rows = vec![0u32; ridges.len()];
    for (col, f) in facets.iter().enumerate() {
        for r in f.boundary_faces() {
            rows[ridge_index[&r]] |= 1 << col;
        }
    }
    let kernel = gf2_kernel_masked(&mut rows, facets.len());
    let full: u32 = if facets.len() == 32 {
        u32::MAX
    } else {
        (1u32 << facets.len()) - 1
    };
    Ok(kernel.len() == 1 && kernel[0] == full)
}

/// GF(2) boundary matrix as bitset rows (one row per (d−1)-face, one column
/// bit per d-face).
fn gf2_boundary(rows_faces: &[Simplex], cols_faces: &[Simplex]) -> Vec<Vec<u64>> {
    let words = cols_faces.len().div_ceil(64);
    let index: HashMap<&Simplex, usize> = rows_faces
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut rows = vec![vec![0u64; words]; rows_faces.len()];
    for (col, f) in cols_faces.iter().enumerate() {
        for r in f.boundary_faces() {
            rows[index[&r]][col / 64] ^= 1 << (col % 64);
        }
    }
    rows
}

fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for w in 0..words {
        for bit in 0..64 {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[w] >> bit & 1 == 1 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                return rank;
            }
        }
    }
    rank
}

/// Kernel basis of a GF(2) matrix with at most 32 columns, rows given as
/// column masks. Returns one mask per basis vector.
fn gf2_kernel_masked(rows: &mut [u32], cols: usize) -> Vec<u32> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else {
            continue;
        };
        rows.swap(r, i);
        let pivot = rows[r];
        for (j, row) in rows.iter_mut().enumerate() {
            if j != r && *row >> c & 1 == 1 {
                *row ^= pivot;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.iter().any(|&(_, c)| c == free) {
            continue;
        }
        let mut z = 1u32 << free;
        for &(ri, c) in &pivots {
            if rows[ri] >> free & 1 == 1 {
                z |= 1 << c;
            }
        }
        basis.push(z);
    }
    basis
}

/// Rational boundary matrix with entries ±1 (sign alternates with the
/// position of the omitted vertex).
fn q_boundary(rows_faces: &[Simplex], cols_faces: &[Simplex]) -> Vec<Vec<Rational>> {
    let index: HashMap<&Simplex, usize> = rows_faces
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut m = vec![vec![Rational::zero(); cols_faces.len()]; rows_faces.len()];
    for (col, f) in cols_faces.iter().enumerate() {
        for (omit, r) in f.boundary_faces().into_iter().enumerate() {
            let sign = if omit % 2 == 0 { 1 } else { -1 };
            m[index[&r]][col] = Rational::from_integer(sign.into());
        }
    }
    m
}

fn q_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].clone();
        for j in c..cols {
            m[rank][j] = &m[rank][j] / &inv;
        }
        for i in 0..rows {
            if i != rank && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &m[rank][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// An 11-vertex flag triangulation of the projective plane (vertices
/// A..K as 0..10). Used as a homology fixture and as an obstruction-search
/// host.
#[cfg(test)]
pub(crate) fn rp2_11() -> crate::complex::Graph {
    crate::complex::Graph::from_edges(
        11,
        &[
            (0, 1),
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 2),
            (1, 5),
            (1, 6),
            (1, 7),
            (1, 10),
            (2, 3),
            (2, 4),
            (2, 7),
            (2, 10),
            (3, 4),
            (3, 6),
            (3, 9),
            (3, 10),
            (4, 5),
            (4, 7),
            (4, 8),
            (5, 8),
            (5, 9),
            (5, 10),
            (6, 7),
            (6, 8),
            (6, 9),
            (7, 8),
            (8, 9),
            (9, 10),
        ],
    )
    .unwrap()
}
