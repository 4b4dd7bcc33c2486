//! Subspaces of F_p^k in canonical reduced row echelon form.

use serde::{Deserialize, Serialize};

/// An F_p-subspace stored as its reduced row echelon basis.
///
/// Rows are sorted by pivot column, every pivot is 1 and pivot columns are
/// zero in all other rows, so two subspaces are equal iff their `rows` are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    p: u32,
    ambient_dim: usize,
    rows: Vec<Vec<u32>>,
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is small; Fermat
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// In-place reduced row echelon form; returns pivot columns. Zero rows are dropped.
pub fn rref(p: u32, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(sel) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = inv_mod_p(rows[rank][col], p) as u64;
        if inv != 1 {
            for x in rows[rank].iter_mut() {
                *x = (*x as u64 * inv % pp) as u32;
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let c = row[col] as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = ((*x as u64 + pp * pp - c * y as u64) % pp) as u32;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

impl Subspace {
    /// Span of the given vectors (each of length `ambient_dim`).
    pub fn span(p: u32, ambient_dim: usize, vectors: Vec<Vec<u32>>) -> Subspace {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        let mut rows = vectors;
        rref(p, &mut rows);
        Subspace { p, ambient_dim, rows }
    }

    pub fn zero(p: u32, ambient_dim: usize) -> Subspace {
        Subspace { p, ambient_dim, rows: Vec::new() }
    }

    pub fn full(p: u32, ambient_dim: usize) -> Subspace {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut r = vec![0; ambient_dim];
                r[i] = 1;
                r
            })
            .collect();
        Subspace { p, ambient_dim, rows }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let pp = self.p as u64;
        let mut w: Vec<u32> = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            let c = w[pivot] as u64;
            if c == 0 {
                continue;
            }
            for (x, &y) in w.iter_mut().zip(row) {
                *x = ((*x as u64 + pp * pp - c * y as u64) % pp) as u32;
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// All vectors `x` with `A x = 0`, where `A` has the given rows.
    pub fn kernel(p: u32, ambient_dim: usize, constraints: Vec<Vec<u32>>) -> Subspace {
        let mut a = constraints;
        let pivots = rref(p, &mut a);
        let pp = p as u64;
        let mut basis = Vec::new();
        for free in (0..ambient_dim).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; ambient_dim];
            v[free] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = ((pp - row[free] as u64 % pp) % pp) as u32;
            }
            basis.push(v);
        }
        Subspace::span(p, ambient_dim, basis)
    }

    /// Every element of the subspace, in lexicographic coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let total = (self.p as u64).pow(self.dim() as u32);
        let pp = self.p as u64;
        (0..total).map(move |mut idx| {
            let mut v = vec![0u64; self.ambient_dim];
            for row in &self.rows {
                let c = idx % pp;
                idx /= pp;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = (*x + c * y as u64) % pp;
                    }
                }
            }
            v.into_iter().map(|x| x as u32).collect()
        })
    }
}
