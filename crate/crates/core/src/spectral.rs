//! Steklov spectrum of a tree with leaf boundary.
//!
//! The Laplacian is `Δf(v) = Σ_{w~v} (f(v) − f(w))`; at a leaf it is the
//! outward normal derivative. Boundary data `g` (indexed like
//! [`Tree::leaves`]) has a unique harmonic extension, and the
//! Dirichlet-to-Neumann map `Λ g = ∂ₙ ĝ` is the Schur complement of the
//! Laplacian onto the leaves.

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, Cholesky, Matrix};
use crate::tree::Tree;

/// |λ₁| at or below this is reported as exactly zero.
pub const ZERO_SNAP: f64 = 1e-10;

/// Vertex split into boundary (leaves) and interior, with the factored
/// interior Laplacian block.
struct Blocks {
    leaves: Vec<usize>,
    interior: Vec<usize>,
    /// position of a vertex inside `interior`, `usize::MAX` for leaves
    interior_pos: Vec<usize>,
    factor: Option<Cholesky>,
}

impl Blocks {
    fn new(t: &Tree) -> Result<Self> {
        let leaves = t.leaves();
        let interior = t.interior();
        let mut interior_pos = vec![usize::MAX; t.order()];
        for (i, &v) in interior.iter().enumerate() {
            interior_pos[v] = i;
        }
        let factor = if interior.is_empty() {
            None
        } else {
            let mut lii = Matrix::zeros(interior.len());
            for (i, &v) in interior.iter().enumerate() {
                lii[(i, i)] = t.degree(v) as f64;
                for &w in t.neighbors(v) {
                    let j = interior_pos[w];
                    if j != usize::MAX {
                        lii[(i, j)] = -1.0;
                    }
                }
            }
            Some(Cholesky::new(&lii)?)
        };
        Ok(Blocks {
            leaves,
            interior,
            interior_pos,
            factor,
        })
    }

    /// Harmonic extension of leaf values `g` to all vertices.
    fn extend(&self, t: &Tree, g: &[f64]) -> Vec<f64> {
        let mut f = vec![0.0; t.order()];
        for (&leaf, &x) in self.leaves.iter().zip(g) {
            f[leaf] = x;
        }
        if let Some(factor) = &self.factor {
            // L_II f_I = −L_IB g
            let rhs: Vec<f64> = self
                .interior
                .iter()
                .map(|&v| {
                    t.neighbors(v)
                        .iter()
                        .filter(|&&w| self.interior_pos[w] == usize::MAX)
                        .map(|&w| f[w])
                        .sum()
                })
                .collect();
            for (&v, x) in self.interior.iter().zip(factor.solve(&rhs)) {
                f[v] = x;
            }
        }
        f
    }
}

/// Outward normal derivative `Δf` at each leaf, in leaf order.
fn normal_derivative(t: &Tree, leaves: &[usize], f: &[f64]) -> Vec<f64> {
    leaves
        .iter()
        .map(|&w| t.neighbors(w).iter().map(|&x| f[w] - f[x]).sum())
        .collect()
}

/// The unique function that matches `g` on the leaves and is harmonic at
/// every interior vertex.
pub fn harmonic_extension(t: &Tree, g: &[f64]) -> Result<Vec<f64>> {
    let blocks = Blocks::new(t)?;
    if g.len() != blocks.leaves.len() {
        return Err(Error::DimensionMismatch {
            expected: blocks.leaves.len(),
            got: g.len(),
        });
    }
    Ok(blocks.extend(t, g))
}

/// Graph Laplacian `Δf` at every vertex.
pub fn laplacian_apply(t: &Tree, f: &[f64]) -> Vec<f64> {
    (0..t.order())
        .map(|v| t.neighbors(v).iter().map(|&w| f[v] - f[w]).sum())
        .collect()
}

/// `Σ_{xy ∈ E} (f(x) − f(y))²`.
pub fn dirichlet_energy(t: &Tree, f: &[f64]) -> f64 {
    t.edges()
        .iter()
        .map(|&(x, y)| (f[x] - f[y]).powi(2))
        .sum()
}

/// Dirichlet-to-Neumann matrix on the leaves, `L_BB − L_BI L_II⁻¹ L_IB`.
///
/// Column `j` is the normal derivative of the harmonic extension of the
/// `j`-th unit boundary vector. The result is symmetrized.
pub fn dtn_matrix(t: &Tree) -> Result<Matrix> {
    let blocks = Blocks::new(t)?;
    let m = blocks.leaves.len();
    let mut dtn = Matrix::zeros(m);
    let mut e = vec![0.0; m];
    for j in 0..m {
        e[j] = 1.0;
        let f = blocks.extend(t, &e);
        for (i, x) in normal_derivative(t, &blocks.leaves, &f).into_iter().enumerate() {
            dtn[(i, j)] = x;
        }
        e[j] = 0.0;
    }
    for i in 0..m {
        for j in 0..i {
            let avg = 0.5 * (dtn[(i, j)] + dtn[(j, i)]);
            dtn[(i, j)] = avg;
            dtn[(j, i)] = avg;
        }
    }
    Ok(dtn)
}

/// Steklov eigenvalues `0 = λ₁ ≤ λ₂ ≤ … ≤ λ_m`, `m` the number of leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lambda2(&self) -> f64 {
        self.eigenvalues[1]
    }
}

pub fn steklov_spectrum(t: &Tree) -> Result<Spectrum> {
    let mut eigenvalues = symmetric_eigenvalues(&dtn_matrix(t)?)?;
    if eigenvalues[0].abs() <= ZERO_SNAP {
        eigenvalues[0] = 0.0;
    }
    Ok(Spectrum { eigenvalues })
}

/// Second-smallest Steklov eigenvalue via the DtN matrix.
pub fn lambda2_numeric(t: &Tree) -> Result<f64> {
    steklov_spectrum(t).map(|s| s.lambda2())
}
