//! Boundary fluxes and the inverse Dirichlet-to-Neumann form.
//!
//! For a mean-zero flux `z` on the leaves there is a potential `u_z`,
//! harmonic inside, whose normal derivative on the leaves is `z`. Its energy
//! `Q_T(z) = Σ_edges (u_z(x) − u_z(y))²` has two further expressions: the sum
//! of squared cut sums and `−½ zᵀ D z` with `D` the leaf distance matrix. The
//! largest value of `Q_T(z)/|z|²` is `1/λ₂`.

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, Cholesky, Matrix};
use crate::spectral::dirichlet_energy;
use crate::tree::Tree;

/// Relative tolerance on `Σ z` for a flux to count as mean-zero.
pub const MEAN_ZERO_RTOL: f64 = 1e-12;

/// Mean-zero real vector indexed like [`Tree::leaves`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFlux(Vec<f64>);

impl BoundaryFlux {
    /// Accepts `z` only if `|Σ z| <= 1e-12 · max|z|`.
    pub fn new(z: Vec<f64>) -> Result<Self> {
        let sum: f64 = z.iter().sum();
        let scale = z.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let tol = MEAN_ZERO_RTOL * scale;
        if sum.abs() > tol {
            return Err(Error::NotMeanZero { sum, tol });
        }
        Ok(BoundaryFlux(z))
    }

    /// Subtracts the mean from `v`.
    pub fn centered(mut v: Vec<f64>) -> Self {
        if !v.is_empty() {
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            v.iter_mut().for_each(|x| *x -= mean);
        }
        BoundaryFlux(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    fn check_dim(&self, t: &Tree) -> Result<Vec<usize>> {
        let leaves = t.leaves();
        if leaves.len() != self.0.len() {
            return Err(Error::DimensionMismatch {
                expected: leaves.len(),
                got: self.0.len(),
            });
        }
        Ok(leaves)
    }
}

/// Potential with leaf fluxes `z`, harmonic inside, normalized to sum zero.
///
/// Solves `(L + J/n) u = z̃` where `z̃` is `z` on the leaves and zero inside;
/// the rank-one term pins the constant without touching `L u`.
pub fn flux_potential(t: &Tree, z: &BoundaryFlux) -> Result<Vec<f64>> {
    let leaves = z.check_dim(t)?;
    let n = t.order();
    let mut a = Matrix::zeros(n);
    let shift = 1.0 / n as f64;
    for v in 0..n {
        for w in 0..n {
            a[(v, w)] = shift;
        }
        a[(v, v)] += t.degree(v) as f64;
        for &w in t.neighbors(v) {
            a[(v, w)] -= 1.0;
        }
    }
    let mut rhs = vec![0.0; n];
    for (&leaf, &x) in leaves.iter().zip(z.values()) {
        rhs[leaf] = x;
    }
    Ok(Cholesky::new(&a)?.solve(&rhs))
}

/// Cut sum of one edge oriented away from the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutSum {
    pub parent: usize,
    pub child: usize,
    /// Total flux over the leaves in the child's component.
    pub sum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutDecomposition {
    /// One entry per edge, in BFS order of the child.
    pub per_edge: Vec<CutSum>,
    /// `Σ s_e²`.
    pub total: f64,
}

/// Cut sums `s_e(z)` for every edge oriented away from `root`.
pub fn cut_sums(t: &Tree, z: &BoundaryFlux, root: usize) -> Result<CutDecomposition> {
    let leaves = z.check_dim(t)?;
    if root >= t.order() {
        return Err(Error::InvalidParams(format!("root {root} out of range")));
    }
    let (dist, parent) = t.bfs(root);
    let mut order: Vec<usize> = (0..t.order()).collect();
    order.sort_by_key(|&v| (dist[v], v));
    let mut below = vec![0.0; t.order()];
    for (&leaf, &x) in leaves.iter().zip(z.values()) {
        if leaf != root {
            below[leaf] = x;
        }
    }
    for &v in order.iter().rev() {
        if v != root {
            below[parent[v]] += below[v];
        }
    }
    let per_edge: Vec<CutSum> = order
        .iter()
        .filter(|&&v| v != root)
        .map(|&v| CutSum {
            parent: parent[v],
            child: v,
            sum: below[v],
        })
        .collect();
    let total = per_edge.iter().map(|c| c.sum * c.sum).sum();
    Ok(CutDecomposition { per_edge, total })
}

/// `Q_T(z)`: Dirichlet energy of the flux potential.
pub fn q_form(t: &Tree, z: &BoundaryFlux) -> Result<f64> {
    Ok(dirichlet_energy(t, &flux_potential(t, z)?))
}

/// `Q_T(z) / |z|²`; zero flux gives 0.
pub fn inverse_rayleigh(t: &Tree, z: &BoundaryFlux) -> Result<f64> {
    let q = q_form(t, z)?;
    let nz = z.norm_sq();
    Ok(if nz == 0.0 { 0.0 } else { q / nz })
}

/// Pairwise graph distances between leaves, in leaf order.
pub fn leaf_distance_matrix(t: &Tree) -> Vec<Vec<usize>> {
    let leaves = t.leaves();
    leaves
        .iter()
        .map(|&a| {
            let dist = t.bfs_distances(a);
            leaves.iter().map(|&b| dist[b]).collect()
        })
        .collect()
}

/// `−½ zᵀ D z` with `D` the leaf distance matrix.
pub fn distance_form(t: &Tree, z: &BoundaryFlux) -> Result<f64> {
    z.check_dim(t)?;
    let d = leaf_distance_matrix(t);
    let zv = z.values();
    let mut s = 0.0;
    for (i, row) in d.iter().enumerate() {
        for (j, &dij) in row.iter().enumerate() {
            s += zv[i] * dij as f64 * zv[j];
        }
    }
    Ok(-0.5 * s)
}

/// λ₂ as the reciprocal of the top eigenvalue of `P(−½D)P`, `P` the
/// centering projection onto mean-zero leaf vectors.
pub fn lambda2_via_distance(t: &Tree) -> Result<f64> {
    let d = leaf_distance_matrix(t);
    let m = d.len();
    let mut k = Matrix::zeros(m);
    for i in 0..m {
        for j in 0..m {
            k[(i, j)] = -0.5 * d[i][j] as f64;
        }
    }
    // P K P with P = I − J/m: subtract row and column means, add back the grand mean.
    let row_mean: Vec<f64> = (0..m).map(|i| k.row(i).iter().sum::<f64>() / m as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / m as f64;
    let mut centered = Matrix::zeros(m);
    for i in 0..m {
        for j in 0..m {
            centered[(i, j)] = k[(i, j)] - row_mean[i] - row_mean[j] + grand;
        }
    }
    let top = symmetric_eigenvalues(&centered)?
        .last()
        .copied()
        .expect("a tree has at least two leaves");
    if top <= 0.0 {
        return Err(Error::Inconsistent(format!(
            "inverse form has non-positive top eigenvalue {top:e}"
        )));
    }
    Ok(1.0 / top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{make_double_spider, make_spider, DoubleSpiderProfile, SpiderProfile};

    fn flux(z: &[f64]) -> BoundaryFlux {
        BoundaryFlux::new(z.to_vec()).unwrap()
    }

    fn spider(ls: &[usize]) -> Tree {
        make_spider(&SpiderProfile::new(ls.to_vec()).unwrap())
    }

    #[test]
    fn rejects_non_mean_zero() {
        assert!(matches!(
            BoundaryFlux::new(vec![1.0, 0.5]),
            Err(Error::NotMeanZero { .. })
        ));
        assert!(BoundaryFlux::new(vec![0.0, 0.0]).is_ok());
        let t = Tree::path(3).unwrap();
        assert!(q_form(&t, &flux(&[1.0, -0.5, -0.5])).is_err());
    }

    #[test]
    fn potential_on_path() {
        let t = Tree::path(3).unwrap();
        let u = flux_potential(&t, &flux(&[1.0, -1.0])).unwrap();
        for (a, b) in u.iter().zip([1.5, 0.5, -0.5, -1.5]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn potential_on_star_and_zero_flux() {
        let t = Tree::star(3).unwrap();
        let u = flux_potential(&t, &flux(&[1.0, -1.0, 0.0])).unwrap();
        // Leaves 1,2,3 sit at (1,−1,0) above the center; the mean-zero shift
        // puts the center at 0.
        assert!(u[0].abs() < 1e-14);
        for (a, b) in u[1..].iter().zip([1.0, -1.0, 0.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        let t = spider(&[3, 2, 2, 1]);
        let u = flux_potential(&t, &flux(&[0.0; 4])).unwrap();
        assert!(u.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn cut_sum_examples() {
        let t = Tree::star(3).unwrap();
        let c = cut_sums(&t, &flux(&[1.0, -1.0, 0.0]), 0).unwrap();
        let sums: Vec<f64> = c.per_edge.iter().map(|e| e.sum).collect();
        assert_eq!(sums, vec![1.0, -1.0, 0.0]);
        assert_eq!(c.total, 2.0);

        let t = Tree::path(3).unwrap();
        let c = cut_sums(&t, &flux(&[1.0, -1.0]), 0).unwrap();
        assert!(c.per_edge.iter().all(|e| e.sum.abs() == 1.0));
        assert_eq!(c.total, 3.0);
    }

    #[test]
    fn double_spider_energy_formula() {
        // DS(2,1;2): Q = s² + 2x₁² + x₂² + 2y₁² with s = x₁ + x₂.
        let t = make_double_spider(&DoubleSpiderProfile::new(vec![2, 1], vec![2]).unwrap());
        let (x1, x2) = (0.7, -0.2);
        let y1 = -(x1 + x2);
        let z = flux(&[x1, x2, y1]);
        let s = x1 + x2;
        let want = s * s + 2.0 * x1 * x1 + x2 * x2 + 2.0 * y1 * y1;
        assert!((cut_sums(&t, &z, 0).unwrap().total - want).abs() < 1e-14);
        assert!((q_form(&t, &z).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn q_form_examples() {
        let t = Tree::path(3).unwrap();
        assert!((q_form(&t, &flux(&[1.0, -1.0])).unwrap() - 3.0).abs() < 1e-13);
        let t = Tree::star(3).unwrap();
        assert!((q_form(&t, &flux(&[1.0, -1.0, 0.0])).unwrap() - 2.0).abs() < 1e-13);
        // S(3,2,1), z = (2,−1,−1): cut sums 2 on three edges, −1 on two, −1 on one.
        let t = spider(&[3, 2, 1]);
        let z = flux(&[2.0, -1.0, -1.0]);
        let cuts = 3.0 * 4.0 + 2.0 * 1.0 + 1.0;
        assert!((q_form(&t, &z).unwrap() - cuts).abs() < 1e-12);
        assert!((cut_sums(&t, &z, 0).unwrap().total - cuts).abs() < 1e-14);
        assert!((distance_form(&t, &z).unwrap() - cuts).abs() < 1e-14);
    }

    #[test]
    fn distance_matrices() {
        assert_eq!(
            leaf_distance_matrix(&Tree::path(3).unwrap()),
            vec![vec![0, 3], vec![3, 0]]
        );
        assert_eq!(
            leaf_distance_matrix(&Tree::star(3).unwrap()),
            vec![vec![0, 2, 2], vec![2, 0, 2], vec![2, 2, 0]]
        );
        assert_eq!(
            leaf_distance_matrix(&spider(&[3, 2, 1])),
            vec![vec![0, 5, 4], vec![5, 0, 3], vec![4, 3, 0]]
        );
    }

    #[test]
    fn lambda2_distance_examples() {
        let l = lambda2_via_distance(&Tree::path(3).unwrap()).unwrap();
        assert!((l - 2.0 / 3.0).abs() < 1e-14);
        let l = lambda2_via_distance(&spider(&[2, 1, 1])).unwrap();
        assert!((l - 0.6).abs() < 1e-14);
        let l = lambda2_via_distance(&spider(&[3, 2, 1])).unwrap();
        assert!((l - (6.0 - 3f64.sqrt()) / 11.0).abs() < 1e-14);
        let l = lambda2_via_distance(&Tree::path(1).unwrap()).unwrap();
        assert!((l - 2.0).abs() < 1e-14);
    }
}
