//! Bakry-Émery curvature at a vertex and the one-sphere Laplacian criterion.
//!
//! `K_n(x) = min { Γ₂f(x) − (Δf(x))²/n : Γf(x) = 1 }`. The two-sphere
//! coordinates of `Γ₂(x)` are decoupled and positive on the diagonal, so
//! they are eliminated exactly by a Schur complement. What remains is a
//! generalized eigenproblem `Q v = K Γ(x) v` on `B₁(x)` modulo constants.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::operators::{local_gamma2_matrix, local_gamma_matrix, local_spheres, LocalForm};

/// Decision margin for `CD(K, n)`.
pub const CD_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureCertificate {
    pub vertex: Vertex,
    /// `K_n(x)` for the dimension it was computed at.
    pub value: f64,
    /// Supported on `B₂(x)`, with `Γf(x) = 1` and attaining `value`.
    pub minimizer: Vec<f64>,
}

/// The reduced problem at a vertex, before the dimension term.
#[derive(Debug, Clone)]
pub struct ReducedForms {
    pub gamma: LocalForm,
    pub gamma2: LocalForm,
    /// `Q(x)` on `B₁(x)` after eliminating `S₂(x)`.
    pub schur: DMatrix<f64>,
}

/// Orthonormal basis of the complement of the constants in `R^r`.
pub fn helmert_basis(r: usize) -> DMatrix<f64> {
    let mut u = DMatrix::zeros(r, r.saturating_sub(1));
    for k in 1..r {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            u[(i, k - 1)] = 1.0 / norm;
        }
        u[(k, k - 1)] = -(k as f64) / norm;
    }
    u
}

/// Assembles `Γ(x)`, `Γ₂(x)` and the Schur complement `Q(x) = A − B C⁻¹ Bᵀ`.
pub fn reduced_forms(g: &WeightedGraph, x: Vertex) -> Result<ReducedForms> {
    g.check_vertex(x)?;
    if g.neighbors(x).is_empty() {
        return Err(Error::IsolatedVertex(g.id(x).to_owned()));
    }
    let gamma = local_gamma_matrix(g, x)?;
    let gamma2 = local_gamma2_matrix(g, x)?;
    let r = gamma.support.len();
    let s = gamma2.support.len() - r;
    let a = gamma2.matrix.view((0, 0), (r, r));
    let b = gamma2.matrix.view((0, r), (r, s));
    let mut schur = a.clone_owned();
    for j in 0..s {
        let c = gamma2.matrix[(r + j, r + j)];
        let col = b.column(j);
        schur -= (col * col.transpose()) / c;
    }
    Ok(ReducedForms {
        gamma,
        gamma2,
        schur,
    })
}

/// `Q(x)` obtained instead by substituting the optimal value of each
/// `f(z)`, `z ∈ S₂(x)`: `(f(x) + f(z))/2` equals the mean of `f` over the
/// mid-vertices weighted by `w(x,y)w(y,z)/m(y)`.
pub fn schur_by_mean_substitution(g: &WeightedGraph, x: Vertex) -> Result<DMatrix<f64>> {
    let forms = reduced_forms(g, x)?;
    let r = forms.gamma.support.len();
    let total = forms.gamma2.support.len();
    // f_full = E f_ball, with E the substitution map.
    let mut e = DMatrix::zeros(total, r);
    for i in 0..r {
        e[(i, i)] = 1.0;
    }
    for (j, &z) in forms.gamma2.support[r..].iter().enumerate() {
        let mut weights = Vec::new();
        for &(y, wyz) in g.neighbors(z) {
            let wxy = g.weight(x, y);
            if wxy > 0.0 {
                let pos = forms.gamma.position(y).expect("mid-vertex lies in S₁");
                weights.push((pos, wxy * wyz / g.measure(y)));
            }
        }
        let sum: f64 = weights.iter().map(|&(_, c)| c).sum();
        e[(r + j, 0)] = -1.0;
        for (pos, c) in weights {
            e[(r + j, pos)] += 2.0 * c / sum;
        }
    }
    Ok(e.transpose() * &forms.gamma2.matrix * e)
}

fn laplacian_row(g: &WeightedGraph, x: Vertex, support: &[Vertex]) -> DVector<f64> {
    DVector::from_iterator(
        support.len(),
        support.iter().map(|&v| {
            if v == x {
                -g.degree_unchecked(x)
            } else {
                g.weight(x, v) / g.measure(x)
            }
        }),
    )
}

fn solve(g: &WeightedGraph, x: Vertex, n: f64) -> Result<CurvatureCertificate> {
    let forms = reduced_forms(g, x)?;
    let r = forms.gamma.support.len();
    let mut q = forms.schur.clone();
    if n.is_finite() {
        let l = laplacian_row(g, x, &forms.gamma.support);
        q -= (&l * l.transpose()) / n;
    }
    let u = helmert_basis(r);
    let gamma_p = u.transpose() * &forms.gamma.matrix * &u;
    let q_p = u.transpose() * &q * &u;
    let chol = gamma_p.clone().cholesky().ok_or_else(|| {
        Error::SolverFailure(format!(
            "Γ({}) is not positive definite off the constants",
            g.id(x)
        ))
    })?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::SolverFailure("singular Cholesky factor".into()))?;
    let mut m = &l_inv * q_p * l_inv.transpose();
    m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::SolverFailure("symmetric eigensolver did not converge".into()))?;
    let (imin, value) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty spectrum for a vertex with neighbors");
    let v = l_inv.transpose() * eig.eigenvectors.column(imin);
    let f_ball = &u * v;

    let mut minimizer = vec![0.0; g.len()];
    for (i, &vtx) in forms.gamma.support.iter().enumerate() {
        minimizer[vtx] = f_ball[i];
    }
    for (j, &z) in forms.gamma2.support[r..].iter().enumerate() {
        let c = forms.gamma2.matrix[(r + j, r + j)];
        let dot: f64 = (0..r)
            .map(|i| forms.gamma2.matrix[(i, r + j)] * f_ball[i])
            .sum();
        minimizer[z] = -dot / c;
    }
    Ok(CurvatureCertificate {
        vertex: x,
        value,
        minimizer,
    })
}

/// `K_∞(x)` with a minimizing function.
pub fn curvature_infty(g: &WeightedGraph, x: Vertex) -> Result<CurvatureCertificate> {
    solve(g, x, f64::INFINITY)
}

/// `K_n(x)`; `n = f64::INFINITY` gives `K_∞(x)`.
pub fn curvature_dim(g: &WeightedGraph, x: Vertex, n: f64) -> Result<CurvatureCertificate> {
    if !(n > 0.0) {
        return Err(Error::NonPositiveDimension(n));
    }
    solve(g, x, n)
}

/// Curvature of one vertex in a global sweep.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct VertexCurvature {
    pub vertex: Vertex,
    /// `+∞` for an isolated vertex.
    pub value: f64,
    pub isolated: bool,
}

/// `K_n(x)` for every vertex, in vertex order.
pub fn curvature_all(g: &WeightedGraph, n: f64) -> Result<Vec<VertexCurvature>> {
    if !(n > 0.0) {
        return Err(Error::NonPositiveDimension(n));
    }
    (0..g.len())
        .into_par_iter()
        .map(|x| match solve(g, x, n) {
            Ok(cert) => Ok(VertexCurvature {
                vertex: x,
                value: cert.value,
                isolated: false,
            }),
            Err(Error::IsolatedVertex(_)) => Ok(VertexCurvature {
                vertex: x,
                value: f64::INFINITY,
                isolated: true,
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Minimum of `K_n` over non-isolated vertices, with its vertex.
pub fn min_curvature(table: &[VertexCurvature]) -> Option<(Vertex, f64)> {
    table
        .iter()
        .filter(|c| !c.isolated)
        .map(|c| (c.vertex, c.value))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CdReport {
    pub k: f64,
    pub n: f64,
    pub holds: bool,
    pub per_vertex: Vec<VertexCurvature>,
    /// First vertex with `K_n(x) < K − τ`.
    pub first_failure: Option<Vertex>,
}

/// `CD(K, n)` with margin [`CD_TOLERANCE`].
pub fn satisfies_cd(g: &WeightedGraph, k: f64, n: f64) -> Result<CdReport> {
    g.require_connected()?;
    let per_vertex = curvature_all(g, n)?;
    Ok(cd_from_table(per_vertex, k, n))
}

pub(crate) fn cd_from_table(per_vertex: Vec<VertexCurvature>, k: f64, n: f64) -> CdReport {
    let first_failure = per_vertex
        .iter()
        .find(|c| !c.isolated && c.value < k - CD_TOLERANCE)
        .map(|c| c.vertex);
    CdReport {
        k,
        n,
        holds: first_failure.is_none(),
        per_vertex,
        first_failure,
    }
}

/// Weighted Laplacian on `S₁(x)` with
/// `w''(y_i, y_j) = Σ_{z ∈ S₂(x)} w(y_i, z) w(z, y_j) / d₋(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneSphereLaplacian {
    pub center: Vertex,
    pub vertices: Vec<Vertex>,
    /// Symmetric, zero diagonal.
    pub weights: DMatrix<f64>,
    pub lambda1: f64,
}

impl OneSphereLaplacian {
    /// The matrix `X` of the operator `Δ` on `S₁(x)` (negative semidefinite).
    pub fn operator_matrix(&self) -> DMatrix<f64> {
        let mut x = self.weights.clone();
        for i in 0..x.nrows() {
            let row: f64 = self.weights.row(i).sum();
            x[(i, i)] = -row;
        }
        x
    }
}

fn second_smallest(sym: DMatrix<f64>) -> f64 {
    let mut ev: Vec<f64> = SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev.get(1).copied().unwrap_or(0.0)
}

pub fn one_sphere_laplacian(g: &WeightedGraph, x: Vertex) -> Result<OneSphereLaplacian> {
    g.check_vertex(x)?;
    if !g.is_unweighted() {
        return Err(Error::NotUnweighted);
    }
    let (s1, s2) = local_spheres(g, x);
    for (i, &a) in s1.iter().enumerate() {
        if s1[i + 1..].iter().any(|&b| g.adjacent(a, b)) {
            return Err(Error::TriangleAtCenter(g.id(x).to_owned()));
        }
    }
    let r = s1.len();
    let mut weights = DMatrix::zeros(r, r);
    for &z in &s2 {
        let back: Vec<usize> = g
            .neighbors(z)
            .iter()
            .filter_map(|&(y, _)| s1.binary_search(&y).ok())
            .collect();
        let d_minus = back.len() as f64;
        for (p, &i) in back.iter().enumerate() {
            for &j in &back[p + 1..] {
                weights[(i, j)] += 1.0 / d_minus;
                weights[(j, i)] += 1.0 / d_minus;
            }
        }
    }
    let mut out = OneSphereLaplacian {
        center: x,
        vertices: s1,
        weights,
        lambda1: 0.0,
    };
    out.lambda1 = second_smallest(-out.operator_matrix());
    Ok(out)
}

/// `(λ₁(−X), −Tr(X)/(r−1))` for a Laplacian-structured matrix `X`.
pub fn spectral_gap_bound(x: &DMatrix<f64>) -> (f64, f64) {
    let r = x.nrows();
    let lambda1 = second_smallest(-x.clone());
    (lambda1, -x.trace() / (r as f64 - 1.0))
}

/// True when every off-diagonal entry of `x` is `−Tr(X)/(r(r−1))` within `tol`.
pub fn off_diagonal_uniform(x: &DMatrix<f64>, tol: f64) -> bool {
    let r = x.nrows();
    let target = -x.trace() / (r * (r - 1)) as f64;
    (0..r).all(|i| (0..r).all(|j| i == j || (x[(i, j)] - target).abs() <= tol))
}

fn regular_triangle_free(g: &WeightedGraph) -> Result<usize> {
    if !g.is_unweighted() {
        return Err(Error::PreconditionViolated(
            "graph is not unweighted".into(),
        ));
    }
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::PreconditionViolated("graph is not regular".into()))?;
    if d < 2 {
        return Err(Error::PreconditionViolated(format!("degree {d} < 2")));
    }
    for x in 0..g.len() {
        let nb = g.neighbors(x);
        for (i, &(a, _)) in nb.iter().enumerate() {
            if nb[i + 1..].iter().any(|&(b, _)| g.adjacent(a, b)) {
                return Err(Error::PreconditionViolated(format!(
                    "triangle through {:?}",
                    g.id(x)
                )));
            }
        }
    }
    Ok(d)
}

/// `λ₁(Δ_{S₁''(x)}) ≥ D/2` on an unweighted `D`-regular triangle-free graph.
pub fn cd2_via_one_sphere(g: &WeightedGraph, x: Vertex) -> Result<bool> {
    g.check_vertex(x)?;
    let d = regular_triangle_free(g)?;
    Ok(one_sphere_laplacian(g, x)?.lambda1 >= d as f64 / 2.0 - 1e-9)
}

/// `(#S₂(x), (D−1)(D − λ₁))`.
pub fn sphere_size_bound(g: &WeightedGraph, x: Vertex) -> Result<(usize, f64)> {
    g.check_vertex(x)?;
    let d = regular_triangle_free(g)? as f64;
    let osl = one_sphere_laplacian(g, x)?;
    let (_, s2) = local_spheres(g, x);
    Ok((s2.len(), (d - 1.0) * (d - osl.lambda1)))
}
