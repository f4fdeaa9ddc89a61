//! Curvature of a hypersurface point from its shape operator via the Gauss
//! equation, the scalar curvature, the minimum sectional curvature over
//! planes containing xi, and the resulting invariant report.
//!
//! Scalar-curvature convention: `tau` is the sum of sectional curvatures
//! over unordered frame pairs, `tau = sum_{i<j} K(e_i, e_j)` (no factor 2).
//! This normalization is pinned by a calibration test: with it, the
//! geodesic sphere of radius pi/4 in CP^2(4) has tau = 7 and attains the
//! bound exactly (delta = rhs = 6).

use serde::Serialize;

use crate::contact_frame::{ShapeOperator, XI_INDEX};
use crate::error::Error;
use crate::numerics::{sym_eigen, SymMatrix};

/// A pointwise curvature configuration: a shape operator together with the
/// holomorphic curvature parameter `c` (the ambient space form has constant
/// holomorphic sectional curvature `4c`; the suites fix `c` to -1 or +1).
#[derive(Debug, Clone)]
pub struct CurvaturePoint {
    shape: ShapeOperator,
    c: f64,
}

impl CurvaturePoint {
    pub fn new(shape: ShapeOperator, c: f64) -> Result<Self, Error> {
        if !c.is_finite() || c == 0.0 {
            return Err(Error::BadCurvatureParameter(c));
        }
        Ok(Self { shape, c })
    }

    pub fn shape(&self) -> &ShapeOperator {
        &self.shape
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    fn dim(&self) -> usize {
        self.shape.frame().m()
    }

    /// Gauss-equation curvature tensor:
    /// `R(X,Y)Z = c[g(Y,Z)X - g(X,Z)Y + g(phiY,Z)phiX - g(phiX,Z)phiY
    ///            - 2 g(phiX,Y) phiZ] + g(AY,Z)AX - g(AX,Z)AY`.
    pub fn riemann(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<Vec<f64>, Error> {
        let m = self.dim();
        for v in [x, y, z] {
            if v.len() != m {
                return Err(Error::DimensionMismatch { got: v.len(), expected: m });
            }
        }
        let fr = self.shape.frame();
        let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(p, q)| p * q).sum() };
        let px = fr.apply_phi(x);
        let py = fr.apply_phi(y);
        let pz = fr.apply_phi(z);
        let ax = self.shape.apply(x);
        let ay = self.shape.apply(y);

        let g_yz = dot(y, z);
        let g_xz = dot(x, z);
        let g_pyz = dot(&py, z);
        let g_pxz = dot(&px, z);
        let g_pxy = dot(&px, y);
        let g_ayz = dot(&ay, z);
        let g_axz = dot(&ax, z);

        Ok((0..m)
            .map(|i| {
                self.c
                    * (g_yz * x[i] - g_xz * y[i] + g_pyz * px[i]
                        - g_pxz * py[i]
                        - 2.0 * g_pxy * pz[i])
                    + g_ayz * ax[i]
                    - g_axz * ay[i]
            })
            .collect())
    }

    /// Sectional curvature `K(X, Y) = g(R(X,Y)Y, X)` of an orthonormal pair.
    pub fn sectional(&self, x: &[f64], y: &[f64]) -> Result<f64, Error> {
        let tol = 1e-10;
        let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(p, q)| p * q).sum() };
        if (dot(x, x) - 1.0).abs() > tol || (dot(y, y) - 1.0).abs() > tol || dot(x, y).abs() > tol {
            return Err(Error::NotOrthonormal { tol });
        }
        let r = self.riemann(x, y, y)?;
        Ok(dot(&r, x))
    }

    /// K on a frame pair, from the Gauss equation specialized to basis
    /// vectors: `c (1 + 3 phi_ij^2) + a_ii a_jj - a_ij^2`.
    fn k_frame_pair(&self, i: usize, j: usize) -> f64 {
        let a = self.shape.matrix();
        let fr = self.shape.frame();
        let mut e = vec![0.0; self.dim()];
        e[i] = 1.0;
        let phi_ij = fr.apply_phi(&e)[j];
        self.c * (1.0 + 3.0 * phi_ij * phi_ij) + a.get(i, i) * a.get(j, j)
            - a.get(i, j) * a.get(i, j)
    }

    /// Scalar curvature `tau = sum_{i<j} K(e_i, e_j)` over the standard
    /// frame (see the module note on the normalization).
    pub fn scalar_curvature(&self) -> f64 {
        let m = self.dim();
        let mut tau = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                tau += self.k_frame_pair(i, j);
            }
        }
        tau
    }

    /// The symmetric operator on xi^perp whose quadratic form is
    /// `X -> K(xi, X)`:
    /// `c Id + g(A xi, xi) A - (A xi)(A xi)^T` compressed to xi^perp.
    /// Its minimum eigenvalue is `inf K` over planes containing xi
    /// (phi xi = 0 kills every phi term of the Gauss equation there).
    pub fn xi_jacobi_operator(&self) -> SymMatrix {
        let m = self.dim();
        let a = self.shape.matrix();
        let alpha = a.get(XI_INDEX, XI_INDEX);
        SymMatrix::from_fn(m - 1, |i, j| {
            let c_term = if i == j { self.c } else { 0.0 };
            c_term + alpha * a.get(i + 1, j + 1) - a.get(i + 1, 0) * a.get(j + 1, 0)
        })
        .expect("m - 1 >= 2")
    }

    /// Minimum sectional curvature over planes containing xi, computed
    /// exactly as the smallest eigenvalue of [`Self::xi_jacobi_operator`].
    pub fn inf_k_xi(&self) -> f64 {
        let q = self.xi_jacobi_operator();
        let e = sym_eigen(&q).expect("operator entries are finite");
        e.values[0]
    }

    /// Full invariant report at this point, with ideality decided at
    /// absolute gap tolerance `tol`.
    pub fn delta_report(&self, tol: f64) -> DeltaReport {
        let n = self.shape.frame().n() as f64;
        let m = 2.0 * n - 1.0;
        let tau = self.scalar_curvature();
        let inf_k_xi = self.inf_k_xi();
        let delta_c2 = tau - inf_k_xi;
        let mean_sq = (self.shape.trace() / m).powi(2);
        let rhs =
            m * m * (2.0 * n - 3.0) / (4.0 * (n - 1.0)) * mean_sq + (2.0 * n * n - 3.0) * self.c;
        let gap = rhs - delta_c2;
        DeltaReport { tau, inf_k_xi, delta_c2, rhs, gap, ideal: gap.abs() <= tol }
    }
}

/// Report of the contact invariant against its mean-curvature bound:
/// `delta_c2 = tau - inf K(plane through xi)` and
/// `rhs = (2n-1)^2 (2n-3) / (4(n-1)) ||H||^2 + (2n^2 - 3) c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaReport {
    pub tau: f64,
    pub inf_k_xi: f64,
    #[serde(rename = "delta")]
    pub delta_c2: f64,
    pub rhs: f64,
    /// `rhs - delta_c2`; nonnegative up to roundoff, zero exactly on the
    /// canonical two-block forms.
    pub gap: f64,
    pub ideal: bool,
}
