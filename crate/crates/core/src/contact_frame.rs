//! Adapted orthonormal frames carrying the induced almost contact metric
//! structure (phi, xi, eta, g), shape operators expressed in such a frame,
//! and the canonical two-block form that characterizes equality in the
//! contact invariant bound.
//!
//! Frames are always the standard adapted basis: index 0 is the structure
//! vector xi, and indices (1,2), (3,4), ... are phi-paired blocks with
//! `phi e_{2i-1} = e_{2i}`. Operators given in any other orthonormal basis
//! are handled by conjugating into this frame first, which removes the
//! gauge freedom from tests. The unit normal itself is never represented;
//! every formula used downstream is intrinsic to (phi, xi, eta, g, A).

use crate::error::Error;
use crate::numerics::{sym_eigen, SymMatrix};

/// Index of xi in the standard adapted basis.
pub const XI_INDEX: usize = 0;

/// Standard adapted frame for a hypersurface of complex dimension `n`
/// (real tangent dimension `m = 2n - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactFrame {
    n: usize,
    m: usize,
}

/// Builds the standard frame; the structure tensor phi acts as rotation
/// blocks on the pairs `(e_{2i-1}, e_{2i})` and kills xi. The tangent
/// dimension `2n - 1` must fit the small-dense kernel.
pub fn standard_frame(n: usize) -> Result<ContactFrame, Error> {
    if n < 2 || 2 * n - 1 > crate::numerics::MAX_DIM {
        return Err(Error::BadComplexDimension(n));
    }
    Ok(ContactFrame { n, m: 2 * n - 1 })
}

impl ContactFrame {
    /// Complex dimension of the ambient space form.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension of the tangent space, `2n - 1`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// eta(v) = g(xi, v).
    pub fn eta(&self, v: &[f64]) -> f64 {
        v[XI_INDEX]
    }

    /// Applies phi: zero on xi, `e_p -> e_q`, `e_q -> -e_p` on each block
    /// `(p, q) = (2i-1, 2i)`.
    pub fn apply_phi(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.m, "vector length must match frame dimension");
        let mut out = vec![0.0; self.m];
        for i in 1..self.n {
            let p = 2 * i - 1;
            let q = 2 * i;
            out[q] = v[p];
            out[p] = -v[q];
        }
        out
    }

    /// Dense phi matrix, column k holding `phi e_k`.
    pub fn phi_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.m)
            .map(|k| {
                let mut e = vec![0.0; self.m];
                e[k] = 1.0;
                self.apply_phi(&e)
            })
            .collect()
    }
}

/// Shape operator in the standard frame. Symmetry is inherited from
/// [`SymMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeOperator {
    frame: ContactFrame,
    a: SymMatrix,
}

impl ShapeOperator {
    pub fn new(frame: ContactFrame, a: SymMatrix) -> Result<Self, Error> {
        if a.dim() != frame.m() {
            return Err(Error::DimensionMismatch { got: a.dim(), expected: frame.m() });
        }
        if !a.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        Ok(Self { frame, a })
    }

    pub fn frame(&self) -> &ContactFrame {
        &self.frame
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.a
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.a.mul_vec(v)
    }

    pub fn trace(&self) -> f64 {
        self.a.trace()
    }

    /// alpha = g(A xi, xi).
    pub fn alpha(&self) -> f64 {
        self.a.get(XI_INDEX, XI_INDEX)
    }
}

/// The canonical two-block form: `A xi = alpha xi + beta e2`,
/// `A e2 = beta xi + gamma e2`, `A = mu Id` on the rest, with
/// `mu = alpha + gamma` enforced on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    alpha: f64,
    beta: f64,
    gamma: f64,
    n: usize,
}

impl CanonicalForm {
    pub fn new(alpha: f64, beta: f64, gamma: f64, n: usize) -> Result<Self, Error> {
        standard_frame(n)?;
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        Ok(Self { alpha, beta, gamma, n })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Derived, never stored: mu = alpha + gamma.
    pub fn mu(&self) -> f64 {
        self.alpha + self.gamma
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Assembles the shape operator of a canonical form in the standard frame.
/// `Tr A = alpha + gamma + (2n - 3) mu`.
pub fn canonical_shape_operator(cf: &CanonicalForm) -> ShapeOperator {
    let frame = standard_frame(cf.n).expect("n validated on construction");
    let m = frame.m();
    let mut a = SymMatrix::zeros(m).expect("m <= 64 for supported n");
    a.set(0, 0, cf.alpha);
    a.set(0, 1, cf.beta);
    a.set(1, 1, cf.gamma);
    let mu = cf.mu();
    for i in 2..m {
        a.set(i, i, mu);
    }
    ShapeOperator::new(frame, a).expect("dimensions agree by construction")
}

/// Rank-two ruled form: `A xi = alpha xi + beta U`, `A U = beta xi`,
/// `A X = 0` for X orthogonal to xi and U (here U = e2). Minimal exactly
/// when `alpha = 0`; the ruled structure requires `beta != 0`.
pub fn ruled_shape_operator(beta: f64, alpha: f64, n: usize) -> Result<ShapeOperator, Error> {
    if beta == 0.0 {
        return Err(Error::RuledBetaZero);
    }
    let frame = standard_frame(n)?;
    let mut a = SymMatrix::zeros(frame.m())?;
    a.set(0, 0, alpha);
    a.set(0, 1, beta);
    ShapeOperator::new(frame, a)
}

/// Recognizes the canonical two-block structure of a shape operator.
///
/// Computes `alpha = g(A xi, xi)`, `w = A xi - alpha xi`, `beta = ||w||`.
/// When `beta > tol` the distinguished direction is `w / beta`; otherwise
/// the eigenvalues of A on the xi-orthogonal complement are searched for a
/// `gamma (+) mu Id` split, ties broken by minimizing `|alpha + gamma - mu|`.
/// Returns the form iff A preserves span{xi, e2} and equals `mu Id` on the
/// complement with `|mu - (alpha + gamma)| <= tol`; absence is a value, not
/// an error.
pub fn detect_canonical_form(s: &ShapeOperator, tol: f64) -> Option<CanonicalForm> {
    let m = s.frame().m();
    let n = s.frame().n();
    let a = s.matrix();

    let alpha = a.get(0, 0);
    let w: Vec<f64> = (1..m).map(|i| a.get(i, 0)).collect();
    let beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();

    if beta > tol {
        // e2 = w / beta in the xi-orthogonal block.
        let e2: Vec<f64> = w.iter().map(|x| x / beta).collect();
        // A e2 restricted to xi^perp, and gamma = g(A e2, e2).
        let ae2: Vec<f64> = (1..m).map(|i| (1..m).map(|j| a.get(i, j) * e2[j - 1]).sum()).collect();
        let gamma: f64 = ae2.iter().zip(&e2).map(|(x, y)| x * y).sum();
        // A must preserve span{xi, e2}: residual of A e2 off that span.
        let res: f64 =
            ae2.iter().zip(&e2).map(|(x, y)| (x - gamma * y).powi(2)).sum::<f64>().sqrt();
        if res > tol {
            return None;
        }
        let mu_target = alpha + gamma;
        // On the complement of {xi, e2}, A must be mu Id. Projected entries:
        // B_ij = a_ij - gamma e2_i e2_j must equal mu (delta_ij - e2_i e2_j).
        for i in 1..m {
            for j in i..m {
                let pij = if i == j { 1.0 } else { 0.0 } - e2[i - 1] * e2[j - 1];
                let bij = a.get(i, j) - gamma * e2[i - 1] * e2[j - 1];
                if (bij - mu_target * pij).abs() > tol * (1.0 + mu_target.abs()) {
                    return None;
                }
            }
        }
        return CanonicalForm::new(alpha, beta, gamma, n).ok();
    }

    // beta ~ 0: xi is principal; look for a gamma (+) mu Id eigenvalue
    // split of A on xi^perp.
    let block = SymMatrix::from_fn(m - 1, |i, j| a.get(i + 1, j + 1)).expect("m-1 >= 2");
    let eig = sym_eigen(&block).ok()?;
    let vals = &eig.values;
    let k = vals.len();
    let mut best: Option<(f64, CanonicalForm)> = None;
    for g_idx in 0..k {
        let rest: Vec<f64> = (0..k).filter(|&i| i != g_idx).map(|i| vals[i]).collect();
        let mu = rest.iter().sum::<f64>() / rest.len() as f64;
        if rest.iter().any(|l| (l - mu).abs() > tol * (1.0 + mu.abs())) {
            continue;
        }
        let gamma = vals[g_idx];
        let defect = (alpha + gamma - mu).abs();
        if defect > tol * (1.0 + mu.abs()) {
            continue;
        }
        let form = CanonicalForm::new(alpha, 0.0, gamma, n).ok()?;
        if best.as_ref().is_none_or(|(d, _)| defect < *d) {
            best = Some((defect, form));
        }
    }
    best.map(|(_, f)| f)
}
