//! Self-contained small-dense numerical kernel: a cyclic-Jacobi symmetric
//! eigensolver, a bracketed root finder (bisection core with secant
//! acceleration), and a classical fourth-order Runge-Kutta step.
//!
//! Matrices here are tiny (at most 64x64), so the Jacobi method is both the
//! simplest and one of the most accurate choices: every rotation is exactly
//! orthogonal, and the accumulated eigenvector matrix stays orthonormal to
//! machine precision.

use crate::error::Error;

/// Hard cap on matrix dimension; everything in this crate is small-dense.
pub const MAX_DIM: usize = 64;

/// Symmetric matrix with symmetry exact by construction: the setter mirrors
/// both triangles, so `get(i, j) == get(j, i)` always holds bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Result<Self, Error> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::BadDimension { got: dim, max: MAX_DIM });
        }
        Ok(Self { dim, data: vec![0.0; dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self, Error> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        Ok(m)
    }

    /// Builds from the lower triangle of `f(i, j)` (`i >= j`), mirroring.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(dim: usize, mut f: F) -> Result<Self, Error> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }
}

/// Eigendecomposition of a symmetric matrix: `values` ascending,
/// `vectors[k]` the unit eigenvector paired with `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps over all off-diagonal pairs until the off-diagonal Frobenius mass
/// is at machine level relative to the matrix norm. Residuals
/// `||S v - lambda v||` come out around `1e-15 (1 + ||S||)` for the sizes
/// used here, well inside the documented `1e-12` contract.
pub fn sym_eigen(s: &SymMatrix) -> Result<Eigen, Error> {
    if !s.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let n = s.dim();
    let mut a = s.clone();
    let mut v = SymMatrix::identity(n).expect("dim already validated");
    // v is used as a general (non-symmetric) accumulator; bypass the
    // mirroring setter below.
    let mut vv: Vec<f64> = v.data.clone();

    let scale = 1.0 + s.frobenius_norm();
    let stop = 1e-15 * scale;

    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).powi(2);
            }
        }
        if (2.0 * off).sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                let tau = sn / (1.0 + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp - sn * (arq + tau * arp));
                    a.set(r, q, arq + sn * (arp - tau * arq));
                }
                for r in 0..n {
                    let vrp = vv[r * n + p];
                    let vrq = vv[r * n + q];
                    vv[r * n + p] = vrp - sn * (vrq + tau * vrp);
                    vv[r * n + q] = vrq + sn * (vrp - tau * vrq);
                }
            }
        }
    }
    v.data = vv;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).expect("finite"));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|r| v.data[r * n + k]).collect()).collect();
    Ok(Eigen { values, vectors })
}

/// Root bracket: `lo < hi` with a strict sign change across the interval.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, Error> {
        if !(lo.is_finite() && hi.is_finite() && f_lo.is_finite() && f_hi.is_finite())
            || lo >= hi
            || f_lo * f_hi >= 0.0
        {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both endpoints and validates the sign change.
    pub fn around<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self, Error> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::new(lo, hi, f_lo, f_hi)
    }
}

/// Bracketed root finder: bisection core with secant acceleration on
/// alternating iterations, so the bracket width at least halves every two
/// evaluations. Fully deterministic: identical inputs give bit-identical
/// outputs.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> f64 {
    let tol = if tol > 0.0 { tol } else { f64::EPSILON };
    let Bracket { mut lo, mut hi, mut f_lo, mut f_hi } = bracket;
    let mut try_secant = true;

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let mut x = mid;
        if try_secant && f_hi != f_lo {
            let xs = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            let margin = 0.01 * (hi - lo);
            if xs.is_finite() && xs > lo + margin && xs < hi - margin {
                x = xs;
            }
        }
        try_secant = !try_secant;
        if x <= lo || x >= hi {
            // Interval has collapsed to adjacent floats.
            break;
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx > 0.0) == (f_hi > 0.0) {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
    }
    if f_lo.abs() <= f_hi.abs() {
        lo
    } else {
        hi
    }
}

/// One classical RK4 step for an autonomous field `y' = f(y)`.
///
/// Non-finite stage derivatives surface as [`Error::NonFiniteDerivative`];
/// the structure-equation flow consumes that as its singularity signal.
pub fn rk_step<F>(f: F, y: &[f64], h: f64) -> Result<Vec<f64>, Error>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::BadStep(h));
    }
    let n = y.len();
    let eval = |z: &[f64]| -> Result<Vec<f64>, Error> {
        let d = f(z);
        if d.len() != n {
            return Err(Error::DimensionMismatch { got: d.len(), expected: n });
        }
        if d.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteDerivative);
        }
        Ok(d)
    };
    let shifted = |base: &[f64], k: &[f64], a: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, ki)| b + a * ki).collect()
    };

    let k1 = eval(y)?;
    let k2 = eval(&shifted(y, &k1, 0.5 * h))?;
    let k3 = eval(&shifted(y, &k2, 0.5 * h))?;
    let k4 = eval(&shifted(y, &k3, h))?;
    Ok((0..n).map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sym(dim: usize, rng: &mut impl Rng) -> SymMatrix {
        SymMatrix::from_fn(dim, |_, _| rng.gen_range(-2.0..=2.0)).unwrap()
    }

    fn residual(s: &SymMatrix, e: &Eigen) -> f64 {
        let mut worst: f64 = 0.0;
        for (lam, v) in e.values.iter().zip(&e.vectors) {
            let sv = s.mul_vec(v);
            let r: f64 = sv.iter().zip(v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn eigen_identity() {
        let s = SymMatrix::identity(3).unwrap();
        let e = sym_eigen(&s).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigen_diagonal_sorted() {
        let mut s = SymMatrix::zeros(3).unwrap();
        s.set(0, 0, 2.0);
        s.set(1, 1, -1.0);
        s.set(2, 2, 0.0);
        let e = sym_eigen(&s).unwrap();
        assert_eq!(e.values, vec![-1.0, 0.0, 2.0]);
    }

    #[test]
    fn eigen_rejects_non_finite() {
        let mut s = SymMatrix::zeros(2).unwrap();
        s.set(0, 1, f64::NAN);
        assert!(matches!(sym_eigen(&s), Err(Error::NonFiniteInput)));
    }

    /// Characteristic polynomial of a 5x5 by cofactor expansion with
    /// degree-1 polynomial entries; independent of the Jacobi path.
    fn char_poly(s: &SymMatrix) -> Vec<f64> {
        let n = s.dim();
        // entry (i, j) as polynomial in lambda: s_ij - lambda delta_ij
        let entry = |i: usize, j: usize| -> Vec<f64> {
            if i == j {
                vec![s.get(i, j), -1.0]
            } else {
                vec![s.get(i, j), 0.0]
            }
        };
        fn pmul(a: &[f64], b: &[f64]) -> Vec<f64> {
            let mut out = vec![0.0; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        fn padd(a: &mut Vec<f64>, b: &[f64], sign: f64) {
            if a.len() < b.len() {
                a.resize(b.len(), 0.0);
            }
            for (i, y) in b.iter().enumerate() {
                a[i] += sign * y;
            }
        }
        fn det(
            rows: &[usize],
            cols: &[usize],
            entry: &dyn Fn(usize, usize) -> Vec<f64>,
        ) -> Vec<f64> {
            if rows.len() == 1 {
                return entry(rows[0], cols[0]);
            }
            let mut acc = vec![0.0];
            let sub_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(sub_rows, &sub_cols, entry);
                let term = pmul(&entry(rows[0], c), &minor);
                padd(&mut acc, &term, if k % 2 == 0 { 1.0 } else { -1.0 });
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        det(&idx, &idx, &entry)
    }

    fn poly_eval(p: &[f64], x: f64) -> f64 {
        p.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    #[test]
    fn eigen_matches_char_poly_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_sym(5, &mut rng);
        let e = sym_eigen(&s).unwrap();
        let p = char_poly(&s);
        for &lam in &e.values {
            // Bracket a root of the characteristic polynomial around the
            // Jacobi eigenvalue and bisect it independently.
            let delta = 1e-6;
            let b = Bracket::around(|x| poly_eval(&p, x), lam - delta, lam + delta)
                .expect("char poly changes sign near each eigenvalue");
            let root = find_root(|x| poly_eval(&p, x), b, 1e-13);
            assert!((root - lam).abs() <= 1e-9, "eigenvalue {lam} vs char-poly root {root}");
        }
    }

    #[test]
    fn eigen_residuals_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 2..=9 {
            for _ in 0..1000 {
                let s = random_sym(dim, &mut rng);
                let e = sym_eigen(&s).unwrap();
                let bound = 1e-12 * (1.0 + s.frobenius_norm());
                assert!(residual(&s, &e) <= bound);
                // eigenvector orthonormality
                for a in 0..dim {
                    for b in a..dim {
                        let dot: f64 =
                            e.vectors[a].iter().zip(&e.vectors[b]).map(|(x, y)| x * y).sum();
                        let expect = if a == b { 1.0 } else { 0.0 };
                        assert!((dot - expect).abs() <= 1e-12);
                    }
                }
                for w in e.values.windows(2) {
                    assert!(w[0] <= w[1]);
                }
            }
        }
    }

    #[test]
    fn eigen_invariant_under_orthogonal_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dim = 6;
        for _ in 0..50 {
            let s = random_sym(dim, &mut rng);
            // Random orthogonal Q by Gram-Schmidt on a random matrix.
            let mut q: Vec<Vec<f64>> =
                (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
            for i in 0..dim {
                for j in 0..i {
                    let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
                    for k in 0..dim {
                        q[i][k] -= d * q[j][k];
                    }
                }
                let nrm: f64 = q[i].iter().map(|x| x * x).sum::<f64>().sqrt();
                for k in 0..dim {
                    q[i][k] /= nrm;
                }
            }
            // conj = Q S Q^T (rows of q are the orthonormal vectors)
            let conj = SymMatrix::from_fn(dim, |i, j| {
                (0..dim)
                    .map(|a| (0..dim).map(|b| q[i][a] * s.get(a, b) * q[j][b]).sum::<f64>())
                    .sum()
            })
            .unwrap();
            let e1 = sym_eigen(&s).unwrap();
            let e2 = sym_eigen(&conj).unwrap();
            for (a, b) in e1.values.iter().zip(&e2.values) {
                assert!((a - b).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn root_sqrt_two() {
        let b = Bracket::around(|x| x * x - 2.0, 1.0, 2.0).unwrap();
        let r = find_root(|x| x * x - 2.0, b, 1e-12);
        assert!((r - std::f64::consts::SQRT_2).abs() <= 1e-12);
    }

    #[test]
    fn root_tube_radius_hyperbolic() {
        // 2 tanh(2r) + tanh r = coth r has its unique positive root at the
        // closed form (1/2) log((1 + sqrt5 + sqrt(2 + 2 sqrt5)) / 2).
        let f = |r: f64| 2.0 * (2.0 * r).tanh() + r.tanh() - 1.0 / r.tanh();
        let b = Bracket::around(f, 0.3, 0.8).unwrap();
        let r = find_root(f, b, 1e-12);
        let s5 = 5f64.sqrt();
        let closed = 0.5 * ((1.0 + s5 + (2.0 + 2.0 * s5).sqrt()) / 2.0).ln();
        assert!((r - closed).abs() <= 1e-10, "r={r} closed={closed}");
        assert!(f(closed).abs() <= 1e-10);
    }

    #[test]
    fn root_tube_radius_projective() {
        // 2 cot(2r) + cot(r - pi/4) + tan(r - pi/4) = 0 at
        // arctan((1 + sqrt5 - sqrt(2 + 2 sqrt5)) / 2).
        let f = |r: f64| {
            2.0 / (2.0 * r).tan()
                + 1.0 / (r - std::f64::consts::FRAC_PI_4).tan()
                + (r - std::f64::consts::FRAC_PI_4).tan()
        };
        let b = Bracket::around(f, 0.2, 0.5).unwrap();
        let r = find_root(f, b, 1e-12);
        let s5 = 5f64.sqrt();
        let closed = ((1.0 + s5 - (2.0 + 2.0 * s5).sqrt()) / 2.0).atan();
        assert!((r - closed).abs() <= 1e-10);
        assert!(f(closed).abs() <= 1e-10);
    }

    #[test]
    fn root_requires_sign_change() {
        assert!(matches!(
            Bracket::around(|x: f64| x * x + 1.0, -1.0, 1.0),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn root_is_deterministic() {
        let f = |x: f64| x.cos() - x;
        let b = Bracket::around(f, 0.0, 1.0).unwrap();
        let r1 = find_root(f, b, 1e-14);
        let r2 = find_root(f, b, 1e-14);
        assert_eq!(r1.to_bits(), r2.to_bits());
    }

    #[test]
    fn rk_linear_field() {
        let y = rk_step(|y| y.to_vec(), &[1.0], 0.1).unwrap();
        assert!((y[0] - 0.1f64.exp()).abs() <= 1e-7);
    }

    #[test]
    fn rk_stationary_field() {
        let y = rk_step(|y| vec![0.0; y.len()], &[3.5, -2.0], 0.5).unwrap();
        assert_eq!(y, vec![3.5, -2.0]);
    }

    #[test]
    fn rk_riccati_closed_form() {
        // y' = y^2 - 1 from y(0) = 1/2 has y(s) = tanh(artanh(1/2) - s).
        let f = |y: &[f64]| vec![y[0] * y[0] - 1.0];
        let mut y = vec![0.5];
        let h = 1e-3;
        for _ in 0..1000 {
            y = rk_step(f, &y, h).unwrap();
        }
        let exact = (0.5f64.atanh() - 1.0).tanh();
        assert!((y[0] - exact).abs() <= 1e-8, "got {} want {}", y[0], exact);
    }

    #[test]
    fn rk_observed_order_at_least_3_8() {
        let f = |y: &[f64]| vec![y[0] * y[0] - 1.0];
        let integrate = |h: f64| -> f64 {
            let n = (1.0 / h).round() as usize;
            let mut y = vec![0.5];
            for _ in 0..n {
                y = rk_step(f, &y, h).unwrap();
            }
            y[0]
        };
        let exact = (0.5f64.atanh() - 1.0).tanh();
        let e1 = (integrate(4e-3) - exact).abs();
        let e2 = (integrate(2e-3) - exact).abs();
        let e3 = (integrate(1e-3) - exact).abs();
        let p12 = (e1 / e2).log2();
        let p23 = (e2 / e3).log2();
        assert!(p12 >= 3.8, "order {p12}");
        assert!(p23 >= 3.8, "order {p23}");
    }

    #[test]
    fn rk_flags_singular_field() {
        let f = |y: &[f64]| vec![1.0 / y[0]];
        assert!(matches!(rk_step(f, &[0.0], 0.1), Err(Error::NonFiniteDerivative)));
    }
}
