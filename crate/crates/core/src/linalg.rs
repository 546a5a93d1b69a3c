//! Dense linear algebra helpers: numerical rank, range bases, principal angles
//! and polynomial roots.

use nalgebra::{ComplexField, DMatrix, Schur, QR};
use num_complex::Complex64;

/// Matrix scalar: `f64` for real-coefficient problems, `Complex64` otherwise.
pub trait Scalar: ComplexField<RealField = f64> + Copy {
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    /// Singular values and, if requested, the thin left factor.
    fn svd(m: &DMatrix<Self>, left: bool) -> (Vec<f64>, Option<DMatrix<Self>>);
}

macro_rules! faer_svd {
    ($t:ty) => {
        fn svd(m: &DMatrix<$t>, left: bool) -> (Vec<f64>, Option<DMatrix<$t>>) {
            let a = faer::Mat::<$t>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
            if !left {
                let sv = a.singular_values().expect("faer svd converges");
                return (sv, None);
            }
            let svd = a.thin_svd().expect("faer svd converges");
            let s = svd.S().column_vector();
            let sv: Vec<f64> = (0..s.nrows()).map(|i| faer::traits::math_utils::real(&s[i])).collect();
            let u = svd.U();
            (sv, Some(DMatrix::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)])))
        }
    };
}

impl Scalar for f64 {
    fn from_c64(z: Complex64) -> Self {
        z.re
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    faer_svd!(f64);
}

impl Scalar for Complex64 {
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    faer_svd!(Complex64);
}

/// Singular values in descending order (empty for an empty matrix).
pub fn singular_values<T: Scalar>(m: &DMatrix<T>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let (mut sv, _) = T::svd(m, false);
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `tol · σ_max`.
pub fn rank_from_singular(sv: &[f64], tol: f64) -> usize {
    let max = sv.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

pub fn numerical_rank<T: Scalar>(m: &DMatrix<T>, tol: f64) -> usize {
    rank_from_singular(&singular_values(m), tol)
}

/// Orthonormal basis (as columns) of the numerical column space of `m`.
pub fn range_basis<T: Scalar>(m: &DMatrix<T>, tol: f64) -> DMatrix<T> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let (sv, u) = T::svd(m, true);
    let u = u.expect("left singular vectors requested");
    let max = sv.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..sv.len()).filter(|&i| max > 0.0 && sv[i] > tol * max).collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Sines of the principal angles between the coordinate subspace spanned by
/// `rows` and the column space of the orthonormal matrix `q`, in ascending
/// order. One sine per selected coordinate.
pub fn coordinate_subspace_sines<T: Scalar>(q: &DMatrix<T>, rows: &[usize]) -> Vec<f64> {
    let k = rows.len();
    if q.ncols() == 0 {
        return vec![1.0; k];
    }
    let sub = DMatrix::from_fn(k, q.ncols(), |r, c| q[(rows[r], c)]);
    let cosines = singular_values(&sub);
    let mut sines: Vec<f64> = cosines
        .iter()
        .take(k)
        .map(|c| (1.0 - c * c).max(0.0).sqrt())
        .collect();
    sines.resize(k, 1.0);
    sines.sort_by(|a, b| a.total_cmp(b));
    sines
}

/// Roots of `Σ c_k z^k` (coefficients lowest degree first) from the companion
/// matrix, each polished by a few Newton steps.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let Some(deg) = coeffs.iter().rposition(|c| c.norm() > 0.0) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coeffs[i] / lead;
    }
    let a = faer::Mat::<Complex64>::from_fn(deg, deg, |i, j| comp[(i, j)]);
    let eig: Vec<Complex64> = match a.eigenvalues() {
        Ok(e) => e,
        Err(_) => match schur(comp) {
            Some((_, t)) => (0..deg).map(|i| t[(i, i)]).collect(),
            None => return Vec::new(),
        },
    };
    let p = &coeffs[..=deg];
    let dp: Vec<Complex64> = (1..=deg).map(|k| p[k] * k as f64).collect();
    eig.into_iter().map(|z| newton_polish(p, &dp, z)).collect()
}

/// Complex Schur form `(Q, T)` with `M = Q T Q^H`, computed with a bounded
/// number of QR sweeps. A stalled iteration is restarted on a fixed unitary
/// conjugate of `M`. `None` if every attempt stalls.
pub fn schur(m: DMatrix<Complex64>) -> Option<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    let n = m.nrows();
    let max_niter = 200 * n.max(1);
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, max_niter) {
        return Some(s.unpack());
    }
    for attempt in 1..=3u32 {
        let seed = DMatrix::from_fn(n, n, |i, j| {
            let x = ((i * 7 + j * 13 + attempt as usize * 29) % 31) as f64;
            Complex64::new(x.sin(), (x * 1.7).cos())
        });
        let u = QR::new(seed).q();
        let conj = u.adjoint() * &m * &u;
        if let Some(s) = Schur::try_new(conj, f64::EPSILON, max_niter) {
            let (q, t) = s.unpack();
            return Some((u * q, t));
        }
    }
    None
}

pub fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn newton_polish(p: &[Complex64], dp: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut best = (horner(p, z).norm(), z);
    for _ in 0..8 {
        let d = horner(dp, z);
        if d.norm() == 0.0 {
            break;
        }
        z -= horner(p, z) / d;
        let v = horner(p, z).norm();
        if !v.is_finite() {
            break;
        }
        if v < best.0 {
            best = (v, z);
        }
    }
    best.1
}
