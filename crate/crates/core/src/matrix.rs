//! Dense complex matrix kernel.
//!
//! Self-contained row-major storage with the handful of operations the rate
//! expressions need: Hermitian eigendecomposition (cyclic complex Jacobi),
//! singular values (one-sided Jacobi), Gram matrices, Rayleigh quotients, and
//! a positive-semidefiniteness test.
//!
//! Determinism matters more than speed here: problem sizes stay below ~64x64,
//! eigenvalues are returned in descending order, and every eigenvector is
//! phase-normalized (first nonzero component real and positive) so repeated
//! calls on identical input return bit-identical results. Degenerate spectra
//! are ordered by a lexicographic comparison of the normalized vectors.

use num_complex::Complex64;

use crate::error::Error;
use crate::Result;

/// Max `|A - A^H|` entry tolerated before an input is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default eigenvalue floor for positive-semidefiniteness checks.
pub const PSD_TOL: f64 = 1e-9;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidDimensions(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
            .expect("positive dimensions")
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from nested rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidDimensions("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Single-column matrix from a vector.
    pub fn column(v: &[Complex64]) -> Result<Self> {
        Self::new(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose A^H.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, other.cols),
                got: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * x`.
    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: (self.cols, 1),
                got: (x.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * x[j])
                    .sum::<Complex64>()
            })
            .collect())
    }

    /// Entry-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected: (self.rows, self.cols),
                got: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Scales every entry by a real factor.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij - conj(A_ji)|`; infinite for non-square input.
    pub fn max_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Hermitian part (A + A^H) / 2 with an exactly real diagonal.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.data[i * n + i] = Complex64::new(self.get(i, i).re, 0.0);
            for j in (i + 1)..n {
                let z = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                out.data[i * n + j] = z;
                out.data[j * n + i] = z.conj();
            }
        }
        out
    }

    /// Quadratic form x^H A x.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<Complex64> {
        let ax = self.matvec(x)?;
        Ok(vec_dot(x, &ax))
    }

    /// Rank-one outer product x y^H.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> Result<Self> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::InvalidDimensions(
                "outer product needs nonempty vectors".into(),
            ));
        }
        let mut out = Self::zeros(x.len(), y.len());
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                out.data[i * y.len() + j] = xi * yj.conj();
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

/// Inner product x^H y.
pub fn vec_dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Squared Euclidean norm.
pub fn vec_norm_sq(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Euclidean norm.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    vec_norm_sq(x).sqrt()
}

/// Full spectrum of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; `eigenvectors[i]` is the unit-norm,
/// phase-normalized vector paired with `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

/// 2x2 rotation parameters that annihilate one off-diagonal entry.
///
/// For the Hermitian block [[app, apq], [conj(apq), aqq]] the returned
/// `(c, s, phase)` define the unitary J = [[c, s], [-s*conj(phase), c*conj(phase)]]
/// with J^H M J diagonal, where `phase = apq / |apq|`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64, f64) {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau.abs() > 1e150 {
        // asymptotic root of t^2 + 2*tau*t - 1 = 0
        0.5 / tau
    } else {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (c, s, phase, t)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// The input must be square, finite, and Hermitian within [`HERMITIAN_TOL`];
/// iteration then runs on the exactly-Hermitian part, so accumulated rounding
/// never re-introduces asymmetry.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEig> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch {
            expected: (a.rows, a.rows),
            got: (a.rows, a.cols),
        });
    }
    let asym = a.max_asymmetry();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
        });
    }

    let n = a.rows;
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    for sweep in 1..=MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q).norm();
            }
        }
        if off == 0.0 {
            break;
        }
        // Loose threshold for early sweeps avoids chasing entries that later
        // rotations will disturb anyway (Numerical Recipes schedule).
        let thresh = if sweep < 4 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let r = apq.norm();
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;

                // Flush entries too small to affect the diagonal.
                if sweep > 4
                    && app.abs() + 100.0 * r == app.abs()
                    && aqq.abs() + 100.0 * r == aqq.abs()
                {
                    m.set(p, q, Complex64::new(0.0, 0.0));
                    m.set(q, p, Complex64::new(0.0, 0.0));
                    continue;
                }
                if r <= thresh || r == 0.0 {
                    continue;
                }

                let (c, s, phase, t) = jacobi_rotation(app, aqq, apq);
                let s_cph = phase.conj() * s;

                // Columns: X <- X * J for both the iterate and the accumulator.
                for k in 0..n {
                    let akp = m.get(k, p);
                    let akq = m.get(k, q);
                    m.set(k, p, akp * c - akq * s_cph);
                    m.set(k, q, akp * s + akq * (phase.conj() * c));

                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c - vkq * s_cph);
                    v.set(k, q, vkp * s + vkq * (phase.conj() * c));
                }
                // Rows: X <- J^H * X.
                for k in 0..n {
                    let apk = m.get(p, k);
                    let aqk = m.get(q, k);
                    m.set(p, k, apk * c - aqk * (phase * s));
                    m.set(q, k, apk * s + aqk * (phase * c));
                }
                // The 2x2 block is known in closed form; pin it to kill rounding.
                m.set(p, p, Complex64::new(app - t * r, 0.0));
                m.set(q, q, Complex64::new(aqq + t * r, 0.0));
                m.set(p, q, Complex64::new(0.0, 0.0));
                m.set(q, p, Complex64::new(0.0, 0.0));
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|j| {
            let col: Vec<Complex64> = (0..n).map(|i| v.get(i, j)).collect();
            (m.get(j, j).re, normalize_phase(col))
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| cmp_vec_lex(&b.1, &a.1)));

    Ok(HermitianEig {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        eigenvectors: pairs.into_iter().map(|p| p.1).collect(),
    })
}

/// Scales to unit norm and rotates the global phase so the first component
/// with modulus above 1e-12 is real and positive.
fn normalize_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = vec_norm(&v);
    if norm > 0.0 {
        for z in &mut v {
            *z /= norm;
        }
    }
    if let Some(&lead) = v.iter().find(|z| z.norm() > 1e-12) {
        let rot = lead.conj() / lead.norm();
        for z in &mut v {
            *z *= rot;
        }
    }
    v
}

/// Lexicographic comparison of complex vectors, component-wise (re, then im).
fn cmp_vec_lex(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Largest eigenvalue and its phase-normalized eigenvector.
pub fn eig_max(a: &ComplexMatrix) -> Result<(f64, Vec<Complex64>)> {
    let eig = eig_hermitian(a)?;
    Ok((eig.eigenvalues[0], eig.eigenvectors[0].clone()))
}

/// Gram matrix A * A^H, Hermitian PSD by construction.
pub fn gram(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.data
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NotFinite);
    }
    let m = a.rows;
    let mut out = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        let diag: f64 = (0..a.cols).map(|k| a.get(i, k).norm_sqr()).sum();
        out.data[i * m + i] = Complex64::new(diag, 0.0);
        for j in (i + 1)..m {
            let z: Complex64 = (0..a.cols).map(|k| a.get(i, k) * a.get(j, k).conj()).sum();
            out.data[i * m + j] = z;
            out.data[j * m + i] = z.conj();
        }
    }
    Ok(out)
}

/// Rayleigh quotient x^H A x / x^H x of a Hermitian matrix.
pub fn rayleigh(a: &ComplexMatrix, x: &[Complex64]) -> Result<f64> {
    if !a.is_square() || a.cols != x.len() {
        return Err(Error::ShapeMismatch {
            expected: (a.rows, a.rows),
            got: (x.len(), 1),
        });
    }
    let nsq = vec_norm_sq(x);
    if nsq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let q = a.quadratic_form(x)? / nsq;
    if q.im.abs() >= 1e-10 * (1.0 + q.re.abs()) {
        return Err(Error::NotHermitian {
            max_asymmetry: q.im.abs(),
        });
    }
    Ok(q.re)
}

/// True iff `a` is square, Hermitian within `tol`, and its smallest eigenvalue
/// is at least `-tol`.
pub fn is_psd(a: &ComplexMatrix, tol: f64) -> bool {
    if !a.is_square() || a.max_asymmetry() > tol {
        return false;
    }
    match eig_hermitian(&a.hermitian_part()) {
        Ok(eig) => eig.eigenvalues.last().copied().unwrap_or(0.0) >= -tol,
        Err(_) => false,
    }
}

/// Singular values of an arbitrary complex matrix, descending.
///
/// One-sided Jacobi: unitary column rotations until all column pairs are
/// orthogonal; the singular values are the final column norms. Independent of
/// [`eig_hermitian`] by construction, which lets the two routes cross-check
/// each other in tests.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    // Work on the orientation with fewer columns.
    let mut b = if a.rows >= a.cols {
        a.clone()
    } else {
        a.adjoint()
    };
    let (m, n) = (b.rows, b.cols);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for k in 0..m {
                    let bkp = b.get(k, p);
                    let bkq = b.get(k, q);
                    app += bkp.norm_sqr();
                    aqq += bkq.norm_sqr();
                    apq += bkp.conj() * bkq;
                }
                if apq.norm() <= 1e-15 * (app * aqq).sqrt() || apq.norm() == 0.0 {
                    continue;
                }
                let (c, s, phase, _) = jacobi_rotation(app, aqq, apq);
                let s_cph = phase.conj() * s;
                for k in 0..m {
                    let bkp = b.get(k, p);
                    let bkq = b.get(k, q);
                    b.set(k, p, bkp * c - bkq * s_cph);
                    b.set(k, q, bkp * s + bkq * (phase.conj() * c));
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| b.get(i, j).norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}
