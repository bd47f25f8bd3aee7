//! Elements of SU(2,1): membership, eigenstructure, fixed points and common
//! invariant complex geodesics.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{enorm, form_matrix, polar_of, ChpError, HMatrix, HVector, DEFAULT_TOL};

/// A 3×3 complex matrix preserving the form, normalized to determinant one.
/// Scalar multiples by cube roots of unity represent the same isometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    matrix: HMatrix,
}

fn frob(m: &HMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `(‖M*JM - J‖, |det M - 1|)`, each divided by the natural scale of the
/// rounding error (`‖M‖²` and `‖M‖³` respectively, at least 1).
pub fn su21_residuals(m: &HMatrix) -> (f64, f64) {
    let j = form_matrix();
    let n = frob(m).max(1.0);
    let form = frob(&(m.adjoint() * j * m - j)) / (n * n);
    let det = (m.determinant() - Complex64::new(1.0, 0.0)).norm() / (n * n * n);
    (form, det)
}

impl Isometry {
    pub fn new(matrix: HMatrix) -> Result<Self, ChpError> {
        Isometry::with_tol(matrix, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: HMatrix, tol: f64) -> Result<Self, ChpError> {
        let (form, det) = su21_residuals(&matrix);
        if form > tol || det > tol || !form.is_finite() || !det.is_finite() {
            return Err(ChpError::NotInSU21 { form, det });
        }
        Ok(Isometry { matrix })
    }

    pub fn identity() -> Self {
        Isometry {
            matrix: HMatrix::identity(),
        }
    }

    pub fn matrix(&self) -> &HMatrix {
        &self.matrix
    }

    /// `M⁻¹ = J M* J`.
    pub fn inverse(&self) -> Isometry {
        let j = form_matrix();
        Isometry {
            matrix: j * self.matrix.adjoint() * j,
        }
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix * other.matrix,
        }
    }

    pub fn apply(&self, v: &HVector) -> HVector {
        self.matrix * v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixedLine {
    /// A fixed complex geodesic, given by its positive polar vector.
    ComplexGeodesic { polar: HVector },
    /// Two positive eigenvectors share an eigenvalue: the projective line
    /// they span is fixed, but it lies entirely outside the ball.
    PositiveSphere { span: [HVector; 2] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllipticData {
    pub fixed_point: HVector,
    pub fixed_line: Option<FixedLine>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsometryClass {
    /// A cube root of unity times the identity.
    Central,
    Elliptic(EllipticData),
    /// Parabolic or loxodromic; not distinguished further.
    Other,
}

pub(crate) fn to_dmatrix(m: &HMatrix) -> DMatrix<Complex64> {
    DMatrix::from_iterator(3, 3, m.iter().copied())
}

fn column(m: &DMatrix<Complex64>, j: usize) -> HVector {
    HVector::new(m[(0, j)], m[(1, j)], m[(2, j)])
}

fn eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    if m.nrows() == 1 {
        return vec![m[(0, 0)]];
    }
    m.clone()
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular")
        .iter()
        .copied()
        .collect()
}

/// Groups nearly equal eigenvalues; returns cluster means.
fn cluster(values: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &v in values {
        match groups.iter_mut().find(|(c, n)| (*c / *n as f64 - v).norm() <= tol) {
            Some((c, n)) => {
                *c += v;
                *n += 1;
            }
            None => groups.push((v, 1)),
        }
    }
    groups.into_iter().map(|(c, n)| c / n as f64).collect()
}

/// Orthonormal basis (as columns) of `{c : a·c ≈ 0}` for a tall matrix `a`.
fn null_space(a: &DMatrix<Complex64>, tol: f64) -> DMatrix<Complex64> {
    let k = a.ncols();
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().fold(0.0f64, |x, &y| x.max(y));
    let thr = tol * smax.max(1.0);
    let cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= thr)
        .collect();
    let mut out = DMatrix::zeros(k, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        for r in 0..k {
            out[(r, j)] = v_t[(i, r)].conj();
        }
    }
    out
}

fn orthonormalize(w: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let k = w.ncols();
    let q = w.qr().q();
    q.columns(0, k).into_owned()
}

/// Eigenvectors of `m` with their eigenvalues, one orthonormal basis per
/// distinct eigenvalue.
fn eigenspaces(m: &HMatrix, tol: f64) -> Vec<(Complex64, DMatrix<Complex64>)> {
    let d = to_dmatrix(m);
    let scale = frob(m).max(1.0);
    cluster(&eigenvalues(&d), 1e3 * tol.sqrt() * scale)
        .into_iter()
        .filter_map(|lam| {
            let a = &d - DMatrix::identity(3, 3) * lam;
            let ns = null_space(&a, tol.sqrt());
            (ns.ncols() > 0).then(|| (lam, orthonormalize(ns)))
        })
        .collect()
}

/// Gram matrix of the form restricted to the column span of `w`.
fn restricted_form(w: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let j = to_dmatrix(&form_matrix());
    w.adjoint() * j * w
}

/// Extreme eigenpair (`max = true` for the largest) of the form on `span(w)`.
fn extreme_form_vector(w: &DMatrix<Complex64>, max: bool) -> (f64, HVector) {
    let g = restricted_form(w);
    let eig = SymmetricEigen::new(g);
    let mut best = 0;
    for i in 1..eig.eigenvalues.len() {
        let better = if max {
            eig.eigenvalues[i] > eig.eigenvalues[best]
        } else {
            eig.eigenvalues[i] < eig.eigenvalues[best]
        };
        if better {
            best = i;
        }
    }
    let c = eig.eigenvectors.column(best).into_owned();
    let v = w * c;
    (eig.eigenvalues[best], HVector::new(v[0], v[1], v[2]))
}

fn is_scalar(m: &HMatrix, tol: f64) -> bool {
    let s = m.trace() / 3.0;
    frob(&(m - HMatrix::identity() * s)) <= tol * frob(m).max(1.0)
}

pub fn classify_isometry(m: &Isometry) -> IsometryClass {
    classify_isometry_with_tol(m, DEFAULT_TOL)
}

/// Elliptic iff some eigenvector is negative. The negative eigenvector is
/// the fixed point; a repeated eigenvalue gives a fixed projective line.
pub fn classify_isometry_with_tol(m: &Isometry, tol: f64) -> IsometryClass {
    if is_scalar(&m.matrix, tol) {
        return IsometryClass::Central;
    }
    let spaces = eigenspaces(&m.matrix, tol);
    let negative = spaces.iter().position(|(_, w)| extreme_form_vector(w, false).0 < -tol);
    let Some(idx) = negative else {
        return IsometryClass::Other;
    };
    let (_, w) = &spaces[idx];
    let (_, fixed_point) = extreme_form_vector(w, false);
    let fixed_line = if w.ncols() == 2 {
        let polar = polar_of(&column(w, 0), &column(w, 1)).expect("independent basis");
        Some(FixedLine::ComplexGeodesic { polar })
    } else {
        spaces
            .iter()
            .find(|(_, w)| w.ncols() == 2)
            .map(|(_, w)| FixedLine::PositiveSphere {
                span: [column(w, 0), column(w, 1)],
            })
    };
    IsometryClass::Elliptic(EllipticData {
        fixed_point,
        fixed_line,
    })
}

/// Subspaces whose every vector is an eigenvector of all `mats`.
fn common_eigenspaces(mats: &[HMatrix], tol: f64) -> Vec<DMatrix<Complex64>> {
    let mut spaces = vec![DMatrix::<Complex64>::identity(3, 3)];
    for m in mats {
        if is_scalar(m, tol) {
            continue;
        }
        let d = to_dmatrix(m);
        let scale = frob(m).max(1.0);
        let mut next = Vec::new();
        for w in &spaces {
            let mw = &d * w;
            let b = w.adjoint() * &mw;
            for lam in cluster(&eigenvalues(&b), 1e3 * tol.sqrt() * scale) {
                let a = &mw - w * lam;
                let c = null_space(&a, tol.sqrt());
                if c.ncols() > 0 {
                    next.push(orthonormalize(w * c));
                }
            }
        }
        spaces = next;
        if spaces.is_empty() {
            break;
        }
    }
    spaces
}

/// A positive vector `v` with `M v ∝ v` for every generator, so that the
/// complex geodesic polar to `v` is preserved by the whole group.
pub fn stable_complex_geodesic(gens: &[HMatrix], tol: f64) -> Result<Option<HVector>, ChpError> {
    for g in gens {
        Isometry::with_tol(*g, tol.max(DEFAULT_TOL))?;
    }
    for w in common_eigenspaces(gens, tol) {
        let (val, v) = extreme_form_vector(&w, true);
        if val <= tol {
            continue;
        }
        let v = v / Complex64::new(enorm(&v), 0.0);
        let ok = gens.iter().all(|g| {
            let gv = g * v;
            // component of Mv orthogonal (Euclidean) to v
            let along = v * v.dotc(&gv);
            enorm(&(gv - along)) <= tol.sqrt() * frob(g).max(1.0)
        });
        if ok {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
