//! Covariance matrices and quadrature-space linear algebra.
//!
//! Conventions, fixed crate-wide:
//! - quadrature ordering `(x1, p1, x2, p2, ...)`;
//! - vacuum variance `1/2` on every quadrature;
//! - entropies in nats (natural log).
//!
//! A state is physical iff every symplectic eigenvalue of its covariance
//! matrix satisfies `nu >= 1/2` (up to [`SYMPLECTIC_ATOL`]).

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Relative tolerance for the symmetry check on covariance matrices.
pub const SYMMETRY_RTOL: f64 = 1e-12;

/// Absolute tolerance on the symplectic bound `nu >= 1/2`.
pub const SYMPLECTIC_ATOL: f64 = 1e-9;

/// Standard symplectic form for `n_modes` modes under the `(x1, p1, ...)`
/// ordering: a direct sum of `[[0, 1], [-1, 0]]` blocks.
pub fn symplectic_form<T: Real>(n_modes: usize) -> DMatrix<T> {
    let dim = 2 * n_modes;
    let mut omega = DMatrix::zeros(dim, dim);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = T::one();
        omega[(2 * k + 1, 2 * k)] = -T::one();
    }
    omega
}

/// Symmetric matrix of symmetrized quadrature second moments for an
/// `n_modes`-mode Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T: Real> {
    entries: DMatrix<T>,
    n_modes: usize,
}

impl<T: Real> CovarianceMatrix<T> {
    /// Wraps a `2N x 2N` matrix, enforcing shape and symmetry.
    ///
    /// Physicality (positive definiteness, symplectic bound) is *not*
    /// enforced here so that [`validate`] can report on unphysical
    /// candidates; operations that require a physical state check for
    /// themselves.
    pub fn new(entries: DMatrix<T>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::Dimension {
                expected: rows + (rows % 2),
                got: cols,
            });
        }
        let asym = worst_asymmetry(&entries);
        if asym > T::from_f64(SYMMETRY_RTOL).unwrap() {
            return Err(Error::NotSymmetric(asym.as_f64()));
        }
        Ok(Self {
            entries,
            n_modes: rows / 2,
        })
    }

    /// Diagonal covariance matrix from per-quadrature variances.
    pub fn from_diagonal(variances: &[T]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
            variances,
        )))
    }

    /// Assembles a two-mode matrix `[[A, C], [C^T, B]]` from 2x2 blocks.
    pub fn from_two_mode_blocks(a: &Matrix2<T>, c: &Matrix2<T>, b: &Matrix2<T>) -> Result<Self> {
        let mut m = DMatrix::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(a);
        m.view_mut((0, 2), (2, 2)).copy_from(c);
        m.view_mut((2, 0), (2, 2)).copy_from(&c.transpose());
        m.view_mut((2, 2), (2, 2)).copy_from(b);
        Self::new(m)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Side length `2N`.
    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn entries(&self) -> &DMatrix<T> {
        &self.entries
    }

    /// 2x2 block coupling modes `i` (rows) and `j` (columns).
    pub fn block(&self, i: usize, j: usize) -> Matrix2<T> {
        assert!(i < self.n_modes && j < self.n_modes, "mode out of range");
        self.entries.fixed_view::<2, 2>(2 * i, 2 * j).into_owned()
    }

    /// Single-mode reduced covariance matrix (discard all other modes).
    pub fn reduced(&self, mode: usize) -> Result<Self> {
        if mode >= self.n_modes {
            return Err(Error::ModeCount {
                expected: self.n_modes,
                got: mode,
            });
        }
        Self::new(DMatrix::from_fn(2, 2, |r, c| {
            self.entries[(2 * mode + r, 2 * mode + c)]
        }))
    }
}

fn worst_asymmetry<T: Real>(m: &DMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            let scale = T::one().max(m[(i, j)].abs());
            let gap = (m[(i, j)] - m[(j, i)]).abs() / scale;
            worst = worst.max(gap);
        }
    }
    worst
}

/// Symplectic spectrum `nu_1 <= ... <= nu_N` of a covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum<T: Real> {
    eigenvalues: Vec<T>,
}

impl<T: Real> SymplecticSpectrum<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn smallest(&self) -> T {
        self.eigenvalues[0]
    }
}

/// Symplectic eigenvalues: the `N` positive square roots of the spectrum of
/// `-(Omega sigma)^2`, sorted ascending.
///
/// `-(Omega sigma)^2 = (-Omega sigma Omega) sigma` is a product of two
/// symmetric positive-definite matrices, so with `sigma = L L^T` it is
/// similar to the symmetric matrix `L^T (-Omega sigma Omega) L`, which is
/// what gets handed to the eigensolver (the similarity transform doubles as
/// the symmetrization of the result).
pub fn symplectic_eigenvalues<T: Real>(cov: &CovarianceMatrix<T>) -> Result<SymplecticSpectrum<T>> {
    let sigma = cov.entries();
    let omega = symplectic_form::<T>(cov.n_modes());

    let chol = sigma.clone().cholesky().ok_or_else(|| {
        let min_eig = min_symmetric_eigenvalue(sigma);
        Error::NotPositiveDefinite(min_eig.as_f64())
    })?;
    let l = chol.l();

    // G = -Omega sigma Omega is symmetric positive definite.
    let g = -(&omega * sigma * &omega);
    let mut m = l.transpose() * g * &l;
    let mt = m.transpose();
    m = (m + mt) * T::half();

    let mut nu_squared: Vec<T> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    nu_squared.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));

    // Each symplectic eigenvalue shows up twice; average the pairs.
    let eigenvalues = nu_squared
        .chunks_exact(2)
        .map(|pair| (pair[0].max(T::zero()).sqrt() + pair[1].max(T::zero()).sqrt()) * T::half())
        .collect();
    Ok(SymplecticSpectrum { eigenvalues })
}

fn min_symmetric_eigenvalue<T: Real>(m: &DMatrix<T>) -> T {
    let sym = (m + m.transpose()) * T::half();
    sym.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(T::max_value().unwrap(), |acc, e| acc.min(e))
}

/// Smallest symplectic eigenvalue after partial transposition of the second
/// mode (negate the `p2` row and column). The state is NPT-entangled iff the
/// returned value is below `1/2`.
pub fn ppt_smallest_eigenvalue<T: Real>(cov: &CovarianceMatrix<T>) -> Result<T> {
    if cov.n_modes() != 2 {
        return Err(Error::ModeCount {
            expected: 2,
            got: cov.n_modes(),
        });
    }
    let mut pt = cov.entries().clone();
    for k in 0..4 {
        pt[(3, k)] = -pt[(3, k)];
        pt[(k, 3)] = -pt[(k, 3)];
    }

    // Two-mode closed form from the symplectic invariants
    //   Delta = det A + det B + 2 det C,   nu^2 = (Delta -+ sqrt(Delta^2 - 4 det sigma)) / 2,
    // written as 2 det sigma / (Delta + sqrt(...)) so the small root keeps
    // full relative accuracy at strong squeezing, where the generic
    // eigensolve of -(Omega sigma)^2 loses it to the dynamic range.
    let a = pt.fixed_view::<2, 2>(0, 0).into_owned();
    let b = pt.fixed_view::<2, 2>(2, 2).into_owned();
    let c = pt.fixed_view::<2, 2>(0, 2).into_owned();
    let delta = a.determinant() + b.determinant() + lit::<T>(2.0) * c.determinant();
    let det = pt.determinant();
    if det <= T::zero() || delta <= T::zero() {
        return Err(Error::NotPositiveDefinite(det.as_f64()));
    }
    let disc = (delta * delta - lit::<T>(4.0) * det).max(T::zero());
    let nu_minus_sq = lit::<T>(2.0) * det / (delta + disc.sqrt());
    Ok(nu_minus_sq.sqrt())
}

/// Von Neumann entropy contribution of one mode with symplectic eigenvalue
/// `nu`: `f(nu) = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2)`, with
/// `f(1/2) = 0` by continuity.
pub fn single_mode_entropy<T: Real>(nu: T) -> T {
    let half = T::half();
    if nu <= half {
        return T::zero();
    }
    let plus = nu + half;
    let minus = nu - half;
    plus * plus.ln() - minus * minus.ln()
}

/// Von Neumann entropy of a Gaussian state with covariance `cov`, in nats.
///
/// Eigenvalues inside `[1/2 - SYMPLECTIC_ATOL, 1/2]` are clamped to `1/2`
/// before evaluating the entropy so roundoff at purity cannot produce NaN.
pub fn von_neumann_entropy<T: Real>(cov: &CovarianceMatrix<T>) -> Result<T> {
    let atol = T::from_f64(SYMPLECTIC_ATOL).unwrap();
    let spectrum = symplectic_eigenvalues(cov)?;
    let mut total = T::zero();
    for &nu in spectrum.eigenvalues() {
        if nu < T::half() - atol {
            return Err(Error::BelowVacuumBound(nu.as_f64()));
        }
        total += single_mode_entropy(nu.max(T::half()));
    }
    Ok(total)
}

/// Outcome of one validation check: `pass` plus the worst observed margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check<T> {
    pub pass: bool,
    pub margin: T,
}

/// Report of the three physicality checks.
///
/// Margins: worst relative asymmetry for `symmetry`; minimum ordinary
/// eigenvalue for `positive_definite`; `min_k nu_k - 1/2` for
/// `symplectic_bound` (NaN when it cannot be evaluated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport<T> {
    pub symmetry: Check<T>,
    pub positive_definite: Check<T>,
    pub symplectic_bound: Check<T>,
}

impl<T: Real> ValidationReport<T> {
    pub fn is_physical(&self) -> bool {
        self.symmetry.pass && self.positive_definite.pass && self.symplectic_bound.pass
    }
}

/// Checks symmetry, positive definiteness and the symplectic bound.
/// Reports, never errors.
pub fn validate<T: Real>(cov: &CovarianceMatrix<T>) -> ValidationReport<T> {
    validate_matrix(cov.entries())
}

/// [`validate`] on a raw square matrix that need not pass the
/// [`CovarianceMatrix`] constructor.
pub fn validate_matrix<T: Real>(m: &DMatrix<T>) -> ValidationReport<T> {
    let nan = T::from_f64(f64::NAN).unwrap();
    let asym = worst_asymmetry(m);
    let symmetry = Check {
        pass: asym <= T::from_f64(SYMMETRY_RTOL).unwrap(),
        margin: asym,
    };

    if m.nrows() != m.ncols() || m.nrows() == 0 || m.nrows() % 2 != 0 {
        let fail = Check {
            pass: false,
            margin: nan,
        };
        return ValidationReport {
            symmetry: Check {
                pass: false,
                margin: nan,
            },
            positive_definite: fail,
            symplectic_bound: fail,
        };
    }

    let min_eig = min_symmetric_eigenvalue(m);
    let positive_definite = Check {
        pass: min_eig > T::zero(),
        margin: min_eig,
    };

    let sym = (m + m.transpose()) * T::half();
    let symplectic_bound = match CovarianceMatrix::new(sym).and_then(|c| symplectic_eigenvalues(&c))
    {
        Ok(spectrum) => {
            let margin = spectrum.smallest() - T::half();
            Check {
                pass: margin >= -T::from_f64(SYMPLECTIC_ATOL).unwrap(),
                margin,
            }
        }
        Err(_) => Check {
            pass: false,
            margin: nan,
        },
    };

    ValidationReport {
        symmetry,
        positive_definite,
        symplectic_bound,
    }
}
