//! Numerical evaluation of Slater, Laughlin, and Pfaffian trial states
//! built on the Vandermonde product V(z) = prod_{i<j}(z_i - z_j).
//!
//! Permutation behaviour must be exact (a coordinate swap reorders an
//! identical multiset of factors), so the product and the Gaussian exponent
//! are both accumulated in a canonical order with the sign tracked
//! separately: the floating-point result is then bit-identical up to the
//! tracked sign under any permutation of the coordinates.

use nalgebra::DMatrix;
use num::complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LaughlinError {
    #[error("magnetic length must be positive (got {0})")]
    InvalidMagneticLength(f64),
    #[error("matrix is not antisymmetric: |A + A^T| deviation {0:e}")]
    NotAntisymmetric(f64),
    #[error("pfaffian requires even dimension (got {0})")]
    OddDimension(usize),
    #[error("pfaffian expansion limited to dimension <= 12 (got {0})")]
    DimensionCap(usize),
    #[error("pfaffian state requires distinct coordinates")]
    CoincidentPoints,
    #[error("pfaffian state requires an even particle number (got {0})")]
    OddParticleNumber(usize),
}

/// Particle positions z_i in the plane plus the magnetic length.
#[derive(Debug, Clone)]
pub struct ParticleConfig {
    pub coordinates: Vec<Complex64>,
    magnetic_length: f64,
}

impl ParticleConfig {
    pub fn new(coordinates: Vec<Complex64>, magnetic_length: f64) -> Result<Self, LaughlinError> {
        if !(magnetic_length > 0.0) {
            return Err(LaughlinError::InvalidMagneticLength(magnetic_length));
        }
        Ok(ParticleConfig {
            coordinates,
            magnetic_length,
        })
    }

    pub fn magnetic_length(&self) -> f64 {
        self.magnetic_length
    }

    pub fn len(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coordinates.is_empty()
    }
}

fn canonical_order(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Multiset product of the pair differences in a canonical order, with the
/// orientation sign of each factor tracked as an integer. Permuting the
/// inputs changes only the tracked sign.
fn canonical_pair_product(zs: &[Complex64]) -> Complex64 {
    let n = zs.len();
    let mut sign = 1.0f64;
    let mut factors: Vec<Complex64> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut f = zs[i] - zs[j];
            if f.re < 0.0 || (f.re == 0.0 && f.im < 0.0) {
                f = -f;
                sign = -sign;
            }
            factors.push(f);
        }
    }
    factors.sort_by(canonical_order);
    let mut acc = Complex64::new(sign, 0.0);
    for f in factors {
        acc *= f;
    }
    acc
}

/// Gaussian exponent sum accumulated in sorted order so it is invariant
/// under coordinate permutations.
fn gaussian_factor(cfg: &ParticleConfig) -> f64 {
    let mut mags: Vec<f64> = cfg.coordinates.iter().map(|z| z.norm_sqr()).collect();
    mags.sort_by(|a, b| a.total_cmp(b));
    let total: f64 = mags.iter().sum();
    (-total / (4.0 * cfg.magnetic_length * cfg.magnetic_length)).exp()
}

/// V(z_1, ..., z_n) = prod_{i<j}(z_i - z_j); the empty product is 1.
pub fn vandermonde_eval(cfg: &ParticleConfig) -> Complex64 {
    if cfg.len() < 2 {
        return Complex64::new(1.0, 0.0);
    }
    canonical_pair_product(&cfg.coordinates)
}

/// Determinant form of the same quantity: det[z_j^{n-i}] with descending
/// powers down the rows, which matches the product with sign +1.
pub fn vandermonde_det_oracle(cfg: &ParticleConfig) -> Complex64 {
    let n = cfg.len();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let m = DMatrix::from_fn(n, n, |i, j| cfg.coordinates[j].powu((n - 1 - i) as u32));
    m.determinant()
}

/// V(z) e^{-sum |z_i|^2 / 4 l^2}.
pub fn slater_eval(cfg: &ParticleConfig) -> Complex64 {
    vandermonde_eval(cfg) * gaussian_factor(cfg)
}

/// V(z)^p e^{-sum |z_i|^2 / 4 l^2}.
pub fn laughlin_eval(cfg: &ParticleConfig, p: u32) -> Complex64 {
    vandermonde_eval(cfg).powu(p) * gaussian_factor(cfg)
}

/// Pfaffian of an even-dimensional antisymmetric matrix by recursive
/// first-row expansion: Pf(A) = sum_{j>0} (-1)^j a_{0j} Pf(A_{0,j removed}).
pub fn pfaffian(a: &DMatrix<Complex64>) -> Result<Complex64, LaughlinError> {
    let n = a.nrows();
    if n != a.ncols() || n % 2 != 0 {
        return Err(LaughlinError::OddDimension(n));
    }
    if n > 12 {
        return Err(LaughlinError::DimensionCap(n));
    }
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            defect = defect.max((a[(i, j)] + a[(j, i)]).norm());
        }
    }
    if defect > 1e-12 {
        return Err(LaughlinError::NotAntisymmetric(defect));
    }
    Ok(pfaffian_rec(a, &(0..n).collect::<Vec<_>>()))
}

fn pfaffian_rec(a: &DMatrix<Complex64>, live: &[usize]) -> Complex64 {
    if live.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let first = live[0];
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &j) in live.iter().enumerate().skip(1) {
        let entry = a[(first, j)];
        if entry.norm() == 0.0 {
            continue;
        }
        let rest: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&r| r != first && r != j)
            .collect();
        // removing live[0] and live[k]: sign (-1)^{k+1} in 0-based indexing
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc += entry * pfaffian_rec(a, &rest) * sign;
    }
    acc
}

/// Polynomial part Pf(1/(z_i - z_j)) * V(z)^p of the Pfaffian state; exposed
/// separately so the pure homogeneity (degree p*n(n-1)/2 - n/2) can be
/// tested without the Gaussian envelope.
pub fn pfaffian_state_polynomial(
    coordinates: &[Complex64],
    p: u32,
) -> Result<Complex64, LaughlinError> {
    let n = coordinates.len();
    if n % 2 != 0 {
        return Err(LaughlinError::OddParticleNumber(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if coordinates[i] == coordinates[j] {
                return Err(LaughlinError::CoincidentPoints);
            }
        }
    }
    let kernel = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(0.0, 0.0)
        } else {
            1.0 / (coordinates[i] - coordinates[j])
        }
    });
    let pf = pfaffian(&kernel)?;
    Ok(pf * canonical_pair_product(coordinates).powu(p))
}

/// Pf(1/(z_i - z_j)) V(z)^p e^{-sum|z_i|^2/4l^2}.
pub fn pfaffian_state_eval(cfg: &ParticleConfig, p: u32) -> Result<Complex64, LaughlinError> {
    Ok(pfaffian_state_polynomial(&cfg.coordinates, p)? * gaussian_factor(cfg))
}
