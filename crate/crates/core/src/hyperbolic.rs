//! Upper half-plane isometries, the hyperbolic area 2-cocycle, and the
//! magnetic phases attached to the potential eta = theta * dx / y:
//!
//!   phi_gamma(x) = integral from x0 to x of (gamma* eta - eta)
//!   sigma(gamma, gamma') = exp(-i * phi_{gamma'}(gamma x0))
//!   psi_g(x) = sum_j phi_{gamma_j}(x_{sigma(j)})
//!   sigma_n(g, g') = exp(-i * psi_{g'}(g x0^n))
//!
//! All maps are kept normalized to det = 1; phases are computed by composite
//! Simpson quadrature along Euclidean segments (the integrand is closed, so
//! the path does not matter, and a segment between half-plane points stays in
//! the half-plane).

use num::complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HypError {
    #[error("numeric domain violation: {0}")]
    NumericDomain(String),
    #[error("angle sum 1/{0} + 1/{1} + 1/{2} is not < 1: not hyperbolic")]
    NotHyperbolic(u64, u64, u64),
    #[error("wreath isometry sizes disagree")]
    SizeMismatch,
    #[error("cannot parse generator word: {0}")]
    WordParse(String),
    #[error("word length {0} exceeds cap {1}")]
    WordTooLong(usize, usize),
}

pub const WORD_LENGTH_CAP: usize = 12;

/// Real Moebius transformation z -> (az+b)/(cz+d), stored with ad - bc = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MoebiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MoebiusMap {
    /// Normalizes to determinant 1. The determinant must be positive
    /// (orientation-preserving) and finite.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, HypError> {
        let det = a * d - b * c;
        if !det.is_finite() || det <= 0.0 {
            return Err(HypError::NumericDomain(format!(
                "determinant {det} must be positive"
            )));
        }
        let s = det.sqrt();
        Ok(MoebiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// self then... composition as maps: (self.compose(g))(z) = self(g(z)).
    pub fn compose(&self, g: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * g.a + self.b * g.c,
            b: self.a * g.b + self.b * g.d,
            c: self.c * g.a + self.d * g.c,
            d: self.c * g.b + self.d * g.d,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, k: u32) -> MoebiusMap {
        let mut acc = MoebiusMap::identity();
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Frobenius distance to the nearer of +I and -I (PSL(2,R) identity).
    pub fn residual_pm_identity(&self) -> f64 {
        let d = |s: f64| {
            ((self.a - s).powi(2)
                + self.b.powi(2)
                + self.c.powi(2)
                + (self.d - s).powi(2))
            .sqrt()
        };
        d(1.0).min(d(-1.0))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.residual_pm_identity() <= tol
    }

    fn apply_complex(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Derivative 1/(cz+d)^2 (valid for det = 1).
    fn derivative(&self, z: Complex64) -> Complex64 {
        let den = self.c * z + self.d;
        1.0 / (den * den)
    }
}

/// A point of the upper half-plane (Im > 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HPoint {
    pub z: Complex64,
}

impl HPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, HypError> {
        if !(im > 0.0 && im.is_finite() && re.is_finite()) {
            return Err(HypError::NumericDomain(format!(
                "point {re} + {im}i is not in the upper half-plane"
            )));
        }
        Ok(HPoint {
            z: Complex64::new(re, im),
        })
    }
}

/// Magnetic potential data: eta = field_strength * dx / y, with the phase
/// base point and quadrature resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagneticData {
    pub field_strength: f64,
    pub base_point: HPoint,
    pub quadrature_steps: usize,
}

impl MagneticData {
    pub fn new(
        field_strength: f64,
        base_point: HPoint,
        quadrature_steps: usize,
    ) -> Result<Self, HypError> {
        if quadrature_steps < 16 {
            return Err(HypError::NumericDomain(format!(
                "quadrature_steps {quadrature_steps} < 16"
            )));
        }
        Ok(MagneticData {
            field_strength,
            base_point,
            quadrature_steps,
        })
    }
}

pub fn mobius_apply(m: &MoebiusMap, z: &HPoint) -> Result<HPoint, HypError> {
    let w = m.apply_complex(z.z);
    if !(w.im > 0.0 && w.im.is_finite()) {
        return Err(HypError::NumericDomain(format!(
            "image {w} left the upper half-plane"
        )));
    }
    Ok(HPoint { z: w })
}

/// Vertices (A, B, C) of the hyperbolic triangle with angles
/// (pi/p, pi/q, pi/r), A at i, side AB on the imaginary axis, C at Re > 0.
/// Side lengths come from the hyperbolic law of cosines
/// cosh(AB) = (cos A cos B + cos C) / (sin A sin B).
pub fn triangle_vertices(p: u64, q: u64, r: u64) -> Result<(HPoint, HPoint, HPoint), HypError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(HypError::NumericDomain("cone orders must be >= 2".into()));
    }
    let (fp, fq, fr) = (p as f64, q as f64, r as f64);
    if 1.0 / fp + 1.0 / fq + 1.0 / fr >= 1.0 {
        return Err(HypError::NotHyperbolic(p, q, r));
    }
    let alpha = std::f64::consts::PI / fp;
    let beta = std::f64::consts::PI / fq;
    let gamma = std::f64::consts::PI / fr;

    let cosh_ab = (alpha.cos() * beta.cos() + gamma.cos()) / (alpha.sin() * beta.sin());
    let cosh_ac = (alpha.cos() * gamma.cos() + beta.cos()) / (alpha.sin() * gamma.sin());
    let a_pt = HPoint::new(0.0, 1.0)?;
    let b_pt = HPoint::new(0.0, cosh_ab.acosh().exp())?;

    // Geodesic AC leaves A = i with tangent direction pi/2 - alpha (tilted
    // toward x > 0): circle centered at (cot(alpha), 0) through i.
    let xc = 1.0 / alpha.tan();
    let radius = (xc * xc + 1.0).sqrt();
    let theta_a = 1.0f64.atan2(-xc);
    // Arc length from angle t0 to t is |ln tan(t/2) - ln tan(t0/2)|;
    // C sits at hyperbolic distance AC from A toward decreasing angle.
    let theta_c = 2.0 * ((theta_a / 2.0).tan() * (-cosh_ac.acosh()).exp()).atan();
    let c_pt = HPoint::new(xc + radius * theta_c.cos(), radius * theta_c.sin())?;
    Ok((a_pt, b_pt, c_pt))
}

/// Anti-holomorphic reflection z -> (a zbar + b)/(c zbar + d) in a geodesic;
/// the product of two reflections is the ordinary Moebius map with matrix
/// product M1 * M2 (the conjugations cancel because the entries are real).
#[derive(Debug, Clone, Copy)]
struct Reflection {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Reflection {
    /// Reflection in the vertical geodesic x = x0.
    fn vertical(x0: f64) -> Self {
        Reflection {
            a: -1.0,
            b: 2.0 * x0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Reflection in the semicircular geodesic |z - x0| = r.
    fn circle(x0: f64, r: f64) -> Self {
        Reflection {
            a: x0,
            b: r * r - x0 * x0,
            c: 1.0,
            d: -x0,
        }
    }

    /// Reflection in the geodesic through two half-plane points.
    fn through(p: Complex64, q: Complex64) -> Result<Self, HypError> {
        let dx = q.re - p.re;
        if dx.abs() < 1e-12 * (1.0 + p.norm() + q.norm()) {
            return Ok(Reflection::vertical(p.re));
        }
        let x0 = (q.norm_sqr() - p.norm_sqr()) / (2.0 * dx);
        let r = (p - x0).norm();
        Ok(Reflection::circle(x0, r))
    }

    fn compose(&self, other: &Reflection) -> Result<MoebiusMap, HypError> {
        MoebiusMap::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }
}

/// Elliptic generators (c1, c2, c3) of orders (p, q, r) with c1 c2 c3 = 1 in
/// PSL(2,R): products of reflections in the sides of the triangle from
/// `triangle_vertices`, so the relation telescopes exactly.
pub fn triangle_group(p: u64, q: u64, r: u64) -> Result<[MoebiusMap; 3], HypError> {
    let (a_pt, b_pt, c_pt) = triangle_vertices(p, q, r)?;
    let s_c = Reflection::vertical(0.0); // side AB
    let s_b = Reflection::through(a_pt.z, c_pt.z)?; // side AC
    let s_a = Reflection::through(b_pt.z, c_pt.z)?; // side BC
    let c1 = s_b.compose(&s_c)?; // fixes A, rotation by 2*pi/p
    let c2 = s_c.compose(&s_a)?; // fixes B
    let c3 = s_a.compose(&s_b)?; // fixes C
    Ok([c1, c2, c3])
}

/// Unit tangent at `v` of the geodesic from `v` toward `p`; None when the
/// points coincide (no direction).
fn tangent_dir(v: Complex64, p: Complex64) -> Option<Complex64> {
    let scale = 1.0 + v.norm() + p.norm();
    if (p - v).norm() < 1e-14 * scale {
        return None;
    }
    let dx = p.re - v.re;
    if dx.abs() < 1e-14 * scale {
        let s = (p.im - v.im).signum();
        return Some(Complex64::new(0.0, s));
    }
    let x0 = (p.norm_sqr() - v.norm_sqr()) / (2.0 * dx);
    let radial = v - x0;
    let ccw = Complex64::new(0.0, 1.0) * radial / radial.norm();
    // Moving counterclockwise increases arg(z - x0); head toward p.
    let theta_v = radial.arg();
    let theta_p = (p - x0).arg();
    if theta_p > theta_v {
        Some(ccw)
    } else {
        Some(-ccw)
    }
}

fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Signed hyperbolic area of the geodesic triangle (z1, z2, z3):
/// |area| = pi - (sum of interior angles), the angles read off from tangent
/// directions; the sign comes from the cyclic order of the tangents.
/// Degenerate triples give 0.
pub fn triangle_area(z1: &HPoint, z2: &HPoint, z3: &HPoint) -> f64 {
    let v = [z1.z, z2.z, z3.z];
    let mut angle_sum = 0.0;
    let mut best_cross = 0.0f64;
    for i in 0..3 {
        let to_next = tangent_dir(v[i], v[(i + 1) % 3]);
        let to_prev = tangent_dir(v[i], v[(i + 2) % 3]);
        let (Some(tn), Some(tp)) = (to_next, to_prev) else {
            return 0.0; // repeated vertex
        };
        let c = cross(tn, tp);
        let dot = tn.re * tp.re + tn.im * tp.im;
        angle_sum += c.abs().atan2(dot);
        if c.abs() > best_cross.abs() {
            best_cross = c;
        }
    }
    let area = (std::f64::consts::PI - angle_sum).max(0.0);
    if best_cross == 0.0 {
        return 0.0; // collinear
    }
    area * best_cross.signum()
}

/// Signed area of the geodesic triangle (z0, g1^{-1} z0, g2 z0) — the group
/// 2-cocycle given by the hyperbolic area form.
pub fn area_cocycle(g1: &MoebiusMap, g2: &MoebiusMap, z0: &HPoint) -> Result<f64, HypError> {
    let p = mobius_apply(&g1.inverse(), z0)?;
    let q = mobius_apply(g2, z0)?;
    Ok(triangle_area(z0, &p, &q))
}

/// Simpson integral of (M* eta - eta) along the Euclidean segment from
/// `from` to `to`, eta = field_strength * dx / y.
fn segment_integral(
    m: &MoebiusMap,
    from: Complex64,
    to: Complex64,
    data: &MagneticData,
) -> Result<f64, HypError> {
    let steps = data.quadrature_steps + data.quadrature_steps % 2;
    let w = to - from;
    let integrand = |t: f64| -> Result<f64, HypError> {
        let z = from + t * w;
        if z.im <= 0.0 {
            return Err(HypError::NumericDomain("path left the half-plane".into()));
        }
        let mz = m.apply_complex(z);
        if mz.im <= 0.0 {
            return Err(HypError::NumericDomain(
                "map image left the half-plane".into(),
            ));
        }
        let pulled = (m.derivative(z) * w).re / mz.im;
        let plain = w.re / z.im;
        Ok(data.field_strength * (pulled - plain))
    };
    let h = 1.0 / steps as f64;
    let mut acc = integrand(0.0)? + integrand(1.0)?;
    for k in 1..steps {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * integrand(k as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// phi_M(x): line integral of M* eta - eta from the base point to x.
pub fn magnetic_phase(m: &MoebiusMap, x: &HPoint, data: &MagneticData) -> Result<f64, HypError> {
    segment_integral(m, data.base_point.z, x.z, data)
}

/// Same integral along a polyline (for path-independence checks).
pub fn magnetic_phase_polyline(
    m: &MoebiusMap,
    waypoints: &[HPoint],
    data: &MagneticData,
) -> Result<f64, HypError> {
    let mut acc = 0.0;
    let mut prev = data.base_point.z;
    for p in waypoints {
        acc += segment_integral(m, prev, p.z, data)?;
        prev = p.z;
    }
    Ok(acc)
}

/// sigma(g, g') = exp(-i phi_{g'}(g x0)), a multiplier of modulus 1.
pub fn multiplier_sigma(
    g: &MoebiusMap,
    gp: &MoebiusMap,
    data: &MagneticData,
) -> Result<Complex64, HypError> {
    let gx0 = mobius_apply(g, &data.base_point)?;
    let phi = magnetic_phase(gp, &gx0, data)?;
    Ok(Complex64::new(0.0, -phi).exp())
}

/// Element (gamma_1, ..., gamma_n; sigma) of Gamma^n x| S_n acting on H^n by
/// (w.x)_i = gamma_i(x_{sigma(i)}), the same convention as `WreathElement`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WreathIsometry {
    pub maps: Vec<MoebiusMap>,
    pub perm: Vec<usize>,
}

impl WreathIsometry {
    pub fn new(maps: Vec<MoebiusMap>, perm: Vec<usize>) -> Result<Self, HypError> {
        if maps.len() != perm.len() {
            return Err(HypError::SizeMismatch);
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(HypError::SizeMismatch);
            }
            seen[p] = true;
        }
        Ok(WreathIsometry { maps, perm })
    }

    pub fn identity(n: usize) -> Self {
        WreathIsometry {
            maps: vec![MoebiusMap::identity(); n],
            perm: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// (g; sigma)(h; tau) = (g_i h_{sigma(i)}; sigma tau), permutations
    /// composed left-to-right.
    pub fn multiply(&self, other: &WreathIsometry) -> Result<WreathIsometry, HypError> {
        let n = self.n();
        if other.n() != n {
            return Err(HypError::SizeMismatch);
        }
        let maps = (0..n)
            .map(|i| self.maps[i].compose(&other.maps[self.perm[i]]))
            .collect();
        let perm = (0..n).map(|i| other.perm[self.perm[i]]).collect();
        Ok(WreathIsometry { maps, perm })
    }

    pub fn inverse(&self) -> WreathIsometry {
        let n = self.n();
        let mut inv_perm = vec![0usize; n];
        for i in 0..n {
            inv_perm[self.perm[i]] = i;
        }
        let maps = (0..n).map(|i| self.maps[inv_perm[i]].inverse()).collect();
        WreathIsometry {
            maps,
            perm: inv_perm,
        }
    }

    pub fn act(&self, x: &[HPoint]) -> Result<Vec<HPoint>, HypError> {
        let n = self.n();
        if x.len() != n {
            return Err(HypError::SizeMismatch);
        }
        (0..n)
            .map(|i| mobius_apply(&self.maps[i], &x[self.perm[i]]))
            .collect()
    }
}

/// psi_g(x) = sum_j phi_{gamma_j}(x_{sigma(j)}).
pub fn wreath_phase(
    w: &WreathIsometry,
    x: &[HPoint],
    data: &MagneticData,
) -> Result<f64, HypError> {
    if x.len() != w.n() {
        return Err(HypError::SizeMismatch);
    }
    let mut acc = 0.0;
    for j in 0..w.n() {
        acc += magnetic_phase(&w.maps[j], &x[w.perm[j]], data)?;
    }
    Ok(acc)
}

/// sigma_n(g, g') = exp(-i psi_{g'}(g x0^n)) with x0^n the diagonal base
/// point. Reduces to `multiplier_sigma` at n = 1.
pub fn multiplier_sigma_n(
    w: &WreathIsometry,
    wp: &WreathIsometry,
    data: &MagneticData,
) -> Result<Complex64, HypError> {
    if w.n() != wp.n() {
        return Err(HypError::SizeMismatch);
    }
    let x0n = vec![data.base_point; w.n()];
    let gx0 = w.act(&x0n)?;
    let psi = wreath_phase(wp, &gx0, data)?;
    Ok(Complex64::new(0.0, -psi).exp())
}

/// Magnetic translation (T_h f)(x) = exp(-i psi_h(h^{-1} x)) f(h^{-1} x);
/// these satisfy T_{g'} T_g = sigma_n(g, g') T_{g'g}.
pub fn magnetic_translation(
    h: &WreathIsometry,
    f: &dyn Fn(&[HPoint]) -> Complex64,
    x: &[HPoint],
    data: &MagneticData,
) -> Result<Complex64, HypError> {
    let hinv_x = h.inverse().act(x)?;
    let psi = wreath_phase(h, &hinv_x, data)?;
    Ok(Complex64::new(0.0, -psi).exp() * f(&hinv_x))
}

/// Evaluates a word over `c1,c2,c3` (with `'` for inverse, separators
/// optional) against the three generators, left to right. Length-capped to
/// bound numeric drift.
pub fn evaluate_word(word: &str, gens: &[MoebiusMap; 3]) -> Result<MoebiusMap, HypError> {
    let mut acc = MoebiusMap::identity();
    let mut count = 0usize;
    let mut chars = word.chars().peekable();
    while let Some(ch) = chars.next() {
        if ch.is_whitespace() || ch == ',' || ch == '.' || ch == '*' {
            continue;
        }
        if ch != 'c' {
            return Err(HypError::WordParse(format!(
                "unexpected character {ch:?} in {word:?}"
            )));
        }
        let idx = match chars.next() {
            Some(d @ '1'..='3') => d as usize - '1' as usize,
            other => {
                return Err(HypError::WordParse(format!(
                    "expected generator index 1-3, got {other:?}"
                )))
            }
        };
        let inverted = matches!(chars.peek(), Some('\''));
        if inverted {
            chars.next();
        }
        count += 1;
        if count > WORD_LENGTH_CAP {
            return Err(HypError::WordTooLong(count, WORD_LENGTH_CAP));
        }
        let g = if inverted {
            gens[idx].inverse()
        } else {
            gens[idx]
        };
        acc = acc.compose(&g);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PI: f64 = std::f64::consts::PI;

    fn data(theta: f64, steps: usize) -> MagneticData {
        MagneticData::new(theta, HPoint::new(0.0, 1.0).unwrap(), steps).unwrap()
    }

    fn random_word(rng: &mut ChaCha8Rng, gens: &[MoebiusMap; 3], len: usize) -> MoebiusMap {
        let mut acc = MoebiusMap::identity();
        for _ in 0..len {
            let g = gens[rng.gen_range(0..3)];
            let g = if rng.gen_bool(0.5) { g.inverse() } else { g };
            acc = acc.compose(&g);
        }
        acc
    }

    fn random_point(rng: &mut ChaCha8Rng) -> HPoint {
        HPoint::new(rng.gen_range(-1.5..1.5), rng.gen_range(0.4..2.5)).unwrap()
    }

    #[test]
    fn mobius_apply_examples() {
        let i = HPoint::new(0.0, 1.0).unwrap();
        let id = MoebiusMap::identity();
        assert_eq!(mobius_apply(&id, &i).unwrap().z, i.z);

        let shift = MoebiusMap::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(
            mobius_apply(&shift, &i).unwrap().z,
            Complex64::new(1.0, 1.0)
        );

        let inv = MoebiusMap::new(0.0, -1.0, 1.0, 0.0).unwrap();
        let z = HPoint::new(0.0, 2.0).unwrap();
        let w = mobius_apply(&inv, &z).unwrap().z;
        assert!((w - Complex64::new(0.0, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn nonpositive_determinant_rejected() {
        assert!(MoebiusMap::new(1.0, 0.0, 0.0, -1.0).is_err());
        assert!(MoebiusMap::new(1.0, 2.0, 2.0, 4.0).is_err());
    }

    #[test]
    fn triangle_group_relations() {
        for (p, q, r) in [(2u64, 3u64, 7u64), (3, 3, 4), (2, 4, 5)] {
            let [c1, c2, c3] = triangle_group(p, q, r).unwrap();
            let prod = c1.compose(&c2).compose(&c3);
            assert!(
                prod.residual_pm_identity() <= 1e-9,
                "({p},{q},{r}) long relation residual {}",
                prod.residual_pm_identity()
            );
            for (c, ord) in [(c1, p), (c2, q), (c3, r)] {
                let res = c.pow(ord as u32).residual_pm_identity();
                assert!(res <= 1e-9, "({p},{q},{r}) torsion residual {res}");
            }
        }
    }

    #[test]
    fn spherical_signature_rejected() {
        assert!(matches!(
            triangle_group(2, 3, 5),
            Err(HypError::NotHyperbolic(2, 3, 5))
        ));
        assert!(matches!(
            triangle_group(2, 2, 100),
            Err(HypError::NotHyperbolic(..))
        ));
    }

    #[test]
    fn area_collinear_zero() {
        let z1 = HPoint::new(0.0, 1.0).unwrap();
        let z2 = HPoint::new(0.0, 2.0).unwrap();
        let z3 = HPoint::new(0.0, 5.0).unwrap();
        assert_eq!(triangle_area(&z1, &z2, &z3), 0.0);
        // three points on the unit-circle geodesic
        let on = |t: f64| HPoint::new(t.cos(), t.sin()).unwrap();
        let area = triangle_area(&on(0.5), &on(1.1), &on(2.2));
        assert!(area.abs() < 1e-9, "arc-collinear area {area}");
    }

    #[test]
    fn area_gauss_bonnet() {
        let (a, b, c) = triangle_vertices(2, 3, 7).unwrap();
        let area = triangle_area(&a, &b, &c);
        assert!(
            (area.abs() - PI / 42.0).abs() < 1e-9,
            "got {area}, want +-{}",
            PI / 42.0
        );
        let swapped = triangle_area(&b, &a, &c);
        assert!((area + swapped).abs() < 1e-12, "orientation not alternating");
    }

    #[test]
    fn area_isometry_invariance() {
        let gens = triangle_group(2, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let z1 = random_point(&mut rng);
            let z2 = random_point(&mut rng);
            let z3 = random_point(&mut rng);
            let len = rng.gen_range(1..=4);
            let m = random_word(&mut rng, &gens, len);
            let area = triangle_area(&z1, &z2, &z3);
            let moved = triangle_area(
                &mobius_apply(&m, &z1).unwrap(),
                &mobius_apply(&m, &z2).unwrap(),
                &mobius_apply(&m, &z3).unwrap(),
            );
            assert!(
                (area - moved).abs() < 1e-9,
                "invariance broke: {area} vs {moved}"
            );
        }
    }

    #[test]
    fn area_cocycle_properties() {
        let gens = triangle_group(2, 3, 7).unwrap();
        let z0 = HPoint::new(0.1, 1.3).unwrap();
        let id = MoebiusMap::identity();
        assert_eq!(area_cocycle(&id, &gens[0], &z0).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let lens: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=6)).collect();
            let g1 = random_word(&mut rng, &gens, lens[0]);
            let g2 = random_word(&mut rng, &gens, lens[1]);
            let g3 = random_word(&mut rng, &gens, lens[2]);
            let c = |a: &MoebiusMap, b: &MoebiusMap| area_cocycle(a, b, &z0).unwrap();
            let lhs = c(&g2, &g3) - c(&g1.compose(&g2), &g3) + c(&g1, &g2.compose(&g3))
                - c(&g1, &g2);
            assert!(lhs.abs() < 1e-9, "cocycle identity residual {lhs}");
            let v = c(&g1, &g2);
            assert!(v.abs() < PI, "area bound violated: {v}");
        }
    }

    #[test]
    fn phase_identity_map_zero() {
        let d = data(1.7, 64);
        let id = MoebiusMap::identity();
        for (re, im) in [(0.3, 0.8), (-1.0, 2.0), (2.0, 0.1)] {
            let x = HPoint::new(re, im).unwrap();
            assert_eq!(magnetic_phase(&id, &x, &d).unwrap(), 0.0);
        }
    }

    #[test]
    fn phase_path_independence() {
        let d = data(0.9, 512);
        let gens = triangle_group(2, 3, 7).unwrap();
        let m = gens[2];
        let x = HPoint::new(0.7, 0.9).unwrap();
        let direct = magnetic_phase(&m, &x, &d).unwrap();
        let mid = HPoint::new(-0.4, 2.1).unwrap();
        let two_leg = magnetic_phase_polyline(&m, &[mid, x], &d).unwrap();
        assert!(
            (direct - two_leg).abs() < 1e-8,
            "paths disagree: {direct} vs {two_leg}"
        );
    }

    #[test]
    fn phase_linear_in_field_strength() {
        let gens = triangle_group(3, 3, 4).unwrap();
        let x = HPoint::new(0.3, 1.4).unwrap();
        let p1 = magnetic_phase(&gens[0], &x, &data(0.8, 128)).unwrap();
        let p2 = magnetic_phase(&gens[0], &x, &data(1.6, 128)).unwrap();
        assert!((p2 - 2.0 * p1).abs() < 1e-12 * p1.abs().max(1.0));
    }

    #[test]
    fn phase_combination_constant() {
        // phi_g(x) + phi_{g'}(g x) - phi_{g'g}(x) is independent of x
        let d = data(1.3, 512);
        let gens = triangle_group(2, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_word(&mut rng, &gens, 3);
        let gp = random_word(&mut rng, &gens, 2);
        let gpg = gp.compose(&g);
        let combo = |x: &HPoint| -> f64 {
            let gx = mobius_apply(&g, x).unwrap();
            magnetic_phase(&g, x, &d).unwrap() + magnetic_phase(&gp, &gx, &d).unwrap()
                - magnetic_phase(&gpg, x, &d).unwrap()
        };
        let reference = combo(&HPoint::new(0.2, 1.1).unwrap());
        for _ in 0..10 {
            let x = random_point(&mut rng);
            assert!(
                (combo(&x) - reference).abs() < 1e-8,
                "combination not constant"
            );
        }
    }

    #[test]
    fn quadrature_order_two_convergence() {
        let gens = triangle_group(2, 3, 7).unwrap();
        let m = gens[1].compose(&gens[0]);
        let x = HPoint::new(0.8, 0.6).unwrap();
        let phi = |steps: usize| magnetic_phase(&m, &x, &data(1.0, steps)).unwrap();
        let (a, b, c) = (phi(32), phi(64), phi(128));
        let first = (a - b).abs();
        let second = (b - c).abs();
        assert!(
            second < first.max(1e-15) * 4.0,
            "no convergence: {first} then {second}"
        );
    }

    #[test]
    fn sigma_axioms() {
        let d = data(0.7, 256);
        let gens = triangle_group(2, 3, 7).unwrap();
        let id = MoebiusMap::identity();
        let one = Complex64::new(1.0, 0.0);
        assert!((multiplier_sigma(&gens[0], &id, &d).unwrap() - one).norm() < 1e-12);
        assert!((multiplier_sigma(&id, &gens[0], &d).unwrap() - one).norm() < 1e-12);

        let zero_field = data(0.0, 256);
        let s = multiplier_sigma(&gens[1], &gens[2], &zero_field).unwrap();
        assert!((s - one).norm() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let lens: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
            let g1 = random_word(&mut rng, &gens, lens[0]);
            let g2 = random_word(&mut rng, &gens, lens[1]);
            let g3 = random_word(&mut rng, &gens, lens[2]);
            let s = |a: &MoebiusMap, b: &MoebiusMap| multiplier_sigma(a, b, &d).unwrap();
            for val in [s(&g1, &g2), s(&g2, &g3)] {
                assert!((val.norm() - 1.0).abs() < 1e-12, "not unit modulus");
            }
            // products read left-to-right (gamma1 gamma2 = apply gamma1,
            // then gamma2), the same convention as the wreath product
            let lhs = s(&g1, &g2) * s(&g2.compose(&g1), &g3);
            let rhs = s(&g1, &g3.compose(&g2)) * s(&g2, &g3);
            assert!((lhs - rhs).norm() < 1e-8, "sigma cocycle axiom broke");
        }
    }

    fn random_wreath(rng: &mut ChaCha8Rng, gens: &[MoebiusMap; 3], n: usize) -> WreathIsometry {
        let maps = (0..n)
            .map(|_| {
                let len = rng.gen_range(1..=2);
                random_word(rng, gens, len)
            })
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        WreathIsometry::new(maps, perm).unwrap()
    }

    #[test]
    fn wreath_phase_basics() {
        let d = data(1.1, 256);
        let gens = triangle_group(2, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let xs: Vec<HPoint> = (0..3).map(|_| random_point(&mut rng)).collect();
        assert_eq!(
            wreath_phase(&WreathIsometry::identity(3), &xs, &d).unwrap(),
            0.0
        );

        // n = 1 reduction
        let g = random_word(&mut rng, &gens, 3);
        let w = WreathIsometry::new(vec![g], vec![0]).unwrap();
        let x = random_point(&mut rng);
        assert_eq!(
            wreath_phase(&w, &[x], &d).unwrap(),
            magnetic_phase(&g, &x, &d).unwrap()
        );
    }

    #[test]
    fn wreath_phase_combination_constant() {
        let d = data(0.8, 512);
        let gens = triangle_group(2, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let g = random_wreath(&mut rng, &gens, 2);
        let gp = random_wreath(&mut rng, &gens, 2);
        let gpg = gp.multiply(&g).unwrap();
        let combo = |x: &[HPoint]| -> f64 {
            let gx = g.act(x).unwrap();
            wreath_phase(&g, x, &d).unwrap() + wreath_phase(&gp, &gx, &d).unwrap()
                - wreath_phase(&gpg, x, &d).unwrap()
        };
        let base: Vec<HPoint> = (0..2).map(|_| random_point(&mut rng)).collect();
        let reference = combo(&base);
        for _ in 0..6 {
            let x: Vec<HPoint> = (0..2).map(|_| random_point(&mut rng)).collect();
            assert!((combo(&x) - reference).abs() < 1e-8);
        }
    }

    #[test]
    fn sigma_n_reductions() {
        let d = data(1.4, 256);
        let gens = triangle_group(2, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(83);

        let w = random_wreath(&mut rng, &gens, 2);
        let e = WreathIsometry::identity(2);
        let s = multiplier_sigma_n(&e, &w, &d).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let s = multiplier_sigma_n(&w, &e, &d).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        for _ in 0..10 {
            let g = random_word(&mut rng, &gens, 2);
            let gp = random_word(&mut rng, &gens, 2);
            let w1 = WreathIsometry::new(vec![g], vec![0]).unwrap();
            let w2 = WreathIsometry::new(vec![gp], vec![0]).unwrap();
            let sn = multiplier_sigma_n(&w1, &w2, &d).unwrap();
            let s1 = multiplier_sigma(&g, &gp, &d).unwrap();
            assert!((sn - s1).norm() < 1e-10, "n=1 reduction failed");
        }
    }

    #[test]
    fn magnetic_translation_law() {
        let d = data(0.9, 512);
        let gens = triangle_group(2, 3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        let f = |x: &[HPoint]| -> Complex64 {
            x.iter()
                .map(|p| (-((p.z - Complex64::new(0.3, 1.2)).norm_sqr())).exp()
                    * Complex64::new(0.0, 0.5 * p.z.re).exp())
                .product()
        };
        for _ in 0..5 {
            let g = random_wreath(&mut rng, &gens, 2);
            let gp = random_wreath(&mut rng, &gens, 2);
            let gpg = gp.multiply(&g).unwrap();
            let sigma = multiplier_sigma_n(&g, &gp, &d).unwrap();
            let x: Vec<HPoint> = (0..2).map(|_| random_point(&mut rng)).collect();
            // (T_{g'} (T_g f))(x)
            let inner = |y: &[HPoint]| magnetic_translation(&g, &f, y, &d).unwrap();
            let lhs = magnetic_translation(&gp, &inner, &x, &d).unwrap();
            let rhs = sigma * magnetic_translation(&gpg, &f, &x, &d).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-7,
                "translation law residual {}",
                (lhs - rhs).norm()
            );
        }
    }

    #[test]
    fn word_parsing() {
        let gens = triangle_group(2, 3, 7).unwrap();
        let w = evaluate_word("c1 c2' c3", &gens).unwrap();
        let manual = gens[0].compose(&gens[1].inverse()).compose(&gens[2]);
        assert!((w.a - manual.a).abs() < 1e-14);
        assert!(evaluate_word("c4", &gens).is_err());
        assert!(evaluate_word("x1", &gens).is_err());
        let too_long = "c1 ".repeat(13);
        assert!(matches!(
            evaluate_word(&too_long, &gens),
            Err(HypError::WordTooLong(..))
        ));
        // identity word
        let id = evaluate_word("c1 c1'", &gens).unwrap();
        assert!(id.residual_pm_identity() < 1e-12);
    }
}
