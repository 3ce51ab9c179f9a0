//! Deterministic, seedable integration over the unit ball and sphere of C^n
//! with respect to the normalized measures `dm`, `dsigma`, and the invariant
//! measure `dtau`.
//!
//! All estimators draw their randomness per sample index from a counter
//! construction, so a fixed [`QuadratureSpec`] yields a bit-identical
//! [`Estimate`] regardless of how the sample range is partitioned across
//! threads.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{herm_inner, Automorphism, Point};
use crate::rng::{substream, Stream};
use crate::stats::kahan_sum;
use crate::Result;

/// Integration rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Gauss–Legendre radial rule crossed with seeded sphere sampling.
    Product,
    MonteCarlo,
    QuasiMonteCarlo,
}

/// Everything needed to reproduce an integral estimate bit for bit.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub method: Method,
    pub samples: usize,
    pub seed: u64,
    /// Advisory only; estimators do not iterate to reach it.
    pub target_rel_tol: f64,
}

impl QuadratureSpec {
    /// Product rule for low dimensions, Monte Carlo above three.
    pub fn default_for(n: usize, samples: usize, seed: u64) -> Self {
        QuadratureSpec {
            method: if n <= 3 { Method::Product } else { Method::MonteCarlo },
            samples: samples.max(1),
            seed,
            target_rel_tol: 1e-3,
        }
    }

    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        QuadratureSpec {
            method: Method::MonteCarlo,
            samples: samples.max(1),
            seed,
            target_rel_tol: 1e-3,
        }
    }
}

/// An integral estimate with an error indicator.
///
/// For Monte Carlo rules `stderr` is the standard error of the sample mean;
/// for product and quasi-Monte Carlo rules it is the absolute difference
/// between two successive refinement levels.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub samples_used: usize,
}

const RADIAL_NODES_FINE: usize = 64;
const RADIAL_NODES_COARSE: usize = 32;

/// Fraction (plus a fixed headroom) of non-finite integrand evaluations the
/// Monte Carlo estimators tolerate before failing.
fn rejection_quota(samples: usize) -> usize {
    samples / 1000 + 8
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

fn sphere_coords(n: usize, stream: &mut Stream) -> Vec<Complex64> {
    loop {
        let mut coords = Vec::with_capacity(n);
        let mut norm_sqr = 0.0;
        for _ in 0..n {
            let (re, im) = stream.normal_pair();
            norm_sqr += re * re + im * im;
            coords.push(Complex64::new(re, im));
        }
        if norm_sqr > 1e-290 {
            let inv = norm_sqr.sqrt().recip();
            for c in &mut coords {
                *c *= inv;
            }
            return coords;
        }
    }
}

fn ball_point(n: usize, stream: &mut Stream) -> Point {
    let coords = sphere_coords(n, stream);
    let u = stream.uniform();
    let r = u.powf(1.0 / (2.0 * n as f64));
    Point::new(coords.into_iter().map(|c| c * r).collect()).expect("sampled ball point")
}

/// Uniform samples from the ball w.r.t. the normalized volume measure `dm`;
/// sample `i` depends only on `(seed, i)`.
pub fn sample_ball(n: usize, count: usize, seed: u64) -> Vec<Point> {
    (0..count as u64)
        .map(|i| ball_point(n, &mut Stream::for_sample(seed, i)))
        .collect()
}

/// Uniform samples from the unit sphere w.r.t. `dsigma`.
pub fn sample_sphere(n: usize, count: usize, seed: u64) -> Vec<Point> {
    (0..count as u64)
        .map(|i| {
            let coords = sphere_coords(n, &mut Stream::for_sample(seed, i));
            Point::new(coords).expect("sampled sphere point")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Gauss–Legendre nodes
// ---------------------------------------------------------------------------

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre_unit(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        // Standard initial guess followed by Newton iterations on P_m.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(m, x);
        nodes[i] = 0.5 * (1.0 - x); // map [-1, 1] -> [0, 1], ascending
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

// ---------------------------------------------------------------------------
// Halton sequence (quasi-Monte Carlo)
// ---------------------------------------------------------------------------

const HALTON_BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(base: u64, mut i: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    let mut scale = inv;
    while i > 0 {
        out += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
        inv = 1.0 / base as f64;
    }
    out
}

fn halton_ball_point(n: usize, index: u64) -> Point {
    // Gaussian coordinates from paired radical inverses, then a radial
    // inverse-CDF dimension.
    let mut coords = Vec::with_capacity(n);
    let mut norm_sqr = 0.0;
    for j in 0..n {
        let u1 = radical_inverse(HALTON_BASES[2 * j % 16], index).max(1e-12);
        let u2 = radical_inverse(HALTON_BASES[(2 * j + 1) % 16], index);
        let r = (-2.0 * u1.ln()).sqrt();
        let t = std::f64::consts::TAU * u2;
        let (re, im) = (r * t.cos(), r * t.sin());
        norm_sqr += re * re + im * im;
        coords.push(Complex64::new(re, im));
    }
    let inv = norm_sqr.sqrt().max(1e-145).recip();
    let u = radical_inverse(HALTON_BASES[(2 * n) % 16], index);
    let radius = u.powf(1.0 / (2.0 * n as f64));
    Point::new(coords.into_iter().map(|c| c * inv * radius).collect()).expect("halton point")
}

// ---------------------------------------------------------------------------
// Core estimators
// ---------------------------------------------------------------------------

fn mc_mean<F>(count: usize, eval: F) -> Result<(f64, f64, usize)>
where
    F: Fn(u64) -> f64 + Sync,
{
    let values: Vec<f64> = (0..count as u64).into_par_iter().map(&eval).collect();
    let mut kept = Vec::with_capacity(count);
    let mut rejected = 0usize;
    for v in values {
        if v.is_finite() {
            kept.push(v);
        } else {
            rejected += 1;
        }
    }
    if rejected > rejection_quota(count) {
        return Err(Error::NumericalFailure(format!(
            "{rejected} of {count} integrand evaluations were non-finite"
        )));
    }
    let used = kept.len();
    if used == 0 {
        return Err(Error::NumericalFailure("all integrand evaluations rejected".into()));
    }
    let mean = kahan_sum(kept.iter().copied()) / used as f64;
    let var = kahan_sum(kept.iter().map(|v| (v - mean) * (v - mean)))
        / (used.max(2) - 1) as f64;
    Ok((mean, (var / used as f64).sqrt(), used))
}

/// One product-rule level: Gauss–Legendre in the uniformized radial variable
/// `u = r^{2n}` crossed with seeded sphere directions per node.
fn product_level<F>(
    f: &F,
    n: usize,
    nodes: usize,
    dirs: usize,
    seed: u64,
    level: u64,
) -> Result<(f64, usize)>
where
    F: Fn(&Point) -> f64 + Sync,
{
    let (us, ws) = gauss_legendre_unit(nodes);
    let contributions: Vec<Result<(f64, usize)>> = (0..nodes)
        .into_par_iter()
        .map(|i| {
            let r = us[i].powf(1.0 / (2.0 * n as f64));
            let node_seed = substream(seed, (level << 56) | i as u64);
            let mut rejected = 0usize;
            let mut vals = Vec::with_capacity(dirs);
            for j in 0..dirs as u64 {
                let mut stream = Stream::for_sample(node_seed, j);
                let coords = sphere_coords(n, &mut stream);
                let z = Point::new(coords.into_iter().map(|c| c * r).collect())
                    .expect("radial node point");
                let v = f(&z);
                if v.is_finite() {
                    vals.push(v);
                } else {
                    rejected += 1;
                }
            }
            if rejected > rejection_quota(dirs) {
                return Err(Error::NumericalFailure(format!(
                    "{rejected} of {dirs} sphere evaluations non-finite at radius {r}"
                )));
            }
            if vals.is_empty() {
                return Err(Error::NumericalFailure("empty radial node".into()));
            }
            let mean = kahan_sum(vals.iter().copied()) / vals.len() as f64;
            Ok((ws[i] * mean, vals.len()))
        })
        .collect();
    let mut total_used = 0usize;
    let mut terms = Vec::with_capacity(nodes);
    for c in contributions {
        let (term, used) = c?;
        terms.push(term);
        total_used += used;
    }
    Ok((kahan_sum(terms), total_used))
}

/// Estimate of the normalized volume integral of `f` over the unit ball.
pub fn ball_integral<F>(n: usize, spec: &QuadratureSpec, f: F) -> Result<Estimate>
where
    F: Fn(&Point) -> f64 + Sync,
{
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    match spec.method {
        Method::MonteCarlo => {
            let seed = spec.seed;
            let (mean, se, used) = mc_mean(spec.samples, |i| {
                f(&ball_point(n, &mut Stream::for_sample(seed, i)))
            })?;
            Ok(Estimate { value: mean, stderr: se, samples_used: used })
        }
        Method::QuasiMonteCarlo => {
            let offset = (spec.seed % 65_536) + 1;
            let full = spec.samples;
            let half = (full / 2).max(1);
            let eval = |i: u64| f(&halton_ball_point(n, i + offset));
            let (mean_full, _, used) = mc_mean(full, eval)?;
            let (mean_half, _, _) = mc_mean(half, eval)?;
            Ok(Estimate {
                value: mean_full,
                stderr: (mean_full - mean_half).abs(),
                samples_used: used,
            })
        }
        Method::Product => {
            let dirs = (spec.samples / RADIAL_NODES_FINE).max(8);
            let (fine, used_fine) =
                product_level(&f, n, RADIAL_NODES_FINE, dirs, spec.seed, 1)?;
            let (coarse, used_coarse) =
                product_level(&f, n, RADIAL_NODES_COARSE, (dirs / 2).max(4), spec.seed, 0)?;
            Ok(Estimate {
                value: fine,
                stderr: (fine - coarse).abs(),
                samples_used: used_fine + used_coarse,
            })
        }
    }
}

/// Volume integral with importance concentrated at a kernel pole.
///
/// The substitution `z = phi_a(w)` turns the integral into one whose
/// integrand is far flatter near the boundary when `f` peaks like a power of
/// `|1 - <z, a>|^{-1}`; the factor below is the real Jacobian of the
/// substitution.
pub fn ball_integral_at_pole<F>(
    n: usize,
    spec: &QuadratureSpec,
    pole: &Point,
    f: F,
) -> Result<Estimate>
where
    F: Fn(&Point) -> f64 + Sync,
{
    pole.require_interior()?;
    if pole.dim() != n {
        return Err(Error::DimensionMismatch(pole.dim(), n));
    }
    let phi = Automorphism::involution(pole.clone())?;
    let one_minus = pole.one_minus_norm_sqr();
    let exponent = (n + 1) as f64;
    ball_integral(n, spec, move |w| {
        let denom = (Complex64::new(1.0, 0.0) - herm_inner(w, pole)).norm_sqr();
        let jac = (one_minus / denom).powf(exponent);
        f(&phi.apply(w)) * jac
    })
}

/// Estimate of the normalized surface integral of `f` over the unit sphere.
pub fn sphere_integral<F>(n: usize, spec: &QuadratureSpec, f: F) -> Result<Estimate>
where
    F: Fn(&Point) -> f64 + Sync,
{
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let seed = spec.seed;
    let eval = |i: u64| {
        let coords = sphere_coords(n, &mut Stream::for_sample(seed, i));
        f(&Point::new(coords).expect("sphere point"))
    };
    match spec.method {
        Method::MonteCarlo | Method::QuasiMonteCarlo => {
            let (mean, se, used) = mc_mean(spec.samples, eval)?;
            Ok(Estimate { value: mean, stderr: se, samples_used: used })
        }
        Method::Product => {
            let full = spec.samples.max(16);
            let half = full / 2;
            let (mean_full, _, used_full) = mc_mean(full, eval)?;
            let (mean_half, _, used_half) = mc_mean(half, |i| eval(i + full as u64))?;
            Ok(Estimate {
                value: mean_full,
                stderr: (mean_full - mean_half).abs(),
                samples_used: used_full + used_half,
            })
        }
    }
}

/// Surface integral with importance concentrated toward the pole direction,
/// via the boundary Jacobian of `phi_a`.
pub fn sphere_integral_at_pole<F>(
    n: usize,
    spec: &QuadratureSpec,
    pole: &Point,
    f: F,
) -> Result<Estimate>
where
    F: Fn(&Point) -> f64 + Sync,
{
    pole.require_interior()?;
    if pole.dim() != n {
        return Err(Error::DimensionMismatch(pole.dim(), n));
    }
    let phi = Automorphism::involution(pole.clone())?;
    let one_minus = pole.one_minus_norm_sqr();
    let exponent = n as f64;
    sphere_integral(n, spec, move |xi| {
        let denom = (Complex64::new(1.0, 0.0) - herm_inner(xi, pole)).norm_sqr();
        let jac = (one_minus / denom).powf(exponent);
        f(&phi.apply(xi)) * jac
    })
}

/// Estimate of `int_{E(center, r)} f dtau` for the invariant measure
/// `dtau = (1 - |z|^2)^{-(n+1)} dm`.
///
/// The region is pulled back to `E(0, r)` (where it is the Euclidean ball of
/// radius `r`) by the involution at `center`; invariance of `dtau` makes the
/// result independent of the center up to quadrature error.
pub fn tau_integral<F>(
    n: usize,
    spec: &QuadratureSpec,
    center: &Point,
    r: f64,
    f: F,
) -> Result<Estimate>
where
    F: Fn(&Point) -> f64 + Sync,
{
    if !(0.0 < r && r < 1.0) {
        return Err(Error::InvalidParameter(format!("hyperbolic radius {r} outside (0, 1)")));
    }
    center.require_interior()?;
    if center.dim() != n {
        return Err(Error::DimensionMismatch(center.dim(), n));
    }
    let phi = Automorphism::involution(center.clone())?;
    let volume_scale = r.powi(2 * n as i32);
    let est = ball_integral(n, spec, move |u| {
        let scaled = u.scale(r);
        let weight = scaled.one_minus_norm_sqr().powi(-(n as i32 + 1));
        f(&phi.apply(&scaled)) * weight
    })?;
    Ok(Estimate {
        value: volume_scale * est.value,
        stderr: volume_scale * est.stderr,
        samples_used: est.samples_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_unit(8);
        // int_0^1 x^7 dx = 1/8 must be exact for an 8-point rule.
        let approx: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(7)).sum();
        assert!((approx - 0.125).abs() < 1e-14, "{approx}");
        let total: f64 = w.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_samples_have_unit_norm_and_identical_streams() {
        let a = sample_sphere(2, 100, 9);
        let b = sample_sphere(2, 100, 9);
        for (p, q) in a.iter().zip(&b) {
            assert!((p.norm() - 1.0).abs() < 1e-14);
            assert_eq!(p, q);
        }
    }

    #[test]
    fn ball_mean_of_modulus_squared() {
        // int |z|^2 dm = n / (n + 1); direct radial oracle for n = 1 is 1/2.
        let pts = sample_ball(1, 1_000_000, 17);
        let vals: Vec<f64> = pts.iter().map(|z| z.norm_sqr()).collect();
        let (mean, se) = crate::stats::mean_stderr(&vals);
        assert!((mean - 0.5).abs() < 3.0 * se, "mean {mean} se {se}");
    }

    #[test]
    fn normalization_is_exact() {
        for n in [1usize, 2] {
            let spec = QuadratureSpec::default_for(n, 20_000, 3);
            let est = ball_integral(n, &spec, |_| 1.0).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12, "product {:.e}", est.value - 1.0);
            let mc = QuadratureSpec::monte_carlo(20_000, 3);
            let est = ball_integral(n, &mc, |_| 1.0).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12);
            let est = sphere_integral(n, &mc, |_| 1.0).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn radial_beta_integral_oracle() {
        // int (1 - |z|^2)^t dm = Gamma(n+1) Gamma(t+1) / Gamma(n+1+t),
        // by the substitution u = r^2.
        for (n, t) in [(1usize, 1.5f64), (2, 0.5), (2, 2.0)] {
            let exact = gamma(n as f64 + 1.0) * gamma(t + 1.0) / gamma(n as f64 + 1.0 + t);
            let spec = QuadratureSpec::default_for(n, 60_000, 5);
            let est = ball_integral(n, &spec, |z| z.one_minus_norm_sqr().powf(t)).unwrap();
            assert!(
                (est.value - exact).abs() < 3.0 * est.stderr.max(2e-4),
                "n={n} t={t}: {} vs {exact} (stderr {})",
                est.value,
                est.stderr
            );
            let mc = QuadratureSpec::monte_carlo(200_000, 6);
            let est = ball_integral(n, &mc, |z| z.one_minus_norm_sqr().powf(t)).unwrap();
            assert!((est.value - exact).abs() < 4.0 * est.stderr, "mc n={n} t={t}");
        }
    }

    #[test]
    fn sphere_real_part_averages_to_zero() {
        let spec = QuadratureSpec::monte_carlo(100_000, 8);
        let est = sphere_integral(1, &spec, |z| z.coords()[0].re).unwrap();
        assert!(est.value.abs() < 4.0 * est.stderr.max(1e-4));
    }

    #[test]
    fn pole_jacobians_integrate_to_one() {
        // f = 1 makes the pole-shifted estimators integrate exactly the
        // Jacobian; both must return 1 within quadrature error.
        let a = Point::new(vec![Complex64::new(0.7, 0.2)]).unwrap();
        let spec = QuadratureSpec::default_for(1, 40_000, 10);
        let est = ball_integral_at_pole(1, &spec, &a, |_| 1.0).unwrap();
        assert!((est.value - 1.0).abs() < 6.0 * est.stderr.max(1e-3), "{}", est.value);
        let mc = QuadratureSpec::monte_carlo(200_000, 10);
        let est = sphere_integral_at_pole(1, &mc, &a, |_| 1.0).unwrap();
        assert!((est.value - 1.0).abs() < 5.0 * est.stderr, "{}", est.value);
    }

    #[test]
    fn kernel_ratio_stays_bounded_toward_boundary() {
        // int (1-|z|^2)^t |1 - <a, z>|^{-(n+1+c+t)} dm scaled by
        // (1-|a|^2)^c must stay within a fixed window as |a| -> 1.
        let (n, t, c) = (1usize, 0.0f64, 1.0f64);
        let mut ratios = Vec::new();
        for &amod in &[0.5, 0.9, 0.99] {
            let a = Point::real(amod);
            let spec = QuadratureSpec::monte_carlo(150_000, 13);
            let expo = n as f64 + 1.0 + c + t;
            let est = ball_integral_at_pole(1, &spec, &a, |z| {
                let k = (Complex64::new(1.0, 0.0) - herm_inner(&a, z)).norm();
                z.one_minus_norm_sqr().powf(t) / k.powf(expo)
            })
            .unwrap();
            ratios.push(est.value * a.one_minus_norm_sqr().powf(c));
        }
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
        assert!(hi / lo < 4.0, "ratios {ratios:?}");
    }

    #[test]
    fn tau_volume_matches_disk_formula_and_center_invariance() {
        // tau(E(0, r)) = r^2 / (1 - r^2) in one variable.
        let r = 0.4;
        let spec = QuadratureSpec::default_for(1, 60_000, 2);
        let origin = Point::origin(1);
        let at0 = tau_integral(1, &spec, &origin, r, |_| 1.0).unwrap();
        let exact = r * r / (1.0 - r * r);
        assert!(
            (at0.value - exact).abs() < 0.01 * exact,
            "{} vs {exact}",
            at0.value
        );
        let moved = Point::new(vec![Complex64::new(0.5, -0.3)]).unwrap();
        let at_c = tau_integral(1, &spec, &moved, r, |_| 1.0).unwrap();
        assert!(
            (at_c.value - at0.value).abs() < 0.02 * at0.value,
            "{} vs {}",
            at_c.value,
            at0.value
        );

        // Monotone decay to zero as r -> 0.
        let mut prev = f64::INFINITY;
        for &rr in &[0.4, 0.2, 0.1, 0.05] {
            let est = tau_integral(1, &spec, &origin, rr, |_| 1.0).unwrap();
            assert!(est.value < prev);
            prev = est.value;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn estimates_are_bit_identical_across_thread_counts() {
        let spec = QuadratureSpec::monte_carlo(50_000, 99);
        let f = |z: &Point| z.one_minus_norm_sqr().powf(1.3);
        let baseline = ball_integral(2, &spec, f).unwrap();
        for threads in [1usize, 3] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let est = pool.install(|| ball_integral(2, &spec, f).unwrap());
            assert_eq!(est.value.to_bits(), baseline.value.to_bits());
            assert_eq!(est.stderr.to_bits(), baseline.stderr.to_bits());
        }
    }

    #[test]
    fn qmc_runs_and_is_deterministic() {
        let spec = QuadratureSpec {
            method: Method::QuasiMonteCarlo,
            samples: 30_000,
            seed: 4,
            target_rel_tol: 1e-3,
        };
        let a = ball_integral(1, &spec, |z| z.one_minus_norm_sqr()).unwrap();
        let b = ball_integral(1, &spec, |z| z.one_minus_norm_sqr()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        // Exact value 1/2 for n = 1, t = 1.
        assert!((a.value - 0.5).abs() < 5e-3, "{}", a.value);
    }

    #[test]
    fn non_finite_integrand_rejected_over_quota() {
        let spec = QuadratureSpec::monte_carlo(10_000, 1);
        let res = ball_integral(1, &spec, |z| {
            if z.norm() > 0.1 {
                f64::NAN
            } else {
                1.0
            }
        });
        assert!(res.is_err());
    }
}
