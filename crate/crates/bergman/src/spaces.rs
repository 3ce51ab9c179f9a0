//! Space parameters, weighted norms, the composition isometry, reproducing
//! kernels and the boundary-packing witness functions.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use statrs::function::gamma::gamma;

use crate::error::Error;
use crate::expr::{check_dimension, Expr};
use crate::geometry::{herm_inner, Automorphism, Point};
use crate::quadrature::{
    ball_integral, ball_integral_at_pole, sample_sphere, sphere_integral, Estimate,
    QuadratureSpec,
};
use crate::rng::substream;
use crate::stats::kahan_sum;
use crate::Result;

/// Classification of `(n, p, alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceClass {
    /// `alpha > -1/p`, `p < infinity`: weighted Bergman space.
    Bergman,
    /// `alpha = -1/p`, `p < infinity`: Hardy space.
    Hardy,
    /// `p = infinity`: growth space, `alpha >= 0`.
    Growth,
}

/// The triple `(n, p, alpha)` with `p in (0, infinity]`, `alpha >= -1/p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    n: usize,
    p: f64,
    alpha: f64,
}

const HARDY_TOL: f64 = 1e-12;

impl SpaceParams {
    pub fn new(n: usize, p: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if !(p > 0.0) {
            return Err(Error::InvalidParameter(format!("p = {p} must be positive")));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be finite".into()));
        }
        let floor = if p.is_infinite() { 0.0 } else { -1.0 / p };
        if alpha < floor - HARDY_TOL {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} below the admissible floor {floor}"
            )));
        }
        Ok(SpaceParams { n, p, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn class(&self) -> SpaceClass {
        if self.p.is_infinite() {
            SpaceClass::Growth
        } else if (self.alpha + 1.0 / self.p).abs() <= HARDY_TOL {
            SpaceClass::Hardy
        } else {
            SpaceClass::Bergman
        }
    }

    /// The weight exponent `beta = (n+1)/p + alpha` of the value space.
    pub fn beta(&self) -> f64 {
        if self.p.is_infinite() {
            self.alpha
        } else {
            (self.n as f64 + 1.0) / self.p + self.alpha
        }
    }

    pub fn require_bergman(&self) -> Result<()> {
        match self.class() {
            SpaceClass::Bergman => Ok(()),
            other => Err(Error::InvalidParameter(format!(
                "operation needs Bergman parameters, got {other:?} (p = {}, alpha = {})",
                self.p, self.alpha
            ))),
        }
    }
}

impl Serialize for SpaceParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpaceParams", 3)?;
        st.serialize_field("n", &self.n)?;
        if self.p.is_infinite() {
            st.serialize_field("p", "inf")?;
        } else {
            st.serialize_field("p", &self.p)?;
        }
        st.serialize_field("alpha", &self.alpha)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SpaceParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum PRepr {
            Number(f64),
            Text(String),
        }
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            p: PRepr,
            alpha: f64,
        }
        let raw = Raw::deserialize(d)?;
        let p = match raw.p {
            PRepr::Number(x) => x,
            PRepr::Text(t) if t == "inf" => f64::INFINITY,
            PRepr::Text(t) => t.parse::<f64>().map_err(D::Error::custom)?,
        };
        SpaceParams::new(raw.n, p, raw.alpha).map_err(D::Error::custom)
    }
}

/// Complex targets attached to a point sequence, normed in the weighted
/// sequence space with exponent `beta`.
#[derive(Debug, Clone)]
pub struct ValueSeq {
    values: Vec<Complex64>,
    weights: Vec<f64>,
    params: SpaceParams,
}

impl ValueSeq {
    pub fn new(points: &[Point], values: Vec<Complex64>, params: &SpaceParams) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch(points.len(), values.len()));
        }
        let beta = params.beta();
        let weights = points
            .iter()
            .map(|a| a.one_minus_norm_sqr().powf(beta))
            .collect();
        Ok(ValueSeq {
            values,
            weights,
            params: *params,
        })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The weighted sequence norm (sup for `p = infinity`).
    pub fn norm(&self) -> f64 {
        weighted_lp_norm(&self.values, &self.weights, self.params.p)
    }
}

/// `(sum_k (w_k |v_k|)^p)^{1/p}`, with the sup convention at `p = infinity`.
pub fn weighted_lp_norm(values: &[Complex64], weights: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        values
            .iter()
            .zip(weights)
            .map(|(v, w)| w * v.norm())
            .fold(0.0, f64::max)
    } else {
        kahan_sum(
            values
                .iter()
                .zip(weights)
                .map(|(v, w)| (w * v.norm()).powf(p)),
        )
        .powf(1.0 / p)
    }
}

/// The kernel power `f_{N,a}(z) = (1 - <z, a>)^{-N}`.
pub fn kernel_fn(exponent: f64, a: &Point) -> Result<Expr> {
    Expr::kernel(a.clone(), exponent)
}

/// The reproducing kernel of the pairing `<f, g> = int f conj(g)
/// (1-|w|^2)^{alpha p} dm` for `1 < p < infinity`:
/// `K_z = Gamma(n + alpha p + 1) / (Gamma(n+1) Gamma(alpha p + 1))
///  * (1 - <., z>)^{-(n + 1 + alpha p)}`.
pub fn reproducing_kernel(z: &Point, params: &SpaceParams) -> Result<Expr> {
    params.require_bergman()?;
    let p = params.p();
    if !(1.0 < p && p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "reproducing kernel needs 1 < p < infinity, got {p}"
        )));
    }
    z.require_interior()?;
    let n = params.n() as f64;
    let ap = params.alpha() * p;
    let constant = gamma(n + ap + 1.0) / (gamma(n + 1.0) * gamma(ap + 1.0));
    Ok(Expr::kernel(z.clone(), n + 1.0 + ap)?.scale(Complex64::new(constant, 0.0)))
}

/// The pairing `<f, g> = int f conj(g) (1 - |w|^2)^{alpha p} dm`.
pub fn bergman_pairing(
    f: &Expr,
    g: &Expr,
    params: &SpaceParams,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    params.require_bergman()?;
    let n = params.n();
    let ap = params.alpha() * params.p();
    let product = |w: &Point| f.eval(w) * g.eval(w).conj() * w.one_minus_norm_sqr().powf(ap);
    let re = ball_integral(n, spec, |w| product(w).re)?;
    let im = ball_integral(n, spec, |w| product(w).im)?;
    Ok(Complex64::new(re.value, im.value))
}

/// Number of dyadic shells used by the sup-norm grids.
const GROWTH_SHELLS: u32 = 13;
/// Radii used by the Hardy norm, `1 - 2^{-j}`.
const HARDY_SHELLS: u32 = 10;

/// The norm of `f` in `B_alpha^p`:
///
/// * Bergman: `(int (1-|z|^2)^{alpha p} |f|^p dm)^{1/p}` by quadrature,
///   importance-shifted when `f` is a single kernel power;
/// * growth (`p = infinity`): supremum over a radially graded grid, reported
///   with the refinement difference as `stderr` (a certified lower bound);
/// * Hardy: last value of the monotone radial profile `M_p(f, r)^{1/p}` on
///   the grid `r = 1 - 2^{-j}`.
pub fn norm(f: &Expr, params: &SpaceParams, spec: &QuadratureSpec) -> Result<Estimate> {
    check_dimension(f, params.n())?;
    match params.class() {
        SpaceClass::Bergman => bergman_norm(f, params, spec),
        SpaceClass::Growth => Ok(growth_sup(f, params, spec)),
        SpaceClass::Hardy => {
            let profile = hardy_radial_profile(f, params, spec)?;
            let (_, last) = profile.last().expect("nonempty profile");
            let p = params.p();
            let value = last.value.max(0.0).powf(1.0 / p);
            let stderr = if last.value > 0.0 {
                last.stderr * value / (p * last.value)
            } else {
                last.stderr
            };
            Ok(Estimate {
                value,
                stderr,
                samples_used: last.samples_used,
            })
        }
    }
}

fn bergman_norm(f: &Expr, params: &SpaceParams, spec: &QuadratureSpec) -> Result<Estimate> {
    let n = params.n();
    let p = params.p();
    let ap = params.alpha() * p;
    let integrand = |z: &Point| z.one_minus_norm_sqr().powf(ap) * f.eval(z).norm().powf(p);
    let est = match f.single_pole() {
        Some(pole) => {
            let pole = pole.clone();
            ball_integral_at_pole(n, spec, &pole, integrand)?
        }
        None => ball_integral(n, spec, integrand)?,
    };
    let value = est.value.max(0.0).powf(1.0 / p);
    let stderr = if est.value > 0.0 {
        est.stderr * value / (p * est.value)
    } else {
        est.stderr
    };
    Ok(Estimate {
        value,
        stderr,
        samples_used: est.samples_used,
    })
}

/// The monotone radial means `(r_j, M_p^p(f, r_j))` with
/// `M_p^p(f, r) = int_S |f(r zeta)|^p dsigma(zeta)`.
pub fn hardy_radial_profile(
    f: &Expr,
    params: &SpaceParams,
    spec: &QuadratureSpec,
) -> Result<Vec<(f64, Estimate)>> {
    let n = params.n();
    let p = params.p();
    if p.is_infinite() {
        return Err(Error::InvalidParameter("Hardy profile needs p < infinity".into()));
    }
    let per_radius = (spec.samples / HARDY_SHELLS as usize).max(1_000);
    let mut out = Vec::new();
    for j in 1..=HARDY_SHELLS {
        let r = 1.0 - 0.5f64.powi(j as i32);
        let sub = QuadratureSpec {
            samples: per_radius,
            seed: substream(spec.seed, 0xA0 + j as u64),
            ..*spec
        };
        let est = sphere_integral(n, &sub, |zeta| f.eval(&zeta.scale(r)).norm().powf(p))?;
        out.push((r, est));
    }
    Ok(out)
}

fn growth_sup(f: &Expr, params: &SpaceParams, spec: &QuadratureSpec) -> Estimate {
    let n = params.n();
    let alpha = params.alpha();
    let dirs = (spec.samples / (2 * GROWTH_SHELLS as usize)).clamp(16, 4096);

    // Fixed directions toward every kernel pole so the sup cannot miss the
    // peaks as the centers approach the sphere.
    let mut special: Vec<Point> = Vec::new();
    for c in f.kernel_centers() {
        if c.norm() > 1e-12 {
            special.push(c.normalized().expect("nonzero center"));
        }
        special.push(c);
    }

    let weighted = |z: &Point| z.one_minus_norm_sqr().powf(alpha) * f.eval(z).norm();

    let mut sup_fine = 0.0f64;
    let mut sup_coarse = 0.0f64;
    let mut evaluated = 0usize;
    for j in 0..=GROWTH_SHELLS {
        let r = 1.0 - 0.5f64.powi(j as i32);
        let shell_dirs = sample_sphere(n, dirs, substream(spec.seed, 0xB00 + j as u64));
        for (idx, dir) in shell_dirs.iter().enumerate() {
            let v = weighted(&dir.scale(r));
            evaluated += 1;
            sup_fine = sup_fine.max(v);
            if j < GROWTH_SHELLS && idx < dirs / 2 {
                sup_coarse = sup_coarse.max(v);
            }
        }
    }
    for s in &special {
        if s.is_interior() {
            let v = weighted(s);
            evaluated += 1;
            sup_fine = sup_fine.max(v);
            sup_coarse = sup_coarse.max(v);
        }
        if s.is_unit() {
            for j in 1..=GROWTH_SHELLS {
                let r = 1.0 - 0.5f64.powi(j as i32);
                let v = weighted(&s.scale(r));
                evaluated += 1;
                sup_fine = sup_fine.max(v);
                if j < GROWTH_SHELLS {
                    sup_coarse = sup_coarse.max(v);
                }
            }
        }
    }
    Estimate {
        value: sup_fine,
        stderr: sup_fine - sup_coarse,
        samples_used: evaluated,
    }
}

/// The weighted composition `T_phi f = ((1 - |b|^2) / (1 - <z, b>)^2)^beta
/// (f o phi)` with `b = phi^{-1}(0)`; an isometry of `B_alpha^p`.
pub fn apply_isometry(f: &Expr, phi: &Automorphism, params: &SpaceParams) -> Result<Expr> {
    check_dimension(f, params.n())?;
    if phi.dim() != params.n() {
        return Err(Error::DimensionMismatch(phi.dim(), params.n()));
    }
    let b = phi.center();
    let beta = params.beta();
    let prefactor = Expr::kernel(b.clone(), 2.0 * beta)?
        .scale(Complex64::new(b.one_minus_norm_sqr().powf(beta), 0.0));
    Ok(Expr::product(vec![
        prefactor,
        Expr::compose(phi.clone(), f.clone()),
    ]))
}

/// Empirical constant of the pointwise growth bound: the maximum over the
/// grid of `|f(z)| (1 - |z|^2)^beta / ||f||`.
pub fn pointwise_bound_probe(
    f: &Expr,
    params: &SpaceParams,
    grid: &[Point],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let nrm = norm(f, params, spec)?.value;
    if !(nrm > 0.0) {
        return Err(Error::NumericalFailure("norm evaluated to zero".into()));
    }
    let beta = params.beta();
    Ok(grid
        .iter()
        .map(|z| f.eval(z).norm() * z.one_minus_norm_sqr().powf(beta) / nrm)
        .fold(0.0, f64::max))
}

/// Maximal family of unit vectors whose Korányi balls of radius
/// `kappa * r` are pairwise disjoint.
pub fn witness_packing(n: usize, r: f64, kappa: f64) -> Result<Vec<Point>> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::InvalidParameter(format!("r = {r} outside (0, 1)")));
    }
    if kappa <= 1.0 {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} must exceed 1")));
    }
    let t = kappa * r;
    if n == 1 {
        // Exact on the circle: |1 - e^{i d}| < t is the arc of half-width
        // 2 asin(t/2), so equal spacing realizes a maximal packing.
        if t >= 2.0 {
            return Ok(vec![Point::real(1.0)]);
        }
        let theta = 2.0 * (t / 2.0).asin();
        let count = ((std::f64::consts::PI / theta).floor() as usize).max(1);
        return Ok((0..count)
            .map(|k| {
                let ang = std::f64::consts::TAU * k as f64 / count as f64;
                Point::scalar(Complex64::new(ang.cos(), ang.sin()))
            })
            .collect());
    }
    // Higher dimensions: greedy packing under the sufficient disjointness
    // criterion |1 - <eta_j, eta_k>| >= 4 kappa r from the square-root
    // quasi-triangle inequality.
    let threshold = (4.0 * t).min(2.0 - 1e-9);
    let mut accepted: Vec<Point> = Vec::new();
    let mut consecutive_rejects = 0usize;
    let mut index = 0u64;
    let seed = 0x5EED_F00D_u64;
    while consecutive_rejects < 200 * (accepted.len() + 1) && index < 400_000 {
        let cand = sample_sphere(n, 1, substream(seed, index))
            .pop()
            .expect("one sphere sample");
        index += 1;
        let ok = accepted.iter().all(|eta| {
            (Complex64::new(1.0, 0.0) - herm_inner(&cand, eta)).norm() >= threshold
        });
        if ok {
            accepted.push(cand);
            consecutive_rejects = 0;
        } else {
            consecutive_rejects += 1;
        }
    }
    if accepted.is_empty() {
        return Err(Error::EmptyConstruction(format!(
            "no packing at r = {r}, kappa = {kappa}"
        )));
    }
    Ok(accepted)
}

/// The inclusion witness `F_{gamma,r}(z) = sum_k (1 - (1-r) <z, eta_k>)^{-gamma}`
/// over a maximal Korányi packing; returns the function and the packing.
pub fn witness_function(gamma: f64, r: f64, kappa: f64, n: usize) -> Result<(Expr, Vec<Point>)> {
    if gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!("gamma = {gamma} must be positive")));
    }
    let directions = witness_packing(n, r, kappa)?;
    let terms = directions
        .iter()
        .map(|eta| Expr::kernel(eta.scale(1.0 - r), gamma))
        .collect::<Result<Vec<_>>>()?;
    Ok((Expr::sum(terms), directions))
}
