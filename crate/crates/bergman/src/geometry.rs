//! Invariant geometry of the unit ball of C^n: the involutive automorphisms
//! `phi_a`, the pseudo-hyperbolic distance, hyperbolic balls, Carleson
//! windows and Korányi balls.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cplx;
use crate::error::Error;
use crate::Result;

/// Interior-requiring operations reject points closer than this to the unit
/// sphere; the automorphism and distance formulas lose all precision there.
pub const INTERIOR_MARGIN: f64 = 1e-14;

/// A point of the closed unit ball of C^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<Complex64>,
}

impl Point {
    /// Wraps raw coordinates; fails on empty or non-finite input or on
    /// points outside the closed ball.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("point needs at least one coordinate".into()));
        }
        if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        let p = Point { coords };
        if p.norm_sqr() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "|z| = {} exceeds 1",
                p.norm()
            )));
        }
        Ok(p)
    }

    /// The origin of C^n.
    pub fn origin(n: usize) -> Self {
        Point {
            coords: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// A one-dimensional point from a complex scalar.
    pub fn scalar(z: Complex64) -> Self {
        Point { coords: vec![z] }
    }

    /// A one-dimensional point on the real axis.
    pub fn real(x: f64) -> Self {
        Point::scalar(Complex64::new(x, 0.0))
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Squared Euclidean norm |z|^2.
    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `1 - |z|^2`, the weight entering every norm and kernel estimate.
    pub fn one_minus_norm_sqr(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    /// True when the point is strictly interior with the working margin.
    pub fn is_interior(&self) -> bool {
        self.norm() < 1.0 - INTERIOR_MARGIN
    }

    /// Errors unless the point is strictly interior.
    pub fn require_interior(&self) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::BoundaryPoint(self.norm()))
        }
    }

    /// True when the point lies on the unit sphere up to 1e-10.
    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() < 1e-10
    }

    /// Rescales to exact unit modulus (used for window centers).
    pub fn normalized(&self) -> Result<Self> {
        let r = self.norm();
        if r == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the origin".into()));
        }
        Ok(Point {
            coords: self.coords.iter().map(|z| z / r).collect(),
        })
    }

    /// Coordinate-wise scaling by a real factor.
    pub fn scale(&self, t: f64) -> Self {
        Point {
            coords: self.coords.iter().map(|z| z * t).collect(),
        }
    }

    fn as_vector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.coords)
    }

    fn from_vector(v: DVector<Complex64>) -> Self {
        Point {
            coords: v.iter().copied().collect(),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        cplx::to_flat(&self.coords).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let flat = Vec::<f64>::deserialize(d)?;
        let coords = cplx::from_flat_de::<D>(&flat)?;
        if coords.is_empty() {
            return Err(D::Error::custom("point needs at least one coordinate"));
        }
        Ok(Point { coords })
    }
}

/// Hermitian inner product `sum_j z_j * conj(w_j)`.
///
/// Panics if the dimensions differ.
pub fn herm_inner(z: &Point, w: &Point) -> Complex64 {
    assert_eq!(
        z.dim(),
        w.dim(),
        "herm_inner: dimension mismatch {} vs {}",
        z.dim(),
        w.dim()
    );
    z.coords
        .iter()
        .zip(&w.coords)
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// The involutive automorphism `phi_a` exchanging 0 and `a`, applied to `z`.
///
/// `phi_0` is `-id`, the limit of the general formula.
fn moebius(a: &Point, z: &Point) -> Point {
    assert_eq!(a.dim(), z.dim(), "moebius: dimension mismatch");
    let a_sqr = a.norm_sqr();
    if a_sqr == 0.0 {
        return z.scale(-1.0);
    }
    let za = herm_inner(z, a);
    let s = (1.0 - a_sqr).sqrt();
    let proj = za / Complex64::new(a_sqr, 0.0);
    let denom = Complex64::new(1.0, 0.0) - za;
    let coords = a
        .coords
        .iter()
        .zip(&z.coords)
        .map(|(aj, zj)| {
            let pj = proj * aj;
            let qj = zj - pj;
            (aj - pj - s * qj) / denom
        })
        .collect();
    Point { coords }
}

/// A ball automorphism `z -> U * phi_a(z)` with unitary `U` (identity when
/// absent).
#[derive(Debug, Clone)]
pub struct Automorphism {
    center: Point,
    rotation: Option<DMatrix<Complex64>>,
}

impl Automorphism {
    /// The pure involution `phi_a`; requires `|a| < 1`.
    pub fn involution(center: Point) -> Result<Self> {
        center.require_interior()?;
        Ok(Automorphism {
            center,
            rotation: None,
        })
    }

    /// The identity map of C^n, written as `(-I) . phi_0`.
    pub fn identity(n: usize) -> Self {
        let minus_id = DMatrix::<Complex64>::from_diagonal_element(n, n, Complex64::new(-1.0, 0.0));
        Automorphism {
            center: Point::origin(n),
            rotation: Some(minus_id),
        }
    }

    /// Composes a unitary rotation after `phi_a`.
    pub fn with_rotation(center: Point, rotation: DMatrix<Complex64>) -> Result<Self> {
        center.require_interior()?;
        let n = center.dim();
        if rotation.nrows() != n || rotation.ncols() != n {
            return Err(Error::DimensionMismatch(rotation.nrows(), n));
        }
        let gram = rotation.adjoint() * &rotation;
        let id = DMatrix::<Complex64>::identity(n, n);
        if (gram - id).norm() > 1e-10 {
            return Err(Error::InvalidParameter("rotation matrix is not unitary".into()));
        }
        Ok(Automorphism {
            center,
            rotation: Some(rotation),
        })
    }

    /// `psi^{-1}(0)`, i.e. the point this map sends to the origin.
    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn apply(&self, z: &Point) -> Point {
        let moved = moebius(&self.center, z);
        match &self.rotation {
            None => moved,
            Some(u) => Point::from_vector(u * moved.as_vector()),
        }
    }

    /// The inverse automorphism. `phi_a` is its own inverse; with a rotation
    /// `U` the inverse of `U . phi_a` is `U* . phi_{Ua}`.
    pub fn inverse(&self) -> Self {
        match &self.rotation {
            None => self.clone(),
            Some(u) => {
                let rotated_center = Point::from_vector(u * self.center.as_vector());
                Automorphism {
                    center: rotated_center,
                    rotation: Some(u.adjoint()),
                }
            }
        }
    }
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Automorphism", 2)?;
        st.serialize_field("center", &self.center)?;
        let rot: Option<Vec<Vec<[f64; 2]>>> = self.rotation.as_ref().map(|u| {
            (0..u.nrows())
                .map(|i| (0..u.ncols()).map(|j| [u[(i, j)].re, u[(i, j)].im]).collect())
                .collect()
        });
        st.serialize_field("rotation", &rot)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Automorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            center: Point,
            #[serde(default)]
            rotation: Option<Vec<Vec<[f64; 2]>>>,
        }
        let raw = Raw::deserialize(d)?;
        let rotation = match raw.rotation {
            None => None,
            Some(rows) => {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(D::Error::custom("rotation matrix is not square"));
                }
                let mut m = DMatrix::<Complex64>::zeros(n, n);
                for (i, row) in rows.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        m[(i, j)] = Complex64::new(c[0], c[1]);
                    }
                }
                Some(m)
            }
        };
        match rotation {
            None => Automorphism::involution(raw.center),
            Some(u) => Automorphism::with_rotation(raw.center, u),
        }
        .map_err(D::Error::custom)
    }
}

/// Pseudo-hyperbolic (invariant) distance `d(a, b) = |phi_a(b)|`.
///
/// Panics unless both points are strictly interior.
pub fn inv_distance(a: &Point, b: &Point) -> f64 {
    assert!(
        a.is_interior() && b.is_interior(),
        "inv_distance requires interior points (|a| = {}, |b| = {})",
        a.norm(),
        b.norm()
    );
    moebius(a, b).norm()
}

/// Membership in the hyperbolic ball `E(center, r) = {d(z, center) < r}`.
pub fn in_hyperbolic_ball(z: &Point, center: &Point, r: f64) -> bool {
    assert!(r > 0.0 && r < 1.0, "hyperbolic radius must lie in (0, 1)");
    inv_distance(z, center) < r
}

/// Membership in the Carleson window `C_t(zeta0) = {|1 - <z, zeta0>| < t}`
/// with `zeta0` on the unit sphere.
pub fn in_window(z: &Point, zeta0: &Point, t: f64) -> bool {
    assert!(t > 0.0, "window radius must be positive");
    assert!(zeta0.is_unit(), "window center must be a unit vector");
    (Complex64::new(1.0, 0.0) - herm_inner(z, zeta0)).norm() < t
}

/// Membership in the Korányi ball `K(eta, t) = {zeta in S : |1 - <zeta, eta>| < t}`.
pub fn in_koranyi_ball(zeta: &Point, eta: &Point, t: f64) -> bool {
    assert!(t > 0.0, "Korányi radius must be positive");
    assert!(zeta.is_unit() && eta.is_unit(), "Korányi balls live on the sphere");
    (Complex64::new(1.0, 0.0) - herm_inner(zeta, eta)).norm() < t
}

/// Maximal violation of the triangle inequality for `|1 - <z, w>|^(1/2)`
/// over the given triples; nonpositive up to rounding for points of the
/// closed ball.
pub fn quasi_triangle_defect(triples: &[(Point, Point, Point)]) -> f64 {
    let half = |x: &Point, y: &Point| (Complex64::new(1.0, 0.0) - herm_inner(x, y)).norm().sqrt();
    let mut worst = f64::NEG_INFINITY;
    for (z, u, w) in triples {
        // All three choices of the middle point.
        let zw = half(z, w);
        let zu = half(z, u);
        let uw = half(u, w);
        worst = worst
            .max(zw - zu - uw)
            .max(zu - zw - uw)
            .max(uw - zu - zw);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::sample_ball;
    use approx::assert_abs_diff_eq;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn herm_inner_basics() {
        let e1 = Point::new(vec![cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
        assert_eq!(herm_inner(&e1, &e1), cx(1.0, 0.0));
        let zero = Point::origin(2);
        let w = Point::new(vec![cx(0.3, 0.1), cx(-0.2, 0.4)]).unwrap();
        assert_eq!(herm_inner(&zero, &w), cx(0.0, 0.0));
    }

    #[test]
    fn herm_inner_conjugate_symmetry() {
        for (i, (z, w)) in sample_ball(3, 50, 11)
            .into_iter()
            .zip(sample_ball(3, 50, 12))
            .enumerate()
        {
            let a = herm_inner(&z, &w);
            let b = herm_inner(&w, &z).conj();
            assert!((a - b).norm() < 1e-15, "triple {i}");
        }
    }

    #[test]
    fn automorphism_exchanges_origin_and_center() {
        let a = Point::new(vec![cx(0.3, 0.2), cx(-0.1, 0.4)]).unwrap();
        let phi = Automorphism::involution(a.clone()).unwrap();
        let at_zero = phi.apply(&Point::origin(2));
        let at_a = phi.apply(&a);
        for j in 0..2 {
            assert_abs_diff_eq!(at_zero.coords()[j].re, a.coords()[j].re, epsilon = 1e-14);
            assert_abs_diff_eq!(at_zero.coords()[j].im, a.coords()[j].im, epsilon = 1e-14);
        }
        assert!(at_a.norm() < 1e-14);
    }

    #[test]
    fn involution_holds_on_random_points() {
        let centers = sample_ball(2, 40, 5);
        let points = sample_ball(2, 40, 6);
        for (a, z) in centers.iter().zip(&points) {
            let phi = Automorphism::involution(a.clone()).unwrap();
            let round = phi.apply(&phi.apply(z));
            let err: f64 = round
                .coords()
                .iter()
                .zip(z.coords())
                .map(|(u, v)| (u - v).norm())
                .sum();
            assert!(err < 1e-12, "involution defect {err}");
        }
    }

    #[test]
    fn distance_identity_and_symmetry() {
        let xs = sample_ball(2, 60, 21);
        let ys = sample_ball(2, 60, 22);
        for (a, b) in xs.iter().zip(&ys) {
            let d = inv_distance(a, b);
            let lhs = 1.0 - d * d;
            let denom = (Complex64::new(1.0, 0.0) - herm_inner(a, b)).norm_sqr();
            let rhs = a.one_minus_norm_sqr() * b.one_minus_norm_sqr() / denom;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "identity");
            let dt = inv_distance(b, a);
            assert!((d - dt).abs() < 1e-14, "symmetry");
        }
    }

    #[test]
    fn distance_from_origin_is_modulus() {
        let b = Point::new(vec![cx(0.2, -0.3), cx(0.1, 0.25)]).unwrap();
        assert_abs_diff_eq!(inv_distance(&Point::origin(2), &b), b.norm(), epsilon = 1e-14);
        assert_eq!(inv_distance(&b, &b), 0.0);
    }

    #[test]
    fn one_variable_moebius_oracle() {
        // d(0.5, -0.5) = |(0.5 + 0.5) / (1 + 0.25)| = 0.8 on the real axis.
        let a = Point::real(0.5);
        let b = Point::real(-0.5);
        assert_abs_diff_eq!(inv_distance(&a, &b), 0.8, epsilon = 1e-14);
    }

    #[test]
    fn distance_is_automorphism_invariant() {
        let cs = sample_ball(2, 20, 31);
        let xs = sample_ball(2, 20, 32);
        let ys = sample_ball(2, 20, 33);
        for ((c, a), b) in cs.iter().zip(&xs).zip(&ys) {
            let phi = Automorphism::involution(c.clone()).unwrap();
            let d0 = inv_distance(a, b);
            let d1 = inv_distance(&phi.apply(a), &phi.apply(b));
            assert!((d0 - d1).abs() < 1e-10, "invariance {d0} vs {d1}");
        }
    }

    #[test]
    fn rotation_roundtrip() {
        // Unitary: swap coordinates with a phase.
        let mut u = DMatrix::<Complex64>::zeros(2, 2);
        u[(0, 1)] = cx(0.0, 1.0);
        u[(1, 0)] = cx(1.0, 0.0);
        let a = Point::new(vec![cx(0.2, 0.1), cx(-0.3, 0.05)]).unwrap();
        let psi = Automorphism::with_rotation(a, u).unwrap();
        let inv = psi.inverse();
        for z in sample_ball(2, 10, 44) {
            let round = inv.apply(&psi.apply(&z));
            let err: f64 = round
                .coords()
                .iter()
                .zip(z.coords())
                .map(|(p, q)| (p - q).norm())
                .sum();
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn membership_trivial_cases() {
        let z = Point::new(vec![cx(0.4, 0.2)]).unwrap();
        let zeta0 = Point::new(vec![cx(0.6, 0.8)]).unwrap();
        assert!(in_window(&z, &zeta0, 2.0));
        assert!(in_hyperbolic_ball(&z, &z, 0.1));
        let eta = Point::new(vec![cx(1.0, 0.0)]).unwrap();
        assert!(in_koranyi_ball(&eta, &eta, 1e-9));
    }

    #[test]
    fn quasi_triangle_defect_examples() {
        let z = Point::real(0.3);
        let degenerate = vec![(z.clone(), z.clone(), z.clone())];
        assert!(quasi_triangle_defect(&degenerate) <= 0.0);

        let collinear = vec![(Point::real(0.0), Point::real(0.5), Point::real(0.9))];
        assert!(quasi_triangle_defect(&collinear) <= 0.0);

        let mut triples = Vec::new();
        let xs = sample_ball(2, 3000, 71);
        let ys = sample_ball(2, 3000, 72);
        let us = sample_ball(2, 3000, 73);
        for ((a, b), c) in xs.into_iter().zip(ys).zip(us) {
            triples.push((a, b, c));
        }
        assert!(quasi_triangle_defect(&triples) <= 1e-12);
    }

    #[test]
    fn boundary_points_are_rejected() {
        let boundary = Point::new(vec![cx(1.0, 0.0)]).unwrap();
        assert!(boundary.require_interior().is_err());
        assert!(Automorphism::involution(boundary).is_err());
    }

    #[test]
    fn point_json_roundtrip() {
        let p = Point::new(vec![cx(0.25, -0.5), cx(0.0, 0.125)]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[0.25,-0.5,0.0,0.125]");
        let back: Point = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
