//! Symbolic analytic functions on the ball.
//!
//! An [`Expr`] is a small expression tree over the grammar that every
//! construction in this crate needs: kernel powers `(1 - <z, a>)^{-gamma}`,
//! coordinate-affine factors, sums, products, scalar multiples, integer
//! powers, and lazy composition with a ball automorphism.  Real powers of
//! complex bases always use the principal branch, which is single-valued
//! here because `Re (1 - <z, a>) > 0` whenever `|a| < 1` and `|z| <= 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplx;
use crate::error::Error;
use crate::geometry::{herm_inner, Automorphism, Point};
use crate::Result;

/// Expression tree for an analytic function, evaluable on the closed ball
/// as long as every kernel center is interior.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Expr {
    /// The constant `value`.
    Const {
        #[serde(with = "cplx::pair")]
        value: Complex64,
    },
    /// `c0 + <z, w>`.
    Affine {
        #[serde(with = "cplx::pair")]
        c0: Complex64,
        w: Point,
    },
    /// `(1 - <z, center>)^{-gamma}`.
    Kernel { center: Point, gamma: f64 },
    Sum { terms: Vec<Expr> },
    Product { factors: Vec<Expr> },
    Scale {
        #[serde(with = "cplx::pair")]
        factor: Complex64,
        inner: Box<Expr>,
    },
    IntPow { base: Box<Expr>, exponent: i32 },
    /// `f(map(z))`, evaluated lazily.
    Compose { map: Automorphism, inner: Box<Expr> },
}

impl Expr {
    pub fn constant(value: Complex64) -> Self {
        Expr::Const { value }
    }

    pub fn one() -> Self {
        Expr::constant(Complex64::new(1.0, 0.0))
    }

    pub fn zero() -> Self {
        Expr::constant(Complex64::new(0.0, 0.0))
    }

    /// The kernel power `(1 - <z, center>)^{-gamma}`; a center at the origin
    /// or a zero exponent collapses to the constant 1.
    pub fn kernel(center: Point, gamma: f64) -> Result<Self> {
        center.require_interior()?;
        if gamma == 0.0 || center.norm_sqr() == 0.0 {
            return Ok(Expr::one());
        }
        Ok(Expr::Kernel { center, gamma })
    }

    pub fn scale(self, factor: Complex64) -> Self {
        Expr::Scale {
            factor,
            inner: Box::new(self),
        }
    }

    pub fn sum(terms: Vec<Expr>) -> Self {
        if terms.is_empty() {
            Expr::zero()
        } else {
            Expr::Sum { terms }
        }
    }

    pub fn product(factors: Vec<Expr>) -> Self {
        if factors.is_empty() {
            Expr::one()
        } else {
            Expr::Product { factors }
        }
    }

    pub fn compose(map: Automorphism, inner: Expr) -> Self {
        Expr::Compose {
            map,
            inner: Box::new(inner),
        }
    }

    /// Recursive evaluation; every leaf is defined on the closed ball.
    pub fn eval(&self, z: &Point) -> Complex64 {
        match self {
            Expr::Const { value } => *value,
            Expr::Affine { c0, w } => c0 + herm_inner(z, w),
            Expr::Kernel { center, gamma } => {
                let base = Complex64::new(1.0, 0.0) - herm_inner(z, center);
                base.powf(-*gamma)
            }
            Expr::Sum { terms } => terms.iter().map(|t| t.eval(z)).sum(),
            Expr::Product { factors } => factors
                .iter()
                .map(|f| f.eval(z))
                .fold(Complex64::new(1.0, 0.0), |acc, v| acc * v),
            Expr::Scale { factor, inner } => factor * inner.eval(z),
            Expr::IntPow { base, exponent } => base.eval(z).powi(*exponent),
            Expr::Compose { map, inner } => inner.eval(&map.apply(z)),
        }
    }

    /// The pole center when the whole expression is a (scaled, integer
    /// powered) single kernel; used to pick importance-sampled quadrature.
    pub fn single_pole(&self) -> Option<&Point> {
        match self {
            Expr::Kernel { center, gamma } if *gamma > 0.0 => Some(center),
            Expr::Scale { inner, .. } => inner.single_pole(),
            Expr::IntPow { base, exponent } if *exponent > 0 => base.single_pole(),
            _ => None,
        }
    }

    /// Collects every kernel center reachable without crossing a
    /// composition; sup-norm grids refine toward these directions.
    pub fn kernel_centers(&self) -> Vec<Point> {
        let mut out = Vec::new();
        self.collect_centers(&mut out);
        out
    }

    fn collect_centers(&self, out: &mut Vec<Point>) {
        match self {
            Expr::Kernel { center, .. } => out.push(center.clone()),
            Expr::Sum { terms } => terms.iter().for_each(|t| t.collect_centers(out)),
            Expr::Product { factors } => factors.iter().for_each(|f| f.collect_centers(out)),
            Expr::Scale { inner, .. } => inner.collect_centers(out),
            Expr::IntPow { base, .. } => base.collect_centers(out),
            Expr::Const { .. } | Expr::Affine { .. } | Expr::Compose { .. } => {}
        }
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        1 + match self {
            Expr::Sum { terms } => terms.iter().map(Expr::node_count).sum(),
            Expr::Product { factors } => factors.iter().map(Expr::node_count).sum(),
            Expr::Scale { inner, .. } => inner.node_count(),
            Expr::IntPow { base, .. } => base.node_count(),
            Expr::Compose { inner, .. } => inner.node_count(),
            _ => 0,
        }
    }
}

/// Validates an expression against a dimension before evaluation on points
/// of C^n: every leaf carrying coordinates must match.
pub fn check_dimension(expr: &Expr, n: usize) -> Result<()> {
    let bad = |d: usize| Error::DimensionMismatch(d, n);
    match expr {
        Expr::Const { .. } => Ok(()),
        Expr::Affine { w, .. } => (w.dim() == n).then_some(()).ok_or(bad(w.dim())),
        Expr::Kernel { center, .. } => {
            (center.dim() == n).then_some(()).ok_or(bad(center.dim()))
        }
        Expr::Sum { terms } => terms.iter().try_for_each(|t| check_dimension(t, n)),
        Expr::Product { factors } => factors.iter().try_for_each(|f| check_dimension(f, n)),
        Expr::Scale { inner, .. } => check_dimension(inner, n),
        Expr::IntPow { base, .. } => check_dimension(base, n),
        Expr::Compose { map, inner } => {
            if map.dim() != n {
                return Err(bad(map.dim()));
            }
            check_dimension(inner, n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constants_and_kernels_evaluate() {
        let one = Expr::one();
        assert_eq!(one.eval(&Point::real(0.3)), cx(1.0, 0.0));

        let a = Point::real(0.6);
        let f = Expr::kernel(a.clone(), 2.0).unwrap();
        // f_{2,a}(0) = 1.
        assert_eq!(f.eval(&Point::origin(1)), cx(1.0, 0.0));
        // f_{1,a}(a) = (1 - |a|^2)^{-1}.
        let g = Expr::kernel(a.clone(), 1.0).unwrap();
        let expect = 1.0 / a.one_minus_norm_sqr();
        assert!((g.eval(&a) - cx(expect, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn kernel_degenerate_cases_collapse() {
        assert!(matches!(
            Expr::kernel(Point::origin(2), 3.0).unwrap(),
            Expr::Const { .. }
        ));
        assert!(matches!(
            Expr::kernel(Point::real(0.4), 0.0).unwrap(),
            Expr::Const { .. }
        ));
    }

    #[test]
    fn principal_branch_matches_integer_powers() {
        let a = Point::new(vec![cx(0.5, 0.3)]).unwrap();
        let z = Point::new(vec![cx(-0.2, 0.6)]).unwrap();
        let via_powf = Expr::kernel(a.clone(), 3.0).unwrap().eval(&z);
        let base = cx(1.0, 0.0) - herm_inner(&z, &a);
        let via_mul = (base * base * base).inv();
        assert!((via_powf - via_mul).norm() < 1e-13 * via_mul.norm());
    }

    #[test]
    fn algebra_evaluates_recursively() {
        let z = Point::new(vec![cx(0.1, 0.2)]).unwrap();
        let f = Expr::sum(vec![
            Expr::one().scale(cx(2.0, 0.0)),
            Expr::Affine {
                c0: cx(0.0, 0.0),
                w: Point::real(1.0),
            },
        ]);
        // 2 + z * conj(1) = 2 + z.
        let got = f.eval(&z);
        assert!((got - cx(2.1, 0.2)).norm() < 1e-15);

        let sq = Expr::IntPow {
            base: Box::new(f),
            exponent: 2,
        };
        let expect = cx(2.1, 0.2) * cx(2.1, 0.2);
        assert!((sq.eval(&z) - expect).norm() < 1e-14);
    }

    #[test]
    fn composition_is_lazy_and_correct() {
        let a = Point::real(0.4);
        let phi = Automorphism::involution(a.clone()).unwrap();
        let f = Expr::kernel(Point::real(0.2), 1.5).unwrap();
        let g = Expr::compose(phi.clone(), f.clone());
        let z = Point::new(vec![cx(0.3, -0.1)]).unwrap();
        assert_eq!(g.eval(&z), f.eval(&phi.apply(&z)));
    }

    #[test]
    fn json_round_trip_preserves_values() {
        let f = Expr::sum(vec![
            Expr::kernel(Point::new(vec![cx(0.3, 0.4)]).unwrap(), 2.5)
                .unwrap()
                .scale(cx(1.0, -2.0)),
            Expr::one(),
        ]);
        let text = serde_json::to_string(&f).unwrap();
        assert!(text.contains("\"kind\":\"kernel\""));
        let back: Expr = serde_json::from_str(&text).unwrap();
        let z = Point::new(vec![cx(-0.2, 0.1)]).unwrap();
        assert!((f.eval(&z) - back.eval(&z)).norm() < 1e-15);
    }

    #[test]
    fn single_pole_detection() {
        let a = Point::real(0.7);
        let f = Expr::kernel(a.clone(), 2.0).unwrap().scale(cx(3.0, 0.0));
        assert_eq!(f.single_pole().unwrap(), &a);
        let s = Expr::sum(vec![f, Expr::one()]);
        assert!(s.single_pole().is_none());
    }
}
