//! Polynomial Dirichlet problem on quadric boundaries.
//!
//! For a domain bounded by `Z(psi)` with `deg psi = 2`, polynomial data `f`
//! is split as `f = psi*q + h` with `h` harmonic; `h` then agrees with `f` on
//! the boundary. For ellipsoids the slice map `filtered(m) -> filtered(m)` of
//! `q -> Laplacian(psi*q)` is square and invertible, so the split always exists
//! and is unique.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fischer::{coordinates, from_coordinates, FischerOperator};
use crate::linalg;
use crate::monomial::{Basis, Degree, Monomial, SliceKind};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

pub const DEFAULT_TOL_ROOT: f64 = 1e-12;
pub const DEFAULT_TOL_BOUNDARY: f64 = 1e-9;

/// Region `{psi < 0}` (the component containing `interior_point`) of a quadric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadricDomain {
    psi: Poly,
    interior_point: Vec<f64>,
    /// `1/a_i^2` when `psi` is a positive multiple of `sum x_i^2/a_i^2 - 1`.
    inverse_squared_axes: Option<Vec<Scalar>>,
}

impl QuadricDomain {
    pub fn new(psi: Poly, interior_point: Vec<f64>) -> Result<Self> {
        if psi.field() != Field::Q {
            return Err(Error::FieldMismatch { left: Field::Q, right: psi.field() });
        }
        if psi.degree() != Degree::Finite(2) {
            return Err(Error::NotQuadric);
        }
        if interior_point.len() != psi.arity() {
            return Err(Error::DimensionMismatch { expected: psi.arity(), got: interior_point.len() });
        }
        let value = psi.evaluate_f64(&interior_point)?;
        if value.is_nan() || value >= 0.0 {
            return Err(Error::InteriorNotInside { value });
        }
        let inverse_squared_axes = ellipsoid_axes(&psi);
        Ok(QuadricDomain { psi, interior_point, inverse_squared_axes })
    }

    /// `sum x_i^2/a_i^2 - 1` from positive rational semi-axes, centred at the origin.
    pub fn ellipsoid(semi_axes: &[Scalar]) -> Result<Self> {
        if semi_axes.is_empty() {
            return Err(Error::InvalidArity);
        }
        let d = semi_axes.len();
        let mut terms = vec![(vec![0; d], Scalar::from_i64(Field::Q, -1))];
        for (axis, a) in semi_axes.iter().enumerate() {
            if a.field() != Field::Q || a.to_f64().is_none_or(|v| v <= 0.0) {
                return Err(Error::InvalidParameter(format!("semi-axis {a} must be a positive rational")));
            }
            let mut e = vec![0; d];
            e[axis] = 2;
            terms.push((e, (a * a).inv().expect("positive")));
        }
        Self::new(Poly::from_terms(d, Field::Q, terms)?, vec![0.0; d])
    }

    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn interior_point(&self) -> &[f64] {
        &self.interior_point
    }

    pub fn arity(&self) -> usize {
        self.psi.arity()
    }

    pub fn is_ellipsoidal(&self) -> bool {
        self.inverse_squared_axes.is_some()
    }

    pub fn inverse_squared_axes(&self) -> Option<&[Scalar]> {
        self.inverse_squared_axes.as_deref()
    }
}

fn ellipsoid_axes(psi: &Poly) -> Option<Vec<Scalar>> {
    let d = psi.arity();
    if psi.len() != d + 1 {
        return None;
    }
    let c0 = psi.coeff(&Monomial::one(d))?.to_f64()?;
    if c0 >= 0.0 {
        return None;
    }
    let scale = (-&psi.constant_term()).inv()?;
    (0..d)
        .map(|axis| {
            let mut e = vec![0; d];
            e[axis] = 2;
            let b = psi.coeff(&Monomial::new(e))?;
            (b.to_f64()? > 0.0).then(|| b * &scale)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub harmonic_exact: bool,
    pub identity_exact: bool,
    pub boundary_max_error: f64,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletSolution {
    pub domain: QuadricDomain,
    pub f: Poly,
    pub h: Poly,
    pub q: Poly,
    pub verification: Verification,
}

fn exact_checks(domain: &QuadricDomain, f: &Poly, h: &Poly, q: &Poly) -> (bool, bool) {
    let identity = f.checked_sub(h).and_then(|lhs| domain.psi.checked_mul(q).map(|rhs| lhs == rhs)).unwrap_or(false);
    (h.laplacian().is_zero(), identity)
}

/// Solves `Laplacian(psi*q) = Laplacian(f)` on `filtered(deg f - 2)` and
/// returns `h = f - psi*q`. Exact checks are filled in; boundary sampling is
/// left to [`verify_solution`] since it needs a random source.
pub fn dirichlet_solve(domain: &QuadricDomain, f: &Poly) -> Result<DirichletSolution> {
    if f.field() != Field::Q {
        return Err(Error::FieldMismatch { left: Field::Q, right: f.field() });
    }
    if f.arity() != domain.arity() {
        return Err(Error::ArityMismatch { left: domain.arity(), right: f.arity() });
    }
    let lap = f.laplacian();
    let q = if lap.is_zero() {
        Poly::zero(f.arity(), Field::Q)
    } else {
        let m = f.degree().finite().expect("nonzero") - 2;
        let slice = Basis::new(f.arity(), SliceKind::Filtered(m))?;
        let op = FischerOperator::new(domain.psi.clone())?;
        let a = op.matrix(&slice, &slice)?;
        let x = linalg::solve(&a, &coordinates(&lap, &slice)?)?.ok_or(Error::UnsolvableSlice)?;
        from_coordinates(&slice, Field::Q, &x)?
    };
    let h = f.checked_sub(&domain.psi.checked_mul(&q)?)?;
    let (harmonic_exact, identity_exact) = exact_checks(domain, f, &h, &q);
    Ok(DirichletSolution {
        domain: domain.clone(),
        f: f.clone(),
        h,
        q,
        verification: Verification {
            harmonic_exact,
            identity_exact,
            boundary_max_error: 0.0,
            samples: 0,
            passed: harmonic_exact && identity_exact,
        },
    })
}

/// Boundary points reached by shooting rays from the interior point.
///
/// Along `p + t*u`, `psi` is the quadratic `A t^2 + B t + C` with `C = psi(p) < 0`;
/// the smallest positive root is polished by Newton steps and kept when
/// `|psi(x)| < tol_root`. Rays that miss are retried with fresh directions.
pub fn boundary_samples<R: Rng + ?Sized>(
    domain: &QuadricDomain,
    count: usize,
    tol_root: f64,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    if count == 0 {
        return Err(Error::InvalidParameter("sample count must be at least 1".into()));
    }
    let d = domain.arity();
    let p = &domain.interior_point;
    let quad = domain.psi.homogeneous_component(2);
    let grad = (0..d).map(|i| domain.psi.partial_derivative(i)).collect::<Result<Vec<_>>>()?;
    let grad_p = grad.iter().map(|g| g.evaluate_f64(p)).collect::<Result<Vec<_>>>()?;
    let c = domain.psi.evaluate_f64(p)?;

    let max_attempts = 64 * count + 64;
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        if attempts == max_attempts {
            return Err(Error::NoBoundaryHit { attempts });
        }
        attempts += 1;
        let u = random_direction(d, rng);
        let a = quad.evaluate_f64(&u)?;
        let b: f64 = grad_p.iter().zip(&u).map(|(g, ui)| g * ui).sum();
        let Some(mut t) = smallest_positive_root(a, b, c) else { continue };
        for _ in 0..3 {
            let slope = 2.0 * a * t + b;
            if slope == 0.0 {
                break;
            }
            t -= (a * t * t + b * t + c) / slope;
        }
        let x: Vec<f64> = p.iter().zip(&u).map(|(pi, ui)| pi + t * ui).collect();
        let v = domain.psi.evaluate_f64(&x)?;
        if v.abs() < tol_root {
            out.push(x);
        }
    }
    Ok(out)
}

fn random_direction<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn smallest_positive_root(a: f64, b: f64, c: f64) -> Option<f64> {
    if a == 0.0 {
        let t = -c / b;
        return (b != 0.0 && t > 0.0).then_some(t);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    // cancellation-free pair of roots
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = vec![q / a];
    if q != 0.0 {
        roots.push(c / q);
    }
    roots.into_iter().filter(|t| t.is_finite() && *t > 0.0).min_by(f64::total_cmp)
}

/// One sampled boundary point with `psi(x)` and `f(x) - h(x)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundarySample {
    pub point: Vec<f64>,
    pub psi: f64,
    pub residual: f64,
}

/// Samples the boundary and evaluates the exact difference `f - h` there.
pub fn sample_residuals<R: Rng + ?Sized>(
    sol: &DirichletSolution,
    count: usize,
    tol_root: f64,
    rng: &mut R,
) -> Result<Vec<BoundarySample>> {
    let diff = sol.f.checked_sub(&sol.h)?;
    boundary_samples(&sol.domain, count, tol_root, rng)?
        .into_iter()
        .map(|point| {
            Ok(BoundarySample {
                psi: sol.domain.psi.evaluate_f64(&point)?,
                residual: diff.evaluate_f64(&point)?,
                point,
            })
        })
        .collect()
}

/// Recomputes the exact checks and measures `max |f - h|` over `count`
/// boundary samples. Passes iff both exact checks hold and the maximum is
/// below `tol_boundary`.
pub fn verify_solution<R: Rng + ?Sized>(
    sol: &DirichletSolution,
    count: usize,
    tol_boundary: f64,
    tol_root: f64,
    rng: &mut R,
) -> Result<Verification> {
    let (harmonic_exact, identity_exact) = exact_checks(&sol.domain, &sol.f, &sol.h, &sol.q);
    let samples = sample_residuals(sol, count, tol_root, rng)?;
    let boundary_max_error = samples.iter().map(|s| s.residual.abs()).fold(0.0, f64::max);
    Ok(Verification {
        harmonic_exact,
        identity_exact,
        boundary_max_error,
        samples: samples.len(),
        passed: harmonic_exact && identity_exact && boundary_max_error < tol_boundary,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KsResidual {
    /// `|x|^2 - h` where `h` solves the problem for data `|x|^2`.
    pub residual: Poly,
    pub proportional_to_psi: bool,
    pub factor: Option<Scalar>,
}

/// Solves for data `|x|^2` and tests whether `|x|^2 - h` is a scalar multiple of `psi`.
pub fn ks_residual(domain: &QuadricDomain) -> Result<KsResidual> {
    if !domain.is_ellipsoidal() {
        return Err(Error::NotEllipsoidal);
    }
    let norm = Poly::norm_squared(domain.arity(), Field::Q);
    let sol = dirichlet_solve(domain, &norm)?;
    let residual = norm.checked_sub(&sol.h)?;
    let (lead, lead_coeff) = domain.psi.terms().next_back().expect("psi is nonzero");
    let factor = &residual.coeff_or_zero(lead) / lead_coeff;
    let proportional = residual.checked_sub(&domain.psi.checked_scale(&factor)?)?.is_zero();
    Ok(KsResidual { residual, proportional_to_psi: proportional, factor: proportional.then_some(factor) })
}
