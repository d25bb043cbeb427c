//! sl₂-triples `(Y, H₀, X)` with `X ∈ V`, `Y ∈ V*` and `H₀` central, and
//! relative invariants on V.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{vector, Matrix, Scalar, Vector};
use crate::liecore::{center, derived_subalgebra, FundamentalTriplet};
use crate::localg::{build_local, LocalAlgebra};
use crate::poly::PolyInvariant;

/// The three defects of a candidate triple; all zero for an sl₂-triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Residuals {
    /// `[H₀, X] − 2X`
    pub h_x: Vector,
    /// `[H₀, Y] + 2Y`
    pub h_y: Vector,
    /// `[Y, X] − H₀`
    pub y_x: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Certificate {
    pub x: Vector,
    pub h0: Vector,
    pub y: Vector,
    pub residuals: Sl2Residuals,
}

impl Sl2Certificate {
    /// Computes the residuals of `(y, h0, x)` in Γ.
    pub fn new(l: &LocalAlgebra, x: Vector, h0: Vector, y: Vector) -> Self {
        let two = Scalar::from_int(2);
        let h_x = vector::sub(&l.act(&h0, &x), &vector::scale(&two, &x));
        let h_y = vector::add(&l.act_dual(&h0, &y), &vector::scale(&two, &y));
        let y_x = vector::sub(&vector::neg(&l.bracket_xy(&x, &y)), &h0);
        Sl2Certificate { x, h0, y, residuals: Sl2Residuals { h_x, h_y, y_x } }
    }

    pub fn is_exact(&self) -> bool {
        let r = &self.residuals;
        [&r.h_x, &r.h_y, &r.y_x].iter().all(|v| vector::is_zero(v))
    }
}

/// One clause of assumption (H) that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum HViolation {
    /// (a) the center of g₀ must be one-dimensional.
    CenterDimension { dim: usize },
    /// (b) the center must act on V by scalars.
    NotScalar,
    /// (b) and the scalar must be nonzero.
    TrivialCharacter,
}

impl HViolation {
    pub fn clause(&self) -> char {
        match self {
            HViolation::CenterDimension { .. } => 'a',
            HViolation::NotScalar | HViolation::TrivialCharacter => 'b',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionH {
    pub ok: bool,
    /// The central element with `ρ(H₀) = 2·Id`, when (H) holds.
    pub h0: Option<Vector>,
    pub violations: Vec<HViolation>,
}

/// Checks assumption (H): `Z(g₀)` is a line acting on V by a nonzero scalar.
pub fn assumption_h_check(t: &FundamentalTriplet) -> AssumptionH {
    let z = center(&t.g0);
    let mut violations = Vec::new();
    if z.len() != 1 {
        violations.push(HViolation::CenterDimension { dim: z.len() });
    }
    let mut h0 = None;
    if let Some(zv) = z.first() {
        let m = t.rho.apply(zv);
        let d = t.dim_v();
        let c = if d == 0 { Scalar::zero() } else { m[(0, 0)].clone() };
        if m != Matrix::scalar(d, &c) {
            violations.push(HViolation::NotScalar);
        } else if c.is_zero() {
            violations.push(HViolation::TrivialCharacter);
        } else if z.len() == 1 {
            h0 = Some(vector::scale(&(&Scalar::from_int(2) / &c), zv));
        }
    }
    let ok = violations.is_empty();
    AssumptionH { ok, h0: if ok { h0 } else { None }, violations }
}

/// Columns `ρ(u)X` for `u` running over a basis of `g₀′`.
fn derived_orbit_tangent(t: &FundamentalTriplet, x: &[Scalar]) -> Vec<Vector> {
    derived_subalgebra(&t.g0).iter().map(|u| t.rho.apply(u).mul_vec(x)).collect()
}

/// Property (P) at X: `X ∉ g₀′·X`. Reads only ρ and g₀′.
pub fn property_p_test(t: &FundamentalTriplet, x: &[Scalar]) -> bool {
    if vector::is_zero(x) {
        return false;
    }
    let cols = derived_orbit_tangent(t, x);
    if cols.is_empty() {
        return true;
    }
    let a = Matrix::from_columns(x.len(), &cols);
    let mut with_x = cols;
    with_x.push(x.to_vec());
    Matrix::from_columns(x.len(), &with_x).rank() > a.rank()
}

fn require_h(t: &FundamentalTriplet) -> Result<Vector> {
    let h = assumption_h_check(t);
    h.h0.ok_or_else(|| {
        let clauses: Vec<String> = h.violations.iter().map(|v| format!("({}) {v:?}", v.clause())).collect();
        Error::NoTriple(format!("assumption (H) fails: {}", clauses.join(", ")))
    })
}

/// Completes X to an sl₂-triple: picks `Y ∈ (g₀′·X)^⊥` with `Y(X) ≠ 0`, then
/// rescales it so that `[Y, X] = H₀`.
pub fn complete_triple(t: &FundamentalTriplet, x: &[Scalar]) -> Result<Sl2Certificate> {
    let h0 = require_h(t)?;
    if !property_p_test(t, x) {
        return Err(Error::NoTriple("X lies in g0'.X".into()));
    }
    let l = build_local(t)?;
    let d = t.dim_v();
    let cols = derived_orbit_tangent(t, x);
    let annihilator = if cols.is_empty() {
        (0..d).map(|i| vector::unit(d, i)).collect()
    } else {
        Matrix::from_rows(cols).kernel_basis()
    };
    let y = annihilator
        .into_iter()
        .find(|y| !vector::dot(y, x).is_zero())
        .expect("property (P) gives a form vanishing on g0'.X but not on X");
    let yx = vector::neg(&l.bracket_xy(x, &y));
    let k = h0.iter().position(|c| !c.is_zero()).expect("H0 is nonzero");
    let lambda = &yx[k] / &h0[k];
    assert!(!lambda.is_zero(), "[Y, X] must be a nonzero multiple of H0");
    assert_eq!(vector::scale(&lambda, &h0), yx, "[Y, X] must lie on the line of H0");
    let y = vector::scale(&lambda.recip(), &y);
    Ok(Sl2Certificate::new(&l, x.to_vec(), h0, y))
}

/// Outcome of checking `dR(x)·ρ(A)x = dχ(A)·R(x)` on a basis of g₀.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum InvariantCheck {
    /// `dχ` as a covector on the basis of g₀.
    Character { dchi: Vector },
    /// The basis element whose vector field does not map R to a multiple of R.
    Failure { basis_index: usize },
}

/// Vector field `x ↦ M x` in the row-major layout of [`PolyInvariant::vector_field`].
fn linear_field(m: &Matrix) -> Vec<Scalar> {
    let n = m.rows();
    (0..n * n).map(|r| m[(r % n, r / n)].clone()).collect()
}

fn check_poly(t: &FundamentalTriplet, r: &PolyInvariant) -> Result<u32> {
    if r.is_zero() {
        return Err(Error::Refused("the zero polynomial is not a relative invariant".into()));
    }
    if r.nvars() != t.dim_v() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables, V has dimension {}",
            r.nvars(),
            t.dim_v()
        )));
    }
    r.homogeneous_degree().ok_or_else(|| Error::Refused("relative invariants must be homogeneous".into()))
}

/// Infinitesimal relative invariance of the polynomial `R` on V.
pub fn relative_invariant_check(t: &FundamentalTriplet, r: &PolyInvariant) -> Result<InvariantCheck> {
    check_poly(t, r)?;
    let mut dchi = Vec::with_capacity(t.dim_g0());
    for (k, a) in t.rho.action.iter().enumerate() {
        match r.vector_field(&linear_field(a)).ratio_to(r) {
            Some(c) => dchi.push(c),
            None => return Ok(InvariantCheck::Failure { basis_index: k }),
        }
    }
    Ok(InvariantCheck::Character { dchi })
}

/// The triple through `x` built from the logarithmic gradient of `R`:
/// `Y = −B₀(H₀,H₀)/dχ(H₀) · dR(x)/R(x)`, with `dχ(H₀) = 2·deg R`.
pub fn gradlog_triple(t: &FundamentalTriplet, r: &PolyInvariant, x: &[Scalar]) -> Result<Sl2Certificate> {
    let p = check_poly(t, r)?;
    let h0 = require_h(t)?;
    let InvariantCheck::Character { dchi } = relative_invariant_check(t, r)? else {
        return Err(Error::Refused("R is not a relative invariant".into()));
    };
    if x.len() != t.dim_v() {
        return Err(Error::DimensionMismatch(format!("point has length {}, expected {}", x.len(), t.dim_v())));
    }
    let rx = r.eval(x);
    if rx.is_zero() {
        return Err(Error::Refused("R vanishes at the point".into()));
    }
    let dchi_h0 = Scalar::from_int(2 * i64::from(p));
    assert_eq!(vector::dot(&dchi, &h0), dchi_h0, "homogeneity fixes dchi(H0) = 2 deg R");
    let factor = -&(&t.b0.eval(&h0, &h0) / &(&dchi_h0 * &rx));
    let y: Vector = r.gradient().iter().map(|g| &factor * &g.eval(x)).collect();
    let l = build_local(t)?;
    Ok(Sl2Certificate::new(&l, x.to_vec(), h0, y))
}

#[cfg(test)]
mod tests;
