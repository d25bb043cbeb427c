//! The local Lie algebra Γ(g₀, B₀, ρ) = V* ⊕ g₀ ⊕ V and the operations on
//! triplets that change it: form deformation, central rescaling, isomorphisms,
//! the V ↔ V* swap and the reduction of non-transitive data.
//!
//! Conventions: `[X, Y]` (X ∈ V, Y ∈ V*) is the element of g₀ with
//! `B₀([X,Y], U) = Y(ρ(U)X)`; `[Y, X] = −[X, Y]`; `[U, Y] = ρ*(U)Y`.
//! V* carries the coordinates dual to the basis of V.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{span_basis, vector, Matrix, Scalar, Vector};
use crate::liecore::{
    center, dual_rep, grading_element, rep_kernel, validate, FundamentalTriplet, QuadraticForm, Representation,
    Violation,
};
use crate::par;

#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    triplet: FundamentalTriplet,
    dual: Representation,
    gram_inverse: Matrix,
    /// `xy[i * dim_v + j]` = `[eᵢ, fⱼ]` in g₀ coordinates.
    xy: Vec<Vector>,
}

/// A homogeneous element of Γ: degree −1 (V*), 0 (g₀) or 1 (V).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalElem {
    pub degree: i8,
    pub coords: Vector,
}

impl LocalElem {
    pub fn v(coords: Vector) -> Self {
        LocalElem { degree: 1, coords }
    }

    pub fn g0(coords: Vector) -> Self {
        LocalElem { degree: 0, coords }
    }

    pub fn dual(coords: Vector) -> Self {
        LocalElem { degree: -1, coords }
    }

    fn neg(mut self) -> Self {
        self.coords = vector::neg(&self.coords);
        self
    }
}

/// Builds Γ(g₀, B₀, ρ). The triplet is validated first and the Jacobi identity
/// `[U,[X,Y]] = [[U,X],Y] + [X,[U,Y]]` is re-checked on all basis triples.
pub fn build_local(t: &FundamentalTriplet) -> Result<LocalAlgebra> {
    let report = validate(t)?;
    if let Some(Violation::FormDegenerate { rank }) =
        report.violations.iter().find(|v| matches!(v, Violation::FormDegenerate { .. }))
    {
        return Err(Error::DegenerateForm(format!("B0 has rank {rank} < {}", t.dim_g0())));
    }
    if !report.is_valid() {
        return Err(Error::InvalidTriplet(report.violations));
    }
    let l = LocalAlgebra::from_valid(t.clone());
    if let Some((k, i, j)) = l.jacobi_violation() {
        return Err(Error::Refused(format!("Jacobi identity fails on (U{k}, X{i}, Y{j})")));
    }
    Ok(l)
}

impl LocalAlgebra {
    fn from_valid(triplet: FundamentalTriplet) -> Self {
        let n = triplet.dim_g0();
        let d = triplet.dim_v();
        let gram_inverse = triplet.b0.gram.inverse().expect("nondegenerate B0");
        let rho = &triplet.rho;
        let rows = par::map_range_weighted(d, d * d * n * n, |i| {
            (0..d)
                .map(|j| {
                    let rhs: Vector = (0..n).map(|k| rho.action[k][(j, i)].clone()).collect();
                    gram_inverse.mul_vec(&rhs)
                })
                .collect::<Vec<_>>()
        });
        let dual = dual_rep(rho);
        LocalAlgebra { triplet, dual, gram_inverse, xy: rows.into_iter().flatten().collect() }
    }

    pub fn triplet(&self) -> &FundamentalTriplet {
        &self.triplet
    }

    /// ρ*, the action on V*.
    pub fn dual_action(&self) -> &Representation {
        &self.dual
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inverse
    }

    pub fn dim_g0(&self) -> usize {
        self.triplet.dim_g0()
    }

    pub fn dim_v(&self) -> usize {
        self.triplet.dim_v()
    }

    /// `[eᵢ, fⱼ]` for basis vectors `eᵢ ∈ V`, `fⱼ ∈ V*`.
    pub fn xy_basis(&self, i: usize, j: usize) -> &Vector {
        &self.xy[i * self.dim_v() + j]
    }

    /// `[X, Y] ∈ g₀`.
    pub fn bracket_xy(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let d = self.dim_v();
        let mut out = vector::zeros(self.dim_g0());
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                vector::axpy(&mut out, &(a * b), &self.xy[i * d + j]);
            }
        }
        out
    }

    /// `ρ(U)X`.
    pub fn act(&self, u: &[Scalar], x: &[Scalar]) -> Vector {
        self.triplet.rho.apply(u).mul_vec(x)
    }

    /// `ρ*(U)Y`.
    pub fn act_dual(&self, u: &[Scalar], y: &[Scalar]) -> Vector {
        self.dual.apply(u).mul_vec(y)
    }

    /// The partial bracket of Γ; `None` when the degrees add up to ±2.
    pub fn bracket(&self, a: &LocalElem, b: &LocalElem) -> Option<LocalElem> {
        Some(match (a.degree, b.degree) {
            (0, 0) => LocalElem::g0(self.triplet.g0.bracket(&a.coords, &b.coords)),
            (0, 1) => LocalElem::v(self.act(&a.coords, &b.coords)),
            (0, -1) => LocalElem::dual(self.act_dual(&a.coords, &b.coords)),
            (1, -1) => LocalElem::g0(self.bracket_xy(&a.coords, &b.coords)),
            (1, 0) | (-1, 0) | (-1, 1) => return self.bracket(b, a).map(LocalElem::neg),
            _ => return None,
        })
    }

    /// First basis triple `(U, X, Y)` violating `[U,[X,Y]] = [[U,X],Y] + [X,[U,Y]]`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim_g0();
        let d = self.dim_v();
        let g0 = &self.triplet.g0;
        let hit = par::map_range_weighted(n, n * n * d * d * d, |k| {
            let ad = g0.ad(k);
            let r = &self.triplet.rho.action[k];
            let rs = &self.dual.action[k];
            for i in 0..d {
                let ux = r.col(i);
                for j in 0..d {
                    let lhs = ad.mul_vec(&self.xy[i * d + j]);
                    let mut rhs = self.bracket_xy(&ux, &vector::unit(d, j));
                    vector::axpy(&mut rhs, &Scalar::one(), &self.bracket_xy(&vector::unit(d, i), &rs.col(j)));
                    if lhs != rhs {
                        return Some((k, i, j));
                    }
                }
            }
            None
        });
        hit.into_iter().flatten().next()
    }

    pub fn form(&self) -> LocalForm<'_> {
        LocalForm { local: self }
    }
}

/// The local extended form: `B₀` on g₀, `B(X, Y) = B(Y, X) = Y(X)`, zero
/// between other pieces.
#[derive(Debug, Clone, Copy)]
pub struct LocalForm<'a> {
    local: &'a LocalAlgebra,
}

impl LocalForm<'_> {
    pub fn eval(&self, a: &LocalElem, b: &LocalElem) -> Scalar {
        match (a.degree, b.degree) {
            (0, 0) => self.local.triplet.b0.eval(&a.coords, &b.coords),
            (1, -1) | (-1, 1) => vector::dot(&a.coords, &b.coords),
            _ => Scalar::zero(),
        }
    }

    /// Gram matrix on the basis of V* followed by g₀ and V.
    pub fn gram(&self) -> Matrix {
        let d = self.local.dim_v();
        let n = self.local.dim_g0();
        let mut m = Matrix::zeros(2 * d + n, 2 * d + n);
        for i in 0..d {
            m[(i, d + n + i)] = Scalar::one();
            m[(d + n + i, i)] = Scalar::one();
        }
        for i in 0..n {
            for j in 0..n {
                m[(d + i, d + j)] = self.local.triplet.b0.gram[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram().is_invertible()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    pub faithful: bool,
    pub spans_v: bool,
    pub spans_dual: bool,
    pub transitive: bool,
    pub reasons: Vec<String>,
}

/// Γ is transitive iff ρ is faithful, `⟨g₀·V⟩ = V` and `⟨g₀·V*⟩ = V*`. When a
/// grading element exists the two span conditions hold automatically.
pub fn transitivity_check(l: &LocalAlgebra) -> TransitivityReport {
    let t = &l.triplet;
    let d = t.dim_v();
    let faithful = rep_kernel(&t.rho, &t.g0).is_empty();
    let graded = matches!(grading_element(t), Ok(Some(_)));
    let spans = |r: &Representation| {
        if d == 0 {
            return true;
        }
        let cols: Vec<Vector> = r.action.iter().flat_map(Matrix::columns).collect();
        !cols.is_empty() && Matrix::from_columns(d, &cols).rank() == d
    };
    let (spans_v, spans_dual) = if graded { (true, true) } else { (spans(&t.rho), spans(&l.dual)) };
    let mut reasons = Vec::new();
    if !faithful {
        reasons.push("representation is not faithful".to_string());
    }
    if !spans_v {
        reasons.push("g0.V does not span V".to_string());
    }
    if !spans_dual {
        reasons.push("g0.V* does not span V*".to_string());
    }
    TransitivityReport { faithful, spans_v, spans_dual, transitive: reasons.is_empty(), reasons }
}

/// Matrix of `u ↦ λ.u = Σ λᵢ uᵢ` for the decomposition `g₀ = ⊕ Lᵢ` given by the
/// ideal bases. Checks that they are ideals and form a direct sum equal to g₀.
pub fn ideal_scaling(t: &FundamentalTriplet, ideal_bases: &[Vec<Vector>], lambdas: &[Scalar]) -> Result<Matrix> {
    let n = t.dim_g0();
    if ideal_bases.len() != lambdas.len() {
        return Err(Error::DimensionMismatch(format!("{} ideals but {} scalars", ideal_bases.len(), lambdas.len())));
    }
    let mut cols = Vec::new();
    let mut scales = Vec::new();
    for (b, lam) in ideal_bases.iter().zip(lambdas) {
        if b.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("ideal basis vectors must have length {n}")));
        }
        if !t.g0.is_ideal(b) {
            return Err(Error::Refused("a summand is not an ideal".into()));
        }
        cols.extend(b.iter().cloned());
        scales.extend(std::iter::repeat_n(lam.clone(), b.len()));
    }
    let p = Matrix::from_columns(n, &cols);
    if cols.len() != n || !p.is_invertible() {
        return Err(Error::Refused("ideals do not decompose g0 as a direct sum".into()));
    }
    let diag = Matrix::from_fn(n, n, |i, j| if i == j { scales[i].clone() } else { Scalar::zero() });
    Ok(p.mul(&diag).mul(&p.inverse().expect("invertible")))
}

/// Replaces B₀ by `λ.B₀ = ⊕ λᵢ B₀|Lᵢ`.
pub fn deform_form(
    t: &FundamentalTriplet,
    ideal_bases: &[Vec<Vector>],
    lambdas: &[Scalar],
) -> Result<FundamentalTriplet> {
    if lambdas.iter().any(Scalar::is_zero) {
        return Err(Error::Refused("all lambdas must be nonzero".into()));
    }
    let m = ideal_scaling(t, ideal_bases, lambdas)?;
    let g = &t.b0.gram;
    for (a, ba) in ideal_bases.iter().enumerate() {
        for bb in &ideal_bases[a + 1..] {
            if ba.iter().any(|x| bb.iter().any(|y| !g.bilinear(x, y).is_zero())) {
                return Err(Error::Refused("ideals are not B0-orthogonal".into()));
            }
        }
    }
    let gram = g.mul(&m);
    if !gram.is_invertible() {
        return Err(Error::DegenerateForm("deformed form is degenerate".into()));
    }
    Ok(FundamentalTriplet::new(t.g0.clone(), QuadraticForm::new(gram), t.rho.clone()))
}

/// Matrix of `γ□U = γz + u` for `U = z + u`, `z ∈ Z`, `u ∈ Z^⊥`.
pub fn box_scaling(t: &FundamentalTriplet, center_part: &[Vector], gamma: &Scalar) -> Result<Matrix> {
    let n = t.dim_g0();
    let z = center(&t.g0);
    if center_part.iter().any(|c| c.len() != n) {
        return Err(Error::DimensionMismatch(format!("center vectors must have length {n}")));
    }
    if center_part.iter().any(|c| !crate::exactla::in_span(n, &z, c)) {
        return Err(Error::Refused("the given subspace is not central".into()));
    }
    let zb = span_basis(n, center_part);
    let l = t.b0.orthogonal_complement(&zb);
    ideal_scaling(t, &[zb, l], &[gamma.clone(), Scalar::one()])
        .map_err(|_| Error::Refused("B0 is degenerate on the central part".into()))
}

/// Replaces ρ by `γ□ρ` and checks `[X,Y]_{γ□ρ} = γ□[X,Y]_ρ` on all basis pairs.
pub fn box_rescale_rep(t: &FundamentalTriplet, center_part: &[Vector], gamma: &Scalar) -> Result<FundamentalTriplet> {
    if gamma.is_zero() {
        return Err(Error::Refused("gamma must be nonzero".into()));
    }
    let m = box_scaling(t, center_part, gamma)?;
    let n = t.dim_g0();
    let action = (0..n).map(|k| t.rho.apply(&m.col(k))).collect();
    let out = FundamentalTriplet::new(t.g0.clone(), t.b0.clone(), Representation::new(t.dim_v(), action));
    let before = build_local(t)?;
    let after = build_local(&out)?;
    let d = t.dim_v();
    for i in 0..d {
        for j in 0..d {
            if *after.xy_basis(i, j) != m.mul_vec(before.xy_basis(i, j)) {
                return Err(Error::Refused(format!("rescaled bracket identity fails at (X{i}, Y{j})")));
            }
        }
    }
    Ok(out)
}

/// A graded map `(γ̃, A, γ)` between local algebras, as coordinate matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIsomorphism {
    pub a: Matrix,
    pub gamma: Matrix,
    pub gamma_dual: Matrix,
}

/// Why a candidate map is not an isomorphism, with a basis witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoRefusal {
    Shape(String),
    NotInvertible(&'static str),
    NotLieHomomorphism {
        i: usize,
        j: usize,
    },
    /// Definition condition (a): `B₀²(Aeᵢ, Aeⱼ) ≠ B₀¹(eᵢ, eⱼ)`.
    FormNotPreserved {
        i: usize,
        j: usize,
    },
    /// `ρ₂(A eₖ) ∘ γ ≠ γ ∘ ρ₁(eₖ)`.
    NotEquivariant {
        k: usize,
    },
    /// `ρ₂*(A eₖ) ∘ γ̃ ≠ γ̃ ∘ ρ₁*(eₖ)`.
    DualNotEquivariant {
        k: usize,
    },
    /// `A[eᵢ, fⱼ] ≠ [γeᵢ, γ̃fⱼ]`.
    BracketNotPreserved {
        i: usize,
        j: usize,
    },
}

impl fmt::Display for IsoRefusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoRefusal::Shape(s) => write!(f, "shape mismatch: {s}"),
            IsoRefusal::NotInvertible(what) => write!(f, "{what} is not invertible"),
            IsoRefusal::NotLieHomomorphism { i, j } => write!(f, "A is not a Lie homomorphism at (e{i}, e{j})"),
            IsoRefusal::FormNotPreserved { i, j } => {
                write!(f, "condition (a) fails: A does not preserve B0 at (e{i}, e{j})")
            }
            IsoRefusal::NotEquivariant { k } => write!(f, "condition (b) fails: gamma does not intertwine rho(e{k})"),
            IsoRefusal::DualNotEquivariant { k } => write!(f, "dual map does not intertwine rho*(e{k})"),
            IsoRefusal::BracketNotPreserved { i, j } => write!(f, "[X{i}, Y{j}] is not preserved"),
        }
    }
}

fn check_shapes_and_hom(
    t1: &FundamentalTriplet,
    t2: &FundamentalTriplet,
    a: &Matrix,
    gamma: &Matrix,
) -> std::result::Result<(), IsoRefusal> {
    let (n1, n2, d1, d2) = (t1.dim_g0(), t2.dim_g0(), t1.dim_v(), t2.dim_v());
    if n1 != n2 || d1 != d2 {
        return Err(IsoRefusal::Shape(format!("dims (g0, V) = ({n1}, {d1}) vs ({n2}, {d2})")));
    }
    if (a.rows(), a.cols()) != (n2, n1) || (gamma.rows(), gamma.cols()) != (d2, d1) {
        return Err(IsoRefusal::Shape("map matrices have the wrong size".into()));
    }
    if !a.is_invertible() {
        return Err(IsoRefusal::NotInvertible("A"));
    }
    if !gamma.is_invertible() {
        return Err(IsoRefusal::NotInvertible("gamma"));
    }
    let img: Vec<Vector> = a.columns();
    for i in 0..n1 {
        for j in i + 1..n1 {
            if a.mul_vec(t1.g0.bracket_basis(i, j)) != t2.g0.bracket(&img[i], &img[j]) {
                return Err(IsoRefusal::NotLieHomomorphism { i, j });
            }
        }
    }
    Ok(())
}

fn check_equivariance(r1: &Representation, r2: &Representation, a: &Matrix, g: &Matrix) -> Option<usize> {
    (0..r1.action.len()).find(|&k| r2.apply(&a.col(k)).mul(g) != g.mul(&r1.action[k]))
}

/// Checks that `(γ̃, A, γ)` is an isomorphism of local Lie algebras on basis elements.
pub fn check_local_iso(
    l1: &LocalAlgebra,
    l2: &LocalAlgebra,
    iso: &LocalIsomorphism,
) -> std::result::Result<(), IsoRefusal> {
    check_shapes_and_hom(&l1.triplet, &l2.triplet, &iso.a, &iso.gamma)?;
    let d = l1.dim_v();
    if (iso.gamma_dual.rows(), iso.gamma_dual.cols()) != (d, d) {
        return Err(IsoRefusal::Shape("dual map has the wrong size".into()));
    }
    if !iso.gamma_dual.is_invertible() {
        return Err(IsoRefusal::NotInvertible("dual map"));
    }
    if let Some(k) = check_equivariance(&l1.triplet.rho, &l2.triplet.rho, &iso.a, &iso.gamma) {
        return Err(IsoRefusal::NotEquivariant { k });
    }
    if let Some(k) = check_equivariance(&l1.dual, &l2.dual, &iso.a, &iso.gamma_dual) {
        return Err(IsoRefusal::DualNotEquivariant { k });
    }
    let gx = iso.gamma.columns();
    let gy = iso.gamma_dual.columns();
    for i in 0..d {
        for j in 0..d {
            if iso.a.mul_vec(l1.xy_basis(i, j)) != l2.bracket_xy(&gx[i], &gy[j]) {
                return Err(IsoRefusal::BracketNotPreserved { i, j });
            }
        }
    }
    Ok(())
}

/// Extends an isomorphism of triplets `(A, γ)` to Γ with `γ̃ = (γ⁻¹)ᵀ`.
pub fn triplet_iso_extend(
    t1: &FundamentalTriplet,
    t2: &FundamentalTriplet,
    a: &Matrix,
    gamma: &Matrix,
) -> Result<std::result::Result<LocalIsomorphism, IsoRefusal>> {
    if let Err(r) = check_shapes_and_hom(t1, t2, a, gamma) {
        return Ok(Err(r));
    }
    let n = t1.dim_g0();
    let img = a.columns();
    for i in 0..n {
        for j in 0..n {
            if t2.b0.eval(&img[i], &img[j]) != t1.b0.gram[(i, j)] {
                return Ok(Err(IsoRefusal::FormNotPreserved { i, j }));
            }
        }
    }
    if let Some(k) = check_equivariance(&t1.rho, &t2.rho, a, gamma) {
        return Ok(Err(IsoRefusal::NotEquivariant { k }));
    }
    let iso = LocalIsomorphism {
        a: a.clone(),
        gamma: gamma.clone(),
        gamma_dual: gamma.inverse().expect("checked invertible").transpose(),
    };
    let l1 = build_local(t1)?;
    let l2 = build_local(t2)?;
    Ok(check_local_iso(&l1, &l2, &iso).map(|()| iso))
}

/// `(g₀, B₀, ρ*)`: the roles of V and V* exchanged.
pub fn theta_swap(t: &FundamentalTriplet) -> FundamentalTriplet {
    FundamentalTriplet::new(t.g0.clone(), t.b0.clone(), dual_rep(&t.rho))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub transitive_part: FundamentalTriplet,
    /// Trivial part `{x : ρ(g₀)x = 0}`.
    pub v0: Vec<Vector>,
    /// `⟨ρ(g₀)V⟩`, the space the transitive part acts on.
    pub v1: Vec<Vector>,
    /// Kernel of ρ.
    pub g0k: Vec<Vector>,
    /// B₀-orthogonal complement of the kernel.
    pub g0f: Vec<Vector>,
}

/// Splits off the kernel of ρ and the trivial summand of V. Complete
/// reducibility of ρ and reductivity of g₀ cannot be decided here, so the
/// caller asserts them; the structural consequences used below are checked.
pub fn reduce_triplet(t: &FundamentalTriplet, assert_completely_reducible: bool) -> Result<Reduction> {
    if !assert_completely_reducible {
        return Err(Error::Refused("complete reducibility must be asserted by the caller".into()));
    }
    build_local(t)?;
    let n = t.dim_g0();
    let d = t.dim_v();
    let g0k = rep_kernel(&t.rho, &t.g0);
    let zk: Vec<Vector> = {
        let z = center(&t.g0);
        if z.is_empty() || g0k.is_empty() {
            Vec::new()
        } else {
            let stacked = Matrix::hstack(&[&Matrix::from_columns(n, &z), &Matrix::from_columns(n, &g0k).neg()]);
            stacked.kernel_basis().iter().map(|c| vector::combine(n, &c[..z.len()], &z)).collect()
        }
    };
    if !t.b0.restrict(&zk).gram.is_invertible() && !zk.is_empty() {
        return Err(Error::DegenerateForm("B0 is degenerate on Z(g0) ∩ ker rho".into()));
    }
    if !g0k.is_empty() && !t.b0.restrict(&g0k).gram.is_invertible() {
        return Err(Error::DegenerateForm("B0 is degenerate on ker rho".into()));
    }
    let g0f = t.b0.orthogonal_complement(&g0k);
    if !t.g0.is_ideal(&g0f) {
        return Err(Error::Refused("orthogonal complement of ker rho is not an ideal".into()));
    }
    let v0 = if d == 0 {
        Vec::new()
    } else {
        let stacked = Matrix::vstack(&t.rho.action.iter().collect::<Vec<_>>());
        if n == 0 {
            (0..d).map(|i| vector::unit(d, i)).collect()
        } else {
            stacked.kernel_basis()
        }
    };
    let images: Vec<Vector> = t.rho.action.iter().flat_map(Matrix::columns).collect();
    let v1 = span_basis(d, &images.into_iter().filter(|v| !vector::is_zero(v)).collect::<Vec<_>>());
    let both: Vec<Vector> = v0.iter().chain(&v1).cloned().collect();
    if both.len() != d || (d > 0 && Matrix::from_columns(d, &both).rank() != d) {
        return Err(Error::Refused("reducibility check failed: V0 + g0.V is not a direct sum equal to V".into()));
    }
    let g = t.g0.restrict(&g0f)?;
    let b = t.b0.restrict(&g0f);
    let rho = t.rho.restrict(&g0f, &v1)?;
    let transitive_part = FundamentalTriplet::new(g, b, rho).checked()?;
    Ok(Reduction { transitive_part, v0, v1, g0k, g0f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::coordinates;
    use crate::generators::{self, FormChoice, MonomialBasis};
    use crate::testutil;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn every_local() -> Vec<LocalAlgebra> {
        let mut ts = vec![
            generators::gl_standard(2),
            generators::sl2_standard(),
            generators::conformal_orthogonal(3, &q(2)),
            generators::gen_glblock(2, &q(1), &q(2)).unwrap(),
            generators::gen_symplectic(2, 3, &q(1), &FormChoice::G2).unwrap(),
            generators::gen_symplectic(2, 2, &q(2), &FormChoice::Trace).unwrap(),
            generators::gen_with_trivial_summand(&generators::gl_standard(2), 1),
        ];
        let (a, d) = generators::cartan_matrix("G2").unwrap();
        ts.push(generators::gen_principal(&a, &d).unwrap());
        ts.iter().map(|t| build_local(t).unwrap()).collect()
    }

    fn basis_elems(l: &LocalAlgebra) -> Vec<LocalElem> {
        let (n, d) = (l.dim_g0(), l.dim_v());
        let mut out: Vec<LocalElem> = (0..d).map(|i| LocalElem::dual(vector::unit(d, i))).collect();
        out.extend((0..n).map(|i| LocalElem::g0(vector::unit(n, i))));
        out.extend((0..d).map(|i| LocalElem::v(vector::unit(d, i))));
        out
    }

    #[test]
    fn defining_identity_and_trivial_vectors() {
        for l in every_local() {
            let (n, d) = (l.dim_g0(), l.dim_v());
            for i in 0..d {
                for j in 0..d {
                    for k in 0..n {
                        let lhs = l.triplet().b0.eval(l.xy_basis(i, j), &vector::unit(n, k));
                        assert_eq!(lhs, l.triplet().rho.action[k][(j, i)]);
                    }
                }
            }
        }
        let l = build_local(&generators::gen_with_trivial_summand(&generators::gl_standard(2), 1)).unwrap();
        for j in 0..3 {
            assert!(vector::is_zero(l.xy_basis(2, j)));
        }
    }

    #[test]
    fn refuses_degenerate_and_invalid() {
        let mut t = generators::gl_standard(2);
        t.b0.gram = Matrix::zeros(4, 4);
        assert!(matches!(build_local(&t), Err(Error::DegenerateForm(_))));
        let mut t = generators::gl_standard(2);
        t.rho.action[1] = Matrix::identity(2);
        assert!(matches!(build_local(&t), Err(Error::InvalidTriplet(_))));
    }

    #[test]
    fn jacobi_where_defined() {
        for l in every_local() {
            let b = basis_elems(&l);
            for x in &b {
                for y in &b {
                    for z in &b {
                        if x.degree + y.degree + z.degree > 1 || x.degree + y.degree + z.degree < -1 {
                            continue;
                        }
                        let (Some(yz), Some(zx), Some(xy)) = (l.bracket(y, z), l.bracket(z, x), l.bracket(x, y)) else {
                            continue;
                        };
                        let terms = [l.bracket(x, &yz), l.bracket(y, &zx), l.bracket(z, &xy)];
                        if terms.iter().any(Option::is_none) {
                            continue;
                        }
                        let sum = terms
                            .iter()
                            .flatten()
                            .fold(vector::zeros(terms[0].as_ref().unwrap().coords.len()), |acc, t| {
                                vector::add(&acc, &t.coords)
                            });
                        assert!(vector::is_zero(&sum));
                    }
                }
            }
        }
    }

    #[test]
    fn local_form_invariant_and_nondegenerate() {
        for l in every_local() {
            let f = l.form();
            assert!(f.is_nondegenerate());
            let b = basis_elems(&l);
            for x in &b {
                for y in &b {
                    let Some(xy) = l.bracket(x, y) else { continue };
                    for z in &b {
                        let Some(yz) = l.bracket(y, z) else { continue };
                        assert_eq!(f.eval(&xy, z), f.eval(x, &yz));
                    }
                }
            }
        }
    }

    /// `[Y, X]` in the gl-block algebra against the closed form with
    /// `Y(X) = tr(Y X)`, i.e. dual coordinates `y_{ij} = Y_{ji}`.
    #[test]
    fn glblock_closed_form() {
        let n = 2;
        let mut r = testutil::rng(7);
        for (l1, l2) in [(1, 2), (1, 1), (2, 3), (-3, 1)] {
            let (l1, l2) = (q(l1), q(l2));
            let l = build_local(&generators::gen_glblock(n, &l1, &l2).unwrap()).unwrap();
            let nn = Scalar::from_int(n as i64);
            let c1 = &(&l2 - &l1) / &(&(&nn * &(&l1 + &l2)) * &l1);
            let c2 = &(&l2 - &l1) / &(&(&nn * &(&l1 + &l2)) * &l2);
            for _ in 0..20 {
                let xm = Matrix::from_vec(n, n, testutil::vector(&mut r, n * n));
                let ym = Matrix::from_vec(n, n, testutil::vector(&mut r, n * n));
                let yx = l.bracket_xy(xm.entries(), ym.transpose().entries());
                let (a, b) = generators::glblock_pair(n, &vector::neg(&yx));
                let tr = ym.mul(&xm).trace();
                let id = Matrix::identity(n);
                let ea = xm.mul(&ym).scale(&-l1.recip()).add(&id.scale(&(&c1 * &tr)));
                let eb = ym.mul(&xm).scale(&l2.recip()).add(&id.scale(&(&c2 * &tr)));
                assert_eq!((a, b), (ea, eb));
            }
        }
    }

    /// sp²(ℂⁿ, tr, 2) inside sp(n): quadrics ↔ symmetric blocks S with
    /// `P = xᵀSx`, U ↔ diag(U, −Uᵀ), pairing `Y(X) = tr(ST)/2`.
    #[test]
    fn sp2_matches_block_commutators() {
        for n in 2..=3usize {
            let t = generators::gen_symplectic(n, 2, &q(2), &FormChoice::Trace).unwrap();
            let l = build_local(&t).unwrap();
            let mb = MonomialBasis::new(n, 2);
            let sym = |e: &[u32]| {
                let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
                let mut s = Matrix::zeros(n, n);
                if idx[0] == idx[1] {
                    s[(idx[0], idx[0])] = Scalar::one();
                } else {
                    s[(idx[0], idx[1])] = Scalar::new(1, 2);
                    s[(idx[1], idx[0])] = Scalar::new(1, 2);
                }
                s
            };
            let s: Vec<Matrix> = mb.exps.iter().map(|e| sym(e)).collect();
            let half = Scalar::new(1, 2);
            let d = mb.len();
            // dual symmetric blocks: solve tr(S_a T_b)/2 = δ
            let pair = Matrix::from_fn(d, d, |a, b| &s[a].mul(&s[b]).trace() * &half);
            let inv = pair.inverse().unwrap();
            let tdual: Vec<Matrix> =
                (0..d).map(|b| (0..d).fold(Matrix::zeros(n, n), |acc, c| acc.add(&s[c].scale(&inv[(c, b)])))).collect();
            for a in 0..d {
                for b in 0..d {
                    assert_eq!(&s[a].mul(&tdual[b]).trace() * &half, if a == b { q(1) } else { q(0) });
                    let expect = s[a].mul(&tdual[b]);
                    assert_eq!(l.xy_basis(a, b), &expect.entries().to_vec());
                }
            }
            // the g₀ action is S ↦ US + SUᵀ
            for k in 0..n * n {
                let u = Matrix::from_vec(n, n, vector::unit(n * n, k));
                for a in 0..d {
                    let img = u.mul(&s[a]).add(&s[a].mul(&u.transpose()));
                    let flat: Vec<Vector> = s.iter().map(|m| m.entries().to_vec()).collect();
                    assert_eq!(coordinates(n * n, &flat, img.entries()).unwrap(), t.rho.action[k].col(a));
                }
            }
        }
    }

    #[test]
    fn transitivity_examples() {
        for (n, p, lam) in [(2, 2, 2), (2, 3, 1), (3, 1, 5), (2, 1, -1)] {
            let t = generators::gen_symplectic(n, p, &q(lam), &FormChoice::Trace).unwrap();
            assert!(transitivity_check(&build_local(&t).unwrap()).transitive);
        }
        let t = generators::gen_with_trivial_summand(&generators::gl_standard(2), 1);
        let r = transitivity_check(&build_local(&t).unwrap());
        assert!(r.faithful && !r.spans_v && !r.spans_dual && !r.transitive);
        let mut t = generators::gl_standard(2);
        t.rho = Representation::zero(4, 2);
        let r = transitivity_check(&build_local(&t).unwrap());
        assert!(!r.faithful && !r.transitive);
        // sl(2) has no center: the slow path
        assert!(transitivity_check(&build_local(&generators::sl2_standard()).unwrap()).transitive);
    }

    #[test]
    fn deform_form_identity_and_examples() {
        let t = generators::gen_glblock(2, &q(1), &q(1)).unwrap();
        let ideals = generators::glblock_ideals(2).to_vec();
        assert_eq!(deform_form(&t, &ideals, &[q(1), q(1), q(1)]).unwrap(), t);
        let base = build_local(&t).unwrap();
        for lam in [[q(3), q(1), q(2)], [Scalar::new(3, 2), q(1), q(2)], [q(-1), Scalar::new(1, 3), q(5)]] {
            let dt = deform_form(&t, &ideals, &lam).unwrap();
            let dl = build_local(&dt).unwrap();
            let m = ideal_scaling(&t, &ideals, &lam).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(m.mul_vec(dl.xy_basis(i, j)), *base.xy_basis(i, j));
                }
            }
        }
        // λ₁tr(AA′) + λ₂tr(BB′) is μ.B₀ with μ = ((λ₁+λ₂)/2, λ₁, λ₂)
        let (l1, l2) = (q(1), q(2));
        let mu = [&(&l1 + &l2) / &q(2), l1.clone(), l2.clone()];
        assert_eq!(deform_form(&t, &ideals, &mu).unwrap(), generators::gen_glblock(2, &l1, &l2).unwrap());
        assert!(deform_form(&t, &ideals, &[q(0), q(1), q(1)]).is_err());
        // a non-ideal summand
        let n = t.dim_g0();
        let units: Vec<Vec<Vector>> = (0..n).map(|i| vec![vector::unit(n, i)]).collect();
        assert!(deform_form(&t, &units, &vec![q(1); n]).is_err());
    }

    #[test]
    fn scaled_form_isomorphic_by_square_root() {
        let t = generators::gen_symplectic(2, 2, &q(2), &FormChoice::Trace).unwrap();
        let n = t.dim_g0();
        let all = vec![(0..n).map(|i| vector::unit(n, i)).collect::<Vec<_>>()];
        let t4 = deform_form(&t, &all, &[q(4)]).unwrap();
        assert_eq!(t4.b0.gram, t.b0.gram.scale(&q(4)));
        let d = t.dim_v();
        let iso = LocalIsomorphism {
            a: Matrix::identity(n),
            gamma: Matrix::scalar(d, &q(2)),
            gamma_dual: Matrix::scalar(d, &q(2)),
        };
        let (l, l4) = (build_local(&t).unwrap(), build_local(&t4).unwrap());
        assert_eq!(check_local_iso(&l, &l4, &iso), Ok(()));
        // the same map is not an isomorphism of triplets: A does not preserve the form
        let r = triplet_iso_extend(&t, &t4, &iso.a, &iso.gamma).unwrap();
        assert_eq!(r, Err(IsoRefusal::FormNotPreserved { i: 0, j: 0 }));
    }

    #[test]
    fn box_rescale_examples() {
        let t = generators::gen_symplectic(2, 3, &q(1), &FormChoice::Trace).unwrap();
        let z = vec![generators::gl_identity(2)];
        assert_eq!(box_rescale_rep(&t, &z, &q(1)).unwrap(), t);
        for form in [FormChoice::Trace, FormChoice::SlShifted, FormChoice::G2] {
            let t = generators::gen_symplectic(2, 3, &q(1), &form).unwrap();
            let r = box_rescale_rep(&t, &z, &q(2)).unwrap();
            assert_eq!(r, generators::gen_symplectic(2, 3, &q(2), &form).unwrap());
        }
        let g = generators::gl_standard(2);
        let r = box_rescale_rep(&g, &z, &q(3)).unwrap();
        let (before, after) = (build_local(&g).unwrap(), build_local(&r).unwrap());
        let m = box_scaling(&g, &z, &q(3)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*after.xy_basis(i, j), m.mul_vec(before.xy_basis(i, j)));
            }
        }
        // on the V* side the action is ρ*(γ□U), without an extra sign
        for k in 0..4 {
            assert_eq!(after.dual_action().action[k], before.dual_action().apply(&m.col(k)));
        }
        assert!(box_rescale_rep(&g, &[vector::unit(4, 1)], &q(2)).is_err());
        assert!(box_rescale_rep(&g, &z, &q(0)).is_err());
    }

    #[test]
    fn iso_extend_examples() {
        let t = generators::gen_symplectic(2, 3, &q(1), &FormChoice::G2).unwrap();
        let (n, d) = (t.dim_g0(), t.dim_v());
        let iso = triplet_iso_extend(&t, &t, &Matrix::identity(n), &Matrix::identity(d)).unwrap().unwrap();
        assert_eq!(iso.gamma_dual, Matrix::identity(d));
        let a = generators::gen_glblock(2, &q(1), &q(1)).unwrap();
        let b = generators::gen_glblock(2, &q(1), &q(2)).unwrap();
        let r = triplet_iso_extend(&a, &b, &Matrix::identity(7), &Matrix::identity(4)).unwrap();
        assert!(matches!(r, Err(IsoRefusal::FormNotPreserved { .. })));
        // transposing gl(2) coordinates is an anti-homomorphism
        let tr = Matrix::from_fn(4, 4, |r, c| if r == (c % 2) * 2 + c / 2 { q(1) } else { q(0) });
        let g = generators::gl_standard(2);
        let r = triplet_iso_extend(&g, &g, &tr, &Matrix::identity(2)).unwrap();
        assert!(matches!(r, Err(IsoRefusal::NotLieHomomorphism { .. })));
        // conjugation by an invertible matrix g: A = Ad(g), γ = g
        let gm = Matrix::from_int_rows(&[&[1, 2], &[1, 3]]);
        let gi = gm.inverse().unwrap();
        let basis = generators::gl_basis(2);
        let cols: Vec<Vector> = basis.iter().map(|e| gm.mul(e).mul(&gi).entries().to_vec()).collect();
        let ad = Matrix::from_columns(4, &cols);
        let iso = triplet_iso_extend(&g, &g, &ad, &gm).unwrap().unwrap();
        assert_eq!(iso.gamma_dual, gi.transpose());
    }

    #[test]
    fn theta_swap_properties() {
        for l in every_local() {
            let t = l.triplet();
            let s = theta_swap(t);
            assert_eq!(theta_swap(&s).rho, t.rho);
            assert_eq!(s.rho, *l.dual_action());
            let ls = build_local(&s).unwrap();
            let d = t.dim_v();
            // θ fixes every element: [a, b] in the swapped algebra is [a, b] in the original
            for i in 0..d {
                for j in 0..d {
                    assert_eq!(*ls.xy_basis(j, i), vector::neg(l.xy_basis(i, j)));
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let t = generators::gen_symplectic(2, 2, &q(2), &FormChoice::Trace).unwrap();
        let r = reduce_triplet(&t, true).unwrap();
        assert_eq!(r.transitive_part, t);
        assert!(r.v0.is_empty() && r.g0k.is_empty());
        let base = generators::gl_standard(2);
        let r = reduce_triplet(&generators::gen_with_trivial_summand(&base, 1), true).unwrap();
        assert_eq!(r.v0, vec![vector::unit(3, 2)]);
        assert_eq!(r.transitive_part, base);
        let two = generators::direct_sum_acting_first(&base, &base);
        let r = reduce_triplet(&two, true).unwrap();
        assert_eq!(r.g0k, (4..8).map(|i| vector::unit(8, i)).collect::<Vec<_>>());
        assert_eq!(r.transitive_part, base);
        assert!(reduce_triplet(&two, false).is_err());
        // a nilpotent action: the trivial line lies inside g₀·V
        let nil = generators::matrix_triplet(&[Matrix::from_int_rows(&[&[0, 1], &[0, 0]])], |_, _| q(1));
        assert!(matches!(reduce_triplet(&nil, true), Err(Error::Refused(_))));
    }

    #[test]
    fn reduced_pieces_bracket_to_zero() {
        let base = generators::gl_standard(2);
        for t in [generators::gen_with_trivial_summand(&base, 2), generators::direct_sum_acting_first(&base, &base)] {
            let l = build_local(&t).unwrap();
            let r = reduce_triplet(&t, true).unwrap();
            // V₀* is the annihilator of g₀·V
            let ann = Matrix::from_rows(r.v1.clone()).kernel_basis();
            assert_eq!(ann.len(), r.v0.len());
            for x in &r.v0 {
                for y in &ann {
                    assert!(vector::is_zero(&l.bracket_xy(x, y)));
                }
            }
            for k in &r.g0k {
                assert!(l.triplet().rho.apply(k).is_zero());
            }
        }
    }
}
