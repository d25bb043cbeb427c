//! Lie algebras by structure constants, invariant forms, representations and
//! fundamental triplets (g₀, B₀, ρ).

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{coordinates, vector, Matrix, Scalar, Vector};

/// Structure constants: `structure[i][j]` is the coordinate vector of `[eᵢ, eⱼ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    dim: usize,
    structure: Vec<Vec<Vector>>,
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: Matrix,
}

/// Action matrices `ρ(eᵢ)` on a space of dimension `dim_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dim_v: usize,
    pub action: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalTriplet {
    pub g0: LieAlgebraData,
    pub b0: QuadraticForm,
    pub rho: Representation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    FormNotSymmetric { i: usize, j: usize },
    FormDegenerate { rank: usize },
    FormNotInvariant { i: usize, j: usize, k: usize },
    NotHomomorphism { i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j } => write!(f, "antisymmetry fails at [e{i},e{j}]"),
            Violation::Jacobi { i, j, k } => write!(f, "Jacobi identity fails at (e{i},e{j},e{k})"),
            Violation::FormNotSymmetric { i, j } => write!(f, "B0 not symmetric at ({i},{j})"),
            Violation::FormDegenerate { rank } => write!(f, "B0 degenerate (rank {rank})"),
            Violation::FormNotInvariant { i, j, k } => {
                write!(f, "B0 not invariant at (e{i},e{j},e{k})")
            }
            Violation::NotHomomorphism { i, j } => {
                write!(f, "rho([e{i},e{j}]) differs from the commutator")
            }
        }
    }
}

impl Violation {
    /// Short invariant name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Antisymmetry { .. } => "antisymmetry",
            Violation::Jacobi { .. } => "jacobi",
            Violation::FormNotSymmetric { .. } => "symmetry",
            Violation::FormDegenerate { .. } => "nondegeneracy",
            Violation::FormNotInvariant { .. } => "invariance",
            Violation::NotHomomorphism { .. } => "homomorphism",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LieAlgebraData {
    pub fn new(dim: usize, structure: Vec<Vec<Vector>>) -> Result<Self> {
        if structure.len() != dim || structure.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure table must be {dim}×{dim} vectors of length {dim}"
            )));
        }
        Ok(LieAlgebraData { dim, structure })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, structure: vec![vec![vector::zeros(dim); dim]; dim] }
    }

    /// The matrix Lie algebra spanned by `basis` (linearly independent square
    /// matrices), with commutators expressed in that basis.
    pub fn from_matrix_basis(basis: &[Matrix]) -> Result<Self> {
        let dim = basis.len();
        let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
        let n = flat.first().map_or(0, Vec::len);
        let coords = Matrix::from_columns(n, &flat);
        if coords.rank() != dim {
            return Err(Error::DimensionMismatch("matrix basis is linearly dependent".into()));
        }
        let mut structure = vec![vec![vector::zeros(dim); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = basis[i].commutator(&basis[j]);
                let v = coords
                    .solve(c.entries())
                    .ok_or_else(|| Error::Refused(format!("span of matrices not closed under [{i},{j}]")))?;
                structure[j][i] = vector::neg(&v);
                structure[i][j] = v;
            }
        }
        Ok(LieAlgebraData { dim, structure })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[Vec<Vector>] {
        &self.structure
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.structure[i][j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.dim);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                vector::axpy(&mut out, &(a * b), &self.structure[i][j]);
            }
        }
        out
    }

    /// `ad(eᵢ)`: column `j` is `[eᵢ, eⱼ]`.
    pub fn ad(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.dim, &self.structure[i])
    }

    pub fn ad_vec(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &vector::unit(self.dim, j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    pub fn is_subalgebra(&self, basis: &[Vector]) -> bool {
        basis
            .iter()
            .enumerate()
            .all(|(a, x)| basis[a + 1..].iter().all(|y| crate::exactla::in_span(self.dim, basis, &self.bracket(x, y))))
    }

    pub fn is_ideal(&self, basis: &[Vector]) -> bool {
        basis.iter().all(|x| {
            (0..self.dim)
                .all(|j| crate::exactla::in_span(self.dim, basis, &self.bracket(&vector::unit(self.dim, j), x)))
        })
    }

    /// Structure constants of the subalgebra spanned by `basis`, in that basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<LieAlgebraData> {
        let k = basis.len();
        let mut structure = vec![vec![vector::zeros(k); k]; k];
        for a in 0..k {
            for b in 0..k {
                let v = self.bracket(&basis[a], &basis[b]);
                structure[a][b] = coordinates(self.dim, basis, &v)
                    .ok_or_else(|| Error::Refused("subspace is not a subalgebra".into()))?;
            }
        }
        Ok(LieAlgebraData { dim: k, structure })
    }
}

/// Exhaustive antisymmetry and Jacobi check.
pub fn validate_algebra(g: &LieAlgebraData) -> Vec<Violation> {
    let n = g.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if vector::add(&g.structure[i][j], &g.structure[j][i]) != vector::zeros(n) {
                out.push(Violation::Antisymmetry { i, j });
            }
        }
    }
    let jac = crate::par::map_range_weighted(n, n * n * n * n, |i| {
        let mut local = Vec::new();
        for j in i + 1..n {
            for k in j + 1..n {
                let a = g.bracket(&vector::unit(n, i), &g.structure[j][k]);
                let b = g.bracket(&vector::unit(n, j), &g.structure[k][i]);
                let c = g.bracket(&vector::unit(n, k), &g.structure[i][j]);
                if !vector::is_zero(&vector::add(&vector::add(&a, &b), &c)) {
                    local.push(Violation::Jacobi { i, j, k });
                }
            }
        }
        local
    });
    out.extend(jac.into_iter().flatten());
    out
}

/// Exhaustive check of every invariant of the triplet on basis tuples.
pub fn validate(t: &FundamentalTriplet) -> Result<ValidationReport> {
    let n = t.g0.dim;
    let g = &t.b0.gram;
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!("B0 must be {n}×{n}")));
    }
    if t.rho.action.len() != n {
        return Err(Error::DimensionMismatch(format!("rho needs {n} action matrices")));
    }
    let d = t.rho.dim_v;
    if t.rho.action.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::DimensionMismatch(format!("rho matrices must be {d}×{d}")));
    }

    let mut violations = validate_algebra(&t.g0);
    for i in 0..n {
        for j in 0..i {
            if g[(i, j)] != g[(j, i)] {
                violations.push(Violation::FormNotSymmetric { i: j, j: i });
            }
        }
    }
    let rank = g.rank();
    if rank != n {
        violations.push(Violation::FormDegenerate { rank });
    }
    for i in 0..n {
        for j in 0..n {
            let ij = &t.g0.structure[i][j];
            for k in 0..n {
                // B([eᵢ,eⱼ],e_k) = B(eᵢ,[eⱼ,e_k])
                let lhs = vector::dot(ij, &g.col(k));
                let rhs = g.bilinear(&vector::unit(n, i), &t.g0.structure[j][k]);
                if lhs != rhs {
                    violations.push(Violation::FormNotInvariant { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = t.rho.apply(&t.g0.structure[i][j]);
            if lhs != t.rho.action[i].commutator(&t.rho.action[j]) {
                violations.push(Violation::NotHomomorphism { i, j });
            }
        }
    }
    Ok(ValidationReport { violations })
}

impl QuadraticForm {
    pub fn new(gram: Matrix) -> Self {
        QuadraticForm { gram }
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.gram.bilinear(x, y)
    }

    /// Gram matrix of the restriction to the span of `basis`.
    pub fn restrict(&self, basis: &[Vector]) -> QuadraticForm {
        let k = basis.len();
        QuadraticForm { gram: Matrix::from_fn(k, k, |a, b| self.eval(&basis[a], &basis[b])) }
    }

    /// Canonical basis of `{x : B(x, s) = 0 for all s in basis}`.
    pub fn orthogonal_complement(&self, basis: &[Vector]) -> Vec<Vector> {
        let n = self.gram.rows();
        if basis.is_empty() {
            return (0..n).map(|i| vector::unit(n, i)).collect();
        }
        let rows: Vec<Vector> = basis.iter().map(|s| self.gram.mul_vec(s)).collect();
        Matrix::from_rows(rows).kernel_basis()
    }
}

impl Representation {
    pub fn new(dim_v: usize, action: Vec<Matrix>) -> Self {
        Representation { dim_v, action }
    }

    pub fn zero(dim_g: usize, dim_v: usize) -> Self {
        Representation { dim_v, action: vec![Matrix::zeros(dim_v, dim_v); dim_g] }
    }

    /// `ρ(u) = Σ uₖ ρ(eₖ)`.
    pub fn apply(&self, u: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim_v, self.dim_v);
        for (c, a) in u.iter().zip(&self.action) {
            if !c.is_zero() {
                m.axpy(c, a);
            }
        }
        m
    }

    /// Restriction to the invariant subspace spanned by `v_basis`, for the
    /// subalgebra spanned by `g_basis`.
    pub fn restrict(&self, g_basis: &[Vector], v_basis: &[Vector]) -> Result<Representation> {
        let k = v_basis.len();
        let mut action = Vec::with_capacity(g_basis.len());
        for u in g_basis {
            let m = self.apply(u);
            let mut cols = Vec::with_capacity(k);
            for b in v_basis {
                cols.push(
                    coordinates(self.dim_v, v_basis, &m.mul_vec(b))
                        .ok_or_else(|| Error::Refused("subspace is not invariant".into()))?,
                );
            }
            action.push(Matrix::from_columns(k, &cols));
        }
        Ok(Representation { dim_v: k, action })
    }
}

impl FundamentalTriplet {
    pub fn new(g0: LieAlgebraData, b0: QuadraticForm, rho: Representation) -> Self {
        FundamentalTriplet { g0, b0, rho }
    }

    pub fn dim_g0(&self) -> usize {
        self.g0.dim
    }

    pub fn dim_v(&self) -> usize {
        self.rho.dim_v
    }

    /// Fails with [`Error::InvalidTriplet`] unless every invariant holds.
    pub fn checked(self) -> Result<Self> {
        let report = validate(&self)?;
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidTriplet(report.violations))
        }
    }
}

/// Contragredient representation `ρ*(u) = −ρ(u)ᵀ`.
pub fn dual_rep(r: &Representation) -> Representation {
    Representation { dim_v: r.dim_v, action: r.action.iter().map(|m| m.transpose().neg()).collect() }
}

/// Pivot basis of `[g, g]`.
pub fn derived_subalgebra(g: &LieAlgebraData) -> Vec<Vector> {
    let n = g.dim;
    let cols: Vec<Vector> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.structure[i][j].clone()).collect();
    if cols.is_empty() {
        return Vec::new();
    }
    Matrix::from_columns(n, &cols).image_basis().basis
}

/// Kernel of `x ↦ ([x, eⱼ])ⱼ`.
pub fn center(g: &LieAlgebraData) -> Vec<Vector> {
    let n = g.dim;
    if n == 0 {
        return Vec::new();
    }
    let m = Matrix::from_fn(n * n, n, |r, i| g.structure[i][r / n][r % n].clone());
    m.kernel_basis()
}

/// Gram matrix of `K(x, y) = tr(ad x ∘ ad y)`.
pub fn killing_form(g: &LieAlgebraData) -> Matrix {
    let ads: Vec<Matrix> = (0..g.dim).map(|i| g.ad(i)).collect();
    let mut k = Matrix::zeros(g.dim, g.dim);
    for i in 0..g.dim {
        for j in i..g.dim {
            let t = ads[i].mul(&ads[j]).trace();
            k[(j, i)] = t.clone();
            k[(i, j)] = t;
        }
    }
    k
}

/// Kernel of `u ↦ ρ(u)`.
pub fn rep_kernel(r: &Representation, g: &LieAlgebraData) -> Vec<Vector> {
    let n = g.dim;
    let d = r.dim_v;
    if d == 0 {
        return (0..n).map(|i| vector::unit(n, i)).collect();
    }
    let m = Matrix::from_fn(d * d, n, |row, i| r.action[i][(row / d, row % d)].clone());
    m.kernel_basis()
}

/// The element `H₀` of the center with `ρ(H₀) = 2·Id`, if any.
pub fn grading_element(t: &FundamentalTriplet) -> Result<Option<Vector>> {
    let z = center(&t.g0);
    let d = t.rho.dim_v;
    let n = t.g0.dim;
    if z.is_empty() {
        return Ok(None);
    }
    let images: Vec<Matrix> = z.iter().map(|c| t.rho.apply(c)).collect();
    let m = Matrix::from_fn(d * d, z.len(), |row, k| images[k][(row / d, row % d)].clone());
    let two_id = Matrix::scalar(d, &Scalar::from_int(2));
    let Some(c) = m.solve(two_id.entries()) else {
        return Ok(None);
    };
    if m.rank() < z.len() {
        return Err(Error::AmbiguousGrading);
    }
    Ok(Some(vector::combine(n, &c, &z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// gl(2) with trace form and the standard representation, built by hand.
    fn gl2_standard() -> FundamentalTriplet {
        generators::gl_standard(2)
    }

    #[test]
    fn gl2_trace_standard_is_valid() {
        let t = gl2_standard();
        assert!(validate(&t).unwrap().is_valid());
        // [E12, E21] = E11 − E22 by hand; basis order E11, E12, E21, E22.
        assert_eq!(t.g0.bracket_basis(1, 2), &vector::from_ints(&[1, 0, 0, -1]));
        assert_eq!(t.g0.bracket_basis(0, 1), &vector::from_ints(&[0, 1, 0, 0]));
    }

    #[test]
    fn zero_form_reports_degeneracy() {
        let mut t = gl2_standard();
        t.b0 = QuadraticForm::new(Matrix::zeros(4, 4));
        let r = validate(&t).unwrap();
        assert!(r.violations.contains(&Violation::FormDegenerate { rank: 0 }));
    }

    #[test]
    fn abelian_with_invertible_form_is_valid() {
        let g = LieAlgebraData::abelian(3);
        let b = QuadraticForm::new(Matrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]));
        let t = FundamentalTriplet::new(g, b, Representation::zero(3, 2));
        assert!(validate(&t).unwrap().is_valid());
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let mut t = gl2_standard();
        t.rho.action.pop();
        assert!(matches!(validate(&t), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn broken_invariants_are_named() {
        let mut t = gl2_standard();
        t.b0.gram[(0, 1)] = q(1);
        let kinds: Vec<_> = validate(&t).unwrap().violations.iter().map(Violation::kind).collect();
        assert!(kinds.contains(&"symmetry"));
        let mut t = gl2_standard();
        t.rho.action[1] = t.rho.action[1].scale(&q(2));
        let kinds: Vec<_> = validate(&t).unwrap().violations.iter().map(Violation::kind).collect();
        assert!(kinds.contains(&"homomorphism"));
    }

    #[test]
    fn dual_examples() {
        let r = Representation::new(2, vec![Matrix::identity(2)]);
        assert_eq!(dual_rep(&r).action[0], Matrix::identity(2).neg());
        let t = gl2_standard();
        let d = dual_rep(&t.rho);
        // ρ*(E12) = −E21
        assert_eq!(d.action[1], Matrix::from_int_rows(&[&[0, 0], &[-1, 0]]));
        assert_eq!(dual_rep(&d), t.rho);
    }

    #[test]
    fn derived_and_center() {
        assert!(derived_subalgebra(&LieAlgebraData::abelian(3)).is_empty());
        for n in 1..=3 {
            let t = generators::gl_standard(n);
            let der = derived_subalgebra(&t.g0);
            assert_eq!(der.len(), n * n - 1);
            // every commutator is traceless
            for v in &der {
                let tr: Scalar = (0..n).map(|i| v[i * n + i].clone()).sum();
                assert!(tr.is_zero());
            }
            let z = center(&t.g0);
            assert_eq!(z.len(), 1);
            let mut id = vector::zeros(n * n);
            for i in 0..n {
                id[i * n + i] = q(1);
            }
            assert!(crate::exactla::in_span(n * n, &z, &id));
            assert!(t.g0.is_subalgebra(&der) && t.g0.is_ideal(&der));
            assert!(t.g0.is_subalgebra(&z));
        }
        let sl2 = generators::sl2_standard();
        assert_eq!(derived_subalgebra(&sl2.g0).len(), 3);
        assert!(center(&sl2.g0).is_empty());
        assert_eq!(center(&LieAlgebraData::abelian(4)).len(), 4);
    }

    #[test]
    fn kernel_examples() {
        let t = gl2_standard();
        assert!(rep_kernel(&t.rho, &t.g0).is_empty());
        assert_eq!(rep_kernel(&Representation::zero(4, 3), &t.g0).len(), 4);
        let prod = generators::direct_sum_acting_first(&t, &generators::gl_standard(2));
        let k = rep_kernel(&prod.rho, &prod.g0);
        assert_eq!(k.len(), 4);
        assert!(k.iter().all(|v| v[..4].iter().all(Scalar::is_zero)));
        assert!(prod.g0.is_ideal(&k));
    }

    #[test]
    fn grading_examples() {
        let sp2 = generators::gen_symplectic(3, 2, &q(2), &generators::FormChoice::Trace).unwrap();
        let h = grading_element(&sp2).unwrap().unwrap();
        assert_eq!(h, generators::gl_identity(3));
        assert_eq!(grading_element(&generators::sl2_standard()).unwrap(), None);
        for n in 2..=3 {
            let lam = q(n as i64);
            let t = generators::gen_symplectic(n, 1, &lam, &generators::FormChoice::SlShifted).unwrap();
            let h = grading_element(&t).unwrap().unwrap();
            assert_eq!(h, vector::scale(&Scalar::new(2, n as i64), &generators::gl_identity(n)));
        }
        // two central directions acting by the same scalar
        let t = FundamentalTriplet::new(
            LieAlgebraData::abelian(2),
            QuadraticForm::new(Matrix::identity(2)),
            Representation::new(1, vec![Matrix::identity(1), Matrix::identity(1)]),
        );
        assert_eq!(grading_element(&t), Err(Error::AmbiguousGrading));
    }
}
