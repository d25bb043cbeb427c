//! Built-in fundamental triplets.
//!
//! gl(n) always uses the elementary basis `E_ij` at index `i·n + j`. For the
//! symplectic family, V* is the dual coordinate space of the monomial basis, so
//! `fᵦ(x^α) = δ_αβ`; the differential-operator pairing `y^β ↦ (P ↦ ∂^β P)`
//! corresponds to `β! · fᵦ`.

use crate::error::{Error, Result};
use crate::exactla::{coordinates, vector, Matrix, Scalar, Vector};
use crate::liecore::{FundamentalTriplet, LieAlgebraData, QuadraticForm, Representation};
use crate::poly::Polynomial;

/// Degree-`p` monomials in `n` variables, in graded-lex order (`x0^p` first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub n: usize,
    pub p: u32,
    pub exps: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(n: usize, p: u32) -> Self {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for k in (0..=left).rev() {
                cur.push(k);
                rec(n, left - k, cur, out);
                cur.pop();
            }
        }
        let mut exps = Vec::new();
        if n > 0 {
            rec(n, p, &mut Vec::new(), &mut exps);
        }
        MonomialBasis { n, p, exps }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.exps.binary_search_by(|x| e.cmp(x)).ok()
    }

    /// Coordinates of a homogeneous degree-`p` polynomial on W.
    pub fn to_vector(&self, poly: &Polynomial) -> Result<Vector> {
        if poly.nvars() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "polynomial has {} variables, expected {}",
                poly.nvars(),
                self.n
            )));
        }
        let mut v = vector::zeros(self.len());
        for (e, c) in poly.terms() {
            let i = self
                .index_of(e)
                .ok_or_else(|| Error::DimensionMismatch(format!("monomial {e:?} is not of degree {}", self.p)))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn to_polynomial(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(self.n, self.exps.iter().cloned().zip(v.iter().cloned()))
    }
}

/// Named choices for the invariant form on gl(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormChoice {
    /// `tr(UV)`
    Trace,
    /// `tr(U)tr(V) + tr(UV)`
    SlShifted,
    /// `3tr(UV) − tr(U)tr(V)`
    G2,
    Custom(Matrix),
}

pub fn gl_basis(n: usize) -> Vec<Matrix> {
    (0..n * n)
        .map(|k| {
            let mut m = Matrix::zeros(n, n);
            m[(k / n, k % n)] = Scalar::one();
            m
        })
        .collect()
}

/// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
pub fn gl_algebra(n: usize) -> LieAlgebraData {
    let d = n * n;
    let mut s = vec![vec![vector::zeros(d); d]; d];
    for a in 0..d {
        let (i, j) = (a / n, a % n);
        for b in 0..d {
            let (k, l) = (b / n, b % n);
            if j == k {
                s[a][b][i * n + l] += Scalar::one();
            }
            if l == i {
                s[a][b][k * n + j] -= Scalar::one();
            }
        }
    }
    LieAlgebraData::new(d, s).expect("square table")
}

pub fn gl_identity(n: usize) -> Vector {
    let mut v = vector::zeros(n * n);
    for i in 0..n {
        v[i * n + i] = Scalar::one();
    }
    v
}

/// Basis of o(n) ⊂ gl(n): `E_ij − E_ji` for `i < j`.
pub fn orthogonal_subalgebra(n: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vector::zeros(n * n);
            v[i * n + j] = Scalar::one();
            v[j * n + i] = -Scalar::one();
            out.push(v);
        }
    }
    out
}

pub fn gl_form(n: usize, form: &FormChoice) -> Matrix {
    let d = n * n;
    let tr = |a: usize, b: usize| -> i64 { ((a % n == b / n) && (b % n == a / n)) as i64 };
    let trtr = |a: usize, b: usize| -> i64 { ((a / n == a % n) && (b / n == b % n)) as i64 };
    match form {
        FormChoice::Trace => Matrix::from_fn(d, d, |a, b| Scalar::from_int(tr(a, b))),
        FormChoice::SlShifted => Matrix::from_fn(d, d, |a, b| Scalar::from_int(tr(a, b) + trtr(a, b))),
        FormChoice::G2 => Matrix::from_fn(d, d, |a, b| Scalar::from_int(3 * tr(a, b) - trtr(a, b))),
        FormChoice::Custom(m) => m.clone(),
    }
}

/// `ρ_λ` on degree-`p` polynomials: `E_ij ↦ xᵢ∂ⱼ`, shifted on the diagonal so
/// that the identity acts by `λ`.
pub fn symplectic_rep(n: usize, p: u32, lambda: &Scalar) -> (MonomialBasis, Representation) {
    let basis = MonomialBasis::new(n, p);
    let d = basis.len();
    let shift = &(lambda - &Scalar::from_int(p as i64)) / &Scalar::from_int(n as i64);
    let mut action = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zeros(d, d);
            for (col, e) in basis.exps.iter().enumerate() {
                if e[j] == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] -= 1;
                e2[i] += 1;
                let row = basis.index_of(&e2).expect("same degree");
                m[(row, col)] += Scalar::from_int(e[j] as i64);
            }
            if i == j {
                for k in 0..d {
                    m[(k, k)] += &shift;
                }
            }
            action.push(m);
        }
    }
    (basis, Representation::new(d, action))
}

/// The triplet `(gl(n), B₀, ρ_λ on ℂ^p[ℂⁿ])`.
pub fn gen_symplectic(n: usize, p: u32, lambda: &Scalar, form: &FormChoice) -> Result<FundamentalTriplet> {
    if n == 0 || p == 0 {
        return Err(Error::OutOfRange(format!("(n, p) = ({n}, {p})")));
    }
    if lambda.is_zero() {
        return Err(Error::Refused("lambda must be nonzero".into()));
    }
    let gram = gl_form(n, form);
    if gram.rows() != n * n || gram.cols() != n * n {
        return Err(Error::DimensionMismatch(format!("custom form must be {0}×{0}", n * n)));
    }
    if !gram.is_invertible() {
        return Err(Error::DegenerateForm("chosen form is degenerate on gl(n)".into()));
    }
    let (_, rho) = symplectic_rep(n, p, lambda);
    FundamentalTriplet::new(gl_algebra(n), QuadraticForm::new(gram), rho).checked()
}

/// gl(n) with the trace form acting on ℂⁿ by matrix multiplication.
pub fn gl_standard(n: usize) -> FundamentalTriplet {
    FundamentalTriplet::new(
        gl_algebra(n),
        QuadraticForm::new(gl_form(n, &FormChoice::Trace)),
        Representation::new(n, gl_basis(n)),
    )
}

/// sl(2) in the basis (h, e, f) with the trace form on ℂ².
pub fn sl2_standard() -> FundamentalTriplet {
    let basis = vec![
        Matrix::from_int_rows(&[&[1, 0], &[0, -1]]),
        Matrix::from_int_rows(&[&[0, 1], &[0, 0]]),
        Matrix::from_int_rows(&[&[0, 0], &[1, 0]]),
    ];
    matrix_triplet(&basis, |a, b| a.mul(b).trace())
}

/// Triplet of a matrix Lie algebra acting on column vectors, with the form `form(U, V)`.
pub fn matrix_triplet(basis: &[Matrix], form: impl Fn(&Matrix, &Matrix) -> Scalar) -> FundamentalTriplet {
    let g = LieAlgebraData::from_matrix_basis(basis).expect("closed matrix basis");
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |a, b| form(&basis[a], &basis[b]));
    let d = basis.first().map_or(0, Matrix::rows);
    FundamentalTriplet::new(g, QuadraticForm::new(gram), Representation::new(d, basis.to_vec()))
}

/// `ℂ·Id ⊕ o(n)` on ℂⁿ with the trace form; the basis element `Id` acts by `scale`.
pub fn conformal_orthogonal(n: usize, scale: &Scalar) -> FundamentalTriplet {
    let mut basis = vec![Matrix::identity(n)];
    for v in orthogonal_subalgebra(n) {
        basis.push(Matrix::from_vec(n, n, v));
    }
    let mut t = matrix_triplet(&basis, |a, b| a.mul(b).trace());
    t.rho.action[0] = Matrix::scalar(n, scale);
    t
}

/// `g₁ ⊕ g₂` with block form, acting on V₁ through the first factor only.
pub fn direct_sum_acting_first(t1: &FundamentalTriplet, t2: &FundamentalTriplet) -> FundamentalTriplet {
    let (n1, n2) = (t1.dim_g0(), t2.dim_g0());
    let n = n1 + n2;
    let mut s = vec![vec![vector::zeros(n); n]; n];
    for i in 0..n1 {
        for j in 0..n1 {
            s[i][j][..n1].clone_from_slice(t1.g0.bracket_basis(i, j));
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            s[n1 + i][n1 + j][n1..].clone_from_slice(t2.g0.bracket_basis(i, j));
        }
    }
    let gram = Matrix::block_diag(&[&t1.b0.gram, &t2.b0.gram]);
    let d = t1.dim_v();
    let mut action = t1.rho.action.clone();
    action.extend(std::iter::repeat_n(Matrix::zeros(d, d), n2));
    FundamentalTriplet::new(
        LieAlgebraData::new(n, s).expect("square table"),
        QuadraticForm::new(gram),
        Representation::new(d, action),
    )
}

/// Basis of `{(A, B) ∈ gl(n)² : tr(A + B) = 0}` as block-diagonal 2n×2n matrices:
/// off-diagonal `E_ij` of A, then the 2n−1 consecutive diagonal differences, then
/// off-diagonal `E_ij` of B.
pub fn glblock_basis(n: usize) -> Vec<Matrix> {
    let m = 2 * n;
    let unit = |r: usize, c: usize| {
        let mut x = Matrix::zeros(m, m);
        x[(r, c)] = Scalar::one();
        x
    };
    let mut out = Vec::new();
    for off in [0, n] {
        if off == n {
            for k in 0..m - 1 {
                out.push(unit(k, k).sub(&unit(k + 1, k + 1)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(unit(off + i, off + j));
                }
            }
        }
    }
    out
}

fn blocks(n: usize, u: &Matrix) -> (Matrix, Matrix) {
    let a = Matrix::from_fn(n, n, |i, j| u[(i, j)].clone());
    let b = Matrix::from_fn(n, n, |i, j| u[(n + i, n + j)].clone());
    (a, b)
}

/// The block pair `(A, B)` of a g₀ coordinate vector of [`gen_glblock`].
pub fn glblock_pair(n: usize, u: &[Scalar]) -> (Matrix, Matrix) {
    let basis = glblock_basis(n);
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for (c, b) in u.iter().zip(&basis) {
        m.axpy(c, b);
    }
    blocks(n, &m)
}

/// g₀ = {(A,B) : tr(A+B) = 0} with `λ₁tr(AA′) + λ₂tr(BB′)`, acting on n×n matrices by `AX − XB`.
pub fn gen_glblock(n: usize, lambda1: &Scalar, lambda2: &Scalar) -> Result<FundamentalTriplet> {
    if n == 0 {
        return Err(Error::OutOfRange("n = 0".into()));
    }
    if lambda1.is_zero() || lambda2.is_zero() || (lambda1 + lambda2).is_zero() {
        return Err(Error::DegenerateForm("need lambda1, lambda2 and lambda1 + lambda2 nonzero".into()));
    }
    let basis = glblock_basis(n);
    let g = LieAlgebraData::from_matrix_basis(&basis)?;
    let k = basis.len();
    let gram = Matrix::from_fn(k, k, |a, b| {
        let (a1, b1) = blocks(n, &basis[a]);
        let (a2, b2) = blocks(n, &basis[b]);
        &(lambda1 * &a1.mul(&a2).trace()) + &(lambda2 * &b1.mul(&b2).trace())
    });
    let units = gl_basis(n);
    let action = basis
        .iter()
        .map(|u| {
            let (a, b) = blocks(n, u);
            let cols: Vec<Vector> = units.iter().map(|x| a.mul(x).sub(&x.mul(&b)).entries().to_vec()).collect();
            Matrix::from_columns(n * n, &cols)
        })
        .collect();
    FundamentalTriplet::new(g, QuadraticForm::new(gram), Representation::new(n * n, action)).checked()
}

/// Bases of the ideals `ℂH₀`, `sl(n)×0` and `0×sl(n)` of the gl-block g₀.
pub fn glblock_ideals(n: usize) -> [Vec<Vector>; 3] {
    let basis = glblock_basis(n);
    let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let dim = 4 * n * n;
    let coords = |m: &Matrix| coordinates(dim, &flat, m.entries()).expect("in g0");
    let embed = |a: &Matrix, b: &Matrix| Matrix::block_diag(&[a, b]);
    let z = Matrix::zeros(n, n);
    let h0 = coords(&embed(&Matrix::identity(n), &Matrix::identity(n).neg()));
    let sl: Vec<Matrix> = (0..n * n)
        .filter_map(|k| {
            let (i, j) = (k / n, k % n);
            if i == j && i + 1 == n {
                return None;
            }
            let mut m = Matrix::zeros(n, n);
            if i == j {
                m[(i, i)] = Scalar::one();
                m[(i + 1, i + 1)] = -Scalar::one();
            } else {
                m[(i, j)] = Scalar::one();
            }
            Some(m)
        })
        .collect();
    [vec![h0], sl.iter().map(|a| coords(&embed(a, &z))).collect(), sl.iter().map(|b| coords(&embed(&z, b))).collect()]
}

/// Principal-grading triplet of an invertible symmetrizable Cartan matrix.
///
/// `symmetrizer` holds the diagonal of D with `D⁻¹A` symmetric. g₀ = ℂⁿ is
/// spanned by the coroots, `ρ(α̌ᵢ)eⱼ = aᵢⱼ eⱼ`, and the Gram matrix is `A·D`,
/// which makes `[eᵢ, fⱼ] = δᵢⱼ α̌ᵢ / dᵢ`.
pub fn gen_principal(cartan: &Matrix, symmetrizer: &[Scalar]) -> Result<FundamentalTriplet> {
    let n = cartan.rows();
    if !cartan.is_square() || symmetrizer.len() != n {
        return Err(Error::DimensionMismatch("Cartan matrix and symmetrizer sizes differ".into()));
    }
    if symmetrizer.iter().any(Scalar::is_zero) {
        return Err(Error::Refused("symmetrizer entries must be nonzero".into()));
    }
    let b = Matrix::from_fn(n, n, |i, j| &cartan[(i, j)] / &symmetrizer[i]);
    if !b.is_symmetric() {
        return Err(Error::Refused("Cartan matrix is not symmetrizable by D".into()));
    }
    if !cartan.is_invertible() {
        return Err(Error::DegenerateForm("Cartan matrix is singular".into()));
    }
    let gram = Matrix::from_fn(n, n, |i, j| &cartan[(i, j)] * &symmetrizer[j]);
    let action = (0..n)
        .map(|i| Matrix::from_fn(n, n, |r, c| if r == c { cartan[(i, c)].clone() } else { Scalar::zero() }))
        .collect();
    FundamentalTriplet::new(LieAlgebraData::abelian(n), QuadraticForm::new(gram), Representation::new(n, action))
        .checked()
}

/// Appends a `k`-dimensional trivial summand to V.
pub fn gen_with_trivial_summand(base: &FundamentalTriplet, k: usize) -> FundamentalTriplet {
    let z = Matrix::zeros(k, k);
    let action = base.rho.action.iter().map(|m| Matrix::block_diag(&[m, &z])).collect();
    FundamentalTriplet::new(base.g0.clone(), base.b0.clone(), Representation::new(base.dim_v() + k, action))
}

/// `{U ∈ gl(n) : U·P = 0}` for the vector-field action `Σ a_ij xᵢ∂ⱼ`.
pub fn stabilizer_of_poly(n: usize, p: &Polynomial) -> Result<Vec<Vector>> {
    if p.is_zero() {
        return Err(Error::Refused("P = 0".into()));
    }
    let p = p.with_nvars(n).map_err(|e| Error::DimensionMismatch(e.to_string()))?;
    let images: Vec<Polynomial> = (0..n * n).map(|k| p.vector_field(&vector::unit(n * n, k))).collect();
    let mut monomials: Vec<Vec<u32>> = images.iter().flat_map(|q| q.terms().map(|(e, _)| e.clone())).collect();
    monomials.sort();
    monomials.dedup();
    if monomials.is_empty() {
        return Ok((0..n * n).map(|k| vector::unit(n * n, k)).collect());
    }
    let m = Matrix::from_fn(monomials.len(), n * n, |r, k| images[k].coeff(&monomials[r]));
    Ok(m.kernel_basis())
}

/// Cartan matrices of the finite types used in tests and the CLI, with symmetrizers.
pub fn cartan_matrix(name: &str) -> Option<(Matrix, Vec<Scalar>)> {
    let ints = |d: &[i64]| d.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
    match name.to_ascii_uppercase().as_str() {
        "A1" => Some((Matrix::from_int_rows(&[&[2]]), ints(&[1]))),
        "A2" => Some((Matrix::from_int_rows(&[&[2, -1], &[-1, 2]]), ints(&[1, 1]))),
        "A3" => Some((Matrix::from_int_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]), ints(&[1, 1, 1]))),
        "B2" => Some((Matrix::from_int_rows(&[&[2, -2], &[-1, 2]]), ints(&[2, 1]))),
        "C2" => Some((Matrix::from_int_rows(&[&[2, -1], &[-2, 2]]), ints(&[1, 2]))),
        "G2" => Some((Matrix::from_int_rows(&[&[2, -1], &[-3, 2]]), ints(&[1, 3]))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::validate;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn monomial_basis_order_and_size() {
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let binom = |a: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (a - i) / (i + 1));
        for n in 1..=4usize {
            for p in 1..=4u32 {
                let b = MonomialBasis::new(n, p);
                assert_eq!(b.len() as u64, binom(n as u64 + p as u64 - 1, p as u64));
                assert!(b.exps.windows(2).all(|w| w[0] > w[1]));
                for (i, e) in b.exps.iter().enumerate() {
                    assert_eq!(b.index_of(e), Some(i));
                }
            }
        }
    }

    #[test]
    fn generated_triplets_validate() {
        let forms = [FormChoice::Trace, FormChoice::SlShifted, FormChoice::G2];
        for n in 1..=3 {
            for p in 1..=3 {
                for f in &forms {
                    if n == 3 && *f == FormChoice::G2 {
                        // 3n − n² vanishes: Id spans the radical
                        assert!(gen_symplectic(n, p, &q(2), f).is_err());
                        continue;
                    }
                    let t = gen_symplectic(n, p, &q(2), f).unwrap();
                    assert!(validate(&t).unwrap().is_valid());
                }
            }
        }
        assert!(validate(&gl_standard(3)).unwrap().is_valid());
        assert!(validate(&sl2_standard()).unwrap().is_valid());
        assert!(validate(&conformal_orthogonal(3, &q(1))).unwrap().is_valid());
        assert!(validate(&gen_glblock(2, &q(1), &q(2)).unwrap()).unwrap().is_valid());
        for name in ["A2", "C2", "G2", "B2"] {
            let (a, d) = cartan_matrix(name).unwrap();
            assert!(validate(&gen_principal(&a, &d).unwrap()).unwrap().is_valid());
        }
    }

    #[test]
    fn symplectic_identity_acts_by_lambda() {
        let lam = Scalar::new(5, 3);
        let (b, rho) = symplectic_rep(3, 2, &lam);
        assert_eq!(rho.apply(&gl_identity(3)), Matrix::scalar(b.len(), &lam));
    }

    #[test]
    fn p1_is_standard_up_to_labels() {
        for n in 1..=3 {
            let t = gen_symplectic(n, 1, &q(1), &FormChoice::Trace).unwrap();
            assert_eq!(t, gl_standard(n));
        }
    }

    #[test]
    fn symplectic_refusals() {
        assert!(gen_symplectic(2, 2, &q(0), &FormChoice::Trace).is_err());
        // tr(UV) − tr(U)tr(V)/2 has the identity in its radical
        let tr = gl_form(2, &FormChoice::Trace);
        let trtr = gl_form(2, &FormChoice::SlShifted).sub(&tr);
        let g = tr.sub(&trtr.scale(&Scalar::new(1, 2)));
        assert!(matches!(gen_symplectic(2, 2, &q(1), &FormChoice::Custom(g)), Err(Error::DegenerateForm(_))));
    }

    #[test]
    fn glblock_refusals_and_shape() {
        assert!(matches!(gen_glblock(2, &q(1), &q(-1)), Err(Error::DegenerateForm(_))));
        assert!(gen_glblock(2, &q(0), &q(1)).is_err());
        let t = gen_glblock(2, &q(1), &q(1)).unwrap();
        assert_eq!((t.dim_g0(), t.dim_v()), (7, 4));
        let [h, a1, a2] = glblock_ideals(2);
        assert_eq!((h.len(), a1.len(), a2.len()), (1, 3, 3));
        let rho_h = t.rho.apply(&h[0]);
        assert_eq!(rho_h, Matrix::scalar(4, &q(2)));
    }

    #[test]
    fn principal_refusals() {
        let a = Matrix::from_int_rows(&[&[2, -1], &[-2, 2]]);
        assert!(gen_principal(&a, &[q(1), q(1)]).is_err());
        let affine = Matrix::from_int_rows(&[&[2, -2], &[-2, 2]]);
        assert!(matches!(gen_principal(&affine, &[q(1), q(1)]), Err(Error::DegenerateForm(_))));
    }

    #[test]
    fn stabilizer_examples() {
        let p: Polynomial = "x0^2 + x1^2".parse().unwrap();
        let s = stabilizer_of_poly(2, &p).unwrap();
        assert_eq!(s, vec![vector::from_ints(&[0, -1, 1, 0])]);
        for n in 2..=4usize {
            let quad =
                (0..n).fold(Polynomial::zero(n), |acc, i| acc.add(&Polynomial::var(n, i).mul(&Polynomial::var(n, i))));
            let s = stabilizer_of_poly(n, &quad).unwrap();
            assert_eq!(s.len(), n * (n - 1) / 2);
            let o = orthogonal_subalgebra(n);
            let stacked: Vec<Vector> = s.iter().chain(&o).cloned().collect();
            assert_eq!(Matrix::from_rows(stacked).rank(), o.len());
        }
        let xp: Polynomial = "x0^3".parse().unwrap();
        assert!(stabilizer_of_poly(1, &xp).unwrap().is_empty());
        assert!(stabilizer_of_poly(2, &Polynomial::zero(2)).is_err());
    }

    #[test]
    fn trivial_summand_shape() {
        let base = gl_standard(2);
        assert_eq!(gen_with_trivial_summand(&base, 0), base);
        let t = gen_with_trivial_summand(&base, 1);
        assert_eq!(t.dim_v(), 3);
        assert!(validate(&t).unwrap().is_valid());
    }
}
