use super::*;
use crate::exactla::vector;
use crate::generators::{self, FormChoice, MonomialBasis};
use crate::liecore::{LieAlgebraData, QuadraticForm, Representation};
use crate::localg::{deform_form, theta_swap};
use crate::poly::Polynomial;
use crate::testutil;

fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn sp(n: usize, p: u32, lambda: Scalar) -> FundamentalTriplet {
    generators::gen_symplectic(n, p, &lambda, &FormChoice::Trace).unwrap()
}

fn pure_powers(n: usize, p: u32) -> Vector {
    let basis = MonomialBasis::new(n, p);
    let mut v = vector::zeros(basis.len());
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = p;
        v[basis.index_of(&e).unwrap()] = Scalar::one();
    }
    v
}

fn poly(s: &str, nvars: usize) -> Polynomial {
    Polynomial::parse(s, nvars).unwrap()
}

/// Discriminants on the coefficient spaces of binary quadratics and cubics,
/// in the monomial order `x0^p, x0^(p-1) x1, …`.
fn binary_discriminant(p: u32) -> Polynomial {
    match p {
        2 => poly("x1^2 - 4*x0*x2", 3),
        3 => poly("x1^2*x2^2 - 4*x0*x2^3 - 4*x1^3*x3 - 27*x0^2*x3^2 + 18*x0*x1*x2*x3", 4),
        _ => unreachable!(),
    }
}

/// `gl(2) ⊕ gl(2)` acting on 2×2 matrices by `(A, B)·X = AX − XB`, flattened row-major.
fn two_sided_matrices() -> FundamentalTriplet {
    let gl = generators::gl_standard(2);
    let base = generators::direct_sum_acting_first(&gl, &gl);
    let idx = |a: usize, b: usize| a * 2 + b;
    let mut action = Vec::new();
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        // X ↦ E_ij X
        action.push(Matrix::from_fn(4, 4, |r, c| Scalar::from_int((r / 2 == i && c == idx(j, r % 2)) as i64)));
    }
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        // X ↦ −X E_ij
        action.push(Matrix::from_fn(4, 4, |r, c| Scalar::from_int(-((r % 2 == j && c == idx(r / 2, i)) as i64))));
    }
    FundamentalTriplet::new(base.g0, base.b0, Representation::new(4, action))
}

#[test]
fn assumption_h_clauses() {
    for (n, p, lambda) in [(2, 2, q(2)), (2, 3, q(1)), (3, 2, Scalar::new(3, 2)), (2, 1, q(-4))] {
        let h = assumption_h_check(&sp(n, p, lambda.clone()));
        assert!(h.ok, "sp^{p}(C^{n}) with lambda {lambda}");
        let expected = vector::scale(&(&q(2) / &lambda), &generators::gl_identity(n));
        assert_eq!(h.h0, Some(expected));
    }
    let sl2 = assumption_h_check(&generators::sl2_standard());
    assert!(!sl2.ok);
    assert_eq!(sl2.violations, vec![HViolation::CenterDimension { dim: 0 }]);
    assert_eq!(sl2.violations[0].clause(), 'a');

    let (_, rho) = generators::symplectic_rep(2, 2, &Scalar::zero());
    let flat = FundamentalTriplet::new(
        generators::gl_algebra(2),
        QuadraticForm::new(generators::gl_form(2, &FormChoice::Trace)),
        rho,
    );
    let h = assumption_h_check(&flat);
    assert_eq!(h.violations, vec![HViolation::TrivialCharacter]);
    assert_eq!(h.violations[0].clause(), 'b');
    assert_eq!(h.h0, None);

    // ℂ² acting diagonally on ℂ²: both clauses fail
    let diag = FundamentalTriplet::new(
        LieAlgebraData::abelian(2),
        QuadraticForm::new(Matrix::identity(2)),
        Representation::new(
            2,
            vec![Matrix::from_int_rows(&[&[1, 0], &[0, 0]]), Matrix::from_int_rows(&[&[0, 0], &[0, 1]])],
        ),
    );
    let h = assumption_h_check(&diag);
    let clauses: Vec<char> = h.violations.iter().map(HViolation::clause).collect();
    assert_eq!(clauses, vec!['a', 'b']);
}

#[test]
fn property_p_on_symplectic_families() {
    for (n, p) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let t = sp(n, p, q(1));
        assert!(property_p_test(&t, &pure_powers(n, p)), "(n, p) = ({n}, {p})");
        assert!(!property_p_test(&t, &vector::zeros(t.dim_v())));
    }
    let mut rng = testutil::rng(7);
    for n in [2, 3] {
        let t = sp(n, 1, q(1));
        for _ in 0..10 {
            let x = testutil::vector(&mut rng, n);
            if !vector::is_zero(&x) {
                assert!(!property_p_test(&t, &x));
            }
        }
    }
    // a pure power is tangent to its own sl(n)-orbit
    let t = sp(2, 3, q(1));
    assert!(!property_p_test(&t, &vector::unit(4, 0)));
}

#[test]
fn completing_x_squared_plus_y_squared() {
    let t = sp(2, 2, q(2));
    let x = vector::from_ints(&[1, 0, 1]);
    let cert = complete_triple(&t, &x).unwrap();
    assert!(cert.is_exact());
    // g0'.X is spanned by 2xy and 2x² − 2y², so Y ∝ (1, 0, 1); Y(X) = −B0(H0,H0)/2 = −1
    assert_eq!(cert.y, vec![Scalar::new(-1, 2), q(0), Scalar::new(-1, 2)]);
    assert_eq!(cert.h0, generators::gl_identity(2));
    assert!(matches!(complete_triple(&t, &vector::zeros(3)), Err(Error::NoTriple(_))));
    assert!(matches!(
        complete_triple(&generators::sl2_standard(), &vector::from_ints(&[1, 0])),
        Err(Error::NoTriple(_))
    ));
}

#[test]
fn g2_triplet_has_a_triple_through_a_sum_of_cubes() {
    let t = generators::gen_symplectic(2, 3, &q(1), &FormChoice::G2).unwrap();
    let cert = complete_triple(&t, &vector::from_ints(&[1, 0, 0, 1])).unwrap();
    assert!(cert.is_exact());
}

/// All `(Y, c)` with `[Y, X] = c·H₀`, from the bracket alone.
fn line_solutions(t: &FundamentalTriplet, x: &[Scalar], h0: &[Scalar]) -> Vec<Vector> {
    let l = build_local(t).unwrap();
    let d = t.dim_v();
    let mut cols: Vec<Vector> = (0..d).map(|j| vector::neg(&l.bracket_xy(x, &vector::unit(d, j)))).collect();
    cols.push(vector::neg(h0));
    Matrix::from_columns(t.dim_g0(), &cols).kernel_basis()
}

#[test]
fn criterion_is_sound_in_both_directions() {
    let mut rng = testutil::rng(11);
    for (n, p) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
        let t = sp(n, p, q(1));
        let h0 = assumption_h_check(&t).h0.unwrap();
        let d = t.dim_v();
        let mut samples = vec![pure_powers(n, p), vector::unit(d, 0)];
        for _ in 0..8 {
            let mut x = testutil::vector(&mut rng, d);
            if rng_bool(&mut rng) {
                x[0] = Scalar::zero();
            }
            samples.push(x);
        }
        for x in samples.iter().filter(|x| !vector::is_zero(x)) {
            let sols = line_solutions(&t, x, &h0);
            let some_nonzero = sols.iter().any(|s| !s[d].is_zero());
            if property_p_test(&t, x) {
                let cert = complete_triple(&t, x).unwrap();
                assert!(cert.is_exact());
                assert!(some_nonzero);
            } else {
                assert!(!some_nonzero, "(n, p) = ({n}, {p}): a triple exists through {x:?}");
            }
        }
    }
}

fn rng_bool(r: &mut impl rand::Rng) -> bool {
    r.gen_bool(0.3)
}

#[test]
fn property_p_ignores_the_form() {
    let mut rng = testutil::rng(3);
    for (n, p) in [(2, 2), (2, 3), (3, 1)] {
        let t = sp(n, p, q(1));
        let g = &t.g0;
        let ideals = vec![vec![generators::gl_identity(n)], derived_subalgebra(g)];
        let t2 = deform_form(&t, &ideals, &[q(5), Scalar::new(-2, 3)]).unwrap();
        assert_ne!(t.b0, t2.b0);
        for _ in 0..6 {
            let x = testutil::vector(&mut rng, t.dim_v());
            assert_eq!(property_p_test(&t, &x), property_p_test(&t2, &x));
        }
        let x = pure_powers(n, p);
        assert_eq!(complete_triple(&t, &x).is_ok(), complete_triple(&t2, &x).is_ok());
    }
}

#[test]
fn property_p_is_self_dual() {
    let mut rng = testutil::rng(5);
    for (n, p) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)] {
        let t = sp(n, p, q(1));
        let s = theta_swap(&t);
        let mut candidates = vec![pure_powers(n, p)];
        candidates.extend((0..5).map(|_| testutil::vector(&mut rng, t.dim_v())));
        let exists = |t: &FundamentalTriplet| candidates.iter().any(|x| property_p_test(t, x));
        assert_eq!(exists(&t), exists(&s), "(n, p) = ({n}, {p})");
        assert_eq!(exists(&t), p > 1);
    }
}

#[test]
fn relative_invariants() {
    for n in [2, 3] {
        let t = generators::conformal_orthogonal(n, &q(1));
        let r = Polynomial::from_terms(n, (0..n).map(|i| (vector_exp(n, i, 2), Scalar::one())));
        let InvariantCheck::Character { dchi } = relative_invariant_check(&t, &r).unwrap() else {
            panic!("quadric is invariant");
        };
        let mut expected = vector::zeros(t.dim_g0());
        expected[0] = q(2);
        assert_eq!(dchi, expected);
    }
    // d/dt det(e^{tA} X e^{-tB}) = (tr A − tr B) det X
    let t = two_sided_matrices();
    let det = poly("x0*x3 - x1*x2", 4);
    let check = relative_invariant_check(&t, &det).unwrap();
    assert_eq!(check, InvariantCheck::Character { dchi: vector::from_ints(&[1, 0, 0, 1, -1, 0, 0, -1]) });

    let sl2 = generators::sl2_standard();
    assert_eq!(relative_invariant_check(&sl2, &poly("x0", 2)).unwrap(), InvariantCheck::Failure { basis_index: 1 });
    assert!(matches!(relative_invariant_check(&sl2, &Polynomial::zero(2)), Err(Error::Refused(_))));
    assert!(matches!(relative_invariant_check(&sl2, &poly("x0 + x1^2", 2)), Err(Error::Refused(_))));
}

fn vector_exp(n: usize, i: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = k;
    e
}

#[test]
fn gradlog_on_the_conformal_quadric() {
    let t = generators::conformal_orthogonal(3, &q(2));
    let r = poly("x0^2 + x1^2 + x2^2", 3);
    let cert = gradlog_triple(&t, &r, &vector::from_ints(&[1, 0, 0])).unwrap();
    // B0(Id, Id) = 3, dχ(H0) = 4, dR/R = (2, 0, 0)
    assert_eq!(cert.y, vec![Scalar::new(-3, 2), q(0), q(0)]);
    assert!(cert.is_exact());
    assert!(gradlog_triple(&t, &r, &vector::zeros(3)).is_err());
    let o2 = generators::conformal_orthogonal(2, &q(2));
    assert!(matches!(
        gradlog_triple(&o2, &poly("x0^2 + x1^2", 2), &vector::from_ints(&[1, 0])),
        Err(Error::NoTriple(_))
    ));
}

#[test]
fn gradlog_agrees_with_completion_modulo_the_tangent_annihilator() {
    let mut rng = testutil::rng(19);
    for (p, lambda) in [(2u32, q(2)), (3, q(1)), (3, Scalar::new(-1, 2))] {
        let t = sp(2, p, lambda);
        let l = build_local(&t).unwrap();
        let r = binary_discriminant(p);
        let mut points = vec![pure_powers(2, p)];
        points.extend((0..6).map(|_| testutil::vector(&mut rng, t.dim_v())));
        for x in points.iter().filter(|x| !r.eval(x).is_zero()) {
            let g = gradlog_triple(&t, &r, x).unwrap();
            let c = complete_triple(&t, x).unwrap();
            assert!(g.is_exact() && c.is_exact());
            assert!(vector::is_zero(&l.bracket_xy(x, &vector::sub(&g.y, &c.y))));
        }
    }
}
