//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use glaw_core::exactla::{Scalar, Vector};
use glaw_core::generators::{self, FormChoice};
use glaw_core::liecore::FundamentalTriplet;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
pub fn scalar(r: &mut impl Rng) -> Scalar {
    Scalar::new(r.gen_range(-5..=5), r.gen_range(1..=3))
}

pub fn vector(r: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| scalar(r)).collect()
}

pub fn nonzero_vector(r: &mut impl Rng, n: usize) -> Vector {
    loop {
        let v = vector(r, n);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn symplectic(n: usize, p: u32, lambda: i64, form: FormChoice) -> FundamentalTriplet {
    generators::gen_symplectic(n, p, &q(lambda), &form).unwrap()
}

pub fn principal(name: &str) -> FundamentalTriplet {
    let (a, d) = generators::cartan_matrix(name).unwrap();
    generators::gen_principal(&a, &d).unwrap()
}

/// Every transitive instance produced by the built-in generators in the
/// acceptance criteria, finite and infinite.
pub fn builtins() -> Vec<(&'static str, FundamentalTriplet)> {
    vec![
        ("g2", symplectic(2, 3, 1, FormChoice::G2)),
        ("sp2-2", symplectic(2, 2, 2, FormChoice::Trace)),
        ("sp2-3", symplectic(3, 2, 2, FormChoice::Trace)),
        ("sl-shift-2-lambda2", symplectic(2, 1, 2, FormChoice::SlShifted)),
        ("sl-shift-3-lambda3", symplectic(3, 1, 3, FormChoice::SlShifted)),
        ("sl3", symplectic(2, 1, 3, FormChoice::SlShifted)),
        ("sl4", symplectic(3, 1, 4, FormChoice::SlShifted)),
        ("gl2", generators::gl_standard(2)),
        ("glblock-11", generators::gen_glblock(2, &q(1), &q(1)).unwrap()),
        ("glblock-12", generators::gen_glblock(2, &q(1), &q(2)).unwrap()),
        ("principal-A2", principal("A2")),
        ("principal-C2", principal("C2")),
        ("principal-G2", principal("G2")),
    ]
}
