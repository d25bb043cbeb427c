//! Column vectors as plain `Vec<Scalar>` plus a few helpers.

use super::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `acc += c * a`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    debug_assert_eq!(acc.len(), a.len());
    if c.is_zero() {
        return;
    }
    for (s, x) in acc.iter_mut().zip(a) {
        if !x.is_zero() {
            *s += c * x;
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Linear combination `Σ coeffs[k] · vectors[k]` of vectors of length `n`.
pub fn combine(n: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut acc = zeros(n);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut acc, c, v);
    }
    acc
}

/// Kronecker product index convention: `(a, b) ↦ a * nb + b`.
pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

pub fn from_ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}
