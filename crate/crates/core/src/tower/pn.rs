//! The identities `P_n(Y₁,…,Y_{n−1}, X₁,…,X_n) = 0` rewritten as sums of
//! brackets that are all defined inside Γ.

use std::fmt;

use serde::Serialize;

use super::Side;
use crate::error::{Error, Result};
use crate::exactla::{vector, Scalar, Vector};
use crate::localg::{build_local, theta_swap, LocalAlgebra, LocalElem};
use crate::par;

/// A bracket monomial in the variables `X₁…X_n` (degree 1) and `Y₁…Y_{n−1}`
/// (degree −1). Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    X(usize),
    Y(usize),
    Br(Box<Expr>, Box<Expr>),
}

fn br(a: Expr, b: Expr) -> Expr {
    Expr::Br(Box::new(a), Box::new(b))
}

impl Expr {
    pub fn degree(&self) -> i32 {
        match self {
            Expr::X(_) => 1,
            Expr::Y(_) => -1,
            Expr::Br(a, b) => a.degree() + b.degree(),
        }
    }

    /// True when every bracket node has both arguments and its value in Γ.
    pub fn is_local(&self) -> bool {
        match self {
            Expr::X(_) | Expr::Y(_) => true,
            Expr::Br(a, b) => a.is_local() && b.is_local() && self.degree().abs() <= 1,
        }
    }

    /// Evaluates with `xs[i−1]` for `Xᵢ` and `ys[j−1]` for `Yⱼ`.
    pub fn eval(&self, l: &LocalAlgebra, xs: &[Vector], ys: &[Vector]) -> Option<LocalElem> {
        match self {
            Expr::X(i) => Some(LocalElem::v(xs[i - 1].clone())),
            Expr::Y(j) => Some(LocalElem::dual(ys[j - 1].clone())),
            Expr::Br(a, b) => l.bracket(&a.eval(l, xs, ys)?, &b.eval(l, xs, ys)?),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X(i) => write!(f, "X{i}"),
            Expr::Y(j) => write!(f, "Y{j}"),
            Expr::Br(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// `[Y, [E₁,[E₂,…,[E_{m−1},E_m]…]]]` as a sum of chains one shorter, each
/// `Eᵢ` (i < m) being either dropped into `[[Y,Eᵢ],E_k]` for some k > i, or the
/// last pair becoming `[E_{m−1},[Y,E_m]]`.
fn apply_y(y: &Expr, chain: &[Expr]) -> Vec<Vec<Expr>> {
    let m = chain.len();
    let mut out = Vec::new();
    for i in 0..m - 1 {
        for k in i + 1..m {
            let mut next: Vec<Expr> = Vec::with_capacity(m - 1);
            for (j, e) in chain.iter().enumerate() {
                if j == i {
                    continue;
                }
                next.push(if j == k { br(br(y.clone(), chain[i].clone()), e.clone()) } else { e.clone() });
            }
            out.push(next);
        }
    }
    let mut last: Vec<Expr> = chain[..m - 2].to_vec();
    last.push(br(chain[m - 2].clone(), br(y.clone(), chain[m - 1].clone())));
    out.push(last);
    out
}

/// Terms of `P_n`; their sum is `[Y₁,[Y₂,…,[Y_{n−1},[X₁,[…,[X_{n−1},X_n]…]]]]]`.
pub fn pn_expand(n: usize) -> Result<Vec<Expr>> {
    if !(2..=5).contains(&n) {
        return Err(Error::OutOfRange(format!("P_{n} (supported: 2..=5)")));
    }
    let mut chains: Vec<Vec<Expr>> = vec![(1..=n).map(Expr::X).collect()];
    for j in (1..n).rev() {
        let y = Expr::Y(j);
        chains = chains.iter().flat_map(|c| apply_y(&y, c)).collect();
    }
    Ok(chains.into_iter().map(|mut c| c.pop().expect("chain of length one")).collect())
}

/// Value of `P_n` at explicit arguments, in g₁ = V.
pub fn pn_eval(l: &LocalAlgebra, terms: &[Expr], xs: &[Vector], ys: &[Vector]) -> Vector {
    let mut acc = vector::zeros(l.dim_v());
    for t in terms {
        let v = t.eval(l, xs, ys).expect("every P_n monomial is defined in the local algebra");
        vector::axpy(&mut acc, &Scalar::one(), &v.coords);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnWitness {
    /// Basis indices of `X₁…X_n` (in g₁ of the chosen side).
    pub xs: Vec<usize>,
    /// Basis indices of `Y₁…Y_{n−1}`.
    pub ys: Vec<usize>,
    pub value: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PnCheck {
    pub n: usize,
    pub side: Side,
    pub holds: bool,
    pub terms: usize,
    pub witness: Option<PnWitness>,
}

fn decode(mut idx: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Checks `P_n = 0` on all basis tuples, which suffices by multilinearity. On
/// the negative side the roles of V and V* are exchanged.
pub fn pn_check(l: &LocalAlgebra, side: Side, n: usize) -> Result<PnCheck> {
    let terms = pn_expand(n)?;
    Ok(match side {
        Side::Positive => pn_check_local(l, side, n, &terms),
        Side::Negative => pn_check_local(&build_local(&theta_swap(l.triplet()))?, side, n, &terms),
    })
}

fn pn_check_local(l: &LocalAlgebra, side: Side, n: usize, terms: &[Expr]) -> PnCheck {
    let d = l.dim_v();
    let total = d.pow((2 * n - 1) as u32);
    let value_at = |idx: usize| {
        let code = decode(idx, d, 2 * n - 1);
        let xs: Vec<Vector> = code[..n].iter().map(|&i| vector::unit(d, i)).collect();
        let ys: Vec<Vector> = code[n..].iter().map(|&i| vector::unit(d, i)).collect();
        (code, pn_eval(l, terms, &xs, &ys))
    };
    let hit = if d == 0 { None } else { par::find_first(total, |idx| !vector::is_zero(&value_at(idx).1)) };
    let witness = hit.map(|idx| {
        let (code, value) = value_at(idx);
        PnWitness { xs: code[..n].to_vec(), ys: code[n..].to_vec(), value }
    });
    PnCheck { n, side, holds: witness.is_none(), terms: terms.len(), witness }
}
