//! The extended invariant form between `g_n` and `g_{−n}`, and an independent
//! way of computing dimensions from the form's radical.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use super::{Side, Tower};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::localg::LocalAlgebra;

fn check_sides(tp: &Tower, tn: &Tower) -> Result<()> {
    if tp.side() != Side::Positive || tn.side() != Side::Negative {
        return Err(Error::Refused("pairing expects a positive and a negative tower".into()));
    }
    Ok(())
}

/// Matrix of `B(pᵢ, nⱼ)` for the bases of `g_n` (rows) and `g_{−n}` (columns).
///
/// `B(X, Y) = Y(X)` in degree 1. Above that, with `nⱼ = [y_a, n′_c]`,
/// invariance gives `B(p, [y_a, n′]) = −B([y_a, p], n′)`.
pub fn pairing(tp: &Tower, tn: &Tower, n: usize) -> Result<Matrix> {
    Ok(pairing_table(tp, tn, n)?.pop().unwrap_or_else(|| Matrix::zeros(0, 0)))
}

/// The pairing matrices for degrees `1..=n`.
pub fn pairing_table(tp: &Tower, tn: &Tower, n: usize) -> Result<Vec<Matrix>> {
    check_sides(tp, tn)?;
    for t in [tp, tn] {
        if t.dim(n).is_none() {
            return Err(Error::TowerTooShort { needed: n, have: t.grown_degree() });
        }
    }
    let mut out: Vec<Matrix> = Vec::with_capacity(n);
    for k in 1..=n {
        let (Some(cp), Some(cn)) = (tp.component(k), tn.component(k)) else {
            out.push(Matrix::zeros(tp.dim(k).unwrap_or(0), tn.dim(k).unwrap_or(0)));
            continue;
        };
        if k == 1 {
            out.push(Matrix::identity(cp.dim));
            continue;
        }
        let prev = &out[k - 2];
        let m = Matrix::from_fn(cp.dim, cn.dim, |i, j| {
            let (a, c) = cn.provenance[j];
            let la = &cp.lower[a];
            let s: Scalar = la.col(i).iter().map(|(r, v)| v * &prev[(*r, c)]).sum();
            -s
        });
        out.push(m);
    }
    Ok(out)
}

type Word = Vec<usize>;
type Combo = BTreeMap<Word, Scalar>;

fn add_to(c: &mut Combo, w: Word, s: Scalar) {
    if s.is_zero() {
        return;
    }
    match c.entry(w) {
        Entry::Vacant(e) => {
            e.insert(s);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &s;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Evaluates the form on Lie words: positive words `[x_{b₁},[x_{b₂},…]]`,
/// negative words `[y_{a₁},[y_{a₂},…]]`, both in the free algebra over Γ.
struct WordForm<'a> {
    l: &'a LocalAlgebra,
    ad_memo: HashMap<(usize, Word), Combo>,
    pair_memo: HashMap<(Word, Word), Scalar>,
}

impl<'a> WordForm<'a> {
    fn new(l: &'a LocalAlgebra) -> Self {
        WordForm { l, ad_memo: HashMap::new(), pair_memo: HashMap::new() }
    }

    fn dual_act(&self, u: &[Scalar], c: usize) -> Vec<(usize, Scalar)> {
        let m = self.l.dual_action().apply(u);
        (0..m.rows()).map(|r| (r, m[(r, c)].clone())).filter(|(_, s)| !s.is_zero()).collect()
    }

    /// `u·w` for `u ∈ g₀`, acting as a derivation through the word.
    fn derive(&self, u: &[Scalar], w: &[usize]) -> Combo {
        let mut out = Combo::new();
        for i in 0..w.len() {
            for (r, s) in self.dual_act(u, w[i]) {
                let mut w2 = w.to_vec();
                w2[i] = r;
                add_to(&mut out, w2, s);
            }
        }
        out
    }

    /// `[x_b, w]` for a negative word of length ≥ 2.
    fn ad_x(&mut self, b: usize, w: &[usize]) -> Combo {
        if let Some(c) = self.ad_memo.get(&(b, w.to_vec())) {
            return c.clone();
        }
        let a = w[0];
        let rest = &w[1..];
        let u = self.l.xy_basis(b, a).clone();
        let mut out = self.derive(&u, rest);
        if rest.len() == 1 {
            // [y_a, [x_b, y_c]] = −[x_b,y_c]·y_a
            let u2 = self.l.xy_basis(b, rest[0]).clone();
            for (r, s) in self.dual_act(&u2, a) {
                add_to(&mut out, vec![r], -s);
            }
        } else {
            for (w2, s) in self.ad_x(b, rest) {
                let mut full = Vec::with_capacity(w2.len() + 1);
                full.push(a);
                full.extend(w2);
                add_to(&mut out, full, s);
            }
        }
        self.ad_memo.insert((b, w.to_vec()), out.clone());
        out
    }

    /// `B(p, n)` for words of equal length.
    fn pair(&mut self, p: &[usize], n: &[usize]) -> Scalar {
        if p.len() == 1 {
            return if p[0] == n[0] { Scalar::one() } else { Scalar::zero() };
        }
        let key = (p.to_vec(), n.to_vec());
        if let Some(s) = self.pair_memo.get(&key) {
            return s.clone();
        }
        let mut acc = Scalar::zero();
        for (w, c) in self.ad_x(p[0], n) {
            let v = self.pair(&p[1..], &w);
            if !v.is_zero() {
                acc += &(&c * &v);
            }
        }
        let s = -acc;
        self.pair_memo.insert(key, s.clone());
        s
    }
}

/// `dim g_k` for `k = 1..` as the rank of the form between the candidate
/// brackets `[g₁, g_{k−1}]` and `[g₋₁, g_{1−k}]`, computed on Lie words without
/// the Φ construction. Stops after the first zero degree or at `max_degree`.
pub fn word_pairing_ranks(l: &LocalAlgebra, max_degree: usize) -> Vec<usize> {
    let d = l.dim_v();
    let mut form = WordForm::new(l);
    let mut pos: Vec<Word> = (0..d).map(|i| vec![i]).collect();
    let mut neg = pos.clone();
    let mut ranks = Vec::new();
    for k in 1..=max_degree {
        if k > 1 {
            let extend = |basis: &[Word]| -> Vec<Word> {
                (0..d)
                    .flat_map(|b| {
                        basis.iter().map(move |w| {
                            let mut v = vec![b];
                            v.extend(w);
                            v
                        })
                    })
                    .collect()
            };
            let cp = extend(&pos);
            let cn = extend(&neg);
            let m = Matrix::from_fn(cp.len(), cn.len(), |i, j| form.pair(&cp[i], &cn[j]));
            let cols = m.image_basis().pivots;
            let rows = m.transpose().image_basis().pivots;
            pos = rows.iter().map(|&i| cp[i].clone()).collect();
            neg = cols.iter().map(|&j| cn[j].clone()).collect();
        }
        ranks.push(pos.len());
        if pos.is_empty() {
            break;
        }
    }
    ranks
}
