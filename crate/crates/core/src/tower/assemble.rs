//! Structure constants of a finite g_min from its two towers.

use std::collections::{BTreeMap, HashMap};

use super::{pairing_table, GradedComponent, Side, Tower};
use crate::error::{Error, Result};
use crate::exactla::{vector, Matrix, Scalar, Vector};
use crate::liecore::{center, killing_form, validate_algebra, LieAlgebraData, Violation};
use crate::localg::{build_local, LocalAlgebra, Reduction};

/// A finite-dimensional graded Lie algebra on a homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssembledAlgebra {
    pub algebra: LieAlgebraData,
    /// Degree of each basis vector.
    pub degrees: Vec<i32>,
}

impl AssembledAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Indices of the basis vectors of degree `d`.
    pub fn indices(&self, d: i32) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// `dim gᵢ` for every degree present.
    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    pub fn violations(&self) -> Vec<Violation> {
        validate_algebra(&self.algebra)
    }

    /// First basis pair with `[gᵢ, gⱼ] ⊄ g_{i+j}`.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.degrees[i] + self.degrees[j];
                let v = self.algebra.bracket_basis(i, j);
                if v.iter().enumerate().any(|(k, c)| !c.is_zero() && self.degrees[k] != target) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn killing_form(&self) -> Matrix {
        killing_form(&self.algebra)
    }

    pub fn killing_nondegenerate(&self) -> bool {
        self.dim() == 0 || self.killing_form().is_invertible()
    }

    pub fn center(&self) -> Vec<Vector> {
        center(&self.algebra)
    }
}

struct Assembler<'a> {
    tp: &'a Tower,
    tn: &'a Tower,
    l: &'a LocalAlgebra,
    memo: HashMap<(i32, usize, i32, usize), Vector>,
}

impl<'a> Assembler<'a> {
    fn comp(&self, d: i32) -> Option<&'a GradedComponent> {
        let t = if d > 0 { self.tp } else { self.tn };
        t.component(d.unsigned_abs() as usize)
    }

    fn dim(&self, d: i32) -> usize {
        if d == 0 {
            self.l.dim_g0()
        } else {
            self.comp(d).map_or(0, |c| c.dim)
        }
    }

    /// `[v₁, v₂]` for homogeneous vectors of degrees `d1`, `d2`.
    fn bracket(&mut self, d1: i32, v1: &[Scalar], d2: i32, v2: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.dim(d1 + d2));
        if out.is_empty() {
            return out;
        }
        for (i, a) in v1.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v2.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let e = self.basis(d1, i, d2, j);
                vector::axpy(&mut out, &(a * b), &e);
            }
        }
        out
    }

    fn basis(&mut self, da: i32, ia: usize, db: i32, ib: usize) -> Vector {
        let target = self.dim(da + db);
        if target == 0 {
            return Vector::new();
        }
        if let Some(v) = self.memo.get(&(da, ia, db, ib)) {
            return v.clone();
        }
        let v = self.compute(da, ia, db, ib);
        self.memo.insert((da, ia, db, ib), v.clone());
        v
    }

    fn compute(&mut self, da: i32, ia: usize, db: i32, ib: usize) -> Vector {
        if da == 0 {
            return if db == 0 {
                self.l.triplet().g0.bracket_basis(ia, ib).clone()
            } else {
                self.comp(db).expect("nonzero degree").act0[ia].col_dense(ib)
            };
        }
        if db == 0 || (da.abs() > 1 && db.abs() == 1) {
            return vector::neg(&self.basis(db, ib, da, ia));
        }
        if da.abs() == 1 {
            let cb = self.comp(db).expect("nonzero degree");
            return if da.signum() == db.signum() {
                let up = self.comp(db + da).expect("nonzero target");
                up.raise.col_dense(ia * cb.dim + ib)
            } else {
                cb.lower[ia].col_dense(ib)
            };
        }
        // a = [g_b, w_c]: [[g,w],q] = [g,[w,q]] − [w,[g,q]]
        let s = da.signum();
        let (b, c) = self.comp(da).expect("nonzero degree").provenance[ia];
        let wq = self.basis(da - s, c, db, ib);
        let g = vector::unit(self.dim(s), b);
        let t1 = self.bracket(s, &g, da - s + db, &wq);
        let gq = self.basis(s, b, db, ib);
        let w = vector::unit(self.dim(da - s), c);
        let t2 = self.bracket(da - s, &w, db + s, &gq);
        vector::sub(&t1, &t2)
    }
}

fn check_towers(tp: &Tower, tn: &Tower) -> Result<()> {
    if tp.side() != Side::Positive || tn.side() != Side::Negative {
        return Err(Error::Refused("assemble expects a positive and a negative tower".into()));
    }
    for t in [tp, tn] {
        if !t.is_terminated() {
            return Err(Error::NotTerminated(t.grown_degree()));
        }
    }
    Ok(())
}

fn degree_layout(tp: &Tower, tn: &Tower, n0: usize) -> Vec<(i32, usize)> {
    let mut out: Vec<(i32, usize)> =
        tn.components().iter().rev().filter(|c| c.dim > 0).map(|c| (c.degree, c.dim)).collect();
    out.push((0, n0));
    out.extend(tp.components().iter().filter(|c| c.dim > 0).map(|c| (c.degree, c.dim)));
    out
}

/// All brackets `[gᵢ, gⱼ]`, reduced by Jacobi to the stored actions, lowerings
/// and raisings. Fails unless both towers terminated.
pub fn assemble(tp: &Tower, tn: &Tower, l: &LocalAlgebra) -> Result<AssembledAlgebra> {
    check_towers(tp, tn)?;
    let layout = degree_layout(tp, tn, l.dim_g0());
    let mut offsets = BTreeMap::new();
    let mut degrees = Vec::new();
    for &(d, n) in &layout {
        offsets.insert(d, degrees.len());
        degrees.extend(std::iter::repeat_n(d, n));
    }
    let total = degrees.len();
    let local_index: Vec<usize> = (0..total).map(|i| i - offsets[&degrees[i]]).collect();
    let mut asm = Assembler { tp, tn, l, memo: HashMap::new() };
    let mut structure = vec![vec![vector::zeros(total); total]; total];
    for i in 0..total {
        for j in 0..total {
            let (di, dj) = (degrees[i], degrees[j]);
            let v = asm.basis(di, local_index[i], dj, local_index[j]);
            if let Some(&off) = offsets.get(&(di + dj)) {
                for (k, c) in v.into_iter().enumerate() {
                    structure[i][j][off + k] = c;
                }
            }
        }
    }
    let algebra = AssembledAlgebra { algebra: LieAlgebraData::new(total, structure)?, degrees };
    let bad = algebra.violations();
    if let Some(v) = bad.first() {
        return Err(Error::Refused(format!("assembled brackets violate {v}")));
    }
    Ok(algebra)
}

/// Gram matrix of the extended invariant form on the assembled basis: `B₀` on
/// g₀ and the degree pairings between `gₖ` and `g₋ₖ`.
pub fn assembled_form(tp: &Tower, tn: &Tower, l: &LocalAlgebra, a: &AssembledAlgebra) -> Result<Matrix> {
    check_towers(tp, tn)?;
    let top = a.degrees.iter().copied().max().unwrap_or(0).max(0) as usize;
    let table = pairing_table(tp, tn, top)?;
    let n = a.dim();
    let mut m = Matrix::zeros(n, n);
    let g0 = a.indices(0);
    for (i, &p) in g0.iter().enumerate() {
        for (j, &q) in g0.iter().enumerate() {
            m[(p, q)] = l.triplet().b0.gram[(i, j)].clone();
        }
    }
    for k in 1..=top {
        let pos = a.indices(k as i32);
        let neg = a.indices(-(k as i32));
        let b = &table[k - 1];
        for (i, &p) in pos.iter().enumerate() {
            for (j, &q) in neg.iter().enumerate() {
                m[(p, q)] = b[(i, j)].clone();
                m[(q, p)] = b[(i, j)].clone();
            }
        }
    }
    Ok(m)
}

/// g_min of a reduced triplet: g_min of the transitive part, plus the abelian
/// `V₀* ⊕ V₀` in degrees ∓1 and the kernel `g₀ᵏ` in degree 0, each bracketing
/// trivially with everything else.
pub fn assemble_reduced(red: &Reduction, g0: &LieAlgebraData, max_degree: usize) -> Result<AssembledAlgebra> {
    let l = build_local(&red.transitive_part)?;
    let (tp, tn) = super::grow_both(&l, max_degree)?;
    let base = assemble(&tp, &tn, &l)?;
    let kernel = g0.restrict(&red.g0k)?;
    let k = red.v0.len();
    let nb = base.dim();
    let nk = kernel.dim();
    let total = nb + 2 * k + nk;
    let mut structure = vec![vec![vector::zeros(total); total]; total];
    for i in 0..nb {
        for j in 0..nb {
            structure[i][j][..nb].clone_from_slice(base.algebra.bracket_basis(i, j));
        }
    }
    let off = nb + k;
    for i in 0..nk {
        for j in 0..nk {
            structure[off + i][off + j][off..off + nk].clone_from_slice(kernel.bracket_basis(i, j));
        }
    }
    let mut degrees = base.degrees.clone();
    degrees.extend(std::iter::repeat_n(-1, k));
    degrees.extend(std::iter::repeat_n(0, nk));
    degrees.extend(std::iter::repeat_n(1, k));
    Ok(AssembledAlgebra { algebra: LieAlgebraData::new(total, structure)?, degrees })
}
