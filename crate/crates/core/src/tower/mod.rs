//! Degree-by-degree growth of g_min(Γ), the extended form on it, the P_n
//! identities and assembly of finite results.
//!
//! Each side is grown as the positive part of a graded algebra generated by
//! `g₁` over `g₀`, with `g₋₁` the opposite piece of Γ. On the positive side
//! `(g₁, g₋₁) = (V, V*)`; on the negative side they are exchanged, and degree
//! `n` of that tower is degree `−n` of g_min.
//!
//! `g_{n+1}` is realised inside `Hom(g₋₁, g_n)` through `w ↦ (y ↦ [y, w])`.
//! This is injective because g_min of a transitive local algebra is transitive.

mod assemble;
mod pairing;
mod pn;
mod report;

pub use assemble::{assemble, assemble_reduced, assembled_form, AssembledAlgebra};
pub use pairing::{pairing, pairing_table, word_pairing_ranks};
pub use pn::{pn_check, pn_eval, pn_expand, Expr, PnCheck, PnWitness};
pub use report::{
    centralizer_graded, centralizer_in_g0, finiteness_report, CenterHeuristic, FinitenessReport, GradedSubspace,
    Verdict,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{compress, vector, Accumulator, Matrix, Scalar, SparseMatrix, SparseVec, Vector};
use crate::localg::{transitivity_check, LocalAlgebra};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn sign(self) -> i32 {
        match self {
            Side::Positive => 1,
            Side::Negative => -1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }
}

/// Weight of a homogeneous vector under the diagonal part of g₀'s action.
pub type Weight = Vec<Scalar>;

/// Γ seen from one side: the generating piece `g₁`, the opposite piece `g₋₁`
/// and the brackets between them.
#[derive(Debug, Clone)]
pub struct SideView {
    side: Side,
    dim_g0: usize,
    dim_v: usize,
    /// g₀ acting on `g₁`.
    act1: Vec<Matrix>,
    /// g₀ acting on `g₋₁`.
    actm1: Vec<Matrix>,
    /// `yx[a * dim_v + b] = [y_a, x_b] ∈ g₀`.
    yx: Vec<Vector>,
    /// Basis elements of g₀ acting diagonally on `g₁`; their eigenvalues grade
    /// every component and split Φ into independent blocks.
    torus: Vec<usize>,
}

impl SideView {
    pub fn new(l: &LocalAlgebra, side: Side) -> Self {
        let d = l.dim_v();
        let (act1, actm1) = match side {
            Side::Positive => (l.triplet().rho.action.clone(), l.dual_action().action.clone()),
            Side::Negative => (l.dual_action().action.clone(), l.triplet().rho.action.clone()),
        };
        let yx = (0..d * d)
            .map(|r| {
                let (a, b) = (r / d, r % d);
                match side {
                    Side::Positive => vector::neg(l.xy_basis(b, a)),
                    Side::Negative => l.xy_basis(a, b).clone(),
                }
            })
            .collect();
        let torus =
            (0..act1.len()).filter(|&k| (0..d).all(|i| (0..d).all(|j| i == j || act1[k][(i, j)].is_zero()))).collect();
        SideView { side, dim_g0: l.dim_g0(), dim_v: d, act1, actm1, yx, torus }
    }

    /// The same view with weight blocking switched off.
    pub fn without_torus(mut self) -> Self {
        self.torus.clear();
        self
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim_g0(&self) -> usize {
        self.dim_g0
    }

    /// Dimension of both `g₁` and `g₋₁`.
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn act1(&self) -> &[Matrix] {
        &self.act1
    }

    pub fn actm1(&self) -> &[Matrix] {
        &self.actm1
    }

    /// `[y_a, x_b]` in g₀ coordinates.
    pub fn yx(&self, a: usize, b: usize) -> &Vector {
        &self.yx[a * self.dim_v + b]
    }

    fn weight1(&self, b: usize) -> Weight {
        self.torus.iter().map(|&k| self.act1[k][(b, b)].clone()).collect()
    }
}

/// Degree `n ≥ 1` of one side of g_min.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComponent {
    /// Signed degree in g_min.
    pub degree: i32,
    pub dim: usize,
    /// `act0[k]` is the action of the k-th basis vector of g₀.
    pub act0: Vec<SparseMatrix>,
    /// `lower[a]`: `g_n → g_{n−1}`, `u ↦ [y_a, u]` (g_{n−1} = g₀ when n = 1).
    pub lower: Vec<SparseMatrix>,
    /// `raise` column `b * dim g_{n−1} + c` is `[x_b, u_c]` in this component's basis.
    pub raise: SparseMatrix,
    /// Basis vector `i` equals `[x_b, u_c]` for `provenance[i] = (b, c)`. Empty in degree 1.
    pub provenance: Vec<(usize, usize)>,
    /// Torus weight of each basis vector.
    pub weights: Vec<Weight>,
}

impl GradedComponent {
    /// Dense matrix of `u ∈ g₀` acting on this component.
    pub fn act(&self, u: &[Scalar]) -> Matrix {
        SparseMatrix::combination(&self.act0, u, self.dim, self.dim).to_dense()
    }

    /// Dimension of the previous degree (g₀ for degree ±1).
    pub fn prev_dim(&self) -> usize {
        self.raise.cols() / self.lower.len().max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GrowthStatus {
    /// A zero component was reached at this (unsigned) degree.
    Terminated { at: usize },
    /// Every component up to the budget is nonzero.
    BudgetExhausted { max_degree: usize },
}

#[derive(Debug, Clone)]
pub struct Tower {
    view: SideView,
    /// Unsigned degrees `1..`; stops at the first zero component.
    components: Vec<GradedComponent>,
    status: GrowthStatus,
}

impl Tower {
    pub fn side(&self) -> Side {
        self.view.side
    }

    pub fn view(&self) -> &SideView {
        &self.view
    }

    pub fn status(&self) -> GrowthStatus {
        self.status
    }

    pub fn is_terminated(&self) -> bool {
        matches!(self.status, GrowthStatus::Terminated { .. })
    }

    pub fn components(&self) -> &[GradedComponent] {
        &self.components
    }

    /// The component of unsigned degree `n ≥ 1`, if grown.
    pub fn component(&self, n: usize) -> Option<&GradedComponent> {
        n.checked_sub(1).and_then(|i| self.components.get(i))
    }

    /// Dimension at unsigned degree `n`; zero past termination, `None` past the budget.
    pub fn dim(&self, n: usize) -> Option<usize> {
        if n == 0 {
            return Some(self.view.dim_g0);
        }
        match self.component(n) {
            Some(c) => Some(c.dim),
            None if self.is_terminated() => Some(0),
            None => None,
        }
    }

    /// Dimensions for degrees `1..=n`, padded with zeros after termination.
    pub fn dims(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|k| self.dim(k).unwrap_or(0)).collect()
    }

    /// Highest degree that was actually computed.
    pub fn grown_degree(&self) -> usize {
        self.components.len()
    }

    fn comp_or_err(&self, n: usize) -> Result<&GradedComponent> {
        self.component(n).ok_or(Error::TowerTooShort { needed: n, have: self.grown_degree() })
    }

    /// The Φ matrix of `g₁ ⊗ g_n → Hom(g₋₁, g_n)`: column `b * dim g_n + c`
    /// holds `Φ(x_b ⊗ u_c)`, row `a * dim g_n + r` the r-th coordinate of its
    /// value on `y_a`. Dense; meant for small degrees.
    pub fn phi_matrix(&self, n: usize) -> Result<Matrix> {
        let comp = self.comp_or_err(n)?;
        let d = self.view.dim_v;
        let cols: Vec<SparseVec> = (0..d * comp.dim).map(|p| phi_column(&self.view, comp, p)).collect();
        Ok(SparseMatrix::from_columns(d * comp.dim, cols).to_dense())
    }

    /// `Φ(w)(y_a)` for `w = Σ w[b * dim g_n + c] x_b ⊗ u_c`.
    pub fn phi_apply(&self, n: usize, w: &[Scalar], a: usize) -> Result<Vector> {
        let comp = self.comp_or_err(n)?;
        let m = comp.dim;
        let mut out = vector::zeros(m);
        for (p, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (row, v) in phi_column(&self.view, comp, p) {
                if row / m == a {
                    out[row % m] += &(c * &v);
                }
            }
        }
        Ok(out)
    }

    /// The g₀ action on `g₁ ⊗ g_n`: `u·(x ⊗ v) = u·x ⊗ v + x ⊗ u·v`.
    pub fn lifted_action(&self, n: usize, u: &[Scalar]) -> Result<Matrix> {
        let comp = self.comp_or_err(n)?;
        let mut a1 = Matrix::zeros(self.view.dim_v, self.view.dim_v);
        for (c, m) in u.iter().zip(&self.view.act1) {
            a1.axpy(c, m);
        }
        let an = comp.act(u);
        Ok(kron(&a1, &Matrix::identity(comp.dim)).add(&kron(&Matrix::identity(self.view.dim_v), &an)))
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        &a[(i / b.rows(), j / b.cols())] * &b[(i % b.rows(), j % b.cols())]
    })
}

/// `Φ(x_b ⊗ u_c)` for `p = b·m + c`: on `y_a` it is
/// `[[y_a,x_b],u_c] + [x_b,[y_a,u_c]]`, stored at rows `a·m + r`.
fn phi_column(view: &SideView, comp: &GradedComponent, p: usize) -> SparseVec {
    let m = comp.dim;
    let prev = comp.prev_dim();
    let (b, c) = (p / m, p % m);
    let mut acc = Accumulator::new(view.dim_v * m);
    let mut part = Accumulator::new(m);
    for a in 0..view.dim_v {
        for (k, s) in view.yx(a, b).iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            part.add_sparse(s, comp.act0[k].col(c));
        }
        for (r, s) in comp.lower[a].col(c) {
            part.add_sparse(s, comp.raise.col(b * prev + r));
        }
        for (r, v) in part.take() {
            acc.add(a * m + r, &v);
        }
    }
    acc.take()
}

fn add_weights(x: &[Scalar], y: &[Scalar]) -> Weight {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn degree_one(view: &SideView) -> GradedComponent {
    let (n, d) = (view.dim_g0, view.dim_v);
    let lower =
        (0..d).map(|a| SparseMatrix::from_columns(n, (0..d).map(|b| compress(view.yx(a, b))).collect())).collect();
    // [x_b, u_k] = −u_k·x_b
    let raise = SparseMatrix::from_columns(
        d,
        (0..d * n).map(|col| compress(&vector::neg(&view.act1[col % n].col(col / n)))).collect(),
    );
    GradedComponent {
        degree: view.side.sign(),
        dim: d,
        act0: view.act1.iter().map(SparseMatrix::from_dense).collect(),
        lower,
        raise,
        provenance: Vec::new(),
        weights: (0..d).map(|b| view.weight1(b)).collect(),
    }
}

/// Pivot columns of one weight block of Φ and the coordinates of all its
/// columns with respect to them.
struct BlockImage {
    columns: Vec<usize>,
    /// Indices into `columns`.
    pivots: Vec<usize>,
    coords: Vec<Vector>,
    phi: Vec<SparseVec>,
}

fn next_component(view: &SideView, comp: &GradedComponent) -> GradedComponent {
    let d = view.dim_v;
    let m = comp.dim;
    let wt1: Vec<Weight> = (0..d).map(|b| view.weight1(b)).collect();
    // Φ(x_b ⊗ u_c) has weight ω = wt(b) + wt(c); y_a has weight −wt(a), so
    // row (a, r) belongs to block ω exactly when wt(r) + wt(a) = ω.
    let mut col_blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for p in 0..d * m {
        col_blocks.entry(add_weights(&wt1[p / m], &comp.weights[p % m])).or_default().push(p);
    }
    let mut row_of: Vec<usize> = vec![0; d * m];
    let mut row_blocks: BTreeMap<Weight, usize> = BTreeMap::new();
    for a in 0..d {
        for r in 0..m {
            let w = add_weights(&comp.weights[r], &wt1[a]);
            let cnt = row_blocks.entry(w).or_insert(0);
            row_of[a * m + r] = *cnt;
            *cnt += 1;
        }
    }
    let blocks: Vec<(Weight, Vec<usize>)> = col_blocks.into_iter().collect();
    let images: Vec<BlockImage> = par::map_range_weighted(blocks.len(), d * m * m * d, |bi| {
        let (w, columns) = &blocks[bi];
        let nrows = row_blocks.get(w).copied().unwrap_or(0);
        let phi: Vec<SparseVec> = columns.iter().map(|&p| phi_column(view, comp, p)).collect();
        let mut dense = Matrix::zeros(nrows, columns.len());
        for (j, col) in phi.iter().enumerate() {
            for (row, v) in col {
                dense[(row_of[*row], j)] = v.clone();
            }
        }
        let img = dense.image_basis();
        BlockImage { columns: columns.clone(), pivots: img.pivots, coords: img.coords, phi }
    });
    let mut pivots: Vec<(usize, usize, usize)> = images
        .iter()
        .enumerate()
        .flat_map(|(bi, im)| im.pivots.iter().enumerate().map(move |(k, &j)| (im.columns[j], bi, k)))
        .collect();
    pivots.sort_unstable();
    let dim = pivots.len();
    let mut global: Vec<Vec<usize>> = images.iter().map(|im| vec![0; im.pivots.len()]).collect();
    for (g, &(_, bi, k)) in pivots.iter().enumerate() {
        global[bi][k] = g;
    }
    let provenance: Vec<(usize, usize)> = pivots.iter().map(|&(p, _, _)| (p / m, p % m)).collect();
    let mut raise_cols: Vec<SparseVec> = vec![Vec::new(); d * m];
    for (bi, im) in images.iter().enumerate() {
        for (j, &p) in im.columns.iter().enumerate() {
            raise_cols[p] = im.coords[j]
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(k, s)| (global[bi][k], s.clone()))
                .collect();
        }
    }
    let raise = SparseMatrix::from_columns(dim, raise_cols);
    let mut lower_cols: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(dim); d];
    for &(p, bi, k) in &pivots {
        let im = &images[bi];
        let phi = &im.phi[im.pivots[k]];
        debug_assert_eq!(im.columns[im.pivots[k]], p);
        let mut per_a: Vec<SparseVec> = vec![Vec::new(); d];
        for (row, v) in phi {
            per_a[row / m].push((row % m, v.clone()));
        }
        for (a, col) in per_a.into_iter().enumerate() {
            lower_cols[a].push(col);
        }
    }
    let lower = lower_cols.into_iter().map(|cols| SparseMatrix::from_columns(m, cols)).collect();
    let n0 = view.dim_g0;
    let act0 = par::map_range_weighted(n0, n0 * dim * d, |k| {
        let mut acc = Accumulator::new(dim);
        let cols: Vec<SparseVec> = provenance
            .iter()
            .map(|&(b, c)| {
                for b2 in 0..d {
                    let s = &view.act1[k][(b2, b)];
                    if !s.is_zero() {
                        acc.add_sparse(s, raise.col(b2 * m + c));
                    }
                }
                for (c2, s) in comp.act0[k].col(c) {
                    acc.add_sparse(s, raise.col(b * m + c2));
                }
                acc.take()
            })
            .collect();
        SparseMatrix::from_columns(dim, cols)
    });
    let weights = provenance.iter().map(|&(b, c)| add_weights(&wt1[b], &comp.weights[c])).collect();
    GradedComponent { degree: comp.degree + view.side.sign(), dim, act0, lower, raise, provenance, weights }
}

/// Grows one side of g_min up to `max_degree`, stopping at the first zero
/// component. Non-transitive local algebras are refused.
pub fn grow(l: &LocalAlgebra, side: Side, max_degree: usize) -> Result<Tower> {
    let report = transitivity_check(l);
    if !report.transitive {
        return Err(Error::TransitivityRequired(report.reasons));
    }
    Ok(grow_view(SideView::new(l, side), max_degree))
}

/// Grows from an explicit side view.
pub fn grow_view(view: SideView, max_degree: usize) -> Tower {
    let mut components: Vec<GradedComponent> = Vec::new();
    let mut status = GrowthStatus::BudgetExhausted { max_degree };
    for n in 1..=max_degree {
        let comp = match components.last() {
            None => degree_one(&view),
            Some(prev) => next_component(&view, prev),
        };
        let zero = comp.dim == 0;
        components.push(comp);
        if zero {
            status = GrowthStatus::Terminated { at: n };
            break;
        }
    }
    Tower { view, components, status }
}

/// Both sides, checking transitivity once.
pub fn grow_both(l: &LocalAlgebra, max_degree: usize) -> Result<(Tower, Tower)> {
    let report = transitivity_check(l);
    if !report.transitive {
        return Err(Error::TransitivityRequired(report.reasons));
    }
    Ok((
        grow_view(SideView::new(l, Side::Positive), max_degree),
        grow_view(SideView::new(l, Side::Negative), max_degree),
    ))
}
