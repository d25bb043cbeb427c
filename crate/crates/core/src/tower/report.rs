//! Finiteness diagnostics and graded centralizers.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{assemble, grow_both, GrowthStatus, Tower};
use crate::error::{Error, Result};
use crate::exactla::{vector, Matrix, Scalar, Vector};
use crate::liecore::center;
use crate::localg::{transitivity_check, LocalAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterHeuristic {
    pub center_dim: usize,
    /// Number of irreducible summands of V, as supplied by the caller.
    pub components: usize,
    /// `dim Z(g₀) < k` forces g_min to be infinite.
    pub predicts_infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssembledSummary {
    pub dim: usize,
    pub killing_nondegenerate: bool,
    pub center_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Finite {
        dim: usize,
    },
    /// The center-dimension test rules out finiteness.
    Infinite,
    /// Still growing at the degree budget.
    InfiniteOrBeyond {
        max_degree: usize,
    },
    NotTransitive {
        reasons: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub max_degree: usize,
    pub positive_dims: Vec<usize>,
    pub negative_dims: Vec<usize>,
    pub positive_status: Option<GrowthStatus>,
    pub negative_status: Option<GrowthStatus>,
    pub center_heuristic: Option<CenterHeuristic>,
    pub assembled: Option<AssembledSummary>,
    pub verdict: Verdict,
    pub advisory: String,
}

/// Advisory finiteness report. `irreducible_components`, when given, is the
/// caller's count of irreducible summands of a completely reducible V.
pub fn finiteness_report(
    l: &LocalAlgebra,
    max_degree: usize,
    irreducible_components: Option<usize>,
) -> FinitenessReport {
    let center_heuristic = irreducible_components.map(|k| {
        let z = center(&l.triplet().g0).len();
        CenterHeuristic { center_dim: z, components: k, predicts_infinite: z < k }
    });
    let predicts_infinite = center_heuristic.as_ref().is_some_and(|h| h.predicts_infinite);
    let mut report = FinitenessReport {
        max_degree,
        positive_dims: Vec::new(),
        negative_dims: Vec::new(),
        positive_status: None,
        negative_status: None,
        center_heuristic,
        assembled: None,
        verdict: Verdict::InfiniteOrBeyond { max_degree },
        advisory: String::new(),
    };
    let tr = transitivity_check(l);
    let Ok((tp, tn)) = grow_both(l, max_degree) else {
        report.advisory = "not transitive: reduce the triplet first".into();
        report.verdict = Verdict::NotTransitive { reasons: tr.reasons };
        return report;
    };
    report.positive_dims = tp.dims(max_degree);
    report.negative_dims = tn.dims(max_degree);
    report.positive_status = Some(tp.status());
    report.negative_status = Some(tn.status());
    if tp.is_terminated() && tn.is_terminated() {
        match assemble(&tp, &tn, l) {
            Ok(a) => {
                let s = AssembledSummary {
                    dim: a.dim(),
                    killing_nondegenerate: a.killing_nondegenerate(),
                    center_dim: a.center().len(),
                };
                report.advisory = if s.killing_nondegenerate && s.center_dim == 0 {
                    format!("finite, dimension {}, semisimple", s.dim)
                } else {
                    format!("finite, dimension {}, but not semisimple: inconsistent with the local data", s.dim)
                };
                report.verdict = Verdict::Finite { dim: s.dim };
                report.assembled = Some(s);
            }
            Err(e) => {
                report.advisory = format!("terminated but assembly failed: {e}");
            }
        }
    } else if predicts_infinite {
        report.verdict = Verdict::Infinite;
        report.advisory = "infinite: dim Z(g0) is below the number of irreducible components".into();
    } else {
        report.advisory = format!("infinite or > {max_degree}: still growing at the degree budget");
    }
    report
}

/// Bases of homogeneous subspaces, keyed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSubspace {
    pub bases: BTreeMap<i32, Vec<Vector>>,
}

impl GradedSubspace {
    pub fn dim_at(&self, d: i32) -> usize {
        self.bases.get(&d).map_or(0, Vec::len)
    }

    /// `(degree, dim)` in increasing degree.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.bases.iter().map(|(&d, b)| (d, b.len())).collect()
    }
}

fn tower_for<'a>(tp: &'a Tower, tn: &'a Tower, d: i32) -> &'a Tower {
    if d > 0 {
        tp
    } else {
        tn
    }
}

/// Action matrices of g₀'s basis on degree `d`, or `None` past termination.
fn actions(tp: &Tower, tn: &Tower, l: &LocalAlgebra, d: i32) -> Result<Option<Vec<Matrix>>> {
    if d == 0 {
        let g = &l.triplet().g0;
        return Ok(Some((0..g.dim()).map(|k| g.ad(k)).collect()));
    }
    let t = tower_for(tp, tn, d);
    let n = d.unsigned_abs() as usize;
    match t.component(n) {
        Some(c) => Ok(Some(c.act0.iter().map(|a| a.to_dense()).collect())),
        None if t.is_terminated() => Ok(None),
        None => Err(Error::TowerTooShort { needed: n, have: t.grown_degree() }),
    }
}

fn combine(mats: &[Matrix], u: &[Scalar], size: usize) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for (c, a) in u.iter().zip(mats) {
        if !c.is_zero() {
            m.axpy(c, a);
        }
    }
    m
}

/// Centralizer of the subalgebra `sub ⊆ g₀` in each degree `|d| ≤ max_degree`.
pub fn centralizer_graded(
    tp: &Tower,
    tn: &Tower,
    l: &LocalAlgebra,
    sub: &[Vector],
    max_degree: usize,
) -> Result<GradedSubspace> {
    let g = &l.triplet().g0;
    if !g.is_subalgebra(sub) {
        return Err(Error::Refused("the given subspace of g0 is not closed under the bracket".into()));
    }
    let mut out = GradedSubspace::default();
    let top = max_degree as i32;
    for d in -top..=top {
        let Some(acts) = actions(tp, tn, l, d)? else {
            out.bases.insert(d, Vec::new());
            continue;
        };
        let size = if d == 0 { g.dim() } else { tower_for(tp, tn, d).dim(d.unsigned_abs() as usize).unwrap_or(0) };
        let blocks: Vec<Matrix> = sub.iter().map(|s| combine(&acts, s, size)).collect();
        let basis = if blocks.is_empty() || size == 0 {
            (0..size).map(|i| vector::unit(size, i)).collect()
        } else {
            Matrix::vstack(&blocks.iter().collect::<Vec<_>>()).kernel_basis()
        };
        out.bases.insert(d, basis);
    }
    Ok(out)
}

/// `{u ∈ g₀ : [u, e] = 0}` for every `e` in the graded subspace.
pub fn centralizer_in_g0(tp: &Tower, tn: &Tower, l: &LocalAlgebra, elems: &GradedSubspace) -> Result<Vec<Vector>> {
    let n = l.dim_g0();
    let mut rows: Vec<Vector> = Vec::new();
    for (&d, basis) in &elems.bases {
        if basis.is_empty() {
            continue;
        }
        let Some(acts) = actions(tp, tn, l, d)? else {
            continue;
        };
        for e in basis {
            // column k is [e_k, e]
            let cols: Vec<Vector> = acts.iter().map(|a| a.mul_vec(e)).collect();
            rows.extend(Matrix::from_columns(e.len(), &cols).to_rows());
        }
    }
    if rows.is_empty() {
        return Ok((0..n).map(|i| vector::unit(n, i)).collect());
    }
    Ok(Matrix::from_rows(rows).kernel_basis())
}
