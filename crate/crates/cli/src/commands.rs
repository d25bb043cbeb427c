//! One function per subcommand. Each returns the `result` object of the report.

use std::collections::BTreeMap;

use glaw_core::exactla::{Matrix, Scalar, Vector};
use glaw_core::generators::{self, FormChoice, MonomialBasis};
use glaw_core::liecore::{validate, FundamentalTriplet};
use glaw_core::localg::{build_local, reduce_triplet, LocalAlgebra};
use glaw_core::poly::Polynomial;
use glaw_core::sl2;
use glaw_core::tower::{self, GradedSubspace, Side, Tower};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::Failure;
use crate::spec::{sparse_structure, TripletSpec};

pub type Outcome = Result<Value, Failure>;

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("result serializes")
}

pub fn parse_scalar(s: &str, what: &str) -> Result<Scalar, Failure> {
    s.parse().map_err(|e| Failure::parse(format!("{what}: {e}")))
}

/// Comma-separated rationals, optionally in brackets.
pub fn parse_vector(s: &str, what: &str) -> Result<Vector, Failure> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| parse_scalar(t.trim().trim_matches('"'), what)).collect()
}

fn local(t: &FundamentalTriplet) -> Result<LocalAlgebra, Failure> {
    Ok(build_local(t)?)
}

pub fn validate_cmd(t: &FundamentalTriplet) -> Outcome {
    let report = validate(t)?;
    let violations: Vec<Value> =
        report.violations.iter().map(|v| json!({"invariant": v.kind(), "message": v.to_string()})).collect();
    let result = json!({"valid": violations.is_empty(), "violations": violations});
    match report.violations.first() {
        None => Ok(result),
        Some(v) => Err(Failure::invariant(format!("{} invariant violated: {v}", v.kind()), result)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SideArg {
    Pos,
    Neg,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Pos => vec![Side::Positive],
            SideArg::Neg => vec![Side::Negative],
            SideArg::Both => vec![Side::Positive, Side::Negative],
        }
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Positive => "positive",
        Side::Negative => "negative",
    }
}

fn tower_summary(t: &Tower) -> Value {
    let dims: Vec<usize> = t.components().iter().map(|c| c.dim).collect();
    json!({"dims": dims, "status": to_value(&t.status())})
}

fn not_terminated_note(towers: &[&Tower], n: usize) -> String {
    if towers.iter().all(|t| t.is_terminated()) {
        "terminated".into()
    } else {
        format!("not terminated within {n} degrees")
    }
}

pub fn grow_cmd(t: &FundamentalTriplet, n: usize, side: SideArg) -> Outcome {
    let l = local(t)?;
    let mut result = serde_json::Map::new();
    result.insert("max_degree".into(), json!(n));
    let towers: Vec<Tower> = match side {
        SideArg::Both => {
            let (tp, tn) = tower::grow_both(&l, n)?;
            vec![tp, tn]
        }
        _ => vec![tower::grow(&l, side.sides()[0], n)?],
    };
    for tw in &towers {
        result.insert(side_name(tw.side()).into(), tower_summary(tw));
    }
    if let [tp, tn] = towers.as_slice() {
        let top = tp.grown_degree().min(tn.grown_degree());
        let table = tower::pairing_table(tp, tn, top)?;
        let ranks: Vec<usize> = table.iter().map(Matrix::rank).collect();
        result.insert("pairing_ranks".into(), json!(ranks));
    }
    let refs: Vec<&Tower> = towers.iter().collect();
    result.insert("terminated".into(), json!(refs.iter().all(|t| t.is_terminated())));
    result.insert("note".into(), json!(not_terminated_note(&refs, n)));
    Ok(Value::Object(result))
}

pub fn dims_cmd(t: &FundamentalTriplet, n: usize, components: Option<usize>) -> Outcome {
    let l = local(t)?;
    Ok(to_value(&tower::finiteness_report(&l, n, components)))
}

pub fn pn_cmd(t: &FundamentalTriplet, n: usize, side: SideArg) -> Outcome {
    let l = local(t)?;
    let checks = side.sides().into_iter().map(|s| tower::pn_check(&l, s, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(
        json!({"n": n, "expansion_terms": checks[0].terms, "checks": to_value(&checks), "holds": checks.iter().all(|c| c.holds)}),
    )
}

pub struct Sl2Args<'a> {
    pub x: Option<&'a str>,
    pub poly: Option<&'a str>,
    pub w_dim: Option<usize>,
    pub invariant: Option<&'a str>,
    pub point: Option<&'a str>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Coordinates in V = ℂ^p[W] of a polynomial on W.
fn poly_on_w(text: &str, dim_v: usize, w_dim: Option<usize>) -> Result<Vector, Failure> {
    let p: Polynomial = text.parse().map_err(|e| Failure::parse(format!("--poly: {e}")))?;
    let deg = p.homogeneous_degree().ok_or_else(|| Failure::parse("--poly must be homogeneous"))?;
    let n = match w_dim {
        Some(n) => n,
        None => (p.nvars().max(1)..=dim_v.max(1))
            .find(|&n| binomial(n + deg as usize - 1, deg as usize) == dim_v)
            .ok_or_else(|| Failure::parse(format!("no dim W makes degree-{deg} polynomials {dim_v}-dimensional")))?,
    };
    let basis = MonomialBasis::new(n, deg);
    if basis.len() != dim_v {
        return Err(Failure::parse(format!("C^{deg}[C^{n}] has dimension {}, V has {dim_v}", basis.len())));
    }
    let p = p.with_nvars(n).map_err(|e| Failure::parse(format!("--poly: {e}")))?;
    Ok(basis.to_vector(&p)?)
}

pub fn sl2_cmd(t: &FundamentalTriplet, args: &Sl2Args) -> Outcome {
    let h = sl2::assumption_h_check(t);
    let mut partial = json!({"assumption_h": to_value(&h)});
    if let (Some(r), Some(pt)) = (args.invariant, args.point) {
        let r = Polynomial::parse(r, t.dim_v()).map_err(|e| Failure::parse(format!("--invariant: {e}")))?;
        let x = parse_vector(pt, "--point")?;
        let check = sl2::relative_invariant_check(t, &r)?;
        partial["relative_invariant"] = to_value(&check);
        let cert = sl2::gradlog_triple(t, &r, &x).map_err(|e| with_partial(e.into(), &partial))?;
        partial["certificate"] = to_value(&cert);
        partial["exact"] = json!(cert.is_exact());
        return Ok(partial);
    }
    let x = match (args.x, args.poly) {
        (Some(v), None) => parse_vector(v, "--x")?,
        (None, Some(p)) => poly_on_w(p, t.dim_v(), args.w_dim)?,
        _ => return Err(Failure::parse("give exactly one of --x, --poly, or --invariant with --point")),
    };
    if x.len() != t.dim_v() {
        return Err(Failure::parse(format!("X has length {}, V has dimension {}", x.len(), t.dim_v())));
    }
    partial["x"] = to_value(&x);
    partial["property_p"] = json!(sl2::property_p_test(t, &x));
    let cert = sl2::complete_triple(t, &x).map_err(|e| with_partial(e.into(), &partial))?;
    partial["certificate"] = to_value(&cert);
    partial["exact"] = json!(cert.is_exact());
    Ok(partial)
}

fn with_partial(mut f: Failure, partial: &Value) -> Failure {
    f.result = partial.clone();
    f
}

fn subalgebra(t: &FundamentalTriplet, sub: &str) -> Result<Vec<Vector>, Failure> {
    let s = sub.trim();
    if let Some(n) = s.strip_prefix("o(").and_then(|r| r.strip_suffix(')')) {
        let n: usize = n.trim().parse().map_err(|_| Failure::parse(format!("bad --sub {s}")))?;
        if n * n != t.dim_g0() {
            return Err(Failure::parse(format!("o({n}) needs g0 = gl({n}) of dimension {}", n * n)));
        }
        return Ok(generators::orthogonal_subalgebra(n));
    }
    let vs: Vec<Vec<Scalar>> = serde_json::from_str(s)
        .map_err(|e| Failure::parse(format!("--sub must be o(n) or a JSON list of vectors: {e}")))?;
    if vs.iter().any(|v| v.len() != t.dim_g0()) {
        return Err(Failure::parse(format!("--sub vectors must have length {}", t.dim_g0())));
    }
    Ok(vs)
}

fn graded_dims(sub: &GradedSubspace, tp: &Tower, tn: &Tower, g0: usize) -> Vec<Value> {
    sub.bases
        .iter()
        .filter_map(|(&d, b)| {
            let ambient = if d == 0 {
                g0
            } else if d > 0 {
                tp.dim(d as usize)?
            } else {
                tn.dim(d.unsigned_abs() as usize)?
            };
            (ambient > 0).then(|| json!({"degree": d, "dim": b.len(), "ambient_dim": ambient}))
        })
        .collect()
}

pub fn centralizer_cmd(t: &FundamentalTriplet, sub: &str, n: usize) -> Outcome {
    let l = local(t)?;
    let sub = subalgebra(t, sub)?;
    let (tp, tn) = tower::grow_both(&l, n)?;
    let c = tower::centralizer_graded(&tp, &tn, &l, &sub, n)?;
    let double = tower::centralizer_in_g0(&tp, &tn, &l, &c)?;
    Ok(json!({
        "subalgebra_dim": sub.len(),
        "max_degree": n,
        "graded_dims": graded_dims(&c, &tp, &tn, l.dim_g0()),
        "double_centralizer_g0_dim": double.len(),
    }))
}

fn assembled_summary(a: &tower::AssembledAlgebra) -> Value {
    let dims: Vec<Value> = a.graded_dims().iter().map(|(d, n)| json!({"degree": d, "dim": n})).collect();
    json!({
        "dim": a.dim(),
        "graded_dims": dims,
        "center_dim": a.center().len(),
        "killing_nondegenerate": a.killing_nondegenerate(),
        "grading_respected": a.grading_violation().is_none(),
    })
}

pub fn assemble_cmd(t: &FundamentalTriplet, n: usize, structure: bool) -> Outcome {
    let l = local(t)?;
    let (tp, tn) = tower::grow_both(&l, n)?;
    let a = tower::assemble(&tp, &tn, &l)?;
    let mut out = assembled_summary(&a);
    if structure {
        out["degrees"] = json!(a.degrees);
        out["structure_constants"] = to_value(&sparse_structure(&a.algebra));
    }
    Ok(out)
}

pub fn reduce_cmd(t: &FundamentalTriplet, assert_cr: bool, n: usize) -> Outcome {
    let red = reduce_triplet(t, assert_cr)?;
    let mut out = json!({
        "v0_dim": red.v0.len(),
        "v1_dim": red.v1.len(),
        "g0k_dim": red.g0k.len(),
        "g0f_dim": red.g0f.len(),
        "transitive_part": to_value(&TripletSpec::from_triplet("transitive part", &red.transitive_part)),
    });
    match tower::assemble_reduced(&red, &t.g0, n) {
        Ok(a) => out["assembled"] = assembled_summary(&a),
        Err(e) => out["assembled_error"] = json!(e.to_string()),
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormArg {
    Trace,
    SlShifted,
    G2,
}

pub fn gen_sp(n: usize, p: u32, lambda: &str, form: FormArg) -> Result<TripletSpec, Failure> {
    let lambda = parse_scalar(lambda, "--lambda")?;
    let (choice, tag) = match form {
        FormArg::Trace => (FormChoice::Trace, "trace"),
        FormArg::SlShifted => (FormChoice::SlShifted, "sl-shifted"),
        FormArg::G2 => (FormChoice::G2, "g2"),
    };
    let t = generators::gen_symplectic(n, p, &lambda, &choice)?;
    Ok(TripletSpec::from_triplet(&format!("sp^{p}(C^{n}, {tag}, {lambda})"), &t))
}

pub fn gen_glblock(n: usize, l1: &str, l2: &str) -> Result<TripletSpec, Failure> {
    let (a, b) = (parse_scalar(l1, "--lambda1")?, parse_scalar(l2, "--lambda2")?);
    let t = generators::gen_glblock(n, &a, &b)?;
    Ok(TripletSpec::from_triplet(&format!("glblock({n}, {a}, {b})"), &t))
}

pub fn gen_gl(n: usize) -> TripletSpec {
    TripletSpec::from_triplet(&format!("gl({n}) standard"), &generators::gl_standard(n))
}

pub fn gen_cartan(name: Option<&str>, matrix: Option<&str>, symmetrizer: Option<&str>) -> Result<TripletSpec, Failure> {
    let (a, d, label) = match (name, matrix) {
        (Some(nm), None) => {
            let (a, d) =
                generators::cartan_matrix(nm).ok_or_else(|| Failure::parse(format!("unknown Cartan type {nm}")))?;
            (a, d, nm.to_ascii_uppercase())
        }
        (None, Some(m)) => {
            let rows: Vec<Vec<Scalar>> =
                serde_json::from_str(m).map_err(|e| Failure::parse(format!("--matrix: {e}")))?;
            let k = rows.len();
            if k == 0 || rows.iter().any(|r| r.len() != k) {
                return Err(Failure::parse("--matrix must be a nonempty square matrix"));
            }
            let d = match symmetrizer {
                Some(s) => parse_vector(s, "--symmetrizer")?,
                None => vec![Scalar::one(); k],
            };
            (Matrix::from_rows(rows), d, "custom".to_string())
        }
        _ => return Err(Failure::parse("give exactly one of --name and --matrix")),
    };
    let t = generators::gen_principal(&a, &d)?;
    Ok(TripletSpec::from_triplet(&format!("principal {label}"), &t))
}

pub fn gen_trivial_summand(spec: &TripletSpec, t: &FundamentalTriplet, k: usize) -> TripletSpec {
    TripletSpec::from_triplet(&format!("{} + trivial^{k}", spec.name), &generators::gen_with_trivial_summand(t, k))
}

/// Arguments echoed into reports, keyed by flag name.
pub fn echo<const N: usize>(pairs: [(&str, Option<String>); N]) -> BTreeMap<String, String> {
    pairs.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))).collect()
}
