//! Batch jobs: one command over one JSON job, producing a report.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classification::{
    apply_automorphism, build_c, build_sigma, canonicalize, validate_chi, ChiFunction,
};
use crate::conformal::{cend_basis, check_axioms, diff_product, AxiomScope, ClosedForm, SubSpan};
use crate::error::{Error, Result};
use crate::hopf::{check_comodule_axioms, check_hopf_axioms};
use crate::io::JobSpec;
use crate::linalg::SparseVec;
use crate::operad::{associativity_sides, compose, compose_partitions, pair_index, pair_of_index, BinaryTree, Partition};
use crate::scalar::{Field, Scalar};
use crate::weyl::{locality_bound, weyl_algebra_relation, weyl_nprod, WeylElem};
use crate::workbench::{
    cyclic_submodule, evaluate, fourier, fourier_inv, ideal_shape, is_essential, is_irreducible, is_simple,
    left_ideal_closure, op_product, phi, phi_inv, right_ideal_closure, wn_span, EndOp, Side, WnMode,
};

pub const COMMANDS: &[&str] = &[
    "axioms",
    "hopf",
    "phi",
    "wn",
    "irreducible",
    "ideal",
    "simple",
    "classify",
    "weyl",
    "operad",
];

/// Fixed anchor string for every check name.
pub const ANCHORS: &[(&str, &str)] = &[
    ("conformal_axioms", "(f a) o_g b = f(g^-1) (a o_g b); a o_g (f b) = L_g f (a o_g b); a o_g (b o_h c) = (a o_g b) o_hg c"),
    ("hopf_axioms", "(D x id) D = (id x D) D; (e x id) D = id; m (S x id) D = 1 e"),
    ("comodule_axioms", "(D x id) D_A = (id x D_A) D_A; (e x id) D_A = id"),
    ("phi_roundtrip", "Phi(Phi^-1(x)) = x"),
    ("phi_homomorphism", "(a o_g b)(z) = a(g) b(z g^-1)"),
    ("evaluation_product", "a(g) b(z) = (a o_g b)(z g)"),
    ("fourier_roundtrip", "F(T_h x T_w x m) = T_h x T_hw x m"),
    ("wn_dimension", "W_n = span{a(g)} = End M_n"),
    ("wn_single_vector", "W_n u = M_n for every u != 0"),
    ("subalgebra_closed", "C o_g C in C, H C in C"),
    ("irreducibility", "irreducible iff (1 x H x E) C = Cend_n"),
    ("ideal_shape", "B = H x B0 (right), B = F(H x B0) (left)"),
    ("essentiality", "B0 essential iff ann_r(B0) = 0 iff B0 = M_n(A)"),
    ("simplicity", "Cend_n^{G,V} simple iff G acts transitively on V"),
    ("chi_valid", "chi(g,c) chi(h,g^-1 c) / chi(gh,c) independent of c in G_k"),
    ("canonical_form", "sigma(C) = C_{G1,chi}"),
    ("weyl_products", "T^(r) f o_n T^(s) h = sum_t (-1)^r C(n,r) C(n-r,t) T^(s-t) f d^(n-r-t) h"),
    ("weyl_translation", "(Ta) o_n b = -n a o_(n-1) b; T(a o_n b) - a o_n Tb = (Ta) o_n b"),
    ("weyl_locality", "x o_n y = 0 for n large"),
    ("weyl_relation", "dx - xd = 1"),
    ("pair_index", "(i,j)^pi = m_1 + ... + m_(i-1) + j"),
    ("bracketings", "x1(x2x3) = Comp^(1,2)(x1x2, x1, x1x2); (x1x2)x3 = Comp^(2,1)(x1x2, x1x2, x1)"),
    ("operad_units", "Comp(u; 1, ..., 1) = u = Comp(1; u)"),
    ("operad_associativity", "Comp^tau(Comp^pi(u; v), w) = Comp^(tau pi)(u; Comp^(tau pi_i)(v_i; w))"),
];

pub fn anchor(name: &str) -> &'static str {
    ANCHORS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| *a)
        .unwrap_or_else(|| panic!("no anchor for check {name}"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub result: Value,
}

impl Report {
    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(s, "{} over {}: {status}", self.command, self.field).unwrap();
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(s, "  [{mark}] {}  ({})", c.name, c.anchor).unwrap();
            if let Some(w) = &c.witness {
                writeln!(s, "         witness: {w}").unwrap();
            }
        }
        s
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn new() -> Self {
        Builder { checks: Vec::new() }
    }

    fn push(&mut self, name: &str, passed: bool, witness: Option<Value>) {
        self.checks.push(Check {
            name: name.into(),
            anchor: anchor(name).into(),
            passed,
            witness,
        });
    }

    /// Records a mathematical failure as a failed check; input errors
    /// propagate.
    fn guard<T>(&mut self, name: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if !e.is_input() => {
                self.push(name, false, Some(json!(e.to_string())));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Field from `CENDLAB_FIELD` when set, else from the job.
pub fn resolve_field(job: &JobSpec, env: Option<&str>) -> Result<Field> {
    match env {
        Some(s) if !s.trim().is_empty() => s.parse(),
        _ => job.field(),
    }
}

pub fn run(command: &str, job: &JobSpec, field: Field) -> Result<Report> {
    if let Some(c) = &job.command {
        if c != command {
            return Err(Error::InvalidInput(format!("job is for {c:?}, not {command:?}")));
        }
    }
    job.check_field(field)?;
    let mut b = Builder::new();
    let result = match command {
        "axioms" => run_axioms(job, &mut b)?,
        "hopf" => run_hopf(job, &mut b)?,
        "phi" => run_phi(job, &mut b)?,
        "wn" => run_wn(job, &mut b)?,
        "irreducible" => run_irreducible(job, &mut b)?,
        "ideal" => run_ideal(job, &mut b)?,
        "simple" => run_simple(job, &mut b)?,
        "classify" => run_classify(job, &mut b)?,
        "weyl" => run_weyl(job, &mut b)?,
        "operad" => run_operad(job, &mut b)?,
        other => return Err(Error::InvalidInput(format!("unknown command {other:?}"))),
    };
    Ok(Report {
        command: command.into(),
        field: field.to_string(),
        passed: b.checks.iter().all(|c| c.passed),
        checks: b.checks,
        result,
    })
}

fn rng(job: &JobSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(job.seed.unwrap_or(0))
}

fn run_axioms(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let amb = job.ambient()?;
    let sample = cend_basis(&amb);
    let scope = match job.samples {
        None => AxiomScope::Exhaustive,
        Some(k) => {
            let mut r = rng(job);
            let (m, o) = (sample.len(), amb.order());
            AxiomScope::Listed(
                (0..k)
                    .map(|_| (r.gen_range(0..m), r.gen_range(0..m), r.gen_range(0..m), r.gen_range(0..o), r.gen_range(0..o), r.gen_range(0..o)))
                    .collect(),
            )
        }
    };
    let report = check_axioms(&sample, &ClosedForm, &scope)?;
    b.push("conformal_axioms", report.passed(), report.witness.as_ref().map(|w| json!(w)));
    Ok(json!(report))
}

fn run_hopf(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let amb = job.ambient()?;
    let h = check_hopf_axioms(amb.group());
    b.push("hopf_axioms", h.is_none(), h.as_ref().map(|w| json!(w)));
    let c = check_comodule_axioms(amb.gset());
    b.push("comodule_axioms", c.is_none(), c.as_ref().map(|w| json!(w)));
    Ok(json!({"group_order": amb.order(), "points": amb.points()}))
}

fn run_phi(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let amb = job.ambient()?;
    let grp = Arc::clone(amb.group());
    let basis = cend_basis(&amb);
    let mut roundtrip = None;
    let mut twist = None;
    for (k, x) in basis.iter().enumerate() {
        if roundtrip.is_none() && phi(&phi_inv(x))? != *x {
            roundtrip = Some(json!({"basis": k}));
        }
        if twist.is_none() && fourier_inv(&fourier(x)) != *x {
            twist = Some(json!({"basis": k}));
        }
    }
    b.push("phi_roundtrip", roundtrip.is_none(), roundtrip);
    b.push("fourier_roundtrip", twist.is_none(), twist);
    let evals: Vec<Vec<EndOp>> = basis.iter().map(|x| grp.elements().map(|z| evaluate(x, z)).collect()).collect();
    let mut homo = None;
    let mut evprod = None;
    let mut count = 0usize;
    'outer: for (ia, a) in basis.iter().enumerate() {
        for (ib, bb) in basis.iter().enumerate() {
            for g in grp.elements() {
                let p = diff_product(a, bb, g)?;
                let lhs = phi_inv(&p);
                let rhs = op_product(&phi_inv(a), &phi_inv(bb), g)?;
                if homo.is_none() && lhs != rhs {
                    homo = Some(json!({"a": ia, "b": ib, "g": g}));
                }
                for z in grp.elements() {
                    count += 1;
                    if evals[ia][g].compose(&evals[ib][z]) != lhs.at(grp.mul(z, g)).clone() {
                        evprod = Some(json!({"a": ia, "b": ib, "g": g, "z": z}));
                        break 'outer;
                    }
                }
            }
        }
    }
    b.push("phi_homomorphism", homo.is_none(), homo);
    b.push("evaluation_product", evprod.is_none(), evprod);
    Ok(json!({"basis_size": basis.len(), "matrix_identities": count}))
}

fn target_span(job: &JobSpec, b: &mut Builder) -> Result<Option<SubSpan>> {
    let amb = job.ambient()?;
    if job.generators.is_none() {
        return Ok(Some(SubSpan::full(&amb)));
    }
    let gens = job.generators(&amb)?;
    let span = SubSpan::generated_subalgebra(&amb, &gens);
    b.guard("subalgebra_closed", span)
}

fn run_wn(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let Some(c) = target_span(job, b)? else {
        return Ok(Value::Null);
    };
    let w = wn_span(&c, WnMode::Checked)?;
    let size = w.size;
    let full = size * size;
    let mut result = json!({"dimension": w.dim(), "full_dimension": full, "subalgebra_dimension": c.dim()});
    if c.is_full() {
        b.push("wn_dimension", w.is_full(), (!w.is_full()).then(|| json!({"dimension": w.dim()})));
        let ops = w.operators();
        let mut bad = None;
        for k in 0..size {
            if !cyclic_submodule(size, &SparseVec::unit(k), &ops)?.is_full() {
                bad = Some(json!({"vector": k}));
                break;
            }
        }
        b.push("wn_single_vector", bad.is_none(), bad);
    }
    result["full"] = json!(w.is_full());
    Ok(result)
}

fn run_irreducible(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let Some(c) = target_span(job, b)? else {
        return Ok(Value::Null);
    };
    let Some(v) = b.guard("irreducibility", is_irreducible(&c))? else {
        return Ok(Value::Null);
    };
    b.push("irreducibility", true, None);
    Ok(json!({"subalgebra_dimension": c.dim(), "decision": v}))
}

fn run_ideal(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let amb = job.ambient()?;
    let side = job.side.unwrap_or(Side::Right);
    let gens = job.generators(&amb)?;
    let span = if job.closure.unwrap_or(true) {
        match side {
            Side::Left => left_ideal_closure(&amb, &gens)?,
            Side::Right => right_ideal_closure(&amb, &gens)?,
        }
    } else {
        SubSpan::span(&amb, &gens)?
    };
    let mut result = json!({"side": side, "dimension": span.dim()});
    let Some(b0) = b.guard("ideal_shape", ideal_shape(&span, side))? else {
        return Ok(result);
    };
    b.push("ideal_shape", true, None);
    result["b0_dimension"] = json!(b0.dim());
    result["b0_basis"] = json!(b0.rows_sorted().iter().map(|r| r.entries().to_vec()).collect::<Vec<_>>());
    if side == Side::Left {
        if let Some(e) = b.guard("essentiality", is_essential(&amb, &b0))? {
            b.push("essentiality", true, None);
            result["essentiality"] = json!(e);
        }
    }
    Ok(result)
}

fn run_simple(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let amb = job.ambient()?;
    let Some(s) = b.guard("simplicity", is_simple(&amb))? else {
        return Ok(Value::Null);
    };
    let transitive = amb.gset().is_transitive();
    let agree = s.is_simple() == transitive;
    b.push("simplicity", agree, (!agree).then(|| json!({"transitive": transitive})));
    Ok(json!({"transitive": transitive, "orbits": amb.gset().orbits(), "decision": s}))
}

fn run_classify(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let amb = job.ambient()?;
    let grp = Arc::clone(amb.group());
    let c = match (&job.chi, &job.subgroup) {
        (Some(chi), sub) => {
            let g1 = sub.clone().unwrap_or_else(|| grp.elements().collect());
            if let Some(w) = validate_chi(&grp, &g1, chi)? {
                b.push("chi_valid", false, Some(json!(w)));
                return Ok(Value::Null);
            }
            b.push("chi_valid", true, None);
            build_c(&grp, &g1, chi, amb.n())?
        }
        (None, Some(g1)) => build_c(&grp, g1, &ChiFunction::trivial(grp.order()), amb.n())?,
        (None, None) => match target_span(job, b)? {
            Some(c) => c,
            None => return Ok(Value::Null),
        },
    };
    let c = match &job.twist {
        Some(u) => apply_automorphism(&build_sigma(&amb, u.clone())?, &c)?,
        None => c,
    };
    let Some(canon) = b.guard("canonical_form", canonicalize(&c))? else {
        return Ok(Value::Null);
    };
    b.push("canonical_form", true, None);
    Ok(json!(canon.report()))
}

fn weyl_monomials(deg: usize) -> Vec<WeylElem> {
    (0..=deg).flat_map(|r| (0..=deg).map(move |s| WeylElem::monomial(r, s))).collect()
}

fn run_weyl(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let spec = job.weyl.clone().unwrap_or_default();
    let v = WeylElem::v();
    let mut bad = Vec::new();
    if weyl_nprod(&v, &v, 0) != WeylElem::monomial(0, 2) {
        bad.push(0);
    }
    if weyl_nprod(&v, &v, 1) != v {
        bad.push(1);
    }
    bad.extend((2..6).filter(|&n| !weyl_nprod(&v, &v, n).is_zero()));
    b.push("weyl_products", bad.is_empty(), (!bad.is_empty()).then(|| json!({"n": bad})));
    let deg = spec.degree.unwrap_or(3);
    let mons = weyl_monomials(deg);
    let mut trans = None;
    let mut local = None;
    'outer: for (ix, x) in mons.iter().enumerate() {
        for (iy, y) in mons.iter().enumerate() {
            let lb = locality_bound(x, y);
            if local.is_none() && (lb..lb + 3).any(|n| !weyl_nprod(x, y, n).is_zero()) {
                local = Some(json!({"x": ix, "y": iy}));
            }
            let tx = x.apply_t();
            for n in 0..=lb + 1 {
                let lhs = weyl_nprod(&tx, y, n);
                let first = if n == 0 {
                    lhs.is_zero()
                } else {
                    lhs == weyl_nprod(x, y, n - 1).scale(&Scalar::from_i64(-(n as i64)))
                };
                let second = weyl_nprod(x, y, n)
                    .apply_t()
                    .add(&weyl_nprod(x, &y.apply_t(), n).scale(&Scalar::from_i64(-1)))
                    == lhs;
                if !first || !second {
                    trans = Some(json!({"x": x, "y": y, "n": n}));
                    break 'outer;
                }
            }
        }
    }
    b.push("weyl_translation", trans.is_none(), trans);
    b.push("weyl_locality", local.is_none(), local);
    let rel = weyl_algebra_relation(spec.bound.unwrap_or(10))?;
    b.push("weyl_relation", rel.passed(), (!rel.passed()).then(|| json!({"degrees": rel.failures})));
    let mut result = json!({"relation": rel});
    if let (Some(x), Some(y)) = (&spec.x, &spec.y) {
        let n = spec.n.unwrap_or(0);
        result["product"] = json!({"n": n, "value": weyl_nprod(x, y, n)});
    }
    Ok(result)
}

fn random_tree(r: &mut ChaCha8Rng, leaves: usize) -> BinaryTree {
    if leaves == 1 {
        return BinaryTree::identity();
    }
    let k = r.gen_range(1..leaves);
    BinaryTree::node(random_tree(r, k), random_tree(r, leaves - k))
}

/// Random composition grid: `u` with `n` leaves, `v_i`, and `w_j`, with
/// total leaf count at most `max_total`.
pub fn random_composition(r: &mut ChaCha8Rng, max_total: usize) -> (BinaryTree, Vec<BinaryTree>, Vec<BinaryTree>) {
    let p = r.gen_range(1..=max_total);
    let tau: Vec<usize> = random_parts(r, p);
    let m = tau.len();
    let pi: Vec<usize> = random_parts(r, m);
    let u = random_tree(r, pi.len());
    let vs = pi.iter().map(|&k| random_tree(r, k)).collect();
    let ws = tau.iter().map(|&k| random_tree(r, k)).collect();
    (u, vs, ws)
}

fn random_parts(r: &mut ChaCha8Rng, total: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut rest = total;
    while rest > 0 {
        let k = r.gen_range(1..=rest);
        parts.push(k);
        rest -= k;
    }
    parts
}

fn run_operad(job: &JobSpec, b: &mut Builder) -> Result<Value> {
    let spec = job.operad.clone().unwrap_or_default();
    let max_total = spec.max_total.unwrap_or(8);
    let mut bij = None;
    'outer: for m in 1..=max_total {
        for n in 1..=m {
            for pi in Partition::all(m, n) {
                for k in 1..=m {
                    let (i, j) = pair_of_index(&pi, k)?;
                    if pair_index(&pi, i, j)? != k {
                        bij = Some(json!({"partition": pi, "index": k}));
                        break 'outer;
                    }
                }
            }
        }
    }
    b.push("pair_index", bij.is_none(), bij);
    let t = |s: &str| s.parse::<BinaryTree>().expect("literal tree");
    let ex1 = compose(&t("x1x2"), &[t("x1"), t("x1x2")])?;
    let ex2 = compose(&t("x1x2"), &[t("x1x2"), t("x1")])?;
    let ok = ex1 == t("x1(x2x3)") && ex2 == t("(x1x2)x3");
    b.push("bracketings", ok, (!ok).then(|| json!([ex1, ex2])));
    let mut r = rng(job);
    let mut units = None;
    let mut assoc = None;
    for _ in 0..spec.samples.unwrap_or(200) {
        let (u, vs, ws) = random_composition(&mut r, max_total);
        let ids = vec![BinaryTree::identity(); u.leaves()];
        if units.is_none() && (compose(&u, &ids)? != u || compose(&BinaryTree::identity(), std::slice::from_ref(&u))? != u) {
            units = Some(json!(u));
        }
        let (lhs, rhs) = associativity_sides(&u, &vs, &ws)?;
        let tau = Partition::new(ws.iter().map(BinaryTree::leaves).collect())?;
        let pi = Partition::new(vs.iter().map(BinaryTree::leaves).collect())?;
        let (tp, _) = compose_partitions(&tau, &pi)?;
        if assoc.is_none() && (lhs != rhs || tp.total() != tau.total() || tp.len() != pi.len()) {
            assoc = Some(json!({"u": u, "v": vs, "w": ws}));
        }
    }
    b.push("operad_units", units.is_none(), units);
    b.push("operad_associativity", assoc.is_none(), assoc);
    let mut result = json!({"examples": [ex1, ex2]});
    if let (Some(u), Some(vs)) = (&spec.tree, &spec.inputs) {
        result["composition"] = json!(compose(u, vs)?);
    }
    Ok(result)
}
