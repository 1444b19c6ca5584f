//! The operator algebra `W_n`, enrichment by multiplication operators, and
//! the irreducibility decision.

use serde::Serialize;

use super::operators::{compose_vec, evaluate, gamma_op, EndOp};
use crate::conformal::{product_vec, Ambient, SubSpan};
use crate::error::{Error, Result};
use crate::hopf::AElem;
use crate::linalg::{nullspace, span_closure, BinaryStep, SparseVec, SubspaceBasis, UnaryStep};
use crate::scalar::Scalar;

/// Whether `wn_span` first certifies that its input is a subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnMode {
    Checked,
    /// Treat the span as raw generators; the result is still closed under
    /// composition.
    Raw,
}

/// Span of operators inside `End M_n`, vectors indexed row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpan {
    pub size: usize,
    pub basis: SubspaceBasis,
    pub raw: bool,
}

impl OperatorSpan {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_full(&self) -> bool {
        self.basis.is_full()
    }

    pub fn operators(&self) -> Vec<EndOp> {
        self.basis
            .rows()
            .map(|r| EndOp::from_vec(self.size, r.clone()))
            .collect()
    }

    pub fn contains(&self, op: &EndOp) -> bool {
        self.basis.contains(op.as_vec())
    }
}

/// All evaluations `c(z)` of a spanning set of `C`.
pub fn evaluations(c: &SubSpan) -> Vec<EndOp> {
    let grp = c.ambient().group();
    let mut out = Vec::new();
    for x in c.elements() {
        for z in grp.elements() {
            let op = evaluate(&x, z);
            if !op.is_zero() {
                out.push(op);
            }
        }
    }
    out
}

/// Operators of multiplication by the indicator functions `T_w`.
pub fn gamma_generators(amb: &Ambient) -> Vec<EndOp> {
    (0..amb.points())
        .map(|w| gamma_op(amb, &AElem::basis(amb.gset(), w)))
        .collect()
}

/// Span of `{c(z)}` closed under composition.
pub fn wn_span(c: &SubSpan, mode: WnMode) -> Result<OperatorSpan> {
    if mode == WnMode::Checked {
        c.check_subalgebra()?;
    }
    let size = c.ambient().module_dim();
    let seeds: Vec<SparseVec> = evaluations(c).into_iter().map(EndOp::into_vec).collect();
    let basis = algebra_span(size, &seeds)?;
    Ok(OperatorSpan {
        size,
        basis,
        raw: mode == WnMode::Raw,
    })
}

/// Span of `seeds` closed under composition.
pub fn algebra_span(size: usize, seeds: &[SparseVec]) -> Result<SubspaceBasis> {
    let comp = |a: &SparseVec, b: &SparseVec| vec![compose_vec(size, a, b).into_vec()];
    let binary: [BinaryStep<'_>; 1] = [&comp];
    span_closure(size * size, seeds, &[], &binary)
}

/// Closure of one vector of `M_n` under a set of operators.
pub fn cyclic_submodule(size: usize, v: &SparseVec, ops: &[EndOp]) -> Result<SubspaceBasis> {
    let step = |u: &SparseVec| -> Vec<SparseVec> {
        ops.iter()
            .map(|op| crate::workbench::operators::apply_vec(size, op.as_vec(), u))
            .collect()
    };
    let unary: [UnaryStep<'_>; 1] = [&step];
    span_closure(size, std::slice::from_ref(v), &unary, &[])
}

/// `span{(1 (x) T_w (x) E) o_e c}`: every middle-slot projection of `C`.
pub fn enrich(c: &SubSpan) -> SubSpan {
    let amb = c.ambient();
    let nn = amb.n() * amb.n();
    let p = amb.points();
    let mut basis = SubspaceBasis::new(amb.dim());
    for r in c.basis().rows() {
        for w in 0..p {
            let piece = r.filter(|k| (k / nn) % p == w);
            if !piece.is_zero() {
                basis.insert(piece);
            }
            if basis.is_full() {
                return SubSpan::new(amb, basis).unwrap();
            }
        }
    }
    SubSpan::new(amb, basis).unwrap()
}

/// `span{(1 (x) T_w (x) E) o_gamma c}` over every `gamma` as well.
pub fn enrich_all_gamma(c: &SubSpan) -> SubSpan {
    let amb = c.ambient();
    let grp = amb.group();
    let n = amb.n();
    let mut basis = SubspaceBasis::new(amb.dim());
    for w in 0..amb.points() {
        let pairs = (0..amb.order()).flat_map(|g| (0..n).map(move |i| (g, i)));
        let mult: SparseVec = pairs.map(|(g, i)| (amb.index(g, w, i, i), Scalar::one())).collect();
        for r in c.basis().rows() {
            for gamma in grp.elements() {
                basis.insert(product_vec(amb, &mult, r, gamma));
            }
        }
    }
    SubSpan::new(amb, basis).unwrap()
}

/// Proper nonzero subspace of `M_n` invariant under `Gamma(H)` and
/// every `c(z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub dim: usize,
    /// Basis vectors in canonical form, indexed by `w n + i`.
    pub basis: Vec<Vec<(usize, Scalar)>>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible {
        enrich_dim: usize,
    },
    Reducible {
        enrich_dim: usize,
        full_dim: usize,
        certificate: Option<Certificate>,
        /// Set when no certificate was found over the base field.
        no_rational_certificate: bool,
    },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Irreducibility::Reducible { certificate, .. } => certificate.as_ref(),
            _ => None,
        }
    }
}

/// Decides irreducibility by `dim enrich(C) = |G| |V| n^2`, and on the
/// reducible side searches for an invariant submodule.
pub fn is_irreducible(c: &SubSpan) -> Result<Irreducibility> {
    c.check_subalgebra()?;
    let amb = c.ambient();
    let e = enrich(c);
    if e.is_full() {
        return Ok(Irreducibility::Irreducible { enrich_dim: e.dim() });
    }
    let certificate = find_certificate(c)?;
    Ok(Irreducibility::Reducible {
        enrich_dim: e.dim(),
        full_dim: amb.dim(),
        no_rational_certificate: certificate.is_none(),
        certificate,
    })
}

fn certificate_from(basis: &SubspaceBasis, method: &str) -> Certificate {
    Certificate {
        dim: basis.dim(),
        basis: basis.rows().map(|r| r.entries().to_vec()).collect(),
        method: method.into(),
    }
}

/// Verifies that `sub` is a proper nonzero invariant subspace.
pub fn is_invariant_submodule(size: usize, sub: &SubspaceBasis, ops: &[EndOp]) -> bool {
    if sub.is_zero() || sub.is_full() {
        return false;
    }
    sub.rows().all(|r| {
        ops.iter()
            .all(|op| sub.contains(&crate::workbench::operators::apply_vec(size, op.as_vec(), r)))
    })
}

/// Search order: `Gamma(H)` applied to the common kernel of the `c(z)`;
/// cyclic submodules of coordinate vectors; a few fixed sample vectors.
pub fn find_certificate(c: &SubSpan) -> Result<Option<Certificate>> {
    let amb = c.ambient();
    let size = amb.module_dim();
    let evals = evaluations(c);
    let gammas = gamma_generators(amb);
    let ops: Vec<EndOp> = gammas.iter().cloned().chain(evals.iter().cloned()).collect();

    let rows: Vec<SparseVec> = evals
        .iter()
        .flat_map(|op| (0..size).map(move |r| op.as_vec().filter(|k| k / size == r).map_indices(|k| k % size)))
        .filter(|r| !r.is_zero())
        .collect();
    let kernel = nullspace(&rows, size);
    if !kernel.is_empty() {
        let mut sub = SubspaceBasis::new(size);
        for k in &kernel {
            for g in &gammas {
                sub.insert(crate::workbench::operators::apply_vec(size, g.as_vec(), k));
            }
        }
        if is_invariant_submodule(size, &sub, &ops) {
            return Ok(Some(certificate_from(&sub, "common kernel")));
        }
    }

    for k in 0..size {
        let sub = cyclic_submodule(size, &SparseVec::unit(k), &ops)?;
        if is_invariant_submodule(size, &sub, &ops) {
            return Ok(Some(certificate_from(&sub, "cyclic submodule of a coordinate vector")));
        }
    }

    for s in 1..=3i64 {
        let v: SparseVec = (0..size).map(|k| (k, Scalar::from_i64(1 + (k as i64 * s) % 5))).collect();
        let sub = cyclic_submodule(size, &v, &ops)?;
        if is_invariant_submodule(size, &sub, &ops) {
            return Ok(Some(certificate_from(&sub, "cyclic submodule of a sample vector")));
        }
    }
    Ok(None)
}

/// `{phi : phi a = a phi for all a in ops}`.
pub fn centralizer(size: usize, ops: &[EndOp]) -> SubspaceBasis {
    // unknown phi_{pq} at p*size+q
    let mut eqs = SubspaceBasis::new(size * size);
    for a in ops {
        for r in 0..size {
            for s in 0..size {
                // (phi a)_{rs} - (a phi)_{rs} = sum_t phi_{rt} a_{ts} - a_{rt} phi_{ts}
                let mut pairs = Vec::new();
                for t in 0..size {
                    let ats = a.get(t, s);
                    if !ats.is_zero() {
                        pairs.push((r * size + t, ats));
                    }
                    let art = a.get(r, t);
                    if !art.is_zero() {
                        pairs.push((t * size + s, -art));
                    }
                }
                let row = SparseVec::from_pairs(pairs);
                if !row.is_zero() {
                    eqs.insert(row);
                }
            }
        }
    }
    let ns = nullspace(&eqs.rows_sorted(), size * size);
    SubspaceBasis::from_vectors(size * size, ns).expect("in range")
}

/// Whether the centralizer of `ops` is exactly the scalar operators.
pub fn centralizer_is_scalar(size: usize, ops: &[EndOp]) -> bool {
    let c = centralizer(size, ops);
    c.dim() == 1 && c.contains(EndOp::identity(size).as_vec())
}

/// Convenience: the operator span `Gamma(H) W_n(C)`.
pub fn enriched_wn(c: &SubSpan) -> Result<OperatorSpan> {
    wn_span(&enrich(c), WnMode::Raw)
}

/// Error helper for callers that need an irreducible input.
pub fn require_irreducible(c: &SubSpan) -> Result<()> {
    if is_irreducible(c)?.is_irreducible() {
        Ok(())
    } else {
        Err(Error::NotIrreducible)
    }
}
