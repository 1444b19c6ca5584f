//! Operator side: `M_n = A (x) k^n`, linear operators on it, operator
//! families `z -> a(z)`, the isomorphism with `H (x) A (x) M_n(k)`, and the
//! twist `F`.
//!
//! The coordinate `(w, i)` of `M_n` (the vector `T_w (x) e_i`) has index
//! `w n + i`.

use std::fmt;
use std::sync::Arc;

use crate::conformal::{Ambient, DiffElem};
use crate::error::{Error, Result};
use crate::hopf::{antipode, coaction, h_mult, AElem, HElem};
use crate::linalg::{DenseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Element of `M_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElem {
    dim: usize,
    coeffs: SparseVec,
}

impl ModuleElem {
    pub fn zero(amb: &Ambient) -> Self {
        ModuleElem {
            dim: amb.module_dim(),
            coeffs: SparseVec::new(),
        }
    }

    pub fn basis(amb: &Ambient, w: usize, i: usize) -> Self {
        ModuleElem {
            dim: amb.module_dim(),
            coeffs: SparseVec::unit(w * amb.n() + i),
        }
    }

    pub fn from_vec(amb: &Ambient, coeffs: SparseVec) -> Result<Self> {
        let dim = amb.module_dim();
        if coeffs.max_index().is_some_and(|m| m >= dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coeffs.max_index().unwrap() + 1,
            });
        }
        Ok(ModuleElem { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// `f u`, with `A` acting pointwise on the `A` factor.
    pub fn mul_function(&self, f: &AElem, n: usize) -> ModuleElem {
        ModuleElem {
            dim: self.dim,
            coeffs: SparseVec::from_pairs(self.coeffs.iter().map(|(k, c)| (*k, c * f.value(k / n)))),
        }
    }
}

/// Linear operator on `M_n`, stored sparsely in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EndOp {
    size: usize,
    entries: SparseVec,
}

impl fmt::Debug for EndOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EndOp{}{}", self.size, DenseMatrix::from_sparse(self.size, &self.entries))
    }
}

impl EndOp {
    pub fn zero(size: usize) -> Self {
        EndOp {
            size,
            entries: SparseVec::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        EndOp {
            size,
            entries: (0..size).map(|i| (i * size + i, Scalar::one())).collect(),
        }
    }

    /// Matrix unit `E_{rc}`.
    pub fn unit(size: usize, r: usize, c: usize) -> Self {
        EndOp {
            size,
            entries: SparseVec::unit(r * size + c),
        }
    }

    /// From a row-major flat vector of length `size^2`.
    pub fn from_vec(size: usize, entries: SparseVec) -> Self {
        debug_assert!(entries.max_index().is_none_or(|m| m < size * size));
        EndOp { size, entries }
    }

    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        Ok(EndOp {
            size: m.rows(),
            entries: m.to_sparse(),
        })
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_sparse(self.size, &self.entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn as_vec(&self) -> &SparseVec {
        &self.entries
    }

    pub fn into_vec(self) -> SparseVec {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(r * self.size + c)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(move |(k, c)| (k / self.size, k % self.size, c))
    }

    pub fn add(&self, other: &EndOp) -> EndOp {
        EndOp {
            size: self.size,
            entries: self.entries.add(&other.entries),
        }
    }

    pub fn sub(&self, other: &EndOp) -> EndOp {
        EndOp {
            size: self.size,
            entries: self.entries.sub(&other.entries),
        }
    }

    pub fn scale(&self, c: &Scalar) -> EndOp {
        EndOp {
            size: self.size,
            entries: self.entries.scale(c),
        }
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &EndOp) -> EndOp {
        compose_vec(self.size, &self.entries, &other.entries)
    }

    pub fn apply(&self, u: &ModuleElem) -> ModuleElem {
        ModuleElem {
            dim: u.dim,
            coeffs: apply_vec(self.size, &self.entries, &u.coeffs),
        }
    }
}

/// Product of two row-major sparse square matrices.
pub fn compose_vec(size: usize, a: &SparseVec, b: &SparseVec) -> EndOp {
    if a.is_zero() || b.is_zero() {
        return EndOp::zero(size);
    }
    // row ranges of b
    let be = b.entries();
    let mut starts = vec![usize::MAX; size + 1];
    for (pos, (k, _)) in be.iter().enumerate().rev() {
        starts[k / size] = pos;
    }
    let mut next = be.len();
    for r in (0..=size).rev() {
        if starts[r] == usize::MAX {
            starts[r] = next;
        } else {
            next = starts[r];
        }
    }
    let mut out = Vec::new();
    for (k, x) in a.iter() {
        let (i, m) = (k / size, k % size);
        let (lo, hi) = (starts[m], starts[m + 1]);
        for (kb, y) in &be[lo..hi] {
            out.push((i * size + kb % size, x * y));
        }
    }
    EndOp {
        size,
        entries: SparseVec::from_pairs(out),
    }
}

pub fn apply_vec(size: usize, a: &SparseVec, u: &SparseVec) -> SparseVec {
    let mut out = Vec::new();
    for (k, x) in a.iter() {
        if let Some(y) = u.get_ref(k % size) {
            out.push((k / size, x * y));
        }
    }
    SparseVec::from_pairs(out)
}

/// Operator family `z -> a(z)`, indexed by group element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfOperator {
    amb: Ambient,
    ops: Vec<EndOp>,
}

impl ConfOperator {
    pub fn new(amb: &Ambient, ops: Vec<EndOp>) -> Result<Self> {
        if ops.len() != amb.order() {
            return Err(Error::DimensionMismatch {
                expected: amb.order(),
                found: ops.len(),
            });
        }
        if let Some(op) = ops.iter().find(|op| op.size != amb.module_dim()) {
            return Err(Error::DimensionMismatch {
                expected: amb.module_dim(),
                found: op.size,
            });
        }
        Ok(ConfOperator { amb: amb.clone(), ops })
    }

    pub fn zero(amb: &Ambient) -> Self {
        ConfOperator {
            amb: amb.clone(),
            ops: vec![EndOp::zero(amb.module_dim()); amb.order()],
        }
    }

    /// `z -> L_z`.
    pub fn left_shift_family(amb: &Ambient) -> Self {
        ConfOperator {
            amb: amb.clone(),
            ops: amb.group().elements().map(|z| left_shift_op(amb, z)).collect(),
        }
    }

    /// Same operator at every point.
    pub fn constant(amb: &Ambient, op: EndOp) -> Result<Self> {
        Self::new(amb, vec![op; amb.order()])
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn at(&self, z: usize) -> &EndOp {
        &self.ops[z]
    }

    pub fn ops(&self) -> &[EndOp] {
        &self.ops
    }
}

/// `x(z)`: the basis element `T_g (x) T_w (x) m` evaluates to
/// `[z = g^-1] Gamma(T_w) L_z (x) m`.
pub fn evaluate(x: &DiffElem, z: usize) -> EndOp {
    let amb = x.ambient();
    let grp = amb.group();
    let n = amb.n();
    let size = amb.module_dim();
    let zi = grp.inv(z);
    let d = amb.slice_dim();
    let lo = zi * d;
    let mut out = Vec::new();
    for (k, c) in x.coeffs().iter() {
        if *k < lo || *k >= lo + d {
            continue;
        }
        let (_, w, i, j) = amb.decode(*k);
        let row = w * n + i;
        let col = amb.gset().act(z, w) * n + j;
        out.push((row * size + col, c.clone()));
    }
    EndOp {
        size,
        entries: SparseVec::from_pairs(out),
    }
}

/// `x -> (z -> x(z))`.
pub fn phi_inv(x: &DiffElem) -> ConfOperator {
    let amb = x.ambient();
    ConfOperator {
        amb: amb.clone(),
        ops: amb.group().elements().map(|z| evaluate(x, z)).collect(),
    }
}

/// Inverse of [`phi_inv`] on T-invariant families.
pub fn phi(a: &ConfOperator) -> Result<DiffElem> {
    check_t_invariance(a)?;
    let amb = &a.amb;
    let grp = amb.group();
    let n = amb.n();
    let mut pairs = Vec::new();
    for z in grp.elements() {
        let zi = grp.inv(z);
        for w in 0..amb.points() {
            let zw = amb.gset().act(z, w);
            for i in 0..n {
                for j in 0..n {
                    let c = a.ops[z].get(w * n + i, zw * n + j);
                    if !c.is_zero() {
                        pairs.push((amb.index(zi, w, i, j), c));
                    }
                }
            }
        }
    }
    let x = DiffElem::from_vec(amb, SparseVec::from_pairs(pairs))?;
    // T-invariance forces every entry into the shape read above
    debug_assert_eq!(phi_inv(&x), *a);
    Ok(x)
}

/// Exhaustive check of `a(g)(f u) = L_g f . (a(g) u)` over basis `f = T_v`
/// and `u = T_v' (x) e_j`.
pub fn check_t_invariance(a: &ConfOperator) -> Result<()> {
    let amb = &a.amb;
    let gset = amb.gset();
    let grp = amb.group();
    let n = amb.n();
    for g in grp.elements() {
        for v in 0..amb.points() {
            // L_g T_v = T_{g^-1 v}
            let shifted = gset.act(grp.inv(g), v);
            for vp in 0..amb.points() {
                for j in 0..n {
                    let u = SparseVec::unit(vp * n + j);
                    let fu = if v == vp { u.clone() } else { SparseVec::new() };
                    let lhs = apply_vec(a.ops[g].size, &a.ops[g].entries, &fu);
                    let rhs = apply_vec(a.ops[g].size, &a.ops[g].entries, &u).filter(|k| k / n == shifted);
                    if lhs != rhs {
                        return Err(Error::NotTInvariant {
                            g,
                            point: v,
                            module_point: vp,
                            coord: j,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(a o_g b)(z) = a(g) b(z g^-1)`.
pub fn op_product(a: &ConfOperator, b: &ConfOperator, g: usize) -> Result<ConfOperator> {
    if a.amb != b.amb {
        return Err(Error::StructureMismatch("operator families over different ambients".into()));
    }
    let grp = a.amb.group();
    let gi = grp.inv(g);
    Ok(ConfOperator {
        amb: a.amb.clone(),
        ops: grp
            .elements()
            .map(|z| a.ops[g].compose(&b.ops[grp.mul(z, gi)]))
            .collect(),
    })
}

/// `Gamma(f) u = f u`.
pub fn gamma_op(amb: &Ambient, f: &AElem) -> EndOp {
    let n = amb.n();
    let size = amb.module_dim();
    EndOp {
        size,
        entries: (0..size)
            .map(|k| (k * size + k, f.value(k / n).clone()))
            .collect(),
    }
}

/// `Gamma(h)` for `h in H` acting on `M_n` over `V = G`.
pub fn gamma_op_h(amb: &Ambient, h: &HElem) -> Result<EndOp> {
    let f = AElem::from_values(amb.gset(), h.values().to_vec())?;
    Ok(gamma_op(amb, &f))
}

/// `L_z (x) id`: `L_z T_x = T_{z^-1 x}`.
pub fn left_shift_op(amb: &Ambient, z: usize) -> EndOp {
    let n = amb.n();
    let size = amb.module_dim();
    let zi = amb.group().inv(z);
    let gset = amb.gset();
    EndOp {
        size,
        entries: (0..amb.points())
            .flat_map(|x| (0..n).map(move |i| ((gset.act(zi, x) * n + i) * size + x * n + i, Scalar::one())))
            .collect(),
    }
}

/// `F(T_h (x) T_w (x) m) = T_h (x) T_{hw} (x) m`.
pub fn fourier(x: &DiffElem) -> DiffElem {
    let amb = x.ambient().clone();
    let gset = Arc::clone(amb.gset());
    let v = x.coeffs().map_indices(|k| {
        let (h, w, i, j) = amb.decode(k);
        amb.index(h, gset.act(h, w), i, j)
    });
    DiffElem::from_vec(&amb, v).unwrap()
}

/// `F^-1(T_h (x) T_w (x) m) = T_h (x) T_{h^-1 w} (x) m`.
pub fn fourier_inv(x: &DiffElem) -> DiffElem {
    let amb = x.ambient().clone();
    let gset = Arc::clone(amb.gset());
    let grp = Arc::clone(amb.group());
    let v = x.coeffs().map_indices(|k| {
        let (h, w, i, j) = amb.decode(k);
        amb.index(h, gset.act(grp.inv(h), w), i, j)
    });
    DiffElem::from_vec(&amb, v).unwrap()
}

/// `F(f (x) a) = f S(a_(1)) (x) a_(2)` expanded term by term through the
/// coaction and the antipode.
pub fn fourier_literal(x: &DiffElem) -> Result<DiffElem> {
    twist_literal(x, true)
}

/// `F^-1(h (x) a) = h a_(1) (x) a_(2)`.
pub fn fourier_inv_literal(x: &DiffElem) -> Result<DiffElem> {
    twist_literal(x, false)
}

fn twist_literal(x: &DiffElem, with_antipode: bool) -> Result<DiffElem> {
    let amb = x.ambient();
    let grp = amb.group();
    let n = amb.n();
    let mut acc = DiffElem::zero(amb);
    for t in x.terms() {
        let f = HElem::basis(grp, t.g);
        let m = DenseMatrix::unit(n, t.i, t.j).scale(&t.coeff);
        for (g, v, c) in coaction(&AElem::basis(amb.gset(), t.w)).terms() {
            let mut a1 = HElem::basis(grp, g);
            if with_antipode {
                a1 = antipode(&a1);
            }
            let h = h_mult(&f, &a1)?;
            let piece = DiffElem::tensor(amb, &h, &AElem::basis(amb.gset(), v), &m.scale(c))?;
            acc = acc.add(&piece)?;
        }
    }
    Ok(acc)
}
