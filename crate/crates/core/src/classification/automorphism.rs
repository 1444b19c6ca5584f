//! Slot-wise automorphisms `T_g (x) T_alpha (x) a -> T_g (x) T_alpha (x) a^{sigma_{g,alpha}}`
//! and the induced automorphisms of `End M_n`.

use serde::Serialize;

use crate::conformal::{product_vec, Ambient, DiffElem, SubSpan};
use crate::error::{Error, Result};
use crate::hopf::HElem;
use crate::linalg::{DenseMatrix, MnMap, SparseVec, SubspaceBasis};
use crate::scalar::Scalar;
use crate::workbench::{evaluate, gamma_op_h, EndOp};

/// `sigma_{g,alpha}(a) = U_alpha^-1 a U_{g^-1 alpha}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfAutomorphism {
    amb: Ambient,
    conj: Vec<DenseMatrix>,
    inv: Vec<DenseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaWitness {
    pub g: usize,
    pub h: usize,
    pub alpha: usize,
    pub a: (usize, usize),
    pub b: (usize, usize),
}

pub fn build_sigma(amb: &Ambient, u: Vec<DenseMatrix>) -> Result<ConfAutomorphism> {
    if u.len() != amb.points() {
        return Err(Error::DimensionMismatch {
            expected: amb.points(),
            found: u.len(),
        });
    }
    let n = amb.n();
    if let Some(m) = u.iter().find(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.rows(),
        });
    }
    let inv = u.iter().map(DenseMatrix::inverse).collect::<Result<Vec<_>>>()?;
    Ok(ConfAutomorphism {
        amb: amb.clone(),
        conj: u,
        inv,
    })
}

impl ConfAutomorphism {
    pub fn identity(amb: &Ambient) -> Self {
        let u = vec![DenseMatrix::identity(amb.n()); amb.points()];
        ConfAutomorphism {
            amb: amb.clone(),
            inv: u.clone(),
            conj: u,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn conjugators(&self) -> &[DenseMatrix] {
        &self.conj
    }

    fn partner(&self, g: usize, alpha: usize) -> usize {
        self.amb.gset().act(self.amb.group().inv(g), alpha)
    }

    pub fn sigma(&self, g: usize, alpha: usize, a: &DenseMatrix) -> Result<DenseMatrix> {
        self.inv[alpha].mul(a)?.mul(&self.conj[self.partner(g, alpha)])
    }

    pub fn sigma_map(&self, g: usize, alpha: usize) -> Result<MnMap> {
        MnMap::from_fn(self.amb.n(), |a| self.sigma(g, alpha, a))
    }

    /// `(ab)^{sigma_{gh,alpha}} = a^{sigma_{g,alpha}} b^{sigma_{h,g^-1 alpha}}`
    /// on all pairs of matrix units.
    pub fn lemma_witness(&self) -> Result<Option<LemmaWitness>> {
        let grp = self.amb.group();
        let n = self.amb.n();
        let units: Vec<(usize, usize, DenseMatrix)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j, DenseMatrix::unit(n, i, j))))
            .collect();
        for g in grp.elements() {
            for h in grp.elements() {
                let gh = grp.mul(g, h);
                for alpha in 0..self.amb.points() {
                    let beta = self.partner(g, alpha);
                    for (ai, aj, a) in &units {
                        let sa = self.sigma(g, alpha, a)?;
                        for (bi, bj, b) in &units {
                            let lhs = self.sigma(gh, alpha, &a.mul(b)?)?;
                            let rhs = sa.mul(&self.sigma(h, beta, b)?)?;
                            if lhs != rhs {
                                return Ok(Some(LemmaWitness {
                                    g,
                                    h,
                                    alpha,
                                    a: (*ai, *aj),
                                    b: (*bi, *bj),
                                }));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn apply_vec(&self, x: &SparseVec) -> SparseVec {
        let amb = &self.amb;
        let n = amb.n();
        let mut out = Vec::new();
        for (k, c) in x.iter() {
            let (g, w, i, j) = amb.decode(*k);
            // U_w^-1 e_ij U_b: column i of U_w^-1 times row j of U_b
            let ui = &self.inv[w];
            let ub = &self.conj[self.partner(g, w)];
            for r in 0..n {
                let left = ui.get(r, i);
                if left.is_zero() {
                    continue;
                }
                for s in 0..n {
                    let right = ub.get(j, s);
                    if !right.is_zero() {
                        out.push((amb.index(g, w, r, s), &(c * left) * right));
                    }
                }
            }
        }
        SparseVec::from_pairs(out)
    }

    pub fn apply(&self, x: &DiffElem) -> Result<DiffElem> {
        if x.ambient() != &self.amb {
            return Err(Error::StructureMismatch("automorphism over a different ambient".into()));
        }
        DiffElem::from_vec(&self.amb, self.apply_vec(x.coeffs()))
    }

    /// The matrix of the slot-wise map on the basis of `Cend`.
    pub fn as_cend_map(&self) -> CendMap {
        CendMap {
            amb: self.amb.clone(),
            images: (0..self.amb.dim()).map(|k| self.apply_vec(&SparseVec::unit(k))).collect(),
        }
    }
}

pub fn apply_automorphism(sigma: &ConfAutomorphism, c: &SubSpan) -> Result<SubSpan> {
    if c.ambient() != sigma.ambient() {
        return Err(Error::StructureMismatch("automorphism over a different ambient".into()));
    }
    let mut basis = SubspaceBasis::new(c.ambient().dim());
    for r in c.basis().rows() {
        basis.insert(sigma.apply_vec(r));
    }
    SubSpan::new(c.ambient(), basis)
}

/// A linear endomorphism of `Cend` given by the images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CendMap {
    pub amb: Ambient,
    pub images: Vec<SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub left: usize,
    pub right: usize,
    pub gamma: usize,
}

impl CendMap {
    pub fn identity(amb: &Ambient) -> Self {
        CendMap {
            amb: amb.clone(),
            images: (0..amb.dim()).map(SparseVec::unit).collect(),
        }
    }

    pub fn apply_vec(&self, x: &SparseVec) -> SparseVec {
        crate::linalg::combine(x.iter().map(|(k, c)| (c, &self.images[*k])))
    }

    pub fn is_bijective(&self) -> bool {
        SubspaceBasis::from_vectors(self.amb.dim(), self.images.iter().cloned())
            .map(|b| b.is_full())
            .unwrap_or(false)
    }

    /// First basis triple with `Theta(x o_gamma y) != Theta(x) o_gamma Theta(y)`.
    pub fn product_witness(&self) -> Option<ProductWitness> {
        let amb = &self.amb;
        let grp = amb.group();
        for l in 0..amb.dim() {
            let x = SparseVec::unit(l);
            for r in 0..amb.dim() {
                let y = SparseVec::unit(r);
                for gamma in grp.elements() {
                    let p = product_vec(amb, &x, &y, gamma);
                    let lhs = self.apply_vec(&p);
                    let rhs = product_vec(amb, &self.images[l], &self.images[r], gamma);
                    if lhs != rhs {
                        return Some(ProductWitness { left: l, right: r, gamma });
                    }
                }
            }
        }
        None
    }
}

/// `theta` on `End M_n`, tabulated on matrix units `E_{rc}` (row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBridge {
    pub size: usize,
    pub images: Vec<EndOp>,
}

impl ThetaBridge {
    pub fn apply(&self, a: &EndOp) -> EndOp {
        let v = crate::linalg::combine(a.as_vec().iter().map(|(k, c)| (c, self.images[*k].as_vec())));
        EndOp::from_vec(self.size, v)
    }
}

/// `T_x . alpha = sum_{uv = x} Gamma(T_u) alpha Gamma(T_{v^-1})`.
pub fn h_act_operator(amb: &Ambient, x: usize, a: &EndOp) -> Result<EndOp> {
    let grp = amb.group();
    let mut acc = EndOp::zero(amb.module_dim());
    for u in grp.elements() {
        let v = grp.mul(grp.inv(u), x);
        let left = gamma_op_h(amb, &HElem::basis(grp, u))?;
        let right = gamma_op_h(amb, &HElem::basis(grp, grp.inv(v)))?;
        acc = acc.add(&left.compose(a).compose(&right));
    }
    Ok(acc)
}

/// `theta(E_{(w,i),(v,j)}) = Theta(T_{z^-1} (x) T_w (x) e_ij)(z)` with
/// `z w = v`, verified to be well defined, multiplicative and H-invariant.
pub fn theta_bridge(theta: &CendMap) -> Result<ThetaBridge> {
    let amb = &theta.amb;
    let grp = amb.group();
    if amb.points() != amb.order() {
        return Err(Error::InvalidInput("theta bridge needs V = G".into()));
    }
    if !theta.is_bijective() {
        return Err(Error::NotAutomorphism("map is not bijective on Cend".into()));
    }
    if let Some(w) = theta.product_witness() {
        return Err(Error::NotAutomorphism(format!(
            "product of basis {} and {} under o_{} is not preserved",
            w.left, w.right, w.gamma
        )));
    }
    let n = amb.n();
    let size = amb.module_dim();
    let mut images = Vec::with_capacity(size * size);
    for r in 0..size {
        for c in 0..size {
            let (w, i) = (r / n, r % n);
            let (v, j) = (c / n, c % n);
            let z = grp.mul(v, grp.inv(w));
            let b = DiffElem::from_vec(amb, theta.images[amb.index(grp.inv(z), w, i, j)].clone())?;
            for zp in grp.elements().filter(|&zp| zp != z) {
                if !evaluate(&b, zp).is_zero() {
                    return Err(Error::NotAutomorphism(format!(
                        "image of E_({r},{c}) is nonzero at {zp}"
                    )));
                }
            }
            images.push(evaluate(&b, z));
        }
    }
    let bridge = ThetaBridge { size, images };
    for p in 0..size * size {
        let a = EndOp::from_vec(size, SparseVec::unit(p));
        for q in 0..size * size {
            let b = EndOp::from_vec(size, SparseVec::unit(q));
            if bridge.apply(&a.compose(&b)) != bridge.images[p].compose(&bridge.images[q]) {
                return Err(Error::NotAutomorphism(format!("theta is not multiplicative on units {p}, {q}")));
            }
        }
        for x in grp.elements() {
            let lhs = bridge.apply(&h_act_operator(amb, x, &a)?);
            let rhs = h_act_operator(amb, x, &bridge.images[p])?;
            if lhs != rhs {
                return Err(Error::NotAutomorphism(format!("theta does not commute with T_{x} on unit {p}")));
            }
        }
    }
    Ok(bridge)
}

/// Scalar matrices as an `n x n` family convenience.
pub fn scalar_family(amb: &Ambient, scalars: &[Scalar]) -> Vec<DenseMatrix> {
    scalars.iter().map(|c| DenseMatrix::scalar(amb.n(), c)).collect()
}
