//! The function algebra `H = k[G]` in the indicator basis `T_g`, and the
//! function algebra `A = k[V]` of a G-set with its coaction.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// Function `G -> k`, stored by its values (= coefficients on `T_g`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElem {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Scalar>,
}

/// Function `V -> k` on a G-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AElem {
    gset: Arc<GSet>,
    coeffs: Vec<Scalar>,
}

/// Element of a tensor square `X (x) Y`, indexed by `x * dim(Y) + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    pub left: usize,
    pub right: usize,
    pub coeffs: SparseVec,
}

impl Tensor2 {
    pub fn new(left: usize, right: usize) -> Self {
        Tensor2 {
            left,
            right,
            coeffs: SparseVec::new(),
        }
    }

    pub fn get(&self, a: usize, b: usize) -> Scalar {
        self.coeffs.get(a * self.right + b)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.coeffs
            .iter()
            .map(move |(k, c)| (k / self.right, k % self.right, c))
    }
}

fn check_same(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if std::ptr::eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::StructureMismatch(format!("{a:?} vs {b:?}")))
    }
}

impl HElem {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        HElem {
            group: Arc::clone(group),
            coeffs: vec![Scalar::zero(); group.order()],
        }
    }

    /// The unit `1 = sum_g T_g`.
    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        HElem {
            group: Arc::clone(group),
            coeffs: vec![Scalar::one(); group.order()],
        }
    }

    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut h = Self::zero(group);
        h.coeffs[g] = Scalar::one();
        h
    }

    pub fn from_values(group: &Arc<FiniteGroup>, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: coeffs.len(),
            });
        }
        Ok(HElem {
            group: Arc::clone(group),
            coeffs,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, g: usize) -> &Scalar {
        &self.coeffs[g]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &HElem) -> Result<HElem> {
        check_same(&self.group, &other.group)?;
        Ok(HElem {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> HElem {
        HElem {
            group: Arc::clone(&self.group),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// Pointwise product.
pub fn h_mult(f: &HElem, h: &HElem) -> Result<HElem> {
    check_same(&f.group, &h.group)?;
    Ok(HElem {
        group: Arc::clone(&f.group),
        coeffs: f.coeffs.iter().zip(&h.coeffs).map(|(a, b)| a * b).collect(),
    })
}

/// `Delta(T_g) = sum_{uv = g} T_u (x) T_v`.
pub fn coproduct(h: &HElem) -> Tensor2 {
    let g = &h.group;
    let n = g.order();
    let pairs = g.elements().flat_map(|u| {
        g.elements()
            .map(move |v| (u * n + v, h.coeffs[g.mul(u, v)].clone()))
    });
    Tensor2 {
        left: n,
        right: n,
        coeffs: SparseVec::from_pairs(pairs),
    }
}

/// `epsilon(h) = h(e)`.
pub fn counit(h: &HElem) -> Scalar {
    h.coeffs[0].clone()
}

/// `S(T_g) = T_{g^-1}`.
pub fn antipode(h: &HElem) -> HElem {
    let g = &h.group;
    HElem {
        group: Arc::clone(g),
        coeffs: g.elements().map(|x| h.coeffs[g.inv(x)].clone()).collect(),
    }
}

/// `(L_g h)(x) = h(gx)`, so `L_g T_x = T_{g^-1 x}`.
pub fn left_shift(g: usize, h: &HElem) -> HElem {
    let grp = &h.group;
    HElem {
        group: Arc::clone(grp),
        coeffs: grp.elements().map(|x| h.coeffs[grp.mul(g, x)].clone()).collect(),
    }
}

impl AElem {
    pub fn zero(gset: &Arc<GSet>) -> Self {
        AElem {
            gset: Arc::clone(gset),
            coeffs: vec![Scalar::zero(); gset.len()],
        }
    }

    pub fn one(gset: &Arc<GSet>) -> Self {
        AElem {
            gset: Arc::clone(gset),
            coeffs: vec![Scalar::one(); gset.len()],
        }
    }

    pub fn basis(gset: &Arc<GSet>, w: usize) -> Self {
        let mut a = Self::zero(gset);
        a.coeffs[w] = Scalar::one();
        a
    }

    pub fn from_values(gset: &Arc<GSet>, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != gset.len() {
            return Err(Error::DimensionMismatch {
                expected: gset.len(),
                found: coeffs.len(),
            });
        }
        Ok(AElem {
            gset: Arc::clone(gset),
            coeffs,
        })
    }

    pub fn gset(&self) -> &Arc<GSet> {
        &self.gset
    }

    pub fn value(&self, w: usize) -> &Scalar {
        &self.coeffs[w]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn mul(&self, other: &AElem) -> AElem {
        AElem {
            gset: Arc::clone(&self.gset),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect(),
        }
    }

    /// `(L_g f)(v) = f(g.v)`.
    pub fn shift(&self, g: usize) -> AElem {
        AElem {
            gset: Arc::clone(&self.gset),
            coeffs: (0..self.gset.len())
                .map(|v| self.coeffs[self.gset.act(g, v)].clone())
                .collect(),
        }
    }
}

/// `Delta_A(T_w) = sum_g T_g (x) T_{g^-1 w}`, i.e. `Delta_A(f)(g, v) = f(g.v)`.
pub fn coaction(a: &AElem) -> Tensor2 {
    let x = &a.gset;
    let g = x.group();
    let nv = x.len();
    let pairs = g
        .elements()
        .flat_map(|h| (0..nv).map(move |v| (h * nv + v, a.coeffs[x.act(h, v)].clone())));
    Tensor2 {
        left: g.order(),
        right: nv,
        coeffs: SparseVec::from_pairs(pairs),
    }
}

/// First failure among the Hopf axioms on the `T_g` basis.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HopfWitness {
    pub law: String,
    pub basis_element: usize,
}

/// Coassociativity, both counit laws and both antipode laws, exhaustively.
pub fn check_hopf_axioms(group: &Arc<FiniteGroup>) -> Option<HopfWitness> {
    let n = group.order();
    let fail = |law: &str, g: usize| {
        Some(HopfWitness {
            law: law.into(),
            basis_element: g,
        })
    };
    for g in group.elements() {
        let t = HElem::basis(group, g);
        let d = coproduct(&t);
        // (Delta (x) id) Delta and (id (x) Delta) Delta as triple tensors
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (u, v, c) in d.terms() {
            for (a, b, c2) in coproduct(&HElem::basis(group, u)).terms() {
                left.push(((a * n + b) * n + v, c * c2));
            }
            for (a, b, c2) in coproduct(&HElem::basis(group, v)).terms() {
                right.push(((u * n + a) * n + b, c * c2));
            }
        }
        if SparseVec::from_pairs(left) != SparseVec::from_pairs(right) {
            return fail("coassociativity", g);
        }
        let mut lc = HElem::zero(group);
        let mut rc = HElem::zero(group);
        for (u, v, c) in d.terms() {
            lc.coeffs[v] = &lc.coeffs[v] + &(&counit(&HElem::basis(group, u)) * c);
            rc.coeffs[u] = &rc.coeffs[u] + &(&counit(&HElem::basis(group, v)) * c);
        }
        if lc != t {
            return fail("left counit", g);
        }
        if rc != t {
            return fail("right counit", g);
        }
        let unit = HElem::one(group).scale(&counit(&t));
        let mut ls = HElem::zero(group);
        let mut rs = HElem::zero(group);
        for (u, v, c) in d.terms() {
            let (tu, tv) = (HElem::basis(group, u), HElem::basis(group, v));
            ls = ls.add(&h_mult(&antipode(&tu), &tv).unwrap().scale(c)).unwrap();
            rs = rs.add(&h_mult(&tu, &antipode(&tv)).unwrap().scale(c)).unwrap();
        }
        if ls != unit {
            return fail("left antipode", g);
        }
        if rs != unit {
            return fail("right antipode", g);
        }
    }
    None
}

/// Comodule coassociativity, counitality and multiplicativity of the coaction.
pub fn check_comodule_axioms(gset: &Arc<GSet>) -> Option<HopfWitness> {
    let group = gset.group();
    let n = group.order();
    let nv = gset.len();
    for w in 0..nv {
        let t = AElem::basis(gset, w);
        let d = coaction(&t);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (g, v, c) in d.terms() {
            for (a, b, c2) in coproduct(&HElem::basis(group, g)).terms() {
                left.push(((a * n + b) * nv + v, c * c2));
            }
            for (a, b, c2) in coaction(&AElem::basis(gset, v)).terms() {
                right.push(((g * n + a) * nv + b, c * c2));
            }
        }
        if SparseVec::from_pairs(left) != SparseVec::from_pairs(right) {
            return Some(HopfWitness {
                law: "comodule coassociativity".into(),
                basis_element: w,
            });
        }
        let mut back = AElem::zero(gset);
        for (g, v, c) in d.terms() {
            if g == 0 {
                back.coeffs[v] = &back.coeffs[v] + c;
            }
        }
        if back != t {
            return Some(HopfWitness {
                law: "comodule counit".into(),
                basis_element: w,
            });
        }
        for w2 in 0..nv {
            let prod = coaction(&t.mul(&AElem::basis(gset, w2)));
            let d2 = coaction(&AElem::basis(gset, w2));
            let pw: Vec<(usize, Scalar)> = d
                .coeffs
                .iter()
                .filter_map(|(k, c)| d2.coeffs.get_ref(*k).map(|c2| (*k, c * c2)))
                .collect();
            if prod.coeffs != SparseVec::from_pairs(pw) {
                return Some(HopfWitness {
                    law: "coaction multiplicativity".into(),
                    basis_element: w,
                });
            }
        }
    }
    None
}
