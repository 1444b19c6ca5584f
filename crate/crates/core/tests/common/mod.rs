//! Test-side oracles, written straight from the defining formulas and
//! sharing no code paths with the library beyond the data types.

#![allow(dead_code)]

use std::sync::Arc;

use cendlab::conformal::{Ambient, DiffElem};
use cendlab::group::FiniteGroup;
use cendlab::linalg::{DenseMatrix, SparseVec, SubspaceBasis};
use cendlab::scalar::Scalar;
use cendlab::workbench::EndOp;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    vec![
        ("C2", Arc::new(c2.clone())),
        ("C3", Arc::new(FiniteGroup::cyclic(3).unwrap())),
        ("C4", Arc::new(FiniteGroup::cyclic(4).unwrap())),
        ("C2xC2", Arc::new(FiniteGroup::product(&c2, &c2))),
        ("S3", Arc::new(FiniteGroup::symmetric(3).unwrap())),
        ("D4", Arc::new(FiniteGroup::dihedral(4).unwrap())),
    ]
}

pub fn small_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    groups().into_iter().filter(|(_, g)| g.order() <= 4).collect()
}

pub fn int(k: i64) -> Scalar {
    Scalar::from_i64(k)
}

/// Matrix of `x(z)` on `M_n`, read directly off the terms: the term
/// `c T_g (x) T_w (x) e_ij` contributes at `z = g^-1`, row `(w, i)`,
/// column `(z w, j)`.
pub fn eval_oracle(x: &DiffElem, z: usize) -> DenseMatrix {
    let amb = x.ambient();
    let grp = amb.group();
    let gs = amb.gset();
    let n = amb.n();
    let size = amb.module_dim();
    let mut m = DenseMatrix::zeros(size, size);
    for t in x.terms() {
        if grp.inv(t.g) != z {
            continue;
        }
        let (r, c) = (t.w * n + t.i, gs.act(z, t.w) * n + t.j);
        let cur = m.get(r, c).clone();
        m.set(r, c, &cur + &t.coeff);
    }
    m
}

/// `(T_g' (x) T_a (x) m) o_c (T_h (x) T_b (x) m') =
/// [g' = c^-1][a = c^-1 b] T_{c^-1 h} (x) T_a (x) m m'`, extended bilinearly.
pub fn product_oracle(x: &DiffElem, y: &DiffElem, gamma: usize) -> DiffElem {
    let amb = x.ambient();
    let grp = amb.group();
    let gs = amb.gset();
    let gi = grp.inv(gamma);
    let mut pairs = Vec::new();
    for s in x.terms() {
        if s.g != gi {
            continue;
        }
        for t in y.terms() {
            if s.w != gs.act(gi, t.w) || s.j != t.i {
                continue;
            }
            pairs.push((amb.index(grp.mul(gi, t.g), s.w, s.i, t.j), &s.coeff * &t.coeff));
        }
    }
    DiffElem::from_vec(amb, SparseVec::from_pairs(pairs)).unwrap()
}

/// `T_h (x) T_w -> T_h (x) T_{h^-1 w}`.
pub fn fourier_inv_oracle(amb: &Ambient, v: &SparseVec) -> SparseVec {
    let grp = amb.group();
    SparseVec::from_pairs(v.iter().map(|(k, c)| {
        let (h, w, i, j) = amb.decode(*k);
        (amb.index(h, amb.gset().act(grp.inv(h), w), i, j), c.clone())
    }))
}

/// The `g`-slice of a coefficient vector, indexed by `(w n + i) n + j`.
pub fn slice_of(amb: &Ambient, v: &SparseVec, g: usize) -> SparseVec {
    let sd = amb.slice_dim();
    SparseVec::from_pairs(v.iter().filter(|(k, _)| k / sd == g).map(|(k, c)| (k % sd, c.clone())))
}

/// `B = H (x) B0` with `B0` the span of all slices; returns `B0` on success.
pub fn product_shape(amb: &Ambient, b: &SubspaceBasis) -> Option<SubspaceBasis> {
    let sd = amb.slice_dim();
    let mut b0 = SubspaceBasis::new(sd);
    for r in b.rows() {
        for g in 0..amb.order() {
            b0.insert(slice_of(amb, r, g));
        }
    }
    if b.dim() != amb.order() * b0.dim() {
        return None;
    }
    for g in 0..amb.order() {
        for r in b0.rows() {
            if !b.contains(&r.map_indices(|k| g * sd + k)) {
                return None;
            }
        }
    }
    Some(b0)
}

/// Product in `M_n(A)`: pointwise in `A`, matrix product in `M_n`.
pub fn mna_product_oracle(amb: &Ambient, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let n = amb.n();
    let mut pairs = Vec::new();
    for (a, c) in x.iter() {
        let (w, i, j) = (a / (n * n), (a / n) % n, a % n);
        for (b, d) in y.iter() {
            let (w2, k, l) = (b / (n * n), (b / n) % n, b % n);
            if w == w2 && j == k {
                pairs.push(((w * n + i) * n + l, c * d));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Dimension of `{y : x y = 0 for x in B0}`.
pub fn right_annihilator_dim(amb: &Ambient, b0: &SubspaceBasis) -> usize {
    let sd = amb.slice_dim();
    // column k of the map y -> x y is x e_k
    let mut rows = SubspaceBasis::new(sd);
    for x in b0.rows() {
        let images: Vec<SparseVec> = (0..sd).map(|k| mna_product_oracle(amb, x, &SparseVec::unit(k))).collect();
        for r in 0..sd {
            let row = SparseVec::from_pairs((0..sd).map(|k| (k, images[k].get(r))));
            rows.insert(row);
        }
    }
    sd - rows.dim()
}

pub fn random_coeff(r: &mut ChaCha8Rng) -> Scalar {
    let k = [-2, -1, 1, 2, 3][r.gen_range(0..5)];
    int(k)
}

/// Sparse random element with `terms` terms.
pub fn random_elem(r: &mut ChaCha8Rng, amb: &Ambient, terms: usize) -> DiffElem {
    let pairs: Vec<(usize, Scalar)> = (0..terms).map(|_| (r.gen_range(0..amb.dim()), random_coeff(r))).collect();
    DiffElem::from_vec(amb, SparseVec::from_pairs(pairs)).unwrap()
}

pub fn random_invertible(r: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    loop {
        let entries: Vec<Scalar> = (0..n * n).map(|_| int(r.gen_range(-2..=3))).collect();
        let m = DenseMatrix::from_entries(n, n, entries).unwrap();
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

pub fn random_op(r: &mut ChaCha8Rng, size: usize) -> EndOp {
    let pairs: Vec<(usize, Scalar)> = (0..3).map(|_| (r.gen_range(0..size * size), random_coeff(r))).collect();
    EndOp::from_vec(size, SparseVec::from_pairs(pairs))
}

/// Points reachable from `0`, by breadth-first search over the action.
pub fn orbit_of_zero(amb: &Ambient) -> Vec<usize> {
    let gs = amb.gset();
    let mut seen = vec![false; gs.len()];
    let mut queue = vec![0];
    seen[0] = true;
    while let Some(v) = queue.pop() {
        for g in amb.group().elements() {
            let u = gs.act(g, v);
            if !seen[u] {
                seen[u] = true;
                queue.push(u);
            }
        }
    }
    (0..gs.len()).filter(|&v| seen[v]).collect()
}

/// Multiplication by `T_w` on `M_n`.
pub fn gamma_oracle(amb: &Ambient, w: usize) -> DenseMatrix {
    let n = amb.n();
    let mut m = DenseMatrix::zeros(amb.module_dim(), amb.module_dim());
    for i in 0..n {
        m.set(w * n + i, w * n + i, Scalar::one());
    }
    m
}

