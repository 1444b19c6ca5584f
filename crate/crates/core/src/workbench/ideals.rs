//! One-sided ideals of `Cend_n^{G,V}`, their factorization through
//! `M_n(A)`, annihilators and essentiality, simplicity, and the shift
//! functions with nonvanishing determinant.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::operators::{fourier, fourier_inv};
use crate::conformal::{product_vec, Ambient, DiffElem, SubSpan};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{left_shift, HElem};
use crate::linalg::{nullspace, span_closure, DenseMatrix, SparseVec, SubspaceBasis, UnaryStep};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// H-module generators `1 (x) T_w (x) e_ij` of the whole algebra.
pub fn module_generators(amb: &Ambient) -> Vec<SparseVec> {
    let n = amb.n();
    let mut out = Vec::new();
    for w in 0..amb.points() {
        for i in 0..n {
            for j in 0..n {
                out.push((0..amb.order()).map(|g| (amb.index(g, w, i, j), Scalar::one())).collect());
            }
        }
    }
    out
}

/// H-submodule closure of `gens` under multiplication by the whole
/// algebra on the given side(s), for every `o_gamma`.
fn ideal_closure(amb: &Ambient, gens: &[DiffElem], left: bool, right: bool) -> Result<SubSpan> {
    for g in gens {
        if g.ambient() != amb {
            return Err(Error::StructureMismatch("generator over a different ambient".into()));
        }
    }
    let grp = Arc::clone(amb.group());
    let d = amb.slice_dim();
    let xs = module_generators(amb);
    let h_steps = |v: &SparseVec| -> Vec<SparseVec> { grp.elements().map(|x| v.filter(|k| k / d == x)).collect() };
    let mults = |v: &SparseVec| -> Vec<SparseVec> {
        let mut out = Vec::new();
        for x in &xs {
            for c in grp.elements() {
                if left {
                    out.push(product_vec(amb, x, v, c));
                }
                if right {
                    out.push(product_vec(amb, v, x, c));
                }
            }
        }
        out
    };
    let unary: [UnaryStep<'_>; 2] = [&h_steps, &mults];
    let seeds: Vec<SparseVec> = gens.iter().map(|g| g.coeffs().clone()).collect();
    SubSpan::new(amb, span_closure(amb.dim(), &seeds, &unary, &[])?)
}

/// Smallest right ideal (`B o_gamma Cend in B`) containing `gens`.
pub fn right_ideal_closure(amb: &Ambient, gens: &[DiffElem]) -> Result<SubSpan> {
    ideal_closure(amb, gens, false, true)
}

/// Smallest left ideal (`Cend o_gamma B in B`) containing `gens`.
pub fn left_ideal_closure(amb: &Ambient, gens: &[DiffElem]) -> Result<SubSpan> {
    ideal_closure(amb, gens, true, false)
}

pub fn two_sided_ideal_closure(amb: &Ambient, gens: &[DiffElem]) -> Result<SubSpan> {
    ideal_closure(amb, gens, true, true)
}

/// Whether the span is an H-submodule stable under multiplication on `side`.
pub fn is_ideal(b: &SubSpan, side: Side) -> bool {
    let amb = b.ambient();
    let grp = amb.group();
    let d = amb.slice_dim();
    let xs = module_generators(amb);
    b.basis().rows().all(|r| {
        grp.elements().all(|x| b.basis().contains(&r.filter(|k| k / d == x)))
            && xs.iter().all(|x| {
                grp.elements().all(|c| {
                    let p = match side {
                        Side::Left => product_vec(amb, x, r, c),
                        Side::Right => product_vec(amb, r, x, c),
                    };
                    b.basis().contains(&p)
                })
            })
    })
}

/// Product in `M_n(A)`: `(T_w m)(T_w' m') = [w = w'] T_w m m'`, on vectors
/// indexed `(w n + i) n + j`.
pub fn mna_product(n: usize, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let nn = n * n;
    let mut out = Vec::new();
    for (kx, c) in x.iter() {
        let (w, i, j) = (kx / nn, (kx / n) % n, kx % n);
        let lo = w * nn + j * n;
        for l in 0..n {
            if let Some(d) = y.get_ref(lo + l) {
                out.push((w * nn + i * n + l, c * d));
            }
        }
    }
    SparseVec::from_pairs(out)
}

/// Matrix units `T_w (x) e_ij` of `M_n(A)`.
fn mna_units(amb: &Ambient) -> Vec<SparseVec> {
    (0..amb.slice_dim()).map(SparseVec::unit).collect()
}

/// Whether `b0` is a left (`M_n(A) b0 in b0`) or right ideal of `M_n(A)`.
pub fn is_mna_ideal(amb: &Ambient, b0: &SubspaceBasis, side: Side) -> bool {
    let n = amb.n();
    let units = mna_units(amb);
    b0.rows().all(|r| {
        units.iter().all(|u| {
            let p = match side {
                Side::Left => mna_product(n, u, r),
                Side::Right => mna_product(n, r, u),
            };
            b0.contains(&p)
        })
    })
}

/// Recovers `B0` with `B = H (x) B0` (right side) or `B = F(H (x) B0)`
/// (left side); fails when the span does not factor.
pub fn ideal_shape(b: &SubSpan, side: Side) -> Result<SubspaceBasis> {
    let amb = b.ambient();
    let src = match side {
        Side::Right => b.clone(),
        Side::Left => {
            let imgs: Vec<DiffElem> = b.elements().iter().map(fourier_inv).collect();
            SubSpan::span(amb, &imgs)?
        }
    };
    let d = amb.slice_dim();
    let slices: Vec<SubspaceBasis> = amb
        .group()
        .elements()
        .map(|g| {
            let mut s = SubspaceBasis::new(d);
            for r in src.basis().rows() {
                s.insert(r.filter(|k| k / d == g).map_indices(|k| k - g * d));
            }
            s
        })
        .collect();
    let b0 = slices[0].clone();
    if let Some(g) = slices.iter().position(|s| *s != b0) {
        return Err(Error::ShapeFailure(format!("component at g = {g} differs from the one at e")));
    }
    if src.dim() != amb.order() * b0.dim() {
        return Err(Error::ShapeFailure(format!(
            "dimension {} is not |G| * {} (not a tensor product with H)",
            src.dim(),
            b0.dim()
        )));
    }
    if !is_mna_ideal(amb, &b0, side) {
        return Err(Error::ShapeFailure(format!("B0 is not a {side:?} ideal of M_n(A)")));
    }
    Ok(b0)
}

/// `H (x) B0`, or `F(H (x) B0)` for the left side.
pub fn ideal_from_shape(amb: &Ambient, b0: &SubspaceBasis, side: Side) -> Result<SubSpan> {
    let d = amb.slice_dim();
    let mut gens = Vec::new();
    for g in amb.group().elements() {
        for r in b0.rows() {
            let x = DiffElem::from_vec(amb, r.map_indices(|k| g * d + k))?;
            gens.push(match side {
                Side::Right => x,
                Side::Left => fourier(&x),
            });
        }
    }
    SubSpan::span(amb, &gens)
}

/// Left ideal of `M_n(A)` generated by `gens`.
pub fn mna_left_ideal(amb: &Ambient, gens: &[SparseVec]) -> Result<SubspaceBasis> {
    let n = amb.n();
    let units = mna_units(amb);
    let step = |v: &SparseVec| -> Vec<SparseVec> { units.iter().map(|u| mna_product(n, u, v)).collect() };
    let unary: [UnaryStep<'_>; 1] = [&step];
    span_closure(amb.slice_dim(), gens, &unary, &[])
}

/// `{x in M_n(A) : B0 x = 0}`.
pub fn right_annihilator(amb: &Ambient, b0: &SubspaceBasis) -> SubspaceBasis {
    let n = amb.n();
    let nn = n * n;
    let d = amb.slice_dim();
    let mut eqs = SubspaceBasis::new(d);
    for r in b0.rows() {
        // (r x)_{(w,i,l)} = sum_j r_{(w,i,j)} x_{(w,j,l)}
        for w in 0..amb.points() {
            for i in 0..n {
                for l in 0..n {
                    let row: SparseVec = (0..n)
                        .filter_map(|j| r.get_ref(w * nn + i * n + j).map(|c| (w * nn + j * n + l, c.clone())))
                        .collect();
                    if !row.is_zero() {
                        eqs.insert(row);
                    }
                }
            }
        }
    }
    SubspaceBasis::from_vectors(d, nullspace(&eqs.rows_sorted(), d)).expect("in range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Essentiality {
    pub essential: bool,
    pub annihilator_dim: usize,
    pub whole_ring: bool,
}

/// Essentiality of a left ideal `B0` of `M_n(A)`, decided by the right
/// annihilator and cross-checked against `B0 = M_n(A)`.
pub fn is_essential(amb: &Ambient, b0: &SubspaceBasis) -> Result<Essentiality> {
    if b0.ambient() != amb.slice_dim() {
        return Err(Error::DimensionMismatch {
            expected: amb.slice_dim(),
            found: b0.ambient(),
        });
    }
    if !is_mna_ideal(amb, b0, Side::Left) {
        return Err(Error::InvalidInput("B0 is not a left ideal of M_n(A)".into()));
    }
    let ann = right_annihilator(amb, b0);
    let essential = ann.is_zero();
    let whole_ring = b0.is_full();
    if essential != whole_ring {
        return Err(Error::Analysis(format!(
            "annihilator test ({essential}) disagrees with whole-ring test ({whole_ring})"
        )));
    }
    Ok(Essentiality {
        essential,
        annihilator_dim: ann.dim(),
        whole_ring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Simplicity {
    Simple,
    /// `H (x) span{T_v : v in orbit} (x) M_n(k)`.
    Ideal { orbit: Vec<usize>, dim: usize },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

/// The span `H (x) span{T_v : v in points} (x) M_n(k)`.
pub fn orbit_ideal(amb: &Ambient, points: &[usize]) -> Result<SubSpan> {
    let n = amb.n();
    let mut gens = Vec::new();
    for g in amb.group().elements() {
        for &v in points {
            for i in 0..n {
                for j in 0..n {
                    gens.push(DiffElem::basis(amb, g, v, i, j));
                }
            }
        }
    }
    SubSpan::span(amb, &gens)
}

/// Simple iff `G` acts transitively on `V`; otherwise returns the ideal
/// attached to the first orbit, checked to be two-sided.
pub fn is_simple(amb: &Ambient) -> Result<Simplicity> {
    let orbits = amb.gset().orbits();
    if orbits.len() == 1 {
        return Ok(Simplicity::Simple);
    }
    let orbit = orbits[0].clone();
    let ideal = orbit_ideal(amb, &orbit)?;
    if !is_ideal(&ideal, Side::Left) || !is_ideal(&ideal, Side::Right) {
        return Err(Error::Analysis(format!("orbit span {orbit:?} is not a two-sided ideal")));
    }
    Ok(Simplicity::Ideal {
        dim: ideal.dim(),
        orbit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFunctions {
    pub functions: Vec<HElem>,
    pub z: usize,
    /// `det[(L_{g_i} f_j)(z)]`.
    pub determinant: Scalar,
}

/// `f_j = T_{g_j z}` for the first `z` in `u`, so `(L_{g_i} f_j)(z) = [i = j]`.
pub fn construct_shift_functions(group: &Arc<FiniteGroup>, g_list: &[usize], u: &[usize]) -> Result<ShiftFunctions> {
    let Some(&z) = u.first() else {
        return Err(Error::InvalidInput("U is empty".into()));
    };
    for (a, &g) in g_list.iter().enumerate() {
        if g >= group.order() {
            return Err(Error::OutOfRange(format!("group element {g}")));
        }
        if g_list[..a].contains(&g) {
            return Err(Error::InvalidInput(format!("duplicate element {g}")));
        }
    }
    if u.iter().any(|&x| x >= group.order()) {
        return Err(Error::OutOfRange("element of U".into()));
    }
    let functions: Vec<HElem> = g_list.iter().map(|&g| HElem::basis(group, group.mul(g, z))).collect();
    let m = g_list.len();
    let mut mat = DenseMatrix::zeros(m, m);
    for (i, &g) in g_list.iter().enumerate() {
        for (j, f) in functions.iter().enumerate() {
            mat.set(i, j, left_shift(g, f).value(z).clone());
        }
    }
    Ok(ShiftFunctions {
        functions,
        z,
        determinant: mat.determinant()?,
    })
}
