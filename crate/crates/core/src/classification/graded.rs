//! First-slot grading `C = sum_g T_g (x) S_g` and the structure of `S_e`
//! for irreducible subalgebras.

use serde::Serialize;

use crate::conformal::{Ambient, SubSpan};
use crate::error::{Error, Result};
use crate::linalg::{kernel_partition, solve_combination, DenseMatrix, MnMap, SparseVec, SubspaceBasis};
use crate::workbench::{is_irreducible, mna_product};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub amb: Ambient,
    /// `S_g` inside `A (x) M_n(k)`, indexed `(w n + i) n + j`.
    pub components: Vec<SubspaceBasis>,
    /// Pairs `(g, h)` with `S_g (L_{g^-1} S_h)` not inside `S_{gh}`.
    pub graded_failures: Vec<(usize, usize)>,
    /// Supports `G_k`, filled by [`analyze_se`].
    pub cosets: Vec<Vec<usize>>,
    pub subgroup: Vec<usize>,
    /// `theta_alpha = pi_alpha o pi_{g_k}^-1` for every point, filled by [`analyze_se`].
    pub theta: Vec<MnMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingSummary {
    pub component_dims: Vec<usize>,
    pub graded_failures: Vec<(usize, usize)>,
    pub cosets: Vec<Vec<usize>>,
    pub subgroup: Vec<usize>,
}

impl GradedDecomposition {
    pub fn summary(&self) -> GradingSummary {
        GradingSummary {
            component_dims: self.components.iter().map(SubspaceBasis::dim).collect(),
            graded_failures: self.graded_failures.clone(),
            cosets: self.cosets.clone(),
            subgroup: self.subgroup.clone(),
        }
    }
}

/// `S_g` for every `g`; fails if `sum_g T_g (x) S_g` is not the input.
pub fn components(c: &SubSpan) -> Result<Vec<SubspaceBasis>> {
    let amb = c.ambient();
    let d = amb.slice_dim();
    let comps: Vec<SubspaceBasis> = amb
        .group()
        .elements()
        .map(|g| {
            let mut s = SubspaceBasis::new(d);
            for r in c.basis().rows() {
                s.insert(r.filter(|k| k / d == g).map_indices(|k| k - g * d));
            }
            s
        })
        .collect();
    let total: usize = comps.iter().map(SubspaceBasis::dim).sum();
    if total != c.dim() {
        return Err(Error::Analysis(format!(
            "span is not first-slot homogeneous: components add up to {total}, span has {}",
            c.dim()
        )));
    }
    Ok(comps)
}

/// `L_{g^-1} T_x = T_{g x}` on `A (x) M_n(k)`.
fn shift_slice(amb: &Ambient, g: usize, y: &SparseVec) -> SparseVec {
    let nn = amb.n() * amb.n();
    let gset = amb.gset();
    y.map_indices(|k| gset.act(g, k / nn) * nn + k % nn)
}

pub fn graded_failures(amb: &Ambient, comps: &[SubspaceBasis]) -> Vec<(usize, usize)> {
    let grp = amb.group();
    let n = amb.n();
    let mut out = Vec::new();
    for g in grp.elements() {
        for h in grp.elements() {
            let target = &comps[grp.mul(g, h)];
            let shifted: Vec<SparseVec> = comps[h].rows().map(|y| shift_slice(amb, g, y)).collect();
            let ok = comps[g]
                .rows()
                .all(|x| shifted.iter().all(|y| target.contains(&mna_product(n, x, y))));
            if !ok {
                out.push((g, h));
            }
        }
    }
    out
}

/// Components and the graded containment report.
pub fn grading(c: &SubSpan) -> Result<GradedDecomposition> {
    let comps = components(c)?;
    let failures = graded_failures(c.ambient(), &comps);
    Ok(GradedDecomposition {
        amb: c.ambient().clone(),
        components: comps,
        graded_failures: failures,
        cosets: Vec::new(),
        subgroup: Vec::new(),
        theta: Vec::new(),
    })
}

fn block(v: &SparseVec, w: usize, nn: usize) -> SparseVec {
    v.filter(|k| k / nn == w).map_indices(|k| k - w * nn)
}

/// `x` in `span` with `pi_{reps[k]}(x) = target_k`; `None` if unsolvable.
pub(crate) fn solve_on_reps(span: &SubspaceBasis, reps: &[usize], nn: usize, targets: &[SparseVec]) -> Option<SparseVec> {
    let rows = span.rows_sorted();
    let cols: Vec<SparseVec> = rows
        .iter()
        .map(|r| {
            let mut pairs = Vec::new();
            for (k, &g) in reps.iter().enumerate() {
                for (i, c) in block(r, g, nn).iter() {
                    pairs.push((k * nn + i, c.clone()));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let mut tp = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        for (i, c) in t.iter() {
            tp.push((k * nn + i, c.clone()));
        }
    }
    let coeffs = solve_combination(&cols, &SparseVec::from_pairs(tp))?;
    Some(crate::linalg::expand(&rows, &coeffs))
}

/// Full analysis of `S_e` for an irreducible subalgebra over `V = G`:
/// density, supports `G_k = g_k G1`, and the automorphisms `theta_alpha`.
pub fn analyze_se(c: &SubSpan) -> Result<GradedDecomposition> {
    let amb = c.ambient();
    if amb.points() != amb.order() {
        return Err(Error::InvalidInput("analysis needs V = G".into()));
    }
    c.check_subalgebra()?;
    if !is_irreducible(c)?.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let mut dec = grading(c)?;
    let grp = amb.group();
    let n = amb.n();
    let nn = n * n;
    for g in grp.elements() {
        for w in 0..amb.points() {
            let mut proj = SubspaceBasis::new(nn);
            for r in dec.components[g].rows() {
                proj.insert(block(r, w, nn));
            }
            if !proj.is_full() {
                return Err(Error::Analysis(format!("density fails at g = {g}, gamma = {w}")));
            }
        }
    }
    let se = &dec.components[0];
    let mut classes = kernel_partition(se, amb.points(), nn)?;
    classes.sort();
    let g1 = classes
        .iter()
        .find(|c| c.contains(&0))
        .cloned()
        .expect("e lies in some class");
    if !grp.is_subgroup(&g1) {
        return Err(Error::Analysis(format!("support {g1:?} of e is not a subgroup")));
    }
    let cosets = grp.cosets(&g1)?;
    if cosets != classes {
        return Err(Error::Analysis(format!("supports {classes:?} are not the cosets of {g1:?}")));
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let mut theta = vec![MnMap::identity(n); amb.points()];
    for (k, coset) in cosets.iter().enumerate() {
        let mut mats: Vec<DenseMatrix> = vec![DenseMatrix::zeros(nn, nn); coset.len()];
        for u in 0..nn {
            let targets: Vec<SparseVec> = (0..reps.len())
                .map(|l| if l == k { SparseVec::unit(u) } else { SparseVec::new() })
                .collect();
            let x = solve_on_reps(se, &reps, nn, &targets)
                .ok_or_else(|| Error::Analysis(format!("pi_{} is not onto on S_e", reps[k])))?;
            for (m, &alpha) in coset.iter().enumerate() {
                for (i, c) in block(&x, alpha, nn).iter() {
                    mats[m].set(*i, u, c.clone());
                }
            }
        }
        for (m, &alpha) in coset.iter().enumerate() {
            let map = MnMap::new(n, mats[m].clone())?;
            if let Some(w) = map.multiplicativity_witness() {
                return Err(Error::NotAutomorphism(format!("theta_{alpha}: {w}")));
            }
            if map.matrix().rank() != nn {
                return Err(Error::NotAutomorphism(format!("theta_{alpha} is singular")));
            }
            theta[alpha] = map;
        }
    }
    dec.cosets = cosets;
    dec.subgroup = g1;
    dec.theta = theta;
    Ok(dec)
}
