//! Tables `chi: G x G -> k*`, their coset validity condition, and the
//! subalgebras `C_{G1,chi}` they define.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::conformal::{Ambient, DiffElem, SubSpan};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::Scalar;

/// `values[g][gamma] = chi(g, gamma)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiFunction {
    pub values: Vec<Vec<Scalar>>,
}

/// First failure of coset independence: the ratio
/// `chi(g,gamma) chi(h,g^-1 gamma) / chi(gh,gamma)` differs at `gamma` and
/// `gamma_prime`, both in coset number `coset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiWitness {
    pub g: usize,
    pub h: usize,
    pub coset: usize,
    pub gamma: usize,
    pub gamma_prime: usize,
}

impl ChiFunction {
    pub fn constant(order: usize, c: Scalar) -> Self {
        ChiFunction {
            values: vec![vec![c; order]; order],
        }
    }

    pub fn trivial(order: usize) -> Self {
        Self::constant(order, Scalar::one())
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        ChiFunction {
            values: (0..order).map(|g| (0..order).map(|a| f(g, a)).collect()).collect(),
        }
    }

    pub fn get(&self, g: usize, gamma: usize) -> &Scalar {
        &self.values[g][gamma]
    }

    pub fn set(&mut self, g: usize, gamma: usize, c: Scalar) {
        self.values[g][gamma] = c;
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    fn check_shape(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        if self.values.len() != n || self.values.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.values.len(),
            });
        }
        for (g, row) in self.values.iter().enumerate() {
            if let Some(a) = row.iter().position(Scalar::is_zero) {
                return Err(Error::InvalidChi(format!("chi({g}, {a}) = 0")));
            }
        }
        Ok(())
    }

    /// Divides each `chi(g, -)` on coset `G_k` by `chi(g, g_k)`, `g_k` the
    /// minimal element; the resulting `C_{G1,chi}` is unchanged.
    pub fn normalize(&self, cosets: &[Vec<usize>]) -> Result<ChiFunction> {
        let mut out = self.clone();
        for (g, row) in self.values.iter().enumerate() {
            for c in cosets {
                let rep = &row[c[0]];
                for &a in c {
                    out.values[g][a] = row[a].checked_div(rep)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().flatten().all(|c| c.as_rational().is_some())
    }
}

/// `None` when the table is valid for `g1`, otherwise the first violation
/// in the order `(g, h, coset, gamma)`.
pub fn validate_chi(group: &FiniteGroup, g1: &[usize], chi: &ChiFunction) -> Result<Option<ChiWitness>> {
    chi.check_shape(group)?;
    let cosets = group.cosets(g1)?;
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            let gi = group.inv(g);
            let ratio = |gamma: usize| -> Result<Scalar> {
                let num = chi.get(g, gamma).checked_mul(chi.get(h, group.mul(gi, gamma)))?;
                num.checked_div(chi.get(gh, gamma))
            };
            for (k, c) in cosets.iter().enumerate() {
                let first = ratio(c[0])?;
                for &gp in &c[1..] {
                    if ratio(gp)? != first {
                        return Ok(Some(ChiWitness {
                            g,
                            h,
                            coset: k,
                            gamma: c[0],
                            gamma_prime: gp,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Basis `sum_{alpha in G_k} chi(g,alpha) T_g (x) T_alpha (x) e_ij`,
/// with `V = G` the regular set.
pub fn build_c(group: &Arc<FiniteGroup>, g1: &[usize], chi: &ChiFunction, n: usize) -> Result<SubSpan> {
    if let Some(w) = validate_chi(group, g1, chi)? {
        return Err(Error::InvalidChi(format!(
            "ratio differs at g = {}, h = {}, coset {} (gamma = {} vs {})",
            w.g, w.h, w.coset, w.gamma, w.gamma_prime
        )));
    }
    let amb = Ambient::regular(Arc::clone(group), n)?;
    let cosets = group.cosets(g1)?;
    let mut gens = Vec::new();
    for g in group.elements() {
        for c in &cosets {
            for i in 0..n {
                for j in 0..n {
                    let pairs = c.iter().map(|&a| (amb.index(g, a, i, j), chi.get(g, a).clone()));
                    gens.push(DiffElem::from_vec(&amb, pairs.collect())?);
                }
            }
        }
    }
    SubSpan::span(&amb, &gens)
}

/// The C4 table with `G1 = {e, g^2}` and `chi(g, g^2) = -1` that
/// violates coset independence.
pub fn invalid_c4_example() -> (Arc<FiniteGroup>, Vec<usize>, ChiFunction) {
    let g = Arc::new(FiniteGroup::cyclic(4).expect("C4"));
    let mut chi = ChiFunction::trivial(4);
    chi.set(1, 2, Scalar::from_i64(-1));
    (g, vec![0, 2], chi)
}

/// The sign table on C2 with `G1 = G`: `chi(s, s) = -1`, all else 1.
pub fn c2_sign_example() -> ChiFunction {
    let mut chi = ChiFunction::trivial(2);
    chi.set(1, 1, Scalar::from_i64(-1));
    chi
}

/// Depth-first search over normalized tables with values in the fourth
/// roots of unity, for one valid table that is not rational.
///
/// Free values are `chi(g, alpha)` at non-representatives; `chi(e, -)` is
/// forced to 1. Returns `None` when the search space is empty or the node
/// budget runs out.
pub fn search_gaussian_chi(group: &FiniteGroup, g1: &[usize], budget: usize) -> Result<Option<ChiFunction>> {
    let cosets = group.cosets(g1)?;
    let order = group.order();
    let mut is_rep = vec![false; order];
    for c in &cosets {
        is_rep[c[0]] = true;
    }
    let free: Vec<(usize, usize)> = (1..order)
        .flat_map(|g| (0..order).map(move |a| (g, a)))
        .filter(|&(_, a)| !is_rep[a])
        .collect();
    if free.is_empty() {
        return Ok(None);
    }
    let roots: Vec<Scalar> = (0..4).map(|k| Scalar::root_of_unity(4, k)).collect();
    // exponent table, None while unassigned
    let mut exps: Vec<Vec<Option<u8>>> = vec![vec![Some(0); order]; order];
    for &(g, a) in &free {
        exps[g][a] = None;
    }
    let mut coset_of = vec![0; order];
    for (k, c) in cosets.iter().enumerate() {
        for &a in c {
            coset_of[a] = k;
        }
    }
    let mut nodes = 0usize;
    let found = dfs(group, &free, 0, &mut exps, &coset_of, &mut nodes, budget);
    Ok(found.map(|e| ChiFunction::from_fn(order, |g, a| roots[e[g][a] as usize].clone())))
}

fn dfs(
    group: &FiniteGroup,
    free: &[(usize, usize)],
    pos: usize,
    exps: &mut Vec<Vec<Option<u8>>>,
    coset_of: &[usize],
    nodes: &mut usize,
    budget: usize,
) -> Option<Vec<Vec<u8>>> {
    *nodes += 1;
    if *nodes > budget || !consistent(group, exps, coset_of) {
        return None;
    }
    if pos == free.len() {
        let full: Vec<Vec<u8>> = exps.iter().map(|r| r.iter().map(|x| x.unwrap()).collect()).collect();
        return full.iter().flatten().any(|&e| e % 2 == 1).then_some(full);
    }
    let (g, a) = free[pos];
    // odd exponents first so a non-rational table turns up early
    for e in [1u8, 0, 3, 2] {
        exps[g][a] = Some(e);
        if let Some(t) = dfs(group, free, pos + 1, exps, coset_of, nodes, budget) {
            return Some(t);
        }
    }
    exps[g][a] = None;
    None
}

/// Coset independence restricted to fully assigned ratios, additively in
/// exponents mod 4.
fn consistent(group: &FiniteGroup, exps: &[Vec<Option<u8>>], coset_of: &[usize]) -> bool {
    let order = group.order();
    let k = coset_of.iter().max().map_or(0, |m| m + 1);
    for g in 0..order {
        let gi = group.inv(g);
        for h in 0..order {
            let gh = group.mul(g, h);
            let mut seen: Vec<Option<u8>> = vec![None; k];
            for gamma in 0..order {
                let (Some(a), Some(b), Some(c)) = (exps[g][gamma], exps[h][group.mul(gi, gamma)], exps[gh][gamma])
                else {
                    continue;
                };
                let r = (a + b + 4 - c) % 4;
                match seen[coset_of[gamma]] {
                    None => seen[coset_of[gamma]] = Some(r),
                    Some(s) if s != r => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// A valid table over `Q(zeta_4)`: the brute-force search result, or
/// `chi(g, -) = i` for every `g != e` when no normalized one exists.
pub fn gaussian_chi(group: &FiniteGroup, g1: &[usize]) -> Result<ChiFunction> {
    if let Some(chi) = search_gaussian_chi(group, g1, 20_000)? {
        return Ok(chi);
    }
    let i = Scalar::zeta(4);
    Ok(ChiFunction::from_fn(group.order(), |g, _| if g == 0 { Scalar::one() } else { i.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{cend_full, cur};
    use crate::workbench::is_irreducible;

    #[test]
    fn validity_examples() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(validate_chi(&c4, &[0, 2], &ChiFunction::trivial(4)).unwrap(), None);
        let wild = ChiFunction::from_fn(4, |g, a| Scalar::from_i64((g * 5 + a + 1) as i64));
        assert_eq!(validate_chi(&c4, &[0], &wild).unwrap(), None);
        let (_, g1, bad) = invalid_c4_example();
        let w = validate_chi(&c4, &g1, &bad).unwrap().unwrap();
        assert_eq!((w.g, w.h, w.coset, w.gamma, w.gamma_prime), (1, 1, 0, 0, 2));
        let mut zero = ChiFunction::trivial(4);
        zero.set(2, 3, Scalar::zero());
        assert!(validate_chi(&c4, &[0], &zero).is_err());
    }

    #[test]
    fn build_c_examples() {
        let c3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        assert_eq!(build_c(&c3, &[0, 1, 2], &ChiFunction::trivial(3), 2).unwrap(), cur(&c3, 2).unwrap());
        assert_eq!(build_c(&c3, &[0], &ChiFunction::trivial(3), 1).unwrap(), cend_full(&c3, 1).unwrap());
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let c = build_c(&c4, &[0, 2], &ChiFunction::trivial(4), 1).unwrap();
        assert_eq!(c.dim(), 8);
        assert!(c.is_subalgebra());
        assert!(is_irreducible(&c).unwrap().is_irreducible());
        let (g, g1, bad) = invalid_c4_example();
        assert!(matches!(build_c(&g, &g1, &bad, 1), Err(Error::InvalidChi(_))));
    }

    #[test]
    fn sign_and_gaussian_tables() {
        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let c = build_c(&c2, &[0, 1], &c2_sign_example(), 1).unwrap();
        assert!(c.is_subalgebra());
        let chi = search_gaussian_chi(&c2, &[0, 1], 1000).unwrap().unwrap();
        assert_eq!(*chi.get(1, 1), Scalar::zeta(4));
        assert!(!chi.is_rational());
        assert!(build_c(&c2, &[0, 1], &chi, 2).unwrap().is_subalgebra());
        assert_eq!(search_gaussian_chi(&c2, &[0], 1000).unwrap(), None);
        let fallback = gaussian_chi(&c2, &[0]).unwrap();
        assert_eq!(validate_chi(&c2, &[0], &fallback).unwrap(), None);
    }

    #[test]
    fn normalization_keeps_the_span() {
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let chi = ChiFunction::from_fn(4, |g, _| Scalar::from_i64(g as i64 + 2));
        let cosets = c4.cosets(&[0, 2]).unwrap();
        let nchi = chi.normalize(&cosets).unwrap();
        assert_eq!(nchi, ChiFunction::trivial(4));
        assert_eq!(build_c(&c4, &[0, 2], &chi, 1).unwrap(), build_c(&c4, &[0, 2], &nchi, 1).unwrap());
    }
}
