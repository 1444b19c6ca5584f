//! Reading `chi` off a normalized subalgebra and the full reduction of an
//! irreducible subalgebra to some `C_{G1,chi}`.

use serde::Serialize;

use super::automorphism::{apply_automorphism, build_sigma, ConfAutomorphism};
use super::chi::{build_c, validate_chi, ChiFunction};
use super::graded::{analyze_se, components, solve_on_reps, GradedDecomposition};
use crate::conformal::SubSpan;
use crate::error::{Error, Result};
use crate::linalg::{skolem_noether, DenseMatrix, SparseVec};
use crate::scalar::Scalar;

/// `chi(g, alpha)` from `pi_alpha(x) = chi(g, alpha) pi_{g_k}(x)` on
/// `x in S_g`, with `chi(g, g_k) = 1`; errors when some `sigma_{g,alpha}`
/// is not scalar.
pub fn extract_chi(d: &GradedDecomposition, c: &SubSpan) -> Result<ChiFunction> {
    let amb = c.ambient();
    let grp = amb.group();
    let comps = components(c)?;
    let nn = amb.n() * amb.n();
    let reps: Vec<usize> = d.cosets.iter().map(|k| k[0]).collect();
    if reps.is_empty() {
        return Err(Error::InvalidInput("decomposition has no cosets".into()));
    }
    let mut chi = ChiFunction::trivial(amb.order());
    for g in grp.elements() {
        let s = &comps[g];
        if s.dim() != reps.len() * nn {
            return Err(Error::Analysis(format!("S_{g} has dimension {}, not {}", s.dim(), reps.len() * nn)));
        }
        for (k, coset) in d.cosets.iter().enumerate() {
            let mut ratios: Vec<Option<Scalar>> = vec![None; amb.points()];
            for u in 0..nn {
                let targets: Vec<SparseVec> = (0..reps.len())
                    .map(|l| if l == k { SparseVec::unit(u) } else { SparseVec::new() })
                    .collect();
                let x = solve_on_reps(s, &reps, nn, &targets)
                    .ok_or_else(|| Error::Analysis(format!("pi_{} is not onto on S_{g}", reps[k])))?;
                for alpha in 0..amb.points() {
                    let piece = x.filter(|i| i / nn == alpha).map_indices(|i| i - alpha * nn);
                    if !coset.contains(&alpha) {
                        if !piece.is_zero() {
                            return Err(Error::Analysis(format!("S_{g} couples coset {k} with point {alpha}")));
                        }
                        continue;
                    }
                    let r = piece.get(u);
                    if r.is_zero() || piece != SparseVec::single(u, r.clone()) {
                        return Err(Error::Analysis(format!("sigma_({g},{alpha}) is not scalar")));
                    }
                    match &ratios[alpha] {
                        None => ratios[alpha] = Some(r),
                        Some(prev) if *prev != r => {
                            return Err(Error::Analysis(format!("sigma_({g},{alpha}) is not scalar")));
                        }
                        _ => {}
                    }
                }
            }
            for &alpha in coset {
                chi.set(g, alpha, ratios[alpha].clone().expect("set above"));
            }
        }
    }
    if let Some(w) = validate_chi(grp, &d.subgroup, &chi)? {
        return Err(Error::InvalidChi(format!("extracted table fails at {w:?}")));
    }
    Ok(chi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub subgroup: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
    pub chi: ChiFunction,
    pub sigma: ConfAutomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    pub subgroup: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
    pub chi: ChiFunction,
    pub sigma_conjugators: Vec<DenseMatrix>,
}

impl Canonical {
    pub fn report(&self) -> CanonicalReport {
        CanonicalReport {
            subgroup: self.subgroup.clone(),
            cosets: self.cosets.clone(),
            chi: self.chi.clone(),
            sigma_conjugators: self.sigma.conjugators().to_vec(),
        }
    }
}

/// Finds `sigma` with `sigma(C) = C_{G1,chi}`, `chi` normalized at the
/// minimal coset representatives.
pub fn canonicalize(c: &SubSpan) -> Result<Canonical> {
    let amb = c.ambient();
    let d = analyze_se(c)?;
    let mut family = Vec::with_capacity(amb.points());
    for t in &d.theta {
        family.push(skolem_noether(t)?.inverse()?);
    }
    let sigma = build_sigma(amb, family)?;
    let normalized = apply_automorphism(&sigma, c)?;
    let chi = extract_chi(&d, &normalized)?;
    let expected = build_c(amb.group(), &d.subgroup, &chi, amb.n())?;
    if expected != normalized {
        return Err(Error::Analysis("normalized span differs from C_{G1,chi}".into()));
    }
    Ok(Canonical {
        subgroup: d.subgroup,
        cosets: d.cosets,
        chi,
        sigma,
    })
}
