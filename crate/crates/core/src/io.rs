//! JSON job files.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classification::ChiFunction;
use crate::conformal::{Ambient, DiffElem};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet};
use crate::linalg::DenseMatrix;
use crate::operad::BinaryTree;
use crate::scalar::{Field, Scalar};
use crate::weyl::WeylElem;
use crate::workbench::Side;

/// A group by name (`C4`, `D4`, `S3`, `C2xC2`, `trivial`) or by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Def(GroupDef),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDef {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Product(Vec<GroupSpec>),
    /// Multiplication table with identity `0`.
    Table(Vec<Vec<usize>>),
}

fn parse_group_name(s: &str) -> Result<FiniteGroup> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = t.to_ascii_lowercase();
    if lower == "trivial" || lower == "1" {
        return Ok(FiniteGroup::trivial());
    }
    let factors: Vec<&str> = lower.split(['x', '*']).collect();
    if factors.len() > 1 {
        let mut acc = parse_group_name(factors[0])?;
        for f in &factors[1..] {
            acc = FiniteGroup::product(&acc, &parse_group_name(f)?);
        }
        return Ok(acc);
    }
    let bad = || Error::InvalidInput(format!("unknown group name {s:?}"));
    let (kind, digits) = lower.split_at(1);
    let k: usize = digits.parse().map_err(|_| bad())?;
    match kind {
        "c" | "z" => FiniteGroup::cyclic(k),
        "d" => FiniteGroup::dihedral(k),
        "s" => FiniteGroup::symmetric(k),
        _ => Err(bad()),
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Name(s) => parse_group_name(s),
            GroupSpec::Def(GroupDef::Cyclic(k)) => FiniteGroup::cyclic(*k),
            GroupSpec::Def(GroupDef::Dihedral(k)) => FiniteGroup::dihedral(*k),
            GroupSpec::Def(GroupDef::Symmetric(k)) => FiniteGroup::symmetric(*k),
            GroupSpec::Def(GroupDef::Product(parts)) => {
                let Some(first) = parts.first() else {
                    return Err(Error::InvalidInput("empty product".into()));
                };
                let mut acc = first.build()?;
                for p in &parts[1..] {
                    acc = FiniteGroup::product(&acc, &p.build()?);
                }
                Ok(acc)
            }
            GroupSpec::Def(GroupDef::Table(rows)) => FiniteGroup::from_table(rows.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GSetSpec {
    /// `G` acting on itself by left multiplication.
    Regular,
    /// `G/H` for the listed subgroup.
    Cosets(Vec<usize>),
    /// That many fixed points.
    Trivial(usize),
    Union(Vec<GSetSpec>),
    /// `table[g][v] = g . v`.
    Table(Vec<Vec<usize>>),
}

impl GSetSpec {
    pub fn build(&self, group: &Arc<FiniteGroup>) -> Result<GSet> {
        match self {
            GSetSpec::Regular => Ok(GSet::regular(Arc::clone(group))),
            GSetSpec::Cosets(h) => GSet::cosets(Arc::clone(group), h),
            GSetSpec::Trivial(k) => GSet::trivial(Arc::clone(group), *k),
            GSetSpec::Union(parts) => {
                let built = parts.iter().map(|p| p.build(group)).collect::<Result<Vec<_>>>()?;
                GSet::union(&built)
            }
            GSetSpec::Table(rows) => GSet::from_table(Arc::clone(group), rows.clone()),
        }
    }
}

/// One term `coeff T_g (x) T_w (x) e_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub g: usize,
    pub w: usize,
    pub i: usize,
    pub j: usize,
    #[serde(default = "Scalar::one")]
    pub coeff: Scalar,
}

pub fn diff_elem_from_terms(amb: &Ambient, terms: &[TermSpec]) -> Result<DiffElem> {
    let mut x = DiffElem::zero(amb);
    for t in terms {
        if t.g >= amb.order() || t.w >= amb.points() || t.i >= amb.n() || t.j >= amb.n() {
            return Err(Error::OutOfRange(format!(
                "term T_{} (x) T_{} (x) e_{}{} outside the ambient",
                t.g, t.w, t.i, t.j
            )));
        }
        x = x.add(&DiffElem::basis(amb, t.g, t.w, t.i, t.j).scale(&t.coeff))?;
    }
    Ok(x)
}

pub fn diff_elem_to_terms(x: &DiffElem) -> Vec<TermSpec> {
    x.terms()
        .map(|t| TermSpec {
            g: t.g,
            w: t.w,
            i: t.i,
            j: t.j,
            coeff: t.coeff,
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylJob {
    /// Degree bound `D` for the first-Weyl-algebra check.
    pub bound: Option<usize>,
    /// Maximal `T`- and `v`-degree in the exhaustive identity checks.
    pub degree: Option<usize>,
    pub x: Option<WeylElem>,
    pub y: Option<WeylElem>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadJob {
    /// Largest total for the bijectivity check.
    pub max_total: Option<usize>,
    /// Number of random compositions for associativity.
    pub samples: Option<usize>,
    pub tree: Option<BinaryTree>,
    pub inputs: Option<Vec<BinaryTree>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Option<String>,
    pub group: Option<GroupSpec>,
    pub gset: Option<GSetSpec>,
    pub n: Option<usize>,
    pub field: Option<String>,
    /// Each generator is a list of terms.
    pub generators: Option<Vec<Vec<TermSpec>>>,
    pub subgroup: Option<Vec<usize>>,
    pub chi: Option<ChiFunction>,
    pub side: Option<Side>,
    /// Close the generators into an ideal first (default true).
    pub closure: Option<bool>,
    /// Conjugators `U_alpha` applied to the input before classification.
    pub twist: Option<Vec<DenseMatrix>>,
    /// Random sample size in place of exhaustive checks.
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub weyl: Option<WeylJob>,
    pub operad: Option<OperadJob>,
    pub output: Option<String>,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn field(&self) -> Result<Field> {
        self.field.as_deref().unwrap_or("Q").parse()
    }

    pub fn group(&self) -> Result<Arc<FiniteGroup>> {
        let spec = self
            .group
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("job needs a group".into()))?;
        Ok(Arc::new(spec.build()?))
    }

    pub fn ambient(&self) -> Result<Ambient> {
        let group = self.group()?;
        let gset = match &self.gset {
            Some(s) => s.build(&group)?,
            None => GSet::regular(Arc::clone(&group)),
        };
        let n = self.n.unwrap_or(1);
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        Ambient::new(Arc::new(gset), n)
    }

    pub fn generators(&self, amb: &Ambient) -> Result<Vec<DiffElem>> {
        self.generators
            .iter()
            .flatten()
            .map(|g| diff_elem_from_terms(amb, g))
            .collect()
    }

    /// Every scalar appearing in the job.
    pub fn scalars(&self) -> Vec<&Scalar> {
        let mut out: Vec<&Scalar> = Vec::new();
        for g in self.generators.iter().flatten() {
            out.extend(g.iter().map(|t| &t.coeff));
        }
        if let Some(chi) = &self.chi {
            out.extend(chi.values.iter().flatten());
        }
        for m in self.twist.iter().flatten() {
            out.extend(m.entries());
        }
        if let Some(w) = &self.weyl {
            for x in [&w.x, &w.y].into_iter().flatten() {
                out.extend(x.terms().map(|t| t.2));
            }
        }
        out
    }

    /// Rejects scalars outside the selected field.
    pub fn check_field(&self, field: Field) -> Result<()> {
        if let Some(c) = self.scalars().into_iter().find(|c| !field.contains(c)) {
            return Err(Error::InvalidInput(format!("scalar {c} does not lie in {field}")));
        }
        Ok(())
    }
}
