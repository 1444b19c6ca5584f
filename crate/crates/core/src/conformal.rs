//! Elements of `H (x) A (x) M_n(k)`, the products `x o_g y` of the
//! differential conformal algebra, the H-module structure, and checkers for
//! the conformal axioms and associativity.
//!
//! A basis element `T_g (x) T_w (x) e_ij` has flat index
//! `((g |V| + w) n + i) n + j`. As an operator family it is supported at
//! `z = g^-1`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet};
use crate::hopf::{coaction, left_shift, AElem, HElem};
use crate::linalg::{span_closure, BinaryStep, DenseMatrix, SparseVec, SubspaceBasis, UnaryStep};
use crate::scalar::Scalar;

/// The data `(G, V, n)` fixing the ambient `Cend_n^{G,V}`.
#[derive(Clone)]
pub struct Ambient {
    gset: Arc<GSet>,
    n: usize,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && (Arc::ptr_eq(&self.gset, &other.gset) || *self.gset == *other.gset)
    }
}

impl Eq for Ambient {}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cend_{}({:?})", self.n, self.gset)
    }
}

impl Ambient {
    pub fn new(gset: Arc<GSet>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        Ok(Ambient { gset, n })
    }

    /// `V = G` with left multiplication.
    pub fn regular(group: Arc<FiniteGroup>, n: usize) -> Result<Self> {
        Self::new(Arc::new(GSet::regular(group)), n)
    }

    pub fn gset(&self) -> &Arc<GSet> {
        &self.gset
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.gset.group()
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    pub fn points(&self) -> usize {
        self.gset.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of one first-slot component `A (x) M_n(k)`.
    pub fn slice_dim(&self) -> usize {
        self.points() * self.n * self.n
    }

    /// Dimension of `H (x) A (x) M_n(k)`.
    pub fn dim(&self) -> usize {
        self.order() * self.slice_dim()
    }

    /// Dimension of `M_n = A (x) k^n`.
    pub fn module_dim(&self) -> usize {
        self.points() * self.n
    }

    pub fn index(&self, g: usize, w: usize, i: usize, j: usize) -> usize {
        ((g * self.points() + w) * self.n + i) * self.n + j
    }

    pub fn decode(&self, k: usize) -> (usize, usize, usize, usize) {
        let n = self.n;
        let j = k % n;
        let i = (k / n) % n;
        let w = (k / (n * n)) % self.points();
        let g = k / self.slice_dim();
        (g, w, i, j)
    }

    fn check(&self, other: &Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::StructureMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// Element of `H (x) A (x) M_n(k)`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffElem {
    amb: Ambient,
    coeffs: SparseVec,
}

impl fmt::Debug for DiffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter() {
            let (g, w, i, j) = self.amb.decode(*k);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) T{g}*T{w}*e{i}{j}")?;
        }
        Ok(())
    }
}

/// One term `c T_g (x) T_w (x) e_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub g: usize,
    pub w: usize,
    pub i: usize,
    pub j: usize,
    pub coeff: Scalar,
}

impl DiffElem {
    pub fn zero(amb: &Ambient) -> Self {
        DiffElem {
            amb: amb.clone(),
            coeffs: SparseVec::new(),
        }
    }

    pub fn from_vec(amb: &Ambient, coeffs: SparseVec) -> Result<Self> {
        if let Some(m) = coeffs.max_index() {
            if m >= amb.dim() {
                return Err(Error::DimensionMismatch {
                    expected: amb.dim(),
                    found: m + 1,
                });
            }
        }
        Ok(DiffElem {
            amb: amb.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_vec_unchecked(amb: &Ambient, coeffs: SparseVec) -> Self {
        DiffElem {
            amb: amb.clone(),
            coeffs,
        }
    }

    pub fn basis(amb: &Ambient, g: usize, w: usize, i: usize, j: usize) -> Self {
        DiffElem {
            amb: amb.clone(),
            coeffs: SparseVec::unit(amb.index(g, w, i, j)),
        }
    }

    /// `T_g (x) T_w (x) m`.
    pub fn term(amb: &Ambient, g: usize, w: usize, m: &DenseMatrix) -> Result<Self> {
        let n = amb.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.rows(),
            });
        }
        if g >= amb.order() || w >= amb.points() {
            return Err(Error::OutOfRange(format!("T_{g} (x) T_{w}")));
        }
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        Ok(DiffElem {
            amb: amb.clone(),
            coeffs: SparseVec::from_pairs(pairs.map(|(i, j)| (amb.index(g, w, i, j), m.get(i, j).clone()))),
        })
    }

    /// `h (x) f (x) m`.
    pub fn tensor(amb: &Ambient, h: &HElem, f: &AElem, m: &DenseMatrix) -> Result<Self> {
        if **h.group() != **amb.group() || **f.gset() != **amb.gset() {
            return Err(Error::StructureMismatch("tensor factors over a different (G, V)".into()));
        }
        let mut pairs = Vec::new();
        for g in 0..amb.order() {
            let hv = h.value(g);
            if hv.is_zero() {
                continue;
            }
            for w in 0..amb.points() {
                let fv = f.value(w);
                if fv.is_zero() {
                    continue;
                }
                let c = hv * fv;
                for i in 0..amb.n() {
                    for j in 0..amb.n() {
                        let mij = m.get(i, j);
                        if !mij.is_zero() {
                            pairs.push((amb.index(g, w, i, j), &c * mij));
                        }
                    }
                }
            }
        }
        Ok(DiffElem {
            amb: amb.clone(),
            coeffs: SparseVec::from_pairs(pairs),
        })
    }

    /// `1 (x) 1 (x) E`, whose operator family is `z -> L_z`.
    pub fn left_shift_element(amb: &Ambient) -> Self {
        let h = HElem::one(amb.group());
        let f = AElem::one(amb.gset());
        Self::tensor(amb, &h, &f, &DenseMatrix::identity(amb.n())).unwrap()
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> SparseVec {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.coeffs.iter().map(|(k, c)| {
            let (g, w, i, j) = self.amb.decode(*k);
            Term {
                g,
                w,
                i,
                j,
                coeff: c.clone(),
            }
        })
    }

    pub fn add(&self, other: &DiffElem) -> Result<DiffElem> {
        self.amb.check(&other.amb)?;
        Ok(DiffElem {
            amb: self.amb.clone(),
            coeffs: self.coeffs.add(&other.coeffs),
        })
    }

    pub fn sub(&self, other: &DiffElem) -> Result<DiffElem> {
        self.amb.check(&other.amb)?;
        Ok(DiffElem {
            amb: self.amb.clone(),
            coeffs: self.coeffs.sub(&other.coeffs),
        })
    }

    pub fn scale(&self, c: &Scalar) -> DiffElem {
        DiffElem {
            amb: self.amb.clone(),
            coeffs: self.coeffs.scale(c),
        }
    }

    /// Matrix coefficient of `T_g (x) T_w`.
    pub fn component(&self, g: usize, w: usize) -> DenseMatrix {
        let n = self.amb.n();
        let mut m = DenseMatrix::zeros(n, n);
        let lo = self.amb.index(g, w, 0, 0);
        for (k, c) in self.coeffs.iter() {
            if *k >= lo && *k < lo + n * n {
                let r = k - lo;
                m.set(r / n, r % n, c.clone());
            }
        }
        m
    }

    /// First-slot component `S_g` part, as a vector in `A (x) M_n(k)`.
    pub fn slice(&self, g: usize) -> SparseVec {
        let d = self.amb.slice_dim();
        self.coeffs
            .filter(|k| k / d == g)
            .map_indices(|k| k - g * d)
    }
}

/// `x o_gamma y` by the basis closed form
/// `(T_g' T_a m) o_c (T_h T_b m') = [g' = c^-1][a = c^-1 b] T_{c^-1 h} T_a m m'`.
pub fn diff_product(x: &DiffElem, y: &DiffElem, gamma: usize) -> Result<DiffElem> {
    x.amb.check(&y.amb)?;
    Ok(diff_product_unchecked(x, y, gamma))
}

pub(crate) fn diff_product_unchecked(x: &DiffElem, y: &DiffElem, gamma: usize) -> DiffElem {
    let amb = &x.amb;
    DiffElem {
        amb: amb.clone(),
        coeffs: product_vec(amb, &x.coeffs, &y.coeffs, gamma),
    }
}

/// Closed-form product on raw coefficient vectors.
pub(crate) fn product_vec(amb: &Ambient, x: &SparseVec, y: &SparseVec, gamma: usize) -> SparseVec {
    if x.is_zero() || y.is_zero() {
        return SparseVec::new();
    }
    let grp = amb.group();
    let gset = amb.gset();
    let gi = grp.inv(gamma);
    let mut out = Vec::new();
    for (kx, c) in x.iter() {
        let (g1, a, i, j) = amb.decode(*kx);
        if g1 != gi {
            continue;
        }
        for (ky, d) in y.iter() {
            let (h, b, k, l) = amb.decode(*ky);
            if j != k || gset.act(gi, b) != a {
                continue;
            }
            out.push((amb.index(grp.mul(gi, h), a, i, l), c * d));
        }
    }
    SparseVec::from_pairs(out)
}

/// `x o_gamma y` by literal substitution into
/// `(h (x) a) o_c (f (x) b) = h(c^-1) b_(1)(c) L_c f (x) a b_(2)`,
/// with the coaction of `A (x) M_n(k)` acting on the `A` factor.
pub fn diff_product_sweedler(x: &DiffElem, y: &DiffElem, gamma: usize) -> Result<DiffElem> {
    x.amb.check(&y.amb)?;
    let amb = &x.amb;
    let grp = amb.group();
    let gset = amb.gset();
    let n = amb.n();
    let mut acc = DiffElem::zero(amb);
    for tx in x.terms() {
        let h = HElem::basis(grp, tx.g);
        let h_at = h.value(grp.inv(gamma)).clone();
        if h_at.is_zero() {
            continue;
        }
        let a_fun = AElem::basis(gset, tx.w);
        let a_mat = DenseMatrix::unit(n, tx.i, tx.j).scale(&tx.coeff);
        for ty in y.terms() {
            let f = HElem::basis(grp, ty.g);
            let shifted = left_shift(gamma, &f);
            let b_mat = DenseMatrix::unit(n, ty.i, ty.j).scale(&ty.coeff);
            let m = a_mat.mul(&b_mat)?;
            for (g, v, c) in coaction(&AElem::basis(gset, ty.w)).terms() {
                let b1 = HElem::basis(grp, g).value(gamma).clone();
                if b1.is_zero() {
                    continue;
                }
                let prod_fun = a_fun.mul(&AElem::basis(gset, v));
                let coeff = &(&h_at * &b1) * c;
                let piece = DiffElem::tensor(amb, &shifted, &prod_fun, &m.scale(&coeff))?;
                acc = acc.add(&piece)?;
            }
        }
    }
    Ok(acc)
}

/// `f . (T_h (x) y) = f(h) (T_h (x) y)`, the action `(fa)(g) = f(g^-1) a(g)`
/// read through the support convention `z = h^-1`.
pub fn h_action(f: &HElem, x: &DiffElem) -> Result<DiffElem> {
    if **f.group() != **x.amb.group() {
        return Err(Error::StructureMismatch("H-action by a function on a different group".into()));
    }
    let d = x.amb.slice_dim();
    let pairs = x.coeffs.iter().map(|(k, c)| (*k, c * f.value(k / d)));
    Ok(DiffElem {
        amb: x.amb.clone(),
        coeffs: SparseVec::from_pairs(pairs),
    })
}

/// A family of products `o_gamma`; lets checkers run against alternative
/// or deliberately broken implementations.
pub trait ConformalProduct {
    fn product(&self, x: &DiffElem, y: &DiffElem, gamma: usize) -> DiffElem;
}

/// The closed form.
pub struct ClosedForm;

impl ConformalProduct for ClosedForm {
    fn product(&self, x: &DiffElem, y: &DiffElem, gamma: usize) -> DiffElem {
        diff_product(x, y, gamma).expect("same ambient")
    }
}

/// The literal Sweedler expansion.
pub struct Sweedler;

impl ConformalProduct for Sweedler {
    fn product(&self, x: &DiffElem, y: &DiffElem, gamma: usize) -> DiffElem {
        diff_product_sweedler(x, y, gamma).expect("same ambient")
    }
}

/// Closed form with the sign of one product-table entry flipped.
pub struct FlippedSign {
    pub left: usize,
    pub right: usize,
    pub gamma: usize,
}

impl ConformalProduct for FlippedSign {
    fn product(&self, x: &DiffElem, y: &DiffElem, gamma: usize) -> DiffElem {
        let amb = &x.amb;
        // bilinear extension of the modified table
        let mut acc = SparseVec::new();
        for (kx, c) in x.coeffs.iter() {
            for (ky, d) in y.coeffs.iter() {
                let mut p = product_vec(amb, &SparseVec::unit(*kx), &SparseVec::unit(*ky), gamma);
                if *kx == self.left && *ky == self.right && gamma == self.gamma {
                    p = p.neg();
                }
                acc = acc.axpy(&(c * d), &p);
            }
        }
        DiffElem::from_vec_unchecked(amb, acc)
    }
}

/// First failing instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub axiom: String,
    /// Indices into the sample.
    pub elements: Vec<usize>,
    /// Group elements involved (`g`, then `gamma` or the `T_x` of `h`).
    pub group_elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Regularity is automatic for a finite group.
    pub g1_vacuous: bool,
    pub checked_g2: usize,
    pub checked_g3: usize,
    pub checked_assoc: usize,
    pub witness: Option<AxiomWitness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Which group-element tuples to run the checks over.
#[derive(Clone, Debug)]
pub enum AxiomScope {
    /// Every `g`, `gamma` and `T_x`.
    Exhaustive,
    /// Only pairs/triples of sample elements listed here, each with
    /// explicit group elements `(g, gamma, x)`.
    Listed(Vec<(usize, usize, usize, usize, usize, usize)>),
}

/// Checks (G2), (G3) and `a o_g (b o_c c) = (a o_g b) o_{cg} c` on a sample.
pub fn check_axioms(sample: &[DiffElem], prod: &dyn ConformalProduct, scope: &AxiomScope) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        g1_vacuous: true,
        checked_g2: 0,
        checked_g3: 0,
        checked_assoc: 0,
        witness: None,
    };
    let Some(first) = sample.first() else {
        return Ok(report);
    };
    let amb = first.amb.clone();
    for s in sample {
        amb.check(&s.amb)?;
    }
    let grp = Arc::clone(amb.group());
    let fail = |axiom: &str, elements: Vec<usize>, group_elements: Vec<usize>| AxiomWitness {
        axiom: axiom.into(),
        elements,
        group_elements,
    };
    let g2 = |a: usize, b: usize, g: usize, x: usize| -> Result<bool> {
        let h = HElem::basis(&grp, x);
        let lhs = prod.product(&h_action(&h, &sample[a])?, &sample[b], g);
        let rhs = prod.product(&sample[a], &sample[b], g).scale(h.value(grp.inv(g)));
        Ok(lhs == rhs)
    };
    let g3 = |a: usize, b: usize, g: usize, x: usize| -> Result<bool> {
        let h = HElem::basis(&grp, x);
        let lhs = prod.product(&sample[a], &h_action(&h, &sample[b])?, g);
        let rhs = h_action(&left_shift(g, &h), &prod.product(&sample[a], &sample[b], g))?;
        Ok(lhs == rhs)
    };
    let assoc = |a: usize, b: usize, c: usize, g: usize, gm: usize| -> bool {
        let lhs = prod.product(&sample[a], &prod.product(&sample[b], &sample[c], gm), g);
        let rhs = prod.product(&prod.product(&sample[a], &sample[b], g), &sample[c], grp.mul(gm, g));
        lhs == rhs
    };
    match scope {
        AxiomScope::Exhaustive => {
            let m = sample.len();
            for a in 0..m {
                for b in 0..m {
                    for g in grp.elements() {
                        for x in grp.elements() {
                            report.checked_g2 += 1;
                            if !g2(a, b, g, x)? {
                                report.witness = Some(fail("G2", vec![a, b], vec![g, x]));
                                return Ok(report);
                            }
                            report.checked_g3 += 1;
                            if !g3(a, b, g, x)? {
                                report.witness = Some(fail("G3", vec![a, b], vec![g, x]));
                                return Ok(report);
                            }
                        }
                    }
                }
            }
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        for g in grp.elements() {
                            for gm in grp.elements() {
                                report.checked_assoc += 1;
                                if !assoc(a, b, c, g, gm) {
                                    report.witness = Some(fail("associativity", vec![a, b, c], vec![g, gm]));
                                    return Ok(report);
                                }
                            }
                        }
                    }
                }
            }
        }
        AxiomScope::Listed(items) => {
            for &(a, b, c, g, gm, x) in items {
                if a >= sample.len() || b >= sample.len() || c >= sample.len() {
                    return Err(Error::OutOfRange(format!("sample index in ({a}, {b}, {c})")));
                }
                report.checked_g2 += 1;
                if !g2(a, b, g, x)? {
                    report.witness = Some(fail("G2", vec![a, b], vec![g, x]));
                    return Ok(report);
                }
                report.checked_g3 += 1;
                if !g3(a, b, g, x)? {
                    report.witness = Some(fail("G3", vec![a, b], vec![g, x]));
                    return Ok(report);
                }
                report.checked_assoc += 1;
                if !assoc(a, b, c, g, gm) {
                    report.witness = Some(fail("associativity", vec![a, b, c], vec![g, gm]));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Linear subspace of `H (x) A (x) M_n(k)` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSpan {
    amb: Ambient,
    basis: SubspaceBasis,
}

impl SubSpan {
    pub fn new(amb: &Ambient, basis: SubspaceBasis) -> Result<Self> {
        if basis.ambient() != amb.dim() {
            return Err(Error::DimensionMismatch {
                expected: amb.dim(),
                found: basis.ambient(),
            });
        }
        Ok(SubSpan {
            amb: amb.clone(),
            basis,
        })
    }

    pub fn zero(amb: &Ambient) -> Self {
        SubSpan {
            amb: amb.clone(),
            basis: SubspaceBasis::new(amb.dim()),
        }
    }

    /// All of `Cend_n^{G,V}`.
    pub fn full(amb: &Ambient) -> Self {
        SubSpan {
            amb: amb.clone(),
            basis: SubspaceBasis::full(amb.dim()),
        }
    }

    pub fn span(amb: &Ambient, gens: &[DiffElem]) -> Result<Self> {
        let mut basis = SubspaceBasis::new(amb.dim());
        for g in gens {
            amb.check(&g.amb)?;
            basis.insert(g.coeffs.clone());
        }
        Ok(SubSpan {
            amb: amb.clone(),
            basis,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_full(&self) -> bool {
        self.basis.is_full()
    }

    pub fn contains(&self, x: &DiffElem) -> bool {
        self.amb == x.amb && self.basis.contains(&x.coeffs)
    }

    /// Canonical basis elements.
    pub fn elements(&self) -> Vec<DiffElem> {
        self.basis
            .rows()
            .map(|r| DiffElem::from_vec_unchecked(&self.amb, r.clone()))
            .collect()
    }

    /// Smallest H-submodule closed under every `o_gamma`, containing `gens`.
    pub fn generated_subalgebra(amb: &Ambient, gens: &[DiffElem]) -> Result<Self> {
        for g in gens {
            amb.check(&g.amb)?;
        }
        let seeds: Vec<SparseVec> = gens.iter().map(|g| g.coeffs.clone()).collect();
        let grp = Arc::clone(amb.group());
        let d = amb.slice_dim();
        let h_steps = |v: &SparseVec| -> Vec<SparseVec> {
            grp.elements().map(|x| v.filter(|k| k / d == x)).collect()
        };
        let prods = |u: &SparseVec, v: &SparseVec| -> Vec<SparseVec> {
            grp.elements().map(|c| product_vec(amb, u, v, c)).collect()
        };
        let unary: [UnaryStep<'_>; 1] = [&h_steps];
        let binary: [BinaryStep<'_>; 1] = [&prods];
        let basis = span_closure(amb.dim(), &seeds, &unary, &binary)?;
        Ok(SubSpan {
            amb: amb.clone(),
            basis,
        })
    }

    /// Whether the span is an H-submodule closed under all products;
    /// the error carries the first escaping product.
    pub fn check_subalgebra(&self) -> Result<()> {
        let grp = self.amb.group();
        let rows = self.basis.rows_sorted();
        let d = self.amb.slice_dim();
        for (a, r) in rows.iter().enumerate() {
            for x in grp.elements() {
                if !self.basis.contains(&r.filter(|k| k / d == x)) {
                    return Err(Error::NotClosed(format!("T_{x} . basis[{a}] leaves the span")));
                }
            }
        }
        for (a, r) in rows.iter().enumerate() {
            for (b, s) in rows.iter().enumerate() {
                for c in grp.elements() {
                    let p = product_vec(&self.amb, r, s, c);
                    if !p.is_zero() && !self.basis.contains(&p) {
                        return Err(Error::NotClosed(format!("basis[{a}] o_{c} basis[{b}] leaves the span")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_subalgebra(&self) -> bool {
        self.check_subalgebra().is_ok()
    }
}

/// The current algebra: span of `T_g (x) 1 (x) m`.
pub fn cur(group: &Arc<FiniteGroup>, n: usize) -> Result<SubSpan> {
    let amb = Ambient::regular(Arc::clone(group), n)?;
    let one = AElem::one(amb.gset());
    let mut gens = Vec::new();
    for g in group.elements() {
        for i in 0..n {
            for j in 0..n {
                gens.push(DiffElem::tensor(&amb, &HElem::basis(group, g), &one, &DenseMatrix::unit(n, i, j))?);
            }
        }
    }
    SubSpan::span(&amb, &gens)
}

/// The whole algebra over `V = G`.
pub fn cend_full(group: &Arc<FiniteGroup>, n: usize) -> Result<SubSpan> {
    Ok(SubSpan::full(&Ambient::regular(Arc::clone(group), n)?))
}

/// Every basis element `T_g (x) T_w (x) e_ij`, in index order.
pub fn cend_basis(amb: &Ambient) -> Vec<DiffElem> {
    (0..amb.dim())
        .map(|k| DiffElem::from_vec_unchecked(amb, SparseVec::unit(k)))
        .collect()
}
