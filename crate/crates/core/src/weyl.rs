//! The Weyl conformal algebra `k[T, v]` in the basis `T^(r) v^s`
//! (divided powers in `T`), its n-products and its action on `k[T]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `b (b-1) ... (b-k+1)`.
fn falling(b: usize, k: usize) -> i64 {
    if k > b {
        return 0;
    }
    (0..k).map(|i| (b - i) as i64).product()
}

/// `(m+1)(m+2)...(m+a)`, the coefficient of `T^a T^(m) = c T^(m+a)`.
fn rising(m: usize, a: usize) -> i64 {
    (1..=a).map(|i| (m + i) as i64).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylTerm {
    pub r: usize,
    pub s: usize,
    pub coeff: Scalar,
}

/// Finite combination of `T^(r) v^s`, zero coefficients absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylElem {
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl WeylElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(r: usize, s: usize) -> Self {
        Self::term(r, s, Scalar::one())
    }

    pub fn term(r: usize, s: usize, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(r, s, c);
        x
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn v() -> Self {
        Self::monomial(0, 1)
    }

    fn add_term(&mut self, r: usize, s: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((r, s)).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(r, s));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.terms.iter().map(|(&(r, s), c)| (r, s, c))
    }

    pub fn coeff(&self, r: usize, s: usize) -> Scalar {
        self.terms.get(&(r, s)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn v_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn add(&self, other: &WeylElem) -> WeylElem {
        let mut out = self.clone();
        for (r, s, c) in other.terms() {
            out.add_term(r, s, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> WeylElem {
        let mut out = WeylElem::zero();
        for (r, s, x) in self.terms() {
            out.add_term(r, s, x * c);
        }
        out
    }

    /// `T . T^(r) = (r+1) T^(r+1)`.
    pub fn apply_t(&self) -> WeylElem {
        let mut out = WeylElem::zero();
        for (r, s, c) in self.terms() {
            out.add_term(r + 1, s, c * &Scalar::from_i64(r as i64 + 1));
        }
        out
    }

    pub fn to_terms(&self) -> Vec<WeylTerm> {
        self.terms()
            .map(|(r, s, c)| WeylTerm { r, s, coeff: c.clone() })
            .collect()
    }

    pub fn from_terms(terms: &[WeylTerm]) -> Self {
        let mut out = WeylElem::zero();
        for t in terms {
            out.add_term(t.r, t.s, t.coeff.clone());
        }
        out
    }
}

impl Serialize for WeylElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(WeylElem::from_terms(&Vec::<WeylTerm>::deserialize(d)?))
    }
}

/// `T^(r) f o_n T^(s) h = sum_t (-1)^r C(n,r) C(n-r,t) T^(s-t) f d^(n-r-t) h`.
pub fn weyl_nprod(x: &WeylElem, y: &WeylElem, n: usize) -> WeylElem {
    let mut out = WeylElem::zero();
    for (r, a, c) in x.terms() {
        if r > n {
            continue;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let outer = sign * binom(n, r);
        for (s, b, d) in y.terms() {
            for t in 0..=(n - r).min(s) {
                let k = n - r - t;
                let coef = outer * binom(n - r, t) * falling(b, k);
                if coef != 0 {
                    out.add_term(s - t, a + b - k, &(c * d) * &Scalar::from_i64(coef));
                }
            }
        }
    }
    out
}

/// Smallest `n` past which every `x o_n y` vanishes:
/// `deg_T x + deg_T y + deg_v y + 1`.
pub fn locality_bound(x: &WeylElem, y: &WeylElem) -> usize {
    match (x.t_degree(), y.t_degree(), y.v_degree()) {
        (Some(r), Some(s), Some(b)) => r + s + b + 1,
        _ => 0,
    }
}

/// `sum_s c_s T^(s)` with `s < bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyT {
    pub bound: usize,
    pub coeffs: Vec<Scalar>,
}

impl PolyT {
    pub fn zero(bound: usize) -> Self {
        PolyT {
            bound,
            coeffs: vec![Scalar::zero(); bound],
        }
    }

    pub fn basis(bound: usize, s: usize) -> Result<Self> {
        let mut p = Self::zero(bound);
        p.add_at(s, Scalar::one())?;
        Ok(p)
    }

    fn add_at(&mut self, s: usize, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if s >= self.bound {
            return Err(Error::BudgetOverflow(format!("T^({s}) with degree bound {}", self.bound)));
        }
        self.coeffs[s] = &self.coeffs[s] + &c;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn sub(&self, other: &PolyT) -> PolyT {
        PolyT {
            bound: self.bound,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &PolyT) -> PolyT {
        PolyT {
            bound: self.bound,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyT {
        PolyT {
            bound: self.bound,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// `T^(r) f(v) o_n T^(s) = (-1)^r C(n,r) f(T) T^(s+r-n)`; raises on
/// overflow of the degree bound.
pub fn weyl_act(x: &WeylElem, p: &PolyT, n: usize) -> Result<PolyT> {
    let mut out = PolyT::zero(p.bound);
    for (r, a, c) in x.terms() {
        if r > n {
            continue;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let outer = sign * binom(n, r);
        for (s, d) in p.coeffs.iter().enumerate() {
            if d.is_zero() || s + r < n {
                continue;
            }
            let m = s + r - n;
            let coef = outer * rising(m, a);
            out.add_at(m + a, &(c * d) * &Scalar::from_i64(coef))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylRelationReport {
    pub bound: usize,
    pub checked: Vec<usize>,
    pub failures: Vec<usize>,
    /// Degrees excluded because `X` leaves the truncation there.
    pub boundary: Vec<usize>,
}

impl WeylRelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `D X - X D = 1` for `X = v o_0 -`, `D = 1 o_1 -` on `T^(s)`,
/// `s <= bound - 2`, with polynomials truncated at degree `< bound`.
pub fn weyl_algebra_relation(bound: usize) -> Result<WeylRelationReport> {
    if bound < 2 {
        return Err(Error::InvalidInput("degree bound must be at least 2".into()));
    }
    let x = WeylElem::v();
    let d = WeylElem::one();
    let mut report = WeylRelationReport {
        bound,
        checked: Vec::new(),
        failures: Vec::new(),
        boundary: vec![bound - 1],
    };
    for s in 0..bound - 1 {
        let p = PolyT::basis(bound, s)?;
        let dx = weyl_act(&d, &weyl_act(&x, &p, 0)?, 1)?;
        let xd = weyl_act(&x, &weyl_act(&d, &p, 1)?, 0)?;
        report.checked.push(s);
        if dx.sub(&xd) != p {
            report.failures.push(s);
        }
    }
    Ok(report)
}
