//! Exact base-field elements: rationals and elements of a cyclotomic field
//! `Q(zeta_m)` stored as coefficient vectors modulo the m-th cyclotomic
//! polynomial.
//!
//! Every value is kept in canonical form. An element of `Q(zeta_m)` that
//! happens to lie in `Q` is always stored as [`Scalar::Rational`], so
//! structural equality is value equality and rationals mix freely with
//! cyclotomic elements of any conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Base field selected for a session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Cyclotomic(u32),
}

impl Field {
    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (_, Scalar::Rational(_)) => true,
            (Field::Cyclotomic(m), Scalar::Cyclotomic(c)) => *m == c.conductor,
            (Field::Rational, Scalar::Cyclotomic(_)) => false,
        }
    }

    pub fn conductor(&self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Cyclotomic(m) => Some(*m),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(m) => write!(f, "Q(zeta{m})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `rational`, `cyclotomic:<m>`, `Q(zeta<m>)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if lower == "q" || lower == "rational" || lower == "rationals" {
            return Ok(Field::Rational);
        }
        let digits = if let Some(rest) = lower.strip_prefix("cyclotomic:") {
            rest
        } else if let Some(rest) = lower.strip_prefix("q(zeta") {
            rest.strip_suffix(')').unwrap_or(rest)
        } else {
            return Err(Error::InvalidInput(format!("unknown field spec {s:?}")));
        };
        let m: u32 = digits
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad conductor in field spec {s:?}")))?;
        if m == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        Ok(if m <= 2 { Field::Rational } else { Field::Cyclotomic(m) })
    }
}

/// Element of `Q(zeta_m)` with at least one non-rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients over the power basis `1, zeta, ..., zeta^(phi(m)-1)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

/// Arithmetic operation selector for [`Scalar::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials
// ---------------------------------------------------------------------------

type Poly = Vec<BigRational>;

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

fn compute_cyclotomic_poly(m: u32) -> Poly {
    // x^m - 1 divided by Phi_d for every proper divisor d of m
    let mut p = vec![BigRational::zero(); m as usize + 1];
    p[0] = rat(-1);
    p[m as usize] = rat(1);
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d);
            let (q, r) = poly_divrem(&p, &phi_d);
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// The m-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_poly(m: u32) -> Arc<Poly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    let p = Arc::new(compute_cyclotomic_poly(m));
    cache.lock().unwrap().insert(m, Arc::clone(&p));
    p
}

/// Euler's totient, the degree of `Q(zeta_m)` over `Q`.
pub fn totient(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }

    pub fn ratio(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    /// Primitive m-th root of unity `zeta_m`.
    pub fn zeta(m: u32) -> Self {
        assert!(m > 0, "conductor must be positive");
        match m {
            1 => Scalar::one(),
            2 => Scalar::from_i64(-1),
            _ => Self::from_poly(m, vec![BigRational::zero(), BigRational::one()]),
        }
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as u32;
        let mut out = Scalar::one();
        let z = Scalar::zeta(m);
        for _ in 0..e {
            out = &out * &z;
        }
        out
    }

    /// Builds the canonical element of `Q(zeta_m)` represented by `poly`.
    pub fn from_poly(m: u32, poly: Poly) -> Self {
        if m <= 2 {
            // Q(zeta_1) = Q(zeta_2) = Q; evaluate at zeta = +-1
            let z = if m == 1 { rat(1) } else { rat(-1) };
            let mut acc = BigRational::zero();
            let mut pw = BigRational::one();
            for c in &poly {
                acc += c * &pw;
                pw *= &z;
            }
            return Scalar::Rational(acc);
        }
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let (_, mut r) = poly_divrem(&poly, &phi);
        r.resize(deg, BigRational::zero());
        if r[1..].iter().all(|c| c.is_zero()) {
            Scalar::Rational(r.swap_remove(0))
        } else {
            Scalar::Cyclotomic(Cyclotomic {
                conductor: m,
                coeffs: r,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Cyclotomic(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// Conductor of the smallest stored field: `None` for rationals.
    pub fn conductor(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Cyclotomic(c) => Some(c.conductor),
        }
    }

    fn poly_of(&self) -> Poly {
        match self {
            Scalar::Rational(q) => vec![q.clone()],
            Scalar::Cyclotomic(c) => c.coeffs.clone(),
        }
    }

    fn common_conductor(&self, other: &Scalar) -> Result<Option<u32>> {
        match (self.conductor(), other.conductor()) {
            (Some(a), Some(b)) if a != b => Err(Error::ConductorMismatch(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Ok(Scalar::Rational(a + b));
        }
        let m = self.common_conductor(other)?.unwrap();
        let mut p = self.poly_of();
        let q = other.poly_of();
        if p.len() < q.len() {
            p.resize(q.len(), BigRational::zero());
        }
        for (i, c) in q.into_iter().enumerate() {
            p[i] += c;
        }
        Ok(Scalar::from_poly(m, p))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Rational(a), Scalar::Cyclotomic(c))
            | (Scalar::Cyclotomic(c), Scalar::Rational(a)) => {
                if a.is_zero() {
                    return Ok(Scalar::zero());
                }
                Ok(Scalar::Cyclotomic(Cyclotomic {
                    conductor: c.conductor,
                    coeffs: c.coeffs.iter().map(|x| x * a).collect(),
                }))
            }
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                let m = self.common_conductor(other)?.unwrap();
                Ok(Scalar::from_poly(m, poly_mul(&x.coeffs, &y.coeffs)))
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Cyclotomic(c) => {
                // extended Euclid: s * a + t * phi = 1
                let phi = cyclotomic_poly(c.conductor);
                let (mut r0, mut r1): (Poly, Poly) = (phi.to_vec(), {
                    let mut a = c.coeffs.clone();
                    poly_trim(&mut a);
                    a
                });
                let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
                while !r1.is_empty() {
                    let (q, r) = poly_divrem(&r0, &r1);
                    let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
                    r0 = std::mem::replace(&mut r1, r);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                // r0 is a nonzero constant because phi is irreducible
                let k = r0[0].clone();
                let s: Poly = s0.iter().map(|x| x / &k).collect();
                Ok(Scalar::from_poly(c.conductor, s))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.common_conductor(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn apply(&self, other: &Scalar, op: Op) -> Result<Scalar> {
        match op {
            Op::Add => self.checked_add(other),
            Op::Sub => self.checked_sub(other),
            Op::Mul => self.checked_mul(other),
            Op::Div => self.checked_div(other),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Text form for rationals (`"p/q"` or `"p"`); `None` for cyclotomic values.
    pub fn rational_text(&self) -> Option<String> {
        self.as_rational().map(rational_to_string)
    }
}

fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Scalar::Rational(parse_rational(s)?))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", rational_to_string(q)),
            Scalar::Cyclotomic(c) => {
                let mut first = true;
                for (k, a) in c.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, "{}", if a.is_negative() { " - " } else { " + " })?;
                    } else if a.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                    let abs = a.abs();
                    let coeff = rational_to_string(&abs);
                    match k {
                        0 => write!(f, "{coeff}")?,
                        _ => {
                            if !abs.is_one() {
                                write!(f, "{coeff}*")?;
                            }
                            write!(f, "z{}", c.conductor)?;
                            if k > 1 {
                                write!(f, "^{k}")?;
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

// Operators panic on conductor mismatch; the checked_* methods report it.

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar subtraction")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar multiplication")
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                conductor: c.conductor,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

// ---------------------------------------------------------------------------
// serde: "p/q" strings or integers for rationals, {"m", "coeffs"} for cyclotomics
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    m: u32,
    coeffs: Vec<RationalRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    fn parse(&self) -> Result<BigRational> {
        match self {
            RationalRepr::Int(n) => Ok(rat(*n)),
            RationalRepr::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(i64),
    Text(String),
    Cyclotomic(CyclotomicRepr),
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(q) => s.serialize_str(&rational_to_string(q)),
            Scalar::Cyclotomic(c) => CyclotomicRepr {
                m: c.conductor,
                coeffs: c
                    .coeffs
                    .iter()
                    .map(|x| RationalRepr::Text(rational_to_string(x)))
                    .collect(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScalarRepr::deserialize(d)?;
        match repr {
            ScalarRepr::Int(n) => Ok(Scalar::from_i64(n)),
            ScalarRepr::Text(t) => t.parse().map_err(D::Error::custom),
            ScalarRepr::Cyclotomic(c) => {
                if c.m == 0 {
                    return Err(D::Error::custom("conductor must be positive"));
                }
                let coeffs: Vec<BigRational> = c
                    .coeffs
                    .iter()
                    .map(RationalRepr::parse)
                    .collect::<Result<_>>()
                    .map_err(D::Error::custom)?;
                let deg = totient(c.m);
                if c.m > 2 && coeffs.len() != deg {
                    return Err(D::Error::custom(format!(
                        "Q(zeta{}) needs {} coefficients, got {}",
                        c.m,
                        deg,
                        coeffs.len()
                    )));
                }
                Ok(Scalar::from_poly(c.m, coeffs))
            }
        }
    }
}

/// Small integer value of a rational scalar, if it has one.
pub fn to_small_int(x: &Scalar) -> Option<i64> {
    let q = x.as_rational()?;
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Scalar::zeta(4);
        assert_eq!(&i * &i, Scalar::from_i64(-1));
        assert!(matches!(&i * &i, Scalar::Rational(_)));
    }

    #[test]
    fn multiplicative_identity() {
        let a = Scalar::from_poly(5, vec![rat(3), rat(-1), rat(2)]);
        assert_eq!(&a * &Scalar::one(), a);
    }

    #[test]
    fn cyclotomic_polys() {
        let p12: Vec<i64> = cyclotomic_poly(12).iter().map(|c| c.to_integer().to_i64().unwrap()).collect();
        assert_eq!(p12, vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(4), 2);
        assert_eq!(totient(8), 4);
        assert_eq!(totient(7), 6);
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let a = Scalar::from_poly(8, vec![rat(1), rat(2), rat(0), rat(-3)]);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(q(1, 2).checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
        assert!(Scalar::ratio(1, 0).is_err());
    }

    #[test]
    fn conductor_mismatch() {
        let a = Scalar::zeta(3);
        let b = Scalar::zeta(4);
        assert!(matches!(a.checked_add(&b), Err(Error::ConductorMismatch(3, 4))));
        assert!(a.checked_mul(&b).is_err());
        // rationals embed into every cyclotomic field
        assert!(a.checked_add(&q(1, 2)).is_ok());
    }

    #[test]
    fn roots_of_unity_cycle() {
        for m in [3u32, 4, 5, 6, 8] {
            assert!(Scalar::root_of_unity(m, m as i64).is_one());
            assert_eq!(Scalar::root_of_unity(m, -1), Scalar::zeta(m).inv().unwrap());
        }
    }

    #[test]
    fn json_forms() {
        let v: Scalar = serde_json::from_str("\"-3/6\"").unwrap();
        assert_eq!(v, q(-1, 2));
        let w: Scalar = serde_json::from_str("7").unwrap();
        assert_eq!(w, Scalar::from_i64(7));
        let z: Scalar = serde_json::from_str(r#"{"m":4,"coeffs":["0","1"]}"#).unwrap();
        assert_eq!(z, Scalar::zeta(4));
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"{"m":4,"coeffs":["0","1"]}"#);
        assert!(serde_json::from_str::<Scalar>(r#"{"m":4,"coeffs":["1"]}"#).is_err());
        assert_eq!(serde_json::to_string(&q(5, 6)).unwrap(), "\"5/6\"");
    }

    #[test]
    fn field_specs() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("cyclotomic:4".parse::<Field>().unwrap(), Field::Cyclotomic(4));
        assert_eq!("Q(zeta8)".parse::<Field>().unwrap(), Field::Cyclotomic(8));
        assert!("R".parse::<Field>().is_err());
        assert!(Field::Cyclotomic(4).contains(&Scalar::zeta(4)));
        assert!(!Field::Rational.contains(&Scalar::zeta(4)));
    }

    #[test]
    fn display() {
        let z = Scalar::from_poly(4, vec![rat(1), rat(-2)]);
        assert_eq!(z.to_string(), "1 - 2*z4");
    }
}
