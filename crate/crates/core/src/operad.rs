//! Ordered partitions and the operad of binary trees (bracketings of
//! `x1 ... xn`) with substitution as composition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(m_1, ..., m_n)` with every `m_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        Ok(Partition(parts))
    }

    pub fn ones(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m = sum m_i`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Every ordered partition of `m` into `n` parts.
    pub fn all(m: usize, n: usize) -> Vec<Partition> {
        fn rec(m: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                if m == 0 {
                    out.push(Partition(prefix.clone()));
                }
                return;
            }
            for first in 1..=m.saturating_sub(n - 1) {
                prefix.push(first);
                rec(m - first, n - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, n, &mut Vec::new(), &mut out);
        out
    }
}

/// `(i,j)^pi = m_1 + ... + m_{i-1} + j`, all indices 1-based.
pub fn pair_index(pi: &Partition, i: usize, j: usize) -> Result<usize> {
    if i == 0 || i > pi.len() {
        return Err(Error::OutOfRange(format!("part {i} of {}", pi.len())));
    }
    if j == 0 || j > pi.0[i - 1] {
        return Err(Error::OutOfRange(format!("position {j} in part of size {}", pi.0[i - 1])));
    }
    Ok(pi.0[..i - 1].iter().sum::<usize>() + j)
}

/// Inverse of [`pair_index`].
pub fn pair_of_index(pi: &Partition, k: usize) -> Result<(usize, usize)> {
    let mut rest = k;
    for (i, &m) in pi.0.iter().enumerate() {
        if rest >= 1 && rest <= m {
            return Ok((i + 1, rest));
        }
        rest = rest.saturating_sub(m);
    }
    Err(Error::OutOfRange(format!("index {k} of {}", pi.total())))
}

/// `tau pi = (p_1 + ... + p_{m_1}, ...)` and the subpartitions `tau pi_i`.
pub fn compose_partitions(tau: &Partition, pi: &Partition) -> Result<(Partition, Vec<Partition>)> {
    if tau.len() != pi.total() {
        return Err(Error::DimensionMismatch {
            expected: pi.total(),
            found: tau.len(),
        });
    }
    let mut subs = Vec::with_capacity(pi.len());
    let mut start = 0;
    for &m in &pi.0 {
        subs.push(Partition(tau.0[start..start + m].to_vec()));
        start += m;
    }
    let grouped = Partition(subs.iter().map(Partition::total).collect());
    Ok((grouped, subs))
}

/// Full binary tree with ordered leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    /// The unit `x1`.
    pub fn identity() -> Self {
        BinaryTree::Leaf
    }

    pub fn node(l: BinaryTree, r: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Every tree with `n` leaves, `n >= 1`.
    pub fn all(n: usize) -> Vec<BinaryTree> {
        if n == 1 {
            return vec![BinaryTree::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in Self::all(k) {
                for r in Self::all(n - k) {
                    out.push(Self::node(l.clone(), r));
                }
            }
        }
        out
    }

    fn write(&self, labels: &mut impl Iterator<Item = usize>, top: bool, out: &mut String) {
        match self {
            BinaryTree::Leaf => {
                out.push('x');
                out.push_str(&labels.next().expect("enough labels").to_string());
            }
            BinaryTree::Node(l, r) => {
                if !top {
                    out.push('(');
                }
                l.write(labels, false, out);
                r.write(labels, false, out);
                if !top {
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut (1..), true, &mut s);
        f.write_str(&s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    next_label: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::InvalidInput(format!("tree text at {}: {what}", self.pos))
    }

    /// A run of one or two factors; a single factor is returned as is.
    fn product(&mut self) -> Result<BinaryTree> {
        let first = self.factor()?;
        if self.pos < self.bytes.len() && self.bytes[self.pos] != b')' {
            let second = self.factor()?;
            if self.pos < self.bytes.len() && self.bytes[self.pos] != b')' {
                return Err(self.err("ambiguous product of three factors"));
            }
            return Ok(BinaryTree::node(first, second));
        }
        Ok(first)
    }

    fn factor(&mut self) -> Result<BinaryTree> {
        match self.bytes.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let label: usize = std::str::from_utf8(&self.bytes[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("leaf without index"))?;
                if label != self.next_label {
                    return Err(self.err(&format!("expected x{}, found x{label}", self.next_label)));
                }
                self.next_label += 1;
                Ok(BinaryTree::Leaf)
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.product()?;
                if !matches!(t, BinaryTree::Node(..)) {
                    return Err(self.err("parentheses around a single leaf"));
                }
                if self.bytes.get(self.pos) != Some(&b')') {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.err("expected 'x' or '('")),
        }
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            bytes: compact.as_bytes(),
            pos: 0,
            next_label: 1,
        };
        let t = p.product()?;
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

impl Serialize for BinaryTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `u(v_1(x_{(1,1)}, ...), ..., v_n(..., x_{(n,m_n)}))`.
pub fn tree_compose(u: &BinaryTree, vs: &[BinaryTree], pi: &Partition) -> Result<BinaryTree> {
    if u.leaves() != vs.len() {
        return Err(Error::DimensionMismatch {
            expected: u.leaves(),
            found: vs.len(),
        });
    }
    if pi.len() != vs.len() || vs.iter().zip(pi.parts()).any(|(v, &m)| v.leaves() != m) {
        return Err(Error::InvalidInput(format!("partition {:?} does not match the leaf counts", pi.parts())));
    }
    fn subst(u: &BinaryTree, vs: &mut std::slice::Iter<'_, BinaryTree>) -> BinaryTree {
        match u {
            BinaryTree::Leaf => vs.next().expect("leaf count checked").clone(),
            BinaryTree::Node(l, r) => {
                let l = subst(l, vs);
                BinaryTree::node(l, subst(r, vs))
            }
        }
    }
    // leaves are numbered left to right, so x_{(i,j)^pi} lands in place
    Ok(subst(u, &mut vs.iter()))
}

/// `Comp^pi(u; vs)` with `pi` read off the leaf counts.
pub fn compose(u: &BinaryTree, vs: &[BinaryTree]) -> Result<BinaryTree> {
    let pi = Partition::new(vs.iter().map(BinaryTree::leaves).collect())?;
    tree_compose(u, vs, &pi)
}

/// Both sides of the associativity axiom for `u`, `vs` (grouped by
/// `pi`) and `ws` (grouped by `tau`).
pub fn associativity_sides(u: &BinaryTree, vs: &[BinaryTree], ws: &[BinaryTree]) -> Result<(BinaryTree, BinaryTree)> {
    let pi = Partition::new(vs.iter().map(BinaryTree::leaves).collect())?;
    let tau = Partition::new(ws.iter().map(BinaryTree::leaves).collect())?;
    let lhs = tree_compose(&tree_compose(u, vs, &pi)?, ws, &tau)?;
    let (tau_pi, subs) = compose_partitions(&tau, &pi)?;
    let mut inner = Vec::with_capacity(vs.len());
    let mut start = 0;
    for (v, sub) in vs.iter().zip(&subs) {
        inner.push(tree_compose(v, &ws[start..start + sub.len()], sub)?);
        start += sub.len();
    }
    let rhs = tree_compose(u, &inner, &tau_pi)?;
    Ok((lhs, rhs))
}
