//! Finite groups by multiplication table, their subgroups and cosets, and
//! finite G-sets.
//!
//! Element numbering per constructor:
//! * `cyclic(n)`: id `k` is `g^k`;
//! * `dihedral(n)` (order `2n`): id `f*n + k` is `r^k s^f`, with `s r s = r^-1`;
//! * `symmetric(n)`: permutations of `0..n` in lexicographic order, so the
//!   identity is first; the product is composition `(st)(i) = s(t(i))`;
//! * `product(a, b)`: id `i*|b| + j` is `(a_i, b_j)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    name: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a table whose entry `[a][b]` is the id of `ab`.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_named(rows, "table".into())
    }

    fn from_table_named(rows: Vec<Vec<usize>>, name: String) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has length {}, expected {n}", r.len())));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {a}")));
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if m(0, a) != a || m(a, 0) != a {
                return Err(Error::InvalidGroup(format!("0 is not an identity (fails at {a})")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == 0 && m(b, a) == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            name,
        })
    }

    fn from_fn(n: usize, name: String, f: impl Fn(usize, usize) -> usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_table_named(rows, name).expect("constructor produces a group")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group needs n >= 1".into()));
        }
        Ok(Self::from_fn(n, format!("C{n}"), |a, b| (a + b) % n))
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
        }
        Ok(Self::from_fn(2 * n, format!("D{n}"), |x, y| {
            let (f, a) = (x / n, x % n);
            let (h, b) = (y / n, y % n);
            let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
            ((f + h) % 2) * n + k
        }))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("symmetric group needs n >= 1".into()));
        }
        if n > 6 {
            return Err(Error::InvalidGroup(format!("S{n} is beyond desk scale")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        Ok(Self::from_fn(perms.len(), format!("S{n}"), |a, b| {
            let (s, t) = (&perms[a], &perms[b]);
            let c: Vec<usize> = (0..n).map(|i| s[t[i]]).collect();
            index(&c)
        }))
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order;
        Self::from_fn(a.order * nb, format!("{}x{}", a.name, b.name), |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted id list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        if h.iter().any(|&x| x >= self.order) {
            return false;
        }
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&a| set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Every subgroup, ordered by size and then lexicographically.
    ///
    /// Each subgroup is reached from `{e}` by adjoining one element at a
    /// time, so the search is complete regardless of generator count.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        let trivial = vec![0];
        found.insert(trivial.clone());
        queue.push_back(trivial);
        while let Some(k) = queue.pop_front() {
            for g in self.elements() {
                if k.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = k.clone();
                gens.push(g);
                let h = self.generated(&gens);
                if found.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Left cosets `gH` ordered by minimal element; `H` itself comes first.
    pub fn cosets(&self, h: &[usize]) -> Result<Vec<Vec<usize>>> {
        if !self.is_subgroup(h) {
            return Err(Error::NotSubgroup(format!("{h:?} in {}", self.name)));
        }
        let mut assigned = vec![false; self.order];
        let mut out = Vec::new();
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            c.dedup();
            for &x in &c {
                assigned[x] = true;
            }
            out.push(c);
        }
        Ok(out)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A finite set with a left action of a finite group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    points: usize,
    action: Vec<usize>,
    name: String,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?} ({} points)", self.name, self.group, self.points)
    }
}

impl GSet {
    /// Validates an action table whose entry `[g][v]` is `g.v`.
    pub fn from_table(group: Arc<FiniteGroup>, rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_named(group, rows, "table".into())
    }

    fn from_table_named(group: Arc<FiniteGroup>, rows: Vec<Vec<usize>>, name: String) -> Result<Self> {
        if rows.len() != group.order() {
            return Err(Error::InvalidInput(format!(
                "action table has {} rows, group has order {}",
                rows.len(),
                group.order()
            )));
        }
        let points = rows[0].len();
        for r in &rows {
            if r.len() != points || r.iter().any(|&v| v >= points) {
                return Err(Error::InvalidInput("malformed action table".into()));
            }
        }
        let action: Vec<usize> = rows.into_iter().flatten().collect();
        let act = |g: usize, v: usize| action[g * points + v];
        for v in 0..points {
            if act(0, v) != v {
                return Err(Error::InvalidInput(format!("identity moves point {v}")));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                for v in 0..points {
                    if act(group.mul(g, h), v) != act(g, act(h, v)) {
                        return Err(Error::InvalidInput(format!("(gh).v != g.(h.v) at g={g}, h={h}, v={v}")));
                    }
                }
            }
        }
        Ok(GSet {
            group,
            points,
            action,
            name,
        })
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let rows = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(g, x)).collect())
            .collect();
        Self::from_table_named(group, rows, "G".into()).unwrap()
    }

    /// `G/H` with the left multiplication action; point `k` is the `k`-th coset.
    pub fn cosets(group: Arc<FiniteGroup>, h: &[usize]) -> Result<Self> {
        let cs = group.cosets(h)?;
        let mut which = vec![0; group.order()];
        for (k, c) in cs.iter().enumerate() {
            for &x in c {
                which[x] = k;
            }
        }
        let rows = group
            .elements()
            .map(|g| cs.iter().map(|c| which[group.mul(g, c[0])]).collect())
            .collect();
        Self::from_table_named(group, rows, format!("G/{h:?}"))
    }

    pub fn trivial(group: Arc<FiniteGroup>, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidInput("a G-set needs at least one point".into()));
        }
        let rows = group.elements().map(|_| (0..points).collect()).collect();
        Self::from_table_named(group, rows, format!("{points} fixed points"))
    }

    /// Disjoint union, points numbered part by part.
    pub fn union(parts: &[GSet]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidInput("empty union".into()));
        };
        let group = Arc::clone(&first.group);
        if parts.iter().any(|p| *p.group != *group) {
            return Err(Error::StructureMismatch("union of G-sets over different groups".into()));
        }
        let rows = group
            .elements()
            .map(|g| {
                let mut row = Vec::new();
                let mut offset = 0;
                for p in parts {
                    row.extend((0..p.points).map(|v| offset + p.act(g, v)));
                    offset += p.points;
                }
                row
            })
            .collect();
        let name = parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join(" + ");
        Self::from_table_named(group, rows, name)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn act(&self, g: usize, v: usize) -> usize {
        self.action[g * self.points + v]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.action.chunks(self.points).map(|r| r.to_vec()).collect()
    }

    /// Orbits ordered by minimal point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for v in 0..self.points {
            if seen[v] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(g, v)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                seen[w] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }
}
