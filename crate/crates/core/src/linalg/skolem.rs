use super::matrix::DenseMatrix;
use super::sparse::SparseVec;
use super::subspace::nullspace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Linear endomorphism of `M_n(k)` stored as an `n^2 x n^2` matrix acting
/// on row-major flattened matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MnMap {
    n: usize,
    matrix: DenseMatrix,
}

impl MnMap {
    pub fn new(n: usize, matrix: DenseMatrix) -> Result<Self> {
        if matrix.rows() != n * n || matrix.cols() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: matrix.rows(),
            });
        }
        Ok(MnMap { n, matrix })
    }

    pub fn identity(n: usize) -> Self {
        MnMap {
            n,
            matrix: DenseMatrix::identity(n * n),
        }
    }

    /// Tabulates `f` on matrix units.
    pub fn from_fn(n: usize, f: impl Fn(&DenseMatrix) -> Result<DenseMatrix>) -> Result<Self> {
        let mut m = DenseMatrix::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                let img = f(&DenseMatrix::unit(n, a, b))?;
                for (k, c) in img.entries().iter().enumerate() {
                    m.set(k, a * n + b, c.clone());
                }
            }
        }
        Ok(MnMap { n, matrix: m })
    }

    /// `a -> U^-1 a U`.
    pub fn conjugation(u: &DenseMatrix) -> Result<Self> {
        let ui = u.inverse()?;
        MnMap::from_fn(u.rows(), |a| ui.mul(a)?.mul(u))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &DenseMatrix) -> DenseMatrix {
        let v = self.matrix.apply(a.entries()).expect("size checked");
        DenseMatrix::from_entries(self.n, self.n, v).expect("size checked")
    }

    pub fn compose(&self, other: &MnMap) -> MnMap {
        MnMap {
            n: self.n,
            matrix: self.matrix.mul(&other.matrix).expect("same size"),
        }
    }

    /// First failure of `phi(xy) = phi(x) phi(y)` on matrix units, or of `phi(1) = 1`.
    pub fn multiplicativity_witness(&self) -> Option<String> {
        let n = self.n;
        if self.apply(&DenseMatrix::identity(n)) != DenseMatrix::identity(n) {
            return Some("phi(1) != 1".into());
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let x = DenseMatrix::unit(n, a, b);
                        let y = DenseMatrix::unit(n, c, d);
                        let lhs = self.apply(&x.mul(&y).unwrap());
                        let rhs = self.apply(&x).mul(&self.apply(&y)).unwrap();
                        if lhs != rhs {
                            return Some(format!("phi(e{a}{b} e{c}{d}) != phi(e{a}{b}) phi(e{c}{d})"));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Conjugating matrix `U` with `U^-1 a U = phi(a)` for every `a`.
///
/// `U` spans the solution space of `a U - U phi(a) = 0` over matrix units
/// and is scaled so its first nonzero entry (row-major) is 1.
pub fn skolem_noether(phi: &MnMap) -> Result<DenseMatrix> {
    let n = phi.n();
    if let Some(w) = phi.multiplicativity_witness() {
        return Err(Error::NotAutomorphism(w));
    }
    // unknown U_{pq} at index p*n+q; equation entry (r,s) of aU - U phi(a)
    let mut rows: Vec<SparseVec> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let x = DenseMatrix::unit(n, a, b);
            let px = phi.apply(&x);
            for r in 0..n {
                for s in 0..n {
                    let mut pairs = Vec::new();
                    // (xU)_{rs} = sum_t x_{rt} U_{ts}
                    if r == a {
                        pairs.push((b * n + s, Scalar::one()));
                    }
                    // (U px)_{rs} = sum_t U_{rt} px_{ts}
                    for t in 0..n {
                        let c = px.get(t, s);
                        if !c.is_zero() {
                            pairs.push((r * n + t, -c));
                        }
                    }
                    let row = SparseVec::from_pairs(pairs);
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let ns = nullspace(&rows, n * n);
    let Some(first) = ns.into_iter().next() else {
        return Err(Error::NotAutomorphism("no intertwiner".into()));
    };
    let u = DenseMatrix::from_sparse(n, &first.normalized());
    let ui = u
        .inverse()
        .map_err(|_| Error::NotAutomorphism("intertwiner is singular".into()))?;
    for a in 0..n {
        for b in 0..n {
            let x = DenseMatrix::unit(n, a, b);
            if ui.mul(&x)?.mul(&u)? != phi.apply(&x) {
                return Err(Error::NotAutomorphism(format!("U^-1 e{a}{b} U != phi(e{a}{b})")));
            }
        }
    }
    Ok(u)
}
