use super::sparse::{combine, SparseVec};
use super::subspace::{kernel_of_columns, SubspaceBasis};
use crate::error::{Error, Result};

pub type UnaryStep<'a> = &'a dyn Fn(&SparseVec) -> Vec<SparseVec>;
pub type BinaryStep<'a> = &'a dyn Fn(&SparseVec, &SparseVec) -> Vec<SparseVec>;

/// Smallest subspace containing `seed` and closed under the given steps.
///
/// Unary steps are applied to every new vector; binary steps to every
/// ordered pair of accepted vectors. Stops early once the span is full.
pub fn span_closure(
    ambient: usize,
    seed: &[SparseVec],
    unary: &[UnaryStep<'_>],
    binary: &[BinaryStep<'_>],
) -> Result<SubspaceBasis> {
    let mut basis = SubspaceBasis::new(ambient);
    let mut accepted: Vec<SparseVec> = Vec::new();
    let mut queue: Vec<SparseVec> = Vec::new();
    for v in seed {
        if basis.try_insert(v.clone())? {
            queue.push(v.clone());
        }
    }
    let mut head = 0;
    while head < queue.len() && !basis.is_full() {
        let v = queue[head].clone();
        head += 1;
        let mut produced: Vec<SparseVec> = Vec::new();
        for step in unary {
            produced.extend(step(&v));
        }
        accepted.push(v.clone());
        for step in binary {
            for u in &accepted {
                produced.extend(step(u, &v));
                if u != &v {
                    produced.extend(step(&v, u));
                }
            }
        }
        for w in produced {
            if basis.try_insert(w.clone())? {
                queue.push(w);
                if basis.is_full() {
                    break;
                }
            }
        }
    }
    Ok(basis)
}

/// Whether one more application of every step stays inside `span`.
pub fn is_closed(span: &SubspaceBasis, unary: &[UnaryStep<'_>], binary: &[BinaryStep<'_>]) -> bool {
    let rows = span.rows_sorted();
    for v in &rows {
        for step in unary {
            if !step(v).iter().all(|w| span.contains(w)) {
                return false;
            }
        }
        for step in binary {
            for u in &rows {
                if !step(u, v).iter().all(|w| span.contains(w)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Classes of block indices whose block-kernels inside `span` coincide.
///
/// The ambient space is `blocks * block_dim` with block `b` occupying
/// coordinates `b * block_dim .. (b + 1) * block_dim`.
pub fn kernel_partition(span: &SubspaceBasis, blocks: usize, block_dim: usize) -> Result<Vec<Vec<usize>>> {
    if span.ambient() != blocks * block_dim {
        return Err(Error::DimensionMismatch {
            expected: blocks * block_dim,
            found: span.ambient(),
        });
    }
    let rows = span.rows_sorted();
    let d = rows.len();
    // kernel of block_b restricted to span, in coefficient coordinates
    let kernels: Vec<SubspaceBasis> = (0..blocks)
        .map(|b| {
            let cols: Vec<SparseVec> = rows
                .iter()
                .map(|r| {
                    r.filter(|i| i / block_dim == b)
                        .map_indices(|i| i - b * block_dim)
                })
                .collect();
            let ker = kernel_of_columns(&cols);
            SubspaceBasis::from_vectors(d, ker).expect("coefficient space")
        })
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for b in 0..blocks {
        match classes.iter_mut().find(|c| kernels[c[0]] == kernels[b]) {
            Some(c) => c.push(b),
            None => classes.push(vec![b]),
        }
    }
    Ok(classes)
}

/// Vector `sum c_i rows_i` for a coefficient vector over the sorted rows.
pub fn expand(rows: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    combine(coeffs.iter().map(|(i, c)| (c, &rows[*i])))
}
