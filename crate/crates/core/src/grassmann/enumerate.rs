use super::Subspace;
use crate::error::{Error, Result};
use crate::matlin::Matrix;
use crate::scalars::{Field, FieldSpec};

pub const MAX_AMBIENT_VAR: &str = "TORSORLAB_MAX_AMBIENT";
const DEFAULT_MAX_AMBIENT: usize = 6;

/// Enumeration bound from `TORSORLAB_MAX_AMBIENT`, default 6.
pub fn max_ambient() -> usize {
    std::env::var(MAX_AMBIENT_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_AMBIENT)
}

/// Every subspace of `Kⁿ` over a finite field exactly once: by dimension,
/// then lexicographically on the RREF basis.
pub fn enumerate_subspaces<F: Field>(
    field: &FieldSpec,
    ambient: usize,
    dim: Option<usize>,
) -> Result<Vec<Subspace<F>>> {
    let elems = F::elements(field).ok_or_else(|| Error::InfiniteField(field.to_string()))?;
    let bound = max_ambient();
    if ambient > bound {
        return Err(Error::BoundExceeded(ambient, bound));
    }
    let dims: Vec<usize> = match dim {
        Some(k) if k > ambient => vec![],
        Some(k) => vec![k],
        None => (0..=ambient).collect(),
    };
    let mut out = Vec::new();
    for k in dims {
        let mut layer = Vec::new();
        for pivots in combinations(ambient, k) {
            // free slots: row i, column j > pivot_i, j not a pivot column
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let piv = pivots.clone();
                    (piv[i] + 1..ambient)
                        .filter(move |j| !piv.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let mut idx = vec![0usize; slots.len()];
            loop {
                let mut m = Matrix::<F>::zeros(k, ambient, field);
                for (i, &p) in pivots.iter().enumerate() {
                    m[(i, p)] = F::one(field);
                }
                for (s, &(i, j)) in slots.iter().enumerate() {
                    m[(i, j)] = elems[idx[s]].clone();
                }
                layer.push(Subspace::from_rref(m));
                if !advance(&mut idx, elems.len()) {
                    break;
                }
            }
        }
        layer.sort_by(|a, b| a.canonical_cmp(b));
        out.extend(layer);
    }
    Ok(out)
}

fn advance(idx: &mut [usize], q: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < q {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gaussian binomial `[n choose k]_q`.
pub fn count_subspaces(q: u64, n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}
