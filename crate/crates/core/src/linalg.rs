use crate::Scalar;

/// Determinant by Gaussian elimination with partial pivoting.
///
/// Pivots are the nonzero entry of largest [`Scalar::magnitude`] in the
/// column, so exact types never divide by zero and floating types get the
/// usual stability.
#[allow(clippy::needless_range_loop)]
pub fn determinant<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut det = S::one();
    for col in 0..n {
        let pivot = (col..n).filter(|&r| !m[r][col].is_zero()).max_by(|&a, &b| {
            m[a][col].magnitude().partial_cmp(&m[b][col].magnitude()).unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(pivot) = pivot else {
            return S::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    det
}
