//! Dense linear algebra over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {x : A x = 0} for A given by rows with `ncols` columns.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); ncols];
            x[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

/// Incremental echelon basis that records how each reduced vector arises
/// from the inserted ones, so linear dependencies can be read off.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Q>, Vec<Q>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut v = v.to_vec();
        let mut combo = vec![Q::zero(); self.inserted + 1];
        combo[self.inserted] = Q::one();
        for (p, row, rc) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        (v, combo)
    }

    /// Inserts v. If v depends on earlier vectors, returns c with
    /// v = Σ cᵢ vᵢ over the inserted vectors (v itself is not kept).
    pub fn insert(&mut self, v: &[Q]) -> Option<Vec<Q>> {
        let (mut r, mut combo) = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            None => {
                combo.pop();
                Some(combo.into_iter().map(|c| -c).collect())
            }
            Some(p) => {
                let inv = r[p].recip();
                r.iter_mut().for_each(|x| *x *= &inv);
                combo.iter_mut().for_each(|x| *x *= &inv);
                for (_, _, rc) in self.rows.iter_mut() {
                    rc.push(Q::zero());
                }
                self.rows.push((p, r, combo));
                self.inserted += 1;
                None
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }
}

/// Indices of a maximal linearly independent subfamily.
pub fn independent_subset(vectors: &[Vec<Q>]) -> Vec<usize> {
    let mut e = Echelon::new();
    (0..vectors.len()).filter(|&i| e.insert(&vectors[i]).is_none()).collect()
}

/// (positive, negative, zero) counts of a symmetric rational matrix, by
/// congruence diagonalization.
pub fn inertia(sym: &[Vec<Q>]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a = sym.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let mut piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        if piv.is_none() {
            // all diagonal entries vanish: x_i += x_j makes a_ii = 2a_ij
            let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                .find(|&(i, j)| i != j && !a[i][j].is_zero());
            match pair {
                None => {
                    zero += active.len();
                    break;
                }
                Some((i, j)) => {
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for k in 0..n {
                        let v = a[k][j].clone();
                        a[k][i] += v;
                    }
                    piv = Some(i);
                }
            }
        }
        let p = piv.unwrap_or(first);
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        let row_p = a[p].clone();
        for &i in &active {
            if !row_p[i].is_zero() {
                let f = &row_p[i] / &d;
                for &j in &active {
                    if !row_p[j].is_zero() {
                        let t = &f * &row_p[j];
                        a[i][j] -= t;
                    }
                }
            }
        }
    }
    (pos, neg, zero)
}

/// Signature (positive minus negative) of a nondegenerate symmetric form.
pub fn signature(sym: &[Vec<Q>]) -> i64 {
    let (p, n, z) = inertia(sym);
    assert_eq!(z, 0, "form is degenerate");
    p as i64 - n as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s: Q = a[0].iter().zip(&v).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn dependencies() {
        let mut e = Echelon::new();
        assert!(e.insert(&[q(1), q(0)]).is_none());
        assert!(e.insert(&[q(1), q(1)]).is_none());
        assert_eq!(e.insert(&[q(3), q(5)]).unwrap(), vec![q(-2), q(5)]);
    }

    #[test]
    fn inertia_of_hyperbolic_and_definite_forms() {
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[2, 1], &[1, 2]])), (2, 0, 0));
        assert_eq!(inertia(&m(&[&[1, 2], &[2, 1]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]])), (1, 2, 0));
        assert_eq!(inertia(&m(&[&[1, 1], &[1, 1]])), (1, 0, 1));
    }
}
