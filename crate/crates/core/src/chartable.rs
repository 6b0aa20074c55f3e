//! Character tables by the Burnside–Dixon method.
//!
//! Central characters are the common eigenvectors of the class-multiplication
//! matrices over F_p, p ≡ 1 mod the exponent. Each value is then lifted to
//! Z[ζ_N] by recovering the eigenvalue multiplicities of ρ(g) from the values
//! on the powers of g, so the stored coefficient vectors are canonical.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::poly::{fp, inv_mod, pow_mod, prime_one_mod, primitive_root};

pub const MAX_TABLE_ORDER: usize = 256;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: Arc<FiniteGroup>,
    pub exponent: usize,
    /// Identity class first.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `characters[i][s]` is χᵢ on class s, in Z[ζ_exponent].
    pub characters: Vec<Vec<Cyclo>>,
    pub degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn value(&self, chi: usize, g: usize) -> &Cyclo {
        &self.characters[chi][self.class_of[g]]
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Index of the character with exactly these class values.
    pub fn find(&self, values: &[Cyclo]) -> Option<usize> {
        self.characters.iter().position(|c| c.as_slice() == values)
    }

    /// Exact row orthogonality, degree sum and first column.
    pub fn verify(&self) -> Result<()> {
        let n = self.group.order() as i64;
        let total: usize = self.degrees.iter().map(|d| d * d).sum();
        if total as i64 != n {
            return Err(Error::Internal(format!("Σ deg² = {total} ≠ |G| = {n}")));
        }
        for (i, ci) in self.characters.iter().enumerate() {
            if ci[0].as_integer() != Some(self.degrees[i] as i64) {
                return Err(Error::Internal("first column differs from the degrees".into()));
            }
            for (j, cj) in self.characters.iter().enumerate().skip(i) {
                let mut acc = Cyclo::zero(self.exponent);
                for (s, cl) in self.classes.iter().enumerate() {
                    acc.add_assign(&ci[s].mul(&cj[s].conj()).scale(cl.len() as i64));
                }
                let expect = if i == j { n } else { 0 };
                if acc.as_integer() != Some(expect) {
                    return Err(Error::Internal(format!("rows {i} and {j} are not orthonormal")));
                }
            }
        }
        Ok(())
    }
}

/// Reduced column basis: `vecs[l]` has a 1 at `pivots[l]` and zeros at the
/// other pivots.
struct Subspace {
    vecs: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn reduce_basis(mut vecs: Vec<Vec<u64>>, p: u64) -> Subspace {
    let mut pivots = Vec::new();
    let n = vecs.first().map_or(0, |v| v.len());
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..vecs.len()).find(|&i| vecs[i][c] != 0) else { continue };
        vecs.swap(r, i);
        let inv = inv_mod(vecs[r][c], p);
        vecs[r].iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..vecs.len() {
            if i != r && vecs[i][c] != 0 {
                let f = vecs[i][c];
                let row = vecs[r].clone();
                for (x, y) in vecs[i].iter_mut().zip(&row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == vecs.len() {
            break;
        }
    }
    vecs.truncate(r);
    Subspace { vecs, pivots }
}

/// Kernel of a square matrix over F_p.
fn kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, i);
        let inv = inv_mod(a[r][c], p);
        a[r].iter_mut().for_each(|x| *x = *x * inv % p);
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![0u64; n];
            x[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - a[i][f]) % p;
            }
            x
        })
        .collect()
}

/// Characteristic polynomial over F_p through Hessenberg form.
fn charpoly_mod_p(m: &[Vec<u64>], p: u64) -> fp::P {
    let n = m.len();
    let mut h = m.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], p);
        for i in k + 2..n {
            let f = h[i][k] * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + p - f * h[k + 1][j] % p) % p;
            }
            for row in h.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[i]) % p;
            }
        }
    }
    // c_k = det(xI − H_k) for the leading k×k block
    let mut c: Vec<fp::P> = vec![vec![1]];
    for k in 0..n {
        let mut next = fp::mul(&vec![(p - h[k][k]) % p, 1], &c[k], p);
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = prod * h[i][k] % p;
            next = fp::sub(&next, &fp::scale(&c[i], coef, p), p);
        }
        c.push(next);
    }
    c.pop().expect("n+1 entries")
}

pub fn character_table(g: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let order = g.order();
    if order > MAX_TABLE_ORDER {
        return Err(Error::SizeBound(format!("character tables are limited to order {MAX_TABLE_ORDER}")));
    }
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let mut class_of = vec![0; order];
    for (s, cl) in classes.iter().enumerate() {
        for &x in cl {
            class_of[x] = s;
        }
    }
    let exponent = g.exponent();
    let p = prime_one_mod(exponent as u64, 4 * order as u64 + 1000);
    // a[j][r·k + s] = #{x ∈ C_j : x⁻¹ z_s ∈ C_r}
    let mut a = vec![vec![0u64; k * k]; k];
    for (j, cj) in classes.iter().enumerate() {
        for (s, cs) in classes.iter().enumerate() {
            let z = cs[0];
            for &x in cj {
                a[j][class_of[g.op(g.inv(x), z)] * k + s] += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1c0);
    let mut done = Vec::new();
    let mut todo = vec![reduce_basis(
        (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect(),
        p,
    )];
    while let Some(sub) = todo.pop() {
        let d = sub.vecs.len();
        if d == 1 {
            done.push(sub.vecs[0].clone());
            continue;
        }
        let mut split = false;
        for aj in a.iter().skip(1) {
            // the restricted operator C with A V = V C, read at the pivots
            // entries of aj are at most |G| and v[s] < p, so each dot product fits
            let cmat: Vec<Vec<u64>> = sub
                .pivots
                .iter()
                .map(|&r| {
                    let row = &aj[r * k..(r + 1) * k];
                    sub.vecs.iter().map(|v| row.iter().zip(v).map(|(&x, &y)| x * y).sum::<u64>() % p).collect()
                })
                .collect();
            let scalar = (0..d).all(|r| (0..d).all(|c| cmat[r][c] == if r == c { cmat[0][0] } else { 0 }));
            if scalar {
                continue;
            }
            let roots = fp::roots(&charpoly_mod_p(&cmat, p), p, &mut rng);
            if roots.len() < 2 {
                continue;
            }
            let mut total = 0;
            for lam in roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|r| (0..d).map(|c| (cmat[r][c] + if r == c { p - lam } else { 0 }) % p).collect())
                    .collect();
                let ker = kernel_mod_p(&shifted, p);
                total += ker.len();
                let vecs = ker
                    .iter()
                    .map(|u| {
                        (0..k)
                            .map(|i| sub.vecs.iter().zip(u).fold(0, |acc, (v, &c)| (acc + v[i] * c) % p))
                            .collect()
                    })
                    .collect();
                todo.push(reduce_basis(vecs, p));
            }
            if total != d {
                return Err(Error::Internal("class matrices are not diagonalizable mod p".into()));
            }
            split = true;
            break;
        }
        if !split {
            return Err(Error::Internal("common eigenspace does not split".into()));
        }
    }
    if done.len() != k {
        return Err(Error::Internal("wrong number of irreducible characters".into()));
    }
    let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let power: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| (0..exponent).map(|j| class_of[g.pow(c[0], j as u64)]).collect())
        .collect();
    let eps = pow_mod(primitive_root(p), (p - 1) / exponent as u64, p);
    let n_inv = inv_mod(exponent as u64 % p, p);
    // eps_inv_pow[j] = ε^{−j}
    let eps_inv = inv_mod(eps, p);
    let eps_inv_pow: Vec<u64> = (0..exponent as u64).map(|j| pow_mod(eps_inv, j, p)).collect();
    let inv_size: Vec<u64> = classes.iter().map(|c| inv_mod(c.len() as u64, p)).collect();
    let mut rows = Vec::with_capacity(k);
    for v in done {
        let w0 = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * w0 % p).collect();
        let s: u64 = (0..k).fold(0, |acc, s| (acc + w[s] * w[inv_class[s]] % p * inv_size[s]) % p);
        let d2 = order as u64 % p * inv_mod(s, p) % p;
        let deg = (1..=order)
            .find(|d| (d * d) as u64 % p == d2 && order % d == 0)
            .ok_or_else(|| Error::Internal("no integer degree".into()))?;
        let chi: Vec<u64> =
            (0..k).map(|s| deg as u64 * w[s] % p * inv_size[s] % p).collect();
        let mut values = Vec::with_capacity(k);
        for s in 0..k {
            let mut coeffs = vec![0i64; exponent];
            for (kk, c) in coeffs.iter_mut().enumerate() {
                // each term is below p², and there are `exponent` of them
                let (mut acc, mut idx) = (0u64, 0);
                for &pc in &power[s] {
                    acc += chi[pc] * eps_inv_pow[idx];
                    idx = (idx + kk) % exponent;
                }
                let m = acc % p * n_inv % p;
                if m as usize > deg {
                    return Err(Error::Internal("eigenvalue multiplicity out of range".into()));
                }
                *c = m as i64;
            }
            values.push(Cyclo::from_coeffs(exponent, coeffs));
        }
        rows.push((deg, values));
    }
    rows.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)));
    let degrees = rows.iter().map(|r| r.0).collect();
    let characters = rows.into_iter().map(|r| r.1).collect();
    Ok(CharacterTable { group: g.clone(), exponent, classes, class_of, characters, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presets;

    fn table(name: &str) -> CharacterTable {
        let t = character_table(&Arc::new(presets::by_name(name).unwrap())).unwrap();
        t.verify().unwrap();
        t
    }

    #[test]
    fn klein_has_four_linear_characters() {
        assert_eq!(table("Z2xZ2").degrees, vec![1, 1, 1, 1]);
    }

    #[test]
    fn degrees_of_small_groups() {
        assert_eq!(table("S3").degrees, vec![1, 1, 2]);
        assert_eq!(table("Q8").degrees, vec![1, 1, 1, 1, 2]);
        assert_eq!(table("A4").degrees, vec![1, 1, 1, 3]);
        assert_eq!(table("S4").degrees, vec![1, 1, 2, 3, 3]);
        assert_eq!(table("Z8").degrees, vec![1; 8]);
        assert_eq!(table("Dic3").degrees, vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn trivial_character_comes_first() {
        let t = table("D4");
        assert!(t.characters[0].iter().all(|v| v.as_integer() == Some(1)));
    }

    /// Class sums multiply with the structure constants computed by brute
    /// force, so ω(K_j)ω(K_r) = Σ_s a_{jrs} ω(K_s) must hold numerically.
    #[test]
    fn central_characters_satisfy_class_algebra() {
        for name in ["S3", "Q8", "D5"] {
            let t = table(name);
            let g = &t.group;
            for (i, row) in t.characters.iter().enumerate() {
                let omega: Vec<(f64, f64)> = t
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(s, c)| {
                        let (re, im) = row[s].to_complex();
                        let f = c.len() as f64 / t.degrees[i] as f64;
                        (re * f, im * f)
                    })
                    .collect();
                for (j, cj) in t.classes.iter().enumerate() {
                    for (r, cr) in t.classes.iter().enumerate() {
                        let mut rhs = (0.0, 0.0);
                        for (s, cs) in t.classes.iter().enumerate() {
                            let cnt = cj.iter().filter(|&&x| cr.contains(&g.op(g.inv(x), cs[0]))).count() as f64;
                            rhs.0 += cnt * omega[s].0;
                            rhs.1 += cnt * omega[s].1;
                        }
                        let lhs = (
                            omega[j].0 * omega[r].0 - omega[j].1 * omega[r].1,
                            omega[j].0 * omega[r].1 + omega[j].1 * omega[r].0,
                        );
                        assert!((lhs.0 - rhs.0).abs() < 1e-9 && (lhs.1 - rhs.1).abs() < 1e-9);
                    }
                }
            }
        }
    }
}
