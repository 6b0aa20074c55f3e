//! Integer matrices, Smith normal form with optional unimodular transforms,
//! and finitely generated abelian group presentations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data: data.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(r, c, &flat)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
}

/// Which unimodular transforms to accumulate during reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
    pub right_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { left: false, left_inv: false, right: false, right_inv: false };
    pub const ALL: Track = Track { left: true, left_inv: true, right: true, right_inv: true };
}

/// Smith normal form `D = U·A·V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal entries d₁ | d₂ | … of length min(rows, cols); zeros last.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

/// Scalar operations the elimination needs; `None` signals overflow.
trait Scalar: Clone + PartialEq + fmt::Debug {
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn s_from_big(x: &BigInt) -> Option<Self>;
    fn s_to_big(&self) -> BigInt;
    fn s_is_zero(&self) -> bool;
    fn s_is_neg(&self) -> bool;
    fn s_abs_lt(&self, other: &Self) -> bool;
    fn s_is_unit(&self) -> bool;
    fn s_add(&self, o: &Self) -> Option<Self>;
    fn s_mul(&self, o: &Self) -> Option<Self>;
    fn s_neg(&self) -> Option<Self>;
    /// Floor quotient.
    fn s_quot(&self, d: &Self) -> Self;
    fn s_divides(&self, x: &Self) -> bool;
}

impl Scalar for i128 {
    fn s_zero() -> Self {
        0
    }
    fn s_one() -> Self {
        1
    }
    fn s_from_big(x: &BigInt) -> Option<Self> {
        x.to_i128().filter(|v| v.unsigned_abs() < (1u128 << 100))
    }
    fn s_to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn s_is_neg(&self) -> bool {
        *self < 0
    }
    fn s_abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn s_is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn s_add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o).filter(|v| v.unsigned_abs() < (1u128 << 100))
    }
    fn s_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o).filter(|v| v.unsigned_abs() < (1u128 << 100))
    }
    fn s_neg(&self) -> Option<Self> {
        Some(-*self)
    }
    fn s_quot(&self, d: &Self) -> Self {
        self.div_floor(d)
    }
    fn s_divides(&self, x: &Self) -> bool {
        *self != 0 && x % self == 0
    }
}

impl Scalar for BigInt {
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_one() -> Self {
        One::one()
    }
    fn s_from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn s_to_big(&self) -> BigInt {
        self.clone()
    }
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn s_is_neg(&self) -> bool {
        self.is_negative()
    }
    fn s_abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn s_is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn s_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn s_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn s_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn s_quot(&self, d: &Self) -> Self {
        self.div_floor(d)
    }
    fn s_divides(&self, x: &Self) -> bool {
        !Zero::is_zero(self) && (x % self).is_zero()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    u: Option<Vec<T>>,
    u_inv: Option<Vec<T>>,
    v: Option<Vec<T>>,
    v_inv: Option<Vec<T>>,
}

impl<T: Scalar> Work<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    /// row_i += k·row_j
    fn row_add(&mut self, i: usize, j: usize, k: &T) -> Option<()> {
        let (r, c) = (self.rows, self.cols);
        axpy_rows(&mut self.a, c, i, j, k)?;
        if let Some(u) = self.u.as_mut() {
            axpy_rows(u, r, i, j, k)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // col_j -= k·col_i
            axpy_cols(ui, r, r, j, i, &k.s_neg()?)?;
        }
        Some(())
    }

    /// col_i += k·col_t when column t is zero outside row t.
    fn col_add_clean(&mut self, i: usize, t: usize, k: &T) -> Option<()> {
        let c = self.cols;
        let v = self.a[t * c + i].s_add(&k.s_mul(&self.a[t * c + t])?)?;
        self.a[t * c + i] = v;
        if let Some(v) = self.v.as_mut() {
            axpy_cols(v, c, c, i, t, k)?;
        }
        if let Some(vi) = self.v_inv.as_mut() {
            axpy_rows(vi, c, t, i, &k.s_neg()?)?;
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (r, c) = (self.rows, self.cols);
        swap_rows(&mut self.a, c, i, j);
        if let Some(u) = self.u.as_mut() {
            swap_rows(u, r, i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            swap_cols(ui, r, r, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (r, c) = (self.rows, self.cols);
        swap_cols(&mut self.a, r, c, i, j);
        if let Some(v) = self.v.as_mut() {
            swap_cols(v, c, c, i, j);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            swap_rows(vi, c, i, j);
        }
    }

    fn row_neg(&mut self, i: usize) -> Option<()> {
        let (r, c) = (self.rows, self.cols);
        for j in 0..c {
            self.a[i * c + j] = self.a[i * c + j].s_neg()?;
        }
        if let Some(u) = self.u.as_mut() {
            for j in 0..r {
                u[i * r + j] = u[i * r + j].s_neg()?;
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for j in 0..r {
                ui[j * r + i] = ui[j * r + i].s_neg()?;
            }
        }
        Some(())
    }
}

fn axpy_rows<T: Scalar>(m: &mut [T], cols: usize, i: usize, j: usize, k: &T) -> Option<()> {
    for c in 0..cols {
        let src = &m[j * cols + c];
        if !src.s_is_zero() {
            let v = m[i * cols + c].s_add(&k.s_mul(src)?)?;
            m[i * cols + c] = v;
        }
    }
    Some(())
}

fn axpy_cols<T: Scalar>(m: &mut [T], rows: usize, cols: usize, i: usize, j: usize, k: &T) -> Option<()> {
    for r in 0..rows {
        let src = &m[r * cols + j];
        if !src.s_is_zero() {
            let v = m[r * cols + i].s_add(&k.s_mul(src)?)?;
            m[r * cols + i] = v;
        }
    }
    Some(())
}

fn swap_rows<T>(m: &mut [T], cols: usize, i: usize, j: usize) {
    for c in 0..cols {
        m.swap(i * cols + c, j * cols + c);
    }
}

fn swap_cols<T>(m: &mut [T], rows: usize, cols: usize, i: usize, j: usize) {
    for r in 0..rows {
        m.swap(r * cols + i, r * cols + j);
    }
}

fn identity_vec<T: Scalar>(n: usize) -> Vec<T> {
    let mut v = vec![T::s_zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::s_one();
    }
    v
}

fn smith_generic<T: Scalar>(a: &IntMatrix, track: Track) -> Option<Smith> {
    let (rows, cols) = (a.rows, a.cols);
    let data: Option<Vec<T>> = a.data.iter().map(T::s_from_big).collect();
    let mut w = Work {
        rows,
        cols,
        a: data?,
        u: track.left.then(|| identity_vec(rows)),
        u_inv: track.left_inv.then(|| identity_vec(rows)),
        v: track.right.then(|| identity_vec(cols)),
        v_inv: track.right_inv.then(|| identity_vec(cols)),
    };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let x = w.at(i, j);
                if x.s_is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.s_abs_lt(w.at(bi, bj)) => {}
                    _ => {
                        best = Some((i, j));
                        if x.s_is_unit() {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.at(i, t).s_is_zero() {
                    continue;
                }
                let q = w.at(i, t).s_quot(w.at(t, t));
                w.row_add(i, t, &q.s_neg()?)?;
                if !w.at(i, t).s_is_zero() {
                    w.row_swap(t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // column t is clear below the pivot, so column operations only
            // touch row t of the working matrix
            for j in t + 1..cols {
                if w.at(t, j).s_is_zero() {
                    continue;
                }
                let q = w.at(t, j).s_quot(w.at(t, t));
                w.col_add_clean(j, t, &q.s_neg()?)?;
                if !w.at(t, j).s_is_zero() {
                    w.col_swap(t, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = w.at(t, t).clone();
            if p.s_is_unit() {
                break;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !p.s_divides(w.at(i, j))));
            match bad {
                Some(i) => {
                    w.row_add(t, i, &T::s_one())?;
                }
                None => break,
            }
        }
        if w.at(t, t).s_is_neg() {
            w.row_neg(t)?;
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..n).map(|i| w.at(i, i).s_to_big()).collect();
    let rank = diag.iter().filter(|d| !d.s_is_zero()).count();
    let conv = |m: Option<Vec<T>>, k: usize| {
        m.map(|v| IntMatrix { rows: k, cols: k, data: v.iter().map(T::s_to_big).collect() })
    };
    Some(Smith {
        diag,
        rank,
        u: conv(w.u, rows),
        u_inv: conv(w.u_inv, rows),
        v: conv(w.v, cols),
        v_inv: conv(w.v_inv, cols),
    })
}

/// Smith normal form; machine integers with a big-integer fallback on
/// overflow.
pub fn smith(a: &IntMatrix, track: Track) -> Smith {
    smith_generic::<i128>(a, track)
        .or_else(|| smith_generic::<BigInt>(a, track))
        .expect("big-integer elimination cannot overflow")
}

/// Finitely generated abelian group Z^rank ⊕ Z/d₁ ⊕ … with d₁ | d₂ | ….
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbelianGroupPresentation {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroupPresentation {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupPresentation { rank, torsion: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_factors(0, &[n])
    }

    /// Canonical form of Z^rank ⊕ ⊕ Z/nᵢ for arbitrary nᵢ ≥ 0; zeros add to
    /// the rank and units vanish.
    pub fn from_cyclic_factors(rank: usize, factors: &[u64]) -> Self {
        let mut rank = rank;
        let mut primes: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &f in factors {
            if f == 0 {
                rank += 1;
                continue;
            }
            for (p, e) in factorize(f) {
                primes.entry(p).or_default().push(e);
            }
        }
        let len = primes.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for (p, mut exps) in primes {
            exps.sort_unstable();
            // the largest exponents go to the last invariant factors
            for (k, e) in exps.iter().rev().enumerate() {
                torsion[len - 1 - k] *= p.pow(*e);
            }
        }
        AbelianGroupPresentation { rank, torsion }
    }

    /// Cokernel Z^rows / (column span of `a`).
    pub fn cokernel(a: &IntMatrix) -> Self {
        let s = smith(a, Track::NONE);
        let factors: Vec<u64> = s
            .diag
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.to_u64().expect("torsion fits in u64"))
            .collect();
        Self::from_cyclic_factors(a.rows - s.rank, &factors)
    }

    /// Reconstructs a finite abelian group from the orders of its elements.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let mut factors = Vec::new();
        let n = orders.len() as u64;
        for (p, _) in factorize(n) {
            // |{x : p^k x = 0}| = p^{Σ min(k, eᵢ)}
            let mut counts = vec![0u32];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut e = 0;
                let mut cc = c;
                while cc > 1 {
                    cc /= p;
                    e += 1;
                }
                counts.push(e);
                if counts[k as usize] == counts[k as usize - 1] {
                    break;
                }
                k += 1;
            }
            // number of cyclic factors of exponent ≥ k is counts[k] − counts[k−1]
            let ge: Vec<u32> = (1..counts.len()).map(|k| counts[k] - counts[k - 1]).collect();
            for k in 1..=ge.len() {
                let exact = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
                for _ in 0..exact {
                    factors.push(p.pow(k as u32));
                }
            }
        }
        Self::from_cyclic_factors(0, &factors)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order when finite.
    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut f = self.torsion.clone();
        f.extend(&other.torsion);
        Self::from_cyclic_factors(self.rank + other.rank, &f)
    }

    /// Plain-ASCII rendering such as `Z^2 + Z/2 + Z/4`.
    pub fn ascii(&self) -> String {
        self.render(" + ", "Z")
    }

    fn render(&self, sep: &str, z: &str) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(z.to_string()),
            r => parts.push(format!("{z}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("{z}/{d}")));
        parts.join(sep)
    }

    /// Parses the output of `Display` or `ascii`.
    pub fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        if t == "0" {
            return Some(Self::trivial());
        }
        let mut rank = 0;
        let mut tors = Vec::new();
        for part in t.split(['+', '⊕']) {
            let p = part.trim();
            if p == "Z" {
                rank += 1;
            } else if let Some(r) = p.strip_prefix("Z^") {
                rank += r.parse::<usize>().ok()?;
            } else if let Some(d) = p.strip_prefix("Z/") {
                tors.push(d.parse::<u64>().ok().filter(|&d| d > 1)?);
            } else {
                return None;
            }
        }
        Some(Self::from_cyclic_factors(rank, &tors))
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" ⊕ ", "Z"))
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_u64(s: &Smith) -> Vec<u64> {
        s.diag.iter().map(|d| d.to_u64().unwrap()).collect()
    }

    #[test]
    fn small_smith() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a, Track::ALL);
        assert_eq!(diag_u64(&s), vec![2, 6, 12]);
        let d = s.u.as_ref().unwrap().mul(&a).mul(s.v.as_ref().unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &want);
            }
        }
    }

    #[test]
    fn presentations() {
        let g = AbelianGroupPresentation::from_cyclic_factors(1, &[6, 4, 1, 0]);
        assert_eq!(g.rank, 2);
        assert_eq!(g.torsion, vec![2, 12]);
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/2 ⊕ Z/12");
        assert_eq!(AbelianGroupPresentation::parse(&g.to_string()), Some(g.clone()));
        assert_eq!(AbelianGroupPresentation::parse(&g.ascii()), Some(g));
        assert_eq!(AbelianGroupPresentation::trivial().to_string(), "0");
    }

    #[test]
    fn element_orders() {
        // Z/2 ⊕ Z/4
        let orders = [1, 2, 4, 4, 2, 2, 4, 4];
        assert_eq!(AbelianGroupPresentation::from_element_orders(&orders).torsion, vec![2, 4]);
        assert_eq!(AbelianGroupPresentation::from_element_orders(&[1]).torsion, Vec::<u64>::new());
        assert_eq!(AbelianGroupPresentation::from_element_orders(&[1, 3, 3, 2, 6, 6]).torsion, vec![6]);
    }

    #[test]
    fn grothendieck_cokernel() {
        // N² modulo the diagonal
        let a = IntMatrix::from_rows(&[vec![1], vec![1]]);
        assert_eq!(AbelianGroupPresentation::cokernel(&a), AbelianGroupPresentation::free(1));
    }

    #[test]
    fn overflow_fallback() {
        let big = 1i64 << 40;
        let a = IntMatrix::from_rows(&[vec![big, big + 1, 3], vec![big - 1, big, 7], vec![5, big, big]]);
        let s = smith(&a, Track::ALL);
        let d = s.u.as_ref().unwrap().mul(&a).mul(s.v.as_ref().unwrap());
        assert!(d.get(0, 1).is_zero() && d.get(1, 0).is_zero());
    }

    proptest! {
        #[test]
        fn smith_transforms_are_consistent(
            rows in 1usize..6, cols in 1usize..6,
            seed in proptest::collection::vec(-9i64..10, 36)
        ) {
            let a = IntMatrix::from_i64(rows, cols, &seed[..rows * cols]);
            let s = smith(&a, Track::ALL);
            let d = s.u.as_ref().unwrap().mul(&a).mul(s.v.as_ref().unwrap());
            for i in 0..rows {
                for j in 0..cols {
                    let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(d.get(i, j), &want);
                }
            }
            let iu = s.u.as_ref().unwrap().mul(s.u_inv.as_ref().unwrap());
            prop_assert_eq!(iu, IntMatrix::identity(rows));
            let iv = s.v.as_ref().unwrap().mul(s.v_inv.as_ref().unwrap());
            prop_assert_eq!(iv, IntMatrix::identity(cols));
            for w in s.diag[..s.rank].windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(s.diag[s.rank..].iter().all(|d| d.is_zero()));
            prop_assert!(s.diag[..s.rank].iter().all(|d| d.is_positive()));
        }
    }
}
