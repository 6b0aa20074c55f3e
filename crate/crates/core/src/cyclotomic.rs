//! Exact arithmetic in Z[ζ_N].
//!
//! Values are kept as coefficient vectors on the N roots ζ_N^k. That basis is
//! over-complete, so equality and rationality go through reduction modulo the
//! cyclotomic polynomial Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

/// Φ_n with coefficients from the constant term up.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "Φ_0 is undefined");
    // x^n − 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().expect("cache lock").insert(n, num.clone());
    num
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let mut r = a.to_vec();
    let mut q = vec![0i64; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db];
        q[i] = c;
        for j in 0..=db {
            r[i + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&v| v == 0), "inexact division by a cyclotomic polynomial");
    q
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Σ c_k ζ_N^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    n: usize,
    c: Vec<i64>,
}

impl Cyclo {
    pub fn zero(n: usize) -> Self {
        Cyclo { n, c: vec![0; n] }
    }

    pub fn from_int(n: usize, v: i64) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = v;
        z
    }

    /// ζ_N^k
    pub fn root(n: usize, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.c[k.rem_euclid(n as i64) as usize] = 1;
        z
    }

    pub fn from_coeffs(n: usize, c: Vec<i64>) -> Self {
        assert_eq!(c.len(), n);
        Cyclo { n, c }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.n, o.n);
        Cyclo { n: self.n, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn add_assign(&mut self, o: &Cyclo) {
        assert_eq!(self.n, o.n);
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }

    pub fn sub(&self, o: &Cyclo) -> Cyclo {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cyclo {
        Cyclo { n: self.n, c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.n, o.n);
        let mut out = Self::zero(self.n);
        for (i, &a) in self.c.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in o.c.iter().enumerate().filter(|(_, b)| **b != 0) {
                out.c[(i + j) % self.n] += a * b;
            }
        }
        out
    }

    /// Multiplication by ζ_N^t.
    pub fn shift(&self, t: i64) -> Cyclo {
        let n = self.n as i64;
        let mut out = Self::zero(self.n);
        for (i, &a) in self.c.iter().enumerate() {
            out.c[(i as i64 + t).rem_euclid(n) as usize] = a;
        }
        out
    }

    /// Complex conjugate: ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    /// The Galois automorphism ζ ↦ ζ^j.
    pub fn galois(&self, j: i64) -> Cyclo {
        let n = self.n as i64;
        let mut out = Self::zero(self.n);
        for (i, &a) in self.c.iter().enumerate() {
            out.c[(i as i64 * j).rem_euclid(n) as usize] += a;
        }
        out
    }

    /// Re-expresses in Z[ζ_M] for a multiple M of N.
    pub fn embed(&self, m: usize) -> Cyclo {
        assert_eq!(m % self.n, 0, "Q(ζ_{}) does not embed in Q(ζ_{m})", self.n);
        let k = m / self.n;
        let mut out = Self::zero(m);
        for (i, &a) in self.c.iter().enumerate() {
            out.c[i * k] = a;
        }
        out
    }

    /// Canonical coordinates in the power basis 1, ζ, …, ζ^{φ(N)−1}.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.n);
        let d = phi.len() - 1;
        let mut r = self.c.clone();
        for i in (d..self.n).rev() {
            let c = r[i];
            if c != 0 {
                for j in 0..=d {
                    r[i - d + j] -= c * phi[j];
                }
            }
        }
        r.truncate(d);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&v| v == 0)
    }

    pub fn value_eq(&self, o: &Cyclo) -> bool {
        self.sub(o).is_zero()
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        r[1..].iter().all(|&v| v == 0).then_some(r[0])
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.n as f64;
        self.c.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &a)| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            (re + a as f64 * t.cos(), im + a as f64 * t.sin())
        })
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, &a) in self.c.iter().enumerate().filter(|(_, a)| **a != 0) {
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.abs();
            let coef = if mag == 1 && k != 0 { String::new() } else { mag.to_string() };
            let root = match k {
                0 => String::new(),
                _ => format!("z{}^{k}", self.n),
            };
            write!(f, "{sign}{coef}{root}")?;
            first = false;
        }
        Ok(())
    }
}
