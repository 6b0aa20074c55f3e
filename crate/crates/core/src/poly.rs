//! Univariate polynomials over F_p, Z and Q, and factorization over Q by
//! Cantor–Zassenhaus, Hensel lifting and Zassenhaus recombination.
//!
//! Coefficient vectors run from the constant term up with no trailing zeros;
//! the zero polynomial is the empty vector.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p ≥ `at_least` with p ≡ 1 mod n.
pub fn prime_one_mod(n: u64, at_least: u64) -> u64 {
    let mut p = at_least.max(2);
    p += (n + 1 - p % n) % n;
    loop {
        if p % n == 1 % n && is_prime(p) {
            return p;
        }
        p += n;
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// A square root of a modulo an odd prime p, by Tonelli–Shanks.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, (q + 1) / 2, p));
    while t != 1 {
        let (mut i, mut t2) = (0, t);
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// A generator of F_p^× (p prime).
pub fn primitive_root(p: u64) -> u64 {
    let mut m = p - 1;
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root")
}

/// Polynomials over F_p for a prime p < 2³².
pub mod fp {
    use super::*;

    pub type P = Vec<u64>;

    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn from_i64(a: &[i64], p: u64) -> P {
        trim(a.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
    }

    pub fn from_big(a: &[BigInt], p: u64) -> P {
        let pb = BigInt::from(p);
        trim(a.iter().map(|v| v.mod_floor(&pb).to_u64().expect("reduced")).collect())
    }

    pub fn deg(a: &P) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn add(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
    }

    pub fn sub(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
    }

    pub fn scale(a: &P, k: u64, p: u64) -> P {
        trim(a.iter().map(|v| v * (k % p) % p).collect())
    }

    pub fn mul(a: &P, b: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        let bound = u128::from(p - 1).pow(2) * a.len().min(b.len()) as u128;
        if bound < u128::from(u64::MAX) {
            // small p: accumulate exactly and reduce once
            for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
                for (o, &y) in out[i..].iter_mut().zip(b) {
                    *o += x * y;
                }
            }
            out.iter_mut().for_each(|o| *o %= p);
        } else {
            for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
                for (o, &y) in out[i..].iter_mut().zip(b) {
                    *o = (*o + x * y % p) % p;
                }
            }
        }
        trim(out)
    }

    pub fn divrem(a: &P, b: &P, p: u64) -> (P, P) {
        let db = deg(b).expect("division by zero polynomial");
        let inv = inv_mod(b[db], p);
        let mut r = a.clone();
        if r.len() <= db {
            return (vec![], r);
        }
        let neg: Vec<u64> = b.iter().map(|&v| (p - v % p) % p).collect();
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db] * inv % p;
            q[i] = c;
            if c != 0 {
                for (x, &nb) in r[i..=i + db].iter_mut().zip(&neg) {
                    *x = (*x + c * nb % p) % p;
                }
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(a: &P, b: &P, p: u64) -> P {
        divrem(a, b, p).1
    }

    pub fn monic(a: &P, p: u64) -> P {
        match a.last() {
            None => vec![],
            Some(&l) => scale(a, inv_mod(l, p), p),
        }
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// (g, s, t) with s·a + t·b = g monic.
    pub fn ext_gcd(a: &P, b: &P, p: u64) -> (P, P, P) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], vec![]);
        let (mut t0, mut t1) = (vec![], vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = inv_mod(*r0.last().expect("not both zero"), p);
        (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
    }

    pub fn deriv(a: &P, p: u64) -> P {
        trim(a.iter().enumerate().skip(1).map(|(i, &v)| v * (i as u64 % p) % p).collect())
    }

    /// base^e mod m, squaring in place with two scratch buffers.
    pub fn pow_mod_poly(base: &P, e: &BigUint, m: &P, p: u64) -> P {
        let n = deg(m).expect("nonzero modulus");
        if n == 0 {
            return vec![];
        }
        // x^n ≡ Σ tail[j] x^j mod m
        let lead = inv_mod(m[n], p);
        let tail: Vec<u64> = m[..n].iter().map(|&v| (p - v * lead % p) % p).collect();
        let reduce = |buf: &mut Vec<u64>| {
            for i in (n..buf.len()).rev() {
                let c = buf[i];
                if c != 0 {
                    for (x, &t) in buf[i - n..i].iter_mut().zip(&tail) {
                        *x = (*x + c * t) % p;
                    }
                }
            }
            buf.truncate(n);
        };
        let product = |a: &[u64], b: &[u64], out: &mut Vec<u64>| {
            out.clear();
            out.resize(a.len() + b.len() - 1, 0);
            for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
                for (o, &y) in out[i..].iter_mut().zip(b) {
                    *o = (*o + x * y) % p;
                }
            }
            reduce(out);
        };
        let mut b = rem(base, m, p);
        b.resize(n, 0);
        let mut r = vec![0u64; n];
        r[0] = 1;
        let mut tmp = Vec::with_capacity(2 * n);
        for i in (0..e.bits()).rev() {
            product(&r, &r, &mut tmp);
            std::mem::swap(&mut r, &mut tmp);
            if e.bit(i) {
                product(&r, &b, &mut tmp);
                std::mem::swap(&mut r, &mut tmp);
            }
        }
        trim(r)
    }

    pub fn eval(a: &P, x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn ddf(f: &P, p: u64) -> Vec<(P, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: P = vec![0, 1];
        let mut h = x.clone();
        let pe = BigUint::from(p);
        let mut d = 0;
        while deg(&f).unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = pow_mod_poly(&h, &pe, &f, p);
            let g = gcd(&sub(&h, &x, p), &f, p);
            if deg(&g).unwrap_or(0) > 0 {
                f = divrem(&f, &g, p).0;
                h = rem(&h, &f, p);
                out.push((g, d));
            }
        }
        if deg(&f).unwrap_or(0) > 0 {
            let df = deg(&f).expect("nonzero");
            out.push((f, df));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree d (p odd).
    pub fn edf(f: &P, d: usize, p: u64, rng: &mut impl Rng) -> Vec<P> {
        let n = deg(f).expect("nonzero");
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: P = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
            if deg(&a).unwrap_or(0) == 0 {
                continue;
            }
            let b = sub(&pow_mod_poly(&a, &e, f, p), &vec![1], p);
            let g = gcd(&b, f, p);
            let dg = deg(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let h = divrem(f, &g, p).0;
                let mut out = edf(&g, d, p, rng);
                out.extend(edf(&h, d, p, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor(f: &P, p: u64, rng: &mut impl Rng) -> Vec<P> {
        ddf(f, p).into_iter().flat_map(|(g, d)| edf(&g, d, p, rng)).collect()
    }

    /// Distinct roots in F_p.
    pub fn roots(f: &P, p: u64, rng: &mut impl Rng) -> Vec<u64> {
        let f = monic(f, p);
        if deg(&f).unwrap_or(0) == 0 {
            return vec![];
        }
        let xp = pow_mod_poly(&vec![0, 1], &BigUint::from(p), &f, p);
        let g = gcd(&sub(&xp, &vec![0, 1], p), &f, p);
        if deg(&g).unwrap_or(0) == 0 {
            return vec![];
        }
        let mut r: Vec<u64> = match g.len() {
            2 => vec![(p - g[0]) % p],
            // distinct roots of x² + bx + c are (−b ± √(b² − 4c))/2
            3 if p > 2 => {
                let (b, c) = (g[1], g[0]);
                let disc = (b * b % p + p - 4 * c % p) % p;
                let root = sqrt_mod(disc, p).expect("g splits into linear factors");
                let half = inv_mod(2, p);
                vec![(p - b + root) % p * half % p, (2 * p - b - root) % p * half % p]
            }
            _ => edf(&g, 1, p, rng).iter().map(|l| (p - l[0]) % p).collect(),
        };
        r.sort_unstable();
        r
    }

    pub fn is_squarefree(f: &P, p: u64) -> bool {
        deg(&gcd(f, &deriv(f, p), p)) == Some(0)
    }
}

/// Polynomials over Z.
pub mod zp {
    use super::*;

    pub type P = Vec<BigInt>;

    pub fn trim(mut a: P) -> P {
        while a.last().is_some_and(|v| v.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &P) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn content(a: &P) -> BigInt {
        a.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(a: &P) -> P {
        let mut c = content(a);
        if a.last().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_zero() {
            return vec![];
        }
        a.iter().map(|v| v / &c).collect()
    }

    pub fn mul(a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// a / b when b divides a in Z[x].
    pub fn exact_div(a: &P, b: &P) -> Option<P> {
        let db = deg(b)?;
        let lb = &b[db];
        let mut r = a.clone();
        if r.len() <= db {
            return r.is_empty().then(Vec::new);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let (c, rem) = r[i + db].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for j in 0..=db {
                r[i + j] -= &c * &b[j];
            }
            q[i] = c;
        }
        r.iter().all(|v| v.is_zero()).then(|| trim(q))
    }

    pub fn reduce(a: &P, m: &BigInt) -> P {
        trim(a.iter().map(|v| v.mod_floor(m)).collect())
    }

    pub fn symmetric(a: &P, m: &BigInt) -> P {
        let half = m / 2;
        trim(
            a.iter()
                .map(|v| {
                    let r = v.mod_floor(m);
                    if r > half { r - m } else { r }
                })
                .collect(),
        )
    }

    fn add_mod(a: &P, b: &P, m: &BigInt) -> P {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
    }

    fn sub_mod(a: &P, b: &P, m: &BigInt) -> P {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
    }

    fn mul_mod(a: &P, b: &P, m: &BigInt) -> P {
        reduce(&mul(a, b), m)
    }

    /// Division by a monic polynomial modulo m.
    fn divrem_monic(a: &P, b: &P, m: &BigInt) -> (P, P) {
        let db = deg(b).expect("nonzero divisor");
        let mut r = reduce(a, m);
        if r.len() <= db {
            return (vec![], r);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db].clone();
            if !c.is_zero() {
                for j in 0..=db {
                    r[i + j] = (&r[i + j] - &c * &b[j]).mod_floor(m);
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    fn lift_fp(a: &fp::P) -> P {
        a.iter().map(|&v| BigInt::from(v)).collect()
    }

    /// One quadratic Hensel step: from f ≡ gh, sg + th ≡ 1 mod m to mod m².
    #[allow(clippy::too_many_arguments)]
    fn hensel_step(f: &P, g: &P, h: &P, s: &P, t: &P, m2: &BigInt) -> (P, P, P, P) {
        let e = sub_mod(f, &mul_mod(g, h, m2), m2);
        let (q, r) = divrem_monic(&mul_mod(s, &e, m2), h, m2);
        let g2 = add_mod(&add_mod(g, &mul_mod(t, &e, m2), m2), &mul_mod(&q, g, m2), m2);
        let h2 = add_mod(h, &r, m2);
        let b = sub_mod(&add_mod(&mul_mod(s, &g2, m2), &mul_mod(t, &h2, m2), m2), &vec![BigInt::one()], m2);
        let (c, d) = divrem_monic(&mul_mod(s, &b, m2), &h2, m2);
        let s2 = sub_mod(s, &d, m2);
        let t2 = sub_mod(&sub_mod(t, &mul_mod(t, &b, m2), m2), &mul_mod(&c, &g2, m2), m2);
        (g2, h2, s2, t2)
    }

    /// Lifts a factorization of the monic f mod p into monic factors mod
    /// p^(2^steps).
    fn multi_lift(f: &P, factors: &[fp::P], p: u64, steps: u32) -> Vec<P> {
        let big_m = BigInt::from(p).pow(1u32 << steps);
        if factors.len() == 1 {
            return vec![reduce(f, &big_m)];
        }
        let k = factors.len() / 2;
        let prod = |fs: &[fp::P]| fs.iter().fold(vec![1u64], |acc, x| fp::mul(&acc, x, p));
        let (g0, h0) = (prod(&factors[..k]), prod(&factors[k..]));
        let (one, s0, t0) = fp::ext_gcd(&g0, &h0, p);
        debug_assert_eq!(one, vec![1]);
        let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0));
        let mut m = BigInt::from(p);
        for _ in 0..steps {
            m = &m * &m;
            (g, h, s, t) = hensel_step(&reduce(f, &m), &g, &h, &s, &t, &m);
        }
        let mut out = multi_lift(&g, &factors[..k], p, steps);
        out.extend(multi_lift(&h, &factors[k..], p, steps));
        out
    }

    fn choose_prime(f: &P) -> (u64, Vec<fp::P>) {
        let lc = f.last().expect("nonzero");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut best: Option<(usize, u64, fp::P)> = None;
        let mut tried = 0;
        let mut p = 3u64;
        while tried < 8 {
            p += 2;
            if !is_prime(p) || (lc % BigInt::from(p)).is_zero() {
                continue;
            }
            let fm = fp::monic(&fp::from_big(f, p), p);
            if !fp::is_squarefree(&fm, p) {
                assert!(p < 100_000, "polynomial is not squarefree");
                continue;
            }
            tried += 1;
            let count: usize = fp::ddf(&fm, p).iter().map(|(g, d)| fp::deg(g).unwrap_or(0) / d).sum();
            if best.as_ref().is_none_or(|b| count < b.0) {
                best = Some((count, p, fm));
            }
            if count == 1 {
                break;
            }
        }
        let (_, p, fm) = best.expect("some prime works");
        (p, fp::factor(&fm, p, &mut rng))
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    /// Irreducible factors over Q of a squarefree f ∈ Z[x], as primitive
    /// integer polynomials with positive leading coefficients, sorted.
    pub fn factor_squarefree(f: &P) -> Vec<P> {
        let f = primitive(f);
        let n = deg(&f).expect("nonzero polynomial");
        if n <= 1 {
            return if n == 1 { vec![f] } else { vec![] };
        }
        let (p, mod_factors) = choose_prime(&f);
        if mod_factors.len() == 1 {
            return vec![f];
        }
        // factor coefficients (times the leading coefficient) stay below B
        let norm: BigInt = f.iter().map(|v| v.abs()).max().expect("nonzero");
        let lc = f[n].clone();
        let bound = BigInt::from(2).pow(n as u32 + 1) * norm * BigInt::from(n as u64 + 1) * lc.abs();
        let mut steps = 0u32;
        while BigInt::from(p).pow(1u32 << steps) <= &bound * 2 {
            steps += 1;
        }
        let big_m = BigInt::from(p).pow(1u32 << steps);
        let lc_inv = lc.mod_floor(&big_m).modinv(&big_m).expect("lc is coprime to p");
        let monic_f: P = f.iter().map(|v| (v * &lc_inv).mod_floor(&big_m)).collect();
        let mut lifted = multi_lift(&monic_f, &mod_factors, p, steps);

        let mut out = Vec::new();
        let mut rest = f;
        let mut s = 1;
        while 2 * s <= lifted.len() {
            let mut found = false;
            for subset in combinations(lifted.len(), s) {
                let lc_rest = rest.last().expect("nonzero").clone();
                let cand = subset
                    .iter()
                    .fold(vec![lc_rest], |acc, &i| reduce(&mul(&acc, &lifted[i]), &big_m));
                let cand = primitive(&symmetric(&cand, &big_m));
                if let Some(q) = exact_div(&rest, &cand) {
                    out.push(cand);
                    rest = q;
                    lifted = lifted
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !subset.contains(i))
                        .map(|(_, v)| v)
                        .collect();
                    found = true;
                    break;
                }
            }
            if !found {
                s += 1;
            }
        }
        if deg(&rest).unwrap_or(0) > 0 {
            out.push(primitive(&rest));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn from_i64(a: &[i64]) -> P {
        trim(a.iter().map(|&v| BigInt::from(v)).collect())
    }
}

/// Polynomials over Q.
pub mod qp {
    use super::*;

    pub type P = Vec<BigRational>;

    pub fn trim(mut a: P) -> P {
        while a.last().is_some_and(|v| v.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &P) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn from_z(a: &zp::P) -> P {
        a.iter().map(|v| BigRational::from_integer(v.clone())).collect()
    }

    /// Scales to a primitive integer polynomial.
    pub fn to_z(a: &P) -> zp::P {
        let den = a.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        zp::primitive(&a.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect())
    }

    pub fn add(a: &P, b: &P) -> P {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(a: &P, b: &P) -> P {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &P, b: &P) -> (P, P) {
        let db = deg(b).expect("division by zero polynomial");
        let mut r = a.clone();
        if r.len() <= db {
            return (vec![], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &b[db];
            for j in 0..=db {
                let t = &c * &b[j];
                r[i + j] -= t;
            }
            q[i] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    /// (g, s, t) with s·a + t·b = g monic.
    pub fn ext_gcd(a: &P, b: &P) -> (P, P, P) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![BigRational::one()], vec![]);
        let (mut t0, mut t1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = r0.last().expect("not both zero").clone();
        let sc = |v: &P| v.iter().map(|x| x / &l).collect::<P>();
        (sc(&r0), sc(&s0), sc(&t0))
    }

    /// CRT idempotent polynomials: eᵢ ≡ 1 mod fᵢ and ≡ 0 mod fⱼ (j ≠ i), for
    /// pairwise coprime fᵢ, reduced modulo the product.
    pub fn crt_idempotents(factors: &[P]) -> Vec<P> {
        let total = factors.iter().fold(vec![BigRational::one()], |acc, f| mul(&acc, f));
        factors
            .iter()
            .map(|f| {
                let co = divrem(&total, f).0;
                let (g, s, _) = ext_gcd(&co, f);
                assert_eq!(g.len(), 1, "factors are not coprime");
                divrem(&mul(&s, &co), &total).1
            })
            .collect()
    }
}

pub fn sign_of(v: &BigInt) -> i32 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(a: &[i64]) -> zp::P {
        zp::from_i64(a)
    }

    #[test]
    fn factors_cyclotomic_products() {
        // x^8 − 1 = Φ1 Φ2 Φ4 Φ8
        let f = z(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fs = zp::factor_squarefree(&f);
        assert_eq!(fs, vec![z(&[-1, 1]), z(&[1, 1]), z(&[1, 0, 1]), z(&[1, 0, 0, 0, 1])]);
        // x^4 + 1 splits into linear factors modulo every prime ≡ 1 mod 8 but
        // is irreducible over Q
        assert_eq!(zp::factor_squarefree(&z(&[1, 0, 0, 0, 1])).len(), 1);
        // Swinnerton-Dyer polynomial of √2, √3
        assert_eq!(zp::factor_squarefree(&z(&[1, 0, -10, 0, 1])).len(), 1);
    }

    #[test]
    fn non_monic() {
        let f = zp::mul(&z(&[1, 3]), &z(&[-2, 0, 5]));
        assert_eq!(zp::factor_squarefree(&f), vec![z(&[1, 3]), z(&[-2, 0, 5])]);
    }

    #[test]
    fn crt() {
        let fs = [qp::from_z(&z(&[-1, 1])), qp::from_z(&z(&[1, 0, 1]))];
        let es = qp::crt_idempotents(&fs);
        for (i, e) in es.iter().enumerate() {
            for (j, f) in fs.iter().enumerate() {
                let r = qp::divrem(e, f).1;
                let expect: qp::P = if i == j { vec![BigRational::one()] } else { vec![] };
                assert_eq!(r, expect);
            }
        }
    }

    #[test]
    fn square_roots_mod_p() {
        for p in [3u64, 5, 13, 17, 97, 1009, 7681] {
            for a in 0..p.min(200) {
                let is_square = (0..p).any(|x| x * x % p == a);
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(r * r % p, a, "p={p} a={a}"),
                    None => assert!(!is_square, "p={p} a={a}"),
                }
            }
        }
    }

    #[test]
    fn roots_mod_p() {
        let p = 101;
        let f = fp::mul(&vec![p - 3, 1], &vec![p - 7, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(fp::roots(&fp::mul(&f, &vec![1, 0, 1], p), p, &mut rng), vec![3, 7, 10, 91]);
        assert_eq!(fp::roots(&f, p, &mut rng), vec![3, 7]);
        assert_eq!(fp::roots(&fp::mul(&f, &f, p), p, &mut rng), vec![3, 7]);
        assert_eq!(fp::roots(&vec![p - 5, 1], p, &mut rng), vec![5]);
        // 1000003 ≡ 3 mod 4, so x² + 1 has no roots
        let q = 1_000_003;
        let g = fp::mul(&vec![q - 3, 1], &vec![q - 7, 1], q);
        assert_eq!(fp::roots(&fp::mul(&g, &vec![1, 0, 1], q), q, &mut rng), vec![3, 7]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn products_of_random_factors(a in prop::collection::vec(-5i64..6, 2..4),
                                      b in prop::collection::vec(-5i64..6, 2..5)) {
            let (fa, fb) = (z(&a), z(&b));
            prop_assume!(zp::deg(&fa).unwrap_or(0) >= 1 && zp::deg(&fb).unwrap_or(0) >= 1);
            let f = zp::mul(&fa, &fb);
            // only squarefree inputs are in scope
            let fq = qp::from_z(&f);
            let df: qp::P = qp::trim(fq.iter().enumerate().skip(1)
                .map(|(i, v)| v * BigRational::from_integer(BigInt::from(i))).collect());
            prop_assume!(qp::ext_gcd(&fq, &df).0.len() == 1);
            let fs = zp::factor_squarefree(&f);
            let prod = fs.iter().fold(z(&[1]), |acc, g| zp::mul(&acc, g));
            prop_assert_eq!(zp::primitive(&prod), zp::primitive(&f));
            prop_assert!(fs.len() >= 2);
        }
    }
}
