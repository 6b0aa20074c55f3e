//! The twisted crossed product as a superalgebra over Q, and its graded
//! Wedderburn decomposition. This is an oracle for block types that shares
//! nothing with the character pipeline.
//!
//! A = Q(ζ)^τ[G] has basis ζ^j e_g (j < φ(m')), with e_g λ = φ_g(λ) e_g,
//! e_g e_h = ζ^{τ(g,h)} e_{gh} and parity c(g). Here m' = lcm(k, 4), where k
//! is the modulus of τ. Tensoring with R gives one copy of the real algebra
//! C^{jτ}[G] for each pair ±j of units mod m'. When k ∈ {1,2,3,4,6}, every
//! jτ equals ±τ, and C^{−τ}[G] is isomorphic to C^τ[G] by complex
//! conjugation. So the real blocks of A are φ(m')/2 copies of the answer.
//!
//! Graded blocks come from the primitive idempotents of the even center.
//! The primitive idempotents are found by factoring minimal polynomials of
//! random central elements over Q. For a block B with even center F of
//! degree d, the type at each real place of F follows from three
//! signatures:
//!
//! - the trace form of F, whose signature counts the real places;
//! - the trace form x,y ↦ t(xy) on B and on B⁰, where t is the trace of left
//!   multiplication;
//! - x,y ↦ Tr_F(z²xy) for an odd central z, when B has one.
//!
//! With the adjoint involution * of the left regular representation,
//! t(xy) = ⟨x, y*⟩ for a positive definite ⟨,⟩. The signature on a
//! *-stable subspace is therefore the trace of *. Per real place
//! it is +√dim for M_n(R) and −√dim for M_n(H).
//!
//! Dispatch at one real place, B_v graded-simple over R:
//!
//! | odd center | z² | B⁰ (or B) type | B⁰ center | block  | index |
//! |------------|----|----------------|-----------|--------|-------|
//! | no         |    | B real         | R ⊕ R     | R(0,0) | 0     |
//! | no         |    | B quaternionic | R ⊕ R     | R(4,0) | 4     |
//! | no         |    | B quaternionic | C         | R(2,0) | 2     |
//! | no         |    | B real         | C         | R(0,2) | 6     |
//! | yes        | −  | B⁰ real        |           | R(1,0) | 1     |
//! | yes        | −  | B⁰ quaternionic|           | R(5,0) | 5     |
//! | yes        | +  | B⁰ quaternionic|           | R(4,1) | 3     |
//! | yes        | +  | B⁰ real        |           | R(0,1) | 7     |
//!
//! These are the graded Clifford algebras Cl_{s,0} up to Morita
//! equivalence, e.g. Cl_{3,0} has odd central e₁e₂e₃ squaring to +1 and
//! even part H. Without an odd center, B⁰ has center R ⊕ R exactly when
//! its trace form has the same signature as that of B, and center C when
//! that signature vanishes. Places of one block are required to agree;
//! disagreement is reported as an error.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::Cochain;
use crate::cohomology::minimal_representative;
use crate::cyclotomic::{euler_phi, Cyclo};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Z2Hom};
use crate::poly::{qp, zp};
use crate::qmat::{nullspace, q, signature, Echelon, Q};
use crate::rep::BlockType;

pub const MAX_ORDER: usize = 32;

#[derive(Clone, Debug)]
pub struct RealSuperAlgebra {
    pub group: Arc<FiniteGroup>,
    pub phi: Z2Hom,
    pub c: Z2Hom,
    /// Normalized, with values in Z_k.
    pub tau: Cochain,
    /// m' = lcm(k, 4)
    pub root_order: usize,
    /// [Q(ζ_{m'}) : Q]
    pub field_degree: usize,
    /// τ(g,h) as an exponent of ζ_{m'}
    t: Vec<usize>,
    /// ζ^t in the power basis, t < m'
    pow: Vec<Vec<Q>>,
    /// Tr_{Q(ζ)/Q}(ζ^j), j < d
    traces: Vec<Q>,
}

pub type Element = Vec<Q>;

impl RealSuperAlgebra {
    pub fn dim(&self) -> usize {
        self.group.order() * self.field_degree
    }

    fn d(&self) -> usize {
        self.field_degree
    }

    fn fmul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let d = self.d();
        let m = self.root_order;
        let mut out = vec![Q::zero(); d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, p) in out.iter_mut().zip(&self.pow[(i + j) % m]) {
                    if !p.is_zero() {
                        *o += &xy * p;
                    }
                }
            }
        }
        out
    }

    /// Multiplication by ζ^t.
    fn froot(&self, a: &[Q], t: usize) -> Vec<Q> {
        let mut e = vec![Q::zero(); self.d()];
        let m = self.root_order;
        let d = self.d();
        // ζ^t·ζ^i = ζ^{t+i}
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (o, p) in e.iter_mut().zip(&self.pow[(t + i) % m]) {
                if !p.is_zero() {
                    *o += x * p;
                }
            }
        }
        debug_assert_eq!(e.len(), d);
        e
    }

    fn fconj(&self, a: &[Q]) -> Vec<Q> {
        let m = self.root_order;
        let mut out = vec![Q::zero(); self.d()];
        for (j, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (o, p) in out.iter_mut().zip(&self.pow[(m - j) % m]) {
                if !p.is_zero() {
                    *o += x * p;
                }
            }
        }
        out
    }

    fn ftrace(&self, a: &[Q]) -> Q {
        a.iter().zip(&self.traces).map(|(x, t)| x * t).sum()
    }

    fn part<'a>(&self, x: &'a [Q], g: usize) -> &'a [Q] {
        &x[g * self.d()..(g + 1) * self.d()]
    }

    pub fn zero(&self) -> Element {
        vec![Q::zero(); self.dim()]
    }

    pub fn one(&self) -> Element {
        let mut x = self.zero();
        x[self.group.identity() * self.d()] = Q::one();
        x
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Element {
        let g = &self.group;
        let n = g.order();
        let d = self.d();
        let mut out = self.zero();
        let ys: Vec<Option<Vec<Q>>> = (0..n)
            .map(|h| {
                let p = self.part(y, h);
                p.iter().any(|v| !v.is_zero()).then(|| p.to_vec())
            })
            .collect();
        let ys_conj: Vec<Option<Vec<Q>>> = ys.iter().map(|v| v.as_ref().map(|v| self.fconj(v))).collect();
        for a in 0..n {
            let xa = self.part(x, a);
            if xa.iter().all(|v| v.is_zero()) {
                continue;
            }
            for b in 0..n {
                let yb = if self.phi.is_odd(a) { &ys_conj[b] } else { &ys[b] };
                let Some(yb) = yb else { continue };
                let w = self.froot(&self.fmul(xa, yb), self.t[a * n + b]);
                let ab = g.op(a, b);
                for (o, v) in out[ab * d..(ab + 1) * d].iter_mut().zip(w) {
                    *o += v;
                }
            }
        }
        out
    }

    /// Trace over Q of left multiplication on A.
    pub fn trace(&self, x: &[Q]) -> Q {
        q(self.group.order() as i64) * self.ftrace(self.part(x, self.group.identity()))
    }

    /// Trace over Q of left multiplication by an even x on A⁰.
    pub fn even_trace(&self, x: &[Q]) -> Q {
        let even = self.group.elements().filter(|&g| !self.c.is_odd(g)).count();
        q(even as i64) * self.ftrace(self.part(x, self.group.identity()))
    }

    /// The adjoint of left multiplication: (λe_g)* = ζ^{−τ(g⁻¹,g)} φ_g(λ̄) e_{g⁻¹}.
    pub fn star(&self, x: &[Q]) -> Element {
        let g = &self.group;
        let n = g.order();
        let d = self.d();
        let m = self.root_order;
        let mut out = self.zero();
        for a in 0..n {
            let xa = self.part(x, a);
            if xa.iter().all(|v| v.is_zero()) {
                continue;
            }
            let ai = g.inv(a);
            let lam = if self.phi.is_odd(a) { xa.to_vec() } else { self.fconj(xa) };
            let w = self.froot(&lam, (m - self.t[ai * n + a]) % m);
            out[ai * d..(ai + 1) * d].clone_from_slice(&w);
        }
        out
    }

    /// Trace of x ↦ (e·x)* on A (or on A⁰), for central e. Only the
    /// coefficient of e at g⁻² reaches position g of (e·ζ^i e_g)*.
    pub fn star_trace(&self, e: &[Q], even_only: bool) -> Q {
        let g = &self.group;
        let d = self.d();
        let mut acc = Q::zero();
        for a in g.elements() {
            if even_only && self.c.is_odd(a) {
                continue;
            }
            let h = g.inv(g.op(a, a));
            let eh = self.part(e, h);
            if eh.iter().all(|v| v.is_zero()) {
                continue;
            }
            for i in 0..d {
                let mut basis = self.zero();
                basis[a * d + i] = Q::one();
                let mut sparse = self.zero();
                sparse[h * d..(h + 1) * d].clone_from_slice(eh);
                let prod = self.mul(&sparse, &basis);
                let s = self.star(&prod);
                acc += &s[a * d + i];
            }
        }
        acc
    }

    /// Basis of the center, split into even and odd parts. Central elements
    /// live on φ-even conjugacy classes; on each class the coefficient at
    /// one point determines the rest.
    pub fn center(&self) -> (Vec<Element>, Vec<Element>) {
        let g = &self.group;
        let n = g.order();
        let d = self.d();
        let m = self.root_order;
        let gens = g.generators();
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        for class in g.conjugacy_classes() {
            if self.phi.is_odd(class[0]) {
                continue;
            }
            let pos = |x: usize| class.iter().position(|&y| y == x).expect("class is closed");
            let unknowns = class.len() * d;
            let mut rows: Vec<Vec<Q>> = Vec::new();
            // x_{hgh⁻¹} = φ_h(x_g)·ζ^{τ(h,g) − τ(hgh⁻¹,h)}
            for &h in &gens {
                for &x in &class {
                    let y = g.conj(g.inv(h), x);
                    let shift = (m + self.t[h * n + x] % m - self.t[y * n + h] % m) % m;
                    for i in 0..d {
                        let mut unit = vec![Q::zero(); d];
                        unit[i] = Q::one();
                        let img = if self.phi.is_odd(h) { self.fconj(&unit) } else { unit };
                        let img = self.froot(&img, shift);
                        // column (x, i) contributes img to the coefficient at y
                        for k in 0..d {
                            let r = rows_index(&mut rows, (pos(y), k, h), unknowns, d, class.len());
                            rows[r][pos(x) * d + i] -= &img[k];
                        }
                    }
                    for k in 0..d {
                        let r = rows_index(&mut rows, (pos(y), k, h), unknowns, d, class.len());
                        rows[r][pos(y) * d + k] += Q::one();
                    }
                }
            }
            for v in nullspace(&rows, unknowns) {
                let mut el = self.zero();
                for (ci, &x) in class.iter().enumerate() {
                    el[x * d..(x + 1) * d].clone_from_slice(&v[ci * d..(ci + 1) * d]);
                }
                if self.c.is_odd(class[0]) {
                    odd.push(el);
                } else {
                    even.push(el);
                }
            }
        }
        (even, odd)
    }
}

/// Rows are keyed by (class position, coordinate, generator); they are
/// allocated lazily in a fixed order.
fn rows_index(rows: &mut Vec<Vec<Q>>, key: (usize, usize, usize), unknowns: usize, d: usize, len: usize) -> usize {
    let (p, k, h) = key;
    let idx = h * len * d + p * d + k;
    while rows.len() <= idx {
        rows.push(vec![Q::zero(); unknowns]);
    }
    idx
}

/// Builds the algebra. τ is replaced by a normalized cohomologous cocycle
/// with values in Z_k, k ∈ {1, 2, 3, 4, 6}.
pub fn superalgebra(group: &Arc<FiniteGroup>, phi: &Z2Hom, c: &Z2Hom, tau: &Cochain) -> Result<RealSuperAlgebra> {
    phi.validate(group)?;
    c.validate(group)?;
    if group.order() > MAX_ORDER {
        return Err(Error::SizeBound(format!("the oracle handles |G| ≤ {MAX_ORDER}")));
    }
    if tau.degree() != 2 || tau.module().gset.size() != 1 || tau.group() != group.as_ref() || tau.phi() != phi {
        return Err(Error::Mismatch("τ must be a point 2-cocycle for the same (G, φ)".into()));
    }
    if !tau.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let ok = |k: u64| matches!(k, 1 | 2 | 3 | 4 | 6);
    let mut t = tau.reduce().normalized()?.reduce();
    if !ok(t.modulus()) {
        t = minimal_representative(tau)?;
    }
    let k = t.modulus();
    if !ok(k) {
        return Err(Error::Precondition(format!(
            "a twist of order {k} has Galois conjugates that are not ±τ"
        )));
    }
    let mp = (k as usize).lcm(&4);
    let lifted = t.lift(mp as u64)?;
    let d = euler_phi(mp);
    let pow: Vec<Vec<Q>> = (0..mp)
        .map(|s| Cyclo::root(mp, s as i64).reduced().into_iter().map(q).collect())
        .collect();
    let traces = (0..d)
        .map(|j| (0..d).map(|i| pow[(i + j) % mp][i].clone()).sum())
        .collect();
    Ok(RealSuperAlgebra {
        group: group.clone(),
        phi: phi.clone(),
        c: c.clone(),
        tau: t,
        root_order: mp,
        field_degree: d,
        t: lifted.table().iter().map(|&v| v as usize).collect(),
        pow,
        traces,
    })
}

/// One simple graded block of A over Q.
#[derive(Clone, Debug)]
pub struct WedderburnBlock {
    pub block: BlockType,
    /// Number of real or complex places of the even center.
    pub places: usize,
    pub dim_q: usize,
    pub center_degree: usize,
    pub odd_center: bool,
}

#[derive(Clone, Debug)]
pub struct WedderburnDecomposition {
    pub blocks: Vec<WedderburnBlock>,
    /// Copies of the real algebra inside A ⊗ R.
    pub galois_copies: usize,
    /// Block types of the real algebra, with multiplicity, sorted.
    pub types: Vec<BlockType>,
}

struct Component {
    idem: Element,
    /// minimal polynomial of a primitive element of the even center, and
    /// the echelon of its powers
    minpoly: zp::P,
    powers: Echelon,
}

fn min_poly(a: &RealSuperAlgebra, e: &[Q], y: &[Q]) -> (zp::P, Echelon, Vec<Element>) {
    let mut ech = Echelon::new();
    let mut pows = vec![e.to_vec()];
    loop {
        let last = pows.last().expect("nonempty").clone();
        if let Some(c) = ech.insert(&last) {
            // yᵏ = Σ cᵢ yⁱ
            let mut f: Vec<Q> = c.into_iter().map(|v| -v).collect();
            f.push(Q::one());
            pows.pop();
            return (qp::to_z(&f), ech, pows);
        }
        pows.push(a.mul(&last, y));
    }
}

fn rank_of(vs: &[Element]) -> usize {
    let mut e = Echelon::new();
    vs.iter().filter(|v| e.insert(v).is_none()).count()
}

fn eval_poly(a: &RealSuperAlgebra, f: &[Q], pows: &[Element]) -> Element {
    let mut out = a.zero();
    for (c, p) in f.iter().zip(pows) {
        if !c.is_zero() {
            for (o, v) in out.iter_mut().zip(p) {
                *o += c * v;
            }
        }
    }
    out
}

fn split_center(a: &RealSuperAlgebra, even: &[Element], rng: &mut ChaCha8Rng) -> Result<Vec<Component>> {
    let mut todo = vec![a.one()];
    let mut done = Vec::new();
    while let Some(e) = todo.pop() {
        let local: Vec<Element> = even.iter().map(|b| a.mul(&e, b)).collect();
        let dim = rank_of(&local);
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 40 {
                return Err(Error::Internal("could not split the even center".into()));
            }
            // Sparse combinations keep the powers small; dense ones are the
            // fallback that almost surely generates the whole field.
            let mut y = a.zero();
            let terms = if attempts <= 20 { 1 + attempts.min(3) } else { local.len() };
            for _ in 0..terms {
                let b = &local[rng.gen_range(0..local.len())];
                let r = q(rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
                for (o, v) in y.iter_mut().zip(b) {
                    *o += &r * v;
                }
            }
            let (f, ech, pows) = min_poly(a, &e, &y);
            let factors = zp::factor_squarefree(&f);
            if factors.len() == 1 {
                if zp::deg(&f) == Some(dim) {
                    done.push(Component { idem: e.clone(), minpoly: f, powers: ech });
                    break;
                }
                continue;
            }
            let qf: Vec<qp::P> = factors.iter().map(qp::from_z).collect();
            for u in qp::crt_idempotents(&qf) {
                todo.push(eval_poly(a, &u, &pows));
            }
            break;
        }
    }
    Ok(done)
}

/// Power sums s_n = Σ θⁿ over the roots of f, n < count, by Newton's
/// identities.
fn power_sums(f: &zp::P, count: usize) -> Vec<Q> {
    let d = f.len() - 1;
    let lc = Q::from_integer(f[d].clone());
    // monic coefficients a_0..a_{d-1}
    let a: Vec<Q> = f[..d].iter().map(|v| Q::from_integer(v.clone()) / &lc).collect();
    let mut s: Vec<Q> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            s.push(q(d as i64));
            continue;
        }
        let mut v = Q::zero();
        for i in 1..=(if n <= d { n - 1 } else { d }) {
            v -= &a[d - i] * &s[n - i];
        }
        if n <= d {
            v -= q(n as i64) * &a[d - n];
        }
        s.push(v);
    }
    s
}

/// Signature of (u, v) ↦ Tr(p·u·v) on Q[x]/f in the power basis, i.e. the
/// sum of sign p(θ) over the real roots θ of f.
fn hermite_signature(f: &zp::P, p: &[Q]) -> i64 {
    let d = f.len() - 1;
    let s = power_sums(f, 2 * d + p.len());
    let gram: Vec<Vec<Q>> = (0..d)
        .map(|i| (0..d).map(|j| p.iter().enumerate().map(|(l, c)| c * &s[l + i + j]).sum()).collect())
        .collect();
    signature(&gram)
}

fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

fn q_to_i64(v: &Q) -> Result<i64> {
    if !v.is_integer() {
        return Err(Error::Internal(format!("expected an integer, got {v}")));
    }
    v.to_integer().to_i64().ok_or_else(|| Error::Internal("integer overflow".into()))
}

fn classify_block(a: &RealSuperAlgebra, comp: &Component, odd: &[Element]) -> Result<WedderburnBlock> {
    let e = &comp.idem;
    let d = zp::deg(&comp.minpoly).expect("nonconstant");
    let dim_q = q_to_i64(&a.trace(e))? as usize;
    let dim_even = q_to_i64(&a.even_trace(e))? as usize;
    let odd_local: Vec<Element> = odd.iter().map(|z| a.mul(e, z)).collect();
    let z0 = odd_local.iter().find(|z| z.iter().any(|v| !v.is_zero())).cloned();
    let one: Vec<Q> = vec![Q::one()];
    let r1 = hermite_signature(&comp.minpoly, &one);
    let places;
    let block = if r1 == 0 {
        if d % 2 != 0 {
            return Err(Error::Internal("a totally complex center of odd degree".into()));
        }
        places = d / 2;
        if z0.is_some() { BlockType::C01 } else { BlockType::C00 }
    } else if r1 == d as i64 {
        places = d;
        let mismatch = || Error::Internal("real places of one block disagree".into());
        match z0 {
            Some(z) => {
                let z2 = a.mul(&z, &z);
                let mut ech = comp.powers.clone();
                let coords = ech
                    .insert(&z2)
                    .ok_or_else(|| Error::Internal("z² is not in the even center".into()))?;
                let sigma = hermite_signature(&comp.minpoly, &coords);
                let k = exact_sqrt(dim_even / d).ok_or_else(mismatch)? as i64;
                let sig_even = q_to_i64(&a.star_trace(e, true))?;
                let eps = match sig_even {
                    s if s == d as i64 * k => 1,
                    s if s == -(d as i64) * k => -1,
                    _ => return Err(mismatch()),
                };
                match (sigma, eps) {
                    (s, 1) if s == -(d as i64) => BlockType::R10,
                    (s, -1) if s == -(d as i64) => BlockType::R50,
                    (s, -1) if s == d as i64 => BlockType::R41,
                    (s, 1) if s == d as i64 => BlockType::R01,
                    _ => return Err(mismatch()),
                }
            }
            None => {
                let k = exact_sqrt(dim_q / d).ok_or_else(mismatch)? as i64;
                let sig = q_to_i64(&a.star_trace(e, false))?;
                let sig_even = q_to_i64(&a.star_trace(e, true))?;
                let eps = match sig {
                    s if s == d as i64 * k => 1,
                    s if s == -(d as i64) * k => -1,
                    _ => return Err(mismatch()),
                };
                let split = match sig_even {
                    0 => false,
                    s if s == sig => true,
                    _ => return Err(mismatch()),
                };
                match (split, eps) {
                    (true, 1) => BlockType::R00,
                    (true, _) => BlockType::R40,
                    (false, 1) => BlockType::R02,
                    (false, _) => BlockType::R20,
                }
            }
        }
    } else {
        return Err(Error::Internal("even center has both real and complex places".into()));
    };
    Ok(WedderburnBlock { block, places, dim_q, center_degree: d, odd_center: !odd_local.iter().all(|z| z.iter().all(|v| v.is_zero())) })
}

pub fn wedderburn_blocks(a: &RealSuperAlgebra, seed: u64) -> Result<WedderburnDecomposition> {
    let (even, odd) = a.center();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = split_center(a, &even, &mut rng)?;
    let blocks = comps.iter().map(|c| classify_block(a, c, &odd)).collect::<Result<Vec<_>>>()?;
    let total: usize = blocks.iter().map(|b| b.dim_q).sum();
    if total != a.dim() {
        return Err(Error::Internal(format!("blocks have total dimension {total}, not {}", a.dim())));
    }
    let copies = a.field_degree / 2;
    let mut types = Vec::new();
    for bt in BlockType::ALL {
        let n: usize = blocks.iter().filter(|b| b.block == bt).map(|b| b.places).sum();
        if n % copies != 0 {
            return Err(Error::Internal(format!("{n} places of {bt} do not divide into {copies} copies")));
        }
        types.extend(std::iter::repeat_n(bt, n / copies));
    }
    types.sort();
    Ok(WedderburnDecomposition { blocks, galois_copies: copies, types })
}

/// Convenience: block types of (G, φ, c, τ) by the oracle.
pub fn oracle_blocks(group: &Arc<FiniteGroup>, phi: &Z2Hom, c: &Z2Hom, tau: &Cochain, seed: u64) -> Result<Vec<BlockType>> {
    Ok(wedderburn_blocks(&superalgebra(group, phi, c, tau)?, seed)?.types)
}
