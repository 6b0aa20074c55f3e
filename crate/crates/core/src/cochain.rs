//! Group cochains valued in C(X, μ_m)_φ, the coboundary operator, the named
//! cocycles, and twist arithmetic.
//!
//! A value k in Z_m stands for the root of unity e^{2πik/m}. The group acts on
//! coefficients on the left through φ (complex conjugation when φ(g) = −1) and
//! on functions of X by pulling back, so that
//!
//! (∂f)(g₀,…,g_n; x) = φ(g₀)·f(g₁,…,g_n; x)
//!                    + Σᵢ (−1)ⁱ f(…, g_{i−1}g_i, …; x)
//!                    + (−1)^{n+1} f(g₀,…,g_{n−1}; g_n·x).

use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{presets, CentralExtension, FiniteGroup, GSet, Z2Hom};

/// The coefficient module C(X, μ_m)_φ.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    pub group: Arc<FiniteGroup>,
    pub gset: Arc<GSet>,
    pub phi: Z2Hom,
    pub modulus: u64,
}

impl CoefficientModule {
    pub fn new(group: Arc<FiniteGroup>, gset: Arc<GSet>, phi: Z2Hom, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        phi.validate(&group)?;
        gset.validate(&group)?;
        Ok(CoefficientModule { group, gset, phi, modulus })
    }

    /// Coefficients on a point with the default modulus 2·|G|.
    pub fn point(group: Arc<FiniteGroup>, phi: Z2Hom) -> Result<Self> {
        let m = 2 * group.order() as u64;
        let gset = Arc::new(GSet::point(&group));
        Self::new(group, gset, phi, m)
    }

    pub fn with_modulus(&self, modulus: u64) -> Self {
        CoefficientModule { modulus, ..self.clone() }
    }

    /// Number of cochains' table entries in degree n.
    pub fn cochain_len(&self, n: usize) -> usize {
        self.group.order().pow(n as u32) * self.gset.size()
    }

    fn same_space(&self, other: &CoefficientModule) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && (Arc::ptr_eq(&self.gset, &other.gset) || self.gset == other.gset)
            && self.phi == other.phi
    }
}

/// A cochain G^n × X → Z_m stored densely.
#[derive(Clone, Debug)]
pub struct Cochain {
    module: CoefficientModule,
    degree: usize,
    table: Vec<u64>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.module.same_space(&other.module)
            && {
                let m = self.module.modulus.lcm(&other.module.modulus);
                let (a, b) = (m / self.module.modulus, m / other.module.modulus);
                self.table.iter().zip(&other.table).all(|(x, y)| x * a == y * b)
            }
    }
}

/// Decodes a flat index into (g₁,…,g_n) and x.
fn decode(mut idx: usize, n: usize, order: usize, xs: usize, args: &mut [usize]) -> usize {
    let x = idx % xs;
    idx /= xs;
    for k in (0..n).rev() {
        args[k] = idx % order;
        idx /= order;
    }
    x
}

fn encode(args: &[usize], x: usize, order: usize, xs: usize) -> usize {
    let mut idx = 0;
    for &g in args {
        idx = idx * order + g;
    }
    idx * xs + x
}

impl Cochain {
    pub fn zero(module: &CoefficientModule, degree: usize) -> Self {
        Cochain { module: module.clone(), degree, table: vec![0; module.cochain_len(degree)] }
    }

    /// Builds from a function of (g₁,…,g_n; x) returning an integer exponent.
    pub fn from_fn(
        module: &CoefficientModule,
        degree: usize,
        mut f: impl FnMut(&[usize], usize) -> i64,
    ) -> Self {
        let (order, xs) = (module.group.order(), module.gset.size());
        let m = module.modulus as i64;
        let mut args = vec![0; degree];
        let table = (0..module.cochain_len(degree))
            .map(|i| {
                let x = decode(i, degree, order, xs, &mut args);
                f(&args, x).rem_euclid(m) as u64
            })
            .collect();
        Cochain { module: module.clone(), degree, table }
    }

    pub fn from_table(module: &CoefficientModule, degree: usize, table: Vec<u64>) -> Result<Self> {
        if table.len() != module.cochain_len(degree) {
            return Err(Error::Mismatch("table length does not match the degree".into()));
        }
        let m = module.modulus;
        Ok(Cochain { module: module.clone(), degree, table: table.into_iter().map(|v| v % m).collect() })
    }

    pub fn random<R: Rng + ?Sized>(module: &CoefficientModule, degree: usize, rng: &mut R) -> Self {
        let m = module.modulus;
        let table = (0..module.cochain_len(degree)).map(|_| rng.gen_range(0..m)).collect();
        Cochain { module: module.clone(), degree, table }
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.module.group
    }

    pub fn phi(&self) -> &Z2Hom {
        &self.module.phi
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.module.modulus
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn get(&self, args: &[usize], x: usize) -> u64 {
        debug_assert_eq!(args.len(), self.degree);
        self.table[encode(args, x, self.module.group.order(), self.module.gset.size())]
    }

    /// Value at a degree-2 point argument.
    pub fn at2(&self, g: usize, h: usize) -> u64 {
        self.get(&[g, h], 0)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// Smallest modulus that represents the same table exactly.
    pub fn reduced_modulus(&self) -> u64 {
        let m = self.module.modulus;
        let g = self.table.iter().fold(m, |acc, &v| acc.gcd(&v));
        m / g
    }

    /// Re-expresses the values in μ_{m'} for a multiple m' of m.
    pub fn lift(&self, modulus: u64) -> Result<Self> {
        let m = self.module.modulus;
        if modulus % m != 0 {
            return Err(Error::Mismatch(format!("{modulus} is not a multiple of {m}")));
        }
        let k = modulus / m;
        Ok(Cochain {
            module: self.module.with_modulus(modulus),
            degree: self.degree,
            table: self.table.iter().map(|v| v * k).collect(),
        })
    }

    /// Expresses the values in the smallest μ_{m'} possible, if that divides m.
    pub fn reduce(&self) -> Self {
        let r = self.reduced_modulus();
        let k = self.module.modulus / r;
        Cochain {
            module: self.module.with_modulus(r),
            degree: self.degree,
            table: self.table.iter().map(|v| v / k).collect(),
        }
    }

    fn aligned(&self, other: &Cochain) -> Result<(Cochain, Cochain)> {
        if self.degree != other.degree || !self.module.same_space(&other.module) {
            return Err(Error::Mismatch("cochains live on different spaces".into()));
        }
        let m = self.module.modulus.lcm(&other.module.modulus);
        Ok((self.lift(m)?, other.lift(m)?))
    }

    /// Pointwise product of U(1)-valued cochains (sum of exponents).
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        let (mut a, b) = self.aligned(other)?;
        let m = a.module.modulus;
        for (x, y) in a.table.iter_mut().zip(&b.table) {
            *x = (*x + y) % m;
        }
        Ok(a)
    }

    pub fn neg(&self) -> Cochain {
        let m = self.module.modulus;
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            table: self.table.iter().map(|v| (m - v) % m).collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let m = self.module.modulus as i64;
        Cochain {
            module: self.module.clone(),
            degree: self.degree,
            table: self.table.iter().map(|&v| ((v as i64 * k).rem_euclid(m)) as u64).collect(),
        }
    }

    /// The coboundary ∂f, one degree higher.
    pub fn coboundary(&self) -> Cochain {
        let g = &*self.module.group;
        let xset = &*self.module.gset;
        let (order, xs) = (g.order(), xset.size());
        let n = self.degree;
        let m = self.module.modulus as i64;
        let mut args = vec![0usize; n + 1];
        let mut inner = vec![0usize; n];
        let len = self.module.cochain_len(n + 1);
        let mut table = Vec::with_capacity(len);
        for idx in 0..len {
            let x = decode(idx, n + 1, order, xs, &mut args);
            let mut acc: i64 = self.get(&args[1..], x) as i64 * self.module.phi.sign(args[0]);
            for i in 1..=n {
                inner[..i - 1].copy_from_slice(&args[..i - 1]);
                inner[i - 1] = g.op(args[i - 1], args[i]);
                inner[i..].copy_from_slice(&args[i + 1..]);
                let v = self.get(&inner, x) as i64;
                acc += if i % 2 == 0 { v } else { -v };
            }
            let last = self.get(&args[..n], xset.act(args[n], x)) as i64;
            acc += if (n + 1) % 2 == 0 { last } else { -last };
            table.push(acc.rem_euclid(m) as u64);
        }
        Cochain { module: self.module.clone(), degree: n + 1, table }
    }

    pub fn is_cocycle(&self) -> bool {
        if self.degree != 2 || self.module.gset.size() != 1 {
            return self.coboundary().is_zero();
        }
        // point 2-cochains: φ(a)τ(b,c) − τ(ab,c) + τ(a,bc) − τ(a,b) with early exit
        let g = &*self.module.group;
        let (n, m) = (g.order(), self.module.modulus);
        let t = &self.table;
        g.elements().all(|a| {
            let odd = self.module.phi.is_odd(a);
            g.elements().all(|b| {
                let ab = g.op(a, b);
                let tab = t[a * n + b];
                g.elements().all(|c| {
                    let tbc = t[b * n + c];
                    let acted = if odd { (m - tbc) % m } else { tbc };
                    (acted + t[a * n + g.op(b, c)] + 2 * m - t[ab * n + c] - tab) % m == 0
                })
            })
        })
    }

    /// Pulls back along a group homomorphism f: H → G given as an element
    /// map; X is pulled back to the H-set obtained by restricting the action.
    pub fn pullback(&self, source: Arc<FiniteGroup>, map: &[usize]) -> Result<Cochain> {
        let g = &*self.module.group;
        if map.len() != source.order() {
            return Err(Error::Mismatch("element map has the wrong length".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.op(a, b)] != g.op(map[a], map[b]) {
                    return Err(Error::Mismatch("element map is not a homomorphism".into()));
                }
            }
        }
        let xs = self.module.gset.size();
        let action = (0..source.order() * xs)
            .map(|i| self.module.gset.act(map[i / xs], i % xs))
            .collect();
        let gset = Arc::new(GSet::from_table(&source, xs, action)?);
        let module = CoefficientModule::new(
            source.clone(),
            gset,
            self.module.phi.pullback(map),
            self.module.modulus,
        )?;
        let mut mapped = vec![0; self.degree];
        Ok(Cochain::from_fn(&module, self.degree, |args, x| {
            for (k, &a) in args.iter().enumerate() {
                mapped[k] = map[a];
            }
            self.get(&mapped, x) as i64
        }))
    }

    /// Pulls back along an equivariant map X' → X.
    pub fn pullback_gset(&self, gset: Arc<GSet>, map: &[usize]) -> Result<Cochain> {
        let g = &*self.module.group;
        gset.validate(g)?;
        if map.len() != gset.size() {
            return Err(Error::Mismatch("set map has the wrong length".into()));
        }
        for a in g.elements() {
            for y in 0..gset.size() {
                if map[gset.act(a, y)] != self.module.gset.act(a, map[y]) {
                    return Err(Error::Mismatch("set map is not equivariant".into()));
                }
            }
        }
        let module = CoefficientModule { gset, ..self.module.clone() };
        Ok(Cochain::from_fn(&module, self.degree, |args, y| self.get(args, map[y]) as i64))
    }

    /// Restriction to the stabilizer H of x, as a cochain on a point for H.
    pub fn restrict_to_stabilizer(&self, x: usize) -> Result<(Cochain, Vec<usize>)> {
        let g = &*self.module.group;
        let stab = self.module.gset.stabilizer(x);
        let (h, emb) = g.subgroup(&stab)?;
        let h = Arc::new(h);
        let module = CoefficientModule::new(
            h.clone(),
            Arc::new(GSet::point(&h)),
            self.module.phi.pullback(&emb),
            self.module.modulus,
        )?;
        let mut mapped = vec![0; self.degree];
        let c = Cochain::from_fn(&module, self.degree, |args, _| {
            for (k, &a) in args.iter().enumerate() {
                mapped[k] = emb[a];
            }
            self.get(&mapped, x) as i64
        });
        Ok((c, emb))
    }

    /// Degree-2 point cocycle made normalized (zero whenever an argument is
    /// the identity) by subtracting the coboundary of a constant.
    pub fn normalized(&self) -> Result<Cochain> {
        if self.degree != 2 || self.module.gset.size() != 1 {
            return Err(Error::Precondition("normalization is provided for degree-2 point cochains".into()));
        }
        let e = self.module.group.identity();
        let b = self.at2(e, e) as i64;
        let beta = Cochain::from_fn(&self.module, 1, |_, _| b);
        self.sub(&beta.coboundary())
    }

    /// The φ-twisted extension of G by Z_m defined by this point 2-cocycle.
    pub fn central_extension(&self) -> Result<CentralExtension> {
        if self.degree != 2 || self.module.gset.size() != 1 {
            return Err(Error::Precondition("extensions need a degree-2 point cocycle".into()));
        }
        CentralExtension::from_cocycle_table(
            &self.module.group,
            &self.module.phi,
            self.module.modulus as usize,
            &self.table,
        )
    }

    /// Renders as `tau[g][h] = k/m` lines (nonzero entries only) for point
    /// cochains of degree 2.
    pub fn to_text(&self) -> String {
        let g = &*self.module.group;
        let mut out = String::new();
        if self.degree == 2 && self.module.gset.size() == 1 {
            for a in g.elements() {
                for b in g.elements() {
                    let v = self.at2(a, b);
                    if v != 0 {
                        let d = self.module.modulus.gcd(&v);
                        let _ = writeln!(
                            out,
                            "tau[{}][{}] = {}/{}",
                            g.name(a),
                            g.name(b),
                            v / d,
                            self.module.modulus / d
                        );
                    }
                }
            }
        }
        out
    }

    /// Parses `tau[g][h] = k/m` lines; missing entries are zero. `#` starts a
    /// comment. Returns the cochain with modulus lcm of the module's and the
    /// denominators, or the offending line number.
    pub fn parse_text(module: &CoefficientModule, text: &str) -> std::result::Result<Cochain, (usize, String)> {
        let g = &*module.group;
        let mut entries = Vec::new();
        let mut modulus = module.modulus;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| (ln + 1, msg.to_string());
            let rest = line.strip_prefix("tau[").ok_or_else(|| err("expected tau[g][h] = k/m"))?;
            let (a, rest) = rest.split_once("][").ok_or_else(|| err("expected ]["))?;
            let (b, rest) = rest.split_once(']').ok_or_else(|| err("expected ]"))?;
            let val = rest.trim().strip_prefix('=').ok_or_else(|| err("expected ="))?.trim();
            let (k, m) = val.split_once('/').unwrap_or((val, "1"));
            let k: i64 = k.trim().parse().map_err(|_| err("bad numerator"))?;
            let m: u64 = m.trim().parse().ok().filter(|&m| m > 0).ok_or_else(|| err("bad denominator"))?;
            let ga = g.element_by_name(a.trim()).ok_or_else(|| err("unknown element"))?;
            let gb = g.element_by_name(b.trim()).ok_or_else(|| err("unknown element"))?;
            modulus = modulus.lcm(&m);
            entries.push((ga, gb, k, m));
        }
        let module = module.with_modulus(modulus);
        let mut c = Cochain::zero(&module, 2);
        let order = g.order();
        for (a, b, k, m) in entries {
            let v = (k * (modulus / m) as i64).rem_euclid(modulus as i64) as u64;
            c.table[a * order + b] = v;
        }
        Ok(c)
    }
}

/// The pair (τ, c) of a twist realized by a product line bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistDatum {
    pub tau: Cochain,
    pub c: Z2Hom,
}

impl TwistDatum {
    pub fn new(tau: Cochain, c: Z2Hom) -> Result<Self> {
        if tau.degree() != 2 {
            return Err(Error::Precondition("a twist cocycle has degree 2".into()));
        }
        c.validate(tau.group())?;
        if !tau.is_cocycle() {
            return Err(Error::NotCocycle);
        }
        Ok(TwistDatum { tau, c })
    }

    /// Graded sum (τ, c) + (τ', c') = (τ + τ' + ε, cc') with the Koszul sign
    /// ε(g, h) = −1 iff c'(g) and c(h) are both odd.
    pub fn graded_sum(&self, other: &TwistDatum) -> Result<TwistDatum> {
        let sum = self.tau.add(&other.tau)?;
        let m = sum.modulus();
        let sum = if m % 2 == 1 { sum.lift(2 * m)? } else { sum };
        let half = sum.modulus() / 2;
        let koszul = Cochain::from_fn(sum.module(), 2, |args, _| {
            if other.c.is_odd(args[0]) && self.c.is_odd(args[1]) {
                half as i64
            } else {
                0
            }
        });
        Ok(TwistDatum { tau: sum.add(&koszul)?, c: self.c.mul(&other.c) })
    }
}

/// Cocycle with value −1 exactly where f(g) = f(h) = −1. Needs an even modulus.
pub fn tau_f(module: &CoefficientModule, f: &Z2Hom) -> Result<Cochain> {
    if module.modulus % 2 != 0 {
        return Err(Error::Precondition("τ_f needs an even modulus".into()));
    }
    f.validate(&module.group)?;
    let half = (module.modulus / 2) as i64;
    Ok(Cochain::from_fn(module, 2, |a, _| if f.is_odd(a[0]) && f.is_odd(a[1]) { half } else { 0 }))
}

/// τ_φ = φ*τ_id.
pub fn tau_phi(module: &CoefficientModule) -> Result<Cochain> {
    let phi = module.phi.clone();
    tau_f(module, &phi)
}

/// Z₂ with its identity homomorphism.
pub fn z2_with_id() -> (Arc<FiniteGroup>, Z2Hom) {
    let g = Arc::new(presets::cyclic(2));
    let id = Z2Hom::from_odd(&g, vec![false, true]).expect("identity hom");
    (g, id)
}

/// Z₂×Z₂ with its two projections p₁, p₂.
pub fn klein_with_projections() -> (Arc<FiniteGroup>, Z2Hom, Z2Hom) {
    let g = Arc::new(presets::klein());
    // element index 2m + n stands for ((−1)^m, (−1)^n)
    let p1 = Z2Hom::from_odd(&g, (0..4).map(|i| i / 2 == 1).collect()).expect("p1");
    let p2 = Z2Hom::from_odd(&g, (0..4).map(|i| i % 2 == 1).collect()).expect("p2");
    (g, p1, p2)
}

/// Named cocycles on Z₂ and Z₂×Z₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCocycle {
    /// τ_id on (Z₂, φ = id).
    TauId,
    /// exp πi m₁m₂ on Z₂×Z₂.
    TauP1,
    /// exp πi n₁n₂ on Z₂×Z₂.
    TauP2,
    /// exp πi n n′ on Z₂×Z₂ with coefficients twisted by p₁.
    Mu,
    /// exp πi n₁m₂, the generator for trivial φ on Z₂×Z₂.
    TrivialPhiGenerator,
}

impl NamedCocycle {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "tau_id" => NamedCocycle::TauId,
            "tau_p1" => NamedCocycle::TauP1,
            "tau_p2" => NamedCocycle::TauP2,
            "mu" => NamedCocycle::Mu,
            "klein_generator" | "tau_klein" => NamedCocycle::TrivialPhiGenerator,
            _ => return None,
        })
    }

    /// Table on the given module; the group must be Z₂ (for τ_id) or Z₂×Z₂
    /// with the standard element order.
    pub fn build(self, module: &CoefficientModule) -> Result<Cochain> {
        let ord = module.group.order();
        let want = if self == NamedCocycle::TauId { 2 } else { 4 };
        if ord != want || module.gset.size() != 1 {
            return Err(Error::Precondition(format!("{self:?} lives on a group of order {want} over a point")));
        }
        if module.modulus % 2 != 0 {
            return Err(Error::Precondition("named cocycles need an even modulus".into()));
        }
        let half = (module.modulus / 2) as i64;
        let bit = |k: usize, first: bool| if first { k / 2 } else { k % 2 };
        let c = Cochain::from_fn(module, 2, |a, _| {
            let on = match self {
                NamedCocycle::TauId => a[0] == 1 && a[1] == 1,
                NamedCocycle::TauP1 => bit(a[0], true) * bit(a[1], true) == 1,
                NamedCocycle::TauP2 | NamedCocycle::Mu => bit(a[0], false) * bit(a[1], false) == 1,
                NamedCocycle::TrivialPhiGenerator => bit(a[0], false) * bit(a[1], true) == 1,
            };
            if on {
                half
            } else {
                0
            }
        });
        if !c.is_cocycle() {
            return Err(Error::NotCocycle);
        }
        Ok(c)
    }
}

/// τ́ = τ + (φ, c)*μ: flips the sign of τ(g, h; x) where c(g) = c(h) = −1.
pub fn twist_change(t: &TwistDatum) -> Result<TwistDatum> {
    let tau = if t.tau.modulus() % 2 == 1 { t.tau.lift(2 * t.tau.modulus())? } else { t.tau.clone() };
    let pulled = mu_pullback(tau.module(), &t.c)?;
    Ok(TwistDatum { tau: tau.add(&pulled)?, c: t.c.clone() })
}

/// The cocycle (φ, c)*μ on the given module.
pub fn mu_pullback(module: &CoefficientModule, c: &Z2Hom) -> Result<Cochain> {
    let (k, _, _) = klein_with_projections();
    let (_, p1, _) = klein_with_projections();
    let kmod = CoefficientModule::point(k, p1)?.with_modulus(module.modulus);
    let mu = NamedCocycle::Mu.build(&kmod)?;
    let g = &*module.group;
    let map: Vec<usize> = g
        .elements()
        .map(|x| 2 * module.phi.is_odd(x) as usize + c.is_odd(x) as usize)
        .collect();
    let pulled = mu.pullback(module.group.clone(), &map)?;
    // spread over X: the pulled-back cocycle is constant in x
    Ok(Cochain::from_fn(module, 2, |a, _| pulled.get(a, 0) as i64))
}

/// Sign of the lift of an antiunitary involution squared: τ(g,g)·τ(e,e).
///
/// For unnormalized cochains the product with τ(e,e) is what survives
/// τ ↦ τ·∂β; for normalized ones it is just τ(g,g).
pub fn invariant_square_sign(t: &TwistDatum, g: usize) -> Result<i8> {
    let tau = &t.tau;
    let grp = tau.group();
    if tau.module().gset.size() != 1 {
        return Err(Error::Precondition("square signs are defined over a point".into()));
    }
    if !tau.phi().is_odd(g) || grp.op(g, g) != grp.identity() {
        return Err(Error::Precondition(format!("{} is not an antiunitary involution", grp.name(g))));
    }
    let m = tau.modulus();
    let e = grp.identity();
    let v = (tau.at2(g, g) + tau.at2(e, e)) % m;
    match v {
        0 => Ok(1),
        v if 2 * v == m => Ok(-1),
        _ => Err(Error::Precondition("τ(g,g) is not ±1".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2_id_module(m: u64) -> CoefficientModule {
        let (g, id) = z2_with_id();
        CoefficientModule::point(g, id).unwrap().with_modulus(m)
    }

    #[test]
    fn tau_id_table() {
        let t = NamedCocycle::TauId.build(&z2_id_module(2)).unwrap();
        assert_eq!(t.table(), &[0, 0, 0, 1]);
        assert!(t.is_cocycle());
        let mut bad = t.table().to_vec();
        bad[2] = 1;
        let bad = Cochain::from_table(t.module(), 2, bad).unwrap();
        assert!(!bad.is_cocycle());
    }

    #[test]
    fn quarter_turn_coboundary_is_mu_pullback() {
        // trivial coefficient action, (φ, c) = (1, id), β(−1) = i
        let (g, id) = z2_with_id();
        let module = CoefficientModule::point(g.clone(), Z2Hom::trivial(2)).unwrap().with_modulus(4);
        let beta = Cochain::from_table(&module, 1, vec![0, 1]).unwrap();
        let pulled = mu_pullback(&module, &id).unwrap();
        assert_eq!(beta.coboundary(), pulled);
    }

    #[test]
    fn named_are_cocycles() {
        let (k, p1, p2) = klein_with_projections();
        for phi in [Z2Hom::trivial(4), p1.clone(), p2.clone(), p1.mul(&p2)] {
            let module = CoefficientModule::point(k.clone(), phi).unwrap();
            for name in [NamedCocycle::TauP1, NamedCocycle::TauP2, NamedCocycle::Mu, NamedCocycle::TrivialPhiGenerator] {
                assert!(name.build(&module).unwrap().is_cocycle());
            }
            assert!(tau_phi(&module).unwrap().is_cocycle());
        }
    }

    #[test]
    fn mu_values() {
        let (k, p1, _) = klein_with_projections();
        let module = CoefficientModule::point(k, p1).unwrap().with_modulus(2);
        let mu = NamedCocycle::Mu.build(&module).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(mu.at2(a, b), ((a % 2) * (b % 2)) as u64);
            }
        }
    }

    #[test]
    fn twist_change_rules() {
        let (k, p1, p2) = klein_with_projections();
        let module = CoefficientModule::point(k, p1).unwrap();
        let zero = Cochain::zero(&module, 2);
        let t = TwistDatum::new(zero.clone(), p2.clone()).unwrap();
        let once = twist_change(&t).unwrap();
        assert_eq!(once.tau, NamedCocycle::Mu.build(&module).unwrap());
        assert_eq!(twist_change(&once).unwrap().tau, zero);
        let triv = TwistDatum::new(zero.clone(), Z2Hom::trivial(4)).unwrap();
        assert_eq!(twist_change(&triv).unwrap().tau, zero);
    }

    #[test]
    fn square_signs() {
        let t = NamedCocycle::TauId.build(&z2_id_module(4)).unwrap();
        let d = TwistDatum::new(t, Z2Hom::trivial(2)).unwrap();
        assert_eq!(invariant_square_sign(&d, 1).unwrap(), -1);
        let (k, p1, _) = klein_with_projections();
        let module = CoefficientModule::point(k, p1).unwrap();
        let d = TwistDatum::new(NamedCocycle::TauP1.build(&module).unwrap(), Z2Hom::trivial(4)).unwrap();
        assert_eq!(invariant_square_sign(&d, 3).unwrap(), -1);
        assert!(invariant_square_sign(&d, 1).is_err());
        let d0 = TwistDatum::new(Cochain::zero(&module, 2), Z2Hom::trivial(4)).unwrap();
        assert_eq!(invariant_square_sign(&d0, 2).unwrap(), 1);
    }

    #[test]
    fn graded_sum_of_c_id_with_itself_is_tau_id() {
        let (g, id) = z2_with_id();
        let module = CoefficientModule::point(g, id.clone()).unwrap();
        let c = TwistDatum::new(Cochain::zero(&module, 2), id).unwrap();
        let s = c.graded_sum(&c).unwrap();
        assert!(s.c.is_trivial());
        assert_eq!(s.tau, NamedCocycle::TauId.build(&module).unwrap());
    }

    #[test]
    fn klein_coboundary_matches_table() {
        // with φ = p₁ and β(e) = 0: ∂β(g,g) vanishes on antiunitary
        // involutions and equals 2β(g) on unitary ones
        let (k, p1, _) = klein_with_projections();
        let module = CoefficientModule::point(k, p1).unwrap().with_modulus(16);
        let beta = Cochain::from_table(&module, 1, vec![0, 3, 5, 7]).unwrap();
        let d = beta.coboundary();
        assert_eq!(d.at2(2, 2), 0);
        assert_eq!(d.at2(1, 1), 6);
        assert_eq!(d.at2(3, 3), 0);
        assert!(d.is_cocycle());
    }

    #[test]
    fn text_round_trip() {
        let (k, p1, _) = klein_with_projections();
        let module = CoefficientModule::point(k, p1).unwrap();
        let t = NamedCocycle::TauP1.build(&module).unwrap();
        let text = t.to_text();
        assert!(text.contains("tau[(-1,1)][(-1,1)] = 1/2"));
        let back = Cochain::parse_text(&module, &text).unwrap();
        assert_eq!(back, t);
        assert_eq!(Cochain::parse_text(&module, "tau[(1,1)][x] = 1/2").unwrap_err().0, 1);
    }

    #[test]
    fn extension_of_klein_is_nonabelian() {
        let (k, _, _) = klein_with_projections();
        let module = CoefficientModule::point(k, Z2Hom::trivial(4)).unwrap().with_modulus(2);
        let t = NamedCocycle::TrivialPhiGenerator.build(&module).unwrap();
        let e = t.central_extension().unwrap();
        assert_eq!(e.total.order(), 8);
        assert!(!e.total.is_abelian());
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, g) in presets::sweep_groups(8) {
            let g = Arc::new(g);
            for phi in Z2Hom::all(&g) {
                for h in [vec![g.identity()], g.elements().collect::<Vec<_>>()] {
                    let x = Arc::new(GSet::cosets(&g, &g.closure(&h)).unwrap());
                    for m in [2, 4, 8] {
                        let module = CoefficientModule::new(g.clone(), x.clone(), phi.clone(), m).unwrap();
                        for n in 0..2 {
                            let c = Cochain::random(&module, n, &mut rng);
                            assert!(c.coboundary().coboundary().is_zero());
                        }
                    }
                }
            }
        }
    }
}
