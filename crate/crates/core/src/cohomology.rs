//! Cohomology of finite groups with twisted coefficients through the bar
//! resolution and Smith normal form.
//!
//! U(1)-cohomology is computed twice. The Z-route reads H^{n+1}(G; Z_φ) off
//! the elementary divisors of ∂ⁿ, using that real cohomology vanishes in
//! positive degree. The μ-route takes the image of H^n(μ_N) in H^n(μ_M) for
//! N = 2|G| and M = N·|G|; that image is H^n(U(1)) because |G| kills every
//! class and the kernel of μ_N → U(1) dies after multiplying by |G|.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cochain::{Cochain, CoefficientModule, TwistDatum};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet, Z2Hom};
use crate::lattice::{smith, AbelianGroupPresentation, IntMatrix, Smith, Track};

/// Largest |G|^n·|X| accepted.
pub const MAX_COCHAIN_LEN: usize = 100_000;

/// Coefficient group for [`group_cohomology`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Cyclic(u64),
}

/// Matrix of ∂: Cⁿ → Cⁿ⁺¹ over Z (rows index Cⁿ⁺¹).
pub fn coboundary_matrix(module: &CoefficientModule, n: usize) -> Result<IntMatrix> {
    let rows = module.cochain_len(n + 1);
    let cols = module.cochain_len(n);
    if rows > MAX_COCHAIN_LEN || rows.saturating_mul(cols) > 40_000_000 {
        return Err(Error::SizeBound(format!("coboundary matrix {rows}×{cols}")));
    }
    let g = &*module.group;
    let x = &*module.gset;
    let (ord, xs) = (g.order(), x.size());
    let mut dense = vec![0i64; rows * cols];
    let mut args = vec![0usize; n + 1];
    let enc = |a: &[usize], p: usize| a.iter().fold(0usize, |acc, &v| acc * ord + v) * xs + p;
    let mut inner = vec![0usize; n];
    for r in 0..rows {
        let mut idx = r;
        let p = idx % xs;
        idx /= xs;
        for k in (0..=n).rev() {
            args[k] = idx % ord;
            idx /= ord;
        }
        let row = &mut dense[r * cols..(r + 1) * cols];
        row[enc(&args[1..], p)] += module.phi.sign(args[0]);
        for i in 1..=n {
            inner[..i - 1].copy_from_slice(&args[..i - 1]);
            inner[i - 1] = g.op(args[i - 1], args[i]);
            inner[i..].copy_from_slice(&args[i + 1..]);
            row[enc(&inner, p)] += if i % 2 == 0 { 1 } else { -1 };
        }
        row[enc(&args[..n], x.act(args[n], p))] += if (n + 1) % 2 == 0 { 1 } else { -1 };
    }
    Ok(IntMatrix::from_i64(rows, cols, &dense))
}

fn nonunit_torsion(s: &Smith) -> Vec<u64> {
    s.diag
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.to_u64().expect("torsion fits in u64"))
        .collect()
}

/// Number of G-orbits of X on which φ is trivial on the stabilizer: the rank
/// of H⁰(G; C(X, Z)_φ).
fn invariant_rank(module: &CoefficientModule) -> usize {
    module
        .gset
        .orbits()
        .iter()
        .filter(|o| module.gset.stabilizer(o[0]).iter().all(|&h| !module.phi.is_odd(h)))
        .count()
}

/// Hⁿ(G; C(X, A)_φ) for A = Z or Z_m.
pub fn group_cohomology(
    group: &Arc<FiniteGroup>,
    gset: &Arc<GSet>,
    phi: &Z2Hom,
    coeffs: Coefficients,
    n: usize,
) -> Result<AbelianGroupPresentation> {
    let module = CoefficientModule::new(group.clone(), gset.clone(), phi.clone(), 1)?;
    if module.cochain_len(n + 1) > MAX_COCHAIN_LEN {
        return Err(Error::SizeBound(format!("|G|^{}·|X| exceeds {MAX_COCHAIN_LEN}", n + 1)));
    }
    match coeffs {
        Coefficients::Integers => {
            // torsion of Hⁿ = torsion of coker ∂ⁿ⁻¹; the free rank is that of
            // rational cohomology, concentrated in degree 0
            let torsion = if n == 0 {
                vec![]
            } else {
                nonunit_torsion(&smith(&coboundary_matrix(&module, n - 1)?, Track::NONE))
            };
            let rank = if n == 0 { invariant_rank(&module) } else { 0 };
            Ok(AbelianGroupPresentation::from_cyclic_factors(rank, &torsion))
        }
        Coefficients::Cyclic(m) => {
            if m == 0 {
                return Err(Error::Precondition("Z/0 is not a finite coefficient group".into()));
            }
            Ok(ImageCohomology::new(&module, n, m, m)?.presentation)
        }
    }
}

/// Free rank of Hⁿ(G; C(X, Z)_φ) by exact Smith forms of both differentials,
/// without appealing to rational vanishing. Used to cross-check.
pub fn integral_rank_exact(module: &CoefficientModule, n: usize) -> Result<usize> {
    let dn = smith(&coboundary_matrix(module, n)?, Track::NONE);
    let prev = if n == 0 { 0 } else { smith(&coboundary_matrix(module, n - 1)?, Track::NONE).rank };
    Ok(module.cochain_len(n) - dn.rank - prev)
}

/// The image of Hⁿ(μ_N) → Hⁿ(μ_M) under μ_N ⊂ μ_M, with the data needed to
/// classify cocycles and produce coboundary witnesses.
///
/// Cocycles are tables y in Z^k (exponents of μ_N); L = {y : ∂y ≡ 0 mod N}
/// and B' = {y : s·y ∈ im ∂ + M·Z^k} with s = M/N. The group is L/B'.
#[derive(Clone, Debug)]
pub struct ImageCohomology {
    pub module: CoefficientModule,
    pub degree: usize,
    pub n_mod: u64,
    pub m_mod: u64,
    pub presentation: AbelianGroupPresentation,
    /// Orders of the cyclic coordinates (nonunit invariant factors).
    pub orders: Vec<u64>,
    /// One cocycle (in μ_N) per coordinate.
    pub generators: Vec<Cochain>,
    // coordinates of y ∈ L: rows `coord_rows` of P·diag(1/l)·V⁻¹·y
    coord: IntMatrix,
    coord_den: Vec<BigInt>,
    // ∂ⁿ⁻¹ = U⁻¹·D·V⁻¹ for witnesses
    prev: Option<(Smith, usize)>,
}

impl ImageCohomology {
    pub fn new(module: &CoefficientModule, degree: usize, n_mod: u64, m_mod: u64) -> Result<Self> {
        if n_mod == 0 || m_mod % n_mod != 0 {
            return Err(Error::Precondition("M must be a positive multiple of N".into()));
        }
        let k = module.cochain_len(degree);
        let s = m_mod / n_mod;
        let (nb, mb, sb) = (BigInt::from(n_mod), BigInt::from(m_mod), BigInt::from(s));

        // L = V·diag(l)
        let dn = smith(
            &coboundary_matrix(module, degree)?,
            Track { right: true, right_inv: true, ..Track::NONE },
        );
        let l: Vec<BigInt> = (0..k)
            .map(|i| match dn.diag.get(i) {
                Some(d) if !d.is_zero() => &nb / d.gcd(&nb),
                _ => BigInt::one(),
            })
            .collect();
        let v = dn.v.expect("tracked");
        let v_inv = dn.v_inv.expect("tracked");

        // B' = U⁻¹·diag(h)
        let (b_basis, prev) = if degree == 0 {
            // no coboundaries beyond M·Z^k: s·y ∈ M·Z^k
            let h = &mb / mb.gcd(&sb);
            let mut b = IntMatrix::zeros(k, k);
            for i in 0..k {
                b.set(i, i, h.clone());
            }
            (b, None)
        } else {
            let dp = smith(&coboundary_matrix(module, degree - 1)?, Track::ALL);
            let u_inv = dp.u_inv.as_ref().expect("tracked");
            let mut b = IntMatrix::zeros(k, k);
            for j in 0..k {
                let g = match dp.diag.get(j) {
                    Some(d) if !d.is_zero() => d.gcd(&mb),
                    _ => mb.clone(),
                };
                let h = &g / g.gcd(&sb);
                for i in 0..k {
                    let e = u_inv.get(i, j);
                    if !e.is_zero() {
                        b.set(i, j, e * &h);
                    }
                }
            }
            let cols = module.cochain_len(degree - 1);
            (b, Some((dp, cols)))
        };

        // A = L⁻¹·B' = diag(1/l)·V⁻¹·B'
        let mut a = v_inv.mul(&b_basis);
        for i in 0..k {
            for j in 0..k {
                let e = a.get(i, j);
                if !e.is_zero() {
                    let (q, r) = e.div_rem(&l[i]);
                    if !r.is_zero() {
                        return Err(Error::Internal("coboundaries not inside cocycles".into()));
                    }
                    a.set(i, j, q);
                }
            }
        }
        let sa = smith(&a, Track { left: true, left_inv: true, ..Track::NONE });
        if sa.rank != k {
            return Err(Error::Internal("cocycles modulo coboundaries is not finite".into()));
        }
        let p = sa.u.expect("tracked");
        let p_inv = sa.u_inv.expect("tracked");
        let mut orders = Vec::new();
        let mut coord_rows = Vec::new();
        for (i, d) in sa.diag.iter().enumerate() {
            if !d.is_one() {
                orders.push(d.to_u64().ok_or_else(|| Error::Internal("huge torsion".into()))?);
                coord_rows.push(i);
            }
        }
        // generators: columns of L·P⁻¹ = V·diag(l)·P⁻¹
        let mut lp = p_inv.clone();
        for i in 0..k {
            for j in 0..k {
                let e = lp.get(i, j).clone();
                if !e.is_zero() {
                    lp.set(i, j, e * &l[i]);
                }
            }
        }
        let gens_mat = v.mul(&lp);
        let cmod = module.with_modulus(n_mod);
        let generators = coord_rows
            .iter()
            .map(|&j| {
                let table = (0..k)
                    .map(|i| gens_mat.get(i, j).mod_floor(&nb).to_u64().expect("reduced"))
                    .collect();
                Cochain::from_table(&cmod, degree, table)
            })
            .collect::<Result<Vec<_>>>()?;
        // coordinate map: rows of P·diag(1/l)·V⁻¹, kept with denominator l
        let mut pl = IntMatrix::zeros(coord_rows.len(), k);
        let common: BigInt = l.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
        for (r, &i) in coord_rows.iter().enumerate() {
            for j in 0..k {
                let e = p.get(i, j);
                if !e.is_zero() {
                    pl.set(r, j, e * (&common / &l[j]));
                }
            }
        }
        let coord = pl.mul(&v_inv);
        let presentation = AbelianGroupPresentation::from_cyclic_factors(0, &orders);
        Ok(ImageCohomology {
            module: cmod,
            degree,
            n_mod,
            m_mod,
            presentation,
            orders,
            generators,
            coord,
            coord_den: vec![common],
            prev,
        })
    }

    /// Coordinates of a cocycle with respect to `generators`, each reduced
    /// modulo its order.
    pub fn coordinates(&self, tau: &Cochain) -> Result<Vec<u64>> {
        let y = self.to_n_scale(tau)?;
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let raw = self.coord.mul_vec(&yb);
        let den = &self.coord_den[0];
        raw.iter()
            .zip(&self.orders)
            .map(|(c, &o)| {
                let (q, r) = c.div_rem(den);
                if !r.is_zero() {
                    return Err(Error::NotCocycle);
                }
                Ok(q.mod_floor(&BigInt::from(o)).to_u64().expect("reduced"))
            })
            .collect()
    }

    fn to_n_scale(&self, tau: &Cochain) -> Result<Vec<u64>> {
        if tau.degree() != self.degree || tau.table().len() != self.module.cochain_len(self.degree) {
            return Err(Error::Mismatch("cochain does not fit this cohomology".into()));
        }
        let r = tau.reduced_modulus();
        if self.n_mod % r != 0 {
            return Err(Error::Mismatch(format!(
                "values of order {r} do not fit in μ_{}",
                self.n_mod
            )));
        }
        Ok(tau.reduce().lift(self.n_mod)?.table().to_vec())
    }

    /// The cocycle Σ cᵢ·genᵢ.
    pub fn representative(&self, coords: &[u64]) -> Cochain {
        let mut acc = Cochain::zero(&self.module, self.degree);
        for (g, &c) in self.generators.iter().zip(coords) {
            acc = acc.add(&g.scale(c as i64)).expect("same module");
        }
        acc
    }

    /// β with ∂β = τ in μ_M, when τ is trivial; verified on the tables.
    pub fn witness(&self, tau: &Cochain) -> Result<Option<Cochain>> {
        if self.coordinates(tau)?.iter().any(|&c| c != 0) {
            return Ok(None);
        }
        let (dp, cols) = self
            .prev
            .as_ref()
            .ok_or_else(|| Error::Precondition("degree 0 has no coboundaries".into()))?;
        let mb = BigInt::from(self.m_mod);
        let s = BigInt::from(self.m_mod / self.n_mod);
        let y: Vec<BigInt> = self.to_n_scale(tau)?.iter().map(|&v| BigInt::from(v) * &s).collect();
        let uy = dp.u.as_ref().expect("tracked").mul_vec(&y);
        let mut z = vec![BigInt::zero(); *cols];
        for (i, target) in uy.iter().enumerate() {
            let d = dp.diag.get(i).filter(|d| !d.is_zero());
            match d {
                Some(d) if i < *cols => {
                    let g = d.gcd(&mb);
                    if !target.mod_floor(&g).is_zero() {
                        return Err(Error::Internal("coboundary equation unsolvable".into()));
                    }
                    let mg = &mb / &g;
                    let inv = mod_inverse(&(d / &g).mod_floor(&mg), &mg);
                    z[i] = ((target / &g) * inv).mod_floor(&mg);
                }
                _ => {
                    if !target.mod_floor(&mb).is_zero() {
                        return Err(Error::Internal("coboundary equation unsolvable".into()));
                    }
                }
            }
        }
        let x = dp.v.as_ref().expect("tracked").mul_vec(&z);
        let bmod = self.module.with_modulus(self.m_mod);
        let table = x.iter().map(|v| v.mod_floor(&mb).to_u64().expect("reduced")).collect();
        let beta = Cochain::from_table(&bmod, self.degree - 1, table)?;
        let target = tau.reduce().lift(self.m_mod)?;
        if beta.coboundary() != target {
            return Err(Error::Internal("coboundary witness failed verification".into()));
        }
        Ok(Some(beta))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Hⁿ(G; C(X, U(1))_φ) for n ≥ 1, by both routes; disagreement is an error.
pub fn cohomology_u1(
    group: &Arc<FiniteGroup>,
    gset: &Arc<GSet>,
    phi: &Z2Hom,
    n: usize,
) -> Result<AbelianGroupPresentation> {
    if n == 0 {
        return Err(Error::Precondition("U(1)-cohomology is computed for n ≥ 1".into()));
    }
    let z_route = group_cohomology(group, gset, phi, Coefficients::Integers, n + 1)?;
    let mu_route = U1Cohomology::new(group, gset, phi, n)?.presentation().clone();
    if z_route != mu_route {
        return Err(Error::Internal(format!(
            "U(1) cohomology routes disagree: {z_route} vs {mu_route}"
        )));
    }
    Ok(z_route)
}

/// Class of a cocycle: coordinates in the computed generators, plus a
/// verified coboundary witness when the class is trivial.
#[derive(Clone, Debug)]
pub struct CocycleClass {
    pub coordinates: Vec<u64>,
    pub orders: Vec<u64>,
    pub witness: Option<Cochain>,
}

impl CocycleClass {
    pub fn is_trivial(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }

    /// Order of the class in the cohomology group.
    pub fn order(&self) -> u64 {
        self.coordinates
            .iter()
            .zip(&self.orders)
            .fold(1, |acc, (&c, &o)| acc.lcm(&(o / c.gcd(&o))))
    }
}

/// Hⁿ(G; C(X, U(1))_φ) through the μ-route, with classification.
#[derive(Clone, Debug)]
pub struct U1Cohomology {
    inner: ImageCohomology,
}

impl U1Cohomology {
    pub fn new(group: &Arc<FiniteGroup>, gset: &Arc<GSet>, phi: &Z2Hom, n: usize) -> Result<Self> {
        Self::with_modulus(group, gset, phi, n, 2 * group.order() as u64)
    }

    /// Uses μ_N for the cocycles, N a multiple of 2|G|.
    pub fn with_modulus(
        group: &Arc<FiniteGroup>,
        gset: &Arc<GSet>,
        phi: &Z2Hom,
        n: usize,
        n_mod: u64,
    ) -> Result<Self> {
        let ord = group.order() as u64;
        if n == 0 || n_mod % (2 * ord) != 0 {
            return Err(Error::Precondition("need n ≥ 1 and N a multiple of 2|G|".into()));
        }
        let module = CoefficientModule::new(group.clone(), gset.clone(), phi.clone(), n_mod)?;
        Ok(U1Cohomology { inner: ImageCohomology::new(&module, n, n_mod, n_mod * ord)? })
    }

    /// For point cocycles of any modulus: picks N = lcm(2|G|, reduced modulus).
    pub fn for_cochain(tau: &Cochain) -> Result<Self> {
        let g = tau.module().group.clone();
        let n_mod = (2 * g.order() as u64).lcm(&tau.reduced_modulus());
        Self::with_modulus(&g, &tau.module().gset, tau.phi(), tau.degree(), n_mod)
    }

    pub fn presentation(&self) -> &AbelianGroupPresentation {
        &self.inner.presentation
    }

    pub fn orders(&self) -> &[u64] {
        &self.inner.orders
    }

    pub fn generators(&self) -> &[Cochain] {
        &self.inner.generators
    }

    pub fn modulus(&self) -> u64 {
        self.inner.n_mod
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.inner.module
    }

    pub fn representative(&self, coords: &[u64]) -> Cochain {
        self.inner.representative(coords)
    }

    /// One representative per class, in lexicographic coordinate order.
    pub fn class_representatives(&self) -> Vec<(Vec<u64>, Cochain)> {
        let mut out = vec![vec![]];
        for &o in &self.inner.orders {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..o).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|c| {
            let r = self.representative(&c);
            (c, r)
        }).collect()
    }

    /// See [`minimal_representative`]; reuses this presentation, whose
    /// modulus must be a multiple of the modulus of τ.
    pub fn minimal_representative(&self, tau: &Cochain) -> Result<Cochain> {
        if tau.degree() != 2 || self.modulus() % tau.reduced_modulus() != 0 {
            return Err(Error::Precondition("τ does not fit this presentation".into()));
        }
        let k = self.classify(tau)?.order();
        let scaled = tau.scale(k as i64);
        let beta = self
            .inner
            .witness(&scaled)?
            .ok_or_else(|| Error::Internal("k·τ should be a coboundary".into()))?;
        let big = beta.modulus() * k;
        let beta_k = Cochain::from_table(&beta.module().with_modulus(big), 1, beta.table().to_vec())?;
        let out = tau.lift(big)?.sub(&beta_k.coboundary())?.reduce().normalized()?.reduce();
        if k % out.reduced_modulus() != 0 {
            return Err(Error::Internal("minimal representative has the wrong modulus".into()));
        }
        if !self.classify(&out.sub(tau)?)?.is_trivial() {
            return Err(Error::Internal("minimal representative changed the class".into()));
        }
        Ok(out)
    }

    pub fn classify(&self, tau: &Cochain) -> Result<CocycleClass> {
        if !tau.is_cocycle() {
            return Err(Error::NotCocycle);
        }
        let coordinates = self.inner.coordinates(tau)?;
        let witness = if coordinates.iter().all(|&c| c == 0) { self.inner.witness(tau)? } else { None };
        Ok(CocycleClass { coordinates, orders: self.inner.orders.clone(), witness })
    }
}

/// A cohomologous point cocycle whose values are k-th roots of unity, k the
/// order of the class, normalized so that τ(e,·) = τ(·,e) = 0.
///
/// With ∂β = kτ, the cocycle τ − ∂(β/k) has k-th multiple exactly zero.
pub fn minimal_representative(tau: &Cochain) -> Result<Cochain> {
    if tau.degree() != 2 || tau.module().gset.size() != 1 {
        return Err(Error::Precondition("expected a degree-2 point cocycle".into()));
    }
    U1Cohomology::for_cochain(tau)?.minimal_representative(tau)
}

/// Classifies a cocycle against freshly computed generators.
pub fn classify_cocycle(tau: &Cochain) -> Result<CocycleClass> {
    U1Cohomology::for_cochain(tau)?.classify(tau)
}

/// The group of twists H²(G; U(1)_φ) × Hom(G, Z₂) ≅ H³(G; Z_φ) × H¹(G; Z₂)
/// under the graded sum, computed from its Cayley table.
#[derive(Clone, Debug)]
pub struct TwistGroup {
    pub presentation: AbelianGroupPresentation,
    pub h3: AbelianGroupPresentation,
    pub homs: Vec<Z2Hom>,
    /// Elements as (class coordinates, index into `homs`).
    pub elements: Vec<(Vec<u64>, usize)>,
    /// `table[i][j]` is the index of elements[i] + elements[j].
    pub table: Vec<Vec<usize>>,
    pub element_orders: Vec<u64>,
    /// Indices of elements of the form (0, c) generating the whole group.
    pub pure_grading_generators: Vec<usize>,
    /// Twists with trivial grading form a subgroup isomorphic to H³.
    pub kernel_matches_h3: bool,
}

pub const TWIST_GROUP_MAX_ORDER: usize = 16;

pub fn twist_group(group: &Arc<FiniteGroup>, phi: &Z2Hom) -> Result<TwistGroup> {
    if group.order() > TWIST_GROUP_MAX_ORDER {
        return Err(Error::SizeBound(format!("twist groups need |G| ≤ {TWIST_GROUP_MAX_ORDER}")));
    }
    let point = Arc::new(GSet::point(group));
    let h2 = U1Cohomology::new(group, &point, phi, 2)?;
    let h3 = group_cohomology(group, &point, phi, Coefficients::Integers, 3)?;
    if &h3 != h2.presentation() {
        return Err(Error::Internal("H³(Z_φ) and H²(U(1)_φ) disagree".into()));
    }
    let homs = Z2Hom::all(group);
    let classes = h2.class_representatives();
    let mut elements = Vec::new();
    let mut twists = Vec::new();
    for (coords, rep) in &classes {
        for (hi, c) in homs.iter().enumerate() {
            elements.push((coords.clone(), hi));
            twists.push(TwistDatum::new(rep.clone(), c.clone())?);
        }
    }
    let index: HashMap<(Vec<u64>, usize), usize> =
        elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let nel = elements.len();
    let mut table = vec![vec![0; nel]; nel];
    for i in 0..nel {
        for j in 0..nel {
            let s = twists[i].graded_sum(&twists[j])?;
            let cls = h2.classify(&s.tau)?;
            let hi = homs.iter().position(|h| *h == s.c).expect("homs closed under product");
            table[i][j] = index[&(cls.coordinates, hi)];
        }
    }
    let zero = index[&(vec![0; h2.orders().len()], 0)];
    let element_orders: Vec<u64> = (0..nel)
        .map(|i| {
            let mut x = i;
            let mut k = 1;
            while x != zero {
                x = table[x][i];
                k += 1;
            }
            k
        })
        .collect();
    for i in 0..nel {
        for j in 0..nel {
            if table[i][j] != table[j][i] {
                return Err(Error::Internal("twist group is not abelian".into()));
            }
        }
    }
    let presentation = AbelianGroupPresentation::from_element_orders(&element_orders);
    let kernel_orders: Vec<u64> =
        (0..nel).filter(|&i| elements[i].1 == 0).map(|i| element_orders[i]).collect();
    let kernel_matches_h3 = AbelianGroupPresentation::from_element_orders(&kernel_orders) == h3;
    let pure_grading_generators = (0..nel)
        .filter(|&i| elements[i].0.iter().all(|&c| c == 0) && element_orders[i] as usize == nel && nel > 1)
        .collect();
    Ok(TwistGroup {
        presentation,
        h3,
        homs,
        elements,
        table,
        element_orders,
        pure_grading_generators,
        kernel_matches_h3,
    })
}

/// Rank of an integer matrix modulo a prime.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = (0..a.rows)
        .map(|i| (0..a.cols).map(|j| a.get(i, j).mod_floor(&pb).to_u64().unwrap()).collect())
        .collect();
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(piv) = (rank..a.rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for j in c..a.cols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for r in 0..a.rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..a.cols {
                    m[r][j] = (m[r][j] + p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{klein_with_projections, z2_with_id, NamedCocycle};
    use crate::group::presets;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pres(s: &str) -> AbelianGroupPresentation {
        AbelianGroupPresentation::parse(s).unwrap()
    }

    #[test]
    fn h2_z2_twisted() {
        let (g, id) = z2_with_id();
        let pt = Arc::new(GSet::point(&g));
        assert_eq!(cohomology_u1(&g, &pt, &id, 2).unwrap(), pres("Z/2"));
        assert_eq!(cohomology_u1(&g, &pt, &Z2Hom::trivial(2), 2).unwrap(), pres("0"));
        assert_eq!(group_cohomology(&g, &pt, &id, Coefficients::Cyclic(2), 2).unwrap(), pres("Z/2"));
    }

    #[test]
    fn h2_klein() {
        let (k, p1, _) = klein_with_projections();
        let pt = Arc::new(GSet::point(&k));
        assert_eq!(cohomology_u1(&k, &pt, &p1, 2).unwrap(), pres("Z/2 + Z/2"));
        assert_eq!(cohomology_u1(&k, &pt, &Z2Hom::trivial(4), 2).unwrap(), pres("Z/2"));
    }

    #[test]
    fn h1_z2_coefficients() {
        let g = Arc::new(presets::cyclic(2));
        let pt = Arc::new(GSet::point(&g));
        let h1 = group_cohomology(&g, &pt, &Z2Hom::trivial(2), Coefficients::Cyclic(2), 1).unwrap();
        assert_eq!(h1, pres("Z/2"));
        let h0 = group_cohomology(&g, &pt, &Z2Hom::trivial(2), Coefficients::Integers, 0).unwrap();
        assert_eq!(h0, pres("Z"));
    }

    #[test]
    fn trivial_group() {
        let g = Arc::new(presets::trivial());
        let pt = Arc::new(GSet::point(&g));
        assert!(cohomology_u1(&g, &pt, &Z2Hom::trivial(1), 2).unwrap().is_trivial());
    }

    #[test]
    fn classification_of_named() {
        let (g, id) = z2_with_id();
        let module = CoefficientModule::point(g, id).unwrap();
        let c = classify_cocycle(&NamedCocycle::TauId.build(&module).unwrap()).unwrap();
        assert_eq!(c.coordinates, vec![1]);
        let (k, p1, _) = klein_with_projections();
        let module = CoefficientModule::point(k.clone(), p1.clone()).unwrap();
        let h = U1Cohomology::new(&k, &module.gset, &p1, 2).unwrap();
        let mu = h.classify(&NamedCocycle::Mu.build(&module).unwrap()).unwrap();
        let tp2 = h.classify(&NamedCocycle::TauP2.build(&module).unwrap()).unwrap();
        let tp1 = h.classify(&NamedCocycle::TauP1.build(&module).unwrap()).unwrap();
        assert_eq!(mu.coordinates, tp2.coordinates);
        assert!(!mu.is_trivial());
        assert_ne!(tp1.coordinates, tp2.coordinates);
        assert!(!tp1.is_trivial());
    }

    #[test]
    fn tau_id_squared_is_trivial_with_witness() {
        let (g, id) = z2_with_id();
        let module = CoefficientModule::point(g, id).unwrap();
        let t = NamedCocycle::TauId.build(&module).unwrap();
        let c = classify_cocycle(&t.add(&t).unwrap()).unwrap();
        assert!(c.is_trivial());
        assert!(c.witness.is_some());
    }

    #[test]
    fn random_coboundaries_have_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (_, g) in presets::sweep_groups(8) {
            let g = Arc::new(g);
            for phi in Z2Hom::all(&g) {
                let module = CoefficientModule::point(g.clone(), phi.clone()).unwrap();
                let h = U1Cohomology::new(&g, &module.gset, &phi, 2).unwrap();
                for _ in 0..3 {
                    let beta = Cochain::random(&module, 1, &mut rng);
                    let cls = h.classify(&beta.coboundary()).unwrap();
                    assert!(cls.is_trivial());
                    let w = cls.witness.unwrap();
                    assert_eq!(w.coboundary(), beta.coboundary());
                }
                // generators classify to unit vectors
                for (i, gen) in h.generators().iter().enumerate() {
                    let c = h.classify(gen).unwrap();
                    let want: Vec<u64> = (0..h.orders().len()).map(|j| (i == j) as u64).collect();
                    assert_eq!(c.coordinates, want);
                }
            }
        }
    }

    #[test]
    fn routes_agree_small() {
        for (_, g) in presets::sweep_groups(8) {
            let g = Arc::new(g);
            let pt = Arc::new(GSet::point(&g));
            for phi in Z2Hom::all(&g) {
                cohomology_u1(&g, &pt, &phi, 2).unwrap();
                cohomology_u1(&g, &pt, &phi, 1).unwrap();
            }
        }
    }

    #[test]
    fn free_rank_cross_check() {
        let (k, p1, _) = klein_with_projections();
        for h in k.subgroups() {
            let x = Arc::new(GSet::cosets(&k, &h).unwrap());
            for phi in [Z2Hom::trivial(4), p1.clone()] {
                let module = CoefficientModule::new(k.clone(), x.clone(), phi.clone(), 1).unwrap();
                for n in 0..3 {
                    let g = group_cohomology(&k, &x, &phi, Coefficients::Integers, n).unwrap();
                    assert_eq!(g.rank, integral_rank_exact(&module, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn twist_groups() {
        let (g, id) = z2_with_id();
        let t = twist_group(&g, &id).unwrap();
        assert_eq!(t.presentation, pres("Z/4"));
        let c_id = t.elements.iter().position(|(c, h)| c == &vec![0] && t.homs[*h] == id).unwrap();
        assert!(t.pure_grading_generators.contains(&c_id));
        let t = twist_group(&g, &Z2Hom::trivial(2)).unwrap();
        assert_eq!(t.presentation, pres("Z/2"));
        let one = Arc::new(presets::trivial());
        assert!(twist_group(&one, &Z2Hom::trivial(1)).unwrap().presentation.is_trivial());
    }

    #[test]
    fn mod_p_rank_matches_smith() {
        let (k, p1, _) = klein_with_projections();
        let module = CoefficientModule::point(k, p1).unwrap();
        let d = coboundary_matrix(&module, 1).unwrap();
        assert_eq!(rank_mod_p(&d, 1_000_000_007), smith(&d, Track::NONE).rank);
    }

    #[test]
    fn minimal_representatives_keep_class_and_shrink_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for name in ["Z4", "D4", "Q8", "Z2xZ4"] {
            let g = Arc::new(presets::by_name(name).unwrap());
            let x = Arc::new(GSet::point(&g));
            for phi in Z2Hom::all(&g) {
                let h = U1Cohomology::new(&g, &x, &phi, 2).unwrap();
                for (coords, rep) in h.class_representatives() {
                    let noise = Cochain::random(h.module(), 1, &mut rng).coboundary();
                    let tau = rep.add(&noise).unwrap();
                    let small = minimal_representative(&tau).unwrap();
                    let class = h.classify(&small).unwrap();
                    assert_eq!(class.coordinates, coords);
                    assert_eq!(class.order() % small.reduced_modulus(), 0);
                    let e = g.identity();
                    assert!(g.elements().all(|a| small.at2(a, e) == 0 && small.at2(e, a) == 0));
                }
            }
        }
    }
}
