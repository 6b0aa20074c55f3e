//! K-groups assembled from block decompositions.
//!
//! A block of type (k, a, b) is Morita equivalent to graded Cl_{a,b}-modules
//! over k, so it contributes the ABS group at index a − b − n to K^n.
//! Finite G-sets split into orbits G/H, each computed on the stabilizer H.

use std::sync::Arc;

use crate::clifford::{abs_at_index, abs_quotient, Extra, GradedModuleMonoid};
use crate::cochain::{tau_phi, twist_change, Cochain, CoefficientModule, TwistDatum};
use crate::cohomology::minimal_representative;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GSet, Z2Hom};
use crate::lattice::{AbelianGroupPresentation, IntMatrix};
use crate::rep::{analyze, BlockType, OrbitDatum, ProjectiveTable};

/// The input (G, φ, c, τ, X). Without a G-set, X is a point.
#[derive(Clone, Debug)]
pub struct SymmetryData {
    pub group: Arc<FiniteGroup>,
    pub phi: Z2Hom,
    pub c: Z2Hom,
    pub tau: Cochain,
    pub gset: Option<Arc<GSet>>,
}

impl SymmetryData {
    pub fn new(group: Arc<FiniteGroup>, phi: Z2Hom, c: Z2Hom, tau: Cochain, gset: Option<Arc<GSet>>) -> Result<Self> {
        phi.validate(&group)?;
        c.validate(&group)?;
        if tau.degree() != 2 || tau.group() != group.as_ref() || tau.phi() != &phi {
            return Err(Error::Mismatch("τ must be a 2-cochain for the same (G, φ)".into()));
        }
        if !tau.is_cocycle() {
            return Err(Error::NotCocycle);
        }
        let tau = match &gset {
            Some(x) if tau.module().gset.size() == 1 && x.size() != 1 => {
                tau.pullback_gset(x.clone(), &vec![0; x.size()])?
            }
            Some(x) if tau.module().gset.as_ref() != x.as_ref() => {
                return Err(Error::Mismatch("τ lives on a different G-set".into()));
            }
            _ => tau,
        };
        Ok(SymmetryData { group, phi, c, tau, gset })
    }

    pub fn point(group: Arc<FiniteGroup>, phi: Z2Hom, c: Z2Hom, tau: Cochain) -> Result<Self> {
        Self::new(group, phi, c, tau, None)
    }

    /// τ trivial, over a point.
    pub fn untwisted(group: Arc<FiniteGroup>, phi: Z2Hom, c: Z2Hom) -> Result<Self> {
        let module = CoefficientModule::point(group.clone(), phi.clone())?;
        let tau = Cochain::zero(&module, 2);
        Self::point(group, phi, c, tau)
    }

    pub fn is_point(&self) -> bool {
        self.gset.as_ref().is_none_or(|x| x.size() == 1)
    }

    pub fn twist(&self) -> TwistDatum {
        TwistDatum { tau: self.tau.clone(), c: self.c.clone() }
    }

    fn with_twist(&self, t: TwistDatum) -> SymmetryData {
        SymmetryData { tau: t.tau, c: t.c, ..self.clone() }
    }

    /// Fundamental period of the K-groups: 2 when φ is trivial, else 8.
    pub fn period(&self) -> i64 {
        if self.phi.is_trivial() { 2 } else { 8 }
    }

    /// Point data of each orbit G/H of X: (orbit, stabilizer data, embedding H → G).
    pub fn orbit_data(&self) -> Result<Vec<(Vec<usize>, SymmetryData, Vec<usize>)>> {
        if self.is_point() {
            let tau = if self.tau.module().gset.size() == 1 {
                self.tau.clone()
            } else {
                self.tau.restrict_to_stabilizer(0)?.0
            };
            let pt = SymmetryData { tau, gset: None, ..self.clone() };
            return Ok(vec![(vec![0], pt, self.group.elements().collect())]);
        }
        let x = self.gset.as_ref().expect("not a point");
        let mut out = Vec::new();
        for orbit in x.orbits() {
            let (tau, emb) = self.tau.restrict_to_stabilizer(orbit[0])?;
            let h = Arc::new(tau.group().clone());
            let tau = Cochain::from_table(
                &CoefficientModule::new(h.clone(), Arc::new(GSet::point(&h)), self.phi.pullback(&emb), tau.modulus())?,
                2,
                tau.table().to_vec(),
            )?;
            let data = SymmetryData {
                group: h,
                phi: self.phi.pullback(&emb),
                c: self.c.pullback(&emb),
                tau,
                gset: None,
            };
            out.push((orbit, data, emb));
        }
        Ok(out)
    }
}

/// Where a block came from: the G-set orbit and the orbit of projective
/// irreducibles of G₀ with its stabilizer signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProvenance {
    pub gset_orbit: usize,
    pub datum: OrbitDatum,
}

/// Equality compares block types and multiplicities; provenance depends on
/// the cochain chosen within the class and is diagnostic only.
#[derive(Clone, Debug)]
pub struct BlockEntry {
    pub block: BlockType,
    pub multiplicity: usize,
    pub provenance: Vec<BlockProvenance>,
}

impl PartialEq for BlockEntry {
    fn eq(&self, other: &Self) -> bool {
        self.block == other.block && self.multiplicity == other.multiplicity
    }
}

impl Eq for BlockEntry {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub entries: Vec<BlockEntry>,
}

impl BlockDecomposition {
    /// Block types with multiplicity, sorted.
    pub fn types(&self) -> Vec<BlockType> {
        self.entries.iter().flat_map(|e| std::iter::repeat_n(e.block, e.multiplicity)).collect()
    }
}

pub fn block_decomposition(s: &SymmetryData) -> Result<BlockDecomposition> {
    let mut entries: Vec<BlockEntry> = Vec::new();
    for (k, (_, data, _)) in s.orbit_data()?.into_iter().enumerate() {
        let analysis = analyze(&data.group, &data.phi, &data.c, &data.tau)?;
        for datum in analysis.orbits {
            let prov = BlockProvenance { gset_orbit: k, datum: datum.clone() };
            match entries.iter_mut().find(|e| e.block == datum.block) {
                Some(e) => {
                    e.multiplicity += 1;
                    e.provenance.push(prov);
                }
                None => entries.push(BlockEntry { block: datum.block, multiplicity: 1, provenance: vec![prov] }),
            }
        }
    }
    entries.sort_by_key(|e| e.block);
    Ok(BlockDecomposition { entries })
}

/// The ABS group a block contributes to K^n.
pub fn block_contribution(block: BlockType, n: i64) -> Result<AbelianGroupPresentation> {
    abs_at_index(block.index() - n, block.field)
}

fn sum_blocks(blocks: &BlockDecomposition, n: i64) -> Result<AbelianGroupPresentation> {
    let mut acc = AbelianGroupPresentation::trivial();
    for e in &blocks.entries {
        let g = block_contribution(e.block, n)?;
        for _ in 0..e.multiplicity {
            acc = acc.direct_sum(&g);
        }
    }
    Ok(acc)
}

/// K^{(τ,c)+n} at a point, or summed over the orbits of X.
pub fn k_group(s: &SymmetryData, n: i64) -> Result<AbelianGroupPresentation> {
    sum_blocks(&block_decomposition(s)?, n)
}

/// K-groups over X, one orbit G/H at a time.
pub fn g_set_k_group(s: &SymmetryData, n: i64) -> Result<AbelianGroupPresentation> {
    let mut acc = AbelianGroupPresentation::trivial();
    for (_, data, _) in s.orbit_data()? {
        acc = acc.direct_sum(&k_group(&data, n)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroupDegree {
    pub n: i64,
    pub group: AbelianGroupPresentation,
    pub contributions: Vec<(BlockType, usize, AbelianGroupPresentation)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroupResult {
    pub period: i64,
    pub blocks: BlockDecomposition,
    /// n = 0, −1, …, −(period − 1)
    pub degrees: Vec<KGroupDegree>,
}

impl KGroupResult {
    /// K^n for any integer n, by periodicity.
    pub fn at(&self, n: i64) -> &AbelianGroupPresentation {
        let k = (-n).rem_euclid(self.period) as usize;
        &self.degrees[k].group
    }
}

pub fn k_group_result(s: &SymmetryData) -> Result<KGroupResult> {
    let blocks = block_decomposition(s)?;
    let period = s.period();
    let degrees = (0..period)
        .map(|k| {
            let n = -k;
            let contributions = blocks
                .entries
                .iter()
                .map(|e| Ok((e.block, e.multiplicity, block_contribution(e.block, n)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(KGroupDegree { n, group: sum_blocks(&blocks, n)?, contributions })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KGroupResult { period, blocks, degrees })
}

/// s + c_φ: the graded sum with (0, φ).
pub fn add_c_phi(s: &SymmetryData) -> Result<SymmetryData> {
    let zero = Cochain::zero(s.tau.module(), 2);
    Ok(s.with_twist(s.twist().graded_sum(&TwistDatum::new(zero, s.phi.clone())?)?))
}

/// s + τ_φ: the graded sum with (φ*τ_id, 0).
pub fn add_tau_phi(s: &SymmetryData) -> Result<SymmetryData> {
    let m = s.tau.modulus();
    let module = s.tau.module().with_modulus(if m % 2 == 0 { m } else { 2 * m });
    let t = tau_phi(&module)?;
    let trivial = Z2Hom::trivial(s.group.order());
    Ok(s.with_twist(s.twist().graded_sum(&TwistDatum::new(t, trivial)?)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftRow {
    pub name: &'static str,
    pub shift: i64,
    pub n: i64,
    pub twisted: AbelianGroupPresentation,
    pub shifted: AbelianGroupPresentation,
}

impl ShiftRow {
    pub fn holds(&self) -> bool {
        self.twisted == self.shifted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub rows: Vec<ShiftRow>,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ShiftRow::holds)
    }

    pub fn violations(&self) -> Vec<&ShiftRow> {
        self.rows.iter().filter(|r| !r.holds()).collect()
    }
}

/// Compares K^n(s + c_φ) with K^{n+2}(s), K^n(s + τ_φ) with K^{n+4}(s),
/// and K^n(s + c_φ + τ_φ) with K^{n+6}(s), for n in one period of 8.
/// When φ is trivial both twists are trivial and the shifts collapse
/// modulo the period 2.
pub fn degree_shift_check(s: &SymmetryData) -> Result<ShiftReport> {
    let base = k_group_result(s)?;
    let c = k_group_result(&add_c_phi(s)?)?;
    let t = k_group_result(&add_tau_phi(s)?)?;
    let ct = k_group_result(&add_tau_phi(&add_c_phi(s)?)?)?;
    let mut rows = Vec::new();
    for (name, shift, res) in [("c_phi", 2, &c), ("tau_phi", 4, &t), ("c_phi+tau_phi", 6, &ct)] {
        for n in 0..8 {
            let n = -n;
            rows.push(ShiftRow {
                name,
                shift,
                n,
                twisted: res.at(n).clone(),
                shifted: base.at(n + shift).clone(),
            });
        }
    }
    Ok(ShiftReport { rows })
}

/// τ ↦ τ́ = τ + (φ, c)*μ. The blocks of the result are the acute blocks
/// of the input, i.e. signature (p, q) traded for (q, p).
pub fn acute_transform(s: &SymmetryData) -> Result<SymmetryData> {
    Ok(s.with_twist(twist_change(&s.twist())?))
}

/// The twist added for the Thom isomorphism of a φ-twisted complex bundle
/// of rank r.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThomTwist {
    pub rank: u64,
    pub tau_phi: bool,
    pub c_phi: bool,
}

impl ThomTwist {
    /// Degree shift of the twist: 2 for c_φ, 4 for τ_φ.
    pub fn degree_shift(&self) -> i64 {
        2 * self.c_phi as i64 + 4 * self.tau_phi as i64
    }

    pub fn apply(&self, s: &SymmetryData) -> Result<SymmetryData> {
        let s = if self.c_phi { add_c_phi(s)? } else { s.clone() };
        if self.tau_phi { add_tau_phi(&s) } else { Ok(s) }
    }
}

pub fn thom_twist(rank: u64) -> Result<ThomTwist> {
    if rank == 0 {
        return Err(Error::Precondition("the rank must be at least 1".into()));
    }
    Ok(ThomTwist { rank, tau_phi: matches!(rank % 4, 1 | 2), c_phi: matches!(rank % 4, 1 | 3) })
}

/// The twist of rank r shifts degrees by −2r mod 8, cancelling the 2r real
/// dimensions of the bundle: K^{n+2r}(s + thom(r)) = K^n(s).
pub fn thom_check(s: &SymmetryData, rank: u64) -> Result<bool> {
    let t = thom_twist(rank)?;
    if (t.degree_shift() + 2 * rank as i64) % 8 != 0 {
        return Ok(false);
    }
    let base = k_group_result(s)?;
    let twisted = k_group_result(&t.apply(s)?)?;
    Ok((0..8).all(|n| twisted.at(-n + 2 * rank as i64) == base.at(-n)))
}

/// The exact sequence K^τ(pt) → K^τ(Z₂) → K^{(τ,c)}(pt) → 0 with G acting on
/// Z₂ through c, at the level of generators.
///
/// K^τ(Z₂) is the representation group of K = ker c. Its generators are
/// the K-irreducibles, i.e. {1, T}-orbits of projective irreducibles λ of
/// G₀ = ker φ ∩ ker c. The map π_* sends a K-module W to the graded module
/// W ⊕ W^s, an equivalence onto graded modules. Its kernel is therefore
/// generated by the modules that extend over Cl_{1,0}, read off from the
/// Clifford restriction map of each block. The map π* restricts ungraded
/// G-irreducibles to K, computed by restricting characters from
/// the extension of ker φ down to that of G₀.
#[derive(Clone, Debug)]
pub struct ExactSequenceReport {
    pub source_rank: usize,
    pub middle_rank: usize,
    pub target: AbelianGroupPresentation,
    /// Images of the ungraded irreducibles of G, as K-multiplicities.
    pub pi_star: Vec<Vec<i64>>,
    /// Generators of ker π_*.
    pub relations: Vec<Vec<i64>>,
    pub composition_zero: bool,
    pub kernel_in_image: bool,
    pub surjective: bool,
    pub target_matches_k_group: bool,
}

impl ExactSequenceReport {
    pub fn passed(&self) -> bool {
        self.composition_zero && self.kernel_in_image && self.surjective && self.target_matches_k_group
    }
}

fn lattice(cols: &[Vec<i64>], rows: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            a.set(i, j, v.into());
        }
    }
    a
}

/// Whether v lies in the Z-span of `cols`. Finitely generated abelian
/// groups are Hopfian, so the cokernel is unchanged iff v is already zero
/// in it.
fn in_span(v: &[i64], cols: &[Vec<i64>]) -> bool {
    let n = v.len();
    let mut more = cols.to_vec();
    more.push(v.to_vec());
    AbelianGroupPresentation::cokernel(&lattice(cols, n)) == AbelianGroupPresentation::cokernel(&lattice(&more, n))
}

/// A {1, T}-orbit of projective irreducibles with the multiplicity of each
/// member in the restriction of the K-irreducible.
struct KIrrep {
    labels: Vec<usize>,
    mult: i64,
}

fn restrict_character(from: &ProjectiveTable, mu: usize, to: &ProjectiveTable, lambda: usize) -> Result<i64> {
    let n = from.table.exponent.max(1) * to.table.exponent.max(1);
    let mut acc = Cyclo::zero(n);
    for cl in &to.table.classes {
        let x = cl[0];
        let e = to.sub_to_ext[x];
        let y = from.ext_to_sub[e].ok_or_else(|| Error::Internal("Ĝ₀ is not inside Ĝ₁".into()))?;
        let a = from.table.value(mu, y).embed(n);
        let b = to.table.value(lambda, x).conj().embed(n);
        acc.add_assign(&a.mul(&b).scale(cl.len() as i64));
    }
    let total = acc.as_integer().ok_or_else(|| Error::Internal("inner product is not rational".into()))?;
    let order = to.sub.order() as i64;
    if total % order != 0 {
        return Err(Error::Internal("inner product is not an integer".into()));
    }
    Ok(total / order)
}

pub fn exact_sequence_check(s: &SymmetryData) -> Result<ExactSequenceReport> {
    if s.c.is_trivial() {
        return Err(Error::Precondition("the exact sequence needs a nontrivial c".into()));
    }
    if !s.is_point() {
        return Err(Error::Precondition("the exact sequence is checked over a point".into()));
    }
    let (_, s, _) = s.orbit_data()?.remove(0);
    let g = s.group.clone();
    let tau = minimal_representative(&s.tau)?;
    let graded = analyze(&g, &s.phi, &s.c, &tau)?;
    let trivial = Z2Hom::trivial(g.order());
    let ungraded = analyze(&g, &s.phi, &trivial, &tau)?;
    if graded.projective.tau.table() != ungraded.projective.tau.table()
        || graded.projective.modulus != ungraded.projective.modulus
    {
        return Err(Error::Internal("the two character tables use different cocycles".into()));
    }
    let pt0 = &graded.projective;
    let kirr = k_irreducibles(pt0, &s.c)?;
    let b = kirr.len();
    let index_of = |lambda: usize| kirr.iter().position(|w| w.labels.contains(&lambda));

    // π*: restrict each ungraded G-irreducible to G₀, then read off K-multiplicities
    let mut pi_star = Vec::new();
    for datum in &ungraded.orbits {
        let factor = if datum.block == BlockType::R40 { 2 } else { 1 };
        let mut content = vec![0i64; pt0.table.len()];
        for &mu in &datum.orbit {
            for &lambda in &pt0.selected {
                content[lambda] += factor * restrict_character(&ungraded.projective, mu, pt0, lambda)?;
            }
        }
        let mut col = vec![0i64; b];
        for (w, k) in kirr.iter().enumerate() {
            let m = content[k.labels[0]];
            if m % k.mult != 0 || k.labels.iter().any(|&l| content[l] != m) {
                return Err(Error::Internal("a restriction does not decompose into K-irreducibles".into()));
            }
            col[w] = m / k.mult;
        }
        let covered: i64 = kirr.iter().zip(&col).map(|(k, &m)| m * k.mult * k.labels.len() as i64).sum();
        if covered != content.iter().sum::<i64>() {
            return Err(Error::Internal("a restriction leaves the projective irreducibles".into()));
        }
        pi_star.push(col);
    }

    // ker π_*: Clifford relations of each graded block, on its K-irreducibles
    let mut relations = Vec::new();
    let mut surjective = true;
    for datum in &graded.orbits {
        let mut members: Vec<usize> = datum.orbit.iter().filter_map(|&l| index_of(l)).collect();
        members.sort();
        members.dedup();
        let (a, bb) = (datum.block.a as usize, datum.block.b as usize);
        let monoid = GradedModuleMonoid::new(a, bb, datum.block.field)?;
        if monoid.rank() != members.len() {
            surjective = false;
            continue;
        }
        let q = abs_quotient(a, bb, datum.block.field, Extra::Negative)?;
        for z in &q.z_gens {
            let mut v = vec![0i64; b];
            for (slot, &w) in members.iter().enumerate() {
                v[w] += z[slot] as i64;
            }
            relations.push(v);
        }
    }
    let target = k_group(&SymmetryData { tau: tau.clone(), ..s.clone() }, 0)?;
    let coker = AbelianGroupPresentation::cokernel(&lattice(&relations, b));
    let composition_zero = pi_star.iter().all(|v| in_span(v, &relations));
    let kernel_in_image = relations.iter().all(|v| in_span(v, &pi_star));
    Ok(ExactSequenceReport {
        source_rank: pi_star.len(),
        middle_rank: b,
        target_matches_k_group: coker == target,
        target,
        pi_star,
        relations,
        composition_zero,
        kernel_in_image,
        surjective,
    })
}

fn k_irreducibles(pt: &ProjectiveTable, c: &Z2Hom) -> Result<Vec<KIrrep>> {
    // an antiunitary element of K = ker c, if any
    let t = pt.base.elements().find(|&x| pt.phi.is_odd(x) && !c.is_odd(x));
    let mut seen = vec![false; pt.table.len()];
    let mut out = Vec::new();
    for &lambda in &pt.selected {
        if seen[lambda] {
            continue;
        }
        seen[lambda] = true;
        match t {
            None => out.push(KIrrep { labels: vec![lambda], mult: 1 }),
            Some(t) => {
                let image = pt.act(t, lambda);
                if image != lambda {
                    seen[image] = true;
                    out.push(KIrrep { labels: vec![lambda, image], mult: 1 });
                } else {
                    let mult = match pt.indicator(t, lambda)? {
                        1 => 1,
                        -1 => 2,
                        w => return Err(Error::Internal(format!("indicator {w} on a fixed irreducible"))),
                    };
                    out.push(KIrrep { labels: vec![lambda], mult });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{klein_with_projections, z2_with_id, NamedCocycle};
    use crate::group::presets;
    use crate::lattice::AbelianGroupPresentation as Ab;

    fn z2(twisted: bool, c_id: bool) -> SymmetryData {
        let (g, id) = z2_with_id();
        let m = CoefficientModule::point(g.clone(), id.clone()).unwrap();
        let tau = if twisted { NamedCocycle::TauId.build(&m).unwrap() } else { Cochain::zero(&m, 2) };
        let c = if c_id { id.clone() } else { Z2Hom::trivial(2) };
        SymmetryData::point(g, id, c, tau).unwrap()
    }

    fn klein(tau: Option<NamedCocycle>, both: bool) -> SymmetryData {
        let (g, p1, p2) = klein_with_projections();
        let m = CoefficientModule::point(g.clone(), p1.clone()).unwrap();
        let mut t = match tau {
            Some(n) => n.build(&m).unwrap(),
            None => Cochain::zero(&m, 2),
        };
        if both {
            t = t.add(&NamedCocycle::TauP2.build(&m).unwrap()).unwrap();
        }
        SymmetryData::point(g, p1, p2, t).unwrap()
    }

    fn bott() -> Vec<Ab> {
        let z = Ab::free(1);
        let z2 = Ab::cyclic(2);
        let o = Ab::trivial();
        vec![z.clone(), z2.clone(), z2, o.clone(), z, o.clone(), o.clone(), o]
    }

    #[test]
    fn dictionary_examples() {
        assert_eq!(block_decomposition(&z2(false, false)).unwrap().types(), vec![BlockType::R00]);
        assert_eq!(block_decomposition(&z2(false, true)).unwrap().types(), vec![BlockType::R02]);
        assert_eq!(block_decomposition(&klein(Some(NamedCocycle::TauP1), false)).unwrap().types(), vec![BlockType::R41]);
    }

    #[test]
    fn real_bott_sequence_and_dupont_shift() {
        let plain = k_group_result(&z2(false, false)).unwrap();
        let twisted = k_group_result(&z2(true, false)).unwrap();
        for (k, want) in bott().into_iter().enumerate() {
            let n = -(k as i64);
            assert_eq!(plain.at(n), &want, "KR^{n}");
            assert_eq!(twisted.at(n), plain.at(n + 4));
        }
        assert_eq!(plain.at(-8), plain.at(0));
    }

    #[test]
    fn z4_with_surjective_phi() {
        let g = Arc::new(presets::cyclic(4));
        let phi = Z2Hom::from_odd(&g, vec![false, true, false, true]).unwrap();
        let s = SymmetryData::untwisted(g, phi, Z2Hom::trivial(4)).unwrap();
        assert_eq!(k_group(&s, 0).unwrap(), Ab::free(2));
        assert_eq!(block_decomposition(&s).unwrap().types(), vec![BlockType::R00, BlockType::R40]);
    }

    #[test]
    fn complex_period_two() {
        let g = Arc::new(presets::cyclic(3));
        let t = Z2Hom::trivial(3);
        let s = SymmetryData::untwisted(g, t.clone(), t).unwrap();
        let r = k_group_result(&s).unwrap();
        assert_eq!(r.period, 2);
        assert_eq!(r.at(0), &Ab::free(3));
        assert_eq!(r.at(-1), &Ab::trivial());
    }

    #[test]
    fn free_orbit_is_complex_k_theory_of_a_point() {
        let (g, id) = z2_with_id();
        let x = Arc::new(GSet::cosets(&g, &[0]).unwrap());
        let m = CoefficientModule::point(g.clone(), id.clone()).unwrap();
        let s = SymmetryData::new(g.clone(), id.clone(), Z2Hom::trivial(2), Cochain::zero(&m, 2), Some(x)).unwrap();
        assert_eq!(block_decomposition(&s).unwrap().types(), vec![BlockType::C00]);
        for n in 0..8 {
            let want = if n % 2 == 0 { Ab::free(1) } else { Ab::trivial() };
            assert_eq!(g_set_k_group(&s, -n).unwrap(), want);
            assert_eq!(k_group(&s, -n).unwrap(), want);
        }
        let pt = Arc::new(GSet::point(&g));
        let s = SymmetryData::new(g, id.clone(), Z2Hom::trivial(2), Cochain::zero(&m, 2), Some(pt)).unwrap();
        assert_eq!(g_set_k_group(&s, 0).unwrap(), k_group(&z2(false, false), 0).unwrap());
    }

    #[test]
    fn degree_shifts() {
        for s in [z2(false, false), z2(true, false), z2(false, true), z2(true, true)] {
            let r = degree_shift_check(&s).unwrap();
            assert!(r.passed(), "{:?}", r.violations());
        }
        for (t, both) in [(None, false), (Some(NamedCocycle::TauP2), false), (Some(NamedCocycle::TauP1), false), (Some(NamedCocycle::TauP1), true)] {
            assert!(degree_shift_check(&klein(t, both)).unwrap().passed());
        }
    }

    #[test]
    fn acute_transform_examples() {
        let s = z2(true, false);
        assert_eq!(acute_transform(&s).unwrap().tau.table(), s.tau.table());
        let k = klein(None, false);
        let a = acute_transform(&k).unwrap();
        let m = CoefficientModule::point(k.group.clone(), k.phi.clone()).unwrap();
        assert_eq!(a.tau.lift(m.modulus).unwrap().table(), NamedCocycle::Mu.build(&m).unwrap().table());
        for s in [z2(false, true), z2(true, true), k, klein(Some(NamedCocycle::TauP1), true)] {
            let a = acute_transform(&s).unwrap();
            let mut want: Vec<BlockType> = block_decomposition(&s).unwrap().types().into_iter().map(BlockType::acute).collect();
            want.sort();
            assert_eq!(block_decomposition(&a).unwrap().types(), want);
            let back = acute_transform(&a).unwrap();
            assert_eq!(back.tau.reduce().table(), s.tau.reduce().table());
        }
    }

    #[test]
    fn thom_rank_rule() {
        assert_eq!(thom_twist(1).unwrap(), ThomTwist { rank: 1, tau_phi: true, c_phi: true });
        assert_eq!(thom_twist(2).unwrap(), ThomTwist { rank: 2, tau_phi: true, c_phi: false });
        assert_eq!(thom_twist(3).unwrap(), ThomTwist { rank: 3, tau_phi: false, c_phi: true });
        assert_eq!(thom_twist(4).unwrap(), ThomTwist { rank: 4, tau_phi: false, c_phi: false });
        assert!(thom_twist(0).is_err());
        for r in 1..=8 {
            assert!(thom_check(&z2(false, false), r).unwrap());
            assert!(thom_check(&klein(Some(NamedCocycle::TauP1), false), r).unwrap());
        }
    }

    #[test]
    fn exact_sequences() {
        let g = Arc::new(presets::cyclic(2));
        let t = Z2Hom::trivial(2);
        let id = Z2Hom::from_odd(&g, vec![false, true]).unwrap();
        let s = SymmetryData::untwisted(g, t.clone(), id).unwrap();
        let r = exact_sequence_check(&s).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.target.is_trivial());
        assert_eq!(r.pi_star, vec![vec![1], vec![1]]);

        let g4 = Arc::new(presets::cyclic(4));
        let c = Z2Hom::from_odd(&g4, vec![false, true, false, true]).unwrap();
        let s = SymmetryData::untwisted(g4.clone(), Z2Hom::trivial(4), c.clone()).unwrap();
        assert!(exact_sequence_check(&s).unwrap().passed());
        let s = SymmetryData::untwisted(g4, c.clone(), c).unwrap();
        assert!(exact_sequence_check(&s).unwrap().passed());

        assert!(exact_sequence_check(&z2(false, false)).is_err());
        assert!(exact_sequence_check(&z2(true, true)).unwrap().passed());
        for (t, both) in [(None, false), (Some(NamedCocycle::TauP2), false), (Some(NamedCocycle::TauP1), false), (Some(NamedCocycle::TauP1), true)] {
            let r = exact_sequence_check(&klein(t, both)).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
