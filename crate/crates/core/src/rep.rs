//! Block types of twisted representation categories through characters.
//!
//! With G₀ = ker φ ∩ ker c, the τ-projective irreducibles of G₀ are the
//! irreducible characters of the extension Ĝ₀ of G₀ by Z_m on which the
//! central generator acts by e^{2πi/m}. The quotient G/G₀ ⊂ Z₂ × Z₂ acts on
//! them by conjugation, composed with complex conjugation for antiunitary
//! elements. Each orbit gives one block; its type is read off from the
//! stabilizer and, on antiunitary cosets C, from the indicator
//!
//!   W_C(λ) = (1/|G₀|) Σ_{u∈C} χ_λ(ũ²),   ũ = (0, u) ∈ Ĝ,
//!
//! which is ±1 when C stabilizes λ and 0 otherwise.

use std::fmt;
use std::sync::Arc;

use crate::chartable::{character_table, CharacterTable};
use crate::clifford::Field;
use crate::cochain::Cochain;
use crate::cohomology::minimal_representative;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::{CentralExtension, FiniteGroup, Z2Hom};

/// Extensions up to this order are used as given; larger ones are first
/// replaced by a cohomologous cocycle of minimal modulus.
pub const DIRECT_EXTENSION_ORDER: usize = 64;

/// One of the ten categories Vect_k^{(p+a, q+b)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockType {
    pub field: Field,
    pub a: u8,
    pub b: u8,
}

impl BlockType {
    pub const C00: BlockType = BlockType { field: Field::C, a: 0, b: 0 };
    pub const C01: BlockType = BlockType { field: Field::C, a: 0, b: 1 };
    pub const R00: BlockType = BlockType { field: Field::R, a: 0, b: 0 };
    pub const R40: BlockType = BlockType { field: Field::R, a: 4, b: 0 };
    pub const R02: BlockType = BlockType { field: Field::R, a: 0, b: 2 };
    pub const R20: BlockType = BlockType { field: Field::R, a: 2, b: 0 };
    pub const R01: BlockType = BlockType { field: Field::R, a: 0, b: 1 };
    pub const R10: BlockType = BlockType { field: Field::R, a: 1, b: 0 };
    pub const R41: BlockType = BlockType { field: Field::R, a: 4, b: 1 };
    pub const R50: BlockType = BlockType { field: Field::R, a: 5, b: 0 };

    pub const ALL: [BlockType; 10] = [
        Self::C00,
        Self::C01,
        Self::R00,
        Self::R40,
        Self::R02,
        Self::R20,
        Self::R01,
        Self::R10,
        Self::R41,
        Self::R50,
    ];

    pub fn period(self) -> i64 {
        match self.field {
            Field::R => 8,
            Field::C => 2,
        }
    }

    /// Clifford index a − b, reduced mod 8 (real) or mod 2 (complex).
    pub fn index(self) -> i64 {
        (self.a as i64 - self.b as i64).rem_euclid(self.period())
    }

    /// The block with this field and index.
    pub fn from_index(field: Field, s: i64) -> BlockType {
        let s = s.rem_euclid(match field {
            Field::R => 8,
            Field::C => 2,
        });
        *Self::ALL
            .iter()
            .find(|b| b.field == field && b.index() == s)
            .expect("every index has a block")
    }

    /// The block seen at the swapped signature: index s becomes −s.
    pub fn acute(self) -> BlockType {
        Self::from_index(self.field, -self.index())
    }

    /// Altland–Zirnbauer label under the convention that index s means
    /// KO^{-s} (real) or K^{-s} (complex). Display metadata only.
    pub fn az_label(self) -> &'static str {
        match (self.field, self.index()) {
            (Field::C, 0) => "A",
            (Field::C, _) => "AIII",
            (Field::R, 0) => "AI",
            (Field::R, 1) => "BDI",
            (Field::R, 2) => "D",
            (Field::R, 3) => "DIII",
            (Field::R, 4) => "AII",
            (Field::R, 5) => "CII",
            (Field::R, 6) => "C",
            _ => "CI",
        }
    }

    pub fn parse(s: &str) -> Option<BlockType> {
        Self::ALL.iter().copied().find(|b| b.to_string() == s.trim())
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.field, self.a, self.b)
    }
}

/// A coset of G₀ in G, labelled by (φ, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub antiunitary: bool,
    pub odd: bool,
}

impl Coset {
    pub const IDENTITY: Coset = Coset { antiunitary: false, odd: false };
    pub const S: Coset = Coset { antiunitary: false, odd: true };
    pub const T: Coset = Coset { antiunitary: true, odd: false };
    pub const TS: Coset = Coset { antiunitary: true, odd: true };
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.antiunitary, self.odd) {
            (false, false) => "1",
            (false, true) => "S",
            (true, false) => "T",
            (true, true) => "TS",
        })
    }
}

/// τ-projective irreducibles of G₀ inside the character table of Ĝ₀.
#[derive(Clone, Debug)]
pub struct ProjectiveTable {
    pub base: Arc<FiniteGroup>,
    pub phi: Z2Hom,
    /// G₀ as elements of G.
    pub kernel: Vec<usize>,
    pub modulus: usize,
    /// The cocycle actually used (cohomologous to the input).
    pub tau: Cochain,
    pub extension: CentralExtension,
    pub sub: Arc<FiniteGroup>,
    pub sub_to_ext: Vec<usize>,
    pub ext_to_sub: Vec<Option<usize>>,
    pub table: CharacterTable,
    /// Characters with central character e^{2πi/m}.
    pub selected: Vec<usize>,
}

impl ProjectiveTable {
    /// Label of gλ: χ(g̃⁻¹ k g̃). Acts on all characters of Ĝ₀.
    pub fn conjugation_action(&self, g: usize, lambda: usize) -> usize {
        let gt = self.extension.section[g];
        let ext = &self.extension.total;
        let chi = &self.table.characters[lambda];
        let values: Vec<Cyclo> = self
            .table
            .classes
            .iter()
            .map(|cl| {
                let k = self.sub_to_ext[cl[0]];
                let k2 = self.ext_to_sub[ext.conj(gt, k)].expect("G₀ is normal");
                chi[self.table.class_of[k2]].clone()
            })
            .collect();
        self.table.find(&values).expect("conjugate of an irreducible is irreducible")
    }

    /// Label of the complex conjugate character.
    pub fn bar_action(&self, lambda: usize) -> usize {
        let values: Vec<Cyclo> = self.table.characters[lambda].iter().map(Cyclo::conj).collect();
        self.table.find(&values).expect("conjugate of an irreducible is irreducible")
    }

    /// The action of G/G₀ on the selected labels.
    pub fn act(&self, g: usize, lambda: usize) -> usize {
        let l = self.conjugation_action(g, lambda);
        if self.phi.is_odd(g) { self.bar_action(l) } else { l }
    }

    pub fn degree(&self, lambda: usize) -> usize {
        self.table.degrees[lambda]
    }

    /// Σ_{u ∈ uG₀} χ_λ(ũ²) / |G₀|, required to be an integer.
    pub fn indicator(&self, coset_rep: usize, lambda: usize) -> Result<i64> {
        let g = &self.base;
        let ext = &self.extension.total;
        let n = self.table.exponent;
        let mut acc = Cyclo::zero(n);
        for &k in &self.kernel {
            let u = g.op(coset_rep, k);
            let ut = self.extension.section[u];
            let sq = self.ext_to_sub[ext.op(ut, ut)].ok_or_else(|| {
                Error::Internal("square of a coset element left G₀".into())
            })?;
            acc.add_assign(self.table.value(lambda, sq));
        }
        let total = acc
            .as_integer()
            .ok_or_else(|| Error::Internal(format!("indicator sum {acc} is not rational")))?;
        let g0 = self.kernel.len() as i64;
        if total % g0 != 0 {
            return Err(Error::Internal(format!("indicator {total}/{g0} is not an integer")));
        }
        Ok(total / g0)
    }
}

/// Builds Ĝ₀ and selects the τ-projective irreducibles.
pub fn twisted_character_table(
    group: &Arc<FiniteGroup>,
    phi: &Z2Hom,
    c: &Z2Hom,
    tau: &Cochain,
) -> Result<ProjectiveTable> {
    phi.validate(group)?;
    c.validate(group)?;
    if tau.degree() != 2 || tau.module().gset.size() != 1 || tau.group() != group.as_ref() {
        return Err(Error::Mismatch("τ must be a point 2-cocycle on the same group".into()));
    }
    if tau.phi() != phi {
        return Err(Error::Mismatch("τ uses a different φ".into()));
    }
    if !tau.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let kernel: Vec<usize> = group.elements().filter(|&g| !phi.is_odd(g) && !c.is_odd(g)).collect();
    let direct = tau.reduce().normalized()?.reduce();
    let tau = if kernel.len() * direct.modulus() as usize <= DIRECT_EXTENSION_ORDER {
        direct
    } else {
        minimal_representative(tau)?
    };
    let m = tau.modulus() as usize;
    let extension = tau.central_extension()?;
    let sub_elems: Vec<usize> = kernel.iter().flat_map(|&g| (0..m).map(move |z| g * m + z)).collect();
    let (sub, sub_to_ext) = extension.total.subgroup(&sub_elems)?;
    let mut ext_to_sub = vec![None; extension.total.order()];
    for (i, &e) in sub_to_ext.iter().enumerate() {
        ext_to_sub[e] = Some(i);
    }
    let sub = Arc::new(sub);
    let table = character_table(&sub)?;
    let z = ext_to_sub[extension.central_inclusion[1 % m]].expect("center lies in Ĝ₀");
    let n = table.exponent;
    let selected: Vec<usize> = (0..table.len())
        .filter(|&i| {
            let d = table.degrees[i] as i64;
            table.value(i, z).value_eq(&Cyclo::from_int(n, d).shift((n / m) as i64))
        })
        .collect();
    let total: usize = selected.iter().map(|&i| table.degrees[i].pow(2)).sum();
    if selected.is_empty() || total != kernel.len() {
        return Err(Error::Internal(format!(
            "projective degrees square-sum to {total}, expected {}",
            kernel.len()
        )));
    }
    Ok(ProjectiveTable {
        base: group.clone(),
        phi: phi.clone(),
        kernel,
        modulus: m,
        tau,
        extension,
        sub,
        sub_to_ext,
        ext_to_sub,
        table,
        selected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDatum {
    /// Labels in the projective table (indices into its characters).
    pub orbit: Vec<usize>,
    pub degree: usize,
    /// The cosets of G₀ present in G.
    pub acting: Vec<Coset>,
    pub stabilizer: Vec<Coset>,
    pub t2: Option<i8>,
    pub ts2: Option<i8>,
    pub s2: Option<i8>,
    /// The coset representative whose indicator gave each sign.
    pub witnesses: Vec<(Coset, usize)>,
    pub block: BlockType,
}

/// Orbits of G/G₀ on the τ-projective irreducibles of G₀, with signs and
/// block types.
#[derive(Clone, Debug)]
pub struct OrbitAnalysis {
    pub projective: ProjectiveTable,
    pub orbits: Vec<OrbitDatum>,
}

impl OrbitAnalysis {
    pub fn blocks(&self) -> Vec<BlockType> {
        let mut b: Vec<BlockType> = self.orbits.iter().map(|o| o.block).collect();
        b.sort();
        b
    }
}

fn sign(w: i64) -> Result<i8> {
    match w {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(Error::Internal(format!("indicator {w} on a stabilizing coset"))),
    }
}

pub fn analyze(group: &Arc<FiniteGroup>, phi: &Z2Hom, c: &Z2Hom, tau: &Cochain) -> Result<OrbitAnalysis> {
    let pt = twisted_character_table(group, phi, c, tau)?;
    let mut reps: Vec<(Coset, usize)> = Vec::new();
    for g in group.elements() {
        let label = Coset { antiunitary: phi.is_odd(g), odd: c.is_odd(g) };
        if !reps.iter().any(|(l, _)| *l == label) {
            reps.push((label, g));
        }
    }
    reps.sort();
    let acting: Vec<Coset> = reps.iter().map(|r| r.0).collect();
    let mut seen = vec![false; pt.table.len()];
    let mut orbits = Vec::new();
    for &lambda in &pt.selected {
        if seen[lambda] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stabilizer = Vec::new();
        for &(label, u) in &reps {
            let image = pt.act(u, lambda);
            if !pt.selected.contains(&image) {
                return Err(Error::Internal("action left the selected characters".into()));
            }
            if image == lambda {
                stabilizer.push(label);
            }
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        for &l in &orbit {
            seen[l] = true;
        }
        orbit.sort();
        if orbit.len() * stabilizer.len() != reps.len() {
            return Err(Error::Internal("orbit–stabilizer count fails".into()));
        }
        let mut witnesses = Vec::new();
        let mut signs = std::collections::BTreeMap::new();
        for &(label, u) in &reps {
            if !label.antiunitary {
                continue;
            }
            let w = pt.indicator(u, lambda)?;
            if stabilizer.contains(&label) {
                signs.insert(label, sign(w)?);
                witnesses.push((label, u));
            } else if w != 0 {
                return Err(Error::Internal(format!("indicator {w} on a non-stabilizing coset")));
            }
        }
        let t2 = signs.get(&Coset::T).copied();
        let ts2 = signs.get(&Coset::TS).copied();
        let full = stabilizer.len() == 4;
        let s2 = if full { Some(t2.expect("T stabilizes") * ts2.expect("TS stabilizes")) } else { None };
        let block = match stabilizer.as_slice() {
            [Coset::IDENTITY] => BlockType::C00,
            [Coset::IDENTITY, Coset::S] => BlockType::C01,
            [Coset::IDENTITY, Coset::T] => {
                if t2 == Some(1) { BlockType::R00 } else { BlockType::R40 }
            }
            [Coset::IDENTITY, Coset::TS] => {
                if ts2 == Some(1) { BlockType::R02 } else { BlockType::R20 }
            }
            _ if full => match (t2, s2) {
                (Some(1), Some(1)) => BlockType::R01,
                (Some(1), _) => BlockType::R10,
                (_, Some(1)) => BlockType::R41,
                _ => BlockType::R50,
            },
            _ => return Err(Error::Internal(format!("unexpected stabilizer {stabilizer:?}"))),
        };
        orbits.push(OrbitDatum {
            degree: pt.degree(lambda),
            orbit,
            acting: acting.clone(),
            stabilizer,
            t2,
            ts2,
            s2,
            witnesses,
            block,
        });
    }
    let dims: usize = orbits.iter().map(|o| o.orbit.len() * o.degree * o.degree).sum();
    if dims != pt.kernel.len() {
        return Err(Error::Internal(format!("orbit dimensions sum to {dims}, not |G₀|")));
    }
    Ok(OrbitAnalysis { projective: pt, orbits })
}

pub fn orbits_and_signs(
    group: &Arc<FiniteGroup>,
    phi: &Z2Hom,
    c: &Z2Hom,
    tau: &Cochain,
) -> Result<Vec<OrbitDatum>> {
    Ok(analyze(group, phi, c, tau)?.orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{klein_with_projections, z2_with_id, CoefficientModule, NamedCocycle};
    use crate::group::presets;

    fn blocks(g: &Arc<FiniteGroup>, phi: &Z2Hom, c: &Z2Hom, tau: &Cochain) -> Vec<BlockType> {
        analyze(g, phi, c, tau).unwrap().blocks()
    }

    #[test]
    fn block_indices_cover_both_periods() {
        let mut real: Vec<i64> =
            BlockType::ALL.iter().filter(|b| b.field == Field::R).map(|b| b.index()).collect();
        real.sort();
        assert_eq!(real, (0..8).collect::<Vec<_>>());
        assert_eq!(BlockType::R41.index(), 3);
        assert_eq!(BlockType::R02.index(), 6);
        for b in BlockType::ALL {
            assert_eq!(b.acute().acute(), b);
            assert_eq!(BlockType::parse(&b.to_string()), Some(b));
        }
    }

    #[test]
    fn z2_time_reversal() {
        let (g, id) = z2_with_id();
        let triv = Z2Hom::trivial(2);
        let m = CoefficientModule::point(g.clone(), id.clone()).unwrap();
        let t0 = Cochain::zero(&m, 2);
        let o = orbits_and_signs(&g, &id, &triv, &t0).unwrap();
        assert_eq!((o.len(), o[0].t2), (1, Some(1)));
        let tid = NamedCocycle::TauId.build(&m).unwrap();
        let o = orbits_and_signs(&g, &id, &triv, &tid).unwrap();
        assert_eq!((o.len(), o[0].t2, o[0].block), (1, Some(-1), BlockType::R40));
        assert_eq!(blocks(&g, &id, &id, &t0), vec![BlockType::R02]);
    }

    #[test]
    fn z4_with_surjective_phi() {
        let g = Arc::new(presets::cyclic(4));
        let phi = Z2Hom::from_odd(&g, vec![false, true, false, true]).unwrap();
        let m = CoefficientModule::point(g.clone(), phi.clone()).unwrap();
        let o = orbits_and_signs(&g, &phi, &Z2Hom::trivial(4), &Cochain::zero(&m, 2)).unwrap();
        let mut signs: Vec<Option<i8>> = o.iter().map(|d| d.t2).collect();
        signs.sort();
        assert_eq!(signs, vec![Some(-1), Some(1)]);
    }

    #[test]
    fn klein_with_both_projections() {
        let (g, p1, p2) = klein_with_projections();
        let m = CoefficientModule::point(g.clone(), p1.clone()).unwrap();
        let tp1 = NamedCocycle::TauP1.build(&m).unwrap();
        let tp2 = NamedCocycle::TauP2.build(&m).unwrap();
        let zero = Cochain::zero(&m, 2);
        let expect = [
            (zero.clone(), BlockType::R01),
            (tp2.clone(), BlockType::R10),
            (tp1.clone(), BlockType::R41),
            (tp1.add(&tp2).unwrap(), BlockType::R50),
        ];
        for (tau, b) in expect {
            assert_eq!(blocks(&g, &p1, &p2, &tau), vec![b]);
        }
    }

    #[test]
    fn projective_klein_has_one_irrep_of_degree_two() {
        let (g, _, _) = klein_with_projections();
        let triv = Z2Hom::trivial(4);
        let m = CoefficientModule::point(g.clone(), triv.clone()).unwrap();
        let gen = NamedCocycle::TrivialPhiGenerator.build(&m).unwrap();
        let pt = twisted_character_table(&g, &triv, &triv, &gen).unwrap();
        assert_eq!(pt.selected.len(), 1);
        assert_eq!(pt.degree(pt.selected[0]), 2);
        let pt = twisted_character_table(&g, &triv, &triv, &Cochain::zero(&m, 2)).unwrap();
        assert_eq!(pt.selected.len(), 4);
    }

    #[test]
    fn dihedral_action_swaps_faithful_characters_of_z4() {
        // D4 with φ the sign of reflections: G₀ = Z4 and reflections
        // are antiunitary; conjugation alone swaps the faithful characters
        let g = Arc::new(presets::dihedral(4));
        let phi = Z2Hom::from_odd(&g, (0..8).map(|i| i >= 4).collect()).unwrap();
        let m = CoefficientModule::point(g.clone(), phi.clone()).unwrap();
        let pt = twisted_character_table(&g, &phi, &Z2Hom::trivial(8), &Cochain::zero(&m, 2)).unwrap();
        let faithful: Vec<usize> = pt
            .selected
            .iter()
            .copied()
            .filter(|&l| pt.table.characters[l].iter().any(|v| v.as_integer().is_none()))
            .collect();
        assert_eq!(faithful.len(), 2);
        let s = 4;
        assert_eq!(pt.conjugation_action(s, faithful[0]), faithful[1]);
        for l in 0..pt.table.len() {
            assert_eq!(
                pt.bar_action(pt.conjugation_action(s, l)),
                pt.conjugation_action(s, pt.bar_action(l))
            );
        }
    }
}
