//! Resolution of group, homomorphism, τ and G-set selectors.

use std::sync::Arc;

use tenfold::cochain::{tau_phi, NamedCocycle};
use tenfold::cohomology::U1Cohomology;
use tenfold::group::{parse_cycles, presets, DEFAULT_ELEMENT_BOUND};
use tenfold::kgroup::SymmetryData;
use tenfold::{Cochain, CoefficientModule, FiniteGroup, GSet, Z2Hom};

use crate::spec::{GroupSpec, HomSpec, JobSpec, TauSpec};
use crate::Failure;

pub fn group(spec: &GroupSpec) -> Result<Arc<FiniteGroup>, Failure> {
    let g = match spec {
        GroupSpec::Preset(name) => presets::by_name(name)?,
        GroupSpec::Perm(gens) => {
            let perms = gens.iter().map(|s| parse_cycles(s, 0)).collect::<Result<Vec<_>, _>>()?;
            let degree = perms.iter().map(Vec::len).max().unwrap_or(0);
            let padded: Vec<Vec<usize>> = perms
                .into_iter()
                .map(|mut p| {
                    p.extend(p.len()..degree);
                    p
                })
                .collect();
            if padded.is_empty() {
                presets::trivial()
            } else {
                FiniteGroup::from_permutations(&padded, DEFAULT_ELEMENT_BOUND)?.0
            }
        }
        GroupSpec::Table(t) => FiniteGroup::from_table(t.clone(), None)?,
    };
    Ok(Arc::new(g))
}

fn is_klein(g: &FiniteGroup) -> bool {
    g.order() == 4 && g.table() == presets::klein().table()
}

fn nontrivial(g: &FiniteGroup) -> Vec<Z2Hom> {
    Z2Hom::all(g).into_iter().filter(|h| !h.is_trivial()).collect()
}

pub fn hom(g: &FiniteGroup, spec: &HomSpec) -> Result<Z2Hom, Failure> {
    match spec {
        HomSpec::Signs(s) => {
            if s.len() != g.order() {
                return Err(Failure::validation(format!(
                    "sign table has {} entries for a group of order {}",
                    s.len(),
                    g.order()
                )));
            }
            Ok(Z2Hom::from_signs(g, s)?)
        }
        HomSpec::Named(name) => match name.as_str() {
            "trivial" | "1" => Ok(Z2Hom::trivial(g.order())),
            "id" | "nontrivial" => match nontrivial(g).as_slice() {
                [h] => Ok(h.clone()),
                [] => Err(Failure::validation("the group has no nontrivial homomorphism to Z2")),
                hs => Err(Failure::validation(format!(
                    "{name:?} is ambiguous: {} nontrivial homomorphisms; use hom:k or a sign table",
                    hs.len()
                ))),
            },
            "p1" | "p2" | "p1p2" => {
                if !is_klein(g) {
                    return Err(Failure::validation(format!("{name} needs the preset Z2xZ2")));
                }
                // element 2m + n is ((−1)^m, (−1)^n)
                let odd = |i: usize| match name.as_str() {
                    "p1" => i / 2 == 1,
                    "p2" => i % 2 == 1,
                    _ => (i / 2 + i % 2) % 2 == 1,
                };
                Ok(Z2Hom::from_odd(g, (0..4).map(odd).collect())?)
            }
            other => {
                let k = other
                    .strip_prefix("hom:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Failure::validation(format!("unknown homomorphism {other:?}")))?;
                let all = Z2Hom::all(g);
                all.get(k).cloned().ok_or_else(|| {
                    Failure::validation(format!("hom:{k} out of range; there are {} homomorphisms", all.len()))
                })
            }
        },
    }
}

/// Display name of a homomorphism, inverse to [`hom`] where possible.
pub fn hom_name(g: &FiniteGroup, h: &Z2Hom) -> String {
    if h.is_trivial() {
        return "1".into();
    }
    if nontrivial(g).len() == 1 {
        return "id".into();
    }
    if is_klein(g) {
        for name in ["p1", "p2", "p1p2"] {
            if hom(g, &HomSpec::Named(name.into())).ok().as_ref() == Some(h) {
                return name.into();
            }
        }
    }
    let k = Z2Hom::all(g).iter().position(|x| x == h).expect("every homomorphism is listed");
    format!("hom:{k}")
}

pub fn sign_string(h: &Z2Hom) -> String {
    h.values().iter().map(|&v| if v < 0 { '-' } else { '+' }).collect()
}

/// τ as a point 2-cocycle with coefficients twisted by φ.
pub fn tau(g: &Arc<FiniteGroup>, phi: &Z2Hom, spec: Option<&TauSpec>) -> Result<Cochain, Failure> {
    let module = CoefficientModule::point(g.clone(), phi.clone())?;
    let t = match spec {
        None => Cochain::zero(&module, 2),
        Some(TauSpec::Named(name)) => match name.as_str() {
            "0" | "trivial" => Cochain::zero(&module, 2),
            "tau_phi" => tau_phi(&module.with_modulus(2))?,
            other => {
                let named = NamedCocycle::parse(other)
                    .ok_or_else(|| Failure::validation(format!("unknown cocycle {other:?}")))?;
                if named == NamedCocycle::TauId && phi.is_trivial() {
                    return Err(Failure::validation("tau_id lives on (Z2, phi = id)"));
                }
                named.build(&module.with_modulus(2))?
            }
        },
        Some(TauSpec::File(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
            Cochain::parse_text(&module, &text)
                .map_err(|(line, msg)| Failure::at(crate::Kind::Parse, line, 1, &format!("{}: {msg}", path.display())))?
        }
        Some(TauSpec::Class(coords)) => {
            let h = U1Cohomology::new(g, &Arc::new(GSet::point(g)), phi, 2)?;
            if coords.len() != h.orders().len() || coords.iter().zip(h.orders()).any(|(c, o)| c >= o) {
                return Err(Failure::validation(format!(
                    "class {coords:?} does not lie in H^2 = {} with generator orders {:?}",
                    h.presentation(),
                    h.orders()
                )));
            }
            h.representative(coords)
        }
    };
    if !t.is_cocycle() {
        return Err(Failure::validation("τ is not a cocycle"));
    }
    Ok(t)
}

/// `point`, `regular`, `cosets:a,b` (cosets of the subgroup generated by
/// the named elements) or `subgroup:k` (index into the subgroup list).
pub fn gset(g: &Arc<FiniteGroup>, spec: Option<&str>) -> Result<Option<Arc<GSet>>, Failure> {
    let Some(s) = spec.map(str::trim) else { return Ok(None) };
    let sub = match s {
        "point" => return Ok(None),
        "regular" | "free" => vec![g.identity()],
        _ => {
            if let Some(names) = s.strip_prefix("cosets:") {
                let gens = names
                    .split(',')
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .map(|n| g.element_by_name(n).ok_or_else(|| Failure::validation(format!("unknown element {n:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                g.closure(&gens)
            } else if let Some(k) = s.strip_prefix("subgroup:").and_then(|k| k.parse::<usize>().ok()) {
                let subs = g.subgroups();
                subs.get(k).cloned().ok_or_else(|| {
                    Failure::validation(format!("subgroup:{k} out of range; there are {} subgroups", subs.len()))
                })?
            } else {
                return Err(Failure::validation(format!("unknown G-set {s:?}")));
            }
        }
    };
    Ok(Some(Arc::new(GSet::cosets(g, &sub)?)))
}

/// Everything a twisted computation needs, validated.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub group: Arc<FiniteGroup>,
    pub phi: Z2Hom,
    pub c: Z2Hom,
    pub tau: Cochain,
    pub gset: Option<Arc<GSet>>,
}

impl Resolved {
    pub fn new(spec: &JobSpec) -> Result<Self, Failure> {
        let group = group(&spec.group)?;
        let phi = hom(&group, &spec.phi)?;
        let c = hom(&group, &spec.c)?;
        let tau = tau(&group, &phi, spec.tau.as_ref())?;
        let gset = gset(&group, spec.gset.as_deref())?;
        Ok(Resolved { group, phi, c, tau, gset })
    }

    pub fn symmetry(&self) -> Result<SymmetryData, Failure> {
        Ok(SymmetryData::new(self.group.clone(), self.phi.clone(), self.c.clone(), self.tau.clone(), self.gset.clone())?)
    }

    pub fn gset_label(&self) -> String {
        match &self.gset {
            None => "point".into(),
            Some(x) => format!("{} points, {} orbits", x.size(), x.orbits().len()),
        }
    }
}
