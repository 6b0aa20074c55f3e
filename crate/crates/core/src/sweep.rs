//! Configuration sweeps over small groups, and the dual-pipeline check
//! that compares indicator block types with the Wedderburn oracle.

use std::sync::Arc;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cochain::{invariant_square_sign, mu_pullback, Cochain};
use crate::cohomology::{classify_cocycle, twist_group, U1Cohomology};
use crate::error::{Error, Result};
use crate::group::{presets, FiniteGroup, GSet, Z2Hom};
use crate::kgroup::{acute_transform, degree_shift_check, k_group_result, SymmetryData};
use crate::rep::{analyze, BlockType};
use crate::superalgebra::oracle_blocks;

/// One (G, φ, c, τ) with τ a minimal representative of its H²-class.
#[derive(Clone, Debug)]
pub struct TwistConfig {
    pub label: String,
    pub group: Arc<FiniteGroup>,
    pub phi: Z2Hom,
    pub c: Z2Hom,
    /// Coordinates of the class of τ in H²(G; U(1)_φ).
    pub class: Vec<u64>,
    pub tau: Cochain,
}

impl TwistConfig {
    pub fn describe(&self) -> String {
        let fmt = |h: &Z2Hom| h.values().iter().map(|&v| if v < 0 { '-' } else { '+' }).collect::<String>();
        format!("{} phi={} c={} class={:?}", self.label, fmt(&self.phi), fmt(&self.c), self.class)
    }
}

/// Every (φ, c) pair and every H²-class on every sweep group of order at
/// most `max_order`, restricted to φ accepted by `keep_phi`.
pub fn twist_configs(max_order: usize, keep_phi: impl Fn(&Z2Hom) -> bool) -> Result<Vec<TwistConfig>> {
    let mut out = Vec::new();
    for (label, g) in presets::sweep_groups(max_order) {
        let g = Arc::new(g);
        let point = Arc::new(GSet::point(&g));
        let homs = Z2Hom::all(&g);
        for phi in homs.iter().filter(|p| keep_phi(p)) {
            let h = U1Cohomology::new(&g, &point, phi, 2)?;
            let reps = h
                .class_representatives()
                .into_iter()
                .map(|(class, tau)| Ok((class, h.minimal_representative(&tau)?)))
                .collect::<Result<Vec<_>>>()?;
            for c in &homs {
                for (class, tau) in &reps {
                    out.push(TwistConfig {
                        label: label.clone(),
                        group: g.clone(),
                        phi: phi.clone(),
                        c: c.clone(),
                        class: class.clone(),
                        tau: tau.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DualMismatch {
    pub config: String,
    pub indicator: std::result::Result<Vec<BlockType>, String>,
    pub oracle: std::result::Result<Vec<BlockType>, String>,
}

#[derive(Clone, Debug, Default)]
pub struct DualReport {
    pub checked: usize,
    pub mismatches: Vec<DualMismatch>,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs both pipelines on one configuration.
pub fn dual_check(cfg: &TwistConfig, seed: u64) -> Option<DualMismatch> {
    let indicator = analyze(&cfg.group, &cfg.phi, &cfg.c, &cfg.tau)
        .map(|a| a.blocks())
        .map_err(|e| e.to_string());
    let oracle = oracle_blocks(&cfg.group, &cfg.phi, &cfg.c, &cfg.tau, seed).map_err(|e| e.to_string());
    match (&indicator, &oracle) {
        (Ok(a), Ok(b)) if a == b => None,
        _ => Some(DualMismatch { config: cfg.describe(), indicator, oracle }),
    }
}

/// The dual-pipeline check over all configurations, on `jobs` threads
/// (0 means the rayon default). The result does not depend on `jobs`.
pub fn dual_pipeline(configs: &[TwistConfig], seed: u64, jobs: usize) -> DualReport {
    let mismatches = with_pool(jobs, || configs.par_iter().filter_map(|c| dual_check(c, seed)).collect());
    DualReport { checked: configs.len(), mismatches }
}

fn with_pool<T: Send>(jobs: usize, run: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// Outcome of a property check over many configurations. Errors raised
/// while checking count as failures.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<(String, String)>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies `check` to every configuration on `jobs` threads. A check
/// returns `Ok(None)` on success and a description of the violation
/// otherwise. Failures are listed in configuration order.
pub fn sweep<F>(configs: &[TwistConfig], jobs: usize, check: F) -> SweepReport
where
    F: Fn(&TwistConfig) -> Result<Option<String>> + Sync,
{
    let failures = with_pool(jobs, || {
        configs
            .par_iter()
            .filter_map(|cfg| match check(cfg) {
                Ok(None) => None,
                Ok(Some(msg)) => Some((cfg.describe(), msg)),
                Err(e) => Some((cfg.describe(), e.to_string())),
            })
            .collect()
    });
    SweepReport { checked: configs.len(), failures }
}

impl TwistConfig {
    pub fn symmetry(&self) -> Result<SymmetryData> {
        SymmetryData::point(self.group.clone(), self.phi.clone(), self.c.clone(), self.tau.clone())
    }
}

/// K^n(s + c_φ) = K^{n+2}(s), K^n(s + τ_φ) = K^{n+4}(s) and the combined
/// +6 for all n mod 8.
pub fn shift_check(cfg: &TwistConfig) -> Result<Option<String>> {
    let report = degree_shift_check(&cfg.symmetry()?)?;
    Ok(report.violations().first().map(|r| {
        format!("{} at n={}: {} vs {} at n+{}", r.name, r.n, r.twisted, r.shifted, r.shift)
    }))
}

/// The twist change is an involution, fixes τ when c is trivial, changes
/// τ by a verified coboundary when φ is trivial, and τ́ − τ lies in the
/// class of (φ, c)*μ.
pub fn acute_check(cfg: &TwistConfig) -> Result<Option<String>> {
    let s = cfg.symmetry()?;
    let once = acute_transform(&s)?;
    let twice = acute_transform(&once)?;
    if twice.tau != s.tau {
        return Ok(Some("twist change applied twice is not the identity".into()));
    }
    let delta = once.tau.sub(&s.tau.lift(once.tau.modulus())?)?;
    if cfg.c.is_trivial() && !delta.is_zero() {
        return Ok(Some("τ́ ≠ τ although c is trivial".into()));
    }
    let class = classify_cocycle(&delta)?;
    if cfg.phi.is_trivial() {
        match &class.witness {
            Some(beta) if beta.coboundary() == delta => {}
            Some(_) => return Ok(Some("coboundary witness does not verify".into())),
            None => return Ok(Some("τ́ − τ has no coboundary witness with φ trivial".into())),
        }
    }
    let mu = classify_cocycle(&mu_pullback(once.tau.module(), &cfg.c)?)?;
    if mu.coordinates != class.coordinates {
        return Ok(Some(format!("class of τ́ − τ is {:?}, (φ,c)*μ is {:?}", class.coordinates, mu.coordinates)));
    }
    Ok(None)
}

/// Antiunitary involutions of G with their square signs.
fn square_signs(s: &SymmetryData) -> Result<Vec<(usize, i8)>> {
    let g = &s.group;
    g.elements()
        .filter(|&x| s.phi.is_odd(x) && g.op(x, x) == g.identity())
        .map(|x| Ok((x, invariant_square_sign(&s.twist(), x)?)))
        .collect()
}

/// KGroupResult, BlockDecomposition and the square signs are unchanged
/// under τ ↦ τ + ∂β for `samples` random β with values in μ_M, where M is
/// the least common multiple of the modulus of τ and 4.
pub fn coboundary_check(cfg: &TwistConfig, samples: usize, seed: u64) -> Result<Option<String>> {
    let s = cfg.symmetry()?;
    let k = k_group_result(&s)?;
    let signs = square_signs(&s)?;
    let m = cfg.tau.modulus().lcm(&4);
    let tau = cfg.tau.lift(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let beta = Cochain::random(tau.module(), 1, &mut rng);
        let moved = SymmetryData::point(s.group.clone(), s.phi.clone(), s.c.clone(), tau.add(&beta.coboundary())?)?;
        let moved_k = k_group_result(&moved)?;
        if moved_k.blocks != k.blocks {
            return Ok(Some(format!("sample {i}: block decomposition changed")));
        }
        if moved_k.degrees != k.degrees {
            return Ok(Some(format!("sample {i}: K-groups changed")));
        }
        if square_signs(&moved)? != signs {
            return Ok(Some(format!("sample {i}: square signs changed")));
        }
    }
    Ok(None)
}

/// 0 → H³(G; Z_φ) → twists → H¹(G; Z₂) → 0: the twist group has order
/// |H³|·|Hom(G, Z₂)| and the twists with trivial grading form H³.
pub fn twist_sequence_check(group: &Arc<FiniteGroup>, phi: &Z2Hom) -> Result<Option<String>> {
    let t = twist_group(group, phi)?;
    let h3 = t.h3.order().ok_or_else(|| Error::Internal("H³ is infinite".into()))?;
    let total = t.presentation.order().ok_or_else(|| Error::Internal("twist group is infinite".into()))?;
    if total != h3 * t.homs.len() as u64 || total as usize != t.elements.len() {
        return Ok(Some(format!("|twists| = {total}, |H³|·|H¹| = {}", h3 * t.homs.len() as u64)));
    }
    if !t.kernel_matches_h3 {
        return Ok(Some("ungraded twists do not form H³".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_pipeline_agrees_up_to_order_eight() {
        let configs = twist_configs(8, |_| true).unwrap();
        assert!(configs.len() > 500);
        let report = dual_pipeline(&configs, 7, 1);
        assert!(report.passed(), "{:#?}", &report.mismatches[..report.mismatches.len().min(5)]);
    }

    #[test]
    fn property_checks_on_small_groups() {
        let configs = twist_configs(4, |_| true).unwrap();
        for (name, report) in [
            ("shift", sweep(&configs, 0, shift_check)),
            ("acute", sweep(&configs, 0, acute_check)),
            ("coboundary", sweep(&configs, 0, |c| coboundary_check(c, 5, 1))),
        ] {
            assert!(report.passed(), "{name}: {:?}", report.failures);
        }
        for (_, g) in presets::sweep_groups(8) {
            let g = Arc::new(g);
            for phi in Z2Hom::all(&g) {
                assert_eq!(twist_sequence_check(&g, &phi).unwrap(), None);
            }
        }
    }
}
