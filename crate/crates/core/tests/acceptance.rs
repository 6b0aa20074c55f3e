//! Acceptance criteria, one PASS/FAIL line each. Expected values, the
//! coboundary sample count and the timing budgets are pinned here.
//! Criteria run one after another so the timings do not interfere.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tenfold::clifford::{abs_group, Field};
use tenfold::cochain::{klein_with_projections, z2_with_id, NamedCocycle};
use tenfold::cohomology::{cohomology_u1, group_cohomology, twist_group, Coefficients, U1Cohomology};
use tenfold::group::presets;
use tenfold::kgroup::{block_decomposition, exact_sequence_check, k_group, SymmetryData};
use tenfold::rep::BlockType;
use tenfold::sweep::{
    acute_check, coboundary_check, dual_pipeline, shift_check, sweep, twist_configs, twist_sequence_check,
};
use tenfold::{AbelianGroupPresentation, Cochain, CoefficientModule, GSet, Result, Z2Hom};

const SEED: u64 = 1;
const COBOUNDARY_SAMPLES: usize = 200;

fn g(s: &str) -> AbelianGroupPresentation {
    AbelianGroupPresentation::parse(s).expect("well-formed presentation")
}

/// (passed, detail)
type Outcome = Result<(bool, String)>;

/// H³((G/H)//G; Z_φ) through integral cohomology and through H²(U(1)),
/// for every subgroup. Subgroups of Z₂×Z₂ are listed by their elements in
/// the 2m + n numbering, so Z₂×1 = {0, 2}.
fn ac1() -> Outcome {
    let (z2, id) = z2_with_id();
    let (k, p1, _) = klein_with_projections();
    let rows: Vec<(&str, &Arc<tenfold::FiniteGroup>, Z2Hom, Vec<(&[usize], &str)>)> = vec![
        ("Z2, phi=1", &z2, Z2Hom::trivial(2), vec![(&[0], "0"), (&[0, 1], "0")]),
        ("Z2, phi=id", &z2, id, vec![(&[0], "0"), (&[0, 1], "Z/2")]),
        (
            "Z2xZ2, phi=1",
            &k,
            Z2Hom::trivial(4),
            vec![(&[0], "0"), (&[0, 2], "0"), (&[0, 1], "0"), (&[0, 3], "0"), (&[0, 1, 2, 3], "Z/2")],
        ),
        (
            "Z2xZ2, phi=p1",
            &k,
            p1,
            vec![(&[0], "0"), (&[0, 2], "Z/2"), (&[0, 1], "0"), (&[0, 3], "Z/2"), (&[0, 1, 2, 3], "Z/2 + Z/2")],
        ),
    ];
    let mut bad = Vec::new();
    let mut count = 0;
    for (label, grp, phi, expected) in rows {
        let subs = grp.subgroups();
        if subs.len() != expected.len() {
            bad.push(format!("{label}: {} subgroups", subs.len()));
        }
        for (h, want) in expected {
            count += 1;
            if !subs.iter().any(|s| s.as_slice() == h) {
                bad.push(format!("{label} H={h:?}: not a subgroup"));
                continue;
            }
            let x = Arc::new(GSet::cosets(grp, h)?);
            let z = group_cohomology(grp, &x, &phi, Coefficients::Integers, 3)?;
            let u1 = cohomology_u1(grp, &x, &phi, 2)?;
            if z != g(want) || u1 != g(want) {
                bad.push(format!("{label} H={h:?}: H3(Z) = {z}, H2(U1) = {u1}, expected {want}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} rows; {}", if bad.is_empty() { "all match".into() } else { bad.join("; ") })))
}

/// abs_group by p − q, at several signatures per index.
fn ac2() -> Outcome {
    let real = ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"];
    let complex = ["Z", "0"];
    let mut bad = Vec::new();
    for (field, want) in [(Field::R, &real[..]), (Field::C, &complex[..])] {
        let period = want.len();
        for (s, w) in want.iter().enumerate() {
            for (p, q) in [(s, 0), (s + 1, 1), (s + 2, 2), (s + period, period)] {
                let got = abs_group(p, q, field)?;
                if got != g(w) {
                    bad.push(format!("{field} ({p},{q}): {got}, expected {w}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "Z Z2 Z2 0 Z 0 0 0 and Z 0".into() } else { bad.join("; ") }))
}

/// (Z₂×Z₂, φ = p₁, c = p₂) over the four classes.
fn ac3() -> Outcome {
    let (k, p1, p2) = klein_with_projections();
    let m = CoefficientModule::point(k.clone(), p1.clone())?.with_modulus(2);
    let tp1 = NamedCocycle::TauP1.build(&m)?;
    let tp2 = NamedCocycle::TauP2.build(&m)?;
    let cases = [
        ("0", Cochain::zero(&m, 2), BlockType::R01),
        ("tau_p2", tp2.clone(), BlockType::R10),
        ("tau_p1", tp1.clone(), BlockType::R41),
        ("tau_p1+tau_p2", tp1.add(&tp2)?, BlockType::R50),
    ];
    let mut bad = Vec::new();
    for (name, tau, want) in cases {
        let s = SymmetryData::point(k.clone(), p1.clone(), p2.clone(), tau)?;
        let got = block_decomposition(&s)?.types();
        if got != vec![want] {
            bad.push(format!("{name}: {got:?}, expected [{want}]"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "R01 R10 R41 R50".into() } else { bad.join("; ") }))
}

/// Indicator pipeline against the Wedderburn oracle.
fn ac4() -> Outcome {
    let configs = twist_configs(16, |_| true)?;
    let r = dual_pipeline(&configs, SEED, 0);
    let first = r.mismatches.first().map(|m| format!("; first: {} {:?} vs {:?}", m.config, m.indicator, m.oracle));
    Ok((r.passed(), format!("{} configurations, {} mismatches{}", r.checked, r.mismatches.len(), first.unwrap_or_default())))
}

/// Degree shifts by c_φ, τ_φ and both, plus the Dupont shift.
fn ac5() -> Outcome {
    let configs = twist_configs(8, |p| !p.is_trivial())?;
    let r = sweep(&configs, 0, shift_check);
    let (z2, id) = z2_with_id();
    let m = CoefficientModule::point(z2.clone(), id.clone())?.with_modulus(2);
    let twisted = SymmetryData::point(z2.clone(), id.clone(), Z2Hom::trivial(2), NamedCocycle::TauId.build(&m)?)?;
    let plain = SymmetryData::untwisted(z2, id, Z2Hom::trivial(2))?;
    let mut dupont = Vec::new();
    for n in -16..16 {
        if k_group(&twisted, n)? != k_group(&plain, n + 4)? {
            dupont.push(n);
        }
    }
    Ok((
        r.passed() && dupont.is_empty(),
        format!(
            "{} configurations, {} failures{}; Dupont failing n: {dupont:?}",
            r.checked,
            r.failures.len(),
            r.failures.first().map(|(c, m)| format!(" (first: {c}: {m})")).unwrap_or_default()
        ),
    ))
}

fn ac6() -> Outcome {
    let configs = twist_configs(8, |_| true)?;
    let r = sweep(&configs, 0, acute_check);
    let first = r.failures.first().map(|(c, m)| format!(" (first: {c}: {m})")).unwrap_or_default();
    Ok((r.passed(), format!("{} configurations, {} failures{first}", r.checked, r.failures.len())))
}

fn ac7() -> Outcome {
    let configs = twist_configs(8, |_| true)?;
    let r = sweep(&configs, 0, |c| coboundary_check(c, COBOUNDARY_SAMPLES, SEED));
    let first = r.failures.first().map(|(c, m)| format!(" (first: {c}: {m})")).unwrap_or_default();
    Ok((
        r.passed(),
        format!("{} configurations x {COBOUNDARY_SAMPLES} samples, {} failures{first}", r.checked, r.failures.len()),
    ))
}

fn ac8() -> Outcome {
    let (z2, id) = z2_with_id();
    let t = twist_group(&z2, &id)?;
    let generated_by_c_id = t.pure_grading_generators.len() == 1
        && t.pure_grading_generators.iter().all(|&i| t.homs[t.elements[i].1] == id);
    let mut checked = 0;
    let mut bad = Vec::new();
    for (label, grp) in presets::sweep_groups(8) {
        let grp = Arc::new(grp);
        for phi in Z2Hom::all(&grp) {
            checked += 1;
            if let Some(msg) = twist_sequence_check(&grp, &phi)? {
                bad.push(format!("{label}: {msg}"));
            }
        }
    }
    Ok((
        t.presentation == g("Z/4") && generated_by_c_id && bad.is_empty(),
        format!(
            "(Z2, id): {} generated by c_id: {generated_by_c_id}; {checked} (G, phi) pairs{}",
            t.presentation,
            if bad.is_empty() { String::new() } else { format!(", failing: {}", bad.join("; ")) }
        ),
    ))
}

fn ac9() -> Outcome {
    let (z2, id) = z2_with_id();
    let s = SymmetryData::untwisted(z2, Z2Hom::trivial(2), id)?;
    let r = exact_sequence_check(&s)?;
    let first = r.passed() && r.target.is_trivial();
    let z4 = Arc::new(presets::cyclic(4));
    let c = Z2Hom::all(&z4).into_iter().find(|h| !h.is_trivial()).expect("Z4 maps onto Z2");
    let point = Arc::new(GSet::point(&z4));
    let (mut checked, mut bad) = (0, Vec::new());
    for phi in Z2Hom::all(&z4) {
        for (class, tau) in U1Cohomology::new(&z4, &point, &phi, 2)?.class_representatives() {
            checked += 1;
            let s = SymmetryData::point(z4.clone(), phi.clone(), c.clone(), tau)?;
            let r = exact_sequence_check(&s)?;
            if !r.passed() {
                bad.push(format!("phi={phi:?} class={class:?}"));
            }
        }
    }
    Ok((
        first && bad.is_empty(),
        format!(
            "(Z2, c=id): exact and surjective {}, K^(c+0) = {}; Z4 with c surjective: {checked} cases{}",
            r.passed(),
            r.target,
            if bad.is_empty() { String::new() } else { format!(", failing {}", bad.join("; ")) }
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, u64, fn() -> Outcome); 9] = [
        ("AC1", "classification tables", 10, ac1),
        ("AC2", "Bott sequence", 5, ac2),
        ("AC3", "tenfold dictionary", 5, ac3),
        ("AC4", "dual-pipeline oracle, |G| <= 16", 180, ac4),
        ("AC5", "degree-shift sweep", 60, ac5),
        ("AC6", "twist-change consistency", 30, ac6),
        ("AC7", "coboundary robustness", 60, ac7),
        ("AC8", "twist group and exact sequence orders", 10, ac8),
        ("AC9", "exact sequence with nontrivial c", 10, ac9),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {id} {name}: {detail} [{:.1?} of {budget} s{}]",
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            if in_time { "" } else { ", over budget" }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
