//! `verify`: the classification tables, the Bott sequence, the tenfold
//! dictionary and the property sweeps, one pass/fail row per check.

use std::fmt::Write;
use std::sync::Arc;
use std::time::Instant;

use tenfold::clifford::{abs_group, Field};
use tenfold::cochain::{klein_with_projections, z2_with_id, NamedCocycle};
use tenfold::cohomology::{cohomology_u1, group_cohomology, twist_group, Coefficients};
use tenfold::group::presets;
use tenfold::kgroup::{block_decomposition, exact_sequence_check, k_group, SymmetryData};
use tenfold::rep::BlockType;
use tenfold::sweep::{
    acute_check, coboundary_check, dual_pipeline, shift_check, sweep, twist_configs, twist_sequence_check,
    SweepReport,
};
use tenfold::{AbelianGroupPresentation, Cochain, CoefficientModule, FiniteGroup, GSet, Z2Hom};

use crate::resolve::hom_name;
use crate::{seed, Failure, JobSpec, Output, Report};

pub const SUITES: [&str; 9] =
    ["appendix-a", "bott", "dictionary", "oracle", "shift", "acute", "coboundary", "twists", "exact"];

/// Random coboundaries tried per configuration in the `coboundary` suite.
pub const COBOUNDARY_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn row(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Row {
    Row { name: name.into(), pass, detail: detail.into() }
}

fn g(s: &str) -> AbelianGroupPresentation {
    AbelianGroupPresentation::parse(s).expect("well-formed presentation")
}

fn compare(name: String, got: &AbelianGroupPresentation, want: &str) -> Row {
    row(name, *got == g(want), format!("{got} (expected {want})"))
}

fn fallible(name: &str, f: impl FnOnce() -> Result<Vec<Row>, Failure>) -> Vec<Row> {
    f().unwrap_or_else(|e| vec![row(name, false, e.to_string())])
}

/// Subgroup names in the tables: Z₂ × 1 is generated by (−1, 1), which
/// is element 2 in the 2m + n numbering.
fn subgroup_name(order: usize, h: &[usize]) -> &'static str {
    match (order, h) {
        (_, [0]) => "1",
        (2, [0, 1]) => "Z2",
        (4, [0, 2]) => "Z2x1",
        (4, [0, 1]) => "1xZ2",
        (4, [0, 3]) => "Delta",
        (4, [0, 1, 2, 3]) => "Z2xZ2",
        _ => "?",
    }
}

/// H³((G/H)//G; Z_φ) for G ∈ {Z₂, Z₂×Z₂}, all subgroups and the three
/// coefficient systems, through both cohomology routes.
pub fn appendix_a() -> Vec<Row> {
    let (z2, id) = z2_with_id();
    let (k, p1, _) = klein_with_projections();
    let table: [(&str, &Arc<FiniteGroup>, Z2Hom, &[(&str, &str)]); 4] = [
        ("Z2", &z2, Z2Hom::trivial(2), &[("1", "0"), ("Z2", "0")]),
        ("Z2xZ2", &k, Z2Hom::trivial(4), &[("1", "0"), ("Z2x1", "0"), ("1xZ2", "0"), ("Delta", "0"), ("Z2xZ2", "Z/2")]),
        ("Z2", &z2, id, &[("1", "0"), ("Z2", "Z/2")]),
        (
            "Z2xZ2",
            &k,
            p1,
            &[("1", "0"), ("Z2x1", "Z/2"), ("1xZ2", "0"), ("Delta", "Z/2"), ("Z2xZ2", "Z/2 + Z/2")],
        ),
    ];
    let mut rows = Vec::new();
    for (gname, grp, phi, expected) in table {
        let pname = hom_name(grp, &phi);
        let subs = grp.subgroups();
        for (hname, want) in expected {
            let name = format!("G={gname} H={hname} phi={pname}");
            let Some(h) = subs.iter().find(|h| subgroup_name(grp.order(), h) == *hname) else {
                rows.push(row(name, false, "subgroup not found"));
                continue;
            };
            let result = (|| -> tenfold::Result<(AbelianGroupPresentation, AbelianGroupPresentation)> {
                let x = Arc::new(GSet::cosets(grp, h)?);
                Ok((group_cohomology(grp, &x, &phi, Coefficients::Integers, 3)?, cohomology_u1(grp, &x, &phi, 2)?))
            })();
            match result {
                Ok((z, u1)) => {
                    let ok = z == g(want) && u1 == z;
                    rows.push(row(name, ok, format!("H^3(Z) = {z}, H^2(U(1)) = {u1} (expected {want})")));
                }
                Err(e) => rows.push(row(name, false, e.to_string())),
            }
        }
        if subs.len() != expected.len() {
            rows.push(row(format!("G={gname} subgroups"), false, format!("{} subgroups", subs.len())));
        }
    }
    rows
}

/// The quotient-monoid groups against the Bott sequence, at two
/// signatures per index to exhibit the dependence on p − q only.
pub fn bott() -> Vec<Row> {
    let real = ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"];
    let complex = ["Z", "0"];
    let mut rows = Vec::new();
    for (field, want) in [(Field::R, &real[..]), (Field::C, &complex[..])] {
        let period = want.len();
        for (s, w) in want.iter().enumerate() {
            for (p, q) in [(s, 0), (s + 1, 1), (s + period, period)] {
                let name = format!("{field} p={p} q={q}");
                rows.push(match abs_group(p, q, field) {
                    Ok(k) => compare(name, &k, w),
                    Err(e) => row(name, false, e.to_string()),
                });
            }
        }
    }
    rows
}

/// (Z₂×Z₂, φ = p₁, c = p₂) and the four classes.
pub fn dictionary() -> Vec<Row> {
    fallible("dictionary", || {
        let (k, p1, p2) = klein_with_projections();
        let m = CoefficientModule::point(k.clone(), p1.clone())?.with_modulus(2);
        let tp1 = NamedCocycle::TauP1.build(&m)?;
        let tp2 = NamedCocycle::TauP2.build(&m)?;
        let cases = [
            ("1", Cochain::zero(&m, 2), BlockType::R01),
            ("tau_p2", tp2.clone(), BlockType::R10),
            ("tau_p1", tp1.clone(), BlockType::R41),
            ("tau_p1+tau_p2", tp1.add(&tp2)?, BlockType::R50),
        ];
        let mut rows = Vec::new();
        for (name, tau, want) in cases {
            let s = SymmetryData::point(k.clone(), p1.clone(), p2.clone(), tau)?;
            let got = block_decomposition(&s)?.types();
            rows.push(row(format!("tau={name}"), got == vec![want], format!("{got:?} (expected [{want}])")));
        }
        Ok(rows)
    })
}

fn sweep_rows(name: &str, report: tenfold::Result<SweepReport>) -> Vec<Row> {
    match report {
        Ok(r) => {
            let mut rows = vec![row(
                name,
                r.passed(),
                format!("{} configurations, {} failures", r.checked, r.failures.len()),
            )];
            rows.extend(r.failures.iter().take(5).map(|(cfg, msg)| row(cfg.clone(), false, msg.clone())));
            rows
        }
        Err(e) => vec![row(name, false, e.to_string())],
    }
}

pub fn oracle(max_order: usize, seed: u64, jobs: usize) -> Vec<Row> {
    let configs = match twist_configs(max_order, |_| true) {
        Ok(c) => c,
        Err(e) => return vec![row("dual pipeline", false, e.to_string())],
    };
    let r = dual_pipeline(&configs, seed, jobs);
    let mut rows = vec![row(
        format!("dual pipeline |G|<={max_order}"),
        r.passed(),
        format!("{} configurations, {} mismatches", r.checked, r.mismatches.len()),
    )];
    rows.extend(
        r.mismatches
            .iter()
            .take(5)
            .map(|m| row(m.config.clone(), false, format!("indicator {:?} oracle {:?}", m.indicator, m.oracle))),
    );
    rows
}

pub fn shift(max_order: usize, jobs: usize) -> Vec<Row> {
    let mut rows = sweep_rows(
        &format!("degree shifts |G|<={max_order}, phi nontrivial"),
        twist_configs(max_order, |p| !p.is_trivial()).map(|c| sweep(&c, jobs, shift_check)),
    );
    rows.extend(fallible("Dupont shift", || {
        let (z2, id) = z2_with_id();
        let m = CoefficientModule::point(z2.clone(), id.clone())?.with_modulus(2);
        let twisted = SymmetryData::point(z2.clone(), id.clone(), Z2Hom::trivial(2), NamedCocycle::TauId.build(&m)?)?;
        let plain = SymmetryData::untwisted(z2, id, Z2Hom::trivial(2))?;
        let mut bad = Vec::new();
        for n in -8..8 {
            if k_group(&twisted, n)? != k_group(&plain, n + 4)? {
                bad.push(n);
            }
        }
        Ok(vec![row("Dupont (Z2, id, tau_id) = untwisted at n+4", bad.is_empty(), format!("failing n: {bad:?}"))])
    }));
    rows
}

pub fn acute(max_order: usize, jobs: usize) -> Vec<Row> {
    sweep_rows(
        &format!("twist change |G|<={max_order}"),
        twist_configs(max_order, |_| true).map(|c| sweep(&c, jobs, acute_check)),
    )
}

pub fn coboundary(max_order: usize, seed: u64, jobs: usize) -> Vec<Row> {
    sweep_rows(
        &format!("coboundary robustness |G|<={max_order}, {COBOUNDARY_SAMPLES} samples"),
        twist_configs(max_order, |_| true)
            .map(|c| sweep(&c, jobs, |cfg| coboundary_check(cfg, COBOUNDARY_SAMPLES, seed))),
    )
}

pub fn twists(max_order: usize) -> Vec<Row> {
    let mut rows = fallible("twist group of (Z2, id)", || {
        let (z2, id) = z2_with_id();
        let t = twist_group(&z2, &id)?;
        let gens: Vec<String> =
            t.pure_grading_generators.iter().map(|&i| hom_name(&z2, &t.homs[t.elements[i].1])).collect();
        let ok = t.presentation == g("Z/4") && gens == ["id"];
        Ok(vec![row("(Z2, id)", ok, format!("{} generated by c_{gens:?} (expected Z/4 by c_id)", t.presentation))])
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for (label, grp) in presets::sweep_groups(max_order) {
        let grp = Arc::new(grp);
        for phi in Z2Hom::all(&grp) {
            checked += 1;
            match twist_sequence_check(&grp, &phi) {
                Ok(None) => {}
                Ok(Some(msg)) => failures.push(format!("{label} {}: {msg}", hom_name(&grp, &phi))),
                Err(e) => failures.push(format!("{label} {}: {e}", hom_name(&grp, &phi))),
            }
        }
    }
    rows.push(row(
        format!("exact sequence orders |G|<={max_order}"),
        failures.is_empty(),
        format!("{checked} (G, phi) pairs; {}", if failures.is_empty() { "all fit".into() } else { failures.join("; ") }),
    ));
    rows
}

/// The sequence K^τ(pt) → K^τ(Z₂) → K^{(τ,c)}(pt) → 0 for (Z₂, c = id,
/// φ trivial) and every (Z₄, φ, c surjective, class).
pub fn exact() -> Vec<Row> {
    let mut rows = fallible("(Z2, c=id)", || {
        let (z2, id) = z2_with_id();
        let s = SymmetryData::untwisted(z2, Z2Hom::trivial(2), id)?;
        let r = exact_sequence_check(&s)?;
        Ok(vec![row(
            "(Z2, c=id, phi=1)",
            r.passed() && r.target.is_trivial(),
            format!("exact={} surjective={} K^(c+0) = {} (expected 0)", r.kernel_in_image && r.composition_zero, r.surjective, r.target),
        )])
    });
    rows.extend(fallible("(Z4, c surjective)", || {
        let z4 = Arc::new(presets::cyclic(4));
        let c = Z2Hom::all(&z4).into_iter().find(|h| !h.is_trivial()).expect("Z4 maps onto Z2");
        let mut out = Vec::new();
        for phi in Z2Hom::all(&z4) {
            let h2 = tenfold::cohomology::U1Cohomology::new(&z4, &Arc::new(GSet::point(&z4)), &phi, 2)?;
            for (class, tau) in h2.class_representatives() {
                let s = SymmetryData::point(z4.clone(), phi.clone(), c.clone(), tau)?;
                let r = exact_sequence_check(&s)?;
                out.push(row(
                    format!("(Z4, c=surjective, phi={}, class={class:?})", hom_name(&z4, &phi)),
                    r.passed(),
                    format!("target {}, surjective={}", r.target, r.surjective),
                ));
            }
        }
        Ok(out)
    }));
    rows
}

pub fn run_suite(name: &str, spec: &JobSpec, seed: u64) -> Result<Vec<Row>, Failure> {
    let jobs = spec.jobs;
    Ok(match name {
        "appendix-a" => appendix_a(),
        "bott" => bott(),
        "dictionary" => dictionary(),
        "oracle" => oracle(spec.max_order.unwrap_or(16), seed, jobs),
        "shift" => shift(spec.max_order.unwrap_or(8), jobs),
        "acute" => acute(spec.max_order.unwrap_or(8), jobs),
        "coboundary" => coboundary(spec.max_order.unwrap_or(8), seed, jobs),
        "twists" => twists(spec.max_order.unwrap_or(8)),
        "exact" => exact(),
        other => {
            return Err(Failure::validation(format!("unknown suite {other:?}; expected all or one of {}", SUITES.join(", "))))
        }
    })
}

pub fn run(spec: &JobSpec) -> Result<Output, Failure> {
    let seed = seed(spec)?;
    let suite = spec.suite.as_deref().unwrap_or("all");
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { suite.split(',').map(str::trim).collect() };
    let mut report = Report::new();
    report.push("command", "verify");
    report.push("suites", names.join(","));
    report.push("seed", seed);
    let mut text = String::new();
    let (mut passed, mut failed) = (0, 0);
    for name in names {
        let start = Instant::now();
        let rows = run_suite(name, spec, seed)?;
        for (i, r) in rows.iter().enumerate() {
            let verdict = if r.pass { "pass" } else { "fail" };
            report.push(format!("{name}.{i}"), format!("{verdict} {}: {}", r.name, r.detail));
            let _ = writeln!(text, "{} [{name}] {}: {}", verdict.to_uppercase(), r.name, r.detail);
            if r.pass {
                passed += 1;
            } else {
                failed += 1;
            }
        }
        let _ = writeln!(text, "  ({name}: {} rows in {:.1?})", rows.len(), start.elapsed());
    }
    report.push("passed", passed);
    report.push("failed", failed);
    let _ = writeln!(text, "{passed} passed, {failed} failed");
    Ok(Output { report, text, success: failed == 0 })
}
