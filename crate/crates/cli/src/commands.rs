//! One function per command. Each fills a machine report and a text
//! rendering of the same data.

use std::fmt::Write;
use std::sync::Arc;

use tenfold::clifford::{abs_group, classify_clifford, irreducible_graded_modules};
use tenfold::cohomology::{cohomology_u1, group_cohomology, twist_group, Coefficients, U1Cohomology};
use tenfold::kgroup::{block_decomposition, k_group_result, BlockDecomposition};
use tenfold::rep::BlockType;
use tenfold::superalgebra::{oracle_blocks, superalgebra, wedderburn_blocks};
use tenfold::GSet;

use crate::resolve::{self, hom_name, sign_string, Resolved};
use crate::spec::{CoeffSpec, Command, Format, JobSpec};
use crate::{seed, verify, Failure, Report};

#[derive(Clone, Debug)]
pub struct Output {
    pub report: Report,
    pub text: String,
    /// False when `verify` found a failing check.
    pub success: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Machine => self.report.to_machine(),
        }
    }
}

pub fn run(spec: &JobSpec) -> Result<Output, Failure> {
    match spec.command {
        Command::Cohomology => cohomology(spec),
        Command::Twists => twists(spec),
        Command::Clifford => clifford(spec),
        Command::Blocks => blocks(spec),
        Command::Kgroup => kgroup(spec),
        Command::Verify => verify::run(spec),
        Command::Oracle => oracle(spec),
    }
}

fn header(spec: &JobSpec, r: &Resolved, report: &mut Report) {
    report.push("command", spec.command.name());
    report.push("group", &spec.group);
    report.push("order", r.group.order());
    report.push("phi", sign_string(&r.phi));
    report.push("c", sign_string(&r.c));
    report.push("gset", r.gset_label());
}

fn describe(spec: &JobSpec, r: &Resolved) -> String {
    format!(
        "G = {} (order {}), phi = {}, c = {}, X = {}",
        spec.group,
        r.group.order(),
        hom_name(&r.group, &r.phi),
        hom_name(&r.group, &r.c),
        r.gset_label()
    )
}

fn cohomology(spec: &JobSpec) -> Result<Output, Failure> {
    let g = resolve::group(&spec.group)?;
    let phi = resolve::hom(&g, &spec.phi)?;
    let x = resolve::gset(&g, spec.gset.as_deref())?.unwrap_or_else(|| Arc::new(GSet::point(&g)));
    let coeffs = spec.coefficients;
    let degrees = spec.degrees.clone().unwrap_or_else(|| match coeffs {
        CoeffSpec::U1 => vec![1, 2],
        _ => vec![0, 1, 2, 3],
    });
    let mut report = Report::new();
    report.push("command", "cohomology");
    report.push("group", &spec.group);
    report.push("order", g.order());
    report.push("phi", sign_string(&phi));
    report.push("gset", format!("{} points, {} orbits", x.size(), x.orbits().len()));
    report.push("coefficients", coeffs);
    let mut text = format!(
        "H^n(X//G; {coeffs}_phi) for G = {} (order {}), phi = {}, X with {} points\n",
        spec.group,
        g.order(),
        hom_name(&g, &phi),
        x.size()
    );
    for &n in &degrees {
        let n = usize::try_from(n).map_err(|_| Failure::validation(format!("negative degree {n}")))?;
        let h = match coeffs {
            CoeffSpec::Integers => group_cohomology(&g, &x, &phi, Coefficients::Integers, n)?,
            CoeffSpec::Cyclic(m) => group_cohomology(&g, &x, &phi, Coefficients::Cyclic(m), n)?,
            CoeffSpec::U1 => cohomology_u1(&g, &x, &phi, n)?,
        };
        report.push(format!("H^{n}"), h.ascii());
        let _ = writeln!(text, "  H^{n} = {h}");
        if coeffs == CoeffSpec::U1 && n == 2 && x.size() == 1 {
            let u = U1Cohomology::new(&g, &x, &phi, 2)?;
            for (i, (gen, ord)) in u.generators().iter().zip(u.orders()).enumerate() {
                report.push(format!("H^2.generator.{i}.order"), ord);
                report.push(format!("H^2.generator.{i}.cocycle"), gen.to_text());
                let _ = writeln!(text, "    generator {i} of order {ord}:");
                for line in gen.to_text().lines() {
                    let _ = writeln!(text, "      {line}");
                }
            }
        }
    }
    Ok(Output { report, text, success: true })
}

fn twists(spec: &JobSpec) -> Result<Output, Failure> {
    let g = resolve::group(&spec.group)?;
    let phi = resolve::hom(&g, &spec.phi)?;
    let t = twist_group(&g, &phi)?;
    let gens: Vec<String> =
        t.pure_grading_generators.iter().map(|&i| format!("c_{}", hom_name(&g, &t.homs[t.elements[i].1]))).collect();
    let summary = match gens.first() {
        Some(first) => format!("{}, generator {first}", t.presentation),
        None => t.presentation.to_string(),
    };
    let h1 = t.homs.len();
    let h3 = t.h3.order().unwrap_or(0);
    let order = t.elements.len();
    let exact = order as u64 == h3 * h1 as u64 && t.kernel_matches_h3;
    let mut report = Report::new();
    report.push("command", "twists");
    report.push("group", &spec.group);
    report.push("order", g.order());
    report.push("phi", sign_string(&phi));
    report.push("twists", t.presentation.ascii());
    report.push("generators", gens.join(","));
    report.push("H^3", t.h3.ascii());
    report.push("H^1.order", h1);
    report.push("twists.order", order);
    report.push("exact_sequence", if exact { "ok" } else { "fails" });
    let mut text = format!("{summary}\n");
    let _ = writeln!(text, "  H^3(G; Z_phi) = {}", t.h3);
    let _ = writeln!(text, "  H^1(G; Z2) has {h1} elements");
    let _ = writeln!(
        text,
        "  0 -> H^3 -> twists -> H^1 -> 0: {h3} * {h1} = {order} {}",
        if exact { "ok" } else { "FAILS" }
    );
    if !exact {
        return Err(Failure::internal("twist group orders do not fit the exact sequence"));
    }
    Ok(Output { report, text, success: true })
}

fn clifford(spec: &JobSpec) -> Result<Output, Failure> {
    let (p, q) = spec.signature.ok_or_else(|| Failure::validation("clifford needs --signature p,q"))?;
    let field = spec.field;
    let d = classify_clifford(p, q, field)?;
    let shapes = irreducible_graded_modules(p, q, field)?;
    let k = abs_group(p, q, field)?;
    let shape_list = shapes.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let mut report = Report::new();
    report.push("command", "clifford");
    report.push("field", field);
    report.push("signature", format!("{p},{q}"));
    report.push("algebra", d.form);
    report.push("graded_irreducibles", &shape_list);
    report.push("abs_group", k.ascii());
    let idx = p as i64 - q as i64;
    let mut text = format!("Cl_{{{p},{q}}} over {field} = {}\n", d.form);
    let _ = writeln!(text, "  graded irreducibles (even|odd): {shape_list}");
    let _ = writeln!(text, "  M^{{{p},{q}}} / Res M^{{{},{q}}} = {k}   (p - q = {idx})", p + 1);
    Ok(Output { report, text, success: true })
}

fn block_list(types: &[BlockType]) -> String {
    types.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn push_blocks(report: &mut Report, text: &mut String, blocks: &BlockDecomposition) {
    for (i, e) in blocks.entries.iter().enumerate() {
        report.push(format!("block.{i}"), format!("{} x{} {}", e.block, e.multiplicity, e.block.az_label()));
        let _ = writeln!(text, "  {} x{}  ({})", e.block, e.multiplicity, e.block.az_label());
        for (j, p) in e.provenance.iter().enumerate() {
            let d = &p.datum;
            let sign = |s: Option<i8>| s.map_or("-".to_string(), |v| format!("{v:+}"));
            let stab = d.stabilizer.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let line = format!(
                "orbit={} labels={:?} degree={} stabilizer={stab} T2={} TS2={} S2={}",
                p.gset_orbit,
                d.orbit,
                d.degree,
                sign(d.t2),
                sign(d.ts2),
                sign(d.s2)
            );
            report.push(format!("block.{i}.source.{j}"), &line);
            let _ = writeln!(text, "    {line}");
        }
    }
}

fn blocks(spec: &JobSpec) -> Result<Output, Failure> {
    let r = Resolved::new(spec)?;
    let s = r.symmetry()?;
    let seed = seed(spec)?;
    let blocks = block_decomposition(&s)?;
    let mut report = Report::new();
    header(spec, &r, &mut report);
    report.push("seed", seed);
    let mut text = format!("{}\nblocks by Frobenius–Schur indicators:\n", describe(spec, &r));
    push_blocks(&mut report, &mut text, &blocks);
    let indicator = blocks.types();
    let mut oracle = Vec::new();
    let mut oracle_error = None;
    for (_, data, _) in s.orbit_data()? {
        match oracle_blocks(&data.group, &data.phi, &data.c, &data.tau, seed) {
            Ok(b) => oracle.extend(b),
            Err(tenfold::Error::Internal(m)) => return Err(Failure::internal(m)),
            Err(e) => {
                oracle_error = Some(e.to_string());
                break;
            }
        }
    }
    oracle.sort();
    report.push("indicator", block_list(&indicator));
    match &oracle_error {
        None => {
            report.push("oracle", block_list(&oracle));
            report.push("agree", indicator == oracle);
            let _ = writeln!(text, "indicator: {}", block_list(&indicator));
            let _ = writeln!(text, "oracle:    {}", block_list(&oracle));
            if indicator != oracle {
                return Err(Failure::internal(format!(
                    "indicator blocks {} disagree with the Wedderburn oracle {}",
                    block_list(&indicator),
                    block_list(&oracle)
                )));
            }
            let _ = writeln!(text, "agree");
        }
        Some(e) => {
            report.push("oracle", format!("unavailable: {e}"));
            let _ = writeln!(text, "indicator: {}\noracle:    unavailable ({e})", block_list(&indicator));
        }
    }
    Ok(Output { report, text, success: true })
}

fn kgroup(spec: &JobSpec) -> Result<Output, Failure> {
    let r = Resolved::new(spec)?;
    let s = r.symmetry()?;
    let res = k_group_result(&s)?;
    let degrees = spec.degrees.clone().unwrap_or_else(|| (0..8).map(|k| -k).collect());
    let mut report = Report::new();
    header(spec, &r, &mut report);
    report.push("period", res.period);
    let mut text = format!("{}\nK^(tau,c)+n, period {}:\n", describe(spec, &r), res.period);
    for &n in &degrees {
        let k = res.at(n);
        report.push(format!("k.{n}"), k.ascii());
        let _ = writeln!(text, "  n = {n:>3}   {k}");
    }
    text.push_str("blocks:\n");
    for (i, e) in res.blocks.entries.iter().enumerate() {
        let contrib: Vec<String> = degrees
            .iter()
            .map(|&n| tenfold::kgroup::block_contribution(e.block, n).map(|g| g.ascii()))
            .collect::<Result<_, _>>()?;
        report.push(format!("block.{i}"), format!("{} x{} {}", e.block, e.multiplicity, e.block.az_label()));
        report.push(format!("block.{i}.contributions"), contrib.join(";"));
        let orbits: Vec<String> = e.provenance.iter().map(|p| p.gset_orbit.to_string()).collect();
        let _ = writeln!(
            text,
            "  {} x{} ({}) from X-orbits {} contributes {}",
            e.block,
            e.multiplicity,
            e.block.az_label(),
            orbits.join(","),
            contrib.join(", ")
        );
    }
    Ok(Output { report, text, success: true })
}

fn oracle(spec: &JobSpec) -> Result<Output, Failure> {
    let r = Resolved::new(spec)?;
    if r.gset.is_some() {
        return Err(Failure::validation("oracle works at a point; drop --gset"));
    }
    let seed = seed(spec)?;
    let a = superalgebra(&r.group, &r.phi, &r.c, &r.tau)?;
    let w = wedderburn_blocks(&a, seed)?;
    let mut report = Report::new();
    header(spec, &r, &mut report);
    report.push("seed", seed);
    report.push("root_order", a.root_order);
    report.push("dim_q", a.dim());
    report.push("galois_copies", w.galois_copies);
    let mut text = format!(
        "{}\nsuperalgebra over Q(zeta_{}) of Q-dimension {}, {} copies of the real algebra\n",
        describe(spec, &r),
        a.root_order,
        a.dim(),
        w.galois_copies
    );
    for (i, b) in w.blocks.iter().enumerate() {
        let line = format!(
            "{} places={} dim_q={} center_degree={} odd_center={}",
            b.block, b.places, b.dim_q, b.center_degree, b.odd_center
        );
        report.push(format!("component.{i}"), &line);
        let _ = writeln!(text, "  {line}");
    }
    report.push("types", block_list(&w.types));
    let _ = writeln!(text, "block types: {}", block_list(&w.types));
    Ok(Output { report, text, success: true })
}
