use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cache::{cache_key, Cache};
use super::{verify, AlexArgs, CliError, Command, ExportArgs, Format, LinkSource, Output, TwistArgs};
use crate::diagram::{dt_export, parse_pd, serialize_pd, LinkDiagram, Strand, TwistRegion};
use crate::family;
use crate::invariants::{alexander_polynomial, determinant, LaurentPoly};
use crate::surgery::{
    cable_surgery_reduction, json_int, rolfsen_twist, Cable, ComponentRef, Slope, SurgeryPresentation,
};

type Result<T> = std::result::Result<T, CliError>;

pub(super) fn execute(cmd: &Command, cache: &mut Cache) -> Result<Output> {
    match cmd {
        Command::Parse { file } => parse(file),
        Command::Lk(src) => lk(src),
        Command::H1 { link, slopes } => h1(link, slopes),
        Command::Twist(args) => twist(args),
        Command::Family { n, m_range, report, dt_dir } => family_cmd(*n, m_range, report.as_deref(), dt_dir.as_deref()),
        Command::Slope { m, n, m_range, n_range } => slope(*m, *n, m_range.clone(), n_range.clone()),
        Command::CableReduce { slope, cable } => cable_reduce(slope, cable),
        Command::Alex(args) => alex(args, cache),
        Command::Export(args) => export(args),
        Command::Verify => Ok(verify_cmd()),
    }
}

fn ok(text: String, json: Value) -> Result<Output> {
    Ok(Output { text, json, code: 0 })
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io { path: "<stdin>".into(), source: e })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

fn load_diagram(path: &Path) -> Result<LinkDiagram> {
    parse_pd(&read_text(path)?).map_err(CliError::domain)
}

fn label_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| "link".to_string(), |s| s.to_string_lossy().into_owned())
}

/// The link with every component unfilled.
fn load_source(src: &LinkSource) -> Result<SurgeryPresentation> {
    match &src.link {
        Some(path) => {
            let d = load_diagram(path)?;
            let k = d.num_components();
            SurgeryPresentation::from_diagram(label_of(path), d, vec![Slope::Unfilled; k]).map_err(CliError::domain)
        }
        None => family::base_link().map_err(CliError::domain),
    }
}

fn with_slopes(p: SurgeryPresentation, slopes: &str) -> Result<SurgeryPresentation> {
    let slopes = Slope::parse_list(slopes).map_err(|e| CliError::Usage(e.to_string()))?;
    if slopes.len() != p.len() {
        return Err(CliError::Usage(format!("{} slopes given for {} components", slopes.len(), p.len())));
    }
    p.with_slopes(slopes).map_err(CliError::domain)
}

fn linking_json(p: &SurgeryPresentation) -> Value {
    Value::Array((0..p.len()).map(|i| Value::Array((0..p.len()).map(|j| json_int(p.lk(i, j))).collect())).collect())
}

fn linking_text(p: &SurgeryPresentation) -> String {
    let names = p.names();
    let cells: Vec<Vec<String>> =
        (0..p.len()).map(|i| (0..p.len()).map(|j| p.lk(i, j).to_string()).collect()).collect();
    let width = names.iter().map(String::len).chain(cells.iter().flatten().map(String::len)).max().unwrap_or(1);
    let mut s = format!("{:w$}", "", w = width);
    for n in names {
        let _ = write!(s, " {n:>width$}");
    }
    s.push('\n');
    for (n, row) in names.iter().zip(&cells) {
        let _ = write!(s, "{n:>width$}");
        for c in row {
            let _ = write!(s, " {c:>width$}");
        }
        s.push('\n');
    }
    s
}

fn parse(file: &Path) -> Result<Output> {
    let d = load_diagram(file)?;
    let p = SurgeryPresentation::from_diagram(label_of(file), d.clone(), vec![Slope::Unfilled; d.num_components()])
        .map_err(CliError::domain)?;
    let writhes: Vec<i64> = (0..d.num_components()).map(|i| d.writhe(i).expect("component exists")).collect();
    let pd = serialize_pd(&d.canonical());
    let mut text = format!(
        "components: {}\ncrossings: {}\nwrithe: {}\n",
        d.num_components(),
        d.num_crossings(),
        writhes.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
    );
    if d.num_components() > 1 {
        text.push_str("linking:\n");
        text.push_str(&linking_text(&p));
    }
    let _ = writeln!(text, "pd: {pd}");
    ok(
        text,
        json!({
            "schema": "surgeon.parse/1",
            "components": d.num_components(),
            "crossings": d.num_crossings(),
            "names": p.names(),
            "writhes": writhes,
            "linking": linking_json(&p),
            "pd": pd,
        }),
    )
}

fn lk(src: &LinkSource) -> Result<Output> {
    let p = load_source(src)?;
    ok(linking_text(&p), json!({"schema": "surgeon.lk/1", "names": p.names(), "linking": linking_json(&p)}))
}

fn h1(src: &LinkSource, slopes: &str) -> Result<Output> {
    let p = with_slopes(load_source(src)?, slopes)?;
    let g = p.first_homology();
    ok(
        format!("{g}\n"),
        json!({
            "schema": "surgeon.h1/1",
            "slopes": p.slopes.iter().map(Slope::to_string).collect::<Vec<_>>(),
            "h1": g,
            "display": g.to_string(),
            "homology_sphere": g.is_trivial(),
            "order": g.order().as_ref().map(json_int),
        }),
    )
}

fn parse_region(text: &str) -> Result<Vec<Strand>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let bad = || CliError::Usage(format!("bad strand {tok:?} (expected e.g. 3+ or 7-)"));
            let (arc, dir) = match tok.chars().last() {
                Some('+') => (&tok[..tok.len() - 1], 1),
                Some('-') => (&tok[..tok.len() - 1], -1),
                _ => return Err(bad()),
            };
            Ok(Strand { arc: arc.parse().map_err(|_| bad())?, dir })
        })
        .collect()
}

fn presentation_text(p: &SurgeryPresentation) -> String {
    let mut s = format!("slopes: {}\n", p.slopes.iter().map(Slope::to_string).collect::<Vec<_>>().join(","));
    s.push_str(&linking_text(p));
    if let Some(d) = &p.diagram {
        let _ = writeln!(s, "pd: {}", serialize_pd(d));
    }
    s
}

fn twist(a: &TwistArgs) -> Result<Output> {
    let mut p = with_slopes(load_source(&a.link)?, &a.slopes)?;
    let c = match a.component.parse::<usize>() {
        Ok(i) => ComponentRef::Index(i),
        Err(_) => ComponentRef::Name(a.component.clone()),
    }
    .resolve(&p)
    .map_err(CliError::domain)?;
    if a.assume_unknotted {
        p = p.with_unknotted(c);
    }
    match &a.region {
        Some(r) => p = p.with_region(TwistRegion::new(parse_region(r)?, Some(c))),
        None if p.region_for(c).is_none() => {
            p.diagram = None;
            p.twist_regions.clear();
        }
        None => {}
    }
    let q = rolfsen_twist(&p, c, a.t).map_err(CliError::domain)?;
    ok(presentation_text(&q), json!({"schema": "surgeon.twist/1", "presentation": q.to_json(true)}))
}

fn family_cmd(n: i64, range: &RangeInclusive<i64>, report: Option<&Path>, dt_dir: Option<&Path>) -> Result<Output> {
    family::asset().map_err(CliError::domain)?;
    let ms: Vec<i64> = range.clone().collect();
    let pairs: Vec<(i64, i64)> = if ms.len() == 1 {
        vec![(ms[0], ms[0])]
    } else {
        ms.iter().flat_map(|&a| ms.iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect()
    };
    let reports: Vec<family::EvidenceReport> =
        pairs.iter().map(|&(a, b)| family::same_surgery_evidence(n, a, b)).collect();
    let mut text = String::new();
    for r in &reports {
        let show = |g: &Option<crate::surgery::AbelianGroup>| g.as_ref().map_or("?".to_string(), ToString::to_string);
        let _ = writeln!(
            text,
            "n = {n}, m = {} vs {}: H1 {} / {} {}, common form {}, slopes {} {}",
            r.m1,
            r.m2,
            show(&r.h1[0]),
            show(&r.h1[1]),
            if r.h1_match { "match" } else { "differ" },
            if r.common_form_match { "reached" } else { "not reached" },
            r.slopes[0].as_deref().unwrap_or("?"),
            r.slopes[1].as_deref().unwrap_or("?"),
        );
    }
    let matched = reports.iter().filter(|r| r.h1_match && r.common_form_match && r.slope_check).count();
    let _ = writeln!(
        text,
        "{matched} of {} pairs consistent (evidence only, not a homeomorphism certificate)",
        reports.len()
    );
    let doc = json!({
        "schema": "surgeon.family/1",
        "n": n,
        "m_range": [range.start(), range.end()],
        "reports": reports,
    });
    if let Some(path) = report {
        write_file(path, &(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"))?;
    }
    if let Some(dir) = dt_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
        for &m in &ms {
            let d = family::knot_diagram(m, n).map_err(CliError::domain)?;
            write_file(&dir.join(format!("k_{n}_{m}.dt")), &(dt_export(&d).map_err(CliError::domain)? + "\n"))?;
        }
    }
    ok(text, doc)
}

fn slope(
    m: Option<i64>,
    n: Option<i64>,
    m_range: Option<RangeInclusive<i64>>,
    n_range: Option<RangeInclusive<i64>>,
) -> Result<Output> {
    let ms = m.map(|v| v..=v).or(m_range).ok_or_else(|| CliError::Usage("give --m or --m-range".into()))?;
    let ns = n.map(|v| v..=v).or(n_range).ok_or_else(|| CliError::Usage("give --n or --n-range".into()))?;
    let mut text = String::new();
    let mut cells = Vec::new();
    for m in ms {
        for n in ns.clone() {
            let induced = family::induced_surgery_slope(m, n).map_err(CliError::domain)?;
            let moves = family::slope_by_moves(m, n).map_err(CliError::domain)?;
            let h1 = family::surgered_presentation(m, n).map_err(CliError::domain)?.first_homology();
            let agree = induced == moves;
            let _ = writeln!(text, "m = {m}, n = {n}: {induced} (by moves {moves}, H1 {h1})");
            cells.push(json!({
                "m": m,
                "n": n,
                "induced": induced.to_string(),
                "by_moves": moves.to_string(),
                "agree": agree,
                "h1": h1,
            }));
        }
    }
    ok(text, json!({"schema": "surgeon.slope/1", "cells": cells}))
}

fn cable_reduce(slope: &str, cable: &str) -> Result<Output> {
    let s = Slope::parse(slope).map_err(|e| CliError::Usage(e.to_string()))?;
    let c = Cable::parse(cable).map_err(|e| CliError::Usage(e.to_string()))?;
    let r = cable_surgery_reduction(&s, c).map_err(CliError::domain)?;
    ok(
        format!("{r}\n"),
        json!({"schema": "surgeon.cable-reduce/1", "slope": s.to_string(), "cable": [c.a, c.b], "companion_slope": r.to_string()}),
    )
}

/// Cached Alexander data of one knot diagram.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct AlexValue {
    crossings: usize,
    determinant: String,
    alexander: LaurentPoly,
}

fn alex_value(d: &LinkDiagram, cache: &mut Cache) -> Result<AlexValue> {
    let key = cache_key("alexander", &serialize_pd(&d.canonical()));
    cache.get_or_compute(&key, || {
        let p = alexander_polynomial(d).map_err(CliError::domain)?;
        let det = determinant(d).map_err(CliError::domain)?;
        Ok(AlexValue { crossings: d.num_crossings(), determinant: det.to_string(), alexander: p })
    })
}

fn alex_json(v: &AlexValue) -> Value {
    let det: BigInt = v.determinant.parse().expect("stored determinant is an integer");
    json!({"crossings": v.crossings, "determinant": json_int(&det), "alexander": v.alexander, "display": v.alexander.to_string()})
}

fn alex(a: &AlexArgs, cache: &mut Cache) -> Result<Output> {
    if let Some(path) = &a.link {
        let v = alex_value(&load_diagram(path)?, cache)?;
        let mut doc = alex_json(&v);
        doc["schema"] = json!("surgeon.alex/1");
        return ok(format!("alexander: {}\ndeterminant: {}\n", v.alexander, v.determinant), doc);
    }
    let (ms, ns) = match (a.m, a.n, &a.m_range, &a.n_range) {
        (Some(m), Some(n), _, _) => (m..=m, n..=n),
        (_, _, Some(mr), Some(nr)) => (mr.clone(), nr.clone()),
        _ => return Err(CliError::Usage("give --link, --m and --n, or --m-range and --n-range".into())),
    };
    let mut members = Vec::new();
    let mut text = String::new();
    let mut by_n: BTreeMap<i64, Vec<(i64, LaurentPoly)>> = BTreeMap::new();
    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(["m", "n", "determinant", "lowest_exponent", "coefficients"]).expect("in-memory CSV");
    for n in ns {
        for m in ms.clone() {
            let d = family::knot_diagram(m, n).map_err(CliError::domain)?;
            let v = alex_value(&d, cache)?;
            let _ = writeln!(
                text,
                "m = {m}, n = {n}: crossings {}, determinant {}, alexander {}",
                v.crossings, v.determinant, v.alexander
            );
            let coeffs: Vec<String> = v.alexander.coefficient_list().iter().map(ToString::to_string).collect();
            let low = v.alexander.min_exp().unwrap_or(0).to_string();
            csv.write_record([m.to_string(), n.to_string(), v.determinant.clone(), low, coeffs.join(" ")])
                .expect("in-memory CSV");
            let mut j = alex_json(&v);
            j["m"] = json!(m);
            j["n"] = json!(n);
            members.push(j);
            by_n.entry(n).or_default().push((m, v.alexander));
        }
    }
    let mut separation = Vec::new();
    for (n, polys) in &by_n {
        let mut distinct: Vec<&LaurentPoly> = polys.iter().map(|(_, p)| p).collect();
        distinct.sort_by_key(|p| p.to_string());
        distinct.dedup();
        let separated = distinct.len() == polys.len();
        let _ = writeln!(
            text,
            "n = {n}: {} members, {} distinct Alexander polynomials{}",
            polys.len(),
            distinct.len(),
            if separated { "" } else { " (not separated by Alexander data)" }
        );
        separation.push(json!({"n": n, "members": polys.len(), "distinct": distinct.len(), "separated": separated}));
    }
    if let Some(path) = &a.csv {
        let bytes = csv.into_inner().expect("in-memory CSV");
        write_file(path, &String::from_utf8(bytes).expect("CSV is UTF-8"))?;
    }
    ok(text, json!({"schema": "surgeon.alex/1", "members": members, "separation": separation}))
}

fn render(d: &LinkDiagram, f: Format) -> Result<String> {
    Ok(match f {
        Format::Dt => dt_export(d).map_err(CliError::domain)?,
        Format::Pd => serialize_pd(d),
        Format::Json => serde_json::to_string(&d.to_json()).expect("diagram serializes"),
    })
}

fn export(a: &ExportArgs) -> Result<Output> {
    if a.asset {
        let text = family::asset::render_asset().map_err(CliError::domain)?;
        if let Some(path) = &a.out {
            write_file(path, &text)?;
        }
        let path = a.out.as_ref().map(|p| p.display().to_string());
        let shown = if a.out.is_some() { String::new() } else { text.clone() };
        return ok(
            shown,
            json!({"schema": "surgeon.export/1", "items": [{"name": "L", "format": "pd", "content": text, "path": path}]}),
        );
    }
    let (ms, ns) = match (a.m, a.n, &a.m_range, &a.n_range) {
        (Some(m), Some(n), _, _) => (m..=m, n..=n),
        (_, _, Some(mr), Some(nr)) => (mr.clone(), nr.clone()),
        _ => return Err(CliError::Usage("give --asset, --m and --n, or --m-range and --n-range".into())),
    };
    let single = a.m.is_some();
    let ext = match a.format {
        Format::Dt => "dt",
        Format::Pd => "pd",
        Format::Json => "json",
    };
    if let (false, Some(dir)) = (single, &a.out) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
    }
    let mut items = Vec::new();
    let mut text = String::new();
    for n in ns {
        for m in ms.clone() {
            let d = family::knot_diagram(m, n).map_err(CliError::domain)?;
            let content = render(&d, a.format)?;
            let name = format!("k_{n}_{m}");
            let path: Option<PathBuf> =
                a.out.as_ref().map(|o| if single { o.clone() } else { o.join(format!("{name}.{ext}")) });
            match &path {
                Some(p) => write_file(p, &format!("{content}\n"))?,
                None if single => {
                    let _ = writeln!(text, "{content}");
                }
                None => {
                    let _ = writeln!(text, "{name}: {content}");
                }
            }
            items.push(
                json!({"name": name, "format": ext, "content": content, "path": path.map(|p| p.display().to_string())}),
            );
        }
    }
    ok(text, json!({"schema": "surgeon.export/1", "items": items}))
}

fn verify_cmd() -> Output {
    let results = verify::run_all();
    let text: String = results.iter().map(|r| format!("{r}\n")).collect();
    let failed = results.iter().filter(|r| !r.pass).count();
    Output {
        text: text + &format!("{} of {} criteria passed\n", results.len() - failed, results.len()),
        json: json!({"schema": "surgeon.verify/1", "criteria": results}),
        code: i32::from(failed > 0),
    }
}
