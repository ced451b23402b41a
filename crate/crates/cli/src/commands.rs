use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use wachspress::adjoint::{adjoint_kernel_dimension, adjoint_kernel_with, adjoint_via_dual};
use wachspress::exactalg::{format_rational, format_vector, parse_point, MultiPoly};
use wachspress::fixtures;
use wachspress::invariants3d::{
    invariant_report, irred_filter, residual_identity_with, shipped_types, table1_reconcile, CombinatorialType3, TABLE1,
};
use wachspress::moments::{moment_table, verify_generating_identity};
use wachspress::polytope::Polytope;
use wachspress::report::Check;
use wachspress::residual::residual_arrangement;
use wachspress::segre::{minimal_elements, newton_region, segre_expr_of, RegionVertex};
use wachspress::wachspress::{
    adjoint_basis_with, adjoint_image_span, check_barycentric, check_base_locus_with, check_diagonal, check_inverse,
    AdjointParametrization, Wachspress,
};
use wachspress::{Error, Result};

use crate::report::RunReport;
use crate::{plot as svg, Method, Suite};

/// A JSON file, the same path with `.json` appended, a file in the fixture
/// directory, or a built-in fixture name.
pub fn load(spec: &str) -> Result<(String, Polytope)> {
    let path = Path::new(spec);
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(spec)
        .to_owned();
    let with_ext = PathBuf::from(format!("{spec}.json"));
    for candidate in [path.to_path_buf(), with_ext, fixtures::fixture_dir().join(format!("{name}.json"))] {
        if candidate.is_file() {
            return Ok((name, Polytope::read_json(&candidate)?));
        }
    }
    if fixtures::ALL_FIXTURES.contains(&name.as_str()) {
        return Ok((name.clone(), fixtures::build(&name)?));
    }
    Err(Error::Invalid(format!("no polytope file or fixture named {spec:?}")))
}

fn homogeneous_names(p: &Polytope) -> Vec<String> {
    MultiPoly::variable_names("x", p.dim() + 1, 0)
}

pub fn adjoint(rep: &mut RunReport, spec: &str, method: Method) -> Result<()> {
    let (name, p) = load(spec)?;
    let names = homogeneous_names(&p);
    let degree = p.facet_count() as i64 - p.dim() as i64 - 1;
    let mut result = json!({
        "polytope": name,
        "dim": p.dim(),
        "facets": p.facet_count(),
        "vertices": p.vertex_count(),
        "degree": degree,
    });
    rep.lap("load");
    let warren = match method {
        Method::Warren | Method::Both => {
            let a = adjoint_via_dual(&p)?;
            result["warren"] = Value::from(a.display_with(&names));
            rep.lap("warren");
            Some(a)
        }
        Method::Kernel => None,
    };
    if matches!(method, Method::Kernel | Method::Both) {
        let r = residual_arrangement(&p);
        if !r.simple {
            return Err(Error::Invalid(
                "the kernel method needs a simple facet hyperplane arrangement".into(),
            ));
        }
        let dim = adjoint_kernel_dimension(&p, &r);
        let mut unique = Check::new(
            "unique-adjoint",
            "exactly one form of degree d-n-1 (up to scalar) vanishes on the residual arrangement",
        );
        unique.require(dim == 1, || format!("kernel dimension {dim}"));
        rep.check(unique);
        if dim == 1 {
            let k = adjoint_kernel_with(&p, &r)?;
            result["kernel"] = Value::from(k.display_with(&names));
            if let Some(w) = &warren {
                let mut agree = Check::new(
                    "adjoint-methods-agree",
                    "the dual's triangulation adjoint is proportional to the unique residual adjoint",
                );
                agree.require(w.is_proportional(&k), || "the two adjoints are not proportional".into());
                rep.check(agree);
            }
        }
        rep.lap("kernel");
    }
    rep.result(result);
    Ok(())
}

pub fn residual(rep: &mut RunReport, spec: &str) -> Result<()> {
    let (name, p) = load(spec)?;
    let r = residual_arrangement(&p);
    let mut result = r.to_json();
    result["polytope"] = Value::from(name);
    result["codims"] = json!(r.component_codims());
    if p.dim() == 3 && r.simple && p.is_simple_polytope() {
        rep.check(residual_identity_with(&p, &r)?);
    }
    rep.lap("residual");
    rep.result(result);
    Ok(())
}

pub fn coords(rep: &mut RunReport, spec: &str, point: &str) -> Result<()> {
    let (name, p) = load(spec)?;
    let t = parse_point(point)?;
    if t.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: t.len(),
        });
    }
    let w = Wachspress::new(&p)?;
    let beta = w.coords_general(&t)?;
    rep.result(json!({
        "polytope": name,
        "point": t.iter().map(format_rational).collect::<Vec<_>>(),
        "vertices": p.vertices().iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
        "coordinates": beta.iter().map(format_rational).collect::<Vec<_>>(),
    }));
    Ok(())
}

pub fn map_check(rep: &mut RunReport, spec: &str, suite: Suite, seed: u64) -> Result<()> {
    rep.seed(seed);
    let (name, p) = load(spec)?;
    let r = residual_arrangement(&p);
    if !r.simple {
        return Err(Error::NonSimpleArrangement);
    }
    let run = |s: Suite| suite == Suite::All || suite == s;
    if run(Suite::Barycentric) {
        let w = Wachspress::new(&p)?;
        rep.checks(check_barycentric(&p, &w, 100, seed));
        rep.check(check_diagonal(&p));
        rep.lap("barycentric");
    }
    if run(Suite::Baselocus) {
        rep.checks(check_base_locus_with(&p, &r, 20, seed + 1));
        rep.lap("baselocus");
    }
    let needs_basis = run(Suite::Inverse) || run(Suite::Dim);
    let basis = if needs_basis { Some(adjoint_basis_with(&p, &r)?) } else { None };
    if run(Suite::Inverse) {
        rep.check(check_inverse(&p, basis.as_ref().unwrap(), 50, seed + 2));
        rep.lap("inverse");
    }
    let mut span = Value::Null;
    if run(Suite::Dim) {
        let basis = basis.as_ref().unwrap();
        match AdjointParametrization::for_adjoint(&basis.adjoint, &r) {
            Ok(param) => {
                let expected = p.vertex_count() as isize - p.dim() as isize - 2;
                let got = adjoint_image_span(&p, &param, seed + 3)?;
                let mut c = Check::new(
                    "adjoint-image-span",
                    "the map image of the adjoint spans a space of dimension N-n-2",
                );
                c.require(got == expected, || format!("span dimension {got}, expected {expected}"));
                rep.check(c);
                span = Value::from(got);
            }
            Err(e) if suite == Suite::Dim => return Err(e),
            Err(_) => {}
        }
        rep.lap("dim");
    }
    rep.result(json!({ "polytope": name, "suite": format!("{suite:?}").to_lowercase(), "adjoint_image_span": span }));
    Ok(())
}

fn parse_points(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pt| {
            pt.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("exponent {x:?} in {pt:?}")))
                })
                .collect()
        })
        .collect()
}

pub fn segre(rep: &mut RunReport, points: &str) -> Result<()> {
    let a = parse_points(points)?;
    let region = newton_region(&a)?;
    let expr = segre_expr_of(&region);
    let vertex = |v: &RegionVertex| match v {
        RegionVertex::Finite(i) => Value::from(format_vector(&region.finite_vertices[*i])),
        RegionVertex::Infinite(k) => Value::from(format!("inf*e{}", k + 1)),
    };
    rep.result(json!({
        "minimal_points": minimal_elements(&a),
        "region_vertices": region.vertices().iter().map(vertex).collect::<Vec<_>>(),
        "adjoint": expr.adjoint_text(),
        "numerator": expr.symbolic_numerator(),
        "numerator_expanded": expr.numerator_text(),
        "denominator": expr.denominator_text(),
    }));
    Ok(())
}

pub fn moments(rep: &mut RunReport, spec: &str, max_degree: u32, verify: bool) -> Result<()> {
    let (name, p) = load(spec)?;
    let table = moment_table(&p, max_degree);
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|(m, v)| json!({ "index": m.exponents(), "value": format_rational(v) }))
        .collect();
    rep.lap("moments");
    if verify {
        rep.check(verify_generating_identity(&p, max_degree)?);
        rep.lap("identity");
    }
    rep.result(json!({
        "polytope": name,
        "volume": format_rational(&p.volume()),
        "max_degree": max_degree,
        "moments": entries,
    }));
    Ok(())
}

pub fn invariants3d(rep: &mut RunReport, spec: &str, gamma: bool) -> Result<()> {
    let (name, p) = load(spec)?;
    let ct = CombinatorialType3::of(&p)?;
    let (st, inv) = invariant_report(&p, gamma)?;
    rep.lap("invariants");
    let r = residual_arrangement(&p);
    rep.check(residual_identity_with(&p, &r)?);
    let verdict = irred_filter(&ct);
    rep.result(json!({
        "polytope": name,
        "type": ct.label(),
        "stats": st,
        "invariants": inv,
        "irreducibility_filter": verdict,
    }));
    Ok(())
}

pub fn table1(rep: &mut RunReport, gamma: bool) -> Result<()> {
    let polys: Vec<(String, Polytope)> = fixtures::TABLE1_FIXTURES
        .iter()
        .map(|n| load(n))
        .collect::<Result<_>>()?;
    rep.checks(table1_reconcile(&polys, gamma)?);
    rep.lap("reconcile");
    let types = shipped_types();
    let admitted: Vec<String> = types.iter().filter(|t| irred_filter(t).passes).map(|t| t.label()).collect();
    let rejected: Vec<String> = types.iter().filter(|t| !irred_filter(t).passes).map(|t| t.label()).collect();
    let table: Vec<String> = TABLE1
        .iter()
        .map(|r| CombinatorialType3::new(r.facet_sizes.to_vec()).map(|t| t.label()))
        .collect::<Result<_>>()?;
    let mut filter = Check::new(
        "irreducibility-filter",
        "the facet filter admits exactly the table types among the shipped types",
    );
    filter.require(admitted == table, || format!("admitted {admitted:?}"));
    rep.check(filter);
    rep.result(json!({ "admitted": admitted, "rejected": rejected }));
    Ok(())
}

pub fn plot(rep: &mut RunReport, spec: &str, out: &Path) -> Result<()> {
    let (name, p) = load(spec)?;
    if p.dim() != 2 {
        return Err(Error::Invalid("plotting needs a polygon".into()));
    }
    let text = svg::render(&p)?;
    std::fs::write(out, text)?;
    rep.result(json!({ "polytope": name, "svg": out.display().to_string() }));
    Ok(())
}

pub fn fixtures(rep: &mut RunReport, out: Option<PathBuf>) -> Result<()> {
    let dir = out.unwrap_or_else(fixtures::fixture_dir);
    let written = fixtures::write_all(&dir)?;
    let names: Vec<String> = written
        .iter()
        .filter_map(|p| p.file_name().and_then(|n| n.to_str()).map(str::to_owned))
        .collect();
    rep.result(json!({ "written": names }));
    Ok(())
}
