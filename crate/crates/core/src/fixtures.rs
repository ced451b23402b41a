//! Built-in test polytopes.
//!
//! Each 3-dimensional type is written as integer inequalities and then
//! perturbed by seeded integer noise on the scaled forms until the
//! arrangement of facet planes is simple and the combinatorial type is kept.

use std::path::{Path, PathBuf};

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{int, ivec, primitive_keep_sign, QVector, Rational};
use crate::polytope::Polytope;
use crate::sampling::Sampler;

pub const FIXTURE_ENV: &str = "WACHSPRESS_FIXTURES";

/// The nine realizations of the simple types admitted by the irreducibility
/// filter, ordered by facet count then facet sizes.
pub const TABLE1_FIXTURES: [&str; 9] = [
    "tetrahedron",
    "triangular-prism",
    "cube-perturbed",
    "prism-vertex-truncated",
    "cube-vertex-truncated",
    "pentagonal-prism",
    "prism-edge-truncated",
    "hexagonal-prism",
    "cube-two-edges-truncated",
];

pub const POLYGON_FIXTURES: [&str; 6] = ["triangle", "quadrilateral", "pentagon", "hexagon", "heptagon", "octagon"];

pub const ALL_FIXTURES: [&str; 25] = [
    "triangle",
    "quadrilateral",
    "pentagon",
    "hexagon",
    "heptagon",
    "octagon",
    "unit-square",
    "centered-square",
    "unit-interval",
    "tetrahedron",
    "triangular-prism",
    "cube-perturbed",
    "prism-vertex-truncated",
    "cube-vertex-truncated",
    "pentagonal-prism",
    "prism-edge-truncated",
    "hexagonal-prism",
    "cube-two-edges-truncated",
    "cube-regular",
    "octahedron",
    "bipyramid",
    "tesseract-perturbed",
    "heptagonal-prism",
    "cube-two-vertices-truncated",
    "pentagonal-prism-vertex-truncated",
];

fn forms(rows: &[&[i64]]) -> Vec<QVector> {
    rows.iter().map(|r| ivec(r)).collect()
}

fn box_forms(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut f = vec![0; n + 1];
            f[0] = 1;
            f[i + 1] = s;
            out.push(f);
        }
    }
    out
}

fn cube_forms() -> Vec<QVector> {
    box_forms(3).iter().map(|r| ivec(r)).collect()
}

fn prism_forms() -> Vec<QVector> {
    forms(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, -1, -1, 0], &[1, 0, 0, 1], &[1, 0, 0, -1]])
}

/// Rational points on the unit circle at twelve roughly even angles.
fn circle_point(k: usize) -> QVector {
    // t = tan(angle / 2); the point is ((1 - t²)/(1 + t²), 2t/(1 + t²))
    const T: [(i64, i64); 12] = [(0, 1), (1, 5), (1, 2), (1, 1), (2, 1), (5, 1), (0, 0), (-5, 1), (-2, 1), (-1, 1), (-1, 2), (-1, 5)];
    let (p, q) = T[k];
    if q == 0 {
        return ivec(&[-1, 0]);
    }
    let t = Rational::new(p.into(), q.into());
    let one = Rational::one();
    let den = &one + &t * &t;
    vec![(&one - &t * &t) / &den, (int(2) * &t) / &den]
}

/// Convex `d`-gon with vertices on the unit circle, `3 <= d <= 12`.
pub fn circle_polygon(d: usize) -> Result<Polytope> {
    if !(3..=12).contains(&d) {
        return Err(Error::Invalid(format!("polygon size {d} outside 3..=12")));
    }
    let vertices = (0..d).map(|k| circle_point(12 * k / d)).collect();
    Polytope::from_vertices(vertices)
}

fn same_type(a: &Polytope, b: &Polytope) -> bool {
    let mut sa = a.facet_sizes();
    let mut sb = b.facet_sizes();
    sa.sort_unstable();
    sb.sort_unstable();
    a.vertex_count() == b.vertex_count() && sa == sb
}

/// Scales the primitive facet forms by `scale` and adds integer noise in
/// `{-1, 0, 1}` to every coefficient. Fails unless the result has the same
/// facet count, vertex count and facet sizes.
pub fn perturb(p: &Polytope, scale: i64, seed: u64) -> Result<Polytope> {
    let mut s = Sampler::new(seed);
    let scale = int(scale);
    let noisy: Vec<QVector> = p
        .facets()
        .iter()
        .map(|f| {
            primitive_keep_sign(f)
                .iter()
                .map(|c| c * &scale + int(s.index(3) as i64 - 1))
                .collect()
        })
        .collect();
    let q = Polytope::from_inequalities(&noisy)?;
    if q.facet_count() != p.facet_count() || !same_type(p, &q) {
        return Err(Error::Degenerate("perturbation changed the combinatorial type".into()));
    }
    Ok(q)
}

/// First seeded perturbation (starting at `seed`) that keeps the type and
/// has a simple facet arrangement.
pub fn perturb_to_simple(p: &Polytope, scale: i64, seed: u64) -> Result<Polytope> {
    for s in seed..seed + 200 {
        if let Ok(q) = perturb(p, scale, s) {
            if q.is_simple_arrangement() {
                return Ok(q);
            }
        }
    }
    Err(Error::NonSimpleArrangement)
}

fn prism_over(polygon: &Polytope) -> Result<Polytope> {
    let mut fs: Vec<QVector> = polygon
        .facets()
        .iter()
        .map(|f| vec![f[0].clone(), f[1].clone(), f[2].clone(), int(0)])
        .collect();
    fs.push(ivec(&[1, 0, 0, 1]));
    fs.push(ivec(&[1, 0, 0, -1]));
    Polytope::from_inequalities(&fs)
}

/// Unperturbed integer realization of a named type.
fn base(name: &str) -> Result<Polytope> {
    let with = |mut fs: Vec<QVector>, extra: &[&[i64]]| {
        fs.extend(forms(extra));
        Polytope::from_inequalities(&fs)
    };
    match name {
        "tetrahedron" => Polytope::from_inequalities(&forms(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, -1, -1, -1]])),
        "triangular-prism" => Polytope::from_inequalities(&prism_forms()),
        "cube-perturbed" | "cube-regular" => Polytope::from_inequalities(&cube_forms()),
        "prism-vertex-truncated" => with(prism_forms(), &[&[5, 2, 2, 2]]),
        "prism-edge-truncated" => with(prism_forms(), &[&[5, 2, 2, 2], &[5, 2, 2, -2]]),
        "cube-vertex-truncated" => with(cube_forms(), &[&[5, -2, -2, -2]]),
        "cube-two-vertices-truncated" => with(cube_forms(), &[&[5, -2, -2, -2], &[5, 2, 2, 2]]),
        "pentagonal-prism" => with(cube_forms(), &[&[3, -2, -2, 0]]),
        "pentagonal-prism-vertex-truncated" => with(cube_forms(), &[&[3, -2, -2, 0], &[5, 2, 2, 2]]),
        "cube-two-edges-truncated" => with(cube_forms(), &[&[3, 2, 2, 0], &[3, 0, -2, -2]]),
        "hexagonal-prism" => prism_over(&circle_polygon(6)?),
        "heptagonal-prism" => prism_over(&circle_polygon(7)?),
        "tesseract-perturbed" => Polytope::from_inequalities(&box_forms(4).iter().map(|r| ivec(r)).collect::<Vec<_>>()),
        _ => Err(Error::Invalid(format!("unknown fixture {name}"))),
    }
}

/// Builds a fixture by name, deterministically.
pub fn build(name: &str) -> Result<Polytope> {
    match name {
        "triangle" => circle_polygon(3),
        "quadrilateral" => circle_polygon(4).and_then(|p| perturb_to_simple(&p, 8, 1)),
        "pentagon" => circle_polygon(5),
        "hexagon" => circle_polygon(6).and_then(|p| perturb_to_simple(&p, 8, 1)),
        "heptagon" => circle_polygon(7),
        "octagon" => circle_polygon(8).and_then(|p| perturb_to_simple(&p, 8, 1)),
        "unit-square" => Polytope::from_vertices(vec![ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[0, 1])]),
        "centered-square" => {
            let h = Rational::new(1.into(), 2.into());
            let m = -h.clone();
            Polytope::from_vertices(vec![
                vec![m.clone(), m.clone()],
                vec![h.clone(), m.clone()],
                vec![h.clone(), h.clone()],
                vec![m, h],
            ])
        }
        "unit-interval" => Polytope::from_vertices(vec![ivec(&[0]), ivec(&[1])]),
        "cube-regular" => base(name),
        "octahedron" => {
            let mut vs = Vec::new();
            for i in 0..3 {
                for s in [1, -1] {
                    let mut v = ivec(&[0, 0, 0]);
                    v[i] = int(s);
                    vs.push(v);
                }
            }
            Polytope::from_vertices(vs)
        }
        "bipyramid" => Polytope::from_vertices(vec![
            ivec(&[2, 0, 0]),
            ivec(&[-1, 1, 0]),
            ivec(&[-1, -2, 0]),
            ivec(&[0, 0, 2]),
            ivec(&[0, 0, -3]),
        ]),
        "tetrahedron" => base(name),
        _ => perturb_to_simple(&base(name)?, 16, 1),
    }
}

/// Fixture directory: `$WACHSPRESS_FIXTURES` or the repository's `fixtures/`.
pub fn fixture_dir() -> PathBuf {
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

/// Loads `<fixture_dir>/<name>.json`.
pub fn load(name: &str) -> Result<Polytope> {
    Polytope::read_json(fixture_dir().join(format!("{name}.json")))
}

pub const TYPES_FILE: &str = "combinatorial_types.json";

/// JSON text of the shipped combinatorial type catalog.
pub fn types_json() -> String {
    let types = crate::invariants3d::shipped_types();
    serde_json::to_string_pretty(&types).expect("types serialize") + "\n"
}

/// Writes every fixture and the type catalog into `dir`.
pub fn write_all(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for name in ALL_FIXTURES {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, build(name)?.to_json_string(Some(name)) + "\n")?;
        written.push(path);
    }
    let path = dir.join(TYPES_FILE);
    std::fs::write(&path, types_json())?;
    written.push(path);
    Ok(written)
}
