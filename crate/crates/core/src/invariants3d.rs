//! Degree and genus formulas for simple 3-polytopes, the residual count
//! identities, the linear system of the strict transform `D̄`, and the
//! facet filter that singles out irreducible systems.

use std::collections::BTreeMap;

use num_integer::binomial;
use serde::Serialize;

use crate::adjoint::vanishing_system;
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::report::Check;
use crate::residual::{residual_arrangement, stats3d, ProjSubspace, ResidualArrangement, Stats3d};

/// Facet count and facet sizes of a simple 3-polytope, sizes sorted
/// decreasingly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CombinatorialType3 {
    pub d: usize,
    pub facet_sizes: Vec<usize>,
}

impl CombinatorialType3 {
    pub fn new(mut facet_sizes: Vec<usize>) -> Result<Self> {
        let d = facet_sizes.len();
        if d < 4 {
            return Err(Error::Invalid(format!("{d} facets, a 3-polytope has at least 4")));
        }
        if facet_sizes.iter().any(|&e| e < 3) {
            return Err(Error::Invalid("facet with fewer than 3 vertices".into()));
        }
        let total: usize = facet_sizes.iter().sum();
        if total != 6 * d - 12 {
            return Err(Error::Invalid(format!(
                "facet sizes sum to {total}, a simple 3-polytope with {d} facets needs {}",
                6 * d - 12
            )));
        }
        facet_sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { d, facet_sizes })
    }

    pub fn of(p: &Polytope) -> Result<Self> {
        if p.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: p.dim(),
            });
        }
        if !p.is_simple_polytope() {
            return Err(Error::NotSimple("some vertex lies on more than 3 facets".into()));
        }
        Self::new(p.facet_sizes())
    }

    /// Parses `"5 5 4 4 3 3"` or `"554433"` (sizes up to 9 when unspaced).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let sizes: std::result::Result<Vec<usize>, _> = if t.contains(|c: char| c.is_whitespace() || c == ',') {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(str::parse)
                .collect()
        } else {
            t.chars().map(|c| c.to_string().parse()).collect()
        };
        Self::new(sizes.map_err(|_| Error::Parse(format!("facet sizes {text:?}")))?)
    }

    pub fn label(&self) -> String {
        self.facet_sizes.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn vertex_count(&self) -> usize {
        2 * (self.d - 2)
    }

    pub fn edge_count(&self) -> usize {
        3 * (self.d - 2)
    }

    fn is(&self, sizes: &[usize]) -> bool {
        self.facet_sizes == sizes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AdjointImage {
    /// `d = 4`: the adjoint is a nonzero constant.
    Empty,
    /// Prism and cube.
    Curve,
    Surface { degree: i64, genus: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Degree and sectional genus of the Wachspress variety.
    pub wachspress: (i64, i64),
    pub adjoint_image: AdjointImage,
    pub d_bar: (i64, i64),
    pub dim_gamma: Option<i64>,
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Violation(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}

fn agree(what: &str, x: i64, y: i64) -> Result<i64> {
    if x != y {
        return Err(Error::Violation(format!("the two expressions for {what} give {x} and {y}")));
    }
    Ok(x)
}

/// Evaluates both expressions for each degree and the genus formulas.
/// Fails with `Violation` when a pair disagrees.
pub fn prop_formulas(d: usize, a: usize, b: usize, c: usize, facet_sizes: &[usize]) -> Result<InvariantReport> {
    if d < 4 {
        return Err(Error::Invalid(format!("d = {d} < 4")));
    }
    if facet_sizes.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: facet_sizes.len(),
        });
    }
    let ct = CombinatorialType3::new(facet_sizes.to_vec())?;
    let (di, ai, bi, ci) = (d as i64, a as i64, b as i64, c as i64);
    let s = bi + 2 * ci;
    let dm3 = di - 3;

    let deg_w = agree(
        "deg W",
        2 * s - ai - exact_div(dm3 * (di * di - 11 * di + 26), 2)?,
        s + 1 - exact_div(dm3 * (di - 4) * (di - 11), 6)?,
    )?;
    let g_w = s + 1 + exact_div(dm3 * (di - 6), 2)?;

    let deg_a = agree(
        "deg Ā",
        2 * s - ai - exact_div(dm3 * (di - 4) * (di - 6), 2)?,
        s + 1 - exact_div(dm3 * (di * di - 12 * di + 38), 6)?,
    )?;
    let g_a = s + 1 - exact_div(dm3 * (di - 4), 2)?;
    let adjoint_image = if d == 4 {
        AdjointImage::Empty
    } else if ct.is(&[4, 4, 4, 3, 3]) || ct.is(&[4, 4, 4, 4, 4, 4]) {
        AdjointImage::Curve
    } else {
        AdjointImage::Surface {
            degree: deg_a,
            genus: g_a,
        }
    };

    let sum_binom = |k: i64| -> i64 { facet_sizes.iter().map(|&e| binomial((e as i64 - k).max(0), 2)).sum() };
    let deg_dbar = agree(
        "deg D̄",
        sum_binom(2) + di,
        4 * bi + 9 * ci - 3 * ai - exact_div(dm3 * (3 * di * di - 30 * di + 64), 2)?,
    )?;
    let g_dbar = agree(
        "g(D̄)",
        sum_binom(3) + 2 * di - 5,
        1 + 4 * bi + 9 * ci - 3 * ai - exact_div(dm3 * (3 * di * di - 30 * di + 68), 2)?,
    )?;

    Ok(InvariantReport {
        d,
        a,
        b,
        c,
        wachspress: (deg_w, g_w),
        adjoint_image,
        d_bar: (deg_dbar, g_dbar),
        dim_gamma: None,
    })
}

/// `line_count = C(d-3, 2)` and `b + 2c - a = (d-2)(d-4)(d-6)/3`.
pub fn residual_identity(p: &Polytope) -> Result<Check> {
    residual_identity_with(p, &residual_arrangement(p))
}

pub fn residual_identity_with(p: &Polytope, r: &ResidualArrangement) -> Result<Check> {
    if !r.simple {
        return Err(Error::NonSimpleArrangement);
    }
    let st = stats3d(r, p)?;
    let d = p.facet_count() as i64;
    let mut check = Check::new("residual-counts", "the residual arrangement has C(d-3,2) lines and b+2c-a = (d-2)(d-4)(d-6)/3");
    let lines = binomial(d - 3, 2);
    check.require(st.line_count as i64 == lines, || format!("{} lines, expected {lines}", st.line_count));
    let lhs = st.b as i64 + 2 * st.c as i64 - st.a as i64;
    let rhs = (d - 2) * (d - 4) * (d - 6) / 3;
    check.require(lhs == rhs, || format!("b+2c-a = {lhs}, expected {rhs}"));
    Ok(check.with_detail(format!("a={} b={} c={} lines={}", st.a, st.b, st.c, st.line_count)))
}

/// Members of the residual arrangement with the multiplicities imposed on
/// forms of degree `d`: 3 at isolated points, 2 along lines, 3 at points
/// where three or more lines meet.
fn gamma_conditions(r: &ResidualArrangement) -> (Vec<&ProjSubspace>, Vec<u32>) {
    let lines: Vec<&ProjSubspace> = r.components().filter(|m| m.codim == 2).collect();
    let mut members = Vec::new();
    let mut mult = Vec::new();
    for l in &lines {
        members.push(*l);
        mult.push(2);
    }
    for (i, m) in r.all_members.iter().enumerate() {
        if m.codim != 3 {
            continue;
        }
        let through = lines.iter().filter(|l| m.is_contained_in(l)).count();
        if r.components.contains(&i) || through >= 3 {
            members.push(m);
            mult.push(3);
        }
    }
    (members, mult)
}

/// Projective dimension of the degree-`d` forms with the prescribed
/// multiplicities along the residual arrangement (`-1` if there are none).
pub fn gamma_dimension(p: &Polytope) -> Result<i64> {
    gamma_dimension_with(p, &residual_arrangement(p))
}

pub fn gamma_dimension_with(p: &Polytope, r: &ResidualArrangement) -> Result<i64> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: p.dim(),
        });
    }
    let (members, mult) = gamma_conditions(r);
    let system = vanishing_system(&members, 4, p.facet_count() as u32, &mult);
    Ok(system.kernel().1.len() as i64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrredVerdict {
    pub passes: bool,
    /// Indices into the (sorted) facet sizes that force a fixed plane.
    pub forced_facets: Vec<usize>,
    pub reasons: Vec<String>,
}

/// Facet size multisets with 7 facets whose largest facet plane carries
/// three non-collinear isolated residual points.
const D7_HEXAGON_REJECTS: [[usize; 7]; 2] = [[6, 5, 5, 5, 3, 3, 3], [6, 5, 5, 4, 4, 3, 3]];

/// Decides whether the system of `D̄` is free of fixed planes.
///
/// A facet with `e` vertices forces its plane when `3 < e < d - 4`, or
/// `e = 3 < d - 5`. Two further families are rejected: 8 facets with a
/// triangle, and the two 7-facet types with a hexagon and isolated points
/// spanning its plane.
pub fn irred_filter(ct: &CombinatorialType3) -> IrredVerdict {
    let d = ct.d as i64;
    let mut forced = Vec::new();
    let mut reasons = Vec::new();
    for (i, &e) in ct.facet_sizes.iter().enumerate() {
        let e = e as i64;
        if (3 < e && e < d - 4) || (e == 3 && 3 < d - 5) {
            forced.push(i);
        }
    }
    if !forced.is_empty() {
        reasons.push(format!("{} facet(s) satisfy the size inequality for d = {d}", forced.len()));
    }
    if ct.d == 8 && ct.facet_sizes.contains(&3) {
        for (i, &e) in ct.facet_sizes.iter().enumerate() {
            if e == 3 && !forced.contains(&i) {
                forced.push(i);
            }
        }
        reasons.push("triangular facet with 8 facets".into());
    }
    if D7_HEXAGON_REJECTS.iter().any(|s| ct.is(s)) {
        forced.push(0);
        reasons.push("hexagonal facet plane through three isolated points".into());
    }
    forced.sort_unstable();
    forced.dedup();
    IrredVerdict {
        passes: forced.is_empty() && reasons.is_empty(),
        forced_facets: forced,
        reasons,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableAdjoint {
    Empty,
    Curve,
    Surface(i64, i64),
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Table1Row {
    pub facet_sizes: &'static [usize],
    pub abc: (usize, usize, usize),
    pub wachspress: (i64, i64),
    pub adjoint_image: TableAdjoint,
    pub dim_gamma: i64,
    /// Not printed for the tetrahedron.
    pub d_bar: Option<(i64, i64)>,
}

const fn row(
    facet_sizes: &'static [usize],
    abc: (usize, usize, usize),
    wachspress: (i64, i64),
    adjoint_image: TableAdjoint,
    dim_gamma: i64,
    d_bar: Option<(i64, i64)>,
) -> Table1Row {
    Table1Row {
        facet_sizes,
        abc,
        wachspress,
        adjoint_image,
        dim_gamma,
        d_bar,
    }
}

/// The nine simple types with an irreducible system, in the order of
/// [`crate::fixtures::TABLE1_FIXTURES`].
pub const TABLE1: [Table1Row; 9] = [
    row(&[3, 3, 3, 3], (0, 0, 0), (1, 0), TableAdjoint::Empty, 34, None),
    row(&[4, 4, 4, 3, 3], (1, 0, 0), (3, 0), TableAdjoint::Curve, 23, Some((8, 5))),
    row(&[4, 4, 4, 4, 4, 4], (0, 0, 0), (6, 1), TableAdjoint::Curve, 26, Some((12, 7))),
    row(&[5, 5, 4, 4, 3, 3], (2, 2, 0), (8, 3), TableAdjoint::Surface(2, 0), 17, Some((14, 9))),
    row(&[5, 5, 5, 4, 4, 4, 3], (1, 6, 0), (15, 9), TableAdjoint::Surface(5, 1), 7, Some((19, 12))),
    row(&[5, 5, 4, 4, 4, 4, 4], (0, 5, 0), (14, 8), TableAdjoint::Surface(4, 0), 12, Some((18, 11))),
    row(&[6, 6, 4, 4, 4, 3, 3], (3, 6, 1), (17, 11), TableAdjoint::Surface(7, 3), 4, Some((22, 15))),
    row(&[6, 6, 4, 4, 4, 4, 4, 4], (0, 12, 2), (27, 22), TableAdjoint::Surface(12, 7), 3, Some((26, 17))),
    row(&[5, 5, 5, 5, 4, 4, 4, 4], (0, 16, 0), (27, 22), TableAdjoint::Surface(12, 7), 1, Some((24, 15))),
];

/// Facet size multisets of every simple type for which the repository ships
/// a description, with at most 9 facets.
pub const SHIPPED_TYPES: [&[usize]; 14] = [
    &[3, 3, 3, 3],
    &[4, 4, 4, 3, 3],
    &[4, 4, 4, 4, 4, 4],
    &[5, 5, 4, 4, 3, 3],
    &[5, 5, 5, 4, 4, 4, 3],
    &[5, 5, 4, 4, 4, 4, 4],
    &[6, 6, 4, 4, 4, 3, 3],
    &[6, 5, 5, 5, 3, 3, 3],
    &[6, 5, 5, 4, 4, 3, 3],
    &[6, 6, 4, 4, 4, 4, 4, 4],
    &[5, 5, 5, 5, 4, 4, 4, 4],
    &[5, 5, 5, 5, 5, 5, 3, 3],
    &[6, 5, 5, 5, 4, 4, 4, 3],
    &[7, 7, 4, 4, 4, 4, 4, 4, 4],
];

pub fn shipped_types() -> Vec<CombinatorialType3> {
    SHIPPED_TYPES
        .iter()
        .map(|s| CombinatorialType3::new(s.to_vec()).expect("shipped types are valid"))
        .collect()
}

fn table_adjoint(a: &AdjointImage) -> TableAdjoint {
    match a {
        AdjointImage::Empty => TableAdjoint::Empty,
        AdjointImage::Curve => TableAdjoint::Curve,
        AdjointImage::Surface { degree, genus } => TableAdjoint::Surface(*degree, *genus),
    }
}

/// Every invariant of a simple 3-polytope with a simple facet arrangement.
pub fn invariant_report(p: &Polytope, with_gamma: bool) -> Result<(Stats3d, InvariantReport)> {
    let ct = CombinatorialType3::of(p)?;
    let r = residual_arrangement(p);
    if !r.simple {
        return Err(Error::NonSimpleArrangement);
    }
    let st = stats3d(&r, p)?;
    let mut rep = prop_formulas(ct.d, st.a, st.b, st.c, &ct.facet_sizes)?;
    if with_gamma {
        rep.dim_gamma = Some(gamma_dimension_with(p, &r)?);
    }
    Ok((st, rep))
}

/// Compares each polytope with its row of the table (matched by facet
/// sizes). `with_gamma` also solves the degree-`d` systems.
pub fn table1_reconcile(polytopes: &[(String, Polytope)], with_gamma: bool) -> Result<Vec<Check>> {
    let rows: BTreeMap<Vec<usize>, &Table1Row> = TABLE1.iter().map(|r| (r.facet_sizes.to_vec(), r)).collect();
    let mut checks = Vec::new();
    for (name, p) in polytopes {
        let ct = CombinatorialType3::of(p)?;
        let row = rows
            .get(&ct.facet_sizes)
            .ok_or_else(|| Error::Invalid(format!("{name}: type {} is not a table row", ct.label())))?;
        let mut check = Check::new(&format!("table-row {}", ct.label()), "computed invariants match the table of simple types");
        let r = residual_arrangement(p);
        let residual = residual_identity_with(p, &r)?;
        if let Some(w) = residual.witness.clone() {
            check.fail(format!("{name}: {w}"));
        }
        let st = stats3d(&r, p)?;
        let rep = prop_formulas(ct.d, st.a, st.b, st.c, &ct.facet_sizes);
        check.require((st.a, st.b, st.c) == row.abc, || format!("{name}: (a,b,c) = ({},{},{}), table {:?}", st.a, st.b, st.c, row.abc));
        match rep {
            Err(e) => check.fail(format!("{name}: {e}")),
            Ok(rep) => {
                check.require(rep.wachspress == row.wachspress, || format!("{name}: W = {:?}, table {:?}", rep.wachspress, row.wachspress));
                let adj = table_adjoint(&rep.adjoint_image);
                check.require(adj == row.adjoint_image, || format!("{name}: adjoint image {adj:?}, table {:?}", row.adjoint_image));
                if let Some(db) = row.d_bar {
                    check.require(rep.d_bar == db, || format!("{name}: D̄ = {:?}, table {db:?}", rep.d_bar));
                }
            }
        }
        let mut detail = format!("{name}: a={} b={} c={}", st.a, st.b, st.c);
        if with_gamma {
            let g = gamma_dimension_with(p, &r)?;
            check.require(g == row.dim_gamma, || format!("{name}: dim Γ = {g}, table {}", row.dim_gamma));
            detail.push_str(&format!(" dim_gamma={g}"));
        }
        checks.push(check.with_detail(detail));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn type_validation() {
        assert!(CombinatorialType3::new(vec![3, 3, 3, 3]).is_ok());
        assert!(CombinatorialType3::new(vec![4, 4, 4, 4, 4]).is_err());
        assert!(CombinatorialType3::new(vec![3, 3, 3]).is_err());
        let t = CombinatorialType3::parse("334455").unwrap();
        assert_eq!(t.label(), "5 5 4 4 3 3");
        assert_eq!(CombinatorialType3::parse("7 7 4 4 4 4 4 4 4").unwrap().d, 9);
        assert_eq!(t.vertex_count(), 8);
        assert_eq!(t.edge_count(), 12);
    }

    #[test]
    fn formulas_examples() {
        let cube = prop_formulas(6, 0, 0, 0, &[4; 6]).unwrap();
        assert_eq!(cube.wachspress, (6, 1));
        assert_eq!(cube.adjoint_image, AdjointImage::Curve);
        let r = prop_formulas(6, 2, 2, 0, &[5, 5, 4, 4, 3, 3]).unwrap();
        assert_eq!(r.wachspress, (8, 3));
        assert_eq!(r.adjoint_image, AdjointImage::Surface { degree: 2, genus: 0 });
        assert_eq!(r.d_bar, (14, 9));
        let pp = prop_formulas(7, 0, 5, 0, &[5, 5, 4, 4, 4, 4, 4]).unwrap();
        assert_eq!((pp.wachspress, pp.d_bar), ((14, 8), (18, 11)));
    }

    #[test]
    fn formulas_reject_inconsistent_counts() {
        assert!(matches!(prop_formulas(6, 1, 2, 0, &[5, 5, 4, 4, 3, 3]), Err(Error::Violation(_))));
    }

    #[test]
    fn table_rows_are_consistent() {
        for row in &TABLE1 {
            let (a, b, c) = row.abc;
            let rep = prop_formulas(row.facet_sizes.len(), a, b, c, row.facet_sizes).unwrap();
            assert_eq!(rep.wachspress, row.wachspress);
            assert_eq!(table_adjoint(&rep.adjoint_image), row.adjoint_image);
            if let Some(db) = row.d_bar {
                assert_eq!(rep.d_bar, db);
            }
        }
    }

    #[test]
    fn filter() {
        let hept = CombinatorialType3::parse("7 7 4 4 4 4 4 4 4").unwrap();
        let v = irred_filter(&hept);
        assert!(!v.passes);
        assert_eq!(v.forced_facets, (2..9).collect::<Vec<_>>());
        let admitted: Vec<Vec<usize>> = shipped_types().into_iter().filter(|t| irred_filter(t).passes).map(|t| t.facet_sizes).collect();
        let table: Vec<Vec<usize>> = TABLE1.iter().map(|r| r.facet_sizes.to_vec()).collect();
        assert_eq!(admitted, table);
    }

    #[test]
    fn tetrahedron_has_no_conditions() {
        let t = fixtures::build("tetrahedron").unwrap();
        assert_eq!(gamma_dimension(&t).unwrap(), binomial(7, 3) - 1);
        assert!(residual_identity(&t).unwrap().passed);
    }

    #[test]
    fn prism_matches_monomial_count() {
        // Every triangular prism has a residual line and an isolated point in
        // general position, here x0 = x3 = 0 and (0:0:0:1). The quintics double
        // along the line and triple at the point are spanned by the monomials
        // x^(a,b,c,e) with a + e >= 2 and e <= 2.
        let mut count = 0;
        for a in 0..=5i64 {
            for b in 0..=5 - a {
                for e in 0..=5 - a - b {
                    if a + e >= 2 && e <= 2 {
                        count += 1;
                    }
                }
            }
        }
        let forms: Vec<_> = [[1, 1, 0, 0], [1, 0, 1, 0], [1, -1, -1, 0], [1, 0, 0, 1], [1, 0, 0, -1]]
            .iter()
            .map(|r| crate::exactalg::ivec(r))
            .collect();
        let p = Polytope::from_inequalities(&forms).unwrap();
        assert!(residual_identity(&p).unwrap().passed);
        assert_eq!(gamma_dimension(&p).unwrap(), count - 1);
        assert_eq!(gamma_dimension(&fixtures::build("triangular-prism").unwrap()).unwrap(), count - 1);
    }
}
