//! The compact and local examples assembled end to end, and a table of every
//! index and count they are expected to reproduce.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::cross;
use crate::algebra::vector::Vector7;
use crate::boundary::{split_coassociative, BoundaryConfig, BoundaryError, NormalSplit};
use crate::calibration::{is_associative, is_coassociative, CalibrationError, OrientedPlane};
use crate::chern::fixtures::{constant_bundle, degree_bundle, tangent_bundle, tautological_bundle};
use crate::chern::mesh::Mesh;
use crate::chern::{chern_number, genus_of_complex, maslov_mod2, ChernError, ChernNumber, SampledLineBundle};
use crate::par::Exec;
use crate::scalar::ratio;
use crate::symbol::{index_formula, maslov_from_index, BoundaryComponentData, SymbolError, Z2};
use crate::torus::presets::*;
use crate::torus::{
    classify_subtorus, composed_fixed_census, fixed_locus, orbit_census, singular_census, subtorus_intersect,
    CoordSubtorus, FiniteGroup, NamedMap, SubtorusClass, TorusError,
};

type C = Complex64;

/// Resolution of the torus grid carrying `ν_X` samples.
pub const TORUS_GRID: usize = 12;
/// Subdivision level of the icosphere carrying sphere fixtures.
pub const SPHERE_LEVEL: usize = 2;
/// The isolated-point count quoted for the first orbifold example.
pub const QUOTED_ISOLATED_POINTS: usize = 8;

const TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WorkedError {
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("{0}")]
    Inconsistent(String),
}

/// A `J`-complex basis `(e, f)` of `ν = ⟨u, v, w⟩^⊥`, chosen from the
/// coordinate axes and independent of any split.
fn j_basis(cfg: &BoundaryConfig) -> [Vector7; 2] {
    let e_frame = [cfg.u, cfg.v, cfg.w];
    let mut basis: Vec<Vector7> = Vec::new();
    for k in 1..=7 {
        let mut span = e_frame.to_vec();
        for b in &basis {
            span.push(*b);
            span.push(cross(&cfg.u, b));
        }
        let x = Vector7::e(k).reject_from(&span);
        if let Some(x) = x.normalized(1e-6) {
            basis.push(x);
            if basis.len() == 2 {
                break;
            }
        }
    }
    [basis[0], basis[1]]
}

/// Complex coordinates of the line `ν_X` in a `J`-complex basis of `ν`.
pub fn nu_x_line(cfg: &BoundaryConfig, split: &NormalSplit) -> Vec<C> {
    j_basis(cfg).iter().map(|b| C::new(split.a.dot(b), split.a.dot(&cross(&cfg.u, b)))).collect()
}

/// One boundary 2-torus of a slab `[t₀, t₁] × T²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryTorus {
    pub torus: CoordSubtorus,
    pub inward_normal: Vector7,
    pub v: Vector7,
    pub w: Vector7,
    /// Index into the component list of `X` of the component containing it.
    pub x_component: Option<usize>,
    pub genus: u32,
    pub c1: ChernNumber,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XComponent {
    pub torus: CoordSubtorus,
    pub class: SubtorusClass,
    pub psi: f64,
    pub meets_boundary: bool,
}

/// An associative slab `Y` with boundary on coassociative coordinate tori `X`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlabReport {
    pub name: String,
    pub y_interior: CoordSubtorus,
    pub y_class: SubtorusClass,
    pub y_associative_numeric: bool,
    pub boundary_components: Vec<BoundaryTorus>,
    pub x_components: Vec<XComponent>,
    /// Orbit classes under the orbifold group of the components met by `∂Y`.
    pub x_classes_met: usize,
    pub index: i64,
}

struct SlabSpec {
    name: &'static str,
    y_interior: CoordSubtorus,
    /// `(boundary torus, inward normal, v)`; `w = u×v`.
    boundaries: Vec<(CoordSubtorus, Vector7, Vector7)>,
    x_components: Vec<CoordSubtorus>,
    group: FiniteGroup,
}

fn subtorus(free: &[usize], fixed: &[(i64, i64)]) -> CoordSubtorus {
    CoordSubtorus::new(free.to_vec(), fixed.iter().map(|&(n, d)| ratio(n, d)).collect()).expect("literal subtorus")
}

fn contains(big: &CoordSubtorus, small: &CoordSubtorus) -> bool {
    small.free().iter().all(|i| big.free().contains(i)) && subtorus_intersect(big, small)
}

/// Sample `ν_X` over a boundary torus on a periodic grid and integrate `c₁`.
fn boundary_chern(cfg: &BoundaryConfig, exec: Exec) -> Result<(SampledLineBundle, ChernNumber), WorkedError> {
    let split = split_coassociative(cfg)?;
    let line = nu_x_line(cfg, &split);
    let bundle = SampledLineBundle::from_mesh(&Mesh::torus(TORUS_GRID, TORUS_GRID), |_| line.clone());
    let c1 = chern_number(&bundle, exec)?;
    Ok((bundle, c1))
}

fn slab_report(spec: SlabSpec, exec: Exec) -> Result<SlabReport, WorkedError> {
    let y_class = classify_subtorus(&spec.y_interior)?;
    let y_associative_numeric = is_associative(&OrientedPlane::coordinate(spec.y_interior.free())?, TOL)?;
    let mut x_components: Vec<XComponent> = spec
        .x_components
        .iter()
        .map(|t| -> Result<XComponent, WorkedError> {
            let plane = OrientedPlane::coordinate(t.free())?;
            let psi = crate::calibration::calibration_value(&crate::algebra::kform::psi0(), &plane)?;
            let class = classify_subtorus(t)?;
            if (class == SubtorusClass::Coassociative) != is_coassociative(&plane, TOL)? {
                return Err(WorkedError::Inconsistent(format!("exact and numeric classification of {t} disagree")));
            }
            Ok(XComponent { torus: t.clone(), class, psi, meets_boundary: false })
        })
        .collect::<Result<_, _>>()?;
    let mut boundary_components = Vec::new();
    for (torus, u, v) in spec.boundaries {
        let x_component = x_components.iter().position(|x| contains(&x.torus, &torus));
        let Some(k) = x_component else {
            return Err(WorkedError::Inconsistent(format!("boundary torus {torus} lies in no component of X")));
        };
        x_components[k].meets_boundary = true;
        let cfg = BoundaryConfig::new(u, v, cross(&u, &v), OrientedPlane::coordinate(x_components[k].torus.free())?);
        let (bundle, c1) = boundary_chern(&cfg, exec)?;
        let genus = genus_of_complex(&bundle)?;
        boundary_components.push(BoundaryTorus {
            torus,
            inward_normal: u,
            v,
            w: cfg.w,
            x_component,
            genus: genus as u32,
            c1,
        });
    }
    let met: Vec<CoordSubtorus> = x_components.iter().filter(|x| x.meets_boundary).map(|x| x.torus.clone()).collect();
    let x_classes_met = orbit_census(&spec.group, &met).orbit_count;
    let data: Vec<BoundaryComponentData> =
        boundary_components.iter().map(|b| BoundaryComponentData::new(b.genus, b.c1.value)).collect();
    Ok(SlabReport {
        name: spec.name.to_string(),
        y_interior: spec.y_interior,
        y_class,
        y_associative_numeric,
        boundary_components,
        x_components,
        x_classes_met,
        index: index_formula(&data),
    })
}

/// `Y = [0, ½] × T²` in the flat torus with boundary on the fixed tori of `τ₀`.
pub fn flat_example_report(exec: Exec) -> Result<SlabReport, WorkedError> {
    let z = (0, 1);
    let h = (1, 2);
    slab_report(
        SlabSpec {
            name: "flat",
            y_interior: subtorus(&[1, 2, 3], &[z, z, z, z]),
            boundaries: vec![
                (subtorus(&[2, 3], &[z, z, z, z, z]), Vector7::e(1), Vector7::e(2)),
                (subtorus(&[2, 3], &[h, z, z, z, z]), -Vector7::e(1), Vector7::e(2)),
            ],
            x_components: fixed_locus(&flat_tau()),
            group: FiniteGroup::trivial(),
        },
        exec,
    )
}

/// `Y = {[x₁, ¼, ¼, t, x₅, 0, ¼] : ¼ ≤ t ≤ ¾}` in the first orbifold example.
pub fn joyce_warmup_report(exec: Exec) -> Result<SlabReport, WorkedError> {
    let q = (1, 4);
    let tq = (3, 4);
    let z = (0, 1);
    slab_report(
        SlabSpec {
            name: "joyce-1",
            y_interior: subtorus(&[1, 4, 5], &[q, q, z, q]),
            boundaries: vec![
                (subtorus(&[1, 5], &[q, q, q, z, q]), Vector7::e(4), Vector7::e(1)),
                (subtorus(&[1, 5], &[q, q, tq, z, q]), -Vector7::e(4), Vector7::e(1)),
            ],
            x_components: fixed_locus(&warmup_tau()),
            group: gamma_group(),
        },
        exec,
    )
}

/// The second orbifold example: fixed-locus census and index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecondJoyceReport {
    pub sigma_nonempty: Vec<String>,
    pub sigma_components: Vec<(String, usize)>,
    pub tau_nonempty: Vec<String>,
    pub tau_components: Vec<(String, usize)>,
    pub sigma_hits_singular: bool,
    pub tau_hits_singular: bool,
    /// Two 2-spheres; `c₁ = 0` on each is an input taken from the resolution.
    pub boundary: Vec<BoundaryComponentData>,
    pub index: i64,
}

pub fn second_joyce_report() -> SecondJoyceReport {
    let g = gamma_group();
    let alpha_tori = fixed_locus(&alpha());
    let summarize = |base| {
        let c = composed_fixed_census(&base, &g);
        let rows: Vec<(String, usize)> =
            c.rows.iter().filter(|r| r.components > 0).map(|r| (r.delta.clone(), r.components)).collect();
        let hits =
            c.rows.iter().flat_map(|r| r.loci.iter()).any(|t| alpha_tori.iter().any(|a| subtorus_intersect(a, t)));
        (c.nonempty().into_iter().map(String::from).collect::<Vec<_>>(), rows, hits)
    };
    let (sigma_nonempty, sigma_components, sigma_hits_singular) = summarize(second_sigma());
    let (tau_nonempty, tau_components, tau_hits_singular) = summarize(second_tau());
    let boundary = vec![BoundaryComponentData::new(0, 0), BoundaryComponentData::new(0, 0)];
    SecondJoyceReport {
        sigma_nonempty,
        sigma_components,
        tau_nonempty,
        tau_components,
        sigma_hits_singular,
        tau_hits_singular,
        index: index_formula(&boundary),
        boundary,
    }
}

/// A line bundle over a sphere together with the index it feeds.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereFixture {
    pub name: String,
    pub bundle: SampledLineBundle,
    pub c1: i64,
}

/// Sphere-boundary fixtures: trivial, tautological, tangent and `𝒪(n)`.
pub fn sphere_fixtures(exec: Exec) -> Result<Vec<SphereFixture>, WorkedError> {
    let mesh = Mesh::icosphere(SPHERE_LEVEL);
    let mut raw = vec![
        ("trivial".to_string(), constant_bundle(&mesh, 2)),
        ("tautological".to_string(), tautological_bundle(&mesh)),
        ("tangent".to_string(), tangent_bundle(&mesh)),
    ];
    for n in -3..=5 {
        raw.push((format!("O({n})"), degree_bundle(&mesh, n)));
    }
    raw.into_iter()
        .map(|(name, bundle)| {
            let c1 = chern_number(&bundle, exec)?.value;
            Ok(SphereFixture { name, bundle, c1 })
        })
        .collect()
}

/// `maslov_from_index` against `maslov_mod2` on one fixture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaslovComparison {
    pub fixture: String,
    pub c1: i64,
    pub index: i64,
    pub from_index: Z2,
    pub from_chern: Z2,
    pub agree: bool,
}

pub fn maslov_consistency(exec: Exec) -> Result<Vec<MaslovComparison>, WorkedError> {
    sphere_fixtures(exec)?
        .into_iter()
        .map(|f| {
            let boundary = [BoundaryComponentData::new(0, f.c1)];
            let index = index_formula(&boundary);
            let from_index = maslov_from_index(index, &boundary)?;
            let from_chern = maslov_mod2(&f.bundle, exec)?;
            Ok(MaslovComparison {
                fixture: f.name,
                c1: f.c1,
                index,
                from_index,
                from_chern,
                agree: from_index == from_chern,
            })
        })
        .collect()
}

/// One reproduced quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleRow {
    pub example: String,
    pub parameter: String,
    pub expected: i64,
    pub computed: i64,
    pub pass: bool,
}

impl ExampleRow {
    fn new(example: &str, parameter: impl Into<String>, expected: i64, computed: i64) -> Self {
        ExampleRow {
            example: example.to_string(),
            parameter: parameter.into(),
            expected,
            computed,
            pass: expected == computed,
        }
    }
}

/// Index rows: local coassociative, Bryant–Salamon, Calabi–Yau, flat, both
/// orbifold examples and the Maslov example.
pub fn index_rows(exec: Exec) -> Result<Vec<ExampleRow>, WorkedError> {
    let mut rows = Vec::new();
    for g in 0..=2u32 {
        let computed = index_formula(&[BoundaryComponentData::new(g, 0)]);
        rows.push(ExampleRow::new("local", format!("g={g}"), 1 - g as i64, computed));
    }
    let mesh = Mesh::icosphere(SPHERE_LEVEL);
    for n in 0..=5i64 {
        let c1 = chern_number(&degree_bundle(&mesh, n), exec)?.value;
        rows.push(ExampleRow::new("BS", format!("n={n}"), n + 1, index_formula(&[BoundaryComponentData::new(0, c1)])));
    }
    for g in 0..=2u32 {
        // On the sphere the canonical-type line is sampled; higher genus uses c₁ = 2(1 − g).
        let c1 = if g == 0 { chern_number(&tangent_bundle(&mesh), exec)?.value } else { 2 * (1 - g as i64) };
        let computed = index_formula(&[BoundaryComponentData::new(g, c1)]);
        rows.push(ExampleRow::new("CY", format!("g={g}"), 3 * (1 - g as i64), computed));
    }
    rows.push(ExampleRow::new("flat", "", 0, flat_example_report(exec)?.index));
    rows.push(ExampleRow::new("Joyce-1", "", 0, joyce_warmup_report(exec)?.index));
    rows.push(ExampleRow::new("Joyce-2", "", 2, second_joyce_report().index));
    let trivial = constant_bundle(&mesh, 2);
    let boundary = [BoundaryComponentData::new(0, chern_number(&trivial, exec)?.value)];
    let index = index_formula(&boundary);
    let mu = maslov_from_index(index, &boundary)?;
    rows.push(ExampleRow::new("Maslov", format!("index={index}"), 0, mu.value() as i64));
    Ok(rows)
}

/// Count rows for the torus enumerations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub rows: Vec<ExampleRow>,
    /// Orbit table of the isolated fixed points of the first orbifold example.
    pub isolated_point_table: String,
}

pub fn census_rows() -> CensusReport {
    let mut rows = Vec::new();
    let count = |v: bool| v as i64;
    let sigma = fixed_locus(&flat_sigma());
    let assoc = sigma.iter().filter(|t| classify_subtorus(t) == Ok(SubtorusClass::Associative)).count();
    rows.push(ExampleRow::new("flat σ₀", "associative T³", 16, assoc as i64));
    rows.push(ExampleRow::new("flat σ₀", "components", 16, sigma.len() as i64));
    let tau = fixed_locus(&flat_tau());
    let coassoc = tau.iter().filter(|t| classify_subtorus(t) == Ok(SubtorusClass::Coassociative)).count();
    rows.push(ExampleRow::new("flat τ₀", "coassociative T⁴", 8, coassoc as i64));
    rows.push(ExampleRow::new("flat τ₀", "components", 8, tau.len() as i64));

    let g = gamma_group();
    let singular = singular_census(&g, &gamma_generators());
    rows.push(ExampleRow::new("Γ singular", "orbit classes", 12, singular.census.orbit_count as i64));
    rows.push(ExampleRow::new("Γ singular", "pairwise disjoint", 1, count(singular.pairwise_disjoint)));
    let bg = FiniteGroup::generate(&[NamedMap::new("β", beta()), NamedMap::new("γ", gamma())]).expect("finite");
    let on_alpha = orbit_census(&bg, &fixed_locus(&alpha()));
    rows.push(ExampleRow::new("⟨β,γ⟩ on α-tori", "orbit classes", 4, on_alpha.orbit_count as i64));
    rows.push(ExampleRow::new("⟨β,γ⟩ on α-tori", "free", 1, count(on_alpha.free)));

    let warm_sigma = composed_fixed_census(&warmup_sigma(), &g);
    rows.push(ExampleRow::new("Joyce-1 σ", "nonempty δ = {Id}", 1, count(warm_sigma.nonempty() == ["Id"])));
    rows.push(ExampleRow::new("Joyce-1 σ", "T³ classes", 2, warm_sigma.quotient.orbit_count as i64));

    let warm = composed_fixed_census(&warmup_tau(), &g);
    let id = warm.row("Id").expect("identity row");
    let bgr = warm.row("βγ").expect("βγ row");
    rows.push(ExampleRow::new("Joyce-1 τ", "δ=Id four-tori", 8, count(id.dimension == Some(4)) * id.components as i64));
    rows.push(ExampleRow::new(
        "Joyce-1 τ",
        "δ=βγ points",
        128,
        count(bgr.dimension == Some(0)) * bgr.components as i64,
    ));
    rows.push(ExampleRow::new("Joyce-1 τ", "nonempty δ = {Id, βγ}", 1, count(warm.nonempty() == ["Id", "βγ"])));
    let by_dim = warm.quotient.orbits_by_dim();
    rows.push(ExampleRow::new("Joyce-1 τ", "T⁴ classes", 1, *by_dim.get(&4).unwrap_or(&0) as i64));
    rows.push(ExampleRow::new(
        "Joyce-1 τ",
        "isolated points",
        QUOTED_ISOLATED_POINTS as i64,
        *by_dim.get(&0).unwrap_or(&0) as i64,
    ));
    let points = crate::torus::OrbitCensus {
        orbits: warm.quotient.orbits.iter().filter(|o| o.representative.dim() == 0).cloned().collect(),
        ..warm.quotient.clone()
    };

    let second = second_joyce_report();
    rows.push(ExampleRow::new("Joyce-2 σ", "nonempty δ = {Id, α}", 1, count(second.sigma_nonempty == ["Id", "α"])));
    let sixteen = second.sigma_components.iter().all(|(_, n)| *n == 16);
    rows.push(ExampleRow::new("Joyce-2 σ", "16 three-tori per δ", 1, count(sixteen)));
    rows.push(ExampleRow::new(
        "Joyce-2 τ",
        "nonempty δ = {Id, α, αβ}",
        1,
        count(second.tau_nonempty == ["Id", "α", "αβ"]),
    ));
    let expected_tau = [("Id".to_string(), 8), ("α".to_string(), 8), ("αβ".to_string(), 128)];
    rows.push(ExampleRow::new(
        "Joyce-2 τ",
        "component counts 8, 8, 128",
        1,
        count(second.tau_components == expected_tau),
    ));
    rows.push(ExampleRow::new(
        "Joyce-2",
        "σ and τ hit the α-tori",
        1,
        count(second.sigma_hits_singular && second.tau_hits_singular),
    ));
    CensusReport { rows, isolated_point_table: points.stabilizer_table() }
}

/// Every row of [`index_rows`] and [`census_rows`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaperExamples {
    pub index: Vec<ExampleRow>,
    pub census: CensusReport,
    pub all_pass: bool,
}

pub fn paper_examples(exec: Exec) -> Result<PaperExamples, WorkedError> {
    let index = index_rows(exec)?;
    let census = census_rows();
    let all_pass = index.iter().chain(&census.rows).all(|r| r.pass);
    Ok(PaperExamples { index, census, all_pass })
}
