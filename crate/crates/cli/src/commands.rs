use std::path::{Path, PathBuf};

use g2calib::boundary::{antilinear_terms, split_coassociative, split_psi_positive, BoundaryConfig, TOL};
use g2calib::calibration::{classify, make_plane, PlaneSpec};
use g2calib::chern::fixtures::{constant_bundle, degree_bundle, tangent_bundle, tautological_bundle};
use g2calib::chern::mesh::Mesh;
use g2calib::chern::{chern_number, genus_of_complex, maslov_mod2, SampledLineBundle};
use g2calib::identities::{corrupted_phi0, run_identity_suite_with};
use g2calib::symbol::{ebc_check, index_formula, maslov_from_index, BoundaryComponentData, BoundaryProjector};
use g2calib::torus::{
    apply_map, classify_subtorus, composed_fixed_census, fixed_locus, singular_census, AffineTorusMap, FiniteGroup,
    NamedMap,
};
use g2calib::worked::paper_examples;
use g2calib::{ratio, Exec, KForm};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::report::{Check, RunReport};

const EXEC: Exec = Exec::Parallel;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

/// Read `path` as JSON, naming the offending field on failure.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("input: cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let field = if field == "." { "input".to_string() } else { field };
        CliError::Parse(format!("{field}: {}", e.into_inner()))
    })
}

fn require_input(input: Option<&PathBuf>) -> Result<&Path, CliError> {
    input.map(PathBuf::as_path).ok_or_else(|| CliError::Parse("--input: a JSON file is required".into()))
}

pub fn verify_identities(seed: u64, trials: usize, corrupt_phi: bool) -> Result<RunReport, CliError> {
    if trials == 0 {
        return Err(CliError::Parse("--trials: must be at least 1".into()));
    }
    let phi: KForm<_> = if corrupt_phi { corrupted_phi0() } else { g2calib::algebra::kform::phi0() };
    let report = run_identity_suite_with(seed, trials, &phi, EXEC);
    let checks = report
        .checks
        .iter()
        .map(|c| {
            let check = Check::new(
                c.name,
                c.pass,
                json!({"max_error": c.max_error, "tolerance": c.tolerance, "detail": c.detail}),
            );
            if c.informational {
                check.informational()
            } else {
                check
            }
        })
        .collect();
    Ok(RunReport::new("verify-identities", seed, json!({"trials": trials, "corrupt_phi": corrupt_phi}), &report)
        .with_checks(checks))
}

pub fn classify_plane(seed: u64, input: Option<&PathBuf>, tol: f64, grid: usize) -> Result<RunReport, CliError> {
    let spec: PlaneSpec = read_json(require_input(input)?)?;
    if spec.vectors.len() != spec.dim {
        return Err(CliError::Parse(format!(
            "dim: {} does not match the {} vectors given",
            spec.dim,
            spec.vectors.len()
        )));
    }
    let plane = make_plane(&spec.vectors).map_err(invariant)?;
    let c = classify(&plane, tol, grid, EXEC).map_err(invariant)?;
    let checks = vec![Check::new(
        "complement_value_matches",
        (c.calibration_value - c.complement_value).abs() <= 1e-9,
        json!([c.calibration_value, c.complement_value]),
    )];
    Ok(RunReport::new("classify-plane", seed, json!({"plane": spec, "tol": tol, "grid": grid}), &c).with_checks(checks))
}

pub fn boundary_split(seed: u64, input: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let cfg: BoundaryConfig = read_json(require_input(input)?)?;
    let (split, projection) = match &cfg.nx {
        None => (split_coassociative(&cfg).map_err(invariant)?, None),
        Some(nx) => {
            let (s, p) = split_psi_positive(&cfg, nx).map_err(invariant)?;
            (s, Some(p))
        }
    };
    let inv = split.invariants();
    let mut checks = Vec::new();
    match &projection {
        None => {
            checks.push(Check::new("split_invariants", inv.hold(TOL), &inv));
            for (name, y) in [("antilinear_v", split.v), ("antilinear_w", split.w)] {
                let t = antilinear_terms(&split, &y).map_err(invariant)?;
                checks.push(Check::new(name, t.max_defect <= TOL, t.max_defect));
            }
        }
        // ν_X is not J-stable here; only the frame and J itself are checked.
        Some(p) => {
            checks.push(Check::new("orthonormal_frame", inv.orthonormality <= TOL, inv.orthonormality));
            checks.push(Check::new("j_squared", inv.j_squared_plus_one <= TOL, inv.j_squared_plus_one));
            checks.push(Check::new("projection_rank_2", p.min_singular_value > TOL, p.min_singular_value));
            checks.push(Check::new("jb_leaves_nu_x", p.mu_component_of_jb > TOL, p.mu_component_of_jb));
        }
    }
    Ok(RunReport::new(
        "boundary-split",
        seed,
        &cfg,
        json!({"split": split, "invariants": inv, "projection": projection}),
    )
    .with_checks(checks))
}

pub fn index(seed: u64, input: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let components: Vec<BoundaryComponentData> = read_json(require_input(input)?)?;
    let index = index_formula(&components);
    let maslov = maslov_from_index(index, &components).ok();
    Ok(RunReport::new("index", seed, &components, json!({"index": index, "maslov": maslov})))
}

pub fn ebc(seed: u64, grid: usize, projector: BoundaryProjector) -> Result<RunReport, CliError> {
    let r = ebc_check(projector, grid, EXEC).map_err(|e| CliError::Parse(format!("--grid: {e}")))?;
    let checks = vec![Check::new("elliptic", r.pass, r.min_singular_value)];
    Ok(RunReport::new("ebc-check", seed, json!({"grid": grid, "projector": projector}), &r).with_checks(checks))
}

fn bundle_inputs(path: &Path, b: &SampledLineBundle) -> serde_json::Value {
    json!({"file": path.display().to_string(), "bundle": b})
}

pub fn chern(seed: u64, input: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let path = require_input(input)?;
    let b: SampledLineBundle = read_json(path)?;
    let n = chern_number(&b, EXEC).map_err(invariant)?;
    let genus = genus_of_complex(&b).map_err(invariant)?;
    Ok(RunReport::new(
        "chern",
        seed,
        bundle_inputs(path, &b),
        json!({"c1": n.value, "raw": n.raw, "residual": n.residual, "min_overlap": n.min_overlap, "genus": genus}),
    ))
}

pub fn maslov(seed: u64, input: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let path = require_input(input)?;
    let b: SampledLineBundle = read_json(path)?;
    let from_chern = maslov_mod2(&b, EXEC).map_err(invariant)?;
    let c1 = chern_number(&b, EXEC).map_err(invariant)?.value;
    let boundary = [BoundaryComponentData::new(0, c1)];
    let index = index_formula(&boundary);
    let from_index = maslov_from_index(index, &boundary).map_err(invariant)?;
    let checks = vec![Check::new("maslov_agrees", from_index == from_chern, json!([from_index, from_chern]))];
    Ok(RunReport::new(
        "maslov",
        seed,
        bundle_inputs(path, &b),
        json!({"c1": c1, "index": index, "maslov": from_chern, "maslov_from_index": from_index}),
    )
    .with_checks(checks))
}

pub fn fixed_loci(seed: u64, input: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let m: AffineTorusMap = read_json(require_input(input)?)?;
    let locus = fixed_locus(&m);
    let components: Vec<_> = locus
        .iter()
        .map(|t| {
            let class = classify_subtorus(t).ok();
            json!({"torus": t, "dim": t.dim(), "class": class, "label": t.to_string()})
        })
        .collect();
    let origin = locus.iter().all(|t| {
        let p = t.point(&std::array::from_fn::<_, 7, _>(|_| ratio(0, 1)));
        m.apply(&p) == p && apply_map(&m, t) == *t
    });
    let mut checks = vec![Check::new("components_fixed", origin, locus.len())];
    if m.is_involution() && !locus.is_empty() {
        let expected = 1usize << m.negated_count();
        checks.push(Check::new("component_count", locus.len() == expected, json!([locus.len(), expected])));
    }
    Ok(RunReport::new(
        "fixed-loci",
        seed,
        &m,
        json!({"involution": m.is_involution(), "map": m.to_string(), "components": components}),
    )
    .with_checks(checks))
}

/// Census input: a group by its generators and, optionally, a base map.
#[derive(Debug, Deserialize, Serialize)]
pub struct CensusInput {
    pub generators: Vec<NamedMap>,
    #[serde(default)]
    pub base: Option<AffineTorusMap>,
}

pub fn census(seed: u64, input: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let spec: CensusInput = read_json(require_input(input)?)?;
    let group = FiniteGroup::generate(&spec.generators).map_err(invariant)?;
    let outputs = match &spec.base {
        Some(base) => {
            let c = composed_fixed_census(base, &group);
            json!({
                "group_order": group.order(),
                "nonempty": c.nonempty(),
                "orbits_by_dim": c.quotient.orbits_by_dim(),
                "table": c.quotient.stabilizer_table(),
                "census": c,
            })
        }
        None => {
            let c = singular_census(&group, &spec.generators);
            json!({
                "group_order": group.order(),
                "orbit_count": c.census.orbit_count,
                "table": c.census.stabilizer_table(),
                "census": c,
            })
        }
    };
    Ok(RunReport::new("census", seed, &spec, outputs))
}

pub fn paper(seed: u64) -> Result<RunReport, CliError> {
    let p = paper_examples(EXEC).map_err(invariant)?;
    let checks = p
        .index
        .iter()
        .chain(&p.census.rows)
        .map(|r| {
            let name = format!("{} {}", r.example, r.parameter);
            Check::new(name.trim_end(), r.pass, json!({"expected": r.expected, "computed": r.computed}))
        })
        .collect();
    Ok(RunReport::new("paper-examples", seed, json!({}), &p).with_checks(checks))
}

/// Named sample bundles for `chern` and `maslov`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FixtureKind {
    Trivial,
    Tautological,
    Tangent,
    Degree,
    Torus,
}

pub fn fixture(kind: FixtureKind, level: usize, degree: i64) -> SampledLineBundle {
    let sphere = || Mesh::icosphere(level);
    match kind {
        FixtureKind::Trivial => constant_bundle(&sphere(), 2),
        FixtureKind::Tautological => tautological_bundle(&sphere()),
        FixtureKind::Tangent => tangent_bundle(&sphere()),
        FixtureKind::Degree => degree_bundle(&sphere(), degree),
        FixtureKind::Torus => constant_bundle(&Mesh::torus(4 * (level + 2), 4 * (level + 2)), 2),
    }
}
