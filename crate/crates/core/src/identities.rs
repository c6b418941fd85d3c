//! The seeded identity suite for the pointwise algebra.
//!
//! Random checks draw unit vectors from per-trial streams and record the
//! largest error seen. Exact checks run over the rationals. The φ₀ table is a
//! parameter so a corrupted table can be fed in as a negative control.

use serde::Serialize;

use crate::algebra::kform::{phi0, psi0, KForm};
use crate::algebra::linalg::identity;
use crate::algebra::metric::{hodge_star, metric_from_three_form};
use crate::algebra::{associator, chi_eval, cross};
use crate::par::{map_range, Exec};
use crate::sampling::{orthonormal_frame, trial_rng, unit_vector};
use crate::scalar::{Rational, Scalar};

/// Tolerance for the random identities.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub trials: usize,
    /// Largest error over all trials; 0 or 1 for exact checks.
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Reported for reference only and excluded from [`IdentityReport::all_pass`].
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

impl IdentityReport {
    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// φ₀ with the sign of its `e¹²³` coefficient flipped.
pub fn corrupted_phi0() -> KForm<Rational> {
    let one = <Rational as Scalar>::from_i64(1);
    let flip = KForm::from_terms(3, &[(&[1, 2, 3], one.clone() + one)]).expect("degree 3");
    (phi0::<Rational>() - flip).expect("same degree")
}

/// Per-trial errors, in the order of [`RANDOM_CHECKS`].
const RANDOM_CHECKS: [&str; 6] =
    ["chi_equals_associator", "psi_associator", "cross_norm", "comass", "cross_phi", "psi_associator_literal"];

struct Trial {
    errors: [f64; 6],
    /// `(ψ₀, ½⟨u,[v,w,x]⟩)` for the normalization fit.
    literal_pair: (f64, f64),
}

fn run_trial(seed: u64, t: usize, phi: &KForm<f64>, psi: &KForm<f64>) -> Trial {
    let mut rng = trial_rng(seed, t as u64);
    let [u, v, w, x] = std::array::from_fn(|_| unit_vector(&mut rng));
    let chi = chi_eval(&u, &v, &w);
    let assoc = associator(&u, &v, &w);
    let chi_err = (chi - assoc).max_abs();

    let psi_val = psi.eval(&[u, v, w, x]).expect("degree 4");
    let psi_err = (psi_val - assoc.dot(&x)).abs();
    let literal = 0.5 * u.dot(&associator(&v, &w, &x));
    let literal_err = (psi_val - literal).abs();

    let uv = cross(&u, &v);
    let norm_err = (uv.dot(&uv) + u.dot(&v).powi(2) - u.dot(&u) * v.dot(&v)).abs();

    let frame = orthonormal_frame(&mut rng, 3);
    let comass = phi.eval(&frame).expect("degree 3").abs();
    let comass_err = (comass - 1.0).max(0.0);

    let cross_phi_err = (uv.dot(&w) - phi.eval(&[u, v, w]).expect("degree 3")).abs();
    Trial {
        errors: [chi_err, psi_err, norm_err, comass_err, cross_phi_err, literal_err],
        literal_pair: (psi_val, literal),
    }
}

fn exact_check(name: &'static str, outcome: Result<bool, String>) -> IdentityCheck {
    let (pass, detail) = match outcome {
        Ok(true) => (true, None),
        Ok(false) => (false, Some("values differ".to_string())),
        Err(e) => (false, Some(e)),
    };
    IdentityCheck {
        name,
        trials: 1,
        max_error: if pass { 0.0 } else { 1.0 },
        tolerance: 0.0,
        pass,
        informational: false,
        detail,
    }
}

/// Run every identity with the given φ table.
pub fn run_identity_suite_with(seed: u64, trials: usize, phi: &KForm<Rational>, exec: Exec) -> IdentityReport {
    let phi_f = phi.to_f64();
    let psi_f = psi0::<f64>();
    let results = map_range(exec, trials, |t| run_trial(seed, t, &phi_f, &psi_f));

    let mut checks = Vec::new();
    for (k, &name) in RANDOM_CHECKS.iter().enumerate() {
        let max_error = results.iter().map(|r| r.errors[k]).fold(0.0f64, f64::max);
        let informational = name == "psi_associator_literal";
        let detail = informational.then(|| {
            let (num, den) = results
                .iter()
                .fold((0.0, 0.0), |(n, d), r| (n + r.literal_pair.0 * r.literal_pair.1, d + r.literal_pair.1.powi(2)));
            format!("least-squares ratio ψ₀ / (½⟨u,[v,w,x]⟩) = {:.12}", num / den)
        });
        checks.push(IdentityCheck {
            name,
            trials,
            max_error,
            tolerance: IDENTITY_TOL,
            pass: max_error <= IDENTITY_TOL,
            informational,
            detail,
        });
    }

    let metric = metric_from_three_form(phi);
    checks.push(exact_check(
        "metric_exact",
        metric
            .as_ref()
            .map(|m| m.gram == identity::<Rational>(7) && m.vol == Rational::from_i64(1))
            .map_err(|e| e.to_string()),
    ));
    checks.push(exact_check(
        "hodge_exact",
        metric
            .map_err(|e| e.to_string())
            .and_then(|m| hodge_star(phi, &m.gram, &m.vol).map_err(|e| e.to_string()))
            .map(|star| star == psi0::<Rational>()),
    ));

    let all_pass = checks.iter().filter(|c| !c.informational).all(|c| c.pass);
    IdentityReport { seed, trials, checks, all_pass }
}

/// Run every identity against the standard φ₀.
pub fn run_identity_suite(seed: u64, trials: usize, exec: Exec) -> IdentityReport {
    run_identity_suite_with(seed, trials, &phi0(), exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_tables_pass() {
        let r = run_identity_suite(1, 500, Exec::Sequential);
        assert!(r.all_pass, "{r:#?}");
        let lit = r.check("psi_associator_literal").unwrap();
        assert!(!lit.pass);
        assert!(lit.detail.as_ref().unwrap().contains("-2.000000000000"));
    }

    #[test]
    fn corrupted_table_fails() {
        let r = run_identity_suite_with(1, 200, &corrupted_phi0(), Exec::Sequential);
        assert!(!r.all_pass);
        assert!(!r.check("cross_phi").unwrap().pass);
        assert!(!r.check("hodge_exact").unwrap().pass);
        assert!(!r.check("metric_exact").unwrap().pass);
    }

    #[test]
    fn policies_agree() {
        let a = run_identity_suite(3, 64, Exec::Sequential);
        let b = run_identity_suite(3, 64, Exec::Parallel);
        assert_eq!(a, b);
    }
}
