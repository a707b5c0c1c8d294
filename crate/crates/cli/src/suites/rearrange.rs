//! Decreasing-rearrangement suite: the anchored rearrangement keeps the
//! concavity class, the distribution, and the integral, and its difference
//! function dominates the original one.

use diffn_core::family::AnalyticFamily;
use diffn_core::grid::{BoxDomain, GridFunction};
use diffn_core::rearrange::check_lemma_v1;
use diffn_core::Alpha;

use crate::config::SuiteConfig;
use crate::gen;
use crate::report::CaseReport;
use crate::rng::SplitMix64;
use crate::CliError;

use super::{require_dims, timed};

/// Grid step tolerance scaled by the log-Lipschitz constant of the input;
/// the rearranged values sit within half a cell of the continuum ones, so
/// concavity gaps scale with the local slope.
fn lemma_tol(f: &GridFunction<f64>) -> f64 {
    let h = f.domain().axis(0).spacing();
    let logs = f.logs();
    let mut lip: f64 = 0.0;
    for w in logs.windows(2) {
        if w[0].is_finite() && w[1].is_finite() {
            lip = lip.max((w[1] - w[0]).abs() / h);
        }
    }
    h * (1.0 + lip.min(40.0))
}

fn lemma_case(
    id: String,
    f: &GridFunction<f64>,
    alpha: Alpha<f64>,
) -> Result<CaseReport, CliError> {
    let tol = lemma_tol(f);
    let (res, ms) = timed(|| check_lemma_v1(f, alpha, tol));
    let report = res?;
    let flags = format!(
        "conc={} equi={} int={} dec={} mean={} dom={}",
        u8::from(report.star_concave.ok),
        u8::from(report.equimeasurable.pass),
        u8::from(report.equal_integral.pass),
        u8::from(report.decreasing),
        u8::from(report.mean_identity.pass),
        u8::from(report.domination.pass),
    );
    let mut case = CaseReport::new(
        format!("{id} [{flags}]"),
        report.star_concave.worst_gap,
        tol,
        report.ok,
    );
    case.ms = ms;
    Ok(case)
}

pub(super) fn rearrange_lemma(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, CliError> {
    require_dims(cfg, &[1])?;
    let mut cases = Vec::new();

    // Both extremal families are already anchored and decreasing, so the
    // rearrangement must fix them; the grid places 0 and 1 on nodes.
    let anchored = BoxDomain::from_bounds(&[(-0.25, 1.25, 769)])?;
    let a = AnalyticFamily::OneDExtremalA { alpha: -0.5 }.sample(&anchored)?;
    cases.push(lemma_case("extremal-A alpha=-0.5".into(), &a, Alpha::finite(-0.5)?)?);
    let b = AnalyticFamily::OneDExtremalB { alpha: -2.0 }.sample(&anchored)?;
    cases.push(lemma_case("extremal-B alpha=-2".into(), &b, Alpha::finite(-2.0)?)?);

    let count = cfg.nodes_or(513);
    for (k, &(center, width)) in [(0.0, 1.0), (0.6, 0.8), (-1.1, 1.3)].iter().enumerate() {
        let domain = BoxDomain::centered(1, 6.0, count)?;
        let f = AnalyticFamily::Gaussian {
            center: vec![center],
            width,
        }
        .sample(&domain)?;
        cases.push(lemma_case(
            format!("gaussian case={k} center={center}"),
            &f,
            Alpha::zero(),
        )?);
    }

    let mut rng = SplitMix64::new(cfg.seed);
    for k in 0..10 {
        let f = gen::random_log_concave(&mut rng, 1, 6.0, count);
        cases.push(lemma_case(format!("log-concave case={k:02}"), &f, Alpha::zero())?);
    }
    Ok(cases)
}
