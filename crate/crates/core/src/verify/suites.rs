use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;

use super::report::VerificationReport;
use crate::distributions::{
    alpha_cauchy_charfn, alpha_cauchy_constant, alpha_cauchy_density, beta_prime_density, linnik_density,
    linnik_density_mixture, meixner_density, rayleigh_survival, unilateral_stable_moment, z_density,
};
use crate::error::{Error, Result};
use crate::hitting_laws::{self as hl, HittingLaw};
use crate::numerics::{
    integrate_adaptive, integrate_beta_weighted, integrate_oscillatory_cos, integrate_power_tail, laplace_invert_cdf,
    LaplaceTransform, QuadSpec,
};
use crate::resolvent::{
    appendix_closed_form, appendix_integral, density_p, density_p1_quadrature, h_limit, h_one, h_q, resolvent_u,
    resolvent_u1_quadrature, StableIndex,
};
use crate::sampling::{
    draw_many, ks_statistic, ks_statistic_from_density, monte_carlo_multi, sample_beta, sample_gamma, sample_linnik,
    sample_sym_stable, sample_unilateral_stable, AlphaCauchy, AlphaRayleigh, ExcursionExpTriplet, ExcursionPair,
    GammaSeries, HittingTime, LtTableSampler, Overshoot, SizeBiasedStable, TabulatedCdf,
};

/// Monte Carlo sample size used when the caller does not choose one.
pub const DEFAULT_SAMPLES: usize = 1_000_000;
/// Half-width of Monte Carlo acceptance bands, in standard errors.
pub const MC_SIGMAS: f64 = 4.0;
/// Kolmogorov-Smirnov acceptance threshold at the default sample size.
pub const KS_LIMIT: f64 = 0.002;
/// Series length of the gamma-series sampler inside the suites.
pub const SUITE_SERIES_TERMS: usize = 1000;
/// Gaver-Stehfest terms used for the exponential inversion checks.
pub const EXPONENTIAL_GS_TERMS: usize = 18;
/// Gaver-Stehfest terms used for hitting-time distribution functions.
pub const HITTING_GS_TERMS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    BrownianOracle,
    FormulaAlgebra,
    McVsFormula,
    RelationR,
    Excursion,
    Appendix,
    Inversion,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::BrownianOracle,
        Suite::FormulaAlgebra,
        Suite::McVsFormula,
        Suite::RelationR,
        Suite::Excursion,
        Suite::Appendix,
        Suite::Inversion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BrownianOracle => "brownian_oracle",
            Suite::FormulaAlgebra => "formula_algebra",
            Suite::McVsFormula => "mc_vs_formula",
            Suite::RelationR => "relation_R",
            Suite::Excursion => "excursion",
            Suite::Appendix => "appendix",
            Suite::Inversion => "inversion",
        }
    }

    /// Stability indices used when the caller passes an empty grid.
    /// `brownian_oracle` always runs at `alpha = 2`; `excursion` uses `gamma = 1 - 1/alpha`.
    pub fn default_alphas(self) -> &'static [f64] {
        match self {
            Suite::BrownianOracle => &[2.0],
            Suite::FormulaAlgebra | Suite::Appendix => &[1.2, 1.5, 1.8, 2.0],
            Suite::McVsFormula => &[1.2, 1.5, 1.8],
            Suite::RelationR => &[1.25, 1.5, 1.8],
            Suite::Excursion => &[1.5, 2.0],
            Suite::Inversion => &[1.5],
        }
    }

    /// Runs every check of the suite. Failures are collected, never raised.
    pub fn run(self, grid: &[StableIndex], seed: u64, n_samples: usize) -> Vec<VerificationReport> {
        let grid: Vec<StableIndex> = if grid.is_empty() {
            self.default_alphas()
                .iter()
                .map(|&a| StableIndex::new(a).expect("default indices are valid"))
                .collect()
        } else {
            grid.to_vec()
        };
        let n = n_samples.max(2);
        let jobs = match self {
            Suite::BrownianOracle => brownian_jobs(),
            Suite::FormulaAlgebra => formula_algebra_jobs(&grid),
            Suite::McVsFormula => mc_jobs(&grid, n),
            Suite::RelationR => relation_r_jobs(&grid),
            Suite::Excursion => excursion_jobs(&grid, n),
            Suite::Appendix => appendix_jobs(&grid),
            Suite::Inversion => inversion_jobs(&grid, n),
        };
        execute(jobs, seed)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Runs the named suite; see [`Suite::run`].
pub fn run_suite(
    suite_name: &str,
    idx_grid: &[StableIndex],
    seed: u64,
    n_samples: usize,
) -> Result<Vec<VerificationReport>> {
    Ok(suite_name.parse::<Suite>()?.run(idx_grid, seed, n_samples))
}

/// A check receives the run seed and the first stream id reserved for it.
type Job = Box<dyn Fn(u64, u64) -> Vec<VerificationReport> + Send + Sync>;
type QFn<'a> = Box<dyn Fn(f64) -> Result<f64> + 'a>;

/// Job `i` owns stream ids `(i + 1) << 32 ..`, so no two checks share a stream.
fn stream_base(i: usize) -> u64 {
    (i as u64 + 1) << 32
}

fn execute(jobs: Vec<Job>, seed: u64) -> Vec<VerificationReport> {
    let parts: Vec<Vec<VerificationReport>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| job(seed, stream_base(i)))
        .collect();
    parts.concat()
}

fn job<F>(f: F) -> Job
where
    F: Fn(u64, u64) -> Vec<VerificationReport> + Send + Sync + 'static,
{
    Box::new(f)
}

fn compare(id: String, tol: f64, r: Result<(f64, f64)>) -> VerificationReport {
    match r {
        Ok((lhs, rhs)) => VerificationReport::absolute(id, lhs, rhs, tol),
        Err(e) => VerificationReport::errored(id, &e),
    }
}

/// Monte Carlo mean against an exact value at `MC_SIGMAS` standard errors.
fn mc_report(id: String, mean: f64, stderr: f64, exact: f64, n: usize) -> VerificationReport {
    VerificationReport::absolute(id, mean, exact, MC_SIGMAS * stderr)
        .with_samples(n)
        .with_notes(format!("stderr={stderr:.3e}"))
}

fn ks_report(id: String, ks: Result<f64>, n: usize, limit: f64) -> VerificationReport {
    match ks {
        Ok(d) => VerificationReport::absolute(id, d, 0.0, limit).with_samples(n),
        Err(e) => VerificationReport::errored(id, &e),
    }
}

fn sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs
}

fn quad() -> QuadSpec {
    QuadSpec::default()
        .with_abs_tol(1e-12)
        .with_rel_tol(1e-11)
        .with_max_panels(8000)
}

// ---------------------------------------------------------------------------
// brownian_oracle

const BROWNIAN_TOL: f64 = 1e-8;

fn brownian_jobs() -> Vec<Job> {
    vec![
        job(|_, _| brownian_closed_forms()),
        job(|_, _| brownian_quadrature_path()),
    ]
}

fn brownian_closed_forms() -> Vec<VerificationReport> {
    let idx = StableIndex::hitting(2.0).expect("valid index");
    let mut out = Vec::new();
    for q in [0.25f64, 1.0, 4.0] {
        let s = q.sqrt();
        for a in [0.5, 1.0, 2.0] {
            let th = s * a;
            let tag = format!("q={q},a={a}");
            let mut push = |name: &str, r: Result<f64>, oracle: f64| {
                out.push(compare(
                    format!("brownian.{name}[{tag}]"),
                    BROWNIAN_TOL,
                    r.map(|v| (v, oracle)),
                ))
            };
            push("resolvent_u", resolvent_u(&idx, q, a), (-th).exp() / (2.0 * s));
            push("resolvent_u0", resolvent_u(&idx, q, 0.0), 0.5 / s);
            push("h_q", h_q(&idx, q, a), -(-th).exp_m1() / (2.0 * s));
            push("h", h_limit(&idx, a), 0.5 * a);
            push("lt_T_point", hl::lt_t_point(&idx, q, 0.0, a), (-th).exp());
            push(
                "lt_G_point",
                hl::lt_g_point(&idx, q, a),
                -(-2.0 * th).exp_m1() / (2.0 * th),
            );
            push("lt_Xi_point", hl::lt_xi_point(&idx, q, a), th / th.sinh());
            push("lt_T_abs", hl::lt_t_abs(&idx, q, a), 1.0 / th.cosh());
            push("lt_G_abs", hl::lt_g_abs(&idx, q, a), th.tanh() / th);
            push("lt_Xi_abs", hl::lt_xi_abs(&idx, q, a), th / th.sinh());
            let (lo, hi, x) = (-a, 2.0 * a, 0.3 * a);
            push(
                "lt_T_two_points",
                hl::lt_t_two_points(&idx, q, x, lo, hi),
                (s * (x - 0.5 * (lo + hi))).cosh() / (s * 0.5 * (hi - lo)).cosh(),
            );
            push(
                "lt_T_a_before_b",
                hl::lt_t_a_before_b(&idx, q, x, lo, hi),
                (s * (hi - x)).sinh() / (s * (hi - lo)).sinh(),
            );
            // From inside (0, a) a continuous path meets 0 or a before -a.
            push(
                "lt_T_three",
                hl::lt_t_three(&idx, q, x, a),
                (s * (x - 0.5 * a)).cosh() / (0.5 * th).cosh(),
            );
            push(
                "lt_T_pm_a_before_0",
                hl::lt_t_pm_a_before_0(&idx, q, x, a),
                (s * x).sinh() / th.sinh(),
            );
            push("exc_n_hits", hl::exc_n_hits(&idx, a), 1.0 / a);
            push("exc_m_hits", hl::exc_m_hits(&idx, a), 2.0 / a);
            for n in [1, 2, 5] {
                push(&format!("dn_gap[n={n}]"), hl::dn_gap(&idx, q, a, n), 0.0);
            }
        }
    }
    for t in [0.5f64, 1.0, 2.0] {
        for x in [0.0, 0.7, 2.0] {
            let oracle = (-x * x / (4.0 * t)).exp() / (2.0 * (PI * t).sqrt());
            out.push(compare(
                format!("brownian.density_p[t={t},x={x}]"),
                BROWNIAN_TOL,
                density_p(&idx, t, x).map(|v| (v, oracle)),
            ));
        }
    }
    out
}

/// The quadrature routes used for `alpha < 2`, exercised where closed forms exist.
fn brownian_quadrature_path() -> Vec<VerificationReport> {
    let idx = StableIndex::hitting(2.0).expect("valid index");
    let mut out = Vec::new();
    for y in [0.0f64, 0.5, 1.5, 3.0, 6.0] {
        let oracle = (-y * y / 4.0).exp() / (2.0 * PI.sqrt());
        out.push(compare(
            format!("brownian.density_p1_quadrature[y={y}]"),
            BROWNIAN_TOL,
            density_p1_quadrature(&idx, y).map(|v| (v, oracle)),
        ));
    }
    for y in [0.005, 0.25, 1.0, 2.0, 4.0] {
        out.push(compare(
            format!("brownian.resolvent_u1_quadrature[y={y}]"),
            BROWNIAN_TOL,
            resolvent_u1_quadrature(&idx, y).map(|v| (v, 0.5 * (-y).exp())),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// formula_algebra

const ALGEBRA_Q: [f64; 3] = [0.5, 1.0, 2.0];
const ALGEBRA_A: [f64; 3] = [0.5, 1.0, 2.0];
const PRODUCT_TOL: f64 = 1e-12;
const SCALE_TOL: f64 = 1e-9;
/// Rounding allowance when the alternating-series bracket has collapsed to a point.
const BRACKET_SLACK: f64 = 1e-15;
/// Tolerance of limits extrapolated from `q = 1e-2, 1e-4, 1e-6`.
const LIMIT_TOL: f64 = 1e-3;
/// Same for ratio limits, whose remainder after extrapolation is of order `1e-6^(3 (1 - 1/alpha))`.
const RATIO_LIMIT_TOL: f64 = 1e-2;

fn formula_algebra_jobs(grid: &[StableIndex]) -> Vec<Job> {
    let mut jobs = Vec::new();
    for &idx in grid {
        for q in ALGEBRA_Q {
            jobs.push(job(move |_, _| algebra_at_rate(idx, q)));
        }
        jobs.push(job(move |_, _| algebra_identities(idx)));
    }
    jobs
}

fn algebra_at_rate(idx: StableIndex, q: f64) -> Vec<VerificationReport> {
    let al = idx.alpha();
    let mut out = Vec::new();
    if let Err(e) = idx.require_hitting() {
        out.push(VerificationReport::errored(format!("formula_algebra[alpha={al}]"), &e));
        return out;
    }
    for a in ALGEBRA_A {
        let tag = format!("alpha={al},q={q},a={a}");
        out.push(compare(
            format!("product.point[{tag}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    hl::lt_g_point(&idx, q, a)? * hl::lt_xi_point(&idx, q, a)?,
                    hl::lt_t_point(&idx, q, 0.0, a)?,
                ))
            })(),
        ));
        out.push(compare(
            format!("product.abs[{tag}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    hl::lt_g_abs(&idx, q, a)? * hl::lt_xi_abs(&idx, q, a)?,
                    hl::lt_t_abs(&idx, q, a)?,
                ))
            })(),
        ));
        for n in 1..=10u32 {
            let id = format!("dn[{tag},n={n}]");
            match hl::dn_gap_forms(&idx, q, a, n) {
                Ok((first, second)) => {
                    out.push(VerificationReport::absolute(
                        format!("{id}.two_forms"),
                        first,
                        second,
                        hl::DN_AGREEMENT,
                    ));
                    let d = 0.5 * (first + second);
                    if idx.is_brownian() {
                        out.push(VerificationReport::absolute(format!("{id}.zero"), d, 0.0, 1e-12));
                    } else {
                        out.push(VerificationReport::condition(
                            format!("{id}.positive"),
                            d > 0.0,
                            format!("D_n={d:.6e}"),
                        ));
                    }
                }
                Err(e) => out.push(VerificationReport::errored(id, &e)),
            }
        }
        out.push(series_bracket(&idx, q, a, &tag));
        for c in [0.5f64, 3.0] {
            let q2 = q / c.powf(al);
            for law in HittingLaw::ALL {
                out.push(compare(
                    format!("scale.{}[{tag},c={c}]", law.name()),
                    SCALE_TOL,
                    (|| Ok((law.eval(&idx, q, a)?, law.eval(&idx, q2, c * a)?)))(),
                ));
            }
        }
    }
    out
}

/// Largest distance of `lt_T_abs` outside the partial-sum brackets for 2..=50 terms.
fn series_bracket(idx: &StableIndex, q: f64, a: f64, tag: &str) -> VerificationReport {
    let id = format!("series_bracket[{tag}]");
    let run = || -> Result<f64> {
        let exact = hl::lt_t_abs(idx, q, a)?;
        let mut worst: f64 = 0.0;
        for n in 2..=50 {
            let (_, (lo, hi)) = hl::lt_t_abs_series(idx, q, a, n)?;
            worst = worst.max(lo - exact).max(exact - hi);
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => VerificationReport::absolute(id, w.max(0.0), 0.0, BRACKET_SLACK),
        Err(e) => VerificationReport::errored(id, &e),
    }
}

fn algebra_identities(idx: StableIndex) -> Vec<VerificationReport> {
    let al = idx.alpha();
    let mut out = Vec::new();
    if idx.require_hitting().is_err() {
        return out;
    }
    let (q, a, b) = (1.0, 1.0, -1.3);
    let tag = format!("alpha={al}");
    for x in [0.4, -0.5, 2.0] {
        let t = format!("{tag},x={x}");
        out.push(compare(
            format!("sum_rule[{t}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    hl::lt_t_a_before_b(&idx, q, x, a, b)? + hl::lt_t_a_before_b(&idx, q, x, b, a)?,
                    hl::lt_t_two_points(&idx, q, x, a, b)?,
                ))
            })(),
        ));
        out.push(compare(
            format!("chain_rule[{t}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    hl::lt_t_point(&idx, q, x, a)?,
                    hl::lt_t_a_before_b(&idx, q, x, a, b)?
                        + hl::lt_t_a_before_b(&idx, q, x, b, a)? * hl::lt_t_point(&idx, q, b, a)?,
                ))
            })(),
        ));
    }
    out.push(compare(
        format!("two_points_is_abs[{tag}]"),
        PRODUCT_TOL,
        (|| Ok((hl::lt_t_two_points(&idx, q, 0.0, a, -a)?, hl::lt_t_abs(&idx, q, a)?)))(),
    ));
    for x in [0.4, 0.7, -1.6] {
        out.push(compare(
            format!("pm_a_before_0.assembled[{tag},x={x}]"),
            1e-9,
            (|| {
                Ok((
                    hl::lt_t_pm_a_before_0(&idx, q, x, a)?,
                    hl::lt_t_pm_a_before_0_assembled(&idx, q, x, a)?,
                ))
            })(),
        ));
    }
    for x in [0.0, a, -a] {
        out.push(compare(
            format!("three_point.on_target[{tag},x={x}]"),
            PRODUCT_TOL,
            hl::lt_t_three(&idx, q, x, a).map(|v| (v, 1.0)),
        ));
    }
    for x in [0.5, 1.7] {
        let id = format!("three_point.dominated[{tag},x={x}]");
        match (|| Ok((hl::lt_t_three(&idx, q, x, a)?, hl::lt_t_two_points(&idx, q, x, a, -a)?)))() {
            Ok((three, two)) => out.push(VerificationReport::condition(
                id,
                three >= two,
                format!("three={three:.12}, two={two:.12}"),
            )),
            Err(e) => out.push(VerificationReport::errored(id, &e)),
        }
    }
    for a in [0.5, 2.0] {
        let t = format!("{tag},q={q},a={a}");
        out.push(compare(
            format!("exc_n.g_reconstruction[{t}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    1.0 / hl::lt_g_point(&idx, q, a)?,
                    1.0 + hl::exc_n_lifetime_without_hit(&idx, q, a)? / hl::exc_n_hits(&idx, a)?,
                ))
            })(),
        ));
        out.push(compare(
            format!("exc_n.xi_reconstruction[{t}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    hl::exc_n_hitting_lt(&idx, q, a)? / hl::exc_n_hits(&idx, a)?,
                    hl::lt_xi_point(&idx, q, a)?,
                ))
            })(),
        ));
        out.push(compare(
            format!("exc_m.xi_reconstruction[{t}]"),
            PRODUCT_TOL,
            (|| {
                Ok((
                    hl::exc_m_hitting_lt(&idx, q, a)? / hl::exc_m_hits(&idx, a)?,
                    hl::lt_xi_abs(&idx, q, a)?,
                ))
            })(),
        ));
    }
    out.push(compare(
        format!("getoor.symmetric[{tag}]"),
        PRODUCT_TOL,
        hl::prob_hit_a_before_b(&idx, 0.0, 1.0, -1.0).map(|p| (p, 0.5)),
    ));
    // Ratios of resolvents carry corrections in powers of q^(1 - 1/alpha); h_q converges faster.
    let rho = 1.0 - 1.0 / al;
    let limits: [(&str, QFn, Result<f64>, Option<f64>); 4] = [
        (
            "limit.a_before_b",
            Box::new(|q| hl::lt_t_a_before_b(&idx, q, 0.0, 1.0, 2.0)),
            hl::prob_hit_a_before_b(&idx, 0.0, 1.0, 2.0),
            Some(rho),
        ),
        ("limit.h_q", Box::new(|q| h_q(&idx, q, 1.0)), h_limit(&idx, 1.0), None),
        (
            "limit.exc_n_joint",
            Box::new(|q| hl::exc_n_joint(&idx, q, q, 1.0)),
            hl::exc_n_hits(&idx, 1.0),
            Some(rho),
        ),
        (
            "limit.exc_m_joint",
            Box::new(|q| hl::exc_m_joint(&idx, q, q, 1.0)),
            hl::exc_m_hits(&idx, 1.0),
            Some(rho),
        ),
    ];
    for (name, f, target, order) in limits {
        let id = format!("{name}[{tag}]");
        let (lim, tol) = match order {
            Some(rho) => (hl::q_limit_with_exponent(f, rho), RATIO_LIMIT_TOL),
            None => (hl::q_limit(f), LIMIT_TOL),
        };
        match (lim, target) {
            (Ok(l), Ok(t)) => out.push(
                VerificationReport::relative(id, l.value, t, tol)
                    .with_notes(format!("samples={:?}, converging={}", l.samples, l.converging)),
            ),
            (Err(e), _) | (_, Err(e)) => out.push(VerificationReport::errored(id, &e)),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// mc_vs_formula

fn mc_jobs(grid: &[StableIndex], n: usize) -> Vec<Job> {
    let mut jobs = Vec::new();
    for &idx in grid {
        let al = idx.alpha();
        if idx.require_hitting().is_ok() {
            jobs.push(job(move |seed, base| mc_t_point(idx, n, seed, base)));
        }
        jobs.push(job(move |seed, base| mc_rayleigh(al, n, seed, base)));
        jobs.push(job(move |seed, base| mc_stable_and_linnik(al, n, seed, base)));
        if al > 1.0 {
            jobs.push(job(move |seed, base| mc_alpha_cauchy(al, n, seed, base)));
        }
        jobs.push(job(move |seed, base| mc_overshoot(al, n, seed, base)));
        if al < 2.0 {
            jobs.push(job(move |seed, base| mc_unilateral(0.5 * al, n, seed, base)));
        }
    }
    jobs.push(job(move |seed, base| mc_elementary(n, seed, base)));
    jobs.push(job(move |seed, base| mc_gamma_series(0.5, n, seed, base)));
    jobs.push(job(move |seed, base| mc_gamma_series(1.0, n, seed, base)));
    jobs
}

const T_POINT_RATES: [f64; 3] = [0.5, 1.0, 2.0];

fn mc_t_point(idx: StableIndex, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let al = idx.alpha();
    let sampler = match HittingTime::new(&idx, 1.0) {
        Ok(s) => s,
        Err(e) => return vec![VerificationReport::errored(format!("mc.t_point[alpha={al}]"), &e)],
    };
    let stats = monte_carlo_multi(n, seed, base, T_POINT_RATES.len(), |s, row| {
        let t = sampler.sample(s);
        for (slot, q) in row.iter_mut().zip(T_POINT_RATES) {
            *slot = (-q * t).exp();
        }
    });
    T_POINT_RATES
        .iter()
        .zip(&stats)
        .map(|(&q, st)| {
            let id = format!("mc.t_point[alpha={al},q={q},a=1]");
            match hl::lt_t_point(&idx, q, 0.0, 1.0) {
                Ok(exact) => mc_report(id, st.mean, st.stderr, exact, n),
                Err(e) => VerificationReport::errored(id, &e),
            }
        })
        .collect()
}

/// Distribution function of the alpha-Rayleigh law, tabulated from its survival function.
pub fn rayleigh_cdf_table(alpha: f64) -> Result<TabulatedCdf> {
    let mut xs: Vec<f64> = (0..=400).map(|i| i as f64 * 0.025).collect();
    let mut x = 10.0;
    while x < 5000.0 {
        x *= 1.05;
        xs.push(x);
    }
    let fs = xs
        .iter()
        .map(|&x| rayleigh_survival(alpha, x).map(|s| 1.0 - s))
        .collect::<Result<Vec<f64>>>()?;
    let mut running: f64 = 0.0;
    let fs = fs
        .into_iter()
        .map(|f| {
            running = running.max(f);
            running
        })
        .collect();
    Ok(TabulatedCdf::new(xs, fs))
}

/// KS distance between sorted alpha-Rayleigh draws and `1 - rayleigh_survival`.
pub fn rayleigh_ks(alpha: f64, sorted: &[f64]) -> Result<f64> {
    let table = rayleigh_cdf_table(alpha)?;
    Ok(ks_statistic(sorted, |x| {
        table
            .eval(x)
            .unwrap_or_else(|| 1.0 - rayleigh_survival(alpha, x).unwrap_or(f64::NAN))
    }))
}

fn mc_rayleigh(alpha: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let id = format!("mc.rayleigh_ks[alpha={alpha}]");
    let sampler = match AlphaRayleigh::new(alpha) {
        Ok(s) => s,
        Err(e) => return vec![VerificationReport::errored(id, &e)],
    };
    let draws = sorted(draw_many(n, seed, base, |s| sampler.sample(s)));
    let nonneg = draws.first().is_none_or(|&x| x >= 0.0);
    vec![
        ks_report(id, rayleigh_ks(alpha, &draws), n, KS_LIMIT),
        VerificationReport::condition(format!("mc.rayleigh_nonnegative[alpha={alpha}]"), nonneg, ""),
    ]
}

fn mc_stable_and_linnik(alpha: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let stats = monte_carlo_multi(n, seed, base, 3, |s, row| {
        let x = sample_sym_stable(alpha, s).unwrap_or(f64::NAN);
        row[0] = x.cos();
        row[1] = x.signum();
        row[2] = sample_linnik(alpha, s).unwrap_or(f64::NAN).cos();
    });
    vec![
        mc_report(
            format!("mc.stable_charfn[alpha={alpha},theta=1]"),
            stats[0].mean,
            stats[0].stderr,
            (-1.0f64).exp(),
            n,
        ),
        mc_report(
            format!("mc.stable_sign[alpha={alpha}]"),
            stats[1].mean,
            stats[1].stderr,
            0.0,
            n,
        ),
        mc_report(
            format!("mc.linnik_charfn[alpha={alpha},theta=1]"),
            stats[2].mean,
            stats[2].stderr,
            0.5,
            n,
        ),
    ]
}

/// KS distance between sorted alpha-Cauchy draws and the integrated density.
pub fn alpha_cauchy_ks(alpha: f64, sorted: &[f64]) -> Result<f64> {
    let x0 = match sorted.first() {
        Some(&x) => x,
        None => return Ok(0.0),
    };
    let f = |x: f64| alpha_cauchy_density(alpha, x).unwrap_or(f64::NAN);
    let first = if x0 < 0.0 {
        integrate_power_tail(f, -x0, alpha, &quad())?
    } else {
        0.5 + integrate_adaptive(f, 0.0, x0, &quad())?
    };
    Ok(ks_statistic_from_density(sorted, first, f))
}

fn mc_alpha_cauchy(alpha: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let id = format!("mc.alpha_cauchy_ks[alpha={alpha}]");
    let sampler = match AlphaCauchy::new(alpha) {
        Ok(s) => s,
        Err(e) => return vec![VerificationReport::errored(id, &e)],
    };
    let draws = sorted(draw_many(n, seed, base, |s| sampler.sample(s)));
    let negative = draws.partition_point(|&x| x < 0.0) as f64 / n as f64;
    let half_se = 0.5 / (n as f64).sqrt();
    vec![
        ks_report(id, alpha_cauchy_ks(alpha, &draws), n, KS_LIMIT),
        mc_report(
            format!("mc.alpha_cauchy_sign[alpha={alpha}]"),
            negative,
            half_se,
            0.5,
            n,
        ),
    ]
}

fn mc_overshoot(alpha: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let id = format!("mc.overshoot[alpha={alpha},a=1]");
    let sampler = match Overshoot::new(alpha, 1.0) {
        Ok(s) => s,
        Err(e) => return vec![VerificationReport::errored(id, &e)],
    };
    let draws = sorted(draw_many(n, seed, base, |s| sampler.sample(s)));
    if alpha == 2.0 {
        let zero = draws.iter().all(|&x| x == 0.0);
        return vec![VerificationReport::condition(
            format!("{id}.zero"),
            zero,
            "continuous paths do not overshoot",
        )];
    }
    let (a, b) = (1.0 - 0.5 * alpha, 0.5 * alpha);
    let first = beta_reg(a, b, draws[0] / (1.0 + draws[0]));
    let ks = Ok(ks_statistic_from_density(&draws, first, |x| {
        beta_prime_density(a, b, x).unwrap_or(f64::NAN)
    }));
    vec![ks_report(format!("{id}.ks"), ks, n, KS_LIMIT)]
}

fn mc_unilateral(beta: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let tilted = match SizeBiasedStable::new(beta) {
        Ok(s) => s,
        Err(e) => return vec![VerificationReport::errored(format!("mc.size_biased[beta={beta}]"), &e)],
    };
    let stats = monte_carlo_multi(n, seed, base, 3, |s, row| {
        let t = sample_unilateral_stable(beta, s).unwrap_or(f64::NAN);
        row[0] = (-t).exp();
        row[1] = (-t).exp() / t.sqrt();
        row[2] = (-tilted.sample(s)).exp();
    });
    let mut out = vec![mc_report(
        format!("mc.unilateral_lt[beta={beta},lambda=1]"),
        stats[0].mean,
        stats[0].stderr,
        (-1.0f64).exp(),
        n,
    )];
    let id = format!("mc.size_biased_lt[beta={beta},lambda=1]");
    match unilateral_stable_moment(beta, -0.5) {
        Ok(norm) => {
            let rhs = stats[1].mean / norm;
            let se = stats[2].stderr.hypot(stats[1].stderr / norm);
            out.push(
                VerificationReport::absolute(id, stats[2].mean, rhs, MC_SIGMAS * se)
                    .with_samples(n)
                    .with_notes(format!("stderr={se:.3e}, E[T^-1/2]={norm:.12}")),
            );
        }
        Err(e) => out.push(VerificationReport::errored(id, &e)),
    }
    out
}

fn mc_elementary(n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let (a, b) = (0.7, 1.9);
    let stats = monte_carlo_multi(n, seed, base, 6, |s, row| {
        let ga = sample_gamma(a, s).unwrap_or(f64::NAN);
        let gb = sample_gamma(b, s).unwrap_or(f64::NAN);
        let beta = sample_beta(a, b, s).unwrap_or(f64::NAN);
        let gab = sample_gamma(a + b, s).unwrap_or(f64::NAN);
        row[0] = ga;
        row[1] = beta;
        row[2] = ga * gb;
        row[3] = beta * gab * (1.0 - beta) * gab;
        row[4] = ga * ga;
        row[5] = (beta * gab).powi(2);
    });
    let g = |i: usize| (stats[i].mean, stats[i].stderr);
    let mut out = vec![
        mc_report("mc.gamma_mean[a=0.7]".into(), g(0).0, g(0).1, a, n),
        mc_report("mc.beta_mean[a=0.7,b=1.9]".into(), g(1).0, g(1).1, a / (a + b), n),
    ];
    // (G_a, G_b) and (B G_{a+b}, (1 - B) G_{a+b}) share first and second mixed moments.
    let pairs = [(2, 3, "mixed"), (4, 5, "square")];
    for (i, j, name) in pairs {
        let se = stats[i].stderr.hypot(stats[j].stderr);
        out.push(
            VerificationReport::absolute(
                format!("mc.beta_gamma_{name}_moment"),
                stats[i].mean,
                stats[j].mean,
                MC_SIGMAS * se,
            )
            .with_samples(n),
        );
    }
    out
}

fn mc_gamma_series(a: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let n_gs = (n / 10).max(2);
    let series = match GammaSeries::new(a, 1.0, SUITE_SERIES_TERMS) {
        Ok(s) => s,
        Err(e) => return vec![VerificationReport::errored(format!("mc.gamma_series[a={a}]"), &e)],
    };
    let lambdas = [0.5, 1.0];
    let stats = monte_carlo_multi(n_gs, seed, base, 3, |s, row| {
        let c = series.sample(s);
        row[0] = (-lambdas[0] * c).exp();
        row[1] = (-lambdas[1] * c).exp();
        row[2] = c;
    });
    let mut out = Vec::new();
    for (k, &l) in lambdas.iter().enumerate() {
        let th = (2.0 * l).sqrt();
        let exact = if a == 0.5 { 1.0 / th.cosh() } else { th / th.sinh() };
        let bound = series.truncation_bound(l);
        out.push(
            VerificationReport::absolute(
                format!("mc.gamma_series_lt[a={a},lambda={l}]"),
                stats[k].mean,
                exact,
                MC_SIGMAS * stats[k].stderr + bound,
            )
            .with_samples(n_gs)
            .with_notes(format!("terms={SUITE_SERIES_TERMS}, truncation_bound={bound:.3e}")),
        );
    }
    out.push(mc_report(
        format!("mc.gamma_series_mean[a={a}]"),
        stats[2].mean,
        stats[2].stderr,
        series.mean(),
        n_gs,
    ));
    out
}

// ---------------------------------------------------------------------------
// relation_R

const RELATION_THETAS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const RELATION_TOL: f64 = 1e-6;

fn relation_r_jobs(grid: &[StableIndex]) -> Vec<Job> {
    grid.iter()
        .map(|idx| {
            let al = idx.alpha();
            job(move |_, _| relation_r(al))
        })
        .collect()
}

fn relation_r(alpha: f64) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let c = match alpha_cauchy_constant(alpha) {
        Ok(c) => c,
        Err(e) => return vec![VerificationReport::errored(format!("relation_R[alpha={alpha}]"), &e)],
    };
    // Integrating c / (1 + |x|^alpha) against cos(theta x) gives 2 pi c times the
    // Linnik density at theta, not c times it.
    let corrected = 2.0 * PI * c;
    for th in RELATION_THETAS {
        let tag = format!("alpha={alpha},theta={th}");
        match (alpha_cauchy_charfn(alpha, th), linnik_density(alpha, th)) {
            (Ok(phi), Ok(l)) => {
                out.push(
                    VerificationReport::absolute(format!("relation_R.stated[{tag}]"), phi, c * l, RELATION_TOL)
                        .with_notes(format!("constant={c:.15}")),
                );
                out.push(
                    VerificationReport::absolute(
                        format!("relation_R.corrected[{tag}]"),
                        phi,
                        corrected * l,
                        RELATION_TOL,
                    )
                    .with_notes(format!("constant={corrected:.15}")),
                );
                out.push(compare(
                    format!("relation_R.corrected_mixture[{tag}]"),
                    RELATION_TOL,
                    linnik_density_mixture(alpha, th).map(|m| (phi, corrected * m)),
                ));
            }
            (Err(e), _) | (_, Err(e)) => out.push(VerificationReport::errored(format!("relation_R[{tag}]"), &e)),
        }
        out.push(compare(
            format!("alpha_cauchy_charfn.even[{tag}]"),
            0.0,
            (|| Ok((alpha_cauchy_charfn(alpha, th)?, alpha_cauchy_charfn(alpha, -th)?)))(),
        ));
    }
    out.push(compare(
        format!("alpha_cauchy_charfn.origin[alpha={alpha}]"),
        RELATION_TOL,
        alpha_cauchy_charfn(alpha, 0.0).map(|v| (v, 1.0)),
    ));
    out
}

// ---------------------------------------------------------------------------
// excursion

const STIELTJES_TRIPLES: [(f64, f64, f64); 2] = [(1.0, 1.0, 1.0), (2.0, 1.0, 0.5)];

/// `E[1 / (p + q B + r B U^(-1/gamma))]` with `B ~ Beta(1 - gamma, gamma)` and `U` uniform,
/// by nested quadrature.
pub fn stieltjes_quadrature(gamma: f64, p: f64, q: f64, r: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!(
            "excursion index must lie in (0, 1), got {gamma}"
        )));
    }
    if !(p > 0.0 && q >= 0.0 && r >= 0.0) {
        return Err(Error::Domain(format!("need p > 0 and q, r >= 0, got ({p}, {q}, {r})")));
    }
    let spec = QuadSpec::default().with_abs_tol(1e-13).with_rel_tol(1e-12);
    let inv = 1.0 / gamma;
    let mut failure = None;
    let v = integrate_beta_weighted(
        |b: f64| {
            // 1 / (p + q b + r b u^(-1/gamma)) = w / ((p + q b) w + r b) with w = u^(1/gamma)
            let inner = integrate_adaptive(
                |u: f64| {
                    let w = u.powf(inv);
                    w / ((p + q * b) * w + r * b)
                },
                0.0,
                1.0,
                &spec,
            );
            inner.unwrap_or_else(|e| {
                failure = Some(e);
                f64::NAN
            })
        },
        1.0 - gamma,
        gamma,
        &spec,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

fn excursion_jobs(grid: &[StableIndex], n: usize) -> Vec<Job> {
    let mut jobs = Vec::new();
    for idx in grid {
        let gamma = 1.0 - 1.0 / idx.alpha();
        jobs.push(job(move |seed, base| excursion_stieltjes(gamma, n, seed, base)));
        jobs.push(job(move |seed, base| excursion_exp_time(gamma, n, seed, base)));
    }
    jobs
}

fn excursion_stieltjes(gamma: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let pair = match ExcursionPair::new(gamma) {
        Ok(p) => p,
        Err(e) => return vec![VerificationReport::errored(format!("excursion[gamma={gamma}]"), &e)],
    };
    let stats = monte_carlo_multi(n, seed, base, STIELTJES_TRIPLES.len() + 1, |s, row| {
        let (xi, delta) = pair.sample(s);
        for (slot, (p, q, r)) in row.iter_mut().zip(STIELTJES_TRIPLES) {
            *slot = 1.0 / (p + q * xi + r * delta);
        }
        row[STIELTJES_TRIPLES.len()] = if xi <= delta { 0.0 } else { 1.0 };
    });
    let mut out = Vec::new();
    for (k, (p, q, r)) in STIELTJES_TRIPLES.into_iter().enumerate() {
        let id = format!("excursion.stieltjes[gamma={gamma:.6},p={p},q={q},r={r}]");
        match stieltjes_quadrature(gamma, p, q, r) {
            Ok(v) => out.push(mc_report(id, stats[k].mean, stats[k].stderr, v, n)),
            Err(e) => out.push(VerificationReport::errored(id, &e)),
        }
    }
    let violations = stats[STIELTJES_TRIPLES.len()].mean;
    out.push(VerificationReport::condition(
        format!("excursion.age_below_duration[gamma={gamma:.6}]"),
        violations == 0.0,
        format!("violation fraction {violations}"),
    ));
    out
}

fn excursion_exp_time(gamma: f64, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let triplet = match ExcursionExpTriplet::new(gamma) {
        Ok(t) => t,
        Err(e) => {
            return vec![VerificationReport::errored(
                format!("excursion.exp_time[gamma={gamma}]"),
                &e,
            )]
        }
    };
    let stats = monte_carlo_multi(n, seed, base, 4, |s, row| {
        let (g, xi, delta) = triplet.sample(s);
        row[0] = g;
        row[1] = xi;
        row[2] = g * g;
        row[3] = if xi <= delta { 0.0 } else { 1.0 };
    });
    vec![
        mc_report(
            format!("excursion.exp_time.g_mean[gamma={gamma:.6}]"),
            stats[0].mean,
            stats[0].stderr,
            gamma,
            n,
        ),
        mc_report(
            format!("excursion.exp_time.xi_mean[gamma={gamma:.6}]"),
            stats[1].mean,
            stats[1].stderr,
            1.0 - gamma,
            n,
        ),
        mc_report(
            format!("excursion.exp_time.g_second_moment[gamma={gamma:.6}]"),
            stats[2].mean,
            stats[2].stderr,
            gamma * (gamma + 1.0),
            n,
        ),
        VerificationReport::condition(
            format!("excursion.exp_time.age_below_duration[gamma={gamma:.6}]"),
            stats[3].mean == 0.0,
            "",
        ),
    ]
}

// ---------------------------------------------------------------------------
// appendix and normalizations

const APPENDIX_ALPHAS: [f64; 5] = [1.1, 1.5, 2.0, 2.5, 2.9];
const APPENDIX_TOL: f64 = 1e-8;
const NORMALIZATION_TOL: f64 = 1e-6;

fn appendix_jobs(grid: &[StableIndex]) -> Vec<Job> {
    let mut jobs = vec![job(|_, _| appendix_constants()), job(|_, _| named_law_normalizations())];
    for &idx in grid {
        jobs.push(job(move |_, _| index_normalizations(idx)));
    }
    jobs
}

fn appendix_constants() -> Vec<VerificationReport> {
    APPENDIX_ALPHAS
        .iter()
        .map(|&al| {
            compare(
                format!("appendix.integral[alpha={al}]"),
                APPENDIX_TOL,
                (|| Ok((appendix_integral(al)?, appendix_closed_form(al)?)))(),
            )
        })
        .collect()
}

/// `int_0^inf f` for a density with an algebraic singularity `x^(k-1)` at 0,
/// after `x = s^(1/k)` on `(0, 1)`.
fn integrate_from_singular_origin<F: Fn(f64) -> f64>(f: F, k: f64, decay: f64) -> Result<f64> {
    let m = 1.0 / k.min(1.0);
    let head = integrate_adaptive(
        |s: f64| {
            if s <= 0.0 {
                return 0.0;
            }
            let x = s.powf(m);
            f(x) * m * s.powf(m - 1.0)
        },
        0.0,
        1.0,
        &quad(),
    )?;
    Ok(head + integrate_power_tail(&f, 1.0, decay, &quad())?)
}

fn normalization(id: String, r: Result<f64>) -> VerificationReport {
    compare(id, NORMALIZATION_TOL, r.map(|v| (v, 1.0)))
}

fn named_law_normalizations() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for (a, b) in [(0.5, 0.5), (2.0, 3.0), (1.0 / 3.0, 2.0 / 3.0)] {
        out.push(normalization(
            format!("normalization.beta_prime[a={a:.6},b={b:.6}]"),
            integrate_from_singular_origin(|x| beta_prime_density(a, b, x).unwrap_or(f64::NAN), a, 1.0 + b),
        ));
    }
    for al in [1.5, 2.0, 3.0] {
        out.push(normalization(
            format!("normalization.alpha_cauchy[alpha={al}]"),
            integrate_power_tail(|x| alpha_cauchy_density(al, x).unwrap_or(f64::NAN), 0.0, al, &quad())
                .map(|v| 2.0 * v),
        ));
    }
    for a in [0.5, 1.0, 2.0] {
        out.push(normalization(
            format!("normalization.z[a={a}]"),
            integrate_adaptive(|x| z_density(a, x).unwrap_or(f64::NAN), 0.0, f64::INFINITY, &quad()).map(|v| 2.0 * v),
        ));
    }
    for th in [0.5, 1.0, 2.0] {
        out.push(compare(
            format!("z.charfn[a=0.5,theta={th}]"),
            NORMALIZATION_TOL,
            integrate_oscillatory_cos(|x| z_density(0.5, x).unwrap_or(f64::NAN), th, &quad())
                .map(|v| (2.0 * v, 1.0 / th.cosh())),
        ));
    }
    for (beta, t) in [(0.0, 1.0), (0.5, 1.0), (-1.0, 2.0), (0.0, 0.5)] {
        let f = |x: f64| meixner_density(beta, t, x).unwrap_or(f64::NAN);
        let spec = quad();
        let r = (|| {
            Ok(integrate_adaptive(f, 0.0, f64::INFINITY, &spec)?
                + integrate_adaptive(|x| f(-x), 0.0, f64::INFINITY, &spec)?)
        })();
        out.push(normalization(format!("normalization.meixner[beta={beta},t={t}]"), r));
    }
    let id = "meixner.mean_sign[beta=0.5,t=1]".to_string();
    let f = |x: f64| x * meixner_density(0.5, 1.0, x).unwrap_or(f64::NAN);
    match (|| {
        Ok(integrate_adaptive(f, 0.0, f64::INFINITY, &quad())?
            + integrate_adaptive(|x| f(-x), 0.0, f64::INFINITY, &quad())?)
    })() {
        Ok(m) => out.push(VerificationReport::condition(id, m > 0.0, format!("mean={m:.9}"))),
        Err(e) => out.push(VerificationReport::errored(id, &e)),
    }
    out
}

fn index_normalizations(idx: StableIndex) -> Vec<VerificationReport> {
    let al = idx.alpha();
    let mut out = vec![normalization(
        format!("normalization.stable_density[alpha={al}]"),
        integrate_power_tail(|x| density_p(&idx, 1.0, x).unwrap_or(f64::NAN), 0.0, 1.0 + al, &quad()).map(|v| 2.0 * v),
    )];
    if idx.require_hitting().is_ok() {
        out.push(normalization(
            format!("normalization.linnik[alpha={al}]"),
            integrate_power_tail(|x| linnik_density(al, x).unwrap_or(f64::NAN), 0.0, 1.0 + al, &quad())
                .map(|v| 2.0 * v),
        ));
        out.push(compare(
            format!("appendix.h_one[alpha={al}]"),
            APPENDIX_TOL,
            (|| Ok((appendix_integral(al)?, h_one(&idx)?)))(),
        ));
        out.push(normalization(
            format!("normalization.alpha_cauchy[alpha={al}]"),
            integrate_power_tail(|x| alpha_cauchy_density(al, x).unwrap_or(f64::NAN), 0.0, al, &quad())
                .map(|v| 2.0 * v),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// inversion

const EXPONENTIAL_TIMES: [f64; 8] = [0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0];
const EXPONENTIAL_TOL: f64 = 1e-6;
const QUANTILE_LEVELS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
const QUANTILE_TOL: f64 = 1e-3;
const TABLE_SIZE: usize = 256;

fn exponential_lt() -> LaplaceTransform {
    LaplaceTransform::new("exponential", 0.0, |q| Ok(1.0 / (1.0 + q)))
}

/// `tanh(sqrt(2 l)) / sqrt(2 l)`, the transform of the `T` law at unit time.
pub fn tanh_lt() -> LaplaceTransform {
    LaplaceTransform::new("tanh", 0.0, |l: f64| {
        let x = (2.0 * l).sqrt();
        Ok(if x < 1e-8 { 1.0 - x * x / 3.0 } else { x.tanh() / x })
    })
}

fn inversion_jobs(grid: &[StableIndex], n: usize) -> Vec<Job> {
    let mut jobs = vec![job(|_, _| inversion_closed_forms())];
    for &idx in grid {
        if idx.require_hitting().is_ok() {
            jobs.push(job(move |seed, base| inversion_vs_samples(idx, n, seed, base)));
        }
    }
    jobs.push(job(move |seed, base| table_sampler_checks(n, seed, base)));
    jobs
}

fn inversion_closed_forms() -> Vec<VerificationReport> {
    let lt = exponential_lt();
    let mut out: Vec<VerificationReport> = EXPONENTIAL_TIMES
        .iter()
        .map(|&t| {
            compare(
                format!("inversion.exponential[t={t}]"),
                EXPONENTIAL_TOL,
                laplace_invert_cdf(&lt, t, EXPONENTIAL_GS_TERMS).map(|v| (v, -(-t).exp_m1())),
            )
            .with_notes(format!("n_terms={EXPONENTIAL_GS_TERMS}"))
        })
        .collect();
    let half = LaplaceTransform::new("exp(-sqrt q)", 0.0, |q: f64| Ok((-q.sqrt()).exp()));
    out.push(
        compare(
            "inversion.one_sided_half_stable[t=1]".into(),
            1e-4,
            laplace_invert_cdf(&half, 1.0, 16).map(|v| (v, erfc(0.5))),
        )
        .with_notes("n_terms=16"),
    );
    out
}

fn inversion_vs_samples(idx: StableIndex, n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let al = idx.alpha();
    let tag = format!("alpha={al},a=1");
    let lt = match HittingLaw::TPoint.transform(idx, 1.0) {
        Ok(lt) => lt,
        Err(e) => return vec![VerificationReport::errored(format!("inversion.t_point[{tag}]"), &e)],
    };
    let mut out = Vec::new();
    let grid: Vec<f64> = (-8..=16).map(|k| 2f64.powi(k)).collect();
    let values: Result<Vec<f64>> = grid
        .iter()
        .map(|&t| laplace_invert_cdf(&lt, t, HITTING_GS_TERMS))
        .collect();
    match values {
        Ok(v) => {
            let worst = v.windows(2).map(|w| w[0] - w[1]).fold(0.0f64, f64::max);
            out.push(VerificationReport::condition(
                format!("inversion.t_point_monotone[{tag}]"),
                worst <= 0.0,
                format!("largest decrease {worst:.3e} on t = 2^-8 .. 2^16"),
            ));
        }
        Err(e) => out.push(VerificationReport::errored(
            format!("inversion.t_point_monotone[{tag}]"),
            &e,
        )),
    }
    let sampler = match HittingTime::new(&idx, 1.0) {
        Ok(s) => s,
        Err(e) => {
            out.push(VerificationReport::errored(format!("inversion.t_point[{tag}]"), &e));
            return out;
        }
    };
    let draws = sorted(draw_many(n, seed, base, |s| sampler.sample(s)));
    for p in QUANTILE_LEVELS {
        let k = ((p * n as f64).ceil() as usize).clamp(1, n);
        let t = draws[k - 1];
        let empirical = k as f64 / n as f64;
        let noise = (empirical * (1.0 - empirical) / n as f64).sqrt();
        let id = format!("inversion.t_point_quantile[{tag},p={p}]");
        out.push(match laplace_invert_cdf(&lt, t, HITTING_GS_TERMS) {
            Ok(f) => VerificationReport::absolute(id, f, empirical, QUANTILE_TOL + 3.0 * noise)
                .with_samples(n)
                .with_notes(format!("t={t:.9e}, n_terms={HITTING_GS_TERMS}")),
            Err(e) => VerificationReport::errored(id, &e),
        });
    }
    out
}

fn table_sampler_checks(n: usize, seed: u64, base: u64) -> Vec<VerificationReport> {
    let n_small = (n / 10).max(2);
    let mut out = Vec::new();
    match LtTableSampler::build(&exponential_lt(), TABLE_SIZE) {
        Ok(table) => {
            let draws = sorted(draw_many(n_small, seed, base, |s| table.sample(s)));
            let ks = ks_statistic(&draws, |x| -(-x).exp_m1());
            out.push(VerificationReport::absolute("table.exponential_ks", ks, 0.0, 0.005).with_samples(n_small));
        }
        Err(e) => out.push(VerificationReport::errored("table.exponential_ks", &e)),
    }
    let phi = tanh_lt();
    match LtTableSampler::build(&phi, TABLE_SIZE) {
        Ok(table) => {
            // E[T] = -phi'(0+), forward differences with one Richardson step
            let d = |h: f64| (1.0 - phi.eval(h).unwrap_or(f64::NAN)) / h;
            let h = 1e-4;
            let mean = 2.0 * d(0.5 * h) - d(h);
            let series = match GammaSeries::new(1.0, 1.0, SUITE_SERIES_TERMS) {
                Ok(s) => s,
                Err(e) => {
                    out.push(VerificationReport::errored("table.tanh", &e));
                    return out;
                }
            };
            let cosh_series = GammaSeries::new(0.5, 1.0, SUITE_SERIES_TERMS).expect("valid series");
            let stats = monte_carlo_multi(n_small, seed, base + (1 << 20), 3, |s, row| {
                let t = table.sample(s);
                row[0] = t;
                row[1] = (-(t + series.sample(s))).exp();
                row[2] = (-cosh_series.sample(s)).exp();
            });
            out.push(
                mc_report("table.tanh_mean".into(), stats[0].mean, stats[0].stderr, mean, n_small)
                    .with_notes("flagged approximate: table sampler"),
            );
            let se = stats[1].stderr.hypot(stats[2].stderr);
            out.push(
                VerificationReport::absolute(
                    "table.tanh_plus_s_equals_c[lambda=1]",
                    stats[1].mean,
                    stats[2].mean,
                    MC_SIGMAS * se,
                )
                .with_samples(n_small)
                .with_notes(format!("stderr={se:.3e}")),
            );
        }
        Err(e) => out.push(VerificationReport::errored("table.tanh", &e)),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn stieltjes_at_zero_rates() {
        let v = stieltjes_quadrature(0.5, 2.0, 0.0, 0.0).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }
}
