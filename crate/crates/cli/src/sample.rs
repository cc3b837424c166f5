use std::io::Write;
use std::process::ExitCode;

use clap::{Args, ValueEnum};

use stablehit::hitting_laws::HittingLaw;
use stablehit::resolvent::StableIndex;
use stablehit::sampling::{
    draw_blocks, sample_bernoulli_sign, sample_beta, sample_exponential, sample_gamma, sample_linnik,
    sample_sym_stable, sample_uniform, sample_unilateral_stable, AlphaCauchy, AlphaRayleigh, ExcursionExpTriplet,
    ExcursionPair, GammaSeries, HittingTime, LtTableSampler, Overshoot, RandomStream, SampleStats, SizeBiasedStable,
    DEFAULT_SERIES_TERMS,
};

use crate::{Failure, Outcome};

#[derive(Clone, Copy, ValueEnum)]
pub enum Dist {
    TPoint,
    Overshoot,
    AlphaCauchy,
    AlphaRayleigh,
    Linnik,
    SymStable,
    UnilateralStable,
    SizeBiasedStable,
    Excursion,
    ExcursionExp,
    GammaSeries,
    /// Inverse-CDF table built from `--law`'s Laplace transform.
    FromLt,
    Gamma,
    Beta,
    Exponential,
    Uniform,
    Sign,
}

#[derive(Args)]
pub struct Params {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    /// Series length for `gamma-series`.
    #[arg(long, default_value_t = DEFAULT_SERIES_TERMS)]
    terms: usize,
    /// Hitting law for `from-lt`.
    #[arg(long)]
    law: Option<HittingLaw>,
    /// Table size for `from-lt`.
    #[arg(long, default_value_t = 256)]
    table: usize,
}

fn need(v: Option<f64>, flag: &str, dist: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("sample {dist} needs --{flag}")))
}

type Draw = Box<dyn Fn(&mut RandomStream) -> Vec<f64> + Sync>;

fn one<F: Fn(&mut RandomStream) -> f64 + Sync + 'static>(f: F) -> Draw {
    Box::new(move |s| vec![f(s)])
}

/// Validates parameters once; the returned closure cannot fail.
fn sampler(dist: Dist, p: &Params) -> Result<(Vec<&'static str>, Draw), Failure> {
    let name = dist
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let name = name.as_str();
    let x = vec!["x"];
    Ok(match dist {
        Dist::TPoint => {
            let s = HittingTime::new(
                &StableIndex::hitting(need(p.alpha, "alpha", name)?)?,
                need(p.a, "a", name)?,
            )?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::Overshoot => {
            let s = Overshoot::new(need(p.alpha, "alpha", name)?, need(p.a, "a", name)?)?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::AlphaCauchy => {
            let s = AlphaCauchy::new(need(p.alpha, "alpha", name)?)?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::AlphaRayleigh => {
            let s = AlphaRayleigh::new(need(p.alpha, "alpha", name)?)?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::Linnik => {
            let al = need(p.alpha, "alpha", name)?;
            sample_linnik(al, &mut RandomStream::new(0, 0))?;
            (x, one(move |r| sample_linnik(al, r).expect("checked")))
        }
        Dist::SymStable => {
            let al = need(p.alpha, "alpha", name)?;
            sample_sym_stable(al, &mut RandomStream::new(0, 0))?;
            (x, one(move |r| sample_sym_stable(al, r).expect("checked")))
        }
        Dist::UnilateralStable => {
            let b = need(p.beta, "beta", name)?;
            sample_unilateral_stable(b, &mut RandomStream::new(0, 0))?;
            (x, one(move |r| sample_unilateral_stable(b, r).expect("checked")))
        }
        Dist::SizeBiasedStable => {
            let s = SizeBiasedStable::new(need(p.beta, "beta", name)?)?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::Excursion => {
            let s = ExcursionPair::new(need(p.gamma, "gamma", name)?)?;
            (
                vec!["xi", "delta"],
                Box::new(move |r| {
                    let (xi, d) = s.sample(r);
                    vec![xi, d]
                }),
            )
        }
        Dist::ExcursionExp => {
            let s = ExcursionExpTriplet::new(need(p.gamma, "gamma", name)?)?;
            (
                vec!["g", "xi", "delta"],
                Box::new(move |r| {
                    let (g, xi, d) = s.sample(r);
                    vec![g, xi, d]
                }),
            )
        }
        Dist::GammaSeries => {
            let s = GammaSeries::new(need(p.a, "a", name)?, p.t.unwrap_or(1.0), p.terms)?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::FromLt => {
            let law = p
                .law
                .ok_or_else(|| Failure::Usage("sample from-lt needs --law".into()))?;
            let lt = law.transform(StableIndex::hitting(need(p.alpha, "alpha", name)?)?, p.a.unwrap_or(1.0))?;
            let s = LtTableSampler::build(&lt, p.table)?;
            (x, one(move |r| s.sample(r)))
        }
        Dist::Gamma => {
            let a = need(p.a, "a", name)?;
            sample_gamma(a, &mut RandomStream::new(0, 0))?;
            (x, one(move |r| sample_gamma(a, r).expect("checked")))
        }
        Dist::Beta => {
            let (a, b) = (need(p.a, "a", name)?, need(p.b, "b", name)?);
            sample_beta(a, b, &mut RandomStream::new(0, 0))?;
            (x, one(move |r| sample_beta(a, b, r).expect("checked")))
        }
        Dist::Exponential => (x, one(sample_exponential)),
        Dist::Uniform => (x, one(sample_uniform)),
        Dist::Sign => (x, one(sample_bernoulli_sign)),
    })
}

pub fn run(
    dist: Dist,
    p: &Params,
    n: usize,
    summary: bool,
    seed: u64,
    streams: usize,
    out: &mut impl Write,
) -> Outcome {
    let (columns, draw) = sampler(dist, p)?;
    let rows = draw_blocks(n, seed, streams, |s| draw(s));
    if summary {
        writeln!(out, "column,n,mean,variance,stderr")?;
        for (k, col) in columns.iter().enumerate() {
            let values: Vec<f64> = rows.iter().map(|r| r[k]).collect();
            let st = SampleStats::from_values(&values);
            writeln!(out, "{col},{},{},{},{}", st.n, st.mean, st.variance, st.stderr)?;
        }
    } else {
        writeln!(out, "{}", columns.join(","))?;
        for row in rows {
            let cells: Vec<String> = row.iter().map(f64::to_string).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
