use std::io::Write;
use std::process::ExitCode;

use clap::ValueEnum;

use stablehit::distributions::{linnik_density, meixner_density, rayleigh_survival, z_density};
use stablehit::hitting_laws::{self as hl, HittingLaw};
use stablehit::resolvent::{density_p, h_limit, h_q, resolvent_u, StableIndex};

use crate::{Failure, Grid, Outcome};

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Density,
    Resolvent,
    H,
    #[value(name = "lt-T")]
    LtT,
    #[value(name = "lt-G")]
    LtG,
    #[value(name = "lt-Xi")]
    LtXi,
    #[value(name = "lt-T-abs")]
    LtTAbs,
    #[value(name = "lt-G-abs")]
    LtGAbs,
    #[value(name = "lt-Xi-abs")]
    LtXiAbs,
    ExcN,
    ExcM,
    Getoor,
    Linnik,
    Meixner,
    Z,
    RayleighSurvival,
}

#[derive(Clone, Copy, PartialEq)]
enum P {
    Alpha,
    Q,
    R,
    X,
    A,
    B,
    T,
    Beta,
}

impl P {
    fn name(self) -> &'static str {
        match self {
            P::Alpha => "alpha",
            P::Q => "q",
            P::R => "r",
            P::X => "x",
            P::A => "a",
            P::B => "b",
            P::T => "t",
            P::Beta => "beta",
        }
    }

    fn values(self, g: &Grid) -> &[f64] {
        match self {
            P::Alpha => &g.alpha,
            P::Q => &g.q,
            P::R => &g.r,
            P::X => &g.x,
            P::A => &g.a,
            P::B => &g.b,
            P::T => &g.t,
            P::Beta => &g.beta,
        }
    }
}

const ALL: [P; 8] = [P::Alpha, P::Q, P::R, P::X, P::A, P::B, P::T, P::Beta];

/// Required and optional parameters; optional ones change the formula when present.
fn signature(kind: Kind) -> (&'static [P], &'static [P]) {
    match kind {
        Kind::Density => (&[P::Alpha, P::T, P::X], &[]),
        Kind::Resolvent => (&[P::Alpha, P::Q, P::X], &[]),
        Kind::H => (&[P::Alpha, P::X], &[P::Q]),
        Kind::LtT => (&[P::Alpha, P::Q, P::A], &[P::X]),
        Kind::LtG | Kind::LtXi | Kind::LtTAbs | Kind::LtGAbs | Kind::LtXiAbs => (&[P::Alpha, P::Q, P::A], &[]),
        Kind::ExcN | Kind::ExcM => (&[P::Alpha, P::A], &[P::Q, P::R]),
        Kind::Getoor => (&[P::Alpha, P::X, P::A, P::B], &[]),
        Kind::Linnik | Kind::RayleighSurvival => (&[P::Alpha, P::X], &[]),
        Kind::Meixner => (&[P::Beta, P::T, P::X], &[]),
        Kind::Z => (&[P::A, P::X], &[]),
    }
}

struct Point<'a> {
    names: &'a [P],
    values: &'a [f64],
}

impl Point<'_> {
    fn get(&self, p: P) -> Option<f64> {
        self.names.iter().position(|&n| n == p).map(|i| self.values[i])
    }

    fn req(&self, p: P) -> f64 {
        self.get(p).expect("required parameter present")
    }

    fn idx(&self) -> stablehit::Result<StableIndex> {
        StableIndex::hitting(self.req(P::Alpha))
    }
}

fn evaluate(kind: Kind, p: &Point) -> stablehit::Result<f64> {
    let law = |law: HittingLaw| law.eval(&p.idx()?, p.req(P::Q), p.req(P::A));
    match kind {
        Kind::Density => density_p(&StableIndex::new(p.req(P::Alpha))?, p.req(P::T), p.req(P::X)),
        Kind::Resolvent => resolvent_u(&p.idx()?, p.req(P::Q), p.req(P::X)),
        Kind::H => match p.get(P::Q) {
            Some(q) => h_q(&p.idx()?, q, p.req(P::X)),
            None => h_limit(&p.idx()?, p.req(P::X)),
        },
        Kind::LtT => hl::lt_t_point(&p.idx()?, p.req(P::Q), p.get(P::X).unwrap_or(0.0), p.req(P::A)),
        Kind::LtG => law(HittingLaw::GPoint),
        Kind::LtXi => law(HittingLaw::XiPoint),
        Kind::LtTAbs => law(HittingLaw::TAbs),
        Kind::LtGAbs => law(HittingLaw::GAbs),
        Kind::LtXiAbs => law(HittingLaw::XiAbs),
        Kind::ExcN => match (p.get(P::Q), p.get(P::R)) {
            (Some(q), Some(r)) => hl::exc_n_joint(&p.idx()?, q, r, p.req(P::A)),
            _ => hl::exc_n_hits(&p.idx()?, p.req(P::A)),
        },
        Kind::ExcM => match (p.get(P::Q), p.get(P::R)) {
            (Some(q), Some(r)) => hl::exc_m_joint(&p.idx()?, q, r, p.req(P::A)),
            _ => hl::exc_m_hits(&p.idx()?, p.req(P::A)),
        },
        Kind::Getoor => hl::prob_hit_a_before_b(&p.idx()?, p.req(P::X), p.req(P::A), p.req(P::B)),
        Kind::Linnik => linnik_density(p.req(P::Alpha), p.req(P::X)),
        Kind::Meixner => meixner_density(p.req(P::Beta), p.req(P::T), p.req(P::X)),
        Kind::Z => z_density(p.req(P::A), p.req(P::X)),
        Kind::RayleighSurvival => rayleigh_survival(p.req(P::Alpha), p.req(P::X)),
    }
}

pub fn run(kind: Kind, grid: &Grid, out: &mut impl Write) -> Outcome {
    let (required, optional) = signature(kind);
    let kind_name = kind
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    for p in required {
        if p.values(grid).is_empty() {
            return Err(Failure::Usage(format!("eval {kind_name} needs --{}", p.name())));
        }
    }
    if let Some(extra) = ALL
        .iter()
        .find(|p| !required.contains(p) && !optional.contains(p) && !p.values(grid).is_empty())
    {
        return Err(Failure::Usage(format!(
            "eval {kind_name} does not take --{}",
            extra.name()
        )));
    }
    if matches!(kind, Kind::ExcN | Kind::ExcM) && grid.q.is_empty() != grid.r.is_empty() {
        return Err(Failure::Usage(format!("eval {kind_name} takes --q and --r together")));
    }
    let names: Vec<P> = ALL.iter().copied().filter(|p| !p.values(grid).is_empty()).collect();
    let header: Vec<&str> = names.iter().map(|p| p.name()).chain(["value"]).collect();
    writeln!(out, "{}", header.join(","))?;

    let lists: Vec<&[f64]> = names.iter().map(|p| p.values(grid)).collect();
    let mut counter = vec![0usize; lists.len()];
    let mut values = vec![0.0; lists.len()];
    loop {
        for (i, list) in lists.iter().enumerate() {
            values[i] = list[counter[i]];
        }
        let v = evaluate(
            kind,
            &Point {
                names: &names,
                values: &values,
            },
        )?;
        let row: Vec<String> = values.iter().chain([&v]).map(f64::to_string).collect();
        writeln!(out, "{}", row.join(","))?;
        // odometer over the lists, last parameter fastest
        let mut i = lists.len();
        loop {
            if i == 0 {
                return Ok(ExitCode::SUCCESS);
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < lists[i].len() {
                break;
            }
            counter[i] = 0;
        }
    }
}
