use giant_ld::exact::{self, brute, parse_rational, EdgeProb, EventSpec, RATIONAL_MAX_N};
use giant_ld::rate::{self, AlphaParam, Density};
use giant_ld::verify::{self, CriterionReport, Scale};
use giant_ld::{saddle, sampler, LogProb};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::args::*;
use crate::error::CliError;
use crate::output::{Cell, Table};

/// Largest `n` for the floating point DPs.
pub const FLOAT_MAX_N: usize = 5000;

fn alpha(a: f64) -> Result<AlphaParam, CliError> {
    Ok(AlphaParam::new(a)?)
}

pub fn rate_curve(args: &RateCurveArgs) -> Result<Table, CliError> {
    if args.alpha.is_empty() {
        return Err(CliError::Usage("at least one alpha is required".into()));
    }
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    let mut t = Table::new(&["alpha", "rho", "phi", "psi_active"]);
    for &a in &args.alpha {
        let al = alpha(a)?;
        for i in 0..=args.steps {
            let rho = Density::new(i as f64 / args.steps as f64)?;
            let pt = rate::rate_point(rho, al);
            t.push(vec![a.into(), rho.value().into(), pt.phi.into(), pt.psi_active.into()]);
        }
    }
    Ok(t)
}

pub fn mean_field(args: &MeanFieldArgs) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "alpha",
        "rho_star",
        "phi_at_rho_star",
        "saddle_s_limit",
        "saddle_rho_limit",
        "saddle_theta_limit",
    ]);
    for &a in &args.alpha {
        let al = alpha(a)?;
        let rho = rate::mean_field_maximal(al);
        let lim = saddle::saddle_limits(al).ok();
        t.push(vec![
            a.into(),
            rho.value().into(),
            rate::phi(rho, al).into(),
            lim.map(|l| l.s).into(),
            lim.map(|l| l.rho).into(),
            lim.map(|l| l.theta).into(),
        ]);
    }
    Ok(t)
}

pub fn saddle(args: &SaddleArgs) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "alpha",
        "r",
        "s_r",
        "rho_r",
        "theta_r",
        "proxy_rate",
        "limit_rate",
        "residual_f",
        "residual_sfp",
    ]);
    for &a in &args.alpha {
        let al = alpha(a)?;
        for &r in &args.r {
            let sol = saddle::solve_saddle(al, r)?;
            let (rf, rs) = sol.residuals();
            t.push(vec![
                a.into(),
                r.into(),
                sol.s_r.into(),
                sol.rho_r.value().into(),
                sol.theta.into(),
                sol.proxy_rate().into(),
                saddle::trees_rate(al).into(),
                rf.into(),
                rs.into(),
            ]);
        }
    }
    Ok(t)
}

fn need_r(kind: EventKind, r: Option<Cutoff>, n: usize) -> Result<usize, CliError> {
    r.map(|c| c.resolve(n))
        .ok_or_else(|| CliError::Usage(format!("event {kind:?} needs --r")))
}

/// The event for `n`; `None` for a macro-volume event without `m`.
fn event_spec(kind: EventKind, r: Option<Cutoff>, m: Option<usize>, n: usize) -> Result<Option<EventSpec>, CliError> {
    let ev = match kind {
        EventKind::Connected => EventSpec::Connected,
        EventKind::NoCycles => EventSpec::NoCycles,
        EventKind::AllSmall => EventSpec::AllSmall(need_r(kind, r, n)?),
        EventKind::ForestSmall => EventSpec::NoCyclesAndSmall(need_r(kind, r, n)?),
        EventKind::MacroVolume => match m {
            Some(m) => EventSpec::MacroVolume { r: need_r(kind, r, n)?, m },
            None => return Ok(None),
        },
    };
    ev.validate(n)?;
    Ok(Some(ev))
}

fn dp_value(n: usize, p: &EdgeProb, ev: &EventSpec) -> giant_ld::Result<LogProb> {
    match *ev {
        EventSpec::Connected => exact::exact_connectivity(n, p),
        EventSpec::NoCycles => exact::exact_forest(n, p, None),
        EventSpec::AllSmall(r) => exact::exact_small_components(n, p, r),
        EventSpec::NoCyclesAndSmall(r) => exact::exact_forest(n, p, Some(r)),
        EventSpec::MacroVolume { r, m } => exact::exact_macro_volume(n, p, r, m),
    }
}

pub fn exact(args: &ExactArgs) -> Result<Table, CliError> {
    let n = args.n;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let p: BigRational = match (&args.p, &args.alpha) {
        (Some(p), _) => parse_rational(p)?,
        (None, Some(a)) => parse_rational(a)? / BigRational::from_integer(n.into()),
        (None, None) => return Err(CliError::Usage("give --p or --alpha".into())),
    };
    let arithmetic = args.arithmetic.unwrap_or(if n <= RATIONAL_MAX_N {
        Arithmetic::Rational
    } else {
        Arithmetic::Float
    });
    let edge = match arithmetic {
        Arithmetic::Rational => {
            if n > RATIONAL_MAX_N {
                return Err(giant_ld::Error::SizeLimit(format!(
                    "rational arithmetic supports n <= {RATIONAL_MAX_N}, got {n}; use --arithmetic float"
                ))
                .into());
            }
            EdgeProb::rational(p.clone())?
        }
        Arithmetic::Float => {
            if n > FLOAT_MAX_N {
                return Err(giant_ld::Error::SizeLimit(format!(
                    "float arithmetic supports n <= {FLOAT_MAX_N}, got {n}"
                ))
                .into());
            }
            EdgeProb::real(p.to_f64().unwrap_or(f64::NAN))?
        }
    };
    let ev = event_spec(args.event.event, args.event.r, args.event.m, n)?;
    let events: Vec<EventSpec> = match ev {
        Some(ev) => vec![ev],
        None => {
            let r = need_r(args.event.event, args.event.r, n)?;
            (0..=n).map(|m| EventSpec::MacroVolume { r, m }).collect()
        }
    };
    let law = match (ev, events.first()) {
        (None, Some(EventSpec::MacroVolume { r, .. })) => Some(exact::exact_macro_volume_law(n, &edge, *r)?),
        _ => None,
    };
    let mut t = Table::new(&["n", "p", "event", "arithmetic", "log_prob", "prob", "brute_force_prob"]);
    for (i, ev) in events.iter().enumerate() {
        let lp = match &law {
            Some(law) => law[i],
            None => dp_value(n, &edge, ev)?,
        };
        let brute = if n <= brute::BRUTE_MAX_N {
            Some(brute::brute_force_enumerate(n, &edge, ev)?.prob())
        } else {
            None
        };
        t.push(vec![
            n.into(),
            p.to_string().into(),
            ev.to_string().into(),
            match arithmetic {
                Arithmetic::Rational => "rational",
                Arithmetic::Float => "float",
            }
            .into(),
            lp.ln().into(),
            lp.prob().into(),
            brute.into(),
        ]);
    }
    Ok(t)
}

fn sample_event(args: &SampleArgs, n: usize) -> Result<EventSpec, CliError> {
    let kind = args
        .event
        .ok_or_else(|| CliError::Usage(format!("--mode {:?} needs --event", args.mode)))?;
    event_spec(kind, args.r, args.m, n)?
        .ok_or_else(|| CliError::Usage("macrovolume events need --m in this mode".into()))
}

pub fn sample(args: &SampleArgs, seed: u64) -> Result<Table, CliError> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    match args.mode {
        SampleMode::Estimate => {
            let mut t = Table::new(&["n", "alpha", "event", "p_hat", "ci_low", "ci_high", "samples", "seed"]);
            for &n in &args.n {
                let ev = sample_event(args, n)?;
                for &a in &args.alpha {
                    let e = sampler::estimate_event(n, alpha(a)?, &ev, args.samples, seed)?;
                    t.push(vec![
                        n.into(),
                        a.into(),
                        ev.to_string().into(),
                        e.p_hat.into(),
                        e.ci_low.into(),
                        e.ci_high.into(),
                        e.samples.into(),
                        e.seed.into(),
                    ]);
                }
            }
            Ok(t)
        }
        SampleMode::RateTable => {
            let mut t = Table::new(&[
                "alpha",
                "n",
                "event",
                "rate",
                "rate_ci_low",
                "rate_ci_high",
                "p_hat",
                "successes",
                "samples",
                "seed",
                "unresolved",
            ]);
            for &n in &args.n {
                let ev = sample_event(args, n)?;
                for row in sampler::empirical_rate_table(&args.alpha, &[n], &ev, args.samples, seed)? {
                    t.push(vec![
                        row.alpha.into(),
                        row.n.into(),
                        ev.to_string().into(),
                        row.rate.into(),
                        row.rate_ci.0.into(),
                        row.rate_ci.1.into(),
                        row.estimate.p_hat.into(),
                        row.estimate.successes.into(),
                        row.estimate.samples.into(),
                        seed.into(),
                        row.unresolved.into(),
                    ]);
                }
            }
            Ok(t)
        }
        SampleMode::Giant => {
            let mut t = Table::new(&["n", "alpha", "mean_fraction", "std_error", "rho_star", "samples", "seed"]);
            for &n in &args.n {
                for &a in &args.alpha {
                    let al = alpha(a)?;
                    let (mean, se) = sampler::giant_fraction(n, al, args.samples, seed)?;
                    t.push(vec![
                        n.into(),
                        a.into(),
                        mean.into(),
                        se.into(),
                        rate::mean_field_maximal(al).value().into(),
                        args.samples.into(),
                        seed.into(),
                    ]);
                }
            }
            Ok(t)
        }
        SampleMode::Histogram => {
            let mut t = Table::new(&["n", "alpha", "r", "m", "count", "fraction", "samples", "seed"]);
            for &n in &args.n {
                let r = args
                    .r
                    .ok_or_else(|| CliError::Usage("--mode histogram needs --r".into()))?
                    .resolve(n);
                EventSpec::MacroVolume { r, m: 0 }.validate(n)?;
                for &a in &args.alpha {
                    let hist = sampler::macro_volume_histogram(n, alpha(a)?, r, args.samples, seed)?;
                    for (m, &c) in hist.iter().enumerate() {
                        t.push(vec![
                            n.into(),
                            a.into(),
                            r.into(),
                            m.into(),
                            c.into(),
                            (c as f64 / args.samples as f64).into(),
                            args.samples.into(),
                            seed.into(),
                        ]);
                    }
                }
            }
            Ok(t)
        }
        SampleMode::Uniqueness => {
            let eps = args
                .epsilon
                .ok_or_else(|| CliError::Usage("--mode uniqueness needs --epsilon".into()))?;
            let mut t = Table::new(&["n", "alpha", "epsilon", "frequency", "samples", "seed"]);
            for &n in &args.n {
                for &a in &args.alpha {
                    let f = sampler::uniqueness_frequency(n, alpha(a)?, eps, args.samples, seed)?;
                    t.push(vec![
                        n.into(),
                        a.into(),
                        eps.into(),
                        f.into(),
                        args.samples.into(),
                        seed.into(),
                    ]);
                }
            }
            Ok(t)
        }
    }
}

pub fn verify_reports(args: &VerifyArgs) -> Result<Vec<CriterionReport>, CliError> {
    let scale = if args.quick { Scale::Quick } else { Scale::Full };
    if args.criterion.is_empty() {
        return Ok(verify::run_all(scale));
    }
    args.criterion
        .iter()
        .map(|&id| {
            verify::run_criterion(id, scale)
                .ok_or_else(|| CliError::Usage(format!("no criterion {id}; valid ids are 1 to 10")))
        })
        .collect()
}

pub fn verify_table(reports: &[CriterionReport]) -> Table {
    let mut t = Table::new(&["criterion", "name", "passed", "seconds", "detail"]);
    for r in reports {
        t.push(vec![
            Cell::Int(r.id.into()),
            r.name.into(),
            r.passed.into(),
            r.elapsed.as_secs_f64().into(),
            r.detail.clone().into(),
        ]);
    }
    t
}
