//! `table`, `state`, `overlap`, `evolve` and `kernel`.

use crate::config::{
    self, EvolveConfig, KernelConfig, KjConfig, OverlapConfig, StateConfig, StateSpec, TransitionConfig,
};
use crate::output::{Cell, Record, Report, Table};
use crate::{lib_err, CliError};
use circleqm::circlespace::{inner, uncertainty_report, CircleState, Op};
use circleqm::evolve::{evolve_min, fidelity, kernel, kernel_transformed, propagate, EvolutionSpec};
use circleqm::ladder::{kj_report, LadderContext};
use circleqm::mincs::{min_expectations, min_overlap, min_state};
use circleqm::specfun::g_ratio;
use circleqm::zakcs::{normalization, transition_prob, w_expectations, w_overlap, w_state_normalized};
use circleqm::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableName {
    MincsG,
    Transition,
    Kj,
}

const PAPER_X: [f64; 9] = [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0];

pub fn table(name: TableName, source: impl FnOnce() -> Result<String, CliError>, tol: f64) -> Result<Report, CliError> {
    match name {
        TableName::MincsG => g_table(),
        TableName::Transition => {
            let c: TransitionConfig = config::parse(&source()?)?;
            transition_table(&c, tol)
        }
        TableName::Kj => {
            let c: KjConfig = config::parse(&source()?)?;
            kj_table(&c)
        }
    }
}

fn g_table() -> Result<Report, CliError> {
    // printed values plus 0..10 by 0.1 and 10..100 by 1
    let mut xs: Vec<f64> = (0..=100).map(|k| k as f64 / 10.0).chain((11..=100).map(|k| k as f64)).collect();
    xs.extend(PAPER_X);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut t = Table::new(vec!["x", "i1_over_i0", "i1_over_x_i0", "g", "printed"]);
    for x in xs {
        let g = g_ratio(x).map_err(lib_err)?;
        t.push(vec![x.into(), g.r1.into(), g.r2.into(), g.g.into(), PAPER_X.contains(&x).into()]);
    }
    Ok(Report::Table(t))
}

fn transition_table(c: &TransitionConfig, tol: f64) -> Result<Report, CliError> {
    let p = config::wz_params(c.epsilon, c.delta)?;
    let z = Complex64::new(c.theta, c.l_tilde);
    let window = w_state_normalized(&p, z, tol).map_err(lib_err)?;
    let mut t = Table::new(vec!["m", "probability"]);
    for m in window.n_lo()..=window.n_hi() {
        t.push(vec![m.into(), transition_prob(m, &p, z).map_err(lib_err)?.into()]);
    }
    Ok(Report::Table(t))
}

fn kj_table(c: &KjConfig) -> Result<Report, CliError> {
    c.validate()?;
    let ctx = LadderContext::new(c.epsilon, config::sector(c.delta)?).map_err(lib_err)?;
    let mut t = Table::new(vec![
        "theta",
        "l",
        "k",
        "j",
        "var_k",
        "var_j",
        "cov_kj",
        "commutator_im",
        "saturation_residual",
        "saturated",
        "theta_recovered",
        "l_recovered",
    ]);
    for &th in &c.theta {
        for &l in &c.l_tilde {
            let r = kj_report(&ctx, Complex64::new(th, l)).map_err(lib_err)?;
            t.push(vec![
                th.into(),
                l.into(),
                r.k.into(),
                r.j.into(),
                r.var_k.into(),
                r.var_j.into(),
                r.cov_kj.into(),
                r.commutator.im.into(),
                r.saturation_residual.into(),
                r.saturated.into(),
                r.recovered.0.into(),
                r.recovered.1.into(),
            ]);
        }
    }
    Ok(Report::Table(t))
}

/// Matrix-element moments shared by `state` and `evolve`.
const MOMENTS: [&str; 10] = ["c", "s", "l", "var_c", "var_s", "var_l", "cov_cl", "cov_sl", "gap_cl", "gap_sl"];

fn moments(st: &CircleState) -> Result<[f64; 10], CliError> {
    let cl = uncertainty_report(Op::C, Op::L, st).map_err(lib_err)?;
    let sl = uncertainty_report(Op::S, Op::L, st).map_err(lib_err)?;
    Ok([
        cl.mean_a,
        sl.mean_a,
        cl.mean_b,
        cl.var_a,
        sl.var_a,
        cl.var_b,
        cl.covariance,
        sl.covariance,
        cl.gap(),
        sl.gap(),
    ])
}

fn build(spec: &StateSpec, tol: f64) -> Result<CircleState, CliError> {
    match spec {
        StateSpec::Min(p) => min_state(p, tol).map_err(lib_err),
        StateSpec::Wz { params, z } => w_state_normalized(params, *z, tol).map_err(lib_err),
    }
}

fn push(r: &mut Record, k: &str, v: impl Into<Cell>) {
    r.push((k.to_string(), v.into()));
}

pub fn state(text: &str, tol: f64) -> Result<Report, CliError> {
    let spec = config::parse::<StateConfig>(text)?.validate()?;
    let st = build(&spec, tol)?;
    let mut r = Record::new();
    match spec {
        StateSpec::Min(p) => {
            push(&mut r, "family", "min");
            push(&mut r, "alpha", p.alpha);
            push(&mut r, "l_param", p.l_tilde);
            push(&mut r, "gamma", p.gamma);
            push(&mut r, "s_param", p.s);
        }
        StateSpec::Wz { params, z } => {
            push(&mut r, "family", "wz");
            push(&mut r, "epsilon", params.epsilon());
            push(&mut r, "theta", z.re);
            push(&mut r, "l_param", z.im);
        }
    }
    push(&mut r, "delta", st.sector().delta());
    push(&mut r, "n_lo", st.n_lo());
    push(&mut r, "n_hi", st.n_hi());
    for (k, v) in MOMENTS.iter().zip(moments(&st)?) {
        push(&mut r, k, v);
    }
    match spec {
        StateSpec::Min(p) => {
            let e = min_expectations(&p).map_err(lib_err)?;
            for (k, v) in [
                ("closed_c", e.c),
                ("closed_s", e.s),
                ("closed_l", e.l),
                ("closed_var_c", e.var_c),
                ("closed_var_s", e.var_s),
                ("closed_var_l", e.var_l),
                ("closed_cov_cl", e.cov_cl),
                ("closed_cov_sl", e.cov_sl),
                ("closed_cov_cs", e.cov_cs),
            ] {
                push(&mut r, k, v);
            }
        }
        StateSpec::Wz { params, z } => {
            let e = w_expectations(&params, z).map_err(lib_err)?;
            for (k, v) in [
                ("closed_u_re", e.u.re),
                ("closed_u_im", e.u.im),
                ("closed_c", e.c),
                ("closed_s", e.s),
                ("closed_l", e.l),
                ("closed_var_c", e.var_c),
                ("closed_var_s", e.var_s),
                ("closed_var_l", e.var_l),
                ("closed_cov_cl", e.cov_cl),
                ("closed_cov_sl", e.cov_sl),
                ("closed_gap_cl", e.gap_cl()),
                ("n_z", normalization(&params, z).map_err(lib_err)?.n_z),
            ] {
                push(&mut r, k, v);
            }
        }
    }
    Ok(Report::Record(r))
}

pub fn overlap(text: &str, tol: f64) -> Result<Report, CliError> {
    let c: OverlapConfig = config::parse(text)?;
    let (a, b) = (c.a.validate()?, c.b.validate()?);
    let closed = match (a, b) {
        (StateSpec::Min(pa), StateSpec::Min(pb)) => min_overlap(&pa, &pb).map_err(lib_err)?.value,
        (StateSpec::Wz { params: pa, z: za }, StateSpec::Wz { params: pb, z: zb }) => {
            let na = normalization(&pa, za).map_err(lib_err)?.n_z;
            let nb = normalization(&pb, zb).map_err(lib_err)?.n_z;
            w_overlap(&pa, za, &pb, zb).map_err(lib_err)? * na * nb
        }
        _ => return Err(CliError::Config("config: `a` and `b` must be of the same family".into())),
    };
    let matrix = inner(&build(&a, tol)?, &build(&b, tol)?).map_err(lib_err)?;
    let mut r = Record::new();
    push(&mut r, "re", closed.re);
    push(&mut r, "im", closed.im);
    push(&mut r, "abs", closed.norm());
    push(&mut r, "matrix_re", matrix.re);
    push(&mut r, "matrix_im", matrix.im);
    Ok(Report::Record(r))
}

pub fn evolve(text: &str, tol: f64) -> Result<Report, CliError> {
    let c: EvolveConfig = config::parse(text)?;
    let (spec, params) = c.validate()?;
    let sector = spec.sector()?;
    let init = build(&spec, tol)?;
    let rows: Vec<Result<Vec<Cell>, CliError>> = c
        .times
        .par_iter()
        .map(|&t| {
            let es = EvolutionSpec::new(params, sector, t, 0.0).map_err(lib_err)?;
            let st = match spec {
                StateSpec::Min(p) => evolve_min(&es, &p, tol).map_err(lib_err)?,
                StateSpec::Wz { .. } => propagate(&es, &init).map_err(lib_err)?,
            };
            let mut row: Vec<Cell> = vec![t.into()];
            row.extend(moments(&st)?.map(Cell::from));
            row.push(fidelity(&init, &st).map_err(lib_err)?.into());
            Ok(row)
        })
        .collect();
    let mut columns = vec!["t"];
    columns.extend(MOMENTS);
    columns.push("fidelity");
    let mut table = Table::new(columns);
    for row in rows {
        table.push(row?);
    }
    Ok(Report::Table(table))
}

pub fn kernel_report(text: &str) -> Result<Report, CliError> {
    let c: KernelConfig = config::parse(text)?;
    let (params, sector, grid) = c.validate()?;
    let es = EvolutionSpec::new(params, sector, c.t, c.eta).map_err(lib_err)?;
    let rows: Vec<Result<Vec<Cell>, CliError>> = grid
        .par_iter()
        .map(|&d| {
            let a = kernel(&es, d).map_err(lib_err)?;
            let b = kernel_transformed(&es, d).map_err(lib_err)?;
            Ok(vec![d.into(), a.re.into(), a.im.into(), b.re.into(), b.im.into(), (a - b).norm().into()])
        })
        .collect();
    let mut table = Table::new(vec!["dphi", "series_re", "series_im", "transformed_re", "transformed_im", "abs_diff"]);
    for row in rows {
        table.push(row?);
    }
    Ok(Report::Table(table))
}
