//! One function per subcommand. Each returns a [`Table`] plus the exit
//! code and an optional stderr note; `main` handles emission so output
//! formatting and error plumbing stay in one place.
//!
//! Composite-unit columns (`eta`, `sigma`, `eta_minus_sigma`,
//! `omega_coupling`, `varkappa`, `varkappa_m`) are documented in the
//! project README; simple columns carry SI unit suffixes.

use std::path::Path;

use dcsl::constants::HBAR;
use dcsl::table::{Table, Value};
use dcsl::{
    csl_force_psd, dns_optomech, dns_relative, system_temperature, system_temperature_spectral,
    temp_shift, total_damping, validate_pair_spectrum, validate_spectrum, BoundStatus,
    CollapseCoefficients, CollapseParams, DcslError, Experiment, ExperimentConfig, LambdaBound,
    NoiseTemperature, PairCoefficients, Result, Trajectory, ValidationOptions,
};

use crate::args::{
    CavityArgs, GeometryArgs, Grid, MechArgs, OutputArgs, ParamArgs, SimArgs, TcslArg,
    ValidateArgs,
};

/// What a subcommand hands back to `main` for emission.
pub struct Outcome {
    pub table: Table,
    pub exit: i32,
    /// Machine-readable stderr note `(kind, message)` accompanying a
    /// non-zero exit that still produced a table.
    pub note: Option<(&'static str, String)>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome { table, exit: 0, note: None }
    }
}

fn tcsl_cell(t: NoiseTemperature) -> Value {
    match t {
        NoiseTemperature::Infinite => Value::Text("inf".into()),
        NoiseTemperature::Finite(k) => Value::Float(k),
    }
}

fn load_experiment(path: &Path, sphere_only: bool) -> Result<Experiment> {
    let mut config = ExperimentConfig::from_path(path)?;
    if sphere_only {
        config.sphere_only = true;
    }
    config.resolve()
}

pub fn coeffs(params: &ParamArgs, geometry: &GeometryArgs) -> Result<Outcome> {
    let cp = CollapseParams::new(params.lambda, params.rc, params.tcsl)?;
    let body = geometry.body()?;
    let table = match geometry.pair()? {
        Some(pair) => {
            let pc = PairCoefficients::compute(&pair, &cp)?;
            let mut t = Table::new(vec![
                "lambda_1_s",
                "r_c_m",
                "t_csl_k",
                "mass_kg",
                "r12_m",
                "eta",
                "sigma",
                "eta_minus_sigma",
                "omega_coupling",
                "varkappa",
                "varkappa_m",
            ]);
            t.push_row(vec![
                Value::Float(params.lambda),
                Value::Float(params.rc),
                tcsl_cell(params.tcsl),
                Value::Float(pair.base.mass()),
                Value::Float(pair.r12_m),
                Value::Float(pc.eta),
                Value::Float(pc.sigma),
                Value::Float(pc.eta_minus_sigma),
                Value::Float(pc.omega_coupling),
                Value::Float(pc.varkappa),
                Value::Float(pc.varkappa_m),
            ])?;
            t
        }
        None => {
            let cc = CollapseCoefficients::compute(&body, &cp)?;
            let mut t = Table::new(vec![
                "lambda_1_s",
                "r_c_m",
                "t_csl_k",
                "mass_kg",
                "eta",
                "gamma_csl_1_s",
                "varkappa",
                "varkappa_m",
            ]);
            t.push_row(vec![
                Value::Float(params.lambda),
                Value::Float(params.rc),
                tcsl_cell(params.tcsl),
                Value::Float(body.mass()),
                Value::Float(cc.eta),
                Value::Float(cc.gamma_csl),
                Value::Float(cc.varkappa),
                Value::Float(cc.varkappa_m),
            ])?;
            t
        }
    };
    Ok(Outcome::ok(table))
}

pub fn spectrum(
    params: &ParamArgs,
    geometry: &GeometryArgs,
    mech: &MechArgs,
    cavity: &CavityArgs,
    grid: &Grid,
) -> Result<Outcome> {
    let cp = CollapseParams::new(params.lambda, params.rc, params.tcsl)?;
    let mech = mech.resolve()?;
    let cavity = cavity.resolve()?;
    let mut table = Table::new(vec!["omega_rad_s", "s_xx_m2_s"]);
    match geometry.pair()? {
        Some(pair) => {
            if cavity.is_some() {
                return Err(DcslError::InvalidConfig(
                    "the differential pair spectrum has no cavity drive; \
                     drop the cavity flags or --r12-m"
                        .into(),
                ));
            }
            let pc = PairCoefficients::compute(&pair, &cp)?;
            for &omega in &grid.0 {
                table.push_row(vec![
                    Value::Float(omega),
                    Value::Float(dns_relative(omega, &mech, &pc)?),
                ])?;
            }
        }
        None => {
            let cc = CollapseCoefficients::compute(&geometry.body()?, &cp)?;
            for &omega in &grid.0 {
                table.push_row(vec![
                    Value::Float(omega),
                    Value::Float(dns_optomech(omega, &mech, cavity.as_ref(), &cc)?),
                ])?;
            }
        }
    }
    Ok(Outcome::ok(table))
}

pub fn temp_shift_cmd(
    params: &ParamArgs,
    geometry: &GeometryArgs,
    mech: &MechArgs,
    spectral: bool,
) -> Result<Outcome> {
    if geometry.r12_m.is_some() {
        return Err(DcslError::InvalidConfig(
            "temp-shift describes a single monitored body; --r12-m does not apply".into(),
        ));
    }
    let cp = CollapseParams::new(params.lambda, params.rc, params.tcsl)?;
    let mech = mech.resolve()?;
    let cc = CollapseCoefficients::compute(&geometry.body()?, &cp)?;
    let delta_t = temp_shift(&mech, &cc)?;
    let t_sys = system_temperature(&mech, &cc)?;
    let t_spectral =
        if spectral { Some(system_temperature_spectral(&mech, &cc)?) } else { None };
    let mut table = Table::new(vec![
        "lambda_1_s",
        "r_c_m",
        "t_csl_k",
        "t_env_k",
        "gamma_total_1_s",
        "delta_t_k",
        "t_sys_k",
        "t_sys_spectral_k",
    ]);
    table.push_row(vec![
        Value::Float(params.lambda),
        Value::Float(params.rc),
        tcsl_cell(params.tcsl),
        Value::Float(mech.t_env),
        Value::Float(total_damping(&mech, &cc)),
        Value::Float(delta_t),
        Value::Float(t_sys),
        t_spectral.into(),
    ])?;
    Ok(Outcome::ok(table))
}

pub fn force_psd(
    params: &ParamArgs,
    geometry: &GeometryArgs,
    mech: &MechArgs,
    grid: &Grid,
) -> Result<Outcome> {
    let cp = CollapseParams::new(params.lambda, params.rc, params.tcsl)?;
    let mech = mech.resolve()?;
    let pair = geometry.pair()?.ok_or_else(|| {
        DcslError::InvalidConfig("force-psd needs an identical pair: set --r12-m".into())
    })?;
    let pc = PairCoefficients::compute(&pair, &cp)?;
    let mut table = Table::new(vec!["omega_rad_s", "s_ff_n2_s"]);
    for &omega in &grid.0 {
        table
            .push_row(vec![Value::Float(omega), Value::Float(csl_force_psd(omega, &mech, &pc)?)])?;
    }
    Ok(Outcome::ok(table))
}

pub fn simulate(
    params: &ParamArgs,
    geometry: &GeometryArgs,
    mech: &MechArgs,
    sim: &SimArgs,
) -> Result<Outcome> {
    if sim.decimate == 0 {
        return Err(DcslError::InvalidConfig("--decimate must be at least 1".into()));
    }
    let cp = CollapseParams::new(params.lambda, params.rc, params.tcsl)?;
    let mech = mech.resolve()?;
    let trajectory: Trajectory = match geometry.pair()? {
        Some(pair) => {
            let pc = PairCoefficients::compute(&pair, &cp)?;
            dcsl::simulate_pair_with(
                &mech,
                &pc,
                sim.duration_s,
                sim.dt_s,
                sim.seed,
                sim.stream,
                sim.x0_m,
                sim.p0_kg_m_s,
            )?
        }
        None => {
            let cc = CollapseCoefficients::compute(&geometry.body()?, &cp)?;
            dcsl::simulate_single_with(
                &mech,
                &cc,
                sim.duration_s,
                sim.dt_s,
                sim.seed,
                sim.stream,
                sim.x0_m,
                sim.p0_kg_m_s,
            )?
        }
    };
    let mut table = Table::new(vec!["t_s", "x_m", "p_kg_m_s"]);
    for i in (0..trajectory.len()).step_by(sim.decimate) {
        table.push_row(vec![
            Value::Float(i as f64 * trajectory.dt),
            Value::Float(trajectory.x[i]),
            Value::Float(trajectory.p[i]),
        ])?;
    }
    Ok(Outcome::ok(table))
}

pub fn validate_sim(
    params: &ParamArgs,
    geometry: &GeometryArgs,
    mech: &MechArgs,
    v: &ValidateArgs,
) -> Result<Outcome> {
    let cp = CollapseParams::new(params.lambda, params.rc, params.tcsl)?;
    let mech = mech.resolve()?;

    enum Target {
        Single(CollapseCoefficients),
        Pair(PairCoefficients),
    }
    let (target, gamma_total) = match geometry.pair()? {
        Some(pair) => {
            let pc = PairCoefficients::compute(&pair, &cp)?;
            let gamma = mech.gamma_m + 2.0 * pc.eta * HBAR * pc.varkappa_m / mech.m;
            (Target::Pair(pc), gamma)
        }
        None => {
            let cc = CollapseCoefficients::compute(&geometry.body()?, &cp)?;
            let gamma = total_damping(&mech, &cc);
            (Target::Single(cc), gamma)
        }
    };

    let mut opts = ValidationOptions::auto(&mech, gamma_total)?;
    if let Some(n) = v.n_traj {
        opts.n_trajectories = n;
    }
    if let Some(s) = v.seed {
        opts.seed = s;
    }
    if let Some(d) = v.duration_s {
        opts.duration = d;
    }
    if let Some(dt) = v.dt_s {
        opts.dt = dt;
    }
    if let Some(len) = v.segment_len {
        opts.segment_len = len;
    }
    if let Some(t) = v.transient_s {
        opts.transient = t;
    }

    let report = match &target {
        Target::Single(cc) => validate_spectrum(&mech, cc, v.tolerance_sigma, &opts)?,
        Target::Pair(pc) => validate_pair_spectrum(&mech, pc, v.tolerance_sigma, &opts)?,
    };

    let mut table = Table::new(vec![
        "pass",
        "tolerance_sigma",
        "max_abs_z",
        "worst_omega_rad_s",
        "n_bins",
        "n_trajectories",
        "n_segments_per_trajectory",
    ]);
    table.push_row(vec![
        Value::Bool(report.pass),
        Value::Float(report.tolerance),
        Value::Float(report.max_abs_z),
        Value::Float(report.worst_omega),
        Value::Int(report.n_bins as i64),
        Value::Int(report.n_trajectories as i64),
        Value::Int(report.n_segments_per_trajectory as i64),
    ])?;

    if report.pass {
        Ok(Outcome::ok(table))
    } else {
        Ok(Outcome {
            table,
            exit: 3,
            note: Some((
                "validation-failed",
                format!(
                    "ensemble spectrum deviates from the reference: max |z| = {:.3} \
                     at omega = {:.6e} rad/s exceeds the tolerance {:.3}",
                    report.max_abs_z, report.worst_omega, report.tolerance
                ),
            )),
        })
    }
}

pub fn validity(
    exp_path: &Path,
    rc: Option<f64>,
    rc_grid: Option<&Grid>,
    tcsl: &TcslArg,
) -> Result<Outcome> {
    let exp = load_experiment(exp_path, false)?;
    let grid: Vec<f64> = match (rc, rc_grid) {
        (Some(r), None) => vec![r],
        (None, Some(g)) => g.0.clone(),
        _ => {
            return Err(DcslError::InvalidConfig(
                "give exactly one of --rc or --rc-grid".into(),
            ))
        }
    };
    let mut table = Table::new(vec![
        "r_c_m",
        "t_csl_k",
        "delta_x_m",
        "delta_v_m_s",
        "position_margin",
        "momentum_margin",
        "satisfied",
    ]);
    for &r_c in &grid {
        // The margins are independent of lambda; any positive rate works.
        let params = CollapseParams::new(1.0, r_c, tcsl.tcsl)?;
        let v = exp.validity_check(&params);
        table.push_row(vec![
            Value::Float(r_c),
            tcsl_cell(tcsl.tcsl),
            Value::Float(v.delta_x),
            Value::Float(v.delta_v),
            Value::Float(v.position_margin),
            Value::Float(v.momentum_margin),
            Value::Bool(v.satisfied),
        ])?;
    }
    Ok(Outcome::ok(table))
}

fn bound_table() -> Table {
    Table::new(vec!["r_C_m", "lambda_max_1_s", "status", "validity"])
}

fn bound_row(table: &mut Table, point: &LambdaBound) -> Result<()> {
    table.push_row(vec![
        Value::Float(point.r_c),
        point.lambda_max.into(),
        Value::Text(point.status.to_string()),
        Value::Bool(point.validity.satisfied),
    ])
}

pub fn bound(exp_path: &Path, rc: f64, tcsl: &TcslArg, sphere_only: bool) -> Result<Outcome> {
    let exp = load_experiment(exp_path, sphere_only)?;
    let point = exp.lambda_bound(rc, tcsl.tcsl)?;
    let mut table = bound_table();
    bound_row(&mut table, &point)?;
    if point.status == BoundStatus::NoExclusionBelowCap {
        Ok(Outcome {
            table,
            exit: 4,
            note: Some((
                "no-exclusion",
                format!(
                    "{}: prediction stays below the datum for every lambda up to \
                     the search cap at r_C = {rc:e} m",
                    exp.name
                ),
            )),
        })
    } else {
        Ok(Outcome::ok(table))
    }
}

pub fn exclusion(
    exp_path: &Path,
    grid: &Grid,
    tcsl: &TcslArg,
    sphere_only: bool,
) -> Result<Outcome> {
    let exp = load_experiment(exp_path, sphere_only)?;
    let curve = exp.exclusion_curve(&grid.0, tcsl.tcsl)?;
    let mut table = bound_table();
    for point in &curve.points {
        bound_row(&mut table, point)?;
    }
    let all_empty =
        curve.points.iter().all(|p| p.status == BoundStatus::NoExclusionBelowCap);
    if all_empty {
        Ok(Outcome {
            table,
            exit: 4,
            note: Some((
                "no-exclusion",
                format!(
                    "{}: no grid point excludes any collapse rate below the search cap",
                    exp.name
                ),
            )),
        })
    } else {
        Ok(Outcome::ok(table))
    }
}

/// Routes a parsed command to its implementation, returning the outcome
/// together with the variant's output options.
pub fn dispatch(cmd: crate::args::Cmd) -> Result<(Outcome, OutputArgs)> {
    use crate::args::Cmd;
    match cmd {
        Cmd::Coeffs { params, geometry, output } => Ok((coeffs(&params, &geometry)?, output)),
        Cmd::Spectrum { params, geometry, mech, cavity, omega_grid, output } => {
            Ok((spectrum(&params, &geometry, &mech, &cavity, &omega_grid)?, output))
        }
        Cmd::TempShift { params, geometry, mech, spectral, output } => {
            Ok((temp_shift_cmd(&params, &geometry, &mech, spectral)?, output))
        }
        Cmd::ForcePsd { params, geometry, mech, omega_grid, output } => {
            Ok((force_psd(&params, &geometry, &mech, &omega_grid)?, output))
        }
        Cmd::Simulate { params, geometry, mech, sim, output } => {
            Ok((simulate(&params, &geometry, &mech, &sim)?, output))
        }
        Cmd::ValidateSim { params, geometry, mech, validate, output } => {
            Ok((validate_sim(&params, &geometry, &mech, &validate)?, output))
        }
        Cmd::Validity { exp, rc, rc_grid, tcsl, output } => {
            Ok((validity(&exp, rc, rc_grid.as_ref(), &tcsl)?, output))
        }
        Cmd::Bound { exp, rc, tcsl, sphere_only, output } => {
            Ok((bound(&exp, rc, &tcsl, sphere_only)?, output))
        }
        Cmd::Exclusion { exp, rc_grid, tcsl, sphere_only, output } => {
            Ok((exclusion(&exp, &rc_grid, &tcsl, sphere_only)?, output))
        }
    }
}
