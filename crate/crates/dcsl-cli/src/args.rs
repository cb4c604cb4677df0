//! Command-line argument definitions and parsers.
//!
//! Every physical flag carries an explicit SI unit suffix except the
//! collapse parameters `--lambda` (1/s), `--rc` (m) and `--tcsl` (K or
//! `inf`). Frequencies may be given in Hz (`--f0-hz`, grid values stay in
//! rad/s) and are converted to angular frequency at this boundary; the
//! library speaks rad/s only.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcsl::constants::M0;
use dcsl::experiments::{linear_grid, log_grid};
use dcsl::{
    CavityConfig, DcslError, GeometryPair, MassGeometry, MechanicalConfig, NoiseTemperature,
};

#[derive(Parser, Debug)]
#[command(
    name = "dcsl",
    version,
    about = "Dissipative collapse-model coefficients, noise spectra, trajectory \
             validation and experimental exclusion bounds",
    propagate_version = true
)]
pub struct Cli {
    /// Worker threads for grid evaluation and trajectory ensembles
    /// (fallback: the DCSL_THREADS environment variable; default: one per
    /// logical CPU). Outputs are byte-identical for any thread count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Collapse coefficients of one body, or of an identical pair when
    /// --r12-m is given.
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Displacement noise spectrum over a frequency grid: the driven
    /// cavity spectrum when the cavity flags are given, the bare
    /// cantilever spectrum otherwise, or the differential pair spectrum
    /// when --r12-m is given.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        mech: MechArgs,
        #[command(flatten)]
        cavity: CavityArgs,
        /// Angular frequency grid, rad/s, as `lo:hi:N{log|lin}`.
        #[arg(long, value_parser = parse_grid)]
        omega_grid: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Collapse-induced shift of the mode temperature and the resulting
    /// system temperature.
    TempShift {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        mech: MechArgs,
        /// Also integrate the spectrum for an independent spectral
        /// estimate of the system temperature (slower).
        #[arg(long)]
        spectral: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Collapse force noise PSD acting on the relative coordinate of an
    /// identical pair (requires --r12-m).
    ForcePsd {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        mech: MechArgs,
        /// Angular frequency grid, rad/s, as `lo:hi:N{log|lin}`.
        #[arg(long, value_parser = parse_grid)]
        omega_grid: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Integrate one stochastic trajectory of the mode (single body, or
    /// the pair relative coordinate when --r12-m is given).
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        mech: MechArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-validate the trajectory ensemble's Welch PSD against the
    /// closed-form spectrum (z-test per bin in [omega0/2, 2 omega0]).
    ValidateSim {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        mech: MechArgs,
        #[command(flatten)]
        validate: ValidateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Phase-space validity margins of the small-displacement expansion
    /// for a catalog experiment (independent of lambda).
    Validity {
        /// Experiment JSON file.
        #[arg(long, value_name = "PATH")]
        exp: PathBuf,
        /// Single correlation length, m.
        #[arg(long)]
        rc: Option<f64>,
        /// Correlation-length grid, m, as `lo:hi:N{log|lin}`.
        #[arg(long, value_parser = parse_grid)]
        rc_grid: Option<Grid>,
        #[command(flatten)]
        tcsl: TcslArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Largest collapse rate compatible with an experiment's datum at one
    /// correlation length.
    Bound {
        /// Experiment JSON file.
        #[arg(long, value_name = "PATH")]
        exp: PathBuf,
        /// Correlation length, m.
        #[arg(long)]
        rc: f64,
        #[command(flatten)]
        tcsl: TcslArg,
        /// Keep only the first (sphere) body of a composite geometry.
        #[arg(long)]
        sphere_only: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exclusion bound over a correlation-length grid.
    Exclusion {
        /// Experiment JSON file.
        #[arg(long, value_name = "PATH")]
        exp: PathBuf,
        /// Correlation-length grid, m, as `lo:hi:N{log|lin}`.
        #[arg(long, value_parser = parse_grid)]
        rc_grid: Grid,
        #[command(flatten)]
        tcsl: TcslArg,
        /// Keep only the first (sphere) body of a composite geometry.
        #[arg(long)]
        sphere_only: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Collapse-model parameters.
#[derive(Args, Debug)]
pub struct ParamArgs {
    /// Collapse rate lambda, 1/s.
    #[arg(long)]
    pub lambda: f64,
    /// Correlation length r_C, m.
    #[arg(long)]
    pub rc: f64,
    /// Noise temperature, K, or `inf` for the non-dissipative limit.
    #[arg(long, default_value = "inf", value_parser = parse_tcsl)]
    pub tcsl: NoiseTemperature,
}

/// Noise temperature alone (bound inversions search over lambda).
#[derive(Args, Debug)]
pub struct TcslArg {
    /// Noise temperature, K, or `inf` for the non-dissipative limit.
    #[arg(long, default_value = "inf", value_parser = parse_tcsl)]
    pub tcsl: NoiseTemperature,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometryKind {
    Point,
    Sphere,
    Cylinder,
    Cuboid,
}

/// Mass geometry of the body under measurement. Motion is along +x; for
/// cylinders that is the symmetry axis, for cuboids the first side.
#[derive(Args, Debug)]
pub struct GeometryArgs {
    /// Body shape.
    #[arg(long, value_enum)]
    pub geometry: GeometryKind,
    /// Point mass, kg (point only; default: one nucleon-equivalent).
    #[arg(long)]
    pub mass_kg: Option<f64>,
    /// Radius, m (sphere and cylinder).
    #[arg(long)]
    pub radius_m: Option<f64>,
    /// Length along the motion axis, m (cylinder).
    #[arg(long)]
    pub length_m: Option<f64>,
    /// Side lengths, m, as `x,y,z` with motion along x (cuboid).
    #[arg(long, value_parser = parse_triple)]
    pub sides_m: Option<Triple>,
    /// Mass density, kg/m^3 (sphere, cylinder, cuboid).
    #[arg(long)]
    pub density_kg_m3: Option<f64>,
    /// Centre-to-centre separation of an identical pair, m; switches to
    /// the differential (pair) quantities.
    #[arg(long)]
    pub r12_m: Option<f64>,
}

impl GeometryArgs {
    /// Builds the body, rejecting flags that do not belong to the shape.
    pub fn body(&self) -> Result<MassGeometry, DcslError> {
        let axis = [1.0, 0.0, 0.0];
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| {
                DcslError::InvalidConfig(format!(
                    "--{flag} is required for --geometry {:?}",
                    self.geometry
                ))
            })
        };
        let forbid = |absent: bool, flag: &str| {
            if absent {
                Ok(())
            } else {
                Err(DcslError::InvalidConfig(format!(
                    "--{flag} does not apply to --geometry {:?}",
                    self.geometry
                )))
            }
        };
        match self.geometry {
            GeometryKind::Point => {
                forbid(self.radius_m.is_none(), "radius-m")?;
                forbid(self.length_m.is_none(), "length-m")?;
                forbid(self.sides_m.is_none(), "sides-m")?;
                forbid(self.density_kg_m3.is_none(), "density-kg-m3")?;
                Ok(MassGeometry::Point { mass_kg: self.mass_kg.unwrap_or(M0) })
            }
            GeometryKind::Sphere => {
                forbid(self.mass_kg.is_none(), "mass-kg")?;
                forbid(self.length_m.is_none(), "length-m")?;
                forbid(self.sides_m.is_none(), "sides-m")?;
                Ok(MassGeometry::Sphere {
                    radius_m: need(self.radius_m, "radius-m")?,
                    density_kg_m3: need(self.density_kg_m3, "density-kg-m3")?,
                })
            }
            GeometryKind::Cylinder => {
                forbid(self.mass_kg.is_none(), "mass-kg")?;
                forbid(self.sides_m.is_none(), "sides-m")?;
                Ok(MassGeometry::Cylinder {
                    radius_m: need(self.radius_m, "radius-m")?,
                    length_m: need(self.length_m, "length-m")?,
                    density_kg_m3: need(self.density_kg_m3, "density-kg-m3")?,
                    axis_unit: axis,
                })
            }
            GeometryKind::Cuboid => {
                forbid(self.mass_kg.is_none(), "mass-kg")?;
                forbid(self.radius_m.is_none(), "radius-m")?;
                forbid(self.length_m.is_none(), "length-m")?;
                let sides = self
                    .sides_m
                    .as_ref()
                    .ok_or_else(|| {
                        DcslError::InvalidConfig(
                            "--sides-m is required for --geometry cuboid".into(),
                        )
                    })?
                    .0;
                Ok(MassGeometry::Cuboid {
                    sides_m: sides,
                    density_kg_m3: need(self.density_kg_m3, "density-kg-m3")?,
                    axis_unit: axis,
                })
            }
        }
    }

    /// Builds the identical pair when `--r12-m` was given.
    pub fn pair(&self) -> Result<Option<GeometryPair>, DcslError> {
        match self.r12_m {
            None => Ok(None),
            Some(r12) => Ok(Some(GeometryPair::new(self.body()?, r12)?)),
        }
    }
}

/// Mechanical mode of the readout. Exactly one flag of each
/// (mass|stiffness), (angular|plain frequency), (damping|quality) pair.
#[derive(Args, Debug)]
pub struct MechArgs {
    /// Effective mode mass, kg.
    #[arg(long)]
    pub m_kg: Option<f64>,
    /// Mode stiffness, N/m; the mass is inferred as k/omega0^2.
    #[arg(long)]
    pub k_stiff_n_m: Option<f64>,
    /// Angular resonance frequency, rad/s.
    #[arg(long)]
    pub omega0_rad_s: Option<f64>,
    /// Resonance frequency, Hz (converted to rad/s).
    #[arg(long)]
    pub f0_hz: Option<f64>,
    /// Mechanical damping rate, 1/s.
    #[arg(long)]
    pub gamma_m_1_s: Option<f64>,
    /// Quality factor; the damping is inferred as omega0/Q.
    #[arg(long)]
    pub q: Option<f64>,
    /// Environment temperature, K.
    #[arg(long)]
    pub t_env_k: f64,
}

impl MechArgs {
    pub fn resolve(&self) -> Result<MechanicalConfig, DcslError> {
        fn exactly_one(
            what: &str,
            a: (&str, Option<f64>),
            b: (&str, Option<f64>),
        ) -> Result<(f64, bool), DcslError> {
            match (a.1, b.1) {
                (Some(v), None) => Ok((v, true)),
                (None, Some(v)) => Ok((v, false)),
                _ => Err(DcslError::InvalidConfig(format!(
                    "{what}: give exactly one of --{} or --{}",
                    a.0, b.0
                ))),
            }
        }
        let (f, angular) = exactly_one(
            "resonance frequency",
            ("omega0-rad-s", self.omega0_rad_s),
            ("f0-hz", self.f0_hz),
        )?;
        let omega0 = if angular { f } else { 2.0 * std::f64::consts::PI * f };
        let (mass_or_k, is_mass) =
            exactly_one("mode mass", ("m-kg", self.m_kg), ("k-stiff-n-m", self.k_stiff_n_m))?;
        let m = if is_mass { mass_or_k } else { mass_or_k / (omega0 * omega0) };
        let (damp, is_rate) =
            exactly_one("damping", ("gamma-m-1-s", self.gamma_m_1_s), ("q", self.q))?;
        let gamma_m = if is_rate { damp } else { omega0 / damp };
        let mech = MechanicalConfig { m, omega0, gamma_m, t_env: self.t_env_k };
        mech.validate()?;
        Ok(mech)
    }
}

/// Optical cavity drive (all five flags, or none).
#[derive(Args, Debug)]
pub struct CavityArgs {
    /// Cavity resonance, rad/s.
    #[arg(long)]
    pub omega_c_rad_s: Option<f64>,
    /// Drive laser frequency, rad/s.
    #[arg(long)]
    pub omega_l_rad_s: Option<f64>,
    /// Cavity amplitude decay rate, 1/s.
    #[arg(long)]
    pub kappa_c_1_s: Option<f64>,
    /// Optomechanical coupling per photon, 1/(m*s).
    #[arg(long)]
    pub g_1_m_s: Option<f64>,
    /// Input optical power, W.
    #[arg(long)]
    pub p_in_w: Option<f64>,
}

impl CavityArgs {
    pub fn resolve(&self) -> Result<Option<CavityConfig>, DcslError> {
        let given = [
            self.omega_c_rad_s,
            self.omega_l_rad_s,
            self.kappa_c_1_s,
            self.g_1_m_s,
            self.p_in_w,
        ];
        if given.iter().all(Option::is_none) {
            return Ok(None);
        }
        if given.iter().any(Option::is_none) {
            return Err(DcslError::InvalidConfig(
                "cavity drive needs all of --omega-c-rad-s, --omega-l-rad-s, \
                 --kappa-c-1-s, --g-1-m-s and --p-in-w"
                    .into(),
            ));
        }
        let cavity = CavityConfig {
            omega_c: self.omega_c_rad_s.unwrap(),
            omega_l: self.omega_l_rad_s.unwrap(),
            kappa_c: self.kappa_c_1_s.unwrap(),
            g: self.g_1_m_s.unwrap(),
            p_in: self.p_in_w.unwrap(),
        };
        cavity.validate()?;
        Ok(Some(cavity))
    }
}

/// Stochastic-trajectory controls.
#[derive(Args, Debug)]
pub struct SimArgs {
    /// Simulated duration, s (must cover at least ~200 mode periods).
    #[arg(long)]
    pub duration_s: f64,
    /// Integrator time step, s.
    #[arg(long)]
    pub dt_s: f64,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// RNG stream index (independent realisation of the same seed).
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Initial position, m.
    #[arg(long, default_value_t = 0.0)]
    pub x0_m: f64,
    /// Initial momentum, kg*m/s.
    #[arg(long, default_value_t = 0.0)]
    pub p0_kg_m_s: f64,
    /// Keep every Nth sample in the output table.
    #[arg(long, default_value_t = 1)]
    pub decimate: usize,
}

/// Ensemble-validation controls; unset values come from the automatic
/// step/segment plan for the configured dynamics.
#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// z-test acceptance threshold per Welch bin.
    #[arg(long, default_value_t = 5.0)]
    pub tolerance_sigma: f64,
    /// Trajectories in the ensemble.
    #[arg(long)]
    pub n_traj: Option<usize>,
    /// Base RNG seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Simulated duration per trajectory, s.
    #[arg(long)]
    pub duration_s: Option<f64>,
    /// Integrator time step, s.
    #[arg(long)]
    pub dt_s: Option<f64>,
    /// Welch segment length, samples (power of two).
    #[arg(long)]
    pub segment_len: Option<usize>,
    /// Discarded initial transient, s.
    #[arg(long)]
    pub transient_s: Option<f64>,
}

/// Output destination and encoding.
#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file (atomic write); stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Table encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn table_format(self) -> dcsl::table::TableFormat {
        match self {
            Format::Csv => dcsl::table::TableFormat::Csv,
            Format::Json => dcsl::table::TableFormat::Json,
        }
    }
}

/// A parsed `lo:hi:N{log|lin}` grid.
#[derive(Clone, Debug)]
pub struct Grid(pub Vec<f64>);

pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, count] = parts[..] else {
        return Err(format!("grid must be `lo:hi:N{{log|lin}}`, got `{text}`"));
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad grid lower bound `{lo}`"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad grid upper bound `{hi}`"))?;
    let (n, log) = if let Some(n) = count.strip_suffix("log") {
        (n, true)
    } else if let Some(n) = count.strip_suffix("lin") {
        (n, false)
    } else {
        return Err(format!("grid count must end in `log` or `lin`, got `{count}`"));
    };
    let n: usize = n.parse().map_err(|_| format!("bad grid point count `{n}`"))?;
    let grid =
        if log { log_grid(lo, hi, n) } else { linear_grid(lo, hi, n) }.map_err(|e| e.to_string())?;
    Ok(Grid(grid))
}

pub fn parse_tcsl(text: &str) -> Result<NoiseTemperature, String> {
    if text.eq_ignore_ascii_case("inf") || text.eq_ignore_ascii_case("infinite") {
        return Ok(NoiseTemperature::Infinite);
    }
    let t: f64 = text
        .parse()
        .map_err(|_| format!("noise temperature must be a number in K or `inf`, got `{text}`"))?;
    Ok(NoiseTemperature::Finite(t))
}

pub fn parse_triple(text: &str) -> Result<Triple, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [a, b, c] = parts[..] else {
        return Err(format!("expected three comma-separated lengths, got `{text}`"));
    };
    let parse = |s: &str| s.parse::<f64>().map_err(|_| format!("bad length `{s}`"));
    Ok(Triple([parse(a)?, parse(b)?, parse(c)?]))
}

/// Three comma-separated lengths, m.
#[derive(Clone, Debug)]
pub struct Triple(pub [f64; 3]);
