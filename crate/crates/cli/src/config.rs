//! TOML run configuration. Frequencies and energies are cyclic (Hz) and are
//! converted to angular units here; lengths are meters.

use std::f64::consts::TAU;
use std::path::PathBuf;

use hybridsim::hybrid::{CTEnsSpec, StsSpec, SystemSpec, TEnsSpec, TsSpec, DEFAULT_BOSON_LEVELS};
use hybridsim::magnetostatics::{Axis, EnsembleSpec, Geometry, GridPlane, Range, Vec3};
use hybridsim::protocols::{DecoherenceSpec, Dynamics, Step, Target};
use hybridsim::transmon::{DoubleJJParams, SingleJJParams, TransmonParams};
use hybridsim::Complex;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub transmon: Option<TransmonConfig>,
    pub geometry: Option<GeometryConfig>,
    pub grid: Option<GridConfig>,
    pub spin: Option<SpinConfig>,
    pub ensemble: Option<EnsembleConfig>,
    pub system: Option<SystemConfig>,
    pub spectrum: Option<SpectrumConfig>,
    pub protocol: Option<ProtocolConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    #[default]
    Single,
    Double,
}

impl Layout {
    pub fn name(self) -> &'static str {
        match self {
            Self::Single => "single",
            Self::Double => "double",
        }
    }
}

fn default_transmon_levels() -> usize {
    30
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmonConfig {
    #[serde(default)]
    pub layout: Layout,
    pub ec_hz: f64,
    /// Total `E_J/E_C` at zero flux. Exclusive with `ej_hz`.
    pub ratio: Option<f64>,
    pub ej_hz: Option<f64>,
    pub ic_a: f64,
    #[serde(default = "default_transmon_levels")]
    pub n_levels: usize,
    pub ej2_hz: Option<f64>,
    pub ic2_a: Option<f64>,
    #[serde(default)]
    pub flux_quanta: f64,
}

fn default_length() -> f64 {
    3e-6
}

fn default_height() -> f64 {
    1e-7
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    #[serde(default = "default_length")]
    pub length_m: f64,
    #[serde(default = "default_height")]
    pub height_m: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self { length_m: default_length(), height_m: default_height() }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisName {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeConfig {
    pub min_m: f64,
    pub max_m: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub fixed_axis: AxisName,
    pub fixed_m: f64,
    /// First free axis in x, y, z order.
    pub u: RangeConfig,
    pub v: RangeConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinConfig {
    pub axis: [f64; 3],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub edges_m: Vec<f64>,
    pub densities_per_cm3: Vec<f64>,
    #[serde(default)]
    pub gap_m: f64,
    #[serde(default)]
    pub center_m: [f64; 2],
}

fn default_boson_levels() -> usize {
    DEFAULT_BOSON_LEVELS
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SystemConfig {
    Ts(TsConfig),
    TEns(TEnsConfig),
    #[serde(rename = "s-t-s")]
    Sts(StsConfig),
    CTEns(CTEnsConfig),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TsConfig {
    pub transmon_hz: f64,
    pub spin_hz: f64,
    pub g_hz: f64,
    #[serde(default)]
    pub g_phase_rad: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TEnsConfig {
    pub transmon_hz: f64,
    pub ensemble_hz: f64,
    pub g_hz: f64,
    #[serde(default)]
    pub g_phase_rad: f64,
    #[serde(default = "default_boson_levels")]
    pub ensemble_levels: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StsConfig {
    pub transmon_hz: f64,
    pub spin1_hz: f64,
    pub spin2_hz: f64,
    pub g1_hz: f64,
    pub g2_hz: f64,
    #[serde(default)]
    pub g1_phase_rad: f64,
    #[serde(default)]
    pub g2_phase_rad: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CTEnsConfig {
    pub cavity_hz: f64,
    pub transmon_hz: f64,
    pub ensemble_hz: f64,
    pub g_tc_hz: f64,
    pub g_ens_hz: f64,
    #[serde(default)]
    pub g_tc_phase_rad: f64,
    #[serde(default)]
    pub g_ens_phase_rad: f64,
    #[serde(default = "default_boson_levels")]
    pub cavity_levels: usize,
    #[serde(default = "default_boson_levels")]
    pub ensemble_levels: usize,
}

fn default_max_excitations() -> usize {
    2
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default = "default_max_excitations")]
    pub max_excitations: usize,
    /// Fock truncation for the bosonic commutator table.
    #[serde(default = "default_boson_levels")]
    pub commutator_levels: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self { max_excitations: default_max_excitations(), commutator_levels: default_boson_levels() }
    }
}

fn default_swap_points() -> usize {
    201
}

fn default_exchange_points() -> usize {
    801
}

fn default_pulse_duration() -> f64 {
    2e-6
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProtocolConfig {
    Swap(SwapConfig),
    Qnd(QndConfig),
    VirtualExchange(ExchangeConfig),
    Protection(ProtectionConfig),
}

impl ProtocolConfig {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Swap(_) => "swap",
            Self::Qnd(_) => "qnd",
            Self::VirtualExchange(_) => "virtual-exchange",
            Self::Protection(_) => "protection",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapConfig {
    #[serde(default = "default_swap_points")]
    pub points: usize,
    pub transmon_t1_s: Option<f64>,
    pub dark_leak_rate_per_s: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DynamicsName {
    #[default]
    Exact,
    Dispersive,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QndConfig {
    #[serde(default = "default_pulse_duration")]
    pub pulse_duration_s: f64,
    #[serde(default)]
    pub dynamics: DynamicsName,
    /// `false` drops the tuning and SWAP steps of the standard sequence.
    #[serde(default = "default_true")]
    pub swap: bool,
    pub transmon_t1_s: Option<f64>,
    pub dark_leak_rate_per_s: Option<f64>,
    /// Explicit sequence replacing the standard one.
    pub steps: Option<Vec<StepConfig>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum StepConfig {
    SetDetuning(DetuningStep),
    Wait(WaitStep),
    PiPulse(PulseStep),
    HalfPiPulse(PulseStep),
    Project(ProjectStep),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetuningStep {
    /// Omitted: restore the configured transmon frequency.
    pub detuning_hz: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaitStep {
    pub time_s: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseStep {
    pub frequency_hz: Option<f64>,
    /// Address the dressed transmon transition with this many ensemble
    /// excitations instead of giving `frequency_hz`.
    pub ensemble_level: Option<usize>,
    #[serde(default = "default_pulse_duration")]
    pub duration_s: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectStep {}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExchangeConfig {
    #[serde(default = "default_exchange_points")]
    pub points: usize,
    #[serde(default)]
    pub transmon_excited: bool,
    pub t_max_s: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtectionConfig {
    pub transmon_t1_s: f64,
}

pub fn parse(text: &str) -> Result<RunConfig, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

fn require<'a, T>(section: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    section.as_ref().ok_or_else(|| CliError::Config(format!("missing [{name}] section")))
}

fn phase(g_hz: f64, phase_rad: f64) -> Complex<f64> {
    Complex::from_polar(TAU * g_hz, phase_rad)
}

impl RunConfig {
    pub fn transmon(&self) -> Result<&TransmonConfig, CliError> {
        require(&self.transmon, "transmon")
    }

    pub fn transmon_params(&self) -> Result<TransmonParams<f64>, CliError> {
        let t = self.transmon()?;
        let ec = TAU * t.ec_hz;
        let total_ej = match (t.ratio, t.ej_hz) {
            (Some(r), None) => r * ec,
            (None, Some(ej)) => TAU * ej,
            _ => return Err(CliError::Config("[transmon] needs exactly one of `ratio` and `ej_hz`".into())),
        };
        match t.layout {
            Layout::Single => {
                if t.ej2_hz.is_some() || t.ic2_a.is_some() {
                    return Err(CliError::Config("`ej2_hz` and `ic2_a` need layout = \"double\"".into()));
                }
                Ok(SingleJJParams::new(total_ej, ec, t.ic_a, t.n_levels)?.into())
            }
            Layout::Double => {
                let ic2 = t.ic2_a.unwrap_or(t.ic_a);
                // Unless given, E_J2 follows the critical-current ratio; `ratio`
                // fixes the sum, `ej_hz` the first junction.
                let (ej1, ej2) = match (t.ratio, t.ej2_hz) {
                    (_, Some(ej2)) if t.ratio.is_some() => (total_ej - TAU * ej2, TAU * ej2),
                    (_, Some(ej2)) => (total_ej, TAU * ej2),
                    (Some(_), None) => {
                        let share = t.ic_a / (t.ic_a + ic2);
                        (total_ej * share, total_ej * (1.0 - share))
                    }
                    (None, None) => (total_ej, total_ej * ic2 / t.ic_a),
                };
                Ok(DoubleJJParams::new(ej1, ej2, t.ic_a, ic2, t.flux_quanta, ec, t.n_levels)?.into())
            }
        }
    }

    pub fn geometry(&self) -> Result<Geometry<f64>, CliError> {
        let t = self.transmon()?;
        let g = self.geometry.clone().unwrap_or_default();
        Ok(match t.layout {
            Layout::Single => Geometry::single_jj(g.length_m, g.height_m, t.ic_a)?,
            Layout::Double => Geometry::double_jj(g.length_m, g.height_m, t.ic_a, t.ic2_a.unwrap_or(t.ic_a))?,
        })
    }

    pub fn grid(&self) -> Result<GridPlane<f64>, CliError> {
        let g = require(&self.grid, "grid")?;
        let fixed = match g.fixed_axis {
            AxisName::X => Axis::X,
            AxisName::Y => Axis::Y,
            AxisName::Z => Axis::Z,
        };
        Ok(GridPlane {
            fixed,
            fixed_value: g.fixed_m,
            u: Range::new(g.u.min_m, g.u.max_m, g.u.count)?,
            v: Range::new(g.v.min_m, g.v.max_m, g.v.count)?,
        })
    }

    /// NV axis, `x` unless configured.
    pub fn spin_axis(&self) -> Vec3<f64> {
        let a = self.spin.as_ref().map_or([1.0, 0.0, 0.0], |s| s.axis);
        Vec3::new(a[0], a[1], a[2])
    }

    /// Ensemble cubes in sweep order: edge-major, then density.
    pub fn ensembles(&self, seed: u64) -> Result<Vec<EnsembleSpec<f64>>, CliError> {
        let e = require(&self.ensemble, "ensemble")?;
        if e.edges_m.is_empty() || e.densities_per_cm3.is_empty() {
            return Err(CliError::Config("[ensemble] needs at least one edge and one density".into()));
        }
        let mut out = Vec::with_capacity(e.edges_m.len() * e.densities_per_cm3.len());
        for &edge in &e.edges_m {
            for &n in &e.densities_per_cm3 {
                let spec = EnsembleSpec { edge, density: n * 1e6, center: (e.center_m[0], e.center_m[1]), gap: e.gap_m, seed };
                spec.validate()?;
                out.push(spec);
            }
        }
        Ok(out)
    }

    pub fn system(&self) -> Result<SystemSpec<f64>, CliError> {
        let spec = match require(&self.system, "system")? {
            SystemConfig::Ts(s) => SystemSpec::Ts(TsSpec {
                omega_t: TAU * s.transmon_hz,
                omega_s: TAU * s.spin_hz,
                g: phase(s.g_hz, s.g_phase_rad),
            }),
            SystemConfig::TEns(s) => SystemSpec::TEns(TEnsSpec {
                omega_t: TAU * s.transmon_hz,
                omega_s: TAU * s.ensemble_hz,
                g: phase(s.g_hz, s.g_phase_rad),
                ensemble_levels: s.ensemble_levels,
            }),
            SystemConfig::Sts(s) => SystemSpec::Sts(StsSpec {
                omega_t: TAU * s.transmon_hz,
                omega_s1: TAU * s.spin1_hz,
                omega_s2: TAU * s.spin2_hz,
                g1: phase(s.g1_hz, s.g1_phase_rad),
                g2: phase(s.g2_hz, s.g2_phase_rad),
            }),
            SystemConfig::CTEns(s) => SystemSpec::CTEns(CTEnsSpec {
                omega_r: TAU * s.cavity_hz,
                omega_t: TAU * s.transmon_hz,
                omega_s: TAU * s.ensemble_hz,
                g_tc: phase(s.g_tc_hz, s.g_tc_phase_rad),
                g_ens: phase(s.g_ens_hz, s.g_ens_phase_rad),
                cavity_levels: s.cavity_levels,
                ensemble_levels: s.ensemble_levels,
            }),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn protocol(&self) -> Result<&ProtocolConfig, CliError> {
        require(&self.protocol, "protocol")
    }
}

pub fn decoherence(t1: Option<f64>, leak: Option<f64>) -> Result<DecoherenceSpec<f64>, CliError> {
    let d = DecoherenceSpec { transmon_t1: t1, dark_leak_rate: leak };
    d.validate()?;
    Ok(d)
}

impl DynamicsName {
    pub fn dynamics(self) -> Dynamics {
        match self {
            Self::Exact => Dynamics::Exact,
            Self::Dispersive => Dynamics::Dispersive,
        }
    }
}

impl StepConfig {
    /// `transition(n)` gives the dressed transmon frequency with `n` ensemble
    /// excitations, in rad/s.
    pub fn to_step(
        &self,
        index: usize,
        transition: impl Fn(usize) -> Result<f64, CliError>,
    ) -> Result<Step<f64>, CliError> {
        let pulse = |p: &PulseStep| -> Result<(f64, f64), CliError> {
            let f = match (p.frequency_hz, p.ensemble_level) {
                (Some(f), None) => TAU * f,
                (None, Some(n)) => transition(n)?,
                _ => {
                    return Err(CliError::Config(format!(
                        "step {index}: give exactly one of `frequency_hz` and `ensemble_level`"
                    )))
                }
            };
            Ok((f, p.duration_s))
        };
        Ok(match self {
            Self::SetDetuning(d) => Step::SetDetuning(d.detuning_hz.map(|x| TAU * x)),
            Self::Wait(w) => Step::Wait(w.time_s),
            Self::PiPulse(p) => {
                let (frequency, duration) = pulse(p)?;
                Step::PiPulse { target: Target::Transmon, frequency, duration }
            }
            Self::HalfPiPulse(p) => {
                let (frequency, duration) = pulse(p)?;
                Step::HalfPiPulse { target: Target::Transmon, frequency, duration }
            }
            Self::Project(_) => Step::Project(Target::Transmon),
        })
    }
}
