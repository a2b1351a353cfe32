//! Parameter-sweep runner with figure presets and deterministic CSV output.
//!
//! A sweep evaluates one metric (ASC or SOP) along one axis for every
//! combination of scenario, secrecy regime, copula, and estimation method,
//! and renders the result as a CSV table with `#`-prefixed provenance header
//! lines. Identical spec and seed give byte-identical output.
//!
//! The CSV row schema is
//! `axis,regime,family,param,method,value,error_bound,n_samples,validity_flag`;
//! scenarios (curve families such as the swept-figure's gbar_e grid) are
//! emitted as `#`-delimited sections so the row schema stays fixed.

use crate::channel::{db_to_linear, WiretapParams};
use crate::copula::{CopulaFamily, CopulaSpec};
use crate::error::{Error, Result};
use crate::metrics::{self, Method, TargetRate};
use crate::secrecy::SecrecyRegime;
use std::fmt::Write as _;

/// Which metric a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Asc,
    Sop,
}

impl MetricKind {
    pub fn label(self) -> &'static str {
        match self {
            MetricKind::Asc => "asc",
            MetricKind::Sop => "sop",
        }
    }
}

/// Regime selection for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeChoice {
    Corollary1,
    Corollary2,
    Both,
}

impl RegimeChoice {
    fn regimes(self) -> Vec<SecrecyRegime> {
        match self {
            RegimeChoice::Corollary1 => vec![SecrecyRegime::Corollary1],
            RegimeChoice::Corollary2 => vec![SecrecyRegime::Corollary2],
            RegimeChoice::Both => vec![SecrecyRegime::Corollary1, SecrecyRegime::Corollary2],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RegimeChoice::Corollary1 => "corollary1",
            RegimeChoice::Corollary2 => "corollary2",
            RegimeChoice::Both => "both",
        }
    }
}

/// The swept variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Average main-channel SNR in dB.
    GbarMDb,
    /// Side-information ratio gbar_ms/gbar_es in dB; gbar_es stays at its
    /// fixed value and gbar_ms_db = gbar_es_db + axis value.
    SiRatioDb,
    /// FGM dependence parameter.
    Theta,
    /// Frank dependence parameter.
    Zeta,
    /// Target secrecy rate in bits.
    TargetRate,
}

impl SweepAxis {
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::GbarMDb => "gbar_m_db",
            SweepAxis::SiRatioDb => "si_ratio_db",
            SweepAxis::Theta => "theta",
            SweepAxis::Zeta => "zeta",
            SweepAxis::TargetRate => "R_s",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "gbar_m_db" => SweepAxis::GbarMDb,
            "si_ratio_db" => SweepAxis::SiRatioDb,
            "theta" => SweepAxis::Theta,
            "zeta" => SweepAxis::Zeta,
            "R_s" | "r_s" => SweepAxis::TargetRate,
            other => return Err(Error::Config(format!("unknown axis: {other}"))),
        })
    }
}

/// Inclusive arithmetic progression start, stop, step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AxisRange {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 || stop < start {
            return Err(Error::Config(format!(
                "axis range must be monotone with positive step, got [{start}, {stop}] step {step}"
            )));
        }
        Ok(Self { start, stop, step })
    }

    pub fn values(&self) -> Vec<f64> {
        let mut out = vec![];
        let n = ((self.stop - self.start) / self.step + 0.5).floor() as usize;
        for i in 0..=n {
            let v = self.start + self.step * i as f64;
            if v <= self.stop + 1e-9 * self.step {
                out.push(v);
            }
        }
        out
    }
}

/// One curve family: overrides applied on top of the fixed parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub gbar_m_db: Option<f64>,
    pub gbar_e_db: Option<f64>,
}

/// Fixed parameters of a sweep, in the CLI-facing dB units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub gbar_m_db: f64,
    pub gbar_e_db: f64,
    pub gbar_ms_db: f64,
    pub gbar_es_db: f64,
    pub r_s: f64,
}

/// Full description of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub metric: MetricKind,
    pub regime: RegimeChoice,
    pub copulas: Vec<CopulaSpec>,
    pub axis: SweepAxis,
    pub axis_range: AxisRange,
    pub fixed: FixedParams,
    pub scenarios: Vec<Scenario>,
    pub methods: Vec<Method>,
    pub mc_n: u64,
    pub seed: u64,
    pub tol: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.copulas.is_empty() && !matches!(self.axis, SweepAxis::Theta | SweepAxis::Zeta) {
            return Err(Error::Config("copula list must not be empty".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("method list must not be empty".into()));
        }
        if self.methods.contains(&Method::MonteCarlo) && self.mc_n == 0 {
            return Err(Error::Config(
                "mc_n must be >= 1 when monte_carlo is requested".into(),
            ));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Config(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.axis_range.values().is_empty() {
            return Err(Error::Config("axis range is empty".into()));
        }
        Ok(())
    }
}

/// One output row. `param` is NaN for parameter-free copulas, `n_samples` is
/// present only for Monte-Carlo rows, `validity` is "ok", a trust flag, or an
/// `error:` marker when the method is undefined for the row's copula.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub axis_value: f64,
    pub regime: SecrecyRegime,
    pub family: &'static str,
    pub param: f64,
    pub method: Method,
    pub value: f64,
    pub error_bound: f64,
    pub n_samples: Option<u64>,
    pub validity: String,
}

/// A finished sweep: provenance header lines plus one row block per scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub sections: Vec<(String, Vec<ResultRow>)>,
}

pub const CSV_COLUMNS: &str =
    "axis,regime,family,param,method,value,error_bound,n_samples,validity_flag";

fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.12e}")
    }
}

impl SweepTable {
    /// Render the table as CSV text. Deterministic: same table, same bytes.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in &self.header {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "{CSV_COLUMNS}");
        for (label, rows) in &self.sections {
            let _ = writeln!(out, "# scenario: {label}");
            for r in rows {
                let n = r.n_samples.map(|n| n.to_string()).unwrap_or_default();
                let param = if r.param.is_nan() {
                    String::new()
                } else {
                    format!("{}", r.param)
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    fmt_float(r.axis_value),
                    r.regime.label(),
                    r.family,
                    param,
                    r.method.label(),
                    fmt_float(r.value),
                    fmt_float(r.error_bound),
                    n,
                    r.validity
                );
            }
        }
        out
    }

    /// Oracle-triangle gate: every FGM row pair (closed form, quadrature) at
    /// the same coordinates must agree within `tol` unless the closed form
    /// carries a validity flag. Returns the offending descriptions.
    pub fn gate_violations(&self, tol: f64) -> Vec<String> {
        let mut bad = vec![];
        for (label, rows) in &self.sections {
            for cf in rows.iter().filter(|r| {
                r.method == Method::ClosedForm && r.family == "fgm" && r.validity == "ok"
            }) {
                if let Some(q) = rows.iter().find(|r| {
                    r.method == Method::Quadrature
                        && r.family == cf.family
                        && r.param == cf.param
                        && r.regime == cf.regime
                        && r.axis_value == cf.axis_value
                        && !r.validity.starts_with("error")
                }) {
                    let delta = (cf.value - q.value).abs();
                    if delta.is_nan() || delta > tol {
                        bad.push(format!(
                            "scenario '{label}' axis {} regime {} theta {}: |closed - quadrature| = {delta:.3e} > {tol:.1e}",
                            cf.axis_value,
                            cf.regime.label(),
                            cf.param,
                        ));
                    }
                }
            }
        }
        bad
    }
}

struct RowPoint {
    params: WiretapParams,
    rate: TargetRate,
    copula: CopulaSpec,
}

/// Resolve one grid point: apply scenario overrides and the axis value.
fn resolve_point(
    spec: &SweepSpec,
    scenario: &Scenario,
    axis_value: f64,
    copula: &CopulaSpec,
) -> Result<RowPoint> {
    let f = &spec.fixed;
    let mut gbar_m_db = scenario.gbar_m_db.unwrap_or(f.gbar_m_db);
    let gbar_e_db = scenario.gbar_e_db.unwrap_or(f.gbar_e_db);
    let mut gbar_ms_db = f.gbar_ms_db;
    let mut r_s = f.r_s;
    let mut copula = *copula;
    match spec.axis {
        SweepAxis::GbarMDb => gbar_m_db = axis_value,
        SweepAxis::SiRatioDb => gbar_ms_db = f.gbar_es_db + axis_value,
        SweepAxis::Theta => copula = CopulaSpec::fgm(axis_value)?,
        SweepAxis::Zeta => copula = CopulaSpec::frank(axis_value)?,
        SweepAxis::TargetRate => r_s = axis_value,
    }
    let params = WiretapParams::from_average_snrs(
        db_to_linear(gbar_m_db),
        db_to_linear(gbar_e_db),
        db_to_linear(gbar_ms_db),
        db_to_linear(f.gbar_es_db),
    )?;
    Ok(RowPoint {
        params,
        rate: TargetRate::new(r_s)?,
        copula,
    })
}

fn evaluate_row(
    spec: &SweepSpec,
    point: &RowPoint,
    regime: SecrecyRegime,
    method: Method,
    axis_value: f64,
    row_seed: u64,
) -> ResultRow {
    let copula = &point.copula;
    let family = copula.family().label();
    let param = copula.param();
    let base = ResultRow {
        axis_value,
        regime,
        family,
        param,
        method,
        value: f64::NAN,
        error_bound: f64::NAN,
        n_samples: None,
        validity: String::new(),
    };

    let estimate = match (spec.metric, method) {
        (MetricKind::Asc, Method::ClosedForm) => {
            if copula.family() == CopulaFamily::Fgm {
                metrics::asc_closed_form(&point.params, param, regime)
            } else {
                Err(Error::UnsupportedFamily {
                    family,
                    operation: "asc_closed_form",
                })
            }
        }
        (MetricKind::Asc, Method::Quadrature) => {
            metrics::asc_quadrature(&point.params, copula, regime, spec.tol)
        }
        (MetricKind::Asc, Method::MonteCarlo) => {
            metrics::asc_monte_carlo(&point.params, copula, regime, spec.mc_n, row_seed)
        }
        (MetricKind::Sop, Method::ClosedForm) => {
            if copula.family() == CopulaFamily::Fgm {
                metrics::sop_closed_form(&point.params, param, &point.rate, regime)
            } else {
                Err(Error::UnsupportedFamily {
                    family,
                    operation: "sop_closed_form",
                })
            }
        }
        (MetricKind::Sop, Method::Quadrature) => {
            metrics::sop_quadrature(&point.params, copula, &point.rate, regime, spec.tol)
        }
        (MetricKind::Sop, Method::MonteCarlo) => {
            metrics::sop_monte_carlo(&point.params, copula, &point.rate, regime, spec.mc_n, row_seed)
        }
    };

    match estimate {
        Ok(est) => ResultRow {
            value: est.value,
            error_bound: est.error_bound,
            n_samples: est.n_samples,
            validity: est.validity.label().to_string(),
            ..base
        },
        Err(e) => ResultRow {
            validity: format!("error:{}", compact_error(&e)),
            error_bound: f64::NAN,
            ..base
        },
    }
}

fn compact_error(e: &Error) -> String {
    match e {
        Error::UnsupportedFamily { .. } => "unsupported-family".to_string(),
        Error::ToleranceNotMet { .. } => "tolerance-not-met".to_string(),
        other => format!("{other}").replace(',', ";"),
    }
}

/// Run a sweep. Rows are produced in deterministic order: scenarios in list
/// order, axis ascending, regimes (1 then 2), copulas in list order, methods
/// in list order. Per-row method failures are recorded in the row's validity
/// column; they never abort the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let axis_values = spec.axis_range.values();
    let regimes = spec.regime.regimes();
    let scenarios: Vec<Scenario> = if spec.scenarios.is_empty() {
        vec![Scenario {
            label: "default".to_string(),
            gbar_m_db: None,
            gbar_e_db: None,
        }]
    } else {
        spec.scenarios.clone()
    };
    // For theta/zeta axes the copula comes from the axis itself.
    let copulas: Vec<CopulaSpec> = match spec.axis {
        SweepAxis::Theta | SweepAxis::Zeta => vec![CopulaSpec::independence()],
        _ => spec.copulas.clone(),
    };

    let mut header = vec![
        format!("secperf v{}", env!("CARGO_PKG_VERSION")),
        format!("sweep: {}", spec.name),
        format!("metric: {}", spec.metric.label()),
        format!("regime: {}", spec.regime.label()),
        format!(
            "axis: {} from {} to {} step {}",
            spec.axis.label(),
            spec.axis_range.start,
            spec.axis_range.stop,
            spec.axis_range.step
        ),
        format!(
            "fixed: gbar_m_db={} gbar_e_db={} gbar_ms_db={} gbar_es_db={} R_s={}",
            spec.fixed.gbar_m_db,
            spec.fixed.gbar_e_db,
            spec.fixed.gbar_ms_db,
            spec.fixed.gbar_es_db,
            spec.fixed.r_s
        ),
        format!(
            "methods: {}",
            spec.methods
                .iter()
                .map(|m| m.label())
                .collect::<Vec<_>>()
                .join("+")
        ),
        format!("seed: {}", spec.seed),
        format!("mc_n: {}", spec.mc_n),
        format!("tol: {:e}", spec.tol),
    ];
    let copula_desc: Vec<String> = copulas
        .iter()
        .map(|c| {
            if c.param().is_nan() {
                c.family().label().to_string()
            } else {
                format!("{}:{}", c.family().label(), c.param())
            }
        })
        .collect();
    header.push(format!("copulas: {}", copula_desc.join(" ")));

    let mut sections = vec![];
    let mut row_counter: u64 = 0;
    for scenario in &scenarios {
        let mut rows = vec![];
        for &axis_value in &axis_values {
            for &regime in &regimes {
                for copula in &copulas {
                    match resolve_point(spec, scenario, axis_value, copula) {
                        Ok(point) => {
                            for &method in &spec.methods {
                                let row_seed = spec.seed.wrapping_add(row_counter);
                                row_counter += 1;
                                rows.push(evaluate_row(
                                    spec, &point, regime, method, axis_value, row_seed,
                                ));
                            }
                        }
                        Err(e) => {
                            for &method in &spec.methods {
                                row_counter += 1;
                                rows.push(ResultRow {
                                    axis_value,
                                    regime,
                                    family: copula.family().label(),
                                    param: copula.param(),
                                    method,
                                    value: f64::NAN,
                                    error_bound: f64::NAN,
                                    n_samples: None,
                                    validity: format!("error:{}", compact_error(&e)),
                                });
                            }
                        }
                    }
                }
            }
        }
        sections.push((scenario.label.clone(), rows));
    }
    Ok(SweepTable { header, sections })
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

/// Default eavesdropper-SNR grid for the figure presets. The source curves
/// use "selected values" without printing the list; -5/0/5 dB brackets the
/// interesting crossover region and is recorded in the output header.
const PRESET_GBAR_E_DB: [f64; 3] = [-5.0, 0.0, 5.0];

fn ge_scenarios() -> Vec<Scenario> {
    PRESET_GBAR_E_DB
        .iter()
        .map(|&ge| Scenario {
            label: format!("gbar_e_db={ge}"),
            gbar_m_db: None,
            gbar_e_db: Some(ge),
        })
        .collect()
}

/// Sweep specifications for the five shipped figure presets.
///
/// fig2: ASC vs gbar_m, FGM theta = 1, gbar_ms = 5 dB, gbar_es = -10 dB.
/// fig3: ASC vs SI ratio, three gbar_m/gbar_e orderings, gbar_es = 0 dB.
/// fig4: SOP vs gbar_m, FGM theta = 1, gbar_ms = 5 dB, gbar_es = -5 dB.
/// fig5: ASC vs gbar_m under FGM theta = +-1, Frank zeta = +-35,
///       independence; gbar_ms = 5 dB, gbar_es = -10 dB.
/// fig6: SOP counterpart of fig5 with gbar_es = -5 dB.
///
/// All SNR-like axes step 1 dB (the SI-ratio axis steps 2 dB); R_s = 1.5.
pub fn preset_figure(name: &str) -> Result<SweepSpec> {
    let base_fixed = FixedParams {
        gbar_m_db: 10.0,
        gbar_e_db: 0.0,
        gbar_ms_db: 5.0,
        gbar_es_db: -10.0,
        r_s: 1.5,
    };
    let snr_axis = AxisRange::new(-5.0, 20.0, 1.0)?;
    let all_methods = vec![Method::ClosedForm, Method::Quadrature, Method::MonteCarlo];
    let fgm1 = CopulaSpec::fgm(1.0)?;

    let spec = match name {
        "fig2" => SweepSpec {
            name: "fig2".into(),
            metric: MetricKind::Asc,
            regime: RegimeChoice::Both,
            copulas: vec![fgm1],
            axis: SweepAxis::GbarMDb,
            axis_range: snr_axis,
            fixed: base_fixed,
            scenarios: ge_scenarios(),
            methods: all_methods,
            mc_n: 100_000,
            seed: 1,
            tol: 1e-7,
        },
        "fig3" => SweepSpec {
            name: "fig3".into(),
            metric: MetricKind::Asc,
            regime: RegimeChoice::Both,
            copulas: vec![fgm1],
            axis: SweepAxis::SiRatioDb,
            axis_range: AxisRange::new(-10.0, 20.0, 2.0)?,
            fixed: FixedParams {
                gbar_es_db: 0.0,
                ..base_fixed
            },
            scenarios: vec![
                Scenario {
                    label: "gbar_m>gbar_e (10 dB vs 0 dB)".into(),
                    gbar_m_db: Some(10.0),
                    gbar_e_db: Some(0.0),
                },
                Scenario {
                    label: "gbar_m=gbar_e (5 dB vs 5 dB)".into(),
                    gbar_m_db: Some(5.0),
                    gbar_e_db: Some(5.0),
                },
                Scenario {
                    label: "gbar_m<gbar_e (0 dB vs 10 dB)".into(),
                    gbar_m_db: Some(0.0),
                    gbar_e_db: Some(10.0),
                },
            ],
            methods: all_methods,
            mc_n: 100_000,
            seed: 1,
            tol: 1e-7,
        },
        "fig4" => SweepSpec {
            name: "fig4".into(),
            metric: MetricKind::Sop,
            regime: RegimeChoice::Both,
            copulas: vec![fgm1],
            axis: SweepAxis::GbarMDb,
            axis_range: snr_axis,
            fixed: FixedParams {
                gbar_es_db: -5.0,
                ..base_fixed
            },
            scenarios: ge_scenarios(),
            methods: all_methods,
            mc_n: 100_000,
            seed: 1,
            tol: 1e-7,
        },
        "fig5" | "fig6" => SweepSpec {
            name: name.into(),
            metric: if name == "fig5" {
                MetricKind::Asc
            } else {
                MetricKind::Sop
            },
            regime: RegimeChoice::Both,
            copulas: vec![
                CopulaSpec::fgm(1.0)?,
                CopulaSpec::fgm(-1.0)?,
                CopulaSpec::frank(35.0)?,
                CopulaSpec::frank(-35.0)?,
                CopulaSpec::independence(),
            ],
            axis: SweepAxis::GbarMDb,
            axis_range: snr_axis,
            fixed: FixedParams {
                gbar_es_db: if name == "fig5" { -10.0 } else { -5.0 },
                ..base_fixed
            },
            scenarios: ge_scenarios(),
            methods: all_methods,
            mc_n: 100_000,
            seed: 1,
            tol: 1e-7,
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(spec)
}
