//! Flat key/value sweep configuration files.
//!
//! One sweep per file, TOML syntax restricted to scalars and string arrays,
//! keys mirroring the sweep-spec fields:
//!
//! ```text
//! name = "asc-vs-snr"
//! metric = "asc"                  # asc | sop
//! regime = "both"                 # corollary1 | corollary2 | both
//! axis = "gbar_m_db"              # gbar_m_db | si_ratio_db | theta | zeta | R_s
//! axis_start = -5.0
//! axis_stop = 20.0
//! axis_step = 1.0
//! copulas = ["fgm:1.0", "frank:35", "independence"]
//! methods = ["closed_form", "quadrature", "monte_carlo"]
//! gbar_m_db = 10.0
//! gbar_e_db = 0.0
//! gbar_ms_db = 5.0
//! gbar_es_db = -10.0
//! R_s = 1.5
//! mc_n = 100000
//! seed = 1
//! tol = 1e-7
//! # optional curve families, each "key=value[,key=value]" with keys
//! # gbar_m_db / gbar_e_db:
//! scenarios = ["gbar_e_db=-5", "gbar_e_db=0", "gbar_e_db=5"]
//! ```

use secperf_core::copula::CopulaSpec;
use secperf_core::error::{Error, Result};
use secperf_core::metrics::Method;
use secperf_core::sweep::{
    AxisRange, FixedParams, MetricKind, RegimeChoice, Scenario, SweepAxis, SweepSpec,
};
use std::path::Path;

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn get_f64(table: &toml::Table, key: &str, default: Option<f64>) -> Result<f64> {
    match table.get(key) {
        Some(v) => v
            .as_float()
            .or_else(|| v.as_integer().map(|i| i as f64))
            .ok_or_else(|| cfg_err(format!("{key} must be a number"))),
        None => default.ok_or_else(|| cfg_err(format!("missing required key {key}"))),
    }
}

fn get_u64(table: &toml::Table, key: &str, default: u64) -> Result<u64> {
    match table.get(key) {
        Some(v) => v
            .as_integer()
            .filter(|&i| i >= 0)
            .map(|i| i as u64)
            .ok_or_else(|| cfg_err(format!("{key} must be a nonnegative integer"))),
        None => Ok(default),
    }
}

fn get_str<'t>(table: &'t toml::Table, key: &str) -> Result<&'t str> {
    table
        .get(key)
        .and_then(|v| v.as_str())
        .ok_or_else(|| cfg_err(format!("missing or non-string key {key}")))
}

fn get_str_array(table: &toml::Table, key: &str) -> Result<Vec<String>> {
    match table.get(key) {
        None => Ok(vec![]),
        Some(v) => v
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|x| {
                        x.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| cfg_err(format!("{key} entries must be strings")))
                    })
                    .collect()
            })
            .ok_or_else(|| cfg_err(format!("{key} must be an array")))?,
    }
}

/// Parse "fgm:0.5", "frank:-35", "independence", "frechet_upper",
/// "frechet_lower".
pub fn parse_copula(text: &str) -> Result<CopulaSpec> {
    let (family, param) = match text.split_once(':') {
        Some((f, p)) => (f.trim(), Some(p.trim())),
        None => (text.trim(), None),
    };
    let need = |p: Option<&str>| -> Result<f64> {
        p.ok_or_else(|| cfg_err(format!("copula '{text}' needs a parameter")))?
            .parse::<f64>()
            .map_err(|_| cfg_err(format!("copula '{text}': bad parameter")))
    };
    match family {
        "fgm" => CopulaSpec::fgm(need(param)?),
        "frank" => CopulaSpec::frank(need(param)?),
        "independence" => Ok(CopulaSpec::independence()),
        "frechet_lower" => Ok(CopulaSpec::frechet_lower()),
        "frechet_upper" => Ok(CopulaSpec::frechet_upper()),
        other => Err(cfg_err(format!("unknown copula family: {other}"))),
    }
}

fn parse_method(text: &str) -> Result<Method> {
    Ok(match text {
        "closed_form" => Method::ClosedForm,
        "quadrature" => Method::Quadrature,
        "monte_carlo" => Method::MonteCarlo,
        other => return Err(cfg_err(format!("unknown method: {other}"))),
    })
}

fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut s = Scenario {
        label: text.to_string(),
        gbar_m_db: None,
        gbar_e_db: None,
    };
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| cfg_err(format!("scenario entry '{part}' is not key=value")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| cfg_err(format!("scenario value '{value}' is not a number")))?;
        match key.trim() {
            "gbar_m_db" => s.gbar_m_db = Some(value),
            "gbar_e_db" => s.gbar_e_db = Some(value),
            other => return Err(cfg_err(format!("unknown scenario key: {other}"))),
        }
    }
    Ok(s)
}

/// Parse a config file into a sweep spec.
pub fn load_sweep_config(path: &Path) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| cfg_err(format!("cannot read {}: {e}", path.display())))?;
    parse_sweep_config(&text, path)
}

pub fn parse_sweep_config(text: &str, path: &Path) -> Result<SweepSpec> {
    let table: toml::Table = text
        .parse()
        .map_err(|e| cfg_err(format!("{}: {e}", path.display())))?;

    let metric = match get_str(&table, "metric")? {
        "asc" => MetricKind::Asc,
        "sop" => MetricKind::Sop,
        other => return Err(cfg_err(format!("metric must be asc or sop, got {other}"))),
    };
    let regime = match table.get("regime").and_then(|v| v.as_str()).unwrap_or("both") {
        "corollary1" => RegimeChoice::Corollary1,
        "corollary2" => RegimeChoice::Corollary2,
        "both" => RegimeChoice::Both,
        other => return Err(cfg_err(format!("unknown regime: {other}"))),
    };
    let axis = SweepAxis::parse(get_str(&table, "axis")?)?;
    let axis_range = AxisRange::new(
        get_f64(&table, "axis_start", None)?,
        get_f64(&table, "axis_stop", None)?,
        get_f64(&table, "axis_step", None)?,
    )?;

    let copulas = get_str_array(&table, "copulas")?
        .iter()
        .map(|s| parse_copula(s))
        .collect::<Result<Vec<_>>>()?;
    let mut methods = get_str_array(&table, "methods")?
        .iter()
        .map(|s| parse_method(s))
        .collect::<Result<Vec<_>>>()?;
    if methods.is_empty() {
        methods = vec![Method::ClosedForm, Method::Quadrature, Method::MonteCarlo];
    }
    let scenarios = get_str_array(&table, "scenarios")?
        .iter()
        .map(|s| parse_scenario(s))
        .collect::<Result<Vec<_>>>()?;

    let fixed = FixedParams {
        gbar_m_db: get_f64(&table, "gbar_m_db", Some(10.0))?,
        gbar_e_db: get_f64(&table, "gbar_e_db", Some(0.0))?,
        gbar_ms_db: get_f64(&table, "gbar_ms_db", Some(5.0))?,
        gbar_es_db: get_f64(&table, "gbar_es_db", Some(-10.0))?,
        r_s: get_f64(&table, "R_s", Some(1.5))?,
    };

    let name = table
        .get("name")
        .and_then(|v| v.as_str())
        .unwrap_or("sweep")
        .to_string();

    let spec = SweepSpec {
        name,
        metric,
        regime,
        copulas,
        axis,
        axis_range,
        fixed,
        scenarios,
        methods,
        mc_n: get_u64(&table, "mc_n", 100_000)?,
        seed: get_u64(&table, "seed", 1)?,
        tol: get_f64(&table, "tol", Some(1e-7))?,
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use secperf_core::copula::CopulaFamily;

    const SAMPLE: &str = r#"
name = "demo"
metric = "asc"
regime = "both"
axis = "gbar_m_db"
axis_start = 0.0
axis_stop = 10.0
axis_step = 5.0
copulas = ["fgm:1.0", "frank:35", "independence"]
methods = ["closed_form", "quadrature"]
gbar_e_db = 0.0
gbar_ms_db = 5.0
gbar_es_db = -10.0
R_s = 1.5
seed = 7
scenarios = ["gbar_e_db=-5", "gbar_e_db=5"]
"#;

    #[test]
    fn parses_sample() {
        let spec = parse_sweep_config(SAMPLE, Path::new("demo.toml")).unwrap();
        assert_eq!(spec.name, "demo");
        assert_eq!(spec.copulas.len(), 3);
        assert_eq!(spec.copulas[1].family(), CopulaFamily::Frank);
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.scenarios.len(), 2);
        assert_eq!(spec.scenarios[1].gbar_e_db, Some(5.0));
    }

    #[test]
    fn rejects_bad_copula() {
        assert!(parse_copula("gauss:0.5").is_err());
        assert!(parse_copula("fgm:2.0").is_err());
        assert!(parse_copula("fgm").is_err());
        assert!(parse_copula("frechet_upper").is_ok());
    }

    #[test]
    fn rejects_missing_axis() {
        let bad = "metric = \"asc\"\naxis_start = 0.0\naxis_stop = 1.0\naxis_step = 1.0\n";
        assert!(parse_sweep_config(bad, Path::new("x.toml")).is_err());
    }
}
