use std::fmt;
use std::path::PathBuf;

use gramkit::kernels::{BOUNDARY_MARGIN, DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL, DEFAULT_TRUNCATION};
use gramkit::partition::DEFAULT_TAU;
use gramkit::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::CliError;

pub const DEFAULT_SECTION_SIZES: [usize; 3] = [10, 20, 40];
pub const DEFAULT_OUTPUT_DIR: &str = "gramkit-out";

/// Largest section the dense eigensolver is asked to handle.
pub const MAX_SECTION: usize = 1000;

const UNIMODULAR_TOL: f64 = 1e-12;

/// A complex number written either as a bare real or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue(pub Complex64);

impl Serialize for ComplexValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ComplexVisitor;

        impl<'de> Visitor<'de> for ComplexVisitor {
            type Value = ComplexValue;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a [re, im] pair")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ComplexValue, E> {
                Ok(ComplexValue(Complex64::new(v, 0.0)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ComplexValue, E> {
                self.visit_f64(v as f64)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ComplexValue, E> {
                self.visit_f64(v as f64)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<ComplexValue, A::Error> {
                let re: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(ComplexValue(Complex64::new(re, im)))
            }
        }

        d.deserialize_any(ComplexVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TridiagMode {
    #[default]
    Interleaved,
    Centered,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassConfig {
    pub zeta: ComplexValue,
    pub mass: f64,
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceConfig {
    Hardy,
    DirichletAlpha {
        alpha: f64,
    },
    DirichletMu {
        masses: Vec<MassConfig>,
        #[serde(default = "default_truncation")]
        truncation: usize,
    },
    ExplicitVectors {
        vectors: Vec<Vec<ComplexValue>>,
        #[serde(default = "default_true")]
        normalize: bool,
    },
    TridiagExample {
        #[serde(default)]
        mode: TridiagMode,
        /// Start of the contiguous block is `-half_width`; defaults to `N / 2`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        half_width: Option<usize>,
    },
    /// Normalized random vectors in `C^dim`, reproducible from `seed`.
    RandomVectors {
        dim: usize,
        count: usize,
        #[serde(default)]
        seed: u64,
    },
}

impl SpaceConfig {
    pub fn is_kernel_space(&self) -> bool {
        matches!(
            self,
            SpaceConfig::Hardy | SpaceConfig::DirichletAlpha { .. } | SpaceConfig::DirichletMu { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PointsConfig {
    Explicit {
        values: Vec<ComplexValue>,
    },
    /// `(1 - q^n) e^{i theta}` for `n = 1..=count`.
    RadialExponential {
        q: f64,
        #[serde(default)]
        theta: f64,
        count: usize,
    },
    /// One radial exponential sequence per angle, concatenated in order.
    Rays {
        q: f64,
        thetas: Vec<f64>,
        count_per_ray: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_series_tol")]
    pub series_tol: f64,
    #[serde(default = "default_max_terms")]
    pub series_max_terms: usize,
}

fn default_series_tol() -> f64 {
    DEFAULT_SERIES_TOL
}

fn default_max_terms() -> usize {
    DEFAULT_MAX_TERMS
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            series_tol: DEFAULT_SERIES_TOL,
            series_max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnpConfig {
    pub omega0: ComplexValue,
}

fn default_sizes() -> Vec<usize> {
    DEFAULT_SECTION_SIZES.to_vec()
}

fn default_tau() -> f64 {
    DEFAULT_TAU
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_sizes")]
    pub section_sizes: Vec<usize>,
    #[serde(default = "default_tau")]
    pub tau: f64,
    /// Section used for the partition; defaults to the sequence length, or to
    /// the largest section size for infinite sequences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cnp: Option<CnpConfig>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            section_sizes: default_sizes(),
            tau: DEFAULT_TAU,
            n: None,
            tolerances: Tolerances::default(),
            cnp: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
}

fn default_dir() -> PathBuf {
    PathBuf::from(DEFAULT_OUTPUT_DIR)
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: default_dir() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: SpaceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PointsConfig>,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    /// Replaces the seed of a `random_vectors` space; other spaces are unaffected.
    pub fn with_seed(mut self, seed: u64) -> Self {
        if let SpaceConfig::RandomVectors { seed: s, .. } = &mut self.space {
            *s = seed;
        }
        self
    }

    /// The points of a kernel space, generated if necessary.
    pub fn points(&self) -> Result<Vec<Complex64>, CliError> {
        match &self.points {
            Some(spec) => generate_points(spec),
            None => Ok(Vec::new()),
        }
    }
}

/// Accepts `"space": "hardy"` and `"points": [...]` as shorthands.
fn expand_shorthands(value: &mut Value) {
    let Some(obj) = value.as_object_mut() else {
        return;
    };
    if let Some(Value::String(tag)) = obj.get("space") {
        let tag = tag.clone();
        obj.insert("space".into(), serde_json::json!({ "type": tag }));
    }
    if let Some(Value::Array(values)) = obj.get("points") {
        let values = values.clone();
        obj.insert("points".into(), serde_json::json!({ "type": "explicit", "values": values }));
    }
}

/// Parses and validates a JSON run configuration, filling in defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut value: Value =
        serde_json::from_str(text).map_err(|e| CliError::config("<document>", e.to_string()))?;
    expand_shorthands(&mut value);
    let config: RunConfig = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::config(path, e.into_inner().to_string())
    })?;
    validate(&config)?;
    Ok(config)
}

fn check_q(q: f64) -> Result<(), CliError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(CliError::config("points.q", format!("q = {q} must lie in (0, 1)")));
    }
    Ok(())
}

/// Expands a point specification into the list of points in order.
pub fn generate_points(spec: &PointsConfig) -> Result<Vec<Complex64>, CliError> {
    match spec {
        PointsConfig::Explicit { values } => Ok(values.iter().map(|v| v.0).collect()),
        PointsConfig::RadialExponential { q, theta, count } => {
            check_q(*q)?;
            if *count < 1 {
                return Err(CliError::config("points.count", "count must be at least 1"));
            }
            Ok(ray(*q, *theta, *count))
        }
        PointsConfig::Rays {
            q,
            thetas,
            count_per_ray,
        } => {
            check_q(*q)?;
            if *count_per_ray < 1 {
                return Err(CliError::config("points.count_per_ray", "count_per_ray must be at least 1"));
            }
            if thetas.is_empty() {
                return Err(CliError::config("points.thetas", "need at least one angle"));
            }
            Ok(thetas.iter().flat_map(|&t| ray(*q, t, *count_per_ray)).collect())
        }
    }
}

fn ray(q: f64, theta: f64, count: usize) -> Vec<Complex64> {
    let dir = Complex64::from_polar(1.0, theta);
    (1..=count)
        .map(|n| dir * (1.0 - q.powi(n as i32)))
        .collect()
}

fn finite(path: &str, x: f64) -> Result<(), CliError> {
    if !x.is_finite() {
        return Err(CliError::config(path, format!("non-finite value {x}")));
    }
    Ok(())
}

fn check_in_disc(path: &str, z: Complex64) -> Result<(), CliError> {
    finite(path, z.re)?;
    finite(path, z.im)?;
    if !(z.norm() < 1.0 - BOUNDARY_MARGIN) {
        return Err(CliError::config(
            path,
            format!("point ({}, {}) lies outside the open unit disc (|z| = {})", z.re, z.im, z.norm()),
        ));
    }
    Ok(())
}

fn validate(config: &RunConfig) -> Result<(), CliError> {
    let a = &config.analysis;
    if !(a.tau > 0.0 && a.tau <= 1.0) {
        return Err(CliError::config("analysis.tau", format!("tau = {} must lie in (0, 1]", a.tau)));
    }
    if a.section_sizes.is_empty() {
        return Err(CliError::config("analysis.section_sizes", "need at least one section size"));
    }
    if a.section_sizes.contains(&0) {
        return Err(CliError::config("analysis.section_sizes", "section sizes must be positive"));
    }
    if a.section_sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::config("analysis.section_sizes", "section sizes must be strictly ascending"));
    }
    if let Some(n) = a.n {
        if n == 0 || n > MAX_SECTION {
            return Err(CliError::config("analysis.n", format!("n must lie in 1..={MAX_SECTION}")));
        }
    }
    if !(a.tolerances.series_tol > 0.0) {
        return Err(CliError::config("analysis.tolerances.series_tol", "must be positive"));
    }
    if a.tolerances.series_max_terms == 0 {
        return Err(CliError::config("analysis.tolerances.series_max_terms", "must be positive"));
    }

    match &config.space {
        SpaceConfig::Hardy => {}
        SpaceConfig::DirichletAlpha { alpha } => {
            if !(0.0..=1.0).contains(alpha) {
                return Err(CliError::config("space.alpha", format!("alpha = {alpha} must lie in [0, 1]")));
            }
        }
        SpaceConfig::DirichletMu { masses, truncation } => {
            if masses.is_empty() {
                return Err(CliError::config("space.masses", "need at least one point mass"));
            }
            for (j, m) in masses.iter().enumerate() {
                let z = m.zeta.0;
                if !z.re.is_finite() || !z.im.is_finite() || (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
                    return Err(CliError::config(
                        format!("space.masses[{j}].zeta"),
                        format!("zeta = ({}, {}) is not unimodular", z.re, z.im),
                    ));
                }
                if !(m.mass > 0.0 && m.mass.is_finite()) {
                    return Err(CliError::config(
                        format!("space.masses[{j}].mass"),
                        format!("mass = {} must be positive", m.mass),
                    ));
                }
            }
            if *truncation == 0 {
                return Err(CliError::config("space.truncation", "must be positive"));
            }
        }
        SpaceConfig::ExplicitVectors { vectors, .. } => {
            let Some(first) = vectors.first() else {
                return Err(CliError::config("space.vectors", "need at least one vector"));
            };
            if first.is_empty() {
                return Err(CliError::config("space.vectors[0]", "vectors must have positive dimension"));
            }
            if vectors.len() > MAX_SECTION {
                return Err(CliError::config("space.vectors", format!("at most {MAX_SECTION} vectors")));
            }
            for (n, v) in vectors.iter().enumerate() {
                if v.len() != first.len() {
                    return Err(CliError::config(
                        format!("space.vectors[{n}]"),
                        format!("dimension {} differs from {}", v.len(), first.len()),
                    ));
                }
                for (k, z) in v.iter().enumerate() {
                    let path = format!("space.vectors[{n}][{k}]");
                    finite(&path, z.0.re)?;
                    finite(&path, z.0.im)?;
                }
            }
        }
        SpaceConfig::TridiagExample { .. } => {}
        SpaceConfig::RandomVectors { dim, count, .. } => {
            if *dim == 0 {
                return Err(CliError::config("space.dim", "must be positive"));
            }
            if *count == 0 || *count > MAX_SECTION {
                return Err(CliError::config("space.count", format!("count must lie in 1..={MAX_SECTION}")));
            }
        }
    }

    if config.space.is_kernel_space() {
        let Some(spec) = &config.points else {
            return Err(CliError::config("points", "kernel spaces need a point list or generator"));
        };
        let points = generate_points(spec)?;
        if points.is_empty() {
            return Err(CliError::config("points", "need at least one point"));
        }
        if points.len() > MAX_SECTION {
            return Err(CliError::config("points", format!("at most {MAX_SECTION} points")));
        }
        for (k, &z) in points.iter().enumerate() {
            check_in_disc(&format!("points[{k}]"), z)?;
        }
        if let Some(cnp) = &a.cnp {
            check_in_disc("analysis.cnp.omega0", cnp.omega0.0)?;
        }
    } else {
        if config.points.is_some() {
            return Err(CliError::config("points", "points only apply to kernel spaces"));
        }
        if a.cnp.is_some() {
            return Err(CliError::config("analysis.cnp", "the CNP diagnostic only applies to kernel spaces"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_err(text: &str) -> (String, String) {
        match parse_config(text).unwrap_err() {
            CliError::Config { path, message } => (path, message),
            other => panic!("expected a config error, got {other}"),
        }
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config(r#"{"space": "hardy", "points": [0.1, 0.2]}"#).unwrap();
        assert_eq!(c.space, SpaceConfig::Hardy);
        assert_eq!(c.analysis.tau, 0.5);
        assert_eq!(c.analysis.section_sizes, vec![10, 20, 40]);
        assert_eq!(c.analysis.tolerances, Tolerances::default());
        assert_eq!(c.output.dir, PathBuf::from(DEFAULT_OUTPUT_DIR));
        assert_eq!(
            c.points().unwrap(),
            vec![Complex64::new(0.1, 0.0), Complex64::new(0.2, 0.0)]
        );
    }

    #[test]
    fn complex_points_as_pairs() {
        let c = parse_config(r#"{"space": {"type": "hardy"}, "points": [[0.0, 0.5], 0.25]}"#).unwrap();
        assert_eq!(c.points().unwrap()[0], Complex64::new(0.0, 0.5));
        let (path, _) = config_err(r#"{"space": "hardy", "points": [[0.0, 0.5, 1.0]]}"#);
        assert!(path.contains("points"), "{path}");
    }

    #[test]
    fn point_outside_disc_is_named() {
        let (path, message) = config_err(r#"{"space": "hardy", "points": [0.1, 1.2]}"#);
        assert_eq!(path, "points[1]");
        assert!(message.contains("1.2"));
    }

    #[test]
    fn tau_is_validated() {
        let (path, _) = config_err(r#"{"space": "hardy", "points": [0.1], "analysis": {"tau": 0}}"#);
        assert_eq!(path, "analysis.tau");
        assert!(parse_config(r#"{"space": "hardy", "points": [0.1], "analysis": {"tau": 1}}"#).is_ok());
    }

    #[test]
    fn unknown_space_and_fields() {
        let (path, message) = config_err(r#"{"space": "bergman", "points": [0.1]}"#);
        assert_eq!(path, "space.type");
        assert!(message.contains("bergman"));
        let (path, _) = config_err(r#"{"space": "hardy", "points": [0.1], "analysis": {"sizes": [3]}}"#);
        assert!(path.starts_with("analysis"), "{path}");
        assert!(matches!(parse_config("{not json"), Err(CliError::Config { .. })));
    }

    #[test]
    fn measure_must_be_unimodular() {
        let (path, _) = config_err(
            r#"{"space": {"type": "dirichlet_mu", "masses": [{"zeta": [1, 0], "mass": 1}, {"zeta": [0.5, 0], "mass": 1}]},
                "points": [0.1]}"#,
        );
        assert_eq!(path, "space.masses[1].zeta");
        let c = parse_config(
            r#"{"space": {"type": "dirichlet_mu", "masses": [{"zeta": [0, 1], "mass": 0.5}]}, "points": [0.1]}"#,
        )
        .unwrap();
        assert!(matches!(c.space, SpaceConfig::DirichletMu { truncation: 40, .. }));
    }

    #[test]
    fn section_sizes_must_ascend() {
        let (path, _) = config_err(
            r#"{"space": "tridiag_example", "analysis": {"section_sizes": [20, 10]}}"#,
        );
        assert_eq!(path, "analysis.section_sizes");
    }

    #[test]
    fn points_are_kernel_only() {
        let (path, _) = config_err(r#"{"space": "tridiag_example", "points": [0.1]}"#);
        assert_eq!(path, "points");
        let (path, _) = config_err(r#"{"space": "hardy"}"#);
        assert_eq!(path, "points");
    }

    #[test]
    fn radial_exponential_examples() {
        let pts = generate_points(&PointsConfig::RadialExponential {
            q: 0.5,
            theta: 0.0,
            count: 3,
        })
        .unwrap();
        assert_eq!(
            pts,
            vec![Complex64::new(0.5, 0.0), Complex64::new(0.75, 0.0), Complex64::new(0.875, 0.0)]
        );
        let neg = generate_points(&PointsConfig::RadialExponential {
            q: 0.5,
            theta: std::f64::consts::PI,
            count: 3,
        })
        .unwrap();
        for (a, b) in pts.iter().zip(&neg) {
            assert!((a + b).norm() < 1e-15);
        }
        assert!(generate_points(&PointsConfig::RadialExponential {
            q: 0.5,
            theta: 0.0,
            count: 0
        })
        .is_err());
        assert!(generate_points(&PointsConfig::RadialExponential {
            q: 1.0,
            theta: 0.0,
            count: 3
        })
        .is_err());
    }

    #[test]
    fn rays_concatenate() {
        let pts = generate_points(&PointsConfig::Rays {
            q: 0.5,
            thetas: vec![0.0, std::f64::consts::FRAC_PI_2],
            count_per_ray: 2,
        })
        .unwrap();
        assert_eq!(pts.len(), 4);
        assert!((pts[3] - Complex64::new(0.0, 0.75)).norm() < 1e-15);
    }

    #[test]
    fn seed_override() {
        let c = parse_config(r#"{"space": {"type": "random_vectors", "dim": 3, "count": 5}}"#)
            .unwrap()
            .with_seed(9);
        assert!(matches!(c.space, SpaceConfig::RandomVectors { seed: 9, .. }));
    }
}
