use gramkit::kernels::CnpDiagnostic;
use gramkit::partition::{LambdaTrend, PartitionReport, Warning, FINITE_SECTION_CAVEAT};
use gramkit::spectral::SpectralSummary;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

impl From<SpectralSummary> for Summary {
    fn from(s: SpectralSummary) -> Self {
        Self {
            n: s.n,
            lambda_min: s.lambda_min,
            lambda_max: s.lambda_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub previous: Summary,
    pub last: Summary,
    pub relative_change: f64,
    pub stabilized: bool,
}

impl From<LambdaTrend> for Trend {
    fn from(t: LambdaTrend) -> Self {
        Self {
            previous: t.previous.into(),
            last: t.last.into(),
            relative_change: t.relative_change,
            stabilized: t.stabilized(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    pub gamma: f64,
    pub separated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnemyGraphSummary {
    pub tau: f64,
    pub edge_count: usize,
    pub max_degree: usize,
    /// `degree_histogram[d]` counts indices with exactly `d` enemies.
    pub degree_histogram: Vec<usize>,
}

/// Spectral summary of the class members among the first `section_size` indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSection {
    pub section_size: usize,
    pub class_size: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub id: usize,
    pub members: Vec<usize>,
    pub gamma: f64,
    pub profile: Vec<ClassSection>,
    pub lambda_min_trend: Option<Trend>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSummary {
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bessel {
    /// Largest absolute row sum of the section; the constant fed to the degree bound.
    pub schur: f64,
    /// Largest eigenvalue of the section.
    pub spectral: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checks {
    pub classes_enemy_free: bool,
    pub class_count_within_bound: bool,
    pub degree_within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cnp {
    pub omega0: [f64; 2],
    pub points: usize,
    pub lambda_min: f64,
    pub positive_semidefinite: bool,
    pub max_asymmetry: f64,
    /// Only the Hardy space is expected to pass on its raw norm.
    pub verdict_applies: bool,
}

impl Cnp {
    pub fn new(omega0: [f64; 2], points: usize, d: &CnpDiagnostic, verdict_applies: bool) -> Self {
        Self {
            omega0,
            points,
            lambda_min: d.lambda_min,
            positive_semidefinite: d.positive_semidefinite,
            max_asymmetry: d.max_asymmetry,
            verdict_applies,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WarningEntry {
    pub kind: String,
    pub message: String,
}

impl WarningEntry {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        Self {
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

impl From<&Warning> for WarningEntry {
    fn from(w: &Warning) -> Self {
        let kind = match w {
            Warning::NotSeparated { .. } => "not_separated",
            Warning::NotStabilized { .. } => "not_stabilized",
            Warning::DegreeBoundExceeded { .. } => "degree_bound_exceeded",
        };
        Self::new(kind, w.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    /// Wall-clock time of the run; the only field that varies between identical runs.
    pub generated_at: String,
    pub config: Value,
    pub space: String,
    pub n: usize,
    pub section_sizes: Vec<usize>,
    pub caveat: String,
    pub separation: Separation,
    pub enemy_graph: EnemyGraphSummary,
    pub partition: PartitionSummary,
    pub section: Summary,
    pub profile: Vec<Summary>,
    pub lambda_min_trend: Option<Trend>,
    pub bessel: Bessel,
    pub degree_bound: usize,
    pub checks: Checks,
    pub abs_gram_ratio: f64,
    pub cnp: Option<Cnp>,
    pub warnings: Vec<WarningEntry>,
}

impl ReportDocument {
    pub fn from_partition(
        config: Value,
        space: String,
        section: SpectralSummary,
        report: &PartitionReport,
        abs_gram_ratio: f64,
    ) -> Self {
        let classes = report
            .classes
            .iter()
            .map(|c| ClassEntry {
                id: c.id,
                members: c.members.clone(),
                gamma: c.gamma,
                profile: c
                    .profile
                    .iter()
                    .map(|s| ClassSection {
                        section_size: s.section_size,
                        class_size: s.summary.n,
                        lambda_min: s.summary.lambda_min,
                        lambda_max: s.summary.lambda_max,
                    })
                    .collect(),
                lambda_min_trend: c.trend().map(Trend::from),
            })
            .collect();
        Self {
            tool: "gramkit".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            config,
            space,
            n: report.n,
            section_sizes: report.profile.iter().map(|s| s.n).collect(),
            caveat: FINITE_SECTION_CAVEAT.to_string(),
            separation: Separation {
                gamma: report.separation.gamma,
                separated: report.separation.separated,
            },
            enemy_graph: EnemyGraphSummary {
                tau: report.tau,
                edge_count: report.graph.edge_count(),
                max_degree: report.max_degree,
                degree_histogram: report.graph.degree_histogram(),
            },
            partition: PartitionSummary {
                class_count: report.partition.class_count(),
                classes,
            },
            section: section.into(),
            profile: report.profile.iter().copied().map(Summary::from).collect(),
            lambda_min_trend: report.trend().map(Trend::from),
            bessel: Bessel {
                schur: report.bessel_schur,
                spectral: report.bessel_spectral,
            },
            degree_bound: report.degree_bound,
            checks: Checks {
                classes_enemy_free: report.classes_enemy_free,
                class_count_within_bound: report.class_count_within_bound,
                degree_within_bound: report.degree_within_bound,
            },
            abs_gram_ratio,
            cnp: None,
            warnings: report.warnings.iter().map(WarningEntry::from).collect(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
