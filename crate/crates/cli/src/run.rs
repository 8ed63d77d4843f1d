use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gramkit::kernels::{
    cnp_matrix, DMuSpace, DirichletAlphaSpace, HardySpace, KernelGramProvider, KernelSpace, Point,
    PointMassMeasure,
};
use gramkit::partition::{abs_gram_ratio_matrix, separated_partition_report};
use gramkit::sequences::{ExplicitSequence, GramianProvider, TridiagExampleProvider};
use gramkit::spectral::{spectral_summary, HermitianMatrix};
use gramkit::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, SpaceConfig, TridiagMode};
use crate::error::CliError;
use crate::report::{Cnp, ReportDocument, WarningEntry};

pub const REPORT_FILE: &str = "report.json";
pub const GRAMIAN_FILE: &str = "gramian.csv";
pub const PROFILE_FILE: &str = "profile.csv";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

/// Report plus the Gramian section it was computed from.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub document: ReportDocument,
    pub section: HermitianMatrix,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub document: ReportDocument,
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
}

enum Built {
    Kernel {
        provider: KernelGramProvider,
        space: Box<dyn KernelSpace>,
        points: Vec<Point>,
    },
    Explicit(ExplicitSequence, &'static str),
    Tridiag(TridiagExampleProvider, TridiagMode),
}

impl Built {
    fn provider(&self) -> &dyn GramianProvider {
        match self {
            Built::Kernel { provider, .. } => provider,
            Built::Explicit(seq, _) => seq,
            Built::Tridiag(t, _) => t,
        }
    }

    fn name(&self) -> String {
        match self {
            Built::Kernel { provider, .. } => provider.space_name().to_string(),
            Built::Explicit(_, name) => name.to_string(),
            Built::Tridiag(_, TridiagMode::Interleaved) => "tridiag_example(interleaved)".into(),
            Built::Tridiag(_, TridiagMode::Centered) => "tridiag_example(centered)".into(),
        }
    }
}

fn build(config: &RunConfig, infinite_n: usize) -> Result<Built, CliError> {
    let tol = config.analysis.tolerances;
    let space: Box<dyn KernelSpace> = match &config.space {
        SpaceConfig::Hardy => Box::new(HardySpace),
        SpaceConfig::DirichletAlpha { alpha } => Box::new(
            DirichletAlphaSpace::with_series(*alpha, tol.series_tol, tol.series_max_terms)
                .map_err(|e| CliError::from_build("space", e))?,
        ),
        SpaceConfig::DirichletMu { masses, truncation } => {
            let measure = PointMassMeasure::new(masses.iter().map(|m| (m.zeta.0, m.mass)).collect())
                .map_err(|e| CliError::from_build("space.masses", e))?;
            Box::new(DMuSpace::new(measure, *truncation).map_err(|e| CliError::from_build("space", e))?)
        }
        SpaceConfig::ExplicitVectors { vectors, normalize } => {
            let dim = vectors[0].len();
            let raw = vectors.iter().map(|v| v.iter().map(|z| z.0).collect()).collect();
            let mut seq = ExplicitSequence::new(dim, raw).map_err(|e| CliError::from_build("space.vectors", e))?;
            if *normalize {
                seq = seq.normalize().map_err(|e| CliError::from_build("space.vectors", e))?;
            }
            return Ok(Built::Explicit(seq, "explicit_vectors"));
        }
        SpaceConfig::RandomVectors { dim, count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let raw = (0..*count)
                .map(|_| {
                    (0..*dim)
                        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                })
                .collect();
            let seq = ExplicitSequence::new(*dim, raw)
                .and_then(|s| s.normalize())
                .map_err(|e| CliError::from_build("space", e))?;
            return Ok(Built::Explicit(seq, "random_vectors"));
        }
        SpaceConfig::TridiagExample { mode, half_width } => {
            let provider = match mode {
                TridiagMode::Interleaved => TridiagExampleProvider::interleaved(),
                TridiagMode::Centered => TridiagExampleProvider::centered(half_width.unwrap_or(infinite_n / 2)),
            };
            return Ok(Built::Tridiag(provider, *mode));
        }
    };
    let points = config
        .points()?
        .into_iter()
        .enumerate()
        .map(|(k, z)| Point::new(z).map_err(|e| CliError::from_build(&format!("points[{k}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let provider =
        KernelGramProvider::new(space.as_ref(), points.clone()).map_err(|e| CliError::from_build("points", e))?;
    Ok(Built::Kernel {
        provider,
        space,
        points,
    })
}

/// Builds the sequence described by `config` and runs the partition-and-profile pipeline.
pub fn analyze(config: &RunConfig) -> Result<Analysis, CliError> {
    let a = &config.analysis;
    let largest = *a.section_sizes.last().expect("validated non-empty");
    let built = build(config, a.n.unwrap_or(largest))?;
    let provider = built.provider();

    let n = match provider.len() {
        Some(len) => {
            let n = a.n.unwrap_or(len);
            if n > len {
                return Err(CliError::config(
                    "analysis.n",
                    format!("n = {n} exceeds the sequence length {len}"),
                ));
            }
            n
        }
        None => a.n.unwrap_or(largest),
    };

    let mut warnings = Vec::new();
    let mut sizes: Vec<usize> = a.section_sizes.iter().copied().filter(|&s| s <= n).collect();
    let clipped: Vec<usize> = a.section_sizes.iter().copied().filter(|&s| s > n).collect();
    if !clipped.is_empty() {
        if sizes.last() != Some(&n) {
            sizes.push(n);
        }
        warnings.push(WarningEntry::new(
            "section_sizes_clipped",
            format!("section sizes {clipped:?} exceed N = {n} and were replaced by N"),
        ));
    }

    let report = separated_partition_report(provider, n, a.tau, &sizes).map_err(|e| CliError::from_build("space", e))?;
    let section = provider.section(n)?;
    let summary = spectral_summary(&section)?;
    let ratio = abs_gram_ratio_matrix(&section)?;

    let echo = serde_json::json!({
        "space": config.space,
        "points": config.points,
        "analysis": config.analysis,
    });
    let mut document = ReportDocument::from_partition(echo, built.name(), summary, &report, ratio);
    warnings.append(&mut document.warnings);

    if let (Some(cnp), Built::Kernel { space, points, .. }) = (&a.cnp, &built) {
        let omega0 = Point::new(cnp.omega0.0).map_err(|e| CliError::from_build("analysis.cnp.omega0", e))?;
        let d = cnp_matrix(space.as_ref(), omega0, &points[..n])?;
        let applies = matches!(config.space, SpaceConfig::Hardy);
        if !d.positive_semidefinite {
            warnings.push(WarningEntry::new(
                "cnp_negative",
                format!("CNP matrix has lambda_min = {:e} below -1e-9", d.lambda_min),
            ));
        }
        document.cnp = Some(Cnp::new([cnp.omega0.0.re, cnp.omega0.0.im], n, &d, applies));
    }

    document.warnings = warnings;
    Ok(Analysis { document, section })
}

fn io_err(context: &'static str, path: &Path) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.to_path_buf();
    move |source| CliError::Io {
        context,
        path,
        source,
    }
}

/// Writes `contents` next to `path` and renames it into place.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err("cannot create temporary file in", dir))?;
    tmp.write_all(contents).map_err(io_err("cannot write", path))?;
    tmp.as_file().sync_all().map_err(io_err("cannot sync", path))?;
    tmp.persist(path).map_err(|e| CliError::Io {
        context: "cannot rename into",
        path: path.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Full `N x N` section, one row per entry, 1-based indices.
pub fn gramian_csv(section: &HermitianMatrix) -> Vec<u8> {
    let n = section.dim();
    csv_bytes(
        &["i", "j", "re", "im"],
        (0..n).flat_map(|i| {
            (0..n).map(move |j| {
                let z = section.get(i, j);
                vec![(i + 1).to_string(), (j + 1).to_string(), z.re.to_string(), z.im.to_string()]
            })
        }),
    )
}

pub fn profile_csv(document: &ReportDocument) -> Vec<u8> {
    csv_bytes(
        &["N", "lambda_min", "lambda_max"],
        document
            .profile
            .iter()
            .map(|s| vec![s.n.to_string(), s.lambda_min.to_string(), s.lambda_max.to_string()]),
    )
}

pub fn write_outputs(dir: &Path, analysis: &Analysis) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(io_err("cannot create output directory", dir))?;
    let files = [
        (REPORT_FILE, analysis.document.to_json().into_bytes()),
        (GRAMIAN_FILE, gramian_csv(&analysis.section)),
        (PROFILE_FILE, profile_csv(&analysis.document)),
    ];
    let mut written = Vec::new();
    for (name, bytes) in files {
        let path = dir.join(name);
        write_atomic(&path, &bytes)?;
        written.push(path);
    }
    Ok(written)
}

pub fn run(config: &RunConfig, options: &RunOptions) -> Result<RunOutput, CliError> {
    let config = match options.seed {
        Some(seed) => config.clone().with_seed(seed),
        None => config.clone(),
    };
    let analysis = analyze(&config)?;
    let dir = options.out_dir.clone().unwrap_or_else(|| config.output.dir.clone());
    let files = write_outputs(&dir, &analysis)?;
    Ok(RunOutput {
        document: analysis.document,
        dir,
        files,
    })
}

/// Reads, parses and runs a configuration file.
pub fn run_file(path: &Path, options: &RunOptions) -> Result<RunOutput, CliError> {
    let text = fs::read_to_string(path).map_err(io_err("cannot read config", path))?;
    let config = crate::config::parse_config(&text)?;
    run(&config, options)
}
