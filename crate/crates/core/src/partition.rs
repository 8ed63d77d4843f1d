//! Separated partitions of normalized Bessel sequences.
//!
//! Two indices are enemies when `|<x_i, x_j>|^2 >= tau`. If every index has at
//! most `k` enemies, first-fit assignment in increasing index order uses at
//! most `k + 1` classes, and each class is separated with `gamma^2 < tau`.
//! For `tau = 1/2` and a Bessel bound `C`, the enemy count is at most
//! `floor(2C) + 1`.
//!
//! All quantities here come from finite sections. They estimate, but do not
//! certify, properties of the infinite sequence.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequences::{GramianProvider, Subsequence};
use crate::spectral::{eig_hermitian, schur_row_bound, spectral_summary, HermitianMatrix, SpectralSummary};

pub const DEFAULT_TAU: f64 = 0.5;

/// A separation constant at or above `1 - NOT_SEPARATED_TOL` flags the section as not separated.
pub const NOT_SEPARATED_TOL: f64 = 1e-12;

/// Relative change of `lambda_min` between the last two section sizes above
/// which a profile is reported as not stabilized.
pub const STABILIZATION_RTOL: f64 = 0.05;

pub const FINITE_SECTION_CAVEAT: &str = "values are computed on finite sections; they estimate but do not certify Bessel, Riesz or separation properties of the infinite sequence";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separation {
    pub gamma: f64,
    pub separated: bool,
}

fn check_normalized<P: GramianProvider + ?Sized>(provider: &P) -> Result<()> {
    if !provider.is_normalized() {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

fn check_len<P: GramianProvider + ?Sized>(provider: &P, n: usize) -> Result<()> {
    match provider.len() {
        Some(len) if n > len => Err(Error::SectionTooLarge { requested: n, len }),
        _ => Ok(()),
    }
}

/// `max_{n != m <= N} |<x_n, x_m>|`.
pub fn separation_constant<P: GramianProvider + ?Sized>(provider: &P, n: usize) -> Result<Separation> {
    check_normalized(provider)?;
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "section size",
            value: n as f64,
            reason: "separation needs at least two vectors",
        });
    }
    check_len(provider, n)?;
    let mut gamma: f64 = 0.0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            gamma = gamma.max(provider.entry(i, j).norm());
        }
    }
    Ok(Separation {
        gamma,
        separated: gamma < 1.0 - NOT_SEPARATED_TOL,
    })
}

/// Symmetric, irreflexive relation on `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnemyGraph {
    /// Sorted 1-based neighbor lists; `neighbors[i - 1]` belongs to vertex `i`.
    neighbors: Vec<Vec<usize>>,
    tau: Option<f64>,
}

impl EnemyGraph {
    /// Graph from an explicit 1-based edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange { index: v, len: n });
                }
            }
            if a == b {
                return Err(Error::InvalidParameter {
                    name: "edge",
                    value: a as f64,
                    reason: "self-loops are not allowed",
                });
            }
            neighbors[a - 1].push(b);
            neighbors[b - 1].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            neighbors,
            tau: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Threshold the graph was built with, if it came from a Gramian.
    pub fn tau(&self) -> Option<f64> {
        self.tau
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v - 1].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a - 1].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `histogram[d]` is the number of vertices with exactly `d` enemies.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_degree() + 1];
        for list in &self.neighbors {
            hist[list.len()] += 1;
        }
        hist
    }
}

/// Enemies among the first `n` vectors: `|entry(i, j)|^2 >= tau`.
pub fn enemy_graph<P: GramianProvider + ?Sized>(provider: &P, n: usize, tau: f64) -> Result<EnemyGraph> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "must lie in (0, 1]",
        });
    }
    check_normalized(provider)?;
    check_len(provider, n)?;
    let mut neighbors = vec![Vec::new(); n];
    for i in 1..=n {
        for j in (i + 1)..=n {
            if provider.entry(i, j).norm_sqr() >= tau {
                neighbors[i - 1].push(j);
                neighbors[j - 1].push(i);
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    Ok(EnemyGraph {
        neighbors,
        tau: Some(tau),
    })
}

/// Assignment of `1..=n` to classes `1..=K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class id (1-based) of vertex `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.assignment[v - 1]
    }

    /// Members of each class in increasing order; `classes()[k - 1]` is class `k`.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

/// First-fit: each index, in increasing order, joins the lowest-numbered class
/// holding none of its enemies, or opens a new class.
pub fn greedy_partition(graph: &EnemyGraph) -> Partition {
    let n = graph.vertex_count();
    let mut assignment = vec![0usize; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut blocked: Vec<usize> = Vec::new();
    for v in 1..=n {
        blocked.clear();
        blocked.extend(
            graph
                .neighbors(v)
                .iter()
                .filter(|&&u| u < v)
                .map(|&u| assignment[u - 1]),
        );
        blocked.sort_unstable();
        blocked.dedup();
        let mut class = 1;
        for &b in &blocked {
            if b == class {
                class += 1;
            } else if b > class {
                break;
            }
        }
        if class > classes.len() {
            classes.push(Vec::new());
        }
        classes[class - 1].push(v);
        assignment[v - 1] = class;
    }
    Partition {
        assignment,
        classes,
    }
}

pub fn max_degree(graph: &EnemyGraph) -> usize {
    graph.max_degree()
}

/// `floor(2C) + 1`, the enemy bound for a normalized Bessel sequence with constant `C`.
pub fn degree_bound(bessel_constant: f64) -> Result<usize> {
    if !(bessel_constant >= 1.0) || !bessel_constant.is_finite() {
        return Err(Error::InvalidParameter {
            name: "Bessel constant",
            value: bessel_constant,
            reason: "a normalized sequence has Bessel constant at least 1",
        });
    }
    Ok((2.0 * bessel_constant).floor() as usize + 1)
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::InvalidParameter {
            name: "section sizes",
            value: 0.0,
            reason: "need at least one section size",
        });
    }
    if let Some(&bad) = sizes.iter().find(|&&s| s == 0) {
        return Err(Error::InvalidParameter {
            name: "section size",
            value: bad as f64,
            reason: "must be positive",
        });
    }
    if sizes.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter {
            name: "section sizes",
            value: f64::NAN,
            reason: "must be ascending",
        });
    }
    Ok(())
}

fn profile_of(section: &HermitianMatrix, sizes: &[usize]) -> Result<Vec<SpectralSummary>> {
    sizes
        .par_iter()
        .map(|&s| spectral_summary(&section.leading(s)?))
        .collect()
}

/// `(lambda_min, lambda_max)` of the leading section for each size.
pub fn riesz_profile<P: GramianProvider + ?Sized>(provider: &P, sizes: &[usize]) -> Result<Vec<SpectralSummary>> {
    check_sizes(sizes)?;
    let largest = *sizes.last().unwrap();
    let section = provider.section(largest)?;
    profile_of(&section, sizes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselMode {
    /// Largest absolute row sum of the section: a certified upper bound for its norm.
    Schur,
    /// Largest eigenvalue of the section: a lower bound for the Bessel constant.
    Spectral,
}

pub fn bessel_estimate<P: GramianProvider + ?Sized>(provider: &P, n: usize, mode: BesselMode) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "section size",
            value: 0.0,
            reason: "must be positive",
        });
    }
    let section = provider.section(n)?;
    match mode {
        BesselMode::Schur => Ok(schur_row_bound(&section)),
        BesselMode::Spectral => Ok(spectral_summary(&section)?.lambda_max),
    }
}

/// `lambda_max(|M|) / lambda_max(M)` for a Hermitian matrix.
pub fn abs_gram_ratio_matrix(section: &HermitianMatrix) -> Result<f64> {
    let top = *eig_hermitian(section)?.last().unwrap();
    if !(top > 0.0) {
        return Err(Error::DegenerateSection);
    }
    let abs_top = *eig_hermitian(&section.entrywise_abs())?.last().unwrap();
    Ok(abs_top / top)
}

/// Ratio of the norms of the entrywise-modulus section and the section itself.
pub fn abs_gram_ratio<P: GramianProvider + ?Sized>(provider: &P, n: usize) -> Result<f64> {
    abs_gram_ratio_matrix(&provider.section(n)?)
}

/// `lambda_min` at the last two section sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaTrend {
    pub previous: SpectralSummary,
    pub last: SpectralSummary,
    pub relative_change: f64,
}

impl LambdaTrend {
    pub fn from_profile(profile: &[SpectralSummary]) -> Option<Self> {
        match profile {
            [.., previous, last] => {
                let scale = last.lambda_min.abs().max(f64::MIN_POSITIVE);
                Some(Self {
                    previous: *previous,
                    last: *last,
                    relative_change: (previous.lambda_min - last.lambda_min).abs() / scale,
                })
            }
            _ => None,
        }
    }

    pub fn stabilized(&self) -> bool {
        self.relative_change <= STABILIZATION_RTOL
    }
}

/// Class profile entry: the class members among the first `section_size` indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSection {
    pub section_size: usize,
    pub summary: SpectralSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassReport {
    pub id: usize,
    pub members: Vec<usize>,
    /// Separation constant of the class (0 for a singleton).
    pub gamma: f64,
    pub profile: Vec<ClassSection>,
}

impl ClassReport {
    pub fn trend(&self) -> Option<LambdaTrend> {
        let summaries: Vec<SpectralSummary> = self.profile.iter().map(|s| s.summary).collect();
        LambdaTrend::from_profile(&summaries)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    NotSeparated { gamma: f64 },
    NotStabilized { class: Option<usize>, trend: LambdaTrend },
    DegreeBoundExceeded { max_degree: usize, bound: usize },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::NotSeparated { gamma } => {
                write!(f, "sequence is not separated (gamma = {gamma})")
            }
            Warning::NotStabilized { class, trend } => {
                let who = match class {
                    Some(k) => format!("class {k}"),
                    None => "full sequence".to_string(),
                };
                write!(
                    f,
                    "{who}: lambda_min not stabilized between sizes {} and {} ({:e} -> {:e})",
                    trend.previous.n, trend.last.n, trend.previous.lambda_min, trend.last.lambda_min
                )
            }
            Warning::DegreeBoundExceeded { max_degree, bound } => {
                write!(f, "max enemy degree {max_degree} exceeds floor(2C)+1 = {bound}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub n: usize,
    pub tau: f64,
    pub separation: Separation,
    pub graph: EnemyGraph,
    pub partition: Partition,
    pub classes: Vec<ClassReport>,
    pub profile: Vec<SpectralSummary>,
    pub bessel_schur: f64,
    pub bessel_spectral: f64,
    pub max_degree: usize,
    pub degree_bound: usize,
    /// Every class satisfies `gamma^2 < tau`.
    pub classes_enemy_free: bool,
    /// `class_count <= max_degree + 1`.
    pub class_count_within_bound: bool,
    pub degree_within_bound: bool,
    pub warnings: Vec<Warning>,
}

impl PartitionReport {
    pub fn trend(&self) -> Option<LambdaTrend> {
        LambdaTrend::from_profile(&self.profile)
    }
}

fn class_report<P: GramianProvider + ?Sized>(
    provider: &P,
    id: usize,
    members: &[usize],
    sizes: &[usize],
) -> Result<ClassReport> {
    let sub = Subsequence::new(provider, members.to_vec())?;
    let section = sub.section(members.len())?;
    let mut gamma: f64 = 0.0;
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            gamma = gamma.max(section.get(i, j).norm());
        }
    }
    let mut profile = Vec::new();
    let mut last: Option<(usize, SpectralSummary)> = None;
    for &s in sizes {
        let k = members.partition_point(|&m| m <= s);
        if k == 0 {
            continue;
        }
        let summary = match last {
            Some((prev_k, prev)) if prev_k == k => prev,
            _ => spectral_summary(&section.leading(k)?)?,
        };
        last = Some((k, summary));
        profile.push(ClassSection {
            section_size: s,
            summary,
        });
    }
    Ok(ClassReport {
        id,
        members: members.to_vec(),
        gamma,
        profile,
    })
}

/// Enemy graph, first-fit partition, per-class separation and spectral
/// profiles, Bessel estimates and the degree bound for the first `n` vectors.
/// Every section size must be at most `n`.
pub fn separated_partition_report<P: GramianProvider + ?Sized>(
    provider: &P,
    n: usize,
    tau: f64,
    section_sizes: &[usize],
) -> Result<PartitionReport> {
    check_sizes(section_sizes)?;
    if let Some(&big) = section_sizes.iter().find(|&&s| s > n) {
        return Err(Error::SectionTooLarge {
            requested: big,
            len: n,
        });
    }
    let graph = enemy_graph(provider, n, tau)?;
    let partition = greedy_partition(&graph);
    let section = provider.section(n)?;
    let separation = if n >= 2 {
        separation_constant(provider, n)?
    } else {
        Separation {
            gamma: 0.0,
            separated: true,
        }
    };
    let bessel_schur = schur_row_bound(&section);
    let bessel_spectral = spectral_summary(&section)?.lambda_max;
    let bound = degree_bound(bessel_schur)?;
    let max_degree = graph.max_degree();
    let profile = profile_of(&section, section_sizes)?;

    let classes = partition
        .classes()
        .par_iter()
        .enumerate()
        .map(|(k, members)| class_report(provider, k + 1, members, section_sizes))
        .collect::<Result<Vec<_>>>()?;

    let classes_enemy_free = classes.iter().all(|c| c.gamma * c.gamma < tau);
    let class_count_within_bound = partition.class_count() <= max_degree + 1;
    let degree_within_bound = max_degree <= bound;

    let mut warnings = Vec::new();
    if !separation.separated {
        warnings.push(Warning::NotSeparated {
            gamma: separation.gamma,
        });
    }
    if !degree_within_bound {
        warnings.push(Warning::DegreeBoundExceeded {
            max_degree,
            bound,
        });
    }
    if let Some(trend) = LambdaTrend::from_profile(&profile) {
        if !trend.stabilized() {
            warnings.push(Warning::NotStabilized { class: None, trend });
        }
    }
    for class in &classes {
        if let Some(trend) = class.trend() {
            if !trend.stabilized() {
                warnings.push(Warning::NotStabilized {
                    class: Some(class.id),
                    trend,
                });
            }
        }
    }

    Ok(PartitionReport {
        n,
        tau,
        separation,
        graph,
        partition,
        classes,
        profile,
        bessel_schur,
        bessel_spectral,
        max_degree,
        degree_bound: bound,
        classes_enemy_free,
        class_count_within_bound,
        degree_within_bound,
        warnings,
    })
}
