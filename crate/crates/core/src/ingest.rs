//! File ingestion and the bootstrap robustness procedure.
//!
//! Formats (UTF-8, `#` comment lines and blank lines ignored):
//!
//! * edges file: one hyperedge per line, node tokens separated by commas or
//!   whitespace;
//! * labels file: `node,label` per line;
//! * compositions file: `k,t,count` per line, where `t` is the number of
//!   in-class members; affinities are computable from compositions alone,
//!   without node identities.
//!
//! Mixed-size edge data is sliced per `k` via [`LoadOptions::k_filter`]; each
//! group size is analyzed independently.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{
    project_to_binary, ClassLabel, EdgeTypeCounts, HypergraphError, NodeId, TwoClassHypergraph,
};
use crate::rational::{to_f64, Rational};
use crate::scores::{affinity_profile, Profile, ScoreError};

#[derive(Error, Debug)]
pub enum IngestError {
    #[error("IoError: {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("ParseError: {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("TOutOfRange: {path}:{line}: t={t} exceeds k={k}")]
    TOutOfRange {
        path: String,
        line: usize,
        t: usize,
        k: usize,
    },
    #[error("NoEdgesOfSize: hypergraph has no edges of size {0}")]
    NoEdgesOfSize(usize),
    #[error("DegenerateResample: class {class} has zero degree in bootstrap repetition {rep}")]
    DegenerateResample { rep: usize, class: ClassLabel },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// What to do with edges containing nodes absent from the labels file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UnlabeledPolicy {
    #[default]
    Error,
    /// Drop the whole edge.
    Drop,
}

#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Keep only edges of exactly this size. Without it the file must be
    /// uniform already (the edge size is inferred from the first edge).
    pub k_filter: Option<usize>,
    /// Collapse repeated member sets to a single edge.
    pub dedup: bool,
    pub on_unlabeled: UnlabeledPolicy,
}

fn read_file(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Lines worth parsing: skips blanks and `#` comments, keeps line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn split_tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

/// Parses an edges file: one edge per line, comma- or whitespace-separated
/// node tokens.
pub fn parse_edges(text: &str, path: &str) -> Result<Vec<Vec<NodeId>>, IngestError> {
    let mut edges = Vec::new();
    for (line_no, line) in data_lines(text) {
        let members: Vec<NodeId> = split_tokens(line).map(NodeId::from).collect();
        if members.is_empty() {
            return Err(IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: "edge line has no node tokens".to_string(),
            });
        }
        edges.push(members);
    }
    Ok(edges)
}

/// Parses a labels file: `node,label` per line.
pub fn parse_labels(text: &str, path: &str) -> Result<Vec<(NodeId, String)>, IngestError> {
    let mut labels = Vec::new();
    let mut seen = HashSet::new();
    for (line_no, line) in data_lines(text) {
        let tokens: Vec<&str> = split_tokens(line).collect();
        if tokens.len() != 2 {
            return Err(IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: format!("expected 'node,label', got {} tokens", tokens.len()),
            });
        }
        if !seen.insert(tokens[0].to_string()) {
            return Err(IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: format!("node '{}' labeled more than once", tokens[0]),
            });
        }
        labels.push((NodeId::from(tokens[0]), tokens[1].to_string()));
    }
    Ok(labels)
}

/// Loads a two-class hypergraph from an edges file and a labels file,
/// projecting labels to binary via the focal label (focal maps to class A).
pub fn load_labeled_hypergraph(
    edges_path: &Path,
    labels_path: &Path,
    focal_label: &str,
    options: &LoadOptions,
) -> Result<TwoClassHypergraph, IngestError> {
    let edges = parse_edges(&read_file(edges_path)?, &edges_path.display().to_string())?;
    let labels = parse_labels(
        &read_file(labels_path)?,
        &labels_path.display().to_string(),
    )?;
    build_labeled_hypergraph(edges, &labels, focal_label, options)
}

/// In-memory version of [`load_labeled_hypergraph`].
pub fn build_labeled_hypergraph(
    mut edges: Vec<Vec<NodeId>>,
    labels: &[(NodeId, String)],
    focal_label: &str,
    options: &LoadOptions,
) -> Result<TwoClassHypergraph, IngestError> {
    let projected = project_to_binary(labels, focal_label)?;

    if let Some(k) = options.k_filter {
        edges.retain(|e| e.len() == k);
    }
    if options.on_unlabeled == UnlabeledPolicy::Drop {
        let known: HashSet<&str> = projected.iter().map(|(id, _)| id.as_str()).collect();
        edges.retain(|e| e.iter().all(|n| known.contains(n.as_str())));
    }
    if options.dedup {
        let mut seen: HashSet<Vec<String>> = HashSet::new();
        edges.retain(|e| {
            let mut key: Vec<String> = e.iter().map(|n| n.as_str().to_string()).collect();
            key.sort();
            seen.insert(key)
        });
    }

    let k = match options.k_filter {
        Some(k) => k,
        None => edges.first().map(|e| e.len()).ok_or_else(|| IngestError::Parse {
            path: "<edges>".to_string(),
            line: 0,
            message: "cannot infer edge size from an empty edge set; pass a k filter".to_string(),
        })?,
    };
    Ok(TwoClassHypergraph::new(projected, edges, k)?)
}

/// Group size and in-class composition, with multiplicity. Affinity profiles
/// need nothing more than these records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionRecord {
    pub k: usize,
    /// In-class member count for the focal class.
    pub t: usize,
    pub multiplicity: u64,
}

/// Loads `k,t,count` composition records.
pub fn load_compositions(path: &Path) -> Result<Vec<CompositionRecord>, IngestError> {
    parse_compositions(&read_file(path)?, &path.display().to_string())
}

pub fn parse_compositions(text: &str, path: &str) -> Result<Vec<CompositionRecord>, IngestError> {
    let mut records = Vec::new();
    for (line_no, line) in data_lines(text) {
        let tokens: Vec<&str> = split_tokens(line).collect();
        if tokens.len() != 3 {
            return Err(IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: format!("expected 'k,t,count', got {} tokens", tokens.len()),
            });
        }
        let parse_field = |name: &str, value: &str| -> Result<u64, IngestError> {
            value.parse().map_err(|_| IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: format!("cannot parse {name} '{value}'"),
            })
        };
        let k = parse_field("k", tokens[0])? as usize;
        let t = parse_field("t", tokens[1])? as usize;
        let multiplicity = parse_field("count", tokens[2])?;
        if k == 0 {
            return Err(IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: "k must be positive".to_string(),
            });
        }
        if t > k {
            return Err(IngestError::TOutOfRange {
                path: path.to_string(),
                line: line_no,
                t,
                k,
            });
        }
        if multiplicity == 0 {
            return Err(IngestError::Parse {
                path: path.to_string(),
                line: line_no,
                message: "count must be positive".to_string(),
            });
        }
        records.push(CompositionRecord { k, t, multiplicity });
    }
    Ok(records)
}

/// Collapses group data to pairwise co-appearances: every unordered pair
/// within each edge of size `min_size..=max_size` becomes a 2-edge, with
/// multiplicity. Feeding the result into a `k = 2` analysis yields the
/// graph-style homophily index of the co-appearance structure.
pub fn pairwise_projection(
    edges: &[Vec<NodeId>],
    min_size: usize,
    max_size: usize,
) -> Vec<Vec<NodeId>> {
    let mut pairs = Vec::new();
    for edge in edges {
        if edge.len() < min_size.max(2) || edge.len() > max_size {
            continue;
        }
        for i in 0..edge.len() {
            for j in (i + 1)..edge.len() {
                pairs.push(vec![edge[i].clone(), edge[j].clone()]);
            }
        }
    }
    pairs
}

/// Which perspective the composition `t` column describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassSide {
    /// `t` counts members of the class being scored.
    InClass,
    /// `t` counts members of the other class.
    OutClass,
}

/// Edge-type counts for one group size from composition records.
pub fn compositions_to_counts(
    records: &[CompositionRecord],
    k: usize,
) -> Result<EdgeTypeCounts, IngestError> {
    let mut m = vec![0u64; k + 1];
    for record in records.iter().filter(|r| r.k == k) {
        m[record.t] += record.multiplicity;
    }
    Ok(EdgeTypeCounts::from_u64(m)?)
}

/// Affinity profile straight from composition records; identical to building
/// edge-type counts with `m_t = multiplicity` and scoring class A (in-class)
/// or class B (out-class).
pub fn affinity_from_compositions(
    records: &[CompositionRecord],
    k: usize,
    side: ClassSide,
) -> Result<Profile, IngestError> {
    let counts = compositions_to_counts(records, k)?;
    let class = match side {
        ClassSide::InClass => ClassLabel::A,
        ClassSide::OutClass => ClassLabel::B,
    };
    Ok(affinity_profile(&counts, class)?)
}

/// Per-type bootstrap summary for one class.
#[derive(Clone, Debug)]
pub struct BootstrapStat {
    pub t: usize,
    /// Affinity on the full data.
    pub point: Rational,
    /// Mean of the per-repetition affinities, exact.
    pub mean: Rational,
    /// Sample standard deviation of the repetition values divided by
    /// `sqrt(reps)`; zero for a single repetition.
    pub stderr: f64,
}

#[derive(Clone, Debug)]
pub struct BootstrapReport {
    pub k: usize,
    pub class: ClassLabel,
    pub reps: usize,
    pub seed: u64,
    pub stats: Vec<BootstrapStat>,
}

impl BootstrapReport {
    pub fn stat(&self, t: usize) -> &BootstrapStat {
        &self.stats[t - 1]
    }
}

/// Resamples the edge multiset with replacement (`m_k` edges per repetition,
/// repetition `i` seeded with `seed + i`), recomputes affinity profiles, and
/// summarizes per class. Baselines are not part of the report: class sizes do
/// not change under edge resampling, so ratio curves vary only through the
/// affinities.
pub fn bootstrap(
    h: &TwoClassHypergraph,
    k: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<BootstrapReport>, IngestError> {
    if h.k() != k || h.edge_count() == 0 {
        return Err(IngestError::NoEdgesOfSize(k));
    }
    if reps == 0 {
        return Err(IngestError::Parse {
            path: "<bootstrap>".to_string(),
            line: 0,
            message: "reps must be at least 1".to_string(),
        });
    }
    let full_counts = h.edge_type_counts();
    let points: Vec<Profile> = ClassLabel::BOTH
        .iter()
        .map(|&class| affinity_profile(&full_counts, class))
        .collect::<Result<_, _>>()?;

    let edge_types: Vec<usize> = (0..h.edge_count()).map(|e| h.edge_type(e)).collect();
    let m_k = edge_types.len();

    // values[class][t-1][rep]
    let mut values: Vec<Vec<Vec<Rational>>> = vec![vec![Vec::with_capacity(reps); k]; 2];
    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(rep as u64));
        let mut m = vec![0u64; k + 1];
        for _ in 0..m_k {
            m[edge_types[rng.random_range(0..m_k)]] += 1;
        }
        debug_assert_eq!(m.iter().sum::<u64>() as usize, m_k);
        let counts = EdgeTypeCounts::from_u64(m)?;
        for (ci, &class) in ClassLabel::BOTH.iter().enumerate() {
            let profile = affinity_profile(&counts, class)
                .map_err(|_| IngestError::DegenerateResample { rep, class })?;
            for t in 1..=k {
                values[ci][t - 1].push(profile.value(t).clone());
            }
        }
    }

    let reports = ClassLabel::BOTH
        .iter()
        .enumerate()
        .map(|(ci, &class)| {
            let stats = (1..=k)
                .map(|t| {
                    let samples = &values[ci][t - 1];
                    let mean: Rational = samples.iter().sum::<Rational>()
                        / Rational::from_integer(reps.into());
                    let stderr = if reps <= 1 {
                        0.0
                    } else {
                        let mean_f = to_f64(&mean);
                        let var: f64 = samples
                            .iter()
                            .map(|v| {
                                let d = v.to_f64().unwrap_or(f64::NAN) - mean_f;
                                d * d
                            })
                            .sum::<f64>()
                            / (reps as f64 - 1.0);
                        (var / reps as f64).sqrt()
                    };
                    BootstrapStat {
                        t,
                        point: points[ci].value(t).clone(),
                        mean,
                        stderr,
                    }
                })
                .collect();
            BootstrapReport {
                k,
                class,
                reps,
                seed,
                stats,
            }
        })
        .collect();
    Ok(reports)
}
