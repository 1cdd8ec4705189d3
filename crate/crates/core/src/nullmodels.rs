//! Cardinality-based random hypergraph sampling and the ratio-convergence
//! experiment.
//!
//! In the null model, every `k`-tuple of distinct nodes with exactly `t`
//! class-A members becomes a hyperedge independently with probability `p_t`.
//! Sampling is seeded and platform-independent (ChaCha8). Two equivalent
//! strategies exist: direct enumeration of all tuples (used when `C(n, k)` is
//! small) and a two-stage scheme that draws per-type totals
//! `M_t ~ Binomial(N_t, p_t)` and then that many distinct type-`t` tuples
//! uniformly without replacement.
//!
//! A Poisson variant gives each tuple an independent `Poisson(p_t)`
//! multiplicity, producing an edge multiset.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use thiserror::Error;

use crate::hypergraph::{ClassLabel, HypergraphError, NodeId, TwoClassHypergraph};
use crate::rational::{binomial, to_f64, Rational};
use crate::scores::{affinity_profile, baseline_profile, ScoreError};

#[derive(Error, Debug)]
pub enum NullModelError {
    #[error("ParamOutOfRange: {0}")]
    ParamOutOfRange(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// Parameters of the cardinality-based null model.
#[derive(Clone, Debug, PartialEq)]
pub struct HsbmParams {
    pub n: usize,
    pub k: usize,
    /// Number of class-A nodes; the remaining `n - n_a` are class B.
    pub n_a: usize,
    /// Inclusion probability per tuple type, indexed `t = 0..=k`.
    pub p: Vec<f64>,
    pub seed: u64,
}

impl HsbmParams {
    /// Uniform tuple probability `p` for every type.
    pub fn uniform(n: usize, k: usize, n_a: usize, p: f64, seed: u64) -> Self {
        HsbmParams {
            n,
            k,
            n_a,
            p: vec![p; k + 1],
            seed,
        }
    }

    fn validate(&self) -> Result<(), NullModelError> {
        if self.k == 0 || self.k > self.n {
            return Err(NullModelError::ParamOutOfRange(format!(
                "need 1 <= k <= n, got k={}, n={}",
                self.k, self.n
            )));
        }
        if self.n_a > self.n {
            return Err(NullModelError::ParamOutOfRange(format!(
                "n_a={} exceeds n={}",
                self.n_a, self.n
            )));
        }
        if self.p.len() != self.k + 1 {
            return Err(NullModelError::ParamOutOfRange(format!(
                "need k+1 = {} probabilities, got {}",
                self.k + 1,
                self.p.len()
            )));
        }
        for (t, &p) in self.p.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(NullModelError::ParamOutOfRange(format!(
                    "p[{t}] = {p} is not in [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// How [`sample_hsbm_with_strategy`] realizes the tuple-wise coin flips.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleStrategy {
    /// Enumeration when `C(n, k) <= 1e6`, two-stage otherwise.
    Auto,
    /// Bernoulli flip per enumerated tuple.
    Enumerate,
    /// Per-type binomial totals, then distinct tuples without replacement.
    TwoStage,
}

const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Samples the Bernoulli null model. Deterministic given the seed; the
/// result always validates.
pub fn sample_hsbm(params: &HsbmParams) -> Result<TwoClassHypergraph, NullModelError> {
    sample_hsbm_with_strategy(params, SampleStrategy::Auto)
}

pub fn sample_hsbm_with_strategy(
    params: &HsbmParams,
    strategy: SampleStrategy,
) -> Result<TwoClassHypergraph, NullModelError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let edges = match strategy {
        SampleStrategy::Enumerate => sample_edges_enumerated(params, &mut rng),
        SampleStrategy::TwoStage => sample_edges_two_stage(params, &mut rng)?,
        SampleStrategy::Auto => {
            let tuples = binomial(params.n as u64, params.k as u64);
            if tuples.to_u64().is_some_and(|v| v <= ENUMERATION_LIMIT) {
                sample_edges_enumerated(params, &mut rng)
            } else {
                sample_edges_two_stage(params, &mut rng)?
            }
        }
    };
    Ok(build_hypergraph(params, edges))
}

/// Samples the Poisson multiset variant: tuple multiplicities are independent
/// `Poisson(p_t)`, realized as per-type totals `M_t ~ Poisson(N_t p_t)`
/// followed by uniform tuple assignment with replacement.
pub fn sample_hsbm_poisson(params: &HsbmParams) -> Result<TwoClassHypergraph, NullModelError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n_b = params.n - params.n_a;
    let mut edges = Vec::new();
    for t in 0..=params.k {
        let tuples = type_tuple_count(params, t)?;
        if tuples == 0 {
            continue;
        }
        let lambda = tuples as f64 * params.p[t];
        if lambda == 0.0 {
            continue;
        }
        let dist = rand_distr::Poisson::new(lambda).map_err(|e| {
            NullModelError::ParamOutOfRange(format!("Poisson rate for type {t}: {e}"))
        })?;
        let total = dist.sample(&mut rng).round().max(0.0) as u64;
        for _ in 0..total {
            edges.push(random_type_tuple(params.n_a, n_b, params.k, t, &mut rng));
        }
    }
    Ok(build_hypergraph(params, edges))
}

fn build_hypergraph(params: &HsbmParams, edges: Vec<Vec<u32>>) -> TwoClassHypergraph {
    let nodes = generated_nodes(params.n, params.n_a);
    let named_edges = edges
        .into_iter()
        .map(|edge| {
            edge.into_iter()
                .map(|i| generated_node_id(i as usize, params.n_a))
                .collect()
        })
        .collect::<Vec<_>>();
    TwoClassHypergraph::new(nodes, named_edges, params.k)
        .expect("sampled edges are k-uniform and non-degenerate")
}

/// Node ids for generated hypergraphs: `a0..` for class A, `b0..` for B.
pub fn generated_nodes(n: usize, n_a: usize) -> Vec<(NodeId, ClassLabel)> {
    (0..n)
        .map(|i| {
            let label = if i < n_a { ClassLabel::A } else { ClassLabel::B };
            (generated_node_id(i, n_a), label)
        })
        .collect()
}

fn generated_node_id(i: usize, n_a: usize) -> NodeId {
    if i < n_a {
        NodeId::new(format!("a{i}"))
    } else {
        NodeId::new(format!("b{}", i - n_a))
    }
}

fn sample_edges_enumerated(params: &HsbmParams, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let mut edges = Vec::new();
    let mut combo: Vec<usize> = (0..params.k).collect();
    loop {
        let t = combo.iter().filter(|&&i| i < params.n_a).count();
        if params.p[t] > 0.0 && rng.random_bool(params.p[t]) {
            edges.push(combo.iter().map(|&i| i as u32).collect());
        }
        if !advance_combination(&mut combo, params.n) {
            break;
        }
    }
    edges
}

/// Lexicographic successor of a k-combination of `0..n`; false at the end.
fn advance_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn type_tuple_count(params: &HsbmParams, t: usize) -> Result<u64, NullModelError> {
    let n_b = (params.n - params.n_a) as u64;
    let count = binomial(params.n_a as u64, t as u64) * binomial(n_b, (params.k - t) as u64);
    count.to_u64().ok_or_else(|| {
        NullModelError::ParamOutOfRange(format!(
            "type-{t} tuple count {count} exceeds the supported range"
        ))
    })
}

fn sample_edges_two_stage(
    params: &HsbmParams,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<u32>>, NullModelError> {
    let n_b = params.n - params.n_a;
    let mut edges = Vec::new();
    for t in 0..=params.k {
        let tuples = type_tuple_count(params, t)?;
        if tuples == 0 || params.p[t] == 0.0 {
            continue;
        }
        let total = if params.p[t] >= 1.0 {
            tuples
        } else {
            rand_distr::Binomial::new(tuples, params.p[t])
                .map_err(|e| {
                    NullModelError::ParamOutOfRange(format!("Binomial for type {t}: {e}"))
                })?
                .sample(rng)
        };
        if total == 0 {
            continue;
        }
        if total <= tuples / 2 {
            // Rejection: keep drawing distinct tuples.
            let mut chosen: HashSet<Vec<u32>> = HashSet::with_capacity(total as usize);
            while (chosen.len() as u64) < total {
                chosen.insert(random_type_tuple(params.n_a, n_b, params.k, t, rng));
            }
            edges.extend(chosen);
        } else {
            // Dense type: pick the complement to exclude, then enumerate.
            let excluded = tuples - total;
            let mut excluded_set: HashSet<Vec<u32>> = HashSet::with_capacity(excluded as usize);
            while (excluded_set.len() as u64) < excluded {
                excluded_set.insert(random_type_tuple(params.n_a, n_b, params.k, t, rng));
            }
            for tuple in enumerate_type_tuples(params.n_a, n_b, params.k, t) {
                if !excluded_set.contains(&tuple) {
                    edges.push(tuple);
                }
            }
        }
    }
    Ok(edges)
}

/// A uniform type-`t` tuple: `t` distinct class-A indices plus `k-t` distinct
/// class-B indices, each part sorted.
fn random_type_tuple(
    n_a: usize,
    n_b: usize,
    k: usize,
    t: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<u32> {
    let mut members = Vec::with_capacity(k);
    let mut a_part: Vec<u32> = rand::seq::index::sample(rng, n_a, t)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    a_part.sort_unstable();
    members.extend(a_part);
    let mut b_part: Vec<u32> = rand::seq::index::sample(rng, n_b, k - t)
        .into_iter()
        .map(|i| (n_a + i) as u32)
        .collect();
    b_part.sort_unstable();
    members.extend(b_part);
    members
}

fn enumerate_type_tuples(n_a: usize, n_b: usize, k: usize, t: usize) -> Vec<Vec<u32>> {
    let a_parts = enumerate_combinations(n_a, t);
    let b_parts = enumerate_combinations(n_b, k - t);
    let mut tuples = Vec::with_capacity(a_parts.len() * b_parts.len());
    for a in &a_parts {
        for b in &b_parts {
            let mut tuple: Vec<u32> = a.iter().map(|&i| i as u32).collect();
            tuple.extend(b.iter().map(|&i| (n_a + i) as u32));
            tuples.push(tuple);
        }
    }
    tuples
}

fn enumerate_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        out.push(combo.clone());
        if !advance_combination(&mut combo, n) {
            break;
        }
    }
    out
}

/// One row of the ratio-convergence experiment.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub n: usize,
    pub seed: u64,
    pub edge_count: usize,
    /// `max_{t, class} |h_t/b_t - 1|` against the exact baselines.
    pub max_abs_ratio_deviation: f64,
}

/// Seed schedule for multi-seed experiments: `master + index`.
pub fn seed_schedule(master: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| master.wrapping_add(i)).collect()
}

/// For each `n` and seed, samples the uniform-`p` null model with class split
/// `round(alpha * n)` and reports how far all ratio scores are from one.
pub fn convergence_experiment(
    n_values: &[usize],
    k: usize,
    alpha: &Rational,
    p: f64,
    seeds: &[u64],
) -> Result<Vec<ConvergenceReport>, NullModelError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(NullModelError::ParamOutOfRange(format!(
            "p must be in (0, 1], got {p}"
        )));
    }
    let mut reports = Vec::with_capacity(n_values.len() * seeds.len());
    for &n in n_values {
        let n_a = round_to_usize(alpha, n);
        for &seed in seeds {
            let params = HsbmParams::uniform(n, k, n_a, p, seed);
            let h = sample_hsbm(&params)?;
            let deviation = max_ratio_deviation(&h)?;
            reports.push(ConvergenceReport {
                n,
                seed,
                edge_count: h.edge_count(),
                max_abs_ratio_deviation: deviation,
            });
        }
    }
    Ok(reports)
}

fn round_to_usize(alpha: &Rational, n: usize) -> usize {
    use num_traits::Signed;
    let scaled = alpha * Rational::from_integer(n.into());
    let rounded = (scaled + crate::rational::rat(1, 2)).floor();
    rounded
        .to_integer()
        .abs()
        .to_usize()
        .unwrap_or(0)
        .min(n)
}

/// `max_{t, class} |h_t/b_t - 1|` of a hypergraph against its exact baselines.
pub fn max_ratio_deviation(h: &TwoClassHypergraph) -> Result<f64, NullModelError> {
    use num_traits::Signed;
    let counts = h.edge_type_counts();
    let n_a = h.class_size(ClassLabel::A) as u64;
    let n_b = h.class_size(ClassLabel::B) as u64;
    let mut max_dev = Rational::from_integer(0.into());
    for class in ClassLabel::BOTH {
        let affinity = affinity_profile(&counts, class)?;
        let baseline = baseline_profile(n_a, n_b, h.k(), class)?;
        for t in 1..=h.k() {
            let b = baseline.value(t);
            if num_traits::Zero::is_zero(b) {
                continue;
            }
            let dev = (affinity.value(t) / b - Rational::from_integer(1.into())).abs();
            if dev > max_dev {
                max_dev = dev;
            }
        }
    }
    Ok(to_f64(&max_dev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::scores::{affinity_profile, baseline_profile};
    use num_bigint::BigUint;

    #[test]
    fn zero_probability_gives_empty_hypergraph() {
        let params = HsbmParams::uniform(12, 3, 6, 0.0, 7);
        for strategy in [SampleStrategy::Enumerate, SampleStrategy::TwoStage] {
            let h = sample_hsbm_with_strategy(&params, strategy).unwrap();
            assert_eq!(h.edge_count(), 0);
        }
        let h = sample_hsbm_poisson(&params).unwrap();
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn unit_probability_gives_complete_hypergraph() {
        let params = HsbmParams::uniform(9, 3, 4, 1.0, 3);
        for strategy in [SampleStrategy::Enumerate, SampleStrategy::TwoStage] {
            let h = sample_hsbm_with_strategy(&params, strategy).unwrap();
            assert_eq!(h.edge_count(), 84); // C(9,3)
            let counts = h.edge_type_counts();
            // Affinity equals the exact baseline on the complete hypergraph.
            for class in ClassLabel::BOTH {
                assert_eq!(
                    affinity_profile(&counts, class).unwrap(),
                    baseline_profile(4, 5, 3, class).unwrap()
                );
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let params = HsbmParams::uniform(20, 3, 9, 0.2, 42);
        let h1 = sample_hsbm(&params).unwrap();
        let h2 = sample_hsbm(&params).unwrap();
        assert_eq!(h1.edge_count(), h2.edge_count());
        let e1: Vec<Vec<String>> = (0..h1.edge_count())
            .map(|e| h1.edge_member_ids(e).map(|n| n.to_string()).collect())
            .collect();
        let e2: Vec<Vec<String>> = (0..h2.edge_count())
            .map(|e| h2.edge_member_ids(e).map(|n| n.to_string()).collect())
            .collect();
        assert_eq!(e1, e2);
        h1.validate().unwrap();

        let other = sample_hsbm(&HsbmParams::uniform(20, 3, 9, 0.2, 43)).unwrap();
        let e3: Vec<Vec<String>> = (0..other.edge_count())
            .map(|e| other.edge_member_ids(e).map(|n| n.to_string()).collect())
            .collect();
        assert_ne!(e1, e3);
    }

    #[test]
    fn poisson_sampling_is_deterministic_and_multiset() {
        let params = HsbmParams::uniform(10, 3, 5, 0.9, 5);
        let h1 = sample_hsbm_poisson(&params).unwrap();
        let h2 = sample_hsbm_poisson(&params).unwrap();
        assert_eq!(h1.edge_count(), h2.edge_count());
        h1.validate().unwrap();
    }

    #[test]
    fn per_type_counts_within_four_sigma() {
        // n=30, k=3, n_a=15, p=0.5: M_t ~ Binomial(N_t, 1/2).
        let params = HsbmParams::uniform(30, 3, 15, 0.5, 2024);
        let h = sample_hsbm(&params).unwrap();
        let counts = h.edge_type_counts();
        for t in 0..=3usize {
            let n_t = u64::try_from(
                binomial(15, t as u64) * binomial(15, (3 - t) as u64),
            )
            .unwrap() as f64;
            let mean = 0.5 * n_t;
            let sd = (n_t * 0.25).sqrt();
            let observed = u64::try_from(counts.count(t)).unwrap() as f64;
            assert!(
                (observed - mean).abs() <= 4.0 * sd,
                "type {t}: observed {observed}, mean {mean}, sd {sd}"
            );
        }
    }

    #[test]
    fn poisson_type_totals_match_moments() {
        // Empirical mean of M_t over 200 seeds within 3 standard errors;
        // total count variance close to its mean (Poisson additivity).
        let n = 20;
        let k = 3;
        let n_a = 10;
        let p = 0.1;
        let seeds = 200u64;
        let mut sums = vec![0f64; k + 1];
        let mut totals = Vec::with_capacity(seeds as usize);
        for seed in 0..seeds {
            let params = HsbmParams::uniform(n, k, n_a, p, 9000 + seed);
            let h = sample_hsbm_poisson(&params).unwrap();
            let counts = h.edge_type_counts();
            let mut total = 0f64;
            for t in 0..=k {
                let c = u64::try_from(counts.count(t)).unwrap() as f64;
                sums[t] += c;
                total += c;
            }
            totals.push(total);
        }
        for t in 0..=k {
            let n_t = u64::try_from(
                binomial(n_a as u64, t as u64) * binomial((n - n_a) as u64, (k - t) as u64),
            )
            .unwrap() as f64;
            let lambda = n_t * p;
            let mean = sums[t] / seeds as f64;
            let se = (lambda / seeds as f64).sqrt();
            assert!(
                (mean - lambda).abs() <= 3.0 * se,
                "type {t}: empirical mean {mean}, lambda {lambda}, se {se}"
            );
        }
        let mean_total: f64 = totals.iter().sum::<f64>() / seeds as f64;
        let var_total: f64 = totals
            .iter()
            .map(|v| (v - mean_total) * (v - mean_total))
            .sum::<f64>()
            / (seeds as f64 - 1.0);
        assert!(
            (var_total / mean_total - 1.0).abs() < 0.4,
            "variance/mean = {}",
            var_total / mean_total
        );
    }

    #[test]
    fn two_stage_matches_enumeration_distribution() {
        // Total-variation distance of per-type counts between the two
        // sampling strategies, 1e4 draws each on a small instance.
        let draws = 10_000u64;
        let n = 6;
        let k = 3;
        let n_a = 3;
        let p = 0.5;
        let max_count = 10usize; // N_t <= 9
        let mut hist_enum = vec![vec![0u64; max_count + 1]; k + 1];
        let mut hist_two = vec![vec![0u64; max_count + 1]; k + 1];
        for d in 0..draws {
            for (strategy, hist) in [
                (SampleStrategy::Enumerate, &mut hist_enum),
                (SampleStrategy::TwoStage, &mut hist_two),
            ] {
                let offset = match strategy {
                    SampleStrategy::Enumerate => 0,
                    _ => 1_000_000,
                };
                let params = HsbmParams::uniform(n, k, n_a, p, 31 + offset + d);
                let h = sample_hsbm_with_strategy(&params, strategy).unwrap();
                let counts = h.edge_type_counts();
                for t in 0..=k {
                    let c = u64::try_from(counts.count(t)).unwrap() as usize;
                    hist[t][c.min(max_count)] += 1;
                }
            }
        }
        for t in 0..=k {
            let tv: f64 = (0..=max_count)
                .map(|c| {
                    let p1 = hist_enum[t][c] as f64 / draws as f64;
                    let p2 = hist_two[t][c] as f64 / draws as f64;
                    (p1 - p2).abs()
                })
                .sum::<f64>()
                / 2.0;
            assert!(tv < 0.02, "type {t}: TV distance {tv}");
        }
    }

    #[test]
    fn expected_counts_reproduce_exact_baseline() {
        // Substituting E[M_t] = p * C(n_a, t) C(n_b, k-t) into the affinity
        // formula recovers the exact baseline, identically in p.
        use crate::hypergraph::ClassLabel as C;
        for k in 1..=6usize {
            for (n_a, n_b) in [(7u64, 9u64), (10, 4), (6, 6)] {
                if n_a + n_b < k as u64 {
                    continue;
                }
                for p in [rat(1, 10), rat(1, 2), rat(9, 10)] {
                    let expected: Vec<Rational> = (0..=k)
                        .map(|t| {
                            &p * Rational::from_integer(
                                (binomial(n_a, t as u64) * binomial(n_b, (k - t) as u64)).into(),
                            )
                        })
                        .collect();
                    for class in C::BOTH {
                        let degree: Rational = (1..=k)
                            .map(|i| {
                                let idx = match class {
                                    C::A => i,
                                    C::B => k - i,
                                };
                                &expected[idx] * Rational::from_integer(i.into())
                            })
                            .sum();
                        let baseline = baseline_profile(n_a, n_b, k, class).unwrap();
                        for t in 1..=k {
                            let idx = match class {
                                C::A => t,
                                C::B => k - t,
                            };
                            let h_t = &expected[idx] * Rational::from_integer(t.into()) / &degree;
                            assert_eq!(&h_t, baseline.value(t), "k={k} t={t} {class}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn complete_model_has_zero_deviation() {
        let reports =
            convergence_experiment(&[12], 3, &rat(1, 2), 1.0, &seed_schedule(5, 3)).unwrap();
        for r in &reports {
            assert_eq!(r.max_abs_ratio_deviation, 0.0);
            assert_eq!(r.edge_count, 220); // C(12,3)
        }
    }

    #[test]
    fn dense_two_stage_path_matches_complete() {
        // Forces the complement branch (p close to 1).
        let params = HsbmParams::uniform(10, 3, 5, 0.95, 11);
        let h = sample_hsbm_with_strategy(&params, SampleStrategy::TwoStage).unwrap();
        assert!(h.edge_count() > 90 && h.edge_count() <= 120);
        h.validate().unwrap();
        // No duplicate edges in the Bernoulli model.
        let mut seen = std::collections::HashSet::new();
        for e in 0..h.edge_count() {
            let members: Vec<String> = h.edge_member_ids(e).map(|m| m.to_string()).collect();
            assert!(seen.insert(members));
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(
            sample_hsbm(&HsbmParams::uniform(5, 0, 2, 0.5, 1)),
            Err(NullModelError::ParamOutOfRange(_))
        ));
        assert!(matches!(
            sample_hsbm(&HsbmParams::uniform(5, 3, 9, 0.5, 1)),
            Err(NullModelError::ParamOutOfRange(_))
        ));
        let mut params = HsbmParams::uniform(5, 2, 2, 0.5, 1);
        params.p[1] = 1.5;
        assert!(matches!(
            sample_hsbm(&params),
            Err(NullModelError::ParamOutOfRange(_))
        ));
        assert!(matches!(
            convergence_experiment(&[10], 2, &rat(1, 2), 0.0, &[1]),
            Err(NullModelError::ParamOutOfRange(_))
        ));
    }

    #[test]
    fn sampled_counts_total_matches_edge_count() {
        let params = HsbmParams::uniform(15, 4, 7, 0.3, 77);
        let h = sample_hsbm(&params).unwrap();
        let counts = h.edge_type_counts();
        assert_eq!(counts.total(), BigUint::from(h.edge_count()));
    }
}
