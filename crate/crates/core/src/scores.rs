//! Affinity, baseline, and ratio profiles; homophily predicates; the group
//! homophily index; and the binomial log-likelihood view of affinities.
//!
//! All profile values are exact rationals. Two families of scores exist:
//!
//! * *standard* (degree-based): the type-`t` affinity of class `X` is the
//!   share of `X`'s typed degree coming from groups with exactly `t` in-class
//!   members, `h_t(A) = t m_t / sum_i i m_i`;
//! * *alternative* (edge-ratio): the share of edges touching `X` that have
//!   exactly `t` in-class members, `a_t(A) = m_t / sum_i m_i`.
//!
//! Each has a matching baseline (uniform random co-member selection), and
//! the baseline equals the corresponding affinity of the complete hypergraph.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::hypergraph::{ClassLabel, EdgeTypeCounts, HypergraphError};
use crate::rational::{binomial, Rational};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ScoreError {
    #[error("EmptyClassDegree: class {0} participates in no hyperedge")]
    EmptyClassDegree(ClassLabel),
    #[error("EmptyClassEdgeSet: no hyperedge contains a class-{0} node")]
    EmptyClassEdgeSet(ClassLabel),
    #[error("InsufficientNodes: need n >= k and a non-empty class (n={n}, k={k}, class size={class_size})")]
    InsufficientNodes {
        n: u64,
        k: usize,
        class_size: u64,
    },
    #[error("AlphaOutOfRange: alpha must satisfy 0 < alpha < 1, got {0}")]
    AlphaOutOfRange(String),
    #[error("ZeroBaseline: baseline score is zero at t={t}")]
    ZeroBaseline { t: usize },
    #[error("FOutOfRange: f must satisfy 0 < f < 1, got {0}")]
    FOutOfRange(f64),
    #[error("InvalidCounts: {0}")]
    InvalidCounts(String),
    #[error("NonpositiveBaseline: induced score for class {class} at t={t} is not positive")]
    NonpositiveBaseline { class: ClassLabel, t: usize },
    #[error("ProfileMismatch: {0}")]
    ProfileMismatch(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Which score family a computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScoreVariant {
    /// Degree-based scores `h_t`.
    Standard,
    /// Edge-ratio scores `a_t`.
    Alternative,
}

/// Per-type scores for one class, indexed `t = 1..=k`.
///
/// Affinity and baseline profiles sum to one exactly; ratio profiles carry
/// componentwise quotients and have no normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    k: usize,
    class: ClassLabel,
    values: Vec<Rational>,
}

impl Profile {
    pub fn new(k: usize, class: ClassLabel, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), k, "profile must have one value per t=1..=k");
        Profile { k, class, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class(&self) -> ClassLabel {
        self.class
    }

    /// Score at type `t` (1-based).
    pub fn value(&self, t: usize) -> &Rational {
        assert!(t >= 1 && t <= self.k, "type out of range");
        &self.values[t - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }
}

fn check_pair(a: &Profile, b: &Profile) -> Result<(), ScoreError> {
    if a.k != b.k {
        return Err(ScoreError::ProfileMismatch(format!(
            "k differs: {} vs {}",
            a.k, b.k
        )));
    }
    if a.class != b.class {
        return Err(ScoreError::ProfileMismatch(format!(
            "class differs: {} vs {}",
            a.class, b.class
        )));
    }
    Ok(())
}

/// Degree-based affinity profile of `class`:
/// `h_t(X) = t * m_t(X) / sum_i i * m_i(X)`.
pub fn affinity_profile(counts: &EdgeTypeCounts, class: ClassLabel) -> Result<Profile, ScoreError> {
    let k = counts.k();
    let degree = counts.class_degree(class);
    if degree.is_zero() {
        return Err(ScoreError::EmptyClassDegree(class));
    }
    let degree = BigInt::from(degree);
    let values = (1..=k)
        .map(|t| {
            Rational::new(
                BigInt::from(counts.class_count(class, t).clone()) * BigInt::from(t),
                degree.clone(),
            )
        })
        .collect();
    Ok(Profile::new(k, class, values))
}

/// Edge-ratio affinity profile of `class`:
/// `a_t(X) = m_t(X) / sum_i m_i(X)`.
pub fn alternative_affinity_profile(
    counts: &EdgeTypeCounts,
    class: ClassLabel,
) -> Result<Profile, ScoreError> {
    let k = counts.k();
    let total = counts.class_edge_total(class);
    if total.is_zero() {
        return Err(ScoreError::EmptyClassEdgeSet(class));
    }
    let total = BigInt::from(total);
    let values = (1..=k)
        .map(|t| {
            Rational::new(
                BigInt::from(counts.class_count(class, t).clone()),
                total.clone(),
            )
        })
        .collect();
    Ok(Profile::new(k, class, values))
}

/// Exact baseline profile: the probability that a class-`X` node ends up in a
/// type-`t` group when its `k-1` co-members are drawn uniformly at random,
/// `b_t(X) = C(|X|-1, t-1) C(n-|X|, k-t) / C(n-1, k-1)`.
pub fn baseline_profile(
    n_a: u64,
    n_b: u64,
    k: usize,
    class: ClassLabel,
) -> Result<Profile, ScoreError> {
    let n = n_a + n_b;
    let x = match class {
        ClassLabel::A => n_a,
        ClassLabel::B => n_b,
    };
    if k == 0 || n < k as u64 || x == 0 {
        return Err(ScoreError::InsufficientNodes {
            n,
            k,
            class_size: x,
        });
    }
    let denom = BigInt::from(binomial(n - 1, k as u64 - 1));
    let values = (1..=k)
        .map(|t| {
            let numer = binomial(x - 1, t as u64 - 1) * binomial(n - x, (k - t) as u64);
            Rational::new(BigInt::from(numer), denom.clone())
        })
        .collect();
    Ok(Profile::new(k, class, values))
}

/// Large-`n` limit of [`baseline_profile`] at class share `alpha`: the
/// `Binomial(k-1, alpha)` mass function,
/// `b_t(A) = alpha^(t-1) (1-alpha)^(k-t) C(k-1, t-1)`.
pub fn asymptotic_baseline_profile(
    alpha: &Rational,
    k: usize,
    class: ClassLabel,
) -> Result<Profile, ScoreError> {
    if alpha <= &Rational::zero() || alpha >= &Rational::one() {
        return Err(ScoreError::AlphaOutOfRange(alpha.to_string()));
    }
    if k == 0 {
        return Err(ScoreError::InsufficientNodes {
            n: 0,
            k,
            class_size: 0,
        });
    }
    let p = match class {
        ClassLabel::A => alpha.clone(),
        ClassLabel::B => Rational::one() - alpha,
    };
    let q = Rational::one() - &p;
    let values = (1..=k)
        .map(|t| {
            let coeff = Rational::from_integer(BigInt::from(binomial(
                k as u64 - 1,
                t as u64 - 1,
            )));
            coeff * pow_rat(&p, t - 1) * pow_rat(&q, k - t)
        })
        .collect();
    Ok(Profile::new(k, class, values))
}

fn pow_rat(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Baseline for the edge-ratio scores: the probability of a type-`t` group
/// when a `k`-tuple is drawn uniformly among tuples touching class `X`,
/// `b_t(X) = C(|X|, t) C(n-|X|, k-t) / sum_i C(|X|, i) C(n-|X|, k-i)`.
pub fn alternative_baseline_profile(
    n_a: u64,
    n_b: u64,
    k: usize,
    class: ClassLabel,
) -> Result<Profile, ScoreError> {
    let n = n_a + n_b;
    let x = match class {
        ClassLabel::A => n_a,
        ClassLabel::B => n_b,
    };
    if k == 0 || n < k as u64 || x == 0 {
        return Err(ScoreError::InsufficientNodes {
            n,
            k,
            class_size: x,
        });
    }
    let terms: Vec<BigInt> = (1..=k)
        .map(|t| BigInt::from(binomial(x, t as u64) * binomial(n - x, (k - t) as u64)))
        .collect();
    let denom: BigInt = terms.iter().sum();
    if denom.is_zero() {
        return Err(ScoreError::InsufficientNodes {
            n,
            k,
            class_size: x,
        });
    }
    let values = terms
        .into_iter()
        .map(|numer| Rational::new(numer, denom.clone()))
        .collect();
    Ok(Profile::new(k, class, values))
}

/// Componentwise quotient `affinity / baseline`. The baseline must be
/// strictly positive at every `t`; use [`ratio_entries`] for the lenient
/// variant that marks undefined entries instead.
pub fn ratio_profile(affinity: &Profile, baseline: &Profile) -> Result<Profile, ScoreError> {
    check_pair(affinity, baseline)?;
    let values = affinity
        .iter()
        .zip(baseline.values())
        .map(|((t, h), b)| {
            if b.is_zero() {
                Err(ScoreError::ZeroBaseline { t })
            } else {
                Ok(h / b)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Profile::new(affinity.k, affinity.class, values))
}

/// Componentwise quotient with `None` where the baseline vanishes.
pub fn ratio_entries(
    affinity: &Profile,
    baseline: &Profile,
) -> Result<Vec<Option<Rational>>, ScoreError> {
    check_pair(affinity, baseline)?;
    Ok(affinity
        .values()
        .iter()
        .zip(baseline.values())
        .map(|(h, b)| if b.is_zero() { None } else { Some(h / b) })
        .collect())
}

/// Group homophily index: the largest `j` such that the top-`j` affinities
/// are strictly above baseline, i.e. `h_{k-i+1} > b_{k-i+1}` for `i = 1..=j`.
pub fn group_homophily_index(affinity: &Profile, baseline: &Profile) -> Result<usize, ScoreError> {
    check_pair(affinity, baseline)?;
    let k = affinity.k;
    let mut j = 0;
    for t in (1..=k).rev() {
        if affinity.value(t) > baseline.value(t) {
            j += 1;
        } else {
            break;
        }
    }
    Ok(j)
}

/// Homophily predicates for one class against one baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomophilyVerdict {
    /// `h_k > b_k`: above-baseline affinity for all-in-class groups.
    pub simple: bool,
    /// `h_t > b_t` for every majority type (`t > k-t`).
    pub majority: bool,
    /// Strictly increasing ratio over majority types:
    /// `h_t/b_t > h_{t-1}/b_{t-1}` for every `t > k-t`.
    pub monotonic: bool,
    /// Group homophily index.
    pub ghi: usize,
}

/// Evaluates simple/majority/monotonic homophily and the group homophily
/// index. Requires strictly positive baselines.
pub fn homophily_verdict(
    affinity: &Profile,
    baseline: &Profile,
) -> Result<HomophilyVerdict, ScoreError> {
    check_pair(affinity, baseline)?;
    let k = affinity.k;
    for (t, b) in baseline.iter() {
        if b.is_zero() {
            return Err(ScoreError::ZeroBaseline { t });
        }
    }
    let simple = affinity.value(k) > baseline.value(k);
    let majority_types = || (1..=k).filter(|&t| t > k - t);
    let majority = majority_types().all(|t| affinity.value(t) > baseline.value(t));
    // h_t/b_t > h_{t-1}/b_{t-1}  <=>  h_t * b_{t-1} > h_{t-1} * b_t.
    // Only t >= 2 has a predecessor ratio (t = 1 occurs just for k = 1).
    let monotonic = majority_types().filter(|&t| t >= 2).all(|t| {
        affinity.value(t) * baseline.value(t - 1) > affinity.value(t - 1) * baseline.value(t)
    });
    let ghi = group_homophily_index(affinity, baseline)?;
    Ok(HomophilyVerdict {
        simple,
        majority,
        monotonic,
        ghi,
    })
}

/// The even-`k` middle comparison excluded from the majority and monotonic
/// predicates: whether `h_{k/2} > b_{k/2}` and whether the ratio rises from
/// `t = k/2 - 1` to `t = k/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MidComparison {
    pub affinity_above: bool,
    /// `None` when `k = 2` (there is no `t = 0` score to compare against).
    pub ratio_increase: Option<bool>,
}

/// Reports the `t = k/2` comparison for even `k`; `Ok(None)` for odd `k`.
pub fn mid_comparison(
    affinity: &Profile,
    baseline: &Profile,
) -> Result<Option<MidComparison>, ScoreError> {
    check_pair(affinity, baseline)?;
    let k = affinity.k;
    if !k.is_multiple_of(2) {
        return Ok(None);
    }
    let mid = k / 2;
    if baseline.value(mid).is_zero() {
        return Err(ScoreError::ZeroBaseline { t: mid });
    }
    let affinity_above = affinity.value(mid) > baseline.value(mid);
    let ratio_increase = if mid >= 2 {
        if baseline.value(mid - 1).is_zero() {
            return Err(ScoreError::ZeroBaseline { t: mid - 1 });
        }
        Some(
            affinity.value(mid) * baseline.value(mid - 1)
                > affinity.value(mid - 1) * baseline.value(mid),
        )
    } else {
        None
    };
    Ok(Some(MidComparison {
        affinity_above,
        ratio_increase,
    }))
}

/// Log-likelihood (up to an additive constant) of observing `successes[i]`
/// type-matching draws out of `totals[i]` under a common Binomial parameter
/// `f`: `sum_i s_i ln f + (n_i - s_i) ln(1 - f)`.
pub fn binomial_log_likelihood(
    f: f64,
    successes: &[u64],
    totals: &[u64],
) -> Result<f64, ScoreError> {
    if !(f > 0.0 && f < 1.0) {
        return Err(ScoreError::FOutOfRange(f));
    }
    check_counts(successes, totals)?;
    let s: u64 = successes.iter().sum();
    let n: u64 = totals.iter().sum();
    Ok(s as f64 * f.ln() + (n - s) as f64 * (1.0 - f).ln())
}

fn check_counts(successes: &[u64], totals: &[u64]) -> Result<(), ScoreError> {
    if successes.len() != totals.len() {
        return Err(ScoreError::InvalidCounts(format!(
            "length mismatch: {} successes vs {} totals",
            successes.len(),
            totals.len()
        )));
    }
    for (i, (&s, &n)) in successes.iter().zip(totals).enumerate() {
        if s > n {
            return Err(ScoreError::InvalidCounts(format!(
                "successes[{i}] = {s} exceeds totals[{i}] = {n}"
            )));
        }
    }
    Ok(())
}

/// Numerically maximizes the binomial log-likelihood over `f` in `(0, 1)` by
/// grid search plus interval refinement. The comparison of nearby candidates
/// uses the likelihood *difference*
/// `s ln(f1/f2) + (n-s) ln((1-f1)/(1-f2))` via `ln_1p`, which stays accurate
/// down to interval widths far below the requested precision.
pub fn maximize_binomial_log_likelihood(
    successes: &[u64],
    totals: &[u64],
) -> Result<f64, ScoreError> {
    check_counts(successes, totals)?;
    let s: u64 = successes.iter().sum();
    let n: u64 = totals.iter().sum();
    if n == 0 {
        return Err(ScoreError::InvalidCounts("all totals are zero".to_string()));
    }
    let (s, n) = (s as f64, n as f64);
    // ll(f1) - ll(f2), computed without cancellation.
    let delta = |f1: f64, f2: f64| -> f64 {
        s * ((f1 - f2) / f2).ln_1p() + (n - s) * ((f2 - f1) / (1.0 - f2)).ln_1p()
    };

    const GRID: usize = 1024;
    let mut best = 1;
    for i in 2..GRID {
        let f_i = i as f64 / GRID as f64;
        let f_best = best as f64 / GRID as f64;
        if delta(f_i, f_best) > 0.0 {
            best = i;
        }
    }
    let mut lo = (best.saturating_sub(1)) as f64 / GRID as f64;
    let mut hi = ((best + 1).min(GRID) as f64) / GRID as f64;
    lo = lo.max(f64::MIN_POSITIVE);
    hi = hi.min(1.0 - f64::EPSILON);
    // Ternary refinement on the concave likelihood.
    for _ in 0..120 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if delta(m1, m2) > 0.0 {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok((lo + hi) / 2.0)
}

/// Provenance tag for a [`GeneralizedBaseline`] witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaselineKind {
    /// Complete-hypergraph witness on given class sizes.
    StandardExact,
    /// Binomial witness realizing the large-`n` baseline at some alpha.
    Asymptotic,
    /// Witness intended for edge-ratio scores.
    Alternative,
    /// Caller-supplied counts.
    CustomWitness,
}

/// Baseline scores represented by the edge-type counts of a witness
/// hypergraph `G`, so that realizability holds by construction. The induced
/// scores (under either variant) are strictly positive for every `t` and both
/// classes, which requires every witness count to be positive.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedBaseline {
    witness: EdgeTypeCounts,
    kind: BaselineKind,
}

impl GeneralizedBaseline {
    pub fn from_witness(
        witness: EdgeTypeCounts,
        kind: BaselineKind,
    ) -> Result<Self, ScoreError> {
        let k = witness.k();
        for t in 0..=k {
            if witness.count(t).is_zero() {
                // m_t = 0 kills g_t(A) for t >= 1, and g_{k-t}(B) in general.
                let (class, bad_t) = if t >= 1 {
                    (ClassLabel::A, t)
                } else {
                    (ClassLabel::B, k)
                };
                return Err(ScoreError::NonpositiveBaseline { class, t: bad_t });
            }
        }
        Ok(GeneralizedBaseline { witness, kind })
    }

    /// Exact baselines for class sizes `(n_a, n_b)`: the complete-hypergraph
    /// witness. Requires `n_a >= k` and `n_b >= k` for positivity.
    pub fn complete(n_a: u64, n_b: u64, k: usize) -> Result<Self, ScoreError> {
        Self::from_witness(
            EdgeTypeCounts::complete(n_a, n_b, k)?,
            BaselineKind::StandardExact,
        )
    }

    /// The symmetric (alpha = 1/2) asymptotic baseline witness `m_t = C(k,t)`.
    pub fn symmetric_binomial(k: usize) -> Result<Self, ScoreError> {
        Self::from_witness(
            EdgeTypeCounts::symmetric_binomial(k)?,
            BaselineKind::Asymptotic,
        )
    }

    /// Witness realizing the asymptotic baseline at rational `alpha = p/q`:
    /// `m_t = C(k,t) p^t (q-p)^(k-t)`.
    pub fn asymptotic(alpha: &Rational, k: usize) -> Result<Self, ScoreError> {
        if alpha <= &Rational::zero() || alpha >= &Rational::one() {
            return Err(ScoreError::AlphaOutOfRange(alpha.to_string()));
        }
        if k == 0 {
            return Err(ScoreError::Hypergraph(HypergraphError::InvalidK(k)));
        }
        let p = alpha.numer().to_biguint().expect("0 < alpha");
        let q = alpha.denom().to_biguint().expect("positive denominator");
        let q_minus_p = &q - &p;
        let m = (0..=k)
            .map(|t| binomial(k as u64, t as u64) * p.pow(t as u32) * q_minus_p.pow((k - t) as u32))
            .collect();
        Self::from_witness(EdgeTypeCounts::new(m)?, BaselineKind::Asymptotic)
    }

    pub fn k(&self) -> usize {
        self.witness.k()
    }

    pub fn kind(&self) -> BaselineKind {
        self.kind
    }

    pub fn witness(&self) -> &EdgeTypeCounts {
        &self.witness
    }

    /// Induced score profile under the given variant. Cannot fail: witness
    /// positivity is checked at construction.
    pub fn scores(&self, variant: ScoreVariant, class: ClassLabel) -> Profile {
        match variant {
            ScoreVariant::Standard => affinity_profile(&self.witness, class),
            ScoreVariant::Alternative => alternative_affinity_profile(&self.witness, class),
        }
        .expect("witness counts are strictly positive")
    }

    /// Single induced score `g_t(X)`.
    pub fn score(&self, variant: ScoreVariant, class: ClassLabel, t: usize) -> Rational {
        self.scores(variant, class).value(t).clone()
    }

    /// Same baseline with class roles swapped.
    pub fn mirrored(&self) -> Self {
        GeneralizedBaseline {
            witness: self.witness.reversed(),
            kind: self.kind,
        }
    }
}
