//! Exact-rational certificates for the group-homophily impossibility bounds.
//!
//! The central object is a feasibility LP over the edge-type proportions
//! `x_0..x_k` of a hypothetical hypergraph: one constraint per majority type
//! and class requires the class affinity to exceed its baseline by a margin
//! `gamma`. Both classes can exhibit majority homophily simultaneously iff
//! the LP optimum is positive. This module builds the constraint matrix,
//! constructs the closed-form dual vector `y` with `y >= 0` and `B^T y = 0`
//! (which pins the optimum at zero), and checks certificates by pure rational
//! linear algebra. No numeric LP solver is involved anywhere.
//!
//! Complementing the certificates:
//!
//! * [`constraint_removal_witness`] shows the bound is tight: dropping any
//!   single constraint admits a strictly feasible point;
//! * [`monotonic_contradiction`] and [`even_monotonic_consequence`] cover the
//!   monotonic-homophily impossibility, which reduces to one opposed pair of
//!   count ratios;
//! * [`brute_force_impossibility_search`] is an independent randomized oracle
//!   over integer count vectors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{ClassLabel, EdgeTypeCounts};
use crate::rational::{rat, rat_int, Rational};
use crate::scores::{BaselineKind, GeneralizedBaseline, Profile, ScoreError, ScoreVariant};

#[derive(Error, Debug)]
pub enum CertificateError {
    #[error("InvalidK: {0}")]
    InvalidK(String),
    #[error("CertificateConstructionFailed: {0}")]
    CertificateConstructionFailed(String),
    #[error("NoWitness: {0}")]
    NoWitness(String),
    #[error("ZeroWitnessCount: witness count at t={t} is zero")]
    ZeroWitnessCount { t: usize },
    #[error("UnknownConstraint: ({class}, {t}) is not a constraint of this program")]
    UnknownConstraint { class: ClassLabel, t: usize },
    #[error("UnsupportedProgram: {0}")]
    UnsupportedProgram(String),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// Constructs a [`GeneralizedBaseline`] from explicit witness counts,
/// checking that every induced score is strictly positive.
pub fn generalized_baseline_from_witness(
    counts: EdgeTypeCounts,
    kind: BaselineKind,
) -> Result<GeneralizedBaseline, ScoreError> {
    GeneralizedBaseline::from_witness(counts, kind)
}

/// The majority-homophily feasibility program for one baseline.
///
/// Rows are ordered `(B,k) .. (B,r)`, then the optional middle row
/// `(X, k/2)` for even `k`, then `(A,r) .. (A,k)`, where `r` is the smallest
/// majority type. Columns correspond to the variables `x_0..x_k`.
#[derive(Clone, Debug)]
pub struct MajorityLp {
    k: usize,
    r: usize,
    variant: ScoreVariant,
    mid: Option<ClassLabel>,
    rows: Vec<(ClassLabel, usize)>,
    matrix: Vec<Vec<Rational>>,
    baseline: GeneralizedBaseline,
    scores_a: Profile,
    scores_b: Profile,
}

impl MajorityLp {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Smallest strict-majority type: `(k+1)/2` for odd `k`, `k/2 + 1` even.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn variant(&self) -> ScoreVariant {
        self.variant
    }

    pub fn mid_constraint(&self) -> Option<ClassLabel> {
        self.mid
    }

    pub fn rows(&self) -> &[(ClassLabel, usize)] {
        &self.rows
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn baseline(&self) -> &GeneralizedBaseline {
        &self.baseline
    }

    /// Baseline score `g_t(X)` under this program's variant.
    pub fn score(&self, class: ClassLabel, t: usize) -> &Rational {
        match class {
            ClassLabel::A => self.scores_a.value(t),
            ClassLabel::B => self.scores_b.value(t),
        }
    }

    /// Constraint slacks `(B x)_row` for a candidate proportion vector `x`
    /// (length `k+1`).
    pub fn row_slacks(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.k + 1, "x must have k+1 entries");
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(c, v)| c * v).sum())
            .collect()
    }

    fn row_index(&self, constraint: (ClassLabel, usize)) -> Option<usize> {
        self.rows.iter().position(|&c| c == constraint)
    }

    /// Column of the variable each constraint bounds from below.
    fn own_column(&self, constraint: (ClassLabel, usize)) -> usize {
        match constraint.0 {
            ClassLabel::A => constraint.1,
            ClassLabel::B => self.k - constraint.1,
        }
    }
}

/// Builds the majority LP for baseline `g`.
///
/// `mid_constraint` adds the even-`k` extra row (`h_{k/2}` above baseline for
/// the given class); it must be `None` for odd `k`. For even `k` the dual
/// certificate exists only when the extra row is present.
pub fn build_majority_lp(
    k: usize,
    g: GeneralizedBaseline,
    variant: ScoreVariant,
    mid_constraint: Option<ClassLabel>,
) -> Result<MajorityLp, CertificateError> {
    if k < 2 {
        return Err(CertificateError::InvalidK(format!(
            "majority program needs k >= 2, got {k}"
        )));
    }
    if g.k() != k {
        return Err(CertificateError::InvalidK(format!(
            "baseline has k = {}, program wants k = {k}",
            g.k()
        )));
    }
    if !k.is_multiple_of(2) && mid_constraint.is_some() {
        return Err(CertificateError::InvalidK(
            "middle constraint only applies to even k".to_string(),
        ));
    }
    let r = if k.is_multiple_of(2) { k / 2 + 1 } else { k.div_ceil(2) };

    let mut rows: Vec<(ClassLabel, usize)> = Vec::new();
    for t in (r..=k).rev() {
        rows.push((ClassLabel::B, t));
    }
    if let Some(class) = mid_constraint {
        rows.push((class, k / 2));
    }
    for t in r..=k {
        rows.push((ClassLabel::A, t));
    }

    let scores_a = g.scores(variant, ClassLabel::A);
    let scores_b = g.scores(variant, ClassLabel::B);
    let score = |class: ClassLabel, t: usize| -> Rational {
        match class {
            ClassLabel::A => scores_a.value(t).clone(),
            ClassLabel::B => scores_b.value(t).clone(),
        }
    };

    // Direct assembly of the constraint rows.
    let matrix: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&(class, t)| {
            (0..=k)
                .map(|j| {
                    let own = match class {
                        ClassLabel::A => j == t,
                        ClassLabel::B => j == k - t,
                    };
                    let own_coeff = match (variant, own) {
                        (ScoreVariant::Standard, true) => rat_int(t as i64),
                        (ScoreVariant::Alternative, true) => Rational::one(),
                        (_, false) => Rational::zero(),
                    };
                    let weight = match (variant, class) {
                        (ScoreVariant::Standard, ClassLabel::A) => rat_int(j as i64),
                        (ScoreVariant::Standard, ClassLabel::B) => rat_int((k - j) as i64),
                        (ScoreVariant::Alternative, ClassLabel::A) => {
                            if j >= 1 {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        }
                        (ScoreVariant::Alternative, ClassLabel::B) => {
                            if j < k {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        }
                    };
                    own_coeff - score(class, t) * weight
                })
                .collect()
        })
        .collect();

    let lp = MajorityLp {
        k,
        r,
        variant,
        mid: mid_constraint,
        rows,
        matrix,
        baseline: g,
        scores_a,
        scores_b,
    };
    verify_decomposition(&lp)?;
    Ok(lp)
}

/// Checks the decomposition identity of the constraint matrix by building
/// the factors and multiplying them out: `B = D_k - D_g R` for degree-based
/// scores and `B = I - D_g E` for edge-ratio scores, entrywise and exactly.
/// `D_k` holds each constraint's own-variable coefficient on its own column,
/// `D_g` the baseline scores, and `R`/`E` the per-class weight patterns.
fn verify_decomposition(lp: &MajorityLp) -> Result<(), CertificateError> {
    let k = lp.k;
    let rows = lp.rows.len();
    let mut own = vec![vec![Rational::zero(); k + 1]; rows];
    let mut weights = vec![vec![Rational::zero(); k + 1]; rows];
    let mut diag_g = Vec::with_capacity(rows);
    for (i, &(class, t)) in lp.rows.iter().enumerate() {
        own[i][lp.own_column((class, t))] = match lp.variant {
            ScoreVariant::Standard => rat_int(t as i64),
            ScoreVariant::Alternative => Rational::one(),
        };
        diag_g.push(lp.score(class, t).clone());
        for j in 0..=k {
            weights[i][j] = match (lp.variant, class) {
                (ScoreVariant::Standard, ClassLabel::B) => rat_int((k - j) as i64),
                (ScoreVariant::Standard, ClassLabel::A) => rat_int(j as i64),
                (ScoreVariant::Alternative, ClassLabel::B) if j == k => Rational::zero(),
                (ScoreVariant::Alternative, ClassLabel::A) if j == 0 => Rational::zero(),
                (ScoreVariant::Alternative, _) => Rational::one(),
            };
        }
    }
    for i in 0..rows {
        for j in 0..=k {
            let expected = &own[i][j] - &diag_g[i] * &weights[i][j];
            if lp.matrix[i][j] != expected {
                return Err(CertificateError::CertificateConstructionFailed(format!(
                    "decomposition mismatch at row {i}, column {j}"
                )));
            }
        }
    }
    Ok(())
}

/// Nonnegative dual vector annihilating the constraint matrix. Entries are
/// indexed like the program rows.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    y: Vec<Rational>,
    delta: Rational,
    normalized: bool,
}

impl DualCertificate {
    pub fn entries(&self) -> &[Rational] {
        &self.y
    }

    /// Scale constant of the closed form: the harmonic-sum `delta` for
    /// degree-based programs, the raw entry sum for edge-ratio programs.
    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn sum(&self) -> Rational {
        self.y.iter().sum()
    }

    /// Rescales the entries to sum to one.
    pub fn normalize(&self) -> Result<DualCertificate, CertificateError> {
        let sum = self.sum();
        if sum.is_zero() {
            return Err(CertificateError::CertificateConstructionFailed(
                "dual vector sums to zero".to_string(),
            ));
        }
        Ok(DualCertificate {
            y: self.y.iter().map(|v| v / &sum).collect(),
            delta: self.delta.clone(),
            normalized: true,
        })
    }
}

/// Closed-form dual certificate, normalized to sum one. See
/// [`dual_certificate_majority_raw`] for the unnormalized entries.
pub fn dual_certificate_majority(lp: &MajorityLp) -> Result<DualCertificate, CertificateError> {
    dual_certificate_majority_raw(lp)?.normalize()
}

/// The dual entries exactly as produced by the closed-form expressions,
/// before normalization.
pub fn dual_certificate_majority_raw(
    lp: &MajorityLp,
) -> Result<DualCertificate, CertificateError> {
    if lp.k.is_multiple_of(2) && lp.mid.is_none() {
        return Err(CertificateError::UnsupportedProgram(
            "even k requires the middle constraint for a certificate; without it the optimum is positive".to_string(),
        ));
    }
    match lp.variant {
        ScoreVariant::Standard => standard_dual(lp),
        ScoreVariant::Alternative => alternative_dual(lp),
    }
}

fn standard_dual(lp: &MajorityLp) -> Result<DualCertificate, CertificateError> {
    let (k, r) = (lp.k, lp.r);
    let k_rat = rat_int(k as i64);
    // Anchor class: the one without the extra middle row.
    let anchor = match lp.mid {
        None => ClassLabel::B,
        Some(mid) => mid.other(),
    };

    let mut delta: Rational = (r..=k).map(|t| &k_rat / rat_int(t as i64)).sum::<Rational>() * rat_int(2);
    if lp.mid.is_some() {
        delta += rat_int(2);
    }
    let two_over_delta = rat_int(2) / &delta;

    // y_anchor(k) = (2/delta) * sum_i (k/i - 1) g_i / (1 - sum_i (2 - k/i) g_i).
    let mut numer = Rational::zero();
    let mut denom = Rational::one();
    for i in r..=k {
        let k_over_i = &k_rat / rat_int(i as i64);
        numer += (&k_over_i - Rational::one()) * lp.score(anchor, i);
        denom -= (rat_int(2) - &k_over_i) * lp.score(anchor, i);
    }
    if denom.is_zero() {
        return Err(CertificateError::CertificateConstructionFailed(
            "degenerate anchor denominator".to_string(),
        ));
    }
    let y_anchor_k = &two_over_delta * numer / denom;

    let y_anchor = |t: usize| -> Rational {
        let k_over_t = &k_rat / rat_int(t as i64);
        &two_over_delta * (&k_over_t - Rational::one())
            + (rat_int(2) - &k_over_t) * &y_anchor_k
    };
    let y_other = |t: usize| -> Rational {
        &two_over_delta * &k_rat / rat_int(t as i64) - y_anchor(t)
    };

    let y = lp
        .rows
        .iter()
        .map(|&(class, t)| {
            if lp.mid == Some(class) && t == k / 2 {
                two_over_delta.clone()
            } else if class == anchor {
                y_anchor(t)
            } else {
                y_other(t)
            }
        })
        .collect();
    Ok(DualCertificate {
        y,
        delta,
        normalized: false,
    })
}

fn alternative_dual(lp: &MajorityLp) -> Result<DualCertificate, CertificateError> {
    let (k, r) = (lp.k, lp.r);
    // All interior entries share the free scale z; fix z = 1.
    let top = |class: ClassLabel| -> Result<Rational, CertificateError> {
        let low = if lp.mid == Some(class) { k / 2 } else { r };
        let denom = Rational::one() - lp.score(class, k);
        if denom.is_zero() {
            return Err(CertificateError::CertificateConstructionFailed(
                "degenerate top-score denominator".to_string(),
            ));
        }
        Ok((low..k).map(|i| lp.score(class, i)).sum::<Rational>() / denom)
    };
    let y = lp
        .rows
        .iter()
        .map(|&(class, t)| {
            if t == k {
                top(class)
            } else {
                Ok(Rational::one())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let delta = y.iter().sum();
    Ok(DualCertificate {
        y,
        delta,
        normalized: false,
    })
}

/// One line of a certificate verification report.
#[derive(Clone, Debug)]
pub struct CertificateCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Exact residual or offending value, rendered as rationals.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CertificateCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks, in exact arithmetic: `y >= 0` componentwise, `B^T y = 0`, and
/// `sum y = 1`. Failures are reported, not raised.
pub fn verify_certificate(lp: &MajorityLp, certificate: &DualCertificate) -> VerificationReport {
    let mut checks = Vec::new();
    let y = certificate.entries();

    let dims_ok = y.len() == lp.rows.len();
    checks.push(CertificateCheck {
        name: "dimensions",
        pass: dims_ok,
        detail: format!("{} entries for {} rows", y.len(), lp.rows.len()),
    });
    if !dims_ok {
        return VerificationReport { checks };
    }

    let min_entry = y.iter().min().cloned().unwrap_or_else(Rational::zero);
    checks.push(CertificateCheck {
        name: "nonnegativity",
        pass: !min_entry.is_negative(),
        detail: format!("min entry = {min_entry}"),
    });

    // B^T y per column.
    let mut residuals = Vec::with_capacity(lp.k + 1);
    for j in 0..=lp.k {
        let mut acc = Rational::zero();
        for (i, row) in lp.matrix.iter().enumerate() {
            acc += &row[j] * &y[i];
        }
        residuals.push(acc);
    }
    let max_abs = residuals
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    checks.push(CertificateCheck {
        name: "annihilation",
        pass: residuals.iter().all(|v| v.is_zero()),
        detail: format!("max |B^T y| = {max_abs}"),
    });

    let sum = certificate.sum();
    checks.push(CertificateCheck {
        name: "normalization",
        pass: sum.is_one(),
        detail: format!("sum = {sum}"),
    });

    VerificationReport { checks }
}

/// Outcome of evaluating one class's monotonic-homophily chain
/// `h_t/g_t > h_{t-1}/g_{t-1}` over the majority types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEvaluation {
    pub holds: bool,
    /// Lowest majority type at which the strict increase fails.
    pub first_failure: Option<usize>,
}

/// Both classes' monotonic chains against one baseline, plus the reduced
/// ratio pair that makes simultaneous success impossible for odd `k`.
#[derive(Clone, Debug)]
pub struct MonotonicReport {
    pub class_a: ChainEvaluation,
    pub class_b: ChainEvaluation,
    /// `(m_r/M_r, m_{r-1}/M_{r-1})`: class A's bottom chain step requires the
    /// first to exceed the second, class B's requires the opposite.
    pub reduced_pair: (Rational, Rational),
}

impl MonotonicReport {
    pub fn both_hold(&self) -> bool {
        self.class_a.holds && self.class_b.holds
    }
}

fn class_count_big(counts: &EdgeTypeCounts, class: ClassLabel, t: usize) -> BigInt {
    BigInt::from(counts.class_count(class, t).clone())
}

/// Chain step `t`: `m'_t / M'_t > m'_{t-1} / M'_{t-1}` by cross
/// multiplication (class-relative counts; baseline denominators cancel).
fn chain_step_holds(
    counts: &EdgeTypeCounts,
    witness: &EdgeTypeCounts,
    class: ClassLabel,
    t: usize,
) -> bool {
    let m_t = class_count_big(counts, class, t);
    let m_prev = class_count_big(counts, class, t - 1);
    let w_t = class_count_big(witness, class, t);
    let w_prev = class_count_big(witness, class, t - 1);
    m_t * w_prev > m_prev * w_t
}

fn evaluate_chain(
    counts: &EdgeTypeCounts,
    witness: &EdgeTypeCounts,
    class: ClassLabel,
    r: usize,
    k: usize,
) -> ChainEvaluation {
    let mut first_failure = None;
    for t in r..=k {
        if !chain_step_holds(counts, witness, class, t) {
            first_failure = Some(t);
            break;
        }
    }
    ChainEvaluation {
        holds: first_failure.is_none(),
        first_failure,
    }
}

/// Evaluates both monotonic-homophily chains for odd `k`. The two bottom
/// steps reduce to opposite strict inequalities on `m_r/M_r` versus
/// `m_{r-1}/M_{r-1}`, so the chains can never hold together; this function
/// reports where each fails.
pub fn monotonic_contradiction(
    counts: &EdgeTypeCounts,
    g: &GeneralizedBaseline,
) -> Result<MonotonicReport, CertificateError> {
    let k = g.k();
    if k.is_multiple_of(2) || k < 3 {
        return Err(CertificateError::InvalidK(format!(
            "monotonic contradiction applies to odd k >= 3, got {k}"
        )));
    }
    if counts.k() != k {
        return Err(CertificateError::InvalidK(format!(
            "counts have k = {}, baseline has k = {k}",
            counts.k()
        )));
    }
    let witness = g.witness();
    let r = k.div_ceil(2);
    for t in [r, r - 1] {
        if witness.count(t).is_zero() {
            return Err(CertificateError::ZeroWitnessCount { t });
        }
    }
    let class_a = evaluate_chain(counts, witness, ClassLabel::A, r, k);
    let class_b = evaluate_chain(counts, witness, ClassLabel::B, r, k);
    let reduced_pair = (
        Rational::new(
            BigInt::from(counts.count(r).clone()),
            BigInt::from(witness.count(r).clone()),
        ),
        Rational::new(
            BigInt::from(counts.count(r - 1).clone()),
            BigInt::from(witness.count(r - 1).clone()),
        ),
    );
    Ok(MonotonicReport {
        class_a,
        class_b,
        reduced_pair,
    })
}

/// Even-`k` consequence: if both classes are monotonically homophilous, the
/// ratio must *dip* at the middle type for both classes.
#[derive(Clone, Debug)]
pub struct EvenMonotonicReport {
    pub class_a_monotonic: bool,
    pub class_b_monotonic: bool,
    /// `h_l/g_l < h_{l-1}/g_{l-1}` at `l = k/2`; `None` when `k = 2` (no
    /// type below the middle).
    pub mid_dip_a: Option<bool>,
    pub mid_dip_b: Option<bool>,
}

impl EvenMonotonicReport {
    pub fn both_monotonic(&self) -> bool {
        self.class_a_monotonic && self.class_b_monotonic
    }

    /// True unless both chains hold while a middle dip fails.
    pub fn consequence_holds(&self) -> bool {
        !self.both_monotonic()
            || (self.mid_dip_a.unwrap_or(true) && self.mid_dip_b.unwrap_or(true))
    }
}

pub fn even_monotonic_consequence(
    counts: &EdgeTypeCounts,
    g: &GeneralizedBaseline,
) -> Result<EvenMonotonicReport, CertificateError> {
    let k = g.k();
    if !k.is_multiple_of(2) {
        return Err(CertificateError::InvalidK(format!(
            "even-k consequence needs even k, got {k}"
        )));
    }
    if counts.k() != k {
        return Err(CertificateError::InvalidK(format!(
            "counts have k = {}, baseline has k = {k}",
            counts.k()
        )));
    }
    let witness = g.witness();
    let r = k / 2 + 1;
    let mid = k / 2;
    if witness.count(mid).is_zero() {
        return Err(CertificateError::ZeroWitnessCount { t: mid });
    }
    let class_a = evaluate_chain(counts, witness, ClassLabel::A, r, k);
    let class_b = evaluate_chain(counts, witness, ClassLabel::B, r, k);
    let dip = |class: ClassLabel| -> Option<bool> {
        if mid < 2 {
            return None;
        }
        // Ratio decreases at the middle: strict reverse of the chain step.
        let m_mid = class_count_big(counts, class, mid);
        let m_prev = class_count_big(counts, class, mid - 1);
        let w_mid = class_count_big(witness, class, mid);
        let w_prev = class_count_big(witness, class, mid - 1);
        Some(m_mid * w_prev < m_prev * w_mid)
    };
    Ok(EvenMonotonicReport {
        class_a_monotonic: class_a.holds,
        class_b_monotonic: class_b.holds,
        mid_dip_a: dip(ClassLabel::A),
        mid_dip_b: dip(ClassLabel::B),
    })
}

/// Strictly feasible point for the program with one constraint removed.
#[derive(Clone, Debug)]
pub struct Witness {
    x: Vec<Rational>,
    gamma: Rational,
    removed: (ClassLabel, usize),
}

impl Witness {
    /// Proportion vector over `x_0..x_k`, summing to one.
    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    /// Minimum slack over the retained constraints; strictly positive.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn removed_constraint(&self) -> (ClassLabel, usize) {
        self.removed
    }
}

/// Constructs a strictly feasible point after removing one constraint of a
/// standard-variant, odd-`k` program. Interior variables are zeroed out
/// directly; removing a boundary bound (`x_0` or `x_k`) uses an exact
/// epsilon perturbation of the witness proportions.
pub fn constraint_removal_witness(
    lp: &MajorityLp,
    removed: (ClassLabel, usize),
) -> Result<Witness, CertificateError> {
    if lp.variant != ScoreVariant::Standard {
        return Err(CertificateError::UnsupportedProgram(
            "removal witnesses are constructed for the degree-based program".to_string(),
        ));
    }
    if lp.k.is_multiple_of(2) {
        return Err(CertificateError::UnsupportedProgram(
            "removal witnesses are constructed for odd k".to_string(),
        ));
    }
    let row = lp
        .row_index(removed)
        .ok_or(CertificateError::UnknownConstraint {
            class: removed.0,
            t: removed.1,
        })?;
    let k = lp.k;
    let var = lp.own_column(removed);

    let x = if var == 0 {
        boundary_witness_x(lp)?
    } else if var == k {
        // Mirror classes, reuse the x_0 construction, and map back.
        let mirrored = build_majority_lp(
            k,
            lp.baseline.mirrored(),
            ScoreVariant::Standard,
            None,
        )?;
        let mut x = boundary_witness_x(&mirrored)?;
        x.reverse();
        x
    } else {
        // Interior: drop the variable, keep witness proportions elsewhere.
        let total = BigInt::from(lp.baseline.witness().total());
        (0..=k)
            .map(|j| {
                if j == var {
                    Rational::zero()
                } else {
                    Rational::new(
                        BigInt::from(lp.baseline.witness().count(j).clone()),
                        total.clone(),
                    )
                }
            })
            .collect()
    };

    let sum: Rational = x.iter().sum();
    if sum.is_zero() {
        return Err(CertificateError::NoWitness(
            "witness vector vanished".to_string(),
        ));
    }
    let x: Vec<Rational> = x.into_iter().map(|v| v / &sum).collect();

    let slacks = lp.row_slacks(&x);
    let gamma = slacks
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, s)| s.clone())
        .min()
        .ok_or_else(|| CertificateError::NoWitness("no retained constraints".to_string()))?;
    if !gamma.is_positive() {
        return Err(CertificateError::NoWitness(format!(
            "retained slack {gamma} is not positive"
        )));
    }
    Ok(Witness {
        x,
        gamma,
        removed,
    })
}

/// The epsilon-perturbed vector for removing the `x_0` lower bound:
/// `x_t = xt + eps/t` for majority types, `xt - eps/t` below, `x_0 = 0`,
/// with `eps` half the smallest binding upper bound.
fn boundary_witness_x(lp: &MajorityLp) -> Result<Vec<Rational>, CertificateError> {
    let k = lp.k;
    let r = lp.r;
    let witness = lp.baseline.witness();
    let total = BigInt::from(witness.total());
    let xt: Vec<Rational> = (0..=k)
        .map(|j| Rational::new(BigInt::from(witness.count(j).clone()), total.clone()))
        .collect();

    // c = sum_{i<r} (k-i)/i - sum_{r<=i<k} (k-i)/i.
    let mut c = Rational::zero();
    for i in 1..r {
        c += rat((k - i) as i64, i as i64);
    }
    for i in r..k {
        c -= rat((k - i) as i64, i as i64);
    }
    let d_b: Rational = (0..k)
        .map(|i| rat_int((k - i) as i64) * &xt[i])
        .sum();

    let mut bounds: Vec<Rational> = Vec::new();
    for t in 1..r {
        // Retained class-B row for x_t: k*x0*g_{k-t}(B) > eps*((k-t)/t - g_{k-t}(B)*c).
        let g = lp.score(ClassLabel::B, k - t).clone();
        let rhs = rat((k - t) as i64, t as i64) - &g * &c;
        if rhs.is_positive() {
            bounds.push(rat_int(k as i64) * &xt[0] * &g / rhs);
        }
        // Keep the perturbed coordinate positive.
        bounds.push(rat_int(t as i64) * &xt[t]);
    }
    if c.is_positive() {
        bounds.push((&d_b - rat_int(k as i64) * &xt[0]) / &c);
    }
    let eps = bounds
        .into_iter()
        .min()
        .ok_or_else(|| CertificateError::NoWitness("no epsilon bound".to_string()))?
        / rat_int(2);
    if !eps.is_positive() {
        return Err(CertificateError::NoWitness(format!(
            "epsilon bound {eps} is not positive"
        )));
    }

    Ok((0..=k)
        .map(|t| {
            if t == 0 {
                Rational::zero()
            } else if t >= r {
                &xt[t] + &eps / rat_int(t as i64)
            } else {
                &xt[t] - &eps / rat_int(t as i64)
            }
        })
        .collect())
}

/// Configuration of the randomized impossibility search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub variant: ScoreVariant,
    /// Even-`k` middle constraint to include in the majority predicate.
    pub mid: Option<ClassLabel>,
    pub trials: u64,
    pub seed: u64,
    /// Count coordinates are sampled uniformly from `0..=max_coordinate`.
    pub max_coordinate: u64,
}

impl SearchConfig {
    pub fn new(variant: ScoreVariant, mid: Option<ClassLabel>, trials: u64, seed: u64) -> Self {
        SearchConfig {
            variant,
            mid,
            trials,
            seed,
            max_coordinate: 1000,
        }
    }
}

/// Outcome of the randomized search over integer count vectors.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub trials_evaluated: u64,
    /// Instances where both classes satisfy majority homophily (middle
    /// constraint not considered).
    pub both_majority: u64,
    /// Of those, instances that also satisfy the configured middle
    /// constraint (`None` when no middle constraint is configured).
    pub both_majority_with_mid: Option<u64>,
    /// Instances where both classes satisfy monotonic homophily.
    pub both_monotonic: u64,
    /// Both-majority counts that contradict a certificate: all instances for
    /// odd `k`, mid-satisfying instances for even `k` with a configured mid.
    pub majority_theorem_violations: u64,
    /// Both-monotonic instances contradicting the impossibility statements:
    /// all of them for odd `k`; for even `k`, those missing a middle dip.
    pub monotonic_theorem_violations: u64,
    /// Largest minimum-slack over all evaluated vectors (the best gamma any
    /// candidate achieved against the configured constraint system).
    pub max_gamma: Option<Rational>,
    /// For even `k` without a middle constraint: whether the
    /// middle-type-deleted witness satisfies both-majority (it always does,
    /// and is evaluated as a planted positive control).
    pub planted_control_majority: Option<bool>,
}

/// Randomized oracle for the impossibility statements: samples integer count
/// vectors, evaluates the majority and monotonic predicates exactly, and
/// tracks the best feasibility margin seen.
pub fn brute_force_impossibility_search(
    g: &GeneralizedBaseline,
    config: &SearchConfig,
) -> Result<SearchReport, CertificateError> {
    if config.trials < 1 {
        return Err(CertificateError::UnsupportedProgram(
            "search needs at least one trial".to_string(),
        ));
    }
    let k = g.k();
    if k < 2 {
        return Err(CertificateError::InvalidK(format!("search needs k >= 2, got {k}")));
    }
    if !k.is_multiple_of(2) && config.mid.is_some() {
        return Err(CertificateError::InvalidK(
            "middle constraint only applies to even k".to_string(),
        ));
    }
    let evaluator = SearchEvaluator::new(g, config.variant, k);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut report = SearchReport {
        trials_evaluated: 0,
        both_majority: 0,
        both_majority_with_mid: config.mid.map(|_| 0),
        both_monotonic: 0,
        majority_theorem_violations: 0,
        monotonic_theorem_violations: 0,
        max_gamma: None,
        planted_control_majority: None,
    };

    let mut counts = vec![BigInt::zero(); k + 1];
    for _ in 0..config.trials {
        for c in counts.iter_mut() {
            *c = BigInt::from(rng.random_range(0..=config.max_coordinate));
        }
        evaluator.record(&counts, config.mid, &mut report);
    }

    // Planted positive control: the witness with all middle-type edges
    // removed satisfies both-majority when no middle constraint is imposed.
    if k.is_multiple_of(2) && config.mid.is_none() {
        let mut planted: Vec<BigInt> = g
            .witness()
            .counts()
            .iter()
            .map(|c| BigInt::from(c.clone()))
            .collect();
        planted[k / 2] = BigInt::zero();
        let before = report.both_majority;
        evaluator.record(&planted, None, &mut report);
        report.planted_control_majority = Some(report.both_majority > before);
    }

    Ok(report)
}

/// Exact predicate evaluation against one baseline witness.
struct SearchEvaluator {
    k: usize,
    r: usize,
    variant: ScoreVariant,
    witness: Vec<BigInt>,
    /// Per-class witness normalizers (degree or edge totals).
    norm_a: BigInt,
    norm_b: BigInt,
}

impl SearchEvaluator {
    fn new(g: &GeneralizedBaseline, variant: ScoreVariant, k: usize) -> Self {
        let witness: Vec<BigInt> = g
            .witness()
            .counts()
            .iter()
            .map(|c| BigInt::from(c.clone()))
            .collect();
        let (norm_a, norm_b) = Self::normalizers(&witness, k, variant);
        let r = if k.is_multiple_of(2) { k / 2 + 1 } else { k.div_ceil(2) };
        SearchEvaluator {
            k,
            r,
            variant,
            witness,
            norm_a,
            norm_b,
        }
    }

    fn normalizers(counts: &[BigInt], k: usize, variant: ScoreVariant) -> (BigInt, BigInt) {
        match variant {
            ScoreVariant::Standard => (
                (1..=k).map(|i| &counts[i] * BigInt::from(i)).sum(),
                (1..=k).map(|i| &counts[k - i] * BigInt::from(i)).sum(),
            ),
            ScoreVariant::Alternative => (
                (1..=k).map(|i| counts[i].clone()).sum(),
                (1..=k).map(|i| counts[k - i].clone()).sum(),
            ),
        }
    }

    /// Slack numerator of the `(class, t)` constraint for counts `m`; the
    /// matching denominator is `S * norm_g(class)`, always positive.
    fn slack_numerator(&self, m: &[BigInt], norms_m: &(BigInt, BigInt), class: ClassLabel, t: usize) -> BigInt {
        let k = self.k;
        let (m_t, w_t) = match class {
            ClassLabel::A => (&m[t], &self.witness[t]),
            ClassLabel::B => (&m[k - t], &self.witness[k - t]),
        };
        let (norm_g, norm_m) = match class {
            ClassLabel::A => (&self.norm_a, &norms_m.0),
            ClassLabel::B => (&self.norm_b, &norms_m.1),
        };
        let scale = match self.variant {
            ScoreVariant::Standard => BigInt::from(t),
            ScoreVariant::Alternative => BigInt::one(),
        };
        scale * (m_t * norm_g - w_t * norm_m)
    }

    fn chain_holds(&self, m: &[BigInt], class: ClassLabel) -> bool {
        let k = self.k;
        (self.r..=k).all(|t| {
            let (m_t, m_prev, w_t, w_prev) = match class {
                ClassLabel::A => (&m[t], &m[t - 1], &self.witness[t], &self.witness[t - 1]),
                ClassLabel::B => (
                    &m[k - t],
                    &m[k - t + 1],
                    &self.witness[k - t],
                    &self.witness[k - t + 1],
                ),
            };
            m_t * w_prev > m_prev * w_t
        })
    }

    fn mid_dip(&self, m: &[BigInt], class: ClassLabel) -> Option<bool> {
        let k = self.k;
        let mid = k / 2;
        if !k.is_multiple_of(2) || mid < 2 {
            return None;
        }
        let (m_mid, m_prev, w_mid, w_prev) = match class {
            ClassLabel::A => (&m[mid], &m[mid - 1], &self.witness[mid], &self.witness[mid - 1]),
            ClassLabel::B => (
                &m[k - mid],
                &m[k - mid + 1],
                &self.witness[k - mid],
                &self.witness[k - mid + 1],
            ),
        };
        Some(m_mid * w_prev < m_prev * w_mid)
    }

    fn record(&self, m: &[BigInt], mid: Option<ClassLabel>, report: &mut SearchReport) {
        report.trials_evaluated += 1;
        let total: BigInt = m.iter().sum();
        if total.is_zero() {
            return;
        }
        let norms_m = Self::normalizers(m, self.k, self.variant);

        let mut min_slack: Option<Rational> = None;
        let mut majority = true;
        for t in self.r..=self.k {
            for class in ClassLabel::BOTH {
                let num = self.slack_numerator(m, &norms_m, class, t);
                if !num.is_positive() {
                    majority = false;
                }
                let norm_g = match class {
                    ClassLabel::A => &self.norm_a,
                    ClassLabel::B => &self.norm_b,
                };
                let slack = Rational::new(num, &total * norm_g);
                min_slack = Some(match min_slack {
                    Some(cur) => cur.min(slack),
                    None => slack,
                });
            }
        }
        let mid_ok = mid.map(|class| {
            let num = self.slack_numerator(m, &norms_m, class, self.k / 2);
            let norm_g = match class {
                ClassLabel::A => &self.norm_a,
                ClassLabel::B => &self.norm_b,
            };
            let slack = Rational::new(num.clone(), &total * norm_g);
            if let Some(cur) = &min_slack {
                if &slack < cur {
                    min_slack = Some(slack);
                }
            }
            num.is_positive()
        });

        if majority {
            report.both_majority += 1;
            match (mid_ok, &mut report.both_majority_with_mid) {
                (Some(true), Some(count)) => {
                    *count += 1;
                    report.majority_theorem_violations += 1;
                }
                _ => {
                    if !self.k.is_multiple_of(2) {
                        report.majority_theorem_violations += 1;
                    }
                }
            }
        }

        let chain_a = self.chain_holds(m, ClassLabel::A);
        let chain_b = chain_a && self.chain_holds(m, ClassLabel::B);
        if chain_b {
            report.both_monotonic += 1;
            if !self.k.is_multiple_of(2) {
                report.monotonic_theorem_violations += 1;
            } else {
                let dips_ok = self.mid_dip(m, ClassLabel::A).unwrap_or(true)
                    && self.mid_dip(m, ClassLabel::B).unwrap_or(true);
                if !dips_ok {
                    report.monotonic_theorem_violations += 1;
                }
            }
        }

        if let Some(slack) = min_slack {
            report.max_gamma = Some(match report.max_gamma.take() {
                Some(cur) => cur.max(slack),
                None => slack,
            });
        }
    }
}
