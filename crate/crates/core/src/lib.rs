//! Group-homophily analytics for two-class, `k`-uniform hypergraphs.
//!
//! The crate measures how strongly each of two node classes prefers group
//! interactions of a given composition. For a hypergraph whose hyperedges all
//! have `k` members, the type-`t` *affinity* of a class is the fraction of the
//! class's typed degree contributed by groups with exactly `t` in-class
//! members; *baseline* scores give the corresponding probability under uniform
//! random group formation, and their quotient is the *ratio* score. All scores
//! are exact rationals.
//!
//! On top of the score machinery the crate provides:
//!
//! * [`nullmodels`]: a seedable cardinality-based random hypergraph sampler
//!   (Bernoulli and Poisson variants) and a ratio-convergence experiment;
//! * [`certificates`]: exact-rational linear-algebra certificates showing
//!   that both classes can never simultaneously exhibit majority or monotonic
//!   homophily, plus constructive witnesses for the tightness of that bound
//!   and a randomized search oracle;
//! * [`ingest`]: edge/label/composition file loaders and a bootstrap
//!   resampling procedure for score robustness.

pub mod certificates;
pub mod hypergraph;
pub mod ingest;
pub mod nullmodels;
pub mod rational;
pub mod scores;

pub use hypergraph::{
    ClassLabel, EdgeTypeCounts, Hyperedge, HypergraphError, NodeId, TwoClassHypergraph,
    TypedDegree,
};
pub use rational::Rational;
pub use scores::{BaselineKind, GeneralizedBaseline, HomophilyVerdict, Profile, ScoreVariant};
