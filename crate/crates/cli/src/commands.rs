//! Subcommand implementations: load inputs, compute, emit CSV.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use hyperhom_core::certificates::{
    brute_force_impossibility_search, build_majority_lp, constraint_removal_witness,
    dual_certificate_majority, verify_certificate, SearchConfig,
};
use hyperhom_core::hypergraph::{ClassLabel, EdgeTypeCounts, TwoClassHypergraph};
use hyperhom_core::ingest::{
    bootstrap, build_labeled_hypergraph, parse_compositions, parse_edges, parse_labels,
    compositions_to_counts, CompositionRecord, LoadOptions, UnlabeledPolicy,
};
use hyperhom_core::nullmodels::{
    convergence_experiment, sample_hsbm, sample_hsbm_poisson, seed_schedule, HsbmParams,
};
use hyperhom_core::rational::{render, Rational};
use hyperhom_core::scores::{
    affinity_profile, asymptotic_baseline_profile, baseline_profile, group_homophily_index,
    homophily_verdict, mid_comparison, ratio_entries, BaselineKind, GeneralizedBaseline,
    Profile, ScoreError, ScoreVariant,
};

use crate::{
    BaselineArgs, BaselineChoice, BootstrapArgs, ConvergeArgs, HsbmArgs, InputArgs,
    OnUnlabeled, OutputArgs, ScoreCommandArgs, SearchArgs, UsageError, VariantChoice,
    VerdictArgs, VerifyArgs, WitnessArgs,
};

pub type CommandResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn usage(message: impl Into<String>) -> Box<dyn std::error::Error> {
    Box::new(UsageError(message.into()))
}

/// CSV destination plus the value-rendering policy.
struct Sink {
    writer: BufWriter<Box<dyn Write>>,
    exact: bool,
    precision: usize,
}

impl Sink {
    fn new(args: &OutputArgs) -> io::Result<Self> {
        let raw: Box<dyn Write> = match &args.out {
            Some(path) => Box::new(fs::File::create(path)?),
            None => Box::new(io::stdout()),
        };
        Ok(Sink {
            writer: BufWriter::new(raw),
            exact: args.exact,
            precision: args.precision.max(1),
        })
    }

    fn rational(&self, value: &Rational) -> String {
        render(value, self.exact, self.precision)
    }

    fn optional(&self, value: &Option<Rational>) -> String {
        match value {
            Some(v) => self.rational(v),
            None => "undefined".to_string(),
        }
    }

    fn row(&mut self, fields: &[String]) -> io::Result<()> {
        writeln!(self.writer, "{}", fields.join(","))
    }

    fn finish(mut self) -> io::Result<()> {
        self.writer.flush()
    }
}

/// Parsed input data, sliced per group size on demand.
enum Input {
    Edges {
        edges: Vec<Vec<hyperhom_core::NodeId>>,
        labels: Vec<(hyperhom_core::NodeId, String)>,
        focal: String,
        dedup: bool,
        on_unlabeled: UnlabeledPolicy,
    },
    Compositions(Vec<CompositionRecord>),
}

/// One group size ready for scoring.
struct Slice {
    k: usize,
    counts: EdgeTypeCounts,
    /// Exact class sizes, known only for node-level data.
    sizes: Option<(u64, u64)>,
    /// Class-A share of the loaded node set, when known.
    data_alpha: Option<Rational>,
    /// Hypergraph retained for resampling commands.
    hypergraph: Option<TwoClassHypergraph>,
}

fn load_input(args: &InputArgs) -> Result<Input, Box<dyn std::error::Error>> {
    if let Some(compositions) = &args.compositions {
        let text = fs::read_to_string(compositions).map_err(|e| {
            format!("IoError: {}: {e}", compositions.display())
        })?;
        let records = parse_compositions(&text, &compositions.display().to_string())?;
        return Ok(Input::Compositions(records));
    }
    match (&args.edges, &args.labels, &args.focal) {
        (Some(edges_path), Some(labels_path), Some(focal)) => {
            let edges_text = fs::read_to_string(edges_path)
                .map_err(|e| format!("IoError: {}: {e}", edges_path.display()))?;
            let labels_text = fs::read_to_string(labels_path)
                .map_err(|e| format!("IoError: {}: {e}", labels_path.display()))?;
            Ok(Input::Edges {
                edges: parse_edges(&edges_text, &edges_path.display().to_string())?,
                labels: parse_labels(&labels_text, &labels_path.display().to_string())?,
                focal: focal.clone(),
                dedup: args.dedup,
                on_unlabeled: match args.on_unlabeled {
                    OnUnlabeled::Error => UnlabeledPolicy::Error,
                    OnUnlabeled::Drop => UnlabeledPolicy::Drop,
                },
            })
        }
        _ => Err(usage(
            "provide --edges/--labels/--focal or --compositions",
        )),
    }
}

/// Group sizes to analyze: the explicit `--k` or range, otherwise every size
/// present in the data.
fn size_list(args: &InputArgs, input: &Input) -> Result<Vec<usize>, Box<dyn std::error::Error>> {
    if let Some(k) = args.k {
        return Ok(vec![k]);
    }
    if let (Some(lo), Some(hi)) = (args.k_min, args.k_max) {
        if lo == 0 || lo > hi {
            return Err(usage(format!("bad size range {lo}..{hi}")));
        }
        return Ok((lo..=hi).collect());
    }
    let mut sizes: Vec<usize> = match input {
        Input::Edges { edges, .. } => edges.iter().map(|e| e.len()).collect(),
        Input::Compositions(records) => records.iter().map(|r| r.k).collect(),
    };
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(usage("input contains no groups; pass --k to force a size"));
    }
    Ok(sizes)
}

fn slice_for(input: &Input, k: usize, keep_hypergraph: bool) -> Result<Option<Slice>, Box<dyn std::error::Error>> {
    match input {
        Input::Edges {
            edges,
            labels,
            focal,
            dedup,
            on_unlabeled,
        } => {
            let options = LoadOptions {
                k_filter: Some(k),
                dedup: *dedup,
                on_unlabeled: *on_unlabeled,
            };
            let h = build_labeled_hypergraph(edges.clone(), labels, focal, &options)?;
            if h.edge_count() == 0 {
                return Ok(None);
            }
            let sizes = (
                h.class_size(ClassLabel::A) as u64,
                h.class_size(ClassLabel::B) as u64,
            );
            Ok(Some(Slice {
                k,
                counts: h.edge_type_counts(),
                sizes: Some(sizes),
                data_alpha: Some(h.alpha()),
                hypergraph: keep_hypergraph.then_some(h),
            }))
        }
        Input::Compositions(records) => {
            let counts = compositions_to_counts(records, k)?;
            if counts.is_empty() {
                return Ok(None);
            }
            Ok(Some(Slice {
                k,
                counts,
                sizes: None,
                data_alpha: None,
                hypergraph: None,
            }))
        }
    }
}

/// Baseline profile for one slice under the requested family.
fn baseline_for(
    slice: &Slice,
    args: &BaselineArgs,
    class: ClassLabel,
) -> Result<Profile, Box<dyn std::error::Error>> {
    match args.baseline {
        BaselineChoice::Exact => match slice.sizes {
            Some((n_a, n_b)) => Ok(baseline_profile(n_a, n_b, slice.k, class)?),
            None => Err(usage(
                "exact baselines need node-level data; use --baseline asymptotic with --alpha",
            )),
        },
        BaselineChoice::Asymptotic => {
            let alpha = args
                .alpha
                .clone()
                .or_else(|| slice.data_alpha.clone())
                .ok_or_else(|| usage("asymptotic baselines on compositions need --alpha"))?;
            Ok(asymptotic_baseline_profile(&alpha, slice.k, class)?)
        }
    }
}

/// Affinity for one class, `None` when the class touches no edge (reported
/// on stderr once).
fn affinity_or_warn(slice: &Slice, class: ClassLabel) -> Option<Profile> {
    match affinity_profile(&slice.counts, class) {
        Ok(profile) => Some(profile),
        Err(ScoreError::EmptyClassDegree(_)) => {
            eprintln!(
                "note: class {class} participates in no size-{} group; skipped",
                slice.k
            );
            None
        }
        Err(_) => None,
    }
}

pub fn run_scores(args: ScoreCommandArgs) -> CommandResult {
    let input = load_input(&args.input)?;
    let sizes = size_list(&args.input, &input)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&["k,t,class,affinity,baseline,ratio".to_string()])?;
    for k in sizes {
        let Some(slice) = slice_for(&input, k, false)? else {
            eprintln!("note: no size-{k} groups in the input; skipped");
            continue;
        };
        let mut per_class: Vec<(ClassLabel, Profile, Profile, Vec<Option<Rational>>)> = Vec::new();
        for class in ClassLabel::BOTH {
            let Some(affinity) = affinity_or_warn(&slice, class) else {
                continue;
            };
            let baseline = baseline_for(&slice, &args.baseline, class)?;
            let ratios = ratio_entries(&affinity, &baseline)?;
            per_class.push((class, affinity, baseline, ratios));
        }
        for t in 1..=k {
            for (class, affinity, baseline, ratios) in &per_class {
                sink.row(&[
                    k.to_string(),
                    t.to_string(),
                    class.to_string(),
                    sink.rational(affinity.value(t)),
                    sink.rational(baseline.value(t)),
                    sink.optional(&ratios[t - 1]),
                ])?;
            }
        }
    }
    sink.finish()?;
    Ok(ExitCode::SUCCESS)
}

pub fn run_ghi(args: ScoreCommandArgs) -> CommandResult {
    let input = load_input(&args.input)?;
    let sizes = size_list(&args.input, &input)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&["k,class,ghi".to_string()])?;
    for k in sizes {
        let Some(slice) = slice_for(&input, k, false)? else {
            eprintln!("note: no size-{k} groups in the input; skipped");
            continue;
        };
        for class in ClassLabel::BOTH {
            let Some(affinity) = affinity_or_warn(&slice, class) else {
                continue;
            };
            let baseline = baseline_for(&slice, &args.baseline, class)?;
            let ghi = group_homophily_index(&affinity, &baseline)?;
            sink.row(&[k.to_string(), class.to_string(), ghi.to_string()])?;
        }
    }
    sink.finish()?;
    Ok(ExitCode::SUCCESS)
}

pub fn run_verdict(args: VerdictArgs) -> CommandResult {
    let input = load_input(&args.input)?;
    let sizes = size_list(&args.input, &input)?;
    let mut sink = Sink::new(&args.output)?;
    let mut header = "k,class,simple,majority,monotonic,ghi".to_string();
    if args.mid_check {
        header.push_str(",mid_affinity_above,mid_ratio_increase");
    }
    sink.row(&[header])?;
    for k in sizes {
        let Some(slice) = slice_for(&input, k, false)? else {
            eprintln!("note: no size-{k} groups in the input; skipped");
            continue;
        };
        for class in ClassLabel::BOTH {
            let Some(affinity) = affinity_or_warn(&slice, class) else {
                continue;
            };
            let baseline = baseline_for(&slice, &args.baseline, class)?;
            let mut fields = vec![k.to_string(), class.to_string()];
            match homophily_verdict(&affinity, &baseline) {
                Ok(v) => {
                    fields.push(v.simple.to_string());
                    fields.push(v.majority.to_string());
                    fields.push(v.monotonic.to_string());
                    fields.push(v.ghi.to_string());
                }
                Err(ScoreError::ZeroBaseline { .. }) => {
                    fields.extend(std::iter::repeat_n("undefined".to_string(), 4));
                }
                Err(e) => return Err(e.into()),
            }
            if args.mid_check {
                match mid_comparison(&affinity, &baseline) {
                    Ok(Some(mid)) => {
                        fields.push(mid.affinity_above.to_string());
                        fields.push(match mid.ratio_increase {
                            Some(v) => v.to_string(),
                            None => "undefined".to_string(),
                        });
                    }
                    Ok(None) => {
                        fields.push("undefined".to_string());
                        fields.push("undefined".to_string());
                    }
                    Err(ScoreError::ZeroBaseline { .. }) => {
                        fields.push("undefined".to_string());
                        fields.push("undefined".to_string());
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            sink.row(&fields)?;
        }
    }
    sink.finish()?;
    Ok(ExitCode::SUCCESS)
}

pub fn run_bootstrap(args: BootstrapArgs) -> CommandResult {
    if args.input.compositions.is_some() {
        return Err(usage("bootstrap needs the edge multiset; compositions cannot be resampled"));
    }
    let input = load_input(&args.input)?;
    let sizes = size_list(&args.input, &input)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&["k,t,class,affinity,baseline,ratio,boot_mean,boot_stderr".to_string()])?;
    for k in sizes {
        let Some(slice) = slice_for(&input, k, true)? else {
            eprintln!("note: no size-{k} groups in the input; skipped");
            continue;
        };
        let h = slice.hypergraph.as_ref().expect("kept for bootstrap");
        let reports = bootstrap(h, k, args.reps, args.seed)?;
        let mut per_class = Vec::new();
        for report in &reports {
            let baseline = baseline_for(&slice, &args.baseline, report.class)?;
            per_class.push((report, baseline));
        }
        for t in 1..=k {
            for (report, baseline) in &per_class {
                let stat = report.stat(t);
                let ratio = if hyperhom_core::rational::is_zero(baseline.value(t)) {
                    None
                } else {
                    Some(&stat.point / baseline.value(t))
                };
                sink.row(&[
                    k.to_string(),
                    t.to_string(),
                    report.class.to_string(),
                    sink.rational(&stat.point),
                    sink.rational(baseline.value(t)),
                    sink.optional(&ratio),
                    sink.rational(&stat.mean),
                    stat.stderr.to_string(),
                ])?;
            }
        }
    }
    sink.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn parse_probabilities(text: &str, k: usize) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let values: Vec<f64> = parts
        .iter()
        .map(|s| s.parse::<f64>().map_err(|_| usage(format!("bad probability '{s}'"))))
        .collect::<Result<_, _>>()?;
    match values.len() {
        1 => Ok(vec![values[0]; k + 1]),
        n if n == k + 1 => Ok(values),
        n => Err(usage(format!(
            "--p needs 1 or k+1 = {} values, got {n}",
            k + 1
        ))),
    }
}

pub fn run_hsbm(args: HsbmArgs) -> CommandResult {
    let p = parse_probabilities(&args.p, args.k)?;
    let params = HsbmParams {
        n: args.n,
        k: args.k,
        n_a: args.n_a,
        p,
        seed: args.seed,
    };
    let h = if args.poisson {
        sample_hsbm_poisson(&params)?
    } else {
        sample_hsbm(&params)?
    };
    write_hypergraph(&h, &args.out_edges, &args.out_labels)?;
    eprintln!(
        "wrote {} edges over {} nodes to {} / {}",
        h.edge_count(),
        h.node_count(),
        args.out_edges.display(),
        args.out_labels.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn write_hypergraph(
    h: &TwoClassHypergraph,
    edges_path: &Path,
    labels_path: &Path,
) -> io::Result<()> {
    let mut edges = BufWriter::new(fs::File::create(edges_path)?);
    for e in 0..h.edge_count() {
        let members: Vec<&str> = h.edge_member_ids(e).map(|m| m.as_str()).collect();
        writeln!(edges, "{}", members.join(" "))?;
    }
    edges.flush()?;
    let mut labels = BufWriter::new(fs::File::create(labels_path)?);
    for (id, class) in h.nodes() {
        writeln!(labels, "{},{}", id.as_str(), class)?;
    }
    labels.flush()
}

pub fn run_converge(args: ConvergeArgs) -> CommandResult {
    let n_values: Vec<usize> = args
        .n_list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| usage(format!("bad n '{s}'"))))
        .collect::<Result<_, _>>()?;
    if n_values.is_empty() {
        return Err(usage("--n-list is empty"));
    }
    let seeds = seed_schedule(args.seed, args.num_seeds);
    let reports = convergence_experiment(&n_values, args.k, &args.alpha, args.p, &seeds)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&["n,seed,edges,max_deviation".to_string()])?;
    for r in reports {
        sink.row(&[
            r.n.to_string(),
            r.seed.to_string(),
            r.edge_count.to_string(),
            r.max_abs_ratio_deviation.to_string(),
        ])?;
    }
    sink.finish()?;
    Ok(ExitCode::SUCCESS)
}

fn parse_witness(
    spec: &str,
    k: usize,
    variant: VariantChoice,
) -> Result<GeneralizedBaseline, Box<dyn std::error::Error>> {
    let spec = spec.trim();
    let with_kind = |counts: EdgeTypeCounts, kind| {
        GeneralizedBaseline::from_witness(counts, kind).map_err(Into::into)
    };
    if spec == "binomial" {
        return Ok(GeneralizedBaseline::symmetric_binomial(k)?);
    }
    if let Some(rest) = spec.strip_prefix("complete:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(usage("complete witness needs NA,NB"));
        }
        let n_a: u64 = parts[0].trim().parse().map_err(|_| usage("bad NA"))?;
        let n_b: u64 = parts[1].trim().parse().map_err(|_| usage("bad NB"))?;
        return Ok(GeneralizedBaseline::complete(n_a, n_b, k)?);
    }
    if let Some(rest) = spec.strip_prefix("alpha:") {
        let alpha = hyperhom_core::rational::parse_rational(rest)
            .ok_or_else(|| usage(format!("bad alpha '{rest}'")))?;
        return Ok(GeneralizedBaseline::asymptotic(&alpha, k)?);
    }
    if let Some(rest) = spec.strip_prefix("counts:") {
        let counts: Vec<u64> = rest
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| usage(format!("bad count '{s}'"))))
            .collect::<Result<_, _>>()?;
        if counts.len() != k + 1 {
            return Err(usage(format!(
                "counts witness needs k+1 = {} values, got {}",
                k + 1,
                counts.len()
            )));
        }
        let kind = match variant {
            VariantChoice::Alternative => BaselineKind::Alternative,
            VariantChoice::Standard => BaselineKind::CustomWitness,
        };
        return with_kind(EdgeTypeCounts::from_u64(counts)?, kind);
    }
    Err(usage(format!(
        "unknown witness spec '{spec}' (binomial | complete:NA,NB | alpha:P/Q | counts:...)"
    )))
}

fn to_variant(choice: VariantChoice) -> ScoreVariant {
    match choice {
        VariantChoice::Standard => ScoreVariant::Standard,
        VariantChoice::Alternative => ScoreVariant::Alternative,
    }
}

pub fn run_verify(args: VerifyArgs) -> CommandResult {
    let g = parse_witness(&args.witness, args.k, args.variant)?;
    let mid = match args.mid {
        Some(choice) => choice.to_class(),
        None if args.k.is_multiple_of(2) => Some(ClassLabel::A),
        None => None,
    };
    let lp = build_majority_lp(args.k, g, to_variant(args.variant), mid)?;
    let certificate = dual_certificate_majority(&lp)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&[format!("delta,{}", sink.rational(certificate.delta()))])?;
    for ((class, t), value) in lp.rows().iter().zip(certificate.entries()) {
        sink.row(&[format!("y[{class},{t}],{}", sink.rational(value))])?;
    }
    let report = verify_certificate(&lp, &certificate);
    for check in &report.checks {
        sink.row(&[format!(
            "check {},{},{}",
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            check.detail
        )])?;
    }
    sink.finish()?;
    if report.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("certificate verification failed");
        Ok(ExitCode::from(1))
    }
}

fn parse_constraint(text: &str) -> Result<(ClassLabel, usize), Box<dyn std::error::Error>> {
    let parts: Vec<&str> = text
        .split([',', ':'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() != 2 {
        return Err(usage("constraint must be CLASS,T (e.g. A,2)"));
    }
    let class = match parts[0].to_ascii_uppercase().as_str() {
        "A" => ClassLabel::A,
        "B" => ClassLabel::B,
        other => return Err(usage(format!("unknown class '{other}'"))),
    };
    let t: usize = parts[1].parse().map_err(|_| usage("bad constraint type"))?;
    Ok((class, t))
}

pub fn run_witness(args: WitnessArgs) -> CommandResult {
    let g = parse_witness(&args.witness, args.k, VariantChoice::Standard)?;
    let removed = parse_constraint(&args.remove)?;
    let lp = build_majority_lp(args.k, g, ScoreVariant::Standard, None)?;
    let witness = constraint_removal_witness(&lp, removed)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&[format!(
        "removed,{},{}",
        witness.removed_constraint().0,
        witness.removed_constraint().1
    )])?;
    for (j, value) in witness.x().iter().enumerate() {
        sink.row(&[format!("x[{j}],{}", sink.rational(value))])?;
    }
    sink.row(&[format!("gamma,{}", sink.rational(witness.gamma()))])?;
    sink.finish()?;
    Ok(ExitCode::SUCCESS)
}

pub fn run_search(args: SearchArgs) -> CommandResult {
    let g = parse_witness(&args.witness, args.k, args.variant)?;
    let mut config = SearchConfig::new(
        to_variant(args.variant),
        args.mid.to_class(),
        args.trials,
        args.seed,
    );
    config.max_coordinate = args.max_coordinate;
    let report = brute_force_impossibility_search(&g, &config)?;
    let mut sink = Sink::new(&args.output)?;
    sink.row(&["metric,value".to_string()])?;
    sink.row(&[format!("trials_evaluated,{}", report.trials_evaluated)])?;
    sink.row(&[format!("both_majority,{}", report.both_majority)])?;
    if let Some(with_mid) = report.both_majority_with_mid {
        sink.row(&[format!("both_majority_with_mid,{with_mid}")])?;
    }
    sink.row(&[format!("both_monotonic,{}", report.both_monotonic)])?;
    sink.row(&[format!(
        "majority_theorem_violations,{}",
        report.majority_theorem_violations
    )])?;
    sink.row(&[format!(
        "monotonic_theorem_violations,{}",
        report.monotonic_theorem_violations
    )])?;
    if let Some(gamma) = &report.max_gamma {
        sink.row(&[format!("max_gamma,{}", sink.rational(gamma))])?;
    }
    if let Some(planted) = report.planted_control_majority {
        sink.row(&[format!("planted_control_majority,{planted}")])?;
    }
    sink.finish()?;
    let violations = report.majority_theorem_violations + report.monotonic_theorem_violations;
    if violations > 0 {
        eprintln!("TheoremViolation: search found {violations} violating count vectors");
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
