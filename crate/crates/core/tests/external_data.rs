//! Optional dataset checks, active only when real data files are supplied:
//!
//! ```text
//! HYPERHOM_DATA_EDGES=.../edges.txt \
//! HYPERHOM_DATA_LABELS=.../labels.txt \
//! HYPERHOM_DATA_FOCAL=F \
//! cargo test -p hyperhom-core --test external_data -- --nocapture
//! ```
//!
//! The test collapses groups of size 2..=4 to pairwise co-appearances and
//! reports the graph-style homophily index (`h_2`) per class, alongside
//! per-size affinity profiles. Set `HYPERHOM_EXPECT_GHI_A` /
//! `HYPERHOM_EXPECT_GHI_B` (decimals, checked to within 0.01) to assert
//! published values for a known dataset.

use std::env;
use std::path::PathBuf;

use num_traits::ToPrimitive;

use hyperhom_core::hypergraph::{ClassLabel, TwoClassHypergraph};
use hyperhom_core::ingest::{
    build_labeled_hypergraph, load_labeled_hypergraph, pairwise_projection, parse_edges,
    parse_labels, LoadOptions, UnlabeledPolicy,
};
use hyperhom_core::scores::affinity_profile;

#[test]
fn dataset_homophily_indices() {
    let (Ok(edges_path), Ok(labels_path), Ok(focal)) = (
        env::var("HYPERHOM_DATA_EDGES"),
        env::var("HYPERHOM_DATA_LABELS"),
        env::var("HYPERHOM_DATA_FOCAL"),
    ) else {
        println!("[SKIP] dataset check: set HYPERHOM_DATA_EDGES/LABELS/FOCAL to enable");
        return;
    };

    let edges_text = std::fs::read_to_string(PathBuf::from(&edges_path)).expect("edges readable");
    let labels_text =
        std::fs::read_to_string(PathBuf::from(&labels_path)).expect("labels readable");
    let edges = parse_edges(&edges_text, &edges_path).expect("edges parse");
    let labels = parse_labels(&labels_text, &labels_path).expect("labels parse");

    // Graph-style homophily indices from the pairwise collapse of 2..=4
    // member groups.
    let pairs = pairwise_projection(&edges, 2, 4);
    let options = LoadOptions {
        k_filter: Some(2),
        dedup: false,
        on_unlabeled: UnlabeledPolicy::Drop,
    };
    let graph: TwoClassHypergraph =
        build_labeled_hypergraph(pairs, &labels, &focal, &options).expect("pair graph builds");
    let counts = graph.edge_type_counts();
    let mut indices = [0.0f64; 2];
    for (i, class) in ClassLabel::BOTH.into_iter().enumerate() {
        let profile = affinity_profile(&counts, class).expect("non-empty class");
        indices[i] = profile.value(2).to_f64().unwrap();
        println!(
            "graph homophily index, class {class} (focal '{}'): {:.4}",
            focal, indices[i]
        );
    }
    for (var, value) in [
        ("HYPERHOM_EXPECT_GHI_A", indices[0]),
        ("HYPERHOM_EXPECT_GHI_B", indices[1]),
    ] {
        if let Ok(expect) = env::var(var) {
            let expect: f64 = expect.parse().expect("expected value parses");
            assert!(
                (value - expect).abs() <= 0.01,
                "{var}: got {value:.4}, expected {expect:.4}"
            );
        }
    }

    // Per-size affinity profiles for the sizes the data actually contains.
    for k in 2..=4usize {
        let options = LoadOptions {
            k_filter: Some(k),
            dedup: false,
            on_unlabeled: UnlabeledPolicy::Drop,
        };
        let h = load_labeled_hypergraph(
            PathBuf::from(&edges_path).as_path(),
            PathBuf::from(&labels_path).as_path(),
            &focal,
            &options,
        )
        .expect("slice loads");
        if h.edge_count() == 0 {
            continue;
        }
        let counts = h.edge_type_counts();
        for class in ClassLabel::BOTH {
            if let Ok(profile) = affinity_profile(&counts, class) {
                let rendered: Vec<String> = profile
                    .values()
                    .iter()
                    .map(|v| format!("{:.4}", v.to_f64().unwrap()))
                    .collect();
                println!("k={k} class {class}: affinity = [{}]", rendered.join(", "));
            }
        }
    }
}
