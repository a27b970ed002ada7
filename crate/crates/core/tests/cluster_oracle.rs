use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use docmap_core::cluster::{
    build_base_clusters, cluster_documents, label_cluster, membership_scores, merge_base_clusters,
    score_base_cluster, AnalyzedDoc, BaseCluster, Phrase,
};
use docmap_core::{build_index, load_corpus, AnalysisConfig, ClusterConfig, Document, TermVector};
use proptest::prelude::*;

mod support;

use support::stc::{analyzed, as_set, fixture, oracle_bases, oracle_components};

#[test]
fn base_clusters_equal_exhaustive_enumeration() {
    let docs = analyzed(&fixture());
    for max_len in [1, 2, 3, 6] {
        let got = build_base_clusters(&docs, max_len).unwrap();
        let expected = oracle_bases(&docs, max_len);
        assert!(!expected.is_empty());
        assert_eq!(as_set(&got), expected, "max_len {max_len}");
        assert_eq!(got.len(), expected.len());
    }
}

#[test]
fn fixture_has_expected_phrases() {
    let docs = analyzed(&fixture());
    let bases = build_base_clusters(&docs, 6).unwrap();
    let find = |p: &str| {
        bases
            .iter()
            .find(|b| b.phrase.to_string() == p)
            .map(|b| b.members.iter().cloned().collect::<Vec<_>>())
    };
    assert_eq!(find("digital library search"), Some(vec!["a".into(), "b".into()]));
    assert_eq!(find("search engine"), Some(vec!["a".into(), "c".into(), "e".into()]));
    // Subsumed by "digital library search" with the same members.
    assert_eq!(find("digital library"), None);
}

fn base(phrase: &str, members: &[&str]) -> BaseCluster {
    let phrase = Phrase(phrase.split_whitespace().map(String::from).collect());
    BaseCluster {
        score: score_base_cluster(members.len(), phrase.len()),
        phrase,
        members: members.iter().map(|s| s.to_string()).collect(),
    }
}


#[test]
fn chained_bases_merge_transitively() {
    let bases = vec![
        base("p1", &["a", "b", "c"]),
        base("p2", &["b", "c", "d"]),
        base("p3", &["c", "d", "e"]),
    ];
    let merged = merge_base_clusters(&bases, 30, 0.5).unwrap();
    let got: BTreeSet<BTreeSet<String>> = merged.iter().map(|c| c.members.clone()).collect();
    assert_eq!(got, oracle_components(&bases, 0.5));
    assert_eq!(merged.len(), 1);
    assert_eq!(merged[0].members.len(), 5);
    assert_eq!(merged[0].bases.len(), 3);
}

#[test]
fn fixture_merge_matches_component_oracle() {
    let docs = analyzed(&fixture());
    let bases = build_base_clusters(&docs, 6).unwrap();
    let merged = merge_base_clusters(&bases, 30, 0.5).unwrap();
    let got: BTreeSet<BTreeSet<String>> = merged.iter().map(|c| c.members.clone()).collect();
    assert_eq!(got, oracle_components(&bases, 0.5));
    for c in &merged {
        for m in &c.members {
            assert!(c.bases.iter().any(|b| b.members.contains(m)));
        }
    }
    for w in merged.windows(2) {
        assert!(w[0].score >= w[1].score);
    }
}

fn vectors(entries: &[(&str, &[(&str, f64)])]) -> BTreeMap<String, TermVector> {
    entries
        .iter()
        .map(|(id, ws)| (id.to_string(), ws.iter().copied().collect()))
        .collect()
}

#[test]
fn label_matches_brute_force_argmax() {
    let bases = vec![base("alpha beta", &["a", "b"]), base("beta gamma delta", &["a", "b", "c"])];
    let merged = merge_base_clusters(&bases, 30, 0.5).unwrap();
    assert_eq!(merged.len(), 1);
    let vecs = vectors(&[
        ("a", &[("alpha", 0.5), ("beta", 1.0), ("gamma", 2.0)]),
        ("b", &[("alpha", 1.0), ("delta", 3.0)]),
        ("c", &[("gamma", 1.0), ("beta", 0.5)]),
    ]);
    // Brute force: score every candidate, pick the best two with
    // lexicographic tie-breaking.
    let words = ["alpha", "beta", "delta", "gamma"];
    let score = |w: &str| -> f64 { ["a", "b", "c"].iter().map(|d| vecs[*d].get(w)).sum() };
    let mut best: Option<(&str, &str)> = None;
    for w1 in words {
        for w2 in words {
            if w1 == w2 {
                continue;
            }
            let better = match best {
                None => true,
                Some((b1, b2)) => {
                    let key = |x: &str, y: &str| (score(x), std::cmp::Reverse(x.to_string()), score(y), std::cmp::Reverse(y.to_string()));
                    key(w1, w2).partial_cmp(&key(b1, b2)) == Some(std::cmp::Ordering::Greater)
                }
            };
            if better {
                best = Some((w1, w2));
            }
        }
    }
    let label = label_cluster(&merged[0], &vecs).unwrap();
    let (w1, w2) = best.unwrap();
    assert_eq!(label.first, w1);
    assert_eq!(label.second.as_deref(), Some(w2));
    assert_eq!((w1, w2), ("delta", "gamma"));
}

#[test]
fn membership_matches_hand_centroid_cosines() {
    let merged = merge_base_clusters(&[base("x", &["a", "b"])], 30, 0.5).unwrap();
    let vecs = vectors(&[
        ("a", &[("x", 1.0), ("y", 1.0)]),
        ("b", &[("x", 1.0)]),
        ("c", &[("y", 2.0)]),
        ("d", &[("z", 1.0)]),
    ]);
    let retrieved: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let scores = membership_scores(&merged[0], &retrieved, &vecs).unwrap();
    // Centroid {x: 1, y: 0.5}, norm sqrt(1.25).
    let expected = [
        ("a", 1.5 / (2f64.sqrt() * 1.25f64.sqrt())),
        ("b", 1.0 / 1.25f64.sqrt()),
        ("c", 1.0 / (2.0 * 1.25f64.sqrt())),
        ("d", 0.0),
    ];
    let frozen = [0.948_683_3, 0.894_427_2, 0.447_213_6, 0.0];
    for ((id, value), frozen) in expected.iter().zip(frozen) {
        assert!((scores.raw[*id] - value).abs() < 1e-12);
        assert!((scores.raw[*id] - frozen).abs() < 1e-6);
    }
    assert_eq!(scores.brightness["a"], 1.0);
    assert_eq!(scores.brightness["d"], 0.0);
}

fn toy_corpus() -> Vec<Document> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/toy_corpus.jsonl");
    load_corpus(&path).unwrap()
}

#[test]
fn members_outshine_non_members_on_toy_corpus() {
    let docs = toy_corpus();
    let cfg = AnalysisConfig::default();
    let index = build_index(&docs, &cfg).unwrap();
    let views = cluster_documents(&docs, index.doc_vectors(), &cfg, &ClusterConfig::default()).unwrap();
    assert!(!views.is_empty());
    assert!(views.len() <= 5);
    for v in &views {
        let members: Vec<f64> = v.cluster.members.iter().map(|m| v.scores.raw[m]).collect();
        let others: Vec<f64> = v
            .scores
            .raw
            .iter()
            .filter(|(d, _)| !v.cluster.members.contains(*d))
            .map(|(_, r)| *r)
            .collect();
        let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len().max(1) as f64;
        assert!(members.iter().all(|r| *r >= 0.0));
        assert!(mean(&members) >= mean(&others), "cluster {}", v.label);
    }
}

fn arb_bases() -> impl Strategy<Value = Vec<BaseCluster>> {
    let phrase = prop::collection::vec(prop::sample::select(vec!["w1", "w2", "w3", "w4", "w5"]), 1..4);
    let members = prop::collection::btree_set(prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g"]), 2..6);
    prop::collection::btree_map(phrase, members, 0..14).prop_map(|m| {
        m.into_iter()
            .map(|(p, mem)| base(&p.join(" "), &mem.into_iter().collect::<Vec<_>>()))
            .collect()
    })
}

fn arb_docs() -> impl Strategy<Value = Vec<AnalyzedDoc>> {
    let word = prop::sample::select(vec!["x", "y", "z", "u", "v"]);
    prop::collection::vec(prop::collection::vec(word, 1..8), 2..6).prop_map(|docs| {
        docs.into_iter()
            .enumerate()
            .map(|(i, seg)| AnalyzedDoc {
                id: format!("d{i}"),
                segments: vec![seg.into_iter().map(String::from).collect()],
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn merge_is_permutation_invariant(bases in arb_bases(), seed in any::<u64>(), top in 1usize..20) {
        let mut shuffled = bases.clone();
        // Deterministic Fisher-Yates from the seed.
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = merge_base_clusters(&bases, top, 0.5).unwrap();
        let b = merge_base_clusters(&shuffled, top, 0.5).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn merge_matches_component_oracle(bases in arb_bases()) {
        let merged = merge_base_clusters(&bases, 30, 0.5).unwrap();
        let got: BTreeSet<BTreeSet<String>> = merged.iter().map(|c| c.members.clone()).collect();
        prop_assert_eq!(got, oracle_components(&bases, 0.5));
    }

    #[test]
    fn random_docs_match_enumeration(docs in arb_docs(), max_len in 1usize..5) {
        let got = build_base_clusters(&docs, max_len).unwrap();
        prop_assert_eq!(as_set(&got), oracle_bases(&docs, max_len));
    }

    #[test]
    fn identical_texts_share_base_clusters(mut docs in arb_docs(), pick in any::<prop::sample::Index>()) {
        let twin = AnalyzedDoc { id: "twin".into(), segments: docs[pick.index(docs.len())].segments.clone() };
        let original = docs[pick.index(docs.len())].id.clone();
        docs.push(twin);
        for b in build_base_clusters(&docs, 6).unwrap() {
            prop_assert_eq!(b.members.contains("twin"), b.members.contains(&original));
        }
    }
}
