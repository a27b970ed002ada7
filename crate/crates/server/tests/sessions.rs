use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Barrier};
use std::thread;

use docmap_server::PresentationService;
use proptest::prelude::*;

mod support;

use support::toy_service;

const QUERIES: [(&str, &str); 5] = [
    ("local", "cat dog"),
    ("local", "pet food"),
    ("local", "training"),
    ("replay", "digital library"),
    ("local", "veterinary care"),
];

/// What a session should look like given only its own operations.
#[derive(Default)]
struct Model {
    ids: Vec<String>,
    pressed: Vec<String>,
    examined: BTreeSet<String>,
}

impl Model {
    fn export(&self) -> Vec<String> {
        let mut out = self.pressed.clone();
        out.extend(self.ids.iter().filter(|d| !self.pressed.contains(d)).cloned());
        out
    }
}

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

fn reference_bundles() -> HashMap<&'static str, String> {
    let service = toy_service(1, &[]);
    let s = service.open_session().unwrap();
    QUERIES
        .iter()
        .map(|(engine, q)| (*q, serde_json::to_string(&service.handle_search(&s, engine, q).unwrap()).unwrap()))
        .collect()
}

/// Runs a seeded random walk of operations on a fresh session, checking
/// every reply against the model.
fn drive(service: &PresentationService, seed: u64, steps: usize, reference: &HashMap<&str, String>) {
    let s = service.open_session().unwrap();
    let mut rng = seed;
    let mut model = Model::default();
    for _ in 0..steps {
        let roll = lcg(&mut rng) % 10;
        if model.ids.is_empty() || roll == 0 {
            let (engine, q) = QUERIES[lcg(&mut rng) as usize % QUERIES.len()];
            let bundle = service.handle_search(&s, engine, q).unwrap();
            assert_eq!(serde_json::to_string(&bundle).unwrap(), reference[q]);
            model = Model {
                ids: bundle.documents.iter().map(|d| d.id.clone()).collect(),
                ..Model::default()
            };
        } else if roll < 6 {
            let d = model.ids[lcg(&mut rng) as usize % model.ids.len()].clone();
            match model.pressed.iter().position(|p| *p == d) {
                Some(i) => {
                    model.pressed.remove(i);
                }
                None => model.pressed.push(d.clone()),
            }
            assert_eq!(service.toggle_press(&s, &d).unwrap(), model.pressed);
        } else if roll < 8 {
            let d = model.ids[lcg(&mut rng) as usize % model.ids.len()].clone();
            assert_eq!(service.get_document(&s, &d).unwrap().id, d);
            model.examined.insert(d);
        } else {
            let export = service.export_session(&s, None).unwrap();
            assert_eq!(export.documents, model.export());
            let mut sorted = export.documents.clone();
            sorted.sort();
            let mut ids = model.ids.clone();
            ids.sort();
            assert_eq!(sorted, ids, "export is not a permutation of the bundle");
        }
        let (pressed, examined) = service.marks(&s).unwrap();
        assert_eq!(pressed, model.pressed);
        assert_eq!(examined, model.examined.iter().cloned().collect::<Vec<_>>());
    }
    service.close_session(&s).unwrap();
}

#[test]
fn ten_concurrent_sessions_stay_isolated() {
    let service = Arc::new(toy_service(16, &[]));
    let reference = Arc::new(reference_bundles());
    let barrier = Arc::new(Barrier::new(10));
    let handles: Vec<_> = (0..10u64)
        .map(|i| {
            let (service, reference, barrier) = (service.clone(), reference.clone(), barrier.clone());
            thread::spawn(move || {
                barrier.wait();
                drive(&service, 0x5eed + i * 7919, 200, &reference);
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    assert_eq!(service.active_sessions(), 0);
}

#[test]
fn concurrent_requests_on_one_session_lose_nothing() {
    let service = Arc::new(toy_service(4, &[]));
    let s = service.open_session().unwrap();
    let ids: Vec<String> = service
        .handle_search(&s, "local", "cat dog")
        .unwrap()
        .documents
        .iter()
        .map(|d| d.id.clone())
        .collect();
    let barrier = Arc::new(Barrier::new(ids.len()));
    let handles: Vec<_> = ids
        .iter()
        .cloned()
        .map(|d| {
            let (service, s, barrier) = (service.clone(), s.clone(), barrier.clone());
            thread::spawn(move || {
                barrier.wait();
                service.toggle_press(&s, &d).unwrap();
                service.get_document(&s, &d).unwrap();
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
    let (pressed, examined) = service.marks(&s).unwrap();
    let mut sorted = pressed.clone();
    sorted.sort();
    let mut all = ids.clone();
    all.sort();
    assert_eq!(sorted, all);
    assert_eq!(examined, all);
    assert_eq!(service.export_session(&s, None).unwrap().documents, pressed);
}

#[test]
fn closing_during_traffic_fails_cleanly() {
    let service = Arc::new(toy_service(4, &[]));
    let s = service.open_session().unwrap();
    let ids: Vec<String> = service
        .handle_search(&s, "local", "pet")
        .unwrap()
        .documents
        .iter()
        .map(|d| d.id.clone())
        .collect();
    let worker = {
        let (service, s) = (service.clone(), s.clone());
        thread::spawn(move || {
            let mut errors = 0;
            for d in ids.iter().cycle().take(500) {
                match service.toggle_press(&s, d) {
                    Ok(_) => {}
                    Err(e) => {
                        assert_eq!(e.code(), "no-such-session");
                        errors += 1;
                    }
                }
            }
            errors
        })
    };
    service.close_session(&s).unwrap();
    worker.join().unwrap();
    assert_eq!(service.active_sessions(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn interleavings_never_leak_state(seeds in prop::collection::vec(any::<u64>(), 2..5)) {
        let service = Arc::new(toy_service(8, &[]));
        let reference = Arc::new(reference_bundles());
        let handles: Vec<_> = seeds
            .into_iter()
            .map(|seed| {
                let (service, reference) = (service.clone(), reference.clone());
                thread::spawn(move || drive(&service, seed, 40, &reference))
            })
            .collect();
        for h in handles {
            prop_assert!(h.join().is_ok());
        }
    }
}
