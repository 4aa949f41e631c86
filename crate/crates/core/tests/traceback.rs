mod common;

use qchar::engine::{run_fm_seeded, RunOptions};
use qchar::traceback::{ancestor_candidates, find_ancestors, run_fm_modified_with};
use qchar::{run_fm, run_fm_modified, AlgebraSpec, FmOutcome, Limits, TracebackError};

use common::{weyl_invariant, y};

fn alg(name: &str) -> AlgebraSpec {
    name.parse().unwrap()
}

#[test]
fn seeded_rerun_reproduces_modified_result() {
    for (name, m) in [
        ("C3", "Y[1,4] Y[2,1] Y[3,-2]"),
        ("D4", "Y[1,2] Y[3,-2] Y[4,-2]"),
    ] {
        let spec = alg(name);
        let m_plus = y(m);
        let run = run_fm_modified(&spec, &m_plus, Limits::default()).unwrap();
        assert!(!run.injections.is_empty());
        let injected: Vec<_> = run.injections.iter().map(|r| r.injected.clone()).collect();
        let seeded = run_fm_seeded(&spec, &m_plus, &injected, &RunOptions::default()).unwrap();
        assert_eq!(seeded.character(), Some(&run.character), "{name}");
        let dominant: Vec<_> = run
            .character
            .dominant_monomials()
            .into_iter()
            .map(|(m, _)| m)
            .collect();
        for r in &run.injections {
            assert!(r.injected.is_dominant());
            assert!(dominant.contains(&r.injected));
            assert!(r.candidates_considered.contains(&r.injected));
            assert_eq!(r.ancestor_weight, r.injected.weight(spec.rank()));
        }
    }
}

#[test]
fn d4_ancestor_completes_to_a_weyl_invariant_character() {
    let spec = alg("D4");
    let offender = y("Y[1,0] Y[2,1]^-1 Y[3,0] Y[4,0]");
    let found = find_ancestors(&spec, &offender, 2, 4).unwrap();
    assert!(!found.is_empty());
    let run = run_fm_modified(&spec, &y("Y[1,2] Y[3,-2] Y[4,-2]"), Limits::default()).unwrap();
    assert_eq!(run.injections[0].injected, found[0]);
    let weights = run.character.specialize_classical();
    assert!(weights.values().all(|&c| c > 0));
    assert!(weyl_invariant(&spec, &weights));
}

#[test]
fn candidates_are_ordered_by_degree() {
    let spec = alg("C3");
    let m4 = y("Y[1,2] Y[2,-1] Y[2,3]^-1 Y[3,2]");
    let cands = ancestor_candidates(&spec, &m4, 2, 3).unwrap();
    assert!(cands.windows(2).all(|w| w[0].0 <= w[1].0));
    // two positions {2, 4}: 2 + 3 + 4 multisets
    assert_eq!(cands.len(), 9);
}

#[test]
fn zero_injections_equal_plain_run() {
    for (name, m) in [
        ("A2", "Y[1,2] Y[2,-1]"),
        ("C2", "Y[2,-1] Y[2,1]"),
        ("B2", "Y[1,0] Y[2,3]"),
    ] {
        let spec = alg(name);
        let plain = run_fm(&spec, &y(m), Limits::default()).unwrap();
        let FmOutcome::Completed {
            character, trace, ..
        } = plain
        else {
            panic!("{name} {m} should complete");
        };
        let modified = run_fm_modified(&spec, &y(m), Limits::default()).unwrap();
        assert!(modified.injections.is_empty());
        assert_eq!(modified.character, character);
        assert_eq!(modified.trace, trace);
    }
}

#[test]
fn shallow_search_finds_nothing() {
    // With no room for any A-factor, the C3 failure is reported as is.
    let spec = alg("C3");
    let err = run_fm_modified_with(
        &spec,
        &y("Y[1,4] Y[2,1] Y[3,-2]"),
        &RunOptions::default(),
        0,
    )
    .unwrap_err();
    match err {
        TracebackError::NoAncestor(report) => {
            assert!(report
                .offender(&y("Y[1,2] Y[2,-1] Y[2,3]^-1 Y[3,2]"))
                .is_some());
        }
        other => panic!("unexpected {other}"),
    }
}
