//! The Alexander polynomial cannot see mirror images, so the pipeline is
//! also checked against the normalized Kauffman bracket.

mod common;

use braidhom::diagram::closed_braid_diagram;
use braidhom::pipeline::homogenize;
use braidhom::word::BklWord;
use common::bracket::bracket_invariant;
use common::gen::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn braid_side(w: &BklWord) -> braidhom::Laurent {
    bracket_invariant(&closed_braid_diagram(&w.to_artin()).unwrap())
}

#[test]
fn bracket_values() {
    assert_eq!(bracket_invariant(&braidhom::diagram::Diagram::new(vec![[1, 2, 2, 1]], 0)).to_string(), "1");
    assert_eq!(bracket_invariant(&trefoil()).to_string(), "t^-4 + t^-12 - t^-16");
    assert_ne!(bracket_invariant(&trefoil()), bracket_invariant(&trefoil().mirror()));
}

#[test]
fn corpus_keeps_chirality() {
    for d in corpus_bases() {
        let h = homogenize(&d).unwrap();
        assert_eq!(braid_side(&h.word), bracket_invariant(&d), "{}", h.word);
    }
}

#[test]
fn random_diagrams_keep_chirality() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..80 {
        let d = random_homogeneous_diagram(&mut rng);
        let h = homogenize(&d).unwrap();
        assert_eq!(braid_side(&h.word), bracket_invariant(&d), "diagram {i}: {}", h.word);
    }
}
