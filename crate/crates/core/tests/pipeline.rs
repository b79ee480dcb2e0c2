use std::sync::Arc;

use latori_core::classgroup::{rationality_reports, Verdict};
use latori_core::devissage::{psi_isomorphism, reiner_c2_decompose, verify_tower};
use latori_core::groups::parse_group;
use latori_core::homalg::{find_isomorphism, flabby_coflabby, Invertibility};
use latori_core::lattices::PiLattice;
use latori_core::resolutions::{certify_stably_permutation, coflabby_embedding, flabby_resolution, ExactTriple};

#[test]
fn flabby_class_of_sign_lattice() {
    let g = Arc::new(parse_group("C2").unwrap());
    let t = flabby_resolution(&PiLattice::sign(g).unwrap()).unwrap();
    let round = ExactTriple::from_json(&t.to_json()).unwrap();
    let e = round.right;
    let r = flabby_coflabby(&e).unwrap();
    assert!(r.flabby && r.coflabby);
    assert_eq!(r.invertible, Invertibility::Invertible);
    let cert = certify_stably_permutation(&e, 4, 7).unwrap().unwrap();
    cert.certificate.verify().unwrap();
}

#[test]
fn lattice_file_feeds_tower() {
    let g = Arc::new(parse_group("D15").unwrap());
    let tau = g.generator("tau").unwrap();
    let m = PiLattice::permutation(g.clone(), &g.closure(&[tau])).unwrap();
    let back = PiLattice::from_json(&m.to_json()).unwrap();
    assert!(back.same_matrices(&m));
    let report = verify_tower(&back, 15).unwrap();
    assert!(report.all_true(), "{}", report.to_text());
}

#[test]
fn psi_source_and_target_agree_in_rank() {
    let g = Arc::new(parse_group("D9").unwrap());
    let r = psi_isomorphism(&PiLattice::regular(g), 9).unwrap();
    assert_eq!(r.source.rank(), r.target.rank());
    r.certificate.verify().unwrap();
}

#[test]
fn coflabby_embedding_of_dual_regular_pieces() {
    let g = Arc::new(parse_group("D4").unwrap());
    let m = PiLattice::sign(g).unwrap();
    let t = coflabby_embedding(&m).unwrap();
    assert!(flabby_coflabby(&t.middle).unwrap().coflabby);
    assert!(find_isomorphism(&t.left, &m, 2, 1).unwrap().certificate().is_some());
}

#[test]
fn restriction_to_tau_decomposes() {
    let g = Arc::new(parse_group("D5").unwrap());
    let tau = g.generator("tau").unwrap();
    let sub = g.closure(&[tau]);
    let d = reiner_c2_decompose(&PiLattice::regular(g.clone()).restrict(&sub).unwrap()).unwrap();
    assert_eq!((d.a, d.b, d.c), (0, 0, 5));
}

#[test]
fn rationality_of_dihedral_tori() {
    for n in [3, 5, 7, 9, 25, 27, 49] {
        let v = rationality_reports(&format!("D{n}").parse().unwrap()).unwrap();
        assert!(v.iter().filter(|x| x.statement.contains("stably rational")).all(|x| x.verdict == Verdict::True));
    }
}
