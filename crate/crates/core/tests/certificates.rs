mod common;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Deserialize;
use straighten_core::asl::{uniqueness_certificate, validate_certificate, CertificateDocument};
use straighten_core::{check_unique, generate_posets, Error, IdealLattice, Poset, RealizationKind, Verdict};

fn document(p: &Poset) -> CertificateDocument {
    let l = IdealLattice::new(p).unwrap();
    uniqueness_certificate(&l).unwrap().to_document(&l)
}

#[test]
fn generated_certificates_validate() {
    for n in 1..=6 {
        for c in generate_posets(n).unwrap() {
            let l = IdealLattice::new(&c.poset).unwrap();
            match check_unique(&l).unwrap() {
                Verdict::Unique(cert) => {
                    assert!(c.poset.is_direct_sum_of_chains());
                    let doc = cert.to_document(&l);
                    let summary = validate_certificate(&doc, &c.poset).unwrap();
                    assert_eq!(summary.steps, l.incomparable_pairs().len());
                    let text = serde_json::to_string(&doc).unwrap();
                    assert_eq!(CertificateDocument::from_json(&text).unwrap(), doc);
                }
                Verdict::NotUnique(w) => {
                    assert!(!c.poset.is_direct_sum_of_chains());
                    assert_ne!(w.difference.left, w.difference.right);
                }
            }
        }
    }
}

#[test]
fn mutations_are_rejected() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for lengths in [&[1, 1][..], &[2, 1], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1], &[3, 2], &[1, 1, 1, 1]] {
        let p = Poset::sum_of_chains(lengths);
        let mut mutator = common::Mutator::new(serde_json::to_value(document(&p)).unwrap());
        for _ in 0..200 {
            mutator.with_mutation(p.labels(), &mut rng, |bad| {
                if let Ok(parsed) = CertificateDocument::deserialize(bad) {
                    assert!(validate_certificate(&parsed, &p).is_err(), "accepted mutation {bad}");
                }
            });
        }
    }
}

#[test]
fn certificate_for_wrong_poset() {
    let doc = document(&Poset::sum_of_chains(&[2, 1]));
    let other = Poset::sum_of_chains(&[1, 1, 1]);
    assert!(matches!(validate_certificate(&doc, &other), Err(Error::InvalidCertificate(_))));
}

#[test]
fn v_poset_is_not_unique() {
    let v = straighten_core::build_poset(&["p", "p'", "q"], &[("p", "q"), ("p'", "q")]).unwrap();
    let l = IdealLattice::new(&v).unwrap();
    let Verdict::NotUnique(w) = check_unique(&l).unwrap() else {
        panic!("V-poset has two compatible ASLs");
    };
    assert_eq!(w.kinds, (RealizationKind::Order, RealizationKind::ChainDual));
}
