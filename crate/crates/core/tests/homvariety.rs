use supvar::homvariety::*;
use supvar::superalgebra::cache::ambient;
use supvar::Fq;

fn families() -> Vec<TargetFamily> {
    vec![
        TargetFamily::mr1(1),
        TargetFamily::mr1(2),
        TargetFamily::mrs(1, 2),
        TargetFamily::mrs(2, 2),
        TargetFamily::mrs_eta(2, 1, 1),
        TargetFamily::mrs_eta(2, 1, 2),
        TargetFamily::mrs_eta(2, 2, 1),
        TargetFamily::mrs_eta(2, 2, 2),
        TargetFamily::gar(1),
        TargetFamily::gar(2),
        TargetFamily::gaminus(),
    ]
}

#[test]
fn oracle_agrees_with_classification_over_f3() {
    let f = Fq::prime(3).unwrap();
    for fam in families() {
        let t = fam.default_ambient();
        let src = fam.coordinate_algebra(&f).unwrap();
        let tgt = ambient(fam.r, t, &f).unwrap();
        let found = enumerate_hopf_homs(&src, &tgt, DEFAULT_BUDGET).unwrap();
        let mut want: Vec<_> = classify_homs(&fam, &f, true)
            .unwrap()
            .params
            .unwrap()
            .iter()
            .map(|h| comorphism_from_params(h, &f, t).unwrap().matrix.to_rows())
            .collect();
        want.sort();
        let got: Vec<_> = found.iter().map(|m| m.matrix.to_rows()).collect();
        assert_eq!(got.len(), want.len(), "{}", fam.label());
        assert_eq!(got, want, "{}", fam.label());
    }
}

fn endo_families() -> Vec<TargetFamily> {
    vec![
        TargetFamily::mr1(1),
        TargetFamily::mr1(2),
        TargetFamily::mrs(1, 2),
        TargetFamily::mrs(2, 2),
        TargetFamily::gar(1),
        TargetFamily::gar(2),
        TargetFamily::gaminus(),
    ]
}

fn all_params(fam: &TargetFamily, f: &Fq) -> Vec<HomParams> {
    classify_homs(fam, f, true).unwrap().params.unwrap()
}

#[test]
fn every_comorphism_is_a_hopf_map() {
    for q in [3, 9] {
        let f = Fq::of_order(q).unwrap();
        let mut fams = families();
        fams.push(TargetFamily::mr_endo(1, 2));
        for fam in fams {
            if q == 9 && fam.r == 2 && fam.s == 2 {
                continue;
            }
            for h in all_params(&fam, &f) {
                let m = comorphism_from_params(&h, &f, fam.default_ambient()).unwrap();
                let rep = m.check();
                assert!(rep.pass(), "{} {:?}: {:?}", fam.label(), h.coords(), rep.first_failure());
            }
        }
    }
}

#[test]
fn inversion_round_trip() {
    for q in [3, 9] {
        let f = Fq::of_order(q).unwrap();
        for fam in endo_families() {
            let id = HomParams::identity(fam);
            for h in all_params(&fam, &f) {
                if !is_automorphism(&h, &f).unwrap() {
                    assert!(invert_automorphism(&h, &f).is_err());
                    continue;
                }
                let inv = invert_automorphism(&h, &f).unwrap();
                assert_eq!(compose_endos(&inv, &h, &f).unwrap(), id, "{} {:?}", fam.label(), h.coords());
            }
        }
    }
}

#[test]
fn composition_identities() {
    let f = Fq::of_order(9).unwrap();
    for fam in endo_families() {
        let id = HomParams::identity(fam);
        let zero = HomParams::zero(fam);
        for h in all_params(&fam, &f).into_iter().step_by(7) {
            assert_eq!(compose_endos(&id, &h, &f).unwrap(), h);
            assert_eq!(compose_endos(&h, &zero, &f).unwrap(), zero);
        }
    }
}

#[test]
fn zero_params_give_trivial_map() {
    let f = Fq::prime(3).unwrap();
    for fam in families() {
        let m = comorphism_from_params(&HomParams::zero(fam), &f, fam.default_ambient()).unwrap();
        for i in 0..m.source.dim() {
            let want: Vec<_> = m.target.unit.iter().map(|&u| f.mul(u, m.source.counit[i])).collect();
            assert_eq!(m.image(i), want);
        }
    }
}

#[test]
fn oracle_small_cases() {
    let f = Fq::prime(3).unwrap();
    let lam = TargetFamily::gaminus().coordinate_algebra(&f).unwrap();
    let even = TargetFamily::gar(1).coordinate_algebra(&f).unwrap();
    let maps = enumerate_hopf_homs(&lam, &even, DEFAULT_BUDGET).unwrap();
    assert_eq!(maps.len(), 1);
    assert_eq!(maps[0].image(1), vec![0; even.dim()]);
    assert_eq!(enumerate_hopf_homs(&lam, &lam, DEFAULT_BUDGET).unwrap().len(), 3);
}

/// Every hom M_2 -> G of a height-one G is a unique φ ∘ F.
#[test]
fn frobenius_is_a_bijection() {
    for q in [3, 9] {
        let f = Fq::of_order(q).unwrap();
        for fam in [TargetFamily::gar(1), TargetFamily::gaminus(), TargetFamily::mr1(1), TargetFamily::mrs(1, 2)] {
            let t = fam.default_ambient();
            let src = fam.coordinate_algebra(&f).unwrap();
            let tgt = ambient(2, t, &f).unwrap();
            let frob = frobenius_comorphism(1, 1, t, &f).unwrap();
            let mut lifted = Vec::new();
            for h in all_params(&fam, &f) {
                let m = comorphism_from_params(&frobenius_compose(1, &h), &f, t).unwrap();
                let via = comorphism_from_params(&h, &f, t).unwrap();
                assert_eq!(frob.compose(&via).unwrap().matrix, m.matrix);
                lifted.push(m.matrix.to_rows());
            }
            let n = lifted.len();
            lifted.sort();
            lifted.dedup();
            assert_eq!(lifted.len(), n, "not injective for {}", fam.label());
            let mut found: Vec<_> =
                enumerate_hopf_homs(&src, &tgt, DEFAULT_BUDGET).unwrap().iter().map(|m| m.matrix.to_rows()).collect();
            found.sort();
            assert_eq!(found, lifted, "not surjective for {} over F_{q}", fam.label());
        }
    }
}

#[test]
fn pushforward_truncates() {
    let f = Fq::prime(3).unwrap();
    for r in 1..=2 {
        let big = TargetFamily::mrs(r, 2);
        for to in [TargetFamily::mr1(r), TargetFamily::gar(r), TargetFamily::gaminus()] {
            let q = quotient_map(&big, &to, &f).unwrap();
            assert!(q.check().pass());
            for nu in all_params(&big, &f) {
                let out = pushforward_hom(&q, &to, &nu).unwrap();
                let mut want = HomParams::new(to, to.has_mu().then(|| nu.mu()), nu.a[..to.n_a()].to_vec(), None);
                want.shift = r - to.r;
                assert_eq!(out, want);
            }
        }
        let id = quotient_map(&big, &big, &f).unwrap();
        for nu in all_params(&big, &f) {
            assert_eq!(pushforward_hom(&id, &big, &nu).unwrap(), nu);
        }
    }
}
