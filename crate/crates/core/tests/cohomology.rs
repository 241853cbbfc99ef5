use supvar::cohomology::classes::{family_low_degree_agreement, low_degree_agreement, w_cochain};
use supvar::cohomology::{
    cohomology_ring, generator_cocycles, presented_cohomology_ring, CobarComplex, Cochain, FamilyCohomology,
};
use supvar::homvariety::TargetFamily;
use supvar::ring::PresentedGradedRing;
use supvar::Fq;

fn f3() -> Fq {
    Fq::prime(3).unwrap()
}

#[test]
fn presentations_match_cobar() {
    let f = f3();
    let cases = [
        (TargetFamily::gaminus(), 4),
        (TargetFamily::gar(1), 4),
        (TargetFamily::gar(2), 4),
        (TargetFamily::mr1(1), 4),
        (TargetFamily::mrs(1, 2), 4),
        (TargetFamily::mr1(2), 3),
        (TargetFamily::mrs_eta(2, 1, 1), 3),
        (TargetFamily::mrs_eta(2, 1, 2), 3),
    ];
    for (fam, n) in cases {
        let h = FamilyCohomology::new(&fam, &f, n).unwrap();
        let rep = h.check_presentation(n).unwrap();
        assert!(rep.pass(), "{}: {:?}", fam.label(), rep.first_failure());
    }
}

#[test]
fn generator_examples() {
    let f = f3();
    let g = generator_cocycles(&TargetFamily::gaminus(), &f).unwrap();
    assert_eq!(g.len(), 1);
    assert_eq!(g[0].name, "y");

    // G_a(1): x1 = −(σ1⊗σ2 + σ2⊗σ1) where σ1 = θ, σ2 = θ²/2
    let h = TargetFamily::gar(1).coordinate_algebra(&f).unwrap();
    let x1 = generator_cocycles(&TargetFamily::gar(1), &f).unwrap().into_iter().find(|c| c.name == "x1").unwrap();
    let th = h.basis_vec(1);
    let s2 = h.pow(&th, 2).iter().map(|&c| f.div(c, 2)).collect::<Vec<_>>();
    let want =
        Cochain::tensor2(&f, &th, &s2).unwrap().add(&f, &Cochain::tensor2(&f, &s2, &th).unwrap()).scale(&f, f.neg(1));
    assert_eq!(x1.rep, want);

    // M_{1;2}: the w2 cochain has 8 + 7 terms and is a cocycle
    let fam = TargetFamily::mrs(1, 2);
    let hopf = fam.coordinate_algebra(&f).unwrap();
    let w = w_cochain(&fam.shape(3), &f);
    assert_eq!(w.terms.len(), 15);
    assert!(CobarComplex::new(hopf, 3).unwrap().is_cocycle(&w));
}

#[test]
fn w1_is_xr_minus_y_squared() {
    let f = f3();
    for r in 1..=2 {
        let fam = TargetFamily::mr1(r);
        let h = FamilyCohomology::new(&fam, &f, 2).unwrap();
        let w1 = w_cochain(&fam.shape(3), &f);
        assert_eq!(h.express(&w1).unwrap(), h.ring.parse(&format!("x{r} - y^2")).unwrap());
    }
}

#[test]
fn ring_examples() {
    let f = f3();
    let h = presented_cohomology_ring(&TargetFamily::mrs(1, 2), &f).unwrap();
    // k[y, w]: degree 2 spanned by y², w
    assert_eq!(h.hilbert(8), vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
    let h = presented_cohomology_ring(&TargetFamily::gar(1), &f).unwrap();
    assert_eq!(h.hilbert(8), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let h = presented_cohomology_ring(&TargetFamily::gaminus(), &f).unwrap();
    assert_eq!(h.hilbert(6), vec![1, 0, 1, 0, 1, 0, 1]);
}

#[test]
fn low_degree_agreement_examples() {
    let f = f3();
    assert!(family_low_degree_agreement(&TargetFamily::mr1(1), &f, 4).unwrap().pass());
    assert!(family_low_degree_agreement(&TargetFamily::gar(2), &f, 3).unwrap().pass());

    // drop y² from M_{1;1}'s H^2 by imposing x1 = y²
    let fam = TargetFamily::mr1(1);
    let good = cohomology_ring(&fam, &f).unwrap();
    let rel = good.parse("x1 - y^2").unwrap();
    let bad = PresentedGradedRing::new(&f, good.gens.clone(), vec![rel]).unwrap().with_koszul_signs();
    let complex = CobarComplex::new(fam.coordinate_algebra(&f).unwrap(), 4).unwrap();
    let rep = low_degree_agreement(&bad, &complex, 4).unwrap();
    assert_eq!(rep.first_failure().unwrap().name, "degree_2");
}

#[test]
fn canonical_basis_is_reduced() {
    let f = f3();
    let c = CobarComplex::new(TargetFamily::mrs(1, 2).coordinate_algebra(&f).unwrap(), 3).unwrap();
    let h2 = c.cohomology(2, true).unwrap();
    assert_eq!(h2.basis.len(), 3);
    for z in &h2.basis {
        assert!(c.is_cocycle(z));
        let lead = z.terms.iter().next_back().unwrap();
        assert_eq!(*lead.1, 1);
    }
    let again = c.cohomology(2, true).unwrap();
    assert_eq!(again.basis, h2.basis);
}

mod restriction {
    use std::time::Instant;

    use supvar::cohomology::restrict::check_restriction_formulas;
    use supvar::cohomology::restrict_generators;
    use supvar::homvariety::{classify_homs, HomParams, TargetFamily};
    use supvar::Fq;

    fn families() -> Vec<TargetFamily> {
        let mut v = vec![TargetFamily::gaminus()];
        for r in 1..=2 {
            v.push(TargetFamily::gar(r));
            v.push(TargetFamily::mr1(r));
            v.push(TargetFamily::mrs(r, 2));
        }
        for s in 1..=2 {
            v.push(TargetFamily::mrs_eta(2, s, 1));
        }
        v
    }

    #[test]
    fn closed_forms_over_f3() {
        let f = Fq::prime(3).unwrap();
        for fam in families() {
            let t = Instant::now();
            let ps = classify_homs(&fam, &f, true).unwrap().params.unwrap();
            for h in &ps {
                let bad = check_restriction_formulas(h, &f).unwrap();
                assert!(bad.is_empty(), "{} {:?}: {:?}", fam.label(), h.coords(), bad);
            }
            eprintln!("{} {} params {:?}", fam.label(), ps.len(), t.elapsed());
        }
    }

    #[test]
    fn restriction_examples() {
        let f = Fq::prime(3).unwrap();
        let fam = TargetFamily::mrs(1, 2);
        let got = restrict_generators(&HomParams::new(fam, Some(1), vec![1], Some(1)), &f).unwrap();
        let h = supvar::cohomology::family_cohomology(&fam, &f).unwrap();
        let w = &got.iter().find(|g| g.0 == "w").unwrap().1;
        assert_eq!(*w, h.ring.parse("w + x1").unwrap());

        let fam = TargetFamily::mrs_eta(2, 1, 1);
        let got = restrict_generators(&HomParams::new(fam, Some(1), vec![1, 0], None), &f).unwrap();
        let amb = supvar::cohomology::family_cohomology(&TargetFamily::mrs(2, 2), &f).unwrap();
        let w = &got.iter().find(|g| g.0 == "w").unwrap().1;
        assert_eq!(*w, amb.ring.normal_form(&amb.ring.parse("w - x1").unwrap()));

        for fam in [TargetFamily::mr1(2), TargetFamily::mrs(2, 2), TargetFamily::gar(2)] {
            let h = supvar::cohomology::restrict::ambient_cohomology(&fam, &f).unwrap();
            for (name, img) in restrict_generators(&HomParams::identity(fam), &f).unwrap() {
                assert_eq!(img, h.ring.var(&name), "{name}");
            }
        }
    }
}

#[test]
fn closed_forms_over_f9_timing() {
    let f = Fq::of_order(9).unwrap();
    for fam in [TargetFamily::mrs(2, 2), TargetFamily::mrs_eta(2, 2, 1), TargetFamily::mr1(2)] {
        let t = std::time::Instant::now();
        let ps = supvar::homvariety::classify_homs(&fam, &f, true).unwrap().params.unwrap();
        for h in &ps {
            assert!(supvar::cohomology::restrict::check_restriction_formulas(h, &f).unwrap().is_empty());
        }
        eprintln!("{} {} params {:?}", fam.label(), ps.len(), t.elapsed());
    }
}
