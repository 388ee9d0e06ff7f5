use minsurf::disk::{
    classify_type, disks_disjoint, project_disk, CatalogBounds, DiskCatalog, DiskType, DiskVertex,
};
use minsurf::retraction::{
    certify_minimality, verify_claim_cases, CertifyConfig, Provenance, RetractionTower,
};
use minsurf::simplicial::{reduced_homology, DEFAULT_MAX_SIMPLICES};
use minsurf::surface::TubedSurface;

fn catalog(g: u32, tubes: usize, k: usize, depth: usize) -> DiskCatalog {
    DiskCatalog::build(
        &TubedSurface::new(g, tubes).unwrap(),
        CatalogBounds::new(k, depth),
    )
    .unwrap()
}

#[test]
fn catalog_complex_has_the_sphere_class() {
    // Homology of the whole catalog complex, computed without the retraction.
    for (g, tubes, k) in [(1, 2, 2), (1, 3, 2), (2, 2, 2)] {
        let c = catalog(g, tubes, k, 1);
        let n = tubes - 1;
        let h = reduced_homology(&c.complex(), n, DEFAULT_MAX_SIMPLICES).unwrap();
        assert!(h.group(n).rank >= 1, "F{tubes}: {h}");
    }
}

#[test]
fn disjointness_is_symmetric_and_reflexive() {
    let c = catalog(1, 3, 2, 1);
    let s = &c.surface;
    for a in c.disks() {
        assert!(disks_disjoint(a, a, s));
        for b in c.disks() {
            assert_eq!(disks_disjoint(a, b, s), disks_disjoint(b, a, s), "{a} {b}");
            assert_eq!(disks_disjoint(a, b, s), c.disjoint_disks(a, b), "{a} {b}");
        }
    }
}

#[test]
fn projection_preserves_side_and_lands_in_the_lower_catalog() {
    let c = catalog(2, 3, 2, 2);
    let lower = c.restrict().unwrap();
    let e = DiskVertex::meridian(3);
    for d in c.disks() {
        if *d != e && disks_disjoint(d, &e, &c.surface) {
            let p = project_disk(d, &c.surface, 2).unwrap();
            assert_eq!(p.side(), d.side());
            assert!(lower.contains(&p), "{p}");
        }
    }
}

#[test]
fn types_partition_every_level() {
    let c = catalog(1, 4, 2, 2);
    let mut level = Some(c);
    while let Some(c) = level {
        let types: Vec<DiskType> = c
            .disks()
            .iter()
            .map(|d| classify_type(d, &c.surface))
            .collect();
        assert_eq!(types.iter().filter(|&&t| t == DiskType::T1).count(), 1);
        level = if c.surface.tubes > 1 {
            Some(c.restrict().unwrap())
        } else {
            None
        };
    }
}

#[test]
fn every_surgery_with_two_arcs_agrees() {
    let t = RetractionTower::build(&catalog(1, 4, 2, 2)).unwrap();
    let mut multi = 0;
    for r in &t.maps {
        for a in r.assignments.values() {
            if let Provenance::Surgery { outcomes } = &a.provenance {
                if outcomes.len() >= 2 {
                    multi += 1;
                }
                for o in outcomes.iter().filter(|o| o.level == Some(a.level)) {
                    assert_eq!(o.image.as_deref(), Some(a.image.as_str()));
                }
            }
        }
    }
    assert!(multi > 0);
}

#[test]
fn claim_holds_on_four_tubes_with_deep_band_sums() {
    let t = RetractionTower::build(&catalog(1, 4, 2, 2)).unwrap();
    for (c, r) in t.catalogs.iter().zip(&t.maps).skip(1) {
        let report = verify_claim_cases(c, r);
        assert!(
            report.holds(),
            "F{}: {:?}",
            c.surface.tubes,
            report.violations
        );
    }
    assert!(t.top_catalog().disks().iter().any(|d| d.depth() == 2));
}

#[test]
fn certificates_pass_up_to_three_dimensions() {
    for n in 1..=3 {
        let cert = certify_minimality(&CertifyConfig::new(1, n)).unwrap();
        assert!(cert.passed(), "{}", cert.render_text());
        assert_eq!(cert.homology.unwrap().dimension, n);
        assert!(cert.reducing_pair.is_some());
    }
}
