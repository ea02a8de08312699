use periodica_core::catalog::{all, get_entry, CatalogEntry, Claim};
use periodica_core::dilog::{propagate_numeric, verify_identity};
use periodica_core::tysystem::{
    build_schedule, check_duality, gen_t_system, gen_y_system, singleton_lengths, y_from_t_check, SliceSchedule,
};

fn schedule(e: &CatalogEntry, c: &Claim) -> SliceSchedule {
    SliceSchedule::new(&e.matrix, &c.slices, &e.permutation(&c.nu).unwrap()).unwrap()
}

fn initial(n: usize, salt: u64) -> Vec<f64> {
    (0..n).map(|i| 0.5 + ((i as u64 * 7 + salt * 3) % 11) as f64 / 5.0).collect()
}

#[test]
fn duality_holds_for_every_catalog_period() {
    for e in all() {
        for c in &e.claims {
            let s = schedule(&e, c);
            let y = gen_y_system(&s);
            let t = gen_t_system(&s, false);
            let rep = check_duality(&s, &y, &t);
            assert!(rep.holds(), "{} {}: {:?}", e.name, c.label, rep.violations.first());
            assert!(rep.checked > 0 || e.n() == 1, "{} {}", e.name, c.label);
        }
    }
}

#[test]
fn t_system_solutions_give_y_system_solutions() {
    for e in all() {
        for c in &e.claims {
            let s = schedule(&e, c);
            let rep = y_from_t_check(&s, &initial(e.n(), 1)).unwrap();
            assert!(rep.max_residual < 1e-9, "{} {}: {:?}", e.name, c.label, rep);
        }
    }
}

#[test]
fn dilogarithm_identity_for_every_seed_period() {
    for e in all() {
        let Some(c) = e.seed_period() else { continue };
        let s = schedule(&e, c);
        let rep = verify_identity(&s, 2, 5, 1e-9).unwrap();
        assert!(rep.passed(), "{}: {:?}", e.name, rep.max_residual());
        assert_eq!(rep.conditional, !e.matrix.is_skew_symmetric());
    }
}

#[test]
fn slice_choice_does_not_change_the_identity() {
    for name in ["A3", "A4", "D4-bipartite", "A4-level4"] {
        let e = get_entry(name).unwrap();
        let c = e.seed_period().unwrap();
        let spec = e.spec(c).unwrap();
        let coarse = schedule(&e, c);
        let fine = build_schedule(&e.matrix, &spec, &singleton_lengths(&spec.seq)).unwrap();
        assert_eq!(fine.omega() as usize, spec.seq.len());
        let a = verify_identity(&coarse, 2, 9, 1e-9).unwrap();
        let b = verify_identity(&fine, 2, 9, 1e-9).unwrap();
        assert!(a.passed() && b.passed(), "{name}");
        assert_eq!((a.n_plus, a.n_minus), (b.n_plus, b.n_minus), "{name}");
        for (x, y) in a.trials.iter().zip(&b.trials) {
            assert!((x.sum_minus - y.sum_minus).abs() < 1e-9, "{name}");
        }
        let y = propagate_numeric(&fine, &initial(e.n(), 2)).unwrap();
        let z = propagate_numeric(&coarse, &initial(e.n(), 2)).unwrap();
        assert_eq!(y.values.len(), z.values.len());
        for (p, q) in y.last.iter().zip(&z.last) {
            assert!((p.ln() - q.ln()).abs() < 1e-9, "{name}");
        }
    }
}

#[test]
fn y_system_of_type_a_has_two_term_products() {
    let e = get_entry("A4").unwrap();
    let s = schedule(&e, e.seed_period().unwrap());
    for rel in gen_y_system(&s) {
        let neighbours: usize = rel.plus.values().chain(rel.minus.values()).map(|&x| x as usize).sum();
        let expected = [rel.site.i > 0, rel.site.i + 1 < e.n()].iter().filter(|&&x| x).count();
        assert_eq!(neighbours, expected, "{:?}", rel.site);
        assert_eq!(rel.partner.u - rel.site.u, 2);
    }
}
