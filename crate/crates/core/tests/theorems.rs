use ellgen::catalog::{catalog, catalog_entry, Descriptor};
use ellgen::equivariant::S1ManifoldDescriptor;
use ellgen::genera::ManifoldDescriptor;
use ellgen::ring::rat;
use ellgen::theorems::{
    predicted_bound, verdict_cohomology, verdict_cyclic, verdict_involution, Rule,
};

fn action(name: &str) -> S1ManifoldDescriptor {
    match catalog_entry(name).unwrap().descriptor() {
        Descriptor::Action(a) => a,
        Descriptor::Plain(_) => panic!("{name} has no action"),
    }
}

#[test]
fn s4_involution_fires_at_r0() {
    let rep = verdict_involution(&action("S4_rotation"), 0, 4).unwrap();
    let route = rep.route(Rule::InvolutionCodimension).unwrap();
    assert_eq!(route.predicted_bound, Some(rat(1, 2)));
    assert!(rep.consistent());
    // codim 4 is not > 4.
    let rep = verdict_involution(&action("S4_rotation"), 1, 4).unwrap();
    assert!(!rep.routes[0].fired());
}

#[test]
fn failed_spin_hypothesis_gives_no_prediction() {
    let mut a = action("S4_rotation");
    a.underlying.spin = false;
    let rep = verdict_involution(&a, 0, 4).unwrap();
    assert_eq!(rep.routes[0].predicted_bound, None);
    assert_eq!(rep.routes[0].consistent, None);
}

#[test]
fn fake_k3_action_is_inconsistent() {
    let rep = verdict_involution(&action("K3_fake_action"), 0, 4).unwrap();
    assert_eq!(rep.routes[0].consistent, Some(false));
}

#[test]
fn m_number_rule_instantiation() {
    // HP2_type_action: m_3 = min over fixed points.
    let rep = verdict_cyclic(&action("HP2_type_action"), 3, 1, 4).unwrap();
    let route = rep.route(Rule::CyclicMNumber).unwrap();
    let m3 = rep.components.iter().map(|c| c.m_o.clone()).min().unwrap();
    assert_eq!(route.fired(), m3 > rat(1, 1));
    if route.fired() {
        assert_eq!(route.predicted_bound, Some(predicted_bound(8, 1)));
    }
}

#[test]
fn monotone_in_r() {
    for e in catalog().iter().filter(|e| !e.negative_control) {
        let Descriptor::Action(a) = e.descriptor() else {
            continue;
        };
        for o in 2..=4 {
            let mut prev_fired = true;
            for r in 0..=3 {
                let rep = verdict_cyclic(&a, o, r, 4).unwrap();
                assert!(rep.consistent(), "{} o={o} r={r}", e.name);
                for route in &rep.routes {
                    if route.fired() {
                        assert!(prev_fired || route.rule != Rule::CyclicCodimension);
                    }
                }
                prev_fired = rep.route(Rule::CyclicCodimension).unwrap().fired();
                if !prev_fired {
                    break;
                }
            }
        }
    }
}

#[test]
fn cohomology_rule() {
    let mut m = ManifoldDescriptor::new("S4", 4, true, &[("p1", 0)]);
    m.cohomology_vanishing_r = Some(1);
    let rep = verdict_cohomology(&m, true, 4).unwrap();
    assert_eq!(rep.routes[0].predicted_bound, Some(rat(-1, 2)));
    assert!(rep.consistent());
    let rep = verdict_cohomology(&m, false, 4).unwrap();
    assert!(!rep.routes[0].fired());
    // r = 0 on K3 with a claimed nontrivial action: the Â coefficient would have to vanish.
    let mut k3 = ManifoldDescriptor::new("K3", 4, true, &[("p1", -48)]);
    k3.cohomology_vanishing_r = Some(0);
    assert!(!verdict_cohomology(&k3, true, 4).unwrap().consistent());
}
