mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wehrl_core::husimi::husimi_fast;
use wehrl_core::random::random_state;
use wehrl_core::{CoherentFrame, GroupDescriptor};

fn check_group(spec: &str) {
    let group = GroupDescriptor::parse(spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for h in group.all_subgroups() {
        let frame = CoherentFrame::vacuum(&h);
        let mut tested = 0;
        while tested < 20 {
            let psi = random_state(group.order(), &mut rng);
            if husimi_fast(&frame, &psi)
                .unwrap()
                .values()
                .iter()
                .any(|&q| q < 1e-6)
            {
                continue;
            }
            tested += 1;
            let err = common::gradient_error(&frame, &psi);
            assert!(
                err <= 1e-4,
                "{spec} H=<{}>: rel err {err}",
                h.generator_string()
            );
        }
    }
}

#[test]
fn gradient_matches_finite_differences_cyclic() {
    for spec in ["Z2", "Z3", "Z4", "Z6"] {
        check_group(spec);
    }
}

#[test]
fn gradient_matches_finite_differences_products() {
    for spec in ["Z2xZ2", "Z4xZ2", "Z3xZ3"] {
        check_group(spec);
    }
}

#[test]
fn generic_fiducial_gradient() {
    let group = GroupDescriptor::parse("Z5").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let frame = CoherentFrame::new(&group, random_state(5, &mut rng)).unwrap();
    for _ in 0..20 {
        let psi = random_state(5, &mut rng);
        let err = common::gradient_error(&frame, &psi);
        assert!(err <= 1e-4, "rel err {err}");
    }
}
