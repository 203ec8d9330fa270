use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wehrl_core::husimi::{husimi, strong_subadditivity_gap, wehrl_entropy};
use wehrl_core::random::{random_density, random_state};
use wehrl_core::{CoherentFrame, GroupDescriptor, PhaseSpacePoint, Subsystem};

/// Index of `(z₁, z₂)` in the phase space of `G₁ × G₂`.
fn joint_index(joint: &GroupDescriptor, z1: &PhaseSpacePoint, z2: &PhaseSpacePoint) -> usize {
    let cat = |a: &[usize], b: &[usize]| a.iter().chain(b).map(|&x| x as i64).collect::<Vec<_>>();
    let g = joint.element(&cat(z1.g.coords(), z2.g.coords())).unwrap();
    let lambda = joint
        .character(&cat(z1.lambda.coords(), z2.lambda.coords()))
        .unwrap();
    joint.point_index(&PhaseSpacePoint::new(g, lambda))
}

fn check_pair(a: &str, b: &str) {
    let g1 = GroupDescriptor::parse(a).unwrap();
    let g2 = GroupDescriptor::parse(b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for h1 in g1.all_subgroups() {
        for h2 in g2.all_subgroups() {
            let f1 = CoherentFrame::vacuum(&h1);
            let f2 = CoherentFrame::vacuum(&h2);
            let joint = f1.tensor_product(&f2).unwrap();
            assert!(joint.is_vacuum());
            for _ in 0..20 {
                let rho12 = random_density(joint.dim(), &mut rng);
                let rho1 = rho12
                    .partial_trace((f1.dim(), f2.dim()), Subsystem::Second)
                    .unwrap();
                let q12 = husimi(&joint, &rho12).unwrap();
                let q1 = husimi(&f1, &rho1).unwrap();
                assert!(wehrl_entropy(&q12) >= wehrl_entropy(&q1) - 1e-9);

                for (i, z1) in g1.points().enumerate() {
                    let marginal: f64 = g2
                        .points()
                        .map(|z2| q12.values()[joint_index(joint.group(), &z1, &z2)])
                        .sum::<f64>()
                        * f2.haar_weight();
                    assert!((marginal - q1.values()[i]).abs() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn z2_times_z2() {
    check_pair("Z2", "Z2");
}

#[test]
fn z4_times_z2() {
    check_pair("Z4", "Z2");
}

/// Not an invariant: the strengthened subadditivity is only known for the
/// continuous case, so the smallest gap found is printed rather than asserted.
#[test]
fn strengthened_subadditivity_probe() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    for (a, b) in [("Z2", "Z2"), ("Z4", "Z2"), ("Z3", "Z3")] {
        let g1 = GroupDescriptor::parse(a).unwrap();
        let g2 = GroupDescriptor::parse(b).unwrap();
        for h1 in g1.all_subgroups() {
            for h2 in g2.all_subgroups() {
                let f1 = CoherentFrame::vacuum(&h1);
                let f2 = CoherentFrame::vacuum(&h2);
                let n = f1.dim() * f2.dim();
                let min = (0..200)
                    .map(|i| {
                        let rho = if i % 2 == 0 {
                            random_density(n, &mut r)
                        } else {
                            random_state(n, &mut r).projector()
                        };
                        strong_subadditivity_gap(&f1, &f2, &rho).unwrap()
                    })
                    .fold(f64::INFINITY, f64::min);
                println!(
                    "subadditivity {a} H=<{}> x {b} H=<{}>: min gap {min:.3e}",
                    h1.generator_string(),
                    h2.generator_string()
                );
            }
        }
    }
}
