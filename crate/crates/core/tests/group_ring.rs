use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sofic_core::corpus::{invertible_pair, random_element, random_kernel, singular_kernel};
use sofic_core::instance::{parse_instance, Directive, GroupDescriptor, Instance};
use sofic_core::{mat_mul, rank, GroupModel, GroupRingKernel};

fn group(which: usize) -> Arc<GroupModel> {
    Arc::new(match which {
        0 => GroupModel::free_abelian(1),
        1 => GroupModel::free_abelian(2),
        _ => GroupModel::cyclic(6, vec![1, 5]).unwrap(),
    })
}

fn kernels(seed: u64, which: usize, count: usize) -> Vec<GroupRingKernel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = group(which);
    let p = [2, 3, 2][which];
    let d = 1 + (seed % 3) as usize;
    (0..count).map(|i| random_kernel(&mut rng, &g, d, p, 2, 1 + i % 4)).collect()
}

/// Smallest n such that phi restricted to the n-ball has a kernel, by linear scan.
fn linear_kernel_radius(phi: &GroupRingKernel, max_n: usize) -> Option<usize> {
    let s = phi.support_radius();
    (1..=max_n).find(|&n| {
        let g = phi.group();
        let m = phi
            .restriction_matrix(&g.cayley_ball(n).unwrap(), &g.cayley_ball(n + s).unwrap())
            .unwrap();
        rank(&m) < m.cols()
    })
}

proptest! {
    #[test]
    fn compose_associative_with_identity(seed in any::<u64>(), which in 0usize..3) {
        let k = kernels(seed, which, 3);
        let (a, b, c) = (&k[0], &k[1], &k[2]);
        let left = a.compose(b).unwrap().compose(c).unwrap();
        let right = a.compose(&b.compose(c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = GroupRingKernel::identity(a.group().clone(), a.dim(), a.modulus()).unwrap();
        prop_assert_eq!(&a.compose(&one).unwrap(), a);
        prop_assert_eq!(&one.compose(a).unwrap(), a);
        let sum = a.add(b).unwrap().compose(c).unwrap();
        prop_assert_eq!(sum, a.compose(c).unwrap().add(&b.compose(c).unwrap()).unwrap());
    }

    #[test]
    fn equivariance_law(seed in any::<u64>(), which in 0usize..3) {
        let phi = &kernels(seed, which, 1)[0];
        let g = phi.group();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..8 {
            let (x, g1, g2) = (random_element(&mut rng, g, 3), random_element(&mut rng, g, 3), random_element(&mut rng, g, 3));
            let lhs = phi.equivariant_entry(&g.multiply(&g.inverse(&x).unwrap(), &g2).unwrap(), &g1).unwrap();
            let rhs = phi.equivariant_entry(&g2, &g.multiply(&x, &g1).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn restriction_naturality(seed in any::<u64>(), which in 0usize..2, n in 0usize..3) {
        let k = kernels(seed, which, 2);
        let (a, b) = (&k[0], &k[1]);
        let (ra, rb) = (a.support_radius(), b.support_radius());
        let g = a.group();
        let ball = |r| g.cayley_ball(r).unwrap();
        let whole = a.compose(b).unwrap().restriction_matrix(&ball(n), &ball(n + ra + rb)).unwrap();
        let split = mat_mul(
            &a.restriction_matrix(&ball(n + rb), &ball(n + ra + rb)).unwrap(),
            &b.restriction_matrix(&ball(n), &ball(n + rb)).unwrap(),
        ).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn kernel_radius_matches_linear_scan(seed in any::<u64>(), which in 0usize..3, singular in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = group(which);
        let p = [2, 3, 2][which];
        let phi = if singular {
            singular_kernel(&mut rng, &g, 2, p, 1, 2)
        } else {
            random_kernel(&mut rng, &g, 1 + (seed % 2) as usize, p, 1, 2)
        };
        let max_n = 4;
        prop_assert_eq!(phi.kernel_radius(max_n).unwrap(), linear_kernel_radius(&phi, max_n));
    }

    #[test]
    fn invertible_pairs_are_directly_finite(seed in any::<u64>(), which in 0usize..3, d in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = group(which);
        let (x, y) = invertible_pair(&mut rng, &g, d, [2, 3, 2][which], 4, 1);
        prop_assert!(x.check_right_inverse(&y).unwrap());
        prop_assert!(y.check_right_inverse(&x).unwrap());
        prop_assert_eq!(x.kernel_radius(3).unwrap(), None);
    }

    #[test]
    fn instance_text_round_trip(seed in any::<u64>(), which in 0usize..2) {
        let k = kernels(seed, which, 3);
        let inst = Instance {
            p: k[0].modulus(),
            d: k[0].dim(),
            descriptor: GroupDescriptor::FreeAbelian(which + 1),
            group: k[0].group().clone(),
            elements: vec![("a".into(), k[0].clone()), ("b".into(), k[1].clone()), ("c_2".into(), k[2].clone())],
            directives: vec![
                Directive::Check { x: "a".into(), y: "b".into() },
                Directive::Transfer { phi: "c_2".into(), psi: None },
                Directive::Transfer { phi: "a".into(), psi: Some("b".into()) },
            ],
        };
        let text = inst.to_text();
        let back = parse_instance(&text, |_| unreachable!()).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_text(), text);
    }
}
