//! Seeded generators for group-ring test instances.
//!
//! Everything here is a pure function of a `ChaCha8Rng`, so a seed fixes the
//! whole corpus.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{FpMatrix, FpScalar};
use crate::groupring::GroupRingKernel;
use crate::groups::{GroupElement, GroupModel};

fn random_block(rng: &mut ChaCha8Rng, d: usize, p: u64) -> FpMatrix {
    let entries: Vec<i64> = (0..d * d).map(|_| rng.gen_range(0..p) as i64).collect();
    FpMatrix::from_entries(d, d, p, &entries).expect("valid shape")
}

/// A random element of `N_radius(B)`.
pub fn random_element(rng: &mut ChaCha8Rng, group: &GroupModel, radius: usize) -> GroupElement {
    let ball = group.cayley_ball(radius).expect("small ball");
    ball.elements().choose(rng).expect("nonempty").clone()
}

/// A kernel with up to `terms` random coefficients placed in `N_radius(B)`.
pub fn random_kernel(
    rng: &mut ChaCha8Rng,
    group: &Arc<GroupModel>,
    d: usize,
    p: u64,
    radius: usize,
    terms: usize,
) -> GroupRingKernel {
    let ball = group.cayley_ball(radius).expect("small ball");
    let picked: Vec<(GroupElement, FpMatrix)> = (0..terms)
        .map(|_| {
            (
                ball.elements().choose(rng).expect("nonempty").clone(),
                random_block(rng, d, p),
            )
        })
        .collect();
    GroupRingKernel::from_terms(group.clone(), d, p, picked).expect("consistent parameters")
}

/// One invertible factor and its inverse: `I + c·g·E_ij` (for `d >= 2`) or a
/// diagonal unit monomial `diag(1, …, c·g, …, 1)`.
fn unit_factor(
    rng: &mut ChaCha8Rng,
    group: &Arc<GroupModel>,
    d: usize,
    p: u64,
    radius: usize,
) -> (GroupRingKernel, GroupRingKernel) {
    let g = random_element(rng, group, radius);
    let c = rng.gen_range(1..p);
    if d >= 2 && rng.gen_bool(0.8) {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let fwd = GroupRingKernel::elementary(group.clone(), d, p, (i, j), c as i64, g.clone());
        let back = GroupRingKernel::elementary(group.clone(), d, p, (i, j), -(c as i64), g);
        (fwd.expect("valid"), back.expect("valid"))
    } else {
        let i = rng.gen_range(0..d);
        let c_inv = FpScalar::new(c as i64, p).expect("prime").inv().expect("nonzero").value();
        let diag = |coeff: u64, at: GroupElement| {
            let id = group.identity();
            let mut rest = FpMatrix::identity(d, p).expect("prime");
            rest.set(i, i, 0);
            let mut unit = FpMatrix::zeros(d, d, p).expect("prime");
            unit.set(i, i, coeff);
            GroupRingKernel::from_terms(group.clone(), d, p, [(id, rest), (at, unit)]).expect("valid")
        };
        let g_inv = group.inverse(&g).expect("in group");
        (diag(c, g), diag(c_inv, g_inv))
    }
}

/// `(x, y)` with `xy = yx = 1`: `x` is a product of `1..=max_factors` unit
/// factors with monomial entries from `N_radius(B)`, `y` the reversed product
/// of their inverses.
pub fn invertible_pair(
    rng: &mut ChaCha8Rng,
    group: &Arc<GroupModel>,
    d: usize,
    p: u64,
    max_factors: usize,
    radius: usize,
) -> (GroupRingKernel, GroupRingKernel) {
    let mut x = GroupRingKernel::identity(group.clone(), d, p).expect("prime");
    let mut y = x.clone();
    for _ in 0..rng.gen_range(1..=max_factors.max(1)) {
        let (f, f_inv) = unit_factor(rng, group, d, p, radius);
        x = x.compose(&f).expect("compatible");
        y = f_inv.compose(&y).expect("compatible");
    }
    (x, y)
}

/// `χ ∘ P ∘ E` where `P` projects away the last coordinate and `E` is a
/// single unit factor from `N_radius(B)`. Kills `E⁻¹(e_d·δ_1)`, which lies
/// in `N_radius(B)`, so the kernel radius is at most `max(radius, 1)`.
/// For `d = 1` over `Z^k` the result is zero, since `F_p[Z^k]` is a domain.
pub fn singular_kernel(
    rng: &mut ChaCha8Rng,
    group: &Arc<GroupModel>,
    d: usize,
    p: u64,
    radius: usize,
    chi_terms: usize,
) -> GroupRingKernel {
    let (e, _) = unit_factor(rng, group, d, p, radius);
    let mut proj = FpMatrix::identity(d, p).expect("prime");
    proj.set(d - 1, d - 1, 0);
    let proj = GroupRingKernel::from_terms(group.clone(), d, p, [(group.identity(), proj)]).expect("valid");
    let chi = if chi_terms == 0 {
        GroupRingKernel::identity(group.clone(), d, p).expect("prime")
    } else {
        random_kernel(rng, group, d, p, 1, chi_terms)
    };
    chi.compose(&proj).and_then(|k| k.compose(&e)).expect("compatible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn pairs_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 1..=2 {
            let g = Arc::new(GroupModel::free_abelian(k));
            for d in 1..=3 {
                for p in [2, 3] {
                    let (x, y) = invertible_pair(&mut rng, &g, d, p, 6, 1);
                    assert!(x.check_right_inverse(&y).unwrap());
                    assert!(y.check_right_inverse(&x).unwrap());
                }
            }
        }
    }

    #[test]
    fn singular_kernels_have_small_kernel_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Arc::new(GroupModel::free_abelian(2));
        for _ in 0..10 {
            let d = rng.gen_range(1..=2);
            let phi = singular_kernel(&mut rng, &g, d, 3, 1, 2);
            let r2 = phi.kernel_radius(4).unwrap();
            assert!(matches!(r2, Some(1)), "{r2:?}");
        }
    }
}
