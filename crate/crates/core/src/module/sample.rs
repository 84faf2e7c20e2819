//! Random parameters for tests and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use super::ModuleParams;
use crate::poly::Scalar;

const DENOMINATORS: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn random_rational<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-30..=30), rng.gen_range(1..=12))
}

/// `β` entries with pairwise distinct reduced denominators greater than 1,
/// so no difference is integral; `γ` unrestricted.
pub fn random_generic_params<R: Rng>(rng: &mut R, p: usize) -> ModuleParams {
    assert!(p >= 1 && p <= DENOMINATORS.len());
    let mut dens = DENOMINATORS.to_vec();
    dens.shuffle(rng);
    let beta = dens[..p]
        .iter()
        .map(|&d| {
            let mut n = rng.gen_range(-4 * d..=4 * d);
            while n % d == 0 {
                n += 1;
            }
            Scalar::new(n, d)
        })
        .collect();
    let gamma = (0..2 * p).map(|_| random_rational(rng)).collect();
    ModuleParams::new(beta, gamma).expect("arity is consistent")
}

/// Like [`random_generic_params`] but with `offsets` planted: each
/// `(j, i, n)` forces `γ_j = β_i + n`.
pub fn random_planted_params<R: Rng>(
    rng: &mut R,
    p: usize,
    offsets: &[(usize, usize, i64)],
) -> ModuleParams {
    let mut params = random_generic_params(rng, p);
    // keep unplanted roots off the integral lattice of every β_i
    for j in 0..2 * p {
        while params
            .beta
            .iter()
            .any(|b| (&params.gamma[j] - b).is_integer())
        {
            params.gamma[j] = Scalar::new(rng.gen_range(-30..=30), 23);
        }
    }
    for &(j, i, n) in offsets {
        params.gamma[j] = &params.beta[i] + Scalar::from(n);
    }
    params
}
