//! Seeded random classes for invariant checks.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::homology::{ClassH2, GenusContext};

/// Uniform coordinates in `[-bound, bound]`.
pub fn random_class<R: Rng + ?Sized>(rng: &mut R, ctx: GenusContext, bound: i64) -> ClassH2 {
    let coords = (0..ctx.rank()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    ClassH2::from_coords(ctx, coords).expect("rank-sized vector")
}

/// Which branch of the construction a normal-form class exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFamily {
    /// `e ≠ 0`.
    EulerNonzero,
    /// `e = 0`, `σ² ≠ 0`.
    SquareNonzero,
    /// `e = 0`, `σ² = 0`, nonzero and of the form `u⊗v + n(-F)`.
    Decomposable,
    /// `e = 0`, `σ² = 0`, not decomposable.
    Indecomposable,
}

impl ClassFamily {
    pub const ALL: [ClassFamily; 4] =
        [ClassFamily::EulerNonzero, ClassFamily::SquareNonzero, ClassFamily::Decomposable, ClassFamily::Indecomposable];
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound.max(1));
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A random class in full normal form (`b_i = d_i = 0` for `i ≥ 2`, `c₁ = d₁ = 0`,
/// `a₁ | b₁`, `a₁ | e`) belonging to `family`. `g ≥ 2` is required for
/// [`ClassFamily::Indecomposable`], which does not occur when `g = 1`.
pub fn random_normal_class<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: GenusContext,
    family: ClassFamily,
    bound: i64,
) -> Option<ClassH2> {
    let g = ctx.g();
    let mut v = vec![0i64; ctx.rank()];
    let (ei, fi) = (ctx.e_index(), ctx.f_index());
    let fill_tail = |rng: &mut R, v: &mut Vec<i64>| {
        for i in 2..=g {
            v[4 * (i - 1)] = rng.gen_range(-bound..=bound);
            v[4 * (i - 1) + 2] = rng.gen_range(-bound..=bound);
        }
    };
    match family {
        ClassFamily::EulerNonzero => {
            let a1 = nonzero(rng, bound);
            v[0] = a1;
            v[1] = a1 * rng.gen_range(-bound..=bound);
            v[ei] = a1 * nonzero(rng, bound);
            v[fi] = rng.gen_range(-bound..=bound);
            fill_tail(rng, &mut v);
        }
        ClassFamily::SquareNonzero => {
            let a1 = nonzero(rng, bound);
            v[0] = a1;
            v[1] = a1 * nonzero(rng, bound);
            v[fi] = rng.gen_range(-bound..=bound);
            fill_tail(rng, &mut v);
        }
        ClassFamily::Decomposable => {
            // u ⊗ (p, q) with c₁ = u₁ q = 0; the x-part only, since b = d = 0 in normal form
            loop {
                let p = rng.gen_range(-bound..=bound);
                let q = rng.gen_range(-bound..=bound);
                let mut u: Vec<i64> = (0..g).map(|_| rng.gen_range(-bound..=bound)).collect();
                if q != 0 {
                    u[0] = 0;
                }
                for i in 0..g {
                    v[4 * i] = u[i] * p;
                    v[4 * i + 2] = u[i] * q;
                }
                v[fi] = rng.gen_range(-bound..=bound);
                if v.iter().any(|&x| x != 0) {
                    break;
                }
            }
        }
        ClassFamily::Indecomposable => {
            if g < 2 {
                return None;
            }
            loop {
                v[0] = rng.gen_range(-bound..=bound);
                v[fi] = rng.gen_range(-bound..=bound);
                fill_tail(rng, &mut v);
                // (a_i) and (c_i) must be linearly independent
                let independent = (1..=g).any(|i| {
                    (1..=g).any(|j| v[4 * (i - 1)] * v[4 * (j - 1) + 2] != v[4 * (j - 1)] * v[4 * (i - 1) + 2])
                });
                if independent {
                    break;
                }
            }
        }
    }
    Some(ClassH2::from_coords(ctx, v.into_iter().map(BigInt::from).collect()).expect("rank-sized vector"))
}
