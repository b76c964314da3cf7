//! The minimal genus function, the decomposability test, the adjunction lower
//! bound and the derived complexity functions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::homology::{self_intersection, ClassH2, GenusContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusCase {
    Zero,
    AdjunctionCase,
    TorusCase,
    OtherwiseCase,
}

impl GenusCase {
    pub fn name(self) -> &'static str {
        match self {
            GenusCase::Zero => "Zero",
            GenusCase::AdjunctionCase => "AdjunctionCase",
            GenusCase::TorusCase => "TorusCase",
            GenusCase::OtherwiseCase => "OtherwiseCase",
        }
    }
}

impl fmt::Display for GenusCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusResult {
    pub value: BigInt,
    pub case: GenusCase,
}

/// `σ = u ⊗ (p, q) + n(-F)`.
///
/// `u` lists the coefficients of `x₁, z₁, …, x_g, z_g`. It is zero or primitive
/// with first nonzero entry positive; `v = (p, q)` carries the content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFactorization {
    pub u: Vec<BigInt>,
    pub v: (BigInt, BigInt),
    pub n: BigInt,
}

impl TensorFactorization {
    /// `a_i = α_i p`, `c_i = α_i q`, `b_i = β_i q`, `d_i = -β_i p`, `e = 0`, `f = n`.
    pub fn reconstruct(&self, ctx: GenusContext) -> Result<ClassH2> {
        if self.u.len() != 2 * ctx.g() {
            return Err(Error::DimensionMismatch { expected: 2 * ctx.g(), found: self.u.len() });
        }
        let (p, q) = &self.v;
        let mut coords = Vec::with_capacity(ctx.rank());
        for pair in self.u.chunks(2) {
            let (alpha, beta) = (&pair[0], &pair[1]);
            coords.push(alpha * p);
            coords.push(beta * q);
            coords.push(alpha * q);
            coords.push(-(beta * p));
        }
        coords.push(BigInt::zero());
        coords.push(self.n.clone());
        ClassH2::from_coords(ctx, coords)
    }

    /// `div(u)`: 1 for nonzero `u`, 0 otherwise.
    pub fn div_u(&self) -> BigInt {
        gcd_all(&self.u)
    }

    pub fn div_v(&self) -> BigInt {
        self.v.0.gcd(&self.v.1)
    }
}

/// Factors the `2g × 2` matrix with columns `y = (a₁, -d₁, …)` and `t = (c₁, b₁, …)`
/// as `u · (p, q)` when it has rank ≤ 1. `handles` is the flat `(a, b, c, d)` list.
pub(crate) fn rank_one_factor(handles: &[BigInt]) -> Option<(Vec<BigInt>, BigInt, BigInt)> {
    let g = handles.len() / 4;
    let y: Vec<BigInt> = handles.chunks(4).flat_map(|h| [h[0].clone(), -&h[3]]).collect();
    let t: Vec<BigInt> = handles.chunks(4).flat_map(|h| [h[2].clone(), h[1].clone()]).collect();
    let w = if y.iter().any(|x| !x.is_zero()) {
        &y
    } else if t.iter().any(|x| !x.is_zero()) {
        &t
    } else {
        return Some((vec![BigInt::zero(); 2 * g], BigInt::zero(), BigInt::zero()));
    };
    let content = gcd_all(w);
    let lead = w.iter().position(|x| !x.is_zero())?;
    let content = if w[lead].is_negative() { -content } else { content };
    let u: Vec<BigInt> = w.iter().map(|x| x / &content).collect();
    let multiple = |col: &[BigInt]| -> Option<BigInt> {
        let k = &col[lead] / &u[lead];
        col.iter().zip(&u).all(|(c, ui)| *c == ui * &k).then_some(k)
    };
    let p = multiple(&y)?;
    let q = multiple(&t)?;
    Some((u, p, q))
}

/// `Some` exactly when `e = 0` and the handle coefficient matrix has rank ≤ 1.
pub fn decompose_tensor(sigma: &ClassH2) -> Option<TensorFactorization> {
    if !sigma.e().is_zero() {
        return None;
    }
    let (u, p, q) = rank_one_factor(sigma.tensor_part())?;
    Some(TensorFactorization { u, v: (p, q), n: sigma.f().clone() })
}

fn bound_value(sigma: &ClassH2) -> BigInt {
    let g = BigInt::from(sigma.g() as u64 - 1);
    BigInt::one() + self_intersection(sigma).abs() / 2 + g * sigma.e().abs()
}

pub fn minimal_genus(sigma: &ClassH2) -> GenusResult {
    if sigma.is_zero() {
        return GenusResult { value: BigInt::zero(), case: GenusCase::Zero };
    }
    if !self_intersection(sigma).is_zero() || !sigma.e().is_zero() {
        return GenusResult { value: bound_value(sigma), case: GenusCase::AdjunctionCase };
    }
    if decompose_tensor(sigma).is_some() {
        GenusResult { value: BigInt::one(), case: GenusCase::TorusCase }
    } else {
        GenusResult { value: BigInt::from(2), case: GenusCase::OtherwiseCase }
    }
}

/// `1 + |σ²|/2 + (g-1)|σ·F|`, defined on nonzero classes.
pub fn adjunction_bound(sigma: &ClassH2) -> Result<BigInt> {
    if sigma.is_zero() {
        return Err(Error::ZeroClass);
    }
    Ok(bound_value(sigma))
}

fn require_g_at_least_2(sigma: &ClassH2) -> Result<()> {
    if sigma.g() < 2 {
        return Err(Error::UnsupportedContext { g: sigma.g(), reason: "requires g >= 2" });
    }
    Ok(())
}

/// `2(g-1)|σ·F|`.
pub fn thurston_norm_pushforward(sigma: &ClassH2) -> Result<BigInt> {
    require_g_at_least_2(sigma)?;
    Ok(BigInt::from(2 * (sigma.g() as u64 - 1)) * sigma.e().abs())
}

/// `x(σ) = |σ²| + 2(g-1)|σ·F|`.
pub fn complexity_x(sigma: &ClassH2) -> Result<BigInt> {
    Ok(self_intersection(sigma).abs() + thurston_norm_pushforward(sigma)?)
}

/// Equals `x(σ)` except on [`GenusCase::OtherwiseCase`], where it is 2.
pub fn complexity_xc(sigma: &ClassH2) -> Result<BigInt> {
    let x = complexity_x(sigma)?;
    Ok(match minimal_genus(sigma).case {
        GenusCase::OtherwiseCase => BigInt::from(2),
        _ => x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::BasisKind;
    use crate::mapclass::{GeneratorMove, MoveKind};
    use crate::sample::random_class;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cls(v: &[i64]) -> ClassH2 {
        ClassH2::from_i64s(v).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Rank ≤ 1 by checking every 2×2 minor of the handle matrix.
    fn minors_vanish(sigma: &ClassH2) -> bool {
        let g = sigma.g();
        let rows: Vec<(BigInt, BigInt)> = (1..=g)
            .flat_map(|i| [(sigma.a(i).clone(), sigma.c(i).clone()), (-sigma.d(i), sigma.b(i).clone())])
            .collect();
        rows.iter().all(|(r0, r1)| rows.iter().all(|(s0, s1)| r0 * s1 == r1 * s0))
    }

    #[test]
    fn decompose_examples() {
        let t = decompose_tensor(&cls(&[1, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(t.u, vec![big(1), big(0)]);
        assert_eq!(t.v, (big(1), big(0)));
        assert_eq!(t.n, big(0));

        let sigma = cls(&[2, -15, 5, 6, 0, 4]);
        let t = decompose_tensor(&sigma).unwrap();
        assert_eq!(t.u, vec![big(1), big(-3)]);
        assert_eq!(t.v, (big(2), big(5)));
        assert_eq!(t.n, big(4));
        assert_eq!(t.reconstruct(sigma.ctx()).unwrap(), sigma);

        assert!(decompose_tensor(&cls(&[1, 1, 0, 0, 0, 0])).is_none());
        assert!(decompose_tensor(&cls(&[0, 0, 0, 0, 1, 0])).is_none());
    }

    #[test]
    fn pure_fiber_and_zero_are_decomposable() {
        let t = decompose_tensor(&cls(&[0, 0, 0, 0, 0, 0, 0, 0, 0, -7])).unwrap();
        assert_eq!(t.u, vec![big(0); 4]);
        assert_eq!(t.v, (big(0), big(0)));
        assert_eq!(t.n, big(-7));
        assert!(decompose_tensor(&cls(&[0, 0, 0, 0, 0, 0])).is_some());
    }

    #[test]
    fn genus_examples() {
        for g in 1..=4 {
            let ctx = GenusContext::new(g).unwrap();
            let z = minimal_genus(&ClassH2::zero(ctx));
            assert_eq!((z.value, z.case), (big(0), GenusCase::Zero));
            let s = minimal_genus(&ClassH2::basis(BasisKind::S, ctx).unwrap());
            assert_eq!((s.value, s.case), (big(g as i64), GenusCase::AdjunctionCase));
            let f = minimal_genus(&ClassH2::basis(BasisKind::MinusF, ctx).unwrap());
            assert_eq!((f.value, f.case), (big(1), GenusCase::TorusCase));
        }
        let other = cls(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 0]);
        let r = minimal_genus(&other);
        assert_eq!((r.value, r.case), (big(2), GenusCase::OtherwiseCase));
        assert_eq!(adjunction_bound(&other).unwrap(), big(1));

        let mut v = vec![0i64; 14];
        v[0] = 2;
        v[1] = 3;
        let r = minimal_genus(&cls(&v));
        assert_eq!((r.value, r.case), (big(7), GenusCase::AdjunctionCase));
    }

    #[test]
    fn bound_and_complexity_examples() {
        let ctx2 = GenusContext::new(2).unwrap();
        let ctx3 = GenusContext::new(3).unwrap();
        let s2 = ClassH2::basis(BasisKind::S, ctx2).unwrap();
        assert_eq!(adjunction_bound(&s2).unwrap(), big(2));
        assert_eq!(adjunction_bound(&ClassH2::zero(ctx2)), Err(Error::ZeroClass));
        assert_eq!(complexity_x(&s2).unwrap(), big(2));
        let other = cls(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(complexity_x(&other).unwrap(), big(0));
        assert_eq!(complexity_xc(&other).unwrap(), big(2));
        let torus = cls(&[3, 0, 0, 0, 6, 0, 0, 0, 0, 2]);
        assert_eq!(complexity_x(&torus).unwrap(), big(0));
        assert_eq!(complexity_xc(&torus).unwrap(), big(0));

        assert_eq!(thurston_norm_pushforward(&ClassH2::basis(BasisKind::S, ctx3).unwrap()).unwrap(), big(4));
        assert_eq!(thurston_norm_pushforward(&ClassH2::basis(BasisKind::Txy(1), ctx2).unwrap()).unwrap(), big(0));
        assert_eq!(thurston_norm_pushforward(&s2.scale(&big(5))).unwrap(), big(10));

        let g1 = cls(&[0, 0, 0, 0, 1, 0]);
        assert!(matches!(complexity_x(&g1), Err(Error::UnsupportedContext { g: 1, .. })));
        assert!(matches!(complexity_xc(&g1), Err(Error::UnsupportedContext { .. })));
        assert!(matches!(thurston_norm_pushforward(&g1), Err(Error::UnsupportedContext { .. })));
    }

    #[test]
    fn rank_test_matches_minors_on_box() {
        // every g = 1 class in [-2, 2]^6
        let mut v = [-2i64; 6];
        loop {
            let sigma = cls(&v);
            let expected = sigma.e().is_zero() && minors_vanish(&sigma);
            assert_eq!(decompose_tensor(&sigma).is_some(), expected, "{sigma}");
            if let Some(t) = decompose_tensor(&sigma) {
                assert_eq!(t.reconstruct(sigma.ctx()).unwrap(), sigma);
            }
            let Some(k) = v.iter().position(|&x| x < 2) else { break };
            v[k] += 1;
            for x in &mut v[..k] {
                *x = -2;
            }
        }
    }

    #[test]
    fn g1_never_otherwise() {
        let mut v = [-3i64; 6];
        loop {
            let sigma = cls(&v);
            assert_ne!(minimal_genus(&sigma).case, GenusCase::OtherwiseCase, "{sigma}");
            let Some(k) = v.iter().position(|&x| x < 3) else { break };
            v[k] += 1;
            for x in &mut v[..k] {
                *x = -3;
            }
        }
    }

    #[test]
    fn invariant_under_generators_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in 1..=3 {
            let ctx = GenusContext::new(g).unwrap();
            let moves = MoveKind::all(ctx);
            for _ in 0..200 {
                let sigma = random_class(&mut rng, ctx, 9);
                let base = minimal_genus(&sigma).value;
                for kind in &moves {
                    for exp in [1, -1] {
                        let m = GeneratorMove::with_exponent(kind.clone(), exp).unwrap();
                        assert_eq!(minimal_genus(&m.act(&sigma).unwrap()).value, base);
                    }
                }
            }
        }
    }

    fn arb_class() -> impl Strategy<Value = ClassH2> {
        (1usize..=3).prop_flat_map(|g| {
            proptest::collection::vec(-6i64..=6, 4 * g + 2).prop_map(|v| ClassH2::from_i64s(&v).unwrap())
        })
    }

    fn arb_rank_one() -> impl Strategy<Value = ClassH2> {
        (1usize..=3).prop_flat_map(|g| {
            (proptest::collection::vec(-5i64..=5, 2 * g), -5i64..=5, -5i64..=5, -9i64..=9).prop_map(
                move |(u, p, q, n)| {
                    let t = TensorFactorization {
                        u: u.into_iter().map(BigInt::from).collect(),
                        v: (BigInt::from(p), BigInt::from(q)),
                        n: BigInt::from(n),
                    };
                    t.reconstruct(GenusContext::new(g).unwrap()).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn gap_law(sigma in arb_class()) {
            prop_assume!(!sigma.is_zero());
            let r = minimal_genus(&sigma);
            let gap = &r.value - adjunction_bound(&sigma).unwrap();
            prop_assert!(gap == big(0) || gap == big(1));
            prop_assert_eq!(gap == big(1), r.case == GenusCase::OtherwiseCase);
        }

        #[test]
        fn case_invariants(sigma in arb_class()) {
            let r = minimal_genus(&sigma);
            prop_assert_eq!(r.case == GenusCase::Zero, sigma.is_zero());
            prop_assert_eq!(r.value.is_zero(), sigma.is_zero());
            if r.case == GenusCase::TorusCase { prop_assert_eq!(r.value.clone(), big(1)); }
            if r.case == GenusCase::OtherwiseCase { prop_assert_eq!(r.value.clone(), big(2)); }
        }

        #[test]
        fn outer_products_factor_and_reconstruct(sigma in arb_rank_one()) {
            let t = decompose_tensor(&sigma).expect("rank one by construction");
            prop_assert_eq!(t.reconstruct(sigma.ctx()).unwrap(), sigma);
            prop_assert!(t.div_u() <= big(1));
            if let Some(first) = t.u.iter().find(|x| !x.is_zero()) {
                prop_assert!(first.is_positive());
            }
        }

        #[test]
        fn decomposition_matches_minors(sigma in arb_class()) {
            let expected = sigma.e().is_zero() && minors_vanish(&sigma);
            prop_assert_eq!(decompose_tensor(&sigma).is_some(), expected);
        }

        #[test]
        fn complexity_matches_genus(sigma in arb_class()) {
            prop_assume!(sigma.g() >= 2 && !sigma.is_zero());
            let g = minimal_genus(&sigma).value;
            prop_assert_eq!(complexity_xc(&sigma).unwrap(), 2 * g - 2);
        }
    }
}
