//! Classes on `N × S¹` for a nontrivial circle bundle `N → Σ_g` with Euler number `m`.
//!
//! The free part is `Z^{4g}` with the same hyperbolic form as the product case; the
//! fiber class is `m`-torsion, has no section partner, and pairs to zero with everything.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::genus::{rank_one_factor, GenusCase, GenusResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistedContext {
    g: usize,
    m: i64,
}

impl TwistedContext {
    pub fn new(g: usize, m: i64) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGenus(g));
        }
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(TwistedContext { g, m })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// The torsion order `|m|`.
    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.m.unsigned_abs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedClass {
    ctx: TwistedContext,
    handles: Vec<BigInt>,
    fiber: BigInt,
}

impl TwistedClass {
    /// `handles` is the flat `(a₁, b₁, c₁, d₁, …)` list; `fiber` is reduced into `[0, |m|)`.
    pub fn new(ctx: TwistedContext, handles: Vec<BigInt>, fiber: BigInt) -> Result<Self> {
        if handles.len() != 4 * ctx.g {
            return Err(Error::DimensionMismatch { expected: 4 * ctx.g, found: handles.len() });
        }
        let fiber = fiber.mod_floor(&ctx.modulus());
        Ok(TwistedClass { ctx, handles, fiber })
    }

    pub fn from_i64s(ctx: TwistedContext, handles: &[i64], fiber: i64) -> Result<Self> {
        Self::new(ctx, handles.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(fiber))
    }

    pub fn ctx(&self) -> TwistedContext {
        self.ctx
    }

    pub fn handles(&self) -> &[BigInt] {
        &self.handles
    }

    pub fn fiber(&self) -> &BigInt {
        &self.fiber
    }

    pub fn is_zero(&self) -> bool {
        self.fiber.is_zero() && self.handles.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for TwistedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.handles.chunks(4).enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{},{},{},{}", h[0], h[1], h[2], h[3])?;
        }
        write!(f, " | fiber {} mod {})", self.fiber, self.ctx.modulus())
    }
}

/// `2 Σ (a_i b_i + c_i d_i)`.
pub fn twisted_self_intersection(sigma: &TwistedClass) -> BigInt {
    let s: BigInt = sigma.handles.chunks(4).map(|h| &h[0] * &h[1] + &h[2] * &h[3]).sum();
    s * 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedFactorization {
    pub u: Vec<BigInt>,
    pub v: (BigInt, BigInt),
    /// Residue in `[0, |m|)`.
    pub n: BigInt,
}

/// `Some` exactly when the `2g × 2` handle matrix has rank ≤ 1.
pub fn twisted_decompose(sigma: &TwistedClass) -> Option<TwistedFactorization> {
    let (u, p, q) = rank_one_factor(&sigma.handles)?;
    Some(TwistedFactorization { u, v: (p, q), n: sigma.fiber.clone() })
}

pub fn twisted_minimal_genus(sigma: &TwistedClass) -> GenusResult {
    if sigma.is_zero() {
        return GenusResult { value: BigInt::zero(), case: GenusCase::Zero };
    }
    let sq = twisted_self_intersection(sigma);
    if !sq.is_zero() {
        return GenusResult { value: BigInt::one() + sq.abs() / 2, case: GenusCase::AdjunctionCase };
    }
    if twisted_decompose(sigma).is_some() {
        GenusResult { value: BigInt::one(), case: GenusCase::TorusCase }
    } else {
        GenusResult { value: BigInt::from(2), case: GenusCase::OtherwiseCase }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn ctx(g: usize, m: i64) -> TwistedContext {
        TwistedContext::new(g, m).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn context_rejects_bad_parameters() {
        assert_eq!(TwistedContext::new(1, 0), Err(Error::ZeroModulus));
        assert_eq!(TwistedContext::new(0, 3), Err(Error::InvalidGenus(0)));
        assert_eq!(ctx(2, -5).modulus(), big(5));
    }

    #[test]
    fn self_intersection_examples() {
        let fib = TwistedClass::from_i64s(ctx(1, 3), &[0, 0, 0, 0], 2).unwrap();
        assert_eq!(twisted_self_intersection(&fib), big(0));
        let hyp = TwistedClass::from_i64s(ctx(1, 3), &[1, 1, 0, 0], 0).unwrap();
        assert_eq!(twisted_self_intersection(&hyp), big(2));
        let s = TwistedClass::from_i64s(ctx(1, 7), &[2, 3, 1, -1], 5).unwrap();
        assert_eq!(twisted_self_intersection(&s), big(10));
    }

    #[test]
    fn genus_examples() {
        let c = ctx(2, 3);
        let zero = TwistedClass::from_i64s(c, &[0; 8], 0).unwrap();
        assert_eq!(twisted_minimal_genus(&zero).case, GenusCase::Zero);
        let fib = TwistedClass::from_i64s(c, &[0; 8], 1).unwrap();
        assert_eq!(twisted_minimal_genus(&fib), GenusResult { value: big(1), case: GenusCase::TorusCase });
        let other = TwistedClass::from_i64s(c, &[1, 0, 0, 0, 0, 0, 1, 0], 0).unwrap();
        assert_eq!(twisted_minimal_genus(&other), GenusResult { value: big(2), case: GenusCase::OtherwiseCase });
        let adj = TwistedClass::from_i64s(c, &[2, 3, 0, 0, 0, 0, 0, 0], 2).unwrap();
        assert_eq!(twisted_minimal_genus(&adj), GenusResult { value: big(7), case: GenusCase::AdjunctionCase });
    }

    #[test]
    fn decompose_examples() {
        let z = TwistedClass::from_i64s(ctx(1, 5), &[0, 0, 0, 0], 3).unwrap();
        let t = twisted_decompose(&z).unwrap();
        assert_eq!(t.u, vec![big(0), big(0)]);
        assert_eq!(t.v, (big(0), big(0)));
        assert_eq!(t.n, big(3));
        let r1 = TwistedClass::from_i64s(ctx(1, 5), &[2, -15, 5, 6], 4).unwrap();
        let t = twisted_decompose(&r1).unwrap();
        assert_eq!(t.u, vec![big(1), big(-3)]);
        assert_eq!(t.v, (big(2), big(5)));
        let r2 = TwistedClass::from_i64s(ctx(2, 5), &[1, 0, 0, 0, 0, 0, 1, 0], 4).unwrap();
        assert!(twisted_decompose(&r2).is_none());
    }

    #[test]
    fn fiber_is_modular() {
        let c = ctx(1, -4);
        let a = TwistedClass::from_i64s(c, &[1, 0, 2, 0], 3).unwrap();
        let b = TwistedClass::from_i64s(c, &[1, 0, 2, 0], 3 - 4 * 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.fiber(), &big(3));
        let z = TwistedClass::from_i64s(c, &[0; 4], 8).unwrap();
        assert!(z.is_zero());
    }

    proptest! {
        #[test]
        fn lower_bound_with_gap_at_most_one(
            g in 1usize..=3, m in prop_oneof![Just(2i64), Just(3), Just(5), Just(-3)],
            raw in proptest::collection::vec(-5i64..=5, 12), fiber in -20i64..=20,
        ) {
            let c = ctx(g, m);
            let sigma = TwistedClass::from_i64s(c, &raw[..4 * g], fiber).unwrap();
            prop_assume!(!sigma.is_zero());
            let bound = BigInt::one() + twisted_self_intersection(&sigma).abs() / 2;
            let gap = twisted_minimal_genus(&sigma).value - bound;
            prop_assert!(gap == big(0) || gap == big(1));
        }

        #[test]
        fn shifting_fiber_by_m_is_identity(
            raw in proptest::collection::vec(-5i64..=5, 8), fiber in -20i64..=20, k in -5i64..=5,
        ) {
            let c = ctx(2, 5);
            let a = TwistedClass::from_i64s(c, &raw, fiber).unwrap();
            let b = TwistedClass::from_i64s(c, &raw, fiber + 5 * k).unwrap();
            prop_assert_eq!(twisted_minimal_genus(&a), twisted_minimal_genus(&b));
            prop_assert_eq!(a, b);
        }
    }
}
