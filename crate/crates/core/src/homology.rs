//! Coordinate model of `H₂(Σ_g × T²) ≅ Z^{4g+2}`.
//!
//! A class is stored as `(a₁,b₁,c₁,d₁, …, a_g,b_g,c_g,d_g, e, f)`, the coefficients
//! of `T_{x_i y}, T_{z_i t}, T_{x_i t}, -T_{z_i y}`, the section class `S`, and `-F`
//! where `F` is the fiber torus. Note that `f` is the coefficient of `-F`, not `F`.
//!
//! In this basis the intersection form is hyperbolic, `H^{⊕(2g+1)}`: the pairs
//! `(a_i, b_i)`, `(c_i, d_i)` and `(e, f)` are dual to each other.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::gcd_all;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// The genus `g ≥ 1` of the base surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenusContext {
    g: usize,
}

impl GenusContext {
    pub fn new(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGenus(g));
        }
        Ok(GenusContext { g })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Rank of `H₂`, i.e. `4g + 2`.
    pub fn rank(&self) -> usize {
        4 * self.g + 2
    }

    pub fn e_index(&self) -> usize {
        4 * self.g
    }

    pub fn f_index(&self) -> usize {
        4 * self.g + 1
    }

    /// Zero-based offset of handle `i` (one-based).
    pub(crate) fn handle_offset(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        Ok(4 * (i - 1))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.g {
            Err(Error::InvalidIndex { index: i, g: self.g })
        } else {
            Ok(())
        }
    }

    /// The Gram matrix `H^{⊕(2g+1)}` of the intersection form.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let mut q = IntMatrix::zeros(n);
        for k in 0..n / 2 {
            q.set(2 * k, 2 * k + 1, BigInt::one());
            q.set(2 * k + 1, 2 * k, BigInt::one());
        }
        q
    }
}

/// Named basis slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Txy(usize),
    Tzt(usize),
    Txt(usize),
    MinusTzy(usize),
    S,
    MinusF,
}

/// The `i`-th handle block `(a_i, b_i, c_i, d_i)` of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandleComponent {
    pub index: usize,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl HandleComponent {
    /// `σ_i² = 2(a_i b_i + c_i d_i)`.
    pub fn self_pairing(&self) -> BigInt {
        (&self.a * &self.b + &self.c * &self.d) * 2
    }
}

/// A second homology class of `Σ_g × T²`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassH2 {
    ctx: GenusContext,
    coords: Vec<BigInt>,
}

impl ClassH2 {
    pub fn zero(ctx: GenusContext) -> Self {
        ClassH2 { ctx, coords: vec![BigInt::zero(); ctx.rank()] }
    }

    pub fn from_coords(ctx: GenusContext, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != ctx.rank() {
            return Err(Error::DimensionMismatch { expected: ctx.rank(), found: coords.len() });
        }
        Ok(ClassH2 { ctx, coords })
    }

    /// Convenience constructor from machine integers; `g` is inferred from the length.
    pub fn from_i64s(coords: &[i64]) -> Result<Self> {
        let n = coords.len();
        if n < 6 || (n - 2) % 4 != 0 {
            let expected = if n < 6 { 6 } else { 4 * ((n - 2) / 4) + 2 };
            return Err(Error::DimensionMismatch { expected, found: n });
        }
        let ctx = GenusContext::new((n - 2) / 4)?;
        Ok(ClassH2 { ctx, coords: coords.iter().map(|&x| BigInt::from(x)).collect() })
    }

    pub fn from_parts(ctx: GenusContext, handles: Vec<[BigInt; 4]>, e: BigInt, f: BigInt) -> Result<Self> {
        if handles.len() != ctx.g() {
            return Err(Error::DimensionMismatch { expected: ctx.g(), found: handles.len() });
        }
        let mut coords: Vec<BigInt> = handles.into_iter().flatten().collect();
        coords.push(e);
        coords.push(f);
        Ok(ClassH2 { ctx, coords })
    }

    pub fn basis(kind: BasisKind, ctx: GenusContext) -> Result<Self> {
        let slot = match kind {
            BasisKind::Txy(i) => ctx.handle_offset(i)?,
            BasisKind::Tzt(i) => ctx.handle_offset(i)? + 1,
            BasisKind::Txt(i) => ctx.handle_offset(i)? + 2,
            BasisKind::MinusTzy(i) => ctx.handle_offset(i)? + 3,
            BasisKind::S => ctx.e_index(),
            BasisKind::MinusF => ctx.f_index(),
        };
        let mut class = Self::zero(ctx);
        class.coords[slot] = BigInt::one();
        Ok(class)
    }

    pub fn ctx(&self) -> GenusContext {
        self.ctx
    }

    pub fn g(&self) -> usize {
        self.ctx.g()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [BigInt] {
        &mut self.coords
    }

    pub fn a(&self, i: usize) -> &BigInt {
        &self.coords[4 * (i - 1)]
    }

    pub fn b(&self, i: usize) -> &BigInt {
        &self.coords[4 * (i - 1) + 1]
    }

    pub fn c(&self, i: usize) -> &BigInt {
        &self.coords[4 * (i - 1) + 2]
    }

    pub fn d(&self, i: usize) -> &BigInt {
        &self.coords[4 * (i - 1) + 3]
    }

    pub fn e(&self) -> &BigInt {
        &self.coords[self.ctx.e_index()]
    }

    pub fn f(&self) -> &BigInt {
        &self.coords[self.ctx.f_index()]
    }

    pub fn handle(&self, i: usize) -> Result<HandleComponent> {
        let o = self.ctx.handle_offset(i)?;
        Ok(HandleComponent {
            index: i,
            a: self.coords[o].clone(),
            b: self.coords[o + 1].clone(),
            c: self.coords[o + 2].clone(),
            d: self.coords[o + 3].clone(),
        })
    }

    pub fn handles(&self) -> impl Iterator<Item = HandleComponent> + '_ {
        (1..=self.g()).map(move |i| self.handle(i).expect("index in range"))
    }

    /// The coefficients in `Z^{4g}` of the tensor part (everything except `e`, `f`).
    pub fn tensor_part(&self) -> &[BigInt] {
        &self.coords[..self.ctx.e_index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ClassH2 { ctx: self.ctx, coords: self.coords.iter().map(|x| x * k).collect() }
    }

    fn check_same(&self, other: &ClassH2) -> Result<()> {
        if self.ctx != other.ctx {
            Err(Error::ContextMismatch { left: self.g(), right: other.g() })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &ClassH2) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassH2 { ctx: self.ctx, coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x + y).collect() })
    }

    pub fn checked_sub(&self, other: &ClassH2) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassH2 { ctx: self.ctx, coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x - y).collect() })
    }
}

impl Add for &ClassH2 {
    type Output = ClassH2;

    /// Panics on mismatched contexts; see [`ClassH2::checked_add`].
    fn add(self, rhs: &ClassH2) -> ClassH2 {
        self.checked_add(rhs).expect("classes over the same base genus")
    }
}

impl Sub for &ClassH2 {
    type Output = ClassH2;

    fn sub(self, rhs: &ClassH2) -> ClassH2 {
        self.checked_sub(rhs).expect("classes over the same base genus")
    }
}

impl Neg for &ClassH2 {
    type Output = ClassH2;

    fn neg(self) -> ClassH2 {
        ClassH2 { ctx: self.ctx, coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for ClassH2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.tensor_part().iter().enumerate() {
            if k > 0 {
                write!(f, "{}", if k % 4 == 0 { " ; " } else { "," })?;
            }
            write!(f, "{x}")?;
        }
        write!(f, " | {},{})", self.e(), self.f())
    }
}

/// `Q(σ, τ) = Σ_i (a_i b̃_i + b_i ã_i + c_i d̃_i + d_i c̃_i) + e f̃ + f ẽ`.
pub fn intersect(sigma: &ClassH2, tau: &ClassH2) -> Result<BigInt> {
    sigma.check_same(tau)?;
    let x = &sigma.coords;
    let y = &tau.coords;
    let mut total = BigInt::zero();
    for k in (0..x.len()).step_by(2) {
        total += &x[k] * &y[k + 1] + &x[k + 1] * &y[k];
    }
    Ok(total)
}

/// `σ·σ = 2Σ(a_i b_i + c_i d_i) + 2ef`; always even.
pub fn self_intersection(sigma: &ClassH2) -> BigInt {
    let x = &sigma.coords;
    let half = (0..x.len()).step_by(2).fold(BigInt::zero(), |acc, k| acc + &x[k] * &x[k + 1]);
    half * 2
}

/// `σ·F`. Since the stored coordinate is along `-F` and `S·(-F) = 1`, this is `-e`.
pub fn pair_with_f(sigma: &ClassH2) -> BigInt {
    -sigma.e()
}

/// gcd of all coordinates; zero exactly for the zero class.
pub fn divisibility(sigma: &ClassH2) -> BigInt {
    gcd_all(sigma.coords.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(g: usize) -> GenusContext {
        GenusContext::new(g).unwrap()
    }

    fn cls(c: &[i64]) -> ClassH2 {
        ClassH2::from_i64s(c).unwrap()
    }

    fn i(x: i64) -> BigInt {
        BigInt::from(x)
    }

    // Oracle: explicit σᵀ Q τ using the Gram matrix.
    fn gram_pairing(s: &ClassH2, t: &ClassH2) -> BigInt {
        let q = s.ctx().intersection_matrix();
        let qt = q.mul_vec(t.coords()).unwrap();
        s.coords().iter().zip(&qt).map(|(a, b)| a * b).sum()
    }

    #[test]
    fn genus_zero_rejected() {
        assert_eq!(GenusContext::new(0), Err(Error::InvalidGenus(0)));
    }

    #[test]
    fn orientation_and_fiber_pairing() {
        let c = ctx(1);
        let txy = ClassH2::basis(BasisKind::Txy(1), c).unwrap();
        let tzt = ClassH2::basis(BasisKind::Tzt(1), c).unwrap();
        assert_eq!(intersect(&txy, &tzt).unwrap(), i(1));
        let s = ClassH2::basis(BasisKind::S, c).unwrap();
        let mf = ClassH2::basis(BasisKind::MinusF, c).unwrap();
        assert_eq!(intersect(&s, &mf).unwrap(), i(1));
    }

    #[test]
    fn intersect_example_88() {
        let s = cls(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(gram_pairing(&s, &s), i(88));
        assert_eq!(intersect(&s, &s).unwrap(), i(88));
    }

    #[test]
    fn mismatched_context_is_an_error() {
        let a = ClassH2::zero(ctx(1));
        let b = ClassH2::zero(ctx(2));
        assert_eq!(intersect(&a, &b), Err(Error::ContextMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn self_intersection_examples() {
        assert_eq!(self_intersection(&cls(&[0, 0, 0, 0, 1, 0])), i(0));
        assert_eq!(self_intersection(&cls(&[1, 1, 0, 0, 0, 0])), i(2));
        assert_eq!(self_intersection(&cls(&[2, 3, 0, 0, 0, 0])), i(12));
    }

    #[test]
    fn handle_self_pairing_matches_formula() {
        let h = cls(&[2, 3, 1, -1, 0, 0]).handle(1).unwrap();
        assert_eq!(h.self_pairing(), i(10));
    }

    #[test]
    fn pair_with_f_examples() {
        assert_eq!(pair_with_f(&cls(&[0, 0, 0, 0, 1, 0])), i(-1));
        assert_eq!(pair_with_f(&cls(&[1, 0, 0, 0, 0, 0])), i(0));
        assert_eq!(pair_with_f(&cls(&[0, 0, 0, 0, 3, 7])), i(-3));
        // consistency with the form: σ·F = -(σ·(-F))
        let s = cls(&[4, -1, 2, 5, -3, 8]);
        let mf = ClassH2::basis(BasisKind::MinusF, s.ctx()).unwrap();
        assert_eq!(pair_with_f(&s), -intersect(&s, &mf).unwrap());
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility(&cls(&[0, 0, 0, 0, 0, 0])), i(0));
        assert_eq!(divisibility(&cls(&[2, 0, 0, 0, 4, 0])), i(2));
        assert_eq!(divisibility(&cls(&[6, 10, 15, 0, 0, 0])), i(1));
    }

    #[test]
    fn basis_classes() {
        assert_eq!(ClassH2::basis(BasisKind::Txy(1), ctx(2)).unwrap(), cls(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(ClassH2::basis(BasisKind::S, ctx(1)).unwrap(), cls(&[0, 0, 0, 0, 1, 0]));
        assert_eq!(ClassH2::basis(BasisKind::MinusF, ctx(1)).unwrap(), cls(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(
            ClassH2::basis(BasisKind::Txt(3), ctx(2)),
            Err(Error::InvalidIndex { index: 3, g: 2 })
        );
        assert!(ClassH2::basis(BasisKind::MinusTzy(0), ctx(2)).is_err());
    }

    #[test]
    fn bilinear_symmetric_on_small_box() {
        // exhaustive over a small box for g = 1, with the third class fixed per outer loop
        let vals = [-1i64, 0, 2];
        let mut classes = Vec::new();
        for a in vals {
            for b in vals {
                for c in vals {
                    for e in vals {
                        classes.push(cls(&[a, b, c, a - b, e, c + 1]));
                    }
                }
            }
        }
        let r = cls(&[1, -2, 0, 3, 1, 1]);
        for s in &classes {
            for t in classes.iter().step_by(5) {
                let st = intersect(s, t).unwrap();
                assert_eq!(st, intersect(t, s).unwrap());
                assert_eq!(intersect(&(s + t), &r).unwrap(), intersect(s, &r).unwrap() + intersect(t, &r).unwrap());
                assert_eq!(st, gram_pairing(s, t));
            }
        }
    }

    fn arb_class() -> impl Strategy<Value = ClassH2> {
        (1usize..=4).prop_flat_map(|g| {
            proptest::collection::vec(-50i64..=50, 4 * g + 2).prop_map(|v| cls(&v))
        })
    }

    fn arb_pair() -> impl Strategy<Value = (ClassH2, ClassH2)> {
        (1usize..=4).prop_flat_map(|g| {
            (
                proptest::collection::vec(-50i64..=50, 4 * g + 2),
                proptest::collection::vec(-50i64..=50, 4 * g + 2),
            )
                .prop_map(|(a, b)| (cls(&a), cls(&b)))
        })
    }

    proptest! {
        #[test]
        fn self_intersection_even_and_consistent(s in arb_class()) {
            let sq = self_intersection(&s);
            prop_assert_eq!(&sq % 2, i(0));
            prop_assert_eq!(&sq, &intersect(&s, &s).unwrap());
            let from_handles: BigInt = s.handles().map(|h| h.self_pairing()).sum::<BigInt>() + s.e() * s.f() * 2;
            prop_assert_eq!(sq, from_handles);
        }

        #[test]
        fn intersect_matches_gram_matrix((s, t) in arb_pair()) {
            prop_assert_eq!(intersect(&s, &t).unwrap(), gram_pairing(&s, &t));
        }

        #[test]
        fn divisibility_scales(s in arb_class(), k in -20i64..=20) {
            prop_assert_eq!(divisibility(&s.scale(&i(k))), divisibility(&s) * i(k.abs()));
        }
    }
}
