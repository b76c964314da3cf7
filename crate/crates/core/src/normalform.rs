//! Reduction of a class to a normal form by generator moves.
//!
//! [`reduce_handles`] clears `b_i, d_i` for every handle `i ≥ 2`;
//! [`full_normalize`] additionally brings handle 1 to `(a₁, b₁, 0, 0)` with
//! `a₁ | b₁` and `a₁ | e`. Both return the move word that realizes the
//! reduction, so the result can be re-checked by replaying the word.
//!
//! Within a handle the twists `Rz(i)`, `Rx(i)` act by the same `SL₂(Z)` matrix on
//! the two vectors `p = (a, -d)` and `q = (c, b)` (the `y`- and `t`-components of
//! the handle in the `(x_i, z_i)` basis). `Fy`/`Ft` act on the torus side, i.e.
//! on the columns of the 2×2 matrix `[[a, c], [-d, b]]`. Every reduction below is
//! a Euclidean algorithm driven by these row and column operations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{divides, sign};
use crate::homology::ClassH2;
use crate::mapclass::{GeneratorMove, MoveKind, MoveWord};

/// Which normal form a predicate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `b_i = d_i = 0` for all `i ≥ 2`.
    HandlesReduced,
    /// Additionally `c₁ = d₁ = 0`, `a₁ | b₁` and `a₁ | e` (with `0 | x` iff `x = 0`).
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    pub normal: ClassH2,
    pub word: MoveWord,
    /// Labelled snapshots, starting with the input.
    pub phase_log: Vec<(String, ClassH2)>,
}

pub fn is_normal(sigma: &ClassH2, form: NormalForm) -> bool {
    let handles_ok = (2..=sigma.g()).all(|i| sigma.b(i).is_zero() && sigma.d(i).is_zero());
    match form {
        NormalForm::HandlesReduced => handles_ok,
        NormalForm::Full => {
            handles_ok
                && sigma.c(1).is_zero()
                && sigma.d(1).is_zero()
                && divides(sigma.a(1), sigma.b(1))
                && divides(sigma.a(1), sigma.e())
        }
    }
}

/// `Σ_{i≥2} (|b_i| + |d_i|)`, which reaches zero exactly on the handle-reduced form.
pub fn handle_measure(sigma: &ClassH2) -> BigInt {
    (2..=sigma.g()).map(|i| sigma.b(i).abs() + sigma.d(i).abs()).sum()
}

pub fn reduce_handles(sigma: &ClassH2) -> NormalizationResult {
    let mut r = Reducer::new(sigma);
    r.reduce_handles();
    r.finish()
}

pub fn full_normalize(sigma: &ClassH2) -> NormalizationResult {
    let mut r = Reducer::new(sigma);
    r.reduce_handles();
    r.reduce_first_handle();
    r.finish()
}

/// A pair of coordinates driven by one Euclidean reduction.
#[derive(Clone, Copy)]
enum Axis {
    /// `(a_i, -d_i)`, rows moved by `Rx(i)` / `Rz(i)`.
    Y(usize),
    /// `(c_i, b_i)`, rows moved by `Rx(i)` / `Rz(i)`.
    T(usize),
    /// `(a₁, c₁)`, columns moved by `Ft` / `Fy`.
    FirstRow,
}

struct Reducer {
    cur: ClassH2,
    word: MoveWord,
    log: Vec<(String, ClassH2)>,
}

impl Reducer {
    fn new(sigma: &ClassH2) -> Self {
        Reducer { cur: sigma.clone(), word: MoveWord::new(), log: vec![(String::from("input"), sigma.clone())] }
    }

    fn finish(self) -> NormalizationResult {
        NormalizationResult { normal: self.cur, word: self.word, phase_log: self.log }
    }

    fn snapshot(&mut self, label: String) {
        self.log.push((label, self.cur.clone()));
    }

    /// Applies `kind^power`; a zero power is a no-op.
    fn step(&mut self, kind: MoveKind, power: &BigInt) {
        if power.is_zero() {
            return;
        }
        let m = GeneratorMove::with_exponent(kind, power.clone()).expect("nonzero power");
        let ctx = self.cur.ctx();
        m.apply_coords(self.cur.coords_mut(), ctx);
        self.word.push(m);
    }

    fn xz(&self, axis: Axis) -> (BigInt, BigInt) {
        let c = &self.cur;
        match axis {
            Axis::Y(i) => (c.a(i).clone(), -c.d(i)),
            Axis::T(i) => (c.c(i).clone(), c.b(i).clone()),
            Axis::FirstRow => (c.a(1).clone(), c.c(1).clone()),
        }
    }

    /// `z -= k·x`
    fn z_step(&mut self, axis: Axis, k: &BigInt) {
        match axis {
            Axis::Y(i) | Axis::T(i) => self.step(MoveKind::Rz(i), k),
            Axis::FirstRow => self.step(MoveKind::Fy, &-k),
        }
    }

    /// `x += k·z`
    fn x_step(&mut self, axis: Axis, k: &BigInt) {
        match axis {
            Axis::Y(i) | Axis::T(i) => self.step(MoveKind::Rx(i), k),
            Axis::FirstRow => self.step(MoveKind::Ft, k),
        }
    }

    /// Euclid on `(x, z)` until `z = 0`; afterwards `|x| = gcd(x, z)`.
    fn euclid(&mut self, axis: Axis) {
        loop {
            let (x, z) = self.xz(axis);
            if z.is_zero() {
                return;
            }
            if x.is_zero() {
                self.x_step(axis, &BigInt::from(sign(&z)));
            } else if x.abs() <= z.abs() {
                self.z_step(axis, &(&z / &x));
            } else {
                self.x_step(axis, &-(&x / &z));
            }
        }
    }

    /// Negates all four coordinates of handle `i` using `(Rx Rz Rx)²`.
    fn negate_handle(&mut self, i: usize) {
        let one = BigInt::from(1);
        for _ in 0..2 {
            self.step(MoveKind::Rx(i), &one);
            self.step(MoveKind::Rz(i), &one);
            self.step(MoveKind::Rx(i), &one);
        }
    }

    fn make_a_nonnegative(&mut self, i: usize) {
        if self.cur.a(i).is_negative() {
            self.negate_handle(i);
        }
    }

    fn reduce_handles(&mut self) {
        for i in (2..=self.cur.g()).rev() {
            if self.cur.b(i).is_zero() && self.cur.d(i).is_zero() {
                continue;
            }
            let h = self.cur.handle(i).expect("valid handle");
            if h.self_pairing().is_zero() {
                // p and q are parallel: clearing the z-part of a nonzero one clears both
                if h.a.is_zero() && h.d.is_zero() {
                    self.euclid(Axis::T(i));
                } else {
                    self.euclid(Axis::Y(i));
                }
            } else {
                self.euclid(Axis::Y(1));
                self.euclid(Axis::Y(i));
                // d₁ = d_i = a₁ + a_i, so both handles share gcd(a₁, a_i)
                self.step(MoveKind::Rzz(1, i), &BigInt::from(1));
                self.euclid(Axis::Y(1));
                self.make_a_nonnegative(1);
                self.euclid(Axis::Y(i));
                self.make_a_nonnegative(i);
                debug_assert_eq!(self.cur.a(1), self.cur.a(i));
                // a_i ← a_i - a₁ - d_i = 0, leaving handle i with σ_i² = 0
                self.step(MoveKind::Rzx(1, i), &BigInt::from(1));
                self.euclid(Axis::T(i));
            }
            debug_assert!(self.cur.b(i).is_zero() && self.cur.d(i).is_zero());
            self.snapshot(alloc::format!("handle {i} cleared"));
        }
    }

    /// Assumes handles `i ≥ 2` are reduced. `Fy`/`Ft` keep them reduced since they only
    /// add `a_i` to `c_i` and `c_i` to `a_i` when `b_i = d_i = 0`.
    fn reduce_first_handle(&mut self) {
        self.euclid(Axis::Y(1));
        if !self.cur.e().is_zero() {
            // d₁ = e puts e into the gcd of handle 1
            self.step(MoveKind::Dxy(1), &BigInt::from(1));
            self.snapshot(String::from("e folded into handle 1"));
        }
        let one = BigInt::from(1);
        loop {
            self.euclid(Axis::Y(1));
            self.euclid(Axis::FirstRow);
            if !(self.cur.c(1).is_zero() && self.cur.d(1).is_zero()) {
                continue;
            }
            let (a, b) = (self.cur.a(1), self.cur.b(1));
            if divides(a, b) {
                break;
            }
            // c₁ ← b₁; the next pass lowers |a₁| to gcd(a₁, b₁)
            self.step(MoveKind::Rx(1), &one);
        }
        self.make_a_nonnegative(1);
        self.snapshot(String::from("handle 1 diagonalized"));
    }
}
