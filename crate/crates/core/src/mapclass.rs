//! Automorphisms of `H₂(Σ_g × T²)` induced by diffeomorphisms.
//!
//! Every non-diagonal generator is unipotent: it adds integer combinations of
//! coordinates it leaves fixed to other coordinates. So `m^k` is obtained by
//! scaling the increments by `k`, and inverses never need a matrix inversion.
//! The diagonal generators (`SignFlip`, `MirrorH`) are involutions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::homology::{ClassH2, GenusContext};
use crate::matrix::IntMatrix;

/// Largest genus for which [`MoveKind::all`] lists all `2^g - 1` sign patterns.
pub const MAX_SIGN_PATTERN_GENUS: usize = 10;

/// Generator families. Indices are one-based handle numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// Dehn twist along `z_i`: `b_i -= c_i`, `d_i += a_i`.
    Rz(usize),
    /// Dehn twist along `x_i`: `a_i -= d_i`, `c_i += b_i`.
    Rx(usize),
    /// Dehn twist along `z_i + z_j`.
    Rzz(usize, usize),
    /// Dehn twist along `z_i + x_j`.
    Rzx(usize, usize),
    /// Fiber shear: `d_i += e`, `f -= c_i`.
    Dxy(usize),
    /// `c_i += e`, `f -= d_i`.
    Dzt(usize),
    /// `b_i += e`, `f -= a_i`.
    Dxt(usize),
    /// `a_i += e`, `f -= b_i`.
    Dzy(usize),
    /// Torus map `(y, t) ↦ (y, t + y)`.
    Fy,
    /// Torus map `(y, t) ↦ (y + t, t)`.
    Ft,
    /// Negates handle `i` entirely when `signs[i-1] = -1`.
    SignFlip(Vec<i8>),
    /// Product of orientation reversals `z ↦ -z` on the base and `t ↦ -t` on the torus:
    /// `(a, b, c, d, e, f) ↦ (a, b, -c, -d, -e, -f)`.
    MirrorH,
}

impl MoveKind {
    pub fn is_involution(&self) -> bool {
        matches!(self, MoveKind::SignFlip(_) | MoveKind::MirrorH)
    }

    /// Whether the move leaves the `S` coordinate `e` untouched.
    pub fn fixes_e(&self) -> bool {
        !matches!(self, MoveKind::MirrorH)
    }

    pub fn validate(&self, ctx: GenusContext) -> Result<()> {
        match self {
            MoveKind::Rz(i) | MoveKind::Rx(i) | MoveKind::Dxy(i) | MoveKind::Dzt(i) | MoveKind::Dxt(i) | MoveKind::Dzy(i) => {
                ctx.check_index(*i)
            }
            MoveKind::Rzz(i, j) | MoveKind::Rzx(i, j) => {
                ctx.check_index(*i)?;
                ctx.check_index(*j)?;
                if i == j {
                    return Err(Error::InvalidIndex { index: *j, g: ctx.g() });
                }
                Ok(())
            }
            MoveKind::SignFlip(signs) => {
                if signs.len() != ctx.g() {
                    return Err(Error::InvalidMove(alloc::format!(
                        "SignFlip needs {} signs, got {}",
                        ctx.g(),
                        signs.len()
                    )));
                }
                if signs.iter().any(|&s| s != 1 && s != -1) {
                    return Err(Error::InvalidMove(String::from("SignFlip entries must be +1 or -1")));
                }
                Ok(())
            }
            MoveKind::Fy | MoveKind::Ft | MoveKind::MirrorH => Ok(()),
        }
    }

    /// `(target, source, weight)` triples: one application adds `weight·x[source]` to `x[target]`.
    fn increments(&self, ctx: GenusContext) -> Vec<(usize, usize, i64)> {
        let h = |i: usize| 4 * (i - 1);
        let (ei, fi) = (ctx.e_index(), ctx.f_index());
        match *self {
            MoveKind::Rz(i) => {
                let o = h(i);
                vec![(o + 1, o + 2, -1), (o + 3, o, 1)]
            }
            MoveKind::Rx(i) => {
                let o = h(i);
                vec![(o, o + 3, -1), (o + 2, o + 1, 1)]
            }
            MoveKind::Rzz(i, j) => {
                let (p, q) = (h(i), h(j));
                vec![
                    (p + 1, p + 2, -1),
                    (p + 1, q + 2, -1),
                    (p + 3, p, 1),
                    (p + 3, q, 1),
                    (q + 1, p + 2, -1),
                    (q + 1, q + 2, -1),
                    (q + 3, p, 1),
                    (q + 3, q, 1),
                ]
            }
            MoveKind::Rzx(i, j) => {
                let (p, q) = (h(i), h(j));
                vec![
                    (p + 1, p + 2, -1),
                    (p + 1, q + 1, 1),
                    (p + 3, p, 1),
                    (p + 3, q + 3, 1),
                    (q, p, -1),
                    (q, q + 3, -1),
                    (q + 2, p + 2, -1),
                    (q + 2, q + 1, 1),
                ]
            }
            MoveKind::Dxy(i) => vec![(h(i) + 3, ei, 1), (fi, h(i) + 2, -1)],
            MoveKind::Dzt(i) => vec![(h(i) + 2, ei, 1), (fi, h(i) + 3, -1)],
            MoveKind::Dxt(i) => vec![(h(i) + 1, ei, 1), (fi, h(i), -1)],
            MoveKind::Dzy(i) => vec![(h(i), ei, 1), (fi, h(i) + 1, -1)],
            MoveKind::Fy => (1..=ctx.g())
                .flat_map(|i| [(h(i) + 1, h(i) + 3, -1), (h(i) + 2, h(i), 1)])
                .collect(),
            MoveKind::Ft => (1..=ctx.g())
                .flat_map(|i| [(h(i), h(i) + 2, 1), (h(i) + 3, h(i) + 1, -1)])
                .collect(),
            MoveKind::SignFlip(_) | MoveKind::MirrorH => Vec::new(),
        }
    }

    fn negated_slots(&self, ctx: GenusContext) -> Vec<usize> {
        match self {
            MoveKind::SignFlip(signs) => signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s < 0)
                .flat_map(|(k, _)| 4 * k..4 * k + 4)
                .collect(),
            MoveKind::MirrorH => (1..=ctx.g())
                .flat_map(|i| [4 * (i - 1) + 2, 4 * (i - 1) + 3])
                .chain([ctx.e_index(), ctx.f_index()])
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Every generator over `ctx`: all kinds, all valid indices (ordered pairs for
    /// `Rzz`/`Rzx`), and every non-identity sign pattern. Above
    /// [`MAX_SIGN_PATTERN_GENUS`] only single-handle sign flips are listed.
    pub fn all(ctx: GenusContext) -> Vec<MoveKind> {
        let g = ctx.g();
        let mut out = Vec::new();
        for i in 1..=g {
            out.extend([MoveKind::Rz(i), MoveKind::Rx(i)]);
        }
        for i in 1..=g {
            for j in 1..=g {
                if i != j {
                    out.extend([MoveKind::Rzz(i, j), MoveKind::Rzx(i, j)]);
                }
            }
        }
        for i in 1..=g {
            out.extend([MoveKind::Dxy(i), MoveKind::Dzt(i), MoveKind::Dxt(i), MoveKind::Dzy(i)]);
        }
        out.extend([MoveKind::Fy, MoveKind::Ft]);
        if g <= MAX_SIGN_PATTERN_GENUS {
            for mask in 1u64..(1u64 << g) {
                let signs = (0..g).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
                out.push(MoveKind::SignFlip(signs));
            }
        } else {
            for i in 0..g {
                out.push(MoveKind::SignFlip((0..g).map(|k| if k == i { -1 } else { 1 }).collect()));
            }
        }
        out.push(MoveKind::MirrorH);
        out
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::Rz(i) => write!(f, "Rz({i})"),
            MoveKind::Rx(i) => write!(f, "Rx({i})"),
            MoveKind::Rzz(i, j) => write!(f, "Rzz({i},{j})"),
            MoveKind::Rzx(i, j) => write!(f, "Rzx({i},{j})"),
            MoveKind::Dxy(i) => write!(f, "Dxy({i})"),
            MoveKind::Dzt(i) => write!(f, "Dzt({i})"),
            MoveKind::Dxt(i) => write!(f, "Dxt({i})"),
            MoveKind::Dzy(i) => write!(f, "Dzy({i})"),
            MoveKind::Fy => write!(f, "Fy"),
            MoveKind::Ft => write!(f, "Ft"),
            MoveKind::SignFlip(signs) => {
                write!(f, "SignFlip(")?;
                for (k, s) in signs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", if *s < 0 { "-1" } else { "+1" })?;
                }
                write!(f, ")")
            }
            MoveKind::MirrorH => write!(f, "MirrorH"),
        }
    }
}

/// A generator raised to a nonzero integer power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorMove {
    kind: MoveKind,
    exponent: BigInt,
}

impl GeneratorMove {
    pub fn new(kind: MoveKind) -> Self {
        GeneratorMove { kind, exponent: BigInt::one() }
    }

    pub fn with_exponent(kind: MoveKind, exponent: impl Into<BigInt>) -> Result<Self> {
        let exponent = exponent.into();
        if exponent.is_zero() {
            return Err(Error::InvalidMove(String::from("exponent must be nonzero")));
        }
        Ok(GeneratorMove { kind, exponent })
    }

    pub fn kind(&self) -> &MoveKind {
        &self.kind
    }

    pub fn exponent(&self) -> &BigInt {
        &self.exponent
    }

    pub fn inverse(&self) -> Self {
        GeneratorMove { kind: self.kind.clone(), exponent: -&self.exponent }
    }

    pub fn validate(&self, ctx: GenusContext) -> Result<()> {
        self.kind.validate(ctx)
    }

    /// Applies the move to a raw coordinate vector of length `4g + 2`.
    pub(crate) fn apply_coords(&self, coords: &mut [BigInt], ctx: GenusContext) {
        if self.kind.is_involution() {
            if self.exponent.is_odd() {
                for slot in self.kind.negated_slots(ctx) {
                    let v = core::mem::take(&mut coords[slot]);
                    coords[slot] = -v;
                }
            }
            return;
        }
        let k = &self.exponent;
        let deltas: Vec<(usize, BigInt)> = self
            .kind
            .increments(ctx)
            .into_iter()
            .filter(|(_, src, _)| !coords[*src].is_zero())
            .map(|(target, src, w)| (target, &coords[src] * (k * w)))
            .collect();
        for (target, delta) in deltas {
            coords[target] += delta;
        }
    }

    pub fn act(&self, sigma: &ClassH2) -> Result<ClassH2> {
        self.validate(sigma.ctx())?;
        let mut out = sigma.clone();
        self.apply_coords(out.coords_mut(), sigma.ctx());
        Ok(out)
    }

    /// The matrix `M` with `act(σ) = Mσ`; its `j`-th column is the image of the `j`-th basis vector.
    pub fn matrix_of(&self, ctx: GenusContext) -> Result<IntMatrix> {
        self.validate(ctx)?;
        let n = ctx.rank();
        let columns: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut col = vec![BigInt::zero(); n];
                col[j] = BigInt::from(1);
                self.apply_coords(&mut col, ctx);
                col
            })
            .collect();
        IntMatrix::from_columns(&columns)
    }
}

impl From<MoveKind> for GeneratorMove {
    fn from(kind: MoveKind) -> Self {
        GeneratorMove::new(kind)
    }
}

impl fmt::Display for GeneratorMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.exponent.is_one() {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

/// A sequence of moves applied left to right: `[m1, m2]` sends `σ` to `m2(m1(σ))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveWord(pub Vec<GeneratorMove>);

impl MoveWord {
    pub fn new() -> Self {
        MoveWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[GeneratorMove] {
        &self.0
    }

    pub fn push(&mut self, m: GeneratorMove) {
        self.0.push(m);
    }

    pub fn inverse(&self) -> MoveWord {
        MoveWord(self.0.iter().rev().map(GeneratorMove::inverse).collect())
    }

    pub fn validate(&self, ctx: GenusContext) -> Result<()> {
        self.0.iter().try_for_each(|m| m.validate(ctx))
    }

    pub fn apply(&self, sigma: &ClassH2) -> Result<ClassH2> {
        self.validate(sigma.ctx())?;
        let mut out = sigma.clone();
        for m in &self.0 {
            m.apply_coords(out.coords_mut(), sigma.ctx());
        }
        Ok(out)
    }

    pub fn matrix_of(&self, ctx: GenusContext) -> Result<IntMatrix> {
        self.validate(ctx)?;
        let n = ctx.rank();
        let columns: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut col = vec![BigInt::zero(); n];
                col[j] = BigInt::from(1);
                for m in &self.0 {
                    m.apply_coords(&mut col, ctx);
                }
                col
            })
            .collect();
        IntMatrix::from_columns(&columns)
    }
}

impl FromIterator<GeneratorMove> for MoveWord {
    fn from_iter<I: IntoIterator<Item = GeneratorMove>>(iter: I) -> Self {
        MoveWord(iter.into_iter().collect())
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// `MᵀQM = Q` for the intersection form `Q` of `ctx`.
pub fn preserves_q(matrix: &IntMatrix, ctx: GenusContext) -> bool {
    if matrix.dim() != ctx.rank() {
        return false;
    }
    let q = ctx.intersection_matrix();
    match matrix.transpose().mul(&q).and_then(|mtq| mtq.mul(matrix)) {
        Ok(pulled) => pulled == q,
        Err(_) => false,
    }
}

/// Convenience: `preserves_q` applied to a move's matrix.
pub fn move_preserves_q(m: &GeneratorMove, ctx: GenusContext) -> Result<bool> {
    Ok(preserves_q(&m.matrix_of(ctx)?, ctx))
}
