//! Euler characteristic and homology bookkeeping for cut-and-paste surface
//! constructions, and scripted replays that realize the minimal genus of a
//! normal-form class.
//!
//! Nothing here checks embeddings. Each operation only tracks `(genus, class)` and
//! enforces the numeric preconditions under which the geometric operation exists.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::genus::decompose_tensor;
use crate::homology::{intersect, self_intersection, BasisKind, ClassH2, GenusContext};
use crate::normalform::{is_normal, NormalForm};

/// Default cap on the number of pieces a replay may create.
pub const DEFAULT_REPLAY_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePiece {
    pub genus: BigInt,
    pub cls: ClassH2,
    pub label: String,
}

impl SurfacePiece {
    pub fn new(genus: BigInt, cls: ClassH2, label: impl Into<String>) -> Result<Self> {
        if genus.is_negative() {
            return Err(Error::SurfacePrecondition(format!("negative genus {genus}")));
        }
        Ok(SurfacePiece { genus, cls, label: label.into() })
    }

    pub fn torus(cls: ClassH2, label: impl Into<String>) -> Self {
        SurfacePiece { genus: BigInt::one(), cls, label: label.into() }
    }

    pub fn euler_characteristic(&self) -> BigInt {
        euler_of_genus(&self.genus)
    }
}

impl fmt::Display for SurfacePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [genus {}] {}", self.label, self.genus, self.cls)
    }
}

fn euler_of_genus(g: &BigInt) -> BigInt {
    BigInt::from(2) - g * 2
}

/// Genus of a connected closed surface with Euler characteristic `chi`, if one exists.
fn genus_of_euler(chi: &BigInt) -> Option<BigInt> {
    let twice = BigInt::from(2) - chi;
    (twice.is_even() && !twice.is_negative()).then(|| twice / 2)
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::SurfacePrecondition(format!("circle sum sign must be +1 or -1, got {sign}")))
    }
}

fn check_ctx(p: &SurfacePiece, q: &SurfacePiece) -> Result<()> {
    if p.cls.g() != q.cls.g() {
        return Err(Error::ContextMismatch { left: p.cls.g(), right: q.cls.g() });
    }
    Ok(())
}

/// Genus `g(p) + g(q) - 1`, class `[p] + sign·[q]`. Both inputs need positive genus.
pub fn circle_sum(p: &SurfacePiece, q: &SurfacePiece, sign: i8) -> Result<SurfacePiece> {
    check_sign(sign)?;
    check_ctx(p, q)?;
    if p.genus.is_zero() || q.genus.is_zero() {
        return Err(Error::SurfacePrecondition("circle sum needs surfaces of positive genus".to_owned()));
    }
    let cls = if sign > 0 { &p.cls + &q.cls } else { &p.cls - &q.cls };
    Ok(SurfacePiece { genus: &p.genus + &q.genus - 1, cls, label: p.label.clone() })
}

/// Smooths `k ≥ 1` transverse intersection points of one sign; the algebraic
/// intersection number must therefore be `±k`. Genus `g(p) + g(q) + k - 1`.
pub fn smooth_intersections(p: &SurfacePiece, q: &SurfacePiece, k: &BigInt) -> Result<SurfacePiece> {
    check_ctx(p, q)?;
    if !k.is_positive() {
        return Err(Error::SurfacePrecondition(format!("smoothing needs k >= 1, got {k}")));
    }
    let pairing = intersect(&p.cls, &q.cls)?;
    if &pairing.abs() != k {
        return Err(Error::SurfacePrecondition(format!(
            "smoothing {k} points of one sign needs |intersection| = {k}, got {pairing}"
        )));
    }
    Ok(SurfacePiece { genus: &p.genus + &q.genus + k - 1, cls: &p.cls + &q.cls, label: p.label.clone() })
}

/// `k ≥ 1` copies of `p`.
pub fn parallel_copies(p: &SurfacePiece, k: u64) -> Result<Vec<SurfacePiece>> {
    if k == 0 {
        return Err(Error::SurfacePrecondition("parallel copies need k >= 1".to_owned()));
    }
    Ok((0..k).map(|_| p.clone()).collect())
}

/// Genus `g(p) + g(q)`, class `[p] + [q]`.
pub fn connected_sum(p: &SurfacePiece, q: &SurfacePiece) -> Result<SurfacePiece> {
    check_ctx(p, q)?;
    Ok(SurfacePiece { genus: &p.genus + &q.genus, cls: &p.cls + &q.cls, label: p.label.clone() })
}

/// Replaces `sheets` disks of `p` (one per transverse point with a fiber `{pt} × T²`)
/// by copies of a genus `g - 1` surface with one boundary circle. The class is unchanged.
pub fn extend_over_base(p: &SurfacePiece, sheets: &BigInt) -> Result<SurfacePiece> {
    if sheets.is_negative() {
        return Err(Error::SurfacePrecondition(format!("negative sheet count {sheets}")));
    }
    let g = BigInt::from(p.cls.g() as u64 - 1);
    Ok(SurfacePiece { genus: &p.genus + g * sheets, cls: p.cls.clone(), label: p.label.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceOp {
    Create,
    ParallelCopies { k: u64 },
    CircleSum { sign: i8 },
    Smooth { k: BigInt },
    ConnectedSum,
    ExtendOverBase { sheets: BigInt },
}

impl fmt::Display for SurfaceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceOp::Create => write!(f, "create"),
            SurfaceOp::ParallelCopies { k } => write!(f, "parallel_copies(k={k})"),
            SurfaceOp::CircleSum { sign } => write!(f, "circle_sum({})", if *sign > 0 { '+' } else { '-' }),
            SurfaceOp::Smooth { k } => write!(f, "smooth(k={k})"),
            SurfaceOp::ConnectedSum => write!(f, "connected_sum"),
            SurfaceOp::ExtendOverBase { sheets } => write!(f, "extend_over_base(sheets={sheets})"),
        }
    }
}

/// One move with its inputs and the resulting piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub op: SurfaceOp,
    pub inputs: Vec<SurfacePiece>,
    pub output: SurfacePiece,
}

impl fmt::Display for TranscriptEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.op)?;
        for p in &self.inputs {
            write!(f, " <{p}>")?;
        }
        write!(f, " => {}", self.output)
    }
}

/// Live pieces plus the log of every move that produced them.
///
/// Invariant: the sum of live piece classes equals the sum of all created classes
/// combined with the signs requested by circle sums.
#[derive(Clone, Debug, Default)]
pub struct SurfaceInventory {
    pieces: Vec<Option<SurfacePiece>>,
    transcript: Vec<TranscriptEntry>,
}

/// Handle to a live piece of a [`SurfaceInventory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PieceId(usize);

impl SurfaceInventory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pieces(&self) -> impl Iterator<Item = &SurfacePiece> {
        self.pieces.iter().flatten()
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    pub fn into_transcript(self) -> Vec<TranscriptEntry> {
        self.transcript
    }

    pub fn get(&self, id: PieceId) -> Result<&SurfacePiece> {
        self.pieces
            .get(id.0)
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::SurfacePrecondition(format!("piece {} is not live", id.0)))
    }

    fn take(&mut self, id: PieceId) -> Result<SurfacePiece> {
        self.get(id)?;
        Ok(self.pieces[id.0].take().expect("checked live"))
    }

    fn push(&mut self, op: SurfaceOp, inputs: Vec<SurfacePiece>, output: SurfacePiece) -> PieceId {
        self.transcript.push(TranscriptEntry { op, inputs, output: output.clone() });
        self.pieces.push(Some(output));
        PieceId(self.pieces.len() - 1)
    }

    pub fn create(&mut self, piece: SurfacePiece) -> PieceId {
        self.push(SurfaceOp::Create, Vec::new(), piece)
    }

    /// Adds `k - 1` further copies of `id`; returns all `k` handles, `id` first.
    pub fn parallel_copies(&mut self, id: PieceId, k: u64) -> Result<Vec<PieceId>> {
        let p = self.get(id)?.clone();
        let copies = parallel_copies(&p, k)?;
        let mut ids = Vec::with_capacity(copies.len());
        ids.push(id);
        for c in copies.into_iter().skip(1) {
            ids.push(self.push(SurfaceOp::ParallelCopies { k }, alloc::vec![p.clone()], c));
        }
        Ok(ids)
    }

    pub fn circle_sum(&mut self, p: PieceId, q: PieceId, sign: i8) -> Result<PieceId> {
        let out = circle_sum(self.get(p)?, self.get(q)?, sign)?;
        let inputs = alloc::vec![self.take(p)?, self.take(q)?];
        Ok(self.push(SurfaceOp::CircleSum { sign }, inputs, out))
    }

    pub fn smooth(&mut self, p: PieceId, q: PieceId, k: &BigInt) -> Result<PieceId> {
        let out = smooth_intersections(self.get(p)?, self.get(q)?, k)?;
        let inputs = alloc::vec![self.take(p)?, self.take(q)?];
        Ok(self.push(SurfaceOp::Smooth { k: k.clone() }, inputs, out))
    }

    pub fn connected_sum(&mut self, p: PieceId, q: PieceId) -> Result<PieceId> {
        let out = connected_sum(self.get(p)?, self.get(q)?)?;
        let inputs = alloc::vec![self.take(p)?, self.take(q)?];
        Ok(self.push(SurfaceOp::ConnectedSum, inputs, out))
    }

    pub fn extend_over_base(&mut self, p: PieceId, sheets: &BigInt) -> Result<PieceId> {
        let out = extend_over_base(self.get(p)?, sheets)?;
        let inputs = alloc::vec![self.take(p)?];
        Ok(self.push(SurfaceOp::ExtendOverBase { sheets: sheets.clone() }, inputs, out))
    }

    /// `k` parallel copies of `piece` merged by same-sign circle sums into one piece.
    pub fn copies_summed(&mut self, piece: SurfacePiece, k: u64) -> Result<PieceId> {
        let first = self.create(piece);
        let ids = self.parallel_copies(first, k)?;
        let mut acc = ids[0];
        for &id in &ids[1..] {
            acc = self.circle_sum(acc, id, 1)?;
        }
        Ok(acc)
    }
}

fn fail(index: usize, msg: &str) -> Error {
    Error::SurfacePrecondition(format!("transcript entry {index}: {msg}"))
}

/// Recomputes every entry's output from its inputs using Euler characteristic
/// accounting and class arithmetic, independently of the operations above.
pub fn verify_transcript(entries: &[TranscriptEntry]) -> Result<()> {
    for (idx, entry) in entries.iter().enumerate() {
        let out = &entry.output;
        if out.genus.is_negative() {
            return Err(fail(idx, "negative genus"));
        }
        let chi: Vec<BigInt> = entry.inputs.iter().map(SurfacePiece::euler_characteristic).collect();
        let arity = match entry.op {
            SurfaceOp::Create => 0,
            SurfaceOp::ParallelCopies { .. } | SurfaceOp::ExtendOverBase { .. } => 1,
            _ => 2,
        };
        if entry.inputs.len() != arity {
            return Err(fail(idx, "wrong number of inputs"));
        }
        let (expected_chi, expected_cls) = match &entry.op {
            SurfaceOp::Create => continue,
            SurfaceOp::ParallelCopies { k } => {
                if *k == 0 {
                    return Err(fail(idx, "zero copies"));
                }
                (chi[0].clone(), entry.inputs[0].cls.clone())
            }
            SurfaceOp::CircleSum { sign } => {
                check_sign(*sign)?;
                if entry.inputs.iter().any(|p| p.genus.is_zero()) {
                    return Err(fail(idx, "circle sum of a sphere"));
                }
                let q = &entry.inputs[1].cls;
                let q = if *sign > 0 { q.clone() } else { -q };
                (&chi[0] + &chi[1], entry.inputs[0].cls.checked_add(&q)?)
            }
            SurfaceOp::Smooth { k } => {
                let pairing = intersect(&entry.inputs[0].cls, &entry.inputs[1].cls)?;
                if !k.is_positive() || &pairing.abs() != k {
                    return Err(fail(idx, "smoothing count disagrees with intersection number"));
                }
                (&chi[0] + &chi[1] - k * 2, entry.inputs[0].cls.checked_add(&entry.inputs[1].cls)?)
            }
            SurfaceOp::ConnectedSum => {
                (&chi[0] + &chi[1] - 2, entry.inputs[0].cls.checked_add(&entry.inputs[1].cls)?)
            }
            SurfaceOp::ExtendOverBase { sheets } => {
                let input = &entry.inputs[0];
                if &input.cls.e().abs() != sheets {
                    return Err(fail(idx, "sheet count differs from |σ·F|"));
                }
                let g = BigInt::from(input.cls.g() as u64 - 1);
                (&chi[0] - g * sheets * 2, input.cls.clone())
            }
        };
        if genus_of_euler(&expected_chi).as_ref() != Some(&out.genus) {
            return Err(fail(idx, "genus disagrees with Euler characteristic"));
        }
        if expected_cls != out.cls {
            return Err(fail(idx, "class not conserved"));
        }
    }
    Ok(())
}

/// Which construction a replay ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReplayScript {
    Zero,
    EulerNonzero,
    SquareNonzero,
    Decomposable,
    Indecomposable,
}

impl fmt::Display for ReplayScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReplayScript::Zero => "zero",
            ReplayScript::EulerNonzero => "euler-nonzero",
            ReplayScript::SquareNonzero => "square-nonzero",
            ReplayScript::Decomposable => "decomposable",
            ReplayScript::Indecomposable => "indecomposable",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub genus: BigInt,
    pub script: ReplayScript,
    pub surface: SurfacePiece,
    pub transcript: Vec<TranscriptEntry>,
}

pub fn replay_construction(sigma: &ClassH2) -> Result<Replay> {
    replay_construction_with_limit(sigma, DEFAULT_REPLAY_LIMIT)
}

/// Runs the construction matching `sigma`'s case. `sigma` must be in full normal form.
pub fn replay_construction_with_limit(sigma: &ClassH2, limit: u64) -> Result<Replay> {
    if !is_normal(sigma, NormalForm::Full) {
        return Err(Error::NotNormal);
    }
    let ctx = sigma.ctx();
    let mut inv = SurfaceInventory::new();
    let script = if sigma.is_zero() {
        ReplayScript::Zero
    } else if !sigma.e().is_zero() {
        ReplayScript::EulerNonzero
    } else if !self_intersection(sigma).is_zero() {
        ReplayScript::SquareNonzero
    } else if decompose_tensor(sigma).is_some() {
        ReplayScript::Decomposable
    } else {
        ReplayScript::Indecomposable
    };
    let planned = planned_pieces(sigma, script);
    if planned > BigInt::from(limit) {
        return Err(Error::ReplayTooLarge { pieces: planned, limit });
    }
    let id = match script {
        ReplayScript::Zero => inv.create(SurfacePiece::new(BigInt::zero(), ClassH2::zero(ctx), "sphere in a ball")?),
        ReplayScript::EulerNonzero => euler_script(&mut inv, sigma)?,
        ReplayScript::SquareNonzero => square_script(&mut inv, sigma)?,
        ReplayScript::Decomposable => tensor_torus(&mut inv, sigma, "torus")?,
        ReplayScript::Indecomposable => indecomposable_script(&mut inv, sigma)?,
    };
    let surface = inv.get(id)?.clone();
    if surface.cls != *sigma {
        return Err(Error::SurfacePrecondition(format!("replay produced {} instead of {sigma}", surface.cls)));
    }
    Ok(Replay { genus: surface.genus.clone(), script, surface, transcript: inv.into_transcript() })
}

fn count(x: &BigInt) -> u64 {
    x.abs().to_u64().expect("counts are bounded by the replay limit")
}

fn tail_content(sigma: &ClassH2) -> BigInt {
    (2..=sigma.g()).map(|i| sigma.a(i).gcd(sigma.c(i))).sum()
}

fn tensor_pieces(sigma: &ClassH2) -> BigInt {
    match decompose_tensor(sigma) {
        Some(t) => t.div_v() + t.n.abs(),
        None => BigInt::zero(),
    }
}

fn planned_pieces(sigma: &ClassH2, script: ReplayScript) -> BigInt {
    match script {
        ReplayScript::Zero => BigInt::one(),
        ReplayScript::EulerNonzero => {
            let (a1, e, f) = (sigma.a(1), sigma.e(), sigma.f());
            let b_prime = -(e * f) / a1;
            a1.gcd(f) + (sigma.b(1) - b_prime).abs() + tail_content(sigma)
        }
        ReplayScript::SquareNonzero => {
            sigma.a(1).abs() + sigma.b(1).abs() + sigma.f().abs() + tail_content(sigma)
        }
        ReplayScript::Decomposable => tensor_pieces(sigma),
        ReplayScript::Indecomposable => {
            let (a_part, c_part) = split_indecomposable(sigma);
            tensor_pieces(&a_part) + tensor_pieces(&c_part)
        }
    }
}

fn class_with(ctx: GenusContext, entries: &[(BasisKind, &BigInt)]) -> ClassH2 {
    let mut cls = ClassH2::zero(ctx);
    for (kind, v) in entries {
        let basis = ClassH2::basis(*kind, ctx).expect("valid basis index");
        cls = &cls + &basis.scale(v);
    }
    cls
}

fn sign_of(x: &BigInt) -> BigInt {
    if x.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// Circle-sums, into `main`, `m_i` copies of the primitive torus in direction
/// `(a_i/m_i) T_{x_i y} + (c_i/m_i) T_{x_i t}` for each `i ≥ 2`.
fn attach_tail(inv: &mut SurfaceInventory, sigma: &ClassH2, mut main: PieceId) -> Result<PieceId> {
    let ctx = sigma.ctx();
    for i in 2..=sigma.g() {
        let m = sigma.a(i).gcd(sigma.c(i));
        if m.is_zero() {
            continue;
        }
        let cls = class_with(ctx, &[(BasisKind::Txy(i), &(sigma.a(i) / &m)), (BasisKind::Txt(i), &(sigma.c(i) / &m))]);
        let t = inv.copies_summed(SurfacePiece::torus(cls, format!("T_{i}")), count(&m))?;
        main = inv.circle_sum(main, t, 1)?;
    }
    Ok(main)
}

fn attach_fiber(inv: &mut SurfaceInventory, f: &BigInt, main: PieceId) -> Result<PieceId> {
    if f.is_zero() {
        return Ok(main);
    }
    let ctx = inv.get(main)?.cls.ctx();
    let fiber = class_with(ctx, &[(BasisKind::MinusF, &sign_of(f))]);
    let t = inv.copies_summed(SurfacePiece::torus(fiber, "fiber"), count(f))?;
    inv.circle_sum(main, t, 1)
}

/// `e ≠ 0`: a torus of square zero carrying `e` and `f`, extended over the base,
/// then corrected in the `b₁` slot by smoothing copies of `T_{z₁t}`.
fn euler_script(inv: &mut SurfaceInventory, sigma: &ClassH2) -> Result<PieceId> {
    let ctx = sigma.ctx();
    let (a1, b1, e, f) = (sigma.a(1), sigma.b(1), sigma.e(), sigma.f());
    let (e_over_a, rem) = e.div_rem(a1);
    if !rem.is_zero() {
        return Err(Error::SurfacePrecondition(format!("a₁ = {a1} does not divide e = {e}")));
    }
    let b_prime = -(&e_over_a * f);
    let n = a1.gcd(f);
    let tilde = class_with(
        ctx,
        &[(BasisKind::Txy(1), &(a1 / &n)), (BasisKind::Tzt(1), &(&b_prime / &n)), (BasisKind::S, &(e / &n)), (BasisKind::MinusF, &(f / &n))],
    );
    debug_assert!(self_intersection(&tilde).is_zero());
    let torus = inv.copies_summed(SurfacePiece::torus(tilde, "main"), count(&n))?;
    let mut main = inv.extend_over_base(torus, &e.abs())?;
    let delta = b1 - &b_prime;
    if !delta.is_zero() {
        let cls = class_with(ctx, &[(BasisKind::Tzt(1), &sign_of(&delta))]);
        let k = a1.abs();
        for _ in 0..count(&delta) {
            let t = inv.create(SurfacePiece::torus(cls.clone(), "T_z1t"));
            main = inv.smooth(main, t, &k)?;
        }
    }
    attach_tail(inv, sigma, main)
}

/// `e = 0`, `σ² ≠ 0`: `a₁T_{x₁y}` and `b₁T_{z₁t}` meet in `|a₁b₁|` points of one sign.
fn square_script(inv: &mut SurfaceInventory, sigma: &ClassH2) -> Result<PieceId> {
    let ctx = sigma.ctx();
    let (a1, b1) = (sigma.a(1), sigma.b(1));
    let x = inv.copies_summed(SurfacePiece::torus(class_with(ctx, &[(BasisKind::Txy(1), &sign_of(a1))]), "a1 T_x1y"), count(a1))?;
    let z = inv.copies_summed(SurfacePiece::torus(class_with(ctx, &[(BasisKind::Tzt(1), &sign_of(b1))]), "b1 T_z1t"), count(b1))?;
    let main = inv.smooth(x, z, &(a1 * b1).abs())?;
    let main = attach_fiber(inv, sigma.f(), main)?;
    attach_tail(inv, sigma, main)
}

/// `u ⊗ v + n(-F)` as one torus: `div(v)` copies of the primitive torus plus `|n|` fibers.
fn tensor_torus(inv: &mut SurfaceInventory, sigma: &ClassH2, label: &str) -> Result<PieceId> {
    let t = decompose_tensor(sigma).ok_or_else(|| Error::SurfacePrecondition(format!("{sigma} is not decomposable")))?;
    let l = t.div_v();
    if l.is_zero() || t.u.iter().all(Zero::is_zero) {
        let fiber = class_with(sigma.ctx(), &[(BasisKind::MinusF, &sign_of(&t.n))]);
        return inv.copies_summed(SurfacePiece::torus(fiber, label), count(&t.n));
    }
    let primitive = crate::genus::TensorFactorization {
        u: t.u.clone(),
        v: (&t.v.0 / &l, &t.v.1 / &l),
        n: BigInt::zero(),
    }
    .reconstruct(sigma.ctx())?;
    let main = inv.copies_summed(SurfacePiece::torus(primitive, label), count(&l))?;
    attach_fiber(inv, &t.n, main)
}

/// `(Σ a_i T_{x_i y} + f(-F), Σ c_i T_{x_i t})` for a class with all `b_i = d_i = 0`.
fn split_indecomposable(sigma: &ClassH2) -> (ClassH2, ClassH2) {
    let ctx = sigma.ctx();
    let mut a_part = ClassH2::zero(ctx);
    let mut c_part = ClassH2::zero(ctx);
    for i in 1..=sigma.g() {
        a_part = &a_part + &class_with(ctx, &[(BasisKind::Txy(i), sigma.a(i))]);
        c_part = &c_part + &class_with(ctx, &[(BasisKind::Txt(i), sigma.c(i))]);
    }
    a_part = &a_part + &class_with(ctx, &[(BasisKind::MinusF, sigma.f())]);
    (a_part, c_part)
}

/// `e = 0`, `σ² = 0`, rank 2: two tori joined by a tube.
fn indecomposable_script(inv: &mut SurfaceInventory, sigma: &ClassH2) -> Result<PieceId> {
    if !sigma.b(1).is_zero() {
        return Err(Error::SurfacePrecondition("expected b₁ = 0 when σ² = e = 0".to_owned()));
    }
    let (a_part, c_part) = split_indecomposable(sigma);
    let a = tensor_torus(inv, &a_part, "A")?;
    let c = tensor_torus(inv, &c_part, "B")?;
    inv.connected_sum(a, c)
}
