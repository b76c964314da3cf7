//! Candidate automorphisms of the homology lattice: invariance checks, the exotic
//! involution and bounded search for a generator word realizing a given matrix.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::genus::minimal_genus;
use crate::homology::{ClassH2, GenusContext};
use crate::mapclass::{preserves_q, GeneratorMove, MoveKind, MoveWord};
use crate::matrix::IntMatrix;
use crate::sample::random_class;

/// Coordinate bound for the random classes used by [`check_membership_in_h`].
pub const SAMPLE_BOUND: i64 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateAutomorphism {
    pub ctx: GenusContext,
    pub matrix: IntMatrix,
    pub provenance: String,
}

impl CandidateAutomorphism {
    /// Accepts any square matrix of the right size; unimodularity is reported by
    /// [`check_membership_in_h`] rather than enforced, so negative controls can be built.
    pub fn new(ctx: GenusContext, matrix: IntMatrix, provenance: impl Into<String>) -> Result<Self> {
        if matrix.dim() != ctx.rank() {
            return Err(Error::DimensionMismatch { expected: ctx.rank(), found: matrix.dim() });
        }
        Ok(CandidateAutomorphism { ctx, matrix, provenance: provenance.into() })
    }

    pub fn from_move(m: &GeneratorMove, ctx: GenusContext) -> Result<Self> {
        Self::new(ctx, m.matrix_of(ctx)?, alloc::format!("{m}"))
    }

    pub fn from_word(w: &MoveWord, ctx: GenusContext) -> Result<Self> {
        Self::new(ctx, w.matrix_of(ctx)?, alloc::format!("{w}"))
    }

    pub fn apply(&self, sigma: &ClassH2) -> Result<ClassH2> {
        if sigma.ctx() != self.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.g(), right: sigma.g() });
        }
        ClassH2::from_coords(self.ctx, self.matrix.mul_vec(sigma.coords())?)
    }

    pub fn is_involution(&self) -> bool {
        self.matrix.mul(&self.matrix).map(|sq| sq == IntMatrix::identity(self.ctx.rank())).unwrap_or(false)
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    /// `s` with `M(-F) = s(-F)`, if the fiber class is mapped to `±` itself.
    pub fn fiber_sign(&self) -> Option<i64> {
        let col = self.matrix.column(self.ctx.f_index());
        let f = self.ctx.f_index();
        let rest_zero = col.iter().enumerate().all(|(i, v)| i == f || v.is_zero());
        match col[f].to_i64() {
            Some(s @ (1 | -1)) if rest_zero => Some(s),
            _ => None,
        }
    }
}

/// `(a_i, b_i, c_i, d_i, e, f) ↦ (-a_i, -b_i, c_i, d_i, e, f)`; needs `g ≥ 2`.
pub fn exotic_phi(ctx: GenusContext) -> Result<CandidateAutomorphism> {
    if ctx.g() < 2 {
        return Err(Error::UnsupportedContext { g: ctx.g(), reason: "the exotic involution needs g >= 2" });
    }
    let diag: Vec<BigInt> = (0..ctx.rank())
        .map(|k| if k < 4 * ctx.g() && k % 4 < 2 { -BigInt::one() } else { BigInt::one() })
        .collect();
    CandidateAutomorphism::new(ctx, IntMatrix::diagonal(&diag), "exotic involution")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCounterexample {
    pub class: ClassH2,
    pub before: BigInt,
    pub after: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub preserves_q: bool,
    pub determinant: BigInt,
    pub samples_checked: u64,
    pub counterexample: Option<GenusCounterexample>,
}

impl MembershipReport {
    pub fn passes(&self) -> bool {
        self.preserves_q && self.counterexample.is_none()
    }
}

/// Exact `MᵀQM = Q`, plus `G(Mσ) = G(σ)` on `samples` seeded random classes.
/// Sampling stops at the first counterexample.
pub fn check_membership_in_h(phi: &CandidateAutomorphism, samples: u64, seed: u64) -> MembershipReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut counterexample = None;
    for _ in 0..samples {
        let sigma = random_class(&mut rng, phi.ctx, SAMPLE_BOUND);
        let image = phi.apply(&sigma).expect("matching context");
        checked += 1;
        let (before, after) = (minimal_genus(&sigma).value, minimal_genus(&image).value);
        if before != after {
            counterexample = Some(GenusCounterexample { class: sigma, before, after });
            break;
        }
    }
    MembershipReport {
        preserves_q: preserves_q(&phi.matrix, phi.ctx),
        determinant: phi.determinant(),
        samples_checked: checked,
        counterexample,
    }
}

/// Every generator kind with exponent `±1`, one representative per distinct
/// non-identity matrix, in [`MoveKind::all`] order.
pub fn generator_set(ctx: GenusContext) -> Vec<GeneratorMove> {
    let identity = IntMatrix::identity(ctx.rank());
    let mut seen = alloc::collections::BTreeSet::new();
    seen.insert(identity);
    let mut out = Vec::new();
    for kind in MoveKind::all(ctx) {
        for exp in [1i64, -1] {
            let m = GeneratorMove::with_exponent(kind.clone(), exp).expect("nonzero exponent");
            let mat = m.matrix_of(ctx).expect("generated for ctx");
            if seen.insert(mat) {
                out.push(m);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth: usize,
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { depth: 3, node_budget: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// A word whose matrix equals the target; `None` only means none of length ≤ depth.
    pub word: Option<MoveWord>,
    pub nodes: u64,
    pub depth_searched: usize,
    pub generators: usize,
}

/// Row-major `i64` matrix; BFS states stay far below overflow at budgeted depths.
type Dense = Vec<i64>;

/// Sparse rows of a generator matrix: `(row, [(col, value)])`.
struct SparseGen {
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseGen {
    fn new(m: &IntMatrix) -> Self {
        let n = m.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !m.get(i, j).is_zero())
                    .map(|j| (j, m.get(i, j).to_i64().expect("generator entries are small")))
                    .collect()
            })
            .collect();
        SparseGen { rows }
    }

    /// `self · state`, or `None` on overflow.
    fn left_mul(&self, state: &[i64], n: usize) -> Option<Dense> {
        let mut out = vec![0i64; n * n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, w) in row {
                for j in 0..n {
                    let v = state[k * n + j];
                    if v != 0 {
                        out[i * n + j] = out[i * n + j].checked_add(w.checked_mul(v)?)?;
                    }
                }
            }
        }
        Some(out)
    }
}

fn to_dense(m: &IntMatrix) -> Option<Dense> {
    let n = m.dim();
    (0..n * n).map(|k| m.get(k / n, k % n).to_i64()).collect()
}

/// Breadth-first search over words in [`generator_set`] for one whose matrix is `target`.
///
/// States are matrices, deduplicated exactly; the deepest layer is compared against the
/// target but not stored. Exceeding `node_budget` generated states is an error.
pub fn bounded_word_search(target: &CandidateAutomorphism, config: SearchConfig) -> Result<SearchOutcome> {
    let ctx = target.ctx;
    let n = ctx.rank();
    let gens = generator_set(ctx);
    let outcome = |word, nodes, depth| SearchOutcome { word, nodes, depth_searched: depth, generators: gens.len() };
    let Some(goal) = to_dense(&target.matrix) else {
        // entries beyond i64 are unreachable within any budgeted depth
        return Ok(outcome(None, 0, config.depth));
    };
    let sparse: Vec<SparseGen> =
        gens.iter().map(|m| SparseGen::new(&m.matrix_of(ctx).expect("generated for ctx"))).collect();
    let start = to_dense(&IntMatrix::identity(n)).expect("identity fits");
    if start == goal {
        return Ok(outcome(Some(MoveWord::new()), 0, 0));
    }

    // arena of stored states: (parent, generator)
    let mut arena: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    let mut visited: BTreeMap<Dense, usize> = BTreeMap::new();
    visited.insert(start.clone(), 0);
    let mut frontier: Vec<(usize, Dense)> = vec![(0, start)];
    let mut nodes = 0u64;
    let word_of = |arena: &[(usize, usize)], mut at: usize, last: usize| {
        let mut rev = vec![last];
        while arena[at].0 != usize::MAX {
            rev.push(arena[at].1);
            at = arena[at].0;
        }
        rev.iter().rev().map(|&k| gens[k].clone()).collect::<MoveWord>()
    };

    for depth in 1..=config.depth {
        let last_layer = depth == config.depth;
        let mut next = Vec::new();
        for (idx, state) in &frontier {
            for (k, g) in sparse.iter().enumerate() {
                nodes += 1;
                if nodes > config.node_budget {
                    return Err(Error::BudgetExceeded { nodes: nodes - 1, depth_completed: depth - 1 });
                }
                let Some(child) = g.left_mul(state, n) else {
                    return Err(Error::InvalidMove(String::from("matrix entry overflow during search")));
                };
                if child == goal {
                    return Ok(outcome(Some(word_of(&arena, *idx, k)), nodes, depth));
                }
                if last_layer || visited.contains_key(&child) {
                    continue;
                }
                arena.push((*idx, k));
                visited.insert(child.clone(), arena.len() - 1);
                next.push((arena.len() - 1, child));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return Ok(outcome(None, nodes, depth));
        }
    }
    Ok(outcome(None, nodes, config.depth))
}
