//! Transplanting group-ring kernels onto a sofic approximation and counting
//! ranks.
//!
//! For `φ, ψ ∈ Mat_d(F_p[G])` this module picks the radii `r₁`, `r₂`, `r₀`
//! and the tolerance `ε`, builds the finite matrices `φ̄: X^(V') → X^(V)` and
//! `ψ̄: X^(V'') → X^(V')` over an approximation graph, and checks both rank
//! estimates:
//!
//! * lower: if `φψ = 1` then `φ̄ψ̄` is the identity on `V''`, so
//!   `rank φ̄ >= d|V''| >= d|V₀| >= (1-ε)|V|d`;
//! * upper: if `φ` kills a vector supported in `N_{r₀}(B)`, every vertex of a
//!   Weiss selection `V₁` loses at least one dimension, so
//!   `rank φ̄ <= d|V| - |V|/(2|N_{2r₀+1}(B)|) < (1-ε)|V|d`.
//!
//! The two can never both apply to the same `φ`; [`run_experiment`] in
//! [`Mode::Both`] asserts exactly that.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::blocks::BlockMatrix;
use crate::digraph::{DigraphError, VertexSet};
use crate::exactfield::{rank, FpMatrix, Rational};
use crate::groupring::{support_data, GroupRingError, GroupRingKernel};
use crate::groups::{CayleyBall, GroupError, GroupKind, DEFAULT_MAX_BALL};
use crate::sofic::{
    finite_group_approximation, torus_approximation_for, SoficApproximation, SoficError,
    DEFAULT_MAX_VERTICES,
};
use crate::weiss::{weiss_select, WeissError, WeissSelection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("approximation radius {radius} is below 2r0+1 = {needed}")]
    ApproximationTooCoarse { radius: usize, needed: usize },
    #[error("approximation has |V0| = {good} < (1 - {epsilon})·{total}")]
    ApproximationTooSparse {
        good: usize,
        total: usize,
        epsilon: Rational,
    },
    #[error("no kernel vector found in balls up to radius {up_to}")]
    KernelNotFound { up_to: usize },
    #[error("this check needs psi")]
    MissingPsi,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("kernels and approximation use different groups")]
    GroupMismatch,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Sofic(#[from] SoficError),
    #[error(transparent)]
    Weiss(#[from] WeissError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// `1 / (2·d·ball_size + 1)`, strictly below `1 / (2·d·ball_size)`.
pub fn choose_epsilon(d: usize, ball_size: usize) -> Rational {
    Rational::new(1, 2 * d as i128 * ball_size as i128 + 1).expect("positive denominator")
}

/// Default bound for the kernel search: three times the support radius plus three.
pub fn default_kernel_search(phi: &GroupRingKernel) -> usize {
    3 * phi.support_radius() + 3
}

/// Radii and tolerance, computed from the kernels alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferParams {
    pub support_set: Vec<crate::groups::GroupElement>,
    pub r1: usize,
    pub r2: Option<usize>,
    pub r0: usize,
    pub kernel_search_bound: usize,
    pub epsilon: Rational,
}

impl TransferParams {
    pub fn compute(
        phi: &GroupRingKernel,
        psi: Option<&GroupRingKernel>,
        max_kernel_search: usize,
        ball_limit: usize,
    ) -> Result<Self, TransferError> {
        let (support_set, r1) = support_data(phi, psi)?;
        let r2 = phi.kernel_radius_with_limit(max_kernel_search, ball_limit)?;
        let r0 = r2.map_or(r1, |r2| r1.max(r2));
        let big = phi.group().cayley_ball_with_limit(2 * r0 + 1, ball_limit)?;
        Ok(Self {
            support_set,
            r1,
            r2,
            r0,
            kernel_search_bound: max_kernel_search,
            epsilon: choose_epsilon(phi.dim(), big.len()),
        })
    }

    /// Radius an approximation must verify at: `2r₀ + 1`.
    pub fn required_radius(&self) -> usize {
        2 * self.r0 + 1
    }
}

#[derive(Debug, Clone)]
pub struct TransferInstance {
    phi: GroupRingKernel,
    psi: Option<GroupRingKernel>,
    approx: SoficApproximation,
    params: TransferParams,
    /// `N_{2r₀+1}(B)`; `N_{r₀}(B)` and `N_{2r₀}(B)` are its prefixes.
    big_ball: CayleyBall,
    ball_r0: CayleyBall,
    vprime: VertexSet,
    vdoubleprime: VertexSet,
    /// Per `v' ∈ V'` (by position): ball index → vertex, the inverse of `ε_{v'}`.
    walk_maps: Vec<Vec<usize>>,
    /// Per `v' ∈ V'` (by position): vertex → ball index, i.e. `ε_{v'}`.
    eps_maps: Vec<HashMap<usize, usize>>,
}

pub fn build_instance(
    phi: &GroupRingKernel,
    psi: Option<&GroupRingKernel>,
    approx: SoficApproximation,
    max_kernel_search: usize,
) -> Result<TransferInstance, TransferError> {
    let params = TransferParams::compute(phi, psi, max_kernel_search, DEFAULT_MAX_BALL)?;
    build_instance_with(phi, psi, approx, params)
}

/// Builds `V'`, `V''` and the maps `ε_{v'}` for precomputed parameters.
pub fn build_instance_with(
    phi: &GroupRingKernel,
    psi: Option<&GroupRingKernel>,
    approx: SoficApproximation,
    params: TransferParams,
) -> Result<TransferInstance, TransferError> {
    if **approx.group() != **phi.group() {
        return Err(TransferError::GroupMismatch);
    }
    let needed = params.required_radius();
    if approx.radius() < needed {
        return Err(TransferError::ApproximationTooCoarse {
            radius: approx.radius(),
            needed,
        });
    }
    let graph = approx.graph();
    let total = graph.vertex_count();
    let good = approx.good_vertices().len();
    let lhs = Rational::from_integer(good as i128);
    if lhs < (Rational::one() - params.epsilon) * Rational::from_integer(total as i128) {
        return Err(TransferError::ApproximationTooSparse {
            good,
            total,
            epsilon: params.epsilon,
        });
    }
    let group = phi.group();
    let big_ball = group.cayley_ball_with_limit(needed, DEFAULT_MAX_BALL)?;
    let ball_r0 = group.cayley_ball_with_limit(params.r0, DEFAULT_MAX_BALL)?;

    let mut vprime = Vec::new();
    let mut walk_maps = Vec::new();
    for v in 0..total {
        if let Some(map) = graph.ball_isomorphism(v, &ball_r0)? {
            vprime.push(v);
            walk_maps.push(map);
        }
    }
    let vprime = VertexSet::new(vprime);
    let vdoubleprime: VertexSet = vprime
        .iter()
        .zip(&walk_maps)
        .filter(|(_, map)| map.iter().all(|&u| vprime.contains(u)))
        .map(|(v, _)| v)
        .collect();
    if !approx.good_vertices().is_subset(&vdoubleprime) {
        return Err(TransferError::InternalInconsistency(
            "V0 is not contained in V''".into(),
        ));
    }
    let eps_maps = walk_maps
        .iter()
        .map(|map| map.iter().enumerate().map(|(i, &u)| (u, i)).collect())
        .collect();
    Ok(TransferInstance {
        phi: phi.clone(),
        psi: psi.cloned(),
        approx,
        params,
        big_ball,
        ball_r0,
        vprime,
        vdoubleprime,
        walk_maps,
        eps_maps,
    })
}

impl TransferInstance {
    pub fn params(&self) -> &TransferParams {
        &self.params
    }

    pub fn approximation(&self) -> &SoficApproximation {
        &self.approx
    }

    pub fn phi(&self) -> &GroupRingKernel {
        &self.phi
    }

    pub fn psi(&self) -> Option<&GroupRingKernel> {
        self.psi.as_ref()
    }

    pub fn vprime(&self) -> &VertexSet {
        &self.vprime
    }

    pub fn vdoubleprime(&self) -> &VertexSet {
        &self.vdoubleprime
    }

    pub fn big_ball(&self) -> &CayleyBall {
        &self.big_ball
    }

    fn d(&self) -> usize {
        self.phi.dim()
    }

    /// `ε_{v'}(v)` as an element of `N_{r₀}(B)`, or `None` if `v ∉ N_{r₀}(v')`.
    pub fn eps(&self, vprime: usize, v: usize) -> Option<&crate::groups::GroupElement> {
        let pos = self.vprime.position(vprime)?;
        self.eps_maps[pos]
            .get(&v)
            .map(|&i| &self.ball_r0.elements()[i])
    }

    /// `φ̄` with block rows indexed by `V` and block columns by `V'` (positions).
    pub fn bar_phi_blocks(&self) -> BlockMatrix {
        let total = self.approx.graph().vertex_count();
        let mut m = BlockMatrix::new(total, self.vprime.len(), self.d(), self.phi.modulus());
        for (j, map) in self.walk_maps.iter().enumerate() {
            for (i, g) in self.ball_r0.elements().iter().enumerate() {
                if let Some(block) = self.phi.support().get(g) {
                    m.add_block(map[i], j, block);
                }
            }
        }
        m
    }

    /// `ψ̄` with block rows indexed by `V'` and block columns by `V''` (positions).
    pub fn bar_psi_blocks(&self) -> Result<BlockMatrix, TransferError> {
        let psi = self.psi.as_ref().ok_or(TransferError::MissingPsi)?;
        let group = psi.group();
        let mut m = BlockMatrix::new(
            self.vprime.len(),
            self.vdoubleprime.len(),
            self.d(),
            psi.modulus(),
        );
        for (j, map) in self.walk_maps.iter().enumerate() {
            for (i, g) in self.ball_r0.elements().iter().enumerate() {
                let Some(col) = self.vdoubleprime.position(map[i]) else {
                    continue;
                };
                // ψ_{1,g} = ψ(g⁻¹)
                if let Some(block) = psi.support().get(&group.inv_unchecked(g)) {
                    m.add_block(j, col, block);
                }
            }
        }
        Ok(m)
    }

    pub fn build_bar_phi(&self) -> FpMatrix {
        self.bar_phi_blocks().to_dense()
    }

    pub fn build_bar_psi(&self) -> Result<FpMatrix, TransferError> {
        Ok(self.bar_psi_blocks()?.to_dense())
    }

    /// True iff the `V''×V''` part of `φ̄ψ̄` is the identity.
    pub fn verify_transfer_identity(&self) -> Result<bool, TransferError> {
        let product = self.bar_phi_blocks().mul(&self.bar_psi_blocks()?);
        for (c, v1) in self.vdoubleprime.iter().enumerate() {
            let mut diagonal_seen = false;
            for (v2, block) in product.column(c) {
                if !self.vdoubleprime.contains(*v2) {
                    continue;
                }
                if *v2 == v1 {
                    if !block.is_identity() {
                        return Ok(false);
                    }
                    diagonal_seen = true;
                } else {
                    // stored blocks are nonzero
                    return Ok(false);
                }
            }
            if !diagonal_seen && self.d() > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Good vertices for the Weiss selection: vertices of `V''` whose
    /// `(2r₀+1)`-ball is Cayley. Contains `V₀`.
    pub fn weiss_candidates(&self) -> Result<VertexSet, TransferError> {
        let graph = self.approx.graph();
        let mut out = Vec::new();
        for v in self.vdoubleprime.iter() {
            if graph.ball_isomorphism(v, &self.big_ball)?.is_some() {
                out.push(v);
            }
        }
        Ok(VertexSet::new(out))
    }

    pub fn select_weiss(&self) -> Result<WeissSelection, TransferError> {
        let good = self.weiss_candidates()?;
        Ok(weiss_select(
            self.approx.graph(),
            &good,
            self.params.r0,
            &self.big_ball,
        )?)
    }

    /// Compares the `N_{2r₀}(v) × N_{r₀}(v)` block of `φ̄`, pulled back to the
    /// Cayley ball through the isomorphism at `v`, with the restriction of `φ`
    /// from `N_{r₀}(B)` to `N_{2r₀}(B)`.
    pub fn commutative_square_holds(
        &self,
        bar_phi: &BlockMatrix,
        v: usize,
    ) -> Result<bool, TransferError> {
        let Some(map) = self.approx.graph().ball_isomorphism(v, &self.big_ball)? else {
            return Ok(false);
        };
        let r0 = self.params.r0;
        let n_small = self.big_ball.prefix_len(r0);
        let n_large = self.big_ball.prefix_len(2 * r0);
        let cod = self
            .phi
            .group()
            .cayley_ball_with_limit(2 * r0, DEFAULT_MAX_BALL)?;
        let expected = self
            .phi
            .restriction_matrix(&self.ball_r0, &cod)?;
        let d = self.d();
        let zero = FpMatrix::zeros_unchecked(d, d, self.phi.modulus());
        for a in 0..n_small {
            let Some(col) = self.vprime.position(map[a]) else {
                return Ok(false);
            };
            for b in 0..n_large {
                let got = bar_phi.get(map[b], col).unwrap_or(&zero);
                let want = expected.block(b * d, a * d, d, d);
                if *got != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Lower-bound chain `rank φ̄ >= d|V''| >= d|V₀| >= (1-ε)|V|d`.
    pub fn lower_bound_check(&self) -> Result<LowerBoundReport, TransferError> {
        let psi = self.psi.as_ref().ok_or(TransferError::MissingPsi)?;
        if !self.phi.check_right_inverse(psi)? {
            return Err(TransferError::PreconditionFailed(
                "psi is not a right inverse of phi".into(),
            ));
        }
        let identity_on_vpp = self.verify_transfer_identity()?;
        let d = self.d() as i128;
        let total = self.approx.graph().vertex_count() as i128;
        let bar_phi_rank = rank(&self.build_bar_phi());
        let d_vpp = d * self.vdoubleprime.len() as i128;
        let d_v0 = d * self.approx.good_vertices().len() as i128;
        let lower_bound = (Rational::one() - self.params.epsilon) * Rational::from_integer(total * d);
        let chain = [
            bar_phi_rank as i128 >= d_vpp,
            d_vpp >= d_v0,
            Rational::from_integer(d_v0) >= lower_bound,
        ];
        let report = LowerBoundReport {
            identity_on_vpp,
            bar_phi_rank,
            d_times_vpp: d_vpp as usize,
            d_times_v0: d_v0 as usize,
            lower_bound,
            holds: identity_on_vpp && chain.iter().all(|&x| x),
        };
        if !report.holds {
            return Err(TransferError::InternalInconsistency(format!(
                "lower-bound chain failed: identity on V'' = {identity_on_vpp}, chain = {chain:?}"
            )));
        }
        Ok(report)
    }

    /// Upper-bound chain ending in `rank φ̄ < (1-ε)|V|d`, for a `φ` with a
    /// kernel vector inside `N_{r₀}(B)`.
    pub fn upper_bound_check(
        &self,
        weiss: &WeissSelection,
    ) -> Result<UpperBoundReport, TransferError> {
        let Some(r2) = self.params.r2 else {
            return Err(TransferError::KernelNotFound {
                up_to: self.params.kernel_search_bound,
            });
        };
        if weiss.r0 != self.params.r0 {
            return Err(TransferError::PreconditionFailed(format!(
                "Weiss selection uses r0 = {}, instance has r0 = {}",
                weiss.r0, self.params.r0
            )));
        }
        debug_assert!(r2 <= self.params.r0);
        let graph = self.approx.graph();
        let d = self.d();
        let total = graph.vertex_count();
        let ball_r0_len = self.ball_r0.len();
        let bar_phi = self.bar_phi_blocks();

        let eq3_bound = d * ball_r0_len - 1;
        let mut per_vertex = Vec::with_capacity(weiss.selected.len());
        let mut failures = Vec::new();
        for v in weiss.selected.iter() {
            let cols: Vec<usize> = graph
                .neighborhood(v, self.params.r0)?
                .iter()
                .map(|u| self.vprime.position(u).expect("N_r0(v) ⊆ V' for v ∈ V''"))
                .collect();
            let restricted_rank = rank(&bar_phi.dense_columns(&cols));
            let square = self.commutative_square_holds(&bar_phi, v)?;
            if restricted_rank > eq3_bound {
                failures.push(format!("vertex {v}: restricted rank {restricted_rank} > {eq3_bound}"));
            }
            if !square {
                failures.push(format!("vertex {v}: commutative square does not match"));
            }
            per_vertex.push(VertexRank {
                vertex: v,
                restricted_rank,
                square_matches: square,
            });
        }

        let bar_phi_rank = rank(&bar_phi.to_dense());
        let v1 = weiss.selected.len();
        let intermediate_bound = d * self.vprime.len() - v1;
        let ball_big = self.big_ball.len() as i128;
        let upper_bound = Rational::from_integer((d * total) as i128)
            - Rational::new(total as i128, 2 * ball_big).expect("nonzero");
        let strict_bound =
            (Rational::one() - self.params.epsilon) * Rational::from_integer((total * d) as i128);
        let r = Rational::from_integer(bar_phi_rank as i128);
        if bar_phi_rank > intermediate_bound {
            failures.push(format!("rank {bar_phi_rank} > d|V'| - |V1| = {intermediate_bound}"));
        }
        if r > upper_bound {
            failures.push(format!("rank {bar_phi_rank} > {upper_bound}"));
        }
        if r >= strict_bound {
            failures.push(format!("rank {bar_phi_rank} >= (1-eps)|V|d = {strict_bound}"));
        }
        let report = UpperBoundReport {
            weiss: weiss.clone(),
            per_vertex,
            eq3_bound,
            bar_phi_rank,
            intermediate_bound,
            upper_bound,
            strict_bound,
            holds: failures.is_empty(),
        };
        if !failures.is_empty() {
            return Err(TransferError::InternalInconsistency(failures.join("; ")));
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub identity_on_vpp: bool,
    pub bar_phi_rank: usize,
    pub d_times_vpp: usize,
    pub d_times_v0: usize,
    /// `(1-ε)|V|d`.
    pub lower_bound: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRank {
    pub vertex: usize,
    pub restricted_rank: usize,
    pub square_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBoundReport {
    pub weiss: WeissSelection,
    pub per_vertex: Vec<VertexRank>,
    /// `d|N_{r₀}(B)| - 1`.
    pub eq3_bound: usize,
    pub bar_phi_rank: usize,
    /// `d|V'| - |V₁|`.
    pub intermediate_bound: usize,
    /// `d|V| - |V|/(2|N_{2r₀+1}(B)|)`.
    pub upper_bound: Rational,
    /// `(1-ε)|V|d`, which the rank must stay strictly below.
    pub strict_bound: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    LowerHolds,
    UpperHolds,
    /// Neither precondition held (no right inverse given, no kernel found).
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lower,
    Upper,
    Both,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lower" => Ok(Mode::Lower),
            "upper" => Ok(Mode::Upper),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode {other:?} (expected lower, upper or both)")),
        }
    }
}

/// How to obtain the approximation graph.
#[derive(Debug, Clone)]
pub enum ApproxSpec {
    /// `(Z/n)^k`; `None` picks the smallest admissible `n = 2(2r₀+1) + 2`.
    Torus { n: Option<usize> },
    /// The Cayley graph of the (finite) group itself.
    FiniteGroup,
    /// A caller-supplied approximation.
    Given(SoficApproximation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_ball: usize,
    pub max_vertices: usize,
    /// `None` means [`default_kernel_search`].
    pub max_kernel_radius: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_ball: DEFAULT_MAX_BALL,
            max_vertices: DEFAULT_MAX_VERTICES,
            max_kernel_radius: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub mode: Mode,
    pub group: String,
    pub p: u64,
    pub d: usize,
    pub support_set: Vec<String>,
    pub r1: usize,
    pub r2: Option<usize>,
    pub kernel_search_bound: usize,
    pub r0: usize,
    pub epsilon: Rational,
    pub approximation_radius: usize,
    pub vertex_count: usize,
    pub v0_count: usize,
    pub vprime: VertexSet,
    pub vdoubleprime: VertexSet,
    pub psi_is_right_inverse: Option<bool>,
    pub lower: Option<LowerBoundReport>,
    pub upper: Option<UpperBoundReport>,
    pub verdict: Verdict,
}

/// Builds the approximation, the instance and (for upper runs) the Weiss
/// selection, then runs the requested checks.
pub fn run_experiment(
    phi: &GroupRingKernel,
    psi: Option<&GroupRingKernel>,
    approx: ApproxSpec,
    mode: Mode,
    limits: Limits,
) -> Result<TransferReport, TransferError> {
    let search = limits
        .max_kernel_radius
        .unwrap_or_else(|| default_kernel_search(phi));
    let params = TransferParams::compute(phi, psi, search, limits.max_ball)?;
    let psi_is_right_inverse = psi.map(|psi| phi.check_right_inverse(psi)).transpose()?;
    let lower_pre = psi_is_right_inverse == Some(true);
    let upper_pre = params.r2.is_some();
    match mode {
        Mode::Lower if psi.is_none() => return Err(TransferError::MissingPsi),
        Mode::Lower if !lower_pre => {
            return Err(TransferError::PreconditionFailed(
                "psi is not a right inverse of phi".into(),
            ))
        }
        Mode::Upper if !upper_pre => {
            return Err(TransferError::KernelNotFound { up_to: search })
        }
        _ => {}
    }
    if lower_pre && upper_pre {
        return Err(TransferError::InternalInconsistency(format!(
            "phi has a right inverse and a kernel vector in N_{}(B)",
            params.r2.unwrap_or_default()
        )));
    }

    let radius = params.required_radius();
    let group = phi.group().clone();
    let approx = match approx {
        ApproxSpec::Torus { n } => {
            let n = n.unwrap_or(2 * radius + 2);
            torus_approximation_for(group, n, radius, limits.max_vertices)?
        }
        ApproxSpec::FiniteGroup => {
            if !matches!(group.kind(), GroupKind::FiniteByTable(_)) {
                return Err(SoficError::WrongGroupKind("finite").into());
            }
            finite_group_approximation(group, radius)?
        }
        ApproxSpec::Given(a) => a,
    };
    let inst = build_instance_with(phi, psi, approx, params)?;

    let run_lower = lower_pre && matches!(mode, Mode::Lower | Mode::Both);
    let run_upper = upper_pre && matches!(mode, Mode::Upper | Mode::Both);
    let lower = run_lower.then(|| inst.lower_bound_check()).transpose()?;
    let upper = if run_upper {
        let weiss = inst.select_weiss()?;
        Some(inst.upper_bound_check(&weiss)?)
    } else {
        None
    };
    let verdict = match (&lower, &upper) {
        (Some(_), None) => Verdict::LowerHolds,
        (None, Some(_)) => Verdict::UpperHolds,
        (None, None) => Verdict::Neither,
        (Some(_), Some(_)) => unreachable!("preconditions are exclusive here"),
    };
    let p = &inst.params;
    Ok(TransferReport {
        mode,
        group: phi.group().description().to_string(),
        p: phi.modulus(),
        d: phi.dim(),
        support_set: p.support_set.iter().map(ToString::to_string).collect(),
        r1: p.r1,
        r2: p.r2,
        kernel_search_bound: p.kernel_search_bound,
        r0: p.r0,
        epsilon: p.epsilon,
        approximation_radius: inst.approx.radius(),
        vertex_count: inst.approx.graph().vertex_count(),
        v0_count: inst.approx.good_vertices().len(),
        vprime: inst.vprime.clone(),
        vdoubleprime: inst.vdoubleprime.clone(),
        psi_is_right_inverse,
        lower,
        upper,
        verdict,
    })
}
