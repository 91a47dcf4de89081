//! Arithmetic in `Mat_d(F_p[G])`.
//!
//! An equivariant endomorphism `φ` of `X^(G)`, `X = F_p^d`, is stored by its
//! identity column: `support(g) = φ_{g,1}`. Every other entry follows from
//! equivariance, `φ_{g₂,g₁} = support(g₁⁻¹g₂)`. Zero blocks are never stored,
//! so two kernels are equal exactly when their support maps are equal.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::{rank, FieldError, FpMatrix};
use crate::groups::{CayleyBall, GroupElement, GroupError, GroupModel, DEFAULT_MAX_BALL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupRingError {
    #[error("incompatible kernels: {0}")]
    ParameterMismatch(String),
    #[error("coefficient at {element} is {rows}x{cols}, expected {d}x{d}")]
    BadCoefficient {
        element: GroupElement,
        rows: usize,
        cols: usize,
        d: usize,
    },
    #[error("codomain ball of radius {codomain} cannot hold the image of radius {domain} (support radius {support})")]
    CodomainTooSmall {
        domain: usize,
        codomain: usize,
        support: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct GroupRingKernel {
    group: Arc<GroupModel>,
    d: usize,
    p: u64,
    support: BTreeMap<GroupElement, FpMatrix>,
}

impl PartialEq for GroupRingKernel {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && self.p == other.p
            && *self.group == *other.group
            && self.support == other.support
    }
}

impl Eq for GroupRingKernel {}

impl GroupRingKernel {
    pub fn zero(group: Arc<GroupModel>, d: usize, p: u64) -> Result<Self, GroupRingError> {
        FpMatrix::zeros(0, 0, p)?;
        Ok(Self {
            group,
            d,
            p,
            support: BTreeMap::new(),
        })
    }

    pub fn identity(group: Arc<GroupModel>, d: usize, p: u64) -> Result<Self, GroupRingError> {
        let id = group.identity();
        Self::from_terms(group, d, p, [(id, FpMatrix::identity(d, p)?)])
    }

    /// Sums the given terms; coefficients that cancel are dropped.
    pub fn from_terms(
        group: Arc<GroupModel>,
        d: usize,
        p: u64,
        terms: impl IntoIterator<Item = (GroupElement, FpMatrix)>,
    ) -> Result<Self, GroupRingError> {
        let mut k = Self::zero(group, d, p)?;
        for (g, m) in terms {
            if !k.group.contains(&g) {
                return Err(GroupError::ForeignElement(g).into());
            }
            if m.modulus() != p {
                return Err(FieldError::ModulusMismatch(m.modulus(), p).into());
            }
            if m.rows() != d || m.cols() != d {
                return Err(GroupRingError::BadCoefficient {
                    element: g,
                    rows: m.rows(),
                    cols: m.cols(),
                    d,
                });
            }
            k.add_term(g, &m);
        }
        Ok(k)
    }

    /// `I + c·g·E_{ij}` with `i != j`: an elementary matrix with a monomial entry.
    pub fn elementary(
        group: Arc<GroupModel>,
        d: usize,
        p: u64,
        (i, j): (usize, usize),
        coeff: i64,
        g: GroupElement,
    ) -> Result<Self, GroupRingError> {
        let mut e = FpMatrix::zeros(d, d, p)?;
        e.set(i, j, coeff.rem_euclid(p as i64) as u64);
        let id = group.identity();
        Self::from_terms(group, d, p, [(id, FpMatrix::identity(d, p)?), (g, e)])
    }

    fn add_term(&mut self, g: GroupElement, m: &FpMatrix) {
        if m.is_zero() {
            return;
        }
        match self.support.entry(g) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(m.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_unchecked(m);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &Arc<GroupModel> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn support(&self) -> &BTreeMap<GroupElement, FpMatrix> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.support.len() == 1
            && self
                .support
                .get(&self.group.identity())
                .is_some_and(FpMatrix::is_identity)
    }

    fn zero_block(&self) -> FpMatrix {
        FpMatrix::zeros_unchecked(self.d, self.d, self.p)
    }

    /// `φ_{g,1}`, the identity column entry at `g`.
    pub fn column(&self, g: &GroupElement) -> FpMatrix {
        self.support.get(g).cloned().unwrap_or_else(|| self.zero_block())
    }

    /// `φ_{g₂,g₁} = support(g₁⁻¹g₂)`.
    pub fn equivariant_entry(
        &self,
        g2: &GroupElement,
        g1: &GroupElement,
    ) -> Result<FpMatrix, GroupRingError> {
        let x = self.group.multiply(&self.group.inverse(g1)?, g2)?;
        Ok(self.column(&x))
    }

    /// Largest word length in the support (0 for the zero kernel).
    pub fn support_radius(&self) -> usize {
        self.support
            .keys()
            .map(|g| self.group.word_length(g).expect("support lies in the group"))
            .max()
            .unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GroupRingError> {
        if self.d != other.d {
            return Err(GroupRingError::ParameterMismatch(format!(
                "dimension {} vs {}",
                self.d, other.d
            )));
        }
        if self.p != other.p {
            return Err(GroupRingError::ParameterMismatch(format!(
                "modulus {} vs {}",
                self.p, other.p
            )));
        }
        if *self.group != *other.group {
            return Err(GroupRingError::ParameterMismatch(format!(
                "group {} vs {}",
                self.group.description(),
                other.group.description()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, m) in &other.support {
            out.add_term(g.clone(), m);
        }
        Ok(out)
    }

    /// `φ ∘ ψ`: `support(x) = Σ_{h ∈ supp ψ} φ(h⁻¹x) · ψ(h)`.
    pub fn compose(&self, psi: &Self) -> Result<Self, GroupRingError> {
        self.check_compatible(psi)?;
        let mut acc: BTreeMap<GroupElement, FpMatrix> = BTreeMap::new();
        for (h, b) in &psi.support {
            for (y, a) in &self.support {
                // y = h⁻¹x, so x = h·y
                let x = self.group.mul_unchecked(h, y);
                acc.entry(x)
                    .or_insert_with(|| self.zero_block())
                    .mul_add_assign_unchecked(a, b);
            }
        }
        acc.retain(|_, m| !m.is_zero());
        Ok(Self {
            group: self.group.clone(),
            d: self.d,
            p: self.p,
            support: acc,
        })
    }

    /// True iff `self ∘ psi` is exactly the identity.
    pub fn check_right_inverse(&self, psi: &Self) -> Result<bool, GroupRingError> {
        Ok(self.compose(psi)?.is_identity())
    }

    /// Block matrix of the restriction `X^(dom) → X^(cod)`; block
    /// `(g₂, g₁)` is `φ_{g₂,g₁}`. Fails if some `g₁ ∈ dom` has an image
    /// component outside `cod`.
    pub fn restriction_matrix(
        &self,
        dom: &CayleyBall,
        cod: &CayleyBall,
    ) -> Result<FpMatrix, GroupRingError> {
        self.restriction_prefix(dom.elements(), cod)
    }

    /// Like [`restriction_matrix`](Self::restriction_matrix) for an explicit
    /// domain element list.
    pub(crate) fn restriction_prefix(
        &self,
        dom: &[GroupElement],
        cod: &CayleyBall,
    ) -> Result<FpMatrix, GroupRingError> {
        let d = self.d;
        let mut m = FpMatrix::zeros_unchecked(cod.len() * d, dom.len() * d, self.p);
        for (c, g1) in dom.iter().enumerate() {
            for (s, block) in &self.support {
                let g2 = self.group.mul_unchecked(g1, s);
                let Some(r) = cod.index_of(&g2) else {
                    return Err(GroupRingError::CodomainTooSmall {
                        domain: dom
                            .iter()
                            .map(|g| self.group.word_length(g).unwrap_or(0))
                            .max()
                            .unwrap_or(0),
                        codomain: cod.radius(),
                        support: self.support_radius(),
                    });
                };
                m.put_block(r * d, c * d, block);
            }
        }
        Ok(m)
    }

    pub fn kernel_radius(&self, max_n: usize) -> Result<Option<usize>, GroupRingError> {
        self.kernel_radius_with_limit(max_n, DEFAULT_MAX_BALL)
    }

    /// Smallest `n ∈ [1, max_n]` such that `φ` restricted to `X^(N_n(B))`
    /// has a nonzero kernel.
    ///
    /// A kernel vector supported in `N_n(B)` stays one at every larger
    /// radius, so the predicate is monotone in `n` and is located by
    /// bisection after a single test at `max_n`.
    pub fn kernel_radius_with_limit(
        &self,
        max_n: usize,
        ball_limit: usize,
    ) -> Result<Option<usize>, GroupRingError> {
        if max_n == 0 {
            return Ok(None);
        }
        let s = self.support_radius();
        let big = self.group.cayley_ball_with_limit(max_n + s, ball_limit)?;
        let has_kernel = |n: usize| -> Result<bool, GroupRingError> {
            let cod = self.group.cayley_ball_with_limit(n + s, ball_limit)?;
            let dom = &big.elements()[..big.prefix_len(n)];
            let m = self.restriction_prefix(dom, &cod)?;
            Ok(rank(&m) < m.cols())
        };
        if !has_kernel(max_n)? {
            return Ok(None);
        }
        let (mut lo, mut hi) = (1, max_n);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if has_kernel(mid)? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(Some(lo))
    }
}

/// `S = {1} ∪ supp φ ∪ supp ψ` and the least `r₁ >= 1` with `S·S ⊆ N_{r₁}(B)`.
pub fn support_data(
    phi: &GroupRingKernel,
    psi: Option<&GroupRingKernel>,
) -> Result<(Vec<GroupElement>, usize), GroupRingError> {
    if let Some(psi) = psi {
        phi.check_compatible(psi)?;
    }
    let group = phi.group();
    let mut s: Vec<GroupElement> = std::iter::once(group.identity())
        .chain(phi.support.keys().cloned())
        .chain(psi.into_iter().flat_map(|k| k.support.keys().cloned()))
        .collect();
    s.sort();
    s.dedup();
    let mut r1 = 1;
    for a in &s {
        for b in &s {
            r1 = r1.max(group.word_length(&group.mul_unchecked(a, b))?);
        }
    }
    Ok((s, r1))
}
