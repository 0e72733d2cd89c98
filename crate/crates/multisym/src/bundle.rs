//! Coordinate models of form bundles and multivector bundles.
//!
//! The bundle of vertical k-forms over `Q^m` carries coordinates
//! `(x^1..x^m, p_I)` with one fiber coordinate per admissible multi-index,
//! the tautological form `Θ = Σ p_I dx^I` and the canonical multisymplectic
//! form `Ω = -dΘ`. Multivector bundles get their structure by pulling the
//! canonical form back along the fiberwise contraction map
//! `(x, u) ↦ ι_u ω|_x`; the complete lift adds the tautological term of the
//! `dω`-contraction so that `U* ω^c = £_U ω` for every multivector field.
//!
//! Distribution-level claims are checked pointwise: tangent spaces at
//! rational sample points are classified exactly by the linear layer.

use num_traits::Zero;

use crate::canonical::VerticalData;
use crate::error::{Error, Result};
use crate::exterior::{MultiIndex, Variance};
use crate::mspace::MSpace;
use crate::poly::Poly;
use crate::polyalt::{PolyAlt, PolyMap};
use crate::reduction;
use crate::scalar::Rat;
use crate::subspace::Subspace;

/// The bundle `Λ^k_r L` of vertical k-forms over `L = Q^m`, with `E` a
/// coordinate distribution.
#[derive(Debug)]
pub struct FormBundle {
    pub base_dim: usize,
    pub order: usize,
    /// 1-based base axes spanning the vertical distribution `E`.
    pub e_axes: Vec<usize>,
    pub vanish_r: usize,
    /// Admissible fiber indices, in lexicographic order.
    pub fiber_indices: Vec<MultiIndex>,
    /// Total variable count `m + #fibers`.
    pub nvars: usize,
    /// Tautological k-form `Θ = Σ p_I dx^I`.
    pub theta: PolyAlt,
    /// Canonical form `Ω = -dΘ`.
    pub omega: PolyAlt,
}

impl FormBundle {
    /// Builds the bundle; hypotheses (`k ≤ m`, and for `r ≥ 1`
    /// `r ≤ dim E`, `k - r + 1 ≤ codim E`) are validated. `k = 0` is the
    /// functions bundle with the single fiber coordinate `p_()`.
    pub fn build(base_dim: usize, k: usize, e_axes: &[usize], r: usize) -> Result<FormBundle> {
        let mut e_axes: Vec<usize> = e_axes.to_vec();
        e_axes.sort_unstable();
        e_axes.dedup();
        if e_axes.iter().any(|&a| a == 0 || a > base_dim) {
            return Err(Error::Hypothesis("vertical axis out of range".into()));
        }
        let e_sub = if e_axes.is_empty() {
            Subspace::zero(base_dim)
        } else {
            Subspace::coordinate(base_dim, &e_axes)
        };
        let vd = VerticalData::new(base_dim, e_sub, r)?;
        if k > 0 {
            vd.validate_for(k)?;
        }
        let r = vd.vanishing_order();
        let fiber_indices: Vec<MultiIndex> = MultiIndex::enumerate(base_dim, k)
            .into_iter()
            .filter(|idx| {
                if r == 0 {
                    return true;
                }
                idx.indices()
                    .iter()
                    .filter(|&&i| e_axes.contains(&(i as usize)))
                    .count()
                    < r
            })
            .collect();
        let nvars = base_dim + fiber_indices.len();
        let mut theta_terms = Vec::new();
        for (t, idx) in fiber_indices.iter().enumerate() {
            theta_terms.push((
                idx.indices().to_vec(),
                Poly::var(nvars, base_dim + t),
            ));
        }
        let theta = PolyAlt::from_terms(nvars, k, Variance::Covariant, theta_terms)?;
        let omega = theta.d()?.neg();
        Ok(FormBundle {
            base_dim,
            order: k,
            e_axes,
            vanish_r: r,
            fiber_indices,
            nvars,
            theta,
            omega,
        })
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_indices.len()
    }

    /// 0-based total-space variable of fiber coordinate `t`.
    pub fn fiber_var(&self, t: usize) -> usize {
        self.base_dim + t
    }

    /// Position of an admissible index among the fiber coordinates.
    pub fn fiber_position(&self, idx: &MultiIndex) -> Option<usize> {
        self.fiber_indices.iter().position(|i| i == idx)
    }

    /// The vertical distribution (fiber coordinate directions) as a constant
    /// subspace of the total space.
    pub fn vertical_subspace(&self) -> Subspace {
        let axes: Vec<usize> = (self.base_dim + 1..=self.nvars).collect();
        Subspace::coordinate(self.nvars, &axes)
    }

    /// The zero-section tangent (base coordinate directions).
    pub fn base_subspace(&self) -> Subspace {
        Subspace::coordinate(self.nvars, &(1..=self.base_dim).collect::<Vec<_>>())
    }

    /// Does the form's support consist of admissible indices only?
    pub fn is_admissible(&self, alpha: &PolyAlt) -> bool {
        alpha.degree() == self.order
            && alpha.nvars() == self.base_dim
            && alpha
                .terms()
                .all(|(idx, _)| self.fiber_position(idx).is_some())
    }

    /// The section `x ↦ (x, α(x))` as a polynomial map into the total space.
    pub fn graph_map(&self, alpha: &PolyAlt) -> Result<PolyMap> {
        if !self.is_admissible(alpha) {
            return Err(Error::Precondition(
                "section is not an admissible vertical form".into(),
            ));
        }
        let m = self.base_dim;
        let mut components: Vec<Poly> = (0..m).map(|i| Poly::var(m, i)).collect();
        for idx in &self.fiber_indices {
            components.push(alpha.coefficient(idx));
        }
        Ok(PolyMap::new(m, components))
    }

    /// The linear space `(Q^{nvars}, Ω|_point)`; Ω has constant coefficients
    /// so the point only fixes the interface.
    pub fn mspace_at(&self, point: &[Rat]) -> Result<MSpace> {
        MSpace::new(self.nvars, self.order, self.omega.eval_point(point))
    }

    /// Tangent space of the graph of `α` over a base point.
    pub fn graph_tangent(&self, alpha: &PolyAlt, base_point: &[Rat]) -> Result<Subspace> {
        if !self.is_admissible(alpha) {
            return Err(Error::Precondition("section is not admissible".into()));
        }
        let m = self.base_dim;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut v = vec![Rat::zero(); self.nvars];
            v[i] = crate::scalar::rat(1);
            for (t, idx) in self.fiber_indices.iter().enumerate() {
                v[self.fiber_var(t)] = alpha.coefficient(idx).partial(i).eval(base_point);
            }
            rows.push(v);
        }
        Ok(Subspace::from_rows(self.nvars, rows))
    }

    /// Asserts `α*Θ = α` and `α*Ω = -dα` symbolically.
    pub fn section_pullback_check(&self, alpha: &PolyAlt) -> Result<SectionPullbackReport> {
        let graph = self.graph_map(alpha)?;
        let theta_back = self.theta.pullback_map(&graph)?;
        let omega_back = self.omega.pullback_map(&graph)?;
        Ok(SectionPullbackReport {
            theta_reproduces_section: theta_back == *alpha,
            omega_gives_minus_differential: omega_back == alpha.d()?.neg(),
        })
    }

    /// Asserts the equivalence "closed ⟺ graph k-Lagrangian" pointwise at
    /// the samples: at each base point, the graph tangent is k-Lagrangian
    /// for `Ω` exactly when `dα` vanishes at that point.
    pub fn closed_iff_lagrangian_check(
        &self,
        alpha: &PolyAlt,
        samples: &[Vec<Rat>],
    ) -> Result<ClosedLagrangianReport> {
        let dalpha = alpha.d()?;
        let mut pointwise = Vec::new();
        let mut equivalence_holds = true;
        for base_point in samples {
            let tangent = self.graph_tangent(alpha, base_point)?;
            let mut total_point = base_point.clone();
            for idx in &self.fiber_indices {
                total_point.push(alpha.coefficient(idx).eval(base_point));
            }
            let ms = self.mspace_at(&total_point)?;
            let lagrangian = ms.classify(&tangent, self.order)?.lagrangian;
            let closed_here = dalpha.eval_point(base_point).is_zero();
            if lagrangian != closed_here {
                equivalence_holds = false;
            }
            pointwise.push((base_point.clone(), closed_here, lagrangian));
        }
        Ok(ClosedLagrangianReport {
            closed_symbolically: dalpha.is_zero(),
            pointwise,
            equivalence_holds,
        })
    }

    /// Symbolic 1-isotropy of the vertical distribution, plus pointwise
    /// 1-Lagrangian classification against the zero-section complement.
    pub fn vertical_distribution_check(&self, samples: &[Vec<Rat>]) -> Result<bool> {
        // ι_{∂p_I ∧ ∂p_J} Ω = 0 symbolically for all fiber pairs
        for t in 0..self.fiber_dim() {
            for s in t + 1..self.fiber_dim() {
                let pair = crate::polyalt::basis_multivector(
                    self.nvars,
                    &[self.fiber_var(t) as u32 + 1, self.fiber_var(s) as u32 + 1],
                )?;
                if !PolyAlt::contract(&pair, &self.omega)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        for point in samples {
            let ms = self.mspace_at(point)?;
            let (cu, cw) =
                ms.isotropic_decomposition_check(&self.base_subspace(), &self.vertical_subspace())?;
            if !cu.lagrangian || !cw.lagrangian {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Human-readable variable names `x1..xm, p{I}`.
    pub fn var_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.base_dim).map(|i| format!("x{i}")).collect();
        for idx in &self.fiber_indices {
            let digits: Vec<String> = idx.indices().iter().map(|i| i.to_string()).collect();
            names.push(format!("p{}", digits.join("")));
        }
        names
    }
}

/// Outcome of [`FormBundle::section_pullback_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionPullbackReport {
    pub theta_reproduces_section: bool,
    pub omega_gives_minus_differential: bool,
}

impl SectionPullbackReport {
    pub fn all_hold(&self) -> bool {
        self.theta_reproduces_section && self.omega_gives_minus_differential
    }
}

/// Outcome of [`FormBundle::closed_iff_lagrangian_check`].
#[derive(Debug, Clone)]
pub struct ClosedLagrangianReport {
    pub closed_symbolically: bool,
    /// `(base point, dα vanishes there, graph k-Lagrangian there)`.
    pub pointwise: Vec<(Vec<Rat>, bool, bool)>,
    pub equivalence_holds: bool,
}

/// The multivector bundle `⋁_q M` over `(Q^n, ω)` with the induced
/// structure `Ω̃ = ♭_q* Ω^{k+1-q}`.
#[derive(Debug)]
pub struct MultivectorBundle {
    pub base_dim: usize,
    /// Order of the base form: `ω` has degree `base_order + 1`.
    pub base_order: usize,
    pub mv_degree: usize,
    pub omega_base: PolyAlt,
    /// Fiber indices: all degree-q multi-indices.
    pub fiber_indices: Vec<MultiIndex>,
    pub nvars: usize,
    /// Target form bundle `Λ^{k+1-q}` over the same base.
    pub target: FormBundle,
    /// The fiberwise contraction map into the target total space.
    pub flat_map: PolyMap,
    /// `Ω̃ = ♭_q* Ω`, degree `k + 2 - q`.
    pub omega_tilde: PolyAlt,
}

/// Builds the multivector bundle structure for closed `ω` and `1 ≤ q ≤ k`.
pub fn build_multivector_bundle(omega: &PolyAlt, q: usize) -> Result<MultivectorBundle> {
    if omega.variance() != Variance::Covariant {
        return Err(Error::AmbientMismatch("ω must be a form".into()));
    }
    if !omega.is_closed()? {
        return Err(Error::Precondition("ω is not closed".into()));
    }
    let n = omega.nvars();
    let k = omega
        .degree()
        .checked_sub(1)
        .ok_or_else(|| Error::Degree("ω must have positive degree".into()))?;
    if q < 1 || q > k {
        return Err(Error::Degree(format!("need 1 ≤ q ≤ k, got q = {q}, k = {k}")));
    }
    let (flat_map, fiber_indices, nvars, target) = fiberwise_contraction_map(omega, q, k + 1 - q)?;
    let omega_tilde = target.omega.pullback_map(&flat_map)?;
    Ok(MultivectorBundle {
        base_dim: n,
        base_order: k,
        mv_degree: q,
        omega_base: omega.clone(),
        fiber_indices,
        nvars,
        target,
        flat_map,
        omega_tilde,
    })
}

/// The map `(x, u) ↦ (x, ι_u θ|_x)` from the degree-q multivector bundle
/// into the degree-`target_k` form bundle, for a (k+1)-form θ on the base
/// (used with θ = ω and θ = dω).
fn fiberwise_contraction_map(
    theta: &PolyAlt,
    q: usize,
    target_k: usize,
) -> Result<(PolyMap, Vec<MultiIndex>, usize, FormBundle)> {
    let n = theta.nvars();
    let fiber_indices = MultiIndex::enumerate(n, q);
    let nvars = n + fiber_indices.len();
    let target = FormBundle::build(n, target_k, &[], 0)?;

    // extend θ's coefficients to the total space
    let extend: Vec<Poly> = (0..n).map(|i| Poly::var(nvars, i)).collect();
    let mut theta_ext_terms = Vec::new();
    for (idx, c) in theta.terms() {
        theta_ext_terms.push((idx.indices().to_vec(), c.substitute(&extend)));
    }
    let theta_ext = PolyAlt::from_terms(nvars, theta.degree(), Variance::Covariant, theta_ext_terms)?;

    // tautological multivector Σ u_J e_J
    let mut taut_terms = Vec::new();
    for (t, idx) in fiber_indices.iter().enumerate() {
        taut_terms.push((idx.indices().to_vec(), Poly::var(nvars, n + t)));
    }
    let taut = PolyAlt::from_terms(nvars, q, Variance::Contravariant, taut_terms)?;

    let contracted = PolyAlt::contract(&taut, &theta_ext)?;
    let mut components: Vec<Poly> = (0..n).map(|i| Poly::var(nvars, i)).collect();
    for idx in &target.fiber_indices {
        components.push(contracted.coefficient(idx));
    }
    Ok((PolyMap::new(nvars, components), fiber_indices, nvars, target))
}

impl MultivectorBundle {
    /// The section `x ↦ (x, U(x))`.
    pub fn graph_map(&self, u: &PolyAlt) -> Result<PolyMap> {
        if u.variance() != Variance::Contravariant
            || u.degree() != self.mv_degree
            || u.nvars() != self.base_dim
        {
            return Err(Error::Precondition(
                "section must be a multivector field of the bundle degree".into(),
            ));
        }
        let n = self.base_dim;
        let mut components: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        for idx in &self.fiber_indices {
            components.push(u.coefficient(idx));
        }
        Ok(PolyMap::new(n, components))
    }

    pub fn vertical_subspace(&self) -> Subspace {
        Subspace::coordinate(
            self.nvars,
            &(self.base_dim + 1..=self.nvars).collect::<Vec<_>>(),
        )
    }

    /// Symbolic 1-isotropy of the vertical distribution for `Ω̃`.
    pub fn vertical_isotropy_check(&self) -> Result<bool> {
        for t in 0..self.fiber_indices.len() {
            for s in t + 1..self.fiber_indices.len() {
                let pair = crate::polyalt::basis_multivector(
                    self.nvars,
                    &[(self.base_dim + t) as u32 + 1, (self.base_dim + s) as u32 + 1],
                )?;
                if !PolyAlt::contract(&pair, &self.omega_tilde)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The flat map intertwines the verticals: differentiating any component
    /// of the bundle map by a fiber variable must hit fiber components only
    /// (base components are coordinates), and some fiber component moves.
    pub fn flat_intertwines_verticals(&self) -> bool {
        for t in 0..self.fiber_indices.len() {
            let var = self.base_dim + t;
            for (pos, comp) in self.flat_map.components.iter().enumerate() {
                if pos < self.base_dim && !comp.partial(var).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks `U*Ω̃ = -d ι_U ω` symbolically, then the pointwise equivalence
    /// between local Hamiltonianity and the Lagrangian property of the graph.
    pub fn hamiltonian_iff_lagrangian_check(
        &self,
        u: &PolyAlt,
        samples: &[Vec<Rat>],
    ) -> Result<HamiltonianLagrangianReport> {
        let graph = self.graph_map(u)?;
        let pulled = self.omega_tilde.pullback_map(&graph)?;
        let d_contraction = PolyAlt::contract(u, &self.omega_base)?.d()?;
        let pullback_identity = pulled == d_contraction.neg();

        let j = self.base_order + 1 - self.mv_degree;
        let mut pointwise = Vec::new();
        let mut equivalence_holds = true;
        for base_point in samples {
            let mut total_point = base_point.clone();
            for idx in &self.fiber_indices {
                total_point.push(u.coefficient(idx).eval(base_point));
            }
            let omega_pt = self.omega_tilde.eval_point(&total_point);
            let ms = MSpace::new(self.nvars, j, omega_pt)?;
            let mut rows = Vec::with_capacity(self.base_dim);
            for i in 0..self.base_dim {
                let mut v = vec![Rat::zero(); self.nvars];
                v[i] = crate::scalar::rat(1);
                for (t, idx) in self.fiber_indices.iter().enumerate() {
                    v[self.base_dim + t] = u.coefficient(idx).partial(i).eval(base_point);
                }
                rows.push(v);
            }
            let tangent = Subspace::from_rows(self.nvars, rows);
            let lagrangian = ms.classify(&tangent, j)?.lagrangian;
            let closed_here = d_contraction.eval_point(base_point).is_zero();
            if lagrangian != closed_here {
                equivalence_holds = false;
            }
            pointwise.push((base_point.clone(), closed_here, lagrangian));
        }
        Ok(HamiltonianLagrangianReport {
            pullback_identity,
            locally_hamiltonian: d_contraction.is_zero(),
            pointwise,
            equivalence_holds,
        })
    }
}

/// Outcome of [`MultivectorBundle::hamiltonian_iff_lagrangian_check`].
#[derive(Debug, Clone)]
pub struct HamiltonianLagrangianReport {
    /// `U*Ω̃ = -d ι_U ω` as a polynomial identity.
    pub pullback_identity: bool,
    pub locally_hamiltonian: bool,
    /// `(base point, d ι_U ω vanishes there, graph Lagrangian there)`.
    pub pointwise: Vec<(Vec<Rat>, bool, bool)>,
    pub equivalence_holds: bool,
}

/// The complete lift `ω^c_q = ♭̃_q* Θ^{k+2-q} + (-1)^q ♭_q* Ω^{k+1-q}` on
/// the degree-q multivector bundle; `ω` need not be closed. For closed `ω`
/// this is `(-1)^q Ω̃^q` coefficientwise.
pub fn complete_lift(omega: &PolyAlt, q: usize) -> Result<PolyAlt> {
    if omega.variance() != Variance::Covariant {
        return Err(Error::AmbientMismatch("ω must be a form".into()));
    }
    let k = omega
        .degree()
        .checked_sub(1)
        .ok_or_else(|| Error::Degree("ω must have positive degree".into()))?;
    if q < 1 || q > k + 1 {
        return Err(Error::Degree(format!(
            "need 1 ≤ q ≤ k+1, got q = {q}, k = {k}"
        )));
    }
    let domega = omega.d()?;
    let (tilde_map, _, _, tilde_target) = fiberwise_contraction_map(&domega, q, k + 2 - q)?;
    let (flat_map, _, _, flat_target) = fiberwise_contraction_map(omega, q, k + 1 - q)?;
    let lift_theta = tilde_target.theta.pullback_map(&tilde_map)?;
    let lift_omega = flat_target.omega.pullback_map(&flat_map)?;
    if q % 2 == 0 {
        lift_theta.add(&lift_omega)
    } else {
        lift_theta.sub(&lift_omega)
    }
}

/// Outcome of [`fiber_reduction_model`].
#[derive(Debug, Clone)]
pub struct FiberReductionReport {
    /// `rank ker i* = dim Λ^k_r T*L - dim Λ^k_r T*Q`.
    pub kernel_rank_formula: bool,
    /// `(TN)^{⊥,k} = 0 ⊕ ker i*` at every sample.
    pub orthogonal_is_kernel_fibers: bool,
    /// The reduced form equals the canonical form of `Λ^k_r Q` under the
    /// index-restriction identification.
    pub reduced_form_is_canonical: bool,
    /// The projection of the graph of `α` is the graph of `i*α`
    /// (checked at samples), `d(i*α) = 0`, and the projected graph is
    /// k-Lagrangian at every sample.
    pub projected_graph_matches: bool,
    pub projected_closed: bool,
    pub projected_lagrangian: bool,
    /// Brackets of kernel-direction fields stay in the kernel directions.
    pub kernel_involutive: bool,
    pub kernel_rank: usize,
    pub quotient_dim: usize,
}

impl FiberReductionReport {
    pub fn all_hold(&self) -> bool {
        self.kernel_rank_formula
            && self.orthogonal_is_kernel_fibers
            && self.reduced_form_is_canonical
            && self.projected_graph_matches
            && self.projected_closed
            && self.projected_lagrangian
            && self.kernel_involutive
    }
}

/// Linear coisotropic reduction of the restricted bundle `N = Λ^k_r L|_Q`
/// over a coordinate slice `Q` of the base, with projection of the graph of
/// a closed admissible section.
///
/// `q_axes` are the (1-based) base axes spanning `Q`; the vertical
/// distribution of the reduced bundle is `Ẽ = E ∩ TQ`.
pub fn fiber_reduction_model(
    fb: &FormBundle,
    q_axes: &[usize],
    alpha: &PolyAlt,
    base_samples: &[Vec<Rat>],
) -> Result<FiberReductionReport> {
    let m = fb.base_dim;
    let k = fb.order;
    let mut q_axes: Vec<usize> = q_axes.to_vec();
    q_axes.sort_unstable();
    q_axes.dedup();
    if q_axes.iter().any(|&a| a == 0 || a > m) {
        return Err(Error::Hypothesis("slice axis out of range".into()));
    }
    if q_axes.len() < k {
        return Err(Error::Hypothesis(
            "dim Q must be at least k for a nonzero form bundle".into(),
        ));
    }
    if !fb.is_admissible(alpha) {
        return Err(Error::Precondition("section is not admissible".into()));
    }
    if !alpha.is_closed()? {
        return Err(Error::Precondition("section is not closed".into()));
    }

    // the reduced bundle over Q, with E ∩ TQ renumbered to Q coordinates
    let renumber = |axis: usize| -> Option<usize> {
        q_axes.iter().position(|&a| a == axis).map(|p| p + 1)
    };
    let e_tilde: Vec<usize> = fb
        .e_axes
        .iter()
        .filter_map(|&a| renumber(a))
        .collect();
    let fbq = FormBundle::build(q_axes.len(), k, &e_tilde, fb.vanish_r)?;

    // kernel fibers: admissible indices not contained in Q
    let kernel_positions: Vec<usize> = fb
        .fiber_indices
        .iter()
        .enumerate()
        .filter(|(_, idx)| !idx.indices().iter().all(|&i| renumber(i as usize).is_some()))
        .map(|(t, _)| t)
        .collect();
    let kernel_rank = kernel_positions.len();
    let kernel_rank_formula = kernel_rank == fb.fiber_dim() - fbq.fiber_dim();
    let kernel_fibers = if kernel_positions.is_empty() {
        Subspace::zero(fb.nvars)
    } else {
        Subspace::coordinate(
            fb.nvars,
            &kernel_positions
                .iter()
                .map(|&t| fb.fiber_var(t) + 1)
                .collect::<Vec<_>>(),
        )
    };

    // N = Λ^k_r L|_Q: base directions of Q plus every fiber direction
    let mut n_axes: Vec<usize> = q_axes.clone();
    n_axes.extend(fb.base_dim + 1..=fb.nvars);
    let n_sub = Subspace::coordinate(fb.nvars, &n_axes);

    let mut orthogonal_is_kernel_fibers = true;
    let mut reduced_form_is_canonical = true;
    let mut projected_graph_matches = true;
    let mut projected_lagrangian = true;
    let mut quotient_dim = 0;

    // i*α on the reduced base
    let incl_components: Vec<Poly> = (1..=m)
        .map(|axis| match renumber(axis) {
            Some(pos) => Poly::var(q_axes.len(), pos - 1),
            None => Poly::zero(q_axes.len()),
        })
        .collect();
    let incl = PolyMap::new(q_axes.len(), incl_components);
    let restricted_alpha = alpha.pullback_map(&incl)?;
    let projected_closed = restricted_alpha.is_closed()?;
    if !fbq.is_admissible(&restricted_alpha) {
        return Err(Error::Hypothesis(
            "restriction left the admissible index range".into(),
        ));
    }

    let expected_canonical = fbq.omega.eval_point(&vec![Rat::zero(); fbq.nvars]);

    for base_point in base_samples {
        // sample points live on Q
        let mut pt = vec![Rat::zero(); m];
        for (i, &axis) in q_axes.iter().enumerate() {
            pt[axis - 1] = base_point[i].clone();
        }
        let mut total_point = pt.clone();
        for idx in &fb.fiber_indices {
            total_point.push(alpha.coefficient(idx).eval(&pt));
        }
        let ms = fb.mspace_at(&total_point)?;

        let orth = ms.orthogonal(&n_sub, k)?;
        if orth != kernel_fibers {
            orthogonal_is_kernel_fibers = false;
        }

        let red = reduction::reduce(&ms, &n_sub)?;
        quotient_dim = red.quotient_dim();
        if red.kernel != kernel_fibers {
            orthogonal_is_kernel_fibers = false;
        }
        // the pivot-based section orders quotient coordinates as
        // (Q base axes, fibers over Q), matching the reduced bundle
        if red.quotient_dim() != fbq.nvars || red.quotient.omega() != &expected_canonical {
            reduced_form_is_canonical = false;
        }

        // the graph point of α projects to the graph point of i*α
        let in_n = n_sub
            .coordinates_of(&total_point)
            .map(|c| red.projection.apply(&c));
        let mut expected_point: Vec<Rat> = base_point.clone();
        for idx in &fbq.fiber_indices {
            expected_point.push(restricted_alpha.coefficient(idx).eval(base_point));
        }
        if in_n.as_deref() != Some(expected_point.as_slice()) {
            projected_graph_matches = false;
        }
    }

    // pointwise Lagrangian classification of the projected graph in the
    // reduced bundle
    let reduced_samples: Vec<Vec<Rat>> = base_samples.to_vec();
    let lag = fbq.closed_iff_lagrangian_check(&restricted_alpha, &reduced_samples)?;
    if !(lag.equivalence_holds && lag.pointwise.iter().all(|(_, _, l)| *l)) {
        projected_lagrangian = false;
    }

    // kernel directions are constant fields; their brackets must stay inside
    let mut kernel_involutive = true;
    for (a, &ta) in kernel_positions.iter().enumerate() {
        for &tb in kernel_positions.iter().skip(a + 1) {
            let fa = crate::polyalt::basis_multivector(fb.nvars, &[fb.fiber_var(ta) as u32 + 1])?;
            let fbv = crate::polyalt::basis_multivector(fb.nvars, &[fb.fiber_var(tb) as u32 + 1])?;
            let bracket = PolyAlt::schouten(&fa, &fbv)?;
            if !bracket.is_zero() {
                // a nonzero bracket must still take values in the kernel fibers
                let ok = bracket.terms().all(|(idx, _)| {
                    idx.indices().iter().all(|&i| {
                        kernel_positions
                            .iter()
                            .any(|&t| fb.fiber_var(t) as u32 + 1 == i)
                    })
                });
                if !ok {
                    kernel_involutive = false;
                }
            }
        }
    }

    Ok(FiberReductionReport {
        kernel_rank_formula,
        orthogonal_is_kernel_fibers,
        reduced_form_is_canonical,
        projected_graph_matches,
        projected_closed,
        projected_lagrangian,
        kernel_involutive,
        kernel_rank,
        quotient_dim,
    })
}

/// Default rational sample points for pointwise checks: the origin, the
/// first unit points, and a mixed rational point.
pub fn default_samples(dim: usize) -> Vec<Vec<Rat>> {
    use crate::scalar::{rat, ratio};
    let mut samples = vec![vec![Rat::zero(); dim]];
    for i in 0..dim.min(3) {
        let mut v = vec![Rat::zero(); dim];
        v[i] = rat(1);
        samples.push(v);
    }
    let mixed: Vec<Rat> = (0..dim)
        .map(|i| match i % 3 {
            0 => ratio(1, 2),
            1 => rat(-1),
            _ => ratio(2, 3),
        })
        .collect();
    samples.push(mixed);
    samples
}
