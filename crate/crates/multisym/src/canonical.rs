//! Canonical multisymplectic models `L ⊕ Λ^k_r L*` and type-(k,r) structure.
//!
//! `Λ^k_r L*` is the space of k-forms annihilated by contraction with any `r`
//! vectors of a distinguished vertical subspace `E ⊆ L` (`r = 0` meaning no
//! constraint). The model form, in the signed convention used throughout,
//!
//! ```text
//! Ω_L((v1,α1), …, (v_{k+1},α_{k+1})) = Σ_j (-1)^{j+1} α_j(v1, …, v̂_j, …, v_{k+1})
//! ```
//!
//! is assembled as `Σ_I a_I ∧ l^I` over admissible multi-indices `I` in an
//! E-adapted basis of `L`. The module also recognizes type-(k,r) structure
//! constructively: a k-isotropic complement to a 1-Lagrangian `W` is built
//! from `ψ(l) = -ι_l ω / (k+1)`, and the multisymplectomorphism
//! `Φ = id_L ⊕ φ`, `φ(α) = (ι_α ω)|_L`, is returned with the exact pullback
//! identity checked coefficientwise.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{AltElement, LinearMap, MultiIndex, Variance};
use crate::linalg::{binomial, Matrix};
use crate::mspace::MSpace;
use crate::scalar::{rat, Rat};
use crate::subspace::Subspace;

/// Vertical data for a model: base dimension, the vertical subspace
/// `E ⊆ Q^m`, and the vanishing order `r`.
///
/// `r = 0` encodes "no vertical constraint"; inputs with `r > dim E` (or
/// `E = 0`) are normalized to `r = 0`, which produces the same space of
/// forms. `r = 1` is accepted and yields the one degenerate model, with
/// `ker ♭1 = E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalData {
    base_dim: usize,
    vertical: Subspace,
    r: usize,
}

impl VerticalData {
    pub fn new(base_dim: usize, vertical: Subspace, r: usize) -> Result<Self> {
        if vertical.ambient_dim() != base_dim {
            return Err(Error::AmbientMismatch(format!(
                "vertical subspace ambient {} vs base dimension {base_dim}",
                vertical.ambient_dim()
            )));
        }
        let r = if vertical.rank() == 0 || r > vertical.rank() {
            0
        } else {
            r
        };
        Ok(VerticalData {
            base_dim,
            vertical,
            r,
        })
    }

    /// Vertical data with `E` spanned by the last `e_dim` coordinate axes.
    pub fn coordinate(base_dim: usize, e_dim: usize, r: usize) -> Result<Self> {
        let vertical = if e_dim == 0 {
            Subspace::zero(base_dim)
        } else {
            let axes: Vec<usize> = (base_dim - e_dim + 1..=base_dim).collect();
            Subspace::coordinate(base_dim, &axes)
        };
        VerticalData::new(base_dim, vertical, r)
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn vertical(&self) -> &Subspace {
        &self.vertical
    }

    pub fn vanishing_order(&self) -> usize {
        self.r
    }

    /// Model regularity: every case except `r = 1`.
    pub fn is_regular_case(&self) -> bool {
        self.r != 1
    }

    /// Checks the standing hypotheses for order `k` and names the failed
    /// inequality otherwise.
    pub fn validate_for(&self, k: usize) -> Result<()> {
        let m = self.base_dim;
        let e = self.vertical.rank();
        if k == 0 || k > m {
            return Err(Error::Hypothesis(format!(
                "need 1 <= k <= dim L, got k = {k}, dim L = {m}"
            )));
        }
        if self.r >= 1 && k + 1 > self.r + (m - e) {
            return Err(Error::Hypothesis(format!(
                "need k - r + 1 <= codim E, got k = {k}, r = {}, codim E = {}",
                self.r,
                m - e
            )));
        }
        Ok(())
    }

    /// Number of admissible basis k-forms: `Σ_{j<r} C(dim E, j)·C(m-dim E, k-j)`
    /// when `r ≥ 1`, and `C(m, k)` when `r = 0`.
    pub fn fiber_dim_formula(&self, k: usize) -> usize {
        let m = self.base_dim;
        let e = self.vertical.rank();
        if self.r == 0 {
            binomial(m, k)
        } else {
            (0..self.r)
                .filter(|j| k >= *j)
                .map(|j| binomial(e, j) * binomial(m - e, k - j))
                .sum()
        }
    }
}

/// Admissible k-indices on an E-adapted base, with `E` the last `e_dim`
/// axes: those meeting the vertical axes in fewer than `r` entries.
pub fn admissible_indices(m: usize, e_dim: usize, k: usize, r: usize) -> Vec<MultiIndex> {
    MultiIndex::enumerate(m, k)
        .into_iter()
        .filter(|idx| {
            if r == 0 {
                return true;
            }
            let vertical_entries = idx
                .indices()
                .iter()
                .filter(|&&i| i as usize > m - e_dim)
                .count();
            vertical_entries < r
        })
        .collect()
}

/// The subspace `Λ^k_r L* ⊆ Λ^k L*` of r-fold vertical forms, as the kernel
/// of the stacked contraction system over a basis of `Λ^r E`. Coordinates
/// are the lexicographic k-index positions on `Q^{C(m,k)}`.
///
/// This is the kernel-route oracle; model construction counts admissible
/// indices combinatorially instead and the two must agree.
pub fn vertical_forms_subspace(m: usize, e: &Subspace, r: usize, k: usize) -> Result<Subspace> {
    if e.ambient_dim() != m {
        return Err(Error::AmbientMismatch(format!(
            "E ambient {} vs base dimension {m}",
            e.ambient_dim()
        )));
    }
    let form_coords = binomial(m, k);
    if r == 0 || r > e.rank() || r > k {
        // no constraint can bind: contraction with r vertical vectors either
        // does not exist or exceeds the form degree
        return Ok(Subspace::full(form_coords));
    }
    let basis_elems: Vec<AltElement> = e
        .basis()
        .iter()
        .map(|row| AltElement::from_vector(Variance::Contravariant, row))
        .collect();
    let form_basis = MultiIndex::enumerate(m, k);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for combo in MultiIndex::enumerate(e.rank(), r) {
        let mut wedge = AltElement::scalar(m, Variance::Contravariant, rat(1));
        for &t in combo.indices() {
            wedge = wedge.wedge(&basis_elems[t as usize - 1])?;
        }
        if wedge.is_zero() {
            continue;
        }
        let out_coords = binomial(m, k - r);
        let mut block = vec![vec![Rat::zero(); form_coords]; out_coords];
        for (col, idx) in form_basis.iter().enumerate() {
            let alpha = AltElement::basis(m, Variance::Covariant, idx.indices())?;
            let image = AltElement::contract(&wedge, &alpha)?;
            for (row, c) in image.coefficient_vector().into_iter().enumerate() {
                block[row][col] = c;
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return Ok(Subspace::full(form_coords));
    }
    Ok(Subspace::from_rows(
        form_coords,
        Matrix::from_rows(rows).kernel_basis(),
    ))
}

/// A built canonical model `(L ⊕ Λ^k_r L*, Ω_L)`.
///
/// Model coordinates: the first `m` axes carry the E-adapted basis of `L`
/// (vertical directions last), the remaining axes one fiber coordinate per
/// admissible multi-index, in lexicographic order.
#[derive(Debug)]
pub struct CanonicalModel {
    pub vertical: VerticalData,
    pub order: usize,
    /// Admissible fiber indices in the adapted basis.
    pub admissible: Vec<MultiIndex>,
    /// The model space `(Q^{m+s}, Ω_L)`.
    pub space: MSpace,
    /// `L` embedded as the first `m` axes.
    pub base: Subspace,
    /// `W = Λ^k_r L*` embedded as the last `s` axes.
    pub fiber: Subspace,
    /// `E` embedded in the model (last `dim E` axes of the `L` block).
    pub vertical_embedded: Subspace,
    /// Basis change on `Q^m` sending adapted coordinates to the original
    /// coordinates of `L` (identity when `E` was already coordinate-aligned).
    pub adapt: LinearMap,
}

impl CanonicalModel {
    pub fn total_dim(&self) -> usize {
        self.space.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.admissible.len()
    }

    /// 1-based model axis of the fiber coordinate for admissible index `t`.
    pub fn fiber_axis(&self, t: usize) -> usize {
        self.vertical.base_dim() + 1 + t
    }
}

/// Builds the canonical model for the given vertical data and order.
pub fn build_canonical(vertical: VerticalData, k: usize) -> Result<CanonicalModel> {
    vertical.validate_for(k)?;
    let m = vertical.base_dim();
    let e_dim = vertical.vertical().rank();
    let r = vertical.vanishing_order();

    // adapted basis of L: a pivot complement of E first, then E itself
    let adapt = if r == 0 {
        LinearMap::identity(m)
    } else {
        let complement = vertical.vertical().pivot_complement();
        let mut columns: Vec<Vec<Rat>> = complement.basis().to_vec();
        columns.extend(vertical.vertical().basis().iter().cloned());
        LinearMap::from_columns(m, &columns)
    };

    let admissible = admissible_indices(m, if r == 0 { 0 } else { e_dim }, k, r);
    let s = admissible.len();
    debug_assert_eq!(s, vertical.fiber_dim_formula(k));
    let n = m + s;

    let mut terms = Vec::with_capacity(s);
    for (t, idx) in admissible.iter().enumerate() {
        let mut raw = vec![(m + 1 + t) as u32];
        raw.extend_from_slice(idx.indices());
        terms.push((raw, rat(1)));
    }
    let omega = AltElement::from_terms(n, k + 1, Variance::Covariant, terms)?;
    let space = MSpace::new(n, k, omega)?;

    let base = Subspace::coordinate(n, &(1..=m).collect::<Vec<_>>());
    let fiber = Subspace::coordinate(n, &(m + 1..=n).collect::<Vec<_>>());
    let vertical_embedded = if e_dim == 0 {
        Subspace::zero(n)
    } else {
        Subspace::coordinate(n, &(m - e_dim + 1..=m).collect::<Vec<_>>())
    };

    Ok(CanonicalModel {
        vertical,
        order: k,
        admissible,
        space,
        base,
        fiber,
        vertical_embedded,
        adapt,
    })
}

/// Constructs a k-Lagrangian complement to a 1-Lagrangian `W`.
///
/// `e_quotient` represents the vertical subspace of `V/W` through a lift
/// with trivial intersection with `W`; the r-fold vanishing
/// `ι_{e1 ∧ ⋯ ∧ er} ω = 0` is checked on that lift. The default complement
/// `L'` is the pivot complement of `W`; the returned subspace is the graph
/// of `l ↦ χ(l) ∈ W` solving `(ι_{χ(l)} ω)|_{L'} = -(ι_l ω)|_{L'} / (k+1)`.
pub fn lagrangian_complement(
    ms: &MSpace,
    w: &Subspace,
    e_quotient: &Subspace,
    r: usize,
) -> Result<Subspace> {
    let lprime = w.pivot_complement();
    lagrangian_complement_with(ms, w, e_quotient, r, &lprime)
}

/// Same construction with an explicit complement `L'`.
pub fn lagrangian_complement_with(
    ms: &MSpace,
    w: &Subspace,
    e_quotient: &Subspace,
    r: usize,
    lprime: &Subspace,
) -> Result<Subspace> {
    let n = ms.dim();
    let k = ms.order();
    if !ms.classify(w, 1)?.lagrangian {
        return Err(Error::Precondition("W is not 1-Lagrangian".into()));
    }
    if !e_quotient.intersect(w).is_zero() {
        return Err(Error::Precondition("E lift meets W".into()));
    }
    if !lprime.intersect(w).is_zero() || lprime.rank() + w.rank() != n {
        return Err(Error::Precondition("L' is not a complement of W".into()));
    }
    if r >= 1 {
        check_vertical_vanishing(ms, e_quotient, r)?;
    }

    // dimension equality dim W = dim Λ^k_r (V/W)
    let e_in_lprime = project_to_complement(e_quotient, lprime, w)?;
    let s = expected_quotient_fiber_dim(lprime.rank(), e_in_lprime.rank(), k, r);
    if w.rank() != s {
        return Err(Error::Precondition(format!(
            "dimension equality fails: dim W = {}, dim Λ^k_r(V/W) = {s}",
            w.rank()
        )));
    }

    // phi matrix: W -> Λ^k (L')*, column per W basis vector
    let incl = lprime.inclusion_map();
    let phi_cols: Vec<Vec<Rat>> = w
        .basis()
        .iter()
        .map(|row| restricted_contraction(ms, row, &incl))
        .collect::<Result<_>>()?;
    let mut phi = Matrix::zero(binomial(lprime.rank(), k), w.rank());
    for (j, col) in phi_cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            phi[(i, j)] = c.clone();
        }
    }

    let scale = -Rat::new(1.into(), (k as i64 + 1).into());
    let mut graph_rows = Vec::with_capacity(lprime.rank());
    let mut psi_route_ok = true;
    for l_row in lprime.basis() {
        let target: Vec<Rat> = restricted_contraction(ms, l_row, &incl)?
            .into_iter()
            .map(|c| c * &scale)
            .collect();
        let Some(coeffs) = phi.solve(&target) else {
            psi_route_ok = false;
            break;
        };
        let mut v = l_row.clone();
        for (t, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                for (i, wc) in w.basis()[t].iter().enumerate() {
                    v[i] += c * wc;
                }
            }
        }
        graph_rows.push(v);
    }
    if psi_route_ok {
        return Ok(Subspace::from_rows(n, graph_rows));
    }
    // ψ need not restrict admissibly through an arbitrary complement when
    // r ≥ 2; the isotropy condition on a graph over L' is still linear in
    // the correction map, so solve it outright. A solution exists on any
    // true type-(k,r) space because some isotropic complement is a graph
    // over L'.
    graph_correction_complement(ms, w, lprime)
}

/// A k-isotropic complement as the graph of `χ : L' → W`, solving the full
/// linear system `ω(l_1, …, l_{k+1}) + Σ_t ω(l_1, …, χ(l_t), …, l_{k+1}) = 0`
/// over all (k+1)-tuples of the `L'` basis (quadratic terms vanish because
/// `W` is 1-isotropic).
fn graph_correction_complement(
    ms: &MSpace,
    w: &Subspace,
    lprime: &Subspace,
) -> Result<Subspace> {
    let n = ms.dim();
    let k = ms.order();
    let mp = lprime.rank();
    let sw = w.rank();
    let unknowns = mp * sw; // χ coefficients, column-major by L' index
    let combos = MultiIndex::enumerate(mp, k + 1);
    let mut rows = Vec::with_capacity(combos.len());
    let mut rhs = Vec::with_capacity(combos.len());
    for combo in &combos {
        let legs: Vec<&Vec<Rat>> = combo
            .indices()
            .iter()
            .map(|&i| &lprime.basis()[i as usize - 1])
            .collect();
        let full: Vec<Vec<Rat>> = legs.iter().map(|v| (*v).clone()).collect();
        rhs.push(-ms.omega().evaluate(&full)?);
        let mut row = vec![Rat::zero(); unknowns];
        for (slot, &leg_index) in combo.indices().iter().enumerate() {
            for (t, w_row) in w.basis().iter().enumerate() {
                let mut args = full.clone();
                args[slot] = w_row.clone();
                let coeff = ms.omega().evaluate(&args)?;
                if !coeff.is_zero() {
                    row[(leg_index as usize - 1) * sw + t] += coeff;
                }
            }
        }
        rows.push(row);
    }
    let solution = Matrix::from_rows(rows).solve(&rhs).ok_or_else(|| {
        Error::Hypothesis(
            "no isotropic graph complement exists; type-(k,r) hypotheses fail".into(),
        )
    })?;
    let graph_rows = lprime
        .basis()
        .iter()
        .enumerate()
        .map(|(i, l_row)| {
            let mut v = l_row.clone();
            for (t, w_row) in w.basis().iter().enumerate() {
                let c = &solution[i * sw + t];
                if !c.is_zero() {
                    for (slot, wc) in w_row.iter().enumerate() {
                        v[slot] += c * wc;
                    }
                }
            }
            v
        })
        .collect();
    Ok(Subspace::from_rows(n, graph_rows))
}

/// Witness of type-(k,r) structure: the multisymplectomorphism onto the
/// canonical model, invertible with `Φ*Ω_L = ω` exactly.
#[derive(Debug)]
pub struct TypeKrWitness {
    pub lagrangian_w: Subspace,
    pub e_quotient: Subspace,
    pub model: CanonicalModel,
    /// `Φ : V → model coordinates`.
    pub phi: LinearMap,
    pub phi_inverse: LinearMap,
}

/// Builds `Φ = id_L ⊕ φ` with `φ(α) = (ι_α ω)|_L` and verifies
/// `Φ* Ω_L = ω` coefficientwise.
pub fn build_multisymplectomorphism(
    ms: &MSpace,
    l: &Subspace,
    w: &Subspace,
    e: &Subspace,
    r: usize,
) -> Result<TypeKrWitness> {
    let n = ms.dim();
    let k = ms.order();
    if !l.contains(e) {
        return Err(Error::Precondition("E is not contained in L".into()));
    }
    if !l.intersect(w).is_zero() || l.rank() + w.rank() != n {
        return Err(Error::Precondition("V = L ⊕ W fails".into()));
    }
    if !ms.classify(l, k)?.lagrangian {
        return Err(Error::Precondition("L is not k-Lagrangian".into()));
    }
    if !ms.classify(w, 1)?.lagrangian {
        return Err(Error::Precondition("W is not 1-Lagrangian".into()));
    }
    if r >= 1 {
        check_vertical_vanishing(ms, e, r)?;
    }

    // adapted basis of L with E last
    let m = l.rank();
    let mut l_columns: Vec<Vec<Rat>> = Vec::with_capacity(m);
    {
        let mut acc = e.clone();
        for row in l.basis() {
            if acc.rank() == m {
                break;
            }
            let extended = acc.sum(&Subspace::from_rows(n, vec![row.clone()]));
            if extended.rank() > acc.rank() {
                l_columns.push(row.clone());
                acc = extended;
            }
        }
        l_columns.extend(e.basis().iter().cloned());
        if l_columns.len() != m {
            return Err(Error::Precondition(
                "could not adapt a basis of L to E".into(),
            ));
        }
    }
    let adapted_incl = LinearMap::from_columns(n, &l_columns);

    // the model over the adapted L
    let vd = VerticalData::coordinate(m, e.rank(), r)?;
    let model = build_canonical(vd, k)?;
    let s = model.fiber_dim();
    if w.rank() != s {
        return Err(Error::Precondition(format!(
            "dimension equality fails: dim W = {}, dim Λ^k_r L* = {s}",
            w.rank()
        )));
    }

    // φ columns: (ι_{w_t} ω)|_L in the admissible basis
    let full_basis = MultiIndex::enumerate(m, k);
    let admissible_pos: Vec<usize> = model.admissible.iter().map(|i| i.lex_rank(m)).collect();
    let mut phi = Matrix::zero(s, w.rank());
    for (t, w_row) in w.basis().iter().enumerate() {
        let coords = restricted_contraction(ms, w_row, &adapted_incl)?;
        for (pos, idx) in full_basis.iter().enumerate() {
            if !coords[pos].is_zero() && !admissible_pos.contains(&pos) {
                return Err(Error::Precondition(format!(
                    "(ι_w ω)|_L has a non-admissible component at index {idx}"
                )));
            }
        }
        for (row, &pos) in admissible_pos.iter().enumerate() {
            phi[(row, t)] = coords[pos].clone();
        }
    }

    // Φ: decompose each ambient basis vector along L ⊕ W, then map
    let mut decomp_cols: Vec<Vec<Rat>> = l_columns.clone();
    decomp_cols.extend(w.basis().iter().cloned());
    let decomp = Matrix::from_rows(
        (0..n)
            .map(|i| decomp_cols.iter().map(|c| c[i].clone()).collect())
            .collect(),
    );
    let mut phi_full = Matrix::zero(n, n);
    for axis in 0..n {
        let mut unit = vec![Rat::zero(); n];
        unit[axis] = rat(1);
        let coeffs = decomp
            .solve(&unit)
            .ok_or_else(|| Error::Precondition("V = L ⊕ W fails".into()))?;
        for i in 0..m {
            phi_full[(i, axis)] = coeffs[i].clone();
        }
        // fiber part: φ applied to the W component
        for row in 0..s {
            let mut acc = Rat::zero();
            for t in 0..w.rank() {
                if !coeffs[m + t].is_zero() {
                    acc += &coeffs[m + t] * &phi[(row, t)];
                }
            }
            phi_full[(m + row, axis)] = acc;
        }
    }
    let phi_map = LinearMap::new(phi_full);
    let phi_inverse = phi_map
        .inverse()
        .map_err(|_| Error::Precondition("Φ is not invertible; hypotheses fail".into()))?;

    // the exact round-trip identity
    let pulled = AltElement::pullback(&phi_map, model.space.omega())?;
    if &pulled != ms.omega() {
        return Err(Error::Precondition(
            "Φ*Ω_L ≠ ω: the data does not carry type-(k,r) structure".into(),
        ));
    }

    Ok(TypeKrWitness {
        lagrangian_w: w.clone(),
        e_quotient: e.clone(),
        model,
        phi: phi_map,
        phi_inverse,
    })
}

/// Per-form witness report of the flat-image inclusion
/// `Λ^k_{1,r} V* ⊆ ♭1(V)` on a canonical model.
#[derive(Debug)]
pub struct FlatImageReport {
    /// Basis forms of `Λ^k_{1,r} V*` with their lifts in `W` (empty vector
    /// when no lift exists).
    pub witnesses: Vec<(AltElement, Vec<Rat>)>,
    pub subspace_dim: usize,
    pub ok: bool,
}

/// Verifies that every basis form of `Λ^k_{1,r} V*` (1-vertical with respect
/// to `W`, r-fold vertical with respect to preimages of `E`) has an exact
/// `♭1`-preimage inside `W`.
pub fn flat_image_lemma_check(model: &CanonicalModel) -> Result<FlatImageReport> {
    if !model.vertical.is_regular_case() {
        return Err(Error::Precondition(
            "flat-image check requires a regular model (r ≠ 1)".into(),
        ));
    }
    let ms = &model.space;
    let n = ms.dim();
    let k = model.order;
    let r = model.vertical.vanishing_order();

    let one_vertical = annihilator_forms(n, k, &model.fiber)?;
    let forms = if r == 0 {
        one_vertical
    } else {
        let preimage = model.vertical_embedded.sum(&model.fiber);
        one_vertical.intersect(&vertical_forms_subspace(n, &preimage, r, k)?)
    };

    // solve ♭1(v) = α with v restricted to the fiber axes
    let flat1 = ms.flat(1)?;
    let m = model.vertical.base_dim();
    let mut restricted = Matrix::zero(flat1.matrix().rows(), model.fiber_dim());
    for t in 0..model.fiber_dim() {
        for row in 0..flat1.matrix().rows() {
            restricted[(row, t)] = flat1.matrix()[(row, m + t)].clone();
        }
    }
    let mut witnesses = Vec::new();
    let mut ok = true;
    for coeffs in forms.basis() {
        let alpha = AltElement::from_coefficient_vector(n, k, Variance::Covariant, coeffs);
        match restricted.solve(coeffs) {
            Some(x) => {
                let mut v = vec![Rat::zero(); n];
                for (t, c) in x.into_iter().enumerate() {
                    v[m + t] = c;
                }
                debug_assert_eq!(
                    AltElement::contract(
                        &AltElement::from_vector(Variance::Contravariant, &v),
                        ms.omega()
                    )?,
                    alpha
                );
                witnesses.push((alpha, v));
            }
            None => {
                ok = false;
                witnesses.push((alpha, Vec::new()));
            }
        }
    }
    Ok(FlatImageReport {
        subspace_dim: forms.rank(),
        witnesses,
        ok,
    })
}

/// Forms in `Λ^k V*` annihilated by one contraction with `W`.
fn annihilator_forms(n: usize, k: usize, w: &Subspace) -> Result<Subspace> {
    let form_coords = binomial(n, k);
    if w.is_zero() {
        return Ok(Subspace::full(form_coords));
    }
    let form_basis = MultiIndex::enumerate(n, k);
    let out_coords = binomial(n, k - 1);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for w_row in w.basis() {
        let wv = AltElement::from_vector(Variance::Contravariant, w_row);
        let mut block = vec![vec![Rat::zero(); form_coords]; out_coords];
        for (col, idx) in form_basis.iter().enumerate() {
            let alpha = AltElement::basis(n, Variance::Covariant, idx.indices())?;
            let image = AltElement::contract(&wv, &alpha)?;
            for (row, c) in image.coefficient_vector().into_iter().enumerate() {
                block[row][col] = c;
            }
        }
        rows.extend(block);
    }
    Ok(Subspace::from_rows(
        form_coords,
        Matrix::from_rows(rows).kernel_basis(),
    ))
}

/// Checks `ι_{v1 ∧ ⋯ ∧ vr} ω = 0` over a basis of `Λ^r P`.
fn check_vertical_vanishing(ms: &MSpace, p: &Subspace, r: usize) -> Result<()> {
    if r > p.rank() {
        return Ok(());
    }
    let basis_elems: Vec<AltElement> = p
        .basis()
        .iter()
        .map(|row| AltElement::from_vector(Variance::Contravariant, row))
        .collect();
    for combo in MultiIndex::enumerate(p.rank(), r) {
        let mut wedge = AltElement::scalar(ms.dim(), Variance::Contravariant, rat(1));
        for &t in combo.indices() {
            wedge = wedge.wedge(&basis_elems[t as usize - 1])?;
        }
        if wedge.is_zero() {
            continue;
        }
        if !AltElement::contract(&wedge, ms.omega())?.is_zero() {
            return Err(Error::Precondition(
                "r-fold vanishing fails on the vertical preimage".into(),
            ));
        }
    }
    Ok(())
}

/// The L'-components of the basis of `E`, in L'-basis coordinates.
fn project_to_complement(e: &Subspace, lprime: &Subspace, w: &Subspace) -> Result<Subspace> {
    let n = e.ambient_dim();
    if e.is_zero() {
        return Ok(Subspace::zero(lprime.rank()));
    }
    let mut cols: Vec<Vec<Rat>> = lprime.basis().to_vec();
    cols.extend(w.basis().iter().cloned());
    let decomp = Matrix::from_rows(
        (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect(),
    );
    let rows = e
        .basis()
        .iter()
        .map(|row| {
            decomp
                .solve(row)
                .map(|coeffs| coeffs[..lprime.rank()].to_vec())
                .ok_or_else(|| Error::Precondition("E does not split along L' ⊕ W".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::from_rows(lprime.rank(), rows))
}

/// Admissible dimension of `Λ^k_r` on a quotient of dimension `m` with a
/// vertical subspace of dimension `e`.
fn expected_quotient_fiber_dim(m: usize, e: usize, k: usize, r: usize) -> usize {
    if r == 0 || r > e {
        binomial(m, k)
    } else {
        (0..r)
            .filter(|j| k >= *j)
            .map(|j| binomial(e, j) * binomial(m - e, k - j))
            .sum()
    }
}

/// `(ι_v ω)` pulled back along `incl`, as a coefficient vector over the
/// lexicographic k-index basis of the source.
fn restricted_contraction(ms: &MSpace, v: &[Rat], incl: &LinearMap) -> Result<Vec<Rat>> {
    let vv = AltElement::from_vector(Variance::Contravariant, v);
    let contracted = AltElement::contract(&vv, ms.omega())?;
    Ok(AltElement::pullback(incl, &contracted)?.coefficient_vector())
}
