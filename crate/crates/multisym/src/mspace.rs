//! Multisymplectic vector spaces and subspace classification.
//!
//! `(V, ω)` of order `k` means `ω ∈ Λ^{k+1} V*`. The jth-orthogonal of a
//! subspace `W` is
//!
//! ```text
//! W^{⊥,j} = { v : ι_{v ∧ w1 ∧ ⋯ ∧ wj} ω = 0  for all wi ∈ W },   1 ≤ j ≤ k
//! ```
//!
//! and the classification predicates absorb `ker ♭1`:
//! * j-isotropic:   `W ⊆ W^{⊥,j}`
//! * j-coisotropic: `W^{⊥,j} ⊆ W + ker ♭1`
//! * j-Lagrangian:  both inclusions hold (equivalently
//!   `W + ker ♭1 = W^{⊥,j} + ker ♭1`, since `ker ♭1 ⊆ W^{⊥,j}` always).
//!
//! Degenerate forms are first-class citizens; regularity is just
//! `ker ♭1 = 0`.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{AltElement, LinearMap, MultiIndex, Variance};
use crate::linalg::{binomial, Matrix};
use crate::scalar::Rat;
use crate::subspace::Subspace;

/// A multisymplectic vector space `(Q^n, ω)` of order `k`, with lazily cached
/// flat-map matrices. The caches are write-once, so shared references can
/// classify concurrently.
#[derive(Debug)]
pub struct MSpace {
    dim: usize,
    order: usize,
    omega: AltElement,
    flats: Vec<OnceLock<LinearMap>>,
    kernel1: OnceLock<Subspace>,
}

impl MSpace {
    /// Wraps a `(k+1)`-form on Q^n. The degree and variance are checked.
    pub fn new(dim: usize, order: usize, omega: AltElement) -> Result<Self> {
        if order == 0 {
            return Err(Error::Degree("order k must be at least 1".into()));
        }
        if omega.variance() != Variance::Covariant {
            return Err(Error::AmbientMismatch("ω must be a form".into()));
        }
        if omega.dim() != dim {
            return Err(Error::AmbientMismatch(format!(
                "ω lives in dimension {}, space has dimension {dim}",
                omega.dim()
            )));
        }
        if omega.degree() != order + 1 {
            return Err(Error::Degree(format!(
                "ω has degree {}, expected k+1 = {}",
                omega.degree(),
                order + 1
            )));
        }
        let flats = (0..=order).map(|_| OnceLock::new()).collect();
        Ok(MSpace {
            dim,
            order,
            omega,
            flats,
            kernel1: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> &AltElement {
        &self.omega
    }

    /// Matrix of `♭_q : Λ^q V → Λ^{k+1-q} V*`, `u ↦ ι_u ω`, in the
    /// lexicographic multi-index bases.
    pub fn flat(&self, q: usize) -> Result<&LinearMap> {
        if q < 1 || q > self.order + 1 {
            return Err(Error::Degree(format!(
                "flat degree q = {q} out of range 1..={}",
                self.order + 1
            )));
        }
        Ok(self.flats[q - 1].get_or_init(|| {
            let source = MultiIndex::enumerate(self.dim, q);
            let target_rows = binomial(self.dim, self.order + 1 - q);
            let mut m = Matrix::zero(target_rows, source.len());
            for (col, idx) in source.iter().enumerate() {
                let u = AltElement::basis(self.dim, Variance::Contravariant, idx.indices())
                    .expect("basis index in range");
                let image = AltElement::contract(&u, &self.omega).expect("degrees checked");
                for (row, c) in image.coefficient_vector().into_iter().enumerate() {
                    m[(row, col)] = c;
                }
            }
            LinearMap::new(m)
        }))
    }

    /// `ker ♭1`, the degenerate directions of ω.
    pub fn kernel_flat1(&self) -> &Subspace {
        self.kernel1.get_or_init(|| {
            let f = self.flat(1).expect("q = 1 always valid");
            Subspace::from_rows(self.dim, f.matrix().kernel_basis())
        })
    }

    /// Is `v ↦ ι_v ω` injective?
    pub fn is_regular(&self) -> bool {
        self.kernel_flat1().is_zero()
    }

    /// The jth-orthogonal `W^{⊥,j}`, computed as the kernel of the stacked
    /// contraction system over a basis of Λ^j W. When `j > rank W` every
    /// constraint is vacuous and the whole space is returned.
    pub fn orthogonal(&self, w: &Subspace, j: usize) -> Result<Subspace> {
        self.check_subspace(w)?;
        if j < 1 || j > self.order {
            return Err(Error::Degree(format!(
                "orthogonal index j = {j} out of range 1..={}",
                self.order
            )));
        }
        if j > w.rank() {
            return Ok(Subspace::full(self.dim));
        }
        let basis_elems: Vec<AltElement> = w
            .basis()
            .iter()
            .map(|row| AltElement::from_vector(Variance::Contravariant, row))
            .collect();
        let out_coords = binomial(self.dim, self.order - j);
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for combo in MultiIndex::enumerate(w.rank(), j) {
            let mut wedge =
                AltElement::scalar(self.dim, Variance::Contravariant, crate::scalar::rat(1));
            for &t in combo.indices() {
                wedge = wedge.wedge(&basis_elems[t as usize - 1])?;
            }
            if wedge.is_zero() {
                continue;
            }
            // the map v ↦ ι_{v ∧ wedge} ω is linear in v; one column per axis
            let mut block = vec![vec![Rat::zero(); self.dim]; out_coords];
            for axis in 1..=self.dim {
                let v = AltElement::basis(self.dim, Variance::Contravariant, &[axis as u32])?;
                let u = v.wedge(&wedge)?;
                let image = AltElement::contract(&u, &self.omega)?;
                for (row, c) in image.coefficient_vector().into_iter().enumerate() {
                    block[row][axis - 1] = c;
                }
            }
            rows.extend(block);
        }
        if rows.is_empty() {
            return Ok(Subspace::full(self.dim));
        }
        Ok(Subspace::from_rows(
            self.dim,
            Matrix::from_rows(rows).kernel_basis(),
        ))
    }

    /// Classification of `W` with respect to the jth-orthogonal.
    pub fn classify(&self, w: &Subspace, j: usize) -> Result<SubspaceClass> {
        let orth = self.orthogonal(w, j)?;
        let ker = self.kernel_flat1();
        let isotropic = orth.contains(w);
        let coisotropic = w.sum(ker).contains(&orth);
        // W ⊆ W^{⊥,j} + ker ♭1 is equivalent to isotropy since ker ♭1 ⊆ W^{⊥,j}
        let lagrangian = isotropic && coisotropic;
        let orth1 = if j == 1 {
            orth.clone()
        } else {
            self.orthogonal(w, 1)?
        };
        let nondegenerate = w.intersect(&orth1).is_zero();
        Ok(SubspaceClass {
            j,
            isotropic,
            coisotropic,
            lagrangian,
            nondegenerate,
            orthogonal: orth,
        })
    }

    /// k-isotropy via the pullback characterization: `i*ω = 0` for the
    /// inclusion `i : W → V`.
    pub fn is_k_isotropic_via_pullback(&self, w: &Subspace) -> Result<bool> {
        self.check_subspace(w)?;
        let incl = w.inclusion_map();
        Ok(AltElement::pullback(&incl, &self.omega)?.is_zero())
    }

    /// Checks the structural properties of the jth-orthogonal on a pair of
    /// subspaces: (a) `{0}^{⊥,j} = V`, (b) `V^{⊥,1} = ker ♭1`,
    /// (c) `(W1+W2)^{⊥,j} ⊆ W1^{⊥,j} ∩ W2^{⊥,j}`,
    /// (d) `W1^{⊥,j} + W2^{⊥,j} ⊆ (W1∩W2)^{⊥,j}`,
    /// (e) clause (c) at j = 1.
    pub fn orthogonal_properties_check(
        &self,
        w1: &Subspace,
        w2: &Subspace,
        j: usize,
    ) -> Result<OrthogonalPropertiesReport> {
        let zero_orth_full = (1..=self.order).try_fold(true, |acc, jj| {
            Ok::<_, Error>(acc && self.orthogonal(&Subspace::zero(self.dim), jj)?.is_full())
        })?;
        let full_orth_is_kernel =
            self.orthogonal(&Subspace::full(self.dim), 1)? == *self.kernel_flat1();
        let sum = w1.sum(w2);
        let o_sum = self.orthogonal(&sum, j)?;
        let o1 = self.orthogonal(w1, j)?;
        let o2 = self.orthogonal(w2, j)?;
        let sum_orthogonal_in_meet = o1.intersect(&o2).contains(&o_sum);
        let o_meet = self.orthogonal(&w1.intersect(w2), j)?;
        let orthogonal_sum_in_meet_orthogonal = o_meet.contains(&o1.sum(&o2));
        let o_sum1 = self.orthogonal(&sum, 1)?;
        let o11 = self.orthogonal(w1, 1)?;
        let o21 = self.orthogonal(w2, 1)?;
        let first_orthogonal_clause = o11.intersect(&o21).contains(&o_sum1);
        Ok(OrthogonalPropertiesReport {
            zero_orth_full,
            full_orth_is_kernel,
            sum_orthogonal_in_meet,
            orthogonal_sum_in_meet_orthogonal,
            first_orthogonal_clause,
        })
    }

    /// Checks the isotropic-decomposition statement: if `U` is k-isotropic,
    /// `W` is 1-isotropic and `V = U ⊕ W`, then `U` is k-Lagrangian and `W`
    /// is 1-Lagrangian. Returns the two classifications.
    pub fn isotropic_decomposition_check(
        &self,
        u: &Subspace,
        w: &Subspace,
    ) -> Result<(SubspaceClass, SubspaceClass)> {
        let cu = self.classify(u, self.order)?;
        if !cu.isotropic {
            return Err(Error::Precondition("U is not k-isotropic".into()));
        }
        let cw = self.classify(w, 1)?;
        if !cw.isotropic {
            return Err(Error::Precondition("W is not 1-isotropic".into()));
        }
        if !u.intersect(w).is_zero() || u.rank() + w.rank() != self.dim {
            return Err(Error::Precondition("U ⊕ W = V fails".into()));
        }
        Ok((cu, cw))
    }

    fn check_subspace(&self, w: &Subspace) -> Result<()> {
        if w.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch(format!(
                "subspace ambient {} vs space dimension {}",
                w.ambient_dim(),
                self.dim
            )));
        }
        Ok(())
    }
}

/// Classification flags of one subspace for one orthogonal index `j`,
/// together with the computed orthogonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceClass {
    pub j: usize,
    pub isotropic: bool,
    pub coisotropic: bool,
    pub lagrangian: bool,
    pub nondegenerate: bool,
    pub orthogonal: Subspace,
}

/// Per-clause outcome of [`MSpace::orthogonal_properties_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalPropertiesReport {
    pub zero_orth_full: bool,
    pub full_orth_is_kernel: bool,
    pub sum_orthogonal_in_meet: bool,
    pub orthogonal_sum_in_meet_orthogonal: bool,
    pub first_orthogonal_clause: bool,
}

impl OrthogonalPropertiesReport {
    pub fn all_hold(&self) -> bool {
        self.zero_orth_full
            && self.full_orth_is_kernel
            && self.sum_orthogonal_in_meet
            && self.orthogonal_sum_in_meet_orthogonal
            && self.first_orthogonal_clause
    }
}
