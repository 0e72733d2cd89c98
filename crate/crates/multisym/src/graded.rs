//! Graded brackets on classes of Hamiltonian forms.
//!
//! On a multisymplectic coordinate space `(Q^n, ω)` of order `k`, a
//! Hamiltonian pair is `(U, α)` with `ι_U ω = dα`. Classes live in the
//! quotient by closed forms; the class of `α` has `deg = k - 1 - order(α)`.
//! The brackets are
//!
//! ```text
//! {α̂, β̂}  = -(ι_{U∧V} ω)^,       {α̂, β̂}• = (-1)^{deg β̂} {α̂, β̂}
//! ```
//!
//! and `{·,·}•` satisfies graded antisymmetry and graded Jacobi as class
//! identities (see [`graded_bracket`] for why the sign rides on the second
//! argument here). Because the flat maps need not be injective, every class
//! operation takes the realizing multivector field explicitly and checks it.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::Variance;
use crate::poly::Poly;
use crate::polyalt::{PolyAlt, PolyMap};
use crate::scalar::Rat;

/// A Hamiltonian-form class: a representative form of order `l` on a space
/// of order `k`, taken modulo closed forms. `deg = k - 1 - l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    space_order: usize,
    rep: PolyAlt,
}

impl GradedClass {
    pub fn new(space_order: usize, rep: PolyAlt) -> Result<Self> {
        if rep.variance() != Variance::Covariant {
            return Err(Error::AmbientMismatch("representative must be a form".into()));
        }
        if rep.degree() + 1 > space_order {
            return Err(Error::Degree(format!(
                "representative order {} exceeds k - 1 = {}",
                rep.degree(),
                space_order - 1
            )));
        }
        Ok(GradedClass { space_order, rep })
    }

    pub fn representative(&self) -> &PolyAlt {
        &self.rep
    }

    pub fn space_order(&self) -> usize {
        self.space_order
    }

    /// Form order of the representative.
    pub fn order(&self) -> usize {
        self.rep.degree()
    }

    /// Graded degree `k - 1 - order`.
    pub fn deg(&self) -> usize {
        self.space_order - 1 - self.order()
    }

    /// Two classes agree when the difference of representatives is closed.
    pub fn same_class(&self, other: &GradedClass) -> Result<bool> {
        if self.space_order != other.space_order || self.order() != other.order() {
            return Ok(false);
        }
        self.rep.sub(&other.rep)?.is_closed()
    }

    /// The zero class: a closed representative.
    pub fn is_zero_class(&self) -> Result<bool> {
        self.rep.is_closed()
    }
}

/// Verifies `ι_U ω = d(rep)`.
pub fn check_witness(omega: &PolyAlt, class: &GradedClass, u: &PolyAlt) -> Result<()> {
    let contracted = PolyAlt::contract(u, omega)?;
    if contracted != class.rep.d()? {
        return Err(Error::WitnessMismatch(
            "ι_U ω does not equal d(representative)".into(),
        ));
    }
    Ok(())
}

/// The bracket `{α̂, β̂}•` with explicit witnesses. Returns the class and a
/// Hamiltonian witness for it, so brackets nest.
///
/// Representative: `(-1)^{deg β̂} (-ι_{U∧V} ω)`; witness:
/// `(-1)^{deg β̂} [U, V]`, valid because `ι_{[U,V]} ω = -d ι_{U∧V} ω`.
///
/// The sign rides on the second argument. With the legs-in-front interior
/// product this is the placement under which graded antisymmetry and graded
/// Jacobi both hold; putting it on the first argument (the mirror-handed
/// convention) keeps antisymmetry but breaks Jacobi on mixed-parity degrees.
/// On classes of order k-1 (degree 0) the two agree.
pub fn graded_bracket(
    omega: &PolyAlt,
    a: &GradedClass,
    ua: &PolyAlt,
    b: &GradedClass,
    ub: &PolyAlt,
) -> Result<(GradedClass, PolyAlt)> {
    if !omega.is_closed()? {
        return Err(Error::Precondition("ω is not closed".into()));
    }
    check_witness(omega, a, ua)?;
    check_witness(omega, b, ub)?;
    let k = a.space_order;
    if b.space_order != k {
        return Err(Error::Degree("mixed space orders".into()));
    }
    let out_order = (a.order() + b.order() + 1)
        .checked_sub(k)
        .ok_or_else(|| Error::Degree("bracket order would be negative".into()))?;
    let rep_raw = PolyAlt::contract(&ua.wedge(ub)?, omega)?.neg();
    debug_assert_eq!(rep_raw.degree(), out_order);
    let witness_raw = PolyAlt::schouten(ua, ub)?;
    let (rep, witness) = if b.deg() % 2 == 0 {
        (rep_raw, witness_raw)
    } else {
        (rep_raw.neg(), witness_raw.neg())
    };
    let class = GradedClass::new(k, rep)?;
    debug_assert!(check_witness(omega, &class, &witness).is_ok());
    Ok((class, witness))
}

/// Per-identity outcome of [`graded_identities_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdentitiesReport {
    /// `{a,b}• = -(-1)^{deg a · deg b} {b,a}•` as classes, on all three pairs.
    pub antisymmetry: bool,
    /// `(-1)^{deg a · deg c}{a,{b,c}•}• + cyclic = 0` as a class.
    pub jacobi: bool,
}

impl GradedIdentitiesReport {
    pub fn all_hold(&self) -> bool {
        self.antisymmetry && self.jacobi
    }
}

/// Checks graded antisymmetry and graded Jacobi for `{·,·}•` on a triple of
/// Hamiltonian classes with witnesses.
pub fn graded_identities_check(
    omega: &PolyAlt,
    triple: &[(GradedClass, PolyAlt); 3],
) -> Result<GradedIdentitiesReport> {
    let [(a, ua), (b, ub), (c, uc)] = triple;
    let mut antisymmetry = true;
    for ((x, uxw), (y, uyw)) in [((a, ua), (b, ub)), ((a, ua), (c, uc)), ((b, ub), (c, uc))] {
        let (xy, _) = graded_bracket(omega, x, uxw, y, uyw)?;
        let (yx, _) = graded_bracket(omega, y, uyw, x, uxw)?;
        let flipped = if (x.deg() * y.deg()) % 2 == 0 {
            GradedClass::new(xy.space_order, yx.representative().neg())?
        } else {
            yx.clone()
        };
        if !xy.same_class(&flipped)? {
            antisymmetry = false;
        }
    }

    // (-1)^{deg a deg c} {a, {b,c}•}• + (-1)^{deg b deg a} {b, {c,a}•}• +
    // (-1)^{deg c deg b} {c, {a,b}•}• = 0 as a class
    let nested = |x: (&GradedClass, &PolyAlt),
                  y: (&GradedClass, &PolyAlt),
                  z: (&GradedClass, &PolyAlt)|
     -> Result<PolyAlt> {
        let (inner, inner_w) = graded_bracket(omega, y.0, y.1, z.0, z.1)?;
        let (outer, _) = graded_bracket(omega, x.0, x.1, &inner, &inner_w)?;
        let sign = (x.0.deg() * z.0.deg()) % 2;
        Ok(if sign == 0 {
            outer.representative().clone()
        } else {
            outer.representative().neg()
        })
    };
    let t1 = nested((a, ua), (b, ub), (c, uc))?;
    let t2 = nested((b, ub), (c, uc), (a, ua))?;
    let t3 = nested((c, uc), (a, ua), (b, ub))?;
    let jacobi = t1.add(&t2)?.add(&t3)?.is_closed()?;

    Ok(GradedIdentitiesReport {
        antisymmetry,
        jacobi,
    })
}

/// A coordinate slice `N = { x_c = 0 : c ∈ zeroed }` of `Q^nvars`.
#[derive(Debug, Clone)]
pub struct CoordinateSlice {
    pub nvars: usize,
    /// 1-based zeroed axes, strictly increasing.
    pub zeroed: Vec<usize>,
}

impl CoordinateSlice {
    pub fn new(nvars: usize, mut zeroed: Vec<usize>) -> Result<Self> {
        zeroed.sort_unstable();
        zeroed.dedup();
        if zeroed.iter().any(|&c| c == 0 || c > nvars) {
            return Err(Error::Parse("zeroed axis out of range".into()));
        }
        Ok(CoordinateSlice { nvars, zeroed })
    }

    pub fn dim(&self) -> usize {
        self.nvars - self.zeroed.len()
    }

    /// 1-based kept axes.
    pub fn kept(&self) -> Vec<usize> {
        (1..=self.nvars)
            .filter(|i| !self.zeroed.contains(i))
            .collect()
    }

    /// Inclusion `Q^{dim} → Q^{nvars}` as a polynomial map.
    pub fn inclusion(&self) -> PolyMap {
        let d = self.dim();
        let kept = self.kept();
        let components = (1..=self.nvars)
            .map(|i| match kept.iter().position(|&kk| kk == i) {
                Some(pos) => Poly::var(d, pos),
                None => Poly::zero(d),
            })
            .collect();
        PolyMap::new(d, components)
    }

    /// The tangent space of `N` as a subspace of the ambient.
    pub fn tangent(&self) -> crate::subspace::Subspace {
        crate::subspace::Subspace::coordinate(self.nvars, &self.kept())
    }

    /// Substitutes the slice equations into a polynomial, keeping the
    /// ambient arity.
    pub fn restrict_poly(&self, p: &Poly) -> Poly {
        let images: Vec<Poly> = (1..=self.nvars)
            .map(|i| {
                if self.zeroed.contains(&i) {
                    Poly::zero(self.nvars)
                } else {
                    Poly::var(self.nvars, i - 1)
                }
            })
            .collect();
        p.substitute(&images)
    }
}

/// Outcome of the coisotropic-subalgebra check for one pair of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraPairReport {
    /// Both witnesses were tangent to `N` up to kernel-valued corrections.
    pub witnesses_adjustable: bool,
    /// `i*(ι_{X_α ∧ X_β} ω) = 0`, the mechanism closing the subalgebra.
    pub contraction_vanishes_on_slice: bool,
    /// The bracket class has `i* d(rep) = 0`, i.e. it stays in the ideal.
    pub bracket_in_ideal: bool,
}

impl SubalgebraPairReport {
    pub fn all_hold(&self) -> bool {
        self.witnesses_adjustable && self.contraction_vanishes_on_slice && self.bracket_in_ideal
    }
}

/// A Hamiltonian class with the multivector field realizing it.
pub type WitnessedClass = (GradedClass, PolyAlt);

/// For Hamiltonian (k-1)-form classes whose differentials pull back to zero
/// on the slice, verifies that their `{·,·}•` bracket stays in the same
/// ideal. Witness vector fields must be tangent-adjustable to `N` by
/// `ker ♭1`-valued fields (always possible when `N` is k-coisotropic).
pub fn coisotropic_subalgebra_check(
    omega: &PolyAlt,
    slice: &CoordinateSlice,
    pairs: &[(WitnessedClass, WitnessedClass)],
) -> Result<Vec<SubalgebraPairReport>> {
    if !omega.is_closed()? {
        return Err(Error::Precondition("ω is not closed".into()));
    }
    let incl = slice.inclusion();
    let mut reports = Vec::new();
    for ((a, ua), (b, ub)) in pairs {
        check_witness(omega, a, ua)?;
        check_witness(omega, b, ub)?;
        if a.deg() != 0 || b.deg() != 0 {
            return Err(Error::Degree(
                "subalgebra check expects classes of order k-1".into(),
            ));
        }
        for (cls, name) in [(a, "first"), (b, "second")] {
            if !cls.representative().d()?.pullback_map(&incl)?.is_zero() {
                return Err(Error::Precondition(format!(
                    "{name} class is not in the ideal: i*dα ≠ 0"
                )));
            }
        }
        let witnesses_adjustable =
            witness_tangent_adjustable(omega, slice, ua)? && witness_tangent_adjustable(omega, slice, ub)?;
        if !witnesses_adjustable {
            return Err(Error::Precondition(
                "witness cannot be adjusted to be tangent by kernel-valued fields".into(),
            ));
        }
        let contraction = PolyAlt::contract(&ua.wedge(ub)?, omega)?;
        let contraction_vanishes_on_slice = contraction.pullback_map(&incl)?.is_zero();
        let (bracket, _) = graded_bracket(omega, a, ua, b, ub)?;
        let bracket_in_ideal = bracket
            .representative()
            .d()?
            .pullback_map(&incl)?
            .is_zero();
        reports.push(SubalgebraPairReport {
            witnesses_adjustable,
            contraction_vanishes_on_slice,
            bracket_in_ideal,
        });
    }
    Ok(reports)
}

/// Can `X` be made tangent to the slice by adding a `ker ♭1`-valued field?
/// The transverse components of `X` restricted to `N` must lie, monomial by
/// monomial, in the span of the kernel's transverse components. Constant-
/// coefficient `ω` only (the kernel is then a fixed subspace).
fn witness_tangent_adjustable(
    omega: &PolyAlt,
    slice: &CoordinateSlice,
    x: &PolyAlt,
) -> Result<bool> {
    use crate::linalg::Matrix;
    if x.degree() != 1 {
        return Err(Error::Degree("tangency adjustment expects vector fields".into()));
    }
    let n = slice.nvars;
    // transverse components on N
    let transverse: Vec<Poly> = slice
        .zeroed
        .iter()
        .map(|&c| {
            let idx = crate::exterior::MultiIndex::new(vec![c as u32]).expect("axis");
            slice.restrict_poly(&x.coefficient(&idx))
        })
        .collect();
    if transverse.iter().all(Poly::is_zero) {
        return Ok(true);
    }
    // kernel of ♭1 for the constant part of ω (exact when ω is constant)
    let omega0 = omega.eval_point(&vec![Rat::zero(); n]);
    let constant = {
        let back = PolyAlt::from_alt(&omega0);
        back == *omega
    };
    if !constant {
        // without a fixed kernel the witness must already be tangent
        return Ok(false);
    }
    let ms = crate::mspace::MSpace::new(n, omega0.degree() - 1, omega0)?;
    let kernel = ms.kernel_flat1();
    if kernel.is_zero() {
        return Ok(false);
    }
    // solve, per monomial, transverse(X) = -transverse(Σ f_j z_j)
    let mut kmat = Matrix::zero(slice.zeroed.len(), kernel.rank());
    for (j, z) in kernel.basis().iter().enumerate() {
        for (i, &c) in slice.zeroed.iter().enumerate() {
            kmat[(i, j)] = z[c - 1].clone();
        }
    }
    let mut monomials: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for t in &transverse {
        for (m, _) in t.terms() {
            monomials.insert(m.exponents().to_vec());
        }
    }
    for mono in monomials {
        let rhs: Vec<Rat> = transverse
            .iter()
            .map(|t| {
                t.terms()
                    .find(|(m, _)| m.exponents() == mono.as_slice())
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rat::zero)
            })
            .collect();
        if kmat.solve(&rhs).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`conserved_quantity_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservedReport {
    /// `⟨dα, X_H⟩ = 0` identically.
    pub conserved: bool,
    /// The full contraction itself.
    pub pairing: Poly,
    /// When a witness for α was supplied: the `{α̂, Ĥ}•` representative
    /// vanishes identically. Representative-level vanishing is the criterion
    /// that matches conservation exactly; a merely closed (constant)
    /// representative would not.
    pub bracket_representative_zero: Option<bool>,
    /// The weaker class-level test (representative closed).
    pub bracket_class_zero: Option<bool>,
}

/// Tests conservation of `α` along a Hamiltonian multivector field `X_H`
/// with `ι_{X_H} ω = dH`, and cross-checks the bracket criterion when a
/// Hamiltonian witness for `α` is supplied.
pub fn conserved_quantity_check(
    omega: &PolyAlt,
    x_h: &PolyAlt,
    h: &PolyAlt,
    alpha: &PolyAlt,
    u_alpha: Option<&PolyAlt>,
) -> Result<ConservedReport> {
    if PolyAlt::contract(x_h, omega)? != h.d()? {
        return Err(Error::WitnessMismatch("ι_{X_H} ω ≠ dH".into()));
    }
    let pairing = PolyAlt::pairing(&alpha.d()?, x_h)?;
    let conserved = pairing.is_zero();
    let (mut rep_zero, mut class_zero) = (None, None);
    if let Some(ua) = u_alpha {
        let k = omega.degree() - 1;
        let a_class = GradedClass::new(k, alpha.clone())?;
        let h_class = GradedClass::new(k, h.clone())?;
        let (bracket, _) = graded_bracket(omega, &a_class, ua, &h_class, x_h)?;
        rep_zero = Some(bracket.representative().is_zero());
        class_zero = Some(bracket.is_zero_class()?);
    }
    Ok(ConservedReport {
        conserved,
        pairing,
        bracket_representative_zero: rep_zero,
        bracket_class_zero: class_zero,
    })
}
