//! Differential forms and multivector fields with polynomial coefficients
//! on a single coordinate chart.
//!
//! One sparse type covers both variances, mirroring [`AltElement`]. On top
//! of the exterior algebra it provides the exterior derivative, the
//! Schouten-Nijenhuis bracket (in the convention pinned by the identity
//! `ι_{[U,V]} ω = -d ι_{U∧V} ω` for closed `ω` and locally Hamiltonian
//! `U, V`), the Tulczyjew Lie derivative
//! `£_U ω = ι_U dω + (-1)^{q+1} d ι_U ω`, and the radial homotopy operator
//! that produces Hamiltonian potentials.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{AltElement, MultiIndex, Variance};
use crate::poly::Poly;
use crate::scalar::{rat, Rat};

/// Sparse alternating element with polynomial coefficients: a differential
/// form (covariant) or multivector field (contravariant) on `Q^nvars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyAlt {
    nvars: usize,
    degree: usize,
    variance: Variance,
    terms: BTreeMap<MultiIndex, Poly>,
}

impl PolyAlt {
    pub fn zero(nvars: usize, degree: usize, variance: Variance) -> Self {
        PolyAlt {
            nvars,
            degree,
            variance,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 element (a function).
    pub fn function(nvars: usize, variance: Variance, f: Poly) -> Self {
        let mut e = PolyAlt::zero(nvars, 0, variance);
        e.insert(MultiIndex::empty(), f);
        e
    }

    pub fn from_terms<I>(nvars: usize, degree: usize, variance: Variance, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Poly)>,
    {
        let mut e = PolyAlt::zero(nvars, degree, variance);
        for (raw, c) in terms {
            if raw.len() != degree {
                return Err(Error::Degree(format!(
                    "index {raw:?} has degree {}, element has degree {degree}",
                    raw.len()
                )));
            }
            let Some((idx, sign)) = MultiIndex::sort_signed(&raw) else {
                continue;
            };
            if idx.max_entry() as usize > nvars {
                return Err(Error::AmbientMismatch(format!(
                    "index {idx} exceeds variable count {nvars}"
                )));
            }
            e.insert(idx, if sign < 0 { c.neg() } else { c });
        }
        Ok(e)
    }

    /// Constant-coefficient element from an [`AltElement`].
    pub fn from_alt(a: &AltElement) -> Self {
        let mut e = PolyAlt::zero(a.dim(), a.degree(), a.variance());
        for (idx, c) in a.terms() {
            e.insert(idx.clone(), Poly::constant(a.dim(), c.clone()));
        }
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Poly {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// The polynomial of a degree-0 element.
    pub fn scalar_poly(&self) -> Poly {
        assert_eq!(self.degree, 0, "scalar_poly needs a degree-0 element");
        self.coefficient(&MultiIndex::empty())
    }

    fn insert(&mut self, idx: MultiIndex, c: Poly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_space(&self, other: &PolyAlt) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "variable counts {} and {}",
                self.nvars, other.nvars
            )));
        }
        if self.variance != other.variance {
            return Err(Error::AmbientMismatch(
                "mixed covariant/contravariant operands".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyAlt) -> Result<PolyAlt> {
        self.check_same_space(other)?;
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyAlt) -> Result<PolyAlt> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyAlt {
        let mut out = PolyAlt::zero(self.nvars, self.degree, self.variance);
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PolyAlt {
        let mut out = PolyAlt::zero(self.nvars, self.degree, self.variance);
        if c.is_zero() {
            return out;
        }
        for (idx, v) in &self.terms {
            out.terms.insert(idx.clone(), v.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, f: &Poly) -> PolyAlt {
        let mut out = PolyAlt::zero(self.nvars, self.degree, self.variance);
        for (idx, v) in &self.terms {
            out.insert(idx.clone(), v.mul(f));
        }
        out
    }

    pub fn wedge(&self, other: &PolyAlt) -> Result<PolyAlt> {
        self.check_same_space(other)?;
        let degree = self.degree + other.degree;
        let mut out = PolyAlt::zero(self.nvars, degree, self.variance);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((idx, sign)) = ia.merge_signed(ib) {
                    let c = ca.mul(cb);
                    out.insert(idx, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product `ι_u ω`, multivector legs in front.
    pub fn contract(u: &PolyAlt, omega: &PolyAlt) -> Result<PolyAlt> {
        if u.variance != Variance::Contravariant || omega.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch(
                "contract expects a multivector field and a form".into(),
            ));
        }
        if u.nvars != omega.nvars {
            return Err(Error::AmbientMismatch(format!(
                "variable counts {} and {}",
                u.nvars, omega.nvars
            )));
        }
        if u.degree > omega.degree {
            return Err(Error::Degree(format!(
                "cannot contract degree {} into degree {}",
                u.degree, omega.degree
            )));
        }
        let mut out = PolyAlt::zero(u.nvars, omega.degree - u.degree, Variance::Covariant);
        for (ij, cu) in &u.terms {
            for (ii, cw) in &omega.terms {
                if let Some((rest, sign)) = ii.split_front(ij) {
                    let c = cu.mul(cw);
                    out.insert(rest, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `⟨ω, u⟩`: full pairing of a form and a multivector field of equal
    /// degree.
    pub fn pairing(omega: &PolyAlt, u: &PolyAlt) -> Result<Poly> {
        if omega.degree != u.degree {
            return Err(Error::Degree(format!(
                "pairing degrees {} and {}",
                omega.degree, u.degree
            )));
        }
        Ok(PolyAlt::contract(u, omega)?.scalar_poly())
    }

    /// Exterior derivative `d : Ω^p → Ω^{p+1}`.
    pub fn d(&self) -> Result<PolyAlt> {
        if self.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch("d expects a form".into()));
        }
        let mut out = PolyAlt::zero(self.nvars, self.degree + 1, Variance::Covariant);
        for (idx, c) in &self.terms {
            for i in 0..self.nvars {
                let dc = c.partial(i);
                if dc.is_zero() {
                    continue;
                }
                let axis = MultiIndex::new(vec![i as u32 + 1]).expect("valid axis");
                if let Some((merged, sign)) = axis.merge_signed(idx) {
                    out.insert(merged, if sign < 0 { dc.neg() } else { dc });
                }
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.d()?.is_zero())
    }

    /// Schouten-Nijenhuis bracket of multivector fields, degree `p + q - 1`.
    ///
    /// The sign convention is pinned by the contraction identity: for closed
    /// `ω` and `U, V` with `d ι_U ω = d ι_V ω = 0`,
    ///
    /// ```text
    /// ι_{[U,V]} ω = -d ι_{U∧V} ω
    /// ```
    ///
    /// holds on the nose, with the legs-in-front interior product used
    /// everywhere in this crate. The bracket restricts to the Lie bracket on
    /// vector fields. Under that identity the symmetry is forced to be
    /// `[U,V] = (-1)^{pq} [V,U]` (it differs from the textbook
    /// `(p-1)(q-1)`-graded convention by the factor `(-1)^{p(q+1)}`; the two
    /// demands cannot hold together once `p + q` is odd), and the graded
    /// Jacobi identity takes the matching form
    /// `(-1)^{q(p+r)}[U,[V,W]] + (-1)^{r(p+q)}[V,[W,U]] + (-1)^{p(q+r)}[W,[U,V]] = 0`.
    pub fn schouten(u: &PolyAlt, v: &PolyAlt) -> Result<PolyAlt> {
        if u.variance != Variance::Contravariant || v.variance != Variance::Contravariant {
            return Err(Error::AmbientMismatch(
                "schouten expects multivector fields".into(),
            ));
        }
        if u.nvars != v.nvars {
            return Err(Error::AmbientMismatch(format!(
                "variable counts {} and {}",
                u.nvars, v.nvars
            )));
        }
        let (p, q) = (u.degree, v.degree);
        if p + q == 0 {
            return Ok(PolyAlt::zero(u.nvars, 0, Variance::Contravariant));
        }
        let mut out = PolyAlt::zero(u.nvars, p + q - 1, Variance::Contravariant);
        let second_prefix: i32 = if (p * (q + 1)) % 2 == 0 { -1 } else { 1 };
        for (iu, f) in &u.terms {
            for (iv, g) in &v.terms {
                // (-1)^{q+1} Σ_a (-1)^{p+a} f (∂_{i_a} g) ∂_{I∖i_a} ∧ ∂_J
                for (a, &axis) in iu.indices().iter().enumerate() {
                    let dg = g.partial(axis as usize - 1);
                    if dg.is_zero() {
                        continue;
                    }
                    let rest: Vec<u32> = iu
                        .indices()
                        .iter()
                        .copied()
                        .filter(|&x| x != axis)
                        .collect();
                    let rest = MultiIndex::new(rest).expect("sorted subset");
                    if let Some((merged, msign)) = rest.merge_signed(iv) {
                        let term_sign = if (q + 1 + p + a + 1) % 2 == 0 { 1 } else { -1 };
                        let c = f.mul(&dg);
                        let total = term_sign * msign;
                        let signed = if total < 0 { c.neg() } else { c };
                        out.insert(merged, signed);
                    }
                }
                // -(-1)^{p(q+1)} Σ_b (-1)^{q+b} g (∂_{j_b} f) ∂_{J∖j_b} ∧ ∂_I
                for (b, &axis) in iv.indices().iter().enumerate() {
                    let df = f.partial(axis as usize - 1);
                    if df.is_zero() {
                        continue;
                    }
                    let rest: Vec<u32> = iv
                        .indices()
                        .iter()
                        .copied()
                        .filter(|&x| x != axis)
                        .collect();
                    let rest = MultiIndex::new(rest).expect("sorted subset");
                    if let Some((merged, msign)) = rest.merge_signed(iu) {
                        let term_sign = if (q + b + 1) % 2 == 0 { 1 } else { -1 };
                        let c = g.mul(&df);
                        let total = second_prefix * term_sign * msign;
                        let signed = if total < 0 { c.neg() } else { c };
                        out.insert(merged, signed);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Lie derivative along a degree-q multivector field:
    /// `£_U ω = ι_U dω + (-1)^{q+1} d ι_U ω`. Reduces to the Cartan formula
    /// at q = 1.
    pub fn lie_derivative(u: &PolyAlt, omega: &PolyAlt) -> Result<PolyAlt> {
        let q = u.degree;
        if q > omega.degree + 1 {
            return Err(Error::Degree(format!(
                "Lie derivative of a degree-{} form along degree {q}",
                omega.degree
            )));
        }
        let first = PolyAlt::contract(u, &omega.d()?)?;
        if q > omega.degree {
            // ι_U ω does not exist; only the dω term contributes
            return Ok(first);
        }
        let second = PolyAlt::contract(u, omega)?.d()?;
        if q % 2 == 0 {
            first.sub(&second)
        } else {
            first.add(&second)
        }
    }

    /// Is `ι_U ω` closed? Requires `dω = 0`.
    pub fn is_locally_hamiltonian(u: &PolyAlt, omega: &PolyAlt) -> Result<bool> {
        if !omega.is_closed()? {
            return Err(Error::Precondition("ω is not closed".into()));
        }
        PolyAlt::contract(u, omega)?.is_closed()
    }

    /// Contraction with the radial field `Δ = Σ x_i ∂_i`.
    pub fn radial_contraction(&self) -> Result<PolyAlt> {
        if self.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch(
                "radial contraction expects a form".into(),
            ));
        }
        let mut out = PolyAlt::zero(self.nvars, self.degree.saturating_sub(1), Variance::Covariant);
        if self.degree == 0 {
            return Ok(out);
        }
        for i in 0..self.nvars {
            let ei = PolyAlt::from_terms(
                self.nvars,
                1,
                Variance::Contravariant,
                vec![(vec![i as u32 + 1], Poly::var(self.nvars, i))],
            )?;
            out = out.add(&PolyAlt::contract(&ei, self)?)?;
        }
        Ok(out)
    }

    /// Radial homotopy operator based at the origin:
    /// `h(β)|_x = ∫_0^1 t^{p-1} (ι_Δ β)|_{tx} dt`, computed exactly per
    /// monomial as `ι_Δ(term) / (p + |A|)`. Satisfies `d h + h d = id` on
    /// forms of degree ≥ 1, so closed forms get exact potentials.
    pub fn homotopy(&self) -> Result<PolyAlt> {
        if self.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch("homotopy expects a form".into()));
        }
        if self.degree == 0 {
            return Err(Error::Degree(
                "homotopy operator needs degree at least 1".into(),
            ));
        }
        let p = self.degree;
        let mut out = PolyAlt::zero(self.nvars, p - 1, Variance::Covariant);
        for (idx, c) in &self.terms {
            for (mono, coef) in c.terms() {
                let weight = Rat::new(1.into(), ((p as u32 + mono.total_degree()) as i64).into());
                let single = PolyAlt::from_terms(
                    self.nvars,
                    p,
                    Variance::Covariant,
                    vec![(
                        idx.indices().to_vec(),
                        Poly::from_terms(
                            self.nvars,
                            vec![(mono.exponents().to_vec(), coef * weight)],
                        ),
                    )],
                )?;
                out = out.add(&single.radial_contraction()?)?;
            }
        }
        Ok(out)
    }

    /// A Hamiltonian potential: `α` with `dα = ι_U ω`, via the homotopy
    /// operator. Requires `U` locally Hamiltonian; the identity
    /// `d(result) = ι_U ω` is re-verified before returning.
    pub fn hamiltonian_potential(u: &PolyAlt, omega: &PolyAlt) -> Result<PolyAlt> {
        let contracted = PolyAlt::contract(u, omega)?;
        if contracted.degree == 0 {
            return Err(Error::Degree(
                "full contraction leaves no room for a potential".into(),
            ));
        }
        if !PolyAlt::is_locally_hamiltonian(u, omega)? {
            return Err(Error::Precondition("ι_U ω is not closed".into()));
        }
        if contracted.is_zero() {
            return Ok(PolyAlt::zero(
                omega.nvars,
                contracted.degree - 1,
                Variance::Covariant,
            ));
        }
        let alpha = contracted.homotopy()?;
        if alpha.d()? != contracted {
            return Err(Error::Precondition(
                "homotopy output fails dα = ι_U ω; coefficients are not polynomial on all of coordinate space".into(),
            ));
        }
        Ok(alpha)
    }

    /// Pullback along a polynomial map (substitution into coefficients,
    /// `dy_i ↦ d(map_i)`).
    pub fn pullback_map(&self, map: &PolyMap) -> Result<PolyAlt> {
        if self.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch("pullback expects a form".into()));
        }
        if map.components.len() != self.nvars {
            return Err(Error::AmbientMismatch(format!(
                "map has {} components, form lives on {} variables",
                map.components.len(),
                self.nvars
            )));
        }
        let m = map.source_nvars;
        // differentials of the components
        let differentials: Vec<PolyAlt> = map
            .components
            .iter()
            .map(|comp| {
                let mut df = PolyAlt::zero(m, 1, Variance::Covariant);
                for j in 0..m {
                    let p = comp.partial(j);
                    if !p.is_zero() {
                        df.insert(MultiIndex::new(vec![j as u32 + 1]).expect("axis"), p);
                    }
                }
                df
            })
            .collect();
        let mut out = PolyAlt::zero(m, self.degree, Variance::Covariant);
        for (idx, c) in &self.terms {
            let mut acc = PolyAlt::function(m, Variance::Covariant, c.substitute(&map.components));
            for &i in idx.indices() {
                acc = acc.wedge(&differentials[i as usize - 1])?;
                if acc.is_zero() {
                    break;
                }
            }
            if acc.degree() == out.degree() {
                out = out.add(&acc)?;
            }
        }
        Ok(out)
    }

    /// Exact evaluation of all coefficients at a rational point.
    pub fn eval_point(&self, point: &[Rat]) -> AltElement {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut terms = Vec::new();
        for (idx, c) in &self.terms {
            terms.push((idx.indices().to_vec(), c.eval(point)));
        }
        AltElement::from_terms(self.nvars, self.degree, self.variance, terms)
            .expect("indices already valid")
    }

    /// Renders with the given variable namer (`dx`/`e` basis symbols follow
    /// the variance).
    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sym = match self.variance {
            Variance::Covariant => "d",
            Variance::Contravariant => "e_",
        };
        let mut parts = Vec::new();
        for (idx, c) in &self.terms {
            let coeff = c.format_with(&|i| name(i));
            let coeff = if c.terms().count() > 1 {
                format!("({coeff})")
            } else {
                coeff
            };
            if idx.degree() == 0 {
                parts.push(coeff);
                continue;
            }
            let basis: Vec<String> = idx
                .indices()
                .iter()
                .map(|&i| {
                    if self.variance == Variance::Covariant {
                        format!("{sym}{}", name(i as usize - 1))
                    } else {
                        format!("{sym}{i}")
                    }
                })
                .collect();
            if coeff == "1" {
                parts.push(basis.join("^"));
            } else {
                parts.push(format!("{coeff} {}", basis.join("^")));
            }
        }
        parts.join(" + ")
    }
}

impl std::fmt::Display for PolyAlt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.format_with(&|i| format!("x{}", i + 1)))
    }
}

/// Polynomial map between coordinate spaces: target variable `i` is sent to
/// `components[i]`, a polynomial in the source variables.
#[derive(Debug, Clone)]
pub struct PolyMap {
    pub source_nvars: usize,
    pub components: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source_nvars: usize, components: Vec<Poly>) -> Self {
        for c in &components {
            assert_eq!(c.nvars(), source_nvars, "component arity mismatch");
        }
        PolyMap {
            source_nvars,
            components,
        }
    }

    pub fn identity(nvars: usize) -> Self {
        PolyMap::new(nvars, (0..nvars).map(|i| Poly::var(nvars, i)).collect())
    }
}

/// Solves `ι_U ω = β` for a degree-q multivector field `U`, with `ω` a
/// constant-coefficient form. Works monomial by monomial through the flat
/// matrix; `None` when some monomial block is inconsistent.
pub fn solve_contraction(omega: &AltElement, q: usize, beta: &PolyAlt) -> Option<PolyAlt> {
    use crate::linalg::{binomial, Matrix};
    let n = omega.dim();
    if beta.degree() + q != omega.degree() {
        return None;
    }
    let source = MultiIndex::enumerate(n, q);
    let rows = binomial(n, omega.degree() - q);
    let mut m = Matrix::zero(rows, source.len());
    for (col, idx) in source.iter().enumerate() {
        let u = AltElement::basis(n, Variance::Contravariant, idx.indices()).ok()?;
        let image = AltElement::contract(&u, omega).ok()?;
        for (row, c) in image.coefficient_vector().into_iter().enumerate() {
            m[(row, col)] = c;
        }
    }
    // collect the monomials appearing in β
    let mut monomials: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for (_, c) in beta.terms() {
        for (mono, _) in c.terms() {
            monomials.insert(mono.exponents().to_vec());
        }
    }
    let target_basis = MultiIndex::enumerate(n, beta.degree());
    let mut result = PolyAlt::zero(n, q, Variance::Contravariant);
    for mono in monomials {
        let mut rhs = vec![Rat::zero(); rows];
        for (pos, idx) in target_basis.iter().enumerate() {
            let c = beta.coefficient(idx);
            for (cm, cc) in c.terms() {
                if cm.exponents() == mono.as_slice() {
                    rhs[pos] = cc.clone();
                }
            }
        }
        let x = m.solve(&rhs)?;
        for (col, idx) in source.iter().enumerate() {
            if !x[col].is_zero() {
                let p = Poly::from_terms(n, vec![(mono.clone(), x[col].clone())]);
                let single = PolyAlt::from_terms(
                    n,
                    q,
                    Variance::Contravariant,
                    vec![(idx.indices().to_vec(), p)],
                )
                .ok()?;
                result = result.add(&single).ok()?;
            }
        }
    }
    Some(result)
}

/// Convenience: the standard volume-like constant form `dx^{i1...ip}` scaled
/// by 1 on `Q^n`.
pub fn basis_form(n: usize, indices: &[u32]) -> Result<PolyAlt> {
    PolyAlt::from_terms(
        n,
        indices.len(),
        Variance::Covariant,
        vec![(indices.to_vec(), Poly::one(n))],
    )
}

/// `e_{i1} ∧ ⋯ ∧ e_{ip}` with coefficient 1 on `Q^n`.
pub fn basis_multivector(n: usize, indices: &[u32]) -> Result<PolyAlt> {
    PolyAlt::from_terms(
        n,
        indices.len(),
        Variance::Contravariant,
        vec![(indices.to_vec(), Poly::one(n))],
    )
}

/// A single-term form `f · dx^I`.
pub fn form_term(n: usize, f: Poly, indices: &[u32]) -> Result<PolyAlt> {
    PolyAlt::from_terms(
        n,
        indices.len(),
        Variance::Covariant,
        vec![(indices.to_vec(), f)],
    )
}

/// A single-term multivector field `f · e_I`.
pub fn multivector_term(n: usize, f: Poly, indices: &[u32]) -> Result<PolyAlt> {
    PolyAlt::from_terms(
        n,
        indices.len(),
        Variance::Contravariant,
        vec![(indices.to_vec(), f)],
    )
}

/// The scalar 1 as a contravariant degree-0 field (wedge identity).
pub fn unit_multivector(n: usize) -> PolyAlt {
    PolyAlt::function(n, Variance::Contravariant, Poly::one(n))
}

impl PolyAlt {
    /// Wedge respecting the `(-1)^{pq}` rule; exposed for tests of the
    /// graded sign conventions.
    pub fn graded_commutator_sign(p: usize, q: usize) -> i32 {
        if (p * q) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

#[allow(unused)]
fn _rat_helper(x: i64) -> Rat {
    rat(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, bound: i64) -> Poly {
        let mut p = Poly::zero(nvars);
        for _ in 0..rng.random_range(1..=3) {
            let mut exps = vec![0u32; nvars];
            let mut budget = rng.random_range(0..=max_deg);
            while budget > 0 {
                let i = rng.random_range(0..nvars);
                exps[i] += 1;
                budget -= 1;
            }
            p = p.add(&Poly::from_terms(
                nvars,
                vec![(exps, rat(rng.random_range(-bound..=bound)))],
            ));
        }
        p
    }

    pub fn random_polyalt<R: Rng>(
        rng: &mut R,
        nvars: usize,
        degree: usize,
        variance: Variance,
        max_deg: u32,
        bound: i64,
    ) -> PolyAlt {
        let mut out = PolyAlt::zero(nvars, degree, variance);
        for idx in MultiIndex::enumerate(nvars, degree) {
            if rng.random_range(0..2) == 0 {
                let p = random_poly(rng, nvars, max_deg, bound);
                let t = PolyAlt::from_terms(
                    nvars,
                    degree,
                    variance,
                    vec![(idx.indices().to_vec(), p)],
                )
                .unwrap();
                out = out.add(&t).unwrap();
            }
        }
        out
    }

    #[test]
    fn exterior_derivative_basics() {
        // d(x1 dx2) = dx1 ∧ dx2
        let a = form_term(3, x(3, 0), &[2]).unwrap();
        assert_eq!(a.d().unwrap(), basis_form(3, &[1, 2]).unwrap());
        // d(x2 dx3) = dx2 ∧ dx3
        let b = form_term(3, x(3, 1), &[3]).unwrap();
        assert_eq!(b.d().unwrap(), basis_form(3, &[2, 3]).unwrap());
    }

    #[test]
    fn d_squared_is_zero_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let n = rng.random_range(2..=4);
            let p = rng.random_range(0..=3.min(n));
            let omega = random_polyalt(&mut rng, n, p, Variance::Covariant, 3, 3);
            assert!(omega.d().unwrap().d().unwrap().is_zero());
        }
    }

    #[test]
    fn schouten_matches_lie_bracket_on_vector_fields() {
        // [x2 ∂1, ∂2] = -∂1
        let u = multivector_term(3, x(3, 1), &[1]).unwrap();
        let v = basis_multivector(3, &[2]).unwrap();
        let bracket = PolyAlt::schouten(&u, &v).unwrap();
        assert_eq!(bracket, basis_multivector(3, &[1]).unwrap().neg());
        // [U, U] = 0 for a vector field
        let w = multivector_term(3, x(3, 0).mul(&x(3, 2)), &[2]).unwrap();
        assert!(PolyAlt::schouten(&w, &w).unwrap().is_zero());
    }

    #[test]
    fn schouten_degree_bookkeeping() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let u = random_polyalt(&mut rng, 4, 2, Variance::Contravariant, 2, 2);
        let v = random_polyalt(&mut rng, 4, 2, Variance::Contravariant, 2, 2);
        let b = PolyAlt::schouten(&u, &v).unwrap();
        assert_eq!(b.degree(), 3);
    }

    #[test]
    fn schouten_graded_antisymmetry() {
        // the convention forced by the contraction identity: [U,V] = (-1)^{pq} [V,U]
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..60 {
            let n = rng.random_range(2..=4);
            let p = rng.random_range(1..=3.min(n));
            let q = rng.random_range(1..=3.min(n));
            let u = random_polyalt(&mut rng, n, p, Variance::Contravariant, 2, 2);
            let v = random_polyalt(&mut rng, n, q, Variance::Contravariant, 2, 2);
            let uv = PolyAlt::schouten(&u, &v).unwrap();
            let vu = PolyAlt::schouten(&v, &u).unwrap();
            let expected = if (p * q) % 2 == 0 { vu } else { vu.neg() };
            assert_eq!(uv, expected);
        }
    }

    #[test]
    fn schouten_graded_jacobi() {
        // (-1)^{q(p+r)}[U,[V,W]] + (-1)^{r(p+q)}[V,[W,U]]
        //   + (-1)^{p(q+r)}[W,[U,V]] = 0
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..25 {
            let n = 3;
            let degs: Vec<usize> = (0..3).map(|_| rng.random_range(1..=2)).collect();
            let (p, q, r) = (degs[0], degs[1], degs[2]);
            let u = random_polyalt(&mut rng, n, p, Variance::Contravariant, 2, 2);
            let v = random_polyalt(&mut rng, n, q, Variance::Contravariant, 2, 2);
            let w = random_polyalt(&mut rng, n, r, Variance::Contravariant, 2, 2);
            let sign = |e: usize| -> i64 {
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            };
            let t1 = PolyAlt::schouten(&u, &PolyAlt::schouten(&v, &w).unwrap()).unwrap();
            let t2 = PolyAlt::schouten(&v, &PolyAlt::schouten(&w, &u).unwrap()).unwrap();
            let t3 = PolyAlt::schouten(&w, &PolyAlt::schouten(&u, &v).unwrap()).unwrap();
            let apply = |t: PolyAlt, s: i64| if s < 0 { t.neg() } else { t };
            let total = apply(t1, sign(q * (p + r)))
                .add(&apply(t2, sign(r * (p + q))))
                .unwrap()
                .add(&apply(t3, sign(p * (q + r))))
                .unwrap();
            assert!(total.is_zero(), "graded Jacobi fails at degrees {degs:?}");
        }
    }

    #[test]
    fn normative_contraction_identity() {
        // ι_{[U,V]} ω = -d ι_{U∧V} ω for closed ω, locally Hamiltonian U, V
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let omega4 = basis_form(4, &[1, 2, 3, 4]).unwrap();
        let omega_alt = AltElement::basis(4, Variance::Covariant, &[1, 2, 3, 4]).unwrap();
        for _ in 0..40 {
            // [U,V] must fit into ω here: p + q - 1 ≤ 4
            let p = rng.random_range(1..=3);
            let q = rng.random_range(1..=(4 - p).min(3));
            // generate locally Hamiltonian fields by solving ι_U ω = d(random)
            let alpha = random_polyalt(&mut rng, 4, 3 - p, Variance::Covariant, 3, 2);
            let beta = random_polyalt(&mut rng, 4, 3 - q, Variance::Covariant, 3, 2);
            let u = solve_contraction(&omega_alt, p, &alpha.d().unwrap()).unwrap();
            let v = solve_contraction(&omega_alt, q, &beta.d().unwrap()).unwrap();
            assert!(PolyAlt::is_locally_hamiltonian(&u, &omega4).unwrap());
            assert!(PolyAlt::is_locally_hamiltonian(&v, &omega4).unwrap());
            let lhs =
                PolyAlt::contract(&PolyAlt::schouten(&u, &v).unwrap(), &omega4).unwrap();
            let rhs = PolyAlt::contract(&u.wedge(&v).unwrap(), &omega4)
                .unwrap()
                .d()
                .unwrap()
                .neg();
            assert_eq!(lhs, rhs, "normative Schouten identity failed");
        }
    }

    #[test]
    fn lie_derivative_reduces_to_cartan() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..30 {
            let omega = random_polyalt(&mut rng, 3, 2, Variance::Covariant, 2, 2);
            let xfield = random_polyalt(&mut rng, 3, 1, Variance::Contravariant, 2, 2);
            let lie = PolyAlt::lie_derivative(&xfield, &omega).unwrap();
            let cartan = PolyAlt::contract(&xfield, &omega.d().unwrap())
                .unwrap()
                .add(&PolyAlt::contract(&xfield, &omega).unwrap().d().unwrap())
                .unwrap();
            assert_eq!(lie, cartan);
        }
    }

    #[test]
    fn lie_derivative_of_constant_form_along_constant_field_is_zero() {
        let omega = basis_form(3, &[1, 2, 3]).unwrap();
        let u = basis_multivector(3, &[1, 2]).unwrap();
        assert!(PolyAlt::lie_derivative(&u, &omega).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_vanishes_for_odd_degree_hamiltonian_fields() {
        // closed ω, odd q, ι_U ω closed: £_U ω = (-1)^{q+1} d ι_U ω = 0
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        let omega = basis_form(4, &[1, 2, 3, 4]).unwrap();
        let omega_alt = AltElement::basis(4, Variance::Covariant, &[1, 2, 3, 4]).unwrap();
        for q in [1usize, 3] {
            for _ in 0..5 {
                let seed = random_polyalt(&mut rng, 4, 3 - q, Variance::Covariant, 2, 2);
                let u = solve_contraction(&omega_alt, q, &seed.d().unwrap()).unwrap();
                assert!(PolyAlt::lie_derivative(&u, &omega).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn locally_hamiltonian_examples() {
        let omega = basis_form(3, &[1, 2, 3]).unwrap();
        // ∂1: ι_{∂1}ω = dx2∧dx3, closed
        let d1 = basis_multivector(3, &[1]).unwrap();
        assert!(PolyAlt::is_locally_hamiltonian(&d1, &omega).unwrap());
        // x1 ∂1: ι ω = x1 dx2∧dx3, d = dx1∧dx2∧dx3 ≠ 0
        let bad = multivector_term(3, x(3, 0), &[1]).unwrap();
        assert!(!PolyAlt::is_locally_hamiltonian(&bad, &omega).unwrap());
        // zero field
        let zero = PolyAlt::zero(3, 1, Variance::Contravariant);
        assert!(PolyAlt::is_locally_hamiltonian(&zero, &omega).unwrap());
        // non-closed ω is a precondition error
        let bad_omega = form_term(3, x(3, 0), &[2, 3]).unwrap();
        assert!(matches!(
            PolyAlt::is_locally_hamiltonian(&d1, &bad_omega),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn homotopy_outputs_match_expected() {
        let omega = basis_form(3, &[1, 2, 3]).unwrap();
        // U = ∂1: potential of dx2∧dx3 is (x2 dx3 - x3 dx2)/2
        let u = basis_multivector(3, &[1]).unwrap();
        let alpha = PolyAlt::hamiltonian_potential(&u, &omega).unwrap();
        let expected = form_term(3, x(3, 1).scale(&ratio(1, 2)), &[3])
            .unwrap()
            .sub(&form_term(3, x(3, 2).scale(&ratio(1, 2)), &[2]).unwrap())
            .unwrap();
        assert_eq!(alpha, expected);
        // U = ∂1∧∂2: dH = dx3, homotopy gives x3
        let u2 = basis_multivector(3, &[1, 2]).unwrap();
        let h = PolyAlt::hamiltonian_potential(&u2, &omega).unwrap();
        assert_eq!(h, PolyAlt::function(3, Variance::Covariant, x(3, 2)));
        // zero contraction gives zero potential
        let zero = PolyAlt::zero(3, 1, Variance::Contravariant);
        assert!(PolyAlt::hamiltonian_potential(&zero, &omega)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn homotopy_identity_on_random_forms() {
        // d h(β) + h(dβ) = β for degree ≥ 1
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..60 {
            let n = rng.random_range(2..=4);
            let p = rng.random_range(1..=n);
            let beta = random_polyalt(&mut rng, n, p, Variance::Covariant, 3, 3);
            let left = beta.homotopy().unwrap().d().unwrap();
            let right = if p < n {
                beta.d().unwrap().homotopy().unwrap()
            } else {
                PolyAlt::zero(n, p, Variance::Covariant)
            };
            assert_eq!(left.add(&right).unwrap(), beta);
        }
    }

    #[test]
    fn potential_verifies_post_hoc() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let omega_alt = AltElement::basis(4, Variance::Covariant, &[1, 2, 3, 4]).unwrap();
        let omega = basis_form(4, &[1, 2, 3, 4]).unwrap();
        for _ in 0..20 {
            let q = rng.random_range(1..=3);
            let seed_form = random_polyalt(&mut rng, 4, 3 - q, Variance::Covariant, 2, 2);
            let u = solve_contraction(&omega_alt, q, &seed_form.d().unwrap()).unwrap();
            let alpha = PolyAlt::hamiltonian_potential(&u, &omega).unwrap();
            assert_eq!(
                alpha.d().unwrap(),
                PolyAlt::contract(&u, &omega).unwrap()
            );
        }
    }

    #[test]
    fn pullback_map_commutes_with_d() {
        // φ* d = d φ* on random forms and quadratic maps
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..25 {
            let omega = random_polyalt(&mut rng, 3, 1, Variance::Covariant, 2, 2);
            let map = PolyMap::new(
                2,
                (0..3)
                    .map(|_| random_poly(&mut rng, 2, 2, 2))
                    .collect(),
            );
            let lhs = omega.d().unwrap().pullback_map(&map).unwrap();
            let rhs = omega.pullback_map(&map).unwrap().d().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eval_point_matches_substitution() {
        let omega = form_term(3, x(3, 0).mul(&x(3, 1)), &[1, 3]).unwrap();
        let at = [rat(2), rat(3), rat(-1)];
        let evaluated = omega.eval_point(&at);
        assert_eq!(
            evaluated.coefficient(&MultiIndex::new(vec![1, 3]).unwrap()),
            rat(6)
        );
    }
}
