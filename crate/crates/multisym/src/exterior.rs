//! Sparse exterior algebra over exact rationals.
//!
//! Elements of Λ^p V and Λ^p V* share one representation: a sparse map from
//! strictly increasing multi-indices to rational coefficients, tagged with a
//! variance. Basis order is lexicographic on multi-indices of equal degree,
//! which fixes matrix row/column order for every computation downstream.
//!
//! Sign conventions, used consistently everywhere:
//! * wedge sorts the concatenated index tuple and picks up the transposition
//!   parity, so `e2 ∧ e1 = -e12`;
//! * interior products insert the multivector's legs in front:
//!   `ι_{v1∧…∧vq} ω = ω(v1, …, vq, ·, …, ·)`, hence
//!   `contract(u, contract(v, ω)) = contract(v ∧ u, ω)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{binomial, Matrix};
use crate::scalar::Rat;

/// Strictly increasing tuple of 1-based axis indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Empty index (degree 0).
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// Validates strict increase and positivity.
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Parse(format!(
                    "multi-index {indices:?} is not strictly increasing"
                )));
            }
        }
        if indices.first().is_some_and(|&i| i == 0) {
            return Err(Error::Parse("multi-index entries are 1-based".into()));
        }
        Ok(MultiIndex(indices))
    }

    /// Sorts an arbitrary tuple, returning the parity of the sort or `None`
    /// when an index repeats.
    pub fn sort_signed(indices: &[u32]) -> Option<(Self, i32)> {
        let mut v = indices.to_vec();
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(v), sign))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn max_entry(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, axis: u32) -> bool {
        self.0.binary_search(&axis).is_ok()
    }

    /// Is `sub` a subset of `self` (as index sets)?
    pub fn contains_all(&self, sub: &MultiIndex) -> bool {
        sub.0.iter().all(|i| self.contains(*i))
    }

    /// All degree-`p` multi-indices on axes `1..=n`, in lexicographic order.
    pub fn enumerate(n: usize, p: usize) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(binomial(n, p));
        let mut cur: Vec<u32> = (1..=p as u32).collect();
        if p > n {
            return out;
        }
        loop {
            out.push(MultiIndex(cur.clone()));
            // next combination in lex order
            let mut i = p;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < (n - (p - 1 - i)) as u32 {
                    cur[i] += 1;
                    for j in i + 1..p {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Position of `self` within `enumerate(n, degree)`.
    pub fn lex_rank(&self, n: usize) -> usize {
        let p = self.degree();
        let mut rank = 0;
        let mut prev = 0u32;
        for (t, &c) in self.0.iter().enumerate() {
            for v in prev + 1..c {
                rank += binomial(n - v as usize, p - 1 - t);
            }
            prev = c;
        }
        rank
    }

    /// Merges disjoint sorted tuples, returning the sorted union and the
    /// parity of the interleaving; `None` if they share an index.
    pub fn merge_signed(&self, other: &MultiIndex) -> Option<(MultiIndex, i32)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] jumps over the remaining a-entries
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(out), sign))
    }

    /// For `sub ⊆ self`: the complement `self ∖ sub` and the parity of moving
    /// `sub`'s entries to the front of `self`; `None` if not a subset.
    pub fn split_front(&self, sub: &MultiIndex) -> Option<(MultiIndex, i32)> {
        let mut rest = Vec::with_capacity(self.0.len() - sub.0.len());
        let mut inversions = 0usize;
        let mut t = 0usize;
        for (pos, &c) in self.0.iter().enumerate() {
            if t < sub.0.len() && sub.0[t] == c {
                inversions += pos - t;
                t += 1;
            } else {
                rest.push(c);
            }
        }
        if t < sub.0.len() {
            return None;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(rest), sign))
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Covariant elements are forms in Λ^p V*, contravariant are multivectors in Λ^p V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// Sparse degree-`p` alternating tensor over `Rat`.
///
/// Zero coefficients are never stored; equality is structural and therefore
/// exact. Degree-0 elements hold at most the empty index, which unifies
/// scalars with forms so full contractions stay inside the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltElement {
    dim: usize,
    degree: usize,
    variance: Variance,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl AltElement {
    pub fn zero(dim: usize, degree: usize, variance: Variance) -> Self {
        AltElement {
            dim,
            degree,
            variance,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 element carrying the scalar `c`.
    pub fn scalar(dim: usize, variance: Variance, c: Rat) -> Self {
        let mut e = AltElement::zero(dim, 0, variance);
        e.insert(MultiIndex::empty(), c);
        e
    }

    /// Basis element `e_I` / `e^I` with coefficient 1.
    pub fn basis(dim: usize, variance: Variance, indices: &[u32]) -> Result<Self> {
        let idx = MultiIndex::new(indices.to_vec())?;
        if idx.max_entry() as usize > dim {
            return Err(Error::AmbientMismatch(format!(
                "index {idx} exceeds dimension {dim}"
            )));
        }
        let mut e = AltElement::zero(dim, idx.degree(), variance);
        e.insert(idx, Rat::from_integer(1.into()));
        Ok(e)
    }

    /// Assembles from raw (possibly unsorted) index tuples, normalizing signs
    /// and dropping repeated-index or zero terms.
    pub fn from_terms<I>(dim: usize, degree: usize, variance: Variance, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut e = AltElement::zero(dim, degree, variance);
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
            if idx.max_entry() as usize > dim {
                return Err(Error::AmbientMismatch(format!(
                    "index {idx} exceeds dimension {dim}"
                )));
            }
            let signed = if sign < 0 { -c } else { c };
            e.insert(idx, signed);
        }
        Ok(e)
    }

    /// Degree-1 element from a coordinate vector.
    pub fn from_vector(variance: Variance, v: &[Rat]) -> Self {
        let mut e = AltElement::zero(v.len(), 1, variance);
        for (i, c) in v.iter().enumerate() {
            e.insert(MultiIndex(vec![i as u32 + 1]), c.clone());
        }
        e
    }

    /// Coordinate vector of a degree-1 element.
    pub fn to_vector(&self) -> Vec<Rat> {
        assert_eq!(self.degree, 1, "to_vector needs a degree-1 element");
        let mut v = vec![Rat::zero(); self.dim];
        for (idx, c) in &self.terms {
            v[idx.0[0] as usize - 1] = c.clone();
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Rat {
        self.terms.get(idx).cloned().unwrap_or_else(Rat::zero)
    }

    /// The scalar value of a degree-0 element.
    pub fn scalar_value(&self) -> Rat {
        assert_eq!(self.degree, 0, "scalar_value needs a degree-0 element");
        self.coefficient(&MultiIndex::empty())
    }

    fn insert(&mut self, idx: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_space(&self, other: &AltElement) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::AmbientMismatch(format!(
                "dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        if self.variance != other.variance {
            return Err(Error::AmbientMismatch(
                "mixed covariant/contravariant operands".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &AltElement) -> Result<AltElement> {
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

    pub fn sub(&self, other: &AltElement) -> Result<AltElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AltElement {
        self.scale(&-Rat::from_integer(1.into()))
    }

    pub fn scale(&self, c: &Rat) -> AltElement {
        let mut out = AltElement::zero(self.dim, self.degree, self.variance);
        if c.is_zero() {
            return out;
        }
        for (idx, v) in &self.terms {
            out.terms.insert(idx.clone(), v * c);
        }
        out
    }

    /// Exterior product. Graded-commutative: `a ∧ b = (-1)^{pq} b ∧ a`.
    pub fn wedge(&self, other: &AltElement) -> Result<AltElement> {
        self.check_same_space(other)?;
        let degree = self.degree + other.degree;
        let mut out = AltElement::zero(self.dim, degree, self.variance);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((idx, sign)) = ia.merge_signed(ib) {
                    let c = if sign < 0 { -(ca * cb) } else { ca * cb };
                    out.insert(idx, c);
                }
            }
        }
        Ok(out)
    }

    /// Interior product `ι_u ω` of a multivector into a form, legs in front:
    /// for decomposable `u = v1∧…∧vq` the result is `ω(v1, …, vq, ·, …, ·)`.
    pub fn contract(u: &AltElement, omega: &AltElement) -> Result<AltElement> {
        if u.variance != Variance::Contravariant || omega.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch(
                "contract expects a multivector and a form".into(),
            ));
        }
        if u.dim != omega.dim {
            return Err(Error::AmbientMismatch(format!(
                "dimensions {} and {}",
                u.dim, omega.dim
            )));
        }
        if u.degree > omega.degree {
            return Err(Error::Degree(format!(
                "cannot contract a degree-{} multivector into a degree-{} form",
                u.degree, omega.degree
            )));
        }
        let mut out = AltElement::zero(u.dim, omega.degree - u.degree, Variance::Covariant);
        for (ij, cu) in &u.terms {
            for (ii, cw) in &omega.terms {
                if let Some((rest, sign)) = ii.split_front(ij) {
                    let c = if sign < 0 { -(cu * cw) } else { cu * cw };
                    out.insert(rest, c);
                }
            }
        }
        Ok(out)
    }

    /// Alternating multilinear evaluation `ω(v1, …, vp)`.
    pub fn evaluate(&self, vectors: &[Vec<Rat>]) -> Result<Rat> {
        if self.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch("evaluate expects a form".into()));
        }
        if vectors.len() != self.degree {
            return Err(Error::Arity {
                expected: self.degree,
                got: vectors.len(),
            });
        }
        let mut u = AltElement::scalar(self.dim, Variance::Contravariant, Rat::from_integer(1.into()));
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::AmbientMismatch(format!(
                    "vector length {} in dimension {}",
                    v.len(),
                    self.dim
                )));
            }
            u = u.wedge(&AltElement::from_vector(Variance::Contravariant, v))?;
        }
        Ok(AltElement::contract(&u, self)?.scalar_value())
    }

    /// Pullback `f*ω` along `f : source → target`, for `ω` on the target.
    pub fn pullback(f: &LinearMap, omega: &AltElement) -> Result<AltElement> {
        if omega.variance != Variance::Covariant {
            return Err(Error::AmbientMismatch("pullback expects a form".into()));
        }
        if omega.dim != f.target_dim() {
            return Err(Error::AmbientMismatch(format!(
                "form lives in dimension {}, map targets {}",
                omega.dim,
                f.target_dim()
            )));
        }
        let m = f.source_dim();
        let mut out = AltElement::zero(m, omega.degree, Variance::Covariant);
        for (idx, c) in &omega.terms {
            // f*(e^I) = f*(e^{i1}) ∧ … ∧ f*(e^{ik}), each factor a row of f
            let mut acc = AltElement::scalar(m, Variance::Covariant, c.clone());
            for &i in idx.indices() {
                let row = f.matrix().row(i as usize - 1).to_vec();
                acc = acc.wedge(&AltElement::from_vector(Variance::Covariant, &row))?;
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

    /// Pushforward `Λ^p f (u)` along `f : source → target`, for `u` on the source.
    pub fn pushforward(f: &LinearMap, u: &AltElement) -> Result<AltElement> {
        if u.variance != Variance::Contravariant {
            return Err(Error::AmbientMismatch(
                "pushforward expects a multivector".into(),
            ));
        }
        if u.dim != f.source_dim() {
            return Err(Error::AmbientMismatch(format!(
                "multivector lives in dimension {}, map expects {}",
                u.dim,
                f.source_dim()
            )));
        }
        let m = f.target_dim();
        let mut out = AltElement::zero(m, u.degree, Variance::Contravariant);
        for (idx, c) in &u.terms {
            let mut acc = AltElement::scalar(m, Variance::Contravariant, c.clone());
            for &j in idx.indices() {
                let col: Vec<Rat> = (0..m)
                    .map(|r| f.matrix()[(r, j as usize - 1)].clone())
                    .collect();
                acc = acc.wedge(&AltElement::from_vector(Variance::Contravariant, &col))?;
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

    /// Coefficients in the lexicographic basis of degree `self.degree`.
    pub fn coefficient_vector(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); binomial(self.dim, self.degree)];
        for (idx, c) in &self.terms {
            v[idx.lex_rank(self.dim)] = c.clone();
        }
        v
    }

    /// Inverse of [`coefficient_vector`](Self::coefficient_vector).
    pub fn from_coefficient_vector(
        dim: usize,
        degree: usize,
        variance: Variance,
        coeffs: &[Rat],
    ) -> Self {
        let basis = MultiIndex::enumerate(dim, degree);
        assert_eq!(coeffs.len(), basis.len(), "coefficient vector length");
        let mut e = AltElement::zero(dim, degree, variance);
        for (idx, c) in basis.into_iter().zip(coeffs) {
            e.insert(idx, c.clone());
        }
        e
    }
}

impl std::fmt::Display for AltElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = match self.variance {
            Variance::Covariant => "dx",
            Variance::Contravariant => "e",
        };
        let mut first = true;
        for (idx, c) in &self.terms {
            let cs = crate::scalar::format_rat(c);
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if idx.degree() == 0 {
                write!(f, "{cs}")?;
                continue;
            }
            let basis: Vec<String> = idx.indices().iter().map(|i| format!("{sym}{i}")).collect();
            if cs == "1" {
                write!(f, "{}", basis.join("^"))?;
            } else {
                write!(f, "{cs} {}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Exact linear map between coordinate spaces, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    /// Builds from a `target_dim × source_dim` matrix.
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        LinearMap {
            matrix: Matrix::from_rows(rows),
        }
    }

    /// Map sending basis vector `j` of the source to `columns[j]`.
    pub fn from_columns(target_dim: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Matrix::zero(target_dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), target_dim, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        LinearMap { matrix: m }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(n),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.apply(v)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        if self.source_dim() != self.target_dim() {
            return Err(Error::Singular("inverse of a non-square map".into()));
        }
        self.matrix
            .inverse()
            .map(|matrix| LinearMap { matrix })
            .ok_or_else(|| Error::Singular("map is not invertible".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn form(n: usize, idx: &[u32]) -> AltElement {
        AltElement::basis(n, Variance::Covariant, idx).unwrap()
    }

    fn mv(n: usize, idx: &[u32]) -> AltElement {
        AltElement::basis(n, Variance::Contravariant, idx).unwrap()
    }

    fn random_element(rng: &mut ChaCha8Rng, n: usize, p: usize, variance: Variance) -> AltElement {
        let basis = MultiIndex::enumerate(n, p);
        let mut e = AltElement::zero(n, p, variance);
        for idx in basis {
            if rng.random_range(0..3) == 0 {
                e.insert(idx, rat(rng.random_range(-4..=4)));
            }
        }
        e
    }

    #[test]
    fn wedge_basis_signs() {
        let n = 3;
        // l1 ^ l2 = l12
        assert_eq!(form(n, &[1]).wedge(&form(n, &[2])).unwrap(), form(n, &[1, 2]));
        // l2 ^ l1 = -l12
        assert_eq!(
            form(n, &[2]).wedge(&form(n, &[1])).unwrap(),
            form(n, &[1, 2]).neg()
        );
        // repeated index annihilates
        assert!(form(n, &[1, 2]).wedge(&form(n, &[1, 3])).unwrap().is_zero());
    }

    #[test]
    fn wedge_rejects_mismatched_operands() {
        let a = form(3, &[1]);
        let b = form(4, &[1]);
        assert!(a.wedge(&b).is_err());
        let u = mv(3, &[1]);
        assert!(a.wedge(&u).is_err());
    }

    #[test]
    fn contract_counterexample_form() {
        // Ω_L = α12∧l1∧l2 + α13∧l1∧l3 + α23∧l2∧l3 on the 6-dimensional space
        // with axes (l1,l2,l3,α12,α13,α23); dual pairing sends e4 → l1∧l2.
        let omega = AltElement::from_terms(
            6,
            3,
            Variance::Covariant,
            vec![
                (vec![4, 1, 2], rat(1)),
                (vec![5, 1, 3], rat(1)),
                (vec![6, 2, 3], rat(1)),
            ],
        )
        .unwrap();
        let a12 = mv(6, &[4]);
        assert_eq!(AltElement::contract(&a12, &omega).unwrap(), form(6, &[1, 2]));
        // contract(u, 0) = 0
        let zero = AltElement::zero(6, 3, Variance::Covariant);
        assert!(AltElement::contract(&a12, &zero).unwrap().is_zero());
        // Ω_L(α12, l1, l2) = 1
        let val = omega
            .evaluate(&[
                mv(6, &[4]).to_vector(),
                mv(6, &[1]).to_vector(),
                mv(6, &[2]).to_vector(),
            ])
            .unwrap();
        assert_eq!(val, rat(1));
    }

    #[test]
    fn contract_degree_error() {
        let omega = form(3, &[1, 2]);
        let u = mv(3, &[1, 2, 3]);
        assert!(AltElement::contract(&u, &omega).is_err());
    }

    #[test]
    fn evaluate_dual_pairing() {
        let w = form(3, &[1, 2]);
        let e1 = mv(3, &[1]).to_vector();
        let e2 = mv(3, &[2]).to_vector();
        assert_eq!(w.evaluate(&[e1.clone(), e2.clone()]).unwrap(), rat(1));
        assert_eq!(w.evaluate(&[e2, e1]).unwrap(), rat(-1));
        assert!(matches!(
            w.evaluate(&[mv(3, &[1]).to_vector()]),
            Err(Error::Arity { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn pullback_identity_and_zero() {
        let omega = form(3, &[1, 3]);
        let id = LinearMap::identity(3);
        assert_eq!(AltElement::pullback(&id, &omega).unwrap(), omega);
        let zero = LinearMap::new(Matrix::zero(3, 3));
        assert!(AltElement::pullback(&zero, &omega).unwrap().is_zero());
    }

    #[test]
    fn pullback_inclusion_kills_transverse_form() {
        // inclusion of <e1, e2> into Q^3; dx1 ∧ dx3 pulls back to 0
        let incl = LinearMap::from_columns(
            3,
            &[mv(3, &[1]).to_vector(), mv(3, &[2]).to_vector()],
        );
        let omega = form(3, &[1, 3]);
        assert!(AltElement::pullback(&incl, &omega).unwrap().is_zero());
        // dx1 ∧ dx2 survives
        let kept = form(3, &[1, 2]);
        let pulled = AltElement::pullback(&incl, &kept).unwrap();
        assert_eq!(pulled, form(2, &[1, 2]));
    }

    #[test]
    fn pushforward_projection() {
        // projection Q^3 → Q^2 dropping the last axis
        let proj = LinearMap::from_rows(vec![
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0)],
        ]);
        let u = mv(3, &[1, 3]);
        assert!(AltElement::pushforward(&proj, &u).unwrap().is_zero());
        let v = mv(3, &[1, 2]);
        assert_eq!(AltElement::pushforward(&proj, &v).unwrap(), mv(2, &[1, 2]));
        let id = LinearMap::identity(3);
        assert_eq!(AltElement::pushforward(&id, &u).unwrap(), u);
    }

    #[test]
    fn pushforward_decomposable_is_wedge_of_images() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f = LinearMap::from_rows(
                (0..3)
                    .map(|_| (0..3).map(|_| rat(rng.random_range(-3..=3))).collect())
                    .collect(),
            );
            let v1: Vec<Rat> = (0..3).map(|_| rat(rng.random_range(-3..=3))).collect();
            let v2: Vec<Rat> = (0..3).map(|_| rat(rng.random_range(-3..=3))).collect();
            let u = AltElement::from_vector(Variance::Contravariant, &v1)
                .wedge(&AltElement::from_vector(Variance::Contravariant, &v2))
                .unwrap();
            let lhs = AltElement::pushforward(&f, &u).unwrap();
            let rhs = AltElement::from_vector(Variance::Contravariant, &f.apply(&v1))
                .wedge(&AltElement::from_vector(Variance::Contravariant, &f.apply(&v2)))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn contract_composes_with_wedge() {
        // contract(u, contract(v, ω)) = contract(v ∧ u, ω)
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(3..=6);
            let k = rng.random_range(2..=n.min(4));
            let omega = random_element(&mut rng, n, k, Variance::Covariant);
            let p = rng.random_range(1..k);
            let q = rng.random_range(1..=(k - p));
            let v = random_element(&mut rng, n, p, Variance::Contravariant);
            let u = random_element(&mut rng, n, q, Variance::Contravariant);
            let lhs = AltElement::contract(&u, &AltElement::contract(&v, &omega).unwrap()).unwrap();
            let rhs = AltElement::contract(&v.wedge(&u).unwrap(), &omega).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluate_agrees_with_full_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let n = rng.random_range(2..=5);
            let p = rng.random_range(1..=n.min(3));
            let omega = random_element(&mut rng, n, p, Variance::Covariant);
            let vectors: Vec<Vec<Rat>> = (0..p)
                .map(|_| (0..n).map(|_| rat(rng.random_range(-3..=3))).collect())
                .collect();
            let direct = omega.evaluate(&vectors).unwrap();
            let mut u =
                AltElement::scalar(n, Variance::Contravariant, rat(1));
            for v in &vectors {
                u = u.wedge(&AltElement::from_vector(Variance::Contravariant, v)).unwrap();
            }
            let full = AltElement::contract(&u, &omega).unwrap().scalar_value();
            assert_eq!(direct, full);
        }
    }

    #[test]
    fn pullback_adjunction() {
        // evaluate(f*ω, v…) = evaluate(ω, f v…)
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let m = rng.random_range(2..=4);
            let n = rng.random_range(2..=4);
            let f = LinearMap::from_rows(
                (0..n)
                    .map(|_| (0..m).map(|_| rat(rng.random_range(-2..=2))).collect())
                    .collect(),
            );
            let p = rng.random_range(1..=m.min(n).min(3));
            let omega = random_element(&mut rng, n, p, Variance::Covariant);
            let vectors: Vec<Vec<Rat>> = (0..p)
                .map(|_| (0..m).map(|_| rat(rng.random_range(-2..=2))).collect())
                .collect();
            let pulled = AltElement::pullback(&f, &omega).unwrap();
            let lhs = pulled.evaluate(&vectors).unwrap();
            let mapped: Vec<Vec<Rat>> = vectors.iter().map(|v| f.apply(v)).collect();
            let rhs = omega.evaluate(&mapped).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pullback_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let f = LinearMap::from_rows(
                (0..3)
                    .map(|_| (0..3).map(|_| rat(rng.random_range(-2..=2))).collect())
                    .collect(),
            );
            let g = LinearMap::from_rows(
                (0..4)
                    .map(|_| (0..3).map(|_| rat(rng.random_range(-2..=2))).collect())
                    .collect(),
            );
            let omega = random_element(&mut rng, 4, 2, Variance::Covariant);
            let lhs = AltElement::pullback(&g.compose(&f), &omega).unwrap();
            let rhs =
                AltElement::pullback(&f, &AltElement::pullback(&g, &omega).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cancellation_leaves_no_stored_keys() {
        let a = form(3, &[1]).add(&form(3, &[2])).unwrap();
        let square = a.wedge(&a).unwrap();
        assert!(square.is_zero());
        assert_eq!(square.terms().count(), 0);
        let diff = a.sub(&a).unwrap();
        assert_eq!(diff.terms().count(), 0);
        // scaling by zero drops every key
        assert_eq!(a.scale(&rat(0)).terms().count(), 0);
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for n in 1..=7usize {
            for p in 0..=n {
                for (pos, idx) in MultiIndex::enumerate(n, p).iter().enumerate() {
                    assert_eq!(idx.lex_rank(n), pos, "n={n} p={p} idx={idx}");
                }
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_element(n: usize, p: usize) -> impl Strategy<Value = AltElement> {
            let basis = MultiIndex::enumerate(n, p);
            let len = basis.len();
            proptest::collection::vec(-4i64..=4, len).prop_map(move |coeffs| {
                let mut e = AltElement::zero(n, p, Variance::Covariant);
                for (idx, c) in basis.iter().zip(coeffs) {
                    if c != 0 {
                        e.insert(idx.clone(), rat(c));
                    }
                }
                e
            })
        }

        proptest! {
            #[test]
            fn wedge_graded_commutative(
                (n, p, q) in (3usize..=8).prop_flat_map(|n| {
                    (Just(n), 0usize..=n).prop_flat_map(move |(n, p)| {
                        (Just(n), Just(p), 0usize..=(n - p))
                    })
                }),
                seed in any::<u64>(),
            ) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = random_element(&mut rng, n, p, Variance::Covariant);
                let b = random_element(&mut rng, n, q, Variance::Covariant);
                let ab = a.wedge(&b).unwrap();
                let ba = b.wedge(&a).unwrap();
                let expected = if (p * q) % 2 == 0 { ba.clone() } else { ba.neg() };
                prop_assert_eq!(ab, expected);
            }

            #[test]
            fn wedge_bilinear(a in arb_element(5, 2), b in arb_element(5, 2), c in arb_element(5, 1)) {
                let lhs = a.add(&b).unwrap().wedge(&c).unwrap();
                let rhs = a.wedge(&c).unwrap().add(&b.wedge(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn wedge_associative(a in arb_element(5, 1), b in arb_element(5, 1), c in arb_element(5, 2)) {
                let lhs = a.wedge(&b).unwrap().wedge(&c).unwrap();
                let rhs = a.wedge(&b.wedge(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
