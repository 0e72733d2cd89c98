//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are exponent vectors under graded lexicographic order; no zero
//! coefficients are stored, so equality is structural. These are the
//! coefficients of every symbolic form and multivector field in the crate.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::{format_rat, Rat};

/// Exponent vector of fixed arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // graded lexicographic
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.insert(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::from_integer(1.into()))
    }

    /// The variable `x_{i}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.insert(Monomial::var(nvars, i), Rat::from_integer(1.into()));
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector arity");
            p.insert(Monomial(exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.insert(Monomial(exps), c * Rat::from_integer((e as i64).into()));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; the images share an arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        let target_nvars = images.first().map_or(0, Poly::nvars);
        let mut acc = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Multiplies by `x_i` (0-based), used by the radial contraction.
    pub fn mul_var(&self, i: usize) -> Poly {
        let v = Monomial::var(self.nvars, i);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.mul(&v), c.clone());
        }
        out
    }

    /// Renders with the given variable namer.
    pub fn format_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(name(i));
                } else if e > 1 {
                    factors.push(format!("{}^{}", name(i), e));
                }
            }
            let cs = format_rat(c);
            let body = if factors.is_empty() {
                cs
            } else if cs == "1" {
                factors.join(" ")
            } else if cs == "-1" {
                format!("-{}", factors.join(" "))
            } else {
                format!("{cs} {}", factors.join(" "))
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.format_with(&|i| format!("x{}", i + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn arithmetic_and_cancellation() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&y).add(&x.scale(&rat(2)));
        let q = p.sub(&p);
        assert!(q.is_zero());
        let r = x.add(&y).mul(&x.sub(&y));
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(r, expected);
    }

    #[test]
    fn partial_derivative() {
        // d/dx (x^2 y + 3x) = 2xy + 3
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).mul(&y).add(&x.scale(&rat(3)));
        let dp = p.partial(0);
        let expected = x.mul(&y).scale(&rat(2)).add(&Poly::constant(2, rat(3)));
        assert_eq!(dp, expected);
        assert!(Poly::constant(2, rat(5)).partial(1).is_zero());
    }

    #[test]
    fn eval_and_substitute_agree() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).add(&x.mul(&y).scale(&ratio(1, 2)));
        let point = [rat(3), rat(-2)];
        let direct = p.eval(&point);
        let subst = p.substitute(&[Poly::constant(0, rat(3)), Poly::constant(0, rat(-2))]);
        assert_eq!(subst.constant_term(), direct);
    }

    #[test]
    fn graded_lex_order() {
        // y^2 > xy? total degrees equal, lex on exponents: x has index 0
        let xy = Monomial(vec![1, 1]);
        let y2 = Monomial(vec![0, 2]);
        let x = Monomial(vec![1, 0]);
        assert!(xy > y2); // (1,1) > (0,2) lexicographically
        assert!(y2 > x); // higher total degree wins
    }

    #[test]
    fn display_is_readable() {
        let x = Poly::var(3, 0);
        let z = Poly::var(3, 2);
        let p = x.mul(&x).scale(&ratio(3, 2)).sub(&z);
        assert_eq!(p.to_string(), "3/2 x1^2 - x3");
    }
}
