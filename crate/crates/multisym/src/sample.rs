//! Seeded random generators for property checks.
//!
//! Everything here is driven by a caller-supplied RNG so the verification
//! suite and the tests stay reproducible: the same seed gives byte-identical
//! samples on every run.

use num_traits::Zero;
use rand::Rng;

use crate::exterior::{AltElement, LinearMap, MultiIndex, Variance};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::polyalt::PolyAlt;
use crate::scalar::{rat, Rat};
use crate::subspace::Subspace;

/// Uniform small integer as a rational.
pub fn random_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    rat(rng.random_range(-bound..=bound))
}

/// Invertible n×n map with entries in `[-bound, bound]`; retries until the
/// determinant is nonzero.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> LinearMap {
    loop {
        let m = Matrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| random_rat(rng, bound)).collect())
                .collect(),
        );
        if m.rank() == n {
            return LinearMap::new(m);
        }
    }
}

/// Random subspace spanned by `rows` random vectors (its rank may be lower).
pub fn random_subspace<R: Rng>(rng: &mut R, n: usize, rows: usize, bound: i64) -> Subspace {
    Subspace::from_rows(
        n,
        (0..rows)
            .map(|_| (0..n).map(|_| random_rat(rng, bound)).collect())
            .collect(),
    )
}

/// Sparse random alternating element with roughly a third of the basis
/// entries populated.
pub fn random_alt<R: Rng>(
    rng: &mut R,
    n: usize,
    p: usize,
    variance: Variance,
    bound: i64,
) -> AltElement {
    let mut terms = Vec::new();
    for idx in MultiIndex::enumerate(n, p) {
        if rng.random_range(0..3) == 0 {
            let c = random_rat(rng, bound);
            if !c.is_zero() {
                terms.push((idx.indices().to_vec(), c));
            }
        }
    }
    AltElement::from_terms(n, p, variance, terms).expect("indices from enumerate are valid")
}

/// Random sparse polynomial with a few monomials of total degree at most
/// `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, bound: i64) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.random_range(1..=3) {
        let mut exps = vec![0u32; nvars];
        let mut budget = rng.random_range(0..=max_deg);
        while budget > 0 {
            exps[rng.random_range(0..nvars)] += 1;
            budget -= 1;
        }
        p = p.add(&Poly::from_terms(
            nvars,
            vec![(exps, rat(rng.random_range(-bound..=bound)))],
        ));
    }
    p
}

/// Random polynomial-coefficient form or multivector field, about half the
/// basis entries populated.
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
            let term =
                PolyAlt::from_terms(nvars, degree, variance, vec![(idx.indices().to_vec(), p)])
                    .expect("indices from enumerate are valid");
            out = out.add(&term).expect("matching shape");
        }
    }
    out
}

/// Like [`random_polyalt`] but with basis indices and coefficient variables
/// drawn from the given 1-based axes only. Useful on degenerate spaces
/// where contractions must stay inside the image of the flat maps.
pub fn random_polyalt_on_axes<R: Rng>(
    rng: &mut R,
    nvars: usize,
    degree: usize,
    variance: Variance,
    max_deg: u32,
    bound: i64,
    axes: &[usize],
) -> PolyAlt {
    let mut out = PolyAlt::zero(nvars, degree, variance);
    for idx in MultiIndex::enumerate(nvars, degree) {
        if !idx.indices().iter().all(|&i| axes.contains(&(i as usize))) {
            continue;
        }
        if rng.random_range(0..2) == 0 {
            let mut p = Poly::zero(nvars);
            for _ in 0..rng.random_range(1..=3) {
                let mut exps = vec![0u32; nvars];
                let mut budget = rng.random_range(0..=max_deg);
                while budget > 0 {
                    exps[axes[rng.random_range(0..axes.len())] - 1] += 1;
                    budget -= 1;
                }
                p = p.add(&Poly::from_terms(
                    nvars,
                    vec![(exps, rat(rng.random_range(-bound..=bound)))],
                ));
            }
            let term =
                PolyAlt::from_terms(nvars, degree, variance, vec![(idx.indices().to_vec(), p)])
                    .expect("indices from enumerate are valid");
            out = out.add(&term).expect("matching shape");
        }
    }
    out
}
