//! Linear coisotropic reduction.
//!
//! For a k-coisotropic subspace `N` of `(V, ω)` the reduction quotients `N`
//! by `K = N ∩ N^{⊥,k}` and carries the unique induced form with
//! `π* ω_N = i* ω`. The kernel is intersected with `N` so the quotient
//! stays well-defined even when `ker ♭1` sticks out of `N`; whenever the
//! coisotropy hypotheses hold this agrees with quotienting by `N^{⊥,k}`.
//!
//! Well-definedness of `ω_N` is asserted during construction: every kernel
//! basis vector must annihilate `i*ω`, which is exactly what makes the value
//! independent of section representatives.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{AltElement, LinearMap, Variance};
use crate::linalg::Matrix;
use crate::mspace::{MSpace, SubspaceClass};
use crate::scalar::Rat;
use crate::subspace::Subspace;

/// The quotient `N / (N ∩ N^{⊥,k})` with projection, section, and induced
/// form. Coordinates on `N` are with respect to its RREF basis.
#[derive(Debug)]
pub struct ReducedSpace {
    /// The coisotropic subspace being reduced.
    pub coisotropic: Subspace,
    /// `K = N ∩ N^{⊥,k}`.
    pub kernel: Subspace,
    /// Inclusion `Q^{rank N} → Q^n` (columns: the RREF basis of N).
    pub inclusion: LinearMap,
    /// Projection `Q^{rank N} → Q^d` onto quotient coordinates.
    pub projection: LinearMap,
    /// Section `Q^d → Q^{rank N}`; `projection ∘ section = id`.
    pub section: LinearMap,
    /// The quotient space with the induced form `ω_N`.
    pub quotient: MSpace,
    /// `i*ω`, the ambient form pulled back to N-coordinates.
    pub restricted: AltElement,
}

impl ReducedSpace {
    pub fn quotient_dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Pushes `L ∩ N` to the quotient, in canonical form.
    pub fn project_subspace(&self, l: &Subspace) -> Result<Subspace> {
        let meet = l.intersect(&self.coisotropic);
        let rows = meet
            .basis()
            .iter()
            .map(|v| {
                let in_n = self
                    .coisotropic
                    .coordinates_of(v)
                    .expect("vector of L ∩ N lies in N");
                self.projection.apply(&in_n)
            })
            .collect();
        Ok(Subspace::from_rows(self.quotient_dim(), rows))
    }

    /// Classifies the projection of an ambient j-Lagrangian subspace inside
    /// the quotient. Nothing guarantees the projection stays Lagrangian;
    /// the classification is reported as computed.
    pub fn lagrangian_projection_test(
        &self,
        ms: &MSpace,
        l: &Subspace,
        j: usize,
    ) -> Result<SubspaceClass> {
        if !ms.classify(l, j)?.lagrangian {
            return Err(Error::Precondition(format!(
                "subspace is not {j}-Lagrangian in the ambient space"
            )));
        }
        let projected = self.project_subspace(l)?;
        self.quotient.classify(&projected, j)
    }
}

/// Reduces a k-coisotropic subspace. Fails with a precondition error when
/// `N` is not k-coisotropic; an ill-defined induced form would indicate an
/// internal bug and panics loudly.
pub fn reduce(ms: &MSpace, n: &Subspace) -> Result<ReducedSpace> {
    let class = ms.classify(n, ms.order())?;
    if !class.coisotropic {
        return Err(Error::Precondition(format!(
            "N is not {}-coisotropic: N^(⊥,{}) is not contained in N + ker ♭1",
            ms.order(),
            ms.order()
        )));
    }
    reduce_unchecked(ms, n, &class.orthogonal, false)
}

/// Same construction with the section chosen from the reversed basis order,
/// used to confirm that `ω_N` does not depend on the section.
pub fn reduce_with_alternate_section(ms: &MSpace, n: &Subspace) -> Result<ReducedSpace> {
    let class = ms.classify(n, ms.order())?;
    if !class.coisotropic {
        return Err(Error::Precondition("N is not k-coisotropic".into()));
    }
    reduce_unchecked(ms, n, &class.orthogonal, true)
}

fn reduce_unchecked(
    ms: &MSpace,
    n: &Subspace,
    orthogonal: &Subspace,
    reverse_section: bool,
) -> Result<ReducedSpace> {
    let kernel = n.intersect(orthogonal);
    let nu = n.rank();
    let d = nu - kernel.rank();

    // section representatives: N-basis rows kept greedily independent of K
    let mut section_rows: Vec<Vec<Rat>> = Vec::with_capacity(d);
    {
        let mut acc = kernel.clone();
        let order: Vec<usize> = if reverse_section {
            (0..nu).rev().collect()
        } else {
            (0..nu).collect()
        };
        for i in order {
            if section_rows.len() == d {
                break;
            }
            let row = &n.basis()[i];
            let extended = acc.sum(&Subspace::from_rows(n.ambient_dim(), vec![row.clone()]));
            if extended.rank() > acc.rank() {
                section_rows.push(row.clone());
                acc = extended;
            }
        }
        if reverse_section {
            section_rows.reverse();
        }
    }

    let inclusion = n.inclusion_map();
    let restricted = AltElement::pullback(&inclusion, ms.omega())?;

    // well-definedness: each kernel direction annihilates i*ω
    for k_row in kernel.basis() {
        let in_n = n
            .coordinates_of(k_row)
            .expect("kernel is contained in N by construction");
        let kv = AltElement::from_vector(Variance::Contravariant, &in_n);
        assert!(
            AltElement::contract(&kv, &restricted)?.is_zero(),
            "induced form is not well-defined: a kernel direction fails to annihilate i*ω"
        );
    }

    // projection: N-coordinates -> coefficients along the section mod K
    // solve b_i = Σ a_j s_j + kernel part, in N-coordinates
    let section_in_n: Vec<Vec<Rat>> = section_rows
        .iter()
        .map(|row| n.coordinates_of(row).expect("section rows lie in N"))
        .collect();
    let kernel_in_n: Vec<Vec<Rat>> = kernel
        .basis()
        .iter()
        .map(|row| n.coordinates_of(row).expect("kernel lies in N"))
        .collect();
    let mut cols: Vec<Vec<Rat>> = section_in_n.clone();
    cols.extend(kernel_in_n);
    let decomp = Matrix::from_rows(
        (0..nu)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect(),
    );
    let mut proj = Matrix::zero(d, nu);
    for b in 0..nu {
        let mut unit = vec![Rat::zero(); nu];
        unit[b] = crate::scalar::rat(1);
        let coeffs = decomp
            .solve(&unit)
            .expect("section + kernel spans N by construction");
        for a in 0..d {
            proj[(a, b)] = coeffs[a].clone();
        }
    }
    let projection = LinearMap::new(proj);
    let mut sec = Matrix::zero(nu, d);
    for (j, col) in section_in_n.iter().enumerate() {
        for i in 0..nu {
            sec[(i, j)] = col[i].clone();
        }
    }
    let section = LinearMap::new(sec);

    // ω_N on section representatives
    let section_ambient = LinearMap::from_columns(n.ambient_dim(), &section_rows);
    let omega_n = AltElement::pullback(&section_ambient, ms.omega())?;
    let quotient = MSpace::new(d, ms.order(), omega_n)?;

    let red = ReducedSpace {
        coisotropic: n.clone(),
        kernel,
        inclusion,
        projection,
        section,
        quotient,
        restricted,
    };

    // the compatibility equation π* ω_N = i* ω, exactly
    let pulled = AltElement::pullback(&red.projection, red.quotient.omega())?;
    assert_eq!(
        pulled, red.restricted,
        "π*ω_N = i*ω failed; reduction construction is inconsistent"
    );
    Ok(red)
}

/// Samples pairs `(v, w)` with `v ∈ N^{⊥,k}` and `w ∈ N` and asserts
/// `i*(ι_{v∧w} ω) = 0` on `N` — the linear mechanism that closes the
/// coisotropic bracket subalgebra.
pub fn coisotropic_ideal_check(
    ms: &MSpace,
    n: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<CoisotropicIdealReport> {
    use rand::SeedableRng;
    let class = ms.classify(n, ms.order())?;
    if !class.coisotropic {
        return Err(Error::Precondition("N is not k-coisotropic".into()));
    }
    let orth = &class.orthogonal;
    let incl = n.inclusion_map();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut all_vanish = true;
    if orth.is_zero() || n.is_zero() {
        return Ok(CoisotropicIdealReport {
            checked: 0,
            vacuous: true,
            all_vanish: true,
        });
    }
    for _ in 0..samples {
        let v = random_combination(&mut rng, orth);
        let w = random_combination(&mut rng, n);
        let vw = AltElement::from_vector(Variance::Contravariant, &v)
            .wedge(&AltElement::from_vector(Variance::Contravariant, &w))?;
        let contracted = AltElement::contract(&vw, ms.omega())?;
        let restricted = AltElement::pullback(&incl, &contracted)?;
        checked += 1;
        if !restricted.is_zero() {
            all_vanish = false;
        }
    }
    Ok(CoisotropicIdealReport {
        checked,
        vacuous: false,
        all_vanish,
    })
}

/// Outcome of [`coisotropic_ideal_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoisotropicIdealReport {
    pub checked: usize,
    /// True when `N^{⊥,k} = 0` or `N = 0`, making the condition vacuous.
    pub vacuous: bool,
    pub all_vanish: bool,
}

fn random_combination<R: rand::Rng>(rng: &mut R, s: &Subspace) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); s.ambient_dim()];
    for row in s.basis() {
        let c = crate::scalar::rat(rng.random_range(-2..=2));
        if !c.is_zero() {
            for (i, x) in row.iter().enumerate() {
                v[i] += &c * x;
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn counterexample_space() -> MSpace {
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
        MSpace::new(6, 2, omega).unwrap()
    }

    fn sp(n: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    fn counterexample_n() -> Subspace {
        sp(
            6,
            &[
                &[1, 1, 0, 0, 0, 0],
                &[1, 0, 0, 0, 0, 1],
                &[0, 1, 0, 0, 1, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
            ],
        )
    }

    #[test]
    fn counterexample_reduction_is_identity_on_n() {
        let ms = counterexample_space();
        let n = counterexample_n();
        let red = reduce(&ms, &n).unwrap();
        assert!(red.kernel.is_zero());
        assert_eq!(red.quotient_dim(), 5);
        // ω_N = i*ω under the trivial quotient
        assert_eq!(red.quotient.omega(), &red.restricted);
    }

    #[test]
    fn counterexample_projection_fails_lagrangian() {
        let ms = counterexample_space();
        let n = counterexample_n();
        let red = reduce(&ms, &n).unwrap();
        let l = sp(
            6,
            &[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]],
        );
        // L ∩ N = <l1+l2, l3>
        let meet = l.intersect(&n);
        assert_eq!(meet, sp(6, &[&[1, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]));
        let class = red.lagrangian_projection_test(&ms, &l, 2).unwrap();
        assert!(!class.lagrangian, "projection must fail to be 2-Lagrangian");
        // witness: α12 projects into the orthogonal of the projection but not
        // into the projection itself
        let alpha12 = [rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)];
        let in_n = n.coordinates_of(&alpha12).unwrap();
        let in_quotient = red.projection.apply(&in_n);
        let projected = red.project_subspace(&l).unwrap();
        assert!(class.orthogonal.contains_vector(&in_quotient));
        assert!(!projected.contains_vector(&in_quotient));
    }

    #[test]
    fn rejects_non_coisotropic() {
        let ms = counterexample_space();
        // a 2-isotropic, non-coisotropic subspace: <l1>
        let l1 = sp(6, &[&[1, 0, 0, 0, 0, 0]]);
        assert!(matches!(
            reduce(&ms, &l1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn whole_space_reduces_by_top_orthogonal() {
        let ms = counterexample_space();
        let v = Subspace::full(6);
        let orth = ms.orthogonal(&v, 2).unwrap();
        let red = reduce(&ms, &v).unwrap();
        assert_eq!(red.kernel, orth);
        assert_eq!(red.quotient_dim(), 6 - orth.rank());
        // compatibility held by the construction assert; spot check π∘σ = id
        let comp = red.projection.compose(&red.section);
        assert_eq!(comp, LinearMap::identity(red.quotient_dim()));
    }

    #[test]
    fn projection_of_subspace_inside_kernel_is_zero() {
        let ms = counterexample_space();
        let v = Subspace::full(6);
        let red = reduce(&ms, &v).unwrap();
        if !red.kernel.is_zero() {
            let projected = red.project_subspace(&red.kernel).unwrap();
            assert!(projected.is_zero());
        }
    }

    #[test]
    fn omega_n_independent_of_section() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        // randomized coisotropic subspaces in canonical models: fiber-over-slice
        // subspaces plus the full space and the counterexample N
        let ms = counterexample_space();
        let mut cases: Vec<Subspace> = vec![counterexample_n(), Subspace::full(6)];
        for _ in 0..20 {
            // random subspaces containing the fiber W are 2-coisotropic here
            let mut rows = vec![
                vec![rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(0), rat(0), rat(1), rat(0)],
                vec![rat(0), rat(0), rat(0), rat(0), rat(0), rat(1)],
            ];
            for _ in 0..rng.random_range(1..=2) {
                rows.push((0..6).map(|_| rat(rng.random_range(-2..=2))).collect());
            }
            let cand = Subspace::from_rows(6, rows);
            if ms.classify(&cand, 2).unwrap().coisotropic {
                cases.push(cand);
            }
        }
        assert!(cases.len() >= 20, "not enough coisotropic samples");
        for n in cases {
            let a = reduce(&ms, &n).unwrap();
            let b = reduce_with_alternate_section(&ms, &n).unwrap();
            // quotient coordinates may differ; compare via the transition map
            // T = π_b ∘ σ_a : quotient_a -> quotient_b
            let t = b.projection.compose(&a.section);
            let pulled = AltElement::pullback(&t, b.quotient.omega()).unwrap();
            assert_eq!(&pulled, a.quotient.omega(), "ω_N depends on the section");
        }
    }

    #[test]
    fn reduce_is_idempotent_in_effect() {
        let ms = counterexample_space();
        let v = Subspace::full(6);
        let red = reduce(&ms, &v).unwrap();
        let again = reduce(&red.quotient, &Subspace::full(red.quotient_dim())).unwrap();
        assert!(again.kernel.is_zero() || again.kernel == *red.quotient.kernel_flat1());
        // reducing the already-reduced space by its trivial kernel changes nothing
        if again.kernel.is_zero() {
            assert_eq!(again.quotient.omega(), red.quotient.omega());
        }
    }

    #[test]
    fn identity_reduction_keeps_lagrangian() {
        // N = V with trivial kernel: the reduction is the identity and a
        // Lagrangian subspace projects to itself, still Lagrangian
        let ms = counterexample_space();
        let red = reduce(&ms, &Subspace::full(6)).unwrap();
        if red.kernel.is_zero() {
            let l = sp(
                6,
                &[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]],
            );
            let class = red.lagrangian_projection_test(&ms, &l, 2).unwrap();
            assert!(class.lagrangian);
            assert_eq!(red.project_subspace(&l).unwrap().rank(), 3);
        }
    }

    #[test]
    fn one_dimensional_vacuously_coisotropic_reduces_to_a_point() {
        // with ω = 0 everything is coisotropic and K = N
        let ms = MSpace::new(3, 1, AltElement::zero(3, 2, Variance::Covariant)).unwrap();
        let n = sp(3, &[&[1, 0, 0]]);
        let red = reduce(&ms, &n).unwrap();
        assert_eq!(red.kernel, n);
        assert_eq!(red.quotient_dim(), 0);
        assert!(red.quotient.omega().is_zero());
    }

    #[test]
    fn ideal_check_vacuous_on_counterexample() {
        let ms = counterexample_space();
        let report = coisotropic_ideal_check(&ms, &counterexample_n(), 10, 7).unwrap();
        assert!(report.vacuous);
    }

    #[test]
    fn ideal_check_holds_on_fiber_coisotropic() {
        let ms = counterexample_space();
        // N = W + <l1, l2>: contains the fiber, 2-coisotropic
        let n = sp(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 0, 1],
            ],
        );
        assert!(ms.classify(&n, 2).unwrap().coisotropic);
        let report = coisotropic_ideal_check(&ms, &n, 25, 11).unwrap();
        assert!(!report.vacuous);
        assert!(report.all_vanish);
    }
}
