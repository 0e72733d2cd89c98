//! Acceptance suite: one test per criterion, each printing a pass line with
//! its wall time. All comparisons are exact rational arithmetic; runtime
//! bounds are asserted where stated.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multisym::bundle::{
    build_multivector_bundle, complete_lift, default_samples, fiber_reduction_model, FormBundle,
};
use multisym::canonical::{
    build_canonical, build_multisymplectomorphism, flat_image_lemma_check, lagrangian_complement,
    VerticalData,
};
use multisym::exterior::{AltElement, MultiIndex, Variance};
use multisym::graded::{
    conserved_quantity_check, graded_identities_check, GradedClass,
};
use multisym::poly::Poly;
use multisym::polyalt::{basis_form, solve_contraction, PolyAlt, PolyMap};
use multisym::reduction;
use multisym::sample;
use multisym::scalar::{rat, Rat};
use multisym::subspace::Subspace;
use multisym::verify;
use multisym::MSpace;

fn report(criterion: &str, started: Instant) {
    println!(
        "criterion {criterion}: PASS in {} ms",
        started.elapsed().as_millis()
    );
}

fn counterexample_space() -> MSpace {
    verify::counterexample_space()
}

#[test]
fn c01_counterexample_reproduction() {
    let started = Instant::now();
    let ms = counterexample_space();
    let n = verify::counterexample_n();
    let l = Subspace::coordinate(6, &[1, 2, 3]);

    // (a) N is 2-coisotropic
    let class = ms.classify(&n, 2).unwrap();
    assert!(class.coisotropic, "(a) N must be 2-coisotropic");

    // (b) N^{⊥,2} = {0}
    assert!(class.orthogonal.is_zero(), "(b) second orthogonal of N must vanish");

    // (c) L ∩ N = <l1+l2, l3>
    let meet = l.intersect(&n);
    let expected = Subspace::from_rows(
        6,
        vec![
            vec![rat(1), rat(1), rat(0), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1), rat(0), rat(0), rat(0)],
        ],
    );
    assert_eq!(meet, expected, "(c) L ∩ N basis");

    // (d) the projection is not 2-Lagrangian; witness a^12 sits in the
    // orthogonal of the projection but outside the projection
    let red = reduction::reduce(&ms, &n).unwrap();
    let projected_class = red.lagrangian_projection_test(&ms, &l, 2).unwrap();
    assert!(!projected_class.lagrangian, "(d) projection must fail");
    let alpha12 = [rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)];
    let image = red
        .projection
        .apply(&n.coordinates_of(&alpha12).expect("a^12 lies in N"));
    assert!(projected_class.orthogonal.contains_vector(&image));
    assert!(!red.project_subspace(&l).unwrap().contains_vector(&image));

    assert!(
        started.elapsed().as_secs() < 1,
        "criterion 1 exceeded 1 s"
    );
    report("1 (counterexample reproduction)", started);
}

#[test]
fn c02_canonical_model_propositions() {
    let started = Instant::now();
    let mut models = 0;
    for m in 1..=5usize {
        for e in 0..=m {
            for k in 1..=3.min(m) {
                for r in [0usize, 2, 3] {
                    let vd = VerticalData::coordinate(m, e, r).unwrap();
                    if vd.validate_for(k).is_err() {
                        continue;
                    }
                    if r != vd.vanishing_order() && (e, r) != (0, 0) {
                        continue; // normalized duplicate of the r = 0 case
                    }
                    let cm = build_canonical(vd, k).unwrap();
                    assert!(
                        cm.space.classify(&cm.base, k).unwrap().lagrangian,
                        "L not k-Lagrangian at ({m},{e},{k},{r})"
                    );
                    assert!(
                        cm.space.classify(&cm.fiber, 1).unwrap().lagrangian,
                        "W not 1-Lagrangian at ({m},{e},{k},{r})"
                    );
                    models += 1;
                }
            }
        }
    }
    // r = 1 tuples: ker ♭1 = E exactly
    let mut degenerate = 0;
    for m in 2..=5usize {
        for e in 1..=m {
            for k in 1..=3.min(m) {
                let vd = VerticalData::coordinate(m, e, 1).unwrap();
                if vd.vanishing_order() != 1 || vd.validate_for(k).is_err() {
                    continue;
                }
                let cm = build_canonical(vd, k).unwrap();
                assert_eq!(
                    cm.space.kernel_flat1(),
                    &cm.vertical_embedded,
                    "ker ♭1 ≠ E at ({m},{e},{k},1)"
                );
                degenerate += 1;
            }
        }
    }
    assert!(models > 20 && degenerate > 5);
    assert!(
        started.elapsed().as_secs() < 30,
        "criterion 2 exceeded 30 s"
    );
    report("2 (canonical-model propositions)", started);
}

#[test]
fn c03_type_kr_constructive_theorem() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let specs = [(3usize, 0usize, 2usize, 0usize), (4, 2, 2, 2), (2, 0, 2, 0)];
    let mut cases = 0;
    while cases < 25 {
        let (m, e, k, r) = specs[cases % specs.len()];
        let cm = build_canonical(VerticalData::coordinate(m, e, r).unwrap(), k).unwrap();
        let n = cm.total_dim();
        let g = sample::random_invertible(&mut rng, n, 2);
        let g_inv = g.inverse().unwrap();
        let omega = AltElement::pullback(&g, cm.space.omega()).unwrap();
        let ms = MSpace::new(n, k, omega).unwrap();
        let map_sub = |s: &Subspace| -> Subspace {
            Subspace::from_rows(n, s.basis().iter().map(|row| g_inv.apply(row)).collect())
        };
        let (l, w, e_sub) = (
            map_sub(&cm.base),
            map_sub(&cm.fiber),
            map_sub(&cm.vertical_embedded),
        );

        // the constructed complement is k-isotropic (i*ω = 0 exactly) and
        // complementary
        let u = lagrangian_complement(&ms, &w, &e_sub, r).unwrap();
        assert!(ms.is_k_isotropic_via_pullback(&u).unwrap());
        assert!(u.intersect(&w).is_zero());
        assert_eq!(u.rank() + w.rank(), n);

        // the multisymplectomorphism round-trips coefficientwise
        let witness = build_multisymplectomorphism(&ms, &l, &w, &e_sub, r).unwrap();
        let pulled = AltElement::pullback(&witness.phi, witness.model.space.omega()).unwrap();
        assert_eq!(&pulled, ms.omega());
        cases += 1;
    }
    assert!(
        started.elapsed().as_secs() < 60,
        "criterion 3 exceeded 60 s"
    );
    report("3 (type-(k,r) constructive theorem)", started);
}

#[test]
fn c04_flat_image_lemma() {
    let started = Instant::now();
    let mut checked = 0;
    for (m, e, k, r) in [
        (3usize, 0usize, 2usize, 0usize),
        (4, 2, 2, 2),
        (4, 3, 2, 2),
        (3, 0, 3, 0),
        (5, 3, 2, 3),
        (2, 0, 2, 0),
    ] {
        let vd = VerticalData::coordinate(m, e, r).unwrap();
        if vd.validate_for(k).is_err() {
            continue;
        }
        let cm = build_canonical(vd, k).unwrap();
        let report = flat_image_lemma_check(&cm).unwrap();
        assert!(report.ok, "missing ♭1-preimage in model ({m},{e},{k},{r})");
        for (alpha, witness) in &report.witnesses {
            let v = AltElement::from_vector(Variance::Contravariant, witness);
            assert_eq!(&AltElement::contract(&v, cm.space.omega()).unwrap(), alpha);
        }
        checked += 1;
    }
    assert!(checked >= 5);
    report("4 (flat-image lemma)", started);
}

#[test]
fn c05_orthogonal_properties() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let models: Vec<(String, MSpace)> = vec![
        ("counterexample".into(), counterexample_space()),
        (
            "vertical".into(),
            build_canonical(VerticalData::coordinate(4, 2, 2).unwrap(), 2)
                .unwrap()
                .space,
        ),
        (
            "degenerate".into(),
            build_canonical(VerticalData::coordinate(3, 1, 1).unwrap(), 2)
                .unwrap()
                .space,
        ),
    ];
    for (name, ms) in &models {
        for _ in 0..100 {
            let rows1 = rng.random_range(1..=3);
            let rows2 = rng.random_range(1..=3);
            let w1 = sample::random_subspace(&mut rng, ms.dim(), rows1, 2);
            let w2 = sample::random_subspace(&mut rng, ms.dim(), rows2, 2);
            let j = rng.random_range(1..=ms.order());
            let report = ms.orthogonal_properties_check(&w1, &w2, j).unwrap();
            assert!(report.all_hold(), "clause failed on {name}: {report:?}");
        }
    }
    report("5 (orthogonal properties, 100 pairs per model)", started);
}

/// Hamiltonian class of a given order on a volume space, by solving the
/// constant flat system for a random potential seed.
fn seeded_class(
    rng: &mut ChaCha8Rng,
    omega: &PolyAlt,
    omega_alt: &AltElement,
    k: usize,
    order: usize,
) -> (GradedClass, PolyAlt) {
    let n = omega_alt.dim();
    loop {
        let seed = sample::random_polyalt(rng, n, order, Variance::Covariant, 3, 2);
        if let Some(u) = solve_contraction(omega_alt, k - order, &seed.d().unwrap()) {
            let alpha = PolyAlt::hamiltonian_potential(&u, omega).unwrap();
            return (GradedClass::new(k, alpha).unwrap(), u);
        }
    }
}

#[test]
fn c06_graded_lie_algebra() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut triples = 0;

    let omega3 = basis_form(3, &[1, 2, 3]).unwrap();
    let omega3_alt = AltElement::basis(3, Variance::Covariant, &[1, 2, 3]).unwrap();
    for _ in 0..12 {
        let orders = [[1, 1, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1]][rng.random_range(0..4)];
        let t: Vec<(GradedClass, PolyAlt)> = orders
            .iter()
            .map(|&l| seeded_class(&mut rng, &omega3, &omega3_alt, 2, l))
            .collect();
        let triple: [(GradedClass, PolyAlt); 3] = t.try_into().unwrap();
        let report = graded_identities_check(&omega3, &triple).unwrap();
        assert!(report.antisymmetry, "antisymmetry failed on R^3 {orders:?}");
        assert!(report.jacobi, "Jacobi failed on R^3 {orders:?}");
        triples += 1;
    }

    let omega4 = basis_form(4, &[1, 2, 3, 4]).unwrap();
    let omega4_alt = AltElement::basis(4, Variance::Covariant, &[1, 2, 3, 4]).unwrap();
    for _ in 0..10 {
        let orders = [[2, 2, 2], [2, 2, 1], [2, 1, 2], [1, 2, 2]][rng.random_range(0..4)];
        let t: Vec<(GradedClass, PolyAlt)> = orders
            .iter()
            .map(|&l| seeded_class(&mut rng, &omega4, &omega4_alt, 3, l))
            .collect();
        let triple: [(GradedClass, PolyAlt); 3] = t.try_into().unwrap();
        let report = graded_identities_check(&omega4, &triple).unwrap();
        assert!(report.antisymmetry, "antisymmetry failed on R^4 {orders:?}");
        assert!(report.jacobi, "Jacobi failed on R^4 {orders:?}");
        triples += 1;
    }

    // degenerate constant closed 3-form on R^4 (ker ♭1 = <e4>)
    let omega_d = basis_form(4, &[1, 2, 3]).unwrap();
    let omega_d_alt = AltElement::basis(4, Variance::Covariant, &[1, 2, 3]).unwrap();
    for _ in 0..5 {
        let orders = [[1, 1, 1], [1, 1, 0], [0, 1, 1]][rng.random_range(0..3)];
        let t: Vec<(GradedClass, PolyAlt)> = orders
            .iter()
            .map(|&l| loop {
                let seed = sample::random_polyalt_on_axes(
                    &mut rng,
                    4,
                    l,
                    Variance::Covariant,
                    3,
                    2,
                    &[1, 2, 3],
                );
                if let Some(u) = solve_contraction(&omega_d_alt, 2 - l, &seed.d().unwrap()) {
                    let alpha = PolyAlt::hamiltonian_potential(&u, &omega_d).unwrap();
                    break (GradedClass::new(2, alpha).unwrap(), u);
                }
            })
            .collect();
        let triple: [(GradedClass, PolyAlt); 3] = t.try_into().unwrap();
        let report = graded_identities_check(&omega_d, &triple).unwrap();
        assert!(report.antisymmetry && report.jacobi, "degenerate ω triple failed");
        triples += 1;
    }
    assert!(triples >= 20);
    assert!(
        started.elapsed().as_secs() < 60,
        "criterion 6 exceeded 60 s"
    );
    report("6 (graded Lie algebra)", started);
}

#[test]
fn c07_schouten_normative_identity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let omega6 = basis_form(6, &[1, 2, 3, 4, 5, 6]).unwrap();
    let omega6_alt = AltElement::basis(6, Variance::Covariant, &[1, 2, 3, 4, 5, 6]).unwrap();
    let pairs: Vec<(usize, usize)> = (1..=3)
        .flat_map(|p| (1..=3).map(move |q| (p, q)))
        .collect();
    let mut checked = 0;
    for round in 0..54 {
        let (p, q) = pairs[round % pairs.len()];
        // locally Hamiltonian fields with coefficient degree ≤ 3
        let u = {
            let seed = sample::random_polyalt(&mut rng, 6, 5 - p, Variance::Covariant, 3, 2);
            solve_contraction(&omega6_alt, p, &seed.d().unwrap()).unwrap()
        };
        let v = {
            let seed = sample::random_polyalt(&mut rng, 6, 5 - q, Variance::Covariant, 3, 2);
            solve_contraction(&omega6_alt, q, &seed.d().unwrap()).unwrap()
        };
        assert!(PolyAlt::is_locally_hamiltonian(&u, &omega6).unwrap());
        assert!(PolyAlt::is_locally_hamiltonian(&v, &omega6).unwrap());
        let lhs = PolyAlt::contract(&PolyAlt::schouten(&u, &v).unwrap(), &omega6).unwrap();
        let rhs = PolyAlt::contract(&u.wedge(&v).unwrap(), &omega6)
            .unwrap()
            .d()
            .unwrap();
        assert!(
            lhs.add(&rhs).unwrap().is_zero(),
            "identity failed at (p,q) = ({p},{q})"
        );
        checked += 1;
    }
    assert!(checked >= 50);
    report("7 (Schouten normative identity)", started);
}

#[test]
fn c08_hamiltonian_iff_lagrangian() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for (n, indices) in [(3usize, vec![1u32, 2, 3]), (4, vec![1, 2, 3, 4])] {
        let omega = basis_form(n, &indices).unwrap();
        for q in 1..=2usize {
            let mb = build_multivector_bundle(&omega, q).unwrap();
            let samples = default_samples(n);
            for _ in 0..4 {
                let u = sample::random_polyalt(&mut rng, n, q, Variance::Contravariant, 2, 2);
                let report = mb.hamiltonian_iff_lagrangian_check(&u, &samples).unwrap();
                assert!(report.pullback_identity, "U*Ω̃ ≠ -d ι_U ω");
                assert!(report.equivalence_holds, "pointwise equivalence failed");
            }
        }
    }
    // polynomial closed base form with a degenerate locus
    let omega = basis_form(3, &[1, 2])
        .unwrap()
        .scale_poly(&Poly::var(3, 2))
        .d()
        .unwrap();
    let mb = build_multivector_bundle(&omega, 1).unwrap();
    for _ in 0..4 {
        let u = sample::random_polyalt(&mut rng, 3, 1, Variance::Contravariant, 2, 2);
        let report = mb
            .hamiltonian_iff_lagrangian_check(&u, &default_samples(3))
            .unwrap();
        assert!(report.pullback_identity && report.equivalence_holds);
    }
    report("8 (Hamiltonian ⟺ Lagrangian)", started);
}

#[test]
fn c09_complete_lift() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let shapes = [(3usize, 1usize), (4, 1), (4, 2)];
    let mut cases = 0;
    for round in 0..21 {
        let (n, k) = shapes[round % shapes.len()];
        let omega = loop {
            let cand = sample::random_polyalt(&mut rng, n, k + 1, Variance::Covariant, 2, 2);
            if !cand.is_closed().unwrap() {
                break cand;
            }
        };
        let q = rng.random_range(1..=k + 1);
        let lift = complete_lift(&omega, q).unwrap();
        let u = sample::random_polyalt(&mut rng, n, q, Variance::Contravariant, 2, 2);
        let fibers = MultiIndex::enumerate(n, q);
        let mut components: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
        for idx in &fibers {
            components.push(u.coefficient(idx));
        }
        let graph = PolyMap::new(n, components);
        assert_eq!(
            lift.pullback_map(&graph).unwrap(),
            PolyAlt::lie_derivative(&u, &omega).unwrap(),
            "U*ω^c ≠ £_U ω"
        );
        cases += 1;
    }
    assert!(cases >= 20);
    // closed ω: the lift equals (-1)^q Ω̃ coefficientwise
    for (n, indices) in [(3usize, vec![1u32, 2, 3]), (4, vec![1, 2, 3, 4])] {
        let omega = basis_form(n, &indices).unwrap();
        let k = indices.len() - 1;
        for q in 1..=k.min(2) {
            let lift = complete_lift(&omega, q).unwrap();
            let mb = build_multivector_bundle(&omega, q).unwrap();
            let expected = if q % 2 == 0 {
                mb.omega_tilde.clone()
            } else {
                mb.omega_tilde.neg()
            };
            assert_eq!(lift, expected);
        }
    }
    report("9 (complete lift)", started);
}

#[test]
fn c10_bundle_reduction() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let configs: [(usize, usize, Vec<usize>, usize, Vec<usize>); 4] = [
        (3, 2, vec![], 0, vec![1, 2]),
        (3, 2, vec![2, 3], 2, vec![1, 2]),
        (4, 2, vec![3, 4], 2, vec![1, 2, 3]),
        (4, 3, vec![], 0, vec![1, 2, 3]),
    ];
    for (m, k, e_axes, r, q_axes) in configs {
        let fb = FormBundle::build(m, k, &e_axes, r).unwrap();
        let fbq_dim = {
            let renumber = |axis: usize| q_axes.iter().position(|&a| a == axis);
            let e_tilde: Vec<usize> = e_axes
                .iter()
                .filter_map(|&a| renumber(a).map(|p| p + 1))
                .collect();
            FormBundle::build(q_axes.len(), k, &e_tilde, r)
                .unwrap()
                .fiber_dim()
        };
        let mut samples: Vec<Vec<Rat>> = vec![vec![Rat::zero(); q_axes.len()]];
        for _ in 0..4 {
            samples.push(
                (0..q_axes.len())
                    .map(|_| sample::random_rat(&mut rng, 3))
                    .collect(),
            );
        }
        for _ in 0..3 {
            // closed admissible section: coefficients in their own index
            // variables only
            let mut alpha = PolyAlt::zero(m, k, Variance::Covariant);
            for idx in &fb.fiber_indices {
                let mut coef = Poly::zero(m);
                for _ in 0..2 {
                    let mut exps = vec![0u32; m];
                    for _ in 0..rng.random_range(0..=2u32) {
                        let pos = idx.indices()[rng.random_range(0..idx.degree())] as usize - 1;
                        exps[pos] += 1;
                    }
                    coef = coef.add(&Poly::from_terms(
                        m,
                        vec![(exps, sample::random_rat(&mut rng, 2))],
                    ));
                }
                alpha = alpha
                    .add(
                        &PolyAlt::from_terms(
                            m,
                            k,
                            Variance::Covariant,
                            vec![(idx.indices().to_vec(), coef)],
                        )
                        .unwrap(),
                    )
                    .unwrap();
            }
            assert!(alpha.is_closed().unwrap());
            let report = fiber_reduction_model(&fb, &q_axes, &alpha, &samples).unwrap();
            assert!(
                report.kernel_rank_formula,
                "kernel rank formula failed at ({m},{k},{r})"
            );
            assert_eq!(report.kernel_rank, fb.fiber_dim() - fbq_dim);
            assert!(report.orthogonal_is_kernel_fibers);
            assert!(report.reduced_form_is_canonical);
            assert!(report.projected_graph_matches);
            assert!(report.projected_closed);
            assert!(report.projected_lagrangian);
            assert!(report.kernel_involutive);
        }
    }
    assert!(
        started.elapsed().as_secs() < 120,
        "criterion 10 exceeded 120 s"
    );
    report("10 (bundle reduction)", started);
}

#[test]
fn c11_conserved_quantities() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let omega3 = basis_form(3, &[1, 2, 3]).unwrap();
    let omega3_alt = AltElement::basis(3, Variance::Covariant, &[1, 2, 3]).unwrap();
    let mut agreements = 0;
    for _ in 0..20 {
        let q = rng.random_range(1..=2);
        let (h_class, x_h) = seeded_class(&mut rng, &omega3, &omega3_alt, 2, 2 - q);
        let (a_class, ua) = seeded_class(&mut rng, &omega3, &omega3_alt, 2, q - 1);
        let report = conserved_quantity_check(
            &omega3,
            &x_h,
            h_class.representative(),
            a_class.representative(),
            Some(&ua),
        )
        .unwrap();
        assert_eq!(
            report.conserved,
            report.bracket_representative_zero.unwrap(),
            "conservation and bracket criterion disagree"
        );
        agreements += 1;
    }
    assert!(agreements >= 20);
    report("11 (conserved quantities)", started);
}

#[test]
fn c12_whole_suite() {
    let started = Instant::now();
    let results = verify::run(&verify::VerifyOptions::default()).unwrap();
    assert!(results.len() >= 20);
    for r in &results {
        assert!(
            r.status != verify::ClaimStatus::Fail,
            "claim {} failed: {}",
            r.id,
            r.witness
        );
    }
    assert!(
        started.elapsed().as_secs() < 600,
        "criterion 12 exceeded 10 minutes"
    );
    report("12 (whole verification suite)", started);
}
