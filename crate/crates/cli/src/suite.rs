//! The `check-suite` property battery: a condensed, fast version of the
//! oracle and property checks that the acceptance test suite runs at full
//! scale. Exit code 0 means every suite passed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superpoint_core::{
    betti, carlson_module, coefficient_tuple, equivalent, max_image_test,
    minimal_resolution, normalize, restrict_spec, standard_restriction, standard_spec,
    variety::{
        homogeneity_check, hom_support_check, is_projective, nonzero_encodings, rank_variety,
        tensor_support_check, MatrixForm, ProjectivityVerdict, DEFAULT_BUDGET,
    },

    AlgebraElement, AlgebraPresentation, CohomologyClassRep, Family, FiniteField, GradedModule,
    PiPointRep, RestrictedAction, Scalar,
};

use crate::random::{module_random, random_point, sample_valid_spec, RandomModuleSpec};

pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn result(name: &str, passed: bool, detail: String) -> SuiteResult {
    SuiteResult { name: name.to_string(), passed, detail }
}

fn pass(name: &str, detail: impl Into<String>) -> SuiteResult {
    result(name, true, detail.into())
}

fn fail(name: &str, detail: impl Into<String>) -> SuiteResult {
    result(name, false, detail.into())
}

pub fn families() -> Vec<AlgebraPresentation> {
    vec![
        AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap(),
        AlgebraPresentation::new(3, Family::Witt { n: 2, m: 2 }).unwrap(),
        AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap(),
        AlgebraPresentation::new(3, Family::ElemAbelian { n: 2 }).unwrap(),
    ]
}

fn f3() -> FiniteField {
    FiniteField::new(3, 1, None).unwrap()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out as usize
}

fn relations(seed: u64) -> SuiteResult {
    let name = "relations";
    let field = f3();
    for alg in families() {
        let mut prev: Option<GradedModule> = None;
        for i in 0..20u64 {
            let m = module_random(&alg, &field, &RandomModuleSpec::new(seed ^ (i * 7919 + 1), 6));
            if !m.validate().is_empty() {
                return fail(name, format!("random module fails validation (seed {i})"));
            }
            let shifted = m.parity_shift();
            if !shifted.validate().is_empty() {
                return fail(name, format!("parity shift breaks validation (seed {i})"));
            }
            if let Some(p) = prev {
                let t = m.tensor(&p).unwrap();
                if !t.validate().is_empty() {
                    return fail(name, format!("tensor fails validation (seed {i})"));
                }
                let h = m.internal_hom(&p).unwrap();
                if !h.validate().is_empty() {
                    return fail(name, format!("hom fails validation (seed {i})"));
                }
            }
            prev = Some(m);
        }
    }
    pass(name, "validate, tensor, hom and parity shift on 80 random modules")
}

fn rank_criterion(_seed: u64) -> SuiteResult {
    let name = "rank_criterion";
    let field = f3();
    let alg = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
    let ke = GradedModule::regular(&alg, &field);
    let k = GradedModule::trivial(&alg, &field);
    let msigma =
        GradedModule::cyclic_quotient(&alg, &field, &[AlgebraElement::gen_sigma(&alg, &field)])
            .unwrap();
    for e in [1u32, 2] {
        let q = 3u64.pow(e) as usize;
        let vk = rank_variety(&k, e, DEFAULT_BUDGET).unwrap();
        if vk.points.len() != q * q {
            return fail(name, format!("V^r(k) over F_{} is not the full plane", q));
        }
        let vke = rank_variety(&ke, e, DEFAULT_BUDGET).unwrap();
        if vke.points.len() != 1 {
            return fail(name, format!("V^r(kE) over F_{} is not the origin", q));
        }
        let vm = rank_variety(&msigma, e, DEFAULT_BUDGET).unwrap();
        let axis = vm.points.iter().all(|p| p[1].is_zero());
        if vm.points.len() != q || !axis {
            return fail(name, format!("V^r(kE/(sigma)) over F_{} is not the a2 = 0 axis", q));
        }
    }
    pass(name, "V^r ground truth for k, kE and kE/(sigma) over F_3 and F_9")
}

fn projectivity(seed: u64) -> SuiteResult {
    let name = "projectivity";
    let field = f3();
    let fams = families();
    for i in 0..20u64 {
        let alg = &fams[(i % 4) as usize];
        let m = module_random(alg, &field, &RandomModuleSpec::new(seed ^ (i * 104729 + 3), 10));
        let free = m.is_free();
        if free {
            for e in [1u32, 2] {
                let v = rank_variety(&m, e, DEFAULT_BUDGET).unwrap();
                if v.points.len() != 1 {
                    return fail(name, format!("free module with nonzero variety point (seed {i})"));
                }
            }
        } else {
            match is_projective(&m, 3, DEFAULT_BUDGET).unwrap() {
                ProjectivityVerdict::NotProjective { .. } => {}
                v => return fail(name, format!("non-free module verdict {v:?} (seed {i})")),
            }
        }
    }
    pass(name, "freeness oracle matches variety witnesses on 20 random modules")
}

fn homogeneity(seed: u64) -> SuiteResult {
    let name = "homogeneity";
    let field = f3();
    let fams = families();
    for i in 0..10u64 {
        let alg = &fams[(i % 4) as usize];
        let m = module_random(alg, &field, &RandomModuleSpec::new(seed ^ (i * 31 + 17), 8));
        if let Some(cex) = homogeneity_check(&m, 2, DEFAULT_BUDGET).unwrap() {
            return fail(name, format!("closure fails at {:?} (seed {i})", cex));
        }
    }
    pass(name, "V^r over F_9 closed under weighted scaling and the sign flip")
}

fn tensor_hom(seed: u64) -> SuiteResult {
    let name = "tensor_hom";
    let field = f3();
    for alg in [
        AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap(),
        AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap(),
    ] {
        for i in 0..8u64 {
            let a = module_random(&alg, &field, &RandomModuleSpec::new(seed ^ (2 * i), 5));
            let b = module_random(&alg, &field, &RandomModuleSpec::new(seed ^ (2 * i + 1), 5));
            if let Some(cex) = tensor_support_check(&a, &b, 1, DEFAULT_BUDGET).unwrap() {
                return fail(name, format!("tensor formula fails at {:?} (pair {i})", cex.point));
            }
            if let Some(cex) = hom_support_check(&a, &b, 1, DEFAULT_BUDGET).unwrap() {
                return fail(name, format!("hom formula fails at {:?} (pair {i})", cex.point));
            }
        }
    }
    pass(name, "support formulas on 16 random pairs over F_3")
}

fn betti_numbers(_seed: u64) -> SuiteResult {
    let name = "betti_numbers";
    let field = f3();
    let witt = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
    let k = GradedModule::trivial(&witt, &field);
    let res = minimal_resolution(&k, 5);
    for i in 0..=5 {
        if res.betti(i) != i + 1 {
            return fail(name, format!("betti_{} over Witt(3,1,2) is {}", i, res.betti(i)));
        }
    }
    let ea = AlgebraPresentation::new(3, Family::ElemAbelian { n: 1 }).unwrap();
    let k = GradedModule::trivial(&ea, &field);
    let res = minimal_resolution(&k, 5);
    if res.ranks() != [1, 1, 1, 1, 1, 1] {
        return fail(name, "betti over k[s]/s^3 not constant");
    }
    let witt2 = AlgebraPresentation::new(3, Family::Witt { n: 2, m: 2 }).unwrap();
    let b3 = betti(&GradedModule::trivial(&witt2, &field), 3);
    if b3 != binomial(5, 2) {
        return fail(name, format!("betti_3 over Witt(3,2,2) is {b3}"));
    }
    pass(name, "Betti numbers match the binomial closed forms")
}

fn pi_normalization(seed: u64) -> SuiteResult {
    let name = "pi_normalization";
    let alg = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xBEEF);
    for e in [1u32, 2] {
        let field = FiniteField::new(3, e, None).unwrap();
        // anchor: the tuple of a standard spec is the raw Frobenius tuple
        for _ in 0..12 {
            let a = random_point(&mut rng, &alg, &field);
            let spec = standard_spec(&alg, &a).unwrap();
            let b = coefficient_tuple(&alg, &field, &spec).unwrap();
            let expected = vec![field.pow(a.coords[0], 3), field.pow(a.coords[1], 6)];
            if b != expected {
                return fail(name, "coefficient tuple of a standard spec is not F(a)");
            }
        }
        // behavioral soundness of normalization on sample modules
        for i in 0..12u64 {
            let spec = sample_valid_spec(&mut rng, &alg, &field);
            let Ok(rep) = normalize(&alg, &field, &spec) else {
                return fail(name, "sampled spec failed to normalize");
            };
            if rep.field != field {
                continue; // quadratic extension: skip cross-field comparison here
            }
            for j in 0..5u64 {
                let m = module_random(
                    &alg,
                    &field,
                    &RandomModuleSpec::new(seed ^ (i * 997 + j), 6),
                );
                let general = restrict_spec(&m, &spec).unwrap();
                let standard = standard_restriction(&m, &rep).unwrap();
                let o1 = max_image_test(&general, &field, 3).unwrap();
                let o2 = max_image_test(&standard, &field, 3).unwrap();
                if o1 != o2 {
                    return fail(
                        name,
                        format!("general and standard restrictions disagree (spec {i}, module {j})"),
                    );
                }
            }
        }
    }
    pass(name, "normalization is behaviorally sound on sampled specs and modules")
}

/// Panel of modules whose restriction outcomes separate inequivalent points:
/// k, kE/(sigma), kE/(s), and the Carlson modules of all projective classes
/// of even degree-2 functionals.
pub fn equivalence_panel(
    alg: &AlgebraPresentation,
    field: &FiniteField,
) -> Vec<GradedModule> {
    let mut panel = vec![
        GradedModule::trivial(alg, field),
        GradedModule::cyclic_quotient(alg, field, &[AlgebraElement::gen_sigma(alg, field)]).unwrap(),
        GradedModule::cyclic_quotient(alg, field, &[AlgebraElement::gen_s(alg, field, 0)]).unwrap(),
    ];
    let k = GradedModule::trivial(alg, field);
    let res = minimal_resolution(&k, 2);
    let par = res.generator_parities(2);
    let even: Vec<usize> =
        (0..res.betti(2)).filter(|&g| par[g] == 0).collect();
    // projective classes of functionals on the even generators
    let q = field.order();
    let mut reps: Vec<Vec<Scalar>> = Vec::new();
    for lead in 0..even.len() {
        let tail = even.len() - lead - 1;
        let mut counters = vec![0u32; tail];
        loop {
            let mut coords = vec![Scalar::ZERO; even.len()];
            coords[lead] = field.one();
            for (t, &c) in counters.iter().enumerate() {
                coords[lead + 1 + t] = field.scalar(c);
            }
            reps.push(coords);
            // increment the mixed-radix counter
            let mut k = 0;
            loop {
                if k == counters.len() {
                    break;
                }
                counters[k] += 1;
                if counters[k] < q {
                    break;
                }
                counters[k] = 0;
                k += 1;
            }
            if k == counters.len() {
                break;
            }
        }
    }
    for rep_coords in reps {
        let mut coeffs = vec![Scalar::ZERO; res.betti(2)];
        for (slot, &g) in even.iter().enumerate() {
            coeffs[g] = rep_coords[slot];
        }
        let xi = CohomologyClassRep { degree: 2, coeffs };
        panel.push(carlson_module(&res, &xi).unwrap());
    }
    panel
}

fn restriction_outcomes(
    panel: &[GradedModule],
    field: &FiniteField,
    a: &PiPointRep,
    p: u64,
) -> Vec<bool> {
    panel
        .iter()
        .map(|m| {
            let r = standard_restriction(m, a).unwrap();
            max_image_test(&r, field, p).unwrap()
        })
        .collect()
}

fn equivalence(_seed: u64) -> SuiteResult {
    let name = "equivalence";
    let alg = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
    let field = f3();
    let panel = equivalence_panel(&alg, &field);
    let mut points = Vec::new();
    for enc in 1..9u32 {
        let coords = vec![field.scalar(enc % 3), field.scalar(enc / 3)];
        points.push(PiPointRep { field: field.clone(), coords });
    }
    let outcomes: Vec<Vec<bool>> =
        points.iter().map(|a| restriction_outcomes(&panel, &field, a, 3)).collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let eq = equivalent(&alg, &points[i], &points[j]).unwrap();
            if eq && outcomes[i] != outcomes[j] {
                return fail(name, format!("equivalent points {i},{j} disagree on the panel"));
            }
            if !eq && outcomes[i] == outcomes[j] {
                return fail(name, format!("no panel module separates inequivalent {i},{j}"));
            }
        }
    }
    pass(name, "panel outcomes decide equivalence over F_3")
}

fn resolution_exactness(seed: u64) -> SuiteResult {
    let name = "resolution_exactness";
    let field = f3();
    let fams = families();
    for i in 0..3u64 {
        let alg = &fams[(i % 4) as usize];
        let m = module_random(alg, &field, &RandomModuleSpec::new(seed ^ (i + 11), 6));
        let res = minimal_resolution(&m, 3);
        if let Err(e) = res.verify() {
            return fail(name, format!("resolution of random module (seed {i}): {e}"));
        }
    }
    pass(name, "d.d = 0, minimality and exactness on random modules")
}

fn super_fp(seed: u64) -> SuiteResult {
    let name = "super_fp";
    // k[b, c, d, e]/(b^3, c^3, d^9, d^3 - e^2) is exactly the Witt algebra on
    // three even generators; beta, gamma, delta, epsilon act on its modules
    let alg = AlgebraPresentation::new(3, Family::Witt { n: 3, m: 2 }).unwrap();
    let field = FiniteField::new(3, 2, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xF00D);
    for i in 0..30u64 {
        let m = module_random(&alg, &field, &RandomModuleSpec::new(seed ^ (i * 13 + 29), 12));
        match super_fp_case(&mut rng, &alg, &field, &m) {
            Ok(true) => {}
            Ok(false) => return fail(name, format!("outcomes differ (case {i})")),
            Err(e) => return fail(name, format!("case {i}: {e}")),
        }
    }
    pass(name, "perturbation by beta gamma never changes the maximal-image outcome")
}

/// One instance of the commuting-operator property: compare the outcomes for
/// (epsilon, delta) and (epsilon, delta + beta gamma).
pub fn super_fp_case(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
    m: &GradedModule,
) -> Result<bool, superpoint_core::Error> {
    use crate::random::random_element;
    let s1 = AlgebraElement::gen_s(alg, field, 0);
    let s2 = AlgebraElement::gen_s(alg, field, 1);
    let s3 = AlgebraElement::gen_s(alg, field, 2);
    let sigma = AlgebraElement::gen_sigma(alg, field);
    let mul = |a: &AlgebraElement, b: &AlgebraElement| {
        superpoint_core::algebra::multiply(alg, field, a, b).unwrap()
    };
    let rho = field.scalar(rng.random_range(1..field.order()));
    // gamma = s2 u + s1 v: cubes to zero
    let gamma_el = mul(&s2, &random_element(rng, alg, field, 2))
        .add(&mul(&s1, &random_element(rng, alg, field, 2)), field);
    // delta = rho^2 s3 + s1 u' + s2 v': delta^3 = rho^6 s3^3, delta^9 = 0
    let delta_el = s3
        .scale(field.pow(rho, 2), field)
        .add(&mul(&s1, &random_element(rng, alg, field, 2)), field)
        .add(&mul(&s2, &random_element(rng, alg, field, 2)), field);
    // epsilon = rho^3 sigma: epsilon^2 = rho^6 s3^3 = delta^3
    let eps_el = sigma.scale(field.pow(rho, 3), field);
    let beta_el = random_element(rng, alg, field, 3);

    let delta = m.element_action(&delta_el)?;
    let eps = m.element_action(&eps_el)?;
    let perturbed = delta.add(&m.element_action(&mul(&beta_el, &gamma_el))?, field);

    let r1 = RestrictedAction { t: delta, tau: eps.clone() };
    let r2 = RestrictedAction { t: perturbed, tau: eps };
    let o1 = max_image_test(&r1, field, 3)?;
    let o2 = max_image_test(&r2, field, 3)?;
    Ok(o1 == o2)
}

fn carlson_suite(_seed: u64) -> SuiteResult {
    let name = "carlson";
    let alg = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
    let field = f3();
    let k = GradedModule::trivial(&alg, &field);
    let res = minimal_resolution(&k, 2);
    let omega2 = res.syzygy(2).module;
    let par = res.generator_parities(2).to_vec();
    let even: Vec<usize> = (0..res.betti(2)).filter(|&g| par[g] == 0).collect();
    let mut varieties = Vec::new();
    for enc in 1..9u32 {
        let mut coeffs = vec![Scalar::ZERO; res.betti(2)];
        coeffs[even[0]] = field.scalar(enc % 3);
        coeffs[even[1]] = field.scalar(enc / 3);
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let xi = CohomologyClassRep { degree: 2, coeffs };
        let l = carlson_module(&res, &xi).unwrap();
        if l.dim() != omega2.dim() - 1 {
            return fail(name, "dim L_xi != dim Omega^2(k) - 1");
        }
        varieties.push(nonzero_encodings(&rank_variety(&l, 1, DEFAULT_BUDGET).unwrap()));
    }
    let distinct: std::collections::BTreeSet<_> = varieties.iter().cloned().collect();
    if distinct.len() < 2 {
        return fail(name, "all degree-2 Carlson varieties coincide");
    }
    pass(name, "Carlson modules have the expected dimension and distinct varieties")
}

fn paper_matrix_diagnostic(_seed: u64) -> SuiteResult {
    let name = "exterior_matrix_diagnostic";
    // the printed exterior-family matrix must evaluate without panicking;
    // agreement with the theorem form is not asserted
    let alg = AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap();
    let field = f3();
    let m = GradedModule::regular(&alg, &field);
    let v = superpoint_core::variety::rank_variety_form(&m, 1, DEFAULT_BUDGET, MatrixForm::PaperExterior);
    match v {
        Ok(_) => pass(name, "paper form evaluates; theorem form drives the theory"),
        Err(e) => fail(name, format!("paper form failed to evaluate: {e}")),
    }
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    vec![
        relations(seed),
        rank_criterion(seed),
        projectivity(seed),
        homogeneity(seed),
        tensor_hom(seed),
        betti_numbers(seed),
        pi_normalization(seed),
        equivalence(seed),
        resolution_exactness(seed),
        super_fp(seed),
        carlson_suite(seed),
        paper_matrix_diagnostic(seed),
    ]
}
