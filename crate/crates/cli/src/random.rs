//! Deterministic random module generation for test corpora.
//!
//! Raw random commuting matrices essentially never satisfy the defining
//! relations, so modules are assembled from pieces that do by construction:
//! cyclic quotients kE/(ideal) for ideals generated by random homogeneous
//! elements, the regular module, parity shifts and direct sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superpoint_core::{
    is_pi_point, pipoint::coords_len, standard_spec, AlgebraElement, AlgebraMapSpec,
    AlgebraPresentation, Family, FiniteField, GradedModule, Monomial, PiPointRep, Scalar,
};

#[derive(Debug, Clone)]
pub struct RandomModuleSpec {
    pub seed: u64,
    /// The generated module has dimension in [1, target_dim].
    pub target_dim: usize,
    /// Percent chance of parity-shifting each summand.
    pub parity_split_percent: u32,
}

impl RandomModuleSpec {
    pub fn new(seed: u64, target_dim: usize) -> Self {
        RandomModuleSpec { seed, target_dim, parity_split_percent: 50 }
    }
}

fn random_scalar(rng: &mut ChaCha8Rng, field: &FiniteField) -> Scalar {
    field.scalar(rng.random_range(0..field.order()))
}

fn random_nonzero_scalar(rng: &mut ChaCha8Rng, field: &FiniteField) -> Scalar {
    field.scalar(rng.random_range(1..field.order()))
}

/// A random homogeneous element of the augmentation ideal.
fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
) -> AlgebraElement {
    let parity = if alg.has_sigma() { rng.random_range(0..2u8) } else { 0 };
    let term_count = rng.random_range(1..=3usize);
    let mut el = AlgebraElement::zero();
    let mut guard = 0;
    while el.is_zero() || el.terms.len() < term_count {
        guard += 1;
        if guard > 64 {
            break;
        }
        let idx = rng.random_range(1..alg.dim());
        let mono = alg.monomial_at(idx);
        if mono.parity() != parity {
            continue;
        }
        el.add_term(mono, random_nonzero_scalar(rng, field), field);
    }
    if el.is_zero() {
        // fall back to a generator; always homogeneous and in the radical
        if alg.num_even_gens() > 0 {
            AlgebraElement::gen_s(alg, field, 0)
        } else {
            AlgebraElement::gen_sigma(alg, field)
        }
    } else {
        el
    }
}

/// One structured summand of dimension at most `max_dim` (at least the
/// trivial module always fits).
fn random_piece(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
    max_dim: usize,
) -> GradedModule {
    // occasionally a free summand, so corpora contain projectives
    if alg.dim() <= max_dim && rng.random_range(0..100u32) < 20 {
        return GradedModule::regular(alg, field);
    }
    for _ in 0..12 {
        let gen_count = rng.random_range(1..=3usize);
        let gens: Vec<AlgebraElement> =
            (0..gen_count).map(|_| random_homogeneous(rng, alg, field)).collect();
        let piece = GradedModule::cyclic_quotient(alg, field, &gens)
            .expect("homogeneous generators give a valid quotient");
        if piece.dim() >= 1 && piece.dim() <= max_dim {
            return piece;
        }
    }
    GradedModule::trivial(alg, field)
}

/// Deterministic-in-seed random module of dimension in [1, target_dim];
/// always passes validation.
pub fn module_random(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    spec: &RandomModuleSpec,
) -> GradedModule {
    assert!(spec.target_dim >= 1, "target dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut acc: Option<GradedModule> = None;
    loop {
        let used = acc.as_ref().map_or(0, GradedModule::dim);
        let remaining = spec.target_dim - used;
        if remaining == 0 {
            break;
        }
        let mut piece = random_piece(&mut rng, alg, field, remaining);
        if rng.random_range(0..100u32) < spec.parity_split_percent {
            piece = piece.parity_shift();
        }
        acc = Some(match acc {
            None => piece,
            Some(m) => m.direct_sum(&piece).expect("same algebra and field"),
        });
        // stop early most of the time so dimensions vary
        if rng.random_range(0..100u32) < 40 {
            break;
        }
    }
    let out = acc.expect("at least one piece");
    debug_assert!(out.validate().is_empty());
    out
}

/// A random algebra element with a scalar part, for operator constructions.
pub fn random_element(
    seed_rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
    max_terms: usize,
) -> AlgebraElement {
    let mut el = AlgebraElement::zero();
    for _ in 0..seed_rng.random_range(0..=max_terms) {
        let idx = seed_rng.random_range(0..alg.dim());
        el.add_term(alg.monomial_at(idx), random_scalar(seed_rng, field), field);
    }
    el
}

/// A random nonzero point over the field.
pub fn random_point(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
) -> PiPointRep {
    loop {
        let coords: Vec<Scalar> =
            (0..coords_len(alg)).map(|_| random_scalar(rng, field)).collect();
        if coords.iter().any(|c| !c.is_zero()) {
            return PiPointRep { field: field.clone(), coords };
        }
    }
}

/// A random valid (f, g) pair defining a pi-point. Mixes four recipes:
/// standard representatives, standard plus terms whose p-th powers die in J,
/// pure hypersurface pairs in the last generator, and (for Witt with one
/// even generator) pairs with genuinely polynomial g.
pub fn sample_valid_spec(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
) -> AlgebraMapSpec {
    for _ in 0..32 {
        let spec = sample_spec_candidate(rng, alg, field);
        if let Ok(true) = is_pi_point(alg, field, &spec) {
            return spec;
        }
    }
    standard_spec(alg, &random_point(rng, alg, field)).expect("standard specs are always valid")
}

fn sample_spec_candidate(
    rng: &mut ChaCha8Rng,
    alg: &AlgebraPresentation,
    field: &FiniteField,
) -> AlgebraMapSpec {
    let n = alg.num_even_gens();
    let p = alg.p();
    match alg.family() {
        Family::Witt { m, .. } => {
            let recipe = rng.random_range(0..if n == 1 { 4 } else { 3 });
            let mut pm1 = 1u32;
            for _ in 0..m - 1 {
                pm1 *= p;
            }
            match recipe {
                0 => standard_spec(alg, &random_point(rng, alg, field)).unwrap(),
                1 => {
                    // standard spec plus monomials whose p-th powers lie in sJ
                    let mut spec = standard_spec(alg, &random_point(rng, alg, field)).unwrap();
                    for _ in 0..rng.random_range(1..=3) {
                        let mono = loop {
                            let idx = rng.random_range(1..alg.dim());
                            let mono = alg.monomial_at(idx);
                            if mono.eps != 0 {
                                continue;
                            }
                            let deep = (0..n - 1).any(|i| mono.exps[i] >= 1)
                                || mono.exps[n - 1] >= pm1;
                            if deep {
                                break mono;
                            }
                        };
                        spec.f.add_term(mono, random_scalar(rng, field), field);
                    }
                    spec
                }
                2 => {
                    // f = c s_n^(p^(m-1)), g = d s_n^((p^m - p)/2)
                    let mut f = AlgebraElement::zero();
                    let mut mono = Monomial::one(n);
                    mono.exps[n - 1] = pm1;
                    f.add_term(mono, random_nonzero_scalar(rng, field), field);
                    let mut g = AlgebraElement::zero();
                    let half = (pm1 * p - p) / 2;
                    let mut mono = Monomial::one(n);
                    mono.exps[n - 1] = half;
                    g.add_term(mono, random_scalar(rng, field), field);
                    AlgebraMapSpec { f, g }
                }
                _ => {
                    // n = 1: general g supported on s-degrees divisible by p,
                    // with the forced low-order part of f solved for
                    let mut g = AlgebraElement::zero();
                    let bound = p * pm1;
                    let mut deg = 0;
                    while deg < bound {
                        g.add_term(
                            Monomial { exps: vec![deg], eps: 0 },
                            random_scalar(rng, field),
                            field,
                        );
                        deg += p;
                    }
                    let gg = superpoint_core::algebra::multiply(alg, field, &g, &g).unwrap();
                    let mut f = AlgebraElement::zero();
                    // (f^p)_(s^(p j)) = (g^2 s^p)_(s^(p j)) for p j < p^m
                    for j in 1..pm1 {
                        let want = gg
                            .terms
                            .get(&Monomial { exps: vec![p * (j - 1)], eps: 0 })
                            .copied()
                            .unwrap_or(Scalar::ZERO);
                        f.add_term(Monomial { exps: vec![j], eps: 0 }, field.pth_root(want), field);
                    }
                    for _ in 0..rng.random_range(0..=2) {
                        let e = rng.random_range(pm1..bound);
                        f.add_term(Monomial { exps: vec![e], eps: 0 }, random_scalar(rng, field), field);
                    }
                    AlgebraMapSpec { f, g }
                }
            }
        }
        Family::ExteriorLike { .. } => {
            // validity only needs f(0) = 0
            let mut f = AlgebraElement::zero();
            for _ in 0..rng.random_range(1..=3) {
                let idx = rng.random_range(1..alg.dim());
                let mono = alg.monomial_at(idx);
                if mono.eps == 0 {
                    f.add_term(mono, random_scalar(rng, field), field);
                }
            }
            let mut g = AlgebraElement::zero();
            for _ in 0..rng.random_range(0..=2) {
                let idx = rng.random_range(0..alg.dim());
                let mono = alg.monomial_at(idx);
                if mono.eps == 0 {
                    g.add_term(mono, random_scalar(rng, field), field);
                }
            }
            AlgebraMapSpec { f, g }
        }
        Family::ElemAbelian { .. } => {
            let mut f = AlgebraElement::zero();
            for _ in 0..rng.random_range(1..=4) {
                let idx = rng.random_range(1..alg.dim());
                f.add_term(alg.monomial_at(idx), random_scalar(rng, field), field);
            }
            AlgebraMapSpec { f, g: AlgebraElement::zero() }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::build_algebra;

    #[test]
    fn deterministic_and_valid() {
        let alg = build_algebra(3, "witt", 1, Some(2)).unwrap();
        let field = FiniteField::new(3, 1, None).unwrap();
        for seed in 0..25u64 {
            let spec = RandomModuleSpec::new(seed, 10);
            let a = module_random(&alg, &field, &spec);
            let b = module_random(&alg, &field, &spec);
            assert_eq!(a, b, "same seed must reproduce the module");
            assert!(a.validate().is_empty());
            assert!(a.dim() >= 1 && a.dim() <= 10);
        }
    }

    #[test]
    fn rank_zero_exterior_family_generates() {
        // no even generators at all: the only radical element is sigma
        let alg = build_algebra(3, "exterior", 0, None).unwrap();
        let field = FiniteField::new(3, 1, None).unwrap();
        for seed in 0..50u64 {
            let m = module_random(&alg, &field, &RandomModuleSpec::new(seed, 6));
            assert!(m.validate().is_empty());
        }
    }

    #[test]
    fn corpus_contains_free_and_non_free_modules() {
        let alg = build_algebra(3, "exterior", 1, None).unwrap();
        let field = FiniteField::new(3, 1, None).unwrap();
        let mut free = 0;
        let mut non_free = 0;
        for seed in 0..100u64 {
            let m = module_random(&alg, &field, &RandomModuleSpec::new(seed, 12));
            if m.is_free() {
                free += 1;
            } else {
                non_free += 1;
            }
        }
        assert!(free > 0, "no free module in 100 seeds");
        assert!(non_free > 0, "no non-free module in 100 seeds");
    }
}
