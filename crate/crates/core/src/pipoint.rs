//! Pi-points: standard representatives, restriction of modules to (T, Tau)
//! operator pairs, coefficient extraction and normalization of general
//! algebra maps, Frobenius images and equivalence.
//!
//! A map from the test algebra into kE is a pair of polynomials (f, g) in the
//! even generators with alpha(t) = f(s) and alpha(tau) = g(s) sigma, subject
//! to f^p = g^2 s_n^p modulo J (sigma^2 = 0 makes the right side vanish in
//! the exterior family; elementary abelian group schemes force g = 0). The
//! compatible pairs reduce, through p-th and square roots of their
//! coefficient tuple, to the standard representatives
//!
//!   alpha_a(t)   = a_1 s_1 + .. + a_(n-1) s_(n-1) + a_n s_n^(p^(m-1)) + a_(n+1)^2 s_n
//!   alpha_a(tau) = a_(n+1)^p sigma                                   (Witt)
//!
//! and their analogues for the other families.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, AlgebraPresentation, Family, Monomial};
use crate::error::{Error, Result};
use crate::field::{extend_field, FieldEmbedding, FiniteField, Scalar};
use crate::matrix::Mat;
use crate::module::GradedModule;

/// A standard pi-point representative: a nonzero coordinate tuple over K.
/// Length n+1 for the families with sigma, n for elementary abelian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPointRep {
    pub field: FiniteField,
    pub coords: Vec<Scalar>,
}

impl PiPointRep {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Number of coordinates a representative carries for this algebra.
pub fn coords_len(alg: &AlgebraPresentation) -> usize {
    alg.num_even_gens() + usize::from(alg.has_sigma())
}

/// A general algebra map spec: alpha(t) = f(s), alpha(tau) = g(s) sigma.
/// Both polynomials live in the even subalgebra (no sigma component),
/// truncated to the monomial bounds of the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMapSpec {
    pub f: AlgebraElement,
    pub g: AlgebraElement,
}

/// A module restricted along a pi-point: the commuting operator pair
/// (T, Tau) with Tau^2 = T^p.
#[derive(Debug, Clone)]
pub struct RestrictedAction {
    pub t: Mat,
    pub tau: Mat,
}

impl RestrictedAction {
    pub fn dim(&self) -> usize {
        self.t.rows
    }
}

fn check_point(m: &GradedModule, a: &PiPointRep) -> Result<()> {
    if a.field != *m.field() {
        return Err(Error::FieldMismatch);
    }
    if a.coords.len() != coords_len(m.algebra()) {
        return Err(Error::DimensionMismatch);
    }
    if a.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

/// Restrict M along the standard representative of `a`, returning the
/// operator pair (T, Tau). The relation Tau^2 = T^p is asserted.
pub fn standard_restriction(m: &GradedModule, a: &PiPointRep) -> Result<RestrictedAction> {
    let alg = m.algebra();
    check_point(m, a)?;
    let f = m.field();
    let n = alg.num_even_gens();
    let p = alg.p() as u64;
    let dim = m.dim();
    let mut t = Mat::zeros(dim, dim);
    let tau;
    match alg.family() {
        Family::Witt { m: wm, .. } => {
            for i in 0..n - 1 {
                t = t.add(&m.s_action(i).scale(a.coords[i], f), f);
            }
            let mut pm1 = 1u64;
            for _ in 0..wm - 1 {
                pm1 *= p;
            }
            t = t.add(&m.s_action(n - 1).pow(pm1, f).scale(a.coords[n - 1], f), f);
            t = t.add(&m.s_action(n - 1).scale(f.pow(a.coords[n], 2), f), f);
            tau = m.sigma_or_zero().scale(f.pow(a.coords[n], p), f);
        }
        Family::ExteriorLike { .. } => {
            for i in 0..n {
                t = t.add(&m.s_action(i).scale(a.coords[i], f), f);
            }
            tau = m.sigma_or_zero().scale(a.coords[n], f);
        }
        Family::ElemAbelian { .. } => {
            for i in 0..n {
                t = t.add(&m.s_action(i).scale(a.coords[i], f), f);
            }
            tau = Mat::zeros(dim, dim);
        }
    }
    let r = RestrictedAction { t, tau };
    check_relation(&r, f, p)?;
    Ok(r)
}

/// Restrict M along a general spec (f, g): T = f(S), Tau = g(S) Sigma.
pub fn restrict_spec(m: &GradedModule, spec: &AlgebraMapSpec) -> Result<RestrictedAction> {
    let f = m.field();
    if !spec.f.is_homogeneous(0) || !spec.g.is_homogeneous(0) {
        return Err(Error::IncompatiblePair);
    }
    let t = m.element_action(&spec.f)?;
    let tau = m.element_action(&spec.g)?.mul(&m.sigma_or_zero(), f);
    let r = RestrictedAction { t, tau };
    check_relation(&r, f, m.algebra().p() as u64)?;
    Ok(r)
}

fn check_relation(r: &RestrictedAction, f: &FiniteField, p: u64) -> Result<()> {
    if !r.t.is_square() || r.tau.rows != r.t.rows || !r.tau.is_square() {
        return Err(Error::DimensionMismatch);
    }
    if r.tau.mul(&r.tau, f) != r.t.pow(p, f) {
        return Err(Error::RelationViolation);
    }
    Ok(())
}

/// Sparse polynomials in the even generators, with no truncation.
type SPoly = BTreeMap<Vec<u32>, Scalar>;

fn spoly_add_term(poly: &mut SPoly, key: Vec<u32>, c: Scalar, f: &FiniteField) {
    if c.is_zero() {
        return;
    }
    match poly.entry(key) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            let s = f.add(*o.get(), c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn spoly_from_element(el: &AlgebraElement) -> SPoly {
    el.terms
        .iter()
        .map(|(m, &c)| (m.exps.clone(), c))
        .collect()
}

fn spoly_mul(a: &SPoly, b: &SPoly, f: &FiniteField) -> SPoly {
    let mut out = SPoly::new();
    for (ka, &ca) in a {
        for (kb, &cb) in b {
            let key: Vec<u32> = ka.iter().zip(kb).map(|(&x, &y)| x + y).collect();
            spoly_add_term(&mut out, key, f.mul(ca, cb), f);
        }
    }
    out
}

/// f^p in characteristic p: exponents scale by p, coefficients by Frobenius.
fn spoly_pth_power(a: &SPoly, f: &FiniteField, p: u32) -> SPoly {
    a.iter()
        .map(|(k, &c)| (k.iter().map(|&e| e * p).collect(), f.frobenius(c)))
        .collect()
}

/// The uniquely determined coefficient tuple b of Lemma-style reduction:
/// f^p - g^2 sigma^2 = b_1 s_1^p + .. + b_n s_n^(p^m) + b_(n+1)(s_n^p - sigma^2)
/// modulo m I (with the family-appropriate right-hand basis). Fails with
/// IncompatiblePair when (f, g) does not define an algebra map at all.
pub fn coefficient_tuple(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    spec: &AlgebraMapSpec,
) -> Result<Vec<Scalar>> {
    spec.f.check_bounds(alg)?;
    spec.g.check_bounds(alg)?;
    if !spec.f.is_homogeneous(0) || !spec.g.is_homogeneous(0) {
        return Err(Error::IncompatiblePair);
    }
    let n = alg.num_even_gens();
    let p = alg.p();
    let fp = spoly_pth_power(&spoly_from_element(&spec.f), field, p);
    match alg.family() {
        Family::Witt { m, .. } => {
            // h = f^p - g^2 s_n^p as an honest polynomial
            let mut h = fp;
            let gg = spoly_mul(
                &spoly_from_element(&spec.g),
                &spoly_from_element(&spec.g),
                field,
            );
            for (k, &c) in &gg {
                let mut key = k.clone();
                key[n - 1] += p;
                spoly_add_term(&mut h, key, field.neg(c), field);
            }
            // membership in the monomial ideal J = (s_1^p,..,s_(n-1)^p, s_n^(p^m))
            let mut pm = 1u64;
            for _ in 0..m {
                pm *= p as u64;
            }
            for key in h.keys() {
                let in_j = (0..n - 1).any(|i| key[i] >= p) || key[n - 1] as u64 >= pm;
                if !in_j {
                    return Err(Error::IncompatiblePair);
                }
            }
            let mut b = Vec::with_capacity(n + 1);
            for i in 0..n - 1 {
                let mut key = vec![0u32; n];
                key[i] = p;
                b.push(h.get(&key).copied().unwrap_or(Scalar::ZERO));
            }
            let mut key = vec![0u32; n];
            key[n - 1] = pm as u32;
            b.push(h.get(&key).copied().unwrap_or(Scalar::ZERO));
            let g0 = spec.g.constant_term(alg);
            b.push(field.mul(g0, g0));
            Ok(b)
        }
        Family::ExteriorLike { .. } => {
            // f^p must vanish in kE, i.e. lie in J = (s_1^p,..,s_n^p)
            for key in fp.keys() {
                if !(0..n).any(|i| key[i] >= p) {
                    return Err(Error::IncompatiblePair);
                }
            }
            let mut b = Vec::with_capacity(n + 1);
            for i in 0..n {
                let mut key = vec![0u32; n];
                key[i] = p;
                b.push(fp.get(&key).copied().unwrap_or(Scalar::ZERO));
            }
            // hypersurface coefficient of sigma^2
            let g0 = spec.g.constant_term(alg);
            b.push(field.neg(field.mul(g0, g0)));
            Ok(b)
        }
        Family::ElemAbelian { .. } => {
            if !spec.g.is_zero() {
                return Err(Error::IncompatiblePair);
            }
            for key in fp.keys() {
                if !(0..n).any(|i| key[i] >= p) {
                    return Err(Error::IncompatiblePair);
                }
            }
            let mut b = Vec::with_capacity(n);
            for i in 0..n {
                let mut key = vec![0u32; n];
                key[i] = p;
                b.push(fp.get(&key).copied().unwrap_or(Scalar::ZERO));
            }
            Ok(b)
        }
    }
}

/// Whether (f, g) defines a pi-point: the coefficient tuple is nonzero.
pub fn is_pi_point(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    spec: &AlgebraMapSpec,
) -> Result<bool> {
    Ok(coefficient_tuple(alg, field, spec)?.iter().any(|c| !c.is_zero()))
}

/// Standard representative of a general spec, via p-th and square roots of
/// its coefficient tuple; extends the field by degree two when the square
/// root is missing.
pub fn normalize(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    spec: &AlgebraMapSpec,
) -> Result<PiPointRep> {
    let b = coefficient_tuple(alg, field, spec)?;
    normalize_tuple(alg, field, &b)
}

/// Root extraction b -> a: a_i = b_i^(1/p) for the first n coordinates, and
/// for the last one a = b^(1/2p) (Witt) or a = (-b)^(1/2) (exterior).
pub fn normalize_tuple(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    b: &[Scalar],
) -> Result<PiPointRep> {
    if b.len() != coords_len(alg) {
        return Err(Error::DimensionMismatch);
    }
    if b.iter().all(|c| c.is_zero()) {
        return Err(Error::NotAPiPoint);
    }
    let n = alg.num_even_gens();
    let sqrt_target = match alg.family() {
        Family::Witt { .. } => Some(b[n]),
        Family::ExteriorLike { .. } => Some(field.neg(b[n])),
        Family::ElemAbelian { .. } => None,
    };
    if let Some(x) = sqrt_target {
        if field.square_root(x).is_none() {
            // pr-style field extension: every element of K is a square in the
            // quadratic extension of K
            let (big, emb) = extend_field(field, 2)?;
            let b2: Vec<Scalar> = b.iter().map(|&c| emb.map(c)).collect();
            return normalize_tuple(alg, &big, &b2);
        }
    }
    let mut coords = Vec::with_capacity(b.len());
    for i in 0..n {
        coords.push(field.pth_root(b[i]));
    }
    match alg.family() {
        Family::Witt { .. } => {
            let r = field.square_root(b[n]).expect("checked above");
            coords.push(field.pth_root(r));
        }
        Family::ExteriorLike { .. } => {
            coords.push(field.square_root(field.neg(b[n])).expect("checked above"));
        }
        Family::ElemAbelian { .. } => {}
    }
    Ok(PiPointRep { field: field.clone(), coords })
}

/// The Frobenius image of a nonzero point, as a projective tuple normalized
/// so its first nonzero coordinate is one:
/// Witt [a_1^p : .. : a_n^p : a_(n+1)^(2p)], exterior last coordinate
/// -a_(n+1)^2, elementary abelian [a_1^p : .. : a_n^p].
pub fn frobenius_image(alg: &AlgebraPresentation, a: &PiPointRep) -> Result<Vec<Scalar>> {
    if a.coords.len() != coords_len(alg) {
        return Err(Error::DimensionMismatch);
    }
    if a.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let f = &a.field;
    let n = alg.num_even_gens();
    let p = alg.p() as u64;
    let mut img: Vec<Scalar> = (0..n).map(|i| f.pow(a.coords[i], p)).collect();
    match alg.family() {
        Family::Witt { .. } => img.push(f.pow(a.coords[n], 2 * p)),
        Family::ExteriorLike { .. } => img.push(f.neg(f.pow(a.coords[n], 2))),
        Family::ElemAbelian { .. } => {}
    }
    let lead = img.iter().position(|c| !c.is_zero()).expect("F(a) = 0 only at a = 0");
    let inv = f.inv(img[lead]).unwrap();
    for c in img.iter_mut() {
        *c = f.mul(*c, inv);
    }
    Ok(img)
}

/// Equivalence of pi-points: equal Frobenius images after embedding into a
/// common finite extension.
pub fn equivalent(alg: &AlgebraPresentation, a: &PiPointRep, b: &PiPointRep) -> Result<bool> {
    if a.field == b.field {
        return Ok(frobenius_image(alg, a)? == frobenius_image(alg, b)?);
    }
    let (ea, eb) = (a.field.degree(), b.field.degree());
    let l = ea / gcd(ea, eb) * eb;
    let target = FiniteField::new(a.field.p() as u64, l, None)?;
    let map_point = |pt: &PiPointRep, emb: &FieldEmbedding| PiPointRep {
        field: target.clone(),
        coords: pt.coords.iter().map(|&c| emb.map(c)).collect(),
    };
    let emb_a = FieldEmbedding::new(&a.field, &target)?;
    let emb_b = FieldEmbedding::new(&b.field, &target)?;
    let a2 = map_point(a, &emb_a);
    let b2 = map_point(b, &emb_b);
    Ok(frobenius_image(alg, &a2)? == frobenius_image(alg, &b2)?)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn scalar_display(f: &FiniteField, s: Scalar) -> String {
    if f.degree() == 1 {
        format!("{}", s.encoding())
    } else {
        let coords = f.coords(s);
        let inner: Vec<String> = coords.iter().map(|c| format!("{c}")).collect();
        format!("[{}]", inner.join(","))
    }
}

/// Symbolic generators of the homogeneous prime ideal p(alpha_a) in the
/// cohomology variables u_i, x_i, zeta. Display only; equivalent points give
/// identical lists because both branches depend only on the normalized
/// Frobenius image.
pub fn prime_ideal_generators(alg: &AlgebraPresentation, a: &PiPointRep) -> Result<Vec<String>> {
    if a.coords.len() != coords_len(alg) {
        return Err(Error::DimensionMismatch);
    }
    if a.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let f = &a.field;
    let n = alg.num_even_gens();
    let p = alg.p() as u64;
    // raw Frobenius coordinates, before projective normalization
    let b: Vec<Scalar> = (0..n).map(|i| f.pow(a.coords[i], p)).collect();
    let last = match alg.family() {
        Family::Witt { .. } => Some(f.pow(a.coords[n], 2 * p)),
        Family::ExteriorLike { .. } => Some(f.neg(f.pow(a.coords[n], 2))),
        Family::ElemAbelian { .. } => None,
    };
    let mut gens = Vec::new();
    match last {
        Some(blast) if !blast.is_zero() => {
            let inv = f.inv(blast).unwrap();
            for (i, bi) in b.iter().enumerate() {
                let c = f.mul(*bi, inv);
                gens.push(linear_gen(f, &format!("x_{}", i + 1), c, "zeta^2"));
            }
        }
        _ => {
            if last.is_some() {
                gens.push(String::from("zeta"));
            }
            // cross terms b_i x_j - b_j x_i, normalized by the leading coefficient
            for i in 0..n {
                for j in i + 1..n {
                    if !b[i].is_zero() {
                        let c = f.mul(b[j], f.inv(b[i]).unwrap());
                        gens.push(linear_gen(f, &format!("x_{}", j + 1), c, &format!("x_{}", i + 1)));
                    } else if !b[j].is_zero() {
                        gens.push(format!("x_{}", i + 1));
                    }
                }
            }
        }
    }
    for i in 1..=n {
        gens.push(format!("u_{i}"));
    }
    Ok(gens)
}

fn linear_gen(f: &FiniteField, lhs: &str, c: Scalar, rhs: &str) -> String {
    if c.is_zero() {
        String::from(lhs)
    } else if c == Scalar::ONE {
        format!("{lhs} - {rhs}")
    } else {
        format!("{lhs} - {}*{rhs}", scalar_display(f, c))
    }
}

/// The standard spec (f_a, g_a) of a point, used to anchor the coefficient
/// extraction: coefficient_tuple(standard_spec(a)) = F(a) exactly.
pub fn standard_spec(
    alg: &AlgebraPresentation,
    a: &PiPointRep,
) -> Result<AlgebraMapSpec> {
    if a.coords.len() != coords_len(alg) {
        return Err(Error::DimensionMismatch);
    }
    let field = &a.field;
    let n = alg.num_even_gens();
    let p = alg.p() as u64;
    let mut f = AlgebraElement::zero();
    let mut g = AlgebraElement::zero();
    match alg.family() {
        Family::Witt { m, .. } => {
            for i in 0..n - 1 {
                let mut mono = Monomial::one(n);
                mono.exps[i] = 1;
                f.add_term(mono, a.coords[i], field);
            }
            let mut pm1 = 1u64;
            for _ in 0..m - 1 {
                pm1 *= p;
            }
            let mut mono = Monomial::one(n);
            mono.exps[n - 1] = pm1 as u32;
            f.add_term(mono, a.coords[n - 1], field);
            let mut mono = Monomial::one(n);
            mono.exps[n - 1] = 1;
            f.add_term(mono, field.pow(a.coords[n], 2), field);
            g.add_term(Monomial::one(n), field.pow(a.coords[n], p), field);
        }
        Family::ExteriorLike { .. } => {
            for i in 0..n {
                let mut mono = Monomial::one(n);
                mono.exps[i] = 1;
                f.add_term(mono, a.coords[i], field);
            }
            g.add_term(Monomial::one(n), a.coords[n], field);
        }
        Family::ElemAbelian { .. } => {
            for i in 0..n {
                let mut mono = Monomial::one(n);
                mono.exps[i] = 1;
                f.add_term(mono, a.coords[i], field);
            }
        }
    }
    Ok(AlgebraMapSpec { f, g })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt12() -> (AlgebraPresentation, FiniteField) {
        (
            AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap(),
            FiniteField::new(3, 1, None).unwrap(),
        )
    }

    fn pt(f: &FiniteField, coords: &[i64]) -> PiPointRep {
        PiPointRep { field: f.clone(), coords: coords.iter().map(|&c| f.from_int(c)).collect() }
    }

    #[test]
    fn restriction_of_trivial_module_vanishes() {
        let (alg, f) = witt12();
        let k = GradedModule::trivial(&alg, &f);
        let r = standard_restriction(&k, &pt(&f, &[0, 1])).unwrap();
        assert!(r.t.is_zero() && r.tau.is_zero());
    }

    #[test]
    fn restriction_of_sigma_quotient() {
        let (alg, f) = witt12();
        let m = GradedModule::cyclic_quotient(&alg, &f, &[AlgebraElement::gen_sigma(&alg, &f)]).unwrap();
        // a = (0, 1): T = 0 * S^3 + 1 * S = S, Tau = 0
        let r = standard_restriction(&m, &pt(&f, &[0, 1])).unwrap();
        assert_eq!(&r.t, m.s_action(0));
        assert!(r.tau.is_zero());
        // a = (1, 0): T = S^3 = 0
        let r = standard_restriction(&m, &pt(&f, &[1, 0])).unwrap();
        assert!(r.t.is_zero() && r.tau.is_zero());
    }

    #[test]
    fn zero_point_rejected() {
        let (alg, f) = witt12();
        let k = GradedModule::trivial(&alg, &f);
        assert_eq!(standard_restriction(&k, &pt(&f, &[0, 0])).err().unwrap(), Error::ZeroPoint);
    }

    #[test]
    fn field_mismatch_requires_explicit_base_change() {
        let (alg, f) = witt12();
        let k = GradedModule::trivial(&alg, &f);
        let f9 = FiniteField::new(3, 2, None).unwrap();
        let a = PiPointRep { field: f9.clone(), coords: vec![f9.zero(), f9.one()] };
        assert_eq!(standard_restriction(&k, &a).err().unwrap(), Error::FieldMismatch);
        let k9 = k.base_change(2).unwrap();
        assert!(standard_restriction(&k9, &a).is_ok());
    }

    #[test]
    fn incompatible_pair_detected() {
        // f = s: f^3 = s^3 is not in J = (s^9)
        let (alg, f) = witt12();
        let spec = AlgebraMapSpec {
            f: AlgebraElement::gen_s(&alg, &f, 0),
            g: AlgebraElement::zero(),
        };
        assert_eq!(coefficient_tuple(&alg, &f, &spec).err().unwrap(), Error::IncompatiblePair);
    }

    #[test]
    fn coefficient_extraction_discards_deep_monomials() {
        // f = s^3 + s^4, g = 0: h = s^9 + s^12 + higher, all in J;
        // only the s^9 coefficient survives reduction
        let (alg, f) = witt12();
        let mut fel = AlgebraElement::zero();
        fel.add_term(Monomial { exps: vec![3], eps: 0 }, f.one(), &f);
        fel.add_term(Monomial { exps: vec![4], eps: 0 }, f.one(), &f);
        let spec = AlgebraMapSpec { f: fel, g: AlgebraElement::zero() };
        let b = coefficient_tuple(&alg, &f, &spec).unwrap();
        assert_eq!(b, vec![f.one(), f.zero()]);
    }

    #[test]
    fn standard_spec_extraction_recovers_frobenius() {
        let (alg, f) = witt12();
        for a1 in 0..3 {
            for a2 in 0..3 {
                if a1 == 0 && a2 == 0 {
                    continue;
                }
                let a = pt(&f, &[a1, a2]);
                let spec = standard_spec(&alg, &a).unwrap();
                let b = coefficient_tuple(&alg, &f, &spec).unwrap();
                let expected = vec![f.pow(a.coords[0], 3), f.pow(a.coords[1], 6)];
                assert_eq!(b, expected);
            }
        }
    }

    #[test]
    fn normalize_unit_g() {
        // f = s, g = 1 over the Witt family: f^3 = s^3 = g^2 s^3, so
        // b = (0, 1) and the representative is a = (0, 1)
        let (alg, f) = witt12();
        let spec = AlgebraMapSpec {
            f: AlgebraElement::gen_s(&alg, &f, 0),
            g: AlgebraElement::one(&alg, &f),
        };
        let a = normalize(&alg, &f, &spec).unwrap();
        assert_eq!(a.coords, vec![f.zero(), f.one()]);
        // f = 0, g = 1 is not an algebra map here (it sends t^p - tau^2 to
        // -sigma^2 = -s^3, nonzero in kE) but is one in the exterior family
        let bad = AlgebraMapSpec { f: AlgebraElement::zero(), g: AlgebraElement::one(&alg, &f) };
        assert_eq!(coefficient_tuple(&alg, &f, &bad).err().unwrap(), Error::IncompatiblePair);
        let ext = AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap();
        let spec = AlgebraMapSpec { f: AlgebraElement::zero(), g: AlgebraElement::one(&ext, &f) };
        let a = normalize(&ext, &f, &spec).unwrap();
        assert_eq!(a.coords, vec![f.zero(), f.one()]);
    }

    #[test]
    fn zero_spec_is_not_a_pi_point() {
        let (alg, f) = witt12();
        let spec = AlgebraMapSpec { f: AlgebraElement::zero(), g: AlgebraElement::zero() };
        assert!(!is_pi_point(&alg, &f, &spec).unwrap());
        assert_eq!(normalize(&alg, &f, &spec).err().unwrap(), Error::NotAPiPoint);
    }

    #[test]
    fn elementary_abelian_linear_part_criterion() {
        let alg = AlgebraPresentation::new(3, Family::ElemAbelian { n: 1 }).unwrap();
        let f = FiniteField::new(3, 1, None).unwrap();
        let s = AlgebraElement::gen_s(&alg, &f, 0);
        let spec = AlgebraMapSpec { f: s.clone(), g: AlgebraElement::zero() };
        assert!(is_pi_point(&alg, &f, &spec).unwrap());
        let zero = AlgebraMapSpec { f: AlgebraElement::zero(), g: AlgebraElement::zero() };
        assert!(!is_pi_point(&alg, &f, &zero).unwrap());
        // s^2 has no linear part
        let s2 = crate::algebra::multiply(&alg, &f, &s, &s).unwrap();
        let quad = AlgebraMapSpec { f: s2, g: AlgebraElement::zero() };
        assert!(!is_pi_point(&alg, &f, &quad).unwrap());
        // a nonzero g never defines a map for group schemes
        let bad = AlgebraMapSpec { f: s, g: AlgebraElement::one(&alg, &f) };
        assert_eq!(coefficient_tuple(&alg, &f, &bad).err().unwrap(), Error::IncompatiblePair);
    }

    #[test]
    fn frobenius_image_examples() {
        let (alg, f) = witt12();
        assert_eq!(
            frobenius_image(&alg, &pt(&f, &[0, 1])).unwrap(),
            vec![f.zero(), f.one()]
        );
        assert_eq!(
            frobenius_image(&alg, &pt(&f, &[1, 1])).unwrap(),
            vec![f.one(), f.one()]
        );
    }

    #[test]
    fn scaling_action_preserves_equivalence() {
        let (alg, f9) = (witt12().0, FiniteField::new(3, 2, None).unwrap());
        for enc_a1 in 0..9 {
            for enc_a2 in 0..9 {
                if enc_a1 == 0 && enc_a2 == 0 {
                    continue;
                }
                let a = PiPointRep {
                    field: f9.clone(),
                    coords: vec![f9.scalar(enc_a1), f9.scalar(enc_a2)],
                };
                for enc_l in 1..9 {
                    let l = f9.scalar(enc_l);
                    let scaled = PiPointRep {
                        field: f9.clone(),
                        coords: vec![f9.mul(f9.pow(l, 2), a.coords[0]), f9.mul(l, a.coords[1])],
                    };
                    assert!(equivalent(&alg, &a, &scaled).unwrap());
                }
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let (alg, f) = witt12();
        // 2^6 = 64 = 1 mod 3
        assert!(equivalent(&alg, &pt(&f, &[0, 1]), &pt(&f, &[0, 2])).unwrap());
        assert!(!equivalent(&alg, &pt(&f, &[1, 0]), &pt(&f, &[0, 1])).unwrap());
        // across fields: (0,1) over F_3 matches (0,1) over F_9
        let f9 = FiniteField::new(3, 2, None).unwrap();
        let b = PiPointRep { field: f9.clone(), coords: vec![f9.zero(), f9.one()] };
        assert!(equivalent(&alg, &pt(&f, &[0, 1]), &b).unwrap());
    }

    #[test]
    fn prime_ideal_generator_strings() {
        let (alg, f) = witt12();
        // a = (c, 1) with c = 2: x_1 - c^3 zeta^2 = x_1 - 2 zeta^2 (2^3 = 8 = 2)
        assert_eq!(
            prime_ideal_generators(&alg, &pt(&f, &[2, 1])).unwrap(),
            vec![String::from("x_1 - 2*zeta^2"), String::from("u_1")]
        );
        assert_eq!(
            prime_ideal_generators(&alg, &pt(&f, &[0, 1])).unwrap(),
            vec![String::from("x_1"), String::from("u_1")]
        );
        assert_eq!(
            prime_ideal_generators(&alg, &pt(&f, &[1, 0])).unwrap(),
            vec![String::from("zeta"), String::from("u_1")]
        );
        // equivalent points print identically
        let a = pt(&f, &[2, 1]);
        let b = pt(&f, &[2, 2]); // lambda = 2 action: (4*2, 2) = (2, 2)
        assert!(equivalent(&alg, &a, &b).unwrap());
        assert_eq!(
            prime_ideal_generators(&alg, &a).unwrap(),
            prime_ideal_generators(&alg, &b).unwrap()
        );
    }

    #[test]
    fn hypersurface_pair_is_a_pi_point_iff_a_squared_is_not_one() {
        // over k[s, sigma]/(s^27, s^3 - sigma^2): f = s^9, g = a s^12 gives
        // h = (1 - a^2) s^27, so the pair is a pi-point exactly when a^2 != 1
        let alg = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 3 }).unwrap();
        let f9 = FiniteField::new(3, 2, None).unwrap();
        let spec_for = |a: Scalar| AlgebraMapSpec {
            f: AlgebraElement::from_term(Monomial { exps: vec![9], eps: 0 }, f9.one()),
            g: AlgebraElement::from_term(Monomial { exps: vec![12], eps: 0 }, a),
        };
        for a in f9.elements() {
            let is_pi = is_pi_point(&alg, &f9, &spec_for(a)).unwrap();
            let a_sq_is_one = f9.mul(a, a) == f9.one();
            assert_eq!(is_pi, !a_sq_is_one, "a = {}", a.encoding());
        }
    }

    #[test]
    fn standard_spec_extraction_two_even_generators() {
        // over Witt(3,2,2): h = a1^3 s1^3 + a2^3 s2^9, so the tuple is
        // (a1^3, a2^3, a3^6)
        let alg = AlgebraPresentation::new(3, Family::Witt { n: 2, m: 2 }).unwrap();
        let f = FiniteField::new(3, 2, None).unwrap();
        for enc in [5u32, 13, 40, 71] {
            let a = PiPointRep {
                field: f.clone(),
                coords: vec![f.scalar(enc % 9), f.scalar((enc / 3) % 9), f.scalar(enc % 7 + 1)],
            };
            let spec = standard_spec(&alg, &a).unwrap();
            let b = coefficient_tuple(&alg, &f, &spec).unwrap();
            let expected = vec![
                f.pow(a.coords[0], 3),
                f.pow(a.coords[1], 3),
                f.pow(a.coords[2], 6),
            ];
            assert_eq!(b, expected);
        }
    }

    #[test]
    fn normalize_tuple_extends_the_field_when_needed() {
        // b = (0, 2) over F_3: 2 is a non-square, so the representative lives
        // over F_9; its Frobenius image recovers the embedded tuple
        let (alg, f) = witt12();
        let b = vec![f.zero(), f.scalar(2)];
        let rep = normalize_tuple(&alg, &f, &b).unwrap();
        assert_eq!(rep.field.order(), 9);
        let f9 = &rep.field;
        // (a_2)^(2p) = b_2 under the embedding F_3 -> F_9
        assert_eq!(f9.pow(rep.coords[1], 6), f9.scalar(2));
        assert!(rep.coords[0].is_zero());
    }

    #[test]
    fn normalize_recovers_point_up_to_sign() {
        let (alg, f) = witt12();
        let f9 = FiniteField::new(3, 2, None).unwrap();
        for enc1 in 0..9 {
            for enc2 in 0..9 {
                if enc1 == 0 && enc2 == 0 {
                    continue;
                }
                let a = PiPointRep {
                    field: f9.clone(),
                    coords: vec![f9.scalar(enc1), f9.scalar(enc2)],
                };
                let spec = standard_spec(&alg, &a).unwrap();
                let back = normalize(&alg, &f9, &spec).unwrap();
                assert_eq!(back.field, f9);
                assert_eq!(back.coords[0], a.coords[0]);
                // the square root forgets the sign of the last coordinate
                assert!(back.coords[1] == a.coords[1] || back.coords[1] == f9.neg(a.coords[1]));
                assert!(equivalent(&alg, &a, &back).unwrap());
            }
        }
        let _ = f;
    }
}
