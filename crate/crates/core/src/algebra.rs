//! The three families of elementary group algebras and their normal forms.
//!
//! Every algebra is a commutative monomial-plus-one-relation quotient
//!
//! - Witt(n, m):      k[s_1..s_n, sigma] / (s_1^p .. s_{n-1}^p, s_n^(p^m), sigma^2 - s_n^p)
//! - ExteriorLike(n): k[s_1..s_n, sigma] / (s_1^p .. s_n^p, sigma^2)
//! - ElemAbelian(n):  k[s_1..s_n] / (s_1^p .. s_n^p)
//!
//! with the s_i even and sigma odd. The rewrite system is confluent: reduce
//! sigma^2 first (to s_n^p or 0), then kill any monomial over its bound.
//! The ring is commutative, so multiplication carries no Koszul signs.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};

/// Guard on the monomial basis size.
pub const MAX_ALGEBRA_DIM: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Witt { n: u32, m: u32 },
    ExteriorLike { n: u32 },
    ElemAbelian { n: u32 },
}

/// A presentation of one of the three families at a fixed odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    p: u32,
    family: Family,
    /// Exponent bound per even generator: p except p^m for the last Witt one.
    bounds: Vec<u64>,
    dim: u64,
}

/// A basis monomial s^exps sigma^eps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub eps: u8,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n], eps: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.eps == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Z/2 parity: the sigma exponent.
    pub fn parity(&self) -> u8 {
        self.eps
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl AlgebraPresentation {
    pub fn new(p: u64, family: Family) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::CompositeP { p });
        }
        let p = p as u32;
        let (n, bounds): (u32, Vec<u64>) = match family {
            Family::Witt { n, m } => {
                // m = 1 would make s_n^(p^m) coincide with sigma^2, collapsing
                // the presentation, so it is rejected
                if n < 1 || m < 2 {
                    return Err(Error::BadParameters);
                }
                let mut b = vec![p as u64; n as usize];
                let mut last: u64 = 1;
                for _ in 0..m {
                    last = last.saturating_mul(p as u64);
                }
                b[n as usize - 1] = last;
                (n, b)
            }
            Family::ExteriorLike { n } => (n, vec![p as u64; n as usize]),
            Family::ElemAbelian { n } => {
                if n < 1 {
                    return Err(Error::BadParameters);
                }
                (n, vec![p as u64; n as usize])
            }
        };
        debug_assert_eq!(n as usize, bounds.len());
        let sigma_factor = if matches!(family, Family::ElemAbelian { .. }) { 1 } else { 2 };
        let mut dim: u64 = sigma_factor;
        for &b in &bounds {
            dim = dim.saturating_mul(b);
            if dim > MAX_ALGEBRA_DIM {
                return Err(Error::BadParameters);
            }
        }
        Ok(AlgebraPresentation { p, family, bounds, dim })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of even generators s_1..s_n.
    pub fn num_even_gens(&self) -> usize {
        self.bounds.len()
    }

    pub fn has_sigma(&self) -> bool {
        !matches!(self.family, Family::ElemAbelian { .. })
    }

    /// k-dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Exponent bound for generator i (exclusive).
    pub fn bound(&self, i: usize) -> u64 {
        self.bounds[i]
    }

    /// Index of a monomial in the canonical basis: lexicographic on
    /// (exps, eps), i.e. mixed radix with s_1 most significant and eps least.
    pub fn monomial_index(&self, m: &Monomial) -> usize {
        debug_assert!(self.monomial_in_bounds(m));
        let mut idx: u64 = 0;
        for (i, &e) in m.exps.iter().enumerate() {
            idx = idx * self.bounds[i] + e as u64;
        }
        if self.has_sigma() {
            idx = idx * 2 + m.eps as u64;
        }
        idx as usize
    }

    pub fn monomial_at(&self, index: usize) -> Monomial {
        let mut idx = index as u64;
        let eps = if self.has_sigma() {
            let e = (idx % 2) as u8;
            idx /= 2;
            e
        } else {
            0
        };
        let n = self.bounds.len();
        let mut exps = vec![0u32; n];
        for i in (0..n).rev() {
            exps[i] = (idx % self.bounds[i]) as u32;
            idx /= self.bounds[i];
        }
        Monomial { exps, eps }
    }

    pub fn monomial_in_bounds(&self, m: &Monomial) -> bool {
        m.exps.len() == self.bounds.len()
            && m.exps.iter().zip(&self.bounds).all(|(&e, &b)| (e as u64) < b)
            && m.eps <= 1
            && (self.has_sigma() || m.eps == 0)
    }

    pub fn basis(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.dim as usize).map(move |i| self.monomial_at(i))
    }

    /// Multiply two basis monomials; None when the product is zero. In the
    /// Witt family sigma^2 rewrites to s_n^p, elsewhere sigma^2 = 0.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let n = self.bounds.len();
        let mut exps = vec![0u64; n];
        for i in 0..n {
            exps[i] = a.exps[i] as u64 + b.exps[i] as u64;
        }
        let mut eps = a.eps + b.eps;
        if eps == 2 {
            match self.family {
                Family::Witt { .. } => {
                    exps[n - 1] += self.p as u64;
                    eps = 0;
                }
                Family::ExteriorLike { .. } => return None,
                Family::ElemAbelian { .. } => unreachable!("eps = 0 in ElemAbelian"),
            }
        }
        for i in 0..n {
            if exps[i] >= self.bounds[i] {
                return None;
            }
        }
        Some(Monomial { exps: exps.into_iter().map(|e| e as u32).collect(), eps })
    }

    /// Names of the generators, s1..sn then sigma.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out: Vec<String> = (1..=self.bounds.len())
            .map(|i| alloc::format!("s{i}"))
            .collect();
        if self.has_sigma() {
            out.push(String::from("sigma"));
        }
        out
    }
}

/// An element of the algebra: a finite map from basis monomials to nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { terms }
    }

    pub fn one(alg: &AlgebraPresentation, field: &FiniteField) -> Self {
        Self::from_term(Monomial::one(alg.num_even_gens()), field.one())
    }

    /// The generator s_{i+1} (zero-based index).
    pub fn gen_s(alg: &AlgebraPresentation, field: &FiniteField, i: usize) -> Self {
        let mut m = Monomial::one(alg.num_even_gens());
        m.exps[i] = 1;
        Self::from_term(m, field.one())
    }

    pub fn gen_sigma(alg: &AlgebraPresentation, field: &FiniteField) -> Self {
        assert!(alg.has_sigma());
        let mut m = Monomial::one(alg.num_even_gens());
        m.eps = 1;
        Self::from_term(m, field.one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar, field: &FiniteField) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self, field: &FiniteField) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, field);
        }
        out
    }

    pub fn scale(&self, c: Scalar, field: &FiniteField) -> Self {
        let mut out = AlgebraElement::zero();
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), field.mul(x, c), field);
        }
        out
    }

    pub fn neg(&self, field: &FiniteField) -> Self {
        self.scale(field.neg(field.one()), field)
    }

    /// The coefficient of the identity monomial, i.e. the value at 0.
    pub fn constant_term(&self, alg: &AlgebraPresentation) -> Scalar {
        self.terms
            .get(&Monomial::one(alg.num_even_gens()))
            .copied()
            .unwrap_or(Scalar::ZERO)
    }

    /// Homogeneous of the given parity (zero counts as homogeneous).
    pub fn is_homogeneous(&self, parity: u8) -> bool {
        self.terms.keys().all(|m| m.parity() == parity)
    }

    /// Every monomial has positive degree (lies in the augmentation ideal).
    pub fn in_radical(&self) -> bool {
        self.terms.keys().all(|m| !m.is_one())
    }

    pub fn check_bounds(&self, alg: &AlgebraPresentation) -> Result<()> {
        if self.terms.keys().all(|m| alg.monomial_in_bounds(m)) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

/// The product in kE, reduced to canonical form.
pub fn multiply(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement> {
    x.check_bounds(alg)?;
    y.check_bounds(alg)?;
    let mut out = AlgebraElement::zero();
    for (ma, &ca) in &x.terms {
        for (mb, &cb) in &y.terms {
            if let Some(m) = alg.mul_monomials(ma, mb) {
                out.add_term(m, field.mul(ca, cb), field);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3, 1, None).unwrap()
    }

    #[test]
    fn family_dimensions() {
        let witt = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
        assert_eq!(witt.dim(), 18); // s^a sigma^eps, a < 9
        let witt2 = AlgebraPresentation::new(3, Family::Witt { n: 2, m: 2 }).unwrap();
        assert_eq!(witt2.dim(), 54); // 2 * 3^(1+2)
        let ext = AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap();
        assert_eq!(ext.dim(), 6);
        let ext0 = AlgebraPresentation::new(3, Family::ExteriorLike { n: 0 }).unwrap();
        assert_eq!(ext0.dim(), 2);
        let ea = AlgebraPresentation::new(3, Family::ElemAbelian { n: 2 }).unwrap();
        assert_eq!(ea.dim(), 9);
    }

    #[test]
    fn bad_parameters_rejected() {
        assert_eq!(
            AlgebraPresentation::new(3, Family::Witt { n: 1, m: 1 }).unwrap_err(),
            Error::BadParameters
        );
        assert_eq!(
            AlgebraPresentation::new(3, Family::Witt { n: 0, m: 2 }).unwrap_err(),
            Error::BadParameters
        );
        assert_eq!(
            AlgebraPresentation::new(3, Family::ElemAbelian { n: 0 }).unwrap_err(),
            Error::BadParameters
        );
        assert_eq!(
            AlgebraPresentation::new(4, Family::ElemAbelian { n: 1 }).unwrap_err(),
            Error::CompositeP { p: 4 }
        );
    }

    #[test]
    fn sigma_squared_rewrites() {
        let f = f3();
        let witt = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
        let sigma = AlgebraElement::gen_sigma(&witt, &f);
        let prod = multiply(&witt, &f, &sigma, &sigma).unwrap();
        // sigma * sigma = s^3
        let expected = AlgebraElement::from_term(Monomial { exps: vec![3], eps: 0 }, f.one());
        assert_eq!(prod, expected);

        let ext = AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap();
        let sigma = AlgebraElement::gen_sigma(&ext, &f);
        assert!(multiply(&ext, &f, &sigma, &sigma).unwrap().is_zero());
    }

    #[test]
    fn nilpotency_bound() {
        let f = f3();
        let witt = AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap();
        let s8 = AlgebraElement::from_term(Monomial { exps: vec![8], eps: 0 }, f.one());
        let s = AlgebraElement::gen_s(&witt, &f, 0);
        assert!(multiply(&witt, &f, &s8, &s).unwrap().is_zero()); // s^9 = 0
    }

    #[test]
    fn multiplication_is_associative_and_commutative_on_basis() {
        let f = f3();
        for alg in [
            AlgebraPresentation::new(3, Family::Witt { n: 1, m: 2 }).unwrap(),
            AlgebraPresentation::new(3, Family::ExteriorLike { n: 1 }).unwrap(),
            AlgebraPresentation::new(3, Family::ElemAbelian { n: 2 }).unwrap(),
        ] {
            let basis: Vec<AlgebraElement> = alg
                .basis()
                .map(|m| AlgebraElement::from_term(m, f.one()))
                .collect();
            for a in &basis {
                for b in &basis {
                    let ab = multiply(&alg, &f, a, b).unwrap();
                    let ba = multiply(&alg, &f, b, a).unwrap();
                    assert_eq!(ab, ba);
                    for c in &basis {
                        let left = multiply(&alg, &f, &ab, c).unwrap();
                        let right = multiply(&alg, &f, a, &multiply(&alg, &f, b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_index_round_trip() {
        let alg = AlgebraPresentation::new(3, Family::Witt { n: 2, m: 2 }).unwrap();
        for i in 0..alg.dim() {
            let m = alg.monomial_at(i);
            assert!(alg.monomial_in_bounds(&m));
            assert_eq!(alg.monomial_index(&m), i);
        }
    }
}
