//! Finite-dimensional Z/2-graded modules over an elementary group algebra.
//!
//! A module is its generator action matrices. The s_i act by parity-preserving
//! matrices, sigma by a parity-reversing one, subject to the defining
//! relations of the presentation. Tensor and Hom carry the Koszul sign on the
//! sigma action; the even generators never see a sign.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, AlgebraPresentation, Family, Monomial};
use crate::error::{Error, Result};
use crate::field::{extend_field, FiniteField, Scalar};
use crate::matrix::{rank_extension, Mat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    field: FiniteField,
    alg: AlgebraPresentation,
    dim: usize,
    parity: Vec<u8>,
    s_actions: Vec<Mat>,
    sigma: Option<Mat>,
}

/// One violated module invariant; `validate` reports all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonCommuting { a: String, b: String },
    NilpotencyFailed { gen: String, power: u64 },
    SigmaSquareMismatch,
    ParityNotPreserved { gen: String },
    ParityNotReversed,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::NonCommuting { a, b } => write!(f, "actions of {a} and {b} do not commute"),
            Violation::NilpotencyFailed { gen, power } => {
                write!(f, "{gen}^{power} does not vanish")
            }
            Violation::SigmaSquareMismatch => write!(f, "sigma^2 does not equal its required value"),
            Violation::ParityNotPreserved { gen } => {
                write!(f, "action of {gen} does not preserve the grading")
            }
            Violation::ParityNotReversed => write!(f, "action of sigma does not reverse the grading"),
        }
    }
}

impl GradedModule {
    /// Assemble a module from raw data. Checks shapes, parity values, sigma
    /// presence and the field characteristic; the algebraic relations are the
    /// business of [`GradedModule::validate`].
    pub fn new(
        field: FiniteField,
        alg: AlgebraPresentation,
        parity: Vec<u8>,
        s_actions: Vec<Mat>,
        sigma: Option<Mat>,
    ) -> Result<Self> {
        if field.p() != alg.p() {
            return Err(Error::CharacteristicMismatch);
        }
        let dim = parity.len();
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::BadParameters);
        }
        if s_actions.len() != alg.num_even_gens() {
            return Err(Error::DimensionMismatch);
        }
        if alg.has_sigma() != sigma.is_some() {
            return Err(Error::BadParameters);
        }
        for m in s_actions.iter().chain(sigma.iter()) {
            if m.rows != dim || m.cols != dim {
                return Err(Error::DimensionMismatch);
            }
        }
        Ok(GradedModule { field, alg, dim, parity, s_actions, sigma })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn s_action(&self, i: usize) -> &Mat {
        &self.s_actions[i]
    }

    pub fn sigma(&self) -> Option<&Mat> {
        self.sigma.as_ref()
    }

    pub fn sigma_or_zero(&self) -> Mat {
        self.sigma.clone().unwrap_or_else(|| Mat::zeros(self.dim, self.dim))
    }

    /// All generator action matrices, s_1..s_n then sigma.
    pub fn generator_mats(&self) -> Vec<&Mat> {
        self.s_actions.iter().chain(self.sigma.iter()).collect()
    }

    /// The trivial module k, concentrated in even parity.
    pub fn trivial(alg: &AlgebraPresentation, field: &FiniteField) -> Self {
        let n = alg.num_even_gens();
        let sigma = alg.has_sigma().then(|| Mat::zeros(1, 1));
        GradedModule::new(field.clone(), alg.clone(), vec![0], vec![Mat::zeros(1, 1); n], sigma)
            .expect("trivial module data is well formed")
    }

    /// Free module on homogeneous generators with the given parities. The
    /// underlying basis is (generator, algebra monomial), monomial fastest.
    pub fn free(alg: &AlgebraPresentation, field: &FiniteField, gen_parities: &[u8]) -> Self {
        let d = alg.dim();
        let b = gen_parities.len();
        let (reg_s, reg_sigma) = regular_action_mats(alg, field);
        let blockify = |reg: &Mat| -> Mat {
            let mut out = Mat::zeros(b * d, b * d);
            for g in 0..b {
                for i in 0..d {
                    for j in 0..d {
                        out[(g * d + i, g * d + j)] = reg[(i, j)];
                    }
                }
            }
            out
        };
        let s_actions: Vec<Mat> = reg_s.iter().map(blockify).collect();
        let sigma = reg_sigma.as_ref().map(blockify);
        let mut parity = Vec::with_capacity(b * d);
        for &gp in gen_parities {
            for idx in 0..d {
                parity.push(gp ^ alg.monomial_at(idx).parity());
            }
        }
        GradedModule::new(field.clone(), alg.clone(), parity, s_actions, sigma)
            .expect("free module data is well formed")
    }

    /// The regular module kE: free of rank one on an even generator.
    pub fn regular(alg: &AlgebraPresentation, field: &FiniteField) -> Self {
        Self::free(alg, field, &[0])
    }

    /// kE modulo the left ideal generated by homogeneous elements.
    pub fn cyclic_quotient(
        alg: &AlgebraPresentation,
        field: &FiniteField,
        gens: &[AlgebraElement],
    ) -> Result<Self> {
        for g in gens {
            g.check_bounds(alg)?;
            if !g.is_homogeneous(0) && !g.is_homogeneous(1) {
                return Err(Error::BadParameters);
            }
        }
        let d = alg.dim();
        // the ideal is spanned over k by all monomial multiples of the generators
        let mut spanning: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            for mono in alg.basis() {
                let prod = crate::algebra::multiply(alg, field, &AlgebraElement::from_term(mono, field.one()), g)?;
                if !prod.is_zero() {
                    spanning.push(element_to_vec(alg, &prod));
                }
            }
        }
        let mut rows = Mat::from_rows(spanning);
        if rows.rows == 0 {
            rows = Mat::zeros(0, d);
        }
        let pivots = rows.rref(field);
        let quotient_basis: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
        let reduce = |mut v: Vec<Scalar>| -> Vec<Scalar> {
            for (r, &pc) in pivots.iter().enumerate() {
                let c = v[pc];
                if c.is_zero() {
                    continue;
                }
                for j in 0..d {
                    v[j] = field.sub(v[j], field.mul(c, rows[(r, j)]));
                }
            }
            quotient_basis.iter().map(|&i| v[i]).collect()
        };
        let qdim = quotient_basis.len();
        let build_action = |mult: &dyn Fn(&Monomial) -> Option<Monomial>| -> Mat {
            let mut m = Mat::zeros(qdim, qdim);
            for (col, &qi) in quotient_basis.iter().enumerate() {
                let mono = alg.monomial_at(qi);
                if let Some(prod) = mult(&mono) {
                    let mut v = vec![Scalar::ZERO; d];
                    v[alg.monomial_index(&prod)] = field.one();
                    m.set_col(col, &reduce(v));
                }
            }
            m
        };
        let n = alg.num_even_gens();
        let mut s_actions = Vec::with_capacity(n);
        for i in 0..n {
            let mut gen_mono = Monomial::one(n);
            gen_mono.exps[i] = 1;
            s_actions.push(build_action(&|m| alg.mul_monomials(&gen_mono, m)));
        }
        let sigma = alg.has_sigma().then(|| {
            let mut gen_mono = Monomial::one(n);
            gen_mono.eps = 1;
            build_action(&|m| alg.mul_monomials(&gen_mono, m))
        });
        let parity = quotient_basis.iter().map(|&i| alg.monomial_at(i).parity()).collect();
        GradedModule::new(field.clone(), alg.clone(), parity, s_actions, sigma)
    }

    /// Check every module invariant by explicit matrix arithmetic; returns the
    /// full list of violations, empty when the module is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let f = &self.field;
        let names = self.alg.generator_names();
        let mats = self.generator_mats();
        let mut out = Vec::new();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let ab = mats[i].mul(mats[j], f);
                let ba = mats[j].mul(mats[i], f);
                if ab != ba {
                    out.push(Violation::NonCommuting { a: names[i].clone(), b: names[j].clone() });
                }
            }
        }
        for (i, s) in self.s_actions.iter().enumerate() {
            let power = self.alg.bound(i);
            if !s.pow(power, f).is_zero() {
                out.push(Violation::NilpotencyFailed { gen: names[i].clone(), power });
            }
        }
        if let Some(sigma) = &self.sigma {
            let sq = sigma.mul(sigma, f);
            let expected = match self.alg.family() {
                Family::Witt { n, .. } => {
                    self.s_actions[n as usize - 1].pow(self.alg.p() as u64, f)
                }
                Family::ExteriorLike { .. } => Mat::zeros(self.dim, self.dim),
                Family::ElemAbelian { .. } => unreachable!(),
            };
            if sq != expected {
                out.push(Violation::SigmaSquareMismatch);
            }
        }
        for (i, s) in self.s_actions.iter().enumerate() {
            if !self.parity_pattern_ok(s, 0) {
                out.push(Violation::ParityNotPreserved { gen: names[i].clone() });
            }
        }
        if let Some(sigma) = &self.sigma {
            if !self.parity_pattern_ok(sigma, 1) {
                out.push(Violation::ParityNotReversed);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn parity_pattern_ok(&self, m: &Mat, shift: u8) -> bool {
        for r in 0..self.dim {
            for c in 0..self.dim {
                if !m[(r, c)].is_zero() && self.parity[r] != self.parity[c] ^ shift {
                    return false;
                }
            }
        }
        true
    }

    /// The parity change functor: flips the grading and negates sigma.
    pub fn parity_shift(&self) -> Self {
        GradedModule {
            field: self.field.clone(),
            alg: self.alg.clone(),
            dim: self.dim,
            parity: self.parity.iter().map(|&p| p ^ 1).collect(),
            s_actions: self.s_actions.clone(),
            sigma: self.sigma.as_ref().map(|s| s.neg(&self.field)),
        }
    }

    /// Tensor product over k with the primitive comultiplication; sigma acts
    /// with the Koszul sign on the first factor's parity.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = &self.field;
        let (dm, dn) = (self.dim, other.dim);
        let im = Mat::identity(dm);
        let in_ = Mat::identity(dn);
        let s_actions: Vec<Mat> = (0..self.alg.num_even_gens())
            .map(|i| {
                self.s_actions[i]
                    .kronecker(&in_, f)
                    .add(&im.kronecker(&other.s_actions[i], f), f)
            })
            .collect();
        let sigma = match (&self.sigma, &other.sigma) {
            (Some(sm), Some(sn)) => {
                let mut sign = Mat::zeros(dm, dm);
                for i in 0..dm {
                    sign[(i, i)] = if self.parity[i] == 0 { f.one() } else { f.neg(f.one()) };
                }
                Some(sm.kronecker(&in_, f).add(&sign.kronecker(sn, f), f))
            }
            (None, None) => None,
            _ => unreachable!("same algebra"),
        };
        let mut parity = Vec::with_capacity(dm * dn);
        for &pm in &self.parity {
            for &pn in &other.parity {
                parity.push(pm ^ pn);
            }
        }
        GradedModule::new(f.clone(), self.alg.clone(), parity, s_actions, sigma)
    }

    /// Internal Hom_k(self, other). Basis E_(i,j): e_j -> e_i, indexed
    /// i * dim(self) + j. Even generators act by s.f = s_N f - f s_M; sigma by
    /// (sigma.f)(m) = sigma f(m) - (-1)^|f| f(sigma m).
    pub fn internal_hom(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = &self.field;
        let (dm, dn) = (self.dim, other.dim);
        let im = Mat::identity(dm);
        let in_ = Mat::identity(dn);
        let mut parity = Vec::with_capacity(dn * dm);
        for &pn in &other.parity {
            for &pm in &self.parity {
                parity.push(pn ^ pm);
            }
        }
        let s_actions: Vec<Mat> = (0..self.alg.num_even_gens())
            .map(|i| {
                other.s_actions[i]
                    .kronecker(&im, f)
                    .sub(&in_.kronecker(&self.s_actions[i].transpose(), f), f)
            })
            .collect();
        let sigma = match (&self.sigma, &other.sigma) {
            (Some(sm), Some(sn)) => {
                let left = sn.kronecker(&im, f);
                let mut right = in_.kronecker(&sm.transpose(), f);
                // Koszul sign: column c carries (-1)^(parity of the basis map)
                for r in 0..dn * dm {
                    for c in 0..dn * dm {
                        if parity[c] == 1 && !right[(r, c)].is_zero() {
                            right[(r, c)] = f.neg(right[(r, c)]);
                        }
                    }
                }
                Some(left.sub(&right, f))
            }
            (None, None) => None,
            _ => unreachable!("same algebra"),
        };
        GradedModule::new(f.clone(), self.alg.clone(), parity, s_actions, sigma)
    }

    /// Extend scalars to the degree-d extension of the module's field.
    pub fn base_change(&self, d: u32) -> Result<Self> {
        if d == 1 {
            return Ok(self.clone());
        }
        let (target, emb) = extend_field(&self.field, d)?;
        let map_mat = |m: &Mat| Mat::from_fn(m.rows, m.cols, |i, j| emb.map(m[(i, j)]));
        GradedModule::new(
            target,
            self.alg.clone(),
            self.parity.clone(),
            self.s_actions.iter().map(&map_mat).collect(),
            self.sigma.as_ref().map(&map_mat),
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = &self.field;
        let (dm, dn) = (self.dim, other.dim);
        let block = |a: &Mat, b: &Mat| {
            Mat::from_fn(dm + dn, dm + dn, |i, j| match (i < dm, j < dm) {
                (true, true) => a[(i, j)],
                (false, false) => b[(i - dm, j - dm)],
                _ => Scalar::ZERO,
            })
        };
        let s_actions = (0..self.alg.num_even_gens())
            .map(|i| block(&self.s_actions[i], &other.s_actions[i]))
            .collect();
        let sigma = match (&self.sigma, &other.sigma) {
            (Some(a), Some(b)) => Some(block(a, b)),
            (None, None) => None,
            _ => unreachable!(),
        };
        let mut parity = self.parity.clone();
        parity.extend_from_slice(&other.parity);
        GradedModule::new(f.clone(), self.alg.clone(), parity, s_actions, sigma)
    }

    /// Columns spanning rad M = m.M (the generators span m modulo m^2).
    pub fn radical_span(&self) -> Mat {
        let mut acc = Mat::zeros(self.dim, 0);
        for m in self.generator_mats() {
            acc = acc.hstack(m);
        }
        acc.image_basis(&self.field)
    }

    /// Homogeneous vectors lifting a basis of M / rad M, with their parities.
    pub fn minimal_generators(&self) -> (Vec<Vec<Scalar>>, Vec<u8>) {
        let rad = self.radical_span();
        let mut gens = Vec::new();
        let mut parities = Vec::new();
        for par in [0u8, 1u8] {
            // restrict to the coordinates of this parity; homogeneous columns
            // of the radical live entirely inside them
            let coords: Vec<usize> = (0..self.dim).filter(|&i| self.parity[i] == par).collect();
            if coords.is_empty() {
                continue;
            }
            let rad_part = Mat::from_fn(coords.len(), rad.cols, |i, j| rad[(coords[i], j)]);
            let cands = Mat::identity(coords.len());
            for j in rank_extension(&rad_part, &cands, &self.field) {
                let mut v = vec![Scalar::ZERO; self.dim];
                v[coords[j]] = Scalar::ONE;
                gens.push(v);
                parities.push(par);
            }
        }
        (gens, parities)
    }

    /// Apply every basis monomial of the algebra to the vector v; entry i is
    /// monomial_at(i) . v.
    pub fn monomial_orbit(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let d = self.alg.dim();
        let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        for idx in 0..d {
            let mono = self.alg.monomial_at(idx);
            let vec = if mono.is_one() {
                v.to_vec()
            } else if mono.eps == 1 {
                let mut prev = mono.clone();
                prev.eps = 0;
                let base = &out[self.alg.monomial_index(&prev)];
                self.sigma_or_zero().mul_vec(base, &self.field)
            } else {
                let i = (0..mono.exps.len()).rev().find(|&i| mono.exps[i] > 0).unwrap();
                let mut prev = mono.clone();
                prev.exps[i] -= 1;
                let base = &out[self.alg.monomial_index(&prev)];
                self.s_actions[i].mul_vec(base, &self.field)
            };
            out.push(vec);
        }
        out
    }

    /// The projectivity oracle: over a local artinian algebra projective means
    /// free, and freeness is a dimension count plus surjectivity of the
    /// canonical cover from minimal generator lifts.
    pub fn is_free(&self) -> bool {
        let (gens, _) = self.minimal_generators();
        let mu = gens.len();
        if self.dim != mu * self.alg.dim() {
            return false;
        }
        let mut cover = Mat::zeros(self.dim, mu * self.alg.dim());
        for (g, v) in gens.iter().enumerate() {
            for (k, col) in self.monomial_orbit(v).into_iter().enumerate() {
                cover.set_col(g * self.alg.dim() + k, &col);
            }
        }
        cover.rank(&self.field) == self.dim
    }

    /// The matrix by which an algebra element acts on this module.
    pub fn element_action(&self, x: &AlgebraElement) -> Result<Mat> {
        x.check_bounds(&self.alg)?;
        let mut out = Mat::zeros(self.dim, self.dim);
        for (mono, &coeff) in &x.terms {
            let mut acc = Mat::identity(self.dim);
            for (i, &e) in mono.exps.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&self.s_actions[i].pow(e as u64, &self.field), &self.field);
                }
            }
            if mono.eps == 1 {
                acc = acc.mul(self.sigma.as_ref().expect("eps forces sigma"), &self.field);
            }
            out = out.add(&acc.scale(coeff, &self.field), &self.field);
        }
        Ok(out)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

/// Left multiplication matrices of the generators on the monomial basis.
fn regular_action_mats(alg: &AlgebraPresentation, field: &FiniteField) -> (Vec<Mat>, Option<Mat>) {
    let d = alg.dim();
    let n = alg.num_even_gens();
    let build = |gen_mono: Monomial| -> Mat {
        let mut m = Mat::zeros(d, d);
        for col in 0..d {
            let mono = alg.monomial_at(col);
            if let Some(prod) = alg.mul_monomials(&gen_mono, &mono) {
                m[(alg.monomial_index(&prod), col)] = field.one();
            }
        }
        m
    };
    let s = (0..n)
        .map(|i| {
            let mut g = Monomial::one(n);
            g.exps[i] = 1;
            build(g)
        })
        .collect();
    let sigma = alg.has_sigma().then(|| {
        let mut g = Monomial::one(n);
        g.eps = 1;
        build(g)
    });
    (s, sigma)
}

/// Coefficient vector of an algebra element over the monomial basis.
pub fn element_to_vec(alg: &AlgebraPresentation, x: &AlgebraElement) -> Vec<Scalar> {
    let mut v = vec![Scalar::ZERO; alg.dim()];
    for (m, &c) in &x.terms {
        v[alg.monomial_index(m)] = c;
    }
    v
}

/// Reconstruct an algebra element from a coefficient vector.
pub fn vec_to_element(alg: &AlgebraPresentation, v: &[Scalar]) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (i, &c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.terms.insert(alg.monomial_at(i), c);
        }
    }
    out
}

/// A homogeneous linear map between modules over the same algebra.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub matrix: Mat,
    pub parity: u8,
}

impl ModuleMap {
    /// True when the map intertwines every generator action (with the Koszul
    /// sign on sigma for odd maps) and respects the gradings up to its parity.
    pub fn check(&self, source: &GradedModule, target: &GradedModule) -> bool {
        if source.algebra() != target.algebra() || source.field() != target.field() {
            return false;
        }
        let f = source.field();
        if self.matrix.rows != target.dim() || self.matrix.cols != source.dim() {
            return false;
        }
        for i in 0..source.algebra().num_even_gens() {
            if self.matrix.mul(source.s_action(i), f) != target.s_action(i).mul(&self.matrix, f) {
                return false;
            }
        }
        if source.algebra().has_sigma() {
            let lhs = self.matrix.mul(&source.sigma_or_zero(), f);
            let mut rhs = target.sigma_or_zero().mul(&self.matrix, f);
            if self.parity == 1 {
                rhs = rhs.neg(f);
            }
            if lhs != rhs {
                return false;
            }
        }
        for r in 0..self.matrix.rows {
            for c in 0..self.matrix.cols {
                if !self.matrix[(r, c)].is_zero()
                    && target.parity()[r] != source.parity()[c] ^ self.parity
                {
                    return false;
                }
            }
        }
        true
    }
}
