//! Minimal free resolutions, Betti numbers, syzygies and Carlson modules.
//!
//! A resolution is stored through its differentials as matrices with entries
//! in the algebra; the induced maps on underlying vector spaces (one block of
//! the regular representation per generator) drive the kernel computations.
//! Kernels are computed parity by parity so every chosen generator is
//! homogeneous.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{multiply, AlgebraElement, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Scalar};
use crate::matrix::{Eliminator, Mat};
use crate::module::{vec_to_element, GradedModule, ModuleMap};

/// A matrix with entries in the algebra, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<AlgebraElement>,
}

impl AlgMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        AlgMat { rows, cols, entries: vec![AlgebraElement::zero(); rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> &AlgebraElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, e: AlgebraElement) {
        self.entries[r * self.cols + c] = e;
    }
}

/// A minimal free resolution F_L -> ... -> F_1 -> F_0 -> M of length L.
pub struct Resolution {
    module: GradedModule,
    ranks: Vec<usize>,
    gen_parities: Vec<Vec<u8>>,
    /// d_1 .. d_L, with d_j of shape b_(j-1) x b_j.
    diffs: Vec<AlgMat>,
    /// The free modules F_0 .. F_L.
    frees: Vec<GradedModule>,
    /// Underlying linear maps of d_1 .. d_L.
    underlying: Vec<Mat>,
    /// The cover F_0 -> M on underlying spaces.
    cover: Mat,
    /// Homogeneous kernel bases: kernels[j] spans Omega^(j+1) inside F_j.
    kernels: Vec<(Vec<Vec<Scalar>>, Vec<u8>)>,
}

/// Kernel of a parity-preserving map, computed one parity at a time so each
/// basis vector is homogeneous. Returns the vectors and their parities.
fn graded_kernel(
    mat: &Mat,
    row_parity: &[u8],
    col_parity: &[u8],
    field: &FiniteField,
) -> (Vec<Vec<Scalar>>, Vec<u8>) {
    let mut vectors = Vec::new();
    let mut parities = Vec::new();
    for par in [0u8, 1u8] {
        let cols: Vec<usize> = (0..mat.cols).filter(|&c| col_parity[c] == par).collect();
        let rows: Vec<usize> = (0..mat.rows).filter(|&r| row_parity[r] == par).collect();
        if cols.is_empty() {
            continue;
        }
        let sub = Mat::from_fn(rows.len(), cols.len(), |i, j| mat[(rows[i], cols[j])]);
        let k = sub.kernel_basis(field);
        for j in 0..k.cols {
            let mut v = vec![Scalar::ZERO; mat.cols];
            for (i, &c) in cols.iter().enumerate() {
                v[c] = k[(i, j)];
            }
            vectors.push(v);
            parities.push(par);
        }
    }
    (vectors, parities)
}

/// Minimal homogeneous generators of the submodule spanned by `basis` inside
/// the free module `ambient`: vectors of `basis` not absorbed by the radical.
fn submodule_generators(
    ambient: &GradedModule,
    basis: &[Vec<Scalar>],
    basis_parity: &[u8],
) -> (Vec<Vec<Scalar>>, Vec<u8>) {
    let field = ambient.field();
    let dim = ambient.dim();
    let mut gens = Vec::new();
    let mut parities = Vec::new();
    for par in [0u8, 1u8] {
        let mut elim = Eliminator::new(field, dim);
        // radical part first: generator images of every basis vector
        for v in basis {
            for mat in ambient.generator_mats() {
                elim.insert(mat.mul_vec(v, field));
            }
        }
        for (v, &p) in basis.iter().zip(basis_parity) {
            if p == par && elim.insert(v.clone()) {
                gens.push(v.clone());
                parities.push(par);
            }
        }
    }
    (gens, parities)
}

/// The linear map on underlying spaces induced by an algebra-valued matrix
/// between free modules of the given ranks.
fn underlying_map(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    dm: &AlgMat,
) -> Mat {
    let d = alg.dim();
    let mut u = Mat::zeros(dm.rows * d, dm.cols * d);
    for gc in 0..dm.cols {
        for mu_idx in 0..d {
            let mu = AlgebraElement::from_term(alg.monomial_at(mu_idx), field.one());
            let col = gc * d + mu_idx;
            for gr in 0..dm.rows {
                let entry = dm.get(gr, gc);
                if entry.is_zero() {
                    continue;
                }
                let prod = multiply(alg, field, &mu, entry).expect("entries are in bounds");
                for (mono, &coeff) in &prod.terms {
                    u[(gr * d + alg.monomial_index(mono), col)] = coeff;
                }
            }
        }
    }
    u
}

impl Resolution {
    /// Compute the minimal free resolution of M out to homological degree
    /// `length` (so ranks b_0 .. b_length are available).
    pub fn compute(module: &GradedModule, length: usize) -> Resolution {
        let alg = module.algebra().clone();
        let field = module.field().clone();
        let d = alg.dim();

        let (gens, gen_par) = module.minimal_generators();
        let b0 = gens.len();
        let mut cover = Mat::zeros(module.dim(), b0 * d);
        for (g, v) in gens.iter().enumerate() {
            for (k, col) in module.monomial_orbit(v).into_iter().enumerate() {
                cover.set_col(g * d + k, &col);
            }
        }
        let f0 = GradedModule::free(&alg, &field, &gen_par);

        let mut res = Resolution {
            module: module.clone(),
            ranks: vec![b0],
            gen_parities: vec![gen_par],
            diffs: Vec::new(),
            frees: vec![f0],
            underlying: Vec::new(),
            cover,
            kernels: Vec::new(),
        };

        for j in 1..=length {
            let ambient = &res.frees[j - 1];
            let prev_map = if j == 1 { &res.cover } else { &res.underlying[j - 2] };
            let row_par: Vec<u8> = if j == 1 {
                module.parity().to_vec()
            } else {
                res.frees[j - 2].parity().to_vec()
            };
            let kernel = graded_kernel(prev_map, &row_par, ambient.parity(), &field);
            let (ker_basis, ker_par) = kernel;
            let (gens, gpar) = submodule_generators(ambient, &ker_basis, &ker_par);
            res.kernels.push((ker_basis, ker_par));

            let b_prev = res.ranks[j - 1];
            let b = gens.len();
            let mut dm = AlgMat::zeros(b_prev, b);
            for (c, w) in gens.iter().enumerate() {
                for r in 0..b_prev {
                    let entry = vec_to_element(&alg, &w[r * d..(r + 1) * d]);
                    debug_assert!(entry.in_radical(), "minimality: entries lie in the radical");
                    dm.set(r, c, entry);
                }
            }
            let u = underlying_map(&alg, &field, &dm);
            res.underlying.push(u);
            res.diffs.push(dm);
            res.ranks.push(b);
            res.gen_parities.push(gpar.clone());
            res.frees.push(GradedModule::free(&alg, &field, &gpar));
        }
        res
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Rank of F_i, equivalently dim Ext^i(M, k).
    pub fn betti(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn generator_parities(&self, i: usize) -> &[u8] {
        &self.gen_parities[i]
    }

    /// The differential d_j : F_j -> F_(j-1), j >= 1.
    pub fn differential(&self, j: usize) -> &AlgMat {
        &self.diffs[j - 1]
    }

    pub fn underlying_differential(&self, j: usize) -> &Mat {
        &self.underlying[j - 1]
    }

    pub fn free_module(&self, i: usize) -> &GradedModule {
        &self.frees[i]
    }

    pub fn cover(&self) -> &Mat {
        &self.cover
    }

    /// Realize the syzygy Omega^j(M), j >= 1, as a module with solved actions.
    pub fn syzygy(&self, j: usize) -> SyzygyModule {
        assert!(j >= 1 && j <= self.kernels.len(), "resolution too short for Omega^{j}");
        let (basis, par) = &self.kernels[j - 1];
        let ambient = &self.frees[j - 1];
        realize_submodule(ambient, basis, par)
    }

    /// Exactness, d.d = 0 and minimality, checked exactly. Returns a
    /// description of the first failure.
    pub fn verify(&self) -> core::result::Result<(), alloc::string::String> {
        use alloc::format;
        let field = self.module.field();
        if self.cover.rank(field) != self.module.dim() {
            return Err(alloc::string::String::from("cover is not surjective"));
        }
        for j in 1..=self.length() {
            let u = &self.underlying[j - 1];
            let prev = if j == 1 { &self.cover } else { &self.underlying[j - 2] };
            if !prev.mul(u, field).is_zero() {
                return Err(format!("d_{} . d_{} != 0", j - 1, j));
            }
            // exactness: rank d_j + rank d_(j-1) = dim F_(j-1)
            let r = u.rank(field);
            let r_prev = prev.rank(field);
            if r + r_prev != prev.cols {
                return Err(format!("not exact at F_{}", j - 1));
            }
            let dm = &self.diffs[j - 1];
            for row in 0..dm.rows {
                for col in 0..dm.cols {
                    if !dm.get(row, col).in_radical() {
                        return Err(format!("d_{j} entry ({row},{col}) has a unit component"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A syzygy realized inside a free module: the module itself plus its basis
/// as columns in the ambient underlying space.
pub struct SyzygyModule {
    pub module: GradedModule,
    /// ambient_dim x dim matrix of basis column vectors.
    pub basis: Mat,
}

fn realize_submodule(ambient: &GradedModule, basis: &[Vec<Scalar>], parity: &[u8]) -> SyzygyModule {
    let field = ambient.field();
    let alg = ambient.algebra();
    let s = basis.len();
    let mut b = Mat::zeros(ambient.dim(), s);
    for (j, v) in basis.iter().enumerate() {
        b.set_col(j, v);
    }
    let mut actions = Vec::new();
    for i in 0..alg.num_even_gens() {
        let xb = ambient.s_action(i).mul(&b, field);
        let sol = b.solve_mat(&xb, field).expect("shapes match").expect("submodule is action-closed");
        actions.push(sol);
    }
    let sigma = ambient.algebra().has_sigma().then(|| {
        let xb = ambient.sigma_or_zero().mul(&b, field);
        b.solve_mat(&xb, field).expect("shapes match").expect("submodule is action-closed")
    });
    let module = GradedModule::new(field.clone(), alg.clone(), parity.to_vec(), actions, sigma)
        .expect("realized submodule data is well formed");
    SyzygyModule { module, basis: b }
}

/// Convenience: the minimal free resolution of M to the given length.
pub fn minimal_resolution(module: &GradedModule, length: usize) -> Resolution {
    Resolution::compute(module, length)
}

/// dim Ext^i(M, k), read off the minimal resolution.
pub fn betti(module: &GradedModule, i: usize) -> usize {
    Resolution::compute(module, i).betti(i)
}

/// Omega^j(M) as a graded module, j >= 1.
pub fn syzygy(module: &GradedModule, j: usize) -> GradedModule {
    Resolution::compute(module, j).syzygy(j).module
}

/// A class in H^(2d, 0)(E, k): a functional on the generators of F_(2d) in the
/// minimal resolution of k, supported on even-parity generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClassRep {
    pub degree: usize,
    pub coeffs: Vec<Scalar>,
}

/// The Carlson module L_xi with its defining exact sequence
/// 0 -> L_xi -> Omega^2d(k) -> k -> 0.
pub struct CarlsonData {
    pub l_xi: GradedModule,
    pub omega: GradedModule,
    /// Inclusion L_xi -> Omega^2d(k).
    pub inclusion: ModuleMap,
    /// The cocycle map Omega^2d(k) -> k.
    pub cocycle: ModuleMap,
}

/// Build L_xi from a resolution of the trivial module of length >= 2d.
pub fn carlson_data(res: &Resolution, xi: &CohomologyClassRep) -> Result<CarlsonData> {
    let module = res.module();
    let field = module.field().clone();
    let alg = module.algebra().clone();
    if module.dim() != 1
        || module.parity() != [0]
        || module.generator_mats().iter().any(|m| !m.is_zero())
    {
        return Err(Error::BadParameters);
    }
    if xi.degree == 0 || !xi.degree.is_multiple_of(2) {
        return Err(Error::OddCohomologicalDegree);
    }
    let deg = xi.degree;
    assert!(res.length() >= deg, "resolution too short for the class degree");
    if xi.coeffs.len() != res.betti(deg) {
        return Err(Error::DimensionMismatch);
    }
    if xi.coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroClass);
    }
    let gen_par = res.generator_parities(deg);
    if xi.coeffs.iter().zip(gen_par).any(|(c, &p)| !c.is_zero() && p == 1) {
        return Err(Error::OddInternalDegree);
    }

    let d = alg.dim();
    let syz = res.syzygy(deg);
    let omega = syz.module;
    let basis = syz.basis;
    let u = res.underlying_differential(deg);

    // well-definedness: ker d_2d lies in rad F_2d, so preimage generator
    // coordinates are determined
    let ker = u.kernel_basis(&field);
    for j in 0..ker.cols {
        for g in 0..res.betti(deg) {
            assert!(
                ker[(g * d, j)].is_zero(),
                "kernel of d_{deg} must lie in the radical"
            );
        }
    }

    // xi_hat(w) = xi(generator coordinates of any preimage of w)
    let pre = u.solve_mat(&basis, &field).expect("shapes match").expect("resolution is exact");
    let mut cocycle_row = Mat::zeros(1, omega.dim());
    for j in 0..omega.dim() {
        let mut acc = Scalar::ZERO;
        for (g, &c) in xi.coeffs.iter().enumerate() {
            acc = field.add(acc, field.mul(c, pre[(g * d, j)]));
        }
        cocycle_row[(0, j)] = acc;
    }
    assert!(!cocycle_row.is_zero(), "a nonzero class induces a nonzero cocycle");

    let (lker, lpar) = graded_kernel(&cocycle_row, &[0], omega.parity(), &field);
    let l = realize_submodule(&omega, &lker, &lpar);
    assert_eq!(l.module.dim(), omega.dim() - 1);

    Ok(CarlsonData {
        inclusion: ModuleMap { matrix: l.basis, parity: 0 },
        cocycle: ModuleMap { matrix: cocycle_row, parity: 0 },
        l_xi: l.module,
        omega,
    })
}

/// The Carlson module alone.
pub fn carlson_module(res: &Resolution, xi: &CohomologyClassRep) -> Result<GradedModule> {
    carlson_data(res, xi).map(|d| d.l_xi)
}
