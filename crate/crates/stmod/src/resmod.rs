//! Resolution modules: `kG`-modules built from a complex of `kH`-modules by
//! letting the cyclic generator `Z` act through shifts and boundary maps,
//! truncated at complex degree `2n - 1`.
//!
//! Shape `M` over a complex `C_*` restricts to `kH` as
//! `C_0 ⊕ C_1^{p-1} ⊕ C_2 ⊕ ... ⊕ C_{2n-1}^{p-1}`; shape `N` over an
//! augmented resolution `(P_*, ε)` of `k` restricts as
//! `k ⊕ P_0^{p-1} ⊕ P_1 ⊕ ... ⊕ P_{2n-1}`, with the augmentation and
//! boundary maps negated in the `Z`-action.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::algebra::SplitAlgebra;
use crate::complex::{minimal_resolution, AugmentedResolution, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::ff::FpMatrix;
use crate::module::{KGModule, ModuleHom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    M,
    N,
}

/// One `kH`-summand of a resolution module: its complex degree (`-1` for
/// the trivial cap of shape `N`), copy index within the multiplicity, and
/// coordinate range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub degree: i64,
    pub copy: usize,
    pub offset: usize,
    pub dim: usize,
}

/// A `kG`-module together with its block decomposition over `kH`.
#[derive(Debug, Clone)]
pub struct ResolutionModule {
    split: SplitAlgebra,
    module: Arc<KGModule>,
    shape: Shape,
    n: usize,
    blocks: Vec<Block>,
}

/// Multiplicity of complex degree `i` in shape `M` (odd degrees come with
/// `p - 1` copies) and of degree `j` in shape `N` (even degrees do).
fn multiplicity(shape: Shape, degree: usize, p: u32) -> usize {
    let odd = degree % 2 == 1;
    match shape {
        Shape::M => {
            if odd {
                p as usize - 1
            } else {
                1
            }
        }
        Shape::N => {
            if odd {
                1
            } else {
                p as usize - 1
            }
        }
    }
}

struct Layout {
    blocks: Vec<Block>,
    total: usize,
}

fn layout(shape: Shape, n: usize, p: u32, dim_of: impl Fn(usize) -> usize, cap: bool) -> Layout {
    let mut blocks = Vec::new();
    let mut offset = 0;
    if cap {
        blocks.push(Block {
            degree: -1,
            copy: 0,
            offset,
            dim: 1,
        });
        offset += 1;
    }
    for degree in 0..=(2 * n - 1) {
        let dim = dim_of(degree);
        for copy in 0..multiplicity(shape, degree, p) {
            blocks.push(Block {
                degree: degree as i64,
                copy,
                offset,
                dim,
            });
            offset += dim;
        }
    }
    Layout {
        blocks,
        total: offset,
    }
}

fn find_block(blocks: &[Block], degree: i64, copy: usize) -> &Block {
    blocks
        .iter()
        .find(|b| b.degree == degree && b.copy == copy)
        .expect("block lookup")
}

impl ResolutionModule {
    /// Shape `M` over a complex of `kH`-modules, truncated at `2n - 1`.
    ///
    /// `Z` shifts the odd-degree copies and falls through the boundary map
    /// on the last copy; on positive even degrees it is the boundary into
    /// the first odd copy below, and it annihilates degree zero.
    pub fn build_m(split: &SplitAlgebra, complex: &Arc<ChainComplex>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("truncation must be positive".into()));
        }
        if complex.algebra() != split.h() {
            return Err(Error::AlgebraMismatch);
        }
        if complex.top_degree() < 2 * n - 1 {
            return Err(Error::ComplexTooShort {
                needed: 2 * n - 1,
                have: complex.top_degree(),
            });
        }
        let p = split.p();
        let lay = layout(Shape::M, n, p, |d| complex.module(d).dim(), false);
        let mut z = FpMatrix::zero(p, lay.total, lay.total);
        for b in &lay.blocks {
            let degree = b.degree as usize;
            let mult = multiplicity(Shape::M, degree, p);
            if degree % 2 == 1 {
                if b.copy + 1 < mult {
                    let to = find_block(&lay.blocks, b.degree, b.copy + 1);
                    z.set_block(to.offset, b.offset, &FpMatrix::identity(p, b.dim));
                } else {
                    let to = find_block(&lay.blocks, b.degree - 1, 0);
                    z.set_block(to.offset, b.offset, complex.boundary(degree).matrix());
                }
            } else if degree > 0 {
                let to = find_block(&lay.blocks, b.degree - 1, 0);
                z.set_block(to.offset, b.offset, complex.boundary(degree).matrix());
            }
        }
        let module = assemble_module(split, &lay, &z, |d| complex.module(d as usize))?;
        let rm = Self {
            split: split.clone(),
            module,
            shape: Shape::M,
            n,
            blocks: lay.blocks,
        };
        rm.audit(|d| Some(complex.module(d as usize)))?;
        Ok(rm)
    }

    /// Shape `N` over a minimal augmented resolution of the trivial module,
    /// with the augmentation and boundaries negated in the `Z`-action.
    pub fn build_n(split: &SplitAlgebra, res: &AugmentedResolution, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("truncation must be positive".into()));
        }
        if res.algebra() != split.h() {
            return Err(Error::AlgebraMismatch);
        }
        if res.target().dim() != 1 {
            return Err(Error::InvalidInput(
                "shape N needs a resolution of the trivial module".into(),
            ));
        }
        if res.top_degree() < 2 * n - 1 {
            return Err(Error::ComplexTooShort {
                needed: 2 * n - 1,
                have: res.top_degree(),
            });
        }
        let p = split.p();
        let lay = layout(Shape::N, n, p, |d| res.module(d).dim(), true);
        let mut z = FpMatrix::zero(p, lay.total, lay.total);
        for b in &lay.blocks {
            if b.degree < 0 {
                continue; // Z annihilates the cap
            }
            let degree = b.degree as usize;
            let mult = multiplicity(Shape::N, degree, p);
            if degree.is_multiple_of(2) {
                if b.copy + 1 < mult {
                    let to = find_block(&lay.blocks, b.degree, b.copy + 1);
                    z.set_block(to.offset, b.offset, &FpMatrix::identity(p, b.dim));
                } else if degree == 0 {
                    let to = find_block(&lay.blocks, -1, 0);
                    z.set_block(to.offset, b.offset, &res.augmentation().matrix().neg());
                } else {
                    let to = find_block(&lay.blocks, b.degree - 1, 0);
                    z.set_block(to.offset, b.offset, &res.boundary(degree).matrix().neg());
                }
            } else {
                let to = find_block(&lay.blocks, b.degree - 1, 0);
                z.set_block(to.offset, b.offset, &res.boundary(degree).matrix().neg());
            }
        }
        let module = assemble_module(split, &lay, &z, |d| {
            if d < 0 {
                res.target()
            } else {
                res.module(d as usize)
            }
        })?;
        let rm = Self {
            split: split.clone(),
            module,
            shape: Shape::N,
            n,
            blocks: lay.blocks,
        };
        rm.audit(|d| {
            Some(if d < 0 {
                res.target()
            } else {
                res.module(d as usize)
            })
        })?;
        Ok(rm)
    }

    pub fn split(&self) -> &SplitAlgebra {
        &self.split
    }

    pub fn module(&self) -> &Arc<KGModule> {
        &self.module
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, degree: i64, copy: usize) -> &Block {
        find_block(&self.blocks, degree, copy)
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// The underlying `kH`-module (generator order follows the split).
    pub fn h_restriction(&self) -> Result<Arc<KGModule>> {
        self.module.restrict_to_sub(self.split.h_gens())
    }

    /// Verifies the block shape of the restriction: every `kH` generator
    /// acts block-diagonally, each diagonal block agreeing with the complex
    /// term, and the full module invariants hold.
    fn audit<'a>(&'a self, term: impl Fn(i64) -> Option<&'a Arc<KGModule>>) -> Result<()> {
        self.module.validate()?;
        for (t, &g) in self.split.h_gens().iter().enumerate() {
            let action = self.module.action(g);
            for b in &self.blocks {
                let Some(source) = term(b.degree) else {
                    continue;
                };
                for other in &self.blocks {
                    let sub = action.submatrix(other.offset, b.offset, other.dim, b.dim);
                    if other.degree == b.degree && other.copy == b.copy {
                        if sub != *source.action(t) {
                            return Err(Error::InvalidModule(format!(
                                "diagonal block at degree {} copy {} deviates from the complex",
                                b.degree, b.copy
                            )));
                        }
                    } else if !sub.is_zero() {
                        return Err(Error::InvalidModule(format!(
                            "kH generator {} has an off-diagonal block at degree {} copy {}",
                            t, b.degree, b.copy
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Degreewise identity inclusion into a higher truncation of the same
    /// shape; validated as a module hom.
    pub fn inclusion(&self, bigger: &ResolutionModule) -> Result<ModuleHom> {
        if self.shape != bigger.shape || self.n > bigger.n {
            return Err(Error::InvalidInput(
                "inclusion needs the same shape and a larger truncation".into(),
            ));
        }
        let p = self.split.p();
        let mut m = FpMatrix::zero(p, bigger.dim(), self.dim());
        for b in &self.blocks {
            let target = bigger.block(b.degree, b.copy);
            if target.dim != b.dim {
                return Err(Error::InvalidInput(
                    "truncations come from different complexes".into(),
                ));
            }
            m.set_block(target.offset, b.offset, &FpMatrix::identity(p, b.dim));
        }
        ModuleHom::new(Arc::clone(&self.module), Arc::clone(&bigger.module), m)
    }
}

fn assemble_module<'a>(
    split: &SplitAlgebra,
    lay: &Layout,
    z: &FpMatrix,
    term: impl Fn(i64) -> &'a Arc<KGModule>,
) -> Result<Arc<KGModule>> {
    let g = split.g();
    let p = split.p();
    let mut actions: Vec<FpMatrix> = Vec::with_capacity(g.rank());
    for gen in 0..g.rank() {
        if gen == split.z_gen() {
            actions.push(z.clone());
        } else {
            let t = split
                .h_gens()
                .iter()
                .position(|&i| i == gen)
                .expect("generator belongs to H");
            let mut m = FpMatrix::zero(p, lay.total, lay.total);
            for b in &lay.blocks {
                m.set_block(b.offset, b.offset, term(b.degree).action(t));
            }
            actions.push(m);
        }
    }
    Ok(KGModule::from_parts_arc(Arc::clone(g), actions))
}

/// The hom `M(σ, n): M(C, n) -> M(D, n)` induced blockwise by a chain map,
/// together with the two modules. Validated as a `kG`-hom.
pub fn map_m(
    split: &SplitAlgebra,
    sigma: &ChainMap,
    n: usize,
) -> Result<(ResolutionModule, ResolutionModule, ModuleHom)> {
    let source = ResolutionModule::build_m(split, sigma.source(), n)?;
    let target = ResolutionModule::build_m(split, sigma.target(), n)?;
    let p = split.p();
    let mut m = FpMatrix::zero(p, target.dim(), source.dim());
    for b in source.blocks() {
        let to = target.block(b.degree, b.copy);
        m.set_block(
            to.offset,
            b.offset,
            sigma.component(b.degree as usize).matrix(),
        );
    }
    let hom = ModuleHom::new(Arc::clone(source.module()), Arc::clone(target.module()), m)?;
    Ok((source, target, hom))
}

/// `Γ` at truncation `n`: shape `M` over a minimal resolution of `L`.
pub fn gamma(split: &SplitAlgebra, l: &Arc<KGModule>, n: usize) -> Result<ResolutionModule> {
    if l.algebra() != split.h() {
        return Err(Error::AlgebraMismatch);
    }
    let res = minimal_resolution(l, 2 * n)?;
    ResolutionModule::build_m(split, res.complex(), n)
}

/// The canonical permutation taking `M(C ⊕ D, n)` to `M(C, n) ⊕ M(D, n)`:
/// blockwise the identity on each complex summand. Returned as a validated
/// bijective module hom, so conjugating by it matches the actions exactly.
pub fn sum_decomposition(
    sum: &ResolutionModule,
    left: &ResolutionModule,
    right: &ResolutionModule,
) -> Result<ModuleHom> {
    if sum.shape() != left.shape() || sum.shape() != right.shape() || left.n != right.n {
        return Err(Error::InvalidInput(
            "mismatched shapes or truncations".into(),
        ));
    }
    let p = sum.split.p();
    let left_dim = left.dim();
    let mut m = FpMatrix::zero(p, left_dim + right.dim(), sum.dim());
    for b in sum.blocks() {
        let lb = left.block(b.degree, b.copy);
        let rb = right.block(b.degree, b.copy);
        if lb.dim + rb.dim != b.dim {
            return Err(Error::InvalidInput(
                "summand blocks do not fill the sum block".into(),
            ));
        }
        m.set_block(lb.offset, b.offset, &FpMatrix::identity(p, lb.dim));
        m.set_block(
            left_dim + rb.offset,
            b.offset + lb.dim,
            &FpMatrix::identity(p, rb.dim),
        );
    }
    let target = left.module().direct_sum(right.module())?;
    let hom = ModuleHom::new(Arc::clone(sum.module()), target, m)?;
    if !hom.is_bijective() {
        return Err(Error::InvalidInput("decomposition is not bijective".into()));
    }
    Ok(hom)
}

impl Serialize for ResolutionModule {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ResolutionModule", 6)?;
        s.serialize_field("algebra", &**self.module.algebra())?;
        s.serialize_field("dim", &self.module.dim())?;
        s.serialize_field("actions", self.module.actions())?;
        s.serialize_field("shape", &self.shape)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("degrees", &self.blocks)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{is_stably_isomorphic, StableIso, DEFAULT_ISO_BUDGET};

    fn split_c2() -> SplitAlgebra {
        SplitAlgebra::from_h_exponents(2, &[2]).unwrap()
    }

    fn res_k(split: &SplitAlgebra, length: usize) -> AugmentedResolution {
        let k = KGModule::trivial(split.h());
        minimal_resolution(&k, length).unwrap()
    }

    #[test]
    fn m_shape_over_cyclic_two() {
        let split = split_c2();
        let res = res_k(&split, 3);
        let m = ResolutionModule::build_m(&split, res.complex(), 1).unwrap();
        assert_eq!(m.dim(), 4);
        // Z acts as the boundary on the P_1 block and kills P_0
        let z = m.module().action(split.z_gen());
        let b0 = m.block(0, 0);
        let b1 = m.block(1, 0);
        assert!(z.submatrix(b0.offset, b0.offset, b0.dim, b0.dim).is_zero());
        assert_eq!(
            z.submatrix(b0.offset, b1.offset, b0.dim, b1.dim),
            *res.boundary(1).matrix()
        );
        assert!(z.submatrix(b1.offset, b1.offset, b1.dim, b1.dim).is_zero());
    }

    #[test]
    fn m_shape_dimensions_at_odd_p() {
        let split = SplitAlgebra::from_h_exponents(3, &[3]).unwrap();
        let res = res_k(&split, 3);
        let m = ResolutionModule::build_m(&split, res.complex(), 1).unwrap();
        // C_0 ⊕ C_1^2
        assert_eq!(m.dim(), 3 + 3 * 2);
        assert_eq!(m.blocks().len(), 3);
    }

    #[test]
    fn m_shape_degenerate_zero_boundaries() {
        let split = split_c2();
        let k = KGModule::trivial(split.h());
        let modules: Vec<_> = (0..=1).map(|_| Arc::clone(&k)).collect();
        let boundaries = vec![ModuleHom::zero(&k, &k)];
        let c = ChainComplex::new(Arc::clone(split.h()), modules, boundaries).unwrap();
        let m = ResolutionModule::build_m(&split, &c, 1).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.module().action(split.z_gen()).is_zero());
    }

    #[test]
    fn m_shape_rejects_short_complex() {
        let split = split_c2();
        let res = res_k(&split, 2);
        match ResolutionModule::build_m(&split, res.complex(), 2) {
            Err(Error::ComplexTooShort { needed: 3, have: 2 }) => {}
            _ => panic!("expected a too-short error"),
        }
    }

    #[test]
    fn n_shape_over_cyclic_two() {
        let split = split_c2();
        let res = res_k(&split, 3);
        let nm = ResolutionModule::build_n(&split, &res, 1).unwrap();
        assert_eq!(nm.dim(), 5);
        // relation: Y u_0 = Z u_1 in characteristic 2
        let y = nm.module().action(split.h_gens()[0]);
        let z = nm.module().action(split.z_gen());
        let u0 = nm.block(0, 0).offset; // generator of the P_0 block
        let u1 = nm.block(1, 0).offset; // generator of the P_1 block
        assert_eq!(y.column(u0), z.column(u1));
        assert!(!y.column(u0).iter().all(|&v| v == 0));
    }

    #[test]
    fn n_shape_dimensions_at_odd_p() {
        let split = SplitAlgebra::from_h_exponents(3, &[3]).unwrap();
        let res = res_k(&split, 3);
        let nm = ResolutionModule::build_n(&split, &res, 1).unwrap();
        // k ⊕ P_0^2 ⊕ P_1
        assert_eq!(nm.dim(), 1 + 6 + 3);
    }

    #[test]
    fn n_shape_generator_relations_with_signs() {
        // over F_3 the signs are visible: Y u_0 = -Z u_1 and
        // Y^2 u_1 = -Z^2 u_2 on the block generators
        let split = SplitAlgebra::from_h_exponents(3, &[3]).unwrap();
        let res = res_k(&split, 3);
        let nm = ResolutionModule::build_n(&split, &res, 2).unwrap();
        let y = nm.module().action(split.h_gens()[0]);
        let z = nm.module().action(split.z_gen());
        let u0 = nm.block(0, 0).offset;
        let u1 = nm.block(1, 0).offset;
        let u2 = nm.block(2, 0).offset;

        let neg = |v: Vec<u32>| -> Vec<u32> { v.into_iter().map(|x| (3 - x) % 3).collect() };
        assert_eq!(y.column(u0), neg(z.column(u1)));
        assert!(!y.column(u0).iter().all(|&v| v == 0));

        let y2 = y.mul(y).unwrap();
        let z2 = z.mul(z).unwrap();
        assert_eq!(y2.column(u1), neg(z2.column(u2)));
        assert!(!y2.column(u1).iter().all(|&v| v == 0));
    }

    #[test]
    fn inclusions_compose() {
        let split = split_c2();
        let res = res_k(&split, 6);
        let m1 = ResolutionModule::build_m(&split, res.complex(), 1).unwrap();
        let m2 = ResolutionModule::build_m(&split, res.complex(), 2).unwrap();
        let m3 = ResolutionModule::build_m(&split, res.complex(), 3).unwrap();
        let i12 = m1.inclusion(&m2).unwrap();
        let i23 = m2.inclusion(&m3).unwrap();
        let i13 = m1.inclusion(&m3).unwrap();
        assert!(i12.is_injective());
        assert_eq!(i23.compose(&i12).unwrap().matrix(), i13.matrix());

        let n1 = ResolutionModule::build_n(&split, &res, 1).unwrap();
        let n2 = ResolutionModule::build_n(&split, &res, 2).unwrap();
        assert!(n1.inclusion(&n2).unwrap().is_injective());
    }

    #[test]
    fn map_m_identity_and_zero() {
        let split = split_c2();
        let res = res_k(&split, 3);
        let c = res.complex();
        let (_, _, id_hom) = map_m(&split, &ChainMap::identity(c), 1).unwrap();
        assert_eq!(*id_hom.matrix(), FpMatrix::identity(2, 4));
        let (_, _, zero_hom) = map_m(&split, &ChainMap::zero(c, c), 1).unwrap();
        assert!(zero_hom.is_zero());
    }

    #[test]
    fn map_m_projection_has_free_kernel() {
        // σ: P ⊕ D -> P, the projection off a split exact pair
        let split = split_c2();
        let res = res_k(&split, 4);
        let c = res.complex();
        let kh = KGModule::regular(split.h());
        let d = ChainComplex::split_exact_pair(&kh, 2, 4).unwrap();
        let sum = c.direct_sum(&d).unwrap();
        let comps: Vec<ModuleHom> = (0..=4)
            .map(|i| {
                let mut m = FpMatrix::zero(2, c.module(i).dim(), sum.module(i).dim());
                m.set_block(0, 0, &FpMatrix::identity(2, c.module(i).dim()));
                ModuleHom::new(Arc::clone(sum.module(i)), Arc::clone(c.module(i)), m).unwrap()
            })
            .collect();
        let sigma = ChainMap::new(Arc::clone(&sum), Arc::clone(c), comps).unwrap();
        let (m_sum, m_c, hom) = map_m(&split, &sigma, 2).unwrap();
        assert!(hom.is_surjective());
        let kernel_dim = m_sum.dim() - m_c.dim();
        // the kernel is M of the split exact pair, which is projective
        let m_d = ResolutionModule::build_m(&split, &d, 2).unwrap();
        assert_eq!(kernel_dim, m_d.dim());
        assert!(m_d.module().is_projective());
    }

    #[test]
    fn additivity_as_exact_matrix_equality() {
        let split = split_c2();
        let res = res_k(&split, 3);
        let c = res.complex();
        let kh = KGModule::regular(split.h());
        let d = ChainComplex::split_exact_pair(&kh, 1, 3).unwrap();
        let sum = c.direct_sum(&d).unwrap();
        for n in [1, 2] {
            let m_sum = ResolutionModule::build_m(&split, &sum, n).unwrap();
            let m_c = ResolutionModule::build_m(&split, c, n).unwrap();
            let m_d = ResolutionModule::build_m(&split, &d, n).unwrap();
            let perm = sum_decomposition(&m_sum, &m_c, &m_d).unwrap();
            assert!(perm.is_bijective());
        }
    }

    #[test]
    fn restriction_commutes_with_build() {
        // rank-2 H inside rank-3 G, restricted to a rank-1 subalgebra of H
        let split = SplitAlgebra::from_h_exponents(2, &[2, 2]).unwrap();
        let res = res_k(&split, 3);
        let m = ResolutionModule::build_m(&split, res.complex(), 2).unwrap();
        // restrict the module to kJ x C where J is the first H generator
        let restricted_module = m.module().restrict_to_sub(&[0, split.z_gen()]).unwrap();
        // build from the restricted complex over the same split shape
        let split_j = SplitAlgebra::from_h_exponents(2, &[2]).unwrap();
        let restricted_complex = res.complex().restrict_to_sub(&[0]).unwrap();
        let built = ResolutionModule::build_m(&split_j, &restricted_complex, 2).unwrap();
        assert_eq!(**built.module(), *restricted_module);
    }

    #[test]
    fn window_supported_split_exact_is_projective() {
        let split = split_c2();
        let kh = KGModule::regular(split.h());
        for upper in 1..=3 {
            let d = ChainComplex::split_exact_pair(&kh, upper, 3).unwrap();
            let m = ResolutionModule::build_m(&split, &d, 2).unwrap();
            assert!(m.module().is_projective(), "upper = {}", upper);
        }
    }

    #[test]
    fn resolution_change_gives_stable_isomorphism() {
        let split = split_c2();
        let res = res_k(&split, 3);
        let c = res.complex();
        let kh = KGModule::regular(split.h());
        let d = ChainComplex::split_exact_pair(&kh, 2, 3).unwrap();
        let preferred = ResolutionModule::build_m(&split, c, 2).unwrap();
        let padded = ResolutionModule::build_m(&split, &c.direct_sum(&d).unwrap(), 2).unwrap();
        match is_stably_isomorphic(preferred.module(), padded.module(), DEFAULT_ISO_BUDGET).unwrap()
        {
            StableIso::Yes(f) => assert!(f.is_bijective()),
            _ => panic!("padding by a split exact complex must not change the stable class"),
        }
    }

    #[test]
    fn gamma_examples() {
        let split = split_c2();
        // Γ(k) at n = 1 is the four-dimensional module above
        let k = KGModule::trivial(split.h());
        let g = gamma(&split, &k, 1).unwrap();
        assert_eq!(g.dim(), 4);

        // Γ(k ⊕ k, n) decomposes as Γ(k, n) ⊕ Γ(k, n)
        let kk = k.direct_sum(&k).unwrap();
        let g2 = gamma(&split, &kk, 1).unwrap();
        assert_eq!(g2.dim(), 2 * g.dim());
        match is_stably_isomorphic(
            g2.module(),
            &g.module().direct_sum(g.module()).unwrap(),
            DEFAULT_ISO_BUDGET,
        )
        .unwrap()
        {
            StableIso::Yes(_) => {}
            _ => panic!("Γ must be additive"),
        }

        // Γ(kH): the minimal resolution of a projective is concentrated
        // in degree zero, so the result is kH with Z acting as zero, the
        // generator of the thick ideal supported at the Z-point.
        let kh = KGModule::regular(split.h());
        let gh = gamma(&split, &kh, 1).unwrap();
        assert_eq!(gh.dim(), 2);
        assert!(gh.module().action(split.z_gen()).is_zero());
        assert_eq!(*gh.module().action(split.h_gens()[0]), *kh.action(0));
        assert_eq!(gh.module().free_rank(), 0);
    }

    #[test]
    fn h_restriction_of_m_is_free_for_minimal_resolutions() {
        let split = SplitAlgebra::from_h_exponents(2, &[2, 2]).unwrap();
        let res = res_k(&split, 3);
        let m = ResolutionModule::build_m(&split, res.complex(), 2).unwrap();
        let rest = m.h_restriction().unwrap();
        assert!(rest.is_projective());
        // while the full module is projective-free over kG
        assert_eq!(m.module().free_rank(), 0);
    }

    #[test]
    fn serialization_is_module_plus_degree_map() {
        let split = split_c2();
        let res = res_k(&split, 3);
        let m = ResolutionModule::build_m(&split, res.complex(), 1).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains(r#""shape":"M""#));
        assert!(s.contains(r#""n":1"#));
        assert!(s.contains(r#""degrees""#));
        // a resolution module deserializes as a plain module fixture
        let back: KGModule = serde_json::from_str(&s).unwrap();
        assert_eq!(back, **m.module());
    }
}
