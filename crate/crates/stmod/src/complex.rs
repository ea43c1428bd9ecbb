//! Chain complexes of modules over a group algebra, minimal projective
//! resolutions by iterated covers, and lifting of socle vectors to graded
//! chain self-maps of the augmented resolution.

use std::sync::Arc;

use crate::algebra::{CoproductKind, GroupAlgebra};
use crate::error::{Error, Result};
use crate::ff::FpMatrix;
use crate::module::{KGModule, ModuleHom};
use crate::rng::XorShift64;

/// A complex `C_0 <- C_1 <- ... <- C_L` (boundaries lower the degree), with
/// all terms in nonnegative degrees.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    algebra: Arc<GroupAlgebra>,
    modules: Vec<Arc<KGModule>>,
    /// `boundaries[i]` is `∂_{i+1}: C_{i+1} -> C_i`.
    boundaries: Vec<ModuleHom>,
}

impl ChainComplex {
    pub fn new(
        algebra: Arc<GroupAlgebra>,
        modules: Vec<Arc<KGModule>>,
        boundaries: Vec<ModuleHom>,
    ) -> Result<Arc<Self>> {
        if modules.is_empty() {
            return Err(Error::InvalidComplex("no terms".into()));
        }
        if boundaries.len() + 1 != modules.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} boundaries, got {}",
                modules.len(),
                modules.len() - 1,
                boundaries.len()
            )));
        }
        for m in &modules {
            if *m.algebra() != algebra {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (i, d) in boundaries.iter().enumerate() {
            d.verify()?;
            if d.source() != &modules[i + 1] || d.target() != &modules[i] {
                return Err(Error::InvalidComplex(format!(
                    "boundary {} does not connect the adjacent terms",
                    i + 1
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].compose(&boundaries[i])?.is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "∂∂ != 0 at degree {}",
                    i + 1
                )));
            }
        }
        Ok(Arc::new(Self {
            algebra,
            modules,
            boundaries,
        }))
    }

    pub(crate) fn from_parts(
        algebra: Arc<GroupAlgebra>,
        modules: Vec<Arc<KGModule>>,
        boundaries: Vec<ModuleHom>,
    ) -> Arc<Self> {
        Arc::new(Self {
            algebra,
            modules,
            boundaries,
        })
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    /// Top degree `L`.
    pub fn top_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, i: usize) -> &Arc<KGModule> {
        &self.modules[i]
    }

    /// `∂_i: C_i -> C_{i-1}` for `1 <= i <= L`.
    pub fn boundary(&self, i: usize) -> &ModuleHom {
        &self.boundaries[i - 1]
    }

    fn zero_module(algebra: &Arc<GroupAlgebra>) -> Arc<KGModule> {
        KGModule::from_parts_arc(
            Arc::clone(algebra),
            (0..algebra.rank())
                .map(|_| FpMatrix::zero(algebra.p(), 0, 0))
                .collect(),
        )
    }

    /// `0 -> P -> P -> 0` with the identity boundary, supported in degrees
    /// `upper` and `upper - 1`, padded with zero terms up to `top`.
    pub fn split_exact_pair(
        p_module: &Arc<KGModule>,
        upper: usize,
        top: usize,
    ) -> Result<Arc<Self>> {
        if upper == 0 || upper > top {
            return Err(Error::InvalidComplex(
                "split pair must sit in degrees (upper, upper-1) with 1 <= upper <= top".into(),
            ));
        }
        let algebra = Arc::clone(p_module.algebra());
        let zero = Self::zero_module(&algebra);
        let modules: Vec<Arc<KGModule>> = (0..=top)
            .map(|i| {
                if i == upper || i == upper - 1 {
                    Arc::clone(p_module)
                } else {
                    Arc::clone(&zero)
                }
            })
            .collect();
        let boundaries = (1..=top)
            .map(|i| {
                if i == upper {
                    ModuleHom::identity(p_module)
                } else {
                    ModuleHom::zero(&modules[i], &modules[i - 1])
                }
            })
            .collect();
        Ok(Self::from_parts(algebra, modules, boundaries))
    }

    /// Degreewise direct sum (lengths must agree).
    pub fn direct_sum(&self, other: &Self) -> Result<Arc<Self>> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if self.top_degree() != other.top_degree() {
            return Err(Error::InvalidComplex(
                "length mismatch in direct sum".into(),
            ));
        }
        let modules: Vec<Arc<KGModule>> = self
            .modules
            .iter()
            .zip(&other.modules)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<_>>()?;
        let boundaries = (1..=self.top_degree())
            .map(|i| {
                let m = FpMatrix::block_diag(
                    self.algebra.p(),
                    &[self.boundary(i).matrix(), other.boundary(i).matrix()],
                );
                ModuleHom::from_parts(Arc::clone(&modules[i]), Arc::clone(&modules[i - 1]), m)
            })
            .collect();
        Ok(Self::from_parts(
            Arc::clone(&self.algebra),
            modules,
            boundaries,
        ))
    }

    /// Restriction to the subalgebra generated by the listed generators.
    pub fn restrict_to_sub(&self, gens: &[usize]) -> Result<Arc<Self>> {
        let modules: Vec<Arc<KGModule>> = self
            .modules
            .iter()
            .map(|m| m.restrict_to_sub(gens))
            .collect::<Result<_>>()?;
        let algebra = Arc::clone(modules[0].algebra());
        let boundaries = (1..=self.top_degree())
            .map(|i| {
                ModuleHom::from_parts(
                    Arc::clone(&modules[i]),
                    Arc::clone(&modules[i - 1]),
                    self.boundary(i).matrix().clone(),
                )
            })
            .collect();
        Ok(Self::from_parts(algebra, modules, boundaries))
    }

    /// Total complex of the tensor product, cut off at `top`.
    ///
    /// `T_d = ⊕_{i+j=d} C_i ⊗ D_j` ordered by ascending `i`, with boundary
    /// `∂(x ⊗ y) = ∂x ⊗ y + (-1)^i x ⊗ ∂y`.
    pub fn tensor(&self, other: &Self, kind: CoproductKind, top: usize) -> Result<Arc<Self>> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let p = self.algebra.p();
        let pair_dims = |d: usize| -> Vec<(usize, usize)> {
            (0..=d)
                .filter(|&i| i <= self.top_degree() && d - i <= other.top_degree())
                .map(|i| (i, d - i))
                .collect()
        };
        let mut modules: Vec<Arc<KGModule>> = Vec::new();
        for d in 0..=top {
            let mut sum: Option<Arc<KGModule>> = None;
            for (i, j) in pair_dims(d) {
                let term = self.modules[i].tensor(&other.modules[j], kind)?;
                sum = Some(match sum {
                    None => term,
                    Some(s) => s.direct_sum(&term)?,
                });
            }
            modules.push(sum.unwrap_or_else(|| Self::zero_module(&self.algebra)));
        }
        let mut boundaries = Vec::new();
        for d in 1..=top {
            let src_pairs = pair_dims(d);
            let tgt_pairs = pair_dims(d - 1);
            let dim_of = |&(i, j): &(usize, usize)| self.modules[i].dim() * other.modules[j].dim();
            let src_offsets = block_offsets(&src_pairs, dim_of);
            let tgt_offsets = block_offsets(&tgt_pairs, dim_of);
            let mut m = FpMatrix::zero(p, modules[d - 1].dim(), modules[d].dim());
            for (bi, &(i, j)) in src_pairs.iter().enumerate() {
                // ∂ ⊗ id into (i-1, j)
                if i >= 1 {
                    if let Some(ti) = tgt_pairs.iter().position(|&q| q == (i - 1, j)) {
                        let block = self
                            .boundary(i)
                            .matrix()
                            .kronecker(&FpMatrix::identity(p, other.modules[j].dim()))?;
                        m.set_block(tgt_offsets[ti], src_offsets[bi], &block);
                    }
                }
                // (-1)^i id ⊗ ∂ into (i, j-1)
                if j >= 1 {
                    if let Some(ti) = tgt_pairs.iter().position(|&q| q == (i, j - 1)) {
                        let mut block = FpMatrix::identity(p, self.modules[i].dim())
                            .kronecker(other.boundary(j).matrix())?;
                        if i % 2 == 1 {
                            block = block.neg();
                        }
                        m.set_block(tgt_offsets[ti], src_offsets[bi], &block);
                    }
                }
            }
            boundaries.push(ModuleHom::from_parts(
                Arc::clone(&modules[d]),
                Arc::clone(&modules[d - 1]),
                m,
            ));
        }
        Ok(Self::from_parts(
            Arc::clone(&self.algebra),
            modules,
            boundaries,
        ))
    }
}

fn block_offsets<T>(items: &[T], dim: impl Fn(&T) -> usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(items.len());
    let mut acc = 0;
    for it in items {
        out.push(acc);
        acc += dim(it);
    }
    out
}

/// A chain map between complexes of equal length, one component per degree.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    components: Vec<ModuleHom>,
}

impl ChainMap {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        components: Vec<ModuleHom>,
    ) -> Result<Self> {
        if components.len() != source.top_degree() + 1 || source.top_degree() != target.top_degree()
        {
            return Err(Error::InvalidComplex("chain map length mismatch".into()));
        }
        for (i, c) in components.iter().enumerate() {
            c.verify()?;
            if c.source() != source.module(i) || c.target() != target.module(i) {
                return Err(Error::InvalidComplex(format!(
                    "component {} does not connect the complexes",
                    i
                )));
            }
        }
        for i in 1..components.len() {
            let lhs = components[i - 1].compose(source.boundary(i))?;
            let rhs = target.boundary(i).compose(&components[i])?;
            if lhs.matrix() != rhs.matrix() {
                return Err(Error::InvalidComplex(format!(
                    "does not commute with the boundary at degree {}",
                    i
                )));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn identity(c: &Arc<ChainComplex>) -> Self {
        let components = (0..=c.top_degree())
            .map(|i| ModuleHom::identity(c.module(i)))
            .collect();
        Self {
            source: Arc::clone(c),
            target: Arc::clone(c),
            components,
        }
    }

    pub fn zero(source: &Arc<ChainComplex>, target: &Arc<ChainComplex>) -> Self {
        let components = (0..=source.top_degree())
            .map(|i| ModuleHom::zero(source.module(i), target.module(i)))
            .collect();
        Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            components,
        }
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn component(&self, i: usize) -> &ModuleHom {
        &self.components[i]
    }
}

/// A projective resolution of `target` with augmentation `ε: P_0 -> target`,
/// produced by iterated minimal covers; Betti numbers are the free ranks.
#[derive(Debug, Clone)]
pub struct AugmentedResolution {
    complex: Arc<ChainComplex>,
    target: Arc<KGModule>,
    augmentation: ModuleHom,
    betti: Vec<usize>,
    minimal: bool,
}

impl AugmentedResolution {
    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.complex
    }

    pub fn target(&self) -> &Arc<KGModule> {
        &self.target
    }

    pub fn augmentation(&self) -> &ModuleHom {
        &self.augmentation
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        self.complex.algebra()
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    pub fn module(&self, i: usize) -> &Arc<KGModule> {
        self.complex.module(i)
    }

    pub fn boundary(&self, i: usize) -> &ModuleHom {
        self.complex.boundary(i)
    }

    /// Exactness at the interior degrees and at `P_0` (im ∂_1 = ker ε).
    pub fn verify_exact(&self) -> Result<()> {
        let eps_kernel = self.augmentation.matrix().kernel_basis().len();
        let rank1 = self.boundary(1).matrix().rank();
        if rank1 != eps_kernel {
            return Err(Error::InvalidComplex(format!(
                "im ∂_1 has rank {}, ker ε has dimension {}",
                rank1, eps_kernel
            )));
        }
        for i in 1..self.top_degree() {
            let ker = self.boundary(i).matrix().kernel_basis().len();
            let im = self.boundary(i + 1).matrix().rank();
            if ker != im {
                return Err(Error::InvalidComplex(format!(
                    "not exact at degree {}: ker {} vs im {}",
                    i, ker, im
                )));
            }
        }
        Ok(())
    }
}

/// Minimal projective resolution of `target` out to top index `length`.
///
/// Deterministic: covers pick the first standard basis vectors that span the
/// top, so the Betti data and every boundary matrix are reproducible.
pub fn minimal_resolution(target: &Arc<KGModule>, length: usize) -> Result<AugmentedResolution> {
    let algebra = Arc::clone(target.algebra());
    let mut modules: Vec<Arc<KGModule>> = Vec::with_capacity(length + 1);
    let mut boundaries: Vec<ModuleHom> = Vec::with_capacity(length);
    let mut betti = Vec::with_capacity(length + 1);

    let first = target.projective_cover();
    let augmentation = first.projection.clone();
    betti.push(first.cover.dim() / algebra.dim().max(1));
    modules.push(Arc::clone(&first.cover));
    let mut kernel = Arc::clone(&first.kernel);
    let mut incl = first.inclusion.clone();

    for i in 1..=length {
        let data = kernel.projective_cover();
        betti.push(data.cover.dim() / algebra.dim().max(1));
        // ∂_i = (Ω^i ⊆ P_{i-1}) ∘ (P_i ->> Ω^i)
        let boundary_matrix = incl.matrix().mul(data.projection.matrix())?;
        modules.push(Arc::clone(&data.cover));
        boundaries.push(ModuleHom::from_parts(
            Arc::clone(&modules[i]),
            Arc::clone(&modules[i - 1]),
            boundary_matrix,
        ));
        kernel = Arc::clone(&data.kernel);
        incl = data.inclusion.clone();
    }

    let complex = ChainComplex::from_parts(algebra, modules, boundaries);
    Ok(AugmentedResolution {
        complex,
        target: Arc::clone(target),
        augmentation,
        betti,
        minimal: true,
    })
}

/// A graded chain self-map of the augmented resolution, lifting a socle
/// vector `alpha ∈ Hom(k, P_m)`: the degree `-1` component is `alpha` and
/// `components[i]: P_i -> P_{i+m+1}` satisfies `∂ f_i = f_{i-1} ∂`.
#[derive(Debug, Clone)]
pub struct ChainLift {
    m: usize,
    alpha: Vec<u32>,
    components: Vec<FpMatrix>,
}

impl ChainLift {
    pub fn shift(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// `f_i: P_i -> P_{i+m+1}`.
    pub fn component(&self, i: usize) -> &FpMatrix {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Extends prescribed generator images to the full matrix of a module map
/// out of a free module: column `(s, monomial)` is the monomial applied to
/// `images[s]`. The result intertwines the algebra actions by construction.
pub(crate) fn extend_free_map(
    algebra: &Arc<GroupAlgebra>,
    rank: usize,
    target: &Arc<KGModule>,
    images: &[Vec<u32>],
) -> FpMatrix {
    debug_assert_eq!(images.len(), rank);
    let ag_dim = algebra.dim();
    let mut m = FpMatrix::zero(algebra.p(), target.dim(), rank * ag_dim);
    for (s, image) in images.iter().enumerate() {
        for idx in 0..ag_dim {
            let v = target.apply_monomial(idx, image);
            for (r, &e) in v.iter().enumerate() {
                m.set(r, s * ag_dim + idx, e);
            }
        }
    }
    m
}

/// Lifts `alpha ∈ Hom(k, P_m)` (a socle vector of `P_m`) to a chain map of
/// the augmented resolution, one degree at a time via canonical solves.
///
/// Every `P_i` is free, so `f_i` is pinned down by the images of the free
/// generators; the square `∂ f_i = f_{i-1} ∂` is solved canonically on each
/// generator column (both sides are `kH`-linear, so generator columns
/// suffice). Components are produced while `i + m + 1 <= top_degree`.
pub fn lift_chain_map(
    resolution: &AugmentedResolution,
    m: usize,
    alpha: &[u32],
) -> Result<ChainLift> {
    if m > resolution.top_degree() {
        return Err(Error::DegreeOutOfRange(m as i64));
    }
    let p_m = resolution.module(m);
    if alpha.len() != p_m.dim() {
        return Err(Error::InvalidInput(format!(
            "alpha has length {}, P_{} has dimension {}",
            alpha.len(),
            m,
            p_m.dim()
        )));
    }
    // alpha must be a kH-map from k, i.e. killed by every generator
    for g in 0..p_m.algebra().rank() {
        let image = p_m.action(g).apply(alpha)?;
        if image.iter().any(|&v| v != 0) {
            return Err(Error::InvalidInput(
                "alpha is not a socle vector of P_m".into(),
            ));
        }
    }
    let algebra = resolution.algebra();
    let p = algebra.p();
    let ag_dim = algebra.dim();
    let mut components: Vec<FpMatrix> = Vec::new();
    let mut i = 0;
    while i + m < resolution.top_degree() {
        let target = resolution.module(i + m + 1);
        // square at degree i: ∂ f_i = f_{i-1} ∂, base case α ∘ ε at i = 0
        let rhs = if i == 0 {
            let alpha_col = FpMatrix::column_vector(p, alpha)?;
            alpha_col.mul(resolution.augmentation().matrix())?
        } else {
            components[i - 1].mul(resolution.boundary(i).matrix())?
        };
        let post = resolution.boundary(i + m + 1).matrix();
        let rank = resolution.betti()[i];
        let mut images = Vec::with_capacity(rank);
        for s in 0..rank {
            let b = rhs.column(s * ag_dim);
            let v = post.solve(&b).ok_or(Error::LiftFailed { degree: i })?;
            images.push(v);
        }
        components.push(extend_free_map(algebra, rank, target, &images));
        i += 1;
    }
    Ok(ChainLift {
        m,
        alpha: alpha.to_vec(),
        components,
    })
}

/// Adds a random null-homotopy to a lift: `f_i += ∂ h_i + h_{i-1} ∂` with
/// kH-linear `h_i: P_i -> P_{i+m+2}` given by random generator images from
/// a seeded stream. The result is again a chain map lifting the same socle
/// vector.
pub fn perturb_lift(
    resolution: &AugmentedResolution,
    lift: &ChainLift,
    seed: u64,
) -> Result<ChainLift> {
    let m = lift.m;
    let mut rng = XorShift64::new(seed);
    let algebra = resolution.algebra();
    let p = algebra.p();
    let mut homotopies: Vec<FpMatrix> = Vec::new();
    let mut i = 0;
    while i + m + 2 <= resolution.top_degree() {
        let target = resolution.module(i + m + 2);
        let rank = resolution.betti()[i];
        let images: Vec<Vec<u32>> = (0..rank)
            .map(|_| (0..target.dim()).map(|_| rng.below(p)).collect())
            .collect();
        homotopies.push(extend_free_map(algebra, rank, target, &images));
        i += 1;
    }
    let mut components = Vec::with_capacity(lift.components.len());
    for (i, f) in lift.components.iter().enumerate() {
        let mut g = f.clone();
        if i < homotopies.len() {
            g = g.add(
                &resolution
                    .boundary(i + m + 2)
                    .matrix()
                    .mul(&homotopies[i])?,
            )?;
        }
        if i >= 1 && i - 1 < homotopies.len() {
            g = g.add(&homotopies[i - 1].mul(resolution.boundary(i).matrix())?)?;
        }
        components.push(g);
    }
    Ok(ChainLift {
        m,
        alpha: lift.alpha.clone(),
        components,
    })
}

/// Checks that a lift commutes with the boundaries in every computed degree.
pub fn verify_lift(resolution: &AugmentedResolution, lift: &ChainLift) -> Result<()> {
    let p = resolution.algebra().p();
    for (i, f) in lift.components.iter().enumerate() {
        let lhs = resolution.boundary(i + lift.m + 1).matrix().mul(f)?;
        let rhs = if i == 0 {
            let alpha_col = FpMatrix::column_vector(p, &lift.alpha)?;
            alpha_col.mul(resolution.augmentation().matrix())?
        } else {
            lift.components[i - 1].mul(resolution.boundary(i).matrix())?
        };
        if lhs != rhs {
            return Err(Error::InvalidComplex(format!(
                "lift square does not commute at degree {}",
                i
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolution_over(p: u32, exps: Vec<u32>, length: usize) -> AugmentedResolution {
        let a = GroupAlgebra::new(p, exps).unwrap();
        let k = KGModule::trivial(&a);
        minimal_resolution(&k, length).unwrap()
    }

    #[test]
    fn cyclic_two_resolution() {
        let res = resolution_over(2, vec![2], 6);
        assert_eq!(res.betti(), &[1, 1, 1, 1, 1, 1, 1]);
        res.verify_exact().unwrap();
        // every boundary is multiplication by Y
        let y = KGModule::regular(res.algebra()).action(0).clone();
        for i in 1..=6 {
            assert_eq!(*res.boundary(i).matrix(), y);
        }
    }

    #[test]
    fn klein_resolution_betti() {
        let res = resolution_over(2, vec![2, 2], 6);
        assert_eq!(res.betti(), &[1, 2, 3, 4, 5, 6, 7]);
        res.verify_exact().unwrap();
        // minimality: boundaries land in the radical
        for i in 1..=6 {
            let rad = res.module(i - 1).radical_matrix();
            let m = res.boundary(i).matrix();
            for j in 0..m.cols() {
                assert!(rad.solve(&m.column(j)).is_some());
            }
        }
    }

    #[test]
    fn cyclic_three_resolution_alternates() {
        let res = resolution_over(3, vec![3], 6);
        assert_eq!(res.betti(), &[1, 1, 1, 1, 1, 1, 1]);
        res.verify_exact().unwrap();
        let y = KGModule::regular(res.algebra()).action(0).clone();
        let y2 = y.mul(&y).unwrap();
        // boundaries alternate between multiplication by Y and Y^2
        for i in 1..=6 {
            let expect = if i % 2 == 1 { &y } else { &y2 };
            assert_eq!(res.boundary(i).matrix(), expect);
        }
    }

    #[test]
    fn rank_three_resolution_betti() {
        let res = resolution_over(2, vec![2, 2, 2], 4);
        assert_eq!(res.betti(), &[1, 3, 6, 10, 15]);
        res.verify_exact().unwrap();
    }

    #[test]
    fn split_exact_pair_shape() {
        let a = GroupAlgebra::new(2, vec![2]).unwrap();
        let kh = KGModule::regular(&a);
        let c = ChainComplex::split_exact_pair(&kh, 2, 3).unwrap();
        assert_eq!(c.module(0).dim(), 0);
        assert_eq!(c.module(1).dim(), 2);
        assert_eq!(c.module(2).dim(), 2);
        assert_eq!(c.module(3).dim(), 0);
        assert!(c.boundary(2).is_bijective());
    }

    #[test]
    fn direct_sum_of_complexes() {
        let res = resolution_over(2, vec![2], 3);
        let c = res.complex();
        let sum = c.direct_sum(c).unwrap();
        for i in 0..=3 {
            assert_eq!(sum.module(i).dim(), 2 * c.module(i).dim());
        }
        // the assembled sum re-validates as a complex
        ChainComplex::new(
            Arc::clone(sum.algebra()),
            (0..=3).map(|i| Arc::clone(sum.module(i))).collect(),
            (1..=3).map(|i| sum.boundary(i).clone()).collect(),
        )
        .unwrap();
    }

    #[test]
    fn tensor_complex_total_boundary_squares_to_zero() {
        let res = resolution_over(2, vec![2], 4);
        let c = res.complex();
        let t = c.tensor(c, CoproductKind::Primitive, 4).unwrap();
        for d in 2..=4 {
            assert!(t.boundary(d - 1).compose(t.boundary(d)).unwrap().is_zero());
        }
        assert_eq!(t.module(2).dim(), 3 * 4);
        // over odd characteristic the signs still square to zero
        let res3 = resolution_over(3, vec![3], 4);
        let c3 = res3.complex();
        let t3 = c3.tensor(c3, CoproductKind::GroupLike, 4).unwrap();
        for d in 2..=4 {
            assert!(t3
                .boundary(d - 1)
                .compose(t3.boundary(d))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn chain_map_validation() {
        let res = resolution_over(2, vec![2], 3);
        let c = res.complex();
        let id = ChainMap::identity(c);
        ChainMap::new(
            Arc::clone(c),
            Arc::clone(c),
            (0..=3).map(|i| id.component(i).clone()).collect(),
        )
        .unwrap();
        // a non-commuting collection is rejected
        let mut comps: Vec<ModuleHom> = (0..=3).map(|i| id.component(i).clone()).collect();
        comps[1] = ModuleHom::zero(c.module(1), c.module(1));
        assert!(ChainMap::new(Arc::clone(c), Arc::clone(c), comps).is_err());
    }

    #[test]
    fn lift_over_cyclic_two() {
        let res = resolution_over(2, vec![2], 6);
        // alpha: k -> P_0 hits the socle Y
        let lift = lift_chain_map(&res, 0, &[0, 1]).unwrap();
        verify_lift(&res, &lift).unwrap();
        // each component is the identity of kH in these coordinates
        for i in 0..lift.len() {
            assert_eq!(*lift.component(i), FpMatrix::identity(2, 2));
        }
        // zero socle vector lifts to the zero chain map
        let zero = lift_chain_map(&res, 0, &[0, 0]).unwrap();
        assert!(zero.components.iter().all(FpMatrix::is_zero));
    }

    #[test]
    fn lift_linearity_in_alpha() {
        let res = resolution_over(2, vec![2, 2], 5);
        let socle = res.module(1).socle_basis();
        assert_eq!(socle.len(), 2);
        let l1 = lift_chain_map(&res, 1, &socle[0]).unwrap();
        let l2 = lift_chain_map(&res, 1, &socle[1]).unwrap();
        let sum_alpha: Vec<u32> = socle[0]
            .iter()
            .zip(&socle[1])
            .map(|(&a, &b)| (a + b) % 2)
            .collect();
        let l12 = lift_chain_map(&res, 1, &sum_alpha).unwrap();
        // canonical solves are linear in the right-hand side, so the lift
        // is exactly additive, not merely additive up to homotopy
        for i in 0..l12.len() {
            let sum = l1.component(i).add(l2.component(i)).unwrap();
            assert_eq!(*l12.component(i), sum);
        }
    }

    #[test]
    fn perturbed_lift_still_lifts_alpha() {
        let res = resolution_over(2, vec![2, 2], 6);
        let socle = res.module(0).socle_basis();
        let lift = lift_chain_map(&res, 0, &socle[0]).unwrap();
        for seed in 1..=5 {
            let pert = perturb_lift(&res, &lift, seed).unwrap();
            verify_lift(&res, &pert).unwrap();
            assert_eq!(pert.alpha(), lift.alpha());
        }
    }

    #[test]
    fn rejects_non_socle_alpha() {
        let res = resolution_over(2, vec![2, 2], 3);
        assert!(lift_chain_map(&res, 0, &[1, 0, 0, 0]).is_err());
    }
}
