//! Finite-dimensional modules over a [`GroupAlgebra`], given by commuting
//! nilpotent generator actions, together with the stable-category toolkit:
//! homs and stable homs, projectivity via the socle action, free-summand
//! stripping, projective covers and syzygies in both directions.
//!
//! The projectivity test exploits that the algebra is local self-injective
//! with one-dimensional socle: an element not annihilated by the socle
//! generator `w` spans a free summand, and `w` kills every projective-free
//! module. This keeps all decisions at `O(dim^3)` exact arithmetic.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    tensor_generator_action, AlgebraElement, CoproductKind, GroupAlgebra, PiPoint,
};
use crate::error::{Error, Result};
use crate::ff::FpMatrix;
use crate::rng::XorShift64;

/// A `kG`-module: one action matrix per algebra generator, pairwise
/// commuting with `A_i^{e_i} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGModule {
    algebra: Arc<GroupAlgebra>,
    dim: usize,
    actions: Vec<FpMatrix>,
}

impl KGModule {
    /// Validating constructor; checks shapes, commutativity and nilpotency.
    pub fn new(algebra: Arc<GroupAlgebra>, actions: Vec<FpMatrix>) -> Result<Arc<Self>> {
        let m = Self::from_parts(algebra, actions);
        m.validate()?;
        Ok(Arc::new(m))
    }

    /// Internal constructor for actions that are valid by construction.
    pub(crate) fn from_parts(algebra: Arc<GroupAlgebra>, actions: Vec<FpMatrix>) -> Self {
        let dim = actions.first().map_or(0, FpMatrix::rows);
        Self {
            algebra,
            dim,
            actions,
        }
    }

    pub(crate) fn from_parts_arc(algebra: Arc<GroupAlgebra>, actions: Vec<FpMatrix>) -> Arc<Self> {
        Arc::new(Self::from_parts(algebra, actions))
    }

    /// Re-checks the module invariants. Loaded fixtures must pass this
    /// before any mathematics runs on them.
    pub fn validate(&self) -> Result<()> {
        if self.actions.len() != self.algebra.rank() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                self.algebra.rank(),
                self.actions.len()
            )));
        }
        for a in &self.actions {
            if a.rows() != self.dim || a.cols() != self.dim {
                return Err(Error::InvalidModule(
                    "action matrix is not square of the module dimension".into(),
                ));
            }
            if a.p() != self.algebra.p() {
                return Err(Error::ModulusMismatch {
                    left: a.p(),
                    right: self.algebra.p(),
                });
            }
        }
        for (i, a) in self.actions.iter().enumerate() {
            if !a.pow(self.algebra.exponents()[i])?.is_zero() {
                return Err(Error::InvalidModule(format!(
                    "generator {} is not nilpotent of order {}",
                    i,
                    self.algebra.exponents()[i]
                )));
            }
            for (j, b) in self.actions.iter().enumerate().skip(i + 1) {
                if a.mul(b)? != b.mul(a)? {
                    return Err(Error::InvalidModule(format!(
                        "generators {} and {} do not commute",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.actions
    }

    pub fn action(&self, gen: usize) -> &FpMatrix {
        &self.actions[gen]
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    /// The trivial module `k`: dimension 1, all generators act by zero.
    pub fn trivial(algebra: &Arc<GroupAlgebra>) -> Arc<Self> {
        let actions = (0..algebra.rank())
            .map(|_| FpMatrix::zero(algebra.p(), 1, 1))
            .collect();
        Self::from_parts_arc(Arc::clone(algebra), actions)
    }

    /// The regular module `kG` on the monomial basis.
    pub fn regular(algebra: &Arc<GroupAlgebra>) -> Arc<Self> {
        let actions = (0..algebra.rank())
            .map(|i| algebra.gen_action(i).clone())
            .collect();
        Self::from_parts_arc(Arc::clone(algebra), actions)
    }

    /// Free module of the given rank, one regular block per generator copy.
    pub fn free(algebra: &Arc<GroupAlgebra>, rank: usize) -> Arc<Self> {
        let actions = (0..algebra.rank())
            .map(|i| {
                let block = algebra.gen_action(i);
                let blocks: Vec<&FpMatrix> = (0..rank).map(|_| block).collect();
                FpMatrix::block_diag(algebra.p(), &blocks)
            })
            .collect();
        Self::from_parts_arc(Arc::clone(algebra), actions)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Arc<Self>> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| FpMatrix::block_diag(self.p(), &[a, b]))
            .collect();
        Ok(Self::from_parts_arc(Arc::clone(&self.algebra), actions))
    }

    /// Dual module via the chosen antipode: the action of `X_i` on `M^*` is
    /// the transpose of the `S(X_i)` action on `M`.
    pub fn dual_with(&self, kind: CoproductKind) -> Arc<Self> {
        let actions = (0..self.algebra.rank())
            .map(|i| {
                let s = self.algebra.antipode_gen_action(i, kind);
                self.action_of_coeffs(&s.column(0)).transpose()
            })
            .collect();
        Self::from_parts_arc(Arc::clone(&self.algebra), actions)
    }

    /// Dual with the group-like antipode.
    pub fn dual(&self) -> Arc<Self> {
        self.dual_with(CoproductKind::GroupLike)
    }

    /// Action on this module of the algebra element with the given monomial
    /// coefficient vector.
    pub fn action_of(&self, elt: &AlgebraElement) -> FpMatrix {
        debug_assert_eq!(*elt.algebra(), self.algebra);
        self.action_of_coeffs(elt.coeffs())
    }

    fn action_of_coeffs(&self, coeffs: &[u32]) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p(), self.dim, self.dim);
        for (idx, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let exps = self.algebra.monomial_exponents(idx);
            let mut term = FpMatrix::identity(self.p(), self.dim);
            for (g, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = self.actions[g].mul(&term).expect("square");
                }
            }
            out = out.add(&term.scale(c)).expect("same shape");
        }
        out
    }

    /// Image of a vector under the monomial with the given basis index.
    pub(crate) fn apply_monomial(&self, idx: usize, v: &[u32]) -> Vec<u32> {
        let exps = self.algebra.monomial_exponents(idx);
        let mut out = v.to_vec();
        for (g, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                out = self.actions[g].apply(&out).expect("dim");
            }
        }
        out
    }

    /// Tensor product over `k`, with the module structure induced by the
    /// chosen coproduct. Basis order is left-factor major.
    pub fn tensor(&self, other: &Self, kind: CoproductKind) -> Result<Arc<Self>> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| tensor_generator_action(kind, a, b, self.p()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts_arc(Arc::clone(&self.algebra), actions))
    }

    /// Restriction along a pi-point: a module over `k[t]/(t^p)` where `t`
    /// acts as the pi-point's image element.
    pub fn restrict_along(&self, point: &PiPoint) -> Result<Arc<Self>> {
        if *point.algebra() != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let action = self.action_of(point.image());
        let target = GroupAlgebra::new(self.p(), vec![self.p()])?;
        Ok(Self::from_parts_arc(target, vec![action]))
    }

    /// Restriction to the subalgebra generated by the listed generators.
    pub fn restrict_to_sub(&self, gens: &[usize]) -> Result<Arc<Self>> {
        let exps: Vec<u32> = gens.iter().map(|&i| self.algebra.exponents()[i]).collect();
        let sub = GroupAlgebra::new(self.p(), exps)?;
        let actions = gens.iter().map(|&i| self.actions[i].clone()).collect();
        Ok(Self::from_parts_arc(sub, actions))
    }

    /// Action of the socle generator `w = prod X_i^{e_i - 1}`.
    pub fn socle_action(&self) -> FpMatrix {
        let mut m = FpMatrix::identity(self.p(), self.dim);
        for (i, a) in self.actions.iter().enumerate() {
            let e = self.algebra.exponents()[i];
            m = m.mul(&a.pow(e - 1).expect("square")).expect("square");
        }
        m
    }

    /// Number of free direct summands: the rank of the socle action.
    pub fn free_rank(&self) -> usize {
        self.socle_action().rank()
    }

    pub fn is_projective(&self) -> bool {
        self.free_rank() * self.algebra.dim() == self.dim
    }

    /// Basis of the socle: the joint kernel of all generator actions.
    pub fn socle_basis(&self) -> Vec<Vec<u32>> {
        if self.dim == 0 {
            return Vec::new();
        }
        let mut stacked = self.actions[0].clone();
        for a in &self.actions[1..] {
            stacked = stacked.vstack(a).expect("same cols");
        }
        stacked.kernel_basis()
    }

    /// Basis matrix of `rad M = sum_i im(A_i)` (columns).
    pub fn radical_matrix(&self) -> FpMatrix {
        if self.dim == 0 {
            return FpMatrix::zero(self.p(), 0, 0);
        }
        let mut stacked = self.actions[0].clone();
        for a in &self.actions[1..] {
            stacked = stacked.hstack(a).expect("same rows");
        }
        let basis = stacked.image_basis();
        let mut out = FpMatrix::zero(self.p(), self.dim, basis.len());
        for (j, v) in basis.iter().enumerate() {
            for (i, &e) in v.iter().enumerate() {
                out.set(i, j, e);
            }
        }
        out
    }

    /// Splits off free summands until the socle action vanishes.
    ///
    /// Returns the projective-free core and the number of stripped copies of
    /// `kG`. Each step takes the first standard basis vector `m` with
    /// `w·m != 0`; the cyclic module it generates is free and injective, so
    /// a retraction exists and is found by a canonical linear solve.
    pub fn strip_free_summands(self: &Arc<Self>) -> (Arc<Self>, usize) {
        let mut core = Arc::clone(self);
        let mut count = 0;
        loop {
            let w = core.socle_action();
            let Some(j) = (0..core.dim).find(|&j| w.column(j).iter().any(|&e| e != 0)) else {
                return (core, count);
            };
            let mut e_j = vec![0u32; core.dim];
            e_j[j] = 1;
            // inclusion kG -> core, monomial basis to its orbit
            let ag_dim = core.algebra.dim();
            let mut incl = FpMatrix::zero(core.p(), core.dim, ag_dim);
            for idx in 0..ag_dim {
                let v = core.apply_monomial(idx, &e_j);
                for (i, &e) in v.iter().enumerate() {
                    incl.set(i, idx, e);
                }
            }
            assert_eq!(
                incl.rank(),
                ag_dim,
                "witness does not generate a free summand"
            );
            let retraction = core
                .solve_retraction(&incl)
                .expect("free summand of a self-injective algebra must split");
            let kernel = retraction.kernel_matrix();
            let actions = core
                .actions
                .iter()
                .map(|a| {
                    let ak = a.mul(&kernel).expect("dims");
                    kernel.solve_matrix(&ak).expect("kernel is action-stable")
                })
                .collect();
            core = Self::from_parts_arc(Arc::clone(&core.algebra), actions);
            count += 1;
        }
    }

    /// Solves for a module retraction `r` with `r * incl = id` on the free
    /// summand embedded by `incl: kG -> self`.
    fn solve_retraction(&self, incl: &FpMatrix) -> Option<FpMatrix> {
        let p = self.p();
        let ag_dim = self.algebra.dim();
        let n = self.dim;
        let unknowns = ag_dim * n; // r[a][b] at index a*n + b
        let gen_count = self.algebra.rank();
        let rows = gen_count * ag_dim * n + ag_dim * ag_dim;
        let mut sys = FpMatrix::zero(p, rows, unknowns);
        let mut rhs = vec![0u32; rows];
        let mut row = 0;
        // r A_i = G_i r
        for i in 0..gen_count {
            let a = &self.actions[i];
            let g = self.algebra.gen_action(i);
            for out_r in 0..ag_dim {
                for out_c in 0..n {
                    for c in 0..n {
                        let v = a.get(c, out_c);
                        if v != 0 {
                            let idx = out_r * n + c;
                            sys.set(row, idx, (sys.get(row, idx) + v) % p);
                        }
                    }
                    for c in 0..ag_dim {
                        let v = g.get(out_r, c);
                        if v != 0 {
                            let idx = c * n + out_c;
                            sys.set(row, idx, (sys.get(row, idx) + p - v) % p);
                        }
                    }
                    row += 1;
                }
            }
        }
        // r * incl = id
        for out_r in 0..ag_dim {
            for out_c in 0..ag_dim {
                for c in 0..n {
                    let v = incl.get(c, out_c);
                    if v != 0 {
                        let idx = out_r * n + c;
                        sys.set(row, idx, (sys.get(row, idx) + v) % p);
                    }
                }
                rhs[row] = u32::from(out_r == out_c);
                row += 1;
            }
        }
        let sol = sys.solve(&rhs)?;
        let mut r = FpMatrix::zero(p, ag_dim, n);
        for a in 0..ag_dim {
            for b in 0..n {
                r.set(a, b, sol[a * n + b]);
            }
        }
        Some(r)
    }

    /// Minimal projective cover together with the embedded kernel.
    pub fn projective_cover(self: &Arc<Self>) -> CoverData {
        let p = self.p();
        let rad = self.radical_matrix();
        // deterministic top basis: first standard basis vectors extending
        // the radical to a spanning set, read off one row reduction of
        // [rad | I]
        let rad_cols = rad.cols();
        let aug = rad.hstack(&FpMatrix::identity(p, self.dim)).expect("rows");
        let (_, pivots) = aug.rref();
        let gens: Vec<usize> = pivots
            .iter()
            .filter(|&&c| c >= rad_cols)
            .map(|&c| c - rad_cols)
            .collect();
        let top = gens.len();
        let cover = KGModule::free(&self.algebra, top);
        let ag_dim = self.algebra.dim();
        let mut proj = FpMatrix::zero(p, self.dim, top * ag_dim);
        for (s, &j) in gens.iter().enumerate() {
            let mut e_j = vec![0u32; self.dim];
            e_j[j] = 1;
            for idx in 0..ag_dim {
                let v = self.apply_monomial(idx, &e_j);
                for (i, &e) in v.iter().enumerate() {
                    proj.set(i, s * ag_dim + idx, e);
                }
            }
        }
        let projection = ModuleHom::from_parts(Arc::clone(&cover), Arc::clone(self), proj.clone());
        let kernel_matrix = proj.kernel_matrix();
        let actions = cover
            .actions
            .iter()
            .map(|a| {
                let ak = a.mul(&kernel_matrix).expect("dims");
                kernel_matrix
                    .solve_matrix(&ak)
                    .expect("kernel is action-stable")
            })
            .collect();
        let kernel = Self::from_parts_arc(Arc::clone(&self.algebra), actions);
        let inclusion = ModuleHom::from_parts(Arc::clone(&kernel), cover.clone(), kernel_matrix);
        CoverData {
            cover,
            projection,
            kernel,
            inclusion,
        }
    }

    /// First syzygy: the kernel of a minimal projective cover.
    pub fn omega(self: &Arc<Self>) -> Arc<Self> {
        self.projective_cover().kernel
    }

    /// First cosyzygy, computed dually: `Ω^{-1}(M) = (Ω(M^*))^*`.
    pub fn omega_inverse(self: &Arc<Self>) -> Arc<Self> {
        self.dual().omega().dual()
    }

    /// Iterated syzygy; `n = 0` yields the projective-free core.
    pub fn omega_n(self: &Arc<Self>, n: i64) -> Arc<Self> {
        if n == 0 {
            return self.strip_free_summands().0;
        }
        let mut m = Arc::clone(self);
        if n > 0 {
            for _ in 0..n {
                m = m.omega();
            }
        } else {
            for _ in 0..(-n) {
                m = m.omega_inverse();
            }
        }
        m
    }
}

/// A projective cover `P ->> M` with its kernel `Ω(M)` embedded back in `P`.
pub struct CoverData {
    pub cover: Arc<KGModule>,
    pub projection: ModuleHom,
    pub kernel: Arc<KGModule>,
    pub inclusion: ModuleHom,
}

/// A homomorphism of `kG`-modules, stored as the matrix taking source
/// coordinates to target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    source: Arc<KGModule>,
    target: Arc<KGModule>,
    matrix: FpMatrix,
}

impl ModuleHom {
    /// Validating constructor: checks the intertwining relations.
    pub fn new(source: Arc<KGModule>, target: Arc<KGModule>, matrix: FpMatrix) -> Result<Self> {
        if source.algebra() != target.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                context: "module hom",
                left_rows: matrix.rows(),
                left_cols: matrix.cols(),
                right_rows: target.dim(),
                right_cols: source.dim(),
            });
        }
        for i in 0..source.algebra().rank() {
            let lhs = matrix.mul(source.action(i))?;
            let rhs = target.action(i).mul(&matrix)?;
            if lhs != rhs {
                return Err(Error::NotAHom(format!(
                    "does not intertwine generator {}",
                    i
                )));
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn from_parts(
        source: Arc<KGModule>,
        target: Arc<KGModule>,
        matrix: FpMatrix,
    ) -> Self {
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &Arc<KGModule>) -> Self {
        Self::from_parts(
            Arc::clone(m),
            Arc::clone(m),
            FpMatrix::identity(m.p(), m.dim()),
        )
    }

    pub fn zero(source: &Arc<KGModule>, target: &Arc<KGModule>) -> Self {
        Self::from_parts(
            Arc::clone(source),
            Arc::clone(target),
            FpMatrix::zero(source.p(), target.dim(), source.dim()),
        )
    }

    pub fn source(&self) -> &Arc<KGModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<KGModule> {
        &self.target
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleHom) -> Result<ModuleHom> {
        if inner.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                context: "compose",
                left_rows: self.matrix.rows(),
                left_cols: self.matrix.cols(),
                right_rows: inner.matrix.rows(),
                right_cols: inner.matrix.cols(),
            });
        }
        Ok(Self::from_parts(
            Arc::clone(&inner.source),
            Arc::clone(&self.target),
            self.matrix.mul(&inner.matrix)?,
        ))
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        Ok(Self::from_parts(
            Arc::clone(&self.source),
            Arc::clone(&self.target),
            self.matrix.add(&other.matrix)?,
        ))
    }

    pub fn scale(&self, c: u32) -> ModuleHom {
        Self::from_parts(
            Arc::clone(&self.source),
            Arc::clone(&self.target),
            self.matrix.scale(c),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.rank() == self.source.dim()
    }

    /// Inverse hom, when bijective.
    pub fn inverse(&self) -> Option<ModuleHom> {
        let inv = self.matrix.inverse()?;
        Some(Self::from_parts(
            Arc::clone(&self.target),
            Arc::clone(&self.source),
            inv,
        ))
    }

    /// Verifies the intertwining relations (for homs assembled by parts).
    pub fn verify(&self) -> Result<()> {
        Self::new(
            Arc::clone(&self.source),
            Arc::clone(&self.target),
            self.matrix.clone(),
        )
        .map(|_| ())
    }
}

/// Basis of `Hom_kG(M, N)` in canonical order: the kernel basis of the
/// intertwining system, free-variable order.
pub fn hom_space(m: &Arc<KGModule>, n: &Arc<KGModule>) -> Result<Vec<ModuleHom>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let p = m.p();
    let (sm, tn) = (m.dim(), n.dim());
    if sm == 0 || tn == 0 {
        return Ok(Vec::new());
    }
    let unknowns = sm * tn; // F[a][b] at a*sm + b, F maps source to target
    let gen_count = m.algebra().rank();
    let mut sys = FpMatrix::zero(p, gen_count * unknowns, unknowns);
    let mut row = 0;
    for i in 0..gen_count {
        let a = m.action(i);
        let b = n.action(i);
        // (F A - B F)[out_r][out_c] = 0
        for out_r in 0..tn {
            for out_c in 0..sm {
                for c in 0..sm {
                    let v = a.get(c, out_c);
                    if v != 0 {
                        let idx = out_r * sm + c;
                        sys.set(row, idx, (sys.get(row, idx) + v) % p);
                    }
                }
                for c in 0..tn {
                    let v = b.get(out_r, c);
                    if v != 0 {
                        let idx = c * sm + out_c;
                        sys.set(row, idx, (sys.get(row, idx) + p - v) % p);
                    }
                }
                row += 1;
            }
        }
    }
    let basis = sys.kernel_basis();
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut f = FpMatrix::zero(p, tn, sm);
            for a in 0..tn {
                for b in 0..sm {
                    f.set(a, b, v[a * sm + b]);
                }
            }
            ModuleHom::from_parts(Arc::clone(m), Arc::clone(n), f)
        })
        .collect())
}

/// Basis of the subspace of homs factoring through a projective module.
///
/// A map factors through some projective iff it factors through the
/// projective cover `P_N ->> N` (projectivity plus self-injectivity), so
/// this is the image of `Hom(M, P_N)` under composition with the cover map.
pub fn phom_space(m: &Arc<KGModule>, n: &Arc<KGModule>) -> Result<Vec<ModuleHom>> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let p = m.p();
    let cover = n.projective_cover();
    let through = hom_space(m, &cover.cover)?;
    let composed: Vec<FpMatrix> = through
        .iter()
        .map(|g| cover.projection.matrix().mul(g.matrix()).expect("dims"))
        .collect();
    let (sm, tn) = (m.dim(), n.dim());
    if composed.is_empty() || sm * tn == 0 {
        return Ok(Vec::new());
    }
    // reduce the spanning set to a basis given by pivot columns
    let mut stack = FpMatrix::zero(p, sm * tn, composed.len());
    for (j, f) in composed.iter().enumerate() {
        for a in 0..tn {
            for b in 0..sm {
                stack.set(a * sm + b, j, f.get(a, b));
            }
        }
    }
    let (_, pivots) = stack.rref();
    Ok(pivots
        .iter()
        .map(|&j| ModuleHom::from_parts(Arc::clone(m), Arc::clone(n), composed[j].clone()))
        .collect())
}

/// `Hom`, `PHom` and the stable quotient, packaged together.
pub struct StableHomSpace {
    pub hom: Vec<ModuleHom>,
    pub phom: Vec<ModuleHom>,
}

impl StableHomSpace {
    pub fn stable_dim(&self) -> usize {
        self.hom.len() - self.phom.len()
    }

    /// Does `f` factor through a projective?
    pub fn is_stably_zero(&self, f: &ModuleHom) -> bool {
        is_in_span(&self.phom, f)
    }

    /// Hom-basis elements whose classes form a basis of the stable quotient.
    pub fn stable_representatives(&self) -> Vec<&ModuleHom> {
        if self.hom.is_empty() {
            return Vec::new();
        }
        let p = self.hom[0].matrix().p();
        let len = self.hom[0].matrix().rows() * self.hom[0].matrix().cols();
        let cols = self.phom.len() + self.hom.len();
        let mut stack = FpMatrix::zero(p, len, cols);
        for (j, f) in self.phom.iter().chain(self.hom.iter()).enumerate() {
            for (i, v) in flatten(f.matrix()).into_iter().enumerate() {
                stack.set(i, j, v);
            }
        }
        let (_, pivots) = stack.rref();
        pivots
            .iter()
            .filter(|&&j| j >= self.phom.len())
            .map(|&j| &self.hom[j - self.phom.len()])
            .collect()
    }
}

fn flatten(m: &FpMatrix) -> Vec<u32> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            out.push(m.get(a, b));
        }
    }
    out
}

pub(crate) fn is_in_span(basis: &[ModuleHom], f: &ModuleHom) -> bool {
    if basis.is_empty() {
        return f.is_zero();
    }
    let p = f.matrix().p();
    let len = f.matrix().rows() * f.matrix().cols();
    let mut stack = FpMatrix::zero(p, len, basis.len());
    for (j, g) in basis.iter().enumerate() {
        for (i, v) in flatten(g.matrix()).into_iter().enumerate() {
            stack.set(i, j, v);
        }
    }
    stack.solve(&flatten(f.matrix())).is_some()
}

pub fn stable_hom(m: &Arc<KGModule>, n: &Arc<KGModule>) -> Result<StableHomSpace> {
    Ok(StableHomSpace {
        hom: hom_space(m, n)?,
        phom: phom_space(m, n)?,
    })
}

/// Outcome of the stable isomorphism search.
pub enum StableIso {
    /// An explicit isomorphism between the projective-free cores.
    Yes(ModuleHom),
    /// Provably not stably isomorphic; carries the invariant witness.
    No(String),
    /// Search budget exhausted without a verdict.
    Unknown,
}

/// Default budget for the exhaustive phase of the isomorphism search.
pub const DEFAULT_ISO_BUDGET: u64 = 1 << 20;

/// Decides stable isomorphism by stripping free summands and searching the
/// hom space between the cores for an invertible element (its inverse is
/// then automatically a module hom).
///
/// The search is deterministic: single basis elements, then two-element
/// combinations, then a fixed-seed randomized phase, then the full
/// coefficient grid in lexicographic order when `p^dim` fits the budget.
pub fn is_stably_isomorphic(
    m: &Arc<KGModule>,
    n: &Arc<KGModule>,
    budget: u64,
) -> Result<StableIso> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let (core_m, _) = m.strip_free_summands();
    let (core_n, _) = n.strip_free_summands();
    if core_m.dim() != core_n.dim() {
        return Ok(StableIso::No(format!(
            "projective-free cores have different dimensions: {} vs {}",
            core_m.dim(),
            core_n.dim()
        )));
    }
    if core_m.dim() == 0 {
        return Ok(StableIso::Yes(ModuleHom::from_parts(
            core_m,
            core_n,
            FpMatrix::zero(m.p(), 0, 0),
        )));
    }
    let basis = hom_space(&core_m, &core_n)?;
    let p = m.p();
    let h = basis.len();
    let found = |cand: FpMatrix| {
        StableIso::Yes(ModuleHom::from_parts(
            Arc::clone(&core_m),
            Arc::clone(&core_n),
            cand,
        ))
    };
    // singles
    for f in &basis {
        if f.matrix().is_invertible() {
            return Ok(found(f.matrix().clone()));
        }
    }
    // pairs
    for i in 0..h {
        for j in (i + 1)..h {
            for a in 1..p {
                for b in 1..p {
                    let cand = basis[i]
                        .matrix()
                        .scale(a)
                        .add(&basis[j].matrix().scale(b))
                        .expect("shape");
                    if cand.is_invertible() {
                        return Ok(found(cand));
                    }
                }
            }
        }
    }
    // fixed-seed randomized phase
    let mut rng = XorShift64::new(0x5EED_0001);
    for _ in 0..2000 {
        let mut cand = FpMatrix::zero(p, core_n.dim(), core_m.dim());
        for f in &basis {
            let c = rng.below(p);
            if c != 0 {
                cand = cand.add(&f.matrix().scale(c)).expect("shape");
            }
        }
        if cand.is_invertible() {
            return Ok(found(cand));
        }
    }
    // exhaustive grid, lexicographic
    if let Some(total) = u64::from(p).checked_pow(h as u32) {
        if total <= budget {
            let mut coeffs = vec![0u32; h];
            loop {
                let mut k = 0;
                while k < h {
                    coeffs[k] += 1;
                    if coeffs[k] < p {
                        break;
                    }
                    coeffs[k] = 0;
                    k += 1;
                }
                if k == h {
                    break;
                }
                let mut cand = FpMatrix::zero(p, core_n.dim(), core_m.dim());
                for (f, &c) in basis.iter().zip(&coeffs) {
                    if c != 0 {
                        cand = cand.add(&f.matrix().scale(c)).expect("shape");
                    }
                }
                if cand.is_invertible() {
                    return Ok(found(cand));
                }
            }
            return Ok(StableIso::No(
                "hom space between cores contains no invertible element".into(),
            ));
        }
    }
    Ok(StableIso::Unknown)
}

/// Wire format: `{"algebra": {...}, "dim": d, "actions": [matrix, ...]}`.
#[derive(Serialize, Deserialize)]
struct ModuleJson {
    algebra: GroupAlgebra,
    dim: usize,
    actions: Vec<FpMatrix>,
}

impl Serialize for KGModule {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ModuleJson {
            algebra: (*self.algebra).clone(),
            dim: self.dim,
            actions: self.actions.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KGModule {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = ModuleJson::deserialize(deserializer)?;
        let m = KGModule::from_parts(Arc::new(raw.algebra), raw.actions);
        if m.dim() != raw.dim {
            return Err(serde::de::Error::custom("declared dimension mismatch"));
        }
        m.validate().map_err(serde::de::Error::custom)?;
        Ok(m)
    }
}
