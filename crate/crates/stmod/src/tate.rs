//! Negative Tate cohomology of `kH` through a minimal resolution, the
//! chain-map product, endomorphism ring tables, support reports over
//! rational and degree-two extension points, locality decay profiles, and
//! the periodic localization cross-check for cyclic `H`.
//!
//! For a minimal resolution the degree `-n-1` group is `Hom(k, P_n)`, the
//! socle of `P_n`, with no quotient to take: boundaries kill socles, so
//! homotopy choices never reach the stored representative.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{GroupAlgebra, SplitAlgebra};
use crate::complex::{lift_chain_map, minimal_resolution, AugmentedResolution};
use crate::error::{Error, Result};
use crate::ff::FpMatrix;
use crate::module::{phom_space, stable_hom, KGModule, ModuleHom};
use crate::resmod::ResolutionModule;

/// A homogeneous Tate cohomology element of `kH`.
///
/// Degree `d <= -1` is represented by a socle vector of `P_{-d-1}`; degree
/// zero by a scalar multiple of the unit; degree `d >= 1` by a cocycle
/// functional on `P_d` (products in positive degrees are out of scope, the
/// representative only feeds dimension bookkeeping).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateClass {
    degree: i64,
    rep: Vec<u32>,
}

impl TateClass {
    pub fn unit(scalar: u32) -> Self {
        Self {
            degree: 0,
            rep: vec![scalar],
        }
    }

    /// A negative-degree class from its socle representative in `P_{-d-1}`.
    pub fn negative(resolution: &AugmentedResolution, degree: i64, rep: Vec<u32>) -> Result<Self> {
        if degree >= 0 {
            return Err(Error::InvalidInput("degree must be negative".into()));
        }
        let idx = (-degree - 1) as usize;
        if idx > resolution.top_degree() {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let module = resolution.module(idx);
        if rep.len() != module.dim() {
            return Err(Error::InvalidInput(
                "representative has the wrong length".into(),
            ));
        }
        for g in 0..module.algebra().rank() {
            if module.action(g).apply(&rep)?.iter().any(|&v| v != 0) {
                return Err(Error::InvalidInput(
                    "representative is not a socle vector".into(),
                ));
            }
        }
        Ok(Self { degree, rep })
    }

    /// A positive-degree class from a cocycle functional on `P_d` (a
    /// module map `P_d -> k`, i.e. a functional killing the radical).
    pub fn positive(resolution: &AugmentedResolution, degree: i64, rep: Vec<u32>) -> Result<Self> {
        if degree <= 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        let idx = degree as usize;
        if idx > resolution.top_degree() {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let module = resolution.module(idx);
        if rep.len() != module.dim() {
            return Err(Error::InvalidInput(
                "representative has the wrong length".into(),
            ));
        }
        for g in 0..module.algebra().rank() {
            // functional composed with the action must vanish
            let composed = module.action(g).transpose().apply(&rep)?;
            if composed.iter().any(|&v| v != 0) {
                return Err(Error::InvalidInput(
                    "functional does not kill the radical".into(),
                ));
            }
        }
        Ok(Self { degree, rep })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn rep(&self) -> &[u32] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&v| v == 0)
    }
}

/// Graded dimension of `Ĥ^d(H, k)` read off a minimal resolution.
///
/// Positive degrees count resolution generators (every functional on `P_d`
/// is a cocycle and none bounds); negative degrees count socle vectors of
/// `P_{-d-1}` by an independent kernel computation; degree zero is
/// one-dimensional for a nontrivial p-group (the norm map vanishes).
pub fn tate_dim(resolution: &AugmentedResolution, d: i64) -> Result<usize> {
    if d == 0 {
        return Ok(1);
    }
    if d >= 1 {
        let idx = d as usize;
        if idx > resolution.top_degree() {
            return Err(Error::DegreeOutOfRange(d));
        }
        return Ok(resolution.betti()[idx]);
    }
    let idx = (-d - 1) as usize;
    if idx > resolution.top_degree() {
        return Err(Error::DegreeOutOfRange(d));
    }
    Ok(resolution.module(idx).socle_basis().len())
}

/// Canonical basis of `Ĥ^d(H, k)` for `d <= -1`: the socle basis of
/// `P_{-d-1}` in kernel order.
pub fn negative_basis(resolution: &AugmentedResolution, d: i64) -> Result<Vec<TateClass>> {
    if d >= 0 {
        return Err(Error::InvalidInput("degree must be negative".into()));
    }
    let idx = (-d - 1) as usize;
    if idx > resolution.top_degree() {
        return Err(Error::DegreeOutOfRange(d));
    }
    Ok(resolution
        .module(idx)
        .socle_basis()
        .into_iter()
        .map(|rep| TateClass { degree: d, rep })
        .collect())
}

/// Canonical basis of `Ĥ^d(H, k)` for `d >= 1`: the cocycle functionals on
/// `P_d`, i.e. the joint kernel of the transposed actions.
pub fn positive_basis(resolution: &AugmentedResolution, d: i64) -> Result<Vec<TateClass>> {
    if d <= 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let idx = d as usize;
    if idx > resolution.top_degree() {
        return Err(Error::DegreeOutOfRange(d));
    }
    let module = resolution.module(idx);
    let mut stacked: Option<FpMatrix> = None;
    for a in module.actions() {
        let t = a.transpose();
        stacked = Some(match stacked {
            None => t,
            Some(s) => s.vstack(&t)?,
        });
    }
    let kernel = stacked.map(|s| s.kernel_basis()).unwrap_or_default();
    Ok(kernel
        .into_iter()
        .map(|rep| TateClass { degree: d, rep })
        .collect())
}

/// Product of two classes of degree `<= 0` by chain-map composition: lift
/// the first factor and read off its component at the second factor's
/// representative.
pub fn negative_product(
    resolution: &AugmentedResolution,
    a: &TateClass,
    b: &TateClass,
) -> Result<TateClass> {
    if a.degree > 0 || b.degree > 0 {
        return Err(Error::InvalidInput(
            "product is computed for degrees <= 0".into(),
        ));
    }
    if a.degree == 0 {
        let scaled: Vec<u32> = b
            .rep
            .iter()
            .map(|&v| {
                (u64::from(v) * u64::from(a.rep[0]) % u64::from(resolution.algebra().p())) as u32
            })
            .collect();
        return Ok(TateClass {
            degree: b.degree,
            rep: scaled,
        });
    }
    if b.degree == 0 {
        return negative_product(resolution, b, a);
    }
    let am = (-a.degree - 1) as usize;
    let bm = (-b.degree - 1) as usize;
    if am + bm + 1 > resolution.top_degree() {
        return Err(Error::DegreeOutOfRange(a.degree + b.degree));
    }
    let lift = lift_chain_map(resolution, am, &a.rep)?;
    let rep = lift.component(bm).apply(&b.rep)?;
    Ok(TateClass {
        degree: a.degree + b.degree,
        rep,
    })
}

/// Same product, but read off a lift perturbed by a seeded null-homotopy.
/// Well-definedness means the result never depends on the seed.
pub fn negative_product_perturbed(
    resolution: &AugmentedResolution,
    a: &TateClass,
    b: &TateClass,
    seed: u64,
) -> Result<TateClass> {
    if a.degree >= 0 || b.degree >= 0 {
        return Err(Error::InvalidInput(
            "perturbed product needs strictly negative degrees".into(),
        ));
    }
    let am = (-a.degree - 1) as usize;
    let bm = (-b.degree - 1) as usize;
    if am + bm + 1 > resolution.top_degree() {
        return Err(Error::DegreeOutOfRange(a.degree + b.degree));
    }
    let lift = lift_chain_map(resolution, am, &a.rep)?;
    let perturbed = crate::complex::perturb_lift(resolution, &lift, seed)?;
    crate::complex::verify_lift(resolution, &perturbed)?;
    let rep = perturbed.component(bm).apply(&b.rep)?;
    Ok(TateClass {
        degree: a.degree + b.degree,
        rep,
    })
}

/// Expresses a negative class in the canonical socle basis of its degree.
pub fn coefficients_in_basis(
    resolution: &AugmentedResolution,
    class: &TateClass,
) -> Result<Vec<u32>> {
    let basis = negative_basis(resolution, class.degree)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let p = resolution.algebra().p();
    let mut stack = FpMatrix::zero(p, class.rep.len(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (i, &v) in b.rep.iter().enumerate() {
            stack.set(i, j, v);
        }
    }
    stack
        .solve(&class.rep)
        .ok_or_else(|| Error::InvalidInput("class does not lie in the socle span".into()))
}

/// One structure constant row of the endomorphism table: the product of
/// basis classes `a` and `b` expanded in the basis of its degree.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ProductEntry {
    /// `(degree, basis index)` of the left factor.
    pub a: (i64, usize),
    /// `(degree, basis index)` of the right factor.
    pub b: (i64, usize),
    pub result: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TableFlags {
    /// Every product of two strictly negative classes in the window is zero.
    pub radical_square_zero: bool,
    /// All graded dimensions are 1 and every product in the window of
    /// strictly negative basis classes is nonzero.
    pub periodic_structure: bool,
}

/// The ring `Ĥ^{<= 0}(H, k)` in degrees `0, -1, ..., -N`: graded dimensions
/// and all structure constants landing inside the window. The degree-zero
/// unit is normalized to the augmentation class and acts as the identity.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EndoRingTable {
    #[serde(rename = "H")]
    pub h: GroupAlgebra,
    #[serde(rename = "N")]
    pub bound: usize,
    /// `dims[d]` is the dimension in degree `-d`.
    pub dims: Vec<usize>,
    pub products: Vec<ProductEntry>,
    pub flags: TableFlags,
}

/// Computes the table over a fresh minimal resolution of length `bound`.
pub fn endo_ring_table(h: &Arc<GroupAlgebra>, bound: usize) -> Result<EndoRingTable> {
    if bound == 0 {
        return Err(Error::InvalidInput("degree bound must be positive".into()));
    }
    let k = KGModule::trivial(h);
    let resolution = minimal_resolution(&k, bound)?;
    endo_ring_table_over(&resolution, bound)
}

/// Same table over a caller-supplied minimal resolution.
pub fn endo_ring_table_over(
    resolution: &AugmentedResolution,
    bound: usize,
) -> Result<EndoRingTable> {
    let mut dims = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        dims.push(tate_dim(resolution, -(d as i64))?);
    }
    let mut bases: Vec<Vec<TateClass>> = vec![vec![TateClass::unit(1)]];
    for d in 1..=bound {
        bases.push(negative_basis(resolution, -(d as i64))?);
    }
    let mut products = Vec::new();
    let mut radical_square_zero = true;
    let mut all_neg_products_nonzero = true;
    for da in 0..=bound {
        for ia in 0..bases[da].len() {
            for db in 0..=bound {
                if da + db > bound {
                    continue;
                }
                for ib in 0..bases[db].len() {
                    let prod = negative_product(resolution, &bases[da][ia], &bases[db][ib])?;
                    let result = if prod.degree == 0 {
                        prod.rep.clone()
                    } else {
                        coefficients_in_basis(resolution, &prod)?
                    };
                    if da > 0 && db > 0 {
                        if result.iter().any(|&v| v != 0) {
                            radical_square_zero = false;
                        } else {
                            all_neg_products_nonzero = false;
                        }
                    }
                    products.push(ProductEntry {
                        a: (-(da as i64), ia),
                        b: (-(db as i64), ib),
                        result,
                    });
                }
            }
        }
    }
    let periodic_structure = dims.iter().all(|&d| d == 1) && all_neg_products_nonzero;
    Ok(EndoRingTable {
        h: (**resolution.algebra()).clone(),
        bound,
        dims,
        products,
        flags: TableFlags {
            radical_square_zero,
            periodic_structure,
        },
    })
}

/// Freeness verdict of one pi-point restriction; `lambda` entries are
/// integers in `[0, p^d)` encoding `sum_i digit_i ξ^i` over the degree-`d`
/// extension (plain residues when `d = 1`).
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SupportEntry {
    pub lambda: Vec<u32>,
    pub field_degree: u32,
    pub free: bool,
}

/// Per-point freeness of one module; serializes as the bare entry list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub module_dim: usize,
    pub entries: Vec<SupportEntry>,
}

impl Serialize for SupportReport {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl SupportReport {
    /// The entry for a given rational point, if present.
    pub fn rational(&self, lambda: &[u32]) -> Option<&SupportEntry> {
        self.entries
            .iter()
            .find(|e| e.field_degree == 1 && e.lambda == lambda)
    }
}

/// Smallest monic irreducible `x^2 - c1 x - c0` over `F_p`, by direct search.
fn quadratic_extension(p: u32) -> (u32, u32) {
    for c1 in 0..p {
        for c0 in 0..p {
            let irreducible = (0..p).all(|x| {
                let lhs = (u64::from(x) * u64::from(x)) % u64::from(p);
                let rhs = (u64::from(c1) * u64::from(x) + u64::from(c0)) % u64::from(p);
                lhs != rhs
            });
            if irreducible {
                return (c1, c0);
            }
        }
    }
    unreachable!("a quadratic extension of F_p always exists")
}

/// Multiplication matrix of `a + b ξ` on the basis `(1, ξ)` where
/// `ξ^2 = c1 ξ + c0`.
fn ext_mult_matrix(p: u32, a: u32, b: u32, c1: u32, c0: u32) -> FpMatrix {
    let m = u64::from(p);
    let entries = vec![
        a,
        (u64::from(b) * u64::from(c0) % m) as u32,
        b,
        ((u64::from(a) + u64::from(b) * u64::from(c1)) % m) as u32,
    ];
    FpMatrix::new(p, 2, 2, entries).expect("valid entries")
}

/// Restriction freeness at every projective-space point over `F_{p^d}` for
/// `d <= max_degree` (at most 2), points deduplicated by normalizing the
/// first nonzero coordinate to 1 and enumerated in lexicographic order.
pub fn support_report(module: &Arc<KGModule>, max_degree: u32) -> Result<SupportReport> {
    let algebra = module.algebra();
    if !algebra.is_elementary_abelian() {
        return Err(Error::NotElementaryAbelian);
    }
    if max_degree == 0 || max_degree > 2 {
        return Err(Error::InvalidInput(
            "extension degree must be 1 or 2".into(),
        ));
    }
    let p = algebra.p();
    let r = algebra.rank();
    let mut entries = Vec::new();

    // rational points
    for lambda in normalized_points(p, r) {
        let mut action = FpMatrix::zero(p, module.dim(), module.dim());
        for (i, &c) in lambda.iter().enumerate() {
            if c != 0 {
                action = action.add(&module.action(i).scale(c))?;
            }
        }
        let top = action.pow(p - 1)?.rank();
        entries.push(SupportEntry {
            lambda,
            field_degree: 1,
            free: top * p as usize == module.dim(),
        });
    }

    if max_degree >= 2 {
        let (c1, c0) = quadratic_extension(p);
        let q = p * p;
        for lambda in normalized_points(q, r) {
            // skip points already rational (all digits of degree zero)
            if lambda.iter().all(|&c| c < p) {
                continue;
            }
            let mut action = FpMatrix::zero(p, 2 * module.dim(), 2 * module.dim());
            for (i, &c) in lambda.iter().enumerate() {
                if c != 0 {
                    let mult = ext_mult_matrix(p, c % p, c / p, c1, c0);
                    action = action.add(&mult.kronecker(module.action(i))?)?;
                }
            }
            let top = action.pow(p - 1)?.rank();
            entries.push(SupportEntry {
                lambda,
                field_degree: 2,
                free: top * p as usize == 2 * module.dim(),
            });
        }
    }

    Ok(SupportReport {
        module_dim: module.dim(),
        entries,
    })
}

/// Tuples in `[0, q)^r` whose first nonzero coordinate is 1, ascending.
fn normalized_points(q: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; r];
    loop {
        // advance the little-endian counter
        let mut k = r;
        for i in (0..r).rev() {
            current[i] += 1;
            if current[i] < q {
                k = i;
                break;
            }
            current[i] = 0;
        }
        if k == r {
            break;
        }
        if current.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(current.clone());
        }
    }
    out
}

/// The module `kG ⊗_kC k`: the regular `kH`-module with `Z` acting as zero,
/// supported exactly at the `Z`-point.
pub fn h_regular_z_zero(split: &SplitAlgebra) -> Arc<KGModule> {
    let g = split.g();
    let h = split.h();
    let actions = (0..g.rank())
        .map(|gen| {
            if gen == split.z_gen() {
                FpMatrix::zero(g.p(), h.dim(), h.dim())
            } else {
                let t = split
                    .h_gens()
                    .iter()
                    .position(|&i| i == gen)
                    .expect("generator belongs to H");
                h.gen_action(t).clone()
            }
        })
        .collect();
    KGModule::from_parts_arc(Arc::clone(g), actions)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DecayEntry {
    pub class_index: usize,
    /// Least `m` with the class stably zero in `N(P, n+m)`, when found.
    pub died_at: Option<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DecayReport {
    pub base_truncation: usize,
    pub m_max: usize,
    pub initial_stable_dim: usize,
    pub entries: Vec<DecayEntry>,
    pub all_decay: bool,
}

/// Follows every stable-hom class `T -> N(P, n)` through the inclusions
/// `N(P, n) -> N(P, n+m)` and records the first stage where it dies.
/// Non-decay within the budget is a reported finding, not an error.
pub fn locality_decay_check(
    split: &SplitAlgebra,
    t_module: &Arc<KGModule>,
    resolution: &AugmentedResolution,
    n: usize,
    m_max: usize,
) -> Result<DecayReport> {
    let stages: Vec<ResolutionModule> = (0..=m_max)
        .map(|m| ResolutionModule::build_n(split, resolution, n + m))
        .collect::<Result<_>>()?;
    let base = &stages[0];
    let sh = stable_hom(t_module, base.module())?;
    let reps: Vec<ModuleHom> = sh.stable_representatives().into_iter().cloned().collect();
    // inclusions and projective-factorization bases depend on the stage only
    let mut inclusions = Vec::with_capacity(stages.len());
    let mut phoms = Vec::with_capacity(stages.len());
    for stage in &stages {
        inclusions.push(base.inclusion(stage)?);
        phoms.push(phom_space(t_module, stage.module())?);
    }
    let mut entries = Vec::new();
    for (class_index, f) in reps.iter().enumerate() {
        let mut died_at = None;
        for m in 0..stages.len() {
            let composite = inclusions[m].compose(f)?;
            if crate::module::is_in_span(&phoms[m], &composite) {
                died_at = Some(m);
                break;
            }
        }
        entries.push(DecayEntry {
            class_index,
            died_at,
        });
    }
    let all_decay = entries.iter().all(|e| e.died_at.is_some());
    Ok(DecayReport {
        base_truncation: n,
        m_max,
        initial_stable_dim: reps.len(),
        entries,
        all_decay,
    })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LocalizationView {
    /// Degree of the inverted regular element.
    pub periodicity: usize,
    /// `dim H^j(G, k)` for `j = 0..=N*m`, from Betti numbers over `kG`.
    pub g_cohomology_dims: Vec<usize>,
    /// Growth of the degree-zero filtration per inverted power.
    pub window_jumps: Vec<usize>,
    /// Matching sums of negative Tate dimensions of `kH` per window.
    pub tate_window_sums: Vec<usize>,
    pub endo_dims: Vec<usize>,
    pub dims_match: bool,
    pub products_match: bool,
    pub matches: bool,
}

/// For cyclic `H`, compares the degree-zero part of the localized
/// cohomology of `G = H x C` (filtered by powers of the inverted regular
/// element) against the endomorphism table of `kH`: the filtration jumps
/// must equal the negative Tate dimensions window by window, and the table
/// must carry the periodic product structure.
pub fn localization_ring_view(h: &Arc<GroupAlgebra>, bound: usize) -> Result<LocalizationView> {
    if h.rank() != 1 {
        return Err(Error::NotCyclic(h.rank()));
    }
    if bound == 0 {
        return Err(Error::InvalidInput("degree bound must be positive".into()));
    }
    let p = h.p();
    let q = h.exponents()[0];
    // H^*(H) is polynomial on a degree-1 class only for kH = k[Y]/(Y^2);
    // otherwise the regular element sits in degree 2
    let m = if p == 2 && q == 2 { 1 } else { 2 };
    let g = GroupAlgebra::new(p, vec![q, p])?;
    let k_g = KGModule::trivial(&g);
    let g_res = minimal_resolution(&k_g, bound * m)?;
    let g_cohomology_dims = g_res.betti().to_vec();

    let k_h = KGModule::trivial(h);
    let h_res = minimal_resolution(&k_h, bound * m)?;
    let table = endo_ring_table_over(&h_res, bound * m)?;

    let mut window_jumps = Vec::with_capacity(bound);
    let mut tate_window_sums = Vec::with_capacity(bound);
    for w in 1..=bound {
        window_jumps.push(g_cohomology_dims[w * m] - g_cohomology_dims[(w - 1) * m]);
        let mut sum = 0;
        for d in ((w - 1) * m + 1)..=(w * m) {
            sum += tate_dim(&h_res, -(d as i64))?;
        }
        tate_window_sums.push(sum);
    }
    let dims_match = window_jumps == tate_window_sums && table.dims.iter().all(|&d| d == 1);
    // inverting a regular element of degree m means multiplication by its
    // inverse class in degree -m must stay nonzero throughout the window
    let products_match = table
        .products
        .iter()
        .filter(|e| e.b == (-(m as i64), 0) && e.a.0 >= -((bound * m - m) as i64))
        .all(|e| e.result.iter().any(|&v| v != 0));
    Ok(LocalizationView {
        periodicity: m,
        g_cohomology_dims,
        window_jumps,
        tate_window_sums,
        endo_dims: table.dims.clone(),
        dims_match,
        products_match,
        matches: dims_match && products_match,
    })
}
