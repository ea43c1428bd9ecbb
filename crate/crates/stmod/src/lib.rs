//! Exact-arithmetic toolkit for stable module categories of finite abelian
//! p-group algebras.
//!
//! The algebras in play are truncated polynomial rings
//! `k[X_1..X_r]/(X_i^{e_i})` over a prime field `F_p`, with each `e_i` a power
//! of `p`. Modules are given by commuting nilpotent action matrices. On top of
//! that substrate the crate computes:
//!
//! * syzygies `Ω^{±n}`, stable hom spaces, projectivity tests and free-summand
//!   stripping ([`module`]);
//! * minimal resolutions, resolution modules of shape `M` and `N` built from a
//!   complex over a tensor factor `kH`, and the canonical exact sequence
//!   `0 → M → k ⊕ Q → N → 0` ([`complex`], [`resmod`], [`canonical`]);
//! * negative Tate cohomology of `kH` with its chain-map product, endomorphism
//!   ring tables, support reports over rational and small extension points,
//!   and locality decay profiles ([`tate`]).
//!
//! Everything is exact arithmetic over `F_p`; all constructions are
//! deterministic so that serialized outputs are byte-for-byte reproducible.
//! The `stmod` binary exposes the batch CLI (see [`cli`]).
//!
//! ```
//! use stmod::algebra::GroupAlgebra;
//! use stmod::module::KGModule;
//!
//! // syzygies of the trivial module over the Klein four algebra grow by
//! // two dimensions per step, in both directions
//! let algebra = GroupAlgebra::new(2, vec![2, 2])?;
//! let k = KGModule::trivial(&algebra);
//! assert_eq!(k.omega_n(2).dim(), 5);
//! assert_eq!(k.omega_n(-2).dim(), 5);
//! # Ok::<(), stmod::Error>(())
//! ```

pub mod algebra;
pub mod canonical;
pub mod cli;
pub mod complex;
mod error;
pub mod ff;
pub mod module;
pub mod resmod;
mod rng;
pub mod tate;

pub use error::{Error, Result};
