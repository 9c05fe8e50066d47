//! Isothermic triangulated surfaces.
//!
//! A realization is isothermic when it carries a nonzero self-stress of its
//! light-cone lift. This crate finds those stresses ([`isothermic`]), builds the
//! infinitesimal deformations they generate ([`deform`]), moves them through
//! Möbius maps ([`moebius`]) and integrates them into discrete minimal surfaces
//! ([`minimal`]). Quad nets with real cross ratios live in [`quadnet`].
//!
//! ```
//! use isoform::generators::grid_disk;
//! use isoform::isothermic::isothermic_basis;
//!
//! let r = grid_disk(4).unwrap();
//! let basis = isothermic_basis(&r, 1e-8);
//! assert!(basis.nullity() >= r.mesh().boundary_vertices().len() - 3);
//! ```

pub mod cli;
pub mod deform;
pub mod expr;
pub mod generators;
pub mod harmonic;
pub mod isothermic;
pub mod linalg;
pub mod mesh;
pub mod minimal;
pub mod moebius;
pub mod quadnet;
