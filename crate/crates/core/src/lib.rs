//! Exact computer-algebra toolkit for equivariant Pfaffian hypersurfaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactfield`]: Q, Q(ζ_n), GF(p) and small index fields.
//! * [`linalg`]: dense matrices over any exact field.
//! * [`polyring`]: sparse multivariate polynomials and linear substitutions.
//! * [`reptheory`]: finite matrix groups, characters and equivariant maps.
//! * [`pfaffian`]: skew matrices of linear forms and their Pfaffians.
//! * [`varietylab`]: mod-p geometry (Gröbner bases, point censuses, lines).
//! * [`verifyctl`]: fixtures, the verification suite and its report.

pub mod exactfield;
pub mod linalg;
pub mod pfaffian;
pub mod polyring;
pub mod reptheory;
pub mod varietylab;
pub mod verifyctl;
pub mod wedge;
