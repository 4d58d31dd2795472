//! Large-`n` limit of the lattice: spectral data, the equilibrium cubic, the
//! level function `L(s)` and the bow-tie boundary.

pub mod boundary;
pub mod branch;
pub mod compare;
pub mod cubic;
pub mod lfunc;
pub mod spectral;

pub use boundary::{boundary_curve, BoundaryCurve, Segment, SegmentKind};
pub use branch::{corner_points, corner_radius, equilibrium_u_complex, s_of_y};
pub use compare::{compare_exact_vs_asymptotic, ComparePoint, CompareRow, CompareTable};
pub use cubic::{cubic_roots, equilibrium_u_real};
pub use lfunc::{l_of_s, DEFAULT_NODES};
pub use spectral::{critical_y, spectral, SpectralData};
