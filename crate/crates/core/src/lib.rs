//! Spin and pin structures on closed surfaces, modeled as quadratic
//! functions on mod-2 homology.
//!
//! Spin structures on an orientable surface correspond to quadratic
//! refinements `q: H_1 -> Z/2` of the intersection form, classified up to
//! bordism by the Arf invariant. Pin- structures correspond to quadratic
//! enhancements `e: H_1 -> Z/4`, classified by the Z/8-valued Brown
//! invariant. Pin+ structures correspond to Z/2-valued quadratic functions
//! on mod-4 homology and exist on `N_k` only for even `k`.
//!
//! Every invariant here is computed by exhaustive enumeration over the
//! `2^n` homology classes, and the census tables are cross-checked against
//! closed forms and a recursion.

pub mod census;
pub mod enhancement;
pub mod error;
pub mod forms;
pub mod orbits;
pub mod pinplus;
pub mod refinement;
pub mod verify;

pub use census::{
    bordism_class, cobordant, pin_census_closed_form, pin_census_enumerated, pin_census_recursive,
    BordismClass, Census, ClosedFormCensus, Dispute, Provenance, Structure, Theory,
};
pub use enhancement::{BrownClass, Enhancement, ValueHistogram};
pub use error::{Error, Result};
pub use forms::{make_surface, H1Class, IntersectionForm, Surface, SurfaceKind};
pub use orbits::{act, GroupLimits, GroupMethod, Isometry, OrbitPartition};
pub use pinplus::{PinPlusForm, WellDefinedness, Z4HomologyModel};
pub use refinement::{spin_census, Refinement};
