//! Fixtures shared by the benchmarks in `benches/`.

use std::sync::Arc;

use pinsurf_core::{Enhancement, Surface, SurfaceKind};

/// A deterministic enhancement on the standard surface of the given kind.
pub fn fixed_enhancement(kind: SurfaceKind) -> Enhancement {
    let surface = Surface::new(kind).expect("standard surface");
    let choice = 0x5a5a_5a5a_5a5a_5a5a & ((1u64 << surface.dim()) - 1);
    Enhancement::from_choice(Arc::clone(surface.form()), choice).expect("choice fits")
}
