//! The combinatorial model of the 0+1+1-dimensional cobordism bicategory.
//!
//! Objects are ordered lists of signed points; 1-morphisms are collared
//! 1-cobordisms held in canonical form (so equality of canonical forms
//! decides isotopy class); framed spheres, surgery and complements follow
//! the handle calculus, and diffeomorphisms reduce to bare-circle
//! permutations.

mod cob;
mod diffeo;
mod sphere;
mod surgery;

pub use cob::{
    ArcMark, BareOrigin, CircleOrigin, Cob1, ComposeTrace, Interval, Piece, PointConfig, Side,
    Sign, Slot, SphereId, UnionTrace,
};
pub use diffeo::{
    cancellation_diffeo, extract_plan, induced_diffeo, transport_plan, transport_sphere, Diffeo,
};
pub use sphere::{
    all_sites, apply_plan, enumerate_framed_spheres, enumerate_k1_plans, place_k1, ArcSite,
    CompRef, FramedSphere, Placed, SpherePlan,
};
pub use surgery::{
    complement, fresh_id, intersection_number, reverse_plan, reverse_sphere, source_piece,
    surgery, surgery_traced, target_piece, BeltLocus, Intersection, JoinKind, SurgeryTrace,
};
