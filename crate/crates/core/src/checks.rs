//! Runtime switches for the two classes of optional checking.
//!
//! * **debug checks** re-run [`ViewDescriptor::check_invariants`] after every
//!   constructor and transform and panic on a violation.
//! * **argument checks** validate coordinates and scalar indices on the
//!   element-access hot paths ([`View::get`], [`ViewMut::set`], the `Index`
//!   impls, cursors). With them off, a bad coordinate can still only hit an
//!   in-buffer element or panic on the slice bound; it never reads out of
//!   bounds.
//!
//! Both default to on in debug builds and off in release builds. Structural
//! operations (construction, transforms, reshape, resize, assignment) always
//! validate their arguments regardless of these switches.
//!
//! [`ViewDescriptor::check_invariants`]: crate::ViewDescriptor::check_invariants
//! [`View::get`]: crate::View::get
//! [`ViewMut::set`]: crate::ViewMut::set

use std::sync::atomic::{AtomicBool, Ordering};

static DEBUG_CHECKS: AtomicBool = AtomicBool::new(cfg!(debug_assertions));
static ARG_CHECKS: AtomicBool = AtomicBool::new(cfg!(debug_assertions));

#[inline]
pub fn debug_checks() -> bool {
    DEBUG_CHECKS.load(Ordering::Relaxed)
}

pub fn set_debug_checks(on: bool) {
    DEBUG_CHECKS.store(on, Ordering::Relaxed);
}

#[inline]
pub fn arg_checks() -> bool {
    ARG_CHECKS.load(Ordering::Relaxed)
}

pub fn set_arg_checks(on: bool) {
    ARG_CHECKS.store(on, Ordering::Relaxed);
}
