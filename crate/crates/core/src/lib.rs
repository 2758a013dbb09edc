//! Quadratic Lagrange spectra at desk scale.
//!
//! * [`exactnum`] — exact quadratic surds, Möbius maps, binary quadratic forms
//! * [`hgeom`] — real hyperbolic geometry in the upper half-space
//! * [`orbit`] — certified enumeration of orbits of quadratic irrationals
//! * [`spectrum`] — approximation constants and spectrum sampling
//! * [`penetration`] — penetration sequences and neighbourhood diameters
//! * [`chc`] — Heisenberg group and Cygan metrics
//! * [`khintchine`] — integral tests and Monte-Carlo experiments

pub mod exactnum;
pub mod hgeom;
pub mod numeric;
pub mod orbit;
pub mod spectrum;
pub mod penetration;
pub mod chc;
pub mod khintchine;
