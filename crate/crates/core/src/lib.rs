//! Exact arithmetic for the polygon, envelope, adelic and tensor models of
//! the arithmetic site over imaginary quadratic fields of class number one.

pub mod adelic;
pub mod envelope;
pub mod json;
pub mod lattice;
pub mod oracle;
pub mod polygeom;
pub mod quadfield;
pub mod random;
pub mod selftest;
pub mod svg;
pub mod tensorlab;
