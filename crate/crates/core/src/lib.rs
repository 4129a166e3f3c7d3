//! Even-lattice discriminant algebra, loop-group cocycles, and boundary
//! subspace verification.
//!
//! The crate is split along its two arithmetic worlds:
//!
//! * exact integer/rational algebra for lattices, Smith normal form,
//!   discriminant groups, sectors, and sign cocycles
//!   ([`lattice`], [`snf`], [`roots`], [`cocycle`]);
//! * floating-point numerics for torus loops, the coherent Weyl calculus,
//!   symmetric inner functions, half-line Fourier multipliers, and the
//!   boundary cocycle checks ([`loops`], [`weyl`], [`inner`], [`line`],
//!   [`boundary`]).
//!
//! The numeric modules are generic over the [`real::Real`] scalar (`f32` or
//! `f64`); the aliases below pin the `f64` instantiations that the CLI and
//! the verification suite use.

pub mod boundary;
pub mod cocycle;
pub mod config;
pub mod exact;
pub mod fourier;
pub mod inner;
pub mod lattice;
pub mod line;
pub mod loops;
pub mod phase;
pub mod real;
pub mod report;
pub mod roots;
pub mod snf;
pub mod verify;
pub mod weyl;

/// Default floating scalar used by the CLI and verification suite.
pub type Scalar = f64;

pub type TorusLoop64 = loops::TorusLoop<Scalar>;
pub type ModeSpace64 = loops::ModeSpace<Scalar>;
pub type OneParticle64 = weyl::OneParticleVector<Scalar>;
pub type CoherentVector64 = weyl::CoherentVector<Scalar>;
pub type Inner64 = inner::SymmetricInnerFunction<Scalar>;
pub type MatrixInner64 = inner::MatrixInnerFunction<Scalar>;
pub type LineGrid64 = line::LineGrid<Scalar>;
pub type LineFunction64 = line::SampledLineFunction<Scalar>;
pub type StepData64 = boundary::StepData<Scalar>;
pub type TwistedCharges64 = boundary::TwistedCharges<Scalar>;
