//! Exact invariants of hyperbolic orbifolds and their quantum Hall data:
//! Euler characteristics and K-theory ranks, wreath-product sector sums,
//! hyperbolic magnetic cocycles, braid-group anyon representations, and
//! Laughlin/Selberg symmetric-function machinery.

pub mod braid;
pub mod checks;
pub mod group;
pub mod hyperbolic;
pub mod laughlin;
pub mod orbifold;
pub mod rational;
pub mod selberg;
pub mod series;
pub mod snf;
pub mod sympoly;
pub mod wreath;

pub use group::{FiniteAction, FiniteGroup, GroupError};
pub use orbifold::{
    AbelianInvariants, CoverData, FuchsianPresentation, OrbifoldError, OrbifoldSignature,
    SeifertData,
};
pub use rational::Rational;
pub use series::PowerSeries;
pub use wreath::WreathElement;
