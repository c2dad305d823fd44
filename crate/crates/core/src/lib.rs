pub mod audit;
pub mod ec_pipeline;
pub mod error;
pub mod ffield;
pub mod legendre;
pub mod modp;
pub mod multdep;
pub mod zpoly;

pub use audit::{EcAudit, MultAudit, Verdict};
pub use ec_pipeline::{ec_exceptional_primes, EcPipelineParams, ExceptionalReport, ResultantMode};
pub use error::{Error, Result};
pub use ffield::{FqCtx, FqElem};
pub use legendre::{LegendreCurve, LegendrePoint};
pub use multdep::{
    mult_exceptional_primes, tuple_order, ExponentVector, MultParams, MultReport, RationalTuple,
};
pub use zpoly::{BigPoly, Height};
