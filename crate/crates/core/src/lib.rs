//! Exact arithmetic for the Carlitz algebra `C_ν` presented as a generalized
//! Weyl algebra over the perfect closure of `F_{p^k}(x)`.

pub mod acceptance;
pub mod algebra;
pub mod autos;
pub mod dpoly;
pub mod gf;
pub mod ideals;
pub mod kfield;
pub mod modules;
pub mod oracle;
pub mod orbits;
pub mod par;
pub mod parse;
pub mod random;
mod sparse;

pub use algebra::{CElem, Monomial};
pub use autos::{check_homomorphism, AutoError, CarlitzAuto, GeneratorMap};
pub use dpoly::{shift_root, HPoly};
pub use gf::{FieldCtx, FieldError, FqElem};
pub use ideals::{alpha, factor_central, CentreElem, Ideal, IdealError};
pub use kfield::{AbsValue, KCtx, KElem, KError};
pub use modules::{ModVec, ModuleError, ModuleKind, RelationReport, WeightModule};
pub use oracle::{apply_algebra, oracle_check, oracle_equal, FuncElem, OracleVerdict};
pub use orbits::{classify, count_orbits, CyclicOrbit, OrbitClass, OrbitError, Side};
pub use par::Exec;
pub use parse::ParseError;
pub use random::Sampler;
