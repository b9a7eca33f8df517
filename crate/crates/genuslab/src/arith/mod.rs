//! Arithmetic of ℤ, ℚ, 𝔽_p, polynomial rings, rational function fields and
//! quadratic fields.

pub mod abelian;
pub mod classgroup;
pub mod factor;
pub mod fp;
pub mod ideal;
pub mod int;
pub mod linalg;
pub mod poly;
pub mod quad;
pub mod ratfn;
pub mod units;

pub use factor::{factor_poly, PolyFactorization};
pub use int::factor_integer;
pub use poly::{Base, Poly};
pub use quad::QuadElem;
pub use ratfn::RatFn;
