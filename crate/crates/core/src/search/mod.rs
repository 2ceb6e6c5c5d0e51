//! Canonicalized state-space search: closures, identification, exhaustive
//! enumeration, surveys and the rigid hard index.

mod bootstrap;
mod closure;
mod enumerate;
mod hardness;
mod survey;

pub use bootstrap::*;
pub use closure::*;
pub use enumerate::*;
pub use hardness::*;
pub use survey::*;
