pub mod chain;
pub mod orbit;
pub mod random;
pub mod small;

pub use chain::{schreier_sims, SchreierSimsOptions, StabChain};
pub use orbit::{orbit, OrbitOptions, OrbitPoint, OrbitTable, SchreierLink};
pub use random::ProductReplacement;
pub use small::{closure_enumerate, point_stabilizer, SmallGroup};
