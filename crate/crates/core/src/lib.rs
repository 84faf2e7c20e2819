//! Exact computations for the truncated Yangian of `gl_2` and its
//! universal modules: PBW arithmetic, quantum determinants, explicit
//! module actions, block classification and the associated quivers.

pub mod block;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod quiver;
pub mod yangian;
