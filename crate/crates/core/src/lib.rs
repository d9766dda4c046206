//! Exact computations with modules over bound quiver algebras: almost split
//! sequences, short chains and the tilting certificates that come with them.

pub mod artrans;
pub mod cli;
pub mod exactla;
pub mod quiveralg;
pub mod repcat;
pub mod shortchain;
