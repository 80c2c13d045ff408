pub mod bounds;
pub mod clique;
pub mod convex;
pub mod error;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod pipeline;
pub mod proposal;
pub mod pruning;
pub mod verify;
