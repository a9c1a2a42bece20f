pub mod scalars;
pub mod freealg;
pub mod exactla;
pub mod rewrite;
pub mod groups;
pub mod grading;
pub mod ideals;
pub mod pertinency;
pub mod covariants;
pub mod cli;
