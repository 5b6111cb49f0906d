pub mod cli;
pub mod cstar_num;
pub mod derivation;
pub mod freealg;
pub mod identities;
pub mod models;
