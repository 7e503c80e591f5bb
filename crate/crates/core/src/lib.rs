pub mod endo_actions;
pub mod entropy_lab;
pub mod exact_linalg;
mod fit;
pub mod rr_engine;
pub mod variety_models;
