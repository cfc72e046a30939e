pub mod acceptance;
pub mod bessel;
pub mod commands;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod modulation;
pub mod ode;
pub mod output;
pub mod photon;
pub mod plot;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
