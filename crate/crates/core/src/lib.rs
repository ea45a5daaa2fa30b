pub mod alpha;
pub mod baselines;
pub mod chain;
pub mod cli;
pub mod complex;
pub mod dualgraph;
pub mod fixtures;
pub mod io;
pub mod optvol;
pub mod persistence;
