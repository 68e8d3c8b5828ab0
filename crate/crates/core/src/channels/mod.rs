//! Adiabatic hyperradial channels and the coupled radial equations.

pub mod radial;
pub(crate) mod small;
pub mod table;

pub use table::{build_channel_table, build_channel_table_cached, effective_potential, GridCache, log_grid, ChannelOptions, ChannelSource, ChannelTable, SourceKind};
pub use radial::{
    count_zero_energy_nodes, count_zero_energy_nodes_with, rms_hyperradius, rms_radius, solve_bound_states, solve_bound_states_with, RadialModel,
    RadialOptions, ThreeBodyState,
};
