//! Partitions, tableaux, boxed plane partitions and lattice paths, with the
//! bijections between them.

mod odometer;
mod partition;
pub mod paths;
pub mod plane;
mod tableau;
pub mod weighted;

pub use partition::{box_count, partitions_in_box, OccupationSequence, Partition, SkewShape};
pub use paths::{
    enumerate_half_paths, enumerate_path_configs, HalfPathConfig, HalfPathConstraint, LatticePathConfig,
    PathConstraint, Side,
};
pub use plane::{
    enumerate_half, enumerate_plane_partitions, lower_diagonal, macmahon_count, upper_diagonal, Half,
    HalfPlanePartition, PlanePartitionBox,
};
pub use tableau::{enumerate_tableaux, Order, Tableau, Tableaux};
pub use weighted::{
    psi1_admissible, psi2_admissible, weighted_sum_f, weighted_sum_g, weighted_sum_psi1, weighted_sum_psi2,
    Picture,
};
