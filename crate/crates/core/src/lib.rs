//! Proximity catch digraphs on two-class planar data: Delaunay cells of the
//! target class, vertex and edge regions, proximity maps, arc density,
//! domination numbers, their limits, and Monte Carlo checks.

pub mod asymptotics;
pub mod delaunay;
pub mod error;
pub mod geom;
pub mod montecarlo;
pub mod partitions;
pub mod pcd;
pub mod proximity;
pub mod quadrature;
pub mod spec;

pub use error::{Error, Result};
pub use geom::{Point2, TriangleFrame};
