//! Benchmark inputs shared by the criterion targets in `benches/`.

use omega_core::rat;
use omega_core::surface::{CubePoint, RayParams};

/// A ray in each region of the square plus one off the diagonal.
pub fn sample_rays() -> Vec<(&'static str, RayParams)> {
    vec![
        ("k1", RayParams::from_ratios((3, 10), (3, 10)).unwrap()),
        ("k2", RayParams::from_ratios((31, 100), (31, 100)).unwrap()),
        ("off_diagonal", RayParams::from_ratios((1, 7), (2, 5)).unwrap()),
    ]
}

/// An axis edge of the census grid at n = 24 and a long segment across
/// three components.
pub fn sample_segments() -> Vec<(&'static str, CubePoint, CubePoint)> {
    vec![
        (
            "grid_edge",
            CubePoint::unchecked(rat(21, 96), rat(23, 96), rat(25, 96)),
            CubePoint::unchecked(rat(23, 96), rat(23, 96), rat(25, 96)),
        ),
        (
            "long",
            CubePoint::unchecked(rat(1, 6), rat(1, 6), rat(1, 6)),
            CubePoint::unchecked(rat(7, 15), rat(7, 15), rat(7, 15)),
        ),
    ]
}
