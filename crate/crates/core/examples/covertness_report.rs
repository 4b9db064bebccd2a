//! The three averaged detection metrics with their evaluation times, and how
//! the quadrature converges with node count.

use covert_core::covertness::{avg_detection_error_quadrature, covertness_report};
use covert_core::{QuadratureConfig, SystemParams};

fn main() -> Result<(), covert_core::Error> {
    let params = SystemParams::default();
    let report = covertness_report(&params, 1.0, 100, QuadratureConfig::default());
    println!("{report:#?}");

    for nodes in [10, 25, 50, 100, 200, 400] {
        let v = avg_detection_error_quadrature(&params, 1.0, 100, QuadratureConfig::new(nodes)?);
        println!("B={nodes:>3}  {v:.10}");
    }
    Ok(())
}
