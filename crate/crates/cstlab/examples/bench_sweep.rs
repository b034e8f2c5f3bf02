use cstlab::ec::{trace_sweep, EllipticCurveQ, SurfacePair, SweepConfig};
use std::time::Instant;

fn main() {
    let pair = SurfacePair::new(
        EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap(),
        EllipticCurveQ::new(0, 1, 1, 0, 0).unwrap(),
    );
    for x in [100_000u64, 1_000_000] {
        let t0 = Instant::now();
        let recs = trace_sweep(&pair, x, &SweepConfig::default()).unwrap();
        println!("x = {x}: {} records in {:.2}s", recs.len(), t0.elapsed().as_secs_f64());
    }
}
