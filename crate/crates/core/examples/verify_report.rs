//! Runs one check and prints its JSON report.

use bkh::quadrature::QuadSpec;
use bkh::verify::check_gn_partition;
use bkh::Alpha;

fn main() -> bkh::Result<()> {
    let alpha = Alpha::new(1.5)?;
    let report = check_gn_partition(&alpha, 4, &QuadSpec::default())?;
    println!("{}", report.canonical_json());
    println!("passed: {}, failures: {}", report.passed, report.failures().count());
    Ok(())
}
