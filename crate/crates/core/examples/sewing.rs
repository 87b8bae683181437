//! Gale sewing from a degenerate 0-dimensional start, neighborliness of
//! every stage, and sigma recovery from a double lift.

use trisweep::census::{double_lift, fingerprint, is_k_neighborly, recover_sigma_suffix, sew};

fn main() -> trisweep::Result<()> {
    let run = sew(9, 4, &[vec![3, 1, 5, 2, 4], vec![7, 2, 5, 1, 6, 3, 4]], 11)?;
    for (i, c) in run.stage_configs.iter().enumerate() {
        let k = c.dim() / 2;
        println!(
            "stage {i}: {} points in R^{}, {k}-neighborly: {}",
            c.len(),
            c.dim(),
            is_k_neighborly(c, k)?.holds
        );
    }
    println!("fingerprint {}", fingerprint(run.result())?.digest());

    let hexagon = &run.stage_configs[1];
    let sigma = vec![7, 2, 5, 1, 6, 3, 4];
    let lifted = double_lift(hexagon, &sigma)?;
    println!("planted suffix {:?}, recovered {:?}", [4, 3, 6], recover_sigma_suffix(&lifted, 1)?);
    Ok(())
}
