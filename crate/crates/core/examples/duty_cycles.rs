//! Five-segment SVPWM duty cycles over one fundamental period.

use sns_svpwm::modulator::{duty_cycles, mean_line_voltage_pu, sector_of};

fn main() {
    let m = 0.7;
    println!("theta_deg  sector   d_a     d_b     d_c     d_a-d_b");
    for step in 0..24 {
        let theta = step as f64 * 15f64.to_radians();
        let d = duty_cycles(m, theta);
        println!(
            "{:>9.1}  {:>6}  {:.4}  {:.4}  {:.4}  {:+.4}",
            theta.to_degrees(),
            sector_of(theta),
            d.a(),
            d.b(),
            d.c(),
            mean_line_voltage_pu(&d)
        );
    }
}
