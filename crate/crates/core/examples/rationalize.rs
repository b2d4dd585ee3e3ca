//! Best rational approximations with bounded denominators.

use monocert::exact::format_rational;
use monocert::sdp::best_rational_approximation;

fn main() {
    let values: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("a float"))
        .collect();
    let values = if values.is_empty() {
        vec![std::f64::consts::PI, 0.333_333_333, 0.280_290_4, 1e-12]
    } else {
        values
    };
    for x in values {
        let approx: Vec<String> = [10, 1_000, 1_000_000, 1_000_000_000]
            .iter()
            .map(|&d| format!("{d}: {}", format_rational(&best_rational_approximation(x, d))))
            .collect();
        println!("{x}  ->  {}", approx.join("   "));
    }
}
