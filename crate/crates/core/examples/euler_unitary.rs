//! Builds unitaries from Euler angles and checks the exact k-th roots of NOT.

use rootnot::merit::quantum_merit;
use rootnot::{stream, EulerAngles, Unitary2};

fn main() {
    for k in [2usize, 4, 8, 16] {
        let angles = EulerAngles::exact_root(k).unwrap();
        let u = angles.to_unitary();
        let not_dist = u
            .pow(k as u64)
            .max_abs_diff(&Unitary2::not().with_phase(-std::f64::consts::FRAC_PI_2));
        println!(
            "k={k}: beta={:.4} delta={:.4} gamma={:.4}  |U^k + iX|={not_dist:.1e}  P^10={:.12}",
            angles.beta(),
            angles.delta(),
            angles.gamma(),
            quantum_merit(&u, k, 10)
        );
    }

    let mut rng = stream(1);
    let random = EulerAngles::haar_random(&mut rng).to_unitary();
    println!(
        "Haar sample: P(0->1)={:.4}, unitarity deviation of U^10000 = {:.1e}",
        random.transition_prob(0, 1),
        random.pow(10_000).unitarity_deviation()
    );
}
