//! Exact and sampled figures of merit for a few hand-built machines.

use rootnot::merit::{classical_merit, classical_merit_mc, quantum_merit};
use rootnot::{stream, ClassicalMachine, Unitary2};

fn main() {
    let k = 4;
    let machines = [
        ("perfect loop", ClassicalMachine::perfect_loop(k).unwrap()),
        ("identity", ClassicalMachine::identity(k).unwrap()),
        ("uniform", ClassicalMachine::uniform(k).unwrap()),
        ("random", ClassicalMachine::random(k, &mut stream(3)).unwrap()),
    ];
    let mut rng = stream(11);
    for (name, m) in &machines {
        let exact = classical_merit(m, 10);
        let mc = classical_merit_mc(m, 10, 100_000, &mut rng);
        println!("{name:>12}: P10 exact {exact:.4}, sampled {mc:.4}");
    }

    // a slightly over-rotated qubit loses merit as n grows
    let u = Unitary2::x_rotation(std::f64::consts::PI / 8.0 * 1.02);
    for n in [1, 5, 10, 20] {
        println!("over-rotated root, P{n} = {:.4}", quantum_merit(&u, k, n));
    }
}
