//! Counts the perfect functions on 2k states and checks the closed form.

use rootnot::oracle;

fn main() -> rootnot::Result<()> {
    for k in [2, 4] {
        println!("{}", oracle::count_target_functions(k)?);
    }
    let (total, perfect) = oracle::single_cycle_constructions(4)?;
    println!("k=4: {perfect} of {total} single 8-cycles with starts 4 apart are perfect");
    for k in [8, 16] {
        let f = oracle::eq4_fraction(k)?;
        println!("k={k}: closed-form fraction {:.3e}", f.to_f64());
    }
    Ok(())
}
