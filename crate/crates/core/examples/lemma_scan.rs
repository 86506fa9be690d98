//! Searches every small deterministic machine for a perfect k-th root of NOT.
//! None exists below 2k states.

fn main() -> rootnot::Result<()> {
    for (k, n_max) in [(1, 3), (2, 4), (4, 6)] {
        for row in rootnot::oracle::lemma_scan(k, n_max)? {
            println!("{row}");
        }
    }
    Ok(())
}
