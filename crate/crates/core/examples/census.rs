//! Ordinary / supersingular split and relation frequency over small families.

use frobenius_equidist::classify::{census, CensusOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = CensusOptions::default();
    for (p, genus) in [(5, 1), (7, 1), (11, 1), (3, 2), (5, 2)] {
        let r = census(p, genus, &opts)?;
        let f = &r.fractions;
        println!(
            "p = {p:>2}, g = {genus}: {:>4} curves, ordinary {:.3}, supersingular {:.3}, intermediate {:.3}, relation {:.3}",
            r.curves.len(),
            f.ordinary,
            f.supersingular,
            f.intermediate,
            f.relation_found
        );
    }
    Ok(())
}
