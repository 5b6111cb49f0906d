//! Searches additive maps for Jordan maps that are not ring maps, and
//! confirms there are none of the commutative kind on Z5 x Z5.

use std::sync::Arc;

use njordan::models::{make_zm, matrix_ring, product, search, Predicate, SearchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m2 = Arc::new(matrix_ring(2, 2)?);
    let opts = SearchOptions { threads: 2, ..Default::default() };
    let found = search(&m2, &m2, 2, &Predicate::JordanNotRing, 5, opts)?;
    println!("Jordan but not ring on {}: first {}", m2.label(), found.len());
    for h in &found {
        println!("  {h}");
    }

    let z55 = Arc::new(product(&make_zm(5)?, &make_zm(5)?)?);
    for n in [3, 4] {
        let bad = search(&z55, &z55, n, &Predicate::JordanNotRing, 1, opts)?;
        println!("{n}-Jordan but not {n}-ring on {}: {}", z55.label(), bad.len());
    }

    let sampled = search(&m2, &m2, 3, &Predicate::NJordanNotJordan, 3, SearchOptions { samples: Some(500), ..opts })?;
    println!("sampled 3-Jordan maps that are not Jordan: {}", sampled.len());
    Ok(())
}
