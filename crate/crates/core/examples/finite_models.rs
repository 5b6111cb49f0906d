//! Finite rings, additive maps and the n-Jordan / n-ring predicates.

use std::sync::Arc;

use njordan::models::{
    is_n_jordan, is_n_ring, matrix_ring, nilpotency_index, paper_examples, predicate_report, strict_upper, AdditiveMap,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m2 = Arc::new(matrix_ring(2, 2)?);
    let t = AdditiveMap::involution(&m2).expect("matrix rings carry the transpose");
    let report = predicate_report(&t, &[2, 3, 4, 5, 6], &[2])?;
    for (n, v) in &report.jordan {
        println!("transpose on {} is {n}-Jordan: {}", m2.label(), v.holds);
    }
    let ring = is_n_ring(&t, 2)?;
    println!("transpose is a 2-ring map: {} (witness {:?})", ring.holds, ring.witness);

    let u = strict_upper(4, 2)?;
    println!("{} has nilpotency index {:?}", u.label(), nilpotency_index(&u));

    let neg = AdditiveMap::negation(&Arc::new(njordan::models::make_zm(5)?));
    for n in 2..=4 {
        println!("negation on Z5 {n}-Jordan: {}", is_n_jordan(&neg, n)?.holds);
    }

    let ex = paper_examples()?;
    println!("{}", serde_json::to_string_pretty(&ex.commutative_jordan)?);
    Ok(())
}
