//! Contractivity checks for n-Jordan maps between the algebras C^k.

use njordan::cstar_num::{
    check_corollary_2_6, check_theorem_2_7, classify_njordan_functionals, op_norm_sup, random_linear_maps,
    step2_reduction_check, LinearMapC,
};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n) in [(2, 3), (1, 2), (2, 4)] {
        let fs = classify_njordan_functionals(m, n)?;
        let names: Vec<&str> = fs.iter().map(|f| f.name.as_str()).collect();
        println!("{n}-Jordan functionals on C^{m}: {}", names.join(", "));
    }

    let r = check_corollary_2_6(3, 3)?;
    println!("{} maps C^3 -> C^3, largest norm {}", r.maps.len(), r.max_norm);

    let p = LinearMapC::permutation(&[2, 0, 1])?;
    for k in 1..=3 {
        let s = check_theorem_2_7(&p, k, 256, 0)?;
        println!("{} with k = {k}: norm {}, slack in [{:.3e}, {:.3e}]", p.name, s.norm, s.min_slack, s.max_slack);
    }
    let half = p.scale(Complex64::new(0.5, 0.0));
    println!("0.5 * {}: norm {}, {}", p.name, op_norm_sup(&half), check_theorem_2_7(&half, 1, 256, 0).unwrap_err());

    let maps = random_linear_maps(1000, 3, 0);
    let agree = maps.iter().filter(|h| step2_reduction_check(h, 3, 64, 0)).count();
    println!("whole map vs coordinates agree on {agree} of {}", maps.len());
    Ok(())
}
