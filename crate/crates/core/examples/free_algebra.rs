//! Noncommutative and commutative polynomial arithmetic, substitution and
//! abelianization.

use njordan::freealg::{parse_expr, parse_h_expr, Mode, Substitution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nc = Mode::NonCommutative;
    let p = parse_expr("x*y - y*x", nc)?;
    let q = parse_expr("x + y", nc)?;
    println!("p = {p}");
    println!("q^2 = {}", q.pow(2));
    println!("p*q = {}", p.mul(&q)?);

    // the commutator vanishes once letters commute
    println!("abelianized p = {}", p.abelianize());
    println!("abelianized q^3 = {}", q.pow(3).abelianize());

    let s = Substitution::parse([("x", "x + z"), ("y", "-y")])?;
    println!("substitution {s}");
    println!("q^2 under it = {}", q.pow(2).substitute_linear(&s));

    let h = parse_h_expr("(H(x) + H(y))^2")?;
    println!("codomain side: {h}");
    Ok(())
}
