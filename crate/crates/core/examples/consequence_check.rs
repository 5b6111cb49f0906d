//! Span membership of target identities among substitution instances of
//! the seed `h(a^n) = H(a)^n`.

use njordan::derivation::{consequence_check, stock_experiments, ConsequenceOptions, FieldTag};
use njordan::freealg::{Mode, Variable};
use njordan::identities::HIdentity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for e in stock_experiments()? {
        println!("{}", e.summary());
        if let Some(r) = e.result.rank_report() {
            println!("    residual {}", r.residual);
        }
    }

    let xyz = [Variable::X, Variable::Y, Variable::Z];
    let target = HIdentity::parse("h(x*y*z) = H(x)*H(y)*H(z)", Mode::Commutative)?;
    for field in [FieldTag::Rationals, FieldTag::Prime(5), FieldTag::Prime(7)] {
        let r = consequence_check(3, &target, &xyz, 1, ConsequenceOptions { field, ..Default::default() })?;
        println!("commutative {target} over {field}: in span {}", r.is_in_span());
    }
    Ok(())
}
