//! Produces a certificate, round-trips it through JSON, reduces it modulo
//! a prime and shows that tampering is detected.

use njordan::derivation::{consequence_check, verify_certificate, Certificate, ConsequenceOptions};
use njordan::freealg::{format_ratio, int, Mode, Variable};
use njordan::identities::HIdentity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = HIdentity::parse("h(x*y*z) = H(x)*H(y)*H(z)", Mode::Commutative)?;
    let xyz = [Variable::X, Variable::Y, Variable::Z];
    let cert = consequence_check(3, &target, &xyz, 1, ConsequenceOptions::default())?
        .certificate()
        .cloned()
        .expect("the commutative target is in the span");
    for t in &cert.instances {
        println!("{:>6} * seed{}", format_ratio(&t.coeff), t.subst);
    }
    let json = cert.to_json();
    let back = Certificate::from_json(&json)?;
    println!("round trip equal: {}", back == cert);
    println!("verifies: {}", verify_certificate(&back, &target));

    let m5 = cert.reduce_mod(5).expect("denominators prime to 5");
    println!("mod 5 verifies: {}", verify_certificate(&m5, &target));

    let mut bad = cert.clone();
    bad.instances[0].coeff += int(1);
    println!("tampered verifies: {}", verify_certificate(&bad, &target));
    Ok(())
}
