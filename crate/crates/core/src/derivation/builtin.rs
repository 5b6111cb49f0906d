use super::script::{DerivationScript, ScriptBuilder, StepRef};
use super::DerivationError;
use crate::freealg::{int, ratio, Mode};

pub const BUILTIN_SCRIPTS: [&str; 4] = ["jordan_n2_commutative", "thm2_2_n3", "thm2_2_n4", "thm2_5_step1"];

pub fn builtin(name: &str) -> Option<DerivationScript> {
    let script = match name {
        "jordan_n2_commutative" => jordan_n2(),
        "thm2_2_n3" => cubic_commutative(),
        "thm2_2_n4" => quartic_commutative(),
        "thm2_5_step1" => cubic_noncommutative(),
        _ => return None,
    };
    Some(script.expect("builtin scripts are well formed"))
}

/// `c·(p[v -> v+w] - p - p[v -> w])` with `c = scale.0 / scale.1`.
fn polarize(
    b: &mut ScriptBuilder,
    p: StepRef,
    v: &str,
    w: &str,
    scale: (i64, i64),
) -> Result<StepRef, DerivationError> {
    let sum = format!("{v}+{w}");
    let full = b.substitute(p, &[(v, &sum)])?;
    let other = b.substitute(p, &[(v, w)])?;
    let c = ratio(scale.0, scale.1);
    Ok(b.combine(&[(c.clone(), full), (-c.clone(), p), (-c, other)]))
}

fn jordan_n2() -> Result<DerivationScript, DerivationError> {
    let mut b = ScriptBuilder::new("jordan_n2_commutative", Mode::Commutative);
    let s = b.seed(2);
    let ab = b.substitute(s, &[("a", "a+b")])?;
    let bb = b.substitute(s, &[("a", "b")])?;
    let sym = b.combine(&[(int(1), ab), (int(-1), s), (int(-1), bb)]);
    b.assert_eq(sym, "ab+ba", "h(2*a*b) = 2*H(a)*H(b)")?;
    let fin = b.combine(&[(ratio(1, 2), sym)]);
    b.assert_eq(fin, "final", "h(a*b) = H(a)*H(b)")?;
    b.build()
}

fn cubic_commutative() -> Result<DerivationScript, DerivationError> {
    let mut b = ScriptBuilder::new("thm2_2_n3", Mode::Commutative);
    let s = b.seed(3);
    let sxy = b.substitute(s, &[("a", "x+y")])?;
    let sx = b.substitute(s, &[("a", "x")])?;
    let sy = b.substitute(s, &[("a", "y")])?;
    let t = ratio(1, 3);
    let e1 = b.combine(&[(t.clone(), sxy), (-t.clone(), sx), (-t, sy)]);
    b.assert_eq(e1, "(1)", "h(x^2*y + x*y^2) = H(x)^2*H(y) + H(x)*H(y)^2")?;
    let fin = polarize(&mut b, e1, "x", "z", (1, 2))?;
    b.assert_eq(fin, "final", "h(x*y*z) = H(x)*H(y)*H(z)")?;
    b.build()
}

fn quartic_commutative() -> Result<DerivationScript, DerivationError> {
    let mut b = ScriptBuilder::new("thm2_2_n4", Mode::Commutative);
    let s = b.seed(4);
    let sxy = b.substitute(s, &[("a", "x+y")])?;
    let sx = b.substitute(s, &[("a", "x")])?;
    let sy = b.substitute(s, &[("a", "y")])?;
    let e2 = b.combine(&[(int(1), sxy), (int(-1), sx), (int(-1), sy)]);
    b.assert_eq(e2, "(2)", "h(4*x^3*y + 6*x^2*y^2 + 4*x*y^3) = 4*H(x)^3*H(y) + 6*H(x)^2*H(y)^2 + 4*H(x)*H(y)^3")?;
    let e3 = b.substitute(e2, &[("x", "x+z")])?;
    b.assert_eq(
        e3,
        "(3)",
        "h(4*x^3*y + 6*x^2*y^2 + 4*x*y^3 + 4*z^3*y + 6*z^2*y^2 + 4*z*y^3 \
         + 12*(x^2*z*y + x*z^2*y + x*z*y^2)) \
         = 4*H(x)^3*H(y) + 6*H(x)^2*H(y)^2 + 4*H(x)*H(y)^3 \
         + 4*H(z)^3*H(y) + 6*H(z)^2*H(y)^2 + 4*H(z)*H(y)^3 \
         + 12*(H(x)^2*H(z)*H(y) + H(x)*H(z)^2*H(y) + H(x)*H(z)*H(y)^2)",
    )?;
    let e2z = b.substitute(e2, &[("x", "z")])?;
    let k = ratio(1, 12);
    let e4 = b.combine(&[(k.clone(), e3), (-k.clone(), e2), (-k, e2z)]);
    b.assert_eq(e4, "(4)", "h(x*y*z*(x + y + z)) = H(x)*H(y)*H(z)*(H(x) + H(y) + H(z))")?;
    let e4m = b.substitute(e4, &[("z", "-x")])?;
    let e5 = b.combine(&[(int(-1), e4m)]);
    b.assert_eq(e5, "(5)", "h(x^2*y^2) = H(x)^2*H(y)^2")?;
    let e6 = polarize(&mut b, e5, "y", "w", (1, 2))?;
    b.assert_eq(e6, "(6)", "h(x^2*y*w) = H(x)^2*H(y)*H(w)")?;
    let fin = polarize(&mut b, e6, "x", "t", (1, 2))?;
    b.assert_eq(fin, "final", "h(x*t*y*w) = H(x)*H(t)*H(y)*H(w)")?;
    b.build()
}

fn cubic_noncommutative() -> Result<DerivationScript, DerivationError> {
    let mut b = ScriptBuilder::new("thm2_5_step1", Mode::NonCommutative);
    let s = b.seed(3);
    let sxy = b.substitute(s, &[("a", "x+y")])?;
    let sx = b.substitute(s, &[("a", "x")])?;
    let sy = b.substitute(s, &[("a", "y")])?;
    let e7 = b.combine(&[(int(1), sxy), (int(-1), sx), (int(-1), sy)]);
    b.assert_eq(e7, "(7)", "h(x*y*x + y*x^2 + y^2*x + x^2*y + x*y^2 + y*x*y) = 3*(H(x)^2*H(y) + H(x)*H(y)^2)")?;
    let e8 = b.substitute(e7, &[("y", "-y")])?;
    b.assert_eq(e8, "(8)", "h(-x*y*x - y*x^2 + y^2*x - x^2*y + x*y^2 + y*x*y) = 3*(-H(x)^2*H(y) + H(x)*H(y)^2)")?;
    let half = ratio(1, 2);
    let e9 = b.combine(&[(half.clone(), e7), (half, e8)]);
    b.assert_eq(e9, "(9)", "h(x*y^2 + y^2*x + y*x*y) = 3*H(x)*H(y)^2")?;

    let e10 = b.substitute(e9, &[("y", "y-z")])?;
    b.assert_with(
        e10,
        "(10)",
        "h(x*y^2 + x*z^2 - x*y*z - x*z*y + y*x*y - y*x*z - z*x*y + z*x*z + z^2*x + y^2*x - y*z*x - z*y*x) \
         = 3*H(x)*H(y)^2 + 3*H(x)*H(z)^2 - 6*H(x)*H(y)*H(z)",
        Some(
            "h(x*y^2 + x*z^2 - 2*x*y*z + y*x*y - y*x*z - z*x*y + z*x*z + z^2*x + y^2*x - 2*y*z*x) \
             = 3*(H(x)^2*H(y) + H(x)*H(y)^2) - 6*H(x)*H(y)*H(z)",
        ),
        Some("printed lhs merges x*z*y into x*y*z and z*y*x into y*z*x; printed rhs is not the expansion of 3*H(x)*(H(y) - H(z))^2"),
    )?;

    let e9z = b.substitute(e9, &[("y", "z")])?;
    let e11 = b.combine(&[(int(-1), e10), (int(1), e9), (int(1), e9z)]);
    b.assert_eq(e11, "(11)", "h(y*x*z + z*x*y + 2*x*y*z + 2*y*z*x) = 6*H(x)*H(y)*H(z)")?;
    let e12 = b.substitute(e11, &[("z", "x")])?;
    b.assert_eq(e12, "(12)", "h(3*y*x^2 + x^2*y + 2*x*y*x) = 6*H(x)^2*H(y)")?;
    let e9s = b.substitute(e9, &[("x", "y"), ("y", "x")])?;
    let e13 = b.combine(&[(int(1), e12), (int(-1), e9s)]);
    b.assert_eq(e13, "(13)", "h(x*y*x + 2*y*x^2) = 3*H(x)^2*H(y)")?;
    let e14 = b.combine(&[(int(1), e13), (int(-1), e9s)]);
    b.assert_with(
        e14,
        "(14)",
        "h(y*x^2 - x^2*y) = 0",
        None,
        Some("the source cites (8) and (13); the subtraction that cancels is (13) minus (9) with x and y swapped"),
    )?;

    let e15 = polarize(&mut b, e14, "x", "z", (1, 1))?;
    b.assert_with(
        e15,
        "(15)",
        "h(y*x*z + y*z*x - x*z*y - z*x*y) = 0",
        Some("h(y*x*z - x*z*y) = 0"),
        Some("printed form merges y*x*z + y*z*x into 2*y*x*z in the expansion of (14) at x+z"),
    )?;
    let e16 = b.combine(&[(int(1), e11), (int(1), e15)]);
    let e17 = b.substitute(e16, &[("z", "x")])?;
    b.assert_eq(e17, "(17)", "h(x*y*x + y*x^2) = 2*H(x)^2*H(y)")?;
    let e18 = b.combine(&[(int(1), e13), (int(-1), e17)]);
    b.assert_eq(e18, "(18)", "h(y*x^2) = H(y)*H(x)^2")?;

    // polarizing h(yx^2) alone only reaches h(yxz + yzx); the single word
    // needs the permutation instances of both that and the symmetric sum
    let p18 = polarize(&mut b, e18, "x", "z", (1, 1))?;
    let cyc = [("x", "y"), ("y", "z"), ("z", "x")];
    let anti = [("x", "z"), ("y", "x"), ("z", "y")];
    let e11c = b.substitute(e11, &cyc)?;
    let e11a = b.substitute(e11, &anti)?;
    let p18c = b.substitute(p18, &cyc)?;
    let p18a = b.substitute(p18, &anti)?;
    let fin = b.combine(&[
        (ratio(1, 4), e11),
        (ratio(-3, 4), e11c),
        (ratio(1, 4), e11a),
        (ratio(3, 4), p18),
        (ratio(3, 4), p18c),
        (ratio(-1, 4), p18a),
    ]);
    b.assert_eq(fin, "final", "h(y*x*z) = H(y)*H(x)*H(z)")?;
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::replay;

    #[test]
    fn commutative_replays_pass() {
        for name in ["jordan_n2_commutative", "thm2_2_n3", "thm2_2_n4"] {
            let t = replay(&builtin(name).unwrap()).unwrap();
            assert!(t.passed, "{name}: {:?}", t.failed().collect::<Vec<_>>());
        }
        let t = replay(&builtin("thm2_2_n3").unwrap()).unwrap();
        assert_eq!(t.denominators, vec![2, 3]);
        assert_eq!(t.final_identity, "h(x*y*z) = H(x)*H(y)*H(z)");
    }

    #[test]
    fn noncommutative_prefix_matches_printed() {
        let t = replay(&builtin("thm2_5_step1").unwrap()).unwrap();
        for label in ["(7)", "(8)", "(9)", "(10)"] {
            assert!(t.assertion(label).unwrap().passed, "{label}");
        }
        assert!(t.assertion("(10)").unwrap().printed_mismatch);
        assert!(!t.assertion("(11)").unwrap().passed);
    }

    #[test]
    fn unknown_name() {
        assert!(builtin("nope").is_none());
    }
}
