//! Replays every builtin derivation and prints each checked step.

use njordan::derivation::{builtin, replay, BUILTIN_SCRIPTS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in BUILTIN_SCRIPTS {
        let trace = replay(&builtin(name).expect("builtin"))?;
        println!("== {name}: {} ({:?})", if trace.passed { "passed" } else { "failed" }, trace.elapsed);
        for a in &trace.assertions {
            let mark = if a.passed { "ok" } else { "FAIL" };
            println!("{mark:>4} {:>6} {}", a.label, a.got);
            if let Some(d) = &a.first_difference {
                println!("            {d}");
            }
            if a.printed_mismatch {
                println!("            printed: {}", a.printed.as_deref().unwrap_or(""));
            }
        }
        println!("   denominators {:?}", trace.denominators);
    }
    Ok(())
}
