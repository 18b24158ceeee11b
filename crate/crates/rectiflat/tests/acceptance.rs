use std::process::ExitCode;

use rectiflat::acceptance::{run_all, run_serial};

fn main() -> ExitCode {
    let outcomes = run_all(0);
    for o in &outcomes {
        println!(
            "criterion {:>2} {}: {} ({}) [{:.3} s]",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail,
            o.elapsed.as_secs_f64()
        );
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let agree = run_serial(7) == run_all(7);
    println!("serial and parallel runs agree: {}", if agree { "PASS" } else { "FAIL" });
    println!("{passed}/{} criteria passed", outcomes.len());
    if outcomes.len() == 10 && passed == outcomes.len() && agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
