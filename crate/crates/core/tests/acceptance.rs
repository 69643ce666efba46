use std::time::Instant;

use factdisp::verify::run_criterion;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for n in 1..=11u8 {
        let start = Instant::now();
        let checks = run_criterion(n);
        let secs = start.elapsed().as_secs_f64();
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        println!(
            "criterion {n:>2}: {} ({secs:.2} s)",
            if pass { "PASS" } else { "FAIL" }
        );
        for c in &checks {
            println!("    {c}");
        }
        if !pass {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
