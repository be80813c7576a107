//! One line per acceptance criterion; details follow for failures.
//! Exits non-zero when any criterion fails.

use jetgauge_core::Status;
use jetgauge_suite::criteria;

fn main() {
    let outcomes: Vec<_> = criteria().iter().map(|c| c.run()).collect();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
    for o in &failed {
        println!("\ncriterion {} failing checks:", o.id);
        for c in o.report.checks.iter().filter(|c| c.status == Status::Fail) {
            print!("  {}: expected {}, got {}", c.name, c.expected, c.actual);
            if let Some(t) = c.tolerance {
                print!(" (tol {t:e})");
            }
            if let Some(n) = &c.note {
                print!(" -- {n}");
            }
            println!();
        }
    }
    println!(
        "\n{} of {} criteria pass",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
