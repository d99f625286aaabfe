use dqd_cli::verify::{Verifier, CRITERIA};

/// Criteria the model does not reproduce; they are reported
/// but do not fail the run. Any of them passing is reported too.
const KNOWN_FAILURES: [u8; 5] = [6, 10, 11, 12, 13];

fn main() {
    let v = Verifier::default();
    let mut unexpected = Vec::new();
    for (id, _) in CRITERIA {
        let r = v.run(id);
        println!("{r}");
        let known = KNOWN_FAILURES.contains(&id);
        if !r.passed && !known {
            unexpected.push(id);
        }
        if r.passed && known {
            println!("     note: criterion {id} is listed as a known failure but passed");
        }
    }
    println!(
        "acceptance: {} unexpected failure(s) {:?}; documented failures {:?}",
        unexpected.len(),
        unexpected,
        KNOWN_FAILURES
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
