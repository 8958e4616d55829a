//! Runs every acceptance criterion and prints one line per criterion.

use schroq::acceptance;

#[test]
fn acceptance() {
    println!();
    let results = acceptance::run(None);
    assert_eq!(results.len(), 12);
    for r in &results {
        println!("{}  [{:.1} s]", r.line(), r.elapsed.as_secs_f64());
    }
    let failed: Vec<u32> = results
        .iter()
        .filter(|r| !r.outcome.passed)
        .map(|r| r.id)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
