//! Run the ten acceptance checks and print one line per check.

fn main() {
    let results = genuslab::acceptance::run_all();
    for r in &results {
        println!("{r}");
    }
    std::process::exit(if results.iter().all(|r| r.pass) { 0 } else { 1 });
}
