use fibsum::search::{conjecture_scan, SearchConfig};

fn main() {
    let max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    let start = std::time::Instant::now();
    let records = conjecture_scan(&SearchConfig::boxed(max, max, u64::from(max))).unwrap();
    for r in records.iter().filter(|r| !r.trivial) {
        println!("{r:?}");
    }
    println!("{} records in {:?}", records.len(), start.elapsed());
}
