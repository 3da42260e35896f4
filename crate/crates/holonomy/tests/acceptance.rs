//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use holonomy::verify::{self, Options, Suite};
use std::time::Instant;

fn main() {
    let o = Options::default();
    let suites: Vec<fn(&Options) -> Suite> = vec![
        verify::dilog_suite,
        verify::intertwining_suite,
        verify::recurrence_suite,
        verify::r2_suite,
        verify::r3_suite,
        verify::factorization_suite,
        verify::pinched_suite,
        verify::determinant_suite,
        verify::weight_basis_suite,
        verify::log_dependence_suite,
        verify::character_suite,
        verify::representation_suite,
    ];
    let start = Instant::now();
    let results: Vec<(Suite, f64)> = std::thread::scope(|s| {
        let hs: Vec<_> = suites
            .iter()
            .map(|f| {
                let o = &o;
                s.spawn(move || {
                    let t = Instant::now();
                    let r = f(o);
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    let mut failed = 0;
    for (s, secs) in &results {
        println!("{}  [{secs:.1}s]", verify::summary_line(s));
        if !s.passed() {
            failed += 1;
            for c in s.failures() {
                println!("    failing: {} (N={}) dev {:.3e} > tol {:.0e}", c.name, c.n, c.dev, c.tol);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
