use bkh::verify::*;
use std::time::Instant;
fn main() {
    let alpha: f64 = std::env::args().nth(1).unwrap().parse().unwrap();
    let which: Vec<String> = std::env::args().skip(2).collect();
    let cfg = RunConfig::default();
    let hg = bkh::finite_hypergroup::catalog();
    for s in [
        Suite::NormEquivalence,
        Suite::Translation,
        Suite::Young,
        Suite::HausdorffYoung,
        Suite::Fournier,
        Suite::Gn,
        Suite::Finite,
    ] {
        if !which.is_empty() && !which.iter().any(|w| w == s.name()) {
            continue;
        }
        let t = Instant::now();
        let job = Job {
            check: s,
            alpha: if s == Suite::Finite { None } else { Some(alpha) },
        };
        let r = run_job(&job, &cfg, &hg).unwrap();
        println!("{} passed={} {:.1}s", s.name(), r.passed, t.elapsed().as_secs_f64());
        for (k, v) in &r.measured_constants {
            println!("   {k} = {v}");
        }
        for d in r.failures() {
            println!("   FAIL {} lhs={} rhs={} margin={}", d.input, d.lhs, d.rhs, d.margin);
        }
    }
}
