use std::process::ExitCode;
use std::time::Instant;

use hodiff_tools::criteria::{self, DeskConfig, Outcome};

fn report(outcome: &Outcome, started: Instant) {
    println!("{}  [{:.1}s]", outcome.line(), started.elapsed().as_secs_f64());
    for f in outcome.failures.iter().skip(1).take(9) {
        println!("    also failed: {} ({})", f.case, f.detail);
    }
}

fn main() -> ExitCode {
    let cfg = DeskConfig::default();
    let mut outcomes = Vec::new();

    let t = Instant::now();
    let (c1, polys) = criteria::criterion_1(&cfg);
    report(&c1, t);
    outcomes.push(c1);

    let t = Instant::now();
    let (c2, bc) = criteria::criterion_2(&cfg, &polys);
    report(&c2, t);
    outcomes.push(c2);

    let t = Instant::now();
    let c3 = criteria::criterion_3(&polys, &bc);
    report(&c3, t);
    outcomes.push(c3);

    let rest: Vec<Box<dyn Fn() -> Outcome>> = vec![
        Box::new(criteria::criterion_4),
        Box::new(|| criteria::criterion_5(&cfg)),
        Box::new(criteria::criterion_6),
        Box::new(|| criteria::criterion_7(&cfg)),
        Box::new(|| criteria::criterion_8(&cfg)),
        Box::new(|| criteria::criterion_9(&cfg)),
        Box::new(criteria::criterion_10),
        Box::new(|| criteria::criterion_11(&cfg)),
    ];
    for run in rest {
        let t = Instant::now();
        let o = run();
        report(&o, t);
        outcomes.push(o);
    }

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
