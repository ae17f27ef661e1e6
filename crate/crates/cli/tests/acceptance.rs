//! Runs the nine acceptance criteria and prints one line each. Exits
//! non-zero if any criterion does not pass.

use kmfaces_cli::selftest::{self, CriterionResult};
use kmfaces_cli::{Outcome, RunConfig};

fn main() {
    let cfg = RunConfig::default();
    let runs: [fn(&RunConfig) -> CriterionResult; 9] = [
        |_| selftest::criterion1(),
        |_| selftest::criterion2(),
        |_| selftest::criterion3(),
        |_| selftest::criterion4(),
        |_| selftest::criterion5(),
        |_| selftest::criterion6(),
        |c| selftest::criterion7(selftest::affine_probe_search(c)),
        |c| selftest::criterion8(c.seed),
        |c| selftest::criterion9(c.seed),
    ];
    let mut failed = 0;
    for run in runs {
        let r = run(&cfg);
        println!("{}", r.line());
        if r.status != Outcome::Pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
