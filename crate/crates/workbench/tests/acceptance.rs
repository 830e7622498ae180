//! One line per acceptance criterion: verdict, instance count and elapsed time against
//! its bound. Skipped instances count against a criterion, since a skip means the
//! instance family was not fully covered.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pfw::suite::{run_criterion, CheckReport, SuiteConfig, Verdict};
use pfw_core::catalog;

struct Criterion {
    n: u8,
    what: &'static str,
    bound: Option<Duration>,
    /// Instances the criterion must cover at the default configuration.
    expected: Option<usize>,
}

fn criteria(cfg: &SuiteConfig) -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    let frames = catalog::frames_by_ji(cfg.max_ji).len();
    let sized = catalog::frames_by_size(cfg.max_elements).len();
    let spaces = catalog::pervin_catalog(cfg.max_universe).len();
    vec![
        Criterion { n: 1, what: "nabla/delta laws", bound: secs(10), expected: Some(frames + cfg.random_frames) },
        Criterion { n: 2, what: "unique extension along nabla", bound: secs(60), expected: None },
        Criterion { n: 3, what: "subframes of the filter of a sublattice", bound: secs(120), expected: Some(cfg.sublattice_instances) },
        Criterion { n: 4, what: "sublattice recovery with partition witnesses", bound: None, expected: Some(cfg.sublattice_instances) },
        Criterion { n: 5, what: "categorical predicates against brute force", bound: secs(600), expected: Some(2) },
        Criterion { n: 6, what: "T_D four-way equivalence", bound: None, expected: Some(spaces + cfg.random_pervin) },
        Criterion { n: 7, what: "symmetrization coherence", bound: None, expected: Some(5 * frames) },
        Criterion { n: 8, what: "completion characterization", bound: secs(600), expected: Some(sized) },
        Criterion { n: 9, what: "Pervin/Frith adjunction", bound: None, expected: Some(spaces * sized) },
        Criterion { n: 10, what: "coreflection through gamma", bound: None, expected: Some(cfg.coreflection_instances * frames) },
    ]
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture or a name filter may be passed through; ignore them.
    let cfg = SuiteConfig::default();
    let mut all_ok = true;
    for c in criteria(&cfg) {
        let mut failures: Vec<CheckReport> = Vec::new();
        let start = Instant::now();
        let s = run_criterion(&cfg, c.n, &mut |r| {
            if r.verdict != Verdict::Pass {
                failures.push(r);
            }
        });
        let elapsed = start.elapsed();
        let in_time = c.bound.is_none_or(|b| elapsed < b);
        let covered = c.expected.is_none_or(|e| s.total() == e) && s.total() > 0;
        let ok = s.fail == 0 && s.skipped == 0 && in_time && covered;
        all_ok &= ok;
        let bound = c.bound.map(|b| format!(" (bound {} s)", b.as_secs())).unwrap_or_default();
        let expected = c.expected.map(|e| format!("/{e}")).unwrap_or_default();
        println!(
            "criterion {:>2} {}: {} instances{expected}, {} failed, {} skipped, {:.2} s{bound}  [{}]",
            c.n,
            c.what,
            s.total(),
            s.fail,
            s.skipped,
            elapsed.as_secs_f64(),
            if ok { "pass" } else { "FAIL" },
        );
        for f in failures.iter().take(3) {
            println!("    {}", serde_json::to_string(f).expect("reports serialize"));
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
