#![no_main]

use libfuzzer_sys::fuzz_target;

// Arbitrary bytes must never panic the scenario parser: anything that is
// not a valid scenario comes back as a structured error. When a document
// does parse, the resulting config has passed every invariant, so hashing
// and evaluating it must not panic either.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = ratedim::scenario::parse_scenario_str(text) {
            let _ = ratedim::scenario::scenario_hash(&cfg);
            let _ = cfg.mixture_pdf(1e8);
        }
    }
});
