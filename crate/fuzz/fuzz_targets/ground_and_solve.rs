#![no_main]

use libfuzzer_sys::fuzz_target;

use priolog::ground::{constant_domain, ground};
use priolog::parse::parse_program;
use priolog::semantics::{wfs, wfs_pr, wfs_star, Engine};

// Run the full pipeline on small inputs and check the semantic inclusion
// chain, which must hold for every program the front end accepts.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if src.len() > 2048 {
        return;
    }

    // cap the instantiation blowup before grounding, not after
    let Ok(parsed) = parse_program(src) else { return };
    let constants = constant_domain(&parsed);
    if parsed.schemas.len() > 48 || constants.len() > 5 {
        return;
    }
    if parsed.schemas.iter().any(|s| s.variables().len() > 3) {
        return;
    }

    let Ok(program) = ground(&parsed.schemas, &constants) else { return };
    if program.len() > 48 || program.signature().atoms.len() > 24 {
        return;
    }

    let classical = wfs(&program);
    let strengthened = wfs_star(&program);
    let prioritized = wfs_pr(&program, Engine::Declarative, false);
    let incremental = wfs_pr(&program, Engine::Incremental, false);

    assert!(
        classical.final_set().is_subset(strengthened.final_set()),
        "wfs exceeded wfs* on:\n{program}"
    );
    assert!(
        strengthened.final_set().is_subset(prioritized.final_set()),
        "wfs* exceeded wfs-pr on:\n{program}"
    );
    assert_eq!(
        prioritized.final_set(),
        incremental.final_set(),
        "engines disagree on:\n{program}"
    );
});
