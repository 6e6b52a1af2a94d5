#![no_main]

use libfuzzer_sys::fuzz_target;

// Anything that parses must print back to a form that reparses to the same
// schemas.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(parsed) = priolog::parse::parse_program(src) else { return };

    let printed: String = parsed.schemas.iter().map(|r| format!("{r}\n")).collect();
    let reparsed = priolog::parse::parse_program(&printed)
        .unwrap_or_else(|e| panic!("printed form failed to parse: {e}\n{printed}"));
    assert_eq!(parsed.schemas, reparsed.schemas, "round trip changed the program:\n{printed}");
});
