#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_core::parse::{parse_matrix, parse_subspace, InputMode};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix(text) {
        assert!(!m.rows.is_empty());
        assert!(m.rows.iter().all(|r| r.len() == m.width));
    }
    for mode in [InputMode::Equations, InputMode::Span] {
        if let Ok(v) = parse_subspace(text, mode, false) {
            assert!(v.dim() <= v.ground_size());
        }
    }
});
