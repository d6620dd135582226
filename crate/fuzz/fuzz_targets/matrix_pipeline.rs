#![no_main]
use libfuzzer_sys::fuzz_target;
use schubert_core::parse::{parse_subspace, InputMode};
use schubert_core::tnn::TnnComplex;
use schubert_core::{check_axioms, OrientedMatroid};

/// Keeps each run fast: covector sets grow quickly with the ground set.
const MAX_FUZZ_GROUND: usize = 5;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(v) = parse_subspace(text, InputMode::Equations, false) else {
        return;
    };
    if v.ground_size() > MAX_FUZZ_GROUND {
        return;
    }
    let m = OrientedMatroid::from_subspace(&v, false).expect("ground size already checked");
    assert!(check_axioms(m.ground_size(), m.covectors()).passed());
    assert_eq!(m.rank(), v.dim());
    let tnn = TnnComplex::new(&m);
    assert_eq!(tnn.complex().euler_characteristic(), 1);
    assert!(tnn.boundary_pairing_check().passed());
});
