use std::time::Instant;

use rdpinv::envres::{versal_coeffs, EType};
use rdpinv::invariance::{block_images, fixed_by_images, invariant_full};
use rdpinv::rootsys::RootSystemSpec;

fn check(t: EType, full: bool) {
    let spec = RootSystemSpec::e(t.rank());
    let eps = versal_coeffs(t, None).unwrap();
    let images = block_images(&spec).unwrap();
    for (name, p) in &eps {
        let start = Instant::now();
        assert!(fixed_by_images(p, &images), "{t} {name} moved by r_v0");
        if full {
            assert!(invariant_full(&spec, p).unwrap(), "{t} {name} full route");
        }
        eprintln!("{t} {name}: {} terms, {:?}", p.len(), start.elapsed());
    }
}

#[test]
fn e6_coordinates_are_invariant_on_both_routes() {
    check(EType::E6, true);
}

#[test]
fn e7_coordinates_are_invariant() {
    check(EType::E7, false);
}

#[test]
fn e8_coordinates_are_invariant() {
    check(EType::E8, false);
}
