//! Good generating sets `Xb, Yb, Zb, Wb` as polynomials in `x, y, z` over the `s_i`.

use std::sync::Arc;

use super::sextic;
use super::EType;
use crate::poly::{Polynomial, Rational, VarTable};

const CUSP: &str = "x^3 - y*z^2";

const E6_Z: &str = "y^2*z - s1*x^2*y + s2*x*y*z - s3*x^3 + s4*x^2*z - s5*x*z^2 + s6*z^3";
const E6_Y: &str = "x*y^2 - s1*y^2*z + s2*x^2*y - s3*x*y*z + s4*x^3 - s5*x^2*z + s6*x*z^2";
const E6_X: &str = "y^3 + (s2 - s1^2)*x*y^2 - (s3 - s1*s2)*y^2*z + (s4 - s1*s3)*x^2*y \
    - (s5 - s1*s4)*x*y*z + (s6 - s1*s5)*x^3 + s1*s6*x^2*z";

const E7_Z: &str = "x*y^2 - s1*y^2*z + s2*x^2*y - s3*x*y*z + s4*x^3 - s5*x^2*z + s6*x*z^2 - s7*z^3";
const E7_Y: &str = "4*y^3 + (4*s2 - 4*s1^2 + s1^2)*x*y^2 - (4*s3 - 4*s1*s2 + s1^3)*y^2*z \
    + (4*s4 - 4*s1*s3 + s1^2*s2)*x^2*y - (4*s5 - 4*s1*s4 + s1^2*s3)*x*y*z \
    + (4*s6 - 4*s1*s5 + s1^2*s4)*x^3 - (4*s7 - 4*s1*s6 + s1^2*s5)*x^2*z \
    + (-4*s1*s7 + s1^2*s6)*x*z^2 - s1^2*s7*z^3";

const E8_Z: &str = "y^3 + (s2 - s1^2)*x*y^2 - (s3 - s1*s2)*y^2*z + (s4 - s1*s3)*x^2*y \
    - (s5 - s1*s4)*x*y*z + (s6 - s1*s5)*x^3 - (s7 - s1*s6)*x^2*z + (s8 - s1*s7)*x*z^2 + s1*s8*z^3";

/// Four generators of the anti-pluricanonical algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodGenSet {
    pub x: Polynomial,
    pub y: Polynomial,
    pub z: Polynomial,
    pub w: Polynomial,
}

impl GoodGenSet {
    pub fn as_array(&self) -> [&Polynomial; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }
}

fn parse(text: &str, t: &Arc<VarTable>) -> Polynomial {
    Polynomial::parse(text, t).expect("built-in generator text parses")
}

/// `det d(f, g, h)/d(x, y, z)` by cofactor expansion along the first row.
pub fn jacobian(f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
    let d = |p: &Polynomial| ["x", "y", "z"].map(|v| p.derivative(v));
    let [fx, fy, fz] = d(f);
    let [gx, gy, gz] = d(g);
    let [hx, hy, hz] = d(h);
    &(&fx * &(&(&gy * &hz) - &(&gz * &hy))) - &(&fy * &(&(&gx * &hz) - &(&gz * &hx)))
        + &fz * &(&(&gx * &hy) - &(&gy * &hx))
}

/// Good generating set for `t`. For E8 the sextic `Yb` is obtained from the
/// linear solve in [`sextic`].
pub fn good_gens_bar(t: EType) -> GoodGenSet {
    let tab = t.table();
    let w = parse(CUSP, &tab);
    match t {
        EType::E6 => GoodGenSet { x: parse(E6_X, &tab), y: parse(E6_Y, &tab), z: parse(E6_Z, &tab), w },
        EType::E7 => {
            let y = parse(E7_Y, &tab);
            let z = parse(E7_Z, &tab);
            let x = jacobian(&y, &z, &w).scale(&Rational::new(1, 3));
            GoodGenSet { x, y, z, w }
        }
        EType::E8 => {
            let z = parse(E8_Z, &tab);
            let y = sextic::solve_sextic().expect("sextic system is consistent").sextic.embed(&tab).expect("subtable");
            let x = jacobian(&y, &z, &w).scale(&Rational::new(-1, 6));
            GoodGenSet { x, y, z, w }
        }
    }
}
