//! Named two-generator presentations used throughout the crate and its tests.

use crate::fpgroup::Presentation;

fn parse(s: &str) -> Presentation {
    Presentation::parse(s).expect("library presentations are well formed")
}

/// Q8 in the form whose relators name the covering generators:
/// `(xy)^4 = x y^-1 x y = y x^-1 y x = 1`.
pub fn quaternion() -> Presentation {
    parse("(xy)4, xYxy, yXyx")
}

/// Q8 as `x^4 = 1, x^2 = y^2, y^-1 x y = x^-1`.
pub fn quaternion_classical() -> Presentation {
    parse("x4, x2Y2, Yxyx")
}

/// The metacyclic group `x^4 = y^4 = 1, y^-1 x y = x^-1` of order 16.
pub fn metacyclic_16() -> Presentation {
    parse("x4, y4, Yxyx")
}

/// Order-32 smooth cover of the quaternion hypermap, type (4,4,4), genus 5:
/// `x^4 = y^4 = (xy)^4 = [x, y^2] = [y, x^2] = 1`.
pub fn rph_5_8() -> Presentation {
    parse("x4, y4, (xy)4, XYYxyy, YXXyxx")
}

/// Regular map of type {12,12}, genus 17, with `z = (xy)^-1`:
/// `x^12 = y^2 = z^12 = 1, (x^3)^z = x^9, (z^3)^x = z^9, z^6 = x^6`.
pub fn r_17_35() -> Presentation {
    // z = YX, z^-1 = xy
    parse("x12, y2, (YX)12, xyx3YXX9, X(YX)3x(xy)9, (YX)6X6")
}

/// The tetrahedral map: Alt(4) as `x^3 = y^2 = (xy)^3 = 1`.
pub fn tetrahedral() -> Presentation {
    parse("x3, y2, (xy)3")
}

/// The four nontrivial smooth covers of the quaternion hypermap with abelian
/// normalized bicyclic covering group, in the order H1..H4.
pub fn smooth_quaternion_covers() -> [Presentation; 4] {
    [
        // [x,y]^2 = (XYxy)^2, x^2 = y^2
        parse("x4, y4, (xy)4, (XYxy)2, x2Y2"),
        parse("x4, y4, (xy)4, yXyx"),
        parse("x4, y4, (xy)4, xYxy"),
        parse("x4, y4, (xy)4, XYYxyy, YXXyxx, (XYxy)2"),
    ]
}
