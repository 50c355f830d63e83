//! Checked-in expressions.

/// Generating function of `a_3(7n + 2)`: the 7-dissection component of
/// `f_2^2 / f_1^3` at residue 2, written as eight eta-quotient terms in the
/// rescaled variable.
pub const SEVEN_DISSECTION_A3: &str = include_str!("../data/a3_seven_dissection.eta");

/// Looks up a fixture by its command-line name.
pub fn by_name(name: &str) -> Option<&'static str> {
    match name {
        "theorem13" | "a3-seven-dissection" => Some(SEVEN_DISSECTION_A3),
        _ => None,
    }
}
