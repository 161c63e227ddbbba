pub mod moment;
pub mod spectrum;
pub mod toeplitz;
pub mod verify;

use crate::report::{self, Obj};
use mmtop::{BetaBasis, GroupAction};

pub fn action_label(action: GroupAction) -> &'static str {
    match action {
        GroupAction::Elliptic(_) => "elliptic",
        GroupAction::Parabolic(_) => "parabolic",
        GroupAction::Hyperbolic(_) => "hyperbolic",
        GroupAction::Nilpotent(_) => "nilpotent",
        GroupAction::QuasiNilpotent(..) => "quasinilpotent",
    }
}

/// Config echo shared by the subcommands: resolved action and basis rows.
pub fn base_config(action: GroupAction, basis: &BetaBasis) -> Obj {
    let mut obj = Obj::new()
        .field("action", report::string(action_label(action)))
        .field("n", report::int(action.n()));
    if let GroupAction::QuasiNilpotent(_, k) = action {
        obj = obj.field("k", report::int(k));
    }
    obj.field(
        "beta",
        report::array(basis.vectors().iter().map(|v| report::reals(v))),
    )
}

pub fn profile_config(name: &str, coeffs: &[f64]) -> String {
    Obj::new()
        .field("name", report::string(name))
        .field("coefficients", report::reals(coeffs))
        .finish()
}
