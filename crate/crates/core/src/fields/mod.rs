//! Limit slopes φ(λ) and the field lines of the vector field `(1, φ((x − y)/y))`.

mod line;
mod root;
mod zeta;

pub use line::{
    field_line_closed, field_line_ode, homothety_check, integrate_field_line, slope_at, FieldLine,
    HomothetyReport, LineMode, OdeGrid,
};
pub use zeta::{phi, phi_at, zeta, zeta_at, Lambda, ZetaSolution};
