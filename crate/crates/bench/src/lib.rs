//! Shared inputs for the criterion benches.

use gcmwb_core::local::{make_local_ring, LocalRing, ParameterSystem, RingPresentation};

/// `F101[x,y]/(x^2, x*y^r)` with `Q = (y)`.
pub fn example_ring(r: u32) -> (LocalRing, ParameterSystem) {
    let g = format!("x*y^{r}");
    let a = make_local_ring(RingPresentation::parse(101, &["x", "y"], &["x^2", &g]).unwrap()).unwrap();
    let q = a.parse_parameter_system(&["y"]).unwrap();
    (a, q)
}

/// Two planes meeting in a point: `F101[x,y,u,v]/(xu, xv, yu, yv)`.
pub fn two_planes() -> (LocalRing, ParameterSystem) {
    let a = make_local_ring(RingPresentation::parse(101, &["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]).unwrap()).unwrap();
    let q = a.parse_parameter_system(&["x + u", "y + v"]).unwrap();
    (a, q)
}
