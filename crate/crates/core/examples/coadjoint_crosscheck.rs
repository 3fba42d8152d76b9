//! Chern-number combinations of coadjoint orbits two ways: divided
//! differences over the Weyl group, and localization at the fixed points.

use genus_forge::coadjoint::{crosscheck_qi, orbit_fixed_points, OrbitSpec};
use genus_forge::symfunc::partitions_at_most;

pub fn main() -> genus_forge::Result<()> {
    let orbits = [
        ("CP^3", OrbitSpec::projective_space(3)?, vec![0, -1, -3, -7]),
        ("oriented Grassmannian Gr(2,5)", OrbitSpec::oriented_grassmannian(2)?, vec![5, 2]),
    ];
    for (name, orbit, xi) in &orbits {
        let fpd = orbit_fixed_points(orbit, xi)?;
        println!("{name}: n = {}, {} fixed points, {}", orbit.n(), fpd.num_points(), orbit.to_json());
        for k in orbit.n() as u32..=orbit.n() as u32 + 1 {
            for p in partitions_at_most(k, orbit.n()) {
                let rep = crosscheck_qi(orbit, &p, xi)?;
                println!("  q_{p}: {} vs {}", rep.divided_difference, rep.localization);
                assert!(rep.passed());
            }
        }
    }
    Ok(())
}
