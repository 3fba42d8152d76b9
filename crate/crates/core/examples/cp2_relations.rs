//! Relations among level-3 Eisenstein series forced by the vanishing of the
//! level-3 genus of CP^2, checked against their q-expansions.

use genus_forge::localization::{build_relation, cpn_fixed_points, verify_relation, FixedPointData, Relation};

pub fn main() -> genus_forge::Result<()> {
    let cp2 = cpn_fixed_points(2, &[1, 3])?;
    for k in 2..=8 {
        let rel = build_relation(&cp2, 3, k)?;
        if rel.is_trivial() {
            println!("k = {k}: trivial");
            continue;
        }
        let check = verify_relation(&rel, 20)?;
        println!("k = {k}: {}   (holds through q^19: {})", rel.primitive(), check.passed());
        assert!(check.passed());
    }

    // Relations round-trip through JSON.
    let rel = build_relation(&cp2, 3, 4)?;
    let json = rel.to_json();
    println!("{json}");
    assert_eq!(Relation::from_json(&json)?, rel);

    // Fixed-point data can also be written by hand.
    let manual = FixedPointData::from_json(r#"{"n": 1, "points": [{"weights": [2]}, {"weights": [-2]}]}"#)?;
    println!("CP^1 with weight 2 gives at k = 3: {}", build_relation(&manual.with_index(2), 2, 3)?.primitive());
    Ok(())
}
