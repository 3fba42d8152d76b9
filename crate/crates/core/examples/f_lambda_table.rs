//! The coefficients `f_λ` expressing the level-N genus of a 4-manifold
//! through its Chern numbers, and the vanishing they predict for CP^2.

use genus_forge::localization::{chern_numbers, cpn_fixed_points, genus_qexp};
use genus_forge::modular::{q_ctx, QSeries};
use genus_forge::symfunc::f_lambda_table;

pub fn main() -> genus_forge::Result<()> {
    let cp2 = cpn_fixed_points(2, &[1, 2])?;
    let chern = chern_numbers(&cp2)?;
    for level in [2, 3] {
        let table = f_lambda_table(level, 2, 6)?;
        println!("N = {level}");
        for (lambda, f) in &table {
            println!("  f_{lambda} = {f}");
        }
        // Two routes to the genus: Σ f_λ C_λ, and the fixed-point sum.
        let mut via_table = QSeries::zero(q_ctx(level, 6));
        for (lambda, f) in &table {
            via_table = via_table.try_add(&f.scale_by(&chern[lambda]))?;
        }
        assert_eq!(via_table, genus_qexp(&cp2, level, 6)?);
        println!("  genus of CP^2 = {via_table}");
    }
    Ok(())
}
