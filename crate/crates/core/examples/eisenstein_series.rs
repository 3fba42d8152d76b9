//! q-expansions of level-N Eisenstein series, and the product expansion of
//! `Q_N(x)` whose coefficients they are.

use genus_forge::modular::{eisenstein, qn_expansion_via_product, verify_lemma_eisenstein, QSeriesJson};

pub fn main() -> genus_forge::Result<()> {
    for level in [2, 3, 4] {
        for k in 1..=4 {
            println!("G[{k},{level}] = {}", eisenstein(k, level, 6)?);
        }
    }

    // Odd weights vanish at level 2, since zeta = -1 is real.
    assert!(eisenstein(3, 2, 8)?.is_zero());

    let qn = qn_expansion_via_product(3, 4, 6)?;
    for k in 1..=3 {
        assert_eq!(qn.coeff(k), &*eisenstein(k as u32, 3, 6)?);
    }
    let report = verify_lemma_eisenstein(5, 4, 8)?;
    println!("Q_5 coefficients agree with G[k,5] for k <= 4: {}", report.passed());
    assert!(report.passed());

    let json = serde_json::to_string(&QSeriesJson::from_series(&*eisenstein(2, 3, 4)?)).expect("plain data");
    println!("{json}");
    Ok(())
}
