//! Finite commutative hypergroups: loading, Haar weights and translation.

use bkh::finite_hypergroup::{catalog, FiniteHypergroup};

const TABLE: &str = r#"
name = "two-point, a = 0.4"
size = 2
involution = [0, 1]
tensor = [1, 0,  0, 1,  0, 1,  0.4, 0.6]
"#;

fn main() -> bkh::Result<()> {
    let h = FiniteHypergroup::parse(TABLE)?;
    println!("{h}: haar weights {:?}", h.haar_weights()?);
    println!("tau_1 [1, 0] = {:?}", h.discrete_translate(1, &[1.0, 0.0])?);

    let f = [0.3, -1.2, 2.0];
    let z3 = FiniteHypergroup::cyclic(3)?;
    println!("{z3}: {:?}", z3.norm_equalities(&f, 2.0)?);

    for h in catalog() {
        println!("built-in {h}, weights {:?}", h.haar_weights()?);
    }
    Ok(())
}
