//! A short tour: atoms of a ground, factorizations of an element, and the
//! invariants derived from them.

use zerosum::atoms::enumerate_atoms;
use zerosum::budget::Budget;
use zerosum::elasticity::exact_elasticity;
use zerosum::factorize::factorizations;
use zerosum::groundspec::{GroundSpec, Progression};
use zerosum::invariants::{catenary, monotone_catenary};
use zerosum::Sequence;

fn main() -> zerosum::Result<()> {
    let budget = Budget::default();

    let atoms = enumerate_atoms(&[-2, -1, 2, 3], &budget)?;
    println!("atoms over {{-2,-1,2,3}}:");
    for a in &atoms.atoms {
        println!("  {a}");
    }
    println!("Davenport constant: {}", atoms.davenport());

    let b: Sequence = "3^2 2^3 -2^3 -1^6".parse()?;
    let zs = factorizations(&b, &atoms, &budget)?;
    println!("\n{b} has {} factorizations:", zs.len());
    for z in &zs.all {
        println!("  |z| = {}: {z}", z.len());
    }
    let lengths = zs.length_set();
    println!(
        "lengths {:?}, gaps {:?}, elasticity {}",
        lengths.lengths,
        lengths.delta(),
        lengths.elasticity()?
    );
    println!(
        "catenary degree {}, monotone catenary degree {}",
        catenary(&b, &atoms, &budget)?,
        monotone_catenary(&b, &atoms, &budget)?
    );

    let odds = GroundSpec::from_parts([-2, -1], vec![Progression::new(1, 2)?]);
    let report = exact_elasticity(&odds, &budget)?;
    println!(
        "\nelasticity of {{-2,-1}} ∪ odd positives: {} (accepted: {:?})",
        report.rho, report.accepted
    );
    Ok(())
}
