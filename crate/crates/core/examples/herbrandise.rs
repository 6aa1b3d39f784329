//! Herbrandise the implication from a uniform principle to the transfer
//! principle, then reverse the construction.

use nszoo::catalog::{get_principle, plus_version};
use nszoo::extraction::{herbrandise, meta_reverse};
use nszoo::normalform::{normalize, Logic};
use nszoo::syntax::{alpha_eq, print_formula, Formula};

fn main() -> nszoo::Result<()> {
    let plus = plus_version(&get_principle("UPi01G")?)?;
    let transfer = get_principle("PI01-TRANS")?.statement;
    let (consequent, _) = normalize(&transfer, Logic::Classical)?;
    let h = herbrandise(&plus.statement, &consequent)?;
    println!("{}", print_formula(&h.body));
    let back = meta_reverse(&h)?;
    let original = Formula::implies(plus.statement, transfer);
    println!("round trip: {}", alpha_eq(&back, &original));
    Ok(())
}
