//! Bring the transfer principle for universal sentences into normal form
//! and show the rule trace.

use nszoo::catalog::get_principle;
use nszoo::normalform::{normalize, Logic};
use nszoo::syntax::print_formula;

fn main() -> nszoo::Result<()> {
    let transfer = get_principle("PI01-TRANS")?;
    println!("input:       {}", print_formula(&transfer.statement));
    for logic in [Logic::Classical, Logic::Intuitionistic] {
        let (nf, trace) = normalize(&transfer.statement, logic)?;
        println!("{:<13}{}", format!("{}:", logic), print_formula(&nf.to_formula()));
        print!("{}", trace.to_text());
    }
    Ok(())
}
