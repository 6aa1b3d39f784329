//! Extract a witness term from a normal form, collapse it with max0, and
//! check the result against every function {0,1,2} -> {0,1,2}.

use nszoo::catalog::get_principle;
use nszoo::extraction::{collapse_all, extract};
use nszoo::normalform::{normalize, Logic};
use nszoo::semantics::{check_extraction, least_zero_realiser, truncated_realiser, ModelConfig, TwoLevelModel};
use nszoo::syntax::print_formula;

fn main() -> nszoo::Result<()> {
    let transfer = get_principle("PI01-TRANS")?;
    let (nf, trace) = normalize(&transfer.statement, Logic::Classical)?;
    let mut r = extract(&nf, &trace)?;
    collapse_all(&mut r)?;
    println!("internal:  {}", print_formula(&r.internal_sentence));
    if let Some(c) = &r.collapsed {
        println!("collapsed: {}", print_formula(c));
    }

    let model = TwoLevelModel::new(ModelConfig::new(3, 3), &r.signature)?;
    let good = check_extraction(&r, &model.clone().with_interp("t_m", least_zero_realiser()))?;
    println!("least-zero witness: {} assignments, pass = {}", good.assignments, good.pass);
    let bad = check_extraction(&r, &model.with_interp("t_m", truncated_realiser(least_zero_realiser())))?;
    println!("truncated witness:  {} violations", bad.violations.len());
    Ok(())
}
