//! Run every pipeline principle in both logics and summarise the verdicts.

use nszoo::catalog::{pipeline, PIPELINE_PRINCIPLES};
use nszoo::normalform::Logic;

fn main() {
    for name in PIPELINE_PRINCIPLES {
        for logic in [Logic::Classical, Logic::Intuitionistic] {
            match pipeline(name, logic) {
                Ok(r) => {
                    let passed = r.verdicts.values().filter(|v| v.is_pass()).count();
                    println!("{:<5} {:<14} {}/{} verdicts pass", name, logic, passed, r.verdicts.len());
                }
                Err(e) => println!("{:<5} {:<14} failed: {}", name, logic, e),
            }
        }
    }
}
