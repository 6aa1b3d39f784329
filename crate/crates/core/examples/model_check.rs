//! Check rewrite rules in small finite models: the sound ones show no
//! violation, idealisation shows a counterexample.

use nszoo::normalform::RuleName;
use nszoo::semantics::{check_rule_soundness, SoundnessConfig, SOUND_RULES};

fn main() -> nszoo::Result<()> {
    let config = SoundnessConfig::default();
    for rule in SOUND_RULES {
        let r = check_rule_soundness(rule, &config)?;
        println!("{:<18} {} pairs, {} violations", rule.to_string(), r.pairs, r.violations);
    }
    let r = check_rule_soundness(RuleName::Idealisation, &config)?;
    println!("Idealisation: {} violations; first counterexample:", r.violations);
    if let Some(c) = r.counterexamples.first() {
        print!("{}", c.to_text());
    }
    Ok(())
}
