//! Parse a formula with a declaration header, typecheck it and print it back.

use nszoo::syntax::{parse_document, print_formula, typecheck_formula, Context, Signature};

fn main() -> nszoo::Result<()> {
    let text = "sym g : 0 -> 0\n!st x:0. ?y:0. g(x) <= y & st(y)\n";
    let (sig, f) = parse_document(text, &Signature::new())?;
    typecheck_formula(&f, &Context::new(&sig))?;
    println!("parsed:   {}", print_formula(&f));
    println!("internal: {}", f.is_internal());
    let (_, again) = parse_document(&format!("{}{}", sig, print_formula(&f)), &Signature::new())?;
    println!("round trip equal: {}", again == f);
    Ok(())
}
