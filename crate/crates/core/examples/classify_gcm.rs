//! Classifies a few generalized Cartan matrices and checks their simply
//! connected root data.

use kmprop::gcm::{classify, determinant, simply_connected_datum, check_datum, parse_gcm_json};

fn main() -> kmprop::Result<()> {
    let inputs = [
        r#"[[2,-1],[-1,2]]"#,
        r#"{"matrix": [[2,-2],[-2,2]], "labels": ["a0", "a1"]}"#,
        r#"[[2,-3],[-3,2]]"#,
        r#"[[2,-1,-1],[-1,2,-1],[-1,-1,2]]"#,
        r#"[[2,0],[0,2]]"#,
    ];
    for text in inputs {
        let gcm = parse_gcm_json(text)?;
        let ty = classify(&gcm);
        let classes: Vec<String> = ty.blocks.iter().map(|b| b.class.to_string()).collect();
        let datum = simply_connected_datum(&gcm);
        println!(
            "{gcm}  det = {:>3}  blocks = [{}]  datum ok = {}",
            determinant(gcm.entries()),
            classes.join(", "),
            check_datum(&datum)
        );
    }

    match parse_gcm_json("[[2,-1],[0,2]]") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
