//! Positive roots, Weyl group witnesses and prenilpotency of root pairs.

use kmprop::gcm::GeneralizedCartanMatrix;
use kmprop::roots::{
    is_prenilpotent_pair, positive_roots_up_to_height, root_status, weyl_apply, RootStatus, RootVector,
};

fn main() -> kmprop::Result<()> {
    let affine = GeneralizedCartanMatrix::new(vec![vec![2, -2], vec![-2, 2]])?;
    println!("positive roots of {affine} up to height 9:");
    for (root, tag) in positive_roots_up_to_height(&affine, 9) {
        println!("  {root:<8} {tag:?}");
    }

    let g2 = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-3, 2]])?;
    let top = RootVector(vec![3, 2]);
    if let RootStatus::Real { word, simple } = root_status(&g2, &top)? {
        let image = weyl_apply(&g2, &word, &RootVector::simple(2, simple))?;
        println!("{top} = {} applied to alpha_{} -> {image}", word.display(&g2), simple + 1);
    }

    let a2 = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-1, 2]])?;
    for (x, y) in [(vec![1, 0], vec![0, -1]), (vec![1, 1], vec![-1, -1])] {
        let (a, b) = (RootVector(x), RootVector(y));
        println!("prenilpotent({a}, {b}) in {a2}: {:?}", is_prenilpotent_pair(&a2, &a, &b, 8)?);
    }
    Ok(())
}
