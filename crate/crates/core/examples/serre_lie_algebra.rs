//! Builds the positive part of a Kac-Moody algebra from its Serre
//! presentation and reads off root multiplicities.

use kmprop::field::{PrimeField, Rationals};
use kmprop::gcm::GeneralizedCartanMatrix;
use kmprop::lie::GradedLieAlgebra;
use kmprop::roots::RootVector;

fn main() -> kmprop::Result<()> {
    let affine_a2 = GeneralizedCartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]])?;
    let lie = GradedLieAlgebra::build(&affine_a2, 6, Rationals)?;
    println!("dimensions by height: {:?}", lie.dimensions());
    for n in 1..=2 {
        let delta = RootVector(vec![n, n, n]);
        println!("mult({delta}) = {}", lie.root_multiplicity(&delta)?);
    }
    println!("Jacobi violations: {:?}", lie.jacobi_violation());

    let modp = GradedLieAlgebra::build(&affine_a2, 6, PrimeField::new(7)?)?;
    println!("same dimensions over F_7: {}", modp.dimensions() == lie.dimensions());

    let a2 = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-1, 2]])?;
    let small = GradedLieAlgebra::build(&a2, 3, Rationals)?;
    println!("{}", serde_json::to_string(&small.dump()).expect("serializable"));
    Ok(())
}
