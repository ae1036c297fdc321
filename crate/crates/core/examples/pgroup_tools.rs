//! The black-box group engine on a user-defined oracle: 3x3 unitriangular
//! matrices over F_p.

use kmprop::group::{
    closure, derived_subgroup, frattini_quotient_dimension, is_normalized_by, is_perfect, GroupOracle,
};

struct Heisenberg(u64);

impl GroupOracle for Heisenberg {
    type Elem = [u64; 3];

    fn identity(&self) -> [u64; 3] {
        [0; 3]
    }

    fn mul(&self, x: &[u64; 3], y: &[u64; 3]) -> [u64; 3] {
        let p = self.0;
        [(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p]
    }

    fn inv(&self, x: &[u64; 3]) -> [u64; 3] {
        let p = self.0;
        let (a, b) = ((p - x[0]) % p, (p - x[1]) % p);
        [a, b, (p * p - x[2] - x[0] * b % p) % p]
    }
}

fn main() -> kmprop::Result<()> {
    let h = Heisenberg(5);
    let gens = [[1, 0, 0], [0, 1, 0]];
    let g = closure(&h, &gens, 1 << 16)?;
    let d = derived_subgroup(&h, &gens, 1 << 16)?;
    let phi = frattini_quotient_dimension(&h, &gens, 5, 1 << 16)?;
    println!("|G| = {}, |[G,G]| = {}, normal: {}", g.order(), d.order(), is_normalized_by(&h, &d, &gens));
    println!("Frattini quotient dimension {} (index {})", phi.dimension, phi.index);
    println!("perfect: {}", is_perfect(&h, &gens, 1 << 16)?);
    Ok(())
}
