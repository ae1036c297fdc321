//! The Iwahori Sylow of SL_m over F_q[t]/(t^k): generation, Frattini
//! dimension, congruence filtration and the commutator identity.

use kmprop::affine::{
    commutator_identity_check, congruence_subgroup, filtration_lemma_affine, frattini_dimension_affine,
    generation_report, sylow_order,
};
use kmprop::field::{Fq, FqConfig};

const CAP: usize = 1 << 21;

fn main() -> kmprop::Result<()> {
    for (m, q, k) in [(2, 3, 3), (3, 3, 2), (2, 9, 2), (2, 2, 3)] {
        let fq = FqConfig::new(q)?;
        let with = generation_report(m, &fq, k, true, CAP)?;
        let without = generation_report(m, &fq, k, false, CAP)?;
        println!(
            "m={m} q={q} k={k}: |U|={} closure {} (without affine generator {}) Frattini dim {}",
            sylow_order(m, q, k),
            with.closure_order,
            without.closure_order,
            frattini_dimension_affine(m, &fq, k, CAP)?
        );
    }

    let f3 = FqConfig::new(3)?;
    for i in 1..=3 {
        println!("|K_{i}| in SL_2(F_3[t]/t^3) = {}", congruence_subgroup(2, &f3, 3, i)?.order());
    }
    println!("filtration check (2,3,4): {:?}", filtration_lemma_affine(2, &f3, 4, CAP)?);
    println!("commutator identity r=2 s=1 t^2, t^3: {}", commutator_identity_check(&f3, Fq(2), Fq(1), 2, 3, 10)?);
    Ok(())
}
