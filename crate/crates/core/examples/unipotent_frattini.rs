//! Frattini quotients of truncated unipotent groups, computed black-box and
//! by linear algebra.

use kmprop::field::FqConfig;
use kmprop::gcm::GeneralizedCartanMatrix;
use kmprop::group::GroupOracle;
use kmprop::roots::RootVector;
use kmprop::unipotent::{verify_theorem1, UnipotentGroup, DEFAULT_CAP};

fn main() -> kmprop::Result<()> {
    let a2 = GeneralizedCartanMatrix::new(vec![vec![2, -1], vec![-1, 2]])?;
    let g = UnipotentGroup::new(&a2, FqConfig::new(5)?, 3)?;
    let x = g.root_group_element(&RootVector(vec![1, 0]), kmprop::field::Fq(1))?;
    let y = g.root_group_element(&RootVector(vec![0, 1]), kmprop::field::Fq(1))?;
    println!("[u_1(1), u_2(1)] = {:?}", g.commutator(&x, &y));

    let instances: [(Vec<Vec<i64>>, u64, usize); 4] = [
        (vec![vec![2, -1], vec![-1, 2]], 25, 3),
        (vec![vec![2, -1], vec![-2, 2]], 5, 4),
        (vec![vec![2, -1], vec![-3, 2]], 7, 4),
        (vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 5, 4),
    ];
    for (m, q, h) in instances {
        let gcm = GeneralizedCartanMatrix::new(m)?;
        let r = verify_theorem1(&gcm, &FqConfig::new(q)?, h, DEFAULT_CAP)?;
        println!(
            "{gcm} q={q} H={h}: |G|={} h1 {}/{:?}/{} Phi=[G,G] {} (ii) {:?} vs {:?} passed {}",
            r.group_order, r.h1_blackbox, r.h1_linear, r.h1_predicted, r.frattini_eq_derived,
            r.thm_ii_lhs_order, r.thm_ii_rhs_order, r.passed()
        );
    }
    Ok(())
}
