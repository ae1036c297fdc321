//! Tits-system axioms and the Bruhat decomposition for small SL_n(F_q).

use kmprop::affine::{standard_bn_pair, verify_tits_sl};
use kmprop::field::FqConfig;

fn main() -> kmprop::Result<()> {
    for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let fq = FqConfig::new(q)?;
        let bn = standard_bn_pair(n, &fq, 1 << 16)?;
        let report = verify_tits_sl(n, &fq, 1 << 16)?;
        println!(
            "SL_{n}(F_{q}): |G|={} |B|={} |W|={} perfect={} {:?}",
            bn.g.order(),
            bn.b.order(),
            bn.weyl_group_order(),
            bn.is_perfect(1 << 16)?,
            report
        );
    }
    Ok(())
}
