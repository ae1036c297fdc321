use super::{AffineMatrix, MatrixGroup};
use crate::error::Result;
use crate::field::FqConfig;
use crate::group::{self, verify_tits_axioms, FiniteGroupTable, GroupOracle, TitsReport};

/// The standard Tits system of `SL_n(F_q)`: upper triangular `B`, monomial
/// `N` and the simple reflections `S`.
#[derive(Debug, Clone)]
pub struct BnPair {
    pub group: MatrixGroup,
    pub g: FiniteGroupTable<AffineMatrix>,
    pub b: FiniteGroupTable<AffineMatrix>,
    pub n: FiniteGroupTable<AffineMatrix>,
    pub s: Vec<AffineMatrix>,
}

/// `diag(.., a, a^-1, ..)` at positions `i, i+1`.
fn torus_generator(g: &MatrixGroup, i: usize, a: crate::field::Fq) -> AffineMatrix {
    let f = g.field();
    let mut entries = identity_entries(g);
    entries[i][i] = g.ring().constant(a);
    entries[i + 1][i + 1] = g.ring().constant(f.inv(a).expect("nonzero"));
    g.from_entries(&entries)
}

fn identity_entries(g: &MatrixGroup) -> Vec<Vec<Vec<crate::field::Fq>>> {
    let ring = g.ring();
    (0..g.m()).map(|i| (0..g.m()).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect()
}

/// The signed transposition of `i, i+1`.
fn reflection(g: &MatrixGroup, i: usize) -> AffineMatrix {
    let f = g.field();
    let ring = g.ring();
    let mut entries = identity_entries(g);
    entries[i][i] = ring.zero();
    entries[i + 1][i + 1] = ring.zero();
    entries[i][i + 1] = ring.one();
    entries[i + 1][i] = ring.constant(f.neg(crate::field::Fq(1)));
    g.from_entries(&entries)
}

pub fn standard_bn_pair(n: usize, fq: &FqConfig, cap: usize) -> Result<BnPair> {
    let group = MatrixGroup::new(n, fq.clone(), 1);
    let a = fq.primitive_element();
    let torus: Vec<AffineMatrix> = (0..n - 1).map(|i| torus_generator(&group, i, a)).collect();
    let mut upper = Vec::new();
    let mut all = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for v in fq.basis() {
                let e = group.elementary(i, j, v, 0);
                if i < j {
                    upper.push(e.clone());
                }
                all.push(e);
            }
        }
    }
    let s: Vec<AffineMatrix> = (0..n - 1).map(|i| reflection(&group, i)).collect();
    let g = group::closure(&group, &all, cap)?;
    let b = group::closure(&group, &[torus.clone(), upper].concat(), cap)?;
    let nn = group::closure(&group, &[torus, s.clone()].concat(), cap)?;
    Ok(BnPair { group, g, b, n: nn, s })
}

pub fn verify_tits_sl(n: usize, fq: &FqConfig, cap: usize) -> Result<TitsReport> {
    let bn = standard_bn_pair(n, fq, cap)?;
    verify_tits_axioms(&bn.group, &bn.g, &bn.b, &bn.n, &bn.s, cap)
}

impl BnPair {
    pub fn weyl_group_order(&self) -> usize {
        let t = self.b.elements().iter().filter(|x| self.n.contains(x)).count();
        self.n.order() / t
    }

    pub fn is_perfect(&self, cap: usize) -> Result<bool> {
        group::is_perfect(&self.group, self.g.generators(), cap)
    }

    pub fn identity(&self) -> AffineMatrix {
        self.group.identity()
    }
}
