use crate::field::{Fq, FqConfig};

/// `F_q[t] / (t^k)`, elements stored as `k` dense coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPolyRing {
    fq: FqConfig,
    k: usize,
}

impl TruncatedPolyRing {
    pub fn new(fq: FqConfig, k: usize) -> Self {
        assert!(k >= 1, "truncation order must be positive");
        Self { fq, k }
    }

    pub fn field(&self) -> &FqConfig {
        &self.fq
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn zero(&self) -> Vec<Fq> {
        vec![Fq(0); self.k]
    }

    pub fn one(&self) -> Vec<Fq> {
        self.constant(Fq(1))
    }

    pub fn constant(&self, a: Fq) -> Vec<Fq> {
        let mut v = self.zero();
        v[0] = a;
        v
    }

    /// `a t^e`, zero when `e >= k`.
    pub fn monomial(&self, a: Fq, e: usize) -> Vec<Fq> {
        let mut v = self.zero();
        if e < self.k {
            v[e] = a;
        }
        v
    }

    pub fn add(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        a.iter().zip(b).map(|(x, y)| self.fq.add(*x, *y)).collect()
    }

    pub fn sub(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        a.iter().zip(b).map(|(x, y)| self.fq.sub(*x, *y)).collect()
    }

    pub fn neg(&self, a: &[Fq]) -> Vec<Fq> {
        a.iter().map(|x| self.fq.neg(*x)).collect()
    }

    pub fn mul(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let mut out = self.zero();
        self.mul_add_into(&mut out, a, b);
        out
    }

    /// `out += a b`.
    pub fn mul_add_into(&self, out: &mut [Fq], a: &[Fq], b: &[Fq]) {
        for (i, &x) in a.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, &y) in b[..self.k - i].iter().enumerate() {
                if y.0 != 0 {
                    out[i + j] = self.fq.add(out[i + j], self.fq.mul(x, y));
                }
            }
        }
    }

    pub fn is_zero(&self, a: &[Fq]) -> bool {
        a.iter().all(|c| c.0 == 0)
    }

    pub fn is_unit(&self, a: &[Fq]) -> bool {
        a[0].0 != 0
    }

    /// Power-series inverse of a unit.
    pub fn inv(&self, a: &[Fq]) -> Option<Vec<Fq>> {
        let c0 = self.fq.inv(a[0])?;
        let mut b = self.zero();
        b[0] = c0;
        for n in 1..self.k {
            let mut s = Fq(0);
            for i in 1..=n {
                s = self.fq.add(s, self.fq.mul(a[i], b[n - i]));
            }
            b[n] = self.fq.neg(self.fq.mul(c0, s));
        }
        Some(b)
    }

    /// `a` lies in `t^i F_q[t] / (t^k)`.
    pub fn divisible_by_t_power(&self, a: &[Fq], i: usize) -> bool {
        a[..i.min(self.k)].iter().all(|c| c.0 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_laws_and_inverses() {
        let r = TruncatedPolyRing::new(FqConfig::new(3).unwrap(), 4);
        let t = r.monomial(Fq(1), 1);
        let mut power = r.one();
        for _ in 0..4 {
            power = r.mul(&power, &t);
        }
        assert!(r.is_zero(&power));
        let a = vec![Fq(2), Fq(1), Fq(0), Fq(2)];
        let b = r.inv(&a).unwrap();
        assert_eq!(r.mul(&a, &b), r.one());
        assert_eq!(r.inv(&t), None);
        let c = vec![Fq(1), Fq(2), Fq(2), Fq(1)];
        assert_eq!(r.mul(&a, &c), r.mul(&c, &a));
        assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
    }
}
