/// Kahan–Babuška compensated accumulator. The sweep algorithms add many
/// small box volumes to a large running total; plain summation loses the
/// low-order bits that the equivalence tests compare.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_bits_lost_by_naive_summation() {
        let mut k = KahanSum::new();
        let mut naive = 0.0f64;
        k.add(1e16);
        naive += 1e16;
        for _ in 0..10_000 {
            k.add(0.1);
            naive += 0.1;
        }
        k.add(-1e16);
        naive += -1e16;
        assert!((k.value() - 1000.0).abs() < 1e-9);
        // The naive total is visibly off; if this ever starts passing the
        // platform changed and the accumulator is no longer load-bearing.
        assert!((naive - 1000.0).abs() > 1e-4);
    }
}
