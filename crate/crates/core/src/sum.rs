use crate::scalar::Real;

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct StableSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> StableSum<T> {
    pub(crate) fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> T {
        self.sum + self.comp
    }
}

pub(crate) fn stable_sum<T: Real>(values: impl IntoIterator<Item = T>) -> T {
    let mut acc = StableSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Mean that does not depend on the order of `values`: the values are sorted
/// before the compensated summation.
pub(crate) fn order_free_mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(stable_sum(sorted) / values.len() as f64)
}
