//! Linear algebra over GF(2) on bit-packed vectors.

/// Row-reduced basis of a subspace of GF(2)^64.
#[derive(Debug, Clone, Default)]
pub struct Basis {
    // each vector has a distinct leading bit, none of which appears in another vector
    rows: Vec<u64>,
}

impl Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = u64>>(vectors: I) -> Self {
        let mut b = Self::new();
        for v in vectors {
            b.insert(v);
        }
        b
    }

    fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            let lead = 63 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let lead = 63 - v.leading_zeros();
        for r in &mut self.rows {
            if *r >> lead & 1 == 1 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Rank of a set of vectors.
pub fn rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    Basis::from_vectors(vectors).rank()
}
