/// Resource limits shared by every expensive routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of terms of any intermediate polynomial.
    pub max_terms: usize,
    /// Largest truncation level m^N tried by the local colength search.
    pub max_truncation: u32,
    /// Maximum number of critical pairs and multiples processed per basis computation.
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 2_000_000,
            max_truncation: 512,
            max_pairs: 2_000_000,
        }
    }
}

impl Budget {
    pub fn check_terms(&self, n: usize) -> crate::Result<()> {
        if n > self.max_terms {
            return Err(crate::Error::BudgetExceeded {
                what: "polynomial term count",
                limit: self.max_terms as u64,
            });
        }
        Ok(())
    }
}
