use sdlab_core::dilation::DEFAULT_GRID;
use sdlab_core::kms::DEFAULT_MAX_DEGREE;
use sdlab_core::numrange::DEFAULT_CIRCLE_SAMPLES;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;

/// Knobs shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_size: usize,
    /// Absolute eigenvalue threshold; `None` means each routine's default.
    pub tol: Option<f64>,
    pub max_word_degree: usize,
    pub boundary_samples: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_size: DEFAULT_GRID,
            tol: None,
            max_word_degree: DEFAULT_MAX_DEGREE,
            boundary_samples: DEFAULT_CIRCLE_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_size == 0 || self.max_word_degree == 0 || self.boundary_samples == 0 {
            return Err(CliError::Dimension(
                "grid, degree and sample counts must be positive".into(),
            ));
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Dimension(format!(
                    "tolerance {t} must be positive"
                )));
            }
        }
        Ok(())
    }
}
