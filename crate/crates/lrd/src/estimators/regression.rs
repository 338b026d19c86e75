use super::EstimateError;

/// A straight-line fit in log-log (or log-linear) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination, clamped to `[0, 1]`.
    pub r2: f64,
}

impl ScalingFit {
    /// Ordinary least squares.
    pub fn ols(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, EstimateError> {
        let w = vec![1.0; xs.len()];
        Self::weighted(xs, ys, &w).map(|(fit, _)| fit)
    }

    /// Weighted least squares with weights proportional to inverse variances.
    /// Also returns `1 / sum w (x - xbar)^2`, the slope variance when the
    /// weights are exact inverse variances.
    pub fn weighted(
        xs: Vec<f64>,
        ys: Vec<f64>,
        weights: &[f64],
    ) -> Result<(Self, f64), EstimateError> {
        if xs.len() != ys.len() || xs.len() != weights.len() || xs.len() < 3 {
            return Err(EstimateError::TooFewScales { got: xs.len() });
        }
        if !xs.windows(2).all(|p| p[0] < p[1]) || ys.iter().any(|y| !y.is_finite()) {
            return Err(EstimateError::DegenerateFit);
        }
        let sw: f64 = weights.iter().sum();
        let mx = xs.iter().zip(weights).map(|(x, w)| w * x).sum::<f64>() / sw;
        let my = ys.iter().zip(weights).map(|(y, w)| w * y).sum::<f64>() / sw;
        let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
        for ((x, y), w) in xs.iter().zip(&ys).zip(weights) {
            let (dx, dy) = (x - mx, y - my);
            sxx += w * dx * dx;
            sxy += w * dx * dy;
            syy += w * dy * dy;
        }
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let r2 = if syy > 0.0 {
            (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
        } else {
            1.0
        };
        Ok((
            Self {
                xs,
                ys,
                slope,
                intercept,
                r2,
            },
            sxx.recip(),
        ))
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Distinct integers on a geometric ladder `lo * ratio^i`, capped at `hi`.
pub fn geometric_ladder(lo: usize, hi: usize, ratio: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut v = lo as f64;
    while v.round() as usize <= hi {
        let s = v.round() as usize;
        if out.last() != Some(&s) {
            out.push(s);
        }
        v *= ratio;
    }
    out
}
