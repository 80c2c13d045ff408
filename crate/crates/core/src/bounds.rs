//! Exact rationals and per-vertex compact-number bounds.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub type Rational = Ratio<i128>;

/// Resolution used when a floating-point weight is turned into a bound.
const DYADIC_SCALE: i128 = 1 << 24;

/// Absolute error allowed on a floating-point vertex weight `x`.
pub fn weight_slack(x: f64) -> f64 {
    1e-9 * (1.0 + x.abs())
}

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Largest multiple of `2^-24` that is `<= x - slack(x)`, clamped at zero.
pub fn safe_floor(x: f64) -> Rational {
    let shifted = (x - weight_slack(x)) * DYADIC_SCALE as f64;
    let k = shifted.floor().max(0.0) as i128;
    Rational::new(k, DYADIC_SCALE)
}

/// Smallest multiple of `2^-24` that is `>= x + slack(x)`.
pub fn safe_ceil(x: f64) -> Rational {
    let shifted = (x + weight_slack(x)) * DYADIC_SCALE as f64;
    Rational::new(shifted.ceil().max(0.0) as i128, DYADIC_SCALE)
}

/// Upper and lower bounds on the compact number of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
}

impl Bounds {
    /// Upper bound `core`, lower bound `core / arity`.
    pub fn from_cores(cores: &[u64], arity: usize) -> Bounds {
        Bounds {
            upper: cores
                .iter()
                .map(|&c| Rational::from_integer(c as i128))
                .collect(),
            lower: cores
                .iter()
                .map(|&c| Rational::new(c as i128, arity as i128))
                .collect(),
        }
    }

    /// Bounds that claim nothing: `[0, +inf)` approximated by `[0, big]`.
    pub fn unbounded(n: usize) -> Bounds {
        Bounds {
            upper: vec![Rational::from_integer(i64::MAX as i128); n],
            lower: vec![Rational::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn tighten_upper(&mut self, v: usize, value: Rational) {
        if value < self.upper[v] {
            self.upper[v] = value;
        }
    }

    pub fn tighten_lower(&mut self, v: usize, value: Rational) {
        if value > self.lower[v] {
            self.lower[v] = value;
        }
    }

    /// Bounds for the vertices of `members`, renumbered `0..members.len()`.
    pub fn restrict(&self, members: &[usize]) -> Bounds {
        Bounds {
            upper: members.iter().map(|&v| self.upper[v]).collect(),
            lower: members.iter().map(|&v| self.lower[v]).collect(),
        }
    }

    /// Folds bounds computed on a subgraph back into parent ids, keeping the
    /// tighter value on each side.
    pub fn absorb(&mut self, local: &Bounds, to_parent: &[usize]) {
        for (i, &v) in to_parent.iter().enumerate() {
            self.tighten_upper(v, local.upper[i]);
            self.tighten_lower(v, local.lower[i]);
        }
    }
}
