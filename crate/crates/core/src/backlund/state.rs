use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{GaussianRational, LaurentPolynomial, RationalFunction, WeightedRational};

/// Component of a [`PotentialState`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    U,
    E,
    P,
    Q,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::U, Component::E, Component::P, Component::Q];

    pub fn name(self) -> &'static str {
        match self {
            Component::U => "u",
            Component::E => "E",
            Component::P => "P",
            Component::Q => "Q",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" | "U" => Ok(Component::U),
            "e" | "E" => Ok(Component::E),
            "p" | "P" => Ok(Component::P),
            "q" | "Q" => Ok(Component::Q),
            _ => Err(Error::Domain(format!(
                "unknown component `{s}` (expected u, E, P or Q)"
            ))),
        }
    }
}

/// Solution `u_n` together with the exponential-weight-normalized auxiliary
/// potentials.
///
/// With `ζ = x^(1/3)`: `e^{iφ} = E·exp(-3ζ²)`, `p = P·exp(-3ζ²)`,
/// `q = Q·exp(3ζ²)`. Parameters are `a = -i·n`, `b = i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PotentialState {
    pub n: i64,
    pub u: WeightedRational,
    pub e: WeightedRational,
    pub p: WeightedRational,
    pub q: WeightedRational,
}

impl fmt::Debug for PotentialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialState")
            .field("n", &self.n)
            .field("u", &self.u.value)
            .field("E", &self.e.value)
            .field("P", &self.p.value)
            .field("Q", &self.q.value)
            .finish()
    }
}

pub(crate) fn constant(n: i64, d: i64) -> WeightedRational {
    WeightedRational::plain(RationalFunction::constant(GaussianRational::ratio(n, d)))
}

/// `x = ζ³` as a weight-zero element.
pub(crate) fn x() -> WeightedRational {
    WeightedRational::plain(RationalFunction::from(LaurentPolynomial::monomial(
        3,
        GaussianRational::one(),
    )))
}

fn laurent(terms: &[(i64, i64, i64)]) -> RationalFunction {
    RationalFunction::from(LaurentPolynomial::from_terms(
        terms
            .iter()
            .map(|&(k, n, d)| (k, GaussianRational::ratio(n, d))),
    ))
}

/// The `n = 0` state: `u = ζ/2`, `E = 1`, `P = -(ζ⁻³ + ζ⁻⁵/3)`,
/// `Q = ζ⁻³ - ζ⁻⁵/3`.
pub fn seed_state() -> PotentialState {
    PotentialState {
        n: 0,
        u: WeightedRational::new(0, laurent(&[(1, 1, 2)])),
        e: WeightedRational::new(-1, RationalFunction::one()),
        p: WeightedRational::new(-1, laurent(&[(-3, -1, 1), (-5, -1, 3)])),
        q: WeightedRational::new(1, laurent(&[(-3, 1, 1), (-5, -1, 3)])),
    }
}

impl PotentialState {
    pub fn component(&self, c: Component) -> &WeightedRational {
        match c {
            Component::U => &self.u,
            Component::E => &self.e,
            Component::P => &self.p,
            Component::Q => &self.q,
        }
    }

    pub fn component_mut(&mut self, c: Component) -> &mut WeightedRational {
        match c {
            Component::U => &mut self.u,
            Component::E => &mut self.e,
            Component::P => &mut self.p,
            Component::Q => &mut self.q,
        }
    }

    /// Copy with `1` added to one component's value (a negative control).
    pub fn perturbed(&self, c: Component) -> Self {
        let mut out = self.clone();
        let slot = out.component_mut(c);
        slot.value = &slot.value + &RationalFunction::one();
        out
    }

    fn check(&self) -> Result<()> {
        if self.u.is_zero() || self.e.is_zero() || self.q.is_zero() || self.p.is_zero() {
            return Err(Error::Domain(format!(
                "degenerate potentials at n = {}",
                self.n
            )));
        }
        Ok(())
    }

    /// State at index `n + 1`.
    pub fn step_up(&self) -> Result<Self> {
        self.check()?;
        let (u, e, q) = (&self.u, &self.e, &self.q);
        let x = x();
        let x2 = &x * &x;
        let u2 = u * u;
        let eq = e * q;
        // i·b = -1
        let u_next = &(&x2 * &eq) / &(&u2 * &constant(8, 1));
        let e_next = &(u * &constant(8, 1)) / q;
        let p_next = -&(&(&x2 * &(e * &eq)) / &u2);
        let bracket = {
            let t1 = &(&x * &(&eq * q)) / &(&u2 * &constant(32, 1));
            let t2 = &(q * &constant(self.n + 1, 8)) / &(&x * u);
            let t3 = u / &(&(&x2 * e) * &constant(2, 1));
            &(&t1 + &t2) - &t3
        };
        let q_next = &(-&(&(&x * &eq) / &(&u2 * &constant(2, 1)))) * &bracket;
        let next = PotentialState {
            n: self.n + 1,
            u: u_next,
            e: e_next,
            p: p_next,
            q: q_next,
        };
        next.check()?;
        Ok(next)
    }

    /// State at index `n - 1`.
    pub fn step_down(&self) -> Result<Self> {
        self.check()?;
        let (u, e, p) = (&self.u, &self.e, &self.p);
        let x = x();
        let x2 = &x * &x;
        let u2 = u * u;
        let pe = p / e;
        let u_next = -&(&(&x2 * &pe) / &(&u2 * &constant(8, 1)));
        let e_next = -&(p / &(u * &constant(8, 1)));
        let bracket = {
            let t1 = &(&x * &(&pe * p)) / &(&u2 * &constant(32, 1));
            let t2 = &(p * &constant(self.n - 1, 8)) / &(&x * u);
            let t3 = &(e * u) / &(&x2 * &constant(2, 1));
            &(&t1 - &t2) - &t3
        };
        let p_next = &(-&(&(&x * &pe) / &(&u2 * &constant(2, 1)))) * &bracket;
        let q_next = -&(&(&x2 * p) / &(&(e * e) * &u2));
        let next = PotentialState {
            n: self.n - 1,
            u: u_next,
            e: e_next,
            p: p_next,
            q: q_next,
        };
        next.check()?;
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_steps() {
        let s = seed_state();
        let up = s.step_up().unwrap();
        assert_eq!(up.u.value, laurent(&[(1, 1, 2), (-1, -1, 6)]));
        let down = s.step_down().unwrap();
        assert_eq!(down.u.value, laurent(&[(1, 1, 2), (-1, 1, 6)]));
        assert_eq!(up.step_down().unwrap(), s);
        assert_eq!(down.step_up().unwrap(), s);
    }

    #[test]
    fn weights_are_preserved() {
        let s = seed_state().step_up().unwrap().step_up().unwrap();
        assert_eq!(
            (s.u.weight, s.e.weight, s.p.weight, s.q.weight),
            (0, -1, -1, 1)
        );
    }
}
