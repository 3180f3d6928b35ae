//! Conventions that every exact result depends on.
//!
//! Each payload carries a [`Conventions`] value so that numbers can be
//! interpreted without consulting the code.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symgroup::Permutation;

/// Invariant metric used to pick the harmonic complement on the flag side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Metric {
    /// `<t^a, t^b> = a! delta_ab` (classical harmonics).
    #[default]
    Apolar,
    /// Monomials orthonormal.
    Monomial,
}

/// Bijection from configuration-side fixed components to fixed flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum LabelConvention {
    /// Component `tau` meets the fixed flag `tau^{-1}` (the calibrated choice).
    #[default]
    Inverse,
    /// Component `tau` meets the fixed flag `tau`.
    Identity,
}

/// How classes of the configuration space are lifted to equivariant classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum ConfLift {
    /// Orthogonal complement of the kernel of `H(Y) -> H(X)`, with `Y` the
    /// product of spheres indexed by pairs and monomials orthonormal.
    #[default]
    Orthogonal,
    /// Products of the lifted generators.
    Product,
}

impl LabelConvention {
    pub fn fixed_flag(&self, component: &Permutation) -> Permutation {
        match self {
            LabelConvention::Inverse => component.inverse(),
            LabelConvention::Identity => component.clone(),
        }
    }
}

macro_rules! string_enum {
    ($t:ty, $($name:literal => $v:expr),+) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                $(if *self == $v { return f.write_str($name); })+
                unreachable!()
            }
        }
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($v),)+
                    other => Err(Error::InvalidInput(format!("unknown value {other:?}"))),
                }
            }
        }
    };
}

string_enum!(Metric, "apolar" => Metric::Apolar, "monomial" => Metric::Monomial);
string_enum!(LabelConvention, "inverse" => LabelConvention::Inverse, "identity" => LabelConvention::Identity);
string_enum!(ConfLift, "orthogonal" => ConfLift::Orthogonal, "product" => ConfLift::Product);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Conventions {
    pub metric: Metric,
    pub label: LabelConvention,
    pub lift: ConfLift,
}

impl Conventions {
    pub fn with_metric(metric: Metric) -> Self {
        Conventions {
            metric,
            ..Default::default()
        }
    }

    /// Key/value description of every convention in force.
    pub fn ledger(&self) -> Vec<(&'static str, String)> {
        vec![
            ("variable", "t' with t = 2t', u' = t'^2, u = 4u'".into()),
            ("conf_sign", "eps(sigma,i,j) = +1 iff i precedes j on the axis; w_ji = -w_ij".into()),
            ("component_label", "sigma labels the component x_sigma(1) < ... < x_sigma(n)".into()),
            ("principal_weights", "mu_i = n + 1 - 2i".into()),
            ("flag_restriction", "t_i -> mu_w(i) t'".into()),
            ("action", "sigma . tau = sigma o tau on labels; (sigma.h)(t) = h(t_sigma(1), ..., t_sigma(n))".into()),
            ("label_bijection", self.label.to_string()),
            ("metric", self.metric.to_string()),
            ("conf_lift", self.lift.to_string()),
            ("k_theory_circle", "spin double cover; q is its standard character".into()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_names() {
        for m in [Metric::Apolar, Metric::Monomial] {
            assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
        }
        assert_eq!("inverse".parse::<LabelConvention>().unwrap(), LabelConvention::Inverse);
        assert!("sideways".parse::<ConfLift>().is_err());
    }

    #[test]
    fn inverse_labels() {
        let p = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        assert_eq!(LabelConvention::Inverse.fixed_flag(&p).one_line(), vec![3, 1, 2]);
        assert_eq!(LabelConvention::Identity.fixed_flag(&p), p);
    }
}
