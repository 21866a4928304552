use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rational::{format_ratio, parse_ratio, Rational};

impl Serialize for Poly {
    /// Ascending-degree list of `"p/q"` strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs().iter().map(format_ratio).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c: Result<Vec<Rational>, _> = v.iter().map(|s| parse_ratio(s)).collect();
        Ok(Poly::new(c.map_err(D::Error::custom)?))
    }
}

/// A constant in the basis `{1, γ, ζ'(0), ζ'(-1), ...}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstTag {
    One,
    Gamma,
    /// `ZetaD(r)` stands for `ζ'(-r)`.
    ZetaD(usize),
}

/// Linear combination of basis constants with polynomial weights in `z`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolicConstantCombo {
    weights: BTreeMap<ConstTag, Poly>,
}

impl SymbolicConstantCombo {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `p` to the weight of `tag`, dropping the entry if it cancels.
    pub fn add(&mut self, tag: ConstTag, p: &Poly) {
        let w = self.weight(tag) + p;
        if w.is_zero() {
            self.weights.remove(&tag);
        } else {
            self.weights.insert(tag, w);
        }
    }

    pub fn weight(&self, tag: ConstTag) -> Poly {
        self.weights.get(&tag).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConstTag, &Poly)> {
        self.weights.iter()
    }

    pub fn tags(&self) -> Vec<ConstTag> {
        self.weights.keys().copied().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ComboJson {
    one: Poly,
    gamma: Poly,
    zeta_d: BTreeMap<usize, Poly>,
}

impl Serialize for SymbolicConstantCombo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let zeta_d = self
            .weights
            .iter()
            .filter_map(|(t, p)| match t {
                ConstTag::ZetaD(r) => Some((*r, p.clone())),
                _ => None,
            })
            .collect();
        ComboJson {
            one: self.weight(ConstTag::One),
            gamma: self.weight(ConstTag::Gamma),
            zeta_d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicConstantCombo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ComboJson::deserialize(d)?;
        let mut c = SymbolicConstantCombo::new();
        c.add(ConstTag::One, &j.one);
        c.add(ConstTag::Gamma, &j.gamma);
        for (r, p) in &j.zeta_d {
            c.add(ConstTag::ZetaD(*r), p);
        }
        Ok(c)
    }
}

/// Laurent polynomial in `k` whose coefficients are polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentInK {
    terms: BTreeMap<i64, Poly>,
}

impl LaurentInK {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, mu: i64, p: Poly) {
        if p.is_zero() {
            self.terms.remove(&mu);
        } else {
            self.terms.insert(mu, p);
        }
    }

    /// Coefficient of `k^mu`.
    pub fn term(&self, mu: i64) -> Poly {
        self.terms.get(&mu).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Poly)> {
        self.terms.iter()
    }

    /// Smallest and largest exponent present.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn eval(&self, z: &Rational, k: &Rational) -> Rational {
        self.terms.iter().fold(Rational::from_integer(0.into()), |acc, (&mu, p)| {
            let kp = if mu >= 0 {
                num_traits::pow(k.clone(), mu as usize)
            } else {
                num_traits::pow(k.recip(), (-mu) as usize)
            };
            acc + p.eval(z) * kp
        })
    }
}

impl Serialize for LaurentInK {
    /// Map from exponent (as a string key) to ascending-degree coefficients.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, &Poly> =
            self.terms.iter().map(|(k, v)| (k.to_string(), v)).collect();
        m.serialize(s)
    }
}
