//! Polygon presentations and their Coxeter matrices.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::CoxeterError;

/// Order of the product `st` of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Denominator `a` of a polygon angle `π/a`; `Ideal` stands for a vertex at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleDenominator {
    Finite(u32),
    Ideal,
}

impl AngleDenominator {
    pub fn to_order(self) -> Order {
        match self {
            AngleDenominator::Finite(a) => Order::Finite(a),
            AngleDenominator::Ideal => Order::Infinite,
        }
    }

    /// The angle itself in radians (`0` for ideal vertices).
    pub fn radians(self) -> f64 {
        match self {
            AngleDenominator::Finite(a) => std::f64::consts::PI / a as f64,
            AngleDenominator::Ideal => 0.0,
        }
    }
}

/// JSON value accepted in the `angles` array: an integer or the string `"inf"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum AngleValue {
    Int(i64),
    Text(String),
}

/// On-disk group description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupConfig {
    pub name: String,
    angles: Vec<AngleValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

impl GroupConfig {
    pub fn new(name: &str, angles: &[AngleDenominator]) -> Self {
        GroupConfig {
            name: name.to_string(),
            angles: angles
                .iter()
                .map(|a| match a {
                    AngleDenominator::Finite(v) => AngleValue::Int(*v as i64),
                    AngleDenominator::Ideal => AngleValue::Text("inf".into()),
                })
                .collect(),
            generators: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CoxeterError> {
        serde_json::from_str(text).map_err(|e| CoxeterError::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    fn denominators(&self) -> Result<Vec<AngleDenominator>, CoxeterError> {
        self.angles
            .iter()
            .map(|v| match v {
                AngleValue::Int(a) if *a >= 2 => Ok(AngleDenominator::Finite(*a as u32)),
                AngleValue::Int(a) => Err(CoxeterError::BadDenominator(a.to_string())),
                AngleValue::Text(t) if t == "inf" || t == "∞" => Ok(AngleDenominator::Ideal),
                AngleValue::Text(t) => Err(CoxeterError::BadDenominator(t.clone())),
            })
            .collect()
    }
}

/// A Coxeter system coming from a geodesic polygon.
///
/// Side `σ_i` gives generator `s_i`; the angle `π/a_i` sits between sides
/// `σ_i` and `σ_{i+1}` (indices mod `n`), so `m(s_i, s_{i+1}) = a_i` and all
/// other distinct pairs are free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterPresentation {
    name: String,
    generators: Vec<String>,
    angles: Vec<AngleDenominator>,
    matrix: Vec<Vec<Order>>,
}

impl CoxeterPresentation {
    pub fn from_config(config: &GroupConfig) -> Result<Self, CoxeterError> {
        let angles = config.denominators()?;
        Self::with_generators(&config.name, &angles, config.generators.clone())
    }

    pub fn from_json(text: &str) -> Result<Self, CoxeterError> {
        Self::from_config(&GroupConfig::from_json(text)?)
    }

    pub fn polygon(name: &str, angles: &[AngleDenominator]) -> Result<Self, CoxeterError> {
        Self::with_generators(name, angles, None)
    }

    /// Shorthand for polygons without ideal vertices.
    pub fn from_angles(name: &str, denominators: &[u32]) -> Result<Self, CoxeterError> {
        let angles: Vec<_> = denominators
            .iter()
            .map(|&a| AngleDenominator::Finite(a))
            .collect();
        for &a in denominators {
            if a < 2 {
                return Err(CoxeterError::BadDenominator(a.to_string()));
            }
        }
        Self::polygon(name, &angles)
    }

    fn with_generators(
        name: &str,
        angles: &[AngleDenominator],
        generators: Option<Vec<String>>,
    ) -> Result<Self, CoxeterError> {
        let n = angles.len();
        if n < 3 {
            return Err(CoxeterError::TooFewSides(n));
        }
        if n > 32 {
            return Err(CoxeterError::Config(format!(
                "{n} sides exceeds the supported 32"
            )));
        }
        for a in angles {
            if let AngleDenominator::Finite(v) = a {
                if *v < 2 {
                    return Err(CoxeterError::BadDenominator(v.to_string()));
                }
            }
        }
        // Σ π/a_i < (n-2)π, exactly.
        let mut sum = Ratio::<i64>::from_integer(0);
        for a in angles {
            if let AngleDenominator::Finite(v) = a {
                sum += Ratio::new(1, *v as i64);
            }
        }
        if sum >= Ratio::from_integer(n as i64 - 2) {
            return Err(CoxeterError::NonHyperbolic {
                angle_sum: format!("{sum}π"),
                bound: format!("{}π", n - 2),
            });
        }
        let generators = match generators {
            Some(g) => {
                if g.len() != n {
                    return Err(CoxeterError::Config(format!(
                        "{} generator names for {n} sides",
                        g.len()
                    )));
                }
                let mut seen = std::collections::HashSet::new();
                for name in &g {
                    if name.is_empty()
                        || name == "eps"
                        || name == "_"
                        || name.contains(['.', '\t', ',', ' ', '|'])
                        || !seen.insert(name)
                    {
                        return Err(CoxeterError::Config(format!("bad generator name {name:?}")));
                    }
                }
                g
            }
            None => default_names(n),
        };
        let mut matrix = vec![vec![Order::Infinite; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        for (i, a) in angles.iter().enumerate() {
            let j = (i + 1) % n;
            matrix[i][j] = a.to_order();
            matrix[j][i] = a.to_order();
        }
        Ok(CoxeterPresentation {
            name: name.to_string(),
            generators,
            angles: angles.to_vec(),
            matrix,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn angles(&self) -> &[AngleDenominator] {
        &self.angles
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.matrix[s][t]
    }

    pub fn matrix(&self) -> &[Vec<Order>] {
        &self.matrix
    }

    /// Least common multiple of the finite orders `m(s,t) > 1`; at least 2.
    pub fn field_conductor(&self) -> u32 {
        let mut conductor = 1u32;
        for a in &self.angles {
            if let AngleDenominator::Finite(m) = a {
                conductor = num_integer::lcm(conductor, *m);
            }
        }
        conductor.max(2)
    }

    /// Generator index for a name.
    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Whether every generator name is one character long (words print without separators).
    pub fn compact_names(&self) -> bool {
        self.generators.iter().all(|g| g.chars().count() == 1)
    }

    pub fn config(&self) -> GroupConfig {
        let mut c = GroupConfig::new(&self.name, &self.angles);
        if self.generators != default_names(self.rank()) {
            c.generators = Some(self.generators.clone());
        }
        c
    }

    /// Stable textual fingerprint used to stamp cached artifacts.
    pub fn canonical_text(&self) -> String {
        let angles: Vec<String> = self
            .angles
            .iter()
            .map(|a| match a {
                AngleDenominator::Finite(v) => v.to_string(),
                AngleDenominator::Ideal => "inf".into(),
            })
            .collect();
        format!(
            "angles={};generators={}",
            angles.join(","),
            self.generators.join(",")
        )
    }
}

fn default_names(n: usize) -> Vec<String> {
    if n == 3 {
        return vec!["r".into(), "s".into(), "t".into()];
    }
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &CoxeterPresentation, a: &str, b: &str) -> Order {
        p.order(p.generator(a).unwrap(), p.generator(b).unwrap())
    }

    #[test]
    fn triangle_237_relations() {
        let p = CoxeterPresentation::from_angles("W237", &[3, 7, 2]).unwrap();
        assert_eq!(p.generator_names(), ["r", "s", "t"]);
        assert_eq!(m(&p, "r", "s"), Order::Finite(3));
        assert_eq!(m(&p, "r", "t"), Order::Finite(2));
        assert_eq!(m(&p, "s", "t"), Order::Finite(7));
        assert_eq!(m(&p, "t", "t"), Order::Finite(1));
        assert_eq!(p.field_conductor(), 42);
    }

    #[test]
    fn input_order_237_is_a_relabelling() {
        let p = CoxeterPresentation::from_angles("W237", &[2, 3, 7]).unwrap();
        let mut orders: Vec<u32> = vec![
            m(&p, "r", "s").finite().unwrap(),
            m(&p, "r", "t").finite().unwrap(),
            m(&p, "s", "t").finite().unwrap(),
        ];
        orders.sort();
        assert_eq!(orders, [2, 3, 7]);
        assert_eq!(m(&p, "r", "s"), Order::Finite(2));
    }

    #[test]
    fn quadrilateral_2224_relations() {
        let p = CoxeterPresentation::from_angles("W2224", &[2, 2, 2, 4]).unwrap();
        assert_eq!(p.generator_names(), ["a", "b", "c", "d"]);
        assert_eq!(m(&p, "a", "b"), Order::Finite(2));
        assert_eq!(m(&p, "b", "c"), Order::Finite(2));
        assert_eq!(m(&p, "c", "d"), Order::Finite(2));
        assert_eq!(m(&p, "a", "d"), Order::Finite(4));
        assert_eq!(m(&p, "a", "c"), Order::Infinite);
        assert_eq!(m(&p, "b", "d"), Order::Infinite);
    }

    #[test]
    fn euclidean_and_bad_inputs_rejected() {
        assert!(matches!(
            CoxeterPresentation::from_angles("E", &[3, 3, 3]),
            Err(CoxeterError::NonHyperbolic { .. })
        ));
        assert!(matches!(
            CoxeterPresentation::from_angles("E", &[2, 4, 4]),
            Err(CoxeterError::NonHyperbolic { .. })
        ));
        assert!(matches!(
            CoxeterPresentation::from_angles("E", &[2, 2, 2, 2]),
            Err(CoxeterError::NonHyperbolic { .. })
        ));
        assert!(matches!(
            CoxeterPresentation::from_angles("x", &[3, 7]),
            Err(CoxeterError::TooFewSides(2))
        ));
        assert!(matches!(
            CoxeterPresentation::from_json(r#"{"name":"x","angles":[1,7,3]}"#),
            Err(CoxeterError::BadDenominator(_))
        ));
        for names in [r#"["a","eps","c"]"#, r#"["a","_","c"]"#, r#"["a","a","c"]"#] {
            let json = format!(r#"{{"name":"x","angles":[2,3,7],"generators":{names}}}"#);
            assert!(matches!(
                CoxeterPresentation::from_json(&json),
                Err(CoxeterError::Config(_))
            ));
        }
    }

    #[test]
    fn json_with_ideal_vertices() {
        let p = CoxeterPresentation::from_json(r#"{"name":"ideal","angles":["inf",2,3]}"#).unwrap();
        assert_eq!(p.order(0, 1), Order::Infinite);
        assert_eq!(p.order(1, 2), Order::Finite(2));
        assert_eq!(p.order(2, 0), Order::Finite(3));
        let back = CoxeterPresentation::from_config(&p.config()).unwrap();
        assert_eq!(back, p);
    }
}
