//! Coordinates of the 1-jet space: times `t^α`, positions `x^i` and
//! partial velocities `x^i_α`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::SymError;

/// Index of a coordinate inside its [`CoordinateSystem`].
///
/// Temporal coordinates come first, then spatial, then velocities ordered by
/// spatial index and then temporal index (`v1_1, v1_2, .., v2_1, ..`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord(pub u16);

impl Coord {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// What a coordinate stands for. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordKind {
    Temporal(usize),
    Spatial(usize),
    /// `x^i_α` as `(i, α)`.
    Velocity(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateSystem {
    p: usize,
    n: usize,
    names: Arc<[String]>,
}

impl CoordinateSystem {
    /// Default names `t1..tp`, `x1..xn`, `v<i>_<α>`.
    pub fn new(p: usize, n: usize) -> Result<Self, SymError> {
        let t = (1..=p).map(|a| format!("t{a}")).collect();
        let x = (1..=n).map(|i| format!("x{i}")).collect();
        Self::with_names(t, x)
    }

    pub fn with_names(temporal: Vec<String>, spatial: Vec<String>) -> Result<Self, SymError> {
        let p = temporal.len();
        let n = spatial.len();
        if p == 0 || n == 0 {
            return Err(SymError::Dimension { p, n });
        }
        if p * n + p + n > u16::MAX as usize {
            return Err(SymError::Dimension { p, n });
        }
        let mut names = temporal;
        names.extend(spatial);
        for i in 1..=n {
            for a in 1..=p {
                names.push(format!("v{i}_{a}"));
            }
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(SymError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(SymError::DuplicateName(name.clone()));
            }
        }
        Ok(Self { p, n, names: names.into() })
    }

    /// Number of temporal coordinates, `dim T`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of spatial coordinates, `dim M`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn t(&self, alpha: usize) -> Coord {
        assert!(alpha < self.p);
        Coord(alpha as u16)
    }

    pub fn x(&self, i: usize) -> Coord {
        assert!(i < self.n);
        Coord((self.p + i) as u16)
    }

    /// The velocity `x^i_α`.
    pub fn v(&self, i: usize, alpha: usize) -> Coord {
        assert!(i < self.n && alpha < self.p);
        Coord((self.p + self.n + i * self.p + alpha) as u16)
    }

    pub fn kind(&self, c: Coord) -> CoordKind {
        let k = c.index();
        if k < self.p {
            CoordKind::Temporal(k)
        } else if k < self.p + self.n {
            CoordKind::Spatial(k - self.p)
        } else {
            let r = k - self.p - self.n;
            CoordKind::Velocity(r / self.p, r % self.p)
        }
    }

    pub fn name(&self, c: Coord) -> &str {
        &self.names[c.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Coord> {
        self.names.iter().position(|n| n == name).map(|k| Coord(k as u16))
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.names.len()).map(|k| Coord(k as u16))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn temporal_names(&self) -> &[String] {
        &self.names[..self.p]
    }

    pub fn spatial_names(&self) -> &[String] {
        &self.names[self.p..self.p + self.n]
    }

    pub fn is_velocity(&self, c: Coord) -> bool {
        matches!(self.kind(c), CoordKind::Velocity(..))
    }

    pub fn is_spatial(&self, c: Coord) -> bool {
        matches!(self.kind(c), CoordKind::Spatial(_))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !super::parse::RESERVED.contains(&s)
}

/// One real value per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    values: Vec<f64>,
    names: Arc<[String]>,
}

impl Point {
    pub fn new(coords: &CoordinateSystem, values: Vec<f64>) -> Result<Self, SymError> {
        if values.len() != coords.len() {
            return Err(SymError::PointSize {
                expected: coords.len(),
                got: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(SymError::NonFinite(coords.name(Coord(k as u16)).to_string()));
        }
        Ok(Self { values, names: coords.names.clone() })
    }

    /// Builds a point from `(name, value)` pairs; every coordinate must be
    /// assigned exactly once.
    pub fn from_assignments<'a, I>(coords: &CoordinateSystem, pairs: I) -> Result<Self, SymError>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let mut values = vec![None; coords.len()];
        for (name, value) in pairs {
            let c = coords
                .lookup(name)
                .ok_or_else(|| SymError::UnknownIdentifier { name: name.to_string(), pos: 0 })?;
            if values[c.index()].replace(value).is_some() {
                return Err(SymError::DuplicateName(name.to_string()));
            }
        }
        let mut out = Vec::with_capacity(values.len());
        for (k, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => out.push(v),
                None => {
                    return Err(SymError::MissingCoordinate(coords.name(Coord(k as u16)).to_string()))
                }
            }
        }
        Self::new(coords, out)
    }

    pub fn get(&self, c: Coord) -> f64 {
        self.values[c.index()]
    }

    pub fn set(&mut self, c: Coord, value: f64) {
        self.values[c.index()] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn names(&self) -> &[String] {
        &self.names
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", self.names[k], v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_names_and_layout() {
        let cs = CoordinateSystem::new(2, 3).unwrap();
        assert_eq!(cs.len(), 2 + 3 + 6);
        assert_eq!(cs.name(cs.t(1)), "t2");
        assert_eq!(cs.name(cs.x(0)), "x1");
        assert_eq!(cs.name(cs.v(2, 1)), "v3_2");
        assert_eq!(cs.kind(cs.v(2, 1)), CoordKind::Velocity(2, 1));
        assert_eq!(cs.lookup("v1_2"), Some(cs.v(0, 1)));
    }

    #[test]
    fn rejects_duplicates_and_empty_dims() {
        assert!(CoordinateSystem::new(0, 2).is_err());
        let dup = CoordinateSystem::with_names(vec!["t".into()], vec!["t".into()]);
        assert!(matches!(dup, Err(SymError::DuplicateName(_))));
        let clash = CoordinateSystem::with_names(vec!["v1_1".into()], vec!["x".into()]);
        assert!(matches!(clash, Err(SymError::DuplicateName(_))));
        let reserved = CoordinateSystem::with_names(vec!["sin".into()], vec!["x".into()]);
        assert!(matches!(reserved, Err(SymError::BadName(_))));
    }

    #[test]
    fn point_requires_every_coordinate() {
        let cs = CoordinateSystem::new(1, 1).unwrap();
        let err = Point::from_assignments(&cs, [("t1", 0.0), ("x1", 1.0)]).unwrap_err();
        assert_eq!(err, SymError::MissingCoordinate("v1_1".into()));
        let p = Point::from_assignments(&cs, [("t1", 0.0), ("x1", 1.0), ("v1_1", 2.0)]).unwrap();
        assert_eq!(p.get(cs.v(0, 0)), 2.0);
    }
}
