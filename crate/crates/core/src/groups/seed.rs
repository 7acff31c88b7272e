//! Concrete representations used to seed a group before it is turned into a
//! Cayley table: permutations in cycle notation and invertible 2x2 matrices
//! over the field with three elements.

use std::fmt;

use super::GroupError;

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u8).collect())
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`. `()` is the identity.
    pub fn parse_cycles(text: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadGenerator(text.trim().to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let cycle = inner[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().filter(|&p| p >= 1).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = inner[close + 1..].trim_start();
        }
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut seen = vec![false; degree];
        for cycle in &cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(bad());
                }
                images[p - 1] = (cycle[(i + 1) % cycle.len()] - 1) as u8;
            }
        }
        Ok(Permutation(images))
    }

    fn padded(&self, degree: usize) -> Self {
        let mut images = self.0.clone();
        images.extend(self.0.len() as u8..degree as u8);
        Permutation(images)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A 2x2 matrix over the field with three elements, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat3([u8; 4]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([1, 0, 0, 1]);

    pub fn new(entries: [i64; 4]) -> Result<Self, GroupError> {
        let m = Mat3(entries.map(|e| e.rem_euclid(3) as u8));
        if m.det() == 0 {
            return Err(GroupError::NotInvertible(m.to_string()));
        }
        Ok(m)
    }

    /// Parses four whitespace-separated integers, row-major.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadGenerator(text.trim().to_string());
        let entries =
            text.split_whitespace().map(|s| s.parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
        let entries: [i64; 4] = entries.try_into().map_err(|_| bad())?;
        Mat3::new(entries)
    }

    pub fn entries(&self) -> [u8; 4] {
        self.0
    }

    pub fn det(&self) -> u8 {
        let [a, b, c, d] = self.0.map(u32::from);
        ((a * d + 2 * b * c) % 3) as u8
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let [a, b, c, d] = self.0.map(u32::from);
        let [e, f, g, h] = other.0.map(u32::from);
        Mat3([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h].map(|x| (x % 3) as u8))
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// A generator in one of the two supported representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    Perm(Permutation),
    Matrix(Mat3),
}

impl Generator {
    pub fn perm(cycles: &str) -> Result<Self, GroupError> {
        Permutation::parse_cycles(cycles).map(Generator::Perm)
    }

    pub fn matrix(entries: [i64; 4]) -> Result<Self, GroupError> {
        Mat3::new(entries).map(Generator::Matrix)
    }

    pub(crate) fn mul(&self, other: &Generator) -> Generator {
        match (self, other) {
            (Generator::Perm(a), Generator::Perm(b)) => Generator::Perm(a.compose(b)),
            (Generator::Matrix(a), Generator::Matrix(b)) => Generator::Matrix(a.mul(b)),
            _ => unreachable!("generators are normalized to one kind before multiplication"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Perm(p) => p.fmt(f),
            Generator::Matrix(m) => m.fmt(f),
        }
    }
}

/// Brings all generators to one kind and, for permutations, a common degree.
/// Returns the normalized generators together with the identity element.
pub(crate) fn normalize(gens: &[Generator]) -> Result<(Vec<Generator>, Generator), GroupError> {
    let first = gens.first().ok_or(GroupError::EmptyGenerators)?;
    match first {
        Generator::Perm(_) => {
            let mut perms = Vec::with_capacity(gens.len());
            for g in gens {
                match g {
                    Generator::Perm(p) => perms.push(p),
                    Generator::Matrix(m) => return Err(GroupError::BadGenerator(m.to_string())),
                }
            }
            let degree = perms.iter().map(|p| p.degree()).max().unwrap_or(1);
            let normalized = perms.iter().map(|p| Generator::Perm(p.padded(degree))).collect();
            Ok((normalized, Generator::Perm(Permutation::identity(degree))))
        }
        Generator::Matrix(_) => {
            let mut mats = Vec::with_capacity(gens.len());
            for g in gens {
                match g {
                    Generator::Matrix(m) => mats.push(Generator::Matrix(*m)),
                    Generator::Perm(p) => return Err(GroupError::BadGenerator(p.to_string())),
                }
            }
            Ok((mats, Generator::Matrix(Mat3::IDENTITY)))
        }
    }
}
