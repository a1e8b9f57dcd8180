use std::fmt;

/// Generator families. `Lf`, `Lh`, `Le` are the classical f, h, e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    R,
    Phi,
    Psi,
    Chi,
    F,
    G,
    Ginv,
    E,
    Lf,
    Lh,
    Le,
    C,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::R => "r",
            Family::Phi => "phi",
            Family::Psi => "psi",
            Family::Chi => "chi",
            Family::F => "F",
            Family::G => "G",
            Family::Ginv => "Ginv",
            Family::E => "E",
            Family::Lf => "f",
            Family::Lh => "h",
            Family::Le => "e",
            Family::C => "c",
        }
    }

    pub fn from_tag(s: &str) -> Option<Family> {
        Some(match s {
            "x" => Family::X,
            "r" => Family::R,
            "phi" => Family::Phi,
            "psi" => Family::Psi,
            "chi" => Family::Chi,
            "F" => Family::F,
            "G" => Family::G,
            "Ginv" => Family::Ginv,
            "E" => Family::E,
            "f" => Family::Lf,
            "h" => Family::Lh,
            "e" => Family::Le,
            "c" => Family::C,
            _ => return None,
        })
    }

    /// Number of indices a generator of this family carries.
    pub fn arity(self) -> usize {
        match self {
            Family::X | Family::R | Family::Lf | Family::Le => 2,
            Family::C => 0,
            _ => 1,
        }
    }
}

/// One indexed generator symbol. Unused index slots are 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym {
    pub family: Family,
    pub i: u8,
    pub j: u8,
}

impl GenSym {
    pub fn new(family: Family, i: usize, j: usize) -> Self {
        Self {
            family,
            i: i as u8,
            j: j as u8,
        }
    }

    pub fn single(family: Family, i: usize) -> Self {
        Self::new(family, i, 0)
    }

    pub fn x(i: usize, j: usize) -> Self {
        Self::new(Family::X, i, j)
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn j(&self) -> usize {
        self.j as usize
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = vec![serde_json::Value::from(self.family.tag())];
        if self.family.arity() >= 1 {
            v.push(self.i.into());
        }
        if self.family.arity() >= 2 {
            v.push(self.j.into());
        }
        serde_json::Value::Array(v)
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.arity() {
            0 => write!(f, "{}", self.family.tag()),
            1 => write!(f, "{}[{}]", self.family.tag(), self.i),
            _ => write!(f, "{}[{},{}]", self.family.tag(), self.i, self.j),
        }
    }
}
