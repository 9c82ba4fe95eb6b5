use super::galois::GaloisRing;
use super::series::{Nested, SeriesRing, DEFAULT_PRECISION};
use super::literal;
use crate::error::{Error, Result};

/// Primes with a defining-polynomial table.
pub const SUPPORTED_PRIMES: [u32; 3] = [2, 3, 5];

/// Largest supported Witt length.
pub const MAX_WITT_LENGTH: u32 = 4;

/// Descriptor of `F_q((T_1))...((T_d))` together with the Witt length used
/// for characters over it. `T_d` is the uniformizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    p: u32,
    k: usize,
    s: u32,
    variables: Vec<String>,
    precision: i64,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "g"
        && name != "dlog"
}

impl FieldTower {
    pub fn new(p: u32, k: usize, s: u32, variables: &[&str], precision: i64) -> Result<Self> {
        Self::from_names(p, k, s, variables.iter().map(|v| v.to_string()).collect(), precision)
    }

    pub fn from_names(p: u32, k: usize, s: u32, variables: Vec<String>, precision: i64) -> Result<Self> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::InvalidTower(format!("unsupported prime {p}")));
        }
        if s == 0 || s > MAX_WITT_LENGTH {
            return Err(Error::InvalidTower(format!("Witt length {s} outside 1..={MAX_WITT_LENGTH}")));
        }
        if variables.is_empty() {
            return Err(Error::InvalidTower("a tower needs at least one variable".into()));
        }
        if precision < 1 {
            return Err(Error::InvalidTower(format!("precision {precision} < 1")));
        }
        for (i, v) in variables.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidTower(format!("invalid variable name `{v}`")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidTower(format!("duplicate variable `{v}`")));
            }
        }
        GaloisRing::field(p, k)?;
        Ok(FieldTower {
            p,
            k,
            s,
            variables,
            precision,
        })
    }

    /// One-variable tower with the default precision.
    pub fn laurent(p: u32, k: usize, s: u32, var: &str) -> Result<Self> {
        Self::new(p, k, s, &[var], DEFAULT_PRECISION)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn depth(&self) -> usize {
        self.variables.len()
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Name of the uniformizer `T_d`.
    pub fn uniformizer(&self) -> &str {
        self.variables.last().expect("nonempty")
    }

    /// 1-based index of a variable.
    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == name)
            .map(|i| i + 1)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Arithmetic over `F_q`.
    pub fn field(&self) -> SeriesRing {
        SeriesRing::new(GaloisRing::field(self.p, self.k).expect("validated"), self.depth(), self.precision)
            .expect("validated")
    }

    /// Arithmetic over `W_s(F_q)`, the lift ring.
    pub fn lift(&self) -> SeriesRing {
        SeriesRing::new(GaloisRing::new(self.p, self.k, self.s).expect("validated"), self.depth(), self.precision)
            .expect("validated")
    }

    /// The residue tower `F_q((T_1))...((T_{d-1}))`; `None` when `d = 1`.
    pub fn residue_tower(&self) -> Option<FieldTower> {
        (self.depth() > 1).then(|| FieldTower {
            variables: self.variables[..self.depth() - 1].to_vec(),
            ..self.clone()
        })
    }

    pub fn with_variables(&self, variables: Vec<String>) -> Result<FieldTower> {
        Self::from_names(self.p, self.k, self.s, variables, self.precision)
    }

    pub fn with_length(&self, s: u32) -> Result<FieldTower> {
        Self::from_names(self.p, self.k, s, self.variables.clone(), self.precision)
    }

    pub fn with_precision(&self, precision: i64) -> Result<FieldTower> {
        Self::from_names(self.p, self.k, self.s, self.variables.clone(), precision)
    }

    /// Parses a literal into `F_q((T_1))...((T_d))`.
    pub fn parse(&self, text: &str) -> Result<Nested> {
        literal::parse_series(text, &self.variables, &self.field())
    }

    /// Parses a literal into the lift ring.
    pub fn parse_lift(&self, text: &str) -> Result<Nested> {
        literal::parse_series(text, &self.variables, &self.lift())
    }

    pub fn render(&self, x: &Nested) -> String {
        literal::render_series(x, &self.variables, &self.field())
    }
}
