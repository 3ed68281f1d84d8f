//! Second-quantized operators on fermionic modes.
//!
//! A [`FermionOperator`] is a list of coefficient-weighted products of
//! ladder operators. [`FermionOperator::normal_order`] rewrites it into a
//! canonical form using the canonical anticommutation relations; the
//! [`encoding`] submodule maps it to qubit operators.

mod encoding;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use encoding::{
    encode, encode_operator, encoded_transform, encoded_transform_operator, jordan_wigner,
    jordan_wigner_operator, Encoding, EncodingKind, EncodingMatrix, MAX_MODES,
};

const DROP_TOLERANCE: f64 = 1e-14;

/// Creation sorts before annihilation, which is what normal ordering wants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ladder {
    Create,
    Annihilate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderOp {
    pub mode: usize,
    pub kind: Ladder,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        Self {
            mode,
            kind: Ladder::Create,
        }
    }

    pub fn annihilate(mode: usize) -> Self {
        Self {
            mode,
            kind: Ladder::Annihilate,
        }
    }

    pub fn adjoint(self) -> Self {
        let kind = match self.kind {
            Ladder::Create => Ladder::Annihilate,
            Ladder::Annihilate => Ladder::Create,
        };
        Self { mode: self.mode, kind }
    }

    /// Normal-order rank: creators first, then higher modes first.
    fn rank(self) -> (Ladder, std::cmp::Reverse<usize>) {
        (self.kind, std::cmp::Reverse(self.mode))
    }
}

impl fmt::Display for LadderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Ladder::Create => write!(f, "{}^", self.mode),
            Ladder::Annihilate => write!(f, "{}", self.mode),
        }
    }
}

impl PartialOrd for LadderOp {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LadderOp {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// `coefficient · f₁ f₂ … fₖ`; an empty factor list is a scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionTerm {
    pub coefficient: Complex64,
    pub factors: Vec<LadderOp>,
}

impl FermionTerm {
    pub fn new(coefficient: impl Into<Complex64>, factors: Vec<LadderOp>) -> Self {
        Self {
            coefficient: coefficient.into(),
            factors,
        }
    }

    pub fn scalar(coefficient: impl Into<Complex64>) -> Self {
        Self::new(coefficient, Vec::new())
    }

    pub fn adjoint(&self) -> Self {
        Self {
            coefficient: self.coefficient.conj(),
            factors: self.factors.iter().rev().map(|f| f.adjoint()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionOperator {
    mode_count: usize,
    terms: Vec<FermionTerm>,
}

impl FermionOperator {
    pub fn zero(mode_count: usize) -> Result<Self> {
        if mode_count == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(Self {
            mode_count,
            terms: Vec::new(),
        })
    }

    pub fn new(mode_count: usize, terms: Vec<FermionTerm>) -> Result<Self> {
        let mut op = Self::zero(mode_count)?;
        for t in terms {
            op.push(t)?;
        }
        Ok(op)
    }

    /// Single-term operator.
    pub fn term(mode_count: usize, coefficient: impl Into<Complex64>, factors: Vec<LadderOp>) -> Result<Self> {
        Self::new(mode_count, vec![FermionTerm::new(coefficient, factors)])
    }

    pub fn push(&mut self, term: FermionTerm) -> Result<()> {
        if let Some(f) = term.factors.iter().find(|f| f.mode >= self.mode_count) {
            return Err(Error::ModeOutOfRange {
                mode: f.mode,
                mode_count: self.mode_count,
            });
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mode_count: self.mode_count,
            terms: self.terms.iter().map(FermionTerm::adjoint).collect(),
        }
    }

    pub fn add(&self, rhs: &FermionOperator) -> Result<Self> {
        self.check_modes(rhs)?;
        let mut out = self.clone();
        out.terms.extend(rhs.terms.iter().cloned());
        Ok(out)
    }

    /// Operator product `self · rhs` (no simplification).
    pub fn multiply(&self, rhs: &FermionOperator) -> Result<Self> {
        self.check_modes(rhs)?;
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let mut factors = a.factors.clone();
                factors.extend_from_slice(&b.factors);
                terms.push(FermionTerm::new(a.coefficient * b.coefficient, factors));
            }
        }
        Ok(Self {
            mode_count: self.mode_count,
            terms,
        })
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let factor = factor.into();
        Self {
            mode_count: self.mode_count,
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm::new(t.coefficient * factor, t.factors.clone()))
                .collect(),
        }
    }

    /// Anticommutator `{self, rhs}`.
    pub fn anticommutator(&self, rhs: &FermionOperator) -> Result<Self> {
        self.multiply(rhs)?.add(&rhs.multiply(self)?)
    }

    /// Canonical form: creators left of annihilators, each group sorted by
    /// descending mode, like terms merged, vanishing terms removed.
    ///
    /// Uses `{a_i, a_j†} = δ_ij` and `{a_i, a_j} = {a_i†, a_j†} = 0`.
    pub fn normal_order(&self) -> Self {
        let mut merged: BTreeMap<Vec<LadderOp>, Complex64> = BTreeMap::new();
        for term in &self.terms {
            for (c, factors) in normal_order_term(term.coefficient, term.factors.clone()) {
                *merged.entry(factors).or_default() += c;
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
            .map(|(factors, c)| FermionTerm::new(c, factors))
            .collect();
        Self {
            mode_count: self.mode_count,
            terms,
        }
    }

    /// True when `self - self†` normal-orders to zero.
    pub fn is_hermitian(&self) -> bool {
        self.add(&self.adjoint().scale(-1.0))
            .map(|d| d.normal_order().is_empty())
            .unwrap_or(false)
    }

    fn check_modes(&self, rhs: &FermionOperator) -> Result<()> {
        if self.mode_count != rhs.mode_count {
            return Err(Error::WidthMismatch {
                left: self.mode_count,
                right: rhs.mode_count,
            });
        }
        Ok(())
    }

    /// Parses the line format written by `Display`: `<coeff> <factor>...`,
    /// factors like `1^` (create) or `0` (annihilate). The coefficient is
    /// a real number or `(re,im)`.
    pub fn parse(mode_count: usize, text: &str) -> Result<Self> {
        let mut op = Self::zero(mode_count)?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let coeff_tok = parts.next().ok_or_else(|| err("missing coefficient".into()))?;
            let coefficient = parse_coefficient(coeff_tok).ok_or_else(|| err(format!("bad coefficient {coeff_tok:?}")))?;
            let factors = parts
                .map(|tok| {
                    let (digits, kind) = match tok.strip_suffix('^') {
                        Some(d) => (d, Ladder::Create),
                        None => (tok, Ladder::Annihilate),
                    };
                    digits
                        .parse::<usize>()
                        .map(|mode| LadderOp { mode, kind })
                        .map_err(|_| err(format!("bad factor {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            op.push(FermionTerm::new(coefficient, factors)).map_err(|e| err(e.to_string()))?;
        }
        Ok(op)
    }
}

fn parse_coefficient(tok: &str) -> Option<Complex64> {
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let (re, im) = inner.split_once(',')?;
        return Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?));
    }
    tok.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
}

impl fmt::Display for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            if t.coefficient.im == 0.0 {
                write!(f, "{}", t.coefficient.re)?;
            } else {
                write!(f, "({},{})", t.coefficient.re, t.coefficient.im)?;
            }
            for factor in &t.factors {
                write!(f, " {factor}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for FermionOperator {
    type Err = Error;

    /// Infers the mode count from the largest mode index mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let probe = Self::parse(usize::MAX, s)?;
        let modes = probe
            .terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|f| f.mode + 1))
            .max()
            .unwrap_or(1);
        Ok(Self {
            mode_count: modes,
            terms: probe.terms,
        })
    }
}

/// Bubble-sorts one product into normal order, branching on contractions.
fn normal_order_term(coefficient: Complex64, factors: Vec<LadderOp>) -> Vec<(Complex64, Vec<LadderOp>)> {
    let mut done = Vec::new();
    let mut stack = vec![(coefficient, factors)];
    while let Some((mut c, mut f)) = stack.pop() {
        while let Some(j) = (0..f.len().saturating_sub(1)).find(|&j| f[j] > f[j + 1]) {
            let (l, r) = (f[j], f[j + 1]);
            if l.mode == r.mode && l.kind == Ladder::Annihilate && r.kind == Ladder::Create {
                let mut contracted = f.clone();
                contracted.drain(j..j + 2);
                stack.push((c, contracted));
            }
            f.swap(j, j + 1);
            c = -c;
        }
        // sorted; a repeated factor is now adjacent to its twin
        if !f.windows(2).any(|w| w[0] == w[1]) {
            done.push((c, f));
        }
    }
    done
}
