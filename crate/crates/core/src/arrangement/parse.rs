use super::eisenstein::{proportional, Eis};
use super::{Arrangement, Multiplicity};
use crate::error::{Error, Result};
use serde::Deserialize;
use serde_json::Value;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    dim: Option<usize>,
    forms: Vec<Vec<Value>>,
    multiplicities: Option<Vec<u64>>,
    labels: Option<Vec<String>>,
}

/// Parse the JSON input format. Coefficients are integers, or pairs
/// `[a, b]` standing for a + b·ω.
pub fn parse_arrangement(text: &str) -> Result<(Arrangement, Option<Multiplicity>)> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let forms: Vec<Vec<Eis>> = doc
        .forms
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|v| coefficient(v).ok_or_else(|| Error::Parse(format!("form {i}: bad coefficient {v}")))).collect())
        .collect::<Result<_>>()?;
    if let Some(dim) = doc.dim {
        if let Some((i, f)) = forms.iter().enumerate().find(|(_, f)| f.len() != dim) {
            return Err(Error::DimensionMismatch { index: i, found: f.len(), expected: dim });
        }
    }
    let a = match doc.labels {
        Some(labels) => Arrangement::with_labels(forms, labels)?,
        None => Arrangement::new(forms)?,
    };
    let m = doc.multiplicities.map(|m| Multiplicity::new(m, a.n())).transpose()?;
    Ok((a, m))
}

fn coefficient(v: &Value) -> Option<Eis> {
    match v {
        Value::Number(n) => n.as_i64().map(Eis::from),
        Value::Array(p) if p.len() == 2 => Some(Eis::new(p[0].as_i64()?, p[1].as_i64()?)),
        _ => None,
    }
}

/// Parse a defining polynomial written as a product of linear forms, such
/// as `xyz(x-y)(2x+y-z)^2`. Variables are x, y, z or z0, z1, ...; `w`
/// denotes a primitive cube root of unity. Repeated factors become
/// multiplicities.
pub fn parse_polynomial(text: &str) -> Result<(Arrangement, Option<Multiplicity>)> {
    let mut p = PolyParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, indexed: false };
    let factors = p.product()?;
    if factors.is_empty() {
        return Err(Error::Parse("no linear factors".into()));
    }
    let dim = factors.iter().flat_map(|(f, _)| f.iter().map(|(v, _)| v + 1)).max().unwrap_or(0);
    let dim = if p.indexed { dim } else { 3 };
    let mut forms: Vec<Vec<Eis>> = Vec::new();
    let mut mult: Vec<u64> = Vec::new();
    for (terms, e) in factors {
        let mut f = vec![Eis::ZERO; dim];
        for (v, c) in terms {
            f[v] = f[v] + c;
        }
        if f.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm(forms.len()));
        }
        match forms.iter().position(|g| proportional(g, &f)) {
            Some(k) => mult[k] += e,
            None => {
                forms.push(f);
                mult.push(e);
            }
        }
    }
    let a = Arrangement::new(forms)?;
    let m = if mult.iter().all(|&x| x == 1) { None } else { Some(Multiplicity::new(mult, a.n())?) };
    Ok((a, m))
}

type Linear = Vec<(usize, Eis)>;

struct PolyParser {
    chars: Vec<char>,
    pos: usize,
    indexed: bool,
}

impl PolyParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (start < self.pos).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().ok()).flatten()
    }

    fn variable(&mut self) -> Option<usize> {
        let c = self.peek()?;
        let idx = match c {
            'x' => 0,
            'y' => 1,
            'z' => {
                self.pos += 1;
                return Some(match self.number() {
                    Some(k) => {
                        self.indexed = true;
                        k as usize
                    }
                    None => 2,
                });
            }
            _ => return None,
        };
        self.pos += 1;
        Some(idx)
    }

    fn product(&mut self) -> Result<Vec<(Linear, u64)>> {
        let mut out = Vec::new();
        // a leading constant factor is ignored
        if self.number().is_some() {
            self.eat('*');
        }
        while self.pos < self.chars.len() {
            let factor: Linear = if self.eat('(') {
                let l = self.linear()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                l
            } else if let Some(v) = self.variable() {
                vec![(v, Eis::ONE)]
            } else {
                return Err(self.err("expected a linear factor"));
            };
            let e = if self.eat('^') { self.number().ok_or_else(|| self.err("expected exponent"))? } else { 1 };
            if e < 1 {
                return Err(self.err("exponent must be positive"));
            }
            out.push((factor, e as u64));
            self.eat('*');
        }
        Ok(out)
    }

    fn linear(&mut self) -> Result<Linear> {
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let mut coeff = Eis::from(sign);
            if let Some(k) = self.number() {
                coeff = coeff * Eis::from(k);
                self.eat('*');
            }
            if self.eat('w') {
                coeff = coeff * Eis::OMEGA;
                self.eat('*');
            }
            let v = self.variable().ok_or_else(|| self.err("expected a variable"))?;
            out.push((v, coeff));
            if matches!(self.peek(), Some('^')) {
                return Err(Error::Parse("only products of linear forms are supported".into()));
            }
        }
        if out.is_empty() {
            return Err(self.err("empty factor"));
        }
        Ok(out)
    }
}
