//! Text format for algebra presentations.
//!
//! ```text
//! gens a b c d
//! field cyclotomic 3
//! order deglex a b c d
//! rel b*a - (1/q)*a*b
//! ```
//!
//! `q` (or `z`) is the primitive root `ζ_N`. Relations are polynomials set to
//! zero; `^` takes integer exponents (negative only for scalars) and `/`
//! divides by scalars. `#` starts a comment.

use super::{poly, NcError, NcPoly, Word};
use crate::cyclotomic::{CycScalar, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub order: u32,
    pub gens: Vec<String>,
    pub relations: Vec<NcPoly>,
}

impl Presentation {
    /// Renders the presentation back into the text format.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "gens {}\nfield cyclotomic {}\norder deglex {}\n",
            self.gens.join(" "),
            self.order,
            self.gens.join(" ")
        );
        for r in &self.relations {
            s.push_str("rel ");
            let mut first = true;
            for (w, c) in r.iter().rev() {
                if !first {
                    s.push_str(" + ");
                }
                first = false;
                s.push_str(&format!("({})", c.to_string().replace('z', "q")));
                if !w.is_empty() {
                    s.push('*');
                    s.push_str(&w.display_with(&self.gens));
                }
            }
            if first {
                s.push('0');
            }
            s.push('\n');
        }
        s
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> NcError {
    NcError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, NcError> {
    let mut gens: Option<(usize, Vec<String>)> = None;
    let mut order: Option<u32> = None;
    let mut gen_order: Option<(usize, usize, Vec<String>)> = None;
    let mut rels: Vec<(usize, usize, &str)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (kw, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let rest_col = indent + kw.len() + 2;
        match kw {
            "gens" => {
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                for (i, n) in names.iter().enumerate() {
                    if !n.chars().next().is_some_and(char::is_alphabetic)
                        || !n.chars().all(|c| c.is_alphanumeric() || c == '_')
                        || n == "q"
                        || n == "z"
                    {
                        return Err(err(
                            line,
                            col_of(raw, n),
                            format!("invalid generator name `{n}`"),
                        ));
                    }
                    if names[..i].contains(n) {
                        return Err(err(
                            line,
                            col_of(raw, n),
                            format!("duplicate generator `{n}`"),
                        ));
                    }
                }
                if names.len() > 255 {
                    return Err(NcError::TooManyGenerators(names.len()));
                }
                gens = Some((line, names));
            }
            "field" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 || parts[0] != "cyclotomic" {
                    return Err(err(line, rest_col, "expected `field cyclotomic N`"));
                }
                let n: u32 = parts[1]
                    .parse()
                    .map_err(|_| err(line, col_of(raw, parts[1]), "expected a positive integer"))?;
                if n == 0 || n > crate::cyclotomic::MAX_ORDER {
                    return Err(err(
                        line,
                        col_of(raw, parts[1]),
                        format!("unsupported field order {n}"),
                    ));
                }
                order = Some(n);
            }
            "order" => {
                let mut parts = rest.split_whitespace();
                if parts.next() != Some("deglex") {
                    return Err(err(line, rest_col, "only `deglex` orders are supported"));
                }
                gen_order = Some((line, rest_col, parts.map(str::to_string).collect()));
            }
            "rel" => rels.push((line, rest_col, rest)),
            other => {
                return Err(err(
                    line,
                    indent + 1,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    let (_, mut names) = gens.ok_or_else(|| err(1, 1, "missing `gens` line"))?;
    let order = order.ok_or_else(|| err(1, 1, "missing `field cyclotomic N` line"))?;
    if let Some((line, col, ord)) = gen_order {
        let mut sorted_a = ord.clone();
        sorted_a.sort();
        let mut sorted_b = names.clone();
        sorted_b.sort();
        if sorted_a != sorted_b {
            return Err(err(
                line,
                col,
                "order must list every generator exactly once",
            ));
        }
        names = ord;
    }
    let mut relations = Vec::new();
    for (line, col, src) in rels {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
            line,
            col0: col,
            gens: &names,
            order,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        relations.push(e);
    }
    Ok(Presentation {
        order,
        gens: names,
        relations,
    })
}

fn col_of(raw: &str, needle: &str) -> usize {
    raw.find(needle).map_or(1, |i| i + 1)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
    gens: &'a [String],
    order: u32,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> NcError {
        err(self.line, self.col0 + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn one(&self) -> CycScalar {
        CycScalar::one(self.order)
    }

    fn expr(&mut self) -> Result<NcPoly, NcError> {
        let mut acc = NcPoly::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc.sub_assign(&t);
            } else {
                acc.add_assign(&t);
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<NcPoly, NcError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = poly::mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    let c = as_scalar(&f, self.order).ok_or_else(|| {
                        err(self.line, self.col0 + at, "can only divide by a scalar")
                    })?;
                    let inv = c
                        .inv()
                        .ok_or_else(|| err(self.line, self.col0 + at, "division by zero"))?;
                    acc = acc.scaled(&inv);
                }
                Some(b'(') => {
                    let f = self.factor()?;
                    acc = poly::mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<NcPoly, NcError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = if self.src.get(self.pos) == Some(&b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an integer exponent"));
            }
            let k: usize = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            if neg {
                let c = as_scalar(&base, self.order).ok_or_else(|| {
                    err(
                        self.line,
                        self.col0 + start,
                        "negative powers need a scalar base",
                    )
                })?;
                let inv = c
                    .inv()
                    .ok_or_else(|| err(self.line, self.col0 + start, "division by zero"))?;
                return Ok(poly::constant(inv.pow(k as i64)));
            }
            return Ok(poly::pow(self.order, &base, k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPoly, NcError> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let r: Rat = s
                    .parse()
                    .map_err(|_| err(self.line, self.col0 + start, "bad number"))?;
                Ok(poly::constant(CycScalar::from_rat(self.order, r)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "q" || name == "z" {
                    return Ok(poly::constant(CycScalar::zeta(self.order)));
                }
                match self.gens.iter().position(|g| g == name) {
                    Some(i) => Ok(NcPoly::single(Word::gen(i as u8), self.one())),
                    None => Err(err(
                        self.line,
                        self.col0 + start,
                        format!("unknown symbol `{name}`"),
                    )),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character `{}`", c as char))),
        }
    }
}

fn as_scalar(p: &NcPoly, order: u32) -> Option<CycScalar> {
    match p.len() {
        0 => Some(CycScalar::zero(order)),
        1 => p.get(&Word::empty()).cloned(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quantum_plane() {
        let p = parse_presentation("gens a b\nfield cyclotomic 3\nrel b*a - (1/q)*a*b\n").unwrap();
        assert_eq!(p.gens, vec!["a", "b"]);
        let r = &p.relations[0];
        assert_eq!(r.len(), 2);
        let zinv = CycScalar::zeta_pow(3, -1);
        assert_eq!(r.get(&Word::from_slice(&[0, 1])), Some(&(-zinv)));
    }

    #[test]
    fn unknown_symbol_has_position() {
        let e = parse_presentation("gens a b\nfield cyclotomic 3\nrel a*c - 1\n").unwrap_err();
        assert_eq!(
            e,
            NcError::Syntax {
                line: 3,
                col: 7,
                msg: "unknown symbol `c`".into()
            }
        );
    }

    #[test]
    fn order_line_permutes_generators() {
        let p =
            parse_presentation("gens b a\nfield cyclotomic 5\norder deglex a b\nrel a^2 - q^-1\n")
                .unwrap();
        assert_eq!(p.gens, vec!["a", "b"]);
        assert_eq!(
            p.relations[0].get(&Word::empty()),
            Some(&-CycScalar::zeta_pow(5, -1))
        );
        let again = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(again, p);
    }
}
