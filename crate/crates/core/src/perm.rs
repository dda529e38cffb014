//! Permutations of `{1, ..., n}` in one-line notation, with a cycle-notation
//! parser and printer.
//!
//! Products compose right to left: `(g * h)(x) = g(h(x))`, and the parser
//! reads `"(123)(124)"` as the function composition `(123) ∘ (124)`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection of `{1, ..., n}`.
///
/// Stored zero-based; every public accessor is one-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "arity {n} too large");
        Self {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from one-based images, `images[j - 1] = σ(j)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidInput(format!("arity {n} too large")));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u8);
        }
        Ok(Self { images: out })
    }

    /// The cycle `a₁ → a₂ → ... → a_k → a₁` on `n` points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut seen = vec![false; n];
        for &a in points {
            if a == 0 || a > n {
                return Err(Error::InvalidInput(format!(
                    "point {a} out of range 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[a - 1], true) {
                return Err(Error::InvalidInput(format!("point {a} repeated in cycle")));
            }
        }
        for (i, &a) in points.iter().enumerate() {
            let b = points[(i + 1) % points.len()];
            p.images[a - 1] = (b - 1) as u8;
        }
        Ok(p)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::cycle(n, &[a, b])
    }

    /// The full cycle `ε = (1 2 ... n)`.
    pub fn full_cycle(n: usize) -> Self {
        let mut p = Self::identity(n);
        for j in 0..n {
            p.images[j] = ((j + 1) % n) as u8;
        }
        p
    }

    /// The mirror reflection `τ = ∏ (j, n+1-j)`, i.e. `j ↦ n + 1 - j`.
    pub fn reversal(n: usize) -> Self {
        Self {
            images: (0..n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `σ(j)` for one-based `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1] as usize + 1
    }

    /// One-based images in order `σ(1), ..., σ(n)`.
    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(j, &x)| j == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.n(),
            other.n(),
            "composing permutations of different arity"
        );
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (j, &x) in self.images.iter().enumerate() {
            inv[x as usize] = j as u8;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.n());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its
    /// smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Order of the permutation in `S_n` (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Acts on a bit-string index where position 1 is the most significant
    /// of `n` bits: the bit at position `j` moves to position `σ(j)`.
    #[inline]
    pub fn act_on_index(&self, index: u64) -> u64 {
        let n = self.images.len();
        let mut out = 0u64;
        for (j, &img) in self.images.iter().enumerate() {
            if index >> (n - 1 - j) & 1 == 1 {
                out |= 1 << (n - 1 - img as usize);
            }
        }
        out
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        self.compose(&rhs)
    }
}

/// Canonical cycle notation: `e` for the identity, otherwise disjoint
/// comma-separated cycles, smallest point first, fixed points omitted.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[n={}]{}", self.n(), self)
    }
}

/// Parses a product of cycles on `n` points.
///
/// Grammar: `"e"`, `"()"`, or one or more `"(" int (sep int)+ ")"` where
/// `sep` is `","`, or plain juxtaposition of single digits when `n <= 9`.
/// Cycles compose right to left.
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    if text == "e" || text == "()" {
        return Ok(Permutation::identity(n));
    }
    if text.is_empty() {
        return Err(parse_err(0, "empty input"));
    }
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(parse_err(pos, "expected '('"));
        }
        let close = text[pos..]
            .find(')')
            .map(|off| pos + off)
            .ok_or_else(|| parse_err(pos, "unclosed '('"))?;
        let body = &text[pos + 1..close];
        if let Some(off) = body.find('(') {
            return Err(parse_err(pos + 1 + off, "nested '('"));
        }
        let points = parse_cycle_body(body, n, pos + 1)?;
        cycles.push(points);
        pos = close + 1;
    }

    let mut acc = Permutation::identity(n);
    for points in cycles.iter().rev() {
        let c = Permutation::cycle(n, points).map_err(|e| parse_err(0, &e.to_string()))?;
        acc = c.compose(&acc);
    }
    Ok(acc)
}

fn parse_cycle_body(body: &str, n: usize, offset: usize) -> Result<Vec<usize>> {
    let tokens: Vec<(usize, &str)> = if body.contains(',') {
        let mut start = 0;
        body.split(',')
            .map(|tok| {
                let at = start;
                start += tok.len() + 1;
                (at, tok)
            })
            .collect()
    } else if n <= 9 {
        body.char_indices()
            .map(|(i, c)| (i, &body[i..i + c.len_utf8()]))
            .collect()
    } else {
        return Err(parse_err(
            offset,
            "points must be comma-separated when n > 9",
        ));
    };

    let mut points = Vec::with_capacity(tokens.len());
    for (at, tok) in tokens {
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(offset + at, &format!("invalid point {tok:?}")));
        }
        let p: usize = tok
            .parse()
            .map_err(|_| parse_err(offset + at, &format!("invalid point {tok:?}")))?;
        if p == 0 || p > n {
            return Err(parse_err(
                offset + at,
                &format!("point {p} out of range 1..={n}"),
            ));
        }
        if points.contains(&p) {
            return Err(parse_err(
                offset + at,
                &format!("point {p} repeated in cycle"),
            ));
        }
        points.push(p);
    }
    if points.len() < 2 {
        return Err(parse_err(offset, "a cycle needs at least two points"));
    }
    Ok(points)
}

fn parse_err(position: usize, message: &str) -> Error {
    Error::Parse {
        position,
        message: message.to_string(),
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `"<n>:<cycles>"`, e.g. `"4:(1,2)(3,4)"`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, body) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("expected '<n>:<cycles>', got {s:?}")))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad arity in {s:?}")))?;
        parse_cycles(body, n)
    }
}
