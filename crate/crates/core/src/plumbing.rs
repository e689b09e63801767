//! Braided plumbing: glue the last disc of `S(w1)` to the first disc of
//! `S(w2)` and shuffle the two band lists.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::word::{Band, BklWord};

/// Interleaving of two band lists: `1` takes the next band of the first
/// word, `2` the next band of the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShufflePattern(Vec<u8>);

impl ShufflePattern {
    pub fn new(marks: Vec<u8>) -> Result<Self, Error> {
        if let Some(m) = marks.iter().find(|&&m| m != 1 && m != 2) {
            return Err(Error::invalid(format!("pattern mark {m} is not 1 or 2")));
        }
        Ok(ShufflePattern(marks))
    }

    /// All of the first word, then all of the second.
    pub fn concatenation(n1: usize, n2: usize) -> Self {
        let mut v = vec![1; n1];
        v.extend(std::iter::repeat_n(2, n2));
        ShufflePattern(v)
    }

    pub fn marks(&self) -> &[u8] {
        &self.0
    }

    pub fn count(&self, mark: u8) -> usize {
        self.0.iter().filter(|&&m| m == mark).count()
    }
}

impl FromStr for ShufflePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let marks = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::invalid(format!("pattern character `{c}`"))),
            })
            .collect::<Result<Vec<u8>, Error>>()?;
        ShufflePattern::new(marks)
    }
}

impl fmt::Display for ShufflePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Shift every band of `w2` so that its first disc becomes disc `n1`.
pub fn relabel_second(w2: &BklWord, n1: usize) -> BklWord {
    let k = n1.max(1) - 1;
    let letters = w2.letters().iter().map(|b| Band::new(b.r + k, b.s + k, b.e)).collect();
    BklWord::new(w2.strands() + k, letters).expect("shifted bands stay in range")
}

pub fn plumb(w1: &BklWord, w2: &BklWord, p: &ShufflePattern) -> Result<BklWord, Error> {
    if p.count(1) != w1.len() || p.count(2) != w2.len() {
        return Err(Error::invalid(format!(
            "pattern {p} has {} first and {} second marks, words have {} and {} letters",
            p.count(1),
            p.count(2),
            w1.len(),
            w2.len()
        )));
    }
    let n1 = w1.strands();
    let shifted = relabel_second(w2, n1);
    let (mut a, mut b) = (w1.letters().iter(), shifted.letters().iter());
    let letters = p
        .marks()
        .iter()
        .map(|&m| *if m == 1 { a.next() } else { b.next() }.expect("counts checked"))
        .collect();
    BklWord::new(n1 + w2.strands() - 1, letters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deplumbing {
    pub first: BklWord,
    pub second: BklWord,
    pub pattern: ShufflePattern,
}

/// Split `w` at disc `n1` into the bands left of it and right of it.
pub fn deplumb(w: &BklWord, n1: usize) -> Result<Deplumbing, Error> {
    let n = w.strands();
    if n1 == 0 || n1 > n {
        return Err(Error::invalid(format!("gluing disc {n1} not in 1..={n}")));
    }
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut marks = Vec::with_capacity(w.len());
    for b in w.letters() {
        if b.s <= n1 {
            first.push(*b);
            marks.push(1);
        } else if b.r >= n1 {
            second.push(Band::new(b.r + 1 - n1, b.s + 1 - n1, b.e));
            marks.push(2);
        } else {
            return Err(Error::precondition(
                "deplumb",
                format!("not a braided plumbing along disc {n1}: b({},{}) crosses it", b.r, b.s),
            ));
        }
    }
    Ok(Deplumbing {
        first: BklWord::new(n1, first)?,
        second: BklWord::new(n + 1 - n1, second)?,
        pattern: ShufflePattern(marks),
    })
}
