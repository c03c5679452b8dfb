use std::fmt;

use super::GroupError;

/// A word in the free group. Letter `k > 0` is generator `k - 1`, letter
/// `-k` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Single generator, 0-based.
    pub fn gen(i: usize) -> Self {
        Word(vec![i as i32 + 1])
    }

    pub fn from_letters(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "letter 0 is not a generator");
        Word(letters)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self^k`; negative powers invert.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `self^-1 * by^-1 * self * by`
    pub fn commutator(&self, by: &Word) -> Word {
        self.inverse()
            .concat(&by.inverse())
            .concat(self)
            .concat(by)
    }

    /// `by^-1 * self * by`
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Replaces generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for &l in &self.0 {
            let w = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                v.extend_from_slice(&w.0);
            } else {
                v.extend(w.0.iter().rev().map(|x| -x));
            }
        }
        Word(v)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut s = vec![0i64; num_gens];
        for &l in &self.0 {
            s[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        s
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Parses the two-letter text syntax: `x`, `y` and their inverses `X`,
    /// `Y`, optional integer powers (`x4`, `y-2`), and parenthesised groups
    /// (`(xy)4`, `(XY)-1`). The literal `1` is the empty word.
    pub fn parse(s: &str) -> Result<Word, GroupError> {
        let s: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == ['1'] {
            return Ok(Word::empty());
        }
        let mut pos = 0;
        let w = parse_seq(&s, &mut pos)?;
        if pos != s.len() {
            return Err(GroupError::Parse(format!(
                "unexpected '{}' at offset {pos}",
                s[pos]
            )));
        }
        Ok(w)
    }
}

fn parse_seq(s: &[char], pos: &mut usize) -> Result<Word, GroupError> {
    let mut out = Word::empty();
    while *pos < s.len() && s[*pos] != ')' {
        let atom = match s[*pos] {
            'x' => Word(vec![1]),
            'y' => Word(vec![2]),
            'X' => Word(vec![-1]),
            'Y' => Word(vec![-2]),
            '(' => {
                *pos += 1;
                let inner = parse_seq(s, pos)?;
                if *pos >= s.len() || s[*pos] != ')' {
                    return Err(GroupError::Parse("unbalanced parenthesis".into()));
                }
                inner
            }
            c => return Err(GroupError::Parse(format!("unexpected '{c}' at offset {pos}"))),
        };
        *pos += 1;
        let power = parse_power(s, pos)?;
        out = out.concat(&atom.pow(power));
    }
    Ok(out)
}

fn parse_power(s: &[char], pos: &mut usize) -> Result<i64, GroupError> {
    let start = *pos;
    let neg = *pos < s.len() && s[*pos] == '-';
    if neg {
        *pos += 1;
    }
    let digits_start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        if neg {
            return Err(GroupError::Parse(format!("dangling '-' at offset {start}")));
        }
        return Ok(1);
    }
    let n: i64 = s[digits_start..*pos]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|e| GroupError::Parse(format!("bad power: {e}")))?;
    Ok(if neg { -n } else { n })
}

impl fmt::Display for Word {
    /// Run-length form over `x`, `y` (generators beyond the second print as
    /// `g3`, `G3`, ...). The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            match l {
                1 => write!(f, "x")?,
                -1 => write!(f, "X")?,
                2 => write!(f, "y")?,
                -2 => write!(f, "Y")?,
                l if l > 0 => write!(f, "g{l}")?,
                l => write!(f, "G{}", -l)?,
            }
            if run > 1 {
                write!(f, "{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A finite presentation `<g_1, ..., g_n | relators>`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    num_gens: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(num_gens: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        if let Some(w) = relators.iter().find(|w| w.max_generator() > num_gens) {
            return Err(GroupError::GeneratorOutOfRange {
                word: w.to_string(),
                num_gens,
            });
        }
        Ok(Self { num_gens, relators })
    }

    /// Two-generator presentation from comma-separated relators, e.g.
    /// `"x4, y4, (xy)4, XyXy"`.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let relators = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Word::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(2, relators)
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, GroupError> {
        let mut r = self.relators.clone();
        r.extend(extra);
        Self::new(self.num_gens, r)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.relators.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} gens | {}>", self.num_gens, self)
    }
}
