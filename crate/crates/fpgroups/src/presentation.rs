use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::word::Word;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("cannot parse word `{word}`: {reason}")]
    BadWord { word: String, reason: String },
}

/// Named generators plus relators; relators are kept freely and cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<E> {
    generators: Vec<String>,
    relators: Vec<Word<E>>,
}

impl<E: Scalar> Default for Presentation<E> {
    fn default() -> Self {
        Presentation { generators: Vec::new(), relators: Vec::new() }
    }
}

impl<E: Scalar> Presentation<E> {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = S>) -> Result<Self, GroupError> {
        let mut p = Self::default();
        for g in gens {
            p.add_generator(g)?;
        }
        Ok(p)
    }

    pub fn add_generator<S: Into<String>>(&mut self, name: S) -> Result<usize, GroupError> {
        let name = name.into();
        if self.generators.contains(&name) {
            return Err(GroupError::DuplicateGenerator(name));
        }
        self.generators.push(name);
        Ok(self.generators.len() - 1)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word<E>] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub(crate) fn from_parts(generators: Vec<String>, relators: Vec<Word<E>>) -> Self {
        Presentation { generators, relators }
    }

    /// Same generators, relator list replaced wholesale.
    pub fn with_relators(&self, relators: Vec<Word<E>>) -> Result<Self, GroupError> {
        let mut out = Presentation { generators: self.generators.clone(), relators: Vec::new() };
        for r in relators {
            out.add_relator(r)?;
        }
        Ok(out)
    }

    fn check(&self, w: &Word<E>) -> Result<(), GroupError> {
        match w.max_gen() {
            Some(g) if g >= self.generators.len() => Err(GroupError::UnknownGenerator(format!("#{g}"))),
            _ => Ok(()),
        }
    }

    /// Adds one relator without reducing the presentation further.
    pub fn add_relator(&mut self, w: Word<E>) -> Result<(), GroupError> {
        self.check(&w)?;
        let w = w.cyclic_reduce();
        if !w.is_identity() {
            self.relators.push(w);
        }
        Ok(())
    }

    /// The quotient by the normal closure of `new_relators`.
    pub fn quotient(&self, new_relators: &[Word<E>]) -> Result<Self, GroupError> {
        let mut out = self.clone();
        for w in new_relators {
            out.add_relator(w.clone())?;
        }
        Ok(out)
    }

    /// Renames every generator `g` to `{tag}.{g}`.
    pub fn prefixed(&self, tag: &str) -> Self {
        Presentation {
            generators: self.generators.iter().map(|g| format!("{tag}.{g}")).collect(),
            relators: self.relators.clone(),
        }
    }

    /// Free product of `a` and `b`, glued by `u = v` for each identification and
    /// quotiented by `kill`. Words of `b` use `b`'s own generator ids.
    pub fn amalgamate(
        a: &Self,
        b: &Self,
        identifications: &[(Word<E>, Word<E>)],
        kill: &[Word<E>],
    ) -> Result<Self, GroupError> {
        let shift = a.generators.len();
        let mut out = a.clone();
        for g in &b.generators {
            out.add_generator(g.clone())?;
        }
        for r in &b.relators {
            out.relators.push(r.map_gens(|g| g + shift));
        }
        for (u, v) in identifications {
            a.check(u)?;
            b.check(v)?;
            out.add_relator(u.mul(&v.map_gens(|g| g + shift).inverse()))?;
        }
        for w in kill {
            out.add_relator(w.clone())?;
        }
        Ok(out)
    }

    /// Parses `a b^-1 c^3`; `1` or the empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word<E>, GroupError> {
        let index: HashMap<&str, usize> =
            self.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        parse_word_with(text, |name| index.get(name).copied())
    }

    pub fn render_word(&self, w: &Word<E>) -> String {
        render_word_with(w, |g| self.generators[g].as_str())
    }

    /// Same group, with generator `g` removed and `image` substituted for it.
    pub(crate) fn eliminate(&self, g: usize, image: &Word<E>) -> Self {
        let remap = |x: usize| if x > g { x - 1 } else { x };
        let image = image.map_gens(remap);
        let generators = self
            .generators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != g)
            .map(|(_, s)| s.clone())
            .collect();
        let relators = self
            .relators
            .iter()
            .map(|r| {
                let shifted = Word::from_letters(r.letters().iter().map(|l| {
                    // park g at a sentinel id so the remap does not collide
                    if l.gen == g {
                        (usize::MAX, l.exp.clone())
                    } else {
                        (remap(l.gen), l.exp.clone())
                    }
                }));
                shifted.substitute(usize::MAX, &image).cyclic_reduce()
            })
            .filter(|r| !r.is_identity())
            .collect();
        Presentation { generators, relators }
    }
}

/// Grammar: `word := term*`, `term := atom ('^' int)?`,
/// `atom := name | '[' word ',' word ']' | '(' word ')'`; `1` is the identity.
pub fn parse_word_with<E: Scalar, F: Fn(&str) -> Option<usize>>(
    text: &str,
    lookup: F,
) -> Result<Word<E>, GroupError> {
    let mut parser = WordParser { text, chars: text.char_indices().collect(), pos: 0, lookup: &lookup };
    let w = parser.word()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(parser.bad("unexpected character"));
    }
    Ok(w)
}

struct WordParser<'a, F> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    lookup: &'a F,
}

impl<F: Fn(&str) -> Option<usize>> WordParser<'_, F> {
    fn bad(&self, reason: &str) -> GroupError {
        GroupError::BadWord { word: self.text.to_string(), reason: format!("{reason} at offset {}", self.pos) }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn is_name_char(c: char) -> bool {
        c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | ':' | '#')
    }

    fn word<E: Scalar>(&mut self) -> Result<Word<E>, GroupError> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(',') | Some(']') | Some(')') => return Ok(w),
                _ => {
                    let t = self.term()?;
                    w = w.mul(&t);
                }
            }
        }
    }

    fn term<E: Scalar>(&mut self) -> Result<Word<E>, GroupError> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            if self.peek() == Some('-') {
                self.pos += 1;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
            let e: i64 = digits.parse().map_err(|_| self.bad("exponent is not an integer"))?;
            return Ok(atom.pow(&E::from_i64(e).expect("exponent fits the scalar type")));
        }
        Ok(atom)
    }

    fn expect(&mut self, c: char) -> Result<(), GroupError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.bad(&format!("expected `{c}`")))
        }
    }

    fn atom<E: Scalar>(&mut self) -> Result<Word<E>, GroupError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&a, &b))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(c) if Self::is_name_char(c) => {
                let start = self.pos;
                while self.peek().is_some_and(Self::is_name_char) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                if name == "1" {
                    return Ok(Word::identity());
                }
                let g = (self.lookup)(&name).ok_or(GroupError::UnknownGenerator(name))?;
                Ok(Word::gen(g))
            }
            _ => Err(self.bad("expected a generator, `[` or `(`")),
        }
    }
}

pub fn render_word_with<'a, E: Scalar, F: Fn(usize) -> &'a str>(w: &Word<E>, name: F) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    w.letters()
        .iter()
        .map(|l| {
            if l.exp.is_one() {
                name(l.gen).to_string()
            } else {
                format!("{}^{}", name(l.gen), l.exp)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl<E: Scalar> fmt::Display for Presentation<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        write!(f, " >")
    }
}
