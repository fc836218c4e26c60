use std::fmt;

use crate::Scalar;

/// One syllable `g^e`, `e != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter<E> {
    pub gen: usize,
    pub exp: E,
}

/// A word in the free group on generator ids, kept freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<E> {
    letters: Vec<Letter<E>>,
}

impl<E: Scalar> Default for Word<E> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<E: Scalar> Word<E> {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn gen(g: usize) -> Self {
        Self::power(g, E::one())
    }

    pub fn power(g: usize, exp: E) -> Self {
        if exp.is_zero() {
            return Self::identity();
        }
        Word { letters: vec![Letter { gen: g, exp }] }
    }

    /// Builds a word from raw syllables, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = (usize, E)>>(iter: I) -> Self {
        let mut w = Self::identity();
        for (g, e) in iter {
            w.push(g, e);
        }
        w
    }

    pub fn letters(&self) -> &[Letter<E>] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Total letter count, i.e. the sum of |exponent|.
    pub fn length(&self) -> E {
        self.letters.iter().fold(E::zero(), |acc, l| acc + l.exp.abs())
    }

    fn push(&mut self, g: usize, e: E) {
        if e.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == g {
                let sum = last.exp.clone() + e;
                if sum.is_zero() {
                    self.letters.pop();
                } else {
                    last.exp = sum;
                }
                return;
            }
        }
        self.letters.push(Letter { gen: g, exp: e });
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen, l.exp.clone());
        }
        w
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen, exp: -l.exp.clone() })
                .collect(),
        }
    }

    pub fn pow(&self, n: &E) -> Self {
        if self.letters.len() == 1 {
            let l = &self.letters[0];
            return Self::power(l.gen, l.exp.clone() * n.clone());
        }
        let base = if n.is_negative() { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        let mut k = n.abs();
        while !k.is_zero() {
            out = out.mul(&base);
            k = k - E::one();
        }
        out
    }

    /// `[a, b] = a b a^-1 b^-1`
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Conjugates until the first and last syllables no longer cancel or merge.
    pub fn cyclic_reduce(&self) -> Self {
        let mut letters = self.letters.clone();
        loop {
            if letters.len() < 2 {
                break;
            }
            let n = letters.len();
            if letters[0].gen != letters[n - 1].gen {
                break;
            }
            let last = letters.pop().unwrap();
            let sum = letters[0].exp.clone() + last.exp;
            if sum.is_zero() {
                letters.remove(0);
            } else {
                letters[0].exp = sum;
            }
        }
        Word { letters }
    }

    pub fn exponent_sum(&self, g: usize) -> E {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .fold(E::zero(), |acc, l| acc + l.exp.clone())
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == g).count()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.letters.iter().any(|l| l.gen == g)
    }

    /// Replaces every `g^e` by `image^e`.
    pub fn substitute(&self, g: usize, image: &Self) -> Self {
        let mut out = Self::identity();
        for l in &self.letters {
            if l.gen == g {
                out = out.mul(&image.pow(&l.exp));
            } else {
                out.push(l.gen, l.exp.clone());
            }
        }
        out
    }

    pub fn map_gens<F: Fn(usize) -> usize>(&self, f: F) -> Self {
        Self::from_letters(self.letters.iter().map(|l| (f(l.gen), l.exp.clone())))
    }

    /// Cyclic rotation by `k` syllables, then re-reduced.
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut v = self.letters[k..].to_vec();
        v.extend_from_slice(&self.letters[..k]);
        Self::from_letters(v.into_iter().map(|l| (l.gen, l.exp)))
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

/// Free reduction; words are always stored reduced, so this rebuilds from syllables.
pub fn free_reduce<E: Scalar>(w: &Word<E>) -> Word<E> {
    Word::from_letters(w.letters.iter().map(|l| (l.gen, l.exp.clone())))
}

impl<E: Scalar> fmt::Display for Word<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exp.is_one() {
                write!(f, "g{}", l.gen)?;
            } else {
                write!(f, "g{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}
