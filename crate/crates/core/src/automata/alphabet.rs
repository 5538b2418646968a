use std::collections::HashSet;

use crate::error::{Error, Result};

/// Index of a letter in its alphabet.
pub type Letter = usize;

/// A word as a sequence of letter indices.
pub type Word = Vec<Letter>;

/// A nonempty, ordered list of distinct symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<String>);

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet must not be empty".into()));
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::Invalid(format!("duplicate letter `{s}`")));
            }
        }
        Ok(Alphabet(symbols))
    }

    /// Alphabet `a, b, c, …` of the given size (at most 26).
    pub fn letters(size: usize) -> Self {
        assert!((1..=26).contains(&size), "alphabet size out of range");
        Alphabet(
            (0..size)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.0[letter]
    }

    pub fn index(&self, symbol: &str) -> Result<Letter> {
        self.0
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownLetter(symbol.to_string()))
    }

    /// Parses a word. Without commas every character is one letter; with commas the
    /// input is split on them (`a,b,a`). The empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(',') {
            text.split(',').map(|s| self.index(s.trim())).collect()
        } else {
            text.chars()
                .map(|c| self.index(c.encode_utf8(&mut [0; 4])))
                .collect()
        }
    }

    pub fn check_word(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.len()) {
            Some(a) => Err(Error::UnknownLetter(format!("#{a}"))),
            None => Ok(()),
        }
    }

    pub fn render(&self, word: &[Letter]) -> String {
        let single = self.0.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&a| self.symbol(a)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// All words of length at most `max_len`, shortest first, in length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in 0..self.len() {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
    }

    #[test]
    fn parses_words() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(ab.parse_word("").unwrap(), Vec::<usize>::new());
        assert_eq!(ab.parse_word("aba").unwrap(), vec![0, 1, 0]);
        assert_eq!(ab.parse_word("a,b").unwrap(), vec![0, 1]);
        assert!(matches!(ab.parse_word("ac"), Err(Error::UnknownLetter(_))));
        let long = Alphabet::new(["go", "stop"]).unwrap();
        assert_eq!(long.parse_word("stop,go").unwrap(), vec![1, 0]);
        assert_eq!(long.render(&[1, 0]), "stop,go");
        assert_eq!(ab.render(&[1, 0]), "ba");
    }

    #[test]
    fn enumerates_words() {
        let ab = Alphabet::letters(2);
        let words = ab.words_up_to(3);
        assert_eq!(words.len(), 1 + 2 + 4 + 8);
        assert_eq!(words[0], Vec::<usize>::new());
        assert_eq!(words[3], vec![0, 0]);
    }
}
