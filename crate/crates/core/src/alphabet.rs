use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Symbol = usize;

/// A finite word as a sequence of symbol indices.
pub type Word = Vec<Symbol>;

/// An ordered set of named symbols.
///
/// The declaration order is the total order used for every lexicographic
/// comparison in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad symbol name {s:?}")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Symbols `1, 2, ..., n`.
    pub fn numbered(n: usize) -> Self {
        Alphabet::new((1..=n).map(|i| i.to_string())).expect("n > 0")
    }

    /// The paired alphabet `self × other`, with `(a, b)` at index `a * |other| + b`.
    pub fn pairs(&self, other: &Alphabet) -> Alphabet {
        let mut names = Vec::with_capacity(self.len() * other.len());
        for a in &self.symbols {
            for b in &other.symbols {
                names.push(format!("{a},{b}"));
            }
        }
        Alphabet::new(names).expect("pair names are distinct")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownSymbol {
            symbol: name.to_string(),
        })
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        symbol < self.symbols.len()
    }

    pub fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(Error::UnknownSymbol {
                symbol: format!("#{s}"),
            }),
            None => Ok(()),
        }
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Alphabets of one-character symbols accept plain
    /// concatenation (`abb`); otherwise symbols are separated by whitespace
    /// or dots. `ε` and `-` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "-" {
            return Ok(Vec::new());
        }
        if self.single_char() && !text.contains(|c: char| c.is_whitespace() || c == '.') {
            return text
                .chars()
                .map(|c| self.lookup(c.encode_utf8(&mut [0; 4])))
                .collect();
        }
        text.split(|c: char| c.is_whitespace() || c == '.')
            .filter(|t| !t.is_empty())
            .map(|t| self.lookup(t))
            .collect()
    }

    pub fn format_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "." };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(", "))
    }
}

/// All words of length `len` over `k` symbols in lexicographic order.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = k.checked_pow(len as u32).expect("enumeration overflow");
    (0..total).map(move |mut n| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = n % k;
            n /= k;
        }
        w
    })
}

/// Interleaves two equal-length words into pair symbols over a base alphabet of size `k`.
pub fn zip_pair(k: usize, first: &[Symbol], second: &[Symbol]) -> Result<Word> {
    if first.len() != second.len() {
        return Err(Error::LengthMismatch {
            left: first.len(),
            right: second.len(),
        });
    }
    Ok(first.iter().zip(second).map(|(&a, &b)| a * k + b).collect())
}

/// Splits pair symbols back into their two tapes.
pub fn unzip_pair(k: usize, word: &[Symbol]) -> (Word, Word) {
    word.iter().map(|&s| (s / k, s % k)).unzip()
}
