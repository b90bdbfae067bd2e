use std::collections::HashMap;

use crate::error::{Error, Result};

/// Input word as symbol-table indices. The end-marker is never part of a word.
pub type Word = Vec<usize>;

/// Ordered symbol table. Word enumeration and serialization follow this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(',') || s.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("symbol name `{s}` is empty or contains a separator")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn word<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        symbols.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    /// Parses a comma-separated word. When every symbol is one character the
    /// commas may be omitted (`"aab"`). `""` and `"ε"` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if text.contains(',') || self.index.contains_key(text) {
            return text.split(',').map(|s| self.index_of(s.trim())).collect();
        }
        if self.symbols.iter().all(|s| s.chars().count() == 1) {
            return text.chars().map(|ch| self.index_of(&ch.to_string())).collect();
        }
        Err(Error::UnknownSymbol(text.to_string()))
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let names: Vec<&str> = word.iter().map(|&i| self.symbol(i)).collect();
        if self.symbols.iter().all(|s| s.chars().count() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.len()) {
            Some(&index) => Err(Error::SymbolIndex { index, size: self.len() }),
            None => Ok(()),
        }
    }
}
