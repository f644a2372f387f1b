//! Text preprocessing: tokenization, stop-word removal and part-of-speech tagging.
//!
//! Raw answer documents come in as UTF-8 text. The chain
//! `tokenize` → `remove_stop_words` → `pos_tag` turns them into ordered,
//! tagged token streams. Every step is a pure function, so the same input
//! always produces the same output.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Bundled default stop-word list, one word per line.
const DEFAULT_STOP_WORDS: &str = include_str!("../data/stopwords.txt");

/// A raw input document: an identifier plus its text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
        }
    }

    /// Builds a document from raw bytes, rejecting invalid UTF-8.
    pub fn from_bytes(id: impl Into<String>, bytes: &[u8]) -> Result<Self> {
        let id = id.into();
        match std::str::from_utf8(bytes) {
            Ok(text) => Ok(Self {
                id,
                text: text.to_string(),
            }),
            Err(e) => Err(Error::InvalidEncoding {
                id,
                offset: e.valid_up_to(),
            }),
        }
    }
}

/// Part-of-speech tag classes.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 5] = [
        PosTag::Noun,
        PosTag::Verb,
        PosTag::Adjective,
        PosTag::Adverb,
        PosTag::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PosTag::Noun => "noun",
            PosTag::Verb => "verb",
            PosTag::Adjective => "adjective",
            PosTag::Adverb => "adverb",
            PosTag::Other => "other",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "noun" => Ok(PosTag::Noun),
            "verb" => Ok(PosTag::Verb),
            "adjective" => Ok(PosTag::Adjective),
            "adverb" => Ok(PosTag::Adverb),
            "other" => Ok(PosTag::Other),
            _ => Err(format!("unknown part-of-speech tag '{s}'")),
        }
    }
}

/// A tagged word with its 0-based position after stop-word removal.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Token {
    pub surface: String,
    pub pos: PosTag,
    pub position: usize,
}

/// Lowercase exact-match stop-word set.
#[derive(Debug, Clone)]
pub struct StopWordList {
    words: HashSet<String>,
}

impl StopWordList {
    pub fn new(words: impl IntoIterator<Item = String>) -> Self {
        Self {
            words: words.into_iter().collect(),
        }
    }

    /// The bundled default list.
    pub fn default_list() -> Self {
        Self::parse(DEFAULT_STOP_WORDS)
    }

    /// Parses stop-word file content: one lowercase word per line,
    /// `#`-prefixed comment lines and blank lines ignored.
    pub fn parse(content: &str) -> Self {
        let words = content
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| line.to_lowercase())
            .collect();
        Self { words }
    }

    pub fn load(path: impl AsRef<Path>) -> std::io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Word → part-of-speech lookup table with a single tag per word.
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    entries: HashMap<String, PosTag>,
}

impl PosLexicon {
    /// An empty lexicon; every lookup falls back to the caller's default tag.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (String, PosTag)>) -> Self {
        Self {
            entries: entries.into_iter().collect(),
        }
    }

    /// Parses lexicon content: tab-separated `word<TAB>tag` per line.
    /// A duplicate word is a load error carrying the line number.
    pub fn parse(content: &str, path: impl Into<std::path::PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut entries = HashMap::new();
        for (idx, raw) in content.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) =
                line.split_once('\t')
                    .ok_or_else(|| Error::MalformedLexiconEntry {
                        path: path.clone(),
                        line: line_no,
                        reason: "expected word<TAB>tag".to_string(),
                    })?;
            let word = word.trim().to_lowercase();
            let tag =
                PosTag::from_str(tag.trim()).map_err(|reason| Error::MalformedLexiconEntry {
                    path: path.clone(),
                    line: line_no,
                    reason,
                })?;
            if entries.contains_key(&word) {
                return Err(Error::DuplicateLexiconEntry {
                    path,
                    line: line_no,
                    word,
                });
            }
            entries.insert(word, tag);
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = std::fs::read(path).map_err(|e| Error::MalformedLexiconEntry {
            path: path.to_path_buf(),
            line: 0,
            reason: e.to_string(),
        })?;
        let content = std::str::from_utf8(&content).map_err(|e| Error::InvalidEncoding {
            id: path.display().to_string(),
            offset: e.valid_up_to(),
        })?;
        Self::parse(content, path)
    }

    pub fn lookup(&self, word: &str) -> Option<PosTag> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Splits document text into lowercase word tokens.
///
/// A word is a maximal run of alphabetic characters, allowing an apostrophe
/// or hyphen only between two alphabetic characters. Punctuation and digits
/// separate words and are discarded. Stop words are NOT removed here.
pub fn tokenize(doc: &RawDocument) -> Vec<String> {
    let chars: Vec<char> = doc.text.chars().collect();
    let mut words = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphabetic() {
            current.push(c);
        } else if (c == '-' || c == '\'')
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphabetic())
        {
            // joiner between two letters stays inside the word
            current.push(c);
        } else if !current.is_empty() {
            words.push(std::mem::take(&mut current).to_lowercase());
        }
    }
    if !current.is_empty() {
        words.push(current.to_lowercase());
    }
    words
}

/// Drops every word present in the stop-word list, preserving order.
pub fn remove_stop_words(words: &[String], stops: &StopWordList) -> Vec<String> {
    words
        .iter()
        .filter(|w| !stops.contains(w))
        .cloned()
        .collect()
}

/// Tags each word via the lexicon, falling back to `fallback` for absent
/// words. Positions run 0..n-1 in input order.
pub fn pos_tag(words: &[String], lexicon: &PosLexicon, fallback: PosTag) -> Vec<Token> {
    words
        .iter()
        .enumerate()
        .map(|(position, word)| Token {
            surface: word.clone(),
            pos: lexicon.lookup(word).unwrap_or(fallback),
            position,
        })
        .collect()
}

/// Full preprocessing chain for one document.
pub fn preprocess(
    doc: &RawDocument,
    stops: &StopWordList,
    lexicon: &PosLexicon,
    fallback: PosTag,
) -> Vec<Token> {
    let words = tokenize(doc);
    let kept = remove_stop_words(&words, stops);
    pos_tag(&kept, lexicon, fallback)
}
