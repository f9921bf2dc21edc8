//! Braid words: parsing, permutation, writhe, closure test and Markov moves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One letter `sigma_generator^{sign}` of a braid word. Generators are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub generator: usize,
    pub sign: Sign,
}

impl Crossing {
    pub fn new(generator: usize, sign: Sign) -> Self {
        Crossing { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Crossing { generator: self.generator, sign: self.sign.flip() }
    }

    fn as_int(self) -> i64 {
        self.generator as i64 * self.sign.value()
    }
}

/// A braid on `strands` strands written as a product of signed generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Vec<Crossing>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<Crossing>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidArgument("a braid needs at least one strand".into()));
        }
        for c in &word {
            if c.generator == 0 || c.generator >= strands {
                return Err(Error::InvalidGenerator { generator: c.as_int(), strands });
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// Build from signed integers, `n > 0` for `sigma_n` and `n < 0` for its
    /// inverse.
    pub fn from_ints(strands: usize, ints: &[i64]) -> Result<Self> {
        let word = ints
            .iter()
            .map(|&n| {
                if n == 0 {
                    Err(Error::InvalidGenerator { generator: 0, strands })
                } else {
                    let sign = if n > 0 { Sign::Pos } else { Sign::Neg };
                    Ok(Crossing::new(n.unsigned_abs() as usize, sign))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.word.iter().map(|c| c.sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.word.iter().map(|c| c.sign.value()).sum()
    }

    /// The underlying permutation: transpositions `(i, i+1)` applied left to
    /// right to the strand positions. Entry `p[s]` is where strand `s` ends.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for c in &self.word {
            at.swap(c.generator - 1, c.generator);
        }
        // `at[pos]` holds the strand now at `pos`; invert it.
        let mut p = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            p[s] = pos;
        }
        p
    }

    /// True iff the permutation is a single `m`-cycle.
    pub fn closure_is_knot(&self) -> bool {
        let p = self.permutation();
        let mut len = 1;
        let mut s = p[0];
        while s != 0 {
            s = p[s];
            len += 1;
        }
        len == self.strands
    }

    pub fn require_knot(&self) -> Result<()> {
        if self.closure_is_knot() {
            Ok(())
        } else {
            Err(Error::NotAKnot)
        }
    }

    /// The word read backwards; its closure is the same knot with the
    /// opposite orientation.
    pub fn reversed(&self) -> BraidWord {
        BraidWord { strands: self.strands, word: self.word.iter().rev().copied().collect() }
    }

    /// All signs flipped: the closure is the mirror image.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, word: self.word.iter().map(|c| c.inverse()).collect() }
    }

    /// Cancel adjacent `sigma_i sigma_i^{-1}` pairs.
    pub fn freely_reduced(&self) -> BraidWord {
        let mut out: Vec<Crossing> = Vec::with_capacity(self.word.len());
        for &c in &self.word {
            if out.last() == Some(&c.inverse()) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        BraidWord { strands: self.strands, word: out }
    }

    pub fn apply_move(&self, mv: MarkovMove) -> Result<BraidWord> {
        markov_moves(self, mv)
    }

    pub fn to_word_string(&self) -> String {
        self.word.iter().map(|c| c.as_int().to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] on {} strands", self.to_word_string(), self.strands)
    }
}

/// Parse whitespace-separated nonzero integers. Without an explicit strand
/// count the braid gets `max|n| + 1` strands.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let mut ints = Vec::new();
    for (position, tok) in text.split_whitespace().enumerate() {
        let n: i64 =
            tok.parse().map_err(|_| Error::Parse { position, message: format!("'{tok}' is not an integer") })?;
        if n == 0 {
            return Err(Error::Parse { position, message: "generator index 0".into() });
        }
        if let Some(m) = strands {
            if n.unsigned_abs() as usize >= m {
                return Err(Error::Parse { position, message: format!("generator {n} needs more than {m} strands") });
            }
        }
        ints.push(n);
    }
    let m = match strands {
        Some(m) => m,
        None => {
            let top = ints
                .iter()
                .map(|n| n.unsigned_abs() as usize)
                .max()
                .ok_or_else(|| Error::Parse { position: 0, message: "empty word without a strand count".into() })?;
            top + 1
        }
    };
    BraidWord::from_ints(m, &ints)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkovMove {
    /// `g w g^{-1}` for the signed generator `g`.
    Conjugate(i64),
    /// Add a strand and append `sigma_m`.
    StabilizePositive,
    /// Add a strand and append `sigma_m^{-1}`.
    StabilizeNegative,
}

pub fn markov_moves(b: &BraidWord, mv: MarkovMove) -> Result<BraidWord> {
    let m = b.strands;
    match mv {
        MarkovMove::Conjugate(g) => {
            if g == 0 || g.unsigned_abs() as usize >= m {
                return Err(Error::InvalidGenerator { generator: g, strands: m });
            }
            let sign = if g > 0 { Sign::Pos } else { Sign::Neg };
            let c = Crossing::new(g.unsigned_abs() as usize, sign);
            let mut word = vec![c];
            word.extend_from_slice(&b.word);
            word.push(c.inverse());
            Ok(BraidWord { strands: m, word }.freely_reduced())
        }
        MarkovMove::StabilizePositive | MarkovMove::StabilizeNegative => {
            let sign = if mv == MarkovMove::StabilizePositive { Sign::Pos } else { Sign::Neg };
            let mut word = b.word.clone();
            word.push(Crossing::new(m, sign));
            Ok(BraidWord { strands: m + 1, word })
        }
    }
}

/// One entry of a braid corpus file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub strands: usize,
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<f64>,
}

impl CorpusEntry {
    /// Parse the word and check that the closure is a knot.
    pub fn braid(&self) -> Result<BraidWord> {
        let b =
            parse_braid(&self.word, Some(self.strands)).map_err(|e| Error::Corpus(format!("{}: {e}", self.name)))?;
        if !b.closure_is_knot() {
            return Err(Error::Corpus(format!("{}: closure is not a knot", self.name)));
        }
        Ok(b)
    }
}

pub fn load_corpus(json: &str) -> Result<Vec<CorpusEntry>> {
    let entries: Vec<CorpusEntry> = serde_json::from_str(json).map_err(|e| Error::Corpus(e.to_string()))?;
    for e in &entries {
        e.braid()?;
    }
    Ok(entries)
}

const BUNDLED_CORPUS: &str = include_str!("../data/corpus.json");

/// The corpus shipped with the crate.
pub fn bundled_corpus() -> Vec<CorpusEntry> {
    load_corpus(BUNDLED_CORPUS).expect("bundled corpus is valid")
}
