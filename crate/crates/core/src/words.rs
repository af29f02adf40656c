//! Free-group words over a finite alphabet of generators and their inverses.
//!
//! Words are plain letter sequences: no implicit reduction ever happens, so
//! `aA` and the empty word are distinct `Word`s that represent the same group
//! element. Downstream curve drawing depends on seeing every letter.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest word a single parse or null-move is allowed to produce.
const MAX_WORD_LEN: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator '{0}': alphabet has rank {1}")]
    UnknownGenerator(char, usize),
    #[error("malformed exponent in word text: {0}")]
    MalformedExponent(String),
    #[error("unexpected character '{0}' in word text")]
    InvalidCharacter(char),
    #[error("alphabet rank {0} out of range (1..=26 supported)")]
    RankOutOfRange(usize),
    #[error("alphabet names must be distinct lowercase letters")]
    BadAlphabetNames,
}

/// The generating set `{s_1, ..., s_r}`. Names default to `a, b, c, ...`;
/// uppercase letters denote inverses in the textual form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    rank: usize,
    names: Vec<char>,
}

impl Alphabet {
    /// Alphabet of the first `rank` lowercase Latin letters.
    pub fn new(rank: usize) -> Result<Self, WordError> {
        if rank == 0 || rank > 26 {
            return Err(WordError::RankOutOfRange(rank));
        }
        let names = (0..rank).map(|i| (b'a' + i as u8) as char).collect();
        Ok(Alphabet { rank, names })
    }

    pub fn with_names(names: Vec<char>) -> Result<Self, WordError> {
        let rank = names.len();
        if rank == 0 || rank > 26 {
            return Err(WordError::RankOutOfRange(rank));
        }
        let mut seen = names.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != rank || names.iter().any(|c| !c.is_ascii_lowercase()) {
            return Err(WordError::BadAlphabetNames);
        }
        Ok(Alphabet { rank, names })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self, gen: usize) -> char {
        self.names[gen]
    }

    fn index_of(&self, lower: char) -> Option<usize> {
        self.names.iter().position(|&c| c == lower)
    }
}

/// One signed letter: generator index (0-based) plus a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub positive: bool,
}

impl Letter {
    pub fn new(gen: usize, positive: bool) -> Self {
        Letter { gen, positive }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            positive: !self.positive,
        }
    }
}

/// An unreduced free-group word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, plus one. Zero for the empty word.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    /// Compact contiguous text form, e.g. `abAB`, under the default names.
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|l| {
                let c = (b'a' + l.gen as u8) as char;
                if l.positive {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }

    pub fn render_in(&self, alphabet: &Alphabet) -> String {
        self.letters
            .iter()
            .map(|l| {
                let c = alphabet.name(l.gen);
                if l.positive {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses the word grammar: a lowercase letter is a generator, uppercase its
/// inverse, and an optional `^n` suffix (n any integer) repeats the preceding
/// letter with sign, so `a^-2` is `AA`. Whitespace separates nothing special
/// and is skipped.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    let mut letters = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        if !c.is_ascii_alphabetic() {
            if c == '^' {
                return Err(WordError::MalformedExponent(
                    "'^' must follow a generator letter".into(),
                ));
            }
            return Err(WordError::InvalidCharacter(c));
        }
        let lower = c.to_ascii_lowercase();
        let gen = alphabet
            .index_of(lower)
            .ok_or(WordError::UnknownGenerator(c, alphabet.rank()))?;
        let positive = c.is_ascii_lowercase();
        let mut count: i64 = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            if chars.peek() == Some(&'-') || chars.peek() == Some(&'+') {
                digits.push(chars.next().unwrap());
            }
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(chars.next().unwrap());
                } else {
                    break;
                }
            }
            if digits.is_empty() || digits == "-" || digits == "+" {
                return Err(WordError::MalformedExponent(
                    "'^' not followed by an integer".into(),
                ));
            }
            count = digits
                .parse::<i64>()
                .map_err(|_| WordError::MalformedExponent(format!("exponent '{digits}'")))?;
        }
        let letter = Letter::new(gen, positive == (count >= 0));
        let reps = count.unsigned_abs() as usize;
        if letters.len() + reps > MAX_WORD_LEN {
            return Err(WordError::MalformedExponent(format!(
                "word longer than {MAX_WORD_LEN} letters"
            )));
        }
        letters.extend(std::iter::repeat_n(letter, reps));
    }
    Ok(Word::from_letters(letters))
}

/// Cancels adjacent inverse pairs until none remain. The result represents
/// the same element of the free group.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        match out.last() {
            Some(&top) if top.gen == l.gen && top.positive != l.positive => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word::from_letters(out)
}

/// Reverses the word and flips every sign.
pub fn invert(w: &Word) -> Word {
    Word::from_letters(w.letters().iter().rev().map(|l| l.inverse()).collect())
}

/// Juxtaposes two letter sequences; never reduces.
pub fn concat(w: &Word, v: &Word) -> Word {
    let mut letters = Vec::with_capacity(w.len() + v.len());
    letters.extend_from_slice(w.letters());
    letters.extend_from_slice(v.letters());
    Word::from_letters(letters)
}

/// Signed letter counts per generator (the abelianization of the word).
pub fn exponent_sums(w: &Word, alphabet: &Alphabet) -> Vec<i64> {
    let mut sums = vec![0i64; alphabet.rank()];
    for l in w.letters() {
        assert!(l.gen < alphabet.rank(), "letter outside alphabet");
        sums[l.gen] += if l.positive { 1 } else { -1 };
    }
    sums
}

/// Deterministic uniform random word: each letter independent over the 2r
/// signed generators.
pub fn random_word(seed: u64, length: usize, alphabet: &Alphabet) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = alphabet.rank();
    let letters = (0..length)
        .map(|_| {
            let pick = rng.gen_range(0..2 * r);
            Letter::new(pick / 2, pick % 2 == 0)
        })
        .collect();
    Word::from_letters(letters)
}

/// One elementary null move: splits `w = u1 u2` at a random position and
/// inserts either `s s^-1` or `s rho s^-1` for a random relator `rho`. The
/// result represents the same element of the group presented with `relators`.
pub fn null_move(seed: u64, w: &Word, relators: &[Word]) -> Word {
    assert!(
        !relators.is_empty(),
        "null_move requires a nonempty relator set"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = relators
        .iter()
        .map(|r| r.min_rank())
        .max()
        .unwrap_or(1)
        .max(w.min_rank())
        .max(1);
    let split = rng.gen_range(0..=w.len());
    let pick = rng.gen_range(0..2 * rank);
    let s = Letter::new(pick / 2, pick % 2 == 0);
    let mut inserted = vec![s];
    if rng.gen_bool(0.5) {
        let rho = &relators[rng.gen_range(0..relators.len())];
        inserted.extend_from_slice(rho.letters());
    }
    inserted.push(s.inverse());
    let mut letters = Vec::with_capacity(w.len() + inserted.len());
    letters.extend_from_slice(&w.letters()[..split]);
    letters.extend_from_slice(&inserted);
    letters.extend_from_slice(&w.letters()[split..]);
    Word::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    #[test]
    fn parse_plain_letters() {
        let w = parse_word("abAB", &ab()).unwrap();
        assert_eq!(w.render(), "abAB");
        assert_eq!(w.letters()[0], Letter::new(0, true),);
        assert_eq!(w.letters()[2], Letter::new(0, false));
    }

    #[test]
    fn parse_exponents() {
        let w = parse_word("a^2 b^2 A^2 B^2", &ab()).unwrap();
        assert_eq!(w.render(), "aabbAABB");
        let v = parse_word("a^-3", &ab()).unwrap();
        assert_eq!(v.render(), "AAA");
        let z = parse_word("A^-2", &ab()).unwrap();
        assert_eq!(z.render(), "aa");
        assert_eq!(parse_word("a^0", &ab()).unwrap(), Word::empty());
    }

    #[test]
    fn parse_rejects_unknown_generator() {
        assert_eq!(
            parse_word("c", &ab()),
            Err(WordError::UnknownGenerator('c', 2))
        );
    }

    #[test]
    fn parse_rejects_bad_exponents() {
        assert!(matches!(
            parse_word("a^", &ab()),
            Err(WordError::MalformedExponent(_))
        ));
        assert!(matches!(
            parse_word("^2", &ab()),
            Err(WordError::MalformedExponent(_))
        ));
        assert!(matches!(
            parse_word("a^x", &ab()),
            Err(WordError::MalformedExponent(_))
        ));
        assert!(matches!(
            parse_word("a2", &ab()),
            Err(WordError::InvalidCharacter('2'))
        ));
    }

    #[test]
    fn reduce_examples() {
        let reduce = |s: &str| free_reduce(&parse_word(s, &ab()).unwrap()).render();
        assert_eq!(reduce("aA"), "");
        assert_eq!(reduce("abBA"), "");
        assert_eq!(reduce("abab"), "abab");
    }

    #[test]
    fn invert_examples() {
        let inv = |s: &str| invert(&parse_word(s, &ab()).unwrap()).render();
        assert_eq!(inv("ab"), "BA");
        assert_eq!(inv(""), "");
        assert_eq!(inv("aaB"), "bAA");
    }

    #[test]
    fn concat_examples() {
        let w = |s: &str| parse_word(s, &ab()).unwrap();
        assert_eq!(concat(&w("ab"), &w("AB")).render(), "abAB");
        assert_eq!(concat(&w(""), &w("ab")).render(), "ab");
        // no automatic reduction
        assert_eq!(concat(&w("a"), &w("A")).render(), "aA");
    }

    #[test]
    fn exponent_sum_examples() {
        let sums = |s: &str| exponent_sums(&parse_word(s, &ab()).unwrap(), &ab());
        assert_eq!(sums("abAB"), vec![0, 0]);
        assert_eq!(sums("abab"), vec![2, 2]);
        assert_eq!(sums("aabbAbABabb"), vec![1, 4]);
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::new(0), Err(WordError::RankOutOfRange(0)));
        assert_eq!(Alphabet::new(27), Err(WordError::RankOutOfRange(27)));
        assert_eq!(Alphabet::new(26).unwrap().name(25), 'z');
        let named = Alphabet::with_names(vec!['x', 'y']).unwrap();
        assert_eq!(parse_word("xY", &named).unwrap().render_in(&named), "xY");
        assert_eq!(
            Alphabet::with_names(vec!['x', 'x']),
            Err(WordError::BadAlphabetNames)
        );
        assert_eq!(
            Alphabet::with_names(vec!['X']),
            Err(WordError::BadAlphabetNames)
        );
    }

    #[test]
    fn random_word_contract() {
        assert_eq!(random_word(42, 0, &ab()), Word::empty());
        let w = random_word(42, 5, &ab());
        assert_eq!(w.len(), 5);
        assert_eq!(w, random_word(42, 5, &ab()));
        assert_ne!(random_word(1, 20, &ab()), random_word(2, 20, &ab()));
    }

    #[test]
    fn null_move_length_contract() {
        let relator = parse_word("abAB", &ab()).unwrap();
        let w = parse_word("abba", &ab()).unwrap();
        for seed in 0..20 {
            let moved = null_move(seed, &w, std::slice::from_ref(&relator));
            let grew = moved.len() - w.len();
            assert!(grew == 2 || grew == 2 + relator.len(), "grew by {grew}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn words(max_len: usize) -> impl Strategy<Value = Word> {
            proptest::collection::vec((0usize..2, proptest::bool::ANY), 0..=max_len).prop_map(
                |ls| Word::from_letters(ls.into_iter().map(|(g, p)| Letter::new(g, p)).collect()),
            )
        }

        proptest! {
            #[test]
            fn reduce_is_idempotent(w in words(30)) {
                let once = free_reduce(&w);
                prop_assert_eq!(free_reduce(&once), once);
            }

            #[test]
            fn word_times_inverse_reduces_to_empty(w in words(30)) {
                prop_assert!(free_reduce(&concat(&w, &invert(&w))).is_empty());
            }

            #[test]
            fn exponent_sums_are_additive(w in words(20), v in words(20)) {
                let alpha = Alphabet::new(2).unwrap();
                let both = exponent_sums(&concat(&w, &v), &alpha);
                let sum: Vec<i64> = exponent_sums(&w, &alpha)
                    .iter()
                    .zip(exponent_sums(&v, &alpha))
                    .map(|(a, b)| a + b)
                    .collect();
                prop_assert_eq!(both, sum);
            }

            #[test]
            fn parse_render_round_trip(w in words(30)) {
                let alpha = Alphabet::new(2).unwrap();
                prop_assert_eq!(parse_word(&w.render(), &alpha).unwrap(), w);
            }

            #[test]
            fn parse_never_panics(text in "\\PC{0,40}") {
                let alpha = Alphabet::new(3).unwrap();
                let _ = parse_word(&text, &alpha);
            }
        }
    }
}
