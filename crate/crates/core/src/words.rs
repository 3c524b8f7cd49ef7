//! 0-1 words on the natural numbers: generators, factors, recurrence.
//!
//! A [`Word`] is a generator descriptor that can produce any prefix on
//! demand. Everything measured here (factor sets, complexity, recurrence
//! bounds) is a statement about a finite prefix, and results carry the
//! prefix length they were computed from.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

/// Default number of partial quotients used when a slope is given as an
/// infinite continued fraction. Convergent denominators grow at least like
/// the Fibonacci numbers, so 48 terms put them above 10^9.
pub const DEFAULT_CF_DEPTH: usize = 48;

/// An exact rational `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parameter("zero denominator".into()));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        Ok(Ratio { num, den })
    }
}

impl std::str::FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("expected a rational like 2/5, got {s:?}"));
        match s.split_once('/') {
            Some((a, b)) => Ratio::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => Ratio::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

/// Slope of a mechanical word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Slope {
    Rational(Ratio),
    /// `[head; repeat, repeat, ...]` truncated to `depth` partial quotients.
    ContinuedFraction {
        head: Vec<u64>,
        repeat: Vec<u64>,
        depth: usize,
    },
}

impl Slope {
    /// The convergent used for evaluation, as `(p, q)` with `q > 0`.
    pub fn as_fraction(&self) -> Result<(BigInt, BigInt)> {
        match self {
            Slope::Rational(r) => Ok((BigInt::from(r.num), BigInt::from(r.den))),
            Slope::ContinuedFraction {
                head,
                repeat,
                depth,
            } => {
                let mut terms: Vec<u64> = head.iter().copied().take(*depth).collect();
                if !repeat.is_empty() {
                    while terms.len() < *depth {
                        terms.extend(repeat.iter().take(depth - terms.len()));
                    }
                }
                if terms.is_empty() {
                    return Err(Error::Parameter("empty continued fraction".into()));
                }
                if terms[1..].contains(&0) {
                    return Err(Error::Parameter(
                        "partial quotients after the first must be positive".into(),
                    ));
                }
                // Evaluate from the tail: x = a_k, x = a_i + 1/x.
                let mut p = BigInt::from(*terms.last().expect("nonempty"));
                let mut q = BigInt::one();
                for &a in terms.iter().rev().skip(1) {
                    let np = BigInt::from(a) * &p + &q;
                    q = p;
                    p = np;
                }
                Ok((p, q))
            }
        }
    }
}

/// Generator descriptor; serialized as a JSON object tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WordSpec {
    /// A finite word; prefixes beyond its length are an error.
    Explicit { bits: String },
    /// `head` followed by `period` repeated forever.
    Periodic { head: String, period: String },
    /// `letter_i = floor((i+1) s + c) - floor(i s + c)`.
    Mechanical { slope: Slope, intercept: Ratio },
    /// Fixed point of `0 -> zero, 1 -> one` starting from `seed`.
    Substitution {
        zero: String,
        one: String,
        seed: String,
    },
    /// Letterwise complement of another generator.
    Complement { of: Box<WordSpec> },
}

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.bytes()
        .map(|b| match b {
            b'0' => Ok(0),
            b'1' => Ok(1),
            _ => Err(Error::InvalidWord(format!(
                "letter {:?} is not 0 or 1",
                b as char
            ))),
        })
        .collect()
}

/// Renders letters as an ASCII 0/1 string.
pub fn to_ascii(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b == 0 { '0' } else { '1' })
        .collect()
}

pub fn from_ascii(s: &str) -> Result<Vec<u8>> {
    parse_bits(s)
}

impl WordSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            WordSpec::Explicit { bits } => parse_bits(bits).map(drop),
            WordSpec::Periodic { head, period } => {
                parse_bits(head)?;
                if parse_bits(period)?.is_empty() {
                    return Err(Error::InvalidWord("empty period".into()));
                }
                Ok(())
            }
            WordSpec::Mechanical { slope, intercept } => {
                let (p, q) = slope.as_fraction()?;
                if intercept.den <= 0 {
                    return Err(Error::Parameter(
                        "intercept denominator must be positive".into(),
                    ));
                }
                if !(p > BigInt::zero() && p < q) {
                    return Err(Error::Parameter(
                        "slope must lie strictly between 0 and 1".into(),
                    ));
                }
                Ok(())
            }
            WordSpec::Substitution { zero, one, seed } => {
                let rules = [parse_bits(zero)?, parse_bits(one)?];
                let seed = parse_bits(seed)?;
                if seed.is_empty() || rules.iter().any(Vec::is_empty) {
                    return Err(Error::InvalidWord(
                        "substitution images and seed must be nonempty".into(),
                    ));
                }
                let image: Vec<u8> = seed
                    .iter()
                    .flat_map(|&b| rules[b as usize].clone())
                    .collect();
                if image.len() <= seed.len() {
                    return Err(Error::NonGrowingSubstitution);
                }
                if !image.starts_with(&seed) {
                    return Err(Error::InvalidWord(
                        "seed is not a prefix of its image, so the iterates do not converge".into(),
                    ));
                }
                Ok(())
            }
            WordSpec::Complement { of } => of.validate(),
        }
    }

    /// Length of the word, or `None` if infinite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            WordSpec::Explicit { bits } => Some(bits.len()),
            WordSpec::Complement { of } => of.finite_len(),
            _ => None,
        }
    }

    fn generate(&self, n: usize) -> Result<Vec<u8>> {
        match self {
            WordSpec::Explicit { bits } => {
                let b = parse_bits(bits)?;
                if n > b.len() {
                    return Err(Error::InvalidWord(format!(
                        "prefix of length {n} requested from a word of length {}",
                        b.len()
                    )));
                }
                Ok(b[..n].to_vec())
            }
            WordSpec::Periodic { head, period } => {
                let head = parse_bits(head)?;
                let period = parse_bits(period)?;
                Ok(head
                    .iter()
                    .chain(period.iter().cycle())
                    .take(n)
                    .copied()
                    .collect())
            }
            WordSpec::Mechanical { slope, intercept } => {
                let (p, q) = slope.as_fraction()?;
                let (r, s) = (BigInt::from(intercept.num), BigInt::from(intercept.den));
                // floor((i p s + r q) / (q s))
                let den = &q * &s;
                let step = &p * &s;
                let mut numer = &r * &q;
                let mut prev = numer.div_floor(&den);
                let mut out = Vec::with_capacity(n);
                for _ in 0..n {
                    numer += &step;
                    let cur = numer.div_floor(&den);
                    out.push(if cur == prev { 0 } else { 1 });
                    prev = cur;
                }
                Ok(out)
            }
            WordSpec::Substitution { zero, one, seed } => {
                let rules = [parse_bits(zero)?, parse_bits(one)?];
                let mut w = parse_bits(seed)?;
                while w.len() < n {
                    w = w
                        .iter()
                        .flat_map(|&b| rules[b as usize].iter().copied())
                        .collect();
                }
                w.truncate(n);
                Ok(w)
            }
            WordSpec::Complement { of } => Ok(of.generate(n)?.into_iter().map(|b| b ^ 1).collect()),
        }
    }
}

/// A word with a monotonically growing memo of its generated prefix.
#[derive(Clone)]
pub struct Word {
    spec: WordSpec,
    cache: Arc<RwLock<Vec<u8>>>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Word").field("spec", &self.spec).finish()
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Word {
    pub fn new(spec: WordSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Word {
            spec,
            cache: Arc::new(RwLock::new(Vec::new())),
        })
    }

    pub fn spec(&self) -> &WordSpec {
        &self.spec
    }

    pub fn explicit(bits: &str) -> Result<Self> {
        Word::new(WordSpec::Explicit { bits: bits.into() })
    }

    pub fn from_letters(bits: &[u8]) -> Self {
        Word::new(WordSpec::Explicit {
            bits: to_ascii(bits),
        })
        .expect("letters are 0/1")
    }

    pub fn periodic(period: &str) -> Result<Self> {
        Word::new(WordSpec::Periodic {
            head: String::new(),
            period: period.into(),
        })
    }

    pub fn eventually_periodic(head: &str, period: &str) -> Result<Self> {
        Word::new(WordSpec::Periodic {
            head: head.into(),
            period: period.into(),
        })
    }

    pub fn constant(letter: u8) -> Self {
        Word::periodic(if letter == 0 { "0" } else { "1" }).expect("valid period")
    }

    /// The Fibonacci word, fixed point of `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Self {
        substitution_word("01", "0", "0").expect("growing substitution")
    }

    /// The Thue-Morse word, fixed point of `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        substitution_word("01", "10", "0").expect("growing substitution")
    }

    /// First `n` letters. Finite words fail when `n` exceeds their length.
    pub fn prefix(&self, n: usize) -> Result<Vec<u8>> {
        {
            let cache = self.cache.read().expect("word cache poisoned");
            if cache.len() >= n {
                return Ok(cache[..n].to_vec());
            }
        }
        let target = match self.spec.finite_len() {
            Some(len) => n.max(len.min(n.saturating_mul(2))),
            None => n.max(64),
        };
        let fresh = self
            .spec
            .generate(target)
            .or_else(|_| self.spec.generate(n))?;
        let mut cache = self.cache.write().expect("word cache poisoned");
        if fresh.len() > cache.len() {
            *cache = fresh;
        }
        Ok(cache[..n].to_vec())
    }
}

/// Mechanical word `floor((i+1) s + c) - floor(i s + c)`, exact arithmetic.
pub fn mechanical_word(slope: Slope, intercept: Ratio) -> Result<Word> {
    Word::new(WordSpec::Mechanical { slope, intercept })
}

/// Continued fraction `[0; first, 1, 1, 1, ...]` truncated at `depth`.
pub fn golden_tail_slope(first: u64, depth: usize) -> Slope {
    Slope::ContinuedFraction {
        head: vec![0, first],
        repeat: vec![1],
        depth,
    }
}

/// Fixed point of the substitution `0 -> zero, 1 -> one` from `seed`.
pub fn substitution_word(zero: &str, one: &str, seed: &str) -> Result<Word> {
    Word::new(WordSpec::Substitution {
        zero: zero.into(),
        one: one.into(),
        seed: seed.into(),
    })
}

pub fn complement_word(w: &Word) -> Word {
    Word::new(WordSpec::Complement {
        of: Box::new(w.spec.clone()),
    })
    .expect("complement of a valid word")
}

/// The length-`len` prefix read backwards, as a finite word.
pub fn reverse_star(w: &Word, len: usize) -> Result<Word> {
    let mut p = w.prefix(len)?;
    p.reverse();
    Ok(Word::from_letters(&p))
}

/// Distinct length-`length` blocks of a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSet {
    pub length: usize,
    pub prefix_len: usize,
    pub factors: BTreeSet<String>,
}

impl FactorSet {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, factor: &str) -> bool {
        self.factors.contains(factor)
    }
}

pub fn factors_of(letters: &[u8], n: usize) -> Result<FactorSet> {
    if n > letters.len() {
        return Err(Error::FactorTooLong {
            n,
            len: letters.len(),
        });
    }
    let distinct: BTreeSet<&[u8]> = letters.windows(n.max(1)).collect();
    let factors = if n == 0 {
        std::iter::once(String::new()).collect()
    } else {
        distinct.into_iter().map(to_ascii).collect()
    };
    Ok(FactorSet {
        length: n,
        prefix_len: letters.len(),
        factors,
    })
}

/// Factors of length `n` in the first `len` letters of `w`.
pub fn factors(w: &Word, n: usize, len: usize) -> Result<FactorSet> {
    if n > len {
        return Err(Error::FactorTooLong { n, len });
    }
    factors_of(&w.prefix(len)?, n)
}

/// `p(1..=n_max)`: number of distinct factors of each length in the first
/// `len` letters.
pub fn factor_complexity(w: &Word, len: usize, n_max: usize) -> Result<Vec<usize>> {
    if n_max > len / 2 {
        return Err(Error::Parameter(format!(
            "complexity up to {n_max} needs a prefix of at least {}",
            2 * n_max
        )));
    }
    let p = w.prefix(len)?;
    (1..=n_max)
        .map(|n| Ok(p.windows(n).collect::<BTreeSet<_>>().len()))
        .collect()
}

/// Least window length `m` such that every window of length `m` of the
/// prefix contains every length-`n` factor of the prefix.
///
/// Such an `m` always exists inside a finite prefix (the whole prefix is one
/// window), so it is only reported when the prefix holds at least two
/// disjoint windows of that length, i.e. `2m <= len`.
pub fn recurrence_bound_of(letters: &[u8], n: usize) -> Result<Option<usize>> {
    let len = letters.len();
    if n > len {
        return Err(Error::FactorTooLong { n, len });
    }
    if n == 0 {
        return Ok(Some(0));
    }
    // factor -> (first, last, widest gap requirement)
    let mut seen: HashMap<&[u8], (usize, usize, usize)> = HashMap::new();
    for (p, f) in letters.windows(n).enumerate() {
        seen.entry(f)
            .and_modify(|(_, last, gap)| {
                *gap = (*gap).max(p - *last - 1 + n);
                *last = p;
            })
            .or_insert((p, p, 0));
    }
    let m = seen
        .values()
        .map(|&(first, last, gap)| (first + n).max(gap).max(len - last))
        .max()
        .unwrap_or(n);
    Ok((2 * m <= len).then_some(m))
}

pub fn recurrence_bound(w: &Word, n: usize, len: usize) -> Result<Option<usize>> {
    if n > len {
        return Err(Error::FactorTooLong { n, len });
    }
    recurrence_bound_of(&w.prefix(len)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn factor_examples() {
        let alt = Word::periodic("01").unwrap();
        assert_eq!(factors(&alt, 2, 6).unwrap().factors, set(&["01", "10"]));
        let ones = Word::constant(1);
        assert_eq!(factors(&ones, 3, 10).unwrap().factors, set(&["111"]));
        let fib = Word::fibonacci();
        assert_eq!(
            factors(&fib, 2, 13).unwrap().factors,
            set(&["00", "01", "10"])
        );
        assert_eq!(
            factors(&fib, 5, 4),
            Err(Error::FactorTooLong { n: 5, len: 4 })
        );
    }

    #[test]
    fn mechanical_examples() {
        let half =
            mechanical_word(Slope::Rational(Ratio::new(1, 2).unwrap()), Ratio::ZERO).unwrap();
        assert_eq!(to_ascii(&half.prefix(6).unwrap()), "010101");
        let third =
            mechanical_word(Slope::Rational(Ratio::new(1, 3).unwrap()), Ratio::ZERO).unwrap();
        assert_eq!(to_ascii(&third.prefix(6).unwrap()), "001001");
        assert!(mechanical_word(Slope::Rational(Ratio::new(3, 2).unwrap()), Ratio::ZERO).is_err());
    }

    #[test]
    fn fibonacci_as_mechanical() {
        // With intercept equal to the slope the mechanical word is the
        // characteristic word, which is the Fibonacci word for [0;2,1,1,...].
        let slope = golden_tail_slope(2, DEFAULT_CF_DEPTH);
        let (p, q) = slope.as_fraction().unwrap();
        let p = i64::try_from(p).unwrap();
        let q = i64::try_from(q).unwrap();
        let mech = mechanical_word(slope, Ratio::new(p, q).unwrap()).unwrap();
        assert_eq!(
            mech.prefix(50).unwrap(),
            Word::fibonacci().prefix(50).unwrap()
        );
        // With intercept zero it is 0 followed by the Fibonacci word.
        let lower = mechanical_word(golden_tail_slope(2, DEFAULT_CF_DEPTH), Ratio::ZERO).unwrap();
        assert_eq!(
            lower.prefix(51).unwrap()[1..],
            Word::fibonacci().prefix(50).unwrap()[..]
        );
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            to_ascii(&Word::fibonacci().prefix(13).unwrap()),
            "0100101001001"
        );
        assert_eq!(to_ascii(&Word::thue_morse().prefix(8).unwrap()), "01101001");
        assert_eq!(
            substitution_word("0", "1", "0").unwrap_err(),
            Error::NonGrowingSubstitution
        );
        assert!(substitution_word("10", "0", "0").is_err());
    }

    #[test]
    fn recurrence_examples() {
        let alt = Word::periodic("01").unwrap();
        assert_eq!(recurrence_bound(&alt, 2, 100).unwrap(), Some(3));
        assert_eq!(
            recurrence_bound(&Word::constant(1), 1, 10).unwrap(),
            Some(1)
        );
        let once = Word::eventually_periodic("100", "1").unwrap();
        assert_eq!(recurrence_bound(&once, 2, 1000).unwrap(), None);
    }

    #[test]
    fn flip_and_reverse() {
        let w = Word::explicit("0110").unwrap();
        assert_eq!(to_ascii(&complement_word(&w).prefix(4).unwrap()), "1001");
        assert_eq!(
            to_ascii(&reverse_star(&w, 4).unwrap().prefix(4).unwrap()),
            "0110"
        );
        let w = Word::explicit("100").unwrap();
        assert_eq!(
            to_ascii(&reverse_star(&w, 3).unwrap().prefix(3).unwrap()),
            "001"
        );
        assert!(w.prefix(4).is_err());
    }

    #[test]
    fn complexity_examples() {
        let fib = factor_complexity(&Word::fibonacci(), 200, 10).unwrap();
        assert_eq!(fib, (2..=11).collect::<Vec<_>>());
        assert_eq!(
            factor_complexity(&Word::periodic("01").unwrap(), 40, 8).unwrap(),
            vec![2; 8]
        );
        assert_eq!(
            factor_complexity(&Word::constant(0), 20, 5).unwrap(),
            vec![1; 5]
        );
    }

    #[test]
    fn descriptor_json() {
        let spec = WordSpec::Mechanical {
            slope: golden_tail_slope(2, 30),
            intercept: Ratio::ZERO,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"mechanical\""));
        assert_eq!(serde_json::from_str::<WordSpec>(&text).unwrap(), spec);
    }
}
