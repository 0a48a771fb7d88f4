//! Codes, prefix/suffix systems, and their verification.
//!
//! Overlap checks always range over ordered pairs `(u, v)` with `u = v`
//! allowed. A code fails at `t` when the `t`-prefix of some `u` equals the
//! `t`-suffix of some `v`.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::Bitset;
use crate::counting::SymbolicSize;
use crate::error::{capacity, domain, Error, Result};
use crate::mis::CliqueSolver;
use crate::word::{low_mask, overlaps_in_range, prefix_bits, suffix_bits, BitWord, MAX_WORD_LEN};

/// Largest code [`expand_system`] will materialize.
pub const MAX_EXPANDED_WORDS: u64 = 1 << 26;
/// Largest word length accepted by [`brute_force_max_code`].
pub const BRUTE_FORCE_MAX_N: u32 = 10;

/// A set of distinct binary words sharing one length `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Code {
    n: u32,
    // sorted, distinct, each < 2^n
    words: Vec<u64>,
}

impl Code {
    /// An empty code of length `n`.
    pub fn empty(n: u32) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, words: Vec::new() })
    }

    /// Builds a code, rejecting words of the wrong length and duplicates.
    pub fn from_words(n: u32, words: impl IntoIterator<Item = BitWord>) -> Result<Self> {
        check_n(n)?;
        let mut out = Vec::new();
        for w in words {
            if w.len() != n {
                return Err(domain(format!("word {w} has length {}, expected {n}", w.len())));
            }
            out.push(w.value());
        }
        Self::from_values(n, out)
    }

    pub(crate) fn from_values(n: u32, mut words: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if let Some(&bad) = words.iter().find(|&&w| w & !low_mask(n) != 0) {
            return Err(domain(format!("value {bad} does not fit in {n} bits")));
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(domain(format!(
                "duplicate word {}",
                BitWord::truncating(pair[0], n)
            )));
        }
        Ok(Self { n, words })
    }

    // Caller guarantees sorted, distinct, in-range values.
    pub(crate) fn from_sorted_unchecked(n: u32, words: Vec<u64>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Self { n, words }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        w.len() == self.n && self.words.binary_search(&w.value()).is_ok()
    }

    /// Words in ascending numeric order.
    pub fn words(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.words.iter().map(move |&v| BitWord::truncating(v, self.n))
    }

    pub fn values(&self) -> &[u64] {
        &self.words
    }

    /// Parses the codebook text format: an optional `# n=<int> q=2` header,
    /// then one word per line. Blank lines and other `#` lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<u32> = None;
        let mut words = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(header_n) = parse_header(comment, line_no)? {
                    if words.is_empty() && n.is_none() {
                        n = Some(header_n);
                    } else if n != Some(header_n) {
                        return Err(parse_err(line_no, "conflicting length header"));
                    }
                }
                continue;
            }
            let w: BitWord = line.parse().map_err(|e| match e {
                Error::Parse { message, .. } => parse_err(line_no, message),
                other => parse_err(line_no, other.to_string()),
            })?;
            match n {
                None => n = Some(w.len()),
                Some(expected) if expected != w.len() => {
                    return Err(parse_err(
                        line_no,
                        format!("word has length {}, expected {expected}", w.len()),
                    ))
                }
                _ => {}
            }
            words.push((line_no, w.value()));
        }
        let n = n.ok_or_else(|| parse_err(0, "empty codebook without a length header"))?;
        let mut seen = HashMap::with_capacity(words.len());
        for &(line_no, v) in &words {
            if let Some(first) = seen.insert(v, line_no) {
                return Err(parse_err(
                    line_no,
                    format!("duplicate of the word on line {first}"),
                ));
            }
        }
        Self::from_values(n, words.into_iter().map(|(_, v)| v).collect())
    }

    /// Renders the codebook text format, header included.
    pub fn to_text(&self) -> String {
        let mut out = format!("# n={} q=2\n", self.n);
        for w in self.words() {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Recognizes `n=<int> q=<int>` inside a comment. Other comments yield `None`.
fn parse_header(comment: &str, line_no: usize) -> Result<Option<u32>> {
    let mut n = None;
    let mut q = None;
    for token in comment.split_whitespace() {
        if let Some(v) = token.strip_prefix("n=") {
            n = Some(v.parse::<u32>().map_err(|_| parse_err(line_no, "bad n in header"))?);
        } else if let Some(v) = token.strip_prefix("q=") {
            q = Some(v.parse::<u32>().map_err(|_| parse_err(line_no, "bad q in header"))?);
        }
    }
    match (n, q) {
        (Some(n), Some(2)) => {
            check_n(n).map_err(|e| parse_err(line_no, e.to_string()))?;
            Ok(Some(n))
        }
        (Some(_), Some(q)) => Err(parse_err(line_no, format!("only q=2 is supported, got q={q}"))),
        _ => Ok(None),
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_WORD_LEN {
        return Err(domain(format!("code length {n} outside 1..={MAX_WORD_LEN}")));
    }
    Ok(())
}

/// A `t`-overlap between two codewords: the `t`-prefix of `u` equals the
/// `t`-suffix of `v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OverlapWitness {
    pub u: BitWord,
    pub v: BitWord,
    pub t: u32,
}

impl fmt::Display for OverlapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-prefix of {} equals {}-suffix of {}", self.t, self.u, self.t, self.v)
    }
}

fn check_t_range(n: u32, t1: u32, t2: u32) -> Result<()> {
    if t1 == 0 || t1 > t2 || t2 >= n {
        return Err(domain(format!(
            "need 1 <= t1 <= t2 <= n-1, got t1 = {t1}, t2 = {t2}, n = {n}"
        )));
    }
    Ok(())
}

/// The smallest `(t, u, v)` overlap with `t1 <= t <= t2`, if any.
pub fn find_overlap(code: &Code, t1: u32, t2: u32) -> Result<Option<OverlapWitness>> {
    check_t_range(code.n, t1, t2)?;
    let n = code.n;
    let mut by_suffix: HashMap<u64, u64> = HashMap::with_capacity(code.len());
    for t in t1..=t2 {
        by_suffix.clear();
        // words ascend, so the first insert per suffix is the smallest v
        for &v in &code.words {
            by_suffix.entry(suffix_bits(v, t)).or_insert(v);
        }
        for &u in &code.words {
            if let Some(&v) = by_suffix.get(&prefix_bits(u, n, t)) {
                return Ok(Some(OverlapWitness {
                    u: BitWord::truncating(u, n),
                    v: BitWord::truncating(v, n),
                    t,
                }));
            }
        }
    }
    Ok(None)
}

/// True iff no ordered pair of codewords has a `t`-overlap for `t1 <= t <= t2`.
pub fn is_overlap_free(code: &Code, t1: u32, t2: u32) -> Result<bool> {
    Ok(find_overlap(code, t1, t2)?.is_none())
}

/// Prefix set `P` and suffix set `S` of `k`-bit words. Codewords are
/// `p || x || s` with arbitrary middle `x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrefixSuffixSystem {
    k: u32,
    prefixes: Vec<u64>,
    suffixes: Vec<u64>,
}

/// Outcome of [`validate_system`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SystemCheck {
    Valid,
    /// `word` is both a `t`-prefix of some member of `P` and a `t`-suffix of
    /// some member of `S`. Reported for the smallest `t`, then smallest word.
    Collision { t: u32, word: BitWord },
}

impl SystemCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, SystemCheck::Valid)
    }
}

impl PrefixSuffixSystem {
    pub fn new(
        k: u32,
        prefixes: impl IntoIterator<Item = BitWord>,
        suffixes: impl IntoIterator<Item = BitWord>,
    ) -> Result<Self> {
        if k == 0 || k > MAX_WORD_LEN / 2 {
            return Err(domain(format!("k = {k} outside 1..={}", MAX_WORD_LEN / 2)));
        }
        let collect = |ws: &mut dyn Iterator<Item = BitWord>| -> Result<Vec<u64>> {
            let mut v = Vec::new();
            for w in ws {
                if w.len() != k {
                    return Err(domain(format!("{w} is not a {k}-bit word")));
                }
                v.push(w.value());
            }
            v.sort_unstable();
            v.dedup();
            Ok(v)
        };
        let prefixes = collect(&mut prefixes.into_iter())?;
        let suffixes = collect(&mut suffixes.into_iter())?;
        Ok(Self { k, prefixes, suffixes })
    }

    /// Same as [`new`](Self::new) from integer values (big-endian `k`-bit).
    pub fn from_values(k: u32, prefixes: &[u64], suffixes: &[u64]) -> Result<Self> {
        let to_words = |vs: &[u64]| -> Result<Vec<BitWord>> {
            vs.iter().map(|&v| BitWord::from_integer(v, k)).collect()
        };
        Self::new(k, to_words(prefixes)?, to_words(suffixes)?)
    }

    // Caller guarantees sorted distinct k-bit values.
    pub(crate) fn from_sorted_unchecked(k: u32, prefixes: Vec<u64>, suffixes: Vec<u64>) -> Self {
        Self { k, prefixes, suffixes }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn prefix_values(&self) -> &[u64] {
        &self.prefixes
    }

    pub fn suffix_values(&self) -> &[u64] {
        &self.suffixes
    }

    pub fn prefixes(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.prefixes.iter().map(move |&v| BitWord::truncating(v, self.k))
    }

    pub fn suffixes(&self) -> impl Iterator<Item = BitWord> + '_ {
        self.suffixes.iter().map(move |&v| BitWord::truncating(v, self.k))
    }
}

/// Checks `P|_t ∩ S|_t = ∅` for every `1 <= t <= k`.
pub fn validate_system(sys: &PrefixSuffixSystem) -> SystemCheck {
    let k = sys.k;
    for t in 1..=k {
        let mut heads: Vec<u64> = sys.prefixes.iter().map(|&p| prefix_bits(p, k, t)).collect();
        heads.sort_unstable();
        heads.dedup();
        let mut tails: Vec<u64> = sys.suffixes.iter().map(|&s| suffix_bits(s, t)).collect();
        tails.sort_unstable();
        tails.dedup();
        let (mut i, mut j) = (0, 0);
        while i < heads.len() && j < tails.len() {
            match heads[i].cmp(&tails[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    return SystemCheck::Collision { t, word: BitWord::truncating(heads[i], t) }
                }
            }
        }
    }
    SystemCheck::Valid
}

/// All words `p || x || s` of length `n`, `p ∈ P`, `s ∈ S`, `x` arbitrary.
pub fn expand_system(sys: &PrefixSuffixSystem, n: u32) -> Result<Code> {
    let k = sys.k;
    if n < 2 * k {
        return Err(domain(format!("need n >= 2k, got n = {n}, k = {k}")));
    }
    if n > MAX_WORD_LEN {
        return Err(capacity(format!(
            "n = {n} exceeds {MAX_WORD_LEN}; use symbolic_size for the count"
        )));
    }
    let middle = n - 2 * k;
    let total = (sys.prefixes.len() as u128 * sys.suffixes.len() as u128) << middle;
    if total > u128::from(MAX_EXPANDED_WORDS) {
        return Err(capacity(format!(
            "expansion has {total} words, above {MAX_EXPANDED_WORDS}; use symbolic_size"
        )));
    }
    let mut words = Vec::with_capacity(total as usize);
    // p, x, s all ascend, and p occupies the high bits, so output is sorted
    for &p in &sys.prefixes {
        for x in 0..(1u64 << middle) {
            for &s in &sys.suffixes {
                words.push((((p << middle) | x) << k) | s);
            }
        }
    }
    Ok(Code::from_sorted_unchecked(n, words))
}

/// `|P| · |S| × 2^(n - 2k)`.
pub fn symbolic_size(sys: &PrefixSuffixSystem) -> SymbolicSize {
    SymbolicSize::new(sys.prefixes.len() as u64 * sys.suffixes.len() as u64, 2 * sys.k)
}

/// Exact maximum `(t1, t2)`-overlap-free code of length `n <= 10`, found as a
/// maximum independent set of the word conflict graph.
///
/// Words that overlap themselves are dropped before the search. With
/// `canonical`, the lexicographically smallest optimum is returned.
pub fn brute_force_max_code(n: u32, t1: u32, t2: u32, canonical: bool) -> Result<Code> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(capacity(format!(
            "brute-force search is limited to n <= {BRUTE_FORCE_MAX_N}"
        )));
    }
    check_n(n)?;
    check_t_range(n, t1, t2)?;
    let vertices: Vec<u64> = (0..1u64 << n)
        .filter(|&w| !overlaps_in_range(w, w, n, t1, t2))
        .collect();
    let count = vertices.len();
    let compatible: Vec<Bitset> = vertices
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let mut row = Bitset::new(count);
            for (j, &v) in vertices.iter().enumerate() {
                if i != j
                    && !overlaps_in_range(u, v, n, t1, t2)
                    && !overlaps_in_range(v, u, n, t1, t2)
                {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let solver = CliqueSolver::new(compatible);
    let chosen = if canonical {
        solver.canonical_max_clique()
    } else {
        solver.max_clique()
    };
    let words = chosen.into_iter().map(|i| vertices[i]).collect();
    Code::from_values(n, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn code(ws: &[&str]) -> Code {
        Code::from_words(ws[0].len() as u32, ws.iter().map(|s| w(s))).unwrap()
    }

    fn sys(k: u32, p: &[&str], s: &[&str]) -> PrefixSuffixSystem {
        PrefixSuffixSystem::new(k, p.iter().map(|x| w(x)), s.iter().map(|x| w(x))).unwrap()
    }

    #[test]
    fn overlap_free_examples() {
        assert!(is_overlap_free(&code(&["0011", "0111"]), 1, 2).unwrap());
        let bad = find_overlap(&code(&["0101"]), 1, 2).unwrap().unwrap();
        assert_eq!(bad, OverlapWitness { u: w("0101"), v: w("0101"), t: 2 });
        assert!(is_overlap_free(&Code::empty(4).unwrap(), 1, 3).unwrap());
    }

    #[test]
    fn witness_is_smallest_triple() {
        // 0110 overlaps 1010 at t=1 (0 vs 0) and itself at t=1 as well
        let c = code(&["0110", "1010", "1100"]);
        let wit = find_overlap(&c, 1, 3).unwrap().unwrap();
        assert_eq!(wit.t, 1);
        assert_eq!(wit.u, w("0110"));
        assert_eq!(wit.v, w("0110"));
    }

    #[test]
    fn overlap_range_errors() {
        let c = code(&["0011"]);
        assert!(is_overlap_free(&c, 0, 1).is_err());
        assert!(is_overlap_free(&c, 2, 1).is_err());
        assert!(is_overlap_free(&c, 1, 4).is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(validate_system(&sys(2, &["00", "01"], &["11"])).is_valid());
        assert_eq!(
            validate_system(&sys(2, &["00", "01"], &["01", "11"])),
            SystemCheck::Collision { t: 2, word: w("01") }
        );
        assert!(validate_system(&sys(1, &["0"], &["1"])).is_valid());
    }

    #[test]
    fn expand_examples() {
        let c = expand_system(&sys(2, &["00", "01"], &["11"]), 5).unwrap();
        let got: Vec<String> = c.words().map(|w| w.to_string()).collect();
        assert_eq!(got, ["00011", "00111", "01011", "01111"]);
        let c = expand_system(&sys(1, &["0"], &["1"]), 2).unwrap();
        assert_eq!(c.values(), &[0b01]);
        let s3 = sys(3, &["000", "001", "010"], &["011", "111"]);
        let c = expand_system(&s3, 6).unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_overlap_free(&c, 1, 3).unwrap());
    }

    #[test]
    fn expand_errors() {
        let s = sys(3, &["000"], &["111"]);
        assert!(matches!(expand_system(&s, 5), Err(Error::Domain(_))));
        assert!(matches!(expand_system(&s, 65), Err(Error::Capacity(_))));
        let wide = PrefixSuffixSystem::from_values(1, &[0], &[1]).unwrap();
        assert!(matches!(expand_system(&wide, 40), Err(Error::Capacity(_))));
    }

    #[test]
    fn symbolic_sizes() {
        let s = PrefixSuffixSystem::from_values(4, &[0, 1, 2, 4, 5], &[3, 11, 7, 15]).unwrap();
        assert_eq!(symbolic_size(&s), SymbolicSize::new(20u32, 8));
        let empty = PrefixSuffixSystem::from_values(4, &[], &[3]).unwrap();
        assert_eq!(symbolic_size(&empty).coefficient(), &0u32.into());
        assert_eq!(symbolic_size(&empty).offset(), 8);
    }

    #[test]
    fn brute_force_small() {
        let c = brute_force_max_code(4, 1, 2, true).unwrap();
        assert_eq!(c.len(), 2);
        assert!(is_overlap_free(&c, 1, 2).unwrap());
        let c = brute_force_max_code(6, 1, 3, false).unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_overlap_free(&c, 1, 3).unwrap());
        assert!(matches!(brute_force_max_code(11, 1, 2, false), Err(Error::Capacity(_))));
        assert!(brute_force_max_code(4, 1, 4, false).is_err());
    }

    #[test]
    fn codebook_text_round_trip() {
        let c = code(&["0011", "0111"]);
        let text = c.to_text();
        assert_eq!(text, "# n=4 q=2\n0011\n0111\n");
        assert_eq!(Code::parse(&text).unwrap(), c);
        let loose = "\n# a comment\n0111\n\n0011\n";
        assert_eq!(Code::parse(loose).unwrap(), c);
        assert_eq!(Code::parse("# n=7 q=2\n").unwrap(), Code::empty(7).unwrap());
    }

    #[test]
    fn codebook_parse_errors() {
        assert!(matches!(Code::parse("0011\n0x11\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Code::parse("0011\n011\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Code::parse("# n=5 q=2\n0011\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Code::parse("0011\n0011\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Code::parse("# n=4 q=3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(Code::parse("").is_err());
    }
}
