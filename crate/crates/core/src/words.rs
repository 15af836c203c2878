//! Finite words and canonical eventually periodic infinite words over the
//! alphabet `X = {0, …, d-1}`.
//!
//! Infinite words are stored as a preperiod `u` and a nonempty period `v`
//! denoting `u v v v …`. The stored form is canonical: `v` is primitive
//! (not a proper power) and either `u` is empty or the last letter of `u`
//! differs from the last letter of `v`. Canonical forms are unique, so
//! structural equality decides equality of infinite words.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

fn check_letters(d: u32, letters: &[u32]) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {d} < 2")));
    }
    if let Some(&l) = letters.iter().find(|&&l| l >= d) {
        return Err(Error::InvalidParameter(format!(
            "letter {l} out of range for alphabet size {d}"
        )));
    }
    Ok(())
}

fn fmt_letters(d: u32, letters: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if d <= 10 {
        for l in letters {
            write!(f, "{l}")?;
        }
    } else {
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
    }
    Ok(())
}

fn parse_letters(d: u32, s: &str) -> Result<Vec<u32>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut letters = Vec::new();
    if d <= 10 {
        for c in s.chars() {
            let l = c
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("invalid digit `{c}`")))?;
            letters.push(l);
        }
    } else if !s.is_empty() {
        for part in s.split(',') {
            let l: u32 = part
                .parse()
                .map_err(|_| Error::Parse(format!("invalid letter `{part}`")))?;
            letters.push(l);
        }
    }
    check_letters(d, &letters)?;
    Ok(letters)
}

/// A finite word over `{0, …, d-1}`; vertex currency of the level graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    d: u32,
    letters: Vec<u32>,
}

impl FiniteWord {
    pub fn new(d: u32, letters: Vec<u32>) -> Result<Self> {
        check_letters(d, &letters)?;
        Ok(FiniteWord { d, letters })
    }

    pub fn empty(d: u32) -> Self {
        FiniteWord { d, letters: Vec::new() }
    }

    /// Parses the textual form: contiguous digits for `d <= 10`,
    /// comma-separated otherwise.
    pub fn parse(d: u32, s: &str) -> Result<Self> {
        Ok(FiniteWord { d, letters: parse_letters(d, s)? })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn letter(&self, n: usize) -> u32 {
        self.letters[n]
    }

    /// New word with `letter` appended at the end.
    pub fn appended(&self, letter: u32) -> Result<Self> {
        let mut letters = self.letters.clone();
        letters.push(letter);
        FiniteWord::new(self.d, letters)
    }

    /// The word `letter^count`, e.g. the spine prefix `(d-1)^count`.
    pub fn repeated(d: u32, letter: u32, count: usize) -> Result<Self> {
        FiniteWord::new(d, vec![letter; count])
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(self.d, &self.letters, f)
    }
}

/// All words of a given length in lexicographic order.
pub fn words_of_length(d: u32, n: usize) -> Vec<FiniteWord> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    loop {
        out.push(FiniteWord { d, letters: current.clone() });
        // odometer increment, most significant letter first
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < d {
                break;
            }
            current[i] = 0;
        }
    }
}

/// A canonical eventually periodic infinite word `u v v v …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPoint {
    d: u32,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

/// Shortest prefix of `v` that `v` is a power of.
fn primitive_root(v: &[u32]) -> Vec<u32> {
    let n = v.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && v.iter().enumerate().all(|(i, &l)| l == v[i % p]) {
            return v[..p].to_vec();
        }
    }
    unreachable!("every nonempty word has a primitive root")
}

impl BoundaryPoint {
    /// Builds the canonical form of `u v v v …`.
    ///
    /// The period is reduced to its primitive root, then trailing letters of
    /// the preperiod equal to the last period letter are absorbed by rotating
    /// the period right. The result is the unique canonical representative.
    pub fn new(d: u32, preperiod: &[u32], period: &[u32]) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameter("empty period".into()));
        }
        check_letters(d, preperiod)?;
        check_letters(d, period)?;
        let mut u = preperiod.to_vec();
        let mut v = primitive_root(period);
        while let Some(&last) = u.last() {
            if last != *v.last().expect("period nonempty") {
                break;
            }
            u.pop();
            v.rotate_right(1);
        }
        Ok(BoundaryPoint { d, preperiod: u, period: v })
    }

    /// The purely periodic word `letter letter …`.
    pub fn constant(d: u32, letter: u32) -> Result<Self> {
        BoundaryPoint::new(d, &[], &[letter])
    }

    /// The rightmost ray `(d-1)^∞`, fixed by every spinal generator.
    pub fn spine(d: u32) -> Self {
        BoundaryPoint::constant(d, d - 1).expect("d >= 2 checked by callers")
    }

    /// Parses `u(v)`, e.g. `120(21)`, with the letter conventions of
    /// [`FiniteWord::parse`].
    pub fn parse(d: u32, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing `(` in boundary point `{s}`")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("missing `)` in boundary point `{s}`")));
        }
        let u = parse_letters(d, &s[..open])?;
        let v = parse_letters(d, &s[open + 1..s.len() - 1])?;
        if v.is_empty() {
            return Err(Error::Parse(format!("empty period in boundary point `{s}`")));
        }
        BoundaryPoint::new(d, &u, &v)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// The letter at position `n`.
    pub fn letter(&self, n: usize) -> u32 {
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    /// First `n` letters as a finite word.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        let letters = (0..n).map(|i| self.letter(i)).collect();
        FiniteWord { d: self.d, letters }
    }

    /// Canonical form of the `k`-fold shift (drop the first `k` letters).
    pub fn shift(&self, k: usize) -> Self {
        if k <= self.preperiod.len() {
            BoundaryPoint::new(self.d, &self.preperiod[k..], &self.period)
                .expect("letters already validated")
        } else {
            let r = (k - self.preperiod.len()) % self.period.len();
            let mut v = self.period.clone();
            v.rotate_left(r);
            BoundaryPoint::new(self.d, &[], &v).expect("letters already validated")
        }
    }

    /// New point with the letter at position `n` replaced.
    pub fn with_letter(&self, n: usize, letter: u32) -> Result<Self> {
        let mut prefix: Vec<u32> = (0..=n).map(|i| self.letter(i)).collect();
        prefix[n] = letter;
        let tail = self.shift(n + 1);
        let mut u = prefix;
        u.extend_from_slice(&tail.preperiod);
        BoundaryPoint::new(self.d, &u, &tail.period)
    }

    /// New point with `letter` prepended.
    pub fn prepended(&self, letter: u32) -> Result<Self> {
        let mut u = vec![letter];
        u.extend_from_slice(&self.preperiod);
        BoundaryPoint::new(self.d, &u, &self.period)
    }

    /// New point with a whole finite word prepended.
    pub fn prepended_word(&self, w: &FiniteWord) -> Result<Self> {
        if w.d != self.d {
            return Err(Error::InvalidParameter("alphabet size mismatch".into()));
        }
        let mut u = w.letters.clone();
        u.extend_from_slice(&self.preperiod);
        BoundaryPoint::new(self.d, &u, &self.period)
    }

    /// First position whose letter differs from `d-1`, or `None` for the
    /// spine `(d-1)^∞`. Spinal generators read this position to decide
    /// where, if anywhere, they act.
    pub fn first_non_spine_index(&self) -> Option<usize> {
        let horizon = self.preperiod.len() + self.period.len();
        (0..horizon).find(|&i| self.letter(i) != self.d - 1)
    }

    /// Minimal `s` with `σ^s(ξ) = σ^s(η)`, or `None` if the points are not
    /// cofinal. `0` means the points are equal; a positive value `R` implies
    /// the letters at `R-1` differ.
    pub fn discrepancy(&self, other: &Self) -> Option<usize> {
        if self.d != other.d {
            return None;
        }
        let k = self.preperiod.len().max(other.preperiod.len());
        let l = self.period.len().lcm(&other.period.len());
        // past position k both words are purely periodic, so agreement on one
        // combined period certifies equality of the shifted tails
        if (k..k + l).any(|n| self.letter(n) != other.letter(n)) {
            return None;
        }
        let mut r = k;
        while r > 0 && self.letter(r - 1) == other.letter(r - 1) {
            r -= 1;
        }
        Some(r)
    }

    pub fn is_cofinal_with(&self, other: &Self) -> bool {
        self.discrepancy(other).is_some()
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(self.d, &self.preperiod, f)?;
        write!(f, "(")?;
        fmt_letters(self.d, &self.period, f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(d: u32, s: &str) -> BoundaryPoint {
        BoundaryPoint::parse(d, s).unwrap()
    }

    #[test]
    fn canonical_form_collapses_constant_words() {
        let p = BoundaryPoint::new(3, &[0], &[0, 0]).unwrap();
        assert_eq!(p.preperiod(), &[] as &[u32]);
        assert_eq!(p.period(), &[0]);
    }

    #[test]
    fn canonical_form_takes_primitive_root() {
        let p = BoundaryPoint::new(3, &[], &[2, 1, 2, 1]).unwrap();
        assert_eq!(p.preperiod(), &[] as &[u32]);
        assert_eq!(p.period(), &[2, 1]);
    }

    #[test]
    fn canonical_form_absorbs_trailing_preperiod() {
        let p = BoundaryPoint::new(3, &[2, 1], &[1]).unwrap();
        assert_eq!(p.preperiod(), &[2]);
        assert_eq!(p.period(), &[1]);
    }

    #[test]
    fn letter_reads_through_the_period() {
        assert_eq!(pt(2, "(10)").letter(3), 0);
        assert_eq!(pt(3, "2(1)").letter(0), 2);
        assert_eq!(pt(3, "2(1)").letter(5), 1);
    }

    #[test]
    fn shift_drops_letters() {
        assert_eq!(pt(2, "0(10)").shift(1), pt(2, "(10)"));
        assert_eq!(pt(2, "(10)").shift(2), pt(2, "(10)"));
        assert_eq!(pt(2, "(10)").shift(1), pt(2, "(01)"));
    }

    #[test]
    fn discrepancy_examples() {
        let xi = pt(3, "(0)");
        assert_eq!(xi.discrepancy(&xi), Some(0));
        assert_eq!(pt(3, "(0)").discrepancy(&pt(3, "12(0)")), Some(2));
        assert_eq!(pt(3, "(0)").discrepancy(&pt(3, "(1)")), None);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["(0)", "120(21)", "2(1)", "(10)"] {
            let p = pt(3, s);
            assert_eq!(p, BoundaryPoint::parse(3, &p.to_string()).unwrap());
        }
        // d > 10 uses comma-separated letters
        let p = BoundaryPoint::new(12, &[0, 11, 3], &[2, 1]).unwrap();
        assert_eq!(p.to_string(), "0,11,3(2,1)");
        assert_eq!(p, BoundaryPoint::parse(12, &p.to_string()).unwrap());
    }

    #[test]
    fn words_of_length_is_lexicographic_and_complete() {
        let ws = words_of_length(3, 2);
        assert_eq!(ws.len(), 9);
        assert_eq!(ws[0].letters(), &[0, 0]);
        assert_eq!(ws[1].letters(), &[0, 1]);
        assert_eq!(ws[8].letters(), &[2, 2]);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
    }

    fn word_strategy(d: u32, max_len: usize, min_len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..d, min_len..=max_len)
    }

    proptest! {
        #[test]
        fn canonicalize_decides_equality(
            u1 in word_strategy(3, 4, 0), v1 in word_strategy(3, 4, 1),
            u2 in word_strategy(3, 4, 0), v2 in word_strategy(3, 4, 1),
        ) {
            let p1 = BoundaryPoint::new(3, &u1, &v1).unwrap();
            let p2 = BoundaryPoint::new(3, &u2, &v2).unwrap();
            // letter-by-letter comparison to an exact horizon is the oracle
            let letter = |u: &[u32], v: &[u32], n: usize| {
                if n < u.len() { u[n] } else { v[(n - u.len()) % v.len()] }
            };
            let horizon = u1.len().max(u2.len()) + 2 * v1.len().lcm(&v2.len());
            let same = (0..horizon).all(|n| letter(&u1, &v1, n) == letter(&u2, &v2, n));
            prop_assert_eq!(same, p1 == p2);
        }

        #[test]
        fn canonicalize_is_idempotent(u in word_strategy(4, 5, 0), v in word_strategy(4, 5, 1)) {
            let p = BoundaryPoint::new(4, &u, &v).unwrap();
            let again = BoundaryPoint::new(4, p.preperiod(), p.period()).unwrap();
            prop_assert_eq!(p, again);
        }

        #[test]
        fn shift_composes(
            u in word_strategy(3, 4, 0), v in word_strategy(3, 4, 1),
            a in 0usize..6, b in 0usize..6,
        ) {
            let p = BoundaryPoint::new(3, &u, &v).unwrap();
            prop_assert_eq!(p.shift(a).shift(b), p.shift(a + b));
        }

        #[test]
        fn shift_agrees_with_letters(
            u in word_strategy(3, 4, 0), v in word_strategy(3, 4, 1),
            k in 0usize..8,
        ) {
            let p = BoundaryPoint::new(3, &u, &v).unwrap();
            let s = p.shift(k);
            for n in 0..12 {
                prop_assert_eq!(s.letter(n), p.letter(n + k));
            }
        }

        #[test]
        fn discrepancy_laws(
            u1 in word_strategy(3, 3, 0), v1 in word_strategy(3, 3, 1),
            u2 in word_strategy(3, 3, 0), v2 in word_strategy(3, 3, 1),
        ) {
            let p1 = BoundaryPoint::new(3, &u1, &v1).unwrap();
            let p2 = BoundaryPoint::new(3, &u2, &v2).unwrap();
            let r12 = p1.discrepancy(&p2);
            prop_assert_eq!(r12, p2.discrepancy(&p1));
            if let Some(r) = r12 {
                prop_assert_eq!(p1.shift(r), p2.shift(r));
                prop_assert_eq!(r == 0, p1 == p2);
                if r > 0 {
                    prop_assert_ne!(p1.letter(r - 1), p2.letter(r - 1));
                }
            }
        }
    }
}
