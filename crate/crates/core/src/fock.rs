//! Occupation bookkeeping.
//!
//! An [`Occupation`] is the second-quantized label of an *n*-boson, *m*-mode
//! state: the number of bosons in each mode. A [`ModeWord`] is the
//! first-quantized label, assigning a mode to each particle; many words share
//! one occupation, their *type*. A [`SystemLabelOccupation`] counts bosons
//! per (System mode, Label mode) pair and flattens onto an occupation over
//! `m * d` modes.
//!
//! Modes are 0-based everywhere in code. Canonical order of occupations is
//! lexicographically descending on the counts vector, so `(n, 0, ..., 0)`
//! comes first and `(0, ..., 0, n)` last.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest boson number for which exact factorial/binomial bookkeeping is
/// supported.
pub const MAX_EXACT_BOSONS: usize = 20;

/// Per-mode boson counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Occupation(Vec<usize>);

impl Occupation {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::input("an occupation needs at least one mode"));
        }
        Ok(Occupation(counts))
    }

    /// The vacuum over `modes` modes.
    pub fn vacuum(modes: usize) -> Result<Self> {
        Self::new(vec![0; modes])
    }

    /// Parse a comma-separated list of counts such as `"1,1,0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let counts = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::input(format!("bad occupation entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(counts)
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn bosons(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, mode: usize) -> usize {
        self.0[mode]
    }

    /// No mode holds more than one boson.
    pub fn is_collision_free(&self) -> bool {
        self.0.iter().all(|&c| c <= 1)
    }

    /// The mode-ascending word of this occupation, e.g. `(1,2,0)` gives
    /// `(0,1,1)`.
    pub fn canonical_word(&self) -> ModeWord {
        let letters = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(mode, &c)| std::iter::repeat_n(mode, c))
            .collect();
        ModeWord {
            letters,
            modes: self.modes(),
        }
    }

    /// `prod_i counts[i]!` as a float.
    pub fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&c| factorial_f64(c)).product()
    }
}

impl TryFrom<Vec<usize>> for Occupation {
    type Error = Error;

    fn try_from(counts: Vec<usize>) -> Result<Self> {
        Occupation::new(counts)
    }
}

impl From<Occupation> for Vec<usize> {
    fn from(o: Occupation) -> Self {
        o.0
    }
}

impl std::fmt::Display for Occupation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Assignment of a mode to each particle. Letters are 0-based modes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeWord {
    letters: Vec<usize>,
    modes: usize,
}

impl ModeWord {
    pub fn new(letters: Vec<usize>, modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::input("a mode word needs at least one mode"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l >= modes) {
            return Err(Error::input(format!(
                "letter {bad} out of range for {modes} modes"
            )));
        }
        Ok(ModeWord { letters, modes })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_collision_free(&self) -> bool {
        let mut seen = vec![false; self.modes];
        self.letters
            .iter()
            .all(|&l| !std::mem::replace(&mut seen[l], true))
    }
}

/// Type (occupation) of a word of 0-based letters over `m` modes.
pub fn type_of(letters: &[usize], m: usize) -> Result<Occupation> {
    let word = ModeWord::new(letters.to_vec(), m)?;
    Ok(type_of_word(&word))
}

pub fn type_of_word(word: &ModeWord) -> Occupation {
    let mut counts = vec![0; word.modes];
    for &l in &word.letters {
        counts[l] += 1;
    }
    Occupation(counts)
}

/// Number of words of type `s`: `n! / prod_i s_i!`.
pub fn multiplicity_of_type(s: &Occupation) -> Result<u128> {
    let n = s.bosons();
    let mut total = factorial(n)?;
    for &c in s.counts() {
        total /= factorial(c)?;
    }
    Ok(total)
}

/// Exact `n!`, rejecting `n > MAX_EXACT_BOSONS`.
pub fn factorial(n: usize) -> Result<u128> {
    if n > MAX_EXACT_BOSONS {
        return Err(Error::size("exact factorial argument", n as u128, MAX_EXACT_BOSONS as u128));
    }
    Ok((1..=n as u128).product())
}

pub(crate) fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Exact binomial coefficient; `None` on `u128` overflow.
pub fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        let num = n - i;
        let den = i + 1;
        let g = gcd(acc, den);
        acc = (acc / g).checked_mul(num / (den / g))?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Number of `n`-boson occupations of `m` modes, `C(m+n-1, n)`.
pub fn basis_size(m: usize, n: usize) -> Result<u128> {
    if m == 0 {
        return Err(Error::input("number of modes must be positive"));
    }
    binomial((m + n - 1) as u128, n as u128)
        .ok_or_else(|| Error::size("basis size", u128::MAX, u128::MAX))
}

/// All `n`-boson occupations of `m` modes in canonical order.
pub fn enumerate_occupations(m: usize, n: usize) -> Result<Vec<Occupation>> {
    let size = basis_size(m, n)?;
    let size = usize::try_from(size).map_err(|_| Error::size("basis size", size, usize::MAX as u128))?;
    let mut out = Vec::with_capacity(size);
    let cap = vec![n; m];
    bounded_compositions(&cap, n, &mut out);
    debug_assert_eq!(out.len(), size);
    Ok(out)
}

/// All `n`-boson occupations `s` with `s_i <= s0_i`, in canonical order.
pub fn consistent_suboccupations(s0: &Occupation, n: usize) -> Result<Vec<Occupation>> {
    if n > s0.bosons() {
        return Err(Error::input(format!(
            "cannot keep {n} bosons out of {}",
            s0.bosons()
        )));
    }
    let mut out = Vec::new();
    bounded_compositions(s0.counts(), n, &mut out);
    Ok(out)
}

// Lexicographically descending enumeration of count vectors bounded
// entrywise by `cap` and summing to `total`.
fn bounded_compositions(cap: &[usize], total: usize, out: &mut Vec<Occupation>) {
    let m = cap.len();
    // suffix_cap[i] = sum of cap[i..]
    let mut suffix_cap = vec![0usize; m + 1];
    for i in (0..m).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + cap[i];
    }
    if suffix_cap[0] < total {
        return;
    }
    let mut counts = vec![0usize; m];
    fn rec(
        i: usize,
        remaining: usize,
        cap: &[usize],
        suffix_cap: &[usize],
        counts: &mut Vec<usize>,
        out: &mut Vec<Occupation>,
    ) {
        let m = cap.len();
        if i == m - 1 {
            counts[i] = remaining;
            out.push(Occupation(counts.clone()));
            return;
        }
        let hi = remaining.min(cap[i]);
        let lo = remaining.saturating_sub(suffix_cap[i + 1]);
        for c in (lo..=hi).rev() {
            counts[i] = c;
            rec(i + 1, remaining - c, cap, suffix_cap, counts, out);
        }
    }
    rec(0, total, cap, &suffix_cap, &mut counts, out);
}

/// Boson counts over (System mode, Label mode) pairs; rows are System modes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SystemLabelOccupation {
    counts: Vec<Vec<usize>>,
}

impl SystemLabelOccupation {
    pub fn new(counts: Vec<Vec<usize>>) -> Result<Self> {
        let labels = counts.first().map(Vec::len).unwrap_or(0);
        if labels == 0 {
            return Err(Error::input("System-Label occupation needs at least one row and column"));
        }
        if counts.iter().any(|r| r.len() != labels) {
            return Err(Error::input("System-Label occupation rows differ in length"));
        }
        Ok(SystemLabelOccupation { counts })
    }

    pub fn system_modes(&self) -> usize {
        self.counts.len()
    }

    pub fn label_modes(&self) -> usize {
        self.counts[0].len()
    }

    pub fn bosons(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn get(&self, system: usize, label: usize) -> usize {
        self.counts[system][label]
    }

    /// Marginal occupation of the System modes.
    pub fn system_occupation(&self) -> Occupation {
        Occupation(self.counts.iter().map(|r| r.iter().sum()).collect())
    }
}

impl TryFrom<Vec<Vec<usize>>> for SystemLabelOccupation {
    type Error = Error;

    fn try_from(counts: Vec<Vec<usize>>) -> Result<Self> {
        SystemLabelOccupation::new(counts)
    }
}

impl From<SystemLabelOccupation> for Vec<Vec<usize>> {
    fn from(t: SystemLabelOccupation) -> Self {
        t.counts
    }
}

/// Flat mode index of the pair (System `i`, Label `j`) when there are
/// `label_modes` Label modes: `i * label_modes + j`.
pub fn pair_index(system: usize, label: usize, label_modes: usize) -> usize {
    system * label_modes + label
}

/// Flatten onto an occupation over `m * d` modes via [`pair_index`].
pub fn flatten_system_label(t: &SystemLabelOccupation) -> Occupation {
    let d = t.label_modes();
    let mut flat = vec![0; t.system_modes() * d];
    for (i, row) in t.counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            flat[pair_index(i, j, d)] = c;
        }
    }
    Occupation(flat)
}
