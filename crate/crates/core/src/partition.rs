//! Bipartitions of qubit labels and their canonical sub-partition refinements.
//!
//! Qubits are labelled `1..=n` (letters `A`, `B`, … in the textual syntax).
//! A [`Partition`] is stored canonically with qubit 1 on the left; the
//! orientation the caller wrote is kept in a `swapped` flag so that labels and
//! reductions follow the written order.

use std::fmt;

use thiserror::Error;

/// Largest qubit count for which [`enumerate_partitions`] is defined.
pub const MAX_ENUM_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("bad partition syntax {text:?}: {reason}")]
    BadSyntax { text: String, reason: &'static str },

    #[error("qubit index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("qubit {index} appears more than once")]
    Overlap { index: usize },

    #[error("partition does not cover all qubits; missing {missing:?}")]
    Incomplete { missing: Vec<usize> },

    #[error("both sides of a partition must be non-empty")]
    EmptySide,

    #[error("qubit count {n} out of range {min}..={max}")]
    NOutOfRange { n: usize, min: usize, max: usize },
}

/// Ordered bipartition `(r) ‖ (s)` of the qubits `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    swapped: bool,
}

impl Partition {
    /// Builds a partition from the two sides as written. Sides may be given in
    /// any order; if qubit 1 is on `first` the result is unswapped.
    pub fn new(n: usize, first: &[usize], second: &[usize]) -> Result<Self, PartitionError> {
        if first.is_empty() || second.is_empty() {
            return Err(PartitionError::EmptySide);
        }
        let mut seen = vec![false; n + 1];
        for &q in first.iter().chain(second) {
            if q == 0 || q > n {
                return Err(PartitionError::IndexOutOfRange { index: q, n });
            }
            if seen[q] {
                return Err(PartitionError::Overlap { index: q });
            }
            seen[q] = true;
        }
        let missing: Vec<usize> = (1..=n).filter(|&q| !seen[q]).collect();
        if !missing.is_empty() {
            return Err(PartitionError::Incomplete { missing });
        }

        let mut first = first.to_vec();
        let mut second = second.to_vec();
        first.sort_unstable();
        second.sort_unstable();
        let swapped = second[0] == 1;
        let (left, right) = if swapped { (second, first) } else { (first, second) };
        Ok(Partition { n, left, right, swapped })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical left side; always contains qubit 1.
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// True when the side containing qubit 1 was written second.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Side written first (the `(r)` side).
    pub fn first(&self) -> &[usize] {
        if self.swapped {
            &self.right
        } else {
            &self.left
        }
    }

    /// Side written second (the `(s)` side).
    pub fn second(&self) -> &[usize] {
        if self.swapped {
            &self.left
        } else {
            &self.right
        }
    }

    /// Same partition in canonical orientation.
    pub fn canonical(&self) -> Partition {
        Partition { swapped: false, ..self.clone() }
    }

    /// The two sides in the opposite written order.
    pub fn reversed(&self) -> Partition {
        Partition { swapped: !self.swapped, ..self.clone() }
    }

    /// Qubit order `first ++ second`, the permutation that groups the
    /// partition's sides.
    pub fn grouping_permutation(&self) -> Vec<usize> {
        self.first().iter().chain(self.second()).copied().collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_partition(self))
    }
}

/// Letter for qubit `q` when `n ≤ 26`.
fn qubit_letter(q: usize) -> char {
    (b'A' + (q - 1) as u8) as char
}

pub(crate) fn format_side(n: usize, side: &[usize]) -> String {
    if n <= 26 {
        side.iter().map(|&q| qubit_letter(q)).collect()
    } else {
        side.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Written-orientation label, e.g. `AC|BD` (numeric lists when `n > 26`).
pub fn format_partition(p: &Partition) -> String {
    format!("{}|{}", format_side(p.n, p.first()), format_side(p.n, p.second()))
}

fn parse_side(text: &str, side: &str, n: usize) -> Result<Vec<usize>, PartitionError> {
    if side.is_empty() {
        return Err(PartitionError::EmptySide);
    }
    let bad = |reason| PartitionError::BadSyntax { text: text.to_string(), reason };
    if side.bytes().all(|b| b.is_ascii_uppercase()) {
        return Ok(side.bytes().map(|b| (b - b'A') as usize + 1).collect());
    }
    side.split(',')
        .map(|tok| {
            if tok.is_empty() {
                return Err(bad("empty entry in numeric list"));
            }
            if !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected capital letters or a comma-separated list of integers"));
            }
            tok.parse::<usize>().map_err(|_| PartitionError::IndexOutOfRange { index: usize::MAX, n })
        })
        .collect()
}

/// Parses `AC|BD` or `1,3|2,4` against a qubit count `n`.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition, PartitionError> {
    let mut parts = text.split('|');
    let (first, second) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => {
            return Err(PartitionError::BadSyntax {
                text: text.to_string(),
                reason: "expected exactly one '|' separator",
            })
        }
    };
    let first = parse_side(text, first, n)?;
    let second = parse_side(text, second, n)?;
    Partition::new(n, &first, &second)
}

/// Every canonical bipartition of `n` qubits: `2^(n-1) - 1` of them, ordered by
/// left-side size, then lexicographically.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>, PartitionError> {
    if !(2..=MAX_ENUM_QUBITS).contains(&n) {
        return Err(PartitionError::NOutOfRange { n, min: 2, max: MAX_ENUM_QUBITS });
    }
    // Subsets of {2..n} joined to qubit 1, excluding the full set.
    let rest = n - 1;
    let mut lefts: Vec<Vec<usize>> = (0u32..(1 << rest) - 1)
        .map(|mask| {
            let mut left = vec![1];
            left.extend((0..rest).filter(|b| mask & (1 << b) != 0).map(|b| b + 2));
            left
        })
        .collect();
    lefts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(lefts
        .into_iter()
        .map(|left| {
            let right = (1..=n).filter(|q| !left.contains(q)).collect();
            Partition { n, left, right, swapped: false }
        })
        .collect())
}

/// A refinement `[(r'),(r'')] ‖ [(s'),(s'')]` of a partition, where `r`/`s` are
/// the partition's first and second written sides.
///
/// Canonical splits keep the smallest qubit of each side in the primed set;
/// every other split selects the same 4×4 block up to relabelling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubSplit {
    parent: Partition,
    r_prime: Vec<usize>,
    r_dprime: Vec<usize>,
    s_prime: Vec<usize>,
    s_dprime: Vec<usize>,
}

impl SubSplit {
    pub fn parent(&self) -> &Partition {
        &self.parent
    }

    pub fn r_prime(&self) -> &[usize] {
        &self.r_prime
    }

    pub fn r_dprime(&self) -> &[usize] {
        &self.r_dprime
    }

    pub fn s_prime(&self) -> &[usize] {
        &self.s_prime
    }

    pub fn s_dprime(&self) -> &[usize] {
        &self.s_dprime
    }
}

impl fmt::Display for SubSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.parent.n;
        let set = |s: &[usize]| if s.is_empty() { "∅".to_string() } else { format!("({})", format_side(n, s)) };
        write!(f, "[{},{}]‖[{},{}]", set(&self.r_prime), set(&self.r_dprime), set(&self.s_prime), set(&self.s_dprime))
    }
}

fn split_side(side: &[usize], moved: impl Fn(usize) -> bool) -> (Vec<usize>, Vec<usize>) {
    let mut prime = vec![side[0]];
    let mut dprime = Vec::new();
    for (k, &q) in side.iter().enumerate().skip(1) {
        if moved(k) {
            dprime.push(q);
        } else {
            prime.push(q);
        }
    }
    (prime, dprime)
}

/// The `2^(n-2)` canonical sub-splits of `p`.
///
/// The non-minimal qubits of the first side followed by those of the second
/// side form a binary counter, most significant first; a set bit moves the
/// qubit into the double-primed set.
pub fn enumerate_canonical_splits(p: &Partition) -> Vec<SubSplit> {
    let r = p.first();
    let s = p.second();
    let r_free = r.len() - 1;
    let s_free = s.len() - 1;
    let total = r_free + s_free;
    (0u64..(1u64 << total))
        .map(|mask| {
            let bit = |pos: usize| mask & (1u64 << (total - 1 - pos)) != 0;
            let (r_prime, r_dprime) = split_side(r, |k| bit(k - 1));
            let (s_prime, s_dprime) = split_side(s, |k| bit(r_free + k - 1));
            SubSplit { parent: p.clone(), r_prime, r_dprime, s_prime, s_dprime }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_letters_and_numbers() {
        let p = parse_partition("A|BC", 3).unwrap();
        assert_eq!((p.left(), p.right(), p.swapped()), (&[1][..], &[2, 3][..], false));
        let p = parse_partition("AC|BD", 4).unwrap();
        assert_eq!((p.left(), p.right()), (&[1, 3][..], &[2, 4][..]));
        let q = parse_partition("1,3|2,4", 4).unwrap();
        assert_eq!(p, q);
        let p = parse_partition("CA|DB", 4).unwrap();
        assert_eq!(p.left(), &[1, 3]);
    }

    #[test]
    fn parse_keeps_written_orientation() {
        let p = parse_partition("B|AC", 3).unwrap();
        assert_eq!(p.first(), &[2]);
        assert_eq!(p.second(), &[1, 3]);
        assert_eq!(p.left(), &[1, 3]);
        assert_eq!(p.right(), &[2]);
        assert!(p.swapped());
        assert_eq!(p.to_string(), "B|AC");
        assert_eq!(p.canonical().to_string(), "AC|B");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_partition("A B|C", 3), Err(PartitionError::BadSyntax { .. })));
        assert!(matches!(parse_partition("A|B|C", 3), Err(PartitionError::BadSyntax { .. })));
        assert!(matches!(parse_partition("ABC", 3), Err(PartitionError::BadSyntax { .. })));
        assert!(matches!(parse_partition("a|bc", 3), Err(PartitionError::BadSyntax { .. })));
        assert!(matches!(parse_partition("1,|2,3", 3), Err(PartitionError::BadSyntax { .. })));
        assert_eq!(parse_partition("A|BD", 3), Err(PartitionError::IndexOutOfRange { index: 4, n: 3 }));
        assert_eq!(parse_partition("0|1,2", 2), Err(PartitionError::IndexOutOfRange { index: 0, n: 2 }));
        assert_eq!(parse_partition("AB|BC", 3), Err(PartitionError::Overlap { index: 2 }));
        assert_eq!(parse_partition("AA|BC", 3), Err(PartitionError::Overlap { index: 1 }));
        assert_eq!(parse_partition("A|C", 3), Err(PartitionError::Incomplete { missing: vec![2] }));
        assert_eq!(parse_partition("|ABC", 3), Err(PartitionError::EmptySide));
    }

    #[test]
    fn enumerate_small() {
        let labels = |n| enumerate_partitions(n).unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(labels(2), ["A|B"]);
        assert_eq!(labels(3), ["A|BC", "AB|C", "AC|B"]);
        assert_eq!(labels(4).len(), 7);
        assert_eq!(labels(4)[..4], ["A|BCD", "AB|CD", "AC|BD", "AD|BC"]);
        assert!(enumerate_partitions(1).is_err());
        assert!(enumerate_partitions(11).is_err());
    }

    #[test]
    fn splits_of_a_bc() {
        let p = parse_partition("A|BC", 3).unwrap();
        let s: Vec<String> = enumerate_canonical_splits(&p).iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["[(A),∅]‖[(BC),∅]", "[(A),∅]‖[(B),(C)]"]);
    }

    #[test]
    fn splits_follow_written_orientation() {
        let p = parse_partition("B|AC", 3).unwrap();
        let splits = enumerate_canonical_splits(&p);
        assert_eq!(splits[1].r_prime(), &[2]);
        assert_eq!(splits[1].s_prime(), &[1]);
        assert_eq!(splits[1].s_dprime(), &[3]);
    }

    #[test]
    fn two_qubit_partition_has_single_split() {
        let p = parse_partition("A|B", 2).unwrap();
        assert_eq!(enumerate_canonical_splits(&p).len(), 1);
    }

    #[test]
    fn numeric_labels_beyond_26_qubits() {
        let first: Vec<usize> = (1..=14).collect();
        let second: Vec<usize> = (15..=27).collect();
        let p = Partition::new(27, &first, &second).unwrap();
        let label = p.to_string();
        assert!(label.starts_with("1,2,3"));
        assert_eq!(parse_partition(&label, 27).unwrap(), p);
    }
}
