//! Cross-check of normal forms against the congruence table.

use std::collections::HashMap;

use serde::Serialize;

use crate::garside::{GarsideStructure, NormalForm};
use crate::par::{self, Execution};
use crate::presentation::{CongruenceTable, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub max_length: usize,
    pub words: u64,
    pub classes: usize,
    /// Pairs on which the two equivalences disagree (first few only).
    pub mismatches: Vec<(Word, Word)>,
    pub mismatch_count: u64,
}

/// For every length up to the table's maximum, check that two words have
/// the same normal form exactly when the table puts them in one class.
/// This covers every pair of positive words of length at most `max_length`.
pub fn compare_with_table(
    g: &GarsideStructure,
    table: &CongruenceTable,
    exec: Execution,
) -> OracleReport {
    let mut words = 0u64;
    let mut classes = 0usize;
    let mut mismatches = Vec::new();
    let mut mismatch_count = 0u64;
    for len in 0..=table.max_length() {
        let all: Vec<Word> = table.words(len).collect();
        let nfs: Vec<NormalForm> = par::map_slice(&all, exec, |w| g.normal_form(w));
        // first word seen for each class and for each normal form
        let mut by_class: HashMap<u32, usize> = HashMap::new();
        let mut by_nf: HashMap<&NormalForm, usize> = HashMap::new();
        for (i, w) in all.iter().enumerate() {
            let c = table.class_of(w).expect("word is in the table").index;
            let a = *by_class.entry(c).or_insert(i);
            let b = *by_nf.entry(&nfs[i]).or_insert(i);
            if a != b {
                mismatch_count += 1;
                if mismatches.len() < 10 {
                    mismatches.push((all[a.min(b)].clone(), w.clone()));
                }
            }
        }
        words += all.len() as u64;
        classes += by_class.len();
    }
    OracleReport {
        max_length: table.max_length(),
        words,
        classes,
        mismatches,
        mismatch_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::presentation::{Budget, Presentation};

    #[test]
    fn g12_agrees_up_to_six() {
        let p = Presentation::parse(data::G12_GAR).unwrap();
        let g = GarsideStructure::build(&p, &Budget::default(), Execution::Sequential).unwrap();
        let t = CongruenceTable::build(&p, 6, &Budget::default(), Execution::Parallel).unwrap();
        let r = compare_with_table(&g, &t, Execution::Parallel);
        assert_eq!(r.mismatch_count, 0);
        assert_eq!(r.words, (0..=6).map(|k| 3u64.pow(k)).sum::<u64>());
    }
}
