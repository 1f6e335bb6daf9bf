//! Layered assignment trail.
//!
//! Each decision opens a new layer; the decision is its first entry and the
//! assignments forced by unit propagation follow in push order. Backtracking
//! pops a whole layer, so the solver always knows exactly which assignments to
//! revert.

use std::collections::HashSet;
use std::fmt;

use crate::cnf::Variable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AssignmentEntry {
    pub variable: Variable,
    pub value: bool,
}

impl AssignmentEntry {
    pub fn new(variable: Variable, value: bool) -> Self {
        AssignmentEntry { variable, value }
    }
}

impl fmt::Display for AssignmentEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.variable,
            if self.value { 'T' } else { 'F' }
        )
    }
}

/// Fixed-capacity stack of assignment layers, one slot per variable.
///
/// Invariants (see [`Trail::check_invariants`]):
/// - `size <= capacity`;
/// - layers below the current one are nonempty and layers at or above `size`
///   are empty (the current layer may be empty right after [`Trail::new_layer`]);
/// - no variable occurs in more than one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trail {
    layers: Vec<Vec<AssignmentEntry>>,
    size: usize,
}

impl Trail {
    pub fn new(variables_count: usize) -> Self {
        Trail {
            layers: vec![Vec::new(); variables_count],
            size: 0,
        }
    }

    /// Number of active layers (the current decision level).
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn capacity(&self) -> usize {
        self.layers.len()
    }

    pub fn is_full(&self) -> bool {
        self.size == self.layers.len()
    }

    pub fn layer(&self, index: usize) -> &[AssignmentEntry] {
        &self.layers[index]
    }

    /// The active layers, bottom first.
    pub fn layers(&self) -> impl Iterator<Item = &[AssignmentEntry]> + '_ {
        self.layers[..self.size].iter().map(Vec::as_slice)
    }

    pub fn last_layer(&self) -> Option<&[AssignmentEntry]> {
        self.size.checked_sub(1).map(|i| self.layers[i].as_slice())
    }

    /// All entries in push order.
    pub fn entries(&self) -> impl Iterator<Item = AssignmentEntry> + '_ {
        self.layers().flatten().copied()
    }

    pub fn len(&self) -> usize {
        self.layers().map(<[_]>::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Contents as a set, recomputed from the layers.
    pub fn contents(&self) -> HashSet<AssignmentEntry> {
        self.layers.iter().flatten().copied().collect()
    }

    pub fn new_layer(&mut self) {
        assert!(
            self.size < self.layers.len(),
            "new_layer: trail is full ({} layers)",
            self.size
        );
        assert!(
            self.size == 0 || !self.layers[self.size - 1].is_empty(),
            "new_layer: current layer {} is empty",
            self.size - 1
        );
        self.size += 1;
    }

    /// Appends `entry` to the current layer.
    pub fn push_entry(&mut self, entry: AssignmentEntry) {
        assert!(self.size > 0, "push_entry: no active layer");
        assert!(
            entry.variable.index() < self.layers.len(),
            "push_entry: {} out of range",
            entry.variable
        );
        // O(entries); the solver state guards this in O(1) through its truth array.
        debug_assert!(
            !self
                .layers
                .iter()
                .flatten()
                .any(|e| e.variable == entry.variable),
            "push_entry: {} is already on the trail",
            entry.variable
        );
        self.layers[self.size - 1].push(entry);
    }

    /// Removes the current layer and returns its entries in push order.
    pub fn pop_layer(&mut self) -> Vec<AssignmentEntry> {
        assert!(self.size > 0, "pop_layer: trail is empty");
        let top = std::mem::take(&mut self.layers[self.size - 1]);
        assert!(!top.is_empty(), "pop_layer: current layer is empty");
        self.size -= 1;
        top
    }

    pub fn check_invariants(&self) -> bool {
        if self.size > self.layers.len() {
            return false;
        }
        let below_nonempty = self.layers[..self.size.saturating_sub(1)]
            .iter()
            .all(|l| !l.is_empty());
        let above_empty = self.layers[self.size..].iter().all(Vec::is_empty);
        if !below_nonempty || !above_empty {
            return false;
        }
        let mut seen = HashSet::new();
        for entry in self.layers.iter().flatten() {
            if entry.variable.index() >= self.layers.len() || !seen.insert(entry.variable) {
                return false;
            }
        }
        // Contents-as-set must hold every entry exactly once.
        let contents = self.contents();
        contents.len() == self.layers.iter().map(Vec::len).sum::<usize>()
            && self.layers.iter().flatten().all(|e| contents.contains(e))
    }
}

impl fmt::Display for Trail {
    /// One line per active layer, e.g. `(x1, T), (x2, F), (x3, F)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in self.layers() {
            let mut first = true;
            for entry in layer {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "{entry}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(var: u32, value: bool) -> AssignmentEntry {
        AssignmentEntry::new(Variable::new(var), value)
    }

    /// The three-layer stack reached on the 7-variable example.
    fn example_trail() -> Trail {
        let mut t = Trail::new(7);
        t.new_layer();
        t.push_entry(e(0, true));
        t.push_entry(e(1, false));
        t.push_entry(e(2, false));
        t.new_layer();
        t.push_entry(e(3, true));
        t.new_layer();
        t.push_entry(e(4, true));
        t
    }

    #[test]
    fn new_layer_on_empty_trail() {
        let mut t = Trail::new(3);
        t.new_layer();
        assert_eq!(t.size(), 1);
        assert!(t.is_empty());
        assert!(t.check_invariants());
    }

    #[test]
    fn new_layer_keeps_existing_layers() {
        let mut t = Trail::new(7);
        t.new_layer();
        t.push_entry(e(0, true));
        t.push_entry(e(1, false));
        t.push_entry(e(2, false));
        let before = t.contents();
        t.new_layer();
        assert_eq!(t.size(), 2);
        assert_eq!(t.layer(0), &[e(0, true), e(1, false), e(2, false)]);
        assert!(t.layer(1).is_empty());
        assert_eq!(t.contents(), before);
    }

    #[test]
    #[should_panic(expected = "trail is full")]
    fn new_layer_at_capacity_panics() {
        let mut t = Trail::new(1);
        t.new_layer();
        t.push_entry(e(0, true));
        t.new_layer();
    }

    #[test]
    #[should_panic(expected = "is empty")]
    fn new_layer_over_empty_layer_panics() {
        let mut t = Trail::new(3);
        t.new_layer();
        t.new_layer();
    }

    #[test]
    fn push_entries_in_order() {
        let mut t = Trail::new(7);
        t.new_layer();
        t.push_entry(e(0, true));
        assert_eq!(t.layer(0), &[e(0, true)]);
        t.push_entry(e(1, false));
        t.push_entry(e(2, false));
        assert_eq!(t.layer(0), &[e(0, true), e(1, false), e(2, false)]);
    }

    #[test]
    #[should_panic(expected = "already on the trail")]
    fn push_duplicate_variable_panics() {
        let mut t = Trail::new(3);
        t.new_layer();
        t.push_entry(e(0, true));
        t.push_entry(e(0, false));
    }

    #[test]
    #[should_panic(expected = "no active layer")]
    fn push_without_layer_panics() {
        Trail::new(3).push_entry(e(0, true));
    }

    #[test]
    fn pop_layer_examples() {
        let mut t = example_trail();
        assert_eq!(t.pop_layer(), vec![e(4, true)]);
        assert_eq!(t.size(), 2);
        assert_eq!(t.layer(1), &[e(3, true)]);

        let mut single = Trail::new(7);
        single.new_layer();
        for entry in [e(0, true), e(1, false), e(2, false)] {
            single.push_entry(entry);
        }
        assert_eq!(
            single.pop_layer(),
            vec![e(0, true), e(1, false), e(2, false)]
        );
        assert_eq!(single.size(), 0);
        assert!(single.check_invariants());
    }

    #[test]
    #[should_panic(expected = "trail is empty")]
    fn pop_empty_trail_panics() {
        Trail::new(2).pop_layer();
    }

    #[test]
    fn invariant_checks() {
        assert!(Trail::new(5).check_invariants());
        assert!(example_trail().check_invariants());

        let mut bad = Trail::new(3);
        bad.size = 2;
        bad.layers[0].push(e(0, true));
        bad.layers[1].push(e(0, false));
        assert!(!bad.check_invariants());

        let mut hole = Trail::new(3);
        hole.size = 2;
        hole.layers[1].push(e(1, true));
        assert!(!hole.check_invariants());

        let mut stale = Trail::new(3);
        stale.layers[2].push(e(1, true));
        assert!(!stale.check_invariants());
    }

    #[test]
    fn dump_format() {
        assert_eq!(
            example_trail().to_string(),
            "(x1, T), (x2, F), (x3, F)\n(x4, T)\n(x5, T)\n"
        );
    }
}
