//! Set systems and their zone decomposition.
//!
//! A set system is a family of named sets over a finite universe of
//! elements. Zones are the equivalence classes of elements that share the
//! same cover, i.e. that belong to exactly the same sets. The empty zone
//! (outside every set) is always materialized because the dual graph needs
//! it as the outer reference vertex; it never carries elements, since the
//! universe is defined as the union of the sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The set of set labels covering a zone. Ordered, hashable, and cheap to
/// compare; the empty label denotes the outer zone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ZoneLabel(BTreeSet<String>);

impl ZoneLabel {
    /// The label of the outer zone (covered by no set).
    pub fn empty() -> Self {
        ZoneLabel(BTreeSet::new())
    }

    /// Builds a label from any collection of set names.
    pub fn from_iter<I, S>(iter: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ZoneLabel(iter.into_iter().map(Into::into).collect())
    }

    /// True when no set covers the zone.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of sets covering the zone.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether `set` covers the zone.
    pub fn contains(&self, set: &str) -> bool {
        self.0.contains(set)
    }

    /// Iterates the covering set names in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.0.iter()
    }

    /// Symmetric difference with another label.
    pub fn sym_diff(&self, other: &ZoneLabel) -> ZoneLabel {
        ZoneLabel(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    /// Label with `from` renamed to `to`. Renaming onto a name already in
    /// the label simply collapses the two.
    pub fn rename(&self, from: &str, to: &str) -> ZoneLabel {
        if !self.0.contains(from) {
            return self.clone();
        }
        let mut names = self.0.clone();
        names.remove(from);
        names.insert(to.to_string());
        ZoneLabel(names)
    }

    /// Label with one name added.
    pub fn with(&self, set: &str) -> ZoneLabel {
        let mut names = self.0.clone();
        names.insert(set.to_string());
        ZoneLabel(names)
    }

    /// Label with one name removed.
    pub fn without(&self, set: &str) -> ZoneLabel {
        let mut names = self.0.clone();
        names.remove(set);
        ZoneLabel(names)
    }

    /// Access to the underlying sorted name set.
    pub fn names(&self) -> &BTreeSet<String> {
        &self.0
    }
}

impl fmt::Display for ZoneLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{{}}");
        }
        // Single-character names concatenate compactly; longer names are
        // joined with commas so the boundary stays readable.
        let compact = self.0.iter().all(|s| s.chars().count() == 1);
        let joined = if compact {
            self.0.iter().cloned().collect::<Vec<_>>().join("")
        } else {
            self.0.iter().cloned().collect::<Vec<_>>().join(",")
        };
        write!(f, "{joined}")
    }
}

impl Serialize for ZoneLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let names: Vec<&String> = self.0.iter().collect();
        names.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ZoneLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(deserializer)?;
        Ok(ZoneLabel(names.into_iter().collect()))
    }
}

#[derive(Deserialize)]
struct JsonSet {
    label: String,
    elements: Vec<String>,
}

#[derive(Deserialize)]
struct JsonSystem {
    sets: Vec<JsonSet>,
}

/// A family of named, nonempty sets over a shared universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    sets: BTreeMap<String, BTreeSet<String>>,
}

impl SetSystem {
    /// Builds a system from (label, elements) pairs, validating that labels
    /// are unique and nonempty and every set has at least one element.
    pub fn new<I, S, E>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, E)>,
        S: Into<String>,
        E: IntoIterator<Item = S>,
    {
        let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (label, elements) in sets {
            let label = label.into();
            if label.is_empty() {
                return Err(Error::InvalidSystem("set label is empty".into()));
            }
            let elements: BTreeSet<String> = elements.into_iter().map(Into::into).collect();
            if elements.is_empty() {
                return Err(Error::InvalidSystem(format!(
                    "set '{label}' has no elements"
                )));
            }
            if map.insert(label.clone(), elements).is_some() {
                return Err(Error::InvalidSystem(format!(
                    "duplicate set label '{label}'"
                )));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidSystem("no sets given".into()));
        }
        Ok(SetSystem { sets: map })
    }

    /// Parses the line-oriented text format: one `label: e1, e2, ...` per
    /// line, `#` starting a comment, blank lines ignored.
    pub fn from_lines(text: &str) -> Result<Self> {
        let mut pairs: Vec<(String, Vec<String>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (label, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected 'label: elements' with a colon".into(),
            })?;
            let label = label.trim();
            if label.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "set label before ':' is empty".into(),
                });
            }
            let elements: Vec<String> = rest
                .split(',')
                .map(|e| e.trim().to_string())
                .filter(|e| !e.is_empty())
                .collect();
            if elements.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("set '{label}' has no elements"),
                });
            }
            pairs.push((label.to_string(), elements));
        }
        let pairs: Vec<(String, Vec<String>)> = pairs;
        SetSystem::new(pairs.into_iter().map(|(l, es)| (l, es)))
    }

    /// Parses the JSON format: `{"sets": [{"label": ..., "elements": [...]}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: JsonSystem = serde_json::from_str(text)?;
        SetSystem::new(parsed.sets.into_iter().map(|s| (s.label, s.elements)))
    }

    /// Parses either supported format, sniffing JSON by its first
    /// non-whitespace character.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim_start().chars().next() {
            Some('{') => SetSystem::from_json(text),
            _ => SetSystem::from_lines(text),
        }
    }

    /// The named sets, keyed by label.
    pub fn sets(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.sets
    }

    /// Number of sets.
    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// Union of all sets.
    pub fn universe(&self) -> BTreeSet<String> {
        let mut u = BTreeSet::new();
        for elements in self.sets.values() {
            u.extend(elements.iter().cloned());
        }
        u
    }

    /// The cover of one element: the labels of every set containing it.
    /// Unknown elements are rejected rather than given an empty cover, so a
    /// typo cannot silently alias the outer zone.
    pub fn cover(&self, element: &str) -> Result<ZoneLabel> {
        let label = ZoneLabel(
            self.sets
                .iter()
                .filter(|(_, els)| els.contains(element))
                .map(|(label, _)| label.clone())
                .collect(),
        );
        if label.is_empty() {
            return Err(Error::InvalidSystem(format!(
                "element '{element}' is not in any set"
            )));
        }
        Ok(label)
    }

    /// Partitions the universe into zones by cover, and adds the outer
    /// (empty-label) zone, which is always element-free.
    pub fn zones(&self) -> BTreeMap<ZoneLabel, BTreeSet<String>> {
        let mut zones: BTreeMap<ZoneLabel, BTreeSet<String>> = BTreeMap::new();
        zones.insert(ZoneLabel::empty(), BTreeSet::new());
        for element in self.universe() {
            let label = self
                .cover(&element)
                .expect("universe elements always have a cover");
            zones.entry(label).or_default().insert(element);
        }
        zones
    }

    /// Replaces two sets by their union, keeping the lexicographically
    /// smaller label. This is the set-level counterpart of a dual-graph
    /// merge and serves as the semantic oracle for it.
    pub fn merge_sets(&self, l1: &str, l2: &str) -> Result<SetSystem> {
        if l1 == l2 {
            return Err(Error::InvalidSystem(format!(
                "cannot merge set '{l1}' with itself"
            )));
        }
        for l in [l1, l2] {
            if !self.sets.contains_key(l) {
                return Err(Error::InvalidSystem(format!("unknown set label '{l}'")));
            }
        }
        let (kept, absorbed) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
        let mut sets = self.sets.clone();
        let absorbed_elements = sets.remove(absorbed).expect("label checked above");
        sets.get_mut(kept)
            .expect("label checked above")
            .extend(absorbed_elements);
        Ok(SetSystem { sets })
    }
}
