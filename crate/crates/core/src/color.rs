use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A leg color. Colors compare lexicographically on their token.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(String);

impl Color {
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
            return Err(Error::InvalidColor(name));
        }
        Ok(Color(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite set of colors, kept sorted and free of duplicates.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet {
    colors: Vec<Color>,
}

impl ColorSet {
    pub fn empty() -> Self {
        ColorSet::default()
    }

    /// Builds a set from distinct colors. Duplicates are rejected.
    pub fn new(colors: impl IntoIterator<Item = Color>) -> Result<Self, Error> {
        let mut colors: Vec<Color> = colors.into_iter().collect();
        colors.sort();
        for pair in colors.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateColor(pair[0].clone()));
            }
        }
        Ok(ColorSet { colors })
    }

    /// Parses whitespace-free tokens into a set.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, Error> {
        let colors = names
            .iter()
            .map(|n| Color::new(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        ColorSet::new(colors)
    }

    pub fn contains(&self, c: &Color) -> bool {
        self.colors.binary_search(c).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Color> {
        self.colors.iter()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.colors.iter().all(|c| other.contains(c))
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        ColorSet {
            colors: self
                .colors
                .iter()
                .filter(|c| !other.contains(c))
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let mut colors = self.colors.clone();
        colors.extend(other.colors.iter().cloned());
        colors.sort();
        colors.dedup();
        ColorSet { colors }
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.colors.iter()).finish()
    }
}
