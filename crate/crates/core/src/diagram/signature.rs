use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DiagramError;

/// One tensor factor of a word: a generating object or its dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub object: String,
    pub dual: bool,
}

/// A tensor word; the empty word is the unit.
pub type ObjectWord = Vec<Letter>;

impl Letter {
    pub fn plain(object: &str) -> Self {
        Self { object: object.to_string(), dual: false }
    }

    pub fn dual(object: &str) -> Self {
        Self { object: object.to_string(), dual: true }
    }

    pub fn flip(&self) -> Self {
        Self { object: self.object.clone(), dual: !self.dual }
    }

    /// Parses `"T"` or `"T^"`.
    pub fn parse(s: &str) -> Result<Self, DiagramError> {
        let (name, dual) = match s.strip_suffix('^') {
            Some(n) => (n, true),
            None => (s, false),
        };
        if name.is_empty() || name.contains('^') {
            return Err(DiagramError::Parse(format!("bad letter {s:?}")));
        }
        Ok(Self { object: name.to_string(), dual })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual {
            write!(f, "{}^", self.object)
        } else {
            f.write_str(&self.object)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Letter::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a whitespace- or comma-separated word such as `"T T^"`.
pub fn word(s: &str) -> Result<ObjectWord, DiagramError> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).map(Letter::parse).collect()
}

pub fn show_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "S".to_string();
    }
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Braided,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDecl {
    pub name: String,
    pub dom: ObjectWord,
    pub cod: ObjectWord,
}

/// Duality data for `object`. Unflipped: the unit emits `X^ X` and the
/// counit eats `X X^`. A flipped pair uses `X X^` and `X^ X` instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPair {
    pub object: String,
    #[serde(default = "default_unit")]
    pub unit: String,
    #[serde(default = "default_counit")]
    pub counit: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flipped: bool,
}

fn default_unit() -> String {
    "eta".into()
}

fn default_counit() -> String {
    "eps".into()
}

impl DualPair {
    pub fn new(object: &str) -> Self {
        Self { object: object.into(), unit: default_unit(), counit: default_counit(), flipped: false }
    }

    /// The word emitted by the unit (and eaten by the counit, reversed polarity).
    pub fn unit_word(&self) -> ObjectWord {
        if self.flipped {
            vec![Letter::plain(&self.object), Letter::dual(&self.object)]
        } else {
            vec![Letter::dual(&self.object), Letter::plain(&self.object)]
        }
    }

    pub fn counit_word(&self) -> ObjectWord {
        self.unit_word().iter().rev().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub flavor: Flavor,
    pub objects: Vec<String>,
    #[serde(default)]
    pub generators: Vec<GeneratorDecl>,
    #[serde(default)]
    pub dual_pairs: Vec<DualPair>,
    #[serde(default)]
    pub twists: BTreeMap<String, String>,
    #[serde(default)]
    pub invertible: BTreeSet<String>,
}

impl Signature {
    pub fn new(flavor: Flavor, objects: &[&str]) -> Self {
        Self {
            flavor,
            objects: objects.iter().map(|s| s.to_string()).collect(),
            generators: Vec::new(),
            dual_pairs: Vec::new(),
            twists: BTreeMap::new(),
            invertible: BTreeSet::new(),
        }
    }

    pub fn generator(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.generators.push(GeneratorDecl {
            name: name.into(),
            dom: word(dom).expect("valid word"),
            cod: word(cod).expect("valid word"),
        });
        self
    }

    pub fn dual_pair(mut self, pair: DualPair) -> Self {
        self.dual_pairs.push(pair);
        self
    }

    pub fn twist(mut self, gen: &str, object: &str) -> Self {
        self.twists.insert(gen.into(), object.into());
        self
    }

    pub fn invertible(mut self, gen: &str) -> Self {
        self.invertible.insert(gen.into());
        self
    }

    pub fn gen(&self, name: &str) -> Option<&GeneratorDecl> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn pair(&self, object: &str) -> Option<&DualPair> {
        self.dual_pairs.iter().find(|p| p.object == object)
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o == name)
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<(), DiagramError> {
        for l in w {
            if !self.has_object(&l.object) {
                return Err(DiagramError::Signature(format!("undeclared object {}", l.object)));
            }
            if l.dual && self.pair(&l.object).is_none() {
                return Err(DiagramError::Signature(format!("{} has no dual", l.object)));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |m: String| Err(DiagramError::Signature(m));
        let mut seen = BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(o) {
                return bad(format!("object {o} declared twice"));
            }
            if o.is_empty() || o.contains('^') {
                return bad(format!("bad object name {o:?}"));
            }
        }
        let mut paired = BTreeSet::new();
        for p in &self.dual_pairs {
            if !self.has_object(&p.object) {
                return bad(format!("dual pair on undeclared object {}", p.object));
            }
            if !paired.insert(&p.object) {
                return bad(format!("{} is in two dual pairs", p.object));
            }
        }
        let mut names = BTreeSet::new();
        for g in &self.generators {
            if !names.insert(&g.name) {
                return bad(format!("generator {} declared twice", g.name));
            }
            self.check_word(&g.dom)?;
            self.check_word(&g.cod)?;
        }
        for (t, obj) in &self.twists {
            let single = vec![Letter::plain(obj)];
            match self.gen(t) {
                Some(g) if g.dom == single && g.cod == single => {}
                _ => return bad(format!("twist {t} must be an endomorphism of {obj}")),
            }
        }
        for g in &self.invertible {
            if self.gen(g).is_none() {
                return bad(format!("invertible {g} is not a generator"));
            }
        }
        Ok(())
    }
}
