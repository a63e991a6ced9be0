//! Named strategy registries. Each solver module exposes a registry of
//! trait objects so variants can be chosen at runtime by name.

use crate::error::{Error, Result};

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    /// Adds a variant; a later registration under the same name replaces it.
    pub fn register(&mut self, name: &'static str, strategy: Box<T>) -> &mut Self {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = strategy,
            None => self.entries.push((name, strategy)),
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy { kind: self.kind, name: name.to_string() })
    }

    /// The first registered variant.
    pub fn default_strategy(&self) -> &T {
        self.entries[0].1.as_ref()
    }

    pub fn default_name(&self) -> &'static str {
        self.entries[0].0
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter {
        fn greet(&self) -> String;
    }

    struct Plain;
    struct Loud;

    impl Greeter for Plain {
        fn greet(&self) -> String {
            "hi".into()
        }
    }

    impl Greeter for Loud {
        fn greet(&self) -> String {
            "HI".into()
        }
    }

    #[test]
    fn lookup_by_name() {
        let mut r: Registry<dyn Greeter> = Registry::new("greeter");
        r.register("plain", Box::new(Plain)).register("loud", Box::new(Loud));
        assert_eq!(r.get("loud").unwrap().greet(), "HI");
        assert_eq!(r.default_name(), "plain");
        assert_eq!(r.names(), vec!["plain", "loud"]);
        let err = r.get("quiet").err().unwrap();
        assert!(matches!(err, Error::UnknownStrategy { kind: "greeter", .. }));
    }
}
