/// Resource caps for the exponential operations.
///
/// Shattering reports enumerate all `2^|X|` subsets of the domain, set-system
/// isomorphism is a backtracking search, and clique enumeration can produce
/// exponentially many members. Each of these refuses inputs above its cap
/// with a typed error instead of silently truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest domain accepted by shattering / VC / maximum / extremal checks.
    pub max_domain: usize,
    /// Largest domain accepted by the isomorphism search.
    pub max_iso_domain: usize,
    /// Largest vertex count accepted by clique and independent-set enumeration.
    pub max_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_domain: 20,
            max_iso_domain: 12,
            max_vertices: 20,
        }
    }
}

impl Caps {
    /// Parse overrides in the form `domain=20,vertices=20,iso=12`.
    /// Unknown keys and malformed entries are reported as errors.
    pub fn parse_overrides(&self, text: &str) -> Result<Caps, String> {
        let mut caps = *self;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("bad cap override {part:?}, expected key=value"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("bad cap value in {part:?}"))?;
            match key.trim() {
                "domain" => caps.max_domain = value,
                "iso" => caps.max_iso_domain = value,
                "vertices" => caps.max_vertices = value,
                other => return Err(format!("unknown cap key {other:?}")),
            }
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_parsing() {
        let caps = Caps::default().parse_overrides("domain=8, iso=6").unwrap();
        assert_eq!(caps.max_domain, 8);
        assert_eq!(caps.max_iso_domain, 6);
        assert_eq!(caps.max_vertices, Caps::default().max_vertices);

        assert!(Caps::default().parse_overrides("domain").is_err());
        assert!(Caps::default().parse_overrides("depth=3").is_err());
        assert!(Caps::default().parse_overrides("domain=x").is_err());
    }
}
