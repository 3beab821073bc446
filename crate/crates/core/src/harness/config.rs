//! Plain-text `key = value` campaign configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::rat::Rat;

use super::named::NamedInstance;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError { line, message: message.into() }
    }
}

/// Checks a campaign can run on each instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Conj1,
    Strong,
    EqualityClass,
    OneExtra,
    TriangleMixed,
    ConvexMixed,
    SelfSum,
    Doubling,
    Scover,
    Stability,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Conj1,
        Check::Strong,
        Check::EqualityClass,
        Check::OneExtra,
        Check::TriangleMixed,
        Check::ConvexMixed,
        Check::SelfSum,
        Check::Doubling,
        Check::Scover,
        Check::Stability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Conj1 => "conj1",
            Check::Strong => "strong",
            Check::EqualityClass => "equalityClass",
            Check::OneExtra => "oneExtra",
            Check::TriangleMixed => "triangleMixed",
            Check::ConvexMixed => "convexMixed",
            Check::SelfSum => "selfSum",
            Check::Doubling => "doubling",
            Check::Scover => "scover",
            Check::Stability => "stability",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// How the second summand `B` of an instance is obtained from `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partner {
    /// No second set; pair checks use `B = A`.
    None,
    /// `B = A`.
    SelfSum,
    /// An independent draw from the same generator.
    Independent,
    /// The hull vertices of `A` plus a random subset of the lattice points of `[A]`.
    SameHull,
    /// `A` plus one random integer point outside `A`.
    ExtraPoint,
    /// Every non-degenerate triangle on `{0..w-1} x {0..h-1}`.
    Triangles { w: i64, h: i64 },
}

impl Partner {
    fn parse(v: &str) -> Result<Self, String> {
        let mut words = v.split_whitespace();
        let p = match words.next() {
            Some("none") => Partner::None,
            Some("self") => Partner::SelfSum,
            Some("independent") => Partner::Independent,
            Some("same-hull") => Partner::SameHull,
            Some("extra-point") => Partner::ExtraPoint,
            Some("triangles") => {
                let mut dim = || words.next().and_then(|w| w.parse::<i64>().ok()).filter(|&n| n >= 2);
                let (Some(w), Some(h)) = (dim(), dim()) else {
                    return Err("`triangles` needs two sizes >= 2".into());
                };
                return match words.next() {
                    None => Ok(Partner::Triangles { w, h }),
                    Some(_) => Err("trailing words after `triangles W H`".into()),
                };
            }
            _ => return Err(format!("unknown partner `{v}`")),
        };
        match words.next() {
            None => Ok(p),
            Some(_) => Err(format!("trailing words in partner `{v}`")),
        }
    }
}

impl fmt::Display for Partner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Partner::None => f.write_str("none"),
            Partner::SelfSum => f.write_str("self"),
            Partner::Independent => f.write_str("independent"),
            Partner::SameHull => f.write_str("same-hull"),
            Partner::ExtraPoint => f.write_str("extra-point"),
            Partner::Triangles { w, h } => write!(f, "triangles {w} {h}"),
        }
    }
}

/// Source of the first summand `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Every 2-dimensional subset of `{0..w-1} x {0..h-1}` with `min..=max` points.
    ExhaustiveGrid {
        w: i64,
        h: i64,
        min_points: usize,
        max_points: usize,
    },
    /// `count` sets of `min..=max` distinct points in `{0..=bound}^2`.
    Random {
        seed: u64,
        count: usize,
        bound: i64,
        min_points: usize,
        max_points: usize,
    },
    /// As `Random`, restricted to sets with every point on the hull boundary.
    ConvexRandom {
        seed: u64,
        count: usize,
        bound: i64,
        min_points: usize,
        max_points: usize,
    },
    Named(NamedInstance),
}

impl Generator {
    pub fn kind(&self) -> &'static str {
        match self {
            Generator::ExhaustiveGrid { .. } => "exhaustive-grid",
            Generator::Random { .. } => "random",
            Generator::ConvexRandom { .. } => "convex-random",
            Generator::Named(_) => "named-instance",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSpec {
    pub generator: Generator,
    pub partner: Partner,
    pub checks: Vec<Check>,
    pub dedup: bool,
    /// Largest admissible number of instances, counted before deduplication.
    pub ceiling: usize,
    /// Worker threads; zero picks the pool default.
    pub threads: usize,
    pub near_threshold: Rat,
    /// How many near-equality entries are listed; all are counted.
    pub near_limit: usize,
    pub epsilon: Rat,
}

pub const DEFAULT_CEILING: usize = 5_000_000;

impl CampaignSpec {
    pub fn new(generator: Generator, partner: Partner, checks: Vec<Check>) -> Self {
        CampaignSpec {
            generator,
            partner,
            checks,
            dedup: false,
            ceiling: DEFAULT_CEILING,
            threads: 0,
            near_threshold: Rat::one(),
            near_limit: 20,
            epsilon: Rat::new(1, 6),
        }
    }

    pub fn dedup(mut self, on: bool) -> Self {
        self.dedup = on;
        self
    }

    pub fn threads(mut self, n: usize) -> Self {
        self.threads = n;
        self
    }

    /// Parses the config format. Blank lines and `#` comments are ignored; unknown or
    /// repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(ConfigError::at(line, format!("expected `key = value`, got `{body}`")));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(ConfigError::at(line, format!("unknown key `{k}`")));
            }
            if entries.insert(k.to_string(), (line, v.to_string())).is_some() {
                return Err(ConfigError::at(line, format!("repeated key `{k}`")));
            }
        }
        Fields { entries, last: text.lines().count().max(1) }.build()
    }
}

const KEYS: [&str; 17] = [
    "generator",
    "width",
    "height",
    "min_points",
    "max_points",
    "seed",
    "count",
    "coord_bound",
    "instance",
    "partner",
    "checks",
    "dedup",
    "ceiling",
    "threads",
    "near_threshold",
    "near_limit",
    "epsilon",
];

struct Fields {
    entries: BTreeMap<String, (usize, String)>,
    last: usize,
}

impl Fields {
    fn raw(&self, key: &str) -> Option<&(usize, String)> {
        self.entries.get(key)
    }

    fn required(&self, key: &str) -> Result<&(usize, String), ConfigError> {
        self.raw(key).ok_or_else(|| ConfigError::at(self.last, format!("missing key `{key}`")))
    }

    fn parsed<T: FromStr>(&self, key: &str, default: Option<T>) -> Result<T, ConfigError> {
        match (self.raw(key), default) {
            (Some((line, v)), _) => {
                v.parse().map_err(|_| ConfigError::at(*line, format!("bad value `{v}` for `{key}`")))
            }
            (None, Some(d)) => Ok(d),
            (None, None) => Err(self.required(key).unwrap_err()),
        }
    }

    fn range(&self) -> Result<(usize, usize), ConfigError> {
        let lo: usize = self.parsed("min_points", None)?;
        let hi: usize = self.parsed("max_points", None)?;
        if lo < 3 || hi < lo {
            let line = self.raw("max_points").map_or(self.last, |e| e.0);
            return Err(ConfigError::at(line, format!("need 3 <= min_points <= max_points, got {lo}..{hi}")));
        }
        Ok((lo, hi))
    }

    fn build(self) -> Result<CampaignSpec, ConfigError> {
        let (gline, gen) = self.required("generator")?.clone();
        let generator = match gen.as_str() {
            "exhaustive-grid" => {
                let w: i64 = self.parsed("width", None)?;
                let h: i64 = self.parsed("height", None)?;
                let (min_points, max_points) = self.range()?;
                if w < 1 || h < 1 || w * h > 30 {
                    return Err(ConfigError::at(gline, format!("grid {w}x{h} must have between 1 and 30 points")));
                }
                Generator::ExhaustiveGrid { w, h, min_points, max_points }
            }
            "random" | "convex-random" => {
                let seed = self.parsed("seed", None)?;
                let count = self.parsed("count", None)?;
                let bound: i64 = self.parsed("coord_bound", None)?;
                let (min_points, max_points) = self.range()?;
                let cells = (bound + 1).saturating_mul(bound + 1);
                if bound < 1 || cells < max_points as i64 {
                    return Err(ConfigError::at(gline, format!("coord_bound {bound} cannot hold {max_points} points")));
                }
                if gen == "random" {
                    Generator::Random { seed, count, bound, min_points, max_points }
                } else {
                    Generator::ConvexRandom { seed, count, bound, min_points, max_points }
                }
            }
            "named-instance" => {
                let (line, id) = self.required("instance")?;
                Generator::Named(id.parse().map_err(|e: String| ConfigError::at(*line, e))?)
            }
            other => return Err(ConfigError::at(gline, format!("unknown generator `{other}`"))),
        };
        let partner = match self.raw("partner") {
            Some((line, v)) => Partner::parse(v).map_err(|e| ConfigError::at(*line, e))?,
            None => Partner::None,
        };
        let (cline, checks_raw) = self.required("checks")?;
        let mut checks = Vec::new();
        for word in checks_raw.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            let c: Check = word.parse().map_err(|e| ConfigError::at(*cline, e))?;
            if !checks.contains(&c) {
                checks.push(c);
            }
        }
        if checks.is_empty() {
            return Err(ConfigError::at(*cline, "no checks listed"));
        }
        let epsilon: Rat = self.parsed("epsilon", Some(Rat::new(1, 6)))?;
        if !epsilon.is_positive() || epsilon >= Rat::one() {
            let line = self.raw("epsilon").map_or(self.last, |e| e.0);
            return Err(ConfigError::at(line, "epsilon must lie strictly between 0 and 1"));
        }
        Ok(CampaignSpec {
            generator,
            partner,
            checks,
            dedup: self.parsed("dedup", Some(false))?,
            ceiling: self.parsed("ceiling", Some(DEFAULT_CEILING))?,
            threads: self.parsed("threads", Some(0))?,
            near_threshold: self.parsed("near_threshold", Some(Rat::one()))?,
            near_limit: self.parsed("near_limit", Some(20))?,
            epsilon,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let text = "# triangle sweep\ngenerator = exhaustive-grid\nwidth = 4\nheight = 4\nmin_points = 3\n\
                    max_points = 8\npartner = triangles 3 3\nchecks = triangleMixed, conj1\ndedup = true\nthreads=2\n";
        let spec = CampaignSpec::parse(text).unwrap();
        assert_eq!(spec.generator, Generator::ExhaustiveGrid { w: 4, h: 4, min_points: 3, max_points: 8 });
        assert_eq!(spec.partner, Partner::Triangles { w: 3, h: 3 });
        assert_eq!(spec.checks, vec![Check::TriangleMixed, Check::Conj1]);
        assert!(spec.dedup);
        assert_eq!(spec.threads, 2);
        assert_eq!(spec.near_threshold, Rat::one());
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("generator = random\nseed = x\n", 2, "seed"),
            (
                "generator = exhaustive-grid\nwidth = 3\nheight = 3\nmin_points = 3\nmax_points = 9\nchecks = nope\n",
                6,
                "nope",
            ),
            ("generator = named-instance\ninstance = grid-3-4\nchecks = conj1\nbogus = 1\n", 4, "bogus"),
            ("generator = named-instance\ninstance = grid-3-4\ninstance = grid-3-4\n", 3, "repeated"),
            (
                "generator = named-instance\ninstance = grid-3-4\nchecks = conj1\npartner = triangles 1 3\n",
                4,
                "triangles",
            ),
            ("generator = named-instance\ninstance = what\nchecks = conj1\n", 2, "what"),
        ];
        for (text, line, needle) in cases {
            let e = CampaignSpec::parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text}");
            assert!(e.to_string().contains(needle), "{e}");
        }
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>(), Ok(c));
        }
    }
}
