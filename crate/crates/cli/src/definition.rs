//! Plain-text system definitions: `[section]` headers followed by
//! `key = value` lines; `#` starts a comment. A law section that appears
//! more than once adds a term to a weighted sum.
//!
//! ```text
//! [system]
//! dimension = 3
//! particles = 3          # identical; use `n_a = 2` for N_a + 1
//!
//! [kinetic]              # N_a + 1: [kinetic.a], [kinetic.b]
//! kind = power
//! coefficient = 0.5
//! exponent = 2
//!
//! [potential]            # N_a + 1: [potential.aa], [potential.ab]
//! kind = power
//! coefficient = 0.5
//! exponent = 2
//!
//! [quantum]
//! state = bgs            # bgs | fgs | explicit
//! method = et            # et | iet | dosm
//! ```

use std::collections::BTreeMap;

use envelope::qnum::Mode;
use envelope::Law;

use crate::InputError;

type Section = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Et,
    Iet,
    Dosm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Et => "et",
            Method::Iet => "iet",
            Method::Dosm => "dosm",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Bgs,
    Fgs {
        degeneracy: u32,
    },
    /// Internal Jacobi modes.
    Explicit(Vec<Mode>),
}

impl State {
    pub fn label(&self) -> String {
        match self {
            State::Bgs => "bgs".into(),
            State::Fgs { degeneracy } => format!("fgs(d={degeneracy})"),
            State::Explicit(modes) => modes
                .iter()
                .map(|m| format!("{} {}", m.n, m.l))
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Content {
    Identical {
        n: usize,
        kinetic: Law,
        potential: Law,
    },
    NPlusOne {
        n_a: usize,
        t_a: Law,
        t_b: Law,
        v_aa: Law,
        v_ab: Law,
        relative: Mode,
    },
}

#[derive(Debug, Clone)]
pub struct SystemDefinition {
    pub dim: u32,
    pub content: Content,
    pub state: State,
    pub method: Method,
    /// Multiplies reported energies, e.g. a unit conversion.
    pub scale: Option<f64>,
}

type Sections = BTreeMap<String, Vec<(usize, Section)>>;

fn parse_sections(text: &str) -> Result<Sections, InputError> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| {
                    InputError::new(format!("line {lineno}: unterminated section header"))
                })?
                .trim()
                .to_ascii_lowercase();
            sections
                .entry(name.clone())
                .or_default()
                .push((lineno, Section::new()));
            current = Some(name);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| InputError::new(format!("line {lineno}: expected `key = value`")))?;
        let name = current
            .as_ref()
            .ok_or_else(|| InputError::new(format!("line {lineno}: key outside of any section")))?;
        let (_, section) = sections
            .get_mut(name)
            .and_then(|v| v.last_mut())
            .expect("section exists");
        let key = key.trim().to_ascii_lowercase();
        if section
            .insert(key.clone(), value.trim().to_string())
            .is_some()
        {
            return Err(InputError::new(format!(
                "line {lineno}: duplicate key `{key}`"
            )));
        }
    }
    Ok(sections)
}

struct Reader<'a> {
    name: &'a str,
    line: usize,
    section: &'a Section,
}

impl Reader<'_> {
    fn err(&self, msg: impl std::fmt::Display) -> InputError {
        InputError::new(format!("[{}] (line {}): {msg}", self.name, self.line))
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.section.get(key).map(String::as_str)
    }

    fn num(&self, key: &str) -> Result<f64, InputError> {
        let v = self
            .raw(key)
            .ok_or_else(|| self.err(format!("missing `{key}`")))?;
        let x: f64 = v
            .parse()
            .map_err(|_| self.err(format!("`{key}` is not a number: {v}")))?;
        if !x.is_finite() {
            return Err(self.err(format!("`{key}` must be finite")));
        }
        Ok(x)
    }

    fn num_or(&self, key: &str, default: f64) -> Result<f64, InputError> {
        if self.raw(key).is_some() {
            self.num(key)
        } else {
            Ok(default)
        }
    }

    fn count<T: std::str::FromStr>(&self, key: &str) -> Result<T, InputError> {
        let v = self
            .raw(key)
            .ok_or_else(|| self.err(format!("missing `{key}`")))?;
        v.parse()
            .map_err(|_| self.err(format!("`{key}` must be a non-negative integer: {v}")))
    }

    fn only(&self, allowed: &[&str]) -> Result<(), InputError> {
        match self.section.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(self.err(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }
}

fn single<'a>(sections: &'a Sections, name: &'a str) -> Result<Option<Reader<'a>>, InputError> {
    match sections.get(name).map(Vec::as_slice) {
        None => Ok(None),
        Some([(line, section)]) => Ok(Some(Reader {
            name,
            line: *line,
            section,
        })),
        Some([_, (line, _), ..]) => Err(InputError::new(format!(
            "line {line}: section [{name}] repeated"
        ))),
        Some([]) => unreachable!("sections are created with one entry"),
    }
}

fn required<'a>(sections: &'a Sections, name: &'a str) -> Result<Reader<'a>, InputError> {
    single(sections, name)?.ok_or_else(|| InputError::new(format!("missing section [{name}]")))
}

fn law_term(r: &Reader) -> Result<(f64, Law), InputError> {
    let kind = r
        .raw("kind")
        .ok_or_else(|| r.err("missing `kind`"))?
        .to_ascii_lowercase();
    let (keys, law): (&[&str], Law) = match kind.as_str() {
        "power" => (
            &["coefficient", "exponent"],
            Law::power(r.num("coefficient")?, r.num("exponent")?),
        ),
        "signed_power" => (
            &["strength", "exponent"],
            Law::signed_power(r.num("strength")?, r.num("exponent")?).map_err(|e| r.err(e))?,
        ),
        "nonrelativistic" => {
            let m = r.num("mass")?;
            if !(m > 0.0) {
                return Err(r.err("`mass` must be > 0"));
            }
            (&["mass"], Law::nonrelativistic(m))
        }
        "ultrarelativistic" => (&[], Law::ultrarelativistic()),
        "coulomb" => (&["strength"], Law::coulomb(r.num("strength")?)),
        "harmonic" => (&["stiffness"], Law::harmonic(r.num("stiffness")?)),
        "gaussian" | "exponential" => {
            let (a, range) = (r.num("amplitude")?, r.num("range")?);
            if !(range > 0.0) {
                return Err(r.err("`range` must be > 0"));
            }
            let law = if kind == "gaussian" {
                Law::gaussian(a, range)
            } else {
                Law::exponential(a, range)
            };
            (&["amplitude", "range"], law)
        }
        other => return Err(r.err(format!("unknown law kind `{other}`"))),
    };
    let mut allowed = vec!["kind", "weight"];
    allowed.extend_from_slice(keys);
    r.only(&allowed)?;
    Ok((r.num_or("weight", 1.0)?, law))
}

fn law(sections: &Sections, name: &str) -> Result<Law, InputError> {
    let entries = sections
        .get(name)
        .ok_or_else(|| InputError::new(format!("missing section [{name}]")))?;
    let mut terms = entries
        .iter()
        .map(|(line, section)| {
            law_term(&Reader {
                name,
                line: *line,
                section,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if terms.len() == 1 && terms[0].0 == 1.0 {
        return Ok(terms.pop().expect("one term").1);
    }
    Law::weighted_sum(terms).map_err(|e| InputError::new(format!("[{name}]: {e}")))
}

/// `"n l; n l; ..."` → modes.
fn modes(r: &Reader, key: &str) -> Result<Vec<Mode>, InputError> {
    let Some(v) = r.raw(key) else {
        return Ok(Vec::new());
    };
    v.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let nums: Vec<u32> = pair
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| r.err(format!("bad mode `{pair}` in `{key}`")))
                })
                .collect::<Result<_, _>>()?;
            match nums.as_slice() {
                [n, l] => Ok(Mode::new(*n, *l)),
                _ => Err(r.err(format!("mode `{pair}` in `{key}` must be `n l`"))),
            }
        })
        .collect()
}

const LAW_SECTIONS: [&str; 6] = [
    "kinetic",
    "potential",
    "kinetic.a",
    "kinetic.b",
    "potential.aa",
    "potential.ab",
];

pub fn parse(text: &str) -> Result<SystemDefinition, InputError> {
    let sections = parse_sections(text)?;
    if let Some(unknown) = sections.keys().find(|k| {
        !["system", "quantum"].contains(&k.as_str()) && !LAW_SECTIONS.contains(&k.as_str())
    }) {
        return Err(InputError::new(format!("unknown section [{unknown}]")));
    }

    let sys = required(&sections, "system")?;
    sys.only(&["dimension", "particles", "n_a"])?;
    let dim: u32 = if sys.raw("dimension").is_some() {
        sys.count("dimension")?
    } else {
        3
    };
    if dim < 2 {
        return Err(sys.err("`dimension` must be >= 2"));
    }

    let quantum = single(&sections, "quantum")?;
    let empty = Section::new();
    let q = quantum.unwrap_or(Reader {
        name: "quantum",
        line: 0,
        section: &empty,
    });
    q.only(&[
        "state",
        "degeneracy",
        "modes",
        "relative",
        "method",
        "scale",
    ])?;

    let content = match (sys.raw("particles"), sys.raw("n_a")) {
        (Some(_), None) => {
            let n: usize = sys.count("particles")?;
            if n < 2 {
                return Err(sys.err("`particles` must be >= 2"));
            }
            if q.raw("relative").is_some() {
                return Err(q.err("`relative` only applies to N_a + 1 systems"));
            }
            Content::Identical {
                n,
                kinetic: law(&sections, "kinetic")?,
                potential: law(&sections, "potential")?,
            }
        }
        (None, Some(_)) => {
            let n_a: usize = sys.count("n_a")?;
            if n_a < 2 {
                return Err(sys.err("`n_a` must be >= 2"));
            }
            let relative = match modes(&q, "relative")?.as_slice() {
                [] => Mode::GROUND,
                [m] => *m,
                _ => return Err(q.err("`relative` takes a single mode")),
            };
            Content::NPlusOne {
                n_a,
                t_a: law(&sections, "kinetic.a")?,
                t_b: law(&sections, "kinetic.b")?,
                v_aa: law(&sections, "potential.aa")?,
                v_ab: law(&sections, "potential.ab")?,
                relative,
            }
        }
        _ => return Err(sys.err("give exactly one of `particles` (identical) or `n_a` (N_a + 1)")),
    };
    let stray: &[&str] = match content {
        Content::Identical { .. } => &LAW_SECTIONS[2..],
        Content::NPlusOne { .. } => &LAW_SECTIONS[..2],
    };
    if let Some(s) = stray.iter().find(|s| sections.contains_key(**s)) {
        return Err(InputError::new(format!(
            "section [{s}] does not match the particle content"
        )));
    }

    let state = match q
        .raw("state")
        .unwrap_or("bgs")
        .to_ascii_lowercase()
        .as_str()
    {
        "bgs" => State::Bgs,
        "fgs" => {
            let d: u32 = q.count("degeneracy")?;
            if d == 0 {
                return Err(q.err("`degeneracy` must be >= 1"));
            }
            State::Fgs { degeneracy: d }
        }
        "explicit" => State::Explicit(modes(&q, "modes")?),
        other => return Err(q.err(format!("unknown state `{other}`"))),
    };
    if !matches!(state, State::Fgs { .. }) && q.raw("degeneracy").is_some() {
        return Err(q.err("`degeneracy` only applies to state = fgs"));
    }
    if !matches!(state, State::Explicit(_)) && q.raw("modes").is_some() {
        return Err(q.err("`modes` only applies to state = explicit"));
    }
    let method = match q
        .raw("method")
        .unwrap_or("et")
        .to_ascii_lowercase()
        .as_str()
    {
        "et" => Method::Et,
        "iet" => Method::Iet,
        "dosm" => Method::Dosm,
        other => return Err(q.err(format!("unknown method `{other}`"))),
    };
    let scale = q.raw("scale").map(|_| q.num("scale")).transpose()?;

    Ok(SystemDefinition {
        dim,
        content,
        state,
        method,
        scale,
    })
}
