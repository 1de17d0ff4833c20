//! Search spec documents:
//!
//! ```json
//! {"p": 2, "d": 1, "n": 3, "mode": "Q1", "height": 1, "entries": "auto",
//!  "symmetry_pruning": true, "limit": 10, "budget": 1000000}
//! ```
//!
//! `mode` is one of `Q1`, `Q2`, `ZAUNER`, `ZAUNER_STRONG`, `EQUIANGULAR`; the
//! last needs `"a"` (rational string) and `"gamma"` (`"p^e"` or `"0"`). For
//! the Zauner modes `n` may be omitted and defaults to `d^2`.

use padic_welch::format::ConfigError;
use padic_welch::search::{EntrySet, SearchMode, SearchSpec};
use padic_welch::{AbsValue, Prime, Rational};
use serde::{Deserialize, Serialize};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntries {
    Keyword(String),
    List(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSearchSpec {
    p: u64,
    d: usize,
    n: Option<usize>,
    mode: String,
    height: Option<u64>,
    entries: Option<RawEntries>,
    symmetry_pruning: Option<bool>,
    limit: Option<usize>,
    budget: Option<u128>,
    a: Option<String>,
    gamma: Option<String>,
}

/// Command-line values that take precedence over the document.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchOverrides {
    pub mode: Option<String>,
    pub height: Option<u64>,
    pub limit: Option<usize>,
    pub budget: Option<u128>,
    pub no_pruning: bool,
}

fn field_error(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { field: Some(field.into()), line: None, column: None, message: message.into() }
}

pub fn parse_search_spec(document: &str, overrides: &SearchOverrides) -> Result<SearchSpec, ConfigError> {
    let raw: RawSearchSpec = serde_json::from_str(document).map_err(|e| ConfigError {
        field: None,
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    let p = Prime::new(raw.p).map_err(|_| field_error("p", format!("{} is not prime", raw.p)))?;
    let mode_name = overrides.mode.clone().unwrap_or(raw.mode);
    let mode = match mode_name.to_ascii_uppercase().replace('-', "_").as_str() {
        "Q1" => SearchMode::Q1,
        "Q2" => SearchMode::Q2,
        "ZAUNER" => SearchMode::Zauner,
        "ZAUNER_STRONG" => SearchMode::ZaunerStrong,
        "EQUIANGULAR" => {
            let a = raw.a.ok_or_else(|| field_error("a", "EQUIANGULAR mode needs a"))?;
            let a: Rational = a.parse().map_err(|e: padic_welch::Error| field_error("a", e.to_string()))?;
            let gamma = raw.gamma.ok_or_else(|| field_error("gamma", "EQUIANGULAR mode needs gamma"))?;
            let gamma = AbsValue::parse(&gamma, p).map_err(|e| field_error("gamma", e.to_string()))?;
            SearchMode::Equiangular { a, gamma }
        }
        other => return Err(field_error("mode", format!("unknown mode {other:?}"))),
    };
    let n = match (raw.n, &mode) {
        (Some(n), _) => n,
        (None, SearchMode::Zauner | SearchMode::ZaunerStrong) => raw.d * raw.d,
        (None, _) => return Err(field_error("n", "missing n")),
    };
    let entries = match raw.entries {
        None => EntrySet::Auto,
        Some(RawEntries::Keyword(k)) if k == "auto" => EntrySet::Auto,
        Some(RawEntries::Keyword(k)) => return Err(field_error("entries", format!("expected \"auto\" or a list, got {k:?}"))),
        Some(RawEntries::List(list)) => EntrySet::Explicit(
            list.iter()
                .enumerate()
                .map(|(i, s)| s.parse().map_err(|e: padic_welch::Error| field_error(&format!("entries[{i}]"), e.to_string())))
                .collect::<Result<_, _>>()?,
        ),
    };
    let defaults = SearchSpec::new(p, raw.d, n, mode.clone());
    Ok(SearchSpec {
        height: overrides.height.or(raw.height).unwrap_or(defaults.height),
        entries,
        symmetry_pruning: !overrides.no_pruning && raw.symmetry_pruning.unwrap_or(true),
        limit: overrides.limit.or(raw.limit),
        budget: overrides.budget.or(raw.budget).unwrap_or(defaults.budget),
        ..defaults
    })
}
