//! Plain-text cache files.
//!
//! One record per line, `g|e_1,...,e_n|numerator/denominator`, exponents
//! non-increasing, fraction in lowest terms with positive denominator, lines in
//! strictly increasing lexicographic order, every line newline-terminated:
//!
//! ```text
//! 0|1,1,1,0,0,0|6/1
//! 2|4|1/1152
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use psi_extrema::descendants::DescendantStore;
use psi_extrema::{DescendantKey, Rational};

#[derive(Debug, thiserror::Error)]
pub enum CacheFileError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("line {line}: record for {key} has {incoming}, cache holds {cached}")]
    Conflict {
        line: usize,
        key: String,
        cached: String,
        incoming: String,
    },

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

pub type Record = (DescendantKey, Rational);

pub fn render_record(key: &DescendantKey, value: &Rational) -> String {
    let exps: Vec<String> = key.exponents().iter().map(u32::to_string).collect();
    format!(
        "{}|{}|{}/{}",
        key.g(),
        exps.join(","),
        value.numer(),
        value.denom()
    )
}

/// Renders the store's contents in file order.
pub fn export_string<S: DescendantStore + ?Sized>(store: &S) -> String {
    let mut lines: Vec<String> = store
        .snapshot()
        .iter()
        .map(|(k, v)| render_record(k, v))
        .collect();
    lines.sort();
    let mut out = String::new();
    for line in lines {
        let _ = writeln!(out, "{line}");
    }
    out
}

fn malformed(line: usize, reason: impl Into<String>) -> CacheFileError {
    CacheFileError::Malformed {
        line,
        reason: reason.into(),
    }
}

/// Decimal digits without sign or superfluous leading zeros.
fn canonical_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

fn parse_u32(s: &str, line: usize, what: &str) -> Result<u32, CacheFileError> {
    if !canonical_digits(s) {
        return Err(malformed(
            line,
            format!("{what} `{s}` is not a canonical integer"),
        ));
    }
    s.parse()
        .map_err(|_| malformed(line, format!("{what} `{s}` is out of range")))
}

fn parse_bigint(s: &str, line: usize, what: &str) -> Result<BigInt, CacheFileError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if !canonical_digits(digits) || s == "-0" {
        return Err(malformed(
            line,
            format!("{what} `{s}` is not a canonical integer"),
        ));
    }
    s.parse()
        .map_err(|_| malformed(line, format!("{what} `{s}` is not an integer")))
}

pub fn parse_record(text: &str, line: usize) -> Result<Record, CacheFileError> {
    let fields: Vec<&str> = text.split('|').collect();
    let [g, exps, value] = fields[..] else {
        return Err(malformed(line, "expected three `|`-separated fields"));
    };
    let g = parse_u32(g, line, "genus")?;
    let exps = exps
        .split(',')
        .map(|x| parse_u32(x, line, "exponent"))
        .collect::<Result<Vec<_>, _>>()?;
    if exps.windows(2).any(|w| w[0] < w[1]) {
        return Err(malformed(line, "exponents are not non-increasing"));
    }
    let degree: u64 = exps.iter().map(|&x| u64::from(x)).sum();
    let key = DescendantKey::new(g, exps).map_err(|e| malformed(line, e.to_string()))?;
    if degree != u64::from(key.index().dimension()) {
        return Err(malformed(
            line,
            format!(
                "exponents sum to {degree}, dimension is {}",
                key.index().dimension()
            ),
        ));
    }

    let Some((num, den)) = value.split_once('/') else {
        return Err(malformed(line, "value must be `numerator/denominator`"));
    };
    let num = parse_bigint(num, line, "numerator")?;
    let den = parse_bigint(den, line, "denominator")?;
    if !den.is_positive() {
        return Err(malformed(line, "denominator must be positive"));
    }
    if !num.gcd(&den).is_one() && !(num.is_zero() && den.is_one()) {
        return Err(malformed(line, "fraction is not in lowest terms"));
    }
    Ok((key, Rational::new_raw(num, den)))
}

/// Parses a whole file, enforcing the line order and trailing newline.
pub fn parse(text: &str) -> Result<Vec<Record>, CacheFileError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(malformed(text.lines().count(), "missing final newline"));
    };
    let mut records = Vec::new();
    let mut previous: Option<&str> = None;
    for (k, line) in body.split('\n').enumerate() {
        let number = k + 1;
        if let Some(prev) = previous {
            if line <= prev {
                return Err(malformed(
                    number,
                    "lines are not in strictly increasing order",
                ));
            }
        }
        records.push(parse_record(line, number)?);
        previous = Some(line);
    }
    Ok(records)
}

/// Merges records into the store. Nothing is inserted if any record disagrees
/// with a value already cached.
pub fn merge<S: DescendantStore + ?Sized>(
    store: &S,
    records: Vec<Record>,
) -> Result<usize, CacheFileError> {
    for (line, (key, value)) in records.iter().enumerate() {
        if let Some(cached) = store.get(key) {
            if &cached != value {
                return Err(CacheFileError::Conflict {
                    line: line + 1,
                    key: render_record(key, value)
                        .rsplit_once('|')
                        .map(|(k, _)| k.to_string())
                        .unwrap_or_default(),
                    cached: cached.to_string(),
                    incoming: value.to_string(),
                });
            }
        }
    }
    let added = records
        .iter()
        .filter(|(key, _)| store.get(key).is_none())
        .count();
    for (key, value) in records {
        store.insert(key, value);
    }
    Ok(added)
}

pub fn read_file(path: &Path) -> Result<Vec<Record>, CacheFileError> {
    let text = fs::read_to_string(path).map_err(|source| CacheFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
pub fn write_file<S: DescendantStore + ?Sized>(
    path: &Path,
    store: &S,
) -> Result<(), CacheFileError> {
    let io_err = |source| CacheFileError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, export_string(store)).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}
