//! Text forms of indices, points and grid counts accepted on the command line.

use beltrami_core::eigenbasis::{MultiIndex, Operator, Sign};

use crate::error::{CliError, Result};

/// Parses `curl(n,m,k,±)` or `graddiv(n,m,k)`, the form printed by `MultiIndex`'s
/// `Display`. A missing curl sign means `+`. Whitespace is ignored.
pub fn multi_index(text: &str) -> Result<MultiIndex> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::usage(format!("cannot parse multi-index `{text}`"));
    let (head, rest) = compact.split_once('(').ok_or_else(bad)?;
    let body = rest.strip_suffix(')').ok_or_else(bad)?;
    let parts: Vec<&str> = body.split(',').collect();
    let operator = match head {
        "curl" => Operator::Curl,
        "graddiv" => Operator::GradDiv,
        _ => return Err(bad()),
    };
    let max_parts = if operator == Operator::Curl { 4 } else { 3 };
    if parts.len() < 3 || parts.len() > max_parts {
        return Err(bad());
    }
    let n: u32 = parts[0].parse().map_err(|_| bad())?;
    let m: u32 = parts[1].parse().map_err(|_| bad())?;
    let k: i32 = parts[2].parse().map_err(|_| bad())?;
    let sign = match parts.get(3).copied() {
        None | Some("+") => Sign::Plus,
        Some("-") => Sign::Minus,
        Some(_) => return Err(bad()),
    };
    Ok(MultiIndex::new(operator, n, m, k, sign)?)
}

/// Parses `x,y,z`.
pub fn point(text: &str) -> Result<[f64; 3]> {
    let v = reals(text, 3)?;
    Ok([v[0], v[1], v[2]])
}

/// Parses `n_r,n_theta,n_phi`.
pub fn counts(text: &str) -> Result<(usize, usize, usize)> {
    let bad = || {
        CliError::usage(format!(
            "expected three counts `nr,ntheta,nphi`, got `{text}`"
        ))
    };
    let v: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match v[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(bad()),
    }
}

/// Parses `a,b` as two positive integers.
pub fn pair(text: &str) -> Result<(u32, u32)> {
    let bad = || CliError::usage(format!("expected `n,m`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn reals(text: &str, len: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::usage(format!("cannot parse numbers in `{text}`")))?;
    if v.len() != len || v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::usage(format!(
            "expected {len} finite numbers, got `{text}`"
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for text in ["curl(2,1,-1,-)", "curl(1,1,0,+)", "graddiv(0,3,0)"] {
            assert_eq!(multi_index(text).unwrap().to_string(), text);
        }
        assert_eq!(
            multi_index(" curl( 1, 2, 1 ) ").unwrap().to_string(),
            "curl(1,2,1,+)"
        );
    }

    #[test]
    fn malformed_indices() {
        for text in [
            "curl(0,1,0,+)",
            "curl(1,1,2,+)",
            "div(1,1,0)",
            "graddiv(1,1)",
            "curl(1,1,0,*)",
        ] {
            assert!(multi_index(text).is_err(), "{text}");
        }
    }

    #[test]
    fn points_and_counts() {
        assert_eq!(point("0.4, 0, 0.2").unwrap(), [0.4, 0.0, 0.2]);
        assert!(point("1,2").is_err());
        assert!(point("1,nan,2").is_err());
        assert_eq!(counts("48,48,64").unwrap(), (48, 48, 64));
        assert!(counts("48,48").is_err());
        assert_eq!(pair("4,4").unwrap(), (4, 4));
    }
}
