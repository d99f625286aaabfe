use std::collections::HashMap;

use dqd_model::{BellState, StateSpec};

use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn key_values(body: &str) -> Result<HashMap<String, f64>, CliError> {
    let mut out = HashMap::new();
    for part in body.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got `{part}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("`{v}` is not a number")))?;
        out.insert(k.trim().to_ascii_lowercase(), v);
    }
    Ok(out)
}

fn take(kv: &HashMap<String, f64>, key: &str) -> Result<f64, CliError> {
    kv.get(key)
        .copied()
        .ok_or_else(|| usage(format!("missing `{key}=`")))
}

/// `bell:psi-`, `werner:p=0.33`, `belldiag:a=0.4,b=0.4`, `phase:gamma=1.57`,
/// `ent:a=0.2,alpha=0.1,beta=0.3` or `raw:<file>` (JSON 4×4 of [re, im] or 32 CSV numbers).
pub fn parse_state(text: &str) -> Result<StateSpec, CliError> {
    let (kind, body) = text.split_once(':').unwrap_or((text, ""));
    match kind.trim().to_ascii_lowercase().as_str() {
        "bell" => {
            let which = match body.trim().to_ascii_lowercase().as_str() {
                "phi+" => BellState::PhiPlus,
                "phi-" => BellState::PhiMinus,
                "psi+" => BellState::PsiPlus,
                "psi-" | "singlet" => BellState::PsiMinus,
                other => return Err(usage(format!("unknown Bell state `{other}`"))),
            };
            Ok(StateSpec::Bell { which })
        }
        "werner" => Ok(StateSpec::Werner {
            p: take(&key_values(body)?, "p")?,
        }),
        "belldiag" => {
            let kv = key_values(body)?;
            Ok(StateSpec::BellDiagonal {
                a: take(&kv, "a")?,
                b: take(&kv, "b")?,
            })
        }
        "phase" => Ok(StateSpec::PhaseFamily {
            gamma: take(&key_values(body)?, "gamma")?,
        }),
        "ent" => {
            let kv = key_values(body)?;
            let a = take(&kv, "a")?;
            Ok(StateSpec::EntFamily {
                a,
                b: kv.get("b").copied().unwrap_or(0.5 - a),
                alpha: kv.get("alpha").copied().unwrap_or(0.0),
                beta: kv.get("beta").copied().unwrap_or(0.0),
            })
        }
        "raw" => {
            let text = std::fs::read_to_string(body.trim())
                .map_err(|e| usage(format!("cannot read `{}`: {e}", body.trim())))?;
            parse_raw(&text)
        }
        other => Err(usage(format!("unknown state kind `{other}`"))),
    }
}

pub fn parse_raw(text: &str) -> Result<StateSpec, CliError> {
    if let Ok(matrix) = serde_json::from_str::<[[[f64; 2]; 4]; 4]>(text) {
        return Ok(StateSpec::Raw { matrix });
    }
    let nums: Vec<f64> = text
        .split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| usage(format!("`{s}` is not a number"))))
        .collect::<Result<_, _>>()?;
    if nums.len() != 32 {
        return Err(usage(format!(
            "raw state needs 16 (re, im) pairs, got {} numbers",
            nums.len()
        )));
    }
    let mut matrix = [[[0.0; 2]; 4]; 4];
    for (k, pair) in nums.chunks(2).enumerate() {
        matrix[k / 4][k % 4] = [pair[0], pair[1]];
    }
    Ok(StateSpec::Raw { matrix })
}

/// `lo:hi:step` (inclusive), or a comma-separated list, in tesla.
pub fn parse_fields(text: &str) -> Result<Vec<f64>, CliError> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("`{s}` is not a field value")))
    };
    let fields = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(usage("field range must be lo:hi:step"));
        }
        let (lo, hi, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || hi < lo {
            return Err(usage("field range needs step > 0 and hi >= lo"));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| lo + i as f64 * step).collect()
    } else {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(num)
            .collect::<Result<Vec<_>, _>>()?
    };
    if fields.is_empty() {
        return Err(usage("empty field list"));
    }
    Ok(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_strings() {
        assert_eq!(
            parse_state("bell:psi-").unwrap(),
            StateSpec::Bell { which: BellState::PsiMinus }
        );
        assert_eq!(parse_state("werner:p=0.33").unwrap(), StateSpec::Werner { p: 0.33 });
        assert_eq!(
            parse_state("belldiag:a=0.4,b=0.4").unwrap(),
            StateSpec::BellDiagonal { a: 0.4, b: 0.4 }
        );
        assert_eq!(
            parse_state("phase:gamma=1.5").unwrap(),
            StateSpec::PhaseFamily { gamma: 1.5 }
        );
        assert!(matches!(
            parse_state("ent:a=0.2").unwrap(),
            StateSpec::EntFamily { b, .. } if (b - 0.3).abs() < 1e-15
        ));
        assert!(parse_state("bell:xyz").is_err());
        assert!(parse_state("werner:q=1").is_err());
        assert!(parse_state("nothing").is_err());
    }

    #[test]
    fn raw_formats() {
        let mut csv = String::new();
        for k in 0..16 {
            let d = if k % 5 == 0 { 0.25 } else { 0.0 };
            csv.push_str(&format!("{d},0\n"));
        }
        let a = parse_raw(&csv).unwrap();
        let json = serde_json::to_string(&match &a {
            StateSpec::Raw { matrix } => *matrix,
            _ => unreachable!(),
        })
        .unwrap();
        assert_eq!(parse_raw(&json).unwrap(), a);
        assert!(parse_raw("1,2,3").is_err());
    }

    #[test]
    fn field_lists() {
        let f = parse_fields("0:0.1:0.005").unwrap();
        assert_eq!(f.len(), 21);
        assert!((f[20] - 0.1).abs() < 1e-15);
        assert_eq!(parse_fields("0.011").unwrap(), vec![0.011]);
        assert_eq!(parse_fields("0,0.5").unwrap(), vec![0.0, 0.5]);
        assert!(parse_fields("").is_err());
        assert!(parse_fields("0:1").is_err());
    }
}
