//! Parsing of weights and Weyl words given on the command line.

use kmfaces::rational::{parse_q, q};
use kmfaces::{Realization, Weight, WeylElement, WeylGroup, Q};

use crate::CliError;

/// `"1,0"` or `"1/2, 0, -1"`; rank-length input is padded with zeros on the
/// complementary coordinates.
pub fn weight(text: &str, r: &Realization) -> Result<Weight, CliError> {
    let mut coords: Vec<Q> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_q)
        .collect::<Result<_, _>>()?;
    if coords.len() == r.rank() {
        coords.resize(r.dim_h(), q(0));
    }
    if coords.len() != r.dim_h() {
        return Err(CliError::Usage(format!(
            "weight {text:?} has {} coordinates; expected {} or {}",
            coords.len(),
            r.rank(),
            r.dim_h()
        )));
    }
    Ok(Weight::new(coords))
}

/// `"e"`, `"s0s1"`, `"0,1"` or `"0 1"`.
pub fn word(text: &str) -> Result<Vec<usize>, CliError> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(vec![]);
    }
    let bad = || CliError::Usage(format!("bad word {text:?}"));
    let parts: Vec<&str> = if t.starts_with('s') {
        t.split('s').skip(1).collect()
    } else {
        t.split([',', ' ']).filter(|s| !s.is_empty()).collect()
    };
    parts.iter().map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

pub fn element(text: &str, wg: &WeylGroup) -> Result<WeylElement, CliError> {
    Ok(wg.element(&word(text)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmfaces::Gcm;

    #[test]
    fn words() {
        assert_eq!(word("e").unwrap(), Vec::<usize>::new());
        assert_eq!(word("s1s0").unwrap(), vec![1, 0]);
        assert_eq!(word("s10s2").unwrap(), vec![10, 2]);
        assert_eq!(word("0, 1").unwrap(), vec![0, 1]);
        assert!(word("s1x").is_err());
    }

    #[test]
    fn weights() {
        let r = Realization::new(Gcm::affine_a(1));
        assert_eq!(weight("1,2", &r).unwrap(), Weight::from_ints(&[1, 2, 0]));
        assert_eq!(weight("1,2,-1", &r).unwrap(), Weight::from_ints(&[1, 2, -1]));
        assert!(weight("1", &r).is_err());
        assert!(weight("1/0,1", &r).is_err());
    }
}
