//! Parsing of class labels given on the command line.

use yangian_core::poly::Scalar;
use yangian_core::quiver::ClassLabel;

/// Accepts label JSON or the shorthands `S(v)`, `S(r;v)`, `TypeA(r;k1,k2;bits)`,
/// `B_M(i)`, `B_Discrete(n,j,v)` and `B_Band(d,λ,v)`.
pub fn parse_label(s: &str) -> Result<ClassLabel, String> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| format!("label JSON: {e}"));
    }
    let err = || format!("cannot parse label {s:?}");
    let (family, rest) = s.split_once('(').ok_or_else(err)?;
    let inner = rest.strip_suffix(')').ok_or_else(err)?;
    let groups: Vec<Vec<&str>> = inner
        .split(';')
        .map(|g| g.split(',').map(str::trim).collect())
        .collect();
    let groups: Vec<&[&str]> = groups.iter().map(Vec::as_slice).collect();
    let int = |t: &str| t.parse::<usize>().map_err(|_| err());
    let variant = |t: &str| t.parse::<u8>().map_err(|_| err());
    let label = match (family.trim(), groups.as_slice()) {
        ("S", [[v]]) => ClassLabel::Simple {
            vertex: int(v)?,
            r: None,
        },
        ("S", [[r], [v]]) => ClassLabel::Simple {
            vertex: int(v)?,
            r: Some(int(r)?),
        },
        ("TypeA", [[r], [k1, k2], [bits]]) => ClassLabel::TypeA {
            r: int(r)?,
            k1: int(k1)?,
            k2: int(k2)?,
            xi: bits
                .chars()
                .map(|c| c.to_digit(2).map(|d| d as u8).ok_or_else(err))
                .collect::<Result<_, _>>()?,
        },
        ("B_M", [[i]]) => ClassLabel::BM { i: int(i)? },
        ("B_Discrete", [[n, j, v]]) => ClassLabel::BDiscrete {
            n: int(n)?,
            j: int(j)?,
            variant: variant(v)?,
        },
        ("B_Band", [[d, l, v]]) => ClassLabel::BBand {
            d: int(d)?,
            lambda: l.parse::<Scalar>().map_err(|e| e.to_string())?,
            variant: variant(v)?,
        },
        _ => return Err(err()),
    };
    Ok(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use yangian_core::poly::q;

    #[test]
    fn shorthands() {
        assert_eq!(
            parse_label("B_Band(2,5/7,1)").unwrap(),
            ClassLabel::BBand {
                d: 2,
                lambda: q(5, 7),
                variant: 1
            }
        );
        assert_eq!(
            parse_label("TypeA(3;1,3;10)").unwrap(),
            ClassLabel::TypeA {
                r: 3,
                k1: 1,
                k2: 3,
                xi: vec![1, 0]
            }
        );
        assert_eq!(
            parse_label("S(2)").unwrap(),
            ClassLabel::Simple { vertex: 2, r: None }
        );
        assert_eq!(
            parse_label("S(3;2)").unwrap(),
            ClassLabel::Simple {
                vertex: 2,
                r: Some(3)
            }
        );
        assert_eq!(
            parse_label(r#"{"class":"B_M","i":1}"#).unwrap(),
            ClassLabel::BM { i: 1 }
        );
        assert!(parse_label("B_Band(2,x,1)").is_err());
        assert!(parse_label("Nope(1)").is_err());
    }
}
