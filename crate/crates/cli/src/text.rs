//! Text grammars for relations, matrices, ideal matrices and ideals.

use smr_core::{Ideal, IdealMatrix, Matrix, Relation, RingCtx, SubringSet};

use crate::error::CliError;

fn number<T: std::str::FromStr>(token: &str, what: &str) -> Result<T, CliError> {
    token.trim().parse().map_err(|_| CliError::Invalid(format!("cannot read {what} from {token:?}")))
}

/// Whitespace-separated 1-based pairs `i,j`.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    s.split_whitespace()
        .map(|tok| {
            let (i, j) = tok
                .split_once(',')
                .ok_or_else(|| CliError::Invalid(format!("pair {tok:?} is not of the form i,j")))?;
            Ok((number(i, "index")?, number(j, "index")?))
        })
        .collect()
}

/// A relation either as `n; i,j ...` or as bare pairs with `n` given separately.
pub fn parse_relation(n: Option<usize>, s: &str) -> Result<Relation, CliError> {
    let (n, pairs) = match s.split_once(';') {
        Some((head, rest)) => {
            let inline: usize = number(head, "index count")?;
            if let Some(flag) = n.filter(|&k| k != inline) {
                return Err(CliError::Invalid(format!("--n {flag} disagrees with relation size {inline}")));
            }
            (inline, rest)
        }
        None => (n.ok_or_else(|| CliError::Invalid("relation needs --n or the form `n; i,j ...`".into()))?, s),
    };
    Ok(Relation::from_pairs(n, &parse_pairs(pairs)?)?)
}

/// Rows separated by `;`, entries by whitespace.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<u32>>, CliError> {
    let rows: Vec<Vec<u32>> = s
        .split(';')
        .map(|row| row.split_whitespace().map(|x| number(x, "entry")).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    if rows.iter().any(Vec::is_empty) {
        return Err(CliError::Invalid(format!("empty row in {s:?}")));
    }
    Ok(rows)
}

fn checked_rows(n: Option<usize>, s: &str) -> Result<Vec<Vec<u32>>, CliError> {
    let rows = parse_rows(s)?;
    if let Some(n) = n.filter(|&n| n != rows.len()) {
        return Err(CliError::Invalid(format!("--n {n} disagrees with {} rows", rows.len())));
    }
    Ok(rows)
}

pub fn parse_matrix(n: Option<usize>, ctx: RingCtx, s: &str) -> Result<Matrix, CliError> {
    let rows = checked_rows(n, s)?;
    let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
    Ok(Matrix::from_rows(ctx, &refs)?)
}

/// Generator rows; every entry must divide the modulus.
pub fn parse_imat(n: Option<usize>, ctx: RingCtx, s: &str) -> Result<IdealMatrix, CliError> {
    let rows = checked_rows(n, s)?;
    let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
    Ok(IdealMatrix::from_generators(ctx, &refs)?)
}

/// `(g)` or a bare generator `g`.
pub fn parse_ideal(ctx: RingCtx, s: &str) -> Result<Ideal, CliError> {
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    Ok(ctx.ideal(number(inner, "ideal generator")?)?)
}

pub fn relation(r: &Relation) -> String {
    format!("{r:?}")
}

pub fn ideal(i: &Ideal) -> String {
    format!("({})", i.generator())
}

fn rows_text<'a>(rows: impl Iterator<Item = Vec<u32>> + 'a) -> String {
    rows.map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
}

pub fn matrix(a: &Matrix) -> String {
    rows_text(a.rows().map(<[u32]>::to_vec))
}

pub fn imat(u: &IdealMatrix) -> String {
    let n = u.n();
    let g = u.generators();
    rows_text((0..n).map(|i| g[i * n..(i + 1) * n].to_vec()))
}

pub fn subring(s: &SubringSet) -> String {
    format!("{} elements of M_{}(Z_{}), digest {:#018x}", s.len(), s.n(), s.ring().modulus(), s.digest())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> RingCtx {
        RingCtx::new(m).unwrap()
    }

    #[test]
    fn relations_parse_in_both_forms() {
        let a = parse_relation(Some(3), "1,2 2,3").unwrap();
        let b = parse_relation(None, "3; 1,2 2,3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pairs(), vec![(1, 2), (2, 3)]);
        assert_eq!(relation(&a), "3; 1,2 2,3");
        assert_eq!(parse_relation(Some(2), "").unwrap().len(), 0);
        assert!(parse_relation(Some(2), "3; 1,1").is_err());
        assert!(parse_relation(None, "1,1").is_err());
        assert!(parse_relation(Some(2), "1-2").is_err());
        assert!(parse_relation(Some(2), "1,3").is_err());
        assert!(parse_relation(Some(2), "0,1").is_err());
    }

    #[test]
    fn matrices_round_trip_through_text() {
        let a = parse_matrix(None, z(4), "1 2; 0 1").unwrap();
        assert_eq!(a.get(0, 1), 2);
        assert_eq!(matrix(&a), "1 2; 0 1");
        assert!(parse_matrix(Some(3), z(4), "1 2; 0 1").is_err());
        assert!(parse_matrix(None, z(4), "1 2; 0").is_err());
        assert!(parse_matrix(None, z(4), "1 2;").is_err());
        assert!(parse_matrix(None, z(4), "1 x; 0 1").is_err());
    }

    #[test]
    fn ideal_matrices_are_strict_about_divisors() {
        let u = parse_imat(Some(2), z(4), "1 2; 4 1").unwrap();
        assert_eq!(imat(&u), "1 2; 4 1");
        assert!(parse_imat(None, z(4), "1 3; 4 1").is_err());
        assert!(parse_imat(None, z(4), "1 0; 4 1").is_err());
    }

    #[test]
    fn ideals_parse_with_or_without_parentheses() {
        assert_eq!(parse_ideal(z(12), "(4)").unwrap().generator(), 4);
        assert_eq!(parse_ideal(z(12), " 6 ").unwrap().generator(), 6);
        assert_eq!(ideal(&parse_ideal(z(12), "12").unwrap()), "(12)");
        assert!(parse_ideal(z(12), "(5)").is_err());
        assert!(parse_ideal(z(12), "(4").is_err());
    }
}
