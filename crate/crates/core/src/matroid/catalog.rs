use std::fmt;
use std::str::FromStr;

use crate::algebra::{ExactMatrix, Field};

use super::{matroid_from_graph, matroid_from_matrix, Graph, Matroid, MatroidError};

/// Named matroids available without input files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Fano,
    NonFano,
    Vamos,
    MoebiusKantor,
    Pappus,
    /// Graphic matroid of the complete graph on four vertices.
    K4,
    Uniform { rank: usize, n: usize },
}

impl CatalogName {
    /// The fixed (non-uniform) entries, in a stable order.
    pub const NAMED: [CatalogName; 6] = [
        CatalogName::Fano,
        CatalogName::NonFano,
        CatalogName::Vamos,
        CatalogName::MoebiusKantor,
        CatalogName::Pappus,
        CatalogName::K4,
    ];
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Fano => write!(f, "fano"),
            CatalogName::NonFano => write!(f, "non_fano"),
            CatalogName::Vamos => write!(f, "vamos"),
            CatalogName::MoebiusKantor => write!(f, "moebius_kantor"),
            CatalogName::Pappus => write!(f, "pappus"),
            CatalogName::K4 => write!(f, "k4"),
            CatalogName::Uniform { rank, n } => write!(f, "uniform({rank},{n})"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = MatroidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || MatroidError::UnknownName(s.to_string());
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "fano" => CatalogName::Fano,
            "non_fano" | "nonfano" | "non-fano" => CatalogName::NonFano,
            "vamos" => CatalogName::Vamos,
            "moebius_kantor" | "mobius_kantor" | "moebius-kantor" => CatalogName::MoebiusKantor,
            "pappus" => CatalogName::Pappus,
            "k4" | "graphic_k4" => CatalogName::K4,
            _ => {
                let args = t
                    .strip_prefix("uniform(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(unknown)?;
                let (r, n) = args.split_once(',').ok_or_else(unknown)?;
                let rank = r.trim().parse().map_err(|_| unknown())?;
                let n = n.trim().parse().map_err(|_| unknown())?;
                if rank > n {
                    return Err(unknown());
                }
                CatalogName::Uniform { rank, n }
            }
        })
    }
}

fn fano_matrix() -> ExactMatrix {
    // column c is the binary expansion of c
    let rows: Vec<Vec<i64>> = (0..3)
        .map(|bit| (1..=7).map(|c| ((c >> bit) & 1) as i64).collect())
        .collect();
    ExactMatrix::from_i64_rows(&Field::Prime(2), &rows).expect("valid F_2 matrix")
}

/// Builds a catalog matroid. Every entry goes through the validating
/// constructors.
pub fn catalog(name: CatalogName) -> Result<Matroid, MatroidError> {
    match name {
        CatalogName::Fano => matroid_from_matrix(&fano_matrix()),
        // Fano with the line {3,5,6} relaxed to a basis
        CatalogName::NonFano => Matroid::from_nonbases(
            7,
            3,
            &[
                vec![1, 2, 3],
                vec![1, 4, 5],
                vec![1, 6, 7],
                vec![2, 4, 6],
                vec![2, 5, 7],
                vec![3, 4, 7],
            ],
        ),
        // pairs {1,2},{3,4},{5,6},{7,8}; every union of two pairs except {5,6,7,8}
        // is a circuit-hyperplane
        CatalogName::Vamos => Matroid::from_nonbases(
            8,
            4,
            &[
                vec![1, 2, 3, 4],
                vec![1, 2, 5, 6],
                vec![1, 2, 7, 8],
                vec![3, 4, 5, 6],
                vec![3, 4, 7, 8],
            ],
        ),
        // the cyclic 8_3 configuration {i, i+1, i+3} mod 8
        CatalogName::MoebiusKantor => {
            let lines: Vec<Vec<usize>> = (0..8)
                .map(|i| [i, i + 1, i + 3].iter().map(|v| v % 8 + 1).collect())
                .collect();
            Matroid::from_nonbases(8, 3, &lines)
        }
        // A1..A3 = 1..3 and B1..B3 = 4..6 on two lines; 7, 8, 9 are the
        // cross-joins of (1,2), (1,3), (2,3)
        CatalogName::Pappus => Matroid::from_nonbases(
            9,
            3,
            &[
                vec![1, 2, 3],
                vec![4, 5, 6],
                vec![7, 8, 9],
                vec![1, 5, 7],
                vec![2, 4, 7],
                vec![1, 6, 8],
                vec![3, 4, 8],
                vec![2, 6, 9],
                vec![3, 5, 9],
            ],
        ),
        CatalogName::K4 => matroid_from_graph(&Graph::complete(4)),
        CatalogName::Uniform { rank, n } => Matroid::uniform(rank, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let cases = [
            (CatalogName::Fano, 7, 3, 28),
            (CatalogName::NonFano, 7, 3, 29),
            (CatalogName::Vamos, 8, 4, 65),
            (CatalogName::MoebiusKantor, 8, 3, 48),
            (CatalogName::Pappus, 9, 3, 75),
            (CatalogName::K4, 6, 3, 16),
        ];
        for (name, n, r, b) in cases {
            let m = catalog(name).unwrap();
            assert_eq!((m.n(), m.rank(), m.bases().len()), (n, r, b), "{name}");
            assert!(m.is_simple(), "{name}");
        }
    }

    #[test]
    fn fano_lines_are_the_rank_two_flats() {
        let m = catalog(CatalogName::Fano).unwrap();
        let lines = m.flats_of_rank(2);
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn uniform_two_four() {
        let m = catalog("uniform(2,4)".parse().unwrap()).unwrap();
        assert_eq!(m.bases().len(), 6);
    }

    #[test]
    fn names_round_trip() {
        for name in CatalogName::NAMED {
            assert_eq!(name.to_string().parse::<CatalogName>().unwrap(), name);
        }
        assert!("dodecahedron".parse::<CatalogName>().is_err());
        assert!("uniform(5,3)".parse::<CatalogName>().is_err());
    }
}
