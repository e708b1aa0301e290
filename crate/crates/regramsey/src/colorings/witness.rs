//! The bundled 42-vertex two-coloring witness and the first-interval
//! coloring built from it.
//!
//! The data file carries the upper-triangle adjacency bits of a 42-vertex
//! graph with no clique of size 5 and no independent set of size 5, hex
//! encoded with a sha256 checksum. The test suite re-verifies the no-mono-5
//! property by exhaustive search instead of trusting the file.

use super::{assert_domain, ColoringError, ColoringSpec, PairColoring};
use sha2::{Digest, Sha256};

pub const WITNESS_VERTICES: usize = 42;

const BUNDLED: &str = include_str!("../../data/ramsey42.txt");

/// A two-colored complete graph on 42 vertices, stored as adjacency rows.
/// Color 1 is "edge", color 0 is "non-edge".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessGraph {
    rows: [u64; WITNESS_VERTICES],
}

impl WitnessGraph {
    /// Parse the documented witness format:
    ///
    /// ```text
    /// # comment lines
    /// vertices: 42
    /// data: <216 hex chars: upper-triangle bits (m<n), row-major, MSB first,
    ///        3 zero padding bits>
    /// sha256: <hex digest of the data value>
    /// ```
    pub fn parse(text: &str) -> Result<Self, ColoringError> {
        let mut vertices: Option<usize> = None;
        let mut data: Option<String> = None;
        let mut checksum: Option<String> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| ColoringError::BadWitnessFile(format!("malformed line: {line}")))?;
            match key.trim() {
                "vertices" => {
                    vertices = Some(value.trim().parse().map_err(|_| {
                        ColoringError::BadWitnessFile("unreadable vertex count".into())
                    })?)
                }
                "data" => data = Some(value.trim().to_string()),
                "sha256" => checksum = Some(value.trim().to_lowercase()),
                other => {
                    return Err(ColoringError::BadWitnessFile(format!(
                        "unknown field: {other}"
                    )))
                }
            }
        }
        let vertices =
            vertices.ok_or_else(|| ColoringError::BadWitnessFile("missing vertices".into()))?;
        if vertices != WITNESS_VERTICES {
            return Err(ColoringError::BadWitnessFile(format!(
                "expected {WITNESS_VERTICES} vertices, file has {vertices}"
            )));
        }
        let data = data.ok_or_else(|| ColoringError::BadWitnessFile("missing data".into()))?;
        let checksum =
            checksum.ok_or_else(|| ColoringError::BadWitnessFile("missing sha256".into()))?;
        let digest = hex::encode(Sha256::digest(data.as_bytes()));
        if digest != checksum {
            return Err(ColoringError::BadWitnessFile(format!(
                "checksum mismatch: file says {checksum}, data hashes to {digest}"
            )));
        }
        let n_pairs = WITNESS_VERTICES * (WITNESS_VERTICES - 1) / 2;
        let expect_chars = n_pairs.div_ceil(4);
        if data.len() != expect_chars {
            return Err(ColoringError::BadWitnessFile(format!(
                "expected {expect_chars} hex chars, found {}",
                data.len()
            )));
        }
        let mut bits = Vec::with_capacity(data.len() * 4);
        for ch in data.chars() {
            let v = ch.to_digit(16).ok_or_else(|| {
                ColoringError::BadWitnessFile(format!("non-hex character: {ch}"))
            })?;
            for shift in (0..4).rev() {
                bits.push(v >> shift & 1 == 1);
            }
        }
        let mut rows = [0u64; WITNESS_VERTICES];
        let mut idx = 0;
        for i in 0..WITNESS_VERTICES {
            for j in (i + 1)..WITNESS_VERTICES {
                if bits[idx] {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                idx += 1;
            }
        }
        Ok(WitnessGraph { rows })
    }

    /// The witness shipped with the crate.
    pub fn bundled() -> Result<Self, ColoringError> {
        Self::parse(BUNDLED)
    }

    /// Render a graph in the documented file format (with checksum).
    pub fn to_file_string(&self, comment: &str) -> String {
        let mut bits = Vec::new();
        for i in 0..WITNESS_VERTICES {
            for j in (i + 1)..WITNESS_VERTICES {
                bits.push(self.edge(i, j));
            }
        }
        while bits.len() % 4 != 0 {
            bits.push(false);
        }
        let data: String = bits
            .chunks(4)
            .map(|c| {
                let v = (c[0] as u32) << 3 | (c[1] as u32) << 2 | (c[2] as u32) << 1 | c[3] as u32;
                char::from_digit(v, 16).unwrap()
            })
            .collect();
        let digest = hex::encode(Sha256::digest(data.as_bytes()));
        let mut out = String::new();
        for line in comment.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!(
            "vertices: {WITNESS_VERTICES}\ndata: {data}\nsha256: {digest}\n"
        ));
        out
    }

    pub fn edge(&self, a: usize, b: usize) -> bool {
        assert!(a < WITNESS_VERTICES && b < WITNESS_VERTICES && a != b);
        self.rows[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.rows[v].count_ones()
    }

    /// Exhaustive search for a monochromatic 5-set: a 5-clique in the edge
    /// color or in its complement. Returns the vertices of the first one
    /// found.
    pub fn find_mono_k5(&self) -> Option<([usize; 5], u64)> {
        const FULL: u64 = (1u64 << WITNESS_VERTICES) - 1;
        for color in [1u64, 0] {
            let row = |v: usize| -> u64 {
                if color == 1 {
                    self.rows[v]
                } else {
                    FULL & !self.rows[v] & !(1u64 << v)
                }
            };
            let above = |v: usize| -> u64 { FULL & !((1u64 << (v + 1)) - 1) };
            for a in 0..WITNESS_VERTICES {
                let ca = row(a) & above(a);
                let mut bs = ca;
                while bs != 0 {
                    let b = bs.trailing_zeros() as usize;
                    bs &= bs - 1;
                    let cb = ca & row(b) & above(b);
                    let mut cs = cb;
                    while cs != 0 {
                        let c = cs.trailing_zeros() as usize;
                        cs &= cs - 1;
                        let cd = cb & row(c) & above(c);
                        let mut ds = cd;
                        while ds != 0 {
                            let d = ds.trailing_zeros() as usize;
                            ds &= ds - 1;
                            let es = cd & row(d) & above(d);
                            if es != 0 {
                                let e = es.trailing_zeros() as usize;
                                return Some(([a, b, c, d, e], color));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// The first-interval coloring on `[0, 43)`: elements `1..43` carry the
/// bundled 42-vertex witness (element `e` is vertex `e - 1`), and every
/// pair with minimum below 2 is colored 0 so the coloring stays legal under
/// bounds with `g(0) = 0` or `g(1) <= 1`.
pub struct SmallIntervalColoring {
    graph: WitnessGraph,
}

pub const SMALL_INTERVAL_HI: u64 = 43;

impl SmallIntervalColoring {
    pub fn bundled() -> Result<Self, ColoringError> {
        Ok(SmallIntervalColoring {
            graph: WitnessGraph::bundled()?,
        })
    }

    pub fn from_graph(graph: WitnessGraph) -> Self {
        SmallIntervalColoring { graph }
    }

    pub fn graph(&self) -> &WitnessGraph {
        &self.graph
    }
}

impl PairColoring for SmallIntervalColoring {
    fn domain(&self) -> (u64, u64) {
        (0, SMALL_INTERVAL_HI)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(0, SMALL_INTERVAL_HI, m, n);
        if m < 2 {
            return 0;
        }
        self.graph.edge(m as usize - 1, n as usize - 1) as u64
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(ColoringSpec::SmallInterval).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_parses_with_valid_checksum() {
        let g = WitnessGraph::bundled().unwrap();
        // spot access must be symmetric
        for a in 0..WITNESS_VERTICES {
            for b in 0..WITNESS_VERTICES {
                if a != b {
                    assert_eq!(g.edge(a, b), g.edge(b, a));
                }
            }
        }
    }

    #[test]
    fn bundled_graph_has_no_mono_5() {
        let g = WitnessGraph::bundled().unwrap();
        assert_eq!(g.find_mono_k5(), None, "bundled witness has a mono 5-set");
    }

    #[test]
    fn file_round_trip() {
        let g = WitnessGraph::bundled().unwrap();
        let text = g.to_file_string("round trip");
        let back = WitnessGraph::parse(&text).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn corrupted_checksum_is_rejected() {
        let g = WitnessGraph::bundled().unwrap();
        let text = g.to_file_string("tampered");
        let tampered = text.replace("sha256: ", "sha256: 00");
        assert!(matches!(
            WitnessGraph::parse(&tampered),
            Err(ColoringError::BadWitnessFile(_))
        ));
    }

    #[test]
    fn small_interval_coloring_shape() {
        let c = SmallIntervalColoring::bundled().unwrap();
        for m in 0..43u64 {
            for n in (m + 1)..43 {
                let color = c.color(m, n);
                assert!(color <= 1);
                if m < 2 {
                    assert_eq!(color, 0);
                }
            }
        }
    }

    #[test]
    fn mono_k5_search_detects_planted_cliques() {
        // the empty graph's complement is complete: a mono 5-set exists
        let empty = WitnessGraph {
            rows: [0; WITNESS_VERTICES],
        };
        let (_, color) = empty.find_mono_k5().unwrap();
        assert_eq!(color, 0);
    }
}
