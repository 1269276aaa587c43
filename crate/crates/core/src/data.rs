//! Bundled generator data and the parser for the matrix generator file.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{decode_atlas_string, GroupWord, Mat};

pub const TRIALITY_ATLAS: &str = include_str!("../data/3d4_2.atlas");
pub const PSL3_4_PERM: &str = include_str!("../data/psl3_4.perm");

/// Small transitive actions used for cross-validation, as `(name, file text)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("s3_natural", include_str!("../data/corpus/s3_natural.perm")),
    ("c3_regular", include_str!("../data/corpus/c3_regular.perm")),
    ("c4_natural", include_str!("../data/corpus/c4_natural.perm")),
    ("klein4_regular", include_str!("../data/corpus/klein4_regular.perm")),
    ("d4_square", include_str!("../data/corpus/d4_square.perm")),
    ("s4_natural", include_str!("../data/corpus/s4_natural.perm")),
    ("a4_natural", include_str!("../data/corpus/a4_natural.perm")),
    ("s4_pairs", include_str!("../data/corpus/s4_pairs.perm")),
    ("d5_pentagon", include_str!("../data/corpus/d5_pentagon.perm")),
    ("a5_natural", include_str!("../data/corpus/a5_natural.perm")),
    ("s5_natural", include_str!("../data/corpus/s5_natural.perm")),
    ("c6_regular", include_str!("../data/corpus/c6_regular.perm")),
    ("d6_hexagon", include_str!("../data/corpus/d6_hexagon.perm")),
    ("s2wrs3_6", include_str!("../data/corpus/s2wrs3_6.perm")),
    ("frobenius21_7", include_str!("../data/corpus/frobenius21_7.perm")),
    ("psl2_7_7", include_str!("../data/corpus/psl2_7_7.perm")),
    ("agl1_8", include_str!("../data/corpus/agl1_8.perm")),
    ("s3wrs2_9", include_str!("../data/corpus/s3wrs2_9.perm")),
    ("a5_pairs10", include_str!("../data/corpus/a5_pairs10.perm")),
    ("c12_regular", include_str!("../data/corpus/c12_regular.perm")),
    ("psl3_4_21", PSL3_4_PERM),
    ("s4_cosets_c2_12", include_str!("../data/corpus/s4_cosets_c2_12.perm")),
];

/// Matrix generators plus named words, as read from an `.atlas` file.
#[derive(Clone, Debug)]
pub struct MatrixGroupData {
    pub spec: FieldSpec,
    pub names: Vec<char>,
    pub generators: Vec<Mat>,
    pub generator_strings: Vec<String>,
    pub words: Vec<(String, GroupWord, String)>,
}

impl MatrixGroupData {
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = None;
        let mut names = Vec::new();
        let mut strings = Vec::new();
        let mut raw_words = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse { pos: lineno + 1, msg: msg.to_string() };
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("field") => {
                    let coeffs = parts
                        .map(|p| p.parse::<u8>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("bad field coefficient"))?;
                    spec = Some(FieldSpec::from_coefficients(&coeffs)?);
                }
                Some("gen") => {
                    let name = parts.next().ok_or_else(|| bad("missing generator name"))?;
                    let body = parts.next().ok_or_else(|| bad("missing generator string"))?;
                    let mut cs = name.chars();
                    let c = cs.next().ok_or_else(|| bad("empty name"))?;
                    if cs.next().is_some() {
                        return Err(bad("generator names are single letters"));
                    }
                    names.push(c);
                    strings.push(body.to_string());
                }
                Some("word") => {
                    let name = parts.next().ok_or_else(|| bad("missing word name"))?;
                    let body: String = parts.collect::<Vec<_>>().join(" ");
                    raw_words.push((name.to_string(), body));
                }
                Some(other) => return Err(bad(&format!("unknown directive {other:?}"))),
                None => {}
            }
        }
        let spec = spec.ok_or_else(|| Error::Parse { pos: 0, msg: "no field line".into() })?;
        let generators = strings
            .iter()
            .map(|s| decode_atlas_string(s, spec))
            .collect::<Result<Vec<_>>>()?;
        for (name, g) in names.iter().zip(&generators) {
            if !g.is_invertible() {
                return Err(Error::Domain(format!("generator {name} is singular")));
            }
        }
        let words = raw_words
            .into_iter()
            .map(|(name, body)| Ok((name, GroupWord::parse(&body, &names)?, body)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixGroupData { spec, names, generators, generator_strings: strings, words })
    }

    pub fn word(&self, name: &str) -> Option<&GroupWord> {
        self.words.iter().find(|(n, _, _)| n == name).map(|(_, w, _)| w)
    }

    pub fn word_text(&self, name: &str) -> Option<&str> {
        self.words.iter().find(|(n, _, _)| n == name).map(|(_, _, t)| t.as_str())
    }
}

pub fn triality_data() -> &'static MatrixGroupData {
    static DATA: OnceLock<MatrixGroupData> = OnceLock::new();
    DATA.get_or_init(|| MatrixGroupData::parse(TRIALITY_ATLAS).expect("bundled data parses"))
}

#[cfg(test)]
pub(crate) const ATLAS_A: &str = ".0......0.......110.........0......0....66.660........0.44.33..0";
#[cfg(test)]
pub(crate) const ATLAS_B: &str = "11........0........0.........0........0........000.00.1.15.1.6.6";
#[cfg(test)]
pub(crate) const THEOREM_WORD: &str = "bab^-2ab^3ab^-1ab(bab^-2a)^2b^-2";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GF8;

    #[test]
    fn bundled_file_matches_listing() {
        let d = triality_data();
        assert_eq!(d.spec, GF8);
        assert_eq!(d.names, vec!['a', 'b']);
        assert_eq!(d.generator_strings, vec![ATLAS_A.to_string(), ATLAS_B.to_string()]);
        assert_eq!(d.word_text("x"), Some(THEOREM_WORD));
        assert!(d.word("x").is_some());
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(MatrixGroupData::parse("gen a ....").is_err());
        assert!(MatrixGroupData::parse("field 1 1 0 1\ngen a ...").is_err());
        assert!(MatrixGroupData::parse("field 1 1 0 1\nfoo").is_err());
        assert!(MatrixGroupData::parse("field 1 0 1\ngen a ....").is_err());
        // singular generator
        assert!(MatrixGroupData::parse("field 1 1 0 1\ngen a 0000").is_err());
    }
}
