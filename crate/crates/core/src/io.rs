//! Index file format.
//!
//! Both index kinds share the container: magic `WTQ1`, then a 4-byte
//! little-endian version that doubles as the kind tag (1 = sequence index,
//! 2 = document index). All remaining fields are little-endian u64 unless
//! noted.
//!
//! Sequence payload: n, sigma, depth, the sigma alphabet values, then per
//! level the bit length followed by `ceil(bits/64)` packed words.
//!
//! Document payload: doc_count, the doc_count document start offsets, text
//! length and raw text bytes, the n suffix-array entries, then the document
//! array's wavelet tree in the sequence payload layout.
//!
//! Only raw bits are stored; rank directories are rebuilt on load.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use num_traits::NumCast;

use crate::bitvector::BitVector;
use crate::doclist::DocIndex;
use crate::error::{Error, Result};
use crate::wavelet_tree::{AlphabetMap, WaveletTree};
use crate::Symbol;

pub const MAGIC: [u8; 4] = *b"WTQ1";
pub const VERSION_SEQUENCE: u32 = 1;
pub const VERSION_DOCUMENTS: u32 = 2;

/// A loaded index of either kind.
pub enum Index {
    Sequence(WaveletTree<u64>),
    Documents(DocIndex),
}

impl<S: Symbol> WaveletTree<S> {
    pub fn serialize_into<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&MAGIC)?;
        w.write_u32::<LittleEndian>(VERSION_SEQUENCE)?;
        self.write_body(w)
    }

    pub fn deserialize_from<R: Read>(r: &mut R) -> Result<Self> {
        read_header(r, VERSION_SEQUENCE)?;
        Self::read_body(r)
    }

    pub(crate) fn write_body<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_u64::<LittleEndian>(self.len() as u64)?;
        w.write_u64::<LittleEndian>(self.alphabet().len() as u64)?;
        w.write_u64::<LittleEndian>(self.depth() as u64)?;
        for &v in self.alphabet().symbols() {
            let v: u64 = NumCast::from(v).expect("unsigned symbol fits u64");
            w.write_u64::<LittleEndian>(v)?;
        }
        for d in 0..self.depth() {
            let level = self.level(d).expect("level in range");
            w.write_u64::<LittleEndian>(level.len() as u64)?;
            for &word in level.words() {
                w.write_u64::<LittleEndian>(word)?;
            }
        }
        Ok(())
    }

    pub(crate) fn read_body<R: Read>(r: &mut R) -> Result<Self> {
        let n = r.read_u64::<LittleEndian>()? as usize;
        let sigma = r.read_u64::<LittleEndian>()? as usize;
        let depth = r.read_u64::<LittleEndian>()? as usize;
        if n == 0 || sigma == 0 || sigma > n {
            return Err(Error::Format(format!(
                "implausible header: n={n}, sigma={sigma}"
            )));
        }
        let mut distinct = Vec::with_capacity(sigma);
        for _ in 0..sigma {
            let v = r.read_u64::<LittleEndian>()?;
            let v: S = NumCast::from(v).ok_or(Error::SymbolOverflow { value: v })?;
            distinct.push(v);
        }
        let alphabet = AlphabetMap::from_sorted(distinct)?;
        let mut levels = Vec::with_capacity(depth);
        for _ in 0..depth {
            let bits = r.read_u64::<LittleEndian>()? as usize;
            if bits > n {
                return Err(Error::Format(format!("level of {bits} bits exceeds n={n}")));
            }
            let mut words = vec![0u64; bits.div_ceil(64)];
            for word in &mut words {
                *word = r.read_u64::<LittleEndian>()?;
            }
            levels.push(BitVector::from_raw_parts(words, bits));
        }
        Ok(WaveletTree::from_parts(n, alphabet, levels))
    }
}

impl DocIndex {
    pub fn serialize_into<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&MAGIC)?;
        w.write_u32::<LittleEndian>(VERSION_DOCUMENTS)?;
        w.write_u64::<LittleEndian>(self.doc_count() as u64)?;
        for &b in self.doc_boundaries() {
            w.write_u64::<LittleEndian>(b as u64)?;
        }
        w.write_u64::<LittleEndian>(self.text_len() as u64)?;
        w.write_all(self.text())?;
        for &p in self.suffix_array() {
            w.write_u64::<LittleEndian>(p as u64)?;
        }
        self.e_tree().write_body(w)
    }

    pub fn deserialize_from<R: Read>(r: &mut R) -> Result<Self> {
        read_header(r, VERSION_DOCUMENTS)?;
        Self::read_body(r)
    }

    pub(crate) fn read_body<R: Read>(r: &mut R) -> Result<Self> {
        let doc_count = r.read_u64::<LittleEndian>()? as usize;
        if doc_count == 0 {
            return Err(Error::Format("zero documents".into()));
        }
        let mut doc_boundaries = Vec::with_capacity(doc_count);
        for _ in 0..doc_count {
            doc_boundaries.push(r.read_u64::<LittleEndian>()? as usize);
        }
        let text_len = r.read_u64::<LittleEndian>()? as usize;
        let mut text = vec![0u8; text_len];
        r.read_exact(&mut text)?;
        let mut sa = Vec::with_capacity(text_len);
        for _ in 0..text_len {
            let p = r.read_u64::<LittleEndian>()?;
            if p as usize >= text_len {
                return Err(Error::Format(format!("suffix position {p} out of range")));
            }
            sa.push(p as u32);
        }
        let e_tree = WaveletTree::<u32>::read_body(r)?;
        if e_tree.len() != text_len {
            return Err(Error::Format(
                "document array length disagrees with text length".into(),
            ));
        }
        Ok(DocIndex::from_parts(text, doc_boundaries, sa, e_tree))
    }
}

fn read_header<R: Read>(r: &mut R, expected_version: u32) -> Result<()> {
    let version = read_magic_and_version(r)?;
    if version != expected_version {
        return Err(Error::Format(format!(
            "index kind mismatch: found version {version}, expected {expected_version}"
        )));
    }
    Ok(())
}

fn read_magic_and_version<R: Read>(r: &mut R) -> Result<u32> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    Ok(r.read_u32::<LittleEndian>()?)
}

/// Reads an index file of either kind, dispatching on the version tag.
pub fn read_index_file(path: &Path) -> Result<Index> {
    let mut r = BufReader::new(File::open(path)?);
    match read_magic_and_version(&mut r)? {
        VERSION_SEQUENCE => Ok(Index::Sequence(WaveletTree::read_body(&mut r)?)),
        VERSION_DOCUMENTS => Ok(Index::Documents(DocIndex::read_body(&mut r)?)),
        v => Err(Error::Format(format!("unknown version {v}"))),
    }
}

pub fn write_sequence_index(path: &Path, wt: &WaveletTree<u64>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    wt.serialize_into(&mut w)?;
    Ok(w.flush()?)
}

pub fn write_document_index(path: &Path, idx: &DocIndex) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    idx.serialize_into(&mut w)?;
    Ok(w.flush()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_round_trip() {
        let s = [6u64, 2, 0, 7, 9, 3, 1, 8, 5, 4];
        let wt = WaveletTree::build(&s).unwrap();
        let mut buf = Vec::new();
        wt.serialize_into(&mut buf).unwrap();
        let loaded = WaveletTree::<u64>::deserialize_from(&mut buf.as_slice()).unwrap();
        assert_eq!(loaded.len(), wt.len());
        assert_eq!(loaded.alphabet().symbols(), wt.alphabet().symbols());
        for i in 1..=s.len() {
            assert_eq!(loaded.access(i).unwrap(), s[i - 1]);
        }
        assert_eq!(loaded.quantile(5, 3, 9).unwrap(), 7);
    }

    #[test]
    fn narrow_symbol_type_rejects_wide_values() {
        let wt = WaveletTree::build(&[300u64, 1]).unwrap();
        let mut buf = Vec::new();
        wt.serialize_into(&mut buf).unwrap();
        assert!(matches!(
            WaveletTree::<u8>::deserialize_from(&mut buf.as_slice()),
            Err(Error::SymbolOverflow { value: 300 })
        ));
        assert!(WaveletTree::<u16>::deserialize_from(&mut buf.as_slice()).is_ok());
    }

    #[test]
    fn document_round_trip() {
        let idx = DocIndex::build(&["abracadabra", "bandana", "cab"]).unwrap();
        let mut buf = Vec::new();
        idx.serialize_into(&mut buf).unwrap();
        let loaded = DocIndex::deserialize_from(&mut buf.as_slice()).unwrap();
        assert_eq!(loaded.doc_count(), 3);
        assert_eq!(
            loaded.list_documents(b"ab").unwrap(),
            vec![(1, 2), (3, 1)]
        );
    }

    #[test]
    fn bad_magic_is_rejected() {
        let buf = b"NOPE\x01\x00\x00\x00";
        assert!(matches!(
            WaveletTree::<u64>::deserialize_from(&mut &buf[..]),
            Err(Error::Format(_))
        ));
    }
}
