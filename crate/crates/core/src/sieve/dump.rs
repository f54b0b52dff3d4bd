//! Binary snapshot of a [`SieveSegment`] for resumable runs.
//!
//! Layout, all integers little-endian:
//!
//! | offset | size | field |
//! |--------|------|-------|
//! | 0  | 4 | magic `DXSV` |
//! | 4  | 4 | version (u32, currently 1) |
//! | 8  | 8 | lo (u64) |
//! | 16 | 8 | hi (u64) |
//! | 24 | 4 | m (u32) |
//! | 28 | w * len | `tau mod m`, `w` = 1, 2 or 4 bytes (narrowest holding `m - 1`) |
//! | .. | len | `omega`, one byte each |
//! | .. | len | squarefree flags, one byte each (0 or 1) |

use std::io::{Read, Write};

use super::{check_range, SieveSegment, TauResidues};
use crate::error::{Error, Result};

pub const DUMP_MAGIC: &[u8; 4] = b"DXSV";
pub const DUMP_VERSION: u32 = 1;

fn width_for(m: u32) -> usize {
    if m <= 1 << 8 {
        1
    } else if m <= 1 << 16 {
        2
    } else {
        4
    }
}

impl SieveSegment {
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(DUMP_MAGIC)?;
        w.write_all(&DUMP_VERSION.to_le_bytes())?;
        w.write_all(&self.lo.to_le_bytes())?;
        w.write_all(&self.hi.to_le_bytes())?;
        w.write_all(&self.m.to_le_bytes())?;
        match &self.tau_mod {
            TauResidues::U8(v) => w.write_all(v)?,
            TauResidues::U16(v) => {
                let bytes: Vec<u8> = v.iter().flat_map(|x| x.to_le_bytes()).collect();
                w.write_all(&bytes)?
            }
            TauResidues::U32(v) => {
                let bytes: Vec<u8> = v.iter().flat_map(|x| x.to_le_bytes()).collect();
                w.write_all(&bytes)?
            }
        }
        w.write_all(&self.omega)?;
        let flags: Vec<u8> = self.squarefree.iter().map(|&b| u8::from(b)).collect();
        w.write_all(&flags)?;
        Ok(())
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 28];
        r.read_exact(&mut header).map_err(|e| Error::Dump(format!("header: {e}")))?;
        if &header[0..4] != DUMP_MAGIC {
            return Err(Error::Dump("bad magic".into()));
        }
        let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
        if version != DUMP_VERSION {
            return Err(Error::Dump(format!("unsupported version {version}")));
        }
        let lo = u64::from_le_bytes(header[8..16].try_into().unwrap());
        let hi = u64::from_le_bytes(header[16..24].try_into().unwrap());
        let m = u32::from_le_bytes(header[24..28].try_into().unwrap());
        check_range(lo, hi).map_err(|e| Error::Dump(e.to_string()))?;
        if m < 3 || m % 2 == 0 {
            return Err(Error::Dump(format!("bad modulus {m}")));
        }
        let len = (hi - lo) as usize;
        let width = width_for(m);
        let mut body = vec![0u8; len * (width + 2)];
        r.read_exact(&mut body).map_err(|e| Error::Dump(format!("body: {e}")))?;
        let (tau_bytes, rest) = body.split_at(len * width);
        let (omega, flags) = rest.split_at(len);
        let tau_mod = match width {
            1 => TauResidues::U8(tau_bytes.to_vec()),
            2 => TauResidues::U16(tau_bytes.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]])).collect()),
            _ => {
                TauResidues::U32(tau_bytes.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
            }
        };
        if (0..len).any(|i| tau_mod.get(i) >= m) || flags.iter().any(|&b| b > 1) {
            return Err(Error::Dump("payload value out of range".into()));
        }
        Ok(SieveSegment {
            lo,
            hi,
            m,
            tau_mod,
            omega: omega.to_vec(),
            squarefree: flags.iter().map(|&b| b == 1).collect(),
        })
    }
}
