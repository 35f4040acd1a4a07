//! Labelled mode slots.
//!
//! Every basis index in this crate is read against a [`ModeRegister`]: slot 0
//! is the most significant bit, so a ket such as `|1_A 0_B 0_C 1_DI 0_DII>`
//! maps to the bit string `10010` in slot order. Slots are kept in canonical
//! order: parties ascending, and for an accelerated party the Region-I slot
//! directly precedes its Region-II slot.

use std::fmt;

use crate::error::{Error, Result};

/// Largest number of parties a state constructor accepts.
pub const MAX_PARTIES: usize = 8;
/// Largest register (2^10 amplitudes); keeps every dense object small.
pub const MAX_SLOTS: usize = 10;

/// An observer, labelled `A`, `B`, `C`, ... in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Party(u8);

impl Party {
    pub const A: Party = Party(0);
    pub const B: Party = Party(1);
    pub const C: Party = Party(2);
    pub const D: Party = Party(3);

    /// The four observers of the tetrapartite setting.
    pub const ABCD: [Party; 4] = [Party::A, Party::B, Party::C, Party::D];

    pub fn new(index: usize) -> Result<Self> {
        if index >= MAX_PARTIES {
            return Err(Error::TooManyParties(index + 1));
        }
        Ok(Party(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn letter(self) -> char {
        (b'A' + self.0) as char
    }

    pub fn from_letter(c: char) -> Option<Self> {
        let c = c.to_ascii_uppercase();
        if !c.is_ascii_uppercase() {
            return None;
        }
        let index = (c as u8 - b'A') as usize;
        (index < MAX_PARTIES).then_some(Party(index as u8))
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Where a mode lives: an inertial (Minkowski) mode, or one of the two
/// Rindler wedges of an accelerated observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Minkowski,
    RindlerI,
    RindlerII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub party: Party,
    pub region: Region,
}

impl Slot {
    pub fn new(party: Party, region: Region) -> Self {
        Slot { party, region }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.region {
            Region::Minkowski => write!(f, "{}", self.party),
            Region::RindlerI => write!(f, "{}_I", self.party),
            Region::RindlerII => write!(f, "{}_II", self.party),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeRegister {
    slots: Vec<Slot>,
}

impl ModeRegister {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if slots.len() > MAX_SLOTS {
            return Err(Error::InvalidRegister(format!(
                "{} slots exceeds the limit of {MAX_SLOTS}",
                slots.len()
            )));
        }
        for w in slots.windows(2) {
            if w[0] >= w[1] {
                let why = if w[0] == w[1] {
                    "duplicate"
                } else {
                    "out of canonical order"
                };
                return Err(Error::InvalidRegister(format!("slot {} {why}", w[1])));
            }
        }
        for w in slots.windows(2) {
            if w[0].party == w[1].party
                && w[0].region == Region::Minkowski
                && w[1].region != Region::Minkowski
            {
                return Err(Error::InvalidRegister(format!(
                    "party {} has both inertial and Rindler slots",
                    w[0].party
                )));
            }
        }
        Ok(ModeRegister { slots })
    }

    /// `n` inertial parties `A, B, ...`.
    pub fn minkowski(n: usize) -> Result<Self> {
        if n > MAX_PARTIES {
            return Err(Error::TooManyParties(n));
        }
        let slots = (0..n)
            .map(|i| Slot::new(Party(i as u8), Region::Minkowski))
            .collect();
        ModeRegister::new(slots)
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Hilbert-space dimension, `2^len`.
    pub fn dim(&self) -> usize {
        1 << self.slots.len()
    }

    pub fn position(&self, slot: Slot) -> Option<usize> {
        self.slots.iter().position(|s| *s == slot)
    }

    /// Indices of every slot owned by `party`, in register order.
    pub fn slots_of(&self, party: Party) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.party == party)
            .map(|(i, _)| i)
            .collect()
    }

    /// Parties present, in canonical order.
    pub fn parties(&self) -> Vec<Party> {
        let mut out: Vec<Party> = self.slots.iter().map(|s| s.party).collect();
        out.dedup();
        out
    }

    /// The register restricted to `keep` (which must be sorted and in range).
    pub(crate) fn restrict(&self, keep: &[usize]) -> ModeRegister {
        ModeRegister {
            slots: keep.iter().map(|&i| self.slots[i]).collect(),
        }
    }

    /// Ket label of a basis index, e.g. `|1_A 0_B 0_C 1_D_I 0_D_II>`.
    pub fn ket(&self, index: usize) -> String {
        let n = self.len();
        let body: Vec<String> = self
            .slots
            .iter()
            .enumerate()
            .map(|(k, s)| format!("{}_{}", (index >> (n - 1 - k)) & 1, s))
            .collect();
        format!("|{}>", body.join(" "))
    }
}

impl fmt::Display for ModeRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", labels.join(", "))
    }
}

/// Sorts and validates a list of slot indices against a register length.
pub(crate) fn normalize_slot_set(indices: &[usize], len: usize) -> Result<Vec<usize>> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&i| i >= len) {
        return Err(Error::SlotOutOfRange { index: bad, len });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slot(p: Party, r: Region) -> Slot {
        Slot::new(p, r)
    }

    #[test]
    fn canonical_order_accepted() {
        let reg = ModeRegister::new(vec![
            slot(Party::A, Region::Minkowski),
            slot(Party::D, Region::RindlerI),
            slot(Party::D, Region::RindlerII),
        ])
        .unwrap();
        assert_eq!(reg.dim(), 8);
        assert_eq!(reg.slots_of(Party::D), vec![1, 2]);
        assert_eq!(reg.parties(), vec![Party::A, Party::D]);
        assert_eq!(reg.to_string(), "[A, D_I, D_II]");
    }

    #[test]
    fn rejects_out_of_order_and_duplicates() {
        assert!(ModeRegister::new(vec![
            slot(Party::B, Region::Minkowski),
            slot(Party::A, Region::Minkowski),
        ])
        .is_err());
        assert!(ModeRegister::new(vec![
            slot(Party::A, Region::Minkowski),
            slot(Party::A, Region::Minkowski),
        ])
        .is_err());
        // region II before region I
        assert!(ModeRegister::new(vec![
            slot(Party::C, Region::RindlerII),
            slot(Party::C, Region::RindlerI),
        ])
        .is_err());
        assert!(ModeRegister::new(vec![
            slot(Party::C, Region::Minkowski),
            slot(Party::C, Region::RindlerI),
        ])
        .is_err());
    }

    #[test]
    fn ket_labels_msb_first() {
        let reg = ModeRegister::minkowski(4).unwrap();
        assert_eq!(reg.ket(0b1000), "|1_A 0_B 0_C 0_D>");
    }

    #[test]
    fn party_letters() {
        assert_eq!(Party::from_letter('c'), Some(Party::C));
        assert_eq!(Party::from_letter('1'), None);
        assert_eq!(Party::D.letter(), 'D');
    }
}
