//! Total and partial edge colourings, indexed by edge id of a host graph.
//!
//! Colours are `0..r`; for two colours `0` is red and `1` is blue.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const RED: u8 = 0;
pub const BLUE: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColouring {
    r: usize,
    colours: Vec<u8>,
}

impl EdgeColouring {
    pub fn new(host: &Graph, r: usize, colours: Vec<u8>) -> Result<Self> {
        check_r(r)?;
        if colours.len() != host.m() {
            return Err(Error::InvalidColouring(format!(
                "{} colours given for {} edges",
                colours.len(),
                host.m()
            )));
        }
        if let Some((id, &c)) = colours.iter().enumerate().find(|(_, &c)| c as usize >= r) {
            let (u, v) = host.edge(id);
            return Err(Error::InvalidColouring(format!(
                "edge ({u}, {v}) has colour {c}, expected < {r}"
            )));
        }
        Ok(Self { r, colours })
    }

    pub fn uniform(host: &Graph, r: usize, colour: u8) -> Self {
        assert!((colour as usize) < r);
        Self {
            r,
            colours: vec![colour; host.m()],
        }
    }

    /// Builds a colouring by evaluating `f` on every edge of `host`.
    pub fn from_fn(host: &Graph, r: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let colours = host.edges().iter().map(|&(u, v)| f(u, v)).collect();
        Self::new(host, r, colours)
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    #[inline]
    pub fn get(&self, edge: usize) -> u8 {
        self.colours[edge]
    }

    #[inline]
    pub fn set(&mut self, edge: usize, colour: u8) {
        debug_assert!((colour as usize) < self.r);
        self.colours[edge] = colour;
    }

    #[inline]
    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    /// Colour of `{u, v}` in `host`; panics if the pair is not an edge.
    pub fn between(&self, host: &Graph, u: usize, v: usize) -> u8 {
        self.colours[host.edge_id(u, v).expect("pair is an edge of the host")]
    }

    /// Whether every edge id in `edges` has the same colour; returns it.
    pub fn monochromatic(&self, edges: &[usize]) -> Option<u8> {
        let (&first, rest) = edges.split_first()?;
        let c = self.colours[first];
        rest.iter().all(|&e| self.colours[e] == c).then_some(c)
    }

    pub fn to_partial(&self) -> PartialColouring {
        PartialColouring {
            r: self.r,
            colours: self.colours.iter().map(|&c| Some(c)).collect(),
        }
    }

    pub(crate) fn check_host(&self, host: &Graph) -> Result<()> {
        if self.colours.len() != host.m() {
            return Err(Error::InvalidColouring(format!(
                "colouring covers {} edges but the host graph has {}",
                self.colours.len(),
                host.m()
            )));
        }
        Ok(())
    }
}

/// A colouring of a subset of the host's edges; `None` means uncoloured.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialColouring {
    r: usize,
    colours: Vec<Option<u8>>,
}

impl PartialColouring {
    pub fn new(host: &Graph, r: usize, colours: Vec<Option<u8>>) -> Result<Self> {
        check_r(r)?;
        if colours.len() != host.m() {
            return Err(Error::InvalidColouring(format!(
                "{} entries given for {} edges",
                colours.len(),
                host.m()
            )));
        }
        if let Some(c) = colours.iter().flatten().find(|&&c| c as usize >= r) {
            return Err(Error::InvalidColouring(format!("colour {c} out of range 0..{r}")));
        }
        Ok(Self { r, colours })
    }

    pub fn uncoloured(host: &Graph, r: usize) -> Self {
        Self {
            r,
            colours: vec![None; host.m()],
        }
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    #[inline]
    pub fn get(&self, edge: usize) -> Option<u8> {
        self.colours[edge]
    }

    pub fn set(&mut self, edge: usize, colour: Option<u8>) {
        debug_assert!(colour.is_none_or(|c| (c as usize) < self.r));
        self.colours[edge] = colour;
    }

    pub fn entries(&self) -> &[Option<u8>] {
        &self.colours
    }

    pub fn coloured_count(&self) -> usize {
        self.colours.iter().flatten().count()
    }

    /// Converts to a total colouring; fails if any edge is uncoloured.
    pub fn to_total(&self, host: &Graph) -> Result<EdgeColouring> {
        let colours = self
            .colours
            .iter()
            .enumerate()
            .map(|(id, c)| {
                c.ok_or_else(|| {
                    let (u, v) = host.edge(id);
                    Error::InvalidColouring(format!("edge ({u}, {v}) is uncoloured"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        EdgeColouring::new(host, self.r, colours)
    }

    pub(crate) fn check_host(&self, host: &Graph) -> Result<()> {
        if self.colours.len() != host.m() {
            return Err(Error::InvalidColouring(format!(
                "partial colouring covers {} edges but the host graph has {}",
                self.colours.len(),
                host.m()
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_r(r: usize) -> Result<()> {
    if r == 0 || r > u8::MAX as usize {
        return Err(Error::InvalidColouring(format!("colour count {r} out of range 1..=255")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_length_and_range() {
        let g = Graph::complete(3);
        assert!(EdgeColouring::new(&g, 2, vec![0, 1]).is_err());
        assert!(EdgeColouring::new(&g, 2, vec![0, 1, 2]).is_err());
        let c = EdgeColouring::new(&g, 2, vec![0, 1, 0]).unwrap();
        assert_eq!(c.between(&g, 2, 1), 0);
        assert_eq!(c.monochromatic(&[0, 2]), Some(0));
        assert_eq!(c.monochromatic(&[0, 1]), None);
    }

    #[test]
    fn partial_to_total() {
        let g = Graph::path(3);
        let p = PartialColouring::new(&g, 2, vec![Some(1), None]).unwrap();
        assert!(p.to_total(&g).is_err());
        let p = PartialColouring::new(&g, 2, vec![Some(1), Some(0)]).unwrap();
        assert_eq!(p.to_total(&g).unwrap().colours(), &[1, 0]);
    }
}
