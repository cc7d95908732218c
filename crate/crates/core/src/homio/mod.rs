//! Text format for algebras, linear maps and representations, and the command-line front end.
//!
//! ```text
//! algebra A {
//!   dim 2
//!   kind leibniz
//!   bracket {
//!     [e1,e2] = e1
//!   }
//!   alpha {
//!     e1 -> -e1
//!     e2 -> e1 + e2
//!   }
//! }
//!
//! map T : A -> A {
//!   e2 -> e1 + 2 e2
//! }
//!
//! representation V on A {
//!   dim 1
//!   phi {
//!     f1 -> f1
//!   }
//!   rho_l e1 {
//!     f1 -> 3/2 f1
//!   }
//! }
//! ```
//!
//! Unlisted entries are zero and `#` starts a comment. Map endpoints name an algebra
//! (basis `e`) or a representation (basis `f`, its carrier space).

mod parse;
mod serialize;

pub mod cli;

pub use parse::parse;
pub use serialize::serialize;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::homcore::HomAlgebra;
use crate::homrep::Representation;

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Algebra(HomAlgebra),
    Map { src: String, dst: String, matrix: Matrix },
    Representation { base: String, rep: Representation },
}

/// Named definitions in source order. Names are unique and references point backwards.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    items: Vec<(String, Item)>,
}

/// The space a map endpoint refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Space {
    pub dim: usize,
    pub symbol: char,
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    pub fn items(&self) -> &[(String, Item)] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    /// Appends a definition after checking the name is new and its references resolve with matching dimensions.
    pub fn push(&mut self, name: impl Into<String>, item: Item) -> Result<()> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(Error::Invalid(format!("duplicate name `{name}`")));
        }
        match &item {
            Item::Algebra(_) => {}
            Item::Map { src, dst, matrix } => {
                let (s, d) = (self.space(src)?, self.space(dst)?);
                if matrix.rows() != d.dim || matrix.cols() != s.dim {
                    return Err(Error::shape(format!(
                        "map `{name}` is {}x{}, expected {}x{}",
                        matrix.rows(),
                        matrix.cols(),
                        d.dim,
                        s.dim
                    )));
                }
            }
            Item::Representation { base, rep } => {
                let alg = self.algebra(base)?;
                if alg.kind() != rep.kind() || alg.dim() != rep.base_dim() {
                    return Err(Error::shape(format!("representation `{name}` does not fit algebra `{base}`")));
                }
            }
        }
        self.items.push((name, item));
        Ok(())
    }

    pub fn algebra(&self, name: &str) -> Result<&HomAlgebra> {
        match self.get(name) {
            Some(Item::Algebra(a)) => Ok(a),
            Some(_) => Err(Error::Invalid(format!("`{name}` is not an algebra"))),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// A map as `(src, dst, matrix)`.
    pub fn map(&self, name: &str) -> Result<(&str, &str, &Matrix)> {
        match self.get(name) {
            Some(Item::Map { src, dst, matrix }) => Ok((src, dst, matrix)),
            Some(_) => Err(Error::Invalid(format!("`{name}` is not a map"))),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// A representation as `(base algebra name, representation)`.
    pub fn representation(&self, name: &str) -> Result<(&str, &Representation)> {
        match self.get(name) {
            Some(Item::Representation { base, rep }) => Ok((base, rep)),
            Some(_) => Err(Error::Invalid(format!("`{name}` is not a representation"))),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub(crate) fn space(&self, name: &str) -> Result<Space> {
        match self.get(name) {
            Some(Item::Algebra(a)) => Ok(Space { dim: a.dim(), symbol: 'e' }),
            Some(Item::Representation { rep, .. }) => Ok(Space {
                dim: rep.carrier_dim(),
                symbol: 'f',
            }),
            Some(Item::Map { .. }) => Err(Error::Invalid(format!("`{name}` is a map, not a space"))),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// Names this item refers to.
    fn references(item: &Item) -> Vec<&str> {
        match item {
            Item::Algebra(_) => Vec::new(),
            Item::Map { src, dst, .. } => vec![src, dst],
            Item::Representation { base, .. } => vec![base],
        }
    }

    /// Copies `name` and everything it refers to into `out`, skipping names already there.
    pub(crate) fn copy_with_dependencies(&self, name: &str, out: &mut Document) -> Result<()> {
        if out.get(name).is_some() {
            return Ok(());
        }
        let item = self.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        for r in Document::references(item) {
            self.copy_with_dependencies(r, out)?;
        }
        out.push(name, item.clone())
    }
}
