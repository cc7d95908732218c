use std::fmt::Write;

use crate::exactla::{format_lincomb, Matrix};
use crate::homcore::{HomAlgebra, StructureTensor};
use crate::homrep::Representation;

use super::{Document, Item};

/// Canonical text: entries by index, zero entries and empty sections omitted,
/// coefficients in lowest terms, one blank line between items.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for (k, (name, item)) in doc.items().iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match item {
            Item::Algebra(a) => algebra(&mut out, name, a),
            Item::Map { src, dst, matrix } => {
                let s = doc.space(src).map_or('e', |s| s.symbol);
                let d = doc.space(dst).map_or('e', |s| s.symbol);
                writeln!(out, "map {name} : {src} -> {dst} {{").expect("string write");
                map_entries(&mut out, "  ", matrix, s, d);
                out.push_str("}\n");
            }
            Item::Representation { base, rep } => representation(&mut out, name, base, rep),
        }
    }
    out
}

fn map_entries(out: &mut String, indent: &str, m: &Matrix, src: char, dst: char) {
    for j in 0..m.cols() {
        let col = m.column(j);
        if !col.is_zero() {
            writeln!(out, "{indent}{src}{} -> {}", j + 1, format_lincomb(col.entries(), dst)).expect("string write");
        }
    }
}

fn section(out: &mut String, header: &str, m: &Matrix, symbol: char) {
    if m.is_zero() {
        return;
    }
    writeln!(out, "  {header} {{").expect("string write");
    map_entries(out, "    ", m, symbol, symbol);
    out.push_str("  }\n");
}

fn products(out: &mut String, header: &str, t: &StructureTensor, entry: impl Fn(usize, usize) -> String) {
    if t.is_zero() {
        return;
    }
    writeln!(out, "  {header} {{").expect("string write");
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            let v = t.basis_product(i, j);
            if !v.is_zero() {
                writeln!(out, "    {} = {}", entry(i + 1, j + 1), format_lincomb(v.entries(), 'e')).expect("string write");
            }
        }
    }
    out.push_str("  }\n");
}

fn algebra(out: &mut String, name: &str, a: &HomAlgebra) {
    writeln!(out, "algebra {name} {{\n  dim {}\n  kind {}", a.dim(), a.kind().keyword()).expect("string write");
    if let Some(t) = a.dot() {
        products(out, "dot", t, |i, j| format!("e{i}*e{j}"));
    }
    if let Some(t) = a.bracket() {
        products(out, "bracket", t, |i, j| format!("[e{i},e{j}]"));
    }
    section(out, "alpha", a.alpha(), 'e');
    out.push_str("}\n");
}

fn representation(out: &mut String, name: &str, base: &str, rep: &Representation) {
    writeln!(out, "representation {name} on {base} {{\n  dim {}", rep.carrier_dim()).expect("string write");
    section(out, "phi", rep.phi(), 'f');
    for (a, t) in rep.actions() {
        for i in 0..t.base_dim() {
            section(out, &format!("{} e{}", a.name(), i + 1), t.basis(i), 'f');
        }
    }
    out.push_str("}\n");
}
