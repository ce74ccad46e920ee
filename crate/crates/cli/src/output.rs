//! Result printing: `key=value` lines with `--porcelain`, aligned
//! `key: value` lines otherwise.

use std::fmt::Display;

use mincut_core::{Weight, INFINITE_CUT};

/// Renders a cut value; the single-vertex sentinel prints as `inf`.
pub fn weight(w: Weight) -> String {
    if w == INFINITE_CUT {
        "inf".to_string()
    } else {
        w.to_string()
    }
}

/// Sides longer than this are summarized by their size in human output.
const LISTED_SIDE: usize = 64;

pub struct Report {
    porcelain: bool,
    lines: Vec<String>,
}

impl Report {
    pub fn new(porcelain: bool) -> Self {
        Report { porcelain, lines: Vec::new() }
    }

    pub fn porcelain(&self) -> bool {
        self.porcelain
    }

    pub fn value(&mut self, key: &str, value: impl Display) {
        let line = if self.porcelain { format!("{key}={value}") } else { format!("{key}: {value}") };
        self.lines.push(line);
    }

    pub fn lambda(&mut self, w: Weight) {
        self.value("lambda", weight(w));
    }

    /// One side of a cut as its sorted vertex list.
    pub fn side(&mut self, side: &[bool]) {
        let members: Vec<usize> = (0..side.len()).filter(|&v| side[v]).collect();
        if self.porcelain || members.len() <= LISTED_SIDE {
            let list: Vec<String> = members.iter().map(ToString::to_string).collect();
            self.value("side", list.join(" "));
        } else {
            self.value("side", format!("{} vertices", members.len()));
        }
    }

    /// Free text; dropped in porcelain mode.
    pub fn note(&mut self, text: &str) {
        if !self.porcelain {
            self.lines.push(text.to_string());
        }
    }

    /// Text printed verbatim in both modes.
    pub fn raw(&mut self, text: &str) {
        self.lines.push(text.trim_end().to_string());
    }

    pub fn print(&self) {
        for line in &self.lines {
            println!("{line}");
        }
    }
}
