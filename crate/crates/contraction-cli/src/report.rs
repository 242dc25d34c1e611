//! Line-oriented `key=value` reports.

use std::fmt::Display;
use std::time::Duration;

use contraction::feasibility::Violation;
use contraction::graph::{apply_contraction, EdgeSet, Graph};

pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            lines: vec![("command".into(), command.into())],
        }
    }

    pub fn push(&mut self, key: &str, value: impl Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    /// Φ, |C|, Δ(C), and the quotient's vertex and edge counts.
    pub fn sizes(&mut self, g: &Graph, c: &EdgeSet) {
        let result = apply_contraction(g, c);
        self.push("phi", result.phi);
        self.push("size", c.len());
        self.push("delta", result.delta);
        self.push("quotient_n", result.quotient.n());
        self.push("quotient_m", result.quotient.m());
    }

    pub fn violation(&mut self, v: &Violation) {
        self.push("violation_u", v.u);
        self.push("violation_v", v.v);
        self.push("violation_original", v.original);
        self.push("violation_contracted", v.contracted);
        match v.required {
            Some(r) => self.push("violation_required", r),
            None => self.push("violation_required", "irrational"),
        }
    }

    pub fn wall(&mut self, elapsed: Duration) {
        self.push("wall_ms", format!("{:.3}", elapsed.as_secs_f64() * 1e3));
    }

    pub fn print(&self) {
        for (k, v) in &self.lines {
            println!("{k}={v}");
        }
    }
}
