//! Feeding a byte stream through a detector, and the one-line verdict formats
//! printed by the command-line tool.

use std::io::{self, ErrorKind, Read};

use serde::Serialize;

use crate::detector::{Algorithm, Detector, OnlineDetector};
use crate::text::{SquareReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamOutcome {
    Square(SquareReport),
    Squarefree { length: usize },
}

impl StreamOutcome {
    /// Match semantics: 0 when a square was found, 1 when the input is squarefree.
    pub fn exit_code(&self) -> i32 {
        match self {
            StreamOutcome::Square(_) => 0,
            StreamOutcome::Squarefree { .. } => 1,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            StreamOutcome::Square(r) => format!("SQUARE {r}"),
            StreamOutcome::Squarefree { length } => format!("SQUAREFREE length={length}"),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Square {
            verdict: &'static str,
            start: usize,
            end: usize,
            length: usize,
        }
        #[derive(Serialize)]
        struct Squarefree {
            verdict: &'static str,
            length: usize,
        }
        let json = match *self {
            StreamOutcome::Square(r) => serde_json::to_string(&Square {
                verdict: "square",
                start: r.start,
                end: r.end,
                length: r.length,
            }),
            StreamOutcome::Squarefree { length } => serde_json::to_string(&Squarefree {
                verdict: "squarefree",
                length,
            }),
        };
        json.expect("plain structs serialize")
    }
}

/// Reads `input` one byte at a time and stops right after the first square,
/// so no byte past the square's end is requested from the reader.
pub fn detect_stream<R: Read>(mut input: R, algo: Algorithm) -> io::Result<StreamOutcome> {
    let mut detector: Detector<u8> = Detector::new(algo);
    let mut byte = [0u8; 1];
    let mut length = 0;
    loop {
        match input.read(&mut byte) {
            Ok(0) => return Ok(StreamOutcome::Squarefree { length }),
            Ok(_) => {
                length += 1;
                let verdict = detector.push(byte[0]).map_err(io::Error::other)?;
                if let Verdict::Square(r) = verdict {
                    return Ok(StreamOutcome::Square(r));
                }
            }
            Err(e) if e.kind() == ErrorKind::Interrupted => continue,
            Err(e) => return Err(e),
        }
    }
}
