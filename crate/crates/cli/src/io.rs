use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

pub fn open_input(path: &str) -> Result<Box<dyn BufRead>> {
    if path == "-" {
        Ok(Box::new(BufReader::new(io::stdin().lock())))
    } else {
        let file = File::open(path).with_context(|| format!("cannot open '{path}'"))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

pub fn open_output(path: &str) -> Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(path).with_context(|| format!("cannot create '{path}'"))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

/// Iterates the bits of a newline-delimited '0'/'1' stream. A malformed line
/// is reported with its 1-based line number.
pub fn read_bits(input: impl BufRead) -> impl Iterator<Item = Result<bool>> {
    input.lines().enumerate().map(|(idx, line)| {
        let line_no = idx + 1;
        let line = line.with_context(|| format!("read error at line {line_no}"))?;
        match line.trim_end_matches('\r') {
            "0" => Ok(false),
            "1" => Ok(true),
            other => bail!("line {line_no}: expected '0' or '1', found '{other}'"),
        }
    })
}

pub fn write_bits(bits: impl IntoIterator<Item = bool>, out: &mut dyn Write) -> io::Result<()> {
    for bit in bits {
        out.write_all(if bit { b"1\n" } else { b"0\n" })?;
    }
    Ok(())
}

/// Default location for the ground-truth CSV next to a bit file.
pub fn truth_path_for(output: &str) -> Option<String> {
    (output != "-").then(|| {
        let p = Path::new(output);
        format!("{}.truth.csv", p.display())
    })
}
