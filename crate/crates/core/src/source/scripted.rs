use std::io::BufRead;

use crate::error::{invalid, Error, Result};

use super::{parse_seed, UniformSource};

/// Replays a fixed list of words. Running off the end is an error, never a
/// wraparound.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScriptedSource {
    script: Vec<u64>,
    cursor: usize,
}

impl ScriptedSource {
    pub fn new(script: Vec<u64>) -> Self {
        ScriptedSource { script, cursor: 0 }
    }

    /// Reads one word per line, decimal or `0x`-hex. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut script = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let word = parse_seed(t)
                .map_err(|_| invalid(format!("script line {}: `{t}` is not a u64", lineno + 1)))?;
            script.push(word);
        }
        Ok(ScriptedSource::new(script))
    }

    /// Words consumed so far.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.script.len() - self.cursor
    }

    pub fn len(&self) -> usize {
        self.script.len()
    }

    pub fn is_empty(&self) -> bool {
        self.script.is_empty()
    }

    pub fn try_next_u64(&mut self) -> Result<u64> {
        let word = *self.script.get(self.cursor).ok_or(Error::ScriptExhausted {
            consumed: self.cursor,
        })?;
        self.cursor += 1;
        Ok(word)
    }
}

impl UniformSource for ScriptedSource {
    /// # Panics
    ///
    /// When the script is exhausted. Use [`ScriptedSource::try_next_u64`] to
    /// observe exhaustion as an error value.
    fn next_u64(&mut self) -> u64 {
        match self.try_next_u64() {
            Ok(w) => w,
            Err(e) => panic!("{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replays_verbatim_then_errors() {
        let mut s = ScriptedSource::new(vec![3, 1, 4]);
        assert_eq!(s.next_u64(), 3);
        assert_eq!(s.next_u64(), 1);
        assert_eq!(s.try_next_u64().unwrap(), 4);
        assert_eq!(s.remaining(), 0);
        assert!(matches!(
            s.try_next_u64(),
            Err(Error::ScriptExhausted { consumed: 3 })
        ));
    }

    #[test]
    #[should_panic(expected = "exhausted")]
    fn exhaustion_panics_through_trait() {
        let mut s = ScriptedSource::new(vec![]);
        s.next_u64();
    }

    #[test]
    fn parses_script_text() {
        let text = "# header\n0\n0xff\n\n42\n";
        let s = ScriptedSource::from_reader(text.as_bytes()).unwrap();
        assert_eq!(s.script, vec![0, 255, 42]);
        assert!(ScriptedSource::from_reader("1\nnope\n".as_bytes()).is_err());
    }
}
