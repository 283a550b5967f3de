use crate::ast::{
    ChannelDecl, ChannelKind, Diagnostic, EnvelopeDecl, EnvelopeSpec, PulseProgram, Statement,
};

/// Default generator clock when a program omits the `clock` declaration.
pub const DEFAULT_CLOCK_HZ: f64 = 6_881_280_000.0;

/// A successfully parsed program plus non-fatal warnings (e.g. inexact
/// nanosecond literals).
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub program: PulseProgram,
    pub warnings: Vec<Diagnostic>,
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        if c == '#' {
            if let Some(s) = start {
                tokens.push(Token {
                    text: &line[s..i],
                    col: s + 1,
                });
                start = None;
            }
            break;
        }
        if c.is_whitespace() {
            if let Some(s) = start {
                tokens.push(Token {
                    text: &line[s..i],
                    col: s + 1,
                });
                start = None;
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &line[s..],
            col: s + 1,
        });
    }
    tokens
}

struct Parser<'a> {
    file: &'a str,
    clock_hz: Option<f64>,
    channels: Vec<ChannelDecl>,
    envelopes: Vec<EnvelopeDecl>,
    freqs: Vec<(String, f64)>,
    warnings: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    fn diag(&self, line: usize, col: usize, code: &'static str, message: String) -> Diagnostic {
        Diagnostic {
            file: self.file.to_string(),
            line,
            col,
            code,
            message,
        }
    }

    fn parse_f64(&self, tok: &Token, line: usize) -> Result<f64, Diagnostic> {
        tok.text.parse().map_err(|_| {
            self.diag(
                line,
                tok.col,
                "E004",
                format!("expected a number, got '{}'", tok.text),
            )
        })
    }

    fn parse_freq(&self, tok: &Token, line: usize) -> Result<f64, Diagnostic> {
        let t = tok.text;
        let (num, mult) = if let Some(s) = t.strip_suffix("GHz") {
            (s, 1e9)
        } else if let Some(s) = t.strip_suffix("MHz") {
            (s, 1e6)
        } else if let Some(s) = t.strip_suffix("kHz") {
            (s, 1e3)
        } else if let Some(s) = t.strip_suffix("Hz") {
            (s, 1.0)
        } else {
            (t, 1.0)
        };
        let v: f64 = num.parse().map_err(|_| {
            self.diag(
                line,
                tok.col,
                "E004",
                format!("expected a frequency, got '{t}'"),
            )
        })?;
        Ok(v * mult)
    }

    /// Frequency literal or reference to a `freq` constant.
    fn parse_freq_or_name(&self, tok: &Token, line: usize) -> Result<f64, Diagnostic> {
        if let Some((_, hz)) = self.freqs.iter().find(|(n, _)| n == tok.text) {
            return Ok(*hz);
        }
        if tok.text.chars().next().is_some_and(|c| c.is_alphabetic()) {
            return Err(self.diag(
                line,
                tok.col,
                "E002",
                format!("undeclared frequency constant '{}'", tok.text),
            ));
        }
        self.parse_freq(tok, line)
    }

    fn parse_phase(&self, tok: &Token, line: usize) -> Result<f64, Diagnostic> {
        let t = tok.text;
        if let Some(s) = t.strip_suffix("deg") {
            let v: f64 = s.parse().map_err(|_| {
                self.diag(line, tok.col, "E004", format!("expected a phase, got '{t}'"))
            })?;
            Ok(v.to_radians())
        } else {
            let s = t.strip_suffix("rad").unwrap_or(t);
            s.parse().map_err(|_| {
                self.diag(line, tok.col, "E004", format!("expected a phase, got '{t}'"))
            })
        }
    }

    /// Time in samples: bare integers are samples, `ns` literals convert
    /// through the clock with round-to-nearest and a warning when inexact.
    fn parse_time(&mut self, tok: &Token, line: usize) -> Result<i64, Diagnostic> {
        let t = tok.text;
        if let Some(s) = t.strip_suffix("ns") {
            let v: f64 = s.parse().map_err(|_| {
                self.diag(line, tok.col, "E004", format!("expected a time, got '{t}'"))
            })?;
            let clock = self.clock_hz.unwrap_or(DEFAULT_CLOCK_HZ);
            let exact = v * 1e-9 * clock;
            let samples = exact.round();
            if (exact - samples).abs() > 1e-6 {
                self.warnings.push(self.diag(
                    line,
                    tok.col,
                    "W001",
                    format!(
                        "{t} is not an integer number of samples ({exact:.6}); rounded to {samples}"
                    ),
                ));
            }
            Ok(samples as i64)
        } else {
            t.parse().map_err(|_| {
                self.diag(
                    line,
                    tok.col,
                    "E004",
                    format!("expected an integer sample count, got '{t}'"),
                )
            })
        }
    }

    fn channel_index(&self, tok: &Token, line: usize) -> Result<usize, Diagnostic> {
        self.channels
            .iter()
            .position(|c| c.name == tok.text)
            .ok_or_else(|| {
                self.diag(
                    line,
                    tok.col,
                    "E002",
                    format!("undeclared channel '{}'", tok.text),
                )
            })
    }

    fn envelope_index(&self, tok: &Token, line: usize) -> Result<usize, Diagnostic> {
        self.envelopes
            .iter()
            .position(|e| e.name == tok.text)
            .ok_or_else(|| {
                self.diag(
                    line,
                    tok.col,
                    "E002",
                    format!("undeclared envelope '{}'", tok.text),
                )
            })
    }

    fn expect<'t>(
        &self,
        tokens: &'t [Token<'a>],
        idx: usize,
        line: usize,
        what: &str,
    ) -> Result<&'t Token<'a>, Diagnostic> {
        tokens.get(idx).ok_or_else(|| {
            let col = tokens.last().map(|t| t.col + t.text.len()).unwrap_or(1);
            self.diag(line, col, "E001", format!("missing {what}"))
        })
    }

    fn check_new_name(&self, tok: &Token, line: usize) -> Result<(), Diagnostic> {
        let name = tok.text;
        let clash = self.channels.iter().any(|c| c.name == name)
            || self.envelopes.iter().any(|e| e.name == name)
            || self.freqs.iter().any(|(n, _)| n == name);
        if clash {
            Err(self.diag(
                line,
                tok.col,
                "E003",
                format!("duplicate declaration of '{name}'"),
            ))
        } else {
            Ok(())
        }
    }
}

/// Parse a pulse program. Returns the AST plus warnings, or the first
/// diagnostic encountered.
pub fn parse(text: &str, file: &str) -> Result<ParseOutcome, Diagnostic> {
    let mut p = Parser {
        file,
        clock_hz: None,
        channels: Vec::new(),
        envelopes: Vec::new(),
        freqs: Vec::new(),
        warnings: Vec::new(),
    };
    // Stack of open statement blocks: the program body plus any open repeats.
    let mut blocks: Vec<(Vec<Statement>, u32, i64, usize)> = vec![(Vec::new(), 0, 0, 0)];

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let head = &tokens[0];
        match head.text {
            "clock" => {
                let tok = p.expect(&tokens, 1, line, "clock frequency")?;
                let hz = p.parse_freq(tok, line)?;
                if p.clock_hz.is_some() {
                    return Err(p.diag(line, head.col, "E003", "duplicate clock declaration".into()));
                }
                p.clock_hz = Some(hz);
            }
            "channel" => {
                let name = p.expect(&tokens, 1, line, "channel name")?;
                p.check_new_name(name, line)?;
                let mut decl = ChannelDecl {
                    name: name.text.to_string(),
                    kind: ChannelKind::Single,
                    freq: 0.0,
                    phase: 0.0,
                    gain: 1.0,
                    line,
                };
                let mut i = 2;
                while i < tokens.len() {
                    let key = &tokens[i];
                    let val = p.expect(&tokens, i + 1, line, &format!("value for '{}'", key.text))?;
                    match key.text {
                        "freq" => decl.freq = p.parse_freq_or_name(val, line)?,
                        "phase" => decl.phase = p.parse_phase(val, line)?,
                        "gain" => decl.gain = p.parse_f64(val, line)?,
                        other => {
                            return Err(p.diag(
                                line,
                                key.col,
                                "E001",
                                format!("unknown channel attribute '{other}'"),
                            ))
                        }
                    }
                    i += 2;
                }
                p.channels.push(decl);
            }
            "muxchannel" => {
                let name = p.expect(&tokens, 1, line, "channel name")?;
                p.check_new_name(name, line)?;
                let kw = p.expect(&tokens, 2, line, "'tones' keyword")?;
                if kw.text != "tones" {
                    return Err(p.diag(line, kw.col, "E001", "expected 'tones'".into()));
                }
                let mut tones = Vec::new();
                let mut gain = 1.0;
                let mut i = 3;
                while i < tokens.len() {
                    if tokens[i].text == "gain" {
                        let val = p.expect(&tokens, i + 1, line, "gain value")?;
                        gain = p.parse_f64(val, line)?;
                        i += 2;
                    } else {
                        tones.push(p.parse_freq_or_name(&tokens[i], line)?);
                        i += 1;
                    }
                }
                if tones.is_empty() || tones.len() > dsp_core::MAX_MUX_TONES {
                    return Err(p.diag(
                        line,
                        head.col,
                        "E001",
                        format!(
                            "mux channel needs 1..={} tones, got {}",
                            dsp_core::MAX_MUX_TONES,
                            tones.len()
                        ),
                    ));
                }
                p.channels.push(ChannelDecl {
                    name: name.text.to_string(),
                    kind: ChannelKind::Mux { tones },
                    freq: 0.0,
                    phase: 0.0,
                    gain,
                    line,
                });
            }
            "envelope" => {
                let name = p.expect(&tokens, 1, line, "envelope name")?;
                p.check_new_name(name, line)?;
                let shape = p.expect(&tokens, 2, line, "envelope shape")?;
                let need = |n: usize| -> Result<(), Diagnostic> {
                    if tokens.len() < 3 + n {
                        Err(p.diag(
                            line,
                            shape.col,
                            "E001",
                            format!("shape '{}' needs {n} argument(s)", shape.text),
                        ))
                    } else {
                        Ok(())
                    }
                };
                let spec = match shape.text {
                    "flat" => {
                        need(1)?;
                        EnvelopeSpec::Flat {
                            len: p.parse_f64(&tokens[3], line)? as usize,
                        }
                    }
                    "gaussian" => {
                        need(2)?;
                        EnvelopeSpec::Gaussian {
                            len: p.parse_f64(&tokens[3], line)? as usize,
                            sigma: p.parse_f64(&tokens[4], line)?,
                        }
                    }
                    "drag" => {
                        need(3)?;
                        EnvelopeSpec::Drag {
                            len: p.parse_f64(&tokens[3], line)? as usize,
                            sigma: p.parse_f64(&tokens[4], line)?,
                            beta: p.parse_f64(&tokens[5], line)?,
                        }
                    }
                    "triangle" => {
                        need(1)?;
                        EnvelopeSpec::Triangle {
                            len: p.parse_f64(&tokens[3], line)? as usize,
                        }
                    }
                    other => {
                        return Err(p.diag(
                            line,
                            shape.col,
                            "E001",
                            format!("unknown envelope shape '{other}'"),
                        ))
                    }
                };
                p.envelopes.push(EnvelopeDecl {
                    name: name.text.to_string(),
                    spec,
                    line,
                });
            }
            "freq" => {
                let name = p.expect(&tokens, 1, line, "constant name")?;
                p.check_new_name(name, line)?;
                let val = p.expect(&tokens, 2, line, "frequency value")?;
                let hz = p.parse_freq(val, line)?;
                p.freqs.push((name.text.to_string(), hz));
            }
            "set_freq" => {
                let ch = p.channel_index(p.expect(&tokens, 1, line, "channel")?, line)?;
                let hz = p.parse_freq_or_name(p.expect(&tokens, 2, line, "frequency")?, line)?;
                blocks.last_mut().unwrap().0.push(Statement::SetFreq { ch, hz, line });
            }
            "set_phase" => {
                let ch = p.channel_index(p.expect(&tokens, 1, line, "channel")?, line)?;
                let rad = p.parse_phase(p.expect(&tokens, 2, line, "phase")?, line)?;
                blocks.last_mut().unwrap().0.push(Statement::SetPhase { ch, rad, line });
            }
            "set_gain" => {
                let ch = p.channel_index(p.expect(&tokens, 1, line, "channel")?, line)?;
                let gain = p.parse_f64(p.expect(&tokens, 2, line, "gain")?, line)?;
                blocks.last_mut().unwrap().0.push(Statement::SetGain { ch, gain, line });
            }
            "play" => {
                let ch = p.channel_index(p.expect(&tokens, 1, line, "channel")?, line)?;
                let env = p.envelope_index(p.expect(&tokens, 2, line, "envelope")?, line)?;
                let at = if tokens.len() > 3 {
                    let kw = &tokens[3];
                    if kw.text != "at" {
                        return Err(p.diag(line, kw.col, "E001", "expected 'at'".into()));
                    }
                    let t = p.expect(&tokens, 4, line, "start time")?;
                    Some(p.parse_time(t, line)?)
                } else {
                    None
                };
                blocks.last_mut().unwrap().0.push(Statement::Play { ch, env, at, line });
            }
            "wait" => {
                let t = p.expect(&tokens, 1, line, "duration")?;
                let samples = p.parse_time(t, line)?;
                blocks.last_mut().unwrap().0.push(Statement::Wait { samples, line });
            }
            "phase_reset" => {
                if tokens.len() < 2 {
                    return Err(p.diag(line, head.col, "E001", "phase_reset needs channels".into()));
                }
                let mut chans = Vec::new();
                for tok in &tokens[1..] {
                    chans.push(p.channel_index(tok, line)?);
                }
                blocks.last_mut().unwrap().0.push(Statement::PhaseReset { chans, line });
            }
            "trigger_readout" => {
                let ch = p.parse_f64(p.expect(&tokens, 1, line, "readout channel")?, line)? as u8;
                let window = p.parse_f64(p.expect(&tokens, 2, line, "window")?, line)? as u32;
                let at = if tokens.len() > 3 {
                    let kw = &tokens[3];
                    if kw.text != "at" {
                        return Err(p.diag(line, kw.col, "E001", "expected 'at'".into()));
                    }
                    let t = p.expect(&tokens, 4, line, "start time")?;
                    Some(p.parse_time(t, line)?)
                } else {
                    None
                };
                blocks
                    .last_mut()
                    .unwrap()
                    .0
                    .push(Statement::TriggerReadout { channel: ch, window, at, line });
            }
            "repeat" => {
                let count = p.parse_f64(p.expect(&tokens, 1, line, "repeat count")?, line)? as u32;
                let kw = p.expect(&tokens, 2, line, "'period'")?;
                if kw.text != "period" {
                    return Err(p.diag(line, kw.col, "E001", "expected 'period'".into()));
                }
                let t = p.expect(&tokens, 3, line, "period")?;
                let period = p.parse_time(t, line)?;
                blocks.push((Vec::new(), count, period, line));
            }
            "end" => {
                if blocks.len() == 1 {
                    return Err(p.diag(line, head.col, "E006", "'end' without open repeat".into()));
                }
                let (body, count, period, rline) = blocks.pop().unwrap();
                blocks.last_mut().unwrap().0.push(Statement::Repeat {
                    count,
                    period,
                    body,
                    line: rline,
                });
            }
            other => {
                return Err(p.diag(
                    line,
                    head.col,
                    "E001",
                    format!("unknown statement '{other}'"),
                ))
            }
        }
    }

    if blocks.len() != 1 {
        let open = blocks.last().unwrap().3;
        return Err(p.diag(open, 1, "E006", "repeat block never closed".into()));
    }

    let body = blocks.pop().unwrap().0;
    Ok(ParseOutcome {
        program: PulseProgram {
            clock_hz: p.clock_hz.unwrap_or(DEFAULT_CLOCK_HZ),
            channels: p.channels,
            envelopes: p.envelopes,
            freqs: p.freqs,
            body,
        },
        warnings: p.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_program_is_valid() {
        let out = parse("", "t.qpl").unwrap();
        assert!(out.program.body.is_empty());
        assert_eq!(out.program.clock_hz, DEFAULT_CLOCK_HZ);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let out = parse("# nothing here\n\n   # indented comment\n", "t.qpl").unwrap();
        assert!(out.program.body.is_empty());
    }

    #[test]
    fn play_on_undeclared_channel_is_named() {
        let err = parse("play q9 e1\n", "t.qpl").unwrap_err();
        assert_eq!(err.code, "E002");
        assert!(err.message.contains("q9"), "{}", err.message);
        assert_eq!(err.line, 1);
        assert_eq!(err.col, 6);
    }

    #[test]
    fn duplicate_declaration_rejected() {
        let text = "channel q0 freq 1MHz\nchannel q0 freq 2MHz\n";
        let err = parse(text, "t.qpl").unwrap_err();
        assert_eq!(err.code, "E003");
        assert_eq!(err.line, 2);
    }

    #[test]
    fn frequency_units_scale() {
        let text = "freq a 1.5GHz\nfreq b 20MHz\nfreq c 3kHz\nfreq d 7Hz\nfreq e 11\n";
        let out = parse(text, "t.qpl").unwrap();
        let hz: Vec<f64> = out.program.freqs.iter().map(|(_, v)| *v).collect();
        assert_eq!(hz, vec![1.5e9, 20e6, 3e3, 7.0, 11.0]);
    }

    #[test]
    fn inexact_nanosecond_literal_warns() {
        let text = "clock 6881.28MHz\nchannel q0 freq 1MHz\nenvelope e flat 16\nplay q0 e at 5ns\n";
        let out = parse(text, "t.qpl").unwrap();
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].code, "W001");
        // 5 ns * 6.88128 GHz = 34.4064 samples -> rounds to 34.
        match &out.program.body[0] {
            Statement::Play { at: Some(t), .. } => assert_eq!(*t, 34),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exact_nanosecond_literal_does_not_warn() {
        let text = "clock 1GHz\nchannel q0 freq 1MHz\nenvelope e flat 16\nplay q0 e at 5ns\n";
        let out = parse(text, "t.qpl").unwrap();
        assert!(out.warnings.is_empty());
        match &out.program.body[0] {
            Statement::Play { at: Some(t), .. } => assert_eq!(*t, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unclosed_repeat_rejected() {
        let err = parse("repeat 3 period 100\n", "t.qpl").unwrap_err();
        assert_eq!(err.code, "E006");
    }

    #[test]
    fn three_channel_demo_parses() {
        let text = "\
clock 6881.28MHz
freq f1 3100MHz
channel d1 freq f1 phase 0 gain 0.8
channel pump freq 1500MHz phase 0 gain 0.6
channel d2 freq 4600MHz phase 0 gain 0.8
envelope half_pi gaussian 160 35
envelope pump_env flat 2000
repeat 100 period 40000
  phase_reset d1 pump d2
  play d1 half_pi
  play pump pump_env at 200
  play d2 half_pi at 2400
end
";
        let out = parse(text, "demo.qpl").unwrap();
        assert_eq!(out.program.channels.len(), 3);
        assert_eq!(out.program.envelopes.len(), 2);
        match &out.program.body[0] {
            Statement::Repeat { count, period, body, .. } => {
                assert_eq!(*count, 100);
                assert_eq!(*period, 40000);
                assert_eq!(body.len(), 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
