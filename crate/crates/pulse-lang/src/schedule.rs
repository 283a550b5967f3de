use crate::ast::{ChannelKind, PulseError, PulseProgram, Statement};

/// What a scheduled instruction does at its start sample.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduledAction {
    Play { env: usize },
    SetFreq { hz: f64 },
    SetPhase { rad: f64 },
    SetGain { gain: f64 },
    PhaseReset,
    TriggerReadout { readout_channel: u8, window: u32 },
}

/// One channel-resolved instruction at an absolute sample time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedInstruction {
    /// Index into the program's channel table; readout triggers use the
    /// channel the statement was scheduled against (usize::MAX for none).
    pub channel: usize,
    pub action: ScheduledAction,
    pub start: i64,
    pub duration: i64,
    /// Source line of the originating statement.
    pub line: usize,
}

/// Deterministic absolute-time schedule of a program.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    /// Instructions in program order (chronological per channel).
    pub instructions: Vec<TimedInstruction>,
    /// One entry per top-level repetition: the repetition's start sample.
    /// Programs without a top-level repeat get a single entry at 0.
    pub rep_starts: Vec<i64>,
    /// Repetition period in samples, when a top-level repeat exists.
    pub rep_period: Option<i64>,
    /// One past the last occupied sample.
    pub makespan: i64,
}

/// Channel the trigger pseudo-instruction is filed under.
pub const TRIGGER_CHANNEL: usize = usize::MAX;

struct Cursors {
    /// Next free sample per channel.
    end: Vec<i64>,
    /// Line of the statement that set each channel's end, for conflicts.
    last_line: Vec<usize>,
}

fn walk(
    program: &PulseProgram,
    body: &[Statement],
    origin: i64,
    cur: &mut Cursors,
    out: &mut Vec<TimedInstruction>,
    top_level: bool,
    rep_starts: &mut Vec<i64>,
    rep_period: &mut Option<i64>,
) -> Result<(), PulseError> {
    for stmt in body {
        match stmt {
            Statement::SetFreq { ch, hz, line } => out.push(TimedInstruction {
                channel: *ch,
                action: ScheduledAction::SetFreq { hz: *hz },
                start: cur.end[*ch],
                duration: 0,
                line: *line,
            }),
            Statement::SetPhase { ch, rad, line } => out.push(TimedInstruction {
                channel: *ch,
                action: ScheduledAction::SetPhase { rad: *rad },
                start: cur.end[*ch],
                duration: 0,
                line: *line,
            }),
            Statement::SetGain { ch, gain, line } => out.push(TimedInstruction {
                channel: *ch,
                action: ScheduledAction::SetGain { gain: *gain },
                start: cur.end[*ch],
                duration: 0,
                line: *line,
            }),
            Statement::Play { ch, env, at, line } => {
                let start = match at {
                    Some(t) => origin + t,
                    None => cur.end[*ch],
                };
                if start < cur.end[*ch] {
                    return Err(PulseError::Overlap {
                        channel: program.channels[*ch].name.clone(),
                        first_line: cur.last_line[*ch],
                        first_end: cur.end[*ch],
                        second_line: *line,
                        second_start: start,
                    });
                }
                let rate_divisor = 1; // envelopes in the DSL are full-speed
                let duration = (program.envelopes[*env].spec.len() * rate_divisor) as i64;
                out.push(TimedInstruction {
                    channel: *ch,
                    action: ScheduledAction::Play { env: *env },
                    start,
                    duration,
                    line: *line,
                });
                cur.end[*ch] = start + duration;
                cur.last_line[*ch] = *line;
            }
            Statement::Wait { samples, line } => {
                let barrier = cur.end.iter().copied().max().unwrap_or(0).max(origin);
                for (e, l) in cur.end.iter_mut().zip(cur.last_line.iter_mut()) {
                    *e = barrier + samples;
                    *l = *line;
                }
            }
            Statement::PhaseReset { chans, line } => {
                // Synchronous: all listed channels reset at the same sample.
                let t = chans.iter().map(|&c| cur.end[c]).max().unwrap_or(0);
                for &c in chans {
                    out.push(TimedInstruction {
                        channel: c,
                        action: ScheduledAction::PhaseReset,
                        start: t,
                        duration: 0,
                        line: *line,
                    });
                    cur.end[c] = t;
                    cur.last_line[c] = *line;
                }
            }
            Statement::TriggerReadout {
                channel,
                window,
                at,
                line,
            } => {
                let start = match at {
                    Some(t) => origin + t,
                    None => cur.end.iter().copied().max().unwrap_or(0).max(origin),
                };
                out.push(TimedInstruction {
                    channel: TRIGGER_CHANNEL,
                    action: ScheduledAction::TriggerReadout {
                        readout_channel: *channel,
                        window: *window,
                    },
                    start,
                    duration: *window as i64,
                    line: *line,
                });
            }
            Statement::Repeat {
                count,
                period,
                body,
                line: _,
            } => {
                let block_origin = cur.end.iter().copied().max().unwrap_or(0).max(origin);
                for n in 0..*count {
                    let iter_origin = block_origin + n as i64 * period;
                    if top_level {
                        rep_starts.push(iter_origin);
                        *rep_period = Some(*period);
                    }
                    // Every channel joins the iteration origin.
                    for e in cur.end.iter_mut() {
                        *e = (*e).max(iter_origin);
                    }
                    walk(program, body, iter_origin, cur, out, false, rep_starts, rep_period)?;
                }
            }
        }
    }
    Ok(())
}

/// Produce the deterministic absolute-time schedule of a program.
///
/// Back-to-back `play` statements on one channel abut exactly (zero
/// latency). Explicit `at` times are relative to the enclosing repeat
/// iteration's origin (or 0 at top level); a play that would start before
/// the channel's previous pulse has ended is an overlap error naming both
/// statements.
pub fn schedule(program: &PulseProgram) -> Result<Schedule, PulseError> {
    let n = program.channels.len();
    let mut cur = Cursors {
        end: vec![0; n],
        last_line: vec![0; n],
    };
    let mut out = Vec::new();
    let mut rep_starts = Vec::new();
    let mut rep_period = None;
    walk(
        program,
        &program.body,
        0,
        &mut cur,
        &mut out,
        true,
        &mut rep_starts,
        &mut rep_period,
    )?;
    if rep_starts.is_empty() {
        rep_starts.push(0);
    }
    let makespan = out
        .iter()
        .map(|i| i.start + i.duration)
        .max()
        .unwrap_or(0);
    Ok(Schedule {
        instructions: out,
        rep_starts,
        rep_period,
        makespan,
    })
}
