use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest representable timestamp, `99:59:59.999`.
pub const MAX_MILLIS: u32 = 359_999_999;

/// A cue boundary in milliseconds from the start of the file.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Timestamp(u32);

/// Decimal separator between seconds and milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionSeparator {
    /// `.` as used by WebVTT
    Dot,
    /// `,` as used by SubRip
    Comma,
}

impl FractionSeparator {
    pub fn as_char(self) -> char {
        match self {
            FractionSeparator::Dot => '.',
            FractionSeparator::Comma => ',',
        }
    }
}

/// Why a timestamp string was rejected, with the character column (0-based)
/// inside the timestamp text where the problem starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimestampError {
    pub column: usize,
    pub reason: &'static str,
}

impl Timestamp {
    pub const ZERO: Timestamp = Timestamp(0);

    /// Returns `None` when `millis` exceeds [`MAX_MILLIS`].
    pub fn from_millis(millis: u32) -> Option<Timestamp> {
        (millis <= MAX_MILLIS).then_some(Timestamp(millis))
    }

    /// Clamps to [`MAX_MILLIS`].
    pub fn saturating_from_millis(millis: u64) -> Timestamp {
        Timestamp(millis.min(MAX_MILLIS as u64) as u32)
    }

    pub fn millis(self) -> u32 {
        self.0
    }

    pub fn seconds(self) -> f64 {
        f64::from(self.0) / 1000.0
    }

    /// Parses `HH:MM:SS.mmm`, `HH:MM:SS,mmm` or the short WebVTT form
    /// `MM:SS.mmm`. Returns the separator that was actually used so callers
    /// can warn on a mismatch with the declared format.
    pub fn parse(text: &str) -> Result<(Timestamp, FractionSeparator), TimestampError> {
        let err = |column, reason| TimestampError { column, reason };
        let frac_pos = text
            .rfind(['.', ','])
            .ok_or_else(|| err(text.len(), "missing millisecond separator"))?;
        let separator = if text.as_bytes()[frac_pos] == b'.' {
            FractionSeparator::Dot
        } else {
            FractionSeparator::Comma
        };
        let frac = &text[frac_pos + 1..];
        if frac.len() != 3 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(
                frac_pos + 1,
                "milliseconds must be exactly three digits",
            ));
        }
        let millis: u32 = frac.parse().expect("three ascii digits");

        let clock = &text[..frac_pos];
        let fields: Vec<&str> = clock.split(':').collect();
        let (hours, minutes, seconds) = match fields.as_slice() {
            [h, m, s] => (Some(*h), *m, *s),
            [m, s] => (None, *m, *s),
            _ => return Err(err(0, "expected HH:MM:SS or MM:SS")),
        };

        let mut column = 0;
        let hours = match hours {
            Some(h) => {
                if h.len() < 2 || !h.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err(column, "hours must be at least two digits"));
                }
                let value: u32 = h.parse().map_err(|_| err(column, "hours out of range"))?;
                if value > 99 {
                    return Err(err(column, "hours out of range"));
                }
                column += h.len() + 1;
                value
            }
            None => 0,
        };
        let two_digits = |field: &str, column: usize, what: &'static str| {
            if field.len() != 2 || !field.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(column, what));
            }
            let value: u32 = field.parse().expect("two ascii digits");
            if value > 59 {
                return Err(err(column, what));
            }
            Ok(value)
        };
        let minutes = two_digits(minutes, column, "minutes must be two digits in 00-59")?;
        column += 3;
        let seconds = two_digits(seconds, column, "seconds must be two digits in 00-59")?;

        let total = ((hours * 60 + minutes) * 60 + seconds) * 1000 + millis;
        Ok((Timestamp(total), separator))
    }

    pub fn format_with(self, separator: FractionSeparator) -> String {
        let ms = self.0 % 1000;
        let total_secs = self.0 / 1000;
        let s = total_secs % 60;
        let m = (total_secs / 60) % 60;
        let h = total_secs / 3600;
        format!("{h:02}:{m:02}:{s:02}{}{ms:03}", separator.as_char())
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(FractionSeparator::Dot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_both_separators() {
        let (ts, sep) = Timestamp::parse("00:00:01.000").unwrap();
        assert_eq!((ts.millis(), sep), (1000, FractionSeparator::Dot));
        let (ts, sep) = Timestamp::parse("00:00:01,000").unwrap();
        assert_eq!((ts.millis(), sep), (1000, FractionSeparator::Comma));
    }

    #[test]
    fn short_vtt_form() {
        let (ts, _) = Timestamp::parse("01:02.003").unwrap();
        assert_eq!(ts.millis(), 62_003);
    }

    #[test]
    fn upper_bound() {
        let (ts, _) = Timestamp::parse("99:59:59.999").unwrap();
        assert_eq!(ts.millis(), MAX_MILLIS);
        assert!(Timestamp::parse("100:00:00.000").is_err());
        assert!(Timestamp::from_millis(MAX_MILLIS + 1).is_none());
    }

    #[test]
    fn rejects_garbage_with_column() {
        let e = Timestamp::parse("00:61:00.000").unwrap_err();
        assert_eq!(e.column, 3);
        let e = Timestamp::parse("00:00:00.0").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(Timestamp::parse("0:00:00.000").is_err());
        assert!(Timestamp::parse("abc").is_err());
    }

    proptest! {
        #[test]
        fn format_parse_identity(ms in 0u32..=MAX_MILLIS, comma in any::<bool>()) {
            let sep = if comma { FractionSeparator::Comma } else { FractionSeparator::Dot };
            let ts = Timestamp::from_millis(ms).unwrap();
            let (back, used) = Timestamp::parse(&ts.format_with(sep)).unwrap();
            prop_assert_eq!(back, ts);
            prop_assert_eq!(used, sep);
        }
    }
}
