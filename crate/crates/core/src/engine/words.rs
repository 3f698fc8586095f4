use super::algebra::{EngineError, WordItem};
use crate::rootdata::Root;

/// Parses a whitespace-separated word. Accepted tokens are `x1 x2 y1 y2 a1 a2`
/// (simple letters, the prefix is cosmetic), `g1 g2` and their inverses `G1 G2`.
/// Root-letter tokens `x12 x112 x1112 xb` and `^k` suffixes are accepted as well.
pub fn parse_word(text: &str) -> Result<Vec<WordItem>, EngineError> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| EngineError::BadToken(tok.to_string()))?),
            None => (tok, 1),
        };
        let bad = || EngineError::BadToken(tok.to_string());
        let mut chars = base.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest: String = chars.collect();
        match head {
            'x' | 'y' | 'a' => {
                let r = Root::from_name(&rest).ok_or_else(bad)?;
                if !(0..=255).contains(&exp) {
                    return Err(bad());
                }
                out.push(WordItem::Letter(r, exp as u8));
            }
            'g' | 'G' => {
                let sign = if head == 'G' { -1 } else { 1 };
                let e = (sign * exp) as i16;
                match rest.as_str() {
                    "1" => out.push(WordItem::Group([e, 0])),
                    "2" => out.push(WordItem::Group([0, e])),
                    _ => return Err(bad()),
                }
            }
            _ => return Err(bad()),
        }
    }
    Ok(out)
}
