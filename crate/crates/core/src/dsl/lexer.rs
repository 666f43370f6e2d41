#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Word(String),
    Punct(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const PUNCT: &str = "{};:*=+-/()[],";

fn is_word(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits `text` into words and punctuation. Returns the offending character
/// and its position on failure.
pub fn lex(text: &str) -> Result<Vec<Token>, (char, usize, usize)> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if is_word(c) {
                let start = i;
                while i < chars.len() && is_word(chars[i]) {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    line: li + 1,
                    column,
                });
            } else if PUNCT.contains(c) {
                out.push(Token {
                    tok: Tok::Punct(c),
                    line: li + 1,
                    column,
                });
                i += 1;
            } else {
                return Err((c, li + 1, column));
            }
        }
    }
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}
