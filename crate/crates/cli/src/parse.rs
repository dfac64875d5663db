use num_bigint::BigInt;
use thiserror::Error;
use trinomial_core::Trinomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

/// Accepts `{"l0":[..],"l1":[..],"l2":[..]}` or the compact form `2,3;2;3`.
pub fn parse_instance(text: &str) -> Result<Trinomial, ParseError> {
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.starts_with('{') {
        return Trinomial::from_json(body).map_err(|e| ParseError::new(start, e.to_string()));
    }
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != 3 {
        return Err(ParseError::new(
            start,
            format!("expected three ';'-separated blocks, found {}", parts.len()),
        ));
    }
    let mut blocks: Vec<Vec<u64>> = Vec::with_capacity(3);
    let mut offset = start;
    for (i, part) in parts.iter().enumerate() {
        if part.trim().is_empty() {
            return Err(ParseError::new(offset, format!("block {i} is empty")));
        }
        let mut block = Vec::new();
        let mut tok_offset = offset;
        for tok in part.split(',') {
            let trimmed = tok.trim();
            let at = tok_offset + (tok.len() - tok.trim_start().len());
            let e: u64 = trimmed
                .parse()
                .map_err(|_| ParseError::new(at, format!("'{trimmed}' is not a positive integer")))?;
            if e == 0 {
                return Err(ParseError::new(at, "exponents must be positive"));
            }
            block.push(e);
            tok_offset += tok.len() + 1;
        }
        blocks.push(block);
        offset += part.len() + 1;
    }
    let [l0, l1, l2]: [Vec<u64>; 3] = blocks.try_into().expect("three blocks");
    Trinomial::new(l0, l1, l2).map_err(|e| ParseError::new(start, e.to_string()))
}

/// Parses `"a,b,..."` into a degree vector.
pub fn parse_degree(text: &str) -> Result<Vec<BigInt>, ParseError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for tok in text.split(',') {
        let trimmed = tok.trim();
        out.push(
            trimmed
                .parse()
                .map_err(|_| ParseError::new(offset, format!("'{trimmed}' is not an integer")))?,
        );
        offset += tok.len() + 1;
    }
    Ok(out)
}
