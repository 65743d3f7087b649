//! Regenerates `data/mifr_corpus.jsonl`.

use frontier_core::audit::{corpus_to_json_lines, random_corpus};

const SEED: u64 = 20_240_611;
const COUNT: usize = 200;
const N_MAX: u32 = 10;

fn main() -> frontier_core::Result<()> {
    let corpus = random_corpus(SEED, COUNT, N_MAX)?;
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/mifr_corpus.jsonl");
    std::fs::write(path, corpus_to_json_lines(&corpus))?;
    println!("wrote {} families to {path}", corpus.len());
    Ok(())
}
