//! Semistandard Young tableaux, the charge statistic, and the Kostka,
//! Kostka-Foulkes and modified Kostka-Foulkes polynomials.
//!
//! Charge follows Lascoux-Schützenberger on the reading word obtained by
//! reading rows left to right, bottom row first. Standard subwords are
//! extracted by scanning leftwards cyclically for `1, 2, 3, ...`; the index
//! increases by one each time the scan wraps around.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::partitions::{horizontal_strip_additions, n_stat, Partition, WeakComposition};
use crate::ratfunc::PolyT;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ssyt {
    rows: Vec<Vec<usize>>,
    shape: Partition,
    content: WeakComposition,
}

impl Ssyt {
    /// Validates row and column conditions and derives shape and content.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        for r in &rows {
            if r.windows(2).any(|w| w[0] > w[1]) || r.contains(&0) {
                return Err(Error::InvalidArgument(format!("row {r:?} is not weakly increasing")));
            }
        }
        for i in 1..rows.len() {
            for j in 0..rows[i].len() {
                if rows[i][j] <= rows[i - 1][j] {
                    return Err(Error::InvalidArgument("column not strictly increasing".into()));
                }
            }
        }
        let max = rows.iter().flatten().copied().max().unwrap_or(0);
        let mut content = vec![0; max];
        for &x in rows.iter().flatten() {
            content[x - 1] += 1;
        }
        Ok(Ssyt {
            rows,
            shape,
            content: WeakComposition::new(content),
        })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn content(&self) -> &WeakComposition {
        &self.content
    }

    /// Rows left to right, bottom row first.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }
}

/// All tableaux of the given shape and content, built by successively adding
/// horizontal strips of entries `1, 2, ...`.
pub fn enumerate_ssyt(shape: &Partition, content: &WeakComposition) -> Result<Vec<Ssyt>> {
    if shape.size() != content.size() {
        return Err(Error::SizeMismatch(format!(
            "SSYT of shape {shape} and content {content:?}"
        )));
    }
    let mut chains = Vec::new();
    let mut chain = vec![Partition::empty()];
    strip_chains(shape, content.parts(), &mut chain, &mut chains);
    Ok(chains
        .into_iter()
        .map(|ch| {
            let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
            for (k, w) in ch.windows(2).enumerate() {
                for (i, row) in rows.iter_mut().enumerate() {
                    for _ in w[0].get(i)..w[1].get(i) {
                        row.push(k + 1);
                    }
                }
            }
            Ssyt {
                rows,
                shape: shape.clone(),
                content: content.clone(),
            }
        })
        .collect())
}

fn strip_chains(
    shape: &Partition,
    content: &[usize],
    chain: &mut Vec<Partition>,
    out: &mut Vec<Vec<Partition>>,
) {
    let step = chain.len() - 1;
    if step == content.len() {
        if chain.last() == Some(shape) {
            out.push(chain.clone());
        }
        return;
    }
    let cur = chain.last().unwrap().clone();
    for next in horizontal_strip_additions(&cur, content[step]) {
        if shape.contains(&next) {
            chain.push(next);
            strip_chains(shape, content, chain, out);
            chain.pop();
        }
    }
}

/// Charge of a word whose content is a partition.
pub fn charge_of_word(word: &[usize]) -> Result<usize> {
    let max = word.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0usize; max + 1];
    for &x in word {
        if x == 0 {
            return Err(Error::InvalidArgument("word letters start at 1".into()));
        }
        counts[x] += 1;
    }
    if counts[1..].windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(format!(
            "charge needs partition content, got {:?}",
            &counts[1..]
        )));
    }
    let n = word.len();
    let mut used = vec![false; n];
    let mut remaining = n;
    let mut total = 0;
    while remaining > 0 {
        // rightmost unused 1
        let mut pos = (0..n)
            .rev()
            .find(|&i| !used[i] && word[i] == 1)
            .expect("partition content has a 1 in every subword");
        used[pos] = true;
        remaining -= 1;
        let mut index = 0;
        let mut letter = 2;
        loop {
            let mut found = None;
            let mut wrapped = false;
            let mut i = pos;
            for _ in 0..n {
                if i == 0 {
                    i = n - 1;
                    wrapped = true;
                } else {
                    i -= 1;
                }
                if !used[i] && word[i] == letter {
                    found = Some(i);
                    break;
                }
            }
            let Some(f) = found else { break };
            if wrapped {
                index += 1;
            }
            total += index;
            used[f] = true;
            remaining -= 1;
            pos = f;
            letter += 1;
        }
    }
    Ok(total)
}

fn partition_content(t: &Ssyt) -> Result<Partition> {
    if !t.content.is_partition() {
        return Err(Error::InvalidArgument(format!(
            "content {:?} is not a partition",
            t.content
        )));
    }
    Partition::new(t.content.parts().to_vec())
}

pub fn charge(t: &Ssyt) -> Result<usize> {
    partition_content(t)?;
    charge_of_word(&t.reading_word())
}

pub fn cocharge(t: &Ssyt) -> Result<usize> {
    let mu = partition_content(t)?;
    Ok(n_stat(&mu) - charge_of_word(&t.reading_word())?)
}

/// Number of tableaux of shape `lambda` and content `mu`.
pub fn kostka_number(lambda: &Partition, mu: &WeakComposition) -> Result<usize> {
    Ok(enumerate_ssyt(lambda, mu)?.len())
}

fn charge_table(lambda: &Partition, mu: &Partition) -> Result<std::sync::Arc<Vec<usize>>> {
    static MEMO: Memo<(Partition, Partition), Vec<usize>> = Memo::new();
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("Kostka-Foulkes {lambda}, {mu}")));
    }
    MEMO.try_get_or_insert_with(&(lambda.clone(), mu.clone()), || {
        enumerate_ssyt(lambda, &WeakComposition::from(mu))?
            .iter()
            .map(charge)
            .collect()
    })
}

fn generating_poly(exps: impl Iterator<Item = usize>) -> PolyT {
    let mut c: Vec<BigRational> = Vec::new();
    for e in exps {
        if c.len() <= e {
            c.resize(e + 1, BigRational::from_integer(0.into()));
        }
        c[e] += BigRational::one();
    }
    PolyT::new(c)
}

/// `K_{λμ}(t) = Σ_{T ∈ SSYT(λ, μ)} t^{charge(T)}`.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Result<PolyT> {
    let charges = charge_table(lambda, mu)?;
    Ok(generating_poly(charges.iter().copied()))
}

/// `K̃_{λμ}(t) = Σ_{T ∈ SSYT(λ, μ)} t^{cocharge(T)}`.
pub fn modified_kostka(lambda: &Partition, mu: &Partition) -> Result<PolyT> {
    let charges = charge_table(lambda, mu)?;
    let nm = n_stat(mu);
    Ok(generating_poly(charges.iter().map(|c| nm - c)))
}
