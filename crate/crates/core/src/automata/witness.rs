//! Least-witness search over multi-tape deterministic automata.
//!
//! A symbol of a `tapes`-tape automaton encodes one letter per tape in base
//! `b = |alphabet|^(1/tapes)`, tape 0 being the most significant digit. The
//! search returns the shortest word reaching a target state; among those,
//! tapes are minimised lexicographically one at a time in `priority` order.

use std::collections::VecDeque;

use super::dfa::{Dfa, StateId};
use crate::alphabet::{Symbol, Word};

fn base_for(k: usize, tapes: usize) -> usize {
    let b = (k as f64).powf(1.0 / tapes as f64).round() as usize;
    assert_eq!(b.pow(tapes as u32), k, "alphabet size is not a perfect power");
    b
}

#[inline]
fn digit(symbol: Symbol, tape: usize, tapes: usize, base: usize) -> usize {
    (symbol / base.pow((tapes - 1 - tape) as u32)) % base
}

pub fn least_word(
    dfa: &Dfa,
    target: impl Fn(StateId) -> bool,
    tapes: usize,
    priority: &[usize],
) -> Option<Word> {
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let base = base_for(k, tapes);

    let mut dist = vec![usize::MAX; n];
    dist[dfa.initial()] = 0;
    let mut queue = VecDeque::from([dfa.initial()]);
    let mut length = None;
    while let Some(q) = queue.pop_front() {
        if target(q) {
            length = Some(dist[q]);
            break;
        }
        for s in 0..k {
            let t = dfa.next(q, s);
            if dist[t] == usize::MAX {
                dist[t] = dist[q] + 1;
                queue.push_back(t);
            }
        }
    }
    let len = length?;
    let is_target: Vec<bool> = (0..n).map(&target).collect();

    let mut fixed: Vec<Option<Vec<usize>>> = vec![None; tapes];
    let consistent = |fixed: &[Option<Vec<usize>>], t: usize, s: Symbol| {
        fixed
            .iter()
            .enumerate()
            .all(|(tape, f)| f.as_ref().is_none_or(|f| f[t] == digit(s, tape, tapes, base)))
    };

    for &tape in priority {
        // good[t][q]: a target is reachable from q in exactly len - t steps
        // respecting the tapes fixed so far.
        let mut good = vec![vec![false; n]; len + 1];
        good[len] = is_target.clone();
        for t in (0..len).rev() {
            for q in 0..n {
                good[t][q] = (0..k)
                    .any(|s| consistent(&fixed, t, s) && good[t + 1][dfa.next(q, s)]);
            }
        }
        let mut current = vec![false; n];
        current[dfa.initial()] = true;
        let mut letters = Vec::with_capacity(len);
        for t in 0..len {
            let mut best = usize::MAX;
            for q in (0..n).filter(|&q| current[q]) {
                for s in 0..k {
                    if consistent(&fixed, t, s) && good[t + 1][dfa.next(q, s)] {
                        best = best.min(digit(s, tape, tapes, base));
                    }
                }
            }
            debug_assert!(best != usize::MAX);
            let mut next = vec![false; n];
            for q in (0..n).filter(|&q| current[q]) {
                for s in 0..k {
                    if consistent(&fixed, t, s)
                        && digit(s, tape, tapes, base) == best
                        && good[t + 1][dfa.next(q, s)]
                    {
                        next[dfa.next(q, s)] = true;
                    }
                }
            }
            letters.push(best);
            current = next;
        }
        fixed[tape] = Some(letters);
    }

    let fixed: Vec<Vec<usize>> = fixed
        .into_iter()
        .map(|f| f.expect("priority covers every tape"))
        .collect();
    Some(
        (0..len)
            .map(|t| {
                fixed
                    .iter()
                    .fold(0, |acc, tape_letters| acc * base + tape_letters[t])
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{words_of_length, Alphabet};

    #[test]
    fn single_tape_is_shortlex() {
        // Accepts words containing `b`.
        let g = Alphabet::new(["a", "b"]).unwrap();
        let d = Dfa::new(g, vec!["n".into(), "y".into()], 0, vec![0, 1, 1, 1], vec![false, true])
            .unwrap();
        assert_eq!(least_word(&d, |q| q == 1, 1, &[0]), Some(vec![1]));
    }

    #[test]
    fn tape_priority_is_respected() {
        // Two tapes over {a, b}: accept length-2 pair words where the tapes differ
        // somewhere. Brute force the expected order.
        let g = Alphabet::new(["a", "b"]).unwrap();
        let p = g.pairs(&g);
        // states: 0 equal so far len0, 1 equal len1, 2 differ len1, 3 done-differ, 4 done-equal/other
        let mut delta = vec![4; 5 * 4];
        for s in 0..4 {
            delta[s] = if s / 2 == s % 2 { 1 } else { 2 };
            delta[4 + s] = if s / 2 == s % 2 { 4 } else { 3 };
            delta[8 + s] = 3;
            delta[12 + s] = 4;
            delta[16 + s] = 4;
        }
        let d = Dfa::new(p, (0..5).map(|i| i.to_string()).collect(), 0, delta, vec![false, false, false, true, false]).unwrap();
        let best = words_of_length(4, 2)
            .filter(|w| d.accepts(w).unwrap())
            .map(|w| crate::alphabet::unzip_pair(2, &w))
            .min()
            .unwrap();
        let got = least_word(&d, |q| q == 3, 2, &[0, 1]).unwrap();
        assert_eq!(crate::alphabet::unzip_pair(2, &got), best);
        let got = least_word(&d, |q| q == 3, 2, &[1, 0]).unwrap();
        let (f, s) = crate::alphabet::unzip_pair(2, &got);
        let best_rev = words_of_length(4, 2)
            .filter(|w| d.accepts(w).unwrap())
            .map(|w| {
                let (a, b) = crate::alphabet::unzip_pair(2, &w);
                (b, a)
            })
            .min()
            .unwrap();
        assert_eq!((s, f), best_rev);
    }
}
