//! Memoized evaluation over an acyclic game graph.
//!
//! Uses an explicit stack: consolidated heaps can be thousands of moves deep,
//! far past what native recursion tolerates.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

struct Frame<K> {
    key: K,
    children: Vec<K>,
    next: usize,
}

/// Evaluates `root` bottom-up. `combine` sees a node together with the
/// values of all its children. Fails once more than `budget` new nodes
/// would be evaluated.
pub(crate) fn evaluate<K, V, C, F>(
    root: &K,
    memo: &mut HashMap<K, V>,
    budget: Option<usize>,
    mut children: C,
    mut combine: F,
) -> Result<V>
where
    K: Clone + Eq + Hash,
    V: Clone,
    C: FnMut(&K) -> Vec<K>,
    F: FnMut(&K, &[V]) -> V,
{
    if let Some(v) = memo.get(root) {
        return Ok(v.clone());
    }
    let mut fresh = 0usize;
    let mut stack = vec![Frame {
        children: children(root),
        key: root.clone(),
        next: 0,
    }];
    while let Some(top) = stack.last_mut() {
        if top.next < top.children.len() {
            let child = &top.children[top.next];
            top.next += 1;
            if !memo.contains_key(child) {
                let key = child.clone();
                let kids = children(&key);
                stack.push(Frame {
                    key,
                    children: kids,
                    next: 0,
                });
            }
            continue;
        }
        let frame = stack.pop().expect("stack is non-empty");
        let values: Vec<V> = frame.children.iter().map(|c| memo[c].clone()).collect();
        let value = combine(&frame.key, &values);
        memo.insert(frame.key, value);
        fresh += 1;
        if let Some(limit) = budget {
            if fresh > limit {
                return Err(Error::SearchBudgetExceeded(limit));
            }
        }
    }
    Ok(memo[root].clone())
}
