use std::collections::{BTreeMap, BTreeSet};

use crate::pool::ClassPool;

/// Topological order of all entries: every super (class or protocol) comes
/// before its dependents, ties broken by canonical name. Entries caught in a
/// cycle are appended in name order.
pub fn initialization_order(pool: &ClassPool) -> Vec<String> {
    let mut pending: BTreeMap<&str, usize> = BTreeMap::new();
    let mut dependents: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for name in pool.entries.keys() {
        let supers: BTreeSet<&str> = pool
            .edges(name)
            .iter()
            .map(|e| e.target.as_str())
            .filter(|t| pool.entries.contains_key(*t))
            .collect();
        pending.insert(name, supers.len());
        for s in supers {
            dependents.entry(s).or_default().push(name);
        }
    }
    let mut ready: BTreeSet<&str> = pending.iter().filter(|(_, &n)| n == 0).map(|(k, _)| *k).collect();
    let mut order = Vec::with_capacity(pending.len());
    while let Some(next) = ready.pop_first() {
        order.push(next.to_string());
        for d in dependents.get(next).into_iter().flatten() {
            let n = pending.get_mut(d).expect("dependent is pending");
            *n -= 1;
            if *n == 0 {
                ready.insert(d);
            }
        }
    }
    if order.len() < pending.len() {
        let placed: BTreeSet<String> = order.iter().cloned().collect();
        order.extend(pool.entries.keys().filter(|k| !placed.contains(*k)).cloned());
    }
    order
}
