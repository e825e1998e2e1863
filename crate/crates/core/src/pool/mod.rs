//! The resolved world of all declarations: canonical names, classified super
//! edges, mixin-effective members, protocol conformance and initialization
//! order.

mod build;
mod members;
mod order;

pub use build::{build_pool, resolve_supers, ClassPool, PoolEntry, SuperEdge, SuperKind};
pub use members::{
    check_protocols, effective_members, EffectiveMembers, EffectiveMethod, EffectiveSlot, MemberKind, MemberOrigin,
    MixinResolver, META_MEMBERS,
};
pub use order::initialization_order;

/// Accessor names for a slot: the first letter after any leading `_`/`$` is
/// upper-cased when it is a lowercase ASCII letter, then prefixed with `get`
/// and `set`.
pub fn derive_accessor_names(slot_name: &str) -> (String, String) {
    let prefix_len = slot_name.len() - slot_name.trim_start_matches(['_', '$']).len();
    let (prefix, rest) = slot_name.split_at(prefix_len);
    let mut stem = String::with_capacity(slot_name.len());
    stem.push_str(prefix);
    let mut chars = rest.chars();
    if let Some(c) = chars.next() {
        stem.push(c.to_ascii_uppercase());
        stem.push_str(chars.as_str());
    }
    (format!("get{stem}"), format!("set{stem}"))
}
