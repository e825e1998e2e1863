//! Mixin member computation.
//!
//! A class's effective members are the effective members of each mixin super
//! copied in `extends` order (later supers overwrite earlier ones), followed
//! by the class's own members, which always win. Constructors are never
//! copied. Members arriving twice from the same declaring class (diamonds)
//! are the same member and merge silently; a replacement between different
//! declaring classes that the subclass does not itself resolve is reported
//! as JSC-W002.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use indexmap::IndexMap;

use crate::diagnostic::{codes, Diagnostic};
use crate::pool::{ClassPool, SuperKind};
use crate::syntax::{MethodDecl, SlotSpec};

/// Members every meta-class object already has.
pub const META_MEMBERS: &[&str] = &["create", "init", "classInit", "name", "respondsTo"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MemberKind {
    Method,
    Slot,
    Accessor,
    Stub,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MemberOrigin {
    pub member_name: String,
    /// Canonical name of the declaring class.
    pub origin_class: String,
    pub kind: MemberKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveMethod<'p> {
    pub decl: &'p MethodDecl,
    pub origin: MemberOrigin,
}

impl EffectiveMethod<'_> {
    pub fn body_text(&self) -> &str {
        &self.decl.body_text
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveSlot<'p> {
    pub spec: &'p SlotSpec,
    pub origin: MemberOrigin,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EffectiveMembers<'p> {
    pub methods: IndexMap<String, EffectiveMethod<'p>>,
    pub slots: IndexMap<String, EffectiveSlot<'p>>,
    pub statics: IndexMap<String, &'p MethodDecl>,
    /// Optional protocol methods to be synthesized as empty functions.
    pub stubs: BTreeSet<String>,
    /// Every protocol implemented, directly, via protocol inheritance, or via
    /// a mixin super.
    pub protocols: BTreeSet<String>,
}

impl<'p> EffectiveMembers<'p> {
    /// Getter and setter names generated for the effective slots.
    pub fn accessors(&self) -> impl Iterator<Item = (&str, &EffectiveSlot<'p>)> {
        self.slots
            .values()
            .flat_map(|s| [(s.spec.getter_name.as_str(), s), (s.spec.setter_name.as_str(), s)])
    }

    /// Every method name an instance responds to, with its origin: methods,
    /// slot accessors and protocol stubs.
    pub fn method_surface(&self) -> BTreeMap<String, MemberOrigin> {
        let mut out = BTreeMap::new();
        for (name, slot) in self.accessors() {
            out.insert(
                name.to_string(),
                MemberOrigin {
                    member_name: name.to_string(),
                    origin_class: slot.origin.origin_class.clone(),
                    kind: MemberKind::Accessor,
                },
            );
        }
        for (name, m) in &self.methods {
            out.insert(name.clone(), m.origin.clone());
        }
        for stub in &self.stubs {
            out.entry(stub.clone()).or_insert_with(|| MemberOrigin {
                member_name: stub.clone(),
                origin_class: String::new(),
                kind: MemberKind::Stub,
            });
        }
        out
    }

    fn responds_to(&self, name: &str) -> bool {
        self.methods.contains_key(name) || self.accessors().any(|(a, _)| a == name)
    }
}

#[derive(Debug)]
struct Computed<'p> {
    members: EffectiveMembers<'p>,
    diagnostics: Vec<Diagnostic>,
}

/// Memoizing calculator of effective members over one resolved pool.
pub struct MixinResolver<'p> {
    pool: &'p ClassPool,
    cache: HashMap<String, Rc<Computed<'p>>>,
    in_progress: HashSet<String>,
}

impl<'p> MixinResolver<'p> {
    pub fn new(pool: &'p ClassPool) -> Self {
        MixinResolver { pool, cache: HashMap::new(), in_progress: HashSet::new() }
    }

    /// Effective members of `class` plus the diagnostics raised while
    /// composing that class (not those of its supers).
    pub fn members(&mut self, class: &str) -> (EffectiveMembers<'p>, Vec<Diagnostic>) {
        let c = self.compute(class);
        (c.members.clone(), c.diagnostics.clone())
    }

    fn protocol_closure(&self, protocol: &str, out: &mut BTreeSet<String>) {
        if !out.insert(protocol.to_string()) {
            return;
        }
        for e in self.pool.edges(protocol) {
            self.protocol_closure(&e.target, out);
        }
    }

    fn compute(&mut self, name: &str) -> Rc<Computed<'p>> {
        if let Some(c) = self.cache.get(name) {
            return Rc::clone(c);
        }
        let pool = self.pool;
        let mut members = EffectiveMembers::default();
        let mut diagnostics = Vec::new();
        let Some(class) = pool.class(name) else {
            if pool.protocol(name).is_some() {
                self.protocol_closure(name, &mut members.protocols);
            }
            return Rc::new(Computed { members, diagnostics });
        };
        self.in_progress.insert(name.to_string());

        // name -> declaring classes that contributed it, in arrival order
        let mut method_conflicts: IndexMap<String, Vec<String>> = IndexMap::new();
        let mut slot_conflicts: IndexMap<String, Vec<String>> = IndexMap::new();
        for edge in pool.edges(name) {
            if self.in_progress.contains(&edge.target) {
                continue;
            }
            match edge.kind {
                SuperKind::Protocol => self.protocol_closure(&edge.target, &mut members.protocols),
                SuperKind::Mixin => {
                    let sup = self.compute(&edge.target);
                    members.protocols.extend(sup.members.protocols.iter().cloned());
                    for (n, m) in &sup.members.methods {
                        overlay(&mut members.methods, n, m.clone(), |m| &m.origin, &mut method_conflicts);
                    }
                    for (n, s) in &sup.members.slots {
                        overlay(&mut members.slots, n, s.clone(), |s| &s.origin, &mut slot_conflicts);
                    }
                }
            }
        }

        for m in &class.methods {
            let origin = MemberOrigin { member_name: m.name.clone(), origin_class: name.to_string(), kind: MemberKind::Method };
            members.methods.insert(m.name.clone(), EffectiveMethod { decl: m, origin });
        }
        for s in &class.slots {
            let origin = MemberOrigin { member_name: s.name.clone(), origin_class: name.to_string(), kind: MemberKind::Slot };
            members.slots.insert(s.name.clone(), EffectiveSlot { spec: s, origin });
        }
        for s in &class.statics {
            members.statics.insert(s.name.clone(), s);
            if META_MEMBERS.contains(&s.name.as_str()) {
                diagnostics.push(Diagnostic::error(
                    codes::RESERVED_STATIC,
                    s.name_span,
                    format!("static `{}` of `{name}` collides with a built-in meta-class member", s.name),
                ));
            }
        }

        let own_methods: HashSet<&str> = class.methods.iter().map(|m| m.name.as_str()).collect();
        let own_slots: HashSet<&str> = class.slots.iter().map(|s| s.name.as_str()).collect();
        for (what, conflicts, own) in
            [("method", &method_conflicts, &own_methods), ("slot", &slot_conflicts, &own_slots)]
        {
            for (member, origins) in conflicts {
                if own.contains(member.as_str()) {
                    continue;
                }
                let winner = match what {
                    "method" => &members.methods[member].origin.origin_class,
                    _ => &members.slots[member].origin.origin_class,
                };
                let losers: Vec<&str> =
                    origins.iter().filter(|o| *o != winner).map(String::as_str).collect::<BTreeSet<_>>().into_iter().collect();
                diagnostics.push(Diagnostic::warning(
                    codes::MIXIN_CONFLICT,
                    class.name_span,
                    format!(
                        "{what} `{member}` of `{name}` is inherited from both {} and {winner}; the one from {winner} is used",
                        losers.join(", "),
                    ),
                ));
            }
        }

        check_accessor_collisions(name, &members, &mut diagnostics, class.name_span);
        members.stubs = protocol_outcome(pool, name, &members).1;

        self.in_progress.remove(name);
        let computed = Rc::new(Computed { members, diagnostics });
        self.cache.insert(name.to_string(), Rc::clone(&computed));
        computed
    }
}

fn overlay<T>(
    map: &mut IndexMap<String, T>,
    name: &str,
    incoming: T,
    origin: impl Fn(&T) -> &MemberOrigin,
    conflicts: &mut IndexMap<String, Vec<String>>,
) {
    if let Some(existing) = map.get(name) {
        let before = origin(existing).origin_class.clone();
        let after = origin(&incoming).origin_class.clone();
        if before == after {
            return;
        }
        let seen = conflicts.entry(name.to_string()).or_insert_with(|| vec![before]);
        seen.push(after);
    }
    map.insert(name.to_string(), incoming);
}

fn check_accessor_collisions(
    class: &str,
    members: &EffectiveMembers<'_>,
    diags: &mut Vec<Diagnostic>,
    class_span: crate::span::Span,
) {
    let mut claimed: HashMap<&str, &EffectiveSlot<'_>> = HashMap::new();
    for (accessor, slot) in members.accessors() {
        let slot_origin = &slot.origin.origin_class;
        if let Some(m) = members.methods.get(accessor) {
            let method_origin = &m.origin.origin_class;
            // report where the collision is introduced, not in every subclass
            if slot_origin == class || method_origin == class || slot_origin != method_origin {
                let span = if slot_origin == class { slot.spec.span } else { class_span };
                diags.push(
                    Diagnostic::error(
                        codes::ACCESSOR_COLLISION,
                        span,
                        format!(
                            "accessor `{accessor}` of slot `{}` (from {slot_origin}) collides with method `{accessor}` (from {method_origin})",
                            slot.spec.name
                        ),
                    )
                    .with_note(Some(m.decl.name_span), "method declared here"),
                );
            }
        }
        if let Some(other) = claimed.insert(accessor, slot) {
            if other.spec.name != slot.spec.name
                && (slot_origin == class || other.origin.origin_class == class || *slot_origin != other.origin.origin_class)
            {
                diags.push(
                    Diagnostic::error(
                        codes::ACCESSOR_COLLISION,
                        if slot_origin == class { slot.spec.span } else { class_span },
                        format!(
                            "slots `{}` and `{}` both generate accessor `{accessor}`",
                            other.spec.name, slot.spec.name
                        ),
                    )
                    .with_note(Some(other.spec.span), "other slot declared here"),
                );
            }
        }
    }
}

/// Missing-required diagnostics and the stub set for one class.
fn protocol_outcome(pool: &ClassPool, class: &str, eff: &EffectiveMembers<'_>) -> (Vec<Diagnostic>, BTreeSet<String>) {
    let mut diags = Vec::new();
    let mut stubs = BTreeSet::new();
    let class_span = pool.class(class).map(|c| c.name_span);
    for protocol in &eff.protocols {
        let Some(decl) = pool.protocol(protocol) else { continue };
        for req in &decl.requirements {
            if eff.responds_to(&req.name) {
                continue;
            }
            if req.required {
                let mut d = Diagnostic::error(
                    codes::MISSING_REQUIRED,
                    class_span.unwrap_or(req.span),
                    format!("class `{class}` does not implement method `{}` required by protocol `{protocol}`", req.name),
                );
                d = d.with_note(Some(req.span), "required here");
                diags.push(d);
            } else {
                stubs.insert(req.name.clone());
            }
        }
    }
    (diags, stubs)
}

/// Effective members of one class; diagnostics cover that class only.
pub fn effective_members<'p>(pool: &'p ClassPool, class: &str) -> (EffectiveMembers<'p>, Vec<Diagnostic>) {
    MixinResolver::new(pool).members(class)
}

/// Compile-time protocol verification: JSC-E030 for every unmet required
/// method, plus the stub set for unmet optional ones.
pub fn check_protocols(pool: &ClassPool, class: &str, eff: &EffectiveMembers<'_>) -> (Vec<Diagnostic>, BTreeSet<String>) {
    protocol_outcome(pool, class, eff)
}
