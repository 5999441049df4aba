use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::quiver::{Alphabet, Element, Letters, Presentation, Word};

/// An oriented relation `lead ≡ tail`, with every word of `tail` below `lead`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lead: Word,
    pub tail: Element,
}

const NO_RULE: u32 = u32::MAX;

#[derive(Default, Debug, Clone)]
struct TrieNode {
    next: FxHashMap<u16, u32>,
    rule: u32,
}

/// Prefix tree over rule leads, for locating reducible subwords.
#[derive(Debug, Clone)]
struct Trie {
    nodes: Vec<TrieNode>,
}

impl Trie {
    fn new() -> Trie {
        Trie { nodes: vec![TrieNode { next: FxHashMap::default(), rule: NO_RULE }] }
    }

    fn insert(&mut self, letters: &[u16], rule: u32) {
        let mut node = 0u32;
        for &l in letters {
            node = match self.nodes[node as usize].next.get(&l) {
                Some(&m) => m,
                None => {
                    let m = self.nodes.len() as u32;
                    self.nodes.push(TrieNode { next: FxHashMap::default(), rule: NO_RULE });
                    self.nodes[node as usize].next.insert(l, m);
                    m
                }
            };
        }
        self.nodes[node as usize].rule = rule;
    }

    fn remove(&mut self, letters: &[u16]) {
        let mut node = 0u32;
        for &l in letters {
            match self.nodes[node as usize].next.get(&l) {
                Some(&m) => node = m,
                None => return,
            }
        }
        self.nodes[node as usize].rule = NO_RULE;
    }

    /// First rule whose lead starts at `letters[0]`.
    fn match_prefix(&self, letters: &[u16]) -> Option<(usize, u32)> {
        let mut node = 0usize;
        for (depth, &l) in letters.iter().enumerate() {
            match self.nodes[node].next.get(&l) {
                Some(&m) => node = m as usize,
                None => return None,
            }
            if self.nodes[node].rule != NO_RULE {
                return Some((depth + 1, self.nodes[node].rule));
            }
        }
        None
    }

    /// Leftmost occurrence of some lead: (position, length, rule).
    fn find(&self, letters: &[u16]) -> Option<(usize, usize, u32)> {
        (0..letters.len()).find_map(|p| self.match_prefix(&letters[p..]).map(|(len, r)| (p, len, r)))
    }
}

/// Counters describing a completion run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub rules: usize,
    pub overlaps_processed: usize,
    /// Overlaps above the cap that were never resolved (bounded runs only).
    pub overlaps_skipped: usize,
    /// Reduced relations whose leading word exceeded the cap (bounded runs only).
    pub relations_dropped: usize,
}

/// A completed (or cap-truncated) rewriting system for a presentation.
#[derive(Debug)]
pub struct RewriteSystem {
    alphabet: Arc<Alphabet>,
    rules: Vec<Rule>,
    trie: Trie,
    dead: Vec<bool>,
    cap: usize,
    certified: bool,
    stats: CompletionStats,
    memo: RwLock<FxHashMap<Word, Arc<Element>>>,
}

const MEMO_LIMIT: usize = 1 << 21;

enum Pending {
    Relation(Element),
    Overlap { a: u32, b: u32, k: usize },
}

struct Completion<'a> {
    alphabet: &'a Arc<Alphabet>,
    cap: usize,
    certify: bool,
    rules: Vec<Option<Rule>>,
    trie: Trie,
    dead: Vec<bool>,
    first_letter: Vec<Vec<u32>>,
    last_letter: Vec<Vec<u32>>,
    queue: BinaryHeap<Reverse<(usize, u64)>>,
    items: FxHashMap<u64, Pending>,
    deferred: Vec<Pending>,
    seq: u64,
    stats: CompletionStats,
}

/// The subword letters[start..end] of `w`, with its endpoints.
pub(crate) fn subword(alpha: &Alphabet, w: &Word, start: usize, end: usize) -> Word {
    let l = w.letters();
    if start == end {
        let v = if start == 0 { w.target() } else { alpha.letter(l[start - 1]).source };
        return Word::trivial(v);
    }
    let target = alpha.letter(l[start]).target;
    let source = alpha.letter(l[end - 1]).source;
    Word::from_raw(target, source, Letters::from_slice(&l[start..end]))
}

fn mul_word_left(p: &Word, e: &Element) -> Element {
    e.iter().filter_map(|(w, c)| p.concat(w).map(|pw| (pw, c.clone()))).collect()
}

fn mul_word_right(e: &Element, q: &Word) -> Element {
    e.iter().filter_map(|(w, c)| w.concat(q).map(|wq| (wq, c.clone()))).collect()
}

fn touches(alpha: &Alphabet, w: &Word, dead: &[bool]) -> bool {
    dead[w.target() as usize] || w.letters().iter().any(|&l| dead[alpha.letter(l).source as usize])
}

impl<'a> Completion<'a> {
    fn push(&mut self, degree: usize, item: Pending) {
        if degree > self.cap {
            self.deferred.push(item);
            return;
        }
        self.seq += 1;
        self.queue.push(Reverse((degree, self.seq)));
        self.items.insert(self.seq, item);
    }

    fn reduce(&self, mut e: Element) -> Element {
        let any_dead = self.dead.iter().any(|&d| d);
        let mut out = Element::zero();
        while let Some((w, c)) = e.pop_leading() {
            if any_dead && touches(self.alphabet, &w, &self.dead) {
                continue;
            }
            match self.trie.find(w.letters()) {
                None => out.add_term(w, c),
                Some((p, len, id)) => {
                    let rule = self.rules[id as usize].as_ref().expect("trie only holds live rules");
                    for (t, d) in rule.tail.iter() {
                        e.add_term(w.splice(p, p + len, t), &c * d);
                    }
                }
            }
        }
        out
    }

    fn s_polynomial(&self, a: u32, b: u32, k: usize) -> Option<Element> {
        let ra = self.rules[a as usize].as_ref()?;
        let rb = self.rules[b as usize].as_ref()?;
        let la = ra.lead.len();
        let lb = rb.lead.len();
        let b_suffix = subword(self.alphabet, &rb.lead, k, lb);
        let a_prefix = subword(self.alphabet, &ra.lead, 0, la - k);
        let mut s = mul_word_right(&ra.tail, &b_suffix);
        s.sub(&mul_word_left(&a_prefix, &rb.tail));
        Some(s)
    }

    fn overlaps_of(&mut self, id: u32) {
        let lead = self.rules[id as usize].as_ref().unwrap().lead.clone();
        let l = lead.letters();
        let len = l.len();
        let mut found: Vec<(usize, Pending)> = Vec::new();
        // lead suffix = other prefix
        for p in 1..len {
            for &other in &self.first_letter[l[p] as usize] {
                let Some(r) = &self.rules[other as usize] else { continue };
                let ol = r.lead.letters();
                let k = len - p;
                if ol.len() > k && ol[..k] == l[p..] {
                    found.push((len + ol.len() - k, Pending::Overlap { a: id, b: other, k }));
                }
            }
        }
        // other suffix = lead prefix
        for q in 0..len.saturating_sub(1) {
            for &other in &self.last_letter[l[q] as usize] {
                if other == id {
                    continue;
                }
                let Some(r) = &self.rules[other as usize] else { continue };
                let ol = r.lead.letters();
                let k = q + 1;
                if ol.len() > k && ol[ol.len() - k..] == l[..k] {
                    found.push((len + ol.len() - k, Pending::Overlap { a: other, b: id, k }));
                }
            }
        }
        for (deg, item) in found {
            self.push(deg, item);
        }
    }

    fn remove_rule(&mut self, id: u32) -> Rule {
        let rule = self.rules[id as usize].take().expect("removing a live rule");
        self.trie.remove(rule.lead.letters());
        rule
    }

    fn add_relation(&mut self, rel: Element) -> Result<()> {
        let rel = self.reduce(rel);
        let Some((lead, c)) = rel.leading() else { return Ok(()) };
        if lead.len() > self.cap {
            if self.certify {
                return Err(Error::CapInsufficient {
                    cap: self.cap,
                    detail: format!("completion produced a rule with leading word of length {}", lead.len()),
                });
            }
            self.stats.relations_dropped += 1;
            return Ok(());
        }
        let lead = lead.clone();
        let inv = c.inv().expect("nonzero leading coefficient");
        let mut tail = rel;
        tail.pop_leading();
        let tail = tail.scaled(&-inv);

        if lead.is_trivial() {
            let v = lead.target() as usize;
            self.dead[v] = true;
            let doomed: Vec<u32> = (0..self.rules.len() as u32)
                .filter(|&r| self.rules[r as usize].as_ref().is_some_and(|r| touches(self.alphabet, &r.lead, &self.dead)))
                .collect();
            for r in doomed {
                let rule = self.remove_rule(r);
                let mut rel = rule.tail.negated();
                rel.add_term(rule.lead, self.alphabet.setting().field().one());
                let d = rel.degree();
                self.push(d, Pending::Relation(rel));
            }
            return Ok(());
        }

        // Inter-reduce: older rules whose lead contains the new lead go back in the queue.
        let mut sub = Trie::new();
        sub.insert(lead.letters(), 0);
        let containing: Vec<u32> = (0..self.rules.len() as u32)
            .filter(|&r| self.rules[r as usize].as_ref().is_some_and(|r| sub.find(r.lead.letters()).is_some()))
            .collect();
        for r in containing {
            let rule = self.remove_rule(r);
            let mut rel = rule.tail.negated();
            rel.add_term(rule.lead, self.alphabet.setting().field().one());
            let d = rel.degree();
            self.push(d, Pending::Relation(rel));
        }

        let id = self.rules.len() as u32;
        self.trie.insert(lead.letters(), id);
        let l = lead.letters();
        self.first_letter[l[0] as usize].push(id);
        self.last_letter[l[l.len() - 1] as usize].push(id);
        self.rules.push(Some(Rule { lead, tail }));
        self.overlaps_of(id);
        Ok(())
    }

    fn process(&mut self, item: Pending) -> Result<()> {
        match item {
            Pending::Relation(e) => self.add_relation(e),
            Pending::Overlap { a, b, k } => {
                if let Some(s) = self.s_polynomial(a, b, k) {
                    self.stats.overlaps_processed += 1;
                    self.add_relation(s)?;
                }
                Ok(())
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        loop {
            while let Some(Reverse((_, seq))) = self.queue.pop() {
                let item = self.items.remove(&seq).expect("queued item");
                self.process(item)?;
            }
            if !self.certify || self.deferred.is_empty() {
                break;
            }
            // Overlaps above the cap must still resolve for the system to be confluent.
            for item in std::mem::take(&mut self.deferred) {
                match item {
                    Pending::Overlap { a, b, k } => {
                        let Some(s) = self.s_polynomial(a, b, k) else { continue };
                        self.stats.overlaps_processed += 1;
                        let r = self.reduce(s);
                        if let Some((lead, _)) = r.leading() {
                            let (d, lead_len) = (r.degree(), lead.len());
                            if lead_len > self.cap {
                                return Err(Error::CapInsufficient {
                                    cap: self.cap,
                                    detail: format!(
                                        "overlap of leads {:?} and {:?} does not resolve below the cap",
                                        self.rules[a as usize].as_ref().unwrap().lead,
                                        self.rules[b as usize].as_ref().unwrap().lead
                                    ),
                                });
                            }
                            self.push(d, Pending::Relation(r));
                        }
                    }
                    Pending::Relation(e) => {
                        let r = self.reduce(e);
                        if !r.is_zero() {
                            return Err(Error::CapInsufficient {
                                cap: self.cap,
                                detail: format!("relation of degree {} exceeds the cap", r.degree()),
                            });
                        }
                    }
                }
            }
        }
        self.stats.overlaps_skipped = self.deferred.len();
        Ok(())
    }
}

impl RewriteSystem {
    /// Completes `pres` with rule leads of length at most `cap`.
    ///
    /// With `certify`, overlaps above the cap are also resolved, so that a
    /// successful return is a confluence certificate; without it they are
    /// counted and skipped, and normal forms are only guaranteed to be sound.
    pub fn complete(pres: &Presentation, cap: usize, certify: bool) -> Result<RewriteSystem> {
        let max_deg = pres.max_relation_degree();
        if cap < max_deg {
            return Err(Error::Config(format!("cap {cap} is below the maximal relation degree {max_deg}")));
        }
        let alphabet = pres.alphabet();
        let mut c = Completion {
            alphabet,
            cap,
            certify,
            rules: Vec::new(),
            trie: Trie::new(),
            dead: vec![false; alphabet.vertex_count() as usize],
            first_letter: vec![Vec::new(); alphabet.len()],
            last_letter: vec![Vec::new(); alphabet.len()],
            queue: BinaryHeap::new(),
            items: FxHashMap::default(),
            deferred: Vec::new(),
            seq: 0,
            stats: CompletionStats::default(),
        };
        for r in pres.relations() {
            for (_, comp) in r.element.uniform_components() {
                let d = comp.degree();
                c.push(d, Pending::Relation(comp));
            }
        }
        c.run()?;

        let mut live: Vec<Rule> = Vec::new();
        let mut trie = Trie::new();
        for r in c.rules.iter().flatten() {
            live.push(Rule { lead: r.lead.clone(), tail: c.reduce(r.tail.clone()) });
        }
        live.sort_by(|a, b| a.lead.cmp(&b.lead));
        for (k, r) in live.iter().enumerate() {
            trie.insert(r.lead.letters(), k as u32);
        }
        let mut stats = c.stats;
        stats.rules = live.len();
        // A bounded run that never had to skip anything is confluent as well.
        let certified = stats.overlaps_skipped == 0 && stats.relations_dropped == 0;
        Ok(RewriteSystem {
            alphabet: alphabet.clone(),
            rules: live,
            trie,
            dead: c.dead,
            cap,
            certified,
            stats,
            memo: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Whether every overlap was resolved (the rules are confluent).
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn stats(&self) -> &CompletionStats {
        &self.stats
    }

    pub fn is_dead_vertex(&self, v: u32) -> bool {
        self.dead[v as usize]
    }

    fn any_dead(&self) -> bool {
        self.dead.iter().any(|&d| d)
    }

    /// Whether no rule lead occurs in `w` (and `w` avoids dead vertices).
    pub fn is_irreducible(&self, w: &Word) -> bool {
        !(self.any_dead() && touches(&self.alphabet, w, &self.dead)) && self.trie.find(w.letters()).is_none()
    }

    /// Whether `w` has a rule lead ending at its last letter.
    pub(crate) fn reducible_at_end(&self, w: &Word) -> bool {
        let l = w.letters();
        (0..l.len()).any(|p| self.trie.match_prefix(&l[p..]).is_some_and(|(len, _)| p + len == l.len()))
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> Arc<Element> {
        if let Some(e) = self.memo.read().unwrap().get(w) {
            return e.clone();
        }
        let field = self.alphabet.setting().field();
        let out = if self.any_dead() && touches(&self.alphabet, w, &self.dead) {
            Element::zero()
        } else {
            match self.trie.find(w.letters()) {
                None => Element::word(w.clone(), field),
                Some((p, len, id)) => {
                    let mut out = Element::zero();
                    for (t, c) in self.rules[id as usize].tail.iter() {
                        let nf = self.normal_form_word(&w.splice(p, p + len, t));
                        out.add_scaled(&nf, c);
                    }
                    out
                }
            }
        };
        let out = Arc::new(out);
        let mut memo = self.memo.write().unwrap();
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Normal form of an element. Fails when the element exceeds the cap
    /// and the system carries no confluence certificate.
    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        if !self.certified && e.degree() > self.cap {
            return Err(Error::CapInsufficient {
                cap: self.cap,
                detail: format!("element of degree {} exceeds the cap of an uncertified system", e.degree()),
            });
        }
        Ok(self.normal_form_unchecked(e))
    }

    pub(crate) fn normal_form_unchecked(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{AlgebraKind, CartanMatrix, Relation, RelationTag, Setting, Symbol};

    fn quantum_a1() -> Arc<Alphabet> {
        Alphabet::quantum(Setting::new(CartanMatrix::of_type("A1").unwrap(), 5).unwrap())
    }

    #[test]
    fn commutative_toy() {
        // letters F < Kinv < K < E; impose E F = F E
        let al = quantum_a1();
        let k = al.setting().field();
        let ef = al.word(&[3, 0]).unwrap();
        let fe = al.word(&[0, 3]).unwrap();
        let mut r = Element::word(ef.clone(), k);
        r.add_term(fe.clone(), -k.one());
        let pres = Presentation::new(
            AlgebraKind::Uq,
            al.clone(),
            vec![Relation { tag: RelationTag::UqCommutator, label: "toy".into(), element: r }],
        );
        let rs = RewriteSystem::complete(&pres, 4, true).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert_eq!(rs.rules()[0].lead, ef);
        assert_eq!(rs.rules()[0].tail, Element::word(fe, k));
        assert!(rs.is_certified());
    }

    #[test]
    fn cap_below_relation_degree_is_rejected() {
        let s = Setting::new(CartanMatrix::of_type("A1").unwrap(), 5).unwrap();
        let pres = Presentation::build(AlgebraKind::UqC, s).unwrap();
        assert!(matches!(RewriteSystem::complete(&pres, 3, true), Err(Error::Config(_))));
    }

    #[test]
    fn trivial_lead_kills_vertex() {
        let al = quantum_a1();
        let k = al.setting().field();
        let pres = Presentation::new(
            AlgebraKind::Uq,
            al.clone(),
            vec![Relation { tag: RelationTag::UqTorus, label: "1".into(), element: Element::word(Word::trivial(0), k) }],
        );
        let rs = RewriteSystem::complete(&pres, 3, true).unwrap();
        assert!(rs.is_dead_vertex(0));
        let w = al.symbol_word(Symbol::E(0));
        assert!(rs.normal_form_word(&w).is_zero());
    }

    #[test]
    fn preprojective_rules_are_already_complete() {
        let s = Setting::new(CartanMatrix::of_type("A2").unwrap(), 5).unwrap();
        let pres = Presentation::build(AlgebraKind::PiC, s).unwrap();
        let rs = RewriteSystem::complete(&pres, 6, true).unwrap();
        assert_eq!(rs.rules().len(), 100);
        assert!(rs.is_certified());
    }
}
