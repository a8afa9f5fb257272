"""Finite event structures with polarity.

Events are small integers, local to one structure.  Causality is given by
immediate edges (meant to be the covering relation of the induced partial
order) and conflict by an irreflexive symmetric binary relation which is
inherited upward: if a # b and b <= c then a # c.

The raw constructor stores data as given, so that deliberately broken
structures can be built and inspected with ``validate_es``.  Use
``make_event_structure`` for the normalizing builder (closes conflict,
reduces edges to covers, rejects cycles), which is what every game
construction in this package goes through.

All values are immutable after construction; derived data (the full order,
conflict closure, configurations) is computed lazily and cached, so sharing
a structure between threads is safe.
"""

from __future__ import annotations

from enum import Enum
from functools import cached_property
from itertools import combinations

DEFAULT_CONFIG_CAP = 1 << 20


class SizeLimitExceeded(Exception):
    """An enumeration passed its configured cap."""


class CycleDetected(Exception):
    def __init__(self, events):
        self.events = tuple(events)
        super().__init__("causal cycle through events %r" % (self.events,))


class Polarity(str, Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self):
        return NEG if self is POS else POS


POS = Polarity.POSITIVE
NEG = Polarity.NEGATIVE


class EventStructure:
    """Prime event structure with binary conflict, polarity and display labels.

    ``edges`` holds immediate causality pairs (a, b) meaning a -> b.
    ``conflict`` holds unordered pairs, stored exactly as given (the
    hereditary closure lives in ``conflict_closed``).
    """

    def __init__(self, events=(), polarity=None, label=None, edges=(), conflict=()):
        polarity = polarity or {}
        label = label or {}
        self.events = tuple(sorted(int(e) for e in events))
        evset = set(self.events)
        if len(evset) != len(self.events):
            raise ValueError("duplicate event ids")
        self.polarity = {e: Polarity(polarity[e]) for e in self.events}
        self.label = {e: str(label.get(e, str(e))) for e in self.events}
        for a, b in edges:
            if a not in evset or b not in evset:
                raise ValueError("edge (%r, %r) uses unknown event" % (a, b))
        self.edges = frozenset((int(a), int(b)) for a, b in edges)
        for a, b in conflict:
            if a not in evset or b not in evset:
                raise ValueError("conflict (%r, %r) uses unknown event" % (a, b))
        self.conflict = frozenset(
            (min(int(a), int(b)), max(int(a), int(b))) for a, b in conflict
        )

    # -- induced order -------------------------------------------------

    @cached_property
    def _preds(self):
        preds = {e: set() for e in self.events}
        for a, b in self.edges:
            preds[b].add(a)
        return preds

    @cached_property
    def _succs(self):
        succs = {e: set() for e in self.events}
        for a, b in self.edges:
            succs[a].add(b)
        return succs

    @cached_property
    def toposorted(self):
        """Events in a causal linear order; raises CycleDetected."""
        indeg = {e: len(self._preds[e]) for e in self.events}
        ready = sorted(e for e in self.events if indeg[e] == 0)
        out = []
        while ready:
            e = ready.pop(0)
            out.append(e)
            added = []
            for f in self._succs[e]:
                indeg[f] -= 1
                if indeg[f] == 0:
                    added.append(f)
            ready = sorted(ready + added)
        if len(out) != len(self.events):
            raise CycleDetected([e for e in self.events if indeg[e] > 0])
        return tuple(out)

    @cached_property
    def _strict_below(self):
        # strict_below[e] = set of events strictly under e
        below = {}
        for e in self.toposorted:
            acc = set()
            for p in self._preds[e]:
                acc.add(p)
                acc |= below[p]
            below[e] = frozenset(acc)
        return below

    def below(self, e):
        """Strict causal predecessors of e."""
        return self._strict_below[e]

    def cone(self, e):
        """Down-closure of a single event, e included."""
        return self._strict_below[e] | {e}

    def lt(self, a, b):
        return a in self._strict_below[b]

    def le(self, a, b):
        return a == b or a in self._strict_below[b]

    @cached_property
    def covers(self):
        """Covering pairs of the induced order."""
        out = set()
        for b in self.events:
            under = self._strict_below[b]
            for a in under:
                if not any(a in self._strict_below[c] for c in under):
                    out.add((a, b))
        return frozenset(out)

    @cached_property
    def depth(self):
        d = {}
        for e in self.toposorted:
            d[e] = 1 + max((d[p] for p in self._preds[e]), default=-1)
        return d

    # -- conflict ------------------------------------------------------

    @cached_property
    def conflict_closed(self):
        """Hereditary closure: a # b and b <= c gives a # c.

        May contain pairs (c, c); such an event can never occur and makes
        the structure invalid (reported by validate_es).
        """
        out = set()
        for a, b in self.conflict:
            for a2 in self._above_or_self(a):
                for b2 in self._above_or_self(b):
                    out.add((min(a2, b2), max(a2, b2)))
        return frozenset(out)

    def _above_or_self(self, e):
        return [f for f in self.events if self.le(e, f)]

    @cached_property
    def conflict_adj(self):
        adj = {e: set() for e in self.events}
        for a, b in self.conflict_closed:
            adj[a].add(b)
            adj[b].add(a)
            if a == b:
                adj[a].add(a)
        return {e: frozenset(v) for e, v in adj.items()}

    def in_conflict(self, a, b):
        return b in self.conflict_adj[a]

    def conflict_free(self, events):
        adj = self.conflict_adj
        evs = set(events)
        for a in evs:
            if adj[a] & evs:
                return False
        return True

    def is_downclosed(self, events):
        s = set(events)
        return all(self._strict_below[e] <= s for e in s)

    # -- misc ----------------------------------------------------------

    @cached_property
    def minimal_events(self):
        return frozenset(e for e in self.events if not self._preds[e])

    def __len__(self):
        return len(self.events)

    def __repr__(self):
        return "EventStructure(%d events)" % len(self.events)

    def describe(self):
        lines = []
        for e in self.events:
            pre = ",".join(str(p) for p in sorted(self._preds[e]))
            cf = ",".join(
                str(b if a == e else a)
                for a, b in sorted(self.conflict)
                if e in (a, b)
            )
            lines.append(
                "%3d %s %-12s <- [%s]%s"
                % (e, self.polarity[e].value, self.label[e], pre,
                   ("  # " + cf) if cf else "")
            )
        return "\n".join(lines)


def make_event_structure(events, polarity, label, edges=(), conflict=()):
    """Normalizing builder: rejects cycles and self-conflict, reduces the
    causality to covering pairs, and closes conflict hereditarily."""
    raw = EventStructure(events, polarity, label, edges, conflict)
    raw.toposorted  # raises CycleDetected on a cycle
    closed = raw.conflict_closed
    for a, b in closed:
        if a == b:
            raise ValueError("event %d is in conflict with itself after closure" % a)
    return EventStructure(events, polarity, label, raw.covers, closed)


# -- validation --------------------------------------------------------


class ValidationIssue:
    def __init__(self, code, events, message):
        self.code = code
        self.events = tuple(events)
        self.message = message

    def __repr__(self):
        return "%s%r: %s" % (self.code, self.events, self.message)


class ValidationReport:
    def __init__(self, issues):
        self.issues = tuple(issues)

    @property
    def ok(self):
        return not self.issues

    def codes(self):
        return {i.code for i in self.issues}

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return "ValidationReport(%s)" % "; ".join(map(repr, self.issues))


def validate_es(es):
    """Check acyclicity, covering-edge minimality and conflict closure.

    Returns a report rather than raising, so that deliberately broken
    structures can be inspected.
    """
    issues = []
    try:
        es.toposorted
    except CycleDetected as exc:
        issues.append(ValidationIssue("CycleDetected", exc.events,
                                      "causality has a cycle"))
        return ValidationReport(issues)
    for a, b in sorted(es.edges - es.covers):
        issues.append(ValidationIssue(
            "NonCoveringEdge", (a, b),
            "edge %d->%d is implied transitively, not a covering pair" % (a, b)))
    for a, b in sorted(es.conflict):
        if a == b:
            issues.append(ValidationIssue("SelfConflict", (a,),
                                          "event %d conflicts with itself" % a))
    want = es.conflict_closed
    have = es.conflict
    for a, b in sorted(want - have):
        issues.append(ValidationIssue(
            "ConflictNotInherited", (a, b),
            "inherited conflict %d # %d is missing from the declared relation"
            % (a, b)))
    return ValidationReport(issues)


# -- configurations ----------------------------------------------------


class Configuration:
    """Down-closed conflict-free set of events of one structure."""

    __slots__ = ("es", "events", "key")

    def __init__(self, es, events, _check=True):
        self.es = es
        self.events = frozenset(events)
        self.key = tuple(sorted(self.events))
        if _check:
            if not self.events <= set(es.events):
                raise ValueError("configuration uses unknown events")
            if not es.is_downclosed(self.events):
                raise ValueError("configuration %r is not down-closed" % (self.key,))
            if not es.conflict_free(self.events):
                raise ValueError("configuration %r has a conflict" % (self.key,))

    def __eq__(self, other):
        return (isinstance(other, Configuration)
                and self.es is other.es and self.events == other.events)

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return (len(self.key), self.key) < (len(other.key), other.key)

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.key)

    def __contains__(self, e):
        return e in self.events

    def __repr__(self):
        return "{" + ", ".join(self.es.label[e] + ":" + str(e) for e in self.key) + "}"

    def subset_of(self, other):
        return self.events <= other.events


def config(es, events):
    return Configuration(es, events)


def enumerate_configurations(es, cap=DEFAULT_CONFIG_CAP):
    """All down-closed conflict-free subsets, the empty one included.

    Deterministic order: by size, then lexicographically on sorted ids.
    Raises SizeLimitExceeded past `cap`.
    """
    es.toposorted  # insist on acyclicity up front
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for cfg in frontier:
            for e in es.events:
                if e in cfg:
                    continue
                if not es._preds[e] <= cfg:
                    continue
                if not all(not es.in_conflict(e, f) for f in cfg):
                    continue
                if es.in_conflict(e, e):
                    continue
                new = cfg | {e}
                if new not in seen:
                    seen.add(new)
                    if cap is not None and len(seen) > cap:
                        raise SizeLimitExceeded(
                            "more than %d configurations" % cap)
                    nxt.append(new)
        frontier = nxt
    out = [Configuration(es, s, _check=False) for s in seen]
    out.sort()
    return tuple(out)


def maximal_events(x):
    """Events of x with no causal successor inside x."""
    es = x.es
    return frozenset(e for e in x.events
                     if not any(es.lt(e, f) for f in x.events))


def is_plus_covered(x):
    """True iff every causally maximal event of x is positive."""
    es = x.es
    return all(es.polarity[e] is POS for e in maximal_events(x))


# -- structural isomorphism (plumbing for unit-law tests) ---------------


def es_isomorphic(es1, es2):
    """Brute-force search for a structural isomorphism (label, polarity,
    immediate causality and closed conflict all preserved).  Returns a
    mapping or None.  Desk scale only."""
    if len(es1.events) != len(es2.events):
        return None

    def prof(es, e):
        return (es.label[e], es.polarity[e], len(es._preds[e]),
                len(es._succs[e]), es.depth[e])

    cands = {e: [f for f in es2.events if prof(es1, e) == prof(es2, f)]
             for e in es1.events}
    order = sorted(es1.events, key=lambda e: (es1.depth[e], len(cands[e]), e))

    def extend(i, mapping, used):
        if i == len(order):
            return dict(mapping)
        e = order[i]
        for f in cands[e]:
            if f in used:
                continue
            ok = True
            for g, h in mapping.items():
                if ((g, e) in es1.edges) != ((h, f) in es2.edges):
                    ok = False
                    break
                if ((e, g) in es1.edges) != ((f, h) in es2.edges):
                    ok = False
                    break
                if es1.in_conflict(e, g) != es2.in_conflict(f, h):
                    ok = False
                    break
            if ok:
                mapping[e] = f
                res = extend(i + 1, mapping, used | {f})
                if res is not None:
                    return res
                del mapping[e]
        return None

    return extend(0, {}, set())
