"""Compositional builders for thin concurrent games.

Each construction returns a fresh Tcg whose events are renumbered small
integers; the `meta` dict keeps the translation maps so that the derived
symmetry specs can decompose candidate isos componentwise.

Symmetries of shifts, sums and the linear arrow are lifted componentwise
(a convention; the constructions are essentially independent of symmetry).
The two exponentials carry the interesting families: the AJM one permutes
copies, the HO one reindexes forest paths.
"""

from __future__ import annotations

from itertools import product

from .events import (
    Configuration,
    EventStructure,
    make_event_structure,
    NEG,
    POS,
)
from .symmetry import (
    AllOrderIsos,
    ConfigIso,
    SymmetrySpec,
    Tcg,
)


class NotNegative(Exception):
    pass


class ArityMismatch(Exception):
    pass


def atom(label, pol=NEG, name=None):
    """Single-event game; all three families are the identities."""
    es = make_event_structure([0], {0: pol}, {0: label})
    return Tcg(es, AllOrderIsos(), AllOrderIsos(), AllOrderIsos(),
               meta={"kind": "atom", "label": label}, name=name or label)


def empty_game(name="empty"):
    es = make_event_structure([], {}, {})
    return Tcg(es, AllOrderIsos(), AllOrderIsos(), AllOrderIsos(),
               meta={"kind": "empty"}, name=name)


def is_negative(game):
    es = game.es
    return all(es.polarity[e] is NEG for e in es.minimal_events)


# -- dual ---------------------------------------------------------------


def dual(game, name=None):
    """Flip polarities; full symmetry unchanged, pos/neg exchanged.
    Event ids are preserved."""
    es = game.es
    des = EventStructure(es.events,
                         {e: es.polarity[e].flip() for e in es.events},
                         es.label, es.edges, es.conflict)
    return Tcg(des, game.full, game.neg, game.pos,
               meta={"kind": "dual", "child": game},
               name=name or ("~" + game.name if game.name else None))


# -- parallel composition -------------------------------------------------


class ParallelSpec(SymmetrySpec):
    """Isos that split as side-preserving pairs, each part in its child
    family of the same flavor."""

    def __init__(self, flavor, parts, side_of):
        self.flavor = flavor
        self.parts = parts          # list of child Tcgs
        self.side_of = side_of      # event -> (part index, child event)

    def admits(self, iso):
        comp = [dict() for _ in self.parts]
        for e, f in iso.map.items():
            i, a = self.side_of[e]
            j, b = self.side_of[f]
            if i != j:
                return False
            comp[i][a] = b
        for i, m in enumerate(comp):
            if not m:
                continue
            child = self.parts[i]
            src = Configuration(child.es, set(m), _check=False)
            tgt = Configuration(child.es, set(m.values()), _check=False)
            sub = ConfigIso(src, tgt, m, _check=False)
            if not child.spec(self.flavor).admits(sub):
                return False
        return True

    def describe(self):
        return "parallel:%s" % self.flavor


def _disjoint_union(parts):
    """Renumber the events of several structures into one id space."""
    side_of = {}
    maps = []
    events, pol, lab, edges, confl = [], {}, {}, [], []
    nxt = 0
    for i, g in enumerate(parts):
        m = {}
        for e in g.es.events:
            m[e] = nxt
            side_of[nxt] = (i, e)
            events.append(nxt)
            pol[nxt] = g.es.polarity[e]
            lab[nxt] = g.es.label[e]
            nxt += 1
        for a, b in g.es.edges:
            edges.append((m[a], m[b]))
        for a, b in g.es.conflict:
            confl.append((m[a], m[b]))
        maps.append(m)
    return events, pol, lab, edges, confl, side_of, maps


def parallel(left, right, name=None):
    """Disjoint union; symmetries are exactly the side-preserving pairs."""
    events, pol, lab, edges, confl, side_of, maps = _disjoint_union([left, right])
    es = make_event_structure(events, pol, lab, edges, confl)
    parts = [left, right]
    meta = {"kind": "parallel", "left": left, "right": right,
            "side_of": side_of, "lmap": maps[0], "rmap": maps[1]}
    return Tcg(es,
               ParallelSpec("full", parts, side_of),
               ParallelSpec("pos", parts, side_of),
               ParallelSpec("neg", parts, side_of),
               meta=meta, name=name)


# -- AJM exponential -------------------------------------------------------


class AjmSpec(SymmetrySpec):
    """Copy permutation plus a per-copy symmetry of the base game.

    full: any permutation of used copies, per-copy full symmetries.
    neg:  any permutation of used copies, per-copy negative symmetries.
    pos:  copy-index preserving, per-copy positive symmetries.
    """

    def __init__(self, flavor, child, copy_of, base_of):
        self.flavor = flavor
        self.child = child
        self.copy_of = copy_of
        self.base_of = base_of

    def admits(self, iso):
        pi = {}
        per_copy = {}
        for e, f in iso.map.items():
            i, j = self.copy_of[e], self.copy_of[f]
            if pi.setdefault(i, j) != j:
                return False
            per_copy.setdefault(i, {})[self.base_of[e]] = self.base_of[f]
        if len(set(pi.values())) != len(pi):
            return False
        if self.flavor == "pos" and any(i != j for i, j in pi.items()):
            return False
        for i, m in per_copy.items():
            src = Configuration(self.child.es, set(m), _check=False)
            tgt = Configuration(self.child.es, set(m.values()), _check=False)
            sub = ConfigIso(src, tgt, m, _check=False)
            if not self.child.spec(self.flavor).admits(sub):
                return False
        return True

    def describe(self):
        return "ajm:%s" % self.flavor


def bang_ajm(game, bound, name=None):
    """Bounded replication: `bound` tagged copies of a negative game in
    parallel, with copy-permuting symmetry."""
    if bound < 1:
        raise ArityMismatch("copy bound must be at least 1")
    if not is_negative(game):
        raise NotNegative("AJM replication needs a negative game")
    es = game.es
    events, pol, lab, edges, confl = [], {}, {}, [], []
    copy_of, base_of = {}, {}
    nxt = 0
    emap = {}
    for i in range(bound):
        for e in es.events:
            emap[(i, e)] = nxt
            copy_of[nxt] = i
            base_of[nxt] = e
            events.append(nxt)
            pol[nxt] = es.polarity[e]
            lab[nxt] = es.label[e]
            nxt += 1
        for a, b in es.edges:
            edges.append((emap[(i, a)], emap[(i, b)]))
        for a, b in es.conflict:
            confl.append((emap[(i, a)], emap[(i, b)]))
    bes = make_event_structure(events, pol, lab, edges, confl)
    meta = {"kind": "bang_ajm", "child": game, "bound": bound,
            "copy_of": copy_of, "base_of": base_of, "emap": emap}
    return Tcg(bes,
               AjmSpec("full", game, copy_of, base_of),
               AjmSpec("pos", game, copy_of, base_of),
               AjmSpec("neg", game, copy_of, base_of),
               meta=meta, name=name)


# -- HO exponential --------------------------------------------------------


class HoSpec(SymmetrySpec):
    """Order-isos between indexed forest paths, preserving the underlying
    arena node.  Positive ones fix the own copy index of negative moves;
    negative ones fix the own copy index of positive moves."""

    def __init__(self, flavor, arena_node, last_idx, pol_of):
        self.flavor = flavor
        self.arena_node = arena_node
        self.last_idx = last_idx
        self.pol_of = pol_of

    def admits(self, iso):
        for e, f in iso.map.items():
            if self.arena_node[e] != self.arena_node[f]:
                return False
            p = self.pol_of[e]
            if self.flavor == "pos" and p is NEG \
                    and self.last_idx[e] != self.last_idx[f]:
                return False
            if self.flavor == "neg" and p is POS \
                    and self.last_idx[e] != self.last_idx[f]:
                return False
        return True

    def describe(self):
        return "ho:%s" % self.flavor


def is_forestial(es):
    return all(len(es._preds[e]) <= 1 for e in es.events) and not es.conflict


def bang_ho(arena, bound, name=None):
    """Bounded HO replication of a forestial arena: events are arena paths
    tagged with one copy index per level."""
    es = arena.es if isinstance(arena, Tcg) else arena
    if bound < 1:
        raise ArityMismatch("copy bound must be at least 1")
    if not is_forestial(es):
        raise ArityMismatch("HO replication needs a conflict-free forest")

    paths = []

    def walk(node, apath):
        apath = apath + (node,)
        paths.append(apath)
        for b in sorted(es._succs[node]):
            walk(b, apath)

    for r in sorted(es.minimal_events):
        walk(r, ())

    keys = []
    for apath in paths:
        for ipath in product(range(bound), repeat=len(apath)):
            keys.append((apath, ipath))
    keys.sort()
    ids = {k: i for i, k in enumerate(keys)}
    events = list(ids.values())
    pol = {ids[k]: es.polarity[k[0][-1]] for k in keys}
    lab = {ids[k]: es.label[k[0][-1]] for k in keys}
    edges = []
    for apath, ipath in keys:
        if len(apath) > 1:
            parent = (apath[:-1], ipath[:-1])
            edges.append((ids[parent], ids[(apath, ipath)]))
    bes = make_event_structure(events, pol, lab, edges, ())
    arena_node = {ids[k]: k[0][-1] for k in keys}
    last_idx = {ids[k]: k[1][-1] for k in keys}
    path_of = {ids[k]: k for k in keys}
    meta = {"kind": "bang_ho", "arena": es, "bound": bound,
            "path_of": path_of, "ids": ids,
            "arena_node": arena_node, "last_idx": last_idx}
    pol_of = dict(pol)
    return Tcg(bes,
               HoSpec("full", arena_node, last_idx, pol_of),
               HoSpec("pos", arena_node, last_idx, pol_of),
               HoSpec("neg", arena_node, last_idx, pol_of),
               meta=meta, name=name)


# -- shifts, sum, linear arrow ---------------------------------------------


class ShiftSpec(SymmetrySpec):
    """New root is fixed; the remainder follows the child family."""

    def __init__(self, flavor, child, root, base_of):
        self.flavor = flavor
        self.child = child
        self.root = root
        self.base_of = base_of

    def admits(self, iso):
        m = {}
        for e, f in iso.map.items():
            if (e == self.root) != (f == self.root):
                return False
            if e != self.root:
                m[self.base_of[e]] = self.base_of[f]
        if not m:
            return True
        src = Configuration(self.child.es, set(m), _check=False)
        tgt = Configuration(self.child.es, set(m.values()), _check=False)
        sub = ConfigIso(src, tgt, m, _check=False)
        return self.child.spec(self.flavor).admits(sub)

    def describe(self):
        return "shift:%s" % self.flavor


def _shift(game, pol, label, name):
    es = game.es
    base_of = {}
    events, polarity, lab, edges, confl = [0], {0: pol}, {0: label}, [], []
    emap = {}
    for e in es.events:
        ne = e + 1
        emap[e] = ne
        base_of[ne] = e
        events.append(ne)
        polarity[ne] = es.polarity[e]
        lab[ne] = es.label[e]
    for a, b in es.edges:
        edges.append((emap[a], emap[b]))
    for a, b in es.conflict:
        confl.append((emap[a], emap[b]))
    for r in sorted(es.minimal_events):
        edges.append((0, emap[r]))
    ses = make_event_structure(events, polarity, lab, edges, confl)
    meta = {"kind": "shift", "child": game, "root": 0, "base_of": base_of,
            "emap": emap, "polarity": pol}
    return Tcg(ses,
               ShiftSpec("full", game, 0, base_of),
               ShiftSpec("pos", game, 0, base_of),
               ShiftSpec("neg", game, 0, base_of),
               meta=meta, name=name)


def shift_up(game, label="*", name=None):
    """Prefix with a fresh negative move."""
    return _shift(game, NEG, label, name)


def shift_down(game, label="*", name=None):
    """Prefix with a fresh positive move."""
    return _shift(game, POS, label, name)


class SumSpec(SymmetrySpec):
    """Isos stay within a single summand and follow its family there."""

    def __init__(self, flavor, parts, side_of):
        self.flavor = flavor
        self.parts = parts
        self.side_of = side_of

    def admits(self, iso):
        if not iso.map:
            return True
        sides = {self.side_of[e][0] for e in iso.map}
        sides |= {self.side_of[f][0] for f in iso.map.values()}
        if len(sides) != 1:
            return False
        i = sides.pop()
        m = {self.side_of[e][1]: self.side_of[f][1] for e, f in iso.map.items()}
        child = self.parts[i]
        src = Configuration(child.es, set(m), _check=False)
        tgt = Configuration(child.es, set(m.values()), _check=False)
        sub = ConfigIso(src, tgt, m, _check=False)
        return child.spec(self.flavor).admits(sub)

    def describe(self):
        return "sum:%s" % self.flavor


def game_sum(parts, name=None):
    """Disjoint union with every cross-summand pair in conflict."""
    parts = list(parts)
    if not parts:
        return empty_game(name or "sum()")
    events, pol, lab, edges, confl, side_of, maps = _disjoint_union(parts)
    for e in events:
        for f in events:
            if e < f and side_of[e][0] != side_of[f][0]:
                confl.append((e, f))
    es = make_event_structure(events, pol, lab, edges, confl)
    meta = {"kind": "sum", "parts": parts, "side_of": side_of, "maps": maps}
    return Tcg(es,
               SumSpec("full", parts, side_of),
               SumSpec("pos", parts, side_of),
               SumSpec("neg", parts, side_of),
               meta=meta, name=name)


def linear_arrow(mgame, ngame, name=None):
    """M -o N for negative M, N: dual(M) beside N, with every minimal move
    of dual(M) depending on every minimal move of N."""
    if not is_negative(mgame):
        raise NotNegative("linear arrow needs a negative source")
    if not is_negative(ngame):
        raise NotNegative("linear arrow needs a negative target")
    dm = dual(mgame)
    events, pol, lab, edges, confl, side_of, maps = _disjoint_union([dm, ngame])
    lmap, rmap = maps
    for m0 in sorted(dm.es.minimal_events):
        for n0 in sorted(ngame.es.minimal_events):
            edges.append((rmap[n0], lmap[m0]))
    es = make_event_structure(events, pol, lab, edges, confl)
    parts = [dm, ngame]
    meta = {"kind": "arrow", "m": mgame, "n": ngame, "left": dm,
            "right": ngame, "side_of": side_of, "lmap": lmap, "rmap": rmap}
    return Tcg(es,
               ParallelSpec("full", parts, side_of),
               ParallelSpec("pos", parts, side_of),
               ParallelSpec("neg", parts, side_of),
               meta=meta, name=name)


# -- projections through a parallel/arrow construction ---------------------


def side_projection(game, x, part_index):
    """Project a configuration of a parallel-shaped game onto one part,
    as a configuration of that part."""
    side_of = game.meta["side_of"]
    child = [game.meta.get("left"), game.meta.get("right")][part_index] \
        if "left" in game.meta else game.meta["parts"][part_index]
    evs = {side_of[e][1] for e in x.events if side_of[e][0] == part_index}
    return Configuration(child.es, evs)
