"""Isomorphism families on configurations and thin-concurrent-game structure.

A symmetry between configurations x and y is an order-isomorphism that
preserves polarity and label.  A game carries three families of such isos:
the full symmetry, a positive and a negative sub-symmetry.  Families are
represented by a membership test (`SymmetrySpec`) over candidates produced
by a backtracking search, which keeps membership decidable by direct check
and matches how the worked examples present their families ("all
order-isomorphisms included in one of two maximal bijections").

Everything here is brute force over finite data: correctness over speed.
"""

from __future__ import annotations

from functools import cached_property

from .events import (
    Configuration,
    EventStructure,
    SizeLimitExceeded,
    enumerate_configurations,
    POS,
    NEG,
)

DEFAULT_ISO_CAP = 500_000

FULL = "full"
POSF = "pos"
NEGF = "neg"
FLAVORS = (FULL, POSF, NEGF)


class NoFactorization(Exception):
    pass


class NonUniqueFactorization(Exception):
    pass


class NotRepresentable(Exception):
    pass


# -- configuration isomorphisms -----------------------------------------


class ConfigIso:
    """Order-isomorphism between two configurations of one structure,
    preserving polarity and label."""

    __slots__ = ("src", "tgt", "map", "key")

    def __init__(self, src, tgt, mapping, _check=True):
        self.src = src
        self.tgt = tgt
        self.map = dict(mapping)
        self.key = tuple(sorted(self.map.items()))
        if _check:
            es = src.es
            if tgt.es is not es:
                raise ValueError("iso endpoints live in different structures")
            if set(self.map) != src.events or set(self.map.values()) != tgt.events:
                raise ValueError("not a bijection between the endpoints")
            if len(set(self.map.values())) != len(self.map):
                raise ValueError("mapping is not injective")
            for a, b in self.map.items():
                if es.polarity[a] is not es.polarity[b]:
                    raise ValueError("polarity not preserved at %d" % a)
                if es.label[a] != es.label[b]:
                    raise ValueError("label not preserved at %d" % a)
            below = es._strict_below
            for a, b in self.map.items():
                img = {self.map[g] for g in (below[a] & src.events)}
                if img != (below[b] & tgt.events):
                    raise ValueError("order not preserved at %d" % a)

    @staticmethod
    def identity(x):
        return ConfigIso(x, x, {e: e for e in x.events}, _check=False)

    @property
    def is_identity(self):
        return self.src == self.tgt and all(a == b for a, b in self.map.items())

    def inverse(self):
        return ConfigIso(self.tgt, self.src,
                         {b: a for a, b in self.map.items()}, _check=False)

    def then(self, other):
        """self followed by other (other o self)."""
        if other.src != self.tgt:
            raise ValueError("isos do not compose")
        return ConfigIso(self.src, other.tgt,
                         {a: other.map[b] for a, b in self.map.items()},
                         _check=False)

    def restrict(self, events):
        sub = frozenset(events)
        src = Configuration(self.src.es, sub)
        tgt = Configuration(self.src.es, {self.map[e] for e in sub})
        return ConfigIso(src, tgt, {e: self.map[e] for e in sub}, _check=False)

    def __eq__(self, other):
        return (isinstance(other, ConfigIso) and self.src == other.src
                and self.tgt == other.tgt and self.map == other.map)

    def __hash__(self):
        return hash((self.src.key, self.tgt.key, self.key))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        body = ", ".join("%d->%d" % (a, b) for a, b in self.key)
        return "ConfigIso{%s}" % body


def compose_isos(outer, inner):
    return inner.then(outer)


# -- raw candidate search ------------------------------------------------


def _profile(es, cfg_events, e):
    preds = sum(1 for f in cfg_events if es.lt(f, e))
    succs = sum(1 for f in cfg_events if es.lt(e, f))
    return (es.label[e], es.polarity[e].value, preds, succs, es.depth[e])


def order_isos(x, y, cap=DEFAULT_ISO_CAP, extra_ok=None):
    """Yield all label/polarity-preserving order-isomorphisms x -> y.

    Backtracking over per-event candidates, pruned by local profiles.
    `extra_ok(e, f)` can veto candidate pairs early.  Raises
    SizeLimitExceeded when the search tree passes `cap` nodes.
    """
    if len(x) != len(y):
        return
    es = x.es
    xev = sorted(x.events, key=lambda e: (es.depth[e], e))
    yev = y.key
    cands = {}
    for e in xev:
        pe = _profile(es, x.events, e)
        fs = [f for f in yev if _profile(es, y.events, f) == pe]
        if extra_ok is not None:
            fs = [f for f in fs if extra_ok(e, f)]
        if not fs:
            return
        cands[e] = fs

    nodes = 0
    mapping = {}
    used = set()

    def rec(i):
        nonlocal nodes
        if i == len(xev):
            yield dict(mapping)
            return
        e = xev[i]
        for f in cands[e]:
            if f in used:
                continue
            nodes += 1
            if cap is not None and nodes > cap:
                raise SizeLimitExceeded("order-iso search passed %d nodes" % cap)
            ok = True
            for g, h in mapping.items():
                if es.le(g, e) != es.le(h, f) or es.le(e, g) != es.le(f, h):
                    ok = False
                    break
            if ok:
                mapping[e] = f
                used.add(f)
                yield from rec(i + 1)
                used.discard(f)
                del mapping[e]

    yield from rec(0)


# -- symmetry specs ------------------------------------------------------


class SymmetrySpec:
    """Membership test for a family of configuration isomorphisms.

    `admits` receives a candidate that is already a valid order-iso
    preserving polarity and label; it decides whether the candidate belongs
    to the family.
    """

    def admits(self, iso):
        raise NotImplementedError

    def describe(self):
        return type(self).__name__


class AllOrderIsos(SymmetrySpec):
    def admits(self, iso):
        return True

    def describe(self):
        return "all"


class MaximalGenerators(SymmetrySpec):
    """Family of all order-iso restrictions of the given maximal bijections."""

    def __init__(self, generators):
        self.generators = [dict(g) for g in generators]

    def admits(self, iso):
        return any(all(g.get(a) == b for a, b in iso.map.items())
                   for g in self.generators)

    def describe(self):
        return "gens(%d)" % len(self.generators)


class RuleBased(SymmetrySpec):
    def __init__(self, name, fn):
        self.name = name
        self.fn = fn

    def admits(self, iso):
        return self.fn(iso)

    def describe(self):
        return "rule:%s" % self.name


def identity_only(es):
    """The smallest symmetry: restrictions of the identity."""
    return MaximalGenerators([{e: e for e in es.events}])


# -- thin concurrent games ----------------------------------------------


class Tcg:
    """Event structure with polarity plus full/positive/negative symmetry."""

    def __init__(self, es, full=None, pos=None, neg=None, meta=None, name=None):
        self.es = es
        self.full = full or AllOrderIsos()
        self.pos = pos or AllOrderIsos()
        self.neg = neg or AllOrderIsos()
        self.meta = meta or {"kind": "explicit"}
        self.name = name
        self._iso_cache = {}
        self._exists_cache = {}

    def spec(self, flavor):
        return {FULL: self.full, POSF: self.pos, NEGF: self.neg}[flavor]

    @cached_property
    def configurations(self):
        return enumerate_configurations(self.es)

    def config(self, events):
        return Configuration(self.es, events)

    @property
    def empty_config(self):
        return Configuration(self.es, frozenset(), _check=False)

    def symmetries(self, flavor, x, y, cap=DEFAULT_ISO_CAP):
        key = (flavor, x.key, y.key)
        hit = self._iso_cache.get(key)
        if hit is not None:
            return hit
        spec = self.spec(flavor)
        found = []
        for m in order_isos(x, y, cap=cap):
            iso = ConfigIso(x, y, m, _check=False)
            if spec.admits(iso):
                found.append(iso)
        found.sort()
        out = tuple(found)
        self._iso_cache[key] = out
        return out

    def has_symmetry(self, flavor, x, y, cap=DEFAULT_ISO_CAP):
        key = (flavor, x.key, y.key)
        if key in self._exists_cache:
            return self._exists_cache[key]
        if key in self._iso_cache:
            res = bool(self._iso_cache[key])
        else:
            spec = self.spec(flavor)
            res = False
            for m in order_isos(x, y, cap=cap):
                if spec.admits(ConfigIso(x, y, m, _check=False)):
                    res = True
                    break
        self._exists_cache[key] = res
        return res

    @cached_property
    def classes(self):
        return symmetry_classes(self)

    @cached_property
    def _class_index(self):
        return {x.key: cls for cls in self.classes for x in cls.members}

    def class_of(self, x):
        return self._class_index[x.key]

    def __repr__(self):
        return "Tcg(%s, %d events)" % (self.name or self.meta.get("kind"),
                                       len(self.es.events))


def enumerate_symmetries(game, flavor, x, y, cap=DEFAULT_ISO_CAP):
    """All isos x ~ y in the chosen family; empty tuple iff not symmetric."""
    return game.symmetries(flavor, x, y, cap=cap)


# -- family axioms -------------------------------------------------------


class FamilyIssue:
    def __init__(self, flavor, axiom, detail):
        self.flavor = flavor
        self.axiom = axiom
        self.detail = detail

    def __repr__(self):
        return "[%s] %s: %s" % (self.flavor, self.axiom, self.detail)


class FamilyReport:
    def __init__(self, issues):
        self.issues = tuple(issues)

    @property
    def ok(self):
        return not self.issues

    def __repr__(self):
        if self.ok:
            return "FamilyReport(ok)"
        return "FamilyReport(%s)" % "; ".join(map(repr, self.issues))


def check_family_axioms(game, cap=DEFAULT_ISO_CAP, first_only=False):
    """Verify identity/inverse/composition/restriction closure for each of
    the three families over all configuration pairs, plus the subfamily
    inclusions pos <= full and neg <= full.  Diagnostic, never raises on a
    violation: pathological fixtures stay explorable."""
    issues = []
    cfgs = game.configurations

    def all_isos(flavor):
        table = {}
        for x in cfgs:
            for y in cfgs:
                if len(x) != len(y):
                    continue
                isos = game.symmetries(flavor, x, y, cap=cap)
                if isos:
                    table[(x.key, y.key)] = isos
        return table

    tables = {fl: all_isos(fl) for fl in FLAVORS}

    for fl in FLAVORS:
        table = tables[fl]
        spec = game.spec(fl)
        # identities
        for x in cfgs:
            ident = ConfigIso.identity(x)
            if not spec.admits(ident):
                issues.append(FamilyIssue(fl, "identity",
                                          "id on %r missing" % (x.key,)))
                if first_only:
                    return FamilyReport(issues)
        for isos in table.values():
            for iso in isos:
                inv = iso.inverse()
                if not spec.admits(inv):
                    issues.append(FamilyIssue(fl, "inverse",
                                              "%r lacks inverse" % iso))
                    if first_only:
                        return FamilyReport(issues)
                # restriction: every sub-configuration of the source
                for z in cfgs:
                    if z.events < iso.src.events:
                        sub = iso.restrict(z.events)
                        if not spec.admits(sub):
                            issues.append(FamilyIssue(
                                fl, "restriction",
                                "%r restricted to %r leaves the family"
                                % (iso, z.key)))
                            if first_only:
                                return FamilyReport(issues)
        by_src = {}
        for (xk, yk), isos in table.items():
            by_src.setdefault(xk, []).extend(isos)
        for (xk, yk), isos in table.items():
            for iso in isos:
                for iso2 in by_src.get(yk, ()):
                    comp = iso.then(iso2)
                    if not spec.admits(comp):
                        issues.append(FamilyIssue(
                            fl, "composition",
                            "%r ; %r leaves the family" % (iso, iso2)))
                        if first_only:
                            return FamilyReport(issues)
    # subfamily inclusions
    for fl in (POSF, NEGF):
        for (xk, yk), isos in tables[fl].items():
            fulls = set(tables[FULL].get((xk, yk), ()))
            for iso in isos:
                if iso not in fulls:
                    issues.append(FamilyIssue(
                        fl, "subfamily", "%r not in the full symmetry" % iso))
                    if first_only:
                        return FamilyReport(issues)
    return FamilyReport(issues)


# -- polar factorization -------------------------------------------------


def factorize(game, iso, cap=DEFAULT_ISO_CAP):
    """Factor a full symmetry as negative-then-positive: iso = pos o neg.

    Searches every candidate middle configuration; the factorization must
    exist and be unique, otherwise the input is not a valid tcg.
    """
    results = factorizations(game, iso, cap=cap)
    if not results:
        raise NoFactorization("no negative/positive factorization of %r" % iso)
    if len(results) > 1:
        raise NonUniqueFactorization(
            "%d factorizations of %r" % (len(results), iso))
    return results[0]


def factorizations(game, iso, cap=DEFAULT_ISO_CAP):
    out = []
    n = len(iso.src)
    for mid in game.configurations:
        if len(mid) != n:
            continue
        for tneg in game.symmetries(NEGF, iso.src, mid, cap=cap):
            tpos = tneg.inverse().then(iso)
            if game.spec(POSF).admits(tpos):
                out.append((tneg, mid, tpos))
    return out


def endo_factorizations(game, theta, cap=DEFAULT_ISO_CAP):
    """Factorizations of an endosymmetry that stay on its configuration."""
    x = theta.src
    out = []
    for tneg in game.symmetries(NEGF, x, x, cap=cap):
        tpos = tneg.inverse().then(theta)
        if game.spec(POSF).admits(tpos):
            out.append((tneg, tpos))
    return out


def is_canonical(game, x, cap=DEFAULT_ISO_CAP):
    """True iff every endosymmetry of x factors, uniquely, through x itself."""
    for theta in game.symmetries(FULL, x, x, cap=cap):
        if len(endo_factorizations(game, theta, cap=cap)) != 1:
            return False
    return True


# -- symmetry classes ----------------------------------------------------


class SymmetryClass:
    """One equivalence class of configurations under the full symmetry.

    `rep` is the lexicographically least canonical member when one exists,
    the least member otherwise (deterministic reruns either way).
    """

    def __init__(self, game, index, members, rep, has_canonical):
        self.game = game
        self.index = index
        self.members = tuple(sorted(members))
        self.rep = rep
        self.has_canonical = has_canonical

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __repr__(self):
        return "Class#%d(rep=%r, size=%d)" % (self.index, self.rep.key,
                                              len(self.members))


def _invariant_key(es, x):
    return tuple(sorted(_profile(es, x.events, e) for e in x.events))


def symmetry_classes(game, cap=DEFAULT_ISO_CAP):
    """Partition of all configurations by the full symmetry."""
    cfgs = game.configurations
    groups = {}
    for x in cfgs:
        groups.setdefault((len(x), _invariant_key(game.es, x)), []).append(x)
    classes = []
    for _, members in sorted(groups.items()):
        pending = list(members)
        while pending:
            seed = pending.pop(0)
            cls = [seed]
            rest = []
            for y in pending:
                if game.has_symmetry(FULL, seed, y, cap=cap):
                    cls.append(y)
                else:
                    rest.append(y)
            pending = rest
            classes.append(cls)
    classes.sort(key=lambda cs: sorted(cs)[0])
    out = []
    for i, members in enumerate(classes):
        canon = sorted(x for x in members if is_canonical(game, x, cap=cap))
        if canon:
            rep = canon[0]
            has_canonical = True
        else:
            rep = sorted(members)[0]
            has_canonical = False
        out.append(SymmetryClass(game, i, members, rep, has_canonical))
    return tuple(out)


class RepresentabilityResult:
    def __init__(self, ok, reps, failing):
        self.ok = ok
        self.reps = reps          # class index -> canonical representative
        self.failing = failing    # classes with no canonical member

    def __bool__(self):
        return self.ok


def is_representable(game, cap=DEFAULT_ISO_CAP):
    """Each symmetry class must contain a canonical configuration."""
    reps = {}
    failing = []
    for cls in game.classes:
        if cls.has_canonical:
            reps[cls.index] = cls.rep
        else:
            failing.append(cls)
    return RepresentabilityResult(not failing, reps, failing)


# -- endosymmetry groups -------------------------------------------------


class EndoGroup:
    """All endosymmetries of one configuration in one flavor; checked to be
    closed under composition and inverse and to contain the identity."""

    def __init__(self, game, flavor, base, elements):
        self.game = game
        self.flavor = flavor
        self.base = base
        self.elements = tuple(sorted(elements))
        elems = set(self.elements)
        ident = ConfigIso.identity(base)
        if ident not in elems:
            raise ValueError("endo set lacks the identity")
        for a in elems:
            if a.inverse() not in elems:
                raise ValueError("endo set not closed under inverse: %r" % a)
            for b in elems:
                if a.then(b) not in elems:
                    raise ValueError("endo set not closed under composition")

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return "EndoGroup(%s, |%d|)" % (self.flavor, len(self.elements))


def endo_group(game, flavor, x, cap=DEFAULT_ISO_CAP):
    return EndoGroup(game, flavor, x, game.symmetries(flavor, x, x, cap=cap))
