"""Strategies, their axioms, interaction, composition and synchronization.

A strategy from A to B is an event structure S with one symmetry family,
labelled into the composite game dual(A) beside B.  Interaction and
composition are computed by state-space enumeration over configuration
pairs matching on B; the event level is recovered as the poset of prime
states (sub-states with a unique maximal point).

Securedness of a matching pair is acyclicity of the union of both causal
orders on the glued event set; a +-covered state is one whose maximal
points are all positive and visible.
"""

from __future__ import annotations

from functools import cached_property

from .events import (
    Configuration,
    SizeLimitExceeded,
    make_event_structure,
    enumerate_configurations,
    is_plus_covered,
    NEG,
    POS,
)
from .symmetry import (
    AllOrderIsos,
    ConfigIso,
    SymmetrySpec,
    order_isos,
    DEFAULT_ISO_CAP,
    FULL,
)
from .games import parallel, dual

DEFAULT_STATE_CAP = 200_000


class NoSolution(Exception):
    pass


class NonUnique(Exception):
    pass


class AmbiguousBeyondSymmetry(Exception):
    pass


class Strategy:
    """Labelled event structure with symmetry over dual(dom) beside cod.

    `labels` sends each inner event to a pair ('dom', a) or ('cod', b)
    naming an event of the domain or codomain game; the composite game and
    the translation into its id space are built here.
    """

    def __init__(self, inner, sym, dom, cod, labels, name=None):
        self.inner = inner
        self.sym = sym or AllOrderIsos()
        self.dom = dom
        self.cod = cod
        self.name = name
        self.game = parallel(dual(dom), cod,
                             name="%s-game" % name if name else None)
        lmap = self.game.meta["lmap"]
        rmap = self.game.meta["rmap"]
        self.side = {}
        self.base = {}
        self.labels = {}
        for s in inner.events:
            side, base = labels[s]
            if side == "dom":
                g = lmap[base]
            elif side == "cod":
                g = rmap[base]
            else:
                raise ValueError("label side must be 'dom' or 'cod'")
            self.side[s] = side
            self.base[s] = base
            self.labels[s] = g
        self._sym_cache = {}
        self._image_cache = {}
        self._proj_cache = {}

    # -- basic views ----------------------------------------------------

    @cached_property
    def configurations(self):
        return enumerate_configurations(self.inner)

    @cached_property
    def plus_covered(self):
        return tuple(x for x in self.configurations if is_plus_covered(x))

    def image(self, x):
        """Game configuration reached by an inner configuration."""
        hit = self._image_cache.get(x.key)
        if hit is None:
            hit = Configuration(self.game.es,
                                {self.labels[s] for s in x.events})
            self._image_cache[x.key] = hit
        return hit

    def proj_dom(self, x):
        key = ("d", x.key)
        hit = self._proj_cache.get(key)
        if hit is None:
            hit = Configuration(self.dom.es,
                                {self.base[s] for s in x.events
                                 if self.side[s] == "dom"}, _check=False)
            self._proj_cache[key] = hit
        return hit

    def proj_cod(self, x):
        key = ("c", x.key)
        hit = self._proj_cache.get(key)
        if hit is None:
            hit = Configuration(self.cod.es,
                                {self.base[s] for s in x.events
                                 if self.side[s] == "cod"}, _check=False)
            self._proj_cache[key] = hit
        return hit

    def dom_events(self, x):
        return frozenset(self.base[s] for s in x.events if self.side[s] == "dom")

    def cod_events(self, x):
        return frozenset(self.base[s] for s in x.events if self.side[s] == "cod")

    def symmetries(self, x, y, cap=DEFAULT_ISO_CAP):
        key = (x.key, y.key)
        hit = self._sym_cache.get(key)
        if hit is not None:
            return hit
        out = []
        for m in order_isos(x, y, cap=cap):
            iso = ConfigIso(x, y, m, _check=False)
            if self.sym.admits(iso):
                out.append(iso)
        out.sort()
        out = tuple(out)
        self._sym_cache[key] = out
        return out

    def image_iso(self, phi):
        """Push an inner symmetry to a bijection of game configurations.
        Returns None when the image is not an order-iso of the game."""
        m = {self.labels[s]: self.labels[t] for s, t in phi.map.items()}
        try:
            return ConfigIso(self.image(phi.src), self.image(phi.tgt), m)
        except ValueError:
            return None

    def cod_iso(self, phi):
        """Codomain component of an inner symmetry, over cod's structure."""
        m = {self.base[s]: self.base[t] for s, t in phi.map.items()
             if self.side[s] == "cod"}
        return ConfigIso(self.proj_cod(phi.src), self.proj_cod(phi.tgt), m,
                         _check=False)

    def dom_iso(self, phi):
        m = {self.base[s]: self.base[t] for s, t in phi.map.items()
             if self.side[s] == "dom"}
        return ConfigIso(self.proj_dom(phi.src), self.proj_dom(phi.tgt), m,
                         _check=False)

    def __repr__(self):
        return "Strategy(%s: %d events)" % (self.name or "?",
                                            len(self.inner.events))


# -- validation -----------------------------------------------------------


class StrategyIssue:
    def __init__(self, axiom, detail):
        self.axiom = axiom
        self.detail = detail

    def __repr__(self):
        return "%s: %s" % (self.axiom, self.detail)


class StrategyReport:
    def __init__(self, issues):
        self.issues = tuple(issues)

    @property
    def ok(self):
        return not self.issues

    def axioms_failed(self):
        return {i.axiom for i in self.issues}

    def __repr__(self):
        if self.ok:
            return "StrategyReport(ok)"
        return "StrategyReport(%s)" % "; ".join(map(repr, self.issues))


def _game_extensions(gme, gx, negative=True, cache=None):
    """Events extending a game configuration by one move of the given
    polarity."""
    if cache is not None and gx.key in cache:
        return cache[gx.key]
    want = NEG if negative else POS
    out = []
    for g in gme.events:
        if g in gx.events or gme.polarity[g] is not want:
            continue
        if not gme._preds[g] <= gx.events:
            continue
        if gme.conflict_adj[g] & (gx.events | {g}):
            continue
        out.append(g)
    if cache is not None:
        cache[gx.key] = out
    return out


def _inner_extensions(sig, x, g, cache=None):
    """Inner events extending x whose label is the game event g."""
    if cache is not None and (x.key, g) in cache:
        return cache[(x.key, g)]
    es = sig.inner
    out = []
    for s in es.events:
        if s in x.events or sig.labels[s] != g:
            continue
        if not es._preds[s] <= x.events:
            continue
        if es.conflict_adj[s] & x.events:
            continue
        out.append(s)
    if cache is not None:
        cache[(x.key, g)] = out
    return out


def validate_strategy(sig, cap=DEFAULT_ISO_CAP, max_issues=20):
    """Check the strategy axioms at desk scale.

    (a) polarity preservation, configuration preservation, local injectivity
    (b) courtesy: causal links added by the strategy go negative-to-positive
    (c) receptivity: every negative game extension of a reached position is
        matched by exactly one inner extension
    (d) symmetry-receptivity: inner symmetries extend uniquely along any
        negative extension of their game image
    (e) thinness: an inner symmetry with positive game image is an identity
    (f) the symmetry maps into the game's symmetry
    """
    issues = []

    def add(axiom, detail):
        issues.append(StrategyIssue(axiom, detail))
        return len(issues) >= max_issues

    es = sig.inner
    game = sig.game
    gme = game.es

    for s in es.events:
        g = sig.labels[s]
        if es.polarity[s] is not gme.polarity[g]:
            if add("polarity", "event %d vs game event %d" % (s, g)):
                return StrategyReport(issues)

    cfgs = sig.configurations
    for x in cfgs:
        imgs = [sig.labels[s] for s in x.events]
        if len(set(imgs)) != len(imgs):
            if add("local-injectivity", "configuration %r" % (x.key,)):
                return StrategyReport(issues)
            continue
        try:
            sig.image(x)
        except ValueError:
            if add("configurations",
                   "image of %r is not a configuration" % (x.key,)):
                return StrategyReport(issues)

    for (s, t) in es.edges:
        gs, gt = sig.labels[s], sig.labels[t]
        if (gs, gt) not in gme.edges:
            if not (es.polarity[s] is NEG and es.polarity[t] is POS):
                if add("courtesy",
                       "added link %d->%d is not negative-to-positive"
                       % (s, t)):
                    return StrategyReport(issues)

    for x in cfgs:
        gx = sig.image(x)
        for g in _game_extensions(gme, gx, negative=True):
            exts = _inner_extensions(sig, x, g)
            if len(exts) != 1:
                if add("receptivity",
                       "position %r, game move %d: %d matching extensions"
                       % (x.key, g, len(exts))):
                    return StrategyReport(issues)

    # group by an order/label invariant so only plausible pairs are searched
    from .symmetry import _invariant_key
    groups = {}
    for x in cfgs:
        groups.setdefault(_invariant_key(es, x), []).append(x)
    gext, iext = {}, {}
    for grp in groups.values():
        for x in grp:
            for y in grp:
                for phi in sig.symmetries(x, y, cap=cap):
                    done = _check_one_symmetry(sig, x, y, phi, add,
                                               gext, iext)
                    if done or len(issues) >= max_issues:
                        return StrategyReport(issues)
    return StrategyReport(issues)


def _check_one_symmetry(sig, x, y, phi, add, gext=None, iext=None):
    """Thinness, game-image membership and symmetry-receptivity for one
    inner symmetry.  Returns True when the issue budget is exhausted."""
    es = sig.inner
    game = sig.game
    gme = game.es
    img = sig.image_iso(phi)
    if img is None:
        return add("symmetry-image",
                   "image of %r is not a game order-iso" % phi)
    if not game.full.admits(img):
        if add("symmetry-image",
               "image of %r is outside the game symmetry" % phi):
            return True
    if game.pos.admits(img):
        if not (x == y and phi.is_identity):
            if add("thinness",
                   "%r has positive game image but is not an identity"
                   % phi):
                return True
    gx, gy = img.src, img.tgt
    for a in _game_extensions(gme, gx, negative=True, cache=gext):
        for b in _game_extensions(gme, gy, negative=True, cache=gext):
            psi = _extend_iso(gme, img, a, b)
            if psi is None or not game.full.admits(psi):
                continue
            exts = []
            for s in _inner_extensions(sig, x, a, cache=iext):
                for t in _inner_extensions(sig, y, b, cache=iext):
                    phi2 = _extend_iso(es, phi, s, t)
                    if phi2 is not None and sig.sym.admits(phi2):
                        exts.append((s, t))
            if len(exts) != 1:
                if add("sym-receptivity",
                       "%r along (%d, %d): %d extensions"
                       % (phi, a, b, len(exts))):
                    return True
    return False


def check_symmetry_extension(sig, cap=DEFAULT_ISO_CAP, max_issues=5):
    """Extension property of the strategy's symmetry: every inner symmetry
    extends along every one-event extension of its source.

    This axiom is not part of the validator's checkable subset (bounded
    replication fixtures legitimately fail it at their truncation edge),
    but the counting identities need it, so generated strategies are
    filtered through this check."""
    issues = []
    es = sig.inner
    cfgs = sig.configurations
    from .symmetry import _invariant_key
    groups = {}
    for x in cfgs:
        groups.setdefault(_invariant_key(es, x), []).append(x)
    for grp in groups.values():
        for x in grp:
            for y in grp:
                for phi in sig.symmetries(x, y, cap=cap):
                    for s in es.events:
                        if s in x.events:
                            continue
                        if not es._preds[s] <= x.events:
                            continue
                        if es.conflict_adj[s] & x.events:
                            continue
                        hits = [t for t in es.events
                                if t not in y.events
                                and _extend_iso(es, phi, s, t) is not None
                                and sig.sym.admits(
                                    _extend_iso(es, phi, s, t))]
                        if not hits:
                            issues.append(StrategyIssue(
                                "sym-extension",
                                "%r cannot follow extension by %d"
                                % (phi, s)))
                            if len(issues) >= max_issues:
                                return StrategyReport(issues)
    return StrategyReport(issues)


def _extend_iso(es, iso, a, b):
    """Extend a known order-iso by the single pair (a, b); only the fresh
    pair needs checking.  Returns None when the extension is not an
    order-iso."""
    if es.polarity[a] is not es.polarity[b] or es.label[a] != es.label[b]:
        return None
    below = es._strict_below
    src_ev = iso.src.events
    ba = below[a] & src_ev
    if {iso.map[g] for g in ba} != (below[b] & iso.tgt.events):
        return None
    # nothing already mapped may sit above the fresh events
    if any(a in below[g] for g in src_ev) or \
            any(b in below[h] for h in iso.tgt.events):
        return None
    src = Configuration(es, src_ev | {a}, _check=False)
    tgt = Configuration(es, iso.tgt.events | {b}, _check=False)
    return ConfigIso(src, tgt, dict(iso.map) | {a: b}, _check=False)


# -- glued states and securedness ------------------------------------------


def match_on_shared(sig, tau, xS, xT, theta_B=None):
    """Pair up the shared-game events of two configurations.

    Returns {s_event: t_event} for the glued part, or None if the shared
    projections do not correspond (on the nose when theta_B is None,
    through theta_B otherwise)."""
    sB = {sig.base[s]: s for s in xS.events if sig.side[s] == "cod"}
    tB = {tau.base[t]: t for t in xT.events if tau.side[t] == "dom"}
    if theta_B is None:
        if set(sB) != set(tB):
            return None
        return {sB[g]: tB[g] for g in sB}
    if set(sB) != set(theta_B.map) or set(tB) != set(theta_B.map.values()):
        return None
    return {sB[g]: tB[theta_B.map[g]] for g in sB}


def glued_graph(sig, tau, xS, xT, pairing):
    """Nodes and immediate edges of a glued configuration pair.

    Node keys: ('a', s) for domain-side moves of the first strategy,
    ('c', t) for codomain-side moves of the second, ('b', s, t) for glued
    shared moves."""
    s2n = {}
    nodes = []
    for s in xS.key:
        if s in pairing:
            n = ("b", s, pairing[s])
        else:
            n = ("a", s)
        s2n[s] = n
        nodes.append(n)
    t2n = {}
    rev = {t: s for s, t in pairing.items()}
    for t in xT.key:
        if t in rev:
            t2n[t] = s2n[rev[t]]
        else:
            n = ("c", t)
            t2n[t] = n
            nodes.append(n)
    edges = set()
    for (a, b) in sig.inner.edges:
        if a in xS.events and b in xS.events:
            edges.add((s2n[a], s2n[b]))
    for (a, b) in tau.inner.edges:
        if a in xT.events and b in xT.events:
            edges.add((t2n[a], t2n[b]))
    return nodes, edges


def _acyclic(nodes, edges):
    succ = {n: [] for n in nodes}
    for a, b in edges:
        succ[a].append(b)
    state = {n: 0 for n in nodes}
    for start in nodes:
        if state[start]:
            continue
        stack = [(start, iter(succ[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            adv = False
            for nxt in it:
                if state[nxt] == 1:
                    return False
                if state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(succ[nxt])))
                    adv = True
                    break
            if not adv:
                state[node] = 2
                stack.pop()
    return True


def is_secured(sig, tau, xS, xT, theta_B=None):
    """Causal compatibility: the union of both causal orders on the glued
    event set is acyclic.  False also when the projections do not match."""
    pairing = match_on_shared(sig, tau, xS, xT, theta_B)
    if pairing is None:
        return False
    nodes, edges = glued_graph(sig, tau, xS, xT, pairing)
    return _acyclic(nodes, edges)


def node_polarity(sig, tau, node):
    """Interaction polarity: visible moves keep their owner's polarity,
    glued shared moves are neutral (None)."""
    if node[0] == "a":
        return sig.inner.polarity[node[1]]
    if node[0] == "c":
        return tau.inner.polarity[node[1]]
    return None


# -- interaction ------------------------------------------------------------


class State:
    """A matching, causally compatible configuration pair."""

    __slots__ = ("xS", "xT", "key")

    def __init__(self, xS, xT):
        self.xS = xS
        self.xT = xT
        self.key = (xS.key, xT.key)

    def __eq__(self, other):
        return isinstance(other, State) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return (len(self.xS) + len(self.xT), self.key) < \
            (len(other.xS) + len(other.xT), other.key)

    def __repr__(self):
        return "State(%r, %r)" % (self.xS.key, self.xT.key)


class Interaction:
    """All states of two composable strategies, with the event structure
    realized as the poset of prime sub-states.

    A prime is the least sub-state containing one point of a state; two
    occurrences of the same top point with different causal histories give
    different primes (nondeterministic branches over a shared move)."""

    def __init__(self, sig, tau, cap=DEFAULT_STATE_CAP, check=True):
        if sig.cod is not tau.dom:
            raise ValueError("strategies do not share their middle game")
        self.sig = sig
        self.tau = tau
        by_b = {}
        for xT in tau.configurations:
            by_b.setdefault(tau.dom_events(xT), []).append(xT)
        states = []
        for xS in sig.configurations:
            for xT in by_b.get(sig.cod_events(xS), ()):
                pairing = match_on_shared(sig, tau, xS, xT)
                nodes, edges = glued_graph(sig, tau, xS, xT, pairing)
                if _acyclic(nodes, edges):
                    states.append(State(xS, xT))
                    if cap is not None and len(states) > cap:
                        raise SizeLimitExceeded("interaction state explosion")
        states.sort()
        self.states = tuple(states)
        self._state_keys = {st.key for st in states}
        self._build_prime_structure()
        if check:
            self._check_realization()

    # node machinery ------------------------------------------------------

    def nodes_of(self, st):
        pairing = match_on_shared(self.sig, self.tau, st.xS, st.xT)
        return glued_graph(self.sig, self.tau, st.xS, st.xT, pairing)

    def state_nodes(self, st):
        return frozenset(self.nodes_of(st)[0])

    def maximal_nodes(self, st):
        nodes, edges = self.nodes_of(st)
        has_succ = {a for a, b in edges}
        return frozenset(n for n in nodes if n not in has_succ)

    def is_plus_covered_state(self, st):
        """Maximal points must be visible and positive."""
        for n in self.maximal_nodes(st):
            p = node_polarity(self.sig, self.tau, n)
            if p is not POS:
                return False
        return True

    @cached_property
    def plus_covered_states(self):
        return tuple(st for st in self.states
                     if self.is_plus_covered_state(st))

    def is_minimal(self, st):
        """All maximal points visible; the pair-minimality notion."""
        return all(n[0] != "b" for n in self.maximal_nodes(st))

    def state_of_pair(self, xS, xT):
        key = (xS.key, xT.key)
        if key not in self._state_keys:
            return None
        return State(xS, xT)

    # primes ----------------------------------------------------------------

    def prime_in_state(self, st, node):
        """Least sub-state of st containing the given point."""
        sig, tau = self.sig, self.tau
        s_over = {sig.base[s]: s for s in st.xS.events if sig.side[s] == "cod"}
        t_over = {tau.base[t]: t for t in st.xT.events if tau.side[t] == "dom"}
        sset, tset = set(), set()
        if node[0] == "a":
            sset.add(node[1])
        elif node[0] == "c":
            tset.add(node[1])
        else:
            sset.add(node[1])
            tset.add(node[2])
        changed = True
        while changed:
            changed = False
            for s in list(sset):
                for p in sig.inner._preds[s]:
                    if p not in sset:
                        sset.add(p)
                        changed = True
            for t in list(tset):
                for p in tau.inner._preds[t]:
                    if p not in tset:
                        tset.add(p)
                        changed = True
            sB = {sig.base[s] for s in sset if sig.side[s] == "cod"}
            tB = {tau.base[t] for t in tset if tau.side[t] == "dom"}
            for g in sB - tB:
                tset.add(t_over[g])
                changed = True
            for g in tB - sB:
                sset.add(s_over[g])
                changed = True
        return (frozenset(sset), frozenset(tset))

    def _prime_top(self, pkey):
        """The unique maximal point of a prime."""
        st = State(Configuration(self.sig.inner, pkey[0], _check=False),
                   Configuration(self.tau.inner, pkey[1], _check=False))
        tops = self.maximal_nodes(st)
        if len(tops) != 1:
            raise AssertionError("prime with %d maximal points" % len(tops))
        return next(iter(tops))

    def _build_prime_structure(self):
        primes = {}
        for st in self.states:
            for n in self.state_nodes(st):
                pS, pT = self.prime_in_state(st, n)
                primes[(tuple(sorted(pS)), tuple(sorted(pT)))] = None
        pkeys = sorted(primes, key=lambda k: (len(k[0]) + len(k[1]), k))
        self.prime_keys = tuple(pkeys)
        self.prime_id = {k: i for i, k in enumerate(pkeys)}
        self.prime_tops = {k: self._prime_top(k) for k in pkeys}

        ids = self.prime_id
        pol, lab = {}, {}
        for k in pkeys:
            top = self.prime_tops[k]
            p = node_polarity(self.sig, self.tau, top)
            pol[ids[k]] = p if p is not None else NEG  # neutral drawn negative
            lab[ids[k]] = (self.sig.inner.label[top[1]] if top[0] != "c"
                           else self.tau.inner.label[top[1]])
        self.neutral_events = frozenset(
            ids[k] for k in pkeys if self.prime_tops[k][0] == "b")

        def leq(k1, k2):
            return set(k1[0]) <= set(k2[0]) and set(k1[1]) <= set(k2[1])

        edges = []
        for k1 in pkeys:
            for k2 in pkeys:
                if k1 != k2 and leq(k1, k2):
                    if not any(o not in (k1, k2) and leq(k1, o) and leq(o, k2)
                               for o in pkeys):
                        edges.append((ids[k1], ids[k2]))
        confl = []
        for i, k1 in enumerate(pkeys):
            for k2 in pkeys[i + 1:]:
                u = (frozenset(k1[0]) | frozenset(k2[0]),
                     frozenset(k1[1]) | frozenset(k2[1]))
                if not self._is_state_pair(u[0], u[1]):
                    confl.append((ids[k1], ids[k2]))
        self.es = make_event_structure(list(ids.values()), pol, lab,
                                       edges, confl)

    def _is_state_pair(self, sset, tset):
        try:
            xS = Configuration(self.sig.inner, sset)
            xT = Configuration(self.tau.inner, tset)
        except ValueError:
            return False
        return (xS.key, xT.key) in self._state_keys

    def primes_of_state(self, st):
        out = set()
        for n in self.state_nodes(st):
            pS, pT = self.prime_in_state(st, n)
            out.add(self.prime_id[(tuple(sorted(pS)), tuple(sorted(pT)))])
        return frozenset(out)

    def state_of_events(self, evs):
        sset, tset = set(), set()
        for i in evs:
            k = self.prime_keys[i]
            sset |= set(k[0])
            tset |= set(k[1])
        return State(Configuration(self.sig.inner, sset),
                     Configuration(self.tau.inner, tset))

    def _check_realization(self):
        got = {c.events for c in enumerate_configurations(self.es)}
        want = {self.primes_of_state(st) for st in self.states}
        if got != want or len(want) != len(self.states):
            raise AssertionError(
                "interaction event structure does not realize its states")

    def projection(self, st):
        """(domain config in A, shared config in B, codomain config in C)."""
        return (self.sig.proj_dom(st.xS),
                self.sig.proj_cod(st.xS),
                self.tau.proj_cod(st.xT))


def interaction(sig, tau, cap=DEFAULT_STATE_CAP, check=True):
    return Interaction(sig, tau, cap=cap, check=check)


# -- composition -------------------------------------------------------------


class ComposedSpec(SymmetrySpec):
    """Symmetry of a composed strategy: pairs of inner symmetries of the
    two components that agree on the shared game, acting on primes."""

    def __init__(self, composed):
        self.c = composed

    def admits(self, iso):
        c = self.c
        st1 = c.pair_of_config(iso.src)
        st2 = c.pair_of_config(iso.tgt)
        for phiS in c.sig.symmetries(st1.xS, st2.xS):
            bS = {c.sig.base[s]: c.sig.base[t] for s, t in phiS.map.items()
                  if c.sig.side[s] == "cod"}
            for phiT in c.tau.symmetries(st1.xT, st2.xT):
                bT = {c.tau.base[s]: c.tau.base[t]
                      for s, t in phiT.map.items() if c.tau.side[s] == "dom"}
                if bS != bT:
                    continue
                if c.induced_event_map(iso.src, phiS, phiT) == iso.map:
                    return True
        return False

    def describe(self):
        return "composed"


class ComposedStrategy(Strategy):
    """Strategy produced by composition; keeps the pair/prime bookkeeping.

    Events are the visible primes of the interaction; configurations are in
    bijection with the minimal matching causally compatible pairs."""

    def __init__(self, sig, tau, inter, name=None):
        self.sig = sig
        self.tau = tau
        self.inter = inter
        minimal = sorted(st for st in inter.states if inter.is_minimal(st))
        self.minimal_states = tuple(minimal)

        visible = [k for k in inter.prime_keys
                   if inter.prime_tops[k][0] != "b"]
        self.comp_keys = tuple(sorted(
            visible, key=lambda k: (len(k[0]) + len(k[1]), k)))
        ids = {k: i for i, k in enumerate(self.comp_keys)}
        self.comp_id = ids

        def leq(k1, k2):
            return set(k1[0]) <= set(k2[0]) and set(k1[1]) <= set(k2[1])

        edges = []
        for k1 in self.comp_keys:
            for k2 in self.comp_keys:
                if k1 != k2 and leq(k1, k2):
                    if not any(o not in (k1, k2) and leq(k1, o) and leq(o, k2)
                               for o in self.comp_keys):
                        edges.append((ids[k1], ids[k2]))
        confl = []
        for i, k1 in enumerate(self.comp_keys):
            for k2 in self.comp_keys[i + 1:]:
                u = (frozenset(k1[0]) | frozenset(k2[0]),
                     frozenset(k1[1]) | frozenset(k2[1]))
                if not inter._is_state_pair(u[0], u[1]):
                    confl.append((ids[k1], ids[k2]))
        pol, lab, labels = {}, {}, {}
        for k in self.comp_keys:
            top = inter.prime_tops[k]
            if top[0] == "a":
                pol[ids[k]] = sig.inner.polarity[top[1]]
                lab[ids[k]] = sig.inner.label[top[1]]
                labels[ids[k]] = ("dom", sig.base[top[1]])
            else:
                pol[ids[k]] = tau.inner.polarity[top[1]]
                lab[ids[k]] = tau.inner.label[top[1]]
                labels[ids[k]] = ("cod", tau.base[top[1]])
        es = make_event_structure(list(ids.values()), pol, lab, edges, confl)
        super().__init__(es, None, sig.dom, tau.cod, labels, name=name)
        self.sym = ComposedSpec(self)
        self._sym_cache = {}
        self._verify_realization()

    def config_of_state(self, st):
        evs = set()
        for n in self.inter.state_nodes(st):
            pS, pT = self.inter.prime_in_state(st, n)
            k = (tuple(sorted(pS)), tuple(sorted(pT)))
            if k in self.comp_id:
                evs.add(self.comp_id[k])
        return Configuration(self.inner, evs)

    def pair_of_config(self, cfg):
        sset, tset = set(), set()
        for i in cfg.events:
            k = self.comp_keys[i]
            sset |= set(k[0])
            tset |= set(k[1])
        return State(Configuration(self.sig.inner, sset),
                     Configuration(self.tau.inner, tset))

    def induced_event_map(self, cfg, phiS, phiT):
        out = {}
        for i in cfg.events:
            k = self.comp_keys[i]
            nk = (tuple(sorted(phiS.map[s] for s in k[0])),
                  tuple(sorted(phiT.map[t] for t in k[1])))
            if nk not in self.comp_id:
                return None
            out[i] = self.comp_id[nk]
        return out

    def _verify_realization(self):
        got = {c.events for c in self.configurations}
        want = {self.config_of_state(st).events for st in self.minimal_states}
        if got != want or len(want) != len(self.minimal_states):
            raise AssertionError(
                "composition event structure does not realize minimal pairs")


def compose(sig, tau, name=None, cap=DEFAULT_STATE_CAP):
    """tau after sig: interaction followed by hiding of the shared game."""
    inter = interaction(sig, tau, cap=cap)
    nm = name or "%s;%s" % (sig.name or "?", tau.name or "?")
    return ComposedStrategy(sig, tau, inter, name=nm)


def pcov_bijection(composed):
    """The bijection between +-covered interaction states and +-covered
    composition configurations, with matching projections."""
    inter = composed.inter
    pairs = []
    comp_pcov = set(composed.plus_covered)
    seen = set()
    for st in inter.plus_covered_states:
        if not inter.is_minimal(st):
            raise AssertionError("+-covered state is not minimal: %r" % (st,))
        cfg = composed.config_of_state(st)
        if not is_plus_covered(cfg):
            raise AssertionError("image of +-covered state is not +-covered")
        if cfg in seen:
            raise AssertionError("+-covered map is not injective")
        seen.add(cfg)
        a1, _, c1 = inter.projection(st)
        if composed.proj_dom(cfg) != a1 or composed.proj_cod(cfg) != c1:
            raise AssertionError("+-covered map breaks projections")
        pairs.append((st, cfg))
    if seen != comp_pcov:
        raise AssertionError("+-covered map is not onto")
    return pairs


# -- no-deadlock --------------------------------------------------------------


def no_deadlock(sig, tau, cap=DEFAULT_ISO_CAP):
    """For every configuration pair and every mediating symmetry on the
    shared game, the composite bijection must be secured."""
    B = sig.cod
    sym_cache = {}
    for xS in sig.configurations:
        bS = sig.proj_cod(xS)
        for xT in tau.configurations:
            bT = tau.proj_dom(xT)
            if len(bS) != len(bT):
                continue
            key = (bS.key, bT.key)
            if key not in sym_cache:
                sym_cache[key] = B.symmetries(FULL, bS, bT, cap=cap)
            for theta in sym_cache[key]:
                if not is_secured(sig, tau, xS, xT, theta):
                    return False
    return True


# -- weak bipullback -----------------------------------------------------------


class SyncResult:
    """Outcome of synchronizing two witnesses through a shared-game
    symmetry.

    `solutions` lists every (yS, yT, thetaS, thetaT); the chosen one is the
    least.  thetaS : xS ~ yS in the first strategy, thetaT : yT ~ xT in the
    second, and the shared components compose back to the mediating
    symmetry."""

    def __init__(self, theta_B, solutions):
        self.theta_B = theta_B
        self.solutions = tuple(solutions)
        self.yS, self.yT, self.thetaS, self.thetaT = self.solutions[0]

    @property
    def count(self):
        return len(self.solutions)


def weak_bipullback(sig, tau, xS, xT, theta_B, cap=DEFAULT_ISO_CAP):
    """Find matching reindexings of two configurations whose shared-game
    projections agree through theta_B; the result pair matches on the nose
    and is unique up to the strategies' own symmetries."""
    if not is_secured(sig, tau, xS, xT, theta_B):
        raise NoSolution("composite bijection is not secured")
    by_b = {}
    for yT in tau.configurations:
        by_b.setdefault(tau.dom_events(yT), []).append(yT)
    sols = []
    for yS in sig.configurations:
        if len(yS) != len(xS):
            continue
        for thetaS in sig.symmetries(xS, yS, cap=cap):
            sB = sig.cod_iso(thetaS)
            # required shared component of thetaT: y_B -> xT_B
            need = {sB.map[g]: theta_B.map[g] for g in sB.map}
            for yT in by_b.get(frozenset(sB.map.values()), ()):
                for thetaT in tau.symmetries(yT, xT, cap=cap):
                    tB = tau.dom_iso(thetaT)
                    if tB.map != need:
                        continue
                    if is_secured(sig, tau, yS, yT):
                        sols.append((yS, yT, thetaS, thetaT))
    if not sols:
        raise NoSolution("no synchronization found; axiom violation upstream")
    sols.sort(key=lambda s: (s[0].key, s[1].key, s[2].key, s[3].key))
    base = sols[0]
    for other in sols[1:]:
        if not (sig.symmetries(base[0], other[0]) and
                tau.symmetries(base[1], other[1])):
            raise AmbiguousBeyondSymmetry(
                "solutions not related by strategy symmetries")
    return SyncResult(theta_B, sols)


# -- negative action ------------------------------------------------------------


def negative_action(sig, xS, theta_neg, cap=DEFAULT_ISO_CAP):
    """Act with a negative game symmetry on a configuration: the unique
    inner symmetry phi with image theta_pos o theta_neg.

    theta_neg goes from the game image of xS to some game configuration;
    returns (phi, theta_pos)."""
    game = sig.game
    gx = sig.image(xS)
    if theta_neg.src != gx:
        raise ValueError("negative symmetry does not start at the image of xS")
    if not game.neg.admits(theta_neg):
        raise ValueError("mediating symmetry is not negative")
    found = []
    for yS in sig.configurations:
        if len(yS) != len(xS):
            continue
        for phi in sig.symmetries(xS, yS, cap=cap):
            img = sig.image_iso(phi)
            if img is None:
                continue
            tpos = theta_neg.inverse().then(img)
            if game.pos.admits(tpos):
                found.append((phi, tpos))
    if not found:
        raise NoSolution("no action result; axiom violation upstream")
    if len(found) > 1:
        raise NonUnique("%d action results" % len(found))
    return found[0]


# -- copycat ----------------------------------------------------------------------


class CopycatSpec(SymmetrySpec):
    """Pairs of full-symmetry components agreeing where both sides are
    present."""

    def __init__(self, game, side, base):
        self.game = game
        self.side = side
        self.base = base

    def admits(self, iso):
        left, right = {}, {}
        for e, f in iso.map.items():
            if self.side[e] != self.side[f]:
                return False
            (left if self.side[e] == "dom" else right)[self.base[e]] = \
                self.base[f]
        for m in (left, right):
            if not m:
                continue
            src = Configuration(self.game.es, set(m), _check=False)
            tgt = Configuration(self.game.es, set(m.values()), _check=False)
            sub = ConfigIso(src, tgt, m, _check=False)
            if not self.game.full.admits(sub):
                return False
        for a in set(left) & set(right):
            if left[a] != right[a]:
                return False
        return True

    def describe(self):
        return "copycat"


def copycat(game, name=None):
    """The asynchronous forwarder on a game: each move waits for its
    counterpart on the other side before being forwarded."""
    es = game.es
    n = len(es.events)
    # inner ids: dom copy = e, cod copy = e + n
    events, pol, lab, labels = [], {}, {}, {}
    side, base = {}, {}
    for e in es.events:
        events.append(e)
        pol[e] = es.polarity[e].flip()
        lab[e] = es.label[e]
        labels[e] = ("dom", e)
        side[e] = "dom"
        base[e] = e
        f = e + n
        events.append(f)
        pol[f] = es.polarity[e]
        lab[f] = es.label[e]
        labels[f] = ("cod", e)
        side[f] = "cod"
        base[f] = e
    edges = []
    for a, b in es.edges:
        edges.append((a, b))
        edges.append((a + n, b + n))
    for e in es.events:
        if es.polarity[e] is POS:
            edges.append((e, e + n))      # dom copy is the negative one here
        else:
            edges.append((e + n, e))
    confl = []
    for a, b in es.conflict:
        for da in (0, n):
            for db in (0, n):
                confl.append((a + da, b + db))
    inner = make_event_structure(events, pol, lab, edges, confl)
    sym = CopycatSpec(game, side, base)
    return Strategy(inner, sym, game, game, labels,
                    name=name or ("cc_%s" % (game.name or "")))


# -- strategy isomorphism (unit-law plumbing) ---------------------------------------


def strategies_isomorphic(s1, s2):
    """Brute-force isomorphism of strategies over the same dom/cod: an
    inner event bijection preserving structure and game labelling."""
    if s1.dom is not s2.dom or s1.cod is not s2.cod:
        return None
    e1, e2 = s1.inner, s2.inner
    if len(e1.events) != len(e2.events):
        return None

    def prof(sig, es, e):
        return (es.label[e], es.polarity[e], sig.side[e], sig.base[e],
                len(es._preds[e]), len(es._succs[e]))

    cands = {e: [f for f in e2.events
                 if prof(s1, e1, e) == prof(s2, e2, f)]
             for e in e1.events}
    order = sorted(e1.events, key=lambda e: (e1.depth[e], len(cands[e]), e))

    def extend(i, mapping, used):
        if i == len(order):
            return dict(mapping)
        e = order[i]
        for f in cands[e]:
            if f in used:
                continue
            ok = True
            for g, h in mapping.items():
                if ((g, e) in e1.edges) != ((h, f) in e2.edges) or \
                   ((e, g) in e1.edges) != ((f, h) in e2.edges) or \
                   e1.in_conflict(e, g) != e2.in_conflict(f, h):
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
