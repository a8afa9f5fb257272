"""Built-in games and strategies used by the reports, the CLI and the tests.

Each builder returns a Fixture bundle of named games and strategies.  The
interesting ones reproduce published counterexamples:

  epi1     two strategies through a three-move middle game whose composite
           has two non-symmetric results, against a 1 x 1 class count
  epi2     the same phenomenon phrased with replicated question games
  ex1      replicated call/answer strategies with injective index tables;
           synchronizing one matching pair through the two symmetries of
           its shared position yields non-symmetric results
  repr     the witness count 2-vs-1 depending on the chosen class
           representative, with the canonical one giving 1
  devisme  a small game that is a valid tcg but has a class with no
           canonical configuration
  deadlock two strategies waiting on each other across the middle game
"""

from __future__ import annotations

from .events import make_event_structure, NEG, POS
from .symmetry import AllOrderIsos, identity_only, MaximalGenerators, Tcg
from .games import atom, bang_ajm, bang_ho, dual, empty_game, linear_arrow, parallel
from .strategies import Strategy, copycat


class Fixture:
    def __init__(self, name, games, strategies, configs=None, note=""):
        self.name = name
        self.games = games
        self.strategies = strategies
        self.configs = configs or {}
        self.note = note

    def __repr__(self):
        return "Fixture(%s)" % self.name


def _strategy(name, dom, cod, events, edges=(), conflict=(), sym=None):
    """events: list of (id, label, ('dom'|'cod', game event))."""
    ids = [e for e, _, _ in events]
    lab = {e: l for e, l, _ in events}
    labels = {e: t for e, _, t in events}
    pol = {}
    for e, _, (side, g) in events:
        base = dom if side == "dom" else cod
        p = base.es.polarity[g]
        pol[e] = p.flip() if side == "dom" else p
    inner = make_event_structure(ids, pol, lab, edges, conflict)
    return Strategy(inner, sym or AllOrderIsos(), dom, cod, labels, name=name)


# -- first counterexample ---------------------------------------------------


def fix_epi1():
    """A = one negative move; B = two symmetric negative questions beside
    one positive answer; C = two symmetric positive results.

    sigma answers either question nondeterministically (conflicting copies
    of the same answer move) and reports on A once both questions are in;
    tau asks both questions, waits for the answer, then plays a result."""
    A = atom("ok", NEG, name="A")
    B = parallel(bang_ajm(atom("q", NEG), 2), dual(atom("r", NEG)), name="B")
    C = dual(bang_ajm(atom("v", NEG), 2), name="C")
    # B events: 0, 1 negative questions (symmetric), 2 positive answer
    swap = {0: 1, 1: 0, 2: 2, 3: 4, 4: 3}
    ident = {e: e for e in range(5)}
    sigma = _strategy(
        "sigma", A, B,
        events=[
            (0, "q", ("cod", 0)),       # question copy 0
            (1, "q", ("cod", 1)),       # question copy 1
            (2, "ok", ("dom", 0)),      # report on A, needs both questions
            (3, "r", ("cod", 2)),       # answer after question 0
            (4, "r", ("cod", 2)),       # answer after question 1
        ],
        edges=[(0, 2), (1, 2), (0, 3), (1, 4)],
        conflict=[(3, 4)],
        sym=MaximalGenerators([ident, swap]))
    tau = _strategy(
        "tau", B, C,
        events=[
            (0, "q0", ("dom", 0)),      # ask question copy 0
            (1, "q1", ("dom", 1)),      # ask question copy 1
            (2, "r", ("dom", 2)),       # the answer arrives
            (3, "v", ("cod", 0)),       # report a result
        ],
        edges=[(2, 3)],
        sym=MaximalGenerators([{e: e for e in range(4)}]))
    return Fixture("epi1", {"A": A, "B": B, "C": C},
                   {"sigma": sigma, "tau": tau})


# -- second counterexample ---------------------------------------------------


def _arrow_root(game):
    """In linear_arrow(!o, o): the single negative root event."""
    return game.meta["rmap"][sorted(game.meta["n"].es.events)[0]]


def _arrow_q(game, i):
    """In linear_arrow(!o, o): the i-th replicated question."""
    bang = game.meta["m"]
    return game.meta["lmap"][bang.meta["emap"][(i, 0)]]


def fix_epi2(bound=2):
    """Replicated-question version: sigma calls its functional argument,
    relays every inner question to its own replicated argument, and answers
    the outer interface; tau calls, questions its argument twice, and
    relays the replicated interface.  Same 2-vs-1 class count mismatch."""
    o = atom("q", NEG, name="o")
    A = bang_ajm(o, bound, name="A")            # !o
    M = linear_arrow(bang_ajm(o, bound), o)     # !o -o o
    NN = linear_arrow(bang_ajm(o, bound), o)
    B = linear_arrow(M, NN, name="B")
    C = linear_arrow(bang_ajm(o, bound), o, name="C")
    dom_copy = {i: A.meta["emap"][(i, 0)] for i in range(bound)}
    b_root = B.meta["rmap"][_arrow_root(NN)]            # outer root, negative
    b_out = {i: B.meta["rmap"][_arrow_q(NN, i)] for i in range(bound)}
    b_call = B.meta["lmap"][_arrow_root(M)]             # argument call, positive
    b_m = {j: B.meta["lmap"][_arrow_q(M, j)] for j in range(bound)}
    sigma = _strategy(
        "sigma2", A, B,
        events=[
            (0, "root", ("cod", b_root)),   # outer question arrives
            (1, "call", ("cod", b_call)),   # call the functional argument
            (2, "m", ("cod", b_m[0])),      # its question, copy 0
            (3, "m", ("cod", b_m[1])),      # its question, copy 1
            (4, "d", ("dom", dom_copy[0])),  # relay to own argument, copy 0
            (5, "d", ("dom", dom_copy[1])),  # relay to own argument, copy 1
            (6, "n", ("cod", b_out[0])),    # relay to outer interface, copy 0
            (7, "n", ("cod", b_out[1])),    # relay to outer interface, copy 1
        ],
        edges=[(0, 1), (1, 2), (1, 3), (2, 4), (3, 5), (2, 6), (3, 7)])
    tau = _strategy(
        "tau2", B, C,
        events=[
            (0, "root", ("cod", _arrow_root(C))),   # outer question arrives
            (1, "call", ("dom", b_root)),           # call the argument
            (2, "ask", ("dom", b_call)),            # it questions its argument
            (3, "arg0", ("dom", b_m[0])),           # answer with copy 0
            (4, "arg1", ("dom", b_m[1])),           # and with copy 1
            (5, "n", ("dom", b_out[0])),            # its question, copy 0
            (6, "n", ("dom", b_out[1])),            # its question, copy 1
            (7, "out", ("cod", _arrow_q(C, 0))),    # relay outward, copy 0
            (8, "out", ("cod", _arrow_q(C, 1))),    # relay outward, copy 1
        ],
        edges=[(0, 1), (1, 2), (2, 3), (2, 4), (1, 5), (1, 6), (5, 7), (6, 8)])
    return Fixture("epi2", {"A": A, "B": B, "C": C, "o": o, "M": M},
                   {"sigma": sigma, "tau": tau})


# -- replicated call/answer example -------------------------------------------


def _ho_event(B, call_idx, answer_idx=None):
    ids = B.meta["ids"]
    arena = B.meta["arena"]
    roots = sorted(arena.minimal_events)
    root = roots[0]
    child = sorted(arena._succs[root])[0]
    if answer_idx is None:
        return ids[((root,), (call_idx,))]
    return ids[((root, child), (call_idx, answer_idx))]


EX1_TABLES = {
    # bound 2: the index space only leaves room for one continuation point,
    # which must sit at the canonical answer index for the counting
    # identities to see it; the two instantiations differ in the output
    # table
    "A": {"bound": 2, "f": {0: 0, 1: 1}, "g": {0: 0, 1: 1},
          "h": {0: 1}, "k": {(0, 0): 0, (0, 1): 1}},
    "B": {"bound": 2, "f": {0: 0, 1: 1}, "g": {0: 0, 1: 1},
          "h": {0: 1}, "k": {(0, 0): 1, (0, 1): 0}},
    # bound 3: room for genuinely distinct branch tables and two
    # continuation points, giving four distinct output indices
    "C": {"bound": 3, "f": {0: 0, 1: 1, 2: 2}, "g": {0: 1, 1: 2, 2: 0},
          "h": {0: 1, 1: 2},
          "k": {(j, j2): 3 * j + j2 for j in (0, 1) for j2 in (0, 1, 2)}},
    # bound 2 with the continuation at the other answer index: a valid
    # composition (same four outcomes) whose second strategy is not
    # symmetry-uniform, so the counting identities fail against the least
    # canonical representative; kept as an exploration fixture
    "skew": {"bound": 2, "f": {0: 1, 1: 0}, "g": {0: 1, 1: 0},
             "h": {1: 1}, "k": {(1, 0): 0, (1, 1): 1}},
}


def fix_ex1(tables="A"):
    """sigma answers every question with one of two conflicting copies,
    with answer indices drawn from injective tables f and g; tau calls with
    index 0, recalls through table h, and reports through table k."""
    t = EX1_TABLES[tables]
    bound, f, g, h, k = t["bound"], t["f"], t["g"], t["h"], t["k"]
    arena = make_event_structure([0, 1], {0: NEG, 1: POS},
                                 {0: "q", 1: "a"}, edges=[(0, 1)])
    A = empty_game("A")
    B = bang_ho(arena, bound, name="B")
    C = dual(bang_ajm(atom("v", NEG), len(k)), name="C")
    kv = sorted(k.values())
    cidx = {v: i for i, v in enumerate(kv)}

    events = []
    edges = []
    conflict = []
    nid = 0
    call0 = {}
    for i in range(bound):
        events.append((nid, "q", ("cod", _ho_event(B, i))))
        call0[i] = nid
        nid += 1
    for i in range(bound):
        pf = nid
        events.append((nid, "f", ("cod", _ho_event(B, i, f[i]))))
        nid += 1
        pg = nid
        events.append((nid, "g", ("cod", _ho_event(B, i, g[i]))))
        nid += 1
        edges += [(call0[i], pf), (call0[i], pg)]
        conflict.append((pf, pg))
    sigma = _strategy("sigma1", A, B, events, edges, conflict)

    events = []
    edges = []
    nid = 0
    events.append((nid, "call0", ("dom", _ho_event(B, 0))))
    c0 = nid
    nid += 1
    for j in range(bound):
        aj = nid
        events.append((nid, "ans0", ("dom", _ho_event(B, 0, j))))
        edges.append((c0, aj))
        nid += 1
        if j in h:
            cj = nid
            events.append((nid, "call1", ("dom", _ho_event(B, h[j]))))
            edges.append((aj, cj))
            nid += 1
            for j2 in range(bound):
                bj = nid
                events.append((nid, "ans1", ("dom", _ho_event(B, h[j], j2))))
                edges.append((cj, bj))
                nid += 1
                if (j, j2) in k:
                    vj = nid
                    events.append((nid, "done", ("cod", cidx[k[(j, j2)]])))
                    edges.append((bj, vj))
                    nid += 1
    tau = _strategy("tau1", B, C, events, edges)
    return Fixture("ex1:%s" % tables, {"A": A, "B": B, "C": C},
                   {"sigma": sigma, "tau": tau},
                   configs={"tables": t})


# -- representability example --------------------------------------------------


def fix_repr(bound=3):
    """One strategy over the dual of a replicated call/answer game: call
    with index 0, then recall through an injective table h with 0 outside
    its range.  Ships the two class representatives whose witness counts
    differ."""
    arena = make_event_structure([0, 1], {0: NEG, 1: POS},
                                 {0: "q", 1: "a"}, edges=[(0, 1)])
    B = bang_ho(arena, bound, name="B")
    E = empty_game("E")
    h = {1: 2, 2: 1}
    events = [(0, "call0", ("dom", _ho_event(B, 0)))]
    edges = []
    nid = 1
    for i in range(bound):
        ai = nid
        events.append((nid, "ans0", ("dom", _ho_event(B, 0, i))))
        edges.append((0, ai))
        nid += 1
        if i in h:
            ci = nid
            events.append((nid, "call1", ("dom", _ho_event(B, h[i]))))
            edges.append((ai, ci))
            nid += 1
            for j in range(bound):
                events.append((nid, "ans1", ("dom", _ho_event(B, h[i], j))))
                edges.append((ci, nid))
                nid += 1
    sigma = _strategy("sigre", B, E, events, edges)
    game = sigma.game
    lmap = game.meta["lmap"]

    def bcfg(pairs):
        evs = set()
        for (ci, ai) in pairs:
            evs.add(_ho_event(B, ci))
            if ai is not None:
                evs.add(_ho_event(B, ci, ai))
        return B.config(evs)

    def gcfg(bc):
        return game.config({lmap[e] for e in bc.events})

    # two calls answered once each: answer indices (1, 2) vs (1, 1)
    x_bar = bcfg([(1, 1), (2, 2)])        # not canonical
    x_bar_prime = bcfg([(1, 1), (2, 1)])  # canonical
    return Fixture("repr", {"B": B, "E": E, "G": game}, {"sigma": sigma},
                   configs={"x_bar": x_bar, "x_bar_prime": x_bar_prime,
                            "x_bar_game": gcfg(x_bar),
                            "x_bar_prime_game": gcfg(x_bar_prime),
                            "h": h})


# -- pathological game -----------------------------------------------------------


def fix_devisme():
    """Two symmetric negative moves enabling two positive moves; the
    polarized families are generated by two maximal bijections each.  Valid
    as a tcg, but the three-event class has no canonical configuration."""
    es = make_event_structure(
        [0, 1, 2, 3], {0: NEG, 1: NEG, 2: POS, 3: POS},
        {0: "m", 1: "m", 2: "p", 3: "p"},
        edges=[(0, 2), (0, 3), (1, 2), (1, 3)])
    ident = {0: 0, 1: 1, 2: 2, 3: 3}
    swap_all = {0: 1, 1: 0, 2: 3, 3: 2}
    swap_pos = {0: 0, 1: 1, 2: 3, 3: 2}
    game = Tcg(es, AllOrderIsos(),
               MaximalGenerators([ident, swap_pos]),
               MaximalGenerators([ident, swap_all]),
               name="devisme")
    return Fixture("devisme", {"A": game}, {})


# -- deadlock pair ----------------------------------------------------------------


def fix_deadlock():
    """sigma waits for x before playing y; tau waits for y before playing
    x.  Both are valid strategies but every mediating symmetry on their
    full shared position closes a causal cycle."""
    B = parallel(atom("x", NEG), dual(atom("y", NEG)), name="B")
    A = empty_game("A")
    C = empty_game("C")
    sigma = _strategy(
        "dead_sigma", A, B,
        events=[(0, "x", ("cod", 0)), (1, "y", ("cod", 1))],
        edges=[(0, 1)])
    tau = _strategy(
        "dead_tau", B, C,
        events=[(0, "y", ("dom", 1)), (1, "x", ("dom", 0))],
        edges=[(0, 1)])
    return Fixture("deadlock", {"A": A, "B": B, "C": C},
                   {"sigma": sigma, "tau": tau})


def fix_copycat(game=None):
    g = game or parallel(bang_ajm(atom("q", NEG), 2), dual(atom("r", NEG)),
                         name="B")
    return Fixture("copycat", {"G": g}, {"cc": copycat(g)})


REGISTRY = {
    "epi1": fix_epi1,
    "epi2": fix_epi2,
    "ex1": fix_ex1,
    "ex1b": lambda: fix_ex1("B"),
    "ex1c": lambda: fix_ex1("C"),
    "ex1skew": lambda: fix_ex1("skew"),
    "repr": fix_repr,
    "devisme": fix_devisme,
    "deadlock": fix_deadlock,
    "copycat": fix_copycat,
}


def load_fixture(name):
    if name not in REGISTRY:
        raise KeyError("unknown fixture %r (have: %s)"
                       % (name, ", ".join(sorted(REGISTRY))))
    return REGISTRY[name]()
