"""Seeded random generation of small representable games and valid
strategies over them.

Strategies are built receptive-by-construction: every enabled negative
move of the composite game gets exactly one inner event, positive moves
are included at random (one may be duplicated into conflicting copies),
and extra negative-to-positive causal links and positive conflicts are
sprinkled on top.  Candidates are still run through the full validator and
rejected on any failure, so the suite never trusts the construction.
"""

import random

from tcg import (
    AllOrderIsos,
    NEG,
    POS,
    Strategy,
    atom,
    bang_ajm,
    dual,
    is_representable,
    make_event_structure,
    parallel,
    shift_up,
    validate_strategy,
)
from tcg.games import is_negative

LABELS = "qrsuv"


def random_game(rng, max_events=6, depth=0):
    """Random representable game from atoms, duals, parallels, bounded
    replication and negative shifts."""
    roll = rng.random()
    if depth >= 2 or roll < 0.35:
        return atom(rng.choice(LABELS), rng.choice((NEG, NEG, POS)))
    if roll < 0.5:
        return dual(random_game(rng, max_events, depth + 1))
    if roll < 0.7:
        left = random_game(rng, max_events // 2, depth + 1)
        right = random_game(rng, max_events - len(left.es.events),
                            depth + 1)
        return parallel(left, right)
    if roll < 0.85:
        inner = random_game(rng, max_events // 2, depth + 1)
        if not is_negative(inner) or not inner.es.events:
            inner = atom(rng.choice(LABELS), NEG)
        return bang_ajm(inner, 2)
    return shift_up(random_game(rng, max_events - 1, depth + 1),
                    label=rng.choice(LABELS))


def random_games(rng, max_events=6):
    while True:
        g = random_game(rng, max_events)
        if len(g.es.events) <= max_events and is_representable(g).ok:
            return g


def random_strategy(rng, dom, cod, name="rand"):
    """One candidate strategy from dom to cod, or None when the draw is
    rejected by the validator."""
    game = parallel(dual(dom), cod)
    gme = game.es
    include = {}
    for g in gme.toposorted:
        causes_ok = all(include.get(c) for c in gme._preds[g])
        if not causes_ok:
            include[g] = False
        elif gme.polarity[g] is NEG:
            include[g] = True
        else:
            include[g] = rng.random() < 0.7
    chosen = [g for g in gme.toposorted if include[g]]
    if not chosen and rng.random() < 0.5:
        return None

    side_of = game.meta["side_of"]
    events, pol, lab, labels = [], {}, {}, {}
    gid_of = {}
    nid = 0
    for g in chosen:
        events.append(nid)
        pol[nid] = gme.polarity[g]
        part, base = side_of[g]
        if gme.polarity[g] is NEG:
            lab[nid] = gme.label[g]
        else:
            lab[nid] = "%s/%d" % (gme.label[g], nid)
        labels[nid] = ("dom" if part == 0 else "cod", base)
        gid_of[nid] = g
        nid += 1

    # one duplicated positive with no negative game successors
    dup_cands = [e for e in events
                 if pol[e] is POS
                 and not any(gme.polarity[h] is NEG
                             for h in gme._succs[gid_of[e]])]
    extra_conflicts = []
    if dup_cands and rng.random() < 0.5:
        e = rng.choice(dup_cands)
        c = nid
        events.append(c)
        pol[c] = POS
        lab[c] = lab[e] + "'"
        labels[c] = labels[e]
        gid_of[c] = gid_of[e]
        nid += 1
        extra_conflicts.append((e, c))

    by_game = {}
    for e in events:
        by_game.setdefault(gid_of[e], []).append(e)
    edges = []
    for e in events:
        for c in gme._preds[gid_of[e]]:
            edges.append((by_game[c][0], e))

    # extra negative-to-positive causal links, keeping the order acyclic
    adj = {e: set() for e in events}
    for a, b in edges:
        adj[a].add(b)

    def reaches(a, b):
        seen, stack = set(), [a]
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    negs = [e for e in events if pol[e] is NEG]
    poss = [e for e in events if pol[e] is POS]
    for _ in range(rng.randrange(0, 3)):
        if not negs or not poss:
            break
        n = rng.choice(negs)
        p = rng.choice(poss)
        if n == p or reaches(p, n) or reaches(n, p):
            continue
        edges.append((n, p))
        adj[n].add(p)

    for _ in range(rng.randrange(0, 2)):
        if len(poss) < 2:
            break
        a, b = rng.sample(poss, 2)
        if not reaches(a, b) and not reaches(b, a):
            extra_conflicts.append((a, b))

    try:
        inner = make_event_structure(events, pol, lab, edges,
                                     extra_conflicts)
        sig = Strategy(inner, AllOrderIsos(), dom, cod, labels, name=name)
    except (ValueError, Exception):
        return None
    if len(sig.configurations) > 200:
        return None
    if not validate_strategy(sig).ok:
        return None
    return sig


def random_pair(rng, max_events=5):
    """A composable valid strategy pair over three random representable
    games; retries until one is found."""
    while True:
        A = random_games(rng, max_events)
        B = random_games(rng, max_events)
        C = random_games(rng, max_events)
        sig = random_strategy(rng, A, B, name="rs")
        if sig is None:
            continue
        tau = random_strategy(rng, B, C, name="rt")
        if tau is None:
            continue
        return sig, tau
