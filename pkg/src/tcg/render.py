"""Readable names for configurations and symmetry classes.

Constructed games know their shape, so class representatives can be printed
in multiset / arrow notation: a replicated game shows the multiset of its
per-copy contents, an arrow shows source and target.  Anything else falls
back to the set of event labels.
"""

from __future__ import annotations

from .events import Configuration


def class_name(game, rep):
    """Compact display name for the symmetry class of `rep`."""
    return _render(game, rep) or "()"


def _render(game, rep):
    kind = game.meta.get("kind")
    if not rep.events:
        return "()"
    if kind == "atom":
        return game.meta["label"]
    if kind == "dual":
        return _render(game.meta["child"],
                       Configuration(game.meta["child"].es, rep.events,
                                     _check=False))
    if kind == "parallel":
        side_of = game.meta["side_of"]
        parts = [game.meta["left"], game.meta["right"]]
        bits = []
        for i, part in enumerate(parts):
            evs = {side_of[e][1] for e in rep.events if side_of[e][0] == i}
            if evs:
                bits.append(_render(part, Configuration(part.es, evs,
                                                        _check=False)))
        return " || ".join(bits)
    if kind == "arrow":
        side_of = game.meta["side_of"]
        m, n = game.meta["m"], game.meta["n"]
        mevs = {side_of[e][1] for e in rep.events if side_of[e][0] == 0}
        nevs = {side_of[e][1] for e in rep.events if side_of[e][0] == 1}
        left = _render(m, Configuration(m.es, mevs, _check=False)) \
            if mevs else "()"
        right = _render(n, Configuration(n.es, nevs, _check=False)) \
            if nevs else "()"
        return "%s -o %s" % (left, right)
    if kind == "bang_ajm":
        child = game.meta["child"]
        copy_of = game.meta["copy_of"]
        base_of = game.meta["base_of"]
        per_copy = {}
        for e in rep.events:
            per_copy.setdefault(copy_of[e], set()).add(base_of[e])
        names = sorted(
            _render(child, Configuration(child.es, evs, _check=False))
            for evs in per_copy.values())
        return "[%s]" % ", ".join(names)
    if kind == "bang_ho":
        path_of = game.meta["path_of"]
        per_root = {}
        for e in rep.events:
            apath, ipath = path_of[e]
            per_root.setdefault((apath[0], ipath[0]), []).append((apath, ipath))
        arena = game.meta["arena"]
        names = sorted(_render_tree(arena, evs) for evs in per_root.values())
        return "[%s]" % ", ".join(names)
    if kind == "shift":
        child = game.meta["child"]
        base_of = game.meta["base_of"]
        root = game.meta["root"]
        inner = {base_of[e] for e in rep.events if e != root}
        mark = "^" if game.meta["polarity"].value == "-" else "_"
        if not inner:
            return mark
        return mark + "." + _render(child, Configuration(child.es, inner,
                                                         _check=False))
    if kind == "sum":
        side_of = game.meta["side_of"]
        parts = game.meta["parts"]
        comps = {side_of[e][0] for e in rep.events}
        i = comps.pop()
        evs = {side_of[e][1] for e in rep.events}
        part = parts[i]
        return "in%d(%s)" % (i, _render(part, Configuration(part.es, evs,
                                                            _check=False)))
    return "{" + ",".join(sorted(game.es.label[e] for e in rep.events)) + "}"


def _render_tree(arena, paths):
    """One root's worth of an HO-replicated configuration: counts of
    answers per call, written as a small tree."""
    root = paths[0][0][0]
    kids = {}
    for apath, ipath in paths:
        if len(apath) > 1:
            kids.setdefault((apath[1], ipath[1]), []).append(
                (apath[1:], ipath[1:]))
    label = arena.label[root]
    if not kids:
        return label
    subs = sorted(_render_tree(arena, v) for v in kids.values())
    return "%s(%s)" % (label, ", ".join(subs))
