"""Line-oriented text format for games, strategies and batch commands.

A scenario declares games (explicitly, or by construction expressions over
earlier ones), strategies labelled into a domain/codomain pair, and a list
of commands to run.  The format is deliberately diff-friendly: one fact
per line, explicit section ends.

    # comment
    game B
      event q0 neg q
      event q1 neg q
      event r pos r
      symmetry full all
      symmetry pos identities
      symmetry neg all
    end

    game C = dual(bang_ajm(atom(v, neg), 2))

    strategy sigma : A -> B
      event n0 q cod.q0
      event a0 r cod.r
      edge n0 a0
      symmetry all
    end

    run validate sigma

Strategy events name a game move as `dom.<event>` or `cod.<event>`; events
of constructed games, which have no declared names, are addressed as
`cod.#<id>`.
"""

from __future__ import annotations

from .events import make_event_structure, NEG, POS
from .symmetry import AllOrderIsos, MaximalGenerators, Tcg
from .games import (
    atom, bang_ajm, bang_ho, dual, empty_game, game_sum, linear_arrow,
    parallel, shift_up, shift_down,
)
from .strategies import Strategy


class ParseError(Exception):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        super().__init__("line %d, col %d: %s" % (line, col, message))


class SymDecl:
    """all | identities | gens [...]"""

    def __init__(self, kind, gens=None):
        self.kind = kind
        self.gens = gens or []

    def __eq__(self, other):
        return (isinstance(other, SymDecl) and self.kind == other.kind
                and self.gens == other.gens)

    def __repr__(self):
        return "SymDecl(%s)" % self.kind


class GameDecl:
    def __init__(self, name, expr=None, events=None, edges=None,
                 conflicts=None, syms=None):
        self.name = name
        self.expr = expr                  # expression string or None
        self.events = events or []        # (name, polarity, label)
        self.edges = edges or []
        self.conflicts = conflicts or []
        self.syms = syms or {}            # flavor -> SymDecl

    def __eq__(self, other):
        return (isinstance(other, GameDecl)
                and (self.name, self.expr, self.events, self.edges,
                     self.conflicts, self.syms)
                == (other.name, other.expr, other.events, other.edges,
                    other.conflicts, other.syms))


class StrategyDecl:
    def __init__(self, name, dom, cod, events=None, edges=None,
                 conflicts=None, sym=None):
        self.name = name
        self.dom = dom
        self.cod = cod
        self.events = events or []        # (name, label, side, target)
        self.edges = edges or []
        self.conflicts = conflicts or []
        self.sym = sym or SymDecl("all")

    def __eq__(self, other):
        return (isinstance(other, StrategyDecl)
                and (self.name, self.dom, self.cod, self.events, self.edges,
                     self.conflicts, self.sym)
                == (other.name, other.dom, other.cod, other.events,
                    other.edges, other.conflicts, other.sym))


class ScenarioDoc:
    def __init__(self, games=None, strategies=None, runs=None):
        self.games = games or []
        self.strategies = strategies or []
        self.runs = runs or []

    def game(self, name):
        for g in self.games:
            if g.name == name:
                return g
        raise KeyError(name)

    def __eq__(self, other):
        return (isinstance(other, ScenarioDoc)
                and self.games == other.games
                and self.strategies == other.strategies
                and self.runs == other.runs)


# -- parsing -----------------------------------------------------------------


def parse_scenario(text):
    lines = text.splitlines()
    doc = ScenarioDoc()
    i = 0
    n = len(lines)

    def err(lineno, col, msg):
        raise ParseError(lineno + 1, col + 1, msg)

    def words(lineno):
        raw = lines[lineno]
        body = raw.split("#", 1)[0]
        return body.split()

    while i < n:
        ws = words(i)
        if not ws:
            i += 1
            continue
        if ws[0] == "game":
            if len(ws) >= 4 and ws[2] == "=":
                doc.games.append(GameDecl(ws[1],
                                          expr=" ".join(ws[3:])))
                i += 1
                continue
            if len(ws) != 2:
                err(i, 0, "expected 'game <name>' or 'game <name> = <expr>'")
            g = GameDecl(ws[1])
            i += 1
            i = _parse_game_body(lines, i, g, err, words)
            doc.games.append(g)
        elif ws[0] == "strategy":
            # strategy <name> : <dom> -> <cod>
            if len(ws) != 6 or ws[2] != ":" or ws[4] != "->":
                err(i, 0, "expected 'strategy <name> : <dom> -> <cod>'")
            s = StrategyDecl(ws[1], ws[3], ws[5])
            i += 1
            i = _parse_strategy_body(lines, i, s, err, words)
            doc.strategies.append(s)
        elif ws[0] == "run":
            if len(ws) < 2:
                err(i, 0, "expected 'run <command> [args]'")
            doc.runs.append(ws[1:])
            i += 1
        else:
            err(i, 0, "unknown directive %r" % ws[0])
    return doc


def _parse_game_body(lines, i, g, err, words):
    flavor = None
    while i < len(lines):
        ws = words(i)
        if not ws:
            i += 1
            continue
        if ws[0] == "end":
            return i + 1
        if ws[0] == "event":
            if len(ws) != 4 or ws[2] not in ("pos", "neg"):
                err(i, 0, "expected 'event <name> <pos|neg> <label>'")
            g.events.append((ws[1], ws[2], ws[3]))
        elif ws[0] == "edge":
            if len(ws) != 3:
                err(i, 0, "expected 'edge <from> <to>'")
            g.edges.append((ws[1], ws[2]))
        elif ws[0] == "conflict":
            if len(ws) != 3:
                err(i, 0, "expected 'conflict <a> <b>'")
            g.conflicts.append((ws[1], ws[2]))
        elif ws[0] == "symmetry":
            if len(ws) != 3 or ws[1] not in ("full", "pos", "neg") \
                    or ws[2] not in ("all", "identities", "gens"):
                err(i, 0, "expected 'symmetry <full|pos|neg> "
                          "<all|identities|gens>'")
            flavor = ws[1]
            g.syms[flavor] = SymDecl(ws[2])
        elif ws[0] == "gen":
            if flavor is None or g.syms[flavor].kind != "gens":
                err(i, 0, "'gen' outside a 'symmetry ... gens' block")
            pairs = {}
            for w in ws[1:]:
                if "->" not in w:
                    err(i, 0, "generator entries look like a->b")
                a, b = w.split("->", 1)
                pairs[a] = b
            g.syms[flavor].gens.append(pairs)
        else:
            err(i, 0, "unknown game directive %r" % ws[0])
        i += 1
    err(len(lines) - 1, 0, "unterminated game block (missing 'end')")


def _parse_strategy_body(lines, i, s, err, words):
    in_gens = False
    while i < len(lines):
        ws = words(i)
        if not ws:
            i += 1
            continue
        if ws[0] == "end":
            return i + 1
        if ws[0] == "event":
            # event <name> <label> <dom|cod>.<target>
            if len(ws) != 4 or "." not in ws[3]:
                err(i, 0, "expected 'event <name> <label> <dom|cod>.<ev>'")
            side, target = ws[3].split(".", 1)
            if side not in ("dom", "cod"):
                err(i, 0, "event target side must be dom or cod")
            s.events.append((ws[1], ws[2], side, target))
        elif ws[0] == "edge":
            if len(ws) != 3:
                err(i, 0, "expected 'edge <from> <to>'")
            s.edges.append((ws[1], ws[2]))
        elif ws[0] == "conflict":
            if len(ws) != 3:
                err(i, 0, "expected 'conflict <a> <b>'")
            s.conflicts.append((ws[1], ws[2]))
        elif ws[0] == "symmetry":
            if len(ws) != 2 or ws[1] not in ("all", "identities", "gens"):
                err(i, 0, "expected 'symmetry <all|identities|gens>'")
            s.sym = SymDecl(ws[1])
            in_gens = ws[1] == "gens"
        elif ws[0] == "gen":
            if not in_gens:
                err(i, 0, "'gen' outside a 'symmetry gens' block")
            pairs = {}
            for w in ws[1:]:
                if "->" not in w:
                    err(i, 0, "generator entries look like a->b")
                a, b = w.split("->", 1)
                pairs[a] = b
            s.sym.gens.append(pairs)
        else:
            err(i, 0, "unknown strategy directive %r" % ws[0])
        i += 1
    err(len(lines) - 1, 0, "unterminated strategy block (missing 'end')")


# -- expression parsing ---------------------------------------------------------


class _ExprParser:
    def __init__(self, text, env, bound):
        self.text = text
        self.pos = 0
        self.env = env
        self.bound = bound

    def fail(self, msg):
        raise ParseError(1, self.pos + 1, "in expression %r: %s"
                         % (self.text, msg))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self):
        self.skip()
        j = self.pos
        while j < len(self.text) and (self.text[j].isalnum()
                                      or self.text[j] in "_"):
            j += 1
        w = self.text[self.pos:j]
        self.pos = j
        return w

    def expect(self, ch):
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.fail("expected %r" % ch)
        self.pos += 1

    def parse(self):
        g = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return g

    def expr(self):
        w = self.word()
        if not w:
            self.fail("expected a game expression")
        if self.peek() != "(":
            if w in self.env:
                return self.env[w]
            self.fail("unknown game %r" % w)
        self.expect("(")
        if w == "atom":
            label = self.word()
            self.expect(",")
            pol = self.word()
            if pol not in ("pos", "neg"):
                self.fail("atom polarity must be pos or neg")
            self.expect(")")
            return atom(label, POS if pol == "pos" else NEG)
        if w == "empty":
            self.expect(")")
            return empty_game()
        if w == "dual":
            g = self.expr()
            self.expect(")")
            return dual(g)
        if w in ("par", "parallel"):
            g1 = self.expr()
            self.expect(",")
            g2 = self.expr()
            self.expect(")")
            return parallel(g1, g2)
        if w in ("bang_ajm", "bang_ho"):
            g = self.expr()
            if self.peek() == ",":
                self.expect(",")
                k = int(self.word())
            else:
                k = self.bound
            self.expect(")")
            return (bang_ajm if w == "bang_ajm" else bang_ho)(g, k)
        if w in ("shift_up", "shift_down"):
            g = self.expr()
            self.expect(")")
            return (shift_up if w == "shift_up" else shift_down)(g)
        if w == "sum":
            parts = [self.expr()]
            while self.peek() == ",":
                self.expect(",")
                parts.append(self.expr())
            self.expect(")")
            return game_sum(parts)
        if w == "arrow":
            g1 = self.expr()
            self.expect(",")
            g2 = self.expr()
            self.expect(")")
            return linear_arrow(g1, g2)
        self.fail("unknown construction %r" % w)


# -- building ---------------------------------------------------------------------


class BuiltScenario:
    def __init__(self, doc, games, strategies, names):
        self.doc = doc
        self.games = games
        self.strategies = strategies
        self.names = names      # game name -> {event name -> id}


def build_scenario(doc, bound=2):
    games = {}
    names = {}
    for g in doc.games:
        if g.expr is not None:
            built = _ExprParser(g.expr, games, bound).parse()
            built.name = g.name
            games[g.name] = built
            names[g.name] = {}
            continue
        ids = {nm: i for i, (nm, _, _) in enumerate(g.events)}
        if len(ids) != len(g.events):
            raise ParseError(1, 1, "duplicate event name in game %s" % g.name)
        pol = {ids[nm]: (POS if p == "pos" else NEG)
               for (nm, p, _) in g.events}
        lab = {ids[nm]: l for (nm, _, l) in g.events}
        try:
            edges = [(ids[a], ids[b]) for a, b in g.edges]
            confl = [(ids[a], ids[b]) for a, b in g.conflicts]
        except KeyError as exc:
            raise ParseError(1, 1, "unknown event %s in game %s"
                             % (exc, g.name))
        es = make_event_structure(list(ids.values()), pol, lab, edges, confl)

        def build_sym(decl):
            if decl.kind == "all":
                return AllOrderIsos()
            if decl.kind == "identities":
                return MaximalGenerators([{e: e for e in es.events}])
            gens = [{ids[a]: ids[b] for a, b in gen.items()}
                    for gen in decl.gens]
            return MaximalGenerators(gens)

        syms = {fl: build_sym(g.syms.get(fl, SymDecl("all")))
                for fl in ("full", "pos", "neg")}
        games[g.name] = Tcg(es, syms["full"], syms["pos"], syms["neg"],
                            name=g.name)
        names[g.name] = ids

    strategies = {}
    for s in doc.strategies:
        if s.dom not in games or s.cod not in games:
            raise ParseError(1, 1, "strategy %s references unknown games"
                             % s.name)
        dom, cod = games[s.dom], games[s.cod]
        ids = {nm: i for i, (nm, _, _, _) in enumerate(s.events)}
        lab = {}
        labels = {}
        pol = {}
        for (nm, l, side, target) in s.events:
            game = dom if side == "dom" else cod
            gname = s.dom if side == "dom" else s.cod
            if target.startswith("#"):
                gid = int(target[1:])
            else:
                try:
                    gid = names[gname][target]
                except KeyError:
                    raise ParseError(1, 1, "unknown event %s.%s in strategy "
                                     "%s" % (gname, target, s.name))
            e = ids[nm]
            lab[e] = l
            p = game.es.polarity[gid]
            pol[e] = p.flip() if side == "dom" else p
            labels[e] = (side, gid)
        edges = [(ids[a], ids[b]) for a, b in s.edges]
        confl = [(ids[a], ids[b]) for a, b in s.conflicts]
        inner = make_event_structure(list(ids.values()), pol, lab,
                                     edges, confl)
        if s.sym.kind == "all":
            spec = AllOrderIsos()
        elif s.sym.kind == "identities":
            spec = MaximalGenerators([{e: e for e in inner.events}])
        else:
            spec = MaximalGenerators([{ids[a]: ids[b]
                                       for a, b in gen.items()}
                                      for gen in s.sym.gens])
        strategies[s.name] = Strategy(inner, spec, dom, cod, labels,
                                      name=s.name)
    return BuiltScenario(doc, games, strategies, names)


# -- printing ----------------------------------------------------------------------


def print_scenario(doc):
    out = []
    for g in doc.games:
        if g.expr is not None:
            out.append("game %s = %s" % (g.name, g.expr))
            continue
        out.append("game %s" % g.name)
        for (nm, p, l) in g.events:
            out.append("  event %s %s %s" % (nm, p, l))
        for (a, b) in g.edges:
            out.append("  edge %s %s" % (a, b))
        for (a, b) in g.conflicts:
            out.append("  conflict %s %s" % (a, b))
        for fl in ("full", "pos", "neg"):
            if fl in g.syms:
                decl = g.syms[fl]
                out.append("  symmetry %s %s" % (fl, decl.kind))
                for gen in decl.gens:
                    out.append("  gen " + " ".join(
                        "%s->%s" % (a, b) for a, b in sorted(gen.items())))
        out.append("end")
    for s in doc.strategies:
        out.append("strategy %s : %s -> %s" % (s.name, s.dom, s.cod))
        for (nm, l, side, target) in s.events:
            out.append("  event %s %s %s.%s" % (nm, l, side, target))
        for (a, b) in s.edges:
            out.append("  edge %s %s" % (a, b))
        for (a, b) in s.conflicts:
            out.append("  conflict %s %s" % (a, b))
        out.append("  symmetry %s" % s.sym.kind)
        for gen in s.sym.gens:
            out.append("  gen " + " ".join(
                "%s->%s" % (a, b) for a, b in sorted(gen.items())))
        out.append("end")
    for r in doc.runs:
        out.append("run " + " ".join(r))
    return "\n".join(out) + "\n"
