"""Command-line interface: validate scenarios, print collapse tables,
compose strategies and reproduce the built-in example reports.

Exit codes: 0 all checks pass (or permissive mode), 1 a check failed,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from .events import validate_es, Configuration
from .symmetry import (
    check_family_axioms, is_representable, endo_group, is_canonical,
    FULL, POSF, NEGF,
)
from .games import dual
from .strategies import (
    validate_strategy, compose, no_deadlock, weak_bipullback,
    pcov_bijection,
)
from .collapse import (
    atlas, collapse, matrix_compose, check_theorem, check_wit_vs_witplus,
    matching_witnesses, plus_witnesses, wit_count,
)
from .render import class_name
from .scenario import parse_scenario, build_scenario, ParseError
from .fixtures import load_fixture, REGISTRY


class Output:
    """Plain tables or flat key=value records."""

    def __init__(self, kv=False):
        self.kv = kv
        self.failed = False

    def say(self, text=""):
        if not self.kv:
            print(text)

    def record(self, **kw):
        if self.kv:
            print(" ".join("%s=%s" % (k, v) for k, v in kw.items()))

    def check(self, name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        if not ok:
            self.failed = True
        if self.kv:
            print("check=%s status=%s%s"
                  % (name, status.lower(),
                     (" detail=%r" % detail) if detail else ""))
        else:
            print("[%s] %s%s" % (status, name,
                                 (" -- " + detail) if detail else ""))


def _load(args, out):
    if args.fixture:
        fx = load_fixture(args.fixture)
        return fx.games, fx.strategies, fx
    if not args.scenario:
        out.say("error: give a scenario file or --fixture NAME")
        sys.exit(2)
    try:
        with open(args.scenario) as fh:
            doc = parse_scenario(fh.read())
        built = build_scenario(doc, bound=args.bound)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        sys.exit(2)
    except OSError as exc:
        print("cannot read scenario: %s" % exc, file=sys.stderr)
        sys.exit(2)
    return built.games, built.strategies, built


def _atlas_for(args, game):
    if args.atlas and args.atlas != "auto":
        overrides = {}
        try:
            with open(args.atlas) as fh:
                for line in fh:
                    ws = line.split("#", 1)[0].split()
                    if not ws:
                        continue
                    if ws[0] != "rep" or len(ws) < 2:
                        raise ValueError("atlas lines look like: "
                                         "rep <game> <event ids...>")
                    if ws[1] != (game.name or ""):
                        continue
                    evs = {int(w) for w in ws[2:]}
                    cfg = game.config(evs)
                    overrides[cfg] = cfg
        except (OSError, ValueError) as exc:
            print("cannot use atlas file: %s" % exc, file=sys.stderr)
            sys.exit(2)
        return atlas(game, overrides)
    return atlas(game)


def cmd_validate(args, out):
    games, strategies, _ = _load(args, out)
    strict_fail = False
    for name, game in sorted(games.items()):
        rep = validate_es(game.es)
        out.check("game %s: event structure" % name, rep.ok,
                  "" if rep.ok else repr(rep.issues[0]))
        if not rep.ok:
            strict_fail = True
            continue
        if len(game.configurations) <= args.cap:
            fam = check_family_axioms(game, first_only=True)
            out.check("game %s: symmetry families" % name, fam.ok,
                      "" if fam.ok else repr(fam.issues[0]))
            if not fam.ok:
                strict_fail = True
            rpr = is_representable(game)
            out.check("game %s: representable" % name, rpr.ok,
                      "" if rpr.ok else
                      "class of %r has no canonical member"
                      % (rpr.failing[0].rep.key,))
            # a representability failure alone is reported, not fatal
    for name, sig in sorted(strategies.items()):
        rep = validate_strategy(sig)
        out.check("strategy %s: axioms" % name, rep.ok,
                  "" if rep.ok else repr(rep.issues[0]))
        if not rep.ok:
            strict_fail = True
    return 1 if (args.strict and strict_fail) else 0


def cmd_classes(args, out):
    games, _, _ = _load(args, out)
    game = games[args.game]
    out.say("symmetry classes of %s:" % args.game)
    for cls in game.classes:
        nm = class_name(game, cls.rep)
        out.say("  #%d %-24s size %d%s"
                % (cls.index, nm, len(cls.members),
                   "" if cls.has_canonical else "  (no canonical member)"))
        out.record(game=args.game, cls=cls.index, name=nm,
                   size=len(cls.members), canonical=cls.has_canonical)
    return 0


def cmd_canonical(args, out):
    games, _, _ = _load(args, out)
    game = games[args.game]
    rpr = is_representable(game)
    for cls in game.classes:
        canon = [x for x in cls.members if is_canonical(game, x)]
        out.say("  class #%d rep=%r canonical members: %s"
                % (cls.index, cls.rep.key,
                   ", ".join(repr(c.key) for c in canon) or "none"))
        out.record(game=args.game, cls=cls.index,
                   canonical_members=len(canon))
    out.check("game %s representable" % args.game, rpr.ok)
    return 0 if rpr.ok or not args.strict else 1


def cmd_collapse(args, out):
    games, strategies, _ = _load(args, out)
    sig = strategies[args.strategy]
    at_dom = _atlas_for(args, sig.dom)
    at_cod = _atlas_for(args, sig.cod)
    rel = collapse(sig, at_dom, at_cod)
    if out.kv:
        for rn, cn, v in rel.records():
            out.record(strategy=args.strategy, row=rn, col=cn, count=v)
    else:
        out.say("collapse of %s:" % args.strategy)
        out.say(rel.table())
    return 0


def cmd_compose(args, out):
    games, strategies, _ = _load(args, out)
    sig = strategies[args.sigma]
    tau = strategies[args.tau]
    comp = compose(sig, tau)
    out.say("composition %s ; %s: %d events"
            % (args.sigma, args.tau, len(comp.inner.events)))
    out.say(comp.inner.describe())
    pairs = pcov_bijection(comp)
    out.check("interaction/composition +-covered bijection",
              True, "%d states" % len(pairs))
    out.record(sigma=args.sigma, tau=args.tau,
               events=len(comp.inner.events),
               configurations=len(comp.configurations))
    return 0


def cmd_check_theorem(args, out):
    games, strategies, _ = _load(args, out)
    sig = strategies[args.sigma]
    tau = strategies[args.tau]
    nd = no_deadlock(sig, tau)
    out.check("no deadlock", nd)
    at_a = _atlas_for(args, sig.dom)
    at_b = _atlas_for(args, sig.cod)
    at_c = _atlas_for(args, tau.cod)
    report = check_theorem(sig, tau, at_a, at_b, at_c, trace_entries="all")
    out.say("collapse of the composition:")
    out.say(report.lhs.table())
    out.say("matrix product of the collapses:")
    out.say(report.rhs.table())
    for (i, k), rows in sorted(report.entry_traces.items()):
        l = report.lhs.entry(i, k)
        if not l and not report.rhs.entry(i, k):
            continue
        out.say("entry (%s, %s) = %s:"
                % (report.lhs.row_names[i], report.lhs.col_names[k], l))
        for r in rows:
            if not (r.int_abc or r.wplus_sig or r.wplus_tau):
                continue
            out.say("  via %-20s int+=%d  ~int+=%d  |Sym|=%d=%dx%d  "
                    "wit+= %dx%d  pairs=%d"
                    % (r.name, r.int_abc, r.swint, r.sym_full, r.sym_neg,
                       r.sym_pos, r.wplus_sig, r.wplus_tau, r.pairs))
            out.record(entry="%d,%d" % (i, k), mid=r.name,
                       int_abc=r.int_abc, swint=r.swint,
                       sym=r.sym_full, wplus_sig=r.wplus_sig,
                       wplus_tau=r.wplus_tau, pairs=r.pairs)
    out.check("collapse composes as matrix product", report.passed,
              "" if report.passed else report.failures[0])
    return 0 if report.passed else 1


def _repro_epilogue(name, out):
    fx = load_fixture(name)
    sig, tau = fx.strategies["sigma"], fx.strategies["tau"]
    A, B, C = fx.games["A"], fx.games["B"], fx.games["C"]
    out.check("%s: strategies validate" % name,
              validate_strategy(sig).ok and validate_strategy(tau).ok)
    out.check("%s: no deadlock" % name, no_deadlock(sig, tau))
    comp = compose(sig, tau)
    at_a, at_b, at_c = atlas(A), atlas(B), atlas(C)
    # the interesting entry: the middle class the witnesses interact on
    expect = (2, 1, 1)
    if name == "epi1":
        cls_a = A.class_of(A.config({0}))
        cls_b = B.class_of(B.config({0, 1, 2}))
        cls_c = C.class_of(C.config({0}))
    else:
        cls_a = A.class_of(A.config({0, 1}))
        # the mediating interface: both argument questions relayed, one
        # outer question answered
        wmid = [x for x in sig.plus_covered if len(x) == 7][0]
        cls_b = B.class_of(sig.proj_cod(wmid))
        cls_c = C.class_of([c for c in C.configurations
                            if len(c) == 2][0])
    mm = check_wit_vs_witplus(sig, tau, at_a, at_b, at_c,
                              cls_a, cls_b, cls_c, composed=comp)
    out.check("%s: class count of the composition is %d" % (name, expect[0]),
              mm.wit_comp == expect[0], "got %d" % mm.wit_comp)
    out.check("%s: class counts of the parts are %d and %d"
              % (name, expect[1], expect[2]),
              (mm.wit_sig, mm.wit_tau) == expect[1:],
              "got %d, %d" % (mm.wit_sig, mm.wit_tau))
    out.check("%s: class counting fails to compose (%d != %d)"
              % (name, mm.wit_comp, mm.wit_sig * mm.wit_tau), mm.mismatch)
    out.check("%s: concrete counting composes (%d == %d)"
              % (name, mm.wplus_comp, mm.wplus_product),
              mm.wplus_comp == mm.wplus_product)
    report = check_theorem(sig, tau, at_a, at_b, at_c, composed=comp)
    out.check("%s: collapse composes as matrix product" % name,
              report.passed)
    return 0 if not out.failed else 1


def _repro_ex1(name, out):
    from itertools import combinations
    table = {"ex1": "A", "ex1b": "B", "ex1c": "C", "ex1skew": "skew"}[name]
    from .fixtures import fix_ex1
    fx = fix_ex1(table)
    sig, tau = fx.strategies["sigma"], fx.strategies["tau"]
    B = fx.games["B"]
    out.check("%s: strategies validate" % name,
              validate_strategy(sig).ok and validate_strategy(tau).ok)
    comp = compose(sig, tau)
    evs = comp.inner.events
    out.check("%s: composition has 4 result events" % name, len(evs) == 4)
    confl = all(comp.inner.in_conflict(a, b)
                for a, b in combinations(evs, 2))
    out.check("%s: results pairwise conflicting" % name, confl)
    nonsym = all(not comp.symmetries(Configuration(comp.inner, {a}),
                                     Configuration(comp.inner, {b}))
                 for a, b in combinations(evs, 2))
    out.check("%s: results pairwise non-symmetric" % name, nonsym)
    # synchronize the matching pair of the report through both symmetries
    t = fx.configs["tables"]
    xS, xT = _ex1_matching_pair(fx)
    xb = sig.proj_cod(xS)
    syms = B.symmetries(FULL, xb, tau.proj_dom(xT))
    out.check("%s: the shared position has 2 symmetries" % name,
              len(syms) == 2)
    results = []
    for th in syms:
        r = weak_bipullback(sig, tau, xS, xT, th)
        st = comp.inter.state_of_pair(r.yS, r.yT)
        results.append(comp.config_of_state(st))
    out.check("%s: synchronizing through the swap gives a different, "
              "non-symmetric result" % name,
              results[0] != results[1]
              and not comp.symmetries(results[0], results[1]))
    return 0 if not out.failed else 1


def _ex1_matching_pair(fx):
    """The matching configuration pair of the replication report: the
    first question answered on the f branch, the recalled question on the
    g branch, against the full run of the second strategy."""
    sig, tau = fx.strategies["sigma"], fx.strategies["tau"]
    t = fx.configs["tables"]
    bound, f, h = t["bound"], t["f"], t["h"]
    hf0 = h[f[0]]
    # inner ids of sigma: questions are 0..bound-1, then per question i the
    # two answers sit at bound + 2i (f) and bound + 2i + 1 (g)
    xS = Configuration(sig.inner,
                       {0, bound, hf0, bound + 2 * hf0 + 1})
    want = sig.proj_cod(xS)
    for xT in tau.plus_covered:
        if tau.proj_dom(xT) == want and len(tau.proj_cod(xT)) == 1:
            return xS, xT
    raise AssertionError("no matching pair in the fixture")


def _repro_repr(out):
    fx = load_fixture("repr")
    sig = fx.strategies["sigma"]
    G = fx.games["G"]
    xb = fx.configs["x_bar_game"]
    xbp = fx.configs["x_bar_prime_game"]
    out.check("repr: strategy validates", validate_strategy(sig).ok)
    out.check("repr: the same-index representative is canonical",
              is_canonical(G, xbp))
    out.check("repr: the split-index representative is not canonical",
              not is_canonical(G, xb))
    n_bar = len(matching_witnesses(sig, xb))
    n_barp = len(matching_witnesses(sig, xbp))
    out.check("repr: 2 witnesses against the non-canonical representative",
              n_bar == 2, "got %d" % n_bar)
    out.check("repr: 1 witness against the canonical representative",
              n_barp == 1, "got %d" % n_barp)
    w = matching_witnesses(sig, xbp)[0]
    n_pos = len(G.symmetries(POSF, sig.image(w), xbp))
    out.check("repr: the unique witness carries 2 positive symmetries",
              n_pos == 2, "got %d" % n_pos)
    return 0 if not out.failed else 1


def _repro_devisme(out):
    fx = load_fixture("devisme")
    game = fx.games["A"]
    fam = check_family_axioms(game)
    out.check("devisme: families satisfy the closure axioms", fam.ok)
    rpr = is_representable(game)
    out.check("devisme: game is not representable", not rpr.ok)
    from .symmetry import factorize, ConfigIso
    x = game.config({0, 1, 2})
    theta = ConfigIso(x, x, {0: 1, 1: 0, 2: 2})
    tneg, mid, tpos = factorize(game, theta)
    out.check("devisme: the swap endosymmetry factors through a different "
              "configuration", mid != x, "middle %r" % (mid.key,))
    return 0 if not out.failed else 1


def _repro_deadlock(out):
    fx = load_fixture("deadlock")
    sig, tau = fx.strategies["sigma"], fx.strategies["tau"]
    out.check("deadlock: strategies validate",
              validate_strategy(sig).ok and validate_strategy(tau).ok)
    out.check("deadlock: the pair deadlocks", not no_deadlock(sig, tau))
    return 0 if not out.failed else 1


def cmd_repro(args, out):
    name = args.name
    if name in ("epi1", "epi2"):
        return _repro_epilogue(name, out)
    if name in ("ex1", "ex1b", "ex1c", "ex1skew"):
        return _repro_ex1(name, out)
    if name == "repr":
        return _repro_repr(out)
    if name == "devisme":
        return _repro_devisme(out)
    if name == "deadlock":
        return _repro_deadlock(out)
    print("unknown fixture %r (have: %s)"
          % (name, ", ".join(sorted(REGISTRY))), file=sys.stderr)
    return 2


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="tcg",
        description="finite thin concurrent games: validation, composition "
                    "and witness counting")
    ap.add_argument("--bound", type=int, default=2,
                    help="copy bound for replications without an explicit "
                         "bound (default 2)")
    ap.add_argument("--cap", type=int, default=4096,
                    help="skip whole-game checks past this many "
                         "configurations")
    ap.add_argument("--strict", action="store_true",
                    help="exit nonzero on any reported failure")
    ap.add_argument("--atlas", default="auto",
                    help="'auto' or a representative override file")
    ap.add_argument("--kv", action="store_true",
                    help="flat key=value records instead of tables")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="run all axiom checks")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--fixture")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("classes", help="symmetry classes of a game")
    p.add_argument("game")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--fixture")
    p.set_defaults(fn=cmd_classes)

    p = sub.add_parser("canonical", help="canonicity/representability report")
    p.add_argument("game")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--fixture")
    p.set_defaults(fn=cmd_canonical)

    p = sub.add_parser("collapse", help="weighted relation of a strategy")
    p.add_argument("strategy")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--fixture")
    p.set_defaults(fn=cmd_collapse)

    p = sub.add_parser("compose", help="compose two strategies")
    p.add_argument("sigma")
    p.add_argument("tau")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--fixture")
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("check-theorem",
                       help="collapse-of-composition against matrix product")
    p.add_argument("sigma")
    p.add_argument("tau")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--fixture")
    p.set_defaults(fn=cmd_check_theorem)

    p = sub.add_parser("repro", help="reproduce a built-in example report")
    p.add_argument("name")
    p.set_defaults(fn=cmd_repro)

    args = ap.parse_args(argv)
    out = Output(kv=args.kv)
    try:
        code = args.fn(args, out)
    except KeyError as exc:
        print("unknown name: %s" % exc, file=sys.stderr)
        return 2
    if out.failed and args.strict:
        return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
