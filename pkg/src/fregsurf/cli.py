"""Command line front end.

Every report ends with a `RESULT:` block of sorted key=value lines.  Exit
codes: 0 definitive answer, 1 a self-check failed, 2 Indeterminate or
Undecided, 3 and up for errors (see EXIT_CODES), 64 usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import campana_forms as cf
from .cartier_engine import DegreeOverflow, GradedFormSpace, NotClosed
from .corpus import rdp_star, sfr_corpus
from .finite_field import is_prime, prime_power
from .graph_core import (
    BranchNotChain,
    InvariantViolation,
    NotNegativeDefinite,
    Other,
    Star,
    TwistedStar,
    canonical_degrees,
    center_branches,
    classify_shape,
    different_on_center,
    discrepancies,
    intersection_matrix,
    is_negative_definite,
    lattice_determinant,
)
from .graph_io import ParseError, parse_graph_file, serialize
from .linalg import SingularMatrix
from .p1_fsplit import (
    DegenerateLambda,
    NonStandardCoefficient,
    P1Pair,
    oracle_globally_f_regular,
    oracle_sharply_f_split,
    resolve_sharply_f_split,
    table_globally_f_regular,
    verify_witness,
)
from .rdp_certificates import EmptyFeasible, NotRdpStar, char_bound, derive_inequalities, minimal_central, hand_rows
from .singularity_classify import (
    NotKltShape,
    Outcome,
    PreconditionError,
    TamenessFails,
    is_canonical,
    is_klt,
    is_rdp,
    sfr_verdict,
    tame_decomposition_plan,
)


class UsageError(Exception):
    pass


EXIT_CODES = [
    (ParseError, 3),
    (InvariantViolation, 4),
    (NotKltShape, 5),
    (PreconditionError, 6),
    (TamenessFails, 7),
    (NotRdpStar, 8),
    (EmptyFeasible, 9),
    (DegreeOverflow, 10),
    (NotClosed, 10),
    (cf.EnumerationTooLarge, 11),
    (DegenerateLambda, 12),
    (NonStandardCoefficient, 13),
    (NotNegativeDefinite, 14),
    (SingularMatrix, 14),
    (BranchNotChain, 15),
    (UsageError, 64),
]


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (list, tuple)):
        return ",".join(_fmt(y) for y in x)
    if x is None:
        return "none"
    return str(x)


class Report:
    def __init__(self):
        self.lines = []
        self.result = {}

    def say(self, text=""):
        self.lines.append(text)

    def set(self, **kv):
        self.result.update(kv)

    def render(self, fmt: str) -> str:
        block = ["RESULT:"] + [f"{k}={_fmt(self.result[k])}" for k in sorted(self.result)]
        if fmt == "kv":
            return "\n".join(block) + "\n"
        return "\n".join(self.lines + [""] + block) + "\n"


def _ints(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from None


def _fracs(text: str) -> list:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a comma separated list of rationals, got {text!r}") from None


def _prime(p: int) -> int:
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return p


def _read_graph(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph_file(text)


# -- subcommands ------------------------------------------------------------------------------


def cmd_classify(args, rep: Report) -> int:
    g = _read_graph(args.graph)
    shape = classify_shape(g)
    mat = intersection_matrix(g)
    nd = is_negative_definite(mat)
    rep.say(f"vertices: {' '.join(g.ids)}")
    rep.say(f"shape: {shape.label()}")
    rep.say(f"negative definite: {_fmt(nd)}")
    res = dict(shape=shape.label(), kind=getattr(shape, "kind", "other"), negative_definite=nd, n_vertices=len(g))
    if nd:
        det = lattice_determinant(mat)
        rep.say(f"lattice determinant: {det}")
        res.update(determinant=det, klt=is_klt(g), canonical=is_canonical(g), rdp=is_rdp(g))
        rep.say(f"klt: {_fmt(res['klt'])}  canonical: {_fmt(res['canonical'])}  rdp: {_fmt(res['rdp'])}")
    if isinstance(shape, (Star, TwistedStar)):
        res["type"] = shape.type
        res["center"] = shape.center
        diff = different_on_center(g, shape.center)
        res["different"] = diff
        rep.say(f"type {shape.type}, center {shape.center}, different on the center {_fmt(diff)}")
        for b in center_branches(g, shape.center):
            rep.say(f"  branch {' '.join(b.ids)}: determinant {b.determinant}, point degree {b.point_degree}")
    if isinstance(shape, Other):
        rep.say(f"not a listed shape: {shape.reason}")
    rep.set(**res)
    if args.plot:
        from .plotting import plot_dual_graph

        plot_dual_graph(g, args.plot, shape.label())
        rep.say(f"plot written to {args.plot}")
    return 0


def cmd_discrepancies(args, rep: Report) -> int:
    g = _read_graph(args.graph)
    a = discrepancies(g)
    k = canonical_degrees(g)
    rep.say("vertex  K.E  discrepancy")
    for vid, kd, ad in zip(g.ids, k, a):
        rep.say(f"{vid:>6}  {kd:>3}  {ad}")
        rep.set(**{f"a.{vid}": ad, f"KE.{vid}": kd})
    rep.set(min_discrepancy=min(a), klt=all(x > -1 for x in a), canonical=all(x >= 0 for x in a))
    if args.plot:
        from .plotting import plot_dual_graph

        plot_dual_graph(g, args.plot, "discrepancies")
    return 0


def _primes_arg(args) -> list:
    if args.p_sweep:
        return [_prime(p) for p in _ints(args.p_sweep)]
    if args.p is None:
        raise UsageError("give --p or --p-sweep")
    return [_prime(args.p)]


def cmd_sfr(args, rep: Report) -> int:
    g = _read_graph(args.graph)
    primes = _primes_arg(args)
    outcomes = []
    for p in primes:
        v = sfr_verdict(g, p, assume_reduced=args.assume_reduced)
        outcomes.append(v.outcome.value)
        rep.say(f"p={p}: {v.outcome.value}")
        for key in sorted(v.conditions_checked):
            rep.say(f"  {key}: {v.conditions_checked[key]}")
        for r in v.reasons:
            rep.say(f"  reason: {r}")
        reasons = [str(r) for r in v.reasons]
        if len(primes) == 1:
            rep.set(outcome=v.outcome.value, p=p, reasons=reasons or None, shape=v.shape.label())
            rep.set(**{f"checked.{k}": x for k, x in v.conditions_checked.items()})
        else:
            rep.set(**{f"outcome.p{p}": v.outcome.value, f"reasons.p{p}": reasons or None})
            rep.set(shape=v.shape.label())
    if args.plot:
        from .plotting import plot_sfr_grid

        plot_sfr_grid([(classify_shape(g).label(), outcomes)], primes, args.plot)
    return 2 if Outcome.INDETERMINATE.value in outcomes else 0


def cmd_tame_plan(args, rep: Report) -> int:
    g = _read_graph(args.graph)
    plan = tame_decomposition_plan(g, _prime(args.p))
    for k, st in enumerate(plan.steps, start=1):
        rep.say(f"step {k}: contract {' '.join(st.contracted)}")
        rep.say(f"  index bound {st.index_bound}")
        if st.different:
            rep.say(f"  different on the center {_fmt(st.different)}")
        for v in sorted(st.nefness, key=lambda x: g.index(x)):
            rep.say(f"  (K+B).{v} = {st.nefness[v]}")
        rep.set(**{
            f"step{k}.contracted": st.contracted,
            f"step{k}.index_bound": st.index_bound,
            f"step{k}.max_nefness": max(st.nefness.values()),
        })
    rep.set(p=plan.p, steps=len(plan.steps), final_index_bound=plan.final_index_bound(), tame=True)
    if args.plot:
        from .plotting import plot_dual_graph

        plot_dual_graph(g, args.plot, f"tame plan at p={plan.p}")
    return 0


def _field_degree(p: int, q: int | None) -> int:
    if q is None:
        return 1
    try:
        pp = prime_power(q)
    except ValueError:
        pp = None
    if pp is None or pp[0] != p:
        raise UsageError(f"--q {q} is not a power of p={p}")
    return pp[1]


def cmd_p1split(args, rep: Report) -> int:
    p = _prime(args.p)
    s = _field_degree(p, args.q)
    if args.lam is not None:
        pair = P1Pair.four_point(p, args.lam % (p ** s) if s == 1 else args.lam, s)
    else:
        weights = _ints(args.weights)
        if any(d < 1 for d in weights):
            raise UsageError("weights must be positive")
        pair = P1Pair.from_weights(p, weights, s=None if args.q is None else s)
    pts = ", ".join(f"{pt.coefficient}@{'inf' if pt.location is None else pt.location}" for pt in pair.points)
    rep.say(f"pair on P^1 over F_{pair.q}: {pts}")
    if args.regular:
        table = table_globally_f_regular(pair.standard_weights(), p)
        rep.say(f"table (globally F-regular): {'Yes' if table else 'No'}")
        rep.set(table="Yes" if table else "No", question="globally-F-regular")
        outcome = "Yes" if table else "No"
        if args.oracle:
            res = oracle_globally_f_regular(pair, args.emax)
            outcome = res.verdict
            rep.say(f"oracle (e <= {args.emax}): {res.verdict}")
            rep.set(oracle=res.verdict, agree=res.verdict == ("Yes" if table else "No"))
            _witness(rep, res)
    else:
        ok, ans = resolve_sharply_f_split(pair)
        rep.say(f"table (globally sharply F-split): {ans.verdict}" + (f" [{ans.case}]" if ans.case else ""))
        if ans.lam is not None:
            rep.say(f"  normalized lambda {ans.lam}; Hasse-type test gives {'Yes' if ok else 'No'}")
            rep.set(**{"lambda": ans.lam})
        table = "Yes" if ok else "No"
        rep.set(table=table, question="globally-sharply-F-split")
        outcome = table
        if args.oracle:
            res = oracle_sharply_f_split(pair, args.emax)
            outcome = res.verdict
            rep.say(f"oracle (e <= {args.emax}): {res.verdict}")
            rep.set(oracle=res.verdict, agree=res.verdict == table)
            _witness(rep, res)
            if res.witness is not None:
                rep.set(witness_verified=verify_witness(pair, res.witness))
    rep.set(outcome=outcome, p=p, q=pair.q)
    return 2 if outcome == "Undecided" else 0


def _witness(rep, res):
    if res.witness is not None:
        w = res.witness
        rep.say(f"  witness: e={w.e}, window index j={w.j}, coefficient {w.coefficient}")
        rep.set(witness=(w.e, w.j, w.coefficient))


def cmd_cartier(args, rep: Report) -> int:
    p = _prime(args.p)
    s = _field_degree(p, args.q)
    if args.vars < 1 or args.degmax < 0 or args.levels < 1:
        raise UsageError("need --vars >= 1, --degmax >= 0, --levels >= 1")
    space = GradedFormSpace(p, args.vars, args.degmax, s)
    i_max = args.vars if args.i is None else args.i
    report = space.verify_sequences(i_max, args.degmax, args.levels)
    rows = [r for r in report.table if args.i is None or r[0] == args.i]
    rep.say(f"F_{space.F.q}[x_1..x_{args.vars}], degrees <= {args.degmax}, levels <= {args.levels}")
    rep.say("   i    m  n  dimOmega  dimZ  dimB  dimZn  dimBn")
    for r in rows:
        rep.say("{:>4} {:>4} {:>2} {:>9} {:>5} {:>5} {:>6} {:>6}".format(*r))
    rep.say("identity checks:")
    for name in sorted(report.checks):
        count, fails, where = report.checks[name]
        rep.say(f"  {name}: {count - fails}/{count}" + (f" failing at {where[:5]}" if fails else ""))
    rep.set(
        p=p, q=space.F.q, vars=args.vars, degmax=args.degmax, levels=args.levels,
        checks=sum(c[0] for c in report.checks.values()), failures=report.failures(), ok=report.ok,
    )
    if args.plot:
        from .plotting import plot_cartier_dims

        plot_cartier_dims(report.table, args.plot, args.i)
    return 0 if report.ok else 1


def cmd_campana(args, rep: Report) -> int:
    coeffs = _fracs(args.coeffs) if args.coeffs else []
    model = cf.CampanaLocalModel(args.n, tuple(coeffs), args.i, args.m, args.split)
    rank, dens = cf.rank_sym_c(model)
    where = ", ".join(f"x_{s}" for s in model.boundary_coordinates) or "nothing"
    rep.say(f"N={model.N}, split M={model.split}, boundary on {where} with coefficients {_fmt(model.coeffs) or '-'}")
    rep.say(f"rank of the m={model.m} symmetric power of C-differential {model.i}-forms: {rank}")
    rep.say(f"rank with log poles only: {cf.log_rank(model.i, model.m, model.N)}")
    rep.say("denominator exponents:")
    for A, ex in dens:
        rep.say(f"  {' '.join(''.join(map(str, a)) + ('^' + str(k) if k > 1 else '') for a, k in A)}: {_fmt(ex)}")
    cells = fails = 0
    checked = bad = 0
    for level in range(model.i + 1):
        for l in range(model.m + 1):
            cell = cf.filtration_dims(model, level, l)
            cells += 1
            if not cell.identity_holds:
                fails += 1
                rep.say(f"  filtration identity fails at level {level}, l={l}: {cell}")
            c, ok, _ = cf.denominator_bounds(model, level, l)
            checked += c
            bad += not ok
    top = len(cf.lambda_set(model.i, model.m, model.N, model.split, 0, 0))
    rep.say(f"filtration identity: {cells - fails}/{cells} cells; floor bracket: {'ok' if not bad else 'FAIL'}")
    rep.set(
        rank=rank, log_rank=cf.log_rank(model.i, model.m, model.N), cells=cells, cell_failures=fails,
        bracket_ok=not bad, lambda00=top, N=model.N, split=model.split, i=model.i, m=model.m,
    )
    return 0 if not fails and not bad else 1


def cmd_rdpcert(args, rep: Report) -> int:
    t = tuple(sorted(_ints(args.type)))
    if len(t) != 3:
        raise UsageError("--type needs three branch determinants")
    g = rdp_star(t)
    full = derive_inequalities(g, args.box)
    system = full.restrict_rows(hand_rows(t)) if args.rows == "hand" else full
    rep.say(f"star of (-2)-curves of type {t}; rows: {args.rows}; box 1..{args.box}")
    for q in system.inequalities:
        rep.say(f"  [{q.row}] {q}")
    res = minimal_central(system)
    prof = sorted(res.profiles[res.min_a])
    rep.say(f"minimal central coefficient a = {res.min_a} ({len(res.minimizers)} minimizers)")
    rep.say("profiles (a, d1, l1, r1) at the minimum: " + "; ".join(map(str, prof)))
    primes = [_prime(p) for p in _ints(args.p_sweep)]
    shape = classify_shape(g)
    cb = char_bound(t, different_on_center(g, shape.center), primes, res.min_a)
    for c in cb.checks:
        rep.say(f"  p={c.p}: {'excluded' if c.excluded else 'allowed'} via {c.route} ({c.evidence})")
    rep.set(
        type=t, rows=args.rows, box=args.box, min_a=res.min_a, minimizers=len(res.minimizers),
        profiles=";".join(",".join(map(str, x)) for x in prof), excluded=cb.excluded or None,
        smallest_allowed_p=cb.smallest_allowed,
    )
    return 0


def cmd_corpus(args, rep: Report) -> int:
    primes = [_prime(p) for p in _ints(args.p_sweep)]
    entries = sfr_corpus(args.seed, args.per_family)
    rows = []
    counts = {}
    for e in entries:
        outs = [sfr_verdict(e.graph, p).outcome.value for p in primes]
        rows.append((e.name, outs))
        rep.say(f"{e.name:<24} {classify_shape(e.graph).label():<28} " + " ".join(o[:3] for o in outs))
        for o in outs:
            counts[o] = counts.get(o, 0) + 1
        if args.dump:
            import os

            os.makedirs(args.dump, exist_ok=True)
            with open(os.path.join(args.dump, f"{e.name}.graph".replace(" ", "").replace(",", "_")), "w") as fh:
                fh.write(serialize(e.graph))
    rep.set(seed=args.seed, entries=len(entries), primes=primes, **{f"count.{k}": v for k, v in counts.items()})
    if args.plot:
        from .plotting import plot_sfr_grid

        plot_sfr_grid(rows, primes, args.plot)
    return 0


# -- parser -----------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["kv", "text"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--plot", metavar="PATH", help="write a matplotlib figure to PATH")

    parser = _Parser(prog="fregsurf", description="F-regularity and Cartier-operator computations for surfaces")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, h in [("classify", cmd_classify, "shape, determinant and klt status"),
                        ("discrepancies", cmd_discrepancies, "K.E and discrepancies")]:
        add(name, fn, h).add_argument("graph", help="graph file, or - for stdin")

    sp = add("sfr", cmd_sfr, "strong F-regularity verdict")
    sp.add_argument("graph")
    sp.add_argument("--p", type=int)
    sp.add_argument("--p-sweep", help="comma separated primes")
    sp.add_argument("--assume-reduced", action="store_true")

    sp = add("tame-plan", cmd_tame_plan, "two-step tame contraction plan")
    sp.add_argument("graph")
    sp.add_argument("--p", type=int, required=True)

    sp = add("p1split", cmd_p1split, "F-splitting of pairs on P^1")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--weights", default="2,2,2,2")
    sp.add_argument("--lambda", dest="lam", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--emax", type=int, default=3)
    sp.add_argument("--regular", action="store_true", help="ask for global F-regularity instead")

    sp = add("cartier", cmd_cartier, "Cartier operator exactness checks")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int)
    sp.add_argument("--vars", type=int, required=True)
    sp.add_argument("--degmax", type=int, required=True)
    sp.add_argument("--levels", type=int, default=1)
    sp.add_argument("--i", type=int)

    sp = add("campana", cmd_campana, "C-differential ranks and filtrations")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--split", type=int, default=0)
    sp.add_argument("--coeffs", default="")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("rdpcert", cmd_rdpcert, "central coefficient certificates for RDP stars")
    sp.add_argument("--type", required=True)
    sp.add_argument("--box", type=int, default=8)
    sp.add_argument("--p-sweep", default="2,3,5,7")
    sp.add_argument("--rows", choices=["full", "hand"], default="full")

    sp = add("corpus", cmd_corpus, "seeded corpus with verdicts over primes")
    sp.add_argument("--p-sweep", default="2,3,5,7,11,13")
    sp.add_argument("--per-family", type=int, default=3)
    sp.add_argument("--dump", metavar="DIR", help="write each graph to DIR")
    return parser


def run(argv) -> tuple:
    """Parse argv and dispatch; returns (exit code, output text)."""
    rep = Report()
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        code = args.fn(args, rep)
    except tuple(cls for cls, _ in EXIT_CODES) as exc:
        code = next(c for cls, c in EXIT_CODES if isinstance(exc, cls))
        rep.lines = [f"error: {exc}"]
        rep.result = {"error": type(exc).__name__, "exit": code}
        if isinstance(exc, ParseError):
            rep.result["line"] = exc.line
        return code, rep.render(fmt)
    except ValueError as exc:
        rep.lines = [f"error: {exc}"]
        rep.result = {"error": type(exc).__name__, "exit": 16}
        return 16, rep.render(fmt)
    return code, rep.render(fmt)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(argv)  # prints help and exits 0
    code, text = run(argv)
    stream = sys.stderr if code >= 3 else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
