"""Command-line front end.

    stonekit algebra validate|atoms|ultrafilters|granules
    stonekit stone dualize|eta|phi|lift
    stonekit padic add|mul|neg|digits|tree
    stonekit zhat embed
    stonekit clopen op|granule
    stonekit ro analyze|ed-check
    stonekit laws run

Exit status: 0 on success, 1 on a domain error (its class name goes to
stderr), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import alexandrov_ro as ro
from . import jsonio
from .bool_core import MAX_SIZE, PowersetAlgebra, idempotent_algebra, powerset_algebra, subalgebra_generated
from .clopen_zp import (
    clopen_complement,
    clopen_intersection,
    clopen_union,
    granule_operator,
    level_algebra,
)
from .dot import duality_dict_dot, hasse_dot, padic_tree_dot
from .errors import MalformedInput, StoneError
from .filters import enumerate_ultrafilters
from .laws import LAWS, run_laws
from .profinite import (
    cantor_digits,
    digits_to_padic,
    moduli_closure,
    padic_add,
    padic_from_int,
    padic_mul,
    padic_neg,
    zhat_from_int,
)
from .stone import ContinuousMapFin, FiniteSpace, dual_map, eta, gleason_lift, phi, stone_space


def render(label):
    """Element labels as JSON-friendly strings (sets become sorted lists)."""
    if isinstance(label, frozenset):
        return sorted((str(x) for x in label), key=lambda s: (len(s), s))
    return str(label)


def _text_set(label):
    if isinstance(label, frozenset):
        return "{" + ", ".join(render(label)) + "}"
    return str(label)


class Output:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, doc, text=None, dot=None):
        if self.fmt == "json":
            self.stream.write(jsonio.dumps(doc) + "\n")
        elif self.fmt == "dot":
            if dot is None:
                raise MalformedInput("this command has no DOT rendering")
            self.stream.write(dot)
        else:
            self.stream.write((text if text is not None else jsonio.dumps(doc)) + "\n")


# -- input helpers ---------------------------------------------------------

def _algebra(args):
    if args.powerset is not None:
        if args.powerset > 62 or 1 << args.powerset > args.max_size:
            raise jsonio.SizeLimit(f"2^{args.powerset} elements exceeds the limit of {args.max_size}")
        return powerset_algebra(args.powerset)
    if args.idempotents is not None:
        return idempotent_algebra(args.idempotents)
    if args.algebra is not None:
        return jsonio.load_algebra(args.algebra, args.max_size)
    raise MalformedInput("give --algebra, --powerset or --idempotents")


def _element(B, item):
    if isinstance(item, int):
        if not 0 <= item < B.size:
            raise MalformedInput(f"element {item} out of range")
        return item
    if isinstance(B, PowersetAlgebra):
        names = {str(p): i for i, p in enumerate(B.points)}
        try:
            return sum(1 << names[str(x)] for x in item)
        except KeyError as exc:
            raise MalformedInput(f"unknown point {exc}") from None
    raise MalformedInput("set-valued elements need a powerset algebra")


def _ints(text):
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise MalformedInput(f"expected comma-separated integers, got {text!r}") from None


def _point_name(B, U):
    return "U_" + _text_set(B.label(U.witness_atom))


# -- commands --------------------------------------------------------------

def cmd_algebra(args, out):
    B = _algebra(args)
    basis = B.atom_basis
    if args.action == "validate":
        doc = {"valid": True, "size": B.size, "atoms": len(basis.atoms), "algebra": jsonio.algebra_to_json(B)}
        out.emit(doc, f"valid Boolean algebra: {B.size} elements, {len(basis.atoms)} atoms",
                 dot=duality_dict_dot(B))
    elif args.action == "atoms":
        labels = [B.label(t) for t in basis.atoms]
        out.emit({"atoms": [render(x) for x in labels]}, "\n".join(_text_set(x) for x in labels))
    elif args.action == "ultrafilters":
        ufs = enumerate_ultrafilters(B)
        doc = {"ultrafilters": [{"witness_atom": U.witness_atom, "atom": render(B.label(U.witness_atom)),
                                 "members": U.elements()} for U in ufs]}
        text = "\n".join(f"{_point_name(B, U)}: {len(U)} members" for U in ufs)
        out.emit(doc, text)
    elif args.action == "granules":
        try:
            gens = json.loads(args.gens)
        except json.JSONDecodeError:
            raise MalformedInput("--gens must be a JSON list") from None
        if not isinstance(gens, list):
            raise MalformedInput("--gens must be a JSON list")
        sub, granules = subalgebra_generated(B, [_element(B, g) for g in gens])
        labels = [B.label(g) for g in granules]
        out.emit({"granules": [render(x) for x in labels], "subalgebra_size": sub.size},
                 "\n".join(_text_set(x) for x in labels))


def cmd_stone(args, out):
    if args.action == "eta":
        B = _algebra(args)
        e = eta(B)
        X = stone_space(B)
        rows = []
        for a in B.elements():
            pts = [_point_name(B, X.points[i]) for i in range(len(X.points)) if e.table[a] >> i & 1]
            rows.append({"element": render(B.label(a)), "hat": pts})
        text = "\n".join(f"{_text_set(B.label(a))} -> {{{', '.join(r['hat'])}}}" for a, r in enumerate(rows))
        out.emit({"eta": rows}, text, dot=duality_dict_dot(B))
    elif args.action == "dualize":
        h = jsonio.load_hom(args.hom, args.max_size)
        f = dual_map(h)
        src = [_point_name(h.target, U) for U in f.source.points]
        tgt = [_point_name(h.source, U) for U in f.target.points]
        named = ContinuousMapFin(FiniteSpace(src), FiniteSpace(tgt), f.assignment)
        out.emit(jsonio.map_to_json(named), "\n".join(f"{src[i]} -> {tgt[j]}" for i, j in enumerate(f.assignment)))
    elif args.action == "phi":
        X = jsonio.load_space(args.space) if args.space else FiniteSpace(range(1, args.points + 1))
        f = phi(X)
        C = f.target.algebra
        names = [_point_name(C, U) for U in f.target.points]
        doc = jsonio.map_to_json(ContinuousMapFin(X, FiniteSpace(names), f.assignment))
        doc["bijective"] = f.is_bijective()
        text = "\n".join(f"{x} -> {names[j]}" for x, j in zip(X.points, f.assignment))
        out.emit(doc, text)
    elif args.action == "lift":
        f = jsonio.load_map(args.f)
        g = jsonio.load_map(args.g, tgt=f.target)
        h = gleason_lift(f, g)
        out.emit(jsonio.map_to_json(h),
                 "\n".join(f"{p} -> {h.target.points[x]}" for p, x in zip(h.source.points, h.assignment)))


def cmd_padic(args, out):
    if args.action == "tree":
        text = padic_tree_dot(args.p, args.depth)
        levels = [args.p ** k for k in range(args.depth + 1)]
        out.emit({"p": args.p, "depth": args.depth, "nodes": sum(levels), "edges": sum(levels) - 1},
                 text.rstrip("\n"), dot=text)
        return
    if args.action == "digits":
        if args.bits is not None:
            x = digits_to_padic([int(c) for c in args.bits])
            out.emit(jsonio.padic_to_json(x), " ".join(str(r) for r in x.residues))
        else:
            x = padic_from_int(args.p, args.x, args.n)
            bits = cantor_digits(x)
            out.emit({"digits": list(bits)}, "".join(str(b) for b in bits))
        return
    x = padic_from_int(args.p, args.x, args.n)
    if args.action == "neg":
        r = padic_neg(x)
    else:
        y = padic_from_int(args.p, args.y, args.m if args.m is not None else args.n)
        r = padic_add(x, y) if args.action == "add" else padic_mul(x, y)
    out.emit(jsonio.padic_to_json(r), "residues: " + " ".join(str(v) for v in r.residues))


def cmd_zhat(args, out):
    moduli = _ints(args.moduli)
    if args.close:
        moduli = moduli_closure(moduli)
    e = zhat_from_int(args.z, moduli)
    out.emit(jsonio.zhat_to_json(e), "\n".join(f"{args.z} mod {n} = {r}" for n, r in zip(e.moduli, e.residues)))


def cmd_clopen(args, out):
    a = jsonio.load_clopen(args.a if args.action == "op" else args.clopen)
    if args.action == "op":
        if args.op == "complement":
            r = clopen_complement(a)
        else:
            if args.b is None:
                raise MalformedInput(f"--op {args.op} needs --b")
            b = jsonio.load_clopen(args.b)
            r = clopen_union(a, b) if args.op == "union" else clopen_intersection(a, b)
    else:
        r = granule_operator(level_algebra(a.p, args.level), a)
    out.emit(jsonio.clopen_to_json(r), str(r))


def cmd_ro(args, out):
    X = jsonio.load_poset(args.poset, min(args.max_size, ro.MAX_POINTS))
    ed, witness = ro.is_ED(X)
    if args.action == "ed-check":
        doc = {"ed": ed, "witness": None if ed else [str(p) for p in X.points_of(witness)]}
        out.emit(doc, "ED" if ed else f"not ED; witness open {X.format(witness)}", dot=hasse_dot(X))
        return
    B, table = ro.ro_algebra(X)
    clop_sets = X.clopen_sets
    doc = {
        "opens": [[str(p) for p in X.points_of(U)] for U in X.opens],
        "regular_opens": [[str(p) for p in X.points_of(U)] for U in table],
        "clopens": [[str(p) for p in X.points_of(U)] for U in clop_sets],
        "ro_atoms": len(B.atom_basis.atoms),
        "ed": ed,
        "ro_equals_clop": tuple(table) == tuple(clop_sets),
    }
    text = "\n".join([
        "regular opens: " + " ".join(X.format(U) for U in table),
        "clopens: " + " ".join(X.format(U) for U in clop_sets),
        f"RO(X) has {B.size} elements, {doc['ro_atoms']} atoms",
        "ED" if ed else f"not ED; witness open {X.format(witness)}",
    ])
    out.emit(doc, text, dot=hasse_dot(X))


def cmd_laws(args, out):
    names = None if not args.only else set(args.only.split(","))
    results = run_laws(args.seed, names, jobs=args.jobs)
    doc = {"passed": all(r.ok for r in results),
           "laws": [{"name": r.name, "statement": r.statement, "ok": r.ok, "detail": r.detail}
                    for r in results]}
    text = "\n".join(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<22} {r.statement}  [{r.detail}; {r.seconds:.1f}s]"
                     for r in results)
    out.emit(doc, text)
    return 0 if doc["passed"] else 1


# -- parser ----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-size", type=int, default=MAX_SIZE)

    algebra_in = argparse.ArgumentParser(add_help=False)
    src = algebra_in.add_mutually_exclusive_group()
    src.add_argument("--algebra", help="JSON file or inline JSON")
    src.add_argument("--powerset", type=int, metavar="K")
    src.add_argument("--idempotents", type=int, metavar="N")

    parser = argparse.ArgumentParser(prog="stonekit", description="Finite Stone duality toolkit")
    groups = parser.add_subparsers(dest="group", required=True)

    def group(name, actions, parents=(), **extra):
        g = groups.add_parser(name)
        sub = g.add_subparsers(dest="action", required=True)
        made = {}
        for action in actions:
            made[action] = sub.add_parser(action, parents=[common, *parents, *extra.get(action, ())])
        return made

    alg = group("algebra", ("validate", "atoms", "ultrafilters", "granules"), parents=[algebra_in])
    alg["granules"].add_argument("--gens", default="[]", help="JSON list of indices or point sets")

    st = group("stone", ("dualize", "eta", "phi", "lift"), eta=[algebra_in])
    st["dualize"].add_argument("--hom", required=True)
    st["phi"].add_argument("--space")
    st["phi"].add_argument("--points", type=int, default=1)
    st["lift"].add_argument("--f", required=True)
    st["lift"].add_argument("--g", required=True)

    pa = group("padic", ("add", "mul", "neg", "digits", "tree"))
    for action in ("add", "mul", "neg", "digits"):
        pa[action].add_argument("--p", type=int, default=2)
        pa[action].add_argument("--n", type=int, default=8)
        pa[action].add_argument("--x", type=int, default=0)
    for action in ("add", "mul"):
        pa[action].add_argument("--y", type=int, required=True)
        pa[action].add_argument("--m", type=int, help="precision of y (default: --n)")
    pa["digits"].add_argument("--bits", help="digit string a_0 a_1 ... to decode")
    pa["tree"].add_argument("--p", type=int, required=True)
    pa["tree"].add_argument("--depth", type=int, required=True)

    zh = group("zhat", ("embed",))
    zh["embed"].add_argument("--z", type=int, required=True)
    zh["embed"].add_argument("--moduli", required=True)
    zh["embed"].add_argument("--close", action="store_true", help="add all divisors first")

    cl = group("clopen", ("op", "granule"))
    cl["op"].add_argument("--op", choices=("union", "intersection", "complement"), required=True)
    cl["op"].add_argument("--a", required=True)
    cl["op"].add_argument("--b")
    cl["granule"].add_argument("--clopen", required=True)
    cl["granule"].add_argument("--level", type=int, required=True)

    r = group("ro", ("analyze", "ed-check"))
    for action in r.values():
        action.add_argument("--poset", required=True)

    lw = group("laws", ("run",))
    lw["run"].add_argument("--only", help="comma-separated law names: " + ", ".join(n for n, _, _ in LAWS))
    lw["run"].add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {
    "algebra": cmd_algebra,
    "stone": cmd_stone,
    "padic": cmd_padic,
    "zhat": cmd_zhat,
    "clopen": cmd_clopen,
    "ro": cmd_ro,
    "laws": cmd_laws,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        old_err, sys.stderr = sys.stderr, stderr
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old_err
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = COMMANDS[args.group](args, Output(args.format, stdout))
    except StoneError as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    return code or 0


def main():
    sys.exit(run())
