"""Graphviz DOT renderings: Hasse diagrams, p-adic trees, the duality table."""
from __future__ import annotations

from html import escape

from .alexandrov_ro import AlexandrovSpace, FinitePoset
from .errors import UnsupportedKind
from .stone import hat

KINDS = ("hasse", "padic-tree", "duality-dict")


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _fmt(label):
    if isinstance(label, frozenset):
        return "{" + ", ".join(sorted(str(x) for x in label)) + "}"
    return str(label)


def hasse_dot(X) -> str:
    """Covering relation of the poset, bottom to top.

    Points lying in some nonempty regular open other than the whole space
    are filled; the regular opens themselves are listed in the graph label.
    """
    if isinstance(X, FinitePoset):
        X = AlexandrovSpace(X)
    lines = ["digraph hasse {", "  rankdir=BT;"]
    regular = X.regular_opens
    marked = 0
    for U in regular:
        if U not in (0, X.full):
            marked |= U
    lines.append("  label=" + _quote("regular opens: " + " ".join(X.format(U) for U in regular)) + ";")
    for i, name in enumerate(X.labels):
        style = ", style=filled, fillcolor=lightblue" if marked >> i & 1 else ""
        lines.append(f"  n{i} [label={_quote(name)}{style}];")
    for a, b in X.poset.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def padic_tree_dot(p, depth) -> str:
    """Residues mod p^k for k = 0..depth, each joined to its lifts."""
    lines = ["digraph padic_tree {", f"  label={_quote(f'Z_{p} to depth {depth}')};"]
    for k in range(depth + 1):
        for r in range(p ** k):
            lines.append(f"  l{k}_{r} [label={_quote(r if k else '*')}];")
    for k in range(depth):
        q = p ** k
        for r in range(q * p):
            lines.append(f"  l{k}_{r % q} -> l{k + 1}_{r};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def duality_dict_dot(B) -> str:
    """Two-column table: each element a beside the clopen hat(a) of X_B."""
    atom_label = {t: _fmt(B.label(t)) for t in B.atom_basis.atoms}
    rows = []
    for a in B.elements():
        pts = hat(B, a).points()
        right = "{" + ", ".join("U_" + atom_label[U.witness_atom] for U in pts) + "}"
        rows.append(f"<TR><TD>{escape(_fmt(B.label(a)))}</TD><TD>{escape(right)}</TD></TR>")
    body = "".join(rows)
    return ("digraph duality {\n"
            "  node [shape=plaintext];\n"
            f"  table [label=<<TABLE>{body}</TABLE>>];\n"
            "}\n")


def export_dot(obj, kind) -> str:
    if kind == "hasse":
        return hasse_dot(obj)
    if kind == "padic-tree":
        p, depth = obj
        return padic_tree_dot(p, depth)
    if kind == "duality-dict":
        return duality_dict_dot(obj)
    raise UnsupportedKind(f"unknown diagram kind {kind!r}; expected one of {', '.join(KINDS)}")
