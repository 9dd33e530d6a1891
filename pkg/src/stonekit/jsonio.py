"""JSON loaders and canonical dumpers for every object the CLI exchanges.

``dumps`` sorts keys, so emitted documents are byte-stable and
``load_x(json.loads(dumps(to_json(x)))) == x`` on canonical forms.
"""
from __future__ import annotations

import json
from pathlib import Path

from .alexandrov_ro import AlexandrovSpace, FinitePoset
from .bool_core import MAX_SIZE, BoolHom, PowersetAlgebra, powerset_algebra, validate_algebra
from .clopen_zp import ZpClopen
from .errors import MalformedInput, SizeLimit
from .filters import Filter, Ultrafilter, is_filter, is_ultrafilter
from .profinite import PadicInt, ZhatElement, zhat_compatible
from .stone import ContinuousMapFin, FiniteSpace


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True)


def read_doc(source):
    """A dict, an inline JSON string, or a path to a JSON file."""
    if isinstance(source, dict):
        return source
    text = str(source)
    if not text.lstrip().startswith(("{", "[")):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise MalformedInput(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def _field(doc, key):
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise MalformedInput(f"missing field {key!r}") from None


def label_to_json(x):
    if isinstance(x, frozenset):
        return sorted((label_to_json(v) for v in x), key=lambda v: (str(type(v)), v))
    return x


def _label_from_json(x):
    return frozenset(x) if isinstance(x, list) else x


# -- algebras --------------------------------------------------------------

def algebra_to_json(B):
    if isinstance(B, PowersetAlgebra):
        doc = {"powerset_of": len(B.points)}
        if B.points != tuple(range(1, len(B.points) + 1)):
            doc["points"] = list(B.points)
        return doc
    doc = {
        "size": B.size,
        "zero": B.zero,
        "one": B.one,
        "meet": B.meet_table.tolist(),
        "join": B.join_table.tolist(),
        "neg": B.neg_table.tolist(),
    }
    if B.labels is not None:
        doc["labels"] = [label_to_json(x) for x in B.labels]
    return doc


def load_algebra(source, max_size=MAX_SIZE):
    doc = read_doc(source)
    if "powerset_of" in doc:
        k = doc["powerset_of"]
        if not isinstance(k, int) or k < 0:
            raise MalformedInput("powerset_of must be a non-negative integer")
        if k > 62 or (1 << k) > max_size:
            raise SizeLimit(f"2^{k} elements exceeds the limit of {max_size}")
        points = doc.get("points", k)
        if not isinstance(points, int) and len(points) != k:
            raise MalformedInput("points must list powerset_of labels")
        return powerset_algebra(points)
    size = _field(doc, "size")
    labels = doc.get("labels")
    B = validate_algebra(
        _field(doc, "meet"), _field(doc, "join"), _field(doc, "neg"),
        _field(doc, "zero"), _field(doc, "one"),
        labels=None if labels is None else [_label_from_json(x) for x in labels],
        max_size=max_size,
    )
    if B.size != size:
        raise MalformedInput(f"size {size} does not match the tables ({B.size})")
    return B


def hom_to_json(h: BoolHom):
    return {"source": algebra_to_json(h.source), "target": algebra_to_json(h.target),
            "map": list(h.table)}


def load_hom(source, max_size=MAX_SIZE) -> BoolHom:
    doc = read_doc(source)
    return BoolHom(load_algebra(_field(doc, "source"), max_size),
                   load_algebra(_field(doc, "target"), max_size), _field(doc, "map"))


# -- filters ---------------------------------------------------------------

def filter_to_json(F):
    doc = {"algebra": algebra_to_json(F.algebra), "members": F.elements()}
    if isinstance(F, Ultrafilter):
        doc["witness_atom"] = F.witness_atom
    return doc


def load_filter(source, max_size=MAX_SIZE):
    doc = read_doc(source)
    B = load_algebra(_field(doc, "algebra"), max_size)
    members = 0
    for a in _field(doc, "members"):
        if not 0 <= a < B.size:
            raise MalformedInput(f"member {a} out of range")
        members |= 1 << a
    if not is_filter(B, members):
        raise MalformedInput("members do not form a filter")
    if "witness_atom" not in doc:
        return Filter(B, members)
    U = Ultrafilter(B, members, doc["witness_atom"])
    if not is_ultrafilter(U) or U.minimum != U.witness_atom:
        raise MalformedInput("not an ultrafilter at the given atom")
    return U


# -- spaces and maps -------------------------------------------------------

def space_to_json(X):
    return {"points": [label_to_json(p) for p in X.points]}


def load_space(source) -> FiniteSpace:
    doc = read_doc(source)
    points = _field(doc, "points")
    if isinstance(points, int):
        points = list(range(1, points + 1))
    return FiniteSpace([_label_from_json(p) for p in points])


def map_to_json(f: ContinuousMapFin):
    return {"source": space_to_json(f.source), "target": space_to_json(f.target),
            "assignment": list(f.assignment)}


def load_map(source, src=None, tgt=None) -> ContinuousMapFin:
    doc = read_doc(source)
    src = load_space(doc["source"]) if "source" in doc else src
    tgt = load_space(doc["target"]) if "target" in doc else tgt
    assignment = _field(doc, "assignment")
    if src is None:
        src = FiniteSpace(range(len(assignment)))
    if tgt is None:
        tgt = FiniteSpace(range(max(assignment, default=-1) + 1))
    return ContinuousMapFin(src, tgt, assignment)


# -- p-adics, Z-hat, clopens -----------------------------------------------

def padic_to_json(x: PadicInt):
    return {"p": x.p, "precision": x.precision, "residues": list(x.residues)}


def load_padic(source) -> PadicInt:
    doc = read_doc(source)
    return PadicInt(_field(doc, "p"), _field(doc, "precision"), _field(doc, "residues"))


def zhat_to_json(e: ZhatElement):
    return {"moduli": list(e.moduli), "residues": list(e.residues)}


def load_zhat(source) -> ZhatElement:
    doc = read_doc(source)
    e = ZhatElement(tuple(_field(doc, "moduli")), tuple(_field(doc, "residues")))
    if len(e.moduli) != len(e.residues) or not zhat_compatible(e):
        raise MalformedInput("residues are not compatible with the moduli")
    return e


def clopen_to_json(A: ZpClopen):
    return {"p": A.p, "level": A.level, "members": sorted(A.members)}


def load_clopen(source) -> ZpClopen:
    doc = read_doc(source)
    return ZpClopen(_field(doc, "p"), _field(doc, "level"), frozenset(_field(doc, "members")))


# -- posets ----------------------------------------------------------------

def poset_to_json(X: AlexandrovSpace):
    doc = {"size": X.size, "leq": [list(row) for row in X.poset.leq]}
    if X.labels != tuple(range(X.size)):
        doc["labels"] = list(X.labels)
    return doc


def load_poset(source, max_size=16) -> AlexandrovSpace:
    doc = read_doc(source)
    size = _field(doc, "size")
    if size > max_size:
        raise SizeLimit(f"{size} points exceeds the limit of {max_size}")
    return AlexandrovSpace(FinitePoset(size, _field(doc, "leq")), doc.get("labels"))
