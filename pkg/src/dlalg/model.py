"""Loading model files (YAML) into algebroids, connections, 2-representations and matched pairs.

Layout::

    base_dim: 2
    algebroids:
      A: {rank: 2, anchor: {"1,1": "1"}, structure: {"1,2,1": "x2"}}
      T: {tangent: true}
    bundles:
      E: {rank: 1}
    connections:
      nabla: {algebroid: TM, bundle: A, christoffel: {"1,1,2": "x2"}}
    tworeps:
      t: {algebroid: A, partial: {"1,1": "1"}, conn0: n0, conn1: n1, R: {"1,2,1,1": "x1"}}
    matched_pairs:
      mp: {A: A, B: B, repA: t, repB: s}
    tangent_inputs:
      td: {algebroid: A, connection: nabla}

Indices are 1-based and entries not listed are zero.  ``anchor["i,j"]`` is the
d/dx_j component of rho(e_i); ``structure["i,j,l"]`` the e_l component of
[e_i, e_j] (entries for i > j may be omitted and are filled by antisymmetry);
``christoffel["i,j,l"]`` the f_l component of nabla_{e_i} f_j; ``partial["p,q"]``
the (E1 row p, E0 column q) entry of d; ``R["i,j,p,q"]`` (i < j) the entry of
R(e_i, e_j): E1 -> E0.  The name ``TM`` refers to the tangent algebroid of the
base unless a model defines it.  Algebroid names may be used as bundles.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from .algebroid import Algebroid
from .connection import Conn
from .matched import MatchedPair
from .polyring import ParseError, Poly, UnknownVariable, VarRing
from .tangent import TangentInput, tangent_double_matched_pair
from .tworep import TwoRep

SECTIONS = ("algebroids", "bundles", "connections", "tworeps", "matched_pairs", "tangent_inputs")


@dataclass
class Diagnostic:
    where: str
    message: str
    line: Optional[int] = None

    def __str__(self):
        loc = f"line {self.line}: " if self.line is not None else ""
        return f"{loc}{self.where}: {self.message}"


class ModelError(Exception):
    """Raised with the full list of diagnostics when a model cannot be loaded."""

    def __init__(self, diagnostics: list):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


@dataclass
class Model:
    ring: VarRing
    algebroids: dict = field(default_factory=dict)
    bundles: dict = field(default_factory=dict)
    connections: dict = field(default_factory=dict)
    tworeps: dict = field(default_factory=dict)
    matched_pairs: dict = field(default_factory=dict)
    tangent_inputs: dict = field(default_factory=dict)
    implicit: tuple = ()

    def matched_pair(self, name: str) -> MatchedPair:
        if name in self.matched_pairs:
            return self.matched_pairs[name]
        if name in self.tangent_inputs:
            return tangent_double_matched_pair(self.tangent_inputs[name])
        raise KeyError(name)

    def names(self, kind: str) -> list:
        if kind == "matched_pairs":
            return list(self.matched_pairs) + list(self.tangent_inputs)
        return [k for k in getattr(self, kind) if k not in self.implicit]


class _LineLoader(yaml.SafeLoader):
    """SafeLoader that remembers the line of every mapping key."""


def _construct_mapping(loader, node, deep=False):
    mapping = yaml.SafeLoader.construct_mapping(loader, node, deep=deep)
    lines = {}
    for key_node, _ in node.value:
        key = loader.construct_object(key_node, deep=deep)
        lines[key] = key_node.start_mark.line + 1
    mapping = _Located(mapping)
    mapping.lines = lines
    return mapping


class _Located(dict):
    lines: dict


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


class _Builder:
    def __init__(self, raw: dict):
        self.raw = raw
        self.diags: list = []

    def err(self, where: str, message: str, node: Any = None, key: Any = None):
        line = None
        if isinstance(node, _Located) and key in node.lines:
            line = node.lines[key]
        self.diags.append(Diagnostic(where, message, line))

    def section(self, name: str) -> dict:
        sec = self.raw.get(name) or {}
        if not isinstance(sec, dict):
            self.err(name, "must be a mapping", self.raw, name)
            return {}
        return sec

    def poly(self, ring: VarRing, text: Any, where: str, node, key) -> Poly:
        if isinstance(text, bool) or not isinstance(text, (str, int)):
            self.err(where, f"expected a polynomial string, got {text!r}", node, key)
            return ring.zero()
        try:
            return ring.parse(str(text))
        except UnknownVariable as exc:
            self.err(where, f"{exc} in {text!r}", node, key)
        except ParseError as exc:
            self.err(where, f"cannot parse {text!r}: {exc}", node, key)
        return ring.zero()

    def entries(self, table: Any, shape: tuple, where: str, ring: VarRing) -> dict:
        """Sparse 1-based table -> {0-based index tuple: Poly}."""
        out = {}
        if table is None:
            return out
        if not isinstance(table, dict):
            self.err(where, "must be a mapping from index strings to polynomials")
            return out
        for key, val in table.items():
            try:
                idx = tuple(int(p) - 1 for p in str(key).split(","))
            except ValueError:
                self.err(where, f"bad index {key!r}", table, key)
                continue
            if len(idx) != len(shape) or any(not 0 <= i < n for i, n in zip(idx, shape)):
                dims = "x".join(str(n) for n in shape)
                self.err(where, f"index {key!r} out of range for shape {dims}", table, key)
                continue
            out[idx] = self.poly(ring, val, f"{where}[{key}]", table, key)
        return out

    def rank(self, decl: dict, where: str) -> int:
        r = decl.get("rank")
        if isinstance(r, bool) or not isinstance(r, int) or r < 0:
            self.err(where, f"rank must be a non-negative integer, got {r!r}", decl, "rank")
            return 0
        return r


def _dense(entries: dict, shape: tuple, ring: VarRing):
    def build(prefix):
        depth = len(prefix)
        if depth == len(shape):
            return entries.get(prefix, ring.zero())
        return tuple(build(prefix + (i,)) for i in range(shape[depth]))
    return build(())


def load_model(path) -> Model:
    text = Path(path).read_text(encoding="utf-8")
    return loads_model(text, str(path))


def loads_model(text: str, source: str = "<model>") -> Model:
    try:
        raw = yaml.load(text, Loader=_LineLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ModelError([Diagnostic(source, f"YAML error: {getattr(exc, 'problem', exc)}",
                                     mark.line + 1 if mark else None)]) from None
    if not isinstance(raw, dict):
        raise ModelError([Diagnostic(source, "top level must be a mapping")])
    b = _Builder(raw)
    unknown = [k for k in raw if k not in SECTIONS + ("base_dim",)]
    for k in unknown:
        b.err(source, f"unknown section {k!r}", raw, k)
    n = raw.get("base_dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ModelError(b.diags + [Diagnostic("base_dim", f"must be a non-negative integer, got {n!r}")])
    ring = VarRing.euclidean(n)
    m = Model(ring)

    # algebroids
    for name, decl in b.section("algebroids").items():
        where = f"algebroids.{name}"
        if not isinstance(decl, dict):
            b.err(where, "must be a mapping")
            continue
        if decl.get("tangent"):
            m.algebroids[name] = Algebroid.tangent(ring)
            continue
        k = b.rank(decl, where)
        anchor = b.entries(decl.get("anchor"), (k, n), f"{where}.anchor", ring)
        st = b.entries(decl.get("structure"), (k, k, k), f"{where}.structure", ring)
        full = dict(st)
        for (i, j, l), p in st.items():
            if i == j and p:
                b.err(f"{where}.structure", f"[e{i + 1}, e{i + 1}] has nonzero component {l + 1}",
                      decl.get("structure"), f"{i + 1},{j + 1},{l + 1}")
            elif (j, i, l) in st and st[(j, i, l)] != -p:
                if i < j:
                    b.err(f"{where}.structure",
                          f"entries {i + 1},{j + 1},{l + 1} and {j + 1},{i + 1},{l + 1} are not antisymmetric",
                          decl.get("structure"), f"{i + 1},{j + 1},{l + 1}")
            elif (j, i, l) not in st:
                full[(j, i, l)] = -p
        m.algebroids[name] = Algebroid.build(ring, _dense(anchor, (k, n), ring), _dense(full, (k, k, k), ring),
                                             name=name)
    if "TM" not in m.algebroids:
        m.algebroids["TM"] = Algebroid.tangent(ring)
        m.implicit = ("TM",)

    for name, decl in b.section("bundles").items():
        where = f"bundles.{name}"
        if not isinstance(decl, dict):
            b.err(where, "must be a mapping")
            continue
        m.bundles[name] = b.rank(decl, where)

    def bundle_rank(ref, where, node, key) -> Optional[int]:
        if ref in m.bundles:
            return m.bundles[ref]
        if ref in m.algebroids:
            return m.algebroids[ref].rank
        b.err(where, f"unknown bundle {ref!r}", node, key)
        return None

    def algebroid_ref(ref, where, node, key) -> Optional[Algebroid]:
        if ref in m.algebroids:
            return m.algebroids[ref]
        b.err(where, f"unknown algebroid {ref!r}", node, key)
        return None

    for name, decl in b.section("connections").items():
        where = f"connections.{name}"
        if not isinstance(decl, dict):
            b.err(where, "must be a mapping")
            continue
        A = algebroid_ref(decl.get("algebroid"), where, decl, "algebroid")
        r = bundle_rank(decl.get("bundle"), where, decl, "bundle")
        if A is None or r is None:
            continue
        ch = b.entries(decl.get("christoffel"), (A.rank, r, r), f"{where}.christoffel", ring)
        m.connections[name] = Conn.build(A, r, _dense(ch, (A.rank, r, r), ring), name=name)

    def conn_ref(ref, where, node, key, A: Algebroid) -> Optional[Conn]:
        c = m.connections.get(ref)
        if c is None:
            b.err(where, f"unknown connection {ref!r}", node, key)
            return None
        if c.algebroid is not A:
            b.err(where, f"connection {ref!r} does not act through the expected algebroid", node, key)
            return None
        return c

    for name, decl in b.section("tworeps").items():
        where = f"tworeps.{name}"
        if not isinstance(decl, dict):
            b.err(where, "must be a mapping")
            continue
        A = algebroid_ref(decl.get("algebroid"), where, decl, "algebroid")
        if A is None:
            continue
        c0 = conn_ref(decl.get("conn0"), where, decl, "conn0", A)
        c1 = conn_ref(decl.get("conn1"), where, decl, "conn1", A)
        if c0 is None or c1 is None:
            continue
        r0, r1 = c0.rank, c1.rank
        d = b.entries(decl.get("partial"), (r1, r0), f"{where}.partial", ring)
        Rent = b.entries(decl.get("R"), (A.rank, A.rank, r0, r1), f"{where}.R", ring)
        R = {}
        for i, j in itertools.combinations(range(A.rank), 2):
            R[(i, j)] = tuple(tuple(Rent.get((i, j, p, q), ring.zero()) for q in range(r1)) for p in range(r0))
        for (i, j, p, q), poly in Rent.items():
            if i >= j and poly:
                b.err(f"{where}.R", f"entry {i + 1},{j + 1},{p + 1},{q + 1} must have i < j",
                      decl.get("R"), f"{i + 1},{j + 1},{p + 1},{q + 1}")
        m.tworeps[name] = TwoRep(A, r0, r1, _dense(d, (r1, r0), ring), c0, c1, R, name)

    for name, decl in b.section("matched_pairs").items():
        where = f"matched_pairs.{name}"
        if not isinstance(decl, dict):
            b.err(where, "must be a mapping")
            continue
        A = algebroid_ref(decl.get("A"), where, decl, "A")
        B = algebroid_ref(decl.get("B"), where, decl, "B")
        ra, rb = m.tworeps.get(decl.get("repA")), m.tworeps.get(decl.get("repB"))
        for key, val in (("repA", ra), ("repB", rb)):
            if val is None:
                b.err(where, f"unknown 2-representation {decl.get(key)!r}", decl, key)
        if None in (A, B, ra, rb):
            continue
        try:
            m.matched_pairs[name] = MatchedPair(A, B, ra.r0, ra, rb, name)
        except ValueError as exc:
            b.err(where, str(exc))

    for name, decl in b.section("tangent_inputs").items():
        where = f"tangent_inputs.{name}"
        if not isinstance(decl, dict):
            b.err(where, "must be a mapping")
            continue
        A = algebroid_ref(decl.get("algebroid"), where, decl, "algebroid")
        c = m.connections.get(decl.get("connection"))
        if c is None:
            b.err(where, f"unknown connection {decl.get('connection')!r}", decl, "connection")
        if A is None or c is None:
            continue
        try:
            m.tangent_inputs[name] = TangentInput(A, c)
        except ValueError as exc:
            b.err(where, str(exc))

    if b.diags:
        raise ModelError(b.diags)
    return m


def _sparse(entries, shape) -> dict:
    out = {}
    for idx in itertools.product(*(range(n) for n in shape)):
        v = entries
        for i in idx:
            v = v[i]
        if v:
            out[",".join(str(i + 1) for i in idx)] = str(v)
    return out


def algebroid_to_yaml(A: Algebroid) -> dict:
    """Inverse of the algebroid reader (entries with i < j only in the structure)."""
    st = {k: v for k, v in _sparse(A.structure, (A.rank,) * 3).items()
          if int(k.split(",")[0]) < int(k.split(",")[1])}
    return {"rank": A.rank, "anchor": _sparse(A.anchor, (A.rank, A.ring.base_dim)), "structure": st}


def matched_pair_document(mp: MatchedPair, base_dim: int) -> dict:
    """A full model document describing one matched pair, readable by ``loads_model``."""
    A, B = mp.A, mp.B
    doc: dict = {"base_dim": base_dim, "algebroids": {}, "bundles": {}, "connections": {}, "tworeps": {}}
    for name, X in (("A", A), ("B", B)):
        if X.name == "TM" and X.rank == base_dim and X.anchor == Algebroid.tangent(X.ring).anchor:
            doc["algebroids"][name] = {"tangent": True}
        else:
            doc["algebroids"][name] = algebroid_to_yaml(X)
    doc["bundles"]["C"] = {"rank": mp.rank_C}
    conns = {"nAC": (mp.nabla_AC, "A", "C"), "nAB": (mp.nabla_AB, "A", "B"),
             "nBC": (mp.nabla_BC, "B", "C"), "nBA": (mp.nabla_BA, "B", "A")}
    for name, (c, acting, bundle) in conns.items():
        doc["connections"][name] = {
            "algebroid": acting, "bundle": bundle,
            "christoffel": _sparse(c.christoffel, (c.algebroid.rank, c.rank, c.rank)),
        }
    for name, t, acting, c0, c1 in (("repA", mp.repA, "A", "nAC", "nAB"), ("repB", mp.repB, "B", "nBC", "nBA")):
        R = {}
        for (i, j), m in sorted(t.R.items()):
            for p in range(t.r0):
                for q in range(t.r1):
                    if m[p][q]:
                        R[f"{i + 1},{j + 1},{p + 1},{q + 1}"] = str(m[p][q])
        doc["tworeps"][name] = {"algebroid": acting, "partial": _sparse(t.partial, (t.r1, t.r0)),
                                "conn0": c0, "conn1": c1, "R": R}
    doc["matched_pairs"] = {mp.name or "mp": {"A": "A", "B": "B", "repA": "repA", "repB": "repB"}}
    return doc
