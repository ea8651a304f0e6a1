"""Plumbing-graph calculus and combinatorial invariants of plane-curve covers.

Every document-valued function speaks the same JSON schemas as the plumbcalc
CLI (see docs/format.md). Functions accept either JSON strings or plain
dicts/lists and return parsed Python objects.
"""

import json as _json

try:
    from . import _plumbcalc as _core
except ImportError:  # in-tree build keeps the extension next to the package
    import _plumbcalc as _core

GraphError = _core.GraphError
cf_convergents = _core.cf_convergents
chain_dual = _core.chain_dual
multiplicity_sequence = _core.multiplicity_sequence
selftest = _core.selftest

__all__ = [
    "GraphError",
    "build_combinatorics",
    "build_gcombinatorics",
    "build_quasi_triangular",
    "cf_convergents",
    "chain_dual",
    "cmb_equivalent",
    "dpg_equivalent",
    "export_dot",
    "gequiv",
    "intersection_form",
    "invariants",
    "local_graph_at",
    "multiplicity_sequence",
    "normalize",
    "resolve_singularity",
    "reverse_orientation",
    "reverse_seifert",
    "seifert_euler",
    "selftest",
    "star_seifert",
    "to_wgraph",
    "validate",
    "wgraph_equivalent",
]


def _dump(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def validate(doc):
    return _core.validate(_dump(doc))


def normalize(doc):
    return _json.loads(_core.normalize(_dump(doc)))


def reverse_orientation(doc):
    return _json.loads(_core.reverse_orientation(_dump(doc)))


def intersection_form(doc):
    return _json.loads(_core.intersection_form(_dump(doc)))


def to_wgraph(doc):
    return _json.loads(_core.to_wgraph(_dump(doc)))


def dpg_equivalent(a, b):
    return _core.dpg_equivalent(_dump(a), _dump(b))


def wgraph_equivalent(a, b):
    return _core.wgraph_equivalent(_dump(a), _dump(b))


def star_seifert(doc):
    return _json.loads(_core.star_seifert(_dump(doc)))


def seifert_euler(doc):
    return _core.seifert_euler(_dump(doc))


def reverse_seifert(doc):
    return _json.loads(_core.reverse_seifert(_dump(doc)))


def resolve_singularity(doc, point=""):
    return _json.loads(_core.resolve_singularity(_dump(doc), point))


def build_combinatorics(doc):
    return _json.loads(_core.build_combinatorics(_dump(doc)))


def build_quasi_triangular(p1, p2, p3):
    return _json.loads(_core.build_quasi_triangular(list(p1), list(p2), list(p3)))


def local_graph_at(doc, point):
    return _json.loads(_core.local_graph_at(_dump(doc), point))


def cmb_equivalent(a, b):
    return _core.cmb_equivalent(_dump(a), _dump(b))


def build_gcombinatorics(cmb, cover):
    return _json.loads(_core.build_gcombinatorics(_dump(cmb), _dump(cover)))


def gequiv(a, b):
    return _core.gequiv(_dump(a), _dump(b))


def invariants(cmb, cover, c0=(), pair=""):
    return _json.loads(_core.invariants(_dump(cmb), _dump(cover), list(c0), pair))


def export_dot(doc):
    return _core.export_dot(_dump(doc))
