"""Exact invariants of crystallographic and affine Coxeter groups.

Wraps the compiled module: documents go in as dicts (or JSON text) and
results come back as dicts.
"""

import json

import _alcove

__all__ = [
    "classify",
    "fingerprint",
    "distinguish",
    "feit_scan",
    "bc_report",
    "match_products",
    "affine_graph",
    "affine_group",
]


def _text(document):
    if isinstance(document, str):
        return document
    return json.dumps(document)


def classify(graph):
    """Component types of a Coxeter graph."""
    return json.loads(_alcove.classify_json(_text(graph)))


def fingerprint(document, budget=None, force_cf=False):
    """Invariant fingerprint of a graph or group document."""
    kwargs = {"force_cf": force_cf}
    if budget is not None:
        kwargs["budget"] = budget
    return json.loads(_alcove.fingerprint_json(_text(document), **kwargs))


def distinguish(a, b, budget=None):
    """First invariant separating two documents, with transcript."""
    kwargs = {} if budget is None else {"budget": budget}
    return json.loads(_alcove.distinguish_json(_text(a), _text(b), **kwargs))


def feit_scan(type, rank):
    """Semidirect abelianizations over the stable lattices of a type."""
    return json.loads(_alcove.feit_scan_json(type, rank))


def bc_report(rank, search_budget=None):
    """Checked chain-of-lattices claims at one rank."""
    kwargs = {} if search_budget is None else {"search_budget": search_budget}
    return json.loads(_alcove.bc_report_json(rank, **kwargs))


def match_products(a, b, budget=None):
    """Fingerprint matching between the factors of two product graphs."""
    kwargs = {} if budget is None else {"budget": budget}
    return json.loads(_alcove.match_products_json(_text(a), _text(b), **kwargs))


def affine_graph(type, rank):
    """Canonical affine Coxeter graph of the given finite type."""
    return json.loads(_alcove.affine_graph_json(type, rank))


def affine_group(type, rank):
    """Group document for the affine Coxeter group of the given type."""
    return json.loads(_alcove.affine_group_json(type, rank))
