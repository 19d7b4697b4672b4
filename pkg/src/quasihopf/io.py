"""Algebra files and machine-readable reports.

An algebra file is UTF-8 JSON with exact scalars as strings ("3/4") or
integers, structure tensors in nested arrays, and flat arrays in the global
index convention (e_{i1} (x) ... (x) e_{ik} at index ((i1 n + i2) n + ...)
n + ik).  phi_inv may be omitted; it is then solved for.  Reports are JSON
with sorted keys and no volatile fields, so byte-identical reruns are
guaranteed for a fixed input and flags.
"""

import hashlib
import json

from .fields import FieldError, field_from_spec, field_to_spec
from .qba import (QuasiBialgebra, ShapeMismatch, NoInverse,
                  verify_quasibialgebra, solve_phi_inverse)

FORMAT_VERSION = 1


class ParseError(ValueError):
    pass


class AxiomError(ValueError):
    def __init__(self, failing):
        super().__init__("axiom verification failed: %s" % ", ".join(failing))
        self.failing = list(failing)


class UnsupportedField(ValueError):
    pass


def _require(cond, msg):
    if not cond:
        raise ParseError(msg)


def parse_algebra_dict(doc, name="", verify=True):
    """Build a QuasiBialgebra from a decoded algebra file.

    Returns (algebra, verification_report).  With verify=True a failing
    axiom raises AxiomError; otherwise the raw data is returned with the
    failing report attached.
    """
    _require(isinstance(doc, dict), "top level must be a JSON object")
    try:
        field = field_from_spec(doc.get("field", "Q"))
    except FieldError as exc:
        raise UnsupportedField(str(exc))
    n = doc.get("n")
    _require(isinstance(n, int), "n must be an integer")
    if n <= 0:
        raise ParseError("dimension n must be positive, got %r" % n)

    def cube(key):
        t = doc.get(key)
        _require(isinstance(t, list) and len(t) == n and
                 all(isinstance(p, list) and len(p) == n for p in t) and
                 all(isinstance(r, list) and len(r) == n for p in t for r in p),
                 "%s must be an n x n x n nested array" % key)
        return [[[field.parse(x) for x in r] for r in p] for p in t]

    def vec(key, length, optional=False):
        v = doc.get(key)
        if v is None and optional:
            return None
        _require(isinstance(v, list) and len(v) == length,
                 "%s must be an array of length %d" % (key, length))
        return [field.parse(x) for x in v]

    basis = doc.get("basis")
    if basis is not None:
        _require(isinstance(basis, list) and len(basis) == n and
                 all(isinstance(b, str) for b in basis),
                 "basis must be a list of n labels")

    mult = cube("mult")
    comul = cube("comul")
    unit = vec("unit", n)
    counit = vec("counit", n)
    phi = vec("phi", n ** 3)
    phi_inv = vec("phi_inv", n ** 3, optional=True)

    try:
        if phi_inv is None:
            probe = QuasiBialgebra(field, n, mult, unit, comul, counit,
                                   phi, phi, name=name, basis_labels=basis)
            solved = solve_phi_inverse(probe, phi=phi)
            if isinstance(solved, NoInverse):
                raise AxiomError(["phi_invertible"])
            phi_inv = solved
        A = QuasiBialgebra(field, n, mult, unit, comul, counit, phi, phi_inv,
                           name=name, basis_labels=basis)
    except ShapeMismatch as exc:
        raise ParseError(str(exc))
    report = verify_quasibialgebra(A)
    if verify and not report.all_pass:
        raise AxiomError(report.failing())
    return A, report


def load_algebra(path, verify=True):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError("%s is not valid UTF-8 JSON: %s" % (path, exc))
    name = doc.get("name") or ""
    A, report = parse_algebra_dict(doc, name=name, verify=verify)
    return A, report, hashlib.sha256(raw).hexdigest()


def algebra_to_dict(A):
    fmt = A.field.fmt
    n = A.n
    return {
        "field": field_to_spec(A.field),
        "name": A.name,
        "n": n,
        "basis": list(A.basis_labels),
        "mult": [[[fmt(x) for x in r] for r in p] for p in A.mult],
        "comul": [[[fmt(x) for x in r] for r in p] for p in A.comul],
        "unit": [fmt(x) for x in A.unit],
        "counit": [fmt(x) for x in A.counit],
        "phi": [fmt(x) for x in A.phi],
        "phi_inv": [fmt(x) for x in A.phi_inv],
    }


def emit_algebra(A, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(A), fh, indent=1, sort_keys=True)
        fh.write("\n")


def mat_to_lists(m):
    fmt = m.field.fmt
    return [[fmt(x) for x in row] for row in m.data]


def report_to_dict(rep, digest, flags):
    """Serialize an EquivalenceReport deterministically."""
    out = {
        "format_version": FORMAT_VERSION,
        "input_digest": digest,
        "flags": flags,
        "algebra": rep.algebra,
        "predicates": {k: v for k, v in rep.predicates.items()},
        "details": rep.details,
        "unconditional": rep.unconditional.as_dict(),
        "notes": rep.notes,
        "consistent": rep.consistent,
        "preantipode_exists": rep.exists,
    }
    wit = {}
    for key, val in rep.witnesses.items():
        if hasattr(val, "data"):
            wit[key] = mat_to_lists(val)
        else:
            wit[key] = val
    out["witnesses"] = wit
    return out


def dump_json(doc):
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"
