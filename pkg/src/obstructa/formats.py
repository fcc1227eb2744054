"""Textual document formats: parse, validate, serialize, round-trip.

Concrete syntax is JSON.  Rationals are strings in the grammar
-?[0-9]+(/[1-9][0-9]*)? and must be in lowest terms with the canonical
spelling, so a document has exactly one serialized form.  Structure
constants are sparse: entries absent from the list multiply to zero.

Documents hold JSON-native values (dicts, lists, strings, ints) exactly
as parsed, with entries sorted; equality is value equality and
parse(serialize(d)) == d holds by construction.

Parse failures are ParseError with a position.  JSON syntax errors carry
the decoder's position; semantic errors are located by re-scanning the
source text for the offending token, which is deterministic because the
text is the value being complained about.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from obstructa.errors import InputError, ParseError
from obstructa.rationals import Scalar, format_scalar, parse_scalar
from obstructa.linalg import intersect_spans, rref
from obstructa.algebra import Algebra, Grading, MatrixRep, Morphism
from obstructa.forms import ProductSelector
from obstructa.obstruction import (CERT_KINDS, GeometrySpec, Certificate,
                                   KNOWN_FLAGS, PROVENANCES, condition_part,
                                   part_algebra, so_sum)

__all__ = [
    "AlgebraDocument", "GeometryDocument", "CertificateDocument",
    "ReportDocument", "parse_algebra", "parse_geometry", "parse_certificate",
    "parse_report", "serialize", "build_algebra", "document_from_algebra",
    "build_spec", "build_certificates", "make_report", "load_document",
    "SCHEMA_VERSION", "SUFFIXES",
]

SCHEMA_VERSION = 1

SUFFIXES = {
    "algebra": ".algebra.json",
    "geometry": ".geometry.json",
    "certificate": ".certificate.json",
    "report": ".report.json",
}

_DOCUMENT_PRODUCTS = ("algebra", "bracket")


# -- source locations -------------------------------------------------------

def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    nl = text.rfind("\n", 0, pos)
    return line, pos - nl


def _key_location(text: str, key: str) -> tuple[int, int]:
    pos = text.find(f'"{key}"')
    if pos < 0:
        return 1, 1
    return _line_col(text, pos)


def _entry_location(text: str, key: str, ordinal: int) -> tuple[int, int]:
    """Position of the ordinal-th element of the array under `key`.

    Scans outside JSON strings only; entry elements never contain
    brackets, so depth-2 openings enumerate the elements exactly.
    """
    anchor = text.find(f'"{key}"')
    if anchor < 0:
        return 1, 1
    i = anchor + len(key) + 2
    depth = 0
    in_string = False
    count = -1
    while i < len(text):
        ch = text[i]
        if in_string:
            if ch == "\\":
                i += 2
                continue
            if ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch == "[":
            depth += 1
            if depth == 2:
                count += 1
                if count == ordinal:
                    return _line_col(text, i)
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
        i += 1
    return _line_col(text, anchor)


def _schema_error(text: str, key: str, message: str) -> ParseError:
    line, col = _key_location(text, key)
    return ParseError(message, line=line, column=col, kind="schema")


# -- scalar plumbing --------------------------------------------------------

def _canonical_scalar(lit, text: str, key: str, line_col=None) -> Scalar:
    if line_col is None:
        line_col = _key_location(text, key)
    line, col = line_col
    if not isinstance(lit, str):
        raise ParseError(f"rational literals are strings, got {lit!r}",
                         line=line, column=col, kind="rational")
    value = parse_scalar(lit, line=line, column=col)
    if format_scalar(value) != lit:
        raise ParseError(f"rational {lit!r} is not in canonical form "
                         f"(want {format_scalar(value)!r})",
                         line=line, column=col, kind="rational")
    return value


def _scalar_matrix(rows, dim_rows, dim_cols, text, key) -> list:
    loc = _key_location(text, key)
    if (not isinstance(rows, list) or len(rows) != dim_rows
            or any(not isinstance(r, list) or len(r) != dim_cols
                   for r in rows)):
        raise _schema_error(text, key,
                            f"{key} must be a {dim_rows}x{dim_cols} matrix")
    for row in rows:
        for c in row:
            _canonical_scalar(c, text, key, loc)
    return [list(row) for row in rows]


def _scalar_rows(block, width, text, key) -> list:
    """Rows of canonical literals with a fixed width but free row count."""
    if not isinstance(block, list):
        raise _schema_error(text, key, f"{key} must be a list of rows")
    loc = _key_location(text, key)
    out = []
    for row in block:
        if not isinstance(row, list) or (width is not None
                                         and len(row) != width):
            raise _schema_error(text, key,
                                f"{key} rows must be lists of width {width}")
        for c in row:
            _canonical_scalar(c, text, key, loc)
        out.append(list(row))
    return out


def _require(obj: dict, key: str, text: str):
    if key not in obj:
        raise _schema_error(text, key if f'"{key}"' in text
                            else "schema_version",
                            f"missing required field {key!r}")
    return obj[key]


def _check_version(obj: dict, text: str):
    version = _require(obj, "schema_version", text)
    if version != SCHEMA_VERSION:
        raise _schema_error(text, "schema_version",
                            f"unsupported schema_version {version!r}")


def _is_index(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


# -- documents --------------------------------------------------------------

@dataclass
class AlgebraDocument:
    """Sparse structure-constant description of one algebra.

    Fields hold JSON-native values; entries are kept sorted by (i, j, k).
    """
    name: str
    basis: list
    entries: list                      # [[i, j, k, literal], ...]
    involution: list | None = None
    grading: dict | None = None        # {"kind": ..., "degrees": [...]}
    representation: dict | None = None
    decomposition: dict | None = None  # {"A0": rows, "A1": rows}
    flags: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def to_jsonable(self) -> dict:
        out = {"schema_version": self.schema_version, "name": self.name,
               "basis": self.basis, "entries": self.entries}
        for key in ("involution", "grading", "representation",
                    "decomposition"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.flags:
            out["flags"] = self.flags
        return out


@dataclass
class CertificateDocument:
    kind: str
    payload: dict
    schema_version: int = SCHEMA_VERSION

    def to_jsonable(self) -> dict:
        return {"schema_version": self.schema_version, "kind": self.kind,
                "payload": self.payload}


@dataclass
class GeometryDocument:
    algebra: AlgebraDocument
    provenance: str = "abstract"
    decomposition: dict | None = None
    flags: list = field(default_factory=list)
    grading: dict | None = None
    degree_shift: int = 0
    product: str = "algebra"
    certificates: dict = field(default_factory=dict)  # id -> CertificateDocument
    schema_version: int = SCHEMA_VERSION

    def to_jsonable(self) -> dict:
        out = {"schema_version": self.schema_version,
               "algebra": self.algebra.to_jsonable(),
               "provenance": self.provenance,
               "product": self.product}
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition
        if self.flags:
            out["flags"] = self.flags
        if self.grading is not None:
            out["grading"] = self.grading
        if self.degree_shift:
            out["degree_shift"] = self.degree_shift
        if self.certificates:
            out["certificates"] = {cid: cdoc.to_jsonable()
                                   for cid, cdoc in self.certificates.items()}
        return out


@dataclass
class ReportDocument:
    """Machine-readable run record; every randomized result names its seed."""
    command: str
    seed: int
    results: object
    engine_version: str = ""
    schema_version: int = SCHEMA_VERSION

    def to_jsonable(self) -> dict:
        return {"schema_version": self.schema_version,
                "engine_version": self.engine_version,
                "command": self.command, "seed": self.seed,
                "results": self.results}


# -- parsing ----------------------------------------------------------------

def _load(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno,
                         kind="syntax") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", line=1, column=1,
                         kind="schema")
    return obj


def _parse_grading_block(block, dim, text) -> dict:
    if not isinstance(block, dict) or "kind" not in block \
            or "degrees" not in block:
        raise _schema_error(text, "grading",
                            "grading needs kind and degrees")
    kind = block["kind"]
    if isinstance(kind, list):
        if len(kind) != 2 or kind[0] not in ("Z^d", "Z_mod") \
                or not _is_index(kind[1]) or kind[1] < 1:
            raise _schema_error(text, "grading",
                                f"unknown grading kind {kind!r}")
    elif kind != "Z":
        raise _schema_error(text, "grading", f"unknown grading kind {kind!r}")
    degrees = block["degrees"]
    if not isinstance(degrees, list) or len(degrees) != dim:
        line, col = _key_location(text, "degrees")
        raise ParseError(
            f"grading lists "
            f"{len(degrees) if isinstance(degrees, list) else '?'} degrees "
            f"for dimension {dim}", line=line, column=col, kind="range")
    for d in degrees:
        if isinstance(d, list):
            if not (isinstance(kind, list) and kind[0] == "Z^d"
                    and len(d) == kind[1] and all(_is_index(x) for x in d)):
                raise _schema_error(text, "degrees",
                                    f"degree {d!r} does not fit the kind")
        elif not _is_index(d):
            raise _schema_error(text, "degrees", f"bad degree label {d!r}")
    return {"kind": kind, "degrees": list(degrees)}


def _parse_split_block(block, dim, text) -> dict:
    if not isinstance(block, dict) or set(block) != {"A0", "A1"}:
        raise _schema_error(text, "decomposition",
                            "decomposition needs exactly A0 and A1")
    return {"A0": _scalar_rows(block["A0"], dim, text, "A0"),
            "A1": _scalar_rows(block["A1"], dim, text, "A1")}


def parse_algebra(text: str) -> AlgebraDocument:
    """Validate and load one algebra document.

    Indices are checked against the basis, rational literals against the
    canonical grammar, and duplicate (i, j, k) entries rejected; nothing
    escapes half-validated.
    """
    return _parse_algebra_obj(_load(text), text)


def _parse_algebra_obj(obj: dict, text: str) -> AlgebraDocument:
    # text is the enclosing source (possibly a geometry document); token
    # re-scans run against it so locations stay meaningful
    _check_version(obj, text)
    name = _require(obj, "name", text)
    if not isinstance(name, str):
        raise _schema_error(text, "name", "name must be a string")
    basis = _require(obj, "basis", text)
    if not isinstance(basis, list) or not all(isinstance(b, str)
                                              for b in basis):
        raise _schema_error(text, "basis", "basis must be a list of labels")
    dim = len(basis)
    raw_entries = _require(obj, "entries", text)
    if not isinstance(raw_entries, list):
        raise _schema_error(text, "entries", "entries must be a list")
    entries = []
    seen = {}
    for idx, ent in enumerate(raw_entries):
        line, col = _entry_location(text, "entries", idx)
        if (not isinstance(ent, list) or len(ent) != 4
                or not all(_is_index(x) for x in ent[:3])):
            raise ParseError(f"entry {idx} must be [i, j, k, rational]",
                             line=line, column=col, kind="schema")
        i, j, k, lit = ent
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ParseError(
                f"entry {idx} = ({i},{j},{k}) indexes outside dimension "
                f"{dim}", line=line, column=col, kind="range")
        if (i, j, k) in seen:
            raise ParseError(
                f"entry {idx} duplicates ({i},{j},{k}) from entry "
                f"{seen[(i, j, k)]}", line=line, column=col, kind="duplicate")
        seen[(i, j, k)] = idx
        value = _canonical_scalar(lit, text, "entries", (line, col))
        if value == 0:
            raise ParseError(f"entry {idx} stores an explicit zero",
                             line=line, column=col, kind="schema")
        entries.append([i, j, k, lit])
    entries.sort(key=lambda e: (e[0], e[1], e[2]))

    involution = None
    if "involution" in obj:
        involution = _scalar_matrix(obj["involution"], dim, dim, text,
                                    "involution")
    grading = None
    if "grading" in obj:
        grading = _parse_grading_block(obj["grading"], dim, text)
    representation = None
    if "representation" in obj:
        block = obj["representation"]
        if (not isinstance(block, dict) or "rep_dim" not in block
                or "matrices" not in block):
            raise _schema_error(text, "representation",
                                "representation needs rep_dim and matrices")
        rep_dim = block["rep_dim"]
        rule = block.get("rule", "matrix")
        if not _is_index(rep_dim) or rep_dim < 0:
            raise _schema_error(text, "rep_dim",
                                "rep_dim must be an int >= 0")
        if rule not in ("matrix", "commutator"):
            raise _schema_error(text, "rule", f"unknown rep rule {rule!r}")
        mats = block["matrices"]
        if not isinstance(mats, list) or len(mats) != dim:
            raise _schema_error(text, "matrices",
                                f"need one matrix per basis vector ({dim})")
        representation = {
            "rep_dim": rep_dim,
            "matrices": [_scalar_matrix(m, rep_dim, rep_dim, text,
                                        "matrices") for m in mats],
            "rule": rule}
    decomposition = None
    if "decomposition" in obj:
        decomposition = _parse_split_block(obj["decomposition"], dim, text)
    flags = _parse_flags(obj, text)
    return AlgebraDocument(name=name, basis=list(basis), entries=entries,
                           involution=involution, grading=grading,
                           representation=representation,
                           decomposition=decomposition, flags=flags)


def _parse_flags(obj: dict, text: str) -> list:
    if "flags" not in obj:
        return []
    raw = obj["flags"]
    if not isinstance(raw, list) or not all(isinstance(f, str) for f in raw):
        raise _schema_error(text, "flags", "flags must be a string list")
    for f in raw:
        if f not in KNOWN_FLAGS:
            raise _schema_error(text, "flags", f"unknown flag {f!r}")
    return sorted(set(raw))


def _parse_certificate_obj(obj: dict, text: str) -> CertificateDocument:
    _check_version(obj, text)
    kind = _require(obj, "kind", text)
    if kind not in CERT_KINDS:
        raise _schema_error(text, "kind",
                            f"unknown certificate kind {kind!r}")
    payload = _require(obj, "payload", text)
    if not isinstance(payload, dict):
        raise _schema_error(text, "payload", "payload must be an object")

    def pos_int(cell, key, minimum=1):
        val = cell.get(key)
        if not _is_index(val) or val < minimum:
            raise _schema_error(text, key,
                                f"{key} must be an int >= {minimum}")
        return val

    if kind == "nil_direct":
        clean = {"k": pos_int(payload, "k"), "s": pos_int(payload, "s")}
    elif kind == "solv_decomposition":
        summands = payload.get("summands")
        if not isinstance(summands, list) or not summands:
            raise _schema_error(text, "summands",
                                "summands must be a nonempty list")
        clean = {"k": pos_int(payload, "k"), "s": pos_int(payload, "s"),
                 "summands": [_scalar_rows(s, None, text, "summands")
                              for s in summands]}
    elif kind == "embedding_into_so_sum":
        blocks = payload.get("blocks")
        if (not isinstance(blocks, list) or not blocks
                or not all(_is_index(b) and b >= 1 for b in blocks)):
            raise _schema_error(text, "blocks",
                                "blocks must be positive integers")
        clean = {"blocks": list(blocks),
                 "matrix": _scalar_rows(payload.get("matrix"), None, text,
                                        "matrix")}
    else:
        per = payload.get("per_grade")
        if not isinstance(per, dict) or not per:
            raise _schema_error(text, "per_grade",
                                "per_grade must be a nonempty object")
        clean_per = {}
        for label, cell in per.items():
            if not isinstance(cell, dict):
                raise _schema_error(text, "per_grade",
                                    f"grade {label!r} must map to an object")
            summands = cell.get("summands")
            if not isinstance(summands, list) or not summands:
                raise _schema_error(text, "per_grade",
                                    f"grade {label!r} needs summands")
            clean_per[str(label)] = {
                "k": pos_int(cell, "k"), "s": pos_int(cell, "s"),
                "summands": [_scalar_rows(s, None, text, "per_grade")
                             for s in summands]}
        clean = {"per_grade": clean_per}
    return CertificateDocument(kind=kind, payload=clean)


def parse_certificate(text: str) -> CertificateDocument:
    return _parse_certificate_obj(_load(text), text)


def parse_geometry(text: str) -> GeometryDocument:
    obj = _load(text)
    _check_version(obj, text)
    alg_obj = _require(obj, "algebra", text)
    if not isinstance(alg_obj, dict):
        raise _schema_error(text, "algebra", "algebra must be an object")
    algebra = _parse_algebra_obj(alg_obj, text)
    dim = len(algebra.basis)
    provenance = obj.get("provenance", "abstract")
    if provenance not in PROVENANCES:
        raise _schema_error(text, "provenance",
                            f"provenance must be one of {PROVENANCES}")
    product = obj.get("product", "algebra")
    if product not in _DOCUMENT_PRODUCTS:
        raise _schema_error(text, "product",
                            f"document products are {_DOCUMENT_PRODUCTS}; "
                            f"pullback products carry a section and are "
                            f"built in code")
    decomposition = None
    if obj.get("decomposition") is not None:
        decomposition = _parse_split_block(obj["decomposition"], dim, text)
    flags = _parse_flags(obj, text)
    grading = None
    if obj.get("grading") is not None:
        grading = _parse_grading_block(obj["grading"], dim, text)
    degree_shift = obj.get("degree_shift", 0)
    if not _is_index(degree_shift) or degree_shift < 0:
        raise _schema_error(text, "degree_shift",
                            "degree_shift must be an int >= 0")
    certificates = {}
    if "certificates" in obj:
        block = obj["certificates"]
        if not isinstance(block, dict):
            raise _schema_error(text, "certificates",
                                "certificates must map condition ids")
        for cid in sorted(block):
            cert_obj = block[cid]
            if not isinstance(cert_obj, dict):
                raise _schema_error(text, "certificates",
                                    f"certificate {cid!r} must be an object")
            try:
                condition_part(cid, provenance)
            except InputError as exc:
                raise _schema_error(text, "certificates", str(exc)) from None
            certificates[cid] = _parse_certificate_obj(cert_obj, text)
    return GeometryDocument(algebra=algebra, provenance=provenance,
                            decomposition=decomposition, flags=flags,
                            grading=grading, degree_shift=degree_shift,
                            product=product, certificates=certificates)


def parse_report(text: str) -> ReportDocument:
    obj = _load(text)
    _check_version(obj, text)
    command = _require(obj, "command", text)
    seed = _require(obj, "seed", text)
    version = _require(obj, "engine_version", text)
    results = _require(obj, "results", text)
    if not isinstance(command, str):
        raise _schema_error(text, "command", "command must be a string")
    if not _is_index(seed):
        raise _schema_error(text, "seed", "seed must be an integer")
    if not isinstance(version, str):
        raise _schema_error(text, "engine_version",
                            "engine_version must be a string")
    return ReportDocument(command=command, seed=seed, results=results,
                          engine_version=version)


# -- serialization ----------------------------------------------------------

def serialize(document) -> str:
    """Canonical text: sorted keys, two-space indent, sorted entries, one
    trailing newline.  parse(serialize(d)) == d and equal documents give
    byte-identical text."""
    return json.dumps(document.to_jsonable(), sort_keys=True, indent=2,
                      ensure_ascii=True) + "\n"


# -- document <-> engine objects --------------------------------------------

def _grading_from_block(block: dict) -> Grading:
    kind = block["kind"]
    if isinstance(kind, list):
        kind = (kind[0], kind[1])
    degrees = tuple(tuple(d) if isinstance(d, list) else d
                    for d in block["degrees"])
    return Grading(kind, degrees)


def _rows_to_vectors(rows) -> list:
    return [tuple(parse_scalar(c) for c in row) for row in rows]


def build_algebra(doc: AlgebraDocument) -> Algebra:
    dim = len(doc.basis)
    table: dict[tuple[int, int], list] = {}
    for i, j, k, lit in doc.entries:
        vec = table.setdefault((i, j), [Scalar(0)] * dim)
        vec[k] = parse_scalar(lit)
    involution = None
    if doc.involution is not None:
        involution = tuple(tuple(parse_scalar(c) for c in row)
                           for row in doc.involution)
    grading = None
    if doc.grading is not None:
        grading = _grading_from_block(doc.grading)
    representation = None
    if doc.representation is not None:
        representation = MatrixRep(
            doc.representation["rep_dim"],
            tuple(tuple(tuple(parse_scalar(c) for c in row) for row in m)
                  for m in doc.representation["matrices"]),
            doc.representation["rule"])
    alg = Algebra(doc.name, dim, doc.basis,
                  {ij: tuple(v) for ij, v in table.items()},
                  involution=involution, grading=grading,
                  representation=representation,
                  flags=frozenset(doc.flags), provenance="document")
    if doc.decomposition is not None:
        a0 = alg.subspace(_rows_to_vectors(doc.decomposition["A0"]))
        a1 = alg.subspace(_rows_to_vectors(doc.decomposition["A1"]))
        joint = rref(list(a0.basis) + list(a1.basis))
        if len(joint) != dim or intersect_spans(a0.basis, a1.basis):
            raise InputError("decomposition does not split the algebra")
        alg.decomposition = (a0, a1)
    return alg


def _rows_block(vectors) -> list:
    return [[format_scalar(c) for c in row] for row in vectors]


def document_from_algebra(alg: Algebra) -> AlgebraDocument:
    entries = []
    for (i, j), vec in sorted(alg.table.items()):
        for k, c in enumerate(vec):
            if c != 0:
                entries.append([i, j, k, format_scalar(c)])
    involution = None
    if alg.involution is not None:
        involution = _rows_block(alg.involution)
    grading = None
    if alg.grading is not None:
        kind = alg.grading.kind
        grading = {"kind": kind if isinstance(kind, str) else list(kind),
                   "degrees": [list(d) if isinstance(d, tuple) else d
                               for d in alg.grading.degrees]}
    representation = None
    if alg.representation is not None:
        r = alg.representation
        representation = {"rep_dim": r.rep_dim,
                          "matrices": [_rows_block(m) for m in r.matrices],
                          "rule": r.rule}
    decomposition = None
    if alg.decomposition is not None:
        a0, a1 = alg.decomposition
        decomposition = {"A0": _rows_block(a0.basis),
                         "A1": _rows_block(a1.basis)}
    return AlgebraDocument(name=alg.name, basis=list(alg.basis_labels),
                           entries=entries, involution=involution,
                           grading=grading, representation=representation,
                           decomposition=decomposition,
                           flags=sorted(alg.flags & set(KNOWN_FLAGS)))


def build_spec(doc: GeometryDocument) -> GeometrySpec:
    alg = build_algebra(doc.algebra)
    decomposition = None
    if doc.decomposition is not None:
        decomposition = (
            alg.subspace(_rows_to_vectors(doc.decomposition["A0"])),
            alg.subspace(_rows_to_vectors(doc.decomposition["A1"])))
    grading = None
    if doc.grading is not None:
        grading = _grading_from_block(doc.grading)
    product = (ProductSelector.algebra() if doc.product == "algebra"
               else ProductSelector.bracket())
    return GeometrySpec(alg, decomposition=decomposition,
                        flags=frozenset(doc.flags), grading=grading,
                        degree_shift=doc.degree_shift, product=product,
                        provenance=doc.provenance)


def build_certificates(doc: GeometryDocument, spec: GeometrySpec) -> dict:
    """Certificates bound to their condition ids, over the built spec."""
    out = {}
    for cid, cdoc in doc.certificates.items():
        payload = cdoc.payload
        if cdoc.kind == "nil_direct":
            cert = Certificate.nil_direct(payload["k"], payload["s"])
        elif cdoc.kind == "solv_decomposition":
            summands = [spec.algebra.subspace(_rows_to_vectors(rows))
                        for rows in payload["summands"]]
            cert = Certificate.solv_decomposition(payload["k"], payload["s"],
                                                  summands)
        elif cdoc.kind == "embedding_into_so_sum":
            which = condition_part(cid, spec.provenance)
            source = part_algebra(spec, which)
            blocks = tuple(payload["blocks"])
            target = so_sum(blocks)
            matrix = tuple(tuple(parse_scalar(c) for c in row)
                           for row in payload["matrix"])
            cert = Certificate.embedding_into_so_sum(
                Morphism(source, target, matrix), blocks)
        else:
            per = {}
            for label, cell in payload["per_grade"].items():
                try:
                    key = int(label)
                except ValueError:
                    raise InputError(f"grade label {label!r} is not an "
                                     f"integer") from None
                per[key] = {"k": cell["k"], "s": cell["s"],
                            "summands": [spec.algebra.subspace(
                                _rows_to_vectors(rows))
                                for rows in cell["summands"]]}
            cert = Certificate.weak_solv_graded(per)
        out[cid] = cert
    return out


def make_report(command: str, results, seed: int) -> ReportDocument:
    from obstructa import __version__
    return ReportDocument(command=command, seed=seed, results=results,
                          engine_version=__version__)


def load_document(path: str):
    """Dispatch on the double suffix; returns the typed document."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    name = str(path)
    if name.endswith(SUFFIXES["algebra"]):
        return parse_algebra(text)
    if name.endswith(SUFFIXES["geometry"]):
        return parse_geometry(text)
    if name.endswith(SUFFIXES["certificate"]):
        return parse_certificate(text)
    if name.endswith(SUFFIXES["report"]):
        return parse_report(text)
    raise InputError(f"unrecognized document suffix on {path!r}; known: "
                     + ", ".join(sorted(SUFFIXES.values())))
