"""Certificate files for K_{2,m}-avoiding colorings.

A certificate is a JSON document with three sections::

    {"format": "ramsey-forge-certificate/1",
     "header": {"c", "s", "num_colors", "provenance": {...}},
     "edges":  [colors of the canonical cross-part edges],
     "footer": {"target", "max_delta", "witness", "verdict", "edges_sha256"}}

``verify`` needs nothing but the file: it rebuilds the coloring from the
edge list and recomputes every footer field.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .coloring import AvoidanceCertificate, MultipartiteColoring, certify_avoidance
from .errors import InvalidInput

FORMAT = "ramsey-forge-certificate/1"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def edges_digest(edge_colors) -> str:
    return sha256_text(json.dumps(list(edge_colors), separators=(",", ":")))


def build_document(col: MultipartiteColoring, m: int, provenance: dict | None = None) -> dict:
    cert = certify_avoidance(col, m)
    edges = col.edge_colors()
    return {
        "format": FORMAT,
        "header": {
            "c": col.c,
            "s": col.s,
            "num_colors": col.num_colors,
            "provenance": provenance or {},
        },
        "edges": edges,
        "footer": _footer(cert, edges),
    }


def _footer(cert: AvoidanceCertificate, edges) -> dict:
    v1, v2, w = cert.witness
    return {
        "target": list(cert.target),
        "max_delta": cert.max_delta,
        "witness": {"v1": list(v1), "v2": list(v2), "color": w},
        "verdict": cert.verdict,
        "edges_sha256": edges_digest(edges),
    }


def dumps(doc: dict) -> str:
    header = json.dumps(doc["header"], indent=2)
    footer = json.dumps(doc["footer"], indent=2)
    edges = json.dumps(doc["edges"], separators=(",", ":"))
    return (
        "{\n"
        f'"format": {json.dumps(doc["format"])},\n'
        f'"header": {header},\n'
        f'"edges": {edges},\n'
        f'"footer": {footer}\n'
        "}\n"
    )


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"certificate is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise InvalidInput(f"not a {FORMAT} document")
    for key in ("header", "edges", "footer"):
        if key not in doc:
            raise InvalidInput(f"certificate lacks {key!r}")
    return doc


def read(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(doc))


def coloring_of(doc: dict) -> MultipartiteColoring:
    h = doc["header"]
    try:
        return MultipartiteColoring.from_edge_colors(int(h["c"]), int(h["s"]), int(h["num_colors"]), doc["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed certificate header or body: {exc}") from None


@dataclass
class Verification:
    certificate: AvoidanceCertificate
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems and self.certificate.avoided

    def to_dict(self) -> dict:
        cert = self.certificate
        v1, v2, w = cert.witness
        return {
            "target": list(cert.target),
            "max_delta": cert.max_delta,
            "witness": {"v1": list(v1), "v2": list(v2), "color": w},
            "verdict": cert.verdict,
            "problems": list(self.problems),
            "ok": self.ok,
        }


def verify(doc: dict, m: int | None = None) -> Verification:
    """Recompute a certificate from its edge list alone.

    ``m`` defaults to the footer's target. Any disagreement with the stored
    footer (hash, max delta, verdict) is listed in ``problems``.
    """
    col = coloring_of(doc)
    footer = doc["footer"]
    stored_target = footer.get("target")
    if m is None:
        if not (isinstance(stored_target, list) and len(stored_target) == 2):
            raise InvalidInput("footer has no usable target")
        m = int(stored_target[1])
    cert = certify_avoidance(col, m)
    problems = []
    if footer.get("edges_sha256") != edges_digest(doc["edges"]):
        problems.append("edge list does not match edges_sha256")
    if footer.get("max_delta") != cert.max_delta:
        problems.append(f"footer max_delta {footer.get('max_delta')} != recomputed {cert.max_delta}")
    if stored_target == [2, m] and footer.get("verdict") != cert.verdict:
        problems.append(f"footer verdict {footer.get('verdict')!r} != recomputed {cert.verdict!r}")
    return Verification(cert, problems)
