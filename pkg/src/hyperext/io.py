"""Arrangement files and JSON/DOT serialisation of results.

An arrangement file reads::

    {"dim": 2, "field": "Q",
     "hyperplanes": [{"normal": ["1", "0"], "offset": "0"}, ...]}

``field`` is ``"Q"`` or ``{"p": prime}``; the order of ``hyperplanes`` is the
default total order of the labels.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal, Optional, Sequence, Union

import structlog
from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError
from sympy import isprime

from hyperext.adjoint import AdjointData, Provenance
from hyperext.arrangement import (
    Arrangement,
    DuplicateHyperplaneError,
    InvariantBundle,
    SemiLattice,
)
from hyperext.exactq import GF, QQ, Hyperplane, ScalarField, Scalar, format_rational
from hyperext.extension import ClassificationReport
from hyperext.restriction import RestrictionReport
from hyperext.utils import format_polynomial

log = structlog.get_logger()

Number = Union[StrictInt, StrictStr]


class ArrangementFileError(ValueError):
    """An arrangement file that cannot be read, with the offending position."""

    def __init__(self, position: str, message: str):
        super().__init__(f"{position}: {message}")
        self.position = position
        self.message = message


class PrimeFieldSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: StrictInt


class ProvenanceSpec(BaseModel):
    kind: Literal["u", "v"]
    source: list[Number]


class HyperplaneSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    normal: list[Number]
    offset: Number = "0"
    label: Optional[StrictInt] = None
    provenance: Optional[ProvenanceSpec] = None


class ArrangementFile(BaseModel):
    """Schema of an arrangement file."""

    model_config = ConfigDict(extra="forbid")

    dim: StrictInt = Field(ge=0)
    field: Union[Literal["Q"], PrimeFieldSpec] = "Q"
    hyperplanes: list[HyperplaneSpec] = Field(default_factory=list)


def _position(loc: Sequence[Union[str, int]]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_arrangement(text: str, source: str = "<string>") -> Arrangement:
    """Parse and canonicalise the JSON text of an arrangement file.

    Raises:
        ArrangementFileError: On a JSON syntax error (``line:col``), a schema
            violation or a semantic error (dotted field path).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArrangementFileError(f"{e.lineno}:{e.colno}", f"invalid JSON in {source}: {e.msg}") from e
    try:
        spec = ArrangementFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ArrangementFileError(_position(first["loc"]), first["msg"]) from e

    if isinstance(spec.field, PrimeFieldSpec):
        if not isprime(spec.field.p):
            raise ArrangementFileError("field.p", f"{spec.field.p} is not a prime")
        fld = GF(spec.field.p)
    else:
        fld = QQ

    hyperplanes: list[Hyperplane] = []
    for k, h in enumerate(spec.hyperplanes):
        where = f"hyperplanes.{k}"
        if len(h.normal) != spec.dim:
            raise ArrangementFileError(f"{where}.normal", f"expected {spec.dim} entries, got {len(h.normal)}")
        try:
            normal = fld.vector(h.normal)
            offset = fld.coerce(h.offset)
        except (ValueError, ZeroDivisionError) as e:
            raise ArrangementFileError(where, str(e)) from e
        hyperplane = Hyperplane(normal, offset, fld).canonicalize()
        if hyperplane.is_degenerate:
            raise ArrangementFileError(f"{where}.normal", "zero normal")
        if hyperplane in hyperplanes:
            first = hyperplanes.index(hyperplane)
            raise ArrangementFileError(where, f"duplicate of hyperplanes.{first}")
        hyperplanes.append(hyperplane)

    labels: tuple[int, ...] = ()
    if spec.hyperplanes and all(h.label is not None for h in spec.hyperplanes):
        labels = tuple(h.label for h in spec.hyperplanes)
    try:
        arrangement = Arrangement(spec.dim, tuple(hyperplanes), labels, fld)
    except DuplicateHyperplaneError as e:
        raise ArrangementFileError("hyperplanes", str(e)) from e
    except ValueError as e:
        raise ArrangementFileError("hyperplanes.label", str(e)) from e
    log.debug(f"Loaded {len(arrangement)} hyperplanes in dimension {spec.dim} from {source}")
    return arrangement


def load_arrangement(path: Union[str, Path]) -> Arrangement:
    """Read an arrangement file; see :func:`parse_arrangement`."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ArrangementFileError(str(path), e.strerror or str(e)) from e
    return parse_arrangement(text, str(path))


def format_scalar(value: Scalar) -> str:
    return format_rational(value)


def format_vector(values: Sequence[Scalar]) -> list[str]:
    return [format_scalar(v) for v in values]


def field_to_json(fld: ScalarField) -> Union[str, dict[str, int]]:
    return "Q" if fld.modulus is None else {"p": fld.modulus}


def arrangement_to_dict(
    arrangement: Arrangement, provenance: Optional[Sequence[Provenance]] = None
) -> dict[str, Any]:
    """The file representation of ``arrangement``.

    Labels are written only when they differ from ``1..m``.
    """
    default_labels = arrangement.labels == tuple(range(1, len(arrangement) + 1))
    hyperplanes = []
    for k, (label, h) in enumerate(zip(arrangement.labels, arrangement.hyperplanes)):
        entry: dict[str, Any] = {"normal": format_vector(h.normal), "offset": format_scalar(h.offset)}
        if not default_labels:
            entry["label"] = label
        if provenance is not None:
            entry["provenance"] = {"kind": provenance[k].kind, "source": format_vector(provenance[k].source)}
        hyperplanes.append(entry)
    return {"dim": arrangement.dim, "field": field_to_json(arrangement.field), "hyperplanes": hyperplanes}


def dumps(payload: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def dump_arrangement(arrangement: Arrangement, provenance: Optional[Sequence[Provenance]] = None) -> str:
    return dumps(arrangement_to_dict(arrangement, provenance))


def save_arrangement(
    arrangement: Arrangement, path: Union[str, Path], provenance: Optional[Sequence[Provenance]] = None
) -> None:
    Path(path).write_text(dump_arrangement(arrangement, provenance))


def _label_text(labels: Sequence[int]) -> str:
    return "{" + ",".join(str(lab) for lab in labels) + "}"


def lattice_to_dict(lattice: SemiLattice) -> dict[str, Any]:
    mobius = lattice.mobius_row(0)
    return {
        "elements": [
            {
                "index": i,
                "dim": flat.dim,
                "labels": list(lattice.labels(i)),
                "point": format_vector(flat.point),
                "mobius": mobius[i],
            }
            for i, flat in enumerate(lattice.flats)
        ],
        "covers": [list(edge) for edge in lattice.edges()],
    }


def lattice_to_dot(lattice: SemiLattice, name: str = "L") -> str:
    """DOT digraph of the Hasse diagram, one node per flat."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, flat in enumerate(lattice.flats):
        lines.append(f'  n{i} [label="dim={flat.dim}; labels={_label_text(lattice.labels(i))}"];')
    for i, j in lattice.edges():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bundle_to_dict(bundle: InvariantBundle) -> dict[str, Any]:
    return {
        "chi": format_polynomial(bundle.chi),
        "whitney": [list(row) for row in bundle.whitney.grid],
        "cij": [list(row) for row in bundle.cij],
        "wPlus": list(bundle.w_plus),
        "W": list(bundle.W),
        "faces": list(bundle.faces),
        "r": bundle.regions,
        "doubly": [list(row) for row in bundle.doubly],
    }


def adjoint_to_dict(adjoint: AdjointData) -> dict[str, Any]:
    return {
        "induced": arrangement_to_dict(adjoint.induced, adjoint.provenance),
        "vertices": [format_vector(v) for v in adjoint.vertices],
        "lines": [format_vector(u) for u in adjoint.lines],
        "part0": list(adjoint.part0),
        "part1": list(adjoint.part1),
        "sigma": arrangement_to_dict(adjoint.sigma),
        "bar": arrangement_to_dict(adjoint.bar),
    }


def classification_to_dict(report: ClassificationReport) -> dict[str, Any]:
    strata = []
    for stratum in report.strata:
        entry = bundle_to_dict(stratum.invariants)
        entry.update(
            index=stratum.index,
            dim=stratum.dim,
            labels=list(stratum.labels),
            representative=format_vector(stratum.representative),
            class_id=stratum.class_id,
            degeneracy=stratum.degeneracy.value,
            flagged=[list(term) for term in stratum.flagged_terms],
        )
        strata.append(entry)
    return {
        "strata": strata,
        "classes": report.class_count,
        "order": [list(pair) for pair in report.order],
        "monotonicityViolations": list(report.monotonicity_violations),
    }


def restriction_report_to_dict(report: RestrictionReport) -> dict[str, Any]:
    entries = []
    for entry in report.entries:
        payload = bundle_to_dict(entry.invariants)
        payload.update(
            index=entry.index,
            dim=entry.flat.dim,
            labels=list(entry.labels),
            representative=format_vector(entry.representative),
            degeneracy=entry.degeneracy.value,
            lattice_size=entry.lattice_size,
            constant=entry.constant,
        )
        entries.append(payload)
    return {"seed": report.seed, "strata": entries, "order": [list(pair) for pair in report.order]}
