"""JSON state files and report rendering.

A state file is a JSON object::

    {"dims": [dA, dB], "mixture": [{"w": 0.3, "i": 0, "j": 0}, ...]}
    {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}

with exactly one of ``mixture`` / ``matrix``.  Optional ``basisA`` and
``basisB`` give measurement bases as lists of columns, each column a list of
``[re, im]`` pairs; the computational basis is the default.  Optional
``labelsA`` / ``labelsB`` attach observable eigenvalues to the outcomes.
"""

from dataclasses import dataclass
import json

from jsonschema import Draft202012Validator
import numpy as np

from .core import BipartiteState, MAX_SUBSYSTEM_DIM, make_classical_mixture
from .errors import SchemaError, ValidationError
from .infomeasures import build_report
from .measurement import ProjectiveBasis

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_SQUARE = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "minItems": 1, "items": _COMPLEX},
}
_LABELS = {"type": "array", "minItems": 1, "items": {"type": "number"}}

STATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["dims"],
    "additionalProperties": False,
    "properties": {
        "dims": {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {"type": "integer", "minimum": 1, "maximum": MAX_SUBSYSTEM_DIM},
        },
        "mixture": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["w", "i", "j"],
                "additionalProperties": False,
                "properties": {
                    "w": {"type": "number"},
                    "i": {"type": "integer", "minimum": 0},
                    "j": {"type": "integer", "minimum": 0},
                },
            },
        },
        "matrix": _SQUARE,
        "basisA": _SQUARE,
        "basisB": _SQUARE,
        "labelsA": _LABELS,
        "labelsB": _LABELS,
    },
}

_VALIDATOR = Draft202012Validator(STATE_SCHEMA)


def _pointer(path):
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in path)


@dataclass(frozen=True)
class StateSpec:
    """A parsed, validated state file."""

    dims: tuple
    state: BipartiteState
    basis_a: ProjectiveBasis
    basis_b: ProjectiveBasis
    source: str  # "mixture" or "matrix"


def _complex_array(rows, pointer):
    try:
        arr = np.array([[complex(re, im) for re, im in row] for row in rows])
    except ValueError as exc:
        raise SchemaError(pointer, str(exc)) from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise SchemaError(pointer, "rows must all have the same length as the number of rows")
    return arr


def _basis(doc, key, dim):
    labels = doc.get("labels" + key[-1])
    if labels is not None and len(labels) != dim:
        raise ValidationError("labels", f"{key[-1]} has {dim} outcomes but {len(labels)} labels")
    if key not in doc:
        return ProjectiveBasis.computational(dim, labels)
    columns = _complex_array(doc[key], "/" + key)
    if columns.shape[0] != dim:
        raise ValidationError("basis dimension", f"{key} has dimension {columns.shape[0]}, expected {dim}")
    return ProjectiveBasis(columns.T, labels)


def parse_state_document(doc):
    """Validate a decoded JSON document and build its :class:`StateSpec`.

    Raises:
        SchemaError: structural problem, with a JSON pointer to the field.
        ValidationError: the described state or basis breaks an invariant.
    """
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(_pointer(err.absolute_path), err.message)
    if ("mixture" in doc) == ("matrix" in doc):
        raise SchemaError("", "exactly one of 'mixture' or 'matrix' is required")
    dim_a, dim_b = doc["dims"]
    if "mixture" in doc:
        terms = [(t["w"], t["i"], t["j"]) for t in doc["mixture"]]
        state = make_classical_mixture(dim_a, dim_b, terms)
        source = "mixture"
    else:
        m = _complex_array(doc["matrix"], "/matrix")
        state = BipartiteState.from_matrix(m, dim_a, dim_b)
        source = "matrix"
    return StateSpec(
        dims=(dim_a, dim_b),
        state=state,
        basis_a=_basis(doc, "basisA", dim_a),
        basis_b=_basis(doc, "basisB", dim_b),
        source=source,
    )


def parse_state_file(path):
    """Read and validate a JSON state file.

    Raises:
        OSError: the file cannot be read.
        SchemaError: invalid JSON or schema violation.
        ValidationError: the described state breaks an invariant.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from None
    return parse_state_document(doc)


def _rows(cond):
    return [None if r is None else r.tolist() for r in cond.rows]


def report_to_dict(report):
    """Plain-JSON view of a report; undefined values become ``None``."""
    j = report.joint
    return {
        "dims": list(report.dims),
        "order": report.order,
        "h_a": report.h_a,
        "h_b": report.h_b,
        "h_b_given_a": report.h_b_given_a,
        "h_a_given_b": report.h_a_given_b,
        "mi_classical": report.mi_classical,
        "s_a": report.s_a,
        "s_b": report.s_b,
        "s_ab": report.s_ab,
        "mi_quantum": report.mi_quantum,
        "ratio_a": report.ratio_a,
        "ratio_b": report.ratio_b,
        "c_measure": report.c_measure,
        "t_measure": report.t_measure,
        "cover_thomas": report.cover_thomas,
        "marginals_identical": report.marginals_identical,
        "functional_b_of_a": report.functional_b_of_a,
        "functional_a_of_b": report.functional_a_of_b,
        "annotations": list(report.annotations),
        "p_a": j.p_a.tolist(),
        "p_b": j.p_b.tolist(),
        "p_joint": j.p_joint.tolist(),
        "cond_b_given_a": _rows(report.cond_b_given_a),
        "cond_a_given_b": _rows(report.cond_a_given_b),
        "arrows_b_of_a": [list(a) for a in report.arrows("b_of_a")],
        "arrows_a_of_b": [list(a) for a in report.arrows("a_of_b")],
    }


def _num(x):
    return "UNDEFINED" if x is None else f"{x:.6f}"


def _vec(v):
    return "(" + ", ".join(f"{x:.6f}" for x in v) + ")"


def _yes(flag):
    return "yes" if flag else "no"


def render_text(report):
    j = report.joint
    first = "A" if report.order == "a_first" else "B"
    lines = [
        f"Bipartite state: {report.dims[0]} x {report.dims[1]}, {first} measures first",
        "",
        "Outcome distributions",
        f"  p^A = {_vec(j.p_a)}",
        f"  p^B = {_vec(j.p_b)}",
        "  p^AB =",
    ]
    lines += [f"    {_vec(row)}" for row in j.p_joint]
    for title, cond, given, target in (
        ("p^(B|A), row i given a_i", report.cond_b_given_a, "a", "b"),
        ("p^(A|B), row i given b_i", report.cond_a_given_b, "b", "a"),
    ):
        lines.append(f"  {title}:")
        for i, row in enumerate(cond.rows):
            lines.append(f"    {given}_{i}: {'UNDEFINED' if row is None else _vec(row)}")

    lines += [
        "",
        "Entropies (bits)",
        f"  H(A) = {_num(report.h_a)}",
        f"  H(B) = {_num(report.h_b)}",
        f"  H(B|A) = {_num(report.h_b_given_a)}",
        f"  H(A|B) = {_num(report.h_a_given_b)}",
        f"  S(A) = {_num(report.s_a)}",
        f"  S(B) = {_num(report.s_b)}",
        f"  S(AB) = {_num(report.s_ab)}",
        "",
        "Mutual information (bits)",
        f"  I(A:B) = {_num(report.mi_classical)}",
        f"  I(rho) = {_num(report.mi_quantum)}",
        "",
        "Correlation measures",
        f"  I/H(A) = {_num(report.ratio_a)}",
        f"  I/H(B) = {_num(report.ratio_b)}",
        f"  C(A,B) = {_num(report.c_measure)}",
    ]
    if report.marginals_identical:
        lines.append(f"  Cover-Thomas I/H(A) = {_num(report.cover_thomas)}")
    else:
        lines.append("  Cover-Thomas I/H(A) = n/a (marginals not identical)")
    t_line = f"  T(rho) = {_num(report.t_measure)}"
    if report.non_classical:
        t_line += "  [non-classical regime]"
    lines.append(t_line)

    lines += ["", "Functional dependence"]
    for head, flag, direction, src, dst in (
        ("B = f(A)", report.functional_b_of_a, "b_of_a", "a", "b"),
        ("A = f(B)", report.functional_a_of_b, "a_of_b", "b", "a"),
    ):
        lines.append(f"  {head}: {_yes(flag)}")
        for i, k, p in report.arrows(direction):
            arrow = f"    {src}_{i} -> {dst}_{k}"
            if p < 1.0 - 1e-9:
                arrow += f"  (p = {p:.6f})"
            lines.append(arrow)

    for side, labels in (("a", report.labels_a), ("b", report.labels_b)):
        if labels is not None:
            legend = ", ".join(f"{side}_{i} = {x:g}" for i, x in enumerate(labels))
            lines.append(f"  labels: {legend}")
    if report.annotations:
        lines += ["", "Notes"]
        if report.non_classical:
            lines.append("  T(rho) exceeds 1: non-classical regime, outside the classically correlated case")
    return "\n".join(lines) + "\n"


def run_report(spec, fmt="text", order="a_first"):
    """Build the report for a parsed spec and render it as text or JSON."""
    report = build_report(spec.state, spec.basis_a, spec.basis_b, order)
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"format must be 'text' or 'json', got {fmt!r}")
