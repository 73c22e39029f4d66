"""Request parsing, dispatch and report serialization.

Input document (UTF-8 JSON)::

    {
      "group": {"cyclic_orders": [4]},
      "distributions": {"Y": {"probs": {"[2]": "1"}}, "X": {...}},
      "command": "analyze",
      "sample_count": 1000,          # sample only
      "seed": 7,                     # sample only
      "oracle": false,               # optional; analyze and fixed-points
      "circle": {"support": ["1/4", "1/6"], "nonrational": false}   # circle only
    }

Element keys are residue arrays such as ``"[0,2]"``; probabilities are
``"p/q"`` (or integer) strings. Reports use canonical key order and
``"p/q"`` strings for every rational.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .analysis import (
    FINITE_CYCLIC,
    circle_classify,
    embed_circle_support,
    fixed_point_space,
    independence_check,
    invariance_subgroup,
    is_fixed_point,
    lambda_set,
    stabilizer,
    verify_converse,
    verify_forward,
)
from .errors import PreconditionFailed, TheoremViolation, ValidationError
from .groups import CircleRational, GroupElement, GroupSpec
from .measure import Distribution, tv_distance
from .oracle import AffineSet, oracle_fixed_points
from .sampling import GENERATOR_VERSION, empirical_shift_check, sample

REPORT_VERSION = 1
COMMANDS = ("analyze", "fixed-points", "independence", "sample", "circle")
PRECONDITION_NOT_MET = "precondition not met"
CIRCLE_EMBED_LIMIT = 100_000

_TOP_FIELDS = {"group", "distributions", "command", "sample_count", "seed", "oracle", "circle"}
_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class RequestError(ValidationError):
    """Validation failure tied to a location in the input document."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def element_key(x: GroupElement) -> str:
    return "[" + ",".join(str(r) for r in x.residues) + "]"


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    group: GroupSpec | None = None
    distributions: dict[str, Distribution] = field(default_factory=dict)
    sample_count: int | None = None
    seed: int | None = None
    oracle: bool = False
    circle_support: tuple[CircleRational, ...] = ()
    nonrational: bool = False

    def echo(self) -> dict[str, Any]:
        out: dict[str, Any] = {"command": self.command}
        if self.group is not None:
            out["group"] = {"cyclic_orders": list(self.group.cyclic_orders)}
        if self.distributions:
            out["distributions"] = {
                name: {"probs": {element_key(x): fmt_rational(p) for x, p in d.probs.items()}}
                for name, d in self.distributions.items()
            }
        if self.sample_count is not None:
            out["sample_count"] = self.sample_count
        if self.seed is not None:
            out["seed"] = self.seed
        if self.oracle:
            out["oracle"] = True
        if self.command == "circle":
            out["circle"] = {
                "support": [str(p) for p in self.circle_support],
                "nonrational": self.nonrational,
            }
        return out


def _require_type(value, types, where, what):
    if isinstance(value, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        raise RequestError(where, f"expected {what}")
    if not isinstance(value, types):
        raise RequestError(where, f"expected {what}")


def _check_fields(obj: dict, allowed: set[str], where: str):
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise RequestError(where, f"unknown field(s) {', '.join(unknown)}")


def _parse_group(doc: Any) -> GroupSpec:
    _require_type(doc, dict, "group", "an object")
    _check_fields(doc, {"cyclic_orders"}, "group")
    if "cyclic_orders" not in doc:
        raise RequestError("group.cyclic_orders", "missing")
    orders = doc["cyclic_orders"]
    _require_type(orders, list, "group.cyclic_orders", "an array of integers")
    for i, n in enumerate(orders):
        _require_type(n, int, f"group.cyclic_orders[{i}]", "an integer")
    try:
        return GroupSpec(tuple(orders))
    except ValidationError as exc:
        raise RequestError("group.cyclic_orders", str(exc)) from exc


def _parse_element_key(spec: GroupSpec, key: str, where: str) -> tuple[int, ...]:
    try:
        residues = json.loads(key)
    except json.JSONDecodeError:
        residues = None
    if not isinstance(residues, list) or not all(
        isinstance(r, int) and not isinstance(r, bool) for r in residues
    ):
        raise RequestError(where, f"element key {key!r} is not an integer array like \"[0,1]\"")
    if len(residues) != spec.rank:
        raise RequestError(where, f"element {key} has {len(residues)} residues, group has rank {spec.rank}")
    for r, n in zip(residues, spec.cyclic_orders):
        if not 0 <= r < n:
            raise RequestError(where, f"element {key} out of range for {spec}")
    return tuple(residues)


def _parse_rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise RequestError(where, f"probability {value!r} is not a \"p/q\" string")
    try:
        q = Fraction(value.replace(" ", ""))
    except ZeroDivisionError as exc:
        raise RequestError(where, "zero denominator") from exc
    if q < 0:
        raise RequestError(where, f"negative probability {value}")
    return q


def _parse_distribution(spec: GroupSpec, name: str, doc: Any) -> Distribution:
    where = f"distributions.{name}"
    _require_type(doc, dict, where, "an object")
    _check_fields(doc, {"probs"}, where)
    if "probs" not in doc:
        raise RequestError(f"{where}.probs", "missing")
    probs = doc["probs"]
    _require_type(probs, dict, f"{where}.probs", "an object mapping element keys to \"p/q\"")
    table: dict[tuple[int, ...], Fraction] = {}
    for key, value in probs.items():
        fw = f"{where}.probs[{key!r}]"
        residues = _parse_element_key(spec, key, fw)
        if residues in table:
            raise RequestError(fw, "duplicate element")
        table[residues] = _parse_rational(value, fw)
    total = sum(table.values(), Fraction(0))
    if total != 1:
        raise RequestError(f"{where}.probs", f"mass ≠ 1 (total is {fmt_rational(total)})")
    return Distribution(spec, table)


def _parse_circle(doc: Any) -> tuple[tuple[CircleRational, ...], bool]:
    _require_type(doc, dict, "circle", "an object")
    _check_fields(doc, {"support", "nonrational"}, "circle")
    support = doc.get("support", [])
    _require_type(support, list, "circle.support", "an array of \"p/q\" strings")
    points = []
    for i, s in enumerate(support):
        where = f"circle.support[{i}]"
        if not isinstance(s, str) or not _RATIONAL.match(s):
            raise RequestError(where, f"{s!r} is not a \"p/q\" string")
        try:
            points.append(CircleRational(Fraction(s.replace(" ", ""))))
        except ZeroDivisionError as exc:
            raise RequestError(where, "zero denominator") from exc
    nonrational = doc.get("nonrational", False)
    _require_type(nonrational, bool, "circle.nonrational", "a boolean")
    if not points and not nonrational:
        raise RequestError("circle.support", "empty support requires nonrational = true")
    return tuple(points), nonrational


def parse_request(text: str | bytes, command: str | None = None) -> AnalysisRequest:
    """Validate an input document; ``command`` (from the CLI) overrides the document's."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RequestError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    _require_type(doc, dict, "document", "a JSON object")
    _check_fields(doc, _TOP_FIELDS, "document")

    cmd = command if command is not None else doc.get("command")
    if cmd is None:
        raise RequestError("command", "missing")
    if cmd not in COMMANDS:
        raise RequestError("command", f"unknown command {cmd!r}; expected one of {', '.join(COMMANDS)}")

    sample_count = doc.get("sample_count")
    if sample_count is not None:
        _require_type(sample_count, int, "sample_count", "a positive integer")
        if sample_count < 1:
            raise RequestError("sample_count", "must be >= 1")
    seed = doc.get("seed")
    if seed is not None:
        _require_type(seed, int, "seed", "an unsigned 64-bit integer")
        if not 0 <= seed < 2**64:
            raise RequestError("seed", "must be an unsigned 64-bit integer")
    oracle = doc.get("oracle", False)
    _require_type(oracle, bool, "oracle", "a boolean")

    group = None
    distributions: dict[str, Distribution] = {}
    if "group" in doc:
        group = _parse_group(doc["group"])
    if "distributions" in doc:
        dists = doc["distributions"]
        _require_type(dists, dict, "distributions", "an object")
        _check_fields(dists, {"X", "Y"}, "distributions")
        if group is None:
            raise RequestError("group", "missing (required with distributions)")
        for name in sorted(dists):
            distributions[name] = _parse_distribution(group, name, dists[name])

    circle_support: tuple[CircleRational, ...] = ()
    nonrational = False
    if cmd == "circle":
        if "circle" not in doc:
            raise RequestError("circle", "missing")
        circle_support, nonrational = _parse_circle(doc["circle"])
    else:
        if "circle" in doc:
            raise RequestError("circle", f"only valid with the circle command, not {cmd}")
        if group is None:
            raise RequestError("group", "missing")
        if "Y" not in distributions:
            raise RequestError("distributions.Y", "missing")
        if cmd == "independence" and "X" not in distributions:
            raise RequestError("distributions.X", "required by the independence command")
        if cmd == "sample":
            if sample_count is None:
                raise RequestError("sample_count", "required by the sample command")
            if seed is None:
                raise RequestError("seed", "required by the sample command")

    return AnalysisRequest(
        command=cmd,
        group=group,
        distributions=distributions,
        sample_count=sample_count,
        seed=seed,
        oracle=oracle,
        circle_support=circle_support,
        nonrational=nonrational,
    )


@dataclass(frozen=True)
class AnalysisReport:
    data: dict[str, Any]
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines: list[str] = []
        _render_text(self.data, lines, "")
        return "\n".join(lines) + "\n"


def _render_text(obj: Any, lines: list[str], prefix: str):
    for key in sorted(obj):
        value = obj[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value:
            _render_text(value, lines, name + ".")
        else:
            lines.append(f"{name}: {json.dumps(value, sort_keys=True, ensure_ascii=False, separators=(',', ':'))}")


def _elements(xs) -> list[list[int]]:
    return [x.to_list() for x in xs]


def _basis_block(mu_Y: Distribution) -> dict[str, Any]:
    space = fixed_point_space(mu_Y)
    return {
        "dimension": space.dimension,
        "cosets": [{"representative": c[0].to_list(), "size": len(c)} for c in space.cosets],
    }


def _oracle_block(mu_Y: Distribution) -> dict[str, Any]:
    result = oracle_fixed_points(mu_Y)
    space = fixed_point_space(mu_Y)
    lifted = AffineSet.hull([d.vector() for d in space.basis()])
    agrees = lifted == result.affine and result.linear_dimension == space.dimension
    if not agrees:
        raise TheoremViolation("coset-lift fixed points disagree with the elimination oracle")
    return {
        "agrees": agrees,
        "linear_dimension": result.linear_dimension,
        "affine_dimension": result.affine_dimension,
    }


def run(request: AnalysisRequest) -> AnalysisReport:
    """Dispatch one request. Deterministic: equal requests give equal reports."""
    data: dict[str, Any] = {"report_version": REPORT_VERSION, "request": request.echo()}
    exit_code = 0
    cmd = request.command

    if cmd == "circle":
        cls = circle_classify(request.circle_support, request.nonrational)
        block: dict[str, Any] = {"kind": cls.kind}
        if cls.kind == FINITE_CYCLIC:
            block["N"] = cls.N
            block["subgroup_points"] = [str(p) for p in cls.subgroup_points]
            if cls.N <= CIRCLE_EMBED_LIMIT:
                embedded = embed_circle_support(request.circle_support, cls.N)
                block["embedded_invariance_is_whole"] = invariance_subgroup(embedded).is_whole()
        data["circle"] = block
        return AnalysisReport(data, exit_code)

    mu_Y = request.distributions["Y"]
    mu_X = request.distributions.get("X")
    verdicts: dict[str, Any] = {}

    if cmd in ("analyze", "fixed-points"):
        a = invariance_subgroup(mu_Y)
        data["lambda_indices"] = lambda_set(mu_Y).to_lists()
        data["a_subgroup"] = a.to_lists()
        data["fixed_point_basis"] = _basis_block(mu_Y)
        verdicts["haar_forced"] = a.is_whole()
        if request.oracle:
            data["oracle"] = _oracle_block(mu_Y)

    if mu_X is not None and cmd in ("analyze", "fixed-points", "independence", "sample"):
        fp = is_fixed_point(mu_X, mu_Y)
        verdicts["is_fixed_point"] = fp
        if cmd in ("analyze", "fixed-points"):
            stab = stabilizer(mu_X)
            data["stabilizer"] = stab.to_lists()
            if fp:
                verify_forward(mu_X, mu_Y)
                verdicts["forward_ok"] = True
                verdicts["independence_ok"] = independence_check(mu_X, mu_Y)
            if all(x in stab for x in mu_Y.support()):
                verdicts["converse_ok"] = verify_converse(mu_X, mu_Y)
        if cmd == "independence":
            try:
                verdicts["independence_ok"] = independence_check(mu_X, mu_Y)
            except PreconditionFailed:
                verdicts["independence_ok"] = PRECONDITION_NOT_MET
                exit_code = 1

    if cmd == "sample":
        n, seed = request.sample_count, request.seed
        if mu_X is not None:
            tv = empirical_shift_check(mu_X, mu_Y, n, seed)
            statistic = "tv(empirical law of X+Y, mu_X)"
        else:
            tv = tv_distance(sample(mu_Y, n, seed).to_distribution(), mu_Y)
            statistic = "tv(empirical law of Y, mu_Y)"
        data["monte_carlo"] = {
            "statistic": statistic,
            "tv_distance": fmt_rational(tv),
            "tv_distance_float": float(tv),
            "sample_count": n,
            "seed": seed,
            "generator": GENERATOR_VERSION,
        }

    data["verdicts"] = verdicts
    return AnalysisReport(data, exit_code)
