"""Reading and writing problem files.

A problem file is a UTF-8 JSON object::

    {"version": 1, "kind": "pauli", "q1": [...4...], "q2": [...4...], "p1": 0.5}
    {"version": 1, "kind": "generalized", "d": 3, "q1": [...9...], "q2": [...9...], "p1": 0.5}

Probability arrays whose sum is off by at most 1e-9 are renormalized
silently, up to 1e-6 with a logged warning, and rejected beyond that.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np

from .channels import GeneralizedPauliChannel, PauliChannel, PriorPair
from .discrim import DiscriminationProblem
from .exceptions import DimensionError, PauliDiscrimError, ValidationError

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
SILENT_DRIFT = 1e-9
MAX_DRIFT = 1e-6
KINDS = ("pauli", "generalized")


class FormatError(PauliDiscrimError):
    """The file cannot be read or does not have the expected structure."""


def _number(obj: dict, key: str) -> float:
    val = obj.get(key)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise FormatError(f"field {key!r} must be a number")
    return float(val)


def _prob_array(obj: dict, key: str, size: int) -> np.ndarray:
    val = obj.get(key)
    if not isinstance(val, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in val
    ):
        raise FormatError(f"field {key!r} must be an array of numbers")
    q = np.array(val, dtype=float)
    if q.size != size:
        raise DimensionError(f"{key} must have {size} entries, got {q.size}")
    if not np.all(np.isfinite(q)):
        raise ValidationError(f"{key} has non-finite entries")
    if np.any(q < 0):
        raise ValidationError(f"{key} has negative entries")
    total = math.fsum(q)
    drift = abs(total - 1.0)
    if drift > MAX_DRIFT:
        raise ValidationError(f"{key} does not sum to 1 (sum = {total:.9g})")
    if drift > SILENT_DRIFT:
        log.warning("%s sums to %.12g; renormalizing", key, total)
    return q / total


def problem_from_dict(obj: Any) -> DiscriminationProblem:
    """Build a :class:`DiscriminationProblem` from a parsed problem file."""
    if not isinstance(obj, dict):
        raise FormatError("problem file must contain a JSON object")
    version = obj.get("version")
    if version != FORMAT_VERSION or isinstance(version, bool):
        raise FormatError(f"unsupported or missing version {version!r}; expected {FORMAT_VERSION}")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise FormatError(f"field 'kind' must be one of {KINDS}, got {kind!r}")
    if kind == "generalized":
        d = obj.get("d")
        if isinstance(d, bool) or not isinstance(d, int):
            raise FormatError("field 'd' must be an integer for kind 'generalized'")
        if d < 2:
            raise DimensionError(f"d must be >= 2, got {d}")
    else:
        if "d" in obj and obj["d"] != 2:
            raise DimensionError("kind 'pauli' requires d = 2")
        d = 2
    size = d * d
    q1 = _prob_array(obj, "q1", size)
    q2 = _prob_array(obj, "q2", size)
    p1 = _number(obj, "p1")
    if not 0.0 <= p1 <= 1.0:
        raise ValidationError(f"p1 must lie in [0, 1], got {p1}")
    if kind == "pauli":
        ch1, ch2 = PauliChannel(q1), PauliChannel(q2)
    else:
        ch1, ch2 = GeneralizedPauliChannel(d, q1), GeneralizedPauliChannel(d, q2)
    return DiscriminationProblem(ch1, ch2, PriorPair(p1))


def read_problem_dict(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def load_problem(path) -> DiscriminationProblem:
    return problem_from_dict(read_problem_dict(path))


def problem_to_dict(problem: DiscriminationProblem) -> dict:
    out: dict[str, Any] = {"version": FORMAT_VERSION}
    if isinstance(problem.channel1, PauliChannel):
        out["kind"] = "pauli"
    else:
        out["kind"] = "generalized"
        out["d"] = problem.d
    out["q1"] = problem.channel1.probs.tolist()
    out["q2"] = problem.channel2.probs.tolist()
    out["p1"] = problem.priors.p1
    return out


def save_problem(problem: DiscriminationProblem, path) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(problem), indent=2) + "\n", encoding="utf-8")
