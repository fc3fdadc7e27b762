"""Scenario files: replayable inputs for risk sweeps and dominance checks.

A scenario file is plain text combining key = value metadata with
labeled blocks of comma separated numeric rows:

    [meta]
    d = 0.5
    [C]
    4.0,1.0
    1.0,2.0
    [beta]
    1.0,-1.0
    [H]
    1.0,0.0
    [h]
    0.0

Blocks C and beta are required; H and h come together and are optional.
Lines starting with '#' are comments. Numbers are written with full
round-trip precision so write-then-read is exact.
"""

from __future__ import annotations

import numpy as np

from .errors import CsvParseError
from .logit import LinearRestriction
from .risk import RiskScenario

__all__ = ["load_scenario", "save_scenario"]


def save_scenario(path, scenario: RiskScenario, d: float | None = None):
    """Write a scenario (and optionally a biasing parameter) to a file."""
    lines = ["[meta]"]
    lines.append(f"m = {scenario.m}")
    if d is not None:
        lines.append(f"d = {float(d)!r}")
    lines.append("[C]")
    lines.extend(",".join(repr(float(v)) for v in row) for row in scenario.C)
    lines.append("[beta]")
    lines.append(",".join(repr(float(v)) for v in scenario.beta_true))
    if scenario.restriction is not None:
        lines.append("[H]")
        lines.extend(
            ",".join(repr(float(v)) for v in row) for row in scenario.restriction.H
        )
        lines.append("[h]")
        lines.append(",".join(repr(float(v)) for v in scenario.restriction.h))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def _parse_blocks(path):
    sections: dict[str, list[list[float]]] = {}
    meta: dict[str, str] = {}
    current = None
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if text.startswith("[") and text.endswith("]"):
                current = text[1:-1].strip()
                if current != "meta":
                    sections.setdefault(current, [])
                continue
            if current is None:
                raise CsvParseError(
                    f"{path}:{lineno}: data before any section header", row=lineno
                )
            if current == "meta":
                if "=" not in text:
                    raise CsvParseError(
                        f"{path}:{lineno}: expected 'key = value'", row=lineno
                    )
                key, _, value = text.partition("=")
                meta[key.strip()] = value.strip()
                continue
            try:
                sections[current].append([float(v) for v in text.split(",")])
            except ValueError:
                raise CsvParseError(
                    f"{path}:{lineno}: cannot parse numeric row {text!r}", row=lineno
                ) from None
    return meta, sections


def load_scenario(path) -> tuple[RiskScenario, float | None]:
    """Read a scenario file; returns the scenario and the d from [meta], if any."""
    meta, sections = _parse_blocks(path)
    for required in ("C", "beta"):
        if required not in sections or not sections[required]:
            raise CsvParseError(f"{path}: missing required section [{required}]")
    C = np.array(sections["C"])
    beta_rows = sections["beta"]
    beta = np.array(beta_rows[0] if len(beta_rows) == 1 else [r[0] for r in beta_rows])
    restriction = None
    if "H" in sections:
        if "h" not in sections or not sections["h"]:
            raise CsvParseError(f"{path}: section [H] present but [h] missing")
        H = np.array(sections["H"])
        h_rows = sections["h"]
        h = np.array(h_rows[0] if len(h_rows) == 1 else [r[0] for r in h_rows])
        restriction = LinearRestriction(H, h)
    d = float(meta["d"]) if "d" in meta else None
    return RiskScenario(C=C, beta_true=beta, restriction=restriction), d
