"""JSON / CSV / plain-text rendering.

Integers always travel as decimal strings so nothing is squeezed through
a float.  Every renderer returns newline-terminated text with a fixed key
order, so output is byte-for-byte reproducible.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .nc import NoncrossingPartition
from .series import FormalSeries, WordLengthExpansion

FORMATS = ("json", "csv", "plain")


def envelope(n_generators: int | None, kind: str, method: str, data: Any) -> dict:
    return {"n_generators": n_generators, "kind": kind, "method": method, "data": data}


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def expansion_to_data(e: WordLengthExpansion) -> dict:
    return {
        "order": e.order,
        "coefficients": {str(length): str(c) for length, c in e.items()},
    }


def expansion_from_data(data: dict) -> WordLengthExpansion:
    mapping = {int(k): int(v) for k, v in data["coefficients"].items()}
    return WordLengthExpansion.from_mapping(int(data["order"]), mapping)


def series_to_data(s: FormalSeries) -> dict:
    return {"max_order": s.max_order, "coefficients": [str(c) for c in s.coefficients]}


def series_from_data(data: dict) -> FormalSeries:
    coeffs = [int(c) for c in data["coefficients"]]
    if len(coeffs) != int(data["max_order"]):
        raise ValueError("max_order does not match the number of coefficients")
    return FormalSeries(coeffs)


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def expansion_csv(e: WordLengthExpansion) -> str:
    return _csv(["length", "coefficient"], ((length, c) for length, c in e.items()))


def series_csv(s: FormalSeries) -> str:
    return _csv(["order", "coefficient"], enumerate(s.coefficients, start=1))


def expansion_plain(e: WordLengthExpansion) -> str:
    terms = []
    for length, c in sorted(e.items(), reverse=True):
        if not c:
            continue
        basis = "e" if length == 0 else f"X_{length}"
        terms.append(basis if c == 1 else f"{c} {basis}")
    return f"G^{e.order} = " + " + ".join(terms) + "\n"


def series_plain(s: FormalSeries) -> str:
    return "".join(f"{k} {c}\n" for k, c in enumerate(s.coefficients, start=1))


def nc_rows(partitions: list[NoncrossingPartition], mobius: dict | None) -> list[dict]:
    rows = []
    for pi in partitions:
        row = {"blocks": str(pi)}
        if mobius is not None:
            row["mobius"] = str(mobius[pi])
        rows.append(row)
    return rows


def nc_plain(rows: list[dict]) -> str:
    lines = [r["blocks"] + (f"\t{r['mobius']}" if "mobius" in r else "") for r in rows]
    lines.append(f"count: {len(rows)}")
    return "\n".join(lines) + "\n"


def nc_csv(rows: list[dict]) -> str:
    if rows and "mobius" in rows[0]:
        return _csv(["partition", "mobius"], ((r["blocks"], r["mobius"]) for r in rows))
    return _csv(["partition"], ((r["blocks"],) for r in rows))
