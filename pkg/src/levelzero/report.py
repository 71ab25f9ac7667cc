"""Deterministic JSON and CSV rendering of reports."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction


def rat(x) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def vec(v) -> list:
    return [rat(x) for x in v]


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def s_table_csv(report: dict) -> str:
    """Flattened S_phi table: one row per (facet, class)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["facet", "parameter", "class"])
    for facet in sorted(report.get("S", {})):
        for row in report["S"][facet]:
            w.writerow([facet, " ".join(row["parameter"]), " ".join(row["class"])])
    return buf.getvalue()


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
