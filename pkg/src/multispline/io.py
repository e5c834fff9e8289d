"""File formats: basis JSON, slice-table CSV, measurement and curve CSV.

All rationals are serialized as decimal strings so arbitrary precision
survives the round trip; all floats are printed with 17 significant
digits so output is reproducible bit for bit.
"""

from __future__ import annotations

import csv
import io as _io
import json

from .builder import GeneratorSet
from .piecewise import PiecewisePoly, Q


def fmt_float(x):
    return f"{float(x):.17g}"


def _frac_pair(x):
    x = Q(x)
    return [str(x.numerator), str(x.denominator)]


def basis_to_json(gs):
    post = None
    if gs.postprocess is not None:
        post = [
            [
                {"coeff": _frac_pair(c), "channel": n, "shift": k}
                for c, n, k in records
            ]
            for records in gs.postprocess
        ]
    return {
        "degrees": list(gs.degrees),
        "generators": [g.to_json() for g in gs.gens],
        "postprocess": post,
    }


def basis_from_json(obj):
    post = None
    if obj.get("postprocess") is not None:
        post = tuple(
            tuple(
                (Q(int(r["coeff"][0]), int(r["coeff"][1])), r["channel"], r["shift"])
                for r in records
            )
            for records in obj["postprocess"]
        )
    return GeneratorSet(
        tuple(obj["degrees"]),
        tuple(PiecewisePoly.from_json(g) for g in obj["generators"]),
        postprocess=post,
        channels=tuple(obj["channels"]) if obj.get("channels") else None,
    )


def save_basis(gs, path):
    obj = basis_to_json(gs)
    if gs.channels:
        obj["channels"] = list(gs.channels)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def load_basis(path):
    with open(path) as fh:
        return basis_from_json(json.load(fh))


def slice_table_csv(gs):
    """One row per generator slice, monomial coefficient columns."""
    width = gs.max_degree() + 1
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["generator", "k"] + [f"x^{j}" for j in range(width)])
    for i, g in enumerate(gs.gens):
        for k, p in g.slices():
            row = [f"eta{i + 1}", k]
            row += [str(p[j]) if j < len(p) else "0" for j in range(width)]
            w.writerow(row)
    return out.getvalue()


def write_measurements_csv(path, channels):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k"] + [f"g{i + 1}" for i in range(len(channels))])
        for k in range(len(channels[0])):
            w.writerow([k] + [fmt_float(ch[k]) for ch in channels])


def read_measurements_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or not rows[0] or rows[0][0].strip() != "k":
        raise ValueError("measurements CSV must have a 'k, g1, ...' header")
    n_ch = len(rows[0]) - 1
    if n_ch < 1:
        raise ValueError("measurements CSV has no data columns")
    chans = [[] for _ in range(n_ch)]
    for row in rows[1:]:
        if not row:
            continue
        for i in range(n_ch):
            chans[i].append(float(row[i + 1]))
    return chans


def curve_csv(xs, ys_per_dim, labels=None):
    """Canonical dense-curve CSV; identical bytes for identical input."""
    labels = labels or [f"f{i + 1}" if len(ys_per_dim) > 1 else "f" for i in range(len(ys_per_dim))]
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x"] + labels)
    for i, x in enumerate(xs):
        w.writerow([fmt_float(x)] + [fmt_float(ys[i]) for ys in ys_per_dim])
    return out.getvalue()
