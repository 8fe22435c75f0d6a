"""CSV instance files and JSON result documents."""

import csv
import json

import numpy as np


def read_matrix_csv(path, header=False):
    """Read a numeric CSV, one point (or row) per line."""
    data = np.loadtxt(path, delimiter=",", skiprows=1 if header else 0, ndmin=2)
    return np.asarray(data, dtype=np.float64)


def write_matrix_csv(path, X):
    np.savetxt(path, np.atleast_2d(X), delimiter=",", fmt="%.17g")


def parse_vector(text):
    try:
        values = [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise ValueError(f"cannot parse a vector from {text!r}") from None
    if not values:
        raise ValueError("empty vector")
    return np.asarray(values)


def read_vector(path, header=False):
    return read_matrix_csv(path, header=header).reshape(-1)


def _plane_doc(plane):
    if plane is None:
        return None
    return {"normal": [float(v) for v in plane.normal], "offset": float(plane.offset)}


def outcome_document(out, elapsed=None):
    """JSON-ready dict for a membership outcome.

    ``witness.point`` is the raw-frame hull point returned with the verdict.
    """
    elapsed = out.elapsed if elapsed is None else elapsed
    witness = None
    if out.is_witness:
        witness = {"point": [float(v) for v in out.iterate.coords],
                   "plane": _plane_doc(out.plane)}
    return {
        "status": out.status.value,
        "epsilon": out.epsilon,
        "iterations": int(out.iterations),
        "elapsed_ms": 1000.0 * elapsed,
        "coefficients": [[i, w] for i, w in out.iterate.coeffs],
        "witness": witness,
    }


def dump_json(doc, path=None):
    text = json.dumps(doc, indent=2)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text + "\n")
    return text


def write_trace_csv(trace, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "delta", "pivot", "eps_property"])
        for k, delta in enumerate(trace.deltas):
            pivot = trace.pivot_indices[k - 1] if k > 0 else ""
            flag = int(trace.eps_property_flags[k - 1]) if k > 0 else ""
            writer.writerow([k, repr(float(delta)), pivot, flag])
