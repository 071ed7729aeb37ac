"""JSON and CSV formats for parameters, samples, densities, elements and measures.

* Alpha: JSON array of numbers (``[]`` for the empty parameter).
* ClassBSamples: CSV with header ``lambda,re,im``.
* DensityGrid: CSV with header ``t,value``.
* GroupElement: JSON ``{"n": n, "entries": [[re, im], ...]}`` in row-major order.
* CartanProfile: JSON array.
* Measure: JSON ``{"psi_at_e": x, "atoms": [{"alpha": [...], "weight": w}, ...]}``.

Floats are written with ``repr`` so files round-trip exactly.
"""
from __future__ import annotations

import csv
import io
import json
from typing import TextIO

import numpy as np

from .bochner import DiscreteParamMeasure
from .classb import ClassBSamples
from .group import GroupElement
from .measures import DensityGrid
from .params import Alpha, make_alpha


def alpha_to_json(alpha: Alpha) -> str:
    return json.dumps(list(alpha.values))


def alpha_from_json(text: str) -> Alpha:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("an Alpha is a JSON array of numbers")
    return make_alpha(data)


def parse_alpha(text: str) -> Alpha:
    """Comma-separated command-line form; ``""`` is the empty parameter."""
    text = text.strip()
    if text.startswith("["):
        return alpha_from_json(text)
    if not text:
        return make_alpha([])
    return make_alpha(float(v) for v in text.split(","))


def write_samples_csv(samples: ClassBSamples, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["lambda", "re", "im"])
    for lam, v in zip(samples.lambdas, samples.values):
        w.writerow([repr(float(lam)), repr(float(v.real)), repr(float(v.imag))])


def read_samples_csv(fh: TextIO) -> ClassBSamples:
    rows = list(csv.DictReader(fh))
    missing = {"lambda", "re", "im"} - set(rows[0] if rows else ())
    if missing:
        raise ValueError(f"samples CSV missing columns {sorted(missing)}")
    lam = [float(r["lambda"]) for r in rows]
    val = [complex(float(r["re"]), float(r["im"])) for r in rows]
    return ClassBSamples(np.asarray(lam), np.asarray(val))


def write_density_csv(grid: DensityGrid, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t", "value"])
    for t, v in zip(grid.t, grid.values):
        w.writerow([repr(float(t)), repr(float(v))])


def read_density_csv(fh: TextIO) -> DensityGrid:
    """Inverse of :func:`write_density_csv`; ``#`` comment lines are skipped."""
    rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    t = np.asarray([float(r["t"]) for r in rows])
    v = np.asarray([float(r["value"]) for r in rows])
    if t.size < 2:
        raise ValueError("density CSV needs at least two rows")
    step = float(np.mean(np.diff(t)))
    if not np.allclose(np.diff(t), step, rtol=1e-9, atol=1e-12):
        raise ValueError("density CSV grid is not uniform")
    return DensityGrid(float(t[0]), step, v)


def element_to_dict(g: GroupElement) -> dict:
    flat = g.entries.ravel()
    return {"n": g.n, "entries": [[float(z.real), float(z.imag)] for z in flat]}


def element_from_dict(d: dict) -> GroupElement:
    n = int(d["n"])
    pairs = np.asarray(d["entries"], dtype=float)
    if pairs.shape != (n * n, 2):
        raise ValueError(f"expected {n * n} [re, im] pairs")
    return GroupElement((pairs[:, 0] + 1j * pairs[:, 1]).reshape(n, n))


def element_to_json(g: GroupElement) -> str:
    return json.dumps(element_to_dict(g))


def element_from_json(text: str) -> GroupElement:
    return element_from_dict(json.loads(text))


def profile_to_json(lambdas) -> str:
    return json.dumps([float(x) for x in lambdas])


def profile_from_json(text: str) -> np.ndarray:
    lam = np.asarray(json.loads(text), dtype=float)
    if abs(lam.sum()) > 1e-8:
        raise ValueError("Cartan profile must sum to zero")
    return lam


def measure_to_dict(mu: DiscreteParamMeasure, psi_at_e: float | None = None) -> dict:
    return {
        "psi_at_e": 0.0 if psi_at_e is None else float(psi_at_e),
        "atoms": [{"alpha": list(a.values), "weight": float(w)} for a, w in zip(mu.atoms, mu.weights)],
    }


def measure_from_dict(d: dict) -> tuple[DiscreteParamMeasure, float]:
    atoms = d.get("atoms", [])
    mu = DiscreteParamMeasure.from_pairs((a["alpha"], a["weight"]) for a in atoms)
    return mu, float(d.get("psi_at_e", 0.0))


def measure_to_json(mu: DiscreteParamMeasure, psi_at_e: float | None = None) -> str:
    return json.dumps(measure_to_dict(mu, psi_at_e), indent=2)


def measure_from_json(text: str) -> tuple[DiscreteParamMeasure, float]:
    return measure_from_dict(json.loads(text))


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
