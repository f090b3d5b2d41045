"""Per-module timing over growing corpus prefixes, and quadratic extrapolation."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .pipeline import PipelineConfig, TimingRecord, run_pipeline
from .preprocess import CorpusError, _input_files


@dataclass(frozen=True)
class QuadraticFit:
    a: float
    b: float
    c: float
    rss: float

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def predict(self, n: float) -> float:
        return self.a * n * n + self.b * n + self.c


def fit_quadratic(points: Iterable[tuple[float, float]]) -> QuadraticFit:
    """Least-squares ``a n^2 + b n + c`` by the normal equations.

    ``n`` is rescaled before forming the equations to keep them well
    conditioned, then the coefficients are mapped back.
    """
    pts = [(float(n), float(y)) for n, y in points]
    if len({n for n, _ in pts}) < 3:
        raise ValueError("need at least 3 distinct n values to fit a quadratic")
    n = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    scale = float(np.max(np.abs(n))) or 1.0
    x = n / scale
    design = np.column_stack([x * x, x, np.ones_like(x)])
    gram = design.T @ design
    if np.linalg.cond(gram) > 1e12:
        raise ValueError("normal equations are singular")
    a_s, b_s, c = np.linalg.solve(gram, design.T @ y)
    a, b = a_s / scale**2, b_s / scale
    resid = y - (a * n * n + b * n + c)
    return QuadraticFit(float(a), float(b), float(c), float(resid @ resid))


def totals_by_docs(records: Iterable[TimingRecord], module: str | None = None) -> list[tuple[int, float]]:
    sums: dict[int, float] = defaultdict(float)
    for r in records:
        if module is None or r.module == module:
            sums[r.docs] += r.seconds
    return sorted(sums.items())


def bench_scaling(config: PipelineConfig, k_steps: int, paths: Sequence[Path] | None = None) -> list[TimingRecord]:
    """Time the pipeline on the union of the first k of ``k_steps`` equal subsets."""
    if k_steps < 1:
        raise ValueError("k_steps must be positive")
    if paths is None:
        if config.input is None:
            raise CorpusError("no input given")
        paths = _input_files(Path(config.input))
    paths = list(paths)
    if not paths or len(paths) % k_steps:
        raise ValueError(f"{len(paths)} input files cannot be split into {k_steps} equal subsets")
    size = len(paths) // k_steps
    quiet = replace(config, out=None, bench=False, plot=False)
    records: list[TimingRecord] = []
    for k in range(1, k_steps + 1):
        records.extend(run_pipeline(quiet, paths[: k * size]).timings)
    return records
