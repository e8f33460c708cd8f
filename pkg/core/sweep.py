"""Parallel Monte Carlo orchestration: pooled simulations and the sigma sweep.

Every work unit (cell) draws from its own generator, addressed by
(seed, key...), so results do not depend on the worker count or on the
order in which cells finish. Results are merged by cell key.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import ArgumentError
from .models import PropagationModel, ShadowingSpec
from .numerics import InversionConfig
from .simulate import Layout, TypicalUserBatch, draw_shadowing, sample_typical_users, stream
from .stats import KsResult, SirReference, empirical_cdf, ks_test

logger = logging.getLogger(__name__)

KS_ALPHA = 0.10


@dataclass(frozen=True)
class SweepCell:
    sigma_index: int
    realization: int
    sigma_db: float


@dataclass
class CellResult:
    """Outcome of one (sigma, realization) cell."""

    cell: SweepCell
    ks: KsResult


@dataclass
class SweepRow:
    sigma_db: float
    pass_fraction: float
    median_ks_d: float
    realizations: int
    results: list[KsResult] = field(default_factory=list, repr=False)


def _run_all(fn: Callable, keys: list, workers: int, callback: Callable | None = None) -> dict:
    """Evaluate ``fn`` on every key, in parallel, returning {key: result}."""
    results = {}
    if workers <= 1:
        for key in keys:
            results[key] = fn(key)
            if callback:
                callback(key, results[key])
        return results

    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, key): key for key in keys}
        for future, key in futures.items():
            results[key] = future.result()
            if callback:
                callback(key, results[key])
    return results


def simulate_pool(
    layout: Layout,
    prop: PropagationModel,
    shadow: ShadowingSpec,
    seed: int,
    stream_id: int,
    realizations: int,
    samples: int,
    workers: int = 1,
) -> TypicalUserBatch:
    """Pool ``samples`` users from each of ``realizations`` independent patterns."""

    def one(r: int) -> TypicalUserBatch:
        rng = stream(seed, stream_id, r)
        return sample_typical_users(layout.build(rng), prop, shadow, rng, samples)

    parts = _run_all(one, list(range(realizations)), workers)
    ordered = [parts[r] for r in range(realizations)]
    return TypicalUserBatch(
        L=np.concatenate([b.L for b in ordered]),
        f=np.concatenate([b.f for b in ordered]),
        sir=np.concatenate([b.sir for b in ordered]),
        sinr=np.concatenate([b.sinr for b in ordered]),
    )


class SweepOrchestrator:
    """K-S tests of simulated SIR against the Poisson model over a sigma grid."""

    def __init__(
        self,
        layout: Layout,
        prop: PropagationModel,
        realizations: int,
        samples: int,
        seed: int,
        workers: int = 1,
        alpha: float = KS_ALPHA,
        reference: Callable | None = None,
        inversion: InversionConfig | None = None,
    ):
        self.layout = layout
        self.prop = prop
        self.realizations = realizations
        self.samples = samples
        self.seed = seed
        self.workers = workers
        self.alpha = alpha
        self.reference = reference or SirReference(prop.beta, inversion)

    def run_cell(self, cell: SweepCell) -> CellResult:
        """One network realization: a pattern and one shadowing draw per station."""
        rng = stream(self.seed, cell.sigma_index, cell.realization)
        pattern = self.layout.build(rng)
        shadow = ShadowingSpec.log_normal(cell.sigma_db)
        gains = draw_shadowing(shadow, (len(pattern),), rng)
        batch = sample_typical_users(
            pattern, self.prop, shadow, rng, self.samples, station_gains=gains
        )
        result = ks_test(empirical_cdf(batch.sir), self.reference)
        logger.debug(
            "sigma_db=%g realization=%d D=%.4f p=%.3g",
            cell.sigma_db, cell.realization, result.statistic, result.p_value,
        )
        return CellResult(cell=cell, ks=result)

    def run(
        self, sigma_db_list: list[float], callback: Callable[[CellResult], Any] | None = None
    ) -> list[SweepRow]:
        cells = [
            SweepCell(i, r, float(sigma_db))
            for i, sigma_db in enumerate(sigma_db_list)
            for r in range(self.realizations)
        ]
        notify = (lambda _key, result: callback(result)) if callback else None
        results = _run_all(self.run_cell, cells, self.workers, notify)

        rows = []
        for i, sigma_db in enumerate(sigma_db_list):
            ks = [results[c].ks for c in cells if c.sigma_index == i]
            passed = sum(r.passes(self.alpha) for r in ks)
            row = SweepRow(
                sigma_db=float(sigma_db),
                pass_fraction=passed / len(ks),
                median_ks_d=float(np.median([r.statistic for r in ks])),
                realizations=len(ks),
                results=ks,
            )
            logger.info(
                "sigma_db=%g: %d/%d realizations pass, median D %.4f",
                row.sigma_db, passed, len(ks), row.median_ks_d,
            )
            rows.append(row)
        return rows


def convergence_sweep(
    layout: Layout,
    prop: PropagationModel,
    sigma_db_list: list[float],
    realizations: int,
    samples: int,
    seed: int,
    workers: int = 1,
    alpha: float = KS_ALPHA,
    inversion: InversionConfig | None = None,
) -> list[SweepRow]:
    """Pass fraction and median K-S distance of simulated SIR, per sigma_db."""
    if not sigma_db_list:
        raise ArgumentError("sigma_db_list must not be empty")
    if list(sigma_db_list) != sorted(sigma_db_list):
        raise ArgumentError("sigma_db_list must be ascending")
    orchestrator = SweepOrchestrator(
        layout, prop, realizations, samples, seed, workers, alpha, inversion=inversion
    )
    return orchestrator.run(list(sigma_db_list))
