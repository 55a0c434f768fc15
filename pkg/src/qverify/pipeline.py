"""Production-line winnowing: batch testing circuits against each other.

A factory emits circuits that equal an ideal circuit with probability
1 - f and are faulty (one replaced gate, worst-case distance >= eps)
with probability f.  Batches of odd size are compared pairwise; every
circuit losing more than half of its comparisons is discarded.  As
long as fewer than half the batch is faulty - which fails with
probability at most exp(-KL(1/2 || f) * n) - an error-free pairwise
tester removes exactly the faulty circuits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from .core import DEFAULT_QUBIT_CAP, Circuit, circuit_unitary
from .errors import DomainError, EvenBatch
from .metrics import worst_distance
from .seeding import rng_from_seed


def kl_divergence_binary(p: float, q: float) -> float:
    """KL divergence (nats) between Bernoulli(p) and Bernoulli(q).

    0*ln(0/q) counts as 0; q in {0, 1} is only allowed when p matches,
    otherwise the divergence is infinite and DomainError is raised.
    """
    if not 0.0 <= p <= 1.0 or not 0.0 <= q <= 1.0:
        raise DomainError(f"probabilities must lie in [0,1]: p={p}, q={q}")
    if q == 0.0 and p > 0.0:
        raise DomainError("KL(p || 0) is infinite for p > 0")
    if q == 1.0 and p < 1.0:
        raise DomainError("KL(p || 1) is infinite for p < 1")
    total = 0.0
    if p > 0.0:
        total += p * math.log(p / q)
    if p < 1.0:
        total += (1.0 - p) * math.log((1.0 - p) / (1.0 - q))
    return total


def batch_failure_bound(f: float, n: int) -> float:
    """Chernoff bound exp(-KL(1/2 || f) * n) on P(more than half faulty)."""
    if not 0.0 <= f < 0.5:
        raise DomainError(f"fault rate must lie in [0, 1/2), got {f}")
    if n % 2 == 0:
        raise DomainError(f"batch size must be odd, got {n}")
    if f == 0.0:
        return 0.0
    return math.exp(-kl_divergence_binary(0.5, f) * n)


class PairwiseTester(Protocol):
    """Verdict True means 'not equal'."""

    repetitions: int
    one_sided: bool

    def verdict(self, a: Circuit, b: Circuit, rng: np.random.Generator) -> bool: ...


class SwapShotTester:
    """Base tester: a single swap-test shot per pair.

    One-sided: equal circuits never fire.  Unitaries are cached per
    circuit object so repeated batch members cost one simulation.
    """

    one_sided = True
    repetitions = 1

    def __init__(self, cap: int = DEFAULT_QUBIT_CAP):
        self._cap = cap
        self._cache: dict[int, tuple[Circuit, np.ndarray]] = {}

    def _unitary(self, c: Circuit) -> np.ndarray:
        entry = self._cache.get(id(c))
        if entry is None or entry[0] is not c:
            entry = (c, circuit_unitary(c, cap=self._cap).matrix)
            self._cache[id(c)] = entry
        return entry[1]

    def shot_probability(self, a: Circuit, b: Circuit) -> float:
        ua, ub = self._unitary(a), self._unitary(b)
        overlap = complex(np.trace(ua.conj().T @ ub)) / ua.shape[0]
        return min(1.0, max(0.0, 0.5 - 0.5 * abs(overlap) ** 2))

    def verdict(self, a: Circuit, b: Circuit, rng: np.random.Generator) -> bool:
        return bool(rng.random() < self.shot_probability(a, b))


class MajorityTester:
    """Error-reduced wrapper around a base pairwise tester.

    Runs the base r = ceil(constant * ln(1/delta)) times.  For a
    two-sided base (success >= 2/3 per run) it takes the strict
    majority; a one-sided base never fires on equal pairs, so there
    the verdict is 'not equal' as soon as any run fires.
    """

    def __init__(self, base, delta: float, repetition_constant: float = 18.0):
        if not 0.0 < delta < 1.0:
            raise DomainError(f"delta must lie in (0, 1), got {delta}")
        self.base = base
        self.one_sided = bool(getattr(base, "one_sided", False))
        per_run = getattr(base, "repetitions", 1)
        self.majority_runs = max(1, math.ceil(repetition_constant * math.log(1.0 / delta)))
        self.repetitions = self.majority_runs * per_run

    def verdict(self, a: Circuit, b: Circuit, rng: np.random.Generator) -> bool:
        r = self.majority_runs
        if hasattr(self.base, "shot_probability") and self.base.repetitions == 1:
            # Distribution-identical shortcut: one binomial draw.
            fires = int(rng.binomial(r, self.base.shot_probability(a, b)))
        else:
            fires = sum(bool(self.base.verdict(a, b, rng)) for _ in range(r))
        if self.one_sided:
            return fires > 0
        return fires > r / 2


def majority_tester(base, delta: float, repetition_constant: float = 18.0) -> MajorityTester:
    """Wrap a pairwise tester so it errs with probability <= delta."""
    return MajorityTester(base, delta, repetition_constant)


@dataclass(frozen=True)
class FactoryModel:
    """Source of circuits: the ideal one w.p. 1-f, else a sampled fault.

    Every fault the sampler can produce must sit at worst-case distance
    at least eps from the ideal circuit; this is spot-checked on 20
    samples at construction time.
    """

    ideal: Circuit
    fault_prob: float
    fault_sampler: Callable[[np.random.Generator], Circuit]
    eps: float
    cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if not 0.0 <= self.fault_prob < 0.5:
            raise DomainError(f"fault_prob must lie in [0, 1/2), got {self.fault_prob}")
        ideal_u = circuit_unitary(self.ideal, cap=self.cap)
        check_rng = np.random.default_rng(0)
        for _ in range(20):
            faulty = self.fault_sampler(check_rng)
            d = worst_distance(ideal_u, circuit_unitary(faulty, cap=self.cap), cap=self.cap)
            if d < self.eps - 1e-9:
                raise DomainError(
                    f"fault sampler produced worst-case distance {d:.6f} < eps {self.eps}"
                )

    def sample(self, rng: np.random.Generator) -> tuple[Circuit, bool]:
        """One circuit off the line plus its ground-truth faulty flag."""
        if rng.random() < self.fault_prob:
            return self.fault_sampler(rng), True
        return self.ideal, False


@dataclass(frozen=True)
class BatchResult:
    """Outcome of winnowing one batch."""

    batch_size: int
    kept: tuple[int, ...]
    discarded: tuple[int, ...]
    truth: tuple[bool, ...] | None
    pair_verdicts: np.ndarray
    tests_run: int


def winnow_batch(
    batch: Sequence[Circuit],
    tester,
    rng: np.random.Generator,
    truth: Sequence[bool] | None = None,
) -> BatchResult:
    """Test all pairs; discard circuits losing more than half their tests.

    With odd batch size n each circuit is in n-1 tests; n-1 is even, so
    a circuit with exactly (n-1)/2 'not equal' verdicts is a tie and is
    kept (the rule is strictly more than half).
    """
    n = len(batch)
    if n % 2 == 0:
        raise EvenBatch(f"batch size must be odd, got {n}")
    table = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            v = tester.verdict(batch[i], batch[j], rng)
            table[i, j] = table[j, i] = v
    counts = table.sum(axis=1)
    discarded = tuple(i for i in range(n) if counts[i] > (n - 1) // 2)
    kept = tuple(i for i in range(n) if counts[i] <= (n - 1) // 2)
    table.setflags(write=False)
    return BatchResult(
        batch_size=n,
        kept=kept,
        discarded=discarded,
        truth=tuple(truth) if truth is not None else None,
        pair_verdicts=table,
        tests_run=(n * (n - 1) // 2) * getattr(tester, "repetitions", 1),
    )


@dataclass(frozen=True)
class ProductionSummary:
    """Aggregate statistics over a simulated production run."""

    pre_rate: float
    post_rate: float
    tests_per_batch: int
    batches: int
    kept_total: int
    discarded_total: int
    faulty_kept: int
    overfull_rate: float
    bound: float


def simulate_production(
    factory: FactoryModel,
    batch_size: int,
    batches: int,
    delta: float,
    seed: int,
    tester=None,
) -> ProductionSummary:
    """Run many batches through winnowing and measure the fault rates.

    pre_rate is the observed factory fault fraction, post_rate the
    faulty fraction among kept circuits.  overfull_rate measures how
    often more than half a batch was faulty, for comparison against
    batch_failure_bound.
    """
    if batch_size % 2 == 0:
        raise EvenBatch(f"batch size must be odd, got {batch_size}")
    if tester is None:
        tester = majority_tester(SwapShotTester(cap=factory.cap), delta)
    total = 0
    faulty_total = 0
    kept_total = 0
    faulty_kept = 0
    overfull = 0
    tests_per_batch = 0
    for b in range(batches):
        sample_rng = rng_from_seed(seed, b, 0)
        test_rng = rng_from_seed(seed, b, 1)
        circuits = []
        truth = []
        for _ in range(batch_size):
            c, bad = factory.sample(sample_rng)
            circuits.append(c)
            truth.append(bad)
        result = winnow_batch(circuits, tester, test_rng, truth)
        tests_per_batch = result.tests_run
        total += batch_size
        faulty_total += sum(truth)
        kept_total += len(result.kept)
        faulty_kept += sum(truth[i] for i in result.kept)
        overfull += sum(truth) > batch_size / 2
    return ProductionSummary(
        pre_rate=faulty_total / total if total else 0.0,
        post_rate=faulty_kept / kept_total if kept_total else 0.0,
        tests_per_batch=tests_per_batch,
        batches=batches,
        kept_total=kept_total,
        discarded_total=total - kept_total,
        faulty_kept=faulty_kept,
        overfull_rate=overfull / batches if batches else 0.0,
        bound=batch_failure_bound(factory.fault_prob, batch_size),
    )
