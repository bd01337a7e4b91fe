"""Sweeps that build certificates on random graphs and compare with the oracle."""

from __future__ import annotations

import csv
import io
import json
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import algebra, constructors, oracle
from .generators import random_gnp, random_orientation
from .graph import ForbiddenSets, Graph, Mode, convert_to_imbalance, is_f_avoiding
from .guards import GuardExceeded

REGIMES = ("third", "two-thirds", "random")
LIST_SIZES = ("random", "max")


@dataclass
class Corpus:
    trials: int = 200
    n_min: int = 2
    n_max: int = 8
    probs: Sequence[float] = (0.3, 0.5, 0.8)
    seed: int = 0


def random_forbidden(
    g: Graph, sizes: Sequence[int], rng: random.Random, mode: Mode = Mode.OUTDEG
) -> ForbiddenSets:
    """Forbidden out-degrees of the requested sizes (capped by what exists)."""
    sets = []
    for v in range(g.n):
        k = max(0, min(sizes[v], g.degrees[v] + 1))
        sets.append(rng.sample(range(g.degrees[v] + 1), k))
    f = ForbiddenSets.build(g, sets, Mode.OUTDEG)
    return convert_to_imbalance(f, g) if mode is Mode.IMBALANCE else f


def corpus_graphs(c: Corpus) -> Iterator[tuple[int, Graph, random.Random]]:
    rng = random.Random(c.seed)
    for i in range(c.trials):
        n = rng.randint(c.n_min, c.n_max)
        p = c.probs[i % len(c.probs)]
        inst = random.Random(rng.getrandbits(64))
        yield i, random_gnp(n, p, inst), inst


def run_instance(
    i: int,
    g: Graph,
    rng: random.Random,
    regime: str,
    mode: Mode = Mode.OUTDEG,
    gamma: Fraction = Fraction(1, 10),
    max_attempts: int = 200,
    timings: bool = False,
    list_size: str = "random",
) -> dict:
    """Build a certificate, draw forbidden sets it covers, and ask the oracle.

    ``list_size="random"`` draws each ``|F(v)|`` uniformly up to the certified
    size; ``"max"`` uses the certified size itself.
    """
    rec: dict = {"instance": i, "n": g.n, "m": g.m, "regime": regime}
    t0 = time.perf_counter()
    if regime == "third":
        ordering, h = constructors.build_h_third(g)
        sizes = constructors.third_list_sizes(g)
    elif regime == "two-thirds":
        d = random_orientation(g, rng)
        ordering, h = constructors.build_h_two_thirds(g, d)
        sizes = [max(0, s) for s in constructors.two_thirds_guarantee(d)]
        rec["outdeg"] = list(d.out_degrees)
    elif regime == "random":
        try:
            ordering, h = constructors.build_h_random(
                g, gamma, seed=rng.getrandbits(32), max_attempts=max_attempts
            )
        except constructors.ConstructionFailed:
            rec.update(constructed=False, certificate_valid=False, oracle=None)
            return rec
        sizes = constructors.random_guarantee(g, gamma)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    t1 = time.perf_counter()
    if list_size == "random":
        sizes = [rng.randint(0, s) for s in sizes]
    elif list_size != "max":
        raise ValueError(f"unknown list size {list_size!r}")
    f = random_forbidden(g, sizes, rng, mode)
    cert = constructors.certify_h_condition(g, ordering, h, f)
    try:
        witness = oracle.find_orientation(g, f)
        verdict = "SAT" if witness is not None else "UNSAT"
        if witness is not None and not is_f_avoiding(witness, f):
            verdict = "BAD-WITNESS"
    except GuardExceeded:
        verdict = "GUARD"
    t2 = time.perf_counter()
    rec.update(
        constructed=True,
        forbidden_sizes=f.sizes(),
        certificate_valid=cert.valid,
        min_slack=min(cert.slack, default=0),
        slack_histogram={str(k): v for k, v in sorted(Counter(cert.slack).items())},
        oracle=verdict,
    )
    if timings:
        rec["construct_seconds"] = round(t1 - t0, 6)
        rec["oracle_seconds"] = round(t2 - t1, 6)
    return rec


def run(
    corpus: Corpus,
    regime: str,
    mode: Mode = Mode.OUTDEG,
    gamma: Fraction = Fraction(1, 10),
    max_attempts: int = 200,
    timings: bool = False,
    list_size: str = "random",
) -> Iterator[dict]:
    for i, g, rng in corpus_graphs(corpus):
        yield run_instance(i, g, rng, regime, mode, gamma, max_attempts, timings, list_size)


def summarize(records: Sequence[dict]) -> dict:
    total = len(records)
    valid = sum(1 for r in records if r.get("certificate_valid"))
    sat = sum(1 for r in records if r.get("oracle") == "SAT")
    return {
        "summary": True,
        "instances": total,
        "certificate_valid": valid,
        "oracle_sat": sat,
        "certificate_valid_rate": valid / total if total else None,
        "oracle_sat_rate": sat / total if total else None,
    }


CSV_FIELDS = [
    "instance", "n", "m", "regime", "constructed", "certificate_valid",
    "min_slack", "oracle", "forbidden_sizes", "slack_histogram",
    "construct_seconds", "oracle_seconds",
]


def to_jsonl(records: Sequence[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def to_csv(records: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in records:
        row = dict(r)
        for k in ("forbidden_sizes", "slack_histogram"):
            if k in row:
                row[k] = json.dumps(row[k], sort_keys=True)
        w.writerow(row)
    return buf.getvalue()


def random_multiplicities(rng: random.Random, n: int, m: int, max_norm: int):
    """alpha (length n) and beta (length m) with equal sums <= max_norm."""
    total = rng.randint(0, max_norm)
    alpha = [0] * n
    beta = [0] * m
    for _ in range(total):
        alpha[rng.randrange(n)] += 1
        beta[rng.randrange(m)] += 1
    return alpha, beta


def duality_check(size: int, trials: int, seed: int, max_norm: int = 8, entry_range: int = 3):
    """Compare the permanent against both naive expansions on random input.

    Returns ``(trials_run, counterexample)``; the counterexample is ``None`` when all agree.
    """
    rng = random.Random(seed)
    for t in range(trials):
        n = rng.randint(1, size)
        m = rng.randint(1, size)
        a = [[rng.randint(-entry_range, entry_range) for _ in range(m)] for _ in range(n)]
        alpha, beta = random_multiplicities(rng, n, m, max_norm)
        perm = algebra.permanent(algebra.multiplied_matrix(a, alpha, beta))
        y_side = algebra.naive_coeff(a, alpha, beta, side="y")
        x_side = algebra.naive_coeff(a, alpha, beta, side="x")
        fb = algebra.factorial_product(beta)
        fa = algebra.factorial_product(alpha)
        if not (fb * y_side == perm == fa * x_side):
            return t + 1, {
                "trial": t, "A": a, "alpha": alpha, "beta": beta,
                "perm": perm, "beta_fact_coeff_y": fb * y_side, "alpha_fact_coeff_x": fa * x_side,
            }
    return trials, None
