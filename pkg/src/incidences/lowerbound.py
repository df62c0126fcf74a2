"""Random sub-sampling of the lattice configuration with per-copy deletion.

Each trial keeps every point and line of ``erdos_config(A)`` independently
with probability ``q``, deletes one point from every surviving subdivided
k-clique, certifies the result with the generic pattern search and finally
balances the two sides to ``n`` points and ``n`` lines.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, fields
from typing import Sequence

import numpy as np
from scipy import stats

from .configurations import Configuration, erdos_config, erdos_incidence_count
from .errors import DomainError
from .patterns import pattern_subdivided_clique
from .projective import ProjLine, ProjPoint, line_through
from .search import ABSENT, FOUND, contains, count_subdivided_cliques

RNG_ALGORITHM = "numpy-Philox4x64-10/SeedSequence([seed,trial])"


def rng_for(seed: int, trial: int = 0) -> np.random.Generator:
    """Counter-based stream for one trial; independent of how many trials run or in which order."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(trial)])))


def default_q(A: int, k: int) -> float:
    N = A**3
    return float(N ** (-(k + 6) / (9 * k + 6)))


@dataclass(frozen=True)
class SampleParams:
    A: int
    k: int = 3
    q: float | None = None
    seed: int = 0
    trials: int = 1

    def __post_init__(self) -> None:
        if self.A < 2:
            raise DomainError(f"A must be >= 2, got {self.A}")
        if self.k < 3:
            raise DomainError(f"k must be >= 3, got {self.k}")
        if self.q is not None and not 0 < self.q <= 1:
            raise DomainError(f"q must lie in (0, 1], got {self.q}")
        if self.trials < 1:
            raise DomainError("trials must be positive")

    @property
    def q_value(self) -> float:
        return self.q if self.q is not None else default_q(self.A, self.k)


def inclusion_masks(n_points: int, n_lines: int, q: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Keep flags: one uniform draw per point, then one per line; kept iff draw < q."""
    return rng.random(n_points) < q, rng.random(n_lines) < q


def sample_subconfiguration(base: Configuration, q: float, seed: int, trial: int = 0) -> Configuration:
    if not 0 < q <= 1:
        raise DomainError(f"q must lie in (0, 1], got {q}")
    if q == 1:
        return base
    pm, lm = inclusion_masks(base.n_points, base.n_lines, q, rng_for(seed, trial))
    return base.restrict(np.flatnonzero(pm).tolist(), np.flatnonzero(lm).tolist(),
                         f"sample({base.provenance}, q={q!r}, seed={seed}, trial={trial})")


def check_event_A(c: Configuration, q: float, A: int) -> dict:
    """The three conditions of the good event, with the degree-window count read per side and jointly."""
    N = A**3
    lo, hi = q * A / 4, 2 * q * A
    pdeg, ldeg = c.point_degrees(), c.line_degrees()
    size_ok = q * N / 2 < c.n_points < 2 * q * N and q * N / 2 < c.n_lines < 2 * q * N
    max_deg = max(pdeg + ldeg, default=0)
    p_mid = sum(1 for d in pdeg if lo <= d <= hi)
    l_mid = sum(1 for d in ldeg if lo <= d <= hi)
    separate = p_mid >= q * N / 4 and l_mid >= q * N / 4
    joint = p_mid + l_mid >= q * N / 4
    ok = size_ok and max_deg <= hi
    return {
        "event": bool(ok and separate),
        "event_joint": bool(ok and joint),
        "size_window": bool(size_ok),
        "max_degree": max_deg,
        "max_degree_ok": max_deg <= hi,
        "points_in_window": p_mid,
        "lines_in_window": l_mid,
        "window_separate": bool(separate),
        "window_joint": bool(joint),
    }


@dataclass
class TrialReport:
    A: int
    k: int
    q: float
    seed: int
    trial: int
    points_sampled: int
    lines_sampled: int
    edges_sampled: int
    copies: int
    deleted: int
    incidences_after_deletion: int
    final_n: int
    final_incidences: int
    event_A: bool
    event_A_joint: bool
    certified: bool
    valid: bool


def delete_and_certify(c: Configuration, k: int = 3, budget: int | None = None) -> tuple[Configuration, dict]:
    """Remove the smallest-index white point of every copy not already destroyed, then re-check.

    ``info["valid"]`` is False when either the enumeration or the certifying
    search ran out of budget; such a trial must not be counted.
    """
    res = count_subdivided_cliques(c, k, with_witnesses=True, budget=budget)
    info = {"copies": res.count, "deleted": 0, "valid": res.complete, "certified": False}
    if not res.complete:
        return c, info
    removed: set[int] = set()
    for blacks, whites in res.witnesses:
        members = set(blacks) | {w for w, _, _ in whites.values()}
        if members & removed:
            continue
        removed.add(min(w for w, _, _ in whites.values()))
    info["deleted"] = len(removed)
    out = c if not removed else c.restrict(
        [i for i in range(c.n_points) if i not in removed], range(c.n_lines), f"deleted({c.provenance})")
    check = contains(out, pattern_subdivided_clique(k), budget)
    info["certified"] = check.status == ABSENT
    info["valid"] = check.status != "unknown"
    return out, info


def balance(c: Configuration, q: float, A: int, rng: np.random.Generator) -> Configuration:
    """Uniform down-sampling to ``n = min(|P|, |L|, floor(q N / 4))`` points and lines."""
    n = min(c.n_points, c.n_lines, math.floor(q * A**3 / 4))
    n = max(n, 0)
    pts = sorted(rng.choice(c.n_points, size=n, replace=False).tolist()) if n else []
    lns = sorted(rng.choice(c.n_lines, size=n, replace=False).tolist()) if n else []
    return c.restrict(pts, lns, f"balanced({c.provenance}, n={n})")


def run_trial(p: SampleParams, trial: int, base: Configuration | None = None,
              budget: int | None = None) -> tuple[TrialReport, Configuration]:
    base = base if base is not None else erdos_config(p.A)
    q = p.q_value
    rng = rng_for(p.seed, trial)
    pm, lm = inclusion_masks(base.n_points, base.n_lines, q, rng)
    sample = base.restrict(np.flatnonzero(pm).tolist(), np.flatnonzero(lm).tolist(), "sample")
    ev = check_event_A(sample, q, p.A)
    pruned, info = delete_and_certify(sample, p.k, budget)
    final = balance(pruned, q, p.A, rng) if info["valid"] else pruned
    rep = TrialReport(
        A=p.A, k=p.k, q=q, seed=p.seed, trial=trial,
        points_sampled=sample.n_points, lines_sampled=sample.n_lines,
        edges_sampled=len(sample.incidences), copies=info["copies"], deleted=info["deleted"],
        incidences_after_deletion=len(pruned.incidences),
        final_n=final.n_points, final_incidences=len(final.incidences),
        event_A=ev["event"], event_A_joint=ev["event_joint"],
        certified=info["certified"], valid=info["valid"],
    )
    return rep, final


def _fit(xs: Sequence[float], ys: Sequence[float]) -> dict:
    """Least-squares slope of log y on log x with a 95% t-interval."""
    if len(xs) < 3 or len(set(xs)) < 2:
        return {"slope": float("nan"), "ci_low": float("nan"), "ci_high": float("nan"), "points": len(xs)}
    lx, ly = np.log(xs), np.log(ys)
    r = stats.linregress(lx, ly)
    half = stats.t.ppf(0.975, len(xs) - 2) * r.stderr
    return {"slope": float(r.slope), "ci_low": float(r.slope - half), "ci_high": float(r.slope + half),
            "intercept": float(r.intercept), "points": len(xs)}


def base_slope(A_values: Sequence[int]) -> dict:
    """Fit of log I against log N over the full lattice configurations (n = N points and lines)."""
    return _fit([A**3 for A in A_values], [erdos_incidence_count(A) for A in A_values])


def exponent_report(A_values: Sequence[int], k: int = 3, trials: int = 20, seed: int = 0,
                    q: float | None = None, budget: int | None = None) -> dict:
    rows: list[TrialReport] = []
    for A in A_values:
        base = erdos_config(A)
        p = SampleParams(A=A, k=k, q=q, seed=seed, trials=trials)
        for t in range(trials):
            rows.append(run_trial(p, t, base, budget)[0])
    good = [r for r in rows if r.valid and r.final_n >= 2 and r.final_incidences > 0]
    return {
        "params": {"A": list(A_values), "k": k, "trials": trials, "seed": seed,
                   "q": "default" if q is None else q, "budget": budget, "rng": RNG_ALGORITHM},
        "rows": rows,
        "invalid_trials": sum(1 for r in rows if not r.valid),
        "uncertified_trials": sum(1 for r in rows if r.valid and not r.certified),
        "base_fit": base_slope(A_values),
        "final_fit": _fit([r.final_n for r in good], [r.final_incidences for r in good]),
        "target_slope": 5 / 4 - 1 / (2 * k),
    }


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    for key, val in report["params"].items():
        buf.write(f"# {key}={val}\n")
    for name in ("base_fit", "final_fit"):
        for key, val in report[name].items():
            buf.write(f"# {name}.{key}={val!r}\n")
    buf.write(f"# invalid_trials={report['invalid_trials']}\n")
    buf.write(f"# target_slope={report['target_slope']!r}\n")
    w = csv.writer(buf, lineterminator="\n")
    cols = [f.name for f in fields(TrialReport)]
    w.writerow(cols)
    for r in report["rows"]:
        d = asdict(r)
        w.writerow([repr(d[c]) if isinstance(d[c], float) else d[c] for c in cols])
    return buf.getvalue()


def planted_subdivided_clique(k: int = 3) -> Configuration:
    """One subdivided k-clique on points of the parabola y = x^2, so no three points are collinear."""
    n = k + k * (k - 1) // 2
    pts = [ProjPoint(t, t * t, 1) for t in range(1, n + 1)]
    lines: list[ProjLine] = []
    widx = k
    for i in range(k):
        for j in range(i + 1, k):
            lines.append(line_through(pts[i], pts[widx]))
            lines.append(line_through(pts[j], pts[widx]))
            widx += 1
    return Configuration(pts, lines, None, f"planted subdivided {k}-clique")


def copy_survival_rate(k: int, q: float, trials: int, seed: int = 0) -> dict:
    """Empirical survival frequency of a planted copy against ``q^((3k^2 - k)/2)``."""
    host = planted_subdivided_clique(k)
    survived = 0
    for t in range(trials):
        pm, lm = inclusion_masks(host.n_points, host.n_lines, q, rng_for(seed, t))
        if pm.all() and lm.all():
            survived += 1
    expected = q ** ((3 * k * k - k) // 2)
    sigma = math.sqrt(expected * (1 - expected) / trials)
    rate = survived / trials
    return {"rate": rate, "expected": expected, "sigma": sigma, "within_3sigma": abs(rate - expected) <= 3 * sigma}


def inclusion_frequencies(n_points: int, n_lines: int, q: float, trials: int, seed: int = 0) -> np.ndarray:
    """Per-element keep frequency over ``trials`` independent streams (points first, then lines)."""
    counts = np.zeros(n_points + n_lines)
    for t in range(trials):
        pm, lm = inclusion_masks(n_points, n_lines, q, rng_for(seed, t))
        counts[:n_points] += pm
        counts[n_points:] += lm
    return counts / trials
