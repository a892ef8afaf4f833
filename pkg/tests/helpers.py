import numpy as np

from rrdirac.gauge import FluxConfig


def random_config(rng: np.random.Generator, max_fluxes: int = 5, min_sep: float = 0.05) -> FluxConfig:
    """1..max_fluxes fluxes, quanta in {1,2,3}, uniform in the unit disk."""
    while True:
        k = int(rng.integers(1, max_fluxes + 1))
        z = np.sqrt(rng.uniform(0, 1, k)) * np.exp(1j * rng.uniform(0, 2 * np.pi, k))
        gaps = np.abs(z[:, None] - z[None, :])[np.triu_indices(k, 1)]
        if gaps.size == 0 or gaps.min() >= min_sep:
            return FluxConfig(tuple(zip(z.tolist(), rng.integers(1, 4, k).tolist())))


ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    return ok
