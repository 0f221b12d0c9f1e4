"""Monte-Carlo acceptance rates of cheating provers against the interactive verifier."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

from ..code import invalid_fraction
from ..fold import fold_values
from ..rim import EdgeWord
from .core import check_committed
from .params import ProtocolParams
from .transcript import RandomCoins

STRATEGIES = ("honest-fold", "codeword-replacement")


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("need at least one trial")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def adversary_words(
    strategy: str,
    params: ProtocolParams,
    f0: EdgeWord,
    rhos: list[int],
    codeword: EdgeWord | None = None,
) -> list[EdgeWord]:
    """Words f_0..f_R a cheating prover commits, given the challenges.

    honest-fold: f_{r+1} = Fold(f_r, rho_r), so every fold check passes and
    only the final Reed-Solomon check can catch the prover.
    codeword-replacement: f_1 = Fold(c, rho_0) for a codeword c near f_0 and
    honest folds afterwards; the final check always passes and rejection has
    to come from the first-round fold check.
    """
    p = params.field.modulus
    words = [f0]
    for r, c in enumerate(params.rounds):
        src = words[-1]
        if r == 0 and strategy == "codeword-replacement":
            if codeword is None:
                raise ValueError("codeword-replacement needs the source codeword")
            src = codeword
        elif strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        words.append(EdgeWord(c.child, f0.field, fold_values(src.values, c, rhos[r], p)))
    return words


@dataclass(frozen=True)
class SoundnessEstimate:
    strategy: str
    accepted: int
    trials: int
    delta: Fraction
    low: float
    high: float

    @property
    def rate(self) -> float:
        return self.accepted / self.trials

    @property
    def half_width(self) -> float:
        return (self.high - self.low) / 2


def simulate_soundness(
    params: ProtocolParams,
    f0: EdgeWord,
    strategy: str,
    trials: int,
    source: random.Random,
    codeword: EdgeWord | None = None,
) -> SoundnessEstimate:
    """Acceptance frequency with fresh challenges and query randomness per trial.

    delta is the invalid-vertex fraction of f_0, a lower bound on its vertex
    distance to the code.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    p = params.field.modulus
    accepted = 0
    for _ in range(trials):
        rhos = [source.randrange(p) for _ in range(params.R)]
        words = adversary_words(strategy, params, f0, rhos, codeword)
        if check_committed(params, words, rhos, RandomCoins(source)).accepted:
            accepted += 1
    low, high = wilson_interval(accepted, trials)
    return SoundnessEstimate(strategy, accepted, trials, invalid_fraction(f0, params.code), low, high)
