"""Independent Gaussian oracle for the achievable-side coefficients, and
a rate accounting for the layered scheme on a concrete channel.

The achievable family in :mod:`icci.bounds` is a set of closed forms.
This module re-derives each of the ten values as an actual mutual
information of jointly Gaussian variables, sharing no formulas with the
closed forms, so agreement between the two is a real check.

The reference input distribution: the common layer carries zero power,
transmitter i splits unit power into a public part U_i with power
1 - x_ji and an independent private remainder, so X_i = U_i + (private)
with the private variance x_ji taken from the same noise-floor split
the closed forms use.  Receiver outputs are Y_1 = m11 X_1 + m12 X_2 + Z_1
and Y_2 = m21 X_1 + m22 X_2 + Z_2 with unit Gaussian noise.  All signals
are circularly symmetric complex, so a mutual information is a log2
ratio of conditional variances with no 1/2 factor:

    I(S; Y | C) = log2( Var(Y | C) / Var(Y | C, S) ).

Conditional variances come from Schur complements of the joint
covariance of (U1, U2, X1, X2, Y1, Y2).  Conditioning variables whose
own variance is below DEGENERATE_VAR are dropped (conditioning on a
constant is vacuous; the common layer never even enters, being exactly
zero).  The Cholesky factorization guarding the Schur step raises
CovarianceError when a pivot falls below PIVOT_MIN, which would mean a
numerically non-positive-definite intermediate covariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import cap, power_split
from .channel import ChannelGains

__all__ = [
    "CovarianceError",
    "MiTerms",
    "DecodeStage",
    "DecodeChainReport",
    "mutual_info_terms",
    "mi_discrepancy",
    "successive_decode_chain",
    "DEGENERATE_VAR",
    "PIVOT_MIN",
]

DEGENERATE_VAR = 1e-15
PIVOT_MIN = 1e-12

# variable order in the joint covariance
_U1, _U2, _X1, _X2, _Y1, _Y2 = range(6)


class CovarianceError(ArithmeticError):
    """An intermediate covariance failed its positive-definiteness guard."""


@dataclass(frozen=True)
class MiTerms:
    """The ten mutual-information values under the reference input."""

    a1: float
    a2: float
    d1: float
    d2: float
    e1: float
    e2: float
    g1: float
    g2: float
    g1p: float
    g2p: float

    def as_dict(self) -> dict:
        return {
            "A1": self.a1, "A2": self.a2,
            "D1": self.d1, "D2": self.d2,
            "E1": self.e1, "E2": self.e2,
            "G1": self.g1, "G2": self.g2,
            "G1p": self.g1p, "G2p": self.g2p,
        }


def _joint_covariance(gains: ChannelGains) -> np.ndarray:
    x12, x21 = power_split(gains)
    m11, m12, m21, m22 = gains.m11, gains.m12, gains.m21, gains.m22
    pu1 = 1.0 - x21  # public power of transmitter 1
    pu2 = 1.0 - x12
    cov = np.zeros((6, 6))
    cov[_U1, _U1] = pu1
    cov[_U2, _U2] = pu2
    cov[_X1, _X1] = 1.0
    cov[_X2, _X2] = 1.0
    cov[_U1, _X1] = cov[_X1, _U1] = pu1
    cov[_U2, _X2] = cov[_X2, _U2] = pu2
    # Y1 = m11 X1 + m12 X2 + Z1,  Y2 = m21 X1 + m22 X2 + Z2
    cov[_Y1, _Y1] = m11 * m11 + m12 * m12 + 1.0
    cov[_Y2, _Y2] = m21 * m21 + m22 * m22 + 1.0
    cov[_Y1, _Y2] = cov[_Y2, _Y1] = m11 * m21 + m12 * m22
    cov[_Y1, _X1] = cov[_X1, _Y1] = m11
    cov[_Y1, _X2] = cov[_X2, _Y1] = m12
    cov[_Y2, _X1] = cov[_X1, _Y2] = m21
    cov[_Y2, _X2] = cov[_X2, _Y2] = m22
    cov[_Y1, _U1] = cov[_U1, _Y1] = m11 * pu1
    cov[_Y1, _U2] = cov[_U2, _Y1] = m12 * pu2
    cov[_Y2, _U1] = cov[_U1, _Y2] = m21 * pu1
    cov[_Y2, _U2] = cov[_U2, _Y2] = m22 * pu2
    return cov


def _cholesky(s: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor with an explicit pivot guard."""
    n = s.shape[0]
    low = np.zeros((n, n))
    for j in range(n):
        pivot = s[j, j] - np.dot(low[j, :j], low[j, :j])
        if pivot <= PIVOT_MIN:
            raise CovarianceError(
                f"Cholesky pivot {pivot:.3e} at index {j} below {PIVOT_MIN:.0e}"
            )
        low[j, j] = math.sqrt(pivot)
        for i in range(j + 1, n):
            low[i, j] = (s[i, j] - np.dot(low[i, :j], low[j, :j])) / low[j, j]
    return low


def _conditional_variance(cov: np.ndarray, target: int, given: tuple[int, ...]) -> float:
    """Var(target | given) by Schur complement, ignoring degenerate
    conditioners."""
    keep = [i for i in given if cov[i, i] > DEGENERATE_VAR]
    value = cov[target, target]
    if not keep:
        return float(value)
    s = cov[np.ix_(keep, keep)]
    c = cov[keep, target]
    low = _cholesky(s)
    # solve L w = c; then Var(target|given) = Var(target) - w . w
    w = np.linalg.solve(low, c) if len(keep) > 1 else c / low[0, 0]
    residual = float(value - np.dot(w, w))
    if residual <= PIVOT_MIN:
        raise CovarianceError(f"conditional variance {residual:.3e} below {PIVOT_MIN:.0e}")
    return residual


def _log_ratio(cov: np.ndarray, y: int, given: tuple[int, ...], extra: tuple[int, ...]) -> float:
    """I(extra; y | given) = log2 Var(y | given) - log2 Var(y | given + extra)."""
    v_small = _conditional_variance(cov, y, given)
    v_big = _conditional_variance(cov, y, given + extra)
    return math.log2(v_small / v_big)


def mutual_info_terms(gains: ChannelGains) -> MiTerms:
    """All ten coefficients as Gaussian mutual informations.

    Per receiver i (j the other user), with the common layer identically
    zero so conditioning on it is vacuous:

        a_i = I(X_i; Y_i | U_i, U_j)      d_i = I(X_i; Y_i | U_j)
        e_i = I(X_i, U_j; Y_i | U_i)      g_i = I(X_i, U_j; Y_i)
        g_i' = I(common, X_i, U_j; Y_i) = g_i
    """
    cov = _joint_covariance(gains)
    a1 = _log_ratio(cov, _Y1, (_U1, _U2), (_X1,))
    d1 = _log_ratio(cov, _Y1, (_U2,), (_X1,))
    e1 = _log_ratio(cov, _Y1, (_U1,), (_X1, _U2))
    g1 = _log_ratio(cov, _Y1, (), (_X1, _U2))
    a2 = _log_ratio(cov, _Y2, (_U2, _U1), (_X2,))
    d2 = _log_ratio(cov, _Y2, (_U1,), (_X2,))
    e2 = _log_ratio(cov, _Y2, (_U2,), (_X2, _U1))
    g2 = _log_ratio(cov, _Y2, (), (_X2, _U1))
    # the common layer has zero power, so adding it to the decoded side
    # changes nothing: the primed values equal the plain ones
    return MiTerms(a1=a1, a2=a2, d1=d1, d2=d2, e1=e1, e2=e2,
                   g1=g1, g2=g2, g1p=g1, g2p=g2)


def mi_discrepancy(gains: ChannelGains) -> float:
    """Max absolute difference between the oracle and the closed forms."""
    from .bounds import inner_coeffs

    closed = inner_coeffs(gains).as_dict()
    del closed["side"]
    oracle = mutual_info_terms(gains).as_dict()
    return max(abs(oracle[key] - closed[key]) for key in oracle)


@dataclass(frozen=True)
class DecodeStage:
    """One step of the successive decoder at a receiver."""

    label: str
    sinr: float
    rate: float
    ratio: float

    def as_dict(self) -> dict:
        return {"label": self.label, "sinr": self.sinr, "rate": self.rate, "ratio": self.ratio}


@dataclass(frozen=True)
class DecodeChainReport:
    """Stage-by-stage rates for the layered scheme, plus summary ratios.

    individual_ratio counts what one user's own messages carry: the
    public sub-message is limited by the slower of the two stages that
    must decode it (its own receiver early, the other receiver after the
    common layer), plus the private stage.  per_user_ratio adds half the
    common rate, since that layer is shared by both users.
    """

    p: float
    include_common: bool
    stages: tuple[DecodeStage, ...]
    individual_ratio: float
    common_ratio: float
    per_user_ratio: float

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "include_common": self.include_common,
            "stages": [s.as_dict() for s in self.stages],
            "individual_ratio": self.individual_ratio,
            "common_ratio": self.common_ratio,
            "per_user_ratio": self.per_user_ratio,
        }


def successive_decode_chain(p: float, include_common: bool = True) -> DecodeChainReport:
    """Rate accounting for the layered scheme on the symmetric channel
    with direct exponent 1 and cross exponent 0.6 at base power p.

    Each transmitter stacks a common component (power ~ p**-0.2), a
    public component (~ 1) and a private component (~ p**-0.6), jointly
    normalized to unit power.  A receiver decodes in order: own public,
    common, other user's public, own private, each time treating the
    remaining layers as noise and subtracting what it decoded.  The
    common layer is decoded from its own-link copy with the cross-link
    copy as noise, but both copies are subtracted afterwards.  Stage
    ratios rate/log2(p) approach (0.2, 0.2, 0.2, 0.4) as p grows; p
    below 1e3 is rejected because the layer ordering has not settled.
    """
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p >= 1e3):
        raise ValueError(f"p must be finite and >= 1e3, got {p!r}")
    cross_exp = 0.6
    common_raw = p ** -0.2 if include_common else 0.0
    public_raw = 1.0
    private_raw = p ** -cross_exp
    total = common_raw + public_raw + private_raw
    own_scale = p / total               # direct link power gain per unit raw power
    cross_scale = p ** cross_exp / total
    own_common = own_scale * common_raw
    cross_common = cross_scale * common_raw
    own_public = own_scale * public_raw
    cross_public = cross_scale * public_raw
    own_private = own_scale * private_raw
    residual = cross_scale * private_raw + 1.0   # other user's private + noise
    log2p = math.log2(p)

    def stage(label: str, signal: float, noise: float) -> DecodeStage:
        sinr = signal / noise
        rate = cap(sinr)
        return DecodeStage(label=label, sinr=sinr, rate=rate, ratio=rate / log2p)

    s_pub = stage(
        "own-public", own_public,
        own_common + cross_common + cross_public + own_private + residual,
    )
    s_common = stage(
        "common", own_common,
        cross_common + cross_public + own_private + residual,
    )
    s_cross = stage("cross-public", cross_public, own_private + residual)
    s_priv = stage("own-private", own_private, residual)

    individual = min(s_pub.rate, s_cross.rate) / log2p + s_priv.ratio
    common_ratio = s_common.ratio
    return DecodeChainReport(
        p=float(p),
        include_common=include_common,
        stages=(s_pub, s_common, s_cross, s_priv),
        individual_ratio=individual,
        common_ratio=common_ratio,
        per_user_ratio=individual + common_ratio / 2.0,
    )
