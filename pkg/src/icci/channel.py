"""Channel descriptions for the two-user Gaussian interference channel
with a shared common message.

Four nonnegative magnitudes describe the links: ``m11`` and ``m22`` are
the direct gains, ``m12`` is the gain from transmitter 2 into receiver 1,
and ``m21`` the gain from transmitter 1 into receiver 2.  Transmit power
and noise variance are normalized to one, so the link budget lives
entirely in the gains:

    SNR1 = m11**2,  INR1 = m12**2,
    SNR2 = m22**2,  INR2 = m21**2.

A scaled description is often more convenient: fix a base power P > 0
and give each link an exponent alpha_ij with m_ij = P**(alpha_ij / 2),
i.e. |m_ij|**2 = P**alpha_ij.  Exponents are what survive as P grows,
which makes them the natural coordinates for degrees-of-freedom work.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

__all__ = ["ChannelGains", "SnrView", "GdofExponents"]

_GAIN_KEYS = ("m11", "m12", "m21", "m22")


def _check_nonneg_finite(label: str, value: float) -> None:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValueError(f"{label} must be a real number, got {value!r}")
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{label} must be finite and nonnegative, got {value!r}")


@dataclass(frozen=True)
class SnrView:
    """The same channel in power terms: direct SNRs and interference INRs."""

    snr1: float
    snr2: float
    inr1: float
    inr2: float

    def __post_init__(self) -> None:
        for name in ("snr1", "snr2", "inr1", "inr2"):
            _check_nonneg_finite(name, getattr(self, name))


@dataclass(frozen=True)
class GdofExponents:
    """Per-link power exponents alpha_ij, read against a base power P."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self) -> None:
        for name in ("a11", "a12", "a21", "a22"):
            _check_nonneg_finite(name, getattr(self, name))


@dataclass(frozen=True)
class ChannelGains:
    """Link magnitudes (m11, m12, m21, m22), all finite and nonnegative."""

    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self) -> None:
        for name in _GAIN_KEYS:
            _check_nonneg_finite(name, getattr(self, name))

    @classmethod
    def from_snr(cls, view: SnrView) -> "ChannelGains":
        return cls(
            m11=math.sqrt(view.snr1),
            m12=math.sqrt(view.inr1),
            m21=math.sqrt(view.inr2),
            m22=math.sqrt(view.snr2),
        )

    @classmethod
    def from_exponents(cls, exponents: GdofExponents, p: float) -> "ChannelGains":
        """Realize m_ij = p**(alpha_ij / 2) at base power p > 0."""
        if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
            raise ValueError(f"base power p must be finite and > 0, got {p!r}")
        return cls(
            m11=p ** (exponents.a11 / 2.0),
            m12=p ** (exponents.a12 / 2.0),
            m21=p ** (exponents.a21 / 2.0),
            m22=p ** (exponents.a22 / 2.0),
        )

    @classmethod
    def symmetric(cls, alpha: float, p: float) -> "ChannelGains":
        """Direct exponents 1, both cross exponents alpha."""
        return cls.from_exponents(GdofExponents(1.0, alpha, alpha, 1.0), p)

    def snr_view(self) -> SnrView:
        return SnrView(
            snr1=self.m11 * self.m11,
            snr2=self.m22 * self.m22,
            inr1=self.m12 * self.m12,
            inr2=self.m21 * self.m21,
        )

    def as_dict(self) -> dict[str, float]:
        return {key: float(getattr(self, key)) for key in _GAIN_KEYS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ChannelGains":
        if set(data) != set(_GAIN_KEYS):
            raise ValueError(
                f"channel dict must have exactly the keys {_GAIN_KEYS}, got {sorted(data)}"
            )
        return cls(**{key: data[key] for key in _GAIN_KEYS})

    @classmethod
    def from_json(cls, text: str) -> "ChannelGains":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid channel JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError("channel JSON must be an object")
        return cls.from_dict(data)
