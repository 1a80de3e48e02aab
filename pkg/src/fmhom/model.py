"""Domain types for the HOM / AFC simulator.

All types are frozen dataclasses validated at construction: building an
invalid value through any public path raises :class:`ValidationError` with
every violated invariant named.  Interface units are ns for times, MHz for
frequencies, degrees for angles; conversions to consistent internal units
happen inside the physics modules.

JSON serialization uses the field names verbatim (snake_case) and round-trips
field-for-field through :func:`to_dict` / :func:`from_dict`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, is_dataclass

from .errors import ValidationError

SQRT_HALF = 1.0 / math.sqrt(2.0)


def _close(x, y, tol=1e-9):
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian input pulse: duration (ns FWHM), brightness, mode count."""

    fwhm_duration: float = 100.0
    mean_photons_per_mode: float = 0.064
    mode_count: int = 3

    def _violations(self, prefix=""):
        v = []
        if not self.fwhm_duration > 0:
            v.append((prefix + "fwhm_duration", "must be > 0"))
        if self.mean_photons_per_mode < 0:
            v.append((prefix + "mean_photons_per_mode", "must be >= 0"))
        if int(self.mode_count) != self.mode_count or self.mode_count < 1:
            v.append((prefix + "mode_count", "must be a positive integer"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class DetectorSpec:
    """Threshold detector: quantum efficiency and per-window dark-count probability."""

    efficiency: float = 0.47
    dark_count_prob: float = 1.5e-4

    def _violations(self, prefix=""):
        v = []
        if not 0.0 <= self.efficiency <= 1.0:
            v.append((prefix + "efficiency", "must be in [0, 1]"))
        if not 0.0 <= self.dark_count_prob <= 1.0:
            v.append((prefix + "dark_count_prob", "must be in [0, 1]"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class SplitterSpec:
    """Lossless beam splitter by amplitude coefficients (t_amp**2 + r_amp**2 = 1)."""

    t_amp: float = SQRT_HALF
    r_amp: float = SQRT_HALF

    def _violations(self, prefix=""):
        v = []
        if not 0.0 <= self.t_amp <= 1.0:
            v.append((prefix + "t_amp", "must be in [0, 1]"))
        if not 0.0 <= self.r_amp <= 1.0:
            v.append((prefix + "r_amp", "must be in [0, 1]"))
        s = self.t_amp**2 + self.r_amp**2
        if abs(s - 1.0) > 1e-12:
            v.append((prefix + "t_amp/r_amp", f"t**2+r**2={s:.17g} != 1 (lossless)"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class HomSetup:
    """One two-input HOM measurement.

    ``temporal_overlap`` is the normalized wave-packet amplitude overlap of
    the two inputs (1 at zero delay); ``pol_mismatch`` is the polarization
    angle between them in degrees.
    """

    mu_a: float = 0.064
    mu_b: float = 0.064
    det_c: DetectorSpec = field(default_factory=DetectorSpec)
    det_d: DetectorSpec = field(default_factory=DetectorSpec)
    splitter: SplitterSpec = field(default_factory=SplitterSpec)
    pol_mismatch: float = 3.0
    temporal_overlap: float = 1.0

    def _violations(self, prefix=""):
        v = []
        if self.mu_a < 0:
            v.append((prefix + "mu_a", "must be >= 0"))
        if self.mu_b < 0:
            v.append((prefix + "mu_b", "must be >= 0"))
        if not 0.0 <= self.temporal_overlap <= 1.0:
            v.append((prefix + "temporal_overlap", "must be in [0, 1]"))
        if not 0.0 <= self.pol_mismatch < 90.0:
            v.append((prefix + "pol_mismatch", "must be in [0, 90) degrees"))
        v += self.det_c._violations(prefix + "det_c.")
        v += self.det_d._violations(prefix + "det_d.")
        v += self.splitter._violations(prefix + "splitter.")
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class AfcModeSpec:
    """One frequency mode of an AFC bank.

    ``comb_spacing`` (MHz) sets the storage time 1/spacing; the comb bandwidth
    must exceed the spacing for teeth to exist inside it.
    """

    center_offset: float
    comb_spacing: float
    bandwidth: float = 9.2
    echo_efficiency: float = 0.10

    def _violations(self, prefix=""):
        v = []
        if not self.comb_spacing > 0:
            v.append((prefix + "comb_spacing", "must be > 0"))
        if not self.bandwidth > self.comb_spacing:
            v.append((prefix + "bandwidth", "must be > comb_spacing"))
        if not 0.0 <= self.echo_efficiency <= 1.0:
            v.append((prefix + "echo_efficiency", "must be in [0, 1]"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class AfcBank:
    """Ordered set of AFC modes on a uniform frequency grid (no spectral overlap)."""

    modes: tuple[AfcModeSpec, ...]
    mode_spacing: float = 100.0

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        _raise_if_any(self._violations())

    def _violations(self, prefix=""):
        v = []
        if len(self.modes) == 0:
            v.append((prefix + "modes", "must contain at least one mode"))
        if not self.mode_spacing > 0:
            v.append((prefix + "mode_spacing", "must be > 0"))
        for i, m in enumerate(self.modes):
            v += m._violations(prefix + f"modes[{i}].")
        for i in range(len(self.modes) - 1):
            gap = self.modes[i + 1].center_offset - self.modes[i].center_offset
            if not _close(gap, self.mode_spacing):
                v.append(
                    (
                        prefix + f"modes[{i + 1}].center_offset",
                        f"adjacent offsets differ by {gap:.17g}, expected {self.mode_spacing:.17g}",
                    )
                )
        for i, m in enumerate(self.modes):
            if not m.bandwidth < self.mode_spacing:
                v.append(
                    (prefix + f"modes[{i}].bandwidth", "must be < mode_spacing (spectral overlap)")
                )
        return v


@dataclass(frozen=True)
class EchoEvent:
    """One retrieved photon echo on the timeline."""

    mode_index: int
    retrieval_time: float
    envelope_fwhm: float = 100.0
    relative_intensity: float = 1.0

    def _violations(self, prefix=""):
        v = []
        if not self.envelope_fwhm > 0:
            v.append((prefix + "envelope_fwhm", "must be > 0"))
        if self.relative_intensity < 0:
            v.append((prefix + "relative_intensity", "must be >= 0"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class LinkParams:
    """Inputs to the multiplexed-link success probabilities."""

    p_arrival: float = 0.1
    n_modes: int = 3
    eta_two_photon: float = 1.0
    eta_one_photon: float = 1.0

    def _violations(self, prefix=""):
        v = []
        if not 0.0 <= self.p_arrival <= 1.0:
            v.append((prefix + "p_arrival", "must be in [0, 1]"))
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            v.append((prefix + "n_modes", "must be a positive integer"))
        if self.eta_two_photon < 0:
            v.append((prefix + "eta_two_photon", "must be >= 0"))
        if self.eta_one_photon < 0:
            v.append((prefix + "eta_one_photon", "must be >= 0"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class RateParams:
    """Inputs to the frequency-to-time heralding-rate bound. t_afc is in microseconds."""

    n_modes: int = 3
    t_afc: float = 1.52
    eta_afc: float = 0.1
    l_fiber: float = 0.1
    r_wc: float = 0.5

    def _violations(self, prefix=""):
        v = []
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            v.append((prefix + "n_modes", "must be a positive integer"))
        if not self.t_afc > 0:
            v.append((prefix + "t_afc", "must be > 0"))
        for name in ("eta_afc", "l_fiber", "r_wc"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                v.append((prefix + name, "must be in [0, 1]"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class HistogramBin:
    bin_start: float
    count: int

    def _violations(self, prefix=""):
        v = []
        if int(self.count) != self.count or self.count < 0:
            v.append((prefix + "count", "must be a non-negative integer"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class CoincidenceHistogram:
    """Binned coincidence counts recorded at one delay setting."""

    bin_width: float
    bins: tuple[HistogramBin, ...]
    delay_setting: float = 0.0

    def __post_init__(self):
        object.__setattr__(
            self,
            "bins",
            tuple(b if isinstance(b, HistogramBin) else HistogramBin(*b) for b in self.bins),
        )
        _raise_if_any(self._violations())

    def _violations(self, prefix=""):
        v = []
        if not self.bin_width > 0:
            v.append((prefix + "bin_width", "must be > 0"))
        for i, b in enumerate(self.bins):
            v += b._violations(prefix + f"bins[{i}].")
        if self.bin_width > 0:
            for i in range(len(self.bins) - 1):
                gap = self.bins[i + 1].bin_start - self.bins[i].bin_start
                if not _close(gap, self.bin_width, tol=1e-6):
                    v.append((prefix + f"bins[{i + 1}].bin_start", "bins must be contiguous"))
        return v

    def total_count(self):
        return sum(b.count for b in self.bins)


@dataclass(frozen=True)
class DipPoint:
    delay: float
    normalized_coincidence: float
    std_error: float = 0.0

    def _violations(self, prefix=""):
        v = []
        if self.normalized_coincidence < 0:
            v.append((prefix + "normalized_coincidence", "must be >= 0"))
        if self.std_error < 0:
            v.append((prefix + "std_error", "must be >= 0"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


@dataclass(frozen=True)
class DipCurve:
    """Normalized coincidence rate versus input delay."""

    points: tuple[DipPoint, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "points",
            tuple(p if isinstance(p, DipPoint) else DipPoint(*p) for p in self.points),
        )
        _raise_if_any(self._violations())

    def _violations(self, prefix=""):
        v = []
        for i, p in enumerate(self.points):
            v += p._violations(prefix + f"points[{i}].")
        for i in range(len(self.points) - 1):
            if not self.points[i].delay < self.points[i + 1].delay:
                v.append((prefix + f"points[{i + 1}].delay", "delays must be strictly increasing"))
        return v

    def delays(self):
        return [p.delay for p in self.points]

    def values(self):
        return [p.normalized_coincidence for p in self.points]

    def errors(self):
        return [p.std_error for p in self.points]


@dataclass(frozen=True)
class DipFitResult:
    """Fitted Gaussian-dip parameters: P(tau) = baseline*(1 - visibility*exp(-(sigma*tau)**2/2))."""

    baseline: float
    visibility: float
    sigma: float
    residual_norm: float = 0.0

    def _violations(self, prefix=""):
        v = []
        if not 0.0 <= self.visibility <= 1.0:
            v.append((prefix + "visibility", "must be in [0, 1]"))
        if not self.sigma > 0:
            v.append((prefix + "sigma", "must be > 0"))
        return v

    def __post_init__(self):
        _raise_if_any(self._violations())


def _raise_if_any(violations):
    if violations:
        raise ValidationError(violations)


def validate(value):
    """Re-check every invariant of ``value``; return it unchanged if all hold.

    Raises :class:`ValidationError` naming each violated invariant otherwise.
    """
    violations = value._violations()
    _raise_if_any(violations)
    return value


# ---------------------------------------------------------------------------
# JSON serialization: plain dicts keyed by the dataclass field names.
# ---------------------------------------------------------------------------

def to_dict(value):
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_dict(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, (list, tuple)):
        return [to_dict(x) for x in value]
    return value


def from_dict(cls, data):
    kwargs = {}
    hints = {f.name: f.type for f in fields(cls)}
    nested = {
        "det_c": DetectorSpec,
        "det_d": DetectorSpec,
        "splitter": SplitterSpec,
        "modes": AfcModeSpec,
        "bins": HistogramBin,
        "points": DipPoint,
    }
    for name in hints:
        if name not in data:
            continue
        raw = data[name]
        if name in ("modes", "bins", "points"):
            kwargs[name] = tuple(from_dict(nested[name], x) for x in raw)
        elif name in nested and isinstance(raw, dict):
            kwargs[name] = from_dict(nested[name], raw)
        else:
            kwargs[name] = raw
    unknown = set(data) - set(hints)
    if unknown:
        raise ValidationError([(k, "unknown field") for k in sorted(unknown)])
    return cls(**kwargs)


def to_json(value, **kwargs):
    return json.dumps(to_dict(value), **kwargs)


def from_json(cls, text):
    return from_dict(cls, json.loads(text))


# ---------------------------------------------------------------------------
# Experiment defaults: three AFC modes every 100 MHz, comb spacings from the
# 1.533 / 0.92 / 0.652 MHz combs, per-mode brightness 0.064 / 0.053 / 0.031.
# ---------------------------------------------------------------------------

DEFAULT_COMB_SPACINGS = (1.533, 0.92, 0.652)
DEFAULT_MODE_MU = (0.064, 0.053, 0.031)


def default_bank(comb_spacings=DEFAULT_COMB_SPACINGS, mode_spacing=100.0,
                 bandwidth=9.2, echo_efficiency=0.10):
    modes = tuple(
        AfcModeSpec(
            center_offset=i * mode_spacing,
            comb_spacing=sp,
            bandwidth=bandwidth,
            echo_efficiency=echo_efficiency,
        )
        for i, sp in enumerate(comb_spacings)
    )
    return AfcBank(modes=modes, mode_spacing=mode_spacing)


def default_setup(mode=0):
    """HOM setup for one frequency mode using the measured equipment parameters."""
    mu = DEFAULT_MODE_MU[mode]
    return HomSetup(mu_a=mu, mu_b=mu)


def default_setups():
    return [default_setup(i) for i in range(len(DEFAULT_MODE_MU))]
