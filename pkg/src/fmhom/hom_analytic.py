"""Closed-form HOM interference for phase-averaged weak coherent inputs.

Two independent attenuated laser pulses (mean photon numbers mu_a, mu_b) meet
on a beam splitter; the relative optical phase theta is uniformly random.
The output-port intensities are

    I_c(theta) = mu_a*t**2 + mu_b*r**2 + k*cos(theta)
    I_d(theta) = mu_a*r**2 + mu_b*t**2 - k*cos(theta)

with interference amplitude k = 2*t*r*sqrt(mu_a*mu_b)*xi*cos(phi), where xi
is the wave-packet overlap and phi the polarization mismatch.  Threshold
detectors click with probability 1 - (1-d)*exp(-eta*I); averaging exp of a
cosine over theta produces modified Bessel functions I0, giving the closed
forms below.  ``phase_integral_oracle`` evaluates the same average by direct
quadrature and is the ground truth the closed forms are tested against.

``coincidence_prob_averaged`` uses the corrected Bessel argument
2*eta_d*sqrt(mu_a*mu_b)*t*r*xi*cos(phi) in the second term; the historically
published variant without the factor 2 is available via ``as_printed=True``
and disagrees with the oracle (it undershoots the visibility limit by a large
margin, ~0.30 instead of ~0.486 for the nominal mode-1 parameters).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import i0 as bessel_i0

from .errors import DomainError
from .model import HomSetup


def _temporal_sigma(fwhm_ns):
    # FWHM -> standard deviation of a Gaussian envelope
    return fwhm_ns / (2.0 * math.sqrt(2.0 * math.log(2.0)))


# sqrt(2) / envelope standard deviation for the 100 ns FWHM input pulses.
DEFAULT_SIGMA = 1.0 / (math.sqrt(2.0) * _temporal_sigma(100.0))


def dip_probability(sigma, tau):
    """Ideal normalized coincidence probability 1 - exp(-(sigma*tau)**2/2)/2.

    ``sigma`` is sqrt(2) times the spectral standard deviation of the input
    pulses (rad/ns), ``tau`` the input delay (ns).  Value lies in [1/2, 1].
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    return 1.0 - 0.5 * math.exp(-0.5 * (sigma * tau) ** 2)


def overlap_factor(sigma, tau):
    """Wave-packet amplitude overlap xi(tau) = exp(-(sigma*tau)**2/4).

    Chosen so the coincidence dip scales as xi**2 = exp(-(sigma*tau)**2/2),
    matching :func:`dip_probability` in the ideal limit.
    """
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    return math.exp(-0.25 * (sigma * tau) ** 2)


def visibility_from_extremes(p_max, p_min):
    """Dip visibility (p_max - p_min) / p_max."""
    if not p_max > 0:
        raise DomainError(f"p_max must be > 0, got {p_max}")
    if not 0.0 <= p_min <= p_max:
        raise DomainError(f"p_min must be in [0, p_max], got {p_min}")
    return (p_max - p_min) / p_max


class ClickConstants:
    """No-click factors C (detector c) and D (detector d) for vacuum-plus-dark windows."""

    __slots__ = ("c_const", "d_const")

    def __init__(self, c_const, d_const):
        if not 0.0 <= c_const <= 1.0 or not 0.0 <= d_const <= 1.0:
            raise DomainError("click constants must be in [0, 1]")
        self.c_const = c_const
        self.d_const = d_const

    def __repr__(self):
        return f"ClickConstants(c_const={self.c_const!r}, d_const={self.d_const!r})"

    def __eq__(self, other):
        return (
            isinstance(other, ClickConstants)
            and self.c_const == other.c_const
            and self.d_const == other.d_const
        )


def click_constants(setup: HomSetup) -> ClickConstants:
    """C = exp(-eta_c*(mu_a*t**2 + mu_b*r**2))*(1-d_c) and likewise D with eta_d, d_d."""
    t2 = setup.splitter.t_amp**2
    r2 = setup.splitter.r_amp**2
    mean_intensity = setup.mu_a * t2 + setup.mu_b * r2
    c_const = math.exp(-setup.det_c.efficiency * mean_intensity) * (1.0 - setup.det_c.dark_count_prob)
    d_const = math.exp(-setup.det_d.efficiency * mean_intensity) * (1.0 - setup.det_d.dark_count_prob)
    return ClickConstants(c_const, d_const)


def _bessel_args(setup: HomSetup):
    k = (
        2.0
        * setup.splitter.t_amp
        * setup.splitter.r_amp
        * math.sqrt(setup.mu_a * setup.mu_b)
        * setup.temporal_overlap
        * math.cos(math.radians(setup.pol_mismatch))
    )
    return setup.det_c.efficiency * k, setup.det_d.efficiency * k


def singles_probs(setup: HomSetup):
    """Phase-averaged single-detector click probabilities (P_c, P_d)."""
    cc = click_constants(setup)
    a, b = _bessel_args(setup)
    return 1.0 - cc.c_const * bessel_i0(a), 1.0 - cc.d_const * bessel_i0(b)


def coincidence_prob_averaged(setup: HomSetup, as_printed=False):
    """Phase-averaged coincidence probability of the two threshold detectors.

    P = 1 - C*I0(a) - D*I0(b) + C*D*I0(a-b) with a = 2*eta_c*sqrt(mu_a*mu_b)
    *t*r*xi*cos(phi) and b likewise with eta_d.  ``as_printed=True`` drops the
    factor 2 from b (the published variant, kept for comparison only).
    """
    cc = click_constants(setup)
    a, b = _bessel_args(setup)
    if as_printed:
        b = b / 2.0
    return (
        1.0
        - cc.c_const * bessel_i0(a)
        - cc.d_const * bessel_i0(b)
        + cc.c_const * cc.d_const * bessel_i0(a - b)
    )


def visibility_limit(setup: HomSetup, as_printed=False):
    """Visibility bound 1 - P_coin / (P_c * P_d) at full overlap.

    Computed at xi = 1 regardless of the setup's ``temporal_overlap``; the
    delay dependence enters separately through :func:`overlap_factor`.
    """
    full = setup if setup.temporal_overlap == 1.0 else _with_overlap(setup, 1.0)
    p_c, p_d = singles_probs(full)
    if p_c <= 0.0 or p_d <= 0.0:
        raise DomainError("both singles probabilities must be > 0")
    return 1.0 - coincidence_prob_averaged(full, as_printed=as_printed) / (p_c * p_d)


def _with_overlap(setup: HomSetup, xi):
    return HomSetup(
        mu_a=setup.mu_a,
        mu_b=setup.mu_b,
        det_c=setup.det_c,
        det_d=setup.det_d,
        splitter=setup.splitter,
        pol_mismatch=setup.pol_mismatch,
        temporal_overlap=xi,
    )


def port_intensities(setup: HomSetup, theta):
    """Output-port intensities I_c, I_d for relative phase(s) ``theta``."""
    t2 = setup.splitter.t_amp**2
    r2 = setup.splitter.r_amp**2
    k = (
        2.0
        * setup.splitter.t_amp
        * setup.splitter.r_amp
        * math.sqrt(setup.mu_a * setup.mu_b)
        * setup.temporal_overlap
        * math.cos(math.radians(setup.pol_mismatch))
    )
    cos_t = np.cos(theta)
    i_c = setup.mu_a * t2 + setup.mu_b * r2 + k * cos_t
    i_d = setup.mu_a * r2 + setup.mu_b * t2 - k * cos_t
    return i_c, i_d


def click_probs_given_phase(setup: HomSetup, theta):
    """Conditional click probabilities P_c(theta), P_d(theta)."""
    i_c, i_d = port_intensities(setup, theta)
    p_c = 1.0 - (1.0 - setup.det_c.dark_count_prob) * np.exp(-setup.det_c.efficiency * i_c)
    p_d = 1.0 - (1.0 - setup.det_d.dark_count_prob) * np.exp(-setup.det_d.efficiency * i_d)
    return p_c, p_d


def phase_integral_oracle(setup: HomSetup, quadrature_nodes=100_000):
    """Phase average by trapezoidal quadrature; independent of the closed forms.

    Returns (coincidence_probability, (P_c, P_d)).
    """
    if quadrature_nodes < 64:
        raise DomainError(f"need at least 64 quadrature nodes, got {quadrature_nodes}")
    theta = np.linspace(0.0, 2.0 * np.pi, int(quadrature_nodes))
    p_c, p_d = click_probs_given_phase(setup, theta)
    norm = 2.0 * np.pi
    coin = float(np.trapezoid(p_c * p_d, theta) / norm)
    return coin, (float(np.trapezoid(p_c, theta) / norm), float(np.trapezoid(p_d, theta) / norm))
