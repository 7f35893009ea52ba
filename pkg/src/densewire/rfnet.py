"""Frequency-domain analysis of the signal path via ABCD-matrix cascades.

The full path — ribbon CPW feed, impedance taper, coaxial pin section,
bond-contact discontinuity — is modeled as a chain of two-port elements
whose per-frequency ABCD matrices multiply in order and convert to
S-parameters against arbitrary (real) port reference impedances.
Per-frequency evaluations are independent and vectorized over the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .tlines import SPEED_OF_LIGHT


@dataclass(frozen=True)
class UniformLine:
    """Lossless uniform transmission-line section."""

    z0: float
    eps_eff: float
    length: float
    label: str = ""

    def __post_init__(self):
        if self.z0 <= 0:
            raise ValueError("line impedance must be > 0")
        if self.eps_eff < 1.0:
            raise ValueError("effective permittivity must be >= 1")
        if self.length < 0:
            raise ValueError("length must be >= 0")


@dataclass(frozen=True)
class SeriesImpedance:
    """Series R + jwL element; models the pin-pad bond contact."""

    resistance: float = 0.0
    inductance: float = 0.0
    label: str = ""

    def __post_init__(self):
        if self.resistance < 0 or self.inductance < 0:
            raise ValueError("resistance and inductance must be >= 0")


@dataclass(frozen=True)
class ShuntAdmittance:
    """Shunt jwC element."""

    capacitance: float = 0.0
    label: str = ""

    def __post_init__(self):
        if self.capacitance < 0:
            raise ValueError("capacitance must be >= 0")


@dataclass(frozen=True)
class IdealAttenuator:
    """Matched resistive attenuator; z_ref is the impedance it is matched to."""

    attenuation_db: float
    z_ref: float = 50.0
    label: str = ""

    def __post_init__(self):
        if self.attenuation_db < 0:
            raise ValueError("attenuation must be >= 0 dB")
        if self.z_ref <= 0:
            raise ValueError("reference impedance must be > 0")


NetworkElement = Union[UniformLine, SeriesImpedance, ShuntAdmittance, IdealAttenuator]


def _element_abcd_grid(e: NetworkElement, f: np.ndarray) -> np.ndarray:
    """Per-frequency ABCD matrices for one element, shape (nf, 2, 2)."""
    nf = f.size
    m = np.zeros((nf, 2, 2), dtype=complex)
    if isinstance(e, UniformLine):
        beta_l = 2.0 * math.pi * f * math.sqrt(e.eps_eff) / SPEED_OF_LIGHT * e.length
        c, s = np.cos(beta_l), np.sin(beta_l)
        m[:, 0, 0] = c
        m[:, 0, 1] = 1j * e.z0 * s
        m[:, 1, 0] = 1j * s / e.z0
        m[:, 1, 1] = c
    elif isinstance(e, SeriesImpedance):
        zs = e.resistance + 1j * 2.0 * math.pi * f * e.inductance
        m[:, 0, 0] = 1.0
        m[:, 0, 1] = zs
        m[:, 1, 1] = 1.0
    elif isinstance(e, ShuntAdmittance):
        y = 1j * 2.0 * math.pi * f * e.capacitance
        m[:, 0, 0] = 1.0
        m[:, 1, 0] = y
        m[:, 1, 1] = 1.0
    elif isinstance(e, IdealAttenuator):
        gamma = e.attenuation_db * math.log(10.0) / 20.0
        m[:, 0, 0] = math.cosh(gamma)
        m[:, 0, 1] = e.z_ref * math.sinh(gamma)
        m[:, 1, 0] = math.sinh(gamma) / e.z_ref
        m[:, 1, 1] = math.cosh(gamma)
    else:
        raise TypeError(f"not a network element: {e!r}")
    return m


def element_abcd(e: NetworkElement, frequency: float) -> np.ndarray:
    """2x2 complex ABCD matrix of one element at one frequency."""
    return _element_abcd_grid(e, np.asarray([float(frequency)]))[0]


@dataclass(frozen=True)
class TwoPortNetwork:
    """Cascaded two-port: per-frequency ABCD matrices plus port references."""

    frequencies: np.ndarray
    abcd: np.ndarray           # (nf, 2, 2) complex
    z_src: float = 50.0
    z_load: float = 50.0

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        if f.ndim != 1 or f.size == 0:
            raise ValueError("frequencies must be a nonempty 1-D array")
        if f[0] < 0 or np.any(np.diff(f) <= 0):
            raise ValueError("frequencies must be non-negative and strictly increasing")
        if self.z_src <= 0 or self.z_load <= 0:
            raise ValueError("port impedances must be > 0")
        if self.abcd.shape != (f.size, 2, 2):
            raise ValueError("abcd must have shape (nf, 2, 2)")

    def determinants(self) -> np.ndarray:
        a = self.abcd
        return a[:, 0, 0] * a[:, 1, 1] - a[:, 0, 1] * a[:, 1, 0]


def cascade(elements, frequencies, z_src: float = 50.0, z_load: float = 50.0) -> TwoPortNetwork:
    """Multiply element ABCD matrices in chain order (first element at the source)."""
    elements = list(elements)
    if not elements:
        raise ValueError("cascade requires at least one element")
    f = np.asarray(frequencies, dtype=float)
    total = _element_abcd_grid(elements[0], f)
    for e in elements[1:]:
        total = total @ _element_abcd_grid(e, f)
    return TwoPortNetwork(frequencies=f, abcd=total, z_src=z_src, z_load=z_load)


@dataclass(frozen=True)
class FrequencyResponse:
    """S-parameters of a two-port versus frequency."""

    frequencies: np.ndarray
    s11: np.ndarray
    s21: np.ndarray
    s12: np.ndarray
    s22: np.ndarray
    z_src: float = 50.0
    z_load: float = 50.0

    def s11_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(np.abs(self.s11))

    def s21_db(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(np.abs(self.s21))


def to_s_parameters(net: TwoPortNetwork) -> FrequencyResponse:
    """ABCD to S conversion with (possibly unequal) real reference impedances."""
    a = net.abcd
    zs, zl = net.z_src, net.z_load
    A, B = a[:, 0, 0], a[:, 0, 1]
    C, D = a[:, 1, 0], a[:, 1, 1]
    den = A * zl + B + C * zs * zl + D * zs
    root = 2.0 * math.sqrt(zs * zl)
    return FrequencyResponse(
        frequencies=net.frequencies,
        s11=(A * zl + B - C * zs * zl - D * zs) / den,
        s21=root / den,
        s12=root * (A * D - B * C) / den,
        s22=(-A * zl + B - C * zs * zl + D * zs) / den,
        z_src=zs,
        z_load=zl,
    )


@dataclass(frozen=True)
class MismatchReport:
    response: FrequencyResponse
    worst_s11: float
    worst_s11_frequency: float
    elements: tuple = field(default=())

    def to_record(self) -> dict:
        return {
            "worst_s11": self.worst_s11,
            "worst_s11_frequency_hz": self.worst_s11_frequency,
            "points": int(self.response.frequencies.size),
            "f_lo_hz": float(self.response.frequencies[0]),
            "f_hi_hz": float(self.response.frequencies[-1]),
            "z_src_ohm": self.response.z_src,
            "z_load_ohm": self.response.z_load,
        }


MAX_BAND_HZ = 10e9  # the interconnect is specified DC to ~10 GHz


def build_signal_path(pin_length: float, interposer_z: float, system_z: float, *,
                      pin_eps_eff: float = 3.0, feed_length: float = 0.0,
                      feed_eps_eff: float = 3.0, taper_length: float = 0.0,
                      taper_segments: int = 16, bond_resistance: float = 0.0,
                      bond_inductance: float = 0.0) -> list:
    """Element chain for the default signal path, source side first.

    Zero-length sections contribute identity matrices and drop out.  The
    taper is a geometric impedance ladder of uniform sub-segments, the
    standard first-order treatment of a smooth transition.
    """
    elements: list[NetworkElement] = []
    if feed_length > 0:
        elements.append(UniformLine(system_z, feed_eps_eff, feed_length, label="cpw-feed"))
    if taper_length > 0 and taper_segments > 0:
        seg_len = taper_length / taper_segments
        for i in range(taper_segments):
            zi = system_z * (interposer_z / system_z) ** ((i + 0.5) / taper_segments)
            elements.append(UniformLine(zi, feed_eps_eff, seg_len, label=f"taper-{i:02d}"))
    elements.append(UniformLine(interposer_z, pin_eps_eff, pin_length, label="coax-pin"))
    elements.append(SeriesImpedance(bond_resistance, bond_inductance, label="bond"))
    return elements


def mismatch_report(pin_length: float, interposer_z: float, system_z: float,
                    band: tuple[float, float] = (0.0, 10e9), *,
                    points: int = 1001, **path_kwargs) -> MismatchReport:
    """Sweep the default signal path over `band` and locate the worst reflection.

    The grid is uniform and includes both band edges.  The band must stay
    within the interconnect's DC-10 GHz operating range.
    """
    f_lo, f_hi = band
    if not 0.0 <= f_lo < f_hi:
        raise ValueError("band must satisfy 0 <= f_lo < f_hi")
    if f_hi > MAX_BAND_HZ * (1 + 1e-9):
        raise ValueError(f"band upper edge {f_hi} Hz exceeds the {MAX_BAND_HZ:.0e} Hz operating range")
    if points < 2:
        raise ValueError("points must be >= 2")
    elements = build_signal_path(pin_length, interposer_z, system_z, **path_kwargs)
    freqs = np.linspace(f_lo, f_hi, points)
    net = cascade(elements, freqs, z_src=system_z, z_load=system_z)
    resp = to_s_parameters(net)
    mag = np.abs(resp.s11)
    i = int(np.argmax(mag))
    return MismatchReport(
        response=resp,
        worst_s11=float(mag[i]),
        worst_s11_frequency=float(freqs[i]),
        elements=tuple(elements),
    )


@dataclass(frozen=True)
class CrosstalkEstimate:
    """Coarse odd/even-mode impedance split of adjacent covered CPW traces.

    This is a rough proxy, not a field solution: coupling between shielded
    lines decays evanescently with edge separation on the scale of the
    cover height, splitting the line impedance by -/+ the coupling factor.
    Treat the split ratio as a relative indicator only.
    """

    z_even: float
    z_odd: float
    split_ratio: float
    note: str = "coarse estimate: odd/even impedance split proxy, not a field solution"


def crosstalk_split(spec, trace_spacing: float) -> CrosstalkEstimate:
    """Estimate the mode split of two neighboring traces at center spacing.

    Requires a covered CpwSpec (the shielded ribbon case): the cover sets
    the decay length of the inter-trace coupling.  A lower cover confines
    the field harder and shrinks the split.
    """
    from .tlines import cpw_impedance

    if not spec.covered:
        raise ValueError("the mode-split proxy is defined for covered (shielded) CPW")
    if trace_spacing <= spec.trace_width:
        raise ValueError("trace_spacing must exceed the trace width")
    z = cpw_impedance(spec)
    edge_separation = trace_spacing - spec.trace_width
    coupling = math.exp(-math.pi * edge_separation / (2.0 * spec.cover_height))
    z_even = z * (1.0 + coupling)
    z_odd = z * (1.0 - coupling)
    split = (z_even - z_odd) / (0.5 * (z_even + z_odd))
    return CrosstalkEstimate(z_even=z_even, z_odd=z_odd, split_ratio=split)


def response_csv(resp: FrequencyResponse) -> str:
    """CSV dump: frequency, Re/Im of S11 and S21, and dB magnitudes."""
    lines = ["frequency_hz,s11_re,s11_im,s21_re,s21_im,s11_db,s21_db"]
    s11_db, s21_db = resp.s11_db(), resp.s21_db()
    for i, f in enumerate(resp.frequencies):
        lines.append(
            f"{f:.10g},{resp.s11[i].real:.12g},{resp.s11[i].imag:.12g},"
            f"{resp.s21[i].real:.12g},{resp.s21[i].imag:.12g},"
            f"{s11_db[i]:.12g},{s21_db[i]:.12g}"
        )
    return "\n".join(lines) + "\n"


def touchstone(resp: FrequencyResponse) -> str:
    """Two-port Touchstone (v1) text, real/imaginary format.

    Touchstone v1 carries a single reference resistance; the source-port
    value is written and an unequal load reference is noted in a comment.
    """
    lines = [f"# Hz S RI R {resp.z_src:.12g}"]
    if resp.z_load != resp.z_src:
        lines.append(f"! port 2 reference impedance: {resp.z_load:.12g} ohm")
    for i, f in enumerate(resp.frequencies):
        s11, s21, s12, s22 = resp.s11[i], resp.s21[i], resp.s12[i], resp.s22[i]
        lines.append(
            f"{f:.10g} {s11.real:.12g} {s11.imag:.12g} {s21.real:.12g} {s21.imag:.12g} "
            f"{s12.real:.12g} {s12.imag:.12g} {s22.real:.12g} {s22.imag:.12g}"
        )
    return "\n".join(lines) + "\n"
