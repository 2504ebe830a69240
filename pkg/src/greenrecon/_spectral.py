"""Internal spectral toolkit for uniform periodic samples.

Everything here works with real samples on a uniform grid x_j = j*period/n
(endpoint excluded) and represents the data by its trigonometric interpolant.
For even n the Nyquist mode is treated as a pure cosine, which is the unique
real-valued convention.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError

_EVAL_CHUNK = 2048


def uniform_grid(n: int, period: float, start: float = 0.0) -> np.ndarray:
    """Uniform grid of n points on [start, start + period), endpoint excluded."""
    return start + np.arange(n) * (period / n)


class TrigInterpolant:
    """Trigonometric interpolant of real samples on a uniform periodic grid.

    Parameters
    ----------
    values : array of real samples at ``uniform_grid(n, period)``
    period : period of the underlying function

    The interpolant can be evaluated at arbitrary points, differentiated
    spectrally, and antidifferentiated (see :class:`CumulativeTrig`).
    """

    def __init__(self, values, period: float):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size < 4:
            raise InvalidInputError("need a flat array of at least 4 samples")
        if not np.all(np.isfinite(values)):
            raise InvalidInputError("samples must be finite")
        if values.size % 2:
            raise InvalidInputError("sample count must be even")
        self.n = values.size
        self.period = float(period)
        self.coeffs = np.fft.rfft(values) / self.n
        self.omega = 2.0 * np.pi * np.arange(self.coeffs.size) / self.period
        # synthesis weights: mean and Nyquist count once, interior modes twice
        w = np.full(self.coeffs.size, 2.0)
        w[0] = 1.0
        w[-1] = 1.0
        self._w = w

    @property
    def mean(self) -> float:
        return float(self.coeffs[0].real)

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        wc = self._w * self.coeffs
        out = np.empty(x.size)
        for lo in range(0, x.size, _EVAL_CHUNK):
            xc = x[lo:lo + _EVAL_CHUNK]
            phase = np.exp(1j * np.outer(xc, self.omega))
            out[lo:lo + _EVAL_CHUNK] = (phase * wc).real.sum(axis=1)
        return out

    def derivative_at(self, x) -> np.ndarray:
        """Derivative of the interpolant at arbitrary points."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        wc = self._w * self.coeffs * (1j * self.omega)
        out = np.empty(x.size)
        for lo in range(0, x.size, _EVAL_CHUNK):
            xc = x[lo:lo + _EVAL_CHUNK]
            phase = np.exp(1j * np.outer(xc, self.omega))
            out[lo:lo + _EVAL_CHUNK] = (phase * wc).real.sum(axis=1)
        return out

    def antiderivative(self, mean: float | None = None) -> "CumulativeTrig":
        return CumulativeTrig(self, mean=mean)


class CumulativeTrig:
    """Antiderivative S of a trigonometric interpolant, with S(0) = 0.

    S(x) = mean*x + P(x) where P is the periodic part. The mean slope may be
    overridden (used to pin a cumulative map to an exact total increment).
    """

    def __init__(self, interp: TrigInterpolant, mean: float | None = None):
        self.interp = interp
        self.mean = interp.mean if mean is None else float(mean)
        wc = interp._w[1:] * interp.coeffs[1:]
        self.pcoeffs = wc / (1j * interp.omega[1:])
        self.omega = interp.omega[1:]
        self.p0 = -float(np.sum(self.pcoeffs).real)
        self.period = interp.period

    def __call__(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(x.size)
        for lo in range(0, x.size, _EVAL_CHUNK):
            xc = x[lo:lo + _EVAL_CHUNK]
            phase = np.exp(1j * np.outer(xc, self.omega))
            out[lo:lo + _EVAL_CHUNK] = (phase * self.pcoeffs).real.sum(axis=1)
        return self.mean * x + out + self.p0

    def slope(self, x) -> np.ndarray:
        """dS/dx, i.e. the interpolant itself (with the overridden mean)."""
        return self.interp(x) + (self.mean - self.interp.mean)

    @property
    def total(self) -> float:
        """S(period) = mean * period (the periodic part vanishes)."""
        return self.mean * self.period

    def node_values(self) -> np.ndarray:
        """S at the original uniform nodes, computed by inverse FFT."""
        n = self.interp.n
        full = np.zeros(n // 2 + 1, dtype=complex)
        # rfft normalization: irfft expects unscaled coefficients
        full[1:] = self.interp.coeffs[1:] / (1j * self.interp.omega[1:]) * n
        # Nyquist cosine integrates to a sine, which vanishes at the nodes
        full[-1] = 0.0
        periodic = np.fft.irfft(full, n)
        x = uniform_grid(n, self.period)
        return self.mean * x + periodic - periodic[0]


def derivative_samples(values, period: float) -> np.ndarray:
    """Spectral derivative of uniform periodic samples, at the same nodes."""
    values = np.asarray(values, dtype=float)
    n = values.size
    c = np.fft.rfft(values)
    omega = 2.0 * np.pi * np.arange(c.size) / period
    d = c * (1j * omega)
    if n % 2 == 0:
        d[-1] = 0.0  # Nyquist cosine has zero derivative at the nodes
    return np.fft.irfft(d, n)


def resample_uniform(values, m: int) -> np.ndarray:
    """Resample uniform periodic samples onto m uniform points (FFT zero-pad)."""
    values = np.asarray(values, dtype=float)
    n = values.size
    if m == n:
        return values.copy()
    if m < n:
        raise InvalidInputError("resample target must not be coarser")
    c = np.fft.rfft(values)
    out = np.zeros(m // 2 + 1, dtype=complex)
    out[: n // 2] = c[: n // 2]
    if n % 2 == 0:
        out[n // 2] = 0.5 * c[n // 2]  # split Nyquist when it becomes interior
    else:
        out[: c.size] = c
    return np.fft.irfft(out, m) * (m / n)


def trig_sup_abs(values, oversample: int = 8) -> float:
    """Supremum of |interpolant| of uniform periodic samples.

    Resamples on an oversampled grid and polishes the discrete maximum with a
    parabolic fit; accurate to roughly (oversample*n)^-4 relative.
    """
    values = np.asarray(values, dtype=float)
    fine = np.abs(resample_uniform(values, oversample * values.size))
    i = int(np.argmax(fine))
    m = fine.size
    ym, y0, yp = fine[(i - 1) % m], fine[i], fine[(i + 1) % m]
    den = ym - 2.0 * y0 + yp
    best = y0
    if den < -1e-300:
        best = y0 - (yp - ym) ** 2 / (8.0 * den)
    return float(max(best, y0, np.max(np.abs(values))))


def invert_increasing(cumulative: CumulativeTrig, targets, lo: float, hi: float,
                      tol: float | None = None, max_iter: int = 100) -> np.ndarray:
    """Solve S(x) = t for each target on [lo, hi], S strictly increasing.

    Newton iteration on the interpolant with a bracketing bisection fallback;
    terminates when every residual |S(x) - t| falls below ``tol`` (default:
    a few dozen ulps of the total increment, which Newton reaches in a handful
    of extra iterations and which keeps downstream spectra at rounding level).
    """
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    s_lo = float(cumulative(np.array([lo]))[0])
    s_hi = float(cumulative(np.array([hi]))[0])
    span = s_hi - s_lo
    if not span > 0:
        raise InvalidInputError("cumulative function is not increasing on the interval")
    if tol is None:
        tol = 64.0 * np.finfo(float).eps * max(1.0, abs(span))
    xlo = np.full(t.shape, lo)
    xhi = np.full(t.shape, hi)
    x = lo + (hi - lo) * np.clip((t - s_lo) / span, 0.0, 1.0)
    for _ in range(max_iter):
        resid = cumulative(x) - t
        if float(np.max(np.abs(resid))) <= tol:
            break
        xlo = np.where(resid < 0, x, xlo)
        xhi = np.where(resid > 0, x, xhi)
        step = resid / cumulative.slope(x)
        xn = x - step
        bad = ~np.isfinite(xn) | (xn < xlo) | (xn > xhi)
        x = np.where(bad, 0.5 * (xlo + xhi), xn)
    # pin exact endpoints
    x = np.where(t <= s_lo, lo, x)
    x = np.where(t >= s_hi, hi, x)
    return x
