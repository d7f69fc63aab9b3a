"""Phase congruency from a log-Gabor filter bank.

Follows the classical recipe used by FSIM: ``scales x orientations``
log-Gabor filters built on the native image grid, energy summed per
orientation, noise compensation from the smallest-scale response under a
Rayleigh model, and normalization by total amplitude.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft

from app.imaging.spectral import butterworth_lowpass, filter_spectrum, polar_frequency_grid

EPSILON = 1e-4
NOISE_K = 2.0
ANGULAR_SPREAD_RATIO = 1.2
LOWPASS_CUTOFF = 0.45
LOWPASS_ORDER = 15
# Empirical rescale of the noise threshold used by FSIM.
NOISE_THRESHOLD_DIVISOR = 1.7


@dataclass(frozen=True)
class LogGaborBank:
    """Radial and angular filter components for one image shape."""

    radial: list[np.ndarray]
    angular: list[np.ndarray]

    def transfer(self, scale: int, orientation: int) -> np.ndarray:
        return self.radial[scale] * self.angular[orientation]


def build_log_gabor_bank(
    shape: tuple[int, int],
    scales: int = 4,
    orientations: int = 4,
    min_wavelength: float = 6.0,
    mult: float = 2.0,
    sigma_f: float = 0.55,
) -> LogGaborBank:
    radius, theta = polar_frequency_grid(shape)
    lowpass = butterworth_lowpass(shape, LOWPASS_CUTOFF, LOWPASS_ORDER)

    radial: list[np.ndarray] = []
    for s in range(scales):
        center = 1.0 / (min_wavelength * mult**s)
        log_gabor = np.exp(-(np.log(radius / center) ** 2) / (2.0 * math.log(sigma_f) ** 2))
        log_gabor = log_gabor * lowpass
        log_gabor[0, 0] = 0.0
        radial.append(log_gabor)

    theta_sigma = math.pi / orientations / ANGULAR_SPREAD_RATIO
    sin_theta, cos_theta = np.sin(theta), np.cos(theta)
    angular: list[np.ndarray] = []
    for o in range(orientations):
        angle = o * math.pi / orientations
        ds = sin_theta * math.cos(angle) - cos_theta * math.sin(angle)
        dc = cos_theta * math.cos(angle) + sin_theta * math.sin(angle)
        dtheta = np.abs(np.arctan2(ds, dc))
        angular.append(np.exp(-(dtheta**2) / (2.0 * theta_sigma**2)))

    return LogGaborBank(radial=radial, angular=angular)


def phase_congruency(
    image: np.ndarray,
    scales: int = 4,
    orientations: int = 4,
    min_wavelength: float = 6.0,
    mult: float = 2.0,
    sigma_f: float = 0.55,
) -> np.ndarray:
    """Phase congruency map in [0, 1] for a 2-D luminance array."""
    image = np.asarray(image, dtype=np.float64)
    rows, cols = image.shape
    bank = build_log_gabor_bank(image.shape, scales, orientations, min_wavelength, mult, sigma_f)
    image_fft = fft.fft2(image)

    energy_all = np.zeros((rows, cols))
    amplitude_all = np.zeros((rows, cols))
    for o in range(orientations):
        responses = []
        # spatial-domain kernels feed the noise energy estimate
        spatial_o = []
        for s in range(scales):
            transfer = bank.transfer(s, o)
            responses.append(filter_spectrum(image_fft, transfer))
            spatial_o.append(np.real(fft.ifft2(transfer)) * math.sqrt(rows * cols))
        even = [np.real(eo) for eo in responses]
        odd = [np.imag(eo) for eo in responses]
        sum_even = np.sum(even, axis=0)
        sum_odd = np.sum(odd, axis=0)
        sum_amplitude = np.sum([np.abs(eo) for eo in responses], axis=0)

        x_energy = np.sqrt(sum_even**2 + sum_odd**2) + EPSILON
        mean_even = sum_even / x_energy
        mean_odd = sum_odd / x_energy
        energy = np.zeros((rows, cols))
        for e, od in zip(even, odd):
            energy += e * mean_even + od * mean_odd - np.abs(e * mean_odd - od * mean_even)

        threshold = _noise_threshold(responses[0], bank.transfer(0, o), spatial_o)
        energy_all += np.maximum(energy - threshold, 0.0)
        amplitude_all += sum_amplitude

    return np.divide(energy_all, amplitude_all, out=np.zeros_like(energy_all), where=amplitude_all > 0)


def _noise_threshold(smallest: np.ndarray, smallest_transfer: np.ndarray, spatial: list[np.ndarray]) -> float:
    """Noise energy threshold from the smallest-scale response (Rayleigh model)."""
    median_e2n = float(np.median(np.abs(smallest) ** 2))
    mean_e2n = -median_e2n / math.log(0.5)
    noise_power = mean_e2n / float(np.sum(smallest_transfer**2))

    sum_an2 = np.sum([k**2 for k in spatial], axis=0)
    sum_ai_aj = np.zeros_like(spatial[0])
    for i in range(len(spatial) - 1):
        for j in range(i + 1, len(spatial)):
            sum_ai_aj += spatial[i] * spatial[j]

    noise_energy2 = 2.0 * noise_power * float(np.sum(sum_an2)) + 4.0 * noise_power * float(np.sum(sum_ai_aj))
    tau = math.sqrt(noise_energy2 / 2.0)
    noise_energy = tau * math.sqrt(math.pi / 2.0)
    noise_sigma = math.sqrt((2.0 - math.pi / 2.0) * tau**2)
    return (noise_energy + NOISE_K * noise_sigma) / NOISE_THRESHOLD_DIVISOR
