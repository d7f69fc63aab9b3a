"""Brute-force reference implementations used to cross-check production kernels.

Nothing here imports from ``app.imaging`` or ``app.metrics``: every quantity
is recomputed with explicit loops, direct DFT matrices, and two-pass moments.
"""

import math

import numpy as np

BT601 = (0.299, 0.587, 0.114)


# --- pixelwise ---


def loop_mse(ref: np.ndarray, cand: np.ndarray) -> float:
    total = 0.0
    count = 0
    for a, b in zip(ref.reshape(-1).tolist(), cand.reshape(-1).tolist()):
        total += (a - b) ** 2
        count += 1
    return total / count


def loop_rmse(ref: np.ndarray, cand: np.ndarray) -> float:
    return math.sqrt(loop_mse(ref, cand))


def loop_psnr(ref: np.ndarray, cand: np.ndarray, peak: float = 1.0) -> float:
    value = loop_mse(ref, cand)
    return math.inf if value == 0 else 10.0 * math.log10(peak * peak / value)


def loop_sre(ref: np.ndarray, cand: np.ndarray) -> float:
    height, width, channels = ref.shape
    finite = []
    for c in range(channels):
        signal = 0.0
        error = 0.0
        for i in range(height):
            for j in range(width):
                signal += ref[i, j, c]
                error += (ref[i, j, c] - cand[i, j, c]) ** 2
        n = height * width
        mean = signal / n
        band_mse = error / n
        if band_mse == 0:
            continue
        if mean == 0:
            return -math.inf
        finite.append(10.0 * math.log10(mean * mean / band_mse))
    return math.inf if not finite else sum(finite) / len(finite)


# --- luminance and windows ---


def loop_luminance(pixels: np.ndarray, peak: float = 1.0) -> np.ndarray:
    height, width, channels = pixels.shape
    out = np.zeros((height, width))
    for i in range(height):
        for j in range(width):
            if channels == 1:
                out[i, j] = pixels[i, j, 0]
            else:
                y = BT601[0] * pixels[i, j, 0] + BT601[1] * pixels[i, j, 1] + BT601[2] * pixels[i, j, 2]
                out[i, j] = min(max(y, 0.0), 1.0)
    return out * peak


def gaussian_weights(size: int, sigma: float) -> np.ndarray:
    center = (size - 1) / 2.0
    weights = np.zeros((size, size))
    for u in range(size):
        for v in range(size):
            weights[u, v] = math.exp(-((u - center) ** 2 + (v - center) ** 2) / (2.0 * sigma * sigma))
    return weights / weights.sum()


def loop_window_stats(a: np.ndarray, b: np.ndarray, window: int, stride: int = 1, weights: np.ndarray | None = None):
    """Two-pass (optionally weighted) moments for every fully contained window."""
    if weights is None:
        weights = np.full((window, window), 1.0 / (window * window))
    rows = []
    for i in range(0, a.shape[0] - window + 1, stride):
        row = []
        for j in range(0, a.shape[1] - window + 1, stride):
            wa = a[i : i + window, j : j + window]
            wb = b[i : i + window, j : j + window]
            mu_a = float(np.sum(weights * wa))
            mu_b = float(np.sum(weights * wb))
            var_a = float(np.sum(weights * (wa - mu_a) ** 2))
            var_b = float(np.sum(weights * (wb - mu_b) ** 2))
            covar = float(np.sum(weights * (wa - mu_a) * (wb - mu_b)))
            row.append((mu_a, mu_b, var_a, var_b, covar))
        rows.append(row)
    return rows


def loop_ssim(
    ref: np.ndarray, cand: np.ndarray, window: int = 11, sigma: float = 1.5, k1: float = 0.01, k2: float = 0.03
) -> float:
    a, b = loop_luminance(ref), loop_luminance(cand)
    c1, c2 = (k1 * 1.0) ** 2, (k2 * 1.0) ** 2
    values = []
    for row in loop_window_stats(a, b, window, weights=gaussian_weights(window, sigma)):
        for mu_a, mu_b, var_a, var_b, covar in row:
            values.append(
                ((2 * mu_a * mu_b + c1) * (2 * covar + c2)) / ((mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2))
            )
    return sum(values) / len(values)


def loop_uiq(ref: np.ndarray, cand: np.ndarray, window: int = 8, tol: float = 1e-12) -> float:
    a, b = loop_luminance(ref), loop_luminance(cand)
    values = []
    for row in loop_window_stats(a, b, window):
        for mu_a, mu_b, var_a, var_b, covar in row:
            contrast = var_a + var_b
            luminance = mu_a**2 + mu_b**2
            if contrast <= tol or luminance <= tol:
                values.append(1.0 if contrast <= tol and abs(mu_a - mu_b) <= tol else 0.0)
            else:
                values.append(4 * covar * mu_a * mu_b / (contrast * luminance))
    return sum(values) / len(values)


# --- direct DFT ---


def dft_matrix(n: int) -> np.ndarray:
    k = np.arange(n).reshape(-1, 1)
    m = np.arange(n).reshape(1, -1)
    return np.exp(-2j * np.pi * k * m / n)


def naive_dft2(x: np.ndarray) -> np.ndarray:
    rows, cols = x.shape
    return dft_matrix(rows) @ x @ dft_matrix(cols)


def naive_idft2(spectrum: np.ndarray) -> np.ndarray:
    rows, cols = spectrum.shape
    return np.conj(dft_matrix(rows)) @ spectrum @ np.conj(dft_matrix(cols)) / (rows * cols)


def direct_dft2(x: np.ndarray) -> np.ndarray:
    """O(N^4) textbook DFT, for tiny inputs only."""
    rows, cols = x.shape
    out = np.zeros((rows, cols), dtype=complex)
    for u in range(rows):
        for v in range(cols):
            total = 0j
            for i in range(rows):
                for j in range(cols):
                    total += x[i, j] * np.exp(-2j * np.pi * (u * i / rows + v * j / cols))
            out[u, v] = total
    return out


# --- FSIM on a separate code path ---


def _unshifted_frequencies(n: int) -> np.ndarray:
    freqs = np.zeros(n)
    denom = n if n % 2 == 0 else n - 1
    for k in range(n):
        freqs[k] = k / denom if k <= (n - 1) // 2 else (k - n) / denom
    return freqs


def _phase_congruency_oracle(
    image: np.ndarray, scales: int, orientations: int, min_wavelength: float, mult: float, sigma_f: float
) -> np.ndarray:
    rows, cols = image.shape
    fy = _unshifted_frequencies(rows).reshape(-1, 1) * np.ones((1, cols))
    fx = np.ones((rows, 1)) * _unshifted_frequencies(cols).reshape(1, -1)
    radius = np.sqrt(fx**2 + fy**2)
    lowpass = 1.0 / (1.0 + (radius / 0.45) ** 30)
    radius[0, 0] = 1.0
    theta = np.arctan2(-fy, fx)

    spectrum = naive_dft2(image)
    theta_sigma = math.pi / orientations / 1.2
    energy_total = np.zeros((rows, cols))
    amplitude_total = np.zeros((rows, cols))
    for o in range(orientations):
        angle = o * math.pi / orientations
        delta = np.abs(
            np.arctan2(
                np.sin(theta) * math.cos(angle) - np.cos(theta) * math.sin(angle),
                np.cos(theta) * math.cos(angle) + np.sin(theta) * math.sin(angle),
            )
        )
        spread = np.exp(-(delta**2) / (2 * theta_sigma**2))

        even_sum = np.zeros((rows, cols))
        odd_sum = np.zeros((rows, cols))
        amp_sum = np.zeros((rows, cols))
        responses = []
        kernels = []
        first_filter = None
        for s in range(scales):
            wavelength = min_wavelength * mult**s
            gabor = np.exp(-(np.log(radius * wavelength) ** 2) / (2 * math.log(sigma_f) ** 2)) * lowpass
            gabor[0, 0] = 0.0
            filt = gabor * spread
            if first_filter is None:
                first_filter = filt
            response = naive_idft2(spectrum * filt)
            responses.append(response)
            kernels.append(np.real(naive_idft2(filt)) * math.sqrt(rows * cols))
            even_sum += response.real
            odd_sum += response.imag
            amp_sum += np.abs(response)

        norm = np.sqrt(even_sum**2 + odd_sum**2) + 1e-4
        unit_even, unit_odd = even_sum / norm, odd_sum / norm
        energy = np.zeros((rows, cols))
        for response in responses:
            e, od = response.real, response.imag
            energy += e * unit_even + od * unit_odd - np.abs(e * unit_odd - od * unit_even)

        median_sq = float(np.median(np.abs(responses[0]) ** 2))
        noise_power = (median_sq / math.log(2.0)) / float(np.sum(first_filter**2))
        pair_sum = 0.0
        square_sum = 0.0
        for i in range(scales):
            square_sum += float(np.sum(kernels[i] ** 2))
            for j in range(i + 1, scales):
                pair_sum += float(np.sum(kernels[i] * kernels[j]))
        tau = math.sqrt((2 * noise_power * square_sum + 4 * noise_power * pair_sum) / 2)
        threshold = (tau * math.sqrt(math.pi / 2) + 2 * math.sqrt((2 - math.pi / 2) * tau**2)) / 1.7

        energy_total += np.maximum(energy - threshold, 0.0)
        amplitude_total += amp_sum

    pc = np.zeros((rows, cols))
    mask = amplitude_total > 0
    pc[mask] = energy_total[mask] / amplitude_total[mask]
    return pc


def _scharr_magnitude_oracle(image: np.ndarray) -> np.ndarray:
    kx = np.array([[3.0, 0.0, -3.0], [10.0, 0.0, -10.0], [3.0, 0.0, -3.0]]) / 16.0
    ky = kx.T
    rows, cols = image.shape
    padded = np.zeros((rows + 2, cols + 2))
    padded[1:-1, 1:-1] = image
    gx = np.zeros((rows, cols))
    gy = np.zeros((rows, cols))
    for u in range(3):
        for v in range(3):
            patch = padded[2 - u : 2 - u + rows, 2 - v : 2 - v + cols]
            gx += kx[u, v] * patch
            gy += ky[u, v] * patch
    return np.sqrt(gx**2 + gy**2)


def _block_mean(y: np.ndarray, factor: int) -> np.ndarray:
    h, w = y.shape[0] // factor, y.shape[1] // factor
    out = np.zeros((h, w))
    for i in range(h):
        for j in range(w):
            out[i, j] = y[i * factor : (i + 1) * factor, j * factor : (j + 1) * factor].mean()
    return out


def oracle_fsim(
    ref: np.ndarray,
    cand: np.ndarray,
    scales: int = 4,
    orientations: int = 4,
    min_wavelength: float = 6.0,
    mult: float = 2.0,
    sigma_f: float = 0.55,
    t1: float = 0.85,
    t2: float = 160.0,
) -> float:
    y1 = loop_luminance(ref, 255.0)
    y2 = loop_luminance(cand, 255.0)
    factor = max(1, int(math.floor(min(y1.shape) / 256 + 0.5)))
    if factor > 1:
        y1, y2 = _block_mean(y1, factor), _block_mean(y2, factor)

    pc1 = _phase_congruency_oracle(y1, scales, orientations, min_wavelength, mult, sigma_f)
    pc2 = _phase_congruency_oracle(y2, scales, orientations, min_wavelength, mult, sigma_f)
    g1, g2 = _scharr_magnitude_oracle(y1), _scharr_magnitude_oracle(y2)
    s_pc = (2 * pc1 * pc2 + t1) / (pc1**2 + pc2**2 + t1)
    s_g = (2 * g1 * g2 + t2) / (g1**2 + g2**2 + t2)
    weight = np.maximum(pc1, pc2)
    return float(np.sum(s_pc * s_g * weight) / np.sum(weight))
