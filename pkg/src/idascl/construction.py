"""Polar code construction via Gaussian-approximation density evolution.

Bit-channel reliabilities are tracked as the mean of the (Gaussian) LLR
distribution of each synthetic channel.  The check-node update uses the
standard two-regime closed-form approximation of the phi-function; the
variable-node update doubles the mean.  All check updates are carried out
in the log domain so that very reliable channels (mean LLR in the
thousands) do not underflow.
"""

import math

import numpy as np

# Constants of the closed-form phi approximation (small-argument regime
# phi(x) = exp(A*x^B + D) for 0 < x < PHI_SPLIT, asymptotic regime above).
_A = -0.4527
_B = 0.86
_D = 0.0218
_PHI_SPLIT = 10.0


def _log_phi(x):
    """log(phi(x)) for x > 0."""
    if x < _PHI_SPLIT:
        return _A * x ** _B + _D
    return 0.5 * math.log(math.pi / x) - x / 4.0 + math.log1p(-10.0 / (7.0 * x))


_LOG_PHI_SPLIT = _log_phi(_PHI_SPLIT)


def _log_phi_inv(log_y):
    """Inverse of _log_phi: the mean m with log(phi(m)) = log_y."""
    if log_y >= _LOG_PHI_SPLIT:
        # invert the closed-form small-argument regime directly
        return ((_D - log_y) / -_A) ** (1.0 / _B)
    # asymptotic regime: Newton iteration, seeded by the dominant -m/4 term
    m = max(_PHI_SPLIT, -4.0 * log_y)
    for _ in range(60):
        f = _log_phi(m) - log_y
        df = -0.5 / m - 0.25 + (10.0 / (7.0 * m * m)) / (1.0 - 10.0 / (7.0 * m))
        step = f / df
        m_new = m - step
        if m_new < _PHI_SPLIT:
            m_new = 0.5 * (m + _PHI_SPLIT)
        if abs(m_new - m) < 1e-12 * max(1.0, m):
            m = m_new
            break
        m = m_new
    return m


def _check_update(m):
    """Mean after the degraded (check-node) channel combination."""
    if m <= 0.0:
        return 0.0
    log_p = _log_phi(m)
    # log(1 - (1 - p)^2) = log(p) + log(2 - p)
    log_y = log_p + math.log(2.0 - math.exp(log_p))
    return _log_phi_inv(log_y)


def bit_channel_means(n_bits, design_sigma):
    """Mean LLR of every synthetic bit-channel, in natural index order.

    Parameters
    ----------
    n_bits : int
        Code length N, a power of 2.
    design_sigma : float
        Noise standard deviation used for construction; the channel LLR
        mean is 2/design_sigma**2.

    Returns
    -------
    ndarray of shape (N,), means ordered so that index i corresponds to
    input bit u[i] of the natural (non-bit-reversed) transform.
    """
    if n_bits < 1 or (n_bits & (n_bits - 1)) != 0:
        raise ValueError(f"N must be a power of 2, got {n_bits}")
    if design_sigma <= 0:
        raise ValueError(f"design_sigma must be positive, got {design_sigma}")
    means = np.array([2.0 / design_sigma**2])
    while means.size < n_bits:
        # each doubling appends one transform level as the new LSB of the
        # index: even index = degraded (check) channel, odd = upgraded
        out = np.empty(2 * means.size)
        out[0::2] = [_check_update(m) for m in means]
        out[1::2] = 2.0 * means
        means = out
    return means


def construct_frozen_set(n_bits, k_bits, design_sigma):
    """Frozen-bit mask for an (N, K) polar code designed at design_sigma.

    The N - K positions with the smallest GA mean LLR are frozen.
    Ties are resolved in favour of freezing the lower index (stable sort).

    Returns
    -------
    ndarray of bool, shape (N,), True marks a frozen position.
    """
    if not (0 < k_bits <= n_bits):
        raise ValueError(f"K must satisfy 0 < K <= N, got K={k_bits}, N={n_bits}")
    means = bit_channel_means(n_bits, design_sigma)
    order = np.argsort(means, kind="stable")
    mask = np.zeros(n_bits, dtype=bool)
    mask[order[: n_bits - k_bits]] = True
    return mask
