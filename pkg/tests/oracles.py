"""Slow reference implementations used only by the tests."""
import math


def periodic_stats_oracle(x, tau, alpha):
    """Loop over positions and windows using the mean / mean-of-squares formulas."""
    L = len(x)
    step = tau * (1 - alpha)
    stride = max(1, math.floor(step))
    beta = math.floor(L / step)
    beta = max(1, min(beta, (L - 1) // stride + 1))
    mu, sigma, counts = [], [], []
    for k in range(tau):
        vals = []
        for u in range(beta):
            t = k + u * stride
            if t <= L - 1:
                vals.append(float(x[t]))
        m = sum(vals) / len(vals)
        sq = sum(v * v for v in vals) / len(vals)
        mu.append(m)
        sigma.append(math.sqrt(max(sq - m * m, 0.0)))
        counts.append(len(vals))
    return mu, sigma, counts, beta


def pearson_oracle(a, b):
    """Two-pass textbook formula."""
    n = len(a)
    ma = sum(a) / n
    mb = sum(b) / n
    sab = sum((x - ma) * (y - mb) for x, y in zip(a, b))
    saa = sum((x - ma) ** 2 for x in a)
    sbb = sum((y - mb) ** 2 for y in b)
    return sab / math.sqrt(saa * sbb)
