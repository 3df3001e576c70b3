"""Regenerates the frozen fixtures in this directory by brute force.

Everything is built from explicit shift matrices with numpy; nothing here
calls into the library. Run from the repository root:

    python3 tests/fixtures/generate.py
"""

import json
import pathlib

import numpy as np


def gaussian(L):
    n = np.arange(L)
    c = np.minimum(n, L - n).astype(float)
    g = np.zeros(L)
    for j in range(-8, 9):
        g += np.exp(-np.pi * (c + j * L) ** 2 / L)
    return g / np.linalg.norm(g)


def delta(L):
    g = np.zeros(L)
    g[0] = 1.0
    return g


def shift(L, x, xi):
    t = np.arange(L)
    P = np.zeros((L, L), dtype=complex)
    P[(t + x) % L, t] = 1.0
    return np.diag(np.exp(2j * np.pi * xi * t / L)) @ P


def synthesis(g, L, a, b):
    cols = [shift(L, k * a, l * b) @ g for k in range(L // a) for l in range(L // b)]
    return np.array(cols).T


def alternating_ratio(g, L):
    s = int(round(np.sqrt(L)))
    D = synthesis(g, L, s, s)
    c = np.array([(-1.0) ** (k + l) for k in range(s) for l in range(s)])
    sv = np.linalg.svd(D, compute_uv=False)
    return float(np.linalg.norm(D @ c) / np.linalg.norm(c)), float(sv[-1]), float(sv[0])


def main():
    out = {}
    ladder = {}
    for name, make in (("gaussian", gaussian), ("delta", delta)):
        rows = []
        for L in (16, 25, 36, 49, 64, 100):
            r, smin, smax = alternating_ratio(make(L), L)
            rows.append({"L": L, "ratio": r, "sigma_min": smin, "sigma_max": smax})
        ladder[name] = rows
    out["alternating_ladder"] = ladder

    g = gaussian(16)
    D = synthesis(g, 16, 4, 4)
    S = D @ D.conj().T
    ev = np.linalg.eigvalsh(S)
    out["gaussian_16_4_4"] = {"frame_lower": float(ev[0]), "frame_upper": float(ev[-1])}

    g = gaussian(12)
    D = synthesis(g, 12, 3, 4)
    ev = np.linalg.eigvalsh(D @ D.conj().T)
    out["gaussian_12_3_4"] = {"frame_lower": float(ev[0]), "frame_upper": float(ev[-1])}

    path = pathlib.Path(__file__).with_name("brute_force.json")
    path.write_text(json.dumps(out, indent=2) + "\n")


if __name__ == "__main__":
    main()
