"""Independent oracles the tests check the production code against.

Each oracle re-derives its answer by a different route than the module
it verifies: set arithmetic for morphology, an exhaustive scan for
Otsu, a whole-grid flood fill, a literal double-loop transcription of
the boundary pair counter, a Snyder-series forward projection for the
geodesy round trip, and a division-free even-odd test for polygons.
"""

from __future__ import annotations

import math

import numpy as np

A_HAYFORD = 6378388.0
B_HAYFORD = 6356911.946130


def forward_transverse_mercator(lat_deg: float, lon_deg: float, zone: int,
                                south: bool) -> tuple[float, float]:
    """Geodetic -> UTM on the Hayford ellipsoid (Snyder's series),
    k0 = 0.9996, with the usual false easting/northing."""
    a = A_HAYFORD
    b = B_HAYFORD
    e2 = (a * a - b * b) / (a * a)
    ep2 = e2 / (1 - e2)
    k0 = 0.9996
    lam0 = math.radians(zone * 6 - 183)
    phi = math.radians(lat_deg)
    lam = math.radians(lon_deg)
    n = a / math.sqrt(1 - e2 * math.sin(phi) ** 2)
    t = math.tan(phi) ** 2
    c = ep2 * math.cos(phi) ** 2
    big_a = (lam - lam0) * math.cos(phi)
    m = a * ((1 - e2 / 4 - 3 * e2 ** 2 / 64 - 5 * e2 ** 3 / 256) * phi
             - (3 * e2 / 8 + 3 * e2 ** 2 / 32 + 45 * e2 ** 3 / 1024) * math.sin(2 * phi)
             + (15 * e2 ** 2 / 256 + 45 * e2 ** 3 / 1024) * math.sin(4 * phi)
             - (35 * e2 ** 3 / 3072) * math.sin(6 * phi))
    easting = k0 * n * (big_a + (1 - t + c) * big_a ** 3 / 6
                        + (5 - 18 * t + t ** 2 + 72 * c - 58 * ep2) * big_a ** 5 / 120) \
        + 500000.0
    northing = k0 * (m + n * math.tan(phi) * (big_a ** 2 / 2
               + (5 - t + 9 * c + 4 * c ** 2) * big_a ** 4 / 24
               + (61 - 58 * t + t ** 2 + 600 * c - 330 * ep2) * big_a ** 6 / 720))
    if south:
        northing += 10000000.0
    return easting, northing


def perimeter_oracle(mask: np.ndarray) -> tuple[float, int, int]:
    """Literal transcription of the boundary pair counter: complement the
    image, mark interior member pixels with a false 4-neighbor, then scan
    for right/down lateral pairs and down-diagonal pairs."""
    imagen = np.asarray(mask, dtype=np.int64)
    m, n = imagen.shape
    im = np.ones((m, n), dtype=np.int64) - imagen
    ima = np.zeros((m, n), dtype=np.int64)

    masc = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    for i in range(1, m - 1):
        for j in range(1, n - 1):
            if im[i, j] == 0:
                ima[i, j] = 1
                total = 0
                for di in range(3):
                    for dj in range(3):
                        if masc[di][dj] and im[i - 1 + di, j - 1 + dj]:
                            total += 1
                if total == 0:
                    ima[i, j] = 0

    p_lado = 0
    p_diag = 0
    for i in range(1, m - 1):
        for j in range(1, n - 1):
            if ima[i, j] == 1:
                if ima[i, j + 1] or ima[i + 1, j]:
                    p_lado = p_lado + 1
                if ima[i + 1, j - 1] or ima[i + 1, j + 1]:
                    p_diag = p_diag + 1

    perimetro = p_lado * 0.030 + 1.41 * p_diag * 0.030
    return perimetro, p_lado, p_diag


def otsu_oracle(counts) -> int:
    """Exhaustive scan of all 256 cut points for maximal between-class
    variance; ties keep the lowest cut."""
    counts = [int(c) for c in counts]
    total = sum(counts)
    total_sum = sum(i * c for i, c in enumerate(counts))
    best_t = 0
    best_sigma = -1.0
    w0 = 0
    s0 = 0
    for t in range(256):
        w0 += counts[t]
        s0 += t * counts[t]
        w1 = total - w0
        s1 = total_sum - s0
        if w0 == 0 or w1 == 0:
            sigma = 0.0
        else:
            mu0 = s0 / w0
            mu1 = s1 / w1
            sigma = float(w0) * float(w1) * (mu0 - mu1) ** 2
        if sigma > best_sigma:
            best_sigma = sigma
            best_t = t
    return best_t


def dilate_oracle(mask: np.ndarray, offsets) -> np.ndarray:
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    out = np.zeros_like(mask)
    for r in range(h):
        for c in range(w):
            if mask[r, c]:
                for dr, dc in offsets:
                    rr, cc = r + dr, c + dc
                    if 0 <= rr < h and 0 <= cc < w:
                        out[rr, cc] = True
    return out


def erode_oracle(mask: np.ndarray, offsets) -> np.ndarray:
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    out = np.zeros_like(mask)
    for r in range(h):
        for c in range(w):
            ok = True
            for dr, dc in offsets:
                rr, cc = r + dr, c + dc
                if not (0 <= rr < h and 0 <= cc < w and mask[rr, cc]):
                    ok = False
                    break
            out[r, c] = ok
    return out


def flood_fill_oracle(mask: np.ndarray) -> np.ndarray:
    """Fill holes by flooding the whole-grid background from the border."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    outside = np.zeros_like(mask)
    stack = []
    for r in range(h):
        for c in (0, w - 1):
            if not mask[r, c]:
                stack.append((r, c))
    for c in range(w):
        for r in (0, h - 1):
            if not mask[r, c]:
                stack.append((r, c))
    while stack:
        r, c = stack.pop()
        if outside[r, c] or mask[r, c]:
            continue
        outside[r, c] = True
        if r > 0:
            stack.append((r - 1, c))
        if r < h - 1:
            stack.append((r + 1, c))
        if c > 0:
            stack.append((r, c - 1))
        if c < w - 1:
            stack.append((r, c + 1))
    return mask | (~mask & ~outside)


def point_in_rings_oracle(lon: float, lat: float, rings) -> bool:
    """Division-free even-odd ray cast; edge hits count as inside."""
    inside = False
    for ring in rings:
        for k in range(len(ring) - 1):
            x1, y1 = ring[k]
            x2, y2 = ring[k + 1]
            # exact on-segment check
            cross = (x2 - x1) * (lat - y1) - (y2 - y1) * (lon - x1)
            if (cross == 0.0 and min(x1, x2) <= lon <= max(x1, x2)
                    and min(y1, y2) <= lat <= max(y1, y2)):
                return True
            if (y1 > lat) != (y2 > lat):
                # lon < x-intersection without dividing: sign-adjusted compare
                lhs = (x1 - lon) * (y2 - y1) + (lat - y1) * (x2 - x1)
                if (lhs > 0) == (y2 > y1):
                    inside = not inside
    return inside
