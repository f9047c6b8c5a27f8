"""Independent reference implementations used to check the package.

Everything here is deliberately written as plain loops over scalars so the
oracles share no code path with the vectorized implementations they verify.
"""

import numpy as np


def choquet_sum_oracle(values, m_vector, fuse=None, cap=False):
    """Telescoping-sum integral computed term by term.

    ``m_vector`` is the cardinality-measure vector m[0..n]; ``fuse`` is the
    binary function replacing the product (None means plain product);
    ``cap`` applies the final min with 1.
    """
    xs = sorted(float(v) for v in values)
    n = len(xs)
    total = 0.0
    previous = 0.0
    for i, x in enumerate(xs, start=1):
        weight = m_vector[n - i + 1]
        diff = x - previous
        total += diff * weight if fuse is None else fuse(diff, weight)
        previous = x
    return min(1.0, total) if cap else total


def gravitational_oracle(img, gravity, tonal_scale, iterations, window_radius):
    """All-pairs windowed force summation with explicit loops.

    Mirrors the documented update rule exactly (same expression structure
    and accumulation order) so results must agree bit for bit.
    """
    v = np.asarray(img, dtype=float).copy()
    rows, cols = v.shape
    w = window_radius
    offsets = [(dr, dc)
               for dr in range(-w, w + 1)
               for dc in range(-w, w + 1)
               if (dr, dc) != (0, 0)]
    for _ in range(iterations):
        force = np.zeros_like(v)
        for r in range(rows):
            for c in range(cols):
                acc = np.float64(0.0)
                for dr, dc in offsets:
                    nr, nc = r + dr, c + dc
                    if not (0 <= nr < rows and 0 <= nc < cols):
                        continue
                    dt = tonal_scale * (v[nr, nc] - v[r, c])
                    d2 = float(dr * dr + dc * dc) + dt * dt
                    if d2 > 0.0:
                        acc = acc + gravity * dt / d2 ** 1.5
                force[r, c] = acc
        v = np.clip(v + force / tonal_scale, 0.0, 1.0)
    return v


def dense_convolve_oracle(img, kernel):
    """Direct dense convolution with replicate padding, plain loops."""
    img = np.asarray(img, dtype=float)
    kernel = np.asarray(kernel, dtype=float)
    kr, kc = kernel.shape
    hr, hc = kr // 2, kc // 2
    rows, cols = img.shape
    out = np.zeros_like(img)
    for r in range(rows):
        for c in range(cols):
            acc = 0.0
            for i in range(kr):
                for j in range(kc):
                    rr = min(max(r + hr - i, 0), rows - 1)
                    cc = min(max(c + hc - j, 0), cols - 1)
                    acc += kernel[i, j] * img[rr, cc]
            out[r, c] = acc
    return out


def hysteresis_flood_oracle(thin, low, high):
    """Seeded flood fill over the weak mask with 8-connectivity."""
    thin = np.asarray(thin, dtype=float)
    rows, cols = thin.shape
    mask = thin >= low
    visited = np.zeros((rows, cols), dtype=bool)
    stack = [(r, c) for r, c in np.argwhere((thin >= high) & mask)]
    for r, c in stack:
        visited[r, c] = True
    while stack:
        r, c = stack.pop()
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                nr, nc = r + dr, c + dc
                if (0 <= nr < rows and 0 <= nc < cols
                        and mask[nr, nc] and not visited[nr, nc]):
                    visited[nr, nc] = True
                    stack.append((nr, nc))
    return visited


def maximum_matching_size_oracle(adjacency, n_right):
    """Maximum bipartite matching size via augmenting-path search."""
    match_right = [-1] * n_right

    def augment(u, seen):
        for v in adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_right[v] < 0 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    size = 0
    for u in range(len(adjacency)):
        if augment(u, set()):
            size += 1
    return size


def tolerance_adjacency(cand_pts, gt_pts, tolerance):
    """Adjacency lists of ground-truth indices within tolerance of each candidate."""
    adjacency = []
    for r, c in cand_pts:
        near = [j for j, (gr, gc) in enumerate(gt_pts)
                if (r - gr) ** 2 + (c - gc) ** 2 <= tolerance ** 2]
        adjacency.append(near)
    return adjacency


def schweizer_sklar_scalar(lam, x, y):
    """Scalar Schweizer-Sklar t-norm straight from its case split."""
    if lam == float("-inf"):
        return min(x, y)
    if lam == 0.0:
        return x * y
    if lam == float("inf"):
        return min(x, y) if (x == 1.0 or y == 1.0) else 0.0
    if lam < 0.0 and (x == 0.0 or y == 0.0):
        return 0.0
    return max(x ** lam + y ** lam - 1.0, 0.0) ** (1.0 / lam)
