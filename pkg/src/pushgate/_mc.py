"""Deterministic per-sample random draws for the Monte Carlo oracles.

Every sample i of a run is generated by a counter-based 64-bit generator
(Philox) keyed by (seed, i), so sample i is the same bit pattern no matter
how samples are batched, chunked or distributed over workers.  Each sample
consumes a fixed layout of uniforms:

    u0 -> E1   (exponential, inverse CDF)
    u1 -> E2
    u2 -> psi1 (uniform phase)
    u3 -> psi2
    u4 -> x    (normal position offset, inverse CDF)
    u5 -> spare

Chunked reductions must combine partial sums in chunk order (not completion
order) to keep floating-point sums bit-identical; chunk_bounds fixes the
chunk boundaries independently of the worker count.
"""

import numpy as np
from scipy.special import ndtri

N_DRAWS = 6
CHUNK = 4096
_MASK = (1 << 64) - 1


def sample_uniforms(seed, start, count, n_draws=N_DRAWS):
    """(count, n_draws) uniforms in [0,1); row i is keyed by (seed, start+i)."""
    seed = int(seed) & _MASK
    start = int(start)
    out = np.empty((count, n_draws))
    bg = np.random.Philox(key=[seed, 0])
    gen = np.random.Generator(bg)
    template = bg.state
    st = template["state"]
    for i in range(count):
        st["key"] = np.array([seed, (start + i) & _MASK], dtype=np.uint64)
        st["counter"] = np.zeros(4, dtype=np.uint64)
        template["buffer_pos"] = 4  # discard any buffered words
        template["has_uint32"] = 0
        template["uinteger"] = 0
        bg.state = template
        out[i] = gen.random(n_draws)
    return out


def thermal_draws(seed, start, count, kT_over_hw):
    """Per-sample motional draws: energies (units of hbar*omega) and phases.

    Returns (E1, E2, psi1, psi2, u4) where the energies are exponential with
    mean kT_over_hw via the inverse CDF and the phases are uniform on
    [0, 2 pi); u4 is the raw uniform reserved for a position draw.
    """
    u = sample_uniforms(seed, start, count)
    E1 = -kT_over_hw * np.log1p(-u[:, 0])
    E2 = -kT_over_hw * np.log1p(-u[:, 1])
    psi1 = 2.0 * np.pi * u[:, 2]
    psi2 = 2.0 * np.pi * u[:, 3]
    return E1, E2, psi1, psi2, u[:, 4]


def normal_from_uniform(u, sigma):
    """Gaussian draw of width sigma from a uniform, by the inverse CDF."""
    return sigma * ndtri(np.clip(u, 1e-300, 1.0 - 1e-16))


def chunk_bounds(total, chunk=CHUNK):
    """Fixed chunk boundaries [(start, count), ...] independent of workers."""
    bounds = []
    s = 0
    while s < total:
        c = min(chunk, total - s)
        bounds.append((s, c))
        s += c
    return bounds


def map_chunks(fn, total, workers=1, chunk=CHUNK):
    """Apply fn(start, count) per chunk, returning results in chunk order.

    With workers > 1 the chunks run on a thread pool; the result list is
    ordered by chunk index either way, so reductions are bit-identical for
    any worker count.
    """
    bounds = chunk_bounds(total, chunk)
    if workers <= 1 or len(bounds) <= 1:
        return [fn(s, c) for s, c in bounds]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(fn, s, c) for s, c in bounds]
        return [f.result() for f in futs]
