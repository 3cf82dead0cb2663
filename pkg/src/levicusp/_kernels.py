"""Hot orbit kernels with a numba fast path and a pure-numpy fallback.

The expensive searches in this package are all breadth-first orbit
computations of small integer sets (sets of root-pair ids) under a list of
permutations (simple reflections acting on roots).  States are kept as sorted
int32 rows; deduplication keys are 256-bit masks packed into four uint64
words, which is exact for every root system handled here (at most 144 pairs).

Both implementations enumerate the orbit in the identical order
(level by level, generators outer, states inner), so orbits, Schreier trees
and canonical forms are byte-identical across paths.  Set
``LEVICUSP_NO_NUMBA=1`` to force the numpy path; the numba path is also
skipped automatically when numba is unavailable.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("LEVICUSP_NO_NUMBA", "") not in ("", "0")

if not _FORCE_NUMPY:
    try:
        import numba
        from numba import njit
        from numba.typed import Dict as _NumbaDict
        from numba.core import types as _nbtypes

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - exercised only without numba
        _HAVE_NUMBA = False
else:
    _HAVE_NUMBA = False

MASK_WORDS = 4  # 256 bits; enough for every pair count in scope


def implementation() -> str:
    """Name of the active kernel path ('numba' or 'numpy')."""
    return "numba" if _HAVE_NUMBA else "numpy"


def rows_to_masks(rows: np.ndarray) -> np.ndarray:
    """Pack (n, k) sorted id rows into (n, 4) uint64 bitmasks."""
    n = rows.shape[0]
    masks = np.zeros((n, MASK_WORDS), dtype=np.uint64)
    words = rows // 64
    bits = rows % 64
    for w in range(MASK_WORDS):
        sel = words == w
        if sel.any():
            vals = np.where(sel, np.uint64(1) << bits.astype(np.uint64), np.uint64(0))
            masks[:, w] = np.bitwise_or.reduce(vals, axis=1)
    return masks


# ---------------------------------------------------------------------------
# numpy fallback path


def _pairset_orbit_numpy(pairperms: np.ndarray, start: np.ndarray, build_tree: bool):
    k = start.shape[0]
    ngens = pairperms.shape[0]
    states = [np.sort(start.astype(np.int32))]
    seen = {states[0].tobytes(): 0}
    parent = [-1]
    pgen = [-1]
    level = [0]
    canon = 0
    while level:
        block = np.vstack([states[i] for i in level])
        nxt = []
        for gi in range(ngens):
            imgs = np.sort(pairperms[gi][block], axis=1)
            for row_i in range(imgs.shape[0]):
                key = imgs[row_i].tobytes()
                if key not in seen:
                    idx = len(states)
                    seen[key] = idx
                    states.append(imgs[row_i].copy())
                    parent.append(level[row_i])
                    pgen.append(gi)
                    nxt.append(idx)
                    if tuple(imgs[row_i]) < tuple(states[canon]):
                        canon = idx
        level = nxt
    out = np.vstack(states) if len(states) > 1 else states[0].reshape(1, k)
    if build_tree:
        return out, np.array(parent, dtype=np.int32), np.array(pgen, dtype=np.int32), canon
    return out, None, None, canon


# ---------------------------------------------------------------------------
# numba path

if _HAVE_NUMBA:

    _KEY_TYPE = _nbtypes.UniTuple(_nbtypes.uint64, MASK_WORDS)
    _VAL_TYPE = _nbtypes.int32

    @njit(cache=True)
    def _mask_of(row):
        m = np.zeros(MASK_WORDS, dtype=np.uint64)
        for x in row:
            m[x // 64] |= np.uint64(1) << np.uint64(x % 64)
        return m

    @njit(cache=True)
    def _row_less(a, b):
        for i in range(a.shape[0]):
            if a[i] < b[i]:
                return True
            if a[i] > b[i]:
                return False
        return False

    @njit(cache=True)
    def _pairset_orbit_numba(pairperms, start):
        k = start.shape[0]
        ngens = pairperms.shape[0]
        cap = 1024
        states = np.empty((cap, k), dtype=np.int32)
        states[0] = np.sort(start)
        parent = np.empty(cap, dtype=np.int32)
        pgen = np.empty(cap, dtype=np.int32)
        parent[0] = -1
        pgen[0] = -1
        seen = _NumbaDict.empty(key_type=_KEY_TYPE, value_type=_VAL_TYPE)
        m0 = _mask_of(states[0])
        seen[(m0[0], m0[1], m0[2], m0[3])] = 0
        n = 1
        canon = 0
        level = np.empty(cap, dtype=np.int32)
        level[0] = 0
        nlevel = 1
        img = np.empty(k, dtype=np.int32)
        while nlevel > 0:
            nxt = np.empty(max(cap, 2 * nlevel * ngens), dtype=np.int32)
            nnxt = 0
            for gi in range(ngens):
                perm = pairperms[gi]
                for li in range(nlevel):
                    s = level[li]
                    for j in range(k):
                        img[j] = perm[states[s, j]]
                    img_s = np.sort(img)
                    m = _mask_of(img_s)
                    key = (m[0], m[1], m[2], m[3])
                    if key not in seen:
                        if n >= cap:
                            cap *= 2
                            new_states = np.empty((cap, k), dtype=np.int32)
                            new_states[:n] = states[:n]
                            states = new_states
                            new_parent = np.empty(cap, dtype=np.int32)
                            new_parent[:n] = parent[:n]
                            parent = new_parent
                            new_pgen = np.empty(cap, dtype=np.int32)
                            new_pgen[:n] = pgen[:n]
                            pgen = new_pgen
                        seen[key] = n
                        states[n] = img_s
                        parent[n] = s
                        pgen[n] = gi
                        if _row_less(img_s, states[canon]):
                            canon = n
                        nxt[nnxt] = n
                        nnxt += 1
                        n += 1
            level = nxt
            nlevel = nnxt
        return states[:n].copy(), parent[:n].copy(), pgen[:n].copy(), canon


def pairset_orbit(pairperms: np.ndarray, start, build_tree: bool = False):
    """Orbit of a sorted id set under permutations of the ids.

    Returns ``(states, parent, pgen, canon_index)`` where ``states`` is an
    (n, k) int32 array of sorted rows in BFS order, ``parent``/``pgen``
    encode the Schreier tree (None unless ``build_tree``), and
    ``states[canon_index]`` is the lexicographically least row of the orbit.
    """
    start = np.asarray(start, dtype=np.int32)
    if start.ndim != 1:
        raise ValueError("start must be a 1-d id array")
    pairperms = np.ascontiguousarray(pairperms, dtype=np.int32)
    if start.shape[0] == 0:
        states = np.zeros((1, 0), dtype=np.int32)
        tree = (np.array([-1], dtype=np.int32), np.array([-1], dtype=np.int32))
        return (states, *tree, 0) if build_tree else (states, None, None, 0)
    if _HAVE_NUMBA:
        states, parent, pgen, canon = _pairset_orbit_numba(pairperms, start)
        if build_tree:
            return states, parent, pgen, canon
        return states, None, None, canon
    return _pairset_orbit_numpy(pairperms, start, build_tree)


def canonical_pairset(pairperms: np.ndarray, start) -> tuple:
    """Lexicographically least orbit element, as a tuple of ids."""
    states, _, _, canon = pairset_orbit(pairperms, start, build_tree=False)
    return tuple(int(x) for x in states[canon])
