"""Canonical labeling of small tournaments by individualization-refinement.

Everything here works on the raw representation: a tuple ``out`` where
``out[v]`` is the bitmask of vertices dominated by ``v``. A labeled code is the
integer whose bits, most significant first, are the arc bits of pairs
``(0,1), (0,2), ..., (n-2,n-1)``; bit 1 means the lower vertex dominates.
"""

from __future__ import annotations

from functools import lru_cache


def out_from_code(n: int, code: int) -> tuple[int, ...]:
    out = [0] * n
    shift = n * (n - 1) // 2
    for i in range(n - 1):
        for j in range(i + 1, n):
            shift -= 1
            if (code >> shift) & 1:
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
    return tuple(out)


def relabeled_code(out, perm) -> int:
    """Code of the tournament whose vertex ``i`` is ``perm[i]`` of ``out``."""
    code = 0
    n = len(perm)
    for i in range(n - 1):
        row = out[perm[i]]
        for j in range(i + 1, n):
            code = (code << 1) | ((row >> perm[j]) & 1)
    return code


def code_from_out(out) -> int:
    return relabeled_code(out, range(len(out)))


sub_code = relabeled_code
"""Code of the subtournament on ``verts`` (ascending order keeps the labels)."""


def refine(out, cells):
    """Coarsest equitable refinement of the ordered partition ``cells``.

    A cell splits by the vector of out-degrees into every current cell; the
    pieces are ordered by that vector, so the result is label-invariant.
    """
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups = {}
            for v in cell:
                o = out[v]
                key = tuple([(o & m).bit_count() for m in masks])
                if key in groups:
                    groups[key].append(v)
                else:
                    groups[key] = [v]
            if len(groups) == 1:
                new.append(cell)
            else:
                split = True
                for key in sorted(groups):
                    new.append(groups[key])
        if not split:
            return new
        cells = new


def canonical_labeling(out, root=None):
    """Return ``(code, perm)`` minimizing the relabeled code over all leaves.

    ``perm[i]`` is the original vertex placed at canonical position ``i``.
    ``root`` may pass an already refined unit partition.
    """
    n = len(out)
    if n <= 1:
        return 0, list(range(n))
    if root is None:
        root = refine(out, [list(range(n))])
    best = -1
    best_perm = None
    stack = [root]
    while stack:
        cells = stack.pop()
        target = -1
        size = n + 1
        for i, cell in enumerate(cells):
            k = len(cell)
            if 1 < k < size:
                target = i
                size = k
        if target < 0:
            perm = [cell[0] for cell in cells]
            code = relabeled_code(out, perm)
            if best < 0 or code < best:
                best = code
                best_perm = perm
            continue
        cell = cells[target]
        head = cells[:target]
        tail = cells[target + 1:]
        for v in reversed(cell):
            rest = [w for w in cell if w != v]
            stack.append(refine(out, head + [[v], rest] + tail))
    return best, best_perm


@lru_cache(maxsize=1 << 20)
def canonical_code_of(n: int, code: int) -> int:
    """Canonical code of the labeled tournament ``(n, code)``; memoized."""
    if n <= 2:
        return 0
    return canonical_labeling(out_from_code(n, code))[0]


def dual_code(n: int, code: int) -> int:
    return code ^ ((1 << (n * (n - 1) // 2)) - 1)


@lru_cache(maxsize=1 << 20)
def is_self_dual_code(n: int, code: int) -> bool:
    return canonical_code_of(n, code) == canonical_code_of(n, dual_code(n, code))
