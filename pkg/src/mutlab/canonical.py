"""Canonical labelling of small quivers by colour refinement + individualisation.

A quiver without 2-cycles is determined by its skew-symmetric exchange
matrix, so the canonical form is the lexicographically smallest upper
triangle of ``P b P^T`` over all vertex orderings ``P`` that keep mutable
vertices ahead of frozen ones.  The search only visits orderings produced by
the refinement tree, which is isomorphism-invariant, so the minimum is a
complete invariant.
"""

from __future__ import annotations

import struct

__all__ = ["canonical_form", "encode_key", "decode_key"]


def _dense(values):
    ranks = {v: i for i, v in enumerate(sorted(set(values)))}
    return [ranks[v] for v in values], len(ranks)


def _refine(nbrs, colors, ncells):
    n = len(colors)
    while True:
        sigs = [
            (colors[v], tuple(sorted([(colors[u], w) for u, w in nbrs[v]])))
            for v in range(n)
        ]
        new, count = _dense(sigs)
        if count == ncells:
            return colors, ncells
        colors, ncells = new, count
        if ncells == n:
            return colors, ncells


def _target_cell(colors, ncells):
    sizes = [0] * ncells
    for c in colors:
        sizes[c] += 1
    best = None
    for c, s in enumerate(sizes):
        if s > 1 and (best is None or s < sizes[best]):
            best = c
    return [v for v, c in enumerate(colors) if c == best]


def canonical_form(b, n_mutable):
    """Return ``(code, order)`` for the exchange matrix ``b``.

    ``code`` is a tuple ``(n_mutable, n_frozen, upper-triangle entries...)``;
    ``order[i]`` is the (0-based) vertex of ``b`` placed at canonical
    position ``i``.
    """
    n = len(b)
    nbrs = [[(u, b[v][u]) for u in range(n) if b[v][u]] for v in range(n)]
    init = []
    for v in range(n):
        row = tuple(sorted(w for _, w in nbrs[v]))
        init.append((v >= n_mutable, row))
    colors, ncells = _dense(init)
    colors, ncells = _refine(nbrs, colors, ncells)

    best_code = None
    best_order = None
    stack = [(colors, ncells)]
    while stack:
        colors, ncells = stack.pop()
        if ncells == n:
            order = [0] * n
            for v, c in enumerate(colors):
                order[c] = v
            code = tuple(
                b[order[i]][order[j]] for i in range(n) for j in range(i + 1, n)
            )
            if best_code is None or code < best_code:
                best_code, best_order = code, order
            continue
        for v in reversed(_target_cell(colors, ncells)):
            split = [2 * c for c in colors]
            split[v] -= 1
            child, count = _dense(split)
            stack.append(_refine(nbrs, child, count))
    if best_code is None:
        best_code, best_order = (), []
    return (n_mutable, n - n_mutable) + best_code, best_order


_OFFSET = 1 << 31


_WIDE = b"\xff\xff"


def encode_key(code):
    """Pack a canonical code into bytes.

    Entries that fit in 32 bits use fixed-width fields, so byte order matches
    tuple order.  Larger multiplicities (mutation-infinite classes) fall back
    to a prefixed decimal encoding.
    """
    nm, nf = code[0], code[1]
    head = struct.pack(">HH", nm, nf)
    if all(-_OFFSET <= c < _OFFSET for c in code[2:]):
        return head + struct.pack(f">{len(code) - 2}I", *(c + _OFFSET for c in code[2:]))
    return _WIDE + head + ",".join(map(str, code[2:])).encode()


def decode_key(key):
    if key[:2] == _WIDE:
        nm, nf = struct.unpack(">HH", key[2:6])
        text = key[6:].decode()
        return (nm, nf) + (tuple(int(c) for c in text.split(",")) if text else ())
    nm, nf = struct.unpack(">HH", key[:4])
    body = struct.unpack(f">{(len(key) - 4) // 4}I", key[4:])
    return (nm, nf) + tuple(c - _OFFSET for c in body)
