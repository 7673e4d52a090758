"""Compiled hot paths: packed-genome batch evaluation and fast ranking.

Genomes are packed as parallel arrays (kind code, two structure fields, angle)
with an offsets array delimiting each genome. Evaluation evolves one row per
scenario: for the Fourier problem rows are the 2^n basis inputs, for the
Grover problem rows are the 2^n oracle bindings (input fixed at |0...0>, the
Oracle gate negates M[r, r]). Everything is O(2^n) per gate per row.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _apply_gates(M, kinds, f1, f2, angles, n):
    rows, dim = M.shape
    for gi in range(kinds.shape[0]):
        kd = kinds[gi]
        if kd <= 1:  # RotY / RotX
            bit = 1 << (n - f1[gi])
            half = 0.5 * angles[gi]
            c = math.cos(half)
            s = math.sin(half)
            if kd == 0:
                for r in range(rows):
                    for k in range(dim):
                        if k & bit == 0:
                            k1 = k | bit
                            v0 = M[r, k]
                            v1 = M[r, k1]
                            M[r, k] = c * v0 - s * v1
                            M[r, k1] = s * v0 + c * v1
            else:
                for r in range(rows):
                    for k in range(dim):
                        if k & bit == 0:
                            k1 = k | bit
                            v0 = M[r, k]
                            v1 = M[r, k1]
                            M[r, k] = c * v0 - 1j * s * v1
                            M[r, k1] = -1j * s * v0 + c * v1
        elif kd == 2:  # CPhase: f1 is a 1-based qubit mask, convert to basis bits
            mq = f1[gi]
            mask = 0
            for q in range(1, n + 1):
                if mq & (1 << (q - 1)) != 0:
                    mask |= 1 << (n - q)
            ph = complex(math.cos(angles[gi]), math.sin(angles[gi]))
            for r in range(rows):
                for k in range(dim):
                    if k & mask == mask:
                        M[r, k] = M[r, k] * ph
        elif kd == 3:  # Swap
            b1 = 1 << (n - f1[gi])
            b2 = 1 << (n - f2[gi])
            for r in range(rows):
                for k in range(dim):
                    if (k & b1) != 0 and (k & b2) == 0:
                        k1 = (k ^ b1) | b2
                        tmp = M[r, k]
                        M[r, k] = M[r, k1]
                        M[r, k1] = tmp
        else:  # Oracle: row r is the binding for scenario r
            for r in range(rows):
                M[r, r] = -M[r, r]


@njit(cache=True)
def eval_fourier_batch(kinds, f1, f2, angles, offsets, n, F):
    """Per-genome complex overlaps <psi_j|chi_j> for every basis input j."""
    m = offsets.shape[0] - 1
    dim = 1 << n
    out = np.empty((m, dim), np.complex128)
    for g in range(m):
        M = np.zeros((dim, dim), np.complex128)
        for j in range(dim):
            M[j, j] = 1.0
        s, e = offsets[g], offsets[g + 1]
        _apply_gates(M, kinds[s:e], f1[s:e], f2[s:e], angles[s:e], n)
        for j in range(dim):
            acc = 0.0 + 0.0j
            for k in range(dim):
                acc += M[j, k].conjugate() * F[k, j]
            out[g, j] = acc
    return out


@njit(cache=True)
def eval_grover_batch(kinds, f1, f2, angles, offsets, n):
    """Per-genome success probabilities |<x|psi_x>|^2 for every binding x."""
    m = offsets.shape[0] - 1
    dim = 1 << n
    out = np.empty((m, dim), np.float64)
    for g in range(m):
        M = np.zeros((dim, dim), np.complex128)
        for r in range(dim):
            M[r, 0] = 1.0
        s, e = offsets[g], offsets[g + 1]
        _apply_gates(M, kinds[s:e], f1[s:e], f2[s:e], angles[s:e], n)
        for r in range(dim):
            v = M[r, r]
            out[g, r] = v.real * v.real + v.imag * v.imag
    return out


@njit(cache=True)
def nds_ranks(F):
    """Non-dominated sorting ranks (0 = non-dominated) for minimized objectives."""
    m, k = F.shape
    ranks = np.full(m, -1, np.int64)
    n_dom = np.zeros(m, np.int64)
    dom = np.zeros((m, m), np.bool_)
    for i in range(m):
        for j in range(i + 1, m):
            i_le = True
            i_lt = False
            j_le = True
            j_lt = False
            for t in range(k):
                a = F[i, t]
                b = F[j, t]
                if a < b:
                    i_lt = True
                    j_le = False
                elif b < a:
                    j_lt = True
                    i_le = False
            if i_le and i_lt:
                dom[i, j] = True
                n_dom[j] += 1
            elif j_le and j_lt:
                dom[j, i] = True
                n_dom[i] += 1
    current = np.empty(m, np.int64)
    cur_n = 0
    for i in range(m):
        if n_dom[i] == 0:
            ranks[i] = 0
            current[cur_n] = i
            cur_n += 1
    rank = 0
    remaining = m - cur_n
    while remaining > 0 and cur_n > 0:
        nxt = np.empty(m, np.int64)
        nxt_n = 0
        for ci in range(cur_n):
            i = current[ci]
            for j in range(m):
                if dom[i, j]:
                    n_dom[j] -= 1
                    if n_dom[j] == 0:
                        ranks[j] = rank + 1
                        nxt[nxt_n] = j
                        nxt_n += 1
        rank += 1
        current = nxt
        cur_n = nxt_n
        remaining -= nxt_n
    return ranks
