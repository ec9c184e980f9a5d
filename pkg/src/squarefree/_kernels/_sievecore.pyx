# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Typed loop kernels for block sieving and joint counting.

Compiled twin of pykernels.py; the two must stay semantically identical.
"""
import numpy as np


def squarefree_block(long long start, Py_ssize_t n, long long[::1] primes):
    out = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] bits = out
    cdef long long end = start + n - 1
    cdef long long p, p2
    cdef Py_ssize_t i, j
    for i in range(primes.shape[0]):
        p = primes[i]
        p2 = p * p
        if p2 > end:
            break
        j = (p2 - start % p2) % p2
        while j < n:
            bits[j] = 0
            j += p2
    return out


def mobius_block(long long start, Py_ssize_t n, long long[::1] primes):
    mu_arr = np.ones(n, dtype=np.int8)
    lead_arr = np.ones(n, dtype=np.int64)
    cdef signed char[::1] mu = mu_arr
    cdef long long[::1] lead = lead_arr
    cdef long long end = start + n - 1
    cdef long long p, p2
    cdef Py_ssize_t i, j
    for i in range(primes.shape[0]):
        p = primes[i]
        if p * p > end:
            break
        j = (p - start % p) % p
        while j < n:
            mu[j] = -mu[j]
            lead[j] = lead[j] * p
            j += p
        p2 = p * p
        j = (p2 - start % p2) % p2
        while j < n:
            mu[j] = 0
            j += p2
    for j in range(n):
        if mu[j] != 0 and lead[j] != start + j:
            mu[j] = -mu[j]
    return mu_arr


def count_joint(const unsigned char[::1] mask, long long[::1] offsets, Py_ssize_t limit):
    cdef Py_ssize_t i, k
    cdef Py_ssize_t m = offsets.shape[0]
    cdef long long total = 0
    cdef bint all_set
    for i in range(limit):
        all_set = 1
        for k in range(m):
            if mask[i + offsets[k]] == 0:
                all_set = 0
                break
        if all_set:
            total += 1
    return int(total)


def pair_correction_block(long long start, Py_ssize_t n, long long[::1] primes):
    out = np.ones(n, dtype=np.float64)
    cdef double[::1] v = out
    cdef long long end = start + n - 1
    cdef long long p, p2
    cdef double f
    cdef Py_ssize_t i, j
    for i in range(primes.shape[0]):
        p = primes[i]
        p2 = p * p
        if p2 > end:
            break
        f = (<double> (p2 - 1)) / (<double> (p2 - 2))
        j = (p2 - start % p2) % p2
        while j < n:
            v[j] = v[j] * f
            j += p2
    return out


def square_radical_block(long long start, Py_ssize_t n, long long[::1] primes):
    out = np.ones(n, dtype=np.int64)
    cdef long long[::1] v = out
    cdef long long end = start + n - 1
    cdef long long p, p2
    cdef Py_ssize_t i, j
    for i in range(primes.shape[0]):
        p = primes[i]
        p2 = p * p
        if p2 > end:
            break
        j = (p2 - start % p2) % p2
        while j < n:
            v[j] = v[j] * p
            j += p2
    return out
