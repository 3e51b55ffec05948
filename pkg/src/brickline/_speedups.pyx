# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels for pairwise occupancy overlap and stud/socket mating.

API-identical to _speedups_py; see that module for the contracts.
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libc.math cimport floor
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

ctypedef unordered_map[long long, vector[int]] bucket_map
ctypedef unordered_map[long long, long long] count_map


cdef inline long long _pair_key(int a, int b) nogil:
    cdef int t
    if a > b:
        t = a
        a = b
        b = t
    return ((<long long> a) << 32) | <long long> (<unsigned int> b)


cdef dict _unpack(count_map & counts):
    out = {}
    cdef count_map.iterator it = counts.begin()
    while it != counts.end():
        out[(<int> (deref(it).first >> 32),
             <int> (deref(it).first & 0xFFFFFFFF))] = <long long> deref(it).second
        inc(it)
    return out


def overlap_pair_counts(long long[::1] cell_keys, int[::1] owners):
    cdef bucket_map buckets
    cdef count_map counts
    cdef Py_ssize_t n = cell_keys.shape[0]
    cdef Py_ssize_t k
    cdef size_t a, b, m
    cdef int ia, ib
    with nogil:
        for k in range(n):
            buckets[cell_keys[k]].push_back(owners[k])
    cdef bucket_map.iterator it = buckets.begin()
    with nogil:
        while it != buckets.end():
            m = deref(it).second.size()
            if m >= 2:
                for a in range(m - 1):
                    ia = deref(it).second[a]
                    for b in range(a + 1, m):
                        ib = deref(it).second[b]
                        if ia != ib:
                            counts[_pair_key(ia, ib)] += 1
            inc(it)
    return _unpack(counts)


cdef inline long long _cell_key(long long qx, long long qy, long long qz) nogil:
    # 21 bits per axis, offset to keep each field non-negative
    return ((qx + 1048576) << 42) | ((qy + 1048576) << 21) | (qz + 1048576)


def mating_pair_counts(double[:, ::1] stud_xyz, int[::1] stud_owner,
                       double[:, ::1] socket_xyz, int[::1] socket_owner,
                       double tol):
    cdef bucket_map grid
    cdef count_map counts
    cdef Py_ssize_t n_sock = socket_owner.shape[0]
    cdef Py_ssize_t n_stud = stud_owner.shape[0]
    cdef Py_ssize_t s
    cdef size_t idx, bucket_len
    cdef int k, owner, other, dx, dy, dz
    cdef long long qx, qy, qz
    cdef double eps = tol + 1e-9
    cdef double sx, sy, sz
    cdef bucket_map.iterator git
    with nogil:
        for s in range(n_sock):
            qx = <long long> floor(socket_xyz[s, 0] + 0.5)
            qy = <long long> floor(socket_xyz[s, 1] + 0.5)
            qz = <long long> floor(socket_xyz[s, 2] + 0.5)
            grid[_cell_key(qx, qy, qz)].push_back(<int> s)
        for s in range(n_stud):
            sx = stud_xyz[s, 0]
            sy = stud_xyz[s, 1]
            sz = stud_xyz[s, 2]
            owner = stud_owner[s]
            qx = <long long> floor(sx + 0.5)
            qy = <long long> floor(sy + 0.5)
            qz = <long long> floor(sz + 0.5)
            for dx in range(-1, 2):
                for dy in range(-1, 2):
                    for dz in range(-1, 2):
                        git = grid.find(_cell_key(qx + dx, qy + dy, qz + dz))
                        if git == grid.end():
                            continue
                        bucket_len = deref(git).second.size()
                        for idx in range(bucket_len):
                            k = deref(git).second[idx]
                            other = socket_owner[k]
                            if other == owner:
                                continue
                            if (sx - socket_xyz[k, 0] <= eps
                                    and socket_xyz[k, 0] - sx <= eps
                                    and sy - socket_xyz[k, 1] <= eps
                                    and socket_xyz[k, 1] - sy <= eps
                                    and sz - socket_xyz[k, 2] <= eps
                                    and socket_xyz[k, 2] - sz <= eps):
                                counts[((<long long> owner) << 32)
                                       | <long long> (<unsigned int> other)] += 1
    return _unpack(counts)
