# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled G3 enumeration kernel.  Same contract as ``_kernel_py``."""

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "cython"

cdef enum:
    OP_CONST = 0
    OP_ATOM = 1
    OP_AND = 2
    OP_OR = 3
    OP_IMP = 4


cdef inline int _eval(const int* code, int lo, int hi, const int* v, int* stack) nogil:
    cdef int sp = 0
    cdef int k, op, arg, a, b
    for k in range(lo, hi):
        op = code[2 * k]
        arg = code[2 * k + 1]
        if op == OP_CONST:
            stack[sp] = arg
            sp += 1
        elif op == OP_ATOM:
            stack[sp] = v[arg]
            sp += 1
        else:
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            if op == OP_AND:
                stack[sp - 1] = a if a < b else b
            elif op == OP_OR:
                stack[sp - 1] = a if a > b else b
            else:
                stack[sp - 1] = 2 if a <= b else b
    return stack[0]


def find_models(c, groups, long limit=0):
    cdef const int[:] code = c.code
    cdef const int[:] starts = c.starts
    cdef int n_theory = c.n_theory
    cdef bint has_target = c.has_target
    cdef int n_atoms = c.n_atoms
    cdef int n_groups = len(groups)
    cdef int g, j, r, k, width, ok
    cdef int *v
    cdef int *stack
    cdef int *g_natoms
    cdef int *g_atom_off
    cdef int *g_nrows
    cdef int *g_row_off
    cdef int *atoms
    cdef int *rows
    cdef int *pos
    cdef int total_atoms = 0, total_vals = 0
    cdef int ao = 0, ro = 0
    cdef const int* cp
    found = []

    for idx, rws in groups:
        total_atoms += len(idx)
        total_vals += len(idx) * len(rws)
        if len(rws) == 0:
            return found

    v = <int*> malloc((n_atoms + 1) * sizeof(int))
    stack = <int*> malloc((c.stack_size + 1) * sizeof(int))
    g_natoms = <int*> malloc((n_groups + 1) * sizeof(int))
    g_atom_off = <int*> malloc((n_groups + 1) * sizeof(int))
    g_nrows = <int*> malloc((n_groups + 1) * sizeof(int))
    g_row_off = <int*> malloc((n_groups + 1) * sizeof(int))
    pos = <int*> malloc((n_groups + 1) * sizeof(int))
    atoms = <int*> malloc((total_atoms + 1) * sizeof(int))
    rows = <int*> malloc((total_vals + 1) * sizeof(int))
    try:
        for j in range(n_atoms):
            v[j] = 0
        g = 0
        for idx, rws in groups:
            g_natoms[g] = len(idx)
            g_atom_off[g] = ao
            g_nrows[g] = len(rws)
            g_row_off[g] = ro
            pos[g] = 0
            for a in idx:
                atoms[ao] = a
                ao += 1
            for row in rws:
                for val in row:
                    rows[ro] = val
                    ro += 1
            g += 1
        for g in range(n_groups):
            width = g_natoms[g]
            for j in range(width):
                v[atoms[g_atom_off[g] + j]] = rows[g_row_off[g] + j]

        cp = &code[0] if code.shape[0] > 0 else NULL
        while True:
            ok = 1
            for k in range(n_theory):
                if _eval(cp, starts[k], starts[k + 1], v, stack) != 2:
                    ok = 0
                    break
            if ok and has_target:
                if _eval(cp, starts[n_theory], starts[n_theory + 1], v, stack) == 2:
                    ok = 0
            if ok:
                found.append(tuple([v[j] for j in range(n_atoms)]))
                if 0 < limit <= len(found):
                    break
            # odometer, last group fastest
            g = n_groups - 1
            while g >= 0:
                pos[g] += 1
                if pos[g] == g_nrows[g]:
                    pos[g] = 0
                width = g_natoms[g]
                r = g_row_off[g] + pos[g] * width
                for j in range(width):
                    v[atoms[g_atom_off[g] + j]] = rows[r + j]
                if pos[g] != 0:
                    break
                g -= 1
            if g < 0:
                break
    finally:
        free(v); free(stack); free(g_natoms); free(g_atom_off)
        free(g_nrows); free(g_row_off); free(pos); free(atoms); free(rows)
    return found
