"""Exact linear algebra: Gaussian elimination over exact fields, and lattice
computations over the local rings Z/p^M.

Nothing in this module touches floating point.  Field entries may be
``fractions.Fraction`` or sympy ``FracElement``; they only need ``+ - * /``
and a truthy zero test.  The prime-power routines work on plain ints.
"""

from __future__ import annotations


# ---------------------------------------------------------------------------
# dense elimination over an exact field
# ---------------------------------------------------------------------------

def field_rank(rows):
    """Rank of a matrix (list of row lists) over an exact field."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / lead
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def field_rref(rows, ncols):
    """Reduced row echelon form over an exact field.

    Returns ``(pivot_cols, reduced_rows)``; each reduced row has a 1 in its
    pivot column and zeros in every other pivot column.
    """
    rows = [list(r) for r in rows if any(r)]
    pivot_cols = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [a / lead for a in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        pivot_cols.append(col)
        rank += 1
        if rank == len(rows):
            break
    return pivot_cols, rows[:rank]


# ---------------------------------------------------------------------------
# integer lattices modulo a prime power
# ---------------------------------------------------------------------------

def int_val(x, p):
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _echelon_mod(cols, p, M, track=False):
    """Column echelon form of integer columns over Z/p^M.

    Pivots are chosen by minimal p-valuation (ties broken by row index, then
    input order), normalized so the pivot entry is exactly ``p^v``, and used
    to clear their row in every other column.  Over the local ring Z/p^M this
    yields a staircase whose pivot columns, together with the columns that
    were reduced to zero, determine the column span and its kernel.

    Returns ``(pivots, zero_transforms)`` where ``pivots`` is a list of
    ``(row, v, column, transform)`` in elimination order and
    ``zero_transforms`` collects the transform columns of zeroed inputs.
    Transforms are tracked only when ``track`` is set (else ``None``).
    """
    q = p ** M
    work = [[x % q for x in c] for c in cols]
    ncols = len(work)
    tcols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)] if track else [None] * ncols
    used_rows = set()
    pivots = []
    zero_transforms = []
    alive = [j for j in range(ncols) if any(work[j])]
    if track:
        zero_transforms.extend(tcols[j] for j in range(ncols) if not any(work[j]))
    while alive:
        best = None  # (val, row, col index)
        for j in alive:
            c = work[j]
            for r, x in enumerate(c):
                if x == 0 or r in used_rows:
                    continue
                v = int_val(x, p)
                if best is None or (v, r, j) < best:
                    best = (v, r, j)
        if best is None:
            break
        v, r, j = best
        unit = work[j][r] // (p ** v)
        inv = pow(unit, -1, q)
        work[j] = [(x * inv) % q for x in work[j]]
        if track:
            tcols[j] = [(x * inv) % q for x in tcols[j]]
        for k in alive:
            if k == j or work[k][r] == 0:
                continue
            mult = work[k][r] // (p ** v)
            work[k] = [(a - mult * b) % q for a, b in zip(work[k], work[j])]
            if track:
                tcols[k] = [(a - mult * b) % q for a, b in zip(tcols[k], tcols[j])]
        used_rows.add(r)
        pivots.append((r, v, work[j], tcols[j]))
        nextalive = []
        for k in alive:
            if k == j:
                continue
            if any(work[k]):
                nextalive.append(k)
            elif track:
                zero_transforms.append(tcols[k])
        alive = nextalive
    return pivots, zero_transforms


def kernel_mod_prime_power(rows, p, M):
    """Generators of ``{x in Z^n : A x = 0 mod p^M}`` for an integer matrix A.

    The result generates the kernel as a lattice containing ``p^M Z^n``
    (the ``p^M e_i`` are always included).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    q = p ** M
    if ncols == 0:
        return []
    gens = []
    if nrows:
        cols = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
        pivots, zero_transforms = _echelon_mod(cols, p, M, track=True)
        for r, v, c, t in pivots:
            scale = p ** (M - v)
            g = [(scale * x) % q for x in t]
            if any(g):
                gens.append(g)
        gens.extend(t for t in zero_transforms if any(t))
    for i in range(ncols):
        gens.append([q if j == i else 0 for j in range(ncols)])
    return gens


def in_span_mod_prime_power(cols, target, p, M):
    """Decide whether ``target`` lies in the column span of ``cols`` mod p^M."""
    q = p ** M
    t = [x % q for x in target]
    if not any(t):
        return True
    if not cols:
        return False
    pivots, _ = _echelon_mod(cols, p, M)
    for r, v, c, _t in pivots:
        if t[r] == 0:
            continue
        if int_val(t[r], p) < v:
            return False
        mult = t[r] // (p ** v)
        t = [(a - mult * b) % q for a, b in zip(t, c)]
    return not any(t)


def hnf_basis(cols, n):
    """Triangular Hermite basis of a full-rank integer lattice in Z^n.

    ``cols`` must span a finite-index sublattice (callers include a scaled
    identity).  Returns columns ``h_0..h_{n-1}`` with ``h_i[i] > 0``,
    ``h_i[r] = 0`` for ``r < i``, and off-pivot entries reduced into
    ``[0, pivot)``; this normal form is unique for the lattice.
    """
    work = [list(c) for c in cols if any(c)]
    basis = []
    for row in range(n):
        live = [c for c in work if c[row] != 0]
        rest = [c for c in work if c[row] == 0]
        if not live:
            raise ValueError("lattice not of full rank")
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[row]))
            a = live[0]
            newlive = [a]
            for b in live[1:]:
                m = b[row] // a[row]
                nb = [x - m * y for x, y in zip(b, a)]
                if nb[row] != 0:
                    newlive.append(nb)
                elif any(nb):
                    rest.append(nb)
            live = newlive
        piv = live[0]
        if piv[row] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        work = rest
    # reduce entries below each pivot to the canonical range; basis[i] has
    # support in rows >= i, so ascending i keeps earlier reductions intact
    for j in range(n):
        for i in range(j + 1, n):
            m = basis[j][i] // basis[i][i]
            if m:
                basis[j] = [x - m * y for x, y in zip(basis[j], basis[i])]
    return basis


def reduce_mod_lattice(basis, target):
    """Canonical representative of ``target`` modulo the triangular ``basis``.

    ``basis[i]`` is supported in rows >= i, so reducing coordinates in
    ascending order fixes each entry into ``[0, pivot)`` once and for all;
    the result depends only on the coset.
    """
    t = list(target)
    for i in range(len(t)):
        piv = basis[i][i]
        m = t[i] // piv
        if m:
            t = [x - m * y for x, y in zip(t, basis[i])]
    return t
