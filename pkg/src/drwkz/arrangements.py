"""Affine hyperplane arrangements, the Orlik-Solomon algebra, and the
realization of OS classes as log forms.

The OS algebra is presented on degree-1 generators (H_i), one per
hyperplane, modulo two relation families: a wedge of hyperplanes with empty
common intersection is zero, and a dependent family with a common point
satisfies the boundary relation sum_i (-1)^i (H_1,..,^H_i,..,H_q) = 0.
Construction is dense exact linear algebra degree by degree; the graded
pieces come out as free lattices with an explicit reduction map, which is
what the realization and rank comparisons need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactla import field_rref
from .padic import is_prime
from .ratfun import FormVars, LogForm, coord_rank, make_atom
from . import drw as drwmod


class ArrangementError(ValueError):
    pass


class UnsupportedHyperplane(ValueError):
    """The hyperplane has no counterpart among the target's dlog atoms."""


class ResourceError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """f(x) = coeffs . x + const = 0 with a nonzero linear part."""

    coeffs: tuple
    const: Fraction

    @staticmethod
    def make(coeffs, const=0):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not any(coeffs):
            raise ArrangementError("hyperplane needs a nonzero linear part")
        return Hyperplane(coeffs, Fraction(const))


def _proportional(h1: Hyperplane, h2: Hyperplane) -> bool:
    v1 = h1.coeffs + (h1.const,)
    v2 = h2.coeffs + (h2.const,)
    lead = next(i for i, c in enumerate(v1) if c)
    if not v2[lead]:
        return False
    ratio = v1[lead] / v2[lead]
    return all(a == ratio * b for a, b in zip(v1, v2))


class Arrangement:
    """A finite set of affine hyperplanes over Q or F_p."""

    def __init__(self, dim, hyperplanes, base_field="Q"):
        self.dim = dim
        self.hyperplanes = [
            h if isinstance(h, Hyperplane) else Hyperplane.make(*h) for h in hyperplanes
        ]
        for h in self.hyperplanes:
            if len(h.coeffs) != dim:
                raise ArrangementError("hyperplane dimension mismatch")
        if base_field != "Q":
            p = int(base_field[1] if isinstance(base_field, tuple) else base_field)
            if not is_prime(p):
                raise ArrangementError(f"{p} is not prime")
            base_field = ("Fp", p)
        self.base_field = base_field
        for a, b in combinations(self.hyperplanes, 2):
            if self._projectively_equal(a, b):
                raise ArrangementError("hyperplanes must be pairwise distinct")

    def _projectively_equal(self, a, b):
        if self.base_field == "Q":
            return _proportional(a, b)
        return self._fp_proportional(a, b, self.base_field[1])

    @staticmethod
    def _fp_proportional(a, b, p):
        va = [_fp(x, p) for x in a.coeffs + (a.const,)]
        vb = [_fp(x, p) for x in b.coeffs + (b.const,)]
        lead = next((i for i, c in enumerate(va) if c), None)
        if lead is None or vb[lead] == 0:
            return lead is None and not any(vb)
        ratio = va[lead] * pow(vb[lead], -1, p) % p
        return all(x == ratio * y % p for x, y in zip(va, vb))

    def __len__(self):
        return len(self.hyperplanes)


def _fp(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise ArrangementError(f"coefficient {x} not p-integral for p={p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def _rank_rows(rows, base_field):
    if not rows:
        return 0
    if base_field == "Q":
        rows = [list(r) for r in rows]
        ncols = len(rows[0])
        rank = col = 0
        while col < ncols and rank < len(rows):
            piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if piv is None:
                col += 1
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            lead = rows[rank][col]
            for i in range(rank + 1, len(rows)):
                if rows[i][col]:
                    f = rows[i][col] / lead
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
            rank += 1
            col += 1
        return rank
    p = base_field[1]
    rows = [[_fp(Fraction(x), p) for x in r] for r in rows]
    ncols = len(rows[0])
    rank = col = 0
    while col < ncols and rank < len(rows):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for i in range(rank + 1, len(rows)):
            if rows[i][col] % p:
                f = rows[i][col] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def general_position(arr: Arrangement, subset) -> bool:
    """Independent linear parts meeting in codimension exactly |subset|."""
    subset = list(subset)
    if len(set(subset)) != len(subset):
        raise ArrangementError("subset must be duplicate-free")
    if not subset:
        return True
    lin = [arr.hyperplanes[i].coeffs for i in subset]
    aug = [arr.hyperplanes[i].coeffs + (arr.hyperplanes[i].const,) for i in subset]
    r_lin = _rank_rows(lin, arr.base_field)
    r_aug = _rank_rows(aug, arr.base_field)
    return r_lin == len(subset) and r_aug == len(subset)


def _intersection_nonempty(arr, subset) -> bool:
    lin = [arr.hyperplanes[i].coeffs for i in subset]
    aug = [arr.hyperplanes[i].coeffs + (arr.hyperplanes[i].const,) for i in subset]
    return _rank_rows(lin, arr.base_field) == _rank_rows(aug, arr.base_field)


def _dependent(arr, subset) -> bool:
    lin = [arr.hyperplanes[i].coeffs for i in subset]
    return _rank_rows(lin, arr.base_field) < len(subset)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

class OSElement:
    """Element of a graded piece, in coordinates over the computed basis."""

    __slots__ = ("algebra", "degree", "coords")

    def __init__(self, algebra, degree, coords):
        self.algebra = algebra
        self.degree = degree
        self.coords = {k: Fraction(v) for k, v in coords.items() if v}

    def is_zero(self):
        return not self.coords

    def __add__(self, other):
        if self.degree != other.degree:
            raise ArrangementError("cannot add different degrees")
        coords = dict(self.coords)
        for k, v in other.coords.items():
            coords[k] = coords.get(k, Fraction(0)) + v
        return OSElement(self.algebra, self.degree, coords)

    def __neg__(self):
        return OSElement(self.algebra, self.degree, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return OSElement(self.algebra, self.degree, {k: Fraction(c) * v for k, v in self.coords.items()})

    def __mul__(self, other):
        return self.algebra.multiply(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, OSElement)
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __repr__(self):
        if not self.coords:
            return "OS(0)"
        return " + ".join(f"({v})e{list(k)}" for k, v in sorted(self.coords.items()))


class OSAlgebra:
    """Graded OS algebra with per-degree bases and a reduction map."""

    def __init__(self, arr: Arrangement, max_hyperplanes=12):
        if len(arr) > max_hyperplanes:
            raise ResourceError(
                f"arrangement has {len(arr)} hyperplanes; bound is {max_hyperplanes}"
            )
        self.arrangement = arr
        n = len(arr)
        self._basis = {0: [()]}
        self._pivot_expansion = {0: {}}
        self.dims = [1]
        # dependence data is decided over the base field once per subset
        empty = {}
        dep_point = []
        for size in range(2, n + 1):
            for S in combinations(range(n), size):
                if not _intersection_nonempty(arr, S):
                    empty[S] = True
                elif _dependent(arr, S):
                    dep_point.append(S)
        self._empty = empty
        for k in range(1, n + 1):
            cols = list(combinations(range(n), k))
            pos = {S: i for i, S in enumerate(cols)}
            rows = set()
            # empty-intersection wedges vanish
            for S in cols:
                if S in self._empty:
                    row = [0] * len(cols)
                    row[pos[S]] = 1
                    rows.add(tuple(row))
            # boundary relations of dependent families with a common point,
            # multiplied by arbitrary monomials (overlap kills terms but can
            # leave a single monomial, e.g. e_i ^ de_D with i in D)
            for D in dep_point:
                j = len(D) - 1
                if j > k:
                    continue
                for C in combinations(range(n), k - j):
                    row = [0] * len(cols)
                    touched = False
                    for drop_idx, dropped in enumerate(D):
                        T = tuple(sorted(set(D) - {dropped}))
                        merged = _merge_sign(C, T)
                        if merged is None:
                            continue
                        sign, key = merged
                        row[pos[key]] += (-1) ** drop_idx * sign
                        touched = True
                    if touched and any(row):
                        rows.add(tuple(row))
            pivots, reduced = field_rref([[Fraction(x) for x in r] for r in sorted(rows)], len(cols))
            basis = [S for i, S in enumerate(cols) if i not in set(pivots)]
            expansion = {}
            for prow, pcol in zip(reduced, pivots):
                expansion[cols[pcol]] = {
                    cols[j]: -prow[j] for j in range(len(cols)) if j not in set(pivots) and prow[j]
                }
            self._basis[k] = basis
            self._pivot_expansion[k] = expansion
            self.dims.append(len(basis))
            if not basis:
                break
        while len(self.dims) > 1 and self.dims[-1] == 0:
            self.dims.pop()

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def basis(self, k):
        return list(self._basis.get(k, []))

    def dim(self, k):
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def zero(self, degree):
        return OSElement(self, degree, {})

    def one(self):
        return OSElement(self, 0, {(): Fraction(1)})

    def generator(self, i):
        return self.reduce_tuple((i,))

    def reduce_tuple(self, idx_tuple, coeff=1):
        """Image of e_{i_1} ^ ... ^ e_{i_k} in basis coordinates."""
        k = len(idx_tuple)
        ss = _sort_sign_ints(idx_tuple)
        if ss is None:
            return self.zero(k)
        sign, key = ss
        c = Fraction(coeff) * sign
        if k >= len(self.dims) and k > 0:
            return self.zero(k)
        basis = set(self._basis.get(k, []))
        if key in basis:
            return OSElement(self, k, {key: c})
        exp = self._pivot_expansion.get(k, {}).get(key)
        if exp is None:
            # a subset neither basis nor pivot cannot occur
            return self.zero(k)
        return OSElement(self, k, {b: c * v for b, v in exp.items()})

    def element(self, degree, tuples):
        out = self.zero(degree)
        for idx_tuple, coeff in tuples:
            out = out + self.reduce_tuple(idx_tuple, coeff)
        return out

    def multiply(self, x: OSElement, y: OSElement) -> OSElement:
        out = self.zero(x.degree + y.degree)
        for kx, cx in x.coords.items():
            for ky, cy in y.coords.items():
                out = out + self.reduce_tuple(kx + ky, cx * cy)
        return out

    def boundary_element(self, D):
        """sum_i (-1)^i (H_1,..,^H_i,..): the relation element of a tuple."""
        out = self.zero(len(D) - 1)
        for i, dropped in enumerate(D):
            rest = tuple(x for x in D if x != dropped)
            out = out + self.reduce_tuple(rest, (-1) ** i)
        return out


def _merge_sign(a, b):
    if set(a) & set(b):
        return None
    inv = sum(1 for x in a for y in b if y < x)
    return (-1) ** inv, tuple(sorted(a + b))


def _sort_sign_ints(seq):
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j] < items[j - 1]:
            items[j], items[j - 1] = items[j - 1], items[j]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return None
    return sign, tuple(items)


def build_os(arr: Arrangement, max_hyperplanes=12) -> OSAlgebra:
    return OSAlgebra(arr, max_hyperplanes=max_hyperplanes)


# ---------------------------------------------------------------------------
# realization maps
# ---------------------------------------------------------------------------

def arrangement_context(arr: Arrangement) -> FormVars:
    """Rational-function context whose t-variables are the ambient coordinates."""
    return FormVars(arr.dim, 0)


def hyperplane_atom(arr: Arrangement, ctx: FormVars, i: int):
    h = arr.hyperplanes[i]
    if ctx.n_geom != arr.dim:
        raise UnsupportedHyperplane("context does not match ambient dimension")
    return make_atom(h.coeffs, h.const)


def psi(elt: OSElement, target="rational", ctx=None, ring=None, var_names=None):
    """Algebra map (H_{i_1},...,H_{i_m}) -> dlog f_{i_1} ^ ... ^ dlog f_{i_m}."""
    arr = elt.algebra.arrangement
    if target == "rational":
        if ctx is None:
            ctx = arrangement_context(arr)
        atoms = [hyperplane_atom(arr, ctx, i) for i in range(len(arr))]
        out = LogForm.zero(ctx, elt.degree)
        for key, c in elt.coords.items():
            out = out + LogForm.dlog_wedge(ctx, [atoms[i] for i in key], Fraction(c))
        return out
    if target == "drw":
        if ring is None:
            raise UnsupportedHyperplane("drw target needs a RingSpec")
        mapping = match_drw_atoms(arr, ring, var_names)
        out = drwmod.DRWForm.zero(ring, elt.degree)
        for key, c in elt.coords.items():
            term = drwmod.DRWForm.constant(ring, c)
            for i in key:
                term = drwmod.multiply(term, drwmod.dlog_atom(ring, mapping[i]))
            out = out + term
        return out
    raise ValueError(f"unknown target {target!r}")


def match_drw_atoms(arr: Arrangement, ring, var_names=None):
    """Match each hyperplane, up to scalar, with an atom of the ring.

    ``var_names`` names the ambient coordinates ("t1", "z2", ...); the
    default takes every coordinate as t_i.  A hyperplane is representable
    if it is a scalar multiple of x_u or x_u - x_v for atom-named
    coordinates, with zero constant term.
    """
    if var_names is None:
        var_names = [f"t{i}" for i in range(1, arr.dim + 1)]
    mapping = {}
    by_name = {a.name: a for a in ring.atoms}
    for idx, h in enumerate(arr.hyperplanes):
        if h.const != 0:
            raise UnsupportedHyperplane(f"hyperplane {idx} has a constant term")
        support = [(j, c) for j, c in enumerate(h.coeffs) if c]
        atom = None
        if len(support) == 1:
            atom = by_name.get(var_names[support[0][0]])
        elif len(support) == 2:
            (j1, c1), (j2, c2) = support
            if c1 == -c2:
                for u, v in ((j1, j2), (j2, j1)):
                    name = f"{var_names[u]}-{var_names[v]}"
                    if name in by_name:
                        atom = by_name[name]
                        break
        if atom is None:
            raise UnsupportedHyperplane(
                f"hyperplane {idx} is not expressible among the ring atoms"
            )
        mapping[idx] = atom
    return mapping


def verify_psi_iso(arr: Arrangement, max_degree=None, algebra=None) -> dict:
    """Per-degree rank comparison between the OS algebra and the span of the
    coordinate-expanded dlog realizations of its basis."""
    os = algebra or build_os(arr)
    ctx = arrangement_context(arr)
    if max_degree is None:
        max_degree = os.top_degree
    degrees = []
    ok = True
    for k in range(0, max_degree + 1):
        os_dim = os.dim(k)
        if k == 0:
            rank = 1  # the unit realizes as the constant 1
        else:
            images = [
                psi(os.reduce_tuple(S), "rational", ctx=ctx).expand_coordinates()
                for S in os.basis(k)
            ]
            rank = coord_rank(images) if images else 0
        match = rank == os_dim
        ok = ok and match
        degrees.append({"degree": k, "os_dim": os_dim, "psi_rank": rank, "match": match})
    return {"ok": ok, "degrees": degrees, "dims": os.dims}


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def arrangement_to_json(arr: Arrangement) -> dict:
    field = "Q" if arr.base_field == "Q" else {"Fp": arr.base_field[1]}
    return {
        "field": field,
        "dim": arr.dim,
        "hyperplanes": [
            {"coeffs": [str(c) for c in h.coeffs], "const": str(h.const)}
            for h in arr.hyperplanes
        ],
    }


def arrangement_from_json(data: dict) -> Arrangement:
    field = data.get("field", "Q")
    if isinstance(field, dict):
        field = ("Fp", int(field["Fp"]))
    hyperplanes = [
        Hyperplane.make([Fraction(str(c)) for c in h["coeffs"]], Fraction(str(h.get("const", 0))))
        for h in data["hyperplanes"]
    ]
    return Arrangement(data["dim"], hyperplanes, base_field=field)
