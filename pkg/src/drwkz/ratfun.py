"""Exact differential forms over rational-function fields, in dlog atoms of
linear forms.

Geometry variables t_1..t_N, z_1..z_n live in one sympy fraction field over
Q, together with whatever formal parameters the caller declares (masses m_b,
a coupling kappa).  A :class:`LogForm` is a finite sum of terms
``coefficient * dlog f_1 ^ ... ^ dlog f_m`` with each f a linear form; the
dlog basis is not free (Arnold relations), so equality is decided by
expanding every dlog f to df/f over the coordinate differentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import gcd

from sympy import QQ
from sympy.polys.fields import field as _sympy_field


class AtomError(ValueError):
    """Raised for linear forms that are degenerate or out of context."""


# ---------------------------------------------------------------------------
# variable context
# ---------------------------------------------------------------------------

def _permute_poly(poly, perm):
    ring = poly.ring
    terms = []
    for monom, coeff in poly.terms():
        new = [0] * len(monom)
        for i, e in enumerate(monom):
            new[perm[i]] = e
        terms.append((tuple(new), coeff))
    return ring.from_terms(terms)


class FormVars:
    """Shared variable context for log forms.

    ``n_t`` t-variables and ``n_z`` z-variables are the geometry (the only
    directions differentials see); ``params`` are formal symbols adjoined to
    the coefficient field unless ``param_values`` pins them to rationals.
    """

    def __init__(self, n_t, n_z, params=(), param_values=None):
        self.n_t = n_t
        self.n_z = n_z
        param_values = dict(param_values or {})
        self.param_values = {k: Fraction(v) for k, v in param_values.items()}
        symbolic = [p for p in params if p not in param_values]
        names = (
            [f"t{i}" for i in range(1, n_t + 1)]
            + [f"z{b}" for b in range(1, n_z + 1)]
            + list(symbolic)
        )
        if names:
            self.field, *gens = _sympy_field(",".join(names), QQ)
        else:
            self.field, gens = _sympy_field("dummy__", QQ)[0], []
            gens = []
        self.gens = tuple(gens)
        self.names = tuple(names)
        self._by_name = {n: g for n, g in zip(names, gens)}
        self.n_geom = n_t + n_z

    # element constructors ------------------------------------------------
    def const(self, x) -> object:
        x = Fraction(x)
        return self.field.one * x.numerator / x.denominator

    def t(self, i):
        return self._by_name[f"t{i}"]

    def z(self, b):
        return self._by_name[f"z{b}"]

    def param(self, name):
        if name in self.param_values:
            return self.const(self.param_values[name])
        try:
            return self._by_name[name]
        except KeyError:
            raise AtomError(f"unknown parameter {name!r}") from None

    def geom_gen(self, idx):
        return self.gens[idx]

    def geom_name(self, idx) -> str:
        return self.names[idx]

    def zero(self):
        return self.field.zero

    def one(self):
        return self.field.one

    # permutation of t-variables -------------------------------------------
    def permute_t(self, elem, perm):
        """Apply a permutation of t_1..t_N (0-based tuple) to a field element."""
        full = list(range(len(self.gens)))
        for i in range(self.n_t):
            full[i] = perm[i]
        if full == list(range(len(self.gens))):
            return elem
        return self.field.new(_permute_poly(elem.numer, full), _permute_poly(elem.denom, full))

    def diff(self, elem, geom_idx):
        return elem.diff(self.gens[geom_idx])


# ---------------------------------------------------------------------------
# atoms: canonical linear forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class LogAtom:
    """Primitive integer linear form c . x + const, canonically oriented.

    The overall sign is normalized (first nonzero coefficient positive);
    dlog absorbs it since dlog(-f) = dlog f over characteristic zero.
    """

    coeffs: tuple
    const: int

    def __post_init__(self):
        if not any(self.coeffs):
            raise AtomError("atom must involve at least one variable")

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def name(self, ctx: FormVars) -> str:
        bits = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            var = ctx.geom_name(i)
            if c == 1:
                bits.append(f"+{var}" if bits else var)
            elif c == -1:
                bits.append(f"-{var}")
            else:
                bits.append(f"{c:+d}*{var}" if bits else f"{c}*{var}")
        if self.const:
            bits.append(f"{self.const:+d}")
        return "".join(bits)


def make_atom(coeffs, const=0) -> LogAtom:
    """Canonicalize a rational linear form into a LogAtom."""
    coeffs = [Fraction(c) for c in coeffs]
    const = Fraction(const)
    entries = coeffs + [const]
    if not any(coeffs):
        raise AtomError("constant linear forms have zero dlog")
    denlcm = 1
    for e in entries:
        denlcm = denlcm * e.denominator // gcd(denlcm, e.denominator)
    ints = [int(e * denlcm) for e in entries]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return LogAtom(tuple(ints[:-1]), ints[-1])


def atom_t(ctx, i) -> LogAtom:
    c = [0] * ctx.n_geom
    c[i - 1] = 1
    return make_atom(c)


def atom_z(ctx, b) -> LogAtom:
    c = [0] * ctx.n_geom
    c[ctx.n_t + b - 1] = 1
    return make_atom(c)


def atom_tt(ctx, i, j) -> LogAtom:
    if i == j:
        raise AtomError("t_i - t_j needs i != j")
    c = [0] * ctx.n_geom
    c[i - 1] = 1
    c[j - 1] = -1
    return make_atom(c)


def atom_tz(ctx, i, b) -> LogAtom:
    c = [0] * ctx.n_geom
    c[i - 1] = 1
    c[ctx.n_t + b - 1] = -1
    return make_atom(c)


def atom_zz(ctx, b, c_) -> LogAtom:
    if b == c_:
        raise AtomError("z_b - z_c needs b != c")
    c = [0] * ctx.n_geom
    c[ctx.n_t + b - 1] = 1
    c[ctx.n_t + c_ - 1] = -1
    return make_atom(c)


def atom_field_elem(ctx: FormVars, atom: LogAtom):
    s = ctx.const(atom.const) if atom.const else ctx.zero()
    for i, c in enumerate(atom.coeffs):
        if c:
            s = s + ctx.geom_gen(i) * c
    return s


def permute_atom(ctx: FormVars, atom: LogAtom, perm) -> LogAtom:
    """Relabel t-variables by a permutation (0-based); sign reabsorbed."""
    new = list(atom.coeffs)
    for i in range(ctx.n_t):
        new[perm[i]] = atom.coeffs[i]
    return make_atom(new, atom.const)


# ---------------------------------------------------------------------------
# sign bookkeeping for wedges
# ---------------------------------------------------------------------------

def _sort_sign(seq):
    """Sort a sequence, returning (sign, tuple) or None on duplicates."""
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


def _merge_sorted(b1, b2):
    if set(b1) & set(b2):
        return None
    inv = sum(1 for x in b1 for y in b2 if y < x)
    return (-1) ** inv, tuple(sorted(b1 + b2))


# ---------------------------------------------------------------------------
# log forms
# ---------------------------------------------------------------------------

class LogForm:
    """Finite sum of ``coeff * dlog f_1 ^ ... ^ dlog f_m`` terms."""

    __slots__ = ("ctx", "degree", "terms")

    def __init__(self, ctx, degree, terms=None, check=True):
        self.ctx = ctx
        self.degree = degree
        clean = {}
        for key, c in (terms or {}).items():
            if not c:
                continue
            if check:
                if len(key) != degree:
                    raise AtomError("block length does not match degree")
                if list(key) != sorted(key):
                    raise AtomError("atom block not sorted")
            clean[key] = clean.get(key, ctx.zero()) + c if key in clean else c
        self.terms = {k: v for k, v in clean.items() if v}

    # constructors ---------------------------------------------------------
    @staticmethod
    def zero(ctx, degree=0):
        return LogForm(ctx, degree, {})

    @staticmethod
    def constant(ctx, c):
        c = c if not isinstance(c, (int, Fraction)) else ctx.const(c)
        return LogForm(ctx, 0, {(): c})

    @staticmethod
    def dlog(ctx, atom: LogAtom):
        return LogForm(ctx, 1, {(atom,): ctx.one()})

    @staticmethod
    def dlog_wedge(ctx, atoms, coeff=1):
        ss = _sort_sign(atoms)
        if ss is None:
            return LogForm.zero(ctx, len(atoms))
        sign, key = ss
        c = coeff if not isinstance(coeff, (int, Fraction)) else ctx.const(coeff)
        return LogForm(ctx, len(atoms), {key: c * sign})

    # arithmetic -----------------------------------------------------------
    def _same_ctx(self, other):
        if self.ctx is not other.ctx:
            raise AtomError("forms over different contexts")

    def __add__(self, other):
        self._same_ctx(other)
        if self.is_formally_zero():
            return other
        if other.is_formally_zero():
            return self
        if self.degree != other.degree:
            raise AtomError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return LogForm(self.ctx, self.degree, terms, check=False)

    def __neg__(self):
        return LogForm(self.ctx, self.degree, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = self.ctx.const(c)
        return LogForm(self.ctx, self.degree, {k: c * v for k, v in self.terms.items()}, check=False)

    def is_formally_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return f"LogForm(0; deg {self.degree})"
        bits = []
        for key, c in sorted(self.terms.items()):
            blk = "^".join(f"dlog({a.name(self.ctx)})" for a in key) or "1"
            bits.append(f"({c}) {blk}")
        return " + ".join(bits)

    # the operations ---------------------------------------------------------
    def wedge(self, other) -> "LogForm":
        self._same_ctx(other)
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                m = _merge_sorted(k1, k2)
                if m is None:
                    continue
                sign, key = m
                add = c1 * c2 * sign
                terms[key] = terms[key] + add if key in terms else add
        return LogForm(self.ctx, self.degree + other.degree, terms, check=False)

    def expand_coordinates(self) -> "CoordForm":
        """Expand each dlog f to df/f over the coordinate differentials."""
        ctx = self.ctx
        comps = {}
        for atoms, coeff in self.terms.items():
            supports = []
            invf = ctx.one()
            for a in atoms:
                supports.append([(i, a.coeffs[i]) for i in a.support])
                invf = invf / atom_field_elem(ctx, a)
            base = coeff * invf
            for choice in product(*supports):
                idxs = [i for i, _c in choice]
                ss = _sort_sign(idxs)
                if ss is None:
                    continue
                sign, key = ss
                num = sign
                for _i, c in choice:
                    num *= c
                add = base * num
                comps[key] = comps[key] + add if key in comps else add
        return CoordForm(ctx, self.degree, comps)

    def d(self) -> "CoordForm":
        return self.expand_coordinates().d()

    def is_zero(self) -> bool:
        return self.expand_coordinates().is_zero()

    def __eq__(self, other):
        if not isinstance(other, LogForm):
            return NotImplemented
        self._same_ctx(other)
        if self.degree != other.degree:
            return self.is_formally_zero() and other.is_formally_zero()
        if self.terms == other.terms:
            return True
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("LogForm is unhashable; equality is via expansion")

    def permute_t(self, perm) -> "LogForm":
        """Relabel t-variables in atoms and coefficients; 0-based perm."""
        ctx = self.ctx
        terms = {}
        for atoms, coeff in self.terms.items():
            mapped = [permute_atom(ctx, a, perm) for a in atoms]
            ss = _sort_sign(mapped)
            if ss is None:
                continue
            sign, key = ss
            add = ctx.permute_t(coeff, perm) * sign
            terms[key] = terms[key] + add if key in terms else add
        return LogForm(ctx, self.degree, terms, check=False)


def wedge(x: LogForm, y: LogForm) -> LogForm:
    return x.wedge(y)


def expand_coordinates(x: LogForm) -> "CoordForm":
    return x.expand_coordinates()


def alt_symmetrize(x: LogForm, N: int) -> LogForm:
    """Alternating sum over all N! permutations of t_1..t_N."""
    out = LogForm.zero(x.ctx, x.degree)
    for perm in permutations(range(N)):
        inv = sum(1 for i in range(N) for j in range(i + 1, N) if perm[i] > perm[j])
        contrib = x.permute_t(perm)
        out = out + (contrib if inv % 2 == 0 else -contrib)
    return out


# ---------------------------------------------------------------------------
# coordinate forms
# ---------------------------------------------------------------------------

class CoordForm:
    """Form written over coordinate differentials: dict block -> coefficient,
    blocks being strictly increasing tuples of geometry variable indices."""

    __slots__ = ("ctx", "degree", "comps")

    def __init__(self, ctx, degree, comps=None):
        self.ctx = ctx
        self.degree = degree
        self.comps = {k: v for k, v in (comps or {}).items() if v}

    @staticmethod
    def zero(ctx, degree=0):
        return CoordForm(ctx, degree)

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise AtomError("cannot add coordinate forms of different degrees")
        comps = dict(self.comps)
        for k, v in other.comps.items():
            comps[k] = comps[k] + v if k in comps else v
        return CoordForm(self.ctx, self.degree, comps)

    def __neg__(self):
        return CoordForm(self.ctx, self.degree, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = self.ctx.const(c)
        return CoordForm(self.ctx, self.degree, {k: c * v for k, v in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, CoordForm):
            return NotImplemented
        return (self - other).is_zero() if self.degree == other.degree else (self.is_zero() and other.is_zero())

    def __hash__(self):
        raise TypeError("CoordForm is unhashable")

    def d(self) -> "CoordForm":
        ctx = self.ctx
        comps = {}
        for block, f in self.comps.items():
            inblock = set(block)
            for v in range(ctx.n_geom):
                if v in inblock:
                    continue
                df = ctx.diff(f, v)
                if not df:
                    continue
                pos = sum(1 for b in block if b < v)
                sign = (-1) ** pos
                key = tuple(sorted(block + (v,)))
                add = df * sign
                comps[key] = comps[key] + add if key in comps else add
        return CoordForm(ctx, self.degree + 1, comps)

    def z_degrees(self):
        """Set of dz-counts over the nonzero components."""
        n_t = self.ctx.n_t
        return {sum(1 for v in block if v >= n_t) for block in self.comps}

    def min_z_degree(self):
        degs = self.z_degrees()
        return min(degs) if degs else None

    def drop_dz(self) -> "CoordForm":
        """The dz -> 0 truncation: keep only pure dt components."""
        n_t = self.ctx.n_t
        return CoordForm(
            self.ctx,
            self.degree,
            {k: v for k, v in self.comps.items() if all(i < n_t for i in k)},
        )

    def __repr__(self):
        if not self.comps:
            return f"CoordForm(0; deg {self.degree})"
        bits = []
        for key, c in sorted(self.comps.items()):
            blk = "^".join(f"d{self.ctx.geom_name(i)}" for i in key) or "1"
            bits.append(f"({c}) {blk}")
        return " + ".join(bits)


def coord_rank(forms) -> int:
    """Rank over the coefficient field of a family of coordinate forms."""
    blocks = sorted({b for f in forms for b in f.comps})
    if not blocks:
        return 0
    ctx = forms[0].ctx
    rows = [[f.comps.get(b, ctx.zero()) for b in blocks] for f in forms]
    from .exactla import field_rank

    return field_rank(rows)
